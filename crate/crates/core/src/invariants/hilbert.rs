use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use super::InvariantError;
use crate::exact::{int, rat, Polynomial, Rational};
use crate::lie::LieAlgebra;
use crate::poisson::bracket_with_coordinate;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Charpoly,
    TracePowers,
    SoMinorsPfaffian,
    DoubleExtended(Box<BasisKind>),
    Custom,
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKind::Charpoly => write!(f, "charpoly"),
            BasisKind::TracePowers => write!(f, "trace_powers"),
            BasisKind::SoMinorsPfaffian => write!(f, "so_minors_pfaffian"),
            BasisKind::DoubleExtended(b) => write!(f, "double_extended({b})"),
            BasisKind::Custom => write!(f, "custom"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub poly: Polynomial,
    pub degree: u32,
}

/// Homogeneous generators of the symmetric invariants, as polynomials in the
/// algebra's coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    pub kind: BasisKind,
    pub generators: Vec<Generator>,
}

impl HilbertBasis {
    pub fn custom(polys: Vec<(String, Polynomial)>) -> Result<Self, InvariantError> {
        let generators = polys
            .into_iter()
            .map(|(name, poly)| {
                if !poly.is_homogeneous() {
                    return Err(InvariantError::NotHomogeneous);
                }
                let degree = poly.degree().ok_or(InvariantError::ZeroPolynomial)?;
                Ok(Generator { name, poly, degree })
            })
            .collect::<Result<_, _>>()?;
        Ok(HilbertBasis {
            kind: BasisKind::Custom,
            generators,
        })
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Square matrix with polynomial entries.
pub type PolyMatrix = Vec<Vec<Polynomial>>;

/// The element `A(y)` of a diagonal block of the realization corresponding to
/// `y ∈ q*` under the invariant form: `A(y) = Σ_j (G⁻¹y)_j M_j`.
pub fn generic_element(alg: &LieAlgebra, block: usize) -> Result<PolyMatrix, InvariantError> {
    let real = alg.realization().ok_or(InvariantError::NoRealization)?;
    let n = alg.dim();
    let offset: usize = real.blocks[..block].iter().sum();
    let size = *real.blocks.get(block).ok_or(InvariantError::Incompatible(
        "block index out of range".into(),
    ))?;
    let ginv = &real.gram_inverse;
    let mut a = vec![vec![Polynomial::zero(n); size]; size];
    for (r, row) in a.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            let mut coeffs = vec![Rational::zero(); n];
            for (j, m) in real.matrices.iter().enumerate() {
                let v = &m[(r + offset, c + offset)];
                if v.is_zero() {
                    continue;
                }
                for (i, slot) in coeffs.iter_mut().enumerate() {
                    let g = &ginv[(j, i)];
                    if !g.is_zero() {
                        *slot += v * g;
                    }
                }
            }
            *entry = Polynomial::linear(&coeffs);
        }
    }
    Ok(a)
}

/// `A · M` where the entries of `A` are sparse.
fn mul(a: &PolyMatrix, m: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let nv = a[0][0].nvars();
    let mut out = vec![vec![Polynomial::zero(nv); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if m[k][j].is_zero() {
                    continue;
                }
                let p = &a[i][k] * &m[k][j];
                out[i][j].add_scaled(&p, &int(1)).expect("same ring");
            }
        }
    }
    out
}

fn trace(m: &PolyMatrix) -> Polynomial {
    let nv = m[0][0].nvars();
    let mut t = Polynomial::zero(nv);
    for (i, row) in m.iter().enumerate() {
        t.add_scaled(&row[i], &int(1)).expect("same ring");
    }
    t
}

/// Coefficients `c_0..c_N` of `det(λI − A) = Σ c_k λ^k` by Faddeev–LeVerrier.
pub fn charpoly_coefficients(a: &PolyMatrix) -> Vec<Polynomial> {
    let n = a.len();
    let nv = a[0][0].nvars();
    let mut c = vec![Polynomial::zero(nv); n + 1];
    c[n] = Polynomial::one(nv);
    let mut m: PolyMatrix = vec![vec![Polynomial::zero(nv); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i].add_scaled(&c[n - k + 1], &int(1)).expect("same ring");
        }
        m = next;
        let am = mul(a, &m);
        c[n - k] = trace(&am).scale(&rat(-1, k as i64));
    }
    c
}

/// `tr(A^k)` for `k = 1..=kmax`.
pub fn trace_powers(a: &PolyMatrix, kmax: usize) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(kmax);
    let mut p = a.clone();
    for k in 1..=kmax {
        if k > 1 {
            p = mul(a, &p);
        }
        out.push(trace(&p));
    }
    out
}

/// Elementary symmetric functions from power sums via Newton's identities:
/// `k e_k = Σ_{i=1}^k (−1)^{i−1} e_{k−i} p_i`.
pub fn newton_elementary(power_sums: &[Polynomial]) -> Vec<Polynomial> {
    let nv = power_sums.first().map_or(0, Polynomial::nvars);
    let mut e = vec![Polynomial::one(nv)];
    for k in 1..=power_sums.len() {
        let mut acc = Polynomial::zero(nv);
        for i in 1..=k {
            let sign = if i % 2 == 1 { int(1) } else { int(-1) };
            acc.add_scaled(&(&e[k - i] * &power_sums[i - 1]), &sign)
                .expect("same ring");
        }
        e.push(acc.scale(&rat(1, k as i64)));
    }
    e
}

/// Pfaffian of a skew matrix by expansion along the first row, memoized on the
/// remaining index set. `Pf([[0, 1], [−1, 0]]) = 1`.
pub fn pfaffian(m: &PolyMatrix) -> Polynomial {
    let n = m.len();
    let nv = m[0][0].nvars();
    let mut memo: HashMap<u64, Polynomial> = HashMap::new();
    fn go(set: u64, m: &PolyMatrix, nv: usize, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
        if set == 0 {
            return Polynomial::one(nv);
        }
        if let Some(p) = memo.get(&set) {
            return p.clone();
        }
        let i = set.trailing_zeros() as usize;
        let rest = set & !(1 << i);
        let mut out = Polynomial::zero(nv);
        let mut pos = 0;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if !m[i][j].is_zero() {
                let sub = go(rest & !(1 << j), m, nv, memo);
                let sign = if pos % 2 == 0 { int(1) } else { int(-1) };
                out.add_scaled(&(&m[i][j] * &sub), &sign).expect("same ring");
            }
            pos += 1;
        }
        memo.insert(set, out.clone());
        out
    }
    if n % 2 == 1 {
        return Polynomial::zero(nv);
    }
    go((1u64 << n) - 1, m, nv, &mut memo)
}

fn is_antidiagonal_skew(alg: &LieAlgebra, block: usize) -> bool {
    let Some(real) = alg.realization() else {
        return false;
    };
    let off: usize = real.blocks[..block].iter().sum();
    let size = real.blocks[block];
    real.matrices.iter().all(|m| {
        (0..size).all(|i| {
            (0..size).all(|j| {
                m[(i + off, j + off)] == -m[(size - 1 - j + off, size - 1 - i + off)].clone()
            })
        })
    })
}

fn block_generators(
    alg: &LieAlgebra,
    block: usize,
    kind: &BasisKind,
) -> Result<Vec<Generator>, InvariantError> {
    let a = generic_element(alg, block)?;
    let size = a.len();
    let so_type = is_antidiagonal_skew(alg, block);
    let keep_nonzero = |v: Vec<Generator>| v.into_iter().filter(|g| !g.poly.is_zero()).collect();
    match kind {
        BasisKind::Charpoly | BasisKind::TracePowers if so_type => Err(
            InvariantError::Incompatible(format!("{kind} on an orthogonal algebra")),
        ),
        BasisKind::Charpoly => {
            let c = charpoly_coefficients(&a);
            Ok(keep_nonzero(
                (1..=size)
                    .map(|k| Generator {
                        name: format!("c{k}"),
                        poly: c[size - k].clone(),
                        degree: k as u32,
                    })
                    .collect(),
            ))
        }
        BasisKind::TracePowers => Ok(keep_nonzero(
            trace_powers(&a, size)
                .into_iter()
                .enumerate()
                .map(|(k, p)| Generator {
                    name: format!("P{}", k + 1),
                    poly: p,
                    degree: k as u32 + 1,
                })
                .collect(),
        )),
        BasisKind::SoMinorsPfaffian => {
            if !so_type || size % 2 == 1 {
                return Err(InvariantError::Incompatible(
                    "minors and Pfaffian need so(2n) in antidiagonal form".into(),
                ));
            }
            let n = size / 2;
            let c = charpoly_coefficients(&a);
            let mut gens: Vec<Generator> = (1..n)
                .map(|k| Generator {
                    name: format!("D{}", 2 * k),
                    poly: c[size - 2 * k].clone(),
                    degree: 2 * k as u32,
                })
                .collect();
            // J·A is skew in the usual sense; Pf(JA)² = det(JA) = (−1)^n det A
            let ja: PolyMatrix = (0..size).map(|i| a[size - 1 - i].clone()).collect();
            let pf = pfaffian(&ja);
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            if pf.pow(2) != c[0].scale(&sign) {
                return Err(InvariantError::PfaffianSign);
            }
            gens.push(Generator {
                name: "Pf".into(),
                poly: pf,
                degree: n as u32,
            });
            Ok(gens)
        }
        BasisKind::DoubleExtended(_) | BasisKind::Custom => Err(InvariantError::Incompatible(
            format!("{kind} cannot be built from a single block"),
        )),
    }
}

/// Hilbert basis of the requested kind.
pub fn hilbert_basis(alg: &LieAlgebra, kind: &BasisKind) -> Result<HilbertBasis, InvariantError> {
    let real = alg.realization().ok_or(InvariantError::NoRealization)?;
    let generators = match kind {
        BasisKind::DoubleExtended(base) => {
            if real.blocks.len() != 2 {
                return Err(InvariantError::Incompatible(
                    "double_extended needs g ∔ t with two blocks".into(),
                ));
            }
            let mut gens = block_generators(alg, 0, base)?;
            let off = real.blocks[0];
            let n = alg.dim();
            for (i, m) in real.matrices.iter().enumerate() {
                let in_second = (0..real.size).any(|a| {
                    (0..real.size).any(|b| (a >= off || b >= off) && !m[(a, b)].is_zero())
                });
                if in_second {
                    gens.push(Generator {
                        name: alg.basis_names()[i].clone(),
                        poly: Polynomial::var(n, i),
                        degree: 1,
                    });
                }
            }
            gens
        }
        BasisKind::Custom => {
            return Err(InvariantError::Incompatible(
                "custom bases are built with HilbertBasis::custom".into(),
            ))
        }
        _ => {
            if real.blocks.len() != 1 {
                return Err(InvariantError::Incompatible(format!(
                    "{kind} needs a single matrix block"
                )));
            }
            block_generators(alg, 0, kind)?
        }
    };
    Ok(HilbertBasis {
        kind: kind.clone(),
        generators,
    })
}

/// `{F, x_i} = 0` for every basis coordinate.
pub fn verify_invariance(alg: &LieAlgebra, f: &Polynomial) -> bool {
    f.nvars() == alg.dim() && (0..alg.dim()).all(|k| bracket_with_coordinate(alg, f, k).is_zero())
}
