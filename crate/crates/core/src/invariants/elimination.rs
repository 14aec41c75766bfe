use num_traits::Zero;

use super::hilbert::{Generator, HilbertBasis};
use super::InvariantError;
use crate::exact::{int, Matrix, Monomial, Polynomial, Rational};
use crate::lie::{LieAlgebra, Splitting};

/// `F|_V` for `V = span(vectors) ⊂ q`, pulled back along `q ≅ q*`: the
/// point `Σ c_k v_k` has dual coordinates `y = G Σ c_k v_k`.
pub fn restrict_to_subspace(
    alg: &LieAlgebra,
    f: &Polynomial,
    vectors: &[Vec<Rational>],
) -> Result<Polynomial, InvariantError> {
    let real = alg.realization().ok_or(InvariantError::NoRealization)?;
    let k = vectors.len();
    let gv: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| real.gram.mul_vec(v))
        .collect::<Result<_, _>>()?;
    let images: Vec<Polynomial> = (0..alg.dim())
        .map(|i| {
            let coeffs: Vec<Rational> = gv.iter().map(|w| w[i].clone()).collect();
            Polynomial::linear(&coeffs)
        })
        .collect();
    if k == 0 {
        return Ok(Polynomial::constant(0, f.coefficient(&Monomial::one(f.nvars()))));
    }
    Ok(f.substitute(&images)?)
}

/// Restriction to `t_0` of a horospherical splitting, in the coordinates of
/// the stored `t_0` basis. `f` is written in the splitting's basis.
pub fn restrict_to_t0(s: &Splitting, f: &Polynomial) -> Result<Polynomial, InvariantError> {
    let t0 = s.t0_indices().ok_or(InvariantError::NotHorospherical)?;
    let n = s.algebra().dim();
    let vectors: Vec<Vec<Rational>> = t0
        .iter()
        .map(|&i| {
            let mut v = vec![Rational::zero(); n];
            v[i] = int(1);
            v
        })
        .collect();
    restrict_to_subspace(s.algebra(), f, &vectors)
}

/// Exponent vectors `e` with `Σ e_k w_k = d`.
fn weighted_exponents(weights: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn go(weights: &[u32], d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&w, rest)) = weights.split_first() else {
            if d == 0 {
                out.push(cur.clone());
            }
            return;
        };
        for e in 0..=d / w.max(1) {
            if w == 0 && e > 0 {
                break;
            }
            cur.push(e);
            go(rest, d - e * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, d, &mut Vec::new(), &mut out);
    out
}

fn product(factors: &[Polynomial], exps: &[u32], nvars: usize) -> Polynomial {
    factors
        .iter()
        .zip(exps)
        .fold(Polynomial::one(nvars), |acc, (p, &e)| &acc * &p.pow(e))
}

/// Replaces every generator outside `keep` by `P − 𝔉(kept)` where
/// `𝔉(kept)|_{t_0} = P|_{t_0}`, solving for `𝔉` among weighted-degree
/// monomials in the kept generators. `b` is written in the splitting's basis.
pub fn eliminate_on_subspace(
    s: &Splitting,
    b: &HilbertBasis,
    keep: &[usize],
) -> Result<HilbertBasis, InvariantError> {
    if keep.iter().any(|&k| k >= b.len()) {
        return Err(InvariantError::Incompatible("kept index out of range".into()));
    }
    let kept: Vec<&Generator> = keep.iter().map(|&k| &b.generators[k]).collect();
    let restricted: Vec<Polynomial> = kept
        .iter()
        .map(|g| restrict_to_t0(s, &g.poly))
        .collect::<Result<_, _>>()?;
    let weights: Vec<u32> = kept.iter().map(|g| g.degree).collect();
    let k0 = restricted.first().map_or(0, Polynomial::nvars);
    let n = s.algebra().dim();
    let mut generators = Vec::with_capacity(b.len());
    for (j, g) in b.generators.iter().enumerate() {
        if keep.contains(&j) {
            generators.push(g.clone());
            continue;
        }
        let target = restrict_to_t0(s, &g.poly)?;
        let exps = weighted_exponents(&weights, g.degree);
        let columns: Vec<Polynomial> = exps
            .iter()
            .map(|e| product(&restricted, e, k0.max(target.nvars())))
            .collect();
        let coeffs = solve_combination(&columns, &target).ok_or_else(|| {
            InvariantError::Infeasible {
                generator: g.name.clone(),
                degree: g.degree,
            }
        })?;
        let mut poly = g.poly.clone();
        let full: Vec<Polynomial> = kept.iter().map(|k| k.poly.clone()).collect();
        for (e, c) in exps.iter().zip(&coeffs) {
            if !c.is_zero() {
                poly.add_scaled(&product(&full, e, n), &-c.clone())?;
            }
        }
        let name = if coeffs.iter().all(Zero::is_zero) {
            g.name.clone()
        } else {
            format!("{}~", g.name)
        };
        generators.push(Generator {
            name,
            poly,
            degree: g.degree,
        });
    }
    Ok(HilbertBasis {
        kind: b.kind.clone(),
        generators,
    })
}

/// Coefficients `c` with `Σ c_i columns_i = target`, if any.
fn solve_combination(columns: &[Polynomial], target: &Polynomial) -> Option<Vec<Rational>> {
    let mut monomials: Vec<Monomial> = target.terms().map(|(m, _)| m.clone()).collect();
    for c in columns {
        monomials.extend(c.terms().map(|(m, _)| m.clone()));
    }
    monomials.sort();
    monomials.dedup();
    if columns.is_empty() {
        return target.is_zero().then(Vec::new);
    }
    if monomials.is_empty() {
        return Some(vec![Rational::zero(); columns.len()]);
    }
    let rows: Vec<Vec<Rational>> = monomials
        .iter()
        .map(|m| columns.iter().map(|c| c.coefficient(m)).collect())
        .collect();
    let rhs: Vec<Rational> = monomials.iter().map(|m| target.coefficient(m)).collect();
    Matrix::from_rows(rows).ok()?.solve(&rhs).ok()?
}

/// Index data of `g ∔ t`: root variables, Cartan variables of `g` and the
/// matching `ξ_i`.
struct DoubleLayout {
    roots: Vec<usize>,
    cartan: Vec<usize>,
    xi: Vec<usize>,
}

fn double_layout(alg: &LieAlgebra) -> Result<DoubleLayout, InvariantError> {
    let real = alg.realization().ok_or(InvariantError::NoRealization)?;
    let red = alg
        .reductive_data()
        .ok_or_else(|| InvariantError::Incompatible("not reductive".into()))?;
    if real.blocks.len() != 2 {
        return Err(InvariantError::Incompatible("expected g ∔ t with two blocks".into()));
    }
    let off = real.blocks[0];
    let xi: Vec<usize> = (0..alg.dim())
        .filter(|&i| {
            let m = &real.matrices[i];
            (0..real.size).any(|a| (0..real.size).any(|b| a >= off && b >= off && !m[(a, b)].is_zero()))
        })
        .collect();
    let tri = &red.triangular;
    let cartan: Vec<usize> = tri
        .cartan_indices
        .iter()
        .copied()
        .filter(|i| !xi.contains(i))
        .collect();
    if cartan.len() != xi.len() {
        return Err(InvariantError::Incompatible("ξ count differs from the rank of g".into()));
    }
    let roots = tri
        .plus_indices
        .iter()
        .chain(&tri.minus_indices)
        .copied()
        .collect();
    Ok(DoubleLayout { roots, cartan, xi })
}

/// `f̄ = F|_t` with each `h_i` renamed `ξ_i`, in the coordinates of `g ∔ t`.
pub fn double_bar(alg: &LieAlgebra, f: &Polynomial) -> Result<Polynomial, InvariantError> {
    let lay = double_layout(alg)?;
    let n = alg.dim();
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            if lay.roots.contains(&i) || lay.xi.contains(&i) {
                Polynomial::zero(n)
            } else if let Some(k) = lay.cartan.iter().position(|&c| c == i) {
                Polynomial::var(n, lay.xi[k])
            } else {
                Polynomial::var(n, i)
            }
        })
        .collect();
    Ok(f.substitute(&images)?)
}

/// The two modified bases `ξ_i, F_j − f̄_j` (g.g.s. for `h̃`) and
/// `ξ_i, F_j − (−1)^{d_j} f̄_j` (g.g.s. for `r̃`), in the coordinates of `g ∔ t`.
pub fn double_modified_bases(
    alg: &LieAlgebra,
    b: &HilbertBasis,
) -> Result<(HilbertBasis, HilbertBasis), InvariantError> {
    let lay = double_layout(alg)?;
    let mut h_gens = Vec::with_capacity(b.len());
    let mut r_gens = Vec::with_capacity(b.len());
    for g in &b.generators {
        if g.poly.support_vars().iter().all(|v| lay.xi.contains(v)) {
            h_gens.push(g.clone());
            r_gens.push(g.clone());
            continue;
        }
        let bar = double_bar(alg, &g.poly)?;
        let sign = if g.degree % 2 == 0 { int(1) } else { int(-1) };
        let mut ph = g.poly.clone();
        ph.add_scaled(&bar, &int(-1))?;
        let mut pr = g.poly.clone();
        pr.add_scaled(&bar, &-sign.clone())?;
        h_gens.push(Generator {
            name: format!("{}-bar", g.name),
            poly: ph,
            degree: g.degree,
        });
        r_gens.push(Generator {
            name: if sign == int(1) {
                format!("{}-bar", g.name)
            } else {
                format!("{}+bar", g.name)
            },
            poly: pr,
            degree: g.degree,
        });
    }
    let wrap = |generators| HilbertBasis {
        kind: b.kind.clone(),
        generators,
    };
    Ok((wrap(h_gens), wrap(r_gens)))
}

/// Rewrites a basis given in the original coordinates in the splitting's basis.
pub fn transport(s: &Splitting, b: &HilbertBasis) -> Result<HilbertBasis, InvariantError> {
    let generators = b
        .generators
        .iter()
        .map(|g| {
            Ok(Generator {
                name: g.name.clone(),
                poly: s.from_original(&g.poly)?,
                degree: g.degree,
            })
        })
        .collect::<Result<_, InvariantError>>()?;
    Ok(HilbertBasis {
        kind: b.kind.clone(),
        generators,
    })
}
