use num_traits::Zero;

use super::{LieAlgebra, LieError, Realization, StructureConstants};
use crate::exact::{rat, Matrix, Rational};

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = Rational::from_integer(1.into());
    m
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    let ab = a.mul(b).expect("square");
    let ba = b.mul(a).expect("square");
    let mut out = ab;
    for i in 0..out.rows() {
        for j in 0..out.cols() {
            let v = &out[(i, j)] - &ba[(i, j)];
            out[(i, j)] = v;
        }
    }
    out
}

fn trace_pairing(a: &Matrix, b: &Matrix) -> Rational {
    let n = a.rows();
    let mut t = Rational::zero();
    for i in 0..n {
        for k in 0..n {
            if !a[(i, k)].is_zero() && !b[(k, i)].is_zero() {
                t += &a[(i, k)] * &b[(k, i)];
            }
        }
    }
    t
}

/// Algebra spanned by `matrices` (closed under commutators), with invariant
/// form `scale · tr(XY)` assumed nondegenerate on the span.
fn from_matrices(
    label: &str,
    names: Vec<String>,
    matrices: Vec<Matrix>,
    scale: Rational,
) -> Result<LieAlgebra, LieError> {
    let n = matrices.len();
    let size = matrices.first().map_or(0, Matrix::rows);
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = &scale * trace_pairing(&matrices[i], &matrices[j]);
        }
    }
    let gram_inverse = gram
        .inverse()?
        .ok_or_else(|| LieError::Invalid(format!("trace form on {label} is degenerate")))?;
    let mut c = StructureConstants::new(names);
    for i in 0..n {
        for j in i + 1..n {
            let com = commutator(&matrices[i], &matrices[j]);
            if com.is_zero() {
                continue;
            }
            let pairings: Vec<Rational> = matrices
                .iter()
                .map(|m| &scale * trace_pairing(m, &com))
                .collect();
            let coords = gram_inverse.mul_vec(&pairings)?;
            let back = matrices
                .iter()
                .zip(&coords)
                .fold(Matrix::zeros(size, size), |mut acc, (m, c)| {
                    if !c.is_zero() {
                        for a in 0..size {
                            for b in 0..size {
                                if !m[(a, b)].is_zero() {
                                    acc[(a, b)] += c * &m[(a, b)];
                                }
                            }
                        }
                    }
                    acc
                });
            if back != com {
                return Err(LieError::Invalid(format!("{label}: span not closed")));
            }
            c.set(i, j, &coords);
        }
    }
    let mut alg = LieAlgebra::trusted(label, c);
    alg.realization = Some(Realization {
        size,
        blocks: vec![size],
        matrices,
        gram,
        gram_inverse,
    });
    Ok(alg)
}

fn entry_name(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E{},{}", i + 1, j + 1)
    }
}

/// `gl(n)` on the matrix units, ordered upper, diagonal, lower.
pub fn gl(n: usize) -> Result<LieAlgebra, LieError> {
    if n < 1 {
        return Err(LieError::Invalid("gl(n) needs n >= 1".into()));
    }
    let mut names = Vec::new();
    let mut mats = Vec::new();
    let mut groups = (Vec::new(), Vec::new(), Vec::new());
    let push = |i: usize, j: usize, names: &mut Vec<String>, mats: &mut Vec<Matrix>| {
        names.push(entry_name(i, j, n));
        mats.push(unit(n, i, j));
        names.len() - 1
    };
    for i in 0..n {
        for j in i + 1..n {
            groups.0.push(push(i, j, &mut names, &mut mats));
        }
    }
    for i in 0..n {
        groups.1.push(push(i, i, &mut names, &mut mats));
    }
    for i in 0..n {
        for j in 0..i {
            groups.2.push(push(i, j, &mut names, &mut mats));
        }
    }
    from_matrices(&format!("gl({n})"), names, mats, rat(1, 1))?.with_triangular(
        groups.0, groups.1, groups.2,
    )
}

/// `sl(n)` with Cartan basis `h_k = E_kk - E_{k+1,k+1}`; `sl(2)` uses the
/// names `e, h, f`.
pub fn sl(n: usize) -> Result<LieAlgebra, LieError> {
    if n < 2 {
        return Err(LieError::Invalid("sl(n) needs n >= 2".into()));
    }
    let mut names = Vec::new();
    let mut mats = Vec::new();
    let (mut plus, mut cartan, mut minus) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..n {
        for j in i + 1..n {
            plus.push(names.len());
            names.push(entry_name(i, j, n));
            mats.push(unit(n, i, j));
        }
    }
    for k in 0..n - 1 {
        cartan.push(names.len());
        names.push(format!("h{}", k + 1));
        let mut m = unit(n, k, k);
        m[(k + 1, k + 1)] = rat(-1, 1);
        mats.push(m);
    }
    for i in 0..n {
        for j in 0..i {
            minus.push(names.len());
            names.push(entry_name(i, j, n));
            mats.push(unit(n, i, j));
        }
    }
    if n == 2 {
        names = vec!["e".into(), "h".into(), "f".into()];
    }
    from_matrices(&format!("sl({n})"), names, mats, rat(1, 1))?.with_triangular(plus, cartan, minus)
}

/// `so(2n)` as matrices skew with respect to the antidiagonal,
/// `A_{ij} = -A_{j'i'}` with `i' = 2n+1-i`, form `½ tr(XY)`.
/// The Cartan basis is `h_k = E_kk - E_{k'k'}`.
pub fn so_even(n: usize) -> Result<LieAlgebra, LieError> {
    if n < 2 {
        return Err(LieError::Invalid("so(2n) needs n >= 2".into()));
    }
    let m = 2 * n;
    let bar = |i: usize| m - 1 - i;
    let name = |i: usize, j: usize| {
        if m < 10 {
            format!("X{}{}", i + 1, j + 1)
        } else {
            format!("X{},{}", i + 1, j + 1)
        }
    };
    let element = |i: usize, j: usize| {
        let mut a = unit(m, i, j);
        a[(bar(j), bar(i))] = rat(-1, 1);
        a
    };
    let mut names = Vec::new();
    let mut mats = Vec::new();
    let (mut plus, mut cartan, mut minus) = (Vec::new(), Vec::new(), Vec::new());
    // one representative per pair {(i,j), (j',i')}, skipping j = i'
    for i in 0..m {
        for j in i + 1..m {
            if j == bar(i) || (bar(j), bar(i)) < (i, j) {
                continue;
            }
            plus.push(names.len());
            names.push(name(i, j));
            mats.push(element(i, j));
        }
    }
    for k in 0..n {
        cartan.push(names.len());
        names.push(format!("h{}", k + 1));
        mats.push(element(k, k));
    }
    for i in 0..m {
        for j in 0..i {
            if j == bar(i) || (bar(j), bar(i)) < (i, j) {
                continue;
            }
            minus.push(names.len());
            names.push(name(i, j));
            mats.push(element(i, j));
        }
    }
    from_matrices(&format!("so({m})"), names, mats, rat(1, 2))?.with_triangular(plus, cartan, minus)
}

/// Abelian algebra `ξ_1, …, ξ_ℓ` realized by the Cartan matrices of `g`, so that
/// the form on it copies the form on `t`.
pub fn cartan_copy(g: &LieAlgebra) -> Result<LieAlgebra, LieError> {
    let red = g.reductive_data().ok_or(LieError::NotReductive)?;
    let real = g
        .realization()
        .ok_or_else(|| LieError::Invalid("cartan copy needs a realization".into()))?;
    let idx = &red.triangular.cartan_indices;
    let names: Vec<String> = if idx.len() == 1 {
        vec!["xi".into()]
    } else {
        (1..=idx.len()).map(|k| format!("xi{k}")).collect()
    };
    let mats: Vec<Matrix> = idx.iter().map(|&i| real.matrices[i].clone()).collect();
    let gram = real.gram.select(idx, idx);
    let gram_inverse = gram.inverse()?.ok_or(LieError::DegenerateForm)?;
    let mut alg = LieAlgebra::trusted(&format!("t({})", g.label), StructureConstants::new(names));
    alg.realization = Some(Realization {
        size: real.size,
        blocks: vec![real.size],
        matrices: mats,
        gram,
        gram_inverse,
    });
    Ok(alg)
}

/// `a ⊕ b` with block-diagonal realization when both summands have one.
/// Triangular data is merged when both summands are reductive or abelian
/// with a realization (an abelian summand counts as pure Cartan part).
pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> Result<LieAlgebra, LieError> {
    let na = a.dim();
    let n = na + b.dim();
    let names: Vec<String> = a.basis_names().iter().chain(b.basis_names()).cloned().collect();
    let mut c = StructureConstants::new(names);
    for (&(i, j), v) in &a.constants().brackets {
        c.brackets.insert((i, j), v.clone());
    }
    for (&(i, j), v) in &b.constants().brackets {
        let shifted = v.iter().map(|(k, x)| (k + na, x.clone())).collect();
        c.brackets.insert((i + na, j + na), shifted);
    }
    let mut out = LieAlgebra::trusted(&format!("{} + {}", a.label, b.label), c);
    if let (Some(ra), Some(rb)) = (a.realization(), b.realization()) {
        let size = ra.size + rb.size;
        let embed = |m: &Matrix, off: usize| {
            let mut big = Matrix::zeros(size, size);
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    big[(i + off, j + off)] = m[(i, j)].clone();
                }
            }
            big
        };
        let matrices = ra
            .matrices
            .iter()
            .map(|m| embed(m, 0))
            .chain(rb.matrices.iter().map(|m| embed(m, ra.size)))
            .collect();
        let block = |x: &Matrix, y: &Matrix| {
            let mut g = Matrix::zeros(n, n);
            for i in 0..na {
                for j in 0..na {
                    g[(i, j)] = x[(i, j)].clone();
                }
            }
            for i in 0..n - na {
                for j in 0..n - na {
                    g[(i + na, j + na)] = y[(i, j)].clone();
                }
            }
            g
        };
        out.realization = Some(Realization {
            size,
            blocks: ra.blocks.iter().chain(&rb.blocks).copied().collect(),
            matrices,
            gram: block(&ra.gram, &rb.gram),
            gram_inverse: block(&ra.gram_inverse, &rb.gram_inverse),
        });
        let parts = |x: &LieAlgebra| match x.reductive_data() {
            Some(r) => Some((
                r.triangular.plus_indices.clone(),
                r.triangular.cartan_indices.clone(),
                r.triangular.minus_indices.clone(),
            )),
            None if x.is_abelian() => Some((vec![], (0..x.dim()).collect(), vec![])),
            None => None,
        };
        if let (Some(pa), Some(pb)) = (parts(a), parts(b)) {
            let sh = |v: Vec<usize>| v.into_iter().map(|i| i + na).collect::<Vec<_>>();
            let plus = pa.0.into_iter().chain(sh(pb.0)).collect();
            let cartan = pa.1.into_iter().chain(sh(pb.1)).collect();
            let minus = pa.2.into_iter().chain(sh(pb.2)).collect();
            out = out.with_triangular(plus, cartan, minus)?;
        }
    }
    Ok(out)
}

/// The reductive algebra `g ∔ t`, appending central `ξ_i` that mirror the
/// Cartan basis `h_i`.
pub fn double(g: &LieAlgebra) -> Result<LieAlgebra, LieError> {
    let t = cartan_copy(g)?;
    let mut d = direct_sum(g, &t)?;
    d.label = format!("{} + t", g.label);
    Ok(d)
}
