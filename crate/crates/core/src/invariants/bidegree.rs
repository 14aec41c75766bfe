use std::collections::BTreeMap;

use super::InvariantError;
use crate::exact::{Matrix, MathError, Polynomial, Rational};
use crate::lie::Splitting;

/// Bi-homogeneous piece of bi-degree `(h-degree, r-degree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiComponent {
    pub poly: Polynomial,
    pub bidegree: (u32, u32),
}

/// Nonzero components ordered by increasing `h`-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bidecomposition {
    pub components: Vec<BiComponent>,
}

impl Bidecomposition {
    /// `F^•`: minimal `h`-degree, equivalently maximal `r`-degree.
    pub fn top(&self) -> &BiComponent {
        &self.components[0]
    }

    /// `F_•`: minimal `r`-degree.
    pub fn bottom(&self) -> &BiComponent {
        self.components.last().expect("nonempty")
    }

    pub fn get(&self, h_degree: u32) -> Option<&BiComponent> {
        self.components.iter().find(|c| c.bidegree.0 == h_degree)
    }

    pub fn sum(&self) -> Polynomial {
        let nv = self.components[0].poly.nvars();
        self.components
            .iter()
            .fold(Polynomial::zero(nv), |acc, c| &acc + &c.poly)
    }
}

/// Splits a homogeneous polynomial by degree in the variables marked `true`.
pub fn bidecompose_mask(mask: &[bool], f: &Polynomial) -> Result<Bidecomposition, InvariantError> {
    if f.nvars() != mask.len() {
        return Err(MathError::VariableCountMismatch {
            left: mask.len(),
            right: f.nvars(),
        }
        .into());
    }
    if f.is_zero() {
        return Err(InvariantError::ZeroPolynomial);
    }
    if !f.is_homogeneous() {
        return Err(InvariantError::NotHomogeneous);
    }
    let d = f.degree().expect("nonzero");
    let h_vars: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
    let mut parts: BTreeMap<u32, Vec<_>> = BTreeMap::new();
    for (m, c) in f.terms() {
        parts
            .entry(m.degree_in(&h_vars))
            .or_default()
            .push((m.clone(), c.clone()));
    }
    let components = parts
        .into_iter()
        .map(|(i, terms)| BiComponent {
            poly: Polynomial::from_terms(f.nvars(), terms).expect("same ring"),
            bidegree: (i, d - i),
        })
        .collect();
    Ok(Bidecomposition { components })
}

/// Bi-homogeneous decomposition along the splitting. `f` is written in the
/// splitting's basis.
pub fn bidecompose(s: &Splitting, f: &Polynomial) -> Result<Bidecomposition, InvariantError> {
    bidecompose_mask(&s.h_mask(), f)
}

/// Basis change matrix whose columns are `vectors`, followed by the
/// substitution rewriting `f` in that basis.
fn rewrite(f: &Polynomial, vectors: &[Vec<Rational>]) -> Result<(Polynomial, Matrix), InvariantError> {
    let n = f.nvars();
    let rows = Matrix::from_rows(vectors.to_vec())?;
    let inv = rows
        .inverse()?
        .ok_or_else(|| InvariantError::Incompatible("subspaces are not complementary".into()))?;
    if rows.rows() != n {
        return Err(InvariantError::Incompatible("subspaces do not span".into()));
    }
    let images: Vec<Polynomial> = (0..n).map(|a| Polynomial::linear(inv.row(a))).collect();
    Ok((f.substitute(&images)?, rows))
}

/// `F^•` with respect to `q = h ⊕ m` for arbitrary subspaces, returned in the
/// original coordinates.
pub fn highest_component(
    f: &Polynomial,
    h_basis: &[Vec<Rational>],
    m_basis: &[Vec<Rational>],
) -> Result<Polynomial, InvariantError> {
    let vectors: Vec<Vec<Rational>> = h_basis.iter().chain(m_basis).cloned().collect();
    let (g, rows) = rewrite(f, &vectors)?;
    let mask: Vec<bool> = (0..vectors.len()).map(|i| i < h_basis.len()).collect();
    let top = bidecompose_mask(&mask, &g)?.top().poly.clone();
    let back: Vec<Polynomial> = (0..rows.rows())
        .map(|i| Polynomial::linear(rows.row(i)))
        .collect();
    Ok(top.substitute(&back)?)
}

/// The operator `L` with `L|_h = id` and `L(y_j) = ỹ_j`, where `y_j = ỹ_j + z_j`
/// with `ỹ_j ∈ m̃`, `z_j ∈ h`. Column `a` is `L(x_a)`.
pub fn complement_operator(
    h_basis: &[Vec<Rational>],
    m_basis: &[Vec<Rational>],
    m_tilde_basis: &[Vec<Rational>],
) -> Result<Matrix, InvariantError> {
    let n = h_basis.first().or(m_basis.first()).map_or(0, Vec::len);
    let target: Vec<Vec<Rational>> = h_basis.iter().chain(m_tilde_basis).cloned().collect();
    let t = Matrix::from_columns(&target, n)?;
    let mut images: Vec<Vec<Rational>> = h_basis.to_vec();
    for y in m_basis {
        let c = t
            .solve(y)?
            .ok_or_else(|| InvariantError::Incompatible("m̃ is not a complement to h".into()))?;
        let mut img = vec![Rational::from_integer(0.into()); n];
        for (k, v) in m_tilde_basis.iter().enumerate() {
            let coef = &c[h_basis.len() + k];
            for (slot, x) in img.iter_mut().zip(v) {
                *slot += coef * x;
            }
        }
        images.push(img);
    }
    let source: Vec<Vec<Rational>> = h_basis.iter().chain(m_basis).cloned().collect();
    let s = Matrix::from_columns(&source, n)?;
    let s_inv = s
        .inverse()?
        .ok_or_else(|| InvariantError::Incompatible("m is not a complement to h".into()))?;
    Ok(Matrix::from_columns(&images, n)?.mul(&s_inv)?)
}

/// Extends a linear operator on `q` to an algebra map of `S(q)`.
pub fn apply_operator(l: &Matrix, f: &Polynomial) -> Result<Polynomial, InvariantError> {
    let images: Vec<Polynomial> = (0..l.cols())
        .map(|a| Polynomial::linear(&l.column(a)))
        .collect();
    Ok(f.substitute(&images)?)
}
