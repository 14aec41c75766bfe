//! Lie algebras given by structure constants, matrix builders, splittings and
//! the contraction pencil.

mod builders;
mod io;
mod splitting;

pub use builders::{cartan_copy, direct_sum, double, gl, sl, so_even};
pub use io::{from_json, to_json};
pub use splitting::{BracketParameter, Side, Splitting, SplittingKind};

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{combination_name, MathError, Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error("{side} is not a subalgebra: [{a}, {b}] leaves it")]
    NotSubalgebra {
        side: &'static str,
        a: String,
        b: String,
    },
    #[error("the complement r is not a subalgebra; the operation needs [r, r] in r")]
    ComplementNotClosed,
    #[error("bracket parameter (0, 0) is not a point of the projective line")]
    ZeroParameter,
    #[error("algebra has no reductive data")]
    NotReductive,
    #[error("the form restricted to t_1 is degenerate")]
    DegenerateForm,
    #[error("invalid construction: {0}")]
    Invalid(String),
    #[error("malformed algebra description: {0}")]
    Format(String),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// Sparse bracket table: `[x_i, x_j] = Σ c_k x_k`, stored for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

/// Outcome of [`check_jacobi`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub passed: bool,
    pub first_violation: Option<(usize, usize, usize)>,
}

impl StructureConstants {
    pub fn new(basis_names: Vec<String>) -> Self {
        StructureConstants {
            dim: basis_names.len(),
            basis_names,
            brackets: BTreeMap::new(),
        }
    }

    /// Sets `[x_i, x_j] = v` (dense vector), handling the orientation.
    pub fn set(&mut self, i: usize, j: usize, v: &[Rational]) {
        if i == j {
            return;
        }
        let (a, b, sign) = if i < j { (i, j, false) } else { (j, i, true) };
        let entry: Vec<(usize, Rational)> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, if sign { -c.clone() } else { c.clone() }))
            .collect();
        if entry.is_empty() {
            self.brackets.remove(&(a, b));
        } else {
            self.brackets.insert((a, b), entry);
        }
    }

    /// `[x_i, x_j]` as a dense vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        if i == j {
            return out;
        }
        let (a, b, sign) = if i < j { (i, j, false) } else { (j, i, true) };
        if let Some(v) = self.brackets.get(&(a, b)) {
            for (k, c) in v {
                out[*k] = if sign { -c.clone() } else { c.clone() };
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (&(i, j), v) in &self.brackets {
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            if c.is_zero() {
                continue;
            }
            for (k, s) in v {
                out[*k] += &c * s;
            }
        }
        out
    }
}

/// Exhaustive Jacobi check over basis triples `i < j < k`.
pub fn check_jacobi(c: &StructureConstants) -> JacobiReport {
    let n = c.dim;
    let table: Vec<Vec<Vec<Rational>>> = (0..n)
        .map(|i| (0..n).map(|j| c.bracket_basis(i, j)).collect())
        .collect();
    let br = |v: &[Rational], k: usize| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for (a, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (m, y) in table[a][k].iter().enumerate() {
                if !y.is_zero() {
                    out[m] += x * y;
                }
            }
        }
        out
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let s1 = br(&table[i][j], k);
                let s2 = br(&table[j][k], i);
                let s3 = br(&table[k][i], j);
                let ok = (0..n).all(|m| (&s1[m] + &s2[m] + &s3[m]).is_zero());
                if !ok {
                    return JacobiReport {
                        passed: false,
                        first_violation: Some((i, j, k)),
                    };
                }
            }
        }
    }
    JacobiReport {
        passed: true,
        first_violation: None,
    }
}

/// Triangular decomposition `g = u_+ ⊕ t ⊕ u_-` in the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularData {
    pub plus_indices: Vec<usize>,
    pub cartan_indices: Vec<usize>,
    pub minus_indices: Vec<usize>,
    /// Eigenvalues of `ad(t_k)` on each root vector, `t_k` running over `cartan_indices`.
    pub root_labels: BTreeMap<usize, Vec<Rational>>,
    /// Gram matrix of the invariant form on the Cartan basis.
    pub cartan_form: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductiveData {
    pub rank: usize,
    pub triangular: TriangularData,
}

/// Block-diagonal matrix realization with the invariant form `scale · tr(XY)`
/// on each block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub size: usize,
    /// Sizes of the diagonal blocks, in order.
    pub blocks: Vec<usize>,
    pub matrices: Vec<Matrix>,
    pub gram: Matrix,
    pub gram_inverse: Matrix,
}

impl Realization {
    /// The matrix `Σ_i c_i M_i`.
    pub fn element(&self, c: &[Rational]) -> Matrix {
        let mut out = Matrix::zeros(self.size, self.size);
        for (ci, m) in c.iter().zip(&self.matrices) {
            if ci.is_zero() {
                continue;
            }
            for a in 0..self.size {
                for b in 0..self.size {
                    if !m[(a, b)].is_zero() {
                        out[(a, b)] += ci * &m[(a, b)];
                    }
                }
            }
        }
        out
    }

    /// Change of basis: new element `i` is `Σ_a rows[i][a] M_a`.
    fn rebase(&self, rows: &Matrix) -> Realization {
        let matrices = (0..rows.rows()).map(|i| self.element(rows.row(i))).collect();
        let gram = rows
            .mul(&self.gram)
            .and_then(|m| m.mul(&rows.transpose()))
            .expect("square change of basis");
        let gram_inverse = gram.inverse().expect("square").expect("nondegenerate form");
        Realization {
            size: self.size,
            blocks: self.blocks.clone(),
            matrices,
            gram,
            gram_inverse,
        }
    }
}

/// Finite-dimensional Lie algebra with a named basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    pub label: String,
    constants: StructureConstants,
    reductive: Option<ReductiveData>,
    realization: Option<Realization>,
}

impl LieAlgebra {
    /// Custom algebra; rejected unless the Jacobi identity holds.
    pub fn custom(label: &str, constants: StructureConstants) -> Result<Self, LieError> {
        if constants.basis_names.len() != constants.dim {
            return Err(LieError::Format("basis_names length differs from dim".into()));
        }
        if let Some(&(i, j)) = constants
            .brackets
            .keys()
            .find(|(i, j)| i >= j || *j >= constants.dim)
        {
            return Err(LieError::Format(format!("bad bracket index pair ({i}, {j})")));
        }
        if constants
            .brackets
            .values()
            .flatten()
            .any(|(k, _)| *k >= constants.dim)
        {
            return Err(LieError::Format("bracket result index out of range".into()));
        }
        let report = check_jacobi(&constants);
        if let Some((i, j, k)) = report.first_violation {
            let n = &constants.basis_names;
            return Err(LieError::Jacobi(n[i].clone(), n[j].clone(), n[k].clone()));
        }
        Ok(Self::trusted(label, constants))
    }

    /// Used for algebras that are Lie by construction (builders, contractions).
    pub(crate) fn trusted(label: &str, constants: StructureConstants) -> Self {
        LieAlgebra {
            label: label.to_string(),
            constants,
            reductive: None,
            realization: None,
        }
    }

    pub fn abelian(n: usize) -> Self {
        let names = (0..n).map(|i| format!("x{i}")).collect();
        Self::trusted(&format!("k^{n}"), StructureConstants::new(names))
    }

    pub fn dim(&self) -> usize {
        self.constants.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.constants.basis_names
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn reductive_data(&self) -> Option<&ReductiveData> {
        self.reductive.as_ref()
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn rank(&self) -> Option<usize> {
        self.reductive.as_ref().map(|r| r.rank)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.constants.basis_names.iter().position(|n| n == name)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        self.constants.bracket_basis(i, j)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.constants.bracket(x, y)
    }

    pub fn check_jacobi(&self) -> JacobiReport {
        check_jacobi(&self.constants)
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.brackets.is_empty()
    }

    /// True if the span of the given basis vectors is closed under the bracket;
    /// otherwise the first offending pair.
    pub fn closure_violation(&self, idx: &[usize]) -> Option<(usize, usize)> {
        let inside: Vec<bool> = (0..self.dim()).map(|k| idx.contains(&k)).collect();
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                let v = self.bracket_basis(i, j);
                if v.iter().enumerate().any(|(k, c)| !c.is_zero() && !inside[k]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Subalgebra spanned by the given basis vectors, with restricted constants.
    pub fn basis_subalgebra(&self, idx: &[usize]) -> Result<LieAlgebra, LieError> {
        if let Some((i, j)) = self.closure_violation(idx) {
            return Err(LieError::NotSubalgebra {
                side: "subspace",
                a: self.basis_names()[i].clone(),
                b: self.basis_names()[j].clone(),
            });
        }
        let names = idx.iter().map(|&i| self.basis_names()[i].clone()).collect();
        let mut c = StructureConstants::new(names);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a + 1) {
                let v = self.bracket_basis(i, j);
                let w: Vec<Rational> = idx.iter().map(|&k| v[k].clone()).collect();
                c.set(a, b, &w);
            }
        }
        Ok(Self::trusted(&format!("sub({})", self.label), c))
    }

    /// Subalgebra spanned by arbitrary vectors (rows of `basis`, independent).
    pub fn span_subalgebra(&self, basis: &[Vec<Rational>]) -> Result<LieAlgebra, LieError> {
        let m = basis.len();
        let cols = Matrix::from_columns(basis, self.dim())?;
        let mut c = StructureConstants::new(
            basis
                .iter()
                .map(|v| combination_name(v, self.basis_names()))
                .collect(),
        );
        for a in 0..m {
            for b in a + 1..m {
                let v = self.bracket(&basis[a], &basis[b]);
                let coords = cols
                    .solve(&v)?
                    .ok_or_else(|| LieError::NotSubalgebra {
                        side: "span",
                        a: c.basis_names[a].clone(),
                        b: c.basis_names[b].clone(),
                    })?;
                c.set(a, b, &coords);
            }
        }
        Ok(Self::trusted(&format!("span({})", self.label), c))
    }

    /// Same algebra in the basis given by the rows of `rows` (invertible).
    /// Realization and form are carried over; triangular data must be
    /// re-established by the caller through `with_triangular`.
    pub fn rebase(&self, rows: &Matrix, names: Vec<String>) -> Result<LieAlgebra, LieError> {
        let n = self.dim();
        if rows.rows() != n || rows.cols() != n || names.len() != n {
            return Err(LieError::Invalid("change of basis has wrong shape".into()));
        }
        let inv = rows
            .inverse()?
            .ok_or_else(|| LieError::Invalid("change of basis is singular".into()))?;
        // coordinates in the new basis: v_old = Σ c_i rows_i, so c = v_old · inv
        let inv_t = inv.transpose();
        let mut c = StructureConstants::new(names);
        for i in 0..n {
            for j in i + 1..n {
                let v = self.bracket(rows.row(i), rows.row(j));
                c.set(i, j, &inv_t.mul_vec(&v)?);
            }
        }
        let mut out = Self::trusted(&self.label, c);
        out.realization = self.realization.as_ref().map(|r| r.rebase(rows));
        Ok(out)
    }

    /// Attaches triangular data; root labels and the Cartan form are derived
    /// from the brackets and the realization.
    pub(crate) fn with_triangular(
        mut self,
        plus: Vec<usize>,
        cartan: Vec<usize>,
        minus: Vec<usize>,
    ) -> Result<LieAlgebra, LieError> {
        let real = self
            .realization
            .as_ref()
            .ok_or_else(|| LieError::Invalid("triangular data needs a realization".into()))?;
        let cartan_form = real.gram.select(&cartan, &cartan);
        let mut root_labels = BTreeMap::new();
        for &x in plus.iter().chain(&minus) {
            let mut label = Vec::with_capacity(cartan.len());
            for &h in &cartan {
                let v = self.bracket_basis(h, x);
                let lambda = v[x].clone();
                if v.iter().enumerate().any(|(k, c)| k != x && !c.is_zero()) {
                    return Err(LieError::Invalid(format!(
                        "{} is not a root vector",
                        self.basis_names()[x]
                    )));
                }
                label.push(lambda);
            }
            root_labels.insert(x, label);
        }
        self.reductive = Some(ReductiveData {
            rank: cartan.len(),
            triangular: TriangularData {
                plus_indices: plus,
                cartan_indices: cartan,
                minus_indices: minus,
                root_labels,
                cartan_form,
            },
        });
        Ok(self)
    }

    /// A basis of the centre.
    pub fn centre(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        // x central iff Σ_i x_i [e_i, e_j] = 0 for all j
        let mut rows = Vec::new();
        for j in 0..n {
            let cols: Vec<Vec<Rational>> = (0..n).map(|i| self.bracket_basis(i, j)).collect();
            for k in 0..n {
                rows.push(cols.iter().map(|c| c[k].clone()).collect());
            }
        }
        Matrix::from_rows(rows).expect("rectangular").nullspace()
    }
}
