use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{denominator_lcm, fmt_rational, MathError, Rational};

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of [`Matrix::rank_and_nullspace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankNullspace {
    pub rank: usize,
    pub nullspace: Vec<Vec<Rational>>,
}

/// Integer row echelon form produced by fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, MathError> {
        if data.len() != rows * cols {
            return Err(MathError::Shape(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MathError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MathError::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix literal. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let conv = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Self::from_rows(conv).expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>], rows: usize) -> Result<Self, MathError> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(MathError::Shape("column length".into()));
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (i..self.cols).all(|j| self[(i, j)] == -self[(j, i)].clone()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MathError> {
        if self.cols != other.rows {
            return Err(MathError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, MathError> {
        if v.len() != self.cols {
            return Err(MathError::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    fn integer_rows(&self, extra: Option<&[Rational]>) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let mut src: Vec<&Rational> = self.row(i).iter().collect();
                if let Some(b) = extra {
                    src.push(&b[i]);
                }
                let l = denominator_lcm(src.iter().copied());
                scale *= &l;
                src.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect();
        (rows, scale)
    }

    fn echelon(rows: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
        let mut a = rows;
        let nrows = a.len();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&p| !a[p][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let (top, bottom) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let piv = &pivot_row[c];
            for row in bottom.iter_mut() {
                let lead = std::mem::take(&mut row[c]);
                for j in c + 1..ncols {
                    let v = piv * &row[j] - &lead * &pivot_row[j];
                    if prev.is_one() {
                        row[j] = v;
                    } else {
                        let (q, rem) = v.div_rem(&prev);
                        debug_assert!(rem.is_zero(), "inexact Bareiss division");
                        row[j] = q;
                    }
                }
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        Echelon {
            rows: a,
            pivots,
            swaps,
        }
    }

    pub fn rank(&self) -> usize {
        let (rows, _) = self.integer_rows(None);
        Self::echelon(rows, self.cols).pivots.len()
    }

    /// Rank together with a basis of the right nullspace `{x : Mx = 0}`.
    pub fn rank_and_nullspace(&self) -> RankNullspace {
        let (rows, _) = self.integer_rows(None);
        let ech = Self::echelon(rows, self.cols);
        let rank = ech.pivots.len();
        let pivot_set: Vec<bool> = (0..self.cols).map(|c| ech.pivots.contains(&c)).collect();
        let nullspace = (0..self.cols)
            .filter(|&f| !pivot_set[f])
            .map(|f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                back_substitute(&ech, &mut x, None);
                x
            })
            .collect();
        RankNullspace { rank, nullspace }
    }

    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.rank_and_nullspace().nullspace
    }

    /// One solution of `Mx = b` (free variables set to zero), or `None` if inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>, MathError> {
        if b.len() != self.rows {
            return Err(MathError::Shape(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let (rows, _) = self.integer_rows(Some(b));
        let ech = Self::echelon(rows, self.cols + 1);
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        back_substitute(&ech, &mut x, Some(self.cols));
        Ok(Some(x))
    }

    pub fn determinant(&self) -> Result<Rational, MathError> {
        if self.rows != self.cols {
            return Err(MathError::Shape("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let (rows, scale) = self.integer_rows(None);
        let ech = Self::echelon(rows, self.cols);
        if ech.pivots.len() < self.rows {
            return Ok(Rational::zero());
        }
        let mut d = Rational::new(ech.rows[self.rows - 1][self.cols - 1].clone(), scale);
        if ech.swaps % 2 == 1 {
            d = -d;
        }
        Ok(d)
    }

    pub fn inverse(&self) -> Result<Option<Matrix>, MathError> {
        if self.rows != self.cols {
            return Err(MathError::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if self.rank() < n {
            return Ok(None);
        }
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            match self.solve(&e)? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Matrix::from_columns(&cols, n).map(Some)
    }
}

/// Fills the pivot coordinates of `x` given its free coordinates; `rhs` names
/// the augmented column if any.
fn back_substitute(ech: &Echelon, x: &mut [Rational], rhs: Option<usize>) {
    for (r, &p) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[r];
        let mut acc = match rhs {
            Some(c) => Rational::from_integer(row[c].clone()),
            None => Rational::zero(),
        };
        for j in p + 1..x.len() {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc -= &x[j] * &row[j];
            }
        }
        x[p] = acc / Rational::from_integer(row[p].clone());
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained reduced row basis; answers "is this vector new?"
/// without redoing elimination.
#[derive(Clone, Debug, Default)]
pub struct SpanBuilder {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl SpanBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`, returning true if it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *a -= &c * b;
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for a in v.iter_mut() {
            *a *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (a, b) in row.iter_mut().zip(&v) {
                    if !b.is_zero() {
                        *a -= &c * b;
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &c * b;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }
}
