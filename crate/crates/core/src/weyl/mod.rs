//! Root systems of types A, D and E6, their Weyl groups, Satake subtori and
//! the restriction test `res_0(k[t]^W) = k[t_0]^{W_0}`.
//!
//! Everything lives in root coordinates: a vector is a coefficient list on the
//! simple roots and the Cartan matrix serves as Gram matrix (all supported
//! types are simply laced).

mod restriction;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exact::{int, MathError, Matrix, Rational};

pub use restriction::{
    invariant_dims, molien_dims, restriction_check, reynolds, DegreeRow, RestrictionReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("unsupported root system type {0}")]
    UnsupportedType(String),
    #[error("Weyl group exceeds the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("invalid Satake arrows: {0}")]
    InvalidArrows(String),
    #[error("could not certify a basis of invariants in degree {degree}")]
    Certificate { degree: u32 },
    #[error(transparent)]
    Math(#[from] MathError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootType {
    A(usize),
    D(usize),
    E6,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::E6 => write!(f, "E6"),
        }
    }
}

impl FromStr for RootType {
    type Err = WeylError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WeylError::UnsupportedType(s.to_string());
        let t = s.trim();
        let (head, tail) = t.split_at(t.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let n: usize = tail.parse().map_err(|_| bad())?;
        match head.to_ascii_uppercase().as_str() {
            "A" if n >= 1 => Ok(RootType::A(n)),
            "D" if n >= 4 => Ok(RootType::D(n)),
            "E" if n == 6 => Ok(RootType::E6),
            _ => Err(bad()),
        }
    }
}

/// Integer square matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub n: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn to_matrix(&self) -> Matrix {
        let rows: Vec<Vec<Rational>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| int(self.get(i, j))).collect())
            .collect();
        Matrix::from_rows(rows).expect("square")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub root_type: RootType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
}

fn cartan_from_edges(rank: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        c[a][b] = -1;
        c[b][a] = -1;
    }
    c
}

/// Standard models. Node numbering: `A_n` and `D_n` as in Bourbaki (`D_n` has
/// `n−1` and `n` attached to `n−2`); `E_6` is the chain `1−2−3−4−5` with node
/// 6 attached to node 3.
pub fn build_root_system(t: RootType) -> Result<RootSystem, WeylError> {
    let (rank, edges): (usize, Vec<(usize, usize)>) = match t {
        RootType::A(n) if n >= 1 => (n, (1..n).map(|i| (i - 1, i)).collect()),
        RootType::D(n) if n >= 4 => {
            let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
            e.push((n - 3, n - 1));
            (n, e)
        }
        RootType::E6 => (6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]),
        _ => return Err(WeylError::UnsupportedType(t.to_string())),
    };
    let cartan = cartan_from_edges(rank, &edges);
    let rs = RootSystem {
        root_type: t,
        rank,
        positive_roots: positive_roots(&cartan),
        cartan,
    };
    let expected = match t {
        RootType::A(n) => n * (n + 1) / 2,
        RootType::D(n) => n * (n - 1),
        RootType::E6 => 36,
    };
    debug_assert_eq!(rs.positive_roots.len(), expected);
    Ok(rs)
}

/// Closure of the simple roots under simple reflections, positive half.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..r {
        let mut v = vec![0; r];
        v[i] = 1;
        seen.insert(v.clone());
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..r {
            let pairing: i64 = (0..r).map(|j| cartan[i][j] * v[j]).sum();
            let mut w = v.clone();
            w[i] -= pairing;
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|v| v.iter().all(|&x| x >= 0)).collect();
    pos.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    pos
}

impl RootSystem {
    pub fn label(&self) -> String {
        self.root_type.to_string()
    }

    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        self.positive_roots
            .iter()
            .flat_map(|v| [v.clone(), v.iter().map(|x| -x).collect()])
            .collect()
    }

    /// Simple reflection `s_i(v) = v − (Cv)_i α_i` as a matrix.
    pub fn simple_reflection(&self, i: usize) -> IntMatrix {
        let r = self.rank;
        let mut m = IntMatrix::identity(r);
        for j in 0..r {
            m.data[i * r + j] -= self.cartan[i][j];
        }
        m
    }

    pub fn cartan_matrix(&self) -> Matrix {
        let rows: Vec<Vec<Rational>> = self
            .cartan
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Matrix::from_rows(rows).expect("square")
    }

    /// `|W|` from the classification, for cross-checks.
    pub fn known_order(&self) -> usize {
        let fact = |n: usize| (1..=n).product::<usize>();
        match self.root_type {
            RootType::A(n) => fact(n + 1),
            RootType::D(n) => (1 << (n - 1)) * fact(n),
            RootType::E6 => 51840,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroup {
    pub rank: usize,
    pub generators: Vec<IntMatrix>,
    /// Identity first, then breadth-first order.
    pub elements: Vec<IntMatrix>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `w` permutes `roots`.
    pub fn preserves(&self, w: &IntMatrix, roots: &HashSet<Vec<i64>>) -> bool {
        roots.iter().all(|v| roots.contains(&w.apply(v)))
    }
}

/// Breadth-first closure of the simple reflections.
pub fn enumerate_weyl(rs: &RootSystem, cap: usize) -> Result<WeylGroup, WeylError> {
    let generators: Vec<IntMatrix> = (0..rs.rank).map(|i| rs.simple_reflection(i)).collect();
    let id = IntMatrix::identity(rs.rank);
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    seen.insert(id.clone());
    let mut elements = vec![id];
    let mut head = 0;
    while head < elements.len() {
        let w = elements[head].clone();
        head += 1;
        for s in &generators {
            let x = s.mul(&w);
            if !seen.contains(&x) {
                if elements.len() >= cap {
                    return Err(WeylError::CapExceeded { cap });
                }
                seen.insert(x.clone());
                elements.push(x);
            }
        }
    }
    Ok(WeylGroup {
        rank: rs.rank,
        generators,
        elements,
    })
}

/// Pairs of nodes (1-based) joined by an arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeDiagram {
    pub arrows: Vec<(usize, usize)>,
    pub plain_nodes: Vec<usize>,
}

impl SatakeDiagram {
    pub fn new(rank: usize, arrows: &[(usize, usize)]) -> Result<Self, WeylError> {
        let mut used = HashSet::new();
        for &(i, j) in arrows {
            if i == j || i == 0 || j == 0 || i > rank || j > rank {
                return Err(WeylError::InvalidArrows(format!("({i},{j}) for rank {rank}")));
            }
            if !used.insert(i) || !used.insert(j) {
                return Err(WeylError::InvalidArrows(format!("node reused in ({i},{j})")));
            }
        }
        Ok(SatakeDiagram {
            arrows: arrows.to_vec(),
            plain_nodes: (1..=rank).filter(|k| !used.contains(k)).collect(),
        })
    }

    /// Parses `"1:5,2:4"`.
    pub fn parse(rank: usize, text: &str) -> Result<Self, WeylError> {
        let mut arrows = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part
                .split_once(':')
                .ok_or_else(|| WeylError::InvalidArrows(part.to_string()))?;
            let p = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| WeylError::InvalidArrows(part.to_string()))
            };
            arrows.push((p(a)?, p(b)?));
        }
        Self::new(rank, &arrows)
    }
}

/// `t_0 = span{α_i − α_j}` over the arrows and its orthogonal complement
/// `t_1`. The arrows must be swapped by a diagram automorphism.
pub fn satake_subspaces(
    rs: &RootSystem,
    d: &SatakeDiagram,
) -> Result<(Vec<Vec<i64>>, Vec<Vec<Rational>>), WeylError> {
    let r = rs.rank;
    let mut perm: Vec<usize> = (0..r).collect();
    for &(i, j) in &d.arrows {
        perm.swap(i - 1, j - 1);
    }
    for a in 0..r {
        for b in 0..r {
            if rs.cartan[a][b] != rs.cartan[perm[a]][perm[b]] {
                return Err(WeylError::InvalidArrows(
                    "arrows do not come from a diagram symmetry".into(),
                ));
            }
        }
    }
    let t0: Vec<Vec<i64>> = d
        .arrows
        .iter()
        .map(|&(i, j)| {
            let mut v = vec![0; r];
            v[i - 1] = 1;
            v[j - 1] = -1;
            v
        })
        .collect();
    let t1 = if t0.is_empty() {
        (0..r)
            .map(|i| (0..r).map(|j| int((i == j) as i64)).collect())
            .collect()
    } else {
        let rows: Vec<Vec<Rational>> = t0
            .iter()
            .map(|v| (0..r).map(|j| int((0..r).map(|k| v[k] * rs.cartan[k][j]).sum())).collect())
            .collect();
        Matrix::from_rows(rows)?.nullspace()
    };
    Ok((t0, t1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W0Report {
    pub w_order: usize,
    pub n_order: usize,
    pub z_order: usize,
    pub w0_order: usize,
    /// Distinct restrictions to `t_0` in the coordinates of the given basis.
    pub w0_matrices: Vec<Matrix>,
    /// `order ↦ number of elements of W_0 of that order`.
    pub order_statistics: Vec<(usize, usize)>,
}

impl W0Report {
    /// Order 6 with three involutions and two elements of order 3.
    pub fn looks_like_s3(&self) -> bool {
        self.w0_order == 6 && self.order_statistics == vec![(1, 1), (2, 3), (3, 2)]
    }
}

fn element_order(m: &Matrix) -> usize {
    let id = Matrix::identity(m.rows());
    let mut p = m.clone();
    let mut k = 1;
    while p != id {
        p = p.mul(m).expect("square");
        k += 1;
    }
    k
}

/// Coordinates of `v` in the basis `basis` when `v` lies in its span.
struct SpanSolver {
    basis: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    inv: Matrix,
}

impl SpanSolver {
    fn new(basis: &[Vec<i64>]) -> Result<Self, WeylError> {
        let k = basis.len();
        let r = basis.first().map_or(0, Vec::len);
        // choose k rows where the basis is independent
        let mut pivots = Vec::new();
        let mut sb = crate::exact::SpanBuilder::new();
        for i in 0..r {
            let row: Vec<Rational> = basis.iter().map(|v| int(v[i])).collect();
            if sb.insert(row) {
                pivots.push(i);
            }
            if pivots.len() == k {
                break;
            }
        }
        if pivots.len() < k {
            return Err(WeylError::InvalidArrows("t_0 basis is dependent".into()));
        }
        let sq: Vec<Vec<Rational>> = pivots
            .iter()
            .map(|&i| basis.iter().map(|v| int(v[i])).collect())
            .collect();
        let inv = Matrix::from_rows(sq)?.inverse()?.expect("independent rows");
        Ok(SpanSolver {
            basis: basis.to_vec(),
            pivots,
            inv,
        })
    }

    fn coordinates(&self, v: &[i64]) -> Option<Vec<Rational>> {
        let rhs: Vec<Rational> = self.pivots.iter().map(|&i| int(v[i])).collect();
        let c = self.inv.mul_vec(&rhs).expect("shape");
        for (i, &x) in v.iter().enumerate() {
            let s: Rational = self.basis.iter().zip(&c).map(|(b, ci)| ci * int(b[i])).sum();
            if s != int(x) {
                return None;
            }
        }
        Some(c)
    }
}

/// `N_W(t_0)`, `Z_W(t_0)` and `W_0 = N/Z` by exhaustive membership tests.
pub fn w0_compute(w: &WeylGroup, t0: &[Vec<i64>]) -> Result<W0Report, WeylError> {
    let k = t0.len();
    let solver = SpanSolver::new(t0)?;
    let mut n_order = 0;
    let mut z_order = 0;
    let mut distinct: HashMap<Vec<Rational>, Matrix> = HashMap::new();
    'elements: for g in &w.elements {
        let mut cols = Vec::with_capacity(k);
        for v in t0 {
            match solver.coordinates(&g.apply(v)) {
                Some(c) => cols.push(c),
                None => continue 'elements,
            }
        }
        n_order += 1;
        let m = Matrix::from_columns(&cols, k)?;
        if m == Matrix::identity(k) {
            z_order += 1;
        }
        let key: Vec<Rational> = cols.concat();
        distinct.entry(key).or_insert(m);
    }
    let mut w0_matrices: Vec<Matrix> = distinct.into_values().collect();
    w0_matrices.sort_by_key(|m| (element_order(m), m.to_string()));
    let mut stats: HashMap<usize, usize> = HashMap::new();
    for m in &w0_matrices {
        *stats.entry(element_order(m)).or_default() += 1;
    }
    let mut order_statistics: Vec<(usize, usize)> = stats.into_iter().collect();
    order_statistics.sort_unstable();
    Ok(W0Report {
        w_order: w.order(),
        n_order,
        z_order,
        w0_order: w0_matrices.len(),
        w0_matrices,
        order_statistics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        assert_eq!(build_root_system(RootType::A(2)).unwrap().positive_roots.len(), 3);
        assert_eq!(build_root_system(RootType::D(4)).unwrap().positive_roots.len(), 12);
        assert_eq!(build_root_system(RootType::E6).unwrap().positive_roots.len(), 36);
        assert_eq!(build_root_system(RootType::D(5)).unwrap().positive_roots.len(), 20);
    }

    #[test]
    fn parse_types() {
        assert_eq!("A3".parse::<RootType>().unwrap(), RootType::A(3));
        assert_eq!("e6".parse::<RootType>().unwrap(), RootType::E6);
        assert!("D3".parse::<RootType>().is_err());
        assert!("E7".parse::<RootType>().is_err());
        assert!("B2".parse::<RootType>().is_err());
    }

    #[test]
    fn small_orders_and_root_permutation() {
        for t in [RootType::A(2), RootType::A(3), RootType::A(4), RootType::D(4)] {
            let rs = build_root_system(t).unwrap();
            let w = enumerate_weyl(&rs, 10_000).unwrap();
            assert_eq!(w.order(), rs.known_order(), "{t}");
            let roots: HashSet<Vec<i64>> = rs.all_roots().into_iter().collect();
            assert!(w.elements.iter().all(|g| w.preserves(g, &roots)));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let rs = build_root_system(RootType::A(3)).unwrap();
        assert!(matches!(enumerate_weyl(&rs, 10), Err(WeylError::CapExceeded { cap: 10 })));
    }

    #[test]
    fn satake_examples() {
        let a3 = build_root_system(RootType::A(3)).unwrap();
        let (t0, t1) = satake_subspaces(&a3, &SatakeDiagram::new(3, &[(1, 3)]).unwrap()).unwrap();
        assert_eq!(t0, vec![vec![1, 0, -1]]);
        assert_eq!(t1.len(), 2);
        let d4 = build_root_system(RootType::D(4)).unwrap();
        let (t0, _) = satake_subspaces(&d4, &SatakeDiagram::new(4, &[(3, 4)]).unwrap()).unwrap();
        assert_eq!(t0, vec![vec![0, 0, 1, -1]]);
        assert!(SatakeDiagram::new(3, &[(1, 1)]).is_err());
        assert!(SatakeDiagram::new(4, &[(1, 2), (2, 3)]).is_err());
        assert!(satake_subspaces(&a3, &SatakeDiagram::new(3, &[(1, 2)]).unwrap()).is_err());
        assert_eq!(SatakeDiagram::parse(6, "1:5, 2:4").unwrap().plain_nodes, vec![3, 6]);
    }

    #[test]
    fn a4_w0_is_s2() {
        let rs = build_root_system(RootType::A(4)).unwrap();
        let w = enumerate_weyl(&rs, 1000).unwrap();
        let (t0, _) = satake_subspaces(&rs, &SatakeDiagram::new(4, &[(1, 4), (2, 3)]).unwrap()).unwrap();
        let r = w0_compute(&w, &t0).unwrap();
        assert_eq!(r.w0_order, 2);
        assert_eq!(r.n_order, r.z_order * 2);
        assert_eq!(r.order_statistics, vec![(1, 1), (2, 1)]);
        // in diag(c2, c1, c0, c1, c2) coordinates the involution swaps c1 and c2
        let m = &r.w0_matrices[1];
        let v = m.mul_vec(&[int(1), int(3)]).unwrap();
        assert_eq!(v, vec![int(2), int(3)]);
    }

    #[test]
    fn full_space_gives_w() {
        let rs = build_root_system(RootType::A(2)).unwrap();
        let w = enumerate_weyl(&rs, 100).unwrap();
        let r = w0_compute(&w, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!((r.n_order, r.z_order, r.w0_order), (6, 1, 6));
        assert!(r.looks_like_s3());
    }
}
