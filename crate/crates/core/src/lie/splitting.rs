use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{LieAlgebra, LieError, StructureConstants};
use crate::exact::{combination_name, fmt_rational, int, Matrix, Polynomial, Rational};

/// Which half survives a contraction: `KeepH` gives `h ⋉ r^ab`, `KeepR` gives `r ⋉ h^ab`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    KeepH,
    KeepR,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplittingKind {
    Plain,
    /// `h = u_+ ⊕ t_1`, `r = t_0 ⊕ u_-`, with the listed basis indices.
    Horospherical { t1: Vec<usize>, t0: Vec<usize> },
}

/// Point `(a : b)` of the projective line; the bracket `a·{,}_0 + b·{,}_∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketParameter {
    a: Rational,
    b: Rational,
}

impl BracketParameter {
    pub fn new(a: Rational, b: Rational) -> Result<Self, LieError> {
        if a.is_zero() && b.is_zero() {
            Err(LieError::ZeroParameter)
        } else {
            Ok(BracketParameter { a, b })
        }
    }

    pub fn zero() -> Self {
        BracketParameter {
            a: Rational::one(),
            b: Rational::zero(),
        }
    }

    pub fn infinity() -> Self {
        BracketParameter {
            a: Rational::zero(),
            b: Rational::one(),
        }
    }

    /// `(1 : 1)`, the original bracket.
    pub fn one() -> Self {
        BracketParameter {
            a: Rational::one(),
            b: Rational::one(),
        }
    }

    /// `(1 : t)`.
    pub fn at(t: Rational) -> Self {
        BracketParameter {
            a: Rational::one(),
            b: t,
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }
}

impl fmt::Display for BracketParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", fmt_rational(&self.a), fmt_rational(&self.b))
    }
}

/// Vector space decomposition `q = h ⊕ r` along basis vectors. `h` is always
/// a subalgebra; `r` is one unless the splitting was built with
/// [`Splitting::with_complement`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    algebra: LieAlgebra,
    h: Vec<usize>,
    r: Vec<usize>,
    r_closed: bool,
    kind: SplittingKind,
    /// Algebra before an adapted change of basis, and the new basis in its coordinates.
    origin: Option<Box<(LieAlgebra, Matrix)>>,
}

impl Splitting {
    /// Splits along `h_part` and its complement; both must be subalgebras.
    pub fn new(algebra: &LieAlgebra, h_part: &[usize]) -> Result<Self, LieError> {
        let s = Self::with_complement(algebra, h_part)?;
        if !s.r_closed {
            let (i, j) = algebra.closure_violation(&s.r).expect("not closed");
            return Err(LieError::NotSubalgebra {
                side: "r",
                a: algebra.basis_names()[i].clone(),
                b: algebra.basis_names()[j].clone(),
            });
        }
        Ok(s)
    }

    /// Like [`Splitting::new`] but only `h` has to be a subalgebra. Operations
    /// that need `[r, r] ⊆ r` refuse to run on such a splitting.
    pub fn with_complement(algebra: &LieAlgebra, h_part: &[usize]) -> Result<Self, LieError> {
        let n = algebra.dim();
        let mut h: Vec<usize> = h_part.to_vec();
        h.sort_unstable();
        h.dedup();
        if h.iter().any(|&i| i >= n) {
            return Err(LieError::Invalid("h index out of range".into()));
        }
        if let Some((i, j)) = algebra.closure_violation(&h) {
            return Err(LieError::NotSubalgebra {
                side: "h",
                a: algebra.basis_names()[i].clone(),
                b: algebra.basis_names()[j].clone(),
            });
        }
        let r: Vec<usize> = (0..n).filter(|i| !h.contains(i)).collect();
        let r_closed = algebra.closure_violation(&r).is_none();
        Ok(Splitting {
            algebra: algebra.clone(),
            h,
            r,
            r_closed,
            kind: SplittingKind::Plain,
            origin: None,
        })
    }

    /// Splitting along arbitrary subspaces: the algebra is rewritten in the basis
    /// `h_basis ++ r_basis`.
    pub fn from_subspaces(
        algebra: &LieAlgebra,
        h_basis: &[Vec<Rational>],
        r_basis: &[Vec<Rational>],
    ) -> Result<Self, LieError> {
        let rows: Vec<Vec<Rational>> = h_basis.iter().chain(r_basis).cloned().collect();
        let names = rows.iter().map(|v| vector_name(v, algebra)).collect();
        let m = Matrix::from_rows(rows)?;
        let rebased = algebra.rebase(&m, names)?;
        let h: Vec<usize> = (0..h_basis.len()).collect();
        let mut s = Self::new(&rebased, &h)?;
        s.origin = Some(Box::new((algebra.clone(), m)));
        Ok(s)
    }

    /// `h = u_+ ⊕ t_1`, `r = t_0 ⊕ u_-` with `t_0 = t_1^⊥` in `t`. Vectors of
    /// `t1_basis` are coordinates on the Cartan basis. The algebra is rewritten
    /// in the basis `u_+, t_1, t_0, u_-`.
    pub fn horospherical(algebra: &LieAlgebra, t1_basis: &[Vec<Rational>]) -> Result<Self, LieError> {
        let red = algebra.reductive_data().ok_or(LieError::NotReductive)?;
        let tri = &red.triangular;
        let l = red.rank;
        if t1_basis.iter().any(|v| v.len() != l) {
            return Err(LieError::Invalid("t_1 vectors must have rank-many coordinates".into()));
        }
        let k = &tri.cartan_form;
        let t0_basis: Vec<Vec<Rational>> = if t1_basis.is_empty() {
            (0..l).map(|i| unit_vec(l, i)).collect()
        } else {
            let t1 = Matrix::from_rows(t1_basis.to_vec())?;
            if t1.rank() < t1_basis.len() {
                return Err(LieError::Invalid("t_1 vectors are dependent".into()));
            }
            let g1 = t1.mul(k)?.mul(&t1.transpose())?;
            if g1.determinant()?.is_zero() {
                return Err(LieError::DegenerateForm);
            }
            t1.mul(k)?.nullspace().into_iter().map(normalize_sign).collect()
        };
        let n = algebra.dim();
        let embed = |v: &Vec<Rational>| {
            let mut w = vec![Rational::zero(); n];
            for (c, &i) in v.iter().zip(&tri.cartan_indices) {
                w[i] = c.clone();
            }
            w
        };
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
        rows.extend(tri.plus_indices.iter().map(|&i| unit_vec(n, i)));
        rows.extend(t1_basis.iter().map(embed));
        rows.extend(t0_basis.iter().map(embed));
        rows.extend(tri.minus_indices.iter().map(|&i| unit_vec(n, i)));
        let names = rows.iter().map(|v| vector_name(v, algebra)).collect();
        let np = tri.plus_indices.len();
        let n1 = t1_basis.len();
        let n0 = t0_basis.len();
        let change = Matrix::from_rows(rows)?;
        let rebased = algebra.rebase(&change, names)?.with_triangular(
            (0..np).collect(),
            (np..np + n1 + n0).collect(),
            (np + n1 + n0..n).collect(),
        )?;
        let mut s = Self::new(&rebased, &(0..np + n1).collect::<Vec<_>>())?;
        s.kind = SplittingKind::Horospherical {
            t1: (np..np + n1).collect(),
            t0: (np + n1..np + n1 + n0).collect(),
        };
        s.origin = Some(Box::new((algebra.clone(), change)));
        Ok(s)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// The algebra in the basis the splitting was requested in.
    pub fn original_algebra(&self) -> &LieAlgebra {
        self.origin.as_ref().map_or(&self.algebra, |o| &o.0)
    }

    /// Rows: the splitting's basis vectors in original coordinates.
    pub fn basis_change(&self) -> Option<&Matrix> {
        self.origin.as_ref().map(|o| &o.1)
    }

    /// Rewrites an element of `S(q)` given in the original basis in the
    /// splitting's basis.
    pub fn from_original(&self, p: &Polynomial) -> Result<Polynomial, LieError> {
        let Some(o) = &self.origin else {
            return Ok(p.clone());
        };
        let inv = o.1.inverse()?.ok_or_else(|| LieError::Invalid("singular basis change".into()))?;
        // x_a = Σ_i (B^{-1})_{ai} b_i
        let images: Vec<Polynomial> = (0..inv.rows()).map(|a| Polynomial::linear(inv.row(a))).collect();
        Ok(p.substitute(&images)?)
    }

    /// Inverse of [`Splitting::from_original`].
    pub fn to_original(&self, p: &Polynomial) -> Result<Polynomial, LieError> {
        let Some(o) = &self.origin else {
            return Ok(p.clone());
        };
        let b = o.1.transpose();
        // b_i = Σ_a B_{ia} x_a
        let images: Vec<Polynomial> = (0..b.cols()).map(|i| Polynomial::linear(&b.column(i))).collect();
        Ok(p.substitute(&images)?)
    }

    pub fn h_indices(&self) -> &[usize] {
        &self.h
    }

    pub fn r_indices(&self) -> &[usize] {
        &self.r
    }

    pub fn r_closed(&self) -> bool {
        self.r_closed
    }

    pub fn kind(&self) -> &SplittingKind {
        &self.kind
    }

    pub fn t0_indices(&self) -> Option<&[usize]> {
        match &self.kind {
            SplittingKind::Horospherical { t0, .. } => Some(t0),
            SplittingKind::Plain => None,
        }
    }

    pub fn t1_indices(&self) -> Option<&[usize]> {
        match &self.kind {
            SplittingKind::Horospherical { t1, .. } => Some(t1),
            SplittingKind::Plain => None,
        }
    }

    /// Membership mask of `h`.
    pub fn h_mask(&self) -> Vec<bool> {
        (0..self.algebra.dim()).map(|i| self.h.contains(&i)).collect()
    }

    /// The two contraction constant tables `(c⁰, c^∞)`; `c^∞` is `None` when
    /// `r` is not a subalgebra.
    fn contraction_tables(&self) -> (StructureConstants, Option<StructureConstants>) {
        let mask = self.h_mask();
        let names = self.algebra.basis_names().to_vec();
        let mut c0 = StructureConstants::new(names.clone());
        let mut cinf = StructureConstants::new(names);
        for (&(i, j), v) in &self.algebra.constants().brackets {
            let (zero_side, inf_side): (Vec<_>, Vec<_>) = match (mask[i], mask[j]) {
                (true, true) => (v.clone(), vec![]),
                (false, false) => (vec![], v.clone()),
                _ => v.iter().cloned().partition(|(k, _)| !mask[*k]),
            };
            if !zero_side.is_empty() {
                c0.brackets.insert((i, j), zero_side);
            }
            if !inf_side.is_empty() {
                cinf.brackets.insert((i, j), inf_side);
            }
        }
        (c0, self.r_closed.then_some(cinf))
    }

    /// Inönü–Wigner contraction keeping `h` (`q_(0)`) or `r` (`q_(∞)`).
    pub fn contract(&self, side: Side) -> Result<LieAlgebra, LieError> {
        let (c0, cinf) = self.contraction_tables();
        match side {
            Side::KeepH => Ok(LieAlgebra::trusted(&format!("{}_(0)", self.algebra.label), c0)),
            Side::KeepR => cinf
                .map(|c| LieAlgebra::trusted(&format!("{}_(inf)", self.algebra.label), c))
                .ok_or(LieError::ComplementNotClosed),
        }
    }

    /// The bracket `a·c⁰ + b·c^∞`.
    pub fn family_bracket(&self, p: &BracketParameter) -> Result<LieAlgebra, LieError> {
        let (c0, cinf) = self.contraction_tables();
        let cinf = cinf.ok_or(LieError::ComplementNotClosed)?;
        let n = self.algebra.dim();
        let mut c = StructureConstants::new(self.algebra.basis_names().to_vec());
        for i in 0..n {
            for j in i + 1..n {
                let x = c0.bracket_basis(i, j);
                let y = cinf.bracket_basis(i, j);
                let v: Vec<Rational> = x
                    .iter()
                    .zip(&y)
                    .map(|(x, y)| p.a() * x + p.b() * y)
                    .collect();
                c.set(i, j, &v);
            }
        }
        Ok(LieAlgebra::trusted(
            &format!("{}_{}", self.algebra.label, p),
            c,
        ))
    }
}

fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = int(1);
    v
}

fn normalize_sign(v: Vec<Rational>) -> Vec<Rational> {
    match v.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => v.into_iter().map(|c| -c).collect(),
        _ => v,
    }
}

fn vector_name(v: &[Rational], algebra: &LieAlgebra) -> String {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    if nz.len() == 1 && v[nz[0]].is_one() {
        algebra.basis_names()[nz[0]].clone()
    } else {
        combination_name(v, algebra.basis_names())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::lie::{double, gl, sl, so_even};
    use proptest::prelude::*;

    #[test]
    fn borel_splitting_of_sl2() {
        let g = sl(2).unwrap();
        let s = Splitting::new(&g, &[0, 1]).unwrap();
        assert_eq!(s.r_indices(), [2]);
        let q0 = s.contract(Side::KeepH).unwrap();
        assert_eq!(q0.bracket_basis(1, 0), vec![int(2), int(0), int(0)]);
        assert_eq!(q0.bracket_basis(1, 2), vec![int(0), int(0), int(-2)]);
        assert_eq!(q0.bracket_basis(0, 2), vec![int(0); 3]);
    }

    #[test]
    fn non_subalgebra_rejected() {
        let g = sl(2).unwrap();
        let err = Splitting::new(&g, &[0, 2]).unwrap_err();
        assert!(matches!(err, LieError::NotSubalgebra { side: "h", .. }));
    }

    #[test]
    fn zero_parameter_rejected() {
        assert_eq!(
            BracketParameter::new(int(0), int(0)),
            Err(LieError::ZeroParameter)
        );
    }

    #[test]
    fn horospherical_extremes() {
        let g = sl(3).unwrap();
        let full = Splitting::horospherical(&g, &[vec![int(1), int(0)], vec![int(0), int(1)]])
            .unwrap();
        assert_eq!(full.h_indices().len(), 5);
        let none = Splitting::horospherical(&g, &[]).unwrap();
        assert_eq!(none.h_indices().len(), 3);
        assert_eq!(none.t0_indices().unwrap().len(), 2);
    }

    #[test]
    fn horospherical_sl3_middle() {
        // t_1 spanned by diag(1,0,-1) = h1 + h2, t_0 by diag(1,-2,1) = h1 - h2
        let g = sl(3).unwrap();
        let s = Splitting::horospherical(&g, &[vec![int(1), int(1)]]).unwrap();
        let t0 = s.t0_indices().unwrap()[0];
        let real = s.algebra().realization().unwrap();
        let m = &real.matrices[t0];
        assert_eq!((m[(0, 0)].clone(), m[(1, 1)].clone(), m[(2, 2)].clone()), (int(1), int(-2), int(1)));
        assert_eq!(s.algebra().basis_names()[t0], "h1-h2");
        assert!(matches!(
            Splitting::horospherical(&g, &[vec![int(1), int(0)], vec![int(2), int(0)]]),
            Err(LieError::Invalid(_))
        ));
    }

    #[test]
    fn so8_horospherical_is_coordinate() {
        let g = so_even(4).unwrap();
        let t1: Vec<Vec<Rational>> = (0..3).map(|i| unit_vec(4, i)).collect();
        let s = Splitting::horospherical(&g, &t1).unwrap();
        let t0 = s.t0_indices().unwrap();
        assert_eq!(s.algebra().basis_names()[t0[0]], "h4");
        assert_eq!(s.h_indices().len(), 15);
    }

    #[test]
    fn gl_block_complement_not_closed() {
        let g = gl(4).unwrap();
        let h: Vec<usize> = (0..16)
            .filter(|&i| {
                let n = &g.basis_names()[i];
                let (a, b) = (n.as_bytes()[1], n.as_bytes()[2]);
                (a == b'1') == (b == b'1')
            })
            .collect();
        assert_eq!(h.len(), 10);
        assert!(Splitting::new(&g, &h).is_err());
        let s = Splitting::with_complement(&g, &h).unwrap();
        assert!(!s.r_closed());
        assert!(s.contract(Side::KeepH).unwrap().check_jacobi().passed);
        assert_eq!(s.contract(Side::KeepR), Err(LieError::ComplementNotClosed));
        assert!(s.family_bracket(&BracketParameter::one()).is_err());
    }

    #[test]
    fn double_horospherical_contraction_is_jacobi() {
        let d = double(&sl(2).unwrap()).unwrap();
        let s = Splitting::horospherical(&d, &[vec![int(1), int(-1)]]).unwrap();
        assert_eq!(s.algebra().basis_names(), ["e", "h-xi", "h+xi", "f"]);
        let q0 = s.contract(Side::KeepH).unwrap();
        assert!(q0.check_jacobi().passed);
        // Drinfeld double of b: b acting on (b*)^ab, dimension 4, index 2
        assert_eq!(q0.dim(), 4);
    }

    fn splittings() -> Vec<Splitting> {
        let sl2 = sl(2).unwrap();
        let sl3 = sl(3).unwrap();
        vec![
            Splitting::new(&sl2, &[0, 1]).unwrap(),
            Splitting::horospherical(&sl3, &[vec![int(1), int(1)]]).unwrap(),
            Splitting::horospherical(&double(&sl2).unwrap(), &[vec![int(1), int(-1)]]).unwrap(),
        ]
    }

    #[test]
    fn pencil_endpoints() {
        for s in splittings() {
            let one = s.family_bracket(&BracketParameter::one()).unwrap();
            assert_eq!(one.constants(), s.algebra().constants());
            let zero = s.family_bracket(&BracketParameter::zero()).unwrap();
            assert_eq!(zero.constants(), s.contract(Side::KeepH).unwrap().constants());
            let inf = s.family_bracket(&BracketParameter::infinity()).unwrap();
            assert_eq!(inf.constants(), s.contract(Side::KeepR).unwrap().constants());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn pencil_is_jacobi(a in -20i64..21, b in -20i64..21, d in 1i64..5) {
            prop_assume!(a != 0 || b != 0);
            let p = BracketParameter::new(rat(a, d), rat(b, 1)).unwrap();
            for s in splittings() {
                prop_assert!(s.family_bracket(&p).unwrap().check_jacobi().passed);
            }
        }

        // x_h ↦ x_h, x_r ↦ t·x_r carries {,}_(1,t) to the original bracket.
        #[test]
        fn pencil_rescaling_isomorphism(tn in 1i64..30, td in 1i64..7, neg in any::<bool>()) {
            let t = rat(if neg { -tn } else { tn }, td);
            for s in splittings() {
                let fam = s.family_bracket(&BracketParameter::at(t.clone())).unwrap();
                let alg = s.algebra();
                let n = alg.dim();
                let mask = s.h_mask();
                let w = |i: usize| if mask[i] { int(1) } else { t.clone() };
                for i in 0..n {
                    for j in i + 1..n {
                        let lhs: Vec<Rational> = fam
                            .bracket_basis(i, j)
                            .iter()
                            .enumerate()
                            .map(|(k, c)| c * w(k))
                            .collect();
                        let rhs: Vec<Rational> =
                            alg.bracket_basis(i, j).iter().map(|c| c * w(i) * w(j)).collect();
                        prop_assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
