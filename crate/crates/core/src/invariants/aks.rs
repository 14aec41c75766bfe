use super::bidegree::bidecompose;
use super::hilbert::HilbertBasis;
use super::InvariantError;
use crate::exact::Polynomial;
use crate::lie::Splitting;
use crate::poisson::poisson_bracket;

/// Restricted invariants inside one summand and the outcome of the pairwise
/// bracket check there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AksSide {
    /// Polynomials in the summand's own coordinates.
    pub generators: Vec<Polynomial>,
    pub commutative: bool,
    pub first_failure: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AksReport {
    pub h: AksSide,
    /// Absent when `r` is not a subalgebra.
    pub r: Option<AksSide>,
}

fn side(s: &Splitting, b: &HilbertBasis, idx: &[usize], keep_h: bool) -> Result<AksSide, InvariantError> {
    let alg = s.algebra();
    let sub = alg.basis_subalgebra(idx)?;
    let m = idx.len();
    let images: Vec<Polynomial> = (0..alg.dim())
        .map(|i| match idx.iter().position(|&k| k == i) {
            Some(k) => Polynomial::var(m, k),
            None => Polynomial::zero(m),
        })
        .collect();
    let mut generators = Vec::new();
    for g in &b.generators {
        let parts = bidecompose(s, &g.poly)?;
        // F_{d,0} (resp. F_{0,d}): the restriction to Ann(r) ≅ h* (resp. Ann(h))
        let want = if keep_h { g.degree } else { 0 };
        if let Some(c) = parts.get(want) {
            generators.push(c.poly.substitute(&images)?);
        }
    }
    let mut first_failure = None;
    'outer: for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            if !poisson_bracket(&sub, &generators[i], &generators[j])?.is_zero() {
                first_failure = Some((i, j));
                break 'outer;
            }
        }
    }
    Ok(AksSide {
        generators,
        commutative: first_failure.is_none(),
        first_failure,
    })
}

/// Adler–Kostant–Symes check: restrictions of the invariants to `h*` and
/// `r*` Poisson-commute inside `S(h)` and `S(r)`.
pub fn aks_restrict(s: &Splitting, b: &HilbertBasis) -> Result<AksReport, InvariantError> {
    let h = side(s, b, s.h_indices(), true)?;
    let r = if s.r_closed() {
        Some(side(s, b, s.r_indices(), false)?)
    } else {
        None
    };
    Ok(AksReport { h, r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{hilbert_basis, BasisKind};
    use crate::lie::{gl, sl};

    fn borel(n: usize) -> Splitting {
        let g = sl(n).unwrap();
        let red = g.reductive_data().unwrap();
        let mut h = red.triangular.plus_indices.clone();
        h.extend(&red.triangular.cartan_indices);
        Splitting::new(&g, &h).unwrap()
    }

    #[test]
    fn sl2_single_element() {
        let s = borel(2);
        let b = hilbert_basis(s.algebra(), &BasisKind::Charpoly).unwrap();
        let r = aks_restrict(&s, &b).unwrap();
        assert_eq!(r.h.generators.len(), 1);
        // −¼h² in the coordinates (e, h)
        assert_eq!(r.h.generators[0].primitive(), Polynomial::var(2, 1).pow(2));
        assert!(r.h.commutative);
        assert!(r.r.unwrap().generators.is_empty());
    }

    #[test]
    fn sl3_borel_commutes() {
        let s = borel(3);
        let b = hilbert_basis(s.algebra(), &BasisKind::TracePowers).unwrap();
        let r = aks_restrict(&s, &b).unwrap();
        assert_eq!(r.h.generators.len(), 2);
        assert!(r.h.commutative);
    }

    #[test]
    fn gl3_block_commutes() {
        let g = gl(3).unwrap();
        let h: Vec<usize> = ["E11", "E22", "E33", "E23", "E32"]
            .iter()
            .map(|n| g.index_of(n).unwrap())
            .collect();
        let s = Splitting::with_complement(&g, &h).unwrap();
        let b = hilbert_basis(&g, &BasisKind::TracePowers).unwrap();
        let r = aks_restrict(&s, &b).unwrap();
        assert_eq!(r.h.generators.len(), 3);
        assert!(r.h.commutative);
        assert!(r.r.is_none());
    }
}
