use super::bidegree::bidecompose;
use super::hilbert::HilbertBasis;
use super::InvariantError;
use crate::exact::{Matrix, Polynomial};
use crate::lie::{Splitting, SplittingKind};
use crate::poisson::Sampling;

/// Maximal rank of the Jacobian matrix over the sampled points. A lower bound
/// for the transcendence degree of the generated algebra.
pub fn jacobian_rank(polys: &[Polynomial], sampling: &Sampling) -> Result<usize, InvariantError> {
    let Some(first) = polys.first() else {
        return Ok(0);
    };
    let n = first.nvars();
    let grads: Vec<Vec<Polynomial>> = polys.iter().map(Polynomial::gradient).collect();
    let all: Vec<usize> = (0..n).collect();
    let mut best = 0;
    for t in 0..sampling.trials.max(1) {
        let x = sampling.point(t, n, &all);
        let rows = grads
            .iter()
            .map(|g| g.iter().map(|p| p.eval(&x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        best = best.max(Matrix::from_rows(rows)?.rank());
        if best == polys.len().min(n) {
            break;
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GgsRow {
    pub name: String,
    pub degree: u32,
    pub top_bidegree: (u32, u32),
    pub bottom_bidegree: (u32, u32),
    /// `deg_r F^•`
    pub deg_r_top: u32,
    /// `deg_h F_•`
    pub deg_h_bottom: u32,
    /// `F^• ∈ S(t_0)` (horospherical splittings only).
    pub top_in_t0: bool,
    pub top: Polynomial,
    pub bottom: Polynomial,
}

/// Degree-sum criterion for one side together with the Jacobian cross-check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GgsSide {
    pub degree_sum: u32,
    pub dim: usize,
    pub jacobian_rank: usize,
    pub verdict: bool,
    /// The degree criterion and the Jacobian rank agree.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoroCheck {
    pub a_count: usize,
    pub dim_t0: usize,
    /// Every `F^• ∉ S(t_0)` has bi-degree `(1, d − 1)`.
    pub bidegree_claim: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GgsReport {
    pub rows: Vec<GgsRow>,
    /// g.g.s. for `h`: `Σ deg_r F^• = dim r`.
    pub h_side: GgsSide,
    /// g.g.s. for `r`; absent when `r` is not a subalgebra.
    pub r_side: Option<GgsSide>,
    pub horospherical: Option<HoroCheck>,
}

impl GgsReport {
    pub fn common(&self) -> bool {
        self.h_side.verdict && self.r_side.as_ref().is_some_and(|r| r.verdict)
    }

    pub fn tops(&self) -> Vec<Polynomial> {
        self.rows.iter().map(|r| r.top.clone()).collect()
    }

    pub fn bottoms(&self) -> Vec<Polynomial> {
        self.rows.iter().map(|r| r.bottom.clone()).collect()
    }
}

/// g.g.s. test for `b`, written in the splitting's basis.
pub fn ggs_check(
    s: &Splitting,
    b: &HilbertBasis,
    sampling: &Sampling,
) -> Result<GgsReport, InvariantError> {
    let t0 = s.t0_indices().unwrap_or(&[]).to_vec();
    let mut rows = Vec::with_capacity(b.len());
    for g in &b.generators {
        let parts = bidecompose(s, &g.poly)?;
        let top = parts.top();
        let bottom = parts.bottom();
        let top_in_t0 = matches!(s.kind(), SplittingKind::Horospherical { .. })
            && top.poly.support_vars().iter().all(|v| t0.contains(v));
        rows.push(GgsRow {
            name: g.name.clone(),
            degree: g.degree,
            top_bidegree: top.bidegree,
            bottom_bidegree: bottom.bidegree,
            deg_r_top: top.bidegree.1,
            deg_h_bottom: bottom.bidegree.0,
            top_in_t0,
            top: top.poly.clone(),
            bottom: bottom.poly.clone(),
        });
    }
    let side = |sum: u32, dim: usize, polys: Vec<Polynomial>| -> Result<GgsSide, InvariantError> {
        let jacobian_rank = jacobian_rank(&polys, sampling)?;
        let verdict = sum as usize == dim;
        Ok(GgsSide {
            degree_sum: sum,
            dim,
            jacobian_rank,
            verdict,
            consistent: verdict == (jacobian_rank == polys.len()),
        })
    };
    let h_side = side(
        rows.iter().map(|r| r.deg_r_top).sum(),
        s.r_indices().len(),
        rows.iter().map(|r| r.top.clone()).collect(),
    )?;
    let r_side = if s.r_closed() {
        Some(side(
            rows.iter().map(|r| r.deg_h_bottom).sum(),
            s.h_indices().len(),
            rows.iter().map(|r| r.bottom.clone()).collect(),
        )?)
    } else {
        None
    };
    let horospherical = match s.kind() {
        SplittingKind::Horospherical { t0, .. } => Some(HoroCheck {
            a_count: rows.iter().filter(|r| r.top_in_t0).count(),
            dim_t0: t0.len(),
            bidegree_claim: rows
                .iter()
                .filter(|r| !r.top_in_t0)
                .all(|r| r.top_bidegree == (1, r.degree - 1)),
        }),
        SplittingKind::Plain => None,
    };
    Ok(GgsReport {
        rows,
        h_side,
        r_side,
        horospherical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::invariants::{hilbert_basis, BasisKind};
    use crate::lie::{gl, sl};

    fn sampling() -> Sampling {
        Sampling::new(3, 11)
    }

    #[test]
    fn jacobian_examples() {
        let h = Polynomial::var(3, 1);
        let ef = &Polynomial::var(3, 0) * &Polynomial::var(3, 2);
        assert_eq!(jacobian_rank(&[h.pow(2), ef], &sampling()).unwrap(), 2);
        let x = Polynomial::var(1, 0);
        assert_eq!(jacobian_rank(&[x.clone(), x.pow(2)], &sampling()).unwrap(), 1);
    }

    #[test]
    fn sl2_borel_is_ggs() {
        let g = sl(2).unwrap();
        let s = Splitting::new(&g, &[0, 1]).unwrap();
        let b = hilbert_basis(&g, &BasisKind::Charpoly).unwrap();
        let r = ggs_check(&s, &b, &sampling()).unwrap();
        assert_eq!(r.h_side.degree_sum, 1);
        assert_eq!(r.h_side.dim, 1);
        assert!(r.h_side.verdict && r.h_side.consistent);
        assert_eq!(r.h_side.jacobian_rank, 1);
        // the r side: F_• = h², deg_h 2 = dim b
        let rs = r.r_side.unwrap();
        assert!(rs.verdict && rs.consistent);
    }

    fn block_h(n: usize, m: usize) -> Vec<usize> {
        let g = gl(n).unwrap();
        g.basis_names()
            .iter()
            .enumerate()
            .filter(|(_, name)| {
                let i = name.as_bytes()[1] - b'1';
                let j = name.as_bytes()[2] - b'1';
                ((i as usize) < m) == ((j as usize) < m)
            })
            .map(|(k, _)| k)
            .collect()
    }

    #[test]
    fn gl4_block_dichotomy() {
        let g = gl(4).unwrap();
        let s = Splitting::with_complement(&g, &block_h(4, 1)).unwrap();
        let tp = hilbert_basis(&g, &BasisKind::TracePowers).unwrap();
        let cp = hilbert_basis(&g, &BasisKind::Charpoly).unwrap();
        let rt = ggs_check(&s, &tp, &sampling()).unwrap();
        assert_eq!((rt.h_side.degree_sum, rt.h_side.dim), (8, 6));
        assert!(!rt.h_side.verdict && rt.h_side.consistent);
        assert!(rt.r_side.is_none());
        let rc = ggs_check(&s, &cp, &sampling()).unwrap();
        assert_eq!((rc.h_side.degree_sum, rc.h_side.dim), (6, 6));
        assert!(rc.h_side.verdict && rc.h_side.consistent);
    }

    #[test]
    fn sl3_horospherical_fails() {
        let g = sl(3).unwrap();
        let s = Splitting::horospherical(&g, &[vec![int(1), int(1)]]).unwrap();
        let b = hilbert_basis(s.algebra(), &BasisKind::TracePowers).unwrap();
        let r = ggs_check(&s, &b, &sampling()).unwrap();
        let h = r.horospherical.unwrap();
        assert_eq!((h.a_count, h.dim_t0), (2, 1));
        assert_eq!(r.h_side.degree_sum, 5);
        assert!(!r.h_side.verdict && r.h_side.consistent);
    }
}
