//! Lie–Poisson brackets, Poisson tensors at points and sampled invariants:
//! index, generic stabilizers, and the rank/complexity data of a splitting.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exact::{MathError, Matrix, Polynomial, Rational};
use crate::lie::{BracketParameter, LieAlgebra, LieError, Side, Splitting};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error("stabilizer is not closed under the bracket (sampling bug)")]
    StabilizerNotClosed,
    #[error("s0 + s_inf = {sum} < rank {rank}; this contradicts a theorem and signals a bug")]
    RankInequalityViolated { sum: i64, rank: usize },
    #[error("c = ({s} - {r})/2 is not an integer")]
    NonIntegralComplexity { s: i64, r: i64 },
    #[error("trials must be at least 1")]
    NoTrials,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// Seeded sampling parameters; trial `i` draws from its own ChaCha stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub trials: usize,
    pub seed: u64,
    pub bound: i64,
}

impl Sampling {
    pub fn new(trials: usize, seed: u64) -> Self {
        Sampling {
            trials,
            seed,
            bound: 1_000_000,
        }
    }

    pub fn rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }

    /// Integer point with coordinates in `[-bound, bound]`, zero outside `support`.
    pub fn point(&self, trial: usize, dim: usize, support: &[usize]) -> Vec<Rational> {
        let mut rng = self.rng(trial);
        let mut v = vec![Rational::zero(); dim];
        for &i in support {
            v[i] = Rational::from_integer(BigInt::from(rng.random_range(-self.bound..=self.bound)));
        }
        v
    }
}

/// `{F, G}` for the Lie–Poisson structure of `alg`.
pub fn poisson_bracket(
    alg: &LieAlgebra,
    f: &Polynomial,
    g: &Polynomial,
) -> Result<Polynomial, PoissonError> {
    let n = alg.dim();
    for p in [f, g] {
        if p.nvars() != n {
            return Err(MathError::VariableCountMismatch {
                left: n,
                right: p.nvars(),
            }
            .into());
        }
    }
    let df = f.gradient();
    let dg = g.gradient();
    // {F,G} = Σ_i ∂_iF · H_i,  H_i = Σ_j [x_i, x_j] ∂_jG
    let mut h: Vec<Polynomial> = vec![Polynomial::zero(n); n];
    for (&(i, j), v) in &alg.constants().brackets {
        let lin = linear_form(n, v);
        if !dg[j].is_zero() {
            h[i].add_scaled(&(&lin * &dg[j]), &Rational::from_integer(1.into()))?;
        }
        if !dg[i].is_zero() {
            h[j].add_scaled(&(&lin * &dg[i]), &Rational::from_integer((-1).into()))?;
        }
    }
    let mut out = Polynomial::zero(n);
    for i in 0..n {
        if df[i].is_zero() || h[i].is_zero() {
            continue;
        }
        out.add_scaled(&(&df[i] * &h[i]), &Rational::from_integer(1.into()))?;
    }
    Ok(out)
}

/// `{F, x_k}` without forming products of non-linear factors.
pub fn bracket_with_coordinate(alg: &LieAlgebra, f: &Polynomial, k: usize) -> Polynomial {
    let n = alg.dim();
    let mut out = Polynomial::zero(n);
    for i in 0..n {
        let v = alg.bracket_basis(i, k);
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let d = f.diff(i).expect("in range");
        if d.is_zero() {
            continue;
        }
        let lin = Polynomial::linear(&v);
        out.add_scaled(&(&d * &lin), &Rational::from_integer(1.into()))
            .expect("same ring");
    }
    out
}

/// `{F, G}(ξ) = ∇F(ξ)ᵀ π(ξ) ∇G(ξ)`, exact at one point.
pub fn bracket_at(
    alg: &LieAlgebra,
    f: &Polynomial,
    g: &Polynomial,
    xi: &[Rational],
) -> Result<Rational, PoissonError> {
    let pi = tensor_matrix(alg, xi);
    let a = f.eval_gradient(xi)?;
    let b = g.eval_gradient(xi)?;
    let pb = pi.mul_vec(&b)?;
    Ok(a.iter().zip(&pb).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
}

fn linear_form(n: usize, v: &[(usize, Rational)]) -> Polynomial {
    let mut c = vec![Rational::zero(); n];
    for (k, x) in v {
        c[*k] = x.clone();
    }
    Polynomial::linear(&c)
}

/// The skew matrix `ξ([x_i, x_j])`.
pub fn tensor_matrix(alg: &LieAlgebra, xi: &[Rational]) -> Matrix {
    let n = alg.dim();
    let mut m = Matrix::zeros(n, n);
    for (&(i, j), v) in &alg.constants().brackets {
        let val = v
            .iter()
            .fold(Rational::zero(), |acc, (k, c)| acc + c * &xi[*k]);
        m[(j, i)] = -val.clone();
        m[(i, j)] = val;
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonTensorSample {
    pub point: Vec<Rational>,
    pub parameter: BracketParameter,
    pub matrix: Matrix,
    pub rank: usize,
    /// With a splitting: the block `ξ([h, r])` and its rank.
    pub block_a: Option<(Matrix, usize)>,
}

/// `π_p(ξ)` for the bracket of `alg`, or of the pencil member `p` when a
/// splitting is given.
pub fn tensor_at(
    alg: &LieAlgebra,
    xi: &[Rational],
    family: Option<(&Splitting, &BracketParameter)>,
) -> Result<PoissonTensorSample, PoissonError> {
    if xi.len() != alg.dim() {
        return Err(MathError::PointLength {
            got: xi.len(),
            expected: alg.dim(),
        }
        .into());
    }
    let (matrix, parameter, block_a) = match family {
        None => (tensor_matrix(alg, xi), BracketParameter::one(), None),
        Some((s, p)) => {
            let bracket = if s.r_closed() {
                s.family_bracket(p)?
            } else if p == &BracketParameter::zero() {
                s.contract(Side::KeepH)?
            } else {
                return Err(LieError::ComplementNotClosed.into());
            };
            let m = tensor_matrix(&bracket, xi);
            let a = m.select(s.h_indices(), s.r_indices());
            let ra = a.rank();
            (m, p.clone(), Some((a, ra)))
        }
    };
    let rank = matrix.rank();
    Ok(PoissonTensorSample {
        point: xi.to_vec(),
        parameter,
        matrix,
        rank,
        block_a,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexEstimate {
    pub claimed_index: usize,
    pub certified_max_rank: usize,
    pub samples: usize,
    pub seed: u64,
    pub b_value: Rational,
    pub witness: Vec<Rational>,
}

/// `dim − max rank π(ξ)` over sampled integer points.
pub fn index_estimate(alg: &LieAlgebra, sampling: &Sampling) -> Result<IndexEstimate, PoissonError> {
    if sampling.trials == 0 {
        return Err(PoissonError::NoTrials);
    }
    let n = alg.dim();
    let all: Vec<usize> = (0..n).collect();
    let mut best = (0usize, vec![Rational::zero(); n]);
    let mut used = 0;
    for t in 0..sampling.trials {
        used += 1;
        let xi = sampling.point(t, n, &all);
        let r = tensor_matrix(alg, &xi).rank();
        if r > best.0 || t == 0 {
            best = (r, xi);
        }
        if best.0 == n - n % 2 {
            break;
        }
    }
    let index = n - best.0;
    Ok(IndexEstimate {
        claimed_index: index,
        certified_max_rank: best.0,
        samples: used,
        seed: sampling.seed,
        b_value: Rational::new(BigInt::from(n + index), BigInt::from(2)),
        witness: best.1,
    })
}

/// True iff `dim ker π(ξ)` equals the estimated index.
pub fn regular_point_check(alg: &LieAlgebra, xi: &[Rational], est: &IndexEstimate) -> bool {
    alg.dim() - tensor_matrix(alg, xi).rank() == est.claimed_index
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerReport {
    pub ambient: Vec<usize>,
    pub sample_point: Vec<Rational>,
    /// Coordinates in the ambient algebra's basis.
    pub stabilizer_basis: Vec<Vec<Rational>>,
    pub dim_star: usize,
    pub is_abelian: bool,
    pub index_star: IndexEstimate,
}

/// `h^ξ = {x ∈ h : ξ([x, q]) = 0}` for sampled `ξ ∈ Ann(h)`, keeping the
/// smallest one seen.
pub fn generic_stabilizer(
    alg: &LieAlgebra,
    h: &[usize],
    sampling: &Sampling,
) -> Result<StabilizerReport, PoissonError> {
    if sampling.trials == 0 {
        return Err(PoissonError::NoTrials);
    }
    alg.basis_subalgebra(h)?;
    let n = alg.dim();
    let ann: Vec<usize> = (0..n).filter(|i| !h.contains(i)).collect();
    let mut best: Option<(Vec<Rational>, Vec<Vec<Rational>>)> = None;
    for t in 0..sampling.trials {
        let xi = sampling.point(t, n, &ann);
        let pi = tensor_matrix(alg, &xi);
        // rows: all basis vectors y; columns: h basis vectors x; entry ξ([x, y])
        let mut m = Matrix::zeros(n, h.len());
        for y in 0..n {
            for (a, &x) in h.iter().enumerate() {
                m[(y, a)] = pi[(x, y)].clone();
            }
        }
        let null = m.nullspace();
        let basis: Vec<Vec<Rational>> = null
            .into_iter()
            .map(|c| {
                let mut v = vec![Rational::zero(); n];
                for (a, &x) in h.iter().enumerate() {
                    v[x] = c[a].clone();
                }
                v
            })
            .collect();
        if best.as_ref().is_none_or(|(_, b)| basis.len() < b.len()) {
            best = Some((xi, basis));
        }
    }
    let (point, basis) = best.expect("at least one trial");
    let sub = if basis.is_empty() {
        LieAlgebra::abelian(0)
    } else {
        alg.span_subalgebra(&basis)
            .map_err(|_| PoissonError::StabilizerNotClosed)?
    };
    let index_star = if basis.is_empty() {
        IndexEstimate {
            claimed_index: 0,
            certified_max_rank: 0,
            samples: 0,
            seed: sampling.seed,
            b_value: Rational::zero(),
            witness: vec![],
        }
    } else {
        index_estimate(&sub, sampling)?
    };
    Ok(StabilizerReport {
        ambient: h.to_vec(),
        sample_point: point,
        dim_star: basis.len(),
        is_abelian: sub.is_abelian(),
        stabilizer_basis: basis,
        index_star,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericityReport {
    pub rank: usize,
    pub s0: i64,
    pub s_inf: i64,
    pub dim_h_star: usize,
    pub dim_r_star: usize,
    pub r_gh: i64,
    pub r_gr: i64,
    pub c_gh: Rational,
    pub c_gr: Rational,
    pub index_q0: usize,
    pub index_qinf: usize,
    pub sum_equals_rank: bool,
    pub nondegenerate: bool,
    pub h_star_abelian: bool,
    pub r_star_abelian: bool,
}

fn complexity(s: i64, r: i64) -> Result<Rational, PoissonError> {
    let diff = s - r;
    if diff % 2 != 0 {
        return Err(PoissonError::NonIntegralComplexity { s, r });
    }
    Ok(Rational::from_integer(BigInt::from(diff / 2)))
}

/// Rosenlicht-style counts `s_0, s_∞`, ranks and complexities of `G/H`, `G/R`.
pub fn sphericity(s: &Splitting, sampling: &Sampling) -> Result<SphericityReport, PoissonError> {
    let alg = s.algebra();
    let l = alg.rank().ok_or(LieError::NotReductive)?;
    let (dh, dr) = (s.h_indices().len() as i64, s.r_indices().len() as i64);
    let hs = generic_stabilizer(alg, s.h_indices(), sampling)?;
    let rs = generic_stabilizer(alg, s.r_indices(), sampling)?;
    let s0 = dr - dh + hs.dim_star as i64;
    let s_inf = dh - dr + rs.dim_star as i64;
    if s0 + s_inf < l as i64 {
        return Err(PoissonError::RankInequalityViolated {
            sum: s0 + s_inf,
            rank: l,
        });
    }
    let r_gh = l as i64 - hs.index_star.claimed_index as i64;
    let r_gr = l as i64 - rs.index_star.claimed_index as i64;
    let index_q0 = index_estimate(&s.contract(Side::KeepH)?, sampling)?.claimed_index;
    let index_qinf = index_estimate(&s.contract(Side::KeepR)?, sampling)?.claimed_index;
    Ok(SphericityReport {
        rank: l,
        s0,
        s_inf,
        dim_h_star: hs.dim_star,
        dim_r_star: rs.dim_star,
        r_gh,
        r_gr,
        c_gh: complexity(s0, r_gh)?,
        c_gr: complexity(s_inf, r_gr)?,
        index_q0,
        index_qinf,
        sum_equals_rank: s0 + s_inf == l as i64,
        nondegenerate: index_q0 == l && index_qinf == l,
        h_star_abelian: hs.is_abelian,
        r_star_abelian: rs.is_abelian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Polynomial};
    use crate::lie::{double, sl, Splitting};
    use proptest::prelude::*;

    fn sl2_vars() -> (LieAlgebra, Polynomial, Polynomial, Polynomial) {
        let g = sl(2).unwrap();
        (
            g,
            Polynomial::var(3, 0),
            Polynomial::var(3, 1),
            Polynomial::var(3, 2),
        )
    }

    #[test]
    fn degree_one_bracket_is_lie_bracket() {
        let (g, e, h, _) = sl2_vars();
        assert_eq!(poisson_bracket(&g, &h, &e).unwrap(), e.scale(&int(2)));
    }

    #[test]
    fn casimir_commutes_with_e() {
        let (g, e, h, f) = sl2_vars();
        let c = &h.pow(2) + &(&e * &f).scale(&int(4));
        assert!(poisson_bracket(&g, &c, &e).unwrap().is_zero());
        assert!(bracket_with_coordinate(&g, &c, 0).is_zero());
        assert!(!bracket_with_coordinate(&g, &h.pow(2), 0).is_zero());
    }

    #[test]
    fn bracket_with_itself_vanishes() {
        let (g, e, h, f) = sl2_vars();
        let p = &(&e * &h) + &f.pow(3);
        assert!(poisson_bracket(&g, &p, &p).unwrap().is_zero());
    }

    #[test]
    fn tensor_at_zero_and_dual_of_h() {
        let (g, ..) = sl2_vars();
        let zero = tensor_at(&g, &[int(0), int(0), int(0)], None).unwrap();
        assert!(zero.matrix.is_zero());
        assert_eq!(zero.rank, 0);
        let hstar = tensor_at(&g, &[int(0), int(1), int(0)], None).unwrap();
        assert_eq!(hstar.rank, 2);
        assert_eq!(hstar.matrix[(0, 2)], int(1));
    }

    #[test]
    fn contracted_tensor_on_ann_h() {
        let g = sl(2).unwrap();
        let s = Splitting::new(&g, &[0, 1]).unwrap();
        let xi = [int(0), int(0), int(7)];
        let t = tensor_at(&g, &xi, Some((&s, &BracketParameter::zero()))).unwrap();
        let (a, ra) = t.block_a.unwrap();
        assert_eq!((a.rows(), a.cols(), ra), (2, 1, 1));
        assert_eq!(t.rank, 2);
    }

    #[test]
    fn index_examples() {
        let sampling = Sampling::new(5, 11);
        let ab = LieAlgebra::abelian(4);
        assert_eq!(index_estimate(&ab, &sampling).unwrap().claimed_index, 4);
        let est = index_estimate(&sl(2).unwrap(), &sampling).unwrap();
        assert_eq!(est.claimed_index, 1);
        assert_eq!(est.b_value, int(2));
        let sl3 = sl(3).unwrap();
        let s = Splitting::new(&sl3, &[0, 1, 2, 3, 4]).unwrap();
        let q0 = s.contract(Side::KeepH).unwrap();
        assert_eq!(index_estimate(&q0, &sampling).unwrap().claimed_index, 2);
    }

    #[test]
    fn regular_points_of_sl2() {
        let g = sl(2).unwrap();
        let est = index_estimate(&g, &Sampling::new(3, 1)).unwrap();
        assert!(regular_point_check(&g, &[int(0), int(1), int(0)], &est));
        assert!(!regular_point_check(&g, &[int(0), int(0), int(0)], &est));
    }

    #[test]
    fn stabilizers_in_sl2() {
        let g = sl(2).unwrap();
        let sampling = Sampling::new(4, 3);
        let b = generic_stabilizer(&g, &[0, 1], &sampling).unwrap();
        assert_eq!(b.dim_star, 1);
        assert!(b.is_abelian);
        let u = generic_stabilizer(&g, &[2], &sampling).unwrap();
        assert_eq!(u.dim_star, 0);
        // Ann(g) = 0, so the whole algebra stabilizes the only point
        let full = generic_stabilizer(&g, &[0, 1, 2], &sampling).unwrap();
        assert_eq!(full.dim_star, 3);
    }

    #[test]
    fn sphericity_examples() {
        let sampling = Sampling::new(4, 5);
        let sl2 = sl(2).unwrap();
        let borel = Splitting::new(&sl2, &[0, 1]).unwrap();
        let r = sphericity(&borel, &sampling).unwrap();
        assert_eq!((r.s0, r.s_inf), (0, 1));
        assert!(r.sum_equals_rank && r.nondegenerate);

        let sl3 = sl(3).unwrap();
        let horo = Splitting::horospherical(&sl3, &[vec![int(1), int(1)]]).unwrap();
        let r = sphericity(&horo, &sampling).unwrap();
        assert_eq!((r.s0, r.s_inf), (1, 1));

        let d = double(&sl2).unwrap();
        let dd = Splitting::horospherical(&d, &[vec![int(1), int(-1)]]).unwrap();
        let r = sphericity(&dd, &sampling).unwrap();
        assert_eq!((r.s0, r.s_inf, r.rank), (1, 1, 2));
        assert!(r.h_star_abelian && r.r_star_abelian);
    }

    fn splittings() -> Vec<Splitting> {
        let sl3 = sl(3).unwrap();
        vec![
            Splitting::new(&sl(2).unwrap(), &[0, 1]).unwrap(),
            Splitting::new(&sl3, &[0, 1, 2, 3, 4]).unwrap(),
            Splitting::horospherical(&sl3, &[vec![int(1), int(1)]]).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn tensors_are_skew_with_even_rank(seed in any::<u64>(), a in -5i64..6, b in -5i64..6) {
            prop_assume!(a != 0 || b != 0);
            let p = BracketParameter::new(int(a), int(b)).unwrap();
            for s in splittings() {
                let n = s.algebra().dim();
                let xi = Sampling::new(1, seed).point(0, n, &(0..n).collect::<Vec<_>>());
                let t = tensor_at(s.algebra(), &xi, Some((&s, &p))).unwrap();
                prop_assert!(t.matrix.is_skew_symmetric());
                prop_assert_eq!(t.rank % 2, 0);
            }
        }

        #[test]
        fn kernel_is_the_stabilizer(seed in any::<u64>()) {
            for s in splittings() {
                let g = s.algebra();
                let n = g.dim();
                let xi = Sampling::new(1, seed).point(0, n, &(0..n).collect::<Vec<_>>());
                let t = tensor_at(g, &xi, None).unwrap();
                for v in t.matrix.nullspace() {
                    for y in 0..n {
                        let mut e = vec![int(0); n];
                        e[y] = int(1);
                        let br = g.bracket(&v, &e);
                        let val = br.iter().zip(&xi).fold(int(0), |acc, (a, b)| acc + a * b);
                        prop_assert_eq!(val, int(0));
                    }
                }
            }
        }

        #[test]
        fn contraction_never_raises_rank_on_ann_h(seed in any::<u64>()) {
            for s in splittings() {
                let n = s.algebra().dim();
                let xi = Sampling::new(1, seed).point(0, n, s.r_indices());
                let full = tensor_at(s.algebra(), &xi, None).unwrap();
                let zero = tensor_at(s.algebra(), &xi, Some((&s, &BracketParameter::zero()))).unwrap();
                prop_assert!(zero.rank <= full.rank);
                prop_assert_eq!(zero.rank, 2 * zero.block_a.unwrap().1);
            }
        }
    }
}
