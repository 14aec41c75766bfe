//! The Poisson-commutative algebra generated by the centres of the bracket
//! family of a splitting: generator sets, transcendence degree and symbolic
//! commutativity checks, plus the case-study drivers behind the CLI.

mod cases;
mod report;

use std::fmt;

use thiserror::Error;

use crate::exact::{MathError, Polynomial};
use crate::invariants::{bidecompose, jacobian_rank, HilbertBasis, InvariantError};
use crate::lie::{BracketParameter, LieAlgebra, LieError, Side, Splitting};
use crate::poisson::{bracket_at, poisson_bracket, PoissonError, Sampling};
use crate::weyl::WeylError;

pub use cases::{
    algebra_for, borel_splitting, run_case, satake_t1, CaseParams, ConsistencyRow, CASE_NAMES,
};
pub use report::CaseReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZError {
    #[error("empty Hilbert basis")]
    EmptyBasis,
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("malformed report: {0}")]
    Report(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Math(#[from] MathError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZMode {
    /// Every nonzero bi-component plus the supplied centre generators.
    Full,
    /// Bi-components between `F^•` and `F_•` (a common g.g.s. is assumed).
    CommonGgs,
    /// Components `(F_j)_{i,d_j−i}` with `0 < i < d_j` plus the centre generators.
    SumCondition,
}

impl fmt::Display for ZMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZMode::Full => "full",
            ZMode::CommonGgs => "M",
            ZMode::SumCondition => "M~",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Component { generator: String, bidegree: (u32, u32) },
    Z0,
    ZInf,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Component { generator, bidegree } => {
                write!(f, "({generator})_{{{},{}}}", bidegree.0, bidegree.1)
            }
            Provenance::Z0 => f.write_str("Z_0"),
            Provenance::ZInf => f.write_str("Z_inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZGenerator {
    pub poly: Polynomial,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZGeneratorSet {
    pub splitting: Splitting,
    pub mode: ZMode,
    pub generators: Vec<ZGenerator>,
}

impl ZGeneratorSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }

    /// Generators rendered in the splitting's basis names.
    pub fn display(&self) -> Vec<String> {
        let names = self.splitting.algebra().basis_names();
        self.generators
            .iter()
            .map(|g| format!("{}: {}", g.provenance, g.poly.display_with(names)))
            .collect()
    }

    fn push(&mut self, poly: Polynomial, provenance: Provenance) {
        if poly.is_zero() || poly.is_constant() {
            return;
        }
        let key = poly.primitive();
        if self.generators.iter().any(|g| g.poly.primitive() == key) {
            return;
        }
        self.generators.push(ZGenerator { poly, provenance });
    }
}

/// Generator set of `Z_{⟨h,r⟩}` in the given mode. `b`, `z0` and `zinf` are
/// written in the splitting's basis. Duplicates up to a scalar are merged,
/// keeping the first occurrence.
pub fn z_generators(
    s: &Splitting,
    b: &HilbertBasis,
    z0: &[Polynomial],
    zinf: &[Polynomial],
    mode: ZMode,
) -> Result<ZGeneratorSet, ZError> {
    if b.is_empty() {
        return Err(ZError::EmptyBasis);
    }
    let mut set = ZGeneratorSet {
        splitting: s.clone(),
        mode,
        generators: Vec::new(),
    };
    for g in &b.generators {
        let parts = bidecompose(s, &g.poly)?;
        for c in &parts.components {
            let i = c.bidegree.0;
            let keep = match mode {
                ZMode::Full | ZMode::CommonGgs => true,
                ZMode::SumCondition => 0 < i && i < g.degree,
            };
            if keep {
                set.push(
                    c.poly.clone(),
                    Provenance::Component {
                        generator: g.name.clone(),
                        bidegree: c.bidegree,
                    },
                );
            }
        }
    }
    if mode != ZMode::CommonGgs {
        for p in z0 {
            set.push(p.clone(), Provenance::Z0);
        }
        for p in zinf {
            set.push(p.clone(), Provenance::ZInf);
        }
    }
    Ok(set)
}

/// Number of slots `0 < i < d_j` and how many of them hold a nonzero component.
pub fn middle_components(s: &Splitting, b: &HilbertBasis) -> Result<(usize, usize), ZError> {
    let mut slots = 0;
    let mut nonzero = 0;
    for g in &b.generators {
        let parts = bidecompose(s, &g.poly)?;
        for i in 1..g.degree {
            slots += 1;
            if parts.get(i).is_some() {
                nonzero += 1;
            }
        }
    }
    Ok((slots, nonzero))
}

/// Jacobian rank of `polys` at seeded integer points; a lower bound for the
/// transcendence degree that is exact with high probability.
pub fn trdeg_jacobian(polys: &[Polynomial], trials: usize, seed: u64) -> Result<usize, ZError> {
    Ok(jacobian_rank(polys, &Sampling::new(trials, seed))?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketFailure {
    pub pair: (usize, usize),
    pub parameter: String,
    /// Symbolic bracket, or its value at a sample point in pointwise mode.
    pub bracket: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativityReport {
    pub parameters: Vec<String>,
    /// Parameters that need `r` to be a subalgebra when it is not.
    pub skipped: Vec<String>,
    pub pairs_checked: usize,
    pub symbolic: bool,
    pub first_failure: Option<BracketFailure>,
}

impl CommutativityReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// `(1,1)` first, then the two contractions, then the extras.
fn parameter_algebras(
    s: &Splitting,
    extra: &[BracketParameter],
) -> Result<(Vec<(String, LieAlgebra)>, Vec<String>), ZError> {
    let mut params = vec![
        BracketParameter::one(),
        BracketParameter::zero(),
        BracketParameter::infinity(),
    ];
    params.extend(extra.iter().cloned());
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for p in params {
        if s.r_closed() {
            out.push((p.to_string(), s.family_bracket(&p)?));
        } else if p == BracketParameter::one() {
            out.push((p.to_string(), s.algebra().clone()));
        } else if p == BracketParameter::zero() {
            out.push((p.to_string(), s.contract(Side::KeepH)?));
        } else {
            skipped.push(p.to_string());
        }
    }
    Ok((out, skipped))
}

/// Every pairwise bracket under `{,}_(1,1)`, `{,}_0`, `{,}_∞` and `extra`
/// must vanish identically.
pub fn commutativity_suite(
    z: &ZGeneratorSet,
    extra: &[BracketParameter],
) -> Result<CommutativityReport, ZError> {
    let (algebras, skipped) = parameter_algebras(&z.splitting, extra)?;
    let names = z.splitting.algebra().basis_names();
    let polys = z.polys();
    let mut pairs_checked = 0;
    for (label, alg) in &algebras {
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                pairs_checked += 1;
                let br = poisson_bracket(alg, &polys[i], &polys[j])?;
                if !br.is_zero() {
                    return Ok(CommutativityReport {
                        parameters: algebras.iter().map(|a| a.0.clone()).collect(),
                        skipped,
                        pairs_checked,
                        symbolic: true,
                        first_failure: Some(BracketFailure {
                            pair: (i, j),
                            parameter: label.clone(),
                            bracket: br.display_with(names),
                        }),
                    });
                }
            }
        }
    }
    Ok(CommutativityReport {
        parameters: algebras.into_iter().map(|a| a.0).collect(),
        skipped,
        pairs_checked,
        symbolic: true,
        first_failure: None,
    })
}

/// Pointwise variant of [`commutativity_suite`] for generator sets too large
/// for symbolic brackets: `{F, G}(ξ)` at `sampling.trials` integer points.
pub fn commutativity_at_points(
    z: &ZGeneratorSet,
    extra: &[BracketParameter],
    sampling: &Sampling,
) -> Result<CommutativityReport, ZError> {
    let (algebras, skipped) = parameter_algebras(&z.splitting, extra)?;
    let n = z.splitting.algebra().dim();
    let all: Vec<usize> = (0..n).collect();
    let polys = z.polys();
    let points: Vec<_> = (0..sampling.trials).map(|t| sampling.point(t, n, &all)).collect();
    let mut pairs_checked = 0;
    let mut first_failure = None;
    'outer: for (label, alg) in &algebras {
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                pairs_checked += 1;
                for xi in &points {
                    let v = bracket_at(alg, &polys[i], &polys[j], xi)?;
                    if v != num_traits::Zero::zero() {
                        first_failure = Some(BracketFailure {
                            pair: (i, j),
                            parameter: label.clone(),
                            bracket: crate::exact::fmt_rational(&v),
                        });
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(CommutativityReport {
        parameters: algebras.into_iter().map(|a| a.0).collect(),
        skipped,
        pairs_checked,
        symbolic: false,
        first_failure,
    })
}

/// `b(q) = (dim q + rk q)/2` for a reductive `q`.
pub fn b_value(alg: &LieAlgebra) -> Result<usize, ZError> {
    let l = alg.rank().ok_or(LieError::NotReductive)?;
    Ok((alg.dim() + l) / 2)
}
