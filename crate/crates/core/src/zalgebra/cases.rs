use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::report::CaseReport;
use super::{
    b_value, commutativity_at_points, commutativity_suite, middle_components, trdeg_jacobian,
    z_generators, CommutativityReport, ZError, ZGeneratorSet, ZMode,
};
use crate::exact::{int, Matrix, Polynomial, Rational};
use crate::invariants::{
    aks_restrict, bidecompose, double_modified_bases, eliminate_on_subspace, ggs_check,
    hilbert_basis, restrict_to_t0, transport, verify_invariance, BasisKind, GgsReport, HilbertBasis,
    InvariantError,
};
use crate::lie::{double, sl, so_even, BracketParameter, LieAlgebra, LieError, Side, Splitting};
use crate::poisson::{sphericity, Sampling, SphericityReport};
use crate::weyl::{
    build_root_system, enumerate_weyl, restriction_check, satake_subspaces,
    w0_compute, RestrictionReport, RootSystem, RootType, SatakeDiagram, W0Report,
};

pub const CASE_NAMES: &[&str] = &[
    "borel",
    "horo",
    "double",
    "sl2n",
    "sl2n1",
    "so2n",
    "e6_weyl",
    "aks",
    "consistency",
];

/// Inputs of [`run_case`]. `kind` is the root system letter (`A` or `D`),
/// `n` its rank or the case's own size parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseParams {
    pub kind: char,
    pub n: Option<usize>,
    /// `t_1` in Cartan coordinates, for the `horo` case.
    pub t1: Option<Vec<Vec<Rational>>>,
    pub seed: u64,
    pub trials: usize,
    pub dmax: Option<u32>,
    /// Number of random points `(1 : t)` added to the commutativity suite.
    pub random_params: usize,
}

impl Default for CaseParams {
    fn default() -> Self {
        CaseParams {
            kind: 'A',
            n: None,
            t1: None,
            seed: 1,
            trials: 5,
            dmax: None,
            random_params: 5,
        }
    }
}

impl CaseParams {
    fn sampling(&self) -> Sampling {
        Sampling::new(self.trials.max(1), self.seed)
    }

    fn record(&self, rep: &mut CaseReport, kind: char, n: usize) {
        rep.param("type", kind.to_ascii_uppercase());
        rep.param("n", n);
        rep.param("trials", self.trials);
    }
}

/// `A_n ↦ sl(n+1)`, `D_n ↦ so(2n)`.
pub fn algebra_for(kind: char, n: usize) -> Result<LieAlgebra, ZError> {
    match kind.to_ascii_uppercase() {
        'A' if n >= 1 => Ok(sl(n + 1)?),
        'D' if n >= 2 => Ok(so_even(n)?),
        _ => Err(ZError::Unsupported(format!("type {kind}{n}"))),
    }
}

fn base_kind(kind: char) -> BasisKind {
    if kind.eq_ignore_ascii_case(&'D') {
        BasisKind::SoMinorsPfaffian
    } else {
        BasisKind::Charpoly
    }
}

/// `b ⊕ u_−` as the horospherical splitting with `t_1 = t`.
pub fn borel_splitting(g: &LieAlgebra) -> Result<Splitting, ZError> {
    let l = g.rank().ok_or(LieError::NotReductive)?;
    let t1: Vec<Vec<Rational>> = (0..l)
        .map(|i| (0..l).map(|j| int(i64::from(i == j))).collect())
        .collect();
    Ok(Splitting::horospherical(g, &t1)?)
}

/// Root coordinates to Cartan coordinates of the matching matrix algebra:
/// the identity for `A_n`, `ε`-coordinates for `D_n`.
fn cartan_coords(t: RootType, v: &[i64]) -> Vec<Rational> {
    match t {
        RootType::D(n) => {
            let mut e = vec![0i64; n];
            for (i, &c) in v.iter().enumerate() {
                if i + 1 < n {
                    e[i] += c;
                    e[i + 1] -= c;
                } else {
                    e[n - 2] += c;
                    e[n - 1] += c;
                }
            }
            e.into_iter().map(int).collect()
        }
        _ => v.iter().map(|&c| int(c)).collect(),
    }
}

/// `(t_0, t_1)` of a Satake diagram in Cartan coordinates of `g`, with `t_1`
/// the orthogonal complement of `t_0` under the invariant form.
pub fn satake_t1(
    g: &LieAlgebra,
    rs: &RootSystem,
    d: &SatakeDiagram,
) -> Result<(Vec<Vec<Rational>>, Vec<Vec<Rational>>), ZError> {
    let red = g.reductive_data().ok_or(LieError::NotReductive)?;
    let (t0, _) = satake_subspaces(rs, d)?;
    let t0c: Vec<Vec<Rational>> = t0.iter().map(|v| cartan_coords(rs.root_type, v)).collect();
    let t1 = if t0c.is_empty() {
        Matrix::identity(red.rank).to_rows()
    } else {
        Matrix::from_rows(t0c.clone())?
            .mul(&red.triangular.cartan_form)?
            .nullspace()
    };
    Ok((t0c, t1))
}

fn random_params(seed: u64, k: usize) -> Vec<BracketParameter> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_b7ac);
    let mut out: Vec<i64> = Vec::with_capacity(k);
    while out.len() < k {
        let t: i64 = rng.random_range(-50..=50);
        if t != 0 && t != 1 && !out.contains(&t) {
            out.push(t);
        }
    }
    out.into_iter().map(|t| BracketParameter::at(int(t))).collect()
}

fn poly_str(p: &Polynomial, names: &[String]) -> String {
    if p.num_terms() > 40 {
        format!("<{} terms>", p.num_terms())
    } else {
        p.display_with(names)
    }
}

fn c_names(k: usize) -> Vec<String> {
    if k == 1 {
        vec!["c".into()]
    } else {
        (1..=k).map(|i| format!("c{i}")).collect()
    }
}

fn timed<T>(rep: &mut CaseReport, name: &str, f: impl FnOnce() -> Result<T, ZError>) -> Result<T, ZError> {
    let start = Instant::now();
    let out = f();
    rep.timings_ms.insert(name.to_string(), start.elapsed().as_millis() as u64);
    out
}

fn ggs_table(g: &GgsReport, names: &[String]) -> Value {
    let rows: Vec<Value> = g
        .rows
        .iter()
        .map(|r| {
            json!({
                "generator": r.name,
                "degree": r.degree,
                "top_bidegree": format!("({},{})", r.top_bidegree.0, r.top_bidegree.1),
                "bottom_bidegree": format!("({},{})", r.bottom_bidegree.0, r.bottom_bidegree.1),
                "top_in_t0": r.top_in_t0,
                "top": poly_str(&r.top, names),
            })
        })
        .collect();
    let side = |s: &crate::invariants::GgsSide| {
        json!({
            "degree_sum": s.degree_sum,
            "dim": s.dim,
            "jacobian_rank": s.jacobian_rank,
            "verdict": s.verdict,
            "consistent": s.consistent,
        })
    };
    json!({
        "rows": rows,
        "h_side": side(&g.h_side),
        "r_side": g.r_side.as_ref().map(side),
        "horospherical": g.horospherical.as_ref().map(|h| json!({
            "a_count": h.a_count,
            "dim_t0": h.dim_t0,
            "bidegree_claim": h.bidegree_claim,
        })),
    })
}

fn restriction_table(r: &RestrictionReport) -> Value {
    json!({
        "dmax": r.dmax,
        "group_orders": {
            "W": r.group_orders.0,
            "N": r.group_orders.1,
            "Z": r.group_orders.2,
            "W0": r.group_orders.3,
        },
        "first_failure_degree": r.first_failure_degree,
        "rows": r.table.iter().map(|row| json!({
            "degree": row.degree,
            "ambient_dim": row.ambient_dim,
            "image_dim": row.image_dim,
            "invariant_dim": row.invariant_dim,
        })).collect::<Vec<_>>(),
    })
}

fn sphericity_section(
    rep: &mut CaseReport,
    s: &Splitting,
    sampling: &Sampling,
) -> Result<SphericityReport, ZError> {
    let sph = timed(rep, "sphericity", || Ok(sphericity(s, sampling)?))?;
    let dim_t1 = s.t1_indices().map_or(0, <[usize]>::len) as i64;
    rep.verdict("sphericity_sum_is_rank", sph.sum_equals_rank);
    rep.verdict("s0_is_rank_minus_dim_t1", sph.s0 == sph.rank as i64 - dim_t1);
    rep.verdict("index_of_contractions_is_rank", sph.nondegenerate);
    rep.table(
        "sphericity",
        json!({
            "rank": sph.rank,
            "s0": sph.s0,
            "s_inf": sph.s_inf,
            "dim_h_star": sph.dim_h_star,
            "dim_r_star": sph.dim_r_star,
            "index_q0": sph.index_q0,
            "index_qinf": sph.index_qinf,
            "c_gh": crate::exact::fmt_rational(&sph.c_gh),
            "c_gr": crate::exact::fmt_rational(&sph.c_gr),
        }),
    );
    Ok(sph)
}

fn vars(n: usize, idx: &[usize]) -> Vec<Polynomial> {
    idx.iter().map(|&i| Polynomial::var(n, i)).collect()
}

/// Centre candidates of a horospherical splitting: a basis of `t_0` with the
/// `F^• ∉ S(t_0)` for `q_(0)`, and, when `b` is also a g.g.s. for `r`, a basis
/// of `t_1` with the `F_• ∉ S(t_1)` for `q_(∞)`.
fn centre_candidates(s: &Splitting, ggs: &GgsReport) -> (Vec<Polynomial>, Option<Vec<Polynomial>>) {
    let n = s.algebra().dim();
    let t0 = s.t0_indices().unwrap_or(&[]);
    let t1 = s.t1_indices().unwrap_or(&[]);
    let inside = |p: &Polynomial, idx: &[usize]| p.support_vars().iter().all(|v| idx.contains(v));
    let mut z0 = vars(n, t0);
    z0.extend(ggs.rows.iter().filter(|r| !inside(&r.top, t0)).map(|r| r.top.clone()));
    let zinf = ggs.r_side.as_ref().filter(|r| r.verdict).map(|_| {
        let mut z = vars(n, t1);
        z.extend(
            ggs.rows
                .iter()
                .filter(|r| !inside(&r.bottom, t1))
                .map(|r| r.bottom.clone()),
        );
        z
    });
    (z0, zinf)
}

/// Count, centrality and independence of a centre candidate set.
fn centre_section(
    rep: &mut CaseReport,
    label: &str,
    s: &Splitting,
    side: Side,
    gens: &[Polynomial],
    p: &CaseParams,
) -> Result<(), ZError> {
    let l = s.algebra().rank().ok_or(LieError::NotReductive)?;
    let q = s.contract(side)?;
    let central = gens.iter().all(|f| verify_invariance(&q, f));
    let rank = trdeg_jacobian(gens, p.trials, p.seed)?;
    rep.verdict(&format!("{label}_candidates_central"), central);
    rep.verdict(&format!("{label}_count_is_rank"), gens.len() == l);
    rep.verdict(&format!("{label}_independent"), rank == gens.len());
    let names = s.algebra().basis_names();
    rep.table(
        &format!("{label}_generators"),
        Value::from(gens.iter().map(|g| poly_str(g, names)).collect::<Vec<_>>()),
    );
    Ok(())
}

fn suite(z: &ZGeneratorSet, p: &CaseParams) -> Result<CommutativityReport, ZError> {
    let extra = random_params(p.seed, p.random_params);
    if z.splitting.algebra().dim() <= 15 {
        commutativity_suite(z, &extra)
    } else {
        commutativity_at_points(z, &extra, &p.sampling())
    }
}

fn suite_table(c: &CommutativityReport) -> Value {
    json!({
        "parameters": c.parameters,
        "skipped": c.skipped,
        "pairs_checked": c.pairs_checked,
        "symbolic": c.symbolic,
        "first_failure": c.first_failure.as_ref().map(|f| json!({
            "pair": [f.pair.0, f.pair.1],
            "parameter": f.parameter,
            "bracket": f.bracket,
        })),
    })
}

/// Generator counts, transcendence degree and commutativity of one set.
fn z_section(
    rep: &mut CaseReport,
    label: &str,
    z: &ZGeneratorSet,
    expected: usize,
    p: &CaseParams,
) -> Result<(), ZError> {
    let trdeg = trdeg_jacobian(&z.polys(), p.trials, p.seed)?;
    let comm = timed(rep, &format!("commutativity_{label}"), || suite(z, p))?;
    rep.verdict(&format!("{label}_count_is_b"), z.len() == expected);
    rep.verdict(&format!("{label}_trdeg_is_b"), trdeg == expected);
    rep.verdict(&format!("{label}_commutative"), comm.passed());
    rep.table(
        &format!("z_{label}"),
        json!({
            "mode": z.mode.to_string(),
            "count": z.len(),
            "b": expected,
            "trdeg": trdeg,
            "generators": z.display(),
            "commutativity": suite_table(&comm),
        }),
    );
    Ok(())
}

/// Z-algebra assembly once centre candidates for both sides are known.
#[allow(clippy::too_many_arguments)]
fn z_sets(
    rep: &mut CaseReport,
    s: &Splitting,
    b: &HilbertBasis,
    common: Option<&HilbertBasis>,
    z0: &[Polynomial],
    zinf: &[Polynomial],
    expected: usize,
    p: &CaseParams,
) -> Result<(), ZError> {
    let mt = z_generators(s, b, z0, zinf, ZMode::SumCondition)?;
    z_section(rep, "m_tilde", &mt, expected, p)?;
    if let Some(cb) = common {
        let m = z_generators(s, cb, &[], &[], ZMode::CommonGgs)?;
        z_section(rep, "m", &m, expected, p)?;
    }
    let full = z_generators(s, b, z0, zinf, ZMode::Full)?;
    let trdeg = trdeg_jacobian(&full.polys(), p.trials, p.seed)?;
    rep.verdict("full_trdeg_is_b", trdeg == expected);
    rep.table(
        "z_full",
        json!({"count": full.len(), "trdeg": trdeg, "generators": full.display()}),
    );
    Ok(())
}

fn middle_section(rep: &mut CaseReport, s: &Splitting, b: &HilbertBasis, sph: &SphericityReport) -> Result<(), ZError> {
    let (slots, nonzero) = middle_components(s, b)?;
    if sph.sum_equals_rank {
        rep.verdict("middle_components_nonzero", slots == nonzero);
    }
    rep.table("middle_components", json!({"slots": slots, "nonzero": nonzero}));
    Ok(())
}

fn restrictions_section(rep: &mut CaseReport, s: &Splitting, b: &HilbertBasis) -> Result<Vec<Polynomial>, ZError> {
    let mut out = Vec::new();
    let mut rows = Vec::new();
    for g in &b.generators {
        let r = restrict_to_t0(s, &g.poly)?;
        rows.push(json!({
            "generator": g.name,
            "restriction": r.display_with(&c_names(r.nvars())),
        }));
        out.push(r);
    }
    rep.table("restrictions_to_t0", Value::from(rows));
    Ok(out)
}

fn weyl_section(
    rep: &mut CaseReport,
    t: RootType,
    arrows: &[(usize, usize)],
    dmax: u32,
    seed: u64,
) -> Result<(W0Report, RestrictionReport), ZError> {
    let rs = build_root_system(t)?;
    let w = timed(rep, "weyl_enumeration", || Ok(enumerate_weyl(&rs, 100_000)?))?;
    let d = SatakeDiagram::new(rs.rank, arrows)?;
    let (t0, _) = satake_subspaces(&rs, &d)?;
    let w0 = timed(rep, "w0", || Ok(w0_compute(&w, &t0)?))?;
    let r = timed(rep, "restriction_check", || {
        Ok(restriction_check(&w, &t0, &w0, dmax, seed)?)
    })?;
    rep.table("weyl_restriction", restriction_table(&r));
    Ok((w0, r))
}

fn need_n(p: &CaseParams, default: usize) -> usize {
    p.n.unwrap_or(default)
}

fn case_borel(p: &CaseParams) -> Result<CaseReport, ZError> {
    let mut rep = CaseReport::new("borel", p.seed);
    let n = need_n(p, 1);
    p.record(&mut rep, p.kind, n);
    let g = algebra_for(p.kind, n)?;
    let b = timed(&mut rep, "hilbert_basis", || Ok(hilbert_basis(&g, &base_kind(p.kind))?))?;
    let s = borel_splitting(&g)?;
    let tb = transport(&s, &b)?;
    let sampling = p.sampling();
    let ggs = timed(&mut rep, "ggs", || Ok(ggs_check(&s, &tb, &sampling)?))?;
    let names = s.algebra().basis_names();
    rep.table("ggs", ggs_table(&ggs, names));
    rep.verdict("ggs_for_h", ggs.h_side.verdict);
    rep.verdict("ggs_for_r", ggs.r_side.as_ref().is_some_and(|r| r.verdict));
    rep.verdict("ggs_criteria_consistent", ggs.h_side.consistent);
    let sph = sphericity_section(&mut rep, &s, &sampling)?;
    middle_section(&mut rep, &s, &tb, &sph)?;
    let (z0, zinf) = centre_candidates(&s, &ggs);
    centre_section(&mut rep, "z0", &s, Side::KeepH, &z0, p)?;
    if let Some(zinf) = zinf {
        centre_section(&mut rep, "zinf", &s, Side::KeepR, &zinf, p)?;
        let common = ggs.common().then_some(&tb);
        z_sets(&mut rep, &s, &tb, common, &z0, &zinf, b_value(&g)?, p)?;
    }
    Ok(rep)
}

fn case_horo(p: &CaseParams) -> Result<CaseReport, ZError> {
    let mut rep = CaseReport::new("horo", p.seed);
    let n = need_n(p, 2);
    p.record(&mut rep, p.kind, n);
    let t1 = p
        .t1
        .clone()
        .ok_or_else(|| ZError::Unsupported("horo needs t1 vectors".into()))?;
    rep.param(
        "t1",
        t1.iter()
            .map(|v| v.iter().map(crate::exact::fmt_rational).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";"),
    );
    let g = algebra_for(p.kind, n)?;
    let kind = if p.kind.eq_ignore_ascii_case(&'D') {
        BasisKind::SoMinorsPfaffian
    } else {
        BasisKind::TracePowers
    };
    let b = timed(&mut rep, "hilbert_basis", || Ok(hilbert_basis(&g, &kind)?))?;
    let s = Splitting::horospherical(&g, &t1)?;
    let tb = transport(&s, &b)?;
    restrictions_section(&mut rep, &s, &tb)?;
    let sampling = p.sampling();
    let ggs = timed(&mut rep, "ggs", || Ok(ggs_check(&s, &tb, &sampling)?))?;
    rep.table("ggs", ggs_table(&ggs, s.algebra().basis_names()));
    rep.verdict("ggs_criteria_consistent", ggs.h_side.consistent);
    rep.param("ggs_for_h", ggs.h_side.verdict);
    let sph = sphericity_section(&mut rep, &s, &sampling)?;
    middle_section(&mut rep, &s, &tb, &sph)?;
    if ggs.h_side.verdict {
        let (z0, zinf) = centre_candidates(&s, &ggs);
        centre_section(&mut rep, "z0", &s, Side::KeepH, &z0, p)?;
        if let Some(zinf) = zinf {
            centre_section(&mut rep, "zinf", &s, Side::KeepR, &zinf, p)?;
            z_sets(&mut rep, &s, &tb, Some(&tb), &z0, &zinf, b_value(&g)?, p)?;
        }
    }
    Ok(rep)
}

fn odd_degree_count(b: &HilbertBasis) -> usize {
    b.degrees().iter().filter(|d| *d % 2 == 1).count()
}

fn case_sl2n(p: &CaseParams) -> Result<CaseReport, ZError> {
    let mut rep = CaseReport::new("sl2n", p.seed);
    let n = need_n(p, 2);
    if n < 1 {
        return Err(ZError::Unsupported("sl2n needs n >= 1".into()));
    }
    p.record(&mut rep, 'A', n);
    let g = sl(2 * n)?;
    let rs = build_root_system(RootType::A(2 * n - 1))?;
    let arrows: Vec<(usize, usize)> = (1..n).map(|i| (i, 2 * n - i)).collect();
    let (_, t1) = satake_t1(&g, &rs, &SatakeDiagram::new(rs.rank, &arrows)?)?;
    let s = Splitting::horospherical(&g, &t1)?;
    let b = timed(&mut rep, "hilbert_basis", || Ok(hilbert_basis(&g, &BasisKind::TracePowers)?))?;
    let tb = transport(&s, &b)?;
    restrictions_section(&mut rep, &s, &tb)?;
    let sampling = p.sampling();
    let plain = ggs_check(&s, &tb, &sampling)?;
    rep.table("ggs_plain", ggs_table(&plain, s.algebra().basis_names()));
    let keep: Vec<usize> = (0..tb.len()).filter(|&j| tb.generators[j].degree as usize <= n).collect();
    let m = timed(&mut rep, "elimination", || Ok(eliminate_on_subspace(&s, &tb, &keep)?))?;
    let ggs = timed(&mut rep, "ggs", || Ok(ggs_check(&s, &m, &sampling)?))?;
    rep.table("ggs_modified", ggs_table(&ggs, s.algebra().basis_names()));
    rep.verdict("ggs_modified_basis", ggs.h_side.verdict);
    rep.verdict("ggs_criteria_consistent", ggs.h_side.consistent);
    let dim_t0 = s.t0_indices().map_or(0, <[usize]>::len);
    if let Some(h) = &ggs.horospherical {
        rep.verdict("tops_in_t0_match_dim_t0", h.a_count == h.dim_t0);
        rep.verdict("other_tops_have_bidegree_1_d-1", h.bidegree_claim);
    }
    rep.verdict("odd_degree_law", odd_degree_count(&b) == dim_t0);
    let sph = sphericity_section(&mut rep, &s, &sampling)?;
    middle_section(&mut rep, &s, &m, &sph)?;
    let (z0, _) = centre_candidates(&s, &ggs);
    centre_section(&mut rep, "z0", &s, Side::KeepH, &z0, p)?;
    let dmax = p.dmax.unwrap_or(2 * n as u32);
    let (_, r) = weyl_section(&mut rep, RootType::A(2 * n - 1), &arrows, dmax, p.seed)?;
    rep.verdict("restriction_onto_up_to_dmax", r.verdict_up_to_dmax);
    rep.verdict("routes_agree", r.verdict_up_to_dmax == ggs.h_side.verdict);
    Ok(rep)
}

fn case_sl2n1(p: &CaseParams) -> Result<CaseReport, ZError> {
    let mut rep = CaseReport::new("sl2n1", p.seed);
    let n = need_n(p, 1);
    if n < 1 {
        return Err(ZError::Unsupported("sl2n1 needs n >= 1".into()));
    }
    p.record(&mut rep, 'A', n);
    let g = sl(2 * n + 1)?;
    let rs = build_root_system(RootType::A(2 * n))?;
    let arrows: Vec<(usize, usize)> = (1..=n).map(|i| (i, 2 * n + 1 - i)).collect();
    let (_, t1) = satake_t1(&g, &rs, &SatakeDiagram::new(rs.rank, &arrows)?)?;
    let s = Splitting::horospherical(&g, &t1)?;
    let b = timed(&mut rep, "hilbert_basis", || Ok(hilbert_basis(&g, &BasisKind::TracePowers)?))?;
    let tb = transport(&s, &b)?;
    let res = restrictions_section(&mut rep, &s, &tb)?;
    if n == 1 {
        let c = Polynomial::var(1, 0);
        rep.verdict("p2_restriction_is_6c2", res[0] == c.pow(2).scale(&int(6)));
        rep.verdict("p3_restriction_is_-6c3", res[1] == c.pow(3).scale(&int(-6)));
    }
    let sampling = p.sampling();
    let ggs = timed(&mut rep, "ggs", || Ok(ggs_check(&s, &tb, &sampling)?))?;
    rep.table("ggs", ggs_table(&ggs, s.algebra().basis_names()));
    rep.verdict("plain_basis_not_ggs", !ggs.h_side.verdict);
    rep.verdict("ggs_criteria_consistent", ggs.h_side.consistent);
    let keep: Vec<usize> = (0..n.min(tb.len())).collect();
    let outcome = timed(&mut rep, "elimination", || {
        match eliminate_on_subspace(&s, &tb, &keep) {
            Ok(m) => Ok(if ggs_check(&s, &m, &sampling)?.h_side.verdict {
                "modified basis is a g.g.s.".to_string()
            } else {
                "modified basis is not a g.g.s.".to_string()
            }),
            Err(InvariantError::Infeasible { generator, degree }) => {
                Ok(format!("infeasible for {generator} in degree {degree}"))
            }
            Err(e) => Err(e.into()),
        }
    })?;
    let elimination_found_ggs = outcome == "modified basis is a g.g.s.";
    rep.table("elimination", json!({"kept": keep, "outcome": outcome}));
    rep.verdict("elimination_gives_no_ggs", !elimination_found_ggs);
    rep.table(
        "odd_degree_count",
        json!({"odd_degrees": odd_degree_count(&b), "dim_t0": s.t0_indices().map_or(0, <[usize]>::len)}),
    );
    sphericity_section(&mut rep, &s, &sampling)?;
    let dmax = p.dmax.unwrap_or(2 * n as u32 + 1);
    let (_, r) = weyl_section(&mut rep, RootType::A(2 * n), &arrows, dmax, p.seed)?;
    rep.verdict("restriction_fails_at_degree_1", r.first_failure_degree == Some(1));
    let no_ggs = r.first_failure_degree.is_some();
    rep.verdict("no_ggs", no_ggs && !ggs.h_side.verdict);
    rep.table("verdict", json!("no g.g.s."));
    Ok(rep)
}

fn case_so2n(p: &CaseParams) -> Result<CaseReport, ZError> {
    let mut rep = CaseReport::new("so2n", p.seed);
    let n = need_n(p, 4);
    if n < 4 {
        return Err(ZError::Unsupported(format!(
            "so2n needs n >= 4; so({}) is covered by the sl cases",
            2 * n
        )));
    }
    p.record(&mut rep, 'D', n);
    let g = so_even(n)?;
    let rs = build_root_system(RootType::D(n))?;
    let arrows = [(n - 1, n)];
    let (_, t1) = satake_t1(&g, &rs, &SatakeDiagram::new(n, &arrows)?)?;
    let s = Splitting::horospherical(&g, &t1)?;
    let b = timed(&mut rep, "hilbert_basis", || Ok(hilbert_basis(&g, &BasisKind::SoMinorsPfaffian)?))?;
    let tb = timed(&mut rep, "transport", || Ok(transport(&s, &b)?))?;
    let res = restrictions_section(&mut rep, &s, &tb)?;
    rep.verdict("d2_restriction_nonzero", !res[0].is_zero());
    rep.verdict("other_restrictions_zero", res[1..].iter().all(Polynomial::is_zero));
    if n == 4 {
        let c = Polynomial::var(1, 0);
        rep.verdict("d2_restriction_is_-c2", res[0] == c.pow(2).scale(&int(-1)));
    }
    let sampling = p.sampling();
    let ggs = timed(&mut rep, "ggs", || Ok(ggs_check(&s, &tb, &sampling)?))?;
    rep.table("ggs", ggs_table(&ggs, s.algebra().basis_names()));
    rep.verdict("ggs", ggs.h_side.verdict);
    rep.verdict("ggs_criteria_consistent", ggs.h_side.consistent);
    if let Some(h) = &ggs.horospherical {
        rep.verdict("tops_in_t0_match_dim_t0", h.a_count == h.dim_t0);
        rep.verdict("other_tops_have_bidegree_1_d-1", h.bidegree_claim);
    }
    let sph = sphericity_section(&mut rep, &s, &sampling)?;
    middle_section(&mut rep, &s, &tb, &sph)?;
    let (z0, _) = centre_candidates(&s, &ggs);
    centre_section(&mut rep, "z0", &s, Side::KeepH, &z0, p)?;
    let dmax = p.dmax.unwrap_or(2 * n as u32 - 2);
    let (w0, r) = weyl_section(&mut rep, RootType::D(n), &arrows, dmax, p.seed)?;
    rep.verdict("w0_is_sign_group", w0.w0_order == 2);
    rep.verdict("restriction_onto_up_to_dmax", r.verdict_up_to_dmax);
    rep.verdict("routes_agree", r.verdict_up_to_dmax == ggs.h_side.verdict);
    Ok(rep)
}

fn case_e6(p: &CaseParams) -> Result<CaseReport, ZError> {
    let mut rep = CaseReport::new("e6_weyl", p.seed);
    let dmax = p.dmax.unwrap_or(12);
    rep.param("dmax", dmax);
    let arrows = [(1, 5), (2, 4)];
    let (w0, r) = weyl_section(&mut rep, RootType::E6, &arrows, dmax, p.seed)?;
    rep.verdict("weyl_order_51840", w0.w_order == 51840);
    rep.verdict("normalizer_order_1152", w0.n_order == 1152);
    rep.verdict("centralizer_order_192", w0.z_order == 192);
    rep.verdict("w0_order_6", w0.w0_order == 6);
    rep.verdict("w0_has_s3_order_statistics", w0.looks_like_s3());
    let inv = crate::weyl::invariant_dims(&w0.w0_matrices, 2, 3)?;
    rep.verdict("w0_invariant_degrees_2_3", inv == vec![1, 0, 1, 1]);
    rep.verdict("restriction_fails_first_at_degree_3", r.first_failure_degree == Some(3));
    rep.table(
        "w0_order_statistics",
        Value::from(
            w0.order_statistics
                .iter()
                .map(|(o, c)| json!({"order": o, "count": c}))
                .collect::<Vec<_>>(),
        ),
    );
    rep.table("verdict", json!("no g.g.s."));
    Ok(rep)
}

fn case_double(p: &CaseParams) -> Result<CaseReport, ZError> {
    let mut rep = CaseReport::new("double", p.seed);
    let n = need_n(p, 1);
    p.record(&mut rep, p.kind, n);
    let g = algebra_for(p.kind, n)?;
    let l = g.rank().ok_or(LieError::NotReductive)?;
    let d = double(&g)?;
    let base = base_kind(p.kind);
    let b = timed(&mut rep, "hilbert_basis", || {
        Ok(hilbert_basis(&d, &BasisKind::DoubleExtended(Box::new(base.clone())))?)
    })?;
    let t1: Vec<Vec<Rational>> = (0..l)
        .map(|i| {
            (0..2 * l)
                .map(|j| {
                    if j == i {
                        int(1)
                    } else if j == l + i {
                        int(-1)
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let s = Splitting::horospherical(&d, &t1)?;
    let tb = transport(&s, &b)?;
    let (bh, br) = double_modified_bases(&d, &b)?;
    let (tbh, tbr) = (transport(&s, &bh)?, transport(&s, &br)?);
    let sampling = p.sampling();
    let gh = timed(&mut rep, "ggs", || Ok(ggs_check(&s, &tbh, &sampling)?))?;
    let gr = ggs_check(&s, &tbr, &sampling)?;
    let names = s.algebra().basis_names();
    rep.table("ggs_h_basis", ggs_table(&gh, names));
    rep.table("ggs_r_basis", ggs_table(&gr, names));
    rep.verdict("h_basis_is_ggs_for_h", gh.h_side.verdict);
    rep.verdict("r_basis_is_ggs_for_r", gr.r_side.as_ref().is_some_and(|r| r.verdict));
    let all_even = b.generators.iter().filter(|g| g.degree > 1).all(|g| g.degree % 2 == 0);
    let common = gh.common() || gr.common();
    rep.param("all_degrees_even", all_even);
    rep.param("common_ggs", common);
    rep.verdict("common_ggs_iff_even_degrees", common == all_even);
    let sph = sphericity_section(&mut rep, &s, &sampling)?;
    middle_section(&mut rep, &s, &tb, &sph)?;
    let mut z0 = Vec::new();
    let mut zinf = Vec::new();
    for gen in tb.generators.iter().filter(|g| g.degree == 1) {
        let parts = bidecompose(&s, &gen.poly)?;
        z0.push(parts.top().poly.clone());
        zinf.push(parts.bottom().poly.clone());
    }
    let check = |q: Side, gens: &[Polynomial]| -> Result<bool, ZError> {
        let alg = s.contract(q)?;
        Ok(gens.iter().all(|f| verify_invariance(&alg, f)))
    };
    rep.verdict("xi_top_components_central_in_q0", check(Side::KeepH, &z0)?);
    rep.verdict("xi_bottom_components_central_in_qinf", check(Side::KeepR, &zinf)?);
    let expected = b_value(&d)?;
    let common_basis = if gh.common() {
        Some(&tbh)
    } else if gr.common() {
        Some(&tbr)
    } else {
        None
    };
    z_sets(&mut rep, &s, &tb, common_basis, &z0, &zinf, expected, p)?;
    let sum_dj_minus_1: usize = b.degrees().iter().filter(|&&d| d > 1).map(|&d| d as usize - 1).sum();
    rep.verdict("m_tilde_count_is_2l_plus_middles", 2 * l + sum_dj_minus_1 == expected);
    Ok(rep)
}

fn case_aks(p: &CaseParams) -> Result<CaseReport, ZError> {
    let mut rep = CaseReport::new("aks", p.seed);
    let n = need_n(p, 1);
    p.record(&mut rep, p.kind, n);
    let g = algebra_for(p.kind, n)?;
    let red = g.reductive_data().ok_or(LieError::NotReductive)?;
    let mut h = red.triangular.plus_indices.clone();
    h.extend(&red.triangular.cartan_indices);
    let s = Splitting::new(&g, &h)?;
    let b = hilbert_basis(&g, &base_kind(p.kind))?;
    let r = timed(&mut rep, "aks", || Ok(aks_restrict(&s, &b)?))?;
    rep.verdict("h_restrictions_commute", r.h.commutative);
    rep.verdict("r_restrictions_commute", r.r.as_ref().is_some_and(|x| x.commutative));
    let h_names: Vec<String> = h.iter().map(|&i| g.basis_names()[i].clone()).collect();
    let show = |gens: &[Polynomial]| gens.iter().map(|p| poly_str(p, &h_names)).collect::<Vec<_>>();
    rep.table(
        "aks",
        json!({
            "h_generators": r.h.generators.len(),
            "r_generators": r.r.as_ref().map(|x| x.generators.len()),
            "h_polys": show(&r.h.generators),
        }),
    );
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyRow {
    pub algebra: &'static str,
    /// `None` when the invariant-theoretic route is not available.
    pub ggs: Option<bool>,
    pub restriction: bool,
    pub expected: bool,
}

impl ConsistencyRow {
    pub fn holds(&self) -> bool {
        self.restriction == self.expected && self.ggs.is_none_or(|g| g == self.expected)
    }
}

fn verdict_of(rep: &CaseReport, name: &str) -> bool {
    rep.verdicts.get(name).copied().unwrap_or(false)
}

fn case_consistency(p: &CaseParams) -> Result<CaseReport, ZError> {
    let mut rep = CaseReport::new("consistency", p.seed);
    let sub = |n| CaseParams { n: Some(n), ..p.clone() };
    let sl4 = case_sl2n(&sub(2))?;
    let sl3 = case_sl2n1(&sub(1))?;
    let so8 = case_so2n(&sub(4))?;
    let e6 = case_e6(&CaseParams { dmax: Some(3), ..p.clone() })?;
    let sl5 = {
        let rs = build_root_system(RootType::A(4))?;
        let w = enumerate_weyl(&rs, 1000)?;
        let (t0, _) = satake_subspaces(&rs, &SatakeDiagram::new(4, &[(1, 4), (2, 3)])?)?;
        let w0 = w0_compute(&w, &t0)?;
        restriction_check(&w, &t0, &w0, 1, p.seed)?
    };
    let rows = vec![
        ConsistencyRow {
            algebra: "sl(4)",
            ggs: Some(verdict_of(&sl4, "ggs_modified_basis")),
            restriction: verdict_of(&sl4, "restriction_onto_up_to_dmax"),
            expected: true,
        },
        ConsistencyRow {
            algebra: "sl(3)",
            ggs: Some(!(verdict_of(&sl3, "plain_basis_not_ggs") && verdict_of(&sl3, "elimination_gives_no_ggs"))),
            restriction: !verdict_of(&sl3, "restriction_fails_at_degree_1"),
            expected: false,
        },
        ConsistencyRow {
            algebra: "sl(5)",
            ggs: None,
            restriction: sl5.verdict_up_to_dmax,
            expected: false,
        },
        ConsistencyRow {
            algebra: "so(8)",
            ggs: Some(verdict_of(&so8, "ggs")),
            restriction: verdict_of(&so8, "restriction_onto_up_to_dmax"),
            expected: true,
        },
        ConsistencyRow {
            algebra: "E6",
            ggs: None,
            restriction: !verdict_of(&e6, "restriction_fails_first_at_degree_3"),
            expected: false,
        },
    ];
    for row in &rows {
        rep.verdict(&format!("{}_consistent", row.algebra), row.holds());
    }
    rep.table(
        "routes",
        Value::from(
            rows.iter()
                .map(|r| {
                    json!({
                        "algebra": r.algebra,
                        "ggs_route": r.ggs.map_or("n/a".to_string(), |g| g.to_string()),
                        "restriction_route": r.restriction,
                        "expected": r.expected,
                    })
                })
                .collect::<Vec<_>>(),
        ),
    );
    for (name, sub) in [("sl4", &sl4), ("sl3", &sl3), ("so8", &so8), ("e6", &e6)] {
        rep.timings_ms
            .insert(name.to_string(), sub.timings_ms.values().sum());
    }
    Ok(rep)
}

/// Runs one named case study and records its verdicts.
pub fn run_case(name: &str, params: &CaseParams) -> Result<CaseReport, ZError> {
    let start = Instant::now();
    let mut rep = match name {
        "borel" => case_borel(params),
        "horo" => case_horo(params),
        "double" => case_double(params),
        "sl2n" => case_sl2n(params),
        "sl2n1" => case_sl2n1(params),
        "so2n" => case_so2n(params),
        "e6_weyl" => case_e6(params),
        "aks" => case_aks(params),
        "consistency" => case_consistency(params),
        other => Err(ZError::UnknownCase(other.to_string())),
    }?;
    rep.timings_ms
        .insert("total".into(), start.elapsed().as_millis() as u64);
    Ok(rep)
}
