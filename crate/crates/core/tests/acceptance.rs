//! Acceptance criteria 1-10. Prints one line per criterion and exits nonzero
//! if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{double_a, rows, sl2_borel, sl3_borel, sl3_horo, sl4_horo, Fixture};
use zalgebra_core::exact::{int, rat, Matrix, Rational};
use zalgebra_core::invariants::{
    apply_operator, bidecompose, complement_operator, ggs_check, hilbert_basis, highest_component,
    transport, verify_invariance, BasisKind,
};
use zalgebra_core::lie::{gl, sl, so_even, BracketParameter, Side, Splitting};
use zalgebra_core::poisson::{sphericity, tensor_matrix, Sampling};
use zalgebra_core::weyl::{build_root_system, RootType, SatakeDiagram};
use zalgebra_core::zalgebra::{
    commutativity_at_points, commutativity_suite, run_case, satake_t1, z_generators, CaseParams,
    CaseReport, ZMode,
};

type Outcome = Result<String, String>;
type Criterion = (u32, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn case(name: &str, kind: char, n: usize) -> Result<CaseReport, String> {
    let p = CaseParams {
        kind,
        n: Some(n),
        ..CaseParams::default()
    };
    run_case(name, &p).map_err(|e| format!("{name}: {e}"))
}

fn verdicts(rep: &CaseReport, names: &[&str]) -> Result<(), String> {
    for name in names {
        match rep.verdicts.get(*name) {
            Some(true) => {}
            Some(false) => return Err(format!("{}: {name} does not hold", rep.case)),
            None => return Err(format!("{}: no verdict {name}", rep.case)),
        }
    }
    Ok(())
}

fn so8_horo() -> Fixture {
    let g = so_even(4).unwrap();
    let rs = build_root_system(RootType::D(4)).unwrap();
    let (_, t1) = satake_t1(&g, &rs, &SatakeDiagram::new(4, &[(3, 4)]).unwrap()).unwrap();
    let s = Splitting::horospherical(&g, &t1).unwrap();
    let b = hilbert_basis(&g, &BasisKind::SoMinorsPfaffian).unwrap();
    let b = transport(&s, &b).unwrap();
    Fixture { name: "so8 horospherical", s, b }
}

fn all_fixtures() -> Vec<Fixture> {
    vec![
        sl2_borel(),
        sl3_borel(),
        sl3_horo(),
        sl4_horo(),
        so8_horo(),
        double_a(1),
        double_a(2),
    ]
}

/// sl(3): restrictions to `t_0` and the negative verdict.
fn c1() -> Outcome {
    let rep = case("sl2n1", 'A', 1)?;
    verdicts(
        &rep,
        &["p2_restriction_is_6c2", "p3_restriction_is_-6c3", "plain_basis_not_ggs", "no_ggs"],
    )?;
    // t_0 is spanned by diag(1, -2, 1), so P_k|_{t_0} = (1 + (-2)^k + 1) c^k
    let oracle: Vec<i64> = (2..=3u32).map(|k| 2 + (-2i64).pow(k)).collect();
    ensure(oracle == [6, -6], "diagonal oracle disagrees")?;
    Ok(format!("P2| = 6c^2, P3| = -6c^3, verdict {}", rep.tables["verdict"]))
}

fn c2() -> Outcome {
    let rep = case("so2n", 'D', 4)?;
    verdicts(&rep, &["d2_restriction_is_-c2", "other_restrictions_zero", "ggs"])?;
    let ggs = &rep.tables["ggs"];
    let deg_r: Vec<u64> = ggs["rows"]
        .as_array()
        .ok_or("ggs rows missing")?
        .iter()
        .map(|r| {
            let b = r["top_bidegree"].as_str().unwrap_or("(0,0)");
            b.trim_matches(|c| c == '(' || c == ')')
                .split(',')
                .nth(1)
                .and_then(|x| x.parse().ok())
                .unwrap_or(0)
        })
        .collect();
    let sum: u64 = deg_r.iter().sum();
    ensure(deg_r == [2, 3, 5, 3], format!("deg_r F^top = {deg_r:?}"))?;
    ensure(sum == 13 && ggs["h_side"]["dim"] == 13, format!("sum {sum}"))?;
    Ok(format!("D2| = -c^2, others 0, sum {deg_r:?} = 13 = dim r"))
}

fn c3() -> Outcome {
    let rep = case("e6_weyl", 'A', 1)?;
    verdicts(
        &rep,
        &[
            "weyl_order_51840",
            "normalizer_order_1152",
            "centralizer_order_192",
            "w0_order_6",
            "w0_has_s3_order_statistics",
            "restriction_fails_first_at_degree_3",
        ],
    )?;
    Ok("|W| = 51840, |N| = 1152, |Z| = 192, W0 = S3, first failure in degree 3".into())
}

fn gl_blocks(n: usize, m: usize) -> Result<(usize, usize, usize, usize), String> {
    let g = gl(n).map_err(|e| e.to_string())?;
    let h: Vec<usize> = (0..g.dim())
        .filter(|&k| {
            let name = &g.basis_names()[k];
            let i: usize = name[1..2].parse().unwrap();
            let j: usize = name[2..3].parse().unwrap();
            (i <= m) == (j <= m)
        })
        .collect();
    let s = Splitting::with_complement(&g, &h).map_err(|e| e.to_string())?;
    let sampling = Sampling::new(3, 1);
    let side = |kind: BasisKind| -> Result<(usize, usize), String> {
        let b = hilbert_basis(&g, &kind).map_err(|e| e.to_string())?;
        let r = ggs_check(&s, &b, &sampling).map_err(|e| e.to_string())?;
        ensure(r.h_side.consistent, "degree and Jacobian criteria disagree")?;
        Ok((r.h_side.degree_sum as usize, r.h_side.dim))
    };
    let (tp, dim) = side(BasisKind::TracePowers)?;
    let (cp, _) = side(BasisKind::Charpoly)?;
    Ok((tp, cp, dim, h.len()))
}

fn c4() -> Outcome {
    let (tp, cp, dim, _) = gl_blocks(4, 1)?;
    ensure(tp == 8 && dim == 6, format!("gl1+gl3 trace powers sum {tp} vs {dim}"))?;
    ensure(cp == 6, format!("gl1+gl3 charpoly sum {cp}"))?;
    let (tp2, cp2, dim2, _) = gl_blocks(4, 2)?;
    ensure(tp2 == dim2 && cp2 == dim2, format!("gl2+gl2 sums {tp2}, {cp2} vs {dim2}"))?;
    Ok(format!(
        "gl1+gl3: trace powers {tp} > {dim}, charpoly {cp} = {dim}; gl2+gl2: both {dim2}"
    ))
}

fn c5() -> Outcome {
    let f = sl4_horo();
    let g = sl(4).map_err(|e| e.to_string())?;
    let plain = transport(&f.s, &hilbert_basis(&g, &BasisKind::TracePowers).unwrap()).unwrap();
    let (p2, p4) = (&plain.generators[0].poly, &plain.generators[2].poly);
    let expected = p4.try_sub(&p2.pow(2).scale(&rat(1, 4))).unwrap();
    ensure(f.b.generators[2].poly == expected, "P4~ is not P4 - 1/4 P2^2")?;
    ensure(f.b.generators[1].poly == plain.generators[1].poly, "P3 changed")?;
    let r = ggs_check(&f.s, &f.b, &Sampling::new(3, 1)).map_err(|e| e.to_string())?;
    ensure(r.h_side.verdict, format!("sum {} vs {}", r.h_side.degree_sum, r.h_side.dim))?;
    Ok(format!("P4~ = P4 - 1/4 P2^2, sum {} = dim r", r.h_side.degree_sum))
}

/// Nonzero middle components counted straight from the monomials, plus the
/// `2ℓ` centre generators.
fn brute_force_m_tilde(f: &Fixture, l: usize) -> usize {
    let mask = f.s.h_mask();
    let mut count = 2 * l;
    for g in &f.b.generators {
        let mut degrees: Vec<u32> = g
            .poly
            .terms()
            .map(|(m, _)| m.0.iter().zip(&mask).filter(|(_, &h)| h).map(|(&e, _)| e as u32).sum())
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        count += degrees.iter().filter(|&&i| 0 < i && i < g.degree).count();
    }
    count
}

fn c6() -> Outcome {
    let mut detail = Vec::new();
    for n in [1usize, 2] {
        let rep = case("double", 'A', n)?;
        verdicts(&rep, &["m_tilde_count_is_b", "m_tilde_trdeg_is_b", "m_tilde_commutative"])?;
        let z = &rep.tables["z_m_tilde"];
        let count = z["count"].as_u64().unwrap_or(0) as usize;
        let trdeg = z["trdeg"].as_u64().unwrap_or(0) as usize;
        // b(g ∔ t) = (dim g + ℓ + 2ℓ)/2
        let g = sl(n + 1).unwrap();
        let b_tilde = (g.dim() + 3 * n) / 2;
        let brute = brute_force_m_tilde(&double_a(n), n);
        ensure(
            count == b_tilde && trdeg == b_tilde && brute == b_tilde,
            format!("A{n}: |M~| = {count}, trdeg {trdeg}, brute force {brute}, b = {b_tilde}"),
        )?;
        let comm = &z["commutativity"];
        let params = comm["parameters"].as_array().map_or(0, Vec::len);
        ensure(params == 8, format!("A{n}: {params} parameters checked"))?;
        ensure(comm["first_failure"].is_null(), format!("A{n}: {}", comm["first_failure"]))?;
        detail.push(format!("A{n}: |M~| = trdeg = {count} = b"));
    }
    Ok(detail.join("; "))
}

fn sphericity_all() -> Result<Vec<(String, zalgebra_core::poisson::SphericityReport, usize)>, String> {
    let sampling = Sampling::new(5, 1);
    all_fixtures()
        .into_iter()
        .map(|f| {
            let rep = sphericity(&f.s, &sampling).map_err(|e| format!("{}: {e}", f.name))?;
            let dim_t1 = f.s.t1_indices().map_or(0, <[usize]>::len);
            Ok((f.name.to_string(), rep, dim_t1))
        })
        .collect()
}

fn c7() -> Outcome {
    let reps = sphericity_all()?;
    for (name, r, dim_t1) in &reps {
        ensure(r.sum_equals_rank, format!("{name}: s0 + s_inf = {} vs {}", r.s0 + r.s_inf, r.rank))?;
        ensure(
            r.s0 == r.rank as i64 - *dim_t1 as i64,
            format!("{name}: s0 = {}, rank {}, dim t1 {dim_t1}", r.s0, r.rank),
        )?;
    }
    Ok(format!("{} splittings", reps.len()))
}

fn c8() -> Outcome {
    let reps = sphericity_all()?;
    for (name, r, _) in &reps {
        ensure(
            r.index_q0 == r.rank && r.index_qinf == r.rank,
            format!("{name}: ind q0 = {}, ind qinf = {}, rank {}", r.index_q0, r.index_qinf, r.rank),
        )?;
    }
    Ok(format!("{} splittings, both contractions of index rk g", reps.len()))
}

fn neg(m: &Matrix) -> Vec<Vec<Rational>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect()
}

fn property_suite(f: &Fixture) -> Result<(), String> {
    let err = |e: &dyn std::fmt::Display| format!("{}: {e}", f.name);
    let n = f.s.algebra().dim();
    let mut params = vec![BracketParameter::one(), BracketParameter::zero(), BracketParameter::infinity()];
    params.extend([-3, 2, 7].map(|t| BracketParameter::at(int(t))));
    let xi: Vec<Rational> = (0..n).map(|i| int((i as i64 * 7 + 3) % 11 - 5)).collect();
    let minus_xi: Vec<Rational> = xi.iter().map(|x| -x.clone()).collect();
    for p in &params {
        let alg = match (f.s.r_closed(), p == &BracketParameter::zero()) {
            (true, _) => f.s.family_bracket(p).map_err(|e| err(&e))?,
            (false, true) => f.s.contract(Side::KeepH).map_err(|e| err(&e))?,
            (false, false) => continue,
        };
        ensure(alg.check_jacobi().passed, format!("{}: Jacobi fails at {p}", f.name))?;
        let pi = tensor_matrix(&alg, &xi);
        ensure(pi.is_skew_symmetric(), format!("{}: tensor not skew at {p}", f.name))?;
        ensure(
            tensor_matrix(&alg, &minus_xi).to_rows() == neg(&pi),
            format!("{}: tensor not odd at {p}", f.name),
        )?;
    }
    let q0 = f.s.contract(Side::KeepH).map_err(|e| err(&e))?;
    let qi = if f.s.r_closed() { Some(f.s.contract(Side::KeepR).map_err(|e| err(&e))?) } else { None };
    for g in &f.b.generators {
        let parts = bidecompose(&f.s, &g.poly).map_err(|e| err(&e))?;
        ensure(parts.sum() == g.poly, format!("{}: {} not reconstructed", f.name, g.name))?;
        ensure(verify_invariance(&q0, &parts.top().poly), format!("{}: top of {}", f.name, g.name))?;
        if let Some(qi) = &qi {
            ensure(
                verify_invariance(qi, &parts.bottom().poly),
                format!("{}: bottom of {}", f.name, g.name),
            )?;
        }
    }
    let z = z_generators(&f.s, &f.b, &[], &[], ZMode::Full).map_err(|e| err(&e))?;
    let extra = [BracketParameter::at(int(-3)), BracketParameter::at(int(5))];
    let comm = if n <= 15 {
        commutativity_suite(&z, &extra)
    } else {
        commutativity_at_points(&z, &extra, &Sampling::new(2, 3))
    }
    .map_err(|e| err(&e))?;
    ensure(comm.passed(), format!("{}: bi-components do not commute: {:?}", f.name, comm.first_failure))
}

/// `L(F^•_m) = F^•_{m̃}` on sl(2) with `h = ⟨e, h⟩`.
fn complement_independence() -> Result<(), String> {
    let g = sl(2).unwrap();
    let cas = hilbert_basis(&g, &BasisKind::Charpoly).unwrap().polys().remove(0);
    let hb = rows(&[&[1, 0, 0], &[0, 1, 0]]);
    let m = rows(&[&[0, 0, 1]]);
    for (a, b) in [(0, 0), (-1, 0), (2, 3), (5, -7)] {
        let mt = rows(&[&[a, b, 1]]);
        let top_m = highest_component(&cas, &hb, &m).map_err(|e| e.to_string())?;
        let top_mt = highest_component(&cas, &hb, &mt).map_err(|e| e.to_string())?;
        let l = complement_operator(&hb, &m, &mt).map_err(|e| e.to_string())?;
        ensure(
            apply_operator(&l, &top_m).map_err(|e| e.to_string())? == top_mt,
            format!("complement f + {a}e + {b}h"),
        )?;
    }
    Ok(())
}

fn c9() -> Outcome {
    let fixtures = all_fixtures();
    for f in &fixtures {
        property_suite(f)?;
    }
    complement_independence()?;
    Ok(format!("{} splittings, complement operator on sl(2)", fixtures.len()))
}

fn c10() -> Outcome {
    for n in [1, 2] {
        let rep = case("aks", 'A', n)?;
        verdicts(&rep, &["h_restrictions_commute", "r_restrictions_commute"])?;
    }
    Ok("sl(2), sl(3) with b + u-".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, 1, c1),
        (2, 30, c2),
        (3, 300, c3),
        (4, 30, c4),
        (5, 10, c5),
        (6, 60, c6),
        (7, 60, c7),
        (8, 60, c8),
        (9, 300, c9),
        (10, 10, c10),
    ];
    let mut failed = 0;
    for (k, limit, f) in criteria {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(limit);
        let (ok, detail) = match result {
            Ok(d) if over => (false, format!("{d}; over the {limit} s limit")),
            Ok(d) => (true, d),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {k}: {} ({detail}, {:.2} s)",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
