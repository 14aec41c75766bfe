mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use common::{double_a, sl2_borel, sl3_borel, sl3_horo, small_fixtures, Fixture};
use zalgebra_core::exact::{int, Monomial, Polynomial, Rational};
use zalgebra_core::invariants::{
    apply_operator, bidecompose, complement_operator, ggs_check, highest_component, verify_invariance,
};
use zalgebra_core::lie::{sl, BracketParameter, Side};
use zalgebra_core::poisson::{poisson_bracket, tensor_matrix, Sampling};
use zalgebra_core::weyl::{
    build_root_system, enumerate_weyl, reynolds, restriction_check, satake_subspaces, w0_compute,
    RootType, SatakeDiagram, WeylGroup,
};
use zalgebra_core::zalgebra::{trdeg_jacobian, z_generators, ZMode};

fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(small_fixtures)
}

fn homogeneous(nvars: usize, d: u32, terms: &[(Vec<u16>, i64)]) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for (exps, c) in terms {
        // spread the total degree d over the variables by the raw exponents
        let mut e = vec![0u16; nvars];
        let mut left = d as u16;
        for (i, &x) in exps.iter().enumerate().take(nvars) {
            let take = x.min(left);
            e[i] = take;
            left -= take;
        }
        e[nvars - 1] += left;
        let m = Polynomial::monomial(Monomial(e), int(*c));
        p = p.try_add(&m).unwrap();
    }
    p
}

fn terms() -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u16..3, 8), -5i64..=5), 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bidecomposition_reconstructs(which in 0usize..5, d in 1u32..4, t in terms()) {
        let f = &fixtures()[which];
        let n = f.s.algebra().dim();
        let p = homogeneous(n, d, &t);
        let parts = bidecompose(&f.s, &p).unwrap();
        prop_assert_eq!(parts.sum(), p);
        let h = f.s.h_indices();
        for c in &parts.components {
            prop_assert_eq!(c.bidegree.0 + c.bidegree.1, d);
            for (m, _) in c.poly.terms() {
                prop_assert_eq!(m.degree_in(h), c.bidegree.0);
            }
        }
    }

    #[test]
    fn bi_components_commute_in_the_pencil(t in -40i64..40, which in 0usize..2) {
        prop_assume!(t != 0);
        let f = if which == 0 { sl3_borel() } else { double_a(1) };
        let z = z_generators(&f.s, &f.b, &[], &[], ZMode::Full).unwrap();
        let alg = f.s.family_bracket(&BracketParameter::at(int(t))).unwrap();
        let polys = z.polys();
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                prop_assert!(poisson_bracket(&alg, &polys[i], &polys[j]).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn family_brackets_satisfy_jacobi(a in -6i64..6, b in -6i64..6, which in 0usize..5) {
        prop_assume!(a != 0 || b != 0);
        let f = &fixtures()[which];
        prop_assume!(f.s.r_closed());
        let p = BracketParameter::new(int(a), int(b)).unwrap();
        let alg = f.s.family_bracket(&p).unwrap();
        prop_assert!(alg.check_jacobi().passed);
    }

    #[test]
    fn poisson_tensor_is_skew(which in 0usize..5, pt in prop::collection::vec(-9i64..9, 16), t in -5i64..5) {
        let f = &fixtures()[which];
        prop_assume!(f.s.r_closed());
        let n = f.s.algebra().dim();
        let xi: Vec<Rational> = (0..n).map(|i| int(pt[i % pt.len()] + i as i64)).collect();
        let alg = f.s.family_bracket(&BracketParameter::at(int(t))).unwrap();
        prop_assert!(tensor_matrix(&alg, &xi).is_skew_symmetric());
        prop_assert!(tensor_matrix(f.s.algebra(), &xi).is_skew_symmetric());
    }

    /// `L(F^•_m) = F^•_{m̃}` for any complement `m̃ = k(f + a e + b h)`.
    #[test]
    fn top_component_moves_with_the_complement(a in -7i64..7, b in -7i64..7) {
        let g = sl(2).unwrap();
        let names = g.basis_names();
        let idx = |s: &str| names.iter().position(|x| x == s).unwrap();
        let unit = |k: usize| (0..3).map(|i| int(i64::from(i == k))).collect::<Vec<_>>();
        let (e, h, fv) = (idx("e"), idx("h"), idx("f"));
        let hb = vec![unit(e), unit(h)];
        let m = vec![unit(fv)];
        let mut mt = unit(fv);
        mt[e] = int(a);
        mt[h] = int(b);
        let cas = zalgebra_core::invariants::hilbert_basis(&g, &zalgebra_core::invariants::BasisKind::Charpoly)
            .unwrap()
            .polys()
            .remove(0);
        let top_m = highest_component(&cas, &hb, &m).unwrap();
        let top_mt = highest_component(&cas, &hb, &[mt.clone()]).unwrap();
        let l = complement_operator(&hb, &m, &[mt]).unwrap();
        prop_assert_eq!(apply_operator(&l, &top_m).unwrap(), top_mt);
    }

    #[test]
    fn trdeg_is_stable_across_seeds(seed in any::<u64>()) {
        let f = sl3_borel();
        let z = z_generators(&f.s, &f.b, &[], &[], ZMode::CommonGgs).unwrap();
        prop_assert_eq!(trdeg_jacobian(&z.polys(), 3, seed).unwrap(), 5);
    }

    #[test]
    fn reynolds_is_idempotent_on_w0(t in terms(), d in 1u32..5) {
        let (_, w0) = d4_w0();
        let p = homogeneous(w0[0].rows(), d, &t);
        let r = reynolds(w0, &p).unwrap();
        prop_assert_eq!(reynolds(w0, &r).unwrap(), r.clone());
        for g in w0 {
            let images: Vec<Polynomial> = (0..g.rows()).map(|i| Polynomial::linear(g.row(i))).collect();
            prop_assert_eq!(r.substitute(&images).unwrap(), r.clone());
        }
    }

    #[test]
    fn e6_weyl_elements_permute_roots(k in 0usize..51840) {
        let (rs, w) = e6();
        let roots: std::collections::HashSet<Vec<i64>> = rs.all_roots().into_iter().collect();
        prop_assert!(w.preserves(&w.elements[k % w.elements.len()], &roots));
    }
}

fn d4_w0() -> &'static (Vec<Vec<i64>>, Vec<zalgebra_core::exact::Matrix>) {
    static W: OnceLock<(Vec<Vec<i64>>, Vec<zalgebra_core::exact::Matrix>)> = OnceLock::new();
    W.get_or_init(|| {
        let rs = build_root_system(RootType::D(4)).unwrap();
        let w = enumerate_weyl(&rs, 1000).unwrap();
        let (t0, _) = satake_subspaces(&rs, &SatakeDiagram::new(4, &[(3, 4)]).unwrap()).unwrap();
        let rep = w0_compute(&w, &t0).unwrap();
        (t0, rep.w0_matrices)
    })
}

fn e6() -> &'static (zalgebra_core::weyl::RootSystem, WeylGroup) {
    static W: OnceLock<(zalgebra_core::weyl::RootSystem, WeylGroup)> = OnceLock::new();
    W.get_or_init(|| {
        let rs = build_root_system(RootType::E6).unwrap();
        let w = enumerate_weyl(&rs, 100_000).unwrap();
        (rs, w)
    })
}

#[test]
fn tops_and_bottoms_are_invariant_in_the_contractions() {
    for f in fixtures() {
        let q0 = f.s.contract(Side::KeepH).unwrap();
        for g in &f.b.generators {
            let parts = bidecompose(&f.s, &g.poly).unwrap();
            assert!(verify_invariance(&q0, &parts.top().poly), "{}: top of {}", f.name, g.name);
            if f.s.r_closed() {
                let qi = f.s.contract(Side::KeepR).unwrap();
                assert!(verify_invariance(&qi, &parts.bottom().poly), "{}: bottom of {}", f.name, g.name);
            }
        }
    }
}

#[test]
fn ggs_criteria_agree() {
    let sampling = Sampling::new(3, 11);
    for f in fixtures() {
        let r = ggs_check(&f.s, &f.b, &sampling).unwrap();
        assert!(r.h_side.consistent, "{}", f.name);
        if let Some(side) = &r.r_side {
            assert!(side.consistent, "{}", f.name);
        }
        if r.h_side.verdict {
            if let Some(h) = &r.horospherical {
                assert_eq!(h.a_count, h.dim_t0, "{}", f.name);
                assert!(h.bidegree_claim, "{}", f.name);
            }
        }
    }
}

#[test]
fn expected_ggs_verdicts() {
    let sampling = Sampling::new(3, 5);
    let verdict = |f: &Fixture| ggs_check(&f.s, &f.b, &sampling).unwrap().h_side.verdict;
    assert!(verdict(&sl2_borel()));
    assert!(verdict(&sl3_borel()));
    assert!(!verdict(&sl3_horo()));
    assert!(verdict(&common::sl4_horo()));
}

#[test]
fn restriction_table_is_prefix_stable() {
    let rs = build_root_system(RootType::A(3)).unwrap();
    let w = enumerate_weyl(&rs, 1000).unwrap();
    let (t0, _) = satake_subspaces(&rs, &SatakeDiagram::new(3, &[(1, 3)]).unwrap()).unwrap();
    let w0 = w0_compute(&w, &t0).unwrap();
    let short = restriction_check(&w, &t0, &w0, 3, 1).unwrap();
    let long = restriction_check(&w, &t0, &w0, 6, 2).unwrap();
    assert_eq!(short.table[..], long.table[..3]);
    for row in &long.table {
        assert!(row.image_dim <= row.invariant_dim);
        assert!(row.image_dim <= row.ambient_dim);
    }
}
