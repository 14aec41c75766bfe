#![allow(dead_code)]

use zalgebra_core::exact::{int, Rational};
use zalgebra_core::invariants::{
    eliminate_on_subspace, hilbert_basis, transport, BasisKind, HilbertBasis,
};
use zalgebra_core::lie::{double, sl, Splitting};
use zalgebra_core::weyl::{build_root_system, RootType, SatakeDiagram};
use zalgebra_core::zalgebra::{borel_splitting, satake_t1};

pub struct Fixture {
    pub name: &'static str,
    pub s: Splitting,
    /// Written in the splitting's basis.
    pub b: HilbertBasis,
}

pub fn rows(t: &[&[i64]]) -> Vec<Vec<Rational>> {
    t.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

fn with_basis(name: &'static str, s: Splitting, kind: BasisKind) -> Fixture {
    let b = hilbert_basis(s.original_algebra(), &kind).unwrap();
    let b = transport(&s, &b).unwrap();
    Fixture { name, s, b }
}

pub fn sl2_borel() -> Fixture {
    with_basis("sl2 borel", borel_splitting(&sl(2).unwrap()).unwrap(), BasisKind::Charpoly)
}

pub fn sl3_borel() -> Fixture {
    with_basis("sl3 borel", borel_splitting(&sl(3).unwrap()).unwrap(), BasisKind::TracePowers)
}

pub fn sl3_horo() -> Fixture {
    let s = Splitting::horospherical(&sl(3).unwrap(), &rows(&[&[1, 1]])).unwrap();
    with_basis("sl3 horospherical", s, BasisKind::TracePowers)
}

/// sl(4) with the Satake torus of the arrow (1,3) and the eliminated basis.
pub fn sl4_horo() -> Fixture {
    let g = sl(4).unwrap();
    let rs = build_root_system(RootType::A(3)).unwrap();
    let (_, t1) = satake_t1(&g, &rs, &SatakeDiagram::new(3, &[(1, 3)]).unwrap()).unwrap();
    let s = Splitting::horospherical(&g, &t1).unwrap();
    let f = with_basis("sl4 horospherical", s, BasisKind::TracePowers);
    let b = eliminate_on_subspace(&f.s, &f.b, &[0]).unwrap();
    Fixture { b, ..f }
}

pub fn double_a(n: usize) -> Fixture {
    let d = double(&sl(n + 1).unwrap()).unwrap();
    let t1: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..2 * n).map(|j| int(i64::from(j == i) - i64::from(j == n + i))).collect())
        .collect();
    let s = Splitting::horospherical(&d, &t1).unwrap();
    let name = if n == 1 { "double A1" } else { "double A2" };
    with_basis(name, s, BasisKind::DoubleExtended(Box::new(BasisKind::Charpoly)))
}

pub fn small_fixtures() -> Vec<Fixture> {
    vec![sl2_borel(), sl3_borel(), sl3_horo(), sl4_horo(), double_a(1)]
}
