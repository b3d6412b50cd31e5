use std::sync::Arc;

use super::*;
use crate::genesis::{build_generator, certify_module, PrimeHints};
use crate::homalg::is_pd_le;
use crate::polyring::parse::parse_poly;

fn ring(s: &str) -> Arc<QuotientRing> {
    QuotientRing::parse(s).unwrap()
}

fn cyclic(r: &Arc<QuotientRing>, gens: &[&str]) -> PresentedModule {
    let g: Vec<Poly> = gens.iter().map(|t| parse_poly(r.ambient(), t).unwrap()).collect();
    PresentedModule::cyclic(r, &g).unwrap()
}

#[test]
fn pd_examples() {
    let line = ring("Q[x]");
    let k = PresentedModule::residue_field(&line).unwrap();
    assert_eq!(pd_by_resolution(&k, 5).unwrap(), PdBound::Exactly(1));
    let plane = ring("Q[x,y]");
    let k = PresentedModule::residue_field(&plane).unwrap();
    assert_eq!(pd_by_resolution(&k, 5).unwrap(), PdBound::Exactly(2));
    assert_eq!(pd_by_resolution(&PresentedModule::free(&plane, 2), 5).unwrap(), PdBound::Exactly(0));
    let dual = ring("Q[x]/(x^2)");
    let k = PresentedModule::residue_field(&dual).unwrap();
    assert_eq!(pd_by_resolution(&k, 10).unwrap(), PdBound::Exceeds(10));
}

#[test]
fn pd_agrees_with_ext_criterion() {
    let r = ring("Q[x,y,z]");
    for gens in [&["x"][..], &["x", "y"], &["x*y", "z^2"], &["x^2", "x*y", "y^2"], &["x", "y", "z"]] {
        let m = cyclic(&r, gens);
        let pd = pd_by_resolution(&m, 4).unwrap();
        for n in 0..3 {
            assert_eq!(is_pd_le(&m, n).unwrap(), pd.at_most(n), "{gens:?} n={n} pd={pd:?}");
        }
    }
}

#[test]
fn shifted_ext_examples() {
    let dual = ring("Q[x]/(x^2)");
    let k = PresentedModule::residue_field(&dual).unwrap();
    for n in 1..=2 {
        let d = ext_by_dimension_shift(n, &k, &k, 4).unwrap();
        assert_eq!(d.total, Some(1), "n={n}");
        assert_eq!(d, ext_dimensions(n, &k, &k, 4).unwrap());
    }
    let free = PresentedModule::free(&dual, 1);
    assert_eq!(ext_by_dimension_shift(1, &free, &k, 4).unwrap().total, Some(0));
}

#[test]
fn shifted_ext_matches_on_polynomial_rings() {
    let r = ring("Q[x,y]");
    let k = PresentedModule::residue_field(&r).unwrap();
    let m = cyclic(&r, &["x^2", "y"]);
    for n in 1..=3 {
        assert_eq!(
            ext_by_dimension_shift(n, &m, &k, 3).unwrap(),
            ext_dimensions(n, &m, &k, 3).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn non_graded_input_rejected() {
    let r = ring("Q[x,y]");
    let m = cyclic(&r, &["x - 1"]);
    let k = PresentedModule::residue_field(&r).unwrap();
    assert!(ext_by_dimension_shift(1, &m, &k, 2).is_err());
}

#[test]
fn probe_examples() {
    let dual = ring("Q[x]/(x^2)");
    let k = PresentedModule::residue_field(&dual).unwrap();
    let lam = PresentedModule::free(&dual, 1);
    let cfg = ProbeConfig::default();
    assert!(artinian_thick_probe(&k, &lam, cfg).unwrap());
    assert!(!artinian_thick_probe(&lam, &k, cfg).unwrap());
    assert!(artinian_thick_probe(&lam, &lam, cfg).unwrap());
    let cube = ring("F5[x]/(x^3)");
    let k = PresentedModule::residue_field(&cube).unwrap();
    assert!(artinian_thick_probe(&k, &PresentedModule::free(&cube, 1), cfg).unwrap());
    let fat = ring("Q[x,y]/(x^2, x*y, y^2)");
    let k = PresentedModule::residue_field(&fat).unwrap();
    assert!(artinian_thick_probe(&k, &PresentedModule::free(&fat, 1), cfg).unwrap());
}

#[test]
fn probe_rejects_positive_dimension() {
    let r = ring("Q[x]");
    let k = PresentedModule::residue_field(&r).unwrap();
    assert!(artinian_thick_probe(&k, &k, ProbeConfig::default()).is_err());
}

#[test]
fn tamper_suite_on_dual_numbers() {
    let dual = ring("Q[x]/(x^2)");
    let g = build_generator(&dual, &PrimeHints::new()).unwrap();
    let c = certify_module(&PresentedModule::free(&dual, 1), &g).unwrap();
    let rep = tamper_suite(&c, 4).unwrap();
    assert!(rep.breaking > 0);
    assert!(rep.mismatches.is_empty(), "{:?}", rep.mismatches);
    assert_eq!(rep.rejected, rep.breaking);
}
