use proptest::prelude::*;

use super::text::parse_module;
use super::*;
use crate::groebner::Vector;

fn qr(s: &str) -> Arc<QuotientRing> {
    QuotientRing::parse(s).unwrap()
}

fn p(r: &Arc<QuotientRing>, s: &str) -> Poly {
    r.parse_poly(s).unwrap()
}

fn cyclic(r: &Arc<QuotientRing>, gens: &[&str]) -> PresentedModule {
    PresentedModule::cyclic(r, &gens.iter().map(|g| p(r, g)).collect::<Vec<_>>()).unwrap()
}

fn iso_to(m: &PresentedModule, expect: &PresentedModule) -> bool {
    m.prune().unwrap().module.same_presentation(&expect.prune().unwrap().module).unwrap()
}

fn vecp(r: &Arc<QuotientRing>, entries: &[&str]) -> Vector {
    Vector::from_polys(&entries.iter().map(|e| p(r, e)).collect::<Vec<_>>())
}

#[test]
fn homology_examples() {
    let r = qr("Q[x]");
    let zero = BoundedFreeComplex::from_matrices(&r, 0, vec![1, 1], &[vec![vec![p(&r, "0")]]]).unwrap();
    assert!(iso_to(&zero.homology(0).unwrap(), &PresentedModule::free(&r, 1)));
    let x = BoundedFreeComplex::from_matrices(&r, 0, vec![1, 1], &[vec![vec![p(&r, "x")]]]).unwrap();
    assert!(iso_to(&x.homology(0).unwrap(), &cyclic(&r, &["x"])));
    assert!(x.homology(1).unwrap().is_zero().unwrap());

    let r = qr("Q[x,y]");
    let kos = BoundedFreeComplex::from_matrices(
        &r,
        0,
        vec![1, 2, 1],
        &[vec![vec![p(&r, "x"), p(&r, "y")]], vec![vec![p(&r, "y")], vec![p(&r, "-x")]]],
    )
    .unwrap();
    assert!(iso_to(&kos.homology(0).unwrap(), &cyclic(&r, &["x", "y"])));
    assert!(kos.homology(1).unwrap().is_zero().unwrap());
    assert!(kos.homology(2).unwrap().is_zero().unwrap());
    assert_eq!(kos.homology_sup().unwrap(), Some(0));
}

#[test]
fn complex_rejects_nonzero_square() {
    let r = qr("Q[x]");
    let bad = BoundedFreeComplex::from_matrices(&r, 0, vec![1, 1, 1], &[vec![vec![p(&r, "x")]], vec![vec![p(&r, "1")]]]);
    assert!(bad.is_err());
}

#[test]
fn truncation_examples() {
    // a module in degree 0, via its injective presentation
    let r = qr("Q[x]");
    let m = cyclic(&r, &["x"]);
    let x = BoundedFreeComplex::presentation(&m);
    let t = x.truncation_split(0).unwrap();
    assert!(t.perfect.is_zero());
    assert!(t.module.same_presentation(&m).unwrap());
    assert!(t.verify().unwrap());

    // [R -x-> R] in degrees 1, 0 with s = 1
    let t = x.truncation_split(1).unwrap();
    assert_eq!(t.perfect.rank(0), 1);
    assert_eq!(t.perfect.hi(), 0);
    assert!(iso_to(&t.module, &PresentedModule::free(&r, 1)));
    assert!(t.verify().unwrap());

    // s below the homology is refused
    let y = BoundedFreeComplex::from_matrices(&r, 0, vec![1, 1], &[vec![vec![p(&r, "0")]]]).unwrap();
    let err = y.truncation_split(0).unwrap_err();
    assert!(err.to_string().contains("s too small"));

    // dual numbers: truncated resolution of k, s = 3
    let d = qr("Q[x]/(x^2)");
    let k = cyclic(&d, &["x"]);
    let x = BoundedFreeComplex::truncated_resolution(&k, 3).unwrap();
    assert!(x.truncation_split(2).is_err());
    let t = x.truncation_split(3).unwrap();
    assert_eq!((t.perfect.lo(), t.perfect.hi()), (0, 2));
    assert!(t.verify().unwrap());
    assert!(iso_to(&t.module, &PresentedModule::free(&d, 1)));
}

#[test]
fn syzygy_examples() {
    let r = qr("Q[x,y]");
    assert!(syzygy(1, &PresentedModule::free(&r, 2)).unwrap().is_zero().unwrap());
    let d = qr("Q[x]/(x^2)");
    let k = cyclic(&d, &["x"]);
    for n in 1..5 {
        assert!(iso_to(&syzygy(n, &k).unwrap(), &k), "Omega^{n} k");
    }
    let k2 = cyclic(&r, &["x", "y"]);
    let om = syzygy(1, &k2).unwrap();
    assert_eq!(om.ngens(), 2);
    assert_eq!(om.relations().len(), 1);
    let rel = om.relations()[0].to_polys(r.ambient(), 2);
    assert!(rel == vec![p(&r, "y"), p(&r, "-x")] || rel == vec![p(&r, "-y"), p(&r, "x")]);
    assert!(syzygy(2, &k2).unwrap().is_zero().unwrap() || syzygy(2, &k2).unwrap().is_visibly_free());
    assert!(syzygy(3, &k2).unwrap().is_zero().unwrap());
}

#[test]
fn resolution_is_exact() {
    let r = qr("Q[x,y,z]/(x*y - z^2)");
    let m = cyclic(&r, &["x", "z"]);
    let res = m.resolution();
    for j in 1..5 {
        let d = res.differential(j).unwrap();
        let dn = res.differential(j + 1).unwrap();
        let rows = res.rank(j - 1).unwrap();
        let f = ModuleMap::new_unchecked(
            &PresentedModule::free(&r, res.rank(j).unwrap()),
            &PresentedModule::free(&r, rows),
            d.to_vec(),
        );
        let g = ModuleMap::new_unchecked(
            &PresentedModule::free(&r, dn.len()),
            &PresentedModule::free(&r, res.rank(j).unwrap()),
            dn.to_vec(),
        );
        let rep = exactness_check(&[g, f]).unwrap();
        // exact at F_j; the outer positions are not claimed
        assert!(rep.exact || rep.failure.as_ref().unwrap().position != 2, "{j}: {rep:?}");
    }
}

#[test]
fn hom_examples() {
    let r = qr("Q[x,y]");
    let n = cyclic(&r, &["x^2", "y"]);
    let h = hom_module(&PresentedModule::free(&r, 1), &n).unwrap();
    assert!(iso_to(&h.module, &n));

    let d = qr("Q[x]/(x^2)");
    let k = cyclic(&d, &["x"]);
    let h = hom_module(&k, &PresentedModule::free(&d, 1)).unwrap();
    assert!(iso_to(&h.module, &k));
    let socle = h.generator(0);
    assert!(socle.is_well_defined().unwrap());
    assert!(socle.is_injective().unwrap());

    // x is a nonzerodivisor on R/(y), so no nonzero map R/(x) → R/(y)
    let h = hom_module(&cyclic(&r, &["x"]), &cyclic(&r, &["y"])).unwrap();
    assert!(h.module.is_zero().unwrap());
    let e = ext_module(1, &cyclic(&r, &["x"]), &cyclic(&r, &["y"])).unwrap();
    assert!(iso_to(&e, &cyclic(&r, &["x", "y"])));
}

#[test]
fn ext_examples() {
    let r = qr("Q[x,y]");
    let m = cyclic(&r, &["x"]);
    let n = cyclic(&r, &["x", "y^2"]);
    assert!(iso_to(&ext_module(0, &m, &n).unwrap(), &hom_module(&m, &n).unwrap().module));

    let d = qr("Q[x]/(x^2)");
    let k = cyclic(&d, &["x"]);
    assert!(iso_to(&ext_module(1, &k, &k).unwrap(), &k));
    assert!(iso_to(&ext_module(2, &k, &k).unwrap(), &k));

    let q = qr("Q[x]");
    let kq = cyclic(&q, &["x"]);
    assert!(ext_module(2, &kq, &kq).unwrap().is_zero().unwrap());
    assert!(iso_to(&ext_module(1, &kq, &kq).unwrap(), &kq));
    assert!(ext_is_zero(2, &kq, &kq).unwrap());
}

#[test]
fn annihilator_examples() {
    let r = qr("Q[x,y]");
    assert!(PresentedModule::free(&r, 1).annihilator().unwrap().is_zero() || PresentedModule::free(&r, 1).annihilator().unwrap().gens().is_empty());
    let d = qr("Q[x]/(x^2)");
    let a = cyclic(&d, &["x"]).annihilator().unwrap();
    assert!(a.same_ideal(&crate::groebner::Ideal::new(d.ambient(), vec![p(&d, "x")]).unwrap()).unwrap());
    let m = PresentedModule::direct_sum(&r, &[cyclic(&r, &["x"]), cyclic(&r, &["y"])]).unwrap();
    let a = m.annihilator().unwrap();
    assert!(a.same_ideal(&crate::groebner::Ideal::new(r.ambient(), vec![p(&r, "x*y")]).unwrap()).unwrap());
}

#[test]
fn pd_examples() {
    let q = qr("Q[x]");
    assert!(is_pd_le(&PresentedModule::free(&q, 2), 0).unwrap());
    let k = cyclic(&q, &["x"]);
    assert!(!is_pd_le(&k, 0).unwrap());
    assert!(is_pd_le(&k, 1).unwrap());
    let d = qr("Q[x]/(x^2)");
    let kd = cyclic(&d, &["x"]);
    for n in 0..=10 {
        assert!(!is_pd_le(&kd, n).unwrap(), "n = {n}");
    }
}

#[test]
fn localized_pd_examples() {
    let cusp = qr("Q[x,y]/(y^2 - x^3)");
    assert_eq!(localized_pd(&PresentedModule::free(&cusp, 1), &p(&cusp, "x")).unwrap(), Some(0));
    let k = cyclic(&cusp, &["x", "y"]);
    assert_eq!(localized_pd(&k, &p(&cusp, "x")).unwrap(), Some(0));
    assert_eq!(localized_pd(&k, &p(&cusp, "1")).unwrap(), None);
    let d = qr("Q[x]/(x^2)");
    assert_eq!(localized_pd(&cyclic(&d, &["x"]), &p(&d, "x")).unwrap(), Some(0));
    assert_eq!(localized_pd(&cyclic(&d, &["x"]), &p(&d, "1")).unwrap(), None);
}

#[test]
fn exactness_examples() {
    let q = qr("Q[x]");
    let r1 = PresentedModule::free(&q, 1);
    let kx = cyclic(&q, &["x"]);
    let mulx = ModuleMap::new(&r1, &r1, vec![vecp(&q, &["x"])]).unwrap();
    let proj = ModuleMap::new(&r1, &kx, vec![vecp(&q, &["1"])]).unwrap();
    assert!(exactness_check(&[mulx.clone(), proj]).unwrap().exact);

    let kx2 = cyclic(&q, &["x^2"]);
    let proj2 = ModuleMap::new(&r1, &kx2, vec![vecp(&q, &["1"])]).unwrap();
    let rep = exactness_check(&[mulx, proj2]).unwrap();
    assert!(!rep.exact);
    assert_eq!(rep.failure.unwrap().position, 2);

    let d = qr("Q[x]/(x^2)");
    let rd = PresentedModule::free(&d, 1);
    let k = cyclic(&d, &["x"]);
    let inc = ModuleMap::new(&k, &rd, vec![vecp(&d, &["x"])]).unwrap();
    let pr = ModuleMap::new(&rd, &k, vec![vecp(&d, &["1"])]).unwrap();
    assert!(exactness_check(&[inc, pr]).unwrap().exact);
}

#[test]
fn ill_defined_map_rejected() {
    let q = qr("Q[x]");
    let k = cyclic(&q, &["x"]);
    let r1 = PresentedModule::free(&q, 1);
    assert!(ModuleMap::new(&k, &r1, vec![vecp(&q, &["1"])]).is_err());
}

#[test]
fn prune_tracks_isomorphisms() {
    let r = qr("Q[x,y]");
    // generators e0, e1, e2 with e1 = x e0 and e2 = e0 + y e1
    let m = PresentedModule::new(
        &r,
        3,
        vec![vecp(&r, &["x", "-1", "0"]), vecp(&r, &["1", "y", "-1"]), vecp(&r, &["y^2", "0", "0"])],
    )
    .unwrap();
    let pr = m.prune().unwrap();
    assert_eq!(pr.module.ngens(), 1);
    assert!(pr.to_old.is_well_defined().unwrap());
    assert!(pr.from_old.is_well_defined().unwrap());
    assert!(pr.to_old.is_isomorphism().unwrap());
    assert!(pr.to_old.then(&pr.from_old).unwrap().equals(&ModuleMap::identity(&pr.module)).unwrap());
}

#[test]
fn module_text_round_trip() {
    let (name, m) = parse_module("module M over Q[x,y]/(y^2-x^3) gens 2 relations [[x, y], [y, x^2]]").unwrap();
    assert_eq!(name, "M");
    assert_eq!(m.ngens(), 2);
    let again = parse_module(&text::format_module("M", &m)).unwrap().1;
    assert!(again.same_presentation(&m).unwrap());
    let err = parse_module("module M over Q[x] gens 2 relations [[x]]").unwrap_err();
    assert!(matches!(err, crate::Error::Parse { .. }));
}

fn small_module() -> impl Strategy<Value = (Vec<(i64, u32, u32)>, usize)> {
    (prop::collection::vec((-2i64..=2, 0u32..2, 0u32..2), 0..4), 0usize..2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pd_invariant_under_free_summand((terms, extra) in small_module()) {
        let r = qr("Q[x,y]");
        let mut f = Poly::zero(r.ambient());
        for (c, a, b) in terms {
            f = &f + &crate::polyring::parse::term(r.ambient(), c, &[a, b]);
        }
        let m = PresentedModule::cyclic(&r, &[f, p(&r, "x")]).unwrap();
        let sum = PresentedModule::direct_sum(&r, &[m.clone(), PresentedModule::free(&r, extra + 1)]).unwrap();
        for n in 0..3 {
            prop_assert_eq!(is_pd_le(&m, n).unwrap(), is_pd_le(&sum, n).unwrap());
        }
    }

    #[test]
    fn resolution_squares_to_zero(a in 1u32..3, b in 1u32..3) {
        let r = qr("Q[x,y,z]/(x*z - y^2)");
        let m = PresentedModule::cyclic(&r, &[p(&r, &format!("x^{a}")), p(&r, &format!("y^{b}"))]).unwrap();
        let res = m.resolution();
        for j in 1..4 {
            let d = res.differential(j).unwrap();
            let dn = res.differential(j + 1).unwrap();
            let tgt = PresentedModule::free(&r, res.rank(j - 1).unwrap());
            let f = ModuleMap::new_unchecked(&PresentedModule::free(&r, d.len()), &tgt, d.to_vec());
            for c in dn.iter() {
                prop_assert!(tgt.element_is_zero(&f.apply(c)).unwrap());
            }
        }
    }
}
