use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::polyring::parse::{parse_poly, parse_ring};
use crate::polyring::{FieldSpec, MonomialOrder};

fn ring(s: &str, order: MonomialOrder) -> Arc<PolyRing> {
    parse_ring(s, order).unwrap().0
}

fn p(r: &Arc<PolyRing>, s: &str) -> Poly {
    parse_poly(r, s).unwrap()
}

fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|s| p(r, s)).collect()).unwrap()
}

#[test]
fn twisted_cubic_lex_basis() {
    let r = ring("Q[x,y,z]", MonomialOrder::Lex);
    let gb = groebner_basis(&r, &[p(&r, "x^2-y"), p(&r, "x^3-z")]).unwrap();
    let mut got: Vec<String> = gb.iter().map(|g| g.to_string()).collect();
    got.sort();
    let mut want: Vec<String> = ["x^2-y", "x*y-z", "x*z-y^2", "y^3-z^2"]
        .iter()
        .map(|s| p(&r, s).to_string())
        .collect();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn normal_form_example() {
    let r = ring("Q[x,y]", MonomialOrder::Grevlex);
    let i = ideal(&r, &["x^2-y"]);
    assert_eq!(i.normal_form(&p(&r, "x^2*y+y")).unwrap(), p(&r, "y^2+y"));
    assert!(i.contains(&p(&r, "x^4-y^2")).unwrap());
    assert!(!i.contains(&p(&r, "x")).unwrap());
}

#[test]
fn unit_and_zero_ideals() {
    let r = ring("Q[x,y]", MonomialOrder::Grevlex);
    let u = ideal(&r, &["x", "x+1"]);
    assert!(u.is_unit().unwrap());
    assert_eq!(u.groebner_basis().unwrap(), &[Poly::one(&r)]);
    assert_eq!(u.krull_dimension().unwrap(), -1);
    let z = Ideal::zero(&r);
    assert_eq!(z.krull_dimension().unwrap(), 2);
    assert!(z.contains(&Poly::zero(&r)).unwrap());
}

#[test]
fn quotients() {
    let r = ring("Q[x,y]", MonomialOrder::Grevlex);
    let i = ideal(&r, &["x*y", "y^2"]);
    let q = i.quotient(&p(&r, "y")).unwrap();
    assert!(q.same_ideal(&ideal(&r, &["x", "y"])).unwrap());
    let q = ideal(&r, &["x^2"]).quotient(&p(&r, "x")).unwrap();
    assert!(q.same_ideal(&ideal(&r, &["x"])).unwrap());
    let q = ideal(&r, &["x"]).quotient(&p(&r, "y")).unwrap();
    assert!(q.same_ideal(&ideal(&r, &["x"])).unwrap());
}

#[test]
fn radical_and_saturation() {
    let r = ring("Q[x,y]", MonomialOrder::Grevlex);
    let i = ideal(&r, &["x^3", "y^2"]);
    assert!(i.radical_contains(&p(&r, "x+y")).unwrap());
    assert!(!i.radical_contains(&p(&r, "x+1")).unwrap());
    assert_eq!(i.saturation_index(&p(&r, "x")).unwrap(), 3);
    assert_eq!(i.saturation_index(&p(&r, "x^3")).unwrap(), 1);
    assert!(i.saturation_index(&p(&r, "1")).is_err());
    let err = i.saturation_index(&p(&r, "x+1")).unwrap_err();
    assert!(err.to_string().contains("no finite index"));
    let s = ideal(&r, &["y^2-x^3"]);
    assert_eq!(s.saturation_index(&p(&r, "y^2-x^3")).unwrap(), 1);
}

#[test]
fn dimensions() {
    let r = ring("Q[x,y,z]", MonomialOrder::Grevlex);
    assert_eq!(ideal(&r, &["x^2-y", "x^3-z"]).krull_dimension().unwrap(), 1);
    assert_eq!(ideal(&r, &["x", "y", "z"]).krull_dimension().unwrap(), 0);
    assert_eq!(ideal(&r, &["x*y", "x*z"]).krull_dimension().unwrap(), 2);
    let f = ring("F101[a,b,c,d]", MonomialOrder::Grevlex);
    assert_eq!(Ideal::zero(&f).krull_dimension().unwrap(), 4);
}

#[test]
fn intersections() {
    let r = ring("Q[x,y]", MonomialOrder::Grevlex);
    let k = ideal(&r, &["x"]).intersection(&ideal(&r, &["y"])).unwrap();
    assert!(k.same_ideal(&ideal(&r, &["x*y"])).unwrap());
    let k = ideal(&r, &["x^2", "y"]).intersection(&ideal(&r, &["x", "y^2"])).unwrap();
    assert!(k.same_ideal(&ideal(&r, &["x^2", "x*y", "y^2"])).unwrap());
}

#[test]
fn koszul_syzygy() {
    let r = ring("Q[x,y]", MonomialOrder::Grevlex);
    let cols = [Vector::from_poly(&p(&r, "x"), 0), Vector::from_poly(&p(&r, "y"), 0)];
    let syz = syzygy_basis(&r, &cols, 1).unwrap();
    assert_eq!(syz.len(), 1);
    let v = syz[0].to_polys(&r, 2);
    let (a, b) = (&v[0], &v[1]);
    // (y, -x) up to a scalar
    assert!((a == &p(&r, "y") && b == &p(&r, "-x")) || (a == &p(&r, "-y") && b == &p(&r, "x")));
}

#[test]
fn syzygies_of_twisted_cubic_minors() {
    let r = ring("Q[a,b,c,d]", MonomialOrder::Grevlex);
    let g: Vec<Vector> = ["a*c-b^2", "a*d-b*c", "b*d-c^2"]
        .iter()
        .map(|s| Vector::from_poly(&p(&r, s), 0))
        .collect();
    let syz = syzygy_basis(&r, &g, 1).unwrap();
    let sub = SubmoduleOfFree::new(&r, 3, syz.clone()).unwrap();
    // every syzygy maps to zero, and the two linear ones are present
    for s in &syz {
        let parts = s.to_polys(&r, 3);
        let mut acc = Poly::zero(&r);
        for (c, gi) in parts.iter().zip(["a*c-b^2", "a*d-b*c", "b*d-c^2"]) {
            acc = &acc + &(c * &p(&r, gi));
        }
        assert!(acc.is_zero());
    }
    let lin1 = Vector::from_polys(&[p(&r, "c"), p(&r, "-b"), p(&r, "a")]);
    let lin2 = Vector::from_polys(&[p(&r, "d"), p(&r, "-c"), p(&r, "b")]);
    assert!(sub.contains(&lin1).unwrap());
    assert!(sub.contains(&lin2).unwrap());
    assert!(!sub.contains(&Vector::from_polys(&[p(&r, "1")])).unwrap());
}

#[test]
fn lifting() {
    let r = ring("Q[x,y]", MonomialOrder::Grevlex);
    let gens = [Vector::from_poly(&p(&r, "x"), 0), Vector::from_poly(&p(&r, "y"), 0)];
    let l = Lifter::new(&r, &gens, 1, &[]).unwrap();
    let target = Vector::from_poly(&p(&r, "x^2+x*y+y^3"), 0);
    let c = l.lift(&target).unwrap().to_polys(&r, 2);
    assert_eq!(&(&c[0] * &p(&r, "x")) + &(&c[1] * &p(&r, "y")), p(&r, "x^2+x*y+y^3"));
    assert!(l.lift(&Vector::from_poly(&p(&r, "1"), 0)).is_none());
    // modulo (x - 1): 1 = x - (x - 1)
    let l = Lifter::new(&r, &gens[..1], 1, &[Vector::from_poly(&p(&r, "x-1"), 0)]).unwrap();
    assert!(l.lift(&Vector::from_poly(&p(&r, "1"), 0)).is_some());
}

#[test]
fn cutoff_reported() {
    use crate::polyring::parse::parse_ring_with_limits;
    use crate::polyring::Limits;
    let limits = Limits {
        max_degree: 3,
        ..Limits::default()
    };
    let (r, _) = parse_ring_with_limits("Q[x,y,z]", MonomialOrder::Lex, limits).unwrap();
    let res = groebner_basis(&r, &[p(&r, "x^2-y^5"), p(&r, "x*y-z^7")]);
    assert!(matches!(res, Err(Error::Cutoff(_))));
}

#[test]
fn prime_field_basis() {
    let r = PolyRing::grevlex(FieldSpec::prime(7).unwrap(), &["x", "y"]).unwrap();
    let i = Ideal::new(&r, vec![p(&r, "x^7-x"), p(&r, "y^2-x")]).unwrap();
    assert_eq!(i.krull_dimension().unwrap(), 0);
    assert!(i.contains(&p(&r, "y^14-x^7")).unwrap());
}

fn small_poly(r: Arc<PolyRing>) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3), 0..4).prop_map(move |ts| {
        let mut acc = Poly::zero(&r);
        for (c, a, b) in ts {
            acc = &acc + &crate::polyring::parse::term(&r, c, &[a, b]);
        }
        acc
    })
}

fn qxy() -> Arc<PolyRing> {
    PolyRing::grevlex(FieldSpec::Rationals, &["x", "y"]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_idempotent(gens in prop::collection::vec(small_poly(qxy()), 1..3), f in small_poly(qxy())) {
        let r = qxy();
        let f = parse_poly(&r, &f.to_string()).unwrap();
        let gens: Vec<Poly> = gens.iter().map(|g| parse_poly(&r, &g.to_string()).unwrap()).collect();
        let i = Ideal::new(&r, gens).unwrap();
        let nf = i.normal_form(&f).unwrap();
        prop_assert_eq!(i.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(i.contains(&(&f - &nf)).unwrap());
    }

    #[test]
    fn basis_independent_of_generator_order(gens in prop::collection::vec(small_poly(qxy()), 1..4)) {
        let r = qxy();
        let gens: Vec<Poly> = gens.iter().map(|g| parse_poly(&r, &g.to_string()).unwrap()).collect();
        let mut rev = gens.clone();
        rev.reverse();
        prop_assert_eq!(groebner_basis(&r, &gens).unwrap(), groebner_basis(&r, &rev).unwrap());
    }

    #[test]
    fn quotient_times_f_in_ideal(gens in prop::collection::vec(small_poly(qxy()), 1..3), f in small_poly(qxy())) {
        let r = qxy();
        let f = parse_poly(&r, &f.to_string()).unwrap();
        let gens: Vec<Poly> = gens.iter().map(|g| parse_poly(&r, &g.to_string()).unwrap()).collect();
        let i = Ideal::new(&r, gens).unwrap();
        let q = i.quotient(&f).unwrap();
        for g in q.gens() {
            prop_assert!(i.contains(&(g * &f)).unwrap());
        }
        // I ⊆ (I : f)
        prop_assert!(q.contains_ideal(&i).unwrap());
    }

    #[test]
    fn syzygies_map_to_zero(cols in prop::collection::vec(small_poly(qxy()), 1..4)) {
        let r = qxy();
        let cols: Vec<Poly> = cols.iter().map(|g| parse_poly(&r, &g.to_string()).unwrap()).collect();
        let vs: Vec<Vector> = cols.iter().map(|c| Vector::from_poly(c, 0)).collect();
        for s in syzygy_basis(&r, &vs, 1).unwrap() {
            let parts = s.to_polys(&r, cols.len());
            let mut acc = Poly::zero(&r);
            for (a, c) in parts.iter().zip(&cols) {
                acc = &acc + &(a * c);
            }
            prop_assert!(acc.is_zero());
        }
    }

    #[test]
    fn saturation_index_contract(a in 0u32..4, b in 1u32..4) {
        let r = qxy();
        let i = Ideal::new(&r, vec![p(&r, &format!("x^{}", a + 1)), p(&r, &format!("y^{b}"))]).unwrap();
        let f = p(&r, "x");
        let k = i.saturation_index(&f).unwrap();
        prop_assert!(i.contains(&f.pow(k)).unwrap());
        if k > 0 {
            prop_assert!(!i.contains(&f.pow(k - 1)).unwrap());
        }
        prop_assert_eq!(k, a + 1);
    }
}
