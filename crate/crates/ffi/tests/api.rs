use std::ffi::{CStr, CString};
use std::ptr;

use regloc_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn ring(s: &str) -> *mut RlRing {
    let mut r = ptr::null_mut();
    let src = cstr(s);
    assert_eq!(unsafe { rl_ring_parse(src.as_ptr(), &mut r) }, RlStatus::Ok);
    r
}

fn module(s: &str) -> *mut RlModule {
    let mut m = ptr::null_mut();
    let src = cstr(s);
    assert_eq!(unsafe { rl_module_parse(src.as_ptr(), &mut m) }, RlStatus::Ok);
    m
}

fn last_error() -> String {
    let p = rl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn singular_locus_of_the_cusp() {
    let r = ring("Q[x,y]/(y^2 - x^3)");
    let mut dim = -1;
    assert_eq!(unsafe { rl_ring_dim(r, &mut dim) }, RlStatus::Ok);
    assert_eq!(dim, 1);
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { rl_singular_locus(r, &mut l) }, RlStatus::Ok);
    let mut empty = true;
    assert_eq!(unsafe { rl_locus_is_empty(l, &mut empty) }, RlStatus::Ok);
    assert!(!empty);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { rl_locus_to_string(l, &mut s) }, RlStatus::Ok);
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    assert!(text.contains('y'), "{text}");
    unsafe {
        rl_string_free(s);
        rl_locus_free(l);
        rl_ring_free(r);
    }
}

#[test]
fn nonperf_inside_singular() {
    let r = ring("Q[x,y]/(x*y)");
    let m = module("module Rx over Q[x,y]/(x*y) gens 1 relations [[x]]");
    let (mut sing, mut bad) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(rl_singular_locus(r, &mut sing), RlStatus::Ok);
        assert_eq!(rl_nonperf_locus(m, &mut bad), RlStatus::Ok);
        let mut inside = false;
        assert_eq!(rl_locus_contained_in(bad, sing, &mut inside), RlStatus::Ok);
        assert!(inside);
        rl_locus_free(sing);
        rl_locus_free(bad);
        rl_module_free(m);
        rl_ring_free(r);
    }
}

#[test]
fn certify_round_trip_and_tamper() {
    let r = ring("Q[x]/(x^2)");
    let m = module("module R over Q[x]/(x^2) gens 1 relations []");
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(rl_generator_build(r, ptr::null(), &mut g), RlStatus::Ok);
        let mut count = 0;
        assert_eq!(rl_generator_summand_count(g, &mut count), RlStatus::Ok);
        assert_eq!(count, 1);
        let mut c = ptr::null_mut();
        assert_eq!(rl_certify(m, g, &mut c), RlStatus::Ok);
        let mut step = 7;
        assert_eq!(rl_certificate_check(c, &mut step), RlStatus::Ok);
        assert_eq!(step, -1);
        let mut js = ptr::null_mut();
        assert_eq!(rl_certificate_to_json(c, &mut js), RlStatus::Ok);
        let text = CStr::from_ptr(js).to_str().unwrap().to_string();
        rl_string_free(js);

        let mut back = ptr::null_mut();
        let src = cstr(&text);
        assert_eq!(rl_certificate_from_json(src.as_ptr(), &mut back), RlStatus::Ok);
        assert_eq!(rl_certificate_check(back, ptr::null_mut()), RlStatus::Ok);
        rl_certificate_free(back);

        // The dual-numbers certificate has one SES whose beta is [1]; make it x.
        let tampered = text.replacen("\"beta\": [\n        [\n          \"1\"", "\"beta\": [\n        [\n          \"x\"", 1);
        assert_ne!(tampered, text, "fixture shape changed");
        let src = cstr(&tampered);
        let mut bad = ptr::null_mut();
        assert_eq!(rl_certificate_from_json(src.as_ptr(), &mut bad), RlStatus::Ok);
        let mut step = -1;
        assert_eq!(rl_certificate_check(bad, &mut step), RlStatus::VerificationFailed);
        assert!(step >= 0);
        assert!(!last_error().is_empty());
        rl_certificate_free(bad);
        rl_certificate_free(c);
        rl_generator_free(g);
        rl_module_free(m);
        rl_ring_free(r);
    }
}

#[test]
fn errors_are_reported() {
    let mut r = ptr::null_mut();
    let src = cstr("Q[x,y");
    assert_eq!(unsafe { rl_ring_parse(src.as_ptr(), &mut r) }, RlStatus::InputError);
    assert!(r.is_null());
    assert!(last_error().contains("parse error"));
    assert_eq!(unsafe { rl_ring_parse(ptr::null(), &mut r) }, RlStatus::NullPointer);
    let good = cstr("Q[x]");
    assert_eq!(unsafe { rl_ring_parse(good.as_ptr(), ptr::null_mut()) }, RlStatus::NullPointer);
    let bad_utf8 = [0xffu8, 0];
    assert_eq!(
        unsafe { rl_ring_parse(bad_utf8.as_ptr() as *const _, &mut r) },
        RlStatus::InvalidUtf8
    );
    unsafe {
        rl_ring_free(ptr::null_mut());
        rl_string_free(ptr::null_mut());
    }
}

#[test]
fn primes_hint_for_the_node() {
    let r = ring("Q[x,y]/(x*y)");
    let primes = cstr("(x);(y)");
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(rl_generator_build(r, primes.as_ptr(), &mut g), RlStatus::Ok);
        let mut n = 0;
        rl_generator_summand_count(g, &mut n);
        assert_eq!(n, 2);
        let mut depth = 0;
        rl_generator_depth(g, &mut depth);
        assert_eq!(depth, 1);
        rl_generator_free(g);
        rl_ring_free(r);
    }
}
