use std::ffi::{CStr, CString};
use std::ptr;

use orbifold_ffi::*;

fn last_error() -> String {
    let p = orbifold_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn instance_round_trip() {
    let spec = CString::new("S3/index:2").unwrap();
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(orbifold_instance_new(spec.as_ptr(), false, 0, &mut h), OrbifoldStatus::Ok);
        assert!(orbifold_last_error().is_null());
        let (mut m, mut n, mut labels) = (0, 0, 0);
        assert_eq!(orbifold_instance_orders(h, &mut m, &mut n), OrbifoldStatus::Ok);
        assert_eq!((m, n), (6, 3));
        assert_eq!(orbifold_instance_num_labels(h, &mut labels), OrbifoldStatus::Ok);
        assert_eq!(labels, 10);
        let mut dims = [0usize; 8];
        let mut len = 0;
        assert_eq!(orbifold_instance_simple_dims(h, dims.as_mut_ptr(), 8, &mut len), OrbifoldStatus::Ok);
        let mut sorted = dims[..len].to_vec();
        sorted.sort();
        assert_eq!(sorted, [1, 1, 2, 2, 2, 2, 3, 3]);
        let mut ok = false;
        assert_eq!(orbifold_instance_matches_double(h, &mut ok), OrbifoldStatus::Ok);
        assert!(ok);
        orbifold_instance_free(h);
    }
}

#[test]
fn error_codes() {
    let cases = [
        ("S3/gens:(1 2)", OrbifoldStatus::NotNormal),
        ("S4/center", OrbifoldStatus::Degenerate),
        ("Z2xZ2/index:2", OrbifoldStatus::BadSelector),
        ("Y3/center", OrbifoldStatus::Parse),
        ("S5/center", OrbifoldStatus::OrderCap),
        ("S3", OrbifoldStatus::Invalid),
    ];
    for (spec, want) in cases {
        let c = CString::new(spec).unwrap();
        let mut h = ptr::null_mut();
        let got = unsafe { orbifold_instance_new(c.as_ptr(), false, 0, &mut h) };
        assert_eq!(got, want, "{spec}");
        assert!(h.is_null());
        assert!(!last_error().is_empty());
    }
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { orbifold_instance_new(ptr::null(), false, 0, &mut h) }, OrbifoldStatus::NullPointer);
    let bad = [0xffu8, 0xfe, 0];
    assert_eq!(unsafe { orbifold_instance_new(bad.as_ptr().cast(), false, 0, &mut h) }, OrbifoldStatus::InvalidUtf8);
}

#[test]
fn report_json_is_deterministic() {
    let specs = [CString::new("Q8/center").unwrap()];
    let ptrs: Vec<_> = specs.iter().map(|s| s.as_ptr()).collect();
    let run = || unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(orbifold_verify(ptrs.as_ptr(), ptrs.len(), 3, &mut r), OrbifoldStatus::Ok);
        assert!(orbifold_report_passed(r));
        let mut s = ptr::null_mut();
        assert_eq!(orbifold_report_json(r, &mut s), OrbifoldStatus::Ok);
        let text = CStr::from_ptr(s).to_string_lossy().into_owned();
        orbifold_string_free(s);
        orbifold_report_free(r);
        text
    };
    let a = run();
    assert!(a.contains("\"schema_version\""));
    assert_eq!(a, run());
}

#[test]
fn version_and_null_frees() {
    let v = unsafe { CStr::from_ptr(orbifold_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    unsafe {
        orbifold_instance_free(ptr::null_mut());
        orbifold_report_free(ptr::null_mut());
        orbifold_string_free(ptr::null_mut());
        assert!(!orbifold_report_passed(ptr::null()));
    }
}
