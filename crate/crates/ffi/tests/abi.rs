use std::ffi::CStr;
use std::ptr;

use latticecircle_ffi::*;

fn last_error() -> String {
    let p = lc_last_error_message();
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { lc_string_free(p) };
    s
}

#[test]
fn classify_handle_roundtrip() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { lc_classify(40, &mut h) }, LcStatus::Ok);
    assert_eq!(unsafe { lc_classification_len(h) }, 41);

    let mut row = LcRow::default();
    assert_eq!(
        unsafe { lc_classification_get(h, 39, &mut row) },
        LcStatus::Ok
    );
    assert_eq!((row.is_mc, row.r2_num, row.r2_den), (1, 425, 32));
    assert_eq!((row.surd_s, row.surd_d, row.surd_q), (5, 34, 8));

    assert_eq!(
        unsafe { lc_classification_get(h, 6, &mut row) },
        LcStatus::Ok
    );
    assert_eq!(
        (row.is_mc, row.source, row.r2_num, row.r2_den),
        (0, 4, 5, 2)
    );

    assert_eq!(
        unsafe { lc_classification_get(h, 4, &mut row) },
        LcStatus::Ok
    );
    assert_eq!(
        (
            row.has_impacting_index,
            row.impacting_index_exact,
            row.impacting_index
        ),
        (1, 1, 2)
    );

    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { lc_classification_radius_string(h, 40, &mut s) },
        LcStatus::Ok
    );
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), "√481/6");
    unsafe { lc_string_free(s) };

    assert_eq!(
        unsafe { lc_classification_get(h, 41, &mut row) },
        LcStatus::OutOfRange
    );
    assert!(last_error().contains("out of range"));
    unsafe { lc_classification_free(h) };
}

#[test]
fn null_pointers_are_reported() {
    assert_eq!(
        unsafe { lc_classify(3, ptr::null_mut()) },
        LcStatus::NullPointer
    );
    assert_eq!(unsafe { lc_classification_len(ptr::null()) }, 0);
    let mut row = LcRow::default();
    assert_eq!(
        unsafe { lc_classification_get(ptr::null(), 0, &mut row) },
        LcStatus::NullPointer
    );
    unsafe { lc_classification_free(ptr::null_mut()) };
    unsafe { lc_string_free(ptr::null_mut()) };
}

#[test]
fn count_and_special() {
    let (mut i, mut b) = (0u64, 0u64);
    assert_eq!(
        unsafe { lc_count_points(1, 2, 1, 2, 5, 2, &mut i, &mut b) },
        LcStatus::Ok
    );
    assert_eq!((i, b), (4, 8));
    assert_eq!(
        unsafe { lc_count_points(0, 1, 0, 1, 0, 1, &mut i, &mut b) },
        LcStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { lc_count_points(0, 0, 0, 1, 1, 1, &mut i, &mut b) },
        LcStatus::InvalidArgument
    );
    assert!(!last_error().is_empty());

    let mut v = 0u64;
    assert_eq!(unsafe { lc_special_f(10, &mut v) }, LcStatus::Ok);
    assert_eq!(v, 332);
    assert_eq!(unsafe { lc_special_g(20, &mut v) }, LcStatus::Ok);
    assert_eq!(v, 1257);
    assert_eq!(
        unsafe { lc_special_g(0, &mut v) },
        LcStatus::InvalidArgument
    );
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(lc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_api() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/latticecircle.h"
    ))
    .unwrap();
    for name in [
        "lc_classify",
        "lc_classification_len",
        "lc_classification_get",
        "lc_classification_radius_string",
        "lc_classification_free",
        "lc_count_points",
        "lc_special_f",
        "lc_special_g",
        "lc_last_error_message",
        "lc_string_free",
        "typedef struct LcClassification LcClassification",
        "LC_STATUS_OUT_OF_RANGE = 3",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
