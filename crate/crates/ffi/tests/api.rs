use std::ffi::{CStr, CString};
use std::ptr;

use arrangement_ffi::*;

const EXAMPLE: &str = r#"{"dim": 2, "hyperplanes": [
    {"normal": [1, 0], "offset": 0},
    {"normal": [1, 0], "offset": 1},
    {"normal": [0, 1], "offset": 0}
]}"#;

fn load(json: &str) -> Result<*mut ArrArrangement, (ArrStatus, String)> {
    let text = CString::new(json).unwrap();
    let mut h = ptr::null_mut();
    let status = unsafe { arr_arrangement_from_json(text.as_ptr(), &mut h) };
    if status == ArrStatus::Ok {
        Ok(h)
    } else {
        assert!(h.is_null());
        Err((status, last_error()))
    }
}

fn last_error() -> String {
    let p = arr_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn example_queries() {
    let h = load(EXAMPLE).unwrap();
    unsafe {
        let mut n = 0usize;
        assert_eq!(arr_arrangement_dim(h, &mut n), ArrStatus::Ok);
        assert_eq!(n, 2);
        assert_eq!(arr_arrangement_len(h, &mut n), ArrStatus::Ok);
        assert_eq!(n, 3);

        let mut coeffs = [0i64; 3];
        let mut len = 0usize;
        assert_eq!(arr_arrangement_char_poly(h, coeffs.as_mut_ptr(), 3, &mut len), ArrStatus::Ok);
        assert_eq!((len, coeffs), (3, [2, -3, 1]));
        assert_eq!(arr_arrangement_char_poly(h, ptr::null_mut(), 0, &mut len), ArrStatus::BufferTooSmall);
        assert_eq!(len, 3);

        let mut r = 0u64;
        assert_eq!(arr_arrangement_regions(h, &mut r), ArrStatus::Ok);
        assert_eq!(r, 6);
        assert_eq!(arr_arrangement_ff_count(h, 5, 1_000_000, &mut r), ArrStatus::Ok);
        assert_eq!(r, 12);
        assert_eq!(arr_arrangement_ff_count(h, 1009, 1000, &mut r), ArrStatus::BudgetExceeded);
        assert!(last_error().contains("budget"));
        assert_eq!(arr_arrangement_ff_count(h, 4, 1000, &mut r), ArrStatus::BadPrime);

        let mut s = ptr::null_mut();
        assert_eq!(arr_arrangement_classify_json(h, &mut s), ArrStatus::Ok);
        let report: &str = CStr::from_ptr(s).to_str().unwrap();
        assert_eq!(report.matches("\"class_id\"").count(), 10);
        arr_string_free(s);
        arr_arrangement_free(h);
    }
}

#[test]
fn prime_field_handle() {
    let h = load(r#"{"dim": 1, "field": {"p": 7}, "hyperplanes": [{"normal": [1], "offset": 3}]}"#).unwrap();
    unsafe {
        let mut r = 0u64;
        assert_eq!(arr_arrangement_ff_count(h, 0, 100, &mut r), ArrStatus::Ok);
        assert_eq!(r, 6);
        assert_eq!(arr_arrangement_ff_count(h, 11, 100, &mut r), ArrStatus::BadPrime);
        arr_arrangement_free(h);
    }
}

#[test]
fn errors_are_reported() {
    let (status, msg) = load(r#"{"dim": 2, "hyperplanes": [{"normal": [0, 0], "offset": 1}]}"#).unwrap_err();
    assert_eq!(status, ArrStatus::ParseError);
    assert_eq!(msg, "hyperplanes[0].normal: zero normal vector");
    let (status, _) = load("{").unwrap_err();
    assert_eq!(status, ArrStatus::ParseError);

    let h = load(r#"{"dim": 2, "hyperplanes": [{"normal": [1, 0], "offset": 0}]}"#).unwrap();
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(arr_arrangement_classify_json(h, &mut s), ArrStatus::NotEssential);
        assert!(s.is_null());
        arr_arrangement_free(h);
    }
}

#[test]
fn null_pointers() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(arr_arrangement_from_json(ptr::null(), &mut h), ArrStatus::NullPointer);
        let mut n = 0usize;
        assert_eq!(arr_arrangement_dim(ptr::null(), &mut n), ArrStatus::NullPointer);
        assert_eq!(arr_arrangement_len(ptr::null(), ptr::null_mut()), ArrStatus::NullPointer);
        arr_arrangement_free(ptr::null_mut());
        arr_string_free(ptr::null_mut());
    }
    let bytes = [0xffu8, 0xfe, 0];
    let mut h = ptr::null_mut();
    let status = unsafe { arr_arrangement_from_json(bytes.as_ptr().cast(), &mut h) };
    assert_eq!(status, ArrStatus::InvalidUtf8);
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/arrangement.h")).unwrap();
    for name in [
        "arr_arrangement_from_json",
        "arr_arrangement_free",
        "arr_arrangement_dim",
        "arr_arrangement_len",
        "arr_arrangement_char_poly",
        "arr_arrangement_regions",
        "arr_arrangement_ff_count",
        "arr_arrangement_classify_json",
        "arr_string_free",
        "arr_last_error",
        "typedef struct ArrArrangement ArrArrangement",
        "ARR_STATUS_BUDGET_EXCEEDED = 6",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let status = std::process::Command::new(cc)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", "-I", dir, "-"])
        .stdin(std::process::Stdio::piped())
        .spawn()
        .and_then(|mut child| {
            use std::io::Write;
            child.stdin.take().unwrap().write_all(b"#include \"arrangement.h\"\nint main(void) { return 0; }\n")?;
            child.wait()
        })
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| std::process::Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}
