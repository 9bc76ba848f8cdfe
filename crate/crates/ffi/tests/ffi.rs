use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use exunit_ffi::*;

fn parse(text: &str) -> *mut ExuPoly {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { exu_poly_parse(c.as_ptr(), &mut p) }, ExuStatus::Ok);
    p
}

fn field(text: &str) -> *mut ExuField {
    let g = parse(text);
    let mut k = ptr::null_mut();
    let status = unsafe { exu_field_new(g, &mut k) };
    unsafe { exu_poly_free(g) };
    assert_eq!(status, ExuStatus::Ok);
    k
}

fn last_error() -> String {
    let p = exu_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn poly_round_trip() {
    let g = parse("1,-42,39,1");
    let mut d = 0i64;
    assert_eq!(unsafe { exu_poly_degree(g, &mut d) }, ExuStatus::Ok);
    assert_eq!(d, 3);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { exu_poly_to_string(g, &mut s) }, ExuStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), "1,-42,39,1");
    unsafe {
        exu_string_free(s);
        exu_poly_free(g);
    }
}

#[test]
fn parse_errors_set_last_error() {
    let bad = CString::new("1,0").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { exu_poly_parse(bad.as_ptr(), &mut p) },
        ExuStatus::Parse
    );
    assert!(p.is_null());
    assert!(last_error().contains("byte 2"));
    assert_eq!(
        unsafe { exu_poly_parse(ptr::null(), &mut p) },
        ExuStatus::NullPointer
    );
}

#[test]
fn reducible_field_rejected() {
    let g = parse("-1,0,1");
    let mut k = ptr::null_mut();
    assert_eq!(
        unsafe { exu_field_new(g, &mut k) },
        ExuStatus::InvalidPolynomial
    );
    assert!(k.is_null());
    assert!(last_error().contains("not irreducible"));
    unsafe { exu_poly_free(g) };
}

#[test]
fn splitting_and_certificates() {
    let k = field("-3,1,1");
    let mut s = ExuSplit::Inconclusive;
    assert_eq!(
        unsafe { exu_splits_completely(k, 3, &mut s) },
        ExuStatus::Ok
    );
    assert_eq!(s, ExuSplit::Split);
    let mut c = ExuCertify::Inconclusive;
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { exu_certify(k, &mut c, &mut report) },
        ExuStatus::Ok
    );
    assert_eq!(c, ExuCertify::Certificate);
    let json = unsafe { CStr::from_ptr(report) }
        .to_str()
        .unwrap()
        .to_owned();
    assert!(json.contains("\"kind\":\"certificate\""));
    unsafe { exu_string_free(report) };
    assert_eq!(
        unsafe { exu_splits_completely(k, 4, &mut s) },
        ExuStatus::InvalidArgument
    );
    unsafe { exu_field_free(k) };

    let k = field("1,-42,39,1");
    assert_eq!(
        unsafe { exu_certify(k, &mut c, ptr::null_mut()) },
        ExuStatus::Ok
    );
    assert_eq!(c, ExuCertify::DegreeDivisibleBy3);
    unsafe { exu_field_free(k) };

    let k = field("-1,-1,1");
    assert_eq!(
        unsafe { exu_certify(k, &mut c, ptr::null_mut()) },
        ExuStatus::Ok
    );
    assert_eq!(c, ExuCertify::NotSplit);
    unsafe { exu_field_free(k) };
}

#[test]
fn exceptional_units_and_cycle_bounds() {
    let k = field("1,1,-4,1");
    let mut yes = false;
    let a = CString::new("0,1,0").unwrap();
    assert_eq!(
        unsafe { exu_is_exceptional_unit(k, a.as_ptr(), &mut yes) },
        ExuStatus::Ok
    );
    assert!(yes);
    let two = CString::new("2,0,0").unwrap();
    assert_eq!(
        unsafe { exu_is_exceptional_unit(k, two.as_ptr(), &mut yes) },
        ExuStatus::Ok
    );
    assert!(!yes);
    let mut buf = [0u32; 6];
    let mut len = 99;
    assert_eq!(
        unsafe { exu_cycle_bound(k, buf.as_mut_ptr(), 6, &mut len) },
        ExuStatus::Ok
    );
    assert_eq!(len, 0);
    unsafe { exu_field_free(k) };

    let k = field("-3,1,1");
    assert_eq!(
        unsafe { exu_cycle_bound(k, buf.as_mut_ptr(), 6, &mut len) },
        ExuStatus::Ok
    );
    assert_eq!(&buf[..len], &[1, 2, 4]);
    assert_eq!(
        unsafe { exu_cycle_bound(k, buf.as_mut_ptr(), 2, &mut len) },
        ExuStatus::BufferTooSmall
    );
    assert_eq!(len, 3);
    unsafe { exu_field_free(k) };
}

#[test]
fn census_counts() {
    let (mut hits, mut open) = (9, 9);
    assert_eq!(
        unsafe { exu_search_count(2, 10, 3, 2, &mut hits, &mut open) },
        ExuStatus::Ok
    );
    assert_eq!((hits, open), (0, 0));
    assert_eq!(
        unsafe { exu_search_count(3, 45, 3, 2, &mut hits, &mut open) },
        ExuStatus::Ok
    );
    assert_eq!(hits, 2);
    assert_eq!(
        unsafe { exu_search_count(0, 1, 3, 1, &mut hits, &mut open) },
        ExuStatus::InvalidArgument
    );
}

#[test]
fn header_compiles_as_c() {
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let src = std::env::temp_dir().join(format!("exunit_header_{}.c", std::process::id()));
    std::fs::write(
        &src,
        "#include \"exunit.h\"\nint main(void) { ExuPoly *p = 0; return exu_poly_parse(\"1\", &p) == EXU_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args([
            "-std=c99",
            "-Wall",
            "-Werror",
            "-fsyntax-only",
            "-I",
            include,
        ])
        .arg(&src)
        .status()
        .expect("a C compiler is available");
    let _ = std::fs::remove_file(&src);
    assert!(status.success());
}
