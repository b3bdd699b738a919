use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qhs_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let owned = CStr::from_ptr(s).to_str().unwrap().to_owned();
    qhs_string_free(s);
    owned
}

unsafe fn last_error() -> String {
    let p = qhs_last_error();
    assert!(!p.is_null(), "expected an error message");
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

struct Handle(*mut QhsRootSums);

impl Handle {
    fn new(n: u32) -> Self {
        let mut h = ptr::null_mut();
        assert_eq!(unsafe { qhs_root_sums_new(n, &mut h) }, QhsStatus::Ok);
        Handle(h)
    }
}

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { qhs_root_sums_free(self.0) }
    }
}

#[test]
fn handle_lifecycle_and_order() {
    let h = Handle::new(7);
    assert_eq!(unsafe { qhs_root_sums_order(h.0) }, 7);
    assert_eq!(unsafe { qhs_root_sums_order(ptr::null()) }, 0);
    unsafe { qhs_root_sums_free(ptr::null_mut()) };
    unsafe { qhs_string_free(ptr::null_mut()) };
}

#[test]
fn rejects_order_below_two() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { qhs_root_sums_new(1, &mut h) }, QhsStatus::InvalidArgument);
    assert!(h.is_null());
    assert!(unsafe { last_error() }.contains("1"));
}

#[test]
fn single_index_values() {
    let cases = [(5, 2, "0"), (3, 3, "0"), (4, 5, "-7/32"), (6, 6, "23485/12096")];
    for (n, s, want) in cases {
        let h = Handle::new(n);
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { qhs_root_sums_single(h.0, s, &mut out) }, QhsStatus::Ok);
        let got = unsafe { take(out) };
        let want: qhs::exact::Rational = want.parse().unwrap();
        assert_eq!(got.parse::<qhs::exact::Rational>().unwrap(), want, "n={n} s={s}");
    }
}

#[test]
fn compute_dp_matches_brute() {
    let h = Handle::new(6);
    let idx = [1u32, 2, 1];
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(qhs_root_sums_compute(h.0, idx.as_ptr(), idx.len(), &mut a), QhsStatus::Ok);
        assert_eq!(qhs_root_sums_compute_brute(h.0, idx.as_ptr(), idx.len(), 0, &mut b), QhsStatus::Ok);
        let (a, b) = (take(a), take(b));
        assert!(a.starts_with("{\"n\":6,\"coeffs\":["), "{a}");
        assert_eq!(a, b);
    }
}

#[test]
fn rational_and_not_rational() {
    let h = Handle::new(4);
    let mut out = ptr::null_mut();
    unsafe {
        let ones = [1u32, 1];
        assert_eq!(qhs_root_sums_compute_rational(h.0, ones.as_ptr(), 2, &mut out), QhsStatus::Ok);
        assert_eq!(take(out), "1");

        let h5 = Handle::new(5);
        let mixed = [1u32, 2];
        out = ptr::null_mut();
        assert_eq!(qhs_root_sums_compute_rational(h5.0, mixed.as_ptr(), 2, &mut out), QhsStatus::NotRational);
        assert!(out.is_null());
    }
}

#[test]
fn error_codes() {
    let h = Handle::new(5);
    let mut out = ptr::null_mut();
    unsafe {
        let zero = [0u32, 1];
        assert_eq!(qhs_root_sums_compute(h.0, zero.as_ptr(), 2, &mut out), QhsStatus::InvalidArgument);
        assert!(last_error().contains("invalid index"));

        let idx = [1u32];
        assert_eq!(qhs_root_sums_compute(ptr::null(), idx.as_ptr(), 1, &mut out), QhsStatus::NullPointer);
        assert_eq!(qhs_root_sums_compute(h.0, ptr::null(), 1, &mut out), QhsStatus::NullPointer);
        assert_eq!(qhs_root_sums_compute(h.0, idx.as_ptr(), 1, ptr::null_mut()), QhsStatus::NullPointer);

        let big = Handle::new(40);
        let deep = [1u32; 5];
        assert_eq!(qhs_root_sums_compute_brute(big.0, deep.as_ptr(), 5, 1000, &mut out), QhsStatus::TooLarge);
        assert!(last_error().contains("cap 1000"));

        // A successful call clears the previous message.
        assert_eq!(qhs_root_sums_single(h.0, 2, &mut out), QhsStatus::Ok);
        qhs_string_free(out);
        assert!(qhs_last_error().is_null());
    }
}

#[test]
fn cyclic_sums() {
    let h = Handle::new(6);
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(qhs_root_sums_cyclic_twos(h.0, 6, 2, &mut out), QhsStatus::Ok);
        let twos = take(out);
        let direct = qhs::harmonic::RootSums::new(6).unwrap().cyclic_sum_twos(6, 2).unwrap();
        assert_eq!(twos, direct.to_string());

        assert_eq!(qhs_root_sums_cyclic_ones(h.0, 3, 2, &mut out), QhsStatus::Ok);
        let ones = take(out);
        let direct = qhs::harmonic::RootSums::new(6).unwrap().cyclic_sum_ones(3, 2).unwrap();
        assert_eq!(ones, direct.to_string());
    }
}

#[test]
fn rational_q() {
    let q = CString::new("1/3").unwrap();
    let idx = [1u32, 2];
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(qhs_rational_q_sum(q.as_ptr(), 5, idx.as_ptr(), 2, &mut out), QhsStatus::Ok);
        assert_eq!(take(out), "73417833/8652800");

        let bad = CString::new("one third").unwrap();
        assert_eq!(qhs_rational_q_sum(bad.as_ptr(), 5, idx.as_ptr(), 2, &mut out), QhsStatus::InvalidArgument);
    }
}

#[test]
fn verify_report() {
    let suite = CString::new("table").unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(qhs_verify(suite.as_ptr(), 6, 2, 3, 4, 2, &mut out), QhsStatus::Ok);
        let report = qhs::verify::VerificationReport::from_json(&take(out)).unwrap();
        assert!(report.all_expected());
        assert_eq!(report.cases.len(), 5 * 4);

        let bogus = CString::new("nope").unwrap();
        assert_eq!(qhs_verify(bogus.as_ptr(), 6, 2, 3, 4, 1, &mut out), QhsStatus::InvalidArgument);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(qhs_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/qhs.h");
    let text = std::fs::read_to_string(header).unwrap();
    for sym in ["qhs_root_sums_new", "qhs_root_sums_free", "qhs_string_free", "qhs_verify", "QHS_STATUS_TOO_LARGE"] {
        assert!(text.contains(sym), "header lacks {sym}");
    }
    let probe = std::env::temp_dir().join(format!("qhs_header_probe_{}.c", std::process::id()));
    std::fs::write(&probe, format!("#include \"{header}\"\nint main(void) {{ return QHS_STATUS_OK; }}\n")).unwrap();
    let status = std::process::Command::new("cc").arg("-fsyntax-only").arg("-Wall").arg("-Werror").arg(&probe).status();
    let _ = std::fs::remove_file(&probe);
    match status {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler found; skipped header compile check"),
    }
}
