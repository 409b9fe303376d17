//! Exercise the C surface the way a foreign caller would: through raw
//! pointers and status codes.

use std::ffi::{CStr, CString};
use std::ptr;

use permgrid_ffi::*;

fn cstr(text: &str) -> CString {
    CString::new(text).unwrap()
}

unsafe fn take_string(ptr: *mut std::ffi::c_char) -> String {
    assert!(!ptr.is_null());
    let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
    pg_string_free(ptr);
    s
}

#[test]
fn parse_member_and_free() {
    unsafe {
        let mut class: *mut PgClass = ptr::null_mut();
        let status = pg_class_parse(cstr("merge(Av(21),Av(12))").as_ptr(), &mut class);
        assert_eq!(status, PgStatus::Ok);

        let mut canonical: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(pg_class_canonical(class, &mut canonical), PgStatus::Ok);
        assert_eq!(take_string(canonical), "merge(Av(21),Av(12))");

        let mut member = false;
        assert_eq!(
            pg_class_member(class, cstr("321").as_ptr(), 0, &mut member),
            PgStatus::Ok
        );
        assert!(member);
        assert_eq!(
            pg_class_member(class, cstr("2143").as_ptr(), 0, &mut member),
            PgStatus::Ok
        );
        assert!(!member);
        // ε is a member of every nonempty class
        assert_eq!(
            pg_class_member(class, cstr("").as_ptr(), 0, &mut member),
            PgStatus::Ok
        );
        assert!(member);

        pg_class_free(class);
    }
}

#[test]
fn counts_and_basis_json() {
    unsafe {
        let mut class: *mut PgClass = ptr::null_mut();
        assert_eq!(
            pg_class_parse(cstr("Av(321)").as_ptr(), &mut class),
            PgStatus::Ok
        );

        let mut json: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(pg_class_count_json(class, 6, 0, &mut json), PgStatus::Ok);
        assert_eq!(
            take_string(json),
            r#"{"class":"Av(321)","counts":["1","1","2","5","14","42","132"],"max_len":6}"#
        );
        pg_class_free(class);

        let mut merged: *mut PgClass = ptr::null_mut();
        assert_eq!(
            pg_class_parse(cstr("merge(Av(21),Av(12))").as_ptr(), &mut merged),
            PgStatus::Ok
        );
        let mut basis: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(pg_class_basis_json(merged, 5, 0, &mut basis), PgStatus::Ok);
        assert_eq!(take_string(basis), r#"["2143","3412"]"#);
        pg_class_free(merged);
    }
}

#[test]
fn merge_member_with_witness() {
    unsafe {
        let mut inc: *mut PgClass = ptr::null_mut();
        let mut dec: *mut PgClass = ptr::null_mut();
        assert_eq!(
            pg_class_parse(cstr("Av(21)").as_ptr(), &mut inc),
            PgStatus::Ok
        );
        assert_eq!(
            pg_class_parse(cstr("Av(12)").as_ptr(), &mut dec),
            PgStatus::Ok
        );

        let mut member = false;
        let mut witness: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            pg_merge_member(inc, dec, cstr("321").as_ptr(), 0, &mut member, &mut witness),
            PgStatus::Ok
        );
        assert!(member);
        let w = take_string(witness);
        assert_eq!(w.len(), 3);
        assert!(w.chars().all(|c| c == 'R' || c == 'B'));

        pg_class_free(inc);
        pg_class_free(dec);
    }
}

#[test]
fn numeric_entry_points() {
    unsafe {
        let mut value = 0.0f64;
        assert_eq!(pg_merge_gr_bound(1.0, 8.0, &mut value), PgStatus::Ok);
        assert!((value - (9.0 + 4.0 * 2.0f64.sqrt())).abs() < 1e-12);

        assert_eq!(pg_staircase_gr(1.0, 1.0, 2, &mut value), PgStatus::Ok);
        assert!((value - 3.0).abs() < 1e-12);

        let mut eigenvalues = [0.0f64; 3];
        assert_eq!(
            pg_toeplitz_eigenvalues(1.0, 2.0, 1.0, 3, eigenvalues.as_mut_ptr()),
            PgStatus::Ok
        );
        assert!((eigenvalues[0] - (2.0 + 2.0f64.sqrt())).abs() < 1e-12);
        assert!((eigenvalues[1] - 2.0).abs() < 1e-12);
        assert!((eigenvalues[2] - (2.0 - 2.0f64.sqrt())).abs() < 1e-12);
    }
}

#[test]
fn error_reporting() {
    unsafe {
        let mut class: *mut PgClass = ptr::null_mut();
        let status = pg_class_parse(cstr("Av(321").as_ptr(), &mut class);
        assert_eq!(status, PgStatus::ParseError);
        let message = CStr::from_ptr(pg_last_error_message()).to_str().unwrap();
        assert!(message.contains("parse error"), "{message}");

        // invalid permutation text
        let mut ok: *mut PgClass = ptr::null_mut();
        assert_eq!(
            pg_class_parse(cstr("Av(21)").as_ptr(), &mut ok),
            PgStatus::Ok
        );
        let mut member = false;
        assert_eq!(
            pg_class_member(ok, cstr("0x").as_ptr(), 0, &mut member),
            PgStatus::InvalidPermutation
        );

        // null arguments
        assert_eq!(
            pg_class_member(ptr::null(), cstr("1").as_ptr(), 0, &mut member),
            PgStatus::NullArgument
        );

        // budget exhaustion surfaces as its own status
        let mut dec: *mut PgClass = ptr::null_mut();
        assert_eq!(
            pg_class_parse(cstr("Av(12)").as_ptr(), &mut dec),
            PgStatus::Ok
        );
        let mut witness: *mut std::ffi::c_char = ptr::null_mut();
        let status = pg_merge_member(ok, dec, cstr("4321").as_ptr(), 3, &mut member, &mut witness);
        assert_eq!(status, PgStatus::BudgetExceeded);

        pg_class_free(ok);
        pg_class_free(dec);
        pg_class_free(class); // null-safe: parse failed, handle untouched
    }
}
