use std::ffi::{CStr, CString};
use std::ptr;

use ringgroom_ffi::*;

#[test]
fn build_verify_and_round_trip() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(rg_build(11, 8, 3, true, 0, &mut d), RgStatus::Ok);
        let mut r = RgReport::default();
        assert_eq!(rg_decomposition_verify(d, &mut r), RgStatus::Ok);
        assert!(r.valid);
        assert_eq!(r.drop_cost, 55);
        let mut wl = 0;
        assert_eq!(rg_wavecost_mon(11, 8, 3, &mut wl), RgStatus::Ok);
        assert_eq!(r.wavecost as u64, wl);

        let mut json = ptr::null_mut();
        assert_eq!(rg_decomposition_to_json(d, &mut json), RgStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(rg_decomposition_from_json(json, &mut back), RgStatus::Ok);
        let mut r2 = RgReport::default();
        rg_decomposition_verify(back, &mut r2);
        assert_eq!(r, r2);
        rg_string_free(json);
        rg_decomposition_free(back);
        rg_decomposition_free(d);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(rg_build(5, 6, 1, false, 0, &mut d), RgStatus::InvalidInstance);
        assert!(d.is_null());
        let msg = CStr::from_ptr(rg_last_error()).to_str().unwrap();
        assert!(msg.contains("exceeds"), "{msg}");

        assert_eq!(rg_build(5, 2, 1, false, 0, ptr::null_mut()), RgStatus::NullPointer);
        let bad = CString::new("{not json").unwrap();
        assert_eq!(rg_decomposition_from_json(bad.as_ptr(), &mut d), RgStatus::ParseError);
        let mut r = RgReport::default();
        assert_eq!(rg_decomposition_verify(ptr::null(), &mut r), RgStatus::NullPointer);

        let mut c = 0;
        assert_eq!(rg_cost_two_period(7, 4, 2, &mut c), RgStatus::Ok);
        assert!(rg_last_error().is_null());
        rg_decomposition_free(ptr::null_mut());
        rg_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_json_decomposition_reports_violations() {
    unsafe {
        let text = CString::new(r#"{"n":3,"v":0,"cprime":1,"wavelengths":[[[[0,1],[1,2]]]]}"#).unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(rg_decomposition_from_json(text.as_ptr(), &mut d), RgStatus::Ok);
        let mut r = RgReport::default();
        rg_decomposition_verify(d, &mut r);
        assert!(!r.valid);
        assert_eq!(r.violations, 1);
        rg_decomposition_free(d);
    }
}

#[test]
fn bounds_and_oracle() {
    unsafe {
        let mut tb = RgTriangleBound::default();
        assert_eq!(rg_triangle_lower_bound(7, 2, &mut tb), RgStatus::Ok);
        assert_eq!(tb.delta_min, 0);
        let mut c = 0;
        assert_eq!(rg_oracle_min_cost(7, 5, 1, 0, &mut c), RgStatus::Ok);
        assert_eq!(c, 26);
        assert_eq!(rg_oracle_min_cost(7, 5, 1, 1, &mut c), RgStatus::BudgetExhausted);
        assert!(c >= 26);
        assert_eq!(rg_oracle_min_cost(12, 5, 1, 0, &mut c), RgStatus::Unsupported);
    }
}
