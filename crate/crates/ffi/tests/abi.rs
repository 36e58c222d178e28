use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use mgn_euler_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let v = CStr::from_ptr(s).to_str().unwrap().to_string();
    mgn_string_free(s);
    v
}

#[test]
fn values_through_the_handle() {
    unsafe {
        let e = mgn_engine_new();
        assert!(!e.is_null());
        let mut out = ptr::null_mut();
        assert_eq!(mgn_compute(e, MGN_KIND_CHI_BAR, MGN_ROUTE_DEFAULT, 1, 1, &mut out), MgnStatus::Ok);
        assert_eq!(take(out), "5/12");
        assert_eq!(mgn_compute(e, MGN_KIND_E_BAR, MGN_ROUTE_DIRECT, 2, 0, &mut out), MgnStatus::Ok);
        assert_eq!(take(out), "6");
        assert_eq!(mgn_compute(e, MGN_KIND_E_OPEN, MGN_ROUTE_DEFAULT, 3, 2, &mut out), MgnStatus::Ok);
        assert_eq!(take(out), "8");
        assert_eq!(mgn_compute_all_routes(e, MGN_KIND_CHI_BAR, 2, 0, &mut out), MgnStatus::Ok);
        assert!(take(out).contains("119/1440"));
        assert!(mgn_last_error().is_null());
        mgn_engine_free(e);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let e = mgn_engine_new();
        let mut out = ptr::null_mut();
        assert_eq!(
            mgn_compute(e, MGN_KIND_CHI_OPEN, MGN_ROUTE_DEFAULT, 0, 2, &mut out),
            MgnStatus::InvalidArgument
        );
        assert!(out.is_null());
        assert!(take(mgn_last_error()).contains("not stable"));
        assert_eq!(mgn_compute(e, 9, MGN_ROUTE_DEFAULT, 1, 1, &mut out), MgnStatus::InvalidArgument);
        assert_eq!(
            mgn_compute(e, MGN_KIND_CHI_OPEN, MGN_ROUTE_WICK, 1, 1, &mut out),
            MgnStatus::InvalidArgument
        );
        assert_eq!(
            mgn_compute(ptr::null(), MGN_KIND_CHI_OPEN, MGN_ROUTE_DEFAULT, 1, 1, &mut out),
            MgnStatus::NullPointer
        );
        assert_eq!(
            mgn_compute(e, MGN_KIND_CHI_OPEN, MGN_ROUTE_DEFAULT, 1, 1, ptr::null_mut()),
            MgnStatus::NullPointer
        );
        mgn_engine_free(e);
        mgn_engine_free(ptr::null_mut());
        mgn_string_free(ptr::null_mut());
    }
}

#[test]
fn small_windows_are_reported() {
    unsafe {
        let mut e = ptr::null_mut();
        assert_eq!(mgn_engine_new_with_windows(4, 2, 3, 2, &mut e), MgnStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(
            mgn_compute(e, MGN_KIND_E_BAR, MGN_ROUTE_GENFUN, 2, 2, &mut out),
            MgnStatus::WindowExceeded
        );
        mgn_engine_free(e);
    }
}

#[test]
fn table_and_verify_with_cache() {
    let dir = std::env::temp_dir().join(format!("mgn-euler-ffi-{}", std::process::id()));
    unsafe {
        let e = mgn_engine_new();
        let d = CString::new(dir.to_str().unwrap()).unwrap();
        assert_eq!(mgn_engine_set_cache_dir(e, d.as_ptr()), MgnStatus::Ok);
        let mut out = ptr::null_mut();
        let mut diffs = usize::MAX;
        assert_eq!(mgn_table(e, 1, MGN_FORMAT_CSV, &mut out, &mut diffs), MgnStatus::Ok);
        assert_eq!(diffs, 0);
        assert!(take(out).starts_with("g,n,kind,value,route\n"));
        assert!(std::fs::read_dir(&dir).unwrap().count() >= 64);
        assert_eq!(mgn_table(e, 7, MGN_FORMAT_CSV, &mut out, &mut diffs), MgnStatus::InvalidArgument);

        let mut passed = false;
        assert_eq!(mgn_verify(e, MGN_VERIFY_QUICK, &mut out, &mut passed), MgnStatus::Ok);
        assert!(passed, "{}", take(out));
        mgn_engine_free(e);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(mgn_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_surface() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/mgn_euler.h")).unwrap();
    for sym in [
        "typedef struct MgnEngine MgnEngine;",
        "MGN_STATUS_CONSISTENCY = 7",
        "mgn_engine_new(void)",
        "mgn_compute(",
        "mgn_table(",
        "mgn_verify(",
        "mgn_last_error(void)",
        "mgn_string_free(",
    ] {
        assert!(h.contains(sym), "header lacks {sym}");
    }
}

/// Links a small C program against the static library when a C compiler is
/// available.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libmgn_euler_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C toolchain or static library; skipping");
        return;
    }
    let tmp = std::env::temp_dir().join(format!("mgn-euler-c-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "mgn_euler.h"
int main(void) {
    MgnEngine *e = mgn_engine_new();
    char *v = NULL;
    if (mgn_compute(e, MGN_KIND_CHI_BAR, MGN_ROUTE_WICK, 2, 0, &v) != MGN_STATUS_OK) return 1;
    printf("%s\n", v);
    mgn_string_free(v);
    if (mgn_compute(e, MGN_KIND_E_BAR, MGN_ROUTE_DEFAULT, 0, 1, &v) != MGN_STATUS_INVALID_ARGUMENT) return 2;
    char *msg = mgn_last_error();
    if (msg == NULL) return 3;
    mgn_string_free(msg);
    mgn_engine_free(e);
    return 0;
}
"#,
    )
    .unwrap();
    let bin: PathBuf = tmp.join("main");
    let st = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "119/1440");
    std::fs::remove_dir_all(&tmp).unwrap();
}
