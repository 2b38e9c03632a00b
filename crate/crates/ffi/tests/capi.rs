use std::ffi::{CStr, CString};
use std::ptr;

use k2lambda_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(k2l_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn group_handle_lifecycle() {
    // Z^2 / <(2, 0), (0, 6)>
    let rels = [2i64, 0, 0, 6];
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { k2l_group_new(2, rels.as_ptr(), 2, &mut g) }, K2lStatus::Ok);
    let (mut buf, mut len, mut free) = ([0i64; 4], 0usize, 9usize);
    let st = unsafe { k2l_group_invariant_factors(g, buf.as_mut_ptr(), buf.len(), &mut len, &mut free) };
    assert_eq!(st, K2lStatus::Ok);
    assert_eq!((&buf[..len], free), (&[2i64, 6][..], 0));

    let st = unsafe { k2l_group_invariant_factors(g, buf.as_mut_ptr(), 1, &mut len, &mut free) };
    assert_eq!((st, len), (K2lStatus::BufferTooSmall, 2));

    let rels2 = [6i64, 0, 0, 2];
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { k2l_group_new(2, rels2.as_ptr(), 2, &mut h) }, K2lStatus::Ok);
    let mut iso = false;
    assert_eq!(unsafe { k2l_group_is_isomorphic(g, h, &mut iso) }, K2lStatus::Ok);
    assert!(iso);
    unsafe {
        k2l_group_free(g);
        k2l_group_free(h);
        k2l_group_free(ptr::null_mut());
    }
}

#[test]
fn null_arguments_are_reported() {
    assert_eq!(unsafe { k2l_group_new(1, ptr::null(), 1, ptr::null_mut()) }, K2lStatus::NullPointer);
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { k2l_group_new(1, ptr::null(), 1, &mut g) }, K2lStatus::NullPointer);
    assert!(last_error().contains("null"));
}

#[test]
fn smith_factors_of_small_matrix() {
    let m = [2i64, 4, 6, 8];
    let (mut out, mut len) = ([0i64; 2], 0usize);
    assert_eq!(unsafe { k2l_smith_factors(2, 2, m.as_ptr(), out.as_mut_ptr(), 2, &mut len) }, K2lStatus::Ok);
    assert_eq!(&out[..len], &[2, 4]);
    assert_eq!(unsafe { k2l_smith_factors(0, 0, ptr::null(), ptr::null_mut(), 0, &mut len) }, K2lStatus::Ok);
    assert_eq!(len, 0);
}

#[test]
fn params_and_relative_k2() {
    assert_eq!(k2l_params_check(2, 1, 1), K2lStatus::InvalidParams);
    assert!(last_error().contains("q>2 required"));
    assert_eq!(k2l_params_check(2, 2, 2), K2lStatus::Ok);
    assert!(last_error().is_empty());

    let mut g = ptr::null_mut();
    assert_eq!(unsafe { k2l_ms_k2_truncated(2, 4, 64, &mut g) }, K2lStatus::Ok);
    let (mut buf, mut len, mut free) = ([0i64; 2], 0usize, 0usize);
    unsafe { k2l_group_invariant_factors(g, buf.as_mut_ptr(), 2, &mut len, &mut free) };
    assert_eq!((&buf[..len], free), (&[2i64][..], 0));
    unsafe { k2l_group_free(g) };

    assert_eq!(unsafe { k2l_ms_k2_truncated(4, 3, 64, &mut g) }, K2lStatus::TooLarge);
    assert_eq!(unsafe { k2l_ms_k2_truncated(2, 1, 64, &mut g) }, K2lStatus::InvalidArgument);
}

#[test]
fn config_report_and_verify() {
    let bad = CString::new("[[params]]\np = 2\ne = 1\nm = 1\n").unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { k2l_config_new(bad.as_ptr(), &mut c) }, K2lStatus::Config);
    assert!(last_error().contains("q>2 required"));

    let src = CString::new("suites = [\"ms-k2\"]\nrings = [{ kind = \"integers\" }]\n[[params]]\np = 3\ne = 1\nm = 1\n").unwrap();
    assert_eq!(unsafe { k2l_config_new(src.as_ptr(), &mut c) }, K2lStatus::Ok);
    let (mut failed, mut json) = (usize::MAX, ptr::null_mut());
    assert_eq!(unsafe { k2l_verify(c, &mut failed, &mut json) }, K2lStatus::Ok);
    assert_eq!(failed, 0);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
    assert!(text.contains("\"ms-k2\""));
    unsafe { k2l_string_free(json) };

    let mut report = ptr::null_mut();
    assert_eq!(unsafe { k2l_report_json(c, &mut report) }, K2lStatus::Ok);
    let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_string();
    assert!(text.contains("\"ring\": \"Z\""));
    unsafe {
        k2l_string_free(report);
        k2l_config_free(c);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/k2lambda.h")).unwrap();
    for name in [
        "k2l_last_error",
        "k2l_group_new",
        "k2l_group_free",
        "k2l_group_invariant_factors",
        "k2l_group_is_isomorphic",
        "k2l_smith_factors",
        "k2l_params_check",
        "k2l_ms_k2_truncated",
        "k2l_config_new",
        "k2l_config_free",
        "k2l_verify",
        "k2l_report_json",
        "k2l_string_free",
        "typedef struct K2lGroup K2lGroup",
        "K2L_STATUS_TOO_LARGE = 8",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    let dir = std::env::temp_dir().join(format!("k2lambda-header-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"k2lambda.h\"\nint main(void) { K2lGroup *g = 0; size_t n = 0, f = 0;\n\
         return k2l_group_invariant_factors(g, 0, 0, &n, &f) == K2L_STATUS_NULL_POINTER ? 0 : 1; }\n",
    )
    .unwrap();
    let status = std::process::Command::new(&cc)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I", concat!(env!("CARGO_MANIFEST_DIR"), "/include")])
        .arg(&src)
        .status();
    let _ = std::fs::remove_dir_all(&dir);
    match status {
        Ok(s) => assert!(s.success(), "header does not compile with {cc}"),
        Err(_) => eprintln!("no C compiler available; skipped"),
    }
}
