use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use qtop_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = qtop_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn take(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    qtop_string_free(p);
    s
}

const SIERPINSKI_BASE: &str = r#"{"n":2,"members":[{"n":2,"rows":[[0,1],[1]]}]}"#;
const SIERPINSKI_MONOID: &str =
    r#"{"space":{"n":2,"opens":[[],[1],[0,1]]},"mul":[[0,1],[1,1]],"unit":0,"unit_side":"two"}"#;

#[test]
fn golden_bundle_through_handles() {
    unsafe {
        let mut base = ptr::null_mut();
        assert_eq!(
            qtop_base_from_json(c(SIERPINSKI_BASE).as_ptr(), true, &mut base),
            QtopStatus::Ok
        );
        let mut rotund = false;
        assert_eq!(qtop_base_is_rotund(base, QtopRotund::Full, &mut rotund), QtopStatus::Ok);
        assert!(rotund);

        let mut bundle = ptr::null_mut();
        assert_eq!(
            qtop_bundle_synthesize(base, 0, QtopStrategy::Coarsest, &mut bundle),
            QtopStatus::Ok
        );
        assert!(qtop_bundle_all_passed(bundle));
        let mut values = vec![];
        for which in [
            QtopPremetric::Plain,
            QtopPremetric::Regularized,
            QtopPremetric::Semiregularized,
        ] {
            for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let mut v = QtopDyadic::default();
                assert_eq!(qtop_bundle_distance(bundle, which, x, y, &mut v), QtopStatus::Ok);
                values.push(v.num);
            }
        }
        assert_eq!(values, [0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        qtop_bundle_free(bundle);
        qtop_base_free(base);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut space = ptr::null_mut();
        assert_eq!(
            qtop_space_from_json(c("not json").as_ptr(), false, &mut space),
            QtopStatus::InvalidInput
        );
        assert!(space.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(
            qtop_space_from_json(ptr::null(), false, &mut space),
            QtopStatus::NullPointer
        );
        assert_eq!(last_error(), "json is null");

        let bad = [0x66u8, 0xff, 0];
        assert_eq!(
            qtop_space_from_json(bad.as_ptr().cast(), false, &mut space),
            QtopStatus::InvalidUtf8
        );

        let mut count = 0;
        assert_eq!(qtop_topology_count(9, &mut count), QtopStatus::OutOfRange);

        let mut base = ptr::null_mut();
        assert_eq!(
            qtop_base_from_json(c(SIERPINSKI_BASE).as_ptr(), true, &mut base),
            QtopStatus::Ok
        );
        let mut bundle = ptr::null_mut();
        assert_eq!(
            qtop_bundle_synthesize(base, 3, QtopStrategy::Finest, &mut bundle),
            QtopStatus::OutOfRange
        );
        assert!(last_error().contains("member 3"));
        qtop_base_free(base);
        assert_eq!(qtop_base_member_count(ptr::null()), 0);
    }
}

#[test]
fn space_and_monoid_calls() {
    unsafe {
        let mut space = ptr::null_mut();
        let doc = c(r#"{"n":2,"opens":[[],[1],[0,1]]}"#);
        assert_eq!(qtop_space_from_json(doc.as_ptr(), true, &mut space), QtopStatus::Ok);
        assert_eq!(qtop_space_size(space), 2);
        let mut out = ptr::null_mut();
        assert_eq!(qtop_space_classify_json(space, &mut out), QtopStatus::Ok);
        let flags: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(flags["T0"], true);
        assert_eq!(flags["T1"], false);
        qtop_space_free(space);

        let mut m = ptr::null_mut();
        assert_eq!(
            qtop_monoid_from_json(c(SIERPINSKI_MONOID).as_ptr(), true, &mut m),
            QtopStatus::Ok
        );
        let pts = [0usize, 1];
        assert_eq!(
            qtop_monoid_synthesize_json(m, true, pts.as_ptr(), 2, &mut out),
            QtopStatus::Ok
        );
        let mb: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(mb["side"], "left");
        // {0} is not open in the Sierpinski space.
        assert_eq!(
            qtop_monoid_synthesize_json(m, true, pts.as_ptr(), 1, &mut out),
            QtopStatus::InvalidInput
        );
        qtop_monoid_free(m);
    }
}

#[test]
fn suite_report_through_ffi() {
    unsafe {
        let mut out = ptr::null_mut();
        let mut passed = false;
        let st = qtop_suite_run_json(
            c("separations").as_ptr(),
            c("enumerated:3").as_ptr(),
            2,
            0,
            &mut out,
            &mut passed,
        );
        assert_eq!(st, QtopStatus::Ok);
        assert!(passed);
        let r: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(r["suite"], "separations");
        let st = qtop_suite_run_json(c("bogus").as_ptr(), c("catalog").as_ptr(), 1, 0, &mut out, &mut passed);
        assert_eq!(st, QtopStatus::InvalidInput);
    }
}

#[test]
fn version_is_nul_terminated() {
    let v = unsafe { CStr::from_ptr(qtop_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// `target/<profile>`, two levels above this test binary in `deps/`.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = crate_dir.join("include/qtop.h");
    assert!(header.is_file(), "build script writes the header");
    let lib = profile_dir().join("libqtop_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.is_file() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let exe = std::env::temp_dir().join(format!("qtop-ffi-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
