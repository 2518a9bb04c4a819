use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use pircon_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(pircon_last_error()) }.to_string_lossy().into_owned()
}

fn from_json(text: &str) -> (PirconStatus, *mut PirconPoset) {
    let json = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { pircon_poset_from_json(json.as_ptr(), &mut out) };
    (status, out)
}

const DIAMOND: &str = r#"{"name":"b2","elements":["0","a","b","ab"],"covers":[[0,1],[0,2],[1,3],[2,3]]}"#;

#[test]
fn json_round_trip_and_queries() {
    let (status, p) = from_json(DIAMOND);
    assert_eq!(status, PirconStatus::Ok);
    let mut len = 0;
    assert_eq!(unsafe { pircon_poset_len(p, &mut len) }, PirconStatus::Ok);
    assert_eq!(len, 4);

    let mut cmp = PirconComparison::Equal;
    unsafe {
        assert_eq!(pircon_poset_compare(p, 0, 1, &mut cmp), PirconStatus::Ok);
        assert_eq!(cmp, PirconComparison::CoveredBy);
        pircon_poset_compare(p, 0, 3, &mut cmp);
        assert_eq!(cmp, PirconComparison::Less);
        pircon_poset_compare(p, 1, 2, &mut cmp);
        assert_eq!(cmp, PirconComparison::Incomparable);
        pircon_poset_compare(p, 3, 1, &mut cmp);
        assert_eq!(cmp, PirconComparison::Covers);
        assert_eq!(pircon_poset_compare(p, 0, 9, &mut cmp), PirconStatus::IndexOutOfRange);
    }

    let mut needed = 0;
    assert_eq!(unsafe { pircon_poset_to_json(p, ptr::null_mut(), 0, &mut needed) }, PirconStatus::BufferTooSmall);
    let mut buf = vec![0u8; needed];
    assert_eq!(unsafe { pircon_poset_to_json(p, buf.as_mut_ptr(), buf.len(), &mut needed) }, PirconStatus::Ok);
    let (again, q) = from_json(std::str::from_utf8(&buf).unwrap());
    assert_eq!(again, PirconStatus::Ok);

    let mut name = [0u8; 8];
    assert_eq!(unsafe { pircon_poset_element_name(q, 3, name.as_mut_ptr(), 8, &mut needed) }, PirconStatus::Ok);
    assert_eq!(&name[..needed], b"ab");
    unsafe {
        pircon_poset_free(p);
        pircon_poset_free(q);
        pircon_poset_free(ptr::null_mut());
    }
}

#[test]
fn matchings_and_classification() {
    let (_, p) = from_json(DIAMOND);
    let mut found = false;
    let mut m = [0usize; 4];
    let mut len = 0;
    assert_eq!(unsafe { pircon_search_spm(p, &mut found, m.as_mut_ptr(), 4, &mut len) }, PirconStatus::Ok);
    assert!(found);
    assert_eq!(len, 4);
    let mut valid = false;
    assert_eq!(unsafe { pircon_check_spm(p, m.as_ptr(), 4, false, &mut valid) }, PirconStatus::Ok);
    assert!(valid);
    let bad = [3usize, 1, 2, 0];
    unsafe { pircon_check_spm(p, bad.as_ptr(), 4, false, &mut valid) };
    assert!(!valid);
    assert_eq!(unsafe { pircon_check_spm(p, bad.as_ptr(), 3, false, &mut valid) }, PirconStatus::SizeMismatch);
    let out_of_range = [7usize, 1, 2, 0];
    assert_eq!(
        unsafe { pircon_check_spm(p, out_of_range.as_ptr(), 4, false, &mut valid) },
        PirconStatus::IndexOutOfRange
    );

    let mut c = PirconClassification {
        pircon: false,
        zircon: 0,
        ideals_checked: 0,
    };
    assert_eq!(unsafe { pircon_classify(p, true, &mut c) }, PirconStatus::Ok);
    assert!(c.pircon);
    assert_eq!(c.zircon, 1);
    assert_eq!(c.ideals_checked, 3);
    unsafe { pircon_poset_free(p) };
}

#[test]
fn families_and_homology() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { pircon_fpf_signed_poset(4, false, &mut p) }, PirconStatus::Ok);
    let mut betti = [usize::MAX; 16];
    let mut len = 0;
    assert_eq!(
        unsafe { pircon_order_complex_betti(p, true, betti.as_mut_ptr(), 16, &mut len) },
        PirconStatus::Ok
    );
    // dimension 6, reduced Betti numbers in degrees -1..=6 all vanish
    assert_eq!(len, 8);
    assert!(betti[..len].iter().all(|&b| b == 0));
    unsafe { pircon_poset_free(p) };

    let mut q = ptr::null_mut();
    assert_eq!(unsafe { pircon_family_poset(PirconFamily::FpfInvolutions, 9, true, &mut q) }, PirconStatus::CapExceeded);
    assert!(q.is_null());
    assert!(last_error().contains("cap"));
}

#[test]
fn errors_are_reported() {
    let (status, p) = from_json("{not json");
    assert_eq!(status, PirconStatus::InvalidJson);
    assert!(p.is_null());
    assert!(!last_error().is_empty());
    let (status, _) = from_json(r#"{"name":"c","elements":["a","b"],"covers":[[0,1],[1,0]]}"#);
    assert_eq!(status, PirconStatus::InvalidPoset);
    let (status, _) = from_json(r#"{"name":"c","elements":["a"],"covers":[[0,4]]}"#);
    assert_eq!(status, PirconStatus::InvalidPoset);
    assert_eq!(unsafe { pircon_poset_from_json(ptr::null(), ptr::null_mut()) }, PirconStatus::NullPointer);
    let mut len = 0;
    assert_eq!(unsafe { pircon_poset_len(ptr::null(), &mut len) }, PirconStatus::NullPointer);

    // an antichain has no top, so the SPM search fails cleanly
    let (_, anti) = from_json(r#"{"name":"a","elements":["x","y"],"covers":[]}"#);
    let mut found = true;
    let mut m = [0usize; 2];
    assert_eq!(unsafe { pircon_search_spm(anti, &mut found, m.as_mut_ptr(), 2, &mut len) }, PirconStatus::MissingTop);
    unsafe { pircon_poset_free(anti) };
    let (_, ok) = from_json(DIAMOND);
    assert_eq!(unsafe { pircon_poset_len(ok, &mut len) }, PirconStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe { pircon_poset_free(ok) };
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/pircon.h")).unwrap();
    for name in [
        "pircon_last_error",
        "pircon_version",
        "pircon_poset_from_json",
        "pircon_family_poset",
        "pircon_fpf_signed_poset",
        "pircon_poset_free",
        "pircon_poset_len",
        "pircon_poset_to_json",
        "pircon_poset_element_name",
        "pircon_poset_compare",
        "pircon_search_spm",
        "pircon_check_spm",
        "pircon_classify",
        "pircon_order_complex_betti",
        "typedef struct PirconPoset PirconPoset",
        "PIRCON_STATUS_BUFFER_TOO_SMALL = 9",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

fn static_lib() -> Option<PathBuf> {
    // target/<profile>/deps/ffi-<hash> sits next to target/<profile>/libpircon_ffi.a
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libpircon_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_against_the_static_library() {
    let Some(lib) = static_lib() else {
        eprintln!("static library not found; skipping C smoke test");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping C smoke test");
        return;
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let tmp = tempfile::tempdir().unwrap();
    let exe = tmp.path().join("smoke");
    let build = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(build.status.success(), "{}", String::from_utf8_lossy(&build.stderr));
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok 0.1.0"));
}
