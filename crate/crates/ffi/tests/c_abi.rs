use std::path::{Path, PathBuf};
use std::process::Command;

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/orbifold.h")).unwrap();
    for name in [
        "orbifold_last_error",
        "orbifold_instance_new",
        "orbifold_instance_free",
        "orbifold_instance_simple_dims",
        "orbifold_verify",
        "orbifold_report_json",
        "orbifold_string_free",
        "typedef struct OrbifoldInstance OrbifoldInstance;",
        "ORBIFOLD_STATUS_FALSIFIED = 9",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let dir = target_dir();
    let lib = dir.join("liborbifold_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let exe = dir.join("orbifold_ffi_smoke");
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "64");
}
