use std::path::PathBuf;
use std::process::Command;

fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/ringgroom.h")).unwrap();
    for name in [
        "rg_last_error",
        "rg_build",
        "rg_decomposition_from_json",
        "rg_decomposition_to_json",
        "rg_decomposition_verify",
        "rg_decomposition_free",
        "rg_string_free",
        "rg_cost_two_period",
        "rg_wavecost_mon",
        "rg_triangle_lower_bound",
        "rg_oracle_min_cost",
        "typedef struct RgDecomposition RgDecomposition",
        "RG_STATUS_CONSTRUCTION_FAILED",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let lib = profile_dir().join("libringgroom_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ringgroom_smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success(), "compiling the C smoke test failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "smoke test exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
