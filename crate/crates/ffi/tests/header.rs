use std::path::Path;
use std::process::Command;

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/regloc.h")).unwrap();
    for name in [
        "rl_ring_parse",
        "rl_module_parse",
        "rl_singular_locus",
        "rl_nonperf_locus",
        "rl_generator_build",
        "rl_certify",
        "rl_certificate_check",
        "rl_last_error",
        "typedef struct RlRing RlRing",
        "RL_STATUS_CUTOFF = 3",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let Ok(out) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("tests/smoke.c"))
        .output()
    else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
