use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "nfambig.h"

int main(void) {
    double alpha = 0.0;
    if (nfa_alpha(NFA_KIND_ULA, NFA_MODE_SIMO_MISO, &alpha) != NFA_STATUS_OK) return 1;
    if (fabs(alpha - 6.952) > 5e-3) return 2;

    NfaGeometry *g = NULL;
    if (nfa_geometry_build(NFA_KIND_UCA, 10.0, 1.0, &g) != NFA_STATUS_OK) return 3;
    NfaSetup *s = NULL;
    if (nfa_setup_new(g, NFA_MODE_MIMO, &s) != NFA_STATUS_OK) return 4;
    double t[3], p = 0.0;
    nfa_geometry_axis_point(g, 40.0, t);
    if (nfa_setup_power(s, t, t, &p) != NFA_STATUS_OK || fabs(p - 1.0) > 1e-12) return 5;
    nfa_setup_free(s);
    nfa_geometry_free(g);

    if (nfa_geometry_build(7, 10.0, 1.0, &g) != NFA_STATUS_INVALID_ARGUMENT) return 6;
    char msg[128];
    if (nfa_last_error(msg, sizeof msg) == 0) return 7;
    printf("%s %.4f\n", nfa_version(), alpha);
    return 0;
}
"#;

/// Compiles a C program against the generated header and the static
/// library produced next to this test binary.
#[test]
fn c_program_links_against_staticlib() {
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let profile_dir = deps.parent().unwrap();
    let lib = profile_dir.join("libnfambig_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let exe = dir.path().join("main");
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile/link failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with(env!("CARGO_PKG_VERSION")));
}
