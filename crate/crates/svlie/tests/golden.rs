//! Golden-report regression: one frozen JSON document per subcommand.
//! Any byte of drift in report formatting or computed values fails the
//! suite. Regenerate the files by running the test once with
//! `GOLDEN_REGEN=1` after an intentional format change.

mod common;

use std::path::PathBuf;

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"))
}

#[test]
fn reports_match_frozen_documents() {
    let regen = std::env::var_os("GOLDEN_REGEN").is_some();
    for (name, args) in common::cli_matrix() {
        let out = common::run_cli(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "subcommand {name} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let path = golden_path(name);
        if regen {
            std::fs::write(&path, &out.stdout).expect("golden file writes");
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|_| {
            panic!("missing golden file {}; run once with GOLDEN_REGEN=1", path.display())
        });
        assert_eq!(
            out.stdout,
            want,
            "golden mismatch for {name}: got\n{}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}
