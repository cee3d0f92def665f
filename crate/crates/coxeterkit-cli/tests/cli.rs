//! End-to-end checks of the binary: outputs must match direct library
//! calls, and exit codes must distinguish usage errors from computation
//! errors.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coxeterkit"))
}

#[test]
fn classify_prints_the_class() {
    let out = bin().args(["classify", "--schlafli", "4,3,5"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "HyperbolicCompact");

    let out = bin().args(["classify", "--schlafli", "5,3"]).output().unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "Spherical(H3)");
}

#[test]
fn build_matches_the_library_output() {
    let dir = std::env::temp_dir().join("coxeterkit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cell24.off");
    let out = bin()
        .args(["build", "--schlafli", "3,4,3", "--ring", "1"])
        .args(["--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());

    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("OFF"));
    assert_eq!(lines.next(), Some("24 24 96"));

    // Golden equality with the library path.
    let d = coxeterkit::diagram::from_schlafli(
        &[
            coxeterkit::diagram::SchlafliEntry::Finite(3),
            coxeterkit::diagram::SchlafliEntry::Finite(4),
            coxeterkit::diagram::SchlafliEntry::Finite(3),
        ],
        Some(&[1]),
    )
    .unwrap();
    let p = coxeterkit::wythoff::build(&d, coxeterkit::wythoff::DEFAULT_CAP).unwrap();
    assert_eq!(text, coxeterkit::export::off(&p).unwrap());
}

#[test]
fn tessellate_svg_draws_the_klein_disc() {
    let out = bin()
        .args(["tessellate", "--schlafli", "7,3", "--depth", "2", "--format", "svg"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("<svg"));
    assert!(text.contains("<circle"));
}

#[test]
fn dual_reports_ideal_and_real_vertices() {
    let out = bin()
        .args(["dual", "--schlafli", "3,3,3", "--ring", "2", "--hyperbolic"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("5 ideal, 5 real"), "got: {text}");
}

#[test]
fn verify_acceptance_suite_passes() {
    let out = bin().args(["verify", "--suite", "acceptance"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 11);
    assert_eq!(text.lines().filter(|l| l.starts_with("FAIL")).count(), 0);
}

#[test]
fn exit_codes_separate_usage_from_computation() {
    // Unknown flag: usage error, exit 2 with usage text.
    let out = bin().args(["classify", "--nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // A ringless build is a computation error: exit 1, message names the
    // module error.
    let out = bin().args(["build", "--schlafli", "4,3", "--ring", "9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn config_file_sets_the_orbit_cap() {
    let dir = std::env::temp_dir().join("coxeterkit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("tiny.cfg");
    std::fs::write(&cfg, "cap=5\n").unwrap();
    let out = bin()
        .args(["--config", cfg.to_str().unwrap(), "build", "--schlafli", "3,4,3", "--ring", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn gram_matrix_round_trip_through_realize() {
    let dir = std::env::temp_dir().join("coxeterkit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gram.txt");
    let d = coxeterkit::diagram::from_schlafli(
        &[
            coxeterkit::diagram::SchlafliEntry::Finite(4),
            coxeterkit::diagram::SchlafliEntry::Finite(3),
            coxeterkit::diagram::SchlafliEntry::Finite(5),
        ],
        Some(&[1]),
    )
    .unwrap();
    let g = coxeterkit::gram::gram_from_diagram(&d);
    std::fs::write(&path, coxeterkit::gram::matrix_to_text(&g)).unwrap();

    let out = bin()
        .args(["realize", "--gram", path.to_str().unwrap(), "--dim", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("signature (3,1,0)"));
    assert!(text.contains("Realizable(compact)"));
}

#[test]
fn catalog_directory_override() {
    // Point COXETERKIT_CATALOG at a copy of the bundled catalogs with one
    // family renamed; classification must pick up the replacement name.
    let dir = std::env::temp_dir().join("coxeterkit-cli-catalogs");
    std::fs::create_dir_all(&dir).unwrap();
    let data = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .join("coxeterkit/data");
    for name in [
        "spherical.catalog",
        "euclidean.catalog",
        "hyperbolic_compact.catalog",
        "hyperbolic_noncompact.catalog",
    ] {
        let text = std::fs::read_to_string(data.join(name)).unwrap();
        std::fs::write(dir.join(name), text.replace("name=H3", "name=Icosahedral")).unwrap();
    }
    let out = bin()
        .env("COXETERKIT_CATALOG", &dir)
        .args(["classify", "--schlafli", "5,3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "Spherical(Icosahedral3)");
}
