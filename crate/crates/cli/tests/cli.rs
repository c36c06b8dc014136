use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn scat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scat")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn file(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn core_of_a_cone_is_a_point() {
    let dir = tempfile::tempdir().unwrap();
    let k = file(&dir, "cone.cplx", "a b c\na c d\n");
    let cert = dir.path().join("core.json");
    let out = scat(&["core", &k, "--out", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("core, 1 vertices"));
    let text = std::fs::read_to_string(cert).unwrap();
    assert!(text.contains("\"kind\": \"collapse\""));
}

#[test]
fn h1_of_a_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let k = file(&dir, "c4.cplx", "a b\nb c\nc d\nd a\n");
    let out = scat(&["h1", &k]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("rank 1\n"));
}

#[test]
fn collapse_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let m = file(&dir, "m.cplx", "a b c\n");
    let k = file(&dir, "k.cplx", "a b\n");
    let c3 = file(&dir, "c3.cplx", "a b\nb c\nc a\n");
    assert_eq!(code(&scat(&["collapse", &m, &k])), 0);
    assert_eq!(code(&scat(&["collapse", &c3, &k])), 1);
}

#[test]
fn categorical_decisions() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = file(&dir, "c3.cplx", "a b\nb c\nc a\n");
    let disk = file(&dir, "disk.cplx", "a b c\n");
    let edge = file(&dir, "edge.cplx", "a b\n");
    assert_eq!(code(&scat(&["categorical", &edge, &c3])), 0);
    assert_eq!(code(&scat(&["categorical", &c3, &c3])), 1);
    assert_eq!(code(&scat(&["categorical", &c3, &disk])), 0);
}

#[test]
fn cover_searches_write_reloadable_bundles() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = file(&dir, "c3.cplx", "a b\nb c\nc a\n");
    let out_dir = dir.path().join("cover");
    let out = scat(&["gscat", &c3, "--pieces", "2", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let cert = scat_core::certificate::CertificateFile::read(&out_dir.join("cover.json")).unwrap();
    let cover = scat_core::certificate::load_cover(&out_dir, &cert).unwrap();
    assert!(cover.verify());
    // A circle is not strongly collapsible, so one piece never suffices.
    assert_eq!(code(&scat(&["gscat", &c3, "--pieces", "1", "--attempts", "5"])), 2);
}

#[test]
fn prover_writes_an_impossibility_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let k = file(&dir, "two.cplx", "a b\nb c\nc a\nx y\ny z\nz x\n");
    let cert = dir.path().join("no2.json");
    let out = scat(&["--threads", "1", "prove-no-2-cover", &k, "--out", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let envelope = scat_core::certificate::CertificateFile::read(&cert).unwrap();
    let c: scat_core::category::ImpossibilityCertificate =
        envelope.payload_as(scat_core::certificate::CertificateKind::Impossibility).unwrap();
    assert!(c.digest_matches());

    let c3 = file(&dir, "c3.cplx", "a b\nb c\nc a\n");
    assert_eq!(code(&scat(&["prove-no-2-cover", &c3])), 1);
}

#[test]
fn resource_cap_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let facets = ["0 4 6", "0 3 6", "1 3 4", "2 3 6", "1 2 5", "0 2 3", "0 1 3", "1 4 5", "1 3 6"];
    let k = file(&dir, "k.cplx", &(facets.join("\n") + "\n"));
    let out = scat(&["prove-no-2-cover", &k, "--forest-cap", "0"]);
    assert_eq!(code(&out), 3, "{}", stdout(&out));
}

#[test]
fn usage_and_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&scat(&["frobnicate"])), 64);
    assert_eq!(code(&scat(&["scat"])), 64);
    assert_eq!(code(&scat(&["core", dir.path().join("missing").to_str().unwrap()])), 64);
    let bad = file(&dir, "bad.cplx", "a b\n\na a c\n");
    let out = scat(&["core", &bad]);
    assert_eq!(code(&out), 64);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(code(&scat(&["--help"])), 0);
}

#[test]
fn reconstruct_writes_audited_solutions() {
    let dir = tempfile::tempdir().unwrap();
    let out = scat(&["reconstruct", "--out", dir.path().to_str().unwrap(), "--limit", "2"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    for i in 1..=2 {
        let k = scat_core::certificate::read_complex(&dir.path().join(format!("solution-00{i}.cplx"))).unwrap();
        assert_eq!(k.f_vector(), scat_core::FVector(vec![15, 45, 30]));
        let audit = std::fs::read_to_string(dir.path().join(format!("audit-00{i}.json"))).unwrap();
        assert!(!audit.contains("\"passed\": false"));
    }
    let starved = scat(&["reconstruct", "--out", dir.path().join("x").to_str().unwrap(), "--budget", "10"]);
    assert_eq!(code(&starved), 2);
}

#[test]
fn verify_paper_is_deterministic_across_thread_counts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let ra = a.path().join("report.json");
    let rb = b.path().join("report.json");
    let out = scat(&["--threads", "1", "verify-paper", "--out", ra.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("overall: Pass"));
    let k = a.path().join("K.cplx");
    let out = scat(&["--threads", "2", "verify-paper", "--k", k.to_str().unwrap(), "--out", rb.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let mut files = Vec::new();
    collect(a.path(), a.path(), &mut files);
    assert!(files.len() > 10);
    for rel in files {
        assert_eq!(std::fs::read(a.path().join(&rel)).unwrap(), std::fs::read(b.path().join(&rel)).unwrap(), "{rel}");
    }
}

fn collect(root: &Path, dir: &Path, out: &mut Vec<String>) {
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            collect(root, &path, out);
        } else {
            out.push(path.strip_prefix(root).unwrap().to_str().unwrap().to_string());
        }
    }
}
