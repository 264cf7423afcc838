use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bathent_cli::scan::scan;
use bathent_cli::table::{read_numeric_csv, read_scan_csv};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bathent"))
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn example_config(dir: &Path, a: f64, b: f64) -> PathBuf {
    write(dir, &format!("ex_{a}_{b}.cfg"), &format!("[example]\na = {a}\nb = {b}\n"))
}

const IDENTITY_ROWS: &str = "1 0 0\n0 1 0\n0 0 1\n";

fn evolve_table(config: &Path, rho0: &str, times: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let out = run(&["evolve", "--config", config.to_str().unwrap(), "--rho0", rho0, "--times", times]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    read_numeric_csv(out.stdout.as_slice()).unwrap()
}

#[test]
fn zero_generator_keeps_state() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "zero.cfg", "# nothing\n");
    let (header, rows) = evolve_table(&cfg, "bloch:0.3,0,0.4;0,-0.5,0", "0,1");
    assert_eq!(header.len(), 37);
    assert_eq!(rows[0][1..], rows[1][1..]);
}

#[test]
fn example_bath_entangles_plus_plus() {
    let dir = TempDir::new().unwrap();
    let cfg = example_config(dir.path(), 0.8, 0.6);
    let (header, rows) = evolve_table(&cfg, "bloch:0,0,1;0,0,1", "0,0.001,0.01,0.05");
    let col = header.iter().position(|h| h == "ppt_min_eigenvalue").unwrap();
    assert!(rows[0][col].abs() < 1e-12);
    for row in &rows[1..] {
        assert!(row[col] < 0.0, "t = {}: {}", row[0], row[col]);
    }
}

#[test]
fn uncorrelated_bath_has_zero_negativity() {
    let dir = TempDir::new().unwrap();
    let mut body = String::from("[kossakowski.A.re]\n");
    body += IDENTITY_ROWS;
    body += "[kossakowski.A.im]\n0 -0.5 0\n0.5 0 0\n0 0 0\n[kossakowski.C.re]\n1 0.2 0\n0.2 1 0\n0 0 0.5\n";
    let cfg = write(dir.path(), "b0.cfg", &body);
    let (header, rows) = evolve_table(&cfg, "bloch:0.6,0,0.8;0,0,-1", "linspace:0:5:11");
    let col = header.iter().position(|h| h == "negativity").unwrap();
    assert!(rows.iter().all(|r| r[col].abs() <= 1e-10));
    let trace = header.iter().position(|h| h == "trace").unwrap();
    assert!(rows.iter().all(|r| (r[trace] - 1.0).abs() <= 1e-10));
}

#[test]
fn check_messages() {
    let dir = TempDir::new().unwrap();
    let inside = run(&["check", "--config", example_config(dir.path(), 0.5, 0.4).to_str().unwrap()]);
    assert!(stdout(&inside).contains("D̃ PSD; no creation possible"));

    let canon = run(&["check", "--config", example_config(dir.path(), 0.9, 0.3).to_str().unwrap()]);
    let text = stdout(&canon);
    assert!(text.contains("creation at canonical frame; ∂_tE(0) = -0.4"), "{text}");
    assert!(text.contains("u angles"));

    let mut body = String::new();
    for name in ["A", "B", "C"] {
        body += &format!("[kossakowski.{name}.re]\n1 0.3 0\n0.3 0.5 0\n0 0 0.2\n");
    }
    let real = run(&["check", "--config", write(dir.path(), "real.cfg", &body).to_str().unwrap()]);
    assert!(stdout(&real).contains("no creation possible"));

    let line = example_config(dir.path(), 1.5, -0.5);
    let text = stdout(&run(&["check", "--allow-non-cp", "--config", line.to_str().unwrap()]));
    assert!(text.contains("CP: VIOLATED"));
    assert!(text.contains("indeterminate at first order at canonical frame; ∂_tE(0) = 0"), "{text}");

    let two_body = write(
        dir.path(),
        "h12.cfg",
        "[hamiltonian.h12]\n0 0 0\n0 0 0\n0 0 0.1\n[kossakowski.A.re]\n1 0 0\n0 1 0\n0 0 0\n[kossakowski.C.re]\n1 0 0\n0 1 0\n0 0 0\n",
    );
    let text = stdout(&run(&["check", "--config", two_body.to_str().unwrap()]));
    assert!(text.contains("D̃ spectrum with two-body Hamiltonian: [-0.1"), "{text}");
    assert!(text.contains("frame search: skipped"), "{text}");
}

#[test]
fn fluorescence_messages() {
    let dir = TempDir::new().unwrap();
    let real = write(dir.path(), "real.blk", "[re]\n1 0.3 0\n0.3 0.5 0\n0 0 0.2\n");
    let out = run(&["fluorescence", "--block", real.to_str().unwrap()]);
    assert!(stdout(&out).contains("no creation; ρ̃ evolves completely positively"));

    let diag = write(dir.path(), "diag.blk", "[re]\n1 0 0\n0 1 0\n0 0 0\n");
    assert!(stdout(&run(&["fluorescence", "--block", diag.to_str().unwrap()])).contains("no creation"));

    let complex = write(dir.path(), "cplx.blk", "[re]\n1 0 0\n0 1 0\n0 0 0\n[im]\n0 -0.5 0\n0.5 0 0\n0 0 0\n");
    let text = stdout(&run(&["fluorescence", "--block", complex.to_str().unwrap()]));
    assert!(text.contains("creation frame found"), "{text}");

    let skew = write(dir.path(), "skew.blk", "[re]\n1 1 0\n0 1 0\n0 0 0\n");
    assert_eq!(run(&["fluorescence", "--block", skew.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.cfg", "[hamiltonian]\nh1 = 1 2 x\n");
    let out = run(&["check", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column 10"));

    let non_cp = example_config(dir.path(), 0.9, 0.9);
    assert_eq!(run(&["check", "--config", non_cp.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(
        run(&["check", "--allow-non-cp", "--config", non_cp.to_str().unwrap()]).status.code(),
        Some(0)
    );

    let missing = dir.path().join("missing.cfg");
    assert_eq!(run(&["check", "--config", missing.to_str().unwrap()]).status.code(), Some(4));

    let unwritable = dir.path().join("no/such/dir/out.csv");
    let out = run(&["scan", "--resolution", "3", "--output", unwritable.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));

    let cfg = example_config(dir.path(), 0.1, 0.1);
    let out = run(&["evolve", "--config", cfg.to_str().unwrap(), "--rho0", "bloch:0,0,1", "--times", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["scan", "--resolution", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn scan_output_is_deterministic_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let (p1, p2, svg) = (dir.path().join("1.csv"), dir.path().join("2.csv"), dir.path().join("m.svg"));
    for p in [&p1, &p2] {
        let out = run(&["scan", "--resolution", "31", "--budget", "300", "--svg", svg.to_str().unwrap(), "-o", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let (b1, b2) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert_eq!(b1, b2);
    let header = String::from_utf8(b1.clone()).unwrap();
    assert!(header.starts_with(
        "a,b,cp_valid,dtilde_psd,canonical_derivative,creates_canonical,creates_any_frame,search_budget_used\n"
    ));
    let parsed = read_scan_csv(b1.as_slice()).unwrap();
    assert_eq!(parsed, scan(31, 300, bathent::TOL_PSD).unwrap());
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));
}

#[test]
fn evolve_csv_round_trips() {
    let dir = TempDir::new().unwrap();
    let cfg = example_config(dir.path(), -0.3, 0.7);
    let (_, rows) = evolve_table(&cfg, "bloch:0.1,0.2,0.3;-0.3,0.2,0.1", "linspace:0:2:7");
    let gen = bathent::LindbladGenerator::dissipative(bathent::ExampleBath::new(-0.3, 0.7).kossakowski().unwrap());
    let rho0 = bathent_cli::inputs::parse_state("bloch:0.1,0.2,0.3;-0.3,0.2,0.1", 1e-10).unwrap();
    let times = bathent_cli::inputs::parse_times("linspace:0:2:7").unwrap();
    let expected = bathent_cli::commands::evolve_rows(&gen, &rho0, &times).unwrap();
    for (r, e) in rows.iter().zip(&expected) {
        for (x, y) in r.iter().zip(e) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}

#[test]
fn resolution_101_regions() {
    let records = scan(101, 1000, bathent::TOL_PSD).unwrap();
    for r in &records {
        let (a, b) = (r.a, r.b);
        let in_disk = a * a + b * b <= 1.0;
        if in_disk && a + b > 1.0 + 1e-9 {
            assert!(r.creates_canonical, "({a}, {b})");
        }
        if (a + b).abs() <= 1.0 && (a - b).abs() <= 1.0 {
            assert!(r.dtilde_psd && !r.creates_any_frame, "({a}, {b})");
        }
        if in_disk && (a - b).abs() > 1.0 + 1e-9 {
            assert!(r.creates_any_frame, "({a}, {b})");
        }
    }
}
