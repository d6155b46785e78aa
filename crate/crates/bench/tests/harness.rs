//! Result files, comparison tables, sweeps and the command-line front end.

use std::path::{Path, PathBuf};
use std::process::Command;

use vqe_bench::compare::{comparison_table, table_to_csv, table_to_json, BAND_COLUMNS};
use vqe_bench::molecule::MoleculeSpec;
use vqe_bench::record::{data_path, load_record, FileLock};
use vqe_bench::sweep::{load_point, run_ansatz, AnsatzKind};
use vqe_bench::{initdata, run_sweep, savedata, BenchError, BenchRecord, ComparisonKind, SweepConfig};
use vqe_core::driver::run_hea_layer_growth;
use vqe_core::hamiltonian::hf_state_index;
use vqe_core::CHEMICAL_ACCURACY;

const FLOOR_TOL: f64 = 1e-9;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn h2() -> MoleculeSpec {
    MoleculeSpec::from_fixtures(&fixtures(), "H2").unwrap()
}

fn filled_record() -> BenchRecord {
    let mut r = BenchRecord::new("H4", &[0.9, 1.5]);
    r.set_references(0.9, Some(-2.180316614323854), Some(-2.12426)).unwrap();
    r.set_references(1.5, Some(-1.9961503255188096), Some(-1.82914)).unwrap();
    r.set_point("UCCSD", 0.9, Some(-2.1803), Some(1.25), Some(14)).unwrap();
    r.set_point("BRC", 1.5, Some(-1.85), None, Some(4)).unwrap();
    r.set_point("CCSD", 0.9, Some(-2.1802), None, None).unwrap();
    r
}

#[test]
fn record_round_trip_is_byte_stable() {
    let text = filled_record().to_json();
    let again = BenchRecord::from_json(&text).unwrap().to_json();
    assert_eq!(text, again);
    assert!(text.ends_with("}\n"));
    assert!(text.contains("\n  \"bond_lengths\""));
}

#[test]
fn init_save_and_reload() {
    let dir = tempfile::tempdir().unwrap();
    let path = initdata(dir.path(), "H4", &[0.9, 1.5], false).unwrap();
    assert_eq!(path, data_path(dir.path(), "H4"));
    let stored = savedata(&path, "UCCSD", 1.5, Some(-1.99), Some(3.0), Some(14)).unwrap();
    let reloaded = load_record(&path).unwrap();
    assert_eq!(stored, reloaded);
    assert_eq!(reloaded.energies["UCCSD"], [None, Some(-1.99)]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), reloaded.to_json());
}

#[test]
fn unknown_bond_length_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = initdata(dir.path(), "H4", &[0.9], false).unwrap();
    let before = std::fs::read(&path).unwrap();
    let err = savedata(&path, "UCCSD", 1.1, Some(-2.0), None, None).unwrap_err();
    assert!(matches!(err, BenchError::UnknownBondLength(_)));
    assert_eq!(std::fs::read(&path).unwrap(), before);
}

#[test]
fn reinit_needs_force() {
    let dir = tempfile::tempdir().unwrap();
    let path = initdata(dir.path(), "H4", &[0.9], false).unwrap();
    savedata(&path, "UCCSD", 0.9, Some(-2.0), None, None).unwrap();
    let before = std::fs::read(&path).unwrap();
    assert!(matches!(initdata(dir.path(), "H4", &[0.9], false), Err(BenchError::FileExists(_))));
    assert_eq!(std::fs::read(&path).unwrap(), before);
    initdata(dir.path(), "H4", &[0.9], true).unwrap();
    assert!(load_record(&path).unwrap().energies.is_empty());
}

#[test]
fn concurrent_writer_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let path = initdata(dir.path(), "H4", &[0.9], false).unwrap();
    let lock = FileLock::acquire(&path).unwrap();
    let err = savedata(&path, "UCCSD", 0.9, Some(-2.0), None, None).unwrap_err();
    assert!(matches!(err, BenchError::Locked(_)));
    assert_eq!(err.exit_code(), 2);
    drop(lock);
    savedata(&path, "UCCSD", 0.9, Some(-2.0), None, None).unwrap();
}

#[test]
fn csv_and_json_tables_carry_the_same_numbers() {
    let r = filled_record();
    for kind in [ComparisonKind::Errors, ComparisonKind::Runtimes, ComparisonKind::Params] {
        let t = comparison_table(&r, kind).unwrap();
        let csv_text = table_to_csv(&t).unwrap();
        let json: serde_json::Value = serde_json::from_str(&table_to_json(&t)).unwrap();
        let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
        let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
        assert_eq!(header, t.columns);
        assert_eq!(json["columns"], serde_json::json!(t.columns));
        let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        assert_eq!(rows.len(), t.rows.len());
        for (i, row) in rows.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                let from_csv = if cell.is_empty() { None } else { Some(cell.parse::<f64>().unwrap()) };
                assert_eq!(from_csv, json["rows"][i][j].as_f64());
                assert_eq!(from_csv, t.rows[i][j]);
            }
        }
    }
}

#[test]
fn error_table_has_band_edges() {
    let t = comparison_table(&filled_record(), ComparisonKind::Errors).unwrap();
    let n = t.columns.len();
    assert_eq!(&t.columns[n - 2..], BAND_COLUMNS);
    assert_eq!(t.columns[n - 3], "CCSD");
    for row in &t.rows {
        assert_eq!(row[n - 2], Some(-CHEMICAL_ACCURACY));
        assert_eq!(row[n - 1], Some(CHEMICAL_ACCURACY));
    }
    let ccsd = t.column("CCSD").unwrap();
    assert!((ccsd[0].unwrap() - (-2.1802 + 2.180316614323854)).abs() < 1e-15);
    assert_eq!(ccsd[1], None);
}

fn strip_runtimes(mut r: BenchRecord) -> BenchRecord {
    for v in r.runtimes.values_mut() {
        v.iter_mut().for_each(|x| *x = None);
    }
    for per_bond in r.traces.values_mut() {
        for t in per_bond.values_mut() {
            t.iter_mut().for_each(|e| e.wall_time = 0.0);
        }
    }
    r.metadata.timestamp = None;
    r.metadata.threads = None;
    r
}

#[test]
fn sweep_is_deterministic_under_a_fixed_seed() {
    let spec = h2();
    let kinds = AnsatzKind::ALL;
    let one = SweepConfig { threads: 1, ..Default::default() };
    let four = SweepConfig { threads: 4, ..Default::default() };
    let a = run_sweep(&spec, &kinds, &one, 11).unwrap();
    let b = run_sweep(&spec, &kinds, &four, 11).unwrap();
    assert!(a.diagnostics.is_empty(), "{:?}", a.diagnostics);
    assert_eq!(strip_runtimes(a.record).to_json(), strip_runtimes(b.record).to_json());
}

#[test]
fn h2_sweep_respects_the_variational_floor() {
    let spec = h2();
    let out = run_sweep(&spec, &AnsatzKind::ALL, &SweepConfig::default(), 0).unwrap();
    let fci = out.record.fci[0].unwrap();
    for (name, e) in &out.record.energies {
        let e = e[0].unwrap();
        assert!(e >= fci - FLOOR_TOL, "{name}: {e} below {fci}");
    }
    assert_eq!(out.record.n_params["UCCSD"], out.record.n_params["UCCSD0"]);
}

#[test]
fn h2_uccsd_is_exact() {
    let sys = load_point(&h2(), 0.7414).unwrap();
    for kind in [AnsatzKind::Uccsd, AnsatzKind::Uccsd0] {
        let r = run_ansatz(kind, &sys, &SweepConfig::default(), 3).unwrap();
        assert!((r.energy - sys.fci).abs() < 1e-8, "{kind}: {}", r.energy - sys.fci);
    }
}

#[test]
fn h2_hea_growth_stops_early() {
    let sys = load_point(&h2(), 0.7414).unwrap();
    let cfg = SweepConfig::default();
    let g = run_hea_layer_growth(
        &sys.hamiltonian,
        4,
        hf_state_index(4, 2),
        sys.fci,
        &cfg.hea,
        &cfg.optimizer,
        5,
        &vqe_bench::StdClock::new(),
    )
    .unwrap();
    assert!(g.result.converged);
    assert!(g.depth <= 3, "depth {}", g.depth);
    assert!((g.result.energy - sys.fci).abs() < CHEMICAL_ACCURACY);
}

#[test]
fn h2_qubit_adapt_and_qcc_reach_chemical_accuracy() {
    let sys = load_point(&h2(), 0.7414).unwrap();
    for kind in [AnsatzKind::QubitAdapt, AnsatzKind::Qcc] {
        let r = run_ansatz(kind, &sys, &SweepConfig::default(), 0).unwrap();
        assert!((r.energy - sys.fci).abs() < CHEMICAL_ACCURACY, "{kind}: {}", r.energy - sys.fci);
    }
}

#[test]
fn h2_adapt_trace() {
    let sys = load_point(&h2(), 0.7414).unwrap();
    let r = run_ansatz(AnsatzKind::Adapt, &sys, &SweepConfig::default(), 0).unwrap();
    let trace = r.trace.unwrap();
    assert!(r.converged);
    assert!(trace.len() <= 2, "{} iterations", trace.len());
    assert!((r.energy - sys.fci).abs() < 1e-6);
    for w in trace.windows(2) {
        assert!(w[1].energy <= w[0].energy + 1e-9);
    }
}

fn bench(data: &Path) -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_vqe-bench"));
    c.arg("--data-dir").arg(data).arg("--fixtures").arg(fixtures());
    c
}

#[test]
fn command_line_workflow() {
    let dir = tempfile::tempdir().unwrap();
    let status = |c: &mut Command| c.output().unwrap().status.code().unwrap();

    assert_eq!(status(bench(dir.path()).args(["init", "--molecule", "H2"])), 0);
    assert_eq!(status(bench(dir.path()).args(["init", "--molecule", "H2"])), 2);
    assert_eq!(status(bench(dir.path()).args(["run", "--molecule", "H2", "--ansatz", "nope"])), 1);
    assert_eq!(status(bench(dir.path()).args(["frobnicate"])), 1);
    assert_eq!(status(bench(dir.path()).args(["fci", "--molecule", "Xe2"])), 1);
    assert_eq!(
        status(bench(dir.path()).args(["record", "--molecule", "H2", "--ansatz", "UCCSD", "--bond-length", "9.9", "--energy", "-1.0"])),
        2
    );

    let run = bench(dir.path())
        .args(["run", "--molecule", "H2", "--ansatz", "UCCSD", "--ansatz", "ADAPT", "--seed", "4"])
        .env("VQE_BENCH_THREADS", "2")
        .output()
        .unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let rec = load_record(&data_path(dir.path(), "H2")).unwrap();
    assert_eq!(rec.metadata.threads, Some(2));
    assert_eq!(rec.metadata.seed, Some(4));
    assert!(rec.traces.contains_key("ADAPT"));

    let out = bench(dir.path()).args(["compare", "--molecule", "H2", "--kind", "errors"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "bond_length,ADAPT,UCCSD,chem_acc_lower,chem_acc_upper");

    let dump = bench(dir.path()).args(["dump-hamiltonian", "--molecule", "H2", "--bond-length", "0.7414"]).output().unwrap();
    assert_eq!(String::from_utf8(dump.stdout).unwrap().lines().count(), 15);
}
