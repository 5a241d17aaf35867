use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn jobs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../jobs")
}

fn job(name: &str) -> String {
    jobs().join(name).to_string_lossy().into_owned()
}

fn symrec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symrec")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn robinson_s3_over_c3_is_a_table_of_zeros() {
    let o = symrec(&["robinson", "--group", &job("s3.json"), "--subgroup", "c3", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("S0   0\nS1   0\n"), "{out}");
    assert!(out.contains("verdict: pass"), "{out}");

    let o = symrec(&["robinson", "--group", &job("s3.json"), "--subgroup", "c3", "--p", "3", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["l"], serde_json::json!([[0], [0]]));
    assert_eq!(v["r"], v["l"]);
    assert_eq!(v["seed"], 1);
    assert_eq!(v["verdict"]["status"], "pass");
}

#[test]
fn simples_of_the_affine_group_mod_3() {
    let o = symrec(&["simples", "--algebra", &job("kN.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    let dims: Vec<u64> = v["simples"].as_array().unwrap().iter().map(|s| s["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 1, 2, 2, 3, 3]);
    assert_eq!(v["dim"], 432);
}

/// `dim e_i A e_j` for the two primitive idempotents `(1 ± t)/2` of `kS3`
/// over `GF(3)`, by direct computation in the group algebra.
fn ks3_cartan_oracle() -> Vec<Vec<usize>> {
    const P: u32 = 3;
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let compose = |a: [usize; 3], b: [usize; 3]| [b[a[0]], b[a[1]], b[a[2]]];
    let mul = |x: &[u32], y: &[u32]| {
        let mut z = vec![0; 6];
        for i in 0..6 {
            for j in 0..6 {
                let k = idx(compose(perms[i], perms[j]));
                z[k] = (z[k] + x[i] * y[j]) % P;
            }
        }
        z
    };
    let basis = |i: usize| {
        let mut v = vec![0; 6];
        v[i] = 1;
        v
    };
    // 1/2 = 2 mod 3
    let t = 1;
    let e: Vec<Vec<u32>> = [1, P - 1]
        .iter()
        .map(|&sign| (0..6).map(|k| ((if k == 0 { 1 } else { 0 }) + if k == t { sign } else { 0 }) * 2 % P).collect())
        .collect();
    let rank = |mut rows: Vec<Vec<u32>>| {
        let mut r = 0;
        for c in 0..6 {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, piv);
            let inv = if rows[r][c] == 1 { 1 } else { 2 };
            for x in rows[r].iter_mut() {
                *x = *x * inv % P;
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for k in 0..6 {
                        rows[i][k] = (rows[i][k] + P * P - f * rows[r][k]) % P;
                    }
                }
            }
            r += 1;
        }
        r
    };
    (0..2)
        .map(|i| (0..2).map(|j| rank((0..6).map(|g| mul(&mul(&e[i], &basis(g)), &e[j])).collect())).collect())
        .collect()
}

#[test]
fn cartan_of_ks3_mod_3() {
    let oracle = ks3_cartan_oracle();
    assert_eq!(oracle.iter().flatten().sum::<usize>(), 6, "the oracle must account for dim kS3");
    let o = symrec(&["cartan", "--algebra", &job("ks3_p3.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let got: Vec<Vec<usize>> = serde_json::from_value(json(&o)["cartan"].clone()).unwrap();
    assert_eq!(got, oracle);
    assert_eq!(got, vec![vec![2, 1], vec![1, 2]]);
}

#[test]
fn every_job_file_runs() {
    let mut names: Vec<String> = std::fs::read_dir(jobs())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    assert!(names.len() >= 10);
    for name in names {
        let o = symrec(&["run", &job(&name), "--format", "json"]);
        let expected = if name == "upper_triangular.json" { 2 } else { 0 };
        assert_eq!(o.status.code(), Some(expected), "{name}: {}", stderr(&o));
        assert_eq!(json(&o)["seed"], 1, "{name}");
    }
}

#[test]
fn upper_triangular_is_not_applicable() {
    let o = symrec(&["run", &job("upper_triangular.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["verdict"]["status"], "not_applicable");
    assert_eq!(v["hypotheses"]["a_symmetric"], false);
    assert_eq!(v["hypotheses"]["a_symmetric_certified"], true);

    let o = symrec(&["symmetric-form", "--job", &job("upper_triangular.json"), "--algebra", "T", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["certified"], true);
}

#[test]
fn proof_chain_for_one_pair() {
    let o = symrec(&["run", &job("proof_chain_s4_a4_p3.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let all = json(&o)["ledger"].as_array().unwrap().len();
    let o = symrec(&["proof-chain", "--job", &job("proof_chain_s4_a4_p3.json"), "--s", "1", "--t", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let ledger = json(&o)["ledger"].as_array().unwrap().clone();
    assert_eq!(ledger.len(), 1);
    assert!(all > 1);
    assert_eq!((ledger[0]["s"].as_u64(), ledger[0]["t"].as_u64()), (Some(1), Some(0)));
}

#[test]
fn reports_are_byte_identical_and_match_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let args = ["run", &job("robinson_s4_a4_p3.json"), "--format", "json"];
    let a = symrec(&args);
    let b = symrec(&[&args[..], &["--out", out.to_str().unwrap()]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn seed_is_recorded() {
    let o = symrec(&["simples", "--algebra", &job("ks3_p3.json"), "--seed", "7", "--format", "json"]);
    assert_eq!(json(&o)["seed"], 7);
    assert!(stdout(&symrec(&["simples", "--algebra", &job("ks3_p3.json")])).starts_with("simples over GF(3), seed 1\n"));
}

#[test]
fn dangling_label_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(
        &dir,
        "job.json",
        r#"{"field": "GF(3)",
            "groups": {"S3": {"degree": 3, "generators": ["(0 1)", "(0 1 2)"]}},
            "command": {"robinson": {"group": "S3", "subgroup": "C7"}}}"#,
    );
    let o = symrec(&["run", &p]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("`C7`"), "{}", stderr(&o));
}

#[test]
fn two_commands_are_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(
        &dir,
        "job.json",
        r#"{"field": "GF(3)",
            "groups": {"S3": {"degree": 3, "generators": ["(0 1)"]}},
            "algebras": {"A": {"group": "S3"}},
            "command": {"simples": {"algebra": "A"}, "cartan": {"algebra": "A"}}}"#,
    );
    let o = symrec(&["run", &p]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("exactly one command"), "{}", stderr(&o));
}

#[test]
fn error_paths_exit_nonzero_with_empty_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let syntax = write_temp(&dir, "syntax.json", "{\n  \"field\": \"GF(3)\",\n}\n");
    let not_sub = write_temp(
        &dir,
        "notsub.json",
        r#"{"field": "GF(2)",
            "groups": {"G": {"degree": 3, "generators": ["(0 1 2)"]},
                       "H": {"degree": 3, "generators": ["(0 1)"]}},
            "command": {"robinson": {"group": "G", "subgroup": "H"}}}"#,
    );
    let s3 = job("s3.json");
    let ks3 = job("ks3_p3.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["run", &syntax],
        vec!["run", &not_sub],
        vec!["run", "/nonexistent/job.json"],
        vec!["simples", "--algebra", &s3],
        vec!["simples", "--group", &s3, "--field", "GF(6)"],
        vec!["simples", "--group", &s3, "--p", "3", "--format", "xml"],
        vec!["robinson", "--group", &ks3, "--p", "3"],
        vec!["simples"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = symrec(&args);
        assert_eq!(o.status.code(), Some(3), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty(), "{args:?} printed {}", stdout(&o));
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn group_shortcut_uses_the_group_algebra() {
    let o = symrec(&["simples", "--group", &job("s3.json"), "--field", "GF(2)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["field"], "GF(2)");
    let dims: Vec<u64> = v["simples"].as_array().unwrap().iter().map(|s| s["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 2]);
}
