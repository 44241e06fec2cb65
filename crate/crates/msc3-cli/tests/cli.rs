use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use msc3::catalog::{FamilyId, Parity};
use msc3::cli_io::{ClassificationReport, MscDocument};
use msc3::field::FieldCtx;
use msc3::msc::{alpha, Msc};
use msc3::oracle::stabilizer_at;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn golden(name: &str) -> PathBuf {
    golden_dir().join(name)
}

fn msc3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msc3")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_doc(dir: &Path, name: &str, m: Msc<msc3::field::Scalar>) -> String {
    let p = dir.join(name);
    fs::write(&p, MscDocument::new(m).to_text()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn golden_corpus_round_trips_byte_for_byte() {
    let mut n = 0;
    for entry in fs::read_dir(golden_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let doc = MscDocument::parse(&text).unwrap();
        assert_eq!(doc.to_text(), text, "{}", path.display());
        n += 1;
    }
    // 47 + 60 sampled families (61,2 and 62,2 are empty) and the zero matrix
    assert_eq!(n, 108);
}

#[test]
fn golden_files_classify_to_their_label() {
    for entry in fs::read_dir(golden_dir()).unwrap() {
        let path = entry.unwrap().path();
        let doc = MscDocument::parse(&fs::read_to_string(&path).unwrap()).unwrap();
        let label = doc.label.clone().unwrap();
        if label == "zero" {
            continue;
        }
        let out = msc3(&["classify", "--in", path.to_str().unwrap()]);
        assert!(out.status.success(), "{label}: {}", String::from_utf8_lossy(&out.stderr));
        let report = ClassificationReport::parse(&stdout(&out)).unwrap();
        report.verify().unwrap();
        assert_eq!(report.family.to_string(), label);
        assert_eq!(report.canonical, doc.msc, "{label} is already canonical");
    }
}

#[test]
fn a47_report_names_family_and_gammas() {
    let out = msc3(&["classify", "--in", golden("A_47.json").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"family\": \"A_47\""));
    assert!(text.contains("\"params\": {\"g2\": \"1\", \"g4\": \"1\", \"g5\": \"1\"}"), "{text}");
}

#[test]
fn classify_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.json");
    let out = msc3(&["classify", "--in", golden("A_3.json").to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let report = ClassificationReport::parse(&fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(report.family, FamilyId::odd(3));
}

#[test]
fn zero_matrix_traces_and_exit_3() {
    let zero = golden("zero.json");
    let out = msc3(&["traces", "--in", zero.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "(0,0,0),(0,0,0)");
    let out = msc3(&["classify", "--in", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    fs::write(&p, "{\"field\": {\"characteristic\": 3, \"tower\": []}, \"entries\": []}").unwrap();
    assert_eq!(msc3(&["classify", "--in", p.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(msc3(&["classify", "--in", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(msc3(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(msc3(&["selftest", "--families", "A_99"]).status.code(), Some(2));
}

#[test]
fn iso_modes_agree_on_planted_pair() {
    let dir = tempfile::tempdir().unwrap();
    let f3 = FieldCtx::prime(3).unwrap();
    let a = MscDocument::parse(&fs::read_to_string(golden("A_17.json")).unwrap()).unwrap().msc;
    // move the rational instance to F_3 through its integer-free entries
    let a = Msc::from_fn(|c| msc3::field::Scalar::decode(&f3, &a.get(c).encode()).unwrap_or_else(|_| f3.zero()));
    let b = match a.act_stabilizer(&stabilizer_at(&f3, 1, 1, 2)) {
        Ok(b) => b,
        Err(e) => panic!("{e}"),
    };
    let (pa, pb) = (write_doc(dir.path(), "a.json", a), write_doc(dir.path(), "b.json", b));
    for mode in ["canonical", "brute"] {
        let out = msc3(&["iso", &pa, &pb, "--mode", mode]);
        assert!(out.status.success(), "{mode}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).contains("\nisomorphic") || stdout(&out).starts_with("isomorphic"), "{mode}");
    }
    let out = msc3(&["iso", &pa, &pb, "--mode", "brute", "--full"]);
    assert!(stdout(&out).contains("isomorphic"));
}

#[test]
fn iso_a32_alpha1_pair_is_not_isomorphic() {
    let dir = tempfile::tempdir().unwrap();
    let f3 = FieldCtx::prime(3).unwrap();
    let id = FamilyId::new(Parity::Odd, 32).unwrap();
    let f = id.family();
    let at = |x: i64| {
        let params = msc3::catalog::Params(
            f.params.iter().map(|c| (*c, if *c == alpha(1) { f3.int(x) } else { f3.zero() })).collect(),
        );
        msc3::catalog::canonical_msc(id, &params).unwrap()
    };
    let (pa, pb) = (write_doc(dir.path(), "a.json", at(0)), write_doc(dir.path(), "b.json", at(1)));
    for args in [vec!["--mode", "canonical"], vec!["--mode", "brute"], vec!["--mode", "brute", "--full"]] {
        let mut all = vec!["iso", pa.as_str(), pb.as_str()];
        all.extend(args.iter().copied());
        let out = msc3(&all);
        assert!(out.status.success());
        assert!(stdout(&out).contains("not isomorphic"), "{args:?}");
    }
}

#[test]
fn act_preserves_the_class() {
    let dir = tempfile::tempdir().unwrap();
    let moved = dir.path().join("moved.json");
    let src = golden("A_24.json");
    let out = msc3(&["act", "--in", src.to_str().unwrap(), "--g", "1 2 0; 0 1 0; 1 1 3", "--out", moved.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r1 = ClassificationReport::parse(&stdout(&msc3(&["classify", "--in", src.to_str().unwrap()]))).unwrap();
    let r2 = ClassificationReport::parse(&stdout(&msc3(&["classify", "--in", moved.to_str().unwrap()]))).unwrap();
    assert_eq!((r1.family, r1.params), (r2.family, r2.params));
    let singular = msc3(&["act", "--in", src.to_str().unwrap(), "--g", "1 0 0; 1 0 0; 0 0 1"]);
    assert_eq!(singular.status.code(), Some(2));
}

#[test]
fn census_prints_table_and_json() {
    let out = msc3(&["census", "--char", "3", "--samples", "200", "--seed", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("family"));
    let json: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(json["samples"], 200);
    let total: u64 = json["histogram"].as_object().unwrap().values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total + json["rejected"].as_u64().unwrap(), 200);
    let empty = msc3(&["census", "--char", "3", "--samples", "0"]);
    let json: serde_json::Value = serde_json::from_str(stdout(&empty).lines().last().unwrap()).unwrap();
    assert!(json["histogram"].as_object().unwrap().is_empty());
}

#[test]
fn selftest_selected_families() {
    let out = msc3(&["selftest", "--families", "A_1 A_20;A_47", "A_16,2", "--trials", "6", "--seed", "3"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("4 families: 0 failed, 0 skipped"));
    let out = msc3(&["selftest", "--families", "A_61,2", "--trials", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("SKIP"));
}

#[test]
fn catalog_lists_every_family_with_notes() {
    let out = msc3(&["catalog"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let headers = text.lines().filter(|l| l.starts_with("A_")).count();
    assert_eq!(headers, 47 + 62);
    assert!(text.contains("note:"));
}
