use std::path::Path;
use std::process::{Command, Output, Stdio};
use std::io::Write;

fn sbesbh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sbesbh")).args(args).output().unwrap()
}

fn sbesbh_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sbesbh"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn probes_summary_reports_ctoken_count() {
    let o = sbesbh(&["probes", "--probes", "ctoken:13"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("ctoken:13\t645376\t"));
}

#[test]
fn roster_lists_every_probe() {
    let o = sbesbh(&["probes", "--probes", "kmer:2", "--roster"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip_while(|l| *l != "# roster").skip(1).collect();
    assert_eq!(rows.len(), 16);
    assert_eq!(rows[0], "0\tAA");
    assert_eq!(rows[15], "15\tTT");
}

#[test]
fn empty_instance_pipeline() {
    let g = sbesbh(&["gen", "--pools", "0"]);
    assert!(g.status.success());
    let s = sbesbh_stdin(&["solve", "--probes", "kmer:8"], &g.stdout);
    assert!(s.status.success());
    assert!(stdout(&s).contains("# selected: 0"));
}

#[test]
fn gen_solve_verify_for_every_configuration() {
    let dir = tempfile::tempdir().unwrap();
    for (ppp, ext) in [("1", "all4"), ("2", "pair"), ("2", "all4")] {
        let inst = path(dir.path(), "inst.tsv");
        let g = sbesbh(&["gen", "--pools", "300", "--primers-per-pool", ppp, "--extensions", ext, "--seed", "3", "--out", &inst]);
        assert!(g.status.success());
        for probes in ["kmer:5", "ctoken:9"] {
            for r in ["1", "2"] {
                for alg in ["seq", "minprimer", "minprobe"] {
                    for degree in ["total", "positive"] {
                        let design = path(dir.path(), "design.tsv");
                        let s = sbesbh(&[
                            "solve", "--in", &inst, "--probes", probes, "--redundancy", r, "--algorithm", alg, "--degree", degree,
                            "--out", &design,
                        ]);
                        assert!(s.status.success(), "{}", String::from_utf8_lossy(&s.stderr));
                        let v = sbesbh(&["verify", &design, "--in", &inst]);
                        assert_eq!(v.status.code(), Some(0), "{ppp} {ext} {probes} {r} {alg} {degree}\n{}", stdout(&v));
                        assert!(stdout(&v).contains("# violations: 0"));
                    }
                }
            }
        }
    }
}

#[test]
fn tampered_design_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "inst.tsv");
    let design = path(dir.path(), "design.tsv");
    assert!(sbesbh(&["gen", "--pools", "50", "--seed", "1", "--out", &inst]).status.success());
    assert!(sbesbh(&["solve", "--in", &inst, "--probes", "kmer:6", "--out", &design]).status.success());
    let text = std::fs::read_to_string(&design).unwrap();
    // point the first selection at a witness outside its spectrum
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let row = lines.iter().position(|l| !l.starts_with('#')).unwrap();
    let mut f: Vec<String> = lines[row].split('\t').map(String::from).collect();
    f[3] = "4095".into();
    lines[row] = f.join("\t");
    std::fs::write(&design, lines.join("\n") + "\n").unwrap();
    let v = sbesbh(&["verify", &design, "--in", &inst]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("witness"));
}

#[test]
fn verify_flags_override_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "inst.tsv");
    let design = path(dir.path(), "design.tsv");
    assert!(sbesbh(&["gen", "--pools", "200", "--seed", "2", "--out", &inst]).status.success());
    assert!(sbesbh(&["solve", "--in", &inst, "--probes", "kmer:4", "--out", &design]).status.success());
    // the same witnesses cannot satisfy r = 3
    let v = sbesbh(&["verify", &design, "--in", &inst, "--redundancy", "3"]);
    assert_eq!(v.status.code(), Some(1));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(sbesbh(&["solve", "--bogus"]).status.code(), Some(2));
    assert_eq!(sbesbh(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(sbesbh(&["probes", "--probes", "kmer:0"]).status.code(), Some(2));
    assert_eq!(sbesbh(&["gen", "--pools", "1", "--primers-per-pool", "3"]).status.code(), Some(2));
    let bad = sbesbh_stdin(&["solve", "--probes", "kmer:4"], b"0\t+\tACGT\tA\n1\t+\tACXT\tA\n");
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
}

#[test]
fn partition_report_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "inst.tsv");
    let rep = path(dir.path(), "rep.tsv");
    assert!(sbesbh(&["gen", "--pools", "2000", "--primers-per-pool", "2", "--extensions", "pair", "--out", &inst]).status.success());
    let p = sbesbh(&["partition", "--in", &inst, "--probes", "kmer:6", "--redundancy", "2", "--out", &rep]);
    assert!(p.status.success());
    let text = std::fs::read_to_string(&rep).unwrap();
    assert!(text.contains("# array\t2"));
    assert!(text.contains("array\tsize\tcumulative_fraction\tcumulative_fraction_decodable"));
    let v = sbesbh(&["verify", &rep, "--in", &inst]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));

    let limited = sbesbh(&["partition", "--in", &inst, "--probes", "kmer:6", "--redundancy", "2", "--max-arrays", "1"]);
    assert!(stdout(&limited).contains("# unassigned\t"));
}

#[test]
fn reduce_then_solve_with_probe_list() {
    let dir = tempfile::tempdir().unwrap();
    let graph = path(dir.path(), "g.tsv");
    let list = path(dir.path(), "probes.txt");
    let inst = path(dir.path(), "inst.tsv");
    // 6-cycle
    std::fs::write(&graph, "0\t0\n0\t1\n1\t1\n1\t2\n2\t2\n2\t0\n").unwrap();
    assert!(sbesbh(&["reduce", "--in", &graph, "--probe-list", &list, "--out", &inst]).status.success());
    let probes = format!("list:{list}");
    let s = sbesbh(&["solve", "--in", &inst, "--probes", &probes, "--algorithm", "minprimer"]);
    assert!(s.status.success());
    assert!(stdout(&s).contains("# selected: 2"));

    std::fs::write(&graph, "0\t0\n0\t1\n0\t2\n0\t3\n").unwrap();
    assert_eq!(sbesbh(&["reduce", "--in", &graph, "--probe-list", &list]).status.code(), Some(2));
}

#[test]
fn ingest_writes_reparseable_pools() {
    let dir = tempfile::tempdir().unwrap();
    let snps = path(dir.path(), "snps.tsv");
    std::fs::write(
        &snps,
        "id\tleft\talleles\tright\nrs1\tGATTACAGATTACAGGCCTA\tAG\tCCGTAACCGTAACCGTAACC\nrs2\tACGT\tCT\tACGT\n",
    )
    .unwrap();
    let o = sbesbh(&["ingest", "--in", &snps, "--primer-length", "20"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("# skipped\trs2\tflank too short"));
    assert!(text.contains("0\t+\tGATTACAGATTACAGGCCTA\tCT\n"));
    assert!(text.contains("0\t-\tGGTTACGGTTACGGTTACGG\tAG\n"));
    let s = sbesbh_stdin(&["solve", "--probes", "kmer:4"], text.as_bytes());
    assert!(stdout(&s).contains("# selected: 1"));
}

#[test]
fn bench_table_shape() {
    let o = sbesbh(&["bench", "--pools", "100,200", "--probes", "kmer:4,kmer:5", "--redundancy", "1,2", "--replicates", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "r\tpools\talgorithm\tkmer:4\tkmer:5");
    assert_eq!(rows.len(), 1 + 2 * 2 * 3);
    assert!(rows[1].starts_with("1\t100\tseq\t"));
}
