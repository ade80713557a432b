use std::process::Command;

fn wsm() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wsm"))
}

fn strip_timing(csv: &str) -> String {
    csv.lines()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            [&f[..15], &f[17..]].concat().join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn run_then_rates() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let st = wsm()
        .args(["run", "--case", "I", "--order", "1", "--counts", "4,8,16", "--exclusion", "0.1", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(st.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "case,p,nx,ny,nz,h,l2_global,h1_global,l2_local,h1_local,l2_surf_global,l2_surf_local,slip_norm,cg_iters,cg_residual,assemble_ms,solve_ms,assembly_reused"
    );
    assert_eq!(text.lines().count(), 4);

    let o = wsm().args(["rates", "--metric", "l2_global", "--in"]).arg(&out).output().unwrap();
    assert!(o.status.success());
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("case=I p=1 metric=l2_global slope="), "{s}");

    let again = dir.path().join("r2.csv");
    wsm()
        .args(["run", "--case", "I", "--order", "1", "--counts", "4,8,16", "--out"])
        .arg(&again)
        .status()
        .unwrap();
    assert_eq!(strip_timing(&text), strip_timing(&std::fs::read_to_string(&again).unwrap()));
}

#[test]
fn errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = wsm().args(["run", "--case", "I", "--order", "3", "--counts", "4", "--out"]).arg(&out).output().unwrap();
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let o = wsm().args(["rates", "--in"]).arg(dir.path().join("missing.csv")).output().unwrap();
    assert!(!o.status.success());
    let o = wsm().args(["run", "--case", "V", "--out"]).arg(&out).output().unwrap();
    assert!(!o.status.success());
}

#[test]
fn rates_need_three_levels() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    assert!(wsm().args(["run", "--case", "I", "--counts", "4,8", "--out"]).arg(&out).status().unwrap().success());
    assert!(!wsm().args(["rates", "--in"]).arg(&out).status().unwrap().success());
}

#[test]
fn reuse_demo_prints_table() {
    let o = wsm().args(["reuse-demo", "--counts", "8", "--order", "1", "--faults", "3", "--seed", "1"]).output().unwrap();
    assert!(o.status.success());
    let s = String::from_utf8(o.stdout).unwrap();
    assert_eq!(s.lines().filter(|l| l.ends_with(",true")).count(), 2);
    assert_eq!(s.lines().filter(|l| l.ends_with(",false")).count(), 1);
    assert!(s.contains("mean_additional_ms="));
}
