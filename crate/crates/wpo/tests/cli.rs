//! Black-box tests of the command-line binary: output lines, exit
//! codes, and file round trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wpo"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wpo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, content: &str) -> PathBuf {
    let p = scratch(name);
    std::fs::write(&p, content).unwrap();
    p
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const PATH2: &str = "p wpo 3 2\n1 2 1\n2 3 1\n";
const TRIANGLE: &str = "p wpo 3 3\n1 2 1\n2 3 1\n1 3 1\n";

#[test]
fn solve_tree_reports_po_and_witness() {
    let input = write("path.gr", PATH2);
    let witness = scratch("path.or");
    let out = bin()
        .args(["solve", "--input"])
        .arg(&input)
        .args(["--method", "tree", "--witness"])
        .arg(&witness)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("po 1"), "{}", stdout(&out));

    let verify = bin()
        .args(["verify", "--input"])
        .arg(&input)
        .arg("--orientation")
        .arg(&witness)
        .output()
        .unwrap();
    assert_eq!(verify.status.code(), Some(0));
    let text = stdout(&verify);
    assert!(
        text.contains("proper yes") && text.contains("mu 1"),
        "{text}"
    );
}

#[test]
fn solve_triangle_methods() {
    let input = write("tri.gr", TRIANGLE);
    for method in ["auto", "twdp", "brute"] {
        let out = bin()
            .args(["solve", "--input"])
            .arg(&input)
            .args(["--method", method])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "method {method}");
        assert!(stdout(&out).contains("po 2"), "method {method}");
    }
    // tree method must reject a non-tree
    let out = bin()
        .args(["solve", "--input"])
        .arg(&input)
        .args(["--method", "tree"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn decision_mode_exit_codes() {
    let input = write("tri2.gr", TRIANGLE);
    let yes = bin()
        .args(["solve", "--input"])
        .arg(&input)
        .args(["--k", "2"])
        .output()
        .unwrap();
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).contains("decision yes"));
    let no = bin()
        .args(["solve", "--input"])
        .arg(&input)
        .args(["--k", "1"])
        .output()
        .unwrap();
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).contains("decision no"));
}

#[test]
fn verify_reports_conflicts() {
    let input = write("tri3.gr", TRIANGLE);
    // cyclic orientation: every vertex has inweight 1
    let orient = write("tri3.or", "1 2\n2 3\n3 1\n");
    let out = bin()
        .args(["verify", "--input"])
        .arg(&input)
        .arg("--orientation")
        .arg(&orient)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("proper no"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("conflict"));

    let incomplete = write("tri3-short.or", "1 2\n");
    let out = bin()
        .args(["verify", "--input"])
        .arg(&input)
        .arg("--orientation")
        .arg(&incomplete)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn gen_subsetsum_round_trips() {
    let out = bin()
        .args(["gen", "subsetsum", "--set", "1,2", "--target", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("k'=12"), "{text}");
    assert!(text.contains("p wpo 22 21"), "{text}");
    let g = wpo::parse_graph(&text).unwrap();
    assert!(g.is_tree());

    let bad = bin()
        .args(["gen", "subsetsum", "--set", "3", "--target", "3"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(64));
}

#[test]
fn gen_mmi_announces_final_bound() {
    let input = write("edge.gr", "p wpo 2 1\n1 2 1\n");
    let out = bin()
        .args(["gen", "mmi", "--input"])
        .arg(&input)
        .args(["--k", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("k_final=4"));
    wpo::parse_graph(&stdout(&out)).unwrap();
}

#[test]
fn bound4_on_path_and_cycle() {
    let input = write("p5.gr", "p wpo 6 5\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n5 6 1\n");
    let out = bin()
        .args(["bound4", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("proper yes"), "{text}");
    let deg: usize = text
        .lines()
        .find_map(|l| l.strip_prefix("max_indegree "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(deg <= 2);

    let cyc = write("c3.gr", TRIANGLE);
    let out = bin()
        .args(["bound4", "--input"])
        .arg(&cyc)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn bench_runs_deterministically() {
    let run = || {
        let out = bin()
            .args([
                "bench", "tree", "--n", "8", "--K", "3", "--seed", "5", "--count", "3",
            ])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        assert!(text.contains("oracle ok"), "{text}");
        // strip the timing field before comparing runs
        text.lines()
            .map(|l| {
                l.split_whitespace()
                    .collect::<Vec<_>>()
                    .chunks(2)
                    .filter(|c| c[0] != "time_ms")
                    .flat_map(|c| c.iter().copied())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(run(), run());
}

#[test]
fn parse_errors_exit_64() {
    let input = write("bad.gr", "p wpo 2 1\n1 3 1\n");
    let out = bin()
        .args(["solve", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));

    let usage = bin().args(["solve", "--no-such-flag"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(64));
}
