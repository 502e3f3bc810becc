// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bcolor_cli::dispatch::{solve, Algorithm, DEFAULT_PARAM_BUDGET};
use bcolor_core::generators::gen_random;
use bcolor_core::oracle::oracle_bcp;
use bcolor_core::{verify_bcp, ClassTag};
use tempfile::TempDir;

fn bcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcolor"))
        .args(args)
        .env_remove("BCOLOR_THREADS")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const P4_SPLIT: &str = "p bcp 4 3 3\nb 1 2\nb 2 1\nb 3 1\ne 1 2\ne 2 3\ne 3 4\n";

#[test]
fn solve_reports_algorithm_and_verifies() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("cluster.bcp", "p bcp 4 2 2\nb 1 2\nb 2 2\ne 1 2\ne 3 4\n", "cluster", 0),
        ("path.bcp", P4_SPLIT, "path", 0),
        ("clique.bcp", "p bcp 3 3 3\nb 1 1\nb 2 1\nb 3 1\ne 1 2\ne 1 3\ne 2 3\n", "clique", 0),
        ("short.bcp", "p bcp 3 0 2\nb 1 1\nb 2 1\n", "budget-sum", 1),
        ("c6.bcp", "p bcp 6 6 2\nb 1 3\nb 2 3\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 1 6\n", "bipartite-c2", 0),
    ];
    for (name, text, algo, want) in cases {
        let inst = write(dir.path(), name, text);
        let out = bcolor(&["solve", s(&inst)]);
        assert_eq!(code(&out), want, "{name}: {}", stderr(&out));
        assert!(stderr(&out).contains(&format!("algorithm: {algo}")), "{name}: {}", stderr(&out));
        let sol = write(dir.path(), &format!("{name}.sol"), &stdout(&out));
        let check = bcolor(&["verify", s(&inst), s(&sol)]);
        assert_eq!(code(&check), 0, "{name}: {}", stdout(&check));
    }
}

#[test]
fn forced_algorithms() {
    let dir = TempDir::new().unwrap();
    let inst = write(dir.path(), "p4.bcp", P4_SPLIT);
    for algo in ["path", "broom", "exact", "table-dp", "oracle", "vertex-cover", "cvd-colors"] {
        let out = bcolor(&["solve", s(&inst), "--algorithm", algo]);
        assert_eq!(code(&out), 0, "{algo}: {}", stderr(&out));
        assert!(stderr(&out).contains(&format!("algorithm: {algo}")));
    }
    let out = bcolor(&["solve", s(&inst), "--algorithm", "cluster"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let inst = write(dir.path(), "k2.bcp", "p bcp 2 1 2\nb 1 1\nb 2 1\ne 1 2\n");
    let good = write(dir.path(), "good.sol", "s YES\nv 1 1\nv 2 2\n");
    let clash = write(dir.path(), "clash.sol", "s YES\nv 1 1\nv 2 1\n");
    let short = write(dir.path(), "short.sol", "s YES\nv 1 1\n");
    let no = write(dir.path(), "no.sol", "s NO\n");

    let out = bcolor(&["verify", s(&inst), s(&good)]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "valid coloring"));
    let out = bcolor(&["verify", s(&inst), s(&clash)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("edge 1 2"), "{}", stdout(&out));
    assert_eq!(code(&bcolor(&["verify", s(&inst), s(&short)])), 2);
    assert_eq!(code(&bcolor(&["verify", s(&inst), s(&no)])), 0);
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.bcp", "p bcp 2 1 2\nb 1 1\ne 1 2\n");
    let out = bcolor(&["solve", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line"), "{}", stderr(&out));
    assert_eq!(code(&bcolor(&["solve", "/nonexistent/file.bcp"])), 2);
    assert_eq!(code(&bcolor(&["frobnicate"])), 2);
}

#[test]
fn generate_is_deterministic_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let runs = [
        vec!["3partition", "--x", "1,1,2", "--w", "4"],
        vec!["domset-split", "--n", "3", "--edges", "1-2,2-3", "--k", "1", "--neighborhood", "closed"],
        vec!["biclique", "--n", "3", "--edges", "1-4,2-5", "--k", "1"],
        vec!["clique-vc", "--n", "4", "--edges", "1-2,2-3,3-4,1-3", "--l", "3"],
        vec!["coloring-ecp", "--n", "3", "--edges", "1-2,2-3", "--c", "2"],
        vec!["random", "--class", "broom", "--n", "8", "--c", "3", "--seed", "7"],
    ];
    for (k, args) in runs.iter().enumerate() {
        let a = dir.path().join(format!("a{k}.bcp"));
        let b = dir.path().join(format!("b{k}.bcp"));
        for path in [&a, &b] {
            let mut full = vec!["generate"];
            full.extend(args);
            full.extend(["--out", s(path)]);
            let out = bcolor(&full);
            assert_eq!(code(&out), 0, "{args:?}: {}", stderr(&out));
        }
        let text = fs::read_to_string(&a).unwrap();
        assert_eq!(text, fs::read_to_string(&b).unwrap(), "{args:?}");
        let reparsed = bcolor_cli::format::parse_instance(&text).unwrap();
        assert_eq!(bcolor_cli::format::emit_instance(&reparsed), text);
        let solved = bcolor(&["solve", s(&a)]);
        assert!(code(&solved) <= 1, "{args:?}: {}", stderr(&solved));
    }
}

#[test]
fn generated_gadgets_have_expected_answers() {
    let dir = TempDir::new().unwrap();
    let runs: [(&[&str], i32); 5] = [
        (&["3partition", "--x", "1,1,2", "--w", "4"], 0),
        (&["3partition", "--x", "1,1,2,1,1,2", "--w", "4"], 3),
        (&["clique-vc", "--n", "4", "--edges", "1-2,2-3,3-4", "--l", "3"], 1),
        (&["clique-vc", "--n", "4", "--edges", "1-2,2-3,1-3,3-4", "--l", "3"], 0),
        (&["domset-split", "--n", "2", "--edges", "1-2", "--k", "1", "--neighborhood", "closed"], 0),
    ];
    for (k, (args, want)) in runs.iter().enumerate() {
        let path = dir.path().join(format!("g{k}.bcp"));
        let mut full = vec!["generate"];
        full.extend(args.iter());
        full.extend(["--out", s(&path)]);
        assert_eq!(code(&bcolor(&full)), 0);
        let out = bcolor(&["solve", s(&path)]);
        assert_eq!(code(&out), *want, "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn count_values() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("p bcp 2 1 2\nb 1 1\nb 2 1\ne 1 2\n", "2"),
        ("p bcp 2 0 2\nb 1 2\nb 2 2\n", "9"),
        ("p bcp 3 3 2\nb 1 3\nb 2 3\ne 1 2\ne 2 3\ne 1 3\n", "0"),
        ("p bcp 2 1 1\nb 1 2\ne 1 2\n", "0"),
    ];
    for (k, (text, want)) in cases.iter().enumerate() {
        let inst = write(dir.path(), &format!("c{k}.bcp"), text);
        let out = bcolor(&["count", s(&inst)]);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out).trim(), *want, "{text}");
    }
}

#[test]
fn too_large_is_undecidable() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("big.bcp");
    let out = bcolor(&["generate", "random", "--class", "general", "--n", "30", "--c", "4", "--budgets", "8-10", "--seed", "1", "--out", s(&path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(code(&bcolor(&["solve", s(&path), "--param-budget", "2"])), 3);
    assert_eq!(code(&bcolor(&["count", s(&path)])), 3);
}

#[test]
fn bench_output() {
    let empty = TempDir::new().unwrap();
    let out = bcolor(&["bench", s(empty.path())]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out).lines().next().unwrap(),
        "instance,n,c,algorithm,answer,repeat,wall_s,growth"
    );
    assert!(!stdout(&out).lines().skip(1).any(|l| l.contains(',')));

    let corpus = TempDir::new().unwrap();
    write(corpus.path(), "p4.bcp", P4_SPLIT);
    write(corpus.path(), "junk.bcp", "not an instance\n");
    let out = bcolor(&["bench", s(corpus.path()), "--repeat", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| l.contains("p4.bcp,")).collect();
    assert_eq!(rows.len(), 3, "{text}");
    assert!(rows.iter().all(|r| r.contains(",4,3,path,YES,")));
    assert!(stderr(&out).contains("junk.bcp"));
}

#[test]
fn thread_count_from_environment() {
    let dir = TempDir::new().unwrap();
    let inst = write(dir.path(), "p4.bcp", P4_SPLIT);
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_bcolor"))
            .args(["solve", s(&inst)])
            .env("BCOLOR_THREADS", threads)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("2")), 0);
    assert_eq!(code(&run("zero")), 2);
    assert_eq!(code(&run("0")), 2);
}

#[test]
fn auto_matches_oracle_on_random_instances() {
    for seed in 0..200u64 {
        let class = ClassTag::ALL[seed as usize % ClassTag::ALL.len()];
        let lo = if class == ClassTag::Broom { 4 } else { 1 };
        let n = lo + (seed as usize / 8) % (10 - lo);
        let c = 1 + (seed as usize / 3) % 4;
        let inst = gen_random(class, n, c, 0..=4, seed).unwrap();
        let out = solve(&inst, Algorithm::Auto, DEFAULT_PARAM_BUDGET).unwrap();
        let want = oracle_bcp(&inst).unwrap().is_yes();
        assert_eq!(out.result.is_yes(), want, "seed {seed} via {}: {inst:?}", out.algorithm);
        if let Some(col) = out.result.coloring() {
            assert!(verify_bcp(&inst, col).is_ok(), "seed {seed}");
        }
    }
}
