use std::path::Path;
use std::process::{Command, Output};

use modrecon::canon::is_isomorphic;
use modrecon::oracle::enumerate_graphs;
use modrecon::{inflate, make_deck, Graph};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modrecon"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn c5_with_pair() -> Graph {
    let mut parts = vec![Graph::empty(1); 5];
    parts[0] = Graph::complete(2);
    inflate(&Graph::cycle(5), &parts).unwrap()
}

fn write_deck(dir: &Path, name: &str, g: &Graph) -> String {
    let path = dir.join(name);
    std::fs::write(&path, make_deck(g).unwrap().to_text()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn decompose_kinds() {
    let o = run(&["decompose", &Graph::path(4).to_graph6()]);
    assert_eq!((code(&o), stdout(&o)), (0, "indecomposable\n".to_string()));
    let o = run(&["decompose", &Graph::complete(4).to_graph6()]);
    assert_eq!(stdout(&o).lines().next(), Some("degenerate-series"));

    let o = run(&["decompose", &c5_with_pair().to_graph6(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "prime");
    let skeleton: Graph = v["skeleton"].as_str().unwrap().parse().unwrap();
    assert!(is_isomorphic(&skeleton, &Graph::cycle(5)));
    let sizes: Vec<u64> = v["intervals"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["vertices"].as_array().unwrap().len() as u64)
        .collect();
    assert_eq!(sizes.iter().sum::<u64>(), 6);
    assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 1);

    assert_eq!(code(&run(&["decompose", "not-a-graph"])), 2);
}

#[test]
fn graph_from_file_reference() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.g6");
    std::fs::write(&path, format!("{}\n", Graph::path(4))).unwrap();
    let o = run(&["decompose", &format!("@{}", path.display())]);
    assert_eq!(stdout(&o), "indecomposable\n");
    assert_eq!(code(&run(&["decompose", "@/no/such/file"])), 2);
}

#[test]
fn deck_lines() {
    let k2 = Graph::complete(2).to_graph6();
    let o = run(&["deck", &Graph::complete(3).to_graph6()]);
    assert_eq!(stdout(&o), format!("{k2}\n{k2}\n{k2}\n"));

    let o = run(&["deck", &Graph::path(3).to_graph6()]);
    let mut lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    lines.sort();
    let mut expected = vec![k2.clone(), k2, Graph::empty(2).to_graph6()];
    expected.sort();
    assert_eq!(lines, expected);

    assert_eq!(code(&run(&["deck", &Graph::empty(0).to_graph6()])), 2);
}

#[test]
fn reconstruct_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let g = c5_with_pair();
    let path = write_deck(dir.path(), "c5.deck", &g);
    let o = run(&["reconstruct", &path]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    let h: Graph = lines.next().unwrap().parse().unwrap();
    assert!(is_isomorphic(&g, &h));
    assert_eq!(lines.next(), Some("provenance vertex-transitive-skeleton"));

    let path = write_deck(dir.path(), "c5-plain.deck", &Graph::cycle(5));
    let o = run(&["reconstruct", &path]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("decomposable"), "{}", stdout(&o));

    let o = run(&["reconstruct", &path, "--oracle-fallback", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["provenance"], "oracle");
    let h: Graph = v["graph"].as_str().unwrap().parse().unwrap();
    assert!(is_isomorphic(&h, &Graph::cycle(5)));
}

#[test]
fn reconstruct_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.deck");
    std::fs::write(&bad, "B?\n$$$\n").unwrap();
    assert_eq!(code(&run(&["reconstruct", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["reconstruct", "/no/such/deck"])), 2);

    // four 3-vertex cards with one edge between them: no graph has this deck
    let one_edge = Graph::from_edges(3, &[(0, 1)]).unwrap().to_graph6();
    let empty = Graph::empty(3).to_graph6();
    let odd = dir.path().join("odd.deck");
    std::fs::write(&odd, format!("{empty}\n{empty}\n{empty}\n{one_edge}\n")).unwrap();
    assert_eq!(code(&run(&["reconstruct", odd.to_str().unwrap()])), 3);
}

#[test]
fn json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_deck(dir.path(), "g.deck", &c5_with_pair());
    let a = run(&["reconstruct", &path, "--json"]);
    let b = run(&["reconstruct", &path, "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let g = c5_with_pair().to_graph6();
    assert_eq!(
        run(&["decompose", &g, "--json"]).stdout,
        run(&["decompose", &g, "--json"]).stdout
    );

    // the report's wall-clock time is the only field allowed to differ
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("seconds");
        v
    };
    let args = ["verify", "skeleton-from-deck", "--max-n", "6", "--json"];
    assert_eq!(strip(run(&args)), strip(run(&args)));
}

#[test]
fn verify_reports() {
    let o = run(&["verify", "indecomposable-counts", "--max-n", "5", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["claim"], "indecomposable-counts");
    assert_eq!(
        (
            v["breakdown"]["n=3"].as_u64(),
            v["breakdown"]["n=4"].as_u64(),
            v["breakdown"]["n=5"].as_u64()
        ),
        (Some(0), Some(1), Some(4))
    );
    for field in [
        "max_n",
        "tested",
        "passed",
        "failed",
        "witnesses",
        "seconds",
    ] {
        assert!(v.get(field).is_some(), "missing {field}");
    }

    assert_eq!(
        code(&run(&["verify", "indecomposable-subgraph", "--max-n", "8"])),
        0
    );
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "verify",
        "unique-preimages",
        "--max-n",
        "7",
        "--cache-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(dir.path().join("graphs-7.g6").exists());

    assert_eq!(code(&run(&["verify", "no-such-claim"])), 2);
    assert_eq!(code(&run(&["verify", "soundness", "--max-n", "9"])), 2);
    assert!(stdout(&run(&["verify", "list"])).contains("soundness"));
}

#[test]
fn deck_then_reconstruct_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let mut reconstructed = 0;
    for n in 3..=6 {
        for g in enumerate_graphs(n).unwrap().graphs() {
            let o = run(&["deck", &g.to_graph6()]);
            assert_eq!(code(&o), 0);
            let path = dir.path().join("deck");
            std::fs::write(&path, &o.stdout).unwrap();
            let o = run(&["reconstruct", path.to_str().unwrap(), "--json"]);
            let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
            match code(&o) {
                0 => {
                    let h: Graph = v["graph"].as_str().unwrap().parse().unwrap();
                    assert!(is_isomorphic(&g, &h), "{g}");
                    reconstructed += 1;
                }
                1 => assert_ne!(v["status"], "reconstructed"),
                other => panic!("{g}: exit {other}"),
            }
        }
    }
    assert!(reconstructed > 150);
}
