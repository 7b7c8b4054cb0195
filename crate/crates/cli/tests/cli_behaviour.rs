mod common;

use std::process::Command;

use common::{assert_conforms, digraph, file, gens, named_dfa, named_generator_set, run, schema};
use proptest::prelude::*;
use tempfile::TempDir;
use transemi_cli::commands::{exit, CheckOutcome, Timed};
use transemi_cli::formats::{
    parse_dfa, parse_dfa_list, parse_digraph, parse_generators, render_dfa, render_dfa_list, render_digraph,
    render_generators,
};
use transemi_cli::json::{json_report, JsonComparison, JsonElement, JsonReport};
use transemi_core::identity::PRESETS;
use transemi_core::oracle::enumerate;
use transemi_core::witness::verify_report;
use transemi_core::{Engine, Property, PropertyReport, Verdict, Witness};

const CONSTANTS: &str = "3\nc1: 1 1 1\nc2: 2 2 2\n";
const SIGMA: &str = "# 3-cycle\n3\nsigma: 2 3 1\n";
const NOT_REGULAR: &str = "3\n1 1 2\n";

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture { dir: TempDir::new().unwrap() }
    }

    fn path(&self, name: &str, text: &str) -> String {
        file(self.dir.path(), name, text).to_str().unwrap().to_string()
    }

    fn out(&self, name: &str) -> String {
        self.dir.path().join(name).to_str().unwrap().to_string()
    }
}

#[test]
fn check_exit_codes() {
    let fx = Fixture::new();
    let constants = fx.path("constants.txt", CONSTANTS);
    let sigma = fx.path("sigma.txt", SIGMA);
    let bad = fx.path("bad.txt", "3\n2 3 4\n");

    assert_eq!(run(&["check", &constants, "--property", "right-zero"]).code, exit::TRUE);
    let r = run(&["check", &sigma, "--property", "nilpotent"]);
    assert_eq!(r.code, exit::FALSE);
    assert!(r.stdout.contains("nilpotent: FALSE"), "{}", r.stdout);
    assert!(r.stdout.contains("witness"), "{}", r.stdout);
    let r = run(&["check", &constants, "--property", "frobnicate"]);
    assert_eq!(r.code, exit::UNKNOWN_PROPERTY);
    assert!(r.stderr.contains("frobnicate"));
    let r = run(&["check", &bad, "--property", "band"]);
    assert_eq!(r.code, exit::INPUT);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
    assert_eq!(run(&["check", &fx.out("missing.txt"), "--property", "band"]).code, exit::INPUT);
    assert_eq!(run(&["check", &constants]).code, 2, "missing --property is a usage error");
    assert_eq!(run(&["check", &sigma, "--property", "group", "--engine", "both"]).code, exit::TRUE);
    assert_eq!(run(&["check", &sigma, "--property", "aperiodic"]).code, exit::FALSE);
    let r = run(&["check", &sigma, "--property", "group", "--engine", "oracle", "--cap", "1"]);
    assert_eq!(r.code, exit::UNDECIDED, "{}", r.stdout);
    assert!(r.stdout.contains("UNDECIDED"));
}

#[test]
fn disagreement_has_its_own_exit_code() {
    let report = |verdict, engine| Timed {
        report: PropertyReport { property: "band".into(), verdict, witness: None, engine },
        elapsed_ms: 0.0,
    };
    let both = CheckOutcome::Both {
        structural: report(Verdict::True, Engine::Structural),
        oracle: report(Verdict::False, Engine::Oracle),
    };
    assert!(!both.agree());
    assert_eq!(both.exit_code(), exit::DISAGREEMENT);
    let fine = CheckOutcome::Both {
        structural: report(Verdict::False, Engine::Structural),
        oracle: report(Verdict::False, Engine::Oracle),
    };
    assert_eq!(fine.exit_code(), exit::FALSE);
}

#[test]
fn identity_exit_codes() {
    let fx = Fixture::new();
    let constants = fx.path("constants.txt", CONSTANTS);
    let sigma = fx.path("sigma.txt", SIGMA);
    let r = run(&["identity", &constants, "--quasi", "x1 x2 = x2 x1"]);
    assert_eq!(r.code, exit::FALSE);
    assert!(r.stdout.contains("witness"));
    assert_eq!(run(&["identity", &constants, "--quasi", "x1 = x1"]).code, exit::TRUE);
    assert_eq!(run(&["identity", &sigma, "--quasi", "x1 x1 x1 x2 = x2"]).code, exit::TRUE);
    assert_eq!(run(&["identity", &sigma, "--quasi", "idem(x1) => x1 x2 = x2 x1"]).code, exit::TRUE);
    assert_eq!(run(&["identity", &constants, "--quasi", "x1 x2 = "]).code, exit::INPUT);
    for preset in PRESETS {
        let code = run(&["identity", &constants, "--quasi", preset]).code;
        assert!(code == exit::TRUE || code == exit::FALSE, "{preset}: {code}");
    }
}

#[test]
fn element_exit_codes() {
    let fx = Fixture::new();
    let sigma = fx.path("sigma.txt", SIGMA);
    let s = fx.path("s.txt", NOT_REGULAR);
    let r = run(&["element", &sigma, "--mode", "inverse", "--target", "1", "--json"]);
    assert_eq!(r.code, exit::TRUE);
    let e: JsonElement = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(e.outcome, "FOUND");
    let w = e.witness.unwrap();
    assert_eq!(w.word, [0, 0]);
    assert_eq!(w.element.to_one_based(), [3, 1, 2]);
    let r = run(&["element", &s, "--mode", "regularizer", "--target", "1"]);
    assert_eq!(r.code, exit::FALSE);
    assert!(r.stdout.contains("NONE"), "{}", r.stdout);
    assert_eq!(run(&["element", &s, "--mode", "weak-inverse", "--target", "1"]).code, exit::TRUE);
    assert_eq!(run(&["element", &s, "--mode", "inverse", "--target", "2"]).code, exit::INPUT);
    assert_eq!(run(&["element", &s, "--mode", "inverse"]).code, 2);
    let target = fx.path("t.txt", "3\n1 2 3\n");
    assert_eq!(run(&["element", &s, "--mode", "regularizer", "--target-file", &target]).code, exit::FALSE);
    let wrong = fx.path("w.txt", "2\n1 2\n");
    assert_eq!(run(&["element", &s, "--mode", "regularizer", "--target-file", &wrong]).code, exit::INPUT);
    let r = run(&["element", &sigma, "--mode", "inverse", "--target", "1", "--cap", "1"]);
    assert_eq!(r.code, exit::UNDECIDED, "{}", r.stdout);
}

#[test]
fn reduce_writes_parseable_files() {
    let fx = Fixture::new();
    let dfa = fx.path("a.dfa", "2\ninitial 1\nfinal 2\na: 2 2\nb: 1 1\n");
    let out = fx.out("zero.txt");
    let r = run(&["reduce", "zero", &dfa, &out]);
    assert_eq!(r.code, exit::TRUE, "{}", r.stderr);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with('#'));
    let g = parse_generators(&text).unwrap();
    assert_eq!((g.len(), g.degree()), (4, 3));
    assert_eq!(run(&["check", &out, "--property", "zero"]).code, exit::TRUE);

    let edge = fx.path("e.txt", "2\n1 2\n");
    let out = fx.out("rt.txt");
    assert_eq!(run(&["reduce", "rtrivial", &edge, &out]).code, exit::TRUE);
    let g = parse_generators(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((g.len(), g.degree()), (1, 3));

    let out = fx.out("nil.txt");
    assert_eq!(run(&["reduce", "nilpotent", &dfa, &out]).code, exit::TRUE);
    let g = parse_generators(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((g.len(), g.degree()), (2 * 2 + 1, 5));
    assert_eq!(run(&["check", &out, "--property", "nilpotent"]).code, exit::FALSE);

    let accepting = fx.path("eps.dfa", "2\ninitial 1\nfinal 1\na: 2 2\n");
    let r = run(&["reduce", "nilpotent", &accepting, &fx.out("x.txt")]);
    assert_eq!(r.code, exit::INPUT);
    assert!(r.stderr.contains("precondition"), "{}", r.stderr);
    assert!(!fx.dir.path().join("x.txt").exists());

    let list = fx.path("two.dfa", "2\ninitial 1\nfinal 2\na: 2 2\nb: 1 1\n---\n1\ninitial 1\nfinal 1\na: 1\nb: 1\n");
    let out = fx.out("wi.txt");
    assert_eq!(run(&["reduce", "weak-inverse", &list, &out]).code, exit::TRUE);
    let target = format!("{out}.target");
    assert_eq!(parse_generators(&std::fs::read_to_string(&target).unwrap()).unwrap().len(), 1);
    let r = run(&["element", &out, "--mode", "weak-inverse", "--target-file", &target]);
    assert_eq!(r.code, exit::TRUE, "{}{}", r.stdout, r.stderr);

    let out = fx.out("reg.txt");
    assert_eq!(run(&["reduce", "regular", &list, &out]).code, exit::TRUE);
    let b = parse_generators(&std::fs::read_to_string(&out).unwrap()).unwrap().len();
    assert_eq!(run(&["element", &out, "--mode", "regularizer", "--target", &b.to_string()]).code, exit::TRUE);

    let broken = fx.path("broken.dfa", "2\ninitial 3\nfinal\n");
    let r = run(&["reduce", "zero", &broken, &fx.out("y.txt")]);
    assert_eq!(r.code, exit::INPUT);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
}

#[test]
fn properties_lists_every_name() {
    let r = run(&["properties"]);
    assert_eq!(r.code, 0);
    for p in Property::ALL {
        assert!(r.stdout.contains(p.name()));
    }
}

#[test]
fn json_output_conforms_and_replays() {
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let fx = Fixture::new();
    let instances =
        [CONSTANTS, SIGMA, NOT_REGULAR, "4\n2 3 4 4\n", "3\na: 1 1 3\nb: 2 2 2\n", "3\n2 1 3\n1 1 1\n", "2\n1 2\n"];
    for (i, text) in instances.iter().enumerate() {
        let path = fx.path(&format!("g{i}.txt"), text);
        let g = parse_generators(text).unwrap();
        let table = enumerate(&g, 10_000).unwrap();
        for p in Property::ALL {
            let r = run(&["check", &path, "--property", p.name(), "--engine", "both", "--json"]);
            let value: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
            assert_conforms(&validator, &value);
            let cmp: JsonComparison = serde_json::from_value(value).unwrap();
            assert!(cmp.agree, "{p} on {g}");
            assert_eq!(r.code, exit::of(cmp.structural.verdict));
            for report in [&cmp.structural, &cmp.oracle] {
                replay(&g, report, &table);
            }
        }
        for preset in PRESETS {
            let r = run(&["identity", &path, "--quasi", preset, "--json"]);
            let value: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
            assert_conforms(&validator, &value);
            replay(&g, &serde_json::from_value(value).unwrap(), &table);
        }
        for mode in ["regularizer", "weak-inverse", "inverse"] {
            let r = run(&["element", &path, "--mode", mode, "--target", "1", "--json"]);
            let value: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
            assert_conforms(&validator, &value);
            let e: JsonElement = serde_json::from_value(value).unwrap();
            if let Some(w) = e.witness {
                assert_eq!(g.evaluate(&w.word), w.element);
            }
        }
    }
    let r = run(&["crosscheck", "--n", "2", "--k", "2", "--samples", "30", "--seed", "7", "--json"]);
    assert_eq!(r.code, exit::TRUE);
    assert_conforms(&validator, &serde_json::from_str(&r.stdout).unwrap());
    let r = run(&["crosscheck", "--n", "2", "--k", "1", "--exhaustive", "--json"]);
    assert_eq!(r.code, exit::TRUE);
    assert_conforms(&validator, &serde_json::from_str(&r.stdout).unwrap());
}

/// The flattened fields agree with the exact witness, which verifies.
fn replay(g: &transemi_core::GeneratorSet, report: &JsonReport, table: &transemi_core::oracle::ElementTable) {
    assert_eq!(report.instance_sha256.len(), 64);
    if let Some(w) = &report.witness {
        assert_eq!(w.words.len(), w.transformations.len());
        let idempotent = |i: usize| match &w.detail {
            Witness::Identity(cx) => cx.identity.is_idempotent_var(i),
            _ => false,
        };
        for (i, (word, t)) in w.words.iter().zip(&w.transformations).enumerate() {
            let word: Vec<usize> = word.iter().map(|i| i - 1).collect();
            let s = g.evaluate(&word);
            let value = if idempotent(i) { s.omega_power() } else { s };
            if !word.is_empty() {
                assert_eq!(&value.to_one_based(), t, "{} on {g}", report.property);
            }
        }
    }
    if report.verdict != Verdict::Undecided {
        verify_report(g, &report.to_report(), Some(table)).unwrap();
    }
}

#[test]
fn json_report_matches_library_report() {
    let g = gens(&[&[1, 1, 1], &[2, 2, 2]]);
    let r = transemi_core::structural_check(&g, Property::Commutative, Default::default()).unwrap();
    let j = json_report(&g, &r, 1.5);
    let back: JsonReport = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
    assert_eq!(back.to_report(), r);
}

#[test]
fn binary_exit_codes_and_env_cap() {
    let fx = Fixture::new();
    let sigma = fx.path("sigma.txt", SIGMA);
    let bin = env!("CARGO_BIN_EXE_transemi");
    let status = |args: &[&str], cap: Option<&str>| {
        let mut cmd = Command::new(bin);
        cmd.args(args).env_remove("TRANSEMI_CAP");
        if let Some(c) = cap {
            cmd.env("TRANSEMI_CAP", c);
        }
        cmd.output().unwrap().status.code().unwrap()
    };
    assert_eq!(status(&["check", &sigma, "--property", "group"], None), 0);
    assert_eq!(status(&["check", &sigma, "--property", "nilpotent"], None), 1);
    assert_eq!(status(&["check", &sigma, "--property", "frobnicate"], None), 3);
    assert_eq!(status(&["check", &sigma, "--property", "group", "--engine", "oracle"], Some("1")), 4);
    assert_eq!(status(&["check", &sigma, "--property", "group", "--engine", "oracle", "--cap", "10"], Some("1")), 0);
    assert_eq!(status(&["--version"], None), 0);
    assert_eq!(status(&["nonsense"], None), 2);
}

proptest! {
    #[test]
    fn generators_round_trip(g in named_generator_set(6, 4)) {
        prop_assert_eq!(parse_generators(&render_generators(&g)).unwrap(), g);
    }

    #[test]
    fn dfa_round_trips(d in named_dfa(4, 3), ds in prop::collection::vec(named_dfa(3, 2), 1..4)) {
        prop_assert_eq!(parse_dfa(&render_dfa(&d)).unwrap(), d);
        prop_assert_eq!(parse_dfa_list(&render_dfa_list(&ds)).unwrap(), ds);
    }

    #[test]
    fn digraph_round_trips(g in digraph(6)) {
        prop_assert_eq!(parse_digraph(&render_digraph(&g)).unwrap(), g);
    }
}
