//! End-to-end runs of the `fundseq` binary plus document round trips.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fundseq_cli::gen::{Bounds, Gen};
use fundseq_cli::io::{input_json, parse_input, parse_str, Input};
use fundseq_core::RingDesc;
use proptest::prelude::*;
use serde_json::Value;
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Fixture {
        Fixture { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn fundseq(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fundseq"));
    for a in args {
        cmd.arg(a);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const Z2: &str = r#"{"ring":{"kind":"Z"},"gens":1,"relations":[["2"]]}"#;
const Z4: &str = r#"{"ring":{"kind":"Z"},"gens":1,"relations":[["4"]]}"#;
/// ℤ --2--> ℤ
const TIMES_TWO: &str = r#"{"ring":{"kind":"Z"},"source":{"gens":1,"relations":[]},"target":{"gens":1,"relations":[]},"matrix":[["2"]]}"#;
/// ℤ --> ℤ/2
const REDUCE: &str = r#"{"ring":{"kind":"Z"},"source":{"gens":1,"relations":[]},"target":{"gens":1,"relations":[["2"]]},"matrix":[["1"]]}"#;

#[test]
fn ext_of_cyclic_groups() {
    let fx = Fixture::new();
    let (a, b) = (fx.file("a.json", Z2), fx.file("b.json", Z4));
    let out = fundseq(&[&"ext", &"--A", &a, &"--B", &b, &"--i", &"1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("[2]"), "{}", stdout(&out));
}

#[test]
fn circular_check_passes_on_composable_maps() {
    let fx = Fixture::new();
    let (f, g) = (fx.file("f.json", TIMES_TWO), fx.file("g.json", REDUCE));
    let out = fundseq(&[&"check", &"circular", &"--f", &f, &"--g", &g]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("verdict: pass"));
}

#[test]
fn nonsplit_sequence_exits_with_failure() {
    let fx = Fixture::new();
    let (f, g) = (fx.file("f.json", TIMES_TWO), fx.file("g.json", REDUCE));
    let json = fx.path("split.json");
    let out = fundseq(&[&"seq", &"split", &"--f", &f, &"--g", &g, &"--json-out", &json]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    assert!(json.exists());
}

#[test]
fn classical_uct_rejects_nonprojective_terms() {
    let fx = Fixture::new();
    let c = fx.file(
        "c.json",
        r#"{"ring":{"kind":"Z"},"support":[0,1],"terms":[{"gens":1,"relations":[["2"]]},{"gens":1,"relations":[]}],"differentials":[[["0"]]]}"#,
    );
    let b = fx.file("b.json", Z2);
    let out = fundseq(&[&"uct", &"classical", &"--complex", &c, &"--B", &b]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("hypothesis violated"), "{}", stderr(&out));
}

#[test]
fn malformed_inputs_are_usage_errors() {
    let fx = Fixture::new();
    let b = fx.file("b.json", Z2);
    // ℤ/2 → ℤ/4 sending the generator to 1 does not kill the relation.
    let bad_map = fx.file(
        "bad.json",
        r#"{"ring":{"kind":"Z"},"source":{"gens":1,"relations":[[2]]},"target":{"gens":1,"relations":[[4]]},"matrix":[[1]]}"#,
    );
    let g = fx.file("g.json", REDUCE);
    let out = fundseq(&[&"seq", &"split", &"--f", &bad_map, &"--g", &g]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not well defined"), "{}", stderr(&out));

    let not_complex = fx.file(
        "nac.json",
        r#"{"ring":{"kind":"Z"},"support":[0,2],"terms":[{"gens":1},{"gens":1},{"gens":1}],"differentials":[[[2]],[[2]]]}"#,
    );
    let out = fundseq(&[&"uct", &"classical", &"--complex", &not_complex, &"--B", &b]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not a complex"), "{}", stderr(&out));

    let schema = fx.file("s.json", r#"{"ring":{"kind":"ZmodN","n":1},"gens":1,"relations":[]}"#);
    let out = fundseq(&[&"module", &"invariants", &"--A", &schema]);
    assert_eq!(out.status.code(), Some(2));

    let out = fundseq(&[&"module", &"invariants", &"--A", &fx.path("missing.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_suite_lists_the_registered_ones() {
    let out = fundseq(&[&"suite", &"no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("circular-exactness"));
}

#[test]
fn empty_suite_run_warns() {
    let out = fundseq(&[&"suite", &"circular-exactness", &"--count", &"0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("vacuous"));
}

#[test]
fn suite_rejects_an_unsupported_ring() {
    let out = fundseq(&[&"--ring", &"Z/4", &"suite", &"ext-tor-oracle", &"--count", &"3"]);
    assert_eq!(out.status.code(), Some(2));
}

fn report_without_timing(p: &Path) -> Value {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("duration_ms");
    v
}

#[test]
fn suite_reports_are_reproducible() {
    let fx = Fixture::new();
    let (a, b) = (fx.path("a.json"), fx.path("b.json"));
    for p in [&a, &b] {
        let out = fundseq(&[&"--ring", &"Z/12", &"--seed", &"7", &"--json-out", p, &"suite", &"circular-exactness", &"--count", &"25"]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    }
    let ra = report_without_timing(&a);
    assert_eq!(ra, report_without_timing(&b));
    assert_eq!(ra["passes"], 25);
}

#[test]
fn replaying_one_instance() {
    let out = fundseq(&[&"suite", &"ar-formula", &"--ring", &"Z/8", &"--count", &"10", &"--index", &"4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("1/1"), "{}", stdout(&out));
}

#[test]
fn entries_beyond_64_bits_survive_a_round_trip() {
    let doc = r#"{"ring":{"kind":"Z"},"gens":2,"relations":[["123456789012345678901234567890"],["-5"]]}"#;
    let x = parse_str(doc, None, "big").unwrap();
    let v = input_json(&x);
    assert_eq!(v["relations"][0][0], "123456789012345678901234567890");
}

fn same_input(a: &Input, b: &Input) -> bool {
    match (a, b) {
        (Input::Module(x), Input::Module(y)) => x.relations() == y.relations() && x.ring() == y.ring(),
        (Input::Morphism(f), Input::Morphism(g)) => {
            f.matrix() == g.matrix()
                && f.source().relations() == g.source().relations()
                && f.target().relations() == g.target().relations()
        }
        (Input::Complex(c), Input::Complex(d)) => {
            c.support() == d.support()
                && c.terms().iter().zip(d.terms()).all(|(s, t)| s.relations() == t.relations())
                && c.differentials().iter().zip(d.differentials()).all(|(f, g)| f.matrix() == g.matrix())
        }
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn documents_round_trip(seed in any::<u64>(), n in prop_oneof![Just(0i64), Just(4), Just(12)], kind in 0usize..3) {
        let ring = if n == 0 { RingDesc::Integers } else { RingDesc::zmod(n) };
        let mut g = Gen::new(seed, 0, ring, Bounds::default());
        let x = match kind {
            0 => Input::Module(g.module()),
            1 => {
                let (a, b) = (g.module(), g.module());
                Input::Morphism(g.morphism(&a, &b))
            }
            _ => Input::Complex(g.complex(3, false)),
        };
        let back = parse_input(&input_json(&x), None).unwrap();
        prop_assert!(same_input(&x, &back));
    }
}
