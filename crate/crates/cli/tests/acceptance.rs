//! One test per acceptance criterion. Each prints a single PASS/FAIL line with
//! the instance counts behind it; every verdict is exact, nothing is tolerated.
//! Lines go straight to the stderr handle so they show up without
//! `--nocapture`.

use std::io::Write;
use std::time::{Duration, Instant};

use fundseq_cli::gen::{Bounds, InstanceSpec};
use fundseq_cli::suites::{find_suite, run_suite, Params, SuiteReport};
use fundseq_core::fundseq::splitting_test;
use fundseq_core::uct::{uct_classical, Complex, Theory};
use fundseq_core::{FPModule, IntMat, Morphism, RingDesc};

struct Run {
    name: &'static str,
    ring: RingDesc,
    count: usize,
    depth: Option<usize>,
    samples: Option<usize>,
    bounds: Option<Bounds>,
}

fn run(name: &'static str, ring: RingDesc, count: usize) -> Run {
    Run { name, ring, count, depth: None, samples: None, bounds: None }
}

impl Run {
    fn depth(mut self, d: usize) -> Run {
        self.depth = Some(d);
        self
    }

    fn samples(mut self, s: usize) -> Run {
        self.samples = Some(s);
        self
    }

    fn bounds(mut self, b: Bounds) -> Run {
        self.bounds = Some(b);
        self
    }

    fn go(self) -> SuiteReport {
        let def = find_suite(self.name).unwrap();
        let spec = InstanceSpec {
            seed: 2024,
            ring: self.ring,
            bounds: self.bounds.unwrap_or_else(def.bounds),
            count: self.count,
        };
        let params = Params {
            depth: self.depth.unwrap_or(def.default_depth),
            samples: self.samples.unwrap_or(def.default_samples),
        };
        run_suite(def, &spec, &params, None).unwrap()
    }
}

/// Prints the criterion line and fails the test on any failed verdict.
fn verdict(id: usize, title: &str, reports: &[SuiteReport], extra: &[(&str, bool)], elapsed: Duration, budget: Duration) {
    let mut parts: Vec<String> = reports
        .iter()
        .map(|r| format!("{} over {}: {}/{}", r.suite, r.ring, r.passes, r.count))
        .collect();
    parts.extend(extra.iter().map(|(name, ok)| format!("{name}: {}", if *ok { "ok" } else { "FAILED" })));
    let in_time = elapsed <= budget;
    let ok = reports.iter().all(|r| r.all_pass() && r.count > 0) && extra.iter().all(|(_, v)| *v) && in_time;
    let line = format!(
        "criterion {id:>2} {} {title} [{}] ({:.2}s, target {}s)\n",
        if ok { "PASS" } else { "FAIL" },
        parts.join("; "),
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    let mut err = std::io::stderr().lock();
    err.write_all(line.as_bytes()).unwrap();
    for r in reports.iter().filter(|r| !r.all_pass()) {
        err.write_all(r.summary().as_bytes()).unwrap();
    }
    assert!(ok, "criterion {id} failed");
}

fn z() -> RingDesc {
    RingDesc::Integers
}

fn zn(n: i64) -> RingDesc {
    RingDesc::zmod(n)
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

#[test]
fn criterion_01_circular_sequence() {
    let t = Instant::now();
    let reps: Vec<_> = [z(), zn(4), zn(12)].into_iter().map(|r| run("circular-exactness", r, 200).go()).collect();
    let total: usize = reps.iter().map(|r| r.passes).sum();
    verdict(1, "circular sequence exact", &reps, &[("600/600", total == 600)], t.elapsed(), secs(60));
}

#[test]
fn criterion_02_right_fundamental_sequence() {
    let t = Instant::now();
    let reps: Vec<_> =
        [zn(4), zn(8)].into_iter().map(|r| run("right-fundamental", r, 50).depth(4).samples(4).go()).collect();
    verdict(2, "right fundamental sequence of Hom and tensor", &reps, &[], t.elapsed(), secs(300));
}

#[test]
fn criterion_03_left_fundamental_sequence() {
    let t = Instant::now();
    let reps: Vec<_> = [z(), zn(4)].into_iter().map(|r| run("left-fundamental", r, 50).depth(4).samples(4).go()).collect();
    verdict(3, "left fundamental sequence of Hom and tensor", &reps, &[], t.elapsed(), secs(300));
}

#[test]
fn criterion_04_fp_identifications() {
    let t = Instant::now();
    let reps: Vec<_> =
        [z(), zn(4)].into_iter().map(|r| run("fp-identifications", r, 100).depth(4).samples(5).go()).collect();
    verdict(4, "finitely presented functor identifications", &reps, &[], t.elapsed(), secs(300));
}

#[test]
fn criterion_05_auslander_four_term() {
    let t = Instant::now();
    let reps: Vec<_> = [z(), zn(4)].into_iter().map(|r| run("auslander-four-term", r, 100).go()).collect();
    verdict(5, "four-term sequences and transpose stabilizations", &reps, &[], t.elapsed(), secs(300));
}

#[test]
fn criterion_06_ext_tor_oracle() {
    let t = Instant::now();
    let reps = [run("ext-tor-oracle", z(), 200).go()];
    verdict(6, "Ext/Tor against the classification oracle", &reps, &[], t.elapsed(), secs(300));
}

/// `C: ℤ --2--> ℤ` in degrees 1 and 0 with `B = ℤ/2`.
fn worked_instance() -> Vec<(&'static str, bool)> {
    let r = FPModule::free(z(), 1);
    let two = Morphism::new(&r, &r, IntMat::from_rows(&[vec![2]])).unwrap();
    let c = Complex::new(z(), 0, vec![r.clone(), r], vec![two]).unwrap();
    let b = FPModule::cyclic(z(), 2);
    let c2 = FPModule::cyclic(z(), 2);
    let coh = uct_classical(&c, &b, 1, Theory::Cohomology).unwrap();
    let hom = uct_classical(&c, &b, 1, Theory::Homology).unwrap();
    vec![
        ("worked H^1(C;Z/2) = Z/2", coh.node("H^n(C,B)").unwrap().iso(&c2)),
        ("worked Ext node = Z/2", coh.nodes[1].1.iso(&c2)),
        ("worked Hom(H_1(C),Z/2) = 0", coh.nodes[3].1.is_zero()),
        ("worked cohomology exact and split", coh.is_exact() && matches!(splitting_test(&coh), Ok(Some(_)))),
        ("worked H_1(C⊗Z/2) = Z/2", hom.node("H_n(C⊗B)").unwrap().iso(&c2)),
        ("worked homology exact and split", hom.is_exact() && matches!(splitting_test(&hom), Ok(Some(_)))),
    ]
}

#[test]
fn criterion_07_classical_uct() {
    let t = Instant::now();
    let reps = [run("uct-classical", z(), 100).bounds(Bounds { max_gens: 4, max_rels: 4, max_entry: 4 }).go()];
    verdict(7, "classical universal coefficient sequences split", &reps, &worked_instance(), t.elapsed(), secs(300));
}

#[test]
fn criterion_08_general_uct() {
    let t = Instant::now();
    let reps = [run("uct-general", zn(4), 100).go(), run("uct-general", z(), 100).go()];
    verdict(8, "fundamental sequences of arbitrary complexes", &reps, &[], t.elapsed(), secs(300));
}

#[test]
fn criterion_09_special_uct() {
    let t = Instant::now();
    let reps = [run("uct-special", zn(4), 50).depth(3).go(), run("uct-special", z(), 100).depth(3).go()];
    verdict(9, "projective/flat sequences and dimension shifts", &reps, &[], t.elapsed(), secs(300));
}

#[test]
fn criterion_10_contravariant() {
    let t = Instant::now();
    let reps: Vec<_> = [z(), zn(4)].into_iter().map(|r| run("contravariant", r, 100).depth(3).go()).collect();
    verdict(10, "contravariant fundamental sequences", &reps, &[], t.elapsed(), secs(300));
}

#[test]
fn criterion_11_ar_formula() {
    let t = Instant::now();
    let reps: Vec<_> = [zn(4), zn(8), zn(9), zn(12), z()].into_iter().map(|r| run("ar-formula", r, 100).go()).collect();
    verdict(11, "AR formula, adjunctions, bidual sequence, torsion radical", &reps, &[], t.elapsed(), secs(300));
}

#[test]
fn criterion_12_hereditary_decomposition() {
    let t = Instant::now();
    let reps = [run("hereditary", z(), 50).samples(4).go()];
    verdict(12, "hereditary decomposition and satellite recovery", &reps, &[], t.elapsed(), secs(300));
}
