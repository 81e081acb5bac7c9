//! Command table and dispatch.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use fundseq_core::archeck::{ar_formula_check, bidual_check, stab_adjunction_check, IsoVerdict};
use fundseq_core::fpmod::{dual, transpose, HomModule, TensorModule};
use fundseq_core::funcalc::{
    auslander_four_term, defect, derived_sq, quot_stabilize, satellite, sub_stabilize, torsion_radical, FourTermSide,
    FunctorExpr, Side,
};
use fundseq_core::fundseq::{
    circular_sequence, contra_fund, default_depth, hereditary_decomposition, left_fund_cov, right_fund_cov,
    splitting_test, SequenceReport,
};
use fundseq_core::resolve::{cosyzygy, ext, inj_resolution, proj_resolution, syzygy, tor, Resolution};
use fundseq_core::uct::{delta_functor_checks, uct_classical, uct_general, uct_special, Theory};
use fundseq_core::{FPModule, Morphism, RingDesc};
use serde_json::{json, Value};

use crate::gen::{Bounds, Gen, InstanceSpec};
use crate::io::{
    module_json, morphism_json, parse_ring, read_complex, read_module, read_morphism, CliError, CliResult,
};
use crate::suites::{find_suite, run_suite, Params, SUITES};

#[derive(Parser, Debug)]
#[command(name = "fundseq", version, about = "Exact fundamental sequences, universal coefficients and Auslander-Reiten checks over Z and Z/n")]
pub struct Cli {
    /// Base ring: Z or Z/n. Documents without a "ring" field use it.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Resolution depth (number of rows of a fundamental sequence).
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Number of sampled coefficients where a command or suite samples them.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Write the machine-readable report here.
    #[arg(long = "json-out", global = true)]
    pub json_out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Module invariants and constructions.
    Module {
        #[command(subcommand)]
        op: ModuleOp,
    },
    /// Resolutions, syzygies, Ext and Tor.
    Resolve {
        #[command(subcommand)]
        op: ResolveOp,
    },
    /// Shorthand for `resolve ext`.
    Ext(PairIndex),
    /// Shorthand for `resolve tor`.
    Tor(PairIndex),
    /// Evaluate functors, their stabilizations, satellites and derived functors.
    Functor {
        #[command(subcommand)]
        op: FunctorOp,
    },
    /// Build a long sequence and check its exactness verdicts.
    #[command(alias = "check")]
    Seq {
        #[command(subcommand)]
        op: SeqOp,
    },
    /// Universal coefficient sequences of a chain complex.
    Uct {
        #[command(subcommand)]
        op: UctOp,
    },
    /// Auslander-Reiten formula, adjunctions and the bidual sequence.
    Ar {
        #[command(subcommand)]
        op: ArOp,
    },
    /// Run a registered property suite.
    Suite(SuiteArgs),
}

#[derive(Args, Debug)]
pub struct One {
    #[arg(long = "A")]
    pub a: PathBuf,
}

#[derive(Args, Debug)]
pub struct Pair {
    #[arg(long = "A")]
    pub a: PathBuf,
    #[arg(long = "B")]
    pub b: PathBuf,
}

#[derive(Args, Debug)]
pub struct PairIndex {
    #[arg(long = "A")]
    pub a: PathBuf,
    #[arg(long = "B")]
    pub b: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub i: usize,
}

#[derive(Subcommand, Debug)]
pub enum ModuleOp {
    Show(One),
    Invariants(One),
    Dual(One),
    Transpose(One),
    Hom(Pair),
    Tensor(Pair),
}

#[derive(Args, Debug)]
pub struct Shift {
    #[arg(long = "A")]
    pub a: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Subcommand, Debug)]
pub enum ResolveOp {
    Proj(One),
    Inj(One),
    Syzygy(Shift),
    Cosyzygy(Shift),
    Ext(PairIndex),
    Tor(PairIndex),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FunctorKind {
    /// Hom(A, -)
    Hom,
    /// A ⊗ -
    Tensor,
    /// coker Hom(f, -) for f: A → B
    Fp,
    /// ker(f ⊗ -) for f: A → B
    Tc,
    /// Hom(-, A)
    HomContra,
    /// coker Hom(-, f) for f: B → A
    FpContra,
    /// Ext^degree(A, -)
    Ext,
    /// Tor_degree(A, -)
    Tor,
    /// Ext^degree(-, A)
    ExtContra,
}

#[derive(Args, Debug)]
pub struct FunctorArgs {
    #[arg(long, value_enum)]
    pub kind: FunctorKind,
    /// Module parameter for hom, tensor, ext and tor kinds.
    #[arg(long = "A")]
    pub a: Option<PathBuf>,
    /// Morphism parameter for fp, tc and fp-contra kinds.
    #[arg(long)]
    pub f: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
    /// Declare the functor half-exact.
    #[arg(long = "half-exact")]
    pub half_exact: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Right,
    Left,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Right => Side::Right,
            SideArg::Left => Side::Left,
        }
    }
}

#[derive(Args, Debug)]
pub struct AtX {
    #[command(flatten)]
    pub functor: FunctorArgs,
    #[arg(long = "X")]
    pub x: PathBuf,
}

#[derive(Args, Debug)]
pub struct Indexed {
    #[command(flatten)]
    pub functor: FunctorArgs,
    #[arg(long = "X")]
    pub x: PathBuf,
    #[arg(long)]
    pub i: usize,
    #[arg(long, value_enum, default_value = "right")]
    pub side: SideArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FourSide {
    Tensor,
    Hom,
}

#[derive(Args, Debug)]
pub struct FourTerm {
    #[arg(long = "A")]
    pub a: PathBuf,
    #[arg(long = "X")]
    pub x: PathBuf,
    #[arg(long, value_enum, default_value = "tensor")]
    pub side: FourSide,
}

#[derive(Subcommand, Debug)]
pub enum FunctorOp {
    Eval(AtX),
    Substab(AtX),
    Quotstab(AtX),
    Satellite(Indexed),
    Derived(Indexed),
    Defect(FunctorArgs),
    Fourterm(FourTerm),
    Torsionradical(One),
}

#[derive(Args, Debug)]
pub struct MapPair {
    #[arg(long)]
    pub f: PathBuf,
    #[arg(long)]
    pub g: PathBuf,
}

#[derive(Args, Debug)]
pub struct AtB {
    #[command(flatten)]
    pub functor: FunctorArgs,
    #[arg(long = "B")]
    pub b: PathBuf,
}

#[derive(Args, Debug)]
pub struct Hereditary {
    #[arg(long)]
    pub f: PathBuf,
    /// Coefficient modules; random ones are drawn when none are given.
    #[arg(long = "X")]
    pub x: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum SeqOp {
    Circular(MapPair),
    RightCov(AtB),
    LeftCov(AtB),
    ContraRight(AtB),
    ContraLeft(AtB),
    /// Splitting of the short exact sequence given by `f` then `g`.
    Split(MapPair),
    Hereditary(Hereditary),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum WhichArg {
    Cohomology,
    Homology,
}

impl From<WhichArg> for Theory {
    fn from(w: WhichArg) -> Theory {
        match w {
            WhichArg::Cohomology => Theory::Cohomology,
            WhichArg::Homology => Theory::Homology,
        }
    }
}

#[derive(Args, Debug)]
pub struct UctArgs {
    #[arg(long)]
    pub complex: PathBuf,
    #[arg(long = "B")]
    pub b: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub n: i64,
    #[arg(long, value_enum, default_value = "cohomology")]
    pub which: WhichArg,
}

#[derive(Args, Debug)]
pub struct UctFixed {
    #[arg(long)]
    pub complex: PathBuf,
    #[arg(long = "B")]
    pub b: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub n: i64,
}

#[derive(Subcommand, Debug)]
pub enum UctOp {
    Classical(UctArgs),
    General(UctArgs),
    /// Cohomology of a projective complex.
    Projective(UctFixed),
    /// Homology of a flat complex.
    Flat(UctFixed),
    DeltaChecks(UctFixed),
}

#[derive(Args, Debug)]
pub struct Adjunction {
    #[arg(long = "A")]
    pub a: PathBuf,
    #[arg(long = "B")]
    pub b: PathBuf,
    #[arg(long, value_enum, default_value = "right")]
    pub side: SideArg,
    /// Projective test module for the left adjunction.
    #[arg(long = "Q")]
    pub q: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ArOp {
    Formula(Pair),
    Adjunction(Adjunction),
    Bidual(One),
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// Suite name; see --list.
    pub name: Option<String>,
    #[arg(long)]
    pub list: bool,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long = "max-gens")]
    pub max_gens: Option<usize>,
    #[arg(long = "max-rels")]
    pub max_rels: Option<usize>,
    #[arg(long = "max-entry")]
    pub max_entry: Option<u64>,
    /// Replay a single instance.
    #[arg(long)]
    pub index: Option<usize>,
}

/// What a command produced: text for people, JSON for machines, and the
/// mathematical verdict when the command checks one.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub verdict: Option<bool>,
}

impl Outcome {
    fn info(text: String, json: Value) -> Outcome {
        Outcome { text, json, verdict: None }
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn invariants_str(m: &FPModule) -> String {
    let inv = m.invariants();
    let ds: Vec<String> = inv.divisors.iter().map(|d| d.to_string()).collect();
    let mut s = format!("[{}]", ds.join(", "));
    if inv.free_rank > 0 {
        s += &format!(" free rank {}", inv.free_rank);
    }
    s
}

fn module_out(m: &FPModule) -> Value {
    json!({ "module": m.to_string(), "invariants": invariants_str(m), "document": module_json(m) })
}

fn show(label: &str, m: &FPModule) -> String {
    format!("{label} = {m}    invariants {}\n", invariants_str(m))
}

fn sequence_json(rep: &SequenceReport, verdict: bool) -> Value {
    let nodes: Vec<Value> = rep
        .nodes
        .iter()
        .enumerate()
        .map(|(k, (label, m))| {
            json!({
                "label": label,
                "module": m.to_string(),
                "invariants": invariants_str(m),
                "exact": rep.exact_at[k],
                "derived": rep.derived_nodes.contains(&k),
            })
        })
        .collect();
    let ids: Vec<Value> = rep.identifications.iter().map(|i| json!({"label": i.label, "holds": i.holds})).collect();
    json!({
        "display": rep.display,
        "depth": rep.depth,
        "nodes": nodes,
        "composite_zero": rep.composite_zero,
        "identifications": ids,
        "verdict": verdict,
    })
}

/// A sequence verdict: the theorem for a functor of the given exactness,
/// plus every identification.
fn sequence_outcome(rep: SequenceReport, half_exact: bool) -> Outcome {
    let verdict = rep.theorem_holds(half_exact) && rep.identifications_hold();
    let mut text = rep.to_string();
    match rep.first_failure(half_exact) {
        None => text += "verdict: pass\n",
        Some((k, why)) => text += &format!("verdict: FAIL at node {k}: {why}\n"),
    }
    Outcome { text, json: sequence_json(&rep, verdict), verdict: Some(verdict) }
}

fn iso_outcome(name: &str, v: IsoVerdict) -> Outcome {
    let text = format!(
        "{name}\n  lhs = {}\n  rhs = {}\nverdict: {}\n",
        v.lhs,
        v.rhs,
        if v.holds { "pass" } else { "FAIL" }
    );
    let json = json!({ "check": name, "lhs": module_out(&v.lhs), "rhs": module_out(&v.rhs), "verdict": v.holds });
    Outcome { text, json, verdict: Some(v.holds) }
}

fn resolution_outcome(res: &Resolution) -> Outcome {
    let mut text = String::new();
    let mut terms = Vec::new();
    for (k, t) in res.terms.iter().enumerate() {
        text += &show(&format!("term {k}"), t);
        terms.push(module_out(t));
    }
    let diffs: Vec<Value> = res.differentials.iter().map(morphism_json).collect();
    Outcome::info(text, json!({ "direction": format!("{:?}", res.direction), "terms": terms, "differentials": diffs }))
}

struct Ctx {
    ring: Option<RingDesc>,
    seed: u64,
    depth: Option<usize>,
    samples: Option<usize>,
}

fn math(location: &str) -> impl Fn(fundseq_core::Error) -> CliError + '_ {
    move |e| CliError::math(location, e)
}

impl Ctx {
    fn module(&self, p: &Path) -> CliResult<FPModule> {
        read_module(p, self.ring.as_ref())
    }

    fn morphism(&self, p: &Path) -> CliResult<Morphism> {
        read_morphism(p, self.ring.as_ref())
    }

    fn depth(&self) -> usize {
        self.depth.unwrap_or_else(default_depth)
    }

    fn functor(&self, a: &FunctorArgs) -> CliResult<FunctorExpr> {
        let module = || {
            a.a.as_deref()
                .ok_or_else(|| CliError::Usage(format!("--kind {:?} needs --A", a.kind).to_lowercase()))
                .and_then(|p| self.module(p))
        };
        let map = || {
            a.f.as_deref()
                .ok_or_else(|| CliError::Usage(format!("--kind {:?} needs --f", a.kind).to_lowercase()))
                .and_then(|p| self.morphism(p))
        };
        let f = match a.kind {
            FunctorKind::Hom => FunctorExpr::hom_cov(&module()?),
            FunctorKind::Tensor => FunctorExpr::tensor_left(&module()?),
            FunctorKind::Fp => FunctorExpr::fp(&map()?),
            FunctorKind::Tc => FunctorExpr::tc(&map()?),
            FunctorKind::HomContra => FunctorExpr::hom_contra(&module()?),
            FunctorKind::FpContra => FunctorExpr::fp_contra(&map()?),
            FunctorKind::Ext => FunctorExpr::ext_fixed_first(&module()?, a.degree),
            FunctorKind::Tor => FunctorExpr::tor_fixed_first(&module()?, a.degree),
            FunctorKind::ExtContra => FunctorExpr::ext_fixed_second(&module()?, a.degree),
        };
        Ok(if a.half_exact { f.with_half_exact(true) } else { f })
    }
}

fn module_cmd(ctx: &Ctx, op: &ModuleOp) -> CliResult<Outcome> {
    Ok(match op {
        ModuleOp::Show(x) | ModuleOp::Invariants(x) => {
            let m = ctx.module(&x.a)?;
            let mut text = show("A", &m);
            if matches!(op, ModuleOp::Show(_)) {
                text += &format!("  {} generators, relations (columns):\n", m.gens());
                for row in m.relations().to_rows() {
                    let r: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                    text += &format!("    [{}]\n", r.join(", "));
                }
            }
            Outcome::info(text, module_out(&m))
        }
        ModuleOp::Dual(x) => {
            let d = dual(&ctx.module(&x.a)?).module().clone();
            Outcome::info(show("A*", &d), module_out(&d))
        }
        ModuleOp::Transpose(x) => {
            let t = transpose(&ctx.module(&x.a)?);
            Outcome::info(show("Tr A", &t), module_out(&t))
        }
        ModuleOp::Hom(p) => {
            let h = HomModule::new(&ctx.module(&p.a)?, &ctx.module(&p.b)?).module().clone();
            Outcome::info(show("Hom(A,B)", &h), module_out(&h))
        }
        ModuleOp::Tensor(p) => {
            let t = TensorModule::new(&ctx.module(&p.a)?, &ctx.module(&p.b)?).module().clone();
            Outcome::info(show("A⊗B", &t), module_out(&t))
        }
    })
}

fn ext_tor(ctx: &Ctx, p: &PairIndex, is_ext: bool) -> CliResult<Outcome> {
    let (a, b) = (ctx.module(&p.a)?, ctx.module(&p.b)?);
    if a.ring() != b.ring() {
        return Err(CliError::math("--B", fundseq_core::Error::RingMismatch(format!("{} vs {}", a.ring(), b.ring()))));
    }
    let (m, label) =
        if is_ext { (ext(&a, &b, p.i), format!("Ext^{}(A,B)", p.i)) } else { (tor(&a, &b, p.i), format!("Tor_{}(A,B)", p.i)) };
    Ok(Outcome::info(show(&label, &m), module_out(&m)))
}

fn resolve_cmd(ctx: &Ctx, op: &ResolveOp) -> CliResult<Outcome> {
    match op {
        ResolveOp::Proj(x) => Ok(resolution_outcome(&proj_resolution(&ctx.module(&x.a)?, ctx.depth()))),
        ResolveOp::Inj(x) => {
            let res = inj_resolution(&ctx.module(&x.a)?, ctx.depth()).map_err(math("--A"))?;
            Ok(resolution_outcome(&res))
        }
        ResolveOp::Syzygy(s) => {
            let m = syzygy(&ctx.module(&s.a)?, s.k);
            Ok(Outcome::info(show(&format!("Ω^{}A", s.k), &m), module_out(&m)))
        }
        ResolveOp::Cosyzygy(s) => {
            let m = cosyzygy(&ctx.module(&s.a)?, s.k).map_err(math("--A"))?;
            Ok(Outcome::info(show(&format!("Σ^{}A", s.k), &m), module_out(&m)))
        }
        ResolveOp::Ext(p) => ext_tor(ctx, p, true),
        ResolveOp::Tor(p) => ext_tor(ctx, p, false),
    }
}

fn functor_cmd(ctx: &Ctx, op: &FunctorOp) -> CliResult<Outcome> {
    let value = |label: String, m: FPModule| Outcome::info(show(&label, &m), module_out(&m));
    match op {
        FunctorOp::Eval(a) => {
            let f = ctx.functor(&a.functor)?;
            Ok(value("F(X)".into(), f.eval_obj(&ctx.module(&a.x)?).map_err(math("functor"))?))
        }
        FunctorOp::Substab(a) => {
            let f = ctx.functor(&a.functor)?;
            Ok(value("F̄(X)".into(), sub_stabilize(&f, &ctx.module(&a.x)?).map_err(math("functor"))?.0))
        }
        FunctorOp::Quotstab(a) => {
            let f = ctx.functor(&a.functor)?;
            Ok(value("F̲(X)".into(), quot_stabilize(&f, &ctx.module(&a.x)?).map_err(math("functor"))?.0))
        }
        FunctorOp::Satellite(a) => {
            let f = ctx.functor(&a.functor)?;
            let m = satellite(&f, a.i, a.side.into(), &ctx.module(&a.x)?).map_err(math("functor"))?;
            Ok(value(format!("S{}F(X) ({:?})", a.i, a.side), m))
        }
        FunctorOp::Derived(a) => {
            let f = ctx.functor(&a.functor)?;
            let m = derived_sq(&f, a.i, a.side.into(), &ctx.module(&a.x)?).map_err(math("functor"))?.as_module();
            Ok(value(format!("{}{}F(X)", if matches!(a.side, SideArg::Right) { "R" } else { "L" }, a.i), m))
        }
        FunctorOp::Defect(a) => Ok(value("defect".into(), defect(&ctx.functor(a)?).map_err(math("functor"))?)),
        FunctorOp::Fourterm(a) => {
            let which = match a.side {
                FourSide::Tensor => FourTermSide::TensorSide,
                FourSide::Hom => FourTermSide::HomSide,
            };
            let rep = auslander_four_term(&ctx.module(&a.a)?, &ctx.module(&a.x)?, which).map_err(math("fourterm"))?;
            Ok(sequence_outcome(rep, true))
        }
        FunctorOp::Torsionradical(a) => {
            let m = ctx.module(&a.a)?;
            if !m.ring().hereditary() {
                // Over Z/n every module is reflexive.
                let z = FPModule::zero(m.ring().clone());
                return Ok(value("ker(A → A**)".into(), z));
            }
            Ok(value("ker(A → A**)".into(), torsion_radical(&m).0))
        }
    }
}

fn seq_cmd(ctx: &Ctx, op: &SeqOp) -> CliResult<Outcome> {
    match op {
        SeqOp::Circular(p) => {
            let rep = circular_sequence(&ctx.morphism(&p.f)?, &ctx.morphism(&p.g)?).map_err(math("--g"))?;
            Ok(sequence_outcome(rep, true))
        }
        SeqOp::RightCov(a) | SeqOp::LeftCov(a) | SeqOp::ContraRight(a) | SeqOp::ContraLeft(a) => {
            let f = ctx.functor(&a.functor)?;
            let b = ctx.module(&a.b)?;
            let d = ctx.depth();
            let rep = match op {
                SeqOp::RightCov(_) => right_fund_cov(&f, &b, d),
                SeqOp::LeftCov(_) => left_fund_cov(&f, &b, d),
                SeqOp::ContraRight(_) => contra_fund(&f, &b, d, Side::Right),
                _ => contra_fund(&f, &b, d, Side::Left),
            }
            .map_err(math("sequence"))?;
            Ok(sequence_outcome(rep, f.half_exact))
        }
        SeqOp::Split(p) => {
            let (f, g) = (ctx.morphism(&p.f)?, ctx.morphism(&p.g)?);
            let rep = SequenceReport::new(
                "short exact sequence",
                0,
                vec![("A".into(), f.source().clone()), ("B".into(), f.target().clone()), ("C".into(), g.target().clone())],
                vec![f, g],
                vec![],
            )
            .map_err(math("--g"))?;
            let split = splitting_test(&rep).map_err(math("--g"))?;
            let text = match &split {
                Some(r) => format!("split; retraction matrix {:?}\n", r.matrix().to_rows()),
                None => "does not split\n".to_string(),
            };
            let json = json!({ "split": split.is_some(), "retraction": split.as_ref().map(morphism_json) });
            Ok(Outcome { text, json, verdict: Some(split.is_some()) })
        }
        SeqOp::Hereditary(h) => {
            let f = ctx.morphism(&h.f)?;
            let samples: Vec<FPModule> = if h.x.is_empty() {
                let mut g = Gen::new(ctx.seed, 0, f.ring().clone(), Bounds::default());
                (0..ctx.samples.unwrap_or(4)).map(|_| g.module()).collect()
            } else {
                h.x.iter().map(|p| ctx.module(p)).collect::<CliResult<_>>()?
            };
            let rep = hereditary_decomposition(&f, &samples).map_err(math("--f"))?;
            let mut text = show("w(F)", &rep.defect);
            let mut rows = Vec::new();
            for s in &rep.samples {
                text += &format!(
                    "  X = {}: F(X) = {}, F̄(X) = {}, Hom(w,X) = {}, decomposes {}, split {}\n",
                    s.coefficient, s.value, s.sub_stab, s.hom_defect, s.decomposes, s.split
                );
                rows.push(json!({
                    "X": module_json(&s.coefficient), "value": s.value.to_string(), "sub_stab": s.sub_stab.to_string(),
                    "hom_defect": s.hom_defect.to_string(), "decomposes": s.decomposes, "split": s.split,
                }));
            }
            let ok = rep.holds();
            text += &format!("verdict: {}\n", if ok { "pass" } else { "FAIL" });
            Ok(Outcome { text, json: json!({ "defect": module_out(&rep.defect), "samples": rows, "verdict": ok }), verdict: Some(ok) })
        }
    }
}

fn uct_cmd(ctx: &Ctx, op: &UctOp) -> CliResult<Outcome> {
    let load = |c: &Path, b: &Path| -> CliResult<_> { Ok((read_complex(c, ctx.ring.as_ref())?, ctx.module(b)?)) };
    match op {
        UctOp::Classical(u) => {
            let (c, b) = load(&u.complex, &u.b)?;
            let rep = uct_classical(&c, &b, u.n, u.which.into()).map_err(math("--complex"))?;
            let split = matches!(splitting_test(&rep), Ok(Some(_)));
            let mut out = sequence_outcome(rep, true);
            out.text += &format!("split: {split}\n");
            out.json["split"] = split.into();
            Ok(out)
        }
        UctOp::General(u) => {
            let (c, b) = load(&u.complex, &u.b)?;
            let rep = uct_general(&c, &b, u.n, ctx.depth(), u.which.into()).map_err(math("--complex"))?;
            Ok(sequence_outcome(rep, c.is_projective()))
        }
        UctOp::Projective(u) | UctOp::Flat(u) => {
            let (c, b) = load(&u.complex, &u.b)?;
            let which = if matches!(op, UctOp::Projective(_)) { Theory::Cohomology } else { Theory::Homology };
            let rep = uct_special(&c, &b, u.n, ctx.depth(), which).map_err(math("--complex"))?;
            Ok(sequence_outcome(rep, true))
        }
        UctOp::DeltaChecks(u) => {
            let (c, b) = load(&u.complex, &u.b)?;
            let d = delta_functor_checks(&c, &b, u.n).map_err(math("--complex"))?;
            let ok = d.all_hold();
            let text = format!(
                "theta {:?}\nxi {:?}\nxi-theta {:?}\neta {}\ntau {}\nverdict: {}\n",
                d.theta,
                d.xi,
                d.xi_theta,
                d.eta,
                d.tau,
                if ok { "pass" } else { "FAIL" }
            );
            let json = json!({ "theta": d.theta, "xi": d.xi, "xi_theta": d.xi_theta, "eta": d.eta, "tau": d.tau, "verdict": ok });
            Ok(Outcome { text, json, verdict: Some(ok) })
        }
    }
}

fn ar_cmd(ctx: &Ctx, op: &ArOp) -> CliResult<Outcome> {
    match op {
        ArOp::Formula(p) => {
            let v = ar_formula_check(&ctx.module(&p.a)?, &ctx.module(&p.b)?).map_err(math("--A"))?;
            Ok(iso_outcome("D Ext^1(A,B) ≅ Hom(B, D Tr A) modulo injectives", v))
        }
        ArOp::Adjunction(p) => {
            let q = p.q.as_deref().map(|q| ctx.module(q)).transpose()?;
            let v = stab_adjunction_check(&ctx.module(&p.a)?, &ctx.module(&p.b)?, p.side.into(), q.as_ref())
                .map_err(math("--A"))?;
            let name = match p.side {
                SideArg::Right => "D(F̄(B)) ≅ Hom(B, D A) modulo injectives, F = A ⊗ -",
                SideArg::Left => "Hom(Q, G̲(B)) ≅ Hom(Q ⊗ A, B) modulo projectives, G = Hom(A, -)",
            };
            Ok(iso_outcome(name, v))
        }
        ArOp::Bidual(x) => Ok(sequence_outcome(bidual_check(&ctx.module(&x.a)?).map_err(math("--A"))?, true)),
    }
}

fn suite_cmd(ctx: &Ctx, s: &SuiteArgs) -> CliResult<Outcome> {
    if s.list || s.name.is_none() {
        let mut text = String::new();
        for d in SUITES {
            text += &format!("{:<22} {}\n", d.name, d.about);
        }
        let names: Vec<&str> = SUITES.iter().map(|d| d.name).collect();
        return Ok(Outcome::info(text, json!({ "suites": names })));
    }
    let def = find_suite(s.name.as_deref().unwrap_or_default())?;
    let mut bounds = (def.bounds)();
    if let Some(v) = s.max_gens {
        bounds.max_gens = v;
    }
    if let Some(v) = s.max_rels {
        bounds.max_rels = v;
    }
    if let Some(v) = s.max_entry {
        bounds.max_entry = v;
    }
    let spec = InstanceSpec {
        seed: ctx.seed,
        ring: ctx.ring.clone().unwrap_or_else(def.default_ring),
        bounds,
        count: s.count.unwrap_or(def.default_count),
    };
    let params =
        Params { depth: ctx.depth.unwrap_or(def.default_depth), samples: ctx.samples.unwrap_or(def.default_samples) };
    let report = run_suite(def, &spec, &params, s.index)?;
    Ok(Outcome {
        text: report.summary(),
        json: serde_json::to_value(&report).expect("reports serialize"),
        verdict: Some(report.all_pass()),
    })
}

pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    let ctx = Ctx {
        ring: cli.ring.as_deref().map(parse_ring).transpose()?,
        seed: cli.seed.unwrap_or(42),
        depth: cli.depth,
        samples: cli.samples,
    };
    match &cli.command {
        Command::Module { op } => module_cmd(&ctx, op),
        Command::Resolve { op } => resolve_cmd(&ctx, op),
        Command::Ext(p) => ext_tor(&ctx, p, true),
        Command::Tor(p) => ext_tor(&ctx, p, false),
        Command::Functor { op } => functor_cmd(&ctx, op),
        Command::Seq { op } => seq_cmd(&ctx, op),
        Command::Uct { op } => uct_cmd(&ctx, op),
        Command::Ar { op } => ar_cmd(&ctx, op),
        Command::Suite(s) => suite_cmd(&ctx, s),
    }
}

/// Runs a parsed command line, prints the reports and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Ok(out) => {
            print!("{}", out.text);
            if let Some(path) = &cli.json_out {
                let body = serde_json::to_string_pretty(&out.json).expect("reports serialize") + "\n";
                if let Err(e) = std::fs::write(path, body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            match out.verdict {
                Some(false) => EXIT_FAIL,
                _ => EXIT_PASS,
            }
        }
    }
}
