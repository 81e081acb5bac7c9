//! Registered property suites. Each suite draws one instance per index from
//! its own random stream, evaluates a theorem on it and records a verdict per
//! checked claim.

use std::collections::BTreeMap;
use std::time::Instant;

use fundseq_core::archeck::{ar_formula_check, bidual_check, stab_adjunction_check, stable_hom, StableMod};
use fundseq_core::fpmod::{direct_sum, kernel, transpose, HomModule};
use fundseq_core::funcalc::{
    auslander_four_term, defect, derived_sq, lambda, quot_stabilize, rho, satellite, sub_stabilize, sub_stabilize_fp,
    torsion_radical, FourTermSide, FunctorExpr, Legs, Side,
};
use fundseq_core::fundseq::{
    circular_sequence, contra_fund, hereditary_decomposition, left_fund_cov, right_fund_cov, splitting_test,
    SequenceReport,
};
use fundseq_core::resolve::{ext, ext_tor_oracle_z, ext_via_injective, free_cover, tor, Which};
use fundseq_core::uct::{
    delta_functor_checks, homology_qstab, uct_classical, uct_general, uct_special, Complex, Theory,
};
use fundseq_core::{Error, FPModule, Morphism, RingDesc};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::gen::{Bounds, Gen, InstanceSpec};
use crate::io::{complex_json, module_json, morphism_json, CliError, CliResult};

/// Knobs shared by all suites.
#[derive(Clone, Debug, Serialize)]
pub struct Params {
    pub depth: usize,
    pub samples: usize,
}

/// One checked claim on one instance.
#[derive(Clone, Debug)]
pub struct Check {
    pub property: String,
    pub node: String,
    pub holds: bool,
}

/// Inputs and verdicts of one instance.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub inputs: serde_json::Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Outcome {
    fn input(&mut self, name: &str, v: Value) {
        self.inputs.insert(name.to_string(), v);
    }

    fn check(&mut self, property: &str, node: impl Into<String>, holds: bool) {
        self.checks.push(Check { property: property.to_string(), node: node.into(), holds });
    }

    fn iso(&mut self, property: &str, node: impl Into<String>, a: &FPModule, b: &FPModule) {
        self.check(property, node, a.iso(b));
    }

    /// Exactness verdicts of a sequence. Nodes where exactness is only
    /// promised for half-exact functors are checked as complexes otherwise.
    fn sequence(&mut self, property: &str, tag: &str, rep: &SequenceReport, half_exact: bool) {
        for (k, ok) in rep.composite_zero.iter().enumerate() {
            if !ok {
                self.check(property, format!("{tag}{} composite through {}", rep.display, rep.nodes[k + 1].0), false);
            }
        }
        for (k, v) in rep.exact_at.iter().enumerate() {
            if let Some(ok) = v {
                if half_exact || !rep.derived_nodes.contains(&k) {
                    self.check(property, format!("{tag}{} exact_at {}", rep.display, rep.nodes[k].0), *ok);
                }
            }
        }
        for id in &rep.identifications {
            self.check(property, format!("{tag}{} identifies {}", rep.display, id.label), id.holds);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

type SuiteFn = fn(&mut Gen, &Params, &mut Outcome) -> fundseq_core::Result<()>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rings {
    Any,
    IntegersOnly,
    SelfInjective,
}

impl Rings {
    fn allows(self, r: &RingDesc) -> bool {
        match self {
            Rings::Any => true,
            Rings::IntegersOnly => r.hereditary(),
            Rings::SelfInjective => r.quasi_frobenius(),
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Rings::Any => "Z or Z/n",
            Rings::IntegersOnly => "Z",
            Rings::SelfInjective => "Z/n",
        }
    }
}

pub struct SuiteDef {
    pub name: &'static str,
    pub about: &'static str,
    rings: Rings,
    pub default_ring: fn() -> RingDesc,
    pub default_count: usize,
    pub default_depth: usize,
    pub default_samples: usize,
    pub bounds: fn() -> Bounds,
    run: SuiteFn,
}

impl SuiteDef {
    pub fn supports(&self, r: &RingDesc) -> bool {
        self.rings.allows(r)
    }
}

fn z() -> RingDesc {
    RingDesc::Integers
}

fn z4() -> RingDesc {
    RingDesc::zmod(4)
}

fn complexes() -> Bounds {
    Bounds { max_gens: 4, max_rels: 4, max_entry: 4 }
}

pub static SUITES: &[SuiteDef] = &[
    SuiteDef {
        name: "circular-exactness",
        about: "six-term kernel-cokernel sequence of a random composable pair",
        rings: Rings::Any,
        default_ring: z,
        default_count: 200,
        default_depth: 0,
        default_samples: 0,
        bounds: Bounds::default,
        run: circular,
    },
    SuiteDef {
        name: "right-fundamental",
        about: "right fundamental sequences of Hom(A,-) and A⊗- with their collapse identifications",
        rings: Rings::SelfInjective,
        default_ring: z4,
        default_count: 50,
        default_depth: 4,
        default_samples: 4,
        bounds: Bounds::default,
        run: right_fundamental,
    },
    SuiteDef {
        name: "left-fundamental",
        about: "left fundamental sequences of Hom(A,-) and A⊗-, λ and the Tor identification",
        rings: Rings::Any,
        default_ring: z,
        default_count: 50,
        default_depth: 4,
        default_samples: 4,
        bounds: Bounds::default,
        run: left_fundamental,
    },
    SuiteDef {
        name: "fp-identifications",
        about: "right derived functors and sub-stabilization of finitely presented functors",
        rings: Rings::Any,
        default_ring: z,
        default_count: 100,
        default_depth: 4,
        default_samples: 5,
        bounds: Bounds::default,
        run: fp_identifications,
    },
    SuiteDef {
        name: "auslander-four-term",
        about: "both four-term sequences through the transpose, and the stabilizations of ⊗ and Hom",
        rings: Rings::Any,
        default_ring: z,
        default_count: 100,
        default_depth: 0,
        default_samples: 0,
        bounds: Bounds::default,
        run: four_term,
    },
    SuiteDef {
        name: "ext-tor-oracle",
        about: "resolution-based Ext and Tor against the classification of both arguments",
        rings: Rings::IntegersOnly,
        default_ring: z,
        default_count: 200,
        default_depth: 0,
        default_samples: 0,
        bounds: Bounds::default,
        run: ext_tor_oracle,
    },
    SuiteDef {
        name: "uct-classical",
        about: "split short exact universal coefficient sequences of free complexes",
        rings: Rings::IntegersOnly,
        default_ring: z,
        default_count: 100,
        default_depth: 0,
        default_samples: 0,
        bounds: complexes,
        run: uct_classical_suite,
    },
    SuiteDef {
        name: "uct-general",
        about: "fundamental sequences of cohomology and homology of arbitrary complexes",
        rings: Rings::Any,
        default_ring: z4,
        default_count: 100,
        default_depth: 3,
        default_samples: 0,
        bounds: complexes,
        run: uct_general_suite,
    },
    SuiteDef {
        name: "uct-special",
        about: "projective and flat universal coefficient sequences and the dimension-shift lemmas",
        rings: Rings::Any,
        default_ring: z4,
        default_count: 50,
        default_depth: 3,
        default_samples: 0,
        bounds: complexes,
        run: uct_special_suite,
    },
    SuiteDef {
        name: "contravariant",
        about: "fundamental sequences of contravariant functors and the split first row over Z",
        rings: Rings::Any,
        default_ring: z,
        default_count: 100,
        default_depth: 3,
        default_samples: 0,
        bounds: Bounds::default,
        run: contravariant,
    },
    SuiteDef {
        name: "ar-formula",
        about: "Auslander-Reiten formula, stabilization adjunctions, bidual sequence and torsion radical",
        rings: Rings::Any,
        default_ring: z4,
        default_count: 100,
        default_depth: 0,
        default_samples: 0,
        bounds: Bounds::default,
        run: ar_formula,
    },
    SuiteDef {
        name: "hereditary",
        about: "split decomposition of Ext^1(D,-) ⊕ Hom(E,-) over Z and recovery of D by the left satellite",
        rings: Rings::IntegersOnly,
        default_ring: z,
        default_count: 50,
        default_depth: 0,
        default_samples: 4,
        bounds: Bounds::default,
        run: hereditary,
    },
];

pub fn find_suite(name: &str) -> CliResult<&'static SuiteDef> {
    SUITES.iter().find(|s| s.name == name).ok_or_else(|| {
        let names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
        CliError::Usage(format!("unknown suite `{name}`; registered suites: {}", names.join(", ")))
    })
}

fn modules_json(ms: &[FPModule]) -> Value {
    Value::Array(ms.iter().map(module_json).collect())
}

fn shift(sym: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{k}"),
    }
}

fn node<'a>(rep: &'a SequenceReport, label: &str) -> fundseq_core::Result<&'a FPModule> {
    rep.node(label).ok_or_else(|| Error::InvalidInput(format!("{} has no node {label}", rep.display)))
}

fn circular(g: &mut Gen, _: &Params, out: &mut Outcome) -> fundseq_core::Result<()> {
    let (f, h) = g.composable_pair();
    out.input("f", morphism_json(&f));
    out.input("g", morphism_json(&h));
    let rep = circular_sequence(&f, &h)?;
    out.sequence("circular sequence exact", "", &rep, true);
    Ok(())
}

fn right_fundamental(g: &mut Gen, p: &Params, out: &mut Outcome) -> fundseq_core::Result<()> {
    let a = g.module();
    let bs: Vec<FPModule> = (0..p.samples).map(|_| g.module()).collect();
    out.input("A", module_json(&a));
    out.input("B", modules_json(&bs));
    let (hom, ten) = (FunctorExpr::hom_cov(&a), FunctorExpr::tensor_left(&a));
    for (j, b) in bs.iter().enumerate() {
        let tag = format!("B[{j}] ");
        let rep = right_fund_cov(&hom, b, p.depth)?;
        out.sequence("Hom(A,-) right sequence exact", &tag, &rep, true);
        out.check("Hom(A,-) sub-stabilization vanishes", format!("{tag}F̄(B)"), node(&rep, "F̄(B)")?.is_zero());
        out.check("Hom(A,-) rho is an isomorphism", format!("{tag}ρ_F(B)"), rho(&hom, b)?.is_iso());

        let rep = right_fund_cov(&ten, b, p.depth)?;
        out.sequence("A⊗- right sequence exact", &tag, &rep, true);
        for i in 1..p.depth {
            let label = format!("S^{i}F(B)");
            out.check("A⊗- satellites vanish", format!("{tag}{label}"), node(&rep, &label)?.is_zero());
        }
        // Right exactness gives the shift isomorphism from the second row on.
        for i in 1..p.depth {
            let (r, s) = (format!("R^{i}F(B)"), format!("F̄({}B)", shift("Σ", i + 1)));
            out.iso("A⊗- derived functors are shifted sub-stabilizations", format!("{tag}{r} ≅ {s}"), node(&rep, &r)?, node(&rep, &s)?);
        }
    }
    Ok(())
}

fn left_fundamental(g: &mut Gen, p: &Params, out: &mut Outcome) -> fundseq_core::Result<()> {
    let a = g.module();
    let bs: Vec<FPModule> = (0..p.samples).map(|_| g.module()).collect();
    out.input("A", module_json(&a));
    out.input("B", modules_json(&bs));
    let (hom, ten) = (FunctorExpr::hom_cov(&a), FunctorExpr::tensor_left(&a));
    for (j, b) in bs.iter().enumerate() {
        let tag = format!("B[{j}] ");
        let rep = left_fund_cov(&hom, b, p.depth)?;
        out.sequence("Hom(A,-) left sequence exact", &tag, &rep, true);
        let rep = left_fund_cov(&ten, b, p.depth)?;
        out.sequence("A⊗- left sequence exact", &tag, &rep, true);
        out.check("A⊗- lambda is an isomorphism", format!("{tag}λ_F(B)"), lambda(&ten, b)?.is_iso());
        for i in 0..p.depth {
            let label = format!("L_{i}F(B)");
            out.iso("A⊗- left derived functors are Tor", format!("{tag}{label} ≅ Tor_{i}(A,B)"), node(&rep, &label)?, &tor(&a, b, i));
        }
    }
    Ok(())
}

fn fp_identifications(g: &mut Gen, p: &Params, out: &mut Outcome) -> fundseq_core::Result<()> {
    let (a, b) = (g.module(), g.module());
    let f = g.morphism(&a, &b);
    let xs: Vec<FPModule> = (0..p.samples).map(|_| g.module()).collect();
    out.input("f", morphism_json(&f));
    out.input("X", modules_json(&xs));
    let func = FunctorExpr::fp(&f);
    let w = defect(&func)?;
    for (j, x) in xs.iter().enumerate() {
        let tag = format!("X[{j}] ");
        let hom = HomModule::new(&w, x).module().clone();
        if x.ring().quasi_frobenius() {
            let legs = Legs::new(&func, Side::Right, x, p.depth.max(1))?;
            out.iso("R^0 FP(f) ≅ Hom(w, -)", format!("{tag}R^0F(X)"), &legs.derived(0).as_module(), &hom);
            for i in 1..p.depth {
                let e = ext_via_injective(&w, x, i)?;
                out.iso("R^i FP(f) ≅ Ext^i(w, -)", format!("{tag}R^{i}F(X)"), &legs.derived(i).as_module(), &e);
            }
            out.iso(
                "fp sub-stabilization matches the direct one",
                format!("{tag}F̄(X)"),
                &sub_stabilize_fp(&f, x).0,
                &sub_stabilize(&func, x)?.0,
            );
        } else {
            out.iso("R^0 FP(f) ≅ Hom(w, -)", format!("{tag}R^0F(X)"), &derived_sq(&func, 0, Side::Right, x)?.as_module(), &hom);
            let rep = right_fund_cov(&func, x, 0)?;
            out.sequence("first row exact", &tag, &rep, false);
        }
    }
    Ok(())
}

fn four_term(g: &mut Gen, _: &Params, out: &mut Outcome) -> fundseq_core::Result<()> {
    let (a, x) = (g.module(), g.module());
    out.input("A", module_json(&a));
    out.input("X", module_json(&x));
    let rep = auslander_four_term(&a, &x, FourTermSide::TensorSide)?;
    out.sequence("tensor-side four-term sequence exact", "", &rep, true);
    let rep = auslander_four_term(&a, &x, FourTermSide::HomSide)?;
    out.sequence("Hom-side four-term sequence exact", "", &rep, true);
    let tr = transpose(&a);
    let s = sub_stabilize(&FunctorExpr::tensor_left(&a), &x)?.0;
    out.iso("sub-stabilized tensor is Ext^1(TrA,-)", "F̄(X) ≅ Ext^1(TrA,X)", &s, &ext(&tr, &x, 1));
    let q = quot_stabilize(&FunctorExpr::hom_cov(&a), &x)?.0;
    out.iso("quot-stabilized Hom is Tor_1(TrA,-)", "F̲(X) ≅ Tor_1(TrA,X)", &q, &tor(&tr, &x, 1));
    Ok(())
}

fn ext_tor_oracle(g: &mut Gen, _: &Params, out: &mut Outcome) -> fundseq_core::Result<()> {
    let (m, n) = (g.module(), g.module());
    out.input("M", module_json(&m));
    out.input("N", module_json(&n));
    for i in 0..=1 {
        out.iso("Ext matches the oracle", format!("Ext^{i}(M,N)"), &ext(&m, &n, i), &ext_tor_oracle_z(&m, &n, i, Which::Ext)?);
        out.iso("Tor matches the oracle", format!("Tor_{i}(M,N)"), &tor(&m, &n, i), &ext_tor_oracle_z(&m, &n, i, Which::Tor)?);
    }
    for i in 2..=3 {
        out.check("Ext vanishes above 1", format!("Ext^{i}(M,N)"), ext(&m, &n, i).is_zero());
        out.check("Tor vanishes above 1", format!("Tor_{i}(M,N)"), tor(&m, &n, i).is_zero());
    }
    Ok(())
}

fn random_complex(g: &mut Gen, free: bool, max_len: usize) -> Complex {
    let len = g.range(2, max_len);
    g.complex(len, free)
}

fn uct_classical_suite(g: &mut Gen, _: &Params, out: &mut Outcome) -> fundseq_core::Result<()> {
    let c = random_complex(g, true, 5);
    let b = g.module();
    out.input("C", complex_json(&c));
    out.input("B", module_json(&b));
    let (lo, hi) = c.support();
    for n in lo..=hi {
        for (which, name) in [(Theory::Cohomology, "cohomology"), (Theory::Homology, "homology")] {
            let tag = format!("n={n} ");
            let rep = uct_classical(&c, &b, n, which)?;
            out.sequence(&format!("{name} sequence exact"), &tag, &rep, true);
            let split = matches!(splitting_test(&rep), Ok(Some(_)));
            out.check(&format!("{name} sequence splits"), format!("{tag}{} split", rep.display), split);
        }
    }
    Ok(())
}

fn uct_general_suite(g: &mut Gen, p: &Params, out: &mut Outcome) -> fundseq_core::Result<()> {
    let c = random_complex(g, false, 4);
    let b = g.module();
    let (lo, hi) = c.support();
    let n = lo + g.range(0, (hi - lo) as usize) as i64;
    out.input("C", complex_json(&c));
    out.input("B", module_json(&b));
    out.input("n", n.into());
    let tag = format!("n={n} ");
    if b.ring().quasi_frobenius() {
        let rep = uct_general(&c, &b, n, p.depth, Theory::Cohomology)?;
        out.sequence("cohomology fundamental sequence", &tag, &rep, false);
    }
    let rep = uct_general(&c, &b, n, p.depth, Theory::Homology)?;
    out.sequence("homology fundamental sequence", &tag, &rep, false);
    let direct = quot_stabilize(&FunctorExpr::homology_tensor(&c, n), &b)?.0;
    out.iso("homology quot-stabilization formula", format!("{tag}F̲(B)"), &homology_qstab(&c, n, &b), &direct);
    Ok(())
}

fn uct_special_suite(g: &mut Gen, p: &Params, out: &mut Outcome) -> fundseq_core::Result<()> {
    let c = random_complex(g, true, 4);
    let b = g.module();
    let (lo, hi) = c.support();
    let n = lo + g.range(0, (hi - lo) as usize) as i64;
    out.input("C", complex_json(&c));
    out.input("B", module_json(&b));
    out.input("n", n.into());
    let tag = format!("n={n} ");
    let rep = uct_special(&c, &b, n, p.depth, Theory::Cohomology)?;
    out.sequence("projective cohomology sequence", &tag, &rep, true);
    if !b.ring().quasi_frobenius() {
        return Ok(());
    }
    let rep = uct_special(&c, &b, n, p.depth, Theory::Homology)?;
    out.sequence("flat homology sequence", &tag, &rep, true);
    let d = delta_functor_checks(&c, &b, n)?;
    for (name, v) in [("theta", d.theta), ("xi", d.xi), ("xi-theta", d.xi_theta)] {
        if let Some(ok) = v {
            out.check("dimension-shift isomorphisms", format!("{tag}{name}"), ok);
        }
    }
    out.check("dimension-shift isomorphisms", format!("{tag}eta"), d.eta);
    out.check("dimension-shift isomorphisms", format!("{tag}tau"), d.tau);
    Ok(())
}

fn contravariant(g: &mut Gen, p: &Params, out: &mut Outcome) -> fundseq_core::Result<()> {
    let (c, b) = (g.module(), g.module());
    out.input("C", module_json(&c));
    out.input("B", module_json(&b));
    let f = FunctorExpr::hom_contra(&c);
    let rep = contra_fund(&f, &b, p.depth, Side::Right)?;
    out.sequence("Hom(-,C) right sequence exact", "", &rep, true);
    out.check("Hom(-,C) sub-stabilization vanishes", "F̄(B)", node(&rep, "F̄(B)")?.is_zero());
    out.check("Hom(-,C) rho is an isomorphism", "ρ_F(B)", rho(&f, &b)?.is_iso());
    for i in 1..p.depth {
        let e = ext(&b, &c, i);
        let (s, r) = (format!("S_{i}F(B)"), format!("R_{i}F(B)"));
        out.iso("Hom(-,C) satellites are Ext", format!("{s} ≅ Ext^{i}(B,C)"), node(&rep, &s)?, &e);
        out.iso("Hom(-,C) derived functors are Ext", format!("{r} ≅ Ext^{i}(B,C)"), node(&rep, &r)?, &e);
    }
    if b.ring().quasi_frobenius() {
        let rep = contra_fund(&f, &b, p.depth, Side::Left)?;
        out.sequence("Hom(-,C) left sequence exact", "", &rep, true);
        return Ok(());
    }
    // A half-exact finitely presented contravariant functor over ℤ.
    let t = g.finite_module();
    out.input("T", module_json(&t));
    let f = FunctorExpr::sum(&FunctorExpr::hom_contra(&c), &FunctorExpr::ext_fixed_second(&t, 1))?.with_half_exact(true);
    let rep = contra_fund(&f, &b, 1, Side::Right)?;
    let v = f.eval_obj(&FPModule::free(b.ring().clone(), 1))?;
    out.iso("first row ends in Hom(-, v(F))", "R_0F(B) ≅ Hom(B, F(R))", node(&rep, "R_0F(B)")?, HomModule::new(&b, &v).module());
    let k = rep.node_index("R_0F(B)").expect("the first row ends in R_0");
    let zero = FPModule::zero(b.ring().clone());
    let mut nodes = rep.nodes[..=k].to_vec();
    nodes.push(("0".into(), zero.clone()));
    let mut maps = rep.maps[..k].to_vec();
    maps.push(Morphism::zero(&rep.nodes[k].1, &zero));
    let row = SequenceReport::new("first row", 0, nodes, maps, vec![])?;
    out.sequence("hereditary first row exact", "", &row, true);
    out.check("hereditary first row splits", "first row split", matches!(splitting_test(&row), Ok(Some(_))));
    Ok(())
}

fn ar_formula(g: &mut Gen, _: &Params, out: &mut Outcome) -> fundseq_core::Result<()> {
    let (a, b) = (g.module(), g.module());
    out.input("A", module_json(&a));
    out.input("B", module_json(&b));
    if a.ring().quasi_frobenius() {
        out.check("AR formula", "D Ext^1(A,B) ≅ Hom(B, D Tr A) mod injectives", ar_formula_check(&a, &b)?.holds);
        out.check("sub-stabilization adjunction", "D(F̄(B)) ≅ Hom(B, D A) mod injectives", stab_adjunction_check(&a, &b, Side::Right, None)?.holds);
        out.check("quot-stabilization adjunction", "Hom(R, F̲(B)) ≅ Hom(A, B) mod projectives", stab_adjunction_check(&a, &b, Side::Left, None)?.holds);
    } else {
        let inv = a.invariants();
        let torsion = FPModule::diagonal(a.ring().clone(), &inv.divisors, 0);
        out.iso("torsion radical is the torsion submodule", "ker(A → A**)", &torsion_radical(&a).0, &torsion);
    }
    let rep = bidual_check(&a)?;
    out.sequence("bidual sequence exact", "", &rep, true);
    Ok(())
}

fn hereditary(g: &mut Gen, p: &Params, out: &mut Outcome) -> fundseq_core::Result<()> {
    let (d, e) = (g.module(), g.module());
    let xs: Vec<FPModule> = (0..p.samples).map(|_| g.module()).collect();
    out.input("D", module_json(&d));
    out.input("E", module_json(&e));
    out.input("X", modules_json(&xs));
    // FP([j, 0]: ΩD ⊕ E → P_0(D)) = Ext^1(D, −) ⊕ Hom(E, −).
    let (_, cover) = free_cover(&d);
    let (_, j) = kernel(&cover);
    let sum = direct_sum(j.source(), &e);
    let f = j.compose(&sum.proj[0]);
    let rep = hereditary_decomposition(&f, &xs)?;
    out.iso("defect recovers E", "w(F) ≅ E", &rep.defect, &e);
    let ext1 = FunctorExpr::ext_fixed_first(&d, 1);
    for (k, s) in rep.samples.iter().enumerate() {
        let tag = format!("X[{k}] ");
        let x = &s.coefficient;
        out.check("F(X) ≅ F̄(X) ⊕ Hom(w,X)", format!("{tag}decomposes"), s.decomposes);
        out.check("first row splits", format!("{tag}split"), s.split);
        out.iso("sub-stabilization is Ext^1(D,-)", format!("{tag}F̄(X) ≅ Ext^1(D,X)"), &s.sub_stab, &ext(&d, x, 1));
        out.iso("defect part is Hom(E,-)", format!("{tag}Hom(w,X) ≅ Hom(E,X)"), &s.hom_defect, HomModule::new(&e, x).module());
        out.iso(
            "left satellite recovers the stable Hom",
            format!("{tag}S_1 Ext^1(D,-)(X) ≅ Hom(D,X) mod projectives"),
            &satellite(&ext1, 1, Side::Left, x)?,
            &stable_hom(&d, x, StableMod::Projectives)?,
        );
    }
    Ok(())
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub index: usize,
    pub inputs: Value,
    pub verdict: String,
    pub node: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub ring: String,
    pub seed: u64,
    pub count: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    pub properties: BTreeMap<String, Tally>,
    pub params: Params,
    pub bounds: Bounds,
    pub warnings: Vec<String>,
    pub duration_ms: u128,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "suite {} over {} (seed {}): {}/{} instances pass\n",
            self.suite, self.ring, self.seed, self.passes, self.count
        );
        for (name, t) in &self.properties {
            s += &format!("  {:<60} {:>6} pass {:>4} fail\n", name, t.pass, t.fail);
        }
        for w in &self.warnings {
            s += &format!("  warning: {w}\n");
        }
        if let Some(f) = self.failures.first() {
            s += &format!(
                "  first counterexample: instance {} fails `{}` at {}\n  inputs: {}\n",
                f.index, f.verdict, f.node, f.inputs
            );
        }
        s += &format!("  {} ms\n", self.duration_ms);
        s
    }
}

fn evaluate(def: &SuiteDef, spec: &InstanceSpec, params: &Params, index: usize) -> Outcome {
    let mut gen = Gen::for_instance(spec, index);
    let mut out = Outcome::default();
    if let Err(e) = (def.run)(&mut gen, params, &mut out) {
        out.check("evaluation succeeds", e.to_string(), false);
    }
    out
}

/// Runs `spec.count` instances (or just `only`) in parallel and aggregates in
/// index order, so the report does not depend on scheduling.
pub fn run_suite(def: &SuiteDef, spec: &InstanceSpec, params: &Params, only: Option<usize>) -> CliResult<SuiteReport> {
    if !def.supports(&spec.ring) {
        return Err(CliError::math(
            format!("suite {}", def.name),
            Error::UnsupportedRing(format!("this suite runs over {}, not {}", def.rings.describe(), spec.ring)),
        ));
    }
    let start = Instant::now();
    let indices: Vec<usize> = match only {
        Some(i) => vec![i],
        None => (0..spec.count).collect(),
    };
    let outcomes: Vec<(usize, Outcome)> = indices.par_iter().map(|&i| (i, evaluate(def, spec, params, i))).collect();
    let mut properties: BTreeMap<String, Tally> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut passes = 0;
    for (index, o) in &outcomes {
        for c in &o.checks {
            let t = properties.entry(c.property.clone()).or_default();
            if c.holds {
                t.pass += 1;
            } else {
                t.fail += 1;
            }
        }
        match o.checks.iter().find(|c| !c.holds) {
            None => passes += 1,
            Some(c) => failures.push(Failure {
                index: *index,
                inputs: Value::Object(o.inputs.clone()),
                verdict: c.property.clone(),
                node: c.node.clone(),
            }),
        }
    }
    let mut warnings = Vec::new();
    if outcomes.is_empty() {
        warnings.push("no instances were run; the pass is vacuous".to_string());
    }
    Ok(SuiteReport {
        suite: def.name.to_string(),
        ring: spec.ring.to_string(),
        seed: spec.seed,
        count: outcomes.len(),
        passes,
        failures,
        properties,
        params: params.clone(),
        bounds: spec.bounds.clone(),
        warnings,
        duration_ms: start.elapsed().as_millis(),
    })
}
