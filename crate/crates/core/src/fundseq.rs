//! Long sequences with computed verdicts: the circular sequence of a
//! composable pair and the four fundamental sequences of a functor.

use std::fmt;

use crate::error::{Error, Result};
use crate::fpmod::{cokernel_sq, factor_through_left, is_exact_at, kernel_sq, FPModule, Morphism};
use crate::funcalc::{fp_shortcut_applies, rho, sub_stabilize, FunctorExpr, Legs, Side, Variance};
use crate::resolve::DEFAULT_DEPTH;

/// A named isomorphism claim between a node and an independently computed
/// module, decided by invariants.
#[derive(Clone, Debug)]
pub struct Identification {
    pub label: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct SequenceReport {
    pub display: String,
    pub depth: usize,
    pub nodes: Vec<(String, FPModule)>,
    /// `maps[k]: nodes[k] → nodes[k+1]`.
    pub maps: Vec<Morphism>,
    /// `composite_zero[k]`: `maps[k+1] ∘ maps[k] = 0`.
    pub composite_zero: Vec<bool>,
    /// Exactness at each node; `None` at the two ends.
    pub exact_at: Vec<Option<bool>>,
    /// Nodes where exactness is only promised for half-exact functors.
    pub derived_nodes: Vec<usize>,
    pub identifications: Vec<Identification>,
}

impl SequenceReport {
    pub fn new(
        display: &str,
        depth: usize,
        nodes: Vec<(String, FPModule)>,
        maps: Vec<Morphism>,
        derived_nodes: Vec<usize>,
    ) -> Result<SequenceReport> {
        if maps.len() + 1 != nodes.len() {
            return Err(Error::DimensionMismatch(format!("{} nodes but {} maps", nodes.len(), maps.len())));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.source() != &nodes[k].1 || m.target() != &nodes[k + 1].1 {
                return Err(Error::DimensionMismatch(format!(
                    "map {k} does not run from {} to {}",
                    nodes[k].0,
                    nodes[k + 1].0
                )));
            }
        }
        let composite_zero: Vec<bool> = maps.windows(2).map(|w| w[1].compose(&w[0]).is_zero()).collect();
        let mut exact_at = vec![None; nodes.len()];
        for k in 1..nodes.len().saturating_sub(1) {
            exact_at[k] = Some(composite_zero[k - 1] && is_exact_at(&maps[k - 1], &maps[k])?);
        }
        Ok(SequenceReport {
            display: display.to_string(),
            depth,
            nodes,
            maps,
            composite_zero,
            exact_at,
            derived_nodes,
            identifications: Vec::new(),
        })
    }

    pub fn identify(&mut self, label: impl Into<String>, holds: bool) {
        self.identifications.push(Identification { label: label.into(), holds });
    }

    pub fn node(&self, label: &str) -> Option<&FPModule> {
        self.nodes.iter().find(|(l, _)| l == label).map(|(_, m)| m)
    }

    pub fn node_index(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|(l, _)| l == label)
    }

    pub fn is_complex(&self) -> bool {
        self.composite_zero.iter().all(|&b| b)
    }

    pub fn is_exact(&self) -> bool {
        self.exact_at.iter().all(|v| v != &Some(false))
    }

    pub fn exact_away_from_derived(&self) -> bool {
        self.exact_at
            .iter()
            .enumerate()
            .all(|(k, v)| v != &Some(false) || self.derived_nodes.contains(&k))
    }

    pub fn identifications_hold(&self) -> bool {
        self.identifications.iter().all(|i| i.holds)
    }

    /// Complex everywhere, exact off the derived nodes, and exact everywhere
    /// when the functor is half-exact.
    pub fn theorem_holds(&self, half_exact: bool) -> bool {
        self.is_complex() && self.exact_away_from_derived() && (!half_exact || self.is_exact())
    }

    /// The first node where a verdict fails, with a reason.
    pub fn first_failure(&self, half_exact: bool) -> Option<(usize, String)> {
        if let Some(k) = self.composite_zero.iter().position(|&b| !b) {
            return Some((k + 1, format!("composite through {} is nonzero", self.nodes[k + 1].0)));
        }
        for (k, v) in self.exact_at.iter().enumerate() {
            if v == &Some(false) && (half_exact || !self.derived_nodes.contains(&k)) {
                return Some((k, format!("not exact at {}", self.nodes[k].0)));
            }
        }
        self.identifications
            .iter()
            .find(|i| !i.holds)
            .map(|i| (0, format!("identification failed: {}", i.label)))
    }
}

impl fmt::Display for SequenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (depth {})", self.display, self.depth)?;
        for (k, (label, m)) in self.nodes.iter().enumerate() {
            let verdict = match self.exact_at[k] {
                Some(true) => "exact",
                Some(false) => "NOT exact",
                None => "",
            };
            writeln!(f, "  {label:<16} {m:<20} {verdict}")?;
        }
        for i in &self.identifications {
            writeln!(f, "  {} : {}", i.label, if i.holds { "ok" } else { "FAILED" })?;
        }
        Ok(())
    }
}

/// `0 → ker f → ker gf → ker g → coker f → coker gf → coker g → 0`.
pub fn circular_sequence(f: &Morphism, g: &Morphism) -> Result<SequenceReport> {
    if f.target() != g.source() {
        return Err(Error::DimensionMismatch("maps are not composable".into()));
    }
    let gf = g.compose(f);
    let (kf, kgf, kg) = (kernel_sq(f), kernel_sq(&gf), kernel_sq(g));
    let (cf, cgf, cg) = (cokernel_sq(f), cokernel_sq(&gf), cokernel_sq(g));
    let (x, y, z) = (f.source(), f.target(), g.target());
    let zero = FPModule::zero(f.ring().clone());
    let maps = vec![
        Morphism::zero(&zero, kf.module()),
        kf.induced(&kgf, &Morphism::identity(x))?,
        kgf.induced(&kg, f)?,
        kg.induced(&cf, &Morphism::identity(y))?,
        cf.induced(&cgf, g)?,
        cgf.induced(&cg, &Morphism::identity(z))?,
        Morphism::zero(cg.module(), &zero),
    ];
    let nodes = vec![
        ("0".to_string(), zero.clone()),
        ("ker f".into(), kf.as_module()),
        ("ker gf".into(), kgf.as_module()),
        ("ker g".into(), kg.as_module()),
        ("coker f".into(), cf.as_module()),
        ("coker gf".into(), cgf.as_module()),
        ("coker g".into(), cg.as_module()),
        ("0".into(), zero),
    ];
    SequenceReport::new("circular sequence", 0, nodes, maps, vec![])
}

fn shift_symbol(v: Variance, side: Side) -> &'static str {
    match (v, side) {
        (Variance::Covariant, Side::Right) | (Variance::Contravariant, Side::Left) => "Σ",
        _ => "Ω",
    }
}

fn pow(sym: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{i}"),
    }
}

/// Right fundamental sequence from one resolution threaded through all rows.
fn right_sequence(f: &FunctorExpr, b: &FPModule, depth: usize, display: &str) -> Result<SequenceReport> {
    let legs = Legs::new(f, Side::Right, b, depth)?;
    let sym = shift_symbol(f.variance, Side::Right);
    let script = |i: usize| if f.is_covariant() { format!("^{i}") } else { format!("_{i}") };
    let zero = FPModule::zero(b.ring().clone());
    let stabs: Vec<_> = (0..=depth).map(|i| legs.stab(i)).collect();
    let derived: Vec<_> = (0..depth).map(|i| legs.derived(i)).collect();
    let mut nodes = vec![
        ("0".to_string(), zero.clone()),
        ("F̄(B)".to_string(), stabs[0].as_module()),
        ("F(B)".to_string(), legs.value().clone()),
    ];
    let mut maps = vec![Morphism::zero(&zero, stabs[0].module()), stabs[0].inclusion()];
    let mut derived_nodes = Vec::new();
    if depth == 0 {
        return SequenceReport::new(display, depth, nodes, maps, derived_nodes);
    }
    maps.push(derived[0].factor(&legs.u[0])?);
    derived_nodes.push(nodes.len());
    nodes.push((format!("R{}F(B)", script(0)), derived[0].as_module()));
    for i in 1..=depth {
        maps.push(derived[i - 1].induced(&stabs[i], &legs.v[i - 1])?);
        nodes.push((format!("F̄({}B)", pow(sym, i)), stabs[i].as_module()));
        if i == depth {
            break;
        }
        let sat = legs.satellite(i);
        maps.push(stabs[i].induced(&sat, &Morphism::identity(stabs[i].ambient()))?);
        nodes.push((format!("S{}F(B)", script(i)), sat.as_module()));
        maps.push(sat.induced(&derived[i], &legs.u[i])?);
        derived_nodes.push(nodes.len());
        nodes.push((format!("R{}F(B)", script(i)), derived[i].as_module()));
    }
    SequenceReport::new(display, depth, nodes, maps, derived_nodes)
}

/// Left fundamental sequence, listed from the deepest node to the final 0.
fn left_sequence(f: &FunctorExpr, b: &FPModule, depth: usize, display: &str) -> Result<SequenceReport> {
    let legs = Legs::new(f, Side::Left, b, depth)?;
    let sym = shift_symbol(f.variance, Side::Left);
    let script = |i: usize| if f.is_covariant() { format!("_{i}") } else { format!("^{i}") };
    let zero = FPModule::zero(b.ring().clone());
    let stabs: Vec<_> = (0..=depth).map(|i| legs.stab(i)).collect();
    let derived: Vec<_> = (0..depth).map(|i| legs.derived(i)).collect();
    let mut nodes = vec![(format!("F̲({}B)", pow(sym, depth)), stabs[depth].as_module())];
    let mut maps = Vec::new();
    let mut derived_nodes = Vec::new();
    for i in (0..depth).rev() {
        maps.push(stabs[i + 1].induced(&derived[i], &legs.v[i])?);
        derived_nodes.push(nodes.len());
        nodes.push((format!("L{}F(B)", script(i)), derived[i].as_module()));
        if i == 0 {
            break;
        }
        let sat = legs.satellite(i);
        maps.push(derived[i].induced(&sat, &legs.u[i])?);
        nodes.push((format!("S{}F(B)", script(i)), sat.as_module()));
        maps.push(sat.induced(&stabs[i], &Morphism::identity(sat.ambient()))?);
        nodes.push((format!("F̲({}B)", pow(sym, i)), stabs[i].as_module()));
    }
    if depth > 0 {
        maps.push(derived[0].descend(&legs.u[0])?);
        nodes.push(("F(B)".to_string(), legs.value().clone()));
    } else {
        nodes[0] = ("F(B)".to_string(), legs.value().clone());
    }
    maps.push(stabs[0].projection());
    nodes.push(("F̲(B)".to_string(), stabs[0].as_module()));
    maps.push(Morphism::zero(stabs[0].module(), &zero));
    nodes.push(("0".to_string(), zero));
    SequenceReport::new(display, depth, nodes, maps, derived_nodes)
}

/// Over a non-self-injective ring, finitely presented functors still have the
/// first row `0 → F̄(B) → F(B) → R^0F(B)` through the defect.
fn right_row_zero(f: &FunctorExpr, b: &FPModule, display: &str) -> Result<SequenceReport> {
    let zero = FPModule::zero(b.ring().clone());
    let (fbar, k) = sub_stabilize(f, b)?;
    let r = rho(f, b)?;
    let nodes = vec![
        ("0".to_string(), zero.clone()),
        ("F̄(B)".to_string(), fbar.clone()),
        ("F(B)".to_string(), k.target().clone()),
        ("R^0F(B)".to_string(), r.target().clone()),
    ];
    SequenceReport::new(display, 0, nodes, vec![Morphism::zero(&zero, &fbar), k, r], vec![3])
}

pub fn right_fund_cov(f: &FunctorExpr, b: &FPModule, depth: usize) -> Result<SequenceReport> {
    if !f.is_covariant() {
        return Err(Error::WrongShape("expected a covariant functor".into()));
    }
    let display = "right fundamental sequence (covariant)";
    if !b.ring().quasi_frobenius() {
        if fp_shortcut_applies(f) {
            return right_row_zero(f, b, display);
        }
        return Err(Error::UnsupportedRing(format!(
            "the right fundamental sequence needs injective resolutions, unavailable over {}",
            b.ring()
        )));
    }
    right_sequence(f, b, depth, display)
}

pub fn left_fund_cov(f: &FunctorExpr, b: &FPModule, depth: usize) -> Result<SequenceReport> {
    if !f.is_covariant() {
        return Err(Error::WrongShape("expected a covariant functor".into()));
    }
    left_sequence(f, b, depth, "left fundamental sequence (covariant)")
}

pub fn contra_fund(f: &FunctorExpr, b: &FPModule, depth: usize, side: Side) -> Result<SequenceReport> {
    if f.is_covariant() {
        return Err(Error::WrongShape("expected a contravariant functor".into()));
    }
    match side {
        Side::Right => right_sequence(f, b, depth, "right fundamental sequence (contravariant)"),
        Side::Left => left_sequence(f, b, depth, "left fundamental sequence (contravariant)"),
    }
}

pub fn default_depth() -> usize {
    DEFAULT_DEPTH
}

/// Decides whether a short exact sequence splits. Accepts `A → B → C` or the
/// same padded with zero modules at both ends; returns a retraction of the
/// first map when one exists.
pub fn splitting_test(ses: &SequenceReport) -> Result<Option<Morphism>> {
    let maps: Vec<&Morphism> = match ses.maps.len() {
        2 => ses.maps.iter().collect(),
        4 if ses.nodes[0].1.is_zero() && ses.nodes[4].1.is_zero() => ses.maps[1..3].iter().collect(),
        _ => return Err(Error::WrongShape("expected a short exact sequence".into())),
    };
    let (i, p) = (maps[0], maps[1]);
    if !i.is_mono() || !p.is_epi() || !is_exact_at(i, p)? {
        return Err(Error::NotExact("the sequence is not short exact".into()));
    }
    Ok(factor_through_left(i, &Morphism::identity(i.source())))
}

/// One sampled coefficient in [`hereditary_decomposition`].
#[derive(Clone, Debug)]
pub struct DecompositionSample {
    pub coefficient: FPModule,
    pub value: FPModule,
    pub sub_stab: FPModule,
    pub hom_defect: FPModule,
    /// `F(X) ≅ F̄(X) ⊕ Hom(w, X)` by invariants.
    pub decomposes: bool,
    /// `0 → F̄(X) → F(X) → Hom(w, X) → 0` is exact and split.
    pub split: bool,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub defect: FPModule,
    pub samples: Vec<DecompositionSample>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.samples.iter().all(|s| s.decomposes && s.split)
    }
}

/// For a finitely presented functor over ℤ, declared half-exact by the caller,
/// checks `F ≅ F̄ ⊕ Hom(w(F), −)` on the sampled coefficients.
pub fn hereditary_decomposition(f: &Morphism, samples: &[FPModule]) -> Result<DecompositionReport> {
    if !f.ring().hereditary() {
        return Err(Error::UnsupportedRing(format!("the decomposition is for hereditary rings, not {}", f.ring())));
    }
    let func = FunctorExpr::fp(f).with_half_exact(true);
    let defect = crate::funcalc::defect(&func)?;
    let mut out = Vec::new();
    for x in samples {
        let row = right_row_zero(&func, x, "first row")?;
        let (sub, value, hom) = (row.nodes[1].1.clone(), row.nodes[2].1.clone(), row.nodes[3].1.clone());
        let decomposes = value.iso(&crate::fpmod::direct_sum(&sub, &hom).module);
        let ses = SequenceReport::new(
            "first row",
            0,
            row.nodes[1..].to_vec(),
            row.maps[1..].to_vec(),
            vec![],
        )?;
        let split = row.maps[2].is_epi() && matches!(splitting_test(&ses), Ok(Some(_)));
        out.push(DecompositionSample {
            coefficient: x.clone(),
            value,
            sub_stab: sub,
            hom_defect: hom,
            decomposes,
            split,
        });
    }
    Ok(DecompositionReport { defect, samples: out })
}
