//! Bounded chain complexes, (co)homology with coefficients and the universal
//! coefficient sequences, classical and general.

use crate::error::{Error, Result};
use crate::fpmod::{
    cokernel_sq, homology_at, hom_post, hom_pre, image_sq, kernel_sq, tensor_map, FPModule, HomModule, Morphism,
    Subquotient, TensorModule,
};
use crate::funcalc::{quot_stabilize, satellite, sub_stabilize, FunctorExpr, Side};
use crate::fundseq::{left_fund_cov, right_fund_cov, splitting_test, SequenceReport};
use crate::resolve::{cosyzygy, ext, ext_map_first, syzygy, tor, Resolution};
use crate::ring::{Int, RingDesc};

/// A chain complex `C_hi → … → C_lo`, zero outside `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct Complex {
    ring: RingDesc,
    lo: i64,
    terms: Vec<FPModule>,
    /// `diffs[k] = d_{lo+k+1}: C_{lo+k+1} → C_{lo+k}`.
    diffs: Vec<Morphism>,
}

impl Complex {
    pub fn new(ring: RingDesc, lo: i64, terms: Vec<FPModule>, diffs: Vec<Morphism>) -> Result<Complex> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source() != &terms[k + 1] || d.target() != &terms[k] {
                return Err(Error::DimensionMismatch(format!("d_{} has the wrong endpoints", lo + k as i64 + 1)));
            }
        }
        if terms.iter().any(|t| t.ring() != &ring) {
            return Err(Error::RingMismatch("complex terms over different rings".into()));
        }
        for w in diffs.windows(2) {
            if !w[0].compose(&w[1]).is_zero() {
                return Err(Error::NotAComplex("d∘d ≠ 0".into()));
            }
        }
        Ok(Complex { ring, lo, terms, diffs })
    }

    pub fn ring(&self) -> &RingDesc {
        &self.ring
    }

    pub fn support(&self) -> (i64, i64) {
        (self.lo, self.lo + self.terms.len() as i64 - 1)
    }

    pub fn term(&self, n: i64) -> FPModule {
        let (lo, hi) = self.support();
        if n < lo || n > hi {
            FPModule::zero(self.ring.clone())
        } else {
            self.terms[(n - lo) as usize].clone()
        }
    }

    /// `d_n: C_n → C_{n-1}`.
    pub fn d(&self, n: i64) -> Morphism {
        let (lo, hi) = self.support();
        if n <= lo || n > hi {
            Morphism::zero(&self.term(n), &self.term(n - 1))
        } else {
            self.diffs[(n - lo - 1) as usize].clone()
        }
    }

    pub fn terms(&self) -> &[FPModule] {
        &self.terms
    }

    pub fn differentials(&self) -> &[Morphism] {
        &self.diffs
    }

    pub fn is_projective(&self) -> bool {
        self.terms.iter().all(|t| t.is_projective())
    }

    pub fn boundaries_projective(&self) -> bool {
        let (lo, hi) = self.support();
        (lo..=hi).all(|n| self.boundaries(n).is_projective())
    }

    pub fn homology_sq(&self, n: i64) -> Subquotient {
        homology_at(&self.d(n + 1), &self.d(n)).expect("checked to be a complex")
    }

    pub fn homology(&self, n: i64) -> FPModule {
        self.homology_sq(n).as_module()
    }

    /// `B_n ⊆ C_n`.
    pub fn boundaries_sq(&self, n: i64) -> Subquotient {
        image_sq(&self.d(n + 1))
    }

    pub fn boundaries(&self, n: i64) -> FPModule {
        self.boundaries_sq(n).as_module()
    }

    /// `C_n / B_n`.
    pub fn chains_mod_boundaries_sq(&self, n: i64) -> Subquotient {
        cokernel_sq(&self.d(n + 1))
    }

    pub fn chains_mod_boundaries(&self, n: i64) -> FPModule {
        self.chains_mod_boundaries_sq(n).as_module()
    }

    /// `δ^k: Hom(C_k, X) → Hom(C_{k+1}, X)`, `f ↦ (−1)^{k+1} f d_{k+1}`.
    fn codiff(&self, x: &FPModule, k: i64) -> Morphism {
        let (a, b) = (HomModule::new(&self.term(k), x), HomModule::new(&self.term(k + 1), x));
        let m = hom_pre(&a, &b, &self.d(k + 1));
        if (k + 1) % 2 == 0 {
            m
        } else {
            m.neg()
        }
    }

    pub fn cohomology_sq(&self, x: &FPModule, n: i64) -> Subquotient {
        homology_at(&self.codiff(x, n - 1), &self.codiff(x, n)).expect("Hom of a complex is a complex")
    }

    pub fn cohomology(&self, x: &FPModule, n: i64) -> FPModule {
        self.cohomology_sq(x, n).as_module()
    }

    pub fn cohomology_mor(&self, phi: &Morphism, n: i64) -> Result<Morphism> {
        let c = self.term(n);
        let h = hom_post(&HomModule::new(&c, phi.source()), &HomModule::new(&c, phi.target()), phi);
        self.cohomology_sq(phi.source(), n).induced(&self.cohomology_sq(phi.target(), n), &h)
    }

    fn tensor_d(&self, x: &FPModule, k: i64) -> Morphism {
        let (a, b) = (TensorModule::new(&self.term(k), x), TensorModule::new(&self.term(k - 1), x));
        tensor_map(&a, &b, &self.d(k), &Morphism::identity(x))
    }

    pub fn homology_tensor_sq(&self, x: &FPModule, n: i64) -> Subquotient {
        homology_at(&self.tensor_d(x, n + 1), &self.tensor_d(x, n)).expect("tensor of a complex is a complex")
    }

    pub fn homology_tensor(&self, x: &FPModule, n: i64) -> FPModule {
        self.homology_tensor_sq(x, n).as_module()
    }

    pub fn homology_tensor_mor(&self, phi: &Morphism, n: i64) -> Result<Morphism> {
        let c = self.term(n);
        let h = tensor_map(
            &TensorModule::new(&c, phi.source()),
            &TensorModule::new(&c, phi.target()),
            &Morphism::identity(&c),
            phi,
        );
        self.homology_tensor_sq(phi.source(), n).induced(&self.homology_tensor_sq(phi.target(), n), &h)
    }

    /// `B_{n-1}` and the corestriction `C_n ↠ B_{n-1}` of `d_n`.
    fn corestricted(&self, n: i64) -> (Subquotient, Morphism) {
        let b = image_sq(&self.d(n));
        let dt = b.factor(&self.d(n)).expect("d_n lands in its image");
        (b, dt)
    }

    /// `coker(Hom(C_{n-1}, X) → Hom(B_{n-1}, X))`.
    pub fn coh_substab_sq(&self, x: &FPModule, n: i64) -> Subquotient {
        let (b, _) = self.corestricted(n);
        let (hc, hb) = (HomModule::new(&self.term(n - 1), x), HomModule::new(b.module(), x));
        cokernel_sq(&hom_pre(&hc, &hb, &b.inclusion()))
    }

    /// The embedding of [`Complex::coh_substab_sq`] into `H^n(C, X)`, `g ↦ g ∘ d_n`.
    pub fn coh_substab_map(&self, x: &FPModule, n: i64) -> Morphism {
        let (b, dt) = self.corestricted(n);
        let h = hom_pre(&HomModule::new(b.module(), x), &HomModule::new(&self.term(n), x), &dt);
        let to_h = self.cohomology_sq(x, n).factor(&h).expect("g ∘ d_n is a cocycle");
        self.coh_substab_sq(x, n).descend(&to_h).expect("restrictions of cochains give coboundaries")
    }

    /// `H^n(C, X) → Hom(P_0, X)` where `P_0` is the free cover of `H_n(C)` in
    /// `res`: restrict a cocycle to the chosen cycle representatives.
    pub(crate) fn cohomology_to_defect(&self, x: &FPModule, n: i64, res: &Resolution) -> Result<Morphism> {
        let hsq = self.homology_sq(n);
        let reps = Morphism::new(&res.terms[0], &self.term(n), hsq.lift().clone())?;
        let h = hom_pre(&HomModule::new(&self.term(n), x), &HomModule::new(&res.terms[0], x), &reps);
        self.cohomology_sq(x, n).descend(&h)
    }

    /// `H^n(C, X) → Hom(H_n(C), X)`.
    fn cohomology_to_hom(&self, x: &FPModule, n: i64) -> Result<Morphism> {
        let hsq = self.homology_sq(n);
        let coh = self.cohomology_sq(x, n);
        let hc = HomModule::new(&self.term(n), x);
        let target = HomModule::new(hsq.module(), x);
        let cols = (0..coh.module().gens())
            .map(|k| {
                let f = hc.decode(&coh.lift().col(k));
                let restricted = Morphism::new(hsq.module(), x, f.matrix().mul(hsq.lift()))?;
                Ok(target.encode(&restricted))
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(coh.module(), target.module(), crate::exactlin::IntMat::from_cols(target.module().gens(), &cols))
    }

    /// `ker(B_{n-1} ⊗ X → C_{n-1} ⊗ X)`.
    pub fn homology_qstab_sq(&self, x: &FPModule, n: i64) -> Subquotient {
        let (b, _) = self.corestricted(n);
        let (tb, tc) = (TensorModule::new(b.module(), x), TensorModule::new(&self.term(n - 1), x));
        kernel_sq(&tensor_map(&tb, &tc, &b.inclusion(), &Morphism::identity(x)))
    }

    /// `H_n(C ⊗ X) → ker(B_{n-1} ⊗ X → C_{n-1} ⊗ X)` induced by `d_n`.
    fn homology_tensor_to_qstab(&self, x: &FPModule, n: i64) -> Result<Morphism> {
        let (b, dt) = self.corestricted(n);
        let id = Morphism::identity(x);
        let h = tensor_map(&TensorModule::new(&self.term(n), x), &TensorModule::new(b.module(), x), &dt, &id);
        let down = self.homology_tensor_sq(x, n).descend(&h)?;
        self.homology_qstab_sq(x, n).factor(&down)
    }

    /// `H_n(C) ⊗ X → H_n(C ⊗ X)`, `[z] ⊗ x ↦ [z ⊗ x]`.
    fn tensor_to_homology(&self, x: &FPModule, n: i64) -> Result<Morphism> {
        let hsq = self.homology_sq(n);
        let src = TensorModule::new(hsq.module(), x);
        let tc = TensorModule::new(&self.term(n), x);
        let target = self.homology_tensor_sq(x, n);
        let cols = (0..src.module().gens())
            .map(|k| {
                let (h, b) = src.factors(k);
                let z = hsq.lift().mul_vec(&h);
                target
                    .decode(&tc.pure(&z, &b))
                    .ok_or_else(|| Error::NotWellDefined("cycle tensor is not a cycle".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(src.module(), target.module(), crate::exactlin::IntMat::from_cols(target.module().gens(), &cols))
    }
}

pub fn homology(c: &Complex, n: i64) -> FPModule {
    c.homology(n)
}

pub fn boundaries(c: &Complex, n: i64) -> FPModule {
    c.boundaries(n)
}

pub fn chains_mod_boundaries(c: &Complex, n: i64) -> FPModule {
    c.chains_mod_boundaries(n)
}

pub fn cohomology(c: &Complex, b: &FPModule, n: i64) -> FPModule {
    c.cohomology(b, n)
}

pub fn homology_tensor(c: &Complex, b: &FPModule, n: i64) -> FPModule {
    c.homology_tensor(b, n)
}

/// `w(H^n(C, −)) = H_n(C)`.
pub fn coh_defect(c: &Complex, n: i64) -> FPModule {
    c.homology(n)
}

pub fn coh_substab(c: &Complex, n: i64, x: &FPModule) -> FPModule {
    c.coh_substab_sq(x, n).as_module()
}

pub fn homology_qstab(c: &Complex, n: i64, x: &FPModule) -> FPModule {
    c.homology_qstab_sq(x, n).as_module()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    Cohomology,
    Homology,
}

fn require_projective(c: &Complex, boundaries: bool) -> Result<()> {
    if !c.is_projective() {
        return Err(Error::HypothesisViolated("is_projective: some term is not projective".into()));
    }
    if boundaries && !c.boundaries_projective() {
        return Err(Error::HypothesisViolated("boundaries_projective: some boundary module is not projective".into()));
    }
    Ok(())
}

/// The classical short exact universal coefficient sequence, with a
/// splitting verdict recorded as an identification.
pub fn uct_classical(c: &Complex, b: &FPModule, n: i64, which: Theory) -> Result<SequenceReport> {
    require_projective(c, true)?;
    let zero = FPModule::zero(c.ring().clone());
    let mut rep = match which {
        Theory::Cohomology => {
            let k = c.coh_substab_map(b, n);
            let r = c.cohomology_to_hom(b, n)?;
            let (e, h, hom) = (k.source().clone(), k.target().clone(), r.target().clone());
            let mut rep = SequenceReport::new(
                "classical universal coefficient sequence (cohomology)",
                0,
                vec![
                    ("0".into(), zero.clone()),
                    ("Ext^1(H_{n-1}(C),B)".into(), e.clone()),
                    ("H^n(C,B)".into(), h),
                    ("Hom(H_n(C),B)".into(), hom.clone()),
                    ("0".into(), zero.clone()),
                ],
                vec![Morphism::zero(&zero, &e), k, r, Morphism::zero(&hom, &zero)],
                vec![],
            )?;
            rep.identify("Ext^1(H_{n-1}(C),B) via resolutions", e.iso(&ext(&c.homology(n - 1), b, 1)));
            rep
        }
        Theory::Homology => {
            let i = c.tensor_to_homology(b, n)?;
            let p = c.homology_tensor_to_qstab(b, n)?;
            let (t, h, q) = (i.source().clone(), i.target().clone(), p.target().clone());
            let mut rep = SequenceReport::new(
                "classical universal coefficient sequence (homology)",
                0,
                vec![
                    ("0".into(), zero.clone()),
                    ("H_n(C)⊗B".into(), t.clone()),
                    ("H_n(C⊗B)".into(), h),
                    ("Tor_1(H_{n-1}(C),B)".into(), q.clone()),
                    ("0".into(), zero.clone()),
                ],
                vec![Morphism::zero(&zero, &t), i, p, Morphism::zero(&q, &zero)],
                vec![],
            )?;
            rep.identify("Tor_1(H_{n-1}(C),B) via resolutions", q.iso(&tor(&c.homology(n - 1), b, 1)));
            rep
        }
    };
    let split = rep.is_exact() && matches!(splitting_test(&rep), Ok(Some(_)));
    rep.identify("split", split);
    Ok(rep)
}

/// The right (cohomology) or left (homology) fundamental sequence of the
/// (co)homology functor, with its derived and stabilized nodes identified.
pub fn uct_general(c: &Complex, b: &FPModule, n: i64, depth: usize, which: Theory) -> Result<SequenceReport> {
    let hn = c.homology(n);
    match which {
        Theory::Cohomology => {
            let f = FunctorExpr::cohomology(c, n);
            let mut rep = right_fund_cov(&f, b, depth)?;
            rep.display = "universal coefficient sequence for cohomology of an arbitrary complex".into();
            for i in 0..rep.depth.max(1) {
                if let Some(m) = rep.node(&format!("R^{i}F(B)")) {
                    let ok = m.iso(&ext(&hn, b, i));
                    rep.identify(format!("R^{i} = Ext^{i}(H_n(C),B)"), ok);
                }
            }
            for i in 0..=rep.depth {
                let label = if i == 0 { "F̄(B)".to_string() } else { format!("F̄({}B)", power("Σ", i)) };
                if let Some(m) = rep.node(&label).cloned() {
                    let shifted = if i == 0 { b.clone() } else { cosyzygy(b, i)? };
                    rep.identify(format!("{label} from the boundary presentation"), m.iso(&coh_substab(c, n, &shifted)));
                }
            }
            Ok(rep)
        }
        Theory::Homology => {
            let f = FunctorExpr::homology_tensor(c, n);
            let mut rep = left_fund_cov(&f, b, depth)?;
            rep.display = "universal coefficient sequence for homology of an arbitrary complex".into();
            for i in 0..depth {
                if let Some(m) = rep.node(&format!("L_{i}F(B)")) {
                    let ok = m.iso(&tor(&hn, b, i));
                    rep.identify(format!("L_{i} = Tor_{i}(H_n(C),B)"), ok);
                }
            }
            for i in 0..=depth {
                let label = if i == 0 { "F̲(B)".to_string() } else { format!("F̲({}B)", power("Ω", i)) };
                if let Some(m) = rep.node(&label).cloned() {
                    let ok = m.iso(&homology_qstab(c, n, &syzygy(b, i)));
                    rep.identify(format!("{label} from the tensor copresentation"), ok);
                }
            }
            Ok(rep)
        }
    }
}

fn power(sym: &str, i: usize) -> String {
    if i == 1 {
        sym.to_string()
    } else {
        format!("{sym}^{i}")
    }
}

/// The sequence for projective (resp. flat) complexes, where every node is
/// an Ext (resp. Tor) group. Over ℤ the cohomology version has no
/// cosyzygies; there Ext^{≥2} vanishes and the sequence pinches to the first
/// row plus the isomorphism `Ext^1(C_n/B_n, B) → Ext^1(H_n(C), B)`.
pub fn uct_special(c: &Complex, b: &FPModule, n: i64, depth: usize, which: Theory) -> Result<SequenceReport> {
    require_projective(c, false)?;
    let hn = c.homology(n);
    let top = c.chains_mod_boundaries(n);
    let prev = c.chains_mod_boundaries(n - 1);
    match which {
        Theory::Cohomology if !c.ring().quasi_frobenius() => pinched_cohomology(c, b, n),
        Theory::Cohomology => {
            let mut rep = right_fund_cov(&FunctorExpr::cohomology(c, n), b, depth)?;
            rep.display = "universal coefficient sequence for cohomology of a projective complex".into();
            for i in 0..depth {
                if i >= 1 {
                    let s = rep.node(&format!("S^{i}F(B)")).cloned();
                    if let Some(s) = s {
                        rep.identify(format!("S^{i} = Ext^{i}(C_n/B_n,B)"), s.iso(&ext(&top, b, i)));
                    }
                }
                let r = rep.node(&format!("R^{i}F(B)")).cloned();
                if let Some(r) = r {
                    rep.identify(format!("R^{i} = Ext^{i}(H_n(C),B)"), r.iso(&ext(&hn, b, i)));
                }
            }
            for i in 0..=depth {
                let label = if i == 0 { "F̄(B)".to_string() } else { format!("F̄({}B)", power("Σ", i)) };
                let m = rep.node(&label).cloned();
                if let Some(m) = m {
                    rep.identify(
                        format!("{label} = Ext^{}(C_{{n-1}}/B_{{n-1}},B)", i + 1),
                        m.iso(&ext(&prev, b, i + 1)),
                    );
                }
            }
            Ok(rep)
        }
        Theory::Homology => {
            let mut rep = left_fund_cov(&FunctorExpr::homology_tensor(c, n), b, depth)?;
            rep.display = "universal coefficient sequence for homology of a flat complex".into();
            for i in 0..depth {
                let l = rep.node(&format!("L_{i}F(B)")).cloned();
                if let Some(l) = l {
                    rep.identify(format!("L_{i} = Tor_{i}(H_n(C),B)"), l.iso(&tor(&hn, b, i)));
                }
                if i >= 1 {
                    let s = rep.node(&format!("S_{i}F(B)")).cloned();
                    if let Some(s) = s {
                        rep.identify(format!("S_{i} = Tor_{i}(C_n/B_n,B)"), s.iso(&tor(&top, b, i)));
                    }
                }
            }
            for i in 0..=depth {
                let label = if i == 0 { "F̲(B)".to_string() } else { format!("F̲({}B)", power("Ω", i)) };
                let m = rep.node(&label).cloned();
                if let Some(m) = m {
                    rep.identify(
                        format!("{label} = Tor_{}(C_{{n-1}}/B_{{n-1}},B)", i + 1),
                        m.iso(&tor(&prev, b, i + 1)),
                    );
                }
            }
            Ok(rep)
        }
    }
}

fn pinched_cohomology(c: &Complex, b: &FPModule, n: i64) -> Result<SequenceReport> {
    let zero = FPModule::zero(c.ring().clone());
    let hsq = c.homology_sq(n);
    let top = c.chains_mod_boundaries_sq(n);
    let prev = c.chains_mod_boundaries(n - 1);
    let k = c.coh_substab_map(b, n);
    let r = c.cohomology_to_hom(b, n)?;
    let ext2 = ext(&prev, b, 2);
    let ext3 = ext(&prev, b, 3);
    if !ext2.is_zero() || !ext3.is_zero() {
        return Err(Error::HypothesisViolated("Ext^{≥2} must vanish for the pinched sequence".into()));
    }
    let cols: Vec<Vec<Int>> = (0..hsq.module().gens())
        .map(|j| top.decode(&hsq.lift().col(j)).expect("C_n/B_n is all of C_n modulo boundaries"))
        .collect();
    let incl = Morphism::new(hsq.module(), top.module(), crate::exactlin::IntMat::from_cols(top.module().gens(), &cols))?;
    let e_top_to_h = ext_map_first(&incl, b, 1);
    let (e_top, e_h) = (e_top_to_h.source().clone(), e_top_to_h.target().clone());
    let (e1, h, hom) = (k.source().clone(), k.target().clone(), r.target().clone());
    let mut rep = SequenceReport::new(
        "universal coefficient sequence for cohomology of a projective complex (pinched)",
        1,
        vec![
            ("0".into(), zero.clone()),
            ("Ext^1(C_{n-1}/B_{n-1},B)".into(), e1.clone()),
            ("H^n(C,B)".into(), h),
            ("Hom(H_n(C),B)".into(), hom.clone()),
            ("Ext^2(C_{n-1}/B_{n-1},B)".into(), ext2.clone()),
            ("Ext^1(C_n/B_n,B)".into(), e_top.clone()),
            ("Ext^1(H_n(C),B)".into(), e_h.clone()),
            ("Ext^3(C_{n-1}/B_{n-1},B)".into(), ext3.clone()),
        ],
        vec![
            Morphism::zero(&zero, &e1),
            k,
            r,
            Morphism::zero(&hom, &ext2),
            Morphism::zero(&ext2, &e_top),
            e_top_to_h.clone(),
            Morphism::zero(&e_h, &ext3),
        ],
        vec![],
    )?;
    rep.identify("Ext^1(C_{n-1}/B_{n-1},B) via resolutions", e1.iso(&ext(&prev, b, 1)));
    rep.identify("Ext^1(C_n/B_n,B) → Ext^1(H_n(C),B) is an isomorphism", e_top_to_h.is_iso());
    Ok(rep)
}

/// The tensor copresentation of `H_n(C ⊗ −)`:
/// `0 → H_n(C ⊗ −) → C_n/B_n ⊗ − → C_{n-1} ⊗ − → C_{n-1}/B_{n-1} ⊗ − → 0`.
#[derive(Clone, Debug)]
pub struct HomCopresentation {
    pub degree: i64,
    /// `C_n/B_n → C_{n-1}` induced by `d_n`.
    pub r: Morphism,
    /// `C_{n-1} → C_{n-1}/B_{n-1}`.
    pub p: Morphism,
    top: Subquotient,
}

impl HomCopresentation {
    /// The copresentation evaluated at `X`, as a sequence with verdicts.
    pub fn evaluate(&self, c: &Complex, x: &FPModule) -> Result<SequenceReport> {
        let n = self.degree;
        let id = Morphism::identity(x);
        let tc = TensorModule::new(&c.term(n), x);
        let tt = TensorModule::new(self.r.source(), x);
        let tp = TensorModule::new(self.r.target(), x);
        let tq = TensorModule::new(self.p.target(), x);
        let h = c.homology_tensor_sq(x, n);
        let into = h.descend(&tensor_map(&tc, &tt, &self.top.projection(), &id))?;
        let zero = FPModule::zero(c.ring().clone());
        SequenceReport::new(
            "tensor copresentation of H_n(C⊗−)",
            0,
            vec![
                ("0".into(), zero.clone()),
                ("H_n(C⊗X)".into(), h.as_module()),
                ("C_n/B_n⊗X".into(), tt.module().clone()),
                ("C_{n-1}⊗X".into(), tp.module().clone()),
                ("C_{n-1}/B_{n-1}⊗X".into(), tq.module().clone()),
                ("0".into(), zero.clone()),
            ],
            vec![
                Morphism::zero(&zero, h.module()),
                into,
                tensor_map(&tt, &tp, &self.r, &id),
                tensor_map(&tp, &tq, &self.p, &id),
                Morphism::zero(tq.module(), &zero),
            ],
            vec![],
        )
    }
}

pub fn hom_copresentation(c: &Complex, n: i64) -> HomCopresentation {
    let top = c.chains_mod_boundaries_sq(n);
    let r = top.descend(&c.d(n)).expect("d_n kills B_n");
    let p = c.chains_mod_boundaries_sq(n - 1).projection();
    HomCopresentation { degree: n, r, p, top }
}

/// Verdicts for the dimension-shifting isomorphisms of the (co)homology functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaChecks {
    /// `S^1 H^n(C, −)(B) ≅ F̄ of H^{n+1}(C, −) at B`; needs a self-injective ring.
    pub theta: Option<bool>,
    /// `F̄ of H^n(C, −) at B ≅ Ext^1(C_{n-1}/B_{n-1}, B)`.
    pub xi: Option<bool>,
    /// `S^1 H^n(C, −)(B) ≅ Ext^1(C_n/B_n, B)`.
    pub xi_theta: Option<bool>,
    /// `F̲ of H_{n+1}(C ⊗ −) at B ≅ S_1 H_n(C ⊗ −)(B)`.
    pub eta: bool,
    /// `Tor_1(C_{n-1}/B_{n-1}, B) ≅ F̲ of H_n(C ⊗ −) at B`.
    pub tau: bool,
}

impl DeltaChecks {
    pub fn all_hold(&self) -> bool {
        [self.theta, self.xi, self.xi_theta].iter().all(|v| v != &Some(false)) && self.eta && self.tau
    }
}

pub fn delta_functor_checks(c: &Complex, b: &FPModule, n: i64) -> Result<DeltaChecks> {
    require_projective(c, false)?;
    let (hn, hn1) = (FunctorExpr::cohomology(c, n), FunctorExpr::cohomology(c, n + 1));
    let (tn, tn1) = (FunctorExpr::homology_tensor(c, n), FunctorExpr::homology_tensor(c, n + 1));
    let (top, prev) = (c.chains_mod_boundaries(n), c.chains_mod_boundaries(n - 1));
    let (theta, xi, xi_theta) = if c.ring().quasi_frobenius() {
        let s1 = satellite(&hn, 1, Side::Right, b)?;
        (
            Some(s1.iso(&sub_stabilize(&hn1, b)?.0)),
            Some(sub_stabilize(&hn, b)?.0.iso(&ext(&prev, b, 1))),
            Some(s1.iso(&ext(&top, b, 1))),
        )
    } else {
        (None, Some(sub_stabilize(&hn, b)?.0.iso(&ext(&prev, b, 1))), None)
    };
    let eta = quot_stabilize(&tn1, b)?.0.iso(&satellite(&tn, 1, Side::Left, b)?);
    let tau = tor(&prev, b, 1).iso(&quot_stabilize(&tn, b)?.0);
    Ok(DeltaChecks { theta, xi, xi_theta, eta, tau })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::IntMat;

    fn two_complex(ring: RingDesc) -> Complex {
        let r = FPModule::free(ring.clone(), 1);
        let two = Morphism::new(&r, &r, IntMat::from_rows(&[vec![2]])).unwrap();
        Complex::new(ring, 0, vec![r.clone(), r], vec![two]).unwrap()
    }

    #[test]
    fn homology_examples() {
        let c = two_complex(RingDesc::Integers);
        assert!(c.homology(1).is_zero());
        assert_eq!(c.homology(0).to_string(), "Z/2");
        let b = FPModule::cyclic(RingDesc::Integers, 2);
        assert_eq!(c.cohomology(&b, 1).to_string(), "Z/2");
        assert_eq!(c.homology_tensor(&b, 1).to_string(), "Z/2");
        let r = FPModule::free(RingDesc::Integers, 1);
        assert!(c.homology_tensor(&r, 0).iso(&c.homology(0)));

        let z2 = FPModule::free(RingDesc::Integers, 2);
        let zero = Complex::new(
            RingDesc::Integers,
            0,
            vec![z2.clone(), z2.clone()],
            vec![Morphism::zero(&z2, &z2)],
        )
        .unwrap();
        assert!(zero.homology(1).iso(&z2));
    }

    #[test]
    fn classical_examples() {
        let c = two_complex(RingDesc::Integers);
        let b = FPModule::cyclic(RingDesc::Integers, 2);
        let rep = uct_classical(&c, &b, 1, Theory::Cohomology).unwrap();
        assert!(rep.is_exact() && rep.identifications_hold(), "{rep}");
        assert_eq!(rep.nodes[1].1.to_string(), "Z/2");
        assert!(rep.nodes[3].1.is_zero());
        let rep = uct_classical(&c, &b, 1, Theory::Homology).unwrap();
        assert!(rep.is_exact() && rep.identifications_hold(), "{rep}");
        assert!(rep.nodes[1].1.is_zero());
        assert_eq!(rep.nodes[3].1.to_string(), "Z/2");
    }

    #[test]
    fn substab_and_qstab_examples() {
        let c = two_complex(RingDesc::Integers);
        let x4 = FPModule::cyclic(RingDesc::Integers, 4);
        assert_eq!(coh_substab(&c, 1, &x4).to_string(), "Z/2");
        assert!(coh_defect(&c, 1).is_zero());
        let x2 = FPModule::cyclic(RingDesc::Integers, 2);
        assert_eq!(homology_qstab(&c, 1, &x2).to_string(), "Z/2");
        let rep = hom_copresentation(&c, 1).evaluate(&c, &x2).unwrap();
        assert!(rep.is_exact(), "{rep}");
    }

    #[test]
    fn special_over_z4() {
        let r4 = RingDesc::zmod(4);
        let c = two_complex(r4.clone());
        let b = FPModule::cyclic(r4, 2);
        for which in [Theory::Cohomology, Theory::Homology] {
            let rep = uct_special(&c, &b, 1, 3, which).unwrap();
            assert!(rep.is_exact() && rep.identifications_hold(), "{rep}");
        }
        let checks = delta_functor_checks(&c, &b, 1).unwrap();
        assert!(checks.all_hold(), "{checks:?}");
    }

    #[test]
    fn pinched_over_z() {
        let c = two_complex(RingDesc::Integers);
        let b = FPModule::cyclic(RingDesc::Integers, 4);
        let rep = uct_special(&c, &b, 1, 2, Theory::Cohomology).unwrap();
        assert!(rep.is_exact() && rep.identifications_hold(), "{rep}");
    }
}
