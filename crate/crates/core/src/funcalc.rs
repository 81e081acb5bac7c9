//! Evaluable additive functors and the constructions on them: stabilizations,
//! satellites, derived functors and the canonical transformations between them.
//!
//! Every construction that needs a resolution goes through [`Legs`]: the
//! functor applied to the cover maps `u_i` and link maps `v_i` of one fixed
//! resolution of the argument. Which resolution is used depends on the
//! variance and on the side:
//!
//! | variance      | side  | resolution | `u_i`               | `v_i`                   |
//! |---------------|-------|------------|---------------------|-------------------------|
//! | covariant     | right | injective  | `F(Σ^i) → F(I^i)`   | `F(I^i) → F(Σ^{i+1})`   |
//! | contravariant | right | projective | `F(Ω^i) → F(P_i)`   | `F(P_i) → F(Ω^{i+1})`   |
//! | covariant     | left  | projective | `F(P_i) → F(Ω^i)`   | `F(Ω^{i+1}) → F(P_i)`   |
//! | contravariant | left  | injective  | `F(I^i) → F(Σ^i)`   | `F(Σ^{i+1}) → F(I^i)`   |
//!
//! On the right, the stabilization is `ker u_i`, the satellite `coker v_{i-1}`
//! and the derived functors the homology of `δ_i = u_{i+1} v_i`; on the left
//! everything is dual, with `δ_i = v_i u_{i+1}`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::IntMat;
use crate::fpmod::{
    cokernel_sq, direct_sum, direct_sum_map, dual, epi_mono_factor, evaluation_map, homology_at, hom_post, hom_pre,
    image_sq, kernel, kernel_sq, tensor_map, transpose, FPModule, HomModule, Morphism, Subquotient, TensorModule,
};
use crate::fundseq::SequenceReport;
use crate::ring::Int;
use crate::resolve::{
    ext_map, inj_resolution, lift_inj, lift_proj, proj_resolution, tor_map, Direction, HomCochain, Resolution,
    TensorChain,
};
use crate::uct::Complex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Contravariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Debug)]
pub enum Body {
    /// `Hom(A, −)`.
    HomCov(FPModule),
    /// `Hom(−, B)`.
    HomContra(FPModule),
    /// `A ⊗ −`.
    TensorLeft(FPModule),
    /// `coker(Hom(B, −) → Hom(A, −))` for `f: A → B`.
    Fp(Morphism),
    /// `coker(Hom(−, B) → Hom(−, A))` for `f: B → A`.
    FpContra(Morphism),
    /// `ker(A ⊗ − → B ⊗ −)` for `f: A → B`.
    Tc(Morphism),
    ShiftSigma(FunctorExpr, usize),
    ShiftOmega(FunctorExpr, usize),
    Derived(FunctorExpr, usize, Side),
    SubStab(FunctorExpr),
    QuotStab(FunctorExpr),
    Satellite(FunctorExpr, usize, Side),
    ExtFixedFirst(FPModule, usize),
    TorFixedFirst(FPModule, usize),
    /// `Ext^i(−, B)`.
    ExtFixedSecond(FPModule, usize),
    Sum(FunctorExpr, FunctorExpr),
    /// `H^n(C, −)`.
    Cohomology(Complex, i64),
    /// `H_n(C ⊗ −)`.
    HomologyTensor(Complex, i64),
}

/// A symbolic additive functor on finitely presented modules.
#[derive(Clone, Debug)]
pub struct FunctorExpr {
    pub variance: Variance,
    /// Declared, never inferred.
    pub half_exact: bool,
    pub body: Arc<Body>,
}

fn expr(variance: Variance, half_exact: bool, body: Body) -> FunctorExpr {
    FunctorExpr { variance, half_exact, body: Arc::new(body) }
}

impl FunctorExpr {
    pub fn hom_cov(a: &FPModule) -> FunctorExpr {
        expr(Variance::Covariant, true, Body::HomCov(a.clone()))
    }

    pub fn hom_contra(b: &FPModule) -> FunctorExpr {
        expr(Variance::Contravariant, true, Body::HomContra(b.clone()))
    }

    pub fn tensor_left(a: &FPModule) -> FunctorExpr {
        expr(Variance::Covariant, true, Body::TensorLeft(a.clone()))
    }

    pub fn fp(f: &Morphism) -> FunctorExpr {
        expr(Variance::Covariant, false, Body::Fp(f.clone()))
    }

    pub fn fp_contra(f: &Morphism) -> FunctorExpr {
        expr(Variance::Contravariant, false, Body::FpContra(f.clone()))
    }

    pub fn tc(f: &Morphism) -> FunctorExpr {
        expr(Variance::Covariant, false, Body::Tc(f.clone()))
    }

    pub fn shift_sigma(f: &FunctorExpr, k: usize) -> FunctorExpr {
        expr(f.variance, false, Body::ShiftSigma(f.clone(), k))
    }

    pub fn shift_omega(f: &FunctorExpr, k: usize) -> FunctorExpr {
        expr(f.variance, false, Body::ShiftOmega(f.clone(), k))
    }

    pub fn derived(f: &FunctorExpr, i: usize, side: Side) -> FunctorExpr {
        expr(f.variance, true, Body::Derived(f.clone(), i, side))
    }

    pub fn sub_stab(f: &FunctorExpr) -> FunctorExpr {
        expr(f.variance, false, Body::SubStab(f.clone()))
    }

    pub fn quot_stab(f: &FunctorExpr) -> FunctorExpr {
        expr(f.variance, false, Body::QuotStab(f.clone()))
    }

    pub fn satellite(f: &FunctorExpr, i: usize, side: Side) -> FunctorExpr {
        expr(f.variance, false, Body::Satellite(f.clone(), i, side))
    }

    pub fn ext_fixed_first(a: &FPModule, i: usize) -> FunctorExpr {
        expr(Variance::Covariant, true, Body::ExtFixedFirst(a.clone(), i))
    }

    pub fn tor_fixed_first(a: &FPModule, i: usize) -> FunctorExpr {
        expr(Variance::Covariant, true, Body::TorFixedFirst(a.clone(), i))
    }

    pub fn ext_fixed_second(b: &FPModule, i: usize) -> FunctorExpr {
        expr(Variance::Contravariant, true, Body::ExtFixedSecond(b.clone(), i))
    }

    pub fn sum(f: &FunctorExpr, g: &FunctorExpr) -> Result<FunctorExpr> {
        if f.variance != g.variance {
            return Err(Error::WrongShape("summands have different variance".into()));
        }
        Ok(expr(f.variance, f.half_exact && g.half_exact, Body::Sum(f.clone(), g.clone())))
    }

    /// `H^n(C, −)`; declared half-exact when the complex is projective.
    pub fn cohomology(c: &Complex, n: i64) -> FunctorExpr {
        let he = c.is_projective();
        expr(Variance::Covariant, he, Body::Cohomology(c.clone(), n))
    }

    pub fn homology_tensor(c: &Complex, n: i64) -> FunctorExpr {
        let he = c.is_projective();
        expr(Variance::Covariant, he, Body::HomologyTensor(c.clone(), n))
    }

    pub fn with_half_exact(mut self, flag: bool) -> FunctorExpr {
        self.half_exact = flag;
        self
    }

    pub fn is_covariant(&self) -> bool {
        self.variance == Variance::Covariant
    }

    pub fn eval_obj(&self, x: &FPModule) -> Result<FPModule> {
        use Body::*;
        Ok(match &*self.body {
            HomCov(a) => HomModule::new(a, x).module().clone(),
            HomContra(b) => HomModule::new(x, b).module().clone(),
            TensorLeft(a) => TensorModule::new(a, x).module().clone(),
            Fp(f) => fp_sq(f, x).as_module(),
            FpContra(f) => fp_contra_sq(f, x).as_module(),
            Tc(f) => tc_sq(f, x).as_module(),
            ShiftSigma(f, k) => f.eval_obj(&resolution(Direction::Injective, x, *k)?.shifts[*k])?,
            ShiftOmega(f, k) => f.eval_obj(&proj_resolution(x, *k).shifts[*k])?,
            Derived(f, i, side) => derived_sq(f, *i, *side, x)?.as_module(),
            SubStab(f) => sub_stabilize_sq(f, x)?.as_module(),
            QuotStab(f) => quot_stabilize_sq(f, x)?.as_module(),
            Satellite(f, i, side) => satellite_sq(f, *i, *side, x)?.as_module(),
            ExtFixedFirst(a, i) => HomCochain::new(&proj_resolution(a, i + 1), x).cohomology(*i).as_module(),
            TorFixedFirst(a, i) => TensorChain::new(&proj_resolution(a, i + 1), x).homology(*i).as_module(),
            ExtFixedSecond(b, i) => HomCochain::new(&proj_resolution(x, i + 1), b).cohomology(*i).as_module(),
            Sum(f, g) => direct_sum(&f.eval_obj(x)?, &g.eval_obj(x)?).module,
            Cohomology(c, n) => c.cohomology_sq(x, *n).as_module(),
            HomologyTensor(c, n) => c.homology_tensor_sq(x, *n).as_module(),
        })
    }

    /// `F(φ)`: from `F(X)` to `F(Y)` for covariant `F`, reversed for contravariant.
    pub fn eval_mor(&self, phi: &Morphism) -> Result<Morphism> {
        use Body::*;
        let (x, y) = (phi.source(), phi.target());
        Ok(match &*self.body {
            HomCov(a) => hom_post(&HomModule::new(a, x), &HomModule::new(a, y), phi),
            HomContra(b) => hom_pre(&HomModule::new(y, b), &HomModule::new(x, b), phi),
            TensorLeft(a) => {
                tensor_map(&TensorModule::new(a, x), &TensorModule::new(a, y), &Morphism::identity(a), phi)
            }
            Fp(f) => {
                let a = f.source();
                let h = hom_post(&HomModule::new(a, x), &HomModule::new(a, y), phi);
                fp_sq(f, x).induced(&fp_sq(f, y), &h)?
            }
            FpContra(f) => {
                let a = f.target();
                let h = hom_pre(&HomModule::new(y, a), &HomModule::new(x, a), phi);
                fp_contra_sq(f, y).induced(&fp_contra_sq(f, x), &h)?
            }
            Tc(f) => {
                let a = f.source();
                let h = tensor_map(&TensorModule::new(a, x), &TensorModule::new(a, y), &Morphism::identity(a), phi);
                tc_sq(f, x).induced(&tc_sq(f, y), &h)?
            }
            ShiftSigma(f, k) => {
                let (rx, ry) = (resolution(Direction::Injective, x, *k)?, resolution(Direction::Injective, y, *k)?);
                let (_, shifts) = lift_inj(phi, &rx, &ry);
                f.eval_mor(&shifts[*k])?
            }
            ShiftOmega(f, k) => {
                let (rx, ry) = (proj_resolution(x, *k), proj_resolution(y, *k));
                let (_, shifts) = lift_proj(phi, &rx, &ry);
                f.eval_mor(&shifts[*k])?
            }
            Derived(f, i, side) => derived_mor(f, *i, *side, phi)?,
            SubStab(f) => {
                let h = f.eval_mor(phi)?;
                let (sx, sy) = (sub_stabilize_sq(f, x)?, sub_stabilize_sq(f, y)?);
                if f.is_covariant() {
                    sx.induced(&sy, &h)?
                } else {
                    sy.induced(&sx, &h)?
                }
            }
            QuotStab(f) => {
                let h = f.eval_mor(phi)?;
                let (sx, sy) = (quot_stabilize_sq(f, x)?, quot_stabilize_sq(f, y)?);
                if f.is_covariant() {
                    sx.induced(&sy, &h)?
                } else {
                    sy.induced(&sx, &h)?
                }
            }
            Satellite(f, i, side) => satellite_mor(f, *i, *side, phi)?,
            ExtFixedFirst(a, i) => ext_map(&proj_resolution(a, i + 1), phi, *i),
            TorFixedFirst(a, i) => tor_map(&proj_resolution(a, i + 1), phi, *i),
            ExtFixedSecond(b, i) => {
                let (rx, ry) = (proj_resolution(x, i + 1), proj_resolution(y, i + 1));
                let (lift, _) = lift_proj(phi, &rx, &ry);
                let (cy, cx) = (HomCochain::new(&ry, b), HomCochain::new(&rx, b));
                let h = hom_pre(&cy.homs[*i], &cx.homs[*i], &lift[*i]);
                cy.cohomology(*i).induced(&cx.cohomology(*i), &h)?
            }
            Sum(f, g) => direct_sum_map(&f.eval_mor(phi)?, &g.eval_mor(phi)?),
            Cohomology(c, n) => c.cohomology_mor(phi, *n)?,
            HomologyTensor(c, n) => c.homology_tensor_mor(phi, *n)?,
        })
    }
}

fn resolution(dir: Direction, x: &FPModule, depth: usize) -> Result<Resolution> {
    match dir {
        Direction::Projective => Ok(proj_resolution(x, depth)),
        Direction::Injective => inj_resolution(x, depth).map_err(|_| {
            Error::UnsupportedRing(format!(
                "this construction needs injective resolutions, which {} does not provide",
                x.ring()
            ))
        }),
    }
}

fn direction_for(variance: Variance, side: Side) -> Direction {
    match (variance, side) {
        (Variance::Covariant, Side::Right) | (Variance::Contravariant, Side::Left) => Direction::Injective,
        _ => Direction::Projective,
    }
}

fn fp_sq(f: &Morphism, x: &FPModule) -> Subquotient {
    let (a, b) = (f.source(), f.target());
    cokernel_sq(&hom_pre(&HomModule::new(b, x), &HomModule::new(a, x), f))
}

fn fp_contra_sq(f: &Morphism, x: &FPModule) -> Subquotient {
    let (b, a) = (f.source(), f.target());
    cokernel_sq(&hom_post(&HomModule::new(x, b), &HomModule::new(x, a), f))
}

fn tc_sq(f: &Morphism, x: &FPModule) -> Subquotient {
    let (a, b) = (f.source(), f.target());
    let id = Morphism::identity(x);
    kernel_sq(&tensor_map(&TensorModule::new(a, x), &TensorModule::new(b, x), f, &id))
}

/// A functor applied to one resolution of its argument.
#[derive(Clone, Debug)]
pub struct Legs {
    pub side: Side,
    pub res: Resolution,
    /// `u_i`, see the module docs.
    pub u: Vec<Morphism>,
    /// `v_i`, see the module docs.
    pub v: Vec<Morphism>,
}

impl Legs {
    pub fn new(f: &FunctorExpr, side: Side, x: &FPModule, depth: usize) -> Result<Legs> {
        let res = resolution(direction_for(f.variance, side), x, depth)?;
        Legs::from_resolution(f, side, res)
    }

    pub fn from_resolution(f: &FunctorExpr, side: Side, res: Resolution) -> Result<Legs> {
        let u = res.covers.iter().map(|c| f.eval_mor(c)).collect::<Result<Vec<_>>>()?;
        let v = res.links[..res.depth].iter().map(|l| f.eval_mor(l)).collect::<Result<Vec<_>>>()?;
        Ok(Legs { side, res, u, v })
    }

    pub fn depth(&self) -> usize {
        self.res.depth
    }

    /// `F(X)`, the value at the resolved module.
    pub fn value(&self) -> &FPModule {
        match self.side {
            Side::Right => self.u[0].source(),
            Side::Left => self.u[0].target(),
        }
    }

    /// `δ_i` between the functor applied to consecutive resolution terms.
    pub fn delta(&self, i: usize) -> Morphism {
        match self.side {
            Side::Right => self.u[i + 1].compose(&self.v[i]),
            Side::Left => self.v[i].compose(&self.u[i + 1]),
        }
    }

    /// `F̄(Σ^i X)` or `F̲(Ω^i X)` (and the contravariant analogues).
    pub fn stab(&self, i: usize) -> Subquotient {
        match self.side {
            Side::Right => kernel_sq(&self.u[i]),
            Side::Left => cokernel_sq(&self.u[i]),
        }
    }

    /// The `i`-th satellite, `i ≥ 1`.
    pub fn satellite(&self, i: usize) -> Subquotient {
        match self.side {
            Side::Right => cokernel_sq(&self.v[i - 1]),
            Side::Left => kernel_sq(&self.v[i - 1]),
        }
    }

    /// The `i`-th derived functor as homology of `F` applied to the resolution.
    pub fn derived(&self, i: usize) -> Subquotient {
        match self.side {
            Side::Right => {
                let into = if i == 0 {
                    Morphism::zero(&FPModule::zero(self.value().ring().clone()), self.u[0].target())
                } else {
                    self.delta(i - 1)
                };
                homology_at(&into, &self.delta(i)).expect("F applied to a resolution is a complex")
            }
            Side::Left => {
                let t0 = self.u[i].source();
                let out = if i == 0 {
                    Morphism::zero(t0, &FPModule::zero(t0.ring().clone()))
                } else {
                    self.delta(i - 1)
                };
                homology_at(&self.delta(i), &out).expect("F applied to a resolution is a complex")
            }
        }
    }
}

/// Lifted resolution maps for `φ`, as `(term maps, shift maps)`.
fn lift(dir: Direction, phi: &Morphism, depth: usize) -> Result<(Resolution, Resolution, Vec<Morphism>, Vec<Morphism>)> {
    let rx = resolution(dir, phi.source(), depth)?;
    let ry = resolution(dir, phi.target(), depth)?;
    let (t, s) = match dir {
        Direction::Projective => lift_proj(phi, &rx, &ry),
        Direction::Injective => lift_inj(phi, &rx, &ry),
    };
    Ok((rx, ry, t, s))
}

/// Which shortcut applies to the right-derived functors of a covariant functor over ℤ.
enum FpShortcut {
    /// `R^i F = Ext^i(w, −)`.
    Defect(FPModule),
    /// `R^i F = 0`.
    Zero,
}

fn fp_shortcut(f: &FunctorExpr) -> Option<FpShortcut> {
    if !f.is_covariant() {
        return None;
    }
    match &*f.body {
        Body::Fp(g) => Some(FpShortcut::Defect(kernel(g).0)),
        Body::HomCov(a) => Some(FpShortcut::Defect(a.clone())),
        Body::ExtFixedFirst(a, 0) => Some(FpShortcut::Defect(a.clone())),
        Body::ExtFixedFirst(_, _) => Some(FpShortcut::Zero),
        Body::Cohomology(c, n) => Some(FpShortcut::Defect(c.homology(*n))),
        _ => None,
    }
}

pub(crate) fn fp_shortcut_applies(f: &FunctorExpr) -> bool {
    fp_shortcut(f).is_some()
}

fn use_shortcut(f: &FunctorExpr, side: Side, x: &FPModule) -> Option<FpShortcut> {
    if side == Side::Right && f.is_covariant() && !x.ring().quasi_frobenius() {
        fp_shortcut(f)
    } else {
        None
    }
}

fn shortcut_sq(s: &FpShortcut, i: usize, x: &FPModule) -> Subquotient {
    match s {
        FpShortcut::Defect(w) => HomCochain::new(&proj_resolution(w, i + 1), x).cohomology(i),
        FpShortcut::Zero => {
            let z = FPModule::zero(x.ring().clone());
            Subquotient::new(&z, &IntMat::zeros(0, 0), &IntMat::zeros(0, 0))
        }
    }
}

pub fn derived_sq(f: &FunctorExpr, i: usize, side: Side, x: &FPModule) -> Result<Subquotient> {
    if let Some(s) = use_shortcut(f, side, x) {
        return Ok(shortcut_sq(&s, i, x));
    }
    Ok(Legs::new(f, side, x, i + 1)?.derived(i))
}

fn derived_mor(f: &FunctorExpr, i: usize, side: Side, phi: &Morphism) -> Result<Morphism> {
    let (x, y) = (phi.source(), phi.target());
    if let Some(s) = use_shortcut(f, side, x) {
        return Ok(match s {
            FpShortcut::Defect(w) => ext_map(&proj_resolution(&w, i + 1), phi, i),
            FpShortcut::Zero => Morphism::zero(&shortcut_sq(&s, i, x).as_module(), &shortcut_sq(&s, i, y).as_module()),
        });
    }
    let (rx, ry, terms, _) = lift(direction_for(f.variance, side), phi, i + 1)?;
    let (lx, ly) = (Legs::from_resolution(f, side, rx)?, Legs::from_resolution(f, side, ry)?);
    let h = f.eval_mor(&terms[i])?;
    let (dx, dy) = (lx.derived(i), ly.derived(i));
    Ok(if f.is_covariant() { dx.induced(&dy, &h)? } else { dy.induced(&dx, &h)? })
}

fn satellite_sq(f: &FunctorExpr, i: usize, side: Side, x: &FPModule) -> Result<Subquotient> {
    if i == 0 {
        return Err(Error::InvalidInput("satellites are indexed from 1".into()));
    }
    Ok(Legs::new(f, side, x, i)?.satellite(i))
}

fn satellite_mor(f: &FunctorExpr, i: usize, side: Side, phi: &Morphism) -> Result<Morphism> {
    if i == 0 {
        return Err(Error::InvalidInput("satellites are indexed from 1".into()));
    }
    let (rx, ry, _, shifts) = lift(direction_for(f.variance, side), phi, i)?;
    let (lx, ly) = (Legs::from_resolution(f, side, rx)?, Legs::from_resolution(f, side, ry)?);
    let h = f.eval_mor(&shifts[i])?;
    let (sx, sy) = (lx.satellite(i), ly.satellite(i));
    Ok(if f.is_covariant() { sx.induced(&sy, &h)? } else { sy.induced(&sx, &h)? })
}

pub fn satellite(f: &FunctorExpr, i: usize, side: Side, x: &FPModule) -> Result<FPModule> {
    Ok(satellite_sq(f, i, side, x)?.as_module())
}

fn sub_stabilize_sq(f: &FunctorExpr, x: &FPModule) -> Result<Subquotient> {
    if f.is_covariant() && !x.ring().quasi_frobenius() {
        return match &*f.body {
            Body::Fp(g) => Ok(image_sq(&sub_stabilize_fp(g, x).1)),
            Body::HomCov(a) => Ok(image_sq(&Morphism::zero(&FPModule::zero(x.ring().clone()), &HomModule::new(a, x).module().clone()))),
            Body::Cohomology(c, n) => Ok(image_sq(&c.coh_substab_map(x, *n))),
            Body::TensorLeft(a) => tensor_sub_stabilize_sq(a, x),
            _ => Err(Error::UnsupportedRing(format!(
                "sub-stabilization of a covariant functor needs injective containers, unavailable over {}",
                x.ring()
            ))),
        };
    }
    Ok(Legs::new(f, Side::Right, x, 0)?.stab(0))
}

fn quot_stabilize_sq(f: &FunctorExpr, x: &FPModule) -> Result<Subquotient> {
    Ok(Legs::new(f, Side::Left, x, 0)?.stab(0))
}

/// `F̄(X)` with its inclusion into `F(X)`.
pub fn sub_stabilize(f: &FunctorExpr, x: &FPModule) -> Result<(FPModule, Morphism)> {
    let sq = sub_stabilize_sq(f, x)?;
    Ok((sq.as_module(), sq.inclusion()))
}

/// `F̲(X)` with the quotient map from `F(X)`.
pub fn quot_stabilize(f: &FunctorExpr, x: &FPModule) -> Result<(FPModule, Morphism)> {
    let sq = quot_stabilize_sq(f, x)?;
    Ok((sq.as_module(), sq.projection()))
}

/// Sub-stabilization of `FP(f)` from the epi-mono factorization `f = m e`:
/// `coker(Hom(B, X) → Hom(Im f, X))`, mapped into `F(X)` through `Hom(e, X)`.
/// Works over any ring.
pub fn sub_stabilize_fp(f: &Morphism, x: &FPModule) -> (FPModule, Morphism) {
    let (e, m) = epi_mono_factor(f);
    let (a, b, im) = (f.source(), f.target(), e.target());
    let (hb, him, ha) = (HomModule::new(b, x), HomModule::new(im, x), HomModule::new(a, x));
    let sq = cokernel_sq(&hom_pre(&hb, &him, &m));
    let to_a = hom_pre(&him, &ha, &e);
    let k = sq.descend(&fp_sq(f, x).projection().compose(&to_a)).expect("Hom(e, X) kills the image of Hom(B, X)");
    (sq.as_module(), k)
}

/// The tensor copresentation `0 → F̲ → D ⊗ − → B ⊗ −` of the quot-stabilization
/// of `TC(f)`, where `D` is the image of `f`.
#[derive(Clone, Debug)]
pub struct TcCopresentation {
    pub image: FPModule,
    pub target: FPModule,
    pub inclusion: Morphism,
}

pub fn tc_quot_stabilize(f: &Morphism, x: &FPModule) -> (FPModule, TcCopresentation) {
    let (_, m) = epi_mono_factor(f);
    let id = Morphism::identity(x);
    let d = m.source().clone();
    let k = kernel_sq(&tensor_map(&TensorModule::new(&d, x), &TensorModule::new(f.target(), x), &m, &id));
    (k.as_module(), TcCopresentation { image: d, target: f.target().clone(), inclusion: m })
}

/// `w(F)` for covariant fp functors, `v(F) = F(R)` for contravariant ones.
pub fn defect(f: &FunctorExpr) -> Result<FPModule> {
    match &*f.body {
        Body::Fp(g) => Ok(kernel(g).0),
        Body::HomCov(a) => Ok(a.clone()),
        Body::Cohomology(c, n) => Ok(c.homology(*n)),
        Body::FpContra(g) => f.eval_obj(&FPModule::free(g.ring().clone(), 1)),
        Body::HomContra(b) => Ok(b.clone()),
        _ => Err(Error::WrongShape("the defect is defined for finitely presented functors".into())),
    }
}

/// `ρ_F(X): F(X) → R^0F(X)`.
pub fn rho(f: &FunctorExpr, x: &FPModule) -> Result<Morphism> {
    if let Some(s) = use_shortcut(f, Side::Right, x) {
        let r0 = shortcut_sq(&s, 0, x);
        let fx = f.eval_obj(x)?;
        return match s {
            FpShortcut::Zero => Ok(Morphism::zero(&fx, &r0.as_module())),
            FpShortcut::Defect(w) => {
                let (canon, _) = fp_comparison(f, &w, x)?;
                Ok(r0.factor(&canon)?)
            }
        };
    }
    let legs = Legs::new(f, Side::Right, x, 1)?;
    Ok(legs.derived(0).factor(&legs.u[0])?)
}

/// For functors routed through the defect shortcut: the map
/// `F(X) → Hom(P_0(w), X)` landing in the cocycles.
fn fp_comparison(f: &FunctorExpr, w: &FPModule, x: &FPModule) -> Result<(Morphism, Resolution)> {
    let res = proj_resolution(w, 1);
    let hp = HomModule::new(&res.terms[0], x);
    let m = match &*f.body {
        Body::Fp(g) => {
            let (_, inc) = kernel(g);
            let ha = HomModule::new(g.source(), x);
            let pre = hom_pre(&ha, &hp, &inc.compose(&res.covers[0]));
            fp_sq(g, x).descend(&pre)?
        }
        Body::HomCov(a) => hom_pre(&HomModule::new(a, x), &hp, &res.covers[0]),
        // Ext^0(A, X) is already the degree-0 cocycle module of the same resolution.
        Body::ExtFixedFirst(a, 0) => HomCochain::new(&proj_resolution(a, 1), x).cohomology(0).inclusion(),
        Body::Cohomology(c, n) => c.cohomology_to_defect(x, *n, &res)?,
        _ => return Err(Error::WrongShape("no defect comparison for this functor".into())),
    };
    Ok((m, res))
}

/// `λ_F(X): L_0F(X) → F(X)`.
pub fn lambda(f: &FunctorExpr, x: &FPModule) -> Result<Morphism> {
    let legs = Legs::new(f, Side::Left, x, 1)?;
    Ok(legs.derived(0).descend(&legs.u[0])?)
}

/// `β_F(X): R^0F(X) → F̄(ΣX)` (or `R_0F(X) → F̄(ΩX)` for contravariant `F`).
pub fn beta(f: &FunctorExpr, x: &FPModule) -> Result<Morphism> {
    let legs = Legs::new(f, Side::Right, x, 1)?;
    Ok(legs.derived(0).induced(&legs.stab(1), &legs.v[0])?)
}

/// `α_F(X): F̲(ΩX) → L_0F(X)` (or `F̲(ΣX) → L^0F(X)` for contravariant `F`).
pub fn alpha(f: &FunctorExpr, x: &FPModule) -> Result<Morphism> {
    let legs = Legs::new(f, Side::Left, x, 1)?;
    Ok(legs.stab(1).induced(&legs.derived(0), &legs.v[0])?)
}

/// Sampled components of a natural transformation with naturality verdicts.
#[derive(Clone, Debug)]
pub struct NatTransSample {
    pub name: String,
    pub components: Vec<Morphism>,
    pub naturality: Vec<bool>,
}

impl NatTransSample {
    pub fn all_natural(&self) -> bool {
        self.naturality.iter().all(|&b| b)
    }
}

/// Checks `G(φ) ∘ η_X = η_Y ∘ F(φ)` (covariant) or `G(φ) ∘ η_Y = η_X ∘ F(φ)`
/// (contravariant) on every sampled `φ`.
pub fn sample_nat_trans(
    name: &str,
    f: &FunctorExpr,
    g: &FunctorExpr,
    eta: impl Fn(&FPModule) -> Result<Morphism>,
    morphisms: &[Morphism],
) -> Result<NatTransSample> {
    let mut components = Vec::new();
    let mut naturality = Vec::new();
    for phi in morphisms {
        let (ex, ey) = (eta(phi.source())?, eta(phi.target())?);
        let (fp, gp) = (f.eval_mor(phi)?, g.eval_mor(phi)?);
        let ok = if f.is_covariant() {
            gp.compose(&ex) == ey.compose(&fp)
        } else {
            gp.compose(&ey) == ex.compose(&fp)
        };
        naturality.push(ok);
        components.push(ex);
    }
    Ok(NatTransSample { name: name.to_string(), components, naturality })
}

/// The torsion radical: the kernel of the evaluation map `A → A**`.
pub fn torsion_radical(a: &FPModule) -> (FPModule, Morphism) {
    kernel(&evaluation_map(a))
}

/// A resolution of `Tr A` that starts with the dual presentation
/// `R^g --Pᵀ--> R^r → Tr A`, so that `Ω^2 Tr A = A*` as a submodule of `R^g`.
/// Returns the resolution and the iso `Ω^2 → A*` (as the dual hom module).
pub fn transpose_resolution(a: &FPModule, depth: usize) -> (Resolution, Morphism) {
    assert!(depth >= 2);
    let ring = a.ring().clone();
    let (g, r) = (a.gens(), a.relations().cols());
    let tr = transpose(a);
    let p0 = FPModule::free(ring.clone(), r);
    let p1 = FPModule::free(ring.clone(), g);
    let pi0 = Morphism::new(&p0, &tr, IntMat::identity(r)).expect("free source");
    let d1 = Morphism::new(&p1, &p0, a.relations().transpose()).expect("free source");
    let omega1 = kernel_sq(&pi0);
    let pi1 = omega1.factor(&d1).expect("the columns of Pᵀ are relations of Tr A");
    let omega2 = kernel_sq(&pi1);
    let tail = proj_resolution(omega2.module(), depth - 2);
    let mut terms = vec![p0, p1];
    let mut shifts = vec![tr.clone(), omega1.as_module(), omega2.as_module()];
    let mut covers = vec![pi0, pi1];
    let mut links = vec![omega1.inclusion(), omega2.inclusion()];
    let mut link_sq = vec![omega1, omega2.clone()];
    for k in 0..=depth - 2 {
        terms.push(tail.terms[k].clone());
        covers.push(tail.covers[k].clone());
        links.push(tail.links[k].clone());
        link_sq.push(tail.link_sq[k].clone());
        shifts.push(tail.shifts[k + 1].clone());
    }
    let differentials = (1..=depth).map(|k| links[k - 1].compose(&covers[k])).collect();
    let res = Resolution {
        direction: Direction::Projective,
        depth,
        module: tr,
        terms,
        differentials,
        shifts,
        covers,
        links,
        link_sq,
    };
    // Ω^2 ⊆ R^g to A*: a kernel vector y of Pᵀ is the functional with row yᵀ.
    let da = dual(a);
    let r1 = FPModule::free(ring, 1);
    let cols: Vec<_> = (0..omega2.module().gens())
        .map(|c| {
            let y = omega2.lift().col(c);
            let phi = Morphism::new(a, &r1, IntMat::from_int_rows(1, g, vec![y])).expect("kernel vectors are functionals");
            da.encode(&phi)
        })
        .collect();
    let iso = Morphism::new(omega2.module(), da.module(), IntMat::from_cols(da.module().gens(), &cols))
        .expect("functionals form a well-defined map");
    (res, iso)
}

/// Which Auslander four-term sequence to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FourTermSide {
    /// `0 → Ext^1(Tr A, X) → A ⊗ X → Hom(A*, X) → Ext^2(Tr A, X) → 0`.
    TensorSide,
    /// `0 → Tor_2(Tr A, X) → A* ⊗ X → Hom(A, X) → Tor_1(Tr A, X) → 0`.
    HomSide,
}

/// `Hom(R^g, X) → A ⊗ X`, `(x_i) ↦ Σ e_i ⊗ x_i`, for `A` on `g` generators.
fn free_hom_to_tensor(hom: &HomModule, axt: &TensorModule) -> Morphism {
    let g = axt.left().gens();
    let cols: Vec<_> = (0..hom.module().gens())
        .map(|k| {
            let m = hom.generator(k);
            let mut acc = vec![Int::from(0); axt.module().gens()];
            for i in 0..g {
                let mut e = vec![Int::from(0); g];
                e[i] = 1.into();
                for (s, v) in acc.iter_mut().zip(axt.pure(&e, &m.matrix().col(i))) {
                    *s += v;
                }
            }
            axt.module().reduce(&acc)
        })
        .collect();
    Morphism::new(hom.module(), axt.module(), IntMat::from_cols(axt.module().gens(), &cols))
        .expect("the tensor relations are the images of the presentation")
}

/// `A ⊗ −` as `FP(Pᵀ: R^g → R^r)` for a presentation matrix `P` of `A`, so
/// sub-stabilization goes through the fp formula on any ring.
fn tensor_sub_stabilize_sq(a: &FPModule, x: &FPModule) -> Result<Subquotient> {
    let ring = a.ring().clone();
    let p = a.relations();
    let pt = Morphism::new(&FPModule::free(ring.clone(), p.rows()), &FPModule::free(ring, p.cols()), p.transpose())?;
    let (_, k) = sub_stabilize_fp(&pt, x);
    let axt = TensorModule::new(a, x);
    let to_tensor = fp_sq(&pt, x).descend(&free_hom_to_tensor(&HomModule::new(pt.source(), x), &axt))?;
    Ok(image_sq(&to_tensor.compose(&k)))
}

pub fn auslander_four_term(a: &FPModule, x: &FPModule, which: FourTermSide) -> Result<SequenceReport> {
    let ring = a.ring().clone();
    let zero = FPModule::zero(ring.clone());
    let (res, iso) = transpose_resolution(a, 3);
    let da = dual(a);
    let g = a.gens();
    match which {
        FourTermSide::TensorSide => {
            let coch = HomCochain::new(&res, x);
            let (e1, e2) = (coch.cohomology(1), coch.cohomology(2));
            let axt = TensorModule::new(a, x);
            let m1 = e1.descend(&free_hom_to_tensor(&coch.homs[1], &axt))?;
            // A ⊗ X → Hom(A*, X): a ⊗ x ↦ (φ ↦ φ(a) x).
            let hdx = HomModule::new(da.module(), x);
            let cols: Vec<_> = (0..axt.module().gens())
                .map(|k| {
                    let (av, xv) = axt.factors(k);
                    let fcols: Vec<Vec<_>> = (0..da.module().gens())
                        .map(|mm| {
                            let phi = da.generator(mm);
                            let s: crate::ring::Int = phi.matrix().row(0).iter().zip(&av).map(|(p, q)| p * q).sum();
                            xv.iter().map(|t| t * &s).collect()
                        })
                        .collect();
                    let mor = Morphism::new(da.module(), x, IntMat::from_cols(x.gens(), &fcols))
                        .expect("evaluation pairing is well defined");
                    hdx.encode(&mor)
                })
                .collect();
            let m2 = Morphism::new(axt.module(), hdx.module(), IntMat::from_cols(hdx.module().gens(), &cols))?;
            // Hom(A*, X) → Hom(P_2, X) → Ext^2.
            let to_p2 = hom_pre(&hdx, &coch.homs[2], &iso.compose(&res.covers[2]));
            let m3 = e2.factor(&to_p2)?;
            SequenceReport::new(
                "Auslander four-term sequence (tensor side)",
                0,
                vec![
                    ("0".into(), zero.clone()),
                    ("Ext^1(TrA,X)".into(), e1.as_module()),
                    ("A⊗X".into(), axt.module().clone()),
                    ("Hom(A*,X)".into(), hdx.module().clone()),
                    ("Ext^2(TrA,X)".into(), e2.as_module()),
                    ("0".into(), zero.clone()),
                ],
                vec![
                    Morphism::zero(&zero, e1.module()),
                    m1,
                    m2,
                    m3,
                    Morphism::zero(e2.module(), &zero),
                ],
                vec![],
            )
        }
        FourTermSide::HomSide => {
            let ch = TensorChain::new(&res, x);
            let (t1, t2) = (ch.homology(1), ch.homology(2));
            let dxt = TensorModule::new(da.module(), x);
            let hax = HomModule::new(a, x);
            // Tor_2 → A* ⊗ X through P_2 ⊗ X.
            let p2 = tensor_map(&ch.tensors[2], &dxt, &iso.compose(&res.covers[2]), &Morphism::identity(x));
            let m1 = t2.descend(&p2)?;
            // A* ⊗ X → Hom(A, X): φ ⊗ x ↦ (a ↦ φ(a) x).
            let cols: Vec<_> = (0..dxt.module().gens())
                .map(|k| {
                    let (pv, xv) = dxt.factors(k);
                    let phi = da.decode(&pv);
                    let row = phi.matrix().row(0);
                    let m = IntMat::from_fn(x.gens(), g, |i, j| &xv[i] * &row[j]);
                    hax.encode(&Morphism::new(a, x, m).expect("rank-one maps out of functionals are well defined"))
                })
                .collect();
            let m2 = Morphism::new(dxt.module(), hax.module(), IntMat::from_cols(hax.module().gens(), &cols))?;
            // Hom(A, X) → Tor_1: f ↦ Σ e_i ⊗ f(e_i) ∈ P_1 ⊗ X.
            let p1t = &ch.tensors[1];
            let cols: Vec<_> = (0..hax.module().gens())
                .map(|k| {
                    let m = hax.generator(k);
                    let mut acc = vec![crate::ring::Int::from(0); p1t.module().gens()];
                    for i in 0..g {
                        let mut e = vec![crate::ring::Int::from(0); g];
                        e[i] = 1.into();
                        for (s, v) in acc.iter_mut().zip(p1t.pure(&e, &m.matrix().col(i))) {
                            *s += v;
                        }
                    }
                    p1t.module().reduce(&acc)
                })
                .collect();
            let h = Morphism::new(hax.module(), p1t.module(), IntMat::from_cols(p1t.module().gens(), &cols))?;
            let m3 = t1.factor(&h)?;
            SequenceReport::new(
                "Auslander four-term sequence (Hom side)",
                0,
                vec![
                    ("0".into(), zero.clone()),
                    ("Tor_2(TrA,X)".into(), t2.as_module()),
                    ("A*⊗X".into(), dxt.module().clone()),
                    ("Hom(A,X)".into(), hax.module().clone()),
                    ("Tor_1(TrA,X)".into(), t1.as_module()),
                    ("0".into(), zero.clone()),
                ],
                vec![
                    Morphism::zero(&zero, t2.module()),
                    m1,
                    m2,
                    m3,
                    Morphism::zero(t1.module(), &zero),
                ],
                vec![],
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolve::{ext, tor};
    use crate::ring::RingDesc;

    fn z() -> RingDesc {
        RingDesc::Integers
    }

    fn z4() -> RingDesc {
        RingDesc::zmod(4)
    }

    fn mult(m: &FPModule, k: i64) -> Morphism {
        Morphism::new(m, m, IntMat::identity(m.gens()).scale(&k.into())).unwrap()
    }

    #[test]
    fn eval_examples() {
        let (c2, c3, c4) = (FPModule::cyclic(z(), 2), FPModule::cyclic(z(), 3), FPModule::cyclic(z(), 4));
        assert_eq!(FunctorExpr::hom_cov(&c2).eval_obj(&c4).unwrap().to_string(), "Z/2");
        assert!(FunctorExpr::tensor_left(&c2).eval_obj(&c3).unwrap().is_zero());
        let to_zero = Morphism::zero(&c2, &FPModule::zero(z()));
        let fp = FunctorExpr::fp(&to_zero);
        for x in [&c2, &c3, &c4] {
            assert!(fp.eval_obj(x).unwrap().iso(&HomModule::new(&c2, x).module().clone()));
        }
    }

    #[test]
    fn functor_laws_on_samples() {
        let ring = z4();
        let (c2, r) = (FPModule::cyclic(ring.clone(), 2), FPModule::free(ring.clone(), 1));
        let p = Morphism::new(&r, &c2, IntMat::from_rows(&[vec![1]])).unwrap();
        let i = Morphism::new(&c2, &r, IntMat::from_rows(&[vec![2]])).unwrap();
        let f = FunctorExpr::hom_cov(&c2);
        let exprs = [
            f.clone(),
            FunctorExpr::tensor_left(&c2),
            FunctorExpr::hom_contra(&c2),
            FunctorExpr::sub_stab(&FunctorExpr::tensor_left(&c2)),
            FunctorExpr::quot_stab(&f),
            FunctorExpr::derived(&f, 1, Side::Right),
            FunctorExpr::satellite(&f, 1, Side::Left),
            FunctorExpr::shift_sigma(&f, 1),
            FunctorExpr::shift_omega(&f, 1),
            FunctorExpr::ext_fixed_first(&c2, 1),
            FunctorExpr::tor_fixed_first(&c2, 1),
            FunctorExpr::ext_fixed_second(&c2, 1),
        ];
        for e in &exprs {
            for x in [&c2, &r] {
                let id = e.eval_mor(&Morphism::identity(x)).unwrap();
                assert!(id == Morphism::identity(id.source()), "{e:?}");
            }
            let (a, b) = (e.eval_mor(&p).unwrap(), e.eval_mor(&i).unwrap());
            let ba = e.eval_mor(&i.compose(&p)).unwrap();
            let expected = if e.is_covariant() { b.compose(&a) } else { a.compose(&b) };
            assert!(ba == expected, "{e:?}");
        }
    }

    #[test]
    fn stabilization_examples() {
        let c2 = FPModule::cyclic(z4(), 2);
        let (sub, k) = sub_stabilize(&FunctorExpr::tensor_left(&c2), &c2).unwrap();
        assert_eq!(sub.to_string(), "Z/2");
        assert!(k.is_mono());
        let r = FPModule::free(z4(), 1);
        assert!(sub_stabilize(&FunctorExpr::tensor_left(&c2), &r).unwrap().0.is_zero());
        assert!(sub_stabilize(&FunctorExpr::hom_cov(&c2), &c2).unwrap().0.is_zero());

        let (z2, z4m) = (FPModule::cyclic(z(), 2), FPModule::cyclic(z(), 4));
        assert_eq!(quot_stabilize(&FunctorExpr::hom_cov(&z2), &z4m).unwrap().0.to_string(), "Z/2");
        assert!(quot_stabilize(&FunctorExpr::tensor_left(&z2), &z4m).unwrap().0.is_zero());
        assert!(quot_stabilize(&FunctorExpr::hom_cov(&z2), &FPModule::free(z(), 2)).unwrap().0.is_zero());

        assert_eq!(sub_stabilize(&FunctorExpr::tensor_left(&z2), &z4m).unwrap().0.to_string(), "Z/2");
        assert!(matches!(
            sub_stabilize(&FunctorExpr::tor_fixed_first(&z2, 1), &z4m),
            Err(Error::UnsupportedRing(_))
        ));
    }

    #[test]
    fn fp_substab_examples() {
        let zz = FPModule::free(z(), 1);
        let x = FPModule::cyclic(z(), 4);
        assert!(sub_stabilize_fp(&Morphism::identity(&zz), &x).0.is_zero());
        assert_eq!(sub_stabilize_fp(&mult(&zz, 2), &x).0.to_string(), "Z/2");
        let r = FPModule::free(z4(), 1);
        let c2 = FPModule::cyclic(z4(), 2);
        for f in [mult(&r, 2), Morphism::zero(&c2, &r), Morphism::identity(&c2)] {
            for x in [&r, &c2] {
                let a = sub_stabilize_fp(&f, x).0;
                let b = sub_stabilize(&FunctorExpr::fp(&f), x).unwrap().0;
                assert!(a.iso(&b));
            }
        }
    }

    #[test]
    fn tc_examples() {
        let r = FPModule::free(z4(), 1);
        let c2 = FPModule::cyclic(z4(), 2);
        let f = mult(&r, 2);
        let (k, cop) = tc_quot_stabilize(&f, &c2);
        assert_eq!(k.to_string(), "Z/2");
        assert_eq!(cop.image.to_string(), "Z/2");
        assert!(k.iso(&quot_stabilize(&FunctorExpr::tc(&f), &c2).unwrap().0));
        assert!(tc_quot_stabilize(&Morphism::zero(&r, &r), &c2).0.is_zero());
    }

    #[test]
    fn defect_examples() {
        let zz = FPModule::free(z(), 1);
        let c3 = FPModule::cyclic(z(), 3);
        assert!(defect(&FunctorExpr::fp(&Morphism::zero(&c3, &FPModule::zero(z())))).unwrap().iso(&c3));
        assert!(defect(&FunctorExpr::fp(&mult(&zz, 2))).unwrap().is_zero());
        let r = FPModule::free(z4(), 1);
        assert_eq!(defect(&FunctorExpr::fp(&mult(&r, 2))).unwrap().to_string(), "Z/2");
        assert!(matches!(defect(&FunctorExpr::tensor_left(&zz)), Err(Error::WrongShape(_))));
    }

    #[test]
    fn transformations_are_isomorphisms_where_expected() {
        for ring in [z(), z4()] {
            let a = FPModule::cyclic(ring.clone(), 2);
            for x in [FPModule::cyclic(ring.clone(), 2), FPModule::free(ring.clone(), 1)] {
                assert!(rho(&FunctorExpr::hom_cov(&a), &x).unwrap().is_iso());
                assert!(lambda(&FunctorExpr::tensor_left(&a), &x).unwrap().is_iso());
            }
        }
        let a = FPModule::cyclic(z4(), 2);
        let f = FunctorExpr::tensor_left(&a);
        assert!(beta(&f, &a).unwrap().is_epi());
        let g = FunctorExpr::hom_cov(&a);
        let al = alpha(&g, &a).unwrap();
        assert!(al.source().is_zero() || al.is_mono());
    }

    #[test]
    fn derived_of_fp_is_ext_of_defect() {
        let r = FPModule::free(z4(), 1);
        let f = FunctorExpr::fp(&mult(&r, 2));
        let w = defect(&f).unwrap();
        for x in [FPModule::cyclic(z4(), 2), r.clone()] {
            for i in 0..3 {
                let d = FunctorExpr::derived(&f, i, Side::Right).eval_obj(&x).unwrap();
                assert!(d.iso(&ext(&w, &x, i)), "i = {i}");
            }
        }
        let zz = FPModule::free(z(), 1);
        let c2 = FPModule::cyclic(z(), 2);
        let f = FunctorExpr::fp(&Morphism::zero(&c2, &zz));
        let x = FPModule::cyclic(z(), 4);
        assert_eq!(FunctorExpr::derived(&f, 0, Side::Right).eval_obj(&x).unwrap().to_string(), "Z/2");
        assert!(rho(&f, &x).unwrap().is_iso());
    }

    #[test]
    fn satellite_examples() {
        let c2 = FPModule::cyclic(z4(), 2);
        assert!(satellite(&FunctorExpr::tensor_left(&c2), 1, Side::Right, &c2).unwrap().is_zero());
        assert_eq!(satellite(&FunctorExpr::hom_cov(&c2), 1, Side::Right, &c2).unwrap().to_string(), "Z/2");
        let d = FPModule::cyclic(z(), 6);
        for x in [FPModule::cyclic(z(), 4), FPModule::cyclic(z(), 3), FPModule::free(z(), 1)] {
            let s = satellite(&FunctorExpr::ext_fixed_first(&d, 1), 1, Side::Left, &x).unwrap();
            assert!(s.iso(&quot_stabilize(&FunctorExpr::hom_cov(&d), &x).unwrap().0));
        }
    }

    #[test]
    fn torsion_radical_examples() {
        let a = FPModule::diagonal(z(), &[3.into()], 1);
        assert_eq!(torsion_radical(&a).0.to_string(), "Z/3");
        assert!(torsion_radical(&FPModule::free(z(), 2)).0.is_zero());
        // Every finitely generated module over a self-injective ring is reflexive.
        assert!(torsion_radical(&FPModule::cyclic(z4(), 2)).0.is_zero());
    }

    #[test]
    fn four_term_examples() {
        let c2 = FPModule::cyclic(z(), 2);
        let zz = FPModule::free(z(), 1);
        let rep = auslander_four_term(&c2, &zz, FourTermSide::TensorSide).unwrap();
        assert!(rep.is_exact(), "{rep}");
        let got: Vec<String> = rep.nodes.iter().map(|(_, m)| m.to_string()).collect();
        assert_eq!(got, ["0", "Z/2", "Z/2", "0", "0", "0"]);
        let rep = auslander_four_term(&c2, &FPModule::cyclic(z(), 4), FourTermSide::HomSide).unwrap();
        assert!(rep.is_exact(), "{rep}");
        let got: Vec<String> = rep.nodes.iter().map(|(_, m)| m.to_string()).collect();
        assert_eq!(got, ["0", "0", "0", "Z/2", "Z/2", "0"]);
        let f = FPModule::free(z4(), 2);
        for which in [FourTermSide::TensorSide, FourTermSide::HomSide] {
            let rep = auslander_four_term(&f, &FPModule::cyclic(z4(), 2), which).unwrap();
            assert!(rep.is_exact());
            assert!(rep.nodes[1].1.is_zero() && rep.nodes[4].1.is_zero());
        }
    }

    #[test]
    fn stabilizations_match_transpose_ext_tor() {
        let a = FPModule::diagonal(z4(), &[2.into()], 1);
        let tr = transpose(&a);
        for x in [FPModule::cyclic(z4(), 2), FPModule::free(z4(), 1)] {
            let s = sub_stabilize(&FunctorExpr::tensor_left(&a), &x).unwrap().0;
            assert!(s.iso(&ext(&tr, &x, 1)));
            let q = quot_stabilize(&FunctorExpr::hom_cov(&a), &x).unwrap().0;
            assert!(q.iso(&tor(&tr, &x, 1)));
        }
        let z = RingDesc::Integers;
        let a = FPModule::diagonal(z.clone(), &[2.into(), 6.into()], 1);
        let tr = transpose(&a);
        for x in [FPModule::cyclic(z.clone(), 4), FPModule::free(z.clone(), 1), FPModule::cyclic(z.clone(), 3)] {
            let (s, k) = sub_stabilize(&FunctorExpr::tensor_left(&a), &x).unwrap();
            assert!(k.is_mono());
            assert!(s.iso(&ext(&tr, &x, 1)), "{s} vs {}", ext(&tr, &x, 1));
        }
    }

    #[test]
    fn naturality_samples() {
        let ring = z4();
        let c2 = FPModule::cyclic(ring.clone(), 2);
        let r = FPModule::free(ring, 1);
        let maps = [
            Morphism::new(&r, &c2, IntMat::from_rows(&[vec![1]])).unwrap(),
            Morphism::new(&c2, &r, IntMat::from_rows(&[vec![2]])).unwrap(),
            mult(&r, 3),
        ];
        let f = FunctorExpr::tensor_left(&c2);
        let r0 = FunctorExpr::derived(&f, 0, Side::Right);
        let s = sample_nat_trans("rho", &f, &r0, |x| rho(&f, x), &maps).unwrap();
        assert!(s.all_natural());
        let l0 = FunctorExpr::derived(&f, 0, Side::Left);
        let s = sample_nat_trans("lambda", &l0, &f, |x| lambda(&f, x), &maps).unwrap();
        assert!(s.all_natural());
        let fs = FunctorExpr::shift_sigma(&FunctorExpr::sub_stab(&f), 1);
        let s = sample_nat_trans("beta", &r0, &fs, |x| beta(&f, x), &maps).unwrap();
        assert!(s.all_natural());
    }
}
