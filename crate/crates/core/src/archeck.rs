//! Duality over ℤ/n, stable Hom groups, the Auslander–Reiten formula and the
//! adjunctions between stabilizations and Hom functors.

use crate::error::{Error, Result};
use crate::exactlin::IntMat;
use crate::fpmod::{
    cokernel_sq, dual, evaluation_map, hom_post, hom_pre, transpose, FPModule, HomModule, Morphism, TensorModule,
};
use crate::funcalc::{quot_stabilize, sub_stabilize, transpose_resolution, FunctorExpr, Side};
use crate::fundseq::SequenceReport;
use crate::resolve::{ext, free_cover, injective_container, HomCochain};

/// `D(M) = Hom(M, ℤ/n)`; the ring is self-injective so this is an exact duality.
pub fn matlis_dual(m: &FPModule) -> Result<FPModule> {
    if !m.ring().quasi_frobenius() {
        return Err(Error::UnsupportedRing(format!("character duality needs a self-injective ring, not {}", m.ring())));
    }
    Ok(dual(m).module().clone())
}

/// `D(f): D(N) → D(M)` for `f: M → N`.
pub fn matlis_dual_map(f: &Morphism) -> Result<Morphism> {
    matlis_dual(f.source())?;
    Ok(hom_pre(&dual(f.target()), &dual(f.source()), f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableMod {
    Projectives,
    Injectives,
}

/// `Hom(A, B)` modulo the maps factoring through a projective (resp. injective).
pub fn stable_hom(a: &FPModule, b: &FPModule, modulo: StableMod) -> Result<FPModule> {
    let hab = HomModule::new(a, b);
    let through = match modulo {
        StableMod::Projectives => {
            let (p, pi) = free_cover(b);
            hom_post(&HomModule::new(a, &p), &hab, &pi)
        }
        StableMod::Injectives => {
            let (i, iota) = injective_container(a)?;
            hom_pre(&HomModule::new(&i, b), &hab, &iota)
        }
    };
    Ok(cokernel_sq(&through).as_module())
}

/// Both sides of an isomorphism claim.
#[derive(Clone, Debug)]
pub struct IsoVerdict {
    pub lhs: FPModule,
    pub rhs: FPModule,
    pub holds: bool,
}

impl IsoVerdict {
    fn new(lhs: FPModule, rhs: FPModule) -> IsoVerdict {
        let holds = lhs.iso(&rhs);
        IsoVerdict { lhs, rhs, holds }
    }
}

/// `D Ext^1(A, B) ≅ Hom(B, D Tr A)` modulo injectives.
pub fn ar_formula_check(a: &FPModule, b: &FPModule) -> Result<IsoVerdict> {
    let lhs = matlis_dual(&ext(a, b, 1))?;
    let tau = matlis_dual(&transpose(a))?;
    Ok(IsoVerdict::new(lhs, stable_hom(b, &tau, StableMod::Injectives)?))
}

/// Right: `D(F̄(B)) ≅ Hom(B, D(A))` modulo injectives, for `F = A ⊗ −`.
/// Left: `Hom(Q, G̲(B)) ≅ Hom(Q ⊗ A, B)` modulo projectives, for `G = Hom(A, −)`
/// and a projective `Q` (the rank-one free module when `q` is `None`).
pub fn stab_adjunction_check(a: &FPModule, b: &FPModule, side: Side, q: Option<&FPModule>) -> Result<IsoVerdict> {
    match side {
        Side::Right => {
            let fbar = sub_stabilize(&FunctorExpr::tensor_left(a), b)?.0;
            Ok(IsoVerdict::new(matlis_dual(&fbar)?, stable_hom(b, &matlis_dual(a)?, StableMod::Injectives)?))
        }
        Side::Left => {
            let q = q.cloned().unwrap_or_else(|| FPModule::free(a.ring().clone(), 1));
            if !q.is_projective() {
                return Err(Error::InvalidInput("Q must be projective".into()));
            }
            let gq = quot_stabilize(&FunctorExpr::hom_cov(a), b)?.0;
            let lhs = HomModule::new(&q, &gq).module().clone();
            let qa = TensorModule::new(&q, a).module().clone();
            Ok(IsoVerdict::new(lhs, stable_hom(&qa, b, StableMod::Projectives)?))
        }
    }
}

/// `0 → Ext^1(Tr A, R) → A → A** → Ext^2(Tr A, R) → 0` with the evaluation
/// map in the middle.
pub fn bidual_check(a: &FPModule) -> Result<SequenceReport> {
    let ring = a.ring().clone();
    let r1 = FPModule::free(ring.clone(), 1);
    let zero = FPModule::zero(ring);
    let (res, iso) = transpose_resolution(a, 3);
    let coch = HomCochain::new(&res, &r1);
    let (e1, e2) = (coch.cohomology(1), coch.cohomology(2));
    // Hom(R^g, R) → A: a row (x_i) goes to Σ x_i e_i.
    let hp1 = &coch.homs[1];
    let cols: Vec<_> = (0..hp1.module().gens()).map(|k| a.reduce(&hp1.generator(k).matrix().row(0))).collect();
    let to_a = Morphism::new(hp1.module(), a, IntMat::from_cols(a.gens(), &cols))?;
    let m1 = e1.descend(&to_a)?;
    let ev = evaluation_map(a);
    let da = dual(a);
    let dda = dual(da.module());
    let to_p2 = hom_pre(&dda, &coch.homs[2], &iso.compose(&res.covers[2]));
    let m3 = e2.factor(&to_p2)?;
    SequenceReport::new(
        "bidual sequence",
        0,
        vec![
            ("0".into(), zero.clone()),
            ("Ext^1(TrA,R)".into(), e1.as_module()),
            ("A".into(), a.clone()),
            ("A**".into(), dda.module().clone()),
            ("Ext^2(TrA,R)".into(), e2.as_module()),
            ("0".into(), zero.clone()),
        ],
        vec![Morphism::zero(&zero, e1.module()), m1, ev, m3, Morphism::zero(e2.module(), &zero)],
        vec![],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolve::tor;
    use crate::ring::RingDesc;

    fn z4() -> RingDesc {
        RingDesc::zmod(4)
    }

    #[test]
    fn duality_examples() {
        let c2 = FPModule::cyclic(z4(), 2);
        assert_eq!(matlis_dual(&c2).unwrap().to_string(), "Z/2");
        let f3 = FPModule::free(z4(), 3);
        assert!(matlis_dual(&f3).unwrap().iso(&f3));
        let m = FPModule::diagonal(z4(), &[2.into()], 2);
        assert!(matlis_dual(&matlis_dual(&m).unwrap()).unwrap().iso(&m));
        assert!(matches!(matlis_dual(&FPModule::free(RingDesc::Integers, 1)), Err(Error::UnsupportedRing(_))));
    }

    #[test]
    fn stable_hom_examples() {
        let z = RingDesc::Integers;
        let (c2, c4) = (FPModule::cyclic(z.clone(), 2), FPModule::cyclic(z.clone(), 4));
        assert_eq!(stable_hom(&c2, &c4, StableMod::Projectives).unwrap().to_string(), "Z/2");
        assert!(stable_hom(&FPModule::free(z, 2), &c4, StableMod::Projectives).unwrap().is_zero());
        let c2 = FPModule::cyclic(z4(), 2);
        assert_eq!(stable_hom(&c2, &c2, StableMod::Injectives).unwrap().to_string(), "Z/2");
        assert!(stable_hom(&c2, &c2, StableMod::Projectives).unwrap().iso(&tor(&transpose(&c2), &c2, 1)));
    }

    #[test]
    fn ar_and_adjunction_examples() {
        let c2 = FPModule::cyclic(z4(), 2);
        let v = ar_formula_check(&c2, &c2).unwrap();
        assert!(v.holds);
        assert_eq!(v.lhs.to_string(), "Z/2");
        let r = FPModule::free(z4(), 1);
        let v = ar_formula_check(&r, &c2).unwrap();
        assert!(v.holds && v.lhs.is_zero());
        let v = ar_formula_check(&c2, &r).unwrap();
        assert!(v.holds && v.rhs.is_zero());

        let v = stab_adjunction_check(&c2, &c2, Side::Right, None).unwrap();
        assert!(v.holds && v.lhs.to_string() == "Z/2");
        assert!(stab_adjunction_check(&r, &c2, Side::Right, None).unwrap().lhs.is_zero());
        let v = stab_adjunction_check(&c2, &r, Side::Left, None).unwrap();
        assert!(v.holds);
        assert!(v.rhs.iso(&stable_hom(&c2, &r, StableMod::Projectives).unwrap()));
    }

    #[test]
    fn bidual_examples() {
        let f = FPModule::free(RingDesc::Integers, 2);
        let rep = bidual_check(&f).unwrap();
        assert!(rep.is_exact() && rep.maps[2].is_iso());
        let c2 = FPModule::cyclic(RingDesc::Integers, 2);
        let rep = bidual_check(&c2).unwrap();
        assert!(rep.is_exact(), "{rep}");
        let got: Vec<String> = rep.nodes.iter().map(|(_, m)| m.to_string()).collect();
        assert_eq!(got, ["0", "Z/2", "Z/2", "0", "0", "0"]);
        let rep = bidual_check(&FPModule::cyclic(z4(), 2)).unwrap();
        assert!(rep.is_exact(), "{rep}");
        assert!(rep.nodes[1].1.is_zero() && rep.nodes[4].1.is_zero());
    }
}
