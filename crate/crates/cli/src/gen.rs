//! Seeded random instances. Every instance index gets its own ChaCha stream
//! off the suite seed, so streams do not depend on evaluation order or on the
//! number of worker threads.

use fundseq_core::fpmod::{kernel, HomModule};
use fundseq_core::uct::Complex;
use fundseq_core::{FPModule, Int, IntMat, Morphism, RingDesc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub max_gens: usize,
    pub max_rels: usize,
    pub max_entry: u64,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { max_gens: 4, max_rels: 4, max_entry: 8 }
    }
}

#[derive(Clone, Debug)]
pub struct InstanceSpec {
    pub seed: u64,
    pub ring: RingDesc,
    pub bounds: Bounds,
    pub count: usize,
}

pub struct Gen {
    rng: ChaCha8Rng,
    ring: RingDesc,
    bounds: Bounds,
}

impl Gen {
    pub fn new(seed: u64, index: u64, ring: RingDesc, bounds: Bounds) -> Gen {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Gen { rng, ring, bounds }
    }

    pub fn for_instance(spec: &InstanceSpec, index: usize) -> Gen {
        Gen::new(spec.seed, index as u64, spec.ring.clone(), spec.bounds.clone())
    }

    pub fn ring(&self) -> &RingDesc {
        &self.ring
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    /// Uniform in `[lo, hi]`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    /// Uniform in `[-max_entry, max_entry]`, reduced into the ring.
    pub fn entry(&mut self) -> Int {
        let e = self.bounds.max_entry as i64;
        self.ring.reduce(&Int::from(self.rng.gen_range(-e..=e)))
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> IntMat {
        IntMat::from_fn(rows, cols, |_, _| self.entry())
    }

    /// A third of the time a uniform presentation; otherwise a diagonal one with
    /// non-unit orders, disguised by a few elementary row and column
    /// operations. Uniform matrices mostly present free or zero modules, which
    /// would leave the torsion cases rarely exercised.
    pub fn module(&mut self) -> FPModule {
        let g = self.range(1, self.bounds.max_gens.max(1));
        if self.bounds.max_entry == 0 || self.rng.gen_bool(1.0 / 3.0) {
            let r = self.range(0, self.bounds.max_rels);
            return FPModule::new(self.ring.clone(), self.matrix(g, r));
        }
        let r = self.range(1, g.min(self.bounds.max_rels.max(1)));
        let orders: Vec<Int> = (0..r).map(|_| self.order()).collect();
        let mut rows = IntMat::diag(g, r, &orders).to_rows();
        for _ in 0..2 {
            let (i, j) = (self.range(0, g - 1), self.range(0, g - 1));
            if i != j {
                let c = Int::from(if self.rng.gen_bool(0.5) { 1 } else { -1 });
                let src = rows[j].clone();
                for (x, y) in rows[i].iter_mut().zip(&src) {
                    *x += &c * y;
                }
            }
            let (i, j) = (self.range(0, r - 1), self.range(0, r - 1));
            if i != j {
                for row in rows.iter_mut() {
                    let y = row[j].clone();
                    row[i] += y;
                }
            }
        }
        let rel = IntMat::from_int_rows(g, r, rows).reduce(&self.ring);
        FPModule::new(self.ring.clone(), rel)
    }

    /// A non-unit diagonal entry: a proper divisor of n (or 0) over ℤ/n,
    /// `0` or `2..=max_entry` over ℤ.
    fn order(&mut self) -> Int {
        match self.ring.modulus() {
            Some(n) => {
                let n: u64 = n.try_into().expect("modulus fits in 64 bits");
                let mut ds: Vec<u64> = (2..n).filter(|d| n % d == 0).collect();
                ds.push(0);
                Int::from(ds[self.range(0, ds.len() - 1)])
            }
            None => {
                let top = (self.bounds.max_entry as usize).max(2);
                match self.range(1, top) {
                    1 => Int::from(0),
                    d => Int::from(d as u64),
                }
            }
        }
    }

    pub fn free_module(&mut self) -> FPModule {
        let g = self.range(1, self.bounds.max_gens.max(1));
        FPModule::free(self.ring.clone(), g)
    }

    /// A nonzero finite module over ℤ (the torsion part of a random module,
    /// or a random cyclic group when that is trivial).
    pub fn finite_module(&mut self) -> FPModule {
        let inv = self.module().invariants();
        if inv.divisors.is_empty() {
            let d = self.range(2, (self.bounds.max_entry as usize).max(2)) as i64;
            return FPModule::cyclic(self.ring.clone(), d);
        }
        FPModule::diagonal(self.ring.clone(), &inv.divisors, 0)
    }

    /// A random element of `Hom(src, tgt)`: a combination of the generators of
    /// the Hom module with coefficients in `[-max_entry, max_entry]`, so every
    /// sample is well defined.
    pub fn morphism(&mut self, src: &FPModule, tgt: &FPModule) -> Morphism {
        let hom = HomModule::new(src, tgt);
        let elem: Vec<Int> = (0..hom.module().gens()).map(|_| self.entry()).collect();
        hom.decode(&elem)
    }

    pub fn composable_pair(&mut self) -> (Morphism, Morphism) {
        let (a, b, c) = (self.module(), self.module(), self.module());
        (self.morphism(&a, &b), self.morphism(&b, &c))
    }

    /// A complex with `len` terms in degrees `0..len`; each differential is a
    /// random map into the kernel of the previous one, so `d∘d = 0` holds by
    /// construction.
    pub fn complex(&mut self, len: usize, free: bool) -> Complex {
        let mut terms = Vec::with_capacity(len);
        for _ in 0..len.max(1) {
            terms.push(if free { self.free_module() } else { self.module() });
        }
        let mut diffs: Vec<Morphism> = Vec::new();
        for k in 1..terms.len() {
            let d = match diffs.last() {
                None => self.morphism(&terms[1], &terms[0]),
                Some(prev) => {
                    let (ker, inc) = kernel(prev);
                    inc.compose(&self.morphism(&terms[k], &ker))
                }
            };
            diffs.push(d);
        }
        Complex::new(self.ring.clone(), 0, terms, diffs).expect("differentials compose to zero by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(ring: RingDesc, max_entry: u64) -> InstanceSpec {
        InstanceSpec { seed: 42, ring, bounds: Bounds { max_gens: 3, max_rels: 3, max_entry }, count: 20 }
    }

    #[test]
    fn zero_entries_give_free_modules_and_zero_maps() {
        let s = spec(RingDesc::Integers, 0);
        for i in 0..s.count {
            let mut g = Gen::for_instance(&s, i);
            let (f, h) = g.composable_pair();
            assert!(f.source().is_free() && f.target().is_free() && h.target().is_free());
            assert!(f.is_zero() && h.is_zero());
        }
    }

    #[test]
    fn streams_are_deterministic() {
        let s = spec(RingDesc::zmod(12), 8);
        let draw = |i| {
            let mut g = Gen::for_instance(&s, i);
            let (f, h) = g.composable_pair();
            (f.source().to_string(), f.matrix().clone(), h.matrix().clone())
        };
        for i in 0..s.count {
            assert_eq!(draw(i), draw(i));
        }
        assert_ne!((0..5).map(draw).collect::<Vec<_>>(), (5..10).map(draw).collect::<Vec<_>>());
    }

    #[test]
    fn random_morphisms_are_well_defined() {
        let s = spec(RingDesc::zmod(4), 8);
        for i in 0..100 {
            let mut g = Gen::for_instance(&s, i);
            let (a, b) = (g.module(), g.module());
            let f = g.morphism(&a, &b);
            assert!(Morphism::new(&a, &b, f.matrix().clone()).is_ok());
        }
    }

    #[test]
    fn random_complexes() {
        for ring in [RingDesc::Integers, RingDesc::zmod(4)] {
            let s = spec(ring, 4);
            for i in 0..10 {
                let mut g = Gen::for_instance(&s, i);
                let c = g.complex(4, i % 2 == 0);
                assert_eq!(c.support(), (0, 3));
                assert!(i % 2 == 1 || c.is_projective());
            }
        }
    }
}
