//! Finitely presented modules, morphisms and the basic constructions on them.
//!
//! A module is the cokernel of its relation matrix (columns are relations).
//! Over `ℤ/n` the relations `n·e_i` are implicit, so every computation runs
//! over `ℤ` on the "effective" relation matrix `[P | n·I]`.
//!
//! Derived modules come out *diagonal*: generators `0..k` carry relations
//! `d_i·e_i` with `d_i` a nonunit (and a proper divisor of `n` over `ℤ/n`),
//! the remaining generators are free. Hom and tensor are computed on such
//! diagonal forms; arbitrary presentations are first normalized through
//! their Smith form.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{invariant_divisors, kernel_basis, snf, IntMat, Invariants, Solver};
use crate::ring::{Int, RingDesc};

#[derive(Clone)]
pub struct FPModule(Arc<ModData>);

struct ModData {
    ring: RingDesc,
    gens: usize,
    rel: IntMat,
    /// Effective order of each generator when the presentation is diagonal
    /// (0 means infinite over ℤ).
    orders: Option<Vec<Int>>,
    normal: OnceLock<Normal>,
    eff: OnceLock<IntMat>,
}

/// Normal form of a non-diagonal module: `to` maps coordinates into the
/// diagonal module, `from` maps its generators back.
struct Normal {
    module: FPModule,
    to: IntMat,
    from: IntMat,
}

fn diagonal_orders(ring: &RingDesc, gens: usize, rel: &IntMat) -> Option<Vec<Int>> {
    let k = rel.cols();
    if k > gens {
        return None;
    }
    let mut orders = Vec::with_capacity(gens);
    for j in 0..k {
        for i in 0..gens {
            let x = &rel[(i, j)];
            if i == j {
                let ok = match ring {
                    RingDesc::Integers => *x > Int::one(),
                    RingDesc::ModN(n) => *x > Int::one() && x < n && n.is_multiple_of(x),
                };
                if !ok {
                    return None;
                }
            } else if !x.is_zero() {
                return None;
            }
        }
        orders.push(rel[(j, j)].clone());
    }
    let free = match ring {
        RingDesc::Integers => Int::zero(),
        RingDesc::ModN(n) => n.clone(),
    };
    orders.extend(std::iter::repeat(free).take(gens - k));
    Some(orders)
}

impl FPModule {
    /// The cokernel of `rel` (a `g × r` matrix) over `ring`. Entries are
    /// reduced into the ring.
    pub fn new(ring: RingDesc, rel: IntMat) -> FPModule {
        let rel = rel.reduce(&ring);
        let gens = rel.rows();
        let orders = diagonal_orders(&ring, gens, &rel);
        FPModule(Arc::new(ModData {
            ring,
            gens,
            rel,
            orders,
            normal: OnceLock::new(),
            eff: OnceLock::new(),
        }))
    }

    /// Diagonal module with the given torsion orders followed by `free` free generators.
    pub fn diagonal(ring: RingDesc, torsion: &[Int], free: usize) -> FPModule {
        let g = torsion.len() + free;
        FPModule::new(ring, IntMat::diag(g, torsion.len(), torsion))
    }

    pub fn free(ring: RingDesc, rank: usize) -> FPModule {
        FPModule::new(ring, IntMat::zeros(rank, 0))
    }

    pub fn zero(ring: RingDesc) -> FPModule {
        FPModule::free(ring, 0)
    }

    pub fn cyclic(ring: RingDesc, d: i64) -> FPModule {
        FPModule::new(ring, IntMat::from_rows(&[vec![d]]))
    }

    pub fn ring(&self) -> &RingDesc {
        &self.0.ring
    }

    pub fn gens(&self) -> usize {
        self.0.gens
    }

    pub fn relations(&self) -> &IntMat {
        &self.0.rel
    }

    /// Relation matrix over ℤ including the implicit `n·I` columns.
    pub fn eff_relations(&self) -> &IntMat {
        self.0.eff.get_or_init(|| match &self.0.ring {
            RingDesc::Integers => self.0.rel.clone(),
            RingDesc::ModN(n) => self.0.rel.hcat(&IntMat::identity(self.0.gens).scale(n)),
        })
    }

    pub fn is_diagonal(&self) -> bool {
        self.0.orders.is_some()
    }

    fn normal(&self) -> &Normal {
        self.0.normal.get_or_init(|| {
            let ring = &self.0.ring;
            let e = self.eff_relations();
            let f = snf(e, &RingDesc::Integers);
            let g = self.0.gens;
            let mut torsion = Vec::new();
            let mut keep_t = Vec::new();
            let mut keep_f = Vec::new();
            for i in 0..g {
                if i < f.rank {
                    let d = &f.s[(i, i)];
                    if d.is_one() {
                        continue;
                    }
                    if ring.modulus() == Some(d) {
                        keep_f.push(i);
                    } else {
                        torsion.push(d.clone());
                        keep_t.push(i);
                    }
                } else {
                    keep_f.push(i);
                }
            }
            let free = keep_f.len();
            keep_t.extend(keep_f);
            let module = FPModule::diagonal(ring.clone(), &torsion, free);
            Normal { module, to: f.u.select_rows(&keep_t), from: f.u_inv.select_cols(&keep_t) }
        })
    }

    /// Effective orders of the generators of the normal form.
    pub fn normal_orders(&self) -> Vec<Int> {
        match &self.0.orders {
            Some(o) => o.clone(),
            None => self.normal().module.0.orders.clone().expect("normal form is diagonal"),
        }
    }

    pub fn normal_module(&self) -> FPModule {
        if self.is_diagonal() {
            self.clone()
        } else {
            self.normal().module.clone()
        }
    }

    /// Matrix taking coordinates of `self` to coordinates of the normal form.
    pub fn to_normal(&self) -> IntMat {
        if self.is_diagonal() {
            IntMat::identity(self.gens())
        } else {
            self.normal().to.clone()
        }
    }

    /// Matrix whose columns are the normal-form generators in coordinates of `self`.
    pub fn from_normal(&self) -> IntMat {
        if self.is_diagonal() {
            IntMat::identity(self.gens())
        } else {
            self.normal().from.clone()
        }
    }

    /// Canonical representative of an element given in generator coordinates.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.gens(), "element has wrong length");
        match &self.0.orders {
            Some(o) => v.iter().zip(o).map(|(x, d)| if d.is_zero() { x.clone() } else { x.mod_floor(d) }).collect(),
            None => {
                let n = self.normal();
                let w = n.module.reduce(&n.to.mul_vec(v));
                let back = n.from.mul_vec(&w);
                match &self.0.ring {
                    RingDesc::Integers => back,
                    RingDesc::ModN(m) => back.iter().map(|x| x.mod_floor(m)).collect(),
                }
            }
        }
    }

    pub fn reduce_cols(&self, m: &IntMat) -> IntMat {
        let cols: Vec<Vec<Int>> = (0..m.cols()).map(|j| self.reduce(&m.col(j))).collect();
        IntMat::from_cols(self.gens(), &cols)
    }

    pub fn is_zero_elem(&self, v: &[Int]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Canonical invariants: torsion divisors in divisibility order and free rank.
    pub fn invariants(&self) -> Invariants {
        let orders = self.normal_orders();
        let torsion: Vec<Int> = match &self.0.ring {
            RingDesc::Integers => orders.iter().filter(|d| !d.is_zero()).cloned().collect(),
            RingDesc::ModN(n) => orders.iter().filter(|d| *d != n).cloned().collect(),
        };
        let free = orders.len() - torsion.len();
        let t = torsion.len();
        let inv = invariant_divisors(&IntMat::diag(t, t, &torsion), &RingDesc::Integers);
        Invariants { divisors: inv.divisors, free_rank: free }
    }

    pub fn is_zero(&self) -> bool {
        self.normal_orders().is_empty()
    }

    pub fn iso(&self, other: &FPModule) -> bool {
        self.ring() == other.ring() && self.invariants() == other.invariants()
    }

    /// Isomorphism after discarding projective summands.
    pub fn stably_iso(&self, other: &FPModule) -> bool {
        self.ring() == other.ring() && self.stable_part() == other.stable_part()
    }

    /// Prime-power decomposition of the non-projective part, sorted.
    fn stable_part(&self) -> Vec<(Int, u32)> {
        let inv = self.invariants();
        let mut out = Vec::new();
        for d in &inv.divisors {
            for (p, e) in factor(d) {
                let full = match &self.0.ring {
                    RingDesc::Integers => false,
                    RingDesc::ModN(n) => multiplicity(n, &p) == e,
                };
                if !full {
                    out.push((p, e));
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_projective(&self) -> bool {
        self.stable_part().is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariants().divisors.is_empty()
    }
}

/// Prime factorization by trial division (module orders here are small).
pub fn factor(d: &Int) -> Vec<(Int, u32)> {
    let mut n = d.clone();
    let mut out = Vec::new();
    let mut p = Int::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > Int::one() {
        out.push((n, 1));
    }
    out
}

fn multiplicity(n: &Int, p: &Int) -> u32 {
    let mut n = n.clone();
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

impl PartialEq for FPModule {
    fn eq(&self, other: &FPModule) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring && self.0.gens == other.0.gens && self.0.rel == other.0.rel)
    }
}

impl Eq for FPModule {}

impl fmt::Display for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = self.invariants();
        let mut parts: Vec<String> = inv.divisors.iter().map(|d| format!("Z/{d}")).collect();
        let free = match self.ring() {
            RingDesc::Integers => "Z".to_string(),
            RingDesc::ModN(n) => format!("Z/{n}"),
        };
        match inv.free_rank {
            0 => {}
            1 => parts.push(free),
            k => parts.push(format!("({free})^{k}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FPModule({} over {}, rel {:?})", self, self.ring(), self.relations())
    }
}

/// A module homomorphism given on generators: column `j` is the image of
/// generator `j` of the source, in target coordinates (kept reduced).
#[derive(Clone)]
pub struct Morphism {
    source: FPModule,
    target: FPModule,
    g: IntMat,
}

impl Morphism {
    /// Checked constructor: fails unless relations of the source map into
    /// relations of the target.
    pub fn new(source: &FPModule, target: &FPModule, g: IntMat) -> Result<Morphism> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch(format!("{} vs {}", source.ring(), target.ring())));
        }
        if g.rows() != target.gens() || g.cols() != source.gens() {
            return Err(Error::DimensionMismatch(format!(
                "generator matrix is {}x{}, expected {}x{}",
                g.rows(),
                g.cols(),
                target.gens(),
                source.gens()
            )));
        }
        let img = g.mul(source.relations());
        for j in 0..img.cols() {
            if !target.is_zero_elem(&img.col(j)) {
                return Err(Error::NotWellDefined(format!("relation {j} of the source is not sent to zero")));
            }
        }
        Ok(Morphism::raw(source, target, g))
    }

    /// Constructor for matrices known to be well defined.
    pub(crate) fn raw(source: &FPModule, target: &FPModule, g: IntMat) -> Morphism {
        debug_assert_eq!((g.rows(), g.cols()), (target.gens(), source.gens()));
        let g = target.reduce_cols(&g);
        Morphism { source: source.clone(), target: target.clone(), g }
    }

    pub fn identity(m: &FPModule) -> Morphism {
        Morphism::raw(m, m, IntMat::identity(m.gens()))
    }

    pub fn zero(source: &FPModule, target: &FPModule) -> Morphism {
        Morphism { source: source.clone(), target: target.clone(), g: IntMat::zeros(target.gens(), source.gens()) }
    }

    pub fn source(&self) -> &FPModule {
        &self.source
    }

    pub fn target(&self) -> &FPModule {
        &self.target
    }

    pub fn matrix(&self) -> &IntMat {
        &self.g
    }

    pub fn ring(&self) -> &RingDesc {
        self.source.ring()
    }

    /// A matrix `X` with `G·P_source = P_target·X`, using effective relations.
    pub fn witness(&self) -> IntMat {
        let lhs = self.g.mul(self.source.eff_relations());
        let solver = Solver::new(self.target.eff_relations(), &RingDesc::Integers);
        let cols: Vec<Vec<Int>> = (0..lhs.cols())
            .map(|j| solver.solve(&lhs.col(j)).expect("morphism is well defined"))
            .collect();
        IntMat::from_cols(self.target.eff_relations().cols(), &cols)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Morphism) -> Morphism {
        assert!(first.target == self.source, "composing morphisms with mismatched endpoints");
        Morphism::raw(&first.source, &self.target, self.g.mul(&first.g))
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert!(self.source == other.source && self.target == other.target);
        Morphism::raw(&self.source, &self.target, self.g.add(&other.g))
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        assert!(self.source == other.source && self.target == other.target);
        Morphism::raw(&self.source, &self.target, self.g.sub(&other.g))
    }

    pub fn scale(&self, k: &Int) -> Morphism {
        Morphism::raw(&self.source, &self.target, self.g.scale(k))
    }

    pub fn neg(&self) -> Morphism {
        self.scale(&-Int::one())
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.target.reduce(&self.g.mul_vec(v))
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero()
    }

    /// Some `x` with `f(x) = v`, if one exists.
    pub fn preimage(&self, v: &[Int]) -> Option<Vec<Int>> {
        let a = self.g.hcat(self.target.eff_relations());
        let x = Solver::new(&a, &RingDesc::Integers).solve(v)?;
        Some(self.source.reduce(&x[..self.source.gens()]))
    }

    pub fn is_mono(&self) -> bool {
        kernel_sq(self).module().is_zero()
    }

    pub fn is_epi(&self) -> bool {
        cokernel_sq(self).module().is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Morphism) -> bool {
        self.source == other.source && self.target == other.target && self.g == other.g
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({} -> {}, {:?})", self.source, self.target, self.g)
    }
}

/// `span(S)/span(T)` inside the ambient generator lattice, with both the
/// relation lattice of the ambient module and `T` added to the denominator.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: FPModule,
    module: FPModule,
    sub_gens: IntMat,
    denom_gens: IntMat,
    lift: IntMat,
    coord: IntMat,
    coord_tail: IntMat,
    basis_div: Vec<Int>,
    to_q: IntMat,
}

impl Subquotient {
    pub fn new(ambient: &FPModule, sub: &IntMat, denom: &IntMat) -> Subquotient {
        let z = RingDesc::Integers;
        let g = ambient.gens();
        let den = denom.hcat(ambient.eff_relations());
        let all = sub.hcat(&den);
        let f1 = snf(&all, &z);
        let k = f1.rank;
        let basis_div = f1.divisors();
        let coord = f1.u.row_range(0, k);
        let coord_tail = f1.u.row_range(k, g);
        let uden = coord.mul(&den);
        let y = IntMat::from_fn(k, den.cols(), |i, j| &uden[(i, j)] / &basis_div[i]);
        let f2 = snf(&y, &z);
        let ring = ambient.ring().clone();
        let mut torsion = Vec::new();
        let mut keep_t = Vec::new();
        let mut keep_f = Vec::new();
        for i in 0..k {
            if i < f2.rank {
                let e = &f2.s[(i, i)];
                if e.is_one() {
                    continue;
                }
                if ring.modulus() == Some(e) {
                    keep_f.push(i);
                } else {
                    torsion.push(e.clone());
                    keep_t.push(i);
                }
            } else {
                keep_f.push(i);
            }
        }
        let free = keep_f.len();
        keep_t.extend(keep_f);
        let module = FPModule::diagonal(ring, &torsion, free);
        let basis = f1.u_inv.col_range(0, k).mul(&IntMat::diag(k, k, &basis_div));
        let mut lift = ambient.reduce_cols(&basis.mul(&f2.u_inv.select_cols(&keep_t)));
        let mut to_q = f2.u.select_rows(&keep_t);
        // Prefer generators whose leading coordinate is positive.
        for c in 0..lift.cols() {
            let col = lift.col(c);
            if col.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                let neg: Vec<Int> = col.iter().map(|x| -x).collect();
                lift.set_col(c, &ambient.reduce(&neg));
                for j in 0..to_q.cols() {
                    to_q[(c, j)] = -&to_q[(c, j)];
                }
            }
        }
        Subquotient {
            ambient: ambient.clone(),
            module,
            sub_gens: sub.clone(),
            denom_gens: denom.clone(),
            lift,
            coord,
            coord_tail,
            basis_div,
            to_q,
        }
    }

    pub fn ambient(&self) -> &FPModule {
        &self.ambient
    }

    pub fn module(&self) -> &FPModule {
        &self.module
    }

    pub fn as_module(&self) -> FPModule {
        self.module.clone()
    }

    pub fn sub_gens(&self) -> &IntMat {
        &self.sub_gens
    }

    pub fn denom_gens(&self) -> &IntMat {
        &self.denom_gens
    }

    /// Ambient coordinates of the generators of the subquotient.
    pub fn lift(&self) -> &IntMat {
        &self.lift
    }

    pub fn encode(&self, q: &[Int]) -> Vec<Int> {
        self.ambient.reduce(&self.lift.mul_vec(q))
    }

    /// Coordinates in the subquotient of an ambient element of the numerator.
    pub fn decode(&self, v: &[Int]) -> Option<Vec<Int>> {
        if self.coord_tail.mul_vec(v).iter().any(|x| !x.is_zero()) {
            return None;
        }
        let y = self.coord.mul_vec(v);
        let mut z = Vec::with_capacity(y.len());
        for (yi, d) in y.iter().zip(&self.basis_div) {
            if !yi.is_multiple_of(d) {
                return None;
            }
            z.push(yi / d);
        }
        Some(self.module.reduce(&self.to_q.mul_vec(&z)))
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.decode(v).is_some()
    }

    fn decode_cols(&self, m: &IntMat) -> Result<IntMat> {
        let mut cols = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            cols.push(self.decode(&m.col(j)).ok_or_else(|| {
                Error::NotWellDefined("element does not lie in the numerator of the subquotient".into())
            })?);
        }
        Ok(IntMat::from_cols(self.module.gens(), &cols))
    }

    /// The inclusion into the ambient module; meaningful when the denominator
    /// is just the ambient relation lattice.
    pub fn inclusion(&self) -> Morphism {
        Morphism::raw(&self.module, &self.ambient, self.lift.clone())
    }

    /// The quotient map from the ambient module; meaningful when the
    /// numerator is everything.
    pub fn projection(&self) -> Morphism {
        let m = self.decode_cols(&IntMat::identity(self.ambient.gens())).expect("numerator is the whole module");
        Morphism::raw(&self.ambient, &self.module, m)
    }

    /// Factors `h: A → ambient` through the subquotient (`h` must land in
    /// the numerator).
    pub fn factor(&self, h: &Morphism) -> Result<Morphism> {
        assert!(h.target() == &self.ambient);
        let m = self.decode_cols(h.matrix())?;
        Ok(Morphism::raw(h.source(), &self.module, m))
    }

    /// Descends `h: ambient → C` to the subquotient (`h` must kill the
    /// denominator).
    pub fn descend(&self, h: &Morphism) -> Result<Morphism> {
        assert!(h.source() == &self.ambient);
        let img = h.matrix().mul(&self.denom_gens);
        for j in 0..img.cols() {
            if !h.target().is_zero_elem(&img.col(j)) {
                return Err(Error::NotWellDefined("map does not vanish on the denominator".into()));
            }
        }
        Ok(Morphism::raw(&self.module, h.target(), h.matrix().mul(&self.lift)))
    }

    /// The map `self → other` induced by `h: ambient → other.ambient`.
    pub fn induced(&self, other: &Subquotient, h: &Morphism) -> Result<Morphism> {
        assert!(h.source() == &self.ambient && h.target() == &other.ambient);
        let m = other.decode_cols(&h.matrix().mul(&self.lift))?;
        Ok(Morphism::raw(&self.module, &other.module, m))
    }
}

/// Lattice of generator coordinates mapped by `f` into the relations of the target.
fn kernel_lattice(f: &Morphism) -> IntMat {
    let a = f.matrix().hcat(f.target().eff_relations());
    let k = kernel_basis(&a, &RingDesc::Integers);
    k.row_range(0, f.source().gens())
}

pub fn kernel_sq(f: &Morphism) -> Subquotient {
    let s = f.source();
    Subquotient::new(s, &kernel_lattice(f), &IntMat::zeros(s.gens(), 0))
}

pub fn cokernel_sq(f: &Morphism) -> Subquotient {
    let t = f.target();
    Subquotient::new(t, &IntMat::identity(t.gens()), f.matrix())
}

pub fn image_sq(f: &Morphism) -> Subquotient {
    let t = f.target();
    Subquotient::new(t, f.matrix(), &IntMat::zeros(t.gens(), 0))
}

/// `ker f` with its inclusion into the source.
pub fn kernel(f: &Morphism) -> (FPModule, Morphism) {
    let sq = kernel_sq(f);
    (sq.as_module(), sq.inclusion())
}

/// `coker f` with the projection from the target.
pub fn cokernel(f: &Morphism) -> (FPModule, Morphism) {
    let sq = cokernel_sq(f);
    (sq.as_module(), sq.projection())
}

/// `f = m ∘ e` with `e` epi onto the image and `m` mono.
pub fn epi_mono_factor(f: &Morphism) -> (Morphism, Morphism) {
    let sq = image_sq(f);
    let e = sq.factor(f).expect("f lands in its image");
    (e, sq.inclusion())
}

/// `ker g / im f` at the middle of `A --f--> B --g--> C`.
pub fn homology_at(f: &Morphism, g: &Morphism) -> Result<Subquotient> {
    if f.target() != g.source() {
        return Err(Error::DimensionMismatch("maps are not composable".into()));
    }
    if !g.compose(f).is_zero() {
        return Err(Error::NotAComplex("g∘f is not zero".into()));
    }
    Ok(Subquotient::new(g.source(), &kernel_lattice(g), f.matrix()))
}

/// Does `im f = ker g`? Requires `g∘f = 0`.
pub fn is_exact_at(f: &Morphism, g: &Morphism) -> Result<bool> {
    if f.target() != g.source() {
        return Err(Error::DimensionMismatch("maps are not composable".into()));
    }
    if !g.compose(f).is_zero() {
        return Err(Error::NotAComplex("g∘f is not zero".into()));
    }
    let k = kernel_lattice(g);
    let solver = Solver::new(&f.matrix().hcat(f.target().eff_relations()), &RingDesc::Integers);
    Ok((0..k.cols()).all(|j| solver.contains(&k.col(j))))
}

/// Does `a ⊆ b` hold for the images of two maps into the same module?
pub fn image_contained(a: &Morphism, b: &Morphism) -> bool {
    assert!(a.target() == b.target());
    let solver = Solver::new(&b.matrix().hcat(b.target().eff_relations()), &RingDesc::Integers);
    (0..a.matrix().cols()).all(|j| solver.contains(&a.matrix().col(j)))
}

/// Effective order of a cyclic summand pairing for Hom: (order, generator value).
fn hom_component(ring: &RingDesc, a: &Int, b: &Int) -> Option<(Int, Int)> {
    let _ = ring;
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Some((Int::zero(), Int::one())),
        (true, false) => Some((b.clone(), Int::one())),
        (false, true) => None,
        (false, false) => {
            let g = a.gcd(b);
            let v = b / &g;
            Some((g, v))
        }
    }
}

fn is_free_order(ring: &RingDesc, c: &Int) -> bool {
    match ring {
        RingDesc::Integers => c.is_zero(),
        RingDesc::ModN(n) => c == n,
    }
}

/// Splits components into torsion-first order and builds the diagonal module.
fn diagonal_from_orders(ring: &RingDesc, orders: &[Int]) -> (FPModule, Vec<usize>) {
    let mut idx: Vec<usize> = (0..orders.len()).filter(|&k| !is_free_order(ring, &orders[k])).collect();
    let torsion: Vec<Int> = idx.iter().map(|&k| orders[k].clone()).collect();
    let free: Vec<usize> = (0..orders.len()).filter(|&k| is_free_order(ring, &orders[k])).collect();
    let nfree = free.len();
    idx.extend(free);
    (FPModule::diagonal(ring.clone(), &torsion, nfree), idx)
}

/// `Hom(M, N)` with encode/decode between elements and morphisms.
#[derive(Clone, Debug)]
pub struct HomModule {
    source: FPModule,
    target: FPModule,
    module: FPModule,
    /// Per generator: (normal target index, normal source index, matrix entry).
    comps: Vec<(usize, usize, Int)>,
}

impl HomModule {
    pub fn new(source: &FPModule, target: &FPModule) -> HomModule {
        assert_eq!(source.ring(), target.ring(), "Hom across different rings");
        let ring = source.ring();
        let a = source.normal_orders();
        let b = target.normal_orders();
        let mut raw = Vec::new();
        let mut orders = Vec::new();
        for (j, bj) in b.iter().enumerate() {
            for (i, ai) in a.iter().enumerate() {
                if let Some((c, v)) = hom_component(ring, ai, bj) {
                    if !c.is_one() {
                        raw.push((j, i, v));
                        orders.push(c);
                    }
                }
            }
        }
        let (module, idx) = diagonal_from_orders(ring, &orders);
        let comps = idx.iter().map(|&k| raw[k].clone()).collect();
        HomModule { source: source.clone(), target: target.clone(), module, comps }
    }

    pub fn module(&self) -> &FPModule {
        &self.module
    }

    pub fn source(&self) -> &FPModule {
        &self.source
    }

    pub fn target(&self) -> &FPModule {
        &self.target
    }

    pub fn decode(&self, elem: &[Int]) -> Morphism {
        let gs = self.source.normal_orders().len();
        let gt = self.target.normal_orders().len();
        let mut f = IntMat::zeros(gt, gs);
        for (x, (j, i, v)) in elem.iter().zip(&self.comps) {
            f[(*j, *i)] += x * v;
        }
        let g = self.target.from_normal().mul(&f).mul(&self.source.to_normal());
        Morphism::raw(&self.source, &self.target, g)
    }

    pub fn encode(&self, f: &Morphism) -> Vec<Int> {
        assert!(f.source() == &self.source && f.target() == &self.target, "encoding a morphism with wrong endpoints");
        let fm = self.target.to_normal().mul(f.matrix()).mul(&self.source.from_normal());
        let orders = self.target.normal_orders();
        let elem: Vec<Int> = self
            .comps
            .iter()
            .map(|(j, i, v)| {
                let d = &orders[*j];
                let x = if d.is_zero() { fm[(*j, *i)].clone() } else { fm[(*j, *i)].mod_floor(d) };
                debug_assert!(x.is_multiple_of(v));
                x / v
            })
            .collect();
        self.module.reduce(&elem)
    }

    pub fn generator(&self, k: usize) -> Morphism {
        let mut e = vec![Int::zero(); self.module.gens()];
        e[k] = Int::one();
        self.decode(&e)
    }
}

pub fn hom_module(m: &FPModule, n: &FPModule) -> HomModule {
    HomModule::new(m, n)
}

/// `Hom(A, φ): Hom(A, X) → Hom(A, Y)`.
pub fn hom_post(h_src: &HomModule, h_tgt: &HomModule, phi: &Morphism) -> Morphism {
    let cols: Vec<Vec<Int>> =
        (0..h_src.module.gens()).map(|k| h_tgt.encode(&phi.compose(&h_src.generator(k)))).collect();
    Morphism::raw(&h_src.module, &h_tgt.module, IntMat::from_cols(h_tgt.module.gens(), &cols))
}

/// `Hom(φ, B): Hom(Y, B) → Hom(X, B)` for `φ: X → Y`.
pub fn hom_pre(h_src: &HomModule, h_tgt: &HomModule, phi: &Morphism) -> Morphism {
    let cols: Vec<Vec<Int>> =
        (0..h_src.module.gens()).map(|k| h_tgt.encode(&h_src.generator(k).compose(phi))).collect();
    Morphism::raw(&h_src.module, &h_tgt.module, IntMat::from_cols(h_tgt.module.gens(), &cols))
}

/// `M ⊗ N` computed on normal forms, with a pure-tensor encoder.
#[derive(Clone, Debug)]
pub struct TensorModule {
    left: FPModule,
    right: FPModule,
    module: FPModule,
    comps: Vec<(usize, usize)>,
}

impl TensorModule {
    pub fn new(left: &FPModule, right: &FPModule) -> TensorModule {
        assert_eq!(left.ring(), right.ring(), "tensor across different rings");
        let ring = left.ring();
        let a = left.normal_orders();
        let b = right.normal_orders();
        let mut raw = Vec::new();
        let mut orders = Vec::new();
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                let c = ai.gcd(bj);
                if !c.is_one() {
                    raw.push((i, j));
                    orders.push(c);
                }
            }
        }
        let (module, idx) = diagonal_from_orders(ring, &orders);
        let comps = idx.iter().map(|&k| raw[k]).collect();
        TensorModule { left: left.clone(), right: right.clone(), module, comps }
    }

    pub fn module(&self) -> &FPModule {
        &self.module
    }

    pub fn left(&self) -> &FPModule {
        &self.left
    }

    pub fn right(&self) -> &FPModule {
        &self.right
    }

    /// Coordinates of `x ⊗ y`.
    pub fn pure(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        let xn = self.left.to_normal().mul_vec(x);
        let yn = self.right.to_normal().mul_vec(y);
        let v: Vec<Int> = self.comps.iter().map(|(i, j)| &xn[*i] * &yn[*j]).collect();
        self.module.reduce(&v)
    }

    /// Left and right factor (in original coordinates) of generator `k`.
    pub fn factors(&self, k: usize) -> (Vec<Int>, Vec<Int>) {
        let (i, j) = self.comps[k];
        (self.left.from_normal().col(i), self.right.from_normal().col(j))
    }
}

pub fn tensor_module(m: &FPModule, n: &FPModule) -> TensorModule {
    TensorModule::new(m, n)
}

/// `f ⊗ g` between tensor modules.
pub fn tensor_map(src: &TensorModule, tgt: &TensorModule, f: &Morphism, g: &Morphism) -> Morphism {
    assert!(f.source() == &src.left && g.source() == &src.right);
    assert!(f.target() == &tgt.left && g.target() == &tgt.right);
    let cols: Vec<Vec<Int>> = (0..src.module.gens())
        .map(|k| {
            let (x, y) = src.factors(k);
            tgt.pure(&f.apply(&x), &g.apply(&y))
        })
        .collect();
    Morphism::raw(&src.module, &tgt.module, IntMat::from_cols(tgt.module.gens(), &cols))
}

/// The raw tensor presentation: generators `e_i ⊗ f_j` (index `i·g_N + j`)
/// and relations `P_M ⊗ id`, `id ⊗ P_N`.
pub fn tensor_presentation(m: &FPModule, n: &FPModule) -> FPModule {
    let a = m.relations().kron(&IntMat::identity(n.gens()));
    let b = IntMat::identity(m.gens()).kron(n.relations());
    FPModule::new(m.ring().clone(), a.hcat(&b))
}

/// Hom computed directly as a subquotient of `N^{g_M}`, independent of normal forms.
pub fn hom_presentation(m: &FPModule, n: &FPModule) -> FPModule {
    let z = RingDesc::Integers;
    let (gm, gn) = (m.gens(), n.gens());
    let pm = m.eff_relations();
    let rn = n.eff_relations();
    // X·P_M = R_N·W in the unknowns vec(X) (column-major) and vec(W).
    let lhs = pm.transpose().kron(&IntMat::identity(gn));
    let rhs = IntMat::identity(pm.cols()).kron(rn);
    let cycles = kernel_basis(&lhs.hcat(&rhs.scale(&-Int::one())), &z).row_range(0, gn * gm);
    let den = IntMat::identity(gm).kron(rn);
    let sq = Subquotient::new(&FPModule::free(z, gn * gm), &cycles, &den);
    let inv = sq.module().invariants();
    let ring = m.ring().clone();
    let full = inv.divisors.iter().filter(|d| ring.modulus() == Some(*d)).count();
    let torsion: Vec<Int> = inv.divisors.iter().filter(|d| ring.modulus() != Some(*d)).cloned().collect();
    FPModule::diagonal(ring, &torsion, inv.free_rank + full)
}

pub fn free_module(ring: &RingDesc, rank: usize) -> FPModule {
    FPModule::free(ring.clone(), rank)
}

/// `M* = Hom(M, R)`.
pub fn dual(m: &FPModule) -> HomModule {
    HomModule::new(m, &FPModule::free(m.ring().clone(), 1))
}

/// The evaluation map `M → M**`.
pub fn evaluation_map(m: &FPModule) -> Morphism {
    let d = dual(m);
    let dd = dual(d.module());
    let r1 = FPModule::free(m.ring().clone(), 1);
    let gd = d.module().gens();
    let funcs: Vec<Morphism> = (0..gd).map(|k| d.generator(k)).collect();
    let cols: Vec<Vec<Int>> = (0..m.gens())
        .map(|i| {
            let row: Vec<Vec<Int>> = funcs.iter().map(|phi| vec![phi.matrix()[(0, i)].clone()]).collect();
            let ev = Morphism::raw(d.module(), &r1, IntMat::from_cols(1, &row));
            dd.encode(&ev)
        })
        .collect();
    Morphism::raw(m, dd.module(), IntMat::from_cols(dd.module().gens(), &cols))
}

/// `Tr M = coker(Pᵀ)` for the stored presentation.
pub fn transpose(m: &FPModule) -> FPModule {
    FPModule::new(m.ring().clone(), m.relations().transpose())
}

/// `M ⊕ N` with injections and projections.
pub struct DirectSum {
    pub module: FPModule,
    pub inj: [Morphism; 2],
    pub proj: [Morphism; 2],
}

pub fn direct_sum(m: &FPModule, n: &FPModule) -> DirectSum {
    let s = FPModule::new(m.ring().clone(), m.relations().block_diag(n.relations()));
    let (gm, gn) = (m.gens(), n.gens());
    let i1 = IntMat::identity(gm).vcat(&IntMat::zeros(gn, gm));
    let i2 = IntMat::zeros(gm, gn).vcat(&IntMat::identity(gn));
    DirectSum {
        inj: [Morphism::raw(m, &s, i1.clone()), Morphism::raw(n, &s, i2.clone())],
        proj: [Morphism::raw(&s, m, i1.transpose()), Morphism::raw(&s, n, i2.transpose())],
        module: s,
    }
}

/// `f ⊕ g` between direct sums.
pub fn direct_sum_map(f: &Morphism, g: &Morphism) -> Morphism {
    let s = direct_sum(f.source(), g.source()).module;
    let t = direct_sum(f.target(), g.target()).module;
    Morphism::raw(&s, &t, f.matrix().block_diag(g.matrix()))
}

/// Searches for `r: Y → Z` with `r ∘ g = h` (`g: X → Y`, `h: X → Z`).
pub fn factor_through_left(g: &Morphism, h: &Morphism) -> Option<Morphism> {
    assert!(g.source() == h.source());
    let (y, zmod) = (g.target(), h.target());
    let (yn, zn) = (y.normal_module(), zmod.normal_module());
    // Work in normal coordinates: g' = to_Y g, h' = to_Z h.
    let gp = y.to_normal().mul(g.matrix());
    let hp = zmod.to_normal().mul(h.matrix());
    let (gy, gz, gx) = (yn.gens(), zn.gens(), g.source().gens());
    let ry = yn.eff_relations();
    let rz = zn.eff_relations();
    // Unknowns: vec R (gz·gy), W (rz.cols × ry.cols), V (rz.cols × gx).
    let nr = gz * gy;
    let nw = rz.cols() * ry.cols();
    let nv = rz.cols() * gx;
    let rows1 = gz * ry.cols();
    let rows2 = gz * gx;
    let mut sys = IntMat::zeros(rows1 + rows2, nr + nw + nv);
    let a1 = ry.transpose().kron(&IntMat::identity(gz));
    let b1 = IntMat::identity(ry.cols()).kron(rz);
    let a2 = gp.transpose().kron(&IntMat::identity(gz));
    let b2 = IntMat::identity(gx).kron(rz);
    for i in 0..rows1 {
        for j in 0..nr {
            sys[(i, j)] = a1[(i, j)].clone();
        }
        for j in 0..nw {
            sys[(i, nr + j)] = -&b1[(i, j)];
        }
    }
    for i in 0..rows2 {
        for j in 0..nr {
            sys[(rows1 + i, j)] = a2[(i, j)].clone();
        }
        for j in 0..nv {
            sys[(rows1 + i, nr + nw + j)] = -&b2[(i, j)];
        }
    }
    let mut rhs = vec![Int::zero(); rows1 + rows2];
    for c in 0..gx {
        for r in 0..gz {
            rhs[rows1 + c * gz + r] = hp[(r, c)].clone();
        }
    }
    let sol = Solver::new(&sys, &RingDesc::Integers).solve(&rhs)?;
    let rmat = IntMat::from_fn(gz, gy, |r, c| sol[c * gz + r].clone());
    let full = zmod.from_normal().mul(&rmat).mul(&y.to_normal());
    Some(Morphism::raw(y, zmod, full))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingDesc {
        RingDesc::Integers
    }

    fn cyc(r: &RingDesc, d: i64) -> FPModule {
        FPModule::cyclic(r.clone(), d)
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn mul(m: &FPModule, n: &FPModule, k: i64) -> Morphism {
        Morphism::new(m, n, IntMat::from_rows(&[vec![k]])).unwrap()
    }

    #[test]
    fn well_definedness() {
        let r = z();
        let (a, b) = (cyc(&r, 2), cyc(&r, 4));
        assert!(matches!(Morphism::new(&a, &b, IntMat::from_rows(&[vec![1]])), Err(Error::NotWellDefined(_))));
        let f = Morphism::new(&a, &b, IntMat::from_rows(&[vec![2]])).unwrap();
        let w = f.witness();
        assert_eq!(f.matrix().mul(a.eff_relations()), b.eff_relations().mul(&w));
    }

    #[test]
    fn kernel_cokernel_examples() {
        let r = z();
        let zz = FPModule::free(r.clone(), 1);
        let two = mul(&zz, &zz, 2);
        assert!(kernel(&two).0.is_zero());
        assert_eq!(cokernel(&two).0.invariants().divisors, ints(&[2]));
        let r4 = RingDesc::zmod(4);
        let m = FPModule::free(r4.clone(), 1);
        let f = mul(&m, &m, 2);
        let (k, inc) = kernel(&f);
        assert_eq!(k.invariants().divisors, ints(&[2]));
        assert!(f.compose(&inc).is_zero());
        assert_eq!(inc.apply(&ints(&[1])), ints(&[2]));
    }

    #[test]
    fn epi_mono_examples() {
        let r = z();
        let zz = FPModule::free(r.clone(), 1);
        let (e, m) = epi_mono_factor(&mul(&zz, &zz, 2));
        assert!(e.is_epi() && m.is_mono());
        assert_eq!(m.compose(&e), mul(&zz, &zz, 2));
        assert!(e.target().iso(&zz));
        let r4 = RingDesc::zmod(4);
        let m4 = FPModule::free(r4.clone(), 1);
        let (e, _) = epi_mono_factor(&mul(&m4, &m4, 2));
        assert_eq!(e.target().invariants().divisors, ints(&[2]));
        let (e, _) = epi_mono_factor(&Morphism::zero(&zz, &zz));
        assert!(e.target().is_zero());
    }

    #[test]
    fn invariants_and_stable_iso() {
        let r = z();
        let m = FPModule::new(r.clone(), IntMat::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(m.invariants(), Invariants { divisors: ints(&[6]), free_rank: 0 });
        assert!(m.iso(&cyc(&r, 6)));
        let r4 = RingDesc::zmod(4);
        let a = FPModule::diagonal(r4.clone(), &ints(&[2]), 1);
        assert!(a.stably_iso(&cyc(&r4, 2)));
        assert!(!a.iso(&cyc(&r4, 2)));
        let r12 = RingDesc::zmod(12);
        assert!(cyc(&r12, 4).is_projective());
        assert!(!cyc(&r12, 2).is_projective());
    }

    #[test]
    fn hom_examples() {
        let r = z();
        assert_eq!(hom_module(&cyc(&r, 2), &cyc(&r, 4)).module().invariants().divisors, ints(&[2]));
        assert!(hom_module(&cyc(&r, 2), &cyc(&r, 3)).module().is_zero());
        let m = FPModule::new(r.clone(), IntMat::from_rows(&[vec![2, 1], vec![4, 7]]));
        assert!(hom_module(&FPModule::free(r.clone(), 1), &m).module().iso(&m));
        let h = hom_module(&cyc(&r, 2), &cyc(&r, 4));
        let f = h.generator(0);
        assert_eq!(f.matrix(), &IntMat::from_rows(&[vec![2]]));
        assert_eq!(h.encode(&f), ints(&[1]));
    }

    #[test]
    fn tensor_examples() {
        let r = z();
        assert!(tensor_module(&cyc(&r, 2), &cyc(&r, 3)).module().is_zero());
        assert_eq!(tensor_module(&cyc(&r, 2), &cyc(&r, 4)).module().invariants().divisors, ints(&[2]));
        let m = FPModule::new(r.clone(), IntMat::from_rows(&[vec![6, 4]]));
        assert!(tensor_module(&FPModule::free(r.clone(), 1), &m).module().iso(&m));
    }

    #[test]
    fn dual_and_transpose_examples() {
        let r = z();
        assert!(dual(&cyc(&r, 2)).module().is_zero());
        assert!(evaluation_map(&FPModule::free(r.clone(), 2)).is_iso());
        let r4 = RingDesc::zmod(4);
        assert_eq!(dual(&cyc(&r4, 2)).module().invariants().divisors, ints(&[2]));
        assert_eq!(transpose(&cyc(&r, 2)).invariants().divisors, ints(&[2]));
        assert!(transpose(&FPModule::free(r.clone(), 3)).is_zero());
        assert_eq!(transpose(&cyc(&r4, 2)).invariants().divisors, ints(&[2]));
    }

    #[test]
    fn homology_examples() {
        let r = z();
        let zz = FPModule::free(r.clone(), 1);
        let zero = FPModule::zero(r.clone());
        assert!(homology_at(&Morphism::zero(&zero, &zz), &mul(&zz, &zz, 2)).unwrap().module().is_zero());
        let h = homology_at(&mul(&zz, &zz, 2), &Morphism::zero(&zz, &zero)).unwrap();
        assert_eq!(h.module().invariants().divisors, ints(&[2]));
        let h = homology_at(&mul(&zz, &zz, 4), &mul(&zz, &zz, 0)).unwrap();
        assert_eq!(h.module().invariants().divisors, ints(&[4]));
        assert!(matches!(homology_at(&mul(&zz, &zz, 2), &mul(&zz, &zz, 2)), Err(Error::NotAComplex(_))));
    }

    #[test]
    fn exactness_examples() {
        let r = z();
        let zz = FPModule::free(r.clone(), 1);
        let (_, p) = cokernel(&mul(&zz, &zz, 2));
        assert!(is_exact_at(&mul(&zz, &zz, 2), &p).unwrap());
        let zero = FPModule::zero(r.clone());
        assert!(!is_exact_at(&Morphism::zero(&zero, &zz), &p).unwrap());
    }

    #[test]
    fn factor_through_left_retraction() {
        let r = z();
        let zz = FPModule::free(r.clone(), 1);
        assert!(factor_through_left(&mul(&zz, &zz, 2), &Morphism::identity(&zz)).is_none());
        let s = direct_sum(&zz, &cyc(&r, 2));
        let rr = factor_through_left(&s.inj[0], &Morphism::identity(&zz)).unwrap();
        assert_eq!(rr.compose(&s.inj[0]), Morphism::identity(&zz));
    }
}
