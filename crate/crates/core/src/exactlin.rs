//! Exact integer and residue-ring matrix algebra.
//!
//! Everything above this module reduces to [`snf`] with transforms: kernels,
//! membership and linear solving all read off the Smith form.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{ext_gcd, Int, RingDesc};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Int) -> IntMat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMat { rows, cols, data }
    }

    /// Builds a matrix from small integer rows; all rows must have equal length.
    pub fn from_rows<T: Into<Int> + Copy>(rows: &[Vec<T>]) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMat::from_fn(r, c, |i, j| rows[i][j].into())
    }

    pub fn from_int_rows(rows: usize, cols: usize, entries: Vec<Vec<Int>>) -> IntMat {
        assert_eq!(entries.len(), rows);
        let mut data = Vec::with_capacity(rows * cols);
        for row in entries {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        IntMat { rows, cols, data }
    }

    /// Column vectors placed side by side, each of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<Int>]) -> IntMat {
        IntMat::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn diag(rows: usize, cols: usize, d: &[Int]) -> IntMat {
        let mut m = IntMat::zeros(rows, cols);
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[Int]) {
        for (i, x) in v.iter().enumerate() {
            self[(i, j)] = x.clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Int::zero();
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += &self[(i, k)] * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: &Int) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }

    pub fn map(&self, f: impl Fn(&Int) -> Int) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn hcat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        IntMat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vcat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols, "vcat column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(&self, other: &IntMat) -> IntMat {
        IntMat::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self[(i, j)].clone(),
                (false, false) => other[(i - self.rows, j - self.cols)].clone(),
                _ => Int::zero(),
            }
        })
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMat {
        IntMat::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMat {
        IntMat::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn row_range(&self, lo: usize, hi: usize) -> IntMat {
        IntMat::from_fn(hi - lo, self.cols, |i, j| self[(lo + i, j)].clone())
    }

    pub fn col_range(&self, lo: usize, hi: usize) -> IntMat {
        IntMat::from_fn(self.rows, hi - lo, |i, j| self[(i, lo + j)].clone())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &IntMat) -> IntMat {
        IntMat::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            &self[(i / other.rows, j / other.cols)] * &other[(i % other.rows, j % other.cols)]
        })
    }

    pub fn reduce(&self, ring: &RingDesc) -> IntMat {
        match ring {
            RingDesc::Integers => self.clone(),
            RingDesc::ModN(_) => self.map(|x| ring.reduce(x)),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q · row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &Int, ring: &RingDesc) {
        for j in 0..self.cols {
            let s = &self[(src, j)];
            if !s.is_zero() {
                let v = &self[(dst, j)] + q * s;
                self[(dst, j)] = ring.reduce(&v);
            }
        }
    }

    /// col[dst] += q · col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &Int, ring: &RingDesc) {
        for i in 0..self.rows {
            let s = &self[(i, src)];
            if !s.is_zero() {
                let v = &self[(i, dst)] + q * s;
                self[(i, dst)] = ring.reduce(&v);
            }
        }
    }

    /// (row a, row b) ← (p·a + q·b, r·a + s·b)
    fn combine_rows(&mut self, a: usize, b: usize, c: [&Int; 4], ring: &RingDesc) {
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)].clone(), self[(b, j)].clone());
            self[(a, j)] = ring.reduce(&(c[0] * &x + c[1] * &y));
            self[(b, j)] = ring.reduce(&(c[2] * &x + c[3] * &y));
        }
    }

    /// (col a, col b) ← (p·a + q·b, r·a + s·b)
    fn combine_cols(&mut self, a: usize, b: usize, c: [&Int; 4], ring: &RingDesc) {
        for i in 0..self.rows {
            let (x, y) = (self[(i, a)].clone(), self[(i, b)].clone());
            self[(i, a)] = ring.reduce(&(c[0] * &x + c[1] * &y));
            self[(i, b)] = ring.reduce(&(c[2] * &x + c[3] * &y));
        }
    }

    fn scale_row(&mut self, i: usize, u: &Int, ring: &RingDesc) {
        for j in 0..self.cols {
            let v = &self[(i, j)] * u;
            self[(i, j)] = ring.reduce(&v);
        }
    }

    fn scale_col(&mut self, j: usize, u: &Int, ring: &RingDesc) {
        for i in 0..self.rows {
            let v = &self[(i, j)] * u;
            self[(i, j)] = ring.reduce(&v);
        }
    }
}

impl Index<(usize, usize)> for IntMat {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

/// Smith normal form `U·A·V = S` together with `U⁻¹`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMat,
    pub u_inv: IntMat,
    pub s: IntMat,
    pub v: IntMat,
    pub rank: usize,
}

impl Snf {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn divisors(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Transformation state carried through the elimination.
struct Elim<'a> {
    ring: &'a RingDesc,
    a: IntMat,
    u: IntMat,
    ui: IntMat,
    v: IntMat,
}

impl Elim<'_> {
    fn norm(&self, x: &Int) -> Int {
        match self.ring {
            RingDesc::Integers => x.abs(),
            RingDesc::ModN(n) => x.gcd(n),
        }
    }

    fn divides(&self, p: &Int, b: &Int) -> bool {
        b.is_multiple_of(p)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.ui.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &Int) {
        self.a.add_row(dst, src, q, self.ring);
        self.u.add_row(dst, src, q, self.ring);
        self.ui.add_col(src, dst, &-q, self.ring);
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &Int) {
        self.a.add_col(dst, src, q, self.ring);
        self.v.add_col(dst, src, q, self.ring);
    }

    /// Row transform with determinant one: (a, b) ← (p·a + q·b, r·a + s·b).
    fn combine_rows(&mut self, a: usize, b: usize, p: &Int, q: &Int, r: &Int, s: &Int) {
        self.a.combine_rows(a, b, [p, q, r, s], self.ring);
        self.u.combine_rows(a, b, [p, q, r, s], self.ring);
        // U⁻¹ ← U⁻¹·M⁻¹ with M⁻¹ = [[s, −q], [−r, p]]
        let (nq, nr) = (-q, -r);
        self.ui.combine_cols(a, b, [s, &nr, &nq, p], self.ring);
    }

    fn combine_cols(&mut self, a: usize, b: usize, p: &Int, q: &Int, r: &Int, s: &Int) {
        self.a.combine_cols(a, b, [p, q, r, s], self.ring);
        self.v.combine_cols(a, b, [p, q, r, s], self.ring);
    }

    /// Makes the pivot the canonical associate: |p| over ℤ, gcd(p, n) over ℤ/n.
    fn normalize_pivot(&mut self, t: usize) {
        let p = self.a[(t, t)].clone();
        let unit = match self.ring {
            RingDesc::Integers => {
                if p.is_negative() {
                    Some(-Int::one())
                } else {
                    None
                }
            }
            RingDesc::ModN(n) => {
                let g = p.gcd(n);
                if g == p {
                    None
                } else {
                    Some(unit_to_gcd(&p, n))
                }
            }
        };
        if let Some(w) = unit {
            let winv = self.ring.unit_inverse(&w);
            self.a.scale_row(t, &w, self.ring);
            self.u.scale_row(t, &w, self.ring);
            self.ui.scale_col(t, &winv, self.ring);
        }
    }

    fn pivot_search(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(Int, usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let nx = self.norm(x);
                if best.as_ref().map_or(true, |(b, _, _)| nx < *b) {
                    best = Some((nx, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Clears row and column `t` outside the pivot; returns once both are zero.
    fn clear(&mut self, t: usize) {
        loop {
            let mut dirty = false;
            for i in t + 1..self.a.rows() {
                let b = self.a[(i, t)].clone();
                if b.is_zero() {
                    continue;
                }
                let p = self.a[(t, t)].clone();
                if self.divides(&p, &b) {
                    self.add_row(i, t, &-(b / &p));
                } else {
                    let (h, x, y) = ext_gcd(&p, &b);
                    let r = -(&b / &h);
                    let s = &p / &h;
                    self.combine_rows(t, i, &x, &y, &r, &s);
                    self.normalize_pivot(t);
                    dirty = true;
                }
            }
            for j in t + 1..self.a.cols() {
                let b = self.a[(t, j)].clone();
                if b.is_zero() {
                    continue;
                }
                let p = self.a[(t, t)].clone();
                if self.divides(&p, &b) {
                    self.add_col(j, t, &-(b / &p));
                } else {
                    let (h, x, y) = ext_gcd(&p, &b);
                    let r = -(&b / &h);
                    let s = &p / &h;
                    self.combine_cols(t, j, &x, &y, &r, &s);
                    self.normalize_pivot(t);
                    dirty = true;
                }
            }
            if !dirty {
                return;
            }
        }
    }
}

/// A unit w with p·w ≡ gcd(p, n) (mod n).
fn unit_to_gcd(p: &Int, n: &Int) -> Int {
    let g = p.gcd(n);
    let (pp, nn) = (p / &g, n / &g);
    let w0 = if nn.is_one() { Int::zero() } else { ext_gcd(&pp.mod_floor(&nn), &nn).1.mod_floor(&nn) };
    let mut w = w0;
    while !w.gcd(n).is_one() {
        w += &nn;
    }
    w
}

/// Smith normal form over the given ring, with minimal-norm pivoting.
pub fn snf(a: &IntMat, ring: &RingDesc) -> Snf {
    let (r, c) = (a.rows(), a.cols());
    let mut e = Elim {
        ring,
        a: a.reduce(ring),
        u: IntMat::identity(r),
        ui: IntMat::identity(r),
        v: IntMat::identity(c),
    };
    let mut rank = 0;
    for t in 0..r.min(c) {
        let Some((pi, pj)) = e.pivot_search(t) else { break };
        e.swap_rows(t, pi);
        e.swap_cols(t, pj);
        e.normalize_pivot(t);
        loop {
            e.clear(t);
            let p = e.a[(t, t)].clone();
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !e.divides(&p, &e.a[(i, j)]));
            match bad {
                Some((i, _)) => e.add_row(t, i, &Int::one()),
                None => break,
            }
        }
        rank = t + 1;
    }
    Snf { u: e.u, u_inv: e.ui, s: e.a, v: e.v, rank }
}

/// Generators of `{x : A·x = 0}`; over ℤ a lattice basis.
pub fn kernel_basis(a: &IntMat, ring: &RingDesc) -> IntMat {
    let f = snf(a, ring);
    kernel_from_snf(&f, a.cols(), ring)
}

fn kernel_from_snf(f: &Snf, cols: usize, ring: &RingDesc) -> IntMat {
    let mut out: Vec<Vec<Int>> = Vec::new();
    if let RingDesc::ModN(n) = ring {
        for i in 0..f.rank {
            let d = &f.s[(i, i)];
            if !d.is_one() {
                let k = n / d;
                let col: Vec<Int> = f.v.col(i).iter().map(|x| ring.reduce(&(x * &k))).collect();
                if col.iter().any(|x| !x.is_zero()) {
                    out.push(col);
                }
            }
        }
    }
    for j in f.rank..cols {
        out.push(f.v.col(j));
    }
    IntMat::from_cols(cols, &out)
}

/// Repeated linear solving against one fixed matrix.
#[derive(Clone, Debug)]
pub struct Solver {
    ring: RingDesc,
    snf: Snf,
    rows: usize,
    cols: usize,
}

impl Solver {
    pub fn new(a: &IntMat, ring: &RingDesc) -> Solver {
        Solver { ring: ring.clone(), snf: snf(a, ring), rows: a.rows(), cols: a.cols() }
    }

    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let y: Vec<Int> = self.snf.u.mul_vec(b).iter().map(|x| self.ring.reduce(x)).collect();
        let mut z = vec![Int::zero(); self.cols];
        for (i, yi) in y.iter().enumerate() {
            if i < self.snf.rank {
                let d = &self.snf.s[(i, i)];
                if !yi.is_multiple_of(d) {
                    return None;
                }
                z[i] = yi / d;
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&z).iter().map(|x| self.ring.reduce(x)).collect())
    }

    pub fn contains(&self, b: &[Int]) -> bool {
        self.solve(b).is_some()
    }

    pub fn kernel(&self) -> IntMat {
        kernel_from_snf(&self.snf, self.cols, &self.ring)
    }

    pub fn snf(&self) -> &Snf {
        &self.snf
    }
}

/// A particular solution of `A·x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &IntMat, b: &[Int], ring: &RingDesc) -> Result<Option<Vec<Int>>> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has length {}",
            a.rows(),
            b.len()
        )));
    }
    Ok(Solver::new(a, ring).solve(b))
}

/// Invariant divisors of the cokernel of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Invariants {
    /// Nonunit, nonzero divisors in divisibility order.
    pub divisors: Vec<Int>,
    /// Number of free summands of the cokernel.
    pub free_rank: usize,
}

pub fn invariant_divisors(a: &IntMat, ring: &RingDesc) -> Invariants {
    let f = snf(a, ring);
    let divisors = f.divisors().into_iter().filter(|d| !d.is_one()).collect();
    Invariants { divisors, free_rank: a.rows() - f.rank }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_rows(rows)
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn det(a: &IntMat) -> Int {
        // Bareiss fraction-free elimination
        let n = a.rows();
        let mut m = a.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else { return Int::zero() };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        if n == 0 {
            Int::one()
        } else {
            sign * &m[(n - 1, n - 1)]
        }
    }

    fn check_snf(a: &IntMat, ring: &RingDesc) -> Snf {
        let f = snf(a, ring);
        assert_eq!(f.u.mul(a).mul(&f.v).reduce(ring), f.s, "U·A·V ≠ S for {a:?}");
        assert_eq!(f.u.mul(&f.u_inv).reduce(ring), IntMat::identity(a.rows()).reduce(ring));
        assert!(ring.is_unit(&det(&f.u)));
        assert!(ring.is_unit(&det(&f.v)));
        for i in 0..f.s.rows() {
            for j in 0..f.s.cols() {
                if i != j {
                    assert!(f.s[(i, j)].is_zero());
                }
            }
        }
        let d = f.divisors();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]) || matches!(ring, RingDesc::ModN(n) if w[1].gcd(n).is_multiple_of(&w[0])));
        }
        f
    }

    #[test]
    fn snf_two_by_two() {
        let f = check_snf(&m(&[vec![2, 4], vec![6, 8]]), &RingDesc::Integers);
        assert_eq!(f.divisors(), ints(&[2, 4]));
    }

    #[test]
    fn snf_identity_and_zero() {
        let f = check_snf(&IntMat::identity(3), &RingDesc::Integers);
        assert_eq!(f.s, IntMat::identity(3));
        let f = check_snf(&IntMat::zeros(2, 3), &RingDesc::Integers);
        assert!(f.s.is_zero());
        assert_eq!(f.rank, 0);
    }

    #[test]
    fn snf_mod_n() {
        let r = RingDesc::zmod(12);
        let f = check_snf(&m(&[vec![4, 6], vec![3, 9]]), &r);
        for d in f.divisors() {
            assert!(Int::from(12).is_multiple_of(&d));
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&m(&[vec![2, 4], vec![6, 8]]), &RingDesc::Integers).cols(), 0);
        assert_eq!(kernel_basis(&IntMat::zeros(1, 1), &RingDesc::Integers), IntMat::identity(1));
        assert_eq!(kernel_basis(&m(&[vec![2]]), &RingDesc::zmod(4)), m(&[vec![2]]));
    }

    #[test]
    fn solve_examples() {
        let z = RingDesc::Integers;
        assert_eq!(solve(&m(&[vec![2]]), &ints(&[4]), &z).unwrap(), Some(ints(&[2])));
        assert_eq!(solve(&m(&[vec![2]]), &ints(&[3]), &z).unwrap(), None);
        assert_eq!(solve(&m(&[vec![2]]), &ints(&[3]), &RingDesc::zmod(5)).unwrap(), Some(ints(&[4])));
        assert!(matches!(solve(&m(&[vec![2]]), &ints(&[3, 1]), &z), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn invariant_examples() {
        let z = RingDesc::Integers;
        let inv = invariant_divisors(&m(&[vec![2, 0], vec![0, 3]]), &z);
        assert_eq!(inv, Invariants { divisors: ints(&[6]), free_rank: 0 });
        let inv = invariant_divisors(&IntMat::zeros(1, 1), &z);
        assert_eq!(inv, Invariants { divisors: vec![], free_rank: 1 });
        let inv = invariant_divisors(&m(&[vec![2]]), &RingDesc::zmod(4));
        assert_eq!(inv, Invariants { divisors: ints(&[2]), free_rank: 0 });
    }
}
