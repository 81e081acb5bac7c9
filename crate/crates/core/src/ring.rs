use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;

/// Base ring: the integers or the integers mod n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDesc {
    Integers,
    ModN(Int),
}

impl RingDesc {
    pub fn zmod(n: i64) -> RingDesc {
        assert!(n >= 2, "modulus must be at least 2");
        RingDesc::ModN(Int::from(n))
    }

    pub fn hereditary(&self) -> bool {
        matches!(self, RingDesc::Integers)
    }

    pub fn quasi_frobenius(&self) -> bool {
        matches!(self, RingDesc::ModN(_))
    }

    pub fn modulus(&self) -> Option<&Int> {
        match self {
            RingDesc::Integers => None,
            RingDesc::ModN(n) => Some(n),
        }
    }

    /// Canonical representative of `x` in the ring.
    pub fn reduce(&self, x: &Int) -> Int {
        match self {
            RingDesc::Integers => x.clone(),
            RingDesc::ModN(n) => x.mod_floor(n),
        }
    }

    pub fn is_unit(&self, x: &Int) -> bool {
        match self {
            RingDesc::Integers => x.abs().is_one(),
            RingDesc::ModN(n) => x.gcd(n).is_one(),
        }
    }

    /// Order of a cyclic summand `R/(d)` as a value in `ℤ`: 0 means infinite.
    pub fn cyclic_order(&self, d: &Int) -> Int {
        match self {
            RingDesc::Integers => d.abs(),
            RingDesc::ModN(n) => d.gcd(n),
        }
    }

    /// Inverse of a unit modulo n.
    pub fn unit_inverse(&self, u: &Int) -> Int {
        match self {
            RingDesc::Integers => u.clone(),
            RingDesc::ModN(n) => {
                let (g, x, _) = ext_gcd(&u.mod_floor(n), n);
                assert!(g.is_one(), "not a unit");
                x.mod_floor(n)
            }
        }
    }
}

impl fmt::Display for RingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDesc::Integers => write!(f, "Z"),
            RingDesc::ModN(n) => write!(f, "Z/{n}"),
        }
    }
}

/// Extended gcd with a nonnegative gcd: returns (g, x, y) with a·x + b·y = g.
pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (Int::one(), Int::zero());
    let (mut old_t, mut t) = (Int::zero(), Int::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// gcd where 0 plays the role of the order of an infinite cyclic group.
pub fn order_gcd(a: &Int, b: &Int) -> Int {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_bezout() {
        for (a, b) in [(12, 18), (-4, 6), (0, 5), (7, 0), (0, 0), (5, -3)] {
            let (a, b) = (Int::from(a), Int::from(b));
            let (g, x, y) = ext_gcd(&a, &b);
            assert!(!g.is_negative());
            assert_eq!(&a * &x + &b * &y, g);
            assert_eq!(g, a.gcd(&b));
        }
    }

    #[test]
    fn unit_inverse_mod() {
        let r = RingDesc::zmod(12);
        assert_eq!(r.unit_inverse(&Int::from(5)), Int::from(5));
        assert!(!r.is_unit(&Int::from(4)));
    }
}
