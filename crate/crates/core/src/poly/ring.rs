//! Coefficient rings for [`MultiPoly`](super::MultiPoly): arbitrary
//! precision rationals and prime fields with the modulus carried in the
//! element.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiply by a small integer (derivative exponents).
    fn mul_int(&self, k: i64) -> Self;
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Ring for BigRational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_int(&self, k: i64) -> Self {
        self * BigRational::from(BigInt::from(k))
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Prime field element; the modulus travels with the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    pub fn from_i64(v: i64, p: u64) -> Self {
        Fp { v: v.rem_euclid(p as i64) as u64, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Fp::new(1, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Ring for Fp {
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        Fp { v: (self.v + other.v) % self.p, p: self.p }
    }
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        Fp { v: (self.v + self.p - other.v) % self.p, p: self.p }
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        Fp { v: ((self.v as u128 * other.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn mul_int(&self, k: i64) -> Self {
        self.mul(&Fp::from_i64(k, self.p))
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            // p prime: Fermat
            Some(self.pow(self.p - 2))
        }
    }
}

/// Rational function as an unreduced fraction of rational polynomials.
/// Division-free gcd is deliberately skipped: the matrices this supports
/// are 4x4, so the degree growth stays tame.
#[derive(Debug, Clone)]
pub struct PolyFrac {
    pub num: super::QPoly,
    pub den: super::QPoly,
}

impl PolyFrac {
    pub fn from_poly(p: super::QPoly) -> Self {
        let vars = p.vars.clone();
        PolyFrac { num: p, den: super::MultiPoly::constant(&vars, BigRational::one()) }
    }
}

impl PartialEq for PolyFrac {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Ring for PolyFrac {
    fn add(&self, other: &Self) -> Self {
        PolyFrac {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        PolyFrac {
            num: self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        PolyFrac { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }
    }
    fn neg(&self) -> Self {
        PolyFrac { num: self.num.neg(), den: self.den.clone() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn mul_int(&self, k: i64) -> Self {
        PolyFrac {
            num: self.num.scale(&BigRational::from(BigInt::from(k))),
            den: self.den.clone(),
        }
    }
}

impl Field for PolyFrac {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(PolyFrac { num: self.den.clone(), den: self.num.clone() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse() {
        for p in [3u64, 5, 7, 9973] {
            for v in 1..p.min(50) {
                let x = Fp::new(v, p);
                let xi = x.inv().unwrap();
                assert_eq!(x.mul(&xi), Fp::new(1, p));
            }
        }
    }

    #[test]
    fn polyfrac_eq_cross_multiplies() {
        let x = crate::poly::parse_poly("x").unwrap();
        let x2 = crate::poly::parse_poly("x^2").unwrap();
        let a = PolyFrac { num: x.clone(), den: x2.clone() };
        let one_over_x = PolyFrac {
            num: crate::poly::parse_poly("1").unwrap(),
            den: x,
        };
        assert_eq!(a, one_over_x);
    }
}
