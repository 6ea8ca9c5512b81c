//! Finite quadratic forms on discriminant groups, with the Gauss-sum
//! signature. The group is stored through its elementary divisors and a
//! small matrix of generator values; q on an arbitrary element is expanded
//! from those, so large groups never materialize a full value table.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Reduce a rational into [0, m).
fn reduce_mod(x: &BigRational, m: u32) -> BigRational {
    let m = BigRational::from(BigInt::from(m));
    let mut r = x % &m;
    if r.is_negative() {
        r += &m;
    }
    r
}

/// A finite abelian group `⊕ Z/d_i` with a quadratic form `q : A -> Q/2Z`
/// and its polarization `b : A x A -> Q/Z`.
#[derive(Debug, Clone)]
pub struct FiniteQuadraticForm {
    /// Elementary divisors d_1 | d_2 | ... (all > 1).
    pub divisors: Vec<u64>,
    /// Rational coordinate representatives of the generators, in the basis
    /// of the source lattice.
    pub generators: Vec<Vec<BigRational>>,
    /// q(g_i) mod 2.
    pub q_gen: Vec<BigRational>,
    /// b(g_i, g_j) mod 1.
    pub b_gen: Vec<Vec<BigRational>>,
}

impl FiniteQuadraticForm {
    pub fn from_generators(
        divisors: Vec<u64>,
        generators: Vec<Vec<BigRational>>,
        q_gen: Vec<BigRational>,
        b_gen: Vec<Vec<BigRational>>,
    ) -> Self {
        let q_gen = q_gen.iter().map(|v| reduce_mod(v, 2)).collect();
        let b_gen = b_gen
            .iter()
            .map(|row| row.iter().map(|v| reduce_mod(v, 1)).collect())
            .collect();
        FiniteQuadraticForm { divisors, generators, q_gen, b_gen }
    }

    pub fn trivial() -> Self {
        FiniteQuadraticForm {
            divisors: vec![],
            generators: vec![],
            q_gen: vec![],
            b_gen: vec![],
        }
    }

    pub fn order(&self) -> u64 {
        self.divisors.iter().product()
    }

    /// Primary decomposition of the group: prime-power cyclic factors,
    /// sorted ascending. `Z/2 x Z/18` reports as `[2, 2, 9]`.
    pub fn primary_decomposition(&self) -> Vec<u64> {
        let mut parts = Vec::new();
        for &d in &self.divisors {
            let mut rest = d;
            let mut p = 2u64;
            while rest > 1 {
                if rest % p == 0 {
                    let mut q = 1u64;
                    while rest % p == 0 {
                        q *= p;
                        rest /= p;
                    }
                    parts.push(q);
                }
                p += 1;
                if p * p > rest && rest > 1 {
                    parts.push(rest);
                    break;
                }
            }
        }
        parts.sort_unstable();
        parts
    }

    /// q evaluated on the element `sum a_i g_i`, reduced into [0,2).
    pub fn q(&self, coords: &[u64]) -> BigRational {
        assert_eq!(coords.len(), self.divisors.len());
        let mut acc = BigRational::zero();
        for i in 0..coords.len() {
            let a = BigInt::from(coords[i]);
            acc += &self.q_gen[i] * BigRational::from(&a * &a);
            for j in 0..i {
                let cross = &self.b_gen[i][j]
                    * BigRational::from(BigInt::from(2u32) * &a * BigInt::from(coords[j]));
                acc += cross;
            }
        }
        reduce_mod(&acc, 2)
    }

    /// b evaluated on a pair of elements, reduced into [0,1).
    pub fn b(&self, xc: &[u64], yc: &[u64]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..xc.len() {
            for j in 0..yc.len() {
                acc += &self.b_gen[i][j]
                    * BigRational::from(BigInt::from(xc[i]) * BigInt::from(yc[j]));
            }
        }
        reduce_mod(&acc, 1)
    }

    /// Iterate the coordinates of every group element.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let divisors = self.divisors.clone();
        let total = self.order();
        (0..total).map(move |mut idx| {
            let mut coords = Vec::with_capacity(divisors.len());
            for &d in &divisors {
                coords.push(idx % d);
                idx /= d;
            }
            coords
        })
    }

    /// Full value table, for inspection and small-group assertions.
    pub fn q_values(&self) -> BTreeMap<Vec<u64>, BigRational> {
        self.elements().map(|c| (c.clone(), self.q(&c))).collect()
    }

    /// Milgram signature: the phase of `sum exp(pi i q(x))` as a residue
    /// mod 8. The sum's modulus must equal sqrt(|A|) within tolerance,
    /// otherwise the form is malformed and an error is returned.
    pub fn milgram_signature(&self) -> Result<u8> {
        let mut s = Complex64::new(0.0, 0.0);
        for c in self.elements() {
            let q = self.q(&c).to_f64().expect("small denominator");
            s += Complex64::from_polar(1.0, std::f64::consts::PI * q);
        }
        if self.order() == 1 {
            return Ok(0);
        }
        let expect = (self.order() as f64).sqrt();
        if (s.norm() - expect).abs() > 1e-6 * expect.max(1.0) {
            return Err(Error::MilgramModulus(s.norm(), expect));
        }
        let eighth = s.arg() / (std::f64::consts::PI / 4.0);
        let rounded = eighth.round();
        if (eighth - rounded).abs() > 1e-6 {
            return Err(Error::MilgramPhase(s.arg()));
        }
        Ok(((rounded as i64).rem_euclid(8)) as u8)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn trivial_group_signature_zero() {
        assert_eq!(FiniteQuadraticForm::trivial().milgram_signature().unwrap(), 0);
    }

    #[test]
    fn z2_with_q_half_has_signature_one() {
        // discriminant form of [[2]]: Z/2, q(g) = 1/2
        let f = FiniteQuadraticForm::from_generators(
            vec![2],
            vec![vec![rat(1, 2)]],
            vec![rat(1, 2)],
            vec![vec![rat(1, 4)]],
        );
        assert_eq!(f.milgram_signature().unwrap(), 1);
    }

    #[test]
    fn z3_with_q_two_thirds_has_signature_two() {
        // discriminant form of [[2,-1],[-1,2]]: Z/3, q(g) = 2/3
        let f = FiniteQuadraticForm::from_generators(
            vec![3],
            vec![vec![rat(2, 3), rat(1, 3)]],
            vec![rat(2, 3)],
            vec![vec![rat(1, 3)]],
        );
        assert_eq!(f.milgram_signature().unwrap(), 2);
        let vals = f.q_values();
        assert_eq!(vals[&vec![1]], rat(2, 3));
        assert_eq!(vals[&vec![2]], rat(2, 3));
    }

    #[test]
    fn q_is_even_in_sign() {
        let f = FiniteQuadraticForm::from_generators(
            vec![5],
            vec![vec![rat(1, 5)]],
            vec![rat(2, 5)],
            vec![vec![rat(1, 5)]],
        );
        for c in 0..5u64 {
            assert_eq!(f.q(&[c]), f.q(&[(5 - c) % 5]));
        }
    }
}
