//! Exact multivariate polynomials over the rationals or a prime field,
//! with a grevlex term order, a small text format, and the gcd machinery
//! needed for square-class reduction.

mod gcd;
mod parse;
mod ring;

pub use gcd::{gcd as poly_gcd, square_class_reduce, squarefree_part, SquareClass};
pub use parse::parse_poly;
pub use ring::{Field, Fp, PolyFrac, Ring};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::{Error, Result};

/// Shared, ordered variable list. The text format fixes the canonical
/// eight names.
#[derive(Debug, Clone)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Self {
        Vars(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    /// x, y, z, u, v, w, s, t.
    pub fn canonical() -> Self {
        thread_local! {
            static CANON: Vars = Vars::new(vec!["x", "y", "z", "u", "v", "w", "s", "t"]);
        }
        CANON.with(|v| v.clone())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Vars {}

/// Exponent vector; ordered by graded reverse lexicographic order, so the
/// maximal key of a term map is the leading monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub SmallVec<[u8; 8]>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize, e: u8) -> Self {
        let mut m = Mono::one(n);
        m.0[i] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, idxs: &[usize]) -> u32 {
        idxs.iter().map(|&i| self.0[i] as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (da, db) = (self.degree(), other.degree());
        if da != db {
            return da.cmp(&db);
        }
        for i in (0..self.0.len()).rev() {
            if self.0[i] != other.0[i] {
                // grevlex: at the rightmost difference, the smaller
                // exponent wins
                return other.0[i].cmp(&self.0[i]);
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly<C: Ring> {
    pub vars: Vars,
    pub terms: BTreeMap<Mono, C>,
}

pub type QPoly = MultiPoly<BigRational>;
pub type FpPoly = MultiPoly<Fp>;

impl<C: Ring> MultiPoly<C> {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(vars.len()), c);
        }
        p
    }

    pub fn var(vars: &Vars, i: usize, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono::var(vars.len(), i, 1), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.vars == other.vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert!(self.vars == other.vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.vars == other.vars);
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Mono, c: &C) -> Self {
        let mut out = Self::zero(&self.vars);
        if c.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            out.terms.insert(ma.mul(m), ca.mul(c));
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.vars);
        if c.is_zero() {
            return out;
        }
        for (m, cc) in &self.terms {
            let v = cc.mul(c);
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self
    where
        C: Ring,
    {
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = e;
        if e == 0 {
            // only well-defined with a known 1; callers avoid pow(_, 0)
            panic!("pow with zero exponent is ambiguous for a generic ring");
        }
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        result.unwrap()
    }

    pub fn leading(&self) -> Option<(&Mono, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, idxs: &[usize]) -> u32 {
        self.terms.keys().map(|m| m.degree_in(idxs)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn coeff(&self, m: &Mono) -> Option<&C> {
        self.terms.get(m)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[i] = e - 1;
                out.insert_term(m2, c.mul_int(e as i64));
            }
        }
        out
    }

    /// Substitute each variable by a polynomial.
    pub fn substitute(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.vars.len());
        let vars = images.first().map(|p| p.vars.clone()).unwrap_or_else(|| self.vars.clone());
        let mut out = Self::zero(&vars);
        for (m, c) in &self.terms {
            let mut term = Self::constant(&vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e as u32));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Exact division; `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self>
    where
        C: Field,
    {
        if divisor.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        let (dm, dc) = {
            let (m, c) = divisor.leading().unwrap();
            (m.clone(), c.clone())
        };
        let dinv = dc.inv()?;
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = rm.div(&dm);
            let qc = rc.mul(&dinv);
            quot.insert_term(qm.clone(), qc.clone());
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
        }
        Some(quot)
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::<D>::zero(&self.vars);
        for (m, c) in &self.terms {
            out.insert_term(m.clone(), f(c));
        }
        out
    }
}

impl<C: Ring> Ring for MultiPoly<C> {
    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MultiPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn mul_int(&self, k: i64) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            out.insert_term(m.clone(), c.mul_int(k));
        }
        out
    }
}

impl QPoly {
    pub fn from_int(vars: &Vars, v: i64) -> Self {
        Self::constant(vars, BigRational::from(BigInt::from(v)))
    }

    /// Positive rational c with c * self primitive over Z (content 1).
    /// Zero polynomial returns 1.
    pub fn normalizing_factor(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        BigRational::new(den_lcm, num_gcd)
    }

    /// Divide by content and make the lexicographically-first coefficient
    /// positive (lex on exponent vectors with the variable order of the
    /// input list). Returns the normalized polynomial and the positive
    /// rational content it was divided by, with the sign folded in.
    pub fn normalized_primitive(&self) -> (QPoly, BigRational) {
        if self.is_zero() {
            return (self.clone(), BigRational::one());
        }
        let factor = self.normalizing_factor();
        let mut prim = self.scale(&factor);
        // lex-first term: maximal exponent vector in plain lex order
        let lex_first = prim
            .terms
            .iter()
            .max_by(|(a, _), (b, _)| a.0.as_slice().cmp(b.0.as_slice()))
            .map(|(_, c)| c.clone())
            .unwrap();
        let mut content = factor.recip();
        if lex_first.is_negative() {
            prim = prim.neg();
            content = -content;
        }
        (prim, content)
    }

    /// Reduce an integer-content polynomial mod p. Errors if a denominator
    /// is divisible by p or the whole polynomial vanishes mod p.
    pub fn reduce_mod_p(&self, p: u64) -> Result<FpPoly> {
        let pp = BigInt::from(p);
        let mut out = FpPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let den = c.denom();
            if (den % &pp).is_zero() {
                return Err(Error::Invalid(format!("denominator divisible by {p}")));
            }
            let num_mod = c.numer().mod_floor(&pp);
            let den_mod = den.mod_floor(&pp);
            let num = u64::try_from(&num_mod).expect("reduced");
            let den = u64::try_from(&den_mod).expect("reduced");
            let inv = Fp::new(den, p).inv().expect("coprime");
            out.insert_term(m.clone(), Fp::new(num, p).mul(&inv));
        }
        Ok(out)
    }
}

fn write_coeff_and_monomial(
    f: &mut fmt::Formatter<'_>,
    coeff_str: &str,
    m: &Mono,
    names: &[String],
) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    if coeff_str != "1" || m.degree() == 0 {
        parts.push(coeff_str.to_string());
    }
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let cs = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            write_coeff_and_monomial(f, &cs, m, self.vars.names())?;
        }
        Ok(())
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write_coeff_and_monomial(f, &c.value().to_string(), m, self.vars.names())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn grevlex_order() {
        let f = p("x^2 + x*y + y^2 + x + 1");
        let lead = f.leading().unwrap().0.clone();
        assert_eq!(lead, Mono::var(8, 0, 2));
        // x*y > y^2? grevlex: deg equal, rightmost difference at y: x*y has
        // y^1, y^2 has y^2; smaller wins, so x*y > y^2
        let xy = {
            let mut m = Mono::one(8);
            m.0[0] = 1;
            m.0[1] = 1;
            m
        };
        let y2 = Mono::var(8, 1, 2);
        assert!(xy > y2);
    }

    #[test]
    fn arithmetic_round_trip() {
        let f = p("x^2 - 2*x*y + y^2");
        let g = p("x - y").mul(&p("x - y"));
        assert_eq!(f, g);
        assert!(f.sub(&g).is_zero());
    }

    #[test]
    fn parse_print_round_trip() {
        for s in [
            "x^6 + 6*x^5*y - 4*y*z^5",
            "2*x*y^2 + 5*y^2*z - 5*x^2*z",
            "x^2 + y*z",
            "-x - 3*y",
            "42",
            "0",
        ] {
            let f = p(s);
            let printed = f.to_string();
            assert_eq!(p(&printed), f, "printed: {printed}");
        }
    }

    #[test]
    fn derivative_and_degree() {
        let f = p("x^3 + x*y^2");
        let fx = f.derivative(0);
        assert_eq!(fx, p("3*x^2 + y^2"));
        assert_eq!(f.total_degree(), 3);
        assert!(f.is_homogeneous());
        assert!(!p("x^2 + x").is_homogeneous());
    }

    #[test]
    fn exact_division() {
        let f = p("x^2 - y^2");
        let g = p("x - y");
        let q = f.exact_div(&g).unwrap();
        assert_eq!(q, p("x + y"));
        assert!(p("x^2 + y^2").exact_div(&g).is_none());
    }

    #[test]
    fn substitution_parametrizes_conic() {
        let conic = p("x^2 + y*z");
        let vars = Vars::canonical();
        let (si, ti) = (6, 7);
        let images: Vec<QPoly> = (0..8)
            .map(|i| match i {
                0 => MultiPoly::var(&vars, si, BigRational::one())
                    .mul(&MultiPoly::var(&vars, ti, BigRational::one())),
                1 => MultiPoly::var(&vars, si, BigRational::one()).pow(2),
                2 => MultiPoly::var(&vars, ti, BigRational::one()).pow(2).neg(),
                i => MultiPoly::var(&vars, i, BigRational::one()),
            })
            .collect();
        assert!(conic.substitute(&images).is_zero());
    }

    #[test]
    fn normalization() {
        let f = p("4*x^2 - 6*y^2");
        let (prim, content) = f.normalized_primitive();
        assert_eq!(prim, p("2*x^2 - 3*y^2"));
        assert_eq!(content, BigRational::from(BigInt::from(2)));
        let g = p("-4*x^2 + 6*y^2");
        let (prim2, content2) = g.normalized_primitive();
        assert_eq!(prim2, prim);
        assert_eq!(content2, -content);
    }
}
