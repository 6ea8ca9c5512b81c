//! Finite field extensions F_{p^n} with a deterministic modulus and
//! table-driven arithmetic: elements are discrete logs, multiplication is
//! index addition, addition is one Zech-logarithm lookup. The tables make
//! the point-counting inner loop a handful of array reads per point.

use crate::{Error, Result};

/// Sentinel log-index for the zero element.
pub const ZERO: u32 = u32::MAX;

/// A finite field with full exp/log/Zech tables.
pub struct FqField {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    /// Monic modulus, ascending coefficients (length n+1).
    pub modulus: Vec<u64>,
    /// exp[k] = base-p code of g^k, k in [0, q-1).
    exp: Vec<u32>,
    /// log[code] = k with exp[k] = code; log[0] = ZERO.
    log: Vec<u32>,
    /// zech[k] = log(1 + g^k), ZERO when 1 + g^k = 0.
    zech: Vec<u32>,
}

/// Cap on table size (3^11 = 177147 comfortably below).
const MAX_Q: u64 = 1 << 22;

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let n = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // reduce: x^n = -(lower part of modulus)
    for k in (n..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..n {
            let sub = c * modulus[i] % p;
            prod[k - n + i] = (prod[k - n + i] + p - sub) % p;
        }
    }
    prod.truncate(n.max(1));
    prod
}

fn poly_pow_mod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let n = modulus.len() - 1;
    let mut acc = vec![0u64; n.max(1)];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, modulus, p);
        }
        b = poly_mul_mod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let deg = |f: &[u64]| f.iter().rposition(|&c| c != 0);
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    loop {
        let Some(db) = deg(&b) else { return a };
        let Some(da) = deg(&a) else { return b };
        if da < db {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // a -= lc(a)/lc(b) * x^{da-db} * b
        let inv = mod_inv(b[db], p);
        let factor = a[da] * inv % p;
        let shift = da - db;
        for i in 0..=db {
            let sub = factor * b[i] % p;
            a[i + shift] = (a[i + shift] + p - sub) % p;
        }
        debug_assert_eq!(a[da], 0);
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime
    let mut e = p - 2;
    let mut acc = 1u64;
    let mut b = a % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility over F_p: x^{p^n} = x mod f, and x^{p^{n/l}} != x for
/// every prime l | n.
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let n = (modulus.len() - 1) as u64;
    if n == 1 {
        return true;
    }
    let x = vec![0, 1];
    // x^{p^k} by iterated Frobenius
    let frob_power = |k: u64| -> Vec<u64> {
        let mut cur = x.clone();
        for _ in 0..k {
            cur = poly_pow_mod(&cur, p, modulus, p);
        }
        cur
    };
    let full = frob_power(n);
    let mut diff = full.clone();
    // diff = x^{p^n} - x
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    if diff.iter().any(|&c| c != 0) {
        return false;
    }
    for l in prime_factors(n) {
        let part = frob_power(n / l);
        let mut diff = part.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(&diff, modulus, p);
        let gdeg = g.iter().rposition(|&c| c != 0).unwrap_or(0);
        if gdeg != 0 {
            return false;
        }
    }
    true
}

/// The lexicographically least monic irreducible of degree n over F_p:
/// constant-to-top coefficient tuples scanned in increasing base-p
/// encoding.
pub fn least_irreducible(p: u64, n: u32) -> Vec<u64> {
    if n == 1 {
        return vec![0, 1]; // the polynomial x
    }
    let total = (p as u128).pow(n);
    let mut code: u128 = 0;
    while code < total {
        let mut f = Vec::with_capacity(n as usize + 1);
        let mut c = code;
        for _ in 0..n {
            f.push((c % p as u128) as u64);
            c /= p as u128;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        code += 1;
    }
    unreachable!("irreducibles of every degree exist");
}

fn code_of(coeffs: &[u64], p: u64) -> u32 {
    let mut code = 0u64;
    for &c in coeffs.iter().rev() {
        code = code * p + c;
    }
    code as u32
}

impl FqField {
    /// Deterministic field construction: same (p, n) always yields the same
    /// modulus (the least irreducible) and the same generator (the least
    /// primitive polynomial-basis element).
    pub fn new(p: u64, n: u32) -> Result<FqField> {
        if !crate::smooth::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        let q = (p as u128).pow(n);
        if q > MAX_Q as u128 {
            return Err(Error::FieldTooLarge(p, n));
        }
        let q = q as u64;
        let modulus = least_irreducible(p, n);
        let nn = n as usize;

        // find a multiplicative generator: try elements by increasing code
        let factors = prime_factors(q - 1);
        let order_is_full = |elem: &[u64]| -> bool {
            for &f in &factors {
                let pow = poly_pow_mod(elem, (q - 1) / f, &modulus, p);
                let is_one = pow[0] == 1 && pow[1..].iter().all(|&c| c == 0);
                if is_one {
                    return false;
                }
            }
            true
        };
        let mut gen: Option<Vec<u64>> = None;
        for code in 2..q {
            let mut elem = Vec::with_capacity(nn);
            let mut c = code;
            for _ in 0..nn.max(1) {
                elem.push(c % p);
                c /= p;
            }
            if order_is_full(&elem) {
                gen = Some(elem);
                break;
            }
        }
        // q = 2 has a trivial multiplicative group
        let g = gen.unwrap_or_else(|| vec![1; 1]);

        // exp table
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut cur = vec![0u64; nn.max(1)];
        cur[0] = 1;
        for e in exp.iter_mut() {
            *e = code_of(&cur, p);
            cur = poly_mul_mod(&cur, &g, &modulus, p);
        }
        debug_assert_eq!(code_of(&cur, p), 1, "generator order mismatch");
        // log table
        let mut log = vec![ZERO; q as usize];
        for (k, &code) in exp.iter().enumerate() {
            log[code as usize] = k as u32;
        }
        // zech table: zech[k] = log(1 + g^k)
        let mut zech = vec![ZERO; (q - 1) as usize];
        for (k, z) in zech.iter_mut().enumerate() {
            let code = exp[k];
            // add 1: increment the constant digit mod p
            let c0 = code as u64 % p;
            let code1 = code as u64 - c0 + (c0 + 1) % p;
            *z = log[code1 as usize];
        }
        Ok(FqField { p, n, q, modulus, exp, log, zech })
    }

    /// Element from a base-p coefficient code.
    pub fn from_code(&self, code: u32) -> u32 {
        if code == 0 {
            ZERO
        } else {
            self.log[code as usize]
        }
    }

    /// Embed an integer through the prime subfield.
    pub fn from_int(&self, v: i64) -> u32 {
        let r = v.rem_euclid(self.p as i64) as u32;
        self.from_code(r)
    }

    pub fn to_code(&self, a: u32) -> u32 {
        if a == ZERO {
            0
        } else {
            self.exp[a as usize]
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == ZERO || b == ZERO {
            return ZERO;
        }
        let s = a + b;
        let q1 = (self.q - 1) as u32;
        if s >= q1 {
            s - q1
        } else {
            s
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == ZERO {
            return b;
        }
        if b == ZERO {
            return a;
        }
        let q1 = (self.q - 1) as u32;
        let d = if b >= a { b - a } else { b + q1 - a };
        let z = self.zech[d as usize];
        if z == ZERO {
            ZERO
        } else {
            let s = a + z;
            if s >= q1 {
                s - q1
            } else {
                s
            }
        }
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == ZERO {
            return if e == 0 { 0 } else { ZERO };
        }
        (((a as u64) * (e % (self.q - 1))) % (self.q - 1)) as u32
    }

    /// Quadratic character: 0 on zero, +1 on nonzero squares, -1 otherwise.
    /// This is a^{(q-1)/2} read off the log parity. Errors in
    /// characteristic 2 where every element is a square.
    pub fn quadratic_character(&self, a: u32) -> Result<i32> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if a == ZERO {
            return Ok(0);
        }
        Ok(if a % 2 == 0 { 1 } else { -1 })
    }

    /// All field elements as log-indices, zero first.
    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        std::iter::once(ZERO).chain(0..(self.q - 1) as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_irreducibles_over_f3() {
        // ascending coefficient lists, constant first
        assert_eq!(least_irreducible(3, 1), vec![0, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]); // x^2 + 1
        assert_eq!(least_irreducible(3, 3), vec![1, 2, 0, 1]); // x^3 + 2x + 1
        assert_eq!(least_irreducible(3, 4), vec![2, 1, 0, 0, 1]); // x^4 + x + 2
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]); // x^3 + x + 1
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(matches!(FqField::new(4, 1), Err(Error::NotPrime(4))));
    }

    #[test]
    fn field_f9_basic_identities() {
        let f = FqField::new(3, 2).unwrap();
        assert_eq!(f.q, 9);
        let one = f.from_int(1);
        let two = f.from_int(2);
        assert_eq!(f.add(one, two), ZERO); // 1 + 2 = 0 mod 3
        assert_eq!(f.add(one, one), two);
        // Frobenius: a^q = a for all a
        for a in f.elements() {
            assert_eq!(f.pow(a, f.q), if a == ZERO { ZERO } else { a });
        }
    }

    #[test]
    fn character_is_multiplicative() {
        let f = FqField::new(3, 3).unwrap();
        let els: Vec<u32> = f.elements().collect();
        for &a in &els {
            for &b in &els {
                let ca = f.quadratic_character(a).unwrap();
                let cb = f.quadratic_character(b).unwrap();
                let cab = f.quadratic_character(f.mul(a, b)).unwrap();
                assert_eq!(cab, ca * cb);
            }
        }
    }

    #[test]
    fn generator_of_f9_is_a_nonsquare() {
        let f = FqField::new(3, 2).unwrap();
        // log-index 1 is the generator itself
        assert_eq!(f.quadratic_character(1).unwrap(), -1);
        assert_eq!(f.quadratic_character(f.from_int(1)).unwrap(), 1);
        assert_eq!(f.quadratic_character(ZERO).unwrap(), 0);
    }

    #[test]
    fn char_two_character_errors() {
        let f = FqField::new(2, 3).unwrap();
        assert!(matches!(f.quadratic_character(0), Err(Error::EvenCharacteristic)));
    }

    #[test]
    fn zech_addition_matches_code_addition() {
        let f = FqField::new(3, 2).unwrap();
        // brute force check of a + b via coefficient codes
        let decode = |code: u32| -> (u64, u64) { (code as u64 % 3, code as u64 / 3) };
        let encode = |a: u64, b: u64| -> u32 { (a + 3 * b) as u32 };
        for x in f.elements() {
            for y in f.elements() {
                let (a0, a1) = decode(f.to_code(x));
                let (b0, b1) = decode(f.to_code(y));
                let want_code = encode((a0 + b0) % 3, (a1 + b1) % 3);
                assert_eq!(f.to_code(f.add(x, y)), want_code);
            }
        }
    }
}
