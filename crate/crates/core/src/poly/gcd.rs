//! Multivariate gcd over Q via a primitive pseudo-remainder sequence,
//! with the squarefree machinery used for square-class reduction of
//! quaternion symbol entries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::QPoly;

fn occurring_vars(f: &QPoly) -> Vec<usize> {
    let n = f.vars.len();
    let mut seen = vec![false; n];
    for m in f.terms.keys() {
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                seen[i] = true;
            }
        }
    }
    (0..n).filter(|&i| seen[i]).collect()
}

/// Coefficients of f viewed as a univariate polynomial in `var`
/// (index 0 = constant coefficient), each with `var` cleared.
fn as_univariate(f: &QPoly, var: usize) -> Vec<QPoly> {
    let d = f.terms.keys().map(|m| m.0[var] as usize).max().unwrap_or(0);
    let mut coeffs = vec![QPoly::zero(&f.vars); d + 1];
    for (m, c) in &f.terms {
        let e = m.0[var] as usize;
        let mut m2 = m.clone();
        m2.0[var] = 0;
        coeffs[e].insert_term(m2, c.clone());
    }
    coeffs
}

fn from_univariate(coeffs: &[QPoly], var: usize, vars: &super::Vars) -> QPoly {
    let mut out = QPoly::zero(vars);
    for (e, c) in coeffs.iter().enumerate() {
        for (m, cc) in &c.terms {
            let mut m2 = m.clone();
            m2.0[var] = e as u8;
            out.insert_term(m2, cc.clone());
        }
    }
    out
}

fn uni_degree(coeffs: &[QPoly]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

/// Pseudo-remainder of a by b in the main variable (both as coefficient
/// vectors, b nonzero).
fn pseudo_rem(a: &[QPoly], b: &[QPoly]) -> Vec<QPoly> {
    let db = uni_degree(b).expect("b nonzero");
    let lb = &b[db];
    let mut r: Vec<QPoly> = a.to_vec();
    loop {
        let Some(dr) = uni_degree(&r) else { return r };
        if dr < db {
            return r;
        }
        let lr = r[dr].clone();
        // r = lb * r - lr * x^{dr-db} * b
        let mut next = vec![QPoly::zero(&lr.vars); dr.max(r.len() - 1) + 1];
        for (e, c) in r.iter().enumerate() {
            next[e] = c.mul(lb);
        }
        for (e, c) in b.iter().enumerate() {
            let idx = e + dr - db;
            next[idx] = next[idx].sub(&c.mul(&lr));
        }
        // top coefficient cancels exactly
        debug_assert!(next[dr].is_zero());
        next.truncate(dr);
        r = next;
    }
}

fn primitive_positive(f: &QPoly) -> QPoly {
    f.normalized_primitive().0
}

/// Primitive gcd of two rational polynomials (content is discarded; the
/// result is primitive with positive lex-first coefficient, or zero when
/// both inputs are zero).
pub fn gcd(f: &QPoly, g: &QPoly) -> QPoly {
    if f.is_zero() {
        return primitive_positive(g);
    }
    if g.is_zero() {
        return primitive_positive(f);
    }
    let mut vars_occ = occurring_vars(f);
    for v in occurring_vars(g) {
        if !vars_occ.contains(&v) {
            vars_occ.push(v);
        }
    }
    if vars_occ.is_empty() {
        return QPoly::constant(&f.vars, BigRational::one());
    }
    let main = *vars_occ.last().unwrap();

    let fu = as_univariate(f, main);
    let gu = as_univariate(g, main);
    let cont_f = gcd_many(&fu);
    let cont_g = gcd_many(&gu);
    let cont = gcd(&cont_f, &cont_g);

    let pp = |coeffs: &[QPoly], c: &QPoly| -> Vec<QPoly> {
        coeffs
            .iter()
            .map(|x| {
                if x.is_zero() {
                    x.clone()
                } else {
                    x.exact_div(c).expect("content divides")
                }
            })
            .collect()
    };
    let mut a = pp(&fu, &cont_f);
    let mut b = pp(&gu, &cont_g);
    if uni_degree(&a) < uni_degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if uni_degree(&b).is_none() {
            break;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = match uni_degree(&r) {
            None => vec![],
            Some(_) => {
                let rp = from_univariate(&r, main, &f.vars);
                let prim = primitive_positive(&rp);
                as_univariate(&prim, main)
            }
        };
    }
    let core = from_univariate(&a, main, &f.vars);
    primitive_positive(&cont.mul(&primitive_positive(&core)))
}

fn gcd_many(polys: &[QPoly]) -> QPoly {
    let mut acc: Option<QPoly> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => primitive_positive(p),
            Some(a) => gcd(&a, p),
        });
        if let Some(a) = &acc {
            if a.total_degree() == 0 {
                break;
            }
        }
    }
    acc.unwrap_or_else(|| QPoly::zero(&polys[0].vars))
}

/// gcd(f, all partial derivatives): the product of repeated factors,
/// each with multiplicity one less.
fn repeated_part(f: &QPoly) -> QPoly {
    let mut acc = primitive_positive(f);
    for i in 0..f.vars.len() {
        let fi = f.derivative(i);
        acc = gcd(&acc, &fi);
        if acc.total_degree() == 0 {
            break;
        }
    }
    acc
}

/// Product of the distinct irreducible factors of f (primitive, lex-first
/// positive). Constants map to 1.
pub fn squarefree_part(f: &QPoly) -> QPoly {
    let prim = primitive_positive(f);
    if prim.total_degree() == 0 {
        return QPoly::constant(&f.vars, BigRational::one());
    }
    let rep = repeated_part(&prim);
    if rep.total_degree() == 0 {
        return prim;
    }
    primitive_positive(&prim.exact_div(&rep).expect("repeated part divides"))
}

/// f modulo squares, split into a squarefree integer constant (with sign)
/// and a primitive squarefree polynomial factor.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareClass {
    pub constant: BigInt,
    pub poly: QPoly,
}

impl SquareClass {
    pub fn to_poly(&self) -> QPoly {
        self.poly.scale(&BigRational::from(self.constant.clone()))
    }
}

/// Squarefree kernel of the polynomial part: for f = prod p_i^{e_i}, the
/// product of the p_i with odd e_i.
fn odd_multiplicity_kernel(f: &QPoly) -> QPoly {
    if f.total_degree() == 0 {
        return QPoly::constant(&f.vars, BigRational::one());
    }
    let rep = repeated_part(f); // prod p^{e-1}
    let sq = primitive_positive(&f.exact_div(&rep).expect("divides")); // prod p
    if rep.total_degree() == 0 {
        return sq;
    }
    let inner = odd_multiplicity_kernel(&primitive_positive(&rep)); // prod_{e even} p
    primitive_positive(&sq.exact_div(&inner).expect("kernel divides"))
}

fn squarefree_int(n: &BigInt) -> BigInt {
    let mut n = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0u32;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            if e % 2 == 1 {
                out *= &p;
            }
        }
        p += 1u32;
    }
    out * n
}

/// Reduce a nonzero polynomial modulo squares: square rational factors and
/// even polynomial powers are removed.
pub fn square_class_reduce(f: &QPoly) -> SquareClass {
    assert!(!f.is_zero(), "square class of the zero polynomial");
    let (prim, content) = f.normalized_primitive();
    let kernel = odd_multiplicity_kernel(&prim);
    let const_part = squarefree_int(&(content.numer() * content.denom()));
    let sign = if content.is_negative() { -BigInt::one() } else { BigInt::one() };
    SquareClass { constant: sign * const_part, poly: kernel }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> QPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn gcd_univariate() {
        let f = p("x^2 - y^2");
        let g = p("x^2 + 2*x*y + y^2");
        assert_eq!(gcd(&f, &g), p("x + y"));
    }

    #[test]
    fn gcd_coprime() {
        assert_eq!(gcd(&p("x + 1"), &p("y + 1")).total_degree(), 0);
    }

    #[test]
    fn squarefree_of_square() {
        let f = p("x^2 + y*z").mul(&p("x^2 + y*z")).mul(&p("x - y"));
        assert_eq!(squarefree_part(&f), p("x^2 + y*z").mul(&p("x - y")));
    }

    #[test]
    fn square_class_strips_squares_and_constants() {
        // 4 * (x+y)^2 * z  ->  z
        let f = p("x + y").mul(&p("x + y")).mul(&p("4*z"));
        let sc = square_class_reduce(&f);
        assert_eq!(sc.constant, BigInt::one());
        assert_eq!(sc.poly, p("z"));
        // 12 x -> 3 x
        let sc = square_class_reduce(&p("12*x"));
        assert_eq!(sc.constant, BigInt::from(3));
        assert_eq!(sc.poly, p("x"));
        // -1 stays -1
        let sc = square_class_reduce(&p("0 - 1"));
        assert_eq!(sc.constant, BigInt::from(-1));
        assert_eq!(sc.poly.total_degree(), 0);
    }

    #[test]
    fn square_class_cube_keeps_one_copy() {
        let f = p("x + z").mul(&p("x + z")).mul(&p("x + z"));
        let sc = square_class_reduce(&f);
        assert_eq!(sc.to_poly(), p("x + z"));
    }
}
