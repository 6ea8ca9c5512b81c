//! Buchberger over a prime field with packed grevlex monomials. Tuned for
//! the Jacobian ideals that show up here (at most 7 variables, quadric to
//! quintic generators); the two standard pair criteria keep it snappy.

use std::collections::HashMap;

use crate::poly::{Field, Fp, FpPoly};

const MAX_VARS: usize = 7;

/// Exponent vector with a cached key whose u64 ordering is grevlex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PMono {
    key: u64,
    exps: [u8; MAX_VARS],
}

impl PMono {
    fn make_key(exps: &[u8; MAX_VARS], nvars: usize) -> u64 {
        let deg: u64 = exps.iter().map(|&e| e as u64).sum();
        let mut key = deg << 56;
        // most significant exponent byte = complemented last variable, so
        // ties break on the rightmost difference with smaller exponent
        // winning
        for (slot, i) in (0..nvars).rev().enumerate() {
            key |= (0xFF - exps[i] as u64) << (8 * (6 - slot));
        }
        key
    }

    pub fn new(exps: [u8; MAX_VARS], nvars: usize) -> Self {
        PMono { key: Self::make_key(&exps, nvars), exps }
    }

    pub fn one(nvars: usize) -> Self {
        PMono::new([0; MAX_VARS], nvars)
    }

    pub fn degree(&self) -> u32 {
        (self.key >> 56) as u32
    }

    pub fn divides(&self, other: &PMono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &PMono, nvars: usize) -> PMono {
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i] + other.exps[i];
        }
        PMono::new(exps, nvars)
    }

    pub fn div(&self, other: &PMono, nvars: usize) -> PMono {
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i] - other.exps[i];
        }
        PMono::new(exps, nvars)
    }

    pub fn lcm(&self, other: &PMono, nvars: usize) -> PMono {
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].max(other.exps[i]);
        }
        PMono::new(exps, nvars)
    }

    pub fn coprime(&self, other: &PMono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Supported on exactly one variable (a pure power)?
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut var = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if var.is_some() {
                    return None;
                }
                var = Some(i);
            }
        }
        var
    }
}

impl Ord for PMono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}
impl PartialOrd for PMono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Terms sorted descending by grevlex key; coefficients nonzero mod p.
#[derive(Debug, Clone)]
pub struct GPoly {
    pub terms: Vec<(PMono, u64)>,
}

impl GPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(PMono, u64) {
        &self.terms[0]
    }

    /// self - c * m * g  (all mod p)
    fn sub_mul(&self, c: u64, m: &PMono, g: &GPoly, p: u64, nvars: usize) -> GPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| {
            (gm.mul(m, nvars), (*gc as u128 * c as u128 % p as u128) as u64)
        }).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => {
                    out.push(*a.next().unwrap());
                }
                (None, Some(_)) => {
                    let (bm, bc) = b.next().unwrap();
                    out.push((bm, (p - bc) % p));
                }
                (Some((am, _)), Some((bm, _))) => {
                    use std::cmp::Ordering::*;
                    match am.key.cmp(&bm.key) {
                        Greater => out.push(*a.next().unwrap()),
                        Less => {
                            let (bm, bc) = b.next().unwrap();
                            out.push((bm, (p - bc) % p));
                        }
                        Equal => {
                            let (am, ac) = *a.next().unwrap();
                            let (_, bc) = b.next().unwrap();
                            let c = (ac + p - bc) % p;
                            if c != 0 {
                                out.push((am, c));
                            }
                        }
                    }
                }
            }
        }
        out.retain(|(_, c)| *c != 0);
        GPoly { terms: out }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    Fp::new(a, p).inv().expect("nonzero").value()
}

pub struct GroebnerBasis {
    pub basis: Vec<GPoly>,
    pub nvars: usize,
    pub p: u64,
}

/// Full normal form of f against the basis.
fn normal_form(f: &GPoly, basis: &[GPoly], p: u64, nvars: usize) -> GPoly {
    let mut rem_terms: Vec<(PMono, u64)> = Vec::new();
    let mut work = f.clone();
    'outer: while !work.is_zero() {
        let (lm, lc) = *work.lead();
        for g in basis {
            let (gm, gc) = g.lead();
            if gm.divides(&lm) {
                let m = lm.div(gm, nvars);
                let c = (lc as u128 * inv_mod(*gc, p) as u128 % p as u128) as u64;
                work = work.sub_mul(c, &m, g, p, nvars);
                continue 'outer;
            }
        }
        rem_terms.push((lm, lc));
        work.terms.remove(0);
    }
    GPoly { terms: rem_terms }
}

/// Buchberger with the coprime-lcm and chain criteria.
pub fn groebner_basis(gens: Vec<GPoly>, p: u64, nvars: usize) -> GroebnerBasis {
    let mut basis: Vec<GPoly> = Vec::new();
    for g in gens {
        let r = normal_form(&g, &basis, p, nvars);
        if !r.is_zero() {
            basis.push(r);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    let lcm_deg = |basis: &[GPoly], i: usize, j: usize| {
        basis[i].lead().0.lcm(&basis[j].lead().0, nvars).degree()
    };
    let mut done: std::collections::HashSet<(usize, usize)> = Default::default();
    while !pairs.is_empty() {
        // normal selection: smallest lcm degree first
        let mut best = 0;
        let mut best_deg = lcm_deg(&basis, pairs[0].0, pairs[0].1);
        for (k, &(i, j)) in pairs.iter().enumerate().skip(1) {
            let d = lcm_deg(&basis, i, j);
            if d < best_deg {
                best = k;
                best_deg = d;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        done.insert((i, j));
        let (li, lj) = (basis[i].lead().0, basis[j].lead().0);
        if li.coprime(&lj) {
            continue;
        }
        let lcm = li.lcm(&lj, nvars);
        // chain criterion
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().0.divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }
        // S-polynomial
        let (ci, cj) = (basis[i].lead().1, basis[j].lead().1);
        let mi = lcm.div(&li, nvars);
        let mj = lcm.div(&lj, nvars);
        let scaled_i = GPoly {
            terms: basis[i]
                .terms
                .iter()
                .map(|(m, c)| {
                    (m.mul(&mi, nvars), (*c as u128 * inv_mod(ci, p) as u128 % p as u128) as u64)
                })
                .collect(),
        };
        let spoly = scaled_i.sub_mul(inv_mod(cj, p), &mj, &basis[j], p, nvars);
        let r = normal_form(&spoly, &basis, p, nvars);
        if !r.is_zero() {
            let new = basis.len();
            basis.push(r);
            for k in 0..new {
                pairs.push((k, new));
            }
        }
    }
    GroebnerBasis { basis, nvars, p }
}

impl GroebnerBasis {
    /// Leading-term ideal contains a pure power of every active variable,
    /// i.e. the projective zero locus over the algebraic closure is empty.
    pub fn leading_terms_cover_all_vars(&self, active: &[usize]) -> bool {
        active.iter().all(|&v| {
            self.basis
                .iter()
                .any(|g| g.lead().0.pure_power_var() == Some(v))
        })
    }
}

/// Convert a generic prime-field polynomial to the packed representation.
/// The polynomial may use at most [`MAX_VARS`] distinct variables; `remap`
/// sends original variable indices to packed slots.
pub fn pack_poly(f: &FpPoly, remap: &HashMap<usize, usize>) -> GPoly {
    let nvars = remap.len();
    let mut terms: Vec<(PMono, u64)> = f
        .terms
        .iter()
        .map(|(m, c)| {
            let mut exps = [0u8; MAX_VARS];
            for (orig, &slot) in remap {
                exps[slot] = m.0[*orig];
            }
            (PMono::new(exps, nvars), c.value())
        })
        .collect();
    terms.sort_by(|a, b| b.0.key.cmp(&a.0.key));
    GPoly { terms }
}

/// Variable remap for a set of polynomials: occurring variables in order.
pub fn active_variable_map(polys: &[&FpPoly]) -> HashMap<usize, usize> {
    let mut seen: Vec<usize> = Vec::new();
    for f in polys {
        for m in f.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 && !seen.contains(&i) {
                    seen.push(i);
                }
            }
        }
    }
    seen.sort_unstable();
    assert!(seen.len() <= MAX_VARS, "too many variables for the packed engine");
    seen.into_iter().enumerate().map(|(slot, orig)| (orig, slot)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn packed(s: &str, p: u64, remap: &HashMap<usize, usize>) -> GPoly {
        let f = parse_poly(s).unwrap().reduce_mod_p(p).unwrap();
        pack_poly(&f, remap)
    }

    #[test]
    fn grevlex_key_order() {
        // x^2 > x*y > y^2 > x*z > ... standard grevlex on (x,y,z)
        let mk = |e: [u8; 3]| PMono::new([e[0], e[1], e[2], 0, 0, 0, 0], 3);
        let x2 = mk([2, 0, 0]);
        let xy = mk([1, 1, 0]);
        let y2 = mk([0, 2, 0]);
        let xz = mk([1, 0, 1]);
        let z2 = mk([0, 0, 2]);
        assert!(x2 > xy && xy > y2 && y2 > xz && xz > z2);
    }

    #[test]
    fn circle_line_ideal() {
        let p = 7;
        let fs = [parse_poly("x^2 + y^2 - 1").unwrap().reduce_mod_p(p).unwrap(),
                  parse_poly("x - y").unwrap().reduce_mod_p(p).unwrap()];
        let refs: Vec<&FpPoly> = fs.iter().collect();
        let remap = active_variable_map(&refs);
        let gens = fs.iter().map(|f| pack_poly(f, &remap)).collect();
        let gb = groebner_basis(gens, p, remap.len());
        // ideal is zero-dimensional in the affine sense: 2y^2 = 1
        assert!(gb.basis.len() >= 2);
    }

    #[test]
    fn trivial_ideal_detects_empty_locus() {
        let p = 5;
        let remap: HashMap<usize, usize> = [(0, 0), (1, 1)].into_iter().collect();
        let gens = vec![packed("x", p, &remap), packed("y", p, &remap)];
        let gb = groebner_basis(gens, p, 2);
        assert!(gb.leading_terms_cover_all_vars(&[0, 1]));
    }

    #[test]
    fn common_zero_stays_visible() {
        // x^2 and x*y share the whole line x = 0
        let p = 5;
        let remap: HashMap<usize, usize> = [(0, 0), (1, 1)].into_iter().collect();
        let gens = vec![packed("x^2", p, &remap), packed("x*y", p, &remap)];
        let gb = groebner_basis(gens, p, 2);
        assert!(!gb.leading_terms_cover_all_vars(&[0, 1]));
    }
}
