//! Pfaffians of antisymmetric matrices over any coefficient ring, and the
//! plane-containment test for the resulting cubics.

use std::collections::HashMap;

use crate::poly::{MultiPoly, Ring};
use crate::{Error, Result};

/// Antisymmetric matrix given by its upper triangle.
#[derive(Debug, Clone)]
pub struct PfaffianInput<R: Ring> {
    pub size: usize,
    /// entries[i] holds the entries (i, i+1..n).
    pub entries: Vec<Vec<R>>,
}

impl<R: Ring> PfaffianInput<R> {
    pub fn new(size: usize, entries: Vec<Vec<R>>) -> Result<Self> {
        if size % 2 != 0 {
            return Err(Error::OddPfaffianSize(size));
        }
        if entries.len() != size || entries.iter().enumerate().any(|(i, r)| r.len() != size - 1 - i)
        {
            return Err(Error::Invalid("upper triangle has wrong shape".into()));
        }
        Ok(PfaffianInput { size, entries })
    }

    fn at(&self, i: usize, j: usize) -> Option<R> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => Some(self.entries[i][j - i - 1].clone()),
            Greater => Some(self.entries[j][i - j - 1].neg()),
            Equal => None,
        }
    }
}

/// Pfaffian by recursive expansion along the first remaining row, memoized
/// on the subset of active indices. Satisfies pf(M)^2 = det(M) and
/// pf([[0, a], [-a, 0]]) = a.
pub fn pfaffian<R: Ring>(m: &PfaffianInput<R>) -> Result<R> {
    if m.size % 2 != 0 {
        return Err(Error::OddPfaffianSize(m.size));
    }
    if m.size == 0 {
        return Err(Error::Invalid("empty matrix has no useful pfaffian here".into()));
    }
    let full: u64 = (1 << m.size) - 1;
    let mut memo: HashMap<u64, Option<R>> = HashMap::new();
    fn go<R: Ring>(
        m: &PfaffianInput<R>,
        mask: u64,
        memo: &mut HashMap<u64, Option<R>>,
    ) -> Option<R> {
        if mask == 0 {
            return None; // empty pfaffian = 1, handled by caller
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let idx: Vec<usize> = (0..64).filter(|&b| mask >> b & 1 == 1).collect();
        let first = idx[0];
        let mut acc: Option<R> = None;
        for (pos, &j) in idx.iter().enumerate().skip(1) {
            let a = m.at(first, j).unwrap();
            let sub_mask = mask & !(1 << first) & !(1 << j);
            let contrib = match go(m, sub_mask, memo) {
                None => a,
                Some(pf_sub) => a.mul(&pf_sub),
            };
            // expansion sign: (-1)^{pos+1} with pos the position of j among
            // the active indices
            let signed = if pos % 2 == 1 { contrib } else { contrib.neg() };
            acc = Some(match acc {
                None => signed,
                Some(s) => s.add(&signed),
            });
        }
        memo.insert(mask, acc.clone());
        acc
    }
    go(m, full, &mut memo).ok_or_else(|| Error::Invalid("pfaffian of empty matrix".into()))
}

/// Determinant by Laplace expansion, for the pf^2 = det cross-check.
pub fn det_expansion<R: Ring>(n: usize, at: &impl Fn(usize, usize) -> R) -> Option<R> {
    fn go<R: Ring>(rows: &[usize], cols: &[usize], at: &impl Fn(usize, usize) -> R) -> Option<R> {
        if rows.is_empty() {
            return None; // empty determinant = 1
        }
        let r = rows[0];
        let mut acc: Option<R> = None;
        for (k, &c) in cols.iter().enumerate() {
            let a = at(r, c);
            if a.is_zero() {
                continue;
            }
            let sub_rows = &rows[1..];
            let sub_cols: Vec<usize> =
                cols.iter().copied().filter(|&x| x != c).collect();
            let minor = go(sub_rows, &sub_cols, at);
            let term = match minor {
                None => a,
                Some(d) => a.mul(&d),
            };
            let signed = if k % 2 == 0 { term } else { term.neg() };
            acc = Some(match acc {
                None => signed,
                Some(s) => s.add(&signed),
            });
        }
        acc
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols = rows.clone();
    go(&rows, &cols, at)
}

/// True iff every monomial of F has positive total degree in the given
/// variables, i.e. the zero locus contains the coordinate plane where they
/// vanish.
pub fn contains_plane<R: Ring>(f: &MultiPoly<R>, plane_vars: &[usize]) -> bool {
    f.terms.keys().all(|m| m.degree_in(plane_vars) > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, QPoly};

    fn p(s: &str) -> QPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn two_by_two() {
        let a = p("x + y");
        let m = PfaffianInput::new(2, vec![vec![a.clone()], vec![]]).unwrap();
        assert_eq!(pfaffian(&m).unwrap(), a);
    }

    #[test]
    fn classical_four_by_four() {
        // pf = a12 a34 - a13 a24 + a14 a23 on distinct variables
        let names = ["x", "y", "z", "u", "v", "w"];
        let e: Vec<QPoly> = names.iter().map(|s| p(s)).collect();
        let m = PfaffianInput::new(
            4,
            vec![
                vec![e[0].clone(), e[1].clone(), e[2].clone()],
                vec![e[3].clone(), e[4].clone()],
                vec![e[5].clone()],
                vec![],
            ],
        )
        .unwrap();
        let pf = pfaffian(&m).unwrap();
        let want = p("x*w - y*v + z*u");
        assert_eq!(pf, want);
    }

    #[test]
    fn odd_size_rejected() {
        assert!(matches!(
            PfaffianInput::new(3, vec![vec![p("x"), p("y")], vec![p("z")], vec![]]),
            Err(Error::OddPfaffianSize(3))
        ));
    }

    #[test]
    fn plane_containment() {
        assert!(contains_plane(&p("x*u^2 + y^3"), &[0, 1, 2]));
        assert!(!contains_plane(&p("u^3"), &[0, 1, 2]));
        assert!(contains_plane(&p("x*u^2"), &[0, 1, 2]));
    }
}
