//! Jacobian-criterion smoothness over prime fields, and the bad-prime scan
//! for the degeneration sextic. Smoothness of the reduction mod p
//! certifies smoothness of the rational hypersurface.

use serde::Serialize;

use crate::groebner::{active_variable_map, groebner_basis, pack_poly};
use crate::poly::{FpPoly, QPoly};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothness {
    CertifiedSmooth,
    SingularModP,
    Inconclusive,
}

/// Groebner emptiness test for the projective singular locus of F mod p,
/// inside the projective space on `ambient` variables.
/// `certified_smooth` means the rational hypersurface is smooth.
pub fn is_smooth_hypersurface(f: &QPoly, ambient: &[usize], p: u64) -> Result<Smoothness> {
    let fp = f.reduce_mod_p(p)?;
    if fp.is_zero() {
        return Err(Error::ZeroModP(p));
    }
    // a hypersurface missing an ambient variable is a cone: the missing
    // coordinate point is singular (degree >= 2)
    let occurs = |i: usize| f.terms.keys().any(|m| m.0[i] > 0);
    if f.total_degree() >= 2 && ambient.iter().any(|&i| !occurs(i)) {
        return Ok(Smoothness::SingularModP);
    }
    let mut system = vec![fp];
    for &i in ambient {
        let di = f.derivative(i);
        let dip = di.reduce_mod_p(p)?;
        if !di.is_zero() && dip.is_zero() {
            return Err(Error::PrimeKillsPartial(p));
        }
        system.push(dip);
    }
    let refs: Vec<&FpPoly> = system.iter().collect();
    let remap = active_variable_map(&refs);
    let gens = system.iter().map(|q| pack_poly(q, &remap)).collect();
    let gb = groebner_basis(gens, p, remap.len());
    let slots: Vec<usize> = ambient.iter().map(|v| remap[v]).collect();
    if gb.leading_terms_cover_all_vars(&slots) {
        Ok(Smoothness::CertifiedSmooth)
    } else {
        Ok(Smoothness::SingularModP)
    }
}

/// First odd prime below `bound` whose reduction certifies smoothness,
/// skipping primes that kill coefficients.
pub fn smallest_certifying_prime(f: &QPoly, ambient: &[usize], bound: u64) -> Option<u64> {
    odd_primes(bound)
        .find(|&p| matches!(is_smooth_hypersurface(f, ambient, p), Ok(Smoothness::CertifiedSmooth)))
}

/// True iff the plane curve d mod p has a singular point over the
/// algebraic closure (d and its three partials share a projective zero).
pub fn plane_curve_singular_mod_p(d: &QPoly, p: u64) -> Result<bool> {
    Ok(matches!(
        is_smooth_hypersurface(d, &[0, 1, 2], p)?,
        Smoothness::SingularModP
    ))
}

/// All odd primes p <= bound where the curve acquires a singular point.
pub fn bad_primes_scan(d: &QPoly, bound: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for p in odd_primes(bound + 1) {
        match plane_curve_singular_mod_p(d, p) {
            Ok(true) => out.push(p),
            Ok(false) => {}
            // primes dividing the content are reported as bad input, not
            // bad reduction; the scan skips them
            Err(Error::ZeroModP(_)) | Err(Error::PrimeKillsPartial(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn odd_primes(bound: u64) -> impl Iterator<Item = u64> {
    (3..bound).filter(|&n| n % 2 == 1 && is_prime_u64(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    const P5: [usize; 6] = [0, 1, 2, 3, 4, 5];
    const P2: [usize; 3] = [0, 1, 2];

    fn p(s: &str) -> QPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn fermat_cubic_smooth_mod_7() {
        let f = p("x^3 + y^3 + z^3 + u^3 + v^3 + w^3");
        assert_eq!(is_smooth_hypersurface(&f, &P5, 7).unwrap(), Smoothness::CertifiedSmooth);
    }

    #[test]
    fn cone_in_six_variables_is_singular() {
        let f = p("x^3 + y^3 + z^3");
        assert_eq!(is_smooth_hypersurface(&f, &P5, 7).unwrap(), Smoothness::SingularModP);
        // the same equation as a plane curve is smooth
        assert_eq!(is_smooth_hypersurface(&f, &P2, 7).unwrap(), Smoothness::CertifiedSmooth);
    }

    #[test]
    fn fermat_sextic_good_at_five() {
        let f = p("x^6 + y^6 + z^6");
        assert!(!plane_curve_singular_mod_p(&f, 5).unwrap());
        assert_eq!(bad_primes_scan(&f, 100).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn nodal_cubic_detected() {
        let f = p("y^2*z - x^3 - x^2*z");
        assert!(plane_curve_singular_mod_p(&f, 7).unwrap());
    }

    #[test]
    fn prime_killing_content_is_an_error() {
        let f = p("5*x^2 + 5*y^2 + 5*z^2");
        assert!(matches!(is_smooth_hypersurface(&f, &P2, 5), Err(Error::ZeroModP(5))));
    }

    #[test]
    fn certifying_prime_scan() {
        let f = p("x^6 + y^6 + z^6");
        // singular exactly at p | 6, so 5 certifies
        assert_eq!(smallest_certifying_prime(&f, &P2, 100), Some(5));
    }
}
