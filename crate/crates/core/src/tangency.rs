//! Tangency of the conic x^2 + yz against the degeneration sextic: the
//! exact identity d = (x^2+yz) f + g^2 and the multiplicity profile of the
//! contact points.

use num_rational::BigRational;
use num_traits::One;

use crate::poly::{squarefree_part, MultiPoly, QPoly, Vars};
use crate::{Error, Result};

/// Exact check of d - conic * f - g^2 = 0.
pub fn verify_tangency(d: &QPoly, conic: &QPoly, f: &QPoly, g: &QPoly) -> bool {
    d.sub(&conic.mul(f)).sub(&g.mul(g)).is_zero()
}

/// Restrict g to the conic through the parametrization
/// (s:t) -> (x,y,z) = (st, s^2, -t^2), which is valid for x^2 + yz.
/// Returns (total degree, number of distinct zeros) of the restriction,
/// the latter as the degree of its squarefree part.
pub fn tangency_points(conic: &QPoly, g: &QPoly) -> Result<(u32, u32)> {
    let vars = Vars::canonical();
    let one = BigRational::one();
    let s = MultiPoly::var(&vars, 6, one.clone());
    let t = MultiPoly::var(&vars, 7, one.clone());
    let images: Vec<QPoly> = (0..vars.len())
        .map(|i| match i {
            0 => s.mul(&t),
            1 => s.mul(&s),
            2 => t.mul(&t).neg(),
            i => MultiPoly::var(&vars, i, one.clone()),
        })
        .collect();
    if !conic.substitute(&images).is_zero() {
        return Err(Error::BadConic);
    }
    let restriction = g.substitute(&images);
    if restriction.is_zero() {
        return Err(Error::ConicContained);
    }
    let total = restriction.total_degree();
    let distinct = squarefree_part(&restriction).total_degree();
    Ok((total, distinct))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> QPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn square_with_zero_f() {
        let g = p("x^3 - y*z^2");
        let d = g.mul(&g);
        assert!(verify_tangency(&d, &p("x^2 + y*z"), &QPoly::zero(&d.vars), &g));
    }

    #[test]
    fn perturbation_breaks_identity() {
        let g = p("x^3");
        let d = g.mul(&g);
        let g_bad = g.add(&p("y^3"));
        assert!(!verify_tangency(&d, &p("x^2 + y*z"), &QPoly::zero(&d.vars), &g_bad));
    }

    #[test]
    fn cube_of_st_has_two_distinct_roots() {
        // g = (xy)^... restriction of g = x^3 is (st)^3: roots s, t
        let (total, distinct) = tangency_points(&p("x^2 + y*z"), &p("x^3")).unwrap();
        assert_eq!((total, distinct), (6, 2));
    }

    #[test]
    fn y_cubed_restricts_to_s_sixth() {
        let (total, distinct) = tangency_points(&p("x^2 + y*z"), &p("y^3")).unwrap();
        assert_eq!((total, distinct), (6, 1));
    }

    #[test]
    fn wrong_conic_rejected() {
        assert!(matches!(
            tangency_points(&p("x^2 + y^2"), &p("x^3")),
            Err(Error::BadConic)
        ));
    }

    #[test]
    fn conic_inside_zero_locus_rejected() {
        assert!(matches!(
            tangency_points(&p("x^2 + y*z"), &p("x^2 + y*z")),
            Err(Error::ConicContained)
        ));
    }
}
