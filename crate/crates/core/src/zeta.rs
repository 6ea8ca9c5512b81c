//! Point counting on the double cover of the plane branched along a
//! sextic, Lefschetz traces, reconstruction of the degree-22 Frobenius
//! characteristic polynomial from eleven counts, and the root-of-unity
//! bound on the Picard rank.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::gf::{FqField, ZERO};
use crate::poly::QPoly;
use crate::{Error, Result};

/// #S(F_q) = sum over P^2(F_q) of 1 + chi(d(P)), with chi(0) = 0 encoding
/// the one-point branch fiber. Well defined because deg d is even. The
/// x-slice loop partitions across `threads` workers; the result does not
/// depend on the partition.
pub fn count_points_double_cover(d: &QPoly, field: &FqField, threads: usize) -> Result<u64> {
    if field.p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !d.is_homogeneous() || d.total_degree() != 6 {
        return Err(Error::WrongDegree(6, d.total_degree()));
    }
    let dp = d.reduce_mod_p(field.p)?;
    if dp.is_zero() {
        return Err(Error::ZeroModP(field.p));
    }
    // coefficient grid c[i][j][k] for x^i y^j z^k, embedded as log-reps
    let mut grid = [[[ZERO; 7]; 7]; 7];
    for (m, c) in &dp.terms {
        let (i, j, k) = (m.0[0] as usize, m.0[1] as usize, m.0[2] as usize);
        if m.degree_in(&[3, 4, 5, 6, 7]) > 0 {
            return Err(Error::Invalid("sextic must involve only x, y, z".into()));
        }
        grid[i][j][k] = field.from_int(c.value() as i64);
    }

    let q = field.q;
    let q1 = (q - 1) as u32;

    // chart [1 : y : z]: coefficients in (y, z) with x = 1
    let mut yz = [[ZERO; 7]; 7];
    for (j, row) in yz.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            let mut acc = ZERO;
            for i in 0..7 {
                acc = field.add(acc, grid[i][j][k]);
            }
            *cell = acc;
        }
    }

    let threads = threads.max(1);
    let total_y = q; // y ranges over all field elements
    let chunk = total_y.div_ceil(threads as u64);
    let mut partials = vec![0u64; threads];
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (w, slot) in partials.iter_mut().enumerate() {
            let lo = (w as u64) * chunk;
            let hi = ((w as u64 + 1) * chunk).min(total_y);
            let yz = &yz;
            handles.push(scope.spawn(move || {
                let mut cnt = 0u64;
                for y_idx in lo..hi {
                    let y = if y_idx == 0 { ZERO } else { (y_idx - 1) as u32 };
                    // c_k(y) by Horner over j
                    let mut c = [ZERO; 7];
                    for (k, ck) in c.iter_mut().enumerate() {
                        let mut acc = yz[6][k];
                        for j in (0..6).rev() {
                            acc = field.add(field.mul(acc, y), yz[j][k]);
                        }
                        *ck = acc;
                    }
                    // z = 0
                    cnt += tally(c[0]);
                    // z = g^kz
                    for kz in 0..q1 {
                        let mut acc = c[6];
                        for ck in c[..6].iter().rev() {
                            let shifted = if acc == ZERO {
                                ZERO
                            } else {
                                let s = acc + kz;
                                if s >= q1 {
                                    s - q1
                                } else {
                                    s
                                }
                            };
                            acc = field.add(shifted, *ck);
                        }
                        cnt += tally(acc);
                    }
                }
                *slot = cnt;
            }));
        }
        for h in handles {
            h.join().expect("worker panicked");
        }
    });
    let mut count: u64 = partials.iter().sum();

    // chart [0 : 1 : z]
    let line = {
        let mut c = [ZERO; 7];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = grid[0][6 - k][k];
        }
        c
    };
    for z in field.elements() {
        let mut acc = line[6];
        for ck in line[..6].iter().rev() {
            acc = field.add(field.mul(acc, z), *ck);
        }
        count += tally(acc);
    }
    // chart [0 : 0 : 1]
    count += tally(grid[0][0][6]);
    Ok(count)
}

#[inline]
fn tally(v: u32) -> u64 {
    if v == ZERO {
        1
    } else if v % 2 == 0 {
        2
    } else {
        0
    }
}

/// Lefschetz traces on degree-2 cohomology: t_n = #S(F_{p^n}) - 1 - p^{2n}.
pub fn traces_from_counts(counts: &[u64], p: u64) -> Vec<i128> {
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let n = (i + 1) as u32;
            c as i128 - 1 - (p as i128).pow(2 * n)
        })
        .collect()
}

/// Elementary symmetric functions e_1..e_m from power sums via Newton's
/// identities; errors if any fails to be an integer.
pub fn newton_elementary(traces: &[i128]) -> Result<Vec<BigInt>> {
    let mut e: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..=traces.len() {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * BigRational::from(BigInt::from(traces[i - 1]));
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRational::from(BigInt::from(k as i64)));
    }
    e[1..]
        .iter()
        .map(|v| {
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::NoCharpolyCandidate)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Charpoly {
    /// Ascending integer coefficients of phi, degree 22 (index = power).
    pub phi: Vec<String>,
    /// Ascending rational coefficients of the normalization
    /// p^{-22} phi(p t).
    pub phi_tilde: Vec<String>,
    pub epsilon: i8,
    #[serde(skip)]
    pub phi_int: Vec<BigInt>,
    #[serde(skip)]
    pub phi_tilde_rat: Vec<BigRational>,
}

/// Reconstruct the degree-22 characteristic polynomial from exactly 11
/// traces: Newton's identities fill the top half, the functional equation
/// c_j = eps p^{22-2j} c_{22-j} the bottom. Both signs are attempted; a
/// candidate survives integrality, the forced root at t = p, and the Weil
/// modulus check. Exactly one must survive.
pub fn charpoly_from_traces(traces: &[i128], p: u64) -> Result<Charpoly> {
    if traces.len() != 11 {
        return Err(Error::TraceCount(traces.len()));
    }
    let e = newton_elementary(traces)?;
    let mut survivors = Vec::new();
    for eps in [1i8, -1] {
        if let Some(c) = candidate(&e, p, eps) {
            if gates(&c, p) {
                survivors.push((eps, c));
            }
        }
    }
    match survivors.len() {
        0 => Err(Error::NoCharpolyCandidate),
        1 => {
            let (eps, phi_int) = survivors.pop().unwrap();
            let phi_tilde_rat = normalize(&phi_int, p);
            Ok(Charpoly {
                phi: phi_int.iter().map(|c| c.to_string()).collect(),
                phi_tilde: phi_tilde_rat.iter().map(|c| c.to_string()).collect(),
                epsilon: eps,
                phi_int,
                phi_tilde_rat,
            })
        }
        _ => Err(Error::AmbiguousCharpoly),
    }
}

/// Ascending coefficients c_0..c_22 for one sign of the functional
/// equation, or None when the sign is immediately inconsistent.
fn candidate(e: &[BigInt], p: u64, eps: i8) -> Option<Vec<BigInt>> {
    let mut c = vec![BigInt::zero(); 23];
    // top half: coefficient of t^{22-k} is (-1)^k e_k
    c[22] = BigInt::one();
    for k in 1..=11 {
        let v = if k % 2 == 1 { -e[k - 1].clone() } else { e[k - 1].clone() };
        c[22 - k] = v;
    }
    if eps == -1 && !c[11].is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    for j in 0..11 {
        let scale = pb.pow(22 - 2 * j as u32);
        let v = &c[22 - j] * &scale;
        c[j] = if eps == 1 { v } else { -v };
    }
    Some(c)
}

fn gates(c: &[BigInt], p: u64) -> bool {
    // forced root at t = p (the hyperplane class contributes a Tate class)
    let pb = BigInt::from(p);
    let mut acc = BigInt::zero();
    let mut pw = BigInt::one();
    for coeff in c {
        acc += coeff * &pw;
        pw *= &pb;
    }
    if !acc.is_zero() {
        return false;
    }
    // all roots of the normalization on the unit circle within 1e-6;
    // multiplicities are stripped first (exact univariate gcd) so the
    // numeric solver only sees simple roots
    let tilde = normalize(c, p);
    let simple = uni_squarefree(&tilde);
    let coeffs: Vec<f64> = simple.iter().map(|v| v.to_f64().unwrap()).collect();
    let Some(roots) = durand_kerner(&coeffs) else {
        return false;
    };
    roots.iter().all(|r| (r.norm() - 1.0).abs() < 1e-6)
}

fn uni_deriv(a: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from(BigInt::from(i as i64)))
        .collect()
}

fn uni_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = b.iter().rposition(|c| !c.is_zero()).expect("nonzero divisor");
    let mut r = a.to_vec();
    loop {
        let Some(dr) = r.iter().rposition(|c| !c.is_zero()) else {
            return vec![];
        };
        if dr < db {
            r.truncate(dr + 1);
            return r;
        }
        let f = &r[dr] / &b[db];
        for i in 0..=db {
            let sub = &f * &b[i];
            r[dr - db + i] -= sub;
        }
    }
}

fn uni_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    loop {
        if b.iter().all(|c| c.is_zero()) || b.is_empty() {
            // monic normalization
            let da = a.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
            let lead = a[da].clone();
            if !lead.is_zero() {
                for c in &mut a {
                    *c /= lead.clone();
                }
            }
            return a;
        }
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
}

fn uni_div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = b.iter().rposition(|c| !c.is_zero()).expect("nonzero");
    let da = a.iter().rposition(|c| !c.is_zero()).expect("nonzero");
    let mut rem = a.to_vec();
    let mut quot = vec![BigRational::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let f = &rem[k + db] / &b[db];
        quot[k] = f.clone();
        for i in 0..=db {
            let sub = &f * &b[i];
            rem[k + i] -= sub;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

fn uni_squarefree(a: &[BigRational]) -> Vec<BigRational> {
    let deg = a.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    if deg <= 1 {
        return a.to_vec();
    }
    let g = uni_gcd(a, &uni_deriv(a));
    let dg = g.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    if dg == 0 {
        return a.to_vec();
    }
    uni_div_exact(a, &g)
}

/// phi_tilde coefficients: c_j p^{j-22}.
fn normalize(c: &[BigInt], p: u64) -> Vec<BigRational> {
    let pb = BigInt::from(p);
    (0..c.len())
        .map(|j| {
            let num = &c[j] * pb.pow(j as u32);
            BigRational::new(num, pb.pow(22))
        })
        .collect()
}

/// Durand-Kerner on an ascending-coefficient polynomial (leading
/// coefficient nonzero). None if the iteration fails to settle.
pub fn durand_kerner(coeffs: &[f64]) -> Option<Vec<Complex64>> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Some(vec![]);
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex64> =
        coeffs.iter().map(|&c| Complex64::new(c / lead, 0.0)).collect();
    let eval = |x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..1000 {
        let mut max_delta = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-300 {
                return None;
            }
            let delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            max_delta = max_delta.max(delta.norm());
        }
        if max_delta < 1e-12 {
            return Some(roots);
        }
    }
    // multiple roots converge linearly; accept if residuals are tiny
    if roots.iter().all(|&r| eval(r).norm() < 1e-8) {
        Some(roots)
    } else {
        None
    }
}

/// Euler phi, by trial division.
fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Cyclotomic polynomial, ascending integer coefficients (memo-free; k is
/// small).
pub fn cyclotomic_poly(k: u64) -> Vec<BigInt> {
    // t^k - 1 divided by all proper-divisor cyclotomics
    let mut num = vec![BigInt::zero(); k as usize + 1];
    num[0] = -BigInt::one();
    num[k as usize] = BigInt::one();
    for d in 1..k {
        if k % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = div_exact_int(&num, &phi_d).expect("cyclotomic divides");
        }
    }
    num
}

fn div_exact_int(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.iter().rposition(|c| !c.is_zero())?;
    let da = a.iter().rposition(|c| !c.is_zero())?;
    if da < db {
        return None;
    }
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let top = rem[k + db].clone();
        if top.is_zero() {
            continue;
        }
        let (q, r) = num_integer::div_rem(top, b[db].clone());
        if !r.is_zero() {
            return None;
        }
        quot[k] = q.clone();
        for i in 0..=db {
            let sub = &q * &b[i];
            rem[k + i] -= sub;
        }
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(quot)
}

/// Number of roots (with multiplicity) of a rational-coefficient
/// polynomial that are roots of unity: denominators are cleared and every
/// cyclotomic of degree at most deg is divided out to its multiplicity.
pub fn cyclotomic_root_count(poly: &[BigRational]) -> u32 {
    let deg = match poly.iter().rposition(|c| !c.is_zero()) {
        Some(d) => d,
        None => return 0,
    };
    // clear denominators
    let mut lcm = BigInt::one();
    for c in poly {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let mut p: Vec<BigInt> = poly
        .iter()
        .take(deg + 1)
        .map(|c| (c * BigRational::from(lcm.clone())).to_integer())
        .collect();
    let mut count = 0u32;
    for k in 1..=(2 * (deg as u64) * (deg as u64)).max(2) {
        if euler_phi(k) > deg as u64 {
            continue;
        }
        let phi_k = cyclotomic_poly(k);
        while let Some(q) = div_exact_int(&p, &phi_k) {
            count += euler_phi(k) as u32;
            p = q;
        }
    }
    count
}

/// Everything the verification needs about the zeta side.
#[derive(Debug, Clone, Serialize)]
pub struct ZetaData {
    pub p: u64,
    pub counts: Vec<u64>,
    pub traces: Vec<i128>,
    pub charpoly: Charpoly,
    pub picard_bound: u32,
}

/// Bound the geometric Picard rank: the number of Frobenius eigenvalues of
/// the form p * (root of unity), i.e. roots of unity of the normalized
/// characteristic polynomial.
pub fn picard_bound(charpoly: &Charpoly) -> u32 {
    cyclotomic_root_count(&charpoly.phi_tilde_rat)
}

pub fn assemble_zeta(counts: &[u64], p: u64) -> Result<ZetaData> {
    let traces = traces_from_counts(counts, p);
    let charpoly = charpoly_from_traces(&traces, p)?;
    let bound = picard_bound(&charpoly);
    Ok(ZetaData { p, counts: counts.to_vec(), traces, charpoly, picard_bound: bound })
}

/// The expected normalized characteristic polynomial of the bundled
/// example: (1/3)(t-1)^2 * (degree-20 factor), ascending coefficients.
pub fn expected_phi_tilde() -> Vec<BigRational> {
    let deg20: Vec<BigRational> = crate::fixture::PHI_TILDE_DEG20_ASCENDING
        .iter()
        .map(|&c| BigRational::from(BigInt::from(c)))
        .collect();
    // multiply by (t-1)^2 = t^2 - 2t + 1
    let mut out = vec![BigRational::zero(); 23];
    for (i, c) in deg20.iter().enumerate() {
        out[i] += c;
        out[i + 1] -= BigRational::from(BigInt::from(2)) * c;
        out[i + 2] += c;
    }
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    out.iter().map(|c| c * &third).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn x_sixth_count_formula() {
        // d = x^6: chi = 1 exactly on the q^2 points with x != 0
        let d = parse_poly("x^6").unwrap();
        for (p, n) in [(3u64, 1u32), (3, 2), (5, 1), (7, 1)] {
            let f = FqField::new(p, n).unwrap();
            let c = count_points_double_cover(&d, &f, 2).unwrap();
            assert_eq!(c, 2 * f.q * f.q + f.q + 1, "p={p} n={n}");
        }
    }

    #[test]
    fn thread_count_invariance() {
        let d = parse_poly(crate::fixture::SEXTIC_D).unwrap();
        let f = FqField::new(3, 3).unwrap();
        let c1 = count_points_double_cover(&d, &f, 1).unwrap();
        let c3 = count_points_double_cover(&d, &f, 3).unwrap();
        let c8 = count_points_double_cover(&d, &f, 8).unwrap();
        assert_eq!(c1, c3);
        assert_eq!(c1, c8);
    }

    #[test]
    fn char_two_rejected() {
        let d = parse_poly("x^6").unwrap();
        let f = FqField::new(2, 1).unwrap();
        assert!(matches!(
            count_points_double_cover(&d, &f, 1),
            Err(Error::EvenCharacteristic)
        ));
    }

    #[test]
    fn traces_all_eigenvalues_p() {
        // count = 1 + p^2 + 22 p gives t_1 = 22 p
        let t = traces_from_counts(&[1 + 9 + 66], 3);
        assert_eq!(t, vec![66]);
    }

    #[test]
    fn constant_eigenvalue_polynomial_roundtrip() {
        // all 22 eigenvalues equal to p: s_n = 22 p^n
        let p = 3u64;
        let traces: Vec<i128> = (1..=11).map(|n| 22 * (p as i128).pow(n)).collect();
        let cp = charpoly_from_traces(&traces, p).unwrap();
        // phi = (t - p)^22, so phi_tilde = (t-1)^22
        let expect_tilde: Vec<BigRational> = (0..=22)
            .map(|j| {
                let b = num_integer::binomial(BigInt::from(22), BigInt::from(j));
                let sign = if (22 - j) % 2 == 0 { 1 } else { -1 };
                BigRational::from(b * BigInt::from(sign))
            })
            .collect();
        assert_eq!(cp.phi_tilde_rat, expect_tilde);
        assert_eq!(picard_bound(&cp), 22);
    }

    #[test]
    fn cyclotomic_counts() {
        // Phi_12 = t^4 - t^2 + 1
        let phi12 = cyclotomic_poly(12);
        let want: Vec<BigInt> =
            [1i64, 0, -1, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(phi12, want);
        let as_rat: Vec<BigRational> =
            phi12.iter().map(|c| BigRational::from(c.clone())).collect();
        assert_eq!(cyclotomic_root_count(&as_rat), 4);
        // t^2 - 2 has no roots of unity
        let t2m2: Vec<BigRational> = [-2i64, 0, 1]
            .iter()
            .map(|&c| BigRational::from(BigInt::from(c)))
            .collect();
        assert_eq!(cyclotomic_root_count(&t2m2), 0);
    }

    #[test]
    fn expected_phi_tilde_shape() {
        let pt = expected_phi_tilde();
        assert_eq!(pt.len(), 23);
        assert_eq!(pt[22], BigRational::one());
        assert_eq!(pt[0], BigRational::one());
        assert_eq!(cyclotomic_root_count(&pt), 2);
    }
}
