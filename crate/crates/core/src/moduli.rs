//! Classification of the rank-3 lattices carrying both a plane class and a
//! quintic del Pezzo class, together with the parity criteria that decide
//! the Clifford invariant and the identification of the tangent-conic
//! component.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::fqf::FiniteQuadraticForm;
use crate::lattice::{canonical_sign, GramLattice, Sublattice};
use crate::mat::IVec;
use crate::{Error, Result};

/// The rank-3 lattice on (h^2, P, T) with P.T = tau.
#[derive(Debug, Clone)]
pub struct ATau {
    pub tau: i64,
    pub lattice: GramLattice,
    /// Coordinates of Q = h^2 - P.
    pub q_class: IVec,
}

pub fn a_tau(tau: i64) -> ATau {
    let lattice = GramLattice::new(
        vec![
            vec![BigInt::from(3), BigInt::from(1), BigInt::from(4)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(tau)],
            vec![BigInt::from(4), BigInt::from(tau), BigInt::from(10)],
        ],
        Some(vec!["h2".into(), "P".into(), "T".into()]),
    )
    .expect("symmetric by construction");
    debug_assert_eq!(
        lattice.discriminant(),
        BigInt::from(-3 * tau * tau + 8 * tau + 32)
    );
    ATau {
        tau,
        lattice,
        q_class: vec![BigInt::one(), BigInt::from(-1), BigInt::zero()],
    }
}

/// The sublattice orthogonal to h^2, on the basis (1,-3,0), (0,-4,1).
pub fn a_tau0(tau: i64) -> Sublattice {
    a_tau(tau)
        .lattice
        .sublattice(vec![
            vec![BigInt::one(), BigInt::from(-3), BigInt::zero()],
            vec![BigInt::zero(), BigInt::from(-4), BigInt::one()],
        ])
        .expect("independent basis")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OverlatticeStatus {
    NoneExist,
    AllHaveLongRoots,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscGroupReport {
    pub elementary_divisors: Vec<u64>,
    pub primary_decomposition: Vec<u64>,
    pub q_of_generators: Vec<String>,
    /// Order of the discriminant group of the auxiliary even Gram
    /// g g^T - G itself (always twice |disc|); recorded because the two
    /// natural readings of "discriminant form" differ and only the
    /// restricted one reproduces the published table.
    pub even_gram_group_order: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OverlatticeWitness {
    pub gram: Vec<Vec<i64>>,
    pub discriminant: i64,
    pub long_roots: Vec<Vec<i64>>,
    pub short_roots: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub tau: i64,
    pub discriminant: i64,
    pub positive_definite: bool,
    pub short_root_witnesses: Vec<Vec<i64>>,
    pub long_root_witnesses: Vec<Vec<i64>>,
    pub evenness_checks: (bool, bool),
    pub disc_group: Option<DiscGroupReport>,
    pub signature_mod8: Option<u8>,
    pub overlattice_status: OverlatticeStatus,
    pub overlattice_witnesses: Vec<OverlatticeWitness>,
    pub admissible: bool,
    pub notes: Vec<String>,
}

fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|e| e.to_i64().expect("small witness coordinate")).collect()
}

/// Both evenness identities, verified on the Gram matrix directly.
///
/// First: the induced form on the h^2-orthogonal basis is even (all
/// induced Gram diagonal entries even; the diagonal works out to
/// (24, 58 - 8 tau)). Second: (h^2,w)^2 - (w,w) is even, i.e. the modified
/// Gram G e1 e1^T G - G has even diagonal.
pub fn evenness_checks(tau: i64) -> (bool, bool) {
    let sub = a_tau0(tau);
    let induced = sub.induced_gram();
    let first = (0..induced.rows).all(|i| induced[(i, i)].is_even());
    let modified = even_auxiliary_gram(&a_tau(tau).lattice);
    let second = (0..modified.rank()).all(|i| modified.gram()[(i, i)].is_even());
    (first, second)
}

/// Gram matrix of the even auxiliary form B(v,w) = (h,v)(h,w) - (v,w),
/// where h is the first basis vector.
pub fn even_auxiliary_gram(l: &GramLattice) -> GramLattice {
    let n = l.rank();
    let g = l.gram();
    let h_pair: Vec<BigInt> = (0..n).map(|j| g[(0, j)].clone()).collect();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| &h_pair[i] * &h_pair[j] - &g[(i, j)]).collect())
        .collect();
    GramLattice::new(rows, None).expect("symmetric")
}

/// The finite quadratic form on A*/A used for the signature condition:
/// group structure from the Gram matrix of A_tau, quadratic form from the
/// even auxiliary form (h,x)^2 - (x,x), evaluated on rational
/// representatives.
pub fn q_ktau(tau: i64) -> Result<FiniteQuadraticForm> {
    let l = a_tau(tau).lattice;
    let (divisors, gens) = l.dual_quotient_generators()?;
    let gq = l.gram().to_rational();
    let qv = |x: &[BigRational]| -> BigRational {
        let gx = gq.mul_vec(x);
        let h_pair = gx[0].clone(); // (h, x) = e1^T G x
        let norm: BigRational = x.iter().zip(&gx).map(|(a, b)| a * b).sum();
        &h_pair * &h_pair - norm
    };
    let bv = |x: &[BigRational], y: &[BigRational]| -> BigRational {
        let gy = gq.mul_vec(y);
        let gx = gq.mul_vec(x);
        let pair: BigRational = x.iter().zip(&gy).map(|(a, b)| a * b).sum();
        &gx[0] * &gy[0] - pair
    };
    let q_gen: Vec<BigRational> = gens.iter().map(|g| qv(g)).collect();
    let b_gen: Vec<Vec<BigRational>> =
        gens.iter().map(|gi| gens.iter().map(|gj| bv(gi, gj)).collect()).collect();
    Ok(FiniteQuadraticForm::from_generators(divisors, gens, q_gen, b_gen))
}

/// Norm-6 vectors of the h^2-orthogonal sublattice that stay 3-divisible
/// against every dual vector orthogonal to h^2.
///
/// Pairing against the sublattice basis alone is not enough: the ambient
/// middle-cohomology lattice is unimodular, so it projects onto the full
/// dual of A_tau, and a root must pair into 3Z with all of
/// {w in A*: (w,h)=0}. In coordinates with h = e1 this says the second and
/// third coordinates are divisible by 3. The weaker basis-only test would
/// wrongly flag tau = -1 and tau = 2.
pub fn h_relative_long_roots(tau: i64) -> Result<Vec<IVec>> {
    let sub = a_tau0(tau);
    let three = BigInt::from(3);
    Ok(sub
        .vectors_of_norm(6)?
        .into_iter()
        .filter(|v| {
            v.iter()
                .skip(1)
                .all(|c| c.mod_floor(&three).is_zero())
        })
        .collect())
}

fn overlattice_analysis(tau: i64) -> Result<(OverlatticeStatus, Vec<OverlatticeWitness>)> {
    let disc = BigInt::from(-3 * tau * tau + 8 * tau + 32);
    if is_squarefree(&disc.abs()) {
        return Ok((OverlatticeStatus::NoneExist, vec![]));
    }
    let binary = a_tau0(tau).induced_lattice();
    let overs = binary.proper_overlattices()?;
    if overs.is_empty() {
        return Ok((OverlatticeStatus::NoneExist, vec![]));
    }
    let mut witnesses = Vec::new();
    for b0 in &overs {
        let longs = b0.as_sublattice().long_roots()?;
        let shorts = b0.as_sublattice().short_roots()?;
        witnesses.push(OverlatticeWitness {
            gram: (0..b0.rank())
                .map(|i| {
                    (0..b0.rank())
                        .map(|j| b0.gram()[(i, j)].to_i64().expect("small"))
                        .collect()
                })
                .collect(),
            discriminant: b0.discriminant().to_i64().expect("small"),
            long_roots: longs.iter().map(|v| small(v)).collect(),
            short_roots: shorts.iter().map(|v| small(v)).collect(),
        });
    }
    if witnesses.iter().all(|w| !w.long_roots.is_empty()) {
        Ok((OverlatticeStatus::AllHaveLongRoots, witnesses))
    } else {
        Err(Error::Invalid(format!(
            "tau={tau}: an overlattice without long roots would break irreducibility"
        )))
    }
}

fn is_squarefree(n: &BigInt) -> bool {
    let mut n = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            n /= &p;
            if (&n % &p).is_zero() {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Scan the positivity window of the discriminant -3 tau^2 + 8 tau + 32 and
/// build a full report for every tau, marking exactly which are admissible.
pub fn classify_components() -> Result<Vec<ComponentReport>> {
    let mut out = Vec::new();
    for tau in -2..=4i64 {
        let at = a_tau(tau);
        let disc = at.lattice.discriminant();
        debug_assert!(disc.is_positive());
        let pd = at.lattice.is_positive_definite();
        let sub = a_tau0(tau);
        let shorts = sub.short_roots()?;
        let longs = h_relative_long_roots(tau)?;
        let (even1, even2) = evenness_checks(tau);
        let dgq = q_ktau(tau)?;
        let sig = dgq.milgram_signature()?;
        let even_gram = even_auxiliary_gram(&at.lattice);
        let even_group_order = even_gram
            .discriminant()
            .abs()
            .to_u64()
            .expect("small");
        let (status, witnesses) = overlattice_analysis(tau)?;
        let mut notes = vec![
            "evenness of (h,w)^2-(w,w) computed from the Gram matrix; the z^2 coefficient is 3, \
             not 1 as sometimes transcribed"
                .to_string(),
        ];
        notes.push(format!(
            "discriminant form of the auxiliary even Gram itself has group order {} = 2*|disc|; \
             only its restriction to A*/A (order {}) matches the published table",
            even_group_order,
            dgq.order()
        ));
        let admissible =
            pd && shorts.is_empty() && longs.is_empty() && even1 && even2 && sig % 8 == 0;
        out.push(ComponentReport {
            tau,
            discriminant: disc.to_i64().expect("small"),
            positive_definite: pd,
            short_root_witnesses: shorts.iter().map(|v| small(v)).collect(),
            long_root_witnesses: longs.iter().map(|v| small(v)).collect(),
            evenness_checks: (even1, even2),
            disc_group: Some(DiscGroupReport {
                elementary_divisors: dgq.divisors.clone(),
                primary_decomposition: dgq.primary_decomposition(),
                q_of_generators: dgq.q_gen.iter().map(|q| q.to_string()).collect(),
                even_gram_group_order: even_group_order,
            }),
            signature_mod8: Some(sig),
            overlattice_status: status,
            overlattice_witnesses: witnesses,
            admissible,
            notes,
        });
    }
    Ok(out)
}

/// The probe lattice on (h^2, Q, R) parametrized by the two free
/// intersection numbers.
#[derive(Debug, Clone)]
pub struct RQProbe {
    pub x: BigInt,
    pub y: BigInt,
}

impl RQProbe {
    pub fn gram(&self) -> GramLattice {
        GramLattice::new(
            vec![
                vec![BigInt::from(3), BigInt::from(2), self.x.clone()],
                vec![BigInt::from(2), BigInt::from(4), BigInt::one()],
                vec![self.x.clone(), BigInt::one(), self.y.clone()],
            ],
            Some(vec!["h2".into(), "Q".into(), "R".into()]),
        )
        .expect("symmetric")
    }
}

/// Determinant of the probe Gram reduced mod 8. Always 5: the determinant
/// is 8y - 3 + 4x(1-x) and x(1-x) is even.
pub fn rq_obstruction_det(probe: &RQProbe) -> u8 {
    let det = probe.gram().discriminant();
    det.mod_floor(&BigInt::from(8)).to_u8().expect("residue")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CliffordParity {
    Trivial,
    Nontrivial,
}

#[derive(Debug, Clone, Serialize)]
pub struct CliffordParityReport {
    pub tau: i64,
    pub parity: CliffordParity,
    /// (P+T).Q computed from the Gram with Q = h^2 - P; equals 2 - tau.
    pub intersection_witness: i64,
    pub note: String,
}

/// Parity of the Clifford invariant on the component: trivial iff tau is
/// odd. Errors on a tau outside the admissible set.
pub fn clifford_parity(tau: i64) -> Result<CliffordParityReport> {
    if !(-1..=3).contains(&tau) {
        return Err(Error::InadmissibleTau(tau));
    }
    let at = a_tau(tau);
    let p_plus_t: IVec = vec![BigInt::zero(), BigInt::one(), BigInt::one()];
    let w = at.lattice.pairing(&p_plus_t, &at.q_class);
    let parity = if tau % 2 != 0 {
        CliffordParity::Trivial
    } else {
        CliffordParity::Nontrivial
    };
    debug_assert_eq!(w, BigInt::from(2 - tau));
    Ok(CliffordParityReport {
        tau,
        parity,
        intersection_witness: w.to_i64().expect("small"),
        note: "direct Gram arithmetic gives (P+T).Q = 2 - tau, differing from the quoted -tau; \
               the parity, which is all the criterion uses, agrees"
            .into(),
    })
}

/// Neron-Severi lattice of the double cover in the tangent-conic case,
/// on the basis (h1, C1).
pub fn tangent_conic_ns_lattice() -> GramLattice {
    GramLattice::new(
        vec![
            vec![BigInt::from(2), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(-2)],
        ],
        Some(vec!["h1".into(), "C1".into()]),
    )
    .expect("symmetric")
}

#[derive(Debug, Clone, Serialize)]
pub struct Tau0Identification {
    pub complement_discriminants: Vec<i64>,
    pub ns_primitive_disc: i64,
    pub forced_index: u32,
    pub required_complement_disc: i64,
    pub survivors: Vec<usize>,
    pub chosen_tau: i64,
    pub note: String,
}

/// Decide which of the two discriminant-32 candidates carries the
/// tangent-conic geometry.
///
/// For each candidate, the orthogonal complement of (h^2, P) is computed;
/// the cycle-class comparison pins its discriminant. The double cover side
/// contributes the rank-1 lattice <h1 - C1> of discriminant -4, and the
/// discriminant relation d(A) = 2^{2(e-1)} |d(NS)| with d(A) = 32 and
/// |d(NS)| = 8 forces the comparison index e = 2 exactly, so the
/// complement must have discriminant e^2 * 4 = 16. The sources quote 5 for
/// the second candidate's complement where exact arithmetic gives 4; with
/// an index-dividing-2 test both candidates would survive, so the forced
/// index is what keeps the identification unique.
pub fn identify_tau0(candidates: &[GramLattice; 2]) -> Result<Tau0Identification> {
    let ns = tangent_conic_ns_lattice();
    let h1 = ns.sublattice(vec![vec![BigInt::one(), BigInt::zero()]])?;
    let ns_comp = h1.orthogonal_complement();
    let ns_disc = ns_comp.induced_gram()[(0, 0)].clone();
    debug_assert_eq!(ns_disc, BigInt::from(-4));
    // d(A) = 32, |d(NS)| = 8: 32 = 2^{2(e-1)} * 8 forces e = 2
    let forced_index = 2u32;
    let required = BigInt::from(forced_index * forced_index) * ns_disc.abs();

    let mut discs = Vec::new();
    let mut survivors = Vec::new();
    for (i, cand) in candidates.iter().enumerate() {
        if cand.discriminant() != BigInt::from(32) {
            return Err(Error::Invalid(format!(
                "candidate {i} has discriminant {}, expected 32",
                cand.discriminant()
            )));
        }
        let sub = cand.sublattice(vec![
            vec![BigInt::one(), BigInt::zero(), BigInt::zero()],
            vec![BigInt::zero(), BigInt::one(), BigInt::zero()],
        ])?;
        let comp = sub.orthogonal_complement();
        let disc = comp.induced_lattice().discriminant();
        if disc == required {
            survivors.push(i);
        }
        discs.push(disc.to_i64().expect("small"));
    }
    if survivors.len() != 1 {
        return Err(Error::CandidateCount(survivors.len()));
    }
    // the surviving candidate is the tau = 0 Gram, with P.T read off at (1,2)
    let chosen = &candidates[survivors[0]];
    let chosen_tau = chosen.gram()[(1, 2)].to_i64().expect("small");
    Ok(Tau0Identification {
        complement_discriminants: discs,
        ns_primitive_disc: ns_disc.to_i64().expect("small"),
        forced_index,
        required_complement_disc: required.to_i64().expect("small"),
        survivors,
        chosen_tau,
        note: "exact arithmetic gives complement discriminants (16, 4); the quoted (16, 5) is a \
               transcription slip, and the exclusion of the second candidate needs the index \
               forced to exactly 2 by the discriminant relation 32 = 2^{2(e-1)} * 8"
            .into(),
    })
}

/// The two candidate Gram matrices considered in the tangent-conic
/// identification.
pub fn tau0_candidates() -> [GramLattice; 2] {
    [
        a_tau(0).lattice,
        GramLattice::from_i64(&[&[3, 1, 4], &[1, 3, 4], &[4, 4, 12]]).expect("symmetric"),
    ]
}

/// Short-root witnesses with a canonical sign, for report assertions.
pub fn short_root_witnesses(tau: i64) -> Result<Vec<IVec>> {
    Ok(a_tau0(tau).short_roots()?.into_iter().map(canonical_sign).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_tau_discriminants() {
        assert_eq!(a_tau(0).lattice.discriminant(), BigInt::from(32));
        assert_eq!(a_tau(2).lattice.discriminant(), BigInt::from(36));
        assert_eq!(a_tau(4).lattice.discriminant(), BigInt::from(16));
    }

    #[test]
    fn a_tau_sublattice_blocks() {
        let l = a_tau(7).lattice;
        let k8 = l
            .sublattice(vec![
                vec![BigInt::one(), BigInt::zero(), BigInt::zero()],
                vec![BigInt::zero(), BigInt::one(), BigInt::zero()],
            ])
            .unwrap();
        assert_eq!(k8.induced_lattice().discriminant(), BigInt::from(8));
        let k14 = l
            .sublattice(vec![
                vec![BigInt::one(), BigInt::zero(), BigInt::zero()],
                vec![BigInt::zero(), BigInt::zero(), BigInt::one()],
            ])
            .unwrap();
        assert_eq!(k14.induced_lattice().discriminant(), BigInt::from(14));
    }

    #[test]
    fn classification_matches_expected_components() {
        let reports = classify_components().unwrap();
        let admissible: Vec<i64> =
            reports.iter().filter(|r| r.admissible).map(|r| r.tau).collect();
        assert_eq!(admissible, vec![-1, 0, 1, 2, 3]);
        let discs: Vec<i64> =
            reports.iter().filter(|r| r.admissible).map(|r| r.discriminant).collect();
        assert_eq!(discs, vec![21, 32, 37, 36, 29]);
    }

    #[test]
    fn excluded_taus_show_short_roots() {
        let reports = classify_components().unwrap();
        let r_m2 = reports.iter().find(|r| r.tau == -2).unwrap();
        assert!(!r_m2.short_root_witnesses.is_empty());
        assert!(r_m2.short_root_witnesses.contains(&vec![2, -2, -1]));
        let r_4 = reports.iter().find(|r| r.tau == 4).unwrap();
        assert!(r_4.short_root_witnesses.contains(&vec![1, 1, -1]));
    }

    #[test]
    fn naive_basis_divisibility_differs_at_tau_minus_one_and_two() {
        // the basis-only test has norm-6 vectors with all basis pairings
        // divisible by 3 at tau = -1 and 2, while the h-relative test does
        // not; the classification needs the latter
        for tau in [-1i64, 2] {
            let naive = a_tau0(tau).long_roots().unwrap();
            assert!(!naive.is_empty(), "tau={tau}");
            assert!(h_relative_long_roots(tau).unwrap().is_empty(), "tau={tau}");
        }
        for tau in [0i64, 1, 3] {
            assert!(a_tau0(tau).long_roots().unwrap().is_empty(), "tau={tau}");
            assert!(h_relative_long_roots(tau).unwrap().is_empty(), "tau={tau}");
        }
        // tau = -2 has an h-relative long root on top of its short roots
        assert!(!h_relative_long_roots(-2).unwrap().is_empty());
    }

    #[test]
    fn evenness_is_tau_uniform() {
        for tau in -4..=6 {
            assert_eq!(evenness_checks(tau), (true, true), "tau={tau}");
        }
        let induced = a_tau0(5).induced_gram();
        assert_eq!(induced[(0, 0)], BigInt::from(24));
        assert_eq!(induced[(1, 1)], BigInt::from(58 - 8 * 5));
    }

    #[test]
    fn rq_obstruction_exhaustive() {
        for x in 0..8i64 {
            for y in 0..8i64 {
                let probe = RQProbe { x: BigInt::from(x), y: BigInt::from(y) };
                assert_eq!(rq_obstruction_det(&probe), 5);
            }
        }
        let det = RQProbe { x: BigInt::zero(), y: BigInt::zero() }.gram().discriminant();
        assert_eq!(det, BigInt::from(-3));
        let det = RQProbe { x: BigInt::one(), y: BigInt::one() }.gram().discriminant();
        assert_eq!(det, BigInt::from(5));
    }

    #[test]
    fn clifford_parity_by_tau() {
        assert_eq!(clifford_parity(0).unwrap().parity, CliffordParity::Nontrivial);
        assert_eq!(clifford_parity(2).unwrap().parity, CliffordParity::Nontrivial);
        assert_eq!(clifford_parity(-1).unwrap().parity, CliffordParity::Trivial);
        assert_eq!(clifford_parity(1).unwrap().parity, CliffordParity::Trivial);
        assert_eq!(clifford_parity(0).unwrap().intersection_witness, 2);
        assert!(clifford_parity(4).is_err());
    }

    #[test]
    fn ns_lattice_values() {
        let ns = tangent_conic_ns_lattice();
        assert_eq!(ns.discriminant(), BigInt::from(-8));
        assert_eq!(ns.gram()[(0, 0)], BigInt::from(2));
        let diff = vec![BigInt::one(), BigInt::from(-1)];
        assert_eq!(ns.norm(&diff), BigInt::from(-4));
    }

    #[test]
    fn tau0_identified_uniquely() {
        let id = identify_tau0(&tau0_candidates()).unwrap();
        assert_eq!(id.complement_discriminants, vec![16, 4]);
        assert_eq!(id.chosen_tau, 0);
        assert_eq!(id.ns_primitive_disc, -4);
    }

    #[test]
    fn q_ktau_groups_match_published_table() {
        let expected: &[(i64, &[u64])] =
            &[(-1, &[3, 7]), (0, &[2, 16]), (1, &[37]), (2, &[2, 2, 9]), (3, &[29])];
        for (tau, primary) in expected {
            let q = q_ktau(*tau).unwrap();
            assert_eq!(q.primary_decomposition(), primary.to_vec(), "tau={tau}");
            assert_eq!(q.milgram_signature().unwrap(), 0, "tau={tau}");
        }
    }
}
