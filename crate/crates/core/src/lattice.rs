//! Integer lattices presented by Gram matrices: discriminants, definiteness,
//! exhaustive vector enumeration, saturated orthogonal complements,
//! discriminant groups and even finite-index overlattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::fqf::FiniteQuadraticForm;
use crate::mat::{self, IMat, IVec, QVec};
use crate::{Error, Result};

/// An integer lattice with a chosen basis, presented by its symmetric Gram
/// matrix of pairwise products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramLattice {
    gram: IMat,
    labels: Option<Vec<String>>,
}

impl GramLattice {
    pub fn new(rows: Vec<Vec<BigInt>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare(i, row.len(), n));
            }
        }
        let gram = IMat::from_rows(rows);
        for i in 0..n {
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(GramLattice { gram, labels })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        GramLattice::new(
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
            None,
        )
    }

    pub fn rank(&self) -> usize {
        self.gram.rows
    }

    pub fn gram(&self) -> &IMat {
        &self.gram
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn discriminant(&self) -> BigInt {
        self.gram.det()
    }

    /// Sylvester: positive definite iff all leading principal minors are
    /// positive.
    pub fn is_positive_definite(&self) -> bool {
        self.gram.leading_minors().iter().all(|m| m.is_positive())
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn pairing(&self, v: &[BigInt], w: &[BigInt]) -> BigInt {
        let gw = self.gram.mul_vec(w);
        v.iter().zip(&gw).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self, v: &[BigInt]) -> BigInt {
        self.pairing(v, v)
    }

    /// View the whole lattice as a sublattice of itself.
    pub fn as_sublattice(&self) -> Sublattice {
        let n = self.rank();
        let basis = (0..n)
            .map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        Sublattice { ambient: self.clone(), basis }
    }

    pub fn sublattice(&self, basis: Vec<IVec>) -> Result<Sublattice> {
        let sub = Sublattice { ambient: self.clone(), basis };
        let m = sub.basis_matrix();
        let rank = mat::invariant_factors(&m).iter().filter(|d| !d.is_zero()).count();
        if rank != sub.basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(sub)
    }

    /// Generators of the dual quotient A*/A as rational vectors in the
    /// lattice basis, one per nontrivial elementary divisor.
    pub(crate) fn dual_quotient_generators(&self) -> Result<(Vec<u64>, Vec<QVec>)> {
        if self.discriminant().is_zero() {
            return Err(Error::SingularGram);
        }
        let snf = mat::smith_normal_form(&self.gram);
        let ginv = self.gram.to_rational().inverse().ok_or(Error::SingularGram)?;
        let mut divisors = Vec::new();
        let mut gens = Vec::new();
        for i in 0..self.rank() {
            let d = &snf.d[(i, i)];
            if d.abs() > BigInt::one() {
                divisors.push(d.abs().to_u64().ok_or_else(|| {
                    Error::Invalid("discriminant group too large".into())
                })?);
                let col: QVec =
                    snf.u_inv.col(i).iter().map(|v| BigRational::from(v.clone())).collect();
                gens.push(ginv.mul_vec(&col));
            }
        }
        Ok((divisors, gens))
    }

    /// Discriminant group A*/A with q(x) = x^T G x mod 2Z, defined for even
    /// nonsingular lattices.
    pub fn discriminant_group(&self) -> Result<FiniteQuadraticForm> {
        if let Some(i) = (0..self.rank()).find(|&i| self.gram[(i, i)].is_odd()) {
            return Err(Error::OddDiagonal(i));
        }
        let (divisors, gens) = self.dual_quotient_generators()?;
        let qr = self.gram.to_rational();
        let q_gen: Vec<BigRational> = gens
            .iter()
            .map(|g| {
                let gg = qr.mul_vec(g);
                g.iter().zip(&gg).map(|(a, b)| a * b).sum()
            })
            .collect();
        let b_gen: Vec<Vec<BigRational>> = gens
            .iter()
            .map(|gi| {
                gens.iter()
                    .map(|gj| {
                        let gv = qr.mul_vec(gj);
                        gi.iter().zip(&gv).map(|(a, b)| a * b).sum()
                    })
                    .collect()
            })
            .collect();
        Ok(FiniteQuadraticForm::from_generators(divisors, gens, q_gen, b_gen))
    }

    /// Proper finite-index even overlattices, classified by isotropic
    /// subgroups of the discriminant group (q = 0 mod 2Z on the subgroup,
    /// pairwise b integral). Requires an even nonsingular lattice.
    pub fn proper_overlattices(&self) -> Result<Vec<GramLattice>> {
        let dg = self.discriminant_group()?;
        let order = dg.order();
        if order == 1 {
            return Ok(vec![]);
        }
        // isotropic elements (q = 0, nontrivial)
        let mut iso: Vec<Vec<u64>> = Vec::new();
        for c in dg.elements() {
            if c.iter().all(|&a| a == 0) {
                continue;
            }
            if dg.q(&c).is_zero() {
                iso.push(c);
            }
        }
        // candidate subgroups generated by up to `rank` pairwise-integral
        // isotropic elements; dedup by element set
        let max_gens = dg.divisors.len().max(1);
        let mut subgroups: Vec<Vec<Vec<u64>>> = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        let mut stack: Vec<Vec<usize>> = (0..iso.len()).map(|i| vec![i]).collect();
        while let Some(gen_idx) = stack.pop() {
            let gens: Vec<&Vec<u64>> = gen_idx.iter().map(|&i| &iso[i]).collect();
            let ok = gens.iter().enumerate().all(|(a, x)| {
                gens.iter().skip(a + 1).all(|y| dg.b(x, y).is_zero())
            });
            if !ok {
                continue;
            }
            // close under addition
            let mut elems: std::collections::BTreeSet<Vec<u64>> = Default::default();
            elems.insert(vec![0; dg.divisors.len()]);
            let mut frontier: Vec<Vec<u64>> = vec![vec![0; dg.divisors.len()]];
            while let Some(e) = frontier.pop() {
                for g in &gens {
                    let s: Vec<u64> = e
                        .iter()
                        .zip(g.iter())
                        .zip(&dg.divisors)
                        .map(|((a, b), d)| (a + b) % d)
                        .collect();
                    if elems.insert(s.clone()) {
                        frontier.push(s);
                    }
                }
            }
            let key: Vec<Vec<u64>> = elems.iter().cloned().collect();
            if elems.len() > 1 && seen.insert(key.clone()) {
                subgroups.push(key);
            }
            if gen_idx.len() < max_gens {
                let last = *gen_idx.last().unwrap();
                for next in last + 1..iso.len() {
                    let mut v = gen_idx.clone();
                    v.push(next);
                    stack.push(v);
                }
            }
        }
        // subgroup q = 0 everywhere (generators isotropic and pairwise
        // integral already force this; keep the direct check as a guard)
        let mut out = Vec::new();
        let mut seen_lattices = std::collections::BTreeSet::new();
        for elems in subgroups {
            if elems.iter().any(|c| !dg.q(c).is_zero()) {
                continue;
            }
            let lat = self.overlattice_from_glue(&dg, &elems)?;
            let key = format!("{:?}", lat.gram);
            if seen_lattices.insert(key) {
                out.push(lat);
            }
        }
        out.sort_by_key(|l| l.discriminant().abs());
        Ok(out)
    }

    fn overlattice_from_glue(
        &self,
        dg: &FiniteQuadraticForm,
        elems: &[Vec<u64>],
    ) -> Result<GramLattice> {
        let n = self.rank();
        let mut cols: Vec<QVec> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for c in elems {
            let mut v = vec![BigRational::zero(); n];
            for (k, &a) in c.iter().enumerate() {
                for (i, g) in dg.generators[k].iter().enumerate() {
                    v[i] += g * BigRational::from(BigInt::from(a));
                }
            }
            cols.push(v);
        }
        let basis = mat::column_lattice_basis(&cols);
        let qr = self.gram.to_rational();
        let mut rows = Vec::with_capacity(basis.len());
        for bi in &basis {
            let mut row = Vec::with_capacity(basis.len());
            let gbi = qr.mul_vec(bi);
            for bj in &basis {
                let val: BigRational = bj.iter().zip(&gbi).map(|(a, b)| a * b).sum();
                if !val.is_integer() {
                    return Err(Error::Invalid("overlattice gram not integral".into()));
                }
                row.push(val.to_integer());
            }
            rows.push(row);
        }
        GramLattice::new(rows, None)
    }
}

/// A sublattice of a [`GramLattice`], given by basis vectors in ambient
/// coordinates.
#[derive(Debug, Clone)]
pub struct Sublattice {
    pub ambient: GramLattice,
    pub basis: Vec<IVec>,
}

impl Sublattice {
    /// Ambient-coordinate basis matrix with basis vectors as columns.
    pub fn basis_matrix(&self) -> IMat {
        let n = self.ambient.rank();
        let k = self.basis.len();
        let mut m = IMat::zero(n, k);
        for (j, b) in self.basis.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = b[i].clone();
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Induced Gram matrix B^T G B.
    pub fn induced_gram(&self) -> IMat {
        let b = self.basis_matrix();
        b.transpose().mul(self.ambient.gram()).mul(&b)
    }

    pub fn induced_lattice(&self) -> GramLattice {
        let g = self.induced_gram();
        let rows = (0..g.rows).map(|i| (0..g.cols).map(|j| g[(i, j)].clone()).collect()).collect();
        GramLattice::new(rows, None).expect("induced gram is symmetric")
    }

    /// Map sublattice coordinates to ambient coordinates.
    pub fn to_ambient(&self, coords: &[BigInt]) -> IVec {
        let n = self.ambient.rank();
        let mut v = vec![BigInt::zero(); n];
        for (b, c) in self.basis.iter().zip(coords) {
            for i in 0..n {
                v[i] += &b[i] * c;
            }
        }
        v
    }

    /// The quotient by this sublattice is torsion-free (certified via the
    /// Smith normal form of the basis matrix: all invariant factors 1).
    pub fn is_saturated(&self) -> bool {
        mat::invariant_factors(&self.basis_matrix())
            .iter()
            .all(|d| d.abs() == BigInt::one())
    }

    /// Complete list of vectors of the given norm, one representative per
    /// +/- pair, in ambient coordinates. The enumeration bound comes from a
    /// rational LDL^T split of the induced Gram, so it is exhaustive.
    /// Errors when the induced form is not positive definite.
    pub fn vectors_of_norm(&self, n: u64) -> Result<Vec<IVec>> {
        let g = self.induced_gram();
        let lat = GramLattice { gram: g.clone(), labels: None };
        if !lat.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let k = self.rank();
        // rational LDL^T: G = L D L^T with L unit lower triangular
        let gq = g.to_rational();
        let mut l = vec![vec![BigRational::zero(); k]; k];
        let mut d = vec![BigRational::zero(); k];
        for i in 0..k {
            for j in 0..=i {
                let mut sum = gq[(i, j)].clone();
                for t in 0..j {
                    let s = &(&l[i][t] * &l[j][t]) * &d[t];
                    sum -= s;
                }
                if i == j {
                    d[i] = sum;
                } else {
                    l[i][j] = sum / &d[j];
                }
            }
            l[i][i] = BigRational::one();
        }
        // v^T G v = sum_i d_i (v_i + sum_{j>i} l_ji v_j)^2;
        // enumerate from the last coordinate down.
        let target = BigRational::from(BigInt::from(n));
        let mut out: Vec<IVec> = Vec::new();
        let mut coords = vec![BigInt::zero(); k];
        enumerate_level(
            k,
            &l,
            &d,
            &target,
            &mut coords,
            (k as isize) - 1,
            &BigRational::zero(),
            &mut |c| {
                // exact norm check in integer arithmetic
                let amb = self.to_ambient(c);
                if self.ambient.norm(&amb) == BigInt::from(n) {
                    out.push(canonical_sign(amb));
                }
            },
        );
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Primitive vectors of norm 2 (ambient coordinates, one per +/- pair).
    pub fn short_roots(&self) -> Result<Vec<IVec>> {
        Ok(self
            .vectors_of_norm(2)?
            .into_iter()
            .filter(|v| is_primitive(v))
            .collect())
    }

    /// Vectors of norm 6 whose pairing with every basis vector of this
    /// sublattice is divisible by 3 (ambient coordinates, one per +/- pair).
    pub fn long_roots(&self) -> Result<Vec<IVec>> {
        let three = BigInt::from(3);
        Ok(self
            .vectors_of_norm(6)?
            .into_iter()
            .filter(|v| {
                self.basis
                    .iter()
                    .all(|b| self.ambient.pairing(v, b).mod_floor(&three).is_zero())
            })
            .collect())
    }

    /// Saturated orthogonal complement inside the ambient lattice.
    pub fn orthogonal_complement(&self) -> Sublattice {
        // rows of constraints: (basis_i)^T G
        let bt = self.basis_matrix().transpose();
        let constraints = bt.mul(self.ambient.gram());
        let kernel = mat::integer_kernel(&constraints);
        let comp = Sublattice { ambient: self.ambient.clone(), basis: kernel };
        debug_assert!(comp.is_saturated());
        comp
    }
}

fn is_primitive(v: &[BigInt]) -> bool {
    let mut g = BigInt::zero();
    for e in v {
        g = g.gcd(e);
    }
    g == BigInt::one()
}

/// Canonical representative of {v, -v}: first nonzero coordinate positive.
pub fn canonical_sign(v: IVec) -> IVec {
    match v.iter().find(|e| !e.is_zero()) {
        Some(e) if e.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

#[allow(clippy::too_many_arguments)]
fn enumerate_level(
    k: usize,
    l: &[Vec<BigRational>],
    d: &[BigRational],
    target: &BigRational,
    coords: &mut Vec<BigInt>,
    level: isize,
    used: &BigRational,
    emit: &mut impl FnMut(&[BigInt]),
) {
    if level < 0 {
        if used == target && coords.iter().any(|c| !c.is_zero()) {
            emit(coords);
        }
        return;
    }
    let i = level as usize;
    // center c_i = sum_{j>i} l[j][i] * v_j
    let mut center = BigRational::zero();
    for j in i + 1..k {
        center += &l[j][i] * BigRational::from(coords[j].clone());
    }
    let remaining = target - used;
    if remaining.is_negative() {
        return;
    }
    // integer x with d_i (x + center)^2 <= remaining; walk out from the
    // rounded center in both directions
    let c_f = -&center;
    let start: BigInt = c_f.round().to_integer();
    let fits = |x: &BigInt| {
        let t = BigRational::from(x.clone()) + &center;
        &(&t * &t) * &d[i] <= remaining
    };
    let mut x = start.clone();
    while fits(&x) {
        let t = BigRational::from(x.clone()) + &center;
        let spent = used + &(&t * &t) * &d[i];
        coords[i] = x.clone();
        enumerate_level(k, l, d, target, coords, level - 1, &spent, emit);
        x += 1;
    }
    let mut x = &start - 1;
    while fits(&x) {
        let t = BigRational::from(x.clone()) + &center;
        let spent = used + &(&t * &t) * &d[i];
        coords[i] = x.clone();
        enumerate_level(k, l, d, target, coords, level - 1, &spent, emit);
        x -= 1;
    }
    coords[i] = BigInt::zero();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[&[i64]]) -> GramLattice {
        GramLattice::from_i64(rows).unwrap()
    }

    fn a_tau(tau: i64) -> GramLattice {
        lat(&[&[3, 1, 4], &[1, 3, tau], &[4, tau, 10]])
    }

    fn a_tau0(tau: i64) -> Sublattice {
        a_tau(tau)
            .sublattice(vec![
                vec![BigInt::from(1), BigInt::from(-3), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::from(-4), BigInt::from(1)],
            ])
            .unwrap()
    }

    fn iv(v: &[i64]) -> IVec {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn discriminants() {
        assert_eq!(a_tau(0).discriminant(), BigInt::from(32));
        assert_eq!(lat(&[&[3, 1], &[1, 3]]).discriminant(), BigInt::from(8));
        assert_eq!(lat(&[&[3]]).discriminant(), BigInt::from(3));
    }

    #[test]
    fn definiteness() {
        assert!(a_tau(0).is_positive_definite());
        assert!(!a_tau(5).is_positive_definite()); // discriminant -3
        assert!(lat(&[&[2]]).is_positive_definite());
    }

    #[test]
    fn norm_two_vectors_tau_minus_two() {
        let roots = a_tau0(-2).vectors_of_norm(2).unwrap();
        assert_eq!(roots, vec![canonical_sign(iv(&[-2, 2, 1]))]);
    }

    #[test]
    fn norm_two_vectors_tau_four() {
        let roots = a_tau0(4).vectors_of_norm(2).unwrap();
        assert_eq!(roots, vec![canonical_sign(iv(&[1, 1, -1]))]);
    }

    #[test]
    fn rank_one_norm_vectors() {
        let l = lat(&[&[2]]);
        let s = l.as_sublattice();
        assert_eq!(s.vectors_of_norm(2).unwrap(), vec![iv(&[1])]);
        let l4 = lat(&[&[4]]);
        assert!(l4.as_sublattice().short_roots().unwrap().is_empty());
    }

    #[test]
    fn short_roots_empty_for_admissible_tau() {
        for tau in [-1, 0, 1, 2, 3] {
            assert!(a_tau0(tau).short_roots().unwrap().is_empty(), "tau={tau}");
        }
        assert!(!a_tau0(-2).short_roots().unwrap().is_empty());
    }

    #[test]
    fn long_roots_rank_one_norm_six() {
        let l = lat(&[&[6]]);
        assert_eq!(l.as_sublattice().long_roots().unwrap(), vec![iv(&[1])]);
    }

    #[test]
    fn long_roots_tau_one_empty() {
        assert!(a_tau0(1).long_roots().unwrap().is_empty());
    }

    #[test]
    fn not_positive_definite_errors() {
        let l = lat(&[&[0, 1], &[1, 0]]);
        assert!(matches!(
            l.as_sublattice().vectors_of_norm(2),
            Err(Error::NotPositiveDefinite)
        ));
    }

    #[test]
    fn complement_of_h2_p_in_tau0() {
        let l = a_tau(0);
        let sub = l
            .sublattice(vec![iv(&[1, 0, 0]), iv(&[0, 1, 0])])
            .unwrap();
        let comp = sub.orthogonal_complement();
        assert_eq!(comp.rank(), 1);
        assert!(comp.is_saturated());
        assert_eq!(comp.induced_gram()[(0, 0)], BigInt::from(16));
        let b = canonical_sign(comp.basis[0].clone());
        assert_eq!(b, iv(&[3, -1, -2]));
    }

    #[test]
    fn complement_in_identity() {
        let l = lat(&[&[1, 0], &[0, 1]]);
        let sub = l.sublattice(vec![iv(&[1, 0])]).unwrap();
        let comp = sub.orthogonal_complement();
        assert_eq!(comp.basis.len(), 1);
        assert_eq!(canonical_sign(comp.basis[0].clone()), iv(&[0, 1]));
    }

    #[test]
    fn discriminant_group_of_a2() {
        let l = lat(&[&[2, 1], &[1, 2]]);
        let dg = l.discriminant_group().unwrap();
        assert_eq!(dg.divisors, vec![3]);
        assert_eq!(dg.order(), 3);
        let q1 = dg.q(&[1]);
        assert_eq!(q1, BigRational::new(BigInt::from(2), BigInt::from(3)));
    }

    #[test]
    fn discriminant_group_rejects_odd_diagonal() {
        let l = lat(&[&[3, 1], &[1, 3]]);
        assert!(matches!(l.discriminant_group(), Err(Error::OddDiagonal(_))));
    }

    #[test]
    fn discriminant_group_order_matches_disc() {
        let l = lat(&[&[2, 0, 1], &[0, 4, 1], &[1, 1, 6]]);
        let dg = l.discriminant_group().unwrap();
        assert_eq!(BigInt::from(dg.order()), l.discriminant().abs());
    }

    #[test]
    fn overlattices_unimodular_empty() {
        let l = lat(&[&[2, 1], &[1, 2]]);
        // disc 3 squarefree: no isotropic subgroup, no overlattice
        assert!(l.proper_overlattices().unwrap().is_empty());
        let u = lat(&[&[0, 1], &[1, 0]]);
        assert!(u.proper_overlattices().unwrap().is_empty());
    }

    #[test]
    fn overlattice_of_a00_has_long_roots() {
        let g0 = a_tau0(0).induced_lattice();
        assert_eq!(g0.discriminant(), BigInt::from(96));
        let ovs = g0.proper_overlattices().unwrap();
        assert_eq!(ovs.len(), 1);
        let b0 = &ovs[0];
        assert_eq!(b0.discriminant(), BigInt::from(24));
        assert!(!b0.as_sublattice().long_roots().unwrap().is_empty());
        assert!(b0.as_sublattice().short_roots().unwrap().is_empty());
    }

    #[test]
    fn overlattices_of_a10_empty() {
        let g1 = a_tau0(1).induced_lattice();
        assert_eq!(g1.discriminant(), BigInt::from(111));
        assert!(g1.proper_overlattices().unwrap().is_empty());
    }

    #[test]
    fn saturation_detects_index() {
        let l = lat(&[&[2, 0], &[0, 2]]);
        let sat = l.sublattice(vec![iv(&[1, 0])]).unwrap();
        assert!(sat.is_saturated());
        let unsat = l.sublattice(vec![iv(&[2, 0])]).unwrap();
        assert!(!unsat.is_saturated());
    }
}
