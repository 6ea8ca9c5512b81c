//! Dense exact matrices over Z and Q: determinants, Smith normal form,
//! kernels and Hermite bases. Sizes here are tiny (rank <= 6), so the
//! implementations favor clarity over asymptotics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IVec = Vec<BigInt>;
pub type QVec = Vec<BigRational>;

/// Row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        IMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IMat::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn col(&self, j: usize) -> IVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IMat {
        let mut t = IMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IVec {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Fraction-free Bareiss determinant.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    let tmp = m[(k, j)].clone();
                    m[(k, j)] = m[(p, j)].clone();
                    m[(p, j)] = tmp;
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    /// Leading principal minors m_1..m_n.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        (1..=self.rows).map(|k| self.submatrix(0..k, 0..k).det()).collect()
    }

    pub fn submatrix(&self, ri: std::ops::Range<usize>, ci: std::ops::Range<usize>) -> IMat {
        let mut out = IMat::zero(ri.len(), ci.len());
        for (a, i) in ri.clone().enumerate() {
            for (b, j) in ci.clone().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn to_rational(&self) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| BigRational::from(v.clone())).collect(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-major rational matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> QVec {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMat::zero(n, n);
        for i in 0..n {
            inv[(i, i)] = BigRational::one();
        }
        for k in 0..n {
            let p = (k..n).find(|&i| !a[(i, k)].is_zero())?;
            if p != k {
                for j in 0..n {
                    let (x, y) = (a[(k, j)].clone(), a[(p, j)].clone());
                    a[(k, j)] = y;
                    a[(p, j)] = x;
                    let (x, y) = (inv[(k, j)].clone(), inv[(p, j)].clone());
                    inv[(k, j)] = y;
                    inv[(p, j)] = x;
                }
            }
            let piv = a[(k, k)].clone();
            for j in 0..n {
                a[(k, j)] = &a[(k, j)] / &piv;
                inv[(k, j)] = &inv[(k, j)] / &piv;
            }
            for i in 0..n {
                if i != k && !a[(i, k)].is_zero() {
                    let f = a[(i, k)].clone();
                    for j in 0..n {
                        let sub = &f * &a[(k, j)];
                        a[(i, j)] = &a[(i, j)] - sub;
                        let sub = &f * &inv[(k, j)];
                        inv[(i, j)] = &inv[(i, j)] - sub;
                    }
                }
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form `D = U * M * V` with `U`, `V` unimodular.
///
/// `u_inv` is U^-1, maintained directly so discriminant-group generators
/// can be read off without a separate inversion.
pub struct Snf {
    pub d: IMat,
    pub u_inv: IMat,
    pub v: IMat,
}

pub fn smith_normal_form(m: &IMat) -> Snf {
    let mut d = m.clone();
    let (rows, cols) = (d.rows, d.cols);
    let mut u_inv = IMat::identity(rows);
    let mut v = IMat::identity(cols);

    // Row op on d: row_i -= q*row_j  =>  u_inv: col_j += q*col_i.
    fn row_sub(d: &mut IMat, u_inv: &mut IMat, i: usize, j: usize, q: &BigInt) {
        for c in 0..d.cols {
            let s = q * &d[(j, c)];
            d[(i, c)] -= s;
        }
        for r in 0..u_inv.rows {
            let s = q * &u_inv[(r, i)];
            u_inv[(r, j)] += s;
        }
    }
    fn row_swap(d: &mut IMat, u_inv: &mut IMat, i: usize, j: usize) {
        for c in 0..d.cols {
            let (a, b) = (d[(i, c)].clone(), d[(j, c)].clone());
            d[(i, c)] = b;
            d[(j, c)] = a;
        }
        for r in 0..u_inv.rows {
            let (a, b) = (u_inv[(r, i)].clone(), u_inv[(r, j)].clone());
            u_inv[(r, i)] = b;
            u_inv[(r, j)] = a;
        }
    }
    fn row_neg(d: &mut IMat, u_inv: &mut IMat, i: usize) {
        for c in 0..d.cols {
            let x = -d[(i, c)].clone();
            d[(i, c)] = x;
        }
        for r in 0..u_inv.rows {
            let x = -u_inv[(r, i)].clone();
            u_inv[(r, i)] = x;
        }
    }
    fn col_sub(d: &mut IMat, v: &mut IMat, i: usize, j: usize, q: &BigInt) {
        // col_i -= q*col_j on both d and v (v tracks column ops directly)
        for r in 0..d.rows {
            let s = q * &d[(r, j)];
            d[(r, i)] -= s;
        }
        for r in 0..v.rows {
            let s = q * &v[(r, j)];
            v[(r, i)] -= s;
        }
    }
    fn col_swap(d: &mut IMat, v: &mut IMat, i: usize, j: usize) {
        for r in 0..d.rows {
            let (a, b) = (d[(r, i)].clone(), d[(r, j)].clone());
            d[(r, i)] = b;
            d[(r, j)] = a;
        }
        for r in 0..v.rows {
            let (a, b) = (v[(r, i)].clone(), v[(r, j)].clone());
            v[(r, i)] = b;
            v[(r, j)] = a;
        }
    }

    let t = rows.min(cols);
    for k in 0..t {
        loop {
            // find a pivot: smallest nonzero |entry| in the remaining block
            let mut piv: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if !d[(i, j)].is_zero()
                        && piv.is_none_or(|(pi, pj)| d[(i, j)].abs() < d[(pi, pj)].abs())
                    {
                        piv = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = piv else { break };
            if pi != k {
                row_swap(&mut d, &mut u_inv, k, pi);
            }
            if pj != k {
                col_swap(&mut d, &mut v, k, pj);
            }
            let mut dirty = false;
            for i in k + 1..rows {
                if !d[(i, k)].is_zero() {
                    let q = d[(i, k)].div_floor(&d[(k, k)]);
                    row_sub(&mut d, &mut u_inv, i, k, &q);
                    dirty |= !d[(i, k)].is_zero();
                }
            }
            for j in k + 1..cols {
                if !d[(k, j)].is_zero() {
                    let q = d[(k, j)].div_floor(&d[(k, k)]);
                    col_sub(&mut d, &mut v, j, k, &q);
                    dirty |= !d[(k, j)].is_zero();
                }
            }
            if dirty {
                continue;
            }
            // block cleared; ensure pivot divides the rest of the block
            let mut bad = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&d[(i, j)] % &d[(k, k)]).is_zero() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            if let Some(i) = bad {
                // fold row i into row k to shrink the pivot
                let q = BigInt::from(-1);
                row_sub(&mut d, &mut u_inv, k, i, &q);
                continue;
            }
            break;
        }
        if d[(k, k)].is_negative() {
            row_neg(&mut d, &mut u_inv, k);
        }
    }
    Snf { d, u_inv, v }
}

/// Invariant factors (diagonal of the SNF), including any zeros.
pub fn invariant_factors(m: &IMat) -> Vec<BigInt> {
    let snf = smith_normal_form(m);
    (0..m.rows.min(m.cols)).map(|i| snf.d[(i, i)].clone()).collect()
}

/// Basis of the integer kernel {v : M v = 0}. The result is automatically
/// saturated (a kernel of a map to a torsion-free group).
pub fn integer_kernel(m: &IMat) -> Vec<IVec> {
    let snf = smith_normal_form(m);
    let t = m.rows.min(m.cols);
    let mut basis = Vec::new();
    for j in 0..m.cols {
        let diag_zero = j >= t || snf.d[(j, j)].is_zero();
        if diag_zero {
            basis.push(snf.v.col(j));
        }
    }
    basis
}

/// Divide a vector by the gcd of its entries (no-op on the zero vector).
pub fn primitive_vector(v: &[BigInt]) -> IVec {
    let mut g = BigInt::zero();
    for e in v {
        g = g.gcd(e);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|e| e / &g).collect()
}

/// Basis (as columns) of the lattice generated by the columns of a rational
/// matrix, computed through the Hermite form of a scaled integer matrix.
pub fn column_lattice_basis(cols: &[QVec]) -> Vec<QVec> {
    assert!(!cols.is_empty());
    let n = cols[0].len();
    let mut denom = BigInt::one();
    for c in cols {
        for e in c {
            denom = denom.lcm(e.denom());
        }
    }
    // integer matrix with columns denom * c
    let mut m = IMat::zero(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, e) in c.iter().enumerate() {
            let scaled = e * BigRational::from(denom.clone());
            debug_assert!(scaled.is_integer());
            m[(i, j)] = scaled.to_integer();
        }
    }
    // column-style Hermite reduction (gcd ops on columns)
    let mut mat = m;
    let mut pivot_col = 0;
    for row in 0..n {
        if pivot_col >= mat.cols {
            break;
        }
        loop {
            let mut nz: Vec<usize> =
                (pivot_col..mat.cols).filter(|&j| !mat[(row, j)].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            nz.sort_by_key(|&j| mat[(row, j)].abs());
            let jmin = nz[0];
            if jmin != pivot_col {
                for i in 0..n {
                    let (a, b) = (mat[(i, pivot_col)].clone(), mat[(i, jmin)].clone());
                    mat[(i, pivot_col)] = b;
                    mat[(i, jmin)] = a;
                }
            }
            let mut done = true;
            for j in pivot_col + 1..mat.cols {
                if !mat[(row, j)].is_zero() {
                    let q = mat[(row, j)].div_floor(&mat[(row, pivot_col)]);
                    for i in 0..n {
                        let s = &q * &mat[(i, pivot_col)];
                        mat[(i, j)] -= s;
                    }
                    done &= mat[(row, j)].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if !mat[(row, pivot_col)].is_zero() {
            pivot_col += 1;
        }
    }
    let rank = pivot_col;
    (0..rank)
        .map(|j| {
            (0..n)
                .map(|i| BigRational::new(mat[(i, j)].clone(), denom.clone()))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IMat {
        IMat::from_i64(rows)
    }

    #[test]
    fn det_small() {
        assert_eq!(m(&[&[3]]).det(), BigInt::from(3));
        assert_eq!(m(&[&[3, 1], &[1, 3]]).det(), BigInt::from(8));
        assert_eq!(m(&[&[3, 1, 4], &[1, 3, 0], &[4, 0, 10]]).det(), BigInt::from(32));
        assert_eq!(m(&[&[0, 2], &[3, 0]]).det(), BigInt::from(-6));
    }

    #[test]
    fn snf_reconstructs() {
        let a = m(&[&[3, 1, 4], &[1, 3, 0], &[4, 0, 10]]);
        let snf = smith_normal_form(&a);
        let inv: Vec<i64> = (0..3).map(|i| i64::try_from(&snf.d[(i, i)]).unwrap()).collect();
        assert_eq!(inv, vec![1, 2, 16]);
        // D = U M V  =>  U_inv D = M V
        let lhs = snf.u_inv.mul(&snf.d);
        let rhs = a.mul(&snf.v);
        assert_eq!(lhs, rhs);
        // V unimodular
        assert_eq!(snf.v.det().abs(), BigInt::one());
        assert_eq!(snf.u_inv.det().abs(), BigInt::one());
    }

    #[test]
    fn kernel_is_saturated() {
        // complement constraints for <h^2, P> inside the tau = 0 lattice
        let a = m(&[&[3, 1, 4], &[1, 3, 0]]);
        let ker = integer_kernel(&a);
        assert_eq!(ker.len(), 1);
        let v = primitive_vector(&ker[0]);
        let want: Vec<i64> = vec![3, -1, -2];
        let got: Vec<i64> = v.iter().map(|e| i64::try_from(e).unwrap()).collect();
        assert!(got == want || got.iter().zip(&want).all(|(a, b)| *a == -b));
    }

    #[test]
    fn snf_random_diag_divisibility() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            let rows: Vec<Vec<BigInt>> = (0..n)
                .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect())
                .collect();
            let a = IMat::from_rows(rows);
            let snf = smith_normal_form(&a);
            assert_eq!(snf.u_inv.mul(&snf.d), a.mul(&snf.v));
            for i in 0..n - 1 {
                let (x, y) = (&snf.d[(i, i)], &snf.d[(i + 1, i + 1)]);
                if !x.is_zero() {
                    assert!((y % x).is_zero(), "divisibility broken: {x} {y}");
                } else {
                    assert!(y.is_zero());
                }
            }
        }
    }
}
