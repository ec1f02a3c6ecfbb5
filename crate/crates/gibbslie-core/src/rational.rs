//! Dense exact-rational vectors and matrices.
//!
//! All structural decisions in this crate (ideal membership, cone
//! pointedness, Jacobi verification) are made over `BigRational` so that
//! no verdict depends on a floating-point tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational from numerator and denominator.
pub fn ratio(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(x: &Rat) -> f64 {
    let num = x.numer();
    let den = x.denom();
    // Split into integer and fractional parts to keep precision for
    // moderate magnitudes; desk-scale data never exceeds f64 range.
    let (q, r) = (num / den, num % den);
    let qf: f64 = q.to_string().parse().unwrap_or(f64::NAN);
    let rf: f64 = r.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = den.to_string().parse().unwrap_or(f64::NAN);
    qf + rf / df
}

/// Best rational approximation to `x` with denominator at most `max_den`,
/// via continued fractions. Returns `None` for non-finite input.
pub fn approximate(x: f64, max_den: u64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let mut h_prev = BigInt::from(1);
    let mut h = BigInt::from(x.floor() as i64);
    let mut k_prev = BigInt::from(0);
    let mut k = BigInt::from(1);
    let mut frac = x - x.floor();
    for _ in 0..64 {
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        if !a.is_finite() {
            break;
        }
        let ai = BigInt::from(a as i64);
        let h_next = &ai * &h + &h_prev;
        let k_next = &ai * &k + &k_prev;
        if k_next > BigInt::from(max_den) {
            break;
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        frac = inv - a;
    }
    Some(BigRational::new(h, k))
}

/// Column vector over the rationals.
pub type RVec = Vec<Rat>;

pub fn rvec_zero(n: usize) -> RVec {
    vec![Rat::zero(); n]
}

pub fn rvec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn rvec_add(a: &[Rat], b: &[Rat]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn rvec_sub(a: &[Rat], b: &[Rat]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn rvec_scale(a: &[Rat], c: &Rat) -> RVec {
    a.iter().map(|x| x * c).collect()
}

pub fn rvec_neg(a: &[Rat]) -> RVec {
    a.iter().map(|x| -x).collect()
}

pub fn rvec_dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rat::zero(), |s, t| s + t)
}

/// Dense rational matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<RVec>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c));
        RMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: Vec<RVec>) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for i in 0..r {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> RVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> RMat {
        let mut t = RMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> RVec {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| rvec_dot(self.row(i), v)).collect()
    }

    pub fn mul(&self, other: &RMat) -> RMat {
        assert_eq!(self.cols, other.rows);
        let mut out = RMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RMat) -> RMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &RMat) -> RMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> RMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| to_f64(&self[(i, j)]))
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (RMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // Partial pivoting by first nonzero entry.
            let mut pivot = None;
            for i in r..m.rows {
                if !m[(i, c)].is_zero() {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let t = &m[(r, j)] * &inv;
                m[(r, j)] = t;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let t = &m[(r, j)] * &f;
                        m[(i, j)] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)].clone(), self[(b, j)].clone());
            self[(a, j)] = y;
            self[(b, j)] = x;
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the nullspace {x | Ax = 0}.
    pub fn nullspace(&self) -> Vec<RVec> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = rvec_zero(self.cols);
            v[f] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve Ax = b exactly. Returns `None` when inconsistent. When the
    /// system is underdetermined an arbitrary particular solution is
    /// returned (free variables set to zero).
    pub fn solve(&self, b: &[Rat]) -> Option<RVec> {
        assert_eq!(self.rows, b.len());
        let mut aug = RMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = rvec_zero(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Symmetric positive-definiteness via LDL^T with exact pivots.
    pub fn is_positive_definite(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        for k in 0..n {
            if !a[(k, k)].is_positive() {
                return false;
            }
            let pivot = a[(k, k)].clone();
            for i in (k + 1)..n {
                let f = &a[(i, k)] / &pivot;
                for j in k..n {
                    let t = &a[(k, j)] * &f;
                    a[(i, j)] -= t;
                }
            }
        }
        true
    }
}

impl std::ops::Index<(usize, usize)> for RMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Row space basis (as row vectors) of the matrix spanned by `vectors`,
/// in reduced echelon form. Canonical for span comparison.
pub fn span_basis(vectors: &[RVec]) -> Vec<RVec> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = RMat::from_rows(vectors.to_vec()).rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Does `v` lie in the span of `basis`?
pub fn in_span(basis: &[RVec], v: &[Rat]) -> bool {
    if rvec_is_zero(v) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let a = RMat::from_cols(basis.to_vec());
    a.solve(v).is_some()
}

/// Do two sets of vectors span the same subspace?
pub fn same_span(a: &[RVec], b: &[RVec]) -> bool {
    span_basis(a) == span_basis(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_nullspace() {
        // x + y + z = 0 has a 2-dim nullspace.
        let m = RMat::from_rows(vec![vec![rat(1), rat(1), rat(1)]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(rvec_is_zero(&m.mul_vec(v)));
        }
    }

    #[test]
    fn solve_exact() {
        let m = RMat::from_rows(vec![
            vec![rat(2), rat(1)],
            vec![rat(1), rat(3)],
        ]);
        let x = m.solve(&[rat(5), rat(10)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(3)]);
        // Inconsistent system.
        let s = RMat::from_rows(vec![
            vec![rat(1), rat(1)],
            vec![rat(2), rat(2)],
        ]);
        assert!(s.solve(&[rat(1), rat(3)]).is_none());
    }

    #[test]
    fn positive_definite() {
        let pd = RMat::from_rows(vec![
            vec![rat(2), rat(1)],
            vec![rat(1), rat(2)],
        ]);
        assert!(pd.is_positive_definite());
        let psd = RMat::from_rows(vec![
            vec![rat(1), rat(1)],
            vec![rat(1), rat(1)],
        ]);
        assert!(!psd.is_positive_definite());
        let indef = RMat::from_rows(vec![
            vec![rat(1), rat(3)],
            vec![rat(3), rat(1)],
        ]);
        assert!(!indef.is_positive_definite());
    }

    #[test]
    fn approximate_snaps_small_denominators() {
        assert_eq!(approximate(0.5, 100).unwrap(), ratio(1, 2));
        assert_eq!(approximate(-2.0, 100).unwrap(), rat(-2));
        let x = approximate(1.0 / 3.0, 1000).unwrap();
        assert_eq!(x, ratio(1, 3));
    }

    #[test]
    fn span_comparison() {
        let a = vec![vec![rat(1), rat(0)], vec![rat(1), rat(1)]];
        let b = vec![vec![rat(0), rat(1)], vec![rat(2), rat(0)]];
        assert!(same_span(&a, &b));
        assert!(in_span(&a, &[rat(3), rat(-2)]));
    }
}
