//! Small square matrices over a commutative ring, exact throughout.
//!
//! Everything in this crate happens in rank 3 or 4, so matrices are stored
//! dense and determinants use cofactor expansion — no pivoting, no growth
//! concerns, valid over any commutative ring. Inverses go through the
//! adjugate: A⁻¹ exists iff det(A) is a unit, and then
//! A⁻¹ = det(A)⁻¹ · adj(A).
//!
//! Row reduction (`rref`, `nullspace`) is offered separately and requires
//! the ring to be a field, since it divides by pivots.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Ring, RingElement};

/// A dense n×n matrix over a fixed ring (row-major).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    ring: Ring,
    n: usize,
    data: Vec<RingElement>,
}

impl Mat {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn zero(ring: &Ring, n: usize) -> Mat {
        Mat { ring: ring.clone(), n, data: vec![ring.zero(); n * n] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Mat {
        let mut m = Mat::zero(ring, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<RingElement>>) -> Mat {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "from_rows: not square");
        let data: Vec<RingElement> = rows.into_iter().flatten().collect();
        assert!(data.iter().all(|x| x.ring() == ring), "from_rows: mixed rings");
        Mat { ring: ring.clone(), n, data }
    }

    /// Convenience constructor from integer literals via ℤ → ring.
    pub fn from_i64(ring: &Ring, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            ring,
            rows.iter().map(|r| r.iter().map(|&x| ring.from_i64(x)).collect()).collect(),
        )
    }

    pub fn at(&self, i: usize, j: usize) -> &RingElement {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement) {
        assert!(v.ring() == &self.ring, "set: mixed rings");
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<RingElement> {
        (0..self.n).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<RingElement> {
        (0..self.n).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(&self.ring, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &RingElement) -> Mat {
        let mut s = self.clone();
        for v in &mut s.data {
            *v = &*v * c;
        }
        s
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n, "add: size mismatch");
        let mut s = self.clone();
        for (v, w) in s.data.iter_mut().zip(&other.data) {
            *v = &*v + w;
        }
        s
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n, "sub: size mismatch");
        let mut s = self.clone();
        for (v, w) in s.data.iter_mut().zip(&other.data) {
            *v = &*v - w;
        }
        s
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n, "mul: size mismatch");
        let n = self.n;
        let mut out = Mat::zero(&self.ring, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.ring.zero();
                for k in 0..n {
                    acc = acc + self.at(i, k) * other.at(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[RingElement]) -> Vec<RingElement> {
        assert_eq!(v.len(), self.n, "mul_vec: size mismatch");
        (0..self.n)
            .map(|i| {
                let mut acc = self.ring.zero();
                for k in 0..self.n {
                    acc = acc + self.at(i, k) * &v[k];
                }
                acc
            })
            .collect()
    }

    /// The (i, j) minor: the matrix with row i and column j deleted.
    pub fn minor(&self, i: usize, j: usize) -> Mat {
        let rows = (0..self.n)
            .filter(|&r| r != i)
            .map(|r| (0..self.n).filter(|&c| c != j).map(|c| self.at(r, c).clone()).collect())
            .collect();
        Mat::from_rows(&self.ring, rows)
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> RingElement {
        match self.n {
            0 => self.ring.one(),
            1 => self.at(0, 0).clone(),
            _ => {
                let mut acc = self.ring.zero();
                for j in 0..self.n {
                    let term = self.at(0, j) * &self.minor(0, j).det();
                    acc = if j % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    /// Cofactor matrix: entry (i, j) is (−1)^{i+j} det(minor(i, j)).
    pub fn cofactor_matrix(&self) -> Mat {
        let mut c = Mat::zero(&self.ring, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let d = self.minor(i, j).det();
                c.set(i, j, if (i + j) % 2 == 0 { d } else { -d });
            }
        }
        c
    }

    /// Adjugate (transpose of the cofactor matrix): A · adj(A) = det(A) · I.
    pub fn adjugate(&self) -> Mat {
        self.cofactor_matrix().transpose()
    }

    /// Inverse when det is a unit, else `None`.
    pub fn inverse(&self) -> Option<Mat> {
        let d = self.det().inverse()?;
        Some(self.adjugate().scale(&d))
    }

    pub fn is_invertible(&self) -> bool {
        self.det().is_unit()
    }

    /// Inverse, or `SingularMatrix`.
    pub fn try_inverse(&self) -> Result<Mat> {
        self.inverse().ok_or(Error::SingularMatrix)
    }

    /// Lower-right k×k block.
    pub fn lower_right(&self, k: usize) -> Mat {
        assert!(k <= self.n);
        let off = self.n - k;
        let rows = (0..k)
            .map(|i| (0..k).map(|j| self.at(off + i, off + j).clone()).collect())
            .collect();
        Mat::from_rows(&self.ring, rows)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form over a field. Returns the reduced rows and the
/// pivot column of each nonzero row. Panics if a needed pivot inverse does
/// not exist (i.e. the ring is not a field).
pub fn rref_field(mut rows: Vec<Vec<RingElement>>) -> (Vec<Vec<RingElement>>, Vec<usize>) {
    if rows.is_empty() {
        return (rows, vec![]);
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inverse().expect("rref_field: pivot not invertible (field required)");
        for v in &mut rows[r] {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] = &rows[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of the right nullspace {x : A x = 0} over a field, one vector per
/// free column, in column order.
pub fn nullspace_field(rows: Vec<Vec<RingElement>>, ncols: usize, ring: &Ring) -> Vec<Vec<RingElement>> {
    let (rr, pivots) = rref_field(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![ring.zero(); ncols];
            v[fc] = ring.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rr[ri][fc];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_examples() {
        let q = Ring::Rationals;
        let a = Mat::from_i64(&q, &[&[1, 2], &[3, 4]]);
        assert_eq!(a.det(), q.from_i64(-2));
        let b = Mat::from_i64(&q, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        assert_eq!(b.det(), q.from_i64(30));
        let c = Mat::from_i64(&q, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(c.det(), q.one());
    }

    #[test]
    fn cofactor_worked_example() {
        // g = [[1,1,0],[0,1,0],[0,0,1]]: cof(g) = [[1,0,0],[-1,1,0],[0,0,1]].
        let q = Ring::Rationals;
        let g = Mat::from_i64(&q, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let cof = g.cofactor_matrix();
        assert_eq!(cof, Mat::from_i64(&q, &[&[1, 0, 0], &[-1, 1, 0], &[0, 0, 1]]));
        assert_eq!(cof.column(0), vec![q.from_i64(1), q.from_i64(-1), q.from_i64(0)]);
    }

    #[test]
    fn adjugate_identity_law() {
        // A · adj(A) = det(A) · I for assorted matrices over assorted rings.
        let cases: Vec<(Ring, Mat)> = vec![
            (Ring::Integers, Mat::from_i64(&Ring::Integers, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]])),
            (
                Ring::parse("fp:5").unwrap(),
                Mat::from_i64(&Ring::parse("fp:5").unwrap(), &[&[1, 2, 3], &[4, 0, 1], &[2, 2, 2]]),
            ),
            (
                Ring::parse("zmod:2^3").unwrap(),
                Mat::from_i64(
                    &Ring::parse("zmod:2^3").unwrap(),
                    &[&[1, 2, 3, 4], &[5, 6, 7, 0], &[1, 0, 1, 0], &[3, 3, 1, 7]],
                ),
            ),
        ];
        for (ring, a) in cases {
            let lhs = a.mul(&a.adjugate());
            let rhs = Mat::identity(&ring, a.size()).scale(&a.det());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inverse_over_q_and_fp() {
        let q = Ring::Rationals;
        let a = Mat::from_i64(&q, &[&[1, 2], &[3, 4]]);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai), Mat::identity(&q, 2));
        assert_eq!(ai.at(0, 0), &q.from_i64(-2));
        assert_eq!(ai.at(0, 1), &q.one());

        let f7 = Ring::parse("fp:7").unwrap();
        let b = Mat::from_i64(&f7, &[&[1, 2, 0], &[0, 1, 5], &[3, 0, 1]]);
        assert_eq!(b.mul(&b.inverse().unwrap()), Mat::identity(&f7, 3));

        // det 2 over ℤ: not invertible over ℤ (2 is not a unit).
        let z = Ring::Integers;
        let c = Mat::from_i64(&z, &[&[2, 0], &[0, 1]]);
        assert!(c.inverse().is_none());
        assert_eq!(c.try_inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn cofactor_equals_det_times_inverse_transpose() {
        // cof(A) = det(A) · (A⁻¹)ᵀ for invertible A.
        let q = Ring::Rationals;
        let a = Mat::from_i64(&q, &[&[1, 1, 0], &[0, 1, 2], &[1, 0, 3]]);
        let lhs = a.cofactor_matrix();
        let rhs = a.inverse().unwrap().transpose().scale(&a.det());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lower_right_block() {
        let z = Ring::Integers;
        let a = Mat::from_i64(&z, &[&[1, 2, 3, 4], &[5, 6, 7, 8], &[9, 10, 11, 12], &[13, 14, 15, 16]]);
        assert_eq!(
            a.lower_right(3),
            Mat::from_i64(&z, &[&[6, 7, 8], &[10, 11, 12], &[14, 15, 16]])
        );
    }

    #[test]
    fn rref_and_nullspace() {
        let f7 = Ring::parse("fp:7").unwrap();
        // x + 2y + 3z = 0; 2x + 4y + z = 0 over F7 → rank 2, nullity 1.
        let rows = vec![
            vec![f7.from_i64(1), f7.from_i64(2), f7.from_i64(3)],
            vec![f7.from_i64(2), f7.from_i64(4), f7.from_i64(1)],
        ];
        let ns = nullspace_field(rows.clone(), 3, &f7);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            for row in &rows {
                let mut acc = f7.zero();
                for (a, x) in row.iter().zip(v) {
                    acc = acc + a * x;
                }
                assert!(acc.is_zero());
            }
        }
        let (rr, pivots) = rref_field(rows);
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(rr.len(), 2);
    }

    #[test]
    fn nullspace_of_zero_map_is_full() {
        let f3 = Ring::parse("fp:3").unwrap();
        let rows = vec![vec![f3.zero(), f3.zero()]];
        let ns = nullspace_field(rows, 2, &f3);
        assert_eq!(ns.len(), 2);
    }

    #[test]
    fn det_is_multiplicative() {
        let f7 = Ring::parse("fp:7").unwrap();
        let a = Mat::from_i64(&f7, &[&[1, 2, 3], &[0, 4, 5], &[6, 0, 1]]);
        let b = Mat::from_i64(&f7, &[&[2, 1, 0], &[1, 1, 1], &[0, 3, 2]]);
        assert_eq!(a.mul(&b).det(), a.det() * b.det());
    }
}
