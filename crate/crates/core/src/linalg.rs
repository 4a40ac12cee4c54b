//! Small dense matrices over a [`Field`]. Everything here is exact; sizes
//! never exceed a few dozen rows, so simple Gaussian elimination is plenty.

use crate::field::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<FieldElement>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { field, rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = f.add(out[(i, j)], f.mul(a, other[(k, j)]));
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self[(i, j)], v[j]));
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form; returns (rref, rank, pivot columns).
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m[(r, c)]);
            for j in c..m.cols {
                m[(r, j)] = f.mul(m[(r, j)], inv);
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)];
                    for j in c..m.cols {
                        let sub = f.mul(factor, m[(r, j)]);
                        m[(i, j)] = f.sub(m[(i, j)], sub);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    pub fn det(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let f = self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return f.zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            det = f.mul(det, m[(c, c)]);
            let inv = f.inv(m[(c, c)]);
            for i in (c + 1)..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = f.mul(m[(i, c)], inv);
                for j in c..m.cols {
                    let sub = f.mul(factor, m[(c, j)]);
                    m[(i, j)] = f.sub(m[(i, j)], sub);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = self.field;
        let mut aug = Matrix::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = f.one();
        }
        let (r, _, pivots) = aug.rref();
        // invertible iff all n pivots land in the left block
        if pivots.iter().take_while(|&&c| c < n).count() < n {
            return None;
        }
        let mut inv = Matrix::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)];
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel, each vector of length `cols`.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let f = self.field;
        let (r, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (pi, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = f.neg(r[(pi, fc)]);
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Stable total order on same-shape matrices via element encodings.
    pub fn cmp_entries(&self, other: &Matrix) -> std::cmp::Ordering {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter().zip(&other.data) {
            match a.encoding().cmp(&b.encoding()) {
                std::cmp::Ordering::Equal => continue,
                o => return o,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let f = Field::new(2, 1, None).unwrap();
        let one = f.one();
        let zero = f.zero();
        let m = Matrix::from_rows(f, &[vec![one, one, zero], vec![one, zero, one], vec![zero, one, one]]);
        let (_, rank, _) = m.rref();
        assert_eq!(rank, 2); // rows sum to zero over GF(2)
    }

    #[test]
    fn inverse_round_trip() {
        let f = Field::new(5, 1, None).unwrap();
        let e = |n: i64| f.from_int(n);
        let m = Matrix::from_rows(f, &[vec![e(1), e(2)], vec![e(3), e(4)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 2));
        assert_eq!(inv.mul(&m), Matrix::identity(f, 2));
        let singular = Matrix::from_rows(f, &[vec![e(1), e(2)], vec![e(2), e(4)]]);
        assert!(singular.inverse().is_none());
        assert!(singular.det().is_zero());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f = Field::new(3, 1, None).unwrap();
        let e = |n: i64| f.from_int(n);
        let m = Matrix::from_rows(f, &[vec![e(1), e(1), e(1)], vec![e(0), e(1), e(2)]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        for v in ker {
            assert!(m.apply(&v).iter().all(|x| x.is_zero()));
        }
    }
}
