//! Quadratic forms on even-dimensional spaces over small finite fields,
//! exhaustive enumeration of generators (maximal totally singular
//! subspaces) of smooth quadrics in P^{2n-1}, and the two-family parity law
//! for their pairwise intersections.
//!
//! Projective dimensions are used throughout, with the empty intersection
//! counted as dimension -1; that convention makes the parity congruence
//! dim(g cap h) = dim(g) + a + b (mod 2) literally checkable.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use serde::Serialize;

/// A quadratic form q on F^{2n}, stored as an upper-triangular coefficient
/// matrix: q(v) = sum_{i<=j} c[i][j] v_i v_j. The polar form
/// b(u,v) = q(u+v) - q(u) - q(v) has matrix Q + Q^T, alternating in
/// characteristic 2.
#[derive(Debug, Clone)]
pub struct QuadraticSpace {
    field: Field,
    dim: usize,
    coeffs: Vec<Vec<FieldElement>>,
}

/// Enumeration caps: exhaustive generator searches are feasible (and
/// tested) for 2n <= 8 and q <= 4.
pub const MAX_DIM: usize = 8;
pub const MAX_Q: u64 = 4;

impl QuadraticSpace {
    /// From an upper-triangular coefficient list, row-major:
    /// c00, c01, ..., c0(d-1), c11, c12, ..., c(d-1)(d-1).
    pub fn from_upper_triangular(field: Field, dim: usize, entries: &[FieldElement]) -> Result<QuadraticSpace> {
        if dim % 2 != 0 || dim == 0 {
            return Err(Error::OddDimension(dim));
        }
        let expected = dim * (dim + 1) / 2;
        if entries.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: entries.len() });
        }
        let mut coeffs = vec![vec![field.zero(); dim]; dim];
        let mut it = entries.iter();
        for i in 0..dim {
            for j in i..dim {
                coeffs[i][j] = *it.next().unwrap();
            }
        }
        Ok(QuadraticSpace { field, dim, coeffs })
    }

    /// The split form x0 x1 + x2 x3 + ... in dimension 2n.
    pub fn hyperbolic(field: Field, n: usize) -> QuadraticSpace {
        let dim = 2 * n;
        let mut coeffs = vec![vec![field.zero(); dim]; dim];
        for i in 0..n {
            coeffs[2 * i][2 * i + 1] = field.one();
        }
        QuadraticSpace { field, dim, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.dim / 2
    }

    pub fn evaluate(&self, v: &[FieldElement]) -> FieldElement {
        let f = self.field;
        let mut acc = f.zero();
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            for j in i..self.dim {
                if self.coeffs[i][j].is_zero() || v[j].is_zero() {
                    continue;
                }
                acc = f.add(acc, f.mul(self.coeffs[i][j], f.mul(v[i], v[j])));
            }
        }
        acc
    }

    /// Matrix of the polar bilinear form b(u,v) = q(u+v) - q(u) - q(v).
    pub fn polar_matrix(&self) -> Matrix {
        let f = self.field;
        let mut b = Matrix::zero(f, self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let c = if i < j {
                    self.coeffs[i][j]
                } else if j < i {
                    self.coeffs[j][i]
                } else {
                    f.add(self.coeffs[i][i], self.coeffs[i][i]) // 2 c_ii
                };
                b[(i, j)] = c;
            }
        }
        b
    }

    pub fn polar(&self, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        let f = self.field;
        let mut acc = f.zero();
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let c = if i < j {
                    self.coeffs[i][j]
                } else if j < i {
                    self.coeffs[j][i]
                } else {
                    f.add(self.coeffs[i][i], self.coeffs[i][i])
                };
                if !c.is_zero() && !v[j].is_zero() {
                    acc = f.add(acc, f.mul(c, f.mul(u[i], v[j])));
                }
            }
        }
        acc
    }

    /// For even-dimensional forms, V+(q) is smooth iff the polar form is
    /// nondegenerate (in any characteristic).
    pub fn is_smooth(&self) -> bool {
        !self.polar_matrix().det().is_zero()
    }
}

/// A generator of a smooth quadric: the RREF basis matrix of an n-dim
/// totally singular linear subspace (an (n-1)-plane projectively).
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    basis: Matrix,
}

impl Generator {
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Projective dimension, always n-1.
    pub fn proj_dim(&self) -> i64 {
        self.basis.nrows() as i64 - 1
    }

    /// Projective dimension of the intersection with another generator;
    /// empty intersection is -1.
    pub fn intersection_dim(&self, other: &Generator) -> i64 {
        let f = self.basis.field();
        let mut rows: Vec<Vec<FieldElement>> = Vec::new();
        for i in 0..self.basis.nrows() {
            rows.push(self.basis.row(i).to_vec());
        }
        for i in 0..other.basis.nrows() {
            rows.push(other.basis.row(i).to_vec());
        }
        let rank_sum = Matrix::from_rows(f, &rows).rank();
        let lin = self.basis.nrows() + other.basis.nrows() - rank_sum;
        lin as i64 - 1
    }
}

/// All generators of a smooth quadric, by backtracking over singular flags
/// in echelon shape: pivot columns are chosen first, then rows are filled
/// and pruned by q(row) = 0 and b(row, earlier rows) = 0. Each subspace
/// appears exactly once, already in canonical RREF form; output is sorted.
pub fn enumerate_generators(space: &QuadraticSpace) -> Result<Vec<Generator>> {
    let q = space.field.cardinality();
    if space.dim > MAX_DIM || q > MAX_Q {
        return Err(Error::BudgetExceeded {
            what: "generator enumeration size",
            needed: q.max(space.dim as u64),
            cap: MAX_Q.max(MAX_DIM as u64),
        });
    }
    if !space.is_smooth() {
        return Err(Error::NotSmooth { what: "quadric (degenerate polar form)".into() });
    }
    // Rows are built with increasing pivots, 1 at the pivot, zeros before
    // it, and free entries after; a new pivot column is only allowed where
    // all earlier rows vanish. By induction the completed matrix is the
    // subspace's unique RREF, so each generator appears exactly once.
    fn recurse(
        space: &QuadraticSpace,
        pivots: &mut Vec<usize>,
        rows: &mut Vec<Vec<FieldElement>>,
        out: &mut Vec<Generator>,
    ) {
        let n = space.n();
        let dim = space.dim();
        let f = space.field();
        if rows.len() == n {
            out.push(Generator { basis: Matrix::from_rows(f, rows) });
            return;
        }
        let next_pivot_min = pivots.last().map_or(0, |&p| p + 1);
        // a pivot this late must leave room for the remaining rows
        let remaining = n - rows.len();
        for pivot in next_pivot_min..=(dim - remaining) {
            if rows.iter().any(|r| !r[pivot].is_zero()) {
                continue;
            }
            let free: Vec<usize> = ((pivot + 1)..dim).collect();
            let total = f.cardinality().pow(free.len() as u32);
            'assign: for code in 0..total {
                let mut row = vec![f.zero(); dim];
                row[pivot] = f.one();
                let mut v = code;
                for &c in &free {
                    row[c] = f.from_encoding(v % f.cardinality());
                    v /= f.cardinality();
                }
                if !space.evaluate(&row).is_zero() {
                    continue;
                }
                for r in rows.iter() {
                    if !space.polar(r, &row).is_zero() {
                        continue 'assign;
                    }
                }
                pivots.push(pivot);
                rows.push(row);
                recurse(space, pivots, rows, out);
                rows.pop();
                pivots.pop();
            }
        }
    }

    let mut out: Vec<Generator> = Vec::new();
    let mut pivots = Vec::with_capacity(space.n());
    let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(space.n());
    recurse(space, &mut pivots, &mut rows, &mut out);
    out.sort_by(|a, b| a.basis.cmp_entries(&b.basis));
    Ok(out)
}

/// Expected generator count of the split quadric: prod_{i=0}^{n-1} (1+q^i).
pub fn hyperbolic_generator_count(n: usize, q: u64) -> u64 {
    (0..n as u32).map(|i| 1 + q.pow(i)).product()
}

#[derive(Debug, Clone, Serialize)]
pub struct ParityReport {
    pub generator_count: usize,
    pub class_sizes: [usize; 2],
    /// Ordered pairs (by index) violating the parity congruence.
    pub violations: Vec<ParityViolation>,
    /// Exactly two nonempty classes found.
    pub two_classes: bool,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParityViolation {
    pub g: usize,
    pub h: usize,
    pub intersection_dim: i64,
}

impl ParityReport {
    pub fn passes(&self) -> bool {
        self.two_classes && self.violations.is_empty()
    }
}

/// Partition a complete generator list into the two parity classes (same
/// class as gens[0] iff dim(g0 cap h) = dim(g0) mod 2) and verify
/// dim(g cap h) = dim(g) + a + b (mod 2) for every ordered pair. An
/// inconsistent partition shows up as violations in the report, never as an
/// error.
pub fn verify_generator_parity(gens: &[Generator]) -> ParityReport {
    if gens.is_empty() {
        return ParityReport { generator_count: 0, class_sizes: [0, 0], violations: Vec::new(), two_classes: false };
    }
    let d = gens[0].proj_dim();
    let labels: Vec<i64> = gens
        .iter()
        .map(|g| (gens[0].intersection_dim(g) - d).rem_euclid(2))
        .collect();
    let mut class_sizes = [0usize; 2];
    for &l in &labels {
        class_sizes[l as usize] += 1;
    }
    let mut violations = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        for (j, h) in gens.iter().enumerate() {
            let idim = g.intersection_dim(h);
            if (idim - (d + labels[i] + labels[j])).rem_euclid(2) != 0 {
                violations.push(ParityViolation { g: i, h: j, intersection_dim: idim });
            }
        }
    }
    ParityReport {
        generator_count: gens.len(),
        class_sizes,
        violations,
        two_classes: class_sizes[0] > 0 && class_sizes[1] > 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: u32) -> Field {
        Field::new(p, k, None).unwrap()
    }

    fn elem_space(field: Field, dim: usize, upper: &[i64]) -> QuadraticSpace {
        let entries: Vec<FieldElement> = upper.iter().map(|&c| field.from_int(c)).collect();
        QuadraticSpace::from_upper_triangular(field, dim, &entries).unwrap()
    }

    #[test]
    fn polar_and_smoothness_examples() {
        let f = gf(2, 1);
        let hyp = QuadraticSpace::hyperbolic(f, 2); // x0x1 + x2x3
        assert!(hyp.is_smooth());

        // q = x0^2 in dim 2: polar form vanishes
        let square = elem_space(f, 2, &[1, 0, 0]);
        assert!(square.polar_matrix().det().is_zero());
        assert!(!square.is_smooth());

        // q = x0^2 + x0x1 + x1^2: smooth with no projective rational zero
        let anisotropic = elem_space(f, 2, &[1, 1, 1]);
        assert!(anisotropic.is_smooth());
        for u in f.elements() {
            for v in f.elements() {
                if u.is_zero() && v.is_zero() {
                    continue;
                }
                assert!(!anisotropic.evaluate(&[u, v]).is_zero());
            }
        }
        assert!(enumerate_generators(&anisotropic).unwrap().is_empty());
    }

    #[test]
    fn odd_dimension_rejected() {
        let f = gf(2, 1);
        assert!(matches!(
            QuadraticSpace::from_upper_triangular(f, 3, &vec![f.one(); 6]),
            Err(Error::OddDimension(3))
        ));
    }

    #[test]
    fn n1_generators_are_the_two_points() {
        let f = gf(2, 1);
        let hyp = QuadraticSpace::hyperbolic(f, 1);
        let gens = enumerate_generators(&hyp).unwrap();
        assert_eq!(gens.len(), 2);
        let report = verify_generator_parity(&gens);
        assert!(report.passes());
        assert_eq!(report.class_sizes, [1, 1]);
        // the two distinct points have empty intersection: -1 = 0 + 0 + 1 (mod 2)
        assert_eq!(gens[0].intersection_dim(&gens[1]), -1);
    }

    #[test]
    fn quadric_surface_has_two_rulings() {
        let f = gf(2, 1);
        let hyp = QuadraticSpace::hyperbolic(f, 2);
        let gens = enumerate_generators(&hyp).unwrap();
        assert_eq!(gens.len() as u64, hyperbolic_generator_count(2, 2));
        assert_eq!(gens.len(), 6);
        let report = verify_generator_parity(&gens);
        assert!(report.passes(), "violations: {:?}", report.violations);
        assert_eq!(report.class_sizes, [3, 3]);
        // same ruling: skew or equal (dim -1 or 1); opposite ruling: meet in a point
        let labels: Vec<i64> = gens.iter().map(|g| (gens[0].intersection_dim(g) - 1).rem_euclid(2)).collect();
        for (i, g) in gens.iter().enumerate() {
            for (j, h) in gens.iter().enumerate() {
                let idim = g.intersection_dim(h);
                if labels[i] == labels[j] {
                    assert!(idim == -1 || idim == 1);
                } else {
                    assert_eq!(idim, 0);
                }
            }
        }
    }

    #[test]
    fn p5_quadric_has_thirty_generators() {
        let f = gf(2, 1);
        let hyp = QuadraticSpace::hyperbolic(f, 3);
        let gens = enumerate_generators(&hyp).unwrap();
        assert_eq!(gens.len() as u64, hyperbolic_generator_count(3, 2));
        assert_eq!(gens.len(), 30);
        let report = verify_generator_parity(&gens);
        assert!(report.passes());
        assert_eq!(report.class_sizes, [15, 15]);
    }

    #[test]
    fn gf3_quadric_surface() {
        let f = gf(3, 1);
        let hyp = QuadraticSpace::hyperbolic(f, 2);
        let gens = enumerate_generators(&hyp).unwrap();
        assert_eq!(gens.len() as u64, hyperbolic_generator_count(2, 3));
        let report = verify_generator_parity(&gens);
        assert!(report.passes());
        assert_eq!(report.class_sizes, [4, 4]);
    }

    #[test]
    fn generators_are_totally_singular() {
        let f = gf(2, 1);
        for n in 1..=3 {
            let hyp = QuadraticSpace::hyperbolic(f, n);
            for g in enumerate_generators(&hyp).unwrap() {
                // every nonzero vector of the subspace must be singular
                let rows = g.basis();
                let k = rows.nrows();
                for code in 1..(1u64 << k) {
                    let mut v = vec![f.zero(); hyp.dim()];
                    for bit in 0..k {
                        if code >> bit & 1 == 1 {
                            for c in 0..hyp.dim() {
                                v[c] = f.add(v[c], rows[(bit, c)]);
                            }
                        }
                    }
                    assert!(hyp.evaluate(&v).is_zero());
                }
            }
        }
    }

    #[test]
    fn scaling_is_quadratic() {
        let f4 = gf(2, 2);
        let hyp = QuadraticSpace::hyperbolic(f4, 2);
        for lam in f4.elements() {
            for code in 0..16u64 {
                let v: Vec<FieldElement> =
                    (0..4).map(|i| f4.from_encoding(code >> i & 1)).collect();
                let scaled: Vec<FieldElement> = v.iter().map(|&x| f4.mul(lam, x)).collect();
                let lhs = hyp.evaluate(&scaled);
                let rhs = f4.mul(f4.mul(lam, lam), hyp.evaluate(&v));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn budget_caps_enforced() {
        let f8 = gf(2, 3);
        let hyp = QuadraticSpace::hyperbolic(f8, 2);
        assert!(matches!(enumerate_generators(&hyp), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn elliptic_dim4_has_no_generators() {
        // x0^2 + x0x1 + x1^2 + x2x3: smooth, Witt index 1
        let f = gf(2, 1);
        let q = elem_space(f, 4, &[1, 1, 0, 0, 1, 0, 0, 0, 1, 0]);
        assert!(q.is_smooth());
        let gens = enumerate_generators(&q).unwrap();
        assert!(gens.is_empty());
        let report = verify_generator_parity(&gens);
        assert!(!report.two_classes);
    }
}
