//! Cubic threefolds in P^4: smoothness, Hermitian detection, rational-line
//! enumeration, good-line frames, and the discriminant quintic of the conic
//! bundle obtained by projecting away from a line.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::poly::{projective_is_empty, Form, Ideal, Monomial};
use rayon::prelude::*;
use smallvec::SmallVec;

/// A cubic hypersurface V+(f) in P^4: a nonzero homogeneous form of degree 3
/// in five variables.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicThreefold {
    field: Field,
    form: Form,
}

impl CubicThreefold {
    pub fn new(form: Form) -> Result<CubicThreefold> {
        if form.nvars() != 5 {
            return Err(Error::DimensionMismatch { expected: 5, got: form.nvars() });
        }
        form.expect_homogeneous_of_degree(3)?;
        Ok(CubicThreefold { field: form.field(), form })
    }

    pub fn parse(text: &str, field: &Field) -> Result<CubicThreefold> {
        let form = Form::parse(text, field, &["x0", "x1", "x2", "x3", "x4"])?;
        CubicThreefold::new(form)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    /// The 35 degree-3 monomial exponent vectors in five variables, in
    /// descending grevlex order. This fixes the indexing of
    /// [`CubicThreefold::coefficients`].
    pub fn monomial_basis() -> Vec<[u16; 5]> {
        let mut monos = Vec::with_capacity(35);
        for e0 in (0..=3u16).rev() {
            for e1 in (0..=3 - e0).rev() {
                for e2 in (0..=3 - e0 - e1).rev() {
                    for e3 in (0..=3 - e0 - e1 - e2).rev() {
                        let e4 = 3 - e0 - e1 - e2 - e3;
                        monos.push([e0, e1, e2, e3, e4]);
                    }
                }
            }
        }
        let ord = crate::poly::MonomialOrder::Grevlex;
        monos.sort_by(|a, b| {
            let ma = Monomial(SmallVec::from_slice(a));
            let mb = Monomial(SmallVec::from_slice(b));
            ord.cmp(&mb, &ma)
        });
        monos
    }

    /// Coefficient vector of length 35 indexed by [`CubicThreefold::monomial_basis`].
    pub fn coefficients(&self) -> Vec<FieldElement> {
        Self::monomial_basis()
            .iter()
            .map(|e| self.form.coefficient(&Monomial(SmallVec::from_slice(e))))
            .collect()
    }

    /// Jacobian smoothness criterion: X is smooth iff the ideal generated by
    /// f and its partials has empty projective vanishing locus over the
    /// algebraic closure.
    pub fn is_smooth(&self, budget: &Budget) -> Result<bool> {
        projective_is_empty(&Ideal::jacobian(&self.form), budget)
    }

    /// In characteristic 2, a cubic is Hermitian when no monomial is
    /// squarefree (every term has a repeated variable). Returns false in
    /// other characteristics, where the notion is empty.
    pub fn is_hermitian(&self) -> bool {
        if self.field.characteristic() != 2 {
            return false;
        }
        self.form.terms().iter().all(|(m, _)| m.0.iter().any(|&e| e >= 2))
    }
}

/// A line in P^4, canonically represented by the reduced row echelon form of
/// a 2x5 matrix whose row space is the cone over the line. Two lines are
/// equal iff their matrices are.
#[derive(Debug, Clone, PartialEq)]
pub struct LineInP4 {
    rref: Matrix,
}

impl LineInP4 {
    /// From two spanning points; fails unless they are independent.
    pub fn from_points(field: Field, a: &[FieldElement], b: &[FieldElement]) -> Result<LineInP4> {
        if a.len() != 5 || b.len() != 5 {
            return Err(Error::DimensionMismatch { expected: 5, got: a.len().max(b.len()) });
        }
        let m = Matrix::from_rows(field, &[a.to_vec(), b.to_vec()]);
        let (rref, rank, _) = m.rref();
        if rank != 2 {
            return Err(Error::SingularMatrix);
        }
        Ok(LineInP4 { rref })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.rref
    }

    pub fn field(&self) -> Field {
        self.rref.field()
    }

    /// The q+1 rational points of the line, as coordinate vectors.
    pub fn points(&self) -> Vec<Vec<FieldElement>> {
        let f = self.field();
        let a = self.rref.row(0);
        let b = self.rref.row(1);
        let mut pts = Vec::with_capacity(f.cardinality() as usize + 1);
        pts.push(b.to_vec()); // [0 : 1]
        for t in f.elements() {
            let p: Vec<FieldElement> = a.iter().zip(b).map(|(&x, &y)| f.add(x, f.mul(t, y))).collect();
            pts.push(p);
        }
        pts
    }

    /// Image of the line under the point map v -> Av.
    pub fn map_points(&self, a: &Matrix) -> Result<LineInP4> {
        let f = self.field();
        let at = a.transpose();
        let rows = Matrix::from_rows(f, &[self.rref.row(0).to_vec(), self.rref.row(1).to_vec()]);
        let img = rows.mul(&at);
        LineInP4::from_points(f, img.row(0), img.row(1))
    }

    fn cmp_canonical(&self, other: &LineInP4) -> std::cmp::Ordering {
        self.rref.cmp_entries(&other.rref)
    }
}

/// Expand f along the line spanned by (a, b): the coefficients of the binary
/// degree-d form (s,t) -> f(s*a + t*b), listed from s^d down to t^d.
pub fn restrict_to_line(f: &Form, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let field = f.field();
    let d = f.degree().unwrap_or(0) as usize;
    let mut acc = vec![field.zero(); d + 1];
    for (m, c) in f.terms() {
        // product over variables of (s*a_i + t*b_i)^{e_i}
        let mut factor = vec![field.one()];
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                let mut next = vec![field.zero(); factor.len() + 1];
                for (j, &fc) in factor.iter().enumerate() {
                    next[j] = field.add(next[j], field.mul(fc, a[i]));
                    next[j + 1] = field.add(next[j + 1], field.mul(fc, b[i]));
                }
                factor = next;
            }
        }
        for (j, &fc) in factor.iter().enumerate() {
            acc[j] = field.add(acc[j], field.mul(fc, *c));
        }
    }
    acc
}

/// Is the line contained in V+(f)? Decided by the vanishing of all
/// coefficients of the restricted binary form, not by sampling points.
pub fn line_on_form(f: &Form, line: &LineInP4) -> bool {
    restrict_to_line(f, line.rref.row(0), line.rref.row(1)).iter().all(|c| c.is_zero())
}

/// Number of lines in P^4 over GF(q) (the Gaussian binomial [5 choose 2]_q).
pub fn line_count(q: u64) -> u64 {
    ((q.pow(5) - 1) / (q - 1)) * ((q.pow(4) - 1) / (q * q - 1))
}

/// All lines of P^4(F) in canonical RREF form. Candidates are generated
/// directly in echelon shape, so no deduplication is needed.
fn all_lines(field: Field) -> Vec<LineInP4> {
    let q = field.cardinality();
    let mut out = Vec::with_capacity(line_count(q) as usize);
    for i in 0..5usize {
        for j in (i + 1)..5 {
            // free slots: row 0 at columns > i except j; row 1 at columns > j
            let free0: Vec<usize> = ((i + 1)..5).filter(|&c| c != j).collect();
            let free1: Vec<usize> = ((j + 1)..5).collect();
            let nfree = free0.len() + free1.len();
            let total = q.pow(nfree as u32);
            for code in 0..total {
                let mut row0 = vec![field.zero(); 5];
                let mut row1 = vec![field.zero(); 5];
                row0[i] = field.one();
                row1[j] = field.one();
                let mut v = code;
                for &c in &free0 {
                    row0[c] = field.from_encoding(v % q);
                    v /= q;
                }
                for &c in &free1 {
                    row1[c] = field.from_encoding(v % q);
                    v /= q;
                }
                let rref = Matrix::from_rows(field, &[row0, row1]);
                out.push(LineInP4 { rref });
            }
        }
    }
    out
}

/// All F-rational lines contained in X, sorted canonically. The candidate
/// space is tested in parallel; the sorted output is independent of thread
/// count.
pub fn enumerate_lines(x: &CubicThreefold, field: &Field, budget: &Budget) -> Result<Vec<LineInP4>> {
    let q = field.cardinality();
    if q > budget.max_line_field {
        return Err(Error::BudgetExceeded {
            what: "line enumeration field size",
            needed: q,
            cap: budget.max_line_field,
        });
    }
    let form = if *field == x.field() {
        x.form.clone()
    } else {
        let emb = crate::field::Embedding::new(&x.field(), field)?;
        x.form.map_coefficients(&emb)
    };
    let candidates = all_lines(*field);
    let mut found: Vec<LineInP4> = candidates.into_par_iter().filter(|l| line_on_form(&form, l)).collect();
    found.sort_by(|a, b| a.cmp_canonical(b));
    Ok(found)
}

/// The normalized data of a cubic with a chosen line: a coordinate change M
/// in GL_5 under which the cubic becomes
///
/// ```text
/// f(Mx) = x3^2*x0 + x3*x4*x1 + x4^2*x2 + x3*Q0 + x4*Q1 + R
/// ```
///
/// with Q0, Q1 quadratic and R cubic in x0, x1, x2, the line sitting at
/// V+(x0, x1, x2).
#[derive(Debug, Clone)]
pub struct GoodLineFrame {
    field: Field,
    matrix: Matrix,
    q0: Form,
    q1: Form,
    r: Form,
}

impl GoodLineFrame {
    pub fn field(&self) -> Field {
        self.field
    }

    /// The coordinate change M with f(Mx) normalized.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn q0(&self) -> &Form {
        &self.q0
    }

    pub fn q1(&self) -> &Form {
        &self.q1
    }

    pub fn r(&self) -> &Form {
        &self.r
    }

    /// Rebuild f(Mx) from the extracted pieces; equals the transformed cubic
    /// exactly.
    pub fn reassemble(&self) -> Form {
        let f = self.field;
        let x = |i: usize| Form::variable(f, 5, i);
        let inj = [0usize, 1, 2];
        let q0 = self.q0.inject(5, &inj);
        let q1 = self.q1.inject(5, &inj);
        let r = self.r.inject(5, &inj);
        x(3).mul(&x(3)).mul(&x(0))
            .add(&x(3).mul(&x(4)).mul(&x(1)))
            .add(&x(4).mul(&x(4)).mul(&x(2)))
            .add(&x(3).mul(&q0))
            .add(&x(4).mul(&q1))
            .add(&r)
    }

    /// The degree-5 discriminant form of the conic fibration, in the three
    /// plane coordinates. In characteristic 2 this is
    /// `y0*Q1^2 + y1^2*R + y1*Q0*Q1 + y2*Q0^2`; in odd characteristic the
    /// determinant of the symmetric matrix of the fiber conic.
    pub fn discriminant(&self) -> Form {
        let f = self.field;
        let y = |i: usize| Form::variable(f, 3, i);
        if f.characteristic() == 2 {
            y(0).mul(&self.q1).mul(&self.q1)
                .add(&y(1).mul(&y(1)).mul(&self.r))
                .add(&y(1).mul(&self.q0).mul(&self.q1))
                .add(&y(2).mul(&self.q0).mul(&self.q0))
        } else {
            let m = self.conic_matrix();
            let det01 = m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1]));
            let det02 = m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0]));
            let det03 = m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0]));
            m[0][0].mul(&det01).sub(&m[0][1].mul(&det02)).add(&m[0][2].mul(&det03))
        }
    }

    /// Symmetric matrix of the fiber conic (odd characteristic only).
    fn conic_matrix(&self) -> [[Form; 3]; 3] {
        let f = self.field;
        assert_ne!(f.characteristic(), 2);
        let half = f.inv(f.from_int(2));
        let y = |i: usize| Form::variable(f, 3, i);
        let h = |g: &Form| g.mul_scalar(half);
        [
            [y(0), h(&y(1)), h(&self.q0)],
            [h(&y(1)), y(2), h(&self.q1)],
            [h(&self.q0), h(&self.q1), self.r.clone()],
        ]
    }

    /// The ideal cutting out fibers that degenerate to a double line: in
    /// characteristic 2 the locus y1 = Q0 = Q1 = 0, in odd characteristic
    /// the vanishing of all 2x2 minors of the conic matrix.
    pub fn double_line_ideal(&self) -> Ideal {
        let f = self.field;
        if f.characteristic() == 2 {
            let y1 = Form::variable(f, 3, 1);
            Ideal::new(f, 3, vec![y1, self.q0.clone(), self.q1.clone()])
        } else {
            let m = self.conic_matrix();
            let mut gens = Vec::new();
            for i in 0..3 {
                for j in (i + 1)..3 {
                    for k in 0..3 {
                        for l in (k + 1)..3 {
                            gens.push(m[i][k].mul(&m[j][l]).sub(&m[i][l].mul(&m[j][k])));
                        }
                    }
                }
            }
            Ideal::new(f, 3, gens)
        }
    }

    /// Is the attached double cover etale, i.e. is the double-line locus
    /// empty over the algebraic closure?
    pub fn is_etale(&self, budget: &Budget) -> Result<bool> {
        projective_is_empty(&self.double_line_ideal(), budget)
    }
}

/// Split f(Mx) by its degree in (x3, x4). Degree-3 terms in (x3, x4) must be
/// absent, which is exactly containment of the line.
fn decompose(g: &Form) -> Result<(Vec<Form>, Form, Form, Form)> {
    let f = g.field();
    let mut l = vec![Form::zero(f, 3); 3];
    let mut q0 = Form::zero(f, 3);
    let mut q1 = Form::zero(f, 3);
    let mut r = Form::zero(f, 3);
    for (m, c) in g.terms() {
        let (e3, e4) = (m.0[3], m.0[4]);
        let base = Form::monomial(f, 3, &[m.0[0], m.0[1], m.0[2]], *c);
        match (e3, e4) {
            (2, 0) => l[0] = l[0].add(&base),
            (1, 1) => l[1] = l[1].add(&base),
            (0, 2) => l[2] = l[2].add(&base),
            (1, 0) => q0 = q0.add(&base),
            (0, 1) => q1 = q1.add(&base),
            (0, 0) => r = r.add(&base),
            _ => return Err(Error::NotOnCubic),
        }
    }
    Ok((l, q0, q1, r))
}

/// Deterministic normalization of (X, l): move l to V+(x0,x1,x2) by
/// extending the line's RREF rows with standard basis vectors (greedy, in
/// index order), then apply the unique further change on (x0,x1,x2) sending
/// the extracted linear forms L0, L1, L2 to the coordinates. Fails with
/// `LineInF0` when the L_i are dependent: such a line admits no
/// conic-bundle frame.
pub fn good_line_frame(x: &CubicThreefold, line: &LineInP4) -> Result<GoodLineFrame> {
    let f = x.field();
    if line.field() != f {
        return Err(Error::Internal("line and cubic over different fields".into()));
    }
    if !line_on_form(&x.form, line) {
        return Err(Error::NotOnCubic);
    }

    // columns 3,4 of M span the line; columns 0..2 are the first standard
    // vectors that keep the system independent
    let va = line.rref.row(0).to_vec();
    let vb = line.rref.row(1).to_vec();
    let mut chosen: Vec<usize> = Vec::with_capacity(3);
    {
        let mut probe_rows = vec![va.clone(), vb.clone()];
        for i in 0..5 {
            if chosen.len() == 3 {
                break;
            }
            let mut e = vec![f.zero(); 5];
            e[i] = f.one();
            let mut trial = probe_rows.clone();
            trial.push(e.clone());
            if Matrix::from_rows(f, &trial).rank() == trial.len() {
                probe_rows.push(e);
                chosen.push(i);
            }
        }
    }
    debug_assert_eq!(chosen.len(), 3);
    let mut m0 = Matrix::zero(f, 5, 5);
    for (col, &i) in chosen.iter().enumerate() {
        m0[(i, col)] = f.one();
    }
    for row in 0..5 {
        m0[(row, 3)] = va[row];
        m0[(row, 4)] = vb[row];
    }

    let g = x.form.substitute_rows(&m0);
    let (l, _, _, _) = decompose(&g)?;

    // independence of L0, L1, L2 is exactly the F0 membership test
    let mut a = Matrix::zero(f, 3, 3);
    for i in 0..3 {
        for j in 0..3 {
            a[(i, j)] = l[i].coefficient(&Monomial::var(3, j));
        }
    }
    let Some(a_inv) = a.inverse() else {
        return Err(Error::LineInF0);
    };

    let mut n = Matrix::identity(f, 5);
    for i in 0..3 {
        for j in 0..3 {
            n[(i, j)] = a_inv[(i, j)];
        }
    }
    let m_total = m0.mul(&n);
    let g2 = x.form.substitute_rows(&m_total);
    let (l2, q0, q1, r) = decompose(&g2)?;
    for (i, li) in l2.iter().enumerate() {
        let xi = Form::variable(f, 3, i);
        if *li != xi {
            return Err(Error::Internal(format!("frame normalization failed: L{i} = {li}")));
        }
    }
    Ok(GoodLineFrame { field: f, matrix: m_total, q0, q1, r })
}

/// Outcome of classifying a line on a cubic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineClassification {
    Good,
    /// The linear forms L0, L1, L2 are dependent: no conic-bundle frame.
    InF0,
    NotGood(NotGoodReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotGoodReason {
    SingularDiscriminant,
    DoubleLineFiber,
}

impl LineClassification {
    pub fn as_str(&self) -> &'static str {
        match self {
            LineClassification::Good => "Good",
            LineClassification::InF0 => "InF0",
            LineClassification::NotGood(NotGoodReason::SingularDiscriminant) => "NotGood(SingularDiscriminant)",
            LineClassification::NotGood(NotGoodReason::DoubleLineFiber) => "NotGood(DoubleLineFiber)",
        }
    }
}

/// Classify a line l on X: Good iff the discriminant is smooth and no fiber
/// degenerates to a double line. Double-line points are always singular on
/// the discriminant, so that locus is tested first to keep the finer reason.
pub fn classify_line(x: &CubicThreefold, line: &LineInP4, budget: &Budget) -> Result<LineClassification> {
    let frame = match good_line_frame(x, line) {
        Ok(fr) => fr,
        Err(Error::LineInF0) => return Ok(LineClassification::InF0),
        Err(e) => return Err(e),
    };
    if !frame.is_etale(budget)? {
        return Ok(LineClassification::NotGood(NotGoodReason::DoubleLineFiber));
    }
    let h = frame.discriminant();
    if !projective_is_empty(&Ideal::jacobian(&h), budget)? {
        return Ok(LineClassification::NotGood(NotGoodReason::SingularDiscriminant));
    }
    Ok(LineClassification::Good)
}
