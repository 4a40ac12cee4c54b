//! The etale double cover attached to a good-line frame: per-fiber splitting
//! analysis and point counts of the discriminant curve C and its cover over
//! extension fields.
//!
//! Over a point y of C the fiber conic
//!
//! ```text
//! G(u,v,t) = y0*u^2 + y1*u*v + y2*v^2 + Q0(y)*u*t + Q1(y)*v*t + R(y)*t^2
//! ```
//!
//! degenerates to a pair of lines; the cover's two points over y are those
//! lines, rational together or swapped by Frobenius.

use crate::budget::Budget;
use crate::cubic::GoodLineFrame;
use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};
use crate::poly::Form;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SplitType {
    /// Two rational lines: two rational points of the cover.
    Split,
    /// Two conjugate lines, rational only over the quadratic extension.
    Nonsplit,
    /// A double line; happens iff y1 = Q0(y) = Q1(y) = 0, never for an
    /// etale cover.
    DoubleLine,
}

/// Point counts of C and its double cover over GF(q^m) for m = 1..M.
#[derive(Debug, Clone, Serialize)]
pub struct CountTable {
    pub q: u64,
    pub counts: Vec<CountRow>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CountRow {
    pub m: u32,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "Ntilde")]
    pub n_tilde: u64,
}

/// Evaluation context for one extension field: the frame's forms with
/// coefficients embedded into GF(q^m).
pub struct FiberContext {
    field: Field,
    h: Form,
    q0: Form,
    q1: Form,
    r: Form,
}

impl FiberContext {
    /// Build the context for fibers over `ext`, an extension of the frame's
    /// base field. Characteristic 2 only.
    pub fn new(frame: &GoodLineFrame, ext: &Field) -> Result<FiberContext> {
        let base = frame.field();
        if base.characteristic() != 2 {
            return Err(Error::WrongCharacteristic { expected: 2, got: base.characteristic() });
        }
        let emb = Embedding::new(&base, ext)?;
        Ok(FiberContext {
            field: *ext,
            h: frame.discriminant().map_coefficients(&emb),
            q0: frame.q0().map_coefficients(&emb),
            q1: frame.q1().map_coefficients(&emb),
            r: frame.r().map_coefficients(&emb),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn discriminant(&self) -> &Form {
        &self.h
    }

    /// The six conic coefficients (y0, y1, y2, Q0(y), Q1(y), R(y)) at y.
    pub fn conic_coefficients(&self, y: &[FieldElement; 3]) -> [FieldElement; 6] {
        let q0 = self.q0.evaluate(y.as_slice()).expect("arity 3");
        let q1 = self.q1.evaluate(y.as_slice()).expect("arity 3");
        let r = self.r.evaluate(y.as_slice()).expect("arity 3");
        [y[0], y[1], y[2], q0, q1, r]
    }

    /// Decide how the fiber over y splits, in O(1) field operations.
    ///
    /// The polar form of G is alternating with rows (0, y1, Q0), (y1, 0, Q1),
    /// (Q0, Q1, 0), so a degenerate non-double fiber has its unique singular
    /// point at s = [Q1 : Q0 : y1]; G(s) equals the discriminant, hence
    /// vanishes on C. Restricting G to the coordinate line opposite the
    /// first nonzero entry of s gives a binary quadratic
    /// alpha*a^2 + beta*a*b + gamma*b^2 whose middle coefficient is that
    /// entry, nonzero by choice; the two lines are rational iff
    /// Tr(alpha*gamma / beta^2) = 0.
    pub fn splitting(&self, y: &[FieldElement; 3]) -> Result<SplitType> {
        let f = self.field;
        if !self.h.evaluate(y.as_slice())?.is_zero() {
            return Err(Error::PointNotOnDiscriminant);
        }
        let [a, b, c, d, e, r] = self.conic_coefficients(y);
        if b.is_zero() && d.is_zero() && e.is_zero() {
            return Ok(SplitType::DoubleLine);
        }
        let (alpha, beta, gamma) = if !e.is_zero() {
            (c, e, r) // u = 0: c*v^2 + e*v*t + r*t^2
        } else if !d.is_zero() {
            (a, d, r) // v = 0: a*u^2 + d*u*t + r*t^2
        } else {
            (a, b, c) // t = 0: a*u^2 + b*u*v + c*v^2
        };
        let w = f.mul(f.mul(alpha, gamma), f.inv(f.mul(beta, beta)));
        if f.trace_is_zero(w) {
            Ok(SplitType::Split)
        } else {
            Ok(SplitType::Nonsplit)
        }
    }
}

/// One-off splitting decision for a single fiber; for bulk work build a
/// [`FiberContext`] once and reuse it.
pub fn fiber_splitting(frame: &GoodLineFrame, ext: &Field, y: &[FieldElement; 3]) -> Result<SplitType> {
    FiberContext::new(frame, ext)?.splitting(y)
}

/// Brute-force oracle: the number of points of V+(G) in P^2 over the given
/// field. A split fiber has 2q+1 points, a nonsplit fiber exactly 1, a
/// double line q+1.
pub fn conic_point_count(field: &Field, coeffs: &[FieldElement; 6]) -> u64 {
    let [a, b, c, d, e, r] = *coeffs;
    let f = *field;
    let eval = |u: FieldElement, v: FieldElement, t: FieldElement| {
        let mut acc = f.mul(f.mul(u, u), a);
        acc = f.add(acc, f.mul(f.mul(u, v), b));
        acc = f.add(acc, f.mul(f.mul(v, v), c));
        acc = f.add(acc, f.mul(f.mul(u, t), d));
        acc = f.add(acc, f.mul(f.mul(v, t), e));
        f.add(acc, f.mul(f.mul(t, t), r))
    };
    let mut count = 0u64;
    for v in f.elements() {
        for t in f.elements() {
            if eval(f.one(), v, t).is_zero() {
                count += 1;
            }
        }
    }
    for t in f.elements() {
        if eval(f.zero(), f.one(), t).is_zero() {
            count += 1;
        }
    }
    if eval(f.zero(), f.zero(), f.one()).is_zero() {
        count += 1;
    }
    count
}

/// Representatives of P^2(F) in a deterministic order.
pub fn plane_points(field: &Field) -> Vec<[FieldElement; 3]> {
    let f = *field;
    let q = f.cardinality() as usize;
    let mut pts = Vec::with_capacity(q * q + q + 1);
    for a in f.elements() {
        for b in f.elements() {
            pts.push([f.one(), a, b]);
        }
    }
    for a in f.elements() {
        pts.push([f.zero(), f.one(), a]);
    }
    pts.push([f.zero(), f.zero(), f.one()]);
    pts
}

/// Count N_m = #C(GF(q^m)) and Ntilde_m = #Ctilde(GF(q^m)) for m = 1..=m_max
/// by fresh enumeration of P^2 for each m. Requires an etale cover.
/// Enumeration is data-parallel with a deterministic reduction.
pub fn count_curve_and_cover(frame: &GoodLineFrame, m_max: u32, budget: &Budget) -> Result<CountTable> {
    let base = frame.field();
    if !frame.is_etale(budget)? {
        return Err(Error::NotEtale);
    }
    let q = base.cardinality();
    let mut counts = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let qm = q
            .checked_pow(m)
            .filter(|&v| v <= budget.max_curve_field)
            .ok_or(Error::BudgetExceeded {
                what: "curve point count extension size",
                needed: q.saturating_pow(m),
                cap: budget.max_curve_field,
            })?;
        let ext = Field::new(base.characteristic(), base.degree() * m, None)?;
        debug_assert_eq!(ext.cardinality(), qm);
        let ctx = FiberContext::new(frame, &ext)?;
        let (n, n_split) = count_in_plane(&ctx)?;
        counts.push(CountRow { m, n, n_tilde: 2 * n_split });
    }
    Ok(CountTable { q, counts })
}

/// (points on C, split fibers) over the context field.
fn count_in_plane(ctx: &FiberContext) -> Result<(u64, u64)> {
    let f = ctx.field;
    let one = f.one();
    let zero = f.zero();
    // chunk on the first affine coordinate; counters add up associatively
    let per_a: Result<Vec<(u64, u64)>> = (0..f.cardinality())
        .into_par_iter()
        .map(|enc| {
            let a = f.from_encoding(enc);
            let mut n = 0u64;
            let mut split = 0u64;
            for b in f.elements() {
                tally(ctx, [one, a, b], &mut n, &mut split)?;
            }
            Ok((n, split))
        })
        .collect();
    let (mut n, mut split) = per_a?.into_iter().fold((0, 0), |(x, y), (a, b)| (x + a, y + b));
    for a in f.elements() {
        tally(ctx, [zero, one, a], &mut n, &mut split)?;
    }
    tally(ctx, [zero, zero, one], &mut n, &mut split)?;
    Ok((n, split))
}

fn tally(ctx: &FiberContext, y: [FieldElement; 3], n: &mut u64, split: &mut u64) -> Result<()> {
    if ctx.h.evaluate(y.as_slice()).expect("arity 3").is_zero() {
        *n += 1;
        match ctx.splitting(&y)? {
            SplitType::Split => *split += 1,
            SplitType::Nonsplit => {}
            SplitType::DoubleLine => {
                return Err(Error::Internal("double-line fiber on an etale cover".into()));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::{good_line_frame, CubicThreefold, LineInP4};

    const PAPER_CUBIC: &str =
        "x3^2*x0 + x3*x4*x1 + x4^2*x2 + x3*(x0^2+x1^2) + x4*(x1^2+x2^2) + x0*x2^2 + x2*x0^2";

    fn gf2() -> Field {
        Field::new(2, 1, None).unwrap()
    }

    fn span_line(f: Field, i: usize, j: usize) -> LineInP4 {
        let a: Vec<FieldElement> = (0..5).map(|c| if c == i { f.one() } else { f.zero() }).collect();
        let b: Vec<FieldElement> = (0..5).map(|c| if c == j { f.one() } else { f.zero() }).collect();
        LineInP4::from_points(f, &a, &b).unwrap()
    }

    fn paper_frame() -> GoodLineFrame {
        let f = gf2();
        let x = CubicThreefold::parse(PAPER_CUBIC, &f).unwrap();
        good_line_frame(&x, &span_line(f, 3, 4)).unwrap()
    }

    #[test]
    fn splitting_agrees_with_conic_point_count_oracle() {
        let frame = paper_frame();
        for m in 1..=2u32 {
            let ext = Field::new(2, m, None).unwrap();
            let ctx = FiberContext::new(&frame, &ext).unwrap();
            let qm = ext.cardinality();
            for y in plane_points(&ext) {
                if !ctx.discriminant().evaluate(y.as_slice()).unwrap().is_zero() {
                    assert!(matches!(ctx.splitting(&y), Err(Error::PointNotOnDiscriminant)));
                    continue;
                }
                let coeffs = ctx.conic_coefficients(&y);
                let pts = conic_point_count(&ext, &coeffs);
                match ctx.splitting(&y).unwrap() {
                    SplitType::Split => assert_eq!(pts, 2 * qm + 1),
                    SplitType::Nonsplit => assert_eq!(pts, 1),
                    SplitType::DoubleLine => assert_eq!(pts, qm + 1),
                }
            }
        }
    }

    #[test]
    fn paper_counts_over_gf2() {
        let budget = Budget::default();
        let frame = paper_frame();
        let table = count_curve_and_cover(&frame, 2, &budget).unwrap();
        assert_eq!(table.q, 2);
        // hand-checked fibers of the example: C has the four rational points
        // [1:0:0], [0:0:1], [1:0:1], [1:1:1], of which the first three split
        assert_eq!(table.counts[0].n, 4);
        assert_eq!(table.counts[0].n_tilde, 6);
        for row in &table.counts {
            assert_eq!(row.n_tilde % 2, 0);
            assert!(row.n_tilde <= 2 * row.n);
            let qm = 2u64.pow(row.m) as f64;
            assert!(((row.n as f64) - (qm + 1.0)).abs() <= 12.0 * qm.sqrt());
        }
    }

    #[test]
    fn tower_consistency_of_splitting() {
        let frame = paper_frame();
        let f2 = gf2();
        let f4 = Field::new(2, 2, None).unwrap();
        let ctx2 = FiberContext::new(&frame, &f2).unwrap();
        let ctx4 = FiberContext::new(&frame, &f4).unwrap();
        let emb = Embedding::new(&f2, &f4).unwrap();
        for y in plane_points(&f2) {
            if !ctx2.discriminant().evaluate(y.as_slice()).unwrap().is_zero() {
                continue;
            }
            let y4 = [emb.embed(y[0]), emb.embed(y[1]), emb.embed(y[2])];
            // conjugate lines live over the quadratic extension, so every
            // fiber splits there
            assert_eq!(ctx4.splitting(&y4).unwrap(), SplitType::Split);
        }
    }

    #[test]
    fn cover_points_match_lines_in_fibers() {
        // Ntilde_1 equals the number of rational lines on X, other than l,
        // meeting l: each one lies in the residual conic of the plane it
        // spans with l.
        let budget = Budget::default();
        let f = gf2();
        let x = CubicThreefold::parse(PAPER_CUBIC, &f).unwrap();
        let l = span_line(f, 3, 4);
        let frame = good_line_frame(&x, &l).unwrap();
        let table = count_curve_and_cover(&frame, 1, &budget).unwrap();

        let lines = crate::cubic::enumerate_lines(&x, &f, &budget).unwrap();
        let meets_l = |m: &LineInP4| -> bool {
            let rows: Vec<Vec<FieldElement>> =
                [l.matrix().row(0), l.matrix().row(1), m.matrix().row(0), m.matrix().row(1)]
                    .iter()
                    .map(|r| r.to_vec())
                    .collect();
            crate::linalg::Matrix::from_rows(f, &rows).rank() < 4
        };
        let incident = lines.iter().filter(|m| **m != l && meets_l(m)).count() as u64;
        assert_eq!(table.counts[0].n_tilde, incident);
    }

    #[test]
    fn double_line_fiber_detected_and_counts_refused() {
        let budget = Budget::default();
        let f = gf2();
        let x = CubicThreefold::parse(crate::cubic::tests::DOUBLE_LINE_WITNESS, &f).unwrap();
        let l = span_line(f, 3, 4);
        let frame = good_line_frame(&x, &l).unwrap();
        assert!(!frame.is_etale(&budget).unwrap());
        let y = [f.one(), f.zero(), f.zero()];
        assert_eq!(fiber_splitting(&frame, &f, &y).unwrap(), SplitType::DoubleLine);
        // the oracle sees exactly q+1 points on a double line
        let ctx = FiberContext::new(&frame, &f).unwrap();
        let coeffs = ctx.conic_coefficients(&y);
        assert_eq!(conic_point_count(&f, &coeffs), 3);
        assert!(matches!(count_curve_and_cover(&frame, 1, &budget), Err(Error::NotEtale)));
    }

    #[test]
    fn budget_limits_extension_size() {
        let budget = Budget { max_curve_field: 4, ..Budget::default() };
        let frame = paper_frame();
        assert!(matches!(count_curve_and_cover(&frame, 3, &budget), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn odd_characteristic_is_rejected() {
        let f3 = Field::new(3, 1, None).unwrap();
        let x = CubicThreefold::parse(
            "x3^2*x0 + x3*x4*x1 + x4^2*x2 + x3*x0^2 + x4*x2^2 + x0^3 + x1^3 + x2^3",
            &f3,
        )
        .unwrap();
        let l = span_line(f3, 3, 4);
        let frame = good_line_frame(&x, &l).unwrap();
        assert!(matches!(FiberContext::new(&frame, &f3), Err(Error::WrongCharacteristic { .. })));
    }
}
