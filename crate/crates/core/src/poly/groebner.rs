//! Buchberger's algorithm with the coprimality and chain criteria, reduced
//! bases, and the per-chart unit-ideal test for projective emptiness.
//!
//! No modular or probabilistic shortcuts: all in-scope ideals are tiny and
//! exactness over small fields is cheap. Hard degree and pair-queue caps
//! turn runaway computations into explicit resource errors.

use super::{Form, Ideal, Monomial, MonomialOrder};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use rayon::prelude::*;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

/// Leading term of a nonzero form under `order`.
fn leading_term(f: &Form, order: MonomialOrder) -> (Monomial, FieldElement) {
    f.terms()
        .iter()
        .max_by(|(a, _), (b, _)| order.cmp(a, b))
        .map(|(m, c)| (m.clone(), *c))
        .expect("leading term of zero polynomial")
}

/// Full normal form of `f` against `basis` (top and tail reduction).
pub(crate) fn normal_form(f: &Form, basis: &[Form], order: MonomialOrder) -> Form {
    let field = f.field();
    let nvars = f.nvars();
    let leads: Vec<(Monomial, FieldElement)> = basis.iter().map(|g| leading_term(g, order)).collect();

    let mut work: Vec<(Monomial, FieldElement)> = f.terms().to_vec();
    work.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut out: Vec<(Monomial, FieldElement)> = Vec::new();

    while let Some((m, c)) = work.first().cloned() {
        let reducer = leads.iter().position(|(lm, _)| lm.divides(&m));
        match reducer {
            None => {
                out.push((m, c));
                work.remove(0);
            }
            Some(gi) => {
                let (lm, lc) = &leads[gi];
                let quot = m.div(lm);
                let factor = field.mul(c, field.inv(*lc));
                // work -= factor * quot * basis[gi], keeping descending order
                let sub = basis[gi].mul_term(&quot, factor);
                let mut sub_terms: Vec<(Monomial, FieldElement)> = sub.terms().to_vec();
                sub_terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
                work = merge_sub(&work, &sub_terms, order);
            }
        }
    }
    Form::from_terms(field, nvars, out)
}

/// a - b for term lists sorted descending under `order`.
fn merge_sub(
    a: &[(Monomial, FieldElement)],
    b: &[(Monomial, FieldElement)],
    order: MonomialOrder,
) -> Vec<(Monomial, FieldElement)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].0, &b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let f = b[j].1.field();
                out.push((b[j].0.clone(), f.neg(b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let f = a[i].1.field();
                let c = f.sub(a[i].1, b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (m, c) in &b[j..] {
        let f = c.field();
        out.push((m.clone(), f.neg(*c)));
    }
    out
}

#[derive(PartialEq, Eq)]
struct PairKey {
    lcm_degree: u32,
    lcm_exps: Vec<u16>,
    i: usize,
    j: usize,
}

impl Ord for PairKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.lcm_degree, &self.lcm_exps, self.i, self.j).cmp(&(
            other.lcm_degree,
            &other.lcm_exps,
            other.i,
            other.j,
        ))
    }
}

impl PartialOrd for PairKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn monic(f: &Form, order: MonomialOrder) -> Form {
    let (_, lc) = leading_term(f, order);
    f.mul_scalar(f.field().inv(lc))
}

/// A reduced Groebner basis of `ideal` under its stored order, with
/// deterministic generator ordering (descending leading monomials).
pub fn groebner_basis(ideal: &Ideal, budget: &Budget) -> Result<Ideal> {
    let order = ideal.order();
    let field = ideal.field();
    let nvars = ideal.nvars();

    let mut start: Vec<Form> = ideal.generators().to_vec();
    start.sort_by(|a, b| order.cmp(&leading_term(b, order).0, &leading_term(a, order).0));

    let mut basis: Vec<Form> = Vec::new();
    for g in start {
        if degree_of(&g) > budget.groebner_degree_cap {
            return Err(Error::DegreeCapExceeded { got: degree_of(&g), cap: budget.groebner_degree_cap });
        }
        basis.push(monic(&g, order));
    }

    let mut queue: BinaryHeap<Reverse<PairKey>> = BinaryHeap::new();
    let mut enqueued: usize = 0;
    let push_pairs = |queue: &mut BinaryHeap<Reverse<PairKey>>,
                          basis: &[Form],
                          new_idx: usize,
                          enqueued: &mut usize|
     -> Result<()> {
        for i in 0..new_idx {
            let li = leading_term(&basis[i], order).0;
            let lj = leading_term(&basis[new_idx], order).0;
            let lcm = li.lcm(&lj);
            queue.push(Reverse(PairKey {
                lcm_degree: lcm.degree(),
                lcm_exps: lcm.0.to_vec(),
                i,
                j: new_idx,
            }));
            *enqueued += 1;
            if *enqueued > budget.groebner_pair_cap {
                return Err(Error::PairCapExceeded { cap: budget.groebner_pair_cap });
            }
        }
        Ok(())
    };

    for idx in 1..basis.len() {
        push_pairs(&mut queue, &basis, idx, &mut enqueued)?;
    }

    let mut done: HashSet<(usize, usize)> = HashSet::new();
    // early unit exit: a constant in the basis settles everything below
    let has_unit = |basis: &[Form]| basis.iter().any(|g| g.degree() == Some(0));

    if !has_unit(&basis) {
        while let Some(Reverse(pair)) = queue.pop() {
            let (i, j) = (pair.i, pair.j);
            done.insert((i, j));
            let li = leading_term(&basis[i], order).0;
            let lj = leading_term(&basis[j], order).0;
            if li.coprime(&lj) {
                continue;
            }
            let lcm = li.lcm(&lj);
            // chain criterion
            let chained = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && leading_term(&basis[k], order).0.divides(&lcm)
                    && done.contains(&(k.min(i), k.max(i)))
                    && done.contains(&(k.min(j), k.max(j)))
            });
            if chained {
                continue;
            }
            if lcm.degree() > budget.groebner_degree_cap {
                return Err(Error::DegreeCapExceeded { got: lcm.degree(), cap: budget.groebner_degree_cap });
            }
            let s = spoly(&basis[i], &basis[j], order);
            let nf = normal_form(&s, &basis, order);
            if nf.is_zero() {
                continue;
            }
            if degree_of(&nf) > budget.groebner_degree_cap {
                return Err(Error::DegreeCapExceeded { got: degree_of(&nf), cap: budget.groebner_degree_cap });
            }
            basis.push(monic(&nf, order));
            if has_unit(&basis) {
                break;
            }
            push_pairs(&mut queue, &basis, basis.len() - 1, &mut enqueued)?;
        }
    }

    if has_unit(&basis) {
        let one = Form::constant(field, nvars, field.one());
        return Ok(Ideal::with_order(field, nvars, vec![one], order));
    }

    // minimalize: drop generators whose lead is divisible by another's
    let leads: Vec<Monomial> = basis.iter().map(|g| leading_term(g, order).0).collect();
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len())
            .any(|j| j != i && leads[j].divides(&leads[i]) && (leads[j] != leads[i] || j < i));
        if !redundant {
            keep.push(i);
        }
    }
    let minimal: Vec<Form> = keep.iter().map(|&i| basis[i].clone()).collect();

    // tail-reduce each against the others
    let mut reduced: Vec<Form> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Form> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let nf = normal_form(&minimal[i], &others, order);
        debug_assert!(!nf.is_zero(), "minimal generator reduced to zero");
        reduced.push(monic(&nf, order));
    }
    reduced.sort_by(|a, b| order.cmp(&leading_term(b, order).0, &leading_term(a, order).0));
    Ok(Ideal::with_order(field, nvars, reduced, order))
}

fn degree_of(f: &Form) -> u32 {
    f.degree().unwrap_or(0)
}

fn spoly(f: &Form, g: &Form, order: MonomialOrder) -> Form {
    let (lf, cf) = leading_term(f, order);
    let (lg, cg) = leading_term(g, order);
    let lcm = lf.lcm(&lg);
    let field = f.field();
    let a = f.mul_term(&lcm.div(&lf), field.inv(cf));
    let b = g.mul_term(&lcm.div(&lg), field.inv(cg));
    a.sub(&b)
}

/// Does the reduced basis contain a nonzero constant (i.e. is the ideal the
/// unit ideal)?
fn contains_one(gb: &Ideal) -> bool {
    gb.generators().iter().any(|g| g.degree() == Some(0))
}

/// Decide whether V+(I) is empty over the algebraic closure, for an ideal of
/// homogeneous forms. Works chart by chart: the vanishing locus is empty iff
/// on every chart x_i = 1 the dehomogenized ideal contains 1 (membership of
/// 1 is independent of field extension, so the verdict holds over the
/// closure). The chart checks run in parallel; the combined verdict does not
/// depend on scheduling.
pub fn projective_is_empty(ideal: &Ideal, budget: &Budget) -> Result<bool> {
    for g in ideal.generators() {
        if !g.is_homogeneous() {
            let d = g.degree().unwrap_or(0);
            return Err(Error::NotHomogeneous { a: d, b: 0 });
        }
    }
    if ideal.generators().is_empty() {
        // the zero ideal cuts out all of P^n
        return Ok(false);
    }
    let nvars = ideal.nvars();
    let verdicts: Vec<Result<bool>> = (0..nvars)
        .into_par_iter()
        .map(|chart| {
            let gens: Vec<Form> = ideal.generators().iter().map(|g| g.dehomogenize(chart)).collect();
            let chart_ideal = Ideal::with_order(ideal.field(), nvars - 1, gens, ideal.order());
            if chart_ideal.generators().is_empty() {
                return Ok(false);
            }
            let gb = groebner_basis(&chart_ideal, budget)?;
            Ok(contains_one(&gb))
        })
        .collect();
    let mut all_empty = true;
    for v in verdicts {
        all_empty &= v?;
    }
    Ok(all_empty)
}
