//! Sparse homogeneous multivariate polynomials over a [`Field`], plus the
//! Buchberger machinery used for projective emptiness decisions.

mod groebner;
mod parse;

pub use groebner::{groebner_basis, projective_is_empty};

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};
use crate::linalg::Matrix;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

pub type Exponents = SmallVec<[u16; 8]>;

/// A monomial: an exponent vector of fixed length (the variable count).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Exponents);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = SmallVec::from_elem(0, nvars);
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Term orders. Grevlex is the default everywhere; the tag is stored on the
/// ideal so results are reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => {
                let (da, db) = (a.degree(), b.degree());
                if da != db {
                    return da.cmp(&db);
                }
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        // larger = the one with the smaller trailing exponent
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => {
                for (x, y) in a.0.iter().zip(&b.0) {
                    if x != y {
                        return x.cmp(y);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A sparse polynomial over a field. Terms are kept sorted in descending
/// grevlex order with no zero coefficients, so equal polynomials compare
/// equal structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    field: Field,
    nvars: usize,
    terms: Vec<(Monomial, FieldElement)>,
}

impl Form {
    pub fn zero(field: Field, nvars: usize) -> Form {
        Form { field, nvars, terms: Vec::new() }
    }

    pub fn constant(field: Field, nvars: usize, c: FieldElement) -> Form {
        Form::from_terms(field, nvars, vec![(Monomial::one(nvars), c)])
    }

    pub fn variable(field: Field, nvars: usize, i: usize) -> Form {
        Form::from_terms(field, nvars, vec![(Monomial::var(nvars, i), field.one())])
    }

    pub fn monomial(field: Field, nvars: usize, exps: &[u16], c: FieldElement) -> Form {
        assert_eq!(exps.len(), nvars);
        Form::from_terms(field, nvars, vec![(Monomial(SmallVec::from_slice(exps)), c)])
    }

    /// Build from an arbitrary term list: merges duplicates, drops zeros,
    /// sorts canonically.
    pub fn from_terms(field: Field, nvars: usize, terms: Vec<(Monomial, FieldElement)>) -> Form {
        let mut map: HashMap<Monomial, FieldElement> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), nvars);
            match map.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let sum = field.add(*e.get(), c);
                    *e.get_mut() = sum;
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        let mut terms: Vec<(Monomial, FieldElement)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let ord = MonomialOrder::Grevlex;
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Form { field, nvars, terms }
    }

    /// Parse a form from text; see the grammar in [`parse`].
    pub fn parse(text: &str, field: &Field, vars: &[&str]) -> Result<Form> {
        parse::parse_form(text, field, vars)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Error unless the form is homogeneous of exactly `degree`.
    pub fn expect_homogeneous_of_degree(&self, degree: u32) -> Result<()> {
        if let Some((m0, _)) = self.terms.first() {
            let d0 = m0.degree();
            for (m, _) in &self.terms {
                if m.degree() != d0 {
                    return Err(Error::NotHomogeneous { a: d0, b: m.degree() });
                }
            }
            if d0 != degree {
                return Err(Error::WrongDegree { expected: degree, got: d0 });
            }
            Ok(())
        } else {
            Err(Error::WrongDegree { expected: degree, got: 0 })
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms
            .iter()
            .find(|(tm, _)| tm == m)
            .map(|(_, c)| *c)
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &Form) -> Form {
        self.check_compat(other);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Form::from_terms(self.field, self.nvars, terms)
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.check_compat(other);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(*c))));
        Form::from_terms(self.field, self.nvars, terms)
    }

    pub fn neg(&self) -> Form {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(*c))).collect();
        Form { field: self.field, nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &Form) -> Form {
        self.check_compat(other);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), self.field.mul(*ca, *cb)));
            }
        }
        Form::from_terms(self.field, self.nvars, terms)
    }

    pub fn mul_scalar(&self, c: FieldElement) -> Form {
        if c.is_zero() {
            return Form::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(*a, c))).collect();
        Form { field: self.field, nvars: self.nvars, terms }
    }

    /// Multiply by the single term c * m.
    pub fn mul_term(&self, m: &Monomial, c: FieldElement) -> Form {
        if c.is_zero() {
            return Form::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(tm, a)| (tm.mul(m), self.field.mul(*a, c))).collect();
        Form { field: self.field, nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> Form {
        let mut acc = Form::constant(self.field, self.nvars, self.field.one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact evaluation at a point with coordinates in the same field.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: point.len() });
        }
        let f = self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = f.mul(t, f.pow(point[i], e as u64));
                }
            }
            acc = f.add(acc, t);
        }
        Ok(acc)
    }

    /// Move the coefficients into an extension field.
    pub fn map_coefficients(&self, emb: &Embedding) -> Form {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), emb.embed(*c))).collect();
        Form { field: *emb.dst(), nvars: self.nvars, terms }
    }

    /// Formal partial derivative; exponent coefficients reduce mod p.
    pub fn partial(&self, var: usize) -> Form {
        assert!(var < self.nvars);
        let f = self.field;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let scaled = f.mul(*c, f.from_int(e as i64));
            if scaled.is_zero() {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            terms.push((Monomial(exps), scaled));
        }
        Form::from_terms(f, self.nvars, terms)
    }

    /// Composition f(Mx) with an invertible square matrix M.
    pub fn substitute_linear(&self, m: &Matrix) -> Result<Form> {
        if m.nrows() != self.nvars || m.ncols() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: m.nrows() });
        }
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(self.substitute_rows(m))
    }

    /// Like [`Form::substitute_linear`] but without the invertibility check;
    /// row i of `m` gives the image of variable i.
    pub fn substitute_rows(&self, m: &Matrix) -> Form {
        let f = self.field;
        let images: Vec<Form> = (0..self.nvars)
            .map(|i| {
                let terms = (0..self.nvars)
                    .filter(|&j| !m[(i, j)].is_zero())
                    .map(|j| (Monomial::var(self.nvars, j), m[(i, j)]))
                    .collect();
                Form::from_terms(f, self.nvars, terms)
            })
            .collect();
        // power tables keep repeated exponents cheap
        let max_e: Vec<u16> = (0..self.nvars)
            .map(|i| self.terms.iter().map(|(mo, _)| mo.0[i]).max().unwrap_or(0))
            .collect();
        let mut pow_tables: Vec<Vec<Form>> = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            let mut tbl = vec![Form::constant(f, self.nvars, f.one())];
            for e in 1..=max_e[i] {
                let next = tbl[(e - 1) as usize].mul(&images[i]);
                tbl.push(next);
            }
            pow_tables.push(tbl);
        }
        let mut acc = Form::zero(f, self.nvars);
        for (mo, c) in &self.terms {
            let mut t = Form::constant(f, self.nvars, *c);
            for (i, &e) in mo.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&pow_tables[i][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Set variable `var` to 1, producing a polynomial in nvars-1 variables.
    /// Distinct monomials may merge.
    pub fn dehomogenize(&self, var: usize) -> Form {
        assert!(var < self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps: Exponents = m.0.clone();
                exps.remove(var);
                (Monomial(exps), *c)
            })
            .collect();
        Form::from_terms(self.field, self.nvars - 1, terms)
    }

    /// Re-embed into a larger variable set; `var_map[i]` is the new index of
    /// old variable i.
    pub fn inject(&self, new_nvars: usize, var_map: &[usize]) -> Form {
        assert_eq!(var_map.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps: Exponents = SmallVec::from_elem(0, new_nvars);
                for (i, &e) in m.0.iter().enumerate() {
                    exps[var_map[i]] = e;
                }
                (Monomial(exps), *c)
            })
            .collect();
        Form::from_terms(self.field, new_nvars, terms)
    }

    pub fn format_with(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut factors: Vec<String> = Vec::new();
            let coeff = self.field.format_element(*c);
            let is_const_mono = m.degree() == 0;
            if !c.is_one() || is_const_mono {
                if coeff.contains('+') || coeff.contains('-') {
                    factors.push(format!("({coeff})"));
                } else {
                    factors.push(coeff);
                }
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    e => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }

    fn check_compat(&self, other: &Form) {
        assert_eq!(self.field, other.field, "forms over different fields");
        assert_eq!(self.nvars, other.nvars, "forms with different variable counts");
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.format_with(&refs))
    }
}

/// A finitely generated ideal with a fixed monomial order.
#[derive(Debug, Clone)]
pub struct Ideal {
    field: Field,
    nvars: usize,
    gens: Vec<Form>,
    order: MonomialOrder,
}

impl Ideal {
    /// Zero generators are dropped; remaining generators must share field
    /// and variable count.
    pub fn new(field: Field, nvars: usize, gens: Vec<Form>) -> Ideal {
        Ideal::with_order(field, nvars, gens, MonomialOrder::Grevlex)
    }

    pub fn with_order(field: Field, nvars: usize, gens: Vec<Form>, order: MonomialOrder) -> Ideal {
        let gens: Vec<Form> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert_eq!(g.field(), field, "generator over a different field");
            assert_eq!(g.nvars(), nvars, "generator with a different variable count");
        }
        Ideal { field, nvars, gens, order }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Form] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// The ideal generated by f and all first partials of f.
    pub fn jacobian(f: &Form) -> Ideal {
        let mut gens = vec![f.clone()];
        for i in 0..f.nvars() {
            gens.push(f.partial(i));
        }
        Ideal::new(f.field(), f.nvars(), gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;

    fn gf2() -> Field {
        Field::new(2, 1, None).unwrap()
    }

    pub(crate) const PAPER_CUBIC: &str =
        "x3^2*x0 + x3*x4*x1 + x4^2*x2 + x3*(x0^2+x1^2) + x4*(x1^2+x2^2) + x0*x2^2 + x2*x0^2";
    pub(crate) const VARS5: [&str; 5] = ["x0", "x1", "x2", "x3", "x4"];

    #[test]
    fn grevlex_order_on_quadrics() {
        // in 3 vars: x^2 > xy > y^2 > xz > yz > z^2
        let ord = MonomialOrder::Grevlex;
        let mk = |e: [u16; 3]| Monomial(SmallVec::from_slice(&e));
        let seq = [mk([2, 0, 0]), mk([1, 1, 0]), mk([0, 2, 0]), mk([1, 0, 1]), mk([0, 1, 1]), mk([0, 0, 2])];
        for w in seq.windows(2) {
            assert_eq!(ord.cmp(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn parse_paper_cubic() {
        let f = gf2();
        let c = Form::parse(PAPER_CUBIC, &f, &VARS5).unwrap();
        assert!(c.is_homogeneous());
        assert_eq!(c.degree(), Some(3));
        assert_eq!(c.num_terms(), 9);
    }

    #[test]
    fn parse_fermat() {
        let f = gf2();
        let c = Form::parse("x0^3+x1^3+x2^3+x3^3+x4^3", &f, &VARS5).unwrap();
        assert!(c.is_homogeneous());
        assert_eq!(c.degree(), Some(3));
        assert_eq!(c.num_terms(), 5);
    }

    #[test]
    fn homogeneity_error() {
        let f = gf2();
        let c = Form::parse("x0^3 + x1", &f, &VARS5).unwrap();
        assert!(!c.is_homogeneous());
        assert!(matches!(c.expect_homogeneous_of_degree(3), Err(Error::NotHomogeneous { .. })));
    }

    #[test]
    fn evaluate_fermat_and_paper_cubic() {
        let f = gf2();
        let fermat = Form::parse("x0^3+x1^3+x2^3+x3^3+x4^3", &f, &VARS5).unwrap();
        let e = |bits: [i64; 5]| -> Vec<FieldElement> { bits.iter().map(|&b| f.from_int(b)).collect() };
        assert!(fermat.evaluate(&e([1, 1, 0, 0, 0])).unwrap().is_zero());
        assert!(fermat.evaluate(&e([1, 0, 0, 0, 0])).unwrap().is_one());
        let cubic = Form::parse(PAPER_CUBIC, &f, &VARS5).unwrap();
        assert!(cubic.evaluate(&e([0, 0, 0, 1, 0])).unwrap().is_zero());
        assert!(matches!(cubic.evaluate(&[f.one()]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn jacobian_in_char_2_and_3() {
        let f = gf2();
        let fermat = Form::parse("x0^3+x1^3+x2^3+x3^3+x4^3", &f, &VARS5).unwrap();
        let jac = Ideal::jacobian(&fermat);
        // f itself plus the five partials x_i^2
        assert_eq!(jac.generators().len(), 6);
        let sq0 = Form::parse("x0^2", &f, &VARS5).unwrap();
        assert_eq!(jac.generators()[1], sq0);

        let f3 = Field::new(3, 1, None).unwrap();
        let cube = Form::parse("x0^3", &f3, &["x0"]).unwrap();
        assert!(cube.partial(0).is_zero());

        let cubic = Form::parse(PAPER_CUBIC, &f, &VARS5).unwrap();
        let d3 = cubic.partial(3);
        let expected = Form::parse("x4*x1 + x0^2 + x1^2", &f, &VARS5).unwrap();
        assert_eq!(d3, expected);
    }

    #[test]
    fn substitution_identity_and_swap() {
        let f = gf2();
        let fermat = Form::parse("x0^3+x1^3+x2^3+x3^3+x4^3", &f, &VARS5).unwrap();
        let id = Matrix::identity(f, 5);
        assert_eq!(fermat.substitute_linear(&id).unwrap(), fermat);
        // swap x0 <-> x2
        let mut swap = Matrix::identity(f, 5);
        swap[(0, 0)] = f.zero();
        swap[(2, 2)] = f.zero();
        swap[(0, 2)] = f.one();
        swap[(2, 0)] = f.one();
        assert_eq!(fermat.substitute_linear(&swap).unwrap(), fermat);
        let singular = Matrix::zero(f, 5, 5);
        assert!(matches!(fermat.substitute_linear(&singular), Err(Error::SingularMatrix)));
    }

    #[test]
    fn dehomogenize_merges_terms() {
        let f = gf2();
        // x0^2*x1 + x0*x1 collapses at x0 = 1 over GF(2)
        let g = Form::parse("x0^2*x1 + x0*x1", &f, &["x0", "x1"]).unwrap();
        let d = g.dehomogenize(0);
        assert!(d.is_zero());
    }

    #[test]
    fn display_round_trip() {
        let f4 = Field::new(2, 2, None).unwrap();
        let vars = ["x0", "x1", "x2"];
        let g = Form::parse("(1+t)*x0^2*x1 + t*x2^3 + x0*x1*x2", &f4, &vars).unwrap();
        let s = g.format_with(&vars);
        let g2 = Form::parse(&s, &f4, &vars).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn groebner_spec_examples() {
        let f = gf2();
        let budget = Budget::default();
        // (x0, x1) is already a GB
        let gens = vec![
            Form::parse("x0", &f, &["x0", "x1"]).unwrap(),
            Form::parse("x1", &f, &["x0", "x1"]).unwrap(),
        ];
        let gb = groebner_basis(&Ideal::new(f, 2, gens), &budget).unwrap();
        assert_eq!(gb.generators().len(), 2);

        // (x^2, x+y): reduced GB contains y^2
        let gens = vec![
            Form::parse("x0^2", &f, &["x0", "x1"]).unwrap(),
            Form::parse("x0+x1", &f, &["x0", "x1"]).unwrap(),
        ];
        let gb = groebner_basis(&Ideal::new(f, 2, gens), &budget).unwrap();
        let ysq = Form::parse("x1^2", &f, &["x0", "x1"]).unwrap();
        assert!(gb.generators().contains(&ysq), "GB = {:?}", gb.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>());

        // dehomogenized Fermat partials at x0=1 contain the unit
        let fermat = Form::parse("x0^2+x1^2+x2^2+x3^2+x4^2", &f, &VARS5) // squares of partials pattern
            .unwrap();
        let dehom: Vec<Form> = (0..5)
            .map(|i| Form::parse(&format!("x{i}^2"), &f, &VARS5).unwrap().dehomogenize(0))
            .collect();
        let _ = fermat;
        let gb = groebner_basis(&Ideal::new(f, 4, dehom), &budget).unwrap();
        assert!(gb.generators().iter().any(|g| g.degree() == Some(0)));
    }

    #[test]
    fn projective_emptiness_examples() {
        let f = gf2();
        let budget = Budget::default();
        let coords: Vec<Form> = (0..5).map(|i| Form::variable(f, 5, i)).collect();
        assert!(projective_is_empty(&Ideal::new(f, 5, coords), &budget).unwrap());
        let prod = Form::parse("x0*x1", &f, &VARS5).unwrap();
        assert!(!projective_is_empty(&Ideal::new(f, 5, vec![prod]), &budget).unwrap());
        // smooth paper cubic: Jacobian ideal is projectively empty
        let cubic = Form::parse(PAPER_CUBIC, &f, &VARS5).unwrap();
        assert!(projective_is_empty(&Ideal::jacobian(&cubic), &budget).unwrap());
        // singular fixture with a known rational point
        let sing = Form::parse("x0^3", &f, &VARS5).unwrap();
        assert!(!projective_is_empty(&Ideal::jacobian(&sing), &budget).unwrap());
    }

    #[test]
    fn every_generator_reduces_to_zero_against_gb() {
        let f = Field::new(3, 1, None).unwrap();
        let vars = ["x0", "x1", "x2"];
        let budget = Budget::default();
        let gens = vec![
            Form::parse("x0^2*x1 + 2*x2^3", &f, &vars).unwrap(),
            Form::parse("x0*x2 + x1^2", &f, &vars).unwrap(),
            Form::parse("x1*x2^2 + x0^2*x2", &f, &vars).unwrap(),
        ];
        let ideal = Ideal::new(f, 3, gens.clone());
        let gb = groebner_basis(&ideal, &budget).unwrap();
        for g in &gens {
            let nf = groebner::normal_form(g, gb.generators(), MonomialOrder::Grevlex);
            assert!(nf.is_zero(), "generator {g} has nonzero normal form {nf}");
        }
    }
}
