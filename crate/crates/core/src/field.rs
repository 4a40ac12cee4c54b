//! Exact arithmetic in GF(p^k), specialized for characteristic 2.
//!
//! Elements are stored in polynomial basis, packed into a single `u64`
//! encoding `sum c_i * p^i`; for p = 2 this is a plain bit vector, so
//! addition is XOR and multiplication is a carry-less product followed by
//! modular reduction. Fields and elements are immutable values, safe to
//! share across threads.

use crate::error::{Error, Result};
use std::fmt;

/// Hard word-budget cap: q = p^k must stay below 2^62 so every product and
/// modulus pattern fits machine words.
pub const MAX_FIELD_BITS: u32 = 62;

/// A finite field GF(p^k) with a fixed monic irreducible modulus.
///
/// `Field` is a small Copy value; every [`FieldElement`] embeds a copy of its
/// field, so elements are self-describing and mixed-field operations are
/// detected at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u64,
    k: u32,
    q: u64,
    /// Encoding of the low k modulus coefficients c_0..c_{k-1}; the monic
    /// leading coefficient is implicit.
    mod_low: u64,
    /// char 2 only: bit i set iff Tr(t^i) = 1, so traces are one popcount.
    trace_mask: u64,
}

/// An element of a [`Field`], in polynomial basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    repr: u64,
}

impl Field {
    /// Construct GF(p^k). If `modulus` is given it must list all k+1
    /// coefficients low-to-high with leading coefficient 1; otherwise the
    /// lexicographically smallest monic irreducible is selected, which makes
    /// construction deterministic across runs and machines.
    pub fn new(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::BadModulus { expected: 1, got: 0 });
        }
        let bits = (k as f64) * (p as f64).log2();
        if p > (1 << 31) || bits > MAX_FIELD_BITS as f64 {
            return Err(Error::FieldTooLarge { p, k });
        }
        let q = p.checked_pow(k).ok_or(Error::FieldTooLarge { p, k })?;

        let mod_coeffs: Vec<u64> = match modulus {
            Some(m) => {
                let m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                let deg = m.iter().rposition(|&c| c != 0).unwrap_or(0);
                if deg != k as usize || m[deg] != 1 {
                    return Err(Error::BadModulus { expected: k, got: deg as u32 });
                }
                if !poly_is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                m
            }
            None => smallest_irreducible(p, k),
        };

        let mod_low = encode_digits(&mod_coeffs[..k as usize], p);
        let mut field = Field { p, k, q, mod_low, trace_mask: 0 };
        if p == 2 {
            let mut mask = 0u64;
            for i in 0..k {
                let ti = field.from_encoding(1u64 << i);
                if field.trace_slow(ti) == 1 {
                    mask |= 1 << i;
                }
            }
            field.trace_mask = mask;
        }
        Ok(field)
    }

    /// Parse a field literal: `GF(p^k)`, `GF(q)` with q a prime power, or
    /// `GF(p^k; mod=c0,c1,...,ck)` with coefficients low-to-high.
    pub fn parse(text: &str) -> Result<Field> {
        let s = text.trim();
        let inner = s
            .strip_prefix("GF(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("expected GF(...), got `{s}`") })?;
        let (size_part, mod_part) = match inner.split_once(';') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (inner.trim(), None),
        };
        let (p, k) = match size_part.split_once('^') {
            Some((ps, ks)) => {
                let p: u64 = ps.trim().parse().map_err(|_| Error::Parse { pos: 3, msg: format!("bad prime `{ps}`") })?;
                let k: u32 = ks.trim().parse().map_err(|_| Error::Parse { pos: 3, msg: format!("bad exponent `{ks}`") })?;
                (p, k)
            }
            None => {
                let q: u64 = size_part.parse().map_err(|_| Error::Parse { pos: 3, msg: format!("bad cardinality `{size_part}`") })?;
                factor_prime_power(q).ok_or(Error::Parse { pos: 3, msg: format!("{q} is not a prime power") })?
            }
        };
        let modulus: Option<Vec<u64>> = match mod_part {
            None => None,
            Some(m) => {
                let m = m
                    .strip_prefix("mod=")
                    .ok_or_else(|| Error::Parse { pos: 0, msg: "expected `mod=` after `;`".into() })?;
                let coeffs: std::result::Result<Vec<u64>, _> = m.split(',').map(|c| c.trim().parse::<u64>()).collect();
                Some(coeffs.map_err(|_| Error::Parse { pos: 0, msg: "bad modulus coefficient".into() })?)
            }
        };
        Field::new(p, k, modulus.as_deref())
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn cardinality(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients low-to-high, length k+1, leading 1.
    pub fn modulus(&self) -> Vec<u64> {
        let mut m = decode_digits(self.mod_low, self.p, self.k as usize);
        m.push(1);
        m
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: *self, repr: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: *self, repr: 1 }
    }

    /// The residue class of t, i.e. the canonical generator of the
    /// polynomial basis. For k = 1 this is 0 (t reduces mod t).
    pub fn gen_t(&self) -> FieldElement {
        if self.k == 1 {
            self.zero()
        } else {
            FieldElement { field: *self, repr: self.p }
        }
    }

    /// Element from an integer, reduced into the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let m = n.rem_euclid(self.p as i64) as u64;
        FieldElement { field: *self, repr: m }
    }

    /// Element from its packed encoding `sum c_i p^i`; must be < q.
    pub fn from_encoding(&self, v: u64) -> FieldElement {
        assert!(v < self.q, "encoding {v} out of range for field of size {}", self.q);
        FieldElement { field: *self, repr: v }
    }

    /// Element from a coefficient vector (low-to-high, length <= k).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        assert!(coeffs.len() <= self.k as usize, "coefficient vector longer than field degree");
        let reduced: Vec<u64> = coeffs.iter().map(|&c| c % self.p).collect();
        FieldElement { field: *self, repr: encode_digits(&reduced, self.p) }
    }

    /// All q elements, in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |v| FieldElement { field: *self, repr: v })
    }

    fn check(&self, a: FieldElement) {
        assert!(
            self.p == a.field.p && self.k == a.field.k && self.mod_low == a.field.mod_low,
            "mixed-field operands: GF({}^{}) vs GF({}^{})",
            self.p, self.k, a.field.p, a.field.k
        );
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if self.p == 2 {
            return FieldElement { field: *self, repr: a.repr ^ b.repr };
        }
        let mut da = decode_digits(a.repr, self.p, self.k as usize);
        let db = decode_digits(b.repr, self.p, self.k as usize);
        for i in 0..da.len() {
            da[i] = (da[i] + db[i]) % self.p;
        }
        FieldElement { field: *self, repr: encode_digits(&da, self.p) }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        if self.p == 2 {
            return a;
        }
        let da: Vec<u64> = decode_digits(a.repr, self.p, self.k as usize)
            .iter()
            .map(|&c| (self.p - c) % self.p)
            .collect();
        FieldElement { field: *self, repr: encode_digits(&da, self.p) }
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if self.p == 2 {
            return FieldElement { field: *self, repr: self.mul2(a.repr, b.repr) };
        }
        let da = decode_digits(a.repr, self.p, self.k as usize);
        let db = decode_digits(b.repr, self.p, self.k as usize);
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &ca) in da.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ca * cb) % self.p;
            }
        }
        let modulus = self.modulus();
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mj) in modulus.iter().enumerate().take(k) {
                let sub = (c * mj) % self.p;
                prod[i - k + j] = (prod[i - k + j] + self.p - sub) % self.p;
            }
        }
        FieldElement { field: *self, repr: encode_digits(&prod[..k], self.p) }
    }

    #[inline]
    fn mul2(&self, a: u64, b: u64) -> u64 {
        let mut acc: u128 = 0;
        let b128 = b as u128;
        let mut a = a;
        let mut i = 0u32;
        while a != 0 {
            if a & 1 == 1 {
                acc ^= b128 << i;
            }
            a >>= 1;
            i += 1;
        }
        self.reduce2(acc)
    }

    #[inline]
    fn reduce2(&self, mut acc: u128) -> u64 {
        let k = self.k;
        let modbits = (self.mod_low | (1u64 << k)) as u128;
        while acc >> k != 0 {
            let d = 127 - acc.leading_zeros();
            acc ^= modbits << (d - k);
        }
        acc as u64
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// a^e by square-and-multiply; 0^0 = 1.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        self.check(a);
        let mut base = a;
        let mut e = e;
        let mut acc = self.one();
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn try_inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a);
        if a.repr == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn inv(&self, a: FieldElement) -> FieldElement {
        self.try_inv(a).expect("inversion of zero")
    }

    /// The p-power Frobenius a -> a^p.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p)
    }

    /// Trace to the prime field: a + a^p + ... + a^{p^{k-1}}; the result is
    /// returned as an element of the prime subfield.
    pub fn trace(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        if self.p == 2 {
            let bit = ((a.repr & self.trace_mask).count_ones() & 1) as u64;
            return FieldElement { field: *self, repr: bit };
        }
        self.from_int(self.trace_slow(a) as i64)
    }

    fn trace_slow(&self, a: FieldElement) -> u64 {
        let mut acc = a;
        let mut x = a;
        for _ in 1..self.k {
            x = self.frobenius(x);
            acc = self.add(acc, x);
        }
        debug_assert!(acc.repr < self.p, "trace must land in the prime field");
        acc.repr
    }

    #[inline]
    pub fn trace_is_zero(&self, a: FieldElement) -> bool {
        self.trace(a).repr == 0
    }

    /// The unique square root in characteristic 2: a^{2^{k-1}}.
    pub fn sqrt_char2(&self, a: FieldElement) -> Result<FieldElement> {
        if self.p != 2 {
            return Err(Error::WrongCharacteristic { expected: 2, got: self.p });
        }
        self.check(a);
        let mut x = a;
        for _ in 1..self.k {
            x = self.mul(x, x);
        }
        Ok(x)
    }

    /// Solve z^2 + z = a in characteristic 2. Returns the solution of
    /// smaller encoding when Tr(a) = 0 (the other is z + 1), `None` when
    /// Tr(a) = 1; unsolvable is a normal outcome, not an error.
    pub fn artin_schreier_solve(&self, a: FieldElement) -> Result<Option<FieldElement>> {
        if self.p != 2 {
            return Err(Error::WrongCharacteristic { expected: 2, got: self.p });
        }
        self.check(a);
        if !self.trace_is_zero(a) {
            return Ok(None);
        }
        let z = if self.k % 2 == 1 {
            // half-trace
            let mut acc = a;
            let mut x = a;
            for _ in 0..(self.k - 1) / 2 {
                x = self.mul(x, x);
                x = self.mul(x, x);
                acc = self.add(acc, x);
            }
            acc
        } else {
            // pick a basis monomial delta with Tr(delta) = 1, then
            // z = sum_{i<k-1} (sum_{j>i} delta^{2^j}) a^{2^i}
            let bit = self.trace_mask.trailing_zeros();
            let delta = self.from_encoding(1u64 << bit);
            let mut delta_pows = Vec::with_capacity(self.k as usize);
            let mut d = delta;
            for _ in 0..self.k {
                delta_pows.push(d);
                d = self.mul(d, d);
            }
            let mut suffix = self.zero();
            let mut suffixes = vec![self.zero(); self.k as usize];
            for i in (0..self.k as usize).rev() {
                suffixes[i] = suffix;
                suffix = self.add(suffix, delta_pows[i]);
            }
            let mut acc = self.zero();
            let mut apow = a;
            for s in suffixes.iter().take(self.k as usize - 1) {
                acc = self.add(acc, self.mul(*s, apow));
                apow = self.mul(apow, apow);
            }
            acc
        };
        debug_assert_eq!(self.add(self.mul(z, z), z), a);
        let z1 = self.add(z, self.one());
        Ok(Some(if z.repr <= z1.repr { z } else { z1 }))
    }

    /// Render an element in polynomial basis, e.g. `1+t+t^3`.
    pub fn format_element(&self, a: FieldElement) -> String {
        self.check(a);
        if a.repr == 0 {
            return "0".to_string();
        }
        let digits = decode_digits(a.repr, self.p, self.k as usize);
        let mut parts = Vec::new();
        for (i, &c) in digits.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}*t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}*t^{i}"),
            };
            parts.push(part);
        }
        parts.join("+")
    }

    /// Parse an element literal: a sum of terms `c`, `c*t^i`, `t^i`, `t`.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty element literal".into() });
        }
        let mut acc = self.zero();
        // split on +/- while keeping the sign
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (idx, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && idx != 0 {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if ch == '-' && idx == 0 {
                neg = true;
            } else {
                cur.push(ch);
            }
        }
        terms.push((neg, cur));
        for (neg, term) in terms {
            if term.is_empty() {
                return Err(Error::Parse { pos: 0, msg: "empty term in element literal".into() });
            }
            let (coeff_str, tpow) = match term.find('t') {
                None => (term.as_str(), None),
                Some(tpos) => {
                    let coeff = term[..tpos].trim_end_matches('*');
                    let rest = &term[tpos + 1..];
                    let e: u32 = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|r| r.parse().ok())
                            .ok_or_else(|| Error::Parse { pos: tpos, msg: format!("bad power in `{term}`") })?
                    };
                    (coeff, Some(e))
                }
            };
            let c: u64 = if coeff_str.is_empty() {
                1
            } else {
                coeff_str
                    .parse()
                    .map_err(|_| Error::Parse { pos: 0, msg: format!("bad coefficient `{coeff_str}`") })?
            };
            let mut v = self.from_int(c as i64);
            if let Some(e) = tpow {
                v = self.mul(v, self.pow(self.gen_t(), e as u64));
            }
            if neg {
                v = self.neg(v);
            }
            acc = self.add(acc, v);
        }
        Ok(acc)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.k)
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> Field {
        self.field
    }

    /// Packed encoding `sum c_i p^i`; stable, used for canonical orderings.
    pub fn encoding(&self) -> u64 {
        self.repr
    }

    pub fn is_zero(&self) -> bool {
        self.repr == 0
    }

    pub fn is_one(&self) -> bool {
        self.repr == 1
    }

    pub fn inv(&self) -> FieldElement {
        self.field.inv(*self)
    }

    pub fn square(&self) -> FieldElement {
        self.field.mul(*self, *self)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.pow(*self, e)
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.field.add(self, rhs)
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.field.sub(self, rhs)
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.field.mul(self, rhs)
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.neg(self)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.repr.cmp(&other.repr)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_element(*self))
    }
}

/// A subfield embedding GF(p^k) -> GF(p^{km}), realized by sending t to a
/// root of the small field's modulus found by deterministic exhaustive
/// search (fields are small by construction).
#[derive(Debug, Clone)]
pub struct Embedding {
    src: Field,
    dst: Field,
    /// images of t^0 .. t^{k-1}
    basis_images: Vec<FieldElement>,
}

impl Embedding {
    pub fn new(src: &Field, dst: &Field) -> Result<Embedding> {
        if src.p != dst.p || dst.k % src.k != 0 {
            return Err(Error::NoEmbedding { src_k: src.k, dst_k: dst.k });
        }
        if src == dst {
            let basis_images = (0..src.k).map(|i| dst.from_encoding(src.p.pow(i))).collect();
            return Ok(Embedding { src: *src, dst: *dst, basis_images });
        }
        let modulus: Vec<FieldElement> = src.modulus().iter().map(|&c| dst.from_int(c as i64)).collect();
        let root = dst
            .elements()
            .find(|&x| {
                let mut acc = dst.zero();
                for &c in modulus.iter().rev() {
                    acc = dst.add(dst.mul(acc, x), c);
                }
                acc.is_zero()
            })
            .ok_or(Error::NoEmbedding { src_k: src.k, dst_k: dst.k })?;
        let mut basis_images = Vec::with_capacity(src.k as usize);
        let mut pow = dst.one();
        for _ in 0..src.k {
            basis_images.push(pow);
            pow = dst.mul(pow, root);
        }
        Ok(Embedding { src: *src, dst: *dst, basis_images })
    }

    pub fn src(&self) -> &Field {
        &self.src
    }

    pub fn dst(&self) -> &Field {
        &self.dst
    }

    pub fn embed(&self, a: FieldElement) -> FieldElement {
        assert!(a.field == self.src, "element does not belong to the embedding's source field");
        let digits = decode_digits(a.repr, self.src.p, self.src.k as usize);
        let mut acc = self.dst.zero();
        for (i, &c) in digits.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let scaled = self.dst.mul(self.dst.from_int(c as i64), self.basis_images[i]);
            acc = self.dst.add(acc, scaled);
        }
        acc
    }
}

fn encode_digits(digits: &[u64], p: u64) -> u64 {
    let mut acc = 0u64;
    for &d in digits.iter().rev() {
        acc = acc * p + d;
    }
    acc
}

fn decode_digits(mut v: u64, p: u64, k: usize) -> Vec<u64> {
    let mut digits = vec![0u64; k];
    for d in digits.iter_mut() {
        *d = v % p;
        v /= p;
    }
    digits
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = q;
    for d in 2..=((q as f64).sqrt() as u64 + 1) {
        if q % d == 0 {
            p = d;
            break;
        }
    }
    let mut k = 0u32;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest == 1 && is_prime(p) {
        Some((p, k))
    } else {
        None
    }
}

// -- dense univariate arithmetic over GF(p), used only for modulus
//    validation and the default-modulus sieve --

fn poly_trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    while r.len() - 1 >= db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = (r[dr] * lead_inv) % p;
        for i in 0..=db {
            let sub = (c * b[i]) % p;
            r[dr - db + i] = (r[dr - db + i] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ca * cb) % p;
        }
    }
    poly_trim(&mut prod);
    poly_rem(&prod, f, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and small
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// x^(p^e) mod f by repeated squaring of the e-fold Frobenius exponent.
fn poly_x_qpow(e: u32, f: &[u64], p: u64) -> Vec<u64> {
    let x = vec![0, 1];
    let mut acc = poly_rem(&x, f, p);
    // one p-power step: raise to p via square-and-multiply on the exponent
    for _ in 0..e {
        let mut result = vec![1u64];
        let mut base = acc.clone();
        let mut exp = p;
        while exp > 0 {
            if exp & 1 == 1 {
                result = poly_mulmod(&result, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            exp >>= 1;
        }
        acc = result;
    }
    acc
}

/// Rabin irreducibility: f (monic, degree k) is irreducible over GF(p) iff
/// x^{p^k} = x mod f and gcd(x^{p^{k/r}} - x, f) = 1 for every prime r | k.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u32;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let mut rs = Vec::new();
    let mut n = k;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            rs.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        rs.push(n);
    }
    for r in rs {
        let mut h = poly_x_qpow(k / r, f, p);
        // h - x
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        poly_trim(&mut h);
        let g = poly_gcd(f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    let mut h = poly_x_qpow(k, f, p);
    if h.len() < 2 {
        h.resize(2, 0);
    }
    h[1] = (h[1] + p - 1) % p;
    poly_trim(&mut h);
    h.len() == 1 && h[0] == 0
}

/// Monic irreducible of degree k over GF(p) with the smallest coefficient
/// encoding; the scan order makes field construction reproducible.
fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1]; // t
    }
    let q = p.pow(k);
    for low in 0..q {
        let mut coeffs = decode_digits(low, p, k as usize);
        coeffs.push(1);
        if poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible of every degree exists")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: u32) -> Field {
        Field::new(p, k, None).unwrap()
    }

    #[test]
    fn prime_field_elements() {
        let f = gf(2, 1);
        let all: Vec<u64> = f.elements().map(|e| e.encoding()).collect();
        assert_eq!(all, vec![0, 1]);
    }

    #[test]
    fn gf4_modulus_is_unique_quadratic() {
        let f = gf(2, 2);
        assert_eq!(f.modulus(), vec![1, 1, 1]); // t^2 + t + 1
    }

    #[test]
    fn gf2048_modulus_matches_bruteforce_sieve() {
        // independent oracle: naive trial division over all monic divisors
        fn divides(div: &[u64], f: &[u64]) -> bool {
            let r = poly_rem(f, div, 2);
            r.len() == 1 && r[0] == 0
        }
        fn naive_irreducible(f: &[u64]) -> bool {
            let k = f.len() - 1;
            for d in 1..=(k / 2) {
                for low in 0..(1u64 << d) {
                    let mut divp = decode_digits(low, 2, d);
                    divp.push(1);
                    if divides(&divp, f) {
                        return false;
                    }
                }
            }
            true
        }
        let mut expected = None;
        for low in 0..(1u64 << 11) {
            let mut c = decode_digits(low, 2, 11);
            c.push(1);
            if naive_irreducible(&c) {
                expected = Some(c);
                break;
            }
        }
        let f = gf(2, 11);
        assert_eq!(f.cardinality(), 2048);
        assert_eq!(f.modulus(), expected.unwrap());
    }

    #[test]
    fn gf4_arithmetic() {
        let f = gf(2, 2);
        let g = f.gen_t();
        let g1 = f.add(g, f.one());
        assert_eq!(f.mul(g, g), g1); // g^2 = g + 1
        assert_eq!(f.inv(g), g1); // g * (g+1) = 1
        assert_eq!(f.mul(g, g1), f.one());
    }

    #[test]
    fn gf8_lagrange() {
        let f = gf(2, 3);
        for a in f.elements().skip(1) {
            assert_eq!(f.pow(a, 7), f.one());
        }
    }

    #[test]
    fn inversion_of_zero_fails() {
        let f = gf(2, 2);
        assert!(matches!(f.try_inv(f.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    #[should_panic(expected = "mixed-field")]
    fn mixed_field_operands_panic() {
        let f4 = gf(2, 2);
        let f8 = gf(2, 3);
        let _ = f4.add(f4.one(), f8.one());
    }

    #[test]
    fn traces_in_gf4_and_gf8() {
        let f = gf(2, 2);
        let g = f.gen_t();
        assert_eq!(f.trace(g), f.one());
        assert_eq!(f.trace(f.one()), f.zero());
        let f8 = gf(2, 3);
        let zeros = f8.elements().filter(|&a| f8.trace_is_zero(a)).count();
        assert_eq!(zeros, 4);
    }

    #[test]
    fn sqrt_examples() {
        let f = gf(2, 2);
        let g = f.gen_t();
        assert_eq!(f.sqrt_char2(f.one()).unwrap(), f.one());
        assert_eq!(f.sqrt_char2(g).unwrap(), f.add(g, f.one()));
        let f32 = gf(2, 5);
        for a in f32.elements() {
            let s = f32.sqrt_char2(a).unwrap();
            assert_eq!(f32.mul(s, s), a);
        }
    }

    #[test]
    fn sqrt_rejects_odd_characteristic() {
        let f = gf(3, 1);
        assert!(f.sqrt_char2(f.one()).is_err());
    }

    #[test]
    fn artin_schreier_examples() {
        let f2 = gf(2, 1);
        assert_eq!(f2.artin_schreier_solve(f2.one()).unwrap(), None);
        let f4 = gf(2, 2);
        let z = f4.artin_schreier_solve(f4.one()).unwrap().unwrap();
        assert_eq!(f4.add(f4.mul(z, z), z), f4.one());
        let f8 = gf(2, 3);
        for a in f8.elements() {
            match f8.artin_schreier_solve(a).unwrap() {
                Some(z) => {
                    assert!(f8.trace_is_zero(a));
                    let z1 = f8.add(z, f8.one());
                    assert_eq!(f8.add(f8.mul(z, z), z), a);
                    assert_eq!(f8.add(f8.mul(z1, z1), z1), a);
                }
                None => assert!(!f8.trace_is_zero(a)),
            }
        }
    }

    #[test]
    fn artin_schreier_even_degree() {
        // k even exercises the delta-weighted path
        for k in [2u32, 4, 6] {
            let f = gf(2, k);
            let mut solvable = 0u64;
            for a in f.elements() {
                if let Some(z) = f.artin_schreier_solve(a).unwrap() {
                    assert_eq!(f.add(f.mul(z, z), z), a);
                    solvable += 1;
                }
            }
            assert_eq!(solvable, f.cardinality() / 2);
        }
    }

    #[test]
    fn frobenius_is_automorphism_exhaustive() {
        for (p, k) in [(2u64, 1u32), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (5, 1), (7, 2)] {
            let f = gf(p, k);
            if f.cardinality() > 64 {
                continue;
            }
            for a in f.elements() {
                assert_eq!(f.pow(a, f.cardinality()), a);
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn sqrt_is_multiplicative_bijection() {
        let f = gf(2, 6);
        let mut seen = std::collections::HashSet::new();
        for a in f.elements() {
            let sa = f.sqrt_char2(a).unwrap();
            assert!(seen.insert(sa.encoding()));
            for b in f.elements().take(8) {
                let sb = f.sqrt_char2(b).unwrap();
                assert_eq!(f.sqrt_char2(f.mul(a, b)).unwrap(), f.mul(sa, sb));
            }
        }
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn construction_is_deterministic() {
        for (p, k) in [(2u64, 8u32), (3, 4), (5, 3)] {
            let a = gf(p, k);
            let b = gf(p, k);
            assert_eq!(a.modulus(), b.modulus());
            assert_eq!(a, b);
        }
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(Field::new(4, 1, None), Err(Error::NotPrime(4))));
        assert!(matches!(Field::new(2, 2, Some(&[1, 0, 1])), Err(Error::ReducibleModulus { .. }))); // t^2+1=(t+1)^2
        assert!(matches!(Field::new(2, 64, None), Err(Error::FieldTooLarge { .. })));
        assert!(Field::new(2, 2, Some(&[1, 1])).is_err()); // degree too small
    }

    #[test]
    fn odd_characteristic_arithmetic() {
        let f = gf(3, 2);
        assert_eq!(f.cardinality(), 9);
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a)), f.one());
        }
        let two = f.from_int(2);
        assert_eq!(f.add(two, two), f.one()); // 4 = 1 mod 3
    }

    #[test]
    fn embedding_respects_arithmetic() {
        let small = gf(2, 2);
        let big = gf(2, 4);
        let emb = Embedding::new(&small, &big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(emb.embed(small.add(a, b)), big.add(emb.embed(a), emb.embed(b)));
                assert_eq!(emb.embed(small.mul(a, b)), big.mul(emb.embed(a), emb.embed(b)));
            }
        }
        assert!(Embedding::new(&gf(2, 3), &big).is_err());
    }

    #[test]
    fn field_literal_round_trip() {
        let f = Field::parse("GF(2^3)").unwrap();
        assert_eq!(f.cardinality(), 8);
        let g = Field::parse("GF(8)").unwrap();
        assert_eq!(f, g);
        let h = Field::parse("GF(2^2; mod=1,1,1)").unwrap();
        assert_eq!(h, gf(2, 2));
        assert!(Field::parse("GF(6)").is_err());
        assert!(Field::parse("gf(4").is_err());
    }

    #[test]
    fn element_literal_round_trip() {
        let f = gf(2, 4);
        for a in f.elements() {
            let s = f.format_element(a);
            assert_eq!(f.parse_element(&s).unwrap(), a);
        }
        let f9 = gf(3, 2);
        for a in f9.elements() {
            let s = f9.format_element(a);
            assert_eq!(f9.parse_element(&s).unwrap(), a);
        }
        assert_eq!(f.parse_element("t^2 + t").unwrap().encoding(), 0b110);
    }
}
