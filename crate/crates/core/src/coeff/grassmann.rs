use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::field::{FieldElem, FieldSpec};
use crate::error::{Error, Result};

pub const MAX_GENERATORS: usize = 16;

/// Z/2 grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_degree(d: usize) -> Self {
        if d.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// `true` when bringing the concatenation of the odd factors `a` then `b`
/// into ascending order takes an odd number of transpositions.
///
/// Caller guarantees `a & b == 0`.
pub(crate) fn merge_is_negative(a: u64, b: u64) -> bool {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    inversions % 2 == 1
}

/// Coefficient ring `Λ_F[η₁..η_m]`; `m = 0` is the ground field itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingSpec {
    pub field: FieldSpec,
    generators: u8,
}

impl RingSpec {
    pub fn field(field: FieldSpec) -> Self {
        RingSpec {
            field,
            generators: 0,
        }
    }

    pub fn rationals() -> Self {
        Self::field(FieldSpec::Rationals)
    }

    pub fn grassmann(field: FieldSpec, generators: usize) -> Result<Self> {
        if generators > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(generators));
        }
        Ok(RingSpec {
            field,
            generators: generators as u8,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators as usize
    }

    pub fn is_field(&self) -> bool {
        self.generators == 0
    }

    /// The same ground field without Grassmann generators.
    pub fn ground(&self) -> RingSpec {
        RingSpec::field(self.field)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators == 0 {
            write!(f, "{}", self.field)
        } else {
            write!(f, "Grassmann({},{})", self.field, self.generators)
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s
            .strip_prefix("Grassmann(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let (field, m) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad ring `{s}`")))?;
            let m: usize = m
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator count in `{s}`")))?;
            return RingSpec::grassmann(field.parse()?, m);
        }
        Ok(RingSpec::field(s.parse()?))
    }
}

impl Serialize for RingSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of the coefficient ring: a Grassmann element `Σ c_S η_S`
/// keyed by generator bitmask (bit `k` is `η_{k+1}`).
///
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    ring: RingSpec,
    terms: BTreeMap<u16, FieldElem>,
}

/// Alias used where the Grassmann structure is the point.
pub type GrassmannElement = Scalar;

impl Scalar {
    pub fn zero(ring: RingSpec) -> Self {
        Scalar {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: RingSpec) -> Self {
        Self::from_field(ring, FieldElem::one(ring.field))
    }

    pub fn from_i64(ring: RingSpec, n: i64) -> Self {
        Self::from_field(ring, FieldElem::from_i64(ring.field, n))
    }

    pub fn from_field(ring: RingSpec, c: FieldElem) -> Self {
        Self::term(ring, 0, c).expect("empty monomial always fits")
    }

    /// `c · η_S` for the generator subset `mask`.
    pub fn term(ring: RingSpec, mask: u16, c: FieldElem) -> Result<Self> {
        if ring.generators() < 16 && mask >> ring.generators() != 0 {
            return Err(Error::GeneratorOutOfRange {
                index: 16 - mask.leading_zeros() as usize,
                ring,
            });
        }
        assert_eq!(c.field(), ring.field, "coefficient from another field");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mask, c);
        }
        Ok(Scalar { ring, terms })
    }

    /// The generator `η_k` (1-based).
    pub fn generator(ring: RingSpec, k: usize) -> Result<Self> {
        if k == 0 || k > ring.generators() {
            return Err(Error::GeneratorOutOfRange { index: k, ring });
        }
        Self::term(ring, 1 << (k - 1), FieldElem::one(ring.field))
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(FieldElem::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u16, &FieldElem)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: u16) -> FieldElem {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| FieldElem::zero(self.ring.field))
    }

    pub fn body(&self) -> FieldElem {
        self.coefficient(0)
    }

    pub fn soul(&self) -> Scalar {
        let mut s = self.clone();
        s.terms.remove(&0);
        s
    }

    /// `Some(c)` when the element lies in the ground field.
    pub fn as_field(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(FieldElem::zero(self.ring.field)),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Parity when homogeneous; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut parities = self
            .terms
            .keys()
            .map(|m| Parity::from_degree(m.count_ones() as usize));
        let first = parities.next().unwrap_or(Parity::Even);
        parities.all(|p| p == first).then_some(first)
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 1)
    }

    /// Grade involution: negates the odd part.
    pub fn involute(&self) -> Scalar {
        let mut out = self.clone();
        for (m, c) in out.terms.iter_mut() {
            if m.count_ones() % 2 == 1 {
                *c = -&*c;
            }
        }
        out
    }

    /// `(-1)^{|self|·parity}`-twisted copy: the element seen through an
    /// object of the given parity it has to pass.
    pub fn twisted(&self, past: Parity) -> Scalar {
        match past {
            Parity::Even => self.clone(),
            Parity::Odd => self.involute(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Scalar {
        if c.is_zero() {
            return Scalar::zero(self.ring);
        }
        Scalar {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    fn check_ring(&self, other: &Scalar) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        let mut out = Scalar::zero(self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let mut c = ca * cb;
                if merge_is_negative(*ma as u64, *mb as u64) {
                    c = -c;
                }
                out.add_term(ma | mb, c);
            }
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, mask: u16, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one(self.ring);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of an even element with invertible body:
    /// `b⁻¹ · Σ_{k=0..m} (−b⁻¹·soul)^k`.
    pub fn inverse(&self) -> Result<Scalar> {
        if !self.is_even() {
            return Err(Error::NotEven);
        }
        let body_inv = self.body().inverse()?;
        let step = -&self.soul().scale(&body_inv);
        let mut sum = Scalar::one(self.ring);
        let mut power = Scalar::one(self.ring);
        for _ in 0..self.ring.generators() {
            power = &power * &step;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(&body_inv))
    }

    /// Parse a sum like `"2 - 1/2*e1*e2 + e3"`.
    pub fn parse(ring: RingSpec, s: &str) -> Result<Scalar> {
        let mut out = Scalar::zero(ring);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            let (neg, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece),
            };
            let mut coeff = FieldElem::one(ring.field);
            let mut term = Scalar::one(ring);
            for factor in body.split('*') {
                if let Some(k) = factor.strip_prefix('e') {
                    let k: usize = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad generator `{factor}`")))?;
                    term = &term * &Scalar::generator(ring, k)?;
                } else {
                    coeff = &coeff * &FieldElem::parse(ring.field, factor)?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            out = &out + &term.scale(&coeff);
        }
        Ok(out)
    }
}

pub(crate) fn render_mask(mask: u16) -> String {
    let mut parts = Vec::new();
    for k in 0..16 {
        if mask & (1 << k) != 0 {
            parts.push(format!("e{}", k + 1));
        }
    }
    parts.join("*")
}

/// Renders `c` times an already-rendered product `rest` ("" for 1) as a
/// signed term; returns (negative, magnitude text).
pub(crate) fn render_signed_term(c: &FieldElem, rest: &str) -> (bool, String) {
    let negative = c.sign_for_display() == std::cmp::Ordering::Less;
    let magnitude = if negative { -c } else { c.clone() };
    let text = if rest.is_empty() {
        magnitude.to_string()
    } else if magnitude.is_one() {
        rest.to_string()
    } else {
        format!("{magnitude}*{rest}")
    };
    (negative, text)
}

pub(crate) fn join_signed(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, text)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => out.push_str(&text),
            (0, true) => {
                out.push('-');
                out.push_str(&text);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&text);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&text);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered = join_signed(
            self.terms
                .iter()
                .map(|(m, c)| render_signed_term(c, &render_mask(*m))),
        );
        if rendered.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&rendered)
    }
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar ring mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_add(&-rhs).expect("scalar ring mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar ring mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}
