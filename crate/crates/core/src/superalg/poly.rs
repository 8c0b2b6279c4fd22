use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::coeff::{join_signed, render_signed_term, FieldElem, Parity, RingSpec, Scalar};
use crate::error::{Error, Result};

use super::monomial::Monomial;
use super::registry::{Factor, VarId, VarRegistry};

/// Polynomial in a supercommutative alphabet with coefficients written on
/// the left of each normal-form monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperPoly {
    registry: Arc<VarRegistry>,
    ring: RingSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl SuperPoly {
    pub fn zero(registry: Arc<VarRegistry>, ring: RingSpec) -> Self {
        SuperPoly {
            registry,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(registry: Arc<VarRegistry>, c: Scalar) -> Self {
        let one = Monomial::one(&registry);
        Self::term(registry, one, c)
    }

    pub fn one(registry: Arc<VarRegistry>, ring: RingSpec) -> Self {
        Self::constant(registry, Scalar::one(ring))
    }

    pub fn term(registry: Arc<VarRegistry>, monomial: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(registry, c.ring());
        p.add_term(monomial, c);
        p
    }

    pub fn var(registry: Arc<VarRegistry>, ring: RingSpec, v: VarId) -> Self {
        let m = Monomial::of_var(&registry, v);
        Self::term(registry, m, Scalar::one(ring))
    }

    pub fn var_named(registry: Arc<VarRegistry>, ring: RingSpec, name: &str) -> Result<Self> {
        let v = registry.lookup(name)?;
        Ok(Self::var(registry, ring, v))
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.registry
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ring))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn same_registry(&self, other: &SuperPoly) -> bool {
        Arc::ptr_eq(&self.registry, &other.registry) || *self.registry == *other.registry
    }

    fn check(&self, other: &SuperPoly) -> Result<()> {
        if !self.same_registry(other) {
            return Err(Error::RegistryMismatch);
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.checked_add(&-other)
    }

    /// `(c₁μ₁)(c₂μ₂) = c₁ · (c₂ twisted past μ₁) · μ₁μ₂`.
    pub fn checked_mul(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.check(other)?;
        let mut out = SuperPoly::zero(self.registry.clone(), self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some((negative, m)) = ma.mul(mb) else {
                    continue;
                };
                let mut c = ca * &cb.twisted(ma.parity());
                if negative {
                    c = -c;
                }
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> SuperPoly {
        let mut acc = SuperPoly::one(self.registry.clone(), self.ring);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Left multiplication by a scalar.
    pub fn scale(&self, c: &Scalar) -> SuperPoly {
        let mut out = SuperPoly::zero(self.registry.clone(), self.ring);
        for (m, t) in &self.terms {
            out.add_term(m.clone(), c * t);
        }
        out
    }

    pub fn scale_field(&self, c: &FieldElem) -> SuperPoly {
        let mut out = SuperPoly::zero(self.registry.clone(), self.ring);
        for (m, t) in &self.terms {
            out.add_term(m.clone(), t.scale(c));
        }
        out
    }

    /// `v · f`.
    pub fn mul_var_left(&self, v: VarId) -> SuperPoly {
        let vm = Monomial::of_var(&self.registry, v);
        let vp = self.registry.var(v).parity;
        let mut out = SuperPoly::zero(self.registry.clone(), self.ring);
        for (m, c) in &self.terms {
            let Some((negative, prod)) = vm.mul(m) else {
                continue;
            };
            let mut c = c.twisted(vp);
            if negative {
                c = -c;
            }
            out.add_term(prod, c);
        }
        out
    }

    /// Left partial derivative `∂_v f`. Odd `v` picks up
    /// `(-1)^{#odd variables before v}` and twists the coefficient.
    pub fn partial(&self, v: VarId) -> SuperPoly {
        let vp = self.registry.var(v).parity;
        let field = self.ring.field;
        let mut out = SuperPoly::zero(self.registry.clone(), self.ring);
        for (m, c) in &self.terms {
            let Some((negative, factor, rest)) = m.derivative(&self.registry, v) else {
                continue;
            };
            let mut k = FieldElem::from_i64(field, factor as i64);
            if negative {
                k = -k;
            }
            out.add_term(rest, c.twisted(vp).scale(&k));
        }
        out
    }

    pub fn partial_named(&self, name: &str) -> Result<SuperPoly> {
        Ok(self.partial(self.registry.lookup(name)?))
    }

    /// `Σ_{v ∈ factors} v·∂_v f`.
    pub fn euler(&self, factors: &[Factor]) -> SuperPoly {
        let mut out = SuperPoly::zero(self.registry.clone(), self.ring);
        for v in self.registry.ids() {
            if factors.contains(&self.registry.var(v).factor) {
                out = &out + &self.partial(v).mul_var_left(v);
            }
        }
        out
    }

    /// Parity when every term (coefficient and monomial together) agrees.
    pub fn parity(&self) -> Option<Parity> {
        let mut result: Option<Parity> = None;
        for (m, c) in &self.terms {
            let p = c.parity()? + m.parity();
            match result {
                None => result = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(result.unwrap_or(Parity::Even))
    }

    /// Generator subsets appearing in any coefficient.
    pub fn grassmann_masks(&self) -> BTreeSet<u16> {
        self.terms
            .values()
            .flat_map(|c| c.terms().map(|(m, _)| m))
            .collect()
    }

    /// The `η_S` component: the polynomial with field coefficients `c_S`.
    pub fn grassmann_component(&self, mask: u16) -> SuperPoly {
        let ground = self.ring.ground();
        let mut out = SuperPoly::zero(self.registry.clone(), ground);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), Scalar::from_field(ground, c.coefficient(mask)));
        }
        out
    }

    /// Reinterpret in a larger coefficient ring over the same field.
    pub fn extend_ring(&self, ring: RingSpec) -> Result<SuperPoly> {
        if ring.field != self.ring.field || ring.generators() < self.ring.generators() {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: ring,
            });
        }
        let mut out = SuperPoly::zero(self.registry.clone(), ring);
        for (m, c) in &self.terms {
            let mut lifted = Scalar::zero(ring);
            for (mask, v) in c.terms() {
                lifted = &lifted + &Scalar::term(ring, mask, v.clone())?;
            }
            out.add_term(m.clone(), lifted);
        }
        Ok(out)
    }

    /// Apply the algebra homomorphism determined by `images[v]` for every
    /// variable `v`. Images must have the parity of their variable.
    pub fn substitute(&self, images: &[SuperPoly]) -> Result<SuperPoly> {
        if images.len() != self.registry.len() {
            return Err(Error::InvalidArgument(format!(
                "{} images for {} variables",
                images.len(),
                self.registry.len()
            )));
        }
        let mut out = SuperPoly::zero(self.registry.clone(), self.ring);
        for (m, c) in &self.terms {
            let mut value = SuperPoly::constant(self.registry.clone(), c.clone());
            for (v, e) in m.factors(&self.registry) {
                value = value.checked_mul(&images[v.0].pow(e))?;
            }
            out = out.checked_add(&value)?;
        }
        Ok(out)
    }

    pub fn map_monomials<F>(&self, mut keep: F) -> SuperPoly
    where
        F: FnMut(&Monomial) -> bool,
    {
        let mut out = SuperPoly::zero(self.registry.clone(), self.ring);
        for (m, c) in &self.terms {
            if keep(m) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered = join_signed(self.terms.iter().map(|(m, c)| {
            let mono = m.render(&self.registry);
            match c.as_field() {
                Some(k) => render_signed_term(&k, &mono),
                None if mono.is_empty() => (false, format!("({c})")),
                None => (false, format!("({c})*{mono}")),
            }
        }));
        if rendered.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&rendered)
    }
}

impl Add for &SuperPoly {
    type Output = SuperPoly;

    fn add(self, rhs: &SuperPoly) -> SuperPoly {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &SuperPoly {
    type Output = SuperPoly;

    fn sub(self, rhs: &SuperPoly) -> SuperPoly {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &SuperPoly {
    type Output = SuperPoly;

    fn mul(self, rhs: &SuperPoly) -> SuperPoly {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;

    fn neg(self) -> SuperPoly {
        SuperPoly {
            registry: self.registry.clone(),
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for SuperPoly {
    type Output = SuperPoly;

    fn neg(self) -> SuperPoly {
        -&self
    }
}
