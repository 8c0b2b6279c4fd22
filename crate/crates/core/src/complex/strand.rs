use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeff::{FieldElem, Parity, RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::superalg::{Monomial, SuperPoly, VarId, VarRegistry};

/// Conserved bidegree labelling one finite-dimensional subcomplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrandKey {
    pub m1: i64,
    pub m2: i64,
}

impl StrandKey {
    pub fn new(m1: i64, m2: i64) -> Self {
        StrandKey { m1, m2 }
    }
}

impl fmt::Display for StrandKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m1, self.m2)
    }
}

/// Ordered monomial basis of the `(key, degree)` component.
#[derive(Debug, Clone)]
pub struct StrandBasis {
    pub key: StrandKey,
    pub degree: usize,
    registry: Arc<VarRegistry>,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl StrandBasis {
    pub(crate) fn new(
        key: StrandKey,
        degree: usize,
        registry: Arc<VarRegistry>,
        mut monomials: Vec<Monomial>,
    ) -> Self {
        monomials.sort();
        monomials.dedup();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        StrandBasis {
            key,
            degree,
            registry,
            monomials,
            index,
        }
    }

    pub(crate) fn empty(key: StrandKey, degree: usize, registry: Arc<VarRegistry>) -> Self {
        Self::new(key, degree, registry, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn labels(&self) -> Vec<String> {
        self.monomials
            .iter()
            .map(|m| {
                let s = m.render(&self.registry);
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s
                }
            })
            .collect()
    }

    pub fn basis_poly(&self, j: usize, ring: RingSpec) -> SuperPoly {
        SuperPoly::term(
            self.registry.clone(),
            self.monomials[j].clone(),
            Scalar::one(ring),
        )
    }

    /// Polynomial with the given coordinates (ground-field coefficients).
    pub fn to_poly(&self, coords: &[FieldElem], ring: RingSpec) -> SuperPoly {
        let mut out = SuperPoly::zero(self.registry.clone(), ring);
        for (m, c) in self.monomials.iter().zip(coords) {
            out.add_term(m.clone(), Scalar::from_field(ring, c.clone()));
        }
        out
    }

    /// Coordinates of a ground-field polynomial supported on this basis.
    pub fn coordinates(&self, f: &SuperPoly) -> Result<Vec<FieldElem>> {
        let field = f.ring().field;
        let mut out = vec![FieldElem::zero(field); self.dim()];
        for (m, c) in f.terms() {
            let j = self.position(m).ok_or_else(|| Error::StrandViolation {
                from: format!("{} i={}", self.key, self.degree),
                to: m.render(&self.registry),
            })?;
            out[j] = c
                .as_field()
                .ok_or_else(|| Error::NonFieldEntry(c.to_string()))?;
        }
        Ok(out)
    }
}

/// Degree requirement on a block of variables of one parity.
pub(crate) struct Demand<'a> {
    pub vars: &'a [VarId],
    pub degree: i64,
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for mut rest in subsets(n - 1, k) {
        out.push(std::mem::take(&mut rest));
    }
    for mut rest in subsets(n - 1, k - 1) {
        rest.push(n - 1);
        out.push(rest);
    }
    out
}

/// All monomials meeting every demand (variables outside the demands have
/// degree zero).
pub(crate) fn monomials_with_degrees(
    registry: &VarRegistry,
    demands: &[Demand<'_>],
) -> Vec<Monomial> {
    let mut partial: Vec<(Vec<u32>, u64)> = vec![(vec![0; registry.n_even()], 0)];
    for d in demands {
        if d.degree < 0 {
            return Vec::new();
        }
        let degree = d.degree as u32;
        let Some(&first) = d.vars.first() else {
            if degree == 0 {
                continue;
            }
            return Vec::new();
        };
        let parity = registry.var(first).parity;
        let mut next = Vec::new();
        match parity {
            Parity::Even => {
                let choices = compositions(degree, d.vars.len());
                for (even, odd) in &partial {
                    for c in &choices {
                        let mut e = even.clone();
                        for (v, k) in d.vars.iter().zip(c) {
                            e[registry.var(*v).slot] += k;
                        }
                        next.push((e, *odd));
                    }
                }
            }
            Parity::Odd => {
                let choices = subsets(d.vars.len(), degree as usize);
                for (even, odd) in &partial {
                    for c in &choices {
                        let mut o = *odd;
                        for &k in c {
                            o |= 1 << registry.var(d.vars[k]).slot;
                        }
                        next.push((even.clone(), o));
                    }
                }
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|(e, o)| Monomial::from_parts(e, o))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_subset_counts() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(0, 0).len(), 1);
        assert!(compositions(1, 0).is_empty());
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(2, 3).len(), 0);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
