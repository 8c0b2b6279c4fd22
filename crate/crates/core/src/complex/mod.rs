//! The classical Koszul complex, the super Koszul complex `K•` and its dual
//! `K*•`, cut into finite strands of conserved bidegree.
//!
//! Every complex lives in one merged supercommutative alphabet:
//!
//! | kind             | evens      | odds        | differential                    |
//! |------------------|------------|-------------|---------------------------------|
//! | `SuperKoszul`    | `x`, `ℓ`   | `θ`, `χ`    | `Σ x·∂_χ + Σ θ·∂_ℓ` (lowers i)  |
//! | `DualSuperKoszul`| `x`, `∂ℓ`  | `θ`, `∂χ`   | `(Σ x·∂χ + Σ θ·∂ℓ)·` (raises i) |
//! | `Classical`      | `x`        | `y`         | `(Σ x·y)·` (raises i)           |

mod strand;

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::Serialize;

use crate::coeff::{FieldElem, Parity, RingSpec};
use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;
use crate::superalg::{Factor, Monomial, SuperPoly, VarId, VarRegistry};

use strand::{monomials_with_degrees, Demand};
pub use strand::{StrandBasis, StrandKey};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum ComplexKind {
    Classical { n: usize },
    SuperKoszul { p: usize, q: usize },
    DualSuperKoszul { p: usize, q: usize },
}

/// Direction in homological degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Lower,
    Raise,
}

impl Step {
    pub fn target(self, i: usize) -> Option<usize> {
        match self {
            Step::Lower => i.checked_sub(1),
            Step::Raise => Some(i + 1),
        }
    }

    pub fn source(self, i: usize) -> Option<usize> {
        match self {
            Step::Lower => Some(i + 1),
            Step::Raise => i.checked_sub(1),
        }
    }

    pub fn opposite(self) -> Step {
        match self {
            Step::Lower => Step::Raise,
            Step::Raise => Step::Lower,
        }
    }
}

/// Role-labelled variables. `a`/`b` generate `R` (even/odd part of `V`);
/// `c`/`d` are their partners in the second factor.
#[derive(Debug, Clone)]
struct Roles {
    a: Vec<VarId>,
    b: Vec<VarId>,
    c: Vec<VarId>,
    d: Vec<VarId>,
}

/// A complex together with its alphabet and coefficient ring.
#[derive(Debug, Clone)]
pub struct ComplexSpec {
    pub kind: ComplexKind,
    pub ring: RingSpec,
    registry: Arc<VarRegistry>,
    roles: Roles,
}

/// A differential or homotopy restricted to one strand component.
#[derive(Debug, Clone)]
pub struct StrandMap {
    pub domain: StrandBasis,
    pub codomain: StrandBasis,
    pub matrix: SparseMatrix,
}

impl ComplexSpec {
    pub fn new(kind: ComplexKind, ring: RingSpec) -> Self {
        let (registry, roles) = match kind {
            ComplexKind::SuperKoszul { p, q } => {
                let r = VarRegistry::super_koszul(p, q);
                let roles = Roles {
                    a: r.of_class(Factor::R, Parity::Even),
                    b: r.of_class(Factor::R, Parity::Odd),
                    c: r.of_class(Factor::RPi, Parity::Odd),
                    d: r.of_class(Factor::RPi, Parity::Even),
                };
                (r, roles)
            }
            ComplexKind::DualSuperKoszul { p, q } => {
                let r = VarRegistry::dual_super_koszul(p, q);
                let roles = Roles {
                    a: r.of_class(Factor::R, Parity::Even),
                    b: r.of_class(Factor::R, Parity::Odd),
                    c: r.of_class(Factor::RPiDual, Parity::Odd),
                    d: r.of_class(Factor::RPiDual, Parity::Even),
                };
                (r, roles)
            }
            ComplexKind::Classical { n } => {
                let r = VarRegistry::classical(n);
                let roles = Roles {
                    a: r.of_class(Factor::ClassicalB, Parity::Even),
                    b: Vec::new(),
                    c: r.of_class(Factor::ClassicalU, Parity::Odd),
                    d: Vec::new(),
                };
                (r, roles)
            }
        };
        ComplexSpec {
            kind,
            ring,
            registry: Arc::new(registry),
            roles,
        }
    }

    pub fn super_koszul(p: usize, q: usize, ring: RingSpec) -> Self {
        Self::new(ComplexKind::SuperKoszul { p, q }, ring)
    }

    pub fn dual_super_koszul(p: usize, q: usize, ring: RingSpec) -> Self {
        Self::new(ComplexKind::DualSuperKoszul { p, q }, ring)
    }

    pub fn classical(n: usize, ring: RingSpec) -> Self {
        Self::new(ComplexKind::Classical { n }, ring)
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.registry
    }

    pub fn with_ring(&self, ring: RingSpec) -> Self {
        ComplexSpec {
            ring,
            ..self.clone()
        }
    }

    pub fn parse(&self, text: &str) -> Result<SuperPoly> {
        SuperPoly::parse(&self.registry, self.ring, text)
    }

    /// Even and odd rank `(p, q)` of `V`; `(N, 0)` for the classical complex.
    fn ranks(&self) -> (usize, usize) {
        match self.kind {
            ComplexKind::Classical { n } => (n, 0),
            ComplexKind::SuperKoszul { p, q } | ComplexKind::DualSuperKoszul { p, q } => (p, q),
        }
    }

    pub fn differential_step(&self) -> Step {
        match self.kind {
            ComplexKind::SuperKoszul { .. } => Step::Lower,
            _ => Step::Raise,
        }
    }

    pub fn homotopy_step(&self) -> Step {
        self.differential_step().opposite()
    }

    fn deg(&self, m: &Monomial, vars: &[VarId]) -> i64 {
        m.degree_in(&self.registry, vars) as i64
    }

    /// Strand and homological degree of a monomial.
    pub fn strand_of(&self, m: &Monomial) -> (StrandKey, usize) {
        let r = &self.roles;
        let (da, db, dc, dd) = (
            self.deg(m, &r.a),
            self.deg(m, &r.b),
            self.deg(m, &r.c),
            self.deg(m, &r.d),
        );
        match self.kind {
            ComplexKind::SuperKoszul { .. } => {
                (StrandKey::new(da + dc, db + dd), (dc + dd) as usize)
            }
            ComplexKind::DualSuperKoszul { .. } => {
                (StrandKey::new(da - dc, db - dd), (dc + dd) as usize)
            }
            ComplexKind::Classical { .. } => (StrandKey::new(da - dc, 0), dc as usize),
        }
    }

    pub fn is_valid_key(&self, key: StrandKey) -> bool {
        let (p, q) = self.ranks();
        match self.kind {
            ComplexKind::SuperKoszul { .. } => key.m1 >= 0 && key.m2 >= 0,
            ComplexKind::DualSuperKoszul { .. } => key.m1 >= -(p as i64) && key.m2 <= q as i64,
            ComplexKind::Classical { .. } => key.m1 >= -(p as i64) && key.m2 == 0,
        }
    }

    /// Homological degrees that can be nonzero on a strand.
    pub fn degree_range(&self, key: StrandKey) -> RangeInclusive<usize> {
        if !self.is_valid_key(key) {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        let (p, q) = self.ranks();
        let top = match self.kind {
            ComplexKind::SuperKoszul { .. } => (p as i64).min(key.m1) + key.m2,
            ComplexKind::DualSuperKoszul { .. } => p as i64 + q as i64 - key.m2,
            ComplexKind::Classical { .. } => p as i64,
        };
        0..=top.max(0) as usize
    }

    /// All strands in the window; `m1 + m2 ≤ W` for `K•`, `|m1| + |m2| ≤ W`
    /// otherwise. Sorted.
    pub fn strands_in_window(&self, window: i64) -> Vec<StrandKey> {
        let (p, q) = self.ranks();
        let mut out = Vec::new();
        match self.kind {
            ComplexKind::SuperKoszul { .. } => {
                for m1 in 0..=window {
                    for m2 in 0..=window - m1 {
                        out.push(StrandKey::new(m1, m2));
                    }
                }
            }
            ComplexKind::DualSuperKoszul { .. } => {
                for m1 in -(p as i64)..=window {
                    for m2 in -window..=q as i64 {
                        if m1.abs() + m2.abs() <= window {
                            out.push(StrandKey::new(m1, m2));
                        }
                    }
                }
            }
            ComplexKind::Classical { .. } => {
                for m1 in -(p as i64)..=window {
                    if m1.abs() <= window {
                        out.push(StrandKey::new(m1, 0));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Monomial basis of the `(key, i)` component.
    pub fn enumerate_strand(&self, key: StrandKey, i: usize) -> StrandBasis {
        let reg = self.registry.clone();
        if !self.is_valid_key(key) {
            return StrandBasis::empty(key, i, reg);
        }
        let r = &self.roles;
        let i = i as i64;
        let (p, _) = self.ranks();
        let mut monos = Vec::new();
        match self.kind {
            ComplexKind::SuperKoszul { .. } => {
                for s in 0..=p as i64 {
                    let dl = i - s;
                    monos.extend(monomials_with_degrees(
                        &reg,
                        &[
                            Demand {
                                vars: &r.a,
                                degree: key.m1 - s,
                            },
                            Demand {
                                vars: &r.c,
                                degree: s,
                            },
                            Demand {
                                vars: &r.d,
                                degree: dl,
                            },
                            Demand {
                                vars: &r.b,
                                degree: key.m2 - dl,
                            },
                        ],
                    ));
                }
            }
            ComplexKind::DualSuperKoszul { .. } => {
                for s in 0..=p as i64 {
                    let dl = i - s;
                    monos.extend(monomials_with_degrees(
                        &reg,
                        &[
                            Demand {
                                vars: &r.a,
                                degree: key.m1 + s,
                            },
                            Demand {
                                vars: &r.c,
                                degree: s,
                            },
                            Demand {
                                vars: &r.d,
                                degree: dl,
                            },
                            Demand {
                                vars: &r.b,
                                degree: key.m2 + dl,
                            },
                        ],
                    ));
                }
            }
            ComplexKind::Classical { .. } => {
                monos.extend(monomials_with_degrees(
                    &reg,
                    &[
                        Demand {
                            vars: &r.a,
                            degree: key.m1 + i,
                        },
                        Demand {
                            vars: &r.c,
                            degree: i,
                        },
                    ],
                ));
            }
        }
        StrandBasis::new(key, i as usize, reg, monos)
    }

    fn check_poly(&self, f: &SuperPoly) -> Result<()> {
        if **f.registry() != *self.registry {
            return Err(Error::RegistryMismatch);
        }
        if f.ring() != self.ring {
            return Err(Error::RingMismatch {
                left: f.ring(),
                right: self.ring,
            });
        }
        Ok(())
    }

    /// The odd element `Σ x·∂χ + Σ θ·∂ℓ` (dual) or `Σ x·y` (classical) that
    /// `δ` multiplies by. `None` for `K•`, where `δ` is a derivation.
    pub fn delta_element(&self) -> Option<SuperPoly> {
        if matches!(self.kind, ComplexKind::SuperKoszul { .. }) {
            return None;
        }
        let one = SuperPoly::one(self.registry.clone(), self.ring);
        let mut out = SuperPoly::zero(self.registry.clone(), self.ring);
        let r = &self.roles;
        for (&u, &psi) in r.a.iter().zip(&r.c).chain(r.b.iter().zip(&r.d)) {
            out = &out + &one.mul_var_left(psi).mul_var_left(u);
        }
        Some(out)
    }

    /// Apply the differential (`δ`, `δ*` or `d`).
    pub fn apply_delta(&self, f: &SuperPoly) -> Result<SuperPoly> {
        self.check_poly(f)?;
        let r = &self.roles;
        let mut out = SuperPoly::zero(self.registry.clone(), self.ring);
        let pairs = r.a.iter().zip(&r.c).chain(r.b.iter().zip(&r.d));
        match self.kind {
            ComplexKind::SuperKoszul { .. } => {
                for (&partner, &v) in pairs {
                    out = &out + &f.partial(v).mul_var_left(partner);
                }
            }
            _ => {
                for (&u, &psi) in pairs {
                    out = &out + &f.mul_var_left(psi).mul_var_left(u);
                }
            }
        }
        Ok(out)
    }

    /// The unnormalized homotopy operator: `ε = Σ χ·∂_x + Σ ℓ·∂_θ` on `K•`,
    /// `Σ ∂_u ∂_ψ` on the classical and dual complexes.
    pub fn apply_epsilon(&self, f: &SuperPoly) -> Result<SuperPoly> {
        self.check_poly(f)?;
        let r = &self.roles;
        let mut out = SuperPoly::zero(self.registry.clone(), self.ring);
        match self.kind {
            ComplexKind::SuperKoszul { .. } => {
                for (&v, &partner) in r.a.iter().zip(&r.c).chain(r.b.iter().zip(&r.d)) {
                    out = &out + &f.partial(v).mul_var_left(partner);
                }
            }
            ComplexKind::Classical { .. } => {
                for (&x, &y) in r.a.iter().zip(&r.c) {
                    out = &out + &f.partial(y).partial(x);
                }
            }
            ComplexKind::DualSuperKoszul { .. } => {
                // pairs (u, ψ) = (x, ∂χ) and (∂ℓ, θ)
                for (&u, &psi) in r.a.iter().zip(&r.c).chain(r.d.iter().zip(&r.b)) {
                    out = &out + &f.partial(psi).partial(u);
                }
            }
        }
        Ok(out)
    }

    /// Homotopy normalizer of a monomial: `k + i` on `K•`,
    /// `N − deg ψ + deg u` on the classical and dual complexes. Constant on
    /// each strand.
    pub fn normalizer(&self, m: &Monomial) -> i64 {
        let (key, _) = self.strand_of(m);
        self.strand_normalizer(key)
    }

    pub fn strand_normalizer(&self, key: StrandKey) -> i64 {
        let (p, q) = self.ranks();
        match self.kind {
            ComplexKind::SuperKoszul { .. } => key.m1 + key.m2,
            ComplexKind::DualSuperKoszul { .. } => (p + q) as i64 + key.m1 - key.m2,
            ComplexKind::Classical { .. } => p as i64 + key.m1,
        }
    }

    fn normalizer_inverse(&self, value: i64) -> Result<FieldElem> {
        FieldElem::from_i64(self.ring.field, value)
            .inverse()
            .map_err(|_| Error::NonInvertibleNormalizer {
                value,
                ring: self.ring,
            })
    }

    /// The normalized homotopy, applied termwise by strand.
    pub fn apply_homotopy(&self, f: &SuperPoly) -> Result<SuperPoly> {
        self.check_poly(f)?;
        let mut out = SuperPoly::zero(self.registry.clone(), self.ring);
        for (m, c) in f.terms() {
            let inv = self.normalizer_inverse(self.normalizer(m))?;
            let term = SuperPoly::term(self.registry.clone(), m.clone(), c.clone());
            out = &out + &self.apply_epsilon(&term)?.scale_field(&inv);
        }
        Ok(out)
    }

    fn assemble<F>(&self, key: StrandKey, i: usize, step: Step, op: F) -> Result<StrandMap>
    where
        F: Fn(&SuperPoly) -> Result<SuperPoly>,
    {
        let domain = self.enumerate_strand(key, i);
        let codomain = match step.target(i) {
            Some(t) => self.enumerate_strand(key, t),
            None => StrandBasis::empty(key, 0, self.registry.clone()),
        };
        let field = self.ring.field;
        let mut matrix = SparseMatrix::zero(field, codomain.dim(), domain.dim());
        for j in 0..domain.dim() {
            let image = op(&domain.basis_poly(j, self.ring))?;
            let mut col = BTreeMap::new();
            for (m, c) in image.terms() {
                let row = codomain.position(m).ok_or_else(|| Error::StrandViolation {
                    from: format!("{key} i={i}"),
                    to: m.render(&self.registry),
                })?;
                let v = c
                    .as_field()
                    .ok_or_else(|| Error::NonFieldEntry(c.to_string()))?;
                col.insert(row, v);
            }
            matrix.set_column(j, col);
        }
        Ok(StrandMap {
            domain,
            codomain,
            matrix,
        })
    }

    /// Matrix of the differential out of the `(key, i)` component.
    pub fn differential_matrix(&self, key: StrandKey, i: usize) -> Result<StrandMap> {
        self.assemble(key, i, self.differential_step(), |f| self.apply_delta(f))
    }

    pub fn epsilon_matrix(&self, key: StrandKey, i: usize) -> Result<StrandMap> {
        self.assemble(key, i, self.homotopy_step(), |f| self.apply_epsilon(f))
    }

    /// Matrix of the normalized homotopy out of the `(key, i)` component.
    pub fn homotopy_matrix(&self, key: StrandKey, i: usize) -> Result<StrandMap> {
        let mut map = self.epsilon_matrix(key, i)?;
        if map.matrix.cols() > 0 && map.matrix.rows() > 0 {
            let inv = self.normalizer_inverse(self.strand_normalizer(key))?;
            map.matrix = map.matrix.scale(&inv);
        }
        Ok(map)
    }
}
