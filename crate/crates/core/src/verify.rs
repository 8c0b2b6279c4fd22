//! Identity checks on whole strands: homotopy contractions and the
//! `δε + εδ` commutator.

use serde::Serialize;

use crate::coeff::FieldElem;
use crate::complex::{ComplexSpec, StrandKey};
use crate::error::Result;
use crate::sparse::SparseMatrix;

/// Outcome of an identity checked on many objects.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub checked: usize,
    pub failed: usize,
    /// The first few failures.
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < 20 {
            self.failures.push(msg);
        }
    }
}

/// `hδ + δh = id` as matrices on every component of every strand whose
/// normalizer is nonzero.
pub fn homotopy_identity(spec: &ComplexSpec, keys: &[StrandKey]) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    let field = spec.ring.field;
    for &key in keys {
        if spec.strand_normalizer(key) == 0 {
            continue;
        }
        for i in spec.degree_range(key) {
            let dim = spec.enumerate_strand(key, i).dim();
            if dim == 0 {
                continue;
            }
            let mut total = SparseMatrix::zero(field, dim, dim);
            if let Some(t) = spec.differential_step().target(i) {
                let d = spec.differential_matrix(key, i)?;
                let h = spec.homotopy_matrix(key, t)?;
                total = total.add(&h.matrix.mul(&d.matrix));
            }
            if let Some(t) = spec.homotopy_step().target(i) {
                let h = spec.homotopy_matrix(key, i)?;
                let d = spec.differential_matrix(key, t)?;
                total = total.add(&d.matrix.mul(&h.matrix));
            }
            out.checked += 1;
            if total != SparseMatrix::identity(field, dim) {
                out.fail(format!("strand {key} i={i}"));
            }
        }
    }
    Ok(out)
}

/// `δε + εδ = n·id` on every basis monomial, where `ε` is the unnormalized
/// homotopy and `n` the strand normalizer. Monomials above `max_degree` are
/// skipped.
pub fn commutator_identity(
    spec: &ComplexSpec,
    keys: &[StrandKey],
    max_degree: Option<u32>,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for &key in keys {
        for i in spec.degree_range(key) {
            let basis = spec.enumerate_strand(key, i);
            for j in 0..basis.dim() {
                let m = &basis.monomials()[j];
                if max_degree.is_some_and(|d| m.degree() > d) {
                    continue;
                }
                let f = basis.basis_poly(j, spec.ring);
                let lhs = spec
                    .apply_delta(&spec.apply_epsilon(&f)?)?
                    .checked_add(&spec.apply_epsilon(&spec.apply_delta(&f)?)?)?;
                let n = FieldElem::from_i64(spec.ring.field, spec.normalizer(m));
                out.checked += 1;
                if lhs != f.scale_field(&n) {
                    out.fail(format!("{f} in strand {key} i={i}"));
                }
            }
        }
    }
    Ok(out)
}
