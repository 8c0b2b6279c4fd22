//! Exact coefficient fields and their finite Grassmann extensions
//! `Λ_F[η₁..η_m]`, used as the base superalgebra.

mod field;
mod grassmann;

pub use field::{FieldElem, FieldSpec};
pub use grassmann::{GrassmannElement, Parity, RingSpec, Scalar, MAX_GENERATORS};

pub(crate) use grassmann::{join_signed, merge_is_negative, render_signed_term};

#[cfg(test)]
pub(crate) mod strategies {
    use proptest::prelude::*;

    use super::*;

    /// Random element of `Λ_Q[η₁..η_m]` with small integer coefficients.
    pub fn grassmann(m: usize) -> impl Strategy<Value = Scalar> {
        let ring = RingSpec::grassmann(FieldSpec::Rationals, m).unwrap();
        let masks = 1u16 << m;
        prop::collection::vec((0..masks, -3i64..=3), 0..6).prop_map(move |terms| {
            let mut s = Scalar::zero(ring);
            for (mask, c) in terms {
                s = &s + &Scalar::term(ring, mask, FieldElem::from_i64(ring.field, c)).unwrap();
            }
            s
        })
    }

    pub fn homogeneous(m: usize, parity: Parity) -> impl Strategy<Value = Scalar> {
        grassmann(m).prop_map(move |s| {
            let mut out = Scalar::zero(s.ring());
            for (mask, c) in s.terms() {
                if Parity::from_degree(mask.count_ones() as usize) == parity {
                    out.add_term(mask, c.clone());
                }
            }
            out
        })
    }
}
