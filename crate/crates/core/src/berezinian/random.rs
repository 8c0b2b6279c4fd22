use rand::seq::SliceRandom;
use rand::Rng;

use super::{GMatrix, SuperMatrix};
use crate::coeff::{FieldElem, Parity, RingSpec, Scalar};
use crate::error::Result;

/// Up to two random Grassmann terms of the given parity with small nonzero
/// coefficients; a body is never included.
fn random_soul<R: Rng>(ring: RingSpec, parity: Parity, rng: &mut R) -> Scalar {
    let m = ring.generators();
    let masks: Vec<u16> = (1u16..(1 << m))
        .filter(|mask| Parity::from_degree(mask.count_ones() as usize) == parity)
        .collect();
    let mut out = Scalar::zero(ring);
    if masks.is_empty() {
        return out;
    }
    for _ in 0..rng.gen_range(0..=2) {
        let mask = *masks.choose(rng).expect("nonempty");
        let c = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
        let t =
            Scalar::term(ring, mask, FieldElem::from_i64(ring.field, c)).expect("mask within ring");
        out = &out + &t;
    }
    out
}

fn random_even_block<R: Rng>(ring: RingSpec, n: usize, rng: &mut R) -> Result<GMatrix> {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let body = Scalar::from_i64(ring, rng.gen_range(-3..=3));
                        &body + &random_soul(ring, Parity::Even, rng)
                    })
                    .collect()
            })
            .collect();
        let m = GMatrix::from_rows(ring, n, rows)?;
        if !m.even_det()?.body().is_zero() {
            return Ok(m);
        }
    }
}

fn random_odd_block<R: Rng>(ring: RingSpec, r: usize, c: usize, rng: &mut R) -> Result<GMatrix> {
    let rows = (0..r)
        .map(|_| {
            (0..c)
                .map(|_| random_soul(ring, Parity::Odd, rng))
                .collect()
        })
        .collect();
    GMatrix::from_rows(ring, c, rows)
}

/// Random invertible `p|q` supermatrix: integer bodies for `A` and `D`,
/// rejected until their determinants are nonzero in the field, plus random
/// souls and odd blocks.
pub fn random_invertible<R: Rng>(
    ring: RingSpec,
    p: usize,
    q: usize,
    rng: &mut R,
) -> Result<SuperMatrix> {
    let a = random_even_block(ring, p, rng)?;
    let b = random_odd_block(ring, p, q, rng)?;
    let c = random_odd_block(ring, q, p, rng)?;
    let d = random_even_block(ring, q, rng)?;
    SuperMatrix::new(a, b, c, d)
}
