//! JSON literal for supermatrices. Each entry is a list of terms
//! `[coefficient, [generator indices]]`, e.g. `[["2", []], ["-1/2", [1, 3]]]`
//! for `2 − ½·e1·e3`.

use serde::{Deserialize, Serialize};

use super::{GMatrix, SuperMatrix};
use crate::coeff::{FieldElem, RingSpec, Scalar};
use crate::error::{Error, Result};

pub type EntryLiteral = Vec<(String, Vec<usize>)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperMatrixLiteral {
    pub ring: RingSpec,
    #[serde(rename = "A")]
    pub a: Vec<Vec<EntryLiteral>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<EntryLiteral>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<EntryLiteral>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<EntryLiteral>>,
}

fn entry_to_scalar(ring: RingSpec, terms: &EntryLiteral) -> Result<Scalar> {
    let mut out = Scalar::zero(ring);
    for (coeff, gens) in terms {
        let mut t = Scalar::from_field(ring, FieldElem::parse(ring.field, coeff)?);
        for &k in gens {
            t = t.checked_mul(&Scalar::generator(ring, k)?)?;
        }
        out = out.checked_add(&t)?;
    }
    Ok(out)
}

fn scalar_to_entry(s: &Scalar) -> EntryLiteral {
    s.terms()
        .map(|(mask, c)| {
            let gens = (0..16)
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| k + 1)
                .collect();
            (c.to_string(), gens)
        })
        .collect()
}

fn block(
    ring: RingSpec,
    rows: &[Vec<EntryLiteral>],
    expect: (usize, usize),
    name: &str,
) -> Result<GMatrix> {
    if rows.len() != expect.0 || rows.iter().any(|r| r.len() != expect.1) {
        return Err(Error::InvalidSupermatrix(format!(
            "block {name} must be {}x{}",
            expect.0, expect.1
        )));
    }
    let parsed = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| entry_to_scalar(ring, e))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GMatrix::from_rows(ring, expect.1, parsed)
}

fn unblock(m: &GMatrix) -> Vec<Vec<EntryLiteral>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(scalar_to_entry).collect())
        .collect()
}

impl SuperMatrixLiteral {
    pub fn to_matrix(&self) -> Result<SuperMatrix> {
        let p = self.a.len();
        let q = self.d.len();
        SuperMatrix::new(
            block(self.ring, &self.a, (p, p), "A")?,
            block(self.ring, &self.b, (p, q), "B")?,
            block(self.ring, &self.c, (q, p), "C")?,
            block(self.ring, &self.d, (q, q), "D")?,
        )
    }
}

impl From<&SuperMatrix> for SuperMatrixLiteral {
    fn from(m: &SuperMatrix) -> Self {
        let (a, b, c, d) = m.blocks();
        SuperMatrixLiteral {
            ring: m.ring(),
            a: unblock(a),
            b: unblock(b),
            c: unblock(c),
            d: unblock(d),
        }
    }
}

impl SuperMatrix {
    pub fn from_json(text: &str) -> Result<SuperMatrix> {
        let lit: SuperMatrixLiteral =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        lit.to_matrix()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SuperMatrixLiteral::from(self)).expect("literal serializes")
    }
}
