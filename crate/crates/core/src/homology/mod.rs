//! Strand-by-strand homology of the complexes in [`crate::complex`].

mod elim;

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::coeff::{FieldElem, Parity, RingSpec, Scalar};
use crate::complex::{ComplexKind, ComplexSpec, StrandKey};
use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;
use crate::superalg::SuperPoly;

pub use elim::{dense_to_row, rank, rank_and_kernel, row_to_dense, solve, Echelon, Row};

fn as_strings<S: Serializer>(polys: &[SuperPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(polys.iter().map(ToString::to_string))
}

/// Homology of one `(strand, i)` component.
#[derive(Debug, Clone, Serialize)]
pub struct StrandHomology {
    pub strand: StrandKey,
    pub i: usize,
    pub dim: usize,
    pub dim_ker: usize,
    pub dim_im_in: usize,
    pub dim_h: usize,
    /// Cycles whose classes form a basis of `H_i`.
    #[serde(serialize_with = "as_strings")]
    pub generators: Vec<SuperPoly>,
}

/// A nonzero homology class.
#[derive(Debug, Clone, Serialize)]
pub struct ClassRecord {
    pub strand: StrandKey,
    pub i: usize,
    pub generator: String,
    pub parity: Option<Parity>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomologyReport {
    pub complex: ComplexKind,
    pub ring: RingSpec,
    pub records: Vec<StrandHomology>,
    pub classes: Vec<ClassRecord>,
}

impl HomologyReport {
    pub fn total_dim(&self) -> usize {
        self.records.iter().map(|r| r.dim_h).sum()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{:?} over {}\n", self.complex, self.ring);
        for r in self.records.iter().filter(|r| r.dim > 0) {
            out.push_str(&format!(
                "  strand {} i={}: dim {} ker {} im {} H {}\n",
                r.strand, r.i, r.dim, r.dim_ker, r.dim_im_in, r.dim_h
            ));
        }
        for c in &self.classes {
            out.push_str(&format!(
                "  class at {} i={}: {}\n",
                c.strand, c.i, c.generator
            ));
        }
        out
    }
}

fn column_rows(m: &SparseMatrix) -> Vec<Row> {
    (0..m.cols()).map(|j| m.column(j).to_vec()).collect()
}

/// Homology at `(key, i)`, with `δ² = 0` checked on the way in.
pub fn strand_homology(spec: &ComplexSpec, key: StrandKey, i: usize) -> Result<StrandHomology> {
    let out = spec.differential_matrix(key, i)?;
    let dim = out.domain.dim();
    let incoming = match spec.differential_step().source(i) {
        Some(s) => Some(spec.differential_matrix(key, s)?),
        None => None,
    };
    if let Some(inc) = &incoming {
        if !out.matrix.mul(&inc.matrix).is_zero() {
            return Err(Error::NotNilpotent(format!("{key} i={i}")));
        }
    }
    let (rank_out, kernel) = rank_and_kernel(&out.matrix);
    let mut image = match &incoming {
        Some(inc) => Echelon::from_rows(spec.ring.field, dim, column_rows(&inc.matrix)),
        None => Echelon::new(spec.ring.field, dim),
    };
    let dim_im_in = image.rank();
    let mut generators = Vec::new();
    for v in &kernel {
        if let Some(rep) = image.insert(&dense_to_row(v)) {
            let coords = row_to_dense(spec.ring.field, dim, &rep);
            generators.push(out.domain.to_poly(&coords, spec.ring));
        }
    }
    let dim_h = dim - rank_out - dim_im_in;
    debug_assert_eq!(generators.len(), dim_h);
    Ok(StrandHomology {
        strand: key,
        i,
        dim,
        dim_ker: dim - rank_out,
        dim_im_in,
        dim_h,
        generators,
    })
}

pub fn homology_dims(
    spec: &ComplexSpec,
    key: StrandKey,
    range: RangeInclusive<usize>,
) -> Result<Vec<StrandHomology>> {
    range.map(|i| strand_homology(spec, key, i)).collect()
}

/// Homology over every degree of every listed strand, computed in parallel
/// and reported in key order.
pub fn sweep(spec: &ComplexSpec, keys: &[StrandKey]) -> Result<HomologyReport> {
    let mut keys = keys.to_vec();
    keys.sort();
    keys.dedup();
    let per_key: Vec<Vec<StrandHomology>> = keys
        .par_iter()
        .map(|&k| homology_dims(spec, k, spec.degree_range(k)))
        .collect::<Result<_>>()?;
    let records: Vec<StrandHomology> = per_key.into_iter().flatten().collect();
    let classes = records
        .iter()
        .flat_map(|r| {
            r.generators.iter().map(move |g| ClassRecord {
                strand: r.strand,
                i: r.i,
                generator: g.to_string(),
                parity: g.parity(),
            })
        })
        .collect();
    Ok(HomologyReport {
        complex: spec.kind,
        ring: spec.ring,
        records,
        classes,
    })
}

/// The field `c` with `cycle = c·generator + boundary·τ`, all given as
/// coordinates on one strand component.
pub fn coefficient_in_component(
    cycle: &[FieldElem],
    generator: &[FieldElem],
    boundary: &SparseMatrix,
) -> Result<FieldElem> {
    let field = boundary.field();
    let mut cols: Vec<Vec<FieldElem>> = vec![generator.to_vec()];
    cols.extend(
        (0..boundary.cols())
            .map(|j| row_to_dense(field, boundary.rows(), &boundary.column(j).to_vec())),
    );
    let system = SparseMatrix::from_dense_columns(field, generator.len(), cols);
    let x = solve(&system, cycle).ok_or(Error::NoSolution)?;
    Ok(x[0].clone())
}

/// Split a polynomial into its `(strand, i)` components.
fn by_component(spec: &ComplexSpec, f: &SuperPoly) -> BTreeMap<(StrandKey, usize), SuperPoly> {
    let mut out: BTreeMap<(StrandKey, usize), SuperPoly> = BTreeMap::new();
    for (m, c) in f.terms() {
        let t = SuperPoly::term(f.registry().clone(), m.clone(), c.clone());
        let slot = out
            .entry(spec.strand_of(m))
            .or_insert_with(|| SuperPoly::zero(f.registry().clone(), f.ring()));
        *slot = &*slot + &t;
    }
    out
}

/// The scalar `c` (possibly Grassmann) with `cycle = c·generator + δ(τ)`.
///
/// `generator` must be a ground-field cycle on a single component whose
/// class is nonzero. The cycle is split by Grassmann monomial and by
/// component; components away from the generator must be boundaries.
pub fn class_coefficient(
    spec: &ComplexSpec,
    cycle: &SuperPoly,
    generator: &SuperPoly,
) -> Result<Scalar> {
    let ground = cycle.ring().ground();
    let gen_parts = by_component(spec, generator);
    let [(gen_slot, gen_poly)]: [((StrandKey, usize), SuperPoly); 1] = gen_parts
        .into_iter()
        .collect::<Vec<_>>()
        .try_into()
        .map_err(|_| Error::InvalidArgument("generator must lie in one strand component".into()))?;
    let gen_poly = if gen_poly.ring() == ground {
        gen_poly
    } else {
        let g = gen_poly.grassmann_component(0);
        if (&gen_poly - &g.extend_ring(gen_poly.ring())?).is_zero() {
            g
        } else {
            return Err(Error::NonFieldEntry(gen_poly.to_string()));
        }
    };
    let field_spec = spec.with_ring(ground);
    let mut result = Scalar::zero(cycle.ring());
    for mask in cycle.grassmann_masks() {
        let part = cycle.grassmann_component(mask);
        for ((key, i), comp) in by_component(&field_spec, &part) {
            if comp.is_zero() {
                continue;
            }
            let basis = field_spec.enumerate_strand(key, i);
            let coords = basis.coordinates(&comp)?;
            let boundary = match field_spec.differential_step().source(i) {
                Some(s) => field_spec.differential_matrix(key, s)?.matrix,
                None => SparseMatrix::zero(ground.field, basis.dim(), 0),
            };
            let gen_coords = if (key, i) == gen_slot {
                basis.coordinates(&gen_poly)?
            } else {
                vec![FieldElem::zero(ground.field); basis.dim()]
            };
            let c = coefficient_in_component(&coords, &gen_coords, &boundary)?;
            if !c.is_zero() {
                result = &result + &Scalar::term(cycle.ring(), mask, c)?;
            }
        }
    }
    Ok(result)
}
