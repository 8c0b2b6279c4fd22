//! Acceptance gate. Prints one PASS/FAIL line per criterion straight to the
//! terminal (bypassing test output capture), then fails if any criterion
//! failed.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superkoszul::berezinian::{
    induced_action_on_generator, random_invertible, GMatrix, SuperMatrix,
};
use superkoszul::coeff::{FieldSpec, RingSpec, Scalar};
use superkoszul::commands::{cmd_classical, cmd_koszul_verify, dual_verify, RunConfig};
use superkoszul::complex::{ComplexSpec, StrandKey};
use superkoszul::homology::{rank_and_kernel, solve, strand_homology};
use superkoszul::verify::{commutator_identity, homotopy_identity};

const SHAPES: [(usize, usize); 7] = [(1, 0), (0, 1), (2, 0), (1, 1), (2, 1), (1, 2), (2, 2)];
const WINDOW: i64 = 6;
/// Every `(p, q) ≤ (2, 2)`.
const HOMOTOPY_SHAPES: [(usize, usize); 9] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (1, 0),
    (1, 1),
    (1, 2),
    (2, 0),
    (2, 1),
    (2, 2),
];
const KOSZUL_BUDGET: Duration = Duration::from_secs(60);
const BER_BUDGET: Duration = Duration::from_secs(120);
const BER_TRIALS: usize = 100;
const CLASSICAL_MAX_DEGREE: i64 = 5;
const ORACLE_MAX_COLS: usize = 12;
const SEED: u64 = 0;

type Outcome = Result<String, String>;

fn q() -> RingSpec {
    RingSpec::rationals()
}

fn grassmann4() -> RingSpec {
    RingSpec::grassmann(FieldSpec::Rationals, 4).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn dual_box(p: usize, q: usize) -> Vec<StrandKey> {
    let (p, q) = (p as i64, q as i64);
    let mut keys = Vec::new();
    for m1 in -p - 2..=2 {
        for m2 in q - 2..=q {
            keys.push(StrandKey::new(m1, m2));
        }
    }
    keys
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for (p, qq) in SHAPES {
        let cfg = RunConfig {
            p,
            q: qq,
            ring: q(),
            window: WINDOW,
            ..RunConfig::default()
        };
        let report = cmd_koszul_verify(&cfg);
        ensure(
            report.passed,
            format!("K({p},{qq}): {}", report.to_text().trim()),
        )?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < KOSZUL_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!(
        "7 shapes exact up to W={WINDOW} in {:.2?}",
        elapsed
    ))
}

fn criterion_2() -> Outcome {
    for (p, qq) in SHAPES {
        let (checks, _) = dual_verify(p, qq, q(), &dual_box(p, qq)).map_err(|e| e.to_string())?;
        for c in checks {
            ensure(c.passed, format!("K*({p},{qq}) {}: {}", c.name, c.message))?;
        }
    }
    Ok("single class D at i=p, strand (-p,q), parity (p+q) mod 2 for all 7 shapes".into())
}

fn criterion_3() -> Outcome {
    let mut components = 0;
    let mut monomials = 0;
    for (p, qq) in HOMOTOPY_SHAPES {
        let spec = ComplexSpec::super_koszul(p, qq, q());
        let keys = spec.strands_in_window(WINDOW);
        let h = homotopy_identity(&spec, &keys).map_err(|e| e.to_string())?;
        ensure(h.passed(), format!("K({p},{qq}) hδ+δh: {:?}", h.failures))?;
        let c = commutator_identity(&spec, &keys, None).map_err(|e| e.to_string())?;
        ensure(c.passed(), format!("K({p},{qq}) δε+εδ: {:?}", c.failures))?;
        components += h.checked;
        monomials += c.checked;
    }
    Ok(format!(
        "hδ+δh = id on {components} strand components, δε+εδ = (k+i)·id on {monomials} monomials"
    ))
}

fn criterion_4() -> Outcome {
    for n in 1..=3 {
        let cfg = RunConfig {
            n,
            ring: q(),
            window: CLASSICAL_MAX_DEGREE,
            ..RunConfig::default()
        };
        let report = cmd_classical(&cfg);
        ensure(report.passed, format!("N={n}: {}", report.to_text().trim()))?;
    }
    Ok(format!(
        "N=1,2,3 concentrated in degree N; homotopy identity up to degree {CLASSICAL_MAX_DEGREE}"
    ))
}

fn criterion_5() -> Outcome {
    let key = StrandKey::new(0, 3);
    let f3 = RingSpec::field(FieldSpec::prime(3).unwrap());
    let spec = ComplexSpec::super_koszul(1, 1, f3);
    let cycle = spec.parse("th1*l1^2").map_err(|e| e.to_string())?;
    ensure(
        spec.apply_delta(&cycle).unwrap().is_zero(),
        "θ₁ℓ₁² is not a cycle over F3",
    )?;
    let basis = spec.enumerate_strand(key, 2);
    let incoming = spec.differential_matrix(key, 3).unwrap();
    let coords = basis.coordinates(&cycle).unwrap();
    ensure(
        solve(&incoming.matrix, &coords).is_none(),
        "θ₁ℓ₁² is a boundary over F3",
    )?;
    let h = strand_homology(&spec, key, 2).unwrap();
    ensure(h.dim_h >= 1, format!("dim H2 over F3 = {}", h.dim_h))?;
    let over_q = strand_homology(&spec.with_ring(q()), key, 2).unwrap();
    ensure(
        over_q.dim_h == 0,
        format!("dim H2 over Q = {}", over_q.dim_h),
    )?;
    Ok(format!("dim H2 = {} over F3, 0 over Q", h.dim_h))
}

fn trial_shape(t: usize) -> (usize, usize) {
    (t % 3, (t / 3) % 3)
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut hits = 0;
    for t in 0..BER_TRIALS {
        let (p, qq) = trial_shape(t);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + t as u64);
        let m = random_invertible(grassmann4(), p, qq, &mut rng).unwrap();
        let action = induced_action_on_generator(&m).map_err(|e| format!("trial {t}: {e}"))?;
        if action == m.ber().unwrap().inverse().unwrap() {
            hits += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(
        hits == BER_TRIALS,
        format!("{hits}/{BER_TRIALS} exact matches"),
    )?;
    ensure(elapsed < BER_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!(
        "{hits}/{BER_TRIALS} exact matches, p,q ≤ 2, in {:.2?}",
        elapsed
    ))
}

fn criterion_7() -> Outcome {
    let ring = grassmann4();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for t in 0..BER_TRIALS {
        let (p, qq) = trial_shape(t);
        let m1 = random_invertible(ring, p, qq, &mut rng).unwrap();
        let m2 = random_invertible(ring, p, qq, &mut rng).unwrap();
        let lhs = m1.mul(&m2).ber().unwrap();
        ensure(
            lhs == &m1.ber().unwrap() * &m2.ber().unwrap(),
            format!("multiplicativity fails on pair {t}"),
        )?;
        let (u, k, l) = m1.decompose_udl().unwrap();
        ensure(
            u.mul(&k).mul(&l) == m1,
            format!("UDL does not reconstruct trial {t}"),
        )?;
    }
    for (p, qq) in HOMOTOPY_SHAPES {
        ensure(
            SuperMatrix::identity(ring, p, qq).ber().unwrap().is_one(),
            "ber(I) ≠ 1",
        )?;
        let full = random_invertible(ring, p, qq, &mut rng).unwrap();
        let (a, _, _, d) = full.blocks();
        let diag = SuperMatrix::block_diagonal(a.clone(), d.clone()).unwrap();
        let expected = &a.even_det().unwrap() * &d.even_det().unwrap().inverse().unwrap();
        ensure(
            diag.ber().unwrap() == expected,
            format!("ber(diag(A,D)) wrong for {p}|{qq}"),
        )?;
    }
    Ok(format!(
        "multiplicative on {BER_TRIALS} pairs, UDL exact, ber(I)=1, ber(diag(A,D)) = det A / det D"
    ))
}

/// Every differential matrix with at most 12 columns from criteria 1-5.
fn oracle_matrices() -> Vec<(String, superkoszul::sparse::SparseMatrix)> {
    let mut out = Vec::new();
    let mut add = |spec: &ComplexSpec, keys: &[StrandKey]| {
        for &key in keys {
            for i in spec.degree_range(key) {
                let m = spec.differential_matrix(key, i).unwrap().matrix;
                if m.cols() <= ORACLE_MAX_COLS {
                    out.push((format!("{:?} {key} i={i}", spec.kind), m));
                }
            }
        }
    };
    for (p, qq) in HOMOTOPY_SHAPES {
        let sk = ComplexSpec::super_koszul(p, qq, q());
        add(&sk, &sk.strands_in_window(WINDOW));
    }
    for (p, qq) in SHAPES {
        add(
            &ComplexSpec::dual_super_koszul(p, qq, q()),
            &dual_box(p, qq),
        );
    }
    for n in 1..=3 {
        let c = ComplexSpec::classical(n, q());
        add(&c, &c.strands_in_window(CLASSICAL_MAX_DEGREE));
    }
    let f3 = RingSpec::field(FieldSpec::prime(3).unwrap());
    let key = [StrandKey::new(0, 3)];
    add(&ComplexSpec::super_koszul(1, 1, f3), &key);
    out
}

fn random_even(ring: RingSpec, rng: &mut ChaCha8Rng) -> Scalar {
    let mut s = Scalar::from_i64(ring, rng.gen_range(-3..=3));
    for _ in 0..2 {
        let mask = [3u16, 5, 6, 9, 10, 12, 15][rng.gen_range(0..7)];
        let c = superkoszul::coeff::FieldElem::from_i64(ring.field, rng.gen_range(-2..=2));
        s = &s + &Scalar::term(ring, mask, c).unwrap();
    }
    s
}

fn criterion_8() -> Outcome {
    let matrices = oracle_matrices();
    for (label, m) in &matrices {
        let (rank, kernel) = rank_and_kernel(m);
        let expected = common::dense_rank(m);
        ensure(
            rank == expected,
            format!("{label}: rank {rank}, oracle {expected}"),
        )?;
        ensure(
            rank + kernel.len() == m.cols(),
            format!("{label}: rank-nullity"),
        )?;
        for v in &kernel {
            ensure(
                m.apply(v).iter().all(|x| x.is_zero()),
                format!("{label}: kernel vector not annihilated"),
            )?;
        }
    }
    let ring = grassmann4();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut dets = 0;
    for n in 1..=4 {
        for _ in 0..25 {
            let rows: Vec<Vec<Scalar>> = (0..n)
                .map(|_| (0..n).map(|_| random_even(ring, &mut rng)).collect())
                .collect();
            let g = GMatrix::from_rows(ring, n, rows.clone()).unwrap();
            ensure(
                g.even_det().unwrap() == common::permutation_det(ring, &rows),
                format!("even_det disagrees with permutation sum at size {n}"),
            )?;
            dets += 1;
        }
    }
    Ok(format!(
        "{} matrices match the dense oracle, {dets} determinants match the permutation sum",
        matrices.len()
    ))
}

fn report(n: usize, outcome: &Outcome) {
    let line = match outcome {
        Ok(msg) => format!("acceptance criterion {n}: PASS  {msg}\n"),
        Err(msg) => format!("acceptance criterion {n}: FAIL  {msg}\n"),
    };
    let mut err = std::io::stderr().lock();
    let _ = err.write_all(line.as_bytes());
}

#[test]
fn acceptance() {
    let criteria: [fn() -> Outcome; 8] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
    ];
    let mut failed = Vec::new();
    for (k, run) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        report(k + 1, &outcome);
        if outcome.is_err() {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
