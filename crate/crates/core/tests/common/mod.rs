//! Independent oracles for the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use superkoszul::coeff::{FieldElem, GrassmannElement, RingSpec, Scalar};
use superkoszul::sparse::SparseMatrix;

/// Rank by fraction-free (Bareiss) elimination over the integers after
/// clearing row denominators, or by plain `u64` elimination mod `p`.
pub fn dense_rank(m: &SparseMatrix) -> usize {
    let dense = m.to_dense();
    if dense.is_empty() || dense[0].is_empty() {
        return 0;
    }
    match &dense[0][0] {
        FieldElem::Rational(_) => bareiss_rank(integer_rows(&dense)),
        FieldElem::Modular { prime, .. } => modular_rank(&dense, *prime),
    }
}

fn integer_rows(dense: &[Vec<FieldElem>]) -> Vec<Vec<BigInt>> {
    dense
        .iter()
        .map(|row| {
            let rats: Vec<_> = row
                .iter()
                .map(|v| match v {
                    FieldElem::Rational(r) => r.clone(),
                    _ => unreachable!("mixed fields"),
                })
                .collect();
            let mut lcm = BigInt::one();
            for r in &rats {
                let d = r.denom().clone();
                let g = gcd(lcm.clone(), d.clone());
                lcm = lcm * d / g;
            }
            rats.iter().map(|r| (r * &lcm).to_integer()).collect()
        })
        .collect()
}

fn gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    while !b.is_zero() {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

fn modular_rank(dense: &[Vec<FieldElem>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = dense
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| match v {
                    FieldElem::Modular { value, .. } => *value,
                    _ => unreachable!("mixed fields"),
                })
                .collect()
        })
        .collect();
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let (rows, cols) = (a.len(), a[0].len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow(a[rank][col], p - 2);
        for r in rank + 1..rows {
            let f = a[r][col] * inv % p;
            let pivot_row = a[rank].clone();
            for (x, y) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// `Σ_σ sign(σ) Π a_{i,σ(i)}` over all permutations.
pub fn permutation_det(ring: RingSpec, a: &[Vec<GrassmannElement>]) -> Scalar {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Scalar::zero(ring);
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = Scalar::one(ring);
        for (i, &j) in p.iter().enumerate() {
            term = &term * &a[i][j];
        }
        total = if inversions % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}
