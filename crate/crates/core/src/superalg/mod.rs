//! Supercommutative polynomials under the Koszul sign rule, with left partial
//! derivatives.

mod monomial;
mod poly;
mod registry;
mod text;

pub use monomial::Monomial;
pub use poly::SuperPoly;
pub use registry::{Factor, VarId, VarRegistry, Variable};

use crate::coeff::Parity;

/// Product of two monomials: `(sign, product)` with sign `±1`, or `(0, 1)`
/// when an odd variable repeats.
pub fn mono_mul(a: &Monomial, b: &Monomial, registry: &VarRegistry) -> (i8, Monomial) {
    match a.mul(b) {
        Some((negative, m)) => (if negative { -1 } else { 1 }, m),
        None => (0, Monomial::one(registry)),
    }
}

pub fn parity_of(m: &Monomial) -> Parity {
    m.parity()
}

#[cfg(test)]
pub(crate) mod strategies {
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;
    use crate::coeff::{FieldElem, FieldSpec, RingSpec, Scalar};

    pub fn ring() -> RingSpec {
        RingSpec::grassmann(FieldSpec::Rationals, 3).unwrap()
    }

    /// Random polynomial over `registry`, homogeneous of the given total
    /// parity (coefficient parity plus monomial parity).
    pub fn homogeneous_poly(
        registry: Arc<VarRegistry>,
        parity: Parity,
    ) -> impl Strategy<Value = SuperPoly> {
        let n_even = registry.n_even();
        let n_odd = registry.n_odd();
        let term = (
            prop::collection::vec(0u32..3, n_even),
            0u64..(1 << n_odd),
            0u16..8,
            -3i64..=3,
        );
        prop::collection::vec(term, 0..5).prop_map(move |terms| {
            let ring = ring();
            let mut p = SuperPoly::zero(registry.clone(), ring);
            for (even, odd, mut mask, c) in terms {
                let mono = Monomial::from_parts(even, odd);
                let want = parity + mono.parity();
                if Parity::from_degree(mask.count_ones() as usize) != want {
                    mask ^= 1;
                }
                let s = Scalar::term(ring, mask, FieldElem::from_i64(ring.field, c)).unwrap();
                p = &p + &SuperPoly::term(registry.clone(), mono, s);
            }
            p
        })
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::strategies::*;
    use super::*;
    use crate::coeff::{FieldSpec, RingSpec, Scalar};
    use crate::error::Error;

    fn sk22() -> Arc<VarRegistry> {
        Arc::new(VarRegistry::super_koszul(2, 2))
    }

    fn q() -> RingSpec {
        RingSpec::rationals()
    }

    fn p(reg: &Arc<VarRegistry>, s: &str) -> SuperPoly {
        SuperPoly::parse(reg, q(), s).unwrap()
    }

    #[test]
    fn mono_mul_examples() {
        let reg = VarRegistry::super_koszul(1, 2);
        let m = |names: &[&str]| {
            let r = Arc::new(reg.clone());
            let poly = SuperPoly::parse(&r, q(), &names.join("*")).unwrap();
            let first = poly.terms().next().unwrap().0.clone();
            first
        };
        assert_eq!(mono_mul(&m(&["th1"]), &m(&["th2"]), &reg).0, 1);
        assert_eq!(mono_mul(&m(&["th2"]), &m(&["th1"]), &reg).0, -1);
        assert_eq!(mono_mul(&m(&["th1"]), &m(&["th1"]), &reg).0, 0);
        let (sign, prod) = mono_mul(&m(&["x1", "th2"]), &m(&["x1", "th1"]), &reg);
        assert_eq!(sign, -1);
        assert_eq!(prod.render(&reg), "x1^2*th1*th2");
    }

    #[test]
    fn partial_examples() {
        let reg = sk22();
        let f = p(&reg, "th1*th2");
        assert_eq!(f.partial_named("th1").unwrap(), p(&reg, "th2"));
        assert_eq!(f.partial_named("th2").unwrap(), p(&reg, "-th1"));
        let g = p(&reg, "x1^2*th1");
        assert_eq!(g.partial_named("x1").unwrap(), p(&reg, "2*x1*th1"));
        assert_eq!(
            g.partial_named("zz"),
            Err(Error::UnknownVariable("zz".into()))
        );
    }

    #[test]
    fn euler_examples() {
        let reg = sk22();
        let f = p(&reg, "x1^2*th1");
        assert_eq!(f.euler(&[Factor::R]), p(&reg, "3*x1^2*th1"));
        assert!(p(&reg, "1").euler(&[Factor::R]).is_zero());
        let g = p(&reg, "x1*l1*ch1");
        assert_eq!(g.euler(&[Factor::RPi]), p(&reg, "2*x1*l1*ch1"));
    }

    #[test]
    fn parity_examples() {
        let reg = sk22();
        let mono = |s: &str| {
            let f = p(&reg, s);
            let first = f.terms().next().unwrap().0.clone();
            first
        };
        assert_eq!(parity_of(&mono("th1*th2")), Parity::Even);
        assert_eq!(parity_of(&mono("x1*th1")), Parity::Odd);
        assert_eq!(parity_of(&mono("1")), Parity::Even);
    }

    #[test]
    fn render_and_parse() {
        let reg = sk22();
        let f = p(&reg, "2*x1^2*th1*ch2 - l1");
        assert_eq!(f.to_string(), "-l1 + 2*x1^2*th1*ch2");
        assert_eq!(p(&reg, &f.to_string()), f);
        // odd factors written out of order are normalized with their sign
        assert_eq!(p(&reg, "ch1*th1"), p(&reg, "-th1*ch1"));
        assert!(p(&reg, "th1^2").is_zero());
        assert!(SuperPoly::parse(&reg, q(), "x1 +").is_err());
        assert!(SuperPoly::parse(&reg, q(), "foo").is_err());
    }

    #[test]
    fn grassmann_coefficients_render_parenthesized() {
        let reg = sk22();
        let ring = RingSpec::grassmann(FieldSpec::Rationals, 2).unwrap();
        let f = SuperPoly::parse(&reg, ring, "(1 + e1*e2)*x1 + e1*th1").unwrap();
        assert_eq!(SuperPoly::parse(&reg, ring, &f.to_string()).unwrap(), f);
        // th1 * e1 = -e1 * th1
        let g = SuperPoly::parse(&reg, ring, "th1*e1").unwrap();
        let e1 = Scalar::generator(ring, 1).unwrap();
        assert_eq!(
            g,
            SuperPoly::var_named(reg.clone(), ring, "th1")
                .unwrap()
                .scale(&-e1)
        );
    }

    #[test]
    fn registry_mismatch_detected() {
        let a = p(&sk22(), "x1");
        let other = Arc::new(VarRegistry::classical(2));
        let b = SuperPoly::parse(&other, q(), "x1").unwrap();
        assert_eq!(a.checked_mul(&b), Err(Error::RegistryMismatch));
    }

    /// All monomials of total degree ≤ `max` over the registry.
    fn all_monomials(reg: &VarRegistry, max: u32) -> Vec<Monomial> {
        fn rec(slot: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if slot == cur.len() {
                out.push(cur.clone());
                return;
            }
            for e in 0..=left {
                cur[slot] = e;
                rec(slot + 1, left - e, cur, out);
            }
            cur[slot] = 0;
        }
        let mut evens = Vec::new();
        rec(0, max, &mut vec![0; reg.n_even()], &mut evens);
        let mut out = Vec::new();
        for e in evens {
            for odd in 0..(1u64 << reg.n_odd()) {
                let m = Monomial::from_parts(e.clone(), odd);
                if m.degree() <= max {
                    out.push(m);
                }
            }
        }
        out
    }

    #[test]
    fn euler_counts_degree_exhaustively() {
        let reg = sk22();
        let r_vars: Vec<VarId> = reg
            .ids()
            .filter(|&v| reg.var(v).factor == Factor::R)
            .collect();
        let pi_vars: Vec<VarId> = reg
            .ids()
            .filter(|&v| reg.var(v).factor == Factor::RPi)
            .collect();
        let monos = all_monomials(&reg, 5);
        assert!(monos.len() > 500);
        for m in monos {
            let f = SuperPoly::term(reg.clone(), m.clone(), Scalar::one(q()));
            let dr = m.degree_in(&reg, &r_vars) as i64;
            let dpi = m.degree_in(&reg, &pi_vars) as i64;
            let scaled = |d: i64| f.scale(&Scalar::from_i64(q(), d));
            assert_eq!(f.euler(&[Factor::R]), scaled(dr));
            assert_eq!(f.euler(&[Factor::RPi]), scaled(dpi));
            assert_eq!(f.euler(&[Factor::R, Factor::RPi]), scaled(dr + dpi));
        }
    }

    fn parity() -> impl Strategy<Value = Parity> {
        prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
    }

    fn pair() -> impl Strategy<Value = (Parity, Parity, SuperPoly, SuperPoly)> {
        (parity(), parity()).prop_flat_map(|(a, b)| {
            (
                Just(a),
                Just(b),
                homogeneous_poly(sk22(), a),
                homogeneous_poly(sk22(), b),
            )
        })
    }

    proptest! {
        #[test]
        fn poly_supercommutative((pa, pb, f, g) in pair()) {
            let fg = &f * &g;
            let gf = &g * &f;
            if pa.is_odd() && pb.is_odd() {
                prop_assert_eq!(fg, -gf);
            } else {
                prop_assert_eq!(fg, gf);
            }
        }

        #[test]
        fn odd_partials_anticommute(f in homogeneous_poly(sk22(), Parity::Even), u in 0usize..4, v in 0usize..4) {
            let reg = sk22();
            let odds = reg.odd_ids();
            let (u, v) = (odds[u], odds[v]);
            if u != v {
                prop_assert_eq!(f.partial(u).partial(v), -f.partial(v).partial(u));
            }
            let evens = reg.even_ids();
            let (a, b) = (evens[0], evens[3]);
            prop_assert_eq!(f.partial(a).partial(b), f.partial(b).partial(a));
        }

        #[test]
        fn left_leibniz((pf, _pg, f, g) in pair(), which in 0usize..8) {
            let reg = sk22();
            let v = reg.ids().nth(which).unwrap();
            let vp = reg.var(v).parity;
            let lhs = (&f * &g).partial(v);
            let second = &f * &g.partial(v);
            let rhs = if vp.is_odd() && pf.is_odd() {
                &(&f.partial(v) * &g) - &second
            } else {
                &(&f.partial(v) * &g) + &second
            };
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn render_parse_round_trip(f in homogeneous_poly(sk22(), Parity::Odd)) {
            let back = SuperPoly::parse(f.registry(), f.ring(), &f.to_string()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
