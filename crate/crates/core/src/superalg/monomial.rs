use std::cmp::Ordering;

use crate::coeff::{merge_is_negative, Parity};

use super::registry::{VarId, VarRegistry};

/// Normal-form supercommutative monomial: even exponents times the odd
/// variables of `odd` in ascending registry order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    even: Vec<u32>,
    odd: u64,
}

impl Monomial {
    pub fn one(registry: &VarRegistry) -> Self {
        Monomial {
            even: vec![0; registry.n_even()],
            odd: 0,
        }
    }

    pub fn from_parts(even: Vec<u32>, odd: u64) -> Self {
        Monomial { even, odd }
    }

    pub fn of_var(registry: &VarRegistry, v: VarId) -> Self {
        let mut m = Self::one(registry);
        let var = registry.var(v);
        match var.parity {
            Parity::Even => m.even[var.slot] = 1,
            Parity::Odd => m.odd = 1 << var.slot,
        }
        m
    }

    pub fn even_exponents(&self) -> &[u32] {
        &self.even
    }

    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn degree(&self) -> u32 {
        self.even.iter().sum::<u32>() + self.odd.count_ones()
    }

    pub fn is_one(&self) -> bool {
        self.odd == 0 && self.even.iter().all(|&e| e == 0)
    }

    pub fn parity(&self) -> Parity {
        Parity::from_degree(self.odd.count_ones() as usize)
    }

    pub fn exponent(&self, registry: &VarRegistry, v: VarId) -> u32 {
        let var = registry.var(v);
        match var.parity {
            Parity::Even => self.even[var.slot],
            Parity::Odd => ((self.odd >> var.slot) & 1) as u32,
        }
    }

    /// Total degree in the given variables.
    pub fn degree_in(&self, registry: &VarRegistry, vars: &[VarId]) -> u32 {
        vars.iter().map(|&v| self.exponent(registry, v)).sum()
    }

    /// Product with its Koszul sign; `None` when an odd variable repeats.
    /// The sign is `true` for `-1`.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        debug_assert_eq!(self.even.len(), other.even.len());
        if self.odd & other.odd != 0 {
            return None;
        }
        let negative = merge_is_negative(self.odd, other.odd);
        let even = self
            .even
            .iter()
            .zip(&other.even)
            .map(|(a, b)| a + b)
            .collect();
        Some((
            negative,
            Monomial {
                even,
                odd: self.odd | other.odd,
            },
        ))
    }

    /// Left derivative by `v`: `(sign, exponent factor, remaining monomial)`.
    ///
    /// For odd `v` the sign counts the odd variables preceding `v`.
    pub fn derivative(&self, registry: &VarRegistry, v: VarId) -> Option<(bool, u32, Monomial)> {
        let var = registry.var(v);
        match var.parity {
            Parity::Even => {
                let e = self.even[var.slot];
                if e == 0 {
                    return None;
                }
                let mut rest = self.clone();
                rest.even[var.slot] -= 1;
                Some((false, e, rest))
            }
            Parity::Odd => {
                let bit = 1u64 << var.slot;
                if self.odd & bit == 0 {
                    return None;
                }
                let preceding = (self.odd & (bit - 1)).count_ones();
                let rest = Monomial {
                    even: self.even.clone(),
                    odd: self.odd & !bit,
                };
                Some((preceding % 2 == 1, 1, rest))
            }
        }
    }

    /// Variables with multiplicity in normal-form order: evens in slot order,
    /// then odds ascending.
    pub fn factors(&self, registry: &VarRegistry) -> Vec<(VarId, u32)> {
        let mut out = Vec::new();
        for (slot, &id) in registry.even_ids().iter().enumerate() {
            if self.even[slot] > 0 {
                out.push((id, self.even[slot]));
            }
        }
        for (slot, &id) in registry.odd_ids().iter().enumerate() {
            if self.odd & (1 << slot) != 0 {
                out.push((id, 1));
            }
        }
        out
    }

    pub fn render(&self, registry: &VarRegistry) -> String {
        let parts: Vec<String> = self
            .factors(registry)
            .into_iter()
            .map(|(id, e)| {
                let name = &registry.var(id).name;
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }
}

/// Graded, then lexicographic on even exponents, then on the odd bitmask.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.even.cmp(&other.even))
            .then_with(|| self.odd.cmp(&other.odd))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> VarRegistry {
        VarRegistry::super_koszul(1, 2)
    }

    fn mono(r: &VarRegistry, names: &[&str]) -> Monomial {
        let mut m = Monomial::one(r);
        let mut neg = false;
        for n in names {
            let (s, next) = m.mul(&Monomial::of_var(r, r.lookup(n).unwrap())).unwrap();
            neg ^= s;
            m = next;
        }
        assert!(!neg || names.len() > 1);
        m
    }

    #[test]
    fn odd_sign_rule() {
        let r = reg();
        let th1 = mono(&r, &["th1"]);
        let th2 = mono(&r, &["th2"]);
        let (s, p) = th1.mul(&th2).unwrap();
        assert!(!s);
        let (s2, p2) = th2.mul(&th1).unwrap();
        assert!(s2);
        assert_eq!(p, p2);
        assert!(th1.mul(&th1).is_none());
    }

    #[test]
    fn mixed_product_sign() {
        // (x1 th2)(x1 th1) = -x1^2 th1 th2
        let r = reg();
        let a = mono(&r, &["x1", "th2"]);
        let b = mono(&r, &["x1", "th1"]);
        let (neg, prod) = a.mul(&b).unwrap();
        assert!(neg);
        assert_eq!(prod.render(&r), "x1^2*th1*th2");
    }

    #[test]
    fn parity_examples() {
        let r = reg();
        assert_eq!(mono(&r, &["th1", "th2"]).parity(), Parity::Even);
        assert_eq!(mono(&r, &["x1", "th1"]).parity(), Parity::Odd);
        assert_eq!(Monomial::one(&r).parity(), Parity::Even);
    }

    #[test]
    fn graded_order() {
        let r = reg();
        let one = Monomial::one(&r);
        let x = mono(&r, &["x1"]);
        let thth = mono(&r, &["th1", "th2"]);
        assert!(one < x);
        assert!(x < thth);
    }
}
