use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::coeff::Parity;
use crate::error::{Error, Result};

/// Which tensor factor of the complex a variable generates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Factor {
    /// `R = Sym•V`: the `x` and `θ` variables.
    R,
    /// `R^π = Sym•ΠV`: `χ = πx`, `ℓ = πθ`.
    RPi,
    /// `R^{π*} = Sym•ΠV*`: `∂χ`, `∂ℓ`.
    RPiDual,
    /// `B = A[x₁..x_N]` of the classical complex.
    ClassicalB,
    /// `U = A[y₁..y_N]` of the classical complex.
    ClassicalU,
}

impl Factor {
    /// Rendering prefix for a variable of this factor and parity.
    pub fn prefix(self, parity: Parity) -> &'static str {
        match (self, parity) {
            (Factor::R, Parity::Even) | (Factor::ClassicalB, _) => "x",
            (Factor::R, Parity::Odd) => "th",
            (Factor::RPi, Parity::Odd) => "ch",
            (Factor::RPi, Parity::Even) => "l",
            (Factor::RPiDual, Parity::Odd) => "dch",
            (Factor::RPiDual, Parity::Even) => "dl",
            (Factor::ClassicalU, _) => "y",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub(crate) usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub parity: Parity,
    pub factor: Factor,
    /// 1-based index within its (factor, parity) class.
    pub index: usize,
    /// Exponent slot for even variables, bit position for odd ones.
    pub(crate) slot: usize,
}

/// Ordered variable alphabet. The order of the odd variables fixes the
/// monomial normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarRegistry {
    vars: Vec<Variable>,
    evens: Vec<VarId>,
    odds: Vec<VarId>,
    by_name: HashMap<String, VarId>,
}

impl VarRegistry {
    /// Build from `(factor, parity, count)` blocks; names are generated as
    /// `<prefix><index>`.
    pub fn from_blocks(blocks: &[(Factor, Parity, usize)]) -> Result<Self> {
        let mut vars = Vec::new();
        let mut evens = Vec::new();
        let mut odds = Vec::new();
        let mut by_name = HashMap::new();
        for &(factor, parity, count) in blocks {
            let already = vars
                .iter()
                .filter(|v: &&Variable| v.factor == factor && v.parity == parity)
                .count();
            for k in 1..=count {
                let index = already + k;
                let name = format!("{}{}", factor.prefix(parity), index);
                let id = VarId(vars.len());
                let slot = match parity {
                    Parity::Even => {
                        evens.push(id);
                        evens.len() - 1
                    }
                    Parity::Odd => {
                        odds.push(id);
                        odds.len() - 1
                    }
                };
                if by_name.insert(name.clone(), id).is_some() {
                    return Err(Error::InvalidArgument(format!("duplicate variable {name}")));
                }
                vars.push(Variable {
                    name,
                    parity,
                    factor,
                    index,
                    slot,
                });
            }
        }
        if odds.len() > 64 {
            return Err(Error::InvalidArgument("more than 64 odd variables".into()));
        }
        Ok(VarRegistry {
            vars,
            evens,
            odds,
            by_name,
        })
    }

    /// Alphabet of `K•(p,q) = R ⊗ R^π`: evens `x, ℓ`, odds `θ, χ`.
    pub fn super_koszul(p: usize, q: usize) -> Self {
        Self::from_blocks(&[
            (Factor::R, Parity::Even, p),
            (Factor::RPi, Parity::Even, q),
            (Factor::R, Parity::Odd, q),
            (Factor::RPi, Parity::Odd, p),
        ])
        .expect("generated names are unique")
    }

    /// Alphabet of `K*•(p,q) = R ⊗ R^{π*}`: evens `x, ∂ℓ`, odds `θ, ∂χ`.
    pub fn dual_super_koszul(p: usize, q: usize) -> Self {
        Self::from_blocks(&[
            (Factor::R, Parity::Even, p),
            (Factor::RPiDual, Parity::Even, q),
            (Factor::R, Parity::Odd, q),
            (Factor::RPiDual, Parity::Odd, p),
        ])
        .expect("generated names are unique")
    }

    /// Alphabet of the classical complex on `A^{N|N}`.
    pub fn classical(n: usize) -> Self {
        Self::from_blocks(&[
            (Factor::ClassicalB, Parity::Even, n),
            (Factor::ClassicalU, Parity::Odd, n),
        ])
        .expect("generated names are unique")
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn n_even(&self) -> usize {
        self.evens.len()
    }

    pub fn n_odd(&self) -> usize {
        self.odds.len()
    }

    pub fn var(&self, id: VarId) -> &Variable {
        &self.vars[id.0]
    }

    pub fn ids(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.vars.len()).map(VarId)
    }

    pub fn even_ids(&self) -> &[VarId] {
        &self.evens
    }

    pub fn odd_ids(&self) -> &[VarId] {
        &self.odds
    }

    pub fn lookup(&self, name: &str) -> Result<VarId> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Variable of a given factor, parity and 1-based index.
    pub fn find(&self, factor: Factor, parity: Parity, index: usize) -> Option<VarId> {
        self.ids().find(|&id| {
            let v = self.var(id);
            v.factor == factor && v.parity == parity && v.index == index
        })
    }

    pub fn of_class(&self, factor: Factor, parity: Parity) -> Vec<VarId> {
        self.ids()
            .filter(|&id| {
                let v = self.var(id);
                v.factor == factor && v.parity == parity
            })
            .collect()
    }
}

impl fmt::Display for VarRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vars.iter().map(|v| v.name.as_str()).collect();
        write!(f, "[{}]", names.join(", "))
    }
}
