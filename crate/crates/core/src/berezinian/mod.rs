//! Supermatrices over a Grassmann ring and their Berezinian. Also the action of an
//! automorphism of `A^{p|q}` on the generator `D = θ₁…θ_q ∂χ₁…∂χ_p` of the
//! dual homology.
//!
//! With the row vector `v = (x, θ)` an automorphism acts by `v' = vM`; the
//! dual variables `w = (∂χ, ∂ℓ)` transform as the column `w' = M⁻¹w`, which
//! leaves `Ω = Σ x·∂χ + Σ θ·∂ℓ` (and hence `δ*`) invariant.

mod gmatrix;
mod literal;
mod random;

use crate::coeff::{FieldElem, Parity, RingSpec, Scalar};
use crate::complex::ComplexSpec;
use crate::error::{Error, Result};
use crate::homology::class_coefficient;
use crate::superalg::{Factor, SuperPoly};

pub use gmatrix::GMatrix;
pub use literal::{EntryLiteral, SuperMatrixLiteral};
pub use random::random_invertible;

/// `[[A, B], [C, D]]` acting on `A^{p|q}`: `A`, `D` even, `B`, `C` odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    p: usize,
    q: usize,
    a: GMatrix,
    b: GMatrix,
    c: GMatrix,
    d: GMatrix,
}

fn field_det(body: Vec<Vec<FieldElem>>, ring: RingSpec) -> Result<FieldElem> {
    let n = body.len();
    let rows = body
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| Scalar::from_field(ring.ground(), v))
                .collect()
        })
        .collect();
    Ok(GMatrix::from_rows(ring.ground(), n, rows)?
        .even_det()?
        .body())
}

impl SuperMatrix {
    pub fn new(a: GMatrix, b: GMatrix, c: GMatrix, d: GMatrix) -> Result<Self> {
        let (p, q) = (a.rows(), d.rows());
        let shapes = [
            ("A", &a, p, p),
            ("B", &b, p, q),
            ("C", &c, q, p),
            ("D", &d, q, q),
        ];
        for (name, m, r, k) in shapes {
            if (m.rows(), m.cols()) != (r, k) {
                return Err(Error::InvalidSupermatrix(format!(
                    "block {name} is {}x{}, expected {r}x{k}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.ring() != a.ring() {
                return Err(Error::RingMismatch {
                    left: m.ring(),
                    right: a.ring(),
                });
            }
        }
        if !a.all_even() || !d.all_even() {
            return Err(Error::InvalidSupermatrix(
                "diagonal blocks must be even".into(),
            ));
        }
        if !b.all_odd() || !c.all_odd() {
            return Err(Error::InvalidSupermatrix(
                "off-diagonal blocks must be odd".into(),
            ));
        }
        Ok(SuperMatrix { p, q, a, b, c, d })
    }

    pub fn identity(ring: RingSpec, p: usize, q: usize) -> Self {
        SuperMatrix {
            p,
            q,
            a: GMatrix::identity(ring, p),
            b: GMatrix::zeros(ring, p, q),
            c: GMatrix::zeros(ring, q, p),
            d: GMatrix::identity(ring, q),
        }
    }

    pub fn block_diagonal(a: GMatrix, d: GMatrix) -> Result<Self> {
        let ring = a.ring();
        let (p, q) = (a.rows(), d.rows());
        Self::new(a, GMatrix::zeros(ring, p, q), GMatrix::zeros(ring, q, p), d)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn ring(&self) -> RingSpec {
        self.a.ring()
    }

    pub fn blocks(&self) -> (&GMatrix, &GMatrix, &GMatrix, &GMatrix) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    /// Entry `(α, β)` of the full `(p+q)×(p+q)` matrix.
    pub fn entry(&self, r: usize, k: usize) -> &Scalar {
        let p = self.p;
        match (r < p, k < p) {
            (true, true) => self.a.get(r, k),
            (true, false) => self.b.get(r, k - p),
            (false, true) => self.c.get(r - p, k),
            (false, false) => self.d.get(r - p, k - p),
        }
    }

    pub fn mul(&self, other: &SuperMatrix) -> SuperMatrix {
        assert_eq!((self.p, self.q), (other.p, other.q), "shape mismatch");
        SuperMatrix {
            p: self.p,
            q: self.q,
            a: self.a.mul(&other.a).add(&self.b.mul(&other.c)),
            b: self.a.mul(&other.b).add(&self.b.mul(&other.d)),
            c: self.c.mul(&other.a).add(&self.d.mul(&other.c)),
            d: self.c.mul(&other.b).add(&self.d.mul(&other.d)),
        }
    }

    /// Both `body(A)` and `body(D)` are invertible.
    pub fn is_invertible(&self) -> Result<bool> {
        let ring = self.ring();
        Ok(
            !field_det(self.a.body(), ring)?.is_zero()
                && !field_det(self.d.body(), ring)?.is_zero(),
        )
    }

    fn require_invertible(&self) -> Result<()> {
        if self.is_invertible()? {
            Ok(())
        } else {
            Err(Error::SingularSupermatrix)
        }
    }

    /// `A − B D⁻¹ C` together with `D⁻¹`.
    fn schur(&self) -> Result<(GMatrix, GMatrix)> {
        self.require_invertible()?;
        let d_inv = self.d.even_inverse()?;
        let s = self.a.sub(&self.b.mul(&d_inv).mul(&self.c));
        Ok((s, d_inv))
    }

    /// `Ber(M) = det(A − BD⁻¹C)·det(D)⁻¹`.
    pub fn ber(&self) -> Result<Scalar> {
        let (s, _) = self.schur()?;
        let det_d = self.d.even_det()?;
        Ok(&s.even_det()? * &det_d.inverse()?)
    }

    pub fn inverse(&self) -> Result<SuperMatrix> {
        let (s, d_inv) = self.schur()?;
        let s_inv = s.even_inverse()?;
        let bd = self.b.mul(&d_inv);
        let dc = d_inv.mul(&self.c);
        Ok(SuperMatrix {
            p: self.p,
            q: self.q,
            a: s_inv.clone(),
            b: s_inv.mul(&bd).neg(),
            c: dc.mul(&s_inv).neg(),
            d: d_inv.add(&dc.mul(&s_inv).mul(&bd)),
        })
    }

    /// `M = U·K·L` with `U = [[1, BD⁻¹], [0, 1]]`,
    /// `K = [[A − BD⁻¹C, 0], [0, D]]`, `L = [[1, 0], [D⁻¹C, 1]]`.
    pub fn decompose_udl(&self) -> Result<(SuperMatrix, SuperMatrix, SuperMatrix)> {
        let (s, d_inv) = self.schur()?;
        let ring = self.ring();
        let (p, q) = (self.p, self.q);
        let upper = SuperMatrix {
            b: self.b.mul(&d_inv),
            ..SuperMatrix::identity(ring, p, q)
        };
        let core = SuperMatrix {
            p,
            q,
            a: s,
            b: GMatrix::zeros(ring, p, q),
            c: GMatrix::zeros(ring, q, p),
            d: self.d.clone(),
        };
        let lower = SuperMatrix {
            c: d_inv.mul(&self.c),
            ..SuperMatrix::identity(ring, p, q)
        };
        Ok((upper, core, lower))
    }
}

/// `D = θ₁…θ_q ∂χ₁…∂χ_p` in the dual complex.
pub fn dual_generator(spec: &ComplexSpec) -> SuperPoly {
    let reg = spec.registry();
    let mut out = SuperPoly::one(reg.clone(), spec.ring);
    for class in [(Factor::R, Parity::Odd), (Factor::RPiDual, Parity::Odd)] {
        for v in reg.of_class(class.0, class.1) {
            out = &out * &SuperPoly::var(reg.clone(), spec.ring, v);
        }
    }
    out
}

/// Images of every dual-complex variable under the automorphism `M`.
pub fn induced_substitution(spec: &ComplexSpec, m: &SuperMatrix) -> Result<Vec<SuperPoly>> {
    let reg = spec.registry();
    let ring = spec.ring;
    if ring != m.ring() {
        return Err(Error::RingMismatch {
            left: ring,
            right: m.ring(),
        });
    }
    let (p, q) = (m.p(), m.q());
    let m_inv = m.inverse()?;
    let var = |f: Factor, par: Parity, k: usize| {
        let id = reg.find(f, par, k + 1).ok_or_else(|| {
            Error::InvalidArgument(format!("complex has no variable for index {}", k + 1))
        })?;
        Ok::<_, Error>(SuperPoly::var(reg.clone(), ring, id))
    };
    // v = (x_1..x_p, θ_1..θ_q), w = (∂χ_1..∂χ_p, ∂ℓ_1..∂ℓ_q)
    let v_of = |k: usize| {
        if k < p {
            var(Factor::R, Parity::Even, k)
        } else {
            var(Factor::R, Parity::Odd, k - p)
        }
    };
    let w_of = |k: usize| {
        if k < p {
            var(Factor::RPiDual, Parity::Odd, k)
        } else {
            var(Factor::RPiDual, Parity::Even, k - p)
        }
    };
    let n = p + q;
    let mut v_img = Vec::with_capacity(n);
    let mut w_img = Vec::with_capacity(n);
    for col in 0..n {
        let mut acc = SuperPoly::zero(reg.clone(), ring);
        for row in 0..n {
            let c = SuperPoly::constant(reg.clone(), m.entry(row, col).clone());
            acc = &acc + &(&v_of(row)? * &c);
        }
        v_img.push(acc);
    }
    for row in 0..n {
        let mut acc = SuperPoly::zero(reg.clone(), ring);
        for col in 0..n {
            let c = SuperPoly::constant(reg.clone(), m_inv.entry(row, col).clone());
            acc = &acc + &(&c * &w_of(col)?);
        }
        w_img.push(acc);
    }
    reg.ids()
        .map(|id| {
            let v = reg.var(id);
            let k = v.index - 1;
            match (v.factor, v.parity) {
                (Factor::R, Parity::Even) => Ok(v_img[k].clone()),
                (Factor::R, Parity::Odd) => Ok(v_img[p + k].clone()),
                (Factor::RPiDual, Parity::Odd) => Ok(w_img[k].clone()),
                (Factor::RPiDual, Parity::Even) => Ok(w_img[p + k].clone()),
                _ => Err(Error::InvalidArgument(format!(
                    "unexpected variable {}",
                    v.name
                ))),
            }
        })
        .collect()
}

/// The scalar by which `M` multiplies the class of `D`.
pub fn induced_action_on_generator(m: &SuperMatrix) -> Result<Scalar> {
    let spec = ComplexSpec::dual_super_koszul(m.p(), m.q(), m.ring());
    let d = dual_generator(&spec);
    let image = d.substitute(&induced_substitution(&spec, m)?)?;
    class_coefficient(&spec, &image, &d)
}
