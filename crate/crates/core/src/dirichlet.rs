//! Harmonic basis for the Dirichlet problem in the layer `0 < y < a`.
//!
//! The coefficients `c_{2m}` of `sinh(ty)/sinh(ta) = sum c_{2m} t^{2m}` come
//! from dividing the two sine-hyperbolic series:
//!
//! ```text
//! c_0    = y/a
//! c_{2m} = (1/a) (y^{2m+1}/(2m+1)! - sum_{i=1}^{m} a^{2i+1}/(2i+1)! c_{2m-2i})
//! ```
//!
//! and `f_{2m} = (-1)^m (2m)! c_{2m}`. The basis solution with trace `x^k`
//! on `y = a` and zero on `y = 0` is `u_k = sum C_k^{2m} x^{k-2m} f_{2m}(y)`;
//! its mirror `v_k(x, y) = u_k(x, a - y)` carries the trace to `y = 0`.

use crate::basis::{self, inv_factorial, Memo, Width, TABLE_RING};
use crate::error::Result;
use crate::polyring::{MultiIndex, Poly, Rational};

fn c_step(prev: &[Poly], m: usize) -> Poly {
    let m = m as u32;
    let mut bracket = Poly::monomial(
        TABLE_RING,
        vec![(2 * m + 1) as i32, 0],
        inv_factorial(2 * m + 1),
    );
    for i in 1..=m {
        let a_pow = Poly::monomial(
            TABLE_RING,
            vec![0, (2 * i + 1) as i32],
            inv_factorial(2 * i + 1),
        );
        bracket = &bracket - &(&a_pow * &prev[(m - i) as usize]);
    }
    let inv_a = Poly::monomial(TABLE_RING, vec![0, -1], Rational::from_integer(1.into()));
    &inv_a * &bracket
}

fn f_step(_: &[Poly], m: usize) -> Poly {
    let c = C_TABLE.get(m);
    let mut scale = Rational::from_integer(basis::factorial(2 * m as u32));
    if m % 2 == 1 {
        scale = -scale;
    }
    c.scale(&scale)
}

static C_TABLE: Memo = Memo::new(c_step);
static F_TABLE: Memo = Memo::new(f_step);

/// `c_0, c_2, ..., c_{2M}` as polynomials in `y` (and `a` when formal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    pub width: Width,
    pub entries: Vec<Poly>,
}

impl CoeffTable {
    /// Entry `c_{2m}`.
    pub fn get(&self, m: usize) -> Option<&Poly> {
        self.entries.get(m)
    }
}

pub fn c_coeffs(max_m: usize, width: &Width) -> Result<CoeffTable> {
    width.check()?;
    let entries = (0..=max_m)
        .map(|m| width.realize(&C_TABLE.get(m), 0))
        .collect();
    Ok(CoeffTable {
        width: width.clone(),
        entries,
    })
}

/// `f_{2m}(y)`, odd in `y` of degree `2m + 1`.
pub fn f_poly(m: usize, width: &Width) -> Result<Poly> {
    width.check()?;
    Ok(width.realize(&F_TABLE.get(m), 0))
}

pub(crate) fn f_formal(m: usize) -> Poly {
    F_TABLE.get(m)
}

/// Multi-index family `(2m)! |m|! / ((2|m|)! m!) f_{2|m|}(y)`.
pub fn multiindex_f(m: &MultiIndex, width: &Width) -> Result<Poly> {
    let f = f_poly(m.degree() as usize, width)?;
    Ok(f.scale(&basis::multiindex_factor(m)))
}

/// Harmonic polynomial with value `x^k` on `y = a` and `0` on `y = 0`.
pub fn basis_u(k: &MultiIndex, n: usize, width: &Width) -> Result<Poly> {
    basis::assemble(k, n, width, f_formal)
}

/// Harmonic polynomial with value `x^k` on `y = 0` and `0` on `y = a`.
pub fn basis_v(k: &MultiIndex, n: usize, width: &Width) -> Result<Poly> {
    let u = basis_u(k, n, width)?;
    Ok(basis::reflect(&u, width))
}
