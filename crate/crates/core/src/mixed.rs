//! Harmonic basis for the mixed problem: value on `y = 0`, normal
//! derivative on `y = a`.
//!
//! The families come from
//!
//! ```text
//! cosh(t(a-y))/cosh(ta) = sum p_{2m}(y) (-1)^m t^{2m}/(2m)!
//! sinh(ty)/(t cosh(ta)) = sum q_{2m}(y) (-1)^m t^{2m}/(2m)!
//! ```
//!
//! Multiplying through by `cosh(ta)` and matching powers of `t` gives the
//! recurrences used here:
//!
//! ```text
//! d_{2m} = (a-y)^{2m}/(2m)!   - sum_{i=1}^{m} a^{2i}/(2i)! d_{2m-2i},   p_{2m} = (-1)^m (2m)! d_{2m}
//! e_{2m} = y^{2m+1}/(2m+1)!   - sum_{i=1}^{m} a^{2i}/(2i)! e_{2m-2i},   q_{2m} = (-1)^m (2m)! e_{2m}
//! ```
//!
//! The `n > 1` bases reuse the Dirichlet multi-index factor; both kernel
//! symbols are even in `|t|`, and the harmonicity and trace checks in the
//! test suite are what certify the extension.

use num_traits::One;

use crate::basis::{self, inv_factorial, Memo, Width, TABLE_RING};
use crate::error::Result;
use crate::polyring::{MultiIndex, Poly, Rational};

fn cosh_division_step(prev: &[Poly], m: usize, leading: Poly) -> Poly {
    let m = m as u32;
    let mut out = leading;
    for i in 1..=m {
        let a_pow = Poly::monomial(TABLE_RING, vec![0, (2 * i) as i32], inv_factorial(2 * i));
        out = &out - &(&a_pow * &prev[(m - i) as usize]);
    }
    out
}

fn d_step(prev: &[Poly], m: usize) -> Poly {
    let a_minus_y = Poly::from_terms(
        TABLE_RING,
        [
            (vec![0, 1], Rational::one()),
            (vec![1, 0], -Rational::one()),
        ],
    )
    .expect("table ring terms");
    let leading = a_minus_y
        .pow(2 * m as u32)
        .scale(&inv_factorial(2 * m as u32));
    cosh_division_step(prev, m, leading)
}

fn e_step(prev: &[Poly], m: usize) -> Poly {
    let deg = 2 * m as u32 + 1;
    let leading = Poly::monomial(TABLE_RING, vec![deg as i32, 0], inv_factorial(deg));
    cosh_division_step(prev, m, leading)
}

fn signed_factorial_scale(p: &Poly, m: usize) -> Poly {
    let mut scale = Rational::from_integer(basis::factorial(2 * m as u32));
    if m % 2 == 1 {
        scale = -scale;
    }
    p.scale(&scale)
}

static D_TABLE: Memo = Memo::new(d_step);
static E_TABLE: Memo = Memo::new(e_step);
static P_TABLE: Memo = Memo::new(|_, m| signed_factorial_scale(&D_TABLE.get(m), m));
static Q_TABLE: Memo = Memo::new(|_, m| signed_factorial_scale(&E_TABLE.get(m), m));

/// Raw series-division coefficients `d_{2m}` (formal width).
pub fn d_coeff(m: usize) -> Poly {
    D_TABLE.get(m)
}

/// Raw series-division coefficients `e_{2m}` (formal width).
pub fn e_coeff(m: usize) -> Poly {
    E_TABLE.get(m)
}

/// `p_{2m}(y)`: degree `2m`, `p_0 = 1`.
pub fn p_poly(m: usize, width: &Width) -> Result<Poly> {
    width.check()?;
    Ok(width.realize(&P_TABLE.get(m), 0))
}

/// `q_{2m}(y)`: degree `2m + 1`, `q_0 = y`.
pub fn q_poly(m: usize, width: &Width) -> Result<Poly> {
    width.check()?;
    Ok(width.realize(&Q_TABLE.get(m), 0))
}

/// Same factor as the Dirichlet multi-index scaling.
pub fn mixed_multiindex_factor(m: &MultiIndex) -> Rational {
    basis::multiindex_factor(m)
}

/// Harmonic; value `x^k` on `y = 0`; `u_y = 0` on `y = a`.
pub fn mixed_basis_u(k: &MultiIndex, n: usize, width: &Width) -> Result<Poly> {
    basis::assemble(k, n, width, |m| P_TABLE.get(m))
}

/// Harmonic; value `0` on `y = 0`; `v_y = x^l` on `y = a`.
pub fn mixed_basis_v(l: &MultiIndex, n: usize, width: &Width) -> Result<Poly> {
    basis::assemble(l, n, width, |m| Q_TABLE.get(m))
}
