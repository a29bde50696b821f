//! Particular polynomial solutions of `Δu = P`.
//!
//! For a monomial `x^k y^m` the layered formula integrates twice in `y` and
//! corrects with powers of the spatial Laplacian:
//!
//! ```text
//! u = sum_{j=0}^{[|k|/2]} (-1)^j m!/(m+2j+2)! y^(m+2j+2) Δ_x^j x^k
//! ```
//!
//! For `n = 1` the same construction with the roles of `x` and `y` swapped
//! is available as [`inv_laplacian_monomial_alt`].

use num_traits::One;

use crate::error::{Error, Result};
use crate::polyring::{MultiIndex, Poly, Rational, Ring};

/// One term `coeff * x^k * y^m` of a polynomial free of the width symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub k: MultiIndex,
    pub m: u32,
    pub coeff: Rational,
}

/// Splits a width-free polynomial into its monomials.
pub fn monomials(p: &Poly) -> Result<Vec<Monomial>> {
    let ring = p.ring();
    if let Some(a) = ring.a() {
        if !p.is_free_of(a) {
            return Err(Error::WidthInPolynomial);
        }
    }
    let dim = ring.dim();
    Ok(p.terms()
        .map(|(e, c)| {
            let e = e.as_slice();
            Monomial {
                k: MultiIndex::new(e[..dim].iter().map(|&v| v as u32).collect()),
                m: e[dim] as u32,
                coeff: c.clone(),
            }
        })
        .collect())
}

fn check_width_free(p: &Poly, n: usize) -> Result<()> {
    let ring = p.ring();
    if ring.dim() != n {
        return Err(Error::UnsupportedDimension {
            expected: n,
            got: ring.dim(),
        });
    }
    if let Some(a) = ring.a() {
        if !p.is_free_of(a) {
            return Err(Error::WidthInPolynomial);
        }
    }
    Ok(())
}

/// Shared kernel of both formulas: `sum_j (-1)^j s!/(s+2j+2)! w^(s+2j+2) D^j q`
/// where `w` is the integrated variable with starting power `s`, `q` is the
/// remaining factor and `D` the second-derivative operator acting on it.
fn integrate_twice(
    ring: Ring,
    integrated_var: usize,
    start_power: u32,
    rest: Poly,
    apply_d: impl Fn(&Poly) -> Poly,
) -> Poly {
    let mut out = Poly::zero(ring);
    let mut current = rest;
    let mut factor = Rational::one();
    let mut j = 0u32;
    while !current.is_zero() {
        let lo = start_power + 2 * j + 1;
        // s!/(s+2j+2)! as a running product of reciprocals
        factor /= Rational::from_integer((u64::from(lo) * u64::from(lo + 1)).into());
        let signed = if j.is_multiple_of(2) {
            factor.clone()
        } else {
            -factor.clone()
        };
        let mut exps = vec![0; ring.nvars()];
        exps[integrated_var] = (start_power + 2 * j + 2) as i32;
        let power = Poly::monomial(ring, exps, signed);
        out = &out + &(&power * &current);
        current = apply_d(&current);
        j += 1;
    }
    out
}

/// Particular solution of `Δu = x^k y^m` in `n` spatial dimensions.
pub fn inv_laplacian_monomial(k: &MultiIndex, m: u32, n: usize) -> Result<Poly> {
    if k.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: k.len(),
        });
    }
    let ring = Ring::new(n);
    let xk = Poly::xk_ym(ring, k, 0, Rational::one());
    Ok(integrate_twice(ring, ring.y(), m, xk, Poly::laplacian_x))
}

/// Particular solution of `Δu = x^k y^m` for `n = 1`, integrating in `x`.
pub fn inv_laplacian_monomial_alt(k: u32, m: u32) -> Poly {
    let ring = Ring::new(1);
    let ym = Poly::monomial(ring, vec![0, m as i32], Rational::one());
    integrate_twice(ring, 0, k, ym, |p| {
        p.diff(ring.y(), 2).expect("y is differentiable")
    })
}

/// Particular solution of `Δu = P`, monomial by monomial.
pub fn inv_laplacian(p: &Poly, n: usize) -> Result<Poly> {
    check_width_free(p, n)?;
    let ring = Ring::new(n);
    let mut out = Poly::zero(ring);
    for mono in monomials(p)? {
        let u = inv_laplacian_monomial(&mono.k, mono.m, n)?;
        out = &out + &u.scale(&mono.coeff);
    }
    Ok(out)
}

/// Linear extension of [`inv_laplacian_monomial_alt`]; `n` must be 1.
pub fn inv_laplacian_alt(p: &Poly, n: usize) -> Result<Poly> {
    if n != 1 {
        return Err(Error::UnsupportedDimension {
            expected: 1,
            got: n,
        });
    }
    check_width_free(p, 1)?;
    let mut out = Poly::zero(Ring::new(1));
    for mono in monomials(p)? {
        let u = inv_laplacian_monomial_alt(mono.k.as_slice()[0], mono.m);
        out = &out + &u.scale(&mono.coeff);
    }
    Ok(out)
}

/// Which particular solution the solver starts from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParticularForm {
    /// Integrate in `y` (any dimension).
    #[default]
    Layered,
    /// Integrate in `x` (dimension 1 only).
    Swapped,
}

pub fn particular_solution(p: &Poly, n: usize, form: ParticularForm) -> Result<Poly> {
    match form {
        ParticularForm::Layered => inv_laplacian(p, n),
        ParticularForm::Swapped => inv_laplacian_alt(p, n),
    }
}
