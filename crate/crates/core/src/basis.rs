//! Machinery shared by the Dirichlet and mixed harmonic bases: the width
//! mode, memoized one-dimensional families, and assembly of
//! `sum_m C_k^{2m} x^{k-2m} g_{2m}(y)` over multi-indices.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyring::{MultiIndex, Poly, Rational, Ring};

/// How the layer width enters a generated polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Width {
    /// Keep `a` as a ring variable (Laurent in `a`).
    Formal,
    /// Substitute a positive rational.
    Value(Rational),
}

impl Width {
    pub fn value(a: Rational) -> Result<Self> {
        if a.is_positive() {
            Ok(Width::Value(a))
        } else {
            Err(Error::InvalidWidth(a.to_string()))
        }
    }

    pub(crate) fn check(&self) -> Result<()> {
        match self {
            Width::Value(a) if !a.is_positive() => Err(Error::InvalidWidth(a.to_string())),
            _ => Ok(()),
        }
    }

    /// Ring of the generated polynomials in `n` spatial dimensions.
    pub fn ring(&self, n: usize) -> Ring {
        match self {
            Width::Formal => Ring::with_width(n),
            Width::Value(_) => Ring::new(n),
        }
    }

    /// `a` as a polynomial of `ring`.
    pub fn as_poly(&self, ring: Ring) -> Poly {
        match self {
            Width::Formal => Poly::var(ring, ring.a().expect("formal ring carries `a`")),
            Width::Value(a) => Poly::constant(ring, a.clone()),
        }
    }

    /// Specializes a polynomial over `Q[y, a]` (dimension 0, formal width)
    /// and lifts it into the `n`-dimensional ring of this mode.
    pub(crate) fn realize(&self, formal: &Poly, n: usize) -> Poly {
        let specialized = match self {
            Width::Formal => formal.clone(),
            Width::Value(a) => formal.specialize_width(a).expect("width is nonzero"),
        };
        specialized
            .embed(self.ring(n))
            .expect("dimension-0 table embeds in any ring")
    }
}

/// Ring in which the one-dimensional families are generated: `Q[y, a]`.
pub(crate) const TABLE_RING: Ring = Ring::with_width(0);

/// Grow-only memo table for a recurrence `g_m = step(g_0..g_{m-1}, m)`.
/// Readers always see a prefix of one deterministic sequence.
pub(crate) struct Memo {
    cell: OnceLock<RwLock<Vec<Poly>>>,
    step: fn(&[Poly], usize) -> Poly,
}

impl Memo {
    pub(crate) const fn new(step: fn(&[Poly], usize) -> Poly) -> Self {
        Memo {
            cell: OnceLock::new(),
            step,
        }
    }

    pub(crate) fn get(&self, m: usize) -> Poly {
        let lock = self.cell.get_or_init(|| RwLock::new(Vec::new()));
        {
            let table = lock.read().expect("memo lock poisoned");
            if let Some(p) = table.get(m) {
                return p.clone();
            }
        }
        let mut table = lock.write().expect("memo lock poisoned");
        while table.len() <= m {
            let next = (self.step)(&table, table.len());
            table.push(next);
        }
        table[m].clone()
    }
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `t^j / j!` coefficient helper: `1/j!`.
pub(crate) fn inv_factorial(j: u32) -> Rational {
    Rational::new(BigInt::one(), factorial(j))
}

/// `(2m)! |m|! / ((2|m|)! m!)` with multi-index factorials taken componentwise.
pub fn multiindex_factor(m: &MultiIndex) -> Rational {
    let total = m.degree();
    let mut num = factorial(total);
    let mut den = factorial(2 * total);
    for &mi in m.as_slice() {
        num *= factorial(2 * mi);
        den *= factorial(mi);
    }
    Rational::new(num, den)
}

/// `sum_{0 <= 2m <= k} C_k^{2m} x^{k-2m} c(m) g_{2|m|}(y)`, with `g` read
/// from a formal dimension-0 family and `c(m)` the multi-index factor.
pub(crate) fn assemble(
    k: &MultiIndex,
    n: usize,
    width: &Width,
    family: impl Fn(usize) -> Poly,
) -> Result<Poly> {
    if k.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: k.len(),
        });
    }
    width.check()?;
    let ring = width.ring(n);
    let mut out = Poly::zero(ring);
    for m in k.half().below() {
        let mut coeff = multiindex_factor(&m);
        let mut x_part = Vec::with_capacity(n);
        for (&ki, &mi) in k.as_slice().iter().zip(m.as_slice()) {
            coeff *= Rational::from_integer(binomial(ki, 2 * mi));
            x_part.push(ki - 2 * mi);
        }
        let monomial = Poly::xk_ym(ring, &MultiIndex::new(x_part), 0, coeff);
        let g = width.realize(&family(m.degree() as usize), n);
        out = &out + &(&monomial * &g);
    }
    Ok(out)
}

/// Replaces `y` by `a - y`.
pub(crate) fn reflect(p: &Poly, width: &Width) -> Poly {
    let ring = p.ring();
    let shifted = &width.as_poly(ring) - &Poly::y(ring);
    p.substitute(ring.y(), &shifted)
        .expect("a - y lives in the same ring")
}
