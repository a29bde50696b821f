//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! A [`Ring`] fixes the variable layout: spatial variables `x1..xn`, then
//! `y`, then optionally the formal layer width `a`. Terms are stored in a
//! `BTreeMap` keyed by exponent vectors, so two polynomials in the same ring
//! are equal exactly when their term maps are equal.
//!
//! The width slot is Laurent: its exponent may be negative, which is what
//! lets the basis tables carry factors such as `y/a` symbolically. Every
//! other exponent is non-negative, and neither differentiation nor the
//! Laplacian ever acts on `a`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field: reduced fractions with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Variable layout of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    dim: usize,
    width: bool,
}

impl Ring {
    /// Ring in `x1..x_dim, y`.
    pub const fn new(dim: usize) -> Self {
        Ring { dim, width: false }
    }

    /// Ring in `x1..x_dim, y, a`.
    pub const fn with_width(dim: usize) -> Self {
        Ring { dim, width: true }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn has_width(&self) -> bool {
        self.width
    }

    pub fn nvars(&self) -> usize {
        self.dim + 1 + usize::from(self.width)
    }

    pub fn x(&self, i: usize) -> usize {
        assert!(i < self.dim, "spatial index {i} out of range");
        i
    }

    pub fn y(&self) -> usize {
        self.dim
    }

    pub fn a(&self) -> Option<usize> {
        self.width.then_some(self.dim + 1)
    }

    pub fn without_width(&self) -> Ring {
        Ring::new(self.dim)
    }

    pub fn var_name(&self, index: usize) -> String {
        match index {
            i if i < self.dim => format!("x{}", i + 1),
            i if i == self.dim => "y".to_string(),
            i if self.width && i == self.dim + 1 => "a".to_string(),
            i => panic!("variable index {i} out of range for {self}"),
        }
    }

    pub fn var_names(&self) -> Vec<String> {
        (0..self.nvars()).map(|i| self.var_name(i)).collect()
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: *self,
                right: *other,
            })
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.var_names().join(","))
    }
}

/// Exponent vector over the spatial variables `x1..xn` (the `k`, `m` of
/// the basis constructions).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree `|k|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Componentwise floor of half, `[k/2]`.
    pub fn half(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|e| e / 2).collect())
    }

    /// All multi-indices `m` with `0 <= m_i <= self_i`, in lexicographic order.
    pub fn below(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        let mut next = Some(vec![0u32; self.0.len()]);
        std::iter::from_fn(move || {
            let current = next.take()?;
            let mut succ = current.clone();
            for i in (0..succ.len()).rev() {
                if succ[i] < self.0[i] {
                    succ[i] += 1;
                    next = Some(succ);
                    break;
                }
                succ[i] = 0;
            }
            Some(MultiIndex(current))
        })
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

/// Term key of a [`Poly`]. Ordered graded-lexicographically: total degree
/// first, ties broken lexicographically from the first variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<i32>);

impl Exponents {
    pub fn new(exps: Vec<i32>) -> Self {
        Exponents(exps)
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| i64::from(e)).sum()
    }

    fn mul(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Exponents, Rational>,
}

impl Poly {
    pub fn zero(ring: Ring) -> Self {
        Poly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        Poly::constant(ring, Rational::one())
    }

    pub fn constant(ring: Ring, c: Rational) -> Self {
        Poly::monomial(ring, vec![0; ring.nvars()], c)
    }

    /// The single variable with the given index.
    pub fn var(ring: Ring, index: usize) -> Self {
        let mut exps = vec![0; ring.nvars()];
        exps[index] = 1;
        Poly::monomial(ring, exps, Rational::one())
    }

    pub fn y(ring: Ring) -> Self {
        Poly::var(ring, ring.y())
    }

    /// `coeff * prod(var_i ^ exps_i)`.
    pub fn monomial(ring: Ring, exps: Vec<i32>, coeff: Rational) -> Self {
        assert_eq!(exps.len(), ring.nvars(), "exponent vector length");
        let mut p = Poly::zero(ring);
        if !coeff.is_zero() {
            p.terms.insert(Exponents(exps), coeff);
        }
        p
    }

    /// `x^k * y^m` in `ring` (spatial part from `k`, which must have length `ring.dim()`).
    pub fn xk_ym(ring: Ring, k: &MultiIndex, m: u32, coeff: Rational) -> Self {
        assert_eq!(k.len(), ring.dim(), "multi-index length");
        let mut exps: Vec<i32> = k.as_slice().iter().map(|&e| e as i32).collect();
        exps.push(m as i32);
        if ring.has_width() {
            exps.push(0);
        }
        Poly::monomial(ring, exps, coeff)
    }

    /// Builds a polynomial from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(ring: Ring, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        let mut p = Poly::zero(ring);
        for (exps, c) in terms {
            if exps.len() != ring.nvars() {
                return Err(Error::PointLength {
                    expected: ring.nvars(),
                    got: exps.len(),
                });
            }
            for (i, &e) in exps.iter().enumerate() {
                if e < 0 && Some(i) != ring.a() {
                    return Err(Error::Json(format!(
                        "negative exponent {e} on `{}`",
                        ring.var_name(i)
                    )));
                }
            }
            p.add_term(Exponents(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn canonical_terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &[i32]) -> Rational {
        self.terms
            .get(&Exponents(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.0.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Exponents::degree).max()
    }

    /// Highest exponent of a variable, `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e.0[var]).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e.0[var]).min()
    }

    /// Degree in the spatial variables only.
    pub fn spatial_degree(&self) -> Option<i64> {
        let d = self.ring.dim();
        self.terms
            .keys()
            .map(|e| e.0[..d].iter().map(|&x| i64::from(x)).sum())
            .max()
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        let mut out = Poly::zero(self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = Poly::one(self.ring);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `order`-th partial derivative with respect to variable `var`.
    pub fn diff(&self, var: usize, order: u32) -> Result<Poly> {
        if var >= self.nvars() {
            return Err(Error::VariableOutOfRange {
                index: var,
                nvars: self.nvars(),
            });
        }
        if Some(var) == self.ring.a() {
            return Err(Error::WidthNotDifferentiable);
        }
        let order = order as i32;
        let mut out = Poly::zero(self.ring);
        for (e, c) in &self.terms {
            let p = e.0[var];
            if p < order {
                continue;
            }
            // falling factorial p (p-1) ... (p-order+1)
            let mut factor = BigInt::one();
            for i in 0..order {
                factor *= BigInt::from(p - i);
            }
            let mut exps = e.0.clone();
            exps[var] -= order;
            out.add_term(Exponents(exps), c * Rational::from_integer(factor));
        }
        Ok(out)
    }

    /// `sum over x1..xn and y` of second partials; `n` may not exceed the ring dimension.
    pub fn laplacian(&self, n: usize) -> Result<Poly> {
        if n > self.ring.dim() {
            return Err(Error::DimensionTooLarge {
                requested: n,
                available: self.ring.dim(),
            });
        }
        let mut out = self.diff(self.ring.y(), 2)?;
        for i in 0..n {
            out = &out + &self.diff(i, 2)?;
        }
        Ok(out)
    }

    /// `Δ_x`: second partials in the spatial variables only.
    pub fn laplacian_x(&self) -> Poly {
        let mut out = Poly::zero(self.ring);
        for i in 0..self.ring.dim() {
            out = &out + &self.diff(i, 2).expect("spatial index in range");
        }
        out
    }

    /// Replaces variable `var` by `value` (exact composition).
    pub fn substitute(&self, var: usize, value: &Poly) -> Result<Poly> {
        self.ring.check_same(&value.ring)?;
        if var >= self.nvars() {
            return Err(Error::VariableOutOfRange {
                index: var,
                nvars: self.nvars(),
            });
        }
        let inverse = if self.min_degree_in(var).unwrap_or(0) < 0 {
            match value.constant_value() {
                Some(c) if !c.is_zero() => Some(c.recip()),
                _ => {
                    return Err(Error::NonConstantSubstitution {
                        var: self.ring.var_name(var),
                    })
                }
            }
        } else {
            None
        };

        // group by the power of `var` so each power of `value` is formed once
        let mut by_power: BTreeMap<i32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.0.clone();
            let p = std::mem::replace(&mut rest[var], 0);
            by_power
                .entry(p)
                .or_insert_with(|| Poly::zero(self.ring))
                .add_term(Exponents(rest), c.clone());
        }
        let mut out = Poly::zero(self.ring);
        let mut power = Poly::one(self.ring);
        let mut current = 0i32;
        for (p, rest) in by_power {
            let factor = if p < 0 {
                let inv = inverse.as_ref().expect("checked above");
                Poly::constant(self.ring, num_traits::pow(inv.clone(), (-p) as usize))
            } else {
                while current < p {
                    power = &power * value;
                    current += 1;
                }
                power.clone()
            };
            out = &out + &(&rest * &factor);
        }
        Ok(out)
    }

    /// Substitutes a rational value for the width symbol and drops it from the ring.
    pub fn specialize_width(&self, a: &Rational) -> Result<Poly> {
        let Some(a_idx) = self.ring.a() else {
            return Ok(self.clone());
        };
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let target = self.ring.without_width();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let p = e.0[a_idx];
            let factor = if p >= 0 {
                num_traits::pow(a.clone(), p as usize)
            } else {
                num_traits::pow(a.recip(), (-p) as usize)
            };
            out.add_term(Exponents(e.0[..a_idx].to_vec()), c * factor);
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in a ring of at least the same dimension.
    /// Spatial variables keep their index, `y` and `a` map to their slots.
    pub fn embed(&self, target: Ring) -> Result<Poly> {
        let src = self.ring;
        if target.dim() < src.dim() {
            return Err(Error::DimensionTooLarge {
                requested: src.dim(),
                available: target.dim(),
            });
        }
        if src.has_width()
            && !target.has_width()
            && (self.degree_in(src.a().unwrap()).unwrap_or(0) != 0
                || self.min_degree_in(src.a().unwrap()).unwrap_or(0) != 0)
        {
            return Err(Error::WidthInPolynomial);
        }
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut exps = vec![0; target.nvars()];
            exps[..src.dim()].copy_from_slice(&e.0[..src.dim()]);
            exps[target.y()] = e.0[src.y()];
            if let (Some(sa), Some(ta)) = (src.a(), target.a()) {
                exps[ta] = e.0[sa];
            }
            out.add_term(Exponents(exps), c.clone());
        }
        Ok(out)
    }

    /// Exact evaluation at a point with one coordinate per ring variable.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::PointLength {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (&p, x) in e.0.iter().zip(point) {
                match p.cmp(&0) {
                    Ordering::Greater => t *= num_traits::pow(x.clone(), p as usize),
                    Ordering::Less => {
                        if x.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        t *= num_traits::pow(x.recip(), (-p) as usize);
                    }
                    Ordering::Equal => {}
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Floating-point evaluation, for numerical cross-checks only.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars(), "point length");
        self.terms
            .iter()
            .map(|(e, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                e.0.iter()
                    .zip(point)
                    .fold(c, |acc, (&p, &x)| acc * x.powi(p))
            })
            .sum()
    }

    /// True if every stored exponent of `var` is zero.
    pub fn is_free_of(&self, var: usize) -> bool {
        self.terms.keys().all(|e| e.0[var] == 0)
    }

    /// Whether the polynomial is odd in `var`, i.e. `p(-v) = -p(v)`.
    pub fn is_odd_in(&self, var: usize) -> bool {
        self.terms.keys().all(|e| e.0[var] % 2 != 0)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs)
            .expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs)
            .expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs)
            .expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
