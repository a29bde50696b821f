//! Assembly of the full polynomial solution in the layer and its exact
//! verification.
//!
//! With `ũ` a particular solution, `v = u - ũ` is harmonic with corrected
//! boundary data. The corrected data is split into monomials and each one is
//! matched to its basis polynomial, so the whole solution is a finite sum of
//! polynomials and every residual can be checked by exact arithmetic.

use num_traits::{Signed, Zero};

use crate::basis::Width;
use crate::dirichlet::{basis_u, basis_v};
use crate::error::{Error, Result};
use crate::mixed::{mixed_basis_u, mixed_basis_v};
use crate::particular::{monomials, particular_solution, ParticularForm};
use crate::polyring::{MultiIndex, Poly, Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    /// `u(x,0) = lower`, `u(x,a) = upper`.
    Dirichlet,
    /// `u(x,0) = lower`, `u_y(x,a) = upper`.
    DirichletNeumann,
}

/// Poisson problem `Δu = rhs` in `x ∈ R^n, 0 < y < width`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerProblem {
    dim: usize,
    width: Rational,
    rhs: Poly,
    kind: BoundaryKind,
    lower: Poly,
    upper: Poly,
}

impl LayerProblem {
    /// Validates the data: positive width, every polynomial in `Q[x1..xn, y]`,
    /// boundary data free of `y`.
    pub fn new(
        dim: usize,
        width: Rational,
        rhs: Poly,
        kind: BoundaryKind,
        lower: Poly,
        upper: Poly,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidProblem(
                "spatial dimension must be at least 1".into(),
            ));
        }
        if !width.is_positive() {
            return Err(Error::InvalidWidth(width.to_string()));
        }
        let ring = Ring::new(dim);
        for (name, p) in [("rhs", &rhs), ("lower", &lower), ("upper", &upper)] {
            if p.ring() != ring {
                if p.ring() == Ring::with_width(dim) {
                    return Err(Error::InvalidProblem(format!(
                        "{name} must not involve the width symbol `a`"
                    )));
                }
                return Err(Error::RingMismatch {
                    left: ring,
                    right: p.ring(),
                });
            }
        }
        for (name, p) in [("lower", &lower), ("upper", &upper)] {
            if !p.is_free_of(ring.y()) {
                return Err(Error::InvalidProblem(format!(
                    "boundary data `{name}` must not depend on y"
                )));
            }
        }
        Ok(LayerProblem {
            dim,
            width,
            rhs,
            kind,
            lower,
            upper,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn width(&self) -> &Rational {
        &self.width
    }

    pub fn rhs(&self) -> &Poly {
        &self.rhs
    }

    pub fn kind(&self) -> BoundaryKind {
        self.kind
    }

    pub fn lower(&self) -> &Poly {
        &self.lower
    }

    pub fn upper(&self) -> &Poly {
        &self.upper
    }

    pub fn ring(&self) -> Ring {
        Ring::new(self.dim)
    }

    fn width_mode(&self) -> Width {
        Width::Value(self.width.clone())
    }

    fn at_y(&self, p: &Poly, value: Rational) -> Poly {
        let ring = self.ring();
        p.substitute(ring.y(), &Poly::constant(ring, value))
            .expect("same ring")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionReport {
    pub u: Poly,
    /// `Δu - P`.
    pub residual_pde: Poly,
    /// `u(x,0) - lower`.
    pub residual_lower: Poly,
    /// `u(x,a) - upper`, or `u_y(x,a) - upper` for the mixed problem.
    pub residual_upper: Poly,
    pub verified: bool,
}

/// Exact residuals of a candidate solution. A candidate carrying the formal
/// width symbol is specialized to the problem's width first.
pub fn verify(u: &Poly, problem: &LayerProblem) -> Result<SolutionReport> {
    let ring = problem.ring();
    let u = if u.ring() == Ring::with_width(problem.dim) {
        u.specialize_width(&problem.width)?
    } else {
        u.clone()
    };
    ring.check_same(&u.ring())?;

    let residual_pde = &u.laplacian(problem.dim)? - &problem.rhs;
    let residual_lower = &problem.at_y(&u, Rational::zero()) - &problem.lower;
    let top = match problem.kind {
        BoundaryKind::Dirichlet => problem.at_y(&u, problem.width.clone()),
        BoundaryKind::DirichletNeumann => {
            problem.at_y(&u.diff(ring.y(), 1)?, problem.width.clone())
        }
    };
    let residual_upper = &top - &problem.upper;
    let verified = residual_pde.is_zero() && residual_lower.is_zero() && residual_upper.is_zero();
    Ok(SolutionReport {
        u,
        residual_pde,
        residual_lower,
        residual_upper,
        verified,
    })
}

/// `sum c_k * basis(k)` over the monomials `c_k x^k` of `data`.
fn expand_in_basis(
    data: &Poly,
    problem: &LayerProblem,
    basis: fn(&MultiIndex, usize, &Width) -> Result<Poly>,
) -> Result<Poly> {
    let width = problem.width_mode();
    let mut out = Poly::zero(problem.ring());
    for mono in monomials(data)? {
        debug_assert_eq!(mono.m, 0, "boundary data is free of y");
        let b = basis(&mono.k, problem.dim, &width)?;
        out = &out + &b.scale(&mono.coeff);
    }
    Ok(out)
}

/// Solves the problem starting from the default (layered) particular solution.
pub fn solve(problem: &LayerProblem) -> Result<SolutionReport> {
    solve_with(problem, ParticularForm::Layered)
}

/// Particular solution and the boundary data left for its harmonic
/// correction: `(ũ, lower - ũ(x,0), upper - ũ(x,a))`, with `ũ_y(x,a)` in
/// place of `ũ(x,a)` for the mixed problem.
pub fn reduce(problem: &LayerProblem, form: ParticularForm) -> Result<(Poly, Poly, Poly)> {
    let ring = problem.ring();
    let particular = particular_solution(&problem.rhs, problem.dim, form)?;
    let lower = &problem.lower - &problem.at_y(&particular, Rational::zero());
    let top = match problem.kind {
        BoundaryKind::Dirichlet => problem.at_y(&particular, problem.width.clone()),
        BoundaryKind::DirichletNeumann => {
            problem.at_y(&particular.diff(ring.y(), 1)?, problem.width.clone())
        }
    };
    let upper = &problem.upper - &top;
    Ok((particular, lower, upper))
}

pub fn solve_with(problem: &LayerProblem, form: ParticularForm) -> Result<SolutionReport> {
    let (particular, lower, upper) = reduce(problem, form)?;
    let harmonic = match problem.kind {
        BoundaryKind::Dirichlet => {
            &expand_in_basis(&lower, problem, basis_v)?
                + &expand_in_basis(&upper, problem, basis_u)?
        }
        BoundaryKind::DirichletNeumann => {
            &expand_in_basis(&lower, problem, mixed_basis_u)?
                + &expand_in_basis(&upper, problem, mixed_basis_v)?
        }
    };

    let report = verify(&(&particular + &harmonic), problem)?;
    if !report.verified {
        return Err(Error::Inconsistent(format!(
            "pde: {}; lower: {}; upper: {}",
            report.residual_pde, report.residual_lower, report.residual_upper
        )));
    }
    Ok(report)
}

/// Traces `u(b0, y)` and `u(b1, y)` on the vertical sides `x = b0`, `x = b1`
/// of a rectangle, for a solution in one spatial dimension.
pub fn rectangle_trace(u: &Poly, x_edges: (Rational, Rational)) -> Result<(Poly, Poly)> {
    let ring = u.ring();
    if ring.dim() != 1 {
        return Err(Error::UnsupportedDimension {
            expected: 1,
            got: ring.dim(),
        });
    }
    let side = |b: Rational| u.substitute(ring.x(0), &Poly::constant(ring, b));
    Ok((side(x_edges.0)?, side(x_edges.1)?))
}
