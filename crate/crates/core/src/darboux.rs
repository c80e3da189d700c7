//! Formal Darboux normalization of a closed 2-form with polynomial coefficients.
//!
//! A 2-form is `ω = Σ_{a<b} w_ab dz_a∧dz_b`; its constant part is written
//! `Σ_{α,β} Ω_{αβ} dz_α∧dz_β` with `Ω` skew, so `Ω_ab = w_ab(0)/2`. The normalizing
//! coordinates `ξ = z + ξ⁽²⁾ + ξ⁽³⁾ + …` satisfy `Σ Ω_{αβ} dξ_α∧dξ_β = ω`.
//!
//! In coefficient degree `m ≥ 1` the terms linear in `ξ⁽ᵐ⁺¹⁾` are
//! `d(2 Σ_β (Ωᵀξ⁽ᵐ⁺¹⁾)_β dz_β)`, so with `R` the remaining degree-`m` discrepancy and
//! `ψ = ι_E R / (m+2)` its radial potential, `ξ⁽ᵐ⁺¹⁾` solves `2Ωᵀ ξ⁽ᵐ⁺¹⁾ = ψ`.
//! Nothing makes `ξ` equivariant under a group fixing the base point.

use num_traits::Zero;
use thiserror::Error;

use crate::arith::{rat, RatMatrix, Rational};
use crate::poly::{Poly, Ring};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DarbouxError {
    #[error("coefficient matrix must be {0}x{0} and skew")]
    Shape(usize),
    #[error("the form is not closed in coefficient degree {0}")]
    NotClosed(u32),
    #[error("constant part of the form is singular")]
    Singular,
    #[error("the Poincaré potential needs a homogeneous part of positive degree")]
    DegreeZero,
    #[error("pullback differs from the form in coefficient degree {0}")]
    PullbackMismatch(u32),
}

/// `Σ_{a<b} w_ab dz_a∧dz_b`, kept as the full skew matrix `w`, truncated at coefficient degree `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalTwoForm {
    ring: Ring,
    w: Vec<Vec<Poly>>,
    truncation: u32,
}

fn truncate(p: &Poly, d: u32) -> Poly {
    let mut out = Poly::zero(p.ring());
    for (m, c) in p.terms() {
        if m.degree() <= d {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

impl FormalTwoForm {
    /// From coefficients `w_ab` for `a < b`, listed row by row.
    pub fn from_upper(ring: &Ring, upper: &[((usize, usize), Poly)], truncation: u32) -> Result<Self, DarbouxError> {
        let n = ring.nvars();
        let mut w = vec![vec![Poly::zero(ring); n]; n];
        for ((a, b), p) in upper {
            if a >= b || *b >= n {
                return Err(DarbouxError::Shape(n));
            }
            let p = truncate(p, truncation);
            w[*b][*a] = p.neg();
            w[*a][*b] = p;
        }
        Ok(FormalTwoForm {
            ring: ring.clone(),
            w,
            truncation,
        })
    }

    pub fn from_skew(ring: &Ring, w: Vec<Vec<Poly>>, truncation: u32) -> Result<Self, DarbouxError> {
        let n = ring.nvars();
        if w.len() != n || w.iter().any(|r| r.len() != n) {
            return Err(DarbouxError::Shape(n));
        }
        for a in 0..n {
            for b in 0..n {
                if w[a][b] != w[b][a].neg() {
                    return Err(DarbouxError::Shape(n));
                }
            }
        }
        let w = w.iter().map(|r| r.iter().map(|p| truncate(p, truncation)).collect()).collect();
        Ok(FormalTwoForm {
            ring: ring.clone(),
            w,
            truncation,
        })
    }

    /// `dλ` for a 1-form `λ = Σ_b λ_b dz_b`.
    pub fn exterior_derivative(ring: &Ring, lambda: &[Poly], truncation: u32) -> Result<Self, DarbouxError> {
        let n = ring.nvars();
        if lambda.len() != n {
            return Err(DarbouxError::Shape(n));
        }
        let mut w = vec![vec![Poly::zero(ring); n]; n];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    w[a][b] = &lambda[b].partial_derivative(a) - &lambda[a].partial_derivative(b);
                }
            }
        }
        Self::from_skew(ring, w, truncation)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn coefficient(&self, a: usize, b: usize) -> &Poly {
        &self.w[a][b]
    }

    /// `Ω` with `Ω_ab = w_ab(0)/2`.
    pub fn constant_part(&self) -> RatMatrix {
        let n = self.w.len();
        let half = Rational::new(1.into(), 2.into());
        let mut m = RatMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                m[(a, b)] = self.w[a][b].constant_term() * &half;
            }
        }
        m
    }

    /// Homogeneous part of coefficient degree `m`, as a skew matrix.
    pub fn homogeneous_part(&self, m: u32) -> Vec<Vec<Poly>> {
        self.w.iter().map(|r| r.iter().map(|p| p.homogeneous_part(m)).collect()).collect()
    }

    /// `dω` coefficients vanish in every degree below `upto`.
    pub fn closed_below(&self, upto: u32) -> Result<(), DarbouxError> {
        for m in 1..=upto {
            if !is_closed(&self.homogeneous_part(m)) {
                return Err(DarbouxError::NotClosed(m));
            }
        }
        Ok(())
    }
}

fn is_closed(w: &[Vec<Poly>]) -> bool {
    let n = w.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let s = &(&w[b][c].partial_derivative(a) - &w[a][c].partial_derivative(b)) + &w[a][b].partial_derivative(c);
                if !s.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// `ψ` with `dψ` equal to a closed 2-form whose coefficients are homogeneous of degree
/// `m ≥ 1`: the radial homotopy `ψ = ι_E ω / (m+2)`.
pub fn poincare_potential(part: &[Vec<Poly>], m: u32) -> Result<Vec<Poly>, DarbouxError> {
    if m == 0 {
        return Err(DarbouxError::DegreeZero);
    }
    let n = part.len();
    if n == 0 {
        return Ok(vec![]);
    }
    if !is_closed(part) {
        return Err(DarbouxError::NotClosed(m));
    }
    let ring = part[0].first().map(|p| p.ring().clone()).ok_or(DarbouxError::Shape(n))?;
    let scale = Rational::new(1.into(), (m as i64 + 2).into());
    Ok((0..n)
        .map(|b| {
            let mut psi = Poly::zero(&ring);
            for a in 0..n {
                if !part[a][b].is_zero() {
                    psi = &psi + &(&Poly::var(&ring, a) * &part[a][b]);
                }
            }
            psi.scale(&scale)
        })
        .collect())
}

/// `ξ_i = z_i + higher-order terms`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateChange {
    pub xi: Vec<Poly>,
}

impl CoordinateChange {
    pub fn identity(ring: &Ring) -> Self {
        CoordinateChange {
            xi: (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect(),
        }
    }

    /// Coefficients of `Σ Ω_{αβ} dξ_α∧dξ_β` as a skew matrix.
    pub fn pullback(&self, omega: &RatMatrix) -> Vec<Vec<Poly>> {
        let n = self.xi.len();
        let ring = self.xi[0].ring().clone();
        let jac: Vec<Vec<Poly>> = self.xi.iter().map(|x| (0..n).map(|a| x.partial_derivative(a)).collect()).collect();
        let mut w = vec![vec![Poly::zero(&ring); n]; n];
        for a in 0..n {
            for b in a + 1..n {
                let mut s = Poly::zero(&ring);
                for al in 0..n {
                    for be in 0..n {
                        let o = &omega[(al, be)];
                        if o.is_zero() {
                            continue;
                        }
                        let t = &(&jac[al][a] * &jac[be][b]) - &(&jac[al][b] * &jac[be][a]);
                        s = &s + &t.scale(o);
                    }
                }
                w[b][a] = s.neg();
                w[a][b] = s;
            }
        }
        w
    }
}

#[derive(Debug, Clone)]
pub struct DarbouxResult {
    pub change: CoordinateChange,
    pub omega: RatMatrix,
    /// Pullback and form agree in every coefficient degree `≤ verified_through`.
    pub verified_through: u32,
}

/// Coordinates `ξ` with `Σ Ω dξ∧dξ = ω` through coefficient degree `D-2`, certified by
/// recomputing the pullback exactly.
pub fn darboux_normalize(form: &FormalTwoForm) -> Result<DarbouxResult, DarbouxError> {
    let n = form.w.len();
    let d = form.truncation;
    let through = d.saturating_sub(2);
    let omega = form.constant_part();
    if n == 0 {
        return Ok(DarbouxResult {
            change: CoordinateChange { xi: vec![] },
            omega,
            verified_through: through,
        });
    }
    form.closed_below(through)?;
    let solve = omega.transpose().scale(&rat(2)).inverse().ok_or(DarbouxError::Singular)?;
    let ring = form.ring.clone();
    let mut change = CoordinateChange::identity(&ring);
    for m in 1..=through {
        let current = change.pullback(&omega);
        let target = form.homogeneous_part(m);
        let residual: Vec<Vec<Poly>> = (0..n)
            .map(|a| (0..n).map(|b| &target[a][b] - &current[a][b].homogeneous_part(m)).collect())
            .collect();
        let psi = poincare_potential(&residual, m)?;
        for (i, x) in change.xi.iter_mut().enumerate() {
            let mut add = Poly::zero(&ring);
            for (b, p) in psi.iter().enumerate() {
                if !solve[(i, b)].is_zero() {
                    add = &add + &p.scale(&solve[(i, b)]);
                }
            }
            *x = &*x + &add;
        }
    }
    let pulled = change.pullback(&omega);
    for m in 0..=through {
        for a in 0..n {
            for b in a + 1..n {
                if pulled[a][b].homogeneous_part(m) != form.w[a][b].homogeneous_part(m) {
                    return Err(DarbouxError::PullbackMismatch(m));
                }
            }
        }
    }
    Ok(DarbouxResult {
        change,
        omega,
        verified_through: through,
    })
}
