//! The Poisson bracket of the symplectic double and the bracket-level checks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{RatMatrix, Rational};
use crate::chevalley::{restrict_to_cartan, RestrictError};
use crate::groebner::GroebnerBasis;
use crate::group::{CartanData, GroupError, SymplecticDouble};
use crate::invariants::{poly_to_row, InvariantBasis};
use crate::poly::{Poly, Ring};

pub const BRACKET_CONVENTION: &str = "{f,g} = sum_i (df/dx_i dg/dy_i - df/dy_i dg/dx_i)";
pub const MOMENT_NORMALIZATION: &str = "mu^A(v+phi) = phi(Av), equal to omega(m, Am)/2 on the double";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PoissonError {
    #[error("ring with {0} variables is not a symplectic double")]
    NotDouble(usize),
    #[error("brackets need polynomials in the same ring")]
    RingMismatch,
    #[error(transparent)]
    Restrict(#[from] RestrictError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Ring whose variables are `x_1..x_n, y_1..y_n` with `{x_i, y_j} = δ_ij`.
#[derive(Debug, Clone)]
pub struct BracketContext {
    ring: Ring,
    n: usize,
}

impl BracketContext {
    pub fn new(ring: &Ring) -> Result<Self, PoissonError> {
        let nv = ring.nvars();
        if nv % 2 != 0 {
            return Err(PoissonError::NotDouble(nv));
        }
        Ok(BracketContext {
            ring: ring.clone(),
            n: nv / 2,
        })
    }

    pub fn for_double(d: &SymplecticDouble) -> Self {
        BracketContext {
            ring: d.ring().clone(),
            n: d.n(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly, PoissonError> {
        let zero = Poly::zero(&self.ring);
        if !f.same_ring(&zero) || !g.same_ring(&zero) {
            return Err(PoissonError::RingMismatch);
        }
        let mut out = zero;
        for i in 0..self.n {
            let (x, y) = (i, self.n + i);
            let fx = f.partial_derivative(x);
            let fy = f.partial_derivative(y);
            if fx.is_zero() && fy.is_zero() {
                continue;
            }
            out = &out + &(&fx * &g.partial_derivative(y));
            out = &out - &(&fy * &g.partial_derivative(x));
        }
        Ok(out)
    }
}

/// Bracket on a ring whose first half of variables pairs with the second half.
pub fn bracket(f: &Poly, g: &Poly) -> Result<Poly, PoissonError> {
    BracketContext::new(f.ring())?.bracket(f, g)
}

/// Outcome of a family of exact bracket identities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoissonCheck {
    pub passed: bool,
    pub checked: usize,
    /// Human-readable descriptions of the identities that failed.
    pub failures: Vec<String>,
}

impl PoissonCheck {
    fn new() -> Self {
        PoissonCheck {
            passed: true,
            checked: 0,
            failures: vec![],
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            if self.failures.len() < 20 {
                self.failures.push(describe());
            }
        }
    }
}

/// `{f, μ^A} = 0` identically for every invariant generator `f` and moment generator.
pub fn check_invariant_central(d: &SymplecticDouble, invariants: &[Poly]) -> PoissonCheck {
    let ctx = BracketContext::for_double(d);
    let moments = d.moment_generators();
    let mut check = PoissonCheck::new();
    for f in invariants {
        for (k, mu) in moments.iter().enumerate() {
            let b = ctx.bracket(f, mu).expect("same ring");
            check.record(b.is_zero(), || format!("{{{}, mu_{}}} = {}", f.to_text(), k + 1, b.to_text()));
        }
    }
    check
}

/// `{μ^{A_i}, μ^{A_j}} = Σ_k c_ij^k μ^{A_k}`; `None` when no structure constants are known.
pub fn moment_equivariance(d: &SymplecticDouble) -> Option<PoissonCheck> {
    let ctx = BracketContext::for_double(d);
    let moments = d.moment_generators();
    let r = moments.len();
    let zero = Poly::zero(d.ring());
    let expected: Box<dyn Fn(usize, usize) -> Poly> = match d.structure_constants() {
        Some(c) => {
            let c = c.clone();
            let moments = moments.clone();
            Box::new(move |i, j| {
                let mut p = zero.clone();
                for (k, mu) in moments.iter().enumerate() {
                    p = &p + &mu.scale(&c[i][j][k]);
                }
                p
            })
        }
        None if d.double_weights().is_some() => Box::new(move |_, _| zero.clone()),
        None => return None,
    };
    let mut check = PoissonCheck::new();
    for i in 0..r {
        for j in 0..r {
            let lhs = ctx.bracket(&moments[i], &moments[j]).expect("same ring");
            let rhs = expected(i, j);
            check.record(lhs == rhs, || {
                format!("{{mu_{}, mu_{}}} = {} but mu of the commutator is {}", i + 1, j + 1, lhs.to_text(), rhs.to_text())
            });
        }
    }
    Some(check)
}

/// Invariants of degree `≤ bound` lying in the moment ideal: the kernel of the normal
/// form on each degree-`d` invariant space.
pub fn invariant_ideal_elements(inv: &InvariantBasis, gb: &GroebnerBasis, bound: u32) -> Vec<Poly> {
    let mut out = Vec::new();
    for d in 1..=bound.min(inv.degree_bound) {
        let basis = &inv.by_degree[d as usize];
        if basis.is_empty() {
            continue;
        }
        let images: Vec<Poly> = basis.iter().map(|b| gb.normal_form(b)).collect();
        let mut index = std::collections::HashMap::new();
        let rows: Vec<_> = images.iter().map(|p| poly_to_row(p, &mut index)).collect();
        // kernel of the map basis -> normal forms: columns are basis elements
        let mut m = RatMatrix::zeros(index.len(), basis.len());
        for (col, row) in rows.iter().enumerate() {
            for (r, v) in row {
                m[(*r, col)] = v.clone();
            }
        }
        for v in crate::arith::rat_kernel(&m) {
            let p = basis.iter().zip(&v).fold(Poly::zero(&inv.ring), |acc, (b, c)| &acc + &b.scale(c));
            if !p.is_zero() {
                out.push(p.primitive());
            }
        }
    }
    out
}

/// `{h, f} ∈ I` for every invariant `h ∈ I` of degree `≤ bound` and invariant generator `f`.
pub fn check_poisson_ideal(d: &SymplecticDouble, inv: &InvariantBasis, gb: &GroebnerBasis, bound: u32) -> PoissonCheck {
    let ctx = BracketContext::for_double(d);
    let mut check = PoissonCheck::new();
    for h in invariant_ideal_elements(inv, gb, bound) {
        for f in &inv.generators {
            let b = ctx.bracket(&h, f).expect("same ring");
            let r = gb.normal_form(&b);
            check.record(r.is_zero(), || format!("NF({{{}, {}}}) = {}", h.to_text(), f.to_text(), r.to_text()));
        }
    }
    check
}

/// Re-express the `c∨` basis so that it pairs with `c` as the identity matrix.
pub fn dual_normalized(cd: &CartanData) -> Result<CartanData, PoissonError> {
    let p = cd.pairing_matrix();
    let m = p
        .inverse()
        .ok_or_else(|| GroupError::Dimension("pairing between c and c∨ is degenerate".into()))?;
    let n = cd.c_dual.first().map_or(0, Vec::len);
    let r = cd.rank();
    let c_dual = (0..r)
        .map(|b| {
            (0..n)
                .map(|i| (0..r).map(|k| &cd.c_dual[k][i] * &m[(k, b)]).sum::<Rational>())
                .collect()
        })
        .collect();
    Ok(CartanData {
        c_dual,
        ..cd.clone()
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Compatibility {
    /// Restriction of `{f, g}`.
    pub restricted_bracket: Poly,
    /// `{f|, g|}` on `c ⊕ c∨`.
    pub bracket_of_restrictions: Poly,
}

impl Compatibility {
    pub fn holds(&self) -> bool {
        self.restricted_bracket == self.bracket_of_restrictions
    }
}

/// Compare `restrict({f,g})` with `{restrict f, restrict g}` using dual bases.
pub fn bracket_compatibility(f: &Poly, g: &Poly, cd: &CartanData) -> Result<Compatibility, PoissonError> {
    let cd = dual_normalized(cd)?;
    let lhs = restrict_to_cartan(&bracket(f, g)?, &cd)?;
    let rf = restrict_to_cartan(f, &cd)?;
    let rg = restrict_to_cartan(g, &cd)?;
    Ok(Compatibility {
        restricted_bracket: lhs,
        bracket_of_restrictions: bracket(&rf, &rg)?,
    })
}
