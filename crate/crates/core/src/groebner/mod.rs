//! Buchberger-based Gröbner engine.
//!
//! ```
//! use chevalley_core::groebner::{eliminate, GbOptions, Ideal};
//! use chevalley_core::poly::{Poly, PolyRing};
//!
//! let r = PolyRing::new(&["t", "x", "y"]).unwrap();
//! let i = Ideal::parse(&["x - t^2", "y - t^3"], &r).unwrap();
//! let e = eliminate(&i, 1, &GbOptions::default()).unwrap();
//! let s = e.ring().clone();
//! assert_eq!(e.generators(), &[Poly::parse("x^3 - y^2", &s).unwrap()]);
//! ```

mod cache;
mod engine;
mod hilbert;

use std::sync::Arc;
use std::time::Instant;

use num_traits::One;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::arith::Rational;
use crate::poly::{Monomial, MonomialOrder, Poly, PolyError, PolyRing, Ring};

pub use cache::{cached_buchberger, GbCache, CACHE_ENV};
pub use hilbert::{hilbert_series, hilbert_series_of_basis, krull_dimension, krull_dimension_of_basis, HilbertSeriesRat};

use engine::{Ctx, IPoly, Reducers};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroebnerError {
    #[error("budget exceeded after {steps} reductions and {seconds:.1} s ({which})")]
    Budget { steps: u64, seconds: f64, which: &'static str },
    #[error("ideal is not homogeneous for the ring grading")]
    NotHomogeneous,
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("cache error: {0}")]
    Cache(String),
}

/// Step and wall-clock limits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GbOptions {
    pub max_steps: u64,
    pub max_seconds: f64,
    /// For homogeneous input: stop once all remaining pairs exceed this degree.
    pub degree_cap: Option<u32>,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            max_steps: 1_000_000,
            max_seconds: 300.0,
            degree_cap: None,
        }
    }
}

pub struct Budget {
    pub steps: u64,
    max_steps: u64,
    max_seconds: f64,
    start: Instant,
}

impl Budget {
    pub fn new(opts: &GbOptions) -> Self {
        engine::new_budget(opts.max_steps, opts.max_seconds)
    }

    pub fn tick(&mut self) -> Result<(), GroebnerError> {
        self.steps += 1;
        if self.steps > self.max_steps {
            return Err(self.exceeded("steps"));
        }
        if self.steps % 128 == 0 && self.start.elapsed().as_secs_f64() > self.max_seconds {
            return Err(self.exceeded("seconds"));
        }
        Ok(())
    }

    fn exceeded(&self, which: &'static str) -> GroebnerError {
        GroebnerError::Budget {
            steps: self.steps,
            seconds: self.start.elapsed().as_secs_f64(),
            which,
        }
    }
}

/// Finitely generated ideal; zero generators are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Self, GroebnerError> {
        if gens.iter().any(|g| !Arc::ptr_eq(g.ring(), ring) && **g.ring() != **ring) {
            return Err(PolyError::RingMismatch.into());
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn parse<S: AsRef<str>>(texts: &[S], ring: &Ring) -> Result<Self, GroebnerError> {
        let gens = texts
            .iter()
            .map(|t| Poly::parse(t.as_ref(), ring))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, gens)
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: vec![],
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Poly::is_homogeneous)
    }

    /// Content hash of the ring, the order and the sorted canonical generator texts.
    pub fn fingerprint(&self, order: &MonomialOrder) -> String {
        let mut texts: Vec<String> = self.gens.iter().map(|g| g.monic(&MonomialOrder::GrevLex).to_text()).collect();
        texts.sort();
        texts.dedup();
        let mut h = Sha256::new();
        h.update(self.ring.names().join(",").as_bytes());
        h.update(b"|");
        h.update(
            self.ring
                .weights()
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(",")
                .as_bytes(),
        );
        h.update(b"|");
        h.update(order.name().as_bytes());
        for t in &texts {
            h.update(b"|");
            h.update(t.as_bytes());
        }
        hex::encode(h.finalize())
    }
}

/// Reduced Gröbner basis: monic, sorted by ascending leading monomial.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    basis: Vec<Poly>,
    fingerprint: String,
    truncated: bool,
    reductions: u64,
    int_basis: Vec<IPoly>,
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("order", &self.order)
            .field("basis", &self.basis)
            .field("truncated", &self.truncated)
            .finish()
    }
}

impl GroebnerBasis {
    pub(crate) fn from_parts(
        ring: &Ring,
        order: MonomialOrder,
        basis: Vec<Poly>,
        fingerprint: String,
        truncated: bool,
        reductions: u64,
    ) -> Self {
        let ctx = Ctx {
            order,
            weights: ring.weights(),
        };
        let int_basis = basis.iter().map(|p| IPoly::from_poly(p, ctx)).collect();
        GroebnerBasis {
            ring: ring.clone(),
            order,
            basis,
            fingerprint,
            truncated,
            reductions,
            int_basis,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// True if a degree cap stopped the computation early.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn reductions(&self) -> u64 {
        self.reductions
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.int_basis.iter().map(|p| p.lm().clone()).collect()
    }

    pub fn as_ideal(&self) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            gens: self.basis.clone(),
        }
    }

    fn ctx(&self) -> Ctx<'_> {
        Ctx {
            order: self.order,
            weights: self.ring.weights(),
        }
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        assert!(p.same_ring(&Poly::zero(&self.ring)), "normal form in a different ring");
        if p.is_zero() {
            return p.clone();
        }
        let ctx = self.ctx();
        let f = IPoly::from_poly(p, ctx);
        let reducers = Reducers::new(self.int_basis.iter().collect());
        let mut budget = engine::new_budget(u64::MAX, f64::INFINITY);
        let (r, scale) = engine::reduce(&f, &reducers, ctx, &mut budget, true).expect("unbounded budget");
        // p = c*f with c the primitive scaling, s*f ≡ r
        let c = first_ratio(p, &f);
        let factor = c / scale;
        Poly::from_terms(
            &self.ring,
            r.terms
                .into_iter()
                .map(|(m, k)| (m, Rational::from_integer(k) * &factor)),
        )
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Every S-polynomial reduces to zero and the basis is reduced.
    pub fn verify(&self) -> bool {
        let ctx = self.ctx();
        for (k, f) in self.int_basis.iter().enumerate() {
            if !f.lc().is_one() && self.basis[k].leading_term(&self.order).map(|t| t.1) != Ok(Rational::one()) {
                return false;
            }
            for (l, g) in self.int_basis.iter().enumerate() {
                if k != l && g.lm().divides(f.lm()) {
                    return false;
                }
            }
        }
        let n = self.basis.len();
        for i in 0..n {
            for j in i + 1..n {
                let (f, g) = (&self.basis[i], &self.basis[j]);
                let (mf, _) = f.leading_term(&self.order).unwrap();
                let (mg, _) = g.leading_term(&self.order).unwrap();
                let l = mf.lcm(&mg);
                let s = &f.mul_monomial(&mf.quotient_of(&l), &Rational::one())
                    - &g.mul_monomial(&mg.quotient_of(&l), &Rational::one());
                if !self.contains(&s) {
                    return false;
                }
            }
        }
        let _ = ctx;
        true
    }
}

fn first_ratio(p: &Poly, f: &IPoly) -> Rational {
    let (m, k) = &f.terms[0];
    p.coefficient(m) / Rational::from_integer(k.clone())
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder, opts: &GbOptions) -> Result<GroebnerBasis, GroebnerError> {
    order.validate(ideal.ring.nvars())?;
    let mut budget = Budget::new(opts);
    let ctx = Ctx {
        order,
        weights: ideal.ring.weights(),
    };
    let cap = if ideal.is_homogeneous() { opts.degree_cap } else { None };
    let out = engine::buchberger(&ideal.gens, ctx, &mut budget, cap)?;
    let basis: Vec<Poly> = out.basis.iter().map(|p| p.to_poly(&ideal.ring)).collect();
    Ok(GroebnerBasis {
        ring: ideal.ring.clone(),
        order,
        basis,
        fingerprint: ideal.fingerprint(&order),
        truncated: out.truncated,
        reductions: out.reductions,
        int_basis: out.basis,
    })
}

/// `NF(p)` with respect to `gb`.
pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Poly {
    gb.normal_form(p)
}

fn subring(ring: &Ring, from: usize) -> Ring {
    PolyRing::with_weights(&ring.names()[from..], &ring.weights()[from..]).expect("subset of valid names")
}

fn restrict_to_tail(p: &Poly, k: usize, target: &Ring) -> Poly {
    Poly::from_terms(
        target,
        p.terms().map(|(m, c)| (Monomial(m.0[k..].iter().copied().collect()), c.clone())),
    )
}

/// Generators of `ideal ∩ Q[x_{k+1}, ..]`, in the ring of the remaining variables.
pub fn eliminate(ideal: &Ideal, k: usize, opts: &GbOptions) -> Result<Ideal, GroebnerError> {
    let n = ideal.ring.nvars();
    MonomialOrder::Block(k).validate(n)?;
    let gb = buchberger(ideal, MonomialOrder::Block(k), opts)?;
    Ok(eliminated_part(&gb, k))
}

fn eliminated_part(gb: &GroebnerBasis, k: usize) -> Ideal {
    let target = subring(&gb.ring, k);
    let gens = gb
        .basis
        .iter()
        .filter(|p| p.terms().all(|(m, _)| m.0[..k].iter().all(|&e| e == 0)))
        .map(|p| restrict_to_tail(p, k, &target))
        .collect();
    Ideal { ring: target, gens }
}

/// Result of a radical membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalVerdict {
    pub member: bool,
    /// Smallest `k ≤ cap` with `p^k ∈ I`, when one exists.
    pub exponent: Option<u32>,
}

/// Decide `p ∈ √I`: explicit powers up to `cap` first, then the Rabinowitsch test.
pub fn radical_member(p: &Poly, gb: &GroebnerBasis, cap: u32, opts: &GbOptions) -> Result<RadicalVerdict, GroebnerError> {
    let mut power = Poly::one(&gb.ring);
    for k in 1..=cap.max(1) {
        power = gb.normal_form(&(&power * p));
        if power.is_zero() {
            return Ok(RadicalVerdict {
                member: true,
                exponent: Some(k),
            });
        }
    }
    let ring = &gb.ring;
    let mut names = vec![fresh_name(ring, "rab")];
    names.extend(ring.names().iter().cloned());
    let mut weights = vec![1];
    weights.extend_from_slice(ring.weights());
    let big = PolyRing::with_weights(&names, &weights)?;
    let embed: Vec<Poly> = (0..ring.nvars()).map(|i| Poly::var(&big, i + 1)).collect();
    let mut gens: Vec<Poly> = gb
        .basis
        .iter()
        .map(|g| g.substitute(&embed, &big))
        .collect::<Result<_, _>>()?;
    let pe = p.substitute(&embed, &big)?;
    gens.push(&Poly::one(&big) - &(&Poly::var(&big, 0) * &pe));
    let g2 = buchberger(&Ideal::new(&big, gens)?, MonomialOrder::GrevLex, opts)?;
    Ok(RadicalVerdict {
        member: g2.is_unit(),
        exponent: None,
    })
}

/// `I ∩ Q[x_{k+1}..]` convenience for callers holding a basis of `I` in another order.
pub fn eliminate_with_seed(gb: &GroebnerBasis, k: usize, opts: &GbOptions) -> Result<Ideal, GroebnerError> {
    eliminate(&gb.as_ideal(), k, opts)
}

pub(crate) fn fresh_name(ring: &PolyRing, base: &str) -> String {
    let mut name = base.to_string();
    while ring.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// Presentation of the image of `Q[T_1..T_s] → R/I`, `T_k ↦ g_k`.
#[derive(Debug, Clone)]
pub struct SubalgebraRelations {
    /// Ring of tag variables, graded by the generator degrees.
    pub tag_ring: Ring,
    pub relations: Ideal,
    /// Reduced basis of the relation ideal (grevlex on the tag ring).
    pub relation_basis: GroebnerBasis,
}

/// Relations among `gens` modulo `ideal`, by eliminating the original variables from
/// `I + (T_k - g_k)`. `seed`, when given, is a Gröbner basis of `I` used in place of
/// its generators.
pub fn subalgebra_intersection(
    ideal: &Ideal,
    gens: &[Poly],
    seed: Option<&GroebnerBasis>,
    opts: &GbOptions,
) -> Result<SubalgebraRelations, GroebnerError> {
    let ring = &ideal.ring;
    let n = ring.nvars();
    let s = gens.len();
    let mut tag_names = Vec::with_capacity(s);
    let mut tag_weights = Vec::with_capacity(s);
    for (k, g) in gens.iter().enumerate() {
        if !g.same_ring(&Poly::zero(ring)) {
            return Err(PolyError::RingMismatch.into());
        }
        tag_names.push(fresh_name(ring, &format!("T{}", k + 1)));
        let d = if g.is_homogeneous() { g.weighted_degree().unwrap_or(1).max(1) } else { 1 };
        tag_weights.push(d);
    }
    let tag_ring = PolyRing::with_weights(&tag_names, &tag_weights)?;
    if s == 0 {
        let relations = Ideal::zero(&tag_ring);
        let relation_basis = buchberger(&relations, MonomialOrder::GrevLex, opts)?;
        return Ok(SubalgebraRelations {
            tag_ring,
            relations,
            relation_basis,
        });
    }
    let mut names: Vec<String> = ring.names().to_vec();
    names.extend(tag_names.iter().cloned());
    let mut weights: Vec<u32> = ring.weights().to_vec();
    weights.extend(&tag_weights);
    let big = PolyRing::with_weights(&names, &weights)?;
    let embed: Vec<Poly> = (0..n).map(|i| Poly::var(&big, i)).collect();
    let base: Vec<Poly> = match seed {
        Some(gb) => gb.basis.clone(),
        None => ideal.gens.clone(),
    };
    let mut all: Vec<Poly> = base
        .iter()
        .map(|g| g.substitute(&embed, &big))
        .collect::<Result<_, _>>()?;
    for (k, g) in gens.iter().enumerate() {
        all.push(&Poly::var(&big, n + k) - &g.substitute(&embed, &big)?);
    }
    let gb = buchberger(&Ideal::new(&big, all)?, MonomialOrder::Block(n), opts)?;
    let elim = eliminated_part(&gb, n);
    let relations = Ideal::new(&tag_ring, elim.gens.into_iter().map(|p| p.with_ring(&tag_ring)).collect())?;
    let relation_basis = buchberger(&relations, MonomialOrder::GrevLex, opts)?;
    Ok(SubalgebraRelations {
        tag_ring,
        relations,
        relation_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, RatMatrix};
    use proptest::prelude::*;

    fn ring(names: &[&str]) -> Ring {
        PolyRing::new(names).unwrap()
    }

    fn gb(texts: &[&str], r: &Ring, order: MonomialOrder) -> GroebnerBasis {
        buchberger(&Ideal::parse(texts, r).unwrap(), order, &GbOptions::default()).unwrap()
    }

    #[test]
    fn cuspidal_cubic() {
        let r = ring(&["t", "x", "y"]);
        let g = gb(&["x - t^2", "y - t^3"], &r, MonomialOrder::Lex);
        assert!(g.verify());
        let cusp = Poly::parse("y^2 - x^3", &r).unwrap();
        assert!(g.basis().iter().any(|p| *p == cusp || *p == cusp.neg()));
    }

    #[test]
    fn trivial_bases() {
        let r = ring(&["x", "y"]);
        let g = gb(&["x", "y"], &r, MonomialOrder::GrevLex);
        assert_eq!(g.basis(), &[Poly::parse("y", &r).unwrap(), Poly::parse("x", &r).unwrap()]);
        let g = gb(&["x^2 - 1", "x - 1"], &r, MonomialOrder::GrevLex);
        assert_eq!(g.basis(), &[Poly::parse("x - 1", &r).unwrap()]);
        let g = gb(&["x^2 + 1", "x"], &r, MonomialOrder::GrevLex);
        assert!(g.is_unit());
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y"]);
        let g = gb(&["x^2 - y"], &r, MonomialOrder::GrevLex);
        let nf = g.normal_form(&Poly::parse("x^3", &r).unwrap());
        assert_eq!(nf, Poly::parse("x*y", &r).unwrap());
        assert!(g.normal_form(&Poly::parse("x^4 - y^2", &r).unwrap()).is_zero());
        let g = gb(&["x", "y"], &r, MonomialOrder::GrevLex);
        assert_eq!(g.normal_form(&Poly::one(&r)), Poly::one(&r));
        let g = gb(&["2*x^2 - 3*y"], &r, MonomialOrder::GrevLex);
        assert_eq!(g.normal_form(&Poly::parse("x^2", &r).unwrap()), Poly::parse("3/2*y", &r).unwrap());
    }

    #[test]
    fn elimination_examples() {
        let r = ring(&["t", "x", "y"]);
        let opts = GbOptions::default();
        let e = eliminate(&Ideal::parse(&["x - t^2", "y - t^3"], &r).unwrap(), 1, &opts).unwrap();
        assert_eq!(e.generators().len(), 1);
        assert_eq!(e.generators()[0], Poly::parse("x^3 - y^2", e.ring()).unwrap());
        let e = eliminate(&Ideal::parse(&["t*x - 1"], &r).unwrap(), 1, &opts).unwrap();
        assert!(e.generators().is_empty());
        let e = eliminate(&Ideal::parse(&["t - x", "t - y"], &r).unwrap(), 1, &opts).unwrap();
        assert_eq!(e.generators(), &[Poly::parse("x - y", e.ring()).unwrap()]);
        assert!(eliminate(&Ideal::zero(&r), 3, &opts).is_err());
    }

    #[test]
    fn radical_examples() {
        let r = ring(&["x", "y"]);
        let opts = GbOptions::default();
        let x = Poly::var(&r, 0);
        let g = gb(&["x^2"], &r, MonomialOrder::GrevLex);
        assert_eq!(radical_member(&x, &g, 4, &opts).unwrap(), RadicalVerdict { member: true, exponent: Some(2) });
        let g = gb(&["y"], &r, MonomialOrder::GrevLex);
        assert_eq!(radical_member(&x, &g, 4, &opts).unwrap(), RadicalVerdict { member: false, exponent: None });
        let g = gb(&["x^2", "y^2"], &r, MonomialOrder::GrevLex);
        let p = Poly::parse("x + y", &r).unwrap();
        assert_eq!(radical_member(&p, &g, 4, &opts).unwrap().exponent, Some(3));
        // exponent 5 needed, cap 4: Rabinowitsch still certifies membership
        let g = gb(&["x^5"], &r, MonomialOrder::GrevLex);
        assert_eq!(radical_member(&x, &g, 4, &opts).unwrap(), RadicalVerdict { member: true, exponent: None });
    }

    #[test]
    fn subalgebra_examples() {
        let r = ring(&["x", "y"]);
        let opts = GbOptions::default();
        let gens: Vec<Poly> = ["x^2", "x*y", "y^2"].iter().map(|t| Poly::parse(t, &r).unwrap()).collect();
        let rel = subalgebra_intersection(&Ideal::zero(&r), &gens, None, &opts).unwrap();
        let t = &rel.tag_ring;
        assert_eq!(rel.relation_basis.basis(), &[Poly::parse("T2^2 - T1*T3", t).unwrap()]);
        let rel = subalgebra_intersection(&Ideal::parse(&["x"], &r).unwrap(), &[Poly::var(&r, 0)], None, &opts).unwrap();
        assert_eq!(rel.relation_basis.basis(), &[Poly::parse("T1", &rel.tag_ring).unwrap()]);
    }

    #[test]
    fn budget_is_reported() {
        let r = ring(&["x", "y", "z"]);
        let opts = GbOptions {
            max_steps: 1,
            ..GbOptions::default()
        };
        let i = Ideal::parse(&["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"], &r).unwrap();
        assert!(matches!(
            buchberger(&i, MonomialOrder::GrevLex, &opts),
            Err(GroebnerError::Budget { which: "steps", .. })
        ));
    }

    #[test]
    fn fingerprint_ignores_generator_order_and_scale() {
        let r = ring(&["x", "y"]);
        let a = Ideal::parse(&["x^2 - y", "2*x*y"], &r).unwrap();
        let b = Ideal::parse(&["x*y", "x^2 - y"], &r).unwrap();
        assert_eq!(a.fingerprint(&MonomialOrder::GrevLex), b.fingerprint(&MonomialOrder::GrevLex));
        assert_ne!(a.fingerprint(&MonomialOrder::GrevLex), a.fingerprint(&MonomialOrder::Lex));
    }

    /// Up to three homogeneous generators in `a, b, c` of degree at most 3.
    fn homogeneous_ideal() -> impl Strategy<Value = Vec<Poly>> {
        let r = ring(&["a", "b", "c"]);
        let generator = (1u32..=3).prop_flat_map(|d| {
            let n = crate::poly::monomials_of_degree(&PolyRing::new(&["a", "b", "c"]).unwrap(), d).len();
            (Just(d), proptest::collection::vec((0..n, -3i64..=3), 1..4))
        });
        proptest::collection::vec(generator, 1..=3).prop_map(move |gens| {
            gens.into_iter()
                .map(|(d, terms)| {
                    let ms = crate::poly::monomials_of_degree(&r, d);
                    Poly::from_terms(&r, terms.into_iter().map(|(i, c)| (ms[i].clone(), rat(c))))
                })
                .filter(|p| !p.is_zero())
                .collect()
        })
    }

    /// Membership of a homogeneous `p` of degree `d` by linear algebra on the degree-`d` part of the ideal.
    fn member_by_linear_algebra(p: &Poly, gens: &[Poly], d: u32) -> bool {
        let r = p.ring();
        let cols = crate::poly::monomials_of_degree(r, d);
        let row = |q: &Poly| cols.iter().map(|m| q.coefficient(m)).collect::<Vec<_>>();
        let mut rows = vec![];
        for g in gens {
            let e = g.total_degree().unwrap();
            if e <= d {
                for m in crate::poly::monomials_of_degree(r, d - e) {
                    rows.push(row(&g.mul_monomial(&m, &rat(1))));
                }
            }
        }
        if rows.is_empty() {
            return p.is_zero();
        }
        let base = RatMatrix::from_rows(rows.clone()).rank();
        rows.push(row(p));
        RatMatrix::from_rows(rows).rank() == base
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bases_verify_and_normal_form_is_idempotent(gens in homogeneous_ideal(), probe in 0u64..1000) {
            let r = ring(&["a", "b", "c"]);
            let g = buchberger(&Ideal::new(&r, gens).unwrap(), MonomialOrder::GrevLex, &GbOptions::default()).unwrap();
            prop_assert!(g.verify());
            let p = Poly::parse(&format!("a^3 + {probe}*b*c - c^2 + a*b"), &r).unwrap();
            let nf = g.normal_form(&p);
            prop_assert_eq!(g.normal_form(&nf), nf);
        }

        #[test]
        fn membership_matches_linear_algebra(
            gens in homogeneous_ideal(),
            d in 1u32..=4,
            mults in proptest::collection::vec(-2i64..=2, 12),
            noise in proptest::collection::vec(-1i64..=1, 4),
        ) {
            let r = ring(&["a", "b", "c"]);
            let ms = crate::poly::monomials_of_degree(&r, d);
            let mut p = Poly::zero(&r);
            let mut k = mults.iter().cycle();
            for g in &gens {
                let e = g.total_degree().unwrap();
                if e <= d {
                    for m in crate::poly::monomials_of_degree(&r, d - e).into_iter().take(3) {
                        p = &p + &g.mul_monomial(&m, &rat(*k.next().unwrap()));
                    }
                }
            }
            for (m, c) in ms.iter().zip(&noise) {
                p.add_term(m.clone(), rat(*c));
            }
            let g = buchberger(&Ideal::new(&r, gens.clone()).unwrap(), MonomialOrder::GrevLex, &GbOptions::default()).unwrap();
            prop_assert_eq!(g.contains(&p), member_by_linear_algebra(&p, &gens, d));
        }

        #[test]
        fn hilbert_series_ignores_order(gens in homogeneous_ideal()) {
            let r = ring(&["a", "b", "c"]);
            let i = Ideal::new(&r, gens).unwrap();
            let opts = GbOptions::default();
            let lex = hilbert_series(&i, MonomialOrder::Lex, &opts).unwrap();
            let grevlex = hilbert_series(&i, MonomialOrder::GrevLex, &opts).unwrap();
            prop_assert!(lex.same_series(&grevlex));
        }

        #[test]
        fn dimension_is_pole_order(gens in homogeneous_ideal()) {
            let r = ring(&["a", "b", "c"]);
            let i = Ideal::new(&r, gens).unwrap();
            let opts = GbOptions::default();
            let h = hilbert_series(&i, MonomialOrder::GrevLex, &opts).unwrap();
            prop_assert_eq!(krull_dimension(&i, &opts).unwrap(), h.pole_order());
        }
    }
}
