//! Integer-coefficient reduction core and the Buchberger loop.
//!
//! Polynomials are kept primitive over the integers with positive leading
//! coefficient while the basis is being built; reductions are fraction free and
//! the content is divided out periodically.

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Budget, GroebnerError};
use crate::arith::{common_denominator, Rational};
use crate::poly::{Monomial, MonomialOrder, Poly, Ring};

#[derive(Clone, Copy)]
pub(crate) struct Ctx<'a> {
    pub order: MonomialOrder,
    pub weights: &'a [u32],
}

impl Ctx<'_> {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b, self.weights)
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.weighted_degree(self.weights)
    }
}

/// Terms sorted in descending order.
#[derive(Clone, Debug)]
pub(crate) struct IPoly {
    pub terms: Vec<(Monomial, BigInt)>,
}

pub(crate) fn support_mask(m: &Monomial) -> u64 {
    m.0.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |acc, (i, _)| acc | (1u64 << (i % 64)))
}

impl IPoly {
    pub fn from_poly(p: &Poly, ctx: Ctx) -> IPoly {
        let den = common_denominator(p.terms().map(|(_, c)| c));
        let mut terms: Vec<(Monomial, BigInt)> = p
            .terms()
            .map(|(m, c)| (m.clone(), (c * Rational::from_integer(den.clone())).to_integer()))
            .collect();
        terms.sort_by(|a, b| ctx.cmp(&b.0, &a.0));
        let mut out = IPoly { terms };
        out.make_primitive();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide by the content and make the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
    }

    /// Monic rational version.
    pub fn to_poly(&self, ring: &Ring) -> Poly {
        if self.terms.is_empty() {
            return Poly::zero(ring);
        }
        let lc = self.lc().clone();
        Poly::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::new(c.clone(), lc.clone()))),
        )
    }
}

/// `a*f - b*q*g` for descending term lists.
fn merge_sub(
    f: &[(Monomial, BigInt)],
    a: &BigInt,
    g: &[(Monomial, BigInt)],
    b: &BigInt,
    q: &Monomial,
    ctx: Ctx,
) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let a_one = a.is_one();
    let mut i = 0;
    let mut j = 0;
    let mut gj: Option<Monomial> = g.first().map(|t| t.0.mul(q));
    while i < f.len() || gj.is_some() {
        let ord = match (&gj, f.get(i)) {
            (None, _) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(m), Some(ft)) => ctx.cmp(m, &ft.0),
        };
        match ord {
            Ordering::Less => {
                let (m, c) = &f[i];
                out.push((m.clone(), if a_one { c.clone() } else { c * a }));
                i += 1;
            }
            Ordering::Greater => {
                let m = gj.take().unwrap();
                out.push((m, -(&g[j].1 * b)));
                j += 1;
                gj = g.get(j).map(|t| t.0.mul(q));
            }
            Ordering::Equal => {
                let m = gj.take().unwrap();
                let c = if a_one { f[i].1.clone() } else { &f[i].1 * a } - &g[j].1 * b;
                if !c.is_zero() {
                    out.push((m, c));
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(|t| t.0.mul(q));
            }
        }
    }
    out
}

/// Reducer set with leading monomial support masks for quick rejection.
pub(crate) struct Reducers<'a> {
    pub polys: Vec<&'a IPoly>,
    masks: Vec<u64>,
}

impl<'a> Reducers<'a> {
    pub fn new(polys: Vec<&'a IPoly>) -> Self {
        let masks = polys.iter().map(|p| support_mask(p.lm())).collect();
        Reducers { polys, masks }
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = support_mask(m);
        (0..self.polys.len()).find(|&k| self.masks[k] & !mask == 0 && self.polys[k].lm().divides(m))
    }
}

/// Full reduction of `f`. Returns `(r, s)` with `s*f ≡ r` modulo the reducers and
/// no term of `r` divisible by a reducer leading monomial.
pub(crate) fn reduce(
    f: &IPoly,
    reducers: &Reducers,
    ctx: Ctx,
    budget: &mut Budget,
    tail: bool,
) -> Result<(IPoly, Rational), GroebnerError> {
    let mut rest: Vec<(Monomial, BigInt)> = f.terms.clone();
    let mut done: Vec<(Monomial, BigInt)> = Vec::new();
    let mut scale = Rational::one();
    let mut pos = 0;
    let mut since_content = 0u32;
    while pos < rest.len() {
        if !tail && !done.is_empty() {
            done.extend(rest.drain(pos..));
            break;
        }
        match reducers.find(&rest[pos].0) {
            None => {
                let t = std::mem::replace(&mut rest[pos], (Monomial::one(0), BigInt::zero()));
                done.push(t);
                pos += 1;
            }
            Some(k) => {
                budget.tick()?;
                let g = reducers.polys[k];
                let c = &rest[pos].1;
                let lg = g.lc();
                let d = c.gcd(lg);
                let mut a = lg / &d;
                let mut b = c / &d;
                if a.is_negative() {
                    a = -a;
                    b = -b;
                }
                let q = g.lm().quotient_of(&rest[pos].0);
                rest = merge_sub(&rest[pos + 1..], &a, &g.terms[1..], &b, &q, ctx);
                pos = 0;
                if !a.is_one() {
                    for t in &mut done {
                        t.1 *= &a;
                    }
                    scale *= Rational::from_integer(a);
                }
                since_content += 1;
                if since_content >= 16 {
                    since_content = 0;
                    let mut gcd = BigInt::zero();
                    for (_, c) in done.iter().chain(rest.iter()) {
                        gcd = gcd.gcd(c);
                        if gcd.is_one() {
                            break;
                        }
                    }
                    if !gcd.is_zero() && !gcd.is_one() {
                        for (_, c) in done.iter_mut().chain(rest.iter_mut()) {
                            *c /= &gcd;
                        }
                        scale /= Rational::from_integer(gcd);
                    }
                }
            }
        }
    }
    Ok((IPoly { terms: done }, scale))
}

fn spoly(f: &IPoly, g: &IPoly, ctx: Ctx) -> IPoly {
    let l = f.lm().lcm(g.lm());
    let d = f.lc().gcd(g.lc());
    let a = g.lc() / &d;
    let b = f.lc() / &d;
    let qf = f.lm().quotient_of(&l);
    let qg = g.lm().quotient_of(&l);
    let fs: Vec<(Monomial, BigInt)> = f.terms[1..].iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect();
    IPoly {
        terms: merge_sub(&fs, &a, &g.terms[1..], &b, &qg, ctx),
    }
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: u32,
}

pub(crate) struct BuchbergerOutput {
    pub basis: Vec<IPoly>,
    pub truncated: bool,
    pub reductions: u64,
}

/// Reduced Gröbner basis (integer primitive form, sorted by ascending leading monomial).
pub(crate) fn buchberger(
    gens: &[Poly],
    ctx: Ctx,
    budget: &mut Budget,
    degree_cap: Option<u32>,
) -> Result<BuchbergerOutput, GroebnerError> {
    let mut input: Vec<IPoly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| IPoly::from_poly(p, ctx))
        .collect();
    input.sort_by(|a, b| ctx.cmp(a.lm(), b.lm()));

    let mut all: Vec<IPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut truncated = false;

    for f in input {
        let (h, _) = {
            let reducers = Reducers::new(active_refs(&all, &active));
            reduce(&f, &reducers, ctx, budget, true)?
        };
        if h.is_zero() {
            continue;
        }
        let mut h = h;
        h.make_primitive();
        if h.lm().is_one() {
            return Ok(unit_basis(ctx.weights.len(), budget));
        }
        update(&mut all, &mut active, &mut pairs, h, ctx);
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm degree, then smallest lcm, then indices
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                p.deg
                    .cmp(&q.deg)
                    .then_with(|| ctx.cmp(&p.lcm, &q.lcm))
                    .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)))
            })
            .unwrap();
        if let Some(cap) = degree_cap {
            if pairs[best].deg > cap {
                truncated = true;
                break;
            }
        }
        let pair = pairs.swap_remove(best);
        let s = spoly(&all[pair.i], &all[pair.j], ctx);
        if s.is_zero() {
            continue;
        }
        let (mut h, _) = {
            let reducers = Reducers::new(active_refs(&all, &active));
            reduce(&s, &reducers, ctx, budget, true)?
        };
        if h.is_zero() {
            continue;
        }
        h.make_primitive();
        if h.lm().is_one() {
            return Ok(unit_basis(ctx.weights.len(), budget));
        }
        update(&mut all, &mut active, &mut pairs, h, ctx);
    }

    let basis = interreduce(
        all.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect(),
        ctx,
        budget,
    )?;
    Ok(BuchbergerOutput {
        basis,
        truncated,
        reductions: budget.steps,
    })
}

fn unit_basis(n: usize, budget: &Budget) -> BuchbergerOutput {
    BuchbergerOutput {
        basis: vec![IPoly {
            terms: vec![(Monomial::one(n), BigInt::one())],
        }],
        truncated: false,
        reductions: budget.steps,
    }
}

fn active_refs<'a>(all: &'a [IPoly], active: &[bool]) -> Vec<&'a IPoly> {
    all.iter().zip(active).filter(|(_, a)| **a).map(|(p, _)| p).collect()
}

/// Gebauer–Möller update.
fn update(all: &mut Vec<IPoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: IPoly, ctx: Ctx) {
    let hi = all.len();
    let hlm = h.lm().clone();

    let mut c: Vec<(usize, Monomial)> = (0..all.len())
        .filter(|&g| active[g])
        .map(|g| (g, hlm.lcm(all[g].lm())))
        .collect();
    let mut d: Vec<(usize, Monomial)> = Vec::new();
    while !c.is_empty() {
        let (g1, l1) = c.remove(0);
        let coprime = hlm.is_coprime(all[g1].lm());
        let dominated = c.iter().chain(d.iter()).any(|(_, l2)| l2.divides(&l1));
        if coprime || !dominated {
            d.push((g1, l1));
        }
    }
    let e: Vec<Pair> = d
        .into_iter()
        .filter(|(g, _)| !hlm.is_coprime(all[*g].lm()))
        .map(|(g, l)| Pair {
            i: g,
            j: hi,
            deg: ctx.degree(&l),
            lcm: l,
        })
        .collect();

    pairs.retain(|p| {
        !(hlm.divides(&p.lcm)
            && all[p.i].lm().lcm(&hlm) != p.lcm
            && hlm.lcm(all[p.j].lm()) != p.lcm)
    });
    pairs.extend(e);

    for g in 0..all.len() {
        if active[g] && hlm.divides(all[g].lm()) {
            active[g] = false;
        }
    }
    all.push(h);
    active.push(true);
}

fn interreduce(mut polys: Vec<IPoly>, ctx: Ctx, budget: &mut Budget) -> Result<Vec<IPoly>, GroebnerError> {
    polys.sort_by(|a, b| ctx.cmp(a.lm(), b.lm()));
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<IPoly> = Vec::new();
    for p in polys {
        if !keep.iter().any(|k| k.lm().divides(p.lm())) {
            keep.push(p);
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<&IPoly> = keep.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
        let reducers = Reducers::new(others);
        let f = &keep[k];
        let head = IPoly {
            terms: f.terms[1..].to_vec(),
        };
        let (mut tail, scale) = reduce(&head, &reducers, ctx, budget, true)?;
        // rescale the leading term consistently with the reduced tail
        let lead = Rational::from_integer(f.lc().clone()) * &scale;
        let den = lead.denom().clone();
        let mut terms = vec![(f.lm().clone(), lead.numer().clone())];
        for t in &mut tail.terms {
            t.1 *= &den;
        }
        terms.extend(tail.terms);
        let mut p = IPoly { terms };
        p.make_primitive();
        out.push(p);
    }
    Ok(out)
}

pub(crate) fn new_budget(max_steps: u64, max_seconds: f64) -> Budget {
    Budget {
        steps: 0,
        max_steps,
        max_seconds,
        start: Instant::now(),
    }
}
