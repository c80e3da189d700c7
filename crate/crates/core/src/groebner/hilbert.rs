use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{buchberger, GbOptions, GroebnerBasis, GroebnerError, Ideal};
use crate::poly::{Monomial, MonomialOrder};

/// Hilbert series `N(t) / Π (1 - t^d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeriesRat {
    /// Coefficient of `t^i` at index `i`.
    pub numerator: Vec<BigInt>,
    pub denominator: Vec<u32>,
}

type TPoly = Vec<BigInt>;

fn tp_trim(mut p: TPoly) -> TPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn tp_add(a: &TPoly, b: &TPoly) -> TPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    tp_trim(out)
}

fn tp_shift(a: &TPoly, k: usize) -> TPoly {
    if a.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); k];
    out.extend(a.iter().cloned());
    out
}

fn tp_mul(a: &TPoly, b: &TPoly) -> TPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    tp_trim(out)
}

/// `1 - t^d`
fn one_minus(d: u32) -> TPoly {
    let mut p = vec![BigInt::zero(); d as usize + 1];
    p[0] = BigInt::one();
    p[d as usize] -= BigInt::one();
    p
}

/// Exact division by `1 - t^d`, if it divides.
fn tp_div_one_minus(a: &TPoly, d: u32) -> Option<TPoly> {
    let d = d as usize;
    if a.is_empty() {
        return Some(vec![]);
    }
    // a = (1 - t^d) q  =>  q_i = a_i + q_{i-d}
    if a.len() <= d {
        return None;
    }
    let qlen = a.len() - d;
    let mut q = vec![BigInt::zero(); qlen];
    for i in 0..qlen {
        let mut v = a[i].clone();
        if i >= d {
            v += &q[i - d];
        }
        q[i] = v;
    }
    // check the top coefficients
    for i in qlen..a.len() {
        let mut v = a[i].clone();
        if i >= d && i - d < qlen {
            v += &q[i - d];
        }
        if !v.is_zero() {
            return None;
        }
    }
    Some(q)
}

impl HilbertSeriesRat {
    /// Power series coefficients up to and including `t^upto`.
    pub fn expand(&self, upto: usize) -> Vec<BigInt> {
        let mut s: Vec<BigInt> = (0..=upto).map(|i| self.numerator.get(i).cloned().unwrap_or_default()).collect();
        for &d in &self.denominator {
            let d = d as usize;
            for i in d..=upto {
                let prev = s[i - d].clone();
                s[i] += prev;
            }
        }
        s
    }

    /// Order of the pole at `t = 1`.
    pub fn pole_order(&self) -> usize {
        let mut num = tp_trim(self.numerator.clone());
        if num.is_empty() {
            return 0;
        }
        let mut k = 0;
        while let Some(q) = tp_div_one_minus(&num, 1) {
            num = q;
            k += 1;
        }
        self.denominator.len().saturating_sub(k)
    }

    /// Cancel denominator factors that divide the numerator.
    pub fn reduced(&self) -> HilbertSeriesRat {
        let mut num = tp_trim(self.numerator.clone());
        let mut den = Vec::new();
        let mut ds = self.denominator.clone();
        ds.sort_unstable_by(|a, b| b.cmp(a));
        for d in ds {
            match tp_div_one_minus(&num, d) {
                Some(q) if !num.is_empty() => num = q,
                _ => den.push(d),
            }
        }
        den.sort_unstable();
        HilbertSeriesRat {
            numerator: num,
            denominator: den,
        }
    }

    /// Equality as rational functions.
    pub fn same_series(&self, other: &HilbertSeriesRat) -> bool {
        let mut a = self.numerator.clone();
        for &d in &other.denominator {
            a = tp_mul(&a, &one_minus(d));
        }
        let mut b = other.numerator.clone();
        for &d in &self.denominator {
            b = tp_mul(&b, &one_minus(d));
        }
        tp_trim(a) == tp_trim(b)
    }

    pub fn from_parts(numerator: Vec<i64>, denominator: Vec<u32>) -> Self {
        HilbertSeriesRat {
            numerator: tp_trim(numerator.into_iter().map(BigInt::from).collect()),
            denominator,
        }
    }
}

impl fmt::Display for HilbertSeriesRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.numerator.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "t".to_string(),
                (1, false) => format!("{mag}*t"),
                (_, true) => format!("t^{i}"),
                (_, false) => format!("{mag}*t^{i}"),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            terms.push((sign, body));
        }
        let mut num = String::new();
        for (k, (sign, body)) in terms.iter().enumerate() {
            if k == 0 {
                if *sign == "-" {
                    num.push('-');
                }
            } else {
                num.push_str(&format!(" {sign} "));
            }
            num.push_str(body);
        }
        if num.is_empty() {
            num.push('0');
        }
        if self.denominator.is_empty() {
            return write!(f, "{num}");
        }
        let mut den = Vec::new();
        let mut ds = self.denominator.clone();
        ds.sort_unstable();
        let mut k = 0;
        while k < ds.len() {
            let d = ds[k];
            let mut e = 0;
            while k < ds.len() && ds[k] == d {
                e += 1;
                k += 1;
            }
            let base = if d == 1 { "(1 - t)".to_string() } else { format!("(1 - t^{d})") };
            den.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
        if den.len() == 1 {
            write!(f, "({num})/{}", den[0])
        } else {
            write!(f, "({num})/({})", den.join("*"))
        }
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `k[x]/(gens)` over `Π (1 - t^{w_i})`.
fn numerator(gens: Vec<Monomial>, w: &[u32]) -> TPoly {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    if gens.iter().any(Monomial::is_one) {
        return vec![];
    }
    let n = w.len();
    let mut counts = vec![0usize; n];
    for g in &gens {
        for i in g.support() {
            counts[i] += 1;
        }
    }
    let pivot_var = (0..n).filter(|&i| counts[i] >= 2).max_by_key(|&i| (counts[i], std::cmp::Reverse(i)));
    let Some(x) = pivot_var else {
        // pairwise coprime
        let mut p = vec![BigInt::one()];
        for g in &gens {
            p = tp_mul(&p, &one_minus(g.weighted_degree(w)));
        }
        return p;
    };
    // a pure power x^p forces every other exponent of x below p, so x^e stays outside the ideal
    let mut exps: Vec<u16> = gens
        .iter()
        .filter(|g| g.support().any(|i| i != x))
        .map(|g| g.0[x])
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let mut pivot = Monomial::one(n);
    pivot.0[x] = e;

    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h.0[x] = h.0[x].saturating_sub(e);
            h
        })
        .collect();
    let a = numerator(plus, w);
    let b = numerator(colon, w);
    tp_add(&a, &tp_shift(&b, pivot.weighted_degree(w) as usize))
}

/// Hilbert series of `R / in(I)` for the leading monomials of a basis.
pub fn hilbert_series_of_basis(gb: &GroebnerBasis) -> Result<HilbertSeriesRat, GroebnerError> {
    if !gb.as_ideal().is_homogeneous() {
        return Err(GroebnerError::NotHomogeneous);
    }
    let w = gb.ring().weights();
    Ok(HilbertSeriesRat {
        numerator: numerator(gb.leading_monomials(), w),
        denominator: w.to_vec(),
    })
}

/// Hilbert series of `R/I` for homogeneous `I`.
pub fn hilbert_series(ideal: &Ideal, order: MonomialOrder, opts: &GbOptions) -> Result<HilbertSeriesRat, GroebnerError> {
    if !ideal.is_homogeneous() {
        return Err(GroebnerError::NotHomogeneous);
    }
    let gb = buchberger(ideal, order, opts)?;
    hilbert_series_of_basis(&gb)
}

/// Krull dimension from a Gröbner basis: size of a maximal independent set of
/// variables modulo the leading monomial ideal.
pub fn krull_dimension_of_basis(gb: &GroebnerBasis) -> Result<usize, GroebnerError> {
    if gb.is_unit() {
        return Err(GroebnerError::UnitIdeal);
    }
    let n = gb.ring().nvars();
    let masks: Vec<Vec<bool>> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.0.iter().map(|&e| e > 0).collect())
        .collect();
    let mut best = 0;
    let mut chosen = vec![false; n];
    independent_search(0, &mut chosen, 0, &masks, &mut best);
    Ok(best)
}

fn independent_search(i: usize, chosen: &mut Vec<bool>, size: usize, masks: &[Vec<bool>], best: &mut usize) {
    let n = chosen.len();
    if size + (n - i) <= *best {
        return;
    }
    if i == n {
        *best = size;
        return;
    }
    chosen[i] = true;
    let ok = masks
        .iter()
        .all(|m| m.iter().enumerate().any(|(k, &used)| used && !chosen[k]));
    if ok {
        independent_search(i + 1, chosen, size + 1, masks, best);
    }
    chosen[i] = false;
    independent_search(i + 1, chosen, size, masks, best);
}

pub fn krull_dimension(ideal: &Ideal, opts: &GbOptions) -> Result<usize, GroebnerError> {
    let gb = buchberger(ideal, MonomialOrder::GrevLex, opts)?;
    krull_dimension_of_basis(&gb)
}
