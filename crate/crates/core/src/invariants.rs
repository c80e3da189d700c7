//! Invariant rings: Reynolds averaging and Molien series for finite groups, Hilbert
//! bases for tori, and degree-truncated derivation kernels for Lie algebra actions,
//! optionally computed in a quotient `R/I` through normal forms.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{common_denominator, rat, to_i64, RatMatrix, Rational, SparseEchelon, SparseRow};
use crate::groebner::{GroebnerBasis, GroebnerError};
use crate::group::{finite_group_elements, GroupError, GroupSpec, SymplecticDouble};
use crate::poly::{Monomial, Poly, PolyError, Ring};

pub const DEFAULT_BASIS_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("degree {degree} needs {needed} basis elements, above the cap of {cap}")]
    BasisCap { degree: u32, needed: usize, cap: usize },
    #[error("degree {degree}: Reynolds gives {found} invariants but Molien predicts {expected}")]
    MolienMismatch { degree: u32, found: usize, expected: String },
    #[error("group matrices act on {got} variables, ring has {expected}")]
    Dimension { expected: usize, got: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// Invariants of the group of a symplectic double up to `bound`, by the method suited to its kind.
pub fn double_invariant_basis(
    d: &SymplecticDouble,
    bound: u32,
    cap: usize,
    order_cap: usize,
) -> Result<InvariantBasis, InvariantError> {
    match &d.base.group {
        GroupSpec::Torus { .. } => torus_invariant_basis(
            d.ring(),
            &d.double_weights().expect("torus"),
            TorusMode::DegreeBound(bound),
            cap,
        ),
        GroupSpec::LieAlgebra { .. } => lie_invariant_basis(d.ring(), &d.derivation_matrices(), bound, cap),
        GroupSpec::FiniteGroup { .. } => {
            let elements = finite_group_elements(&d.group_matrices(), order_cap)?;
            finite_invariant_basis(d.ring(), &elements, bound)
        }
    }
}

/// Invariants of each degree up to a bound, with minimal algebra generators flagged.
#[derive(Debug, Clone)]
pub struct InvariantBasis {
    pub ring: Ring,
    pub degree_bound: u32,
    /// `by_degree[d]` spans the invariants of degree `d` (in the quotient, as normal forms).
    pub by_degree: Vec<Vec<Poly>>,
    pub generators: Vec<Poly>,
    pub generator_degrees: Vec<u32>,
    /// Generation is known to be complete (Hilbert basis, or Noether bound reached).
    pub complete: bool,
}

impl InvariantBasis {
    pub fn dims(&self) -> Vec<usize> {
        self.by_degree.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, d: u32) -> Option<usize> {
        self.by_degree.get(d as usize).map(Vec::len)
    }

    pub fn generators_of_degree(&self, d: u32) -> impl Iterator<Item = &Poly> {
        self.generators
            .iter()
            .zip(&self.generator_degrees)
            .filter(move |(_, &e)| e == d)
            .map(|(g, _)| g)
    }

    fn assemble(
        ring: &Ring,
        by_degree: Vec<Vec<Poly>>,
        quotient: Option<&GroebnerBasis>,
        complete: bool,
    ) -> InvariantBasis {
        let (generators, generator_degrees) = select_generators(ring, &by_degree, quotient);
        InvariantBasis {
            ring: ring.clone(),
            degree_bound: by_degree.len().saturating_sub(1) as u32,
            by_degree,
            generators,
            generator_degrees,
            complete,
        }
    }
}

/// Truncated power series in `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct MolienSeries {
    pub coefficients: Vec<Rational>,
}

impl MolienSeries {
    pub fn coefficient(&self, d: usize) -> Option<&Rational> {
        self.coefficients.get(d)
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer() && !c.is_negative_rational())
    }
}

trait NonNeg {
    fn is_negative_rational(&self) -> bool;
}

impl NonNeg for Rational {
    fn is_negative_rational(&self) -> bool {
        *self < Rational::zero()
    }
}

pub(crate) fn poly_to_row(p: &Poly, index: &mut HashMap<Monomial, usize>) -> SparseRow {
    let mut row: SparseRow = p
        .terms()
        .map(|(m, c)| {
            let next = index.len();
            (*index.entry(m.clone()).or_insert(next), c.clone())
        })
        .collect();
    row.sort_by_key(|e| e.0);
    row
}

pub(crate) fn row_to_poly(ring: &Ring, row: &SparseRow, monos: &[Monomial]) -> Poly {
    Poly::from_terms(ring, row.iter().map(|(c, v)| (monos[*c].clone(), v.clone())))
}

fn inverse_index(index: &HashMap<Monomial, usize>) -> Vec<Monomial> {
    let mut monos = vec![Monomial::one(0); index.len()];
    for (m, &i) in index {
        monos[i] = m.clone();
    }
    monos
}

/// Minimal generators: degree-`d` invariants independent of products of lower-degree
/// generators with invariants of complementary degree.
fn select_generators(ring: &Ring, by_degree: &[Vec<Poly>], quotient: Option<&GroebnerBasis>) -> (Vec<Poly>, Vec<u32>) {
    let nf = |p: Poly| match quotient {
        Some(gb) => gb.normal_form(&p),
        None => p,
    };
    let mut gens: Vec<Poly> = Vec::new();
    let mut degs: Vec<u32> = Vec::new();
    for d in 1..by_degree.len() {
        let mut index = HashMap::new();
        let mut ech = SparseEchelon::new(usize::MAX);
        for (g, &e) in gens.iter().zip(&degs) {
            let e = e as usize;
            if e >= d {
                continue;
            }
            for b in &by_degree[d - e] {
                let row = poly_to_row(&nf(g * b), &mut index);
                ech.insert(row);
            }
        }
        for b in &by_degree[d] {
            let row = poly_to_row(b, &mut index);
            if ech.insert(row) {
                gens.push(b.clone());
                degs.push(d as u32);
            }
        }
    }
    let _ = ring;
    (gens, degs)
}

/// Monomials of weighted degree `d` that are standard for `lms` and have zero weight
/// for every row of `filter`.
pub fn filtered_monomials(
    ring: &Ring,
    d: u32,
    lms: &[Monomial],
    filter: &[Vec<i64>],
    cap: usize,
) -> Result<Vec<Monomial>, InvariantError> {
    let n = ring.nvars();
    let w = ring.weights().to_vec();
    let standard = ring.is_standard_graded();
    let mut lm_by_last: Vec<Vec<&Monomial>> = vec![Vec::new(); n];
    for m in lms {
        if let Some(last) = m.support().last() {
            lm_by_last[last].push(m);
        } else {
            return Ok(vec![]);
        }
    }
    // suffix bounds of each filter row, for pruning in the standard grading
    let suf: Vec<Vec<(i64, i64)>> = filter
        .iter()
        .map(|row| {
            let mut b = vec![(0i64, 0i64); n + 1];
            for i in (0..n).rev() {
                let (lo, hi) = if i + 1 == n { (row[i], row[i]) } else { (b[i + 1].0.min(row[i]), b[i + 1].1.max(row[i])) };
                b[i] = (lo, hi);
            }
            b
        })
        .collect();
    struct St<'a> {
        n: usize,
        w: Vec<u32>,
        standard: bool,
        lm_by_last: Vec<Vec<&'a Monomial>>,
        filter: &'a [Vec<i64>],
        suf: Vec<Vec<(i64, i64)>>,
        exps: Vec<u16>,
        partial: Vec<i64>,
        out: Vec<Monomial>,
        cap: usize,
        d: u32,
    }
    impl St<'_> {
        fn blocked(&self, i: usize) -> bool {
            self.lm_by_last[i]
                .iter()
                .any(|lm| lm.0.iter().zip(&self.exps).all(|(a, b)| a <= b))
        }
        fn feasible(&self, next: usize, remaining: u32) -> bool {
            if next >= self.n {
                return remaining == 0 && self.partial.iter().all(|&p| p == 0);
            }
            if !self.standard {
                return true;
            }
            let r = remaining as i64;
            self.partial
                .iter()
                .zip(&self.suf)
                .all(|(&p, b)| p + r * b[next].0 <= 0 && 0 <= p + r * b[next].1)
        }
        fn rec(&mut self, i: usize, remaining: u32) -> Result<(), InvariantError> {
            if i == self.n {
                if remaining == 0 && self.partial.iter().all(|&p| p == 0) {
                    if self.out.len() >= self.cap {
                        return Err(InvariantError::BasisCap {
                            degree: self.d,
                            needed: self.out.len() + 1,
                            cap: self.cap,
                        });
                    }
                    self.out.push(Monomial(self.exps.iter().copied().collect()));
                }
                return Ok(());
            }
            let wi = self.w[i];
            let max = remaining / wi;
            let range: Vec<u32> = if i + 1 == self.n {
                if remaining % wi != 0 {
                    return Ok(());
                }
                vec![max]
            } else {
                (0..=max).collect()
            };
            for e in range {
                self.exps[i] = e as u16;
                for (k, row) in self.filter.iter().enumerate() {
                    self.partial[k] += e as i64 * row[i];
                }
                let blocked = e > 0 && self.blocked(i);
                let rem = remaining - e * wi;
                if !blocked && self.feasible(i + 1, rem) {
                    self.rec(i + 1, rem)?;
                }
                for (k, row) in self.filter.iter().enumerate() {
                    self.partial[k] -= e as i64 * row[i];
                }
                if blocked {
                    break;
                }
            }
            self.exps[i] = 0;
            Ok(())
        }
    }
    let mut st = St {
        n,
        w,
        standard,
        lm_by_last,
        filter,
        suf,
        exps: vec![0; n],
        partial: vec![0; filter.len()],
        out: Vec::new(),
        cap,
        d,
    };
    if n == 0 {
        return Ok(if d == 0 { vec![Monomial::one(0)] } else { vec![] });
    }
    st.rec(0, d)?;
    Ok(st.out)
}

/// Linear vector field `z ↦ M z` as sparse rows: `(i, [(j, M_ij)])`.
fn sparse_field(m: &RatMatrix) -> Vec<Vec<(usize, Rational)>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .filter(|&j| !m[(i, j)].is_zero())
                .map(|j| (j, m[(i, j)].clone()))
                .collect()
        })
        .collect()
}

/// `Σ_i (Mz)_i ∂m/∂z_i`.
fn derive_monomial(ring: &Ring, m: &Monomial, field: &[Vec<(usize, Rational)>]) -> Poly {
    let mut out = Poly::zero(ring);
    for i in m.support().collect::<Vec<_>>() {
        let e = m.0[i];
        for (j, c) in &field[i] {
            let mut t = m.clone();
            t.0[i] -= 1;
            t.0[*j] += 1;
            out.add_term(t, c * rat(e as i64));
        }
    }
    out
}

/// Split derivation matrices into integral weight rows (diagonal ones) and vector fields.
fn classify(derivations: &[RatMatrix]) -> (Vec<Vec<i64>>, Vec<Vec<Vec<(usize, Rational)>>>) {
    let mut filter = Vec::new();
    let mut fields = Vec::new();
    for m in derivations {
        if m.is_zero() {
            continue;
        }
        if m.is_diagonal() {
            let diag: Vec<Rational> = (0..m.rows()).map(|i| m[(i, i)].clone()).collect();
            let den = Rational::from_integer(common_denominator(&diag));
            let ints: Option<Vec<i64>> = diag.iter().map(|q| to_i64(&(q * &den))).collect();
            if let Some(row) = ints {
                filter.push(row);
                continue;
            }
        }
        fields.push(sparse_field(m));
    }
    (filter, fields)
}

/// Basis of the degree-`d` invariants (in `R/I` when `quotient` is given).
fn invariant_space(
    ring: &Ring,
    quotient: Option<&GroebnerBasis>,
    filter: &[Vec<i64>],
    fields: &[Vec<Vec<(usize, Rational)>>],
    d: u32,
    cap: usize,
) -> Result<Vec<Poly>, InvariantError> {
    let lms = quotient.map(|gb| gb.leading_monomials()).unwrap_or_default();
    let cands = filtered_monomials(ring, d, &lms, filter, cap)?;
    if fields.is_empty() {
        return Ok(cands.into_iter().map(|m| Poly::monomial(ring, m, Rational::one())).collect());
    }
    let mut rows: BTreeMap<(usize, Monomial), SparseRow> = BTreeMap::new();
    for (col, m) in cands.iter().enumerate() {
        for (k, field) in fields.iter().enumerate() {
            let mut img = derive_monomial(ring, m, field);
            if let Some(gb) = quotient {
                img = gb.normal_form(&img);
            }
            for (t, c) in img.terms() {
                rows.entry((k, t.clone())).or_default().push((col, c.clone()));
            }
        }
    }
    let mut ech = SparseEchelon::new(cands.len());
    for (_, row) in rows {
        ech.insert(row);
    }
    Ok(ech.kernel().iter().map(|v| row_to_poly(ring, v, &cands)).collect())
}

/// Invariants of the Lie algebra acting on the ring variables through `derivations`
/// (each an `N×N` matrix, `N = nvars`), up to degree `bound`.
pub fn lie_invariant_basis(
    ring: &Ring,
    derivations: &[RatMatrix],
    bound: u32,
    cap: usize,
) -> Result<InvariantBasis, InvariantError> {
    graded_kernel_basis(ring, None, derivations, bound, cap)
}

/// Invariants of `R/I` for `I` with Gröbner basis `gb`, stable under the derivations.
pub fn quotient_invariant_basis(
    gb: &GroebnerBasis,
    derivations: &[RatMatrix],
    bound: u32,
    cap: usize,
) -> Result<InvariantBasis, InvariantError> {
    graded_kernel_basis(gb.ring(), Some(gb), derivations, bound, cap)
}

fn graded_kernel_basis(
    ring: &Ring,
    quotient: Option<&GroebnerBasis>,
    derivations: &[RatMatrix],
    bound: u32,
    cap: usize,
) -> Result<InvariantBasis, InvariantError> {
    let n = ring.nvars();
    if let Some(m) = derivations.iter().find(|m| m.rows() != n || m.cols() != n) {
        return Err(InvariantError::Dimension {
            expected: n,
            got: m.rows(),
        });
    }
    let (filter, fields) = classify(derivations);
    let by_degree: Vec<Vec<Poly>> = (0..=bound)
        .into_par_iter()
        .map(|d| invariant_space(ring, quotient, &filter, &fields, d, cap))
        .collect::<Result<_, _>>()?;
    Ok(InvariantBasis::assemble(ring, by_degree, quotient, false))
}

/// `(1/|G|) Σ_g p(g z)`.
pub fn reynolds(elements: &[RatMatrix], p: &Poly) -> Poly {
    let ring = p.ring();
    let mut acc = Poly::zero(ring);
    for g in elements {
        let images = linear_images(ring, g);
        acc = &acc + &p.substitute(&images, ring).expect("same ring");
    }
    acc.scale(&Rational::new(1.into(), (elements.len() as i64).into()))
}

fn linear_images(ring: &Ring, g: &RatMatrix) -> Vec<Poly> {
    (0..g.rows())
        .map(|i| {
            Poly::from_terms(
                ring,
                (0..g.cols())
                    .filter(|&j| !g[(i, j)].is_zero())
                    .map(|j| (Monomial::var(ring.nvars(), j), g[(i, j)].clone())),
            )
        })
        .collect()
}

fn series_inverse(a: &[Rational], upto: usize) -> Vec<Rational> {
    // a[0] = 1
    let mut out = vec![Rational::zero(); upto + 1];
    out[0] = Rational::one();
    for k in 1..=upto {
        let mut s = Rational::zero();
        for j in 1..=k.min(a.len() - 1) {
            s -= &a[j] * &out[k - j];
        }
        out[k] = s;
    }
    out
}

pub fn molien(elements: &[RatMatrix], upto: usize) -> MolienSeries {
    let parts: Vec<Vec<Rational>> = elements
        .par_iter()
        .map(|g| series_inverse(&g.reversed_charpoly(), upto))
        .collect();
    let mut coefficients = vec![Rational::zero(); upto + 1];
    for p in parts {
        for (c, v) in coefficients.iter_mut().zip(p) {
            *c += v;
        }
    }
    let order = Rational::from_integer((elements.len() as i64).into());
    for c in &mut coefficients {
        *c /= &order;
    }
    MolienSeries { coefficients }
}

/// Invariants of a finite matrix group acting on the ring variables, by Reynolds
/// averaging of monomials; each dimension is checked against the Molien series.
pub fn finite_invariant_basis(ring: &Ring, elements: &[RatMatrix], bound: u32) -> Result<InvariantBasis, InvariantError> {
    let n = ring.nvars();
    if let Some(g) = elements.iter().find(|g| g.rows() != n || g.cols() != n) {
        return Err(InvariantError::Dimension {
            expected: n,
            got: g.rows(),
        });
    }
    let series = molien(elements, bound as usize);
    let forms: Vec<Vec<Poly>> = elements.iter().map(|g| linear_images(ring, g)).collect();
    // images of all monomials of the previous degree, per element
    let mut prev: Vec<HashMap<Monomial, Poly>> =
        elements.iter().map(|_| HashMap::from([(Monomial::one(n), Poly::one(ring))])).collect();
    let mut by_degree = vec![vec![Poly::one(ring)]];
    let inv_order = Rational::new(1.into(), (elements.len() as i64).into());
    for d in 1..=bound {
        let monos = crate::poly::monomials_of_degree(ring, d);
        let next: Vec<HashMap<Monomial, Poly>> = prev
            .par_iter()
            .zip(&forms)
            .map(|(images, lin)| {
                monos
                    .iter()
                    .map(|m| {
                        let k = m.support().last().expect("positive degree");
                        let mut lower = m.clone();
                        lower.0[k] -= 1;
                        (m.clone(), &images[&lower] * &lin[k])
                    })
                    .collect()
            })
            .collect();
        let mut index = HashMap::new();
        let mut ech = SparseEchelon::new(usize::MAX);
        for m in &monos {
            let mut avg = Poly::zero(ring);
            for images in &next {
                avg = &avg + &images[m];
            }
            ech.insert(poly_to_row(&avg.scale(&inv_order), &mut index));
        }
        let expected = &series.coefficients[d as usize];
        if Rational::from_integer((ech.rank() as i64).into()) != *expected {
            return Err(InvariantError::MolienMismatch {
                degree: d,
                found: ech.rank(),
                expected: crate::arith::format_rational(expected),
            });
        }
        let monos_ix = inverse_index(&index);
        by_degree.push(ech.into_reduced().iter().map(|(_, r)| row_to_poly(ring, r, &monos_ix)).collect());
        prev = next;
    }
    let complete = bound as usize >= elements.len();
    Ok(InvariantBasis::assemble(ring, by_degree, None, complete))
}

/// Invariants of the cyclic group whose generator scales variable `i` by `ζ^{exponents[i]}`.
pub fn cyclic_invariant_basis(ring: &Ring, order: u32, exponents: &[i64], bound: u32) -> Result<InvariantBasis, InvariantError> {
    if exponents.len() != ring.nvars() {
        return Err(InvariantError::Dimension {
            expected: ring.nvars(),
            got: exponents.len(),
        });
    }
    let m = order.max(1) as i64;
    let by_degree: Vec<Vec<Poly>> = (0..=bound)
        .map(|d| {
            crate::poly::monomials_of_degree(ring, d)
                .into_iter()
                .filter(|mono| {
                    mono.0.iter().zip(exponents).map(|(&a, &e)| a as i64 * e).sum::<i64>().rem_euclid(m) == 0
                })
                .map(|mono| Poly::monomial(ring, mono, Rational::one()))
                .collect()
        })
        .collect();
    Ok(InvariantBasis::assemble(ring, by_degree, None, bound >= order))
}

/// How far to compute torus invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusMode {
    /// Complete Hilbert basis; spans listed up to its largest degree.
    HilbertBasis,
    /// Zero-weight monomials up to the bound.
    DegreeBound(u32),
}

/// Monomial invariants of a torus with the given weight rows on the ring variables.
pub fn torus_invariant_basis(
    ring: &Ring,
    weights: &[Vec<i64>],
    mode: TorusMode,
    cap: usize,
) -> Result<InvariantBasis, InvariantError> {
    let n = ring.nvars();
    if let Some(row) = weights.iter().find(|r| r.len() != n) {
        return Err(InvariantError::Dimension {
            expected: n,
            got: row.len(),
        });
    }
    let hb = hilbert_basis(weights, n, cap)?;
    let degree = |v: &[u32]| v.iter().zip(ring.weights()).map(|(a, w)| a * w).sum::<u32>();
    let bound = match mode {
        TorusMode::HilbertBasis => hb.iter().map(|v| degree(v)).max().unwrap_or(0),
        TorusMode::DegreeBound(d) => d,
    };
    let by_degree: Vec<Vec<Poly>> = (0..=bound)
        .map(|d| {
            filtered_monomials(ring, d, &[], weights, cap)
                .map(|ms| ms.into_iter().map(|m| Poly::monomial(ring, m, Rational::one())).collect())
        })
        .collect::<Result<_, _>>()?;
    let mut generators = Vec::new();
    let mut generator_degrees = Vec::new();
    for v in &hb {
        let d = degree(v);
        if d <= bound {
            generators.push(Poly::monomial(ring, Monomial::from_exponents(v), Rational::one()));
            generator_degrees.push(d);
        }
    }
    Ok(InvariantBasis {
        ring: ring.clone(),
        degree_bound: bound,
        by_degree,
        complete: generator_degrees.len() == hb.len(),
        generators,
        generator_degrees,
    })
}

/// Hilbert basis of the monoid `{u ∈ ℕⁿ : A u = 0}`, one weight row at a time.
pub fn hilbert_basis(weights: &[Vec<i64>], n: usize, cap: usize) -> Result<Vec<Vec<u32>>, InvariantError> {
    let mut basis: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    for row in weights {
        let c: Vec<i64> = basis
            .iter()
            .map(|v| v.iter().zip(row).map(|(&a, &w)| a as i64 * w).sum())
            .collect();
        let sols = minimal_solutions(&c, cap)?;
        let images: Vec<Vec<u32>> = sols
            .iter()
            .map(|lambda| {
                let mut u = vec![0u32; n];
                for (l, v) in lambda.iter().zip(&basis) {
                    for (a, b) in u.iter_mut().zip(v) {
                        *a += l * b;
                    }
                }
                u
            })
            .collect();
        basis = minimal_elements(images);
        if basis.len() > cap {
            return Err(InvariantError::BasisCap {
                degree: 0,
                needed: basis.len(),
                cap,
            });
        }
    }
    basis.sort_by(|a, b| {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    Ok(basis)
}

/// Minimal nonzero solutions `λ ∈ ℕᵏ` of `Σ c_j λ_j = 0` (Contejean–Devie search).
fn minimal_solutions(c: &[i64], cap: usize) -> Result<Vec<Vec<u32>>, InvariantError> {
    let k = c.len();
    let unit = |j: usize| {
        let mut e = vec![0u32; k];
        e[j] = 1;
        e
    };
    let mut sols: Vec<Vec<u32>> = (0..k).filter(|&j| c[j] == 0).map(unit).collect();
    let mut frontier: Vec<(Vec<u32>, i64)> = (0..k).filter(|&j| c[j] != 0).map(|j| (unit(j), c[j])).collect();
    let mut seen: HashSet<Vec<u32>> = frontier.iter().map(|(v, _)| v.clone()).collect();
    let dominated = |sols: &[Vec<u32>], v: &[u32]| sols.iter().any(|s| s.iter().zip(v).all(|(a, b)| a <= b));
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (lambda, v) in &frontier {
            for j in 0..k {
                if c[j] == 0 || (c[j] > 0) == (*v > 0) {
                    continue;
                }
                let mut l2 = lambda.clone();
                l2[j] += 1;
                if dominated(&sols, &l2) || !seen.insert(l2.clone()) {
                    continue;
                }
                let v2 = v + c[j];
                if v2 == 0 {
                    sols.push(l2);
                } else {
                    next.push((l2, v2));
                }
            }
        }
        if next.len() > cap.saturating_mul(50) {
            return Err(InvariantError::BasisCap {
                degree: 0,
                needed: next.len(),
                cap,
            });
        }
        frontier = next;
    }
    Ok(sols)
}

fn minimal_elements(mut vs: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    vs.sort_by_key(|v| v.iter().sum::<u32>());
    vs.dedup();
    let mut out: Vec<Vec<u32>> = Vec::new();
    for v in vs {
        if v.iter().all(|&a| a == 0) {
            continue;
        }
        if !out.iter().any(|u| u.iter().zip(&v).all(|(a, b)| a <= b)) {
            out.push(v);
        }
    }
    out
}

/// Every listed polynomial is fixed by the group generators (`p(gz) = p(z)`).
pub fn is_group_invariant(p: &Poly, generators: &[RatMatrix]) -> bool {
    let ring = p.ring();
    generators
        .iter()
        .all(|g| p.substitute(&linear_images(ring, g), ring).map(|q| &q == p).unwrap_or(false))
}

/// `Σ_i (Mz)_i ∂p/∂z_i`.
pub fn apply_derivation(p: &Poly, m: &RatMatrix) -> Poly {
    let ring = p.ring();
    let field = sparse_field(m);
    let mut out = Poly::zero(ring);
    for (mono, c) in p.terms() {
        out = &out + &derive_monomial(ring, mono, &field).scale(c);
    }
    out
}
