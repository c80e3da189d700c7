//! The restriction map to `c ⊕ c∨` and the graded evidence for the Chevalley-type
//! isomorphism between the symplectic reduction and `c ⊕ c∨ / W`.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{RatMatrix, Rational, SparseEchelon, SparseRow};
use crate::groebner::{
    buchberger, hilbert_series, krull_dimension_of_basis, subalgebra_intersection, GbOptions, GroebnerBasis,
    GroebnerError, Ideal,
};
use crate::group::{finite_group_elements, CartanData, GroupError, WeylGroup};
use crate::invariants::{
    cyclic_invariant_basis, finite_invariant_basis, poly_to_row, InvariantBasis, InvariantError,
};
use crate::poly::{monomials_of_degree, Monomial, MonomialOrder, Poly, PolyError, PolyRing, Ring};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RestrictError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChevalleyError {
    #[error(transparent)]
    Restrict(#[from] RestrictError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Substitute `x = Σ_a s_a c_a`, `y = Σ_b t_b c∨_b` into a polynomial on `V ⊕ V*`.
pub fn restrict_to_cartan(p: &Poly, cd: &CartanData) -> Result<Poly, RestrictError> {
    let target = cd.ring();
    let r = cd.rank();
    let nv = p.ring().nvars();
    let n = nv / 2;
    if nv % 2 != 0 || cd.c.iter().chain(&cd.c_dual).any(|v| v.len() != n) || cd.c_dual.len() != r {
        return Err(RestrictError::Dimension(format!(
            "Cartan vectors do not match a double with {nv} variables"
        )));
    }
    let form = |basis: &[Vec<Rational>], i: usize, offset: usize| {
        Poly::from_terms(
            &target,
            basis
                .iter()
                .enumerate()
                .filter(|(_, v)| !v[i].is_zero())
                .map(|(a, v)| (Monomial::var(2 * r, offset + a), v[i].clone())),
        )
    };
    let mut images: Vec<Poly> = (0..n).map(|i| form(&cd.c, i, 0)).collect();
    images.extend((0..n).map(|i| form(&cd.c_dual, i, r)));
    Ok(p.substitute(&images, &target)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PresentationSource {
    /// Elimination from `I + (T_k - g_k)`.
    IdealElimination,
    /// Per-degree linear algebra in the quotient; relations complete only up to the truncation.
    QuotientLinearAlgebra,
    /// Invariants of `W` on `c ⊕ c∨` with relations by elimination.
    WeylQuotient,
    /// Invariants of `W` with relations by per-degree linear algebra up to the truncation.
    WeylLinearAlgebra,
}

/// Generators and relations of a graded algebra, with its Hilbert function.
#[derive(Debug, Clone)]
pub struct ReductionPresentation {
    pub generators: Vec<Poly>,
    pub generator_degrees: Vec<u32>,
    pub tag_ring: Ring,
    /// Minimal homogeneous relations in the tag variables.
    pub relations: Vec<Poly>,
    pub relation_degrees: Vec<u32>,
    /// `hilbert[d]` is the dimension of the degree-`d` part, `d ≤ truncation`.
    pub hilbert: Vec<u64>,
    pub truncation: u32,
    pub source: PresentationSource,
}

impl ReductionPresentation {
    /// Substitute the generators into every relation and reduce modulo `I` (or not at all).
    pub fn relations_vanish(&self, quotient: Option<&GroebnerBasis>) -> bool {
        let Some(ring) = self.generators.first().map(|g| g.ring().clone()) else {
            return self.relations.is_empty();
        };
        self.relations.iter().all(|rel| {
            let v = rel.substitute(&self.generators, &ring).expect("tag ring matches generators");
            match quotient {
                Some(gb) => gb.contains(&v),
                None => v.is_zero(),
            }
        })
    }
}

fn tag_ring(degrees: &[u32]) -> Ring {
    let names: Vec<String> = (1..=degrees.len()).map(|k| format!("T{k}")).collect();
    let w: Vec<u32> = degrees.iter().map(|&d| d.max(1)).collect();
    PolyRing::with_weights(&names, &w).expect("valid tag names")
}

fn nf_or_id(gb: Option<&GroebnerBasis>, p: Poly) -> Poly {
    match gb {
        Some(gb) => gb.normal_form(&p),
        None => p,
    }
}

/// Evaluations of all tag monomials of weighted degree `d`, built from lower ones.
struct Evaluator<'a> {
    gens: &'a [Poly],
    quotient: Option<&'a GroebnerBasis>,
    memo: HashMap<Monomial, Poly>,
}

impl<'a> Evaluator<'a> {
    fn new(gens: &'a [Poly], quotient: Option<&'a GroebnerBasis>, ring: &Ring, s: usize) -> Self {
        let mut memo = HashMap::new();
        memo.insert(Monomial::one(s), Poly::one(ring));
        Evaluator { gens, quotient, memo }
    }

    fn eval(&mut self, m: &Monomial) -> Poly {
        if let Some(p) = self.memo.get(m) {
            return p.clone();
        }
        let k = m.support().last().expect("non-constant");
        let mut lower = m.clone();
        lower.0[k] -= 1;
        let base = self.eval(&lower);
        let p = nf_or_id(self.quotient, &base * &self.gens[k]);
        self.memo.insert(m.clone(), p.clone());
        p
    }
}

/// Relations among `gens` (modulo `I` when a basis is given) degree by degree up to
/// `truncation`, by linear algebra on evaluated tag monomials.
pub fn linear_presentation(
    gens: &[Poly],
    degrees: &[u32],
    quotient: Option<&GroebnerBasis>,
    truncation: u32,
    source: PresentationSource,
) -> ReductionPresentation {
    let tags = tag_ring(degrees);
    let s = gens.len();
    let ring = gens.first().map(|g| g.ring().clone()).unwrap_or_else(|| tags.clone());
    let mut ev = Evaluator::new(gens, quotient, &ring, s);
    let mut hilbert = vec![1u64];
    let mut relations = Vec::new();
    let mut relation_degrees = Vec::new();
    // relation space basis per degree, in tag-monomial coordinates
    let mut spaces: Vec<Vec<Poly>> = vec![vec![]];
    for d in 1..=truncation {
        let monos = if s == 0 { vec![] } else { monomials_of_degree(&tags, d) };
        let mut index = HashMap::new();
        let cols: Vec<SparseRow> = monos.iter().map(|m| poly_to_row(&ev.eval(m), &mut index)).collect();
        // rows of the evaluation matrix: one per target monomial
        let mut rows: Vec<SparseRow> = vec![Vec::new(); index.len()];
        for (c, col) in cols.iter().enumerate() {
            for (r, v) in col {
                rows[*r].push((c, v.clone()));
            }
        }
        let mut ech = SparseEchelon::new(monos.len());
        for row in rows {
            ech.insert(row);
        }
        let rank = ech.rank();
        hilbert.push(rank as u64);
        let kernel: Vec<Poly> = ech
            .kernel()
            .iter()
            .map(|v| Poly::from_terms(&tags, v.iter().map(|(c, q)| (monos[*c].clone(), q.clone()))))
            .collect();
        // multiples of lower-degree relations
        let mut tag_index = HashMap::new();
        let mut lower = SparseEchelon::new(usize::MAX);
        for k in 0..s {
            let w = tags.weights()[k];
            if w > d {
                continue;
            }
            for r in &spaces[(d - w) as usize] {
                lower.insert(poly_to_row(&(r * &Poly::var(&tags, k)), &mut tag_index));
            }
        }
        for r in &kernel {
            if lower.insert(poly_to_row(r, &mut tag_index)) {
                relations.push(r.primitive());
                relation_degrees.push(d);
            }
        }
        spaces.push(kernel);
    }
    ReductionPresentation {
        generators: gens.to_vec(),
        generator_degrees: degrees.to_vec(),
        tag_ring: tags,
        relations,
        relation_degrees,
        hilbert,
        truncation,
        source,
    }
}

/// Minimal homogeneous generators of a homogeneous ideal, by increasing degree.
fn minimal_generators(ideal: &Ideal, opts: &GbOptions) -> Result<(Vec<Poly>, Vec<u32>), GroebnerError> {
    let ring = ideal.ring();
    let mut cands: Vec<Poly> = ideal.generators().iter().filter(|p| !p.is_zero()).cloned().collect();
    cands.sort_by_key(|p| p.weighted_degree().unwrap_or(0));
    let mut kept: Vec<Poly> = Vec::new();
    let mut degs = Vec::new();
    for p in cands {
        let inside = if kept.is_empty() {
            false
        } else {
            buchberger(&Ideal::new(ring, kept.clone())?, MonomialOrder::GrevLex, opts)?.contains(&p)
        };
        if !inside {
            degs.push(p.weighted_degree().unwrap_or(0));
            kept.push(p.primitive());
        }
    }
    Ok((kept, degs))
}

fn presentation_from_ideal(
    gens: &[Poly],
    degrees: &[u32],
    relations: &Ideal,
    truncation: u32,
    source: PresentationSource,
    opts: &GbOptions,
) -> Result<ReductionPresentation, GroebnerError> {
    let tags = tag_ring(degrees);
    let rel = Ideal::new(&tags, relations.generators().iter().map(|p| p.clone().with_ring(&tags)).collect())?;
    let (minimal, relation_degrees) = minimal_generators(&rel, opts)?;
    let hs = hilbert_series(&rel, MonomialOrder::GrevLex, opts)?;
    let hilbert = hs
        .expand(truncation as usize)
        .iter()
        .map(|c| c.to_u64().expect("nonnegative Hilbert function"))
        .collect();
    Ok(ReductionPresentation {
        generators: gens.to_vec(),
        generator_degrees: degrees.to_vec(),
        tag_ring: tags,
        relations: minimal,
        relation_degrees,
        hilbert,
        truncation,
        source,
    })
}

/// Drop generators that are redundant modulo `I`: those in the span of products of
/// the kept ones and the other generators of the same degree.
pub fn prune_generators(gens: &[Poly], quotient: Option<&GroebnerBasis>) -> (Vec<Poly>, Vec<u32>) {
    let mut order: Vec<usize> = (0..gens.len()).collect();
    let degree = |p: &Poly| p.weighted_degree().unwrap_or(0);
    order.sort_by_key(|&i| degree(&gens[i]));
    let mut kept: Vec<Poly> = Vec::new();
    let mut degs: Vec<u32> = Vec::new();
    let mut current: Option<(u32, SparseEchelon, HashMap<Monomial, usize>)> = None;
    for i in order {
        let g = &gens[i];
        let d = degree(g);
        if d == 0 {
            continue;
        }
        if current.as_ref().map(|c| c.0) != Some(d) {
            let mut index = HashMap::new();
            let mut ech = SparseEchelon::new(usize::MAX);
            if !kept.is_empty() {
                let tags = tag_ring(&degs);
                let mut ev = Evaluator::new(&kept, quotient, g.ring(), kept.len());
                for m in monomials_of_degree(&tags, d) {
                    ech.insert(poly_to_row(&ev.eval(&m), &mut index));
                }
            }
            current = Some((d, ech, index));
        }
        let (_, ech, index) = current.as_mut().unwrap();
        if ech.insert(poly_to_row(&nf_or_id(quotient, g.clone()), index)) {
            kept.push(g.clone());
            degs.push(d);
        }
    }
    (kept, degs)
}

/// Presentation of `(C[M]/I)^G` from invariant generators of `C[M]^G`: elimination
/// within the budget, otherwise per-degree linear algebra up to `truncation`.
pub fn reduction_presentation_big(
    generators: &[Poly],
    moment: &Ideal,
    moment_gb: &GroebnerBasis,
    truncation: u32,
    opts: &GbOptions,
) -> Result<ReductionPresentation, ChevalleyError> {
    let (gens, degrees) = prune_generators(generators, Some(moment_gb));
    match subalgebra_intersection(moment, &gens, Some(moment_gb), opts) {
        Ok(rel) => Ok(presentation_from_ideal(
            &gens,
            &degrees,
            &rel.relations,
            truncation,
            PresentationSource::IdealElimination,
            opts,
        )?),
        Err(GroebnerError::Budget { .. }) => Ok(linear_presentation(
            &gens,
            &degrees,
            Some(moment_gb),
            truncation,
            PresentationSource::QuotientLinearAlgebra,
        )),
        Err(e) => Err(e.into()),
    }
}

/// Invariants of `W` on `c ⊕ c∨` up to `bound`.
pub fn weyl_invariants(cd: &CartanData, bound: u32, closure_cap: usize) -> Result<InvariantBasis, ChevalleyError> {
    let ring = cd.ring();
    Ok(match &cd.weyl {
        WeylGroup::DiagonalCyclic { order, exponents } => cyclic_invariant_basis(&ring, *order, exponents, bound)?,
        WeylGroup::Matrices(gens) => {
            let gens: Vec<RatMatrix> = if gens.is_empty() {
                vec![RatMatrix::identity(ring.nvars())]
            } else {
                gens.clone()
            };
            let elements = finite_group_elements(&gens, closure_cap)?;
            finite_invariant_basis(&ring, &elements, bound)?
        }
    })
}

/// Generators of `C[c ⊕ c∨]^W` and their relations by elimination from the zero ideal, or by
/// per-degree linear algebra up to `truncation` when elimination exceeds the budget.
pub fn weyl_quotient_presentation(
    cd: &CartanData,
    target: &InvariantBasis,
    truncation: u32,
    opts: &GbOptions,
) -> Result<ReductionPresentation, ChevalleyError> {
    let ring = cd.ring();
    match subalgebra_intersection(&Ideal::zero(&ring), &target.generators, None, opts) {
        Ok(rel) => Ok(presentation_from_ideal(
            &target.generators,
            &target.generator_degrees,
            &rel.relations,
            truncation,
            PresentationSource::WeylQuotient,
            opts,
        )?),
        Err(GroebnerError::Budget { .. }) => Ok(linear_presentation(
            &target.generators,
            &target.generator_degrees,
            None,
            truncation,
            PresentationSource::WeylLinearAlgebra,
        )),
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSurjectivity {
    pub degree: u32,
    pub source_dim: usize,
    pub restricted_rank: usize,
    pub target_dim: usize,
    /// Restricted invariants lie in the span of the target invariants.
    pub restricted_in_target: bool,
    /// `None` when either side is missing this degree.
    pub surjective: Option<bool>,
}

/// Compare the span of restricted source invariants with the target invariants, per degree.
pub fn surjectivity_check(
    source: &InvariantBasis,
    cd: &CartanData,
    target: &InvariantBasis,
    bound: u32,
) -> Result<Vec<DegreeSurjectivity>, ChevalleyError> {
    let mut out = Vec::new();
    for d in 0..=bound {
        let (Some(src), Some(tgt)) = (source.by_degree.get(d as usize), target.by_degree.get(d as usize)) else {
            out.push(DegreeSurjectivity {
                degree: d,
                source_dim: source.dim(d).unwrap_or(0),
                restricted_rank: 0,
                target_dim: target.dim(d).unwrap_or(0),
                restricted_in_target: false,
                surjective: None,
            });
            continue;
        };
        let mut index = HashMap::new();
        let mut tech = SparseEchelon::new(usize::MAX);
        for t in tgt {
            tech.insert(poly_to_row(t, &mut index));
        }
        let mut rech = SparseEchelon::new(usize::MAX);
        let mut inside = true;
        for s in src {
            let r = restrict_to_cartan(s, cd)?;
            let row = poly_to_row(&r, &mut index);
            if !tech.reduce(row.clone()).is_empty() {
                inside = false;
            }
            rech.insert(row);
        }
        let surjective = inside && rech.rank() == tech.rank();
        out.push(DegreeSurjectivity {
            degree: d,
            source_dim: src.len(),
            restricted_rank: rech.rank(),
            target_dim: tech.rank(),
            restricted_in_target: inside,
            surjective: Some(surjective),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub candidate: String,
    pub member: bool,
    /// Smallest `k ≤ cap` with `p^k ∈ I`.
    pub exponent: Option<u32>,
    /// `Some(true)` when the Rabinowitsch test placed `p` in `√I` without a small exponent.
    pub radical: Option<bool>,
}

impl ProbeResult {
    /// `p ∉ I` but some power of `p` lies in `I`.
    pub fn is_witness(&self) -> bool {
        !self.member && (self.exponent.is_some() || self.radical == Some(true))
    }
}

/// Membership of each candidate in `I`, and the smallest exponent `k ≤ cap` with `p^k ∈ I`.
/// With `rabinowitsch` set, candidates without such an exponent get the full radical test.
pub fn reducedness_probe(
    gb: &GroebnerBasis,
    candidates: &[Poly],
    cap: u32,
    rabinowitsch: bool,
    opts: &GbOptions,
) -> Result<Vec<ProbeResult>, ChevalleyError> {
    let mut out = Vec::new();
    for p in candidates {
        let mut power = gb.normal_form(p);
        let member = power.is_zero();
        let mut exponent = member.then_some(1);
        if !member {
            let reduced = power.clone();
            for k in 2..=cap {
                power = gb.normal_form(&(&power * &reduced));
                if power.is_zero() {
                    exponent = Some(k);
                    break;
                }
            }
        }
        let radical = if exponent.is_none() && rabinowitsch {
            Some(crate::groebner::radical_member(p, gb, 0, opts)?.member)
        } else {
            None
        };
        out.push(ProbeResult {
            candidate: p.to_text(),
            member,
            exponent,
            radical,
        });
    }
    Ok(out)
}

/// Products of generators of degree `≤ max_degree`, then sums and differences of pairs of
/// same-degree products.
pub fn auto_candidates(generators: &[Poly], degrees: &[u32], max_degree: u32) -> Vec<Poly> {
    if generators.is_empty() {
        return vec![];
    }
    let tags = tag_ring(degrees);
    let ring = generators[0].ring().clone();
    let mut ev = Evaluator::new(generators, None, &ring, generators.len());
    let mut out = Vec::new();
    for d in 1..=max_degree {
        let prods: Vec<Poly> = monomials_of_degree(&tags, d).iter().map(|m| ev.eval(m)).collect();
        out.extend(prods.iter().cloned());
        for i in 0..prods.len() {
            for j in i + 1..prods.len() {
                out.push(&prods[i] + &prods[j]);
                out.push(&prods[i] - &prods[j]);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionVerdict {
    pub computed: usize,
    pub expected: usize,
    pub matches: bool,
}

pub fn dimension_check(moment_gb: &GroebnerBasis, expected: usize) -> Result<DimensionVerdict, ChevalleyError> {
    let computed = krull_dimension_of_basis(moment_gb)?;
    Ok(DimensionVerdict {
        computed,
        expected,
        matches: computed == expected,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationMatch {
    pub truncation: u32,
    pub hilbert_a: Vec<u64>,
    pub hilbert_b: Vec<u64>,
    pub hilbert_match: bool,
    pub generator_degrees_a: Vec<u32>,
    pub generator_degrees_b: Vec<u32>,
    pub generator_degrees_match: bool,
    pub relation_degrees_a: Vec<u32>,
    pub relation_degrees_b: Vec<u32>,
    pub relation_degrees_match: bool,
}

impl PresentationMatch {
    pub fn all_match(&self) -> bool {
        self.hilbert_match && self.generator_degrees_match && self.relation_degrees_match
    }

    /// Names of the proxies that agree.
    pub fn matched(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.hilbert_match {
            v.push("hilbert-series");
        }
        if self.generator_degrees_match {
            v.push("generator-degrees");
        }
        if self.relation_degrees_match {
            v.push("relation-degrees");
        }
        v
    }
}

fn sorted(v: &[u32]) -> Vec<u32> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// Graded proxies for an isomorphism: Hilbert functions, generator degrees and relation
/// degrees up to `truncation`.
pub fn compare_presentations(a: &ReductionPresentation, b: &ReductionPresentation, truncation: u32) -> PresentationMatch {
    let t = truncation.min(a.truncation).min(b.truncation);
    let cut = |h: &[u64]| h[..=(t as usize).min(h.len() - 1)].to_vec();
    let rel = |p: &ReductionPresentation| sorted(&p.relation_degrees.iter().copied().filter(|&d| d <= t).collect::<Vec<_>>());
    let (ha, hb) = (cut(&a.hilbert), cut(&b.hilbert));
    let (ga, gb) = (sorted(&a.generator_degrees), sorted(&b.generator_degrees));
    let (ra, rb) = (rel(a), rel(b));
    PresentationMatch {
        truncation: t,
        hilbert_match: ha == hb,
        hilbert_a: ha,
        hilbert_b: hb,
        generator_degrees_match: ga == gb,
        generator_degrees_a: ga,
        generator_degrees_b: gb,
        relation_degrees_match: ra == rb,
        relation_degrees_a: ra,
        relation_degrees_b: rb,
    }
}

/// Each moment generator restricts to zero on `c ⊕ c∨`.
pub fn moment_vanishes_on_cartan(moments: &[Poly], cd: &CartanData) -> Result<bool, ChevalleyError> {
    for mu in moments {
        if !restrict_to_cartan(mu, cd)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Restricted source invariants are fixed by the Weyl generators.
pub fn restricted_weyl_invariant(f: &Poly, cd: &CartanData) -> Result<bool, ChevalleyError> {
    let r = restrict_to_cartan(f, cd)?;
    Ok(match &cd.weyl {
        WeylGroup::Matrices(gens) => crate::invariants::is_group_invariant(&r, gens),
        WeylGroup::DiagonalCyclic { order, exponents } => r.terms().all(|(m, _)| {
            m.0.iter().zip(exponents).map(|(&a, &e)| a as i64 * e).sum::<i64>().rem_euclid(*order as i64) == 0
        }),
    })
}

/// `b = λ a` for some nonzero rational `λ`.
pub fn is_scalar_multiple(a: &Poly, b: &Poly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (m, ca) = a.terms().next().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let cb = b.coefficient(&m);
    if cb.is_zero() {
        return false;
    }
    a.scale(&(cb / ca)) == *b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::group::{lie_preset, symplectic_double, GroupSpec, Representation, SymplecticDouble};
    use crate::invariants::{lie_invariant_basis, torus_invariant_basis, TorusMode};

    fn rank1(m: i64) -> (SymplecticDouble, CartanData) {
        let d = symplectic_double(&Representation::new(GroupSpec::Torus { weights: vec![vec![1, 1 - m]] }, 2).unwrap());
        let cd = CartanData {
            c: vec![vec![rat(1), rat(1)]],
            c_dual: vec![vec![rat(m - 1), rat(1)]],
            weyl: WeylGroup::DiagonalCyclic {
                order: m as u32,
                exponents: vec![1, -1],
            },
            label: format!("rank1-m{m}"),
        };
        (d, cd)
    }

    fn moment_gb(d: &SymplecticDouble) -> (Ideal, GroebnerBasis) {
        let ideal = Ideal::new(d.ring(), d.moment_generators()).unwrap();
        let gb = buchberger(&ideal, MonomialOrder::GrevLex, &GbOptions::default()).unwrap();
        (ideal, gb)
    }

    #[test]
    fn restriction_examples() {
        let (d, cd) = rank1(2);
        let r = d.ring();
        let pairing = Poly::parse("x1*y1 + x2*y2", r).unwrap();
        assert_eq!(restrict_to_cartan(&pairing, &cd).unwrap().to_text(), "2*s*t");
        assert!(moment_vanishes_on_cartan(&d.moment_generators(), &cd).unwrap());
        let c = Poly::constant(r, rat(7));
        assert_eq!(restrict_to_cartan(&c, &cd).unwrap(), Poly::constant(&cd.ring(), rat(7)));
        let f = Poly::parse("x1*x2 + y2", r).unwrap();
        let g = Poly::parse("y1^3 - x1", r).unwrap();
        assert_eq!(
            restrict_to_cartan(&(&f * &g), &cd).unwrap(),
            &restrict_to_cartan(&f, &cd).unwrap() * &restrict_to_cartan(&g, &cd).unwrap()
        );
    }

    #[test]
    fn rank_one_presentations_agree() {
        for m in 2..=4i64 {
            let (d, cd) = rank1(m);
            let opts = GbOptions::default();
            let trunc = 2 * m as u32;
            let target = weyl_invariants(&cd, trunc, 10_000).unwrap();
            let w = weyl_quotient_presentation(&cd, &target, trunc, &opts).unwrap();
            assert_eq!(sorted(&w.generator_degrees), sorted(&[m as u32, 2, m as u32]));
            assert_eq!(w.relations.len(), 1);
            assert_eq!(w.relation_degrees, vec![2 * m as u32]);

            let source = torus_invariant_basis(d.ring(), &d.double_weights().unwrap(), TorusMode::DegreeBound(trunc), 100_000).unwrap();
            for s in surjectivity_check(&source, &cd, &target, trunc).unwrap() {
                assert_eq!(s.surjective, Some(true), "m={m} degree {}", s.degree);
            }
            for f in &source.generators {
                assert!(restricted_weyl_invariant(f, &cd).unwrap());
            }
            let (ideal, gb) = moment_gb(&d);
            let big = reduction_presentation_big(&source.generators, &ideal, &gb, trunc, &opts).unwrap();
            assert!(big.relations_vanish(Some(&gb)));
            let cmp = compare_presentations(&big, &w, trunc);
            assert!(cmp.all_match(), "{cmp:?}");
            let la = linear_presentation(&big.generators, &big.generator_degrees, Some(&gb), trunc, PresentationSource::QuotientLinearAlgebra);
            assert!(compare_presentations(&la, &w, trunc).all_match());
        }
    }

    #[test]
    fn a1_series() {
        let (_, cd) = rank1(2);
        let target = weyl_invariants(&cd, 6, 100).unwrap();
        let w = weyl_quotient_presentation(&cd, &target, 6, &GbOptions::default()).unwrap();
        // (1 + t^2)/(1 - t^2)^2
        assert_eq!(w.hilbert, vec![1, 0, 3, 0, 5, 0, 7]);
        assert_eq!(w.generator_degrees, vec![2, 2, 2]);
        assert_eq!(w.relation_degrees, vec![4]);
    }

    #[test]
    fn torus_reduction_relation() {
        let (d, _) = rank1(2);
        let r = d.ring();
        let (ideal, gb) = moment_gb(&d);
        let gens: Vec<Poly> = ["x1*x2", "y1*y2", "x1*y1"].iter().map(|t| Poly::parse(t, r).unwrap()).collect();
        let p = reduction_presentation_big(&gens, &ideal, &gb, 6, &GbOptions::default()).unwrap();
        assert_eq!(p.relations.len(), 1);
        assert!(is_scalar_multiple(&p.relations[0], &Poly::parse("T1*T2 - T3^2", &p.tag_ring).unwrap()));
        let probe = reducedness_probe(&gb, &[Poly::parse("x1*x2*y1*y2 - x1^2*y1^2", r).unwrap()], 4, false, &GbOptions::default()).unwrap();
        assert!(probe[0].member && !probe[0].is_witness());
    }

    #[test]
    fn trivial_group_has_no_relations() {
        let d = symplectic_double(&Representation::new(GroupSpec::Torus { weights: vec![] }, 1).unwrap());
        let (ideal, gb) = moment_gb(&d);
        let gens = vec![d.x(0), d.y(0)];
        let p = reduction_presentation_big(&gens, &ideal, &gb, 4, &GbOptions::default()).unwrap();
        assert!(p.relations.is_empty());
        assert_eq!(p.hilbert, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn adjoint_sl2_surjective() {
        let (gens, _) = lie_preset("sl", 2, "adjoint", 1).unwrap();
        let d = symplectic_double(&Representation::new(GroupSpec::lie(gens), 3).unwrap());
        let h = vec![rat(0), rat(0), rat(1)];
        let cv = crate::group::dual_cartan(&d, &[h.clone()], true).unwrap();
        let cd = CartanData {
            c: vec![h],
            c_dual: cv,
            weyl: WeylGroup::Matrices(vec![RatMatrix::identity(2).scale(&rat(-1))]),
            label: "sl2-adjoint".into(),
        };
        cd.validate(3).unwrap();
        let source = lie_invariant_basis(d.ring(), &d.derivation_matrices(), 4, 100_000).unwrap();
        let target = weyl_invariants(&cd, 4, 100).unwrap();
        for s in surjectivity_check(&source, &cd, &target, 4).unwrap() {
            assert_eq!(s.surjective, Some(true));
        }
        // a nilpotent line instead of a Cartan subspace
        let bad = CartanData {
            c: vec![vec![rat(1), rat(0), rat(0)]],
            ..cd.clone()
        };
        let verdicts = surjectivity_check(&source, &bad, &target, 4).unwrap();
        assert!(verdicts.iter().any(|s| s.surjective == Some(false)));
    }

    #[test]
    fn sl2_two_copies_dimension() {
        let (gens, names) = lie_preset("sl", 2, "standard", 2).unwrap();
        let d = symplectic_double(
            &Representation::with_names(GroupSpec::lie(gens), names.clone(), crate::group::dual_names(&names)).unwrap(),
        );
        let (_, gb) = moment_gb(&d);
        let v = dimension_check(&gb, 5).unwrap();
        assert!(v.matches, "{v:?}");
    }

    #[test]
    fn cyclic_three_relation() {
        let (_, cd) = rank1(3);
        let target = weyl_invariants(&cd, 6, 100).unwrap();
        let w = weyl_quotient_presentation(&cd, &target, 6, &GbOptions::default()).unwrap();
        let texts: Vec<String> = w.generators.iter().map(Poly::to_text).collect();
        assert_eq!(texts, ["s*t", "s^3", "t^3"]);
        assert!(is_scalar_multiple(&w.relations[0], &Poly::parse("T2*T3 - T1^3", &w.tag_ring).unwrap()));
    }
}
