//! Acting groups, representations and their symplectic doubles.
//!
//! The dual space carries the contragredient action: `-Aᵀ` for a Lie algebra
//! element, `(g⁻¹)ᵀ` for a group element and negated weights for a torus. With
//! coordinates `x` on `V` and the dual coordinates `y` on `V*`, the moment map of
//! `A` is `μ^A = Σ_i y_i (A x)_i`.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{rat, rat_kernel, rat_solve, RatMatrix, Rational};
use crate::poly::{Poly, PolyRing, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("finite group generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("group closure exceeded the cap of {0} elements")]
    ClosureCap(usize),
    #[error("invalid grading: {0}")]
    Grading(String),
    #[error("annihilator of g·c has dimension {found}, expected dim c = {expected}")]
    DualCartan { found: usize, expected: usize },
    #[error("stability was not asserted; supply the dual Cartan basis explicitly")]
    StabilityNotAsserted,
    #[error("unknown preset: {0}")]
    UnknownPreset(String),
}

/// Structure constants `c[i][j][k]` with `[A_i, A_j] = Σ_k c[i][j][k] A_k`.
pub type StructureConstants = Vec<Vec<Vec<Rational>>>;

#[derive(Debug, Clone, PartialEq)]
pub enum GroupSpec {
    /// Weight matrix, one row per one-parameter subgroup, one column per coordinate.
    Torus { weights: Vec<Vec<i64>> },
    LieAlgebra {
        generators: Vec<RatMatrix>,
        structure_constants: Option<StructureConstants>,
    },
    FiniteGroup {
        generators: Vec<RatMatrix>,
        order_cap: Option<usize>,
    },
}

impl GroupSpec {
    pub fn lie(generators: Vec<RatMatrix>) -> Self {
        let structure_constants = derive_structure_constants(&generators);
        GroupSpec::LieAlgebra {
            generators,
            structure_constants,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GroupSpec::Torus { .. } => "torus",
            GroupSpec::LieAlgebra { .. } => "lie-algebra",
            GroupSpec::FiniteGroup { .. } => "finite-group",
        }
    }

    fn validate(&self, n: usize) -> Result<(), GroupError> {
        match self {
            GroupSpec::Torus { weights } => {
                if let Some(r) = weights.iter().position(|row| row.len() != n) {
                    return Err(GroupError::Dimension(format!("weight row {r} does not have {n} entries")));
                }
            }
            GroupSpec::LieAlgebra { generators, structure_constants } => {
                for (k, a) in generators.iter().enumerate() {
                    if a.rows() != n || a.cols() != n {
                        return Err(GroupError::Dimension(format!("Lie generator {k} is not {n}x{n}")));
                    }
                }
                if let Some(c) = structure_constants {
                    let r = generators.len();
                    if c.len() != r || c.iter().any(|ci| ci.len() != r || ci.iter().any(|cij| cij.len() != r)) {
                        return Err(GroupError::Dimension("structure constants must be r x r x r".into()));
                    }
                }
            }
            GroupSpec::FiniteGroup { generators, .. } => {
                for (k, g) in generators.iter().enumerate() {
                    if g.rows() != n || g.cols() != n {
                        return Err(GroupError::Dimension(format!("group generator {k} is not {n}x{n}")));
                    }
                    if g.determinant().is_zero() {
                        return Err(GroupError::NotInvertible(k));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Express commutators of the generators in their span, if it is closed.
pub fn derive_structure_constants(gens: &[RatMatrix]) -> Option<StructureConstants> {
    let r = gens.len();
    if r == 0 {
        return Some(vec![]);
    }
    let n = gens[0].rows();
    // columns are flattened generators
    let mut cols = RatMatrix::zeros(n * n, r);
    for (k, g) in gens.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                cols[(i * n + j, k)] = g[(i, j)].clone();
            }
        }
    }
    let mut out = vec![vec![vec![Rational::zero(); r]; r]; r];
    for i in 0..r {
        for j in 0..r {
            let c = gens[i].commutator(&gens[j]);
            let flat: Vec<Rational> = (0..n * n).map(|t| c[(t / n, t % n)].clone()).collect();
            out[i][j] = rat_solve(&cols, &flat)?;
        }
    }
    Some(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub group: GroupSpec,
    pub dim: usize,
    pub x_names: Vec<String>,
    pub y_names: Vec<String>,
}

impl Representation {
    pub fn new(group: GroupSpec, dim: usize) -> Result<Self, GroupError> {
        let x: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
        let y: Vec<String> = (1..=dim).map(|i| format!("y{i}")).collect();
        Self::with_names(group, x, y)
    }

    pub fn with_names(group: GroupSpec, x_names: Vec<String>, y_names: Vec<String>) -> Result<Self, GroupError> {
        let dim = x_names.len();
        if y_names.len() != dim {
            return Err(GroupError::Dimension("dual names must match".into()));
        }
        group.validate(dim)?;
        Ok(Representation {
            group,
            dim,
            x_names,
            y_names,
        })
    }
}

/// `V ⊕ V*` with coordinates `x_1..x_n, y_1..y_n`.
#[derive(Debug, Clone)]
pub struct SymplecticDouble {
    pub base: Representation,
    ring: Ring,
}

pub fn symplectic_double(rep: &Representation) -> SymplecticDouble {
    let mut names = rep.x_names.clone();
    names.extend(rep.y_names.iter().cloned());
    let ring = PolyRing::new(&names).expect("representation names are valid identifiers");
    SymplecticDouble {
        base: rep.clone(),
        ring,
    }
}

fn block_diag(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let (n, m) = (a.rows(), b.rows());
    let mut out = RatMatrix::zeros(n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            out[(n + i, n + j)] = b[(i, j)].clone();
        }
    }
    out
}

fn diag(entries: &[Rational]) -> RatMatrix {
    let mut m = RatMatrix::zeros(entries.len(), entries.len());
    for (i, e) in entries.iter().enumerate() {
        m[(i, i)] = e.clone();
    }
    m
}

impl SymplecticDouble {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.base.dim
    }

    pub fn x(&self, i: usize) -> Poly {
        Poly::var(&self.ring, i)
    }

    pub fn y(&self, i: usize) -> Poly {
        Poly::var(&self.ring, self.base.dim + i)
    }

    /// Torus weights on `(x, y)`.
    pub fn double_weights(&self) -> Option<Vec<Vec<i64>>> {
        match &self.base.group {
            GroupSpec::Torus { weights } => Some(
                weights
                    .iter()
                    .map(|row| row.iter().copied().chain(row.iter().map(|a| -a)).collect())
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Infinitesimal action on `V ⊕ V*`: `diag(A, -Aᵀ)` per Lie generator, or the
    /// diagonal weight matrices of a torus.
    pub fn derivation_matrices(&self) -> Vec<RatMatrix> {
        match &self.base.group {
            GroupSpec::LieAlgebra { generators, .. } => generators
                .iter()
                .map(|a| block_diag(a, &a.transpose().scale(&rat(-1))))
                .collect(),
            GroupSpec::Torus { .. } => self
                .double_weights()
                .unwrap()
                .iter()
                .map(|row| diag(&row.iter().map(|&w| rat(w)).collect::<Vec<_>>()))
                .collect(),
            GroupSpec::FiniteGroup { .. } => vec![],
        }
    }

    /// Group generators acting on `V ⊕ V*` as `diag(g, (g⁻¹)ᵀ)`.
    pub fn group_matrices(&self) -> Vec<RatMatrix> {
        match &self.base.group {
            GroupSpec::FiniteGroup { generators, .. } => generators
                .iter()
                .map(|g| block_diag(g, &g.inverse().expect("validated invertible").transpose()))
                .collect(),
            _ => vec![],
        }
    }

    /// `μ^A = Σ_i y_i (A x)_i`, one per generator; empty for finite groups.
    pub fn moment_generators(&self) -> Vec<Poly> {
        let n = self.n();
        match &self.base.group {
            GroupSpec::Torus { weights } => weights
                .iter()
                .map(|row| {
                    let mut p = Poly::zero(&self.ring);
                    for (j, &a) in row.iter().enumerate() {
                        if a != 0 {
                            p = &p + &(&self.x(j) * &self.y(j)).scale(&rat(a));
                        }
                    }
                    p
                })
                .collect(),
            GroupSpec::LieAlgebra { generators, .. } => generators.iter().map(|a| self.moment_of(a)).collect(),
            GroupSpec::FiniteGroup { .. } => {
                let _ = n;
                vec![]
            }
        }
    }

    pub fn moment_of(&self, a: &RatMatrix) -> Poly {
        let n = self.n();
        let mut p = Poly::zero(&self.ring);
        for i in 0..n {
            for j in 0..n {
                if !a[(i, j)].is_zero() {
                    p = &p + &(&self.y(i) * &self.x(j)).scale(&a[(i, j)]);
                }
            }
        }
        p
    }

    /// Structure constants when the group is a Lie algebra that supplies or closes them.
    pub fn structure_constants(&self) -> Option<&StructureConstants> {
        match &self.base.group {
            GroupSpec::LieAlgebra { structure_constants, .. } => structure_constants.as_ref(),
            _ => None,
        }
    }

    pub fn lie_generators(&self) -> &[RatMatrix] {
        match &self.base.group {
            GroupSpec::LieAlgebra { generators, .. } => generators,
            _ => &[],
        }
    }

    /// Span of `A_k v` over generators and the given vectors of `V`.
    pub fn tangent_span(&self, vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        match &self.base.group {
            GroupSpec::Torus { weights } => {
                for row in weights {
                    for v in vectors {
                        out.push(v.iter().zip(row).map(|(x, &w)| x * rat(w)).collect());
                    }
                }
            }
            GroupSpec::LieAlgebra { generators, .. } => {
                for a in generators {
                    for v in vectors {
                        out.push(a.mul_vec(v));
                    }
                }
            }
            GroupSpec::FiniteGroup { .. } => {}
        }
        out
    }
}

/// Weyl group acting on `c ⊕ c∨` coordinates `(s_1..s_r, t_1..t_r)`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeylGroup {
    /// Rational matrices on `c ⊕ c∨`.
    Matrices(Vec<RatMatrix>),
    /// Cyclic group of the given order whose generator scales coordinate `i` by
    /// `ζ^{exponents[i]}` for a primitive root of unity `ζ`.
    DiagonalCyclic { order: u32, exponents: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CartanData {
    pub c: Vec<Vec<Rational>>,
    pub c_dual: Vec<Vec<Rational>>,
    pub weyl: WeylGroup,
    pub label: String,
}

impl CartanData {
    pub fn rank(&self) -> usize {
        self.c.len()
    }

    /// `P[a][b] = c∨_b (c_a)`.
    pub fn pairing_matrix(&self) -> RatMatrix {
        let r = self.rank();
        let mut p = RatMatrix::zeros(r, self.c_dual.len());
        for a in 0..r {
            for b in 0..self.c_dual.len() {
                p[(a, b)] = self.c[a].iter().zip(&self.c_dual[b]).map(|(x, y)| x * y).sum();
            }
        }
        p
    }

    /// Check dimensions, nondegenerate pairing and that W preserves the symplectic form.
    pub fn validate(&self, n: usize) -> Result<(), GroupError> {
        let r = self.rank();
        if self.c_dual.len() != r {
            return Err(GroupError::Dimension(format!(
                "dim c = {r} but dim c∨ = {}",
                self.c_dual.len()
            )));
        }
        if self.c.iter().chain(&self.c_dual).any(|v| v.len() != n) {
            return Err(GroupError::Dimension(format!("Cartan vectors must have {n} entries")));
        }
        let p = self.pairing_matrix();
        if r > 0 && p.determinant().is_zero() {
            return Err(GroupError::Dimension("pairing between c and c∨ is degenerate".into()));
        }
        match &self.weyl {
            WeylGroup::Matrices(ms) => {
                let j = symplectic_form(&p);
                for (k, m) in ms.iter().enumerate() {
                    if m.rows() != 2 * r || m.cols() != 2 * r {
                        return Err(GroupError::Dimension(format!(
                            "Weyl generator {k} is {}x{} but c ⊕ c∨ has dimension {}",
                            m.rows(),
                            m.cols(),
                            2 * r
                        )));
                    }
                    if m.transpose().mul(&j).mul(m) != j {
                        return Err(GroupError::Dimension(format!(
                            "Weyl generator {k} does not preserve the symplectic form"
                        )));
                    }
                }
            }
            WeylGroup::DiagonalCyclic { order, exponents } => {
                if exponents.len() != 2 * r {
                    return Err(GroupError::Dimension(format!(
                        "cyclic Weyl exponents have length {} but c ⊕ c∨ has dimension {}",
                        exponents.len(),
                        2 * r
                    )));
                }
                let m = *order as i64;
                for a in 0..r {
                    for b in 0..r {
                        if !p[(a, b)].is_zero() && (exponents[a] + exponents[r + b]).rem_euclid(m) != 0 {
                            return Err(GroupError::Dimension(
                                "cyclic Weyl action does not preserve the pairing".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Ring of `c ⊕ c∨` coordinates `s_1..s_r, t_1..t_r`.
    pub fn ring(&self) -> Ring {
        let r = self.rank();
        let mut names: Vec<String> = (1..=r).map(|i| if r == 1 { "s".into() } else { format!("s{i}") }).collect();
        names.extend((1..=r).map(|i| if r == 1 { "t".into() } else { format!("t{i}") }));
        PolyRing::new(&names).expect("valid names")
    }
}

/// `ω((s,t),(s',t')) = t·P̃ s' - t'·P̃ s` as a matrix on `c ⊕ c∨` coordinates.
fn symplectic_form(p: &RatMatrix) -> RatMatrix {
    let r = p.rows();
    let mut j = RatMatrix::zeros(2 * r, 2 * r);
    for a in 0..r {
        for b in 0..r {
            j[(a, r + b)] = -p[(a, b)].clone();
            j[(r + b, a)] = p[(a, b)].clone();
        }
    }
    j
}

/// Annihilator of `g·c` in `V*`, valid when the caller asserts stability.
pub fn dual_cartan(
    d: &SymplecticDouble,
    c: &[Vec<Rational>],
    assert_stable: bool,
) -> Result<Vec<Vec<Rational>>, GroupError> {
    if !assert_stable {
        return Err(GroupError::StabilityNotAsserted);
    }
    let n = d.n();
    if c.iter().any(|v| v.len() != n) {
        return Err(GroupError::Dimension(format!("c vectors must have {n} entries")));
    }
    let span = d.tangent_span(c);
    let m = if span.is_empty() {
        RatMatrix::zeros(0, n)
    } else {
        RatMatrix::from_rows(span)
    };
    let ann = rat_kernel(&m);
    if ann.len() != c.len() || c.is_empty() {
        return Err(GroupError::DualCartan {
            found: ann.len(),
            expected: c.len(),
        });
    }
    Ok(ann)
}

/// All elements of the group generated by `gens`.
pub fn finite_group_elements(gens: &[RatMatrix], cap: usize) -> Result<Vec<RatMatrix>, GroupError> {
    let n = gens.first().map_or(0, |g| g.rows());
    let id = RatMatrix::identity(n);
    let mut seen: HashSet<RatMatrix> = HashSet::new();
    let mut out = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let p = g.mul(h);
            if seen.insert(p.clone()) {
                if out.len() >= cap {
                    return Err(GroupError::ClosureCap(cap));
                }
                out.push(p.clone());
                queue.push_back(p);
            }
        }
    }
    Ok(out)
}

/// `Z/m`-grading of `gl_n` from conjugation by `diag(ξ^{d_1}, ..)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaGrading {
    pub n: usize,
    pub m: u32,
    pub exponents: Vec<u32>,
    /// Residue `i` → pairs `(j, k)` (0-based) with `d_j - d_k ≡ i`.
    pub pieces: BTreeMap<u32, Vec<(usize, usize)>>,
}

impl ThetaGrading {
    pub fn new(n: usize, m: u32, exponents: &[i64]) -> Result<Self, GroupError> {
        if m < 2 {
            return Err(GroupError::Grading(format!("order m = {m} must be at least 2")));
        }
        if exponents.len() != n {
            return Err(GroupError::Grading(format!(
                "{} exponents given for n = {n}",
                exponents.len()
            )));
        }
        let d: Vec<u32> = exponents.iter().map(|&e| e.rem_euclid(m as i64) as u32).collect();
        let mut pieces: BTreeMap<u32, Vec<(usize, usize)>> = (0..m).map(|i| (i, vec![])).collect();
        for j in 0..n {
            for k in 0..n {
                let i = (d[j] + m - d[k]) % m;
                pieces.get_mut(&i).unwrap().push((j, k));
            }
        }
        Ok(ThetaGrading {
            n,
            m,
            exponents: d,
            pieces,
        })
    }

    pub fn piece(&self, i: i64) -> &[(usize, usize)] {
        &self.pieces[&(i.rem_euclid(self.m as i64) as u32)]
    }

    pub fn dim(&self, i: i64) -> usize {
        self.piece(i).len()
    }
}

/// θ-representation: `g_0` acting on `g_1` by commutator.
#[derive(Debug, Clone)]
pub struct ThetaRep {
    pub grading: ThetaGrading,
    pub g0: GroupSpec,
    pub rep: Representation,
    /// `y` coordinate `k` is paired with `E_{qp} ∈ g_{-1}` for `g_1` basis element `E_{pq}`.
    pub dual_pairs: Vec<(usize, usize)>,
}

pub fn elementary(n: usize, j: usize, k: usize) -> RatMatrix {
    let mut e = RatMatrix::zeros(n, n);
    e[(j, k)] = Rational::one();
    e
}

fn pair_name(prefix: char, n: usize, p: usize, q: usize) -> String {
    if n < 10 {
        format!("{prefix}{}{}", p + 1, q + 1)
    } else {
        format!("{prefix}{}_{}", p + 1, q + 1)
    }
}

pub fn theta_representation(n: usize, m: u32, exponents: &[i64]) -> Result<ThetaRep, GroupError> {
    let grading = ThetaGrading::new(n, m, exponents)?;
    let g1: Vec<(usize, usize)> = grading.piece(1).to_vec();
    let index: BTreeMap<(usize, usize), usize> = g1.iter().enumerate().map(|(i, &pq)| (pq, i)).collect();
    let dim = g1.len();
    let mut gens = Vec::new();
    for &(j, k) in grading.piece(0) {
        // [E_jk, E_pq] = δ_kp E_jq - δ_qj E_pk
        let mut a = RatMatrix::zeros(dim, dim);
        for (col, &(p, q)) in g1.iter().enumerate() {
            if k == p {
                a[(index[&(j, q)], col)] += Rational::one();
            }
            if q == j {
                a[(index[&(p, k)], col)] -= Rational::one();
            }
        }
        gens.push(a);
    }
    let g0 = GroupSpec::lie(gens);
    let x_names = g1.iter().map(|&(p, q)| pair_name('x', n, p, q)).collect();
    let y_names = g1.iter().map(|&(p, q)| pair_name('y', n, p, q)).collect();
    let rep = Representation::with_names(g0.clone(), x_names, y_names)?;
    Ok(ThetaRep {
        dual_pairs: g1.iter().map(|&(p, q)| (q, p)).collect(),
        grading,
        g0,
        rep,
    })
}

/// Standard generators of `sl_n`: `E_ij` for `i ≠ j`, then `E_ii - E_{i+1,i+1}`.
pub fn sl_generators(n: usize) -> Vec<RatMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(elementary(n, i, j));
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        out.push(elementary(n, i, i).sub(&elementary(n, i + 1, i + 1)));
    }
    out
}

pub fn gl_generators(n: usize) -> Vec<RatMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            out.push(elementary(n, i, j));
        }
    }
    out
}

/// Adjoint matrices of `gens` in the basis `gens` (requires closure).
pub fn adjoint_matrices(gens: &[RatMatrix]) -> Option<Vec<RatMatrix>> {
    let c = derive_structure_constants(gens)?;
    let r = gens.len();
    Some(
        (0..r)
            .map(|i| {
                let mut a = RatMatrix::zeros(r, r);
                for j in 0..r {
                    for k in 0..r {
                        a[(k, j)] = c[i][j][k].clone();
                    }
                }
                a
            })
            .collect(),
    )
}

/// Induced action on `Λ²` in the basis `e_i ∧ e_j`, `i < j`, lexicographic.
pub fn wedge2_matrix(a: &RatMatrix) -> RatMatrix {
    let n = a.rows();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut out = RatMatrix::zeros(pairs.len(), pairs.len());
    for (col, &(i, j)) in pairs.iter().enumerate() {
        // A(e_i ∧ e_j) = Ae_i ∧ e_j + e_i ∧ Ae_j
        for k in 0..n {
            for (coef, p, q) in [(&a[(k, i)], k, j), (&a[(k, j)], i, k)] {
                if coef.is_zero() || p == q {
                    continue;
                }
                let (lo, hi, sign) = if p < q { (p, q, Rational::one()) } else { (q, p, -Rational::one()) };
                out[(index[&(lo, hi)], col)] += coef * sign;
            }
        }
    }
    out
}

fn block_repeat(a: &RatMatrix, copies: usize) -> RatMatrix {
    let mut out = a.clone();
    for _ in 1..copies {
        out = block_diag(&out, a);
    }
    out
}

/// Octonion left multiplications by the imaginary units, as 8x8 matrices.
fn octonion_left_units() -> Vec<RatMatrix> {
    // e_i e_j = e_k for the cyclic triples, units 1..7
    const TRIPLES: [(usize, usize, usize); 7] = [(1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)];
    let mut table = vec![vec![(0usize, 0i64); 8]; 8];
    for i in 0..8 {
        table[0][i] = (i, 1);
        table[i][0] = (i, 1);
    }
    for i in 1..8 {
        table[i][i] = (0, -1);
    }
    for &(a, b, c) in &TRIPLES {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            table[x][y] = (z, 1);
            table[y][x] = (z, -1);
        }
    }
    (1..8)
        .map(|i| {
            let mut m = RatMatrix::zeros(8, 8);
            for j in 0..8 {
                let (k, s) = table[i][j];
                m[(k, j)] = rat(s);
            }
            m
        })
        .collect()
}

/// Named Lie algebra representations.
pub fn lie_preset(algebra: &str, n: usize, rep: &str, copies: usize) -> Result<(Vec<RatMatrix>, Vec<String>), GroupError> {
    let copies = copies.max(1);
    let (gens, names): (Vec<RatMatrix>, Option<Vec<String>>) = match (algebra, rep) {
        ("sl", "standard") => (sl_generators(n), None),
        ("gl", "standard") => (gl_generators(n), None),
        ("sl", "adjoint") => (
            adjoint_matrices(&sl_generators(n)).ok_or_else(|| GroupError::UnknownPreset("sl adjoint".into()))?,
            None,
        ),
        ("sl", "wedge2") => {
            let names: Vec<String> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| pair_name('x', n, i, j))
                .collect();
            (sl_generators(n).iter().map(wedge2_matrix).collect(), Some(names))
        }
        ("spin", "spinor") if n == 7 => {
            let g = octonion_left_units();
            let mut out = Vec::new();
            for i in 0..7 {
                for j in i + 1..7 {
                    out.push(g[i].mul(&g[j]));
                }
            }
            (out, None)
        }
        _ => return Err(GroupError::UnknownPreset(format!("{algebra}{n} {rep}"))),
    };
    let gens: Vec<RatMatrix> = gens.iter().map(|a| block_repeat(a, copies)).collect();
    let dim = gens.first().map_or(0, |a| a.rows());
    let names = match names {
        Some(base) if copies == 1 => base,
        _ => (1..=dim).map(|i| format!("x{i}")).collect(),
    };
    Ok((gens, names))
}

/// `y`-names matching `x`-names.
pub fn dual_names(x_names: &[String]) -> Vec<String> {
    x_names
        .iter()
        .map(|x| match x.strip_prefix('x') {
            Some(rest) => format!("y{rest}"),
            None => format!("{x}_dual"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn torus(weights: Vec<Vec<i64>>) -> SymplecticDouble {
        let n = weights[0].len();
        symplectic_double(&Representation::new(GroupSpec::Torus { weights }, n).unwrap())
    }

    #[test]
    fn torus_double_weights_and_moment() {
        let d = torus(vec![vec![1, -1]]);
        assert_eq!(d.double_weights().unwrap(), vec![vec![1, -1, -1, 1]]);
        assert_eq!(d.moment_generators(), vec![Poly::parse("x1*y1 - x2*y2", d.ring()).unwrap()]);
    }

    #[test]
    fn sl2_moment_generators() {
        let gens = vec![
            RatMatrix::from_i64(&[vec![0, 1], vec![0, 0]]),
            RatMatrix::from_i64(&[vec![1, 0], vec![0, -1]]),
            RatMatrix::from_i64(&[vec![0, 0], vec![1, 0]]),
        ];
        let d = symplectic_double(&Representation::new(GroupSpec::lie(gens), 2).unwrap());
        let r = d.ring();
        let expect: Vec<Poly> = ["x2*y1", "x1*y1 - x2*y2", "x1*y2"].iter().map(|t| Poly::parse(t, r).unwrap()).collect();
        assert_eq!(d.moment_generators(), expect);
    }

    #[test]
    fn contragredient_pairing_is_invariant() {
        let a = RatMatrix::from_i64(&[vec![1, 2], vec![3, 4]]);
        let d = symplectic_double(&Representation::new(GroupSpec::lie(vec![a]), 2).unwrap());
        let big = &d.derivation_matrices()[0];
        let v = vec![rat(2), rat(-1)];
        let phi = vec![rat(5), rat(7)];
        let av: Vec<Rational> = (0..2).map(|i| big[(i, 0)].clone() * &v[0] + big[(i, 1)].clone() * &v[1]).collect();
        let aphi: Vec<Rational> = (0..2)
            .map(|i| big[(2 + i, 2)].clone() * &phi[0] + big[(2 + i, 3)].clone() * &phi[1])
            .collect();
        let lhs: Rational = phi.iter().zip(&av).map(|(a, b)| a * b).sum::<Rational>()
            + aphi.iter().zip(&v).map(|(a, b)| a * b).sum::<Rational>();
        assert!(lhs.is_zero());
    }

    #[test]
    fn finite_dual_action_inverts() {
        let g = RatMatrix::from_i64(&[vec![0, -1], vec![1, -1]]);
        let d = symplectic_double(
            &Representation::new(
                GroupSpec::FiniteGroup {
                    generators: vec![g.clone()],
                    order_cap: None,
                },
                2,
            )
            .unwrap(),
        );
        let big = &d.group_matrices()[0];
        let dual = RatMatrix::from_rows((2..4).map(|i| (2..4).map(|j| big[(i, j)].clone()).collect()).collect());
        assert!(dual.mul(&g.transpose()).is_identity());
        assert!(d.moment_generators().is_empty());
    }

    #[test]
    fn theta_quiver_dimensions() {
        let t = theta_representation(5, 3, &[0, 1, 1, 2, 2]).unwrap();
        assert_eq!(t.grading.dim(0), 9);
        assert_eq!(t.grading.dim(1), 8);
        assert_eq!(t.rep.dim, 8);
        let total: usize = (0..3).map(|i| t.grading.dim(i)).sum();
        assert_eq!(total, 25);
        // Hom(V0,V1) ⊕ Hom(V1,V2) ⊕ Hom(V2,V0)
        let blocks = |j: usize| [0u32, 1, 1, 2, 2][j];
        let mut counts = [0; 3];
        for &(p, q) in t.grading.piece(1) {
            counts[blocks(q) as usize] += 1;
            assert_eq!((blocks(p) + 3 - blocks(q)) % 3, 1);
        }
        assert_eq!(counts, [2, 4, 2]);
    }

    #[test]
    fn theta_cyclic_and_trivial() {
        let t = theta_representation(4, 4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(t.grading.piece(0), &[(0, 0), (1, 1), (2, 2), (3, 3)]);
        assert_eq!(t.grading.piece(1), &[(0, 3), (1, 0), (2, 1), (3, 2)]);
        let t = theta_representation(2, 2, &[0, 0]).unwrap();
        assert_eq!(t.rep.dim, 0);
        assert!(theta_representation(2, 1, &[0, 0]).is_err());
        assert!(theta_representation(2, 3, &[0]).is_err());
    }

    #[test]
    fn theta_bracket_respects_grading() {
        let g = ThetaGrading::new(5, 3, &[0, 1, 1, 2, 2]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for &(a, b) in g.piece(i) {
                    for &(c, d) in g.piece(j) {
                        let br = elementary(5, a, b).commutator(&elementary(5, c, d));
                        for p in 0..5 {
                            for q in 0..5 {
                                if !br[(p, q)].is_zero() {
                                    assert!(g.piece(i + j).contains(&(p, q)));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dual_cartan_examples() {
        let d = torus(vec![vec![1, -1]]);
        let cv = dual_cartan(&d, &[vec![rat(1), rat(1)]], true).unwrap();
        assert_eq!(cv.len(), 1);
        assert_eq!(cv[0][0], cv[0][1]);
        assert!(dual_cartan(&d, &[vec![rat(1), rat(1)]], false).is_err());

        let (gens, _) = lie_preset("sl", 2, "adjoint", 1).unwrap();
        let d = symplectic_double(&Representation::new(GroupSpec::lie(gens), 3).unwrap());
        // basis (e, f, h) of the preset
        let h = vec![rat(0), rat(0), rat(1)];
        let cv = dual_cartan(&d, &[h], true).unwrap();
        assert_eq!(cv.len(), 1);
        assert!(cv[0][0].is_zero() && cv[0][1].is_zero() && !cv[0][2].is_zero());

        let (gens, _) = lie_preset("sl", 2, "standard", 2).unwrap();
        let d = symplectic_double(&Representation::new(GroupSpec::lie(gens), 4).unwrap());
        assert!(matches!(dual_cartan(&d, &[], true), Err(GroupError::DualCartan { .. })));
    }

    #[test]
    fn group_closure_examples() {
        let minus = RatMatrix::identity(2).scale(&rat(-1));
        assert_eq!(finite_group_elements(&[minus], 100).unwrap().len(), 2);
        let r3 = RatMatrix::from_i64(&[vec![0, -1], vec![1, -1]]);
        assert!(r3.mul(&r3).mul(&r3).is_identity());
        assert_eq!(finite_group_elements(&[r3.clone()], 100).unwrap().len(), 3);
        assert_eq!(finite_group_elements(&[r3], 2), Err(GroupError::ClosureCap(2)));
        let half = ratio(1, 2);
        assert!(finite_group_elements(&[RatMatrix::identity(1).scale(&half)], 50).is_err());
    }

    #[test]
    fn presets_close_under_bracket() {
        for (alg, n, rep) in [("sl", 2, "standard"), ("sl", 3, "standard"), ("sl", 4, "wedge2"), ("sl", 2, "adjoint")] {
            let (gens, names) = lie_preset(alg, n, rep, 1).unwrap();
            assert_eq!(names.len(), gens[0].rows());
            assert!(derive_structure_constants(&gens).is_some(), "{alg}{n} {rep}");
        }
        let (gens, _) = lie_preset("spin", 7, "spinor", 1).unwrap();
        assert_eq!(gens.len(), 21);
        assert!(derive_structure_constants(&gens).is_some());
    }

    #[test]
    fn cartan_validation() {
        let cd = CartanData {
            c: vec![vec![rat(1), rat(1)]],
            c_dual: vec![vec![rat(1), rat(1)]],
            weyl: WeylGroup::Matrices(vec![RatMatrix::identity(4)]),
            label: "bad".into(),
        };
        assert!(matches!(cd.validate(2), Err(GroupError::Dimension(_))));
        let cd = CartanData {
            weyl: WeylGroup::Matrices(vec![RatMatrix::identity(2).scale(&rat(-1))]),
            ..cd
        };
        assert!(cd.validate(2).is_ok());
    }
}
