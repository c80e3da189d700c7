//! Scenario files: a group acting on `V`, Cartan data, the checks to run and their budgets.
//!
//! Scenarios are TOML. Matrices are lists of rows whose entries are integers or rational
//! strings such as `"-1/2"`; vectors in `V` and `V*` may also be written as linear forms
//! in the representation's variables, e.g. `"x21 + x42 + x14"`.

mod corpus;
mod report;
mod run;

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{parse_rational, RatMatrix, Rational};
use crate::darboux::{DarbouxError, FormalTwoForm};
use crate::group::{
    dual_cartan, dual_names, lie_preset, symplectic_double, theta_representation, CartanData, GroupError, GroupSpec,
    Representation, SymplecticDouble, WeylGroup,
};
use crate::poly::{Poly, PolyError, PolyRing, Ring};

pub use corpus::{bundled, corpus, list_corpus, CorpusEntry};
pub use report::{CheckRecord, CheckStatus, Conventions, Report, Verdict, REPORT_SCHEMA};
pub use run::{run_scenario, RunOptions};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{origin}: {message}")]
    Schema { origin: String, message: String },
    #[error("{origin}: {field}: {message}")]
    Invalid {
        origin: String,
        field: String,
        message: String,
    },
    #[error("no bundled scenario named `{0}`")]
    UnknownLabel(String),
}

/// Hypotheses a scenario declares about its representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    Visible,
    Stable,
    LocallyFree,
    Polar,
    Theta,
}

impl Flag {
    pub const ALL: [Flag; 5] = [Flag::Visible, Flag::Stable, Flag::LocallyFree, Flag::Polar, Flag::Theta];

    pub fn name(self) -> &'static str {
        match self {
            Flag::Visible => "visible",
            Flag::Stable => "stable",
            Flag::LocallyFree => "locally-free",
            Flag::Polar => "polar",
            Flag::Theta => "theta",
        }
    }

    pub fn parse(name: &str) -> Option<Flag> {
        Flag::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Checks in dependency order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Moment,
    Invariants,
    Restriction,
    Hilbert,
    Dimension,
    Reducedness,
    Poisson,
    Darboux,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Moment => "moment",
            Check::Invariants => "invariants",
            Check::Restriction => "restriction",
            Check::Hilbert => "hilbert",
            Check::Dimension => "dimension",
            Check::Reducedness => "reducedness",
            Check::Poisson => "poisson",
            Check::Darboux => "darboux",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum VectorLit {
    Entries(Vec<Scalar>),
    Form(String),
}

type MatrixLit = Vec<Vec<Scalar>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Preset {
    algebra: String,
    n: usize,
    rep: String,
    #[serde(default = "one")]
    copies: usize,
}

fn one() -> usize {
    1
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum GroupSection {
    Torus {
        weights: Vec<Vec<i64>>,
    },
    Lie {
        preset: Option<Preset>,
        generators: Option<Vec<MatrixLit>>,
    },
    Finite {
        generators: Vec<MatrixLit>,
        #[serde(rename = "order-cap")]
        order_cap: Option<usize>,
    },
    Theta {
        n: usize,
        m: u32,
        exponents: Vec<i64>,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RepresentationSection {
    dim: Option<usize>,
    x_names: Option<Vec<String>>,
    y_names: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum DualSpec {
    Keyword(String),
    Vectors(Vec<VectorLit>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct WeylSection {
    cyclic: Option<u32>,
    exponents: Option<Vec<i64>>,
    generators: Option<Vec<MatrixLit>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct CartanSection {
    c: Option<Vec<VectorLit>>,
    c_dual: Option<DualSpec>,
    /// Rank of an abstract `c` when the scenario has no group on `V`.
    rank: Option<usize>,
    weyl: WeylSection,
    closure_cap: Option<usize>,
}

/// Degree bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Bounds {
    /// Invariants and restriction checks run through this degree.
    #[serde(default = "default_degree")]
    pub degree: u32,
    /// Hilbert functions are compared through this degree.
    pub truncation: Option<u32>,
    /// Poisson-ideal elements are sought up to this degree.
    pub poisson_degree: Option<u32>,
}

fn default_degree() -> u32 {
    6
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            degree: default_degree(),
            truncation: None,
            poisson_degree: None,
        }
    }
}

impl Bounds {
    pub fn truncation(&self) -> u32 {
        self.truncation.unwrap_or(self.degree)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Budgets {
    #[serde(default = "default_steps")]
    pub steps: u64,
    #[serde(default = "default_seconds")]
    pub seconds: f64,
    #[serde(default = "default_basis_cap")]
    pub basis_cap: usize,
}

fn default_steps() -> u64 {
    1_000_000
}

fn default_seconds() -> f64 {
    300.0
}

fn default_basis_cap() -> usize {
    crate::invariants::DEFAULT_BASIS_CAP
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            steps: default_steps(),
            seconds: default_seconds(),
            basis_cap: default_basis_cap(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct WitnessSection {
    #[serde(default)]
    candidates: Vec<String>,
    #[serde(default)]
    auto: bool,
    #[serde(default = "four")]
    max_degree: u32,
    #[serde(default = "four")]
    cap: u32,
    #[serde(default)]
    rabinowitsch: bool,
}

fn four() -> u32 {
    4
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormEntry {
    left: String,
    right: String,
    coefficient: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DarbouxSection {
    variables: Vec<String>,
    truncation: u32,
    form: Vec<FormEntry>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpectedSection {
    dimension: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ScenarioFile {
    label: String,
    summary: String,
    #[serde(default = "yes")]
    enabled: bool,
    #[serde(default)]
    flags: Vec<Flag>,
    checks: Vec<Check>,
    group: Option<GroupSection>,
    #[serde(default)]
    representation: RepresentationSection,
    cartan: Option<CartanSection>,
    #[serde(default)]
    bounds: Bounds,
    #[serde(default)]
    budgets: Budgets,
    witnesses: Option<WitnessSection>,
    darboux: Option<DarbouxSection>,
    #[serde(default)]
    expected: ExpectedSection,
}

/// Candidates for the reducedness probe.
#[derive(Debug, Clone)]
pub struct Witnesses {
    pub candidates: Vec<Poly>,
    pub auto: bool,
    pub max_degree: u32,
    pub cap: u32,
    pub rabinowitsch: bool,
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub label: String,
    pub summary: String,
    pub enabled: bool,
    pub flags: Vec<Flag>,
    /// Requested checks, sorted in dependency order.
    pub checks: Vec<Check>,
    pub double: Option<SymplecticDouble>,
    /// Finite groups are closed under products up to this many elements.
    pub order_cap: usize,
    pub cartan: Option<CartanData>,
    /// Weyl groups given by matrices are closed up to this many elements.
    pub closure_cap: usize,
    pub bounds: Bounds,
    pub budgets: Budgets,
    pub witnesses: Option<Witnesses>,
    pub expected_dimension: Option<usize>,
    pub darboux: Option<FormalTwoForm>,
}

struct Ctx<'a> {
    origin: &'a str,
}

impl Ctx<'_> {
    fn err(&self, field: &str, message: impl ToString) -> ScenarioError {
        ScenarioError::Invalid {
            origin: self.origin.to_string(),
            field: field.to_string(),
            message: message.to_string(),
        }
    }

    fn scalar(&self, field: &str, s: &Scalar) -> Result<Rational, ScenarioError> {
        match s {
            Scalar::Int(i) => Ok(Rational::from_integer((*i).into())),
            Scalar::Text(t) => parse_rational(t.trim()).ok_or_else(|| self.err(field, format!("`{t}` is not a rational number"))),
        }
    }

    fn matrix(&self, field: &str, m: &MatrixLit) -> Result<RatMatrix, ScenarioError> {
        let rows = m
            .iter()
            .map(|r| r.iter().map(|s| self.scalar(field, s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || rows.iter().any(|r| r.len() != cols) {
            return Err(self.err(field, "matrix rows must be nonempty and of equal length"));
        }
        Ok(RatMatrix::from_rows(rows))
    }

    fn vector(&self, field: &str, v: &VectorLit, names: &[String]) -> Result<Vec<Rational>, ScenarioError> {
        match v {
            VectorLit::Entries(e) => e.iter().map(|s| self.scalar(field, s)).collect(),
            VectorLit::Form(text) => {
                let ring = PolyRing::new(names).map_err(|e| self.err(field, e))?;
                let p = Poly::parse(text, &ring).map_err(|e| self.err(field, e))?;
                if p.terms().any(|(m, _)| m.degree() != 1) {
                    return Err(self.err(field, format!("`{text}` is not a linear form")));
                }
                Ok((0..names.len())
                    .map(|i| p.coefficient(&crate::poly::Monomial::var(names.len(), i)))
                    .collect())
            }
        }
    }
}

fn poly_error(ctx: &Ctx, field: &str, e: PolyError) -> ScenarioError {
    ctx.err(field, e)
}

fn group_error(ctx: &Ctx, field: &str, e: GroupError) -> ScenarioError {
    ctx.err(field, e)
}

impl Scenario {
    /// Parse and validate scenario text; `origin` names the source in error messages.
    pub fn parse(text: &str, origin: &str) -> Result<Scenario, ScenarioError> {
        let file: ScenarioFile = toml::from_str(text).map_err(|e| ScenarioError::Schema {
            origin: origin.to_string(),
            message: e.to_string().trim_end().to_string(),
        })?;
        Self::resolve(file, &Ctx { origin })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    /// A bundled scenario by label, or a scenario file by path.
    pub fn load_any(target: &str) -> Result<Scenario, ScenarioError> {
        if let Some(entry) = bundled(target) {
            return Self::parse(entry.text, entry.file_name);
        }
        let path = Path::new(target);
        if path.exists() {
            return Self::load(path);
        }
        Err(ScenarioError::UnknownLabel(target.to_string()))
    }

    pub fn ring(&self) -> Option<&Ring> {
        self.double.as_ref().map(SymplecticDouble::ring)
    }

    fn resolve(file: ScenarioFile, ctx: &Ctx) -> Result<Scenario, ScenarioError> {
        let mut checks = file.checks.clone();
        checks.sort();
        checks.dedup();
        let mut flags = file.flags.clone();
        flags.sort();
        flags.dedup();

        let mut order_cap = 10_000;
        let rep = match &file.group {
            None => None,
            Some(g) => Some(Self::representation(g, &file.representation, ctx, &mut order_cap)?),
        };
        if let (Some(rep), Some(dim)) = (&rep, file.representation.dim) {
            if rep.dim != dim {
                return Err(ctx.err("representation.dim", format!("declared {dim} but the group acts on dimension {}", rep.dim)));
            }
        }
        let double = rep.as_ref().map(symplectic_double);

        let cartan = match &file.cartan {
            None => None,
            Some(c) => Some(Self::cartan(c, double.as_ref(), &file.label, ctx)?),
        };

        let witnesses = match (&file.witnesses, &double) {
            (None, _) => None,
            (Some(_), None) => return Err(ctx.err("witnesses", "witness candidates need a group acting on V")),
            (Some(w), Some(d)) => Some(Witnesses {
                candidates: w
                    .candidates
                    .iter()
                    .map(|t| Poly::parse(t, d.ring()).map_err(|e| poly_error(ctx, "witnesses.candidates", e)))
                    .collect::<Result<_, _>>()?,
                auto: w.auto,
                max_degree: w.max_degree,
                cap: w.cap,
                rabinowitsch: w.rabinowitsch,
            }),
        };

        let darboux = match &file.darboux {
            None => None,
            Some(s) => Some(Self::darboux(s, ctx)?),
        };

        for check in &checks {
            let missing = match check {
                Check::Moment | Check::Dimension | Check::Reducedness | Check::Poisson => {
                    double.is_none().then_some("a [group] section")
                }
                Check::Invariants => (double.is_none() && cartan.is_none()).then_some("a [group] or [cartan] section"),
                Check::Restriction => (double.is_none() || cartan.is_none()).then_some("[group] and [cartan] sections"),
                Check::Hilbert => cartan.is_none().then_some("a [cartan] section"),
                Check::Darboux => darboux.is_none().then_some("a [darboux] section"),
            };
            if let Some(what) = missing {
                return Err(ctx.err("checks", format!("check `{}` needs {what}", check.name())));
            }
        }
        if checks.contains(&Check::Reducedness) {
            match &witnesses {
                Some(w) if w.auto || !w.candidates.is_empty() => {}
                _ => return Err(ctx.err("witnesses", "check `reducedness` needs candidates or auto = true")),
            }
        }
        if checks.contains(&Check::Dimension) && file.expected.dimension.is_none() && cartan.is_none() {
            return Err(ctx.err("expected.dimension", "check `dimension` needs an expected dimension or Cartan data"));
        }

        Ok(Scenario {
            label: file.label,
            summary: file.summary,
            enabled: file.enabled,
            flags,
            checks,
            double,
            order_cap,
            closure_cap: file.cartan.as_ref().and_then(|c| c.closure_cap).unwrap_or(10_000),
            cartan,
            bounds: file.bounds,
            budgets: file.budgets,
            witnesses,
            expected_dimension: file.expected.dimension,
            darboux,
        })
    }

    fn representation(
        g: &GroupSection,
        names: &RepresentationSection,
        ctx: &Ctx,
        order_cap: &mut usize,
    ) -> Result<Representation, ScenarioError> {
        let (spec, default_names): (GroupSpec, Option<Vec<String>>) = match g {
            GroupSection::Torus { weights } => (GroupSpec::Torus { weights: weights.clone() }, None),
            GroupSection::Lie { preset, generators } => match (preset, generators) {
                (Some(p), None) => {
                    let (gens, names) =
                        lie_preset(&p.algebra, p.n, &p.rep, p.copies).map_err(|e| group_error(ctx, "group.preset", e))?;
                    (GroupSpec::lie(gens), Some(names))
                }
                (None, Some(ms)) => {
                    let gens = ms.iter().map(|m| ctx.matrix("group.generators", m)).collect::<Result<Vec<_>, _>>()?;
                    (GroupSpec::lie(gens), None)
                }
                _ => return Err(ctx.err("group", "a Lie group needs exactly one of `preset` and `generators`")),
            },
            GroupSection::Finite { generators, order_cap: cap } => {
                if let Some(cap) = cap {
                    *order_cap = *cap;
                }
                let gens = generators
                    .iter()
                    .map(|m| ctx.matrix("group.generators", m))
                    .collect::<Result<Vec<_>, _>>()?;
                (
                    GroupSpec::FiniteGroup {
                        generators: gens,
                        order_cap: Some(*order_cap),
                    },
                    None,
                )
            }
            GroupSection::Theta { n, m, exponents } => {
                let th = theta_representation(*n, *m, exponents).map_err(|e| group_error(ctx, "group", e))?;
                (th.rep.group.clone(), Some(th.rep.x_names.clone()))
            }
        };
        let dim = match &spec {
            GroupSpec::Torus { weights } => match (weights.first(), &names.x_names, names.dim) {
                (Some(w), _, _) => w.len(),
                (None, Some(x), _) => x.len(),
                (None, None, Some(d)) => d,
                (None, None, None) => return Err(ctx.err("representation.dim", "a rank-0 torus needs a dimension")),
            },
            GroupSpec::LieAlgebra { generators, .. } | GroupSpec::FiniteGroup { generators, .. } => {
                generators.first().map(RatMatrix::rows).ok_or_else(|| ctx.err("group.generators", "no generators"))?
            }
        };
        let x_names = names
            .x_names
            .clone()
            .or(default_names)
            .unwrap_or_else(|| (1..=dim).map(|i| format!("x{i}")).collect());
        let y_names = names.y_names.clone().unwrap_or_else(|| dual_names(&x_names));
        if x_names.len() != dim || y_names.len() != dim {
            return Err(ctx.err("representation", format!("expected {dim} variable names per side")));
        }
        Representation::with_names(spec, x_names, y_names).map_err(|e| group_error(ctx, "group", e))
    }

    fn cartan(
        s: &CartanSection,
        double: Option<&SymplecticDouble>,
        label: &str,
        ctx: &Ctx,
    ) -> Result<CartanData, ScenarioError> {
        let (n, c, c_dual) = match double {
            Some(d) => {
                let names = d.ring().names();
                let (xs, ys) = names.split_at(d.n());
                let c = s
                    .c
                    .as_ref()
                    .ok_or_else(|| ctx.err("cartan.c", "missing"))?
                    .iter()
                    .map(|v| ctx.vector("cartan.c", v, xs))
                    .collect::<Result<Vec<_>, _>>()?;
                let c_dual = match &s.c_dual {
                    Some(DualSpec::Keyword(k)) if k == "derive-stable" => {
                        dual_cartan(d, &c, true).map_err(|e| group_error(ctx, "cartan.c-dual", e))?
                    }
                    Some(DualSpec::Keyword(k)) => {
                        return Err(ctx.err("cartan.c-dual", format!("expected vectors or \"derive-stable\", found `{k}`")))
                    }
                    Some(DualSpec::Vectors(vs)) => vs
                        .iter()
                        .map(|v| ctx.vector("cartan.c-dual", v, ys))
                        .collect::<Result<Vec<_>, _>>()?,
                    None => return Err(ctx.err("cartan.c-dual", "missing")),
                };
                (d.n(), c, c_dual)
            }
            None => {
                let r = s.rank.ok_or_else(|| ctx.err("cartan.rank", "Cartan data without a group needs a rank"))?;
                let basis: Vec<Vec<Rational>> = RatMatrix::identity(r).to_rows();
                (r, basis.clone(), basis)
            }
        };
        let weyl = match (&s.weyl.cyclic, &s.weyl.generators) {
            (Some(order), None) => WeylGroup::DiagonalCyclic {
                order: *order,
                exponents: s
                    .weyl
                    .exponents
                    .clone()
                    .ok_or_else(|| ctx.err("cartan.weyl.exponents", "a cyclic Weyl group needs exponents"))?,
            },
            (None, Some(ms)) => WeylGroup::Matrices(
                ms.iter()
                    .map(|m| ctx.matrix("cartan.weyl.generators", m))
                    .collect::<Result<_, _>>()?,
            ),
            _ => return Err(ctx.err("cartan.weyl", "give exactly one of `cyclic` and `generators`")),
        };
        let cd = CartanData {
            c,
            c_dual,
            weyl,
            label: label.to_string(),
        };
        cd.validate(n).map_err(|e| group_error(ctx, "cartan", e))?;
        Ok(cd)
    }

    fn darboux(s: &DarbouxSection, ctx: &Ctx) -> Result<FormalTwoForm, ScenarioError> {
        let ring = PolyRing::new(&s.variables).map_err(|e| poly_error(ctx, "darboux.variables", e))?;
        let mut upper = Vec::new();
        for e in &s.form {
            let idx = |name: &str| {
                ring.index_of(name)
                    .ok_or_else(|| ctx.err("darboux.form", format!("unknown variable `{name}`")))
            };
            let (a, b) = (idx(&e.left)?, idx(&e.right)?);
            let p = Poly::parse(&e.coefficient, &ring).map_err(|e| poly_error(ctx, "darboux.form", e))?;
            match a.cmp(&b) {
                std::cmp::Ordering::Less => upper.push(((a, b), p)),
                std::cmp::Ordering::Greater => upper.push(((b, a), p.neg())),
                std::cmp::Ordering::Equal => return Err(ctx.err("darboux.form", "dz∧dz vanishes; use two distinct variables")),
            }
        }
        FormalTwoForm::from_upper(&ring, &upper, s.truncation).map_err(|e: DarbouxError| ctx.err("darboux.form", e))
    }
}
