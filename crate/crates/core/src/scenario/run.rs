use std::time::Instant;

use serde_json::{json, Value};

use super::report::{CheckRecord, CheckStatus, Report};
use super::{Check, Scenario};
use crate::arith::format_rational;
use crate::chevalley::{
    auto_candidates, compare_presentations, dimension_check, moment_vanishes_on_cartan, reducedness_probe,
    reduction_presentation_big, restricted_weyl_invariant, restrict_to_cartan, surjectivity_check,
    weyl_invariants, weyl_quotient_presentation, ChevalleyError, ReductionPresentation,
};
use crate::darboux::darboux_normalize;
use crate::groebner::{cached_buchberger, GbCache, GbOptions, GroebnerBasis, GroebnerError, Ideal};
use crate::group::{finite_group_elements, GroupError, GroupSpec, WeylGroup};
use crate::invariants::{double_invariant_basis, molien, InvariantBasis, InvariantError};
use crate::poisson::{bracket_compatibility, check_invariant_central, check_poisson_ideal, moment_equivariance};
use crate::poly::{MonomialOrder, Poly};

/// Overrides and the Gröbner cache for a run.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub cache: Option<GbCache>,
    pub degree_bound: Option<u32>,
    pub budget_steps: Option<u64>,
    pub budget_seconds: Option<f64>,
}

#[derive(Debug, Clone)]
enum Failure {
    Inconclusive(String),
    Failed(String),
}

impl From<GroebnerError> for Failure {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::Budget { .. } => Failure::Inconclusive(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::BasisCap { .. } => Failure::Inconclusive(e.to_string()),
            InvariantError::Groebner(g) => g.into(),
            InvariantError::Group(g) => g.into(),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

impl From<ChevalleyError> for Failure {
    fn from(e: ChevalleyError) -> Self {
        match e {
            ChevalleyError::Groebner(g) => g.into(),
            ChevalleyError::Invariant(i) => i.into(),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::ClosureCap(_) => Failure::Inconclusive(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

struct Moment {
    generators: Vec<Poly>,
    ideal: Ideal,
    gb: GroebnerBasis,
}

struct Runner<'a> {
    s: &'a Scenario,
    opts: GbOptions,
    cache: Option<&'a GbCache>,
    moment: Option<Result<Moment, Failure>>,
    source: Option<Result<InvariantBasis, Failure>>,
    weyl: Option<Result<InvariantBasis, Failure>>,
}

fn texts(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(Poly::to_text).collect()
}

fn basis_json(b: &InvariantBasis) -> Value {
    json!({
        "degree_bound": b.degree_bound,
        "dims": b.dims(),
        "generator_degrees": b.generator_degrees,
        "generators": texts(&b.generators),
        "complete": b.complete,
    })
}

fn presentation_json(p: &ReductionPresentation) -> Value {
    json!({
        "source": p.source,
        "tags": p.tag_ring.names(),
        "generators": texts(&p.generators),
        "generator_degrees": p.generator_degrees,
        "relations": texts(&p.relations),
        "relation_degrees": p.relation_degrees,
        "hilbert": p.hilbert,
        "truncation": p.truncation,
    })
}

fn get<T>(slot: &Option<Result<T, Failure>>) -> Result<&T, Failure> {
    slot.as_ref().expect("prerequisite computed").as_ref().map_err(Clone::clone)
}

impl<'a> Runner<'a> {
    fn ensure_moment(&mut self) {
        if self.moment.is_some() {
            return;
        }
        let d = self.s.double.as_ref().expect("validated");
        let generators: Vec<Poly> = d.moment_generators().into_iter().filter(|p| !p.is_zero()).collect();
        let result = Ideal::new(d.ring(), generators.clone())
            .and_then(|ideal| {
                let gb = cached_buchberger(self.cache, &ideal, MonomialOrder::GrevLex, &self.opts)?;
                Ok(Moment { generators, ideal, gb })
            })
            .map_err(Failure::from);
        self.moment = Some(result);
    }

    fn ensure_source(&mut self) {
        if self.source.is_some() {
            return;
        }
        let d = self.s.double.as_ref().expect("validated");
        let bound = self.s.bounds.degree;
        let cap = self.s.budgets.basis_cap;
        let result = double_invariant_basis(d, bound, cap, self.s.order_cap).map_err(Failure::from);
        self.source = Some(result);
    }

    fn ensure_weyl(&mut self) {
        if self.weyl.is_some() {
            return;
        }
        let cd = self.s.cartan.as_ref().expect("validated");
        let bound = self.s.bounds.degree.max(self.s.bounds.truncation());
        self.weyl = Some(weyl_invariants(cd, bound, self.s.closure_cap).map_err(Failure::from));
    }

    fn run(&mut self, check: Check) -> Result<(CheckStatus, Value, Vec<String>, Option<u64>), Failure> {
        let s = self.s;
        match check {
            Check::Moment => {
                self.ensure_moment();
                let m = get(&self.moment)?;
                let d = s.double.as_ref().expect("validated");
                let mut notes = vec![];
                let equivariance = moment_equivariance(d);
                if equivariance.is_none() {
                    notes.push("no structure constants; equivariance not checked".into());
                }
                let ok = equivariance.as_ref().is_none_or(|c| c.passed);
                let evidence = json!({
                    "generators": texts(&m.generators),
                    "groebner": {
                        "order": "grevlex",
                        "size": m.gb.basis().len(),
                        "fingerprint": m.gb.fingerprint(),
                    },
                    "equivariance": equivariance,
                });
                Ok((status(ok), evidence, notes, Some(m.gb.reductions())))
            }
            Check::Invariants => {
                let mut ev = serde_json::Map::new();
                let mut ok = true;
                let mut notes = vec![];
                if let Some(d) = &s.double {
                    self.ensure_source();
                    let inv = get(&self.source)?;
                    ev.insert("source".into(), basis_json(inv));
                    if let GroupSpec::FiniteGroup { .. } = d.base.group {
                        let elements = finite_group_elements(&d.group_matrices(), s.order_cap)?;
                        let series = molien(&elements, inv.degree_bound as usize);
                        ev.insert("group_order".into(), json!(elements.len()));
                        ev.insert("molien".into(), json!(series.coefficients.iter().map(format_rational).collect::<Vec<_>>()));
                    }
                    if !inv.complete {
                        notes.push(format!(
                            "generators certified through degree {}; completeness beyond it is assumed from the classical generator tables",
                            inv.degree_bound
                        ));
                    }
                }
                if let Some(cd) = &s.cartan {
                    self.ensure_weyl();
                    let w = get(&self.weyl)?;
                    ev.insert("weyl".into(), basis_json(w));
                    if let WeylGroup::Matrices(gens) = &cd.weyl {
                        if !gens.is_empty() {
                            let elements = finite_group_elements(gens, s.closure_cap)?;
                            let series = molien(&elements, w.degree_bound as usize);
                            let agree = w
                                .dims()
                                .iter()
                                .zip(&series.coefficients)
                                .all(|(d, c)| Some(*d as i64) == crate::arith::to_i64(c));
                            ok &= agree;
                            ev.insert("weyl_order".into(), json!(elements.len()));
                            ev.insert(
                                "weyl_molien".into(),
                                json!(series.coefficients.iter().map(format_rational).collect::<Vec<_>>()),
                            );
                            ev.insert("weyl_molien_agrees".into(), json!(agree));
                        }
                    }
                }
                Ok((status(ok), Value::Object(ev), notes, None))
            }
            Check::Restriction => {
                self.ensure_source();
                self.ensure_weyl();
                let (inv, w) = (get(&self.source)?, get(&self.weyl)?);
                let d = s.double.as_ref().expect("validated");
                let cd = s.cartan.as_ref().expect("validated");
                let vanishes = moment_vanishes_on_cartan(&d.moment_generators(), cd)?;
                let mut restricted = vec![];
                let mut all_w = true;
                for g in &inv.generators {
                    let r = restrict_to_cartan(g, cd).map_err(ChevalleyError::from)?;
                    let wi = restricted_weyl_invariant(g, cd)?;
                    all_w &= wi;
                    restricted.push(json!({ "generator": g.to_text(), "restriction": r.to_text(), "weyl_invariant": wi }));
                }
                let degrees = surjectivity_check(inv, cd, w, s.bounds.degree)?;
                let surjective = degrees.iter().all(|x| x.surjective == Some(true));
                let evidence = json!({
                    "moment_vanishes_on_cartan": vanishes,
                    "restricted_generators": restricted,
                    "degrees": degrees,
                    "surjective_through": s.bounds.degree,
                });
                Ok((status(vanishes && all_w && surjective), evidence, vec![], None))
            }
            Check::Hilbert => {
                self.ensure_weyl();
                let cd = s.cartan.as_ref().expect("validated");
                let trunc = s.bounds.truncation();
                let w = get(&self.weyl)?;
                let small = weyl_quotient_presentation(cd, w, trunc, &self.opts)?;
                if s.double.is_none() {
                    let upto = (trunc.min(w.degree_bound) as usize).min(small.hilbert.len() - 1);
                    let dims: Vec<u64> = w.dims().iter().map(|&d| d as u64).collect();
                    let agree = small.hilbert[..=upto] == dims[..=upto];
                    let vanish = small.relations_vanish(None);
                    let evidence = json!({
                        "weyl_quotient": presentation_json(&small),
                        "invariant_dims": dims,
                        "hilbert_matches_invariants": agree,
                        "relations_vanish": vanish,
                    });
                    return Ok((status(agree && vanish), evidence, vec![], None));
                }
                self.ensure_moment();
                self.ensure_source();
                let (m, inv) = (get(&self.moment)?, get(&self.source)?);
                let big = reduction_presentation_big(&inv.generators, &m.ideal, &m.gb, trunc, &self.opts)?;
                let vanish = big.relations_vanish(Some(&m.gb));
                let cmp = compare_presentations(&big, &small, trunc);
                let evidence = json!({
                    "reduction": presentation_json(&big),
                    "weyl_quotient": presentation_json(&small),
                    "comparison": cmp,
                    "matched": cmp.matched(),
                    "relations_vanish_mod_moment_ideal": vanish,
                });
                Ok((status(vanish && cmp.all_match()), evidence, vec![], None))
            }
            Check::Dimension => {
                self.ensure_moment();
                let m = get(&self.moment)?;
                let d = s.double.as_ref().expect("validated");
                let (expected, from) = match (s.expected_dimension, &s.cartan) {
                    (Some(e), _) => (e, "declared"),
                    (None, Some(cd)) => (d.n() + cd.rank(), "dim V + dim c"),
                    (None, None) => unreachable!("validated"),
                };
                let v = dimension_check(&m.gb, expected)?;
                let evidence = json!({ "computed": v.computed, "expected": v.expected, "expected_from": from });
                Ok((status(v.matches), evidence, vec![], None))
            }
            Check::Reducedness => {
                let w = s.witnesses.as_ref().expect("validated");
                let mut candidates = w.candidates.clone();
                if w.auto {
                    self.ensure_source();
                    let inv = get(&self.source)?;
                    candidates.extend(auto_candidates(&inv.generators, &inv.generator_degrees, w.max_degree));
                }
                self.ensure_moment();
                let m = get(&self.moment)?;
                let probes = reducedness_probe(&m.gb, &candidates, w.cap, w.rabinowitsch, &self.opts)?;
                let witnesses: Vec<_> = probes.iter().filter(|p| p.is_witness()).cloned().collect();
                let mut notes = vec![];
                if witnesses.is_empty() {
                    notes.push(format!(
                        "no witness among {} candidates; reducedness is not certified",
                        probes.len()
                    ));
                }
                let evidence = json!({
                    "candidates": probes.len(),
                    "auto": w.auto,
                    "power_cap": w.cap,
                    "members": probes.iter().filter(|p| p.member).count(),
                    "witnesses": witnesses,
                    "probes": probes,
                });
                let st = if witnesses.is_empty() {
                    CheckStatus::Passed
                } else {
                    CheckStatus::WitnessFound
                };
                Ok((st, evidence, notes, None))
            }
            Check::Poisson => {
                self.ensure_source();
                if s.bounds.poisson_degree.is_some() {
                    self.ensure_moment();
                }
                let d = s.double.as_ref().expect("validated");
                let inv = get(&self.source)?;
                let central = check_invariant_central(d, &inv.generators);
                let equivariance = moment_equivariance(d);
                let mut ok = central.passed && equivariance.as_ref().is_none_or(|c| c.passed);
                let mut ev = serde_json::Map::new();
                ev.insert("invariants_central".into(), json!(central));
                ev.insert("moment_equivariance".into(), json!(equivariance));
                if let Some(bound) = s.bounds.poisson_degree {
                    let m = get(&self.moment)?;
                    let ideal = check_poisson_ideal(d, inv, &m.gb, bound);
                    ok &= ideal.passed;
                    ev.insert("poisson_ideal".into(), json!(ideal));
                }
                if let Some(cd) = &s.cartan {
                    let mut pairs = 0;
                    let mut failures = vec![];
                    for (i, f) in inv.generators.iter().enumerate() {
                        for g in &inv.generators[i..] {
                            pairs += 1;
                            let c = bracket_compatibility(f, g, cd).map_err(|e| Failure::Failed(e.to_string()))?;
                            if !c.holds() {
                                failures.push(format!("{{{}, {}}}", f.to_text(), g.to_text()));
                            }
                        }
                    }
                    ok &= failures.is_empty();
                    ev.insert("restriction_compatibility".into(), json!({ "pairs": pairs, "failures": failures }));
                }
                Ok((status(ok), Value::Object(ev), vec![], None))
            }
            Check::Darboux => {
                let form = s.darboux.as_ref().expect("validated");
                let res = darboux_normalize(form).map_err(|e| Failure::Failed(e.to_string()))?;
                let omega: Vec<Vec<String>> = res.omega.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect();
                let evidence = json!({
                    "variables": form.ring().names(),
                    "truncation": form.truncation(),
                    "omega": omega,
                    "xi": texts(&res.change.xi),
                    "pullback_verified_through": res.verified_through,
                });
                let notes = vec!["the coordinates are not made equivariant under any stabilizer".to_string()];
                Ok((CheckStatus::Passed, evidence, notes, None))
            }
        }
    }
}

fn status(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Passed
    } else {
        CheckStatus::Failed
    }
}

/// Run the requested checks in dependency order. Failures become report entries.
pub fn run_scenario(scenario: &Scenario, options: &RunOptions) -> Report {
    let start = Instant::now();
    let mut s = scenario.clone();
    if let Some(d) = options.degree_bound {
        s.bounds.degree = d;
    }
    if let Some(n) = options.budget_steps {
        s.budgets.steps = n;
    }
    if let Some(t) = options.budget_seconds {
        s.budgets.seconds = t;
    }
    let mut runner = Runner {
        s: &s,
        opts: GbOptions {
            max_steps: s.budgets.steps,
            max_seconds: s.budgets.seconds,
            degree_cap: None,
        },
        cache: options.cache.as_ref(),
        moment: None,
        source: None,
        weyl: None,
    };
    let mut report = Report::new(&s.label, &s.summary, &s.flags);
    for &check in &s.checks {
        let t = Instant::now();
        let (st, evidence, notes, reductions) = match runner.run(check) {
            Ok(r) => r,
            Err(Failure::Inconclusive(why)) => (CheckStatus::Inconclusive, Value::Null, vec![why], None),
            Err(Failure::Failed(why)) => (CheckStatus::Failed, Value::Null, vec![why], None),
        };
        report.checks.push(CheckRecord {
            check,
            status: st,
            seconds: t.elapsed().as_secs_f64(),
            reductions,
            evidence,
            notes,
        });
    }
    report.conclude(s.bounds.truncation().min(s.bounds.degree));
    report.seconds = start.elapsed().as_secs_f64();
    report
}
