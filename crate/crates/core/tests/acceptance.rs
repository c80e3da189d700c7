use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use chevalley_core::arith::{rat, ratio, RatMatrix, Rational};
use chevalley_core::chevalley::{
    compare_presentations, dimension_check, is_scalar_multiple, reduction_presentation_big, weyl_invariants,
    weyl_quotient_presentation, ReductionPresentation,
};
use chevalley_core::darboux::{darboux_normalize, FormalTwoForm};
use chevalley_core::groebner::{buchberger, hilbert_series, GbOptions, GroebnerBasis, Ideal};
use chevalley_core::group::{finite_group_elements, SymplecticDouble};
use chevalley_core::invariants::{apply_derivation, double_invariant_basis, finite_invariant_basis, hilbert_basis};
use chevalley_core::poisson::{bracket, bracket_compatibility, check_invariant_central, check_poisson_ideal};
use chevalley_core::poly::{monomials_of_degree, MonomialOrder, Poly, PolyRing, Ring};
use chevalley_core::scenario::{
    corpus, run_scenario, Check, CheckStatus, Report, RunOptions, Scenario, Verdict,
};
use chevalley_core::groebner::GbCache;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn scenario(label: &str) -> Scenario {
    Scenario::load_any(label).unwrap_or_else(|e| panic!("{label}: {e}"))
}

fn only(s: &Scenario, checks: &[Check]) -> Scenario {
    let mut s = s.clone();
    s.checks = checks.to_vec();
    s
}

fn moment_basis(d: &SymplecticDouble, opts: &GbOptions) -> (Ideal, GroebnerBasis) {
    let gens: Vec<Poly> = d.moment_generators().into_iter().filter(|p| !p.is_zero()).collect();
    let ideal = Ideal::new(d.ring(), gens).unwrap();
    let gb = buchberger(&ideal, MonomialOrder::GrevLex, opts).unwrap();
    (ideal, gb)
}

/// The presentation has three generators and one relation `Tx*Ty - Tz^m` for some labelling.
fn is_axy_z(p: &ReductionPresentation, m: u32) -> bool {
    if p.generators.len() != 3 || p.relations.len() != 1 {
        return false;
    }
    let rel = &p.relations[0];
    (0..3).any(|z| {
        let (x, y) = match z {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let expect = Poly::parse(&format!("T{}*T{} - T{}^{m}", x + 1, y + 1, z + 1), &p.tag_ring).unwrap();
        is_scalar_multiple(rel, &expect)
    })
}

fn criterion_1() -> Outcome {
    let mut detail = vec![];
    for m in 2..=6u32 {
        let start = Instant::now();
        let s = scenario(&format!("rank1-torus-m{m}"));
        let cd = s.cartan.as_ref().unwrap();
        let w = weyl_invariants(cd, 2 * m, s.closure_cap).map_err(|e| e.to_string())?;
        let p = weyl_quotient_presentation(cd, &w, 2 * m, &GbOptions::default()).map_err(|e| e.to_string())?;
        let mut degs = p.generator_degrees.clone();
        degs.sort();
        let mut want = vec![2, m, m];
        want.sort();
        ensure(degs == want, || format!("m={m}: generator degrees {degs:?}"))?;
        ensure(is_axy_z(&p, m), || format!("m={m}: relations {:?}", p.relations))?;
        let report = run_scenario(&s, &RunOptions::default());
        let restriction = report.record(Check::Restriction).ok_or("no restriction record")?;
        ensure(restriction.status == CheckStatus::Passed, || format!("m={m}: restriction {:?}", restriction.notes))?;
        let degrees = restriction.evidence["degrees"].as_array().ok_or("no degrees")?;
        let through = degrees
            .iter()
            .filter(|d| d["surjective"] == Value::Bool(true))
            .map(|d| d["degree"].as_u64().unwrap())
            .collect::<Vec<_>>();
        ensure(through == (0..=2 * m as u64).collect::<Vec<_>>(), || format!("m={m}: surjective in {through:?}"))?;
        let hilbert = report.record(Check::Hilbert).ok_or("no hilbert record")?;
        ensure(hilbert.status == CheckStatus::Passed, || format!("m={m}: hilbert {}", hilbert.evidence))?;
        let secs = start.elapsed().as_secs_f64();
        ensure(secs < 5.0, || format!("m={m} took {secs:.2} s"))?;
        detail.push(format!("m={m} {secs:.2}s"));
    }
    Ok(detail.join(", "))
}

fn criterion_2() -> Outcome {
    let s = scenario("lambda2-c4-sl4");
    let d = s.double.as_ref().unwrap();
    let opts = GbOptions {
        max_seconds: 300.0,
        ..GbOptions::default()
    };
    let (ideal, gb) = moment_basis(d, &opts);
    ensure(ideal.generators().len() == 15, || format!("{} moment quadrics", ideal.generators().len()))?;
    let ring = d.ring();
    let gens: Vec<Poly> = [
        "x12*x34 - x13*x24 + x14*x23",
        "y12*y34 - y13*y24 + y14*y23",
        "-1/2*x12*y12 - 1/2*x13*y13 - 1/2*x14*y14 - 1/2*x23*y23 - 1/2*x24*y24 - 1/2*x34*y34",
    ]
    .iter()
    .map(|t| Poly::parse(t, ring).unwrap())
    .collect();
    let big = reduction_presentation_big(&gens, &ideal, &gb, 8, &opts).map_err(|e| e.to_string())?;
    ensure(big.generators.len() == 3, || format!("{} generators survive pruning", big.generators.len()))?;
    let expect = Poly::parse("T1*T2 - T3^2", &big.tag_ring).unwrap();
    ensure(big.relations.len() == 1 && is_scalar_multiple(&big.relations[0], &expect), || {
        format!("relations {:?}", big.relations.iter().map(Poly::to_text).collect::<Vec<_>>())
    })?;
    ensure(big.relations_vanish(Some(&gb)), || "relation does not vanish modulo I".into())?;
    let cd = s.cartan.as_ref().unwrap();
    let w = weyl_invariants(cd, 8, s.closure_cap).map_err(|e| e.to_string())?;
    let small = weyl_quotient_presentation(cd, &w, 8, &opts).map_err(|e| e.to_string())?;
    let cmp = compare_presentations(&big, &small, 8);
    ensure(cmp.all_match(), || format!("{cmp:?}"))?;
    Ok(format!("relation {} ({:?}), hilbert {:?}", big.relations[0].to_text(), big.source, big.hilbert))
}

fn criterion_3() -> Outcome {
    let cases = [
        ("sl2-2copies", 5usize),
        ("quiver-z3", 9),
        ("torus-family-n1", 3),
        ("torus-family-n2", 4),
        ("torus-family-n3", 5),
    ];
    let mut detail = vec![];
    for (label, want) in cases {
        let start = Instant::now();
        let s = scenario(label);
        let (_, gb) = moment_basis(s.double.as_ref().unwrap(), &GbOptions::default());
        let v = dimension_check(&gb, want).map_err(|e| e.to_string())?;
        ensure(v.matches, || format!("{label}: dimension {} != {want}", v.computed))?;
        let report = run_scenario(&only(&s, &[Check::Dimension]), &RunOptions::default());
        let rec = report.record(Check::Dimension).ok_or("no dimension record")?;
        ensure(rec.status == CheckStatus::Passed && rec.evidence["computed"] == want, || {
            format!("{label}: scenario says {}", rec.evidence)
        })?;
        let secs = start.elapsed().as_secs_f64();
        ensure(secs < 60.0, || format!("{label} took {secs:.2} s"))?;
        detail.push(format!("{label}={want}"));
    }
    Ok(detail.join(", "))
}

fn criterion_4() -> Outcome {
    let s = scenario("sl3-c3-c3");
    let report = run_scenario(&only(&s, &[Check::Reducedness]), &RunOptions::default());
    ensure(report.verdict == Verdict::NonReducedWitnessFound, || format!("verdict {}", report.verdict.name()))?;
    let rec = report.record(Check::Reducedness).unwrap();
    let witnesses = rec.evidence["witnesses"].as_array().ok_or("no witnesses")?;
    let d = s.double.as_ref().unwrap();
    let ring = d.ring();
    let gens: Vec<Poly> = d.moment_generators().into_iter().filter(|p| !p.is_zero()).collect();
    let n = ring.nvars();
    let gb = buchberger(&Ideal::new(ring, gens).unwrap(), MonomialOrder::Block(n / 2), &GbOptions::default())
        .map_err(|e| e.to_string())?;
    for w in witnesses {
        let p = Poly::parse(w["candidate"].as_str().unwrap(), ring).unwrap();
        let k = w["exponent"].as_u64().ok_or("witness without exponent")? as u32;
        ensure(k <= 4, || format!("exponent {k}"))?;
        ensure(d.derivation_matrices().iter().all(|m| apply_derivation(&p, m).is_zero()), || {
            format!("{} is not invariant", p.to_text())
        })?;
        ensure(!gb.normal_form(&p).is_zero(), || format!("{} lies in I", p.to_text()))?;
        ensure(gb.normal_form(&p.pow(k)).is_zero(), || format!("{}^{k} not in I", p.to_text()))?;
        return Ok(format!("p = {}, p^{k} in I, p not in I", p.to_text()));
    }
    Err("no witness recorded".into())
}

fn criterion_5() -> Outcome {
    let s = scenario("quiver-z3");
    let d = s.double.as_ref().unwrap();
    let opts = GbOptions {
        max_seconds: 600.0,
        ..GbOptions::default()
    };
    let (ideal, gb) = moment_basis(d, &opts);
    let inv = double_invariant_basis(d, 6, s.budgets.basis_cap, s.order_cap).map_err(|e| e.to_string())?;
    let big = reduction_presentation_big(&inv.generators, &ideal, &gb, 12, &opts).map_err(|e| e.to_string())?;
    ensure(big.generator_degrees == vec![2, 3, 3], || format!("generator degrees {:?}", big.generator_degrees))?;
    let expect = Poly::parse("T1^3 - T2*T3", &big.tag_ring).unwrap();
    ensure(big.relations.len() == 1 && is_scalar_multiple(&big.relations[0], &expect), || {
        format!("relations {:?}", big.relations.iter().map(Poly::to_text).collect::<Vec<_>>())
    })?;
    let cd = s.cartan.as_ref().unwrap();
    let w = weyl_invariants(cd, 12, s.closure_cap).map_err(|e| e.to_string())?;
    let small = weyl_quotient_presentation(cd, &w, 12, &opts).map_err(|e| e.to_string())?;
    let cmp = compare_presentations(&big, &small, 12);
    ensure(cmp.all_match(), || format!("{cmp:?}"))?;
    ensure(big.hilbert.len() == 13, || format!("hilbert known to degree {}", big.hilbert.len() - 1))?;
    Ok(format!("relation {}, hilbert {:?}", big.relations[0].to_text(), big.hilbert))
}

fn random_poly(ring: &Ring, rng: &mut ChaCha8Rng, max_degree: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(ring);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_degree);
        let ms = monomials_of_degree(ring, d);
        let m = ms[rng.gen_range(0..ms.len())].clone();
        p.add_term(m, rat(rng.gen_range(-3..=3)));
    }
    p
}

fn criterion_6() -> Outcome {
    let ring = PolyRing::new(&["x1", "x2", "x3", "y1", "y2", "y3"]).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let (xi, xj, yi, yj) = (Poly::var(&ring, i), Poly::var(&ring, j), Poly::var(&ring, 3 + i), Poly::var(&ring, 3 + j));
            let delta = if i == j { Poly::one(&ring) } else { Poly::zero(&ring) };
            ensure(bracket(&xi, &yj).unwrap() == delta, || format!("{{x{},y{}}}", i + 1, j + 1))?;
            ensure(bracket(&xi, &xj).unwrap().is_zero(), || format!("{{x{},x{}}}", i + 1, j + 1))?;
            ensure(bracket(&yi, &yj).unwrap().is_zero(), || format!("{{y{},y{}}}", i + 1, j + 1))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for t in 0..200 {
        let f = random_poly(&ring, &mut rng, 3, 4);
        let g = random_poly(&ring, &mut rng, 3, 4);
        let h = random_poly(&ring, &mut rng, 3, 4);
        let b = |a: &Poly, c: &Poly| bracket(a, c).unwrap();
        let jacobi = &(&b(&f, &b(&g, &h)) + &b(&g, &b(&h, &f))) + &b(&h, &b(&f, &g));
        ensure(jacobi.is_zero(), || format!("Jacobi fails on triple {t}"))?;
        let leibniz = &b(&f, &(&g * &h)) - &(&(&b(&f, &g) * &h) + &(&g * &b(&f, &h)));
        ensure(leibniz.is_zero(), || format!("Leibniz fails on triple {t}"))?;
    }
    let mut central = 0;
    for entry in corpus() {
        let s = scenario(entry.label);
        let Some(d) = s.double.as_ref() else { continue };
        let inv = double_invariant_basis(d, s.bounds.degree, s.budgets.basis_cap, s.order_cap)
            .map_err(|e| format!("{}: {e}", s.label))?;
        let c = check_invariant_central(d, &inv.generators);
        ensure(c.passed, || format!("{}: {:?}", s.label, c.failures))?;
        central += 1;
    }
    let mut ideal_checks = 0;
    let mut pairs = 0;
    let labels: Vec<String> = (2..=6).map(|m| format!("rank1-torus-m{m}")).chain(["sl2-adjoint".to_string()]).collect();
    for label in &labels {
        let s = scenario(label);
        let d = s.double.as_ref().unwrap();
        let inv = double_invariant_basis(d, s.bounds.degree, s.budgets.basis_cap, s.order_cap).map_err(|e| e.to_string())?;
        let (_, gb) = moment_basis(d, &GbOptions::default());
        let c = check_poisson_ideal(d, &inv, &gb, 4);
        ensure(c.passed && c.checked > 0, || format!("{label}: {:?}", c.failures))?;
        ideal_checks += c.checked;
        let cd = s.cartan.as_ref().unwrap();
        for (i, f) in inv.generators.iter().enumerate() {
            for g in &inv.generators[i..] {
                let c = bracket_compatibility(f, g, cd).map_err(|e| e.to_string())?;
                ensure(c.holds(), || format!("{label}: {{{}, {}}}", f.to_text(), g.to_text()))?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "table ok, 200 triples, {central} scenarios central, {ideal_checks} ideal brackets, {pairs} compatible pairs"
    ))
}

/// Coefficients `J^T (Ω - Ω^T) J` of the pulled-back constant form.
fn pullback_by_jacobian(xi: &[Poly], omega: &RatMatrix) -> Vec<Vec<Poly>> {
    let n = xi.len();
    let ring = xi[0].ring().clone();
    let a = omega.sub(&omega.transpose());
    let jac: Vec<Vec<Poly>> = xi.iter().map(|x| (0..n).map(|k| x.partial_derivative(k)).collect()).collect();
    let aj: Vec<Vec<Poly>> = (0..n)
        .map(|al| {
            (0..n)
                .map(|b| (0..n).fold(Poly::zero(&ring), |s, be| &s + &jac[be][b].scale(&a[(al, be)])))
                .collect()
        })
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|b| (0..n).fold(Poly::zero(&ring), |s, al| &s + &(&jac[al][i] * &aj[al][b])))
                .collect()
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..50 {
        let n = if trial % 2 == 0 { 2 } else { 4 };
        let ring = PolyRing::indexed("z", n);
        let k = loop {
            let k = RatMatrix::from_i64(&(0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect::<Vec<_>>());
            if !k.sub(&k.transpose()).determinant().is_zero() {
                break k;
            }
        };
        let lambda: Vec<Poly> = (0..n)
            .map(|b| {
                let mut p = (0..n).fold(Poly::zero(&ring), |s, a| &s + &Poly::var(&ring, a).scale(&k[(a, b)]));
                for _ in 0..4 {
                    let d = rng.gen_range(2..=4);
                    let ms = monomials_of_degree(&ring, d);
                    p.add_term(ms[rng.gen_range(0..ms.len())].clone(), rat(rng.gen_range(-3..=3)));
                }
                p
            })
            .collect();
        let w: Vec<Vec<Poly>> = (0..n)
            .map(|a| (0..n).map(|b| &lambda[b].partial_derivative(a) - &lambda[a].partial_derivative(b)).collect())
            .collect();
        let form = FormalTwoForm::from_skew(&ring, w.clone(), 5).map_err(|e| e.to_string())?;
        let res = darboux_normalize(&form).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(res.verified_through == 3, || format!("trial {trial}: verified through {}", res.verified_through))?;
        for (i, x) in res.change.xi.iter().enumerate() {
            ensure(x.homogeneous_part(1) == Poly::var(&ring, i) && x.homogeneous_part(0).is_zero(), || {
                format!("trial {trial}: ξ_{i} = {}", x.to_text())
            })?;
        }
        let pulled = pullback_by_jacobian(&res.change.xi, &res.omega);
        for a in 0..n {
            for b in 0..n {
                for m in 0..=3 {
                    ensure(pulled[a][b].homogeneous_part(m) == w[a][b].homogeneous_part(m), || {
                        format!("trial {trial}: coefficient ({a},{b}) differs in degree {m}")
                    })?;
                }
            }
        }
    }
    Ok("50 forms certified through coefficient degree 3".into())
}

fn brute_force_hilbert_basis(weights: &[Vec<i64>], n: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let ring = PolyRing::indexed("v", n);
    let mut minimal: Vec<Vec<u32>> = vec![];
    for d in 1..=max_degree {
        for m in monomials_of_degree(&ring, d) {
            let e = m.exponents();
            let zero = weights.iter().all(|row| row.iter().zip(&e).map(|(w, &a)| w * a as i64).sum::<i64>() == 0);
            if zero && !minimal.iter().any(|u| u.iter().zip(&e).all(|(a, b)| a <= b)) {
                minimal.push(e);
            }
        }
    }
    minimal.sort();
    minimal
}

/// `det(1 - t g)` by the Leibniz expansion, as coefficients in `t`.
fn det_one_minus_tg(g: &RatMatrix) -> Vec<Rational> {
    let n = g.rows();
    let entry = |i: usize, j: usize| -> Vec<Rational> {
        let c0 = if i == j { Rational::one() } else { Rational::zero() };
        vec![c0, -g[(i, j)].clone()]
    };
    let mul = |a: &[Rational], b: &[Rational]| {
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut total = vec![Rational::zero(); n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term = vec![Rational::one()];
        for (i, &j) in p.iter().enumerate() {
            term = mul(&term, &entry(i, j));
        }
        for (k, c) in term.into_iter().enumerate() {
            if inversions % 2 == 0 {
                total[k] += c;
            } else {
                total[k] -= c;
            }
        }
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

fn molien_oracle(elements: &[RatMatrix], upto: usize) -> Vec<Rational> {
    let mut sum = vec![Rational::zero(); upto + 1];
    for g in elements {
        let den = det_one_minus_tg(g);
        let mut inv = vec![Rational::zero(); upto + 1];
        inv[0] = Rational::one() / &den[0];
        for k in 1..=upto {
            let mut s = Rational::zero();
            for j in 1..=k.min(den.len() - 1) {
                s -= &den[j] * &inv[k - j];
            }
            inv[k] = s / &den[0];
        }
        for (a, b) in sum.iter_mut().zip(inv) {
            *a += b;
        }
    }
    let order = rat(elements.len() as i64);
    sum.into_iter().map(|c| c / &order).collect()
}

fn quaternion_left(q: [Rational; 4]) -> RatMatrix {
    let [a, b, c, d] = q;
    RatMatrix::from_rows(vec![
        vec![a.clone(), -b.clone(), -c.clone(), -d.clone()],
        vec![b.clone(), a.clone(), -d.clone(), c.clone()],
        vec![c.clone(), d.clone(), a.clone(), -b.clone()],
        vec![d, -c, b, a],
    ])
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut elements_checked = 0;
    for trial in 0..25 {
        let n = rng.gen_range(3..=5);
        let rows = rng.gen_range(1..=2);
        let weights: Vec<Vec<i64>> = (0..rows).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let mut got: Vec<Vec<u32>> = hilbert_basis(&weights, n, 100_000)
            .map_err(|e| format!("trial {trial}: {e}"))?
            .into_iter()
            .filter(|v| v.iter().sum::<u32>() <= 8)
            .collect();
        got.sort();
        let want = brute_force_hilbert_basis(&weights, n, 8);
        ensure(got == want, || format!("weights {weights:?}: {got:?} vs {want:?}"))?;
        elements_checked += want.len();
    }
    let half = ratio(1, 2);
    let groups: Vec<(&str, Vec<RatMatrix>, usize)> = vec![
        ("{±I}", vec![RatMatrix::from_i64(&[vec![-1, 0], vec![0, -1]])], 2),
        ("cyclic-3", vec![RatMatrix::from_i64(&[vec![0, -1], vec![1, -1]])], 3),
        (
            "binary tetrahedral",
            vec![
                quaternion_left([rat(0), rat(1), rat(0), rat(0)]),
                quaternion_left([-half.clone(), half.clone(), half.clone(), half.clone()]),
            ],
            24,
        ),
    ];
    let mut detail = vec![format!("{elements_checked} Hilbert basis elements")];
    for (name, gens, order) in groups {
        let elements = finite_group_elements(&gens, 1000).map_err(|e| e.to_string())?;
        ensure(elements.len() == order, || format!("{name}: order {}", elements.len()))?;
        let ring = PolyRing::indexed("u", gens[0].rows());
        let basis = finite_invariant_basis(&ring, &elements, 8).map_err(|e| e.to_string())?;
        let oracle = molien_oracle(&elements, 8);
        let dims: Vec<Rational> = basis.dims().iter().map(|&d| rat(d as i64)).collect();
        ensure(dims == oracle, || format!("{name}: {:?} vs Molien {oracle:?}", basis.dims()))?;
        detail.push(format!("{name} {:?}", basis.dims()));
    }
    Ok(detail.join(", "))
}

fn random_homogeneous(ring: &Ring, rng: &mut ChaCha8Rng, d: u32, terms: usize) -> Poly {
    let ms = monomials_of_degree(ring, d);
    let mut p = Poly::zero(ring);
    for _ in 0..terms {
        p.add_term(ms[rng.gen_range(0..ms.len())].clone(), rat(rng.gen_range(-3..=3)));
    }
    p
}

/// `p` lies in the span of `m·g` over generators `g` and monomials `m` of complementary degree.
fn in_degree_span(p: &Poly, gens: &[Poly], d: u32) -> bool {
    let ring = p.ring();
    let columns = monomials_of_degree(ring, d);
    let row = |q: &Poly| columns.iter().map(|m| q.coefficient(m)).collect::<Vec<_>>();
    let mut rows = vec![];
    for g in gens {
        let e = g.total_degree().unwrap();
        if e > d {
            continue;
        }
        for m in monomials_of_degree(ring, d - e) {
            rows.push(row(&g.mul_monomial(&m, &Rational::one())));
        }
    }
    if rows.is_empty() {
        return p.is_zero();
    }
    let base = RatMatrix::from_rows(rows.clone()).rank();
    rows.push(row(p));
    RatMatrix::from_rows(rows).rank() == base
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let ring = PolyRing::new(&["a", "b", "c"]).unwrap();
    let mut members = 0;
    for t in 0..100 {
        let k = rng.gen_range(1..=3);
        let gens: Vec<Poly> = (0..k)
            .map(|_| {
                let e = rng.gen_range(1..=2);
                random_homogeneous(&ring, &mut rng, e, 3)
            })
            .filter(|g| !g.is_zero())
            .collect();
        let d = rng.gen_range(2..=4);
        let p = if t % 2 == 0 {
            gens.iter().fold(Poly::zero(&ring), |s, g| {
                let e = g.total_degree().unwrap();
                if e > d {
                    s
                } else {
                    &s + &(g * &random_homogeneous(&ring, &mut rng, d - e, 2))
                }
            })
        } else {
            random_homogeneous(&ring, &mut rng, d, 3)
        };
        let ideal = Ideal::new(&ring, gens.clone()).unwrap();
        let gb = buchberger(&ideal, MonomialOrder::GrevLex, &GbOptions::default()).map_err(|e| e.to_string())?;
        let oracle = in_degree_span(&p, &gens, d);
        ensure(gb.contains(&p) == oracle, || format!("instance {t}: {} in ({:?})", p.to_text(), gens.iter().map(Poly::to_text).collect::<Vec<_>>()))?;
        members += oracle as usize;
    }
    let ring4 = PolyRing::new(&["a", "b", "c", "d"]).unwrap();
    for t in 0..20 {
        let k = rng.gen_range(2..=3);
        let gens: Vec<Poly> = (0..k)
            .map(|_| random_homogeneous(&ring4, &mut rng, 2, 3))
            .filter(|g| !g.is_zero())
            .collect();
        let ideal = Ideal::new(&ring4, gens).unwrap();
        let opts = GbOptions::default();
        let series: Vec<_> = [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::Block(2)]
            .iter()
            .map(|o| hilbert_series(&ideal, *o, &opts).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        ensure(series[0].same_series(&series[1]) && series[0].same_series(&series[2]), || {
            format!("instance {t}: {:?}", series.iter().map(|s| s.expand(8)).collect::<Vec<_>>())
        })?;
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let options = RunOptions {
        cache: Some(GbCache::new(dir.path())),
        ..RunOptions::default()
    };
    for label in ["rank1-torus-m3", "quiver-z3"] {
        let s = scenario(label);
        let cold = run_scenario(&s, &options).without_timings().to_json();
        let entries = std::fs::read_dir(dir.path()).map_err(|e| e.to_string())?.count();
        ensure(entries > 0, || "cache is empty after a cold run".into())?;
        let warm = run_scenario(&s, &options).without_timings().to_json();
        ensure(cold == warm, || format!("{label}: warm report differs"))?;
        Report::from_json(&warm).map_err(|e| e.to_string())?;
    }
    Ok(format!("100 memberships ({members} members), 20 Hilbert series, cache reports identical"))
}

fn main() -> ExitCode {
    let criteria: [(u32, f64, fn() -> Outcome); 9] = [
        (1, 25.0, criterion_1),
        (2, 300.0, criterion_2),
        (3, 300.0, criterion_3),
        (4, 300.0, criterion_4),
        (5, 600.0, criterion_5),
        (6, 60.0, criterion_6),
        (7, 60.0, criterion_7),
        (8, 120.0, criterion_8),
        (9, f64::INFINITY, criterion_9),
    ];
    let mut failed = 0;
    for (n, limit, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        let outcome = match outcome {
            Ok(_) if secs > limit => Err(format!("took {secs:.1} s, limit {limit} s")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({secs:.2} s) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.2} s) {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
