//! Acceptance run: one PASS/FAIL line per criterion, with its time limit.
//! Exits non-zero when any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use localgroup::assoc::{check_global_assoc, sample_instance_words};
use localgroup::contractive::{overall, phi_preserves_eval, search_degeneracy_counterexample, Verdict};
use localgroup::fixtures;
use localgroup::globalize::{extend_morphism, globalize, Globalization, IotaVerdict, MorphismSpec};
use localgroup::group::FiniteGroup;
use localgroup::instances::{BallSet, EndoSpec, InstanceSpec};
use localgroup::local::{check_axioms, Elem, FiniteLocalGroup};
use localgroup::moves::{equivalent_bounded, make_special, Equivalence};
use localgroup::rational::q;
use localgroup::rewrite::Limits;
use localgroup::structure::{shrink_neighborhood, v_l};
use localgroup::words::eval_some;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bracketing_oracle() -> Outcome {
    let programs: Vec<_> = (0..=8).map(common::bracketings).collect();
    let fixtures = common::oracle_fixtures(2024, 25);
    let mut words = 0u64;
    let mut multi = 0u64;
    for g in &fixtures {
        for len in 0..=8 {
            for w in common::all_words(g.size(), len) {
                let dp = eval_some(g, &w);
                let brute = common::catalan_values(g, &w, &programs[len]);
                ensure(dp == brute, || format!("mismatch on {} in {}", g.format_word(&w), g.to_json()))?;
                words += 1;
                multi += (dp.len() > 1) as u64;
            }
        }
    }
    Ok(format!("{} fixtures, {words} words, {multi} with several values", fixtures.len()))
}

fn restriction_associativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let groups = fixtures::small_groups();
    let mut words = 0;
    for k in 0..50 {
        let (name, h) = &groups[k % groups.len()];
        let g = fixtures::random_group_restriction(&mut rng, h, 10);
        ensure(check_axioms(&g).passed(), || format!("{name} restriction fails the axioms"))?;
        let r = check_global_assoc(&g, 6);
        ensure(r.is_exhaustive(), || "certificate is not exhaustive".into())?;
        ensure(r.passed(), || format!("{name}: two-valued word {:?}", r.witness))?;
        if let localgroup::assoc::Certificate::Exhaustive { words: n } = r.certificate {
            words += n;
        }
    }
    Ok(format!("50 restrictions (|U| <= 10), {words} words exhaustively"))
}

fn c5arc_globalization() -> Outcome {
    let g = fixtures::c5arc();
    let glob = globalize(&g, Limits::default()).map_err(|e| e.to_string())?;
    let rules = glob.system.rules().len();
    ensure(rules <= 4, || format!("{rules} rules"))?;
    ensure(glob.verify_iota(&g).map_err(|e| e.to_string())? == IotaVerdict::Pass, || "verify_iota fails".into())?;
    let z5 = FiniteGroup::cyclic(5);
    let images = g.ambient().unwrap().embedding.clone();
    let ext = extend_morphism(&g, &glob, MorphismSpec { target: z5, images }).map_err(|e| e.to_string())?;
    let a = glob.presentation.iota(1).to_vec();
    let a5: Vec<_> = a.iter().copied().cycle().take(5).collect();
    ensure(ext.in_kernel(&a5), || "a^5 is not sent to the identity".into())?;
    let nf = glob.nf(&a5).map_err(|e| e.to_string())?;
    ensure(!nf.is_empty(), || "a^5 is trivial in H".into())?;
    Ok(format!("{rules} rules, iota injective, a^5 -> 0 in Z/5, nf(a^5) = {}", glob.system.format_word(&nf)))
}

fn critical_step_bound() -> Outcome {
    let gs = common::neat_fixtures();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut checked = 0;
    let mut max_ratio = 0.0f64;
    for m in 2..=4usize {
        for gap in 1..=3usize {
            let n = m + gap;
            let mut done = 0;
            let mut tries = 0;
            while done < 40 && tries < 2000 {
                tries += 1;
                let g = &gs[tries % gs.len()];
                let Some(t) = common::critical_trace(g, &mut rng, m, n) else { continue };
                let (s, steps) = make_special(g, &t).map_err(|e| e.to_string())?;
                s.validate(g).map_err(|e| e.to_string())?;
                ensure(s.is_special(), || "output is not special".into())?;
                ensure(s.start() == t.start() && s.end() == t.end(), || "endpoints changed".into())?;
                let bound = ((1 << m) - 1) * gap;
                ensure(steps <= bound, || format!("m={m} n={n}: {steps} steps > {bound}"))?;
                max_ratio = max_ratio.max(steps as f64 / bound as f64);
                done += 1;
            }
            ensure(done == 40, || format!("only {done} traces generated for m={m} n={n}"))?;
            checked += done;
        }
    }
    Ok(format!("{checked} critical traces, largest steps/bound ratio {max_ratio:.2}"))
}

fn phi_preserves_values() -> Outcome {
    let families = [
        ("interval", InstanceSpec::Interval { radius: q(1, 1) }, EndoSpec::Scale { factor: q(1, 2) }),
        ("arc", InstanceSpec::Arc { width: q(1, 4) }, EndoSpec::Scale { factor: q(1, 3) }),
        ("padic", InstanceSpec::Padic { p: 3, e: 0, precision: 8 }, EndoSpec::TimesP),
    ];
    let mut notes = Vec::new();
    for (name, spec, endo) in &families {
        let view = spec.as_local_group_view();
        let phi = spec.endo_fn(endo);
        let mut values = 0;
        for w in sample_instance_words(spec, 31, 1000, 8) {
            values += phi_preserves_eval(&view, &phi, &w).map_err(|b| format!("{name}: image of {b} missing"))?;
        }
        notes.push(format!("{name}: {values} values"));
    }
    Ok(format!("1000 words per family; {}", notes.join(", ")))
}

fn padic_levels() -> Outcome {
    let mut cases = 0;
    for p in [2u32, 3, 5] {
        let spec = InstanceSpec::Padic { p, e: 0, precision: 12 };
        for r in 1..=3usize {
            let v = BallSet::Padic { m: r };
            for l in -2 * r as i64..=2 * r as i64 {
                let expected = BallSet::Padic { m: (r as i64 + l).max(0) as usize };
                let got = v_l(&spec, &EndoSpec::TimesP, &v, l).map_err(|e| e.to_string())?;
                ensure(got == expected, || format!("p={p} r={r} l={l}: {got:?}"))?;
                cases += 1;
            }
            let rep = shrink_neighborhood(&spec, &EndoSpec::TimesP, &v).map_err(|e| e.to_string())?;
            ensure(overall(&rep.properties) == Verdict::Pass, || format!("{:?}", rep.properties))?;
            ensure(overall(&rep.conclusions) == Verdict::Pass, || format!("{:?}", rep.conclusions))?;
            ensure(rep.u == v, || format!("U = {:?}", rep.u))?;
        }
    }
    Ok(format!("{cases} levels for p in {{2,3,5}}, all properties and conclusions pass"))
}

fn finite_degeneracy() -> Outcome {
    let r = search_degeneracy_counterexample(5, 4);
    ensure(r.counterexample.is_none(), || format!("counterexample {:?}", r.counterexample))?;
    Ok(format!(
        "sizes 1-4: {} tables x all identity-fixing maps ({} pairs); all sizes <= 5: {} of {} maps fail injectivity or eventual identity on every table",
        r.tables, r.pairs_checked, r.maps_pruned, r.maps
    ))
}

fn equivalence_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut counts = [0usize; 3];
    for (name, g) in [("C5arc", fixtures::c5arc()), ("Z6arc", fixtures::z6arc())] {
        let glob = globalize(&g, Limits::default()).map_err(|e| e.to_string())?;
        let alphabet: Vec<Elem> = g.elements().collect();
        for k in 0..250 {
            let len = rng.gen_range(1..=3);
            let x: Vec<Elem> = (0..len).map(|_| rng.gen_range(0..g.size())).collect();
            let steps = rng.gen_range(1..=4);
            let y = if k % 2 == 0 {
                common::random_walk(&g, &mut rng, &x, steps, 5)
            } else {
                (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..g.size())).collect()
            };
            match equivalent_bounded(&g, &x, &y, &alphabet, 5, 8) {
                Equivalence::Yes(t) => {
                    t.validate(&g).map_err(|e| e.to_string())?;
                    let same = nf_of(&glob, &x)? == nf_of(&glob, &y)?;
                    ensure(same, || format!("{name}: {x:?} ~ {y:?} but normal forms differ"))?;
                    counts[0] += 1;
                }
                Equivalence::No => counts[1] += 1,
                Equivalence::Unknown => counts[2] += 1,
            }
        }
    }
    Ok(format!("500 queries: {} yes (all with equal normal forms), {} no, {} unknown", counts[0], counts[1], counts[2]))
}

fn nf_of(glob: &Globalization, w: &[Elem]) -> Result<Vec<usize>, String> {
    glob.nf(&glob.presentation.word(w)).map_err(|e| e.to_string())
}

fn extension_uniqueness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    let cases: Vec<(FiniteLocalGroup, FiniteGroup)> = vec![
        (fixtures::c5arc(), FiniteGroup::cyclic(5)),
        (fixtures::z6arc(), FiniteGroup::cyclic(6)),
        (fixtures::cyclic_arc(9, 2), FiniteGroup::cyclic(9)),
        (FiniteGroup::symmetric(3).as_local_group(), FiniteGroup::symmetric(3)),
    ];
    let mut compared = 0;
    for (g, target) in &cases {
        let glob = globalize(g, Limits::default()).map_err(|e| e.to_string())?;
        let images: Vec<Elem> = g.elements().map(|x| g.ambient().map_or(x, |a| a.embedding[x])).collect();
        let ext = extend_morphism(g, &glob, MorphismSpec { target: target.clone(), images: images.clone() })
            .map_err(|e| e.to_string())?;
        for _ in 0..250 {
            let w: Vec<usize> = (0..rng.gen_range(0..12)).map(|_| rng.gen_range(0..glob.presentation.symbols.len())).collect();
            let nf = glob.nf(&w).map_err(|e| e.to_string())?;
            let a = ext.eval(&nf);
            let b = common::fold_by_roles(&glob, target, &images, &nf);
            ensure(a == b, || format!("evaluators disagree on {nf:?}"))?;
            compared += 1;
        }
    }
    Ok(format!("{compared} normal forms over {} fixtures, zero mismatches", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("bracketing oracle", 60, bracketing_oracle),
        ("restriction associativity", 120, restriction_associativity),
        ("C5arc globalization", 5, c5arc_globalization),
        ("critical step bound", 30, critical_step_bound),
        ("phi preserves values", 60, phi_preserves_values),
        ("p-adic V_l", 5, padic_levels),
        ("finite degeneracy", 600, finite_degeneracy),
        ("equivalence soundness", 60, equivalence_soundness),
        ("extension uniqueness", 10, extension_uniqueness),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(*limit) => Err(format!("over time limit of {limit} s")),
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} [{}] {name} ({:.2} s / {limit} s): {detail}", k + 1, elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
