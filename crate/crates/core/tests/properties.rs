mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use localgroup::contractive::{padic_entry_time, phi_preserves_eval, KernelTower, Membership};
use localgroup::fixtures;
use localgroup::globalize::globalize;
use localgroup::instances::{BallSet, EndoSpec, InstanceSpec};
use localgroup::local::{check_axioms, is_neat, is_symmetric, restrict, symmetrize, Elem, LocalGroup, Subset};
use localgroup::moves::{commute_step, enumerate_moves, make_special, MoveTrace};
use localgroup::padic::PadicInt;
use localgroup::rational::q;
use localgroup::rewrite::{shortlex_cmp, Limits};
use localgroup::structure::v_l;
use localgroup::words::{eval_all, eval_some};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_restriction(seed: u64, max_size: usize) -> localgroup::FiniteLocalGroup {
    let mut r = rng(seed);
    let groups = fixtures::small_groups();
    let (_, h) = groups.choose(&mut r).unwrap();
    fixtures::random_group_restriction(&mut r, h, max_size)
}

fn random_subset(r: &mut ChaCha8Rng, g: &localgroup::FiniteLocalGroup) -> Subset {
    let mut s: Subset = g.elements().filter(|_| r.gen_bool(0.6)).collect();
    s.insert(g.identity());
    s
}

fn random_word(r: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<Elem> {
    (0..len).map(|_| r.gen_range(0..n)).collect()
}

fn instances() -> Vec<(InstanceSpec, EndoSpec)> {
    vec![
        (InstanceSpec::Interval { radius: q(1, 1) }, EndoSpec::Scale { factor: q(1, 2) }),
        (InstanceSpec::Arc { width: q(1, 4) }, EndoSpec::Scale { factor: q(-1, 3) }),
        (InstanceSpec::Padic { p: 3, e: 0, precision: 6 }, EndoSpec::TimesP),
        (InstanceSpec::Padic { p: 2, e: 1, precision: 8 }, EndoSpec::TimesP),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, max_global_rejects: 1 << 20, ..ProptestConfig::default() })]

    #[test]
    fn symmetrize_is_idempotent_and_shrinks(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = fixtures::random_local_group(&mut r, 5, 0.5).unwrap_or_else(fixtures::c5arc);
        let x = random_subset(&mut r, &g);
        let s = symmetrize(&g, &x);
        prop_assert!(s.is_subset(&x));
        prop_assert_eq!(symmetrize(&g, &s), s.clone());
        prop_assert!(is_symmetric(&g, &s));
    }

    #[test]
    fn restriction_composes(seed in any::<u64>()) {
        let g = random_restriction(seed, 8);
        let mut r = rng(seed ^ 1);
        let u = random_subset(&mut r, &g);
        let v: Subset = u.iter().copied().filter(|&x| x == g.identity() || r.gen_bool(0.5)).collect();
        let gu = restrict(&g, &u).unwrap();
        let rank: Subset = u.iter().enumerate().filter(|(_, x)| v.contains(x)).map(|(i, _)| i).collect();
        prop_assert_eq!(restrict(&gu, &rank).unwrap(), restrict(&g, &v).unwrap());
    }

    #[test]
    fn group_restrictions_are_local_groups(seed in any::<u64>()) {
        let g = random_restriction(seed, 12);
        prop_assert!(check_axioms(&g).passed());
    }

    #[test]
    fn symmetric_squares_in_omega_are_neat(seed in any::<u64>()) {
        let g = random_restriction(seed, 12);
        let mut r = rng(seed ^ 2);
        let u = symmetrize(&g, &random_subset(&mut r, &g));
        let square_in_omega = u.iter().all(|&x| u.iter().all(|&y| g.mul(x, y).is_some()));
        prop_assume!(square_in_omega);
        prop_assert!(is_neat(&restrict(&g, &u).unwrap()).is_neat());
    }

    #[test]
    fn strong_value_is_the_only_value(seed in any::<u64>(), len in 0usize..7) {
        let mut r = rng(seed);
        let g = if seed % 3 == 0 { fixtures::non_associative() } else { random_restriction(seed, 6) };
        let w = random_word(&mut r, g.size(), len);
        if let Some(b) = eval_all(&g, &w) {
            prop_assert_eq!(eval_some(&g, &w).into_iter().collect::<Vec<_>>(), vec![b]);
        }
    }

    #[test]
    fn values_shrink_under_restriction(seed in any::<u64>(), len in 1usize..7) {
        let g = random_restriction(seed, 10);
        let mut r = rng(seed ^ 3);
        let u = random_subset(&mut r, &g);
        let members: Vec<Elem> = u.iter().copied().collect();
        let gu = restrict(&g, &u).unwrap();
        let w_local = random_word(&mut r, members.len(), len);
        let w: Vec<Elem> = w_local.iter().map(|&i| members[i]).collect();
        let big = eval_some(&g, &w);
        for b in eval_some(&gu, &w_local) {
            prop_assert!(big.contains(&members[b]));
        }
    }

    #[test]
    fn values_are_ambient_products(seed in any::<u64>(), len in 0usize..8) {
        let g = random_restriction(seed, 10);
        let amb = g.ambient().unwrap();
        let mut r = rng(seed ^ 4);
        let w = random_word(&mut r, g.size(), len);
        let prod = w.iter().fold(amb.group.identity(), |acc, &x| amb.group.mul(acc, amb.embedding[x]));
        for b in eval_some(&g, &w) {
            prop_assert_eq!(amb.embedding[b], prod);
        }
    }

    #[test]
    fn normal_forms_are_idempotent_and_shortlex_smaller(seed in any::<u64>(), len in 0usize..12) {
        let g = if seed % 2 == 0 { fixtures::c5arc() } else { fixtures::cyclic_arc(9, 2) };
        let glob = globalize(&g, Limits::default()).unwrap();
        let mut r = rng(seed);
        let w: Vec<usize> = (0..len).map(|_| r.gen_range(0..glob.presentation.symbols.len())).collect();
        let nf = glob.nf(&w).unwrap();
        prop_assert_eq!(glob.nf(&nf).unwrap(), nf.clone());
        prop_assert!(shortlex_cmp(&nf, &w).is_le());
    }

    #[test]
    fn iota_is_multiplicative(seed in any::<u64>()) {
        let g = random_restriction(seed, 5);
        let glob = match globalize(&g, Limits::default()) {
            Ok(glob) => glob,
            Err(_) => return Ok(()),
        };
        for (x, y) in g.omega() {
            let mut w = glob.presentation.iota(x).to_vec();
            w.extend_from_slice(glob.presentation.iota(y));
            let xy = g.mul(x, y).unwrap();
            prop_assert_eq!(glob.nf(&w).unwrap(), glob.nf(glob.presentation.iota(xy)).unwrap());
        }
    }

    #[test]
    fn kernel_tower_is_invariant(seed in any::<u64>(), len in 0usize..8) {
        let g = fixtures::c5arc();
        let glob = globalize(&g, Limits::default()).unwrap();
        let images: Vec<Elem> = if seed % 2 == 0 { vec![0, 1, 2] } else { vec![0, 2, 1] };
        let tower = KernelTower::new(&g, &glob, &images).unwrap();
        let mut r = rng(seed);
        let w: Vec<usize> = (0..len).map(|_| r.gen_range(0..2)).collect();
        if let Membership::Member(_) = tower.membership(&g, &w, 4).unwrap() {
            let image = tower.apply(&w);
            prop_assert!(matches!(tower.membership(&g, &image, 4).unwrap(), Membership::Member(_)));
        }
    }

    #[test]
    fn shrinking_levels_obey_the_laws(which in 0usize..4, r in 0usize..4, l in -6i64..6) {
        let (spec, endo) = instances()[which].clone();
        let v = match &spec {
            InstanceSpec::Padic { e, .. } => BallSet::Padic { m: e + r },
            InstanceSpec::Interval { radius } | InstanceSpec::Arc { width: radius } => {
                BallSet::Ball { radius: radius / localgroup::rational::int(r as i64 + 2), closed: true }
            }
            InstanceSpec::Product { .. } => unreachable!(),
        };
        let a = v_l(&spec, &endo, &v, l).unwrap();
        let b = v_l(&spec, &endo, &v, l + 1).unwrap();
        prop_assert!(spec.ball_subset(&b, &a));
        prop_assert!(spec.ball_subset(&spec.ball_power_image(&endo, &a, 1).unwrap(), &b));
        // symmetric: a ball contains x iff it contains −x; membership in
        // p^m Z_p is undecidable once m exceeds the stored precision
        if let (InstanceSpec::Padic { precision, .. }, BallSet::Padic { m }) = (&spec, &a) {
            prop_assume!(m <= precision);
        }
        let x = spec.sampler(r as u64).point_in(&a);
        prop_assert!(spec.ball_contains(&a, &spec.inverse(&x).unwrap()).unwrap());
    }

    #[test]
    fn padic_entry_time_is_the_valuation_gap(seed in any::<u64>(), m in 0usize..10) {
        let mut r = rng(seed);
        let p = *[2u32, 3, 5, 7].choose(&mut r).unwrap();
        let digits: Vec<u32> = (0..6).map(|_| r.gen_range(0..p)).collect();
        let x = PadicInt::new(p, digits).unwrap();
        prop_assume!(!x.is_zero());
        let v = x.valuation().unwrap();
        prop_assert_eq!(padic_entry_time(&x, m), m.saturating_sub(v));
        prop_assert_eq!(x.shift(3).valuation(), Some(v + 3));
    }

    #[test]
    fn instance_laws_on_sampled_triples(which in 0usize..4, seed in any::<u64>()) {
        let (spec, endo) = instances()[which].clone();
        let view = spec.as_local_group_view();
        let pts = spec.sample(seed, 3);
        let (x, y, z) = (&pts[0], &pts[1], &pts[2]);
        let one = view.identity();
        prop_assert_eq!(view.product(x, &one), Some(x.clone()));
        prop_assert_eq!(view.product(&one, x), Some(x.clone()));
        let xi = view.inverse(x).unwrap();
        prop_assert_eq!(view.product(x, &xi), Some(one.clone()));
        if let (Some(xy), Some(yz)) = (view.product(x, y), view.product(y, z)) {
            if let (Some(a), Some(b)) = (view.product(&xy, z), view.product(x, &yz)) {
                prop_assert_eq!(a, b);
            }
        }
        // neat: (xy, y⁻¹) ∈ Ω with value x
        if let Some(xy) = view.product(x, y) {
            prop_assert_eq!(view.product(&xy, &view.inverse(y).unwrap()), Some(x.clone()));
        }
        let phi = spec.endo_fn(&endo);
        prop_assert_eq!(phi(x) == phi(y), x == y);
    }

    #[test]
    fn phi_preserves_bracketing_values(which in 0usize..4, seed in any::<u64>()) {
        let (spec, endo) = instances()[which].clone();
        let view = spec.as_local_group_view();
        let phi = spec.endo_fn(&endo);
        for w in localgroup::assoc::sample_instance_words(&spec, seed, 8, 6) {
            prop_assert!(phi_preserves_eval(&view, &phi, &w).is_ok());
        }
    }

    #[test]
    fn commutation_replays_to_the_same_word(seed in any::<u64>()) {
        let gs = common::neat_fixtures();
        let mut r = rng(seed);
        let g = gs.choose(&mut r).unwrap();
        let alphabet: Vec<Elem> = g.elements().collect();
        let len = r.gen_range(2..5);
        let x = random_word(&mut r, g.size(), len);
        let contractions: Vec<_> = enumerate_moves(g, &x, &alphabet).into_iter().filter(|(m, _)| m.is_contraction()).collect();
        prop_assume!(!contractions.is_empty());
        let (c, y) = contractions.choose(&mut r).unwrap().clone();
        let expansions: Vec<_> = enumerate_moves(g, &y, &alphabet).into_iter().filter(|(m, _)| m.is_expansion()).collect();
        let (e, z) = expansions.choose(&mut r).unwrap().clone();
        let t = commute_step(g, &x, &c, &e).unwrap();
        prop_assert_eq!(t.start(), &x[..]);
        prop_assert_eq!(t.end(), &z[..]);
        prop_assert!(t.is_special());
        t.validate(g).unwrap();
    }

    #[test]
    fn make_special_keeps_endpoints(seed in any::<u64>(), len in 1usize..7) {
        let gs = common::neat_fixtures();
        let mut r = rng(seed);
        let g = gs.choose(&mut r).unwrap();
        let start = random_word(&mut r, g.size(), 3);
        let mut t = MoveTrace::new(start);
        let alphabet: Vec<Elem> = g.elements().collect();
        for _ in 0..len {
            let options: Vec<_> = enumerate_moves(g, t.end(), &alphabet).into_iter().filter(|(_, v)| v.len() <= 6).collect();
            let Some((m, _)) = options.choose(&mut r).cloned() else { break };
            t.push(g, m).unwrap();
        }
        let (s, _) = make_special(g, &t).unwrap();
        s.validate(g).unwrap();
        prop_assert!(s.is_special());
        prop_assert_eq!(s.start(), t.start());
        prop_assert_eq!(s.end(), t.end());
    }

    #[test]
    fn contractions_keep_values_on_associative_tables(seed in any::<u64>()) {
        let gs = common::neat_fixtures();
        let mut r = rng(seed);
        let g = gs.choose(&mut r).unwrap();
        let alphabet: Vec<Elem> = g.elements().collect();
        let len = r.gen_range(2..6);
        let x = random_word(&mut r, g.size(), len);
        for (m, y) in enumerate_moves(g, &x, &alphabet) {
            if m.is_contraction() {
                prop_assert!(eval_some(g, &y).is_subset(&eval_some(g, &x)));
            }
        }
    }
}
