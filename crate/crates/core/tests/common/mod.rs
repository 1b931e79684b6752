//! Independent oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use localgroup::fixtures;
use localgroup::globalize::{Globalization, SymbolRole};
use localgroup::group::{FiniteGroup, Group};
use localgroup::local::{is_neat, Elem, FiniteLocalGroup};
use localgroup::moves::{enumerate_moves, MoveTrace};
use localgroup::rewrite::Sym;

/// A postfix program: `Some(k)` pushes entry `k`, `None` multiplies the top two.
pub type Bracketing = Vec<Option<usize>>;

/// Every full bracketing of `len` entries, as postfix programs. There are
/// Catalan(len − 1) of them.
pub fn bracketings(len: usize) -> Vec<Bracketing> {
    fn go(lo: usize, hi: usize) -> Vec<Bracketing> {
        if hi - lo == 1 {
            return vec![vec![Some(lo)]];
        }
        let mut out = Vec::new();
        for mid in lo + 1..hi {
            for l in go(lo, mid) {
                for r in go(mid, hi) {
                    let mut p = l.clone();
                    p.extend(r);
                    p.push(None);
                    out.push(p);
                }
            }
        }
        out
    }
    if len == 0 {
        return vec![Vec::new()];
    }
    go(0, len)
}

/// Values of `w` over the given bracketings, by direct evaluation of each tree.
pub fn catalan_values(g: &FiniteLocalGroup, w: &[Elem], programs: &[Bracketing]) -> BTreeSet<Elem> {
    let mut out = BTreeSet::new();
    if w.is_empty() {
        out.insert(g.identity());
        return out;
    }
    let mut stack = Vec::with_capacity(w.len());
    'tree: for p in programs {
        stack.clear();
        for op in p {
            match op {
                Some(k) => stack.push(w[*k]),
                None => {
                    let y = stack.pop().unwrap();
                    let x = stack.pop().unwrap();
                    match g.mul(x, y) {
                        Some(z) => stack.push(z),
                        None => continue 'tree,
                    }
                }
            }
        }
        out.insert(stack[0]);
    }
    out
}

/// All words of length `len` over `0..n`, in lexicographic order.
pub fn all_words(n: usize, len: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// `count` seeded finite fixtures of at most four elements: the named ones,
/// then alternating random tables and group restrictions.
pub fn oracle_fixtures(seed: u64, count: usize) -> Vec<FiniteLocalGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![fixtures::c5arc(), fixtures::z6arc(), fixtures::non_associative()];
    let groups = fixtures::small_groups();
    while out.len() < count {
        if out.len() % 2 == 0 {
            let size = rng.gen_range(3..=4);
            let density = rng.gen_range(0.3..0.8);
            if let Some(g) = fixtures::random_local_group(&mut rng, size, density) {
                out.push(g);
            }
        } else {
            let (_, h) = groups.choose(&mut rng).unwrap();
            out.push(fixtures::random_group_restriction(&mut rng, h, 4));
        }
    }
    out
}

/// Neat fixtures on which contractions and expansions are plentiful.
pub fn neat_fixtures() -> Vec<FiniteLocalGroup> {
    let mut out = vec![
        fixtures::c5arc(),
        fixtures::z6arc(),
        fixtures::cyclic_arc(9, 2),
        fixtures::cyclic_arc(11, 3),
        FiniteGroup::cyclic(4).as_local_group(),
        FiniteGroup::symmetric(3).as_local_group(),
    ];
    out.retain(|g| is_neat(g).is_neat());
    out
}

/// A critical-case trace: `m − 1` contractions followed by `n − m`
/// expansions, all chosen at random. `None` if the start word runs out of
/// contractions.
pub fn critical_trace(g: &FiniteLocalGroup, rng: &mut ChaCha8Rng, m: usize, n: usize) -> Option<MoveTrace<Elem>> {
    let alphabet: Vec<Elem> = g.elements().collect();
    let len = rng.gen_range(m..=m + 3);
    let start: Vec<Elem> = (0..len).map(|_| rng.gen_range(0..g.size())).collect();
    let mut t = MoveTrace::new(start);
    for _ in 1..m {
        let options: Vec<_> = enumerate_moves(g, t.end(), &alphabet)
            .into_iter()
            .filter(|(mv, _)| mv.is_contraction())
            .collect();
        let (mv, _) = options.choose(rng)?.clone();
        t.push(g, mv).unwrap();
    }
    for _ in m..n {
        let options: Vec<_> = enumerate_moves(g, t.end(), &alphabet)
            .into_iter()
            .filter(|(mv, _)| mv.is_expansion())
            .collect();
        let (mv, _) = options.choose(rng)?.clone();
        t.push(g, mv).unwrap();
    }
    Some(t)
}

/// A random walk of `steps` moves from `x` that keeps words within `max_len`.
pub fn random_walk(g: &FiniteLocalGroup, rng: &mut ChaCha8Rng, x: &[Elem], steps: usize, max_len: usize) -> Vec<Elem> {
    let alphabet: Vec<Elem> = g.elements().collect();
    let mut cur = x.to_vec();
    for _ in 0..steps {
        let options: Vec<_> = enumerate_moves(g, &cur, &alphabet)
            .into_iter()
            .filter(|(_, v)| v.len() <= max_len)
            .collect();
        match options.choose(rng) {
            Some((_, v)) => cur = v.clone(),
            None => break,
        }
    }
    cur
}

/// Second evaluator for an extension `H → T`: reads each symbol's role and
/// multiplies images directly, without going through `extend_morphism`.
pub fn fold_by_roles<T: Group>(glob: &Globalization, target: &T, images: &[T::Elem], w: &[Sym]) -> T::Elem {
    w.iter().fold(target.identity(), |acc, &s| {
        let img = match glob.presentation.roles[s] {
            SymbolRole::Generator(x) => images[x].clone(),
            SymbolRole::FormalInverse(x) => target.inv(&images[x]),
        };
        target.mul(&acc, &img)
    })
}
