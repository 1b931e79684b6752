//! Bracketing evaluation of words.
//!
//! `eval_some(w)` is the set of values `b` reachable by *some* bracketing of
//! `w` in which every intermediate product is defined. `eval_all(w)` is the
//! value obtained when *every* split is defined and agrees. Both are interval
//! dynamic programs over the word.

use std::collections::BTreeSet;

use crate::local::{Elem, FiniteLocalGroup, LocalGroup, Subset};

pub type Word<E> = Vec<E>;

pub type ValueSet<E> = BTreeSet<E>;

/// Whether every entry of `w` lies in the carrier.
pub fn is_valid_word<G: LocalGroup>(g: &G, w: &[G::Elem]) -> bool {
    w.iter().all(|x| g.contains(x))
}

/// Value-set table: `cells[i][j]` holds the values of `w[i..=j]`.
fn some_table<G: LocalGroup>(g: &G, w: &[G::Elem]) -> Vec<Vec<ValueSet<G::Elem>>> {
    let n = w.len();
    let mut cells: Vec<Vec<ValueSet<G::Elem>>> = vec![vec![ValueSet::new(); n]; n];
    for (i, x) in w.iter().enumerate() {
        cells[i][i].insert(x.clone());
    }
    for len in 2..=n {
        for i in 0..=n - len {
            let j = i + len - 1;
            let mut acc = ValueSet::new();
            // splits left to right
            for k in i..j {
                for a in &cells[i][k] {
                    for b in &cells[k + 1][j] {
                        if let Some(c) = g.product(a, b) {
                            acc.insert(c);
                        }
                    }
                }
            }
            cells[i][j] = acc;
        }
    }
    cells
}

/// `{b : w ⤳ b}`; the empty word evaluates to the identity.
pub fn eval_some<G: LocalGroup>(g: &G, w: &[G::Elem]) -> ValueSet<G::Elem> {
    if w.is_empty() {
        return ValueSet::from([g.identity()]);
    }
    let mut cells = some_table(g, w);
    std::mem::take(&mut cells[0][w.len() - 1])
}

/// The unique `b` with `w → b`, if every split is defined and they agree.
pub fn eval_all<G: LocalGroup>(g: &G, w: &[G::Elem]) -> Option<G::Elem> {
    let n = w.len();
    if n == 0 {
        return Some(g.identity());
    }
    let mut cells: Vec<Vec<Option<G::Elem>>> = vec![vec![None; n]; n];
    for (i, x) in w.iter().enumerate() {
        cells[i][i] = Some(x.clone());
    }
    for len in 2..=n {
        for i in 0..=n - len {
            let j = i + len - 1;
            let mut value: Option<G::Elem> = None;
            let mut ok = true;
            for k in i..j {
                let split = match (&cells[i][k], &cells[k + 1][j]) {
                    (Some(a), Some(b)) => g.product(a, b),
                    _ => None,
                };
                match (split, &value) {
                    (None, _) => ok = false,
                    (Some(c), None) => value = Some(c),
                    (Some(c), Some(v)) => ok &= c == *v,
                }
                if !ok {
                    break;
                }
            }
            cells[i][j] = if ok { value } else { None };
        }
    }
    cells[0][n - 1].take()
}

/// Tuples on which strong evaluation is defined, and greedy maximal
/// identity-containing subsets `S` with `Sⁿ` inside that set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongDomain {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<Elem>>,
    pub maximal_subsets: Vec<Subset>,
}

fn all_tuples(carrier: &[Elem], n: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                carrier.iter().map(move |&x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// The finite analogue of a neighborhood on which every `n`-fold product is
/// strongly defined.
///
/// Maximal subsets are grown greedily: for every non-identity seed `x` in
/// index order, start from `{1, x}` (skipped when that already fails) and try
/// the remaining elements in index order. Duplicates are dropped and the
/// list is returned in order of first discovery; `{1}` alone is reported when
/// no seed survives.
pub fn strong_domain(g: &FiniteLocalGroup, n: usize) -> StrongDomain {
    assert!(n >= 1, "strong domain arity must be positive");
    let carrier: Vec<Elem> = g.elements().collect();
    let tuples: BTreeSet<Vec<Elem>> = all_tuples(&carrier, n)
        .into_iter()
        .filter(|t| eval_all(g, t).is_some())
        .collect();
    let fits = |s: &Subset| {
        let members: Vec<Elem> = s.iter().copied().collect();
        all_tuples(&members, n).iter().all(|t| tuples.contains(t))
    };
    let one = g.identity();
    let mut maximal_subsets: Vec<Subset> = Vec::new();
    for seed in carrier.iter().copied().filter(|&x| x != one) {
        let mut s: Subset = [one, seed].into_iter().collect();
        if !fits(&s) {
            continue;
        }
        for &x in &carrier {
            if s.contains(&x) {
                continue;
            }
            s.insert(x);
            if !fits(&s) {
                s.remove(&x);
            }
        }
        if !maximal_subsets.contains(&s) {
            maximal_subsets.push(s);
        }
    }
    if maximal_subsets.is_empty() {
        maximal_subsets.push([one].into_iter().collect());
    }
    StrongDomain { arity: n, tuples, maximal_subsets }
}
