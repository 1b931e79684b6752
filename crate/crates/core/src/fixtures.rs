//! Small local groups used by tests, examples and the command line.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::group::FiniteGroup;
use crate::local::{check_axioms, from_group_restriction, symmetrize, Elem, FiniteLocalGroup, Label, Subset};

/// `ℤ/5` restricted to `{0, 1, 4}`.
pub fn c5arc() -> FiniteLocalGroup {
    from_group_restriction(&FiniteGroup::cyclic(5), &Subset::from([0, 1, 4])).expect("identity in U")
}

/// `ℤ/6` restricted to `{0, 1, 5}`.
pub fn z6arc() -> FiniteLocalGroup {
    from_group_restriction(&FiniteGroup::cyclic(6), &Subset::from([0, 1, 5])).expect("identity in U")
}

/// `ℤ/n` restricted to `{−k, …, k}`.
pub fn cyclic_arc(n: usize, k: usize) -> FiniteLocalGroup {
    assert!(2 * k < n);
    let u: Subset = (0..=k).chain((n - k)..n).map(|x| x % n).collect();
    from_group_restriction(&FiniteGroup::cyclic(n), &u).expect("identity in U")
}

const NON_ASSOCIATIVE: &str = include_str!("../tests/fixtures/nonassoc5.json");

/// A table on at most five elements that passes every axiom but has a word
/// with two distinct values.
pub fn non_associative() -> FiniteLocalGroup {
    FiniteLocalGroup::from_json(NON_ASSOCIATIVE).expect("fixture parses")
}

/// Small groups of order at most 24, by name.
pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z2", FiniteGroup::cyclic(2)),
        ("Z5", FiniteGroup::cyclic(5)),
        ("Z6", FiniteGroup::cyclic(6)),
        ("Z8", FiniteGroup::cyclic(8)),
        ("Z12", FiniteGroup::cyclic(12)),
        ("Z2xZ4", FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4))),
        ("S3", FiniteGroup::symmetric(3)),
        ("D4", FiniteGroup::dihedral(4)),
        ("D5", FiniteGroup::dihedral(5)),
        ("Q8", FiniteGroup::quaternion()),
        ("A4", FiniteGroup::alternating4()),
        ("S4", FiniteGroup::symmetric(4)),
    ]
}

/// Restriction of `h` to the symmetrization of a random identity-containing
/// subset with at most `max_size` elements.
pub fn random_group_restriction<R: Rng>(rng: &mut R, h: &FiniteGroup, max_size: usize) -> FiniteLocalGroup {
    let mut others: Vec<Elem> = (0..h.order()).filter(|&x| x != h.identity()).collect();
    others.shuffle(rng);
    let mut u = Subset::from([h.identity()]);
    for x in others {
        if u.len() >= max_size {
            break;
        }
        if rng.gen_bool(0.5) {
            u.insert(x);
            if u.len() < max_size {
                u.insert(h.inv(x));
            }
        }
    }
    let u = symmetrize(&h.as_local_group(), &u);
    from_group_restriction(h, &u).expect("identity in U")
}

/// A random table on `size` elements (identity `0`) that passes every axiom,
/// or `None` when rejection sampling gives up. Non-identity products are
/// defined with probability `density`; inverses are paired where possible.
pub fn random_local_group<R: Rng>(rng: &mut R, size: usize, density: f64) -> Option<FiniteLocalGroup> {
    assert!(size >= 1);
    let labels: Vec<Label> = (0..size as i64).map(Label::Int).collect();
    for _ in 0..64 {
        let mut product = vec![None; size * size];
        for x in 0..size {
            product[x] = Some(x);
            product[x * size] = Some(x);
        }
        for x in 1..size {
            for y in 1..size {
                if rng.gen_bool(density) {
                    product[x * size + y] = Some(rng.gen_range(0..size));
                }
            }
        }
        let mut inverse = vec![None; size];
        inverse[0] = Some(0);
        for x in 1..size {
            if inverse[x].is_some() {
                continue;
            }
            let candidates: Vec<Elem> = (1..size)
                .filter(|&y| {
                    (inverse[y].is_none() || y == x)
                        && product[x * size + y] == Some(0)
                        && product[y * size + x] == Some(0)
                })
                .collect();
            if let Some(&y) = candidates.choose(rng) {
                inverse[x] = Some(y);
                inverse[y] = Some(x);
            }
        }
        let g = FiniteLocalGroup::from_tables(labels.clone(), 0, product, inverse).ok()?;
        if check_axioms(&g).passed() {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn arcs() {
        assert_eq!(c5arc().size(), 3);
        assert_eq!(z6arc().ambient().unwrap().embedding, vec![0, 1, 5]);
        assert_eq!(cyclic_arc(7, 2).size(), 5);
    }

    #[test]
    fn random_tables_pass_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut found = 0;
        for _ in 0..20 {
            if let Some(g) = random_local_group(&mut rng, 4, 0.4) {
                assert!(check_axioms(&g).passed());
                found += 1;
            }
        }
        assert!(found > 0);
        for (_, h) in small_groups() {
            let g = random_group_restriction(&mut rng, &h, 10);
            assert!(g.size() <= 10);
            assert!(check_axioms(&g).passed());
        }
    }
}
