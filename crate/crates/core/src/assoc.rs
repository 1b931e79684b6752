//! Bounded global-associativity checks.
//!
//! For finite tables every word up to the length bound is enumerated in
//! lexicographic order by a depth-first search that extends the interval
//! table one column at a time, so prefixes share their work. The word space
//! is sharded by first letter; the reported witness is the
//! lexicographically least two-valued word. For instances the check is run
//! on seeded samples and labelled as such.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::fixtures;
use crate::instances::{InstanceSpec, Point};
use crate::local::{Elem, FiniteLocalGroup, LocalGroup};
use crate::words::eval_some;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// Every word of length `≤ max_len` was examined.
    Exhaustive { words: u64 },
    /// Only this many seeded words were examined.
    Sampled { words: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocWitness<E> {
    pub word: Vec<E>,
    pub values: (E, E),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocReport<E> {
    pub max_len: usize,
    pub certificate: Certificate,
    pub witness: Option<AssocWitness<E>>,
}

impl<E> AssocReport<E> {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self.certificate, Certificate::Exhaustive { .. })
    }
}

struct BitChecker {
    n: usize,
    blocks: usize,
    max_len: usize,
    table: Vec<u32>,
}

const UNDEFINED: u32 = u32::MAX;

impl BitChecker {
    fn new(g: &FiniteLocalGroup, max_len: usize) -> Self {
        let table = g
            .product_table()
            .iter()
            .map(|z| z.map_or(UNDEFINED, |z| z as u32))
            .collect();
        BitChecker { n: g.size(), blocks: g.size().div_ceil(64), max_len, table }
    }

    #[inline]
    fn cell(&self, i: usize, j: usize) -> usize {
        (i * self.max_len + j) * self.blocks
    }

    fn fill_column(&self, cells: &mut [u64], word: &[usize], j: usize) {
        let w = self.blocks;
        let cj = self.cell(j, j);
        cells[cj..cj + w].fill(0);
        cells[cj + word[j] / 64] |= 1 << (word[j] % 64);
        let mut acc = vec![0u64; w];
        for i in (0..j).rev() {
            acc.fill(0);
            for k in i..j {
                let a = self.cell(i, k);
                let b = self.cell(k + 1, j);
                for ab in 0..w {
                    let mut bits_a = cells[a + ab];
                    while bits_a != 0 {
                        let x = ab * 64 + bits_a.trailing_zeros() as usize;
                        bits_a &= bits_a - 1;
                        let row = &self.table[x * self.n..(x + 1) * self.n];
                        for bb in 0..w {
                            let mut bits_b = cells[b + bb];
                            while bits_b != 0 {
                                let y = bb * 64 + bits_b.trailing_zeros() as usize;
                                bits_b &= bits_b - 1;
                                let z = row[y];
                                if z != UNDEFINED {
                                    acc[z as usize / 64] |= 1 << (z % 64);
                                }
                            }
                        }
                    }
                }
            }
            let ci = self.cell(i, j);
            cells[ci..ci + w].copy_from_slice(&acc);
        }
    }

    fn two_values(&self, cells: &[u64], j: usize) -> Option<(Elem, Elem)> {
        let c = self.cell(0, j);
        let mut found = Vec::with_capacity(2);
        for b in 0..self.blocks {
            let mut bits = cells[c + b];
            while bits != 0 && found.len() < 2 {
                found.push(b * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        (found.len() == 2).then(|| (found[0], found[1]))
    }

    /// Depth-first search over words starting with `first`, in lexicographic order.
    fn shard(&self, first: usize) -> (u64, Option<AssocWitness<Elem>>) {
        let len = self.max_len;
        let mut cells = vec![0u64; len * len * self.blocks];
        let mut word = vec![0usize; len];
        let mut next = vec![0usize; len + 1];
        word[0] = first;
        self.fill_column(&mut cells, &word, 0);
        let mut visited = 1u64;
        let mut depth = 0usize;
        next[1] = 0;
        loop {
            let pos = depth + 1;
            if pos < len && next[pos] < self.n {
                word[pos] = next[pos];
                next[pos] += 1;
                self.fill_column(&mut cells, &word, pos);
                visited += 1;
                if let Some(values) = self.two_values(&cells, pos) {
                    return (visited, Some(AssocWitness { word: word[..=pos].to_vec(), values }));
                }
                depth = pos;
                next[pos + 1] = 0;
            } else if depth == 0 {
                return (visited, None);
            } else {
                depth -= 1;
            }
        }
    }
}

/// Exhaustive check that every word of length `≤ max_len` has at most one value.
pub fn check_global_assoc(g: &FiniteLocalGroup, max_len: usize) -> AssocReport<Elem> {
    if max_len < 2 {
        let words = (0..=max_len as u32).map(|l| (g.size() as u64).pow(l)).sum();
        return AssocReport { max_len, certificate: Certificate::Exhaustive { words }, witness: None };
    }
    let checker = BitChecker::new(g, max_len);
    let shards: Vec<(u64, Option<AssocWitness<Elem>>)> =
        (0..g.size()).into_par_iter().map(|first| checker.shard(first)).collect();
    // the empty word is visited implicitly
    let words = 1 + shards.iter().map(|s| s.0).sum::<u64>();
    let witness = shards.into_iter().find_map(|s| s.1);
    AssocReport { max_len, certificate: Certificate::Exhaustive { words }, witness }
}

/// Checks the given words only.
pub fn check_global_assoc_sampled<G, I>(g: &G, max_len: usize, words: I) -> AssocReport<G::Elem>
where
    G: LocalGroup,
    I: IntoIterator<Item = Vec<G::Elem>>,
{
    let mut count = 0u64;
    for w in words {
        count += 1;
        let values = eval_some(g, &w);
        if values.len() >= 2 {
            let mut it = values.into_iter();
            let a = it.next().unwrap();
            let b = it.next().unwrap();
            return AssocReport {
                max_len,
                certificate: Certificate::Sampled { words: count },
                witness: Some(AssocWitness { word: w, values: (a, b) }),
            };
        }
    }
    AssocReport { max_len, certificate: Certificate::Sampled { words: count }, witness: None }
}

/// Seeded words of length `2..=max_len`. Odd-numbered words draw their
/// entries from the carrier shrunk by the word length, so that a good share
/// of them have defined bracketings.
pub fn sample_instance_words(spec: &InstanceSpec, seed: u64, count: usize, max_len: usize) -> Vec<Vec<Point>> {
    if max_len < 2 {
        return Vec::new();
    }
    let mut lengths = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut sampler = spec.sampler(seed);
    (0..count)
        .map(|i| {
            let len = lengths.gen_range(2..=max_len);
            let ball = if i % 2 == 0 {
                spec.carrier_ball()
            } else {
                spec.shrunk_carrier_ball(len as i64)
            };
            sampler.word_in(&ball, len)
        })
        .collect()
}

pub fn check_global_assoc_instance(
    spec: &InstanceSpec,
    max_len: usize,
    seed: u64,
    samples: usize,
) -> AssocReport<Point> {
    let words = sample_instance_words(spec, seed, samples, max_len);
    check_global_assoc_sampled(&spec.as_local_group_view(), max_len, words)
}

/// Random search for a local group on at most `max_size` elements that
/// passes the axioms but has a two-valued word of length `≤ max_len`.
pub fn search_non_associative(
    max_size: usize,
    max_len: usize,
    seed: u64,
    attempts: usize,
) -> Option<(FiniteLocalGroup, AssocWitness<Elem>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let size = rng.gen_range(3..=max_size.max(3));
        let density = rng.gen_range(0.2..0.7);
        let Some(g) = fixtures::random_local_group(&mut rng, size, density) else { continue };
        if let Some(w) = check_global_assoc(&g, max_len).witness {
            return Some((g, w));
        }
    }
    None
}
