//! Contractions and expansions of words, admissible sequences, and the
//! rewriting of an admissible sequence into one where every expansion comes
//! before every contraction.
//!
//! Positions are 1-based. A contraction at `i` acts on `(xᵢ, xᵢ₊₁)`, with
//! `1 ≤ i < m`. An expansion of type I at `i` replaces `xᵢ`, with
//! `1 ≤ i ≤ m`. An expansion of type II at `i` inserts `(a, a⁻¹)` after the
//! first `i` entries, with `0 ≤ i ≤ m`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::local::{FiniteLocalGroup, Label, LocalGroup};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move<E> {
    ContractI { i: usize },
    ContractII { i: usize },
    ExpandI { i: usize, a: E, b: E },
    ExpandII { i: usize, a: E },
}

impl<E> Move<E> {
    pub fn is_contraction(&self) -> bool {
        matches!(self, Move::ContractI { .. } | Move::ContractII { .. })
    }

    pub fn is_expansion(&self) -> bool {
        !self.is_contraction()
    }

    pub fn position(&self) -> usize {
        match self {
            Move::ContractI { i } | Move::ContractII { i } | Move::ExpandI { i, .. } | Move::ExpandII { i, .. } => *i,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Move::ContractI { .. } => "contract-I",
            Move::ContractII { .. } => "contract-II",
            Move::ExpandI { .. } => "expand-I",
            Move::ExpandII { .. } => "expand-II",
        }
    }

    fn with_position(&self, i: usize) -> Self
    where
        E: Clone,
    {
        match self {
            Move::ContractI { .. } => Move::ContractI { i },
            Move::ContractII { .. } => Move::ContractII { i },
            Move::ExpandI { a, b, .. } => Move::ExpandI { i, a: a.clone(), b: b.clone() },
            Move::ExpandII { a, .. } => Move::ExpandII { i, a: a.clone() },
        }
    }
}

impl<E: fmt::Debug> fmt::Display for Move<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::ExpandI { i, a, b } => write!(f, "expand-I at {i} with ({a:?}, {b:?})"),
            Move::ExpandII { i, a } => write!(f, "expand-II at {i} with {a:?}"),
            other => write!(f, "{} at {}", other.kind(), other.position()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("position {position} is out of range for a word of length {len}")]
    Position { position: usize, len: usize },
    #[error("pair at position {0} is not in the product domain")]
    NotInOmega(usize),
    #[error("entries at position {0} are not mutually inverse")]
    NotInverse(usize),
    #[error("factors do not multiply to the entry at position {0}")]
    BadFactorization(usize),
    #[error("expansion letter has no inverse")]
    NotInLambda,
    #[error("letter is not in the carrier")]
    NotInCarrier,
    #[error("commutation needs a neat local group: {0}")]
    NeatnessRequired(String),
    #[error("commutation needs a contraction followed by an expansion")]
    WrongShape,
    #[error("step {step} of the trace is invalid: {source}")]
    InvalidTrace { step: usize, source: Box<MoveError> },
    #[error("trace does not end at the recorded word")]
    EndpointMismatch,
}

/// Applies `m` to `w`, checking its side conditions.
pub fn apply_move<G: LocalGroup>(g: &G, w: &[G::Elem], m: &Move<G::Elem>) -> Result<Vec<G::Elem>, MoveError> {
    let len = w.len();
    let position = m.position();
    let out_of_range = || MoveError::Position { position, len };
    match m {
        Move::ContractI { i } | Move::ContractII { i } => {
            if *i == 0 || *i >= len {
                return Err(out_of_range());
            }
            let (x, y) = (&w[i - 1], &w[*i]);
            let xy = g.product(x, y).ok_or(MoveError::NotInOmega(*i))?;
            let mut out = w[..i - 1].to_vec();
            if matches!(m, Move::ContractI { .. }) {
                out.push(xy);
            } else if g.inverse(x).as_ref() != Some(y) {
                return Err(MoveError::NotInverse(*i));
            }
            out.extend_from_slice(&w[i + 1..]);
            Ok(out)
        }
        Move::ExpandI { i, a, b } => {
            if *i == 0 || *i > len {
                return Err(out_of_range());
            }
            if !g.contains(a) || !g.contains(b) {
                return Err(MoveError::NotInCarrier);
            }
            match g.product(a, b) {
                None => return Err(MoveError::NotInOmega(*i)),
                Some(ab) if ab != w[i - 1] => return Err(MoveError::BadFactorization(*i)),
                Some(_) => {}
            }
            let mut out = w[..i - 1].to_vec();
            out.push(a.clone());
            out.push(b.clone());
            out.extend_from_slice(&w[*i..]);
            Ok(out)
        }
        Move::ExpandII { i, a } => {
            if *i > len {
                return Err(out_of_range());
            }
            if !g.contains(a) {
                return Err(MoveError::NotInCarrier);
            }
            let ai = g.inverse(a).ok_or(MoveError::NotInLambda)?;
            let mut out = w[..*i].to_vec();
            out.push(a.clone());
            out.push(ai);
            out.extend_from_slice(&w[*i..]);
            Ok(out)
        }
    }
}

/// Every applicable move on `w`, with the resulting word, in a fixed order:
/// type I contractions, type II contractions, type I expansions, type II
/// expansions, each by position.
///
/// Type I expansions use every factorization the view can enumerate (all of
/// `Ω` for finite tables) and otherwise pairs over `alphabet`; type II
/// expansions insert letters of `alphabet`.
pub fn enumerate_moves<G: LocalGroup>(
    g: &G,
    w: &[G::Elem],
    alphabet: &[G::Elem],
) -> Vec<(Move<G::Elem>, Vec<G::Elem>)> {
    let mut out = Vec::new();
    let mut push = |m: Move<G::Elem>| {
        if let Ok(v) = apply_move(g, w, &m) {
            out.push((m, v));
        }
    };
    for i in 1..w.len() {
        push(Move::ContractI { i });
    }
    for i in 1..w.len() {
        push(Move::ContractII { i });
    }
    for i in 1..=w.len() {
        let pairs = g.factorizations(&w[i - 1]).unwrap_or_else(|| {
            alphabet
                .iter()
                .flat_map(|a| alphabet.iter().map(move |b| (a.clone(), b.clone())))
                .filter(|(a, b)| g.product(a, b).as_ref() == Some(&w[i - 1]))
                .collect()
        });
        for (a, b) in pairs {
            push(Move::ExpandI { i, a, b });
        }
    }
    for i in 0..=w.len() {
        for a in alphabet {
            push(Move::ExpandII { i, a: a.clone() });
        }
    }
    out
}

/// An admissible sequence: `words[k + 1]` is `moves[k]` applied to `words[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveTrace<E> {
    pub words: Vec<Vec<E>>,
    pub moves: Vec<Move<E>>,
}

impl<E: Clone + Eq> MoveTrace<E> {
    pub fn new(start: Vec<E>) -> Self {
        MoveTrace { words: vec![start], moves: Vec::new() }
    }

    /// Builds a trace by applying `moves` from `start`.
    pub fn replay<G: LocalGroup<Elem = E>>(g: &G, start: Vec<E>, moves: Vec<Move<E>>) -> Result<Self, MoveError> {
        let mut t = MoveTrace::new(start);
        for (step, m) in moves.into_iter().enumerate() {
            t.push(g, m).map_err(|e| MoveError::InvalidTrace { step, source: Box::new(e) })?;
        }
        Ok(t)
    }

    pub fn push<G: LocalGroup<Elem = E>>(&mut self, g: &G, m: Move<E>) -> Result<(), MoveError> {
        let next = apply_move(g, self.end(), &m)?;
        self.words.push(next);
        self.moves.push(m);
        Ok(())
    }

    pub fn start(&self) -> &[E] {
        &self.words[0]
    }

    pub fn end(&self) -> &[E] {
        self.words.last().expect("a trace has at least one word")
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Re-applies every move and compares with the recorded words.
    pub fn validate<G: LocalGroup<Elem = E>>(&self, g: &G) -> Result<(), MoveError> {
        if self.words.len() != self.moves.len() + 1 {
            return Err(MoveError::EndpointMismatch);
        }
        let replayed = MoveTrace::replay(g, self.words[0].clone(), self.moves.clone())?;
        if replayed.words != self.words {
            return Err(MoveError::EndpointMismatch);
        }
        Ok(())
    }

    /// All expansions precede all contractions.
    pub fn is_special(&self) -> bool {
        let first_contraction = self.moves.iter().position(|m| m.is_contraction()).unwrap_or(self.moves.len());
        self.moves[first_contraction..].iter().all(|m| m.is_contraction())
    }
}

impl MoveTrace<crate::local::Elem> {
    /// Replayable JSON: the initial word and each move with its parameters, as labels.
    pub fn to_json(&self, g: &FiniteLocalGroup) -> Value {
        let label = |x: &usize| label_value(g.label(*x));
        let moves: Vec<Value> = self
            .moves
            .iter()
            .map(|m| match m {
                Move::ExpandI { i, a, b } => json!({"kind": m.kind(), "position": i, "a": label(a), "b": label(b)}),
                Move::ExpandII { i, a } => json!({"kind": m.kind(), "position": i, "a": label(a)}),
                _ => json!({"kind": m.kind(), "position": m.position()}),
            })
            .collect();
        json!({
            "initial": self.start().iter().map(label).collect::<Vec<_>>(),
            "moves": moves,
        })
    }

    /// Inverse of [`MoveTrace::to_json`]; the words are recomputed by replay.
    pub fn from_json(g: &FiniteLocalGroup, v: &Value) -> Result<Self, String> {
        let elem = |v: &Value| -> Result<usize, String> {
            let text = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            g.index_of(&text).ok_or_else(|| format!("unknown label {text}"))
        };
        let initial = v["initial"]
            .as_array()
            .ok_or("missing initial word")?
            .iter()
            .map(elem)
            .collect::<Result<Vec<_>, _>>()?;
        let mut moves = Vec::new();
        for m in v["moves"].as_array().ok_or("missing moves")? {
            let i = m["position"].as_u64().ok_or("missing position")? as usize;
            moves.push(match m["kind"].as_str().ok_or("missing kind")? {
                "contract-I" => Move::ContractI { i },
                "contract-II" => Move::ContractII { i },
                "expand-I" => Move::ExpandI { i, a: elem(&m["a"])?, b: elem(&m["b"])? },
                "expand-II" => Move::ExpandII { i, a: elem(&m["a"])? },
                other => return Err(format!("unknown move kind {other}")),
            });
        }
        MoveTrace::replay(g, initial, moves).map_err(|e| e.to_string())
    }
}

fn label_value(l: &Label) -> Value {
    match l {
        Label::Int(n) => json!(n),
        Label::Text(s) => json!(s),
    }
}

/// Given `x → y` by contraction `c` and `y → z` by expansion `e`, a trace
/// from `x` to `z` made of one or two expansions followed by one contraction.
///
/// A type I contraction at `i` followed by a type I expansion of the merged
/// entry is the only overlapping case. It goes through
/// `u = (…, ab, xᵢ₊₁⁻¹, xᵢ₊₁, …)` and `v = (…, a, b, xᵢ₊₁⁻¹, xᵢ₊₁, …)` and
/// contracts the inverse pair, which needs `(ab, xᵢ₊₁⁻¹) ∈ Ω`. In every
/// other case the two moves act on disjoint entries and are interchanged:
///
/// - contract-I at `i`, expand-I at `j ≠ i`: expand at `j` (`j < i`) or `j + 1`;
///   contract at `i + 1` if the expansion came first in the word, else `i`.
/// - contract-I at `i`, expand-II at gap `j`: insert at `j` (`j < i`, then
///   contract at `i + 2`) or at `j + 1` (contract at `i`).
/// - contract-II at `i`, expand-I at `j`: expand at `j` (`j < i`, then contract
///   at `i + 1`) or at `j + 2` (contract at `i`).
/// - contract-II at `i`, expand-II at gap `j`: insert at `j` (`j < i`, then
///   contract at `i + 2`) or at `j + 2` (contract at `i`).
pub fn commute_step<G: LocalGroup>(
    g: &G,
    x: &[G::Elem],
    c: &Move<G::Elem>,
    e: &Move<G::Elem>,
) -> Result<MoveTrace<G::Elem>, MoveError> {
    if !c.is_contraction() || !e.is_expansion() {
        return Err(MoveError::WrongShape);
    }
    let y = apply_move(g, x, c)?;
    apply_move(g, &y, e)?;
    let i = c.position();
    let j = e.position();
    let moves = match (c, e) {
        (Move::ContractI { .. }, Move::ExpandI { a, b, .. }) if j == i => {
            let xi = &x[i - 1];
            let xj = &x[i];
            let xj_inv = g
                .inverse(xj)
                .ok_or_else(|| MoveError::NeatnessRequired(format!("entry {} has no inverse", i + 1)))?;
            let ab = g.product(a, b).expect("checked by apply_move");
            if g.product(&ab, &xj_inv).as_ref() != Some(xi) {
                return Err(MoveError::NeatnessRequired(format!(
                    "(ab, x{}⁻¹) is not in the product domain or does not give x{}",
                    i + 1,
                    i
                )));
            }
            vec![
                Move::ExpandI { i, a: ab, b: xj_inv },
                Move::ExpandI { i, a: a.clone(), b: b.clone() },
                Move::ContractII { i: i + 2 },
            ]
        }
        (Move::ContractI { .. }, Move::ExpandI { .. }) => {
            let j2 = if j < i { j } else { j + 1 };
            vec![e.with_position(j2), c.with_position(if j2 < i { i + 1 } else { i })]
        }
        (Move::ContractI { .. }, Move::ExpandII { .. }) | (Move::ContractII { .. }, Move::ExpandII { .. }) => {
            let shift = if matches!(c, Move::ContractI { .. }) { 1 } else { 2 };
            let j2 = if j < i { j } else { j + shift };
            vec![e.with_position(j2), c.with_position(if j2 < i { i + 2 } else { i })]
        }
        (Move::ContractII { .. }, Move::ExpandI { .. }) => {
            let j2 = if j < i { j } else { j + 2 };
            vec![e.with_position(j2), c.with_position(if j2 < i { i + 1 } else { i })]
        }
        _ => unreachable!("shape checked above"),
    };
    MoveTrace::replay(g, x.to_vec(), moves)
}

/// Rewrites `t` into a special trace with the same endpoints by repeatedly
/// commuting the contraction-expansion pair with the largest index. Returns
/// the new trace and the number of commutations.
pub fn make_special<G: LocalGroup>(g: &G, t: &MoveTrace<G::Elem>) -> Result<(MoveTrace<G::Elem>, usize), MoveError> {
    t.validate(g)?;
    let mut moves = t.moves.clone();
    let mut words = t.words.clone();
    let mut steps = 0;
    while let Some(k) = (0..moves.len().saturating_sub(1))
        .rev()
        .find(|&k| moves[k].is_contraction() && moves[k + 1].is_expansion())
    {
        let local = commute_step(g, &words[k], &moves[k], &moves[k + 1])?;
        debug_assert_eq!(local.end(), &words[k + 2][..]);
        moves.splice(k..k + 2, local.moves);
        words.splice(k..k + 3, local.words);
        steps += 1;
    }
    Ok((MoveTrace { words, moves }, steps))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence<E> {
    Yes(MoveTrace<E>),
    /// Every word within the length bound reachable from `x` was visited.
    No,
    /// The step bound was hit before the search space was exhausted.
    Unknown,
}

/// Breadth-first search for an admissible sequence from `x` to `y` through
/// words of length `≤ max_word_len`, using at most `max_steps` moves.
/// Expansions draw letters from `alphabet` as in [`enumerate_moves`].
pub fn equivalent_bounded<G: LocalGroup>(
    g: &G,
    x: &[G::Elem],
    y: &[G::Elem],
    alphabet: &[G::Elem],
    max_word_len: usize,
    max_steps: usize,
) -> Equivalence<G::Elem> {
    if x == y {
        return Equivalence::Yes(MoveTrace::new(x.to_vec()));
    }
    if x.len() > max_word_len {
        return Equivalence::Unknown;
    }
    // parent pointers: word -> (previous word, move)
    let mut parent: HashMap<Vec<G::Elem>, Option<(Vec<G::Elem>, Move<G::Elem>)>> = HashMap::new();
    parent.insert(x.to_vec(), None);
    let mut frontier: VecDeque<Vec<G::Elem>> = VecDeque::from([x.to_vec()]);
    for _ in 0..max_steps {
        let mut next = VecDeque::new();
        for w in frontier {
            for (m, v) in enumerate_moves(g, &w, alphabet) {
                if v.len() > max_word_len || parent.contains_key(&v) {
                    continue;
                }
                parent.insert(v.clone(), Some((w.clone(), m)));
                if v == y {
                    return Equivalence::Yes(rebuild(g, &parent, v));
                }
                next.push_back(v);
            }
        }
        if next.is_empty() {
            return Equivalence::No;
        }
        frontier = next;
    }
    Equivalence::Unknown
}

#[allow(clippy::type_complexity)]
fn rebuild<G: LocalGroup>(
    g: &G,
    parent: &HashMap<Vec<G::Elem>, Option<(Vec<G::Elem>, Move<G::Elem>)>>,
    end: Vec<G::Elem>,
) -> MoveTrace<G::Elem> {
    let mut moves = Vec::new();
    let mut cur = end;
    while let Some(Some((prev, m))) = parent.get(&cur) {
        moves.push(m.clone());
        cur = prev.clone();
    }
    moves.reverse();
    MoveTrace::replay(g, cur, moves).expect("search only records applicable moves")
}
