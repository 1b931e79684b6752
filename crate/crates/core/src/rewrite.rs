//! String rewriting over a finite symbol alphabet, ordered shortlex by
//! symbol index, with Knuth–Bendix completion.
//!
//! A system is *complete* when completion finished inside its limits: every
//! rule is shortlex-decreasing, left sides are mutually irreducible, and every
//! critical pair joins. Reduction works on any system; normal forms are only
//! handed out by complete ones.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Sym = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Vec<Sym>,
    pub rhs: Vec<Sym>,
}

pub fn shortlex_cmp(a: &[Sym], b: &[Sym]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_rules: usize,
    /// Longest left side completion may create.
    pub max_len: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_rules: 2000, max_len: 40 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("the rewriting system is not known to be confluent")]
    Incomplete,
    #[error("completion stopped at a resource limit: {reason}")]
    Limit { reason: String, partial: Box<RewriteSystem> },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("malformed rewriting system: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    symbols: Vec<String>,
    rules: Vec<Rule>,
    complete: bool,
    // rule indices keyed by the last symbol of their left side
    by_last: HashMap<Sym, Vec<usize>>,
}

/// An overlap word whose two one-step reductions have different normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnjoinedPair {
    pub overlap: Vec<Sym>,
    pub left: Vec<Sym>,
    pub right: Vec<Sym>,
}

impl RewriteSystem {
    fn from_parts(symbols: Vec<String>, mut rules: Vec<Rule>, complete: bool) -> Self {
        rules.sort_by(|a, b| shortlex_cmp(&a.lhs, &b.lhs).then_with(|| shortlex_cmp(&a.rhs, &b.rhs)));
        let mut rs = RewriteSystem { symbols, rules, complete, by_last: HashMap::new() };
        rs.reindex();
        rs
    }

    fn reindex(&mut self) {
        self.by_last.clear();
        for (k, r) in self.rules.iter().enumerate() {
            self.by_last.entry(*r.lhs.last().expect("non-empty left side")).or_default().push(k);
        }
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Rewrites until no rule applies. Terminates for any system whose rules
    /// decrease in shortlex order, complete or not.
    pub fn reduce(&self, w: &[Sym]) -> Vec<Sym> {
        let mut stack: Vec<Sym> = Vec::with_capacity(w.len());
        let mut input: Vec<Sym> = w.iter().rev().copied().collect();
        while let Some(s) = input.pop() {
            stack.push(s);
            if let Some(rule) = self.suffix_rule(&stack) {
                stack.truncate(stack.len() - rule.lhs.len());
                input.extend(rule.rhs.iter().rev());
            }
        }
        stack
    }

    fn suffix_rule(&self, stack: &[Sym]) -> Option<&Rule> {
        let last = stack.last()?;
        self.by_last
            .get(last)?
            .iter()
            .map(|&k| &self.rules[k])
            .find(|r| stack.ends_with(&r.lhs))
    }

    pub fn normal_form(&self, w: &[Sym]) -> Result<Vec<Sym>, RewriteError> {
        if !self.complete {
            return Err(RewriteError::Incomplete);
        }
        Ok(self.reduce(w))
    }

    pub fn is_irreducible(&self, w: &[Sym]) -> bool {
        (1..=w.len()).all(|end| self.suffix_rule(&w[..end]).is_none())
    }

    /// Exhaustive critical-pair check, independent of how the system was built.
    pub fn check_confluence(&self) -> Result<(), UnjoinedPair> {
        for r1 in &self.rules {
            for r2 in &self.rules {
                for (overlap, left, right) in critical_pairs(r1, r2) {
                    let (a, b) = (self.reduce(&left), self.reduce(&right));
                    if a != b {
                        return Err(UnjoinedPair { overlap, left: a, right: b });
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of irreducible words of each length `0..=max_len`.
    pub fn count_normal_forms(&self, max_len: usize) -> Vec<usize> {
        let mut counts = vec![1];
        let mut layer: Vec<Vec<Sym>> = vec![Vec::new()];
        for _ in 0..max_len {
            layer = self.extend_layer(&layer);
            counts.push(layer.len());
            if layer.is_empty() {
                break;
            }
        }
        counts
    }

    fn extend_layer(&self, layer: &[Vec<Sym>]) -> Vec<Vec<Sym>> {
        let mut next = Vec::new();
        for w in layer {
            for s in 0..self.symbols.len() {
                let mut v = w.clone();
                v.push(s);
                if self.suffix_rule(&v).is_none() {
                    next.push(v);
                }
            }
        }
        next
    }

    /// The first `limit` irreducible words in shortlex order, up to `max_len`.
    pub fn normal_forms(&self, max_len: usize, limit: usize) -> Vec<Vec<Sym>> {
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Vec<Sym>> = vec![Vec::new()];
        for _ in 0..max_len {
            if out.len() >= limit {
                break;
            }
            layer = self.extend_layer(&layer);
            if layer.is_empty() {
                break;
            }
            out.extend(layer.iter().cloned());
        }
        out.truncate(limit);
        out
    }

    pub fn symbol_index(&self, name: &str) -> Option<Sym> {
        self.symbols.iter().position(|s| s == name)
    }

    /// Symbols separated by whitespace or commas; the empty string is `ε`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Sym>, RewriteError> {
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| self.symbol_index(t).ok_or_else(|| RewriteError::UnknownSymbol(t.to_string())))
            .collect()
    }

    pub fn format_word(&self, w: &[Sym]) -> String {
        w.iter().map(|&s| self.symbols[s].as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn to_json(&self) -> String {
        let dump = Dump {
            symbols: self.symbols.clone(),
            complete: self.complete,
            rules: self
                .rules
                .iter()
                .map(|r| DumpRule { lhs: self.format_word(&r.lhs), rhs: self.format_word(&r.rhs) })
                .collect(),
        };
        serde_json::to_string_pretty(&dump).expect("dump serializes")
    }

    /// Reloads a dump. A system marked complete is re-certified: every rule
    /// must decrease and every critical pair must join.
    pub fn from_json(text: &str) -> Result<Self, RewriteError> {
        let dump: Dump = serde_json::from_str(text).map_err(|e| RewriteError::Malformed(e.to_string()))?;
        let mut names = HashSet::new();
        if let Some(dup) = dump.symbols.iter().find(|s| !names.insert(s.as_str())) {
            return Err(RewriteError::Malformed(format!("duplicate symbol {dup}")));
        }
        let shell = RewriteSystem::from_parts(dump.symbols.clone(), Vec::new(), false);
        let mut rules = Vec::new();
        for r in &dump.rules {
            let lhs = shell.parse_word(&r.lhs)?;
            let rhs = shell.parse_word(&r.rhs)?;
            if shortlex_cmp(&lhs, &rhs) != Ordering::Greater {
                return Err(RewriteError::Malformed(format!("rule {} -> {} does not decrease", r.lhs, r.rhs)));
            }
            rules.push(Rule { lhs, rhs });
        }
        let rs = RewriteSystem::from_parts(dump.symbols, rules, dump.complete);
        if rs.complete && rs.check_confluence().is_err() {
            return Err(RewriteError::Malformed("system is marked complete but is not confluent".into()));
        }
        Ok(rs)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Dump {
    symbols: Vec<String>,
    complete: bool,
    rules: Vec<DumpRule>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DumpRule {
    lhs: String,
    rhs: String,
}

/// Overlap and inclusion critical pairs of `r1` against `r2`, as
/// `(overlap word, reduct by r1, reduct by r2)`.
fn critical_pairs(r1: &Rule, r2: &Rule) -> Vec<(Vec<Sym>, Vec<Sym>, Vec<Sym>)> {
    let (l1, l2) = (&r1.lhs, &r2.lhs);
    let mut out = Vec::new();
    // suffix of l1 equals prefix of l2
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            let mut overlap = l1.clone();
            overlap.extend_from_slice(&l2[k..]);
            let mut left = r1.rhs.clone();
            left.extend_from_slice(&l2[k..]);
            let mut right = l1[..l1.len() - k].to_vec();
            right.extend_from_slice(&r2.rhs);
            out.push((overlap, left, right));
        }
    }
    // l2 inside l1
    if r1 != r2 && l2.len() <= l1.len() {
        for p in 0..=l1.len() - l2.len() {
            if l1[p..p + l2.len()] == l2[..] {
                let mut right = l1[..p].to_vec();
                right.extend_from_slice(&r2.rhs);
                right.extend_from_slice(&l1[p + l2.len()..]);
                out.push((l1.clone(), r1.rhs.clone(), right));
            }
        }
    }
    out
}

fn contains_subword(w: &[Sym], pattern: &[Sym]) -> bool {
    pattern.len() <= w.len() && w.windows(pattern.len()).any(|x| x == pattern)
}

/// Knuth–Bendix completion of the equations `l = r` over `symbols`.
///
/// Equations are processed in order, oriented shortlex, and the system is
/// kept inter-reduced. Critical pairs are resolved until none remain or a
/// limit is hit; on a limit the partial system is returned in the error.
pub fn complete(
    symbols: Vec<String>,
    equations: &[(Vec<Sym>, Vec<Sym>)],
    limits: Limits,
) -> Result<RewriteSystem, RewriteError> {
    let mut rs = RewriteSystem::from_parts(symbols, Vec::new(), false);
    let mut pending: Vec<(Vec<Sym>, Vec<Sym>)> = equations.iter().rev().cloned().collect();
    let mut checked: HashSet<(Rule, Rule)> = HashSet::new();
    loop {
        while let Some((l, r)) = pending.pop() {
            let (l, r) = (rs.reduce(&l), rs.reduce(&r));
            let (lhs, rhs) = match shortlex_cmp(&l, &r) {
                Ordering::Equal => continue,
                Ordering::Greater => (l, r),
                Ordering::Less => (r, l),
            };
            if lhs.len() > limits.max_len || rs.rules.len() >= limits.max_rules {
                let reason = if lhs.len() > limits.max_len {
                    format!("a rule of length {} exceeds max_len {}", lhs.len(), limits.max_len)
                } else {
                    format!("more than {} rules", limits.max_rules)
                };
                let partial = RewriteSystem::from_parts(rs.symbols.clone(), rs.rules.clone(), false);
                return Err(RewriteError::Limit { reason, partial: Box::new(partial) });
            }
            // rules whose left side the new rule reduces go back to pending
            let (keep, demoted): (Vec<Rule>, Vec<Rule>) =
                rs.rules.drain(..).partition(|old| !contains_subword(&old.lhs, &lhs));
            pending.extend(demoted.into_iter().map(|d| (d.lhs, d.rhs)));
            rs.rules = keep;
            rs.rules.push(Rule { lhs, rhs });
            rs.reindex();
            let reduced_rhs: Vec<Vec<Sym>> = rs.rules.iter().map(|r| rs.reduce(&r.rhs)).collect();
            for (rule, rhs) in rs.rules.iter_mut().zip(reduced_rhs) {
                rule.rhs = rhs;
            }
        }
        let mut found = false;
        let snapshot = rs.rules.clone();
        for r1 in &snapshot {
            for r2 in &snapshot {
                if !checked.insert((r1.clone(), r2.clone())) {
                    continue;
                }
                for (_, left, right) in critical_pairs(r1, r2) {
                    if rs.reduce(&left) != rs.reduce(&right) {
                        pending.push((left, right));
                        found = true;
                    }
                }
            }
        }
        if !found {
            break;
        }
    }
    let rules = std::mem::take(&mut rs.rules);
    Ok(RewriteSystem::from_parts(rs.symbols, rules, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|k| ((b'a' + k as u8) as char).to_string()).collect()
    }

    #[test]
    fn free_group_on_one_generator() {
        // a = 0, A = 1
        let rs = complete(names(2), &[(vec![0, 1], vec![]), (vec![1, 0], vec![])], Limits::default()).unwrap();
        assert_eq!(rs.rules().len(), 2);
        assert_eq!(rs.normal_form(&[0, 0, 1]).unwrap(), vec![0]);
        assert_eq!(rs.normal_form(&[0, 1, 0, 1]).unwrap(), Vec::<Sym>::new());
        assert_eq!(rs.normal_form(&[]).unwrap(), Vec::<Sym>::new());
        assert_eq!(rs.count_normal_forms(4), vec![1, 2, 2, 2, 2]);
        assert!(rs.check_confluence().is_ok());
    }

    #[test]
    fn cyclic_presentation_completes_to_a_finite_group() {
        // a^3 = 1 with formal inverse A
        let eqs = vec![(vec![0, 0, 0], vec![]), (vec![0, 1], vec![]), (vec![1, 0], vec![])];
        let rs = complete(names(2), &eqs, Limits::default()).unwrap();
        let counts = rs.count_normal_forms(6);
        assert_eq!(counts.iter().sum::<usize>(), 3);
    }

    #[test]
    fn completion_adds_rules_for_critical_pairs() {
        // ⟨a, b | ab = ba, aa = 1, bb = 1⟩ with symbols a < b: Klein four group
        let eqs = vec![(vec![1, 0], vec![0, 1]), (vec![0, 0], vec![]), (vec![1, 1], vec![])];
        let rs = complete(names(2), &eqs, Limits::default()).unwrap();
        assert_eq!(rs.count_normal_forms(5).iter().sum::<usize>(), 4);
        assert!(rs.check_confluence().is_ok());
    }

    #[test]
    fn limits_return_the_partial_system() {
        // ⟨a, b | aba = bab⟩ has an infinite shortlex completion
        let eqs = vec![(vec![0, 1, 0], vec![1, 0, 1])];
        match complete(names(2), &eqs, Limits { max_rules: 50, max_len: 8 }) {
            Err(RewriteError::Limit { partial, .. }) => {
                assert!(!partial.is_complete());
                assert_eq!(partial.normal_form(&[0]), Err(RewriteError::Incomplete));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dump_round_trips() {
        let eqs = vec![(vec![1, 0], vec![0, 1]), (vec![0, 0], vec![]), (vec![1, 1], vec![])];
        let rs = complete(names(2), &eqs, Limits::default()).unwrap();
        let text = rs.to_json();
        let back = RewriteSystem::from_json(&text).unwrap();
        assert_eq!(back, rs);
        assert_eq!(back.to_json(), text);
        let broken = text.replace("\"lhs\": \"b a\"", "\"lhs\": \"a\"");
        assert!(RewriteSystem::from_json(&broken).is_err());
    }
}
