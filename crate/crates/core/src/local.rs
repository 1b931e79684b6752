//! Finite local groups: a carrier with an identity, a partially defined
//! product (domain `Ω`) and a partially defined inversion (domain `Λ`).
//!
//! Tables are dense. Element `i` of the carrier is addressed by its index,
//! and `None` marks an undefined product or inverse.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::FiniteGroup;

/// Dense index of a carrier element.
pub type Elem = usize;

/// A subset of a finite carrier, by index.
pub type Subset = BTreeSet<Elem>;

/// Uniform interface over finite tables and exact symbolic instances.
pub trait LocalGroup {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug;

    fn identity(&self) -> Self::Elem;

    /// Carrier membership.
    fn contains(&self, x: &Self::Elem) -> bool;

    /// `Some(xy)` when `(x, y) ∈ Ω`.
    fn product(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem>;

    /// `Some(x⁻¹)` when `x ∈ Λ`.
    fn inverse(&self, x: &Self::Elem) -> Option<Self::Elem>;

    /// All `(a, b) ∈ Ω` with `ab = z`, if that set is finite and enumerable.
    fn factorizations(&self, _z: &Self::Elem) -> Option<Vec<(Self::Elem, Self::Elem)>> {
        None
    }

    fn in_domain(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.product(x, y).is_some()
    }
}

/// Element label as it appears in the JSON format: an integer or a string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Text(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(n) => write!(f, "{n}"),
            Label::Text(s) => f.write_str(s),
        }
    }
}

impl From<i64> for Label {
    fn from(n: i64) -> Self {
        Label::Int(n)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(Label),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("{table} table has {found} entries, expected {expected}")]
    TableSize {
        table: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("conflicting product entries for ({0}, {1})")]
    ConflictingProduct(Label, Label),
    #[error("conflicting inverse entries for {0}")]
    ConflictingInverse(Label),
    #[error("malformed input: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalGroupError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("the subset does not contain the identity `{0}`")]
    IdentityNotInSubset(Label),
    #[error("index {0} is not a carrier element")]
    NotInCarrier(Elem),
}

/// The group a restriction was taken from, with the embedding of the carrier.
/// Kept for oracle checks only; it does not take part in equality.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub group: Arc<FiniteGroup>,
    pub embedding: Vec<Elem>,
}

#[derive(Clone, Debug)]
pub struct FiniteLocalGroup {
    labels: Vec<Label>,
    identity: Elem,
    product: Vec<Option<Elem>>,
    inverse: Vec<Option<Elem>>,
    ambient: Option<Ambient>,
}

impl PartialEq for FiniteLocalGroup {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.identity == other.identity
            && self.product == other.product
            && self.inverse == other.inverse
    }
}

impl Eq for FiniteLocalGroup {}

impl FiniteLocalGroup {
    /// Builds a local group from dense tables. Only the shape is validated;
    /// the axioms are checked separately by [`check_axioms`].
    pub fn from_tables(
        labels: Vec<Label>,
        identity: Elem,
        product: Vec<Option<Elem>>,
        inverse: Vec<Option<Elem>>,
    ) -> Result<Self, FormatError> {
        let n = labels.len();
        if n == 0 {
            return Err(FormatError::EmptyCarrier);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.to_string()) {
                return Err(FormatError::DuplicateLabel(l.clone()));
            }
        }
        if identity >= n {
            return Err(FormatError::IndexOutOfRange { index: identity, size: n });
        }
        if product.len() != n * n {
            return Err(FormatError::TableSize {
                table: "product",
                found: product.len(),
                expected: n * n,
            });
        }
        if inverse.len() != n {
            return Err(FormatError::TableSize {
                table: "inverse",
                found: inverse.len(),
                expected: n,
            });
        }
        for &z in product.iter().chain(inverse.iter()).flatten() {
            if z >= n {
                return Err(FormatError::IndexOutOfRange { index: z, size: n });
            }
        }
        Ok(FiniteLocalGroup {
            labels,
            identity,
            product,
            inverse,
            ambient: None,
        })
    }

    /// The one-element local group.
    pub fn trivial(label: Label) -> Self {
        FiniteLocalGroup {
            labels: vec![label],
            identity: 0,
            product: vec![Some(0)],
            inverse: vec![Some(0)],
            ambient: None,
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, x: Elem) -> &Label {
        &self.labels[x]
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.labels.len()
    }

    pub fn carrier(&self) -> Subset {
        self.elements().collect()
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.product[x * self.size() + y]
    }

    pub fn inv(&self, x: Elem) -> Option<Elem> {
        self.inverse[x]
    }

    pub fn product_table(&self) -> &[Option<Elem>] {
        &self.product
    }

    pub fn ambient(&self) -> Option<&Ambient> {
        self.ambient.as_ref()
    }

    pub(crate) fn with_ambient(mut self, ambient: Ambient) -> Self {
        self.ambient = Some(ambient);
        self
    }

    /// `Ω` as a list of pairs, row-major.
    pub fn omega(&self) -> Vec<(Elem, Elem)> {
        let n = self.size();
        (0..n * n)
            .filter(|&k| self.product[k].is_some())
            .map(|k| (k / n, k % n))
            .collect()
    }

    /// `Λ`, the domain of inversion.
    pub fn lambda(&self) -> Subset {
        self.elements().filter(|&x| self.inverse[x].is_some()).collect()
    }

    pub fn index_of(&self, text: &str) -> Option<Elem> {
        let text = text.trim();
        self.labels.iter().position(|l| l.to_string() == text)
    }

    /// Parses a comma-separated list of labels. The empty string is the empty word.
    pub fn parse_word(&self, csv: &str) -> Result<Vec<Elem>, FormatError> {
        if csv.trim().is_empty() {
            return Ok(Vec::new());
        }
        csv.split(',')
            .map(|t| {
                self.index_of(t)
                    .ok_or_else(|| FormatError::UnknownLabel(t.trim().to_string()))
            })
            .collect()
    }

    pub fn format_word(&self, w: &[Elem]) -> String {
        let parts: Vec<String> = w.iter().map(|&x| self.labels[x].to_string()).collect();
        format!("({})", parts.join(","))
    }

    pub fn format_set<'a>(&self, s: impl IntoIterator<Item = &'a Elem>) -> String {
        let parts: Vec<String> = s.into_iter().map(|&x| self.labels[x].to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let raw: LocalGroupJson =
            serde_json::from_str(text).map_err(|e| FormatError::Malformed(e.to_string()))?;
        raw.into_group()
    }

    /// Canonical JSON rendering; `from_json(to_json(g)) == g` and the text is stable.
    pub fn to_json(&self) -> String {
        let n = self.size();
        let mut product = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if let Some(z) = self.mul(x, y) {
                    product.push((
                        self.labels[x].clone(),
                        self.labels[y].clone(),
                        self.labels[z].clone(),
                    ));
                }
            }
        }
        let inverse = (0..n)
            .filter_map(|x| self.inv(x).map(|y| (self.labels[x].clone(), self.labels[y].clone())))
            .collect();
        let raw = LocalGroupJson {
            carrier: self.labels.clone(),
            identity: self.labels[self.identity].clone(),
            product,
            inverse,
        };
        serde_json::to_string(&raw).expect("local group json")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LocalGroupJson {
    carrier: Vec<Label>,
    identity: Label,
    #[serde(default)]
    product: Vec<(Label, Label, Label)>,
    #[serde(default)]
    inverse: Vec<(Label, Label)>,
}

impl LocalGroupJson {
    fn into_group(self) -> Result<FiniteLocalGroup, FormatError> {
        let n = self.carrier.len();
        let mut index: HashMap<&Label, Elem> = HashMap::new();
        for (i, l) in self.carrier.iter().enumerate() {
            if index.insert(l, i).is_some() {
                return Err(FormatError::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |l: &Label| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| FormatError::UnknownLabel(l.to_string()))
        };
        let identity = lookup(&self.identity)?;
        let mut product = vec![None; n * n];
        for (x, y, z) in &self.product {
            let (xi, yi, zi) = (lookup(x)?, lookup(y)?, lookup(z)?);
            match product[xi * n + yi] {
                Some(old) if old != zi => {
                    return Err(FormatError::ConflictingProduct(x.clone(), y.clone()))
                }
                _ => product[xi * n + yi] = Some(zi),
            }
        }
        let mut inverse = vec![None; n];
        for (x, y) in &self.inverse {
            let (xi, yi) = (lookup(x)?, lookup(y)?);
            match inverse[xi] {
                Some(old) if old != yi => return Err(FormatError::ConflictingInverse(x.clone())),
                _ => inverse[xi] = Some(yi),
            }
        }
        FiniteLocalGroup::from_tables(self.carrier, identity, product, inverse)
    }
}

impl LocalGroup for FiniteLocalGroup {
    type Elem = Elem;

    fn identity(&self) -> Elem {
        self.identity
    }

    fn contains(&self, x: &Elem) -> bool {
        *x < self.size()
    }

    fn product(&self, x: &Elem, y: &Elem) -> Option<Elem> {
        self.mul(*x, *y)
    }

    fn inverse(&self, x: &Elem) -> Option<Elem> {
        self.inv(*x)
    }

    fn factorizations(&self, z: &Elem) -> Option<Vec<(Elem, Elem)>> {
        Some(
            self.omega()
                .into_iter()
                .filter(|&(a, b)| self.mul(a, b) == Some(*z))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    LeftIdentity,
    RightIdentity,
    InverseLaw,
    LocalAssociativity,
    Involution,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::LeftIdentity => "left-identity",
            Axiom::RightIdentity => "right-identity",
            Axiom::InverseLaw => "inverse-law",
            Axiom::LocalAssociativity => "local-associativity",
            Axiom::Involution => "involution",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

/// Checks identity laws, inverse laws, local associativity and the
/// involution law. Every violated instance is reported with its elements.
pub fn check_axioms(g: &FiniteLocalGroup) -> AxiomReport {
    let mut violations = Vec::new();
    let one = g.identity();
    for x in g.elements() {
        if g.mul(one, x) != Some(x) {
            violations.push(Violation { axiom: Axiom::LeftIdentity, witness: vec![x] });
        }
        if g.mul(x, one) != Some(x) {
            violations.push(Violation { axiom: Axiom::RightIdentity, witness: vec![x] });
        }
    }
    for x in g.elements() {
        let Some(xi) = g.inv(x) else { continue };
        if g.mul(x, xi) != Some(one) || g.mul(xi, x) != Some(one) {
            violations.push(Violation { axiom: Axiom::InverseLaw, witness: vec![x, xi] });
        }
        if let Some(xii) = g.inv(xi) {
            if xii != x {
                violations.push(Violation { axiom: Axiom::Involution, witness: vec![x, xi] });
            }
        }
    }
    for (x, y) in g.omega() {
        let xy = g.mul(x, y).unwrap();
        for z in g.elements() {
            let (Some(yz), Some(left)) = (g.mul(y, z), g.mul(xy, z)) else { continue };
            if let Some(right) = g.mul(x, yz) {
                if left != right {
                    violations.push(Violation {
                        axiom: Axiom::LocalAssociativity,
                        witness: vec![x, y, z],
                    });
                }
            }
        }
    }
    AxiomReport { violations }
}

/// `X_s = {x ∈ X ∩ Λ : x⁻¹ ∈ X ∩ Λ}`.
pub fn symmetrize(g: &FiniteLocalGroup, x: &Subset) -> Subset {
    x.iter()
        .copied()
        .filter(|&a| match g.inv(a) {
            Some(ai) => x.contains(&ai) && g.inv(ai).is_some(),
            None => false,
        })
        .collect()
}

pub fn is_symmetric(g: &FiniteLocalGroup, x: &Subset) -> bool {
    symmetrize(g, x) == *x
}

/// `G|U`: products kept when they land in `U`, inverses kept when they land in `U`.
/// The carrier of the result lists `U` in index order.
pub fn restrict(g: &FiniteLocalGroup, u: &Subset) -> Result<FiniteLocalGroup, LocalGroupError> {
    if let Some(&bad) = u.iter().find(|&&x| x >= g.size()) {
        return Err(LocalGroupError::NotInCarrier(bad));
    }
    if !u.contains(&g.identity()) {
        return Err(LocalGroupError::IdentityNotInSubset(g.label(g.identity()).clone()));
    }
    let members: Vec<Elem> = u.iter().copied().collect();
    let mut new_index = vec![usize::MAX; g.size()];
    for (i, &x) in members.iter().enumerate() {
        new_index[x] = i;
    }
    let m = members.len();
    let mut product = vec![None; m * m];
    for (i, &x) in members.iter().enumerate() {
        for (j, &y) in members.iter().enumerate() {
            if let Some(z) = g.mul(x, y) {
                if u.contains(&z) {
                    product[i * m + j] = Some(new_index[z]);
                }
            }
        }
    }
    let inverse = members
        .iter()
        .map(|&x| g.inv(x).filter(|xi| u.contains(xi)).map(|xi| new_index[xi]))
        .collect();
    let labels = members.iter().map(|&x| g.label(x).clone()).collect();
    let out = FiniteLocalGroup::from_tables(labels, new_index[g.identity()], product, inverse)?;
    Ok(match &g.ambient {
        Some(a) => out.with_ambient(Ambient {
            group: a.group.clone(),
            embedding: members.iter().map(|&x| a.embedding[x]).collect(),
        }),
        None => out,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeatVerdict {
    Neat,
    /// `Λ` misses this element.
    NotSymmetric(Elem),
    /// `(x, y) ∈ Ω` but `(xy, y⁻¹) ∉ Ω`.
    PairFails(Elem, Elem),
}

impl NeatVerdict {
    pub fn is_neat(&self) -> bool {
        matches!(self, NeatVerdict::Neat)
    }
}

pub fn is_neat(g: &FiniteLocalGroup) -> NeatVerdict {
    if let Some(x) = g.elements().find(|&x| g.inv(x).is_none()) {
        return NeatVerdict::NotSymmetric(x);
    }
    for (x, y) in g.omega() {
        let xy = g.mul(x, y).unwrap();
        let yi = g.inv(y).unwrap();
        if g.mul(xy, yi).is_none() {
            return NeatVerdict::PairFails(x, y);
        }
    }
    NeatVerdict::Neat
}

/// `H|U` for a group `H`, tagged with `H` for oracle use.
pub fn from_group_restriction(
    h: &FiniteGroup,
    u: &Subset,
) -> Result<FiniteLocalGroup, LocalGroupError> {
    let full = h.as_local_group().with_ambient(Ambient {
        group: Arc::new(h.clone()),
        embedding: (0..h.order()).collect(),
    });
    restrict(&full, u)
}

/// Checks the morphism laws for `f: G → H` given as an image table:
/// `f(1) = 1`, `(x, y) ∈ Ω_G ⇒ (fx, fy) ∈ Ω_H` with `f(xy) = f(x)f(y)`,
/// and `x ∈ Λ_G ⇒ f(x) ∈ Λ_H` with `f(x⁻¹) = f(x)⁻¹`.
/// Returns the first violated instance.
pub fn check_morphism(
    g: &FiniteLocalGroup,
    h: &FiniteLocalGroup,
    images: &[Elem],
) -> Result<(), MorphismViolation> {
    if images.len() != g.size() {
        return Err(MorphismViolation::WrongArity { expected: g.size(), found: images.len() });
    }
    if let Some(&bad) = images.iter().find(|&&y| y >= h.size()) {
        return Err(MorphismViolation::OutOfRange(bad));
    }
    if images[g.identity()] != h.identity() {
        return Err(MorphismViolation::Identity);
    }
    for (x, y) in g.omega() {
        let xy = g.mul(x, y).unwrap();
        if h.mul(images[x], images[y]) != Some(images[xy]) {
            return Err(MorphismViolation::Product(x, y));
        }
    }
    for x in g.elements() {
        if let Some(xi) = g.inv(x) {
            if h.inv(images[x]) != Some(images[xi]) {
                return Err(MorphismViolation::Inverse(x));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismViolation {
    #[error("image table has {found} entries, expected {expected}")]
    WrongArity { expected: usize, found: usize },
    #[error("image index {0} is outside the target")]
    OutOfRange(Elem),
    #[error("identity is not mapped to identity")]
    Identity,
    #[error("product law fails on pair ({0}, {1})")]
    Product(Elem, Elem),
    #[error("inverse law fails at {0}")]
    Inverse(Elem),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(xs: &[Elem]) -> Subset {
        xs.iter().copied().collect()
    }

    #[test]
    fn c5arc_passes_axioms() {
        let g = fixtures::c5arc();
        assert!(check_axioms(&g).passed());
        assert_eq!(g.size(), 3);
    }

    #[test]
    fn bad_identity_is_reported() {
        // product(identity, a) = b
        let labels = vec![Label::from("e"), Label::from("a"), Label::from("b")];
        let mut product = vec![None; 9];
        product[0] = Some(0);
        product[1] = Some(2);
        product[2] = Some(2);
        product[3] = Some(1);
        product[6] = Some(2);
        let g = FiniteLocalGroup::from_tables(labels, 0, product, vec![Some(0), None, None])
            .unwrap();
        let report = check_axioms(&g);
        assert!(!report.passed());
        assert!(report
            .violations
            .contains(&Violation { axiom: Axiom::LeftIdentity, witness: vec![1] }));
    }

    #[test]
    fn inverse_outside_omega_is_reported() {
        let labels = vec![Label::from("e"), Label::from("a"), Label::from("b")];
        let mut product = vec![None; 9];
        for x in 0..3 {
            product[x] = Some(x);
            product[x * 3] = Some(x);
        }
        let g = FiniteLocalGroup::from_tables(labels, 0, product, vec![Some(0), Some(2), None])
            .unwrap();
        let report = check_axioms(&g);
        assert_eq!(
            report.violations,
            vec![Violation { axiom: Axiom::InverseLaw, witness: vec![1, 2] }]
        );
    }

    #[test]
    fn out_of_range_is_a_format_error() {
        let err = FiniteLocalGroup::from_tables(
            vec![Label::Int(0)],
            0,
            vec![Some(3)],
            vec![Some(0)],
        )
        .unwrap_err();
        assert_eq!(err, FormatError::IndexOutOfRange { index: 3, size: 1 });
        let err = FiniteLocalGroup::from_json(
            r#"{"carrier":[0],"identity":0,"product":[[0,0,7]],"inverse":[]}"#,
        )
        .unwrap_err();
        assert_eq!(err, FormatError::UnknownLabel("7".into()));
    }

    #[test]
    fn symmetrize_examples() {
        let z5 = FiniteGroup::cyclic(5).as_local_group();
        let u = set(&[0, 1, 2]);
        let g = restrict(&z5, &u).unwrap();
        assert_eq!(symmetrize(&g, &g.carrier()), set(&[0]));
        let c = fixtures::c5arc();
        assert_eq!(symmetrize(&c, &c.carrier()), c.carrier());
        assert_eq!(symmetrize(&c, &set(&[0])), set(&[0]));
    }

    #[test]
    fn restrict_examples() {
        let z5 = FiniteGroup::cyclic(5).as_local_group();
        let arc = restrict(&z5, &set(&[0, 1, 4])).unwrap();
        assert_eq!(arc, fixtures::c5arc());
        let mut omega = arc.omega();
        omega.sort();
        // (0,·), (·,0), (1,4), (4,1) in local indices 0,1,2
        assert_eq!(omega, vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]);
        assert_eq!(restrict(&arc, &arc.carrier()).unwrap(), arc);
        let t = restrict(&arc, &set(&[0])).unwrap();
        assert_eq!(t, FiniteLocalGroup::trivial(Label::Int(0)));
        assert!(matches!(
            restrict(&arc, &set(&[1])),
            Err(LocalGroupError::IdentityNotInSubset(_))
        ));
    }

    #[test]
    fn neatness_examples() {
        assert!(is_neat(&fixtures::c5arc()).is_neat());
        let z5 = FiniteGroup::cyclic(5).as_local_group();
        let g = restrict(&z5, &set(&[0, 1, 2])).unwrap();
        assert_eq!(is_neat(&g), NeatVerdict::NotSymmetric(1));
        // symmetric U with U×U ⊆ Ω
        let z7 = FiniteGroup::cyclic(7).as_local_group();
        let big = restrict(&z7, &set(&[0, 1, 2, 5, 6])).unwrap();
        let small = set(&[0, 1, 4]); // local indices of 0, 1, 6
        assert!(is_symmetric(&big, &small));
        assert!(is_neat(&restrict(&big, &small).unwrap()).is_neat());
    }

    #[test]
    fn group_restriction_examples() {
        let z5 = FiniteGroup::cyclic(5);
        assert_eq!(from_group_restriction(&z5, &set(&[0, 1, 4])).unwrap(), fixtures::c5arc());
        let full = from_group_restriction(&z5, &(0..5).collect()).unwrap();
        assert_eq!(full.omega().len(), 25);
        let z6arc = from_group_restriction(&FiniteGroup::cyclic(6), &set(&[0, 1, 5])).unwrap();
        let nontrivial: Vec<_> = z6arc
            .omega()
            .into_iter()
            .filter(|&(x, y)| x != 0 && y != 0)
            .map(|(x, y)| (z6arc.label(x).clone(), z6arc.label(y).clone()))
            .collect();
        assert_eq!(nontrivial, vec![(Label::Int(1), Label::Int(5)), (Label::Int(5), Label::Int(1))]);
        assert_eq!(z6arc.ambient().unwrap().embedding, vec![0, 1, 5]);
    }

    #[test]
    fn json_round_trip_is_stable() {
        let g = fixtures::c5arc();
        let text = g.to_json();
        assert_eq!(
            text,
            r#"{"carrier":[0,1,4],"identity":0,"product":[[0,0,0],[0,1,1],[0,4,4],[1,0,1],[1,4,0],[4,0,4],[4,1,0]],"inverse":[[0,0],[1,4],[4,1]]}"#
        );
        let back = FiniteLocalGroup::from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_json(), text);
    }
}
