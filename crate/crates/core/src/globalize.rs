//! The group `H` generated by a finite local group, as a finitely presented
//! group solved by a completed rewriting system.
//!
//! Symbols are the non-identity elements in index order, named by their
//! labels. An element `x` without an inverse in the table also gets a formal
//! inverse symbol `x^-1`, placed right after it. Relations are
//! `ι(x)ι(y) = ι(xy)` for every product pair of non-identity elements (with
//! `ι(1) = ε`), plus `x·x^-1 = x^-1·x = ε` for the formal inverses.

use thiserror::Error;

use crate::group::Group;
use crate::local::{check_axioms, is_symmetric, Elem, FiniteLocalGroup, MorphismViolation, Subset};
use crate::rewrite::{complete, Limits, RewriteError, RewriteSystem, Sym};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolRole {
    Generator(Elem),
    FormalInverse(Elem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub symbols: Vec<String>,
    pub roles: Vec<SymbolRole>,
    pub relations: Vec<(Vec<Sym>, Vec<Sym>)>,
    iota: Vec<Vec<Sym>>,
}

impl Presentation {
    /// `ι(x)`: the empty word for the identity, one symbol otherwise.
    pub fn iota(&self, x: Elem) -> &[Sym] {
        &self.iota[x]
    }

    /// Concatenated `ι`-images of a word over the carrier.
    pub fn word(&self, w: &[Elem]) -> Vec<Sym> {
        w.iter().flat_map(|&x| self.iota[x].iter().copied()).collect()
    }

    /// The formal inverse of a generator word.
    pub fn inverse_word(&self, g: &FiniteLocalGroup, w: &[Sym]) -> Vec<Sym> {
        w.iter()
            .rev()
            .flat_map(|&s| match self.roles[s] {
                SymbolRole::FormalInverse(x) => self.iota[x].clone(),
                SymbolRole::Generator(x) => match g.inv(x) {
                    Some(xi) => self.iota[xi].clone(),
                    None => vec![s + 1],
                },
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlobalizeError {
    #[error("the table fails the local group axioms ({0} violations)")]
    Axioms(usize),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("morphism law fails: {0}")]
    Morphism(#[from] MorphismViolation),
    #[error("extension does not respect rule {0}")]
    RuleNotRespected(usize),
    #[error("precondition fails: {0}")]
    Precondition(String),
}

pub fn present(g: &FiniteLocalGroup) -> Result<Presentation, GlobalizeError> {
    let report = check_axioms(g);
    if !report.passed() {
        return Err(GlobalizeError::Axioms(report.violations.len()));
    }
    let mut symbols = Vec::new();
    let mut roles = Vec::new();
    let mut iota = vec![Vec::new(); g.size()];
    for x in g.elements().filter(|&x| x != g.identity()) {
        iota[x] = vec![symbols.len()];
        symbols.push(g.label(x).to_string());
        roles.push(SymbolRole::Generator(x));
        if g.inv(x).is_none() {
            symbols.push(format!("{}^-1", g.label(x)));
            roles.push(SymbolRole::FormalInverse(x));
        }
    }
    let mut relations = Vec::new();
    for (x, y) in g.omega() {
        if x == g.identity() || y == g.identity() {
            continue;
        }
        let mut lhs = iota[x].clone();
        lhs.extend_from_slice(&iota[y]);
        relations.push((lhs, iota[g.mul(x, y).unwrap()].clone()));
    }
    for (s, role) in roles.iter().enumerate() {
        if let SymbolRole::FormalInverse(_) = role {
            relations.push((vec![s - 1, s], vec![]));
            relations.push((vec![s, s - 1], vec![]));
        }
    }
    Ok(Presentation { symbols, roles, relations, iota })
}

/// A presentation together with its completed rewriting system.
#[derive(Debug, Clone)]
pub struct Globalization {
    pub presentation: Presentation,
    pub system: RewriteSystem,
}

pub fn globalize(g: &FiniteLocalGroup, limits: Limits) -> Result<Globalization, GlobalizeError> {
    let presentation = present(g)?;
    let system = complete(presentation.symbols.clone(), &presentation.relations, limits)?;
    Ok(Globalization { presentation, system })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IotaVerdict {
    Pass,
    NotInjective(Elem, Elem),
    IdentityNotTrivial,
    InverseFails(Elem),
    ProductFails(Elem, Elem),
}

impl Globalization {
    /// Reuses a previously completed system; its symbols must match.
    pub fn with_system(g: &FiniteLocalGroup, system: RewriteSystem) -> Result<Self, GlobalizeError> {
        let presentation = present(g)?;
        if presentation.symbols != system.symbols() {
            return Err(GlobalizeError::Precondition("rewriting system symbols do not match the table".into()));
        }
        Ok(Globalization { presentation, system })
    }

    pub fn nf(&self, w: &[Sym]) -> Result<Vec<Sym>, GlobalizeError> {
        Ok(self.system.normal_form(w)?)
    }

    fn nf_of(&self, parts: &[&[Sym]]) -> Result<Vec<Sym>, GlobalizeError> {
        self.nf(&parts.concat())
    }

    pub fn verify_iota(&self, g: &FiniteLocalGroup) -> Result<IotaVerdict, GlobalizeError> {
        let p = &self.presentation;
        if !self.nf(p.iota(g.identity()))?.is_empty() {
            return Ok(IotaVerdict::IdentityNotTrivial);
        }
        let images: Vec<Vec<Sym>> = g.elements().map(|x| self.nf(p.iota(x))).collect::<Result<_, _>>()?;
        for x in g.elements() {
            for y in x + 1..g.size() {
                if images[x] == images[y] {
                    return Ok(IotaVerdict::NotInjective(x, y));
                }
            }
        }
        for x in g.elements() {
            if let Some(xi) = g.inv(x) {
                if !self.nf_of(&[p.iota(x), p.iota(xi)])?.is_empty() || !self.nf_of(&[p.iota(xi), p.iota(x)])?.is_empty() {
                    return Ok(IotaVerdict::InverseFails(x));
                }
            }
        }
        for (x, y) in g.omega() {
            let xy = g.mul(x, y).unwrap();
            if self.nf_of(&[p.iota(x), p.iota(y)])? != images[xy] {
                return Ok(IotaVerdict::ProductFails(x, y));
            }
        }
        Ok(IotaVerdict::Pass)
    }

    /// For symmetric `U` with `U × U ⊆ Ω`: the product of `ι(x)ι(y)` in `H`
    /// lies in `ι(U)` exactly when `xy ∈ U`, and is then `ι(xy)`. Returns the
    /// first failing pair.
    pub fn check_local_equality(&self, g: &FiniteLocalGroup, u: &Subset) -> Result<Option<(Elem, Elem)>, GlobalizeError> {
        if !u.contains(&g.identity()) || u.iter().any(|&x| x >= g.size()) {
            return Err(GlobalizeError::Precondition("U must contain the identity and lie in the carrier".into()));
        }
        if !is_symmetric(g, u) {
            return Err(GlobalizeError::Precondition("U is not symmetric".into()));
        }
        for &x in u {
            for &y in u {
                if g.mul(x, y).is_none() {
                    return Err(GlobalizeError::Precondition(format!(
                        "({}, {}) is not in the product domain",
                        g.label(x),
                        g.label(y)
                    )));
                }
            }
        }
        let p = &self.presentation;
        let images: Vec<(Elem, Vec<Sym>)> =
            u.iter().map(|&z| Ok((z, self.nf(p.iota(z))?))).collect::<Result<_, GlobalizeError>>()?;
        for &x in u {
            for &y in u {
                let h = self.nf_of(&[p.iota(x), p.iota(y)])?;
                let in_h = images.iter().find(|(_, w)| *w == h).map(|(z, _)| *z);
                let xy = g.mul(x, y).unwrap();
                let in_g = u.contains(&xy).then_some(xy);
                if in_h != in_g {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    /// `H` itself as a group on normal forms. Needs a complete system.
    pub fn group<'a>(&'a self, g: &'a FiniteLocalGroup) -> Result<HGroup<'a>, GlobalizeError> {
        if !self.system.is_complete() {
            return Err(RewriteError::Incomplete.into());
        }
        Ok(HGroup { glob: self, table: g })
    }
}

/// `H` with normal-form words as elements.
#[derive(Debug, Clone, Copy)]
pub struct HGroup<'a> {
    glob: &'a Globalization,
    table: &'a FiniteLocalGroup,
}

impl Group for HGroup<'_> {
    type Elem = Vec<Sym>;

    fn identity(&self) -> Vec<Sym> {
        Vec::new()
    }

    fn mul(&self, a: &Vec<Sym>, b: &Vec<Sym>) -> Vec<Sym> {
        self.glob.system.reduce(&[a.as_slice(), b.as_slice()].concat())
    }

    fn inv(&self, a: &Vec<Sym>) -> Vec<Sym> {
        self.glob.system.reduce(&self.glob.presentation.inverse_word(self.table, a))
    }
}

/// A local group morphism `G → L` into a group, as images of the carrier.
#[derive(Debug, Clone)]
pub struct MorphismSpec<T: Group> {
    pub target: T,
    pub images: Vec<T::Elem>,
}

/// `φ̃: H → L`, evaluated on generator words.
#[derive(Debug, Clone)]
pub struct Extension<T: Group> {
    target: T,
    symbol_images: Vec<T::Elem>,
}

impl<T: Group> Extension<T> {
    pub fn eval(&self, w: &[Sym]) -> T::Elem {
        w.iter()
            .fold(self.target.identity(), |acc, &s| self.target.mul(&acc, &self.symbol_images[s]))
    }

    pub fn in_kernel(&self, w: &[Sym]) -> bool {
        self.eval(w) == self.target.identity()
    }

    pub fn target(&self) -> &T {
        &self.target
    }
}

/// Checks the morphism laws for `m`, extends it to the generators, and checks
/// that the extension respects every rewriting rule, so it is well defined on `H`.
pub fn extend_morphism<T: Group>(
    g: &FiniteLocalGroup,
    glob: &Globalization,
    m: MorphismSpec<T>,
) -> Result<Extension<T>, GlobalizeError> {
    let t = &m.target;
    if m.images.len() != g.size() {
        return Err(MorphismViolation::WrongArity { expected: g.size(), found: m.images.len() }.into());
    }
    if m.images[g.identity()] != t.identity() {
        return Err(MorphismViolation::Identity.into());
    }
    for (x, y) in g.omega() {
        if t.mul(&m.images[x], &m.images[y]) != m.images[g.mul(x, y).unwrap()] {
            return Err(MorphismViolation::Product(x, y).into());
        }
    }
    for x in g.elements() {
        if let Some(xi) = g.inv(x) {
            if t.inv(&m.images[x]) != m.images[xi] {
                return Err(MorphismViolation::Inverse(x).into());
            }
        }
    }
    let symbol_images = glob
        .presentation
        .roles
        .iter()
        .map(|role| match role {
            SymbolRole::Generator(x) => m.images[*x].clone(),
            SymbolRole::FormalInverse(x) => t.inv(&m.images[*x]),
        })
        .collect();
    let ext = Extension { target: m.target, symbol_images };
    for (k, rule) in glob.system.rules().iter().enumerate() {
        if ext.eval(&rule.lhs) != ext.eval(&rule.rhs) {
            return Err(GlobalizeError::RuleNotRespected(k));
        }
    }
    Ok(ext)
}
