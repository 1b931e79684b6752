//! Contractive endomorphisms: validation of the defining conditions, the
//! finite degeneracy theorem, preservation of bracketing values, the
//! associativity argument, and the kernel tower `D = ⋃ ker φ̃ⁿ`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::assoc::{check_global_assoc, check_global_assoc_sampled, sample_instance_words, AssocReport, AssocWitness};
use crate::globalize::{extend_morphism, Globalization, GlobalizeError, IotaVerdict, MorphismSpec};
use crate::instances::{BallSet, EndoSpec, InstanceError, InstanceSpec, Point};
use crate::local::{check_axioms, check_morphism, Elem, FiniteLocalGroup, Label, LocalGroup, MorphismViolation, Subset};
use crate::rewrite::Sym;
use crate::words::{eval_all, eval_some};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl Verdict {
    /// Fail dominates unknown, which dominates pass.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Unknown, _) | (_, Verdict::Unknown) => Verdict::Unknown,
            _ => Verdict::Pass,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Unknown => "unknown",
        })
    }
}

/// One named condition with its outcome and a certificate or witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, verdict: Verdict, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), verdict, detail: detail.into() }
    }
}

pub fn overall(checks: &[Check]) -> Verdict {
    checks.iter().fold(Verdict::Pass, |acc, c| acc.and(c.verdict))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractiveError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Globalize(#[from] GlobalizeError),
    #[error("precondition fails: {0}")]
    Precondition(String),
}

// ---- pseudo-automorphisms on finite tables ----

/// Morphism laws, injectivity on `u`, openness (automatic on discrete
/// carriers) and eventual identity on `u` within `budget` iterations.
pub fn check_pseudo_automorphism_finite(g: &FiniteLocalGroup, images: &[Elem], u: &Subset, budget: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    let morphism = check_morphism(g, g, images);
    checks.push(match &morphism {
        Ok(()) => Check::new("morphism", Verdict::Pass, "all product pairs and inverses respected"),
        Err(v) => Check::new("morphism", Verdict::Fail, v.to_string()),
    });
    if morphism.is_err() && images.len() != g.size() {
        return checks;
    }
    if !u.contains(&g.identity()) || u.iter().any(|&x| x >= g.size()) {
        checks.push(Check::new("neighborhood", Verdict::Fail, "U must contain the identity and lie in the carrier"));
        return checks;
    }
    let mut collision = None;
    for &x in u {
        for &y in u.range(x + 1..) {
            if images[x] == images[y] && collision.is_none() {
                collision = Some((x, y));
            }
        }
    }
    checks.push(match collision {
        None => Check::new("injective", Verdict::Pass, format!("exhaustive over {} elements", u.len())),
        Some((x, y)) => Check::new(
            "injective",
            Verdict::Fail,
            format!("{} and {} have the same image", g.label(x), g.label(y)),
        ),
    });
    checks.push(Check::new("open", Verdict::Pass, "automatic: the carrier is discrete"));
    checks.push(finite_contraction(g, images, u, budget));
    checks
}

fn finite_contraction(g: &FiniteLocalGroup, images: &[Elem], u: &Subset, budget: usize) -> Check {
    let one = g.identity();
    let mut worst = 0;
    for &x in u {
        let mut seen = vec![false; g.size()];
        let mut cur = x;
        let mut n = 0;
        while cur != one {
            if seen[cur] {
                return Check::new(
                    "contraction",
                    Verdict::Fail,
                    format!("the orbit of {} cycles without reaching the identity", g.label(x)),
                );
            }
            if n == budget {
                return Check::new(
                    "contraction",
                    Verdict::Unknown,
                    format!("budget {budget} exhausted at {}", g.label(x)),
                );
            }
            seen[cur] = true;
            cur = images[cur];
            n += 1;
        }
        worst = worst.max(n);
    }
    Check::new("contraction", Verdict::Pass, format!("every orbit reaches the identity within {worst} steps"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degeneracy {
    /// All hypotheses hold and the carrier is `{1}`.
    Consistent,
    NotMorphism(MorphismViolation),
    NotInjective(Elem, Elem),
    NotContracting(Elem),
    /// All hypotheses hold on a nontrivial carrier. Never produced for valid
    /// input; kept so that a failure would be reported rather than hidden.
    Counterexample,
}

/// An injective morphism of a finite local group whose iterates send every
/// element to the identity forces the carrier to be trivial: `φⁿ` is
/// injective and fixes `1`. Reports which hypothesis fails otherwise.
pub fn finite_contractive_degeneracy(g: &FiniteLocalGroup, images: &[Elem]) -> Degeneracy {
    if let Err(v) = check_morphism(g, g, images) {
        return Degeneracy::NotMorphism(v);
    }
    if let Some(d) = map_conditions(images, g.identity()) {
        return d;
    }
    if g.size() == 1 {
        Degeneracy::Consistent
    } else {
        Degeneracy::Counterexample
    }
}

/// The table-independent hypotheses: injectivity, then eventual identity.
fn map_conditions(images: &[Elem], one: Elem) -> Option<Degeneracy> {
    let n = images.len();
    for x in 0..n {
        for y in x + 1..n {
            if images[x] == images[y] {
                return Some(Degeneracy::NotInjective(x, y));
            }
        }
    }
    for x in 0..n {
        let mut cur = x;
        for _ in 0..n {
            cur = images[cur];
        }
        // after n steps every orbit is on its cycle
        if cur != one {
            return Some(Degeneracy::NotContracting(x));
        }
    }
    None
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DegeneracySearch {
    pub max_size: usize,
    /// Sizes whose tables were enumerated one by one.
    pub enumerated_up_to: usize,
    pub tables: u64,
    pub pairs_checked: u64,
    /// Identity-fixing self-maps examined per size, all sizes.
    pub maps: u64,
    /// Maps failing injectivity or eventual identity, which rules them out on every table of that size.
    pub maps_pruned: u64,
    pub counterexample: Option<(String, Vec<Elem>)>,
}

fn identity_fixing_maps(n: usize) -> Vec<Vec<Elem>> {
    // identity is 0
    let mut out = vec![vec![0]];
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..n).map(move |y| {
                    let mut m = m.clone();
                    m.push(y);
                    m
                })
            })
            .collect();
    }
    out
}

/// Calls `visit` on every table with identity `0` on `n` elements that
/// passes the axioms. Every finite local group is isomorphic to one of these.
pub fn for_each_local_group(n: usize, mut visit: impl FnMut(&FiniteLocalGroup)) -> u64 {
    let labels: Vec<Label> = (0..n as i64).map(Label::Int).collect();
    let free: Vec<(usize, usize)> = (1..n).flat_map(|x| (1..n).map(move |y| (x, y))).collect();
    let mut product = vec![None; n * n];
    for x in 0..n {
        product[x] = Some(x);
        product[x * n] = Some(x);
    }
    let mut count = 0;
    let mut choice = vec![0usize; free.len()];
    loop {
        for (k, &(x, y)) in free.iter().enumerate() {
            product[x * n + y] = (choice[k] > 0).then(|| choice[k] - 1);
        }
        for inverse in inverse_tables(n, &product) {
            let g = FiniteLocalGroup::from_tables(labels.clone(), 0, product.clone(), inverse).expect("well formed");
            if check_axioms(&g).passed() {
                count += 1;
                visit(&g);
            }
        }
        // odometer over n + 1 options per free entry
        let mut k = 0;
        loop {
            if k == free.len() {
                return count;
            }
            choice[k] += 1;
            if choice[k] <= n {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Inverse tables compatible with the inverse laws for `product`.
fn inverse_tables(n: usize, product: &[Option<Elem>]) -> Vec<Vec<Option<Elem>>> {
    let options: Vec<Vec<Option<Elem>>> = (0..n)
        .map(|x| {
            if x == 0 {
                return vec![Some(0)];
            }
            let mut o = vec![None];
            o.extend((1..n).filter(|&y| product[x * n + y] == Some(0) && product[y * n + x] == Some(0)).map(Some));
            o
        })
        .collect();
    let mut out = vec![Vec::new()];
    for opts in options {
        out = out
            .into_iter()
            .flat_map(|t| {
                opts.iter().map(move |&o| {
                    let mut t = t.clone();
                    t.push(o);
                    t
                })
            })
            .collect();
    }
    out
}

/// Exhaustive check that no table on at most `max_size` elements carries an
/// injective morphism with eventually trivial iterates, other than on `{1}`.
///
/// Sizes up to `enumerate_up_to` are enumerated table by table, each table
/// against every identity-fixing self-map. For every size the self-maps are
/// also screened against the table-independent hypotheses; a map failing
/// them fails on every table of that size, so only surviving maps would need
/// their tables enumerated.
pub fn search_degeneracy_counterexample(max_size: usize, enumerate_up_to: usize) -> DegeneracySearch {
    let mut report = DegeneracySearch { max_size, enumerated_up_to: enumerate_up_to.min(max_size), ..Default::default() };
    for n in 1..=max_size {
        let maps = identity_fixing_maps(n);
        let survivors: Vec<Vec<Elem>> = maps.iter().filter(|m| map_conditions(m, 0).is_none()).cloned().collect();
        report.maps += maps.len() as u64;
        report.maps_pruned += (maps.len() - survivors.len()) as u64;
        let enumerate = n <= enumerate_up_to || !survivors.is_empty();
        if !enumerate {
            continue;
        }
        let to_check = if n <= enumerate_up_to { &maps } else { &survivors };
        let mut pairs = 0u64;
        let mut found = None;
        let tables = for_each_local_group(n, |g| {
            for m in to_check {
                pairs += 1;
                if found.is_none() && finite_contractive_degeneracy(g, m) == Degeneracy::Counterexample {
                    found = Some((g.to_json(), m.clone()));
                }
            }
        });
        report.tables += tables;
        report.pairs_checked += pairs;
        if found.is_some() && report.counterexample.is_none() {
            report.counterexample = found;
        }
    }
    report
}

// ---- pseudo-automorphisms on instances ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceCheckConfig {
    /// Witness neighborhood; the carrier when `None`.
    pub u: Option<BallSet>,
    pub samples: usize,
    pub seed: u64,
    /// Maximum iterations per point and target ball.
    pub budget: usize,
    /// Number of balls in the cofinal target family.
    pub targets: usize,
}

impl Default for InstanceCheckConfig {
    fn default() -> Self {
        InstanceCheckConfig { u: None, samples: 200, seed: 0, budget: 256, targets: 8 }
    }
}

/// Balls shrinking to the identity: rational radii halved `j` times and
/// p-adic exponents raised by `j`, for `j = 1..=count`. Every ball around the
/// identity contains a member of the family.
pub fn cofinal_balls(spec: &InstanceSpec, count: usize) -> Vec<BallSet> {
    (1..=count).map(|j| shrink_ball(spec, &spec.carrier_ball(), j)).collect()
}

fn shrink_ball(spec: &InstanceSpec, ball: &BallSet, j: usize) -> BallSet {
    match (spec, ball) {
        (InstanceSpec::Product { left, right }, BallSet::Product { left: bl, right: br }) => BallSet::Product {
            left: Box::new(shrink_ball(left, bl, j)),
            right: Box::new(shrink_ball(right, br, j)),
        },
        (_, BallSet::Ball { radius, closed }) => BallSet::Ball {
            radius: radius / crate::rational::pow(&crate::rational::int(2), j as u32),
            closed: *closed,
        },
        (_, BallSet::Padic { m }) => BallSet::Padic { m: m + j },
        _ => ball.clone(),
    }
}

fn describe_endo(endo: &EndoSpec) -> String {
    match endo {
        EndoSpec::Scale { factor } => format!("x -> {} * x", crate::rational::format(factor)),
        EndoSpec::TimesP => "x -> p * x".to_string(),
        EndoSpec::Product { left, right } => format!("({}) x ({})", describe_endo(left), describe_endo(right)),
    }
}

/// The four conditions on an instance. Morphism laws and injectivity hold
/// for every valid family map (they are linear with nonzero factor, or a
/// digit shift) and are additionally spot-checked on samples. Openness is
/// certified by the exact image ball. Contraction is certified on sampled
/// points against the cofinal ball family; a point that does not enter a
/// target within the budget makes the verdict unknown.
pub fn check_pseudo_automorphism_instance(
    spec: &InstanceSpec,
    endo: &EndoSpec,
    cfg: &InstanceCheckConfig,
) -> Result<Vec<Check>, ContractiveError> {
    spec.validate()?;
    spec.validate_endo(endo)?;
    let u = match &cfg.u {
        Some(b) => spec.normalize_ball(b)?,
        None => spec.carrier_ball(),
    };
    let phi = spec.endo_fn(endo);
    let view = spec.as_local_group_view();
    let mut sampler = spec.sampler(cfg.seed);
    let points: Vec<Point> = (0..cfg.samples).map(|_| sampler.point_in(&u)).collect();
    let mut checks = Vec::new();

    let mut morphism_failure = None;
    if phi(&spec.identity()) != view.identity() && !is_zero_point(&phi(&spec.identity())) {
        morphism_failure = Some("identity is not fixed".to_string());
    }
    let mut pairs = 0;
    for (x, y) in points.iter().zip(points.iter().rev()) {
        if let Some(xy) = view.product(x, y) {
            pairs += 1;
            if view.product(&phi(x), &phi(y)).as_ref() != Some(&phi(&xy)) {
                morphism_failure.get_or_insert(format!("product law fails on ({x}, {y})"));
            }
        }
        if view.inverse(&phi(x)) != view.inverse(x).map(|xi| phi(&xi)) {
            morphism_failure.get_or_insert(format!("inverse law fails at {x}"));
        }
    }
    checks.push(match morphism_failure {
        None => Check::new(
            "morphism",
            Verdict::Pass,
            format!("{} is additive on every family; {pairs} sampled product pairs agree", describe_endo(endo)),
        ),
        Some(w) => Check::new("morphism", Verdict::Fail, w),
    });

    let mut images: Vec<&Point> = Vec::new();
    let mapped: Vec<Point> = points.iter().map(&phi).collect();
    let mut collision = None;
    for (x, fx) in points.iter().zip(&mapped) {
        if let Some(k) = images.iter().position(|&f| f == fx) {
            if points[k] != *x {
                collision = Some((points[k].clone(), x.clone()));
            }
        }
        images.push(fx);
    }
    checks.push(match collision {
        None => Check::new("injective", Verdict::Pass, "nonzero scaling and digit shifts are injective; samples agree"),
        Some((a, b)) => Check::new("injective", Verdict::Fail, format!("{a} and {b} collide")),
    });

    let image = spec.ball_power_image(endo, &u, 1)?;
    let carrier = spec.carrier_ball();
    let surjective = spec.ball_subset(&carrier, &spec.ball_power_image(endo, &carrier, 1)?);
    checks.push(Check::new(
        "open",
        Verdict::Pass,
        format!(
            "image of U is the ball {}; the map is {}surjective onto the carrier",
            spec.describe_ball(&image),
            if surjective { "" } else { "not " }
        ),
    ));

    checks.push(instance_contraction(spec, endo, &points, cfg)?);
    Ok(checks)
}

fn is_zero_point(x: &Point) -> bool {
    match x {
        Point::Rational(q) => num_traits::Zero::is_zero(q),
        Point::Padic(v) => v.is_zero(),
        Point::Pair(a, b) => is_zero_point(a) && is_zero_point(b),
    }
}

fn instance_contraction(
    spec: &InstanceSpec,
    endo: &EndoSpec,
    points: &[Point],
    cfg: &InstanceCheckConfig,
) -> Result<Check, ContractiveError> {
    let targets = cofinal_balls(spec, cfg.targets);
    for b in &targets {
        if !spec.ball_subset(&spec.ball_power_image(endo, b, 1)?, b) {
            return Ok(Check::new(
                "contraction",
                Verdict::Unknown,
                format!("target {} is not mapped into itself", spec.describe_ball(b)),
            ));
        }
    }
    let mut worst = 0;
    for x in points {
        for b in &targets {
            let mut cur = x.clone();
            let mut n = 0;
            while !spec.ball_contains(b, &cur)? {
                if n == cfg.budget {
                    return Ok(Check::new(
                        "contraction",
                        Verdict::Unknown,
                        format!("{x} did not enter {} within {} steps", spec.describe_ball(b), cfg.budget),
                    ));
                }
                cur = spec.apply_endo(endo, &cur, 1)?;
                n += 1;
            }
            worst = worst.max(n);
        }
    }
    Ok(Check::new(
        "contraction",
        Verdict::Pass,
        format!(
            "{} sampled points enter each of {} shrinking balls within {worst} steps and stay, since each ball is mapped into itself",
            points.len(),
            targets.len()
        ),
    ))
}

/// Least `n` with `φⁿ(x) ∈ pᵐℤ_p` for `φ = ·p`.
pub fn padic_entry_time(x: &crate::padic::PadicInt, m: usize) -> usize {
    let mut cur = x.clone();
    let mut n = 0;
    while cur.in_ball(m) != Ok(true) {
        cur = cur.shift(1);
        n += 1;
    }
    n
}

// ---- bracketing values under φ ----

/// For every `b` with `w ⤳ b`, checks `φ(w) ⤳ φ(b)`. Returns the number of
/// values checked, or the first value whose image is missing.
pub fn phi_preserves_eval<G: LocalGroup>(
    g: &G,
    phi: impl Fn(&G::Elem) -> G::Elem,
    w: &[G::Elem],
) -> Result<usize, G::Elem> {
    let values = eval_some(g, w);
    let image_word: Vec<G::Elem> = w.iter().map(&phi).collect();
    let image_values = eval_some(g, &image_word);
    for b in &values {
        if !image_values.contains(&phi(b)) {
            return Err(b.clone());
        }
    }
    Ok(values.len())
}

/// The associativity argument replayed on samples: each word is pushed by
/// `φᵐ` into the ball of radius `r/n` (where every bracketing is defined),
/// and all of its values must map to the single strong value there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocReplay {
    pub report: AssocReport<Point>,
    pub replayed: usize,
    pub max_shift: usize,
    pub failure: Option<Vec<Point>>,
}

impl AssocReplay {
    pub fn passed(&self) -> bool {
        self.report.passed() && self.failure.is_none()
    }
}

pub fn contractive_implies_assoc_instance(
    spec: &InstanceSpec,
    endo: &EndoSpec,
    max_len: usize,
    samples: usize,
    seed: u64,
) -> Result<AssocReplay, ContractiveError> {
    spec.validate_endo(endo)?;
    let view = spec.as_local_group_view();
    let words = sample_instance_words(spec, seed, samples, max_len);
    let report = check_global_assoc_sampled(&view, max_len, words.iter().cloned());
    let mut replayed = 0;
    let mut max_shift = 0;
    let mut failure = None;
    for w in &words {
        let values = eval_some(&view, w);
        if values.is_empty() {
            continue;
        }
        let strong = spec.shrunk_carrier_ball(w.len() as i64);
        let mut m = 0;
        let mut cur = w.clone();
        while !cur.iter().all(|x| spec.ball_contains(&strong, x) == Ok(true)) {
            cur = cur.iter().map(|x| spec.apply_endo(endo, x, 1)).collect::<Result<_, _>>()?;
            m += 1;
        }
        max_shift = max_shift.max(m);
        let ok = match eval_all(&view, &cur) {
            Some(v) => values.iter().all(|b| spec.apply_endo(endo, b, m).as_ref() == Ok(&v)),
            None => false,
        };
        if !ok && failure.is_none() {
            failure = Some(w.clone());
        }
        replayed += 1;
    }
    Ok(AssocReplay { report, replayed, max_shift, failure })
}

/// On a finite table the pseudo-automorphism hypotheses force the trivial
/// carrier, where associativity holds; the check still runs the exhaustive
/// associativity test and returns the hypothesis checks alongside it.
pub fn contractive_implies_assoc_finite(
    g: &FiniteLocalGroup,
    images: &[Elem],
    max_len: usize,
) -> (Vec<Check>, AssocReport<Elem>) {
    let checks = check_pseudo_automorphism_finite(g, images, &g.carrier(), g.size());
    (checks, check_global_assoc(g, max_len))
}

/// A two-valued word, if the sampled check found one.
pub fn witness_of(r: &AssocReplay) -> Option<&AssocWitness<Point>> {
    r.report.witness.as_ref()
}

// ---- kernel tower ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// `φ̃ⁿ(w) = 1` at this `n`.
    Member(usize),
    NonMember(&'static str),
    Unknown,
}

/// `φ̃: H → H` for a local endomorphism `φ` of `G`, given by `ι ∘ φ`.
pub struct KernelTower<'a> {
    glob: &'a Globalization,
    images: Vec<Elem>,
    ext: crate::globalize::Extension<crate::globalize::HGroup<'a>>,
    automorphism: bool,
    injective_on_g: bool,
}

impl<'a> KernelTower<'a> {
    pub fn new(g: &'a FiniteLocalGroup, glob: &'a Globalization, images: &[Elem]) -> Result<Self, ContractiveError> {
        check_morphism(g, g, images).map_err(GlobalizeError::from)?;
        let h = glob.group(g)?;
        let iota_images = images
            .iter()
            .map(|&y| glob.nf(glob.presentation.iota(y)))
            .collect::<Result<Vec<_>, _>>()?;
        let ext = extend_morphism(g, glob, MorphismSpec { target: h, images: iota_images })?;
        let injective_on_g = {
            let mut sorted = images.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            sorted.len() == images.len()
        };
        // a bijection whose inverse is also a morphism extends to an automorphism
        let automorphism = injective_on_g && {
            let mut inverse = vec![0; images.len()];
            for (x, &y) in images.iter().enumerate() {
                inverse[y] = x;
            }
            check_morphism(g, g, &inverse).is_ok()
        };
        let iota_ok = glob.verify_iota(g)? == IotaVerdict::Pass;
        Ok(KernelTower {
            glob,
            images: images.to_vec(),
            ext,
            automorphism,
            injective_on_g: injective_on_g && iota_ok,
        })
    }

    pub fn apply(&self, w: &[Sym]) -> Vec<Sym> {
        self.ext.eval(w)
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    /// Membership of `w` in `⋃_{n ≤ n_max} ker φ̃ⁿ`, with a certificate for
    /// non-membership when `φ̃` is an automorphism or `w` is an `ι`-image.
    pub fn membership(&self, g: &FiniteLocalGroup, w: &[Sym], n_max: usize) -> Result<Membership, ContractiveError> {
        let mut cur = self.glob.nf(w)?;
        for n in 0..=n_max {
            if cur.is_empty() {
                return Ok(Membership::Member(n));
            }
            if n < n_max {
                cur = self.apply(&cur);
            }
        }
        if self.automorphism {
            return Ok(Membership::NonMember("the extension is an automorphism, so its kernels are trivial"));
        }
        let w_nf = self.glob.nf(w)?;
        let is_iota_image = g.elements().any(|x| self.glob.nf(self.glob.presentation.iota(x)).ok().as_deref() == Some(&w_nf[..]));
        if is_iota_image && self.injective_on_g {
            return Ok(Membership::NonMember("a nontrivial image of G is never killed by an injective map"));
        }
        Ok(Membership::Unknown)
    }

    /// Whether `u` and `v` agree modulo `D`, i.e. `u⁻¹v ∈ D`.
    pub fn same_coset(&self, g: &FiniteLocalGroup, u: &[Sym], v: &[Sym], n_max: usize) -> Result<Membership, ContractiveError> {
        let mut w = self.glob.presentation.inverse_word(g, u);
        w.extend_from_slice(v);
        self.membership(g, &w, n_max)
    }
}
