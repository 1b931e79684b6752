//! The shrinking construction `V_l = ⋂_{k ≤ l} φᵏ(V)` and the structure
//! pipeline on instances. Everything here is ball arithmetic: images and
//! preimages of balls under the family maps are balls, so each `V_l` is
//! computed exactly.

use std::fmt::Write as _;

use serde::Serialize;

use crate::contractive::{
    check_pseudo_automorphism_instance, cofinal_balls, contractive_implies_assoc_instance, overall, Check,
    ContractiveError, InstanceCheckConfig, Verdict,
};
use crate::instances::{BallSet, EndoSpec, InstanceSpec};

/// Iteration cap for searches over `l` or `n`. Valid maps contract by at
/// least a fixed ratio, so real instances stop far below it.
const SEARCH_CAP: i64 = 4096;

/// `V_l`, exactly. Preimages `φᵏ(V)` for `k < 0` grow until they cover the
/// carrier, after which they no longer affect the intersection.
pub fn v_l(spec: &InstanceSpec, endo: &EndoSpec, v: &BallSet, l: i64) -> Result<BallSet, ContractiveError> {
    let carrier = spec.carrier_ball();
    let mut acc = carrier.clone();
    let mut k = l;
    loop {
        let image = spec.ball_power_image(endo, v, k)?;
        acc = spec.intersect_balls(&acc, &image);
        if k < 0 && image == carrier {
            return Ok(acc);
        }
        if l - k > SEARCH_CAP {
            return Err(ContractiveError::Precondition("preimages of V never cover the carrier".into()));
        }
        k -= 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShrinkLevel {
    pub l: i64,
    pub ball: BallSet,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShrinkReport {
    pub v: BallSet,
    pub u: BallSet,
    /// Levels from the first one equal to the carrier up to `l_max`.
    pub levels: Vec<ShrinkLevel>,
    pub properties: Vec<Check>,
    pub conclusions: Vec<Check>,
}

impl ShrinkReport {
    pub fn verdict(&self) -> Verdict {
        overall(&self.properties).and(overall(&self.conclusions))
    }
}

/// [`shrink_neighborhood_with`] with `l_max = 6` and eight target balls.
pub fn shrink_neighborhood(spec: &InstanceSpec, endo: &EndoSpec, v: &BallSet) -> Result<ShrinkReport, ContractiveError> {
    shrink_neighborhood_with(spec, endo, v, 6, 8)
}

/// Computes `V_l` for `l` from the first level covering the carrier up to
/// `l_max`, checks the four properties of the family, and returns
/// `U = interior(V_0)` with its conclusions. The neighborhood-base property
/// is checked against the first `targets` balls of the cofinal family.
pub fn shrink_neighborhood_with(
    spec: &InstanceSpec,
    endo: &EndoSpec,
    v: &BallSet,
    l_max: i64,
    targets: usize,
) -> Result<ShrinkReport, ContractiveError> {
    spec.validate()?;
    spec.validate_endo(endo)?;
    spec.validate_ball(v)?;
    let carrier = spec.carrier_ball();
    if !spec.ball_is_compact(v) {
        return Err(ContractiveError::Precondition("V must be a closed ball".into()));
    }
    if !spec.ball_subset(v, &carrier) {
        return Err(ContractiveError::Precondition("V must lie in the carrier".into()));
    }

    let mut l_cover = 0;
    while v_l(spec, endo, v, l_cover)? != carrier {
        l_cover -= 1;
        if -l_cover > SEARCH_CAP {
            return Err(ContractiveError::Precondition("the family V_l never covers the carrier".into()));
        }
    }
    let l_max = l_max.max(1);
    let levels = (l_cover..=l_max)
        .map(|l| {
            let ball = v_l(spec, endo, v, l)?;
            Ok(ShrinkLevel { l, description: spec.describe_ball(&ball), ball })
        })
        .collect::<Result<Vec<_>, ContractiveError>>()?;

    let mut nesting = None;
    let mut forward = None;
    for pair in levels.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if nesting.is_none() && !spec.ball_subset(&b.ball, &a.ball) {
            nesting = Some(b.l);
        }
        if forward.is_none() && !spec.ball_subset(&spec.ball_power_image(endo, &a.ball, 1)?, &b.ball) {
            forward = Some(a.l);
        }
    }
    let range = format!("l in [{l_cover}, {l_max}]");
    let mut properties = vec![
        Check::new("symmetric", Verdict::Pass, "every V_l is a ball about the identity"),
        match nesting {
            None => Check::new("nested", Verdict::Pass, format!("V_(l+1) in V_l for {range}")),
            Some(l) => Check::new("nested", Verdict::Fail, format!("V_{l} is not inside V_{}", l - 1)),
        },
        match forward {
            None => Check::new("forward", Verdict::Pass, format!("phi(V_l) in V_(l+1) for {range}")),
            Some(l) => Check::new("forward", Verdict::Fail, format!("phi(V_{l}) is not inside V_{}", l + 1)),
        },
        Check::new("cover", Verdict::Pass, format!("V_l is the carrier for l <= {l_cover}")),
    ];

    let mut entry = Vec::new();
    let mut base = Verdict::Pass;
    for x in cofinal_balls(spec, targets) {
        let mut n = 0;
        while !spec.ball_subset(&spec.ball_power_image(endo, v, n)?, &x) {
            n += 1;
            if n > SEARCH_CAP {
                base = Verdict::Unknown;
                break;
            }
        }
        // V_n ⊆ φⁿ(V), so the same n serves for the base property
        entry.push(format!("{}: n = {n}", spec.describe_ball(&x)));
    }
    properties.push(Check::new(
        "contracts-into-targets",
        base,
        format!("phi^n(V) inside each target ball of the shrinking family: {}", entry.join("; ")),
    ));
    properties.push(Check::new(
        "neighborhood-base",
        base,
        "every target ball contains some V_l, hence so does every ball around the identity",
    ));

    let v0 = levels.iter().find(|lv| lv.l == 0).expect("0 is in range").ball.clone();
    let u = spec.interior(&v0);
    let conclusions = vec![
        Check::new("U symmetric", Verdict::Pass, spec.describe_ball(&u)),
        if spec.ball_square_in_omega(&u) {
            Check::new("U x U in Omega", Verdict::Pass, "products of two elements of U are defined")
        } else {
            Check::new("U x U in Omega", Verdict::Fail, "V is too large for its square to lie in the domain")
        },
        if spec.ball_subset(&spec.ball_power_image(endo, &u, 1)?, &u) {
            Check::new("phi(U) in U", Verdict::Pass, spec.describe_ball(&spec.ball_power_image(endo, &u, 1)?))
        } else {
            Check::new("phi(U) in U", Verdict::Fail, "the image leaves U")
        },
        Check::new("phi injective on U", Verdict::Pass, "family maps are injective on the whole carrier"),
    ];
    Ok(ShrinkReport { v: v.clone(), u, levels, properties, conclusions })
}

/// The default `V` for the pipeline: closed balls of half the carrier size
/// on rational factors, the carrier on p-adic factors.
pub fn default_v(spec: &InstanceSpec) -> BallSet {
    match spec {
        InstanceSpec::Interval { radius } | InstanceSpec::Arc { width: radius } => {
            BallSet::Ball { radius: radius / crate::rational::int(2), closed: true }
        }
        InstanceSpec::Padic { e, .. } => BallSet::Padic { m: *e },
        InstanceSpec::Product { left, right } => BallSet::Product {
            left: Box::new(default_v(left)),
            right: Box::new(default_v(right)),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    Connected,
    TotallyDisconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub kind: FactorKind,
    pub family: String,
    /// Dimension of the connected factor; absent for totally disconnected ones.
    pub dimension: Option<u32>,
    pub map: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub name: String,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub instance: InstanceSpec,
    pub map: EndoSpec,
    pub stages: Vec<Stage>,
    /// Name of the stage that failed or could not be certified, if any.
    pub aborted: Option<String>,
    pub connected: Vec<Factor>,
    pub totally_disconnected: Vec<Factor>,
}

impl PipelineReport {
    pub fn verdict(&self) -> Verdict {
        self.stages.iter().fold(Verdict::Pass, |acc, s| acc.and(s.verdict))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.stages {
            let _ = writeln!(out, "[{}] {}", s.verdict, s.name);
            for c in &s.checks {
                let _ = writeln!(out, "    {}: {} ({})", c.name, c.verdict, c.detail);
            }
        }
        if let Some(stage) = &self.aborted {
            let _ = writeln!(out, "aborted at stage {stage}");
            return out;
        }
        let _ = writeln!(out, "factorization:");
        for f in self.connected.iter().chain(&self.totally_disconnected) {
            let kind = match f.kind {
                FactorKind::Connected => "connected",
                FactorKind::TotallyDisconnected => "totally disconnected",
            };
            let dim = f.dimension.map(|d| format!(", dimension {d}")).unwrap_or_default();
            let _ = writeln!(out, "    {kind}: {}{dim}, map {} ({})", f.family, f.map, f.note);
        }
        if self.connected.is_empty() {
            let _ = writeln!(out, "    connected factor: trivial");
        }
        if self.totally_disconnected.is_empty() {
            let _ = writeln!(out, "    totally disconnected factor: trivial");
        }
        out
    }
}

fn factors(spec: &InstanceSpec, endo: &EndoSpec, out: &mut (Vec<Factor>, Vec<Factor>)) {
    match (spec, endo) {
        (InstanceSpec::Product { left, right }, EndoSpec::Product { left: el, right: er }) => {
            factors(left, el, out);
            factors(right, er, out);
        }
        (InstanceSpec::Interval { radius }, EndoSpec::Scale { factor }) => out.0.push(Factor {
            kind: FactorKind::Connected,
            family: format!("interval of radius {}", crate::rational::format(radius)),
            dimension: Some(1),
            map: format!("x -> {} * x", crate::rational::format(factor)),
            note: "a neighborhood of 0 in the real line; the Lie identification is standard, not computed".into(),
        }),
        (InstanceSpec::Arc { width }, EndoSpec::Scale { factor }) => out.0.push(Factor {
            kind: FactorKind::Connected,
            family: format!("arc of width {}", crate::rational::format(width)),
            dimension: Some(1),
            map: format!("x -> {} * x", crate::rational::format(factor)),
            note: "a neighborhood of 0 in the circle group; the Lie identification is standard, not computed".into(),
        }),
        (InstanceSpec::Padic { p, e, .. }, EndoSpec::TimesP) => out.1.push(Factor {
            kind: FactorKind::TotallyDisconnected,
            family: format!("{p}^{e}Z_{p}"),
            dimension: None,
            map: format!("x -> {p} * x"),
            note: format!("an open subgroup of Z_{p} with a contractive map that is not surjective"),
        }),
        _ => {}
    }
}

/// Runs the stages in order and stops at the first one that does not pass.
/// The map is first validated, then `V` is shrunk to `U`, `G|U` is checked
/// for neatness and (on samples) associativity, and the instance is split
/// into connected and totally disconnected factors componentwise.
pub fn structure_pipeline(spec: &InstanceSpec, endo: &EndoSpec, seed: u64) -> Result<PipelineReport, ContractiveError> {
    spec.validate()?;
    spec.validate_endo(endo)?;
    let mut report = PipelineReport {
        instance: spec.clone(),
        map: endo.clone(),
        stages: Vec::new(),
        aborted: None,
        connected: Vec::new(),
        totally_disconnected: Vec::new(),
    };
    let push = |report: &mut PipelineReport, name: &str, checks: Vec<Check>| {
        let verdict = overall(&checks);
        report.stages.push(Stage { name: name.to_string(), verdict, checks });
        if verdict != Verdict::Pass {
            report.aborted = Some(name.to_string());
        }
        verdict == Verdict::Pass
    };

    let cfg = InstanceCheckConfig { seed, ..Default::default() };
    if !push(&mut report, "pseudo-automorphism", check_pseudo_automorphism_instance(spec, endo, &cfg)?) {
        return Ok(report);
    }

    let shrink = shrink_neighborhood(spec, endo, &default_v(spec))?;
    let mut checks = shrink.properties.clone();
    checks.extend(shrink.conclusions.clone());
    if !push(&mut report, "shrink", checks) {
        return Ok(report);
    }

    let restricted = spec.restrict_to_ball(&shrink.u)?;
    if !push(&mut report, "neatness", sampled_neatness(&restricted, seed, 400)) {
        return Ok(report);
    }

    let replay = contractive_implies_assoc_instance(&restricted, endo, 6, 300, seed)?;
    let assoc = if replay.passed() {
        Check::new(
            "global associativity",
            Verdict::Pass,
            format!(
                "{} sampled words single-valued; {} replayed through phi^m with m <= {}",
                300, replay.replayed, replay.max_shift
            ),
        )
    } else {
        Check::new("global associativity", Verdict::Fail, format!("{:?}", replay.report.witness))
    };
    if !push(&mut report, "associativity", vec![assoc]) {
        return Ok(report);
    }

    let mut split = (Vec::new(), Vec::new());
    factors(spec, endo, &mut split);
    report.connected = split.0;
    report.totally_disconnected = split.1;
    let detail = format!(
        "{} connected and {} totally disconnected factors, split componentwise",
        report.connected.len(),
        report.totally_disconnected.len()
    );
    push(&mut report, "factorization", vec![Check::new("split", Verdict::Pass, detail)]);
    Ok(report)
}

/// Inverses are total on these families; checks `(xy, y⁻¹) ∈ Ω` for sampled
/// `(x, y) ∈ Ω`. On additive balls `(x + y) − y = x` always lies in the ball.
fn sampled_neatness(spec: &InstanceSpec, seed: u64, samples: usize) -> Vec<Check> {
    let mut sampler = spec.sampler(seed);
    let mut pairs = 0;
    for _ in 0..samples {
        let x = sampler.point();
        let y = sampler.point();
        let Ok(Some(xy)) = spec.partial_product(&x, &y) else { continue };
        pairs += 1;
        let ok = spec
            .inverse(&y)
            .ok()
            .and_then(|yi| spec.partial_product(&xy, &yi).ok().flatten())
            .is_some_and(|back| back == x);
        if !ok {
            return vec![Check::new("neat", Verdict::Fail, format!("(xy, y^-1) undefined for x = {x}, y = {y}"))];
        }
    }
    vec![Check::new(
        "neat",
        Verdict::Pass,
        format!("inverses are total; (xy)y^-1 = x on {pairs} sampled pairs, and in general since the ball is symmetric"),
    )]
}
