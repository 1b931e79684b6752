//! Exact symbolic local groups on which contractive endomorphisms exist:
//! rational intervals, quarter-arcs of the circle, p-adic balls, and finite
//! products of these. All arithmetic is exact.
//!
//! Sampling policy: rationals are drawn as `n/d` with `d = b·j`, where `b` is
//! the denominator of the bounding radius and `j` is uniform in `1..=16`,
//! and `n` uniform over the integers keeping `|n/d|` inside the ball. p-adic
//! digits are uniform in `0..p`, with the leading digits forced to zero as
//! the ball requires. The generator is ChaCha8 seeded from a `u64`, so
//! samples are identical across platforms.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::local::{FiniteLocalGroup, Label, LocalGroup};
use crate::padic::{is_prime, PadicError, PadicInt};
use crate::rational::{self, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum InstanceSpec {
    /// `{x ∈ ℚ : |x| < radius}` with `x + y` defined when `|x + y| < radius`.
    Interval {
        #[serde(with = "rational::serde_str")]
        radius: Q,
    },
    /// Representatives in `(−width, width)` of `ℚ/ℤ`, `width ≤ 1/4`.
    Arc {
        #[serde(with = "rational::serde_str")]
        width: Q,
    },
    /// `pᵉℤ_p`, elements known modulo `p^precision`.
    Padic { p: u32, e: usize, precision: usize },
    Product {
        left: Box<InstanceSpec>,
        right: Box<InstanceSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "map", rename_all = "kebab-case")]
pub enum EndoSpec {
    /// `x ↦ factor·x` on intervals and arcs.
    Scale {
        #[serde(with = "rational::serde_str")]
        factor: Q,
    },
    /// `x ↦ p·x` on p-adic balls.
    TimesP,
    Product {
        left: Box<EndoSpec>,
        right: Box<EndoSpec>,
    },
}

/// A symmetric neighborhood of the identity that is decidable exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum BallSet {
    /// `|x| < radius`, or `|x| ≤ radius` when closed.
    Ball {
        #[serde(with = "rational::serde_str")]
        radius: Q,
        closed: bool,
    },
    /// `pᵐℤ_p`.
    Padic { m: usize },
    Product {
        left: Box<BallSet>,
        right: Box<BallSet>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Rational(Q),
    Padic(PadicInt),
    Pair(Box<Point>, Box<Point>),
}

impl Point {
    pub fn pair(a: Point, b: Point) -> Point {
        Point::Pair(Box::new(a), Box::new(b))
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Point::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_padic(&self) -> Option<&PadicInt> {
        match self {
            Point::Padic(x) => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Rational(q) => f.write_str(&rational::format(q)),
            Point::Padic(x) => write!(f, "{x}"),
            Point::Pair(a, b) => write!(f, "<{a};{b}>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("invalid instance: {0}")]
    InvalidSpec(String),
    #[error("invalid endomorphism: {0}")]
    InvalidEndo(String),
    #[error("invalid ball: {0}")]
    InvalidBall(String),
    #[error("point {0} is not in the carrier")]
    NotInCarrier(String),
    #[error("point does not match the instance family")]
    FamilyMismatch,
    #[error(transparent)]
    Padic(#[from] PadicError),
}

const DENOMINATOR_SPREAD: i64 = 16;

fn small(q: &Q, what: &str) -> Result<(i64, i64), InstanceError> {
    let n = q.numer().to_i64();
    let d = q.denom().to_i64();
    match (n, d) {
        (Some(n), Some(d)) if n.abs() < i64::MAX / (4 * DENOMINATOR_SPREAD) && d < i64::MAX / (4 * DENOMINATOR_SPREAD) => {
            Ok((n, d))
        }
        _ => Err(InstanceError::InvalidSpec(format!("{what} {} is too large", rational::format(q)))),
    }
}

fn ball_le(a: (&Q, bool), b: (&Q, bool)) -> bool {
    // {|x| <(=) ra} ⊆ {|x| <(=) rb}
    a.0 < b.0 || (a.0 == b.0 && (!a.1 || b.1))
}

impl InstanceSpec {
    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let spec: InstanceSpec =
            serde_json::from_str(text).map_err(|e| InstanceError::InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance json")
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        match self {
            InstanceSpec::Interval { radius } => {
                if !radius.is_positive() {
                    return Err(InstanceError::InvalidSpec("radius must be positive".into()));
                }
                small(radius, "radius").map(|_| ())
            }
            InstanceSpec::Arc { width } => {
                if !width.is_positive() || *width > rational::q(1, 4) {
                    return Err(InstanceError::InvalidSpec("arc width must lie in (0, 1/4]".into()));
                }
                small(width, "width").map(|_| ())
            }
            InstanceSpec::Padic { p, e, precision } => {
                if !is_prime(*p) {
                    return Err(InstanceError::InvalidSpec(format!("{p} is not prime")));
                }
                if *precision == 0 {
                    return Err(InstanceError::InvalidSpec("precision must be at least 1".into()));
                }
                if e >= precision {
                    return Err(InstanceError::InvalidSpec(
                        "ball exponent must be below the precision".into(),
                    ));
                }
                Ok(())
            }
            InstanceSpec::Product { left, right } => {
                left.validate()?;
                right.validate()
            }
        }
    }

    pub fn identity(&self) -> Point {
        match self {
            InstanceSpec::Interval { .. } | InstanceSpec::Arc { .. } => Point::Rational(Q::zero()),
            InstanceSpec::Padic { p, precision, .. } => Point::Padic(PadicInt::zero(*p, *precision)),
            InstanceSpec::Product { left, right } => Point::pair(left.identity(), right.identity()),
        }
    }

    fn bound(&self) -> Option<&Q> {
        match self {
            InstanceSpec::Interval { radius } => Some(radius),
            InstanceSpec::Arc { width } => Some(width),
            _ => None,
        }
    }

    /// Carrier membership. A p-adic point whose membership would need digits
    /// it does not carry is reported as outside.
    pub fn contains(&self, x: &Point) -> bool {
        match (self, x) {
            (InstanceSpec::Padic { p, e, .. }, Point::Padic(v)) => {
                v.p() == *p && v.precision() > 0 && v.in_ball(*e) == Ok(true)
            }
            (InstanceSpec::Product { left, right }, Point::Pair(a, b)) => {
                left.contains(a) && right.contains(b)
            }
            (s, Point::Rational(q)) => match s.bound() {
                Some(r) => q.abs() < *r,
                None => false,
            },
            _ => false,
        }
    }

    fn require(&self, x: &Point) -> Result<(), InstanceError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(InstanceError::NotInCarrier(x.to_string()))
        }
    }

    /// `Some(x + y)` when `(x, y) ∈ Ω`, `None` when undefined. Exhausted
    /// p-adic precision is an error, not "undefined".
    pub fn partial_product(&self, x: &Point, y: &Point) -> Result<Option<Point>, InstanceError> {
        match (self, x, y) {
            (InstanceSpec::Padic { .. }, Point::Padic(a), Point::Padic(b)) => {
                // precision checks come first so that k = 0 surfaces as an error
                let s = a.add(b)?;
                self.require(x)?;
                self.require(y)?;
                Ok(Some(Point::Padic(s)))
            }
            (InstanceSpec::Product { left, right }, Point::Pair(a1, a2), Point::Pair(b1, b2)) => {
                let l = left.partial_product(a1, b1)?;
                let r = right.partial_product(a2, b2)?;
                Ok(l.zip(r).map(|(l, r)| Point::pair(l, r)))
            }
            (s, Point::Rational(a), Point::Rational(b)) if s.bound().is_some() => {
                self.require(x)?;
                self.require(y)?;
                let sum = a + b;
                Ok((sum.abs() < *s.bound().unwrap()).then_some(Point::Rational(sum)))
            }
            _ => Err(InstanceError::FamilyMismatch),
        }
    }

    /// Inversion is total on every family.
    pub fn inverse(&self, x: &Point) -> Result<Point, InstanceError> {
        self.require(x)?;
        Ok(match x {
            Point::Rational(q) => Point::Rational(-q),
            Point::Padic(v) => Point::Padic(v.neg()?),
            Point::Pair(a, b) => match self {
                InstanceSpec::Product { left, right } => {
                    Point::pair(left.inverse(a)?, right.inverse(b)?)
                }
                _ => return Err(InstanceError::FamilyMismatch),
            },
        })
    }

    pub fn validate_endo(&self, endo: &EndoSpec) -> Result<(), InstanceError> {
        match (self, endo) {
            (InstanceSpec::Interval { .. } | InstanceSpec::Arc { .. }, EndoSpec::Scale { factor }) => {
                if factor.is_zero() || factor.abs() >= Q::one() {
                    return Err(InstanceError::InvalidEndo("scale factor must satisfy 0 < |s| < 1".into()));
                }
                Ok(())
            }
            (InstanceSpec::Padic { .. }, EndoSpec::TimesP) => Ok(()),
            (InstanceSpec::Product { left, right }, EndoSpec::Product { left: el, right: er }) => {
                left.validate_endo(el)?;
                right.validate_endo(er)
            }
            _ => Err(InstanceError::InvalidEndo("map does not fit the instance family".into())),
        }
    }

    fn endo_once(endo: &EndoSpec, x: &Point) -> Result<Point, InstanceError> {
        Ok(match (endo, x) {
            (EndoSpec::Scale { factor }, Point::Rational(q)) => Point::Rational(factor * q),
            (EndoSpec::TimesP, Point::Padic(v)) => Point::Padic(v.shift(1)),
            (EndoSpec::Product { left, right }, Point::Pair(a, b)) => {
                Point::pair(Self::endo_once(left, a)?, Self::endo_once(right, b)?)
            }
            _ => return Err(InstanceError::FamilyMismatch),
        })
    }

    /// `φⁿ(x)`, exactly. For p-adics each step prepends a zero digit.
    pub fn apply_endo(&self, endo: &EndoSpec, x: &Point, n: usize) -> Result<Point, InstanceError> {
        self.validate_endo(endo)?;
        self.require(x)?;
        let mut cur = x.clone();
        for _ in 0..n {
            cur = Self::endo_once(endo, &cur)?;
        }
        Ok(cur)
    }

    /// `φ` as a plain function; panics on points outside the family, so
    /// callers validate first.
    pub fn endo_fn<'a>(&'a self, endo: &'a EndoSpec) -> impl Fn(&Point) -> Point + 'a {
        move |x| Self::endo_once(endo, x).expect("endomorphism applied to a foreign point")
    }

    pub fn as_local_group_view(&self) -> InstanceView<'_> {
        InstanceView { spec: self }
    }

    pub fn sampler(&self, seed: u64) -> Sampler<'_> {
        Sampler { spec: self, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// `n` deterministic carrier points.
    pub fn sample(&self, seed: u64, n: usize) -> Vec<Point> {
        let mut s = self.sampler(seed);
        (0..n).map(|_| s.point()).collect()
    }

    // ---- balls ----

    /// The carrier itself as a ball.
    pub fn carrier_ball(&self) -> BallSet {
        match self {
            InstanceSpec::Interval { radius } => BallSet::Ball { radius: radius.clone(), closed: false },
            InstanceSpec::Arc { width } => BallSet::Ball { radius: width.clone(), closed: false },
            InstanceSpec::Padic { e, .. } => BallSet::Padic { m: *e },
            InstanceSpec::Product { left, right } => BallSet::Product {
                left: Box::new(left.carrier_ball()),
                right: Box::new(right.carrier_ball()),
            },
        }
    }

    /// The carrier with rational radii divided by `divisor`; p-adic factors
    /// are unchanged since they are already closed under addition.
    pub fn shrunk_carrier_ball(&self, divisor: i64) -> BallSet {
        match self {
            InstanceSpec::Interval { radius } | InstanceSpec::Arc { width: radius } => BallSet::Ball {
                radius: radius / rational::int(divisor.max(1)),
                closed: false,
            },
            InstanceSpec::Padic { e, .. } => BallSet::Padic { m: *e },
            InstanceSpec::Product { left, right } => BallSet::Product {
                left: Box::new(left.shrunk_carrier_ball(divisor)),
                right: Box::new(right.shrunk_carrier_ball(divisor)),
            },
        }
    }

    pub fn validate_ball(&self, ball: &BallSet) -> Result<(), InstanceError> {
        match (self, ball) {
            (s, BallSet::Ball { radius, .. }) if s.bound().is_some() => {
                if !radius.is_positive() {
                    return Err(InstanceError::InvalidBall("radius must be positive".into()));
                }
                Ok(())
            }
            (InstanceSpec::Padic { .. }, BallSet::Padic { .. }) => Ok(()),
            (InstanceSpec::Product { left, right }, BallSet::Product { left: bl, right: br }) => {
                left.validate_ball(bl)?;
                right.validate_ball(br)
            }
            _ => Err(InstanceError::InvalidBall("ball does not fit the instance family".into())),
        }
    }

    /// `ball ∩ carrier`, expressed as a ball.
    pub fn normalize_ball(&self, ball: &BallSet) -> Result<BallSet, InstanceError> {
        self.validate_ball(ball)?;
        Ok(self.intersect_balls(ball, &self.carrier_ball()))
    }

    /// Intersection of two validated balls of this family.
    pub fn intersect_balls(&self, a: &BallSet, b: &BallSet) -> BallSet {
        match (self, a, b) {
            (InstanceSpec::Product { left, right }, BallSet::Product { left: al, right: ar }, BallSet::Product { left: bl, right: br }) => {
                BallSet::Product {
                    left: Box::new(left.intersect_balls(al, bl)),
                    right: Box::new(right.intersect_balls(ar, br)),
                }
            }
            (_, BallSet::Padic { m: ma }, BallSet::Padic { m: mb }) => BallSet::Padic { m: *ma.max(mb) },
            (_, BallSet::Ball { radius: ra, closed: ca }, BallSet::Ball { radius: rb, closed: cb }) => {
                if ball_le((ra, *ca), (rb, *cb)) {
                    a.clone()
                } else {
                    b.clone()
                }
            }
            _ => panic!("intersect_balls on mismatched families"),
        }
    }

    /// Exact inclusion `a ⊆ b` for balls normalized into the carrier.
    pub fn ball_subset(&self, a: &BallSet, b: &BallSet) -> bool {
        match (self, a, b) {
            (InstanceSpec::Product { left, right }, BallSet::Product { left: al, right: ar }, BallSet::Product { left: bl, right: br }) => {
                left.ball_subset(al, bl) && right.ball_subset(ar, br)
            }
            (_, BallSet::Padic { m: ma }, BallSet::Padic { m: mb }) => ma >= mb,
            (_, BallSet::Ball { radius: ra, closed: ca }, BallSet::Ball { radius: rb, closed: cb }) => {
                ball_le((ra, *ca), (rb, *cb))
            }
            _ => false,
        }
    }

    pub fn ball_contains(&self, ball: &BallSet, x: &Point) -> Result<bool, InstanceError> {
        Ok(match (self, ball, x) {
            (InstanceSpec::Product { left, right }, BallSet::Product { left: bl, right: br }, Point::Pair(a, b)) => {
                left.ball_contains(bl, a)? && right.ball_contains(br, b)?
            }
            (_, BallSet::Padic { m }, Point::Padic(v)) => self.contains(x) && v.in_ball(*m)?,
            (_, BallSet::Ball { radius, closed }, Point::Rational(q)) => {
                self.contains(x) && if *closed { q.abs() <= *radius } else { q.abs() < *radius }
            }
            _ => return Err(InstanceError::FamilyMismatch),
        })
    }

    /// `φᵏ(B)` for `k ≥ 0` (direct image), and `{x ∈ G : φ⁻ᵏ(x) ∈ B}` for
    /// `k < 0`. Both are balls on every family; the result lies in the carrier.
    pub fn ball_power_image(&self, endo: &EndoSpec, ball: &BallSet, k: i64) -> Result<BallSet, InstanceError> {
        self.validate_endo(endo)?;
        let ball = self.normalize_ball(ball)?;
        let raw = match (self, endo, &ball) {
            (InstanceSpec::Product { left, right }, EndoSpec::Product { left: el, right: er }, BallSet::Product { left: bl, right: br }) => {
                return Ok(BallSet::Product {
                    left: Box::new(left.ball_power_image(el, bl, k)?),
                    right: Box::new(right.ball_power_image(er, br, k)?),
                })
            }
            (_, EndoSpec::TimesP, BallSet::Padic { m }) => {
                let m = *m as i64 + k;
                BallSet::Padic { m: m.max(0) as usize }
            }
            (_, EndoSpec::Scale { factor }, BallSet::Ball { radius, closed }) => {
                let s = factor.abs();
                let scale = if k >= 0 {
                    rational::pow(&s, k as u32)
                } else {
                    rational::pow(&s.recip(), (-k) as u32)
                };
                BallSet::Ball { radius: radius * scale, closed: *closed }
            }
            _ => return Err(InstanceError::FamilyMismatch),
        };
        Ok(self.intersect_balls(&raw, &self.carrier_ball()))
    }

    /// `B × B ⊆ Ω`.
    pub fn ball_square_in_omega(&self, ball: &BallSet) -> bool {
        match (self, ball) {
            (InstanceSpec::Product { left, right }, BallSet::Product { left: bl, right: br }) => {
                left.ball_square_in_omega(bl) && right.ball_square_in_omega(br)
            }
            (InstanceSpec::Padic { .. }, BallSet::Padic { .. }) => true,
            (s, BallSet::Ball { radius, closed }) => match s.bound() {
                Some(r) => {
                    let twice = radius * rational::int(2);
                    if *closed {
                        twice < *r
                    } else {
                        twice <= *r
                    }
                }
                None => false,
            },
            _ => false,
        }
    }

    pub fn interior(&self, ball: &BallSet) -> BallSet {
        match ball {
            BallSet::Ball { radius, .. } => BallSet::Ball { radius: radius.clone(), closed: false },
            BallSet::Padic { m } => BallSet::Padic { m: *m },
            BallSet::Product { left, right } => match self {
                InstanceSpec::Product { left: sl, right: sr } => BallSet::Product {
                    left: Box::new(sl.interior(left)),
                    right: Box::new(sr.interior(right)),
                },
                _ => ball.clone(),
            },
        }
    }

    /// Whether every factor ball is compact (closed rational balls, any p-adic ball).
    pub fn ball_is_compact(&self, ball: &BallSet) -> bool {
        match ball {
            BallSet::Ball { closed, .. } => *closed,
            BallSet::Padic { .. } => true,
            BallSet::Product { left, right } => match self {
                InstanceSpec::Product { left: sl, right: sr } => {
                    sl.ball_is_compact(left) && sr.ball_is_compact(right)
                }
                _ => false,
            },
        }
    }

    /// `G|B` for an open ball `B` in the carrier, which is again an instance.
    pub fn restrict_to_ball(&self, ball: &BallSet) -> Result<InstanceSpec, InstanceError> {
        let ball = self.normalize_ball(ball)?;
        match (self, &ball) {
            (InstanceSpec::Interval { .. }, BallSet::Ball { radius, closed: false }) => {
                Ok(InstanceSpec::Interval { radius: radius.clone() })
            }
            (InstanceSpec::Arc { .. }, BallSet::Ball { radius, closed: false }) => {
                Ok(InstanceSpec::Arc { width: radius.clone() })
            }
            (InstanceSpec::Padic { p, precision, .. }, BallSet::Padic { m }) => {
                if *m >= *precision {
                    return Err(InstanceError::InvalidBall("ball exponent reaches the precision".into()));
                }
                Ok(InstanceSpec::Padic { p: *p, e: *m, precision: *precision })
            }
            (InstanceSpec::Product { left, right }, BallSet::Product { left: bl, right: br }) => {
                Ok(InstanceSpec::Product {
                    left: Box::new(left.restrict_to_ball(bl)?),
                    right: Box::new(right.restrict_to_ball(br)?),
                })
            }
            _ => Err(InstanceError::InvalidBall("restriction needs an open ball".into())),
        }
    }

    /// Human-readable description of a ball of this family.
    pub fn describe_ball(&self, ball: &BallSet) -> String {
        match (self, ball) {
            (InstanceSpec::Padic { p, .. }, BallSet::Padic { m }) => format!("{p}^{m}Z_{p}"),
            (_, BallSet::Ball { radius, closed }) => {
                format!("|x| {} {}", if *closed { "<=" } else { "<" }, rational::format(radius))
            }
            (InstanceSpec::Product { left, right }, BallSet::Product { left: bl, right: br }) => {
                format!("{} x {}", left.describe_ball(bl), right.describe_ball(br))
            }
            _ => format!("{ball:?}"),
        }
    }

    /// Parses one word entry: a rational for intervals and arcs, `:`-separated
    /// little-endian digits for p-adics, `<a;b>` for products.
    pub fn parse_point(&self, text: &str) -> Result<Point, InstanceError> {
        let text = text.trim();
        let p = match self {
            InstanceSpec::Interval { .. } | InstanceSpec::Arc { .. } => {
                Point::Rational(rational::parse(text).map_err(InstanceError::InvalidSpec)?)
            }
            InstanceSpec::Padic { p, .. } => {
                Point::Padic(PadicInt::parse(*p, text).map_err(InstanceError::InvalidSpec)?)
            }
            InstanceSpec::Product { left, right } => {
                let inner = text
                    .strip_prefix('<')
                    .and_then(|t| t.strip_suffix('>'))
                    .ok_or_else(|| InstanceError::InvalidSpec(format!("expected <a;b>, got `{text}`")))?;
                let split = split_top_level(inner)
                    .ok_or_else(|| InstanceError::InvalidSpec(format!("expected <a;b>, got `{text}`")))?;
                Point::pair(left.parse_point(&inner[..split])?, right.parse_point(&inner[split + 1..])?)
            }
        };
        self.require(&p)?;
        Ok(p)
    }

    /// Parses a comma-separated word; the empty string is the empty word.
    pub fn parse_word(&self, csv: &str) -> Result<Vec<Point>, InstanceError> {
        if csv.trim().is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut depth = 0usize;
        let mut start = 0;
        for (i, c) in csv.char_indices() {
            match c {
                '<' => depth += 1,
                '>' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    out.push(self.parse_point(&csv[start..i])?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        out.push(self.parse_point(&csv[start..])?);
        Ok(out)
    }

    /// The restriction of this instance to finitely many points, as a table.
    /// The identity must be among them.
    pub fn finite_patch(&self, points: &[Point]) -> Result<FiniteLocalGroup, InstanceError> {
        for x in points {
            self.require(x)?;
        }
        let n = points.len();
        let identity = points
            .iter()
            .position(|x| *x == self.identity())
            .ok_or_else(|| InstanceError::InvalidSpec("patch must contain the identity".into()))?;
        let index = |x: &Point| points.iter().position(|y| y == x);
        let mut product = vec![None; n * n];
        for (i, x) in points.iter().enumerate() {
            for (j, y) in points.iter().enumerate() {
                if let Some(z) = self.partial_product(x, y)? {
                    product[i * n + j] = index(&z);
                }
            }
        }
        let mut inverse = vec![None; n];
        for (i, x) in points.iter().enumerate() {
            inverse[i] = index(&self.inverse(x)?);
        }
        let labels = points.iter().map(|x| Label::Text(x.to_string())).collect();
        FiniteLocalGroup::from_tables(labels, identity, product, inverse)
            .map_err(|e| InstanceError::InvalidSpec(e.to_string()))
    }
}

fn split_top_level(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '<' => depth += 1,
            '>' => depth = depth.saturating_sub(1),
            ';' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

impl BallSet {
    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        serde_json::from_str(text).map_err(|e| InstanceError::InvalidBall(e.to_string()))
    }
}

impl EndoSpec {
    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        serde_json::from_str(text).map_err(|e| InstanceError::InvalidEndo(e.to_string()))
    }
}

/// Seeded point generator for one instance.
pub struct Sampler<'a> {
    spec: &'a InstanceSpec,
    rng: ChaCha8Rng,
}

impl Sampler<'_> {
    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn point(&mut self) -> Point {
        let ball = self.spec.carrier_ball();
        self.point_in(&ball)
    }

    /// A point of `ball ∩ carrier`.
    pub fn point_in(&mut self, ball: &BallSet) -> Point {
        let spec = self.spec;
        let ball = spec.normalize_ball(ball).expect("ball fits the instance");
        Self::draw(spec, &ball, &mut self.rng)
    }

    fn draw(spec: &InstanceSpec, ball: &BallSet, rng: &mut ChaCha8Rng) -> Point {
        match (spec, ball) {
            (InstanceSpec::Product { left, right }, BallSet::Product { left: bl, right: br }) => {
                let a = Self::draw(left, bl, rng);
                let b = Self::draw(right, br, rng);
                Point::pair(a, b)
            }
            (InstanceSpec::Padic { p, precision, .. }, BallSet::Padic { m }) => {
                let digits = (0..*precision)
                    .map(|i| if i < *m { 0 } else { rng.gen_range(0..*p) })
                    .collect();
                Point::Padic(PadicInt::new(*p, digits).expect("digits below p"))
            }
            (_, BallSet::Ball { radius, closed }) => {
                let (a, b) = small(radius, "radius").expect("validated radius");
                let j = rng.gen_range(1..=DENOMINATOR_SPREAD);
                let d = b * j;
                // closed balls inside the open carrier are never at the carrier bound
                let max = if *closed { a * j } else { a * j - 1 };
                let n = rng.gen_range(-max..=max);
                Point::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            _ => panic!("ball family mismatch"),
        }
    }

    /// A word of the given length with entries drawn from `ball`.
    pub fn word_in(&mut self, ball: &BallSet, len: usize) -> Vec<Point> {
        (0..len).map(|_| self.point_in(ball)).collect()
    }
}

/// An instance seen through the [`LocalGroup`] interface. Points outside the
/// carrier have no products and no inverses.
#[derive(Clone, Copy, Debug)]
pub struct InstanceView<'a> {
    spec: &'a InstanceSpec,
}

impl InstanceView<'_> {
    pub fn spec(&self) -> &InstanceSpec {
        self.spec
    }

    pub fn in_omega(&self, x: &Point, y: &Point) -> bool {
        matches!(self.spec.partial_product(x, y), Ok(Some(_)))
    }
}

impl LocalGroup for InstanceView<'_> {
    type Elem = Point;

    fn identity(&self) -> Point {
        self.spec.identity()
    }

    fn contains(&self, x: &Point) -> bool {
        self.spec.contains(x)
    }

    fn product(&self, x: &Point, y: &Point) -> Option<Point> {
        self.spec.partial_product(x, y).ok().flatten()
    }

    fn inverse(&self, x: &Point) -> Option<Point> {
        self.spec.inverse(x).ok()
    }
}
