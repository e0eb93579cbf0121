//! 2-orbifold signatures: data model, text grammar, orbifold Euler
//! characteristic, admissibility as a Seifert base of an aspherical 2-knot
//! manifold, and realizability classification.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::realize::{self, Family, Obstruction};

/// Exact rational used for orbifold Euler characteristics.
pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseSurface {
    Sphere,
    ProjectivePlane,
    Disc,
}

impl BaseSurface {
    pub fn tag(self) -> &'static str {
        match self {
            BaseSurface::Sphere => "S2",
            BaseSurface::ProjectivePlane => "P2",
            BaseSurface::Disc => "D",
        }
    }
}

impl FromStr for BaseSurface {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "S2" | "sphere" => Ok(BaseSurface::Sphere),
            "P2" | "projective" => Ok(BaseSurface::ProjectivePlane),
            "D" | "disc" => Ok(BaseSurface::Disc),
            _ => Err(format!("unknown base surface '{s}' (expected S2, P2 or D)")),
        }
    }
}

/// A closed 2-orbifold `S2(a1,…,am)`, `P2(b1,…,bn)` or a disc with cone
/// points and reflector corners `D(c1,…,cp;d1,…,dq)`.
///
/// Orders are kept in input order; conditions that do not depend on the
/// order work on sorted copies.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbifoldSignature {
    base: BaseSurface,
    cone_orders: Vec<u64>,
    reflector_orders: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("order {order} at position {position} is less than 2")]
    OrderTooSmall { position: usize, order: u64 },
    #[error("order at position {position} is too large")]
    OrderTooLarge { position: usize },
    #[error("reflector corners are only allowed on a disc base")]
    ReflectorsOffDisc,
}

impl OrbifoldSignature {
    pub fn new(base: BaseSurface, cone_orders: Vec<u64>, reflector_orders: Vec<u64>) -> Result<Self, SignatureError> {
        if !reflector_orders.is_empty() && base != BaseSurface::Disc {
            return Err(SignatureError::ReflectorsOffDisc);
        }
        for (position, &order) in cone_orders.iter().chain(&reflector_orders).enumerate() {
            if order < 2 {
                return Err(SignatureError::OrderTooSmall { position, order });
            }
            if order > i64::MAX as u64 {
                return Err(SignatureError::OrderTooLarge { position });
            }
        }
        Ok(OrbifoldSignature { base, cone_orders, reflector_orders })
    }

    pub fn sphere(orders: &[u64]) -> Result<Self, SignatureError> {
        Self::new(BaseSurface::Sphere, orders.to_vec(), vec![])
    }

    pub fn projective(orders: &[u64]) -> Result<Self, SignatureError> {
        Self::new(BaseSurface::ProjectivePlane, orders.to_vec(), vec![])
    }

    pub fn disc(cones: &[u64], corners: &[u64]) -> Result<Self, SignatureError> {
        Self::new(BaseSurface::Disc, cones.to_vec(), corners.to_vec())
    }

    pub fn base(&self) -> BaseSurface {
        self.base
    }

    pub fn cone_orders(&self) -> &[u64] {
        &self.cone_orders
    }

    pub fn reflector_orders(&self) -> &[u64] {
        &self.reflector_orders
    }

    /// The same orbifold with both order lists sorted ascending.
    pub fn sorted(&self) -> Self {
        let mut s = self.clone();
        s.cone_orders.sort_unstable();
        s.reflector_orders.sort_unstable();
        s
    }

    pub fn euler_characteristic(&self) -> Rational {
        euler_characteristic(self)
    }
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}({}", self.base.tag(), join(&self.cone_orders))?;
        if !self.reflector_orders.is_empty() {
            write!(f, ";{}", join(&self.reflector_orders))?;
        }
        write!(f, ")")
    }
}

impl FromStr for OrbifoldSignature {
    type Err = SignatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_signature(s)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SignatureError> {
        Err(SignatureError::Syntax { position: self.pos, message: message.into() })
    }

    fn expect(&mut self, c: u8) -> Result<(), SignatureError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.error(format!("expected '{}', found '{}'", c as char, x as char)),
            None => self.error(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn integer(&mut self) -> Result<(usize, u64), SignatureError> {
        self.skip_ws();
        let start = self.pos;
        match self.bytes.get(self.pos) {
            Some(b'1'..=b'9') => {}
            Some(b'0') => return self.error("integers may not have a leading zero"),
            _ => return self.error("expected a positive integer"),
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        match digits.parse::<u64>() {
            Ok(v) if v <= i64::MAX as u64 => Ok((start, v)),
            _ => Err(SignatureError::OrderTooLarge { position: start }),
        }
    }

    fn orders(&mut self) -> Result<Vec<(usize, u64)>, SignatureError> {
        let mut out = vec![self.integer()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.integer()?);
        }
        Ok(out)
    }
}

fn checked(orders: Vec<(usize, u64)>) -> Result<Vec<u64>, SignatureError> {
    orders
        .into_iter()
        .map(
            |(position, order)| {
                if order < 2 {
                    Err(SignatureError::OrderTooSmall { position, order })
                } else {
                    Ok(order)
                }
            },
        )
        .collect()
}

/// Parses `S2(…)`, `P2(…)` or `D([cones][;corners])`. Whitespace between
/// tokens is ignored; [`fmt::Display`] prints the canonical form.
pub fn parse_signature(text: &str) -> Result<OrbifoldSignature, SignatureError> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let rest = &p.bytes[p.pos..];
    let base = if rest.starts_with(b"S2") {
        p.pos += 2;
        BaseSurface::Sphere
    } else if rest.starts_with(b"P2") {
        p.pos += 2;
        BaseSurface::ProjectivePlane
    } else if rest.starts_with(b"D") {
        p.pos += 1;
        BaseSurface::Disc
    } else {
        return p.error("expected 'S2', 'P2' or 'D'");
    };
    p.expect(b'(')?;
    let (cones, corners) = match base {
        BaseSurface::Disc => {
            let cones = match p.peek() {
                Some(b';') | Some(b')') => vec![],
                _ => p.orders()?,
            };
            let corners = if p.peek() == Some(b';') {
                p.pos += 1;
                p.orders()?
            } else {
                vec![]
            };
            (cones, corners)
        }
        _ => {
            let cones = if p.peek() == Some(b')') { vec![] } else { p.orders()? };
            if p.peek() == Some(b';') {
                return Err(SignatureError::ReflectorsOffDisc);
            }
            (cones, vec![])
        }
    };
    p.expect(b')')?;
    if p.peek().is_some() {
        return p.error("trailing characters after signature");
    }
    OrbifoldSignature::new(base, checked(cones)?, checked(corners)?)
}

/// χ^orb: χ(base) − Σ(1 − 1/a) over cone points − ½Σ(1 − 1/d) over corners.
pub fn euler_characteristic(sig: &OrbifoldSignature) -> Rational {
    let one = Rational::one();
    let base = match sig.base {
        BaseSurface::Sphere => Rational::from_integer(2.into()),
        BaseSurface::ProjectivePlane | BaseSurface::Disc => one.clone(),
    };
    let defect = |n: u64| &one - Rational::new(BigInt::one(), BigInt::from(n));
    let cones: Rational = sig.cone_orders.iter().map(|&a| defect(a)).sum();
    let corners: Rational = sig.reflector_orders.iter().map(|&d| defect(d)).sum();
    base - cones - corners / Rational::from_integer(2.into())
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Which of the three cases of the base-orbifold theorem a signature meets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdmissibleCase {
    Sphere = 1,
    ProjectivePlane = 2,
    Disc = 3,
}

impl AdmissibleCase {
    pub fn number(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rejection {
    TooFewConePoints,
    ProjectivePointCount,
    DegenerateDisc,
    TooManyDiscCones,
    DiscTooSmall,
    ThreeShareFactor,
    TooManyDisjointPairs,
    NotPairwiseCoprime,
    MissingOrderTwo,
    EvenDiscCone,
    DiscConesNotCoprime,
    SeveralEvenCorners,
    /// One of the two named spherical disc quotients.
    SphericalExcluded,
    Spherical,
}

impl Rejection {
    pub fn code(self) -> &'static str {
        match self {
            Rejection::TooFewConePoints => "too-few-cone-points",
            Rejection::ProjectivePointCount => "projective-point-count",
            Rejection::DegenerateDisc => "degenerate-disc",
            Rejection::TooManyDiscCones => "too-many-disc-cones",
            Rejection::DiscTooSmall => "disc-too-small",
            Rejection::ThreeShareFactor => "three-share-factor",
            Rejection::TooManyDisjointPairs => "too-many-disjoint-pairs",
            Rejection::NotPairwiseCoprime => "not-pairwise-coprime",
            Rejection::MissingOrderTwo => "missing-order-two",
            Rejection::EvenDiscCone => "even-disc-cone",
            Rejection::DiscConesNotCoprime => "disc-cones-not-coprime",
            Rejection::SeveralEvenCorners => "several-even-corners",
            Rejection::SphericalExcluded => "spherical-excluded",
            Rejection::Spherical => "spherical",
        }
    }

    pub fn is_spherical(self) -> bool {
        matches!(self, Rejection::SphericalExcluded | Rejection::Spherical)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Admissibility {
    Accept(AdmissibleCase),
    Reject(Rejection),
}

impl Admissibility {
    pub fn is_accepted(self) -> bool {
        matches!(self, Admissibility::Accept(_))
    }
}

fn pairwise_coprime(v: &[u64]) -> bool {
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| gcd(v[i], v[j]) == 1))
}

/// Largest set of pairwise disjoint index pairs whose orders share a factor.
fn max_disjoint_common_pairs(v: &[u64]) -> usize {
    fn go(v: &[u64], used: &mut Vec<bool>, from: usize) -> usize {
        let Some(i) = (from..v.len()).find(|&i| !used[i]) else {
            return 0;
        };
        // either i stays unmatched, or it is matched with some later j
        let mut best = go(v, used, i + 1);
        used[i] = true;
        for j in i + 1..v.len() {
            if !used[j] && gcd(v[i], v[j]) > 1 {
                used[j] = true;
                best = best.max(1 + go(v, used, i + 1));
                used[j] = false;
            }
        }
        used[i] = false;
        best
    }
    go(v, &mut vec![false; v.len()], 0)
}

fn three_share_factor(v: &[u64]) -> bool {
    let n = v.len();
    (0..n).any(|i| {
        (i + 1..n).any(|j| {
            let g = gcd(v[i], v[j]);
            g > 1 && (j + 1..n).any(|k| gcd(g, v[k]) > 1)
        })
    })
}

fn is_named_spherical_exclusion(sig: &OrbifoldSignature) -> bool {
    let s = sig.sorted();
    s.base == BaseSurface::Disc
        && ((s.cone_orders == [3] && s.reflector_orders == [2])
            || (s.cone_orders.is_empty() && s.reflector_orders == [2, 3, 5]))
}

/// Decides whether `sig` is on the list of possible bases of a Seifert
/// fibred aspherical 2-knot manifold: the per-case order conditions plus
/// χ^orb ≤ 0.
pub fn theorem1_admissible(sig: &OrbifoldSignature) -> Admissibility {
    use Admissibility::*;
    let s = sig.sorted();
    let case = match s.base {
        BaseSurface::Sphere => {
            let a = &s.cone_orders;
            if a.len() < 3 {
                return Reject(Rejection::TooFewConePoints);
            }
            if three_share_factor(a) {
                return Reject(Rejection::ThreeShareFactor);
            }
            if max_disjoint_common_pairs(a) > 2 {
                return Reject(Rejection::TooManyDisjointPairs);
            }
            AdmissibleCase::Sphere
        }
        BaseSurface::ProjectivePlane => {
            let b = &s.cone_orders;
            if b == &[3, 4, 5] {
                AdmissibleCase::ProjectivePlane
            } else {
                if b.len() != 2 && b.len() != 3 {
                    return Reject(Rejection::ProjectivePointCount);
                }
                if !pairwise_coprime(b) {
                    return Reject(Rejection::NotPairwiseCoprime);
                }
                if b.len() == 3 && b[0] != 2 {
                    return Reject(Rejection::MissingOrderTwo);
                }
                AdmissibleCase::ProjectivePlane
            }
        }
        BaseSurface::Disc => {
            let (c, d) = (&s.cone_orders, &s.reflector_orders);
            if c.is_empty() && d.is_empty() {
                return Reject(Rejection::DegenerateDisc);
            }
            if c.len() > 2 {
                return Reject(Rejection::TooManyDiscCones);
            }
            if 2 * c.len() + d.len() < 3 {
                return Reject(Rejection::DiscTooSmall);
            }
            if c.iter().any(|x| x % 2 == 0) {
                return Reject(Rejection::EvenDiscCone);
            }
            if !pairwise_coprime(c) {
                return Reject(Rejection::DiscConesNotCoprime);
            }
            if d.iter().filter(|x| *x % 2 == 0).count() > 1 {
                return Reject(Rejection::SeveralEvenCorners);
            }
            if is_named_spherical_exclusion(&s) {
                return Reject(Rejection::SphericalExcluded);
            }
            AdmissibleCase::Disc
        }
    };
    if euler_characteristic(&s).is_positive() {
        return Reject(Rejection::Spherical);
    }
    Accept(case)
}

/// The unsettled families, numbered as in the list of remaining cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnsettledCase(u8);

impl UnsettledCase {
    pub fn new(k: u8) -> Option<Self> {
        (1..=5).contains(&k).then_some(UnsettledCase(k))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn description(self) -> &'static str {
        match self.0 {
            1 => "S2(a1,...,a5) quotient",
            2 => "S2(a,b,c,abc), a,b,c distinct primes",
            3 => "S2(bc,ac,ab,d), a,b,c,d distinct primes",
            4 => "P2(2,b,c) with b,c odd coprime, or P2(3,4,5)",
            _ => "D(a,b;d) with (a,b)=1",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    NotAdmissible(Rejection),
    SphericalExcluded,
    RealizedConstructive(Family),
    RealizedTwistSpin(String),
    Unsettled(UnsettledCase),
    /// Admissible and of weight 1, but neither a certified Seifert extension
    /// with H₁ ≅ ℤ nor a twist-spin realization is available.
    Unrealized(String),
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::NotAdmissible(_) => "not-admissible",
            Classification::SphericalExcluded => "spherical-excluded",
            Classification::RealizedConstructive(_) => "realized-constructive",
            Classification::RealizedTwistSpin(_) => "realized-twist-spin",
            Classification::Unsettled(_) => "unsettled",
            Classification::Unrealized(_) => "unrealized",
        }
    }

    pub fn detail(&self) -> String {
        match self {
            Classification::NotAdmissible(r) => r.code().to_string(),
            Classification::SphericalExcluded => "spherical".to_string(),
            Classification::RealizedConstructive(f) => f.name().to_string(),
            Classification::RealizedTwistSpin(s) | Classification::Unrealized(s) => s.clone(),
            Classification::Unsettled(c) => format!("case {}: {}", c.index(), c.description()),
        }
    }
}

/// For four sphere orders with no pairing into two coprime pairs, decides
/// which unsettled quotient family applies: a common-factor star gives
/// case 2, otherwise a common-factor triangle gives case 3.
fn quadruple_unsettled_case(a: &[u64]) -> UnsettledCase {
    let shares = |i: usize, j: usize| gcd(a[i], a[j]) > 1;
    let star = (0..4).any(|c| (0..4).filter(|&j| j != c).all(|j| shares(c, j)));
    if star {
        UnsettledCase(2)
    } else {
        UnsettledCase(3)
    }
}

fn has_coprime_pairing(a: &[u64]) -> bool {
    [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]].iter().any(|m| gcd(a[m[0]], a[m[1]]) == 1 && gcd(a[m[2]], a[m[3]]) == 1)
}

fn twist_spin_triple(a: &[u64]) -> Option<String> {
    [(0, 1, 2), (0, 2, 1), (1, 2, 0)].iter().find_map(|&(i, j, k)| {
        (gcd(a[i], a[j]) == 1).then(|| format!("{}-twist spin of the ({},{}) torus knot", a[k], a[i], a[j]))
    })
}

/// Classification together with the certified realization backing a
/// `RealizedConstructive` verdict.
#[derive(Debug, Clone)]
pub struct Assessment {
    pub admissibility: Admissibility,
    pub classification: Classification,
    pub realization: Option<realize::Realization>,
}

pub fn assess(sig: &OrbifoldSignature, coset_bound: usize) -> Assessment {
    let admissibility = theorem1_admissible(sig);
    let mut realization = None;
    let classification = match admissibility {
        Admissibility::Reject(r) if r.is_spherical() => Classification::SphericalExcluded,
        Admissibility::Reject(r) => Classification::NotAdmissible(r),
        Admissibility::Accept(_) => {
            let constructive =
                |realization: &mut Option<realize::Realization>| match realize::realize_with_bound(sig, coset_bound) {
                    Ok(r) => {
                        let family = r.data.family();
                        *realization = Some(r);
                        Ok(Classification::RealizedConstructive(family))
                    }
                    Err(e) => Err(e),
                };
            let n = sig.cone_orders.len();
            match sig.base {
                BaseSurface::Sphere if n >= 5 => Classification::Unsettled(UnsettledCase(1)),
                BaseSurface::Sphere if n == 4 && !has_coprime_pairing(&sig.cone_orders) => {
                    Classification::Unsettled(quadruple_unsettled_case(&sig.cone_orders))
                }
                BaseSurface::Sphere => match constructive(&mut realization) {
                    Ok(c) => c,
                    Err(e) => match (n == 3).then(|| twist_spin_triple(&sig.cone_orders)).flatten() {
                        Some(desc) => Classification::RealizedTwistSpin(desc),
                        None => Classification::Unrealized(unrealized_detail(&e)),
                    },
                },
                BaseSurface::ProjectivePlane if n == 3 => Classification::Unsettled(UnsettledCase(4)),
                BaseSurface::ProjectivePlane => match constructive(&mut realization) {
                    Ok(c) => c,
                    Err(e) => Classification::Unrealized(unrealized_detail(&e)),
                },
                BaseSurface::Disc => match n {
                    0 => Classification::RealizedTwistSpin("2-twist spin of a Montesinos knot".to_string()),
                    2 if !sig.reflector_orders.is_empty() => Classification::Unsettled(UnsettledCase(5)),
                    _ => match constructive(&mut realization) {
                        Ok(c) => c,
                        Err(e) => Classification::Unrealized(unrealized_detail(&e)),
                    },
                },
            }
        }
    };
    Assessment { admissibility, classification, realization }
}

fn unrealized_detail(e: &Obstruction) -> String {
    format!("weight 1, but no certified Seifert extension with H1 = Z: {e}")
}

pub fn classify_realizability(sig: &OrbifoldSignature) -> Classification {
    assess(sig, crate::verify::DEFAULT_COSET_BOUND).classification
}

/// Convenience for χ as (numerator, denominator) decimal strings.
pub fn rational_parts(r: &Rational) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() || r.numer().is_zero() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
