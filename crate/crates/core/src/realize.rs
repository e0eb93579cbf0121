//! Constructive realization of admissible bases: exponent data for a
//! Seifert fibred 3-manifold group ν that is torsion free with ν/ν′ ≅ ℤ and
//! has a weight element.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::coset::CosetOutcome;
use crate::signature::{gcd, BaseSurface, OrbifoldSignature};
use crate::verify::{self, Certificate};
use crate::zlattice::{solve_congruence, solve_linear};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Triple,
    Quad,
    Projective,
    DiscReflector,
    DiscCones,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Triple => "triple",
            Family::Quad => "quad",
            Family::Projective => "projective",
            Family::DiscReflector => "disc-reflector",
            Family::DiscCones => "disc-cones",
        }
    }

    /// The family whose template matches the shape of `sig`, if any.
    pub fn of(sig: &OrbifoldSignature) -> Option<Family> {
        let (p, q) = (sig.cone_orders().len(), sig.reflector_orders().len());
        match (sig.base(), p, q) {
            (BaseSurface::Sphere, 3, _) => Some(Family::Triple),
            (BaseSurface::Sphere, 4, _) => Some(Family::Quad),
            (BaseSurface::ProjectivePlane, 2, _) => Some(Family::Projective),
            (BaseSurface::Disc, 1, q) if q >= 1 => Some(Family::DiscReflector),
            (BaseSurface::Disc, 2, 0) => Some(Family::DiscCones),
            _ => None,
        }
    }
}

/// Family-specific exponents. The normalized exponents of each template
/// (the `t`-power in the product relation, the `t`-power in the reflection
/// squares, and so on) are fixed and not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exponents {
    /// `u^p = t^a, v^q = t^b, w^r = t^c, uvw = 1`
    Triple { p: u64, q: u64, r: u64, a: i64, b: i64, c: i64 },
    /// `u^p = t^a, …, x^s = t^d, uvwx = 1`
    Quad { p: u64, q: u64, r: u64, s: u64, a: i64, b: i64, c: i64, d: i64, eps_r: i8, eps_s: i8 },
    /// `u² = vw, v^p = t^e, w^q = t^f`
    Projective { p: u64, q: u64, e: i64, f: i64 },
    /// `u^a = t^e, xi² = t, (xi xi+1)^di = t^fi, x(q+1) u = u x1`
    DiscReflector { a: u64, d: Vec<u64>, e: i64, f: Vec<i64> },
    /// `u^a = t^e, v^b = t^f, w² = t, wuv = uvw`
    DiscCones { a: u64, b: u64, e: i64, f: i64 },
}

impl Exponents {
    pub fn family(&self) -> Family {
        match self {
            Exponents::Triple { .. } => Family::Triple,
            Exponents::Quad { .. } => Family::Quad,
            Exponents::Projective { .. } => Family::Projective,
            Exponents::DiscReflector { .. } => Family::DiscReflector,
            Exponents::DiscCones { .. } => Family::DiscCones,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DataError {
    #[error("signature {0} has no Seifert template")]
    NoFamily(String),
    #[error("signature {sig} does not have the {family} shape")]
    WrongShape { sig: String, family: &'static str },
    #[error("invalid permutation {0:?}")]
    BadPermutation(Vec<usize>),
    #[error("expected {expected} corner exponents, got {got}")]
    CornerCount { expected: usize, got: usize },
    #[error("exponent out of range")]
    ExponentRange,
    #[error("sign factors must be +1 or -1")]
    BadSign,
    #[error("missing or malformed field '{0}'")]
    Field(String),
    #[error("field '{field}' is {given} but the signature gives {expected}")]
    OrderMismatch { field: String, given: String, expected: u64 },
}

/// A base signature together with exponent data for one of the Seifert
/// templates. `permutation[i]` is the index in the signature's cone list of
/// the i-th template order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertData {
    signature: OrbifoldSignature,
    exponents: Exponents,
    permutation: Vec<usize>,
}

fn check_perm(perm: &[usize], n: usize) -> Result<(), DataError> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(DataError::BadPermutation(perm.to_vec()));
    }
    for &i in perm {
        if i >= n || seen[i] {
            return Err(DataError::BadPermutation(perm.to_vec()));
        }
        seen[i] = true;
    }
    Ok(())
}

fn check_exps(e: &[i64]) -> Result<(), DataError> {
    // i64::MIN has no negation; relators store t^{-k}
    if e.contains(&i64::MIN) {
        Err(DataError::ExponentRange)
    } else {
        Ok(())
    }
}

impl SeifertData {
    fn shaped(sig: &OrbifoldSignature, family: Family, perm: &[usize]) -> Result<Vec<u64>, DataError> {
        if Family::of(sig) != Some(family) {
            return Err(DataError::WrongShape { sig: sig.to_string(), family: family.name() });
        }
        check_perm(perm, sig.cone_orders().len())?;
        Ok(perm.iter().map(|&i| sig.cone_orders()[i]).collect())
    }

    pub fn triple(sig: &OrbifoldSignature, perm: [usize; 3], a: i64, b: i64, c: i64) -> Result<Self, DataError> {
        let o = Self::shaped(sig, Family::Triple, &perm)?;
        check_exps(&[a, b, c])?;
        Ok(SeifertData {
            signature: sig.clone(),
            exponents: Exponents::Triple { p: o[0], q: o[1], r: o[2], a, b, c },
            permutation: perm.to_vec(),
        })
    }

    #[allow(clippy::too_many_arguments)]
    pub fn quad(
        sig: &OrbifoldSignature,
        perm: [usize; 4],
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        eps_r: i8,
        eps_s: i8,
    ) -> Result<Self, DataError> {
        let o = Self::shaped(sig, Family::Quad, &perm)?;
        check_exps(&[a, b, c, d])?;
        if eps_r.abs() != 1 || eps_s.abs() != 1 {
            return Err(DataError::BadSign);
        }
        Ok(SeifertData {
            signature: sig.clone(),
            exponents: Exponents::Quad { p: o[0], q: o[1], r: o[2], s: o[3], a, b, c, d, eps_r, eps_s },
            permutation: perm.to_vec(),
        })
    }

    pub fn projective(sig: &OrbifoldSignature, perm: [usize; 2], e: i64, f: i64) -> Result<Self, DataError> {
        let o = Self::shaped(sig, Family::Projective, &perm)?;
        check_exps(&[e, f])?;
        Ok(SeifertData {
            signature: sig.clone(),
            exponents: Exponents::Projective { p: o[0], q: o[1], e, f },
            permutation: perm.to_vec(),
        })
    }

    pub fn disc_reflector(sig: &OrbifoldSignature, e: i64, f: Vec<i64>) -> Result<Self, DataError> {
        let o = Self::shaped(sig, Family::DiscReflector, &[0])?;
        let d = sig.reflector_orders().to_vec();
        if f.len() != d.len() {
            return Err(DataError::CornerCount { expected: d.len(), got: f.len() });
        }
        check_exps(&[e])?;
        check_exps(&f)?;
        Ok(SeifertData {
            signature: sig.clone(),
            exponents: Exponents::DiscReflector { a: o[0], d, e, f },
            permutation: vec![0],
        })
    }

    pub fn disc_cones(sig: &OrbifoldSignature, perm: [usize; 2], e: i64, f: i64) -> Result<Self, DataError> {
        let o = Self::shaped(sig, Family::DiscCones, &perm)?;
        check_exps(&[e, f])?;
        Ok(SeifertData {
            signature: sig.clone(),
            exponents: Exponents::DiscCones { a: o[0], b: o[1], e, f },
            permutation: perm.to_vec(),
        })
    }

    pub fn signature(&self) -> &OrbifoldSignature {
        &self.signature
    }

    pub fn exponents(&self) -> &Exponents {
        &self.exponents
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn family(&self) -> Family {
        self.exponents.family()
    }

    pub fn to_json(&self) -> Value {
        let s = |v: &dyn ToString| Value::String(v.to_string());
        let list = |v: &[i64]| Value::Array(v.iter().map(|x| s(x)).collect());
        let exps = match &self.exponents {
            Exponents::Triple { p, q, r, a, b, c } => {
                json!({"p": s(p), "q": s(q), "r": s(r), "a": s(a), "b": s(b), "c": s(c)})
            }
            Exponents::Quad { p, q, r, s: s_, a, b, c, d, eps_r, eps_s } => json!({
                "p": s(p), "q": s(q), "r": s(r), "s": s(s_),
                "a": s(a), "b": s(b), "c": s(c), "d": s(d),
                "eps_r": s(eps_r), "eps_s": s(eps_s)
            }),
            Exponents::Projective { p, q, e, f } => json!({"p": s(p), "q": s(q), "e": s(e), "f": s(f)}),
            Exponents::DiscReflector { a, d, e, f } => json!({
                "a": s(a),
                "d": Value::Array(d.iter().map(|x| s(x)).collect()),
                "e": s(e),
                "f": list(f)
            }),
            Exponents::DiscCones { a, b, e, f } => json!({"a": s(a), "b": s(b), "e": s(e), "f": s(f)}),
        };
        json!({
            "signature": self.signature.to_string(),
            "family": self.family().name(),
            "exponents": exps,
            "permutation": self.permutation.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
        })
    }

    /// Reads exponent data for `sig` from JSON. Accepts either a full
    /// [`SeifertData::to_json`] object or just its `exponents` object;
    /// numbers may be JSON numbers or decimal strings. Order fields, when
    /// present, must agree with the signature.
    pub fn from_json(sig: &OrbifoldSignature, value: &Value) -> Result<Self, DataError> {
        let family = Family::of(sig).ok_or_else(|| DataError::NoFamily(sig.to_string()))?;
        let obj = value.as_object().ok_or_else(|| DataError::Field("exponents".into()))?;
        let exps = match obj.get("exponents") {
            Some(Value::Object(e)) => e,
            Some(_) => return Err(DataError::Field("exponents".into())),
            None => obj,
        };
        let perm: Vec<usize> = match obj.get("permutation") {
            None => (0..sig.cone_orders().len()).collect(),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| json_int(v).and_then(|i| usize::try_from(i).ok()))
                .collect::<Option<_>>()
                .ok_or_else(|| DataError::Field("permutation".into()))?,
            Some(_) => return Err(DataError::Field("permutation".into())),
        };
        let int = |k: &str| field_i64(exps, k);
        let data = match family {
            Family::Triple => {
                let p = perm_array::<3>(&perm)?;
                Self::triple(sig, p, int("a")?, int("b")?, int("c")?)?
            }
            Family::Quad => {
                let p = perm_array::<4>(&perm)?;
                let sign = |k: &str| -> Result<i8, DataError> {
                    match exps.get(k) {
                        None => Ok(1),
                        Some(v) => {
                            json_int(v).and_then(|x| i8::try_from(x).ok()).ok_or_else(|| DataError::Field(k.into()))
                        }
                    }
                };
                Self::quad(sig, p, int("a")?, int("b")?, int("c")?, int("d")?, sign("eps_r")?, sign("eps_s")?)?
            }
            Family::Projective => Self::projective(sig, perm_array::<2>(&perm)?, int("e")?, int("f")?)?,
            Family::DiscReflector => {
                let f = match exps.get("f") {
                    Some(Value::Array(items)) => items
                        .iter()
                        .map(|v| json_int(v).and_then(|x| i64::try_from(x).ok()))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| DataError::Field("f".into()))?,
                    Some(v) => vec![json_int(v)
                        .and_then(|x| i64::try_from(x).ok())
                        .ok_or_else(|| DataError::Field("f".into()))?],
                    None => return Err(DataError::Field("f".into())),
                };
                Self::disc_reflector(sig, int("e")?, f)?
            }
            Family::DiscCones => Self::disc_cones(sig, perm_array::<2>(&perm)?, int("e")?, int("f")?)?,
        };
        data.check_order_fields(exps)?;
        Ok(data)
    }

    fn check_order_fields(&self, exps: &Map<String, Value>) -> Result<(), DataError> {
        let orders: Vec<(&str, u64)> = match &self.exponents {
            Exponents::Triple { p, q, r, .. } => vec![("p", *p), ("q", *q), ("r", *r)],
            Exponents::Quad { p, q, r, s, .. } => vec![("p", *p), ("q", *q), ("r", *r), ("s", *s)],
            Exponents::Projective { p, q, .. } => vec![("p", *p), ("q", *q)],
            Exponents::DiscReflector { a, .. } => vec![("a", *a)],
            Exponents::DiscCones { a, b, .. } => vec![("a", *a), ("b", *b)],
        };
        for (k, expected) in orders {
            if let Some(v) = exps.get(k) {
                if json_int(v) != Some(expected as i128) {
                    return Err(DataError::OrderMismatch { field: k.into(), given: v.to_string(), expected });
                }
            }
        }
        Ok(())
    }
}

fn json_int(v: &Value) -> Option<i128> {
    match v {
        Value::String(s) => s.trim().parse().ok(),
        Value::Number(n) => n.as_i64().map(i128::from).or_else(|| n.as_u64().map(i128::from)),
        _ => None,
    }
}

fn field_i64(obj: &Map<String, Value>, key: &str) -> Result<i64, DataError> {
    obj.get(key).and_then(json_int).and_then(|x| i64::try_from(x).ok()).ok_or_else(|| DataError::Field(key.into()))
}

fn perm_array<const N: usize>(perm: &[usize]) -> Result<[usize; N], DataError> {
    perm.try_into().map_err(|_| DataError::BadPermutation(perm.to_vec()))
}

/// `p = p_q·p_r`, `q = p_q·q_r`, `r = sign·p_r·q_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripodDecomposition {
    pub p_q: u64,
    pub p_r: u64,
    pub q_r: u64,
    pub sign: i8,
}

/// `p = p_r·p_s`, `q = q_r·q_s`, `r = ε_r·p_r·q_r`, `s = ε_s·p_s·q_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadDecomposition {
    pub p_r: u64,
    pub p_s: u64,
    pub q_r: u64,
    pub q_s: u64,
    pub eps_r: i8,
    pub eps_s: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("quad decomposition needs (p,q) = (r,s) = 1, got ({p},{q}) and ({r},{s})")]
pub struct QuadPrecondition {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub s: u64,
}

fn divides(d: u64, a: u64, b: u64) -> bool {
    (a as u128 * b as u128).is_multiple_of(d as u128)
}

/// Splits three orders into pairwise gcds, which exists exactly when
/// gcd(p,q,r) = 1 and each order divides the product of the other two.
pub fn tripod_decomposition(p: u64, q: u64, r: u64) -> Option<TripodDecomposition> {
    if gcd(gcd(p, q), r) != 1 || !divides(p, q, r) || !divides(q, p, r) || !divides(r, p, q) {
        return None;
    }
    let (p_q, p_r, q_r) = (gcd(p, q), gcd(p, r), gcd(q, r));
    let ok = p_q as u128 * p_r as u128 == p as u128
        && p_q as u128 * q_r as u128 == q as u128
        && p_r as u128 * q_r as u128 == r as u128;
    ok.then_some(TripodDecomposition { p_q, p_r, q_r, sign: 1 })
}

pub fn quad_decomposition(p: u64, q: u64, r: u64, s: u64) -> Result<Option<QuadDecomposition>, QuadPrecondition> {
    if gcd(p, q) != 1 || gcd(r, s) != 1 {
        return Err(QuadPrecondition { p, q, r, s });
    }
    let (p_r, p_s, q_r, q_s) = (gcd(p, r), gcd(p, s), gcd(q, r), gcd(q, s));
    let m = |x: u64, y: u64| x as u128 * y as u128;
    let ok =
        m(p_r, p_s) == p as u128 && m(q_r, q_s) == q as u128 && m(p_r, q_r) == r as u128 && m(p_s, q_s) == s as u128;
    Ok(ok.then_some(QuadDecomposition { p_r, p_s, q_r, q_s, eps_r: 1, eps_s: 1 }))
}

/// Why a signature has no certified realization.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Obstruction {
    #[error("no Seifert template for this signature shape")]
    NoFamily,
    #[error("orders admit no tripod decomposition (need gcd 1 and each order dividing the product of the others)")]
    NoTripod,
    #[error("no pairing into two coprime pairs admits a quad decomposition")]
    NoQuadDecomposition,
    #[error("cone orders are not coprime")]
    NotCoprime,
    #[error("cone order {0} is even")]
    EvenOrder(u64),
    #[error("constructed exponent {0} does not fit in 64 bits")]
    ExponentOverflow(String),
    #[error("constructed data is not torsion free")]
    NotTorsionFree,
    #[error("H1 is not infinite cyclic (E0 = {e0}, E1 = {e1})")]
    H1NotInfiniteCyclic { e0: BigInt, e1: BigInt },
    #[error("weight witness did not trivialize the group (coset enumeration: {0})")]
    WeightNotCertified(CosetOutcome),
}

fn small(x: BigInt) -> Result<i64, Obstruction> {
    x.to_i64().filter(|&v| v != i64::MIN).ok_or_else(|| Obstruction::ExponentOverflow(x.to_string()))
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn construct_triple(sig: &OrbifoldSignature) -> Result<SeifertData, Obstruction> {
    let orders = sig.cone_orders();
    // one of the orders is odd whenever a tripod exists; put it first
    let first = orders.iter().position(|o| o % 2 == 1).ok_or(Obstruction::NoTripod)?;
    let mut perm = vec![first];
    perm.extend((0..3).filter(|&i| i != first));
    let (p, q, r) = (orders[perm[0]], orders[perm[1]], orders[perm[2]]);
    let tp = tripod_decomposition(p, q, r).ok_or(Obstruction::NoTripod)?;
    let (pq, pr, qr) = (big(tp.p_q), big(tp.p_r), big(tp.q_r));

    // a_o q_r - b_o p_r = 1
    let (a0, b0) = solve_linear(&qr, &-&pr, &BigInt::one()).expect("p_r and q_r are coprime");
    // a_o q_r + b_o p_r + 2x p_r q_r ≡ p_q (p_q + 1)  (mod p_q²)
    let base = &a0 * &qr + &b0 * &pr;
    let x = solve_congruence(&(BigInt::from(2) * &pr * &qr), &(&pq * (&pq + 1) - &base), &(&pq * &pq))
        .expect("p_q is odd and prime to p_r q_r");
    let a = &a0 + &x * &pr;
    let b = &b0 + &x * &qr;
    let sum = &base + BigInt::from(2) * &x * &pr * &qr;
    debug_assert!((&sum % &pq).is_zero());
    let c = -(sum / &pq);
    SeifertData::triple(sig, [perm[0], perm[1], perm[2]], small(a)?, small(b)?, small(c)?)
        .map_err(|e| Obstruction::ExponentOverflow(e.to_string()))
}

fn construct_quad(sig: &OrbifoldSignature) -> Result<SeifertData, Obstruction> {
    let o = sig.cone_orders();
    for perm in [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]] {
        let (p, q, r, s) = (o[perm[0]], o[perm[1]], o[perm[2]], o[perm[3]]);
        let Ok(Some(qd)) = quad_decomposition(p, q, r, s) else {
            continue;
        };
        // a q + b p = 1 and c s + d r = -ε_r ε_s
        let (a, b) = solve_linear(&big(q), &big(p), &BigInt::one()).expect("(p,q) = 1");
        let target = BigInt::from(-(qd.eps_r as i64 * qd.eps_s as i64));
        let (c, d) = solve_linear(&big(s), &big(r), &target).expect("(r,s) = 1");
        return SeifertData::quad(sig, perm, small(a)?, small(b)?, small(c)?, small(d)?, qd.eps_r, qd.eps_s)
            .map_err(|e| Obstruction::ExponentOverflow(e.to_string()));
    }
    Err(Obstruction::NoQuadDecomposition)
}

fn construct_projective(sig: &OrbifoldSignature) -> Result<SeifertData, Obstruction> {
    let o = sig.cone_orders();
    let (p, q) = (o[0], o[1]);
    // p f - q e = 1
    let (f, e) = solve_linear(&big(p), &-big(q), &BigInt::one()).ok_or(Obstruction::NotCoprime)?;
    SeifertData::projective(sig, [0, 1], small(e)?, small(f)?).map_err(|e| Obstruction::ExponentOverflow(e.to_string()))
}

fn construct_disc_reflector(sig: &OrbifoldSignature) -> Result<SeifertData, Obstruction> {
    let a = sig.cone_orders()[0];
    if a.is_multiple_of(2) {
        return Err(Obstruction::EvenOrder(a));
    }
    let e = small(BigInt::from((a - 1) / 2))?;
    SeifertData::disc_reflector(sig, e, vec![1; sig.reflector_orders().len()])
        .map_err(|e| Obstruction::ExponentOverflow(e.to_string()))
}

fn construct_disc_cones(sig: &OrbifoldSignature) -> Result<SeifertData, Obstruction> {
    let o = sig.cone_orders();
    let (a, b) = (o[0], o[1]);
    if let Some(&even) = o.iter().find(|x| *x % 2 == 0) {
        return Err(Obstruction::EvenOrder(even));
    }
    if gcd(a, b) != 1 {
        return Err(Obstruction::NotCoprime);
    }
    // 2(af - be) = 1 - ab
    let target = (BigInt::one() - big(a) * big(b)) / 2;
    let (f, e) = solve_linear(&big(a), &-big(b), &target).expect("(a,b) = 1");
    SeifertData::disc_cones(sig, [0, 1], small(e)?, small(f)?).map_err(|e| Obstruction::ExponentOverflow(e.to_string()))
}

/// Runs the family recipe for `sig` without certifying the result.
pub fn construct(sig: &OrbifoldSignature) -> Result<SeifertData, Obstruction> {
    match Family::of(sig).ok_or(Obstruction::NoFamily)? {
        Family::Triple => construct_triple(sig),
        Family::Quad => construct_quad(sig),
        Family::Projective => construct_projective(sig),
        Family::DiscReflector => construct_disc_reflector(sig),
        Family::DiscCones => construct_disc_cones(sig),
    }
}

/// Exponent data together with the certificate that backs it.
#[derive(Debug, Clone)]
pub struct Realization {
    pub data: SeifertData,
    pub certificate: Certificate,
}

impl Realization {
    pub fn to_json(&self) -> Value {
        let mut v = self.data.to_json();
        let obj = v.as_object_mut().expect("object");
        obj.insert("witness".into(), Value::String(self.certificate.witness.clone()));
        obj.insert("certificate".into(), self.certificate.to_json());
        v
    }
}

pub fn realize_with_bound(sig: &OrbifoldSignature, coset_bound: usize) -> Result<Realization, Obstruction> {
    let data = construct(sig)?;
    if !verify::check_torsion_free(&data) {
        return Err(Obstruction::NotTorsionFree);
    }
    let h1 = verify::h1_report(&data);
    if !h1.is_infinite_cyclic() {
        return Err(Obstruction::H1NotInfiniteCyclic { e0: h1.e0, e1: h1.e1 });
    }
    let certificate = verify::certify_weight(&data, coset_bound);
    if !certificate.certified() {
        return Err(Obstruction::WeightNotCertified(certificate.coset_result));
    }
    Ok(Realization { data, certificate })
}

/// Certified realization with the default coset bound.
pub fn realize(sig: &OrbifoldSignature) -> Result<Realization, Obstruction> {
    realize_with_bound(sig, verify::DEFAULT_COSET_BOUND)
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = match &self.exponents {
            Exponents::Triple { p, q, r, a, b, c } => format!("(p,q,r)=({p},{q},{r}) (a,b,c)=({a},{b},{c})"),
            Exponents::Quad { p, q, r, s, a, b, c, d, .. } => {
                format!("(p,q,r,s)=({p},{q},{r},{s}) (a,b,c,d)=({a},{b},{c},{d})")
            }
            Exponents::Projective { p, q, e, f } => format!("(p,q)=({p},{q}) (e,f)=({e},{f})"),
            Exponents::DiscReflector { a, d, e, f } => format!("a={a} d={d:?} e={e} f={f:?}"),
            Exponents::DiscCones { a, b, e, f } => format!("(a,b)=({a},{b}) (e,f)=({e},{f})"),
        };
        write!(f, "{} {}: {}", self.signature, self.family().name(), e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::parse_signature;

    fn sig(s: &str) -> OrbifoldSignature {
        parse_signature(s).unwrap()
    }

    #[test]
    fn tripod_examples() {
        assert_eq!(tripod_decomposition(3, 2, 6), Some(TripodDecomposition { p_q: 1, p_r: 3, q_r: 2, sign: 1 }));
        assert_eq!(tripod_decomposition(2, 3, 5), None);
        assert_eq!(tripod_decomposition(2, 3, 6), Some(TripodDecomposition { p_q: 1, p_r: 2, q_r: 3, sign: 1 }));
        assert_eq!(tripod_decomposition(6, 10, 15), Some(TripodDecomposition { p_q: 2, p_r: 3, q_r: 5, sign: 1 }));
        assert_eq!(tripod_decomposition(2, 4, 8), None);
    }

    #[test]
    fn quad_examples() {
        assert_eq!(
            quad_decomposition(2, 3, 2, 3),
            Ok(Some(QuadDecomposition { p_r: 2, p_s: 1, q_r: 1, q_s: 3, eps_r: 1, eps_s: 1 }))
        );
        assert_eq!(quad_decomposition(2, 3, 5, 7), Ok(None));
        assert_eq!(
            quad_decomposition(6, 35, 10, 21),
            Ok(Some(QuadDecomposition { p_r: 2, p_s: 3, q_r: 5, q_s: 7, eps_r: 1, eps_s: 1 }))
        );
        assert!(quad_decomposition(2, 4, 3, 5).is_err());
    }

    #[test]
    fn recipe_examples() {
        let d = construct(&sig("S2(3,2,6)")).unwrap();
        assert_eq!(d.exponents(), &Exponents::Triple { p: 3, q: 2, r: 6, a: 2, b: 1, c: -7 });
        let d = construct(&sig("S2(2,3,6)")).unwrap();
        assert_eq!(d.permutation(), &[1, 0, 2]);
        assert_eq!(d.exponents(), &Exponents::Triple { p: 3, q: 2, r: 6, a: 2, b: 1, c: -7 });

        let d = construct(&sig("S2(2,3,2,3)")).unwrap();
        assert_eq!(
            d.exponents(),
            &Exponents::Quad { p: 2, q: 3, r: 2, s: 3, a: 1, b: -1, c: 1, d: -2, eps_r: 1, eps_s: 1 }
        );
        let d = construct(&sig("P2(2,3)")).unwrap();
        assert_eq!(d.exponents(), &Exponents::Projective { p: 2, q: 3, e: 1, f: 2 });
        let d = construct(&sig("D(3,5)")).unwrap();
        assert_eq!(d.exponents(), &Exponents::DiscCones { a: 3, b: 5, e: 2, f: 1 });
        let d = construct(&sig("D(5;2)")).unwrap();
        assert_eq!(d.exponents(), &Exponents::DiscReflector { a: 5, d: vec![2], e: 2, f: vec![1] });
    }

    #[test]
    fn triple_congruence_step() {
        for s in ["S2(6,10,15)", "S2(15,6,10)", "S2(3,2,6)", "S2(5,2,10)", "S2(21,6,14)", "S2(9,2,18)"] {
            let d = construct(&sig(s)).unwrap();
            let Exponents::Triple { p, q, r, a, b, .. } = *d.exponents() else { unreachable!() };
            let tp = tripod_decomposition(p, q, r).unwrap();
            let (a, b) = (a as i128, b as i128);
            let (pq, pr, qr) = (tp.p_q as i128, tp.p_r as i128, tp.q_r as i128);
            assert_eq!(a * qr - b * pr, 1, "{s}");
            assert_eq!((a * qr + b * pr).rem_euclid(pq), 0, "{s}");
        }
    }

    #[test]
    fn realize_obstructions() {
        assert_eq!(realize(&sig("S2(2,3,5,7)")).unwrap_err(), Obstruction::NoQuadDecomposition);
        assert_eq!(realize(&sig("S2(2,3,7)")).unwrap_err(), Obstruction::NoTripod);
        assert_eq!(realize(&sig("D(3,9)")).unwrap_err(), Obstruction::NotCoprime);
        assert_eq!(realize(&sig("D(4,5)")).unwrap_err(), Obstruction::EvenOrder(4));
        assert_eq!(realize(&sig("S2(2,3,5,7,11)")).unwrap_err(), Obstruction::NoFamily);
        // the reflector template never has infinite cyclic H1
        assert!(matches!(realize(&sig("D(5;2)")).unwrap_err(), Obstruction::H1NotInfiniteCyclic { .. }));
    }

    #[test]
    fn realize_certifies() {
        for s in ["S2(2,3,6)", "S2(2,3,2,3)", "P2(2,3)", "D(3,5)", "S2(6,10,15)", "S2(6,35,10,21)"] {
            let r = realize(&sig(s)).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert!(r.certificate.certified(), "{s}");
        }
    }

    #[test]
    fn json_round_trip() {
        for s in ["S2(2,3,6)", "S2(2,3,2,3)", "P2(2,3)", "D(3,5)", "D(5;2,3)"] {
            let sg = sig(s);
            let d = construct(&sg).unwrap();
            let back = SeifertData::from_json(&sg, &d.to_json()).unwrap();
            assert_eq!(back, d);
        }
        let sg = sig("S2(3,2,6)");
        let d = SeifertData::from_json(&sg, &json!({"a": 2, "b": "1", "c": "-7"})).unwrap();
        assert_eq!(d.exponents(), &Exponents::Triple { p: 3, q: 2, r: 6, a: 2, b: 1, c: -7 });
        assert!(matches!(SeifertData::from_json(&sg, &json!({"a": 2, "b": 1})), Err(DataError::Field(_))));
        assert!(matches!(
            SeifertData::from_json(&sg, &json!({"p": 5, "a": 2, "b": 1, "c": 1})),
            Err(DataError::OrderMismatch { .. })
        ));
        assert!(matches!(
            SeifertData::from_json(&sg, &json!({"a": 2, "b": 1, "c": 1, "permutation": [0, 0, 1]})),
            Err(DataError::BadPermutation(_))
        ));
    }
}
