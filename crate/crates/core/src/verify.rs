//! Independent certification of exponent data: torsion-freeness, the
//! H₁ ≅ ℤ criterion (E₀ = 0, E₁ = (1)), and weight-element certificates
//! checked both abelian-wise and by coset enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::coset::{todd_coxeter, CosetOutcome};
use crate::presentation::{build_nu_presentation, Presentation, Word};
use crate::realize::{Exponents, SeifertData};
use crate::zlattice::{abelianization_order, elementary_ideal, gcd_all, OrderResult};

pub const DEFAULT_COSET_BOUND: usize = 100_000;

fn b<T: Into<BigInt>>(x: T) -> BigInt {
    x.into()
}

fn coprime<X: Into<BigInt>, Y: Into<BigInt>>(x: X, y: Y) -> bool {
    b(x).gcd(&b(y)).is_one()
}

pub fn check_torsion_free(data: &SeifertData) -> bool {
    match data.exponents() {
        Exponents::Triple { p, q, r, a, b, c } => coprime(*a, *p) && coprime(*b, *q) && coprime(*c, *r),
        Exponents::Quad { p, q, r, s, a, b, c, d, .. } => {
            coprime(*a, *p) && coprime(*b, *q) && coprime(*c, *r) && coprime(*d, *s)
        }
        Exponents::Projective { p, q, e, f } => coprime(*p, *e) && coprime(*q, *f),
        Exponents::DiscReflector { a, d, e, f } => coprime(*a, *e) && d.iter().zip(f).all(|(d, f)| coprime(*d, *f)),
        Exponents::DiscCones { a, b, e, f } => coprime(*a, *e) && coprime(*b, *f),
    }
}

fn nu(data: &SeifertData) -> Presentation {
    build_nu_presentation(data).expect("validated exponent data builds")
}

/// E₀ from the closed forms `aqr+bpr+cpq` and `aqrs+bprs+cpqs+dpqr`
/// (absolute value), for the sphere families only.
pub fn closed_form_e0(data: &SeifertData) -> Option<BigInt> {
    match data.exponents() {
        Exponents::Triple { p, q, r, a, b: bb, c } => {
            let (p, q, r) = (b(*p), b(*q), b(*r));
            Some((b(*a) * &q * &r + b(*bb) * &p * &r + b(*c) * &p * &q).abs())
        }
        Exponents::Quad { p, q, r, s, a, b: bb, c, d, .. } => {
            let (p, q, r, s) = (b(*p), b(*q), b(*r), b(*s));
            Some((b(*a) * &q * &r * &s + b(*bb) * &p * &r * &s + b(*c) * &p * &q * &s + b(*d) * &p * &q * &r).abs())
        }
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Report {
    pub e0: BigInt,
    pub e1: BigInt,
    pub closed_form_e0: Option<BigInt>,
}

impl H1Report {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.e0.is_zero() && self.e1.is_one()
    }
}

/// Elementary ideals E₀, E₁ of ν's relation matrix, with the closed form
/// for E₀ alongside where one exists.
pub fn h1_report(data: &SeifertData) -> H1Report {
    let m = nu(data).abelianization_matrix();
    H1Report {
        e0: elementary_ideal(&m, 0).expect("ν has generators"),
        e1: elementary_ideal(&m, 1).expect("ν has at least two generators"),
        closed_form_e0: closed_form_e0(data),
    }
}

pub fn check_h1_z(data: &SeifertData) -> bool {
    h1_report(data).is_infinite_cyclic()
}

/// The family's weight element as a word in ν's generators
/// (t, u, v, … in template order).
pub fn weight_witness(data: &SeifertData) -> Word {
    let (u, v, w, x1) = (1, 2, 3, 2);
    match data.exponents() {
        Exponents::Triple { .. } | Exponents::Projective { .. } => Word::new([(u, -1), (v, 1)]),
        Exponents::Quad { .. } => Word::new([(u, 1), (v, 1)]),
        Exponents::DiscReflector { .. } => Word::new([(u, -1), (x1, 1)]),
        Exponents::DiscCones { .. } => Word::new([(u, -1), (w, 1), (v, 1)]),
    }
}

/// Order of ν/⟨⟨witness⟩⟩ from the closed forms `gcd(aq−bp, 2ar+cp, 2br+cq)`
/// (triple) and `|2(af−be)+ab|` (disc with two cones). Zero means infinite.
pub fn collapsed_order_closed_form(data: &SeifertData) -> Option<BigInt> {
    match data.exponents() {
        Exponents::Triple { p, q, r, a, b: bb, c } => {
            let (p, q, r, a, bb, c) = (b(*p), b(*q), b(*r), b(*a), b(*bb), b(*c));
            let two = b(2);
            Some(gcd_all(&[&a * &q - &bb * &p, &two * &a * &r + &c * &p, &two * &bb * &r + &c * &q]))
        }
        Exponents::DiscCones { a, b: bb, e, f } => {
            let (a, bb, e, f) = (b(*a), b(*bb), b(*e), b(*f));
            Some((b(2) * (&a * &f - &bb * &e) + &a * &bb).abs())
        }
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub torsion_free: bool,
    pub h1_infinite_cyclic: bool,
    pub weight_word: Word,
    /// `weight_word` rendered with ν's generator names.
    pub witness: String,
    pub collapsed_abelian_order: OrderResult,
    pub closed_form_order: Option<BigInt>,
    pub coset_result: CosetOutcome,
}

impl Certificate {
    /// Torsion free, H₁ ≅ ℤ, and the witness normally generates ν
    /// (the collapsed group enumerates to a single coset).
    pub fn certified(&self) -> bool {
        self.torsion_free && self.h1_infinite_cyclic && self.coset_result == CosetOutcome::Completed(1)
    }

    /// Closed form and generic abelianization agree (vacuous without a
    /// closed form).
    pub fn oracles_agree(&self) -> bool {
        match (&self.closed_form_order, &self.collapsed_abelian_order) {
            (None, _) => true,
            (Some(n), OrderResult::Infinite) => n.is_zero(),
            (Some(n), OrderResult::Finite(m)) => n == m,
        }
    }

    pub fn verdict(&self) -> &'static str {
        if self.certified() {
            "certified"
        } else if !self.torsion_free || !self.h1_infinite_cyclic {
            "rejected"
        } else {
            match self.coset_result {
                CosetOutcome::Exceeded(_) => "inconclusive",
                CosetOutcome::Completed(_) => "rejected",
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "torsion_free": self.torsion_free,
            "h1_z": self.h1_infinite_cyclic,
            "witness": self.witness,
            "abelian_order": self.collapsed_abelian_order.to_string(),
            "closed_form": self.closed_form_order.as_ref().map(|n| n.to_string()),
            "cosets": self.coset_result.to_json(),
        })
    }
}

/// Adjoins the witness to ν as a relator and checks the quotient is trivial,
/// abelian-wise via the relation matrix and in full by coset enumeration
/// over the trivial subgroup.
pub fn certify_weight(data: &SeifertData, coset_bound: usize) -> Certificate {
    let presentation = nu(data);
    let weight_word = weight_witness(data);
    let witness = weight_word.render(presentation.generator_names());
    let collapsed = presentation.adjoin_relator(weight_word.clone()).expect("witness uses ν's generators");
    let collapsed_abelian_order = abelianization_order(&collapsed.abelianization_matrix());
    let coset_result = todd_coxeter(&collapsed, coset_bound);
    let cert = Certificate {
        torsion_free: check_torsion_free(data),
        h1_infinite_cyclic: check_h1_z(data),
        weight_word,
        witness,
        collapsed_abelian_order,
        closed_form_order: collapsed_order_closed_form(data),
        coset_result,
    };
    debug_assert!(
        cert.coset_result != CosetOutcome::Completed(1) || cert.collapsed_abelian_order.is_trivial(),
        "trivial group with nontrivial abelianization"
    );
    cert
}

/// True iff every unit of ℤ/e is ±1 (e = 0 included), i.e. any r prime to
/// e can be written r = se ± 1.
pub fn lemma1_exponent_condition(e: u64) -> bool {
    matches!(e, 0 | 1 | 2 | 3 | 4 | 6)
}
