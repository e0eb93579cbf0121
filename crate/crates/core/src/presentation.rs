//! Finite group presentations: words, the Seifert-fibred 3-manifold group
//! templates, orbifold groups, and the abelianized relation matrix.

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::realize::{Exponents, SeifertData};
use crate::signature::{BaseSurface, OrbifoldSignature};
use crate::zlattice::IntMatrix;

/// A freely reduced word: syllables `(generator, exponent)` with nonzero
/// exponents and no two adjacent syllables on the same generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn new(syllables: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in syllables {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Word(out)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn power_of(g: usize, e: i64) -> Self {
        Word::new([(g, e)])
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn commutator(a: &Word, b: &Word) -> Self {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0.iter().filter(|s| s.0 == g).map(|s| s.1).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|s| s.0).max()
    }

    /// Number of letters when every syllable is written out.
    pub fn letter_length(&self) -> u128 {
        self.0.iter().map(|s| s.1.unsigned_abs() as u128).sum()
    }

    /// Renders as e.g. `u^-1 v` using the given generator names.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&(g, e)| {
                let name = names.get(g).cloned().unwrap_or_else(|| format!("g{g}"));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("generator index {index} out of range ({generators} generators)")]
    GeneratorOutOfRange { index: usize, generators: usize },
    #[error("duplicate generator name '{0}'")]
    DuplicateName(String),
    #[error("exponent {0} does not fit in a word syllable")]
    ExponentOverflow(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (i, n) in generator_names.iter().enumerate() {
            if generator_names[..i].contains(n) {
                return Err(PresentationError::DuplicateName(n.clone()));
            }
        }
        let p = Presentation { generator_names, relators: Vec::new() };
        relators.into_iter().try_fold(p, |p, w| p.adjoin_relator(w))
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name)
    }

    /// The presentation with `w` appended to its relators.
    pub fn adjoin_relator(mut self, w: Word) -> Result<Self, PresentationError> {
        if let Some(g) = w.max_generator() {
            if g >= self.generator_count() {
                return Err(PresentationError::GeneratorOutOfRange { index: g, generators: self.generator_count() });
            }
        }
        self.relators.push(w);
        Ok(self)
    }

    /// Same presentation with relators reordered by `order`.
    pub fn with_relator_order(&self, order: &[usize]) -> Self {
        Presentation {
            generator_names: self.generator_names.clone(),
            relators: order.iter().map(|&i| self.relators[i].clone()).collect(),
        }
    }

    /// One row per relator, one column per generator; entries are exponent
    /// sums.
    pub fn abelianization_matrix(&self) -> IntMatrix {
        let g = self.generator_count();
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|w| (0..g).map(|j| w.exponent_sum(j)).collect()).collect();
        IntMatrix::from_rows(g, &rows).expect("rows have generator width")
    }

    pub fn to_json(&self) -> Value {
        let relators: Vec<Value> = self
            .relators
            .iter()
            .map(|w| {
                Value::Array(
                    w.syllables().iter().map(|&(g, e)| json!([self.generator_names[g], e.to_string()])).collect(),
                )
            })
            .collect();
        json!({ "generators": self.generator_names, "relators": relators })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|w| w.render(&self.generator_names)).collect();
        write!(f, "< {} | {} >", self.generator_names.join(", "), rels.join(", "))
    }
}

pub fn adjoin_relator(p: Presentation, w: Word) -> Result<Presentation, PresentationError> {
    p.adjoin_relator(w)
}

pub fn abelianization_matrix(p: &Presentation) -> IntMatrix {
    p.abelianization_matrix()
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn order_exp(n: u64) -> i64 {
    // orders are bounded by i64::MAX at signature construction
    i64::try_from(n).expect("orders fit in i64")
}

fn neg(e: i64) -> Result<i64, PresentationError> {
    e.checked_neg().ok_or_else(|| PresentationError::ExponentOverflow(BigInt::from(e).to_string()))
}

/// `g^n t^{-k}`, the relator form of `g^n = t^k`.
fn power_relation(g: usize, n: i64, t: usize, k: i64) -> Result<Word, PresentationError> {
    Ok(Word::new([(g, n), (t, neg(k)?)]))
}

fn centralize(relators: &mut Vec<Word>, t: usize, generators: usize) {
    for g in (0..generators).filter(|&g| g != t) {
        relators.push(Word::commutator(&Word::generator(t), &Word::generator(g)));
    }
}

/// The fundamental group ν of the Seifert fibred 3-manifold with the given
/// exponent data. `t` is generator 0; its centrality is spelled out as
/// commutator relators `[t,g]`.
pub fn build_nu_presentation(data: &SeifertData) -> Result<Presentation, PresentationError> {
    const T: usize = 0;
    let (gens, mut rels) = match data.exponents() {
        Exponents::Triple { p, q, r, a, b, c } => {
            let (u, v, w) = (1, 2, 3);
            (
                names(&["t", "u", "v", "w"]),
                vec![
                    power_relation(u, order_exp(*p), T, *a)?,
                    power_relation(v, order_exp(*q), T, *b)?,
                    power_relation(w, order_exp(*r), T, *c)?,
                    Word::new([(u, 1), (v, 1), (w, 1)]),
                ],
            )
        }
        Exponents::Quad { p, q, r, s, a, b, c, d, .. } => {
            let (u, v, w, x) = (1, 2, 3, 4);
            (
                names(&["t", "u", "v", "w", "x"]),
                vec![
                    power_relation(u, order_exp(*p), T, *a)?,
                    power_relation(v, order_exp(*q), T, *b)?,
                    power_relation(w, order_exp(*r), T, *c)?,
                    power_relation(x, order_exp(*s), T, *d)?,
                    Word::new([(u, 1), (v, 1), (w, 1), (x, 1)]),
                ],
            )
        }
        Exponents::Projective { p, q, e, f } => {
            let (u, v, w) = (1, 2, 3);
            (
                names(&["t", "u", "v", "w"]),
                vec![
                    Word::new([(u, 2), (w, -1), (v, -1)]),
                    power_relation(v, order_exp(*p), T, *e)?,
                    power_relation(w, order_exp(*q), T, *f)?,
                ],
            )
        }
        Exponents::DiscReflector { a, d, e, f } => {
            let u = 1;
            let x = |i: usize| 1 + i; // x_1 … x_{q+1}
            let q = d.len();
            let mut gens = names(&["t", "u"]);
            gens.extend((1..=q + 1).map(|i| format!("x{i}")));
            let mut rels = vec![power_relation(u, order_exp(*a), T, *e)?];
            for i in 1..=q {
                rels.push(Word::new([(x(i), 2), (T, -1)]));
            }
            for i in 1..=q {
                let corner = Word::new([(x(i), 1), (x(i + 1), 1)]).pow(order_exp(d[i - 1]));
                rels.push(corner.concat(&Word::power_of(T, neg(f[i - 1])?)));
            }
            rels.push(Word::new([(x(q + 1), 1), (u, 1), (x(1), -1), (u, -1)]));
            (gens, rels)
        }
        Exponents::DiscCones { a, b, e, f } => {
            let (u, v, w) = (1, 2, 3);
            let uvw = Word::new([(u, 1), (v, 1), (w, 1)]);
            (
                names(&["t", "u", "v", "w"]),
                vec![
                    power_relation(u, order_exp(*a), T, *e)?,
                    power_relation(v, order_exp(*b), T, *f)?,
                    Word::new([(w, 2), (T, -1)]),
                    Word::new([(w, 1), (u, 1), (v, 1)]).concat(&uvw.inverse()),
                ],
            )
        }
    };
    centralize(&mut rels, T, gens.len());
    Presentation::new(gens, rels)
}

/// The orbifold fundamental group of `sig`.
///
/// * `S2(a1,…,am)`: `⟨x1,…,xm | xi^ai, x1⋯xm⟩`
/// * `P2(b1,…,bn)`: `⟨u,x1,…,xn | xi^bi, u²(x1⋯xn)⁻¹⟩`
/// * `D(c1,…,cp;d1,…,dq)`: cone generators `y1…yp`, reflections
///   `x1…x(q+1)` with `xi²`, `(xi xi+1)^di` and `x(q+1) Y = Y x1` for
///   `Y = y1⋯yp`.
pub fn build_orbifold_presentation(sig: &OrbifoldSignature) -> Presentation {
    let cones = sig.cone_orders();
    let product = |first: usize, n: usize| Word::new((first..first + n).map(|g| (g, 1)));
    let (gens, rels): (Vec<String>, Vec<Word>) = match sig.base() {
        BaseSurface::Sphere => {
            let gens = (1..=cones.len()).map(|i| format!("x{i}")).collect();
            let mut rels: Vec<Word> = cones.iter().enumerate().map(|(i, &a)| Word::power_of(i, order_exp(a))).collect();
            rels.push(product(0, cones.len()));
            (gens, rels)
        }
        BaseSurface::ProjectivePlane => {
            let mut gens = vec!["u".to_string()];
            gens.extend((1..=cones.len()).map(|i| format!("x{i}")));
            let mut rels: Vec<Word> =
                cones.iter().enumerate().map(|(i, &b)| Word::power_of(i + 1, order_exp(b))).collect();
            rels.push(Word::power_of(0, 2).concat(&product(1, cones.len()).inverse()));
            (gens, rels)
        }
        BaseSurface::Disc => {
            let corners = sig.reflector_orders();
            let (p, q) = (cones.len(), corners.len());
            let mut gens: Vec<String> = (1..=p).map(|i| format!("y{i}")).collect();
            gens.extend((1..=q + 1).map(|i| format!("x{i}")));
            let x = |i: usize| p + i - 1;
            let mut rels: Vec<Word> = cones.iter().enumerate().map(|(i, &c)| Word::power_of(i, order_exp(c))).collect();
            for i in 1..=q.max(1) {
                rels.push(Word::power_of(x(i), 2));
            }
            for i in 1..=q {
                rels.push(Word::new([(x(i), 1), (x(i + 1), 1)]).pow(order_exp(corners[i - 1])));
            }
            let y = product(0, p);
            let twist = Word::generator(x(q + 1)).concat(&y).concat(&Word::power_of(x(1), -1)).concat(&y.inverse());
            if !twist.is_empty() {
                rels.push(twist);
            }
            (gens, rels)
        }
    };
    Presentation::new(gens, rels).expect("orbifold presentations are well formed")
}

/// `S2(a1,…,am)` with the last generator eliminated:
/// `⟨x1,…,x(m−1) | xi^ai, (x1⋯x(m−1))^am⟩`, the form in which the unsettled
/// sphere quadruples are written as one-relator quotients of free products.
pub fn sphere_quotient_presentation(sig: &OrbifoldSignature) -> Option<Presentation> {
    let a = sig.cone_orders();
    if sig.base() != BaseSurface::Sphere || a.len() < 2 {
        return None;
    }
    let m = a.len() - 1;
    let gens = (1..=m).map(|i| format!("x{i}")).collect();
    let mut rels: Vec<Word> = a[..m].iter().enumerate().map(|(i, &k)| Word::power_of(i, order_exp(k))).collect();
    rels.push(Word::new((0..m).map(|g| (g, 1))).pow(order_exp(a[m])));
    Some(Presentation::new(gens, rels).expect("well formed"))
}
