//! Sweeps over bounded signatures, classifying each one and emitting an
//! atlas as JSON lines.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::realize::SeifertData;
use crate::signature::{assess, rational_parts, BaseSurface, Classification, OrbifoldSignature};
use crate::verify::Certificate;

const BASES: [BaseSurface; 3] = [BaseSurface::Sphere, BaseSurface::ProjectivePlane, BaseSurface::Disc];
const CHUNK: usize = 512;

/// Nondecreasing sequences of length `len` over `2..=max`, lexicographic.
#[derive(Debug, Clone)]
struct Multisets {
    current: Option<Vec<u64>>,
    max: u64,
}

impl Multisets {
    fn new(len: usize, max: u64) -> Self {
        let current = (len == 0 || max >= 2).then(|| vec![2; len]);
        Multisets { current, max }
    }
}

impl Iterator for Multisets {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if let Some(i) = next.iter().rposition(|&x| x < self.max) {
            let v = next[i] + 1;
            next[i..].iter_mut().for_each(|x| *x = v);
            self.current = Some(next);
        }
        Some(out)
    }
}

fn signatures_of(base: BaseSurface, max_order: u64, max_points: usize) -> Box<dyn Iterator<Item = OrbifoldSignature>> {
    match base {
        BaseSurface::Sphere | BaseSurface::ProjectivePlane => Box::new((0..=max_points).flat_map(move |n| {
            Multisets::new(n, max_order).map(move |c| OrbifoldSignature::new(base, c, vec![]).expect("orders in range"))
        })),
        BaseSurface::Disc => Box::new((0..=max_points).flat_map(move |k| {
            (0..=k).rev().flat_map(move |p| {
                Multisets::new(p, max_order).flat_map(move |cones| {
                    Multisets::new(k - p, max_order)
                        .map(move |corners| OrbifoldSignature::disc(&cones, &corners).expect("orders in range"))
                })
            })
        })),
    }
}

/// Every signature with orders in `2..=max_order` and at most `max_points`
/// cone points plus corners, each once in sorted form. Bases come in the
/// order sphere, projective plane, disc; within a base by point count, then
/// lexicographically (discs with more cone points first).
pub fn signatures(
    base_filter: Option<BaseSurface>,
    max_order: u64,
    max_points: usize,
) -> impl Iterator<Item = OrbifoldSignature> {
    BASES
        .into_iter()
        .filter(move |b| base_filter.is_none_or(|f| f == *b))
        .flat_map(move |b| signatures_of(b, max_order, max_points))
}

#[derive(Debug, Clone)]
pub struct AtlasRow {
    pub signature: OrbifoldSignature,
    pub classification: Classification,
    pub data: Option<SeifertData>,
    pub certificate: Option<Certificate>,
}

impl AtlasRow {
    pub fn classify(signature: OrbifoldSignature, coset_bound: usize) -> Self {
        let a = assess(&signature, coset_bound);
        let (data, certificate) = match a.realization {
            Some(r) => (Some(r.data), Some(r.certificate)),
            None => (None, None),
        };
        AtlasRow { signature, classification: a.classification, data, certificate }
    }

    pub fn to_json(&self) -> Value {
        let (num, den) = rational_parts(&self.signature.euler_characteristic());
        let mut v = json!({
            "sig": self.signature.to_string(),
            "chi": {"num": num, "den": den},
            "class": self.classification.tag(),
            "detail": self.classification.detail(),
        });
        let obj = v.as_object_mut().expect("object");
        if let Some(d) = &self.data {
            obj.insert("data".into(), d.to_json());
        }
        if let Some(c) = &self.certificate {
            obj.insert("witness".into(), Value::String(c.witness.clone()));
            obj.insert("certificate".into(), c.to_json());
        }
        v
    }
}

/// Classifies the sweep in parallel chunks and hands rows to `sink` in the
/// canonical enumeration order. Stops early if `sink` returns an error.
pub fn enumerate<E>(
    base_filter: Option<BaseSurface>,
    max_order: u64,
    max_points: usize,
    coset_bound: usize,
    mut sink: impl FnMut(AtlasRow) -> Result<(), E>,
) -> Result<(), E> {
    let mut sigs = signatures(base_filter, max_order, max_points);
    loop {
        let chunk: Vec<_> = sigs.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return Ok(());
        }
        let rows: Vec<AtlasRow> = chunk.into_par_iter().map(|s| AtlasRow::classify(s, coset_bound)).collect();
        for row in rows {
            sink(row)?;
        }
    }
}

/// Collects the whole sweep; convenient for small bounds.
pub fn atlas(base_filter: Option<BaseSurface>, max_order: u64, max_points: usize, coset_bound: usize) -> Vec<AtlasRow> {
    let mut rows = Vec::new();
    enumerate::<()>(base_filter, max_order, max_points, coset_bound, |r| {
        rows.push(r);
        Ok(())
    })
    .expect("infallible sink");
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::UnsettledCase;
    use crate::verify::DEFAULT_COSET_BOUND;
    use crate::CosetOutcome;
    use std::collections::HashSet;

    fn find<'a>(rows: &'a [AtlasRow], s: &str) -> &'a AtlasRow {
        rows.iter().find(|r| r.signature.to_string() == s).unwrap()
    }

    #[test]
    fn multisets() {
        let all: Vec<_> = Multisets::new(2, 4).collect();
        assert_eq!(all, [[2, 2], [2, 3], [2, 4], [3, 3], [3, 4], [4, 4]]);
        assert_eq!(Multisets::new(0, 4).count(), 1);
        assert_eq!(Multisets::new(3, 1).count(), 0);
        // C(n+k-1, k) with n = 9 values
        assert_eq!(Multisets::new(3, 10).count(), 165);
    }

    #[test]
    fn sweep_is_duplicate_free_and_sorted() {
        let all: Vec<_> = signatures(None, 7, 3).collect();
        let unique: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(unique.len(), all.len());
        assert!(all.iter().all(|s| *s == s.sorted()));
        // 1+6+21+56 per closed base; discs: sum over k of (k+1)-fold splits
        let closed = 1 + 6 + 21 + 56;
        let disc: usize = (0..=3usize)
            .map(|k| (0..=k).map(|p| Multisets::new(p, 7).count() * Multisets::new(k - p, 7).count()).sum::<usize>())
            .sum();
        assert_eq!(all.len(), 2 * closed + disc);
        assert_eq!(signatures(Some(BaseSurface::Disc), 7, 3).count(), disc);
    }

    #[test]
    fn documented_rows() {
        let rows = atlas(Some(BaseSurface::Sphere), 6, 3, DEFAULT_COSET_BOUND);
        let r = find(&rows, "S2(2,3,6)");
        assert_eq!(r.classification.tag(), "realized-constructive");
        assert_eq!(r.to_json()["chi"], json!({"num": "0", "den": "1"}));

        let rows = atlas(Some(BaseSurface::ProjectivePlane), 5, 3, DEFAULT_COSET_BOUND);
        assert_eq!(find(&rows, "P2(2,3,5)").classification, Classification::Unsettled(UnsettledCase::new(4).unwrap()));

        let rows = atlas(Some(BaseSurface::Disc), 5, 3, DEFAULT_COSET_BOUND);
        assert_eq!(find(&rows, "D(;2,3,5)").classification, Classification::SphericalExcluded);
    }

    #[test]
    fn constructive_rows_are_certified() {
        for row in atlas(None, 10, 3, DEFAULT_COSET_BOUND) {
            if let Classification::RealizedConstructive(_) = row.classification {
                let c = row.certificate.as_ref().unwrap();
                assert_eq!(c.coset_result, CosetOutcome::Completed(1), "{}", row.signature);
                assert!(row.data.is_some());
                assert!(row.to_json()["witness"].is_string());
            } else {
                assert!(row.certificate.is_none());
            }
        }
    }

    #[test]
    fn monotone_in_bounds() {
        let small = atlas(None, 6, 2, DEFAULT_COSET_BOUND);
        let large = atlas(None, 8, 3, DEFAULT_COSET_BOUND);
        for r in &small {
            let s = r.signature.to_string();
            assert_eq!(find(&large, &s).classification, r.classification, "{s}");
        }
    }
}
