//! Todd–Coxeter coset enumeration over the trivial subgroup (HLT strategy
//! with immediate coincidence processing).

use std::fmt;

use serde_json::{json, Value};

use crate::presentation::Presentation;

/// Relators longer than this many letters are not expanded; the
/// enumeration reports `Exceeded` instead.
pub const MAX_RELATOR_LETTERS: u128 = 10_000_000;

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CosetOutcome {
    /// The table closed with this many live cosets: the group order.
    Completed(usize),
    /// More than `bound` cosets were defined.
    Exceeded(usize),
}

impl CosetOutcome {
    pub fn to_json(&self) -> Value {
        match self {
            CosetOutcome::Completed(n) => json!({"status": "completed", "index": n.to_string()}),
            CosetOutcome::Exceeded(b) => json!({"status": "exceeded", "bound": b.to_string()}),
        }
    }
}

impl fmt::Display for CosetOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CosetOutcome::Completed(n) => write!(f, "completed with index {n}"),
            CosetOutcome::Exceeded(b) => write!(f, "exceeded bound {b}"),
        }
    }
}

/// A closed coset table, renumbered so that cosets appear in breadth-first
/// order from the subgroup coset 0. Column `2g` is generator `g`, column
/// `2g+1` its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generator_names: Vec<String>,
    rows: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Image of coset `c` under the letter `(generator, ±1)`.
    pub fn act(&self, c: usize, generator: usize, inverse: bool) -> usize {
        self.rows[c][2 * generator + inverse as usize]
    }

    pub fn to_json(&self) -> Value {
        let columns: Vec<String> = self.generator_names.iter().flat_map(|g| [g.clone(), format!("{g}^-1")]).collect();
        json!({ "columns": columns, "table": self.rows })
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    /// forwarding pointer: `parent[c] == c` iff c is live
    parent: Vec<u32>,
    bound: usize,
}

struct Overflow;

impl Enumerator {
    fn new(cols: usize, bound: usize) -> Self {
        Enumerator { cols, table: vec![UNDEF; cols], parent: vec![0], bound }
    }

    fn defined(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, Overflow> {
        if self.defined() >= self.bound {
            return Err(Overflow);
        }
        let d = self.defined() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (keep, kill) = (a.min(b), a.max(b));
            self.parent[kill as usize] = keep;
            queue.push(kill);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                self.set(f, x ^ 1, UNDEF);
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.get(e1, x);
                let fx = self.get(f1, x ^ 1);
                if ex != UNDEF {
                    self.merge(f1, ex, &mut queue);
                } else if fx != UNDEF {
                    self.merge(e1, fx, &mut queue);
                } else {
                    self.set(e1, x, f1);
                    self.set(f1, x ^ 1, e1);
                }
            }
        }
    }

    /// Traces `word` from `c` in both directions, defining cosets until the
    /// scan closes; records a deduction or a coincidence at the end.
    fn scan_and_fill(&mut self, c: u32, word: &[usize]) -> Result<(), Overflow> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, word.len() as isize - 1);
        loop {
            while i <= j && self.get(f, word[i as usize]) != UNDEF {
                f = self.get(f, word[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, word[j as usize] ^ 1) != UNDEF {
                b = self.get(b, word[j as usize] ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = word[i as usize];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }
}

fn expand(p: &Presentation) -> Option<Vec<Vec<usize>>> {
    p.relators()
        .iter()
        .map(|w| {
            if w.letter_length() > MAX_RELATOR_LETTERS {
                return None;
            }
            let mut letters = Vec::with_capacity(w.letter_length() as usize);
            for &(g, e) in w.syllables() {
                let col = 2 * g + (e < 0) as usize;
                letters.extend(std::iter::repeat_n(col, e.unsigned_abs() as usize));
            }
            Some(letters)
        })
        .collect()
}

/// Enumerates cosets of the trivial subgroup. Returns the closed,
/// canonically renumbered table, or `Err(bound)` once more than `bound`
/// cosets would have to be defined.
pub fn enumerate_cosets(p: &Presentation, bound: usize) -> Result<CosetTable, usize> {
    let bound = bound.max(1);
    let cols = 2 * p.generator_count();
    let mut relators = expand(p).ok_or(bound)?;
    // short relators first: their coincidences prune the table before the
    // long power relators force many definitions
    relators.sort_by_key(Vec::len);
    if cols == 0 {
        return Ok(CosetTable { generator_names: vec![], rows: vec![vec![]] });
    }
    let mut en = Enumerator::new(cols, bound);
    let mut c = 0u32;
    while (c as usize) < en.defined() {
        if en.live(c) {
            for rel in &relators {
                en.scan_and_fill(c, rel).map_err(|_| bound)?;
                if !en.live(c) {
                    break;
                }
            }
            if en.live(c) {
                for x in 0..cols {
                    if en.get(c, x) == UNDEF {
                        en.define(c, x).map_err(|_| bound)?;
                    }
                }
            }
        }
        c += 1;
    }
    Ok(canonical_table(&en, p))
}

fn canonical_table(en: &Enumerator, p: &Presentation) -> CosetTable {
    let mut new_id = vec![usize::MAX; en.defined()];
    let mut order = vec![0u32];
    new_id[0] = 0;
    let mut k = 0;
    while k < order.len() {
        let c = order[k];
        k += 1;
        for x in 0..en.cols {
            let d = en.get(c, x);
            if new_id[d as usize] == usize::MAX {
                new_id[d as usize] = order.len();
                order.push(d);
            }
        }
    }
    let rows = order.iter().map(|&c| (0..en.cols).map(|x| new_id[en.get(c, x) as usize]).collect()).collect();
    CosetTable { generator_names: p.generator_names().to_vec(), rows }
}

pub fn todd_coxeter(p: &Presentation, bound: usize) -> CosetOutcome {
    match enumerate_cosets(p, bound) {
        Ok(t) => CosetOutcome::Completed(t.index()),
        Err(b) => CosetOutcome::Exceeded(b),
    }
}
