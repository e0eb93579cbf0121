//! Exact integer linear algebra: Smith normal form, elementary ideals,
//! abelian group orders, and small diophantine solvers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("elementary ideal index {index} out of range for {generators} generators")]
    IdealIndex { index: usize, generators: usize },
    #[error("ragged matrix rows")]
    Ragged,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the width when there are no rows.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Result<Self, LatticeError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LatticeError::Ragged);
            }
            entries.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: rows.len(), cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) -> Result<(), LatticeError> {
        if row.len() != self.cols {
            return Err(LatticeError::Ragged);
        }
        self.entries.extend(row);
        self.rows += 1;
        Ok(())
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= k * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] -= v;
        }
    }

    /// col[dst] -= k * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] -= v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Invariant factors d₁ | d₂ | … | d_k, k = min(rows, cols), zeros last.
///
/// Pivots on the entry of least absolute value in the active block and
/// reduces by exact division until the pivot divides its row, its column
/// and the rest of the block.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let k = a.rows.min(a.cols);
    let mut factors = Vec::with_capacity(k);
    for t in 0..k {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..a.rows {
            for j in t..a.cols {
                if !a[(i, j)].is_zero() && pivot.is_none_or(|(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            factors.resize(k, BigInt::zero());
            return factors;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..a.rows {
                if !a[(i, t)].is_zero() {
                    let q = a[(i, t)].div_floor(&a[(t, t)]);
                    a.sub_row(i, t, &q);
                    if !a[(i, t)].is_zero() {
                        // remainder smaller than the pivot: make it the pivot
                        a.swap_rows(t, i);
                        changed = true;
                    }
                }
            }
            for j in t + 1..a.cols {
                if !a[(t, j)].is_zero() {
                    let q = a[(t, j)].div_floor(&a[(t, t)]);
                    a.sub_col(j, t, &q);
                    if !a[(t, j)].is_zero() {
                        a.swap_cols(t, j);
                        changed = true;
                    }
                }
            }
            if changed {
                continue;
            }
            // row and column are clear; enforce divisibility on the block
            let bad = (t + 1..a.rows)
                .flat_map(|i| (t + 1..a.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
            match bad {
                Some((i, _)) => {
                    for j in t..a.cols {
                        let v = a[(i, j)].clone();
                        a[(t, j)] += v;
                    }
                }
                None => break,
            }
        }
        factors.push(a[(t, t)].abs());
    }
    factors
}

/// Nonnegative generator of E_i: the gcd of the (g−i)-minors, g = cols.
pub fn elementary_ideal(m: &IntMatrix, i: usize) -> Result<BigInt, LatticeError> {
    let g = m.cols;
    if i >= g {
        return Err(LatticeError::IdealIndex { index: i, generators: g });
    }
    let size = g - i;
    if size > m.rows {
        return Ok(BigInt::zero());
    }
    let d = smith_normal_form(m);
    Ok(d[..size].iter().product())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrderResult {
    Infinite,
    Finite(BigInt),
}

impl OrderResult {
    pub fn is_trivial(&self) -> bool {
        matches!(self, OrderResult::Finite(n) if n.is_one())
    }
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderResult::Infinite => write!(f, "infinite"),
            OrderResult::Finite(n) => write!(f, "{n}"),
        }
    }
}

/// Order of the abelian group presented by the relation matrix `m`
/// (one column per generator).
pub fn abelianization_order(m: &IntMatrix) -> OrderResult {
    let d = smith_normal_form(m);
    let rank = d.iter().filter(|x| !x.is_zero()).count();
    if rank < m.cols {
        OrderResult::Infinite
    } else {
        OrderResult::Finite(d.iter().filter(|x| !x.is_zero()).product())
    }
}

/// Returns (g, x, y) with ax + by = g = gcd(a, b) ≥ 0.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Solves ax + by = target. Among all solutions returns the one whose x is
/// the least nonnegative member of its residue class mod |b/g| (x is
/// unique when b = 0; y = 0 when it is free).
pub fn solve_linear(a: &BigInt, b: &BigInt, target: &BigInt) -> Option<(BigInt, BigInt)> {
    if a.is_zero() && b.is_zero() {
        return target.is_zero().then(|| (BigInt::zero(), BigInt::zero()));
    }
    let (g, s, _) = extended_gcd(a, b);
    if !target.is_multiple_of(&g) {
        return None;
    }
    let scale = target / &g;
    let mut x = s * &scale;
    if b.is_zero() {
        return Some((target / a, BigInt::zero()));
    }
    let step = (b / &g).abs();
    x = x.mod_floor(&step);
    let y = (target - a * &x) / b;
    Some((x, y))
}

/// Least nonnegative x with ax ≡ b (mod m), if any.
pub fn solve_congruence(a: &BigInt, b: &BigInt, m: &BigInt) -> Option<BigInt> {
    assert!(m.is_positive(), "modulus must be positive");
    let (g, s, _) = extended_gcd(&a.mod_floor(m), m);
    let g = if g.is_zero() { m.clone() } else { g };
    if !b.is_multiple_of(&g) {
        return None;
    }
    let step = m / &g;
    Some((s * (b / &g)).mod_floor(&step))
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}
