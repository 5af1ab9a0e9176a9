//! Exact linear algebra over the rationals on sparse vectors.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse vector: coordinate ↦ non-zero coefficient.
pub type SparseVec = BTreeMap<usize, BigRational>;

/// `x += c·y`, dropping cancelled coordinates.
pub fn axpy(x: &mut SparseVec, c: &BigRational, y: &SparseVec) {
    for (&k, v) in y {
        let e = x.entry(k).or_insert_with(BigRational::zero);
        *e += c * v;
        if e.is_zero() {
            x.remove(&k);
        }
    }
}

/// Row-echelon basis of a growing subspace. Every stored row has leading
/// coefficient 1 at its pivot, and pivots are distinct.
#[derive(Debug, Clone, Default)]
pub struct RowSpace {
    rows: BTreeMap<usize, SparseVec>,
}

impl RowSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every stored pivot.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut from = 0;
        while let Some((&k, c)) = v.range(from..).next() {
            if let Some(row) = self.rows.get(&k) {
                let c = -c.clone();
                axpy(&mut v, &c, row);
            }
            from = k + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns the reduced new row when it enlarged the space.
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let mut r = self.reduce(v);
        let (&pivot, lead) = r.iter().next()?;
        let inv = BigRational::one() / lead.clone();
        for c in r.values_mut() {
            *c *= &inv;
        }
        self.rows.insert(pivot, r.clone());
        Some(r)
    }
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut space = RowSpace::new();
    for v in vectors {
        space.insert(v);
    }
    space.rank()
}

/// Solves `Σ_j a_ij x_j = b_i` over `n` unknowns. Free unknowns are set to 0.
/// `None` when inconsistent.
pub fn solve(n: usize, equations: &[(SparseVec, BigRational)]) -> Option<Vec<BigRational>> {
    // augmented column n carries the right-hand side
    let mut space = RowSpace::new();
    for (lhs, rhs) in equations {
        let mut row = lhs.clone();
        if !rhs.is_zero() {
            row.insert(n, rhs.clone());
        }
        space.insert(&row);
    }
    if space.rows.contains_key(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (&pivot, row) in space.rows.iter().rev() {
        let mut value = row.get(&n).cloned().unwrap_or_else(BigRational::zero);
        for (&k, c) in row.range(pivot + 1..n) {
            value -= c * &x[k];
        }
        x[pivot] = value;
    }
    Some(x)
}

/// Rank of a dense square matrix.
pub fn dense_rank(m: &[Vec<BigRational>]) -> usize {
    let rows: Vec<SparseVec> = m
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect())
        .collect();
    rank(&rows)
}
