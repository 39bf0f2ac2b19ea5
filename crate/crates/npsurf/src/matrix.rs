//! Sparse matrices over the rationals with exact rank and kernel computations.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{rat_int, Rational};

/// A sparse matrix over the rationals. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries.insert((i, i), rat_int(1));
        }
        m
    }

    /// Builds a matrix from (row, col, value) triplets. Rejects out-of-range
    /// indices and duplicate positions; zero values are dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = Self::zero(rows, cols);
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::invalid(format!(
                    "entry ({r}, {c}) out of range for a {rows}x{cols} matrix"
                )));
            }
            if v.is_zero() {
                continue;
            }
            if m.entries.insert((r, c), v).is_some() {
                return Err(Error::invalid(format!("duplicate entry at ({r}, {c})")));
            }
        }
        Ok(m)
    }

    /// Dense construction from integer rows; test and fixture convenience.
    pub fn from_rows(data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = Self::zero(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.entries.insert((i, j), rat_int(v));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Iterates entries in (row, col) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut rhs_rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); rhs.rows];
        for (&(r, c), v) in &rhs.entries {
            rhs_rows[r].push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(r, k), va) in &self.entries {
            for &(c, vb) in &rhs_rows[k] {
                let slot = acc.entry((r, c)).or_insert_with(Rational::zero);
                *slot += va * vb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(RationalMatrix {
            rows: self.rows,
            cols: rhs.cols,
            entries: acc,
        })
    }

    /// Applies the matrix to a dense column vector.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] += a * &v[c];
            }
        }
        Ok(out)
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        self.eliminate(false).pivots.len()
    }

    /// Dimension of the right kernel; rank-nullity.
    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right kernel, one dense column vector per free column,
    /// ordered by ascending free column index.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let elim = self.eliminate(true);
        let mut is_pivot_col = vec![false; self.cols];
        for &(_, c) in &elim.pivots {
            is_pivot_col[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - elim.pivots.len());
        for f in 0..self.cols {
            if is_pivot_col[f] {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = rat_int(1);
            // After full reduction every pivot row reads
            //   a_rc * x_c + sum over free columns a_rf * x_f = 0.
            for &(r, c) in &elim.pivots {
                if let Some(a) = elim.rows[r].get(&f) {
                    let pivot = &elim.rows[r][&c];
                    v[c] = -(a / pivot);
                }
            }
            debug_assert!(self.apply(&v).unwrap().iter().all(Rational::is_zero));
            basis.push(v);
        }
        basis
    }

    /// Sparse Gaussian elimination with a Markowitz-style pivot choice:
    /// among the remaining entries, pick the one minimizing
    /// (row fill - 1) * (column fill - 1), ties broken by position. With
    /// `full` set, pivot columns are also cleared from earlier pivot rows so
    /// the kernel can be read off directly.
    fn eliminate(&self, full: bool) -> Elimination {
        let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].insert(c, v.clone());
        }
        let mut active_row = vec![true; self.rows];
        let mut pivots: Vec<(usize, usize)> = Vec::new();

        loop {
            // Column fill over active rows, recomputed per step.
            let mut col_count = vec![0usize; self.cols];
            for (r, row) in rows.iter().enumerate() {
                if active_row[r] {
                    for &c in row.keys() {
                        col_count[c] += 1;
                    }
                }
            }
            let mut best: Option<(usize, usize, usize)> = None;
            for (r, row) in rows.iter().enumerate() {
                if !active_row[r] {
                    continue;
                }
                let rfill = row.len();
                for &c in row.keys() {
                    let score = (rfill - 1) * (col_count[c] - 1);
                    let cand = (score, r, c);
                    if best.is_none_or(|b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
            let Some((_, pr, pc)) = best else { break };

            let pivot_row: Vec<(usize, Rational)> =
                rows[pr].iter().map(|(&c, v)| (c, v.clone())).collect();
            let pivot_val = rows[pr][&pc].clone();
            for r in 0..self.rows {
                if r == pr {
                    continue;
                }
                if !full && !active_row[r] {
                    continue;
                }
                let Some(lead) = rows[r].get(&pc).cloned() else {
                    continue;
                };
                let factor = lead / &pivot_val;
                for (c, pv) in &pivot_row {
                    if *c == pc {
                        rows[r].remove(c);
                        continue;
                    }
                    let delta = &factor * pv;
                    match rows[r].get_mut(c) {
                        Some(slot) => {
                            *slot -= delta;
                            if slot.is_zero() {
                                rows[r].remove(c);
                            }
                        }
                        None => {
                            rows[r].insert(*c, -delta);
                        }
                    }
                }
            }
            active_row[pr] = false;
            pivots.push((pr, pc));
        }

        pivots.sort();
        Elimination { pivots, rows }
    }
}

struct Elimination {
    pivots: Vec<(usize, usize)>,
    rows: Vec<BTreeMap<usize, Rational>>,
}
