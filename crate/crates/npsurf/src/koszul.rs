//! Koszul complexes of graded module tables: differentials, cohomology
//! dimensions, Betti tables, the property-(N_p) check and the splitting-law
//! comparison for annihilating extensions of the ambient space.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{binomial, ExteriorIndex};
use crate::graded::GradedModuleTable;
use crate::matrix::RationalMatrix;

/// Matrix of the Koszul differential
///   wedge^p V (x) M_q  ->  wedge^{p-1} V (x) M_{q+1},
///   v_1 ^ ... ^ v_p (x) m  |->  sum_i (-1)^{i+1} v_1 ^ ... v_i-hat ... ^ v_p (x) v_i m,
/// in the contractual bases: exterior index major, module index minor. For
/// p = 0 the target is the zero space, so the matrix has zero rows.
pub fn koszul_differential(
    table: &GradedModuleTable,
    p: usize,
    q: i64,
) -> Result<RationalMatrix> {
    if q + 1 > table.q_max() {
        return Err(Error::DegreeOutOfWindow {
            q: q + 1,
            q_min: table.q_min(),
            q_max: table.q_max(),
        });
    }
    let n = table.n();
    let dim_q = table.dim(q)?;
    let dim_q1 = table.dim(q + 1)?;
    let source = ExteriorIndex::new(n, p);
    let target_len = if p == 0 { 0 } else { binomial(n, p - 1) };
    let rows = target_len * dim_q1;
    let cols = source.len() * dim_q;
    let mut out = RationalMatrix::zero(rows, cols);
    if p == 0 || rows == 0 || cols == 0 {
        return Ok(out);
    }
    let target = ExteriorIndex::new(n, p - 1);
    let mults: Vec<RationalMatrix> = (0..n)
        .map(|j| table.mult(q, j))
        .collect::<Result<_>>()?;

    for (si, subset) in source.iter().enumerate() {
        for (t, &j) in subset.iter().enumerate() {
            let mut reduced = subset.clone();
            reduced.remove(t);
            let ti = target
                .index_of(&reduced)
                .expect("reduced subset is a valid basis element");
            let negative = t % 2 == 1;
            for (r, c, v) in mults[j].entries() {
                let row = ti * dim_q1 + r;
                let col = si * dim_q + c;
                let value = if negative { -v.clone() } else { v.clone() };
                let prev = out.get(row, col);
                out.set(row, col, prev + value);
            }
        }
    }
    Ok(out)
}

/// dim K_{p,q}(M; V) = ker(d_{p,q}) - rank(d_{p+1,q-1}).
///
/// Computable whenever q + 1 is still inside the window; degrees below the
/// window are zero spaces, so cells with q < q_min vanish trivially.
pub fn koszul_cohomology_dim(table: &GradedModuleTable, p: usize, q: i64) -> Result<usize> {
    if q < table.q_min() {
        return Ok(0);
    }
    if q + 1 > table.q_max() {
        return Err(Error::WindowTooSmall {
            p,
            q,
            needed: q + 1,
            q_max: table.q_max(),
        });
    }
    let outgoing = koszul_differential(table, p, q)?;
    let incoming = koszul_differential(table, p + 1, q - 1)?;
    let kernel = outgoing.kernel_dim();
    let image = incoming.rank();
    debug_assert!(image <= kernel, "d o d != 0 would be a bug");
    Ok(kernel - image)
}

/// The table of dim K_{p,q} over a rectangular window. Cells are stored for
/// every requested position, zeros included; positions outside the window are
/// absent rather than zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub p_max: usize,
    pub q_lo: i64,
    pub q_hi: i64,
    entries: BTreeMap<(usize, i64), usize>,
}

#[derive(Serialize, Deserialize)]
struct BettiCell {
    p: usize,
    q: i64,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct BettiFile {
    p_max: usize,
    q_lo: i64,
    q_hi: i64,
    cells: Vec<BettiCell>,
}

impl BettiTable {
    pub fn dim(&self, p: usize, q: i64) -> Option<usize> {
        self.entries.get(&(p, q)).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = ((usize, i64), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn nonzero_cells(&self) -> impl Iterator<Item = ((usize, i64), usize)> + '_ {
        self.cells().filter(|&(_, v)| v > 0)
    }

    pub fn to_json(&self) -> String {
        let file = BettiFile {
            p_max: self.p_max,
            q_lo: self.q_lo,
            q_hi: self.q_hi,
            cells: self
                .cells()
                .map(|((p, q), dim)| BettiCell { p, q, dim })
                .collect(),
        };
        serde_json::to_string(&file).expect("betti serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: BettiFile =
            serde_json::from_str(text).map_err(|e| Error::schema("betti", e.to_string()))?;
        let mut entries = BTreeMap::new();
        for cell in file.cells {
            if entries.insert((cell.p, cell.q), cell.dim).is_some() {
                return Err(Error::schema(
                    "cells",
                    format!("duplicate cell ({}, {})", cell.p, cell.q),
                ));
            }
        }
        Ok(BettiTable {
            p_max: file.p_max,
            q_lo: file.q_lo,
            q_hi: file.q_hi,
            entries,
        })
    }
}

/// Computes the full table for p in 0..=p_max, q in q_lo..=q_hi. Ranks of the
/// individual differentials are shared between adjacent cells.
pub fn betti_table(
    table: &GradedModuleTable,
    p_max: usize,
    q_lo: i64,
    q_hi: i64,
) -> Result<BettiTable> {
    if q_lo > q_hi {
        return Err(Error::invalid(format!(
            "empty Betti window: q_lo = {q_lo}, q_hi = {q_hi}"
        )));
    }
    // fail before computing anything if some requested cell is out of reach
    for q in q_lo..=q_hi {
        if q >= table.q_min() && q + 1 > table.q_max() {
            return Err(Error::WindowTooSmall {
                p: 0,
                q,
                needed: q + 1,
                q_max: table.q_max(),
            });
        }
    }
    let mut rank_cache: BTreeMap<(usize, i64), (usize, usize)> = BTreeMap::new();
    let mut diff_stats = |p: usize, q: i64| -> Result<(usize, usize)> {
        if let Some(&hit) = rank_cache.get(&(p, q)) {
            return Ok(hit);
        }
        let d = koszul_differential(table, p, q)?;
        let stats = (d.rank(), d.cols());
        rank_cache.insert((p, q), stats);
        Ok(stats)
    };
    let mut entries = BTreeMap::new();
    for p in 0..=p_max {
        for q in q_lo..=q_hi {
            let value = if q < table.q_min() {
                0
            } else {
                let (out_rank, out_cols) = diff_stats(p, q)?;
                let (in_rank, _) = diff_stats(p + 1, q - 1)?;
                out_cols - out_rank - in_rank
            };
            entries.insert((p, q), value);
        }
    }
    Ok(BettiTable {
        p_max,
        q_lo,
        q_hi,
        entries,
    })
}

/// Result of the property-(N_p) check; on failure `witness` is the
/// lexicographically first nonzero cell (i, q) with i <= p and 2 <= q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NpReport {
    pub p: i64,
    pub q_bound: i64,
    pub holds: bool,
    pub witness: Option<(usize, i64)>,
}

/// Property (N_p) over the finite window 2 <= q <= q_bound: all K_{i,q} with
/// i <= p must vanish there. Nothing is claimed outside the computed window.
pub fn check_np(table: &GradedModuleTable, p: i64, q_bound: i64) -> Result<NpReport> {
    if q_bound < 2 {
        return Err(Error::invalid(format!(
            "q_bound must be at least 2 (property (N_p) quantifies over q >= 2), got {q_bound}"
        )));
    }
    if p >= 0 && table.q_max() < q_bound + 1 {
        let q = table.q_max().max(2);
        return Err(Error::WindowTooSmall {
            p: 0,
            q,
            needed: q + 1,
            q_max: table.q_max(),
        });
    }
    if p < 0 {
        return Ok(NpReport {
            p,
            q_bound,
            holds: true,
            witness: None,
        });
    }
    for i in 0..=p as usize {
        for q in 2..=q_bound {
            if koszul_cohomology_dim(table, i, q)? > 0 {
                return Ok(NpReport {
                    p,
                    q_bound,
                    holds: false,
                    witness: Some((i, q)),
                });
            }
        }
    }
    Ok(NpReport {
        p,
        q_bound,
        holds: true,
        witness: None,
    })
}

/// Both sides of the splitting law for an extension of the ambient space by
/// `extra` annihilating directions:
///   dim K_{p,q}(M; V)  vs  sum_i C(extra, p-i) * dim K_{i,q}(M; W).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitComparison {
    pub extended: usize,
    pub weighted_sum: usize,
    pub equal: bool,
}

pub fn splitting_check(
    table: &GradedModuleTable,
    extra: usize,
    p: usize,
    q: i64,
) -> Result<SplitComparison> {
    let extended_table = table.extend_by_annihilators(extra);
    let extended = koszul_cohomology_dim(&extended_table, p, q)?;
    let mut weighted_sum = 0usize;
    for i in 0..=p {
        let weight = binomial(extra, p - i);
        if weight == 0 {
            continue;
        }
        weighted_sum += weight * koszul_cohomology_dim(table, i, q)?;
    }
    Ok(SplitComparison {
        extended,
        weighted_sum,
        equal: extended == weighted_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn differential_two_variables_sign_rule() {
        // Sym of a 2-space, degrees 0..2; p = 2, q = 0:
        // e_{01} (x) 1 |-> e_{1} (x) x_0 - e_{0} (x) x_1.
        let table = fixtures::free_module(2, 2).unwrap();
        let d = koszul_differential(&table, 2, 0).unwrap();
        assert_eq!(d.rows(), 2 * 2);
        assert_eq!(d.cols(), 1);
        // M_1 basis is lex-sorted: index 0 = (0,1) = x_1, index 1 = (1,0) = x_0
        let col: Vec<i64> = (0..4)
            .map(|r| {
                let v = d.get(r, 0);
                if num_traits::Zero::is_zero(&v) {
                    0
                } else if v == crate::rational::rat_int(1) {
                    1
                } else {
                    -1
                }
            })
            .collect();
        // rows: (ext {0}, m 0..1), (ext {1}, m 0..1)
        assert_eq!(col, vec![-1, 0, 0, 1]);
    }

    #[test]
    fn differential_p_zero_has_zero_rows() {
        let table = fixtures::free_module(2, 2).unwrap();
        let d = koszul_differential(&table, 0, 0).unwrap();
        assert_eq!(d.rows(), 0);
        assert_eq!(d.cols(), 1);
    }

    #[test]
    fn differential_out_of_window() {
        let table = fixtures::free_module(2, 2).unwrap();
        let err = koszul_differential(&table, 1, 2).unwrap_err();
        assert!(matches!(err, Error::DegreeOutOfWindow { q: 3, .. }), "{err}");
    }

    #[test]
    fn composition_vanishes_on_fixtures() {
        let tables = [
            fixtures::free_module(3, 3).unwrap(),
            fixtures::rational_normal_curve(3, 3).unwrap(),
            fixtures::veronese(2, 2, 3).unwrap(),
        ];
        for table in &tables {
            for p in 1..=table.n() + 1 {
                for q in table.q_min()..table.q_max() - 1 {
                    let first = koszul_differential(table, p, q).unwrap();
                    let second = koszul_differential(table, p - 1, q + 1).unwrap();
                    assert!(second.mul(&first).unwrap().is_zero(), "p={p} q={q}");
                }
            }
        }
    }

    #[test]
    fn free_module_has_trivial_resolution() {
        for n in 1..=3 {
            let table = fixtures::free_module(n, 3).unwrap();
            for p in 0..=n {
                for q in 0..=2i64 {
                    let expected = usize::from(p == 0 && q == 0);
                    assert_eq!(
                        koszul_cohomology_dim(&table, p, q).unwrap(),
                        expected,
                        "n={n} p={p} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn twisted_cubic_cells() {
        let table = fixtures::rational_normal_curve(3, 3).unwrap();
        assert_eq!(koszul_cohomology_dim(&table, 1, 1).unwrap(), 3);
        assert_eq!(koszul_cohomology_dim(&table, 2, 1).unwrap(), 2);
    }

    #[test]
    fn quartic_quadric_count() {
        // quadrics through the rational normal quartic: C(6,2) - 9 = 6
        let table = fixtures::rational_normal_curve(4, 3).unwrap();
        assert_eq!(koszul_cohomology_dim(&table, 1, 1).unwrap(), 6);
    }

    #[test]
    fn twisted_cubic_betti_table() {
        let table = fixtures::rational_normal_curve(3, 3).unwrap();
        let betti = betti_table(&table, 3, 0, 2).unwrap();
        let nonzero: Vec<_> = betti.nonzero_cells().collect();
        assert_eq!(
            nonzero,
            vec![((0, 0), 1), ((1, 1), 3), ((2, 1), 2)]
        );
    }

    #[test]
    fn free_module_betti_table_has_single_cell() {
        let table = fixtures::free_module(2, 3).unwrap();
        let betti = betti_table(&table, 2, 0, 2).unwrap();
        let nonzero: Vec<_> = betti.nonzero_cells().collect();
        assert_eq!(nonzero, vec![((0, 0), 1)]);
    }

    #[test]
    fn quintic_has_linear_resolution() {
        let table = fixtures::rational_normal_curve(5, 3).unwrap();
        let betti = betti_table(&table, 5, 0, 2).unwrap();
        for p in 0..=5usize {
            let expected_nonzero = (1..=4).contains(&p);
            assert_eq!(betti.dim(p, 1).unwrap() > 0, expected_nonzero, "p={p}");
            assert_eq!(betti.dim(p, 2).unwrap(), 0, "p={p}");
        }
    }

    #[test]
    fn betti_json_round_trip() {
        let table = fixtures::rational_normal_curve(3, 3).unwrap();
        let betti = betti_table(&table, 3, 0, 2).unwrap();
        let back = BettiTable::from_json(&betti.to_json()).unwrap();
        assert_eq!(back, betti);
    }

    #[test]
    fn betti_window_too_small() {
        let table = fixtures::rational_normal_curve(3, 2).unwrap();
        let err = betti_table(&table, 2, 0, 2).unwrap_err();
        assert!(matches!(err, Error::WindowTooSmall { q: 2, .. }), "{err}");
    }

    #[test]
    fn np_holds_on_twisted_cubic() {
        let table = fixtures::rational_normal_curve(3, 4).unwrap();
        let report = check_np(&table, 1, 3).unwrap();
        assert!(report.holds);
        assert_eq!(report.witness, None);
    }

    #[test]
    fn np_fails_with_degree_two_generator() {
        let points = vec![vec![0], vec![1], vec![2], vec![3]];
        let table = fixtures::deleted_generator_module(&points, 3, 4).unwrap();
        let report = check_np(&table, 1, 3).unwrap();
        assert!(!report.holds);
        assert_eq!(report.witness, Some((0, 2)));
    }

    #[test]
    fn np_vacuous_for_negative_p() {
        let table = fixtures::rational_normal_curve(2, 4).unwrap();
        let report = check_np(&table, -1, 3).unwrap();
        assert!(report.holds);
    }

    #[test]
    fn np_window_and_bound_validation() {
        let table = fixtures::rational_normal_curve(2, 3).unwrap();
        let err = check_np(&table, 1, 3).unwrap_err();
        assert!(matches!(err, Error::WindowTooSmall { .. }), "{err}");
        assert!(check_np(&table, 1, 1).is_err());
    }

    #[test]
    fn splitting_trivial_extension() {
        let table = fixtures::rational_normal_curve(3, 3).unwrap();
        let cmp = splitting_check(&table, 0, 1, 1).unwrap();
        assert_eq!(cmp.extended, cmp.weighted_sum);
        assert_eq!(cmp.extended, 3);
    }

    #[test]
    fn splitting_twisted_cubic_examples() {
        let table = fixtures::rational_normal_curve(3, 3).unwrap();
        let cmp = splitting_check(&table, 1, 1, 1).unwrap();
        assert!(cmp.equal);
        assert_eq!(cmp.extended, 3); // C(1,1)*K_{0,1} + C(1,0)*K_{1,1} = 0 + 3
        let cmp = splitting_check(&table, 1, 2, 1).unwrap();
        assert!(cmp.equal);
        assert_eq!(cmp.extended, 5); // C(1,1)*3 + C(1,0)*2
    }

    #[test]
    fn subspace_cells_bounded_by_extension() {
        let table = fixtures::rational_normal_curve(3, 3).unwrap();
        let extended = table.extend_by_annihilators(2);
        for p in 0..=3usize {
            for q in 0..=2i64 {
                let small = koszul_cohomology_dim(&table, p, q).unwrap();
                let big = koszul_cohomology_dim(&extended, p, q).unwrap();
                assert!(small <= big, "p={p} q={q}: {small} > {big}");
            }
        }
    }

    #[test]
    fn ambient_bound_holds() {
        let table = fixtures::veronese(2, 2, 3).unwrap();
        for p in 0..=4usize {
            for q in 0..=2i64 {
                let dim = koszul_cohomology_dim(&table, p, q).unwrap();
                let bound = binomial(table.n(), p) * table.dim(q).unwrap();
                assert!(dim <= bound);
            }
        }
    }
}
