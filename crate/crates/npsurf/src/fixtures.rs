//! Module fixtures built from lattice-point configurations.
//!
//! A finite set of points in Z^m spans a graded semigroup module: the
//! degree-q piece is spanned by the q-fold sums of points, and multiplication
//! by the j-th generator translates a lattice point by points[j]. These
//! tables cover monomial coordinate rings (rational normal curves, Veronese
//! embeddings) without any Groebner machinery.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graded::GradedModuleTable;
use crate::matrix::RationalMatrix;
use crate::rational::rat_int;

/// Semigroup module of a point configuration: M_0 = span{0}, M_q = span of
/// all q-fold sums. The basis of each graded piece is sorted
/// lexicographically; the basis of V is the input point order.
pub fn point_configuration(points: &[Vec<i64>], q_max: i64) -> Result<GradedModuleTable> {
    let layers = semigroup_layers(points, q_max)?;
    build_table(points, &layers, 0)
}

/// Same configuration with the degree-0 piece removed and one degree-1
/// basis point dropped. The result is a genuine module whose generators sit
/// in degrees 1 and 2, so K_{0,2} is nonzero by construction whenever the
/// dropped point is needed to reach some degree-2 sum.
pub fn deleted_generator_module(
    points: &[Vec<i64>],
    drop: usize,
    q_max: i64,
) -> Result<GradedModuleTable> {
    let mut layers = semigroup_layers(points, q_max)?;
    if drop >= layers[1].len() {
        return Err(Error::invalid(format!(
            "cannot drop degree-1 element {drop}: only {} available",
            layers[1].len()
        )));
    }
    layers[0].clear();
    layers[1].remove(drop);
    build_table(points, &layers, 0)
}

/// The free module Sym(V) itself, presented as the configuration of the n
/// standard basis vectors of Z^n.
pub fn free_module(n: usize, q_max: i64) -> Result<GradedModuleTable> {
    if n == 0 {
        return Err(Error::invalid("free module needs n >= 1"));
    }
    let points: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(j == i)).collect())
        .collect();
    point_configuration(&points, q_max)
}

/// Rational normal curve of degree d: the configuration {0, 1, ..., d} in Z.
pub fn rational_normal_curve(d: usize, q_max: i64) -> Result<GradedModuleTable> {
    if d == 0 {
        return Err(Error::invalid("rational normal curve needs degree d >= 1"));
    }
    let points: Vec<Vec<i64>> = (0..=d as i64).map(|k| vec![k]).collect();
    point_configuration(&points, q_max)
}

/// Veronese embedding of P^n by degree-d forms: all exponent vectors of
/// degree-d monomials in n+1 variables, in lexicographic order.
pub fn veronese(n: usize, d: usize, q_max: i64) -> Result<GradedModuleTable> {
    if d == 0 {
        return Err(Error::invalid("veronese needs degree d >= 1"));
    }
    let mut points = monomial_exponents(n + 1, d as i64);
    points.sort();
    point_configuration(&points, q_max)
}

/// All nonnegative integer vectors of length `vars` with coordinate sum `total`.
fn monomial_exponents(vars: usize, total: i64) -> Vec<Vec<i64>> {
    fn rec(vars: usize, total: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if vars == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(vars - 1, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, total, &mut Vec::new(), &mut out);
    out
}

fn semigroup_layers(points: &[Vec<i64>], q_max: i64) -> Result<Vec<Vec<Vec<i64>>>> {
    if points.is_empty() {
        return Err(Error::invalid("point configuration must be nonempty"));
    }
    if q_max < 1 {
        return Err(Error::invalid(format!("q_max must be at least 1, got {q_max}")));
    }
    let dim = points[0].len();
    if dim == 0 {
        return Err(Error::invalid("points must live in Z^m with m >= 1"));
    }
    let mut seen = BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(Error::invalid(format!(
                "point {i} has dimension {}, expected {dim}",
                p.len()
            )));
        }
        if !seen.insert(p.clone()) {
            return Err(Error::invalid(format!("duplicate point at index {i}")));
        }
    }
    let mut layers: Vec<Vec<Vec<i64>>> = vec![vec![vec![0; dim]]];
    for _ in 0..q_max {
        let prev = layers.last().unwrap();
        let mut next = BTreeSet::new();
        for s in prev {
            for p in points {
                let sum: Vec<i64> = s.iter().zip(p).map(|(a, b)| a + b).collect();
                next.insert(sum);
            }
        }
        layers.push(next.into_iter().collect());
    }
    Ok(layers)
}

fn build_table(
    points: &[Vec<i64>],
    layers: &[Vec<Vec<i64>>],
    q_min: i64,
) -> Result<GradedModuleTable> {
    let q_max = q_min + layers.len() as i64 - 1;
    let dims: Vec<usize> = layers.iter().map(Vec::len).collect();
    let mut mult = Vec::with_capacity(layers.len() - 1);
    for qi in 0..layers.len() - 1 {
        let source = &layers[qi];
        let target = &layers[qi + 1];
        let mut maps = Vec::with_capacity(points.len());
        for p in points {
            let mut triplets = Vec::with_capacity(source.len());
            for (col, s) in source.iter().enumerate() {
                let sum: Vec<i64> = s.iter().zip(p).map(|(a, b)| a + b).collect();
                let row = target
                    .binary_search(&sum)
                    .map_err(|_| Error::invalid("translated point missing from next layer"))?;
                triplets.push((row, col, rat_int(1)));
            }
            maps.push(RationalMatrix::from_triplets(target.len(), source.len(), triplets)?);
        }
        mult.push(maps);
    }
    GradedModuleTable::new(points.len(), q_min, q_max, dims, mult)
}
