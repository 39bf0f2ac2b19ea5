//! Complete enumeration of divisor classes with prescribed L-degree and
//! self-intersection.
//!
//! The slice {x : L.x = d} is a coset of the orthogonal complement of L,
//! which is negative definite whenever the lattice has signature (1, rank-1)
//! and (L^2) > 0. On that coset the self-intersection condition becomes an
//! inhomogeneous positive definite equation, solved exactly by
//! Fincke-Pohst-style backtracking over the rationals. Completeness is
//! contractual: every class with the requested invariants is returned.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{clear_linear_form, DivisorClass, PicardLattice};
use crate::rational::{rat_int, BigInt, Rational};

/// All classes x with (L.x) = degree and (x^2) = self_int, sorted by
/// coordinates. Requires degree >= 1 and a hyperbolic lattice.
pub fn classes_with(
    lat: &PicardLattice,
    l: &DivisorClass,
    degree: i64,
    self_int: i64,
) -> Result<Vec<DivisorClass>> {
    if degree < 1 {
        return Err(Error::invalid(format!(
            "slice enumeration needs degree >= 1, got {degree}"
        )));
    }
    lat.require_hyperbolic()?;
    let l2 = lat.self_int(l)?;
    if l2 <= 0 {
        return Err(Error::invalid(format!(
            "polarization must have positive self-intersection, got {l2}"
        )));
    }

    let w = lat.gram_times(&l.coords)?;
    let (g, t0, kernel) = clear_linear_form(&w);
    debug_assert!(g > 0);
    if degree % g != 0 {
        return Ok(Vec::new());
    }
    let scale = i128::from(degree / g);
    let x0: Vec<i128> = t0.iter().map(|&v| v * scale).collect();
    let rho = lat.rank();
    let m = rho - 1;

    let to_class = |coords: &[i128]| -> Result<DivisorClass> {
        let coords = coords
            .iter()
            .map(|&v| i64::try_from(v).map_err(|_| Error::invalid("class coordinate overflows i64")))
            .collect::<Result<Vec<i64>>>()?;
        Ok(DivisorClass::new(coords))
    };

    let pair_i128 = |x: &[i128], y: &[i128]| -> i128 {
        let gram = lat.gram();
        let mut acc = 0i128;
        for i in 0..rho {
            if x[i] == 0 {
                continue;
            }
            for j in 0..rho {
                acc += x[i] * i128::from(gram[i][j]) * y[j];
            }
        }
        acc
    };

    if m == 0 {
        let x = to_class(&x0)?;
        return if lat.self_int(&x)? == self_int {
            Ok(vec![x])
        } else {
            Ok(Vec::new())
        };
    }

    // Restricted data: P = -(K^T G K) is positive definite, b = K^T G x0.
    let mut p = vec![vec![Rational::zero(); m]; m];
    for i in 0..m {
        for j in 0..m {
            p[i][j] = -big(pair_i128(&kernel[i], &kernel[j]));
        }
    }
    let b: Vec<Rational> = (0..m).map(|i| big(pair_i128(&kernel[i], &x0))).collect();

    let (diag, upper) = ldl_positive_definite(&p)?;
    let c = solve_ldl(&diag, &upper, &b);
    let x0_sq = big(pair_i128(&x0, &x0));
    // (y - c)^T P (y - c) = (x0^2 - s) + b.c  must hold exactly.
    let mut radius = x0_sq - big(i128::from(self_int));
    for (bi, ci) in b.iter().zip(&c) {
        radius += bi * ci;
    }
    if radius.is_negative() {
        return Ok(Vec::new());
    }

    let mut solutions = Vec::new();
    let mut y = vec![0i128; m];
    enumerate_level(&diag, &upper, &c, m, &radius, &mut y, &mut |y| {
        let mut coords = x0.clone();
        for (col, &yi) in kernel.iter().zip(y.iter()) {
            for (r, &v) in col.iter().enumerate() {
                coords[r] += v * yi;
            }
        }
        solutions.push(coords);
    });

    let mut classes = Vec::with_capacity(solutions.len());
    for coords in &solutions {
        let class = to_class(coords)?;
        // enumeration is exact; any mismatch here is a bug
        assert_eq!(lat.pair(&class, l)?, degree);
        assert_eq!(lat.self_int(&class)?, self_int);
        classes.push(class);
    }
    classes.sort();
    Ok(classes)
}

fn big(v: i128) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// LDL^T of a positive definite rational matrix: P = U^T D U with U unit
/// upper triangular. Fails with a signature error if some pivot is not
/// positive, which signals an indefinite complement.
fn ldl_positive_definite(p: &[Vec<Rational>]) -> Result<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let m = p.len();
    let mut a: Vec<Vec<Rational>> = p.to_vec();
    let mut diag = vec![Rational::zero(); m];
    let mut upper = vec![vec![Rational::zero(); m]; m];
    for k in 0..m {
        let d = a[k][k].clone();
        if !d.is_positive() {
            return Err(Error::invalid(
                "complement of the polarization is not negative definite",
            ));
        }
        diag[k] = d.clone();
        upper[k][k] = rat_int(1);
        for j in k + 1..m {
            upper[k][j] = &a[k][j] / &d;
        }
        for i in k + 1..m {
            let f = &a[k][i] / &d;
            for j in k + 1..m {
                let delta = &f * &a[k][j];
                a[i][j] -= delta;
            }
        }
    }
    Ok((diag, upper))
}

/// Solves U^T D U c = b.
fn solve_ldl(diag: &[Rational], upper: &[Vec<Rational>], b: &[Rational]) -> Vec<Rational> {
    let m = b.len();
    let mut z = b.to_vec();
    for i in 0..m {
        for j in 0..i {
            let delta = &upper[j][i] * &z[j];
            z[i] -= delta;
        }
    }
    for i in 0..m {
        z[i] = &z[i] / &diag[i];
    }
    let mut c = z;
    for i in (0..m).rev() {
        for j in i + 1..m {
            let delta = &upper[i][j] * &c[j];
            c[i] -= delta;
        }
    }
    c
}

/// Backtracks over integer vectors y with (y - c)^T P (y - c) = radius,
/// using the diagonalized form sum_i D_i (y_i - t_i)^2 where t_i folds in the
/// already-fixed higher coordinates. `level` counts down; a leaf is accepted
/// only when the remaining budget is exactly zero.
fn enumerate_level(
    diag: &[Rational],
    upper: &[Vec<Rational>],
    c: &[Rational],
    level: usize,
    remaining: &Rational,
    y: &mut Vec<i128>,
    emit: &mut impl FnMut(&[i128]),
) {
    if level == 0 {
        if remaining.is_zero() {
            emit(y);
        }
        return;
    }
    let i = level - 1;
    let mut target = c[i].clone();
    for j in level..c.len() {
        let yj = big(y[j]);
        target -= &upper[i][j] * &(yj - &c[j]);
    }
    let floor = target.floor().to_integer();
    let try_value = |k: &BigInt| -> Option<Rational> {
        let dev = Rational::from_integer(k.clone()) - &target;
        let used = &diag[i] * &dev * &dev;
        if used <= *remaining {
            Some(remaining - used)
        } else {
            None
        }
    };
    let as_i128 = |k: &BigInt| num_traits::ToPrimitive::to_i128(k).expect("coordinate fits i128");
    let mut k = floor.clone();
    while let Some(rest) = try_value(&k) {
        y[i] = as_i128(&k);
        enumerate_level(diag, upper, c, i, &rest, y, emit);
        k -= 1;
    }
    let mut k = floor + 1;
    while let Some(rest) = try_value(&k) {
        y[i] = as_i128(&k);
        enumerate_level(diag, upper, c, i, &rest, y, emit);
        k += 1;
    }
}

/// Primitive classes with (F^2) = 0 and (L.F) = degree. Imprimitive
/// isotropic classes are multiples of primitive ones of smaller degree, so
/// reporting primitives loses nothing.
pub fn primitive_isotropic(
    lat: &PicardLattice,
    l: &DivisorClass,
    degree: i64,
) -> Result<Vec<DivisorClass>> {
    Ok(classes_with(lat, l, degree, 0)?
        .into_iter()
        .filter(DivisorClass::is_primitive)
        .collect())
}

/// Minimal |L.F| over nonzero isotropic classes F, or None when the lattice
/// has no isotropic vectors at all.
///
/// Termination certificate for the None answer: by Cassels' bound, an
/// isotropic integral form has an isotropic vector of Euclidean length at
/// most (3H)^((rank-1)/2), H the largest coefficient magnitude; its L-degree
/// is then at most that length times |G L|. Searching every degree up to that
/// bound is therefore exhaustive. Rank 1 never has isotropic vectors and
/// rank 2 has them exactly when the discriminant is a perfect square, which
/// avoids the long scan in the common small cases.
pub fn min_isotropic_degree(lat: &PicardLattice, l: &DivisorClass) -> Result<Option<i64>> {
    lat.require_hyperbolic()?;
    let l2 = lat.self_int(l)?;
    if l2 <= 0 {
        return Err(Error::invalid(
            "polarization must have positive self-intersection",
        ));
    }
    let rho = lat.rank();
    if rho == 1 {
        return Ok(None);
    }
    if rho == 2 && !rank2_has_isotropic(lat) {
        return Ok(None);
    }
    let w = lat.gram_times(&l.coords)?;
    let bound = cassels_degree_bound(lat, &w);
    let mut d = 1i64;
    loop {
        if BigInt::from(d) > bound {
            return Ok(None);
        }
        if !classes_with(lat, l, d, 0)?.is_empty() {
            return Ok(Some(d));
        }
        d += 1;
    }
}

fn rank2_has_isotropic(lat: &PicardLattice) -> bool {
    // form a x^2 + 2b xy + c y^2: rational zeros exist iff b^2 - ac is a square
    let g = lat.gram();
    let disc = i128::from(g[0][1]) * i128::from(g[0][1])
        - i128::from(g[0][0]) * i128::from(g[1][1]);
    if disc < 0 {
        return false;
    }
    let root = BigInt::from(disc).sqrt();
    &root * &root == BigInt::from(disc)
}

fn cassels_degree_bound(lat: &PicardLattice, w: &[i64]) -> BigInt {
    let rho = lat.rank();
    let mut h: i64 = 0;
    for i in 0..rho {
        for j in 0..rho {
            let coeff = if i == j {
                lat.gram()[i][j].abs()
            } else {
                2 * lat.gram()[i][j].abs()
            };
            h = h.max(coeff);
        }
    }
    // |x.L| <= ||x|| * ||w||; ||x||^2 <= (3H)^(rank-1)
    let len_sq = BigInt::from(3 * h.max(1)).pow(rho as u32 - 1);
    let w_sq: BigInt = w.iter().map(|&v| BigInt::from(v) * BigInt::from(v)).sum();
    (len_sq * w_sq).sqrt() + 1
}
