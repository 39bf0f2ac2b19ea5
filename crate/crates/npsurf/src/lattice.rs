//! Picard lattices: integral symmetric pairings, exact inertia, and the
//! integral preliminaries (extended gcd transforms) used by the class
//! enumeration.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat_int, Rational};

/// An integral lattice given by its Gram matrix. The surfaces in this crate
/// use signature (1, rank-1), but the type itself only insists on symmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardLattice {
    gram: Vec<Vec<i64>>,
}

/// A divisor class: integer coordinates in the fixed basis of the lattice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    pub coords: Vec<i64>,
}

impl DivisorClass {
    pub fn new(coords: Vec<i64>) -> Self {
        DivisorClass { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// gcd of the coordinates; zero for the zero class.
    pub fn content(&self) -> i64 {
        self.coords.iter().fold(0i64, |g, &c| gcd(g, c.abs()))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn neg(&self) -> Self {
        DivisorClass::new(self.coords.iter().map(|&c| -c).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        DivisorClass::new(self.coords.iter().map(|c| c * k).collect())
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl PicardLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::invalid("lattice rank must be at least 1"));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "gram row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::invalid(format!(
                        "gram matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(PicardLattice { gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// For an even lattice every self-intersection is even; this is
    /// equivalent to all diagonal entries being even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    fn check_len(&self, x: &DivisorClass) -> Result<()> {
        if x.coords.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: x.coords.len(),
            });
        }
        Ok(())
    }

    /// The intersection pairing x^T G y.
    pub fn pair(&self, x: &DivisorClass, y: &DivisorClass) -> Result<i64> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut acc: i128 = 0;
        for (i, &xi) in x.coords.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.coords.iter().enumerate() {
                acc += i128::from(xi) * i128::from(self.gram[i][j]) * i128::from(yj);
            }
        }
        i64::try_from(acc).map_err(|_| Error::invalid("intersection number overflows i64"))
    }

    pub fn self_int(&self, x: &DivisorClass) -> Result<i64> {
        self.pair(x, x)
    }

    /// G x as an integer vector.
    pub fn gram_times(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: x.len(),
            });
        }
        (0..self.rank())
            .map(|i| {
                let acc: i128 = (0..self.rank())
                    .map(|j| i128::from(self.gram[i][j]) * i128::from(x[j]))
                    .sum();
                i64::try_from(acc).map_err(|_| Error::invalid("Gram product overflows i64"))
            })
            .collect()
    }

    /// Exact inertia (positive, negative, zero eigenvalue counts) via a
    /// symmetric LDL^T decomposition over the rationals. When the remaining
    /// diagonal vanishes entirely a hyperbolic 2x2 pivot is used; its block
    /// [[0, b], [b, 0]] always contributes one eigenvalue of each sign.
    pub fn inertia(&self) -> (usize, usize, usize) {
        let n = self.rank();
        let mut a: Vec<Vec<Rational>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|&v| rat_int(v)).collect())
            .collect();
        let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
        let mut k = 0usize;
        let swap_sym = |a: &mut Vec<Vec<Rational>>, i: usize, j: usize| {
            if i == j {
                return;
            }
            a.swap(i, j);
            for row in a.iter_mut() {
                row.swap(i, j);
            }
        };
        while k < n {
            if let Some(i) = (k..n).find(|&i| !a[i][i].is_zero()) {
                swap_sym(&mut a, k, i);
                let d = a[k][k].clone();
                if d.is_positive() {
                    pos += 1;
                } else {
                    neg += 1;
                }
                for r in k + 1..n {
                    if a[r][k].is_zero() {
                        continue;
                    }
                    let f = &a[r][k] / &d;
                    for c in k..n {
                        let delta = &f * &a[k][c];
                        a[r][c] -= delta;
                    }
                }
                k += 1;
                continue;
            }
            // all remaining diagonal entries vanish
            let mut off = None;
            'scan: for i in k..n {
                for j in i + 1..n {
                    if !a[i][j].is_zero() {
                        off = Some((i, j));
                        break 'scan;
                    }
                }
            }
            let Some((i, j)) = off else {
                zero += n - k;
                break;
            };
            swap_sym(&mut a, k, i);
            swap_sym(&mut a, k + 1, j.max(k + 1));
            let b = a[k][k + 1].clone();
            pos += 1;
            neg += 1;
            for r in k + 2..n {
                let u = a[r][k].clone();
                let v = a[r][k + 1].clone();
                if u.is_zero() && v.is_zero() {
                    continue;
                }
                for c in k..n {
                    let delta = (&v * &a[k][c] + &u * &a[k + 1][c]) / &b;
                    a[r][c] -= delta;
                }
            }
            k += 2;
        }
        (pos, neg, zero)
    }

    /// Hyperbolic here means signature exactly (1, rank-1) and nondegenerate,
    /// the shape the Hodge index theorem forces on a Picard lattice.
    pub fn require_hyperbolic(&self) -> Result<()> {
        let (pos, neg, zero) = self.inertia();
        if pos == 1 && zero == 0 && neg == self.rank() - 1 {
            Ok(())
        } else {
            Err(Error::SignatureViolation { pos, neg, zero })
        }
    }

    /// Congruent lattice T^T G T for an integral basis change T (columns are
    /// the new basis vectors). Used by tests for invariance properties.
    pub fn basis_change(&self, t: &[Vec<i64>]) -> Result<PicardLattice> {
        let n = self.rank();
        if t.len() != n || t.iter().any(|c| c.len() != n) {
            return Err(Error::invalid("basis change matrix has the wrong shape"));
        }
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = 0;
                for r in 0..n {
                    for s in 0..n {
                        acc += i128::from(t[i][r])
                            * i128::from(self.gram[r][s])
                            * i128::from(t[j][s]);
                    }
                }
                gram[i][j] =
                    i64::try_from(acc).map_err(|_| Error::invalid("basis change overflows"))?;
            }
        }
        PicardLattice::new(gram)
    }
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g and g >= 0.
pub(crate) fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = extended_gcd(b, a.rem_euclid(b));
        (g, t, s - (a.div_euclid(b)) * t)
    }
}

/// Columns of a unimodular matrix T with w^T T = (g, 0, ..., 0), g = gcd(w).
/// The first column solves w.x = g; the remaining columns are a basis of the
/// integral kernel of w.
pub(crate) fn clear_linear_form(w: &[i64]) -> (i64, Vec<i128>, Vec<Vec<i128>>) {
    let n = w.len();
    let mut cols: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut u: Vec<i128> = w.iter().map(|&v| i128::from(v)).collect();
    for i in 1..n {
        if u[i] == 0 {
            continue;
        }
        if u[0] == 0 {
            cols.swap(0, i);
            u.swap(0, i);
            continue;
        }
        let (g, s, t) = extended_gcd(u[0], u[i]);
        let a = u[0] / g;
        let b = u[i] / g;
        let c0 = cols[0].clone();
        let ci = cols[i].clone();
        for r in 0..n {
            cols[0][r] = s * c0[r] + t * ci[r];
            cols[i][r] = -b * c0[r] + a * ci[r];
        }
        u[0] = g;
        u[i] = 0;
    }
    if u[0] < 0 {
        for v in cols[0].iter_mut() {
            *v = -*v;
        }
        u[0] = -u[0];
    }
    let kernel = cols.split_off(1);
    let g = i64::try_from(u[0]).expect("gcd fits i64");
    (g, cols.pop().unwrap(), kernel)
}
