//! Polarized surfaces with numerically trivial canonical class, given by
//! Picard-lattice data, plus the numerical invariants used by the verdicts:
//! the minimal isotropic degree phi, the Enriques invariant mu, the general
//! Clifford index, the Seshadri certificate and the (-2)-chain identity.
//!
//! Every verdict is relative to the supplied lattice. Feeding a proper
//! sublattice of the surface's actual Picard group can only lose isotropic
//! classes, so phi may come out too large; certifying that the input is the
//! full Picard lattice is the caller's responsibility.

use serde::{Deserialize, Serialize};

use crate::enumerate::{classes_with, min_isotropic_degree, primitive_isotropic};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, PicardLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    K3,
    Abelian,
    Enriques,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::K3 => "k3",
            SurfaceKind::Abelian => "abelian",
            SurfaceKind::Enriques => "enriques",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "k3" => Ok(SurfaceKind::K3),
            "abelian" => Ok(SurfaceKind::Abelian),
            "enriques" => Ok(SurfaceKind::Enriques),
            other => Err(Error::invalid(format!(
                "unknown surface kind `{other}` (expected k3, abelian or enriques)"
            ))),
        }
    }
}

/// Geometric assertions the lattice cannot verify; the caller supplies them
/// and the verdicts require them where the underlying statements do.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFlags {
    #[serde(default)]
    pub ample: bool,
    #[serde(default)]
    pub globally_generated: bool,
}

#[derive(Clone, Debug)]
pub struct PolarizedSurface {
    kind: SurfaceKind,
    lattice: PicardLattice,
    polarization: DivisorClass,
    flags: SurfaceFlags,
}

impl PolarizedSurface {
    pub fn new(
        kind: SurfaceKind,
        lattice: PicardLattice,
        polarization: DivisorClass,
        flags: SurfaceFlags,
    ) -> Result<Self> {
        if polarization.coords.len() != lattice.rank() {
            return Err(Error::RankMismatch {
                expected: lattice.rank(),
                got: polarization.coords.len(),
            });
        }
        lattice.require_hyperbolic()?;
        let l2 = lattice.self_int(&polarization)?;
        if l2 <= 0 {
            return Err(Error::invalid(format!(
                "polarization must have (L^2) > 0, got {l2}"
            )));
        }
        match kind {
            SurfaceKind::K3 | SurfaceKind::Enriques => {
                if !lattice.is_even() {
                    return Err(Error::invalid(format!(
                        "{} surfaces have an even intersection form",
                        kind.name()
                    )));
                }
            }
            SurfaceKind::Abelian => {}
        }
        Ok(PolarizedSurface {
            kind,
            lattice,
            polarization,
            flags,
        })
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn lattice(&self) -> &PicardLattice {
        &self.lattice
    }

    pub fn polarization(&self) -> &DivisorClass {
        &self.polarization
    }

    pub fn flags(&self) -> SurfaceFlags {
        self.flags
    }

    pub fn with_flags(&self, flags: SurfaceFlags) -> Self {
        let mut s = self.clone();
        s.flags = flags;
        s
    }

    pub fn l2(&self) -> i64 {
        self.lattice
            .self_int(&self.polarization)
            .expect("validated at construction")
    }

    /// (L . x)
    pub fn degree_of(&self, x: &DivisorClass) -> Result<i64> {
        self.lattice.pair(&self.polarization, x)
    }

    pub fn self_int_of(&self, x: &DivisorClass) -> Result<i64> {
        self.lattice.self_int(x)
    }

    /// h^0(L) by Riemann-Roch with K numerically trivial and no higher
    /// cohomology: 2 + (L^2)/2 on K3, (L^2)/2 on abelian, 1 + (L^2)/2 on
    /// Enriques surfaces.
    pub fn h0(&self) -> Result<i64> {
        let l2 = self.l2();
        if l2 % 2 != 0 {
            return Err(Error::invalid(format!(
                "(L^2) = {l2} is odd; h^0 needs an even self-intersection"
            )));
        }
        Ok(match self.kind {
            SurfaceKind::K3 => 2 + l2 / 2,
            SurfaceKind::Abelian => l2 / 2,
            SurfaceKind::Enriques => 1 + l2 / 2,
        })
    }

    /// Complete list of classes x with (L.x) = degree, (x^2) = self_int.
    pub fn classes_with(&self, degree: i64, self_int: i64) -> Result<Vec<DivisorClass>> {
        classes_with(&self.lattice, &self.polarization, degree, self_int)
    }

    /// Primitive isotropic classes of the given degree.
    pub fn primitive_isotropic(&self, degree: i64) -> Result<Vec<DivisorClass>> {
        primitive_isotropic(&self.lattice, &self.polarization, degree)
    }

    /// phi(L): minimal |L.F| over nonzero isotropic F; None means no
    /// isotropic class exists in the lattice at all.
    pub fn phi(&self) -> Result<Option<i64>> {
        min_isotropic_degree(&self.lattice, &self.polarization)
    }

    pub fn to_json(&self) -> String {
        let file = SurfaceFile {
            kind: self.kind.name().to_string(),
            gram: self.lattice.gram().to_vec(),
            l: self.polarization.coords.clone(),
            flags: Some(self.flags),
        };
        serde_json::to_string(&file).expect("surface serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SurfaceFile =
            serde_json::from_str(text).map_err(|e| Error::schema("surface", e.to_string()))?;
        let kind = SurfaceKind::parse(&file.kind)
            .map_err(|e| Error::schema("kind", e.to_string()))?;
        let lattice =
            PicardLattice::new(file.gram).map_err(|e| Error::schema("gram", e.to_string()))?;
        PolarizedSurface::new(
            kind,
            lattice,
            DivisorClass::new(file.l),
            file.flags.unwrap_or_default(),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct SurfaceFile {
    kind: String,
    gram: Vec<Vec<i64>>,
    #[serde(rename = "L")]
    l: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    flags: Option<SurfaceFlags>,
}

/// The hyperbolic plane U: Gram [[0,1],[1,0]].
pub fn hyperbolic_plane() -> PicardLattice {
    PicardLattice::new(vec![vec![0, 1], vec![1, 0]]).expect("fixed matrix")
}

/// E8 root lattice with the sign reversed: even, unimodular, negative
/// definite of rank 8. Nodes follow the Bourbaki diagram: a chain
/// 0-2-3-4-5-6-7 with node 1 attached to node 3.
pub fn e8_negative() -> PicardLattice {
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut gram = vec![vec![0i64; 8]; 8];
    for i in 0..8 {
        gram[i][i] = -2;
    }
    for &(i, j) in &edges {
        gram[i][j] = 1;
        gram[j][i] = 1;
    }
    PicardLattice::new(gram).expect("fixed matrix")
}

/// U + E8(-1), the rank-10 even lattice of an unnodal Enriques surface
/// (numerical classes) and a familiar K3 sublattice.
pub fn u_plus_e8() -> PicardLattice {
    let u = hyperbolic_plane();
    let e8 = e8_negative();
    let mut gram = vec![vec![0i64; 10]; 10];
    for i in 0..2 {
        for j in 0..2 {
            gram[i][j] = u.gram()[i][j];
        }
    }
    for i in 0..8 {
        for j in 0..8 {
            gram[i + 2][j + 2] = e8.gram()[i][j];
        }
    }
    PicardLattice::new(gram).expect("fixed matrix")
}

/// Rank-one lattice <k> with k = 2n > 0 even.
pub fn rank_one(k: i64) -> Result<PicardLattice> {
    if k <= 0 || k % 2 != 0 {
        return Err(Error::invalid(format!(
            "rank-one fixture needs a positive even self-intersection, got {k}"
        )));
    }
    PicardLattice::new(vec![vec![k]])
}

/// Built-in lattice fixtures: "U", "U+E8(-1)" and "<2n>" for even 2n >= 2.
pub fn builtin_lattice(name: &str) -> Result<PicardLattice> {
    let trimmed = name.trim();
    match trimmed {
        "U" | "u" => Ok(hyperbolic_plane()),
        "U+E8(-1)" | "u+e8(-1)" | "U+E8" | "u+e8" => Ok(u_plus_e8()),
        _ => {
            if let Some(inner) = trimmed.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
                let k: i64 = inner.trim().parse().map_err(|_| {
                    Error::invalid(format!("cannot parse `{trimmed}` as a <2n> fixture"))
                })?;
                rank_one(k)
            } else {
                Err(Error::invalid(format!(
                    "unknown lattice fixture `{trimmed}` (expected U, U+E8(-1) or <2n>)"
                )))
            }
        }
    }
}

/// mu(L) on an Enriques surface: minimal (B.L) - 2 over classes B with
/// (B^2) = 4, phi(B) = 2 and B distinct from L. The scan is truncated at
/// (B.L) <= min(2 phi(L) - 2, floor(L^2/4)) + 2, beyond which no candidate
/// can move the Clifford-index minimum; None stands for the empty search.
pub fn mu(surface: &PolarizedSurface) -> Result<Option<i64>> {
    if surface.kind() != SurfaceKind::Enriques {
        return Err(Error::KindMismatch {
            expected: "enriques",
            got: surface.kind().name(),
        });
    }
    let phi = surface.phi()?;
    let cap_half = surface.l2() / 4;
    let cap = match phi {
        Some(p) => (2 * p - 2).min(cap_half),
        None => cap_half,
    } + 2;
    for degree in 1..=cap.max(0) {
        for b in surface.classes_with(degree, 4)? {
            if b == *surface.polarization() {
                continue;
            }
            if phi_equals_two(surface.lattice(), &b)? {
                return Ok(Some(degree - 2));
            }
        }
    }
    Ok(None)
}

/// phi(B) = 2 means: no isotropic class of B-degree 1, but one of degree 2.
fn phi_equals_two(lattice: &PicardLattice, b: &DivisorClass) -> Result<bool> {
    if !classes_with(lattice, b, 1, 0)?.is_empty() {
        return Ok(false);
    }
    Ok(!classes_with(lattice, b, 2, 0)?.is_empty())
}

/// Clifford index of a general curve in |L| on an Enriques surface:
/// min{2 phi(L) - 2, mu(L) - 2, floor(L^2/4)}. The caller must assert that L
/// is globally generated; terms with an infinite invariant drop out.
pub fn clifford_index_general_curve(surface: &PolarizedSurface) -> Result<i64> {
    if surface.kind() != SurfaceKind::Enriques {
        return Err(Error::KindMismatch {
            expected: "enriques",
            got: surface.kind().name(),
        });
    }
    if !surface.flags().globally_generated {
        return Err(Error::MissingFlag("globally_generated"));
    }
    let mut best = surface.l2() / 4;
    if let Some(phi) = surface.phi()? {
        best = best.min(2 * phi - 2);
    }
    if let Some(mu) = mu(surface)? {
        best = best.min(mu - 2);
    }
    Ok(best)
}

/// Outcome of the Seshadri-constant certificate at a very general point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeshadriOutcome {
    /// epsilon(L; x) > p + 2 at a very general point.
    Certified { exceeds: i64 },
    NoCertificate {
        failed_hypothesis: &'static str,
        witness: Option<DivisorClass>,
    },
}

impl SeshadriOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, SeshadriOutcome::Certified { .. })
    }
}

/// Certifies epsilon(L; x) > p + 2 at a very general point of a K3 or
/// abelian surface: requires 7 (L^2) > 8 (p+2)^2 and no nonzero isotropic
/// class of degree at most p + 2. Multiplicity m >= 2 exceptional curves are
/// excluded by (F^2) >= m^2 - m + 2 together with (m^2 - m + 2)/m^2 >= 7/8.
pub fn seshadri_certificate(surface: &PolarizedSurface, p: u32) -> Result<SeshadriOutcome> {
    match surface.kind() {
        SurfaceKind::K3 | SurfaceKind::Abelian => {}
        SurfaceKind::Enriques => {
            return Err(Error::KindMismatch {
                expected: "k3 or abelian",
                got: "enriques",
            })
        }
    }
    let l2 = i128::from(surface.l2());
    let bound = i128::from(p) + 2;
    if 7 * l2 <= 8 * bound * bound {
        return Ok(SeshadriOutcome::NoCertificate {
            failed_hypothesis: "self-intersection bound 7(L^2) > 8(p+2)^2",
            witness: None,
        });
    }
    for degree in 1..=(p as i64 + 2) {
        let found = surface.primitive_isotropic(degree)?;
        if let Some(witness) = found.into_iter().next() {
            return Ok(SeshadriOutcome::NoCertificate {
                failed_hypothesis: "no isotropic class of degree <= p+2",
                witness: Some(witness),
            });
        }
    }
    Ok(SeshadriOutcome::Certified {
        exceeds: p as i64 + 2,
    })
}

/// -(F^2) for F = sum n_i C_i supported on a chain of (-2)-curves meeting
/// transversally: n_1^2 + sum (n_i - n_{i+1})^2 + n_r^2. Always positive, so
/// such an F is never isotropic.
pub fn chain_self_intersection(multiplicities: &[i64]) -> Result<i64> {
    if multiplicities.is_empty() {
        return Err(Error::invalid("chain must carry at least one multiplicity"));
    }
    if let Some(bad) = multiplicities.iter().find(|&&n| n <= 0) {
        return Err(Error::invalid(format!(
            "chain multiplicities must be positive, got {bad}"
        )));
    }
    let first = multiplicities[0];
    let last = *multiplicities.last().unwrap();
    let mut total = first * first + last * last;
    for pair in multiplicities.windows(2) {
        let d = pair[0] - pair[1];
        total += d * d;
    }
    Ok(total)
}
