//! Decision procedures for property (N_p) on polarized surfaces with
//! numerically trivial canonical class, driven entirely by Picard-lattice
//! data. Each procedure is hypothesis-honest: outside its numeric range it
//! answers HypothesisNotMet instead of extrapolating, and any reliance on a
//! class standing in for an actual curve is recorded as a "numerical
//! witness" note.

use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::DivisorClass;
use crate::rational::BigInt;
use crate::surface::{seshadri_certificate, PolarizedSurface, SurfaceFlags, SurfaceKind};
use crate::verdict::{Outcome, Verdict, Witness};

pub const GL_SECANT: &str = "GL-secant";
const NUMERICAL_WITNESS: &str =
    "numerical witness: effectivity and smoothness of representatives not certified";

fn witness_of(surface: &PolarizedSurface, class: &DivisorClass) -> Result<Witness> {
    Ok(Witness {
        coords: class.coords.clone(),
        degree: surface.degree_of(class)?,
        self_int: surface.self_int_of(class)?,
    })
}

/// Primitive isotropic witnesses at the smallest degree in lo..=hi, if any.
fn minimal_isotropic_witnesses(
    surface: &PolarizedSurface,
    lo: i64,
    hi: i64,
) -> Result<Vec<Witness>> {
    for degree in lo..=hi {
        let classes = surface.primitive_isotropic(degree)?;
        if !classes.is_empty() {
            return classes.iter().map(|c| witness_of(surface, c)).collect();
        }
    }
    Ok(Vec::new())
}

/// All classes with (F^2) = 2 and lo <= (L.F) <= hi.
fn genus_two_witnesses(surface: &PolarizedSurface, lo: i64, hi: i64) -> Result<Vec<Witness>> {
    let mut out = Vec::new();
    for degree in lo..=hi {
        for class in surface.classes_with(degree, 2)? {
            out.push(witness_of(surface, &class)?);
        }
    }
    Ok(out)
}

fn require_kind(surface: &PolarizedSurface, allowed: &[SurfaceKind], expected: &'static str) -> Result<()> {
    if allowed.contains(&surface.kind()) {
        Ok(())
    } else {
        Err(Error::KindMismatch {
            expected,
            got: surface.kind().name(),
        })
    }
}

fn require_flag(cond: bool, name: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::MissingFlag(name))
    }
}

/// Property (N_p) for an ample L with (L^2) >= 5(p+2)^2 on a K3 or abelian
/// surface is equivalent to the absence of isotropic classes F with
/// 1 <= (L.F) <= p+2. Below the threshold the verdict is HypothesisNotMet.
pub fn theorem_a_verdict(surface: &PolarizedSurface, p: u32) -> Result<Verdict> {
    require_kind(surface, &[SurfaceKind::K3, SurfaceKind::Abelian], "k3 or abelian")?;
    let l2 = surface.l2();
    let threshold = 5 * (i64::from(p) + 2) * (i64::from(p) + 2);
    if l2 < threshold {
        return Ok(Verdict::new(Outcome::HypothesisNotMet, p).hypothesis(
            "(L^2) >= 5(p+2)^2",
            false,
            &[("l2", l2), ("threshold", threshold)],
        ));
    }
    let bound = i64::from(p) + 2;
    let witnesses = minimal_isotropic_witnesses(surface, 1, bound)?;
    let mut verdict = if witnesses.is_empty() {
        Verdict::new(Outcome::HoldsNp, p).hypothesis(
            "no isotropic class with 1 <= (L.F) <= p+2",
            true,
            &[("searched_degree_bound", bound)],
        )
    } else {
        Verdict::new(Outcome::FailsNp, p)
            .hypothesis(
                "no isotropic class with 1 <= (L.F) <= p+2",
                false,
                &[("searched_degree_bound", bound)],
            )
            .witnesses(witnesses)
            .note(NUMERICAL_WITNESS)
    };
    verdict = verdict.hypothesis(
        "(L^2) >= 5(p+2)^2",
        true,
        &[("l2", l2), ("threshold", threshold)],
    );
    if surface.kind() == SurfaceKind::Abelian {
        verdict = verdict.note("abelian case decided by the same lattice criterion as K3");
    }
    Ok(verdict)
}

/// Sharper K3 thresholds. Branch (a): for (L^2) > (p+4)^2/2 the isotropic
/// criterion is equivalent to (N_p) outright. Branch (b): for
/// (L^2) > (p+6)^2/4 the same holds unless some class with (F^2) = 2 and
/// 1 <= (L.F) <= p+4 exists, in which case the verdict is Inconclusive and
/// the genus-two obstruction may still settle it.
pub fn k3_sharp_verdict(surface: &PolarizedSurface, p: u32) -> Result<Verdict> {
    require_kind(surface, &[SurfaceKind::K3], "k3")?;
    require_flag(surface.flags().ample, "ample")?;
    let l2 = surface.l2();
    let p64 = i64::from(p);
    let branch_a = 2 * l2 > (p64 + 4) * (p64 + 4);
    let branch_b = 4 * l2 > (p64 + 6) * (p64 + 6);
    let thresholds = |v: Verdict| -> Verdict {
        v.hypothesis(
            "2(L^2) > (p+4)^2",
            branch_a,
            &[("two_l2", 2 * l2), ("rhs", (p64 + 4) * (p64 + 4))],
        )
        .hypothesis(
            "4(L^2) > (p+6)^2",
            branch_b,
            &[("four_l2", 4 * l2), ("rhs", (p64 + 6) * (p64 + 6))],
        )
    };
    if !branch_a && !branch_b {
        return Ok(thresholds(Verdict::new(Outcome::HypothesisNotMet, p)));
    }
    if !branch_a {
        let exceptions = genus_two_witnesses(surface, 1, p64 + 4)?;
        if !exceptions.is_empty() {
            return Ok(thresholds(Verdict::new(Outcome::Inconclusive, p))
                .hypothesis(
                    "no genus-two class with 1 <= (L.F) <= p+4",
                    false,
                    &[("searched_degree_bound", p64 + 4)],
                )
                .witnesses(exceptions)
                .note("genus-two exception: consult the genus-two obstruction"));
        }
    }
    let witnesses = minimal_isotropic_witnesses(surface, 1, p64 + 2)?;
    let verdict = if witnesses.is_empty() {
        Verdict::new(Outcome::HoldsNp, p).hypothesis(
            "no isotropic class with 1 <= (L.F) <= p+2",
            true,
            &[("searched_degree_bound", p64 + 2)],
        )
    } else {
        Verdict::new(Outcome::FailsNp, p)
            .hypothesis(
                "no isotropic class with 1 <= (L.F) <= p+2",
                false,
                &[("searched_degree_bound", p64 + 2)],
            )
            .witnesses(witnesses)
            .note(NUMERICAL_WITNESS)
    };
    Ok(thresholds(verdict))
}

/// A smooth genus-two curve of low degree obstructs (N_p): with L ample and
/// globally generated, (L^2) above the kind-specific threshold, and a class
/// F with (F^2) = 2 and 3 <= (L.F) <= p+4, property (N_p) fails. The lattice
/// only certifies the class, hence the numerical-witness note.
pub fn genus_two_obstruction(surface: &PolarizedSurface, p: u32) -> Result<Verdict> {
    require_flag(surface.flags().ample, "ample")?;
    require_flag(surface.flags().globally_generated, "globally_generated")?;
    let p64 = i64::from(p);
    let threshold = match surface.kind() {
        SurfaceKind::K3 => 3 * p64 + 6,
        SurfaceKind::Abelian => 3 * p64 + 14,
        SurfaceKind::Enriques => 3 * p64 + 7,
    };
    let l2 = surface.l2();
    let verdict = Verdict::new(Outcome::Inconclusive, p).hypothesis(
        "(L^2) >= kind threshold",
        l2 >= threshold,
        &[("l2", l2), ("threshold", threshold)],
    );
    if l2 < threshold {
        return Ok(verdict);
    }
    // a very ample restriction forces (L.F) >= 3
    let witnesses = genus_two_witnesses(surface, 3, p64 + 4)?;
    if witnesses.is_empty() {
        return Ok(verdict.hypothesis(
            "genus-two class with 3 <= (L.F) <= p+4 exists",
            false,
            &[("searched_degree_bound", p64 + 4)],
        ));
    }
    Ok(Verdict::new(Outcome::FailsNp, p)
        .hypothesis(
            "(L^2) >= kind threshold",
            true,
            &[("l2", l2), ("threshold", threshold)],
        )
        .hypothesis(
            "genus-two class with 3 <= (L.F) <= p+4 exists",
            true,
            &[("searched_degree_bound", p64 + 4)],
        )
        .witnesses(witnesses)
        .note(NUMERICAL_WITNESS))
}

/// Property (N_p) for multiples m*L of an ample L on a K3 surface, covering
/// m in {p, p+1, p+2, p+3}; for m <= p+2 the statements assume p >= 2.
pub fn mukai_multiple_verdict(surface: &PolarizedSurface, m: u32, p: u32) -> Result<Verdict> {
    require_kind(surface, &[SurfaceKind::K3], "k3")?;
    require_flag(surface.flags().ample, "ample")?;
    if !(p..=p + 3).contains(&m) || (m < p + 3 && p < 2) {
        return Err(Error::NoTheoremApplies { m, p });
    }
    let l2 = surface.l2();
    let base = |v: Verdict| {
        v.hypothesis(
            "covered multiple",
            true,
            &[("m", i64::from(m)), ("p", i64::from(p)), ("l2", l2)],
        )
    };
    // criterion: fails exactly when an isotropic class of L-degree <= cap exists
    let degree_criterion = |cap: i64| -> Result<Verdict> {
        let witnesses = minimal_isotropic_witnesses(surface, 1, cap)?;
        let name = if cap == 1 {
            "no isotropic class with (L.E) = 1"
        } else {
            "no isotropic class with (L.E) <= 2"
        };
        Ok(if witnesses.is_empty() {
            base(Verdict::new(Outcome::HoldsNp, p)).hypothesis(name, true, &[("cap", cap)])
        } else {
            base(Verdict::new(Outcome::FailsNp, p))
                .hypothesis(name, false, &[("cap", cap)])
                .witnesses(witnesses)
                .note(NUMERICAL_WITNESS)
        })
    };
    // for the unconditional failures the obstructing curve lives in |mL|
    let fails_by_clifford = || -> Result<Verdict> {
        let scaled = surface.polarization().scale(i64::from(m));
        Ok(base(Verdict::new(Outcome::FailsNp, p))
            .witness(witness_of(surface, &scaled)?)
            .note("witness is the class of the obstructing curve in |mL|: its general member has Clifford index at most p"))
    };
    match m - p {
        3 => Ok(base(Verdict::new(Outcome::HoldsNp, p))
            .note("(p+3)L always satisfies (N_p) on a K3 surface")),
        2 => degree_criterion(1),
        1 => {
            if l2 >= 4 || p > 2 {
                degree_criterion(1)
            } else {
                // l2 = 2, p = 2: 3L never satisfies (N_2)
                fails_by_clifford()
            }
        }
        0 => {
            if (l2 >= 4 && p > 2) || (l2 == 2 && p > 4) {
                degree_criterion(1)
            } else if p == 2 && l2 >= 6 {
                degree_criterion(2)
            } else {
                // remaining cases: (l2 = 4, p = 2) and (l2 = 2, p in {2,3,4})
                fails_by_clifford()
            }
        }
        _ => unreachable!("m validated above"),
    }
}

/// Theorem for Enriques surfaces: with L ample, globally generated and
/// (L^2) > 4(p+2)^2, property (N_p) holds exactly when no isotropic class of
/// degree at most p+2 exists. The positive direction is conditional on the
/// secant conjecture for a general curve in |L|; the failure direction is
/// not, since it only restricts to curves.
pub fn enriques_verdict(surface: &PolarizedSurface, p: u32) -> Result<Verdict> {
    require_kind(surface, &[SurfaceKind::Enriques], "enriques")?;
    require_flag(surface.flags().ample, "ample")?;
    require_flag(surface.flags().globally_generated, "globally_generated")?;
    let l2 = surface.l2();
    let p64 = i64::from(p);
    let threshold = 4 * (p64 + 2) * (p64 + 2);
    if l2 <= threshold {
        return Ok(Verdict::new(Outcome::HypothesisNotMet, p).hypothesis(
            "(L^2) > 4(p+2)^2",
            false,
            &[("l2", l2), ("threshold", threshold)],
        ));
    }
    let witnesses = minimal_isotropic_witnesses(surface, 1, p64 + 2)?;
    let verdict = if witnesses.is_empty() {
        Verdict::new(Outcome::HoldsNp, p)
            .hypothesis(
                "no primitive isotropic class with 1 <= (L.F) <= p+2",
                true,
                &[("searched_degree_bound", p64 + 2)],
            )
            .conditional_on(GL_SECANT)
    } else {
        Verdict::new(Outcome::FailsNp, p)
            .hypothesis(
                "no primitive isotropic class with 1 <= (L.F) <= p+2",
                false,
                &[("searched_degree_bound", p64 + 2)],
            )
            .witnesses(witnesses)
            .note(NUMERICAL_WITNESS)
            .note("failure direction holds unconditionally")
    };
    Ok(verdict.hypothesis(
        "(L^2) > 4(p+2)^2",
        true,
        &[("l2", l2), ("threshold", threshold)],
    ))
}

/// Restricting to a reduced effective divisor of arithmetic genus at least
/// one and degree at most p+2 contradicts (N_p). With K numerically trivial,
/// p_a(F) >= 1 amounts to (F^2) >= 0.
pub fn restriction_obstruction(
    surface: &PolarizedSurface,
    class: &DivisorClass,
    p: u32,
) -> Result<Verdict> {
    let f2 = surface.self_int_of(class)?;
    let degree = surface.degree_of(class)?;
    let p64 = i64::from(p);
    let fires = f2 >= 0 && (1..=p64 + 2).contains(&degree);
    let outcome = if fires {
        Outcome::FailsNp
    } else {
        Outcome::Inconclusive
    };
    let mut verdict = Verdict::new(outcome, p)
        .hypothesis("p_a(F) >= 1, i.e. (F^2) >= 0", f2 >= 0, &[("f2", f2)])
        .hypothesis(
            "1 <= (L.F) <= p+2",
            (1..=p64 + 2).contains(&degree),
            &[("degree", degree), ("bound", p64 + 2)],
        )
        .note("caller asserts F effective and reduced, L ample and globally generated");
    if fires {
        verdict = verdict.witness(witness_of(surface, class)?);
    }
    Ok(verdict)
}

/// Slope-stability sufficient condition for the wedge-power vanishing used
/// by the curve-restriction lemma. Returns whether
///   (h0 - p - 2) (L^2) > (h0 - 1) (F.L)
/// holds, together with the exact first Chern number
///   c1(wedge^i M_L (K+F)) . L = -C(r-1, i-1) (L^2) + C(r, i) (F.L)
/// for r = h0 - 1 and i = h0 - p - 2; stability makes negativity sufficient.
pub fn slope_stability_condition(
    surface: &PolarizedSurface,
    class: &DivisorClass,
    p: u32,
) -> Result<(bool, BigInt)> {
    let h0 = surface.h0()?;
    let p64 = i64::from(p);
    if h0 < p64 + 3 {
        return Err(Error::invalid(format!(
            "slope condition needs h0(L) >= p + 3; h0 = {h0}, p = {p}"
        )));
    }
    let r = h0 - 1;
    let i = h0 - p64 - 2;
    let l2 = surface.l2();
    let fl = surface.degree_of(class)?;
    let satisfied =
        i128::from(h0 - p64 - 2) * i128::from(l2) > i128::from(h0 - 1) * i128::from(fl);
    let value = -binomial_big(r - 1, i - 1) * BigInt::from(l2)
        + binomial_big(r, i) * BigInt::from(fl);
    Ok((satisfied, value))
}

fn binomial_big(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for step in 0..k {
        acc = acc * BigInt::from(n - step) / BigInt::from(step + 1);
    }
    acc
}

/// Combined K3 verdict used by the command line: the sharp thresholds first;
/// when branch (b) stops at a genus-two exception, the genus-two obstruction
/// is consulted, and only if its own threshold fires does the combined
/// verdict become FailsNp.
pub fn combined_k3_verdict(surface: &PolarizedSurface, p: u32) -> Result<Verdict> {
    let sharp = k3_sharp_verdict(surface, p)?;
    if sharp.outcome != Outcome::Inconclusive {
        return Ok(sharp);
    }
    if !surface.flags().globally_generated {
        return Ok(sharp.note(
            "globally_generated flag absent: genus-two obstruction not consulted",
        ));
    }
    let obstruction = genus_two_obstruction(surface, p)?;
    if obstruction.outcome == Outcome::FailsNp {
        return Ok(obstruction.note("resolved a genus-two exception of the sharp K3 thresholds"));
    }
    Ok(sharp.note("genus-two obstruction inconclusive as well"))
}

/// Consistency report tying the decision procedures together.
#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub p: u32,
    pub checks: Vec<String>,
    pub violations: Vec<String>,
}

impl CrossCheckReport {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Asserts, on a K3 or abelian surface:
/// - whenever the degree hypothesis of the main theorem holds, its failure
///   verdict agrees with the existence of an isotropic witness that trips
///   the restriction obstruction;
/// - the sharp K3 verdict agrees whenever both hypotheses hold and no
///   genus-two exception fires;
/// - a Seshadri certificate rules out a failure verdict.
/// Flags are asserted internally; this is a test harness surface.
pub fn cross_check(surface: &PolarizedSurface, p: u32) -> Result<CrossCheckReport> {
    require_kind(surface, &[SurfaceKind::K3, SurfaceKind::Abelian], "k3 or abelian")?;
    let surface = surface.with_flags(SurfaceFlags {
        ample: true,
        globally_generated: true,
    });
    let mut report = CrossCheckReport {
        p,
        checks: Vec::new(),
        violations: Vec::new(),
    };
    let main = theorem_a_verdict(&surface, p)?;
    let hypothesis_met = main.outcome != Outcome::HypothesisNotMet;

    if hypothesis_met {
        let mut obstructed = false;
        for degree in 1..=i64::from(p) + 2 {
            for class in surface.primitive_isotropic(degree)? {
                let r = restriction_obstruction(&surface, &class, p)?;
                if r.outcome == Outcome::FailsNp {
                    obstructed = true;
                }
            }
        }
        report
            .checks
            .push("main verdict vs restriction obstruction".into());
        if (main.outcome == Outcome::FailsNp) != obstructed {
            report.violations.push(format!(
                "main verdict {:?} disagrees with restriction obstruction (witness found: {obstructed})",
                main.outcome
            ));
        }
    }

    if surface.kind() == SurfaceKind::K3 {
        let sharp = k3_sharp_verdict(&surface, p)?;
        if hypothesis_met
            && matches!(sharp.outcome, Outcome::HoldsNp | Outcome::FailsNp)
        {
            report.checks.push("main verdict vs sharp thresholds".into());
            if sharp.outcome != main.outcome {
                report.violations.push(format!(
                    "sharp verdict {:?} disagrees with main verdict {:?}",
                    sharp.outcome, main.outcome
                ));
            }
        }
    }

    let seshadri = seshadri_certificate(&surface, p)?;
    if seshadri.is_certified() && hypothesis_met {
        report
            .checks
            .push("Seshadri certificate vs main verdict".into());
        if main.outcome == Outcome::FailsNp {
            report
                .violations
                .push("Seshadri certificate coexists with a failure verdict".into());
        }
    }
    Ok(report)
}
