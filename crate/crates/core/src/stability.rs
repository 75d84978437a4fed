//! GIT stability of rational elliptic fibrations (equivalently cubic pencils
//! with a smooth member) read off from the singular-fiber configuration.
//!
//! - Unstable iff some fiber is `II*`, `III*` or `IV*`.
//! - Otherwise strictly semistable iff some fiber is `I_n*`.
//! - The closed-orbit case is exactly two `I0*` fibers and nothing else singular.
//! - Otherwise stable.
//!
//! For pencils the classification presumes the pencil has a smooth member;
//! that hypothesis is not checked here.

use std::fmt;

use crate::exactmath::{eval_mod, Place, Poly};
use crate::weierstrass::{KodairaType, WeierstrassError, WeierstrassModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabilityClass {
    Stable,
    StrictlySemistable,
    StrictlySemistableClosedOrbit,
    Unstable,
}

impl StabilityClass {
    pub fn is_semistable(self) -> bool {
        self != StabilityClass::Unstable
    }
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityClass::Stable => "Stable",
            StabilityClass::StrictlySemistable => "StrictlySemistable",
            StabilityClass::StrictlySemistableClosedOrbit => "StrictlySemistableClosedOrbit",
            StabilityClass::Unstable => "Unstable",
        })
    }
}

/// Position in the stratification `W = W_s + A^1 + {inf}` of the
/// compactified moduli space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratumPoint {
    InteriorStable,
    /// `j` of the `I0*` fibers, as a residue modulo the place carrying them.
    JLine(Poly),
    JInfinity,
}

impl fmt::Display for StratumPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumPoint::InteriorStable => f.write_str("InteriorStable"),
            StratumPoint::JLine(j) => write!(f, "JLine({j})"),
            StratumPoint::JInfinity => f.write_str("JInfinity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StabilityError {
    #[error("empty fiber configuration")]
    EmptyConfiguration,
    #[error("stratum is defined for level N=1 models, got N={0}")]
    NotLevelOne(u32),
    #[error("unstable fibration has no point in the quotient")]
    Unstable,
    #[error(transparent)]
    Model(#[from] WeierstrassError),
}

pub fn git_classify(fibers: &[KodairaType]) -> Result<StabilityClass, StabilityError> {
    use KodairaType::*;
    if fibers.is_empty() {
        return Err(StabilityError::EmptyConfiguration);
    }
    if fibers.iter().any(|k| matches!(k, IIStar | IIIStar | IVStar)) {
        return Ok(StabilityClass::Unstable);
    }
    if !fibers.iter().any(|k| matches!(k, IStar(_))) {
        return Ok(StabilityClass::Stable);
    }
    let i0_star = fibers.iter().filter(|&&k| k == IStar(0)).count();
    let others_singular = fibers.iter().any(|&k| k != IStar(0) && k.is_singular());
    if i0_star == 2 && !others_singular {
        Ok(StabilityClass::StrictlySemistableClosedOrbit)
    } else {
        Ok(StabilityClass::StrictlySemistable)
    }
}

/// Kodaira types of a survey, each repeated by its place degree.
pub fn survey_types(m: &WeierstrassModel) -> Result<Vec<KodairaType>, WeierstrassError> {
    Ok(m.fiber_survey()?
        .into_iter()
        .flat_map(|r| std::iter::repeat_n(r.kodaira, r.place_degree))
        .collect())
}

pub fn stratum(m: &WeierstrassModel) -> Result<StratumPoint, StabilityError> {
    if m.level() != 1 {
        return Err(StabilityError::NotLevelOne(m.level()));
    }
    let survey = m.fiber_survey()?;
    let types = survey_types(m)?;
    match git_classify(&types)? {
        StabilityClass::Unstable => Err(StabilityError::Unstable),
        StabilityClass::Stable => Ok(StratumPoint::InteriorStable),
        _ => {
            if types.iter().any(|k| matches!(k, KodairaType::IStar(n) if *n >= 1)) {
                return Ok(StratumPoint::JInfinity);
            }
            let report = survey
                .iter()
                .find(|r| r.kodaira == KodairaType::IStar(0))
                .expect("semistable configuration has a starred fiber");
            Ok(j_at_place(m, &report.place).map_or(StratumPoint::JInfinity, StratumPoint::JLine))
        }
    }
}

/// Value of `j` in the residue field at `place`, or `None` at a pole.
pub fn j_at_place(m: &WeierstrassModel, place: &Place) -> Option<Poly> {
    match place {
        Place::Infinity => j_at_place(&m.flip(), &Place::Finite(Poly::t())),
        Place::Finite(p) => {
            let (num, den) = m.j_invariant();
            let den = eval_mod(&den, p);
            let (g, inv, _) = den.xgcd(p);
            if !g.is_constant() || g.is_zero() {
                return None;
            }
            Some(eval_mod(&(&eval_mod(&num, p) * &inv), p))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigWarning {
    EulerSum { found: u64, expected: u64 },
    StarredOverBudget { starred: usize, extra_euler: u64 },
}

impl fmt::Display for ConfigWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigWarning::EulerSum { found, expected } => {
                write!(f, "Euler numbers sum to {found}, expected 12N = {expected}")
            }
            ConfigWarning::StarredOverBudget { starred, extra_euler } => write!(
                f,
                "{starred} starred fibers coexist with further fibers of total Euler number {extra_euler}"
            ),
        }
    }
}

/// Sanity checks on a configuration; never blocks classification.
pub fn validate_configuration(fibers: &[KodairaType], level: u32) -> Vec<ConfigWarning> {
    let mut out = Vec::new();
    let found: u64 = fibers.iter().map(|k| k.euler() as u64).sum();
    let expected = 12 * level as u64;
    if found != expected {
        out.push(ConfigWarning::EulerSum { found, expected });
    }
    let starred = fibers.iter().filter(|k| k.is_starred()).count();
    let starred_euler: u64 = fibers.iter().filter(|k| k.is_starred()).map(|k| k.euler() as u64).sum();
    let extra_euler = found - starred_euler;
    if starred >= 2 && extra_euler > 0 && found > expected {
        out.push(ConfigWarning::StarredOverBudget { starred, extra_euler });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, parse_poly};
    use crate::weierstrass::parse_fiber_list;

    fn fibers(s: &str) -> Vec<KodairaType> {
        parse_fiber_list(s).unwrap()
    }

    fn model(a: &str, b: &str) -> WeierstrassModel {
        WeierstrassModel::new(parse_poly(a).unwrap(), parse_poly(b).unwrap(), 1).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(git_classify(&fibers("I5,I5,I1,I1")).unwrap(), StabilityClass::Stable);
        assert_eq!(git_classify(&fibers("I0*,I0*")).unwrap(), StabilityClass::StrictlySemistableClosedOrbit);
        assert_eq!(git_classify(&fibers("II*,II")).unwrap(), StabilityClass::Unstable);
        assert_eq!(git_classify(&fibers("I0*,I0*,I1")).unwrap(), StabilityClass::StrictlySemistable);
        assert_eq!(git_classify(&fibers("I0*,I0*,I0")).unwrap(), StabilityClass::StrictlySemistableClosedOrbit);
        assert_eq!(git_classify(&fibers("I1*,I1,I1,I1,I1,I1")).unwrap(), StabilityClass::StrictlySemistable);
        assert_eq!(git_classify(&[]), Err(StabilityError::EmptyConfiguration));
    }

    #[test]
    fn configuration_warnings() {
        assert!(validate_configuration(&fibers("I5,I5,I1,I1"), 1).is_empty());
        assert_eq!(
            validate_configuration(&fibers("I0*"), 1),
            vec![ConfigWarning::EulerSum { found: 6, expected: 12 }]
        );
        assert!(validate_configuration(&fibers("I0*,I0*"), 1).is_empty());
        let w = validate_configuration(&fibers("I0*,I0*,I2"), 1);
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn stratum_of_stable_model() {
        // Generic cubic-like data: four nodal fibers and more, all of type I_n.
        let m = model("t^4 + 1", "t^3 - t + 2");
        assert_eq!(stratum(&m).unwrap(), StratumPoint::InteriorStable);
    }

    #[test]
    fn isotrivial_j_zero_two_i0_star() {
        // a = 0, b = t^3 (t-1)^3: I0* at t = 0 and t = 1, smooth elsewhere.
        // Both points share one basis place t^2 - t of degree 2.
        let m = model("0", "t^3*(t-1)^3");
        let survey = m.fiber_survey().unwrap();
        assert_eq!(survey.len(), 1);
        assert_eq!(survey[0].place_degree, 2);
        assert_eq!(survey_types(&m).unwrap(), vec![KodairaType::IStar(0), KodairaType::IStar(0)]);
        assert_eq!(stratum(&m).unwrap(), StratumPoint::JLine(Poly::zero()));
    }

    #[test]
    fn j_line_value_for_b_zero() {
        // b = 0, a = t^2 (t-1)^2: two I0* with j = 1728.
        let m = model("t^2*(t-1)^2", "0");
        assert_eq!(stratum(&m).unwrap(), StratumPoint::JLine(Poly::constant(int(1728))));
    }

    #[test]
    fn i1_star_goes_to_infinity() {
        let m = model("-3*t^2", "2*t^3 + t^4");
        assert_eq!(stratum(&m).unwrap(), StratumPoint::JInfinity);
    }

    #[test]
    fn unstable_model_has_no_stratum() {
        let m = model("0", "t^5*(t-1)");
        assert_eq!(stratum(&m), Err(StabilityError::Unstable));
    }
}
