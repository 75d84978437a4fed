//! Central-fiber types of moderate degenerations and the canonical bundle
//! bookkeeping for their smoothings.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactmath::{rat, Rational};
use crate::quotsing::{normalize, CyclicQuotient};
use crate::weierstrass::KodairaType;

/// Central-fiber type `L` of a moderate degeneration.
///
/// `MultipleI { m, d, r, a }` is `mI_d(r, a)`: a cycle of `d` rational curves
/// with inner multiplicity `m` and a `1/r^2(a, r - a)` point at each node.
/// `r = 1` means the nodes are smooth points; `d = 0` is the excluded `mI_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KawamataFiberType {
    MultipleI { m: u64, d: u64, r: u64, a: u64 },
    II(u64),
    III(u64),
    IV(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KawamataTypeError {
    #[error("unknown fiber type '{0}'")]
    Token(String),
    #[error("type {kind}({r}) does not occur")]
    Index { kind: &'static str, r: u64 },
    #[error("mI_d(r, a) needs m >= 1, r >= 1 and gcd(a, r) = 1 with 0 <= a < r")]
    Parameters,
}

impl KawamataFiberType {
    pub fn multiple_i(m: u64, d: u64, r: u64, a: u64) -> Result<Self, KawamataTypeError> {
        if m == 0 || r == 0 || a >= r || a.gcd(&r) != 1 {
            return Err(KawamataTypeError::Parameters);
        }
        Ok(KawamataFiberType::MultipleI { m, d, r, a })
    }

    pub fn ii(r: u64) -> Result<Self, KawamataTypeError> {
        match r {
            2..=5 => Ok(KawamataFiberType::II(r)),
            _ => Err(KawamataTypeError::Index { kind: "II", r }),
        }
    }

    pub fn iii(r: u64) -> Result<Self, KawamataTypeError> {
        match r {
            2 | 3 => Ok(KawamataFiberType::III(r)),
            _ => Err(KawamataTypeError::Index { kind: "III", r }),
        }
    }

    pub fn iv(r: u64) -> Result<Self, KawamataTypeError> {
        match r {
            2 => Ok(KawamataFiberType::IV(r)),
            _ => Err(KawamataTypeError::Index { kind: "IV", r }),
        }
    }

    /// The seven types with a shipped resolution graph.
    pub fn lct_bearing() -> [KawamataFiberType; 7] {
        use KawamataFiberType::*;
        [II(2), II(3), II(4), II(5), III(2), III(3), IV(2)]
    }

    /// Total multiplicity `m~` of the fiber.
    pub fn total_multiplicity(&self) -> u64 {
        match *self {
            KawamataFiberType::MultipleI { m, r, .. } => m * r,
            KawamataFiberType::II(4) => 8,
            KawamataFiberType::II(5) => 25,
            KawamataFiberType::II(r) => r,
            KawamataFiberType::III(3) => 9,
            KawamataFiberType::III(r) => r,
            KawamataFiberType::IV(r) => r * r,
        }
    }

    /// Singularities of the surface along the fiber.
    pub fn basket(&self) -> Vec<CyclicQuotient> {
        let q = |n: i64, a: i64, b: i64| normalize(n, a, b).expect("basket data is coprime");
        match *self {
            KawamataFiberType::MultipleI { d, r, a, .. } => {
                if r < 2 {
                    return Vec::new();
                }
                let (r, a) = (r as i64, a as i64);
                vec![q(r * r, a, r - a); d as usize]
            }
            KawamataFiberType::II(r @ (2 | 3)) => vec![q((r * r) as i64, 1, r as i64 - 1)],
            KawamataFiberType::II(4) => vec![q(16, 3, 1), q(4, 1, 1)],
            KawamataFiberType::II(_) => vec![q(25, 3, 2), q(25, 1, 4)],
            KawamataFiberType::III(2) => vec![q(4, 1, 1); 2],
            KawamataFiberType::III(_) => vec![q(9, 1, 2); 3],
            KawamataFiberType::IV(_) => vec![q(4, 1, 1); 4],
        }
    }

    /// Number of irreducible components of `L_red`.
    pub fn component_count(&self) -> u64 {
        match *self {
            KawamataFiberType::MultipleI { d, .. } => d.max(1),
            KawamataFiberType::II(_) => 1,
            KawamataFiberType::III(_) => 2,
            KawamataFiberType::IV(_) => 3,
        }
    }
}

/// Multiplicity `m^(k)` of the fiber in the canonical bundle formula.
pub fn multiplicity(t: &KawamataFiberType) -> u64 {
    match *t {
        KawamataFiberType::MultipleI { m, r, .. } => m * r,
        KawamataFiberType::II(r) | KawamataFiberType::III(r) | KawamataFiberType::IV(r) => r,
    }
}

impl fmt::Display for KawamataFiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KawamataFiberType::MultipleI { m, d, r: 1, .. } => write!(f, "{m}I{d}"),
            KawamataFiberType::MultipleI { m, d, r, a } => write!(f, "{m}I{d}({r},{a})"),
            KawamataFiberType::II(r) => write!(f, "II({r})"),
            KawamataFiberType::III(r) => write!(f, "III({r})"),
            KawamataFiberType::IV(r) => write!(f, "IV({r})"),
        }
    }
}

impl FromStr for KawamataFiberType {
    type Err = KawamataTypeError;

    /// Accepts `II3`, `II(3)`, `III2`, `IV(2)`, `<m>I<d>(<r>,<a>)`, `<m>I<d>`
    /// and the bare `mI0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || KawamataTypeError::Token(s.to_string());
        if s == "mI0" {
            return Ok(KawamataFiberType::MultipleI { m: 1, d: 0, r: 1, a: 0 });
        }
        for (kind, ctor) in [
            ("III", KawamataFiberType::iii as fn(u64) -> Result<Self, KawamataTypeError>),
            ("II", KawamataFiberType::ii),
            ("IV", KawamataFiberType::iv),
        ] {
            if let Some(rest) = s.strip_prefix(kind) {
                let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
                let r: u64 = inner.parse().map_err(|_| bad())?;
                return ctor(r);
            }
        }
        let (m, rest) = s.split_once('I').ok_or_else(bad)?;
        let m: u64 = if m.is_empty() { 1 } else { m.parse().map_err(|_| bad())? };
        let (d, params) = match rest.split_once('(') {
            Some((d, p)) => (d, Some(p.strip_suffix(')').ok_or_else(bad)?)),
            None => (rest, None),
        };
        let d: u64 = d.parse().map_err(|_| bad())?;
        let (r, a) = match params {
            Some(p) => {
                let (r, a) = p.split_once(',').ok_or_else(bad)?;
                (r.trim().parse().map_err(|_| bad())?, a.trim().parse().map_err(|_| bad())?)
            }
            None => (1, 0),
        };
        KawamataFiberType::multiple_i(m, d, r, a)
    }
}

/// A proposed central fiber, either a Kodaira type or a central-fiber type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentralFiber {
    Kodaira(KodairaType),
    Kawamata(KawamataFiberType),
}

impl fmt::Display for CentralFiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentralFiber::Kodaira(k) => write!(f, "{k}"),
            CentralFiber::Kawamata(k) => write!(f, "{k}"),
        }
    }
}

impl FromStr for CentralFiber {
    type Err = KawamataTypeError;

    /// Central-fiber tokens first, so `II3` reads as `II(3)`; bare Kodaira
    /// symbols such as `II*` or `I2*` otherwise.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(k) = s.parse::<KawamataFiberType>() {
            return Ok(CentralFiber::Kawamata(k));
        }
        s.trim()
            .parse::<KodairaType>()
            .map(CentralFiber::Kodaira)
            .map_err(|_| KawamataTypeError::Token(s.trim().to_string()))
    }
}

/// An excluded central fiber at position `index` of the configuration.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{fiber} does not occur as the central fiber of a moderate degeneration")]
pub struct Rejection {
    pub index: usize,
    pub fiber: CentralFiber,
}

/// Rejects `mI_0`, `I_b*`, `II*`, `III*` and `IV*`.
pub fn validate_moderate_config(fibers: &[CentralFiber]) -> Result<(), Rejection> {
    for (index, &fiber) in fibers.iter().enumerate() {
        let excluded = match fiber {
            CentralFiber::Kodaira(k) => k.is_starred(),
            CentralFiber::Kawamata(KawamataFiberType::MultipleI { d, .. }) => d == 0,
            CentralFiber::Kawamata(_) => false,
        };
        if excluded {
            return Err(Rejection { index, fiber });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SmoothingError {
    #[error("multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("expected one or two multiplicities, got {0}")]
    Count(usize),
}

/// Degree of `K` pulled back from the base: `deg d + sum (1 - 1/m_k)`.
pub fn canonical_degree(moduli_degree: &Rational, mults: &[u64]) -> Result<Rational, SmoothingError> {
    let mut k = moduli_degree.clone();
    for &m in mults {
        if m == 0 {
            return Err(SmoothingError::ZeroMultiplicity);
        }
        k += Rational::one() - rat(1, m as i64);
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceClass {
    RationalElliptic(u64),
    Enriques,
    /// `p < q`, coprime.
    Dolgachev(u64, u64),
    NonNegativeKodaira { canonical_degree: Rational },
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceClass::RationalElliptic(m) => write!(f, "RationalElliptic({m})"),
            SurfaceClass::Enriques => write!(f, "Enriques"),
            SurfaceClass::Dolgachev(p, q) => write!(f, "Dolgachev({p},{q})"),
            SurfaceClass::NonNegativeKodaira { canonical_degree } => {
                write!(f, "NonNegativeKodaira(K={canonical_degree})")
            }
        }
    }
}

/// Surface class of a smoothing whose central fiber carries the given
/// multiple-fiber multiplicities.
pub fn smoothing_target(mults: &[u64]) -> Result<SurfaceClass, SmoothingError> {
    if mults.contains(&0) {
        return Err(SmoothingError::ZeroMultiplicity);
    }
    let (p, q) = match *mults {
        [m] => return Ok(SurfaceClass::RationalElliptic(m)),
        [p, q] => (p.min(q), p.max(q)),
        _ => return Err(SmoothingError::Count(mults.len())),
    };
    if p == 1 {
        return Ok(SurfaceClass::RationalElliptic(q));
    }
    if (p, q) == (2, 2) {
        return Ok(SurfaceClass::Enriques);
    }
    if p.gcd(&q) == 1 {
        return Ok(SurfaceClass::Dolgachev(p, q));
    }
    let canonical_degree = canonical_degree(&-Rational::one(), &[p, q])?;
    debug_assert!(!canonical_degree.is_zero());
    Ok(SurfaceClass::NonNegativeKodaira { canonical_degree })
}
