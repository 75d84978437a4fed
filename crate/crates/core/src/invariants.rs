//! Numerical bookkeeping for gluings of elliptic surfaces along a twisted
//! fiber, moderate degenerations, and the stable-pair moduli (volumes,
//! multi-sections, walls).
//!
//! Only arithmetic identities are certified here. Cohomology vanishing and
//! the existence statements they feed are outside the scope of the checks.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactmath::{int, rat, Poly, Rational};
use crate::lct::{builtin_graph, lct, smoothing_target, BuiltinError, KawamataFiberType, SmoothingError, SurfaceClass};
use crate::quotsing::{is_t_singularity, CyclicQuotient, TWitness};

/// Gluing of two elliptic surfaces `X_1 | X_2` along a rational curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GluingType {
    TwistedI0Star,
    IIIIStar,
    IIIIIIStar,
    IVIVStar,
}

impl GluingType {
    pub const ALL: [GluingType; 4] =
        [GluingType::TwistedI0Star, GluingType::IIIIStar, GluingType::IIIIIIStar, GluingType::IVIVStar];

    /// Index `r` with `K_{X_1} = -F_1 + (r - 1) E_1`.
    pub fn index(self) -> u64 {
        match self {
            GluingType::TwistedI0Star => 1,
            GluingType::IIIIStar => 5,
            GluingType::IIIIIIStar => 3,
            GluingType::IVIVStar => 2,
        }
    }

    pub fn data(self) -> GluingData {
        let q = |n, w| CyclicQuotient::new(n, w).expect("gluing basket is coprime");
        let (basket1, basket2) = match self {
            GluingType::TwistedI0Star => (vec![q(2, 1); 4], vec![q(2, 1); 4]),
            GluingType::IIIIStar => (vec![q(2, 1), q(3, 1), q(6, 1)], vec![q(2, 1), q(3, 2), q(6, 5)]),
            GluingType::IIIIIIStar => (vec![q(2, 1), q(4, 1), q(4, 1)], vec![q(2, 1), q(4, 3), q(4, 3)]),
            GluingType::IVIVStar => (vec![q(3, 1); 3], vec![q(3, 2); 3]),
        };
        GluingData { r: self.index(), basket1, basket2 }
    }
}

impl fmt::Display for GluingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GluingType::TwistedI0Star => "I0*",
            GluingType::IIIIStar => "II|II*",
            GluingType::IIIIIIStar => "III|III*",
            GluingType::IVIVStar => "IV|IV*",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown gluing type '{0}' (expected I0*, II|II*, III|III* or IV|IV*)")]
pub struct UnknownGluingType(pub String);

impl FromStr for GluingType {
    type Err = UnknownGluingType;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GluingType::ALL
            .into_iter()
            .find(|t| t.to_string() == s.trim())
            .ok_or_else(|| UnknownGluingType(s.trim().to_string()))
    }
}

/// Index and the singularities of `X_1` and `X_2` along the double curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingData {
    pub r: u64,
    pub basket1: Vec<CyclicQuotient>,
    pub basket2: Vec<CyclicQuotient>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Clause {
    /// Basket members are of class T.
    ClassT,
    /// Paired singularities have equal order.
    PairedOrders,
    /// `-K_{X_1} - E_1 = E_1` and `-K_{X_2} - E_2 = r E_2`.
    Degrees,
    /// Degree of the first-order smoothing sheaf on the curve is 4.
    T1Degree,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::ClassT => "class_t",
            Clause::PairedOrders => "paired_orders",
            Clause::Degrees => "degrees",
            Clause::T1Degree => "t1_degree",
        })
    }
}

/// Result of [`check_numerical_gluing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingReport {
    pub r: u64,
    /// Class-T witness per member of each basket; `None` when not class T.
    pub witnesses1: Vec<(CyclicQuotient, Option<TWitness>)>,
    pub witnesses2: Vec<(CyclicQuotient, Option<TWitness>)>,
    pub orders_match: bool,
    /// Coefficients of `-K_{X_1} - E_1` in `E_1` and `-K_{X_2} - E_2` in `E_2`.
    pub section_degrees: (Rational, Rational),
    pub e_sq: (Rational, Rational),
    /// `sum (m - 1)/m` over each basket.
    pub diff: (Rational, Rational),
    pub t1_degree: Rational,
    /// Paired weights are inverse across the curve: `q_2 = -q_1 mod m`.
    pub weights_opposite: bool,
    /// `lcm` of the basket orders equals `r + 1`.
    pub lcm_matches_index: bool,
}

impl GluingReport {
    pub fn passed(&self, clause: Clause) -> bool {
        match clause {
            Clause::ClassT => self.witnesses1.iter().chain(&self.witnesses2).all(|(_, w)| w.is_some()),
            Clause::PairedOrders => self.orders_match,
            Clause::Degrees => {
                let r = int(self.r as i64);
                self.section_degrees == (int(1), r)
                    && self.e_sq == (Rational::zero(), Rational::zero())
            }
            Clause::T1Degree => self.t1_degree == int(4),
        }
    }

    pub fn failures(&self) -> Vec<Clause> {
        [Clause::ClassT, Clause::PairedOrders, Clause::Degrees, Clause::T1Degree]
            .into_iter()
            .filter(|&c| !self.passed(c))
            .collect()
    }

    pub fn is_certified(&self) -> bool {
        self.failures().is_empty()
    }
}

fn diff(basket: &[CyclicQuotient]) -> Rational {
    basket.iter().map(|s| rat(s.order() as i64 - 1, s.order() as i64)).sum()
}

fn sorted(basket: &[CyclicQuotient]) -> Vec<CyclicQuotient> {
    let mut b = basket.to_vec();
    b.sort_by_key(|s| (s.order(), s.weight()));
    b
}

pub fn check_numerical_gluing(t: GluingType) -> GluingReport {
    check_gluing_data(&t.data())
}

/// Certifies the numerical conditions of a gluing with the given data.
pub fn check_gluing_data(data: &GluingData) -> GluingReport {
    let witness = |b: &[CyclicQuotient]| b.iter().map(|s| (*s, is_t_singularity(s))).collect::<Vec<_>>();
    let (s1, s2) = (sorted(&data.basket1), sorted(&data.basket2));
    let orders_match =
        s1.len() == s2.len() && s1.iter().zip(&s2).all(|(a, b)| a.order() == b.order());
    let weights_opposite = orders_match
        && s1.iter().zip(&s2).all(|(a, b)| (a.weight() + b.weight()) % a.order() == 0);

    // Divisors on each side as multiples of E_i, with F_i = (r + 1) E_i.
    let r = int(data.r as i64);
    let fiber = &r + Rational::one();
    let k1 = -&fiber + (&r - Rational::one());
    let k2 = -&fiber;
    let section_degrees = (-k1 - Rational::one(), -k2 - Rational::one());
    // F_i^2 = 0 forces E_i^2 = 0.
    let fiber_sq = Rational::zero();
    let e_sq = (&fiber_sq / (&fiber * &fiber), &fiber_sq / (&fiber * &fiber));

    let diff = (diff(&data.basket1), diff(&data.basket2));
    let t1_degree = -&e_sq.0 - &e_sq.1 + &diff.0 + &diff.1;

    let orders = data.basket1.iter().chain(&data.basket2).map(|s| s.order());
    let lcm = orders.fold(1u64, |acc, m| acc.lcm(&m));

    GluingReport {
        r: data.r,
        witnesses1: witness(&data.basket1),
        witnesses2: witness(&data.basket2),
        orders_match,
        section_degrees,
        e_sq,
        diff,
        t1_degree,
        weights_opposite,
        lcm_matches_index: lcm == data.r + 1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GluingSmoothingError {
    #[error("multiplicities {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error(transparent)]
    Smoothing(#[from] SmoothingError),
}

/// Surface class of a smoothing of the glued surface after logarithmic
/// transforms of multiplicities `m1`, `m2`.
pub fn gluing_smoothing_target(_t: GluingType, m1: u64, m2: u64) -> Result<SurfaceClass, GluingSmoothingError> {
    if m1 == 0 || m2 == 0 {
        return Err(SmoothingError::ZeroMultiplicity.into());
    }
    if m1.gcd(&m2) != 1 {
        return Err(GluingSmoothingError::NotCoprime(m1, m2));
    }
    Ok(smoothing_target(&[m1, m2])?)
}

/// Intersection numbers of `A = Abar + 2 F_m` on a rational elliptic
/// surface of index `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionProfile {
    pub abar_sq: Rational,
    pub abar_dot_fm: Rational,
    pub fm_sq: Rational,
}

/// `(dimension, coefficient, volume)` of a stable pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTriple {
    pub d: u64,
    pub c: Rational,
    pub v: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VolumeFailure {
    #[error("index must be positive")]
    ZeroIndex,
    #[error("fiber self-intersection is {0}, expected 0")]
    FiberSquare(Rational),
    #[error("A^2 = {0}, expected 3")]
    Volume(Rational),
}

/// `A^2 = Abar^2 + 4 Abar.F_m + 4 F_m^2`.
pub fn marked_volume(prof: &IntersectionProfile) -> Rational {
    &prof.abar_sq + int(4) * &prof.abar_dot_fm + int(4) * &prof.fm_sq
}

/// Confirms that `(X, F_m, A)` is a `(2, 1, 3)` pair with `K + B = 0`.
pub fn volume_check_marked_res(m: u64, prof: &IntersectionProfile) -> Result<PairTriple, VolumeFailure> {
    if m == 0 {
        return Err(VolumeFailure::ZeroIndex);
    }
    if !prof.fm_sq.is_zero() {
        return Err(VolumeFailure::FiberSquare(prof.fm_sq.clone()));
    }
    // K = -F_m and B = F_m as multiples of F_m.
    let (k, b) = (-Rational::one(), Rational::one());
    debug_assert!((k + &b).is_zero());
    let v = marked_volume(prof);
    if v != int(3) {
        return Err(VolumeFailure::Volume(v));
    }
    Ok(PairTriple { d: 2, c: b, v })
}

/// `C^2 = p + q + pq - 2` for the `pq`-multi-section of a Dolgachev surface.
pub fn multisection_self_intersection(p: u64, q: u64) -> i64 {
    (p + q + p * q) as i64 - 2
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SigmaError {
    #[error("p and q must be coprime and at least 2")]
    Multiplicities,
    #[error("weight must satisfy 0 < c <= 1")]
    Weight,
}

/// `vol(K + B + tA)` for a marked Dolgachev surface with `B = c(F_x + F_y)`:
/// `(p + q + pq - 2) t^2 + 2(pq - p - q + c(p + q)) t`.
pub fn sigma_volume(p: u64, q: u64, c: &Rational) -> Result<Poly, SigmaError> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(SigmaError::Multiplicities);
    }
    if !c.is_positive() || c > &Rational::one() {
        return Err(SigmaError::Weight);
    }
    let (p, q) = (p as i64, q as i64);
    let a_sq = int(multisection_self_intersection(p as u64, q as u64));
    let k_a = int(p * q - p - q);
    let b_a = c * int(p + q);
    Ok(Poly::from_coeffs(vec![Rational::zero(), int(2) * (k_a + b_a), a_sq]))
}

/// `12 chi = K^2 + e`.
pub fn noether_check(k_sq: i64, chi: i64, e: i64) -> bool {
    12 * (chi as i128) == k_sq as i128 + e as i128
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WallError {
    #[error("no wall data for type {0}")]
    Unsupported(KawamataFiberType),
    #[error(transparent)]
    Builtin(#[from] BuiltinError),
}

/// Candidate walls in `c` for the pairs `(X, cB)`: the log canonical
/// thresholds of the given central fibers, sorted and deduplicated.
pub fn wall_positions(types: &[KawamataFiberType]) -> Result<Vec<Rational>, WallError> {
    let mut walls = Vec::new();
    for &t in types {
        if !KawamataFiberType::lct_bearing().contains(&t) {
            return Err(WallError::Unsupported(t));
        }
        let g = builtin_graph(t)?.graph;
        walls.push(lct(&g, &g.strict_mults()).expect("builtin multiplicities are positive"));
    }
    walls.sort();
    walls.dedup();
    Ok(walls)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gluing_tokens() {
        for t in GluingType::ALL {
            assert_eq!(t.to_string().parse(), Ok(t));
        }
        assert!("II|III*".parse::<GluingType>().is_err());
    }

    #[test]
    fn t1_degree_is_four() {
        for t in GluingType::ALL {
            let rep = check_numerical_gluing(t);
            assert_eq!(rep.t1_degree, int(4), "{t}");
            assert!(rep.passed(Clause::PairedOrders) && rep.passed(Clause::Degrees), "{t}");
            assert!(rep.weights_opposite && rep.lcm_matches_index, "{t}");
        }
        let rep = check_numerical_gluing(GluingType::IIIIStar);
        assert_eq!(rep.diff, (int(2), int(2)));
    }

    #[test]
    fn corrupted_basket() {
        let mut data = GluingType::TwistedI0Star.data();
        data.basket2.pop();
        let rep = check_gluing_data(&data);
        assert_eq!(rep.t1_degree, rat(7, 2));
        assert_eq!(rep.failures(), vec![Clause::PairedOrders, Clause::T1Degree]);
    }

    #[test]
    fn gluing_smoothings() {
        let t = GluingType::IIIIStar;
        assert_eq!(gluing_smoothing_target(t, 2, 3), Ok(SurfaceClass::Dolgachev(2, 3)));
        assert_eq!(gluing_smoothing_target(t, 1, 1), Ok(SurfaceClass::RationalElliptic(1)));
        assert_eq!(gluing_smoothing_target(t, 2, 4), Err(GluingSmoothingError::NotCoprime(2, 4)));
    }

    #[test]
    fn marked_volumes() {
        let prof = |a, b| IntersectionProfile { abar_sq: int(a), abar_dot_fm: int(b), fm_sq: int(0) };
        assert_eq!(volume_check_marked_res(2, &prof(-1, 1)), Ok(PairTriple { d: 2, c: int(1), v: int(3) }));
        assert_eq!(volume_check_marked_res(2, &prof(-1, 0)), Err(VolumeFailure::Volume(int(-1))));
    }

    #[test]
    fn sigma() {
        assert_eq!(multisection_self_intersection(2, 3), 9);
        assert_eq!(multisection_self_intersection(1, 1), 1);
        assert_eq!(multisection_self_intersection(2, 5), 15);
        let s = sigma_volume(2, 3, &int(1)).unwrap();
        assert_eq!(s.to_string(), "9*t^2 + 12*t");
        assert!(s.eval(&int(0)).is_zero());
        assert_eq!(sigma_volume(2, 4, &int(1)), Err(SigmaError::Multiplicities));
        assert_eq!(sigma_volume(2, 3, &int(0)), Err(SigmaError::Weight));
    }

    #[test]
    fn noether() {
        assert!(noether_check(0, 1, 12));
        assert!(!noether_check(0, 1, 11));
    }

    #[test]
    fn walls() {
        use KawamataFiberType::*;
        assert_eq!(wall_positions(&[II(2), IV(2)]), Ok(vec![rat(2, 3)]));
        assert_eq!(wall_positions(&[]), Ok(vec![]));
        assert!(wall_positions(&["1I2(3,1)".parse().unwrap()]).is_err());
    }
}
