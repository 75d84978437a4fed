//! Rational Weierstrass fibrations `y^2 z = x^3 + A x z^2 + B z^3` over the
//! projective line, with `A` a section of degree at most `4N` and `B` of
//! degree at most `6N`.
//!
//! Classification runs in residue characteristic zero, where Tate's algorithm
//! reduces to reading the valuation triple `(v(A), v(B), v(Delta))`. The
//! discriminant is normalized as `4A^3 + 27B^2`; the classical factor `-16`
//! is a unit and never changes a valuation.

use std::fmt;
use std::str::FromStr;

use crate::exactmath::{gcd_free_basis, int, parse_poly, valuation, Place, Poly, Valuation};

/// Kodaira type of a fiber. `I(0)` is a smooth fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// Topological Euler number of the fiber.
    pub fn euler(self) -> u32 {
        match self {
            KodairaType::I(n) => n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Non-reduced fibers: `I_n*`, `IV*`, `III*`, `II*`.
    pub fn is_starred(self) -> bool {
        matches!(
            self,
            KodairaType::IStar(_) | KodairaType::IVStar | KodairaType::IIIStar | KodairaType::IIStar
        )
    }

    pub fn is_singular(self) -> bool {
        self != KodairaType::I(0)
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => f.write_str("II"),
            KodairaType::III => f.write_str("III"),
            KodairaType::IV => f.write_str("IV"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => f.write_str("IV*"),
            KodairaType::IIIStar => f.write_str("III*"),
            KodairaType::IIStar => f.write_str("II*"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown Kodaira fiber token '{0}'")]
pub struct UnknownFiberToken(pub String);

impl FromStr for KodairaType {
    type Err = UnknownFiberToken;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tok = s.trim();
        let bad = || UnknownFiberToken(tok.to_string());
        Ok(match tok {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "IV*" => KodairaType::IVStar,
            "III*" => KodairaType::IIIStar,
            "II*" => KodairaType::IIStar,
            _ => {
                let rest = tok.strip_prefix('I').ok_or_else(bad)?;
                let (digits, star) = match rest.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (rest, false),
                };
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                let n: u32 = digits.parse().map_err(|_| bad())?;
                if star {
                    KodairaType::IStar(n)
                } else {
                    KodairaType::I(n)
                }
            }
        })
    }
}

/// Parses a comma-separated fiber list such as `I5,I5,I1,I1`.
pub fn parse_fiber_list(text: &str) -> Result<Vec<KodairaType>, UnknownFiberToken> {
    text.split(',').map(str::parse).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeierstrassError {
    #[error("deg {which} = {degree} exceeds {bound}")]
    DegreeBound { which: char, degree: usize, bound: usize },
    #[error("discriminant 4A^3 + 27B^2 vanishes identically")]
    ZeroDiscriminant,
    #[error("model is not minimal at {0}; run minimalize first")]
    NotMinimal(Place),
    #[error("valuation pattern (v(A), v(B), v(D)) = ({0}, {1}, {2}) is not in the Kodaira table")]
    UnclassifiedPattern(Valuation, Valuation, Valuation),
}

/// Weierstrass data `(A, B)` of level `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    a: Poly,
    b: Poly,
    level: u32,
}

impl WeierstrassModel {
    pub fn new(a: Poly, b: Poly, level: u32) -> Result<Self, WeierstrassError> {
        let n = level as usize;
        for (which, p, bound) in [('A', &a, 4 * n), ('B', &b, 6 * n)] {
            if let Some(d) = p.degree().filter(|&d| d > bound) {
                return Err(WeierstrassError::DegreeBound { which, degree: d, bound });
            }
        }
        let m = WeierstrassModel { a, b, level };
        if m.discriminant().is_zero() {
            return Err(WeierstrassError::ZeroDiscriminant);
        }
        Ok(m)
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `4A^3 + 27B^2`, a section of degree at most `12N`.
    pub fn discriminant(&self) -> Poly {
        &self.a.pow(3).scale(&int(4)) + &self.b.pow(2).scale(&int(27))
    }

    /// Valuations `(v(A), v(B), v(Delta))` at `place`.
    pub fn valuations(&self, place: &Place) -> (Valuation, Valuation, Valuation) {
        let n = self.level as usize;
        let v = |p: &Poly, bound| valuation(p, place, bound).expect("degree bounds checked at construction");
        (v(&self.a, 4 * n), v(&self.b, 6 * n), v(&self.discriminant(), 12 * n))
    }

    /// Minimality condition: `v(A) <= 3` or `v(B) <= 5`.
    pub fn is_minimal_at(&self, place: &Place) -> bool {
        let (va, vb, _) = self.valuations(place);
        !(va.at_least(4) && vb.at_least(6))
    }

    fn candidate_places(&self) -> Vec<Place> {
        let inputs = [self.discriminant(), self.a.clone(), self.b.clone()];
        gcd_free_basis(&inputs)
            .into_iter()
            .map(Place::Finite)
            .chain(std::iter::once(Place::Infinity))
            .collect()
    }

    /// Divides out `(p^4, p^6)` at every place violating minimality,
    /// lowering the level accordingly, until the model is minimal everywhere.
    pub fn minimalize(&self) -> WeierstrassModel {
        let mut m = self.clone();
        loop {
            let offending = m.candidate_places().into_iter().find(|v| !m.is_minimal_at(v));
            let Some(place) = offending else {
                return m;
            };
            match &place {
                Place::Infinity => m.level -= 1,
                Place::Finite(p) => {
                    let div = |f: &Poly, k: u32| {
                        if f.is_zero() {
                            Poly::zero()
                        } else {
                            f.exact_div(&p.pow(k)).expect("valuation guarantees divisibility")
                        }
                    };
                    m.a = div(&m.a, 4);
                    m.b = div(&m.b, 6);
                    m.level -= p.degree().expect("nonconstant") as u32;
                }
            }
        }
    }

    /// Kodaira type of the fiber at `place`.
    pub fn classify_fiber(&self, place: &Place) -> Result<KodairaType, WeierstrassError> {
        if !self.is_minimal_at(place) {
            return Err(WeierstrassError::NotMinimal(place.clone()));
        }
        let (va, vb, vd) = self.valuations(place);
        classify_valuations(va, vb, vd)
    }

    /// One report per singular fiber: GCD-free-basis places of `Delta`, plus
    /// the infinite place when `Delta` vanishes there.
    pub fn fiber_survey(&self) -> Result<Vec<FiberReport>, WeierstrassError> {
        let places = self.candidate_places();
        if let Some(bad) = places.iter().find(|v| !self.is_minimal_at(v)) {
            return Err(WeierstrassError::NotMinimal(bad.clone()));
        }
        let mut out = Vec::new();
        for place in places {
            let (va, vb, vd) = self.valuations(&place);
            let Some(euler) = vd.order().filter(|&e| e > 0) else {
                continue;
            };
            let kodaira = classify_valuations(va, vb, vd)?;
            out.push(FiberReport {
                place_degree: place.degree(),
                place,
                v_a: va,
                v_b: vb,
                v_delta: vd,
                kodaira,
                euler,
            });
        }
        Ok(out)
    }

    /// `j = 1728 * 4A^3 / (4A^3 + 27B^2)` as a reduced pair
    /// `(6912 A^3, Delta) / gcd` with monic denominator.
    pub fn j_invariant(&self) -> (Poly, Poly) {
        let num = self.a.pow(3).scale(&int(6912));
        let den = self.discriminant();
        if num.is_zero() {
            return (Poly::zero(), Poly::one());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let lc = den.leading().expect("nonzero").recip();
        (num.scale(&lc), den.scale(&lc))
    }

    /// The same fibration read in the chart `s = 1/t`: the fiber at infinity
    /// of `self` is the fiber at `s = 0` of the result.
    pub fn flip(&self) -> WeierstrassModel {
        let n = self.level as usize;
        WeierstrassModel { a: self.a.reverse(4 * n), b: self.b.reverse(6 * n), level: self.level }
    }

    /// The line-oriented text form: `N=`, `A=`, `B=`.
    pub fn to_text(&self) -> String {
        format!("N={}\nA={}\nB={}\n", self.level, self.a, self.b)
    }
}

/// Residue characteristic zero Kodaira table on a minimal valuation triple.
pub fn classify_valuations(
    va: Valuation,
    vb: Valuation,
    vd: Valuation,
) -> Result<KodairaType, WeierstrassError> {
    use KodairaType::*;
    let bad = || WeierstrassError::UnclassifiedPattern(va, vb, vd);
    let d = vd.order().ok_or_else(bad)?;
    if d == 0 {
        return Ok(I(0));
    }
    let kind = if va.is(0) && vb.is(0) {
        I(d)
    } else if va.at_least(1) && vb.is(1) {
        II
    } else if va.is(1) && vb.at_least(2) {
        III
    } else if va.at_least(2) && vb.is(2) {
        IV
    } else if va.at_least(2) && vb.at_least(3) && d == 6 {
        IStar(0)
    } else if va.is(2) && vb.is(3) && d > 6 {
        IStar(d - 6)
    } else if va.at_least(3) && vb.is(4) {
        IVStar
    } else if va.is(3) && vb.at_least(5) {
        IIIStar
    } else if va.at_least(4) && vb.is(5) {
        IIStar
    } else {
        return Err(bad());
    };
    if kind.euler() != d {
        return Err(bad());
    }
    Ok(kind)
}

/// A singular fiber found by [`WeierstrassModel::fiber_survey`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub place: Place,
    /// Geometric fibers represented by the place (its degree).
    pub place_degree: usize,
    pub v_a: Valuation,
    pub v_b: Valuation,
    pub v_delta: Valuation,
    pub kodaira: KodairaType,
    pub euler: u32,
}

/// `sum place_degree * euler` over a survey.
pub fn euler_sum(reports: &[FiberReport]) -> u64 {
    reports.iter().map(|r| r.place_degree as u64 * r.euler as u64).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelParseError {
    #[error("line {line}: expected '{expected}=...'")]
    MissingKey { line: usize, expected: &'static str },
    #[error("line {line}: bad level '{text}'")]
    BadLevel { line: usize, text: String },
    #[error("line {line}, {source}")]
    Poly { line: usize, source: crate::exactmath::ParseError },
    #[error("line {line}: unexpected extra content")]
    Trailing { line: usize },
    #[error("missing line for '{0}'")]
    Truncated(&'static str),
    #[error("{0}")]
    Invalid(#[from] WeierstrassError),
}

/// Parses the model file format: `N=<uint>`, `A=<poly>`, `B=<poly>` on the
/// first three non-blank lines; `#` starts a comment.
pub fn parse_model(text: &str) -> Result<WeierstrassModel, ModelParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut field = |key: &'static str| -> Result<(usize, &str), ModelParseError> {
        let (line, l) = lines.next().ok_or(ModelParseError::Truncated(key))?;
        let (k, v) = l.split_once('=').ok_or(ModelParseError::MissingKey { line, expected: key })?;
        if k.trim() != key {
            return Err(ModelParseError::MissingKey { line, expected: key });
        }
        Ok((line, v.trim()))
    };
    let (line, n) = field("N")?;
    let level: u32 = n.parse().map_err(|_| ModelParseError::BadLevel { line, text: n.to_string() })?;
    let (line, a) = field("A")?;
    let a = parse_poly(a).map_err(|source| ModelParseError::Poly { line, source })?;
    let (line, b) = field("B")?;
    let b = parse_poly(b).map_err(|source| ModelParseError::Poly { line, source })?;
    if let Some((line, _)) = lines.next() {
        return Err(ModelParseError::Trailing { line });
    }
    Ok(WeierstrassModel::new(a, b, level)?)
}
