//! Cyclic quotient singularities `1/n(1,q)`: normal form, Hirzebruch–Jung
//! resolution chains, discrepancies of the chain, and the class-T test.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::exactmath::{int, Rational};
use num_traits::Zero;

/// `1/n(1,q)` with `1 <= q < n` and `gcd(n,q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicQuotient {
    order: u64,
    weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("order must be at least 2, got {0}")]
    OrderTooSmall(i64),
    #[error("weight {weight} is not coprime to the order {order}")]
    NotCoprime { order: i64, weight: i64 },
    #[error("malformed singularity '{0}', expected 1/<n>(<a>,<b>)")]
    Syntax(String),
    #[error("continued-fraction entries must all be >= 2")]
    BadChain,
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let e = a.rem_euclid(n).extended_gcd(&n);
    (e.gcd == 1).then(|| e.x.rem_euclid(n))
}

impl CyclicQuotient {
    pub fn new(order: u64, weight: u64) -> Result<Self, QuotientError> {
        normalize(order as i64, 1, weight as i64)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// The same germ with the two coordinates swapped: `1/n(1, q^-1)`.
    pub fn swapped(&self) -> CyclicQuotient {
        let inv = mod_inverse(self.weight as i64, self.order as i64).expect("coprime") as u64;
        CyclicQuotient { order: self.order, weight: inv }
    }

    /// Rational double point `A_{n-1}`, i.e. `q = n - 1`.
    pub fn is_rdp(&self) -> bool {
        self.weight == self.order - 1
    }
}

/// Rewrites `1/n(a,b)` as `1/n(1, a^-1 b mod n)`.
pub fn normalize(n: i64, a: i64, b: i64) -> Result<CyclicQuotient, QuotientError> {
    if n < 2 {
        return Err(QuotientError::OrderTooSmall(n));
    }
    for w in [a, b] {
        if w.gcd(&n) != 1 {
            return Err(QuotientError::NotCoprime { order: n, weight: w });
        }
    }
    let inv = mod_inverse(a, n).expect("coprime");
    let q = (inv as i128 * b.rem_euclid(n) as i128).rem_euclid(n as i128) as u64;
    Ok(CyclicQuotient { order: n as u64, weight: q })
}

impl fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{})", self.order, self.weight)
    }
}

impl FromStr for CyclicQuotient {
    type Err = QuotientError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || QuotientError::Syntax(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = compact.strip_prefix("1/").ok_or_else(bad)?;
        let (n, weights) = rest.split_once('(').ok_or_else(bad)?;
        let weights = weights.strip_suffix(')').ok_or_else(bad)?;
        let (a, b) = weights.split_once(',').ok_or_else(bad)?;
        let parse = |x: &str| x.parse::<i64>().map_err(|_| bad());
        normalize(parse(n)?, parse(a)?, parse(b)?)
    }
}

/// Self-intersections `-b_i` of the exceptional chain, with every `b_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HJChain(Vec<u64>);

impl HJChain {
    pub fn new(entries: Vec<u64>) -> Result<Self, QuotientError> {
        if entries.is_empty() || entries.iter().any(|&b| b < 2) {
            return Err(QuotientError::BadChain);
        }
        Ok(HJChain(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `b_1 - 1/(b_2 - 1/(...))`.
    pub fn value(&self) -> Rational {
        let mut acc = int(self.0[self.0.len() - 1] as i64);
        for &b in self.0.iter().rev().skip(1) {
            acc = int(b as i64) - acc.recip();
        }
        acc
    }
}

impl fmt::Display for HJChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Hirzebruch–Jung expansion `n/q = b_1 - 1/(b_2 - ...)`.
pub fn hj_expansion(s: &CyclicQuotient) -> HJChain {
    let (mut num, mut den) = (s.order, s.weight);
    let mut entries = Vec::new();
    while den > 0 {
        let b = num.div_ceil(den);
        entries.push(b);
        (num, den) = (den, b * den - num);
    }
    HJChain(entries)
}

/// Discrepancies `a_i` of the chain: the solution of
/// `sum_j a_j (E_j . E_i) = b_i - 2`, with `E_i^2 = -b_i` and neighbours
/// meeting once. Solved by forward elimination on the tridiagonal system.
pub fn chain_discrepancies(chain: &HJChain) -> Vec<Rational> {
    let b = &chain.0;
    let k = b.len();
    // Row i: a_{i-1} - b_i a_i + a_{i+1} = b_i - 2.
    let mut diag: Vec<Rational> = b.iter().map(|&x| -int(x as i64)).collect();
    let mut rhs: Vec<Rational> = b.iter().map(|&x| int(x as i64 - 2)).collect();
    for i in 1..k {
        let factor = diag[i - 1].recip();
        diag[i] = &diag[i] - &factor;
        rhs[i] = &rhs[i] - &rhs[i - 1] * &factor;
    }
    let mut out = vec![Rational::zero(); k];
    out[k - 1] = &rhs[k - 1] / &diag[k - 1];
    for i in (0..k - 1).rev() {
        out[i] = (&rhs[i] - &out[i + 1]) / &diag[i];
    }
    out
}

/// Why a singularity is of class T.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TWitness {
    Rdp,
    /// `1/(d n0^2)(1, d n0 a - 1)`; `swapped` when the match is against the
    /// inverse weight.
    Wahl { d: u64, n0: u64, a: u64, swapped: bool },
}

impl fmt::Display for TWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TWitness::Rdp => f.write_str("RDP"),
            TWitness::Wahl { d, n0, a, swapped } => {
                write!(f, "d={d} n={n0} a={a}")?;
                if *swapped {
                    f.write_str(" (swapped weights)")?;
                }
                Ok(())
            }
        }
    }
}

/// Class-T test by bounded search over `d n0^2 = n`.
pub fn is_t_singularity(s: &CyclicQuotient) -> Option<TWitness> {
    if s.is_rdp() {
        return Some(TWitness::Rdp);
    }
    let n = s.order;
    let inv = s.swapped().weight;
    let mut n0 = 2u64;
    while n0 * n0 <= n {
        if n.is_multiple_of(n0 * n0) {
            let d = n / (n0 * n0);
            for a in (1..n0).filter(|a| a.gcd(&n0) == 1) {
                let w = (d * n0 * a - 1) % n;
                if w == s.weight {
                    return Some(TWitness::Wahl { d, n0, a, swapped: false });
                }
                if w == inv {
                    return Some(TWitness::Wahl { d, n0, a, swapped: true });
                }
            }
        }
        n0 += 1;
    }
    None
}
