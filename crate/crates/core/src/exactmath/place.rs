use std::fmt;

use super::Poly;

/// A closed point of the projective line over the rationals.
///
/// Finite places are carried by monic polynomials of positive degree. In this
/// crate they are usually elements of a GCD-free basis, i.e. square-free
/// products of irreducibles that all share the same valuation data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    /// Wraps `p` as a finite place after making it monic.
    /// Returns `None` for constants.
    pub fn finite(p: &Poly) -> Option<Place> {
        if p.is_constant() {
            None
        } else {
            Some(Place::Finite(p.monic()))
        }
    }

    /// Number of geometric points the place accounts for.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().expect("nonconstant"),
            Place::Infinity => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

/// Order of vanishing; the zero polynomial has valuation `Infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Order(u32),
    Infinity,
}

impl Valuation {
    pub fn order(self) -> Option<u32> {
        match self {
            Valuation::Order(k) => Some(k),
            Valuation::Infinity => None,
        }
    }

    /// True when the valuation is at least `k` (always true for `Infinity`).
    pub fn at_least(self, k: u32) -> bool {
        self >= Valuation::Order(k)
    }

    pub fn is(self, k: u32) -> bool {
        self == Valuation::Order(k)
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Order(a), Valuation::Order(b)) => Valuation::Order(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Order(k) => write!(f, "{k}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValuationError {
    #[error("degree {degree} exceeds the ambient bound {level} at the infinite place")]
    DegreeAboveLevel { degree: usize, level: usize },
}

/// Valuation of `f` at `place`.
///
/// At a finite place this is the exact multiplicity of `p` in `f`. At infinity
/// `f` is read as a section of degree at most `level`, and the valuation is
/// `level - deg f`.
pub fn valuation(f: &Poly, place: &Place, level: usize) -> Result<Valuation, ValuationError> {
    let Some(deg) = f.degree() else {
        return Ok(Valuation::Infinity);
    };
    match place {
        Place::Infinity => {
            if deg > level {
                Err(ValuationError::DegreeAboveLevel { degree: deg, level })
            } else {
                Ok(Valuation::Order((level - deg) as u32))
            }
        }
        Place::Finite(p) => {
            let mut k = 0;
            let mut rest = f.clone();
            while let Some(q) = rest.exact_div(p) {
                rest = q;
                k += 1;
            }
            Ok(Valuation::Order(k))
        }
    }
}

/// Multiplicity-refined GCD-free basis of nonzero polynomials.
///
/// The result is a sorted list of pairwise coprime, monic, square-free
/// polynomials such that every input is a constant times a product of powers
/// of basis elements, and every irreducible factor of one basis element has
/// the same multiplicity in each input.
pub fn gcd_free_basis(fs: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = fs
        .iter()
        .filter(|f| !f.is_zero())
        .flat_map(|f| f.squarefree_decomposition().into_iter().map(|(g, _)| g))
        .collect();
    'refine: loop {
        basis.retain(|b| !b.is_constant());
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let g = basis[i].gcd(&basis[j]);
                if g.is_constant() {
                    continue;
                }
                let bi = basis[i].exact_div(&g).expect("gcd divides");
                let bj = basis[j].exact_div(&g).expect("gcd divides");
                basis[i] = bi;
                basis[j] = bj;
                basis.push(g);
                continue 'refine;
            }
        }
        break;
    }
    let mut basis: Vec<Poly> = basis.into_iter().map(|b| b.monic()).collect();
    basis.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    basis
}
