//! Exact computations behind degenerations of rational elliptic and
//! Dolgachev surfaces.
//!
//! - [`exactmath`]: rationals, polynomials in `t`, places, valuations, parser.
//! - [`weierstrass`]: Weierstrass fibrations and Kodaira fiber classification.
//! - [`stability`]: GIT stability of rational elliptic fibrations.
//! - [`quotsing`]: cyclic quotient singularities, Hirzebruch–Jung chains, class T.
//! - [`lct`]: resolution graphs, discrepancies, pullbacks, log canonical
//!   thresholds, and the central-fiber types of moderate degenerations.
//! - [`invariants`]: gluing certificates, conservation laws, volume bookkeeping.

pub mod exactmath;
pub mod weierstrass;
pub mod stability;
pub mod quotsing;
pub mod lct;
pub mod invariants;
