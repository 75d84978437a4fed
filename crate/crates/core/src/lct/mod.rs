//! Resolution-graph calculus.
//!
//! A [`ResolutionGraph`] is the dual graph of a log resolution: rational
//! exceptional curves `E_i` with self-intersections, their transverse
//! intersections, and the strict transforms `F_j` of a boundary divisor with
//! multiplicities. On it we solve, exactly,
//!
//! - discrepancies `b`: `sum_j b_j (E_j . E_i) = -2 - E_i^2` (adjunction),
//! - pullback multiplicities `r`: `sum_j r_j (E_j . E_i) = -sum_k m_k (F_k . E_i)`,
//!
//! and the log canonical threshold `min{(b_i + 1)/r_i, 1/m_k}`.
//!
//! [`builtin_graph`] ships the resolutions of the central-fiber types in
//! [`kawamata`].

mod builtin;
pub mod kawamata;
pub mod linalg;

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactmath::{parse_rational, Rational};

pub use builtin::{builtin_graph, BasketChain, BuiltinError, BuiltinGraph};
pub use kawamata::{
    canonical_degree, multiplicity, smoothing_target, validate_moderate_config, CentralFiber,
    KawamataFiberType, KawamataTypeError, Rejection, SmoothingError, SurfaceClass,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub self_int: i64,
}

/// Strict transform of a boundary component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictComponent {
    pub id: String,
    pub mult: Rational,
    /// Vertex indices met by the component; a repeated index counts twice.
    pub meets: Vec<usize>,
    /// Other strict components met (relevant only for connectivity).
    pub meets_strict: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph has no exceptional curves")]
    NoVertices,
    #[error("duplicate id '{0}'")]
    DuplicateId(String),
    #[error("unknown id '{0}'")]
    UnknownId(String),
    #[error("curve '{id}' has self-intersection {self_int}, expected <= -1")]
    SelfIntersection { id: String, self_int: i64 },
    #[error("edge {0}-{1} is a loop or repeated")]
    BadEdge(String, String),
    #[error("strict component '{0}' has negative multiplicity")]
    NegativeMultiplicity(String),
    #[error("configuration is not connected")]
    Disconnected,
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LctError {
    #[error("expected {expected} strict multiplicities, got {got}")]
    MultiplicityCount { expected: usize, got: usize },
    #[error("strict multiplicities must be nonnegative")]
    NegativeMultiplicity,
    #[error("all multiplicities vanish; the threshold is unbounded")]
    AllZero,
    #[error("exact solve left a nonzero residual")]
    Residual,
}

/// Dual graph of a log resolution with validated, negative-definite
/// intersection matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    strict: Vec<StrictComponent>,
    matrix: Vec<Vec<i64>>,
}

/// Incremental construction by id.
#[derive(Default, Clone, Debug)]
pub struct GraphBuilder {
    vertices: Vec<Vertex>,
    edges: Vec<(String, String)>,
    strict: Vec<(String, Rational, Vec<String>)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: &str, self_int: i64) -> Self {
        self.vertices.push(Vertex { id: id.to_string(), self_int });
        self
    }

    pub fn edge(mut self, a: &str, b: &str) -> Self {
        self.edges.push((a.to_string(), b.to_string()));
        self
    }

    /// Strict component meeting the listed vertex or strict-component ids.
    pub fn strict(mut self, id: &str, mult: Rational, meets: &[&str]) -> Self {
        self.strict.push((id.to_string(), mult, meets.iter().map(|s| s.to_string()).collect()));
        self
    }

    pub fn build(self) -> Result<ResolutionGraph, GraphError> {
        if self.vertices.is_empty() {
            return Err(GraphError::NoVertices);
        }
        let mut vindex = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vindex.insert(v.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateId(v.id.clone()));
            }
            if v.self_int > -1 {
                return Err(GraphError::SelfIntersection { id: v.id.clone(), self_int: v.self_int });
            }
        }
        let mut sindex = HashMap::new();
        for (i, (id, mult, _)) in self.strict.iter().enumerate() {
            if vindex.contains_key(id) || sindex.insert(id.clone(), i).is_some() {
                return Err(GraphError::DuplicateId(id.clone()));
            }
            if mult.is_negative() {
                return Err(GraphError::NegativeMultiplicity(id.clone()));
            }
        }
        let lookup = |id: &String| vindex.get(id).copied().ok_or_else(|| GraphError::UnknownId(id.clone()));
        let mut edges = Vec::new();
        for (a, b) in &self.edges {
            let (i, j) = (lookup(a)?, lookup(b)?);
            let e = (i.min(j), i.max(j));
            if i == j || edges.contains(&e) {
                return Err(GraphError::BadEdge(a.clone(), b.clone()));
            }
            edges.push(e);
        }
        let mut strict = Vec::new();
        for (k, (id, mult, meets)) in self.strict.into_iter().enumerate() {
            let mut vs = Vec::new();
            let mut ss = Vec::new();
            for target in &meets {
                if let Some(&i) = vindex.get(target) {
                    vs.push(i);
                } else if let Some(&s) = sindex.get(target).filter(|&&s| s != k) {
                    ss.push(s);
                } else {
                    return Err(GraphError::UnknownId(target.clone()));
                }
            }
            strict.push(StrictComponent { id, mult, meets: vs, meets_strict: ss });
        }
        let n = self.vertices.len();
        let mut matrix = vec![vec![0i64; n]; n];
        for (i, v) in self.vertices.iter().enumerate() {
            matrix[i][i] = v.self_int;
        }
        for &(i, j) in &edges {
            matrix[i][j] = 1;
            matrix[j][i] = 1;
        }
        let g = ResolutionGraph { vertices: self.vertices, edges, strict, matrix };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if !linalg::is_negative_definite(&g.matrix) {
            return Err(GraphError::NotNegativeDefinite);
        }
        Ok(g)
    }
}

impl ResolutionGraph {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn strict_components(&self) -> &[StrictComponent] {
        &self.strict
    }

    pub fn intersection_matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Multiplicities recorded on the strict components.
    pub fn strict_mults(&self) -> Vec<Rational> {
        self.strict.iter().map(|s| s.mult.clone()).collect()
    }

    /// Same graph with new strict multiplicities.
    pub fn with_strict_mults(&self, mults: &[Rational]) -> Result<ResolutionGraph, LctError> {
        self.check_mults(mults)?;
        let mut g = self.clone();
        for (s, m) in g.strict.iter_mut().zip(mults) {
            s.mult = m.clone();
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        // Nodes: vertices 0..n, strict components n..n+s.
        let n = self.vertices.len();
        let total = n + self.strict.len();
        let mut adj = vec![Vec::new(); total];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for (k, s) in self.strict.iter().enumerate() {
            for &i in &s.meets {
                adj[n + k].push(i);
                adj[i].push(n + k);
            }
            for &t in &s.meets_strict {
                adj[n + k].push(n + t);
                adj[n + t].push(n + k);
            }
        }
        let mut seen = vec![false; total];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn check_mults(&self, mults: &[Rational]) -> Result<(), LctError> {
        if mults.len() != self.strict.len() {
            return Err(LctError::MultiplicityCount { expected: self.strict.len(), got: mults.len() });
        }
        if mults.iter().any(Signed::is_negative) {
            return Err(LctError::NegativeMultiplicity);
        }
        Ok(())
    }

    fn solve_checked(&self, rhs: &[Rational]) -> Result<Vec<Rational>, LctError> {
        let x = linalg::solve(&self.matrix, rhs).ok_or(LctError::Residual)?;
        if linalg::apply(&self.matrix, &x) != rhs {
            return Err(LctError::Residual);
        }
        Ok(x)
    }

    /// `sum_k m_k (F_k . E_i)` for each vertex.
    pub fn strict_intersections(&self, mults: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.vertices.len()];
        for (s, m) in self.strict.iter().zip(mults) {
            for &i in &s.meets {
                out[i] += m;
            }
        }
        out
    }
}

/// Discrepancies of the exceptional curves (coefficients of `K_Y - p^*K_X`).
pub fn discrepancy_vector(g: &ResolutionGraph) -> Vec<Rational> {
    let rhs: Vec<Rational> = g.vertices.iter().map(|v| Rational::from_integer((-2 - v.self_int).into())).collect();
    g.solve_checked(&rhs).expect("negative definite matrix is invertible")
}

/// Coefficients of the exceptional curves in the pullback of the boundary
/// with the given strict multiplicities.
pub fn pullback(g: &ResolutionGraph, strict_mults: &[Rational]) -> Result<Vec<Rational>, LctError> {
    g.check_mults(strict_mults)?;
    let rhs: Vec<Rational> = g.strict_intersections(strict_mults).into_iter().map(|x| -x).collect();
    g.solve_checked(&rhs)
}

/// `min{(b_i + 1)/r_i : r_i > 0}` together with `1/m_k` for strict
/// components of positive multiplicity.
pub fn lct(g: &ResolutionGraph, strict_mults: &[Rational]) -> Result<Rational, LctError> {
    threshold(&discrepancy_vector(g), &pullback(g, strict_mults)?, strict_mults)
}

fn threshold(disc: &[Rational], pull: &[Rational], strict_mults: &[Rational]) -> Result<Rational, LctError> {
    let exceptional = disc
        .iter()
        .zip(pull)
        .filter(|(_, r)| r.is_positive())
        .map(|(b, r)| (b + Rational::one()) / r);
    let strict = strict_mults.iter().filter(|m| m.is_positive()).map(Rational::recip);
    exceptional.chain(strict).min().ok_or(LctError::AllZero)
}

/// Discrepancies, pullback multiplicities and threshold for the graph's own
/// strict multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogPullbackResult {
    pub discrepancy: Vec<Rational>,
    pub pullback_mult: Vec<Rational>,
    pub strict_mult: Vec<Rational>,
    pub lct: Rational,
}

pub fn log_pullback(g: &ResolutionGraph) -> Result<LogPullbackResult, LctError> {
    let strict_mult = g.strict_mults();
    let discrepancy = discrepancy_vector(g);
    let pullback_mult = pullback(g, &strict_mult)?;
    let lct = threshold(&discrepancy, &pullback_mult, &strict_mult)?;
    Ok(LogPullbackResult { discrepancy, pullback_mult, strict_mult, lct })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn value<'a>(field: &'a str, key: &str) -> Option<&'a str> {
    field.strip_prefix(key).and_then(|f| f.strip_prefix('='))
}

/// Parses the graph text format:
///
/// ```text
/// V <id> self=<int>
/// E <id> <id>
/// S <id> mult=<rational> meets=<id>[,<id>...]
/// ```
///
/// with `#` comments and blank lines ignored.
pub fn parse_graph(text: &str) -> Result<ResolutionGraph, GraphParseError> {
    let mut b = GraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let err = |message: &str| GraphParseError::Syntax { line, message: message.to_string() };
        let fields: Vec<&str> = l.split_whitespace().collect();
        match fields.as_slice() {
            ["V", id, s] => {
                let v = value(s, "self").ok_or_else(|| err("expected self=<int>"))?;
                let self_int: i64 = v.parse().map_err(|_| err("self-intersection is not an integer"))?;
                b = b.vertex(id, self_int);
            }
            ["E", x, y] => b = b.edge(x, y),
            ["S", id, m, meets] => {
                let m = value(m, "mult").ok_or_else(|| err("expected mult=<rational>"))?;
                let mult = parse_rational(m).ok_or_else(|| err("multiplicity is not a rational"))?;
                let meets = value(meets, "meets").ok_or_else(|| err("expected meets=<id>[,<id>...]"))?;
                let ids: Vec<&str> = meets.split(',').collect();
                if ids.iter().any(|s| s.is_empty()) {
                    return Err(err("empty id in meets list"));
                }
                b = b.strict(id, mult, &ids);
            }
            _ => return Err(err("expected a V, E or S record")),
        }
    }
    Ok(b.build()?)
}

impl fmt::Display for ResolutionGraph {
    /// Writes the graph in the text format accepted by [`parse_graph`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "V {} self={}", v.id, v.self_int)?;
        }
        for &(i, j) in &self.edges {
            writeln!(f, "E {} {}", self.vertices[i].id, self.vertices[j].id)?;
        }
        for s in &self.strict {
            let meets: Vec<&str> = s
                .meets
                .iter()
                .map(|&i| self.vertices[i].id.as_str())
                .chain(s.meets_strict.iter().map(|&k| self.strict[k].id.as_str()))
                .collect();
            writeln!(f, "S {} mult={} meets={}", s.id, s.mult, meets.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    fn a2_with_boundary() -> ResolutionGraph {
        GraphBuilder::new()
            .vertex("E1", -2)
            .vertex("E2", -2)
            .edge("E1", "E2")
            .strict("F", int(1), &["E1"])
            .build()
            .unwrap()
    }

    #[test]
    fn rdp_chain_is_crepant() {
        let g = a2_with_boundary();
        assert_eq!(discrepancy_vector(&g), vec![int(0), int(0)]);
        assert_eq!(pullback(&g, &[int(1)]).unwrap(), vec![rat(2, 3), rat(1, 3)]);
        assert_eq!(lct(&g, &[int(1)]).unwrap(), int(1));
    }

    #[test]
    fn disjoint_strict_component_pulls_back_to_zero() {
        let g = GraphBuilder::new()
            .vertex("E1", -3)
            .strict("F1", int(1), &["E1"])
            .strict("F2", int(2), &["F1"])
            .build()
            .unwrap();
        assert_eq!(pullback(&g, &[int(0), int(2)]).unwrap(), vec![int(0)]);
        assert_eq!(lct(&g, &[int(0), int(2)]).unwrap(), rat(1, 2));
    }

    #[test]
    fn threshold_errors() {
        let g = a2_with_boundary();
        assert_eq!(lct(&g, &[int(0)]), Err(LctError::AllZero));
        assert_eq!(lct(&g, &[]), Err(LctError::MultiplicityCount { expected: 1, got: 0 }));
        assert_eq!(pullback(&g, &[int(-1)]), Err(LctError::NegativeMultiplicity));
    }

    #[test]
    fn builder_validation() {
        assert_eq!(GraphBuilder::new().build(), Err(GraphError::NoVertices));
        assert_eq!(
            GraphBuilder::new().vertex("E", 0).build(),
            Err(GraphError::SelfIntersection { id: "E".into(), self_int: 0 })
        );
        assert_eq!(
            GraphBuilder::new().vertex("E", -1).vertex("E", -2).build(),
            Err(GraphError::DuplicateId("E".into()))
        );
        assert_eq!(GraphBuilder::new().vertex("E", -2).vertex("G", -2).build(), Err(GraphError::Disconnected));
        assert_eq!(
            GraphBuilder::new().vertex("A", -1).vertex("B", -1).edge("A", "B").build(),
            Err(GraphError::NotNegativeDefinite)
        );
        assert_eq!(
            GraphBuilder::new().vertex("A", -2).edge("A", "A").build(),
            Err(GraphError::BadEdge("A".into(), "A".into()))
        );
        assert_eq!(
            GraphBuilder::new().vertex("A", -2).strict("F", int(1), &["X"]).build(),
            Err(GraphError::UnknownId("X".into()))
        );
    }

    #[test]
    fn text_format_round_trip() {
        let text = "# A2 chain\nV E1 self=-2\nV E2 self=-2\nE E1 E2\nS F mult=3/2 meets=E1,E1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.strict_components()[0].meets, vec![0, 0]);
        assert_eq!(parse_graph(&g.to_string()).unwrap(), g);
        assert!(matches!(parse_graph("V E1 -2"), Err(GraphParseError::Syntax { line: 1, .. })));
        assert!(matches!(
            parse_graph("V E1 self=-2\nS F mult=x meets=E1"),
            Err(GraphParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(parse_graph("V E1 self=-1\nV E2 self=-1\nE E1 E2"), Err(GraphParseError::Graph(_))));
    }
}
