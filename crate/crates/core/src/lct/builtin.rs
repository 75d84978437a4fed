//! Shipped resolution graphs of the central-fiber types.

use num_traits::One;

use super::kawamata::KawamataFiberType;
use super::{GraphBuilder, GraphError, ResolutionGraph};
use crate::exactmath::Rational;
use crate::quotsing::{hj_expansion, CyclicQuotient};

/// A basket singularity and the vertices of its exceptional chain, in
/// Hirzebruch-Jung order. Blow-ups in the log resolution may have lowered
/// the self-intersections of these curves; their discrepancies are those of
/// the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasketChain {
    pub singularity: CyclicQuotient,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltinGraph {
    pub fiber: KawamataFiberType,
    pub graph: ResolutionGraph,
    pub chains: Vec<BasketChain>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuiltinError {
    #[error("no resolution graph for type {0}")]
    Unsupported(KawamataFiberType),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

struct Layout {
    vertices: &'static [(&'static str, i64)],
    edges: &'static [(&'static str, &'static str)],
    strict: &'static [(&'static str, &'static [&'static str])],
    chains: &'static [&'static [&'static str]],
}

const II2: Layout = Layout {
    vertices: &[("E1", -6), ("E2", -2), ("E3", -1)],
    edges: &[("E1", "E3"), ("E2", "E3")],
    strict: &[("F1", &["E3"])],
    chains: &[&["E1"]],
};

const II3: Layout = Layout {
    vertices: &[("E1", -6), ("E2", -3), ("E3", -1)],
    edges: &[("E1", "E3"), ("E2", "E3")],
    strict: &[("F1", &["E3"])],
    chains: &[&["E1", "E2"]],
};

const II4: Layout = Layout {
    vertices: &[("E1", -4), ("E2", -2), ("E3", -2), ("E4", -6)],
    edges: &[("E2", "E3"), ("E3", "E4")],
    strict: &[("F1", &["E1", "E3"])],
    chains: &[&["E2", "E3", "E4"], &["E1"]],
};

const II5: Layout = Layout {
    vertices: &[("E1", -2), ("E2", -5), ("E3", -3), ("E4", -2), ("E5", -2), ("E6", -2), ("E7", -7)],
    edges: &[("E1", "E2"), ("E2", "E3"), ("E4", "E5"), ("E5", "E6"), ("E6", "E7")],
    strict: &[("F1", &["E2", "E4"])],
    chains: &[&["E3", "E2", "E1"], &["E7", "E6", "E5", "E4"]],
};

const III2: Layout = Layout {
    vertices: &[("E1", -4), ("E2", -4)],
    edges: &[],
    strict: &[("F1", &["F2"]), ("F2", &["E1", "E2"])],
    chains: &[&["E1"], &["E2"]],
};

const III3: Layout = Layout {
    vertices: &[("E1", -2), ("E2", -5), ("E3", -2), ("E4", -5), ("E5", -5), ("E6", -2)],
    edges: &[("E1", "E2"), ("E3", "E4"), ("E5", "E6")],
    strict: &[("F1", &["E1", "E5"]), ("F2", &["E3", "E5"])],
    chains: &[&["E2", "E1"], &["E4", "E3"], &["E5", "E6"]],
};

const IV2: Layout = Layout {
    vertices: &[("E1", -4), ("E2", -4), ("E3", -4), ("E4", -4)],
    edges: &[],
    strict: &[("F1", &["E1", "E4"]), ("F2", &["E2", "E4"]), ("F3", &["E3", "E4"])],
    chains: &[&["E1"], &["E2"], &["E3"], &["E4"]],
};

fn from_layout(fiber: KawamataFiberType, layout: &Layout) -> Result<BuiltinGraph, BuiltinError> {
    let mut b = GraphBuilder::new();
    for &(id, s) in layout.vertices {
        b = b.vertex(id, s);
    }
    for &(x, y) in layout.edges {
        b = b.edge(x, y);
    }
    for &(id, meets) in layout.strict {
        b = b.strict(id, Rational::one(), meets);
    }
    let graph = b.build()?;
    let chains = fiber
        .basket()
        .into_iter()
        .zip(layout.chains)
        .map(|(singularity, ids)| BasketChain {
            singularity,
            vertices: ids.iter().map(|id| graph.vertex_index(id).expect("chain id is a vertex")).collect(),
        })
        .collect();
    Ok(BuiltinGraph { fiber, graph, chains })
}

/// The cycle `F_1, ..., F_d` with the chain of each node singularity
/// inserted between consecutive curves.
fn multiple_i(fiber: KawamataFiberType, d: u64) -> Result<BuiltinGraph, BuiltinError> {
    let basket = fiber.basket();
    if basket.is_empty() {
        return Err(BuiltinError::Unsupported(fiber));
    }
    let mut b = GraphBuilder::new();
    let mut chain_ids = Vec::new();
    for (node, s) in basket.iter().enumerate() {
        let ids: Vec<String> = (0..hj_expansion(s).len()).map(|k| format!("E{}_{}", node + 1, k + 1)).collect();
        for (id, &e) in ids.iter().zip(hj_expansion(s).entries()) {
            b = b.vertex(id, -(e as i64));
        }
        for w in ids.windows(2) {
            b = b.edge(&w[0], &w[1]);
        }
        chain_ids.push(ids);
    }
    let d = d as usize;
    for i in 0..d {
        // F_i leaves node i from its first chain end and enters node i-1 at its last.
        let prev = (i + d - 1) % d;
        let meets = [chain_ids[i][0].as_str(), chain_ids[prev].last().unwrap().as_str()];
        b = b.strict(&format!("F{}", i + 1), Rational::one(), &meets);
    }
    let graph = b.build()?;
    let chains = basket
        .into_iter()
        .zip(&chain_ids)
        .map(|(singularity, ids)| BasketChain {
            singularity,
            vertices: ids.iter().map(|id| graph.vertex_index(id).unwrap()).collect(),
        })
        .collect();
    Ok(BuiltinGraph { fiber, graph, chains })
}

/// Resolution graph of the central fiber with all strict multiplicities 1.
pub fn builtin_graph(t: KawamataFiberType) -> Result<BuiltinGraph, BuiltinError> {
    use KawamataFiberType::*;
    match t {
        II(2) => from_layout(t, &II2),
        II(3) => from_layout(t, &II3),
        II(4) => from_layout(t, &II4),
        II(5) => from_layout(t, &II5),
        III(2) => from_layout(t, &III2),
        III(3) => from_layout(t, &III3),
        IV(2) => from_layout(t, &IV2),
        MultipleI { d, .. } if d > 0 => multiple_i(t, d),
        _ => Err(BuiltinError::Unsupported(t)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lct::{discrepancy_vector, lct, pullback};
    use crate::exactmath::{int, rat};
    use crate::quotsing::chain_discrepancies;

    #[test]
    fn chains_match_hj_expansions() {
        for t in KawamataFiberType::lct_bearing() {
            let g = builtin_graph(t).unwrap();
            let disc = discrepancy_vector(&g.graph);
            assert_eq!(g.chains.len(), t.basket().len());
            for c in &g.chains {
                let hj = hj_expansion(&c.singularity);
                assert_eq!(c.vertices.len(), hj.len(), "{t}");
                // Further blow-ups may lower self-intersections, never discrepancies.
                for (&i, &e) in c.vertices.iter().zip(hj.entries()) {
                    assert!(-g.graph.vertices()[i].self_int >= e as i64, "{t}");
                }
                let sub: Vec<Rational> = c.vertices.iter().map(|&i| disc[i].clone()).collect();
                assert_eq!(sub, chain_discrepancies(&hj), "{t}");
            }
        }
    }

    #[test]
    fn ii2_coefficients() {
        let g = builtin_graph(KawamataFiberType::II(2)).unwrap().graph;
        assert_eq!(discrepancy_vector(&g), vec![rat(-1, 2), rat(1, 2), int(1)]);
        assert_eq!(pullback(&g, &[int(1)]).unwrap(), vec![rat(1, 2), rat(3, 2), int(3)]);
        assert_eq!(lct(&g, &[int(1)]).unwrap(), rat(2, 3));
    }

    #[test]
    fn generated_cycles() {
        let one = builtin_graph("1I1(2,1)".parse().unwrap()).unwrap();
        assert_eq!(one.graph.vertices().len(), 1);
        assert_eq!(one.graph.strict_components()[0].meets, vec![0, 0]);
        let g = builtin_graph("2I3(3,1)".parse().unwrap()).unwrap();
        assert_eq!(g.graph.vertices().len(), 6);
        assert_eq!(g.graph.strict_components().len(), 3);
        assert!(lct(&g.graph, &g.graph.strict_mults()).is_ok());
        assert!(matches!(builtin_graph("mI0".parse().unwrap()), Err(BuiltinError::Unsupported(_))));
        assert!(matches!(builtin_graph("1I4".parse().unwrap()), Err(BuiltinError::Unsupported(_))));
    }
}
