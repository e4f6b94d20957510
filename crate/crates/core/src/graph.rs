//! Simple undirected graphs stored as closed neighborhoods, plus the builtin
//! graph families used throughout the crate.
//!
//! Vertex numbering of the builtin families is fixed:
//!
//! * `Cycle(n)`: vertices `0..n` in cyclic order, `i ~ i+1 (mod n)`. `C1 = K1`
//!   and `C2 = K2`.
//! * `Path(n)`: vertices `0..n` in path order.
//! * `Complete(n)`: vertices `0..n`.
//! * `Wheel(n)`: `K1 ∨ C(n-1)`; the hub is vertex `0`, rim vertex `i` is
//!   cycle vertex `i-1`.
//! * `JoinCompleteCycle(m, n)`: `K_m ∨ C_n`; clique vertices `0..m` first.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid parameter for {family}: {reason}")]
    InvalidParameter { family: &'static str, reason: String },
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("cannot parse graph family {0:?}; expected e.g. cycle:7, path:6, complete:5, wheel:6, join:2,5")]
    BadFamily(String),
}

/// Fixed-width bit set over the vertices `0..len`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    len: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(len: usize) -> Self {
        VertexSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn universe_len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.len, "vertex {v} outside set of width {}", self.len);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.len && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    /// The set as a single machine word, when the universe fits in 64 bits.
    pub fn as_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn is_superset(&self, other: &VertexSet) -> bool {
        other.len <= self.len
            && other
                .words
                .iter()
                .zip(&self.words)
                .all(|(o, s)| o & !s == 0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A simple undirected graph. Entry `v` of the neighborhood table is `N[v]`,
/// which always contains `v` itself.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    closed: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let closed = (0..n)
            .map(|v| {
                let mut s = VertexSet::new(n);
                s.insert(v);
                s
            })
            .collect();
        Graph { closed }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        self.closed[u].insert(v);
        self.closed[v].insert(u);
    }

    pub fn order(&self) -> usize {
        self.closed.len()
    }

    pub fn closed_neighborhood(&self, v: usize) -> &VertexSet {
        &self.closed[v]
    }

    pub fn closed_neighborhoods(&self) -> &[VertexSet] {
        &self.closed
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.closed[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.closed[v].count() - 1
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in order of `v` then `u`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.order()).flat_map(move |v| {
            (0..v).filter(move |&u| self.closed[v].contains(u)).map(move |u| (u, v))
        })
    }

    /// Checks closure and symmetry of the neighborhood table.
    pub fn is_well_formed(&self) -> bool {
        let n = self.order();
        self.closed.iter().enumerate().all(|(v, nb)| {
            nb.universe_len() == n
                && nb.contains(v)
                && nb.iter().all(|u| u < n && self.closed[u].contains(v))
        })
    }

    /// Connected components, each sorted ascending; components are ordered by
    /// their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in self.closed[v].iter() {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for u in self.closed[v].iter() {
                let j = index[u];
                if j != usize::MAX && j > i {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// True iff two distinct vertices share the same closed neighborhood.
    pub fn has_duplicate_closed_neighborhoods(&self) -> bool {
        let mut sorted: Vec<&VertexSet> = self.closed.iter().collect();
        sorted.sort_by(|a, b| a.words.cmp(&b.words));
        sorted.windows(2).any(|w| w[0] == w[1])
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// `g ⊔ h`: the vertices of `h` are shifted up by `g.order()`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let offset = g.order();
    let mut out = Graph::empty(offset + h.order());
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.add_edge(u + offset, v + offset);
    }
    out
}

/// `g ∨ h`: the disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let offset = g.order();
    let mut out = disjoint_union(g, h);
    for u in 0..offset {
        for v in 0..h.order() {
            out.add_edge(u, v + offset);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphFamily {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    /// Wheel of the given total order.
    Wheel(usize),
    JoinCompleteCycle { m: usize, n: usize },
}

impl GraphFamily {
    pub fn build(&self) -> Result<Graph, GraphError> {
        build_family(*self)
    }
}

fn positive(family: &'static str, name: &str, value: usize) -> Result<(), GraphError> {
    if value == 0 {
        Err(GraphError::InvalidParameter {
            family,
            reason: format!("{name} must be at least 1"),
        })
    } else {
        Ok(())
    }
}

pub fn build_family(family: GraphFamily) -> Result<Graph, GraphError> {
    match family {
        GraphFamily::Cycle(n) => {
            positive("cycle", "n", n)?;
            Ok(cycle(n))
        }
        GraphFamily::Path(n) => {
            positive("path", "n", n)?;
            let mut g = Graph::empty(n);
            for i in 1..n {
                g.add_edge(i - 1, i);
            }
            Ok(g)
        }
        GraphFamily::Complete(n) => {
            positive("complete", "n", n)?;
            Ok(complete(n))
        }
        GraphFamily::Wheel(n) => {
            if n < 4 {
                return Err(GraphError::InvalidParameter {
                    family: "wheel",
                    reason: format!("order must be at least 4, got {n}"),
                });
            }
            Ok(join(&complete(1), &cycle(n - 1)))
        }
        GraphFamily::JoinCompleteCycle { m, n } => {
            positive("join", "m", m)?;
            positive("join", "n", n)?;
            Ok(join(&complete(m), &cycle(n)))
        }
    }
}

fn cycle(n: usize) -> Graph {
    match n {
        1 | 2 => complete(n),
        _ => {
            let mut g = Graph::empty(n);
            for i in 0..n {
                g.add_edge(i, (i + 1) % n);
            }
            g
        }
    }
}

fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        for u in 0..v {
            g.add_edge(u, v);
        }
    }
    g
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Cycle(n) => write!(f, "cycle:{n}"),
            GraphFamily::Path(n) => write!(f, "path:{n}"),
            GraphFamily::Complete(n) => write!(f, "complete:{n}"),
            GraphFamily::Wheel(n) => write!(f, "wheel:{n}"),
            GraphFamily::JoinCompleteCycle { m, n } => write!(f, "join:{m},{n}"),
        }
    }
}

impl FromStr for GraphFamily {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::BadFamily(s.to_string());
        let (name, params) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = params
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        let family = match (name.trim().to_ascii_lowercase().as_str(), nums.as_slice()) {
            ("cycle", [n]) => GraphFamily::Cycle(*n),
            ("path", [n]) => GraphFamily::Path(*n),
            ("complete", [n]) => GraphFamily::Complete(*n),
            ("wheel", [n]) => GraphFamily::Wheel(*n),
            ("join", [m, n]) => GraphFamily::JoinCompleteCycle { m: *m, n: *n },
            _ => return Err(bad()),
        };
        Ok(family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nbhd(g: &Graph, v: usize) -> Vec<usize> {
        g.closed_neighborhood(v).iter().collect()
    }

    #[test]
    fn triangle_is_complete() {
        let g = build_family(GraphFamily::Cycle(3)).unwrap();
        for v in 0..3 {
            assert_eq!(nbhd(&g, v), vec![0, 1, 2]);
        }
        assert_eq!(g, build_family(GraphFamily::Complete(3)).unwrap());
    }

    #[test]
    fn small_cycles_follow_convention() {
        let c1 = build_family(GraphFamily::Cycle(1)).unwrap();
        assert_eq!(c1.order(), 1);
        assert_eq!(nbhd(&c1, 0), vec![0]);
        let c2 = build_family(GraphFamily::Cycle(2)).unwrap();
        assert_eq!(c2, build_family(GraphFamily::Complete(2)).unwrap());
    }

    #[test]
    fn wheel_four_is_k4() {
        let w = build_family(GraphFamily::Wheel(4)).unwrap();
        assert_eq!(w, build_family(GraphFamily::Complete(4)).unwrap());
    }

    #[test]
    fn wheel_five_is_hub_plus_four_cycle() {
        let c4 = build_family(GraphFamily::Cycle(4)).unwrap();
        let k1 = build_family(GraphFamily::Complete(1)).unwrap();
        let w5 = build_family(GraphFamily::Wheel(5)).unwrap();
        assert_eq!(join(&k1, &c4), w5);
        assert_eq!(w5.degrees(), vec![4, 3, 3, 3, 3]);
        assert_eq!(w5.edge_count(), 8);
    }

    #[test]
    fn family_parameter_errors() {
        assert!(matches!(
            build_family(GraphFamily::Wheel(3)),
            Err(GraphError::InvalidParameter { family: "wheel", .. })
        ));
        assert!(build_family(GraphFamily::Cycle(0)).is_err());
        assert!(build_family(GraphFamily::JoinCompleteCycle { m: 0, n: 3 }).is_err());
    }

    #[test]
    fn joins_of_small_complete_graphs() {
        let k1 = build_family(GraphFamily::Complete(1)).unwrap();
        let k2 = build_family(GraphFamily::Complete(2)).unwrap();
        assert_eq!(join(&k1, &k1), k2);
        assert_eq!(join(&k2, &k2), build_family(GraphFamily::Complete(4)).unwrap());
    }

    #[test]
    fn join_sees_opposite_side() {
        let g = build_family(GraphFamily::Path(3)).unwrap();
        let h = build_family(GraphFamily::Cycle(4)).unwrap();
        let j = join(&g, &h);
        assert!(j.is_well_formed());
        for v in 0..3 {
            assert!((3..7).all(|u| j.closed_neighborhood(v).contains(u)));
        }
        for v in 3..7 {
            assert!((0..3).all(|u| j.closed_neighborhood(v).contains(u)));
        }
    }

    #[test]
    fn union_shifts_indices() {
        let c3 = build_family(GraphFamily::Cycle(3)).unwrap();
        let u = disjoint_union(&c3, &c3);
        assert_eq!(u.order(), 6);
        assert_eq!(u.components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(nbhd(&u, 4), vec![3, 4, 5]);

        let k1 = build_family(GraphFamily::Complete(1)).unwrap();
        let two = disjoint_union(&k1, &k1);
        assert_eq!(two.order(), 2);
        assert_eq!(two.edge_count(), 0);
    }

    #[test]
    fn duplicate_closed_neighborhoods() {
        let k3 = build_family(GraphFamily::Complete(3)).unwrap();
        assert!(k3.has_duplicate_closed_neighborhoods());
        let c4 = build_family(GraphFamily::Cycle(4)).unwrap();
        assert_eq!(nbhd(&c4, 0), vec![0, 1, 3]);
        assert_eq!(nbhd(&c4, 2), vec![1, 2, 3]);
        assert!(!c4.has_duplicate_closed_neighborhoods());
        for n in 4..30 {
            let c = build_family(GraphFamily::Cycle(n)).unwrap();
            assert!(!c.has_duplicate_closed_neighborhoods(), "C{n}");
        }
        // pendant pair on a path end: N[0] = {0,1}, N[1] = {0,1,2}; distinct
        let p3 = build_family(GraphFamily::Path(3)).unwrap();
        assert!(!p3.has_duplicate_closed_neighborhoods());
        let p2 = build_family(GraphFamily::Path(2)).unwrap();
        assert!(p2.has_duplicate_closed_neighborhoods());
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, order: 3 })
        );
        let g = Graph::from_edges(3, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn wide_vertex_sets() {
        let c = build_family(GraphFamily::Cycle(130)).unwrap();
        assert!(c.is_well_formed());
        assert_eq!(nbhd(&c, 0), vec![0, 1, 129]);
        assert!(c.closed_neighborhood(0).as_u64().is_none());
        assert!(c.is_connected());
    }

    #[test]
    fn family_spec_parsing() {
        assert_eq!("cycle:7".parse::<GraphFamily>().unwrap(), GraphFamily::Cycle(7));
        assert_eq!(
            "join:2,5".parse::<GraphFamily>().unwrap(),
            GraphFamily::JoinCompleteCycle { m: 2, n: 5 }
        );
        assert_eq!("Wheel:6".parse::<GraphFamily>().unwrap(), GraphFamily::Wheel(6));
        assert!("cycle".parse::<GraphFamily>().is_err());
        assert!("star:4".parse::<GraphFamily>().is_err());
        assert!("join:3".parse::<GraphFamily>().is_err());
        for s in ["cycle:7", "path:2", "complete:5", "wheel:6", "join:2,5"] {
            assert_eq!(s.parse::<GraphFamily>().unwrap().to_string(), s);
        }
    }
}
