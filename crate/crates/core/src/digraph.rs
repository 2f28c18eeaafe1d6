//! Immutable oriented digraphs on vertices `0..n`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("arc ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("arc ({0}, {1}) given twice")]
    DuplicateArc(usize, usize),
    #[error("arcs ({0}, {1}) and ({1}, {0}) form a digon; only oriented graphs are supported")]
    Digon(usize, usize),
    #[error("edge list line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// A simple oriented digraph: no loops, no parallel arcs, no digons.
///
/// Adjacency lists are kept sorted, so `has_arc` is a binary search and
/// iteration order is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    arc_count: usize,
}

/// JSON wire form: `{"n": 3, "arcs": [[0,1],[1,2],[2,0]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub arcs: Vec<[usize; 2]>,
}

impl Digraph {
    /// Builds a digraph, rejecting anything that is not a simple oriented graph.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        let mut arc_count = 0;
        for u in 0..n {
            out_adj[u].sort_unstable();
            in_adj[u].sort_unstable();
            if let Some(w) = out_adj[u].windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateArc(u, w[0]));
            }
            arc_count += out_adj[u].len();
        }
        let g = Digraph {
            out_adj,
            in_adj,
            arc_count,
        };
        for (u, v) in g.arcs() {
            if g.has_arc(v, u) {
                return Err(GraphError::Digon(u.min(v), u.max(v)));
            }
        }
        Ok(g)
    }

    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Digraph {
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            arc_count: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.out_adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out_adj[u]
    }

    pub fn in_neighbors(&self, u: usize) -> &[usize] {
        &self.in_adj[u]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_adj[u].len()
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.in_adj[u].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn is_source(&self, u: usize) -> bool {
        self.in_adj[u].is_empty()
    }

    pub fn is_sink(&self, u: usize) -> bool {
        self.out_adj[u].is_empty()
    }

    /// Closed out-neighbourhood `N+[u]`, sorted.
    pub fn closed_out_neighborhood(&self, u: usize) -> Vec<usize> {
        let mut v = self.out_adj[u].clone();
        let pos = v.binary_search(&u).unwrap_err();
        v.insert(pos, u);
        v
    }

    /// Exactly one arc between every pair of distinct vertices.
    pub fn is_tournament(&self) -> bool {
        let n = self.order();
        self.arc_count == n * n.saturating_sub(1) / 2
    }

    pub fn max_out_degree(&self) -> usize {
        self.out_adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Induced subdigraph on `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut local = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let arcs = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let local = &local;
            self.out_adj[v]
                .iter()
                .filter_map(move |&w| (local[w] != usize::MAX).then_some((i, local[w])))
        });
        Digraph::new(vertices.len(), arcs.collect::<Vec<_>>())
            .expect("induced subgraph of a valid digraph is valid")
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.order());
        Digraph::new(self.order(), self.arcs().map(|(u, v)| (perm[u], perm[v])).collect::<Vec<_>>())
            .expect("relabelling preserves validity")
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.order(),
            arcs: self.arcs().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        Digraph::new(json.n, json.arcs.iter().map(|a| (a[0], a[1])))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph JSON is always serialisable")
    }

    pub fn from_json_str(s: &str) -> Result<Self, GraphError> {
        let json: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        Digraph::from_json(&json)
    }

    /// Edge-list text: first line `n`, then one `u v` arc per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.order());
        for (u, v) in self.arcs() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Parses the edge-list format. `#` starts a comment; blank lines are ignored.
    pub fn from_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut n = None;
        let mut arcs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let parse = |f: &str| {
                f.parse::<usize>().map_err(|e| GraphError::Parse {
                    line,
                    msg: format!("{f:?}: {e}"),
                })
            };
            match (n, fields.as_slice()) {
                (None, [count]) => n = Some(parse(count)?),
                (None, _) => {
                    return Err(GraphError::Parse {
                        line,
                        msg: "expected the vertex count on its own line".into(),
                    })
                }
                (Some(_), [u, v]) => arcs.push((parse(u)?, parse(v)?)),
                (Some(_), _) => {
                    return Err(GraphError::Parse {
                        line,
                        msg: "expected two vertex ids".into(),
                    })
                }
            }
        }
        let n = n.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing vertex count".into(),
        })?;
        Digraph::new(n, arcs)
    }
}
