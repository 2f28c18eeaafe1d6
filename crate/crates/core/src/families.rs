//! Generators for the digraph families used throughout the toolkit.
//!
//! Every generator labels vertices densely; the labelling is stated on each
//! function so tests can refer to specific vertices.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::digraph::Digraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family}: {msg}")]
    Precondition { family: &'static str, msg: String },
    #[error("cannot parse family spec: {0}")]
    Parse(String),
}

fn precondition(family: &'static str, msg: impl Into<String>) -> FamilyError {
    FamilyError::Precondition {
        family,
        msg: msg.into(),
    }
}

/// `T_{2m+1}`: vertex `i` has arcs to `i+1, ..., i+m` (mod `2m+1`).
pub fn rotation_tournament(m: usize) -> Result<Digraph, FamilyError> {
    if m == 0 {
        return Err(precondition("rotation", "m must be at least 1"));
    }
    let n = 2 * m + 1;
    let arcs = (0..n).flat_map(|i| (1..=m).map(move |j| (i, (i + j) % n)));
    Ok(Digraph::new(n, arcs.collect::<Vec<_>>()).expect("rotation tournament is oriented"))
}

/// `D_3(i)`: parts `V_j = {j*i, ..., j*i + i - 1}` with every arc `V_j -> V_{j+1 mod 3}`.
pub fn tripartite_cycle(i: usize) -> Result<Digraph, FamilyError> {
    if i == 0 {
        return Err(precondition("tripartite_cycle", "i must be at least 1"));
    }
    let mut arcs = Vec::with_capacity(3 * i * i);
    for part in 0..3 {
        let next = (part + 1) % 3;
        for a in 0..i {
            for b in 0..i {
                arcs.push((part * i + a, next * i + b));
            }
        }
    }
    Ok(Digraph::new(3 * i, arcs).expect("tripartite cycle is oriented"))
}

/// Replaces each vertex `v` of the tournament `t` by an independent set
/// `I_v = {v*k, ..., v*k + k - 1}`; `x ∈ I_u -> y ∈ I_v` iff `u -> v` in `t`.
pub fn blowup(t: &Digraph, k: usize) -> Result<Digraph, FamilyError> {
    if !t.is_tournament() {
        return Err(precondition("blowup", "base digraph must be a tournament"));
    }
    if k < 3 {
        return Err(precondition("blowup", format!("independent sets need k >= 3, got {k}")));
    }
    let arcs = t
        .arcs()
        .flat_map(|(u, v)| (0..k).flat_map(move |a| (0..k).map(move |b| (u * k + a, v * k + b))));
    Ok(Digraph::new(t.order() * k, arcs.collect::<Vec<_>>()).expect("blow-up is oriented"))
}

/// Layers `Z_{2m+1} × {1, ..., Δ+1}`; vertex `(u, layer)` has id `(layer-1)(2m+1) + u`.
///
/// `(u, a) -> (u + j, b)` for `1 <= j <= m` whenever `a = 1` or `a = b`, so each
/// layer is a copy of `T_{2m+1}` and layer 1 feeds every other layer.
pub fn sc_tight(m: usize, delta: usize) -> Result<Digraph, FamilyError> {
    if m.is_multiple_of(2) {
        return Err(precondition("sc_tight", format!("m must be odd, got {m}")));
    }
    if delta == 0 {
        return Err(precondition("sc_tight", "delta must be at least 1"));
    }
    let width = 2 * m + 1;
    let layers = delta + 1;
    let id = |u: usize, layer: usize| layer * width + u;
    let mut arcs = Vec::new();
    for a in 0..layers {
        for u in 0..width {
            for j in 1..=m {
                let w = (u + j) % width;
                if a == 0 {
                    for b in 0..layers {
                        arcs.push((id(u, a), id(w, b)));
                    }
                } else {
                    arcs.push((id(u, a), id(w, a)));
                }
            }
        }
    }
    Ok(Digraph::new(width * layers, arcs).expect("sc_tight digraph is oriented"))
}

/// Whether `(m, delta)` meets the side condition `delta <= (m + 1) / 2` under
/// which the tightness construction is claimed. Not enforced by [`sc_tight`].
pub fn sc_tight_side_condition(m: usize, delta: usize) -> bool {
    2 * delta <= m + 1
}

/// Adds `⌈log2 m⌉` sources after the `m` original vertices. Source `m + i`
/// points at every original vertex whose label has bit `i` equal to 0.
pub fn binary_source_extension(d: &Digraph) -> Digraph {
    let m = d.order();
    let bits = ceil_log2(m);
    let mut arcs: Vec<(usize, usize)> = d.arcs().collect();
    for i in 0..bits {
        for x in 0..m {
            if x >> i & 1 == 0 {
                arcs.push((m + i, x));
            }
        }
    }
    Digraph::new(m + bits, arcs).expect("added sources keep the digraph oriented")
}

pub(crate) fn ceil_log2(m: usize) -> usize {
    if m <= 1 {
        0
    } else {
        (usize::BITS - (m - 1).leading_zeros()) as usize
    }
}

pub fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Quadratic residues of `F_q` (nonzero squares), sorted.
pub fn quadratic_residues(q: usize) -> Vec<usize> {
    let mut r: Vec<usize> = (1..q).map(|x| x * x % q).collect();
    r.sort_unstable();
    r.dedup();
    r
}

/// Paley tournament on `F_q`: `i -> j` iff `j - i` is a nonzero square.
pub fn paley_tournament(q: usize) -> Result<Digraph, FamilyError> {
    if !is_prime(q) {
        return Err(precondition("paley", format!("{q} is not prime")));
    }
    if q % 4 != 3 {
        return Err(precondition("paley", format!("{q} is not 3 mod 4, so the result is not a tournament")));
    }
    let residue = {
        let mut flag = vec![false; q];
        for r in quadratic_residues(q) {
            flag[r] = true;
        }
        flag
    };
    let arcs = (0..q).flat_map(|i| {
        let residue = &residue;
        (0..q).filter_map(move |j| (j != i && residue[(j + q - i) % q]).then_some((i, j)))
    });
    Ok(Digraph::new(q, arcs.collect::<Vec<_>>()).expect("Paley tournament is oriented"))
}

/// `T(n, p)`: for each pair `i < j` in lexicographic order one uniform draw
/// decides `i -> j` (probability `p`) or `j -> i`. ChaCha8 seeded from `seed`.
pub fn random_tournament(n: usize, p: f64, seed: u64) -> Result<Digraph, FamilyError> {
    if n == 0 {
        return Err(precondition("random_tournament", "n must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(precondition("random_tournament", format!("p = {p} is not a probability")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                arcs.push((i, j));
            } else {
                arcs.push((j, i));
            }
        }
    }
    Ok(Digraph::new(n, arcs).expect("random tournament is oriented"))
}

/// `i -> j` for all `i < j`.
pub fn transitive_tournament(n: usize) -> Digraph {
    let arcs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Digraph::new(n, arcs.collect::<Vec<_>>()).expect("transitive tournament is oriented")
}

/// Directed path `0 -> 1 -> ... -> n-1`.
pub fn directed_path(n: usize) -> Digraph {
    Digraph::new(n, (1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).expect("path is oriented")
}

/// Random oriented graph: each unordered pair carries an arc with probability
/// `p_arc`, oriented by a fair coin. Test-input generator.
pub fn random_oriented(n: usize, p_arc: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p_arc {
                arcs.push(if rng.gen::<bool>() { (i, j) } else { (j, i) });
            }
        }
    }
    Digraph::new(n, arcs).expect("random oriented graph is oriented")
}

/// Random acyclic digraph: forward arcs of a random vertex order, each kept
/// with probability `p_arc`.
pub fn random_dag(n: usize, p_arc: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p_arc {
                arcs.push((perm[i], perm[j]));
            }
        }
    }
    Digraph::new(n, arcs).expect("random DAG is oriented")
}

/// Random digraph whose strong components have at most `max_block` vertices:
/// vertices are cut into consecutive blocks, pairs inside a block get a random
/// orientation, and pairs across blocks only ever point forward.
pub fn random_layered(n: usize, max_block: usize, p_arc: f64, seed: u64) -> Digraph {
    assert!(max_block >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut block = vec![0; n];
    let mut start = 0;
    let mut id = 0;
    while start < n {
        let len = rng.gen_range(1..=max_block).min(n - start);
        block[start..start + len].fill(id);
        start += len;
        id += 1;
    }
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() >= p_arc {
                continue;
            }
            if block[i] == block[j] && rng.gen::<bool>() {
                arcs.push((j, i));
            } else {
                arcs.push((i, j));
            }
        }
    }
    Digraph::new(n, arcs).expect("layered digraph is oriented")
}

/// A family together with its parameters; parsed from CLI tokens such as
/// `rotation 3`, `blowup 1 3`, `random 10 0.5` or `binary_source paley 7`.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Rotation { m: usize },
    TripartiteCycle { i: usize },
    /// Blow-up of `T_{2j+1}` with independent sets of size `k`.
    Blowup { j: usize, k: usize },
    ScTight { m: usize, delta: usize },
    BinarySource { base: Box<FamilySpec> },
    Paley { q: usize },
    RandomTournament { n: usize, p: f64, seed: u64 },
    Transitive { n: usize },
    Path { n: usize },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Digraph, FamilyError> {
        match self {
            FamilySpec::Rotation { m } => rotation_tournament(*m),
            FamilySpec::TripartiteCycle { i } => tripartite_cycle(*i),
            FamilySpec::Blowup { j, k } => blowup(&rotation_tournament(*j)?, *k),
            FamilySpec::ScTight { m, delta } => sc_tight(*m, *delta),
            FamilySpec::BinarySource { base } => Ok(binary_source_extension(&base.build()?)),
            FamilySpec::Paley { q } => paley_tournament(*q),
            FamilySpec::RandomTournament { n, p, seed } => random_tournament(*n, *p, *seed),
            FamilySpec::Transitive { n } => Ok(transitive_tournament(*n)),
            FamilySpec::Path { n } => Ok(directed_path(*n)),
        }
    }

    /// Parses whitespace-separated tokens; `seed` is used by `random`.
    pub fn parse_tokens(tokens: &[&str], seed: u64) -> Result<Self, FamilyError> {
        let (spec, rest) = Self::parse_prefix(tokens, seed)?;
        if !rest.is_empty() {
            return Err(FamilyError::Parse(format!("unexpected trailing tokens {rest:?}")));
        }
        Ok(spec)
    }

    fn parse_prefix<'a>(tokens: &'a [&'a str], seed: u64) -> Result<(Self, &'a [&'a str]), FamilyError> {
        fn arg<T: FromStr>(tokens: &[&str], i: usize, what: &str) -> Result<T, FamilyError> {
            let tok = tokens
                .get(i)
                .ok_or_else(|| FamilyError::Parse(format!("missing parameter {what}")))?;
            tok.parse()
                .map_err(|_| FamilyError::Parse(format!("bad value {tok:?} for {what}")))
        }
        let name = tokens.first().ok_or_else(|| FamilyError::Parse("empty family spec".into()))?;
        let spec = match name.replace('-', "_").as_str() {
            "rotation" => (FamilySpec::Rotation { m: arg(tokens, 1, "m")? }, 2),
            "tripartite" | "tripartite_cycle" | "d3" => (FamilySpec::TripartiteCycle { i: arg(tokens, 1, "i")? }, 2),
            "blowup" => (
                FamilySpec::Blowup {
                    j: arg(tokens, 1, "j")?,
                    k: arg(tokens, 2, "k")?,
                },
                3,
            ),
            "sc_tight" => (
                FamilySpec::ScTight {
                    m: arg(tokens, 1, "m")?,
                    delta: arg(tokens, 2, "delta")?,
                },
                3,
            ),
            "paley" => (FamilySpec::Paley { q: arg(tokens, 1, "q")? }, 2),
            "random" | "random_tournament" => (
                FamilySpec::RandomTournament {
                    n: arg(tokens, 1, "n")?,
                    p: arg(tokens, 2, "p")?,
                    seed,
                },
                3,
            ),
            "transitive" => (FamilySpec::Transitive { n: arg(tokens, 1, "n")? }, 2),
            "path" => (FamilySpec::Path { n: arg(tokens, 1, "n")? }, 2),
            "binary_source" => {
                let (base, rest) = Self::parse_prefix(&tokens[1..], seed)?;
                return Ok((FamilySpec::BinarySource { base: Box::new(base) }, rest));
            }
            other => return Err(FamilyError::Parse(format!("unknown family {other:?}"))),
        };
        Ok((spec.0, &tokens[spec.1..]))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Rotation { m } => write!(f, "rotation {m}"),
            FamilySpec::TripartiteCycle { i } => write!(f, "tripartite_cycle {i}"),
            FamilySpec::Blowup { j, k } => write!(f, "blowup {j} {k}"),
            FamilySpec::ScTight { m, delta } => write!(f, "sc_tight {m} {delta}"),
            FamilySpec::BinarySource { base } => write!(f, "binary_source {base}"),
            FamilySpec::Paley { q } => write!(f, "paley {q}"),
            FamilySpec::RandomTournament { n, p, .. } => write!(f, "random {n} {p}"),
            FamilySpec::Transitive { n } => write!(f, "transitive {n}"),
            FamilySpec::Path { n } => write!(f, "path {n}"),
        }
    }
}
