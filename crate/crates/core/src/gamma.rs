//! The generating graph `Γ(n)` and complete valid multiplication paths (CVMPs).
//!
//! A node at position `i` is either the identity `(ii,ii)` or an edge pair
//! `(ik,ti)` with `i < k, t <= n`: multiplying a partial product `π` in `G^(i)`
//! by `(i,k)` creates the matched edges `v_i w_k` and `v_t w_i` and consumes
//! `v_t w_k`, where `t` is the preimage of `k` under `π`.
//!
//! A CVMP `x_1 .. x_n` carries one node per position. With suffix products
//! `π_(n+1) = I` and `π_i = π_(i+1) * ψ(x_i)`, each transposition node must
//! satisfy `t_i = preimage of k_i under π_(i+1)`. The path then stands for
//! `π_1 = ψ(x_n) * ... * ψ(x_1)`.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bipartite::{BipartiteGraph, Edge, EdgeSet, Matching};
use crate::error::{guard, Error, Result};
use crate::perm::{unsift, sift, Permutation, Transposition};

pub const GAMMA_MAX_N: usize = 12;
pub const CVMP_MAX_N: usize = 7;
pub const DOT_MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaNode {
    pub i: usize,
    pub k: usize,
    pub t: usize,
}

impl GammaNode {
    pub const fn identity(i: usize) -> Self {
        GammaNode { i, k: i, t: i }
    }

    pub fn pair(i: usize, k: usize, t: usize) -> Result<Self> {
        if i == 0 || k <= i || t <= i {
            return Err(Error::BadParameter(format!(
                "edge pair ({i}{k},{t}{i}) needs i < k and i < t"
            )));
        }
        Ok(GammaNode { i, k, t })
    }

    pub fn position(&self) -> usize {
        self.i
    }

    pub fn is_identity(&self) -> bool {
        self.k == self.i
    }

    pub fn transposition(&self) -> Transposition {
        if self.is_identity() {
            Transposition::Identity
        } else {
            Transposition::Swap { i: self.i, k: self.k }
        }
    }

    /// `{v_i w_k, v_t w_i}`, or `{v_i w_i}` for the identity node.
    pub fn node_edges(&self) -> impl Iterator<Item = Edge> {
        let count = if self.is_identity() { 1 } else { 2 };
        [Edge::new(self.i, self.k), Edge::new(self.t, self.i)]
            .into_iter()
            .take(count)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.node_edges().any(|x| x == e)
    }

    /// `v_t w_k`, the edge of the partial product removed by this multiplication.
    pub fn consumed_edge(&self) -> Option<Edge> {
        (!self.is_identity()).then(|| Edge::new(self.t, self.k))
    }

    fn v_side(&self) -> [usize; 2] {
        [self.i, self.t]
    }

    fn w_side(&self) -> [usize; 2] {
        [self.k, self.i]
    }

    /// No shared vertex among the node edges of `self` and `other`.
    pub fn is_disjoint(&self, other: &GammaNode) -> bool {
        !self.v_side().iter().any(|v| other.v_side().contains(v))
            && !self.w_side().iter().any(|w| other.w_side().contains(w))
    }
}

impl fmt::Display for GammaNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let GammaNode { i, k, t } = *self;
        if i < 10 && k < 10 && t < 10 {
            write!(f, "({i}{k},{t}{i})")
        } else {
            write!(f, "({i}:{k},{t}:{i})")
        }
    }
}

/// Relation R: `x` consumes an edge that `y`, at a later position, creates.
pub fn r_related(x: &GammaNode, y: &GammaNode) -> bool {
    x.i < y.i && x.consumed_edge().is_some_and(|e| y.contains_edge(e))
}

/// Relation S: node-disjoint pairs at adjacent positions.
pub fn s_related(x: &GammaNode, y: &GammaNode) -> bool {
    x.i + 1 == y.i && x.is_disjoint(y)
}

#[derive(Clone, Debug)]
pub struct GammaGraph {
    n: usize,
    nodes: Vec<GammaNode>,
    offsets: Vec<usize>,
    r_edges: Vec<(usize, usize)>,
    s_edges: Vec<(usize, usize)>,
}

impl GammaGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[GammaNode] {
        &self.nodes
    }

    pub fn nodes_at(&self, position: usize) -> &[GammaNode] {
        &self.nodes[self.offsets[position - 1]..self.offsets[position]]
    }

    /// Index pairs into [`nodes`](Self::nodes), sorted.
    pub fn r_edges(&self) -> &[(usize, usize)] {
        &self.r_edges
    }

    pub fn s_edges(&self) -> &[(usize, usize)] {
        &self.s_edges
    }

    pub fn node_index(&self, node: &GammaNode) -> Option<usize> {
        let n = self.n;
        let GammaNode { i, k, t } = *node;
        if i == 0 || i > n || k > n || t > n {
            return None;
        }
        let rank = if node.is_identity() {
            if t != i {
                return None;
            }
            0
        } else {
            if k <= i || t <= i {
                return None;
            }
            1 + (k - i - 1) * (n - i) + (t - i - 1)
        };
        Some(self.offsets[i - 1] + rank)
    }

    pub fn has_r_edge(&self, x: &GammaNode, y: &GammaNode) -> bool {
        self.edge_lookup(&self.r_edges, x, y)
    }

    pub fn has_s_edge(&self, x: &GammaNode, y: &GammaNode) -> bool {
        self.edge_lookup(&self.s_edges, x, y)
    }

    fn edge_lookup(&self, edges: &[(usize, usize)], x: &GammaNode, y: &GammaNode) -> bool {
        match (self.node_index(x), self.node_index(y)) {
            (Some(a), Some(b)) => edges.binary_search(&(a, b)).is_ok(),
            _ => false,
        }
    }

    /// Walks choosing one node per position `1..n`, stepping along R or S edges
    /// between consecutive positions. Validity of the induced product is ignored.
    pub fn count_position_walks(&self) -> BigUint {
        let mut ways = vec![BigUint::zero(); self.nodes.len()];
        ways[self.offsets[0]..self.offsets[1]].fill(BigUint::one());
        let mut steps: Vec<(usize, usize)> = self
            .r_edges
            .iter()
            .chain(&self.s_edges)
            .copied()
            .filter(|&(a, b)| self.nodes[a].i + 1 == self.nodes[b].i)
            .collect();
        steps.sort_by_key(|&(a, _)| self.nodes[a].i);
        for (a, b) in steps {
            let add = ways[a].clone();
            ways[b] += add;
        }
        ways[self.offsets[self.n - 1]..].iter().sum()
    }
}

/// `Γ(n)` with nodes ordered by position, then `k`, then `t`, identity first.
pub fn build_gamma(n: usize) -> Result<GammaGraph> {
    if n == 0 {
        return Err(Error::BadParameter("Γ(n) needs n >= 1".into()));
    }
    guard("generating graph", n, GAMMA_MAX_N, "")?;
    let mut nodes = Vec::new();
    let mut offsets = vec![0];
    for i in 1..=n {
        nodes.push(GammaNode::identity(i));
        for k in i + 1..=n {
            for t in i + 1..=n {
                nodes.push(GammaNode { i, k, t });
            }
        }
        offsets.push(nodes.len());
    }
    let mut r_edges = Vec::new();
    let mut s_edges = Vec::new();
    for (a, x) in nodes.iter().enumerate() {
        for (b, y) in nodes.iter().enumerate().skip(offsets[x.i]) {
            if r_related(x, y) {
                r_edges.push((a, b));
            } else if s_related(x, y) {
                s_edges.push((a, b));
            }
        }
    }
    Ok(GammaGraph {
        n,
        nodes,
        offsets,
        r_edges,
        s_edges,
    })
}

/// A sequence of Γ(n) nodes, one per position. Validity is checked by the
/// operations that consume it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cvmp {
    nodes: Vec<GammaNode>,
}

impl Cvmp {
    pub fn new(nodes: Vec<GammaNode>) -> Self {
        Cvmp { nodes }
    }

    pub fn nodes(&self) -> &[GammaNode] {
        &self.nodes
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    /// Reads the display form, e.g. `(12,31)(24,32)(34,43)(44,44)`; points of
    /// ten or more use `(i:k,t:i)`.
    pub fn parse(text: &str) -> Result<Cvmp> {
        let bad = |msg: String| Error::BadParameter(format!("path {text:?}: {msg}"));
        let mut nodes = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| bad("expected '('".into()))?;
            let close = body.find(')').ok_or_else(|| bad("unterminated node".into()))?;
            let (left, right) = body[..close]
                .split_once(',')
                .ok_or_else(|| bad(format!("node {:?} lacks ','", &body[..close])))?;
            let (i, k) = split_pair(left.trim()).ok_or_else(|| bad(format!("bad half {left:?}")))?;
            let (t, i2) = split_pair(right.trim()).ok_or_else(|| bad(format!("bad half {right:?}")))?;
            if i != i2 {
                return Err(bad(format!("node halves disagree on position: {i} vs {i2}")));
            }
            nodes.push(if k == i && t == i {
                GammaNode::identity(i)
            } else {
                GammaNode::pair(i, k, t)?
            });
            rest = body[close + 1..].trim_start();
        }
        Ok(Cvmp { nodes })
    }

    /// Checks the position layout and the suffix-product constraint; returns
    /// the suffix products `π_1..π_(n+1)`. Reports the lowest failing position.
    fn suffix_products(&self) -> Result<Vec<Permutation>> {
        let n = self.n();
        for (idx, node) in self.nodes.iter().enumerate() {
            let position = idx + 1;
            let reason = if node.i != position {
                Some(format!("node {node} sits at position {position}"))
            } else if node.k > n || node.t > n {
                Some(format!("node {node} mentions a point beyond {n}"))
            } else if node.is_identity() && node.t != node.i {
                Some(format!("identity node {node} is malformed"))
            } else if !node.is_identity() && (node.k < node.i || node.t <= node.i) {
                Some(format!("node {node} is not an edge pair at position {position}"))
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(Error::InvalidPath { position, reason });
            }
        }
        let mut suffix = vec![Permutation::identity(n); n + 1];
        for idx in (0..n).rev() {
            let factor = self.nodes[idx].transposition().to_permutation(n)?;
            suffix[idx] = suffix[idx + 1].compose(&factor)?;
        }
        for (idx, node) in self.nodes.iter().enumerate() {
            if node.is_identity() {
                continue;
            }
            let expected = suffix[idx + 1].preimage(node.k);
            if node.t != expected {
                return Err(Error::InvalidPath {
                    position: idx + 1,
                    reason: format!(
                        "node {node} needs t = {expected}, the preimage of {} under the partial product {}",
                        node.k,
                        suffix[idx + 1]
                    ),
                });
            }
        }
        Ok(suffix)
    }

    pub fn validate(&self) -> Result<()> {
        self.suffix_products().map(|_| ())
    }

    pub fn factors(&self) -> Vec<Transposition> {
        self.nodes.iter().map(GammaNode::transposition).collect()
    }
}

impl fmt::Display for Cvmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.nodes.iter().try_for_each(|node| write!(f, "{node}"))
    }
}

fn split_pair(half: &str) -> Option<(usize, usize)> {
    if let Some((a, b)) = half.split_once(':') {
        return Some((a.parse().ok()?, b.parse().ok()?));
    }
    let bytes = half.as_bytes();
    if bytes.len() != 2 || !bytes.iter().all(u8::is_ascii_digit) {
        return None;
    }
    Some(((bytes[0] - b'0') as usize, (bytes[1] - b'0') as usize))
}

/// `ψ(x_n) * ... * ψ(x_1)`.
pub fn path_to_perm(p: &Cvmp) -> Result<Permutation> {
    p.validate()?;
    unsift(&p.factors())
}

pub fn perm_to_path(q: &Permutation) -> Cvmp {
    let n = q.n();
    let factors = sift(q);
    let mut suffix = Permutation::identity(n);
    let mut nodes = vec![GammaNode::identity(1); n];
    for (idx, factor) in factors.iter().enumerate().rev() {
        let i = idx + 1;
        nodes[idx] = match *factor {
            Transposition::Identity => GammaNode::identity(i),
            Transposition::Swap { k, .. } => GammaNode {
                i,
                k,
                t: suffix.preimage(k),
            },
        };
        suffix = suffix
            .compose(&factor.to_permutation(n).expect("sift yields transversal elements"))
            .expect("same degree");
    }
    Cvmp { nodes }
}

/// Every CVMP of Γ(n) in depth-first order from position `n` down to position 1,
/// so position 1 varies fastest.
pub fn enumerate_cvmps(gamma: &GammaGraph) -> Result<CvmpIter> {
    let n = gamma.n();
    guard("CVMP enumeration", n, CVMP_MAX_N, "")?;
    Ok(CvmpIter {
        n,
        choice: vec![0; n + 1],
        suffix: vec![Permutation::identity(n); n + 2],
        done: false,
    })
}

#[derive(Clone, Debug)]
pub struct CvmpIter {
    n: usize,
    // choice[i] indexes U_i: 0 is I, j is (i, i + j). Slot 0 unused.
    choice: Vec<usize>,
    // suffix[i] = π_i; suffix[n + 1] = I. Slot 0 unused.
    suffix: Vec<Permutation>,
    done: bool,
}

impl CvmpIter {
    fn factor(&self, i: usize) -> Transposition {
        match self.choice[i] {
            0 => Transposition::Identity,
            j => Transposition::Swap { i, k: i + j },
        }
    }

    fn current(&self) -> Cvmp {
        let nodes = (1..=self.n)
            .map(|i| match self.factor(i) {
                Transposition::Identity => GammaNode::identity(i),
                Transposition::Swap { k, .. } => GammaNode {
                    i,
                    k,
                    t: self.suffix[i + 1].preimage(k),
                },
            })
            .collect();
        Cvmp { nodes }
    }

    fn refresh_suffix(&mut self, from: usize) {
        for i in (1..=from).rev() {
            let factor = self.factor(i).to_permutation(self.n).expect("valid level element");
            self.suffix[i] = self.suffix[i + 1].compose(&factor).expect("same degree");
        }
    }
}

impl Iterator for CvmpIter {
    type Item = Cvmp;

    fn next(&mut self) -> Option<Cvmp> {
        if self.done {
            return None;
        }
        let path = self.current();
        match (1..=self.n).find(|&i| self.choice[i] + 1 < self.n - i + 1) {
            Some(j) => {
                self.choice[j] += 1;
                self.choice[1..j].iter_mut().for_each(|c| *c = 0);
                self.refresh_suffix(j);
            }
            None => self.done = true,
        }
        Some(path)
    }
}

/// Consumed edges of every transposition node of a valid path.
pub fn surplus_edges(p: &Cvmp) -> Result<EdgeSet> {
    p.validate()?;
    Ok(p.nodes.iter().filter_map(GammaNode::consumed_edge).collect())
}

/// One entry per transposition node: `(j, m, e)` charges the consumed edge `e`
/// of `x_j` to the pair `(x_j, x_m)`, `x_m` being the nearest later node that
/// creates `e`.
pub fn surplus_attribution(p: &Cvmp) -> Result<Vec<(usize, usize, Edge)>> {
    p.validate()?;
    let mut out = Vec::new();
    for (idx, node) in p.nodes.iter().enumerate() {
        let Some(edge) = node.consumed_edge() else {
            continue;
        };
        let owner = p.nodes[idx + 1..]
            .iter()
            .position(|later| later.contains_edge(edge))
            .ok_or_else(|| Error::InvalidPath {
                position: idx + 1,
                reason: format!("consumed edge {edge} of {node} is created by no later node"),
            })?;
        out.push((idx + 1, idx + 2 + owner, edge));
    }
    Ok(out)
}

/// Union of node edges along the path minus its surplus edges.
pub fn path_to_matching(p: &Cvmp) -> Result<Matching> {
    let surplus = surplus_edges(p)?;
    let edges: EdgeSet = p
        .nodes
        .iter()
        .flat_map(GammaNode::node_edges)
        .filter(|e| !surplus.contains(e))
        .collect();
    Matching::new(p.n(), edges)
}

/// Edges of the path's matching that `g` lacks; empty iff the path qualifies.
pub fn edge_requirement(p: &Cvmp, g: &BipartiteGraph) -> Result<EdgeSet> {
    if p.n() != g.n() {
        return Err(Error::SizeMismatch {
            left: p.n(),
            right: g.n(),
        });
    }
    Ok(unmet_edges(&path_to_matching(p)?, g))
}

pub(crate) fn unmet_edges(m: &Matching, g: &BipartiteGraph) -> EdgeSet {
    m.pairs().iter().copied().filter(|&e| !g.has_edge(e)).collect()
}

/// Graphviz rendering: one rank per position, R edges solid, S edges dashed.
pub fn export_dot(gamma: &GammaGraph) -> Result<String> {
    guard("DOT export", gamma.n(), DOT_MAX_N, "")?;
    let mut out = String::new();
    writeln!(out, "digraph gamma_{} {{", gamma.n()).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for position in 1..=gamma.n() {
        let first = gamma.offsets[position - 1];
        writeln!(out, "  subgraph position_{position} {{").unwrap();
        writeln!(out, "    rank=same;").unwrap();
        for (offset, node) in gamma.nodes_at(position).iter().enumerate() {
            writeln!(out, "    n{} [label=\"{node}\"];", first + offset).unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    for &(a, b) in gamma.r_edges() {
        writeln!(out, "  n{a} -> n{b} [style=solid];").unwrap();
    }
    for &(a, b) in gamma.s_edges() {
        writeln!(out, "  n{a} -> n{b} [style=dashed];").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
