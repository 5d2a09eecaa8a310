//! Bipartite graphs on `V ∪ W` with `|V| = |W| = n`, perfect matchings, and the
//! two reference counters (exhaustive over `S_n`, and Ryser's permanent).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{guard, Error, Result};
use crate::perm::Permutation;

/// Row bitsets are single machine words.
pub const MAX_SIDE: usize = 64;
pub const BRUTEFORCE_MAX_N: usize = 9;
pub const RYSER_MAX_N: usize = 24;
pub const ENUMERATE_MAX_N: usize = 8;

/// The edge `v_v w_w`, both endpoints 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub v: usize,
    pub w: usize,
}

impl Edge {
    pub const fn new(v: usize, w: usize) -> Self {
        Edge { v, w }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.v, self.w)
    }
}

impl From<(usize, usize)> for Edge {
    fn from((v, w): (usize, usize)) -> Self {
        Edge { v, w }
    }
}

pub type EdgeSet = BTreeSet<Edge>;

pub fn format_edge_set(edges: &EdgeSet) -> String {
    let inner: Vec<String> = edges.iter().map(Edge::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    n: usize,
    // rows[v - 1] bit (w - 1) is set iff v -- w is an edge.
    rows: Vec<u64>,
}

impl BipartiteGraph {
    pub fn empty(n: usize) -> Result<Self> {
        guard("bipartite graph side", n, MAX_SIDE, "")?;
        Ok(BipartiteGraph {
            n,
            rows: vec![0; n],
        })
    }

    /// `K_{n,n}`.
    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let full = row_mask(n);
        g.rows.iter_mut().for_each(|r| *r = full);
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for e in edges {
            g.check_edge(e)?;
            g.add_edge(e);
        }
        Ok(g)
    }

    /// Row-major adjacency bits: bit `(v-1)*n + (w-1)` of `mask`. Requires `n*n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        guard("mask-indexed graph side", n, 8, "")?;
        let mut g = Self::empty(n)?;
        for v in 0..n {
            g.rows[v] = (mask >> (v * n)) & row_mask(n);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, v: usize) -> u64 {
        self.rows[v - 1]
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        e.v >= 1 && e.v <= self.n && e.w >= 1 && e.w <= self.n && self.rows[e.v - 1] >> (e.w - 1) & 1 == 1
    }

    pub fn add_edge(&mut self, e: Edge) {
        self.rows[e.v - 1] |= 1 << (e.w - 1);
    }

    pub fn remove_edge(&mut self, e: Edge) {
        self.rows[e.v - 1] &= !(1 << (e.w - 1));
    }

    pub fn edges(&self) -> EdgeSet {
        (1..=self.n)
            .flat_map(|v| (1..=self.n).map(move |w| Edge::new(v, w)))
            .filter(|&e| self.has_edge(e))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    fn check_edge(&self, e: Edge) -> Result<()> {
        if e.v == 0 || e.w == 0 || e.v > self.n || e.w > self.n {
            return Err(Error::BadParameter(format!("edge {e} outside 1..{}", self.n)));
        }
        Ok(())
    }

    /// Reads the text format: a decimal `n` line, then `n` rows of exactly `n`
    /// characters from `{0,1}`.
    pub fn parse(text: &str) -> Result<Self> {
        let syntax = |line: usize, message: String| Error::GraphSyntax { line, message };
        if !text.is_ascii() {
            let line = text
                .lines()
                .position(|l| !l.is_ascii())
                .map_or(1, |pos| pos + 1);
            return Err(syntax(line, "non-ASCII content".into()));
        }
        let body = text.strip_suffix('\n').unwrap_or(text);
        let mut lines = body.split('\n');
        let header = lines.next().unwrap_or("");
        let n: usize = header
            .parse()
            .map_err(|_| syntax(1, format!("expected a decimal side size, found {header:?}")))?;
        if n > MAX_SIDE {
            return Err(syntax(1, format!("side size {n} exceeds {MAX_SIDE}")));
        }
        let mut rows = Vec::with_capacity(n);
        for (idx, line) in lines.enumerate() {
            let lineno = idx + 2;
            if idx >= n {
                return Err(syntax(lineno, format!("more than {n} rows")));
            }
            if line.len() != n {
                return Err(syntax(
                    lineno,
                    format!("row has {} characters, expected {n}", line.len()),
                ));
            }
            let mut row = 0u64;
            for (w, ch) in line.bytes().enumerate() {
                match ch {
                    b'1' => row |= 1 << w,
                    b'0' => {}
                    other => {
                        return Err(syntax(
                            lineno,
                            format!("column {}: '{}' is not 0 or 1", w + 1, other as char),
                        ))
                    }
                }
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(syntax(rows.len() + 2, format!("expected {n} rows, found {}", rows.len())));
        }
        Ok(BipartiteGraph { n, rows })
    }

    /// Writes the text format, with a trailing newline.
    pub fn serialize(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &row in &self.rows {
            for w in 0..self.n {
                out.push(if row >> w & 1 == 1 { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl FromStr for BipartiteGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

fn row_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of edges in which every vertex is covered at most once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    n: usize,
    pairs: EdgeSet,
}

impl Matching {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let pairs: EdgeSet = pairs.into_iter().collect();
        let mut seen_v = vec![false; n];
        let mut seen_w = vec![false; n];
        for e in &pairs {
            if e.v == 0 || e.w == 0 || e.v > n || e.w > n {
                return Err(Error::BadParameter(format!("edge {e} outside 1..{n}")));
            }
            if std::mem::replace(&mut seen_v[e.v - 1], true) {
                return Err(Error::BadParameter(format!("v{} matched twice", e.v)));
            }
            if std::mem::replace(&mut seen_w[e.w - 1], true) {
                return Err(Error::BadParameter(format!("w{} matched twice", e.w)));
            }
        }
        Ok(Matching { n, pairs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &EdgeSet {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_perfect(&self) -> bool {
        self.pairs.len() == self.n
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_edge_set(&self.pairs))
    }
}

/// `{(v, v^p)}`.
pub fn perm_to_matching(p: &Permutation) -> Matching {
    Matching {
        n: p.n(),
        pairs: (1..=p.n()).map(|v| Edge::new(v, p.image(v))).collect(),
    }
}

pub fn matching_to_perm(m: &Matching) -> Result<Permutation> {
    if !m.is_perfect() {
        return Err(Error::NotPerfect(format!(
            "{} of {} vertices matched",
            m.len(),
            m.n()
        )));
    }
    let mut images = vec![0; m.n()];
    for e in m.pairs() {
        images[e.v - 1] = e.w;
    }
    Permutation::from_images(images)
}

pub fn contains_matching(g: &BipartiteGraph, m: &Matching) -> Result<bool> {
    if g.n() != m.n() {
        return Err(Error::SizeMismatch {
            left: g.n(),
            right: m.n(),
        });
    }
    Ok(m.pairs().iter().all(|&e| g.has_edge(e)))
}

/// Number of perfect matchings by testing every permutation of `S_n`.
pub fn count_bruteforce(g: &BipartiteGraph) -> Result<BigUint> {
    guard(
        "brute-force count",
        g.n(),
        BRUTEFORCE_MAX_N,
        "; use the Ryser permanent for larger graphs",
    )?;
    let count = Permutation::all(g.n())
        .filter(|p| (1..=g.n()).all(|v| g.has_edge(Edge::new(v, p.image(v)))))
        .count();
    Ok(BigUint::from(count))
}

/// The permanent of the adjacency matrix by Ryser's inclusion-exclusion over
/// column subsets, visited in Gray-code order.
pub fn count_ryser(g: &BipartiteGraph) -> Result<BigUint> {
    let n = g.n();
    guard("Ryser permanent", n, RYSER_MAX_N, "")?;
    if n == 0 {
        return Ok(BigUint::from(1u8));
    }
    let mut row_sums = vec![0i64; n];
    let mut in_subset = vec![false; n];
    let mut subset_len = 0usize;
    let mut fast: i128 = 0;
    let mut spill = BigInt::zero();
    for step in 1u64..(1u64 << n) {
        let col = step.trailing_zeros() as usize;
        let delta = if in_subset[col] { -1 } else { 1 };
        in_subset[col] = !in_subset[col];
        if delta > 0 {
            subset_len += 1;
        } else {
            subset_len -= 1;
        }
        for (v, sum) in row_sums.iter_mut().enumerate() {
            if g.rows[v] >> col & 1 == 1 {
                *sum += delta;
            }
        }
        if row_sums.contains(&0) {
            continue;
        }
        // Each row sum is at most 24, so the product fits comfortably in i128.
        let mut term: i128 = row_sums.iter().map(|&s| s as i128).product();
        if subset_len % 2 == 1 {
            term = -term;
        }
        match fast.checked_add(term) {
            Some(v) => fast = v,
            None => {
                spill += BigInt::from(fast);
                fast = term;
            }
        }
    }
    let mut total = spill + BigInt::from(fast);
    if n % 2 == 1 {
        total = -total;
    }
    debug_assert!(!total.is_negative());
    Ok(total.to_biguint().expect("permanent of a 0/1 matrix is non-negative"))
}

/// Every perfect matching, ordered by the image table of its permutation.
pub fn enumerate_matchings(g: &BipartiteGraph) -> Result<Vec<Matching>> {
    let n = g.n();
    guard("matching enumeration", n, ENUMERATE_MAX_N, "")?;
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(n);
    extend_matchings(g, &mut images, 0, &mut out);
    Ok(out)
}

fn extend_matchings(g: &BipartiteGraph, images: &mut Vec<usize>, used: u64, out: &mut Vec<Matching>) {
    let n = g.n();
    let v = images.len() + 1;
    if v > n {
        out.push(Matching {
            n,
            pairs: images
                .iter()
                .enumerate()
                .map(|(j, &w)| Edge::new(j + 1, w))
                .collect(),
        });
        return;
    }
    let mut free = g.row(v) & !used;
    while free != 0 {
        let w = free.trailing_zeros() as usize + 1;
        free &= free - 1;
        images.push(w);
        extend_matchings(g, images, used | 1 << (w - 1), out);
        images.pop();
    }
}
