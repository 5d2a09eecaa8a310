//! Permutations of `{1..n}`, cycle notation, and the point-stabilizer chain of `S_n`.
//!
//! Products act left to right: `i^(pq) = (i^p)^q`. Every multiplication in the
//! crate goes through [`Permutation::compose`].

use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{1..n}` stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // images[j] is the image of point j + 1, itself 1-based.
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Builds a permutation from its 1-based image table `[1^p, 2^p, ..., n^p]`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (j, &img) in images.iter().enumerate() {
            if img == 0 || img > n {
                return Err(Error::InvalidPermutation(format!(
                    "image of {} is {img}, outside 1..{n}",
                    j + 1
                )));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::InvalidPermutation(format!("{img} appears twice")));
            }
        }
        Ok(Permutation { images })
    }

    /// The transposition `(i,k)` as an element of `S_n`.
    pub fn transposition(n: usize, i: usize, k: usize) -> Result<Self> {
        if i == 0 || k == 0 || i > n || k > n || i == k {
            return Err(Error::InvalidTransposition { i, k, n });
        }
        let mut p = Self::identity(n);
        p.images.swap(i - 1, k - 1);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `i^p` for a 1-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// The point mapped onto `j`.
    pub fn preimage(&self, j: usize) -> usize {
        self.images
            .iter()
            .position(|&img| img == j)
            .map(|pos| pos + 1)
            .expect("image table is a bijection")
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &img)| img == j + 1)
    }

    /// Whether every point in `1..=m` is fixed, i.e. membership in `G^(m)`.
    pub fn fixes_prefix(&self, m: usize) -> bool {
        self.images.iter().take(m).enumerate().all(|(j, &img)| img == j + 1)
    }

    /// The product `self * other`, mapping `i` to `(i^self)^other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(Permutation {
            images: self.images.iter().map(|&img| other.image(img)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (j, &img) in self.images.iter().enumerate() {
            images[img - 1] = j + 1;
        }
        Permutation { images }
    }

    /// Disjoint cycles of length at least two, each starting at its minimum,
    /// ordered by that minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 1..=self.n() {
            if seen[start - 1] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut cur = self.image(start);
            while cur != start {
                seen[cur - 1] = true;
                cycle.push(cur);
                cur = self.image(cur);
            }
            out.push(cycle);
        }
        out
    }

    /// Parses a product of disjoint cycles such as `(1,3,5)(2,4)` over `{1..n}`.
    /// The empty string and `()` both denote the identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Permutation> {
        CycleParser::new(text, n).parse()
    }

    /// Canonical cycle notation; the identity is `()`.
    pub fn format_cycles(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for cycle in cycles {
            out.push('(');
            for (idx, point) in cycle.iter().enumerate() {
                if idx > 0 {
                    out.push(',');
                }
                out.push_str(&point.to_string());
            }
            out.push(')');
        }
        out
    }

    /// All of `S_n` in lexicographic order of image tables.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some(Self::identity(n)),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

/// Lexicographic walk over `S_n` using the classic next-permutation step.
#[derive(Debug, Clone)]
pub struct AllPermutations {
    next: Option<Permutation>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.images.clone();
        if let Some(pivot) = (1..succ.len()).rev().find(|&j| succ[j - 1] < succ[j]) {
            let pivot = pivot - 1;
            let swap = (pivot + 1..succ.len())
                .rev()
                .find(|&j| succ[j] > succ[pivot])
                .expect("a larger suffix element exists");
            succ.swap(pivot, swap);
            succ[pivot + 1..].reverse();
            self.next = Some(Permutation { images: succ });
        }
        Some(current)
    }
}

struct CycleParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> CycleParser<'a> {
    fn new(text: &'a str, n: usize) -> Self {
        CycleParser {
            bytes: text.as_bytes(),
            pos: 0,
            n,
        }
    }

    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::CycleSyntax {
            position,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(&b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(&b) => self.err(
                self.pos,
                format!("expected '{}', found '{}'", byte as char, b as char),
            ),
            None => self.err(self.pos, format!("expected '{}', found end of input", byte as char)),
        }
    }

    fn point(&mut self) -> Result<(usize, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected a point");
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        match digits.parse::<usize>() {
            Ok(p) if (1..=self.n).contains(&p) => Ok((p, start)),
            _ => self.err(start, format!("point {digits} outside 1..{}", self.n)),
        }
    }

    fn parse(mut self) -> Result<Permutation> {
        let mut images: Vec<usize> = (1..=self.n).collect();
        let mut used = vec![false; self.n];
        loop {
            self.skip_ws();
            if self.pos == self.bytes.len() {
                break;
            }
            self.expect(b'(')?;
            self.skip_ws();
            if self.bytes.get(self.pos) == Some(&b')') {
                self.pos += 1;
                continue;
            }
            let mut cycle = Vec::new();
            loop {
                let (p, at) = self.point()?;
                if std::mem::replace(&mut used[p - 1], true) {
                    return self.err(at, format!("repeated point {p}"));
                }
                cycle.push(p);
                self.skip_ws();
                match self.bytes.get(self.pos) {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(&b) => return self.err(self.pos, format!("unexpected '{}'", b as char)),
                    None => return self.err(self.pos, "unterminated cycle"),
                }
            }
            for (idx, &p) in cycle.iter().enumerate() {
                images[p - 1] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }
}

/// A coset representative in `U_i`: the identity or a transposition `(i,k)` with `i < k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Transposition {
    Identity,
    Swap { i: usize, k: usize },
}

impl Transposition {
    pub fn swap(i: usize, k: usize) -> Result<Self> {
        if i == 0 || i >= k {
            return Err(Error::InvalidTransposition { i, k, n: k });
        }
        Ok(Transposition::Swap { i, k })
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Transposition::Identity)
    }

    /// Whether this element lies in `U_level` of the `S_n` chain.
    pub fn in_level(&self, level: usize, n: usize) -> bool {
        match *self {
            Transposition::Identity => (1..=n).contains(&level),
            Transposition::Swap { i, k } => i == level && i < k && k <= n,
        }
    }

    pub fn to_permutation(&self, n: usize) -> Result<Permutation> {
        match *self {
            Transposition::Identity => Ok(Permutation::identity(n)),
            Transposition::Swap { i, k } => Permutation::transposition(n, i, k),
        }
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transposition::Identity => f.write_str("I"),
            Transposition::Swap { i, k } => write!(f, "({i},{k})"),
        }
    }
}

/// Transversals `U_1..U_n` for the chain `S_n = G^(0) > G^(1) > ... > G^(n) = I`,
/// where `G^(i)` fixes `1..i` pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetChain {
    n: usize,
    levels: Vec<Vec<Transposition>>,
}

impl CosetChain {
    /// `U_i = {I, (i,i+1), ..., (i,n)}`.
    pub fn new(n: usize) -> Self {
        let levels = (1..=n)
            .map(|i| {
                std::iter::once(Transposition::Identity)
                    .chain((i + 1..=n).map(|k| Transposition::Swap { i, k }))
                    .collect()
            })
            .collect();
        CosetChain { n, levels }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `U_i` for `1 <= i <= n`.
    pub fn level(&self, i: usize) -> &[Transposition] {
        &self.levels[i - 1]
    }

    pub fn levels(&self) -> &[Vec<Transposition>] {
        &self.levels
    }

    /// `|U_1| * ... * |U_n|`, with overflow reported rather than wrapped.
    pub fn order(&self) -> Result<u64> {
        self.levels.iter().try_fold(1u64, |acc, level| {
            acc.checked_mul(level.len() as u64)
                .ok_or(Error::Overflow { n: self.n })
        })
    }
}

pub fn coset_transversals(n: usize) -> CosetChain {
    CosetChain::new(n)
}

pub fn order_from_chain(chain: &CosetChain) -> Result<u64> {
    chain.order()
}

/// Canonic factorization `[psi_1, ..., psi_n]` with `psi_i` in `U_i` and
/// `p = psi_n * ... * psi_1`.
pub fn sift(p: &Permutation) -> Vec<Transposition> {
    let n = p.n();
    let mut residue = p.clone();
    let mut factors = Vec::with_capacity(n);
    for i in 1..=n {
        let target = residue.image(i);
        let factor = if target == i {
            Transposition::Identity
        } else {
            Transposition::Swap { i, k: target }
        };
        if let Transposition::Swap { k, .. } = factor {
            // residue * (i,k): swapping the images i and k is right multiplication.
            for img in residue.images.iter_mut() {
                if *img == i {
                    *img = k;
                } else if *img == k {
                    *img = i;
                }
            }
        }
        debug_assert!(residue.fixes_prefix(i));
        factors.push(factor);
    }
    factors
}

/// Inverse of [`sift`]: the product `psi_n * psi_(n-1) * ... * psi_1`, where
/// `factors[i - 1]` is `psi_i`.
pub fn unsift(factors: &[Transposition]) -> Result<Permutation> {
    let n = factors.len();
    let mut product = Permutation::identity(n);
    for (idx, factor) in factors.iter().enumerate().rev() {
        let level = idx + 1;
        if !factor.in_level(level, n) {
            return Err(Error::NotInTransversal {
                level,
                factor: factor.to_string(),
            });
        }
        product = product.compose(&factor.to_permutation(n)?)?;
    }
    Ok(product)
}

/// Renders `[psi_1..psi_n]` as the product `psi_n*...*psi_1`, e.g. `I*(3,4)*(2,4)*(1,3)`.
pub fn format_factorization(factors: &[Transposition]) -> String {
    factors
        .iter()
        .rev()
        .map(Transposition::to_string)
        .collect::<Vec<_>>()
        .join("*")
}
