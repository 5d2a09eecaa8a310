//! Counting by path qualification, the oracle cross-check reports, sweeps, and
//! the structural diagnostics of Γ(n).

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bipartite::{
    count_bruteforce, count_ryser, format_edge_set, BipartiteGraph, Matching, BRUTEFORCE_MAX_N,
    RYSER_MAX_N,
};
use crate::error::{guard, Error, Result};
use crate::gamma::{
    build_gamma, enumerate_cvmps, path_to_matching, perm_to_path, surplus_edges, unmet_edges,
    GammaGraph, CVMP_MAX_N,
};
use crate::perm::{coset_transversals, format_factorization, sift, Permutation};

pub const EXHAUSTIVE_MAX_N: usize = 4;
pub const GENERATOR_NAME: &str = "chacha8";

/// The matchings of every CVMP of Γ(n), computed once and reused across graphs.
#[derive(Clone, Debug)]
pub struct CvmpCounter {
    n: usize,
    matchings: Vec<Matching>,
}

impl CvmpCounter {
    pub fn new(n: usize) -> Result<Self> {
        guard("CVMP counting", n, CVMP_MAX_N, "")?;
        let gamma = build_gamma(n)?;
        let matchings = enumerate_cvmps(&gamma)?
            .map(|p| path_to_matching(&p))
            .collect::<Result<_>>()?;
        Ok(CvmpCounter { n, matchings })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of paths whose edge requirement against `g` is empty.
    pub fn count(&self, g: &BipartiteGraph) -> Result<BigUint> {
        if g.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: g.n(),
            });
        }
        let qualified = self
            .matchings
            .iter()
            .filter(|m| unmet_edges(m, g).is_empty())
            .count();
        Ok(BigUint::from(qualified))
    }
}

pub fn count_via_cvmp(g: &BipartiteGraph) -> Result<BigUint> {
    CvmpCounter::new(g.n())?.count(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Cvmp,
    Ryser,
    Brute,
}

pub fn count_with(method: Method, g: &BipartiteGraph) -> Result<BigUint> {
    match method {
        Method::Cvmp => count_via_cvmp(g),
        Method::Ryser => count_ryser(g),
        Method::Brute => count_bruteforce(g),
    }
}

fn ser_count<S: Serializer>(count: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match count {
        Some(c) => s.serialize_str(&c.to_str_radix(10)),
        None => s.serialize_none(),
    }
}

fn ser_big<S: Serializer>(count: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&count.to_str_radix(10))
}

/// The counts one instance received; a method outside its size guard is `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    #[serde(serialize_with = "ser_count")]
    pub count_cvmp: Option<BigUint>,
    #[serde(serialize_with = "ser_count")]
    pub count_bruteforce: Option<BigUint>,
    #[serde(serialize_with = "ser_count")]
    pub count_ryser: Option<BigUint>,
}

impl Counts {
    pub fn agree(&self) -> bool {
        let mut present = [&self.count_cvmp, &self.count_bruteforce, &self.count_ryser]
            .into_iter()
            .flatten();
        match present.next() {
            Some(first) => present.all(|c| c == first),
            None => true,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub cvmp_ms: f64,
    pub bruteforce_ms: f64,
    pub ryser_ms: f64,
}

#[derive(Clone, Copy, Debug, Default)]
struct Elapsed {
    cvmp: Duration,
    brute: Duration,
    ryser: Duration,
}

impl Elapsed {
    fn add(mut self, other: Elapsed) -> Elapsed {
        self.cvmp += other.cvmp;
        self.brute += other.brute;
        self.ryser += other.ryser;
        self
    }

    fn to_timings(self) -> Timings {
        Timings {
            cvmp_ms: self.cvmp.as_secs_f64() * 1e3,
            bruteforce_ms: self.brute.as_secs_f64() * 1e3,
            ryser_ms: self.ryser.as_secs_f64() * 1e3,
        }
    }
}

fn timed<T>(slot: &mut Duration, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f();
    *slot += start.elapsed();
    out
}

fn evaluate(g: &BipartiteGraph, counter: Option<&CvmpCounter>) -> Result<(Counts, Elapsed)> {
    let mut elapsed = Elapsed::default();
    let count_cvmp = match counter {
        Some(c) => Some(timed(&mut elapsed.cvmp, || c.count(g))?),
        None => None,
    };
    let count_bruteforce = if g.n() <= BRUTEFORCE_MAX_N {
        Some(timed(&mut elapsed.brute, || count_bruteforce(g))?)
    } else {
        None
    };
    let count_ryser = Some(timed(&mut elapsed.ryser, || count_ryser(g))?);
    Ok((
        Counts {
            count_cvmp,
            count_bruteforce,
            count_ryser,
        },
        elapsed,
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    /// Adjacency mask for exhaustive sweeps, trial number for random ones.
    pub index: u64,
    pub graph: String,
    #[serde(flatten)]
    pub counts: Counts,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub mode: &'static str,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<f64>,
    pub instances: u64,
    /// Per-method counts of a single verified graph.
    #[serde(flatten)]
    pub counts: Option<Counts>,
    #[serde(serialize_with = "ser_big")]
    pub total_matchings: BigUint,
    pub agreement: bool,
    pub mismatches: Vec<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<Timings>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// 0 on agreement, 1 on a counting mismatch.
    pub fn exit_code(&self) -> i32 {
        if self.agreement {
            0
        } else {
            1
        }
    }
}

/// Counts `g` with every method whose size guard admits it.
pub fn verify_graph(g: &BipartiteGraph, timings: bool) -> Result<VerificationReport> {
    guard("verification", g.n(), RYSER_MAX_N, "")?;
    let counter = if (1..=CVMP_MAX_N).contains(&g.n()) {
        Some(CvmpCounter::new(g.n())?)
    } else {
        None
    };
    let (counts, elapsed) = evaluate(g, counter.as_ref())?;
    let agreement = counts.agree();
    let mismatches = if agreement {
        Vec::new()
    } else {
        vec![Mismatch {
            index: 0,
            graph: g.serialize(),
            counts: counts.clone(),
        }]
    };
    Ok(VerificationReport {
        mode: "verify",
        n: g.n(),
        graph: Some(g.serialize()),
        generator: None,
        seed: None,
        density: None,
        instances: 1,
        total_matchings: counts.count_ryser.clone().unwrap_or_default(),
        counts: Some(counts),
        agreement,
        mismatches,
        elapsed_ms: timings.then(|| elapsed.to_timings()),
    })
}

fn sweep(
    mode: &'static str,
    n: usize,
    instances: Vec<(u64, BipartiteGraph)>,
    timings: bool,
) -> Result<VerificationReport> {
    let counter = CvmpCounter::new(n)?;
    let results = instances
        .par_iter()
        .map(|(index, g)| evaluate(g, Some(&counter)).map(|(c, e)| (*index, g, c, e)))
        .collect::<Result<Vec<_>>>()?;
    let mut total = BigUint::default();
    let mut elapsed = Elapsed::default();
    let mut mismatches = Vec::new();
    for (index, g, counts, e) in results {
        elapsed = elapsed.add(e);
        if let Some(c) = &counts.count_ryser {
            total += c;
        }
        if !counts.agree() {
            mismatches.push(Mismatch {
                index,
                graph: g.serialize(),
                counts,
            });
        }
    }
    mismatches.sort_by_key(|m| m.index);
    Ok(VerificationReport {
        mode,
        n,
        graph: None,
        generator: None,
        seed: None,
        density: None,
        instances: instances.len() as u64,
        counts: None,
        total_matchings: total,
        agreement: mismatches.is_empty(),
        mismatches,
        elapsed_ms: timings.then(|| elapsed.to_timings()),
    })
}

/// Every one of the `2^(n*n)` graphs on `K_{n,n}`'s edge set.
pub fn sweep_exhaustive(n: usize, timings: bool) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::BadParameter("sweep needs n >= 1".into()));
    }
    guard("exhaustive sweep", n, EXHAUSTIVE_MAX_N, "; use a random sweep")?;
    let instances = (0..1u64 << (n * n))
        .map(|mask| BipartiteGraph::from_mask(n, mask).map(|g| (mask, g)))
        .collect::<Result<Vec<_>>>()?;
    sweep("sweep-exhaustive", n, instances, timings)
}

pub fn sweep_random(
    n: usize,
    trials: u64,
    seed: u64,
    density: f64,
    timings: bool,
) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::BadParameter("sweep needs n >= 1".into()));
    }
    guard("random sweep", n, CVMP_MAX_N, "")?;
    check_density(density)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances = (0..trials)
        .map(|trial| random_graph(n, density, &mut rng).map(|g| (trial, g)))
        .collect::<Result<Vec<_>>>()?;
    let mut report = sweep("sweep-random", n, instances, timings)?;
    report.generator = Some(GENERATOR_NAME);
    report.seed = Some(seed);
    report.density = Some(density);
    Ok(report)
}

fn check_density(density: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::BadParameter(format!(
            "density {density} is outside [0, 1]"
        )));
    }
    Ok(())
}

/// Each edge present independently with probability `density`, drawn row-major.
pub fn random_graph<R: Rng>(n: usize, density: f64, rng: &mut R) -> Result<BipartiteGraph> {
    check_density(density)?;
    let mut g = BipartiteGraph::empty(n)?;
    for v in 1..=n {
        for w in 1..=n {
            if rng.gen::<f64>() < density {
                g.add_edge((v, w).into());
            }
        }
    }
    Ok(g)
}

/// A graph drawn from a fresh ChaCha8 stream seeded with `seed`.
pub fn generate_graph(n: usize, density: f64, seed: u64) -> Result<BipartiteGraph> {
    random_graph(n, density, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureDiagnostics {
    pub n: usize,
    pub gamma_nodes: usize,
    pub r_edges: usize,
    pub s_edges: usize,
    /// Enumerated CVMPs; absent past the enumeration guard.
    pub valid_paths: Option<u64>,
    pub group_order: u64,
    #[serde(serialize_with = "ser_big")]
    pub unconstrained_walks: BigUint,
    pub walks_equal_order: bool,
}

impl StructureDiagnostics {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagnostics serialize")
    }
}

pub fn gamma_diagnostics(gamma: &GammaGraph) -> Result<StructureDiagnostics> {
    let n = gamma.n();
    let valid_paths = if n <= CVMP_MAX_N {
        Some(enumerate_cvmps(gamma)?.count() as u64)
    } else {
        None
    };
    let group_order = coset_transversals(n).order()?;
    let unconstrained_walks = gamma.count_position_walks();
    Ok(StructureDiagnostics {
        n,
        gamma_nodes: gamma.nodes().len(),
        r_edges: gamma.r_edges().len(),
        s_edges: gamma.s_edges().len(),
        valid_paths,
        group_order,
        walks_equal_order: unconstrained_walks == BigUint::from(group_order),
        unconstrained_walks,
    })
}

/// Canonic factorization and path view of a permutation given in cycle notation.
pub fn factorize(cycles: &str, n: usize) -> Result<String> {
    let p = Permutation::parse_cycles(cycles, n)?;
    let factors = sift(&p);
    let path = perm_to_path(&p);
    let matching = path_to_matching(&path)?;
    let surplus = surplus_edges(&path)?;
    Ok(format!(
        "permutation: {p}\nfactors: {}\npath: {path}\nmatching: {matching}\nsurplus: {}\n",
        format_factorization(&factors),
        format_edge_set(&surplus)
    ))
}
