//! Perfect matchings of bipartite graphs as paths through a generating graph
//! built from the stabilizer chain of `S_n`, with independent counting oracles
//! to check every construction against.

pub mod bipartite;
pub mod error;
pub mod gamma;
pub mod harness;
pub mod mult;
pub mod perm;

pub use bipartite::{
    contains_matching, count_bruteforce, count_ryser, enumerate_matchings, matching_to_perm,
    perm_to_matching, BipartiteGraph, Edge, EdgeSet, Matching,
};
pub use error::{Error, Result};
pub use gamma::{
    build_gamma, edge_requirement, enumerate_cvmps, export_dot, path_to_matching, path_to_perm,
    perm_to_path, surplus_edges, Cvmp, GammaGraph, GammaNode,
};
pub use harness::{count_via_cvmp, CvmpCounter, StructureDiagnostics, VerificationReport};
pub use mult::{ep, four_cycle, is_product_realized, FourCycleWitness};
pub use perm::{coset_transversals, order_from_chain, sift, unsift, CosetChain, Permutation, Transposition};
