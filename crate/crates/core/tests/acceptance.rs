//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p permalgebra --test acceptance -- --nocapture` to see them.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use permalgebra::gamma::CVMP_MAX_N;
use permalgebra::harness::{gamma_diagnostics, random_graph, sweep_exhaustive, sweep_random};
use permalgebra::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: u32, title: &str, checks: &[(&str, bool)]) {
    let ok = checks.iter().all(|(_, pass)| *pass);
    let failed: Vec<_> = checks.iter().filter(|(_, pass)| !pass).map(|(name, _)| *name).collect();
    if ok {
        println!("AC-{id:02} PASS  {title}");
    } else {
        println!("AC-{id:02} FAIL  {title}: {}", failed.join("; "));
    }
    assert!(ok, "AC-{id:02} failed: {}", failed.join("; "));
}

fn cyc(text: &str, n: usize) -> Permutation {
    Permutation::parse_cycles(text, n).unwrap()
}

fn swap(i: usize, k: usize) -> Transposition {
    Transposition::Swap { i, k }
}

fn edges(list: &[(usize, usize)]) -> EdgeSet {
    list.iter().copied().map(Edge::from).collect()
}

#[test]
fn ac01_transversals_of_s4() {
    let start = Instant::now();
    let chain = coset_transversals(4);
    let order = order_from_chain(&chain);
    let elapsed = start.elapsed();
    use Transposition::Identity as I;
    verdict(
        1,
        "S_4 transversals and order 24 in under 1 ms",
        &[
            ("U_1", chain.level(1) == [I, swap(1, 2), swap(1, 3), swap(1, 4)]),
            ("U_2", chain.level(2) == [I, swap(2, 3), swap(2, 4)]),
            ("U_3", chain.level(3) == [I, swap(3, 4)]),
            ("U_4", chain.level(4) == [I]),
            ("order", order == Ok(24)),
            ("time", elapsed < Duration::from_millis(1)),
        ],
    );
}

#[test]
fn ac02_sift_worked_examples() {
    use Transposition::Identity as I;
    let p = cyc("(1,3,2,4)", 4);
    let q = cyc("(1,2)", 4);
    let fp = sift(&p);
    let fq = sift(&q);
    verdict(
        2,
        "sift/unsift of (1,3,2,4) and (1,2)",
        &[
            ("sift (1,3,2,4)", fp == [swap(1, 3), swap(2, 4), swap(3, 4), I]),
            ("sift (1,2)", fq == [swap(1, 2), I, I, I]),
            ("unsift (1,3,2,4)", unsift(&fp).as_ref() == Ok(&p)),
            ("unsift (1,2)", unsift(&fq).as_ref() == Ok(&q)),
        ],
    );
}

#[test]
fn ac03_four_cycle_multiplication() {
    let p = cyc("(1,2,4,3,5)", 5);
    let product = p.compose(&cyc("(2,3)", 5)).unwrap();
    let w = four_cycle(&p, &swap(2, 3)).unwrap();
    let vertices: BTreeSet<_> = w.cycle().into_iter().collect();
    let expected_vertices: BTreeSet<_> = [('v', 1), ('w', 2), ('v', 4), ('w', 3)].into_iter().collect();
    verdict(
        3,
        "(1,2,4,3,5)*(2,3) = (1,3,5)(2,4) through the cycle (v1,w2,v4,w3)",
        &[
            ("product", product == cyc("(1,3,5)(2,4)", 5)),
            ("cycle vertices", vertices == expected_vertices),
            ("cycle order", w.cycle() == [('v', 1), ('w', 2), ('v', 4), ('w', 3)]),
            ("E(pi) edges", w.edges_pi().into_iter().collect::<EdgeSet>() == edges(&[(1, 2), (4, 3)])),
            (
                "E(pi psi) edges",
                w.edges_pi_psi().into_iter().collect::<EdgeSet>() == edges(&[(1, 3), (4, 2)]),
            ),
        ],
    );
}

#[test]
fn ac04_sample_path_of_1243() {
    let path = perm_to_path(&cyc("(1,2,4,3)", 4));
    verdict(
        4,
        "path, matching and surplus edges of (1,2,4,3)",
        &[
            ("path", path.to_string() == "(12,31)(24,32)(34,43)(44,44)"),
            (
                "matching",
                path_to_matching(&path).map(|m| m.pairs().clone())
                    == Ok(edges(&[(1, 2), (2, 4), (4, 3), (3, 1)])),
            ),
            ("surplus", surplus_edges(&path) == Ok(edges(&[(3, 2), (3, 4), (4, 4)]))),
        ],
    );
}

#[test]
fn ac05_paths_biject_with_sn() {
    let mut checks = Vec::new();
    let mut n6_time = Duration::ZERO;
    for n in 2..=6 {
        let start = Instant::now();
        let gamma = build_gamma(n).unwrap();
        let paths: Vec<_> = enumerate_cvmps(&gamma).unwrap().collect();
        let distinct: HashSet<_> = paths.iter().collect();
        let perms: BTreeSet<_> = paths.iter().map(|p| path_to_perm(p).unwrap()).collect();
        let sn: BTreeSet<_> = Permutation::all(n).collect();
        let consistent = paths
            .iter()
            .all(|p| path_to_matching(p).unwrap() == perm_to_matching(&path_to_perm(p).unwrap()));
        let factorial = coset_transversals(n).order().unwrap() as usize;
        checks.push((paths.len() == factorial, format!("n={n}: {} paths", paths.len())));
        checks.push((distinct.len() == paths.len(), format!("n={n}: distinct")));
        checks.push((perms == sn, format!("n={n}: image is S_n")));
        checks.push((consistent, format!("n={n}: matchings agree")));
        if n == 6 {
            n6_time = start.elapsed();
        }
    }
    checks.push((n6_time < Duration::from_secs(60), format!("n=6 took {n6_time:?}")));
    let named: Vec<(&str, bool)> = checks.iter().map(|(ok, name)| (name.as_str(), *ok)).collect();
    verdict(5, "paths of Γ(n) biject onto S_n for n in 2..=6", &named);
}

#[test]
fn ac06_product_realization_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7E57_0006);
    let mut agree = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(4..=7);
        let mut images: Vec<usize> = (1..=n).collect();
        images.shuffle(&mut rng);
        let p = Permutation::from_images(images).unwrap();
        let i = rng.gen_range(1..n);
        let psi = swap(i, rng.gen_range(i + 1..=n));
        let mut g = random_graph(n, rng.gen_range(0.2..0.9), &mut rng).unwrap();
        for e in perm_to_matching(&p).pairs() {
            g.add_edge(*e);
        }
        let product = p.compose(&psi.to_permutation(n).unwrap()).unwrap();
        let direct = contains_matching(&g, &perm_to_matching(&product)).unwrap();
        agree += (is_product_realized(&g, &p, &psi).unwrap() == direct) as usize;
    }
    verdict(
        6,
        "1000 random (g, p, psi): realized product iff E(p psi) in g",
        &[("all agree", agree == 1000)],
    );
}

#[test]
fn ac07_exhaustive_counting_n3_n4() {
    let three = sweep_exhaustive(3, false).unwrap();
    let start = Instant::now();
    let four = sweep_exhaustive(4, false).unwrap();
    let elapsed = start.elapsed();
    println!("       n=4 exhaustive sweep took {elapsed:?}");
    verdict(
        7,
        "all graphs at n=3 and n=4: cvmp = brute force = Ryser",
        &[
            ("n=3 instances", three.instances == 512),
            ("n=3 agreement", three.agreement && three.mismatches.is_empty()),
            ("n=4 instances", four.instances == 65_536),
            ("n=4 agreement", four.agreement && four.mismatches.is_empty()),
            ("n=4 under 5 minutes", elapsed < Duration::from_secs(300)),
        ],
    );
}

#[test]
fn ac08_random_counting_n5_to_n7() {
    let start = Instant::now();
    let five = sweep_random(5, 500, 5, 0.5, false).unwrap();
    let six = sweep_random(6, 500, 6, 0.5, false).unwrap();
    let seven = sweep_random(7, 100, 7, 0.5, false).unwrap();
    let elapsed = start.elapsed();
    println!("       random sweeps took {elapsed:?}");
    verdict(
        8,
        "seeded random graphs at n=5,6,7: cvmp = Ryser",
        &[
            ("n=5", five.instances == 500 && five.agreement),
            ("n=6", six.instances == 500 && six.agreement),
            ("n=7", seven.instances == 100 && seven.agreement),
            ("under 10 minutes", elapsed < Duration::from_secs(600)),
        ],
    );
}

#[test]
fn ac09_oracles_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7E57_0009);
    let mut checks = Vec::new();
    for n in 3..=7 {
        let mut agree = 0;
        for _ in 0..200 {
            let g = random_graph(n, rng.gen_range(0.3..0.8), &mut rng).unwrap();
            agree += (count_ryser(&g).unwrap() == count_bruteforce(&g).unwrap()) as usize;
        }
        checks.push((agree == 200, format!("n={n}: Ryser = brute force on 200 graphs")));
    }
    let mut factorial = BigUint::from(1u8);
    for n in 1..=CVMP_MAX_N {
        factorial *= n;
        let k = BipartiteGraph::complete(n).unwrap();
        let ok = count_ryser(&k).unwrap() == factorial && count_bruteforce(&k).unwrap() == factorial;
        checks.push((ok, format!("K_{n},{n} = {n}!")));
    }
    let named: Vec<(&str, bool)> = checks.iter().map(|(ok, name)| (name.as_str(), *ok)).collect();
    verdict(9, "oracle self-consistency", &named);
}

#[test]
fn ac10_structure_diagnostics() {
    let gamma4 = build_gamma(4).unwrap();
    let mut linked = true;
    for n in 1..=6 {
        let gamma = build_gamma(n).unwrap();
        for path in enumerate_cvmps(&gamma).unwrap() {
            linked &= path
                .nodes()
                .windows(2)
                .all(|w| gamma.has_r_edge(&w[0], &w[1]) || gamma.has_s_edge(&w[0], &w[1]));
        }
    }
    let mut reported = true;
    for n in 1..=CVMP_MAX_N {
        let d = gamma_diagnostics(&build_gamma(n).unwrap()).unwrap();
        println!(
            "       n={n}: {} valid paths, {} unconstrained walks",
            d.group_order, d.unconstrained_walks
        );
        let json = d.to_json();
        reported &= json.contains("\"unconstrained_walks\"")
            && json.contains("\"group_order\"")
            && json.contains("\"walks_equal_order\"")
            && d.valid_paths == Some(d.group_order);
    }
    verdict(
        10,
        "Γ(4) size, path adjacency, walk diagnostics",
        &[
            ("Γ(4) has 18 nodes", gamma4.nodes().len() == 18),
            ("consecutive nodes R- or S-linked for n <= 6", linked),
            ("diagnostics report walks against n!", reported),
        ],
    );
}
