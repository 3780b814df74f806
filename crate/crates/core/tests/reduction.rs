use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use sbesbh_core::oracles::{brute_force_mdpsp, brute_force_mim, reduce_mim_to_mdpsp, BipartiteGraph};
use sbesbh_core::{solve, verify_design, Algorithm, InstanceSpectra, ProbeId, SolverConfig};

/// Random bipartite graph with every degree in 1..=3.
fn random_graph(rng: &mut impl Rng) -> BipartiteGraph {
    loop {
        let nu = rng.gen_range(1..=6u32);
        let nv = rng.gen_range(1..=6u32);
        let mut edges = HashSet::new();
        let mut du = vec![0; nu as usize];
        let mut dv = vec![0; nv as usize];
        for _ in 0..rng.gen_range(1..=30) {
            let (u, v) = (rng.gen_range(0..nu), rng.gen_range(0..nv));
            if du[u as usize] < 3 && dv[v as usize] < 3 && edges.insert((u, v)) {
                du[u as usize] += 1;
                dv[v as usize] += 1;
            }
        }
        if du.iter().chain(&dv).all(|&d| d >= 1) {
            let mut edges: Vec<_> = edges.into_iter().collect();
            edges.sort_unstable();
            return BipartiteGraph::new(nu, nv, edges).unwrap();
        }
    }
}

#[test]
fn reduction_preserves_optimum() {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(2024);
    for _ in 0..150 {
        let g = random_graph(&mut rng);
        assert!(g.max_degree() <= 3);
        let red = reduce_mim_to_mdpsp(&g).unwrap();
        let mim = brute_force_mim(&g).unwrap();
        let (opt, design) = brute_force_mdpsp(&red.instance).unwrap();
        assert_eq!(mim, opt, "{}", g.to_edge_list());
        assert!(verify_design(&design, &red.instance).is_ok());

        let spectra = InstanceSpectra::compute(&red.instance);
        for u in 0..g.n_left() {
            let want: Vec<ProbeId> = g.neighbors(u).into_iter().map(ProbeId).collect();
            assert_eq!(spectra.plus[u as usize], want);
            assert!(spectra.minus[u as usize].is_empty());
            assert!(red.instance.pools[u as usize].primers[0].sequence.len() <= 3 * red.l + 2);
        }
        let distinct: HashSet<_> = red.probe_assignment.iter().collect();
        assert_eq!(distinct.len(), red.probe_assignment.len());

        for a in Algorithm::ALL {
            let d = solve(&red.instance, SolverConfig::new(a));
            assert!(d.len() <= mim);
            assert!(verify_design(&d, &red.instance).is_ok());
        }
    }
}

#[test]
fn path_of_three_vertices() {
    // u1 - v1 - u2
    let g = BipartiteGraph::new(2, 1, vec![(0, 0), (1, 0)]).unwrap();
    let red = reduce_mim_to_mdpsp(&g).unwrap();
    assert_eq!(red.l, 1);
    for a in Algorithm::ALL {
        assert_eq!(solve(&red.instance, SolverConfig::new(a)).len(), 1);
    }
    assert_eq!(brute_force_mim(&g).unwrap(), 1);
}

#[test]
fn larger_graphs_up_to_ten_per_side() {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(7);
    for _ in 0..10 {
        let nu = rng.gen_range(6..=10u32);
        let nv = rng.gen_range(6..=10u32);
        let mut edges = Vec::new();
        for u in 0..nu {
            let mut vs: Vec<u32> = (0..nv).collect();
            for _ in 0..rng.gen_range(1..=3) {
                let v = vs.swap_remove(rng.gen_range(0..vs.len()));
                edges.push((u, v));
            }
        }
        let covered: HashSet<u32> = edges.iter().map(|e| e.1).collect();
        if covered.len() != nv as usize {
            continue;
        }
        let g = BipartiteGraph::new(nu, nv, edges).unwrap();
        let red = reduce_mim_to_mdpsp(&g).unwrap();
        assert_eq!(brute_force_mim(&g).unwrap(), brute_force_mdpsp(&red.instance).unwrap().0);
    }
}
