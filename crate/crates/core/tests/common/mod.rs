//! Shared generators and independent oracles for the integration suites.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spectrabound::{
    spectral_radius, AnyGraph, Digraph, Graph, MatError, NonnegMatrix, ShiftedSystem,
    SpectralResult,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Oracle policy for randomized suites: a generous budget at the tight
/// target, accepting a stalled iteration only when its residual
/// certificate is still orders of magnitude inside every tolerance the
/// tests use. Near-degenerate spectra (dominant pair almost tied) make
/// plain power iteration arbitrarily slow, and random instance
/// generators do occasionally produce them.
pub fn oracle(matrix: &NonnegMatrix) -> SpectralResult {
    match spectral_radius(matrix, 1e-12, 200_000) {
        Ok(result) => result,
        Err(MatError::NoConvergence {
            rho,
            residual,
            iterations,
        }) if residual <= 1e-10 => SpectralResult {
            rho,
            vector: Vec::new(),
            residual,
            iterations,
        },
        Err(err) => panic!("oracle failed: {err}"),
    }
}

fn positive_entry(rng: &mut ChaCha8Rng) -> f64 {
    // uniform on (0, 5]
    5.0 * (1.0 - rng.random::<f64>())
}

/// Random irreducible square matrix: a spanning circuit in the support
/// plus density-p extras, entries on (0, 5], diagonal on [0, 5).
pub fn random_square(n: usize, rng: &mut ChaCha8Rng) -> NonnegMatrix {
    let mut rows = vec![vec![0.0; n]; n];
    if n > 1 {
        for i in 0..n {
            rows[i][(i + 1) % n] = positive_entry(rng);
        }
    }
    let density = 0.3 + 0.7 * rng.random::<f64>();
    for i in 0..n {
        for j in 0..n {
            if i != j && rows[i][j] == 0.0 && rng.random::<f64>() < density {
                rows[i][j] = positive_entry(rng);
            }
        }
    }
    for i in 0..n {
        rows[i][i] = 5.0 * rng.random::<f64>();
    }
    NonnegMatrix::from_rows(&rows).unwrap()
}

/// Random irreducible zero-diagonal support with support density at
/// least 0.3 (a spanning circuit plus extras).
pub fn random_support(n: usize, rng: &mut ChaCha8Rng) -> NonnegMatrix {
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        rows[i][(i + 1) % n] = positive_entry(rng);
    }
    let density = 0.3 + 0.7 * rng.random::<f64>();
    for i in 0..n {
        for j in 0..n {
            if i != j && rows[i][j] == 0.0 && rng.random::<f64>() < density {
                rows[i][j] = positive_entry(rng);
            }
        }
    }
    NonnegMatrix::from_rows(&rows).unwrap()
}

/// Random shifted system with entries on (0, 5] and shifts on [0, 5].
pub fn random_system(n: usize, rng: &mut ChaCha8Rng) -> ShiftedSystem {
    let support = random_support(n, rng);
    let t: Vec<f64> = (0..n).map(|_| 5.0 * rng.random::<f64>()).collect();
    ShiftedSystem::new(support, t).unwrap()
}

/// Random irreducible support with integer entries, for properties that
/// demand bit-exact arithmetic under permutation.
pub fn random_integer_support(n: usize, rng: &mut ChaCha8Rng) -> NonnegMatrix {
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        rows[i][(i + 1) % n] = rng.random_range(1..=5) as f64;
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && rows[i][j] == 0.0 && rng.random::<f64>() < 0.5 {
                rows[i][j] = rng.random_range(1..=5) as f64;
            }
        }
    }
    NonnegMatrix::from_rows(&rows).unwrap()
}

/// Random connected bipartite support with symmetric positions but
/// independently drawn entries in each direction. Returns the matrix
/// and the size of the first part: part A is `0..a`, part B is `a..n`.
/// A random spanning tree alternating between the parts guarantees
/// connectivity; extra cross pairs are added on top.
pub fn random_bipartite_support(n: usize, rng: &mut ChaCha8Rng) -> (NonnegMatrix, usize) {
    use rand::seq::SliceRandom;
    assert!(n >= 2);
    let a = rng.random_range(1..n);
    let b = n - a;
    let mut present = vec![vec![false; b]; a];

    let mut order: Vec<usize> = (1..n).collect();
    order.shuffle(rng);
    // a B vertex must come first so later A vertices have a partner
    if let Some(pos) = order.iter().position(|&v| v >= a) {
        order.swap(0, pos);
    }
    let mut placed_a = vec![0usize];
    let mut placed_b: Vec<usize> = Vec::new();
    for &v in &order {
        if v >= a {
            let u = placed_a[rng.random_range(0..placed_a.len())];
            present[u][v - a] = true;
            placed_b.push(v);
        } else {
            let w = placed_b[rng.random_range(0..placed_b.len())];
            present[v][w - a] = true;
            placed_a.push(v);
        }
    }
    for i in 0..a {
        for k in 0..b {
            if !present[i][k] && rng.random::<f64>() < 0.4 {
                present[i][k] = true;
            }
        }
    }
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..a {
        for k in 0..b {
            if present[i][k] {
                rows[i][a + k] = positive_entry(rng);
                rows[a + k][i] = positive_entry(rng);
            }
        }
    }
    (NonnegMatrix::from_rows(&rows).unwrap(), a)
}

/// Exhaustive Floyd–Warshall oracle for the BFS distance tables.
pub fn floyd_warshall(n: usize, arcs: &[(usize, usize)]) -> Vec<Vec<u64>> {
    const INF: u64 = u64::MAX / 4;
    let mut dist = vec![vec![INF; n]; n];
    for i in 0..n {
        dist[i][i] = 0;
    }
    for &(u, v) in arcs {
        dist[u][v] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    dist
}

pub fn undirected_arcs(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect()
}

pub fn directed_arcs(g: &Digraph) -> Vec<(usize, usize)> {
    g.arcs().collect()
}

pub fn as_graph(g: &AnyGraph) -> &Graph {
    match g {
        AnyGraph::Undirected(g) => g,
        AnyGraph::Directed(_) => panic!("expected an undirected graph"),
    }
}

pub fn as_digraph(g: &AnyGraph) -> &Digraph {
    match g {
        AnyGraph::Directed(g) => g,
        AnyGraph::Undirected(_) => panic!("expected a digraph"),
    }
}
