//! Seeded random presentations shared by the integration tests.

#![allow(dead_code)]

use cox_core::presentation::Presentation;
use cox_core::VertexId;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(n: i64) -> VertexId {
    VertexId::Int(n)
}

/// An acyclic quiver on `0..n` with at most `max_arrows` arrows counted with
/// multiplicity. Arrows follow a random linear order, so there are no cycles.
pub fn random_quiver(rng: &mut ChaCha8Rng, max_vertices: usize, max_arrows: usize) -> (Vec<(usize, usize)>, usize) {
    let n = rng.gen_range(1..=max_vertices);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let count = if n > 1 { rng.gen_range(0..=max_arrows) } else { 0 };
    let mut arrows = Vec::new();
    for _ in 0..count {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        arrows.push((order[lo], order[hi]));
    }
    (arrows, n)
}

pub fn quiver_presentation(arrows: &[(usize, usize)], n: usize) -> Presentation {
    let vs = (0..n as i64).map(v).collect();
    let es = arrows.iter().map(|&(a, b)| (v(a as i64), v(b as i64))).collect();
    Presentation::finite_quiver(vs, es).unwrap()
}

/// A random partial order on `0..n` as a strict relation matrix `lt[a][b]`
/// (transitively closed), with `a < b` only when `a` precedes `b` in a
/// random linear extension.
pub fn random_poset(rng: &mut ChaCha8Rng, max_elements: usize) -> Vec<Vec<bool>> {
    let n = rng.gen_range(1..=max_elements);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut lt = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.35) {
                lt[order[i]][order[j]] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if lt[i][k] && lt[k][j] {
                    lt[i][j] = true;
                }
            }
        }
    }
    lt
}

pub fn poset_presentation(lt: &[Vec<bool>]) -> Presentation {
    let n = lt.len();
    let vs = (0..n as i64).map(v).collect();
    let mut rel = Vec::new();
    for (i, row) in lt.iter().enumerate() {
        for (j, &b) in row.iter().enumerate() {
            if b {
                rel.push((v(i as i64), v(j as i64)));
            }
        }
    }
    Presentation::finite_poset(vs, rel).unwrap()
}

/// Möbius function from the relation matrix alone.
pub fn mobius_oracle(lt: &[Vec<bool>], a: usize, b: usize) -> i64 {
    if a == b {
        return 1;
    }
    if !lt[a][b] {
        return 0;
    }
    let mut s = 0;
    for z in 0..lt.len() {
        if (z == a || lt[a][z]) && lt[z][b] {
            s += mobius_oracle(lt, a, z);
        }
    }
    -s
}
