//! Independent reference implementations used by the integration tests.
//! None of them calls into the algorithms they check.

#![allow(dead_code)]

use amplitudes::{Barcode, GridModule};

/// 1-Wasserstein distance with L1 ground metric and deletion cost equal to
/// the bar length, by dynamic programming over subsets of `b`.
pub fn w1_l1_dp(a: &Barcode, b: &Barcode) -> f64 {
    let (xs, ys) = (&a.bars, &b.bars);
    assert!(ys.len() <= 16, "oracle limited to 16 bars");
    let full = 1usize << ys.len();
    let len = |b: f64, d: f64| if d == f64::INFINITY { f64::INFINITY } else { d - b };
    let pair = |i: usize, j: usize| {
        let (x, y) = (xs[i], ys[j]);
        let dd = if x.death == y.death { 0.0 } else { (x.death - y.death).abs() };
        (x.birth - y.birth).abs() + dd
    };
    // dp[mask] = best cost after placing the first i bars of a, using mask of b
    let mut dp = vec![f64::INFINITY; full];
    dp[0] = 0.0;
    for i in 0..xs.len() {
        let mut next = vec![f64::INFINITY; full];
        for mask in 0..full {
            let cur = dp[mask];
            if cur == f64::INFINITY {
                continue;
            }
            let del = cur + len(xs[i].birth, xs[i].death);
            if del < next[mask] {
                next[mask] = del;
            }
            for j in 0..ys.len() {
                if mask & (1 << j) == 0 {
                    let c = cur + pair(i, j);
                    let m2 = mask | (1 << j);
                    if c < next[m2] {
                        next[m2] = c;
                    }
                }
            }
        }
        dp = next;
    }
    (0..full)
        .map(|mask| {
            let rest: f64 = (0..ys.len()).filter(|j| mask & (1 << j) == 0).map(|j| len(ys[j].birth, ys[j].death)).sum();
            dp[mask] + rest
        })
        .fold(f64::INFINITY, f64::min)
}

/// Rank over F2 of a matrix given as rows of bits.
fn rank_f2(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, |r| r.len() * 64);
    for col in 0..width {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Betti number `b_k` of the Rips complex at scale `r`, from ranks of the
/// simplicial boundary matrices.
pub fn rips_betti(d: &[Vec<f64>], r: f64, k: usize) -> usize {
    let n = d.len();
    let simplices = |dim: usize| -> Vec<Vec<usize>> {
        subsets(n, dim + 1)
            .into_iter()
            .filter(|s| s.iter().all(|&i| s.iter().all(|&j| d[i][j] <= r)))
            .collect()
    };
    let boundary_rank = |dim: usize| -> usize {
        if dim == 0 {
            return 0;
        }
        let (hi, lo) = (simplices(dim), simplices(dim - 1));
        if hi.is_empty() || lo.is_empty() {
            return 0;
        }
        let words = lo.len().div_ceil(64);
        let rows = hi
            .iter()
            .map(|s| {
                let mut row = vec![0u64; words];
                for drop in 0..s.len() {
                    let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                    let idx = lo.iter().position(|f| *f == face).expect("face present");
                    row[idx / 64] ^= 1 << (idx % 64);
                }
                row
            })
            .collect();
        rank_f2(rows)
    };
    simplices(k).len() - boundary_rank(k) - boundary_rank(k + 1)
}

/// Shift amplitude along `(1, ..., 1)` estimated by sampling base points on
/// a lattice of step `h` and displacements on a lattice of step `h`. A
/// nonzero map at displacement `eps_max` is reported as infinite.
pub fn shift_by_sampling(m: &GridModule, h: f64, eps_max: f64) -> f64 {
    let g = m.geometry();
    let n = g.n();
    let lo: Vec<f64> = (0..n).map(|a| g.axis(a)[0]).collect();
    let hi: Vec<f64> = (0..n).map(|a| *g.axis(a).last().unwrap() + 1.0).collect();
    let steps: Vec<usize> = (0..n).map(|a| ((hi[a] - lo[a]) / h).round() as usize).collect();
    let total: usize = steps.iter().map(|s| s + 1).product();
    let mut worst = 0.0f64;
    for flat in 0..total {
        let mut rem = flat;
        let mut x = vec![0.0; n];
        for a in (0..n).rev() {
            x[a] = lo[a] + (rem % (steps[a] + 1)) as f64 * h;
            rem /= steps[a] + 1;
        }
        let Some(u) = g.locate(&x) else { continue };
        if m.dim(&u) == 0 {
            continue;
        }
        let mut k = 1usize;
        loop {
            let eps = k as f64 * h;
            if eps > eps_max {
                return f64::INFINITY;
            }
            let y: Vec<f64> = x.iter().map(|t| t + eps).collect();
            let w = g.locate(&y).expect("shifted point stays on the grid");
            let map = m.structure_map(&u, &w).expect("comparable vertices");
            if map.is_zero() {
                break;
            }
            worst = worst.max(eps);
            k += 1;
        }
    }
    worst
}

/// Largest gap between consecutive breakpoints on any axis.
pub fn max_gap(m: &GridModule) -> f64 {
    let g = m.geometry();
    (0..g.n())
        .flat_map(|a| g.axis(a).windows(2).map(|w| w[1] - w[0]).collect::<Vec<_>>())
        .fold(1.0, f64::max)
}
