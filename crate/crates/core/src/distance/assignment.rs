//! Exact assignment solvers on square cost matrices. `f64::INFINITY` marks a
//! forbidden cell; every input must admit a finite perfect assignment.

use std::collections::VecDeque;

/// Minimum-cost perfect assignment (Hungarian method with potentials,
/// O(n^3)). Returns the total cost and `assign[row] = col`.
pub fn hungarian(cost: &[Vec<f64>]) -> (f64, Vec<usize>) {
    let n = cost.len();
    if n == 0 {
        return (0.0, Vec::new());
    }
    debug_assert!(cost.iter().all(|r| r.len() == n));
    // 1-based arrays, column 0 is a virtual root
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            assert!(delta.is_finite(), "assignment problem has no finite solution");
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0usize; n];
    for j in 1..=n {
        assign[p[j] - 1] = j - 1;
    }
    // recompute from the original entries to avoid drift in the potentials
    let total = assign.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
    (total, assign)
}

/// Maximum bipartite matching restricted to `allowed[i][j]`
/// (Hopcroft-Karp). Returns `match_of_row`.
pub fn hopcroft_karp(n_left: usize, n_right: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    const NIL: usize = usize::MAX;
    let mut pair_l = vec![NIL; n_left];
    let mut pair_r = vec![NIL; n_right];
    let mut dist = vec![0usize; n_left];
    loop {
        // layered BFS from free left vertices
        let mut q = VecDeque::new();
        for l in 0..n_left {
            if pair_l[l] == NIL {
                dist[l] = 0;
                q.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = q.pop_front() {
            for &r in &adj[l] {
                let nl = pair_r[r];
                if nl == NIL {
                    found = true;
                } else if dist[nl] == usize::MAX {
                    dist[nl] = dist[l] + 1;
                    q.push_back(nl);
                }
            }
        }
        if !found {
            break;
        }
        fn dfs(l: usize, adj: &[Vec<usize>], pair_l: &mut [usize], pair_r: &mut [usize], dist: &mut [usize]) -> bool {
            for &r in &adj[l] {
                let nl = pair_r[r];
                if nl == usize::MAX || (dist[nl] == dist[l] + 1 && dfs(nl, adj, pair_l, pair_r, dist)) {
                    pair_l[l] = r;
                    pair_r[r] = l;
                    return true;
                }
            }
            dist[l] = usize::MAX;
            false
        }
        for l in 0..n_left {
            if pair_l[l] == NIL {
                dfs(l, adj, &mut pair_l, &mut pair_r, &mut dist);
            }
        }
    }
    pair_l.into_iter().map(|r| (r != NIL).then_some(r)).collect()
}

/// Minimizes the largest entry over perfect assignments: binary search over
/// the sorted distinct finite costs with a Hopcroft-Karp feasibility test.
pub fn bottleneck_assignment(cost: &[Vec<f64>]) -> (f64, Vec<usize>) {
    let n = cost.len();
    if n == 0 {
        return (0.0, Vec::new());
    }
    let mut cands: Vec<f64> = cost.iter().flatten().copied().filter(|c| c.is_finite()).collect();
    cands.sort_by(f64::total_cmp);
    cands.dedup();
    let feasible = |t: f64| -> Option<Vec<usize>> {
        let adj: Vec<Vec<usize>> = cost
            .iter()
            .map(|row| (0..n).filter(|&j| row[j] <= t).collect())
            .collect();
        let m = hopcroft_karp(n, n, &adj);
        m.iter().all(Option::is_some).then(|| m.into_iter().map(Option::unwrap).collect())
    };
    let (mut lo, mut hi) = (0usize, cands.len() - 1);
    let mut best = feasible(cands[hi]).expect("assignment problem has no finite solution");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match feasible(cands[mid]) {
            Some(a) => {
                best = a;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    if let Some(a) = feasible(cands[lo]) {
        best = a;
    }
    (cands[lo], best)
}
