//! Bipartite matching (augmenting paths) and dense max-weight assignment.

/// Maximum matching in a bipartite graph given as left-to-right adjacency.
/// Returns the matching size and `match_right[r] = Some(l)`.
pub fn max_bipartite_matching(adj: &[Vec<usize>], right: usize) -> (usize, Vec<Option<usize>>) {
    let mut match_right = vec![None; right];
    let mut size = 0;
    for l in 0..adj.len() {
        let mut seen = vec![false; right];
        if augment(l, adj, &mut seen, &mut match_right) {
            size += 1;
        }
    }
    (size, match_right)
}

fn augment(l: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if match_right[r].is_none_or(|l2| augment(l2, adj, seen, match_right)) {
            match_right[r] = Some(l);
            return true;
        }
    }
    false
}

/// Maximum-weight perfect assignment on a square matrix; `None` entries are
/// forbidden. Returns `None` when no perfect assignment avoids them.
/// Hungarian algorithm with potentials, O(n^3).
pub fn max_weight_assignment(weights: &[Vec<Option<i64>>]) -> Option<(i64, Vec<usize>)> {
    let n = weights.len();
    if n == 0 {
        return Some((0, Vec::new()));
    }
    let max_abs = weights
        .iter()
        .flatten()
        .flatten()
        .map(|w| w.abs())
        .max()
        .unwrap_or(0);
    // forbidden cost dominates any sum of real costs
    let big = (max_abs + 1) * (n as i64 + 1) * 4;
    let cost = |i: usize, j: usize| weights[i][j].map_or(big, |w| -w);

    // 1-based arrays as in the classic formulation
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
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
    let mut total = 0;
    for (i, &j) in assign.iter().enumerate() {
        total += weights[i][j]?;
    }
    Some((total, assign))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_assignment(w: &[Vec<Option<i64>>]) -> Option<i64> {
        fn rec(w: &[Vec<Option<i64>>], row: usize, used: &mut Vec<bool>) -> Option<i64> {
            if row == w.len() {
                return Some(0);
            }
            let mut best = None;
            for j in 0..w.len() {
                if used[j] {
                    continue;
                }
                if let Some(x) = w[row][j] {
                    used[j] = true;
                    if let Some(rest) = rec(w, row + 1, used) {
                        best = Some(best.map_or(x + rest, |b: i64| b.max(x + rest)));
                    }
                    used[j] = false;
                }
            }
            best
        }
        rec(w, 0, &mut vec![false; w.len()])
    }

    #[test]
    fn matching_small() {
        let adj = vec![vec![0, 1], vec![0], vec![1]];
        assert_eq!(max_bipartite_matching(&adj, 2).0, 2);
        assert_eq!(max_bipartite_matching(&[vec![], vec![]], 3).0, 0);
    }

    #[test]
    fn assignment_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=5);
            let w: Vec<Vec<Option<i64>>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| if rng.gen_bool(0.3) { None } else { Some(rng.gen_range(-3..6)) })
                        .collect()
                })
                .collect();
            let got = max_weight_assignment(&w).map(|(t, _)| t);
            assert_eq!(got, brute_assignment(&w), "{w:?}");
        }
    }
}
