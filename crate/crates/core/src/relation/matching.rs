//! Bipartite perfect matching by augmenting paths.

/// Finds a perfect matching of a square bipartite graph given by adjacency
/// lists `adj[left] = [right, ...]`. Returns `mate[left] = right`.
pub fn perfect_matching(adj: &[Vec<usize>], right_size: usize) -> Option<Vec<usize>> {
    if adj.len() != right_size {
        return None;
    }
    let mut match_right: Vec<Option<usize>> = vec![None; right_size];
    for u in 0..adj.len() {
        let mut seen = vec![false; right_size];
        if !augment(u, adj, &mut seen, &mut match_right) {
            return None;
        }
    }
    let mut mate = vec![0; adj.len()];
    for (v, u) in match_right.iter().enumerate() {
        mate[u.expect("perfect matching covers every right vertex")] = v;
    }
    Some(mate)
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    match_right: &mut [Option<usize>],
) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if match_right[v].is_none_or(|w| augment(w, adj, seen, match_right)) {
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_matching_needing_augmentation() {
        let adj = vec![vec![0, 1], vec![0]];
        assert_eq!(perfect_matching(&adj, 2), Some(vec![1, 0]));
    }

    #[test]
    fn hall_violation() {
        let adj = vec![vec![0], vec![0], vec![1, 2]];
        assert_eq!(perfect_matching(&adj, 3), None);
        assert_eq!(perfect_matching(&[vec![0]], 2), None);
    }
}
