//! Small adjacency-list utilities shared by the model and the pair graph.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// Strongly connected components of a graph given as sorted adjacency lists.
#[derive(Debug, Clone)]
pub(crate) struct Components {
    /// Members of each component, ascending; components ordered by smallest member.
    pub members: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
}

impl Components {
    /// True if the component contains a cycle (more than one node, or a self-loop).
    pub fn is_cyclic(&self, comp: usize, adj: &[Vec<usize>]) -> bool {
        let m = &self.members[comp];
        m.len() > 1 || adj[m[0]].binary_search(&m[0]).is_ok()
    }

    /// True if some edge leaves the component.
    pub fn has_exit(&self, comp: usize, adj: &[Vec<usize>]) -> bool {
        self.members[comp].iter().any(|&u| adj[u].iter().any(|&v| self.component_of[v] != comp))
    }
}

pub(crate) fn strongly_connected(adj: &[Vec<usize>]) -> Components {
    let mut g = DiGraph::<(), ()>::with_capacity(adj.len(), 0);
    for _ in 0..adj.len() {
        g.add_node(());
    }
    for (u, list) in adj.iter().enumerate() {
        for &v in list {
            g.add_edge(NodeIndex::new(u), NodeIndex::new(v), ());
        }
    }
    let mut members: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut m: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
            m.sort_unstable();
            m
        })
        .collect();
    members.sort_unstable_by_key(|m| m[0]);
    let mut component_of = vec![0; adj.len()];
    for (c, m) in members.iter().enumerate() {
        for &v in m {
            component_of[v] = c;
        }
    }
    Components { members, component_of }
}

/// Breadth-first distances from `sources`, following `adj`, restricted to
/// nodes accepted by `allow`. Unreached nodes get `usize::MAX`.
pub(crate) fn bfs_distances(
    adj: &[Vec<usize>],
    sources: &[usize],
    allow: impl Fn(usize) -> bool,
) -> (Vec<usize>, Vec<usize>) {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut parent = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] == usize::MAX {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == usize::MAX && allow(v) {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    (dist, parent)
}

pub(crate) fn reachable(adj: &[Vec<usize>], sources: &[usize]) -> Vec<bool> {
    bfs_distances(adj, sources, |_| true).0.into_iter().map(|d| d != usize::MAX).collect()
}

pub(crate) fn reverse(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut rev = vec![Vec::new(); adj.len()];
    for (u, list) in adj.iter().enumerate() {
        for &v in list {
            rev[v].push(u);
        }
    }
    rev
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_are_canonical() {
        // 0 -> 1 -> 2 -> 1, 3 isolated with a loop
        let adj = vec![vec![1], vec![2], vec![1], vec![3]];
        let c = strongly_connected(&adj);
        assert_eq!(c.members, vec![vec![0], vec![1, 2], vec![3]]);
        assert!(!c.is_cyclic(0, &adj));
        assert!(c.is_cyclic(1, &adj));
        assert!(c.is_cyclic(2, &adj));
        assert!(c.has_exit(0, &adj));
        assert!(!c.has_exit(1, &adj));
    }

    #[test]
    fn bfs_respects_filter() {
        let adj = vec![vec![1, 2], vec![3], vec![3], vec![]];
        let (d, p) = bfs_distances(&adj, &[0], |v| v != 1);
        assert_eq!(d, vec![0, usize::MAX, 1, 2]);
        assert_eq!(p[3], 2);
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(0, 4), 4);
    }
}
