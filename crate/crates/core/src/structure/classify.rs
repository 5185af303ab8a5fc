use crate::graph::{bfs_distances, gcd, strongly_connected};
use crate::model::{NodeIx, WeakModel};

/// Recurrent/transient decomposition of a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeClassification {
    /// Recurrent classes, each ascending, ordered by smallest member.
    pub recurrent_classes: Vec<Vec<NodeIx>>,
    /// Period of each recurrent class (gcd of its cycle lengths).
    pub periods: Vec<usize>,
    pub transient: Vec<NodeIx>,
    class_of: Vec<Option<usize>>,
}

impl NodeClassification {
    pub fn is_strongly_connected(&self) -> bool {
        self.recurrent_classes.len() == 1 && self.transient.is_empty()
    }

    pub fn class_of(&self, node: NodeIx) -> Option<usize> {
        self.class_of[node]
    }

    pub fn is_recurrent(&self, node: NodeIx) -> bool {
        self.class_of[node].is_some()
    }

    pub fn is_transient(&self, node: NodeIx) -> bool {
        self.class_of[node].is_none()
    }

    /// Index of the recurrent class equal to `nodes` (in any order).
    pub fn find_class(&self, nodes: &[NodeIx]) -> Option<usize> {
        let mut sorted = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.recurrent_classes.iter().position(|c| *c == sorted)
    }

    pub fn all_recurrent_aperiodic(&self) -> bool {
        self.periods.iter().all(|&p| p == 1)
    }
}

/// An SCC is a recurrent class iff it contains a cycle and no edge leaves it.
/// A single node without a self-loop is always transient.
pub fn classify_nodes(model: &WeakModel) -> NodeClassification {
    let adj = model.adjacency();
    let comps = strongly_connected(adj);
    let mut recurrent_classes = Vec::new();
    let mut periods = Vec::new();
    let mut transient = Vec::new();
    let mut class_of = vec![None; model.node_count()];

    for (c, members) in comps.members.iter().enumerate() {
        if comps.is_cyclic(c, adj) && !comps.has_exit(c, adj) {
            for &v in members {
                class_of[v] = Some(recurrent_classes.len());
            }
            periods.push(component_period(adj, members, |v| comps.component_of[v] == c));
            recurrent_classes.push(members.clone());
        } else {
            transient.extend_from_slice(members);
        }
    }
    transient.sort_unstable();
    NodeClassification { recurrent_classes, periods, transient, class_of }
}

/// gcd over internal edges `u -> v` of `level(u) + 1 - level(v)`, with levels
/// taken from a BFS rooted at the smallest member. Zero for acyclic components.
pub(crate) fn component_period(adj: &[Vec<usize>], members: &[usize], inside: impl Fn(usize) -> bool) -> usize {
    let (level, _) = bfs_distances(adj, &members[..1], &inside);
    let mut g = 0;
    for &u in members {
        for &v in &adj[u] {
            if inside(v) {
                g = gcd(g, (level[u] + 1).abs_diff(level[v]));
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(m: &WeakModel, nodes: &[NodeIx]) -> Vec<String> {
        m.node_names(nodes)
    }

    #[test]
    fn fig3b_loopless_has_period_two_class() {
        let m = fixtures::fig3b_loopless();
        let c = classify_nodes(&m);
        assert_eq!(c.recurrent_classes.len(), 1);
        assert_eq!(names(&m, &c.recurrent_classes[0]), ["b", "c"]);
        assert_eq!(c.periods, vec![2]);
        assert_eq!(names(&m, &c.transient), ["a"]);
        assert!(!c.is_strongly_connected());
    }

    #[test]
    fn fig3b_recurrent_class_is_aperiodic() {
        let m = fixtures::fig3b();
        let c = classify_nodes(&m);
        assert_eq!(names(&m, &c.recurrent_classes[0]), ["b", "c"]);
        assert_eq!(c.periods, vec![1]);
        assert_eq!(names(&m, &c.transient), ["a"]);
    }

    #[test]
    fn fig5a_is_strongly_connected_and_aperiodic() {
        let m = fixtures::fig5a();
        let c = classify_nodes(&m);
        assert!(c.is_strongly_connected());
        assert_eq!(c.recurrent_classes[0].len(), 6);
        assert_eq!(c.periods, vec![1]);
    }

    #[test]
    fn fig7s_has_period_four() {
        let c = classify_nodes(&fixtures::fig7s());
        assert!(c.is_strongly_connected());
        assert_eq!(c.periods, vec![4]);
    }

    #[test]
    fn sink_and_trivial_nodes_are_transient() {
        let m =
            crate::format::parse_model("weakmodel v1\ncolors B\nnode a B\nnode b B\nnode c B\nedge a b\nedge c c\n")
                .unwrap();
        let c = classify_nodes(&m);
        assert_eq!(c.transient, vec![0, 1]);
        assert_eq!(c.recurrent_classes, vec![vec![2]]);
        assert_eq!(c.periods, vec![1]);
        assert_eq!(c.find_class(&[2]), Some(0));
        assert_eq!(c.find_class(&[0]), None);
    }

    #[test]
    fn two_recurrent_classes() {
        let c = classify_nodes(&fixtures::fig8s());
        assert_eq!(c.recurrent_classes, vec![vec![3]]);
        assert_eq!(c.transient, vec![0, 1, 2]);
    }
}
