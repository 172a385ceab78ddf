//! Directed acyclic graphs: reduced views, Markov blankets, single
//! connectivity and a greedy loop cutset.

use crate::error::{Error, Result};

/// A directed acyclic graph over nodes `0..n`. Parent lists keep their
/// declaration order; child lists are ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
}

impl Dag {
    pub fn new(parents: Vec<Vec<usize>>) -> Result<Self> {
        let n = parents.len();
        let mut children = vec![Vec::new(); n];
        for (v, ps) in parents.iter().enumerate() {
            for (k, &p) in ps.iter().enumerate() {
                if p >= n {
                    return Err(Error::InvalidNetwork(format!("parent index {p} out of range")));
                }
                if p == v {
                    return Err(Error::InvalidNetwork(format!("node {v} is its own parent")));
                }
                if ps[..k].contains(&p) {
                    return Err(Error::InvalidNetwork(format!("duplicate arc {p} -> {v}")));
                }
                children[p].push(v);
            }
        }
        for c in &mut children {
            c.sort_unstable();
        }
        let dag = Self { parents, children };
        if dag.topological_order().len() != n {
            return Err(Error::InvalidNetwork("the graph has a directed cycle".into()));
        }
        Ok(dag)
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut parents = vec![Vec::new(); n];
        for &(from, to) in arcs {
            if to >= n {
                return Err(Error::InvalidNetwork(format!("node index {to} out of range")));
            }
            parents[to].push(from);
        }
        Self::new(parents)
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|v| self.parents[v].iter().map(move |&p| (p, v))).collect()
    }

    /// Kahn's algorithm, smallest ready index first. Shorter than `len()`
    /// exactly when there is a cycle.
    pub fn topological_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut indegree: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &c in &self.children[v] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        order
    }

    /// The same graph with every arc leaving a node of `nodes` deleted.
    pub fn without_out_arcs(&self, nodes: &[usize]) -> Dag {
        let mut cut = vec![false; self.len()];
        for &v in nodes {
            cut[v] = true;
        }
        let parents: Vec<Vec<usize>> =
            self.parents.iter().map(|ps| ps.iter().copied().filter(|&p| !cut[p]).collect()).collect();
        let children = self
            .children
            .iter()
            .enumerate()
            .map(|(v, cs)| if cut[v] { Vec::new() } else { cs.clone() })
            .collect();
        Dag { parents, children }
    }

    /// The node, its parents, children and the children's other parents,
    /// ascending.
    pub fn markov_blanket_plus(&self, v: usize) -> Vec<usize> {
        let mut set = vec![false; self.len()];
        set[v] = true;
        for &p in &self.parents[v] {
            set[p] = true;
        }
        for &c in &self.children[v] {
            set[c] = true;
            for &q in &self.parents[c] {
                set[q] = true;
            }
        }
        (0..self.len()).filter(|&u| set[u]).collect()
    }

    fn induced_adjacency(&self, nodes: &[usize]) -> Vec<Vec<usize>> {
        let mut inside = vec![false; self.len()];
        for &v in nodes {
            inside[v] = true;
        }
        let mut adj = vec![Vec::new(); self.len()];
        for &v in nodes {
            for &p in &self.parents[v] {
                if inside[p] {
                    adj[v].push(p);
                    adj[p].push(v);
                }
            }
        }
        adj
    }

    /// Whether the undirected skeleton of the subgraph induced by `nodes`
    /// is a forest.
    pub fn is_singly_connected(&self, nodes: &[usize]) -> bool {
        let mut inside = vec![false; self.len()];
        for &v in nodes {
            inside[v] = true;
        }
        let mut root: Vec<usize> = (0..self.len()).collect();
        fn find(root: &mut [usize], mut v: usize) -> usize {
            while root[v] != v {
                root[v] = root[root[v]];
                v = root[v];
            }
            v
        }
        for &v in nodes {
            for &p in &self.parents[v] {
                if !inside[p] {
                    continue;
                }
                let (a, b) = (find(&mut root, v), find(&mut root, p));
                if a == b {
                    return false;
                }
                root[a] = b;
            }
        }
        true
    }

    /// Greedy loop cutset for the class node `class` given evidence nodes.
    ///
    /// While `B⁺` of the class (after deleting arcs leaving evidence and
    /// chosen nodes) is multiply connected, the non-evidence, non-class node
    /// of highest degree in the 2-core of its skeleton that still has an
    /// arc into that core is added, lowest index first on ties. The result
    /// is valid but not necessarily minimal.
    pub fn find_loop_cutset(&self, class: usize, evidence: &[usize]) -> Vec<usize> {
        let mut fixed: Vec<usize> = evidence.to_vec();
        let mut cutset = Vec::new();
        loop {
            let reduced = self.without_out_arcs(&fixed);
            let blanket = reduced.markov_blanket_plus(class);
            if reduced.is_singly_connected(&blanket) {
                cutset.sort_unstable();
                return cutset;
            }
            let core = reduced.two_core(&blanket);
            let adj = reduced.induced_adjacency(&core);
            let mut in_core = vec![false; self.len()];
            for &v in &core {
                in_core[v] = true;
            }
            let pick = core
                .iter()
                .copied()
                .filter(|&v| v != class && !fixed.contains(&v))
                .filter(|&v| reduced.children[v].iter().any(|&c| in_core[c]))
                .max_by(|&a, &b| adj[a].len().cmp(&adj[b].len()).then(b.cmp(&a)))
                .expect("every cycle contains a non-class node with an outgoing cycle arc");
            fixed.push(pick);
            cutset.push(pick);
        }
    }

    /// Nodes of the induced skeleton left after repeatedly pruning nodes of
    /// degree at most one. Ascending.
    fn two_core(&self, nodes: &[usize]) -> Vec<usize> {
        let adj = self.induced_adjacency(nodes);
        let mut alive = vec![false; self.len()];
        for &v in nodes {
            alive[v] = true;
        }
        let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut stack: Vec<usize> = nodes.iter().copied().filter(|&v| degree[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &u in &adj[v] {
                if alive[u] {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        stack.push(u);
                    }
                }
            }
        }
        let mut core: Vec<usize> = nodes.iter().copied().filter(|&v| alive[v]).collect();
        core.sort_unstable();
        core
    }
}
