//! Path-connected components, reachability and the condensation order.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::quiver::{Quiver, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("components {0} and {1} disagree on reachability between representatives")]
    InconsistentCondensation(usize, usize),
}

/// Partition of the vertices into path-connected (strongly connected) components.
///
/// Components are numbered by their smallest vertex; vertices inside a
/// component are listed in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    components: Vec<Vec<VertexId>>,
    membership: Vec<usize>,
}

impl ComponentPartition {
    pub fn components(&self) -> &[Vec<VertexId>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.membership[v.0]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }
}

/// Reflexive-transitive closure of the arrow relation, stored with respect to
/// an explicit vertex order: `bits[i][j]` says whether `order[i]` reaches `order[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilityPattern {
    order: Vec<VertexId>,
    position: Vec<usize>,
    bits: Vec<Vec<bool>>,
}

impl ReachabilityPattern {
    fn new(order: Vec<VertexId>, bits: Vec<Vec<bool>>) -> Self {
        let mut position = vec![0; order.len()];
        for (i, v) in order.iter().enumerate() {
            position[v.0] = i;
        }
        ReachabilityPattern { order, position, bits }
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }

    /// Entry at positions `(i, j)` of the current order.
    pub fn at(&self, i: usize, j: usize) -> bool {
        self.bits[i][j]
    }

    /// Whether there is a path from `v` to `w`.
    pub fn reaches(&self, v: VertexId, w: VertexId) -> bool {
        self.bits[self.position[v.0]][self.position[w.0]]
    }

    pub fn position_of(&self, v: VertexId) -> usize {
        self.position[v.0]
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.bits
    }

    pub fn count_true(&self) -> usize {
        self.bits.iter().map(|r| r.iter().filter(|&&b| b).count()).sum()
    }

    /// The same relation listed in another vertex order.
    pub fn reordered(&self, order: &[VertexId]) -> ReachabilityPattern {
        let bits = order
            .iter()
            .map(|&v| order.iter().map(|&w| self.reaches(v, w)).collect())
            .collect();
        ReachabilityPattern::new(order.to_vec(), bits)
    }

    /// Rows as strings of `0`/`1`.
    pub fn to_bitstrings(&self) -> Vec<String> {
        bitstrings(&self.bits)
    }
}

pub fn bitstrings(rows: &[Vec<bool>]) -> Vec<String> {
    rows.iter()
        .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
        .collect()
}

/// Reachability between components, indexed like the partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CondensationOrder {
    relation: Vec<Vec<bool>>,
}

impl CondensationOrder {
    pub fn from_relation(relation: Vec<Vec<bool>>) -> Self {
        CondensationOrder { relation }
    }

    pub fn len(&self) -> usize {
        self.relation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relation.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.relation[i][j]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.relation
    }
}

/// Strongly connected components by Tarjan's algorithm.
pub fn path_components(q: &Quiver) -> ComponentPartition {
    let succ = q.successors();
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut raw: Vec<Vec<usize>> = Vec::new();

    // Iterative DFS: frames are (vertex, next successor slot).
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut frames = vec![(root, 0usize)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if frame.1 < succ[v].len() {
                let w = succ[v][frame.1];
                frame.1 += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                raw.push(comp);
            }
        }
    }

    raw.sort_by_key(|c| c[0]);
    let mut membership = vec![0; n];
    for (ci, comp) in raw.iter().enumerate() {
        for &v in comp {
            membership[v] = ci;
        }
    }
    ComponentPartition {
        components: raw
            .into_iter()
            .map(|c| c.into_iter().map(VertexId).collect())
            .collect(),
        membership,
    }
}

/// Reachability by a breadth-first search from every vertex, in declaration order.
pub fn reachability(q: &Quiver) -> ReachabilityPattern {
    let succ = q.successors();
    let n = succ.len();
    let mut bits = vec![vec![false; n]; n];
    for (s, row) in bits.iter_mut().enumerate() {
        row[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &succ[x] {
                if !row[y] {
                    row[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    ReachabilityPattern::new(q.vertex_ids().collect(), bits)
}

/// Component-level reachability read off the vertex pattern. Every pair of
/// representatives is checked to agree.
pub fn condensation(
    partition: &ComponentPartition,
    pattern: &ReachabilityPattern,
) -> Result<CondensationOrder, GraphError> {
    let comps = partition.components();
    let m = comps.len();
    let mut relation = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            let first = pattern.reaches(comps[i][0], comps[j][0]);
            for &u in &comps[i] {
                for &w in &comps[j] {
                    if pattern.reaches(u, w) != first {
                        return Err(GraphError::InconsistentCondensation(i, j));
                    }
                }
            }
            relation[i][j] = first;
        }
    }
    Ok(CondensationOrder { relation })
}

/// Vertex order listing components contiguously, in a topological order of the
/// condensation (Kahn's algorithm, smallest component index first). Within a
/// component vertices keep declaration order.
pub fn consistent_ordering(q: &Quiver, partition: &ComponentPartition) -> Vec<VertexId> {
    let m = partition.len();
    let mut edges = vec![BTreeSet::new(); m];
    let mut indegree = vec![0usize; m];
    for a in q.arrows() {
        let (i, j) = (partition.component_of(a.source), partition.component_of(a.target));
        if i != j && edges[i].insert(j) {
            indegree[j] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..m).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(q.vertex_count());
    while let Some(i) = ready.pop_first() {
        order.extend_from_slice(&partition.components()[i]);
        for &j in &edges[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.insert(j);
            }
        }
    }
    debug_assert_eq!(order.len(), q.vertex_count(), "condensation has a cycle");
    order
}

/// Number of elements in a longest strictly increasing chain of a finite
/// order relation (at least 1 for a nonempty relation).
pub fn longest_chain_of(relation: &[Vec<bool>]) -> usize {
    let m = relation.len();
    if m == 0 {
        return 0;
    }
    // Elements sorted by the size of their down-sets form a linear extension.
    let mut elems: Vec<usize> = (0..m).collect();
    elems.sort_by_key(|&j| (0..m).filter(|&i| relation[i][j]).count());
    let mut best = vec![1usize; m];
    for (k, &y) in elems.iter().enumerate() {
        for &x in &elems[..k] {
            if x != y && relation[x][y] {
                best[y] = best[y].max(best[x] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

pub fn longest_chain(order: &CondensationOrder) -> usize {
    longest_chain_of(order.relation())
}
