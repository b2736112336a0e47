//! Finite quivers and the paths in them.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("a quiver needs at least one vertex")]
    NoVertices,
    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),
    #[error("arrow `{arrow}` refers to undeclared vertex `{vertex}`")]
    UndeclaredVertex { arrow: String, vertex: String },
    #[error("arrow `{0}` has weight zero")]
    ZeroWeight(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("path ends at `{end}` but the next one starts at `{start}`")]
    EndpointMismatch { end: String, start: String },
    #[error("unknown arrow index {0}")]
    UnknownArrow(usize),
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
    /// Explicit weight; `None` means the default weight 1.
    pub weight: Option<BigRational>,
}

impl Arrow {
    pub fn weight(&self) -> BigRational {
        self.weight.clone().unwrap_or_else(BigRational::one)
    }
}

/// Unvalidated arrow declaration, by vertex name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub weight: Option<BigRational>,
}

impl ArrowSpec {
    pub fn new(name: &str, source: &str, target: &str) -> Self {
        ArrowSpec {
            name: name.into(),
            source: source.into(),
            target: target.into(),
            weight: None,
        }
    }
}

/// A finite directed multigraph. Loops and parallel arrows are allowed.
///
/// Vertex and arrow indices follow declaration order.
#[derive(Clone, Debug)]
pub struct Quiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    out: Vec<Vec<ArrowId>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn new(
        name: impl Into<String>,
        vertices: Vec<String>,
        arrows: Vec<ArrowSpec>,
    ) -> Result<Self, QuiverError> {
        if vertices.is_empty() {
            return Err(QuiverError::NoVertices);
        }
        let mut seen: HashSet<String> = HashSet::new();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if !seen.insert(v.clone()) {
                return Err(QuiverError::DuplicateIdentifier(v.clone()));
            }
            vertex_index.insert(v.clone(), VertexId(i));
        }
        let mut out = vec![Vec::new(); vertices.len()];
        let mut built = Vec::with_capacity(arrows.len());
        for (i, spec) in arrows.into_iter().enumerate() {
            if !seen.insert(spec.name.clone()) {
                return Err(QuiverError::DuplicateIdentifier(spec.name));
            }
            let lookup = |v: &str| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| QuiverError::UndeclaredVertex {
                        arrow: spec.name.clone(),
                        vertex: v.to_string(),
                    })
            };
            let source = lookup(&spec.source)?;
            let target = lookup(&spec.target)?;
            if spec.weight.as_ref().is_some_and(Zero::is_zero) {
                return Err(QuiverError::ZeroWeight(spec.name));
            }
            out[source.0].push(ArrowId(i));
            built.push(Arrow {
                name: spec.name,
                source,
                target,
                weight: spec.weight,
            });
        }
        Ok(Quiver {
            name: name.into(),
            vertices,
            arrows: built,
            vertex_index,
            out,
        })
    }

    /// Convenience constructor from `(arrow, source, target)` name triples.
    pub fn from_edges(
        name: &str,
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
    ) -> Result<Self, QuiverError> {
        Quiver::new(
            name,
            vertices.iter().map(|v| v.to_string()).collect(),
            arrows
                .iter()
                .map(|(a, s, t)| ArrowSpec::new(a, s, t))
                .collect(),
        )
    }

    /// Quiver on vertices `v1..vn` with arrows `a1..ak` given by 0-based index pairs.
    pub fn from_index_edges(name: &str, n: usize, edges: &[(usize, usize)]) -> Self {
        let vertices = (1..=n).map(|i| format!("v{i}")).collect();
        let arrows = edges
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| ArrowSpec::new(&format!("a{}", k + 1), &format!("v{}", s + 1), &format!("v{}", t + 1)))
            .collect();
        Quiver::new(name, vertices, arrows).expect("index edges are in range")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    /// Arrows leaving `v`, in declaration order.
    pub fn out_arrows(&self, v: VertexId) -> &[ArrowId] {
        &self.out[v.0]
    }

    /// Vertex adjacency (target lists) with duplicates removed.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        self.out
            .iter()
            .map(|arrows| {
                let mut t: Vec<usize> = arrows.iter().map(|a| self.arrows[a.0].target.0).collect();
                t.sort_unstable();
                t.dedup();
                t
            })
            .collect()
    }

    pub fn has_explicit_weights(&self) -> bool {
        self.arrows.iter().any(|a| a.weight.is_some())
    }
}

/// A finite path: a start vertex followed by composable arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    start: VertexId,
    end: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    /// The length-0 path at `v`.
    pub fn vertex(v: VertexId) -> Self {
        Path {
            start: v,
            end: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Self {
        let arrow = q.arrow(a);
        Path {
            start: arrow.source,
            end: arrow.target,
            arrows: vec![a],
        }
    }

    pub fn new(q: &Quiver, start: VertexId, arrows: Vec<ArrowId>) -> Result<Self, PathError> {
        if start.0 >= q.vertex_count() {
            return Err(PathError::UnknownVertex(start.0));
        }
        let mut end = start;
        for &a in &arrows {
            let arrow = q.arrows.get(a.0).ok_or(PathError::UnknownArrow(a.0))?;
            if arrow.source != end {
                return Err(PathError::EndpointMismatch {
                    end: q.vertex_name(end).to_string(),
                    start: q.vertex_name(arrow.source).to_string(),
                });
            }
            end = arrow.target;
        }
        Ok(Path { start, end, arrows })
    }

    /// Path spelled by arrow names, e.g. `["a", "b", "c"]`.
    pub fn from_names(q: &Quiver, start: &str, arrows: &[&str]) -> Option<Self> {
        let start = q.vertex(start)?;
        let ids = arrows
            .iter()
            .map(|n| q.arrow_by_name(n))
            .collect::<Option<Vec<_>>>()?;
        Path::new(q, start, ids).ok()
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Concatenation `self` then `other`.
    pub fn compose(&self, q: &Quiver, other: &Path) -> Result<Path, PathError> {
        if self.end != other.start {
            return Err(PathError::EndpointMismatch {
                end: q.vertex_name(self.end).to_string(),
                start: q.vertex_name(other.start).to_string(),
            });
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Ok(Path {
            start: self.start,
            end: other.end,
            arrows,
        })
    }

    /// Parallel paths share both endpoints.
    pub fn is_parallel(&self, other: &Path) -> bool {
        self.start == other.start && self.end == other.end
    }

    /// Sub-path consisting of arrows `from..to`.
    pub fn slice(&self, q: &Quiver, from: usize, to: usize) -> Path {
        let start = if from == 0 {
            self.start
        } else {
            q.arrow(self.arrows[from - 1]).target
        };
        let end = if to == 0 {
            self.start
        } else {
            q.arrow(self.arrows[to - 1]).target
        };
        Path {
            start,
            end,
            arrows: self.arrows[from..to].to_vec(),
        }
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver: q }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            return write!(f, "{}", self.quiver.vertex_name(self.path.start));
        }
        let names: Vec<&str> = self
            .path
            .arrows
            .iter()
            .map(|a| self.quiver.arrow(*a).name.as_str())
            .collect();
        write!(f, "{}", names.join("."))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("more than {cap} paths")]
pub struct PathLimitExceeded {
    pub cap: usize,
}

/// All paths from `v` to `w` of length at most `max_len`, shortest first and
/// lexicographic by arrow index within one length.
pub fn enumerate_paths(q: &Quiver, v: VertexId, w: VertexId, max_len: usize) -> Vec<Path> {
    enumerate_paths_capped(q, v, w, max_len, usize::MAX).expect("uncapped enumeration")
}

/// As [`enumerate_paths`], failing once more than `cap` paths would be produced.
pub fn enumerate_paths_capped(
    q: &Quiver,
    v: VertexId,
    w: VertexId,
    max_len: usize,
    cap: usize,
) -> Result<Vec<Path>, PathLimitExceeded> {
    // Backward distances to `w` prune prefixes that cannot finish in time.
    let n = q.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut preds = vec![Vec::new(); n];
    for a in q.arrows() {
        preds[a.target.0].push(a.source.0);
    }
    dist[w.0] = 0;
    let mut queue = VecDeque::from([w.0]);
    while let Some(x) = queue.pop_front() {
        for &p in &preds[x] {
            if dist[p] == usize::MAX {
                dist[p] = dist[x] + 1;
                queue.push_back(p);
            }
        }
    }

    let mut found = Vec::new();
    if dist[v.0] > max_len {
        return Ok(found);
    }
    let mut layer = vec![Path::vertex(v)];
    for len in 0..=max_len {
        if layer.len() > cap {
            return Err(PathLimitExceeded { cap });
        }
        for p in &layer {
            if p.end == w {
                found.push(p.clone());
                if found.len() > cap {
                    return Err(PathLimitExceeded { cap });
                }
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for p in &layer {
            for &a in q.out_arrows(p.end) {
                let t = q.arrow(a).target;
                if dist[t.0] < max_len - len {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(Path {
                        start: p.start,
                        end: t,
                        arrows,
                    });
                }
            }
        }
        layer = next;
    }
    Ok(found)
}
