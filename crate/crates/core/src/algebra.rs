//! The commuting algebra `KQ/C` and quasi-commuting algebras `KQ/C^f` as
//! pattern-supported matrix algebras.
//!
//! Every Hom space `v (KQ/C) w` is at most one-dimensional and nonzero exactly
//! when `w` is reachable from `v`. The class of any path `v -> w` is therefore
//! identified with the matrix unit `e_{vw}`, and the algebra is the set of
//! `n x n` matrices supported on the reachability pattern.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{Field, FieldError, Scalar};
use crate::graph::{
    condensation, consistent_ordering, path_components, reachability, ComponentPartition,
    ReachabilityPattern,
};
use crate::quiver::{Path, PathError, Quiver, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("Hom space from {0} to {1} is zero")]
    ZeroHom(String, String),
    #[error("entry ({0}, {1}) lies outside the reachability pattern")]
    PatternViolation(usize, usize),
    #[error("element does not belong to this algebra")]
    ForeignElement,
    #[error("arrow weight for `{0}` must be nonzero")]
    ZeroWeight(String),
    #[error("expected {expected} arrow weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Multiplicative coefficient function: `f(path)` is the product of its arrow
/// weights and `f(vertex) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientFunction {
    weights: Vec<BigRational>,
}

impl CoefficientFunction {
    /// `f == 1` on every path.
    pub fn constant_one(q: &Quiver) -> Self {
        CoefficientFunction {
            weights: vec![BigRational::one(); q.arrow_count()],
        }
    }

    /// Weights taken from the quiver's arrow declarations (default 1).
    pub fn from_quiver(q: &Quiver) -> Self {
        CoefficientFunction {
            weights: q.arrows().iter().map(|a| a.weight()).collect(),
        }
    }

    pub fn new(q: &Quiver, weights: Vec<BigRational>) -> Result<Self, AlgebraError> {
        if weights.len() != q.arrow_count() {
            return Err(AlgebraError::WeightCount {
                expected: q.arrow_count(),
                got: weights.len(),
            });
        }
        if let Some(i) = weights.iter().position(Zero::is_zero) {
            return Err(AlgebraError::ZeroWeight(q.arrows()[i].name.clone()));
        }
        Ok(CoefficientFunction { weights })
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn is_constant_one(&self) -> bool {
        self.weights.iter().all(One::is_one)
    }

    pub fn value(&self, p: &Path) -> BigRational {
        p.arrows()
            .iter()
            .fold(BigRational::one(), |acc, a| acc * &self.weights[a.0])
    }
}

/// `f(p) f(q) / f(pq)`: the scalar relating the product of normalized basis
/// elements to the normalized basis element of the composite.
pub fn quasi_structure_constant(
    f: &CoefficientFunction,
    q: &Quiver,
    p1: &Path,
    p2: &Path,
) -> Result<BigRational, PathError> {
    let composite = p1.compose(q, p2)?;
    Ok(f.value(p1) * f.value(p2) / f.value(&composite))
}

/// `KQ/C` in block form with respect to a consistent vertex order.
#[derive(Clone, Debug)]
pub struct CommutingAlgebra {
    quiver: Quiver,
    field: Field,
    partition: ComponentPartition,
    pattern: ReachabilityPattern,
    /// Component indices in block order.
    block_components: Vec<usize>,
    block_sizes: Vec<usize>,
    block_pattern: Vec<Vec<bool>>,
}

pub fn commuting_algebra(q: &Quiver) -> CommutingAlgebra {
    commuting_algebra_over(q, Field::Rational)
}

pub fn commuting_algebra_over(q: &Quiver, field: Field) -> CommutingAlgebra {
    let partition = path_components(q);
    let order = consistent_ordering(q, &partition);
    let base = reachability(q);
    let cond = condensation(&partition, &base).expect("reachability is constant on components");
    let pattern = base.reordered(&order);

    let mut block_components = Vec::new();
    for v in &order {
        let c = partition.component_of(*v);
        if block_components.last() != Some(&c) {
            block_components.push(c);
        }
    }
    let block_sizes = block_components
        .iter()
        .map(|&c| partition.components()[c].len())
        .collect();
    let block_pattern = block_components
        .iter()
        .map(|&i| block_components.iter().map(|&j| cond.leq(i, j)).collect())
        .collect();

    CommutingAlgebra {
        quiver: q.clone(),
        field,
        partition,
        pattern,
        block_components,
        block_sizes,
        block_pattern,
    }
}

impl CommutingAlgebra {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn partition(&self) -> &ComponentPartition {
        &self.partition
    }

    /// The pattern listed in the consistent order.
    pub fn pattern(&self) -> &ReachabilityPattern {
        &self.pattern
    }

    pub fn order(&self) -> &[VertexId] {
        self.pattern.order()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    /// Partition indices of the blocks, in block order.
    pub fn block_components(&self) -> &[usize] {
        &self.block_components
    }

    pub fn block_pattern(&self) -> &[Vec<bool>] {
        &self.block_pattern
    }

    pub fn n(&self) -> usize {
        self.quiver.vertex_count()
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), AlgebraError> {
        if v.0 < self.n() {
            Ok(())
        } else {
            Err(AlgebraError::UnknownVertex(v.0))
        }
    }

    /// `dim_K v (KQ/C) w`, which is 0 or 1.
    pub fn hom_dimension(&self, v: VertexId, w: VertexId) -> Result<usize, AlgebraError> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        Ok(usize::from(self.pattern.reaches(v, w)))
    }

    pub fn total_dimension(&self) -> usize {
        self.pattern.count_true()
    }

    /// The matrix unit `e_{vw}` spanning `v (KQ/C) w`.
    pub fn basis_element(&self, v: VertexId, w: VertexId) -> Result<AlgebraElement, AlgebraError> {
        if self.hom_dimension(v, w)? == 0 {
            return Err(AlgebraError::ZeroHom(
                self.quiver.vertex_name(v).to_string(),
                self.quiver.vertex_name(w).to_string(),
            ));
        }
        let mut entries = BTreeMap::new();
        entries.insert((v.0, w.0), self.field.one());
        Ok(AlgebraElement {
            n: self.n(),
            field: self.field,
            entries,
        })
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            n: self.n(),
            field: self.field,
            entries: BTreeMap::new(),
        }
    }

    /// Sum of the vertex idempotents.
    pub fn identity(&self) -> AlgebraElement {
        let entries = (0..self.n()).map(|i| ((i, i), self.field.one())).collect();
        AlgebraElement {
            n: self.n(),
            field: self.field,
            entries,
        }
    }

    /// Element with the given entries, indexed by vertex; rejects entries off the pattern.
    pub fn element(
        &self,
        entries: impl IntoIterator<Item = ((VertexId, VertexId), Scalar)>,
    ) -> Result<AlgebraElement, AlgebraError> {
        let mut out = self.zero();
        for ((v, w), x) in entries {
            if x.field() != self.field {
                return Err(AlgebraError::ForeignElement);
            }
            if self.hom_dimension(v, w)? == 0 {
                return Err(AlgebraError::PatternViolation(v.0, w.0));
            }
            if !x.is_zero() {
                out.entries.insert((v.0, w.0), x);
            }
        }
        Ok(out)
    }

    fn owns(&self, x: &AlgebraElement) -> Result<(), AlgebraError> {
        if x.n != self.n() || x.field != self.field {
            return Err(AlgebraError::ForeignElement);
        }
        for &(i, j) in x.entries.keys() {
            if !self.pattern.reaches(VertexId(i), VertexId(j)) {
                return Err(AlgebraError::PatternViolation(i, j));
            }
        }
        Ok(())
    }

    /// Matrix product; the support of the result stays inside the pattern.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.owns(x)?;
        self.owns(y)?;
        let mut by_row: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (&(k, j), s) in &y.entries {
            by_row.entry(k).or_default().push((j, s));
        }
        let mut entries: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (&(i, k), a) in &x.entries {
            let Some(row) = by_row.get(&k) else { continue };
            for &(j, b) in row {
                let prod = a * b;
                let slot = entries.entry((i, j)).or_insert_with(|| self.field.zero());
                *slot = &*slot + &prod;
            }
        }
        entries.retain(|_, s| !s.is_zero());
        let out = AlgebraElement {
            n: self.n(),
            field: self.field,
            entries,
        };
        self.owns(&out)?;
        Ok(out)
    }

    /// Checks the block-form shape: full diagonal blocks, constant
    /// off-diagonal blocks, antisymmetry between components and
    /// block-upper-triangularity in the consistent order.
    pub fn check_block_form(&self) -> Result<(), String> {
        let m = self.block_sizes.len();
        let mut offsets = vec![0];
        for d in &self.block_sizes {
            offsets.push(offsets.last().unwrap() + d);
        }
        if offsets[m] != self.n() {
            return Err(format!("block sizes sum to {} instead of {}", offsets[m], self.n()));
        }
        for bi in 0..m {
            for bj in 0..m {
                let want = self.block_pattern[bi][bj];
                if bi == bj && !want {
                    return Err(format!("diagonal block {bi} is not full"));
                }
                if bi != bj && want && self.block_pattern[bj][bi] {
                    return Err(format!("blocks {bi} and {bj} reach each other"));
                }
                if bi > bj && want {
                    return Err(format!("block ({bi}, {bj}) is below the diagonal"));
                }
                for r in offsets[bi]..offsets[bi + 1] {
                    for c in offsets[bj]..offsets[bj + 1] {
                        if self.pattern.at(r, c) != want {
                            return Err(format!("block ({bi}, {bj}) is not constant at ({r}, {c})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Human-readable `K`/`0` display in the consistent order.
    pub fn pretty(&self) -> String {
        let names: Vec<&str> = self
            .order()
            .iter()
            .map(|&v| self.quiver.vertex_name(v))
            .collect();
        let width = names.iter().map(|s| s.len()).max().unwrap_or(1);
        let mut s = String::new();
        let _ = writeln!(s, "{:width$}   {}", "", names.iter().map(|n| format!("{n:>width$}")).collect::<Vec<_>>().join(" "));
        for (i, name) in names.iter().enumerate() {
            let row: Vec<String> = (0..self.n())
                .map(|j| format!("{:>width$}", if self.pattern.at(i, j) { "K" } else { "0" }))
                .collect();
            let _ = writeln!(s, "{name:>width$} ( {} )", row.join(" "));
        }
        s
    }
}

/// Pattern-supported sparse matrix; keys are `(source, target)` vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    n: usize,
    field: Field,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl AlgebraElement {
    pub fn entries(&self) -> &BTreeMap<(usize, usize), Scalar> {
        &self.entries
    }

    pub fn entry(&self, v: VertexId, w: VertexId) -> Scalar {
        self.entries
            .get(&(v.0, w.0))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, s: &Scalar) -> AlgebraElement {
        let mut entries = BTreeMap::new();
        for (k, x) in &self.entries {
            let y = x * s;
            if !y.is_zero() {
                entries.insert(*k, y);
            }
        }
        AlgebraElement {
            n: self.n,
            field: self.field,
            entries,
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut entries = self.entries.clone();
        for (k, x) in &other.entries {
            let slot = entries.entry(*k).or_insert_with(|| self.field.zero());
            *slot = &*slot + x;
        }
        entries.retain(|_, s| !s.is_zero());
        AlgebraElement {
            n: self.n,
            field: self.field,
            entries,
        }
    }
}

/// Identification of a quasi-commuting algebra with the commuting algebra:
/// for each reachable pair `(v, w)` the normalized basis element
/// `b_{vw} = f(p) [p]` is the same for every path `p: v -> w`, and `b_{vw}`
/// corresponds to `e_{vw}`.
#[derive(Clone, Debug)]
pub struct NormalizedBasis {
    f: CoefficientFunction,
    /// Shortest representative path and its coefficient for every reachable pair.
    pub representatives: BTreeMap<(usize, usize), (Path, BigRational)>,
}

impl NormalizedBasis {
    pub fn coefficient_function(&self) -> &CoefficientFunction {
        &self.f
    }

    /// Coordinates of the class `[p]` in the commuting-algebra picture:
    /// `[p] = f(p)^{-1} b_{vw}`.
    pub fn class_of_path(&self, algebra: &CommutingAlgebra, p: &Path) -> Result<AlgebraElement, AlgebraError> {
        let unit = algebra.basis_element(p.start(), p.end())?;
        let coeff = algebra.field().from_rational(&self.f.value(p).recip())?;
        Ok(unit.scale(&coeff))
    }
}

/// Quasi-commuting algebra for a multiplicative `f`: same pattern and block
/// data as `KQ/C`, plus the explicit normalized basis.
pub fn quasi_commuting_algebra(
    q: &Quiver,
    f: &CoefficientFunction,
    field: Field,
) -> Result<(CommutingAlgebra, NormalizedBasis), AlgebraError> {
    if f.weights.len() != q.arrow_count() {
        return Err(AlgebraError::WeightCount {
            expected: q.arrow_count(),
            got: f.weights.len(),
        });
    }
    for (w, a) in f.weights.iter().zip(q.arrows()) {
        if field.from_rational(w)?.is_zero() {
            return Err(AlgebraError::ZeroWeight(a.name.clone()));
        }
    }
    let algebra = commuting_algebra_over(q, field);
    let mut representatives = BTreeMap::new();
    for v in q.vertex_ids() {
        for (w, p) in shortest_paths_from(q, v) {
            let c = f.value(&p);
            representatives.insert((v.0, w.0), (p, c));
        }
    }
    Ok((
        algebra,
        NormalizedBasis {
            f: f.clone(),
            representatives,
        },
    ))
}

/// Breadth-first shortest paths from `v`, first-discovered arrows winning ties.
fn shortest_paths_from(q: &Quiver, v: VertexId) -> Vec<(VertexId, Path)> {
    let mut best: Vec<Option<Path>> = vec![None; q.vertex_count()];
    best[v.0] = Some(Path::vertex(v));
    let mut queue = VecDeque::from([v]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        let px = best[x.0].clone().expect("queued vertices have paths");
        for &a in q.out_arrows(x) {
            let t = q.arrow(a).target;
            if best[t.0].is_none() {
                let step = Path::arrow(q, a);
                best[t.0] = Some(px.compose(q, &step).expect("arrow leaves x"));
                queue.push_back(t);
            }
        }
        out.push((x, px));
    }
    out
}
