//! The skeleton of `KQ/C`: one idempotent per path-connected component,
//! viewed as a finite poset, together with Hasse diagrams and incidence
//! algebras.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{commuting_algebra, commuting_algebra_over, AlgebraError, CommutingAlgebra};
use crate::field::{Field, Scalar};
use crate::graph::longest_chain_of;
use crate::quiver::{Quiver, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SkeletonError {
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive at ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
    #[error("relation is not square")]
    NotSquare,
    #[error("representative {vertex} does not lie in component {component}")]
    BadRepresentative { component: usize, vertex: String },
    #[error("expected {expected} representatives, got {got}")]
    RepresentativeCount { expected: usize, got: usize },
    #[error("product of {0:?} and {1:?} is not preserved")]
    MultiplicationMismatch((usize, usize), (usize, usize)),
    #[error("incidence algebra has dimension {incidence} but the corner algebra has {corner}")]
    NotBijective { incidence: usize, corner: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Finite partial order on `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn new(leq: Vec<Vec<bool>>) -> Result<Self, SkeletonError> {
        let m = leq.len();
        if leq.iter().any(|r| r.len() != m) {
            return Err(SkeletonError::NotSquare);
        }
        for i in 0..m {
            if !leq[i][i] {
                return Err(SkeletonError::NotReflexive(i));
            }
            for j in 0..m {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(SkeletonError::NotAntisymmetric(i, j));
                }
                if !leq[i][j] {
                    continue;
                }
                for k in 0..m {
                    if leq[j][k] && !leq[i][k] {
                        return Err(SkeletonError::NotTransitive(i, j, k));
                    }
                }
            }
        }
        Ok(Poset { leq })
    }

    /// Reflexive-transitive closure of `covers`; fails if that closure has a cycle.
    pub fn from_relations(m: usize, relations: &[(usize, usize)]) -> Result<Self, SkeletonError> {
        let mut leq = vec![vec![false; m]; m];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in relations {
            leq[i][j] = true;
        }
        for k in 0..m {
            for i in 0..m {
                if leq[i][k] {
                    for j in 0..m {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Poset::new(leq)
    }

    pub fn chain(m: usize) -> Self {
        let rel: Vec<(usize, usize)> = (1..m).map(|i| (i - 1, i)).collect();
        Poset::from_relations(m, &rel).expect("chains are posets")
    }

    pub fn antichain(m: usize) -> Self {
        Poset::from_relations(m, &[]).expect("antichains are posets")
    }

    /// `0 < 1 < 3` and `0 < 2 < 3`.
    pub fn diamond() -> Self {
        Poset::from_relations(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("diamond is a poset")
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn comparable_pairs(&self) -> usize {
        self.leq.iter().map(|r| r.iter().filter(|&&b| b).count()).sum()
    }

    /// Elements in a longest strict chain.
    pub fn longest_chain(&self) -> usize {
        longest_chain_of(&self.leq)
    }

    pub fn is_antichain(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| !self.lt(i, j)))
    }
}

/// Poset of components plus one chosen vertex per component.
#[derive(Clone, Debug)]
pub struct Skeleton {
    poset: Poset,
    representatives: Vec<VertexId>,
    algebra: CommutingAlgebra,
}

impl Skeleton {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn representatives(&self) -> &[VertexId] {
        &self.representatives
    }

    pub fn algebra(&self) -> &CommutingAlgebra {
        &self.algebra
    }

    pub fn quiver(&self) -> &Quiver {
        self.algebra.quiver()
    }
}

/// Skeleton with the smallest vertex of each component as representative.
pub fn skeleton(q: &Quiver) -> Skeleton {
    skeleton_from_algebra(commuting_algebra(q))
}

pub fn skeleton_over(q: &Quiver, field: Field) -> Skeleton {
    skeleton_from_algebra(commuting_algebra_over(q, field))
}

fn skeleton_from_algebra(algebra: CommutingAlgebra) -> Skeleton {
    let reps = algebra
        .partition()
        .components()
        .iter()
        .map(|c| c[0])
        .collect();
    build_skeleton(algebra, reps)
}

/// Skeleton for an explicit choice of representatives, one per component
/// (in partition order).
pub fn skeleton_with_representatives(q: &Quiver, reps: &[VertexId]) -> Result<Skeleton, SkeletonError> {
    let algebra = commuting_algebra(q);
    let partition = algebra.partition();
    if reps.len() != partition.len() {
        return Err(SkeletonError::RepresentativeCount {
            expected: partition.len(),
            got: reps.len(),
        });
    }
    for (i, &v) in reps.iter().enumerate() {
        if v.0 >= q.vertex_count() || partition.component_of(v) != i {
            return Err(SkeletonError::BadRepresentative {
                component: i,
                vertex: q.vertex_names().get(v.0).cloned().unwrap_or_else(|| v.0.to_string()),
            });
        }
    }
    Ok(build_skeleton(algebra, reps.to_vec()))
}

fn build_skeleton(algebra: CommutingAlgebra, representatives: Vec<VertexId>) -> Skeleton {
    let leq = representatives
        .iter()
        .map(|&v| {
            representatives
                .iter()
                .map(|&w| algebra.pattern().reaches(v, w))
                .collect()
        })
        .collect();
    let poset = Poset::new(leq).expect("reachability between components is a partial order");
    Skeleton {
        poset,
        representatives,
        algebra,
    }
}

/// Cover relation of a poset: `(i, j)` with `i < j` and nothing strictly between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram {
    size: usize,
    covers: Vec<(usize, usize)>,
}

impl HasseDiagram {
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// The poset generated by the covers.
    pub fn closure(&self) -> Poset {
        Poset::from_relations(self.size, &self.covers).expect("covers of a poset generate it")
    }

    /// Quiver `Q(P)` with an arrow for each cover, vertices named `names`.
    pub fn quiver(&self, names: &[String]) -> Quiver {
        use crate::quiver::ArrowSpec;
        let arrows = self
            .covers
            .iter()
            .map(|&(i, j)| ArrowSpec::new(&format!("h_{}_{}", names[i], names[j]), &names[i], &names[j]))
            .collect();
        Quiver::new("Hasse", names.to_vec(), arrows).expect("hasse quiver is well formed")
    }

    /// As [`HasseDiagram::quiver`] with vertices `x1..xm`.
    pub fn default_quiver(&self) -> Quiver {
        let names: Vec<String> = (1..=self.size).map(|i| format!("x{i}")).collect();
        self.quiver(&names)
    }
}

pub fn hasse(p: &Poset) -> HasseDiagram {
    let m = p.len();
    let mut covers = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if p.lt(i, j) && !(0..m).any(|k| p.lt(i, k) && p.lt(k, j)) {
                covers.push((i, j));
            }
        }
    }
    HasseDiagram { size: m, covers }
}

/// Incidence algebra: basis `p^x_y` for `x <= y`, with
/// `p^x_y p^w_z = p^x_z` when `y = w` and zero otherwise.
#[derive(Clone, Debug)]
pub struct IncidenceAlgebra {
    poset: Poset,
    field: Field,
    basis: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

/// Sparse element of an incidence algebra, keyed by basis index.
pub type IncidenceElement = BTreeMap<usize, Scalar>;

pub fn incidence_algebra(p: &Poset, field: Field) -> IncidenceAlgebra {
    let m = p.len();
    let basis: Vec<(usize, usize)> = (0..m)
        .flat_map(|x| (0..m).map(move |y| (x, y)))
        .filter(|&(x, y)| p.leq(x, y))
        .collect();
    let index = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    IncidenceAlgebra {
        poset: p.clone(),
        field,
        basis,
        index,
    }
}

impl IncidenceAlgebra {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Basis pairs in row-major order.
    pub fn basis(&self) -> &[(usize, usize)] {
        &self.basis
    }

    pub fn index_of(&self, x: usize, y: usize) -> Option<usize> {
        self.index.get(&(x, y)).copied()
    }

    /// Product of two basis elements by index; `None` is zero.
    pub fn basis_product(&self, a: usize, b: usize) -> Option<usize> {
        let (x, y) = self.basis[a];
        let (w, z) = self.basis[b];
        if y == w {
            Some(self.index[&(x, z)])
        } else {
            None
        }
    }

    pub fn basis_element(&self, k: usize) -> IncidenceElement {
        BTreeMap::from([(k, self.field.one())])
    }

    pub fn identity(&self) -> IncidenceElement {
        (0..self.poset.len())
            .map(|x| (self.index[&(x, x)], self.field.one()))
            .collect()
    }

    pub fn multiply(&self, a: &IncidenceElement, b: &IncidenceElement) -> IncidenceElement {
        let mut out: IncidenceElement = BTreeMap::new();
        for (&i, s) in a {
            for (&j, t) in b {
                if let Some(k) = self.basis_product(i, j) {
                    let slot = out.entry(k).or_insert_with(|| self.field.zero());
                    *slot = &*slot + &(s * t);
                }
            }
        }
        out.retain(|_, s| !s.is_zero());
        out
    }
}

/// Basis bijection `p^{x_i}_{x_j} -> e_{w_i w_j}` between the incidence algebra
/// of the skeleton poset and the corner of `KQ/C` cut out by the
/// representatives, checked on every product of basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub images: Vec<((usize, usize), (VertexId, VertexId))>,
    pub products_checked: usize,
}

pub fn skeleton_iso_incidence(s: &Skeleton) -> Result<IsoWitness, SkeletonError> {
    let alg = s.algebra();
    let inc = incidence_algebra(s.poset(), alg.field());
    let reps = s.representatives();
    let images: Vec<_> = inc
        .basis()
        .iter()
        .map(|&(i, j)| ((i, j), (reps[i], reps[j])))
        .collect();
    let units = images
        .iter()
        .map(|&(_, (v, w))| alg.basis_element(v, w))
        .collect::<Result<Vec<_>, _>>()?;

    // The corner e A e, e the sum of representative idempotents, has one
    // dimension per reachable representative pair; the map must hit all of them.
    let corner_dim = reps
        .iter()
        .flat_map(|&v| reps.iter().map(move |&w| (v, w)))
        .filter(|&(v, w)| alg.pattern().reaches(v, w))
        .count();
    if corner_dim != inc.dimension() {
        return Err(SkeletonError::NotBijective {
            incidence: inc.dimension(),
            corner: corner_dim,
        });
    }

    let mut checked = 0;
    for a in 0..inc.dimension() {
        for b in 0..inc.dimension() {
            let lhs = alg.multiply(&units[a], &units[b])?;
            let rhs = match inc.basis_product(a, b) {
                Some(k) => units[k].clone(),
                None => alg.zero(),
            };
            if lhs != rhs {
                return Err(SkeletonError::MultiplicationMismatch(inc.basis()[a], inc.basis()[b]));
            }
            checked += 1;
        }
    }
    Ok(IsoWitness {
        images,
        products_checked: checked,
    })
}

/// Dimension of `w_i (KQ/C) w_j`, the Hom space from the projective summand
/// at `w_j` to the one at `w_i`; it is 1 exactly when `x_i <= x_j`.
pub fn end_hom_dims(s: &Skeleton, i: usize, j: usize) -> usize {
    let reps = s.representatives();
    s.algebra()
        .hom_dimension(reps[i], reps[j])
        .expect("representatives are vertices")
}

/// The commuting algebra of the Hasse quiver of `p` has pattern `leq(p)` and
/// skeleton poset `p`.
pub fn idempotence_check(p: &Poset) -> bool {
    let q = hasse(p).default_quiver();
    let alg = commuting_algebra(&q);
    let pattern_ok = (0..p.len()).all(|i| {
        (0..p.len()).all(|j| alg.pattern().reaches(VertexId(i), VertexId(j)) == p.leq(i, j))
    });
    pattern_ok && skeleton(&q).poset() == p
}
