//! Brute-force check of quotient Hom dimensions.
//!
//! For a pair of vertices `(v, w)` and a truncation length `L`, the oracle
//! takes the span of all paths `v -> w` of length at most `L` and quotients it
//! by the relations `r (f(p) p - f(q) q) s` for parallel `p, q` whose padded
//! products stay within the truncation. It never looks at reachability or
//! components.

use std::collections::{HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::field::{Field, FieldError, Scalar};
use crate::graph::reachability;
use crate::quiver::{enumerate_paths_capped, Path, Quiver, VertexId};

pub const DEFAULT_PATH_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("more than {cap} paths from {source_vertex} to {target} at truncation {truncation}")]
    TruncationOverflow {
        source_vertex: String,
        target: String,
        truncation: usize,
        cap: usize,
    },
    #[error("coefficient of `{0}` must be nonzero")]
    ZeroCoefficient(String),
    #[error("path `{0}` is not valid in the quiver")]
    InvalidPath(String),
    #[error("expected {expected} arrow weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("quotient dimension {0} exceeds 1")]
    RankBound(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Finite presentation of a coefficient function on paths: explicitly listed
/// values, and the multiplicative extension of arrow weights elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralCoefficientTable {
    weights: Vec<BigRational>,
    entries: HashMap<Path, BigRational>,
}

impl GeneralCoefficientTable {
    /// `f == 1` on every path.
    pub fn constant_one(q: &Quiver) -> Self {
        GeneralCoefficientTable {
            weights: vec![BigRational::one(); q.arrow_count()],
            entries: HashMap::new(),
        }
    }

    /// Multiplicative extension of the given arrow weights.
    pub fn multiplicative(q: &Quiver, weights: Vec<BigRational>) -> Result<Self, OracleError> {
        if weights.len() != q.arrow_count() {
            return Err(OracleError::WeightCount {
                expected: q.arrow_count(),
                got: weights.len(),
            });
        }
        if let Some(i) = weights.iter().position(Zero::is_zero) {
            return Err(OracleError::ZeroCoefficient(q.arrows()[i].name.clone()));
        }
        Ok(GeneralCoefficientTable {
            weights,
            entries: HashMap::new(),
        })
    }

    /// Weights declared on the quiver's arrows.
    pub fn from_quiver(q: &Quiver) -> Self {
        GeneralCoefficientTable {
            weights: q.arrows().iter().map(|a| a.weight()).collect(),
            entries: HashMap::new(),
        }
    }

    /// Overrides the value on one path.
    pub fn with_entry(mut self, q: &Quiver, p: Path, value: BigRational) -> Result<Self, OracleError> {
        if value.is_zero() {
            return Err(OracleError::ZeroCoefficient(p.display(q).to_string()));
        }
        if Path::new(q, p.start(), p.arrows().to_vec()).as_ref() != Ok(&p) {
            return Err(OracleError::InvalidPath(format!("{p:?}")));
        }
        self.entries.insert(p, value);
        Ok(self)
    }

    pub fn is_multiplicative(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_constant_one(&self) -> bool {
        self.entries.values().chain(&self.weights).all(One::is_one)
    }

    pub fn value(&self, p: &Path) -> BigRational {
        if let Some(v) = self.entries.get(p) {
            return v.clone();
        }
        p.arrows()
            .iter()
            .fold(BigRational::one(), |acc, a| acc * &self.weights[a.0])
    }
}

/// Result of one truncated quotient computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedQuotientReport {
    pub source: String,
    pub target: String,
    pub truncation: usize,
    pub path_count: usize,
    pub generator_count: usize,
    pub relation_rank: usize,
    /// `path_count - relation_rank`, clamped into `{0, 1}`.
    pub dimension: usize,
    /// Whether the dimension is known to hold without truncation.
    pub certified: bool,
}

/// Exact rank of a system of two-term relations `e_i = c * e_j` over a field,
/// by union-find with multiplicative potentials: each tree edge adds one to
/// the rank, and a cycle whose product of coefficients is not 1 forces its
/// component to vanish, adding one more.
#[derive(Clone, Debug)]
pub struct BinomialRank {
    parent: Vec<usize>,
    /// `e_i = potential[i] * e_parent[i]`.
    potential: Vec<Scalar>,
    dead: Vec<bool>,
    rank: usize,
}

impl BinomialRank {
    pub fn new(field: Field, n: usize) -> Self {
        BinomialRank {
            parent: (0..n).collect(),
            potential: vec![field.one(); n],
            dead: vec![false; n],
            rank: 0,
        }
    }

    fn find(&mut self, i: usize) -> (usize, Scalar) {
        let p = self.parent[i];
        if p == i {
            return (i, self.potential[i].one_like());
        }
        let (root, to_root) = self.find(p);
        let pot = &self.potential[i] * &to_root;
        self.parent[i] = root;
        self.potential[i] = pot.clone();
        (root, pot)
    }

    /// Adds the relation `e_i - c * e_j = 0` (with `c` nonzero).
    pub fn add(&mut self, i: usize, j: usize, c: &Scalar) {
        let (ri, ai) = self.find(i);
        let (rj, aj) = self.find(j);
        if ri != rj {
            // e_ri = (c * aj / ai) e_rj
            self.parent[ri] = rj;
            self.potential[ri] = (c * &aj).div(&ai);
            // Joining two vanished components adds nothing new.
            if !(self.dead[ri] && self.dead[rj]) {
                self.rank += 1;
            }
            self.dead[rj] |= self.dead[ri];
        } else if ai != c * &aj && !self.dead[ri] {
            self.dead[ri] = true;
            self.rank += 1;
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of components that survive in the quotient.
    pub fn quotient_dimension(&self) -> usize {
        let n = self.parent.len();
        (0..n)
            .filter(|&i| self.parent[i] == i && !self.dead[i])
            .count()
    }
}

fn common_prefix(a: &Path, b: &Path) -> usize {
    a.arrows().iter().zip(b.arrows()).take_while(|(x, y)| x == y).count()
}

fn common_suffix(a: &Path, b: &Path) -> usize {
    a.arrows()
        .iter()
        .rev()
        .zip(b.arrows().iter().rev())
        .take_while(|(x, y)| x == y)
        .count()
}

/// Dimension of `v (KQ/C^f) w` as seen from paths of length at most `truncation`.
pub fn truncated_hom_dimension(
    q: &Quiver,
    f: &GeneralCoefficientTable,
    v: VertexId,
    w: VertexId,
    truncation: usize,
    field: Field,
    cap: usize,
) -> Result<TruncatedQuotientReport, OracleError> {
    let paths = enumerate_paths_capped(q, v, w, truncation, cap).map_err(|_| OracleError::TruncationOverflow {
        source_vertex: q.vertex_name(v).to_string(),
        target: q.vertex_name(w).to_string(),
        truncation,
        cap,
    })?;
    let n = paths.len();
    let mut coeff: HashMap<&Path, Scalar> = HashMap::new();
    let value = |p: &Path| -> Result<Scalar, OracleError> {
        let s = field.from_rational(&f.value(p))?;
        if s.is_zero() {
            return Err(OracleError::ZeroCoefficient(p.display(q).to_string()));
        }
        Ok(s)
    };
    for p in &paths {
        coeff.insert(p, value(p)?);
    }

    let mut system = BinomialRank::new(field, n);
    let mut generators = 0usize;
    let mut seen: HashSet<Scalar> = HashSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (&paths[i], &paths[j]);
            let (lcp, lcs) = (common_prefix(a, b), common_suffix(a, b));
            let shortest = a.len().min(b.len());
            seen.clear();
            // a = r p s and b = r q s; the generator f(p) a - f(q) b reads
            // a = (f(q)/f(p)) b.
            for pre in 0..=lcp {
                for suf in 0..=lcs.min(shortest - pre) {
                    let (fp, fq) = if f.is_multiplicative() {
                        // Every splitting yields the same ratio f(b)/f(a).
                        (coeff[a].clone(), coeff[b].clone())
                    } else {
                        let p = a.slice(q, pre, a.len() - suf);
                        let r = b.slice(q, pre, b.len() - suf);
                        (value(&p)?, value(&r)?)
                    };
                    let ratio = fq.div(&fp);
                    if seen.insert(ratio.clone()) {
                        generators += 1;
                        system.add(i, j, &ratio);
                    }
                    if f.is_multiplicative() {
                        break;
                    }
                }
                if f.is_multiplicative() {
                    break;
                }
            }
        }
    }

    let rank = system.rank();
    let raw = n - rank;
    debug_assert_eq!(raw, system.quotient_dimension());
    if raw > 1 {
        return Err(OracleError::RankBound(raw));
    }
    let certified = if n == 0 {
        // No path of length <= n - 1 means no path at all.
        truncation + 1 >= q.vertex_count()
    } else {
        f.is_multiplicative() || raw == 0
    };
    Ok(TruncatedQuotientReport {
        source: q.vertex_name(v).to_string(),
        target: q.vertex_name(w).to_string(),
        truncation,
        path_count: n,
        generator_count: generators,
        relation_rank: rank,
        dimension: raw,
        certified,
    })
}

/// Every vertex idempotent survives in the quotient.
pub fn vertex_nondegeneracy(
    q: &Quiver,
    f: &GeneralCoefficientTable,
    truncation: usize,
    field: Field,
) -> Result<bool, OracleError> {
    for v in q.vertex_ids() {
        let r = truncated_hom_dimension(q, f, v, v, truncation, field, DEFAULT_PATH_CAP)?;
        if r.dimension != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Oracle reports for every vertex pair, with `f == 1`, and whether they agree
/// with the reachability pattern.
#[derive(Clone, Debug, Serialize)]
pub struct PatternEquivalenceReport {
    pub truncation: usize,
    pub equivalent: bool,
    pub mismatches: Vec<(String, String)>,
    pub pairs: Vec<TruncatedQuotientReport>,
}

pub fn pattern_equivalence_report(
    q: &Quiver,
    truncation: usize,
    field: Field,
    cap: usize,
) -> Result<PatternEquivalenceReport, OracleError> {
    let f = GeneralCoefficientTable::constant_one(q);
    let pattern = reachability(q);
    let mut pairs = Vec::new();
    let mut mismatches = Vec::new();
    for v in q.vertex_ids() {
        for w in q.vertex_ids() {
            let r = truncated_hom_dimension(q, &f, v, w, truncation, field, cap)?;
            if r.dimension != usize::from(pattern.reaches(v, w)) {
                mismatches.push((r.source.clone(), r.target.clone()));
            }
            pairs.push(r);
        }
    }
    Ok(PatternEquivalenceReport {
        truncation,
        equivalent: mismatches.is_empty(),
        mismatches,
        pairs,
    })
}

pub fn pattern_equivalence(q: &Quiver, truncation: usize) -> Result<bool, OracleError> {
    Ok(pattern_equivalence_report(q, truncation, Field::Rational, DEFAULT_PATH_CAP)?.equivalent)
}
