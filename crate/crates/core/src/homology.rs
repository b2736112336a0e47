//! Minimal projective resolutions over incidence algebras and their global
//! dimension.
//!
//! Modules are poset representations: a vector space `M(x)` for every element
//! and a linear map `M(x) -> M(y)` for every cover `x < y`, with all composites
//! between two elements agreeing. The indecomposable projective at `x` is
//! one-dimensional on the up-set of `x` with identity maps.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::linalg::Matrix;
use crate::skeleton::{hasse, Poset};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("element {0} is not in the poset")]
    UnknownElement(usize),
    #[error("({0}, {1}) is not a cover relation")]
    NotACover(usize, usize),
    #[error("map along ({x}, {y}) has shape {got:?}, expected {want:?}")]
    BadShape {
        x: usize,
        y: usize,
        got: (usize, usize),
        want: (usize, usize),
    },
    #[error("missing map along cover ({0}, {1})")]
    MissingMap(usize, usize),
    #[error("composites from {0} to {1} disagree")]
    NotFunctorial(usize, usize),
    #[error("expected {expected} dimensions, got {got}")]
    DimensionCount { expected: usize, got: usize },
    #[error("the zero module has no projective cover")]
    ZeroModule,
    #[error("resolution did not terminate within {0} steps")]
    StepBoundExceeded(usize),
}

/// Covariant representation of a finite poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetRepresentation {
    poset: Poset,
    field: Field,
    dims: Vec<usize>,
    /// `dims[y] x dims[x]` matrix for every cover `(x, y)`.
    maps: BTreeMap<(usize, usize), Matrix>,
    /// Composite map for every comparable pair `x <= y`.
    full: BTreeMap<(usize, usize), Matrix>,
}

/// Elements ordered so that every element comes after everything below it.
fn linear_extension(p: &Poset) -> Vec<usize> {
    let m = p.len();
    let mut elems: Vec<usize> = (0..m).collect();
    elems.sort_by_key(|&j| ((0..m).filter(|&i| p.leq(i, j)).count(), j));
    elems
}

impl PosetRepresentation {
    /// Validates shapes and functoriality.
    pub fn new(
        poset: &Poset,
        field: Field,
        dims: Vec<usize>,
        maps: BTreeMap<(usize, usize), Matrix>,
    ) -> Result<Self, HomologyError> {
        let m = poset.len();
        if dims.len() != m {
            return Err(HomologyError::DimensionCount {
                expected: m,
                got: dims.len(),
            });
        }
        let covers = hasse(poset).covers().to_vec();
        for &(x, y) in maps.keys() {
            if x >= m || y >= m {
                return Err(HomologyError::UnknownElement(x.max(y)));
            }
            if !covers.contains(&(x, y)) {
                return Err(HomologyError::NotACover(x, y));
            }
        }
        for &(x, y) in &covers {
            let map = maps.get(&(x, y)).ok_or(HomologyError::MissingMap(x, y))?;
            if (map.rows(), map.cols()) != (dims[y], dims[x]) {
                return Err(HomologyError::BadShape {
                    x,
                    y,
                    got: (map.rows(), map.cols()),
                    want: (dims[y], dims[x]),
                });
            }
        }

        // Composites from each source, built along one cover below each target
        // and then checked against every other cover below it.
        let ext = linear_extension(poset);
        let mut full = BTreeMap::new();
        for &x in &ext {
            full.insert((x, x), Matrix::identity(field, dims[x]));
            for &z in &ext {
                if !poset.lt(x, z) {
                    continue;
                }
                let mut chosen: Option<Matrix> = None;
                for &(y, zz) in &covers {
                    if zz != z || !poset.leq(x, y) {
                        continue;
                    }
                    let composite = maps[&(y, z)].mul(&full[&(x, y)]);
                    match &chosen {
                        None => chosen = Some(composite),
                        Some(c) if *c == composite => {}
                        Some(_) => return Err(HomologyError::NotFunctorial(x, z)),
                    }
                }
                full.insert((x, z), chosen.expect("every strict pair passes through a cover"));
            }
        }
        Ok(PosetRepresentation {
            poset: poset.clone(),
            field,
            dims,
            maps,
            full,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dimension(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dimension() == 0
    }

    pub fn cover_map(&self, x: usize, y: usize) -> Option<&Matrix> {
        self.maps.get(&(x, y))
    }

    /// Structure map `M(x) -> M(y)` for `x <= y`.
    pub fn map_between(&self, x: usize, y: usize) -> Option<&Matrix> {
        self.full.get(&(x, y))
    }

    /// Dimension of the radical `sum over x < y of image(M(x) -> M(y))` at `y`.
    fn radical_generators(&self, y: usize) -> Matrix {
        let mut rad = Matrix::zeros(self.field, self.dims[y], 0);
        for (&(_, yy), map) in &self.maps {
            if yy == y {
                rad = rad.hcat(map);
            }
        }
        rad
    }

    /// `dim (M / rad M)(y)`.
    pub fn top_dimension(&self, y: usize) -> usize {
        self.dims[y] - self.radical_generators(y).rank()
    }
}

fn check_element(p: &Poset, x: usize) -> Result<(), HomologyError> {
    if x < p.len() {
        Ok(())
    } else {
        Err(HomologyError::UnknownElement(x))
    }
}

fn cover_maps_of_sum(p: &Poset, field: Field, labels: &[usize]) -> (Vec<usize>, BTreeMap<(usize, usize), Matrix>) {
    // Basis of (sum P_label)(z): the generators whose label is <= z, in order.
    let present = |z: usize| -> Vec<usize> { (0..labels.len()).filter(|&g| p.leq(labels[g], z)).collect() };
    let dims = (0..p.len()).map(|z| present(z).len()).collect();
    let mut maps = BTreeMap::new();
    for &(x, y) in hasse(p).covers() {
        let (from, to) = (present(x), present(y));
        let mut m = Matrix::zeros(field, to.len(), from.len());
        for (c, g) in from.iter().enumerate() {
            let r = to.iter().position(|h| h == g).expect("up-sets grow along covers");
            m.set(r, c, field.one());
        }
        maps.insert((x, y), m);
    }
    (dims, maps)
}

/// Direct sum of indecomposable projectives `P_label`, one per entry of `labels`.
pub fn projective_sum(p: &Poset, field: Field, labels: &[usize]) -> Result<PosetRepresentation, HomologyError> {
    for &x in labels {
        check_element(p, x)?;
    }
    let (dims, maps) = cover_maps_of_sum(p, field, labels);
    PosetRepresentation::new(p, field, dims, maps)
}

/// Indecomposable projective at `x`: `K` on `{y : x <= y}`, identity maps.
pub fn projective(p: &Poset, x: usize, field: Field) -> Result<PosetRepresentation, HomologyError> {
    projective_sum(p, field, &[x])
}

/// One-dimensional module concentrated at `x`.
pub fn simple(p: &Poset, x: usize, field: Field) -> Result<PosetRepresentation, HomologyError> {
    check_element(p, x)?;
    let dims: Vec<usize> = (0..p.len()).map(|y| usize::from(y == x)).collect();
    let maps = hasse(p)
        .covers()
        .iter()
        .map(|&(a, b)| ((a, b), Matrix::zeros(field, dims[b], dims[a])))
        .collect();
    PosetRepresentation::new(p, field, dims, maps)
}

/// Projective cover `sum P_label -> M` together with its kernel.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// Label of each generator of the cover.
    pub labels: Vec<usize>,
    pub cover: PosetRepresentation,
    /// `dims_M[z] x dims_cover[z]` surjection at every element.
    pub surjection: Vec<Matrix>,
    pub kernel: PosetRepresentation,
    /// Basis of the kernel inside the cover at every element.
    pub kernel_inclusion: Vec<Matrix>,
}

pub fn projective_cover(module: &PosetRepresentation) -> Result<ProjectiveCover, HomologyError> {
    if module.is_zero() {
        return Err(HomologyError::ZeroModule);
    }
    let p = module.poset();
    let field = module.field();
    let m = p.len();

    // Lift a basis of the top at each element to vectors of M.
    let mut labels = Vec::new();
    let mut generators: Vec<Matrix> = Vec::new();
    for y in linear_extension(p) {
        let rad = module.radical_generators(y);
        for k in rad.complement_coordinates() {
            let mut v = Matrix::zeros(field, module.dims[y], 1);
            v.set(k, 0, field.one());
            labels.push(y);
            generators.push(v);
        }
    }
    let cover = projective_sum(p, field, &labels)?;

    let mut surjection = Vec::with_capacity(m);
    let mut kernel_inclusion = Vec::with_capacity(m);
    for z in 0..m {
        let mut s = Matrix::zeros(field, module.dims[z], 0);
        for (g, &y) in labels.iter().enumerate() {
            if p.leq(y, z) {
                let image = module.map_between(y, z).expect("comparable").mul(&generators[g]);
                s = s.hcat(&image);
            }
        }
        debug_assert_eq!(s.rank(), module.dims[z], "cover must be surjective");
        kernel_inclusion.push(s.kernel());
        surjection.push(s);
    }

    let kdims: Vec<usize> = kernel_inclusion.iter().map(Matrix::cols).collect();
    let mut kmaps = BTreeMap::new();
    for &(x, y) in hasse(p).covers() {
        let along = cover.cover_map(x, y).expect("cover has all cover maps");
        let pushed = along.mul(&kernel_inclusion[x]);
        let coords = kernel_inclusion[y]
            .solve(&pushed)
            .expect("kernel is a subrepresentation");
        kmaps.insert((x, y), coords);
    }
    let kernel = PosetRepresentation::new(p, field, kdims, kmaps)?;

    Ok(ProjectiveCover {
        labels,
        cover,
        surjection,
        kernel,
        kernel_inclusion,
    })
}

/// One term `P_k` of a resolution with its differential into the previous
/// term (into the resolved module for `k = 0`).
#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub labels: Vec<usize>,
    pub module: PosetRepresentation,
    /// Per element, the matrix of `P_k(z) -> P_{k-1}(z)`.
    pub differential: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub target: PosetRepresentation,
    pub steps: Vec<ResolutionStep>,
}

impl Resolution {
    /// Projective dimension witnessed by this resolution.
    pub fn length(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    fn previous_dims(&self, k: usize) -> &[usize] {
        if k == 0 {
            self.target.dims()
        } else {
            self.steps[k - 1].module.dims()
        }
    }

    /// Exactness at every element: `d_0` onto the module, `d_k d_{k+1} = 0`,
    /// `rank d_k + rank d_{k+1} = dim P_k`, and the last differential injective.
    pub fn check_exact(&self) -> Result<(), String> {
        let m = self.target.poset().len();
        for z in 0..m {
            for (k, step) in self.steps.iter().enumerate() {
                let d = &step.differential[z];
                let rank = d.rank();
                if k == 0 && rank != self.target.dims()[z] {
                    return Err(format!("d_0 is not onto at {z}"));
                }
                if (d.rows(), d.cols()) != (self.previous_dims(k)[z], step.module.dims()[z]) {
                    return Err(format!("d_{k} has the wrong shape at {z}"));
                }
                let next_rank = match self.steps.get(k + 1) {
                    Some(next) => {
                        if !d.mul(&next.differential[z]).is_zero() {
                            return Err(format!("d_{k} d_{} != 0 at {z}", k + 1));
                        }
                        next.differential[z].rank()
                    }
                    None => 0,
                };
                if rank + next_rank != step.module.dims()[z] {
                    return Err(format!("homology at P_{k}({z}) is nonzero"));
                }
            }
        }
        Ok(())
    }

    /// Minimality: each differential `d_k`, `k >= 1`, maps generators into the
    /// radical of `P_{k-1}`, i.e. no generator at `y` hits a generator at `y`.
    pub fn check_minimal(&self) -> Result<(), String> {
        let p = self.target.poset();
        for k in 1..self.steps.len() {
            let (step, prev) = (&self.steps[k], &self.steps[k - 1]);
            for (g, &y) in step.labels.iter().enumerate() {
                let col = generator_column(p, &step.labels, g, y);
                let prev_present: Vec<usize> = (0..prev.labels.len()).filter(|&h| p.leq(prev.labels[h], y)).collect();
                for (r, &h) in prev_present.iter().enumerate() {
                    if prev.labels[h] == y && !step.differential[y].get(r, col).is_zero() {
                        return Err(format!("d_{k} is not radical at generator {g} (element {y})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Column index of generator `g` inside `(sum P_labels)(y)`.
fn generator_column(p: &Poset, labels: &[usize], g: usize, y: usize) -> usize {
    (0..g).filter(|&h| p.leq(labels[h], y)).count()
}

/// Minimal projective resolution by iterated projective covers, giving up after
/// `max_length` + 1 terms.
pub fn minimal_resolution(module: &PosetRepresentation, max_length: usize) -> Result<Resolution, HomologyError> {
    let mut steps: Vec<ResolutionStep> = Vec::new();
    let mut current = module.clone();
    // Inclusion of `current` into the previous projective term.
    let mut inclusion: Option<Vec<Matrix>> = None;
    while !current.is_zero() {
        if steps.len() > max_length {
            return Err(HomologyError::StepBoundExceeded(max_length));
        }
        let pc = projective_cover(&current)?;
        let differential = match &inclusion {
            None => pc.surjection.clone(),
            Some(inc) => inc.iter().zip(&pc.surjection).map(|(i, s)| i.mul(s)).collect(),
        };
        steps.push(ResolutionStep {
            labels: pc.labels.clone(),
            module: pc.cover.clone(),
            differential,
        });
        inclusion = Some(pc.kernel_inclusion);
        current = pc.kernel;
    }
    Ok(Resolution {
        target: module.clone(),
        steps,
    })
}

/// Minimal resolution of the simple module at `x`, bounded by the longest chain.
pub fn resolve_simple(p: &Poset, x: usize, field: Field) -> Result<Resolution, HomologyError> {
    minimal_resolution(&simple(p, x, field)?, p.longest_chain())
}

pub fn projective_dimension(p: &Poset, x: usize) -> Result<usize, HomologyError> {
    Ok(resolve_simple(p, x, Field::Rational)?.length())
}

/// Maximum projective dimension of the simple modules.
pub fn global_dimension(p: &Poset) -> Result<usize, HomologyError> {
    (0..p.len()).try_fold(0, |acc, x| Ok(acc.max(projective_dimension(p, x)?)))
}
