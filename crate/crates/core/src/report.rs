//! Serializable reports behind the command-line subcommands.
//!
//! Every struct serializes its fields in declaration order, so the JSON key
//! order is stable across runs.

use serde::Serialize;

use crate::algebra::commuting_algebra_over;
use crate::field::{format_rational, Field};
use crate::graph::bitstrings;
use crate::homology::{resolve_simple, HomologyError};
use crate::oracle::{
    pattern_equivalence_report, vertex_nondegeneracy, GeneralCoefficientTable, OracleError,
    TruncatedQuotientReport,
};
use crate::quiver::Quiver;
use crate::skeleton::{hasse, idempotence_check, incidence_algebra, skeleton_iso_incidence, skeleton_over, Skeleton};

#[derive(Clone, Debug, Serialize)]
pub struct ArrowEntry {
    pub name: String,
    pub source: String,
    pub target: String,
    pub weight: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParseReport {
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowEntry>,
}

pub fn parse_report(q: &Quiver) -> ParseReport {
    ParseReport {
        name: q.name().to_string(),
        vertices: q.vertex_names().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowEntry {
                name: a.name.clone(),
                source: q.vertex_name(a.source).to_string(),
                target: q.vertex_name(a.target).to_string(),
                weight: format_rational(&a.weight()),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentsReport {
    pub components: Vec<Vec<String>>,
    pub order: Vec<String>,
}

pub fn components_report(q: &Quiver) -> ComponentsReport {
    let alg = commuting_algebra_over(q, Field::Rational);
    ComponentsReport {
        components: alg
            .partition()
            .components()
            .iter()
            .map(|c| c.iter().map(|&v| q.vertex_name(v).to_string()).collect())
            .collect(),
        order: alg.order().iter().map(|&v| q.vertex_name(v).to_string()).collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockformReport {
    pub field: String,
    pub order: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    pub block_sizes: Vec<usize>,
    pub component_pattern: Vec<String>,
    pub pattern: Vec<String>,
    pub total_dimension: usize,
}

pub fn blockform_report(q: &Quiver, field: Field) -> BlockformReport {
    let alg = commuting_algebra_over(q, field);
    let comps = alg.partition().components();
    BlockformReport {
        field: field.to_string(),
        order: alg.order().iter().map(|&v| q.vertex_name(v).to_string()).collect(),
        blocks: alg
            .block_components()
            .iter()
            .map(|&c| comps[c].iter().map(|&v| q.vertex_name(v).to_string()).collect())
            .collect(),
        block_sizes: alg.block_sizes().to_vec(),
        component_pattern: bitstrings(alg.block_pattern()),
        pattern: alg.pattern().to_bitstrings(),
        total_dimension: alg.total_dimension(),
    }
}

/// Names of the skeleton elements, one representative vertex each.
fn element_names(s: &Skeleton) -> Vec<String> {
    s.representatives()
        .iter()
        .map(|&v| s.quiver().vertex_name(v).to_string())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SkeletonReport {
    pub elements: Vec<String>,
    pub leq: Vec<String>,
    pub covers: Vec<(String, String)>,
    pub incidence_dimension: usize,
    pub longest_chain: usize,
}

pub fn skeleton_report(q: &Quiver, field: Field) -> SkeletonReport {
    let s = skeleton_over(q, field);
    let names = element_names(&s);
    SkeletonReport {
        leq: bitstrings(s.poset().relation()),
        covers: hasse(s.poset())
            .covers()
            .iter()
            .map(|&(x, y)| (names[x].clone(), names[y].clone()))
            .collect(),
        incidence_dimension: s.poset().comparable_pairs(),
        longest_chain: s.poset().longest_chain(),
        elements: names,
    }
}

/// Hasse diagram of the skeleton poset in DOT format.
pub fn skeleton_dot(q: &Quiver, field: Field) -> String {
    let s = skeleton_over(q, field);
    let names = element_names(&s);
    let mut out = format!("digraph {} {{\n", sanitize(&format!("{}_skeleton", q.name())));
    for n in &names {
        out.push_str(&format!("    {n};\n"));
    }
    for &(x, y) in hasse(s.poset()).covers() {
        out.push_str(&format!("    {} -> {};\n", names[x], names[y]));
    }
    out.push_str("}\n");
    out
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IncidenceReport {
    pub field: String,
    pub elements: Vec<String>,
    pub basis: Vec<(String, String)>,
    pub dimension: usize,
    pub isomorphic_to_skeleton: bool,
    pub products_checked: usize,
}

pub fn incidence_report(q: &Quiver, field: Field) -> IncidenceReport {
    let s = skeleton_over(q, field);
    let names = element_names(&s);
    let inc = incidence_algebra(s.poset(), field);
    let iso = skeleton_iso_incidence(&s);
    IncidenceReport {
        field: field.to_string(),
        basis: inc
            .basis()
            .iter()
            .map(|&(x, y)| (names[x].clone(), names[y].clone()))
            .collect(),
        dimension: inc.dimension(),
        isomorphic_to_skeleton: iso.is_ok(),
        products_checked: iso.map(|w| w.products_checked).unwrap_or(0),
        elements: names,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleDimension {
    pub element: String,
    pub projective_dimension: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GldimReport {
    pub field: String,
    pub simples: Vec<SimpleDimension>,
    pub global_dimension: usize,
    pub longest_chain: usize,
    pub bound: Status,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

/// Projective dimensions of the simple modules of the skeleton. Simples are
/// listed along a linear extension of the poset, bottom first.
pub fn gldim_report(q: &Quiver, field: Field) -> Result<GldimReport, HomologyError> {
    let s = skeleton_over(q, field);
    let names = element_names(&s);
    let p = s.poset();
    let mut elems: Vec<usize> = (0..p.len()).collect();
    elems.sort_by_key(|&j| ((0..p.len()).filter(|&i| p.leq(i, j)).count(), j));
    let mut simples = Vec::new();
    for x in elems {
        let res = resolve_simple(p, x, field)?;
        simples.push(SimpleDimension {
            element: names[x].clone(),
            projective_dimension: res.length(),
        });
    }
    let global_dimension = simples.iter().map(|s| s.projective_dimension).max().unwrap_or(0);
    let longest_chain = p.longest_chain();
    Ok(GldimReport {
        field: field.to_string(),
        simples,
        global_dimension,
        longest_chain,
        bound: Status::from_bool(global_dimension <= longest_chain),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyResult {
    pub property: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub quiver: String,
    pub field: String,
    pub truncation: usize,
    pub properties: Vec<PropertyResult>,
    pub pairs: Vec<TruncatedQuotientReport>,
    pub status: Status,
}

impl VerifyReport {
    /// One `PASS`/`FAIL` line per property.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for p in &self.properties {
            out.push_str(&format!("{} {}: {}\n", p.status.label(), p.property, p.detail));
        }
        out
    }
}

fn property(name: &str, ok: bool, detail: String) -> PropertyResult {
    PropertyResult {
        property: name.to_string(),
        status: Status::from_bool(ok),
        detail,
    }
}

/// Runs the whole invariant suite on one quiver. Oracle errors such as an
/// exceeded path cap are returned rather than reported as failures.
pub fn verify_report(q: &Quiver, field: Field, truncation: usize, cap: usize) -> Result<VerifyReport, OracleError> {
    let n = q.vertex_count();
    let alg = commuting_algebra_over(q, field);
    let mut properties = Vec::new();

    let dim = alg.total_dimension();
    properties.push(property("dimension_bound", dim <= n * n, format!("{dim} <= {}", n * n)));

    let block = alg.check_block_form();
    properties.push(property(
        "block_form",
        block.is_ok(),
        block.err().unwrap_or_else(|| format!("{} blocks", alg.block_sizes().len())),
    ));

    let eq = pattern_equivalence_report(q, truncation, field, cap)?;
    properties.push(property(
        "oracle_equivalence",
        eq.equivalent,
        if eq.equivalent {
            format!("{} pairs agree", eq.pairs.len())
        } else {
            format!("{} mismatched pairs", eq.mismatches.len())
        },
    ));

    let nondeg = vertex_nondegeneracy(q, &GeneralCoefficientTable::constant_one(q), truncation, field)?;
    properties.push(property(
        "vertex_nondegeneracy",
        nondeg,
        format!("{n} vertex idempotents checked"),
    ));

    let s = skeleton_over(q, field);
    let iso = skeleton_iso_incidence(&s);
    properties.push(property(
        "skeleton_iso",
        iso.is_ok(),
        match &iso {
            Ok(w) => format!("{} products checked", w.products_checked),
            Err(e) => e.to_string(),
        },
    ));

    let idem = idempotence_check(s.poset());
    properties.push(property("idempotence", idem, format!("{} elements", s.poset().len())));

    match gldim_report(q, field) {
        Ok(g) => properties.push(property(
            "gldim_bound",
            g.bound == Status::Pass,
            format!("gldim {} <= {}", g.global_dimension, g.longest_chain),
        )),
        Err(e) => properties.push(property("gldim_bound", false, e.to_string())),
    }

    let status = Status::from_bool(properties.iter().all(|p| p.status == Status::Pass));
    Ok(VerifyReport {
        quiver: q.name().to_string(),
        field: field.to_string(),
        truncation,
        properties,
        pairs: eq.pairs,
        status,
    })
}
