//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;

use commalg::algebra::{
    commuting_algebra, quasi_commuting_algebra, quasi_structure_constant, CoefficientFunction,
};
use commalg::field::Field;
use commalg::graph::path_components;
use commalg::homology::{global_dimension, resolve_simple, Resolution};
use commalg::oracle::{
    truncated_hom_dimension, vertex_nondegeneracy, GeneralCoefficientTable, DEFAULT_PATH_CAP,
};
use commalg::quiver::enumerate_paths;
use commalg::random::{random_quiver, random_tree_quiver, random_weights, rng};
use commalg::skeleton::{end_hom_dims, hasse, idempotence_check, incidence_algebra, skeleton_iso_incidence};
use commalg::{skeleton, Poset, Quiver, VertexId};

use common::{fixture, is_zero_matrix, kronecker, matmul, rank, to_rationals, walk_counts, warshall};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pattern_rows(q: &Quiver) -> Vec<String> {
    commuting_algebra(q).pattern().to_bitstrings()
}

/// The skeleton is the `len`-chain with `len - 1` cover edges.
fn check_skeleton_chain(q: &Quiver, len: usize) -> Result<(), String> {
    let s = skeleton(q);
    ensure(*s.poset() == Poset::chain(len), || format!("skeleton is not the {len}-chain"))?;
    let covers = hasse(s.poset()).covers().len();
    ensure(covers + 1 == len, || format!("{covers} cover edges"))
}

fn criterion_1() -> Outcome {
    let q = fixture("two_blocks");
    let want = ["111111", "111111", "111111", "111111", "000011", "000011"];
    let alg = commuting_algebra(&q);
    let order: Vec<&str> = alg.order().iter().map(|&v| q.vertex_name(v)).collect();
    ensure(order == ["v1", "v2", "v3", "v4", "v5", "v6"], || format!("order {order:?}"))?;
    let got = alg.pattern().to_bitstrings();
    ensure(got == want, || format!("pattern {got:?}"))?;
    ensure(alg.block_sizes() == [4, 2], || format!("blocks {:?}", alg.block_sizes()))?;
    ensure(alg.total_dimension() == 28, || format!("dimension {}", alg.total_dimension()))?;
    check_skeleton_chain(&q, 2)?;
    let inc = incidence_algebra(skeleton(&q).poset(), Field::Rational);
    ensure(inc.dimension() == 3, || format!("incidence dimension {}", inc.dimension()))?;
    Ok("6x6 display, dimension 28, skeleton 2-chain, incidence dimension 3".into())
}

fn criterion_2() -> Outcome {
    let q = fixture("three_blocks");
    let want = ["111111", "111111", "111111", "111111", "000011", "000001"];
    let got = pattern_rows(&q);
    ensure(got == want, || format!("pattern {got:?}"))?;
    let dim = commuting_algebra(&q).total_dimension();
    ensure(dim == 27, || format!("dimension {dim}"))?;
    check_skeleton_chain(&q, 3)?;
    let s = skeleton(&q);
    let gl = global_dimension(s.poset()).map_err(|e| e.to_string())?;
    let chain = s.poset().longest_chain();
    ensure(gl == 1 && chain == 3, || format!("gldim {gl}, chain {chain}"))?;
    Ok("dimension 27, skeleton 3-chain, gldim 1 <= 3".into())
}

fn criterion_3() -> Outcome {
    let q1 = fixture("hexagon");
    let q2 = fixture("hexagon_chord");
    for q in [&q1, &q2] {
        let alg = commuting_algebra(q);
        ensure(alg.pattern().count_true() == 36, || format!("{}: pattern not full", q.name()))?;
        ensure(alg.total_dimension() == 36, || format!("{}: dimension", q.name()))?;
        ensure(skeleton(q).poset().len() == 1, || format!("{}: skeleton not a point", q.name()))?;
    }
    ensure(q1.arrow_count() == 6 && q2.arrow_count() == 7, || {
        format!("arrow counts {} and {}", q1.arrow_count(), q2.arrow_count())
    })?;
    Ok("both full 6x6 (dimension 36), point skeleton, 6 vs 7 arrows".into())
}

fn criterion_4() -> Outcome {
    for n in 1..=6 {
        let q = kronecker(n);
        let got = pattern_rows(&q);
        ensure(got == ["11", "01"], || format!("n = {n}: pattern {got:?}"))?;
        let dim = commuting_algebra(&q).total_dimension();
        ensure(dim == 3, || format!("n = {n}: dimension {dim}"))?;
        check_skeleton_chain(&q, 2).map_err(|e| format!("n = {n}: {e}"))?;
    }
    Ok("n = 1..6: [[K,K],[0,K]], dimension 3, 2-chain".into())
}

fn criterion_5() -> Outcome {
    for n in 2..=12 {
        let q = common::cycle(n);
        let dim = commuting_algebra(&q).total_dimension();
        ensure(dim == n * n, || format!("n = {n}: dimension {dim}"))?;
        let s = skeleton(&q);
        ensure(s.poset().len() == 1, || format!("n = {n}: skeleton size {}", s.poset().len()))?;
        let gl = global_dimension(s.poset()).map_err(|e| e.to_string())?;
        ensure(gl == 0, || format!("n = {n}: gldim {gl}"))?;
    }
    Ok("n = 2..12: dimension n^2, point skeleton, gldim 0".into())
}

fn criterion_6() -> Outcome {
    let mut r = rng(0x7_7);
    for t in 0..50 {
        let n = r.gen_range(1..=10);
        let q = random_tree_quiver(&mut r, n);
        let alg = commuting_algebra(&q);
        let reach = warshall(&q);
        for v in q.vertex_ids() {
            for w in q.vertex_ids() {
                ensure(alg.pattern().reaches(v, w) == reach[v.0][w.0], || format!("tree {t}: pattern at ({}, {})", v.0, w.0))?;
            }
        }
        let part = path_components(&q);
        ensure(part.sizes().iter().all(|&s| s == 1), || format!("tree {t}: nontrivial component"))?;
        let hq = hasse(skeleton(&q).poset()).default_quiver();
        ensure(hq.vertex_count() == n, || format!("tree {t}: Hasse quiver has {} vertices", hq.vertex_count()))?;
    }
    Ok("50 trees: pattern = reachability, singleton components".into())
}

fn criterion_7() -> Outcome {
    let mut r = rng(0x5eed_0007);
    for t in 0..500 {
        let n = r.gen_range(1..=10);
        let k = r.gen_range(0..=25);
        let q = random_quiver(&mut r, n, k);
        let fail = |what: &str| format!("quiver {t} (n = {n}, {k} arrows): {what}");
        let alg = commuting_algebra(&q);
        let reach = warshall(&q);

        // (a)
        ensure(alg.total_dimension() <= n * n, || fail("dimension exceeds n^2"))?;

        // (b) block shape, plus antisymmetry between components from the reference closure.
        alg.check_block_form().map_err(|e| fail(&e))?;
        let part = path_components(&q);
        for v in 0..n {
            for w in 0..n {
                let same = part.component_of(VertexId(v)) == part.component_of(VertexId(w));
                ensure(same == (reach[v][w] && reach[w][v]), || fail("components disagree with mutual reachability"))?;
                ensure(alg.pattern().reaches(VertexId(v), VertexId(w)) == reach[v][w], || fail("pattern disagrees with reachability"))?;
            }
        }
        let pos: Vec<usize> = (0..n).map(|v| alg.pattern().position_of(VertexId(v))).collect();
        for v in 0..n {
            for w in 0..n {
                if reach[v][w] && !reach[w][v] {
                    ensure(pos[v] < pos[w], || fail("consistent order is not upper triangular"))?;
                }
            }
        }

        // (c) matrix units: e_vw e_xy = [w = x] e_vy, and associativity of random elements.
        for v in 0..n {
            for w in (0..n).filter(|&w| reach[v][w]) {
                let a = alg.basis_element(VertexId(v), VertexId(w)).map_err(|e| fail(&e.to_string()))?;
                for x in 0..n {
                    for y in (0..n).filter(|&y| reach[x][y]) {
                        let b = alg.basis_element(VertexId(x), VertexId(y)).map_err(|e| fail(&e.to_string()))?;
                        let prod = alg.multiply(&a, &b).map_err(|e| fail(&e.to_string()))?;
                        let want = if w == x {
                            alg.basis_element(VertexId(v), VertexId(y)).map_err(|e| fail(&e.to_string()))?
                        } else {
                            alg.zero()
                        };
                        ensure(prod == want, || fail("matrix-unit product"))?;
                    }
                }
            }
        }
        let random_element = |r: &mut rand_chacha::ChaCha8Rng| {
            let mut entries = Vec::new();
            for v in 0..n {
                for w in (0..n).filter(|&w| reach[v][w]) {
                    if r.gen_bool(0.5) {
                        entries.push(((VertexId(v), VertexId(w)), Field::Rational.from_int(r.gen_range(-3..=3))));
                    }
                }
            }
            alg.element(entries)
        };
        let x = random_element(&mut r).map_err(|e| fail(&e.to_string()))?;
        let y = random_element(&mut r).map_err(|e| fail(&e.to_string()))?;
        let z = random_element(&mut r).map_err(|e| fail(&e.to_string()))?;
        let m = |a, b| alg.multiply(a, b).map_err(|e| fail(&e.to_string()));
        let (xy, yz) = (m(&x, &y)?, m(&y, &z)?);
        ensure(m(&xy, &z)? == m(&x, &yz)?, || fail("associativity"))?;
        let dense = |e: &commalg::algebra::AlgebraElement| {
            let mut d = vec![vec![Field::Rational.zero(); n]; n];
            for (&(v, w), s) in e.entries() {
                d[v][w] = s.clone();
            }
            d
        };
        let (dx, dy, dxy) = (dense(&x), dense(&y), dense(&xy));
        for i in 0..n {
            for j in 0..n {
                let mut acc = Field::Rational.zero();
                for l in 0..n {
                    acc = &acc + &(&dx[i][l] * &dy[l][j]);
                }
                ensure(acc == dxy[i][j], || fail("product disagrees with dense matrix product"))?;
            }
        }

        // (d) skeleton and incidence algebra.
        let s = skeleton(&q);
        let witness = skeleton_iso_incidence(&s).map_err(|e| fail(&e.to_string()))?;
        let inc_dim = s.poset().comparable_pairs();
        ensure(witness.products_checked == inc_dim * inc_dim, || fail("not every product checked"))?;

        // (e)
        ensure(idempotence_check(s.poset()), || fail("idempotence"))?;

        // (f)
        let gl = global_dimension(s.poset()).map_err(|e| fail(&e.to_string()))?;
        ensure(gl <= s.poset().longest_chain(), || fail("gldim exceeds the longest chain"))?;

        // (g) Hom dimensions between representative projectives.
        let reps = s.representatives();
        for i in 0..reps.len() {
            for j in 0..reps.len() {
                let want = usize::from(reach[reps[i].0][reps[j].0]);
                ensure(end_hom_dims(&s, i, j) == want, || fail("end_hom_dims"))?;
                ensure(s.poset().leq(i, j) == (want == 1), || fail("skeleton order"))?;
            }
        }
    }
    Ok("500 random quivers: (a)-(g) hold".into())
}

/// Random quivers with `n <= 7` whose path counts up to length `n + 2` stay
/// within the oracle's path cap, judged by adjacency-matrix walk counts.
fn oracle_quivers(seed: u64, count: usize) -> (Vec<Quiver>, usize) {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut resampled = 0;
    while out.len() < count {
        let n = r.gen_range(1..=7);
        let k = r.gen_range(0..=n + 3);
        let q = random_quiver(&mut r, n, k);
        let within_cap = walk_counts(&q, n + 2)
            .iter()
            .flatten()
            .all(|&c| c <= DEFAULT_PATH_CAP as u128);
        if within_cap {
            out.push(q);
        } else {
            resampled += 1;
        }
    }
    (out, resampled)
}

fn criterion_8() -> Outcome {
    let f = |q: &Quiver| GeneralCoefficientTable::constant_one(q);
    let (quivers, resampled) = oracle_quivers(0x5eed_0008, 200);
    for (t, q) in quivers.iter().enumerate() {
        let n = q.vertex_count();
        let l = n + 2;
        let reach = warshall(q);
        let table = f(q);
        for v in q.vertex_ids() {
            for w in q.vertex_ids() {
                let rep = truncated_hom_dimension(q, &table, v, w, l, Field::Rational, DEFAULT_PATH_CAP)
                    .map_err(|e| format!("quiver {t}: {e}"))?;
                ensure(rep.dimension == usize::from(reach[v.0][w.0]), || {
                    format!("quiver {t}: oracle dimension {} at ({}, {})", rep.dimension, v.0, w.0)
                })?;
                ensure(rep.certified, || format!("quiver {t}: uncertified at ({}, {})", v.0, w.0))?;
            }
        }
        let nondeg = vertex_nondegeneracy(q, &table, l, Field::Rational).map_err(|e| format!("quiver {t}: {e}"))?;
        ensure(nondeg, || format!("quiver {t}: a vertex idempotent vanishes"))?;
    }
    Ok(format!("200 random quivers: oracle = reachability, vertices nondegenerate ({resampled} over the path cap resampled)"))
}

fn criterion_9() -> Outcome {
    let mut wr = rng(0x5eed_0009);
    let (quivers, resampled) = oracle_quivers(0x5eed_0019, 200);
    for (t, q) in quivers.iter().enumerate() {
        let n = q.vertex_count();
        let l = n + 2;
        let weights = random_weights(&mut wr, q.arrow_count());
        let weighted = GeneralCoefficientTable::multiplicative(q, weights.clone()).map_err(|e| e.to_string())?;
        let plain = GeneralCoefficientTable::constant_one(q);
        for v in q.vertex_ids() {
            for w in q.vertex_ids() {
                let a = truncated_hom_dimension(q, &weighted, v, w, l, Field::Rational, DEFAULT_PATH_CAP)
                    .map_err(|e| format!("quiver {t}: {e}"))?;
                let b = truncated_hom_dimension(q, &plain, v, w, l, Field::Rational, DEFAULT_PATH_CAP)
                    .map_err(|e| format!("quiver {t}: {e}"))?;
                ensure(a.dimension == b.dimension, || format!("quiver {t}: weighted dimension differs at ({}, {})", v.0, w.0))?;
            }
        }
        let cf = CoefficientFunction::new(q, weights).map_err(|e| e.to_string())?;
        let (alg, basis) = quasi_commuting_algebra(q, &cf, Field::Rational).map_err(|e| e.to_string())?;
        ensure(alg.pattern().rows() == commuting_algebra(q).pattern().rows(), || format!("quiver {t}: pattern changed"))?;
        // Structure constants on all composable pairs of short paths.
        for v in q.vertex_ids() {
            for w in q.vertex_ids() {
                for p1 in enumerate_paths(q, v, w, 2) {
                    for x in q.vertex_ids() {
                        for p2 in enumerate_paths(q, w, x, 2) {
                            let c = quasi_structure_constant(&cf, q, &p1, &p2).map_err(|e| e.to_string())?;
                            ensure(c == common::one(), || format!("quiver {t}: structure constant {c}"))?;
                        }
                    }
                }
            }
        }
        ensure(basis.representatives.len() == alg.total_dimension(), || format!("quiver {t}: normalized basis size"))?;
    }
    Ok(format!("200 random weighted quivers: dimensions match f = 1, structure constants 1 ({resampled} over the path cap resampled)"))
}

/// Exactness and minimality from raw matrices, without the library's checks.
fn audit_resolution(p: &Poset, res: &Resolution) -> Result<(), String> {
    let m = p.len();
    let target = res.target.dims();
    for z in 0..m {
        let mut euler: i64 = 0;
        for (k, step) in res.steps.iter().enumerate() {
            let dim = step.module.dims()[z];
            euler += if k % 2 == 0 { dim as i64 } else { -(dim as i64) };
            let d = to_rationals(&step.differential[z]);
            let rk = if dim == 0 { 0 } else { rank(&d) };
            if k == 0 {
                ensure(rk == target[z], || format!("d_0 not onto at {z}"))?;
            }
            let next_rk = match res.steps.get(k + 1) {
                Some(next) => {
                    let nd = to_rationals(&next.differential[z]);
                    let ndim = next.module.dims()[z];
                    if dim > 0 && ndim > 0 {
                        let prev = if k == 0 { target[z] } else { res.steps[k - 1].module.dims()[z] };
                        if prev > 0 {
                            ensure(is_zero_matrix(&matmul(&d, &nd, dim, ndim)), || format!("d_{k} d_{} != 0 at {z}", k + 1))?;
                        }
                        rank(&nd)
                    } else {
                        0
                    }
                }
                None => 0,
            };
            ensure(rk + next_rk == dim, || format!("homology at P_{k}({z})"))?;
        }
        ensure(euler == target[z] as i64, || format!("Euler characteristic at {z}"))?;
    }
    // Minimal: no generator of P_k at y maps onto a generator of P_{k-1} at y.
    for k in 1..res.steps.len() {
        let (cur, prev) = (&res.steps[k], &res.steps[k - 1]);
        for y in 0..m {
            let cols: Vec<usize> = (0..cur.labels.len()).filter(|&g| p.leq(cur.labels[g], y)).collect();
            let rows: Vec<usize> = (0..prev.labels.len()).filter(|&g| p.leq(prev.labels[g], y)).collect();
            let d = to_rationals(&cur.differential[y]);
            for (c, &g) in cols.iter().enumerate() {
                for (r, &h) in rows.iter().enumerate() {
                    if cur.labels[g] == y && prev.labels[h] == y {
                        ensure(d[r][c] == common::rat(0), || format!("d_{k} not radical at {y}"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let cases = [
        ("point", Poset::chain(1), 0),
        ("3-chain", Poset::chain(3), 1),
        ("diamond", Poset::diamond(), 2),
    ];
    for (name, p, want) in cases {
        let mut gl = 0;
        for x in 0..p.len() {
            let res = resolve_simple(&p, x, Field::Rational).map_err(|e| format!("{name}: {e}"))?;
            audit_resolution(&p, &res).map_err(|e| format!("{name}, simple {x}: {e}"))?;
            gl = gl.max(res.length());
        }
        ensure(gl == want, || format!("{name}: gldim {gl}, expected {want}"))?;
        let lib = global_dimension(&p).map_err(|e| e.to_string())?;
        ensure(lib == want, || format!("{name}: global_dimension {lib}"))?;
    }
    let diamond = resolve_simple(&Poset::diamond(), 0, Field::Rational).map_err(|e| e.to_string())?;
    let labels: Vec<Vec<usize>> = diamond.steps.iter().map(|s| s.labels.clone()).collect();
    ensure(labels == vec![vec![0], vec![1, 2], vec![3]], || format!("diamond resolution {labels:?}"))?;
    Ok("gldim point 0, 3-chain 1, diamond 2; resolutions exact and minimal".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 10] = [
        ("1 two-block quiver", criterion_1, Some(Duration::from_secs(1))),
        ("2 three-block quiver", criterion_2, Some(Duration::from_secs(1))),
        ("3 hexagon with and without chord", criterion_3, Some(Duration::from_secs(1))),
        ("4 Kronecker quivers", criterion_4, None),
        ("5 cycles", criterion_5, None),
        ("6 random trees", criterion_6, None),
        ("7 property suite", criterion_7, Some(Duration::from_secs(60))),
        ("8 oracle equivalence", criterion_8, Some(Duration::from_secs(120))),
        ("9 quasi-commuting invariance", criterion_9, None),
        ("10 homology desk checks", criterion_10, Some(Duration::from_secs(1))),
    ];
    let mut failures = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("PASS [{name}] {msg} ({elapsed:.2?})"),
            Err(msg) => {
                failures += 1;
                println!("FAIL [{name}] {msg} ({elapsed:.2?})");
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
