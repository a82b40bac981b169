//! End-to-end acceptance checks. Runs as a plain binary so that each
//! criterion prints one PASS/FAIL line; exits non-zero if any fails.
//! Every comparison is exact (tolerance 0).

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ringgroom::construct::{build, fixture, fixture_names, BuildRequest};
use ringgroom::design::*;
use ringgroom::formulas::{binom2, cost_two_period, mu3, triangle_lower_bound, wavecost_mon};
use ringgroom::model::complete_edges;
use ringgroom::oracle::{solve_min_cost, solve_min_triangles, Budget};
use ringgroom::{verify, Edge, Instance, Shape};

/// Wall-clock ceilings per criterion.
const FIXTURE_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_LIMIT: Duration = Duration::from_secs(60 * 60);
const SWEEP_LIMIT: Duration = Duration::from_secs(10 * 60);
const DESIGN_LIMIT: Duration = Duration::from_secs(5 * 60);

/// Node budget for the extended `n = 8` oracle runs.
const EXTENDED_NODES: u64 = 200_000_000;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn in_domain(n: u32, v: u32, cprime: u32) -> bool {
    cost_two_period(n, v, cprime).is_ok() && !(cprime == 3 && v == n)
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(format!("{out} in {took:.2?}"))
}

fn fixtures() -> Check {
    let names = fixture_names();
    for name in &names {
        let f = fixture(name).map_err(|e| format!("{name}: {e}"))?;
        let rep = verify(&f.decomposition);
        ensure(rep.valid, || format!("{name} invalid: {:?}", rep.violations))?;
        ensure(f.measured() == f.expected, || format!("{name}: measured {:?} expected {:?}", f.measured(), f.expected))?;
    }
    let pinned = [
        ("Ex1", 7, 4, 1, Some(21), None),
        ("Ex2", 7, 5, 2, Some(22), None),
        ("Ex3", 7, 5, 1, Some(26), None),
        ("C.MON(7+4,7;4,2)", 11, 7, 2, Some(55), None),
        ("C.ON(8,4)", 8, 0, 4, Some(28), Some(4)),
    ];
    for (name, n, v, cprime, cost, triangles) in pinned {
        let f = fixture(name).map_err(|e| format!("{name}: {e}"))?;
        let d = &f.decomposition;
        ensure(d.instance == Instance { n, v, cprime }, || format!("{name} has instance {:?}", d.instance))?;
        ensure(cost.is_none_or(|c| d.drop_cost() == c), || format!("{name} cost {}", d.drop_cost()))?;
        ensure(triangles.is_none_or(|t| d.count_triangles() == t), || format!("{name} has {} triangles", d.count_triangles()))?;
    }
    Ok(format!("{} fixtures valid, examples cost 21/22/26", names.len()))
}

fn oracle_costs() -> Check {
    let mut cells = 0;
    for n in 5..=8u32 {
        let budget = Budget { nodes: if n == 8 { EXTENDED_NODES } else { Budget::default().nodes }, max_n: 8 };
        for cprime in 1..=3 {
            for v in 0..=n {
                if !in_domain(n, v, cprime) {
                    continue;
                }
                let inst = Instance::new(n, v, cprime).map_err(|e| e.to_string())?;
                let r = solve_min_cost(inst, budget).map_err(|e| format!("({n},{v},{cprime}): {e}"))?;
                ensure(!r.time_limit_hit, || format!("({n},{v},{cprime}) budget exhausted"))?;
                ensure(verify(&r.witness).valid && r.witness.drop_cost() == r.optimum_cost, || {
                    format!("({n},{v},{cprime}) witness does not certify {}", r.optimum_cost)
                })?;
                let want = cost_two_period(n, v, cprime).expect("in domain") as usize;
                ensure(r.optimum_cost == want, || format!("({n},{v},{cprime}) oracle {} formula {want}", r.optimum_cost))?;
                cells += 1;
            }
        }
    }
    for (n, v, cprime, want) in [(7, 4, 2, 21), (7, 5, 2, 22), (7, 5, 1, 26), (4, 0, 4, 7)] {
        let r = solve_min_cost(Instance::new(n, v, cprime).expect("valid"), Budget::default()).map_err(|e| e.to_string())?;
        ensure(r.optimum_cost == want, || format!("({n},{v},{cprime}) oracle {} want {want}", r.optimum_cost))?;
    }
    Ok(format!("{cells} instances 5 <= n <= 8 match, examples 21/22/26 and K_4 = 7"))
}

fn build_checked(n: u32, v: u32, cprime: u32, mon: bool) -> std::result::Result<ringgroom::Decomposition, String> {
    let req = BuildRequest::new(n, v, cprime).map_err(|e| e.to_string())?.mon(mon);
    let d = build(&req).map_err(|e| format!("({n},{v},{cprime}) {e}"))?;
    let rep = verify(&d);
    ensure(rep.valid, || format!("({n},{v},{cprime}) invalid: {:?}", &rep.violations[..rep.violations.len().min(3)]))?;
    Ok(d)
}

fn cost_sweep() -> Check {
    let mut cells = 0;
    for cprime in 1..=3 {
        for n in 5..=40u32 {
            for v in (0..=n).filter(|&v| in_domain(n, v, cprime)) {
                let d = build_checked(n, v, cprime, false)?;
                let want = cost_two_period(n, v, cprime).expect("in domain") as usize;
                ensure(d.drop_cost() == want, || format!("({n},{v},{cprime}) cost {} want {want}", d.drop_cost()))?;
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} builds at formula cost"))
}

fn mon_sweep() -> Check {
    let mut cells = 0;
    for cprime in 1..=3 {
        for n in 5..=40u32 {
            for v in (0..=n).filter(|&v| in_domain(n, v, cprime)) {
                let d = build_checked(n, v, cprime, true)?;
                let want = cost_two_period(n, v, cprime).expect("in domain") as usize;
                ensure(d.drop_cost() == want, || format!("({n},{v},{cprime}) mon cost {}", d.drop_cost()))?;
                let wl = wavecost_mon(n, v, cprime).expect("in domain") as usize;
                ensure(d.wavecost() == wl, || format!("({n},{v},{cprime}) wavecost {} want {wl}", d.wavecost()))?;
                if cprime == 3 {
                    let t = d.count_triangles() as u64;
                    let tb = triangle_lower_bound(v, n - v);
                    let ceiling = (tb.l_ceil() + 3).max(3) as u64;
                    ensure(t % 4 == 3 * binom2(n as u64) % 4 && t <= ceiling, || {
                        format!("({n},{v},3) {t} triangles, ceiling {ceiling}")
                    })?;
                }
                cells += 1;
            }
        }
    }
    let d = build_checked(13, 11, 3, true)?;
    ensure(d.count_triangles() == 2, || format!("(v,w) = (11,2) has {} triangles", d.count_triangles()))?;
    let d = build_checked(9, 7, 3, true)?;
    ensure(d.wavecost() == 9, || format!("(v,w) = (7,2) uses {} wavelengths", d.wavecost()))?;
    Ok(format!("{cells} wavelength-minimal builds, (11,2) -> 2 triangles, (7,2) -> 9 wavelengths"))
}

fn oracle_triangles() -> Check {
    let mut cells = 0;
    for n in 5..=7u32 {
        for v in 0..n {
            let inst = Instance::new(n, v, 3).map_err(|e| e.to_string())?;
            let r = solve_min_triangles(inst, binom2(n as u64) as usize, Budget::default())
                .map_err(|e| format!("({n},{v}) {e}"))?;
            ensure(!r.time_limit_hit, || format!("({n},{v}) budget exhausted"))?;
            let got = r.optimum_triangles_at_cost.expect("set by the triangle search") as u64;
            ensure(verify(&r.witness).valid && r.witness.count_triangles() as u64 == got, || {
                format!("({n},{v}) witness does not certify {got} triangles")
            })?;
            let want = triangle_lower_bound(v, n - v).delta_min;
            ensure(got == want, || format!("({n},{v}) oracle {got} delta_min {want}"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} instances with n <= 7 match delta_min"))
}

/// Independent exact-cover check of a factor set against `K_m` minus `removed`.
fn factor_cover(m: u32, factors: &[Vec<Edge>], missing: &[Option<u32>], removed: &[Edge]) -> std::result::Result<(), String> {
    let mut seen: BTreeSet<Edge> = removed.iter().copied().collect();
    ensure(seen.len() == removed.len(), || format!("order {m}: removed edges repeat"))?;
    for (i, f) in factors.iter().enumerate() {
        let mut touched = BTreeSet::new();
        for e in f {
            ensure(e.0 < e.1 && e.1 < m, || format!("order {m}: bad edge {e}"))?;
            ensure(touched.insert(e.0) && touched.insert(e.1), || format!("order {m}: factor {i} is not a matching"))?;
            ensure(seen.insert(*e), || format!("order {m}: edge {e} covered twice"))?;
        }
        let uncovered: Vec<u32> = (0..m).filter(|x| !touched.contains(x)).collect();
        let ok = match missing[i] {
            None => uncovered.is_empty(),
            Some(x) => uncovered == [x],
        };
        ensure(ok, || format!("order {m}: factor {i} misses {uncovered:?}"))?;
    }
    ensure(seen.len() == complete_edges(m).len(), || format!("order {m}: {} of {} edges covered", seen.len(), complete_edges(m).len()))
}

fn random_pts(rng: &mut ChaCha8Rng) -> TripleSystem {
    let points = rng.gen_range(3..=15u32);
    let mut all: Vec<[u32; 3]> = Vec::new();
    for a in 0..points {
        for b in a + 1..points {
            for c in b + 1..points {
                all.push([a, b, c]);
            }
        }
    }
    all.shuffle(rng);
    let mut used = BTreeSet::new();
    let mut triples = Vec::new();
    for t in all {
        let es = [Edge::new(t[0], t[1]), Edge::new(t[0], t[2]), Edge::new(t[1], t[2])];
        if es.iter().all(|e| !used.contains(e)) && rng.gen_bool(0.7) {
            used.extend(es);
            triples.push(t);
        }
    }
    let leave = complete_edges(points).into_iter().filter(|e| !used.contains(e)).collect();
    TripleSystem { points, triples, leave }
}

fn design_kit() -> Check {
    for w in 4..=25u32 {
        let blocks = cocktail_partition(w).map_err(|e| format!("cocktail {w}: {e}"))?;
        let matching: BTreeSet<Edge> = (0..w / 2).map(|h| Edge::new(2 * h, 2 * h + 1)).collect();
        let mut got: Vec<Edge> = blocks.iter().flat_map(|b| b.edges.iter().copied()).collect();
        got.sort();
        let want: Vec<Edge> = complete_edges(w).into_iter().filter(|e| !matching.contains(e)).collect();
        ensure(got == want, || format!("cocktail {w}: wrong edge set"))?;
        let count = |s: Shape| blocks.iter().filter(|b| b.shape() == s).count();
        let all_zero_excess = blocks.iter().all(|b| b.shape().is_zero_excess());
        let census_ok = match w % 4 {
            3 => count(Shape::Triangle) == 2,
            _ => count(Shape::Triangle) == 0,
        };
        ensure(all_zero_excess && census_ok, || format!("cocktail {w}: census off"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in 0..1000 {
        let ts = random_pts(&mut rng);
        let h = headset(&ts).map_err(|e| format!("headset {k}: {e}"))?;
        ensure(h.heads.len() == ts.triples.len(), || format!("headset {k}: wrong length"))?;
        let r = ts.replication();
        for x in 0..ts.points {
            let o = ts.triples.iter().zip(&h.heads).filter(|(t, &hd)| hd == x && t.contains(&x)).count();
            let ri = r[x as usize];
            ensure(o == h.occurrences[x as usize] && o >= ri / 3 && o <= ri.div_ceil(3), || {
                format!("headset {k}: point {x} heads {o} of {ri}")
            })?;
        }
        ensure(ts.triples.iter().zip(&h.heads).all(|(t, hd)| t.contains(hd)), || format!("headset {k}: head outside triple"))?;
    }

    let mut generators = 0;
    for m in 2..=41u32 {
        let mut sets = Vec::new();
        if m % 2 == 0 {
            sets.push(one_factorization(m).map_err(|e| e.to_string())?);
            if m >= 4 {
                sets.push(hamiltonian_one_factorization(m).map_err(|e| e.to_string())?);
            }
            if let Ok(r) = removed_k4_graph(m) {
                sets.push(one_factorization_avoiding(m, &r, 0).map_err(|e| e.to_string())?);
            }
        } else if m >= 3 {
            for p in [NearPrescription::Rotational, NearPrescription::PairedLast, NearPrescription::CrossedMiddle] {
                sets.push(near_one_factorization(m, p).map_err(|e| e.to_string())?);
            }
            if m >= 7 {
                sets.push(near_one_factorization_minus_cycle(m, 0).map_err(|e| e.to_string())?);
            }
        }
        for fs in &sets {
            factor_cover(m, &fs.factors, &fs.missing_vertex, &fs.removed_subgraph)?;
        }
        generators += sets.len();
    }

    for n in 4..=40u32 {
        let d = build_mon_n4(n, None).map_err(|e| format!("mon4 {n}: {e}"))?;
        ensure(verify(&d).valid, || format!("mon4 {n}: invalid"))?;
        let t = match n {
            4 => 0,
            _ => [0, 0, 3, 1, 2, 2, 1, 3][(n % 8) as usize],
        };
        ensure(d.count_triangles() == t, || format!("mon4 {n}: {} triangles, want {t}", d.count_triangles()))?;
        ensure(d.wavecost() as u64 == (n as u64 * (n as u64 - 1)).div_ceil(8), || format!("mon4 {n}: wavecost {}", d.wavecost()))?;
    }
    Ok(format!("cocktail 4..=25, 1000 headsets, {generators} factor sets, mon4 4..=40"))
}

fn ratio_four_threshold() -> Check {
    let mut cells = 0;
    for v in 4..=40u32 {
        let mu = mu3(v).map_err(|e| e.to_string())?;
        for w in 1..=v {
            let n = (v + w) as u64;
            let meets = wavecost_mon(v + w, v, 3).map_err(|e| e.to_string())? == (n * (n - 1)).div_ceil(8);
            ensure(meets == (w as u64 >= mu), || format!("(v,w) = ({v},{w}): meets {meets}, mu3 {mu}"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} pairs agree with mu3"))
}

type Criterion = (&'static str, Duration, fn() -> Check);

fn main() {
    let criteria: [Criterion; 7] = [
        ("fixture verification", FIXTURE_LIMIT, fixtures),
        ("oracle equals formulas", ORACLE_LIMIT, oracle_costs),
        ("construction cost sweep", SWEEP_LIMIT, cost_sweep),
        ("wavelength-minimal sweep", SWEEP_LIMIT, mon_sweep),
        ("oracle confirms delta_min", ORACLE_LIMIT, oracle_triangles),
        ("design-kit properties", DESIGN_LIMIT, design_kit),
        ("ratio-4 threshold mu3", SWEEP_LIMIT, ratio_four_threshold),
    ];
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.into_iter().enumerate() {
        match timed(limit, check) {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg}", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
