//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero when a
//! criterion fails, except those listed as known unattainable, which are
//! still evaluated and reported as FAIL with the reason.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use shannon_lattice::construction::{
    build_ab, build_xy, derive, random_identity_suite, verify_family, verify_perturbation, ConstructionParams,
};
use shannon_lattice::exact::{int, is_p0, pow_int, ratio, to_decimal, ExactMatrix, Scalar};
use shannon_lattice::graphs::{
    alpha_grp_exhaustive, build_quotient, circular_distance, lift_bound, ExplicitGraph, FractionGraphPower,
};
use shannon_lattice::lattice::{certify, lambda_inf_coefficient_box, lambda_inf_coset_scan, PAryLattice};
use shannon_lattice::limits::{convergence_table, delta};
use shannon_lattice::mis::{solve, Budget, MisResult};
use shannon_lattice::Caps;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
    /// Reason the literal statement cannot hold, when it cannot.
    known_unattainable: Option<&'static str>,
}

fn sweep() -> Vec<ConstructionParams> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for k in 1..=10 {
            for b in 1..=4u64 {
                for r in 0..=b {
                    for s in 0..=16 {
                        out.push(ConstructionParams::new(n, k, b, r, s).unwrap());
                    }
                }
            }
        }
    }
    out
}

fn m(rows: &[&[i64]]) -> ExactMatrix {
    ExactMatrix::from_i64_rows(rows).unwrap()
}

/// Pairwise adjacency in E_{p/q}^n, written out directly.
fn adjacent(u: &[u64], v: &[u64], p: u64, q: u64) -> bool {
    u != v && u.iter().zip(v).all(|(&x, &y)| x == y || circular_distance(x, y, p) < q)
}

fn pairwise_independent(vs: &[Vec<u64>], p: u64, q: u64) -> bool {
    (0..vs.len()).all(|i| (i + 1..vs.len()).all(|j| !adjacent(&vs[i], &vs[j], p, q)))
}

fn witness_ok(g: &ExplicitGraph, r: &MisResult) -> bool {
    let w = &r.witness;
    w.len() == r.size
        && w.iter().all(|&v| v < g.vertex_count())
        && w.windows(2).all(|x| x[0] < x[1])
        && g.edges().all(|(u, v)| !(w.binary_search(&u).is_ok() && w.binary_search(&v).is_ok()))
}

fn c1_small_construction() -> Outcome {
    let params = ConstructionParams::new(2, 1, 2, 1, 0).unwrap();
    let t = derive(&params).unwrap();
    let (a, b) = build_ab(&params).unwrap();
    let cert = certify(&a, &b, &t.p, &t.q, &Caps::default());
    let sub = cert.subgroup.as_ref().expect("enumerated");
    let elems = sub.elements();
    let checks = [
        ("A", a == m(&[&[2, 1], &[-1, 2]])),
        ("B", b == m(&[&[2, -1], &[1, 2]])),
        ("AB=5I", (&a * &b) == ExactMatrix::scalar(2, int(5))),
        ("detB=5", b.det() == int(5)),
        ("lambda=2", cert.lambda_inf == Some(BigInt::from(2))),
        ("|S|=5", elems.len() == 5),
        ("independent", cert.independent && pairwise_independent(&elems, 5, 2)),
        ("claim", cert.claim().as_deref() == Some("α_grp(E_{5/2}^⊠2) ≥ 5")),
        ("valid", cert.is_valid()),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    Outcome::new(failed.is_empty(), format!("S = {elems:?}; failed: {failed:?}"))
}

fn c2_family_sweep() -> Outcome {
    let caps = Caps { enumeration: 10_000, ..Caps::default() };
    let params = sweep();
    let bad: Vec<String> = params
        .par_iter()
        .filter_map(|p| match verify_family(p, &caps) {
            Ok(r) if r.is_valid() => None,
            Ok(r) => Some(format!("{p}: {:?}", r.checks.iter().find(|c| !c.status.is_ok()))),
            Err(e) => Some(format!("{p}: {e}")),
        })
        .collect();
    Outcome::new(
        bad.is_empty(),
        format!("{} tuples, {} not VALID {:?}", params.len(), bad.len(), bad.iter().take(3).collect::<Vec<_>>()),
    )
}

fn c3_closed_forms() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for p in sweep() {
        if p.b != 2 || p.r != 1 || p.s > 1 {
            continue;
        }
        let n = p.n;
        let two_n = pow_int(&BigInt::from(2), n);
        let t = derive(&p).unwrap();
        let ok = if p.s == 0 {
            let a = BigInt::from(p.k) * &two_n + 1;
            a == t.a && &t.p * &two_n == pow_int(&a, n) - pow_int(&a, n - 1)
        } else {
            let a = BigInt::from(p.k) * &two_n + 3;
            a == t.a && &t.p * &two_n * (&a - 2) == pow_int(&a, n + 1) - 3 * pow_int(&a, n) + &two_n
        };
        checked += 1;
        if !ok {
            bad.push(p);
        }
    }
    Outcome::new(bad.is_empty() && checked == 100, format!("{checked} tuples compared, mismatches {bad:?}"))
}

fn c4_subgroup_numbers() -> Outcome {
    let a = alpha_grp_exhaustive(5, 2, 1, 10_000).unwrap();
    let b = alpha_grp_exhaustive(10, 4, 1, 10_000).unwrap();
    Outcome::new(a == 1 && b == 2, format!("α_grp(E_5/2) = {a}, α_grp(E_10/4) = {b}"))
}

fn c5_mis_oracle() -> Outcome {
    let t = Instant::now();
    let g = FractionGraphPower::new(5, 2, 2).unwrap().materialize(1000).unwrap();
    let small = solve(&g, &Budget::default()).unwrap();
    let small_time = t.elapsed();
    let small_ok = small.size == 5 && small.optimal && witness_ok(&g, &small) && small_time < Duration::from_secs(1);

    let t = Instant::now();
    let g = FractionGraphPower::new(8, 3, 3).unwrap().materialize(1000).unwrap();
    let budget = Budget { max_nodes: u64::MAX, max_time: Duration::from_secs(600) };
    let big = solve(&g, &budget).unwrap();
    let big_ok = g.vertex_count() == 512 && big.size == 12 && big.optimal && witness_ok(&g, &big);
    Outcome::new(
        small_ok && big_ok,
        format!(
            "α(E_5/2^2) = {} in {:.3}s; α(E_8/3^3) = {} optimal={} nodes={} in {:.1}s",
            small.size,
            small_time.as_secs_f64(),
            big.size,
            big.optimal,
            big.nodes_explored,
            t.elapsed().as_secs_f64()
        ),
    )
}

fn c6_quotients() -> Outcome {
    let rows: [(u64, u64, [u64; 3], usize, usize); 5] = [
        (14, 3, [1, 2, 3], 6, 84),
        (17, 3, [1, 2, 4], 9, 153),
        (17, 4, [1, 2, 4], 4, 68),
        (19, 3, [1, 2, 3], 12, 228),
        (19, 5, [1, 2, 5], 2, 38),
    ];
    let mut details = Vec::new();
    let mut pass = true;
    for (p, q, gen, alpha, bound) in rows {
        let base = FractionGraphPower::new(p, q, 3).unwrap();
        let quotient = build_quotient(base, &[gen.to_vec()], 100_000).unwrap();
        let r = solve(&quotient.graph, &Budget { max_nodes: u64::MAX, max_time: Duration::from_secs(1800) }).unwrap();
        let lifted = lift_bound(&quotient, &r.witness);
        let members: Vec<Vec<u64>> = r.witness.iter().flat_map(|&c| quotient.coset_members(c)).collect();
        let direct = members.len() == bound && pairwise_independent(&members, p, q);
        let ok = r.optimal
            && witness_ok(&quotient.graph, &r)
            && r.size == alpha
            && lifted.as_ref().is_ok_and(|l| l.bound == bound && l.verified)
            && direct;
        pass &= ok;
        details.push(format!("{p}/{q}: {}·{} = {}{}", quotient.subgroup.len(), r.size, quotient.subgroup.len() * r.size, if ok { "" } else { " (mismatch)" }));
    }
    Outcome::new(pass, details.join("; "))
}

fn c7_perturbation() -> Outcome {
    let mut bad = Vec::new();
    for d in 3..=8 {
        for ell in 1..=3 {
            let r = verify_perturbation(d, ell, 20).unwrap();
            let four = ["product", "det", "integral", "p0"]
                .iter()
                .all(|n| r.checks.iter().any(|c| c.name == *n && c.status.is_ok()));
            if !(four && r.is_valid()) {
                bad.push((d, ell));
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("18 pairs, failing {bad:?}"))
}

fn c8_delta_bound() -> Outcome {
    let eligible: Vec<ConstructionParams> = sweep()
        .into_iter()
        .filter(shannon_lattice::limits::hypotheses_met)
        .collect();
    let bad: Vec<ConstructionParams> = eligible
        .par_iter()
        .filter(|p| !delta(p).unwrap().bound_holds())
        .copied()
        .collect();
    Outcome::new(bad.is_empty(), format!("{} tuples meet the hypotheses, {} exceed 6b²/n", eligible.len(), bad.len()))
}

fn c9_convergence() -> Outcome {
    let xs = [int(100), int(1000), int(10000)];
    let rows = convergence_table(&xs, &ratio(1, 2)).unwrap();
    let gaps: Vec<&Scalar> = rows.iter().map(|r| &r.gap).collect();
    let ns: Vec<u32> = rows.iter().map(|r| r.n_m).collect();
    let strictly = gaps.windows(2).all(|w| w[0] > w[1]);
    let nonincreasing = gaps.windows(2).all(|w| w[0] >= w[1]);
    let growing_n = ns.windows(2).all(|w| w[0] < w[1]);
    let bounds_shrink = rows.windows(2).all(|w| w[0].gap_bound > w[1].gap_bound);
    let within = rows.iter().all(|r| r.gap <= r.gap_bound);
    Outcome::new(
        strictly,
        format!(
            "gaps {:?} along n_m {ns:?}; strictly decreasing={strictly}, nonincreasing={nonincreasing}, n growing={growing_n}, gap bounds decreasing={bounds_shrink}, gaps within bounds={within}",
            gaps.iter().map(|g| to_decimal(g, 6)).collect::<Vec<_>>()
        ),
    )
}

fn random_p0(rng: &mut ChaCha8Rng) -> ExactMatrix {
    let n = rng.gen_range(1..=6);
    match rng.gen_range(0..4) {
        // Gram matrix
        0 => {
            let g = ExactMatrix::from_fn(n, |_, _| int(rng.gen_range(-3..=3)));
            &g.transpose() * &g
        }
        // triangular with nonnegative diagonal
        1 => ExactMatrix::from_fn(n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => int(rng.gen_range(-9..=9)),
            std::cmp::Ordering::Equal => int(rng.gen_range(0..=5)),
            std::cmp::Ordering::Greater => int(0),
        }),
        // row diagonally dominant with nonnegative diagonal
        2 => {
            let mut rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect()).collect();
            for (i, row) in rows.iter_mut().enumerate() {
                let off: i64 = row.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.abs()).sum();
                row[i] = off + rng.gen_range(0..=2);
            }
            ExactMatrix::from_fn(n, |i, j| int(rows[i][j]))
        }
        // X from the family
        _ => {
            let b = rng.gen_range(1..=4);
            let p = ConstructionParams::new(n as u32, rng.gen_range(1..=5), b, rng.gen_range(0..=b), rng.gen_range(0..=6)).unwrap();
            build_xy(&p).unwrap().0
        }
    }
}

fn unimodular(n: usize, rng: &mut ChaCha8Rng) -> ExactMatrix {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..8 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        match rng.gen_range(0..3) {
            0 if i != j => {
                let c = rng.gen_range(-2..=2);
                for row in u.iter_mut() {
                    row[i] += c * row[j];
                }
            }
            1 => {
                for row in u.iter_mut() {
                    row.swap(i, j);
                }
            }
            _ => {
                for row in u.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
    }
    ExactMatrix::from_fn(n, |i, j| int(u[i][j]))
}

fn c10_property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let suite = random_identity_suite(2024, 100);
    let identities_ok = suite.all_passed();

    // every principal submatrix of a P0 matrix is P0
    let mut closure_ok = true;
    for _ in 0..100 {
        let a = random_p0(&mut rng);
        let n = a.order();
        closure_ok &= is_p0(&a, 20).unwrap().is_p0;
        for mask in 1u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let sub = a.principal_submatrix(&subset).unwrap();
            closure_ok &= is_p0(&sub, 20).unwrap().is_p0;
        }
    }

    // λ∞ of the column lattice does not depend on the basis
    let mut lambda_ok = true;
    let mut lambda_cases = 0;
    while lambda_cases < 50 {
        let b = rng.gen_range(1..=3);
        let params = ConstructionParams::new(rng.gen_range(2..=4), rng.gen_range(1..=3), b, rng.gen_range(0..=b), rng.gen_range(0..=4)).unwrap();
        let t = derive(&params).unwrap();
        if t.p > BigInt::from(20_000) {
            continue;
        }
        lambda_cases += 1;
        let (a, bm) = build_ab(&params).unwrap();
        let u = unimodular(a.order(), &mut rng);
        let u_inv = u.inverse().unwrap();
        let a2 = &a * &u;
        let b2 = &u_inv * &bm;
        let l1 = PAryLattice::new(a, bm, t.p.clone()).unwrap();
        let l2 = PAryLattice::new(a2, b2, t.p.clone()).unwrap();
        let values = [
            BigInt::from(lambda_inf_coset_scan(&l1.subgroup(1_000_000).unwrap())),
            BigInt::from(lambda_inf_coset_scan(&l2.subgroup(1_000_000).unwrap())),
            lambda_inf_coefficient_box(&l1, 100_000_000).unwrap(),
            lambda_inf_coefficient_box(&l2, 100_000_000).unwrap(),
        ];
        lambda_ok &= values.iter().all(|v| v == &values[0]) && !values[0].is_zero() && values[0] >= BigInt::one();
    }

    // witnesses of every solver call are independent and of optimal size
    let mut mis_ok = true;
    for _ in 0..50 {
        let n = rng.gen_range(1..=14);
        let density = rng.gen_range(0.1..0.7);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(density))
            .collect();
        let g = ExplicitGraph::from_edges(n, &edges).unwrap();
        let r = solve(&g, &Budget::default()).unwrap();
        let brute = (0u32..1 << n)
            .filter(|mask| edges.iter().all(|&(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0))
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap();
        mis_ok &= witness_ok(&g, &r) && r.optimal && r.size == brute;
    }

    Outcome::new(
        identities_ok && closure_ok && lambda_ok && mis_ok,
        format!(
            "identities={identities_ok} (100 each), P0 closure={closure_ok} (100), λ∞ basis invariance={lambda_ok} (50), MIS witnesses={mis_ok} (50)"
        ),
    )
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "2x2 construction for 5/2", limit: Some(Duration::from_secs(1)), run: c1_small_construction, known_unattainable: None },
        Criterion { id: 2, name: "family sweep is VALID", limit: Some(Duration::from_secs(300)), run: c2_family_sweep, known_unattainable: None },
        Criterion { id: 3, name: "closed forms for b=2, r=1, s in {0,1}", limit: None, run: c3_closed_forms, known_unattainable: None },
        Criterion { id: 4, name: "subgroup independence numbers", limit: Some(Duration::from_secs(1)), run: c4_subgroup_numbers, known_unattainable: None },
        Criterion { id: 5, name: "MIS oracle", limit: Some(Duration::from_secs(601)), run: c5_mis_oracle, known_unattainable: None },
        Criterion { id: 6, name: "quotient bounds in dimension 3", limit: Some(Duration::from_secs(1800)), run: c6_quotients, known_unattainable: None },
        Criterion { id: 7, name: "perturbed pairs", limit: Some(Duration::from_secs(120)), run: c7_perturbation, known_unattainable: None },
        Criterion { id: 8, name: "gap bound 6b²/n", limit: Some(Duration::from_secs(60)), run: c8_delta_bound, known_unattainable: None },
        Criterion {
            id: 9,
            name: "certified gaps strictly decrease",
            limit: None,
            run: c9_convergence,
            known_unattainable: Some("integer targets give r = 0, so p^{1/n} = a/b = x and every certified gap is exactly 0"),
        },
        Criterion { id: 10, name: "property suites", limit: Some(Duration::from_secs(120)), run: c10_property_suites, known_unattainable: None },
    ];

    let mut unexpected = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = c.limit.is_none_or(|l| elapsed <= l);
        let pass = outcome.pass && in_time;
        let mut line = format!(
            "{} criterion {}: {} [{:.2}s] {}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            outcome.detail
        );
        if !in_time {
            line.push_str(&format!(" (over the {:?} limit)", c.limit.unwrap()));
        }
        if !pass {
            match c.known_unattainable {
                Some(reason) => line.push_str(&format!(" (known unattainable: {reason})")),
                None => unexpected += 1,
            }
        }
        println!("{line}");
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
