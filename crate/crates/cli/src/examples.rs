//! The built-in fixture table behind `taureg paper-examples`. Always runs
//! over the rationals on the embedded fixtures.

use anyhow::Result;
use serde_json::json;
use taureg_core::ar::{hierarchy_report, is_tau_regular, reduce_and_compare, Outcome, ReductionMode};
use taureg_core::fixtures::{alg_a_module, b0_module, c_module, s2_s3, Fixture};
use taureg_core::present::{additivity_scan, generic_rank};
use taureg_core::quiver::{annihilator, quotient_algebra};
use taureg_core::rep::{direct_sum, iso_test, power, proj_dim, projective, simple, syzygy};
use taureg_core::{Algebra, Ideal, ProjDecomp, ProjDim, Q};

use crate::commands::dims_str;
use crate::{out, Opts};

struct Entry {
    name: &'static str,
    expected: &'static str,
    got: String,
    pass: bool,
}

fn alg(f: Fixture) -> Result<Algebra<Q>> {
    Ok(f.algebra::<Q>()?)
}

fn entries(o: &Opts) -> Result<Vec<Entry>> {
    let (trials, seed) = (o.trials.max(1), o.seed);
    let mut out = Vec::new();

    let a = alg(Fixture::AlgA)?;
    let pd: Vec<Vec<usize>> = (0..3).map(|i| projective(&a, i).dims().to_vec()).collect();
    let shown: Vec<String> = pd.iter().map(|d| dims_str(d)).collect();
    out.push(Entry {
        name: "ALG-A structure",
        expected: "dim A = 12; P: (1,0,0) (3,1,0) (3,3,1)",
        got: format!("dim A = {}; P: {}", a.dim(), shown.join(" ")),
        pass: a.dim() == 12 && pd == vec![vec![1, 0, 0], vec![3, 1, 0], vec![3, 3, 1]],
    });

    let b = alg(Fixture::AlgB)?;
    out.push(Entry {
        name: "ALG-B structure",
        expected: "dim A = 5",
        got: format!("dim A = {}", b.dim()),
        pass: b.dim() == 5,
    });

    let g = generic_rank(&a, &ProjDecomp::single(3, 1), &ProjDecomp::single(3, 2), trials, seed, &[]);
    out.push(Entry {
        name: "r(P(2), P(3))",
        expected: "3, certified",
        got: format!("{}, certified = {}", g.value, g.certified),
        pass: g.value == 3 && g.certified,
    });

    let g2 = generic_rank(&a, &ProjDecomp::new(vec![0, 2, 0]), &ProjDecomp::new(vec![0, 0, 2]), trials, seed, &[]);
    out.push(Entry {
        name: "r(P(2)^2, P(3)^2)",
        expected: "8, certified",
        got: format!("{}, certified = {}", g2.value, g2.certified),
        pass: g2.value == 8 && g2.certified,
    });

    let scan = additivity_scan(&a, &ProjDecomp::single(3, 1), &ProjDecomp::single(3, 2), 2, trials, seed);
    out.push(Entry {
        name: "ALG-A additivity scan, t <= 2",
        expected: "violations [2]",
        got: format!("r = {:?}, violations {:?}", scan.r, scan.violations),
        pass: scan.violations == vec![2],
    });

    let m = alg_a_module(&a);
    let v1 = is_tau_regular(&a, &m, trials, seed);
    out.push(Entry {
        name: "ALG-A: M = Cok f tau-regular",
        expected: "yes",
        got: v1.outcome.to_string(),
        pass: v1.is_yes(),
    });
    let v2 = is_tau_regular(&a, &direct_sum(&a, &[m.clone(), m]), trials, seed);
    out.push(Entry {
        name: "ALG-A: M + M tau-regular",
        expected: "certified-no, witness rank 8",
        got: format!("{}, witness rank {}", v2.outcome, v2.witness_rank),
        pass: v2.outcome == Outcome::CertifiedNo && v2.witness_rank == 8,
    });

    let s = s2_s3(&b);
    let v = is_tau_regular(&b, &s, trials, seed);
    let pd_s = proj_dim(&b, &s, o.cap);
    let rigid = hierarchy_report(&b, &s, trials, seed).map(|h| h.tau_rigid);
    out.push(Entry {
        name: "ALG-B: S(2) + S(3)",
        expected: "tau-regular, pd 2, not tau-rigid",
        got: format!("{}, pd {pd_s}, tau-rigid {:?}", v.outcome, rigid.as_ref().ok()),
        pass: v.is_yes() && pd_s == ProjDim::Finite(2) && matches!(rigid, Ok(false)),
    });

    let b0 = alg(Fixture::AlgB0)?;
    let mb0 = b0_module(&b0);
    let (x, y) = (b0.arrow_index("a"), b0.arrow_index("b"));
    let ann_ok = match (x, y) {
        (Some(x), Some(y)) => annihilator(&b0, &mb0) == Ideal::generated(&b0, &[b0.path_element(&[x, y])]),
        _ => false,
    };
    let r = reduce_and_compare(&b0, &mb0, &ReductionMode::Annihilator, trials, seed, o.cap)?;
    out.push(Entry {
        name: "ALG-B0: P(2) + I(2) + S(3)",
        expected: "I_M = (ab), pd_A 1, pd_B 2, not tau_A-rigid, tau_A-regular, tau_B certified-no",
        got: format!(
            "I_M = (ab): {ann_ok}, pd_A {}, pd_B {}, tau_A-rigid {}, tau_A {}, tau_B {}",
            r.pd_a, r.pd_b, r.tau_rigid_a, r.tau_regular_a.outcome, r.tau_regular_b.outcome
        ),
        pass: ann_ok
            && r.pd_a == ProjDim::Finite(1)
            && r.pd_b == ProjDim::Finite(2)
            && !r.tau_rigid_a
            && r.tau_regular_a.is_yes()
            && r.tau_regular_b.outcome == Outcome::CertifiedNo,
    });

    let c = alg(Fixture::AlgC)?;
    let k = alg(Fixture::AlgK)?;
    let ideal = match c.arrow_index("a") {
        Some(i) => Ideal::generated(&c, &[c.arrow_element(i).clone()]),
        None => Ideal::zero(&c),
    };
    let (q, _) = quotient_algebra(&c, &ideal)?;
    let shape = |x: &Algebra<Q>| {
        let n = x.num_vertices();
        (0..n * n).map(|st| x.basis_between(st / n, st % n).len()).collect::<Vec<_>>()
    };
    out.push(Entry {
        name: "ALG-C/(a) is the Kronecker algebra",
        expected: "2 vertices, dim 4",
        got: format!("{} vertices, dim {}", q.num_vertices(), q.dim()),
        pass: q.num_vertices() == 2 && q.dim() == 4 && shape(&q) == shape(&k),
    });
    let n = c_module(&c);
    let r = reduce_and_compare(&c, &n, &ReductionMode::Ideal(ideal), trials, seed, o.cap)?;
    let pd_n = proj_dim(&c, &n, o.cap);
    let (s1, s2) = (simple(&c, 0), simple(&c, 1));
    let periodic = iso_test(&c, &syzygy(&c, &s1).0, &s2) && iso_test(&c, &syzygy(&c, &s2).0, &power(&c, &s1, 2));
    out.push(Entry {
        name: "ALG-C: S(1) + S(2)",
        expected: "tau_B-regular, tau_A certified-no, pd_A infinite",
        got: format!("tau_B {}, tau_A {}, pd_A {pd_n}, periodic {periodic}", r.tau_regular_b.outcome, r.tau_regular_a.outcome),
        pass: r.tau_regular_b.is_yes()
            && r.tau_regular_a.outcome == Outcome::CertifiedNo
            && matches!(pd_n, ProjDim::Infinite { .. })
            && periodic,
    });

    let mut worst = Vec::new();
    for (p1, p0) in [(vec![1, 0], vec![0, 1]), (vec![0, 1], vec![1, 0]), (vec![1, 1], vec![2, 1])] {
        let rep = additivity_scan(&k, &ProjDecomp::new(p1), &ProjDecomp::new(p0), o.tmax, trials, seed);
        worst.extend(rep.violations);
    }
    out.push(Entry {
        name: "ALG-K additivity scan",
        expected: "no violations",
        got: format!("violations {worst:?}"),
        pass: worst.is_empty(),
    });
    Ok(out)
}

pub fn run(o: &Opts) -> Result<u8> {
    let table = entries(o)?;
    let all = table.iter().all(|e| e.pass);
    if o.json {
        let rows: Vec<_> = table
            .iter()
            .map(|e| json!({ "name": e.name, "expected": e.expected, "got": e.got, "pass": e.pass }))
            .collect();
        let value = json!({ "field": "Q", "trials": o.trials.max(1), "seed": o.seed, "entries": rows, "all_pass": all });
        out(&serde_json::to_string_pretty(&value)?);
    } else {
        for e in &table {
            out(&format!("{} {}: expected {}; got {}", if e.pass { "PASS" } else { "FAIL" }, e.name, e.expected, e.got));
        }
        out(&format!("{}/{} passed", table.iter().filter(|e| e.pass).count(), table.len()));
    }
    Ok(if all { 0 } else { 1 })
}
