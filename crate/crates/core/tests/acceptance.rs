//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Criterion 1 runs the full campaign with the default settings.

use std::process::ExitCode;
use std::time::Instant;

use covrel::campaign::{build_paper_data, enumerate_words, prove_paper, ProofReport, SymmetricAutomaton};
use covrel::covering::{float_sweep, verify_cover, VerifyConfig};
use covrel::dynamics::{
    fixed_point_equations_residual, max_dist, reversibility_encloses_identity, reversibility_residual, LinearMap,
    MapSystem, QuadraticReversibleMap,
};
use covrel::hset::HSet;
use covrel::interval::{ArithOp, IBox, IMatrix, Interval};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{dyadic_interval, dyadic_point, exact_add, exact_div, exact_mul, holds, random_interval, sample};

const STATED_DEGREES: [i32; 6] = [1, -1, 1, -1, -1, -1];
const MAX_WALL_SECS: f64 = 3600.0;
const BOX_RATIO: (f64, f64) = (1e-2, 1e2);
const FIXED_POINT_TOL: f64 = 1e-10;
const EQUATION_TOL: f64 = 1e-9;
const PREIMAGE_TOL: f64 = 0.006;
const TARGET_TOL: f64 = 0.001;
const REVERSIBILITY_TOL: f64 = 1e-9;
const MIN_CONTAINMENT_CHECKS: usize = 100_000;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn criterion_1(report: &ProofReport) -> Outcome {
    for r in &report.relations {
        let c = &r.certificate;
        println!(
            "    {} -> {} ({}^{}): {:?}, degree {:?} (stated {}), {} boxes, depth {}, {:.1}s",
            c.source, c.target, c.map, c.iterates, c.status, c.degree, r.stated_degree, c.boxes, c.max_depth,
            c.wall_time_secs
        );
    }
    let degrees: Vec<Option<i32>> = report.relations.iter().map(|r| r.certificate.degree).collect();
    let expected: Vec<Option<i32>> = STATED_DEGREES.iter().copied().map(Some).collect();
    let t = &report.totals;
    let checks = [
        ("relations verified", report.relations_verified()),
        ("degrees", degrees == expected),
        ("symmetry", report.symmetry.iter().all(|s| s.symmetric)),
        ("disjointness", report.disjointness.verdict.is_disjoint()),
        ("fix disks", report.fix_disks.iter().all(|f| f.passed)),
        ("exit code 0", report.exit_code() == 0),
        ("wall time", t.wall_time_secs <= MAX_WALL_SECS),
        ("box ratio", (BOX_RATIO.0..=BOX_RATIO.1).contains(&t.box_ratio)),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    outcome(
        failed.is_empty(),
        format!(
            "degrees {:?}, {} boxes (ratio {:.3}), {:.1} min on {} threads{}",
            degrees.iter().map(|d| d.unwrap_or(0)).collect::<Vec<_>>(),
            t.boxes,
            t.box_ratio,
            t.wall_time_secs / 60.0,
            t.threads,
            if failed.is_empty() {
                String::new()
            } else {
                format!("; failed: {}", failed.join(", "))
            }
        ),
    )
}

fn criterion_2() -> Outcome {
    let d = build_paper_data().unwrap();
    let f = QuadraticReversibleMap::new();
    let mut worst_fix: f64 = 0.0;
    let mut worst_eq: f64 = 0.0;
    for p in [&d.p1, &d.p2] {
        worst_fix = worst_fix.max(max_dist(&f.eval_point(p), p));
        let (a, b) = fixed_point_equations_residual(p).unwrap();
        worst_eq = worst_eq.max(a.abs()).max(b.abs());
    }
    outcome(
        worst_fix < FIXED_POINT_TOL && worst_eq < EQUATION_TOL,
        format!("max |F(P) - P| = {worst_fix:.2e}, max equation residual = {worst_eq:.2e}"),
    )
}

fn criterion_3() -> Outcome {
    let d = build_paper_data().unwrap();
    let f = QuadraticReversibleMap::new();
    let q1 = &d.q[0];
    let pre = max_dist(&f.inverse().unwrap().eval_point(q1), &d.p1);
    let z = (0..10).fold(q1.clone(), |z, _| f.eval_point(&z));
    let tgt = max_dist(&z, &d.p2);
    outcome(
        pre < PREIMAGE_TOL && tgt < TARGET_TOL,
        format!("Q1 along {}: preimage residual {pre:.5}, 10-iterate residual {tgt:.5}", d.q1_choice.chosen),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0004);
    let worst = (0..10_000)
        .map(|_| {
            let z: Vec<f64> = (0..4).map(|_| rng.random_range(-5.0..=5.0)).collect();
            reversibility_residual(&z)
        })
        .fold(0.0, f64::max);
    let boxes_ok = (0..100)
        .filter(|_| {
            let b: IBox = (0..4)
                .map(|_| {
                    let a = rng.random_range(-5.0..5.0);
                    Interval::new(a, a + rng.random_range(0.0..1e-3))
                })
                .collect();
            reversibility_encloses_identity(&b)
        })
        .count();
    outcome(
        worst < REVERSIBILITY_TOL && boxes_ok == 100,
        format!("max point residual {worst:.2e} over 10^4 points, {boxes_ok}/100 boxes enclose the identity"),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0005);
    let (mut checks, mut violations) = (0usize, 0usize);
    let mut check = |ok: bool| {
        checks += 1;
        violations += usize::from(!ok);
    };
    for _ in 0..25_000 {
        let (a, b) = (random_interval(&mut rng), random_interval(&mut rng));
        let (x, y) = (sample(&mut rng, a), sample(&mut rng, b));
        let (p, e) = exact_add(x, y);
        check(holds(a + b, p, e));
        let (p, e) = exact_add(x, -y);
        check(holds(a - b, p, e));
        let (p, e) = exact_mul(x, y);
        check(holds(a * b, p, e));
        let (p, e) = exact_mul(x, x);
        check(holds(a.sqr(), p, e));
        if let Ok(q) = a.arith(b, ArithOp::Div) {
            let (p, e) = exact_div(x, y);
            check(holds(q, p, e));
        }
    }
    for _ in 0..1_000 {
        let n = rng.random_range(1..=4);
        let a = IMatrix::from_fn(n, n, |_, _| dyadic_interval(&mut rng));
        let b = IMatrix::from_fn(n, n, |_, _| dyadic_interval(&mut rng));
        let ab = a.matmul(&b).unwrap();
        let pa: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| dyadic_point(&mut rng, a[(i, j)])).collect()).collect();
        let pb: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| dyadic_point(&mut rng, b[(i, j)])).collect()).collect();
        for i in 0..n {
            for j in 0..n {
                check(ab[(i, j)].contains((0..n).map(|k| pa[i][k] * pb[k][j]).sum()));
            }
        }
    }
    let d = build_paper_data().unwrap();
    let mut inverses = Vec::new();
    for name in ["N1", "N2"] {
        let n = d.hset(name).unwrap();
        let (m, x) = (n.matrix(), n.inverse_matrix());
        let ok = m.matmul(x).unwrap().encloses_identity() && x.matmul(m).unwrap().encloses_identity();
        inverses.push(format!("{name} {}", if ok { "ok" } else { "bad" }));
        check(ok);
    }
    outcome(
        checks >= MIN_CONTAINMENT_CHECKS && violations == 0,
        format!("{checks} containment checks, {violations} violations; inverse residuals: {}", inverses.join(", ")),
    )
}

fn criterion_6() -> Outcome {
    let b = HSet::new("B", vec![0.0, 0.0], vec![vec![1.0, 0.0], vec![0.0, 1.0]], 1, 1).unwrap();
    let cfg = VerifyConfig {
        max_depth: 12,
        ..VerifyConfig::default()
    };
    let run = |diag: [f64; 2]| {
        let a = LinearMap::diagonal("A", &diag).unwrap();
        let c = verify_cover(&b, &a, 1, &b, &cfg).unwrap();
        let s = float_sweep(&b, &a, 1, &b, 2_001);
        let oracle = s.min_exit_unstable_norm() > 1.0 && s.max_boundary_stable_norm() < 1.0;
        (c, oracle)
    };
    let (plus, plus_oracle) = run([3.0, 1.0 / 3.0]);
    let (minus, minus_oracle) = run([-3.0, 1.0 / 3.0]);
    let (ident, ident_oracle) = run([1.0, 1.0]);
    let ok = plus.is_verified()
        && plus.degree == Some(1)
        && plus_oracle
        && minus.is_verified()
        && minus.degree == Some(-1)
        && minus_oracle
        && !ident.is_verified()
        && !ident_oracle;
    outcome(
        ok,
        format!(
            "diag(3,1/3): {:?} w={:?}; diag(-3,1/3): {:?} w={:?}; identity: {:?}; float oracle {}/{}/{}",
            plus.status, plus.degree, minus.status, minus.degree, ident.status, plus_oracle, minus_oracle, ident_oracle
        ),
    )
}

fn criterion_7(report: &ProofReport) -> Outcome {
    let counts: Vec<usize> = (1..=12).map(|l| enumerate_words(&report.blocks, l).len()).collect();
    let words_ok = counts.iter().enumerate().all(|(i, &c)| c == 1 << (i + 1));
    let a = SymmetricAutomaton;
    let rule_ok = |x: u8, y: u8| matches!((x, y), (0, 0) | (0, 1) | (1, 2) | (2, 3) | (3, 1));
    let end_ok = |x: u8| x == 0 || x == 2;
    let (mut rejected, mut wrong) = (0usize, 0usize);
    for len in 1..=8u32 {
        for code in 0..4u32.pow(len) {
            let w: Vec<u8> = (0..len).map(|i| (code / 4u32.pow(i) % 4) as u8).collect();
            let legal = end_ok(w[0]) && end_ok(w[w.len() - 1]) && w.windows(2).all(|p| rule_ok(p[0], p[1]));
            if !legal {
                rejected += 1;
            }
            if a.accepts(&w) != legal {
                wrong += 1;
            }
        }
    }
    outcome(
        words_ok && wrong == 0,
        format!(
            "word counts for L = 1..12: {counts:?}; automaton rejected {rejected} violating words, {wrong} misclassified"
        ),
    )
}

fn criterion_8(report: &ProofReport) -> Outcome {
    let lines: Vec<String> = report
        .cross_checks
        .iter()
        .map(|c| {
            format!(
                "{} <= {} derived w={:?}, direct {:?} w={:?}",
                c.derived.source, c.derived.target, c.derived.degree, c.direct.status, c.direct.degree
            )
        })
        .collect();
    let ok = !report.cross_checks.is_empty()
        && report
            .cross_checks
            .iter()
            .all(|c| c.direct.is_verified() && c.direct.degree.map(i32::abs) == c.derived.degree.map(i32::abs));
    outcome(ok, lines.join("; "))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cfg = VerifyConfig::default();
    println!("running the full campaign with default settings; this takes several minutes");
    let report = prove_paper(&cfg).expect("campaign runs");
    let results = [
        criterion_1(&report),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(&report),
        criterion_8(&report),
    ];
    for (i, r) in results.iter().enumerate() {
        println!("criterion {}: {}  {}", i + 1, if r.passed { "PASS" } else { "FAIL" }, r.detail);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
