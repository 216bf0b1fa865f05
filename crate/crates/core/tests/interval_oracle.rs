//! Containment of exact results, checked against an FMA-based oracle that
//! recovers the rounding error of each float operation exactly.

use covrel::interval::{det_enclosure, imat_inverse, ArithOp, IBox, IMatrix, Interval};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{dyadic_interval, dyadic_point, exact_add, exact_div, exact_mul, holds, random_interval, sample};

const SCALAR_CASES: usize = 30_000;

#[test]
fn scalar_ops_contain_exact_results() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut checks = 0usize;
    for _ in 0..SCALAR_CASES {
        let (a, b) = (random_interval(&mut rng), random_interval(&mut rng));
        let (x, y) = (sample(&mut rng, a), sample(&mut rng, b));
        let (s, e) = exact_add(x, y);
        assert!(holds(a + b, s, e), "{a} + {b} misses {x} + {y}");
        let (d, e) = exact_add(x, -y);
        assert!(holds(a - b, d, e), "{a} - {b} misses {x} - {y}");
        let (p, e) = exact_mul(x, y);
        assert!(holds(a * b, p, e), "{a} * {b} misses {x} * {y}");
        let (q2, e) = exact_mul(x, x);
        assert!(holds(a.sqr(), q2, e), "{a}^2 misses {x}^2");
        let c = sample(&mut rng, b);
        let (sc, e) = exact_mul(x, c);
        assert!(holds(a.scale(c), sc, e), "{a} scaled by {c} misses {x}*{c}");
        checks += 5;
        match a.arith(b, ArithOp::Div) {
            Ok(r) => {
                assert!(!b.contains_zero());
                let (q, e) = exact_div(x, y);
                assert!(holds(r, q, e), "{a} / {b} misses {x} / {y}");
                checks += 1;
            }
            Err(_) => assert!(b.contains_zero()),
        }
    }
    assert!(checks >= 150_000, "{checks}");
}

#[test]
fn matrix_products_contain_point_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut checks = 0usize;
    for _ in 0..2_000 {
        let n = rng.random_range(1..=4);
        let a = IMatrix::from_fn(n, n, |_, _| dyadic_interval(&mut rng));
        let b = IMatrix::from_fn(n, n, |_, _| dyadic_interval(&mut rng));
        let v: IBox = (0..n).map(|_| dyadic_interval(&mut rng)).collect();
        let ab = a.matmul(&b).unwrap();
        let av = a.mul_box(&v).unwrap();
        for _ in 0..4 {
            let pa: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| dyadic_point(&mut rng, a[(i, j)])).collect()).collect();
            let pb: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| dyadic_point(&mut rng, b[(i, j)])).collect()).collect();
            let pv: Vec<f64> = (0..n).map(|i| dyadic_point(&mut rng, v[i])).collect();
            for i in 0..n {
                for j in 0..n {
                    let exact: f64 = (0..n).map(|k| pa[i][k] * pb[k][j]).sum();
                    assert!(ab[(i, j)].contains(exact));
                    checks += 1;
                }
                let exact: f64 = (0..n).map(|k| pa[i][k] * pv[k]).sum();
                assert!(av[i].contains(exact));
                checks += 1;
            }
        }
    }
    assert!(checks >= 40_000, "{checks}");
}

fn det_exact(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0] as i128;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] as i128 * det_exact(&minor)
        })
        .sum()
}

#[test]
fn determinants_and_inverses_of_integer_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut checks = 0usize;
    for _ in 0..3_000 {
        let n = rng.random_range(1..=5);
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(-9..=9)).collect()).collect();
        let rows: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        let im = IMatrix::from_rows(&rows).unwrap();
        let d = det_enclosure(&im).unwrap();
        assert!(d.contains(det_exact(&m) as f64), "det of {m:?}");
        checks += 1;
        if let Ok(inv) = imat_inverse(&im) {
            assert_ne!(det_exact(&m), 0);
            // M⁻¹ ∈ X implies I ∈ M·X and I ∈ X·M.
            assert!(im.matmul(&inv).unwrap().encloses_identity());
            assert!(inv.matmul(&im).unwrap().encloses_identity());
            checks += 2;
        }
    }
    assert!(checks >= 5_000, "{checks}");
}

fn iv_strategy() -> impl Strategy<Value = Interval> {
    (-1e6f64..1e6, 0f64..1e3).prop_map(|(a, w)| Interval::new(a, a + w))
}

proptest! {
    #[test]
    fn inclusion_isotone(a in iv_strategy(), b in iv_strategy(), t in 0f64..1.0, s in 0f64..1.0) {
        // Shrink both operands; results must shrink too.
        let sub = |x: Interval, f: f64| {
            let m = x.lo() + f * x.width();
            Interval::new(x.lo().max(m - x.width() / 4.0).min(m), m.min(x.hi()))
        };
        let (a2, b2) = (sub(a, t), sub(b, s));
        prop_assert!((a2 + b2).subset_of(a + b));
        prop_assert!((a2 - b2).subset_of(a - b));
        prop_assert!((a2 * b2).subset_of(a * b));
        prop_assert!(a2.sqr().subset_of(a.sqr()));
    }

    #[test]
    fn bisection_covers(a in iv_strategy()) {
        let (l, r) = a.bisect();
        prop_assert_eq!(l.lo(), a.lo());
        prop_assert_eq!(r.hi(), a.hi());
        prop_assert_eq!(l.hi(), r.lo());
        prop_assert_eq!(l.hull(r), a);
    }

    #[test]
    fn sqr_is_tighter_than_product(a in iv_strategy()) {
        prop_assert!(a.sqr().subset_of(a * a));
        prop_assert!(a.sqr().lo() >= 0.0);
    }

    #[test]
    fn box_bisection_partitions(v in prop::collection::vec(iv_strategy(), 1..5)) {
        let b: IBox = v.into_iter().collect();
        if let Ok((l, r)) = b.bisect() {
            prop_assert_eq!(l.hull(&r).unwrap(), b.clone());
            let k = b.widest_coord();
            prop_assert_eq!(l[k].hi(), r[k].lo());
        }
    }
}
