mod common;

use credal::lp::{
    min_ratio, solve_lp, Affine, Constraint, FractionalProgram, LinearProgram, LpStatus, Relation,
};
use proptest::prelude::*;
use rand::Rng;

use common::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() }
}

fn simplex_row(n: usize) -> Constraint {
    Constraint::new(vec![1.0; n], Relation::Eq, 1.0)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn strong_duality_on_feasible_programs(seed in any::<u64>(), n in 1usize..6, m in 1usize..6) {
        let mut r = rng(seed);
        // A known non-negative point keeps the program feasible; a positive
        // cost keeps it bounded.
        let x0: Vec<f64> = (0..n).map(|_| r.gen_range(0.0..2.0)).collect();
        let cost: Vec<f64> = (0..n).map(|_| r.gen_range(0.1..3.0)).collect();
        let mut lp = LinearProgram::minimize(cost.clone()).unwrap();
        for _ in 0..m {
            let a: Vec<f64> = (0..n).map(|_| r.gen_range(-2.0..2.0)).collect();
            let lhs: f64 = a.iter().zip(&x0).map(|(u, v)| u * v).sum();
            let c = match r.gen_range(0..3) {
                0 => Constraint::new(a, Relation::Ge, lhs - r.gen_range(0.0..1.0)),
                1 => Constraint::new(a, Relation::Le, lhs + r.gen_range(0.0..1.0)),
                _ => Constraint::new(a, Relation::Eq, lhs),
            };
            lp.push(c).unwrap();
        }
        let sol = solve_lp(&lp);
        prop_assert_eq!(sol.status, LpStatus::Optimal);
        for c in lp.constraints() {
            prop_assert!(c.relation.holds(c.lhs(&sol.x), c.rhs, 1e-7));
        }
        prop_assert!(sol.x.iter().all(|&v| v >= -1e-9));
        let dual_objective: f64 = lp.constraints().iter().zip(&sol.duals).map(|(c, y)| c.rhs * y).sum();
        prop_assert!((dual_objective - sol.objective).abs() <= 1e-7 * (1.0 + sol.objective.abs()));
        for (j, cj) in cost.iter().enumerate() {
            let reduced = cj - lp.constraints().iter().zip(&sol.duals).map(|(c, y)| c.coeffs[j] * y).sum::<f64>();
            prop_assert!(reduced >= -1e-7, "reduced cost {reduced}");
        }
        for (c, y) in lp.constraints().iter().zip(&sol.duals) {
            match c.relation {
                Relation::Ge => prop_assert!(*y >= -1e-9),
                Relation::Le => prop_assert!(*y <= 1e-9),
                Relation::Eq => {}
            }
        }
    }

    #[test]
    fn ratio_over_the_simplex_is_the_best_vertex(seed in any::<u64>(), n in 2usize..7) {
        let mut r = rng(seed);
        let a: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..3.0)).collect();
        let b: Vec<f64> = (0..n).map(|_| r.gen_range(0.1..3.0)).collect();
        let fp = FractionalProgram {
            numerator: Affine::linear(a.clone()),
            denominator: Affine::linear(b.clone()),
            constraints: vec![simplex_row(n)],
        };
        let opt = min_ratio(&fp).unwrap();
        let brute = (0..n).map(|i| a[i] / b[i]).fold(f64::INFINITY, f64::min);
        prop_assert!((opt.value - brute).abs() <= 1e-9 * (1.0 + brute.abs()));
        let p = &opt.argument;
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        prop_assert!((fp.numerator.eval(p) / fp.denominator.eval(p) - opt.value).abs() <= 1e-9);
    }

    #[test]
    fn ratio_under_lower_bounds_matches_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        // Lower bounds on a 3-simplex cut out a triangle whose vertices are
        // known: all slack goes to one coordinate.
        let lower: Vec<f64> = (0..3).map(|_| r.gen_range(0.0..0.3)).collect();
        let slack = 1.0 - lower.iter().sum::<f64>();
        let a: Vec<f64> = (0..3).map(|_| r.gen_range(-1.0..3.0)).collect();
        let b: Vec<f64> = (0..3).map(|_| r.gen_range(0.1..3.0)).collect();
        let mut constraints = vec![simplex_row(3)];
        for (i, &l) in lower.iter().enumerate() {
            let mut e = vec![0.0; 3];
            e[i] = 1.0;
            constraints.push(Constraint::new(e, Relation::Ge, l));
        }
        let fp = FractionalProgram {
            numerator: Affine::linear(a.clone()),
            denominator: Affine::linear(b.clone()),
            constraints,
        };
        let brute = (0..3)
            .map(|k| {
                let mut p = lower.clone();
                p[k] += slack;
                fp.numerator.eval(&p) / fp.denominator.eval(&p)
            })
            .fold(f64::INFINITY, f64::min);
        let opt = min_ratio(&fp).unwrap();
        prop_assert!((opt.value - brute).abs() <= 1e-9 * (1.0 + brute.abs()));
    }
}

#[test]
fn infeasible_and_unbounded_are_reported() {
    let mut lp = LinearProgram::minimize(vec![1.0]).unwrap();
    lp.push(Constraint::new(vec![1.0], Relation::Le, -1.0)).unwrap();
    assert_eq!(solve_lp(&lp).status, LpStatus::Infeasible);

    let lp = LinearProgram::minimize(vec![-1.0]).unwrap();
    assert_eq!(solve_lp(&lp).status, LpStatus::Unbounded);
}
