//! Property suites for the exact kernels and the maximal operator.

use std::cmp::Ordering;

use hlmax_core::exactnum::rational::{int, rat, Rational};
use hlmax_core::exactnum::SurdValue;
use hlmax_core::maximal1d;
use hlmax_core::metricspace::FiniteMetricMeasureSpace;
use hlmax_core::PeriodicPiecewiseLinear;
use num_traits::Signed;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-64i64..=64, 1i64..=16).prop_map(|(n, d)| rat(n, d))
}

fn surd_value() -> impl Strategy<Value = SurdValue> {
    (small_rational(), small_rational(), prop::sample::select(vec![0i64, 2, 3, 5, 8, 12, 50]))
        .prop_map(|(p, q, s)| SurdValue::new(p, q, int(s)).unwrap())
}

/// Periodic piecewise-linear function on a dyadic breakpoint grid.
fn pwl() -> impl Strategy<Value = PeriodicPiecewiseLinear> {
    (prop::sample::select(vec![1i64, 2, 3]), prop::collection::btree_map(0i64..12, -12i64..=12, 1..6)).prop_map(
        |(period, pts)| {
            let points = pts
                .into_iter()
                .map(|(j, v)| (rat(j * period, 12), rat(v, 8)))
                .collect();
            PeriodicPiecewiseLinear::new(int(period), points).unwrap()
        },
    )
}

fn point() -> impl Strategy<Value = Rational> {
    (-96i64..96).prop_map(|k| rat(k, 24))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn surd_order_is_total(a in surd_value(), b in surd_value(), c in surd_value()) {
        prop_assert_eq!(a.compare(&b), b.compare(&a).reverse());
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        let diff = a.to_f64() - b.to_f64();
        if diff.abs() > 1e-9 {
            prop_assert_eq!(a.compare(&b), if diff > 0.0 { Ordering::Greater } else { Ordering::Less });
        }
    }

    #[test]
    fn surd_addition_of_rationals_shifts(a in surd_value(), r in small_rational()) {
        let shifted = a.clone() + r.clone();
        prop_assert_eq!(shifted.compare(&a), r.cmp(&Rational::from_integer(0.into())));
    }

    #[test]
    fn integral_is_additive(f in pwl(), a in point(), b in point(), c in point()) {
        prop_assert_eq!(f.integrate(&a, &b) + f.integrate(&b, &c), f.integrate(&a, &c));
    }

    #[test]
    fn integral_is_periodic(f in pwl(), a in point()) {
        let t = f.period().clone();
        prop_assert_eq!(f.integrate(&a, &(&a + &t)), f.integral_over_period().clone());
        prop_assert_eq!(f.evaluate(&(&a + &t)), f.evaluate(&a));
    }

    #[test]
    fn absolute_is_idempotent(f in pwl(), x in point()) {
        let g = f.absolute();
        prop_assert!(g.is_nonnegative());
        prop_assert_eq!(g.absolute().evaluate(&x), g.evaluate(&x));
        prop_assert_eq!(g.evaluate(&x), f.evaluate(&x).abs());
    }

    #[test]
    fn maximal_is_homogeneous(f in pwl(), x in point(), c in small_rational()) {
        let scaled = f.affine_transform(&c, &int(0));
        let lhs = maximal1d::maximal_function(&scaled, &x);
        let rhs = maximal1d::maximal_function(&f, &x) * c.abs();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn maximal_sees_only_absolute_value(f in pwl(), x in point()) {
        prop_assert_eq!(maximal1d::maximal_function(&f, &x), maximal1d::maximal_function(&f.absolute(), &x));
        let neg = f.affine_transform(&int(-1), &int(0));
        prop_assert_eq!(maximal1d::maximal_function(&neg, &x), maximal1d::maximal_function(&f, &x));
    }

    #[test]
    fn maximal_is_periodic_and_bounded(f in pwl(), x in point()) {
        let m = maximal1d::maximal_function(&f, &x);
        prop_assert_eq!(&maximal1d::maximal_function(&f, &(&x + f.period())), &m);
        prop_assert!(m >= SurdValue::rational(f.evaluate(&x).abs()));
        prop_assert!(m <= SurdValue::rational(f.sup_norm()));
    }

    #[test]
    fn hat_maximal_is_even(k in -96i64..96) {
        let hat = PeriodicPiecewiseLinear::hat();
        let x = rat(k, 24);
        prop_assert_eq!(maximal1d::maximal_function(&hat, &x), maximal1d::maximal_function(&hat, &-x));
    }

    #[test]
    fn maximal_is_sublinear(f in pwl(), g in pwl(), x in point()) {
        prop_assume!(f.period() == g.period());
        let sum = f.add(&g).unwrap();
        let lhs = maximal1d::maximal_function(&sum, &x).to_enclosure(200);
        let rhs = maximal1d::maximal_function(&f, &x).to_enclosure(200)
            + maximal1d::maximal_function(&g, &x).to_enclosure(200);
        prop_assert!(lhs.lo() <= rhs.hi());
    }

    #[test]
    fn profile_is_continuous(f in pwl(), x in point()) {
        let profile = maximal1d::average_profile(&f, &x, f.period()).unwrap();
        prop_assert!(profile.validate().is_ok());
        for piece in &profile.pieces {
            let mid = (&piece.r_lo + &piece.r_hi) / int(2);
            prop_assert_eq!(piece.eval(&mid), maximal1d::average_at(&f, &x, &mid).unwrap());
        }
    }

    #[test]
    fn discrete_maximal_is_scale_free(
        pos in prop::collection::btree_set(0i64..40, 1..7),
        vals in prop::collection::vec(-8i64..=8, 7),
        c in 1i64..9,
    ) {
        let positions: Vec<Rational> = pos.iter().map(|&k| rat(k, 4)).collect();
        let n = positions.len();
        let f: Vec<Rational> = vals[..n].iter().map(|&v| rat(v, 3)).collect();
        let space = FiniteMetricMeasureSpace::collinear(&positions, vec![int(1); n]).unwrap();
        let heavy = FiniteMetricMeasureSpace::collinear(&positions, vec![int(c); n]).unwrap();
        let stretched: Vec<Rational> = positions.iter().map(|p| p * int(c)).collect();
        let wide = FiniteMetricMeasureSpace::collinear(&stretched, vec![int(1); n]).unwrap();
        let base = space.discrete_maximal_all(&f).unwrap();
        prop_assert_eq!(&heavy.discrete_maximal_all(&f).unwrap(), &base);
        for (x, m) in base.iter().enumerate() {
            prop_assert!(m >= &f[x].abs());
        }
        let k = space.annular_decay_k(&int(1)).unwrap().best_k;
        prop_assert_eq!(&heavy.annular_decay_k(&int(1)).unwrap().best_k, &k);
        prop_assert_eq!(&wide.annular_decay_k(&int(1)).unwrap().best_k, &k);
    }
}
