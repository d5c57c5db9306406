//! Benchmark fixtures shared by the bench targets.

use hlmax_core::exactnum::rational::{int, rat};
use hlmax_core::metricspace::FiniteMetricMeasureSpace;
use hlmax_core::PeriodicPiecewiseLinear;

/// Zigzag of period 1 with `pieces` linear pieces.
pub fn zigzag(pieces: i64) -> PeriodicPiecewiseLinear {
    let points = (0..pieces)
        .map(|j| (rat(j, pieces), rat((j * 7) % 5 - 2, 4)))
        .collect();
    PeriodicPiecewiseLinear::new(int(1), points).expect("valid zigzag")
}

/// `n` collinear points at `k²/n` with masses cycling through 1, 2, 3.
pub fn collinear_space(n: i64) -> FiniteMetricMeasureSpace {
    let positions: Vec<_> = (0..n).map(|k| rat(k * k, n)).collect();
    let masses = (0..n).map(|k| int(1 + k % 3)).collect();
    FiniteMetricMeasureSpace::collinear(&positions, masses).expect("distinct points")
}
