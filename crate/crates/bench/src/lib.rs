//! Fixtures shared by the benchmarks.

use spd_core::flatten::partial_space;
use spd_core::poly::make_determinant;
use spd_core::{FlattenConfig, GradedComponentBasis, VariableTable};

/// Order-`k` partials of `det_n` and the `n^2` ambient coordinates.
pub fn det_partials(n: u32, k: u32) -> (GradedComponentBasis, VariableTable) {
    let det = make_determinant(n).expect("small n");
    (partial_space(&det, k, &FlattenConfig::exact()).expect("small instance"), VariableTable::matrix(n))
}
