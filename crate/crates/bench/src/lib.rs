//! Shared inputs for the benchmarks.

use delsarte_core::model::SurfaceInput;
use delsarte_core::shioda::FamilyParams;

/// Surfaces exercised end to end: `(label, rows)`.
pub const SURFACES: &[(&str, [[u32; 4]; 4])] = &[
    ("y2+x3+x2+t", [[0, 2, 0, 4], [3, 0, 0, 3], [2, 0, 0, 4], [0, 0, 1, 5]]),
    ("y2+x3+x+t", [[0, 2, 0, 4], [3, 0, 0, 3], [1, 0, 0, 5], [0, 0, 1, 5]]),
    ("y2+x3+x2+tx", [[0, 2, 0, 4], [3, 0, 0, 3], [2, 0, 0, 4], [1, 0, 1, 4]]),
    ("fermat5", [[5, 0, 0, 0], [0, 5, 0, 0], [0, 0, 5, 0], [0, 0, 0, 5]]),
];

/// Family parameters `(p, a)` for the enumeration benchmarks.
pub const FAMILIES: &[(u64, u64)] = &[(11, 1), (11, 12), (13, 12), (7, 3), (3, 60)];

pub fn surface_input(rows: &[[u32; 4]; 4]) -> SurfaceInput {
    SurfaceInput { monomials: rows.iter().map(|r| r.to_vec()).collect(), coefficients: None, permutation: None }
}

pub fn family(p: u64, a: u64) -> FamilyParams {
    FamilyParams::new(p, a).expect("benchmark parameters are valid")
}
