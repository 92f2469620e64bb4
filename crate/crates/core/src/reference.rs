//! Reference values for `n <= 30`, used as comparison targets by the
//! verification report and the acceptance tests.

/// Last `n` covered by the reference tables.
pub const RANGE_MAX: u32 = 30;

/// `Δ(n)` for `n = 1..=30`.
pub const DELTA_SEQUENCE: [u32; 30] = [
    0, 1, 1, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5, 6, 6, 6, 6, 6, 6, 6, 7, 7,
];

/// `(r, τ(r))` for `r = 0..=7`.
pub const TAU: [(u32, u32); 8] = [
    (0, 1),
    (1, 2),
    (2, 4),
    (3, 7),
    (4, 11),
    (5, 16),
    (6, 22),
    (7, 29),
];

/// `(r, τ_∂(r))` for `r = 1..=6`.
pub const TAU_BOUNDARY: [(u32, u32); 6] = [(1, 4), (2, 7), (3, 11), (4, 16), (5, 22), (6, 29)];

/// Layer profiles at threshold values: `(n, Δ(n), [|L_1|, ..., |L_7|])`.
pub const LAYER_SIZES_AT_THRESHOLDS: [(u32, u32, [usize; 7]); 6] = [
    (4, 2, [2, 3, 0, 0, 0, 0, 0]),
    (7, 3, [2, 9, 4, 0, 0, 0, 0]),
    (11, 4, [2, 19, 30, 5, 0, 0, 0]),
    (16, 5, [2, 29, 114, 80, 6, 0, 0]),
    (22, 6, [2, 40, 268, 489, 196, 7, 0]),
    (29, 7, [2, 57, 494, 1725, 1859, 420, 8]),
];

/// Explicit first-occurrence layers `(r, L_r(τ(r)))` for `r = 2, 3, 4`.
pub const FIRST_LAYERS: [(u32, &[&[u32]]); 3] = [
    (2, &[&[3, 1], &[2, 2], &[2, 1, 1]]),
    (3, &[&[4, 2, 1], &[3, 3, 1], &[3, 2, 2], &[3, 2, 1, 1]]),
    (
        4,
        &[
            &[5, 3, 2, 1],
            &[4, 4, 2, 1],
            &[4, 3, 3, 1],
            &[4, 3, 2, 2],
            &[4, 3, 2, 1, 1],
        ],
    ),
];

/// Conjectured threshold `1 + r(r+1)/2`.
pub fn triangular_threshold(r: u32) -> u32 {
    1 + r * (r + 1) / 2
}
