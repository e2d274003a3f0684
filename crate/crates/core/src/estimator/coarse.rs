use crate::frontend::EnergyObservation;

/// Index of the block with the largest energy; the earliest block wins ties.
///
/// # Panics
///
/// If `y` is empty.
pub fn coarse_step(y: &EnergyObservation) -> usize {
    assert!(!y.y.is_empty(), "coarse_step needs at least one block");
    argmax_earliest(&y.y)
}

/// Index of the largest value, earliest on ties; NaN never wins.
///
/// # Panics
///
/// If `values` is empty.
pub fn argmax_earliest(values: &[f64]) -> usize {
    assert!(!values.is_empty());
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] || (values[best].is_nan() && !v.is_nan()) {
            best = i;
        }
    }
    best
}
