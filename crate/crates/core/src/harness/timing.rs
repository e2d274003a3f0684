use crate::model::SystemConfig;

/// Acquisition time in microseconds: one energy detector visits the Nb
/// blocks serially for N1 frames each, then `num_correlators` parallel
/// correlators cover the `B + M1 + M2` delays at N2 frames per delay.
pub fn acquisition_time(cfg: &SystemConfig) -> f64 {
    let energy_frames = cfg.frames_step1 * cfg.blocks_per_frame;
    let delays = cfg.chips_per_block() + cfg.backward_search_chips + cfg.tail_extension_chips;
    let rounds = delays.div_ceil(cfg.num_correlators);
    let frames = energy_frames + rounds * cfg.frames_step2;
    frames as f64 * cfg.frame_duration_ns() / 1000.0
}
