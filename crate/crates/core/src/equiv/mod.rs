//! Explicit comparison maps between the bar and twisted models.

pub mod comparison;
pub mod maps;

pub use comparison::{
    bar_length, comparison_maps, contraction, contraction_h, homotopy_defect, keyed_matrix, letter_count,
    nilpotency_order, phi, phi_of, sample_kernel, section, ComparisonKind, ComparisonMap,
};
pub use maps::{f_map, g_map, h_tilde};
