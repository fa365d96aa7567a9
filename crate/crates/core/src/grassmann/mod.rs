//! Projective points, moment-curve webs, Veronese images and the
//! Castelnuovo test, recovery of the adapted normal form, and the
//! almost-Grassmannian structure of `n+1` foliations.

mod akivis;
mod castelnuovo;
mod moment;
mod projective;
mod recover;
mod rnc_fit;

pub use akivis::{akivis_structure, structures_equivalent};
pub use castelnuovo::{castelnuovo_rnc_test, castelnuovo_threshold, normals_span_rank, veronese, veronese_span_rank};
pub use moment::{
    evaluate_expansion, foliation_from_point, moment_point, moment_web, omega_expansion, web_from_points,
    MomentWebSpec,
};
pub use projective::{frame_matrix, in_general_position, projective_map_from_frames, stack, ProjectivePoint};
pub use recover::{
    degree_one_covectors, minimal_order, recover_from_covectors, recover_normal_form, recover_with_core,
    AdaptedStructure,
};
pub use rnc_fit::{fit_rnc, RncFit, RncParam};
