//! Map germs, their image equations and the invariants read off them.

mod image;
mod invariants;
mod report;
mod spec;
pub(crate) mod univariate;

pub use image::{branch_image, compose_with_branch, image_equation, squarefree_on_random_line, verified_image, ImageEquation, Provenance, ReducednessCheck};
pub use invariants::{
    local_ideals_equal, milnor_number, samuel_multiplicity, GermAnalysis, LcDimension, LcIdeal, QuasiHomogeneousCheck, SATURATION_POWER_CAP, SamuelMultiplicity,
    SiersmaCount,
};
pub use spec::{GermFlags, MapGermSpec};
pub use report::{ae_codim_opsu, analyse, full_report, report_from, InvariantReport, ReportConfig, Stability, Warning};
