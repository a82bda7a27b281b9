//! Geometry and physics of tight knotted and linked tubes.
//!
//! * [`curves`]: closed polygonal centerlines, canonical link generators, and a
//!   uniform grid for point-to-centerline distance queries.
//! * [`linking`]: exact Gauss linking numbers of polygon pairs.
//! * [`phases`]: Aharonov-Bohm phases and the Josephson critical current of
//!   flux-threaded loops.
//! * [`inertia`]: closed-form inertia of solid-torus composites and seeded,
//!   schedule-independent Monte Carlo inertia of arbitrary tubes.
//! * [`rotor`]: top classification and symmetric-top rotational levels.
//! * [`spectrum_fit`]: one-scale fits of knot lengths to mass spectra.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curves;
pub mod error;
pub mod geom;
pub mod inertia;
pub mod io;
pub mod linking;
pub mod phases;
pub mod rotor;
pub mod spectrum_fit;

mod serde_util;

pub use curves::{
    distance_to_link, make_borromean, make_chain, make_circle, make_tight_hopf, make_torus_link,
    Component, Link, SegmentGrid,
};
pub use error::{Error, Result};
pub use geom::{Point, Vector};
pub use inertia::{
    composite_inertia, mc_inertia, principal_axes, torus_inertia, InertiaResult, McConfig,
    Provenance, SolidTorusSpec,
};
pub use linking::{gauss_linking, LinkingResult};
pub use phases::{ab_phase_first_order, ab_phase_second_order, josephson_max_current, FluxConfig, FluxNormalization};
pub use rotor::{classify_top, symmetric_top_levels, RotorLevel, TopClassification, TopKind};
pub use spectrum_fit::{
    assign, fit_affine, fit_scale, AffineFitResult, AssignMode, FitPoint, FitResult, KnotEntry,
    StateEntry,
};
