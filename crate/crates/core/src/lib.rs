//! Exact-arithmetic computational geometry for self-dual Einstein metrics
//! with CR conformal infinity.
//!
//! Everything is computed over the Gaussian rationals: no floating point
//! enters any verified identity. The crate is organized bottom-up:
//!
//! * [`symalg`] — rationals, Gaussian rationals, multivariate polynomials,
//!   rational functions and truncated (Laurent) power series;
//! * [`tensor`] — chart-local tensor calculus in dimension 4: Levi-Civita
//!   connection, curvature, Hodge star and the self-dual/anti-self-dual
//!   Weyl split;
//! * [`models`] — the explicit geometries: Bergmann ball metric, the
//!   Heisenberg CR structure and its Levi metric, parabolic dilations and
//!   the asymptotic ansatz metric;
//! * [`twistor`] — flags in C^{1,2}, the twistor projection and real
//!   structure, the 4-parameter curve family and conformal fiber conics;
//! * [`nodal`] — section calculus on nodal rational curves: normal-bundle
//!   sections with residue constraints, splitting types and cohomology
//!   dimension counts;
//! * [`transform`] — the inverse twistor transform on the (perturbed)
//!   Heisenberg model: Liouville form, horizontal lift, leaf embeddings,
//!   the degree-2 pairing and the reconstruction of the asymptotic metric;
//! * [`expand`] — order-by-order formal solution of the self-dual Einstein
//!   system with CR boundary data, with uniqueness/obstruction reporting.

pub mod expand;
pub mod models;
pub mod nodal;
pub mod report;
pub mod symalg;
pub mod tensor;
pub mod transform;
pub mod twistor;
