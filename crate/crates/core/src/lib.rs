//! Model-free adaptive stabilization of unknown linear systems by causal
//! cancellation, with the convex-geometry machinery needed to certify its
//! stability guarantees on simulated runs.

// Compile the guide's code listings as doctests so the book and the
// library cannot drift apart. One module per chapter keeps failure
// locations identifiable.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/gauge_norms.md")]
    mod gauge_norms {}
    #[doc = include_str!("../../../book/src/controller.md")]
    mod controller {}
    #[doc = include_str!("../../../book/src/certification.md")]
    mod certification {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}

pub mod analysis;
pub mod controller;
pub mod convex;
pub mod experiment;
pub mod linprog;
pub mod plant;
