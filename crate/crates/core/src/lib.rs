//! Algebraic entanglement tests and their topological counterparts.
//!
//! * [`qstate`]: dense pure states over `n` qubits, the product-state criterion
//!   (`a_0^{|α|-1} a_α = Π_{i∈α} a_{e_i}`), factorization and a partial-trace oracle.
//! * [`luinv`]: single-qubit local unitaries and the 2×2 amplitude minors whose
//!   moduli they preserve, plus a scanner probing "all minors vanish ⇒ product".
//! * [`yangbaxter`]: phased-swap operators `R|α,β> = M_{α,β}|β,α>`, Yang-Baxter
//!   verification, braid words, and whether `R` entangles the uniform state.
//! * [`linkinv`]: two-component link diagrams, the coloring state sum `S_K`,
//!   its closed form and the writhe-normalized invariant `Z_K`.
//! * [`bell`]: CHSH observables, `Δ`, its real closed form, the local hidden
//!   variable table and an angle maximizer.
//! * [`cli`]: the `tanglement` command-line front end.

pub mod bell;
pub mod cli;
pub mod error;
pub mod format;
pub mod linalg;
pub mod linkinv;
pub mod luinv;
pub mod qstate;
pub mod sample;
pub mod yangbaxter;

pub use error::{Error, Result};
pub use num_complex::Complex64;
