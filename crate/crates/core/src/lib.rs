//! Exact arithmetic in the even mod-p Steenrod algebra.
//!
//! The crate works in the quotient of the mod-p Steenrod algebra by the
//! two-sided ideal generated by the Bockstein. Its dual is the polynomial
//! algebra on the Milnor generators `xi_i`, so every element has a sparse
//! expansion over Milnor basis monomials `xi^J`. For p = 2 we write `P^i`
//! for `Sq^{2i}` and `xi_i` for `zeta_i^2`; with that convention a single
//! code path serves all primes.
//!
//! What lives where:
//!
//! * [`seq`]: exponent-sequence combinatorics: the admissible sequences,
//!   the bijection `gamma`, right-lexicographic order, the sets `Upsilon_r`,
//!   and the excess function `ex(r)`.
//! * [`milnor`]: Milnor basis monomials and elements, the matrix product,
//!   the antipode `chi(P^r)`, and conversion to the admissible
//!   (Cartan–Serre) basis.
//! * [`transition`]: memoized Milnor/admissible transition matrices with an
//!   optional on-disk cache.
//! * [`adem`]: Adem-relation normalizer used as an independent oracle for
//!   the Milnor product.
//! * [`poly`]: the action on polynomial algebras on degree-2 generators,
//!   including the antipode nontriviality witness.
//! * [`bounds`]: big-integer lower/upper bounds and exact small-dimension
//!   values for the realization numbers `k_U(n)` and `k_SO(n)`.
//! * [`verify`]: the one-shot claim checks behind `steenrod verify-paper`.

pub mod adem;
pub mod bounds;
pub mod fp;
pub mod milnor;
pub mod poly;
pub mod seq;
pub mod transition;
pub mod verify;

pub use fp::Prime;
pub use seq::{ExponentSeq, GammaSeq};
