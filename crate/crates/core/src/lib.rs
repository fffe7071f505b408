//! Exact verification engine for truncated hypergeometric supercongruences.
//!
//! The crate checks congruences of the shape
//! `Σ_{k<p} (m·k + r) ∏(aᵢ)ₖ / k!^e ≡ closed form (mod p^s)` prime by prime,
//! with every quantity held exactly:
//!
//! - [`rationals`]: exact rationals, rising factorials, prime enumeration.
//! - [`cyclotomic`]: Q(i) and Q(ζ₅) as quotients of Q[x].
//! - [`padic`]: valuations, residues mod `p^k`, the congruence predicate.
//! - [`pgamma`]: Morita's p-adic Gamma function mod `p^k`.
//! - [`hyperkernel`]: truncated series and terminating identity checks.
//! - [`claims`]: the supercongruence families and proof-chain replays.
//! - [`qring`]: polynomials, Q[q]/Φ_p(q)⁴ and the q-analogue check.

pub mod claims;
pub mod cyclotomic;
pub mod field;
pub mod hyperkernel;
pub mod padic;
pub mod pgamma;
pub mod qring;
pub mod rationals;

pub use field::{Field, Rationals};
pub use padic::{PadicContext, Residue, Valuation};
pub use rationals::BigRational;
