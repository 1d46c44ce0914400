//! Exact-arithmetic models of weighted hyperplane arrangements and the
//! complexes built on them.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`] — rational scalars, sparse matrices, rank/kernel, cochain
//!   complexes and Betti tables. Everything downstream is exact; there is no
//!   floating point anywhere.
//! * [`arrangement`] — affine hyperplane arrangements with rational weights,
//!   their intersection posets, dense edges, resonance, and the
//!   discriminantal family on the pointed complex line.
//! * [`orlik_solomon`] — Orlik-Solomon algebras with their no-broken-circuit
//!   bases, Aomoto complexes, symmetric-group skew subspaces, and the
//!   distinguished logarithmic forms indexed by weight compositions.
//! * [`sl2`] — Verma modules and their contragradient duals over sl2, tensor
//!   products of dual Verma modules, and the two-step weight complexes that
//!   resolve tensor products of simple modules.
//! * [`strata`] — the stratified model gluing skew Aomoto pieces into a total
//!   complex, the label bijection onto the sl2 weight complex, and the
//!   verification drivers for the dimension, kernel, and genericity claims.

pub mod arrangement;
pub mod exact;
pub mod orlik_solomon;
pub mod sl2;
pub mod strata;

pub use exact::{BettiTable, CochainComplex, Matrix, Scalar};

/// Outcome of a verification routine: a verdict plus the evidence lines
/// behind it, suitable for direct serialization.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct CheckReport {
    /// Which check ran.
    pub name: String,
    /// Whether every claim held.
    pub pass: bool,
    /// Human-readable evidence, one line per claim or counterexample.
    pub details: Vec<String>,
}

impl CheckReport {
    /// Starts a passing report; failures flip it.
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            pass: true,
            details: Vec::new(),
        }
    }

    /// Records a claim outcome, failing the report if `ok` is false.
    pub fn claim(&mut self, ok: bool, line: impl Into<String>) {
        self.pass &= ok;
        self.details.push(format!(
            "{} {}",
            if ok { "ok:" } else { "FAIL:" },
            line.into()
        ));
    }
}
