//! Exact arithmetic for knot concordance obstructions.
//!
//! Everything here is computed over the integers and rationals (with real
//! cyclotomic extensions where signature angles demand them); no floating
//! point is used on any certified path.  The pipeline runs from Seifert
//! matrices through Tristram-Levine signatures and double branched cover
//! linking forms to the satellite obstruction calculus that certifies the
//! genus-two example.

pub mod corpus;
pub mod cover;
pub mod error;
pub mod linalg;
pub mod obstruction;
pub mod poly;
pub mod seifert;
pub mod signature;

pub use cover::{Character, CoverHomology, LinkingForm};
pub use error::{Error, Result};
pub use obstruction::{
    MetabolizerWitness, SatelliteCurve, SatelliteSpec, SymbolicObstruction, VerificationReport,
};
pub use seifert::SeifertMatrix;
pub use signature::{RationalAngle, SignatureResult};
