//! The four shipped presentation files, parsed once per call.

use crate::freealg::{parse_presentation, Presentation};
use crate::scalars::Laurent;

pub const SU2: &str = include_str!("../../models/su2.pres");
pub const SPHERE: &str = include_str!("../../models/sphere.pres");
pub const EQ2: &str = include_str!("../../models/eq2.pres");
pub const HYPERBOLOID: &str = include_str!("../../models/hyperboloid.pres");

fn load(text: &str) -> Presentation<Laurent> {
    parse_presentation(text)
        .unwrap_or_else(|e| panic!("built-in presentation: {e}"))
        .presentation
}

/// `SU_q(2)`.
pub fn su2() -> Presentation<Laurent> {
    load(SU2)
}

/// The quantum sphere in the `(s, t)` parametrization.
pub fn sphere() -> Presentation<Laurent> {
    load(SPHERE)
}

/// `E_q(2)`.
pub fn eq2() -> Presentation<Laurent> {
    load(EQ2)
}

/// The quantum hyperboloid `X_q`.
pub fn hyperboloid() -> Presentation<Laurent> {
    load(HYPERBOLOID)
}
