//! Scalar float math pinned to libm.
//!
//! Method syntax (`x.ln()`) would resolve to either libm or the linked
//! standard library depending on which crates a build graph happens to
//! unify, changing results by ulps between builds. Routing through
//! these wrappers keeps every build of this crate on the same
//! implementations.

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn tan(x: f64) -> f64 {
    libm::tan(x)
}
