//! Float helpers that work with and without std.

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("swarmtrack-core needs either the `std` or the `libm` feature");

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.sqrt()
    }
    #[cfg(all(not(feature = "std"), feature = "libm"))]
    {
        libm::sqrt(x)
    }
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.abs()
    }
    #[cfg(all(not(feature = "std"), feature = "libm"))]
    {
        libm::fabs(x)
    }
}

/// Integer power by repeated squaring; bit-identical on every target,
/// unlike `f64::powi`.
#[inline]
pub(crate) fn pow_int(base: f64, mut exp: u32) -> f64 {
    let mut acc = 1.0;
    let mut b = base;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= b;
        }
        b *= b;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_int_matches_repeated_multiplication() {
        assert_eq!(pow_int(2.0, 0), 1.0);
        assert_eq!(pow_int(2.0, 1), 2.0);
        assert_eq!(pow_int(2.0, 10), 1024.0);
        assert_eq!(pow_int(0.5, 2), 0.25);
    }
}
