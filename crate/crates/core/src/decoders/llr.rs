//! Log-likelihood-ratio arithmetic shared by the BP decoders.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive};

/// Scalar type for LLR messages.
pub trait Llr: Float + FromPrimitive + Debug + Send + Sync + 'static {}

impl<T: Float + FromPrimitive + Debug + Send + Sync + 'static> Llr for T {}

/// Largest message magnitude after softening.
pub const LLR_MAX: f64 = 35.0;
/// Smallest message magnitude after softening.
pub const LLR_MIN: f64 = 1e-10;

#[inline]
pub(crate) fn lit<T: Llr>(x: f64) -> T {
    T::from_f64(x).expect("literal representable")
}

/// Clamps `|x|` into `[LLR_MIN, LLR_MAX]`, keeping the sign; zero maps to
/// `+LLR_MIN`.
#[inline]
pub fn soften<T: Llr>(x: T) -> T {
    debug_assert!(!x.is_nan(), "NaN message");
    let max = lit::<T>(LLR_MAX);
    let min = lit::<T>(LLR_MIN);
    let a = x.abs();
    if a > max {
        max.copysign(x)
    } else if a < min {
        if x < T::zero() {
            -min
        } else {
            min
        }
    } else {
        x
    }
}

/// `2 atanh(r)` with `r` kept strictly inside `(-1, 1)`.
#[inline]
pub(crate) fn two_atanh<T: Llr>(r: T) -> T {
    let lim = T::one() - T::epsilon();
    let r = r.max(-lim).min(lim);
    let two = T::one() + T::one();
    two * r.atanh()
}

#[inline]
pub(crate) fn half_tanh<T: Llr>(x: T) -> T {
    (x / (T::one() + T::one())).tanh()
}

/// `a ⊞ b = 2 atanh(tanh(a/2) tanh(b/2))`.
pub fn boxplus<T: Llr>(a: T, b: T) -> T {
    two_atanh(half_tanh(a) * half_tanh(b))
}

/// Box-plus of every element; the empty combination is `+inf`.
pub fn boxplus_many<T: Llr, I: IntoIterator<Item = T>>(xs: I) -> T {
    let mut prod = T::one();
    let mut any = false;
    for x in xs {
        prod = prod * half_tanh(x);
        any = true;
    }
    if any {
        two_atanh(prod)
    } else {
        T::infinity()
    }
}

/// Removes `edge` from a box-plus `total`:
/// `2 atanh(tanh(total/2) / tanh(edge/2))`.
pub fn boxminus<T: Llr>(total: T, edge: T) -> T {
    let den = half_tanh(edge);
    debug_assert!(den != T::zero(), "boxminus by a zero message");
    two_atanh(half_tanh(total) / den)
}

/// `ln(p0 / p1)` with the extended-real limits at `p0 = 0` or `p1 = 0`.
pub fn prob_llr<T: Llr>(p0: f64, p1: f64) -> T {
    if p1 == 0.0 {
        T::infinity()
    } else if p0 == 0.0 {
        T::neg_infinity()
    } else {
        lit::<T>((p0 / p1).ln())
    }
}

/// `ln(1 + e^x)` without overflow.
#[inline]
pub(crate) fn softplus<T: Llr>(x: T) -> T {
    if x > T::zero() {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// `ln(e^a + e^b)` without overflow.
#[inline]
pub(crate) fn log_add_exp<T: Llr>(a: T, b: T) -> T {
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn soften_examples() {
        assert_eq!(soften(f64::INFINITY), 35.0);
        assert_eq!(soften(f64::NEG_INFINITY), -35.0);
        assert_eq!(soften(0.0f64), 1e-10);
        assert_eq!(soften(-0.0f64), 1e-10);
        assert_eq!(soften(-1e-20f64), -1e-10);
        assert_eq!(soften(2.5f64), 2.5);
        assert_eq!(soften(f32::INFINITY), 35.0f32);
    }

    #[test]
    fn boxplus_examples() {
        assert_eq!(boxplus(3.0f64, 0.0), 0.0);
        assert!((boxplus(2.0f64, LLR_MAX) - 2.0).abs() < 1e-12);
        // 2 atanh(tanh(1)^2), and the same value via phi(x) = ln coth(x/2):
        // phi(phi(2) + phi(2)).
        let phi = |x: f64| (1.0 / (x / 2.0).tanh()).ln();
        let oracle = phi(phi(2.0) + phi(2.0));
        let got = boxplus(2.0f64, 2.0);
        assert!((got - oracle).abs() < 1e-12);
        assert!((got - 1.3250).abs() < 1e-4, "{got}");
        assert!(boxplus(-2.0f64, 3.0) < 0.0);
        assert!(boxplus(-2.0f64, -3.0) > 0.0);
    }

    #[test]
    fn boxplus_many_matches_pairwise() {
        let xs = [1.5f64, -0.7, 4.0, 2.2];
        let pairwise = xs[1..].iter().fold(xs[0], |acc, &x| boxplus(acc, x));
        assert!((boxplus_many(xs) - pairwise).abs() < 1e-12);
        assert!(boxplus_many(std::iter::empty::<f64>()).is_infinite());
    }

    #[test]
    fn boxminus_with_saturated_edge() {
        assert!((boxminus(1.7f64, LLR_MAX) - 1.7).abs() < 1e-9);
        assert!((boxminus(-1.7f64, -LLR_MAX) - 1.7).abs() < 1e-9);
    }

    #[test]
    fn clamped_inverse_in_f32() {
        // tanh(17.5) rounds to 1 in f32; the clamp keeps results finite.
        let v = boxplus(LLR_MAX as f32, LLR_MAX as f32);
        assert!(v.is_finite() && v > 10.0);
    }

    #[test]
    fn stable_log_helpers() {
        assert!((softplus(0.0f64) - 2f64.ln()).abs() < 1e-15);
        assert!((softplus(800.0f64) - 800.0).abs() < 1e-12);
        assert!(softplus(-800.0f64) >= 0.0);
        assert!((log_add_exp(1000.0f64, 1000.0) - (1000.0 + 2f64.ln())).abs() < 1e-9);
    }

    #[test]
    fn llr_from_probabilities() {
        assert_eq!(prob_llr::<f64>(1.0, 0.0), f64::INFINITY);
        assert_eq!(prob_llr::<f64>(0.5, 0.5), 0.0);
        assert_eq!(prob_llr::<f64>(0.0, 1.0), f64::NEG_INFINITY);
    }

    proptest! {
        #[test]
        fn boxminus_inverts_boxplus(a in -10.0f64..10.0, b in -10.0f64..10.0) {
            prop_assume!(a.abs() > 1e-3 && b.abs() > 1e-3);
            let back = boxminus(boxplus(a, b), b);
            prop_assert!((back - a).abs() < 1e-9, "{a} {b} {back}");
        }

        #[test]
        fn boxplus_magnitude_bounded(a in -30.0f64..30.0, b in -30.0f64..30.0) {
            prop_assume!(a.abs() > 1e-6 && b.abs() > 1e-6);
            let c = boxplus(a, b);
            prop_assert!(c.abs() <= a.abs().min(b.abs()) + 1e-12);
            prop_assert_eq!(c < 0.0, (a < 0.0) != (b < 0.0));
        }
    }
}
