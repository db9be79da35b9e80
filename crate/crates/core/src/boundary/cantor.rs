//! Cantor-type boundary data on the arc `[0, 1]` (radians).
//!
//! The thin construction removes a middle piece of length `2^{-2n}` from every
//! interval at stage `n`; interval lengths stay exact rationals. The fat
//! construction removes `ρ·2^{-3n}`, which keeps the removed gaps so small that
//! bridging each gap with a chord is cheaper than splitting the interval.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{ArcValue, BoundaryDatum};
use crate::math;
use crate::{Error, Result};

pub const MAX_CANTOR_STAGE: u32 = 20;

/// Default fat-variant removal fraction `ρ`.
pub const DEFAULT_FAT_RHO: f64 = 1.0 / 64.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CantorVariant {
    Thin,
    /// Removal `rho · 2^{-3n}` at stage `n`.
    Fat {
        rho: f64,
    },
}

impl CantorVariant {
    pub fn fat() -> Self {
        CantorVariant::Fat { rho: DEFAULT_FAT_RHO }
    }

    /// Length of the middle piece removed when passing to stage `n ≥ 1`.
    pub fn removal(&self, n: u32) -> f64 {
        match *self {
            CantorVariant::Thin => pow2(-2 * n as i32),
            CantorVariant::Fat { rho } => rho * pow2(-3 * n as i32),
        }
    }
}

fn pow2(e: i32) -> f64 {
    libm::ldexp(1.0, e)
}

fn big_pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

/// Thin-stage interval length `a_n = (2^n + 1) / 2^{2n+1}`, exactly.
pub fn cantor_interval_length(n: u32) -> BigRational {
    BigRational::new(big_pow2(n) + BigInt::one(), big_pow2(2 * n + 1))
}

/// Same quantity from `a_0 = 1`, `a_n = a_{n-1}/2 − 1/2^{2n+1}`.
pub fn cantor_interval_length_recurrence(n: u32) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut a = BigRational::one();
    for k in 1..=n {
        a = &a * &half - BigRational::new(BigInt::one(), big_pow2(2 * k + 1));
    }
    a
}

/// Interval length at stage `n` as `f64`.
fn interval_length(n: u32, variant: CantorVariant) -> f64 {
    match variant {
        // exact in binary for the supported stages
        CantorVariant::Thin => (pow2(n as i32) + 1.0) * pow2(-(2 * n as i32 + 1)),
        CantorVariant::Fat { .. } => {
            let mut b = 1.0;
            for k in 1..=n {
                b = 0.5 * (b - variant.removal(k));
            }
            b
        }
    }
}

fn check_variant(n: u32, variant: CantorVariant) -> Result<()> {
    if n > MAX_CANTOR_STAGE {
        return Err(Error::CantorStageTooLarge(n));
    }
    if let CantorVariant::Fat { rho } = variant {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::InvalidParameter(alloc::format!("fat removal fraction {rho} outside (0, 1)")));
        }
    }
    Ok(())
}

/// The `2^n` stage-`n` intervals in increasing order.
pub fn cantor_stage_intervals(n: u32, variant: CantorVariant) -> Result<Vec<(f64, f64)>> {
    check_variant(n, variant)?;
    let mut starts = alloc::vec![0.0f64];
    let mut len = 1.0;
    for k in 1..=n {
        let next = interval_length(k, variant);
        let mut refined = Vec::with_capacity(starts.len() * 2);
        for &s in &starts {
            refined.push(s);
            refined.push(s + len - next);
        }
        starts = refined;
        len = next;
    }
    Ok(starts.into_iter().map(|s| (s, s + len)).collect())
}

/// Total measure `2^n · (interval length)` of the stage-`n` set.
pub fn cantor_stage_measure(n: u32, variant: CantorVariant) -> Result<f64> {
    check_variant(n, variant)?;
    Ok(pow2(n as i32) * interval_length(n, variant))
}

/// Indicator of the stage-`n` set on the boundary, zero elsewhere.
///
/// For the fat variant every transition up to stage `n` is checked with
/// [`trapezoid_comparison`]; a stage that fails aborts the construction.
pub fn cantor_stage_datum(n: u32, variant: CantorVariant) -> Result<BoundaryDatum> {
    if matches!(variant, CantorVariant::Fat { .. }) {
        verify_fat_variant(n, variant)?;
    }
    let arcs: Vec<ArcValue> =
        cantor_stage_intervals(n, variant)?.into_iter().map(|(from, to)| ArcValue { from, to, value: 1.0 }).collect();
    BoundaryDatum::piecewise_constant(&arcs, 0.0)
}

/// `sqrt(1 − cos x)`, through `sqrt(2)|sin(x/2)|` to avoid cancellation.
fn half_chord(x: f64) -> f64 {
    core::f64::consts::SQRT_2 * math::abs(math::sin(0.5 * x))
}

/// Auxiliary function obtained by substituting `x = 2^{-n}` into the stage inequality.
pub fn cantor_g(x: f64) -> f64 {
    half_chord(0.5 * x * (x + 1.0)) + half_chord(x * x) - 2.0 * half_chord(x * (x + 2.0) / 8.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InequalityCheck {
    pub stage: u32,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `sqrt(1−cos a_n) + sqrt(1−cos 2^{-2n}) > 2 sqrt(1−cos a_{n+1})` in double precision.
pub fn cantor_inequality_check(n: u32) -> Result<InequalityCheck> {
    if n == 0 {
        return Err(Error::InvalidParameter("stage must be positive".into()));
    }
    let a = |k: u32| (pow2(k as i32) + 1.0) * pow2(-(2 * k as i32 + 1));
    let lhs = half_chord(a(n)) + half_chord(pow2(-2 * n as i32));
    let rhs = 2.0 * half_chord(a(n + 1));
    Ok(InequalityCheck { stage: n, lhs, rhs, holds: lhs > rhs })
}

/// Boundary cost of the two competing level sets when stage `n − 1` passes to stage `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrapezoidCheck {
    pub stage: u32,
    /// Chord over the parent interval plus chord over the removed gap.
    pub bridge: f64,
    /// Two chords over the child intervals.
    pub split: f64,
}

impl TrapezoidCheck {
    /// Splitting wins: the trapezoid between parent and children leaves the region.
    pub fn split_preferred(&self) -> bool {
        self.bridge > self.split
    }
}

fn unit_chord(alpha: f64) -> f64 {
    2.0 * math::abs(math::sin(0.5 * alpha))
}

/// Compares both ways of closing the level set at stage `n ≥ 1` on the unit circle.
pub fn trapezoid_comparison(n: u32, variant: CantorVariant) -> Result<TrapezoidCheck> {
    check_variant(n, variant)?;
    if n == 0 {
        return Err(Error::InvalidParameter("stage must be positive".into()));
    }
    let parent = interval_length(n - 1, variant);
    let child = interval_length(n, variant);
    let gap = variant.removal(n);
    Ok(TrapezoidCheck { stage: n, bridge: unit_chord(parent) + unit_chord(gap), split: 2.0 * unit_chord(child) })
}

/// Checks that bridging beats splitting at every stage `1..=n_max`.
pub fn verify_fat_variant(n_max: u32, variant: CantorVariant) -> Result<Vec<TrapezoidCheck>> {
    check_variant(n_max, variant)?;
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let c = trapezoid_comparison(n, variant)?;
        if c.split_preferred() || c.bridge == c.split {
            return Err(Error::ReversedInequalityFails { stage: n });
        }
        out.push(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn interval_lengths() {
        assert_eq!(cantor_interval_length(0), rat(1, 1));
        assert_eq!(cantor_interval_length(1), rat(3, 8));
        assert_eq!(cantor_interval_length(2), rat(5, 32));
        assert_eq!(cantor_interval_length(3), rat(9, 128));
        for n in 0..=30 {
            assert_eq!(cantor_interval_length(n), cantor_interval_length_recurrence(n), "n = {n}");
        }
    }

    #[test]
    fn thin_stage_one() {
        let iv = cantor_stage_intervals(1, CantorVariant::Thin).unwrap();
        assert_eq!(iv, [(0.0, 0.375), (0.625, 1.0)]);
        let iv0 = cantor_stage_intervals(0, CantorVariant::Thin).unwrap();
        assert_eq!(iv0, [(0.0, 1.0)]);
    }

    #[test]
    fn thin_measure_decreases_to_half() {
        let mut prev = f64::INFINITY;
        for n in 0..=20 {
            let m = cantor_stage_measure(n, CantorVariant::Thin).unwrap();
            // 2^n a_n = 1/2 + 2^{-n-1}
            assert_eq!(m, 0.5 + 0.5f64.powi(n as i32 + 1));
            assert!(m < prev);
            prev = m;
        }
    }

    #[test]
    fn fat_stage_one() {
        let iv = cantor_stage_intervals(1, CantorVariant::fat()).unwrap();
        assert_eq!(iv.len(), 2);
        let (l0, l1) = (iv[0].1 - iv[0].0, iv[1].1 - iv[1].0);
        assert!((l0 - l1).abs() < 1e-15);
        assert!(l0 + l1 > 0.75);
        assert!((iv[1].1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn stage_intervals_disjoint_and_ordered() {
        for variant in [CantorVariant::Thin, CantorVariant::fat()] {
            let iv = cantor_stage_intervals(8, variant).unwrap();
            assert_eq!(iv.len(), 256);
            for w in iv.windows(2) {
                assert!(w[0].0 < w[0].1 && w[0].1 < w[1].0);
            }
        }
    }

    #[test]
    fn stage_limit() {
        assert_eq!(cantor_stage_intervals(21, CantorVariant::Thin), Err(Error::CantorStageTooLarge(21)));
        assert!(cantor_stage_datum(20, CantorVariant::Thin).is_ok());
    }

    #[test]
    fn inequality_holds() {
        for n in 1..=20 {
            let c = cantor_inequality_check(n).unwrap();
            assert!(c.holds, "n = {n}: {} vs {}", c.lhs, c.rhs);
        }
        assert_eq!(cantor_g(0.0), 0.0);
        for k in 1..100 {
            assert!(cantor_g(k as f64 / 100.0) > 0.0);
        }
    }

    #[test]
    fn thin_prefers_split_fat_prefers_bridge() {
        for n in 1..=20 {
            assert!(trapezoid_comparison(n, CantorVariant::Thin).unwrap().split_preferred());
        }
        assert_eq!(verify_fat_variant(20, CantorVariant::fat()).unwrap().len(), 20);
    }

    #[test]
    fn quadratic_fat_removal_fails_early() {
        // ρ·2^{-2n} gaps do not decay fast enough; emulate with a large ρ.
        let r = verify_fat_variant(4, CantorVariant::Fat { rho: 0.9 });
        assert!(matches!(r, Err(Error::ReversedInequalityFails { .. })));
    }

    #[test]
    fn stage_datum_values() {
        let f = cantor_stage_datum(1, CantorVariant::Thin).unwrap();
        assert_eq!(f.eval(0.1), 1.0);
        assert_eq!(f.eval(0.5), 0.0);
        assert_eq!(f.eval(0.9), 1.0);
        assert_eq!(f.eval(3.0), 0.0);
        assert_eq!(f.bv_seminorm(), 4.0);
        assert_eq!(cantor_stage_datum(3, CantorVariant::Thin).unwrap().bv_seminorm(), 16.0);
    }
}
