//! Globally adaptive Gauss–Kronrod (7, 15) quadrature.
//!
//! Finite intervals are bisected on the interval with the largest error estimate until
//! the summed estimate meets the absolute tolerance. Semi-infinite tails are mapped
//! onto `(0, 1]` with `x = lo + (1 - t) / t`.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Value of an integral and its absolute error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quad {
    pub value: f64,
    pub abs_error: f64,
}

impl std::ops::Add for Quad {
    type Output = Quad;

    fn add(self, rhs: Quad) -> Quad {
        Quad { value: self.value + rhs.value, abs_error: self.abs_error + rhs.abs_error }
    }
}

/// Maximum number of subintervals kept by one adaptive run.
pub const MAX_SUBINTERVALS: usize = 4000;

#[derive(Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

/// One 15-point Kronrod evaluation with the QUADPACK error heuristic.
fn gk15<G: FnMut(f64) -> f64>(f: &mut G, lo: f64, hi: f64) -> (f64, f64) {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(centre);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

/// Integrates `f` over the finite interval `[lo, hi]` to absolute tolerance `tol`.
///
/// Fails with [`Error::NonConvergence`] (carrying the best estimate) when the
/// tolerance is not met within [`MAX_SUBINTERVALS`] bisections or an evaluation is not finite.
pub fn integrate<G: FnMut(f64) -> f64>(mut f: G, lo: f64, hi: f64, tol: f64) -> Result<Quad> {
    if lo == hi {
        return Ok(Quad { value: 0.0, abs_error: 0.0 });
    }
    let (value, error) = gk15(&mut f, lo, hi);
    let mut segments = vec![Segment { lo, hi, value, error }];
    let mut total = value;
    let mut total_err = error;
    while total_err > tol {
        if !total.is_finite() || !total_err.is_finite() || segments.len() >= MAX_SUBINTERVALS {
            return Err(Error::NonConvergence { estimate: total, abs_error: total_err });
        }
        let (idx, _) = segments
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .expect("non-empty");
        let seg = segments.swap_remove(idx);
        let mid = 0.5 * (seg.lo + seg.hi);
        if mid <= seg.lo || mid >= seg.hi {
            return Err(Error::NonConvergence { estimate: total, abs_error: total_err });
        }
        let (v1, e1) = gk15(&mut f, seg.lo, mid);
        let (v2, e2) = gk15(&mut f, mid, seg.hi);
        segments.push(Segment { lo: seg.lo, hi: mid, value: v1, error: e1 });
        segments.push(Segment { lo: mid, hi: seg.hi, value: v2, error: e2 });
        // Re-summing avoids drift from repeated incremental updates.
        total = segments.iter().map(|s| s.value).sum();
        total_err = segments.iter().map(|s| s.error).sum();
    }
    if !total.is_finite() {
        return Err(Error::NonConvergence { estimate: total, abs_error: total_err });
    }
    Ok(Quad { value: total, abs_error: total_err })
}

/// Integrates `f` over `[lo, ∞)` through the map `x = lo + (1 - t) / t`.
pub fn integrate_to_infinity<G: FnMut(f64) -> f64>(mut f: G, lo: f64, tol: f64) -> Result<Quad> {
    integrate(
        |t| {
            if t <= 0.0 {
                return 0.0;
            }
            let x = lo + (1.0 - t) / t;
            if !x.is_finite() {
                return 0.0;
            }
            let fx = f(x);
            if fx == 0.0 {
                0.0
            } else {
                fx / (t * t)
            }
        },
        0.0,
        1.0,
        tol,
    )
}

/// Integrates over `[lo, ∞)` by splitting at `split`: the bulk on `[lo, split]` and
/// the tail through the infinite map, each held to half the tolerance.
pub fn integrate_split<G: FnMut(f64) -> f64>(mut f: G, lo: f64, split: f64, tol: f64) -> Result<Quad> {
    if split <= lo {
        return integrate_to_infinity(f, lo, tol);
    }
    let body = integrate(&mut f, lo, split, 0.5 * tol)?;
    let tail = integrate_to_infinity(&mut f, split, 0.5 * tol)?;
    Ok(body + tail)
}
