//! Globally adaptive Gauss–Kronrod (7/15) integration.
//!
//! This is the oracle every gap and error measurement is compared against. It
//! shares no code with the trapezoidal rule.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{Error, Real, Result};

/// Kronrod abscissae on [-1, 1], descending, the last one is the centre.
#[allow(clippy::excessive_precision)]
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

#[allow(clippy::excessive_precision)]
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

/// Gauss weights for the odd-indexed Kronrod nodes (and the centre).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Upper limit on the number of live segments.
pub const MAX_SEGMENTS: usize = 20_000;

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl<T: Real> Eq for Segment<T> {}

impl<T: Real> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

fn kronrod<T: Real, F>(f: &mut F, a: T, b: T) -> Result<Segment<T>>
where
    F: FnMut(T) -> Result<T>,
{
    let two = T::lit(2.0);
    let centre = (a + b) / two;
    let half = (b - a) / two;
    let fc = f(centre)?;
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for (j, (&x, &wk)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * T::lit(x);
        let pair = f(centre - dx)? + f(centre + dx)?;
        kronrod = kronrod + pair * T::lit(wk);
        if j % 2 == 1 {
            gauss = gauss + pair * T::lit(WG[j / 2]);
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Ok(Segment { a, b, value, error })
}

fn finite_segment<T: Real>(seg: Segment<T>) -> Result<Segment<T>> {
    if seg.value.is_finite() {
        Ok(seg)
    } else {
        Err(Error::Domain {
            operation: "integrand",
            at: ((seg.a + seg.b) / T::lit(2.0)).as_f64(),
        })
    }
}

/// Integrates `f` over `[a, b]` to absolute accuracy `tol`, or to roundoff
/// level when that is larger.
///
/// `breaks` are interior points where the integrand is known to be non-smooth;
/// they become initial segment boundaries.
pub fn integrate_with_breaks<T: Real, F>(mut f: F, a: T, b: T, breaks: &[T], tol: T) -> Result<T>
where
    F: FnMut(T) -> Result<T>,
{
    if !(tol > T::zero()) {
        return Err(Error::invalid("integration tolerance must be positive"));
    }
    if a == b {
        return Ok(T::zero());
    }
    let (lo, hi, sign) = if a < b {
        (a, b, T::one())
    } else {
        (b, a, -T::one())
    };

    let mut cuts = vec![lo];
    cuts.extend(breaks.iter().copied().filter(|&c| c > lo && c < hi));
    cuts.push(hi);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));

    let mut heap = BinaryHeap::new();
    for w in cuts.windows(2) {
        heap.push(finite_segment(kronrod(&mut f, w[0], w[1])?)?);
    }

    let eps = T::epsilon();
    // never ask for more than ~50 ulps of the integral's magnitude
    let roundoff_floor = |heap: &BinaryHeap<Segment<T>>| {
        T::lit(50.0) * eps * heap.iter().fold(T::zero(), |acc, s| acc + s.value.abs())
    };
    let mut target = tol.max(roundoff_floor(&heap));
    let mut total_error = heap.iter().fold(T::zero(), |acc, s| acc + s.error);
    loop {
        if total_error <= target {
            // the running total drifts; confirm against a fresh sum
            total_error = heap.iter().fold(T::zero(), |acc, s| acc + s.error);
            target = tol.max(roundoff_floor(&heap));
            if total_error <= target {
                break;
            }
        }
        if heap.len() >= MAX_SEGMENTS {
            return Err(non_convergence(&heap, total_error));
        }
        let worst = heap.pop().expect("at least one segment");
        let mid = (worst.a + worst.b) / T::lit(2.0);
        // segment no longer splittable in this precision
        let floor = eps * T::lit(8.0) * worst.a.abs().max(worst.b.abs()).max(T::min_positive_value());
        if worst.b - worst.a <= floor {
            heap.push(worst);
            return Err(non_convergence(&heap, total_error));
        }
        let left = kronrod(&mut f, worst.a, mid)?;
        let right = kronrod(&mut f, mid, worst.b)?;
        // refinement ran into a non-integrable singularity
        if !(left.value.is_finite() && right.value.is_finite()) {
            heap.push(worst);
            return Err(non_convergence(&heap, total_error));
        }
        total_error = total_error - worst.error + left.error + right.error;
        heap.push(left);
        heap.push(right);
    }

    // deterministic summation order: left to right
    let mut segments = heap.into_vec();
    segments.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap_or(Ordering::Equal));
    let value = segments.iter().fold(T::zero(), |acc, s| acc + s.value);
    Ok(sign * value)
}

fn non_convergence<T: Real>(heap: &BinaryHeap<Segment<T>>, total_error: T) -> Error {
    let estimate = heap.iter().fold(T::zero(), |acc, s| acc + s.value);
    Error::NonConvergence {
        estimate: estimate.as_f64(),
        error_estimate: total_error.as_f64(),
        segments: heap.len(),
    }
}

pub fn integrate<T: Real, F>(f: F, a: T, b: T, tol: T) -> Result<T>
where
    F: FnMut(T) -> Result<T>,
{
    integrate_with_breaks(f, a, b, &[], tol)
}

/// Iterated integral `∫₀¹ ∫₀¹ g(outer, inner) d(inner) d(outer)`.
///
/// With `split_diagonal` the inner integral is split at `inner = outer`, for
/// integrands with a kink along the diagonal.
pub fn integrate_unit_square<T: Real, G>(mut g: G, split_diagonal: bool, tol: T) -> Result<T>
where
    G: FnMut(T, T) -> Result<T>,
{
    let inner_tol = tol / T::lit(10.0);
    let outer_tol = tol / T::lit(2.0);
    integrate(
        |outer| {
            let breaks = if split_diagonal { vec![outer] } else { Vec::new() };
            integrate_with_breaks(|inner| g(outer, inner), T::zero(), T::one(), &breaks, inner_tol)
        },
        T::zero(),
        T::one(),
        outer_tol,
    )
}
