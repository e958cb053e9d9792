//! Derivative-free scalar minimization.

/// `(√5 − 1) / 2`
pub const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of a unimodal `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `width`. Returns `(x, f(x))` for the best point seen.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, width: f64) -> (f64, f64) {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    // Each iteration shrinks the bracket by INV_PHI; 200 covers any f64 span.
    for _ in 0..200 {
        if b - a <= width {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Scans `samples` evenly spaced points of `[lo, hi]`, then refines the best cell with
/// golden-section search. Guards against profiles that are not unimodal on the whole interval.
pub fn scan_then_golden<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, samples: usize, width: f64) -> (f64, f64) {
    let n = samples.max(3);
    let step = (hi - lo) / (n - 1) as f64;
    let mut best = (lo, f(lo));
    let mut best_i = 0;
    for i in 1..n {
        let x = if i == n - 1 { hi } else { lo + step * i as f64 };
        let fx = f(x);
        if fx < best.1 {
            best = (x, fx);
            best_i = i;
        }
    }
    let a = lo + step * best_i.saturating_sub(1) as f64;
    let b = (lo + step * (best_i + 1) as f64).min(hi);
    let refined = golden_section(&f, a, b, width);
    if refined.1 <= best.1 {
        refined
    } else {
        best
    }
}
