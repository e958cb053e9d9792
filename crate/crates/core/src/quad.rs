//! Adaptive Simpson quadrature.

/// Default absolute tolerance for volume integrals.
pub const ABS_TOL: f64 = 1e-10;
/// Maximum bisection depth.
pub const MAX_DEPTH: u32 = 40;

/// Integrates `f` over `[a, b]` by adaptive Simpson bisection to absolute tolerance `tol`.
///
/// The per-interval tolerance halves on each split but never drops below a few ulps of the
/// running estimate, so rounding noise in `f` cannot drive the recursion to `max_depth`
/// everywhere.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, max_depth: u32) -> f64 {
    if b <= a {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(&f, a, b, fa, fm, fb, whole, tol, max_depth)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    let floor = 4.0 * f64::EPSILON * (left.abs() + right.abs());
    if depth == 0 || delta.abs() <= 15.0 * tol.max(floor) {
        return left + right + delta / 15.0;
    }
    recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}
