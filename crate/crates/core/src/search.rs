//! One-dimensional search primitives: monotone bisection with geometric
//! bracket growth, and golden-section minimization of unimodal functions.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Result of a bisection on a monotone predicate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    /// Largest point known to fail the predicate.
    pub lo: f64,
    /// Smallest point known to satisfy the predicate.
    pub hi: f64,
    pub iterations: usize,
}

/// Grows `hi` geometrically (doubling) until `pred(hi)` is true.
///
/// Returns `None` when the cap is passed without the predicate turning true.
pub fn grow_until(start: f64, cap: f64, mut pred: impl FnMut(f64) -> bool) -> Option<f64> {
    let mut x = start.max(f64::MIN_POSITIVE);
    while x <= cap {
        if pred(x) {
            return Some(x);
        }
        x *= 2.0;
    }
    None
}

/// Shrinks `lo` geometrically (halving) until `pred(lo)` is false.
pub fn shrink_until_false(start: f64, floor: f64, mut pred: impl FnMut(f64) -> bool) -> Option<f64> {
    let mut x = start;
    while x >= floor {
        if !pred(x) {
            return Some(x);
        }
        x *= 0.5;
    }
    None
}

/// Bisects a monotone predicate (false on `lo`, true on `hi`) on the positive
/// half-line, using geometric midpoints while both ends are positive.
///
/// Stops when the interval no longer shrinks in floating point, or when the
/// relative width drops below `rel_tol`.
pub fn bisect(
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
    max_iter: usize,
    mut pred: impl FnMut(f64) -> bool,
) -> Bracket {
    let mut iterations = 0;
    while iterations < max_iter {
        let mid = if lo > 0.0 && hi / lo > 4.0 {
            (lo * hi).sqrt()
        } else {
            lo + 0.5 * (hi - lo)
        };
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= rel_tol * hi.abs() {
            break;
        }
    }
    Bracket { lo, hi, iterations }
}

/// Minimum located by golden-section search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Expands around `x0` in steps that grow by 2 until the unimodal `f` rises on
/// both sides, then refines with golden-section search.
///
/// If `f` keeps decreasing until `max_expansions` is hit, the best point seen is
/// returned (the infimum is approached at the edge, not attained).
pub fn minimize_unimodal(
    mut f: impl FnMut(f64) -> f64,
    x0: f64,
    step0: f64,
    tol: f64,
    max_expansions: usize,
) -> Minimum {
    let f0 = f(x0);
    let mut best = Minimum { x: x0, value: f0, iterations: 0 };

    let mut step = step0;
    let (a, b);
    let fr = f(x0 + step);
    if fr < f0 {
        // walk right
        let mut prev = (x0, f0);
        let mut cur = (x0 + step, fr);
        let mut expansions = 0;
        loop {
            step *= 2.0;
            let next = (cur.0 + step, f(cur.0 + step));
            expansions += 1;
            if cur.1 < best.value {
                best = Minimum { x: cur.0, value: cur.1, iterations: expansions };
            }
            if next.1 >= cur.1 {
                a = prev.0;
                b = next.0;
                break;
            }
            if expansions >= max_expansions {
                if next.1 < best.value {
                    best = Minimum { x: next.0, value: next.1, iterations: expansions };
                }
                return best;
            }
            prev = cur;
            cur = next;
        }
    } else {
        let fl = f(x0 - step);
        if fl >= f0 {
            a = x0 - step;
            b = x0 + step;
        } else {
            let mut prev = (x0, f0);
            let mut cur = (x0 - step, fl);
            let mut expansions = 0;
            loop {
                step *= 2.0;
                let next = (cur.0 - step, f(cur.0 - step));
                expansions += 1;
                if cur.1 < best.value {
                    best = Minimum { x: cur.0, value: cur.1, iterations: expansions };
                }
                if next.1 >= cur.1 {
                    a = next.0;
                    b = prev.0;
                    break;
                }
                if expansions >= max_expansions {
                    if next.1 < best.value {
                        best = Minimum { x: next.0, value: next.1, iterations: expansions };
                    }
                    return best;
                }
                prev = cur;
                cur = next;
            }
        }
    }

    let g = golden_section(&mut f, a, b, tol, 400);
    if g.value < best.value {
        best = Minimum { iterations: best.iterations + g.iterations, ..g };
    }
    best
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
pub fn golden_section(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64, max_iter: usize) -> Minimum {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while (b - a).abs() > tol && iterations < max_iter {
        iterations += 1;
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
        Minimum { x: c, value: fc, iterations }
    } else {
        Minimum { x: d, value: fd, iterations }
    }
}
