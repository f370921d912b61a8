//! Composite Simpson quadrature on pieces split at known breakpoints.

/// Composite Simpson rule on `[a, b]` with `intervals` sub-intervals
/// (rounded up to an even count, at least 2).
pub fn simpson<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, intervals: usize) -> f64 {
    simpson_one_sided(f, a, b, intervals, false, false)
}

/// Simpson rule where an endpoint may be sampled one ulp inside the interval,
/// so that a function with a jump at the endpoint contributes its one-sided
/// limit.
fn simpson_one_sided<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    intervals: usize,
    inside_left: bool,
    inside_right: bool,
) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = intervals.max(2).next_multiple_of(2);
    let h = (b - a) / n as f64;
    let left = if inside_left { a.next_up().min(b) } else { a };
    let right = if inside_right { b.next_down().max(a) } else { b };
    let mut sum = f(left) + f(right);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + h * i as f64);
    }
    sum * h / 3.0
}

/// Integrates `f` over `[a, b]`, splitting at every breakpoint that falls
/// strictly inside. `total_intervals` is shared between pieces in proportion
/// to their length. Pieces are sampled from the inside at the breakpoints,
/// so jumps there do not leak into the neighbouring piece.
pub fn piecewise_simpson<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    total_intervals: usize,
) -> f64 {
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|w| *w > a && *w < b)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let width = b - a;
    let mut total = 0.0;
    let last = cuts.len();
    let mut left = a;
    for (i, right) in cuts.into_iter().chain(std::iter::once(b)).enumerate() {
        let share = ((right - left) / width * total_intervals as f64).round() as usize;
        total += simpson_one_sided(&mut f, left, right, share, i > 0, i < last);
        left = right;
    }
    total
}
