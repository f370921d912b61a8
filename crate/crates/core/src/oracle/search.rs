//! Grid-and-refine maximization. A uniform grid is scanned, then the box is
//! shrunk tenfold around the incumbent and scanned again, `rounds` times.
//!
//! Ties are resolved after each scan rather than during it, so the result is
//! independent of evaluation order: all points within a tiny tolerance of the
//! best value are candidates, and the tie-break key picks among them.

/// In two dimensions, values within this relative distance of the best are
/// treated as ties: plateaus of the joint objective are only flat up to
/// rounding. One-dimensional searches use exact ties.
const TIE_TOLERANCE_2D: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Incumbent<P> {
    pub point: P,
    pub value: f64,
}

/// Per-round record of a refinement run.
#[derive(Debug, Clone, PartialEq)]
pub struct RefineTrace<P> {
    pub rounds: Vec<Incumbent<P>>,
    /// Grid spacing (per axis) of the last scan.
    pub final_step: Vec<f64>,
}

impl<P: Copy> RefineTrace<P> {
    pub fn best(&self) -> Incumbent<P> {
        *self.rounds.last().expect("at least one scan")
    }
}

fn grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(move |i| if i + 1 == points { hi } else { lo + step * i as f64 })
}

/// Picks the winner among scanned candidates. `key` orders ties; smaller wins.
fn select<P: Copy, K: PartialOrd>(
    candidates: &[Incumbent<P>],
    tolerance: f64,
    key: impl Fn(&P) -> K,
) -> Incumbent<P> {
    let best = candidates
        .iter()
        .map(|c| c.value)
        .fold(f64::NEG_INFINITY, f64::max);
    let floor = best - tolerance * best.abs().max(1.0);
    let mut winner: Option<Incumbent<P>> = None;
    for c in candidates.iter().filter(|c| c.value >= floor) {
        winner = match winner {
            Some(w) if key(&w.point) <= key(&c.point) => Some(w),
            _ => Some(*c),
        };
    }
    winner.expect("non-empty grid")
}

/// Shrinks `[lo, hi]` tenfold around `centre`, shifting to stay inside
/// `[min, max]`.
fn shrink(lo: f64, hi: f64, centre: f64, min: f64, max: f64) -> (f64, f64) {
    let half = (hi - lo) / 20.0;
    let (mut a, mut b) = (centre - half, centre + half);
    if a < min {
        b += min - a;
        a = min;
    }
    if b > max {
        a -= b - max;
        b = max;
    }
    (a.max(min), b.min(max))
}

/// One-dimensional maximization on `[lo, hi]`; ties go to the smaller argument.
pub fn maximize_1d<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    points: usize,
    rounds: usize,
) -> RefineTrace<f64> {
    assert!(points >= 3 && lo <= hi);
    let (mut a, mut b) = (lo, hi);
    let mut trace = RefineTrace {
        rounds: Vec::with_capacity(rounds + 1),
        final_step: vec![0.0],
    };
    for _ in 0..=rounds {
        let mut candidates: Vec<Incumbent<f64>> =
            grid(a, b, points).map(|x| Incumbent { point: x, value: f(x) }).collect();
        if let Some(prev) = trace.rounds.last() {
            candidates.push(*prev);
        }
        let winner = select(&candidates, 0.0, |x| *x);
        trace.rounds.push(winner);
        trace.final_step = vec![(b - a) / (points - 1) as f64];
        (a, b) = shrink(a, b, winner.point, lo, hi);
    }
    trace
}

/// Axis-aligned box for [`maximize_2d`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Box2 {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

/// Two-dimensional maximization. `key` ranks tied points; smaller wins.
pub fn maximize_2d<F, K>(
    mut f: F,
    bounds: Box2,
    points: usize,
    rounds: usize,
    key: impl Fn(&(f64, f64)) -> K,
) -> RefineTrace<(f64, f64)>
where
    F: FnMut(f64, f64) -> f64,
    K: PartialOrd,
{
    assert!(points >= 3);
    let mut current = bounds;
    let mut trace = RefineTrace {
        rounds: Vec::with_capacity(rounds + 1),
        final_step: vec![0.0, 0.0],
    };
    let mut candidates = Vec::with_capacity(points * points + 1);
    for _ in 0..=rounds {
        candidates.clear();
        for x in grid(current.x.0, current.x.1, points) {
            for y in grid(current.y.0, current.y.1, points) {
                candidates.push(Incumbent {
                    point: (x, y),
                    value: f(x, y),
                });
            }
        }
        if let Some(prev) = trace.rounds.last() {
            candidates.push(*prev);
        }
        let winner = select(&candidates, TIE_TOLERANCE_2D, &key);
        trace.rounds.push(winner);
        let denom = (points - 1) as f64;
        trace.final_step = vec![
            (current.x.1 - current.x.0) / denom,
            (current.y.1 - current.y.0) / denom,
        ];
        current = Box2 {
            x: shrink(current.x.0, current.x.1, winner.point.0, bounds.x.0, bounds.x.1),
            y: shrink(current.y.0, current.y.1, winner.point.1, bounds.y.0, bounds.y.1),
        };
    }
    trace
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_peak() {
        let t = maximize_1d(|x| -(x - 0.123_456_7).powi(2), -3.0, 5.0, 201, 8);
        assert!((t.best().point - 0.123_456_7).abs() < 1e-8);
    }

    #[test]
    fn rounds_never_lose_ground() {
        let t = maximize_2d(
            |x, y| -(x - 0.3).powi(2) - 2.0 * (y - 1.7).powi(2) + 0.5 * x * y,
            Box2 { x: (-4.0, 4.0), y: (0.0, 4.0) },
            21,
            5,
            |p| (p.1, p.0.abs()),
        );
        for w in t.rounds.windows(2) {
            assert!(w[1].value >= w[0].value);
        }
        let width = 8.0;
        assert!(t.final_step[0] <= width * 1e-5 / 20.0 * (1.0 + 1e-9));
    }

    #[test]
    fn ties_go_to_smaller_key() {
        // Flat plateau for y >= 1.
        let t = maximize_2d(
            |_, y| if y >= 1.0 { 0.0 } else { -(1.0 - y).powi(2) },
            Box2 { x: (-1.0, 1.0), y: (0.0, 2.0) },
            21,
            2,
            |p| (p.1, p.0.abs()),
        );
        let best = t.best().point;
        assert!((best.1 - 1.0).abs() < 1e-12);
        assert!(best.0.abs() < 1e-12);
    }

    #[test]
    fn shrink_stays_inside_bounds() {
        let (a, b) = shrink(0.0, 10.0, 0.1, 0.0, 10.0);
        assert_eq!((a, b), (0.0, 1.0));
        let (a, b) = shrink(0.0, 10.0, 9.9, 0.0, 10.0);
        assert_eq!((a, b), (9.0, 10.0));
    }

    #[test]
    fn boundary_optimum_in_one_dimension() {
        let t = maximize_1d(|x| -x, 0.0, 2.0, 11, 3);
        assert_eq!(t.best().point, 0.0);
    }
}
