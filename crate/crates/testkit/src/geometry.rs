//! Sampling and winding-number references for polygon checks.

use std::f64::consts::PI;

use rand::Rng;

use crate::Ring;

/// Winding number of `ring` around `p`. Non-zero means inside.
pub fn winding_number(p: (f64, f64), ring: &[(f64, f64)]) -> i32 {
    let mut wn = 0;
    let n = ring.len();
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        let is_left = (b.0 - a.0) * (p.1 - a.1) - (p.0 - a.0) * (b.1 - a.1);
        if a.1 <= p.1 {
            if b.1 > p.1 && is_left > 0.0 {
                wn += 1;
            }
        } else if b.1 <= p.1 && is_left < 0.0 {
            wn -= 1;
        }
    }
    wn
}

/// Distance from `p` to the ring's boundary.
pub fn boundary_distance(p: (f64, f64), ring: &[(f64, f64)]) -> f64 {
    let n = ring.len();
    (0..n)
        .map(|i| {
            let a = ring[i];
            let b = ring[(i + 1) % n];
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let len2 = dx * dx + dy * dy;
            let t = if len2 == 0.0 {
                0.0
            } else {
                (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
            };
            let (qx, qy) = (a.0 + t * dx, a.1 + t * dy);
            ((p.0 - qx).powi(2) + (p.1 - qy).powi(2)).sqrt()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Convex polygon with `n` vertices on an ellipse around `center`, random
/// angles, counter-clockwise.
pub fn random_convex_polygon<R: Rng>(
    rng: &mut R,
    n: usize,
    center: (f64, f64),
    radius: (f64, f64),
) -> Ring {
    let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup();
    let rot = rng.gen_range(0.0..PI);
    angles
        .into_iter()
        .map(|t| {
            let (x, y) = (radius.0 * t.cos(), radius.1 * t.sin());
            (
                center.0 + x * rot.cos() - y * rot.sin(),
                center.1 + x * rot.sin() + y * rot.cos(),
            )
        })
        .collect()
}

/// Mean of `samples` points drawn uniformly inside `ring` by rejection from
/// its bounding box.
pub fn monte_carlo_centroid<R: Rng>(
    rng: &mut R,
    ring: &[(f64, f64)],
    samples: usize,
) -> (f64, f64) {
    let (mut w, mut s, mut e, mut n) = (
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in ring {
        w = w.min(x);
        e = e.max(x);
        s = s.min(y);
        n = n.max(y);
    }
    let (mut sx, mut sy, mut got) = (0.0, 0.0, 0usize);
    while got < samples {
        let p = (rng.gen_range(w..e), rng.gen_range(s..n));
        if winding_number(p, ring) != 0 {
            sx += p.0;
            sy += p.1;
            got += 1;
        }
    }
    (sx / samples as f64, sy / samples as f64)
}
