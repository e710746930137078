//! Newton polygons of the affine fibers and Baker's genus bound.

use num_integer::Integer;

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Vertices of the convex hull in counter-clockwise order (monotone chain).
pub fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() <= 2 {
        return p;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Number of lattice points strictly inside the convex hull, by Pick's theorem.
pub fn interior_points(points: &[(i64, i64)]) -> u64 {
    let h = convex_hull(points);
    if h.len() < 3 {
        return 0;
    }
    let n = h.len();
    let mut area2 = 0i64;
    let mut boundary = 0i64;
    for i in 0..n {
        let (a, b) = (h[i], h[(i + 1) % n]);
        area2 += a.0 * b.1 - a.1 * b.0;
        boundary += (b.0 - a.0).abs().gcd(&(b.1 - a.1).abs());
    }
    // 2A = 2I + B - 2
    ((area2.abs() - boundary + 2) / 2) as u64
}

/// Three of the points on one line, if any (indices in input order).
pub fn collinear_triple(points: &[(i64, i64)]) -> Option<[usize; 3]> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if points[i] != points[j]
                    && points[j] != points[k]
                    && points[i] != points[k]
                    && cross(points[i], points[j], points[k]) == 0
                {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}
