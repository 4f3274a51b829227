//! Generators for the standard test drawings.
//!
//! Every generator is deterministic; `random_segments` and `random_graph` are
//! driven by a seeded ChaCha stream and reject candidates that would break
//! the input restrictions.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{int, parse_rational, rat, Point, Rational};
use crate::geometry::{point_segment_dist_sq, segment_intersection, Drawing, SegmentIntersection};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}")]
    UnknownName(String),
    #[error("invalid parameter {name}: {reason}")]
    InvalidParam { name: String, reason: String },
}

fn default_width() -> Rational {
    rat(1, 10)
}

fn seg(ax: Rational, ay: Rational, bx: Rational, by: Rational) -> (Point, Point) {
    (Point::new(ax, ay), Point::new(bx, by))
}

/// `h` horizontal and `v` vertical segments on a lattice of the given
/// spacing, each extending half a spacing past the outermost crossings.
/// Horizontals get edge ids `0..h`, verticals `h..h + v`.
pub fn grid(h: usize, v: usize, spacing: &Rational, w: &Rational) -> Drawing {
    let half = spacing / int(2);
    let mut segs = Vec::with_capacity(h + v);
    let x_end = spacing * int(v.max(1) as i64 - 1) + &half;
    let y_end = spacing * int(h.max(1) as i64 - 1) + &half;
    for i in 0..h {
        let y = spacing * int(i as i64);
        segs.push(seg(-half.clone(), y.clone(), x_end.clone(), y));
    }
    for j in 0..v {
        let x = spacing * int(j as i64);
        segs.push(seg(x.clone(), -half.clone(), x, y_end.clone()));
    }
    Drawing::from_segments(segs, w.clone()).expect("grid is well formed")
}

fn triangle_segments(dx: i64, dy: i64) -> Vec<(Point, Point)> {
    // Corners (0,0), (6,0), (3,4); sides along (1,0), (3,4) and (-3,4).
    let s = |ax: &str, ay: &str, bx: &str, by: &str| {
        let p = |x: &str, y: &str| {
            Point::new(parse_rational(x).unwrap() + int(dx), parse_rational(y).unwrap() + int(dy))
        };
        (p(ax, ay), p(bx, by))
    };
    vec![s("-2", "0", "8", "0"), s("-1.5", "-2", "4.5", "6"), s("7.5", "-2", "1.5", "6")]
}

/// Three pairwise crossing segments enclosing one triangle. Crossing angles
/// have `sin` equal to 4/5, 4/5 and 24/25.
pub fn triangle() -> Drawing {
    Drawing::from_segments(triangle_segments(0, 0), default_width()).unwrap()
}

pub fn two_triangles() -> Drawing {
    let mut segs = triangle_segments(0, 0);
    segs.extend(triangle_segments(20, 0));
    Drawing::from_segments(segs, default_width()).unwrap()
}

/// The five chords of a (rounded) regular pentagon; chords share the
/// pentagon's corners as vertices and the crossing graph is a 5-cycle.
pub fn pentagram() -> Drawing {
    let corners = [
        ("0", "10"),
        ("-9.511", "3.09"),
        ("-5.878", "-8.09"),
        ("5.878", "-8.09"),
        ("9.511", "3.09"),
    ];
    let vertices = corners
        .iter()
        .enumerate()
        .map(|(i, (x, y))| (i as u64, Point::new(parse_rational(x).unwrap(), parse_rational(y).unwrap())))
        .collect();
    let edges = (0..5u64).map(|i| (i, i, (i + 2) % 5)).collect();
    Drawing::new(vertices, edges, default_width()).unwrap()
}

/// Three families of `p` parallel lines (slopes 0, 2 and -2) whose
/// near-concurrencies leave many small vertex-free triangles.
pub fn parallel_triangles(p: usize) -> Drawing {
    let eps = rat(1, 5);
    let pi = p as i64;
    let reach = int(pi + 2);
    let mut segs = Vec::new();
    for i in 0..pi {
        segs.push(seg(int(-2 * pi - 2), int(i), int(3 * pi + 2), int(i)));
    }
    for j in 0..pi {
        // through (j, 0) along (1, 2)
        let (x0, y0) = (int(j), int(0));
        segs.push(seg(&x0 - &reach, &y0 - &reach * int(2), &x0 + &reach, &y0 + &reach * int(2)));
    }
    for l in 0..pi {
        // through (l + eps, 0) along (1, -2)
        let x0 = int(l) + &eps;
        segs.push(seg(&x0 - &reach, &reach * int(2), &x0 + &reach, -(&reach * int(2))));
    }
    Drawing::from_segments(segs, rat(1, 100)).unwrap()
}

/// Four bundles of `c` parallel edges on the sides of a diamond (each bundle
/// crosses its two neighbours near a corner) around a `normals x normals`
/// grid of axis-parallel "normal" segments. Every normal crosses exactly two
/// bundles, one at each end.
fn bundled_grid(normals: usize, c: usize) -> Drawing {
    let r = int(8);
    let spread = rat(4, 5);
    let gap = &spread / int(c as i64);
    let spacing = rat(6, 5);
    let mut segs = Vec::new();
    let offsets: Vec<Rational> = (0..c).map(|k| &gap * int(k as i64)).collect();
    let lo = -(&r + int(2) + &spread);
    let hi = int(2) + &spread;
    for o in &offsets {
        let b = &r + o;
        // upper-left y = x + b, upper-right y = -x + b,
        // lower-right y = x - b, lower-left y = -x - b
        segs.push(seg(lo.clone(), &lo + &b, hi.clone(), &hi + &b));
        segs.push(seg(-hi.clone(), &hi + &b, -lo.clone(), &lo + &b));
        segs.push(seg(-hi.clone(), -&hi - &b, -lo.clone(), -&lo - &b));
        segs.push(seg(lo.clone(), -&lo - &b, hi.clone(), -&hi - &b));
    }
    let centre = Rational::from(num_bigint::BigInt::from(normals as i64 - 1)) / int(2);
    for j in 0..normals {
        let x = (int(j as i64) - &centre) * &spacing;
        let ext = &r - num_traits::Signed::abs(&x) + &spread + rat(1, 10);
        segs.push(seg(x.clone(), -ext.clone(), x, ext));
    }
    for i in 0..normals {
        let y = (int(i as i64) - &centre) * &spacing;
        let ext = &r - num_traits::Signed::abs(&y) + &spread + rat(1, 10);
        segs.push(seg(-ext.clone(), y.clone(), ext, y));
    }
    Drawing::from_segments(segs, rat(1, 100)).unwrap()
}

/// Four bundles of `c` parallel edges in a crossing cycle plus two vertical
/// and two horizontal single segments, each crossing two bundles and both
/// singles of the other orientation.
///
/// The bundles sit on the sides of a diamond and the singles form a 2 x 2
/// grid in its middle; each single meets one bundle near each of its ends.
/// The minimum total is 4 switches for c = 1 to 5 (enumerated at c = 1).
pub fn bundle_square(c: usize) -> Drawing {
    bundled_grid(2, c)
}

/// Bundles of `c` parallel edges around a 4 x 4 grid of normal segments,
/// built like [`bundle_square`].
///
/// Deviation: the intended construction forces a perfect 4 x 4 weave of the
/// normals with 12 switches. This geometry does not force it. For
/// c = 1, 2, 3, 5 and 13 the minimum total is 8 switches (the exact weaving
/// solver, with a casing attaining it), against an odd-face bound of 4.
pub fn weave_grid(c: usize) -> Drawing {
    bundled_grid(4, c)
}

/// A closed cycle of equal-length segments with slopes in
/// {-4, -1/4, +1/4, +4}; consecutive segments cross, alternating between
/// perpendicular crossings and crossings at angle `2 arctan(1/4)`.
///
/// `len` must be a positive multiple of 8.
pub fn np_slopes_cycle(len: usize) -> Result<Drawing, FixtureError> {
    if len == 0 || !len.is_multiple_of(8) {
        return Err(FixtureError::InvalidParam {
            name: "len".into(),
            reason: format!("must be a positive multiple of 8, got {len}"),
        });
    }
    let d = [(1, 4), (-4, 1), (-4, -1), (1, -4), (-1, -4), (4, -1), (4, 1), (-1, 4)];
    let units = (len - 8) / 8;
    // Octagon d0..d7, with saw-tooth units stretched into its top (after d2)
    // and bottom (after d6).
    let mut seq: Vec<usize> = vec![0, 1, 2];
    for _ in 0..units {
        seq.extend([7, 4, 1, 2]);
    }
    seq.extend([3, 4, 5, 6]);
    for _ in 0..units {
        seq.extend([3, 0, 5, 6]);
    }
    seq.push(7);
    let mut corners = vec![(0i64, 0i64)];
    for &k in &seq {
        let (x, y) = *corners.last().unwrap();
        corners.push((x + d[k].0, y + d[k].1));
    }
    assert_eq!(corners.pop(), Some((0, 0)));
    let ext = rat(1, 5);
    let segs = (0..corners.len())
        .map(|i| {
            let a = Point::from_ints(corners[i].0, corners[i].1);
            let b = Point::from_ints(corners[(i + 1) % corners.len()].0, corners[(i + 1) % corners.len()].1);
            let dir = b.sub(&a);
            (a.sub(&dir.scale(&ext)), b.add(&dir.scale(&ext)))
        })
        .collect();
    Ok(Drawing::from_segments(segs, rat(1, 10)).unwrap())
}

/// Incremental validity checks used by the random generators.
struct Builder {
    segs: Vec<(Point, Point)>,
    crossings: HashSet<Point>,
    tol_sq: Rational,
    /// Whether equal endpoints denote one shared vertex.
    shared_vertices: bool,
}

impl Builder {
    fn new(w: &Rational, shared_vertices: bool) -> Self {
        let tol = w / int(2);
        Builder { segs: Vec::new(), crossings: HashSet::new(), tol_sq: &tol * &tol, shared_vertices }
    }

    /// Adds segment `ab` unless it would break the input restrictions.
    fn try_add(&mut self, a: Point, b: Point) -> bool {
        if a == b {
            return false;
        }
        let mut new_points = HashSet::new();
        for (p, q) in &self.segs {
            let shares = |x: &Point| self.shared_vertices && (x == p || x == q);
            // Endpoints near the other's edge.
            for x in [&a, &b] {
                if !shares(x) && point_segment_dist_sq(x, p, q) <= self.tol_sq {
                    return false;
                }
            }
            for x in [p, q] {
                let shared = self.shared_vertices && (x == &a || x == &b);
                if !shared && point_segment_dist_sq(x, &a, &b) <= self.tol_sq {
                    return false;
                }
            }
            match segment_intersection(&a, &b, p, q) {
                SegmentIntersection::Degenerate => return false,
                SegmentIntersection::Crossing(c) => {
                    if self.crossings.contains(&c.point) || !new_points.insert(c.point) {
                        return false;
                    }
                }
                SegmentIntersection::None => {}
            }
        }
        self.crossings.extend(new_points);
        self.segs.push((a, b));
        true
    }
}

fn decimal(hundredths: i64) -> Rational {
    rat(hundredths, 100)
}

/// `count` disjoint-endpoint segments with centres uniform in the square
/// `[0, size]^2` and lengths uniform in `[min_len, max_len]`; coordinates are
/// rounded to hundredths.
pub fn random_segments(count: usize, seed: u64, size: f64, min_len: f64, max_len: f64) -> Drawing {
    let w = default_width();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new(&w, false);
    let mut attempts = 0usize;
    while b.segs.len() < count {
        attempts += 1;
        assert!(attempts < 1000 * (count + 10), "could not place {count} segments");
        let cx = rng.gen_range(0.0..size);
        let cy = rng.gen_range(0.0..size);
        let angle = rng.gen_range(0.0..std::f64::consts::PI);
        let len = rng.gen_range(min_len..=max_len);
        let (hx, hy) = (angle.cos() * len / 2.0, angle.sin() * len / 2.0);
        let r = |v: f64| decimal((v * 100.0).round() as i64);
        b.try_add(Point::new(r(cx - hx), r(cy - hy)), Point::new(r(cx + hx), r(cy + hy)));
    }
    Drawing::from_segments(b.segs, w).unwrap()
}

/// A random geometric graph: `n` points on a 1/100 lattice in `[0, size]^2`
/// and up to `m` straight edges between them (fewer if the rejection budget
/// runs out).
pub fn random_graph(n: usize, m: usize, seed: u64, size: f64) -> Drawing {
    let w = default_width();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = (size * 100.0) as i64;
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let mut seen = HashSet::new();
    while pts.len() < n {
        let (x, y) = (rng.gen_range(0..=steps), rng.gen_range(0..=steps));
        if seen.insert((x, y)) {
            pts.push(Point::new(decimal(x), decimal(y)));
        }
    }
    let mut b = Builder::new(&w, true);
    let mut used = HashSet::new();
    let mut edges = Vec::new();
    let mut attempts = 0;
    while edges.len() < m && attempts < 200 * (m + 10) {
        attempts += 1;
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let key = (i.min(j), i.max(j));
        if i == j || used.contains(&key) {
            continue;
        }
        // Non-incident points must stay clear of the new edge too.
        let tol = b.tol_sq.clone();
        if pts.iter().enumerate().any(|(k, p)| k != i && k != j && point_segment_dist_sq(p, &pts[i], &pts[j]) <= tol) {
            continue;
        }
        if b.try_add(pts[i].clone(), pts[j].clone()) {
            used.insert(key);
            edges.push((edges.len() as u64, i as u64, j as u64));
        }
    }
    let vertices = pts.into_iter().enumerate().map(|(i, p)| (i as u64, p)).collect();
    Drawing::new(vertices, edges, w).unwrap()
}

/// Named fixture lookup used by the command line. Parameters are given as
/// `key=value` pairs; unknown keys are rejected.
pub fn generate_fixture(name: &str, params: &BTreeMap<String, String>, seed: u64) -> Result<Drawing, FixtureError> {
    let mut params = params.clone();
    let mut take = |key: &str| params.remove(key);
    fn parse<T: std::str::FromStr>(key: &str, v: Option<String>, default: T) -> Result<T, FixtureError> {
        match v {
            None => Ok(default),
            Some(s) => s.parse().map_err(|_| FixtureError::InvalidParam {
                name: key.to_string(),
                reason: format!("cannot parse {s:?}"),
            }),
        }
    }
    let rational = |key: &str, v: Option<String>, default: Rational| -> Result<Rational, FixtureError> {
        match v {
            None => Ok(default),
            Some(s) => parse_rational(&s).map_err(|e| FixtureError::InvalidParam { name: key.into(), reason: e.to_string() }),
        }
    };
    let positive = |key: &str, v: usize| {
        if v == 0 {
            Err(FixtureError::InvalidParam { name: key.into(), reason: "must be positive".into() })
        } else {
            Ok(v)
        }
    };
    let width = take("w");
    let drawing = match name {
        "grid" => {
            let h = positive("h", parse("h", take("h"), 3usize)?)?;
            let v = positive("v", parse("v", take("v"), 3usize)?)?;
            let s = rational("spacing", take("spacing"), Rational::one())?;
            if s <= Rational::zero() {
                return Err(FixtureError::InvalidParam { name: "spacing".into(), reason: "must be positive".into() });
            }
            grid(h, v, &s, &default_width())
        }
        "pentagram" => pentagram(),
        "triangle" => triangle(),
        "two-triangles" => two_triangles(),
        "parallel-triangles" => parallel_triangles(positive("p", parse("p", take("p"), 3usize)?)?),
        "bundle-square" => bundle_square(positive("c", parse("c", take("c"), 5usize)?)?),
        "weave-grid" => weave_grid(positive("c", parse("c", take("c"), 13usize)?)?),
        "np-slopes-cycle" => np_slopes_cycle(parse("len", take("len"), 8usize)?)?,
        "random-segments" => {
            let count = parse("count", take("count"), 8usize)?;
            let size = parse("size", take("size"), 10.0f64)?;
            let min_len = parse("min_len", take("min_len"), 3.0f64)?;
            let max_len = parse("max_len", take("max_len"), 8.0f64)?;
            if !(size > 0.0 && min_len > 0.0 && max_len >= min_len) {
                return Err(FixtureError::InvalidParam {
                    name: "size/min_len/max_len".into(),
                    reason: "need size > 0 and 0 < min_len <= max_len".into(),
                });
            }
            random_segments(count, seed, size, min_len, max_len)
        }
        "random-graph" => {
            let n = parse("n", take("n"), 8usize)?;
            let m = parse("m", take("m"), 10usize)?;
            let size = parse("size", take("size"), 10.0f64)?;
            if n < 2 {
                return Err(FixtureError::InvalidParam { name: "n".into(), reason: "need at least 2 vertices".into() });
            }
            random_graph(n, m, seed, size)
        }
        other => return Err(FixtureError::UnknownName(other.to_string())),
    };
    if let Some(key) = params.keys().next() {
        return Err(FixtureError::InvalidParam { name: key.clone(), reason: "unknown parameter".into() });
    }
    match width {
        None => Ok(drawing),
        Some(w) => {
            let w = rational("w", Some(w), default_width())?;
            drawing
                .with_casing_width(w)
                .map_err(|e| FixtureError::InvalidParam { name: "w".into(), reason: e.to_string() })
        }
    }
}
