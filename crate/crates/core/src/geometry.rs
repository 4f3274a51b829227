//! Drawings, exact segment predicates, tunnel lengths and input validation.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::{One, Signed, Zero};

use crate::exact::{format_rational, int, rat, to_f64, Point, Rational, RootSum};

pub type VertexId = u64;
pub type EdgeId = u64;

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub id: VertexId,
    pub pos: Point,
}

/// A straight edge between two vertices, stored by vertex index.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DrawingError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("edge {edge} references missing vertex {vertex}")]
    MissingVertex { edge: EdgeId, vertex: VertexId },
    #[error("edge {0} has zero length")]
    ZeroLength(EdgeId),
    #[error("casing width must be positive, got {0}")]
    NonPositiveWidth(String),
}

/// A straight-line drawing with exact coordinates and a casing width.
///
/// Edges are kept sorted by id; every algorithm in the crate refers to edges
/// by their index in that order, so "lowest edge id" and "lowest index"
/// coincide.
#[derive(Debug, Clone, PartialEq)]
pub struct Drawing {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    casing_width: Rational,
}

impl Drawing {
    pub fn new(
        vertices: Vec<(VertexId, Point)>,
        edges: Vec<(EdgeId, VertexId, VertexId)>,
        casing_width: Rational,
    ) -> Result<Self, DrawingError> {
        if !casing_width.is_positive() {
            return Err(DrawingError::NonPositiveWidth(format_rational(&casing_width)));
        }
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, (id, _)) in vertices.iter().enumerate() {
            if index.insert(*id, i).is_some() {
                return Err(DrawingError::DuplicateVertex(*id));
            }
        }
        let vertices: Vec<Vertex> = vertices.into_iter().map(|(id, pos)| Vertex { id, pos }).collect();
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (id, a, b) in edges {
            if !seen.insert(id) {
                return Err(DrawingError::DuplicateEdge(id));
            }
            let u = *index.get(&a).ok_or(DrawingError::MissingVertex { edge: id, vertex: a })?;
            let v = *index.get(&b).ok_or(DrawingError::MissingVertex { edge: id, vertex: b })?;
            if vertices[u].pos == vertices[v].pos {
                return Err(DrawingError::ZeroLength(id));
            }
            out.push(Edge { id, u, v });
        }
        out.sort_by_key(|e| e.id);
        Ok(Drawing { vertices, edges: out, casing_width })
    }

    /// Disjoint segments, one per entry; vertex ids `2i` and `2i + 1`, edge id `i`.
    pub fn from_segments(segments: Vec<(Point, Point)>, casing_width: Rational) -> Result<Self, DrawingError> {
        let mut vertices = Vec::with_capacity(2 * segments.len());
        let mut edges = Vec::with_capacity(segments.len());
        for (i, (a, b)) in segments.into_iter().enumerate() {
            let i = i as u64;
            vertices.push((2 * i, a));
            vertices.push((2 * i + 1, b));
            edges.push((i, 2 * i, 2 * i + 1));
        }
        Drawing::new(vertices, edges, casing_width)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn casing_width(&self) -> &Rational {
        &self.casing_width
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: usize) -> (&Point, &Point) {
        let edge = &self.edges[e];
        (&self.vertices[edge.u].pos, &self.vertices[edge.v].pos)
    }

    pub fn direction(&self, e: usize) -> Point {
        let (a, b) = self.endpoints(e);
        b.sub(a)
    }

    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    /// Same combinatorics with every coordinate (and the casing width)
    /// multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Drawing {
        let mut d = self.clone();
        for v in &mut d.vertices {
            v.pos = v.pos.scale(factor);
        }
        d.casing_width = &d.casing_width * factor;
        d
    }

    pub fn with_casing_width(&self, w: Rational) -> Result<Drawing, DrawingError> {
        if !w.is_positive() {
            return Err(DrawingError::NonPositiveWidth(format_rational(&w)));
        }
        let mut d = self.clone();
        d.casing_width = w;
        Ok(d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingPoint {
    pub point: Point,
    /// Position along the first segment, in `(0, 1)`.
    pub param_a: Rational,
    /// Position along the second segment, in `(0, 1)`.
    pub param_b: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentIntersection {
    /// Transversal crossing of the two open segments.
    Crossing(CrossingPoint),
    /// Collinear overlap of positive length.
    Degenerate,
    None,
}

/// Exact intersection test of the segments `p1p2` and `q1q2`.
///
/// Endpoint touches and shared endpoints are not crossings.
pub fn segment_intersection(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> SegmentIntersection {
    let d1 = p2.sub(p1);
    let d2 = q2.sub(q1);
    let den = d1.cross(&d2);
    let w = q1.sub(p1);
    if den.is_zero() {
        if !w.cross(&d1).is_zero() {
            return SegmentIntersection::None;
        }
        let len = d1.norm_sq();
        let t0 = w.dot(&d1) / &len;
        let t1 = q2.sub(p1).dot(&d1) / &len;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = if lo > Rational::zero() { lo } else { Rational::zero() };
        let hi = if hi < Rational::one() { hi } else { Rational::one() };
        return if lo < hi { SegmentIntersection::Degenerate } else { SegmentIntersection::None };
    }
    let s = w.cross(&d2) / &den;
    let t = w.cross(&d1) / &den;
    let open = |x: &Rational| x.is_positive() && *x < Rational::one();
    if open(&s) && open(&t) {
        SegmentIntersection::Crossing(CrossingPoint { point: p1.lerp(p2, &s), param_a: s, param_b: t })
    } else {
        SegmentIntersection::None
    }
}

/// `sin(alpha)` of the acute or right angle between two lines, kept exactly
/// as its rational square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SinAngle {
    sin_sq: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("parallel edges do not define a crossing angle")]
    Parallel,
    #[error("sin must lie in (0, 1], got sin^2 = {0}")]
    OutOfRange(String),
}

impl SinAngle {
    pub fn from_sin_sq(sin_sq: Rational) -> Result<Self, GeometryError> {
        if !sin_sq.is_positive() || sin_sq > Rational::one() {
            return Err(GeometryError::OutOfRange(format_rational(&sin_sq)));
        }
        Ok(SinAngle { sin_sq })
    }

    pub fn sin_sq(&self) -> &Rational {
        &self.sin_sq
    }

    pub fn value(&self) -> RootSum {
        RootSum::sqrt_of(Rational::one(), &self.sin_sq)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.sin_sq).sqrt()
    }
}

/// `sin^2(alpha) = cross(d1, d2)^2 / (|d1|^2 |d2|^2)` for direction vectors.
pub fn crossing_angle_sin(d1: &Point, d2: &Point) -> Result<SinAngle, GeometryError> {
    let c = d1.cross(d2);
    if c.is_zero() {
        return Err(GeometryError::Parallel);
    }
    SinAngle::from_sin_sq(&c * &c / (d1.norm_sq() * d2.norm_sq()))
}

/// Length `w / sin(alpha)` of a tunnel.
pub fn tunnel_length(w: &Rational, sin: &SinAngle) -> RootSum {
    RootSum::sqrt_of(w.clone(), &(Rational::one() / sin.sin_sq()))
}

/// One transversal crossing found by the pairwise scan, edges by index with
/// `a < b`.
#[derive(Debug, Clone)]
pub(crate) struct RawCrossing {
    pub a: usize,
    pub b: usize,
    pub hit: CrossingPoint,
}

struct BBox {
    lo: (f64, f64),
    hi: (f64, f64),
}

impl BBox {
    fn of(a: &Point, b: &Point, pad: f64) -> Self {
        let (ax, ay) = a.to_f64();
        let (bx, by) = b.to_f64();
        let slack = |v: f64| v.abs() * 1e-9 + 1e-12;
        let lo = (ax.min(bx), ay.min(by));
        let hi = (ax.max(bx), ay.max(by));
        BBox {
            lo: (lo.0 - pad - slack(lo.0), lo.1 - pad - slack(lo.1)),
            hi: (hi.0 + pad + slack(hi.0), hi.1 + pad + slack(hi.1)),
        }
    }

    fn overlaps(&self, o: &BBox) -> bool {
        self.lo.0 <= o.hi.0 && o.lo.0 <= self.hi.0 && self.lo.1 <= o.hi.1 && o.lo.1 <= self.hi.1
    }

    fn contains(&self, p: (f64, f64)) -> bool {
        self.lo.0 <= p.0 && p.0 <= self.hi.0 && self.lo.1 <= p.1 && p.1 <= self.hi.1
    }
}

/// All pairwise crossings (sorted by edge pair) and overlapping pairs.
pub(crate) fn pairwise_intersections(d: &Drawing) -> (Vec<RawCrossing>, Vec<(usize, usize)>) {
    let m = d.num_edges();
    let boxes: Vec<BBox> = (0..m)
        .map(|e| {
            let (a, b) = d.endpoints(e);
            BBox::of(a, b, 0.0)
        })
        .collect();
    let mut crossings = Vec::new();
    let mut overlaps = Vec::new();
    for a in 0..m {
        let (p1, p2) = d.endpoints(a);
        for b in a + 1..m {
            if !boxes[a].overlaps(&boxes[b]) {
                continue;
            }
            let (q1, q2) = d.endpoints(b);
            match segment_intersection(p1, p2, q1, q2) {
                SegmentIntersection::Crossing(hit) => crossings.push(RawCrossing { a, b, hit }),
                SegmentIntersection::Degenerate => overlaps.push((a, b)),
                SegmentIntersection::None => {}
            }
        }
    }
    (crossings, overlaps)
}

/// Squared distance from `p` to the closed segment `ab`.
pub fn point_segment_dist_sq(p: &Point, a: &Point, b: &Point) -> Rational {
    let d = b.sub(a);
    let t = p.sub(a).dot(&d) / d.norm_sq();
    if !t.is_positive() {
        p.dist_sq(a)
    } else if t >= Rational::one() {
        p.dist_sq(b)
    } else {
        p.dist_sq(&a.lerp(b, &t))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    /// A vertex lies on, or within the tolerance of, a non-incident edge.
    VertexNearEdge { vertex: VertexId, edge: EdgeId },
    /// Three or more edges pass through one crossing point.
    Concurrent { edges: Vec<EdgeId>, point: Point },
    /// Two edges overlap along a positive length.
    Overlap { a: EdgeId, b: EdgeId },
    /// Two crossings along an edge are closer than their tunnel footprints.
    CrossingsTooClose { edge: EdgeId, first: (EdgeId, EdgeId), second: (EdgeId, EdgeId) },
}

impl std::fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationIssue::VertexNearEdge { vertex, edge } => {
                write!(f, "vertex {vertex} lies on or too close to edge {edge}")
            }
            ValidationIssue::Concurrent { edges, point } => {
                write!(f, "edges {edges:?} are concurrent at {point}")
            }
            ValidationIssue::Overlap { a, b } => write!(f, "edges {a} and {b} overlap"),
            ValidationIssue::CrossingsTooClose { edge, first, second } => write!(
                f,
                "crossings {first:?} and {second:?} on edge {edge} are closer than their casings"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<ValidationIssue>,
    pub warnings: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Checks the input restrictions the solvers rely on.
///
/// `near_tolerance` defaults to half the casing width.
pub fn validate_drawing(d: &Drawing, near_tolerance: Option<&Rational>) -> ValidationReport {
    let mut report = ValidationReport::default();
    let tol = near_tolerance.cloned().unwrap_or_else(|| d.casing_width() / int(2));
    let tol_sq = &tol * &tol;
    let tol_f = to_f64(&tol);

    for e in 0..d.num_edges() {
        let edge = &d.edges()[e];
        let (a, b) = d.endpoints(e);
        let bbox = BBox::of(a, b, tol_f);
        for (vi, v) in d.vertices().iter().enumerate() {
            if vi == edge.u || vi == edge.v || !bbox.contains(v.pos.to_f64()) {
                continue;
            }
            if point_segment_dist_sq(&v.pos, a, b) <= tol_sq {
                report.errors.push(ValidationIssue::VertexNearEdge { vertex: v.id, edge: edge.id });
            }
        }
    }

    let (crossings, overlaps) = pairwise_intersections(d);
    let id = |e: usize| d.edges()[e].id;
    let mut at_point: BTreeMap<(String, String), (Point, Vec<usize>)> = BTreeMap::new();
    for c in &crossings {
        let key = (format_rational(&c.hit.point.x), format_rational(&c.hit.point.y));
        let entry = at_point.entry(key).or_insert_with(|| (c.hit.point.clone(), Vec::new()));
        entry.1.push(c.a);
        entry.1.push(c.b);
    }
    for (_, (point, mut edges)) in at_point {
        edges.sort_unstable();
        edges.dedup();
        if edges.len() >= 3 {
            report.errors.push(ValidationIssue::Concurrent { edges: edges.into_iter().map(id).collect(), point });
        }
    }
    for (a, b) in overlaps {
        report.errors.push(ValidationIssue::Overlap { a: id(a), b: id(b) });
    }

    // Footprint of a crossing along an edge: half a tunnel length each side.
    let w = d.casing_width();
    let mut per_edge: Vec<Vec<(f64, (f64, f64), f64, (EdgeId, EdgeId))>> = vec![Vec::new(); d.num_edges()];
    for c in &crossings {
        let sin = crossing_angle_sin(&d.direction(c.a), &d.direction(c.b)).expect("crossing edges are not parallel");
        let len = tunnel_length(w, &sin).to_f64();
        let p = c.hit.point.to_f64();
        let pair = (id(c.a), id(c.b));
        per_edge[c.a].push((to_f64(&c.hit.param_a), p, len, pair));
        per_edge[c.b].push((to_f64(&c.hit.param_b), p, len, pair));
    }
    for (e, list) in per_edge.iter_mut().enumerate() {
        list.sort_by(|x, y| x.0.total_cmp(&y.0));
        for win in list.windows(2) {
            let (p, q) = (win[0].1, win[1].1);
            let dist = ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt();
            if dist < (win[0].2 + win[1].2) / 2.0 {
                report.warnings.push(ValidationIssue::CrossingsTooClose {
                    edge: id(e),
                    first: win[0].3,
                    second: win[1].3,
                });
            }
        }
    }
    report
}

/// Shrinks every edge so that each vertex has degree one while keeping all
/// crossings.
///
/// Each endpoint moves halfway towards the edge's nearest crossing (to the
/// quarter points when the edge has no crossings). Edge ids are kept; edge
/// with index `i` gets vertex ids `2i` and `2i + 1`. Isolated vertices are
/// dropped.
pub fn degree_one_transform(d: &Drawing) -> Drawing {
    let (crossings, _) = pairwise_intersections(d);
    let m = d.num_edges();
    let mut range: Vec<Option<(Rational, Rational)>> = vec![None; m];
    let mut widen = |e: usize, t: &Rational| {
        let slot = &mut range[e];
        match slot {
            None => *slot = Some((t.clone(), t.clone())),
            Some((lo, hi)) => {
                if t < lo {
                    *lo = t.clone();
                }
                if t > hi {
                    *hi = t.clone();
                }
            }
        }
    };
    for c in &crossings {
        widen(c.a, &c.hit.param_a);
        widen(c.b, &c.hit.param_b);
    }
    let boxes: Vec<BBox> = (0..m).map(|e| {
        let (a, b) = d.endpoints(e);
        BBox::of(a, b, 1e-9)
    }).collect();
    // A new endpoint must not land exactly on another edge; if the midpoint
    // does, move it elsewhere inside the same free stretch.
    let clear = |own: usize, p: &Point| {
        let pf = p.to_f64();
        (0..m).all(|e| {
            if e == own || !boxes[e].contains(pf) {
                return true;
            }
            let (a, b) = d.endpoints(e);
            !point_segment_dist_sq(p, a, b).is_zero()
        })
    };
    let fractions = [rat(1, 2), rat(1, 3), rat(2, 3), rat(1, 4), rat(3, 4), rat(1, 5), rat(4, 5)];
    let mut vertices = Vec::with_capacity(2 * m);
    let mut edges = Vec::with_capacity(m);
    for (i, r) in range.into_iter().enumerate() {
        let (a, b) = d.endpoints(i);
        // Free stretches next to the two endpoints, as parameter intervals.
        let (s0, s1) = match r {
            None => ((Rational::zero(), rat(1, 2)), (rat(1, 2), Rational::one())),
            Some((lo, hi)) => ((Rational::zero(), lo), (hi, Rational::one())),
        };
        let pick = |(from, to): (Rational, Rational), towards_start: bool| {
            let candidates = fractions.iter().map(|f| {
                let f = if towards_start { f.clone() } else { Rational::one() - f };
                &from + (&to - &from) * f
            });
            let mut first = None;
            for t in candidates {
                let p = a.lerp(b, &t);
                if clear(i, &p) {
                    return p;
                }
                first.get_or_insert(p);
            }
            first.unwrap()
        };
        let i64_ = i as u64;
        vertices.push((2 * i64_, pick(s0, true)));
        vertices.push((2 * i64_ + 1, pick(s1, false)));
        edges.push((d.edges()[i].id, 2 * i64_, 2 * i64_ + 1));
    }
    Drawing::new(vertices, edges, d.casing_width().clone()).expect("clipped edges keep positive length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    fn p(x: &str, y: &str) -> Point {
        Point::new(parse_rational(x).unwrap(), parse_rational(y).unwrap())
    }

    #[test]
    fn symmetric_cross() {
        let got = segment_intersection(&p("0", "0"), &p("2", "2"), &p("0", "2"), &p("2", "0"));
        match got {
            SegmentIntersection::Crossing(c) => assert_eq!(c.point, p("1", "1")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn disjoint_collinear() {
        let got = segment_intersection(&p("0", "0"), &p("1", "0"), &p("2", "0"), &p("3", "0"));
        assert_eq!(got, SegmentIntersection::None);
    }

    #[test]
    fn perpendicular_params() {
        let got = segment_intersection(&p("0", "0"), &p("4", "0"), &p("1", "-1"), &p("1", "1"));
        let SegmentIntersection::Crossing(c) = got else { panic!() };
        assert_eq!(c.point, p("1", "0"));
        assert_eq!(c.param_a, rat(1, 4));
        assert_eq!(c.param_b, rat(1, 2));
    }

    #[test]
    fn touching_and_overlapping() {
        // T-junction: endpoint on the other's interior.
        let t = segment_intersection(&p("0", "0"), &p("2", "0"), &p("1", "0"), &p("1", "1"));
        assert_eq!(t, SegmentIntersection::None);
        // Shared endpoint.
        let s = segment_intersection(&p("0", "0"), &p("2", "0"), &p("2", "0"), &p("3", "1"));
        assert_eq!(s, SegmentIntersection::None);
        let o = segment_intersection(&p("0", "0"), &p("2", "0"), &p("1", "0"), &p("3", "0"));
        assert_eq!(o, SegmentIntersection::Degenerate);
        // Collinear, touching at a single point.
        let c = segment_intersection(&p("0", "0"), &p("2", "0"), &p("2", "0"), &p("3", "0"));
        assert_eq!(c, SegmentIntersection::None);
    }

    #[test]
    fn angle_sines() {
        let right = crossing_angle_sin(&p("1", "0"), &p("0", "3")).unwrap();
        assert_eq!(right.sin_sq(), &int(1));
        let diag = crossing_angle_sin(&p("1", "0"), &p("1", "1")).unwrap();
        assert_eq!(diag.sin_sq(), &rat(1, 2));
        let gamma = crossing_angle_sin(&p("1", "4"), &p("4", "1")).unwrap();
        assert_eq!(gamma.sin_sq(), &rat(225, 289));
        // slopes +1/4 and -1/4 meet at 2 arctan(1/4)
        let gamma = crossing_angle_sin(&p("4", "1"), &p("4", "-1")).unwrap();
        assert_eq!(gamma.sin_sq(), &rat(64, 289));
        assert_eq!(crossing_angle_sin(&p("1", "1"), &p("2", "2")), Err(GeometryError::Parallel));
    }

    #[test]
    fn tunnel_lengths() {
        let w = int(1);
        assert_eq!(tunnel_length(&w, &SinAngle::from_sin_sq(int(1)).unwrap()).as_rational(), Some(int(1)));
        assert_eq!(tunnel_length(&w, &SinAngle::from_sin_sq(rat(1, 4)).unwrap()).as_rational(), Some(int(2)));
        let w = rat(3, 10);
        let gamma = SinAngle::from_sin_sq(rat(64, 289)).unwrap();
        assert_eq!(tunnel_length(&w, &gamma).as_rational(), Some(rat(17, 8) * &w));
    }

    #[test]
    fn drawing_invariants() {
        let v = vec![(1, p("0", "0")), (2, p("1", "0"))];
        assert_eq!(
            Drawing::new(v.clone(), vec![(0, 1, 3)], int(1)),
            Err(DrawingError::MissingVertex { edge: 0, vertex: 3 })
        );
        assert_eq!(Drawing::new(v.clone(), vec![(0, 1, 2), (0, 2, 1)], int(1)), Err(DrawingError::DuplicateEdge(0)));
        assert!(matches!(Drawing::new(v.clone(), vec![], int(0)), Err(DrawingError::NonPositiveWidth(_))));
        let dup = vec![(1, p("0", "0")), (1, p("1", "0"))];
        assert_eq!(Drawing::new(dup, vec![], int(1)), Err(DrawingError::DuplicateVertex(1)));
        let same = vec![(1, p("0", "0")), (2, p("0", "0"))];
        assert_eq!(Drawing::new(same, vec![(5, 1, 2)], int(1)), Err(DrawingError::ZeroLength(5)));
    }

    #[test]
    fn triple_concurrency_is_an_error() {
        let d = Drawing::from_segments(
            vec![(p("-1", "0"), p("1", "0")), (p("0", "-1"), p("0", "1")), (p("-1", "-1"), p("1", "1"))],
            rat(1, 10),
        )
        .unwrap();
        let r = validate_drawing(&d, None);
        assert!(matches!(r.errors.as_slice(), [ValidationIssue::Concurrent { edges, .. }] if edges == &vec![0, 1, 2]));
    }

    #[test]
    fn vertex_on_edge_is_an_error() {
        let d = Drawing::new(
            vec![(0, p("0", "0")), (1, p("2", "0")), (2, p("1", "0")), (3, p("1", "1"))],
            vec![(0, 0, 1), (1, 2, 3)],
            rat(1, 10),
        )
        .unwrap();
        let r = validate_drawing(&d, None);
        assert_eq!(r.errors, vec![ValidationIssue::VertexNearEdge { vertex: 2, edge: 0 }]);
    }

    #[test]
    fn near_vertex_uses_tolerance() {
        let d = Drawing::new(
            vec![(0, p("0", "0")), (1, p("2", "0")), (2, p("1", "0.04")), (3, p("1", "1"))],
            vec![(0, 0, 1), (1, 2, 3)],
            rat(1, 10),
        )
        .unwrap();
        assert!(!validate_drawing(&d, None).is_valid());
        assert!(validate_drawing(&d, Some(&rat(1, 100))).is_valid());
    }

    #[test]
    fn close_crossings_warn() {
        let d = Drawing::from_segments(
            vec![(p("0", "0"), p("4", "0")), (p("1", "-1"), p("1", "1")), (p("1.08", "-1"), p("1.08", "1"))],
            rat(1, 10),
        )
        .unwrap();
        let r = validate_drawing(&d, None);
        assert!(r.is_valid());
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn degree_one_keeps_crossings() {
        let d = Drawing::new(
            vec![(0, p("0", "0")), (1, p("2", "2")), (2, p("0", "2")), (3, p("2", "0"))],
            vec![(0, 0, 1), (1, 2, 3), (2, 0, 2)],
            rat(1, 10),
        )
        .unwrap();
        let t = degree_one_transform(&d);
        assert_eq!(t.num_edges(), 3);
        assert_eq!(t.num_vertices(), 6);
        assert!(t.degrees().iter().all(|&x| x == 1));
        let (before, _) = pairwise_intersections(&d);
        let (after, _) = pairwise_intersections(&t);
        assert_eq!(before.len(), 1);
        assert_eq!(after.len(), 1);
        assert_eq!(before[0].hit.point, after[0].hit.point);
    }

    #[test]
    fn star_becomes_disjoint_segments() {
        let d = Drawing::new(
            vec![(0, p("0", "0")), (1, p("1", "0")), (2, p("0", "1")), (3, p("-1", "0")), (4, p("0", "-1"))],
            vec![(0, 0, 1), (1, 0, 2), (2, 0, 3), (3, 0, 4)],
            rat(1, 10),
        )
        .unwrap();
        let t = degree_one_transform(&d);
        assert_eq!(t.num_vertices(), 8);
        assert!(pairwise_intersections(&t).0.is_empty());
        assert!(validate_drawing(&t, None).is_valid());
    }
}
