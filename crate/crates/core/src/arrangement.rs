//! The arrangement of a drawing: crossings, per-edge crossing orders,
//! portions between events, and the faces of the planar subdivision.
//!
//! Faces are traced on a half-edge structure built over all portions. A
//! bounded face is traced counter-clockwise; each connected component of the
//! drawing contributes one clockwise (or zero-area) outer walk that becomes a
//! hole of whichever face contains the component.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::exact::{cmp_angle, orient, to_f64, Point, Rational, RootSum};
use crate::geometry::{
    crossing_angle_sin, pairwise_intersections, tunnel_length, validate_drawing, Drawing, SinAngle, ValidationIssue,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("drawing is invalid: {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<ValidationIssue>),
}

#[derive(Debug, Clone)]
pub struct Crossing {
    pub id: usize,
    /// Lower edge index of the pair.
    pub edge_a: usize,
    pub edge_b: usize,
    pub point: Point,
    pub param_a: Rational,
    pub param_b: Rational,
    pub sin: SinAngle,
    /// `w / sin(alpha)`
    pub tunnel: RootSum,
    /// Position of this crossing in `edge_a`'s and `edge_b`'s sorted lists.
    pub pos_a: usize,
    pub pos_b: usize,
}

impl Crossing {
    pub fn other(&self, e: usize) -> usize {
        if e == self.edge_a {
            self.edge_b
        } else {
            debug_assert_eq!(e, self.edge_b);
            self.edge_a
        }
    }

    pub fn involves(&self, e: usize) -> bool {
        e == self.edge_a || e == self.edge_b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    Vertex(usize),
    Crossing(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PortionKind {
    BetweenCrossings,
    EndpointAdjacent,
}

/// A maximal piece of an edge between two consecutive events.
#[derive(Debug, Clone)]
pub struct Portion {
    pub id: usize,
    pub edge: usize,
    /// Index along the edge, `0..=k_e`.
    pub index: usize,
    pub start: Event,
    pub end: Event,
    pub kind: PortionKind,
    /// Face on the left when walking from `start` to `end`.
    pub left_face: usize,
    pub right_face: usize,
}

#[derive(Debug, Clone)]
pub struct Face {
    pub id: usize,
    pub unbounded: bool,
    /// Portions with this face on exactly one side.
    pub boundary: Vec<usize>,
    /// Vertices strictly inside the face (all incident portions, if any,
    /// border only this face).
    pub interior_vertices: Vec<usize>,
    /// Twice the signed area of the outer walk; zero for the unbounded face.
    pub(crate) area2: Rational,
}

/// Parity bookkeeping of one face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceRecord {
    pub face: usize,
    pub boundary_segment_count: usize,
    /// Graph vertices strictly inside, each counted once per incident edge
    /// (plain vertex count on degree-one drawings; isolated vertices add 0).
    pub interior_vertex_count: usize,
    pub complexity: usize,
    pub has_polygon: bool,
    pub is_odd: bool,
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    drawing: Drawing,
    crossings: Vec<Crossing>,
    per_edge: Vec<Vec<usize>>,
    portions: Vec<Portion>,
    edge_portions: Vec<Vec<usize>>,
    faces: Vec<Face>,
    components: usize,
    nodes: usize,
}

/// Index of the unbounded face.
pub const UNBOUNDED: usize = 0;

impl Arrangement {
    /// Validates `d` and builds its arrangement.
    pub fn build(d: &Drawing) -> Result<Self, ArrangementError> {
        let report = validate_drawing(d, None);
        if !report.is_valid() {
            return Err(ArrangementError::Invalid(report.errors));
        }
        Ok(Self::build_unchecked(d))
    }

    /// Builds the arrangement without running validation; the caller
    /// guarantees the input restrictions hold.
    pub fn build_unchecked(d: &Drawing) -> Self {
        let (raw, overlaps) = pairwise_intersections(d);
        assert!(overlaps.is_empty(), "overlapping edges");
        let w = d.casing_width();
        let mut crossings: Vec<Crossing> = raw
            .into_iter()
            .enumerate()
            .map(|(id, r)| {
                let sin = crossing_angle_sin(&d.direction(r.a), &d.direction(r.b)).expect("transversal crossing");
                let tunnel = tunnel_length(w, &sin);
                Crossing {
                    id,
                    edge_a: r.a,
                    edge_b: r.b,
                    point: r.hit.point,
                    param_a: r.hit.param_a,
                    param_b: r.hit.param_b,
                    sin,
                    tunnel,
                    pos_a: 0,
                    pos_b: 0,
                }
            })
            .collect();

        let m = d.num_edges();
        let mut per_edge: Vec<Vec<usize>> = vec![Vec::new(); m];
        for c in &crossings {
            per_edge[c.edge_a].push(c.id);
            per_edge[c.edge_b].push(c.id);
        }
        let param = |c: &Crossing, e: usize| if e == c.edge_a { c.param_a.clone() } else { c.param_b.clone() };
        for (e, list) in per_edge.iter_mut().enumerate() {
            list.sort_by(|&x, &y| param(&crossings[x], e).cmp(&param(&crossings[y], e)));
            for (pos, &cid) in list.iter().enumerate() {
                let c = &mut crossings[cid];
                if c.edge_a == e {
                    c.pos_a = pos;
                } else {
                    c.pos_b = pos;
                }
            }
        }

        let mut portions = Vec::new();
        let mut edge_portions = vec![Vec::new(); m];
        for e in 0..m {
            let edge = &d.edges()[e];
            let mut events = vec![Event::Vertex(edge.u)];
            events.extend(per_edge[e].iter().map(|&c| Event::Crossing(c)));
            events.push(Event::Vertex(edge.v));
            for (index, pair) in events.windows(2).enumerate() {
                let kind = match pair {
                    [Event::Crossing(_), Event::Crossing(_)] => PortionKind::BetweenCrossings,
                    _ => PortionKind::EndpointAdjacent,
                };
                edge_portions[e].push(portions.len());
                portions.push(Portion {
                    id: portions.len(),
                    edge: e,
                    index,
                    start: pair[0],
                    end: pair[1],
                    kind,
                    left_face: UNBOUNDED,
                    right_face: UNBOUNDED,
                });
            }
        }

        let mut arr = Arrangement {
            drawing: d.clone(),
            crossings,
            per_edge,
            portions,
            edge_portions,
            faces: Vec::new(),
            components: 0,
            nodes: 0,
        };
        arr.trace_faces();
        arr
    }

    fn node_of(&self, ev: Event) -> usize {
        match ev {
            Event::Vertex(v) => v,
            Event::Crossing(c) => self.drawing.num_vertices() + c,
        }
    }

    pub fn event_point(&self, ev: Event) -> &Point {
        match ev {
            Event::Vertex(v) => &self.drawing.vertices()[v].pos,
            Event::Crossing(c) => &self.crossings[c].point,
        }
    }

    fn trace_faces(&mut self) {
        let n_nodes = self.drawing.num_vertices() + self.crossings.len();
        let hcount = 2 * self.portions.len();
        // Half-edge 2p runs start -> end of portion p, 2p + 1 the reverse.
        let origin = |h: usize| {
            let p = &self.portions[h / 2];
            if h.is_multiple_of(2) {
                p.start
            } else {
                p.end
            }
        };
        let dir = |h: usize| {
            let d = self.drawing.direction(self.portions[h / 2].edge);
            if h.is_multiple_of(2) {
                d
            } else {
                Point::new(-d.x, -d.y)
            }
        };
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
        for h in 0..hcount {
            outgoing[self.node_of(origin(h))].push(h);
        }
        let dirs: Vec<Point> = (0..hcount).map(dir).collect();
        let mut slot = vec![0usize; hcount];
        for list in outgoing.iter_mut() {
            list.sort_by(|&a, &b| cmp_angle(&dirs[a], &dirs[b]));
            for (i, &h) in list.iter().enumerate() {
                slot[h] = i;
            }
        }
        let next = |h: usize| {
            let twin = h ^ 1;
            let list = &outgoing[self.node_of(origin(twin))];
            list[(slot[twin] + list.len() - 1) % list.len()]
        };

        // Components by union-find over nodes.
        let mut parent: Vec<usize> = (0..n_nodes).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for p in &self.portions {
            let (a, b) = (self.node_of(p.start), self.node_of(p.end));
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }

        struct Cycle {
            area2: Rational,
            component: usize,
            points: Vec<Point>,
            bbox: ((f64, f64), (f64, f64)),
        }
        let mut cycle_of = vec![usize::MAX; hcount];
        let mut cycles: Vec<Cycle> = Vec::new();
        for start in 0..hcount {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let mut hs = Vec::new();
            let mut h = start;
            loop {
                cycle_of[h] = cycles.len();
                hs.push(h);
                h = next(h);
                if h == start {
                    break;
                }
            }
            let points: Vec<Point> = hs.iter().map(|&h| self.event_point(origin(h)).clone()).collect();
            let mut area2 = Rational::zero();
            for i in 0..points.len() {
                area2 += points[i].cross(&points[(i + 1) % points.len()]);
            }
            let fl: Vec<(f64, f64)> = points.iter().map(|p| p.to_f64()).collect();
            let lo = fl.iter().fold((f64::INFINITY, f64::INFINITY), |a, p| (a.0.min(p.0), a.1.min(p.1)));
            let hi = fl.iter().fold((f64::NEG_INFINITY, f64::NEG_INFINITY), |a, p| (a.0.max(p.0), a.1.max(p.1)));
            let component = find(&mut parent, self.node_of(origin(start)));
            cycles.push(Cycle { area2, component, points, bbox: (lo, hi) });
        }

        // Bounded faces: one per counter-clockwise walk.
        let mut faces = vec![Face {
            id: UNBOUNDED,
            unbounded: true,
            boundary: Vec::new(),
            interior_vertices: Vec::new(),
            area2: Rational::zero(),
        }];
        let mut face_of_cycle = vec![usize::MAX; cycles.len()];
        for (ci, c) in cycles.iter().enumerate() {
            if c.area2.is_positive() {
                face_of_cycle[ci] = faces.len();
                faces.push(Face {
                    id: faces.len(),
                    unbounded: false,
                    boundary: Vec::new(),
                    interior_vertices: Vec::new(),
                    area2: c.area2.clone(),
                });
            }
        }
        let bounded: Vec<usize> = (0..cycles.len()).filter(|&ci| face_of_cycle[ci] != usize::MAX).collect();

        // Smallest bounded walk of another component that winds around `p`.
        let locate = |p: &Point, own_component: Option<usize>| -> Option<usize> {
            let pf = p.to_f64();
            let mut best: Option<usize> = None;
            for &ci in &bounded {
                let c = &cycles[ci];
                if Some(c.component) == own_component {
                    continue;
                }
                let slack = 1e-9 * (1.0 + pf.0.abs() + pf.1.abs());
                if pf.0 < c.bbox.0 .0 - slack
                    || pf.0 > c.bbox.1 .0 + slack
                    || pf.1 < c.bbox.0 .1 - slack
                    || pf.1 > c.bbox.1 .1 + slack
                {
                    continue;
                }
                if winding_number(&c.points, p) != 0 && best.is_none_or(|b| c.area2 < cycles[b].area2) {
                    best = Some(ci);
                }
            }
            best
        };
        let bounded_face = face_of_cycle.clone();
        let locate_face = |p: &Point, own: Option<usize>| locate(p, own).map_or(UNBOUNDED, |ci| bounded_face[ci]);

        let mut outer_seen = vec![false; n_nodes];
        for ci in 0..cycles.len() {
            if face_of_cycle[ci] != usize::MAX {
                continue;
            }
            let comp = cycles[ci].component;
            assert!(!outer_seen[comp], "component with two outer walks");
            outer_seen[comp] = true;
            face_of_cycle[ci] = locate_face(&cycles[ci].points[0], Some(comp));
        }

        let face_of_half = |h: usize| face_of_cycle[cycle_of[h]];
        for p in 0..self.portions.len() {
            self.portions[p].left_face = face_of_half(2 * p);
            self.portions[p].right_face = face_of_half(2 * p + 1);
            let (l, r) = (self.portions[p].left_face, self.portions[p].right_face);
            if l != r {
                faces[l].boundary.push(p);
                faces[r].boundary.push(p);
            }
        }

        for (v, vert) in self.drawing.vertices().iter().enumerate() {
            let out = &outgoing[v];
            let face = match out.first() {
                None => Some(locate_face(&vert.pos, None)),
                Some(&h0) => {
                    let f = face_of_half(h0);
                    out.iter().all(|&h| face_of_half(h) == f).then_some(f)
                }
            };
            if let Some(f) = face {
                faces[f].interior_vertices.push(v);
            }
        }

        self.components = (0..n_nodes)
            .filter(|&x| !outgoing[x].is_empty() && find(&mut parent, x) == x)
            .count();
        self.nodes = outgoing.iter().filter(|o| !o.is_empty()).count();
        self.faces = faces;
    }

    pub fn drawing(&self) -> &Drawing {
        &self.drawing
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    /// Crossing ids along edge `e`, sorted by position.
    pub fn edge_crossings(&self, e: usize) -> &[usize] {
        &self.per_edge[e]
    }

    pub fn portions(&self) -> &[Portion] {
        &self.portions
    }

    pub fn edge_portions(&self, e: usize) -> &[usize] {
        &self.edge_portions[e]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn num_components(&self) -> usize {
        self.components
    }

    /// Subdivision nodes: non-isolated vertices plus crossings.
    pub fn num_nodes(&self) -> usize {
        self.nodes
    }

    /// The crossing between edges `a` and `b`, if they cross.
    pub fn crossing_between(&self, a: usize, b: usize) -> Option<usize> {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.per_edge[lo].iter().copied().find(|&c| self.crossings[c].edge_b == hi)
    }

    /// Position of crossing `c` along edge `e`.
    pub fn position_on(&self, c: usize, e: usize) -> usize {
        let x = &self.crossings[c];
        if x.edge_a == e {
            x.pos_a
        } else {
            x.pos_b
        }
    }

    pub fn face_record(&self, f: usize) -> FaceRecord {
        let face = &self.faces[f];
        let degrees = self.drawing.degrees();
        let interior_vertex_count: usize = face.interior_vertices.iter().map(|&v| degrees[v]).sum();
        let boundary_segment_count = face.boundary.len();
        let complexity = boundary_segment_count + interior_vertex_count;
        let has_polygon = !face.unbounded
            && !face.boundary.is_empty()
            && face.boundary.iter().all(|&p| self.portions[p].kind == PortionKind::BetweenCrossings);
        FaceRecord {
            face: f,
            boundary_segment_count,
            interior_vertex_count,
            complexity,
            has_polygon,
            is_odd: has_polygon && complexity % 2 == 1,
        }
    }

    pub fn face_records(&self) -> Vec<FaceRecord> {
        (0..self.faces.len()).map(|f| self.face_record(f)).collect()
    }

    /// Area of a bounded face's outer walk, as a float (0 for the unbounded face).
    pub fn face_area(&self, f: usize) -> f64 {
        to_f64(&self.faces[f].area2) / 2.0
    }
}

/// Winding number of the closed polyline `poly` around `p` (not on it).
pub(crate) fn winding_number(poly: &[Point], p: &Point) -> i64 {
    let mut wn = 0;
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) == Ordering::Greater {
                wn += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) == Ordering::Less {
            wn -= 1;
        }
    }
    wn
}
