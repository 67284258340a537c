//! Planar networks embedded in a horizontal strip, their semiring weightings,
//! concatenation, truncation, and the correspondence map with its minors.
//!
//! Networks are validated at construction: edges must be x-monotone and
//! straight-line segments of distinct edges may meet only at shared endpoints.
//! Everything downstream (Lindström minors, multipath enumeration) silently
//! relies on that embedding being planar.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::semiring::Semiring;
use crate::trop::Trop;
use crate::{Error, Result};

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub x: BigRational,
    pub y: BigRational,
}

/// A slanted edge of a layered network, joining two adjacent horizontal lines.
#[derive(Clone, Debug)]
pub struct SlantSpec {
    pub from_line: usize,
    pub x_from: BigRational,
    pub to_line: usize,
    pub x_to: BigRational,
}

impl SlantSpec {
    pub fn down(from_line: usize, x_from: i64, x_to: i64) -> Self {
        SlantSpec {
            from_line,
            x_from: rat(x_from),
            to_line: from_line - 1,
            x_to: rat(x_to),
        }
    }
}

/// An essential edge of a standard network: `i < l` is the slant `a_{l,i}`,
/// `i = l` the sink-adjacent horizontal edge of line `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EssentialEdge {
    pub l: usize,
    pub i: usize,
    pub edge: usize,
}

/// Embedded layered DAG of rank `n` with left-to-right edges.
#[derive(Clone, Debug)]
pub struct PlanarNetwork {
    rank: usize,
    vertices: Vec<Vertex>,
    /// (tail, head) with x(tail) < x(head).
    edges: Vec<(usize, usize)>,
    /// Source vertices, bottom-to-top; label `r` is `sources[r-1]`.
    sources: Vec<usize>,
    sinks: Vec<usize>,
    /// Internal seam x-coordinates, left to right; empty for atomic networks.
    verticals: Vec<BigRational>,
    essential: Vec<EssentialEdge>,
    out: Vec<Vec<usize>>,
}

fn orient(a: &Vertex, b: &Vertex, c: &Vertex) -> BigRational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

fn between(a: &BigRational, m: &BigRational, b: &BigRational) -> bool {
    (a <= m && m <= b) || (b <= m && m <= a)
}

fn on_segment(p: &Vertex, a: &Vertex, b: &Vertex) -> bool {
    orient(a, b, p).is_zero() && between(&a.x, &p.x, &b.x) && between(&a.y, &p.y, &b.y)
}

/// True when the closed segments meet anywhere other than shared endpoints.
fn segments_conflict(a1: &Vertex, a2: &Vertex, b1: &Vertex, b2: &Vertex) -> bool {
    let shared =
        |p: &Vertex| (p == b1) || (p == b2);
    let shared_count = [a1, a2].iter().filter(|p| shared(p)).count();
    if shared_count == 2 {
        return true; // duplicate edge
    }
    let o1 = orient(a1, a2, b1);
    let o2 = orient(a1, a2, b2);
    let o3 = orient(b1, b2, a1);
    let o4 = orient(b1, b2, a2);
    if shared_count == 1 {
        // Only collinear overlap can be illegal; a shared endpoint is fine.
        if o1.is_zero() && o2.is_zero() {
            // Same supporting line: check interior overlap.
            let pts = [a1, a2, b1, b2];
            let mut xs: Vec<&BigRational> = pts.iter().map(|p| &p.x).collect();
            xs.sort();
            // Overlap in more than a point iff the middle two x's differ ...
            if xs[1] != xs[2] {
                return true;
            }
            // ... or all four x equal never happens (edges are x-monotone).
        }
        return false;
    }
    let neg = |r: &BigRational| r.is_negative();
    let pos = |r: &BigRational| r.is_positive();
    if ((pos(&o1) && neg(&o2)) || (neg(&o1) && pos(&o2)))
        && ((pos(&o3) && neg(&o4)) || (neg(&o3) && pos(&o4)))
    {
        return true;
    }
    // Touching cases: an endpoint of one lies on the other.
    if o1.is_zero() && on_segment(b1, a1, a2) {
        return true;
    }
    if o2.is_zero() && on_segment(b2, a1, a2) {
        return true;
    }
    if o3.is_zero() && on_segment(a1, b1, b2) {
        return true;
    }
    if o4.is_zero() && on_segment(a2, b1, b2) {
        return true;
    }
    false
}

impl PlanarNetwork {
    /// Assemble and validate a network from raw parts. Sources and sinks are
    /// derived from the extreme x-coordinates, labeled bottom-to-top.
    pub fn from_parts(
        rank: usize,
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        verticals: Vec<BigRational>,
    ) -> Result<Self> {
        Self::from_parts_with_essential(rank, vertices, edges, verticals, Vec::new(), true)
    }

    fn from_parts_with_essential(
        rank: usize,
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        verticals: Vec<BigRational>,
        essential: Vec<EssentialEdge>,
        validate_planarity: bool,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidNetwork("rank must be positive".into()));
        }
        if vertices.is_empty() {
            return Err(Error::InvalidNetwork("no vertices".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            for w in &vertices[i + 1..] {
                if v == w {
                    return Err(Error::InvalidNetwork(format!(
                        "duplicate vertex position ({}, {})",
                        v.x, v.y
                    )));
                }
            }
        }
        for &(t, h) in &edges {
            if t >= vertices.len() || h >= vertices.len() {
                return Err(Error::InvalidNetwork("edge endpoint out of range".into()));
            }
            if vertices[t].x >= vertices[h].x {
                return Err(Error::InvalidNetwork(
                    "edges must strictly increase in x".into(),
                ));
            }
        }
        let min_x = vertices.iter().map(|v| &v.x).min().unwrap().clone();
        let max_x = vertices.iter().map(|v| &v.x).max().unwrap().clone();
        let mut sources: Vec<usize> = (0..vertices.len())
            .filter(|&v| vertices[v].x == min_x)
            .collect();
        let mut sinks: Vec<usize> = (0..vertices.len())
            .filter(|&v| vertices[v].x == max_x)
            .collect();
        sources.sort_by(|&a, &b| vertices[a].y.cmp(&vertices[b].y));
        sinks.sort_by(|&a, &b| vertices[a].y.cmp(&vertices[b].y));
        if sources.len() != rank || sinks.len() != rank {
            return Err(Error::InvalidNetwork(format!(
                "expected {} sources and sinks, found {} and {}",
                rank,
                sources.len(),
                sinks.len()
            )));
        }
        if validate_planarity {
            for i in 0..edges.len() {
                let (t1, h1) = edges[i];
                let (a1, a2) = (&vertices[t1], &vertices[h1]);
                for &(t2, h2) in &edges[i + 1..] {
                    let (b1, b2) = (&vertices[t2], &vertices[h2]);
                    // Cheap bounding-box reject on x.
                    if a2.x < b1.x.clone().min(b2.x.clone())
                        || b1.x.clone().max(b2.x.clone()) < a1.x
                    {
                        continue;
                    }
                    if segments_conflict(a1, a2, b1, b2) {
                        return Err(Error::InvalidNetwork(format!(
                            "edges ({},{}) and ({},{}) cross",
                            t1, h1, t2, h2
                        )));
                    }
                }
            }
        }
        let mut out = vec![Vec::new(); vertices.len()];
        for (e, &(t, _)) in edges.iter().enumerate() {
            out[t].push(e);
        }
        for list in &mut out {
            list.sort_by(|&e1, &e2| {
                let h1 = &vertices[edges[e1].1];
                let h2 = &vertices[edges[e2].1];
                h1.x.cmp(&h2.x).then(h1.y.cmp(&h2.y))
            });
        }
        Ok(PlanarNetwork {
            rank,
            vertices,
            edges,
            sources,
            sinks,
            verticals,
            essential,
            out,
        })
    }

    /// Build a layered network: `rank` horizontal lines `y = 1..=rank` from
    /// `x = 0` to `x = length`, subdivided at every slant endpoint.
    pub fn layered(rank: usize, length: i64, slants: &[SlantSpec]) -> Result<Self> {
        Self::layered_impl(rank, length, slants, Vec::new())
    }

    fn layered_impl(
        rank: usize,
        length: i64,
        slants: &[SlantSpec],
        essential_slants: Vec<(usize, usize, usize)>, // (l, i, slant index)
    ) -> Result<Self> {
        let length = rat(length);
        let mut line_points: Vec<Vec<BigRational>> = vec![Vec::new(); rank + 1];
        for l in 1..=rank {
            line_points[l].push(BigRational::zero());
            line_points[l].push(length.clone());
        }
        for s in slants {
            if s.from_line == 0 || s.from_line > rank || s.to_line == 0 || s.to_line > rank {
                return Err(Error::InvalidNetwork("slant line out of range".into()));
            }
            line_points[s.from_line].push(s.x_from.clone());
            line_points[s.to_line].push(s.x_to.clone());
        }
        let mut vertices = Vec::new();
        let mut index_of = |_: ()| {};
        let _ = &mut index_of;
        let mut line_vertex_ids: Vec<Vec<(BigRational, usize)>> = vec![Vec::new(); rank + 1];
        for l in 1..=rank {
            let pts = &mut line_points[l];
            pts.sort();
            pts.dedup();
            for x in pts.iter() {
                let id = vertices.len();
                vertices.push(Vertex { x: x.clone(), y: rat(l as i64) });
                line_vertex_ids[l].push((x.clone(), id));
            }
        }
        let find = |l: usize, x: &BigRational| -> usize {
            line_vertex_ids[l]
                .iter()
                .find(|(px, _)| px == x)
                .map(|(_, id)| *id)
                .expect("slant endpoint on its line")
        };
        let mut edges = Vec::new();
        // Horizontal minimal segments, bottom line first, left to right.
        let mut sink_edge_of_line = vec![usize::MAX; rank + 1];
        for l in 1..=rank {
            for w in line_vertex_ids[l].windows(2) {
                edges.push((w[0].1, w[1].1));
            }
            sink_edge_of_line[l] = edges.len() - 1;
        }
        let mut slant_edge_ids = Vec::with_capacity(slants.len());
        for s in slants {
            let t = find(s.from_line, &s.x_from);
            let h = find(s.to_line, &s.x_to);
            slant_edge_ids.push(edges.len());
            edges.push((t, h));
        }
        let mut essential = Vec::new();
        for (l, i, sl) in essential_slants {
            essential.push(EssentialEdge { l, i, edge: slant_edge_ids[sl] });
        }
        for l in 1..=rank {
            if sink_edge_of_line[l] != usize::MAX {
                essential.push(EssentialEdge { l, i: l, edge: sink_edge_of_line[l] });
            }
        }
        essential.sort_by_key(|e| (e.l, e.i));
        Self::from_parts_with_essential(rank, vertices, edges, Vec::new(), essential, true)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn sinks(&self) -> &[usize] {
        &self.sinks
    }

    pub fn verticals(&self) -> &[BigRational] {
        &self.verticals
    }

    pub fn essential(&self) -> &[EssentialEdge] {
        &self.essential
    }

    pub fn essential_edge(&self, l: usize, i: usize) -> Option<usize> {
        self.essential
            .iter()
            .find(|e| e.l == l && e.i == i)
            .map(|e| e.edge)
    }

    pub fn min_x(&self) -> &BigRational {
        &self.vertices[self.sources[0]].x
    }

    pub fn max_x(&self) -> &BigRational {
        &self.vertices[self.sinks[0]].x
    }

    /// Source label (1-based) of a vertex, if it is a source.
    pub fn source_label(&self, v: usize) -> Option<usize> {
        self.sources.iter().position(|&s| s == v).map(|p| p + 1)
    }

    pub fn sink_label(&self, v: usize) -> Option<usize> {
        self.sinks.iter().position(|&s| s == v).map(|p| p + 1)
    }

    /// Vertices with the given x-coordinate, bottom-to-top.
    pub fn layer_at(&self, x: &BigRational) -> Vec<usize> {
        let mut layer: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| &self.vertices[v].x == x)
            .collect();
        layer.sort_by(|&a, &b| self.vertices[a].y.cmp(&self.vertices[b].y));
        layer
    }
}

/// The standard network of rank `n`: `n(n-1)/2` slants `a_{l,i}` (from line
/// `l` down to line `l-1`, `i < l`) and `n` sink-adjacent essential edges
/// `a_{l,l}`, one per line.
pub fn standard_network(n: usize) -> Result<PlanarNetwork> {
    if n == 0 {
        return Err(Error::InvalidNetwork("rank must be positive".into()));
    }
    let mut slants = Vec::new();
    let mut essential_slants = Vec::new();
    for l in 2..=n {
        for i in 1..l {
            // Start at x = 2(n-l) + 2 + 3(i-1) on line l, drop one line over width 1.
            let x0 = 2 * (n as i64 - l as i64) + 2 + 3 * (i as i64 - 1);
            essential_slants.push((l, i, slants.len()));
            slants.push(SlantSpec::down(l, x0, x0 + 1));
        }
    }
    PlanarNetwork::layered_impl(n, 3 * n as i64, &slants, essential_slants)
}

/// Concatenation: sinks of `a` identified with sources of `b`, x-coordinates
/// of `b` shifted, the seam recorded as a vertical.
pub fn concatenate(a: &PlanarNetwork, b: &PlanarNetwork) -> Result<PlanarNetwork> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch(a.rank, b.rank));
    }
    for (sa, sb) in a.sinks.iter().zip(&b.sources) {
        if a.vertices[*sa].y != b.vertices[*sb].y {
            return Err(Error::InvalidNetwork(
                "seam layers do not align by height".into(),
            ));
        }
    }
    let seam = a.max_x().clone();
    let shift = &seam - b.min_x();
    let mut vertices = a.vertices.clone();
    // Map of b-vertex id -> new id.
    let mut map = vec![usize::MAX; b.vertices.len()];
    for (label, &sb) in b.sources.iter().enumerate() {
        map[sb] = a.sinks[label];
    }
    for (v, vert) in b.vertices.iter().enumerate() {
        if map[v] == usize::MAX {
            map[v] = vertices.len();
            vertices.push(Vertex { x: &vert.x + &shift, y: vert.y.clone() });
        }
    }
    let mut edges = a.edges.clone();
    for &(t, h) in &b.edges {
        edges.push((map[t], map[h]));
    }
    let mut verticals = a.verticals.clone();
    verticals.push(seam);
    for v in &b.verticals {
        verticals.push(v + &shift);
    }
    // Parts are already planar and meet only at the seam layer, so the
    // pairwise segment test is skipped here.
    PlanarNetwork::from_parts_with_essential(a.rank, vertices, edges, verticals, Vec::new(), false)
}

/// An edge-weight assignment over a semiring.
#[derive(Clone, Debug)]
pub struct Weighting<S: Semiring> {
    pub net: Arc<PlanarNetwork>,
    pub weights: Vec<S>,
}

impl<S: Semiring> Weighting<S> {
    pub fn new(net: Arc<PlanarNetwork>, weights: Vec<S>) -> Result<Self> {
        if weights.len() != net.edges().len() {
            return Err(Error::SizeMismatch(format!(
                "{} weights for {} edges",
                weights.len(),
                net.edges().len()
            )));
        }
        Ok(Weighting { net, weights })
    }

    /// All edges carry the semiring identity.
    pub fn identity(net: Arc<PlanarNetwork>) -> Self {
        let weights = vec![S::sr_one(); net.edges().len()];
        Weighting { net, weights }
    }

    pub fn set_essential(&mut self, l: usize, i: usize, value: S) -> Result<()> {
        let e = self
            .net
            .essential_edge(l, i)
            .ok_or_else(|| Error::IndexRange(format!("no essential edge ({l},{i})")))?;
        self.weights[e] = value;
        Ok(())
    }

    pub fn essential(&self, l: usize, i: usize) -> Result<&S> {
        let e = self
            .net
            .essential_edge(l, i)
            .ok_or_else(|| Error::IndexRange(format!("no essential edge ({l},{i})")))?;
        Ok(&self.weights[e])
    }
}

/// Concatenate weighted networks; the weight vector is the edge-wise
/// concatenation in construction order.
pub fn concatenate_weightings<S: Semiring>(
    a: &Weighting<S>,
    b: &Weighting<S>,
) -> Result<Weighting<S>> {
    let net = Arc::new(concatenate(&a.net, &b.net)?);
    let mut weights = a.weights.clone();
    weights.extend(b.weights.iter().cloned());
    Weighting::new(net, weights)
}

/// Delete all edges containing sources or sinks with labels above `l`, then
/// keep only the part of the network lying on some surviving source-to-sink
/// path. The result has rank `l`.
pub fn truncate<S: Semiring>(w: &Weighting<S>, l: usize) -> Result<Weighting<S>> {
    let net = &w.net;
    if l == 0 || l > net.rank() {
        return Err(Error::IndexRange(format!(
            "truncation level {l} outside 1..={}",
            net.rank()
        )));
    }
    if l == net.rank() {
        return Ok(w.clone());
    }
    let banned: Vec<usize> = net.sources()[l..]
        .iter()
        .chain(net.sinks()[l..].iter())
        .copied()
        .collect();
    let keep_edge: Vec<bool> = net
        .edges()
        .iter()
        .map(|&(t, h)| !banned.contains(&t) && !banned.contains(&h))
        .collect();
    let nv = net.vertices().len();
    // Forward reachability from surviving sources.
    let mut reach = vec![false; nv];
    let mut stack: Vec<usize> = net.sources()[..l].to_vec();
    for &s in &stack {
        reach[s] = true;
    }
    while let Some(v) = stack.pop() {
        for &e in net.out_edges(v) {
            if keep_edge[e] {
                let h = net.edges()[e].1;
                if !reach[h] {
                    reach[h] = true;
                    stack.push(h);
                }
            }
        }
    }
    // Backward co-reachability to surviving sinks.
    let mut into = vec![Vec::new(); nv];
    for (e, &(t, h)) in net.edges().iter().enumerate() {
        if keep_edge[e] {
            into[h].push((e, t));
        }
    }
    let mut coreach = vec![false; nv];
    let mut stack: Vec<usize> = net.sinks()[..l].to_vec();
    for &s in &stack {
        coreach[s] = true;
    }
    while let Some(v) = stack.pop() {
        for &(_, t) in &into[v] {
            if !coreach[t] {
                coreach[t] = true;
                stack.push(t);
            }
        }
    }
    let keep_vertex: Vec<bool> = (0..nv).map(|v| reach[v] && coreach[v]).collect();
    let mut map = vec![usize::MAX; nv];
    let mut vertices = Vec::new();
    for v in 0..nv {
        if keep_vertex[v] {
            map[v] = vertices.len();
            vertices.push(net.vertices()[v].clone());
        }
    }
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for (e, &(t, h)) in net.edges().iter().enumerate() {
        if keep_edge[e] && keep_vertex[t] && keep_vertex[h] {
            edges.push((map[t], map[h]));
            weights.push(w.weights[e].clone());
        }
    }
    let verticals = net.verticals().to_vec();
    let truncated =
        PlanarNetwork::from_parts_with_essential(l, vertices, edges, verticals, Vec::new(), false)?;
    Weighting::new(Arc::new(truncated), weights)
}

/// Entry `(i, j)`: semiring sum of path weights from source `i` to sink `j`.
/// Row = source label, column = sink label.
pub fn correspondence_matrix<S: Semiring>(w: &Weighting<S>) -> Vec<Vec<S>> {
    let net = &w.net;
    let n = net.rank();
    let nv = net.vertices().len();
    // Vertices sorted by x form a topological order (edges strictly increase x).
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by(|&a, &b| {
        net.vertices()[a]
            .x
            .cmp(&net.vertices()[b].x)
            .then(net.vertices()[a].y.cmp(&net.vertices()[b].y))
    });
    let mut matrix = vec![vec![S::sr_zero(); n]; n];
    for (si, &source) in net.sources().iter().enumerate() {
        let mut acc = vec![S::sr_zero(); nv];
        acc[source] = S::sr_one();
        for &v in &order {
            if acc[v].sr_is_zero() {
                continue;
            }
            let base = acc[v].clone();
            for &e in net.out_edges(v) {
                let h = net.edges()[e].1;
                let add = base.times(&w.weights[e]);
                acc[h] = acc[h].plus(&add);
            }
        }
        for (sj, &sink) in net.sinks().iter().enumerate() {
            matrix[si][sj] = acc[sink].clone();
        }
    }
    matrix
}

/// Enumerate vertex-disjoint path families connecting the source labels `I`
/// (ascending) to the sink labels `J` (ascending), matched in order, together
/// with their weights. Paths are reported as vertex sequences.
pub fn disjoint_path_families<S: Semiring>(
    w: &Weighting<S>,
    sources: &[usize],
    sinks: &[usize],
) -> Result<Vec<(Vec<Vec<usize>>, S)>> {
    if sources.len() != sinks.len() {
        return Err(Error::SizeMismatch(
            "source and sink sets must have equal size".into(),
        ));
    }
    let net = &w.net;
    for &lbl in sources.iter().chain(sinks.iter()) {
        if lbl == 0 || lbl > net.rank() {
            return Err(Error::IndexRange(format!("label {lbl} outside rank")));
        }
    }
    let mut results = Vec::new();
    let mut used = vec![false; net.vertices().len()];
    let mut paths: Vec<Vec<usize>> = Vec::new();
    fn grow<S: Semiring>(
        w: &Weighting<S>,
        target: usize,
        pair_idx: usize,
        pairs: &[(usize, usize)],
        used: &mut Vec<bool>,
        paths: &mut Vec<Vec<usize>>,
        current: &mut Vec<usize>,
        weight_stack: &mut Vec<S>,
        results: &mut Vec<(Vec<Vec<usize>>, S)>,
    ) {
        let v = *current.last().unwrap();
        if v == target {
            paths.push(current.clone());
            next_pair(w, pair_idx + 1, pairs, used, paths, weight_stack, results);
            paths.pop();
            return;
        }
        for &e in w.net.out_edges(v) {
            let h = w.net.edges()[e].1;
            if used[h] {
                continue;
            }
            used[h] = true;
            current.push(h);
            weight_stack.push(weight_stack.last().unwrap().times(&w.weights[e]));
            grow(w, target, pair_idx, pairs, used, paths, current, weight_stack, results);
            weight_stack.pop();
            current.pop();
            used[h] = false;
        }
    }
    fn next_pair<S: Semiring>(
        w: &Weighting<S>,
        pair_idx: usize,
        pairs: &[(usize, usize)],
        used: &mut Vec<bool>,
        paths: &mut Vec<Vec<usize>>,
        weight_stack: &mut Vec<S>,
        results: &mut Vec<(Vec<Vec<usize>>, S)>,
    ) {
        if pair_idx == pairs.len() {
            results.push((paths.clone(), weight_stack.last().unwrap().clone()));
            return;
        }
        let (src, dst) = pairs[pair_idx];
        if used[src] {
            return;
        }
        used[src] = true;
        let mut current = vec![src];
        grow(
            w,
            dst,
            pair_idx,
            pairs,
            used,
            paths,
            &mut current,
            weight_stack,
            results,
        );
        used[src] = false;
    }
    let pairs: Vec<(usize, usize)> = sources
        .iter()
        .zip(sinks.iter())
        .map(|(&i, &j)| (net.sources()[i - 1], net.sinks()[j - 1]))
        .collect();
    let mut weight_stack = vec![S::sr_one()];
    next_pair(
        w,
        0,
        &pairs,
        &mut used,
        &mut paths,
        &mut weight_stack,
        &mut results,
    );
    Ok(results)
}

/// Semiring sum over vertex-disjoint path families `I → J`. Over the
/// nonnegative rationals this is the matrix minor `Δ_{I,J}` of the
/// correspondence matrix; the empty minor is the semiring one.
pub fn lindstrom_minor<S: Semiring>(w: &Weighting<S>, i: &[usize], j: &[usize]) -> Result<S> {
    if i.is_empty() && j.is_empty() {
        return Ok(S::sr_one());
    }
    let families = disjoint_path_families(w, i, j)?;
    let mut acc = S::sr_zero();
    for (_, weight) in families {
        acc = acc.plus(&weight);
    }
    Ok(acc)
}

/// A layered network with random non-crossing slants; both up- and
/// down-slants occur. Used by property tests and seeded experiment drivers.
pub fn random_layered_network(
    n: usize,
    slots: usize,
    density: f64,
    rng: &mut impl rand::Rng,
) -> Result<PlanarNetwork> {
    let mut slants = Vec::new();
    for strip in 1..n {
        for slot in 0..slots {
            if rng.gen_bool(density) {
                let x0 = 1 + 2 * slot as i64;
                if rng.gen_bool(0.5) {
                    slants.push(SlantSpec {
                        from_line: strip + 1,
                        x_from: rat(x0),
                        to_line: strip,
                        x_to: rat(x0 + 1),
                    });
                } else {
                    slants.push(SlantSpec {
                        from_line: strip,
                        x_from: rat(x0),
                        to_line: strip + 1,
                        x_to: rat(x0 + 1),
                    });
                }
            }
        }
    }
    PlanarNetwork::layered(n, 2 * slots as i64 + 2, &slants)
}

/// The canonical flat order of essential labels: `(1,1), (2,1), (2,2), …`.
pub fn essential_labels(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for l in 1..=n {
        for i in 1..=l {
            out.push((l, i));
        }
    }
    out
}

/// Build a tropical weighting of a standard network from essential values in
/// the canonical `(l,i)` order; every other edge carries weight 0.
pub fn standard_weighting(net: &Arc<PlanarNetwork>, values: &[Trop]) -> Result<Weighting<Trop>> {
    let labels = essential_labels(net.rank());
    if values.len() != labels.len() {
        return Err(Error::SizeMismatch(format!(
            "{} essential values for rank {}",
            values.len(),
            net.rank()
        )));
    }
    let mut w = Weighting::identity(net.clone());
    for ((l, i), v) in labels.into_iter().zip(values.iter()) {
        w.set_essential(l, i, v.clone())?;
    }
    Ok(w)
}

/// Sort order helper for labels.
pub fn label_range(a: usize, b: usize) -> Vec<usize> {
    if a > b {
        Vec::new()
    } else {
        (a..=b).collect()
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((&self.x, &self.y).cmp(&(&other.x, &other.y)))
    }
}
