//! Square-lattice cell complexes and the surgery operations that build the
//! high-genus surfaces.
//!
//! A complex stores vertices implicitly as `0..vertex_count`, edges as
//! unordered endpoint pairs (parallel edges allowed, self-loops not), and
//! faces as closed walks. Every walk follows the convention
//! `vertices[i] --edges[i]--> vertices[i + 1]` cyclically. Boundary circles
//! use the same representation and are traversed opposite to their unique
//! incident face, so an orientation-preserving sew always reverses one circle
//! against the other.

mod build;
mod io;
mod surgery;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use build::{build_torus, build_tube};
pub use io::{SurfaceFile, FORMAT_NAME, FORMAT_VERSION};
pub use surgery::Cut;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

/// A closed walk `vertices[i] --edges[i]--> vertices[(i + 1) % n]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Walk {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Walk {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn reversed(&self) -> Walk {
        let n = self.len();
        let vertices = (0..n).map(|i| self.vertices[(n - i) % n]).collect();
        let edges = (0..n).map(|i| self.edges[n - 1 - i]).collect();
        Walk { vertices, edges }
    }
}

/// A boundary circle with a stable id (ids survive other boundaries being sewn).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundary {
    pub id: usize,
    pub walk: Walk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FaceTag {
    Base,
    /// Face of the tube built for the given construction handle.
    Tube(usize),
}

/// A handle identified by its seam: a simple closed w-loop around its tube.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Handle {
    pub id: usize,
    pub seam: Walk,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    vertex_count: usize,
    edges: Vec<[VertexId; 2]>,
    faces: Vec<Walk>,
    face_tags: Vec<FaceTag>,
    boundaries: Vec<Boundary>,
    handles: Vec<Handle>,
    next_boundary_id: usize,
}

/// Incidence structure around one vertex: the corners of the faces meeting
/// there, each joining an incoming and an outgoing edge.
#[derive(Clone, Debug)]
pub(crate) struct Corner {
    pub face: FaceId,
    pub pos: usize,
    pub edge_in: EdgeId,
    pub edge_out: EdgeId,
}

impl CellComplex {
    /// Assembles a complex from raw tables after structural checks (ids in
    /// range, walks closed). Manifold invariants are checked by [`Self::validate`].
    pub fn from_parts(
        vertex_count: usize,
        edges: Vec<[VertexId; 2]>,
        faces: Vec<Walk>,
        boundaries: Vec<Boundary>,
    ) -> Result<Self> {
        let n_faces = faces.len();
        let next_boundary_id = boundaries.iter().map(|b| b.id + 1).max().unwrap_or(0);
        let c = CellComplex {
            vertex_count,
            edges,
            faces,
            face_tags: vec![FaceTag::Base; n_faces],
            boundaries,
            handles: Vec::new(),
            next_boundary_id,
        };
        c.check_structure()?;
        Ok(c)
    }

    pub(crate) fn check_structure(&self) -> Result<()> {
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            if a >= self.vertex_count || b >= self.vertex_count {
                return Err(Error::Format(format!("edge {e} has endpoint out of range")));
            }
            if a == b {
                return Err(Error::Format(format!("edge {e} is a self-loop")));
            }
        }
        let check_walk = |w: &Walk, what: &str| -> Result<()> {
            if w.vertices.len() != w.edges.len() || w.is_empty() {
                return Err(Error::Format(format!("{what}: malformed walk")));
            }
            let n = w.len();
            for i in 0..n {
                let e = w.edges[i];
                if e >= self.edges.len() {
                    return Err(Error::Format(format!("{what}: edge {e} out of range")));
                }
                let (u, v) = (w.vertices[i], w.vertices[(i + 1) % n]);
                if !self.edge_joins(e, u, v) {
                    return Err(Error::Format(format!(
                        "{what}: edge {e} does not join {u} and {v}"
                    )));
                }
            }
            Ok(())
        };
        for (f, w) in self.faces.iter().enumerate() {
            check_walk(w, &format!("face {f}"))?;
        }
        for b in &self.boundaries {
            check_walk(&b.walk, &format!("boundary {}", b.id))?;
        }
        for h in &self.handles {
            check_walk(&h.seam, &format!("handle {}", h.id))?;
        }
        if self.face_tags.len() != self.faces.len() {
            return Err(Error::Format("face tag table has wrong length".into()));
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn edge_joins(&self, e: EdgeId, u: VertexId, v: VertexId) -> bool {
        let [a, b] = self.edges[e];
        (a == u && b == v) || (a == v && b == u)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e]
    }

    pub fn faces(&self) -> &[Walk] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Walk {
        &self.faces[f]
    }

    pub fn face_tags(&self) -> &[FaceTag] {
        &self.face_tags
    }

    pub fn boundaries(&self) -> &[Boundary] {
        &self.boundaries
    }

    pub fn boundary(&self, id: usize) -> Result<&Boundary> {
        self.boundaries
            .iter()
            .find(|b| b.id == id)
            .ok_or(Error::NoSuchBoundary(id))
    }

    pub fn handles(&self) -> &[Handle] {
        &self.handles
    }

    /// Id the next new boundary circle will receive.
    pub fn next_boundary_id(&self) -> usize {
        self.next_boundary_id
    }

    pub fn handle(&self, id: usize) -> Option<&Handle> {
        self.handles.iter().find(|h| h.id == id)
    }

    pub fn is_closed(&self) -> bool {
        self.boundaries.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Neighbours of each vertex as `(neighbour, edge)`, sorted by edge id.
    pub fn adjacency(&self) -> Vec<Vec<(VertexId, EdgeId)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        adj
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &[a, b] in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Vertices of valence greater than four.
    pub fn kinks(&self) -> Vec<VertexId> {
        self.valences()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 4)
            .map(|(v, _)| v)
            .collect()
    }

    /// Faces incident to each edge, with multiplicity.
    pub fn edge_faces(&self) -> Vec<Vec<FaceId>> {
        let mut out = vec![Vec::new(); self.edges.len()];
        for (f, w) in self.faces.iter().enumerate() {
            for &e in &w.edges {
                out[e].push(f);
            }
        }
        out
    }

    pub(crate) fn corners(&self) -> Vec<Vec<Corner>> {
        let mut out: Vec<Vec<Corner>> = vec![Vec::new(); self.vertex_count];
        for (f, w) in self.faces.iter().enumerate() {
            let n = w.len();
            for pos in 0..n {
                out[w.vertices[pos]].push(Corner {
                    face: f,
                    pos,
                    edge_in: w.edges[(pos + n - 1) % n],
                    edge_out: w.edges[pos],
                });
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Attempts to orient all faces coherently.
    pub fn is_orientable(&self) -> bool {
        // Occurrences of each edge as (face, traversed from edges[e][0] to edges[e][1]).
        let mut occ: Vec<Vec<(FaceId, bool)>> = vec![Vec::new(); self.edges.len()];
        for (f, w) in self.faces.iter().enumerate() {
            for (i, &e) in w.edges.iter().enumerate() {
                occ[e].push((f, w.vertices[i] == self.edges[e][0]));
            }
        }
        let mut flip: Vec<Option<bool>> = vec![None; self.faces.len()];
        for start in 0..self.faces.len() {
            if flip[start].is_some() {
                continue;
            }
            flip[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                let ff = flip[f].unwrap();
                for &e in &self.faces[f].edges {
                    let [(f0, d0), (f1, d1)] = match occ[e][..] {
                        [a, b] => [a, b],
                        _ => continue,
                    };
                    if f0 == f1 {
                        if d0 == d1 {
                            return false;
                        }
                        continue;
                    }
                    let (mine, (other, d_other)) = if f0 == f {
                        (d0, (f1, d1))
                    } else {
                        (d1, (f0, d0))
                    };
                    // The neighbour must traverse e opposite to us.
                    let needed = d_other ^ mine ^ ff ^ true;
                    match flip[other] {
                        None => {
                            flip[other] = Some(needed);
                            queue.push_back(other);
                        }
                        Some(x) if x != needed => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Canonical textual form (sorted tables), used for equality and hashing.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&io::ComplexRecord::from(self)).expect("serializable")
    }

    /// Diagnostics report: incidence, connectivity, valences, χ, boundaries.
    pub fn validate(&self) -> Diagnostics {
        let mut issues = Vec::new();
        if let Err(e) = self.check_structure() {
            issues.push(format!("structure: {e}"));
        }
        let mut on_boundary = vec![0usize; self.edges.len()];
        for b in &self.boundaries {
            for &e in &b.walk.edges {
                on_boundary[e] += 1;
            }
        }
        let mut face_incidence = vec![0usize; self.edges.len()];
        for w in &self.faces {
            for &e in &w.edges {
                face_incidence[e] += 1;
            }
        }
        let mut dangling_edges = Vec::new();
        for e in 0..self.edges.len() {
            let expected = if on_boundary[e] > 0 { 1 } else { 2 };
            if on_boundary[e] > 1 {
                issues.push(format!(
                    "edge {e} lies on {} boundary circles",
                    on_boundary[e]
                ));
            }
            if face_incidence[e] != expected {
                issues.push(format!(
                    "edge {e} borders {} faces, expected {expected}",
                    face_incidence[e]
                ));
                dangling_edges.push(e);
            }
        }
        let connected = self.is_connected();
        if !connected {
            issues.push("complex is disconnected".into());
        }
        // Vertex links: a single cycle for interior vertices, a single path on boundaries.
        let corners = self.corners();
        let deg = self.valences();
        for v in 0..self.vertex_count {
            if deg[v] == 0 {
                issues.push(format!("vertex {v} is isolated"));
                continue;
            }
            if !link_is_single_component(&corners[v], deg[v]) {
                issues.push(format!("vertex {v} has a disconnected link"));
            }
        }
        let chi = self.euler_characteristic();
        if self.is_closed() && (chi > 2 || chi.rem_euclid(2) != 0) {
            issues.push(format!(
                "closed complex has invalid Euler characteristic {chi}"
            ));
        }
        let mut valence_histogram = BTreeMap::new();
        for &d in &deg {
            *valence_histogram.entry(d).or_insert(0usize) += 1;
        }
        let mut face_size_histogram = BTreeMap::new();
        for w in &self.faces {
            *face_size_histogram.entry(w.len()).or_insert(0usize) += 1;
        }
        Diagnostics {
            passed: issues.is_empty(),
            vertices: self.vertex_count,
            edges: self.edges.len(),
            faces: self.faces.len(),
            euler_characteristic: chi,
            connected,
            orientable: self.is_orientable(),
            valence_histogram,
            face_size_histogram,
            boundary_lengths: self
                .boundaries
                .iter()
                .map(|b| (b.id, b.walk.len()))
                .collect(),
            kinks: self.kinks().len(),
            dangling_edges,
            issues,
        }
    }

    /// Dual complex: faces become vertices, vertices become faces, and edge
    /// `e` of the dual joins the two faces bordering `e`. Edge ids are kept.
    pub fn dualize(&self) -> Result<CellComplex> {
        if !self.is_closed() {
            return Err(Error::DualUndefined);
        }
        let ef = self.edge_faces();
        let mut edges = Vec::with_capacity(self.edges.len());
        for (e, fs) in ef.iter().enumerate() {
            if fs.len() != 2 || fs[0] == fs[1] {
                return Err(Error::SurgeryConflict(format!(
                    "edge {e} does not separate two distinct faces"
                )));
            }
            edges.push([fs[0], fs[1]]);
        }
        let corners = self.corners();
        let mut faces = Vec::with_capacity(self.vertex_count);
        for v in 0..self.vertex_count {
            faces.push(
                link_walk(&corners[v]).ok_or_else(|| {
                    Error::SurgeryConflict(format!("vertex {v} has no cyclic link"))
                })?,
            );
        }
        let mut dual = CellComplex::from_parts(self.faces.len(), edges, faces, Vec::new())?;
        dual.next_boundary_id = self.next_boundary_id;
        Ok(dual)
    }
}

fn link_is_single_component(corners: &[Corner], degree: usize) -> bool {
    if corners.is_empty() {
        return false;
    }
    // Union-find over incident edges, joined by corners.
    let mut ids: Vec<EdgeId> = corners
        .iter()
        .flat_map(|c| [c.edge_in, c.edge_out])
        .collect();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() != degree {
        // Some incident edge is on no face corner (dangling); reported elsewhere.
        return true;
    }
    let idx = |e: EdgeId| ids.binary_search(&e).unwrap();
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let n = p[y];
            p[y] = r;
            y = n;
        }
        r
    }
    for c in corners {
        let (a, b) = (
            find(&mut parent, idx(c.edge_in)),
            find(&mut parent, idx(c.edge_out)),
        );
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..ids.len()).all(|i| find(&mut parent, i) == root)
}

/// Walks the link of an interior vertex, producing the dual face: faces as
/// dual vertices joined by the edges shared between consecutive corners.
fn link_walk(corners: &[Corner]) -> Option<Walk> {
    if corners.is_empty() {
        return None;
    }
    let mut used = vec![false; corners.len()];
    let mut vertices = Vec::with_capacity(corners.len());
    let mut edges = Vec::with_capacity(corners.len());
    let mut cur = 0;
    let mut via_out = true;
    loop {
        used[cur] = true;
        let c = &corners[cur];
        let leave = if via_out { c.edge_out } else { c.edge_in };
        vertices.push(c.face);
        edges.push(leave);
        // The other corner that touches `leave`.
        let next = corners
            .iter()
            .enumerate()
            .find(|(i, o)| *i != cur && (o.edge_in == leave || o.edge_out == leave) && !used[*i]);
        match next {
            Some((i, o)) => {
                via_out = o.edge_in == leave;
                cur = i;
            }
            None => {
                // Closing step back to the first corner.
                if corners[0].edge_in == leave {
                    break;
                }
                return None;
            }
        }
    }
    if vertices.len() != corners.len() {
        return None;
    }
    Some(Walk { vertices, edges })
}

/// Output of [`CellComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub passed: bool,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub connected: bool,
    pub orientable: bool,
    pub valence_histogram: BTreeMap<usize, usize>,
    pub face_size_histogram: BTreeMap<usize, usize>,
    pub boundary_lengths: Vec<(usize, usize)>,
    pub kinks: usize,
    pub dangling_edges: Vec<EdgeId>,
    pub issues: Vec<String>,
}

#[cfg(test)]
mod tests;
