use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{Boundary, CellComplex, Corner, EdgeId, FaceId, Handle, VertexId, Walk};
use crate::chain::BinaryChain;
use crate::error::{Error, Result};

/// Record of a cut: the loop that was cut and the two boundary circles it left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub cycle: BinaryChain,
    pub boundaries: (usize, usize),
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    /// Union keeping the smaller id as representative.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Local frame on a quadrilateral: the face and the index of its "bottom" edge.
#[derive(Clone, Copy)]
struct Frame {
    face: FaceId,
    bottom: usize,
}

impl CellComplex {
    /// Renumbers after vertex/edge identification and face removal. Vertex
    /// and edge maps send old ids to old representative ids; walks in
    /// `boundaries` and `handles` are given in old ids. Cells no longer used
    /// by any face or boundary are dropped, survivors keep their relative order.
    fn rebuild(
        &self,
        vmap: &[VertexId],
        emap: &[EdgeId],
        keep_face: &[bool],
        boundaries: Vec<Boundary>,
        handles: Vec<Handle>,
    ) -> Result<CellComplex> {
        let mut edge_used = vec![false; self.edges.len()];
        for (f, w) in self.faces.iter().enumerate() {
            if keep_face[f] {
                for &e in &w.edges {
                    edge_used[emap[e]] = true;
                }
            }
        }
        for b in &boundaries {
            for &e in &b.walk.edges {
                edge_used[emap[e]] = true;
            }
        }
        let mut vertex_used = vec![false; self.vertex_count];
        for e in 0..self.edges.len() {
            if edge_used[e] {
                let [a, b] = self.edges[e];
                let (a, b) = (vmap[a], vmap[b]);
                if a == b {
                    return Err(Error::SurgeryConflict(format!(
                        "identification collapses edge {e} to a loop"
                    )));
                }
                vertex_used[a] = true;
                vertex_used[b] = true;
            }
        }
        let mut new_v = vec![usize::MAX; self.vertex_count];
        let mut nv = 0;
        for v in 0..self.vertex_count {
            if vertex_used[v] {
                new_v[v] = nv;
                nv += 1;
            }
        }
        let mut new_e = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for e in 0..self.edges.len() {
            if edge_used[e] {
                new_e[e] = edges.len();
                let [a, b] = self.edges[e];
                edges.push([new_v[vmap[a]], new_v[vmap[b]]]);
            }
        }
        let map_walk = |w: &Walk| -> Option<Walk> {
            let vertices: Option<Vec<_>> = w
                .vertices
                .iter()
                .map(|&v| Some(new_v[vmap[v]]).filter(|&x| x != usize::MAX))
                .collect();
            let edges: Option<Vec<_>> = w
                .edges
                .iter()
                .map(|&e| Some(new_e[emap[e]]).filter(|&x| x != usize::MAX))
                .collect();
            Some(Walk {
                vertices: vertices?,
                edges: edges?,
            })
        };
        let mut faces = Vec::new();
        let mut face_tags = Vec::new();
        for (f, w) in self.faces.iter().enumerate() {
            if keep_face[f] {
                faces.push(map_walk(w).expect("kept face uses kept cells"));
                face_tags.push(self.face_tags[f]);
            }
        }
        let boundaries = boundaries
            .iter()
            .map(|b| Boundary {
                id: b.id,
                walk: map_walk(&b.walk).expect("boundary uses kept cells"),
            })
            .collect();
        let handles = handles
            .iter()
            .filter_map(|h| map_walk(&h.seam).map(|seam| Handle { id: h.id, seam }))
            .collect();
        let out = CellComplex {
            vertex_count: nv,
            edges,
            faces,
            face_tags,
            boundaries,
            handles,
            next_boundary_id: self.next_boundary_id,
        };
        out.check_structure()?;
        Ok(out)
    }

    fn step_east(&self, fr: Frame, ef: &[Vec<FaceId>]) -> Result<Frame> {
        self.step(fr, 1, ef)
    }

    fn step_north(&self, fr: Frame, ef: &[Vec<FaceId>]) -> Result<Frame> {
        self.step(fr, 2, ef)
    }

    /// Crosses edge `bottom + side` of the frame. For the east step the
    /// crossed edge becomes the neighbour's left side, for the north step its bottom.
    fn step(&self, fr: Frame, side: usize, ef: &[Vec<FaceId>]) -> Result<Frame> {
        let w = &self.faces[fr.face];
        if w.len() != 4 {
            return Err(Error::SurgeryConflict(format!(
                "face {} is not a quadrilateral",
                fr.face
            )));
        }
        let e = w.edges[(fr.bottom + side) % 4];
        let other = match ef[e][..] {
            [a, b] if a == fr.face && b != fr.face => b,
            [a, b] if b == fr.face && a != fr.face => a,
            _ => {
                return Err(Error::SurgeryConflict(format!(
                    "block runs into boundary or degenerate edge {e}"
                )))
            }
        };
        let g = &self.faces[other];
        if g.len() != 4 {
            return Err(Error::SurgeryConflict(format!(
                "face {other} is not a quadrilateral"
            )));
        }
        let q = g.edges.iter().position(|&x| x == e).unwrap();
        let (bottom, ok) = if side == 1 {
            (
                (q + 1) % 4,
                g.vertices[(q + 1) % 4] == w.vertices[(fr.bottom + 1) % 4],
            )
        } else {
            (q, g.vertices[q] == w.vertices[(fr.bottom + 3) % 4])
        };
        if !ok {
            return Err(Error::SurgeryConflict(format!(
                "faces {} and {other} are not coherently oriented",
                fr.face
            )));
        }
        Ok(Frame {
            face: other,
            bottom,
        })
    }

    /// Removes the `side × side` block of faces whose bottom-left corner is
    /// `anchor` and records the new boundary circle of `4·side` edges.
    pub fn punch_square_hole(&self, anchor: VertexId, side: usize) -> Result<(CellComplex, usize)> {
        let (c, ids) = self.punch_square_holes(&[(anchor, side)])?;
        Ok((c, ids[0]))
    }

    /// Punches several holes at once; returns the new boundary ids in order.
    pub fn punch_square_holes(
        &self,
        holes: &[(VertexId, usize)],
    ) -> Result<(CellComplex, Vec<usize>)> {
        let ef = self.edge_faces();
        let corners = self.corners();
        let mut taken: HashSet<VertexId> = self
            .boundaries
            .iter()
            .flat_map(|b| b.walk.vertices.iter().copied())
            .collect();
        let mut keep_face = vec![true; self.faces.len()];
        let mut boundaries = self.boundaries.clone();
        let mut next_id = self.next_boundary_id;
        let mut ids = Vec::new();
        for &(anchor, side) in holes {
            if side == 0 {
                return Err(Error::InvalidParameter("hole side must be positive".into()));
            }
            if anchor >= self.vertex_count {
                return Err(Error::InvalidParameter(format!("no vertex {anchor}")));
            }
            let start = corners[anchor]
                .iter()
                .min_by_key(|c| (c.pos != 0, c.face))
                .ok_or_else(|| Error::SurgeryConflict(format!("vertex {anchor} has no faces")))?;
            let mut row_start = Frame {
                face: start.face,
                bottom: start.pos,
            };
            let mut block = Vec::with_capacity(side * side);
            for j in 0..side {
                let mut fr = row_start;
                for i in 0..side {
                    block.push(fr);
                    if i + 1 < side {
                        fr = self.step_east(fr, &ef)?;
                    }
                }
                if j + 1 < side {
                    row_start = self.step_north(row_start, &ef)?;
                }
            }
            let mut block_faces: Vec<FaceId> = block.iter().map(|fr| fr.face).collect();
            block_faces.sort_unstable();
            block_faces.dedup();
            if block_faces.len() != side * side {
                return Err(Error::SurgeryConflict(format!(
                    "block of side {side} at vertex {anchor} wraps onto itself"
                )));
            }
            let block_vertices: HashSet<VertexId> = block_faces
                .iter()
                .flat_map(|&f| self.faces[f].vertices.iter().copied())
                .collect();
            if block_vertices.iter().any(|v| taken.contains(v))
                || block_faces.iter().any(|&f| !keep_face[f])
            {
                return Err(Error::SurgeryConflict(format!(
                    "hole at vertex {anchor} overlaps or touches an existing boundary or hole"
                )));
            }
            taken.extend(block_vertices);
            let mut count: HashMap<EdgeId, usize> = HashMap::new();
            for &f in &block_faces {
                for &e in &self.faces[f].edges {
                    *count.entry(e).or_default() += 1;
                }
            }
            let mut directed = Vec::new();
            for &f in &block_faces {
                let w = &self.faces[f];
                for i in 0..4 {
                    if count[&w.edges[i]] == 1 {
                        directed.push((w.vertices[i], w.edges[i], w.vertices[(i + 1) % 4]));
                    }
                }
            }
            let rim = chain_directed(&directed, anchor).ok_or_else(|| {
                Error::SurgeryConflict(format!(
                    "rim of hole at vertex {anchor} is not a simple circle"
                ))
            })?;
            if rim.len() != 4 * side {
                return Err(Error::SurgeryConflict(format!(
                    "rim of hole at vertex {anchor} has {} edges, expected {}",
                    rim.len(),
                    4 * side
                )));
            }
            for f in block_faces {
                keep_face[f] = false;
            }
            boundaries.push(Boundary {
                id: next_id,
                walk: rim,
            });
            ids.push(next_id);
            next_id += 1;
        }
        let vmap: Vec<usize> = (0..self.vertex_count).collect();
        let emap: Vec<usize> = (0..self.edges.len()).collect();
        let mut out = self.rebuild(&vmap, &emap, &keep_face, boundaries, self.handles.clone())?;
        out.next_boundary_id = next_id;
        Ok((out, ids))
    }

    /// Identifies boundary `b2` with `b1`: vertex `i` of `b1` meets vertex
    /// `offset − i` of `b2` (orientation-preserving), or `offset + i` when
    /// `reversed`. Both circles disappear; their edges become interior.
    pub fn sew_boundaries(
        &self,
        b1: usize,
        b2: usize,
        offset: usize,
        reversed: bool,
    ) -> Result<CellComplex> {
        self.sew_tracked(b1, b2, offset, reversed).map(|(c, _)| c)
    }

    /// As [`Self::sew_boundaries`], also returning the seam in new ids.
    pub(crate) fn sew_tracked(
        &self,
        b1: usize,
        b2: usize,
        offset: usize,
        reversed: bool,
    ) -> Result<(CellComplex, Walk)> {
        if b1 == b2 {
            return Err(Error::SelfSewUnsupported);
        }
        let w1 = self.boundary(b1)?.walk.clone();
        let w2 = self.boundary(b2)?.walk.clone();
        let n = w1.len();
        if n != w2.len() {
            return Err(Error::LengthMismatch(n, w2.len()));
        }
        let partner = |i: usize| -> usize {
            if reversed {
                (offset + i) % n
            } else {
                (offset % n + n - i % n) % n
            }
        };
        let mut dsu = Dsu::new(self.vertex_count);
        let mut emap: Vec<usize> = (0..self.edges.len()).collect();
        for i in 0..n {
            let j = partner(i);
            dsu.union(w1.vertices[i], w2.vertices[j]);
            let e2 = if reversed {
                w2.edges[j]
            } else {
                w2.edges[(j + n - 1) % n]
            };
            emap[e2] = w1.edges[i];
        }
        let vmap: Vec<usize> = (0..self.vertex_count).map(|v| dsu.find(v)).collect();
        for i in 0..n {
            let e1 = w1.edges[i];
            let j = partner(i);
            let e2 = if reversed {
                w2.edges[j]
            } else {
                w2.edges[(j + n - 1) % n]
            };
            let [a1, c1] = self.edges[e1];
            let [a2, c2] = self.edges[e2];
            let s1 = [vmap[a1].min(vmap[c1]), vmap[a1].max(vmap[c1])];
            let s2 = [vmap[a2].min(vmap[c2]), vmap[a2].max(vmap[c2])];
            if s1 != s2 {
                return Err(Error::SurgeryConflict(format!(
                    "edges {e1} and {e2} do not line up when sewing"
                )));
            }
        }
        let boundaries: Vec<Boundary> = self
            .boundaries
            .iter()
            .filter(|b| b.id != b1 && b.id != b2)
            .cloned()
            .collect();
        let keep_face = vec![true; self.faces.len()];
        // Carry the seam through the rebuild as a temporary handle.
        let mut handles = self.handles.clone();
        let seam_tag = usize::MAX;
        handles.push(Handle {
            id: seam_tag,
            seam: w1,
        });
        let mut out = self.rebuild(&vmap, &emap, &keep_face, boundaries, handles)?;
        let pos = out
            .handles
            .iter()
            .position(|h| h.id == seam_tag)
            .ok_or_else(|| Error::Internal("seam lost during sewing".into()))?;
        let seam = out.handles.remove(pos).seam;
        Ok((out, seam))
    }

    /// Cuts along a vertex-simple two-sided loop that avoids the boundary.
    /// Rejects cuts that disconnect the surface.
    pub fn cut_along_cycle(&self, cycle: &BinaryChain) -> Result<(CellComplex, Cut)> {
        self.cut_along_cycle_with(cycle, false)
    }

    pub fn cut_along_cycle_with(
        &self,
        cycle: &BinaryChain,
        allow_separating: bool,
    ) -> Result<(CellComplex, Cut)> {
        let walk = self.order_cycle(cycle)?;
        let n = walk.len();
        let corners = self.corners();
        let LoopSides { arcs, side_a } = self.loop_sides(&walk, &corners)?;
        let corner_touching = |i: usize, arc: usize, e: EdgeId| -> Option<&Corner> {
            touching_corner(&corners[walk.vertices[i]], &arcs[i][arc], e)
        };

        let mut out = self.clone();
        let v0 = self.vertex_count;
        let e0 = self.edges.len();
        out.vertex_count += n;
        for i in 0..n {
            out.edges.push([v0 + i, v0 + (i + 1) % n]);
        }
        let loop_edges: HashSet<EdgeId> = walk.edges.iter().copied().collect();
        for i in 0..n {
            let v = walk.vertices[i];
            let b_arc = 1 - side_a[i];
            for &k in &arcs[i][b_arc] {
                let c = &corners[v][k];
                out.faces[c.face].vertices[c.pos] = v0 + i;
                for e in [c.edge_in, c.edge_out] {
                    if !loop_edges.contains(&e) {
                        let ends = &mut out.edges[e];
                        for x in ends.iter_mut() {
                            if *x == v {
                                *x = v0 + i;
                            }
                        }
                    }
                }
            }
            // Side-B face of the outgoing loop edge takes the duplicate edge.
            let e = walk.edges[i];
            let c = corner_touching(i, b_arc, e)
                .ok_or_else(|| Error::NotSimple("loop edge without second face".into()))?;
            let len = self.faces[c.face].len();
            let idx = if c.edge_out == e {
                c.pos
            } else {
                (c.pos + len - 1) % len
            };
            out.faces[c.face].edges[idx] = e0 + i;
        }
        let dup = Walk {
            vertices: (0..n).map(|i| v0 + i).collect(),
            edges: (0..n).map(|i| e0 + i).collect(),
        };
        // Boundary circles run against their incident face.
        let a_forward = corner_touching(0, side_a[0], walk.edges[0])
            .unwrap()
            .edge_out
            == walk.edges[0];
        let b_forward = corner_touching(0, 1 - side_a[0], walk.edges[0])
            .unwrap()
            .edge_out
            == walk.edges[0];
        let circle_a = if a_forward {
            walk.reversed()
        } else {
            walk.clone()
        };
        let circle_b = if b_forward { dup.reversed() } else { dup };
        let (id_a, id_b) = (out.next_boundary_id, out.next_boundary_id + 1);
        out.next_boundary_id += 2;
        out.boundaries.push(Boundary {
            id: id_a,
            walk: circle_a,
        });
        out.boundaries.push(Boundary {
            id: id_b,
            walk: circle_b,
        });
        let on_loop: HashSet<VertexId> = walk.vertices.iter().copied().collect();
        out.handles
            .retain(|h| h.seam.vertices.iter().all(|v| !on_loop.contains(v)));
        out.check_structure()?;
        if !allow_separating && !out.is_connected() {
            return Err(Error::SeparatingCut);
        }
        Ok((
            out,
            Cut {
                cycle: cycle.clone(),
                boundaries: (id_a, id_b),
            },
        ))
    }

    /// Orders a chain into a vertex-simple closed walk that avoids the boundary.
    pub(crate) fn order_cycle(&self, cycle: &BinaryChain) -> Result<Walk> {
        if cycle.is_empty() {
            return Err(Error::NotSimple("empty loop".into()));
        }
        let mut incident: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        for &e in cycle.support() {
            if e >= self.edges.len() {
                return Err(Error::NotSimple(format!("edge {e} out of range")));
            }
            for v in self.edges[e] {
                incident.entry(v).or_default().push(e);
            }
        }
        if let Some((v, es)) = incident.iter().find(|(_, es)| es.len() != 2) {
            return Err(Error::NotSimple(format!(
                "vertex {v} meets {} loop edges",
                es.len()
            )));
        }
        let boundary_vertices: HashSet<VertexId> = self
            .boundaries
            .iter()
            .flat_map(|b| b.walk.vertices.iter().copied())
            .collect();
        if incident.keys().any(|v| boundary_vertices.contains(v)) {
            return Err(Error::NotSimple("loop meets the boundary".into()));
        }
        let first = cycle.support()[0];
        let start = self.edges[first][0];
        let mut vertices = vec![start];
        let mut edges = vec![first];
        let mut cur = self.edges[first][1];
        let mut prev_edge = first;
        while cur != start {
            let es = &incident[&cur];
            let next = if es[0] == prev_edge { es[1] } else { es[0] };
            vertices.push(cur);
            edges.push(next);
            let [a, b] = self.edges[next];
            cur = if a == cur { b } else { a };
            prev_edge = next;
            if edges.len() > cycle.weight() {
                return Err(Error::NotSimple("loop does not close".into()));
            }
        }
        if edges.len() != cycle.weight() {
            return Err(Error::NotSimple("chain has more than one component".into()));
        }
        Ok(Walk { vertices, edges })
    }
}

/// For each vertex of a two-sided loop, the corners of its link split into
/// two arcs, and which arc lies on the loop's first side.
pub(crate) struct LoopSides {
    pub arcs: Vec<[Vec<usize>; 2]>,
    pub side_a: Vec<usize>,
}

fn touching_corner<'a>(corners: &'a [Corner], arc: &[usize], e: EdgeId) -> Option<&'a Corner> {
    arc.iter()
        .map(|&k| &corners[k])
        .find(|c| c.edge_in == e || c.edge_out == e)
}

impl CellComplex {
    pub(crate) fn loop_sides(&self, walk: &Walk, corners: &[Vec<Corner>]) -> Result<LoopSides> {
        let n = walk.len();
        let mut arcs: Vec<[Vec<usize>; 2]> = Vec::with_capacity(n);
        for i in 0..n {
            let v = walk.vertices[i];
            let e_in = walk.edges[(i + n - 1) % n];
            let e_out = walk.edges[i];
            arcs.push(split_link(&corners[v], e_in, e_out).ok_or_else(|| {
                Error::NotSimple(format!("link of vertex {v} does not split into two arcs"))
            })?);
        }
        let corner_touching = |i: usize, arc: usize, e: EdgeId| -> Option<&Corner> {
            touching_corner(&corners[walk.vertices[i]], &arcs[i][arc], e)
        };
        let mut side_a = vec![0usize; n];
        let mut face_a = vec![0usize; n];
        face_a[0] = corner_touching(0, 0, walk.edges[0])
            .ok_or_else(|| Error::NotSimple("loop edge without face".into()))?
            .face;
        let locate = |i: usize, face: FaceId, e: EdgeId| -> Option<usize> {
            (0..2).find(|&arc| corner_touching(i, arc, e).is_some_and(|c| c.face == face))
        };
        for i in 1..n {
            let prev = walk.edges[i - 1];
            let arc = locate(i, face_a[i - 1], prev).ok_or_else(|| {
                Error::NotSimple(format!(
                    "cannot follow side of loop at vertex {}",
                    walk.vertices[i]
                ))
            })?;
            if corner_touching(i, 1 - arc, prev).is_some_and(|c| c.face == face_a[i - 1]) {
                return Err(Error::NotSimple(format!(
                    "edge {prev} has the same face on both sides"
                )));
            }
            side_a[i] = arc;
            face_a[i] = corner_touching(i, arc, walk.edges[i])
                .ok_or_else(|| Error::NotSimple("loop edge without face".into()))?
                .face;
        }
        match locate(0, face_a[n - 1], walk.edges[n - 1]) {
            Some(0) => Ok(LoopSides { arcs, side_a }),
            Some(_) => Err(Error::OneSidedLoop),
            None => Err(Error::NotSimple("loop does not close consistently".into())),
        }
    }

    /// Edges leaving the loop into its first side, counted mod 2 over loop
    /// vertices. A closed walk crosses the loop an odd number of times iff
    /// it uses an odd number of these edges.
    pub(crate) fn crossing_cochain(&self, walk: &Walk) -> Result<BinaryChain> {
        let corners = self.corners();
        let LoopSides { arcs, side_a } = self.loop_sides(walk, &corners)?;
        let loop_edges: HashSet<EdgeId> = walk.edges.iter().copied().collect();
        let mut out = Vec::new();
        for i in 0..walk.len() {
            let v = walk.vertices[i];
            let mut at_vertex: Vec<EdgeId> = arcs[i][side_a[i]]
                .iter()
                .flat_map(|&k| [corners[v][k].edge_in, corners[v][k].edge_out])
                .filter(|e| !loop_edges.contains(e))
                .collect();
            at_vertex.sort_unstable();
            at_vertex.dedup();
            out.extend(at_vertex);
        }
        Ok(BinaryChain::from_edges(out))
    }
}

/// Splits the corners around a vertex into the two arcs separated by edges
/// `a` and `b`; each arc is listed starting next to `a`.
fn split_link(corners: &[Corner], a: EdgeId, b: EdgeId) -> Option<[Vec<usize>; 2]> {
    let touching = |e: EdgeId| -> Vec<usize> {
        corners
            .iter()
            .enumerate()
            .filter(|(_, c)| c.edge_in == e || c.edge_out == e)
            .map(|(i, _)| i)
            .collect()
    };
    let starts = touching(a);
    if starts.len() != 2 || a == b {
        return None;
    }
    let mut arcs: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (s, &start) in starts.iter().enumerate() {
        let mut cur = start;
        let mut entered = a;
        loop {
            if arcs[0].contains(&cur) || arcs[s].contains(&cur) {
                return None;
            }
            arcs[s].push(cur);
            let c = &corners[cur];
            let leave = if c.edge_in == entered {
                c.edge_out
            } else {
                c.edge_in
            };
            if leave == b {
                break;
            }
            let next = touching(leave).into_iter().find(|&k| k != cur)?;
            cur = next;
            entered = leave;
        }
    }
    if arcs[0].len() + arcs[1].len() != corners.len() {
        return None;
    }
    Some(arcs)
}

/// Chains directed edges `(from, edge, to)` into a single simple closed walk
/// starting at `start`.
pub(crate) fn chain_directed(
    directed: &[(VertexId, EdgeId, VertexId)],
    start: VertexId,
) -> Option<Walk> {
    let mut out_of: HashMap<VertexId, (EdgeId, VertexId)> = HashMap::new();
    for &(u, e, v) in directed {
        if out_of.insert(u, (e, v)).is_some() {
            return None;
        }
    }
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut cur = start;
    loop {
        let &(e, next) = out_of.get(&cur)?;
        vertices.push(cur);
        edges.push(e);
        cur = next;
        if cur == start {
            break;
        }
        if edges.len() > directed.len() {
            return None;
        }
    }
    (edges.len() == directed.len()).then_some(Walk { vertices, edges })
}
