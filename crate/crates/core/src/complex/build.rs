use std::collections::HashMap;

use super::{Boundary, CellComplex, FaceTag, Walk};
use crate::error::{Error, Result};

/// `side × side` periodic square lattice. Vertex `(x, y)` has id `y·side + x`;
/// the horizontal edge leaving it eastward has id `2·(y·side + x)` and the
/// vertical edge leaving it northward `2·(y·side + x) + 1`. Face `(x, y)` has
/// `(x, y)` as its first corner and is traversed counter-clockwise.
pub fn build_torus(side: usize) -> Result<CellComplex> {
    if side < 2 {
        return Err(Error::InvalidParameter(format!(
            "torus side must be at least 2, got {side}"
        )));
    }
    let vid = |x: usize, y: usize| (y % side) * side + (x % side);
    let h = |x: usize, y: usize| 2 * vid(x, y);
    let v = |x: usize, y: usize| 2 * vid(x, y) + 1;
    let mut edges = vec![[0, 0]; 2 * side * side];
    for y in 0..side {
        for x in 0..side {
            edges[h(x, y)] = [vid(x, y), vid(x + 1, y)];
            edges[v(x, y)] = [vid(x, y), vid(x, y + 1)];
        }
    }
    let mut faces = Vec::with_capacity(side * side);
    for y in 0..side {
        for x in 0..side {
            faces.push(Walk {
                vertices: vec![vid(x, y), vid(x + 1, y), vid(x + 1, y + 1), vid(x, y + 1)],
                edges: vec![h(x, y), v(x + 1, y), h(x, y + 1), v(x, y)],
            });
        }
    }
    CellComplex::from_parts(side * side, edges, faces, Vec::new())
}

/// Open square tube: `length + 1` rings of `circumference` vertices joined by
/// `length` layers of quadrilaterals. Ring `j` vertex `i` has id
/// `j·circumference + i`. Boundary circle 0 is ring 0, circle 1 is ring
/// `length`; all faces are tagged `Tube(tag)`.
pub fn build_tube(circumference: usize, length: usize, tag: usize) -> Result<CellComplex> {
    if circumference < 3 || length < 1 {
        return Err(Error::InvalidParameter(format!(
            "tube needs circumference ≥ 3 and length ≥ 1, got {circumference} × {length}"
        )));
    }
    let m = circumference;
    let vid = |j: usize, i: usize| j * m + (i % m);
    let mut edges = Vec::new();
    let mut ring_edge = HashMap::new();
    let mut long_edge = HashMap::new();
    for j in 0..=length {
        for i in 0..m {
            ring_edge.insert((j, i), edges.len());
            edges.push([vid(j, i), vid(j, i + 1)]);
        }
    }
    for j in 0..length {
        for i in 0..m {
            long_edge.insert((j, i), edges.len());
            edges.push([vid(j, i), vid(j + 1, i)]);
        }
    }
    let mut faces = Vec::new();
    for j in 0..length {
        for i in 0..m {
            faces.push(Walk {
                vertices: vec![vid(j, i), vid(j, i + 1), vid(j + 1, i + 1), vid(j + 1, i)],
                edges: vec![
                    ring_edge[&(j, i)],
                    long_edge[&(j, (i + 1) % m)],
                    ring_edge[&(j + 1, i)],
                    long_edge[&(j, i)],
                ],
            });
        }
    }
    // Boundary circles run opposite to their incident face.
    let ring0 = Walk {
        vertices: (0..m).map(|i| vid(0, (m - i) % m)).collect(),
        edges: (0..m)
            .map(|i| ring_edge[&(0, (2 * m - 1 - i) % m)])
            .collect(),
    };
    let ring_end = Walk {
        vertices: (0..m).map(|i| vid(length, i)).collect(),
        edges: (0..m).map(|i| ring_edge[&(length, i)]).collect(),
    };
    let boundaries = vec![
        Boundary { id: 0, walk: ring0 },
        Boundary {
            id: 1,
            walk: ring_end,
        },
    ];
    let n_faces = faces.len();
    let mut c = CellComplex::from_parts((length + 1) * m, edges, faces, boundaries)?;
    c.face_tags = vec![FaceTag::Tube(tag); n_faces];
    Ok(c)
}

impl CellComplex {
    /// Disjoint union; ids of `other` are shifted past those of `self`,
    /// including boundary and handle ids.
    pub fn disjoint_union(&self, other: &CellComplex) -> CellComplex {
        let (dv, de) = (self.vertex_count, self.edges.len());
        let db = self.next_boundary_id;
        let dh = self.handles.iter().map(|h| h.id + 1).max().unwrap_or(0);
        let shift = |w: &Walk| Walk {
            vertices: w.vertices.iter().map(|v| v + dv).collect(),
            edges: w.edges.iter().map(|e| e + de).collect(),
        };
        let mut out = self.clone();
        out.vertex_count += other.vertex_count;
        out.edges
            .extend(other.edges.iter().map(|&[a, b]| [a + dv, b + dv]));
        out.faces.extend(other.faces.iter().map(shift));
        out.face_tags.extend_from_slice(&other.face_tags);
        out.boundaries
            .extend(other.boundaries.iter().map(|b| Boundary {
                id: b.id + db,
                walk: shift(&b.walk),
            }));
        out.handles
            .extend(other.handles.iter().map(|h| super::Handle {
                id: h.id + dh,
                seam: shift(&h.seam),
            }));
        out.next_boundary_id = db + other.next_boundary_id;
        out
    }

    pub(crate) fn set_handles(&mut self, handles: Vec<super::Handle>) {
        self.handles = handles;
    }
}
