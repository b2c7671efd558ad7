//! Plain adjacency view of the primal or dual graph of a complex, with the
//! breadth-first searches shared by the homology, geometry and decoding code.

use crate::chain::BinaryChain;
use crate::complex::CellComplex;
use crate::error::{Error, Result};

pub const UNREACHED: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct Graph {
    /// Endpoints of each edge; edge ids are the complex's edge ids.
    pub ends: Vec<[usize; 2]>,
    /// Neighbours as `(vertex, edge)`, sorted by edge id.
    pub adj: Vec<Vec<(usize, usize)>>,
}

/// Breadth-first search tree: distances and the edge used to reach each node.
#[derive(Clone, Debug)]
pub struct BfsTree {
    pub root: usize,
    pub dist: Vec<usize>,
    pub parent_edge: Vec<usize>,
    pub order: Vec<usize>,
}

impl Graph {
    pub fn from_ends(n: usize, ends: Vec<[usize; 2]>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (e, &[a, b]) in ends.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        Graph { ends, adj }
    }

    pub fn primal(c: &CellComplex) -> Self {
        Graph::from_ends(c.vertex_count(), c.edges().to_vec())
    }

    /// Faces as nodes; edge `e` joins the two faces it borders. An edge with
    /// the same face on both sides becomes a self-loop.
    pub fn dual(c: &CellComplex) -> Result<Self> {
        if !c.is_closed() {
            return Err(Error::BoundedComplex);
        }
        let mut ends = Vec::with_capacity(c.edge_count());
        for (e, fs) in c.edge_faces().iter().enumerate() {
            match fs[..] {
                [a, b] => ends.push([a, b]),
                _ => {
                    return Err(Error::SurgeryConflict(format!(
                        "edge {e} borders {} face sides, expected 2",
                        fs.len()
                    )))
                }
            }
        }
        Ok(Graph::from_ends(c.face_count(), ends))
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn bfs(&self, root: usize) -> BfsTree {
        self.bfs_limited(root, usize::MAX)
    }

    /// Search truncated at distance `limit`.
    pub fn bfs_limited(&self, root: usize, limit: usize) -> BfsTree {
        let n = self.node_count();
        let mut dist = vec![UNREACHED; n];
        let mut parent_edge = vec![UNREACHED; n];
        let mut order = vec![root];
        dist[root] = 0;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            if dist[u] >= limit {
                continue;
            }
            for &(w, e) in &self.adj[u] {
                if dist[w] == UNREACHED {
                    dist[w] = dist[u] + 1;
                    parent_edge[w] = e;
                    order.push(w);
                }
            }
        }
        BfsTree {
            root,
            dist,
            parent_edge,
            order,
        }
    }

    /// Number of nodes at each distance from `root`, up to `r_max`.
    pub fn layer_sizes(&self, root: usize, r_max: usize) -> Vec<usize> {
        let t = self.bfs_limited(root, r_max);
        let mut layers = vec![0; r_max + 1];
        for &v in &t.order {
            layers[t.dist[v]] += 1;
        }
        layers
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() == 0 || self.bfs(0).order.len() == self.node_count()
    }
}

impl BfsTree {
    /// Edges of the tree path from `v` up to the root.
    pub fn path_edges(&self, g: &Graph, mut v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dist[v]);
        while v != self.root {
            let e = self.parent_edge[v];
            out.push(e);
            v = g.other_end(e, v);
        }
        out
    }

    /// Fundamental cycle of non-tree edge `e`: the two tree paths plus `e`,
    /// with any common prefix cancelled.
    pub fn fundamental_cycle(&self, g: &Graph, e: usize) -> BinaryChain {
        let [a, b] = g.ends[e];
        let mut all = self.path_edges(g, a);
        all.extend(self.path_edges(g, b));
        all.push(e);
        BinaryChain::from_edges(all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_torus;

    #[test]
    fn flat_torus_layers_are_diamonds() {
        let g = Graph::primal(&build_torus(20).unwrap());
        let layers = g.layer_sizes(0, 6);
        assert_eq!(layers, vec![1, 4, 8, 12, 16, 20, 24]);
    }

    #[test]
    fn fundamental_cycle_is_a_cycle() {
        let t = build_torus(5).unwrap();
        let g = Graph::primal(&t);
        let tree = g.bfs(0);
        for e in 0..g.edge_count() {
            if tree.parent_edge.contains(&e) {
                continue;
            }
            let z = tree.fundamental_cycle(&g, e);
            let mut deg = vec![0; g.node_count()];
            for &x in z.support() {
                for v in g.ends[x] {
                    deg[v] += 1;
                }
            }
            assert!(deg.iter().all(|d| d % 2 == 0));
        }
    }
}
