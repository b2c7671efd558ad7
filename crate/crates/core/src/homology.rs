//! CSS code of a closed complex, GF(2) homology tests and systoles.
//!
//! Qubits sit on edges. Vertex stabilizers are the edge stars of vertices,
//! face stabilizers the edge boundaries of faces. A primal cycle is trivial
//! iff it is a sum of face boundaries; a dual cycle (a set of edges forming a
//! closed walk of faces) is trivial iff it is a sum of vertex stars.

use std::collections::HashSet;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::BinaryChain;
use crate::complex::{CellComplex, VertexId};
use crate::error::{Error, Result};
use crate::gf2::{self, BitVec, Echelon};
use crate::graph::{BfsTree, Graph, UNREACHED};

/// `d2[f]` is the boundary of face `f` over edges, `d1[e]` the boundary of
/// edge `e` over vertices.
#[derive(Clone, Debug)]
pub struct BoundaryMaps {
    pub d2: Vec<BitVec>,
    pub d1: Vec<BitVec>,
}

impl BoundaryMaps {
    /// Checks `∂₁∘∂₂ = 0` entry by entry.
    pub fn composes_to_zero(&self) -> bool {
        let v = self.d1.first().map_or(0, BitVec::len);
        self.d2.iter().all(|col| {
            let mut acc = BitVec::zeros(v);
            for e in col.iter_ones() {
                acc.xor_assign(&self.d1[e]);
            }
            acc.is_zero()
        })
    }

    pub fn rank_d1(&self) -> usize {
        gf2::rank(&self.d1)
    }

    pub fn rank_d2(&self) -> usize {
        gf2::rank(&self.d2)
    }
}

pub fn boundary_maps(c: &CellComplex) -> Result<BoundaryMaps> {
    if !c.is_closed() {
        return Err(Error::BoundedComplex);
    }
    let (v, e) = (c.vertex_count(), c.edge_count());
    let d2 = c
        .faces()
        .iter()
        .map(|w| BinaryChain::from_edges(w.edges.iter().copied()).to_bits(e))
        .collect();
    let d1 = c
        .edges()
        .iter()
        .map(|&[a, b]| BitVec::from_ones(v, [a, b]))
        .collect();
    Ok(BoundaryMaps { d2, d1 })
}

/// One logical qubit: `z` is a primal cycle, `x` a dual cycle, and
/// `pairing(z_i, x_j) = δ_ij` across the basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalPair {
    pub z: BinaryChain,
    pub x: BinaryChain,
}

#[derive(Debug)]
pub struct CssCode {
    pub vertex_stabilizers: Vec<BinaryChain>,
    pub face_stabilizers: Vec<BinaryChain>,
    pub logical_pairs: Vec<LogicalPair>,
    pub k: usize,
    edge_count: usize,
    face_image: OnceLock<Echelon>,
    star_image: OnceLock<Echelon>,
}

/// Which lattice a chain lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sector {
    Primal,
    Dual,
}

impl CssCode {
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    fn face_image(&self) -> &Echelon {
        self.face_image.get_or_init(|| {
            let mut ech = Echelon::new(self.edge_count);
            for f in &self.face_stabilizers {
                ech.insert(&f.to_bits(self.edge_count));
            }
            ech
        })
    }

    fn star_image(&self) -> &Echelon {
        self.star_image.get_or_init(|| {
            let mut ech = Echelon::new(self.edge_count);
            for s in &self.vertex_stabilizers {
                ech.insert(&s.to_bits(self.edge_count));
            }
            ech
        })
    }

    /// Whether `z` closes up in the given lattice.
    pub fn is_cycle(&self, z: &BinaryChain, sector: Sector) -> bool {
        let checks = match sector {
            Sector::Primal => &self.vertex_stabilizers,
            Sector::Dual => &self.face_stabilizers,
        };
        checks.iter().all(|s| !s.pairing(z))
    }

    /// Membership of a cycle in the span of face boundaries (primal) or
    /// vertex stars (dual), by elimination against the cached reduced basis.
    pub fn is_trivial(&self, z: &BinaryChain, sector: Sector) -> Result<bool> {
        if z.support().last().is_some_and(|&e| e >= self.edge_count) {
            return Err(Error::InvalidParameter(
                "chain references a missing edge".into(),
            ));
        }
        if !self.is_cycle(z, sector) {
            return Err(Error::NotACycle);
        }
        let bits = z.to_bits(self.edge_count);
        Ok(match sector {
            Sector::Primal => self.face_image().contains(&bits),
            Sector::Dual => self.star_image().contains(&bits),
        })
    }

    /// Logical qubits whose operator is flipped by the cycle `z`: a primal
    /// cycle flips qubit `i` iff it pairs with `x_i`, a dual cycle iff it pairs with `z_i`.
    pub fn flipped_logicals(&self, z: &BinaryChain, sector: Sector) -> Vec<usize> {
        self.logical_pairs
            .iter()
            .enumerate()
            .filter(|(_, lp)| match sector {
                Sector::Primal => z.pairing(&lp.x),
                Sector::Dual => z.pairing(&lp.z),
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Symplectic form of the logical basis, ordered `(z_1..z_k, x_1..x_k)`.
    /// Two operators of the same type always commute.
    pub fn symplectic_matrix(&self) -> Vec<Vec<u8>> {
        let k = self.k;
        let mut m = vec![vec![0u8; 2 * k]; 2 * k];
        for i in 0..k {
            for j in 0..k {
                let p = u8::from(self.logical_pairs[i].z.pairing(&self.logical_pairs[j].x));
                m[i][k + j] = p;
                m[k + j][i] = p;
            }
        }
        m
    }

    pub fn has_standard_symplectic_form(&self) -> bool {
        let k = self.k;
        self.symplectic_matrix().iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, &x)| {
                let want = (r < k && c == r + k) || (r >= k && c + k == r);
                x == u8::from(want)
            })
        })
    }

    /// Every vertex stabilizer meets every face stabilizer evenly.
    pub fn stabilizers_commute(&self) -> bool {
        self.vertex_stabilizers
            .iter()
            .all(|s| self.face_stabilizers.iter().all(|f| !s.pairing(f)))
    }

    /// Logical operators commute with the stabilizers of the opposite type.
    pub fn logicals_commute_with_stabilizers(&self) -> bool {
        self.logical_pairs
            .iter()
            .all(|lp| self.is_cycle(&lp.z, Sector::Primal) && self.is_cycle(&lp.x, Sector::Dual))
    }
}

pub fn css_from_complex(c: &CellComplex) -> Result<CssCode> {
    if !c.is_closed() {
        return Err(Error::BoundedComplex);
    }
    let primal = Graph::primal(c);
    let dual = Graph::dual(c)?;
    if !primal.is_connected() {
        return Err(Error::InvalidParameter("complex is disconnected".into()));
    }
    let e_count = c.edge_count();
    let vertex_stabilizers: Vec<BinaryChain> = primal
        .adj
        .iter()
        .map(|nb| BinaryChain::from_edges(nb.iter().map(|&(_, e)| e)))
        .collect();
    let face_stabilizers: Vec<BinaryChain> = c
        .faces()
        .iter()
        .map(|w| BinaryChain::from_edges(w.edges.iter().copied()))
        .collect();

    // Tree-cotree decomposition: the edges outside a spanning tree and a
    // dual spanning cotree index a homology basis.
    let tree = primal.bfs(0);
    let in_tree = tree_mask(&tree, e_count);
    let cotree = bfs_avoiding(&dual, 0, &in_tree);
    let in_cotree = tree_mask(&cotree, e_count);
    let leftover: Vec<usize> = (0..e_count)
        .filter(|&e| !in_tree[e] && !in_cotree[e])
        .collect();
    let k = leftover.len();
    let chi = c.euler_characteristic();
    if k as i64 != 2 - chi {
        return Err(Error::Internal(format!(
            "tree-cotree left {k} edges, expected {}",
            2 - chi
        )));
    }
    let primal_gen: Vec<BinaryChain> = leftover
        .iter()
        .map(|&e| tree.fundamental_cycle(&primal, e))
        .collect();
    let dual_gen: Vec<BinaryChain> = leftover
        .iter()
        .map(|&e| cotree.fundamental_cycle(&dual, e))
        .collect();

    let mut code = CssCode {
        vertex_stabilizers,
        face_stabilizers,
        logical_pairs: Vec::new(),
        k,
        edge_count: e_count,
        face_image: OnceLock::new(),
        star_image: OnceLock::new(),
    };
    if k == 0 {
        return Ok(code);
    }
    // Short representatives: greedy by weight among fundamental cycles,
    // independent in homology (class read off by pairing with the generators).
    let z_short = short_basis(&primal, &dual_gen, &primal_gen);
    let x_short = short_basis(&dual, &primal_gen, &dual_gen);
    let m: Vec<BitVec> = z_short
        .iter()
        .map(|z| {
            BitVec::from_ones(
                k,
                x_short
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| z.pairing(x))
                    .map(|(j, _)| j),
            )
        })
        .collect();
    let inv = gf2::invert(&m)
        .ok_or_else(|| Error::Internal("intersection pairing is degenerate".into()))?;
    // x'_j = Σ_l inv[l][j] · x_l gives pairing(z_i, x'_j) = δ_ij.
    let logical_pairs = (0..k)
        .map(|j| {
            let mut x = BinaryChain::new();
            for (l, xl) in x_short.iter().enumerate() {
                if inv[l].get(j) {
                    x.add_assign(xl);
                }
            }
            LogicalPair {
                z: z_short[j].clone(),
                x,
            }
        })
        .collect();
    code.logical_pairs = logical_pairs;
    Ok(code)
}

fn bfs_avoiding(g: &Graph, root: usize, blocked_edge: &[bool]) -> BfsTree {
    let adj = g
        .adj
        .iter()
        .map(|nb| {
            nb.iter()
                .copied()
                .filter(|&(_, e)| !blocked_edge[e])
                .collect()
        })
        .collect();
    Graph {
        ends: g.ends.clone(),
        adj,
    }
    .bfs(root)
}

fn tree_mask(t: &BfsTree, edge_count: usize) -> Vec<bool> {
    let mut mask = vec![false; edge_count];
    for &e in &t.parent_edge {
        if e != UNREACHED {
            mask[e] = true;
        }
    }
    mask
}

/// Packs the class of each edge: bit `j` is set iff the edge lies in `basis[j]`.
fn edge_class_words(edge_count: usize, basis: &[BinaryChain]) -> (usize, Vec<u64>) {
    let w = basis.len().div_ceil(64).max(1);
    let mut words = vec![0u64; edge_count * w];
    for (j, b) in basis.iter().enumerate() {
        for &e in b.support() {
            words[e * w + j / 64] ^= 1 << (j % 64);
        }
    }
    (w, words)
}

/// Class vectors propagated down a BFS tree: `h[v]` is the class of the tree path to `v`.
struct RootScan {
    dist: Vec<usize>,
    in_tree: Vec<bool>,
    h: Vec<u64>,
}

fn scan_root(g: &Graph, root: usize, w: usize, ew: &[u64]) -> RootScan {
    let n = g.node_count();
    let t = g.bfs(root);
    let mut h = vec![0u64; n * w];
    for &v in t.order.iter().skip(1) {
        let e = t.parent_edge[v];
        let p = g.other_end(e, v);
        for i in 0..w {
            h[v * w + i] = h[p * w + i] ^ ew[e * w + i];
        }
    }
    let in_tree = tree_mask(&t, g.edge_count());
    RootScan {
        dist: t.dist,
        in_tree,
        h,
    }
}

fn candidate_class(scan: &RootScan, g: &Graph, e: usize, w: usize, ew: &[u64]) -> Vec<u64> {
    let [a, b] = g.ends[e];
    (0..w)
        .map(|i| scan.h[a * w + i] ^ scan.h[b * w + i] ^ ew[e * w + i])
        .collect()
}

fn roots_for(n: usize) -> Vec<usize> {
    const EXHAUSTIVE: usize = 400;
    const SAMPLED: usize = 200;
    if n <= EXHAUSTIVE {
        (0..n).collect()
    } else {
        (0..SAMPLED).map(|i| i * n / SAMPLED).collect()
    }
}

/// Greedy short basis: fundamental cycles from many roots, by increasing
/// weight, kept when independent in homology. `fallback` completes the basis
/// if root sampling misses a class.
fn short_basis(g: &Graph, cobasis: &[BinaryChain], fallback: &[BinaryChain]) -> Vec<BinaryChain> {
    let k = cobasis.len();
    let (w, ew) = edge_class_words(g.edge_count(), cobasis);
    let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
    for root in roots_for(g.node_count()) {
        let scan = scan_root(g, root, w, &ew);
        for e in 0..g.edge_count() {
            if scan.in_tree[e] {
                continue;
            }
            let [a, b] = g.ends[e];
            if candidate_class(&scan, g, e, w, &ew).iter().any(|&x| x != 0) {
                candidates.push((scan.dist[a] + scan.dist[b] + 1, root, e));
            }
        }
    }
    candidates.sort_unstable();
    let class_of =
        |z: &BinaryChain| BitVec::from_ones(k, (0..k).filter(|&j| z.pairing(&cobasis[j])));
    let mut ech = Echelon::new(k);
    let mut out = Vec::with_capacity(k);
    let mut current: Option<BfsTree> = None;
    for (_, root, e) in candidates {
        if out.len() == k {
            break;
        }
        if current.as_ref().map(|t| t.root) != Some(root) {
            current = Some(g.bfs(root));
        }
        let z = current.as_ref().unwrap().fundamental_cycle(g, e);
        if ech.insert(&class_of(&z)) {
            out.push(z);
        }
    }
    for z in fallback {
        if out.len() == k {
            break;
        }
        if ech.insert(&class_of(z)) {
            out.push(z.clone());
        }
    }
    out
}

pub fn is_nullhomologous(c: &CellComplex, z: &BinaryChain) -> Result<bool> {
    css_from_complex(c)?.is_trivial(z, Sector::Primal)
}

/// Shortest cycle with nonzero class and its weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub length: usize,
    pub cycle: BinaryChain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleLoop {
    pub handle: usize,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystoleReport {
    pub primal: Option<Witness>,
    pub dual: Option<Witness>,
    pub handle_loops: Vec<HandleLoop>,
    /// Set by the exhaustive search when no nontrivial cycle was found in range.
    pub inconclusive: bool,
}

/// Exact shortest nontrivial cycle: over all roots and all non-tree edges of
/// the root's BFS tree, the fundamental cycle with nonzero class and the
/// smallest `d(a) + d(b) + 1`.
fn shortest_nontrivial(g: &Graph, cobasis: &[BinaryChain]) -> Option<Witness> {
    if cobasis.is_empty() {
        return None;
    }
    let (w, ew) = edge_class_words(g.edge_count(), cobasis);
    let per_root: Vec<(usize, Vec<usize>)> = (0..g.node_count())
        .into_par_iter()
        .map(|root| {
            let scan = scan_root(g, root, w, &ew);
            let mut best = usize::MAX;
            let mut edges = Vec::new();
            for e in 0..g.edge_count() {
                if scan.in_tree[e] {
                    continue;
                }
                let [a, b] = g.ends[e];
                if scan.dist[a] == UNREACHED || scan.dist[b] == UNREACHED {
                    continue;
                }
                let key = scan.dist[a] + scan.dist[b] + 1;
                if key > best {
                    continue;
                }
                if candidate_class(&scan, g, e, w, &ew).iter().all(|&x| x == 0) {
                    continue;
                }
                if key < best {
                    best = key;
                    edges.clear();
                }
                edges.push(e);
            }
            (best, edges)
        })
        .collect();
    let best = per_root.iter().map(|(b, _)| *b).min()?;
    if best == usize::MAX {
        return None;
    }
    let mut witness: Option<BinaryChain> = None;
    for (root, (b, edges)) in per_root.iter().enumerate() {
        if *b != best {
            continue;
        }
        let t = g.bfs(root);
        for &e in edges {
            let z = t.fundamental_cycle(g, e);
            if z.weight() == best
                && witness
                    .as_ref()
                    .is_none_or(|cur| z.support() < cur.support())
            {
                witness = Some(z);
            }
        }
    }
    witness.map(|cycle| Witness {
        length: best,
        cycle,
    })
}

/// Primal and dual systoles with witnesses, plus the shortest l-loop through
/// each recorded handle.
pub fn systole(c: &CellComplex) -> Result<SystoleReport> {
    let code = css_from_complex(c)?;
    systole_with_code(c, &code)
}

pub fn systole_with_code(c: &CellComplex, code: &CssCode) -> Result<SystoleReport> {
    let primal = Graph::primal(c);
    let dual = Graph::dual(c)?;
    let xs: Vec<BinaryChain> = code.logical_pairs.iter().map(|lp| lp.x.clone()).collect();
    let zs: Vec<BinaryChain> = code.logical_pairs.iter().map(|lp| lp.z.clone()).collect();
    let mut handle_loops = Vec::new();
    for h in c.handles() {
        let z = handle_l_loop(c, h.id)?;
        handle_loops.push(HandleLoop {
            handle: h.id,
            length: z.weight(),
        });
    }
    Ok(SystoleReport {
        primal: shortest_nontrivial(&primal, &xs),
        dual: shortest_nontrivial(&dual, &zs),
        handle_loops,
        inconclusive: false,
    })
}

/// Exhaustive search over simple cycles of length at most `r_max`, each
/// tested by elimination. Only practical on small complexes.
pub fn systole_bruteforce(c: &CellComplex, r_max: usize) -> Result<SystoleReport> {
    let code = css_from_complex(c)?;
    let primal = Graph::primal(c);
    let dual = Graph::dual(c)?;
    let p = shortest_simple_nontrivial(&primal, r_max, |z| code.is_trivial(z, Sector::Primal))?;
    let d = shortest_simple_nontrivial(&dual, r_max, |z| code.is_trivial(z, Sector::Dual))?;
    let inconclusive = code.k > 0 && (p.is_none() || d.is_none());
    Ok(SystoleReport {
        primal: p,
        dual: d,
        handle_loops: Vec::new(),
        inconclusive,
    })
}

fn shortest_simple_nontrivial(
    g: &Graph,
    r_max: usize,
    is_trivial: impl Fn(&BinaryChain) -> Result<bool>,
) -> Result<Option<Witness>> {
    let mut best: Option<Witness> = None;
    let n = g.node_count();
    let mut on_path = vec![false; n];
    let mut path_edges: Vec<usize> = Vec::new();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        on_path[start] = true;
        dfs_cycles(
            g,
            start,
            start,
            r_max,
            &mut on_path,
            &mut path_edges,
            &mut found,
        );
        on_path[start] = false;
        for edges in found.drain(..) {
            let z = BinaryChain::from_edges(edges);
            let len = z.weight();
            let better = match &best {
                None => true,
                Some(b) => len < b.length || (len == b.length && z.support() < b.cycle.support()),
            };
            if better && !is_trivial(&z)? {
                best = Some(Witness {
                    length: len,
                    cycle: z,
                });
            }
        }
    }
    Ok(best)
}

/// Simple cycles through `start` whose other vertices exceed `start`; each
/// cycle is reported once by requiring its first edge id below its last.
/// Self-loops at `start` count as cycles of length one.
fn dfs_cycles(
    g: &Graph,
    start: usize,
    u: usize,
    r_max: usize,
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    if path.len() >= r_max {
        return;
    }
    for &(w, e) in &g.adj[u] {
        if path.last() == Some(&e) {
            continue;
        }
        if w == start {
            if path.is_empty() {
                // Self-loop: a one-edge cycle (listed twice in the adjacency).
                if g.ends[e][0] == g.ends[e][1] && found.last() != Some(&vec![e]) {
                    found.push(vec![e]);
                }
            } else if path[0] < e {
                let mut cyc = path.clone();
                cyc.push(e);
                found.push(cyc);
            }
            continue;
        }
        if w < start || on_path[w] {
            continue;
        }
        on_path[w] = true;
        path.push(e);
        dfs_cycles(g, start, w, r_max, on_path, path, found);
        path.pop();
        on_path[w] = false;
    }
}

/// Shortest cycle crossing the handle's seam an odd number of times (hence
/// running once along the handle); nontrivial since it meets a cycle oddly.
pub fn handle_l_loop(c: &CellComplex, handle: usize) -> Result<BinaryChain> {
    handle_l_loop_avoiding(c, handle, &HashSet::new())
}

/// As [`handle_l_loop`], never visiting `blocked` vertices.
pub fn handle_l_loop_avoiding(
    c: &CellComplex,
    handle: usize,
    blocked: &HashSet<VertexId>,
) -> Result<BinaryChain> {
    let h = c.handle(handle).ok_or(Error::NoSuchHandle(handle))?;
    let cross = c
        .crossing_cochain(&h.seam)
        .map_err(|_| Error::NoSuchHandle(handle))?;
    let g = Graph::primal(c);
    let mut odd = vec![false; g.edge_count()];
    for &e in cross.support() {
        odd[e] = true;
    }
    let n = g.node_count();
    let mut best: Option<BinaryChain> = None;
    let mut starts: Vec<usize> = h.seam.vertices.clone();
    starts.sort_unstable();
    for s in starts {
        if blocked.contains(&s) {
            continue;
        }
        // Search the double cover: state = vertex · 2 + parity.
        let mut dist = vec![UNREACHED; 2 * n];
        let mut via = vec![(UNREACHED, UNREACHED); 2 * n];
        let mut queue = std::collections::VecDeque::from([2 * s]);
        dist[2 * s] = 0;
        let limit = best.as_ref().map_or(usize::MAX, BinaryChain::weight);
        while let Some(state) = queue.pop_front() {
            if state == 2 * s + 1 || dist[state] + 1 >= limit {
                break;
            }
            let (u, par) = (state / 2, state % 2);
            for &(w, e) in &g.adj[u] {
                if blocked.contains(&w) {
                    continue;
                }
                let next = 2 * w + (par ^ usize::from(odd[e]));
                if dist[next] == UNREACHED {
                    dist[next] = dist[state] + 1;
                    via[next] = (state, e);
                    queue.push_back(next);
                }
            }
        }
        let target = 2 * s + 1;
        if dist[target] == UNREACHED || dist[target] >= limit {
            continue;
        }
        let mut edges = Vec::new();
        let mut cur = target;
        while cur != 2 * s {
            let (prev, e) = via[cur];
            edges.push(e);
            cur = prev;
        }
        best = Some(BinaryChain::from_edges(edges));
    }
    best.ok_or(Error::NoSuchHandle(handle))
}

#[cfg(test)]
mod tests;
