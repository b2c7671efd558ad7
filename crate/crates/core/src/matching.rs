//! Exact maximum-weight matching on general graphs (Edmonds' blossom
//! algorithm with dual variables, O(n³)), and minimum-weight perfect matching
//! on complete graphs built on top of it.
//!
//! Integer weights keep every dual update exact.

use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

struct Matcher<'a> {
    edges: &'a [(usize, usize, i64)],
    nv: usize,
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<u8>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Option<Vec<usize>>>,
    unused: Vec<usize>,
    dualvar: Vec<i64>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

fn wrap(j: isize, len: usize) -> usize {
    j.rem_euclid(len as isize) as usize
}

impl<'a> Matcher<'a> {
    fn new(nv: usize, edges: &'a [(usize, usize, i64)]) -> Self {
        let maxweight = edges.iter().map(|e| e.2).max().unwrap_or(0).max(0);
        let endpoint = (0..2 * edges.len())
            .map(|p| {
                if p % 2 == 0 {
                    edges[p / 2].0
                } else {
                    edges[p / 2].1
                }
            })
            .collect();
        let mut neighbend = vec![Vec::new(); nv];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let mut blossombase: Vec<usize> = (0..nv).collect();
        blossombase.resize(2 * nv, NONE);
        let mut dualvar = vec![maxweight; nv];
        dualvar.resize(2 * nv, 0);
        Matcher {
            edges,
            nv,
            endpoint,
            neighbend,
            mate: vec![NONE; nv],
            label: vec![0; 2 * nv],
            labelend: vec![NONE; 2 * nv],
            inblossom: (0..nv).collect(),
            blossomparent: vec![NONE; 2 * nv],
            blossomchilds: vec![Vec::new(); 2 * nv],
            blossombase,
            blossomendps: vec![Vec::new(); 2 * nv],
            bestedge: vec![NONE; 2 * nv],
            blossombestedges: vec![None; 2 * nv],
            unused: (nv..2 * nv).collect(),
            dualvar,
            allowedge: vec![false; edges.len()],
            queue: Vec::new(),
        }
    }

    fn slack(&self, k: usize) -> i64 {
        let (i, j, w) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2 * w
    }

    fn leaves(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![b];
        while let Some(t) = stack.pop() {
            if t < self.nv {
                out.push(t);
            } else {
                stack.extend(self.blossomchilds[t].iter().rev());
            }
        }
        out
    }

    fn assign_label(&mut self, w: usize, t: u8, p: usize) {
        let b = self.inblossom[w];
        debug_assert!(self.label[w] == 0 && self.label[b] == 0);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = NONE;
        self.bestedge[b] = NONE;
        if t == 1 {
            if b < self.nv {
                self.queue.push(b);
            } else {
                let l = self.leaves(b);
                self.queue.extend(l);
            }
        } else {
            let base = self.blossombase[b];
            let mb = self.mate[base];
            debug_assert!(mb != NONE);
            self.assign_label(self.endpoint[mb], 1, mb ^ 1);
        }
    }

    /// Returns the base of a new blossom, or `NONE` for an augmenting path.
    fn scan_blossom(&mut self, mut v: usize, mut w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        while v != NONE || w != NONE {
            let mut b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.blossombase[b];
                break;
            }
            path.push(b);
            self.label[b] = 5;
            if self.labelend[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                v = self.endpoint[self.labelend[b]];
            }
            if w != NONE {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = 1;
        }
        base
    }

    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unused.pop().expect("blossom slots");
        self.blossombase[b] = base;
        self.blossomparent[b] = NONE;
        self.blossomparent[bb] = b;
        let mut path = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            path.push(bv);
            endps.push(self.labelend[bv]);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        path.push(bb);
        path.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            path.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }
        self.blossomchilds[b] = path.clone();
        self.blossomendps[b] = endps;
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;
        for v in self.leaves(b) {
            if self.label[self.inblossom[v]] == 2 {
                self.queue.push(v);
            }
            self.inblossom[v] = b;
        }
        let mut bestedgeto = vec![NONE; 2 * self.nv];
        for &bv in &path {
            let nblists: Vec<Vec<usize>> = match self.blossombestedges[bv].take() {
                Some(list) => vec![list],
                None => self
                    .leaves(bv)
                    .into_iter()
                    .map(|v| self.neighbend[v].iter().map(|p| p / 2).collect())
                    .collect(),
            };
            for nblist in nblists {
                for k in nblist {
                    let (mut i, mut j, _) = self.edges[k];
                    if self.inblossom[j] == b {
                        std::mem::swap(&mut i, &mut j);
                    }
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (bestedgeto[bj] == NONE || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.bestedge[bv] = NONE;
        }
        let list: Vec<usize> = bestedgeto.into_iter().filter(|&k| k != NONE).collect();
        let mut best = NONE;
        for &k in &list {
            if best == NONE || self.slack(k) < self.slack(best) {
                best = k;
            }
        }
        self.blossombestedges[b] = Some(list);
        self.bestedge[b] = best;
    }

    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        let childs = self.blossomchilds[b].clone();
        for &s in &childs {
            self.blossomparent[s] = NONE;
            if s < self.nv {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for v in self.leaves(s) {
                    self.inblossom[v] = s;
                }
            }
        }
        if !endstage && self.label[b] == 2 {
            let len = childs.len();
            let endps = self.blossomendps[b].clone();
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = childs.iter().position(|&c| c == entrychild).unwrap() as isize;
            let (jstep, endptrick): (isize, usize) = if j & 1 == 1 {
                j -= len as isize;
                (1, 0)
            } else {
                (-1, 1)
            };
            let mut p = self.labelend[b];
            while j != 0 {
                self.label[self.endpoint[p ^ 1]] = 0;
                let q = endps[wrap(j - endptrick as isize, len)];
                self.label[self.endpoint[q ^ endptrick ^ 1]] = 0;
                self.assign_label(self.endpoint[p ^ 1], 2, p);
                self.allowedge[q / 2] = true;
                j += jstep;
                p = endps[wrap(j - endptrick as isize, len)] ^ endptrick;
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            let bv = childs[wrap(j, len)];
            let e = self.endpoint[p ^ 1];
            self.label[e] = 2;
            self.label[bv] = 2;
            self.labelend[e] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            j += jstep;
            while childs[wrap(j, len)] != entrychild {
                let bv = childs[wrap(j, len)];
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                let leaves = self.leaves(bv);
                let v = leaves
                    .iter()
                    .copied()
                    .find(|&v| self.label[v] != 0)
                    .unwrap_or(*leaves.last().unwrap());
                if self.label[v] != 0 {
                    self.label[v] = 0;
                    let m = self.endpoint[self.mate[self.blossombase[bv]]];
                    self.label[m] = 0;
                    self.assign_label(v, 2, self.labelend[v]);
                }
                j += jstep;
            }
        }
        self.label[b] = u8::MAX;
        self.labelend[b] = NONE;
        self.blossomchilds[b].clear();
        self.blossomendps[b].clear();
        self.blossombase[b] = NONE;
        self.blossombestedges[b] = None;
        self.bestedge[b] = NONE;
        self.unused.push(b);
    }

    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.nv {
            self.augment_blossom(t, v);
        }
        let len = self.blossomchilds[b].len();
        let i = self.blossomchilds[b].iter().position(|&c| c == t).unwrap();
        let mut j = i as isize;
        let (jstep, endptrick): (isize, usize) = if i & 1 == 1 {
            j -= len as isize;
            (1, 0)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t = self.blossomchilds[b][wrap(j, len)];
            let p = self.blossomendps[b][wrap(j - endptrick as isize, len)] ^ endptrick;
            if t >= self.nv {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = self.blossomchilds[b][wrap(j, len)];
            if t >= self.nv {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], v);
    }

    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                if bs >= self.nv {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                if bt >= self.nv {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn run(mut self, max_cardinality: bool) -> Solution {
        let nv = self.nv;
        for _ in 0..nv {
            self.label.iter_mut().for_each(|x| *x = 0);
            self.bestedge.iter_mut().for_each(|x| *x = NONE);
            for b in nv..2 * nv {
                self.blossombestedges[b] = None;
            }
            self.allowedge.iter_mut().for_each(|x| *x = false);
            self.queue.clear();
            for v in 0..nv {
                if self.mate[v] == NONE && self.label[self.inblossom[v]] == 0 {
                    self.assign_label(v, 1, NONE);
                }
            }
            let mut augmented = false;
            loop {
                while !augmented {
                    let Some(v) = self.queue.pop() else { break };
                    for idx in 0..self.neighbend[v].len() {
                        let p = self.neighbend[v][idx];
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        if self.allowedge[k] {
                            let lw = self.label[self.inblossom[w]];
                            if lw == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if lw == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != NONE {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == 1 {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == 0
                            && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                }
                if augmented {
                    break;
                }
                // Dual adjustment: pick the smallest of the four delta types.
                let mut deltatype = 0u8;
                let mut delta = 0i64;
                let mut deltaedge = NONE;
                let mut deltablossom = NONE;
                if !max_cardinality {
                    deltatype = 1;
                    delta = *self.dualvar[..nv].iter().min().unwrap();
                }
                for v in 0..nv {
                    if self.label[self.inblossom[v]] == 0 && self.bestedge[v] != NONE {
                        let d = self.slack(self.bestedge[v]);
                        if deltatype == 0 || d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * nv {
                    if self.blossomparent[b] == NONE
                        && self.label[b] == 1
                        && self.bestedge[b] != NONE
                    {
                        let kslack = self.slack(self.bestedge[b]);
                        debug_assert_eq!(kslack % 2, 0);
                        let d = kslack / 2;
                        if deltatype == 0 || d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in nv..2 * nv {
                    if self.blossombase[b] != NONE
                        && self.blossomparent[b] == NONE
                        && self.label[b] == 2
                        && (deltatype == 0 || self.dualvar[b] < delta)
                    {
                        delta = self.dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if deltatype == 0 {
                    deltatype = 1;
                    delta = (*self.dualvar[..nv].iter().min().unwrap()).max(0);
                }
                for v in 0..nv {
                    match self.label[self.inblossom[v]] {
                        1 => self.dualvar[v] -= delta,
                        2 => self.dualvar[v] += delta,
                        _ => {}
                    }
                }
                for b in nv..2 * nv {
                    if self.blossombase[b] != NONE && self.blossomparent[b] == NONE {
                        match self.label[b] {
                            1 => self.dualvar[b] += delta,
                            2 => self.dualvar[b] -= delta,
                            _ => {}
                        }
                    }
                }
                match deltatype {
                    1 => break,
                    2 => {
                        self.allowedge[deltaedge] = true;
                        let (mut i, j, _) = self.edges[deltaedge];
                        if self.label[self.inblossom[i]] == 0 {
                            i = j;
                        }
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        self.queue.push(self.edges[deltaedge].0);
                    }
                    _ => self.expand_blossom(deltablossom, false),
                }
            }
            if !augmented {
                break;
            }
            for b in nv..2 * nv {
                if self.blossomparent[b] == NONE
                    && self.blossombase[b] != NONE
                    && self.label[b] == 1
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
        let mate = (0..nv)
            .map(|v| (self.mate[v] != NONE).then(|| self.endpoint[self.mate[v]]))
            .collect();
        Solution {
            mate,
            dualvar: self.dualvar,
            blossomparent: self.blossomparent,
        }
    }
}

/// Final matching with the dual solution that certifies it.
struct Solution {
    mate: Vec<Option<usize>>,
    dualvar: Vec<i64>,
    blossomparent: Vec<usize>,
}

impl Solution {
    /// Blossoms containing each vertex, outermost first.
    fn chains(&self, n: usize) -> Vec<Vec<usize>> {
        (0..n)
            .map(|v| {
                let mut out = Vec::new();
                let mut b = self.blossomparent[v];
                while b != NONE {
                    out.push(b);
                    b = self.blossomparent[b];
                }
                out.reverse();
                out
            })
            .collect()
    }

    /// Reduced cost `u_i + u_j − 2w + 2·Σ z_B` over blossoms containing both ends.
    /// Nonnegative for every edge iff the duals are feasible for that edge.
    fn slack(&self, chains: &[Vec<usize>], i: usize, j: usize, w: i64) -> i64 {
        let mut s = self.dualvar[i] + self.dualvar[j] - 2 * w;
        for (&bi, &bj) in chains[i].iter().zip(&chains[j]) {
            if bi != bj {
                break;
            }
            s += 2 * self.dualvar[bi];
        }
        s
    }
}

/// Maximum-weight matching on `n` vertices. With `max_cardinality`, the
/// maximum weight among maximum-cardinality matchings. Returns each vertex's mate.
pub fn max_weight_matching(
    n: usize,
    edges: &[(usize, usize, i64)],
    max_cardinality: bool,
) -> Vec<Option<usize>> {
    if edges.is_empty() {
        return vec![None; n];
    }
    assert!(
        edges.iter().all(|&(i, j, _)| i < n && j < n && i != j),
        "edge endpoints out of range"
    );
    Matcher::new(n, edges).run(max_cardinality).mate
}

/// Symmetric nonnegative weights on `len()` vertices that may be known only
/// in part; unknown weights are bounded from below until resolved.
pub trait LazyWeights {
    fn len(&self) -> usize;
    /// Upper bound on every weight.
    fn cap(&self) -> i64;
    fn known(&self, i: usize, j: usize) -> Option<i64>;
    /// Lower bound for a weight that is not yet known.
    fn lower_bound(&self, i: usize, j: usize) -> i64;
    /// Makes every weight at `i` known.
    fn resolve(&mut self, i: usize);
}

/// Minimum-weight perfect matching over all pairs of a [`LazyWeights`].
///
/// Solves on the known pairs, then prices every unknown pair against the
/// final dual solution using its lower bound. Pairs that might have
/// negative reduced cost are resolved and, if they do, the problem is solved
/// again. The result is optimal for the complete graph. Pairs come out as
/// `(i, j)` with `i < j`, sorted.
pub fn min_weight_perfect_matching_lazy(w: &mut impl LazyWeights) -> Result<Vec<(usize, usize)>> {
    let n = w.len();
    if n % 2 == 1 {
        return Err(Error::InvalidSyndrome(format!(
            "odd number of defects: {n}"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // Maximising `cap + 1 − w` over maximum-cardinality matchings minimises total `w`.
    let cap = w.cap();
    let gain = |x: i64| cap + 1 - x;
    loop {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if let Some(x) = w.known(i, j) {
                    edges.push((i, j, gain(x)));
                }
            }
        }
        let sol = Matcher::new(n, &edges).run(true);
        let unmatched: Vec<usize> = (0..n).filter(|&i| sol.mate[i].is_none()).collect();
        if !unmatched.is_empty() {
            for i in unmatched {
                w.resolve(i);
            }
            continue;
        }
        let chains = sol.chains(n);
        let mut violated = false;
        for i in 0..n {
            for j in i + 1..n {
                if w.known(i, j).is_some()
                    || sol.slack(&chains, i, j, gain(w.lower_bound(i, j))) >= 0
                {
                    continue;
                }
                w.resolve(i);
                let x = w.known(i, j).expect("resolved weight");
                violated |= sol.slack(&chains, i, j, gain(x)) < 0;
            }
        }
        if !violated {
            let mut pairs: Vec<(usize, usize)> = sol
                .mate
                .iter()
                .enumerate()
                .filter_map(|(i, m)| m.filter(|&j| i < j).map(|j| (i, j)))
                .collect();
            pairs.sort_unstable();
            return Ok(pairs);
        }
    }
}

/// Neighbours per vertex known up front by [`min_weight_perfect_matching`].
const DENSE_NEIGHBOURS: usize = 8;

struct Dense {
    weight: Vec<Vec<i64>>,
    known: Vec<Vec<bool>>,
    cap: i64,
}

impl LazyWeights for Dense {
    fn len(&self) -> usize {
        self.weight.len()
    }

    fn cap(&self) -> i64 {
        self.cap
    }

    fn known(&self, i: usize, j: usize) -> Option<i64> {
        self.known[i][j].then_some(self.weight[i][j])
    }

    fn lower_bound(&self, i: usize, j: usize) -> i64 {
        self.weight[i][j]
    }

    fn resolve(&mut self, i: usize) {
        for j in 0..self.weight.len() {
            self.known[i][j] = true;
            self.known[j][i] = true;
        }
    }
}

/// Minimum-weight perfect matching of the complete graph on `n` vertices
/// with nonnegative weights `w(i, j)`. Pairs come out as `(i, j)` with `i < j`, sorted.
pub fn min_weight_perfect_matching(
    n: usize,
    w: impl Fn(usize, usize) -> i64,
) -> Result<Vec<(usize, usize)>> {
    if n % 2 == 1 {
        return Err(Error::InvalidSyndrome(format!(
            "odd number of defects: {n}"
        )));
    }
    let mut weight = vec![vec![0i64; n]; n];
    let mut cap = 0;
    for i in 0..n {
        for j in i + 1..n {
            let x = w(i, j);
            assert!(x >= 0, "negative weight");
            cap = cap.max(x);
            weight[i][j] = x;
            weight[j][i] = x;
        }
    }
    // Start from the nearest neighbours of each vertex; pricing adds the rest as needed.
    let mut known = vec![vec![false; n]; n];
    for i in 0..n {
        let mut order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        order.sort_by_key(|&j| (weight[i][j], j));
        for &j in order.iter().take(DENSE_NEIGHBOURS) {
            known[i][j] = true;
            known[j][i] = true;
        }
    }
    min_weight_perfect_matching_lazy(&mut Dense { weight, known, cap })
}

/// Minimum total weight over all perfect pairings, by exhaustive recursion.
/// Exponential; for checking [`min_weight_perfect_matching`] on small inputs.
pub fn min_pairing_bruteforce(n: usize, w: &impl Fn(usize, usize) -> i64) -> Result<i64> {
    if n % 2 == 1 {
        return Err(Error::InvalidSyndrome(format!(
            "odd number of defects: {n}"
        )));
    }
    if n > 16 {
        return Err(Error::OracleInfeasible(format!("{n} defects")));
    }
    fn rec(left: u32, w: &impl Fn(usize, usize) -> i64) -> i64 {
        if left == 0 {
            return 0;
        }
        let i = left.trailing_zeros() as usize;
        let rest = left & !(1 << i);
        let mut best = i64::MAX;
        let mut m = rest;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            best = best.min(w(i, j) + rec(rest & !(1 << j), w));
        }
        best
    }
    Ok(rec(((1u64 << n) - 1) as u32, w))
}

#[cfg(test)]
mod tests;
