//! Independent bit- and phase-flip noise, syndrome extraction, decoders and
//! Monte Carlo estimation of the logical failure rate.
//!
//! The two error types are decoded independently: bit flips (`x_chain`)
//! are detected at vertices and corrected on the primal lattice, phase flips
//! (`z_chain`) are detected at faces and corrected on the dual lattice.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::BinaryChain;
use crate::complex::{CellComplex, FaceTag};
use crate::error::{Error, Result};
use crate::gf2::Echelon;
use crate::graph::{Graph, UNREACHED};
use crate::homology::{CssCode, Sector};
use crate::matching::{min_weight_perfect_matching_lazy, LazyWeights};
use crate::stats::{least_squares_2, wilson_interval, Z95};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorPattern {
    pub x_chain: BinaryChain,
    pub z_chain: BinaryChain,
}

/// Violated checks: vertices for the primal sector, faces for the dual one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Syndrome {
    pub sector: Sector,
    pub defects: Vec<usize>,
}

impl Syndrome {
    pub fn is_empty(&self) -> bool {
        self.defects.is_empty()
    }
}

fn check_rate(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "error rate must lie in [0, 1], got {p}"
        )))
    }
}

/// Each edge is flipped in `x_chain` and, independently, in `z_chain` with probability `p`.
pub fn sample_iid_error(c: &CellComplex, p: f64, seed: u64) -> Result<ErrorPattern> {
    check_rate(p)?;
    Ok(sample_with(
        c.edge_count(),
        p,
        &mut ChaCha8Rng::seed_from_u64(seed),
    ))
}

/// Stream `trial` of the generator seeded by `seed`; trial `i` can be replayed alone.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn sample_with(edges: usize, p: f64, rng: &mut impl Rng) -> ErrorPattern {
    let mut x = Vec::new();
    let mut z = Vec::new();
    for e in 0..edges {
        if rng.gen_bool(p) {
            x.push(e);
        }
        if rng.gen_bool(p) {
            z.push(e);
        }
    }
    ErrorPattern {
        x_chain: BinaryChain::from_edges(x),
        z_chain: BinaryChain::from_edges(z),
    }
}

/// Boundary of a primal chain: vertices meeting an odd number of its edges.
pub fn vertex_syndrome(c: &CellComplex, x: &BinaryChain) -> Syndrome {
    let mut odd = vec![false; c.vertex_count()];
    for &e in x.support() {
        let [a, b] = c.edge(e);
        odd[a] ^= true;
        odd[b] ^= true;
    }
    Syndrome {
        sector: Sector::Primal,
        defects: (0..odd.len()).filter(|&v| odd[v]).collect(),
    }
}

/// Faces whose boundary meets the chain an odd number of times.
pub fn face_syndrome(c: &CellComplex, z: &BinaryChain) -> Syndrome {
    let defects = c
        .faces()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.edges.iter().filter(|&&e| z.contains(e)).count() % 2 == 1)
        .map(|(i, _)| i)
        .collect();
    Syndrome {
        sector: Sector::Dual,
        defects,
    }
}

/// `(x-syndrome, z-syndrome)`.
pub fn syndrome_of(c: &CellComplex, e: &ErrorPattern) -> (Syndrome, Syndrome) {
    (vertex_syndrome(c, &e.x_chain), face_syndrome(c, &e.z_chain))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoderKind {
    Mwpm,
    Greedy,
    Ml,
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecoderKind::Mwpm => "mwpm",
            DecoderKind::Greedy => "greedy",
            DecoderKind::Ml => "ml",
        })
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mwpm" => Ok(DecoderKind::Mwpm),
            "greedy" => Ok(DecoderKind::Greedy),
            "ml" => Ok(DecoderKind::Ml),
            other => Err(Error::InvalidParameter(format!(
                "unknown decoder `{other}`"
            ))),
        }
    }
}

/// Defect pairs chosen by a matching decoder and their summed graph distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: Vec<(usize, usize)>,
    pub weight: usize,
}

/// Primal and dual graphs of a closed complex, built once and shared by
/// every decoding call.
#[derive(Clone, Debug)]
pub struct Decoder {
    primal: Graph,
    dual: Graph,
}

impl Decoder {
    pub fn new(c: &CellComplex) -> Result<Self> {
        let d = Decoder {
            primal: Graph::primal(c),
            dual: Graph::dual(c)?,
        };
        if !d.primal.is_connected() || !d.dual.is_connected() {
            return Err(Error::InvalidParameter(
                "decoding needs a connected surface".into(),
            ));
        }
        Ok(d)
    }

    pub fn graph(&self, sector: Sector) -> &Graph {
        match sector {
            Sector::Primal => &self.primal,
            Sector::Dual => &self.dual,
        }
    }

    fn check(&self, s: &Syndrome) -> Result<()> {
        let g = self.graph(s.sector);
        if s.defects.len() % 2 == 1 {
            return Err(Error::InvalidSyndrome(format!(
                "odd number of defects: {}",
                s.defects.len()
            )));
        }
        if let Some(&d) = s.defects.iter().find(|&&d| d >= g.node_count()) {
            return Err(Error::InvalidSyndrome(format!("defect {d} is not a check")));
        }
        if s.defects.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSyndrome(
                "defects must be sorted and distinct".into(),
            ));
        }
        Ok(())
    }

    /// Exact minimum-weight perfect matching of the defects under graph distance.
    pub fn mwpm_pairing(&self, s: &Syndrome) -> Result<Pairing> {
        self.check(s)?;
        let mut search = DefectSearch::new(self.graph(s.sector), &s.defects);
        Ok(search.pairing()?.0)
    }

    /// Repeatedly pairs the closest unmatched defects; ties go to the lowest indices.
    pub fn greedy_pairing(&self, s: &Syndrome) -> Result<Pairing> {
        Ok(self.greedy_run(s)?.0)
    }

    pub fn mwpm(&self, s: &Syndrome) -> Result<BinaryChain> {
        self.check(s)?;
        let mut search = DefectSearch::new(self.graph(s.sector), &s.defects);
        Ok(search.pairing()?.1)
    }

    pub fn greedy(&self, s: &Syndrome) -> Result<BinaryChain> {
        Ok(self.greedy_run(s)?.1)
    }

    fn greedy_run(&self, s: &Syndrome) -> Result<(Pairing, BinaryChain)> {
        self.check(s)?;
        let mut search = DefectSearch::new(self.graph(s.sector), &s.defects);
        for i in 0..s.defects.len() {
            search.resolve(i);
        }
        let p = greedy_on(&search.dist);
        let edges: Vec<usize> = p
            .pairs
            .iter()
            .flat_map(|&(i, j)| search.path(i, j))
            .collect();
        Ok((p, BinaryChain::from_edges(edges)))
    }
}

fn greedy_on(dist: &[Vec<usize>]) -> Pairing {
    let n = dist.len();
    let mut cand: Vec<(usize, usize, usize)> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            cand.push((dist[i][j], i, j));
        }
    }
    cand.sort_unstable();
    let mut used = vec![false; n];
    let mut pairs = Vec::with_capacity(n / 2);
    let mut weight = 0;
    for (d, i, j) in cand {
        if !used[i] && !used[j] {
            used[i] = true;
            used[j] = true;
            pairs.push((i, j));
            weight += d;
            if pairs.len() == n / 2 {
                break;
            }
        }
    }
    pairs.sort_unstable();
    Pairing { pairs, weight }
}

/// Other defects each truncated search must reach before matching starts.
const SEARCH_NEIGHBOURS: usize = 6;

/// Breadth-first searches from every defect, each explored only as far as
/// the matching needs. A search of radius `r` knows every distance up to
/// `r` exactly and bounds the others below by `r + 1`. Only
/// defect-to-defect distances are kept; paths are recovered on demand.
struct DefectSearch<'g> {
    g: &'g Graph,
    defects: &'g [usize],
    /// Node to defect index, `UNREACHED` for other nodes.
    index: Vec<usize>,
    dist: Vec<Vec<usize>>,
    radius: Vec<usize>,
    scratch: Vec<usize>,
    parent: Vec<usize>,
    order: Vec<usize>,
}

impl<'g> DefectSearch<'g> {
    fn new(g: &'g Graph, defects: &'g [usize]) -> Self {
        let n = defects.len();
        let mut index = vec![UNREACHED; g.node_count()];
        for (i, &d) in defects.iter().enumerate() {
            index[d] = i;
        }
        let mut s = DefectSearch {
            g,
            defects,
            index,
            dist: vec![vec![UNREACHED; n]; n],
            radius: vec![0; n],
            scratch: vec![UNREACHED; g.node_count()],
            parent: vec![UNREACHED; g.node_count()],
            order: Vec::new(),
        };
        let want = SEARCH_NEIGHBOURS.min(n.saturating_sub(1));
        for i in 0..n {
            s.grow(i, want);
        }
        s
    }

    /// Searches from defect `i` until a complete layer holds `want` other
    /// defects (or the graph is exhausted), recording their distances.
    fn grow(&mut self, i: usize, want: usize) {
        let root = self.defects[i];
        let mut order = std::mem::take(&mut self.order);
        order.clear();
        order.push(root);
        self.scratch[root] = 0;
        let mut found = 0;
        let mut head = 0;
        let mut layer = 0;
        let mut radius = usize::MAX;
        while head < order.len() {
            let end = order.len();
            while head < end {
                let u = order[head];
                head += 1;
                for &(w, _) in &self.g.adj[u] {
                    if self.scratch[w] == UNREACHED {
                        self.scratch[w] = layer + 1;
                        order.push(w);
                        if self.index[w] != UNREACHED {
                            self.dist[i][self.index[w]] = layer + 1;
                            found += 1;
                        }
                    }
                }
            }
            layer += 1;
            // Every node within `layer` is known once the previous layer is expanded.
            if found >= want && head < order.len() {
                radius = layer;
                break;
            }
        }
        self.dist[i][i] = 0;
        self.radius[i] = radius;
        for &v in &order {
            self.scratch[v] = UNREACHED;
        }
        self.order = order;
    }

    /// Shortest path from defect `i` to defect `j`; ties follow edge-id order.
    fn path(&mut self, i: usize, j: usize) -> Vec<usize> {
        let (root, target) = (self.defects[i], self.defects[j]);
        let mut order = vec![root];
        self.scratch[root] = 0;
        let mut head = 0;
        'search: while head < order.len() {
            let u = order[head];
            head += 1;
            for &(w, e) in &self.g.adj[u] {
                if self.scratch[w] == UNREACHED {
                    self.scratch[w] = self.scratch[u] + 1;
                    self.parent[w] = e;
                    order.push(w);
                    if w == target {
                        break 'search;
                    }
                }
            }
        }
        let mut out = Vec::new();
        let mut v = target;
        while v != root {
            let e = self.parent[v];
            out.push(e);
            v = self.g.other_end(e, v);
        }
        for v in order {
            self.scratch[v] = UNREACHED;
        }
        out
    }

    /// Matching plus the correction made of shortest paths between matched defects.
    fn pairing(&mut self) -> Result<(Pairing, BinaryChain)> {
        let pairs = min_weight_perfect_matching_lazy(self)?;
        let mut weight = 0;
        let mut edges = Vec::new();
        for &(i, j) in &pairs {
            let path = self.path(i, j);
            weight += path.len();
            edges.extend(path);
        }
        Ok((Pairing { pairs, weight }, BinaryChain::from_edges(edges)))
    }
}

impl LazyWeights for DefectSearch<'_> {
    fn len(&self) -> usize {
        self.defects.len()
    }

    fn cap(&self) -> i64 {
        self.g.node_count() as i64
    }

    fn known(&self, i: usize, j: usize) -> Option<i64> {
        let d = self.dist[i][j].min(self.dist[j][i]);
        (d != UNREACHED).then_some(d as i64)
    }

    fn lower_bound(&self, i: usize, j: usize) -> i64 {
        self.radius[i]
            .max(self.radius[j])
            .saturating_add(1)
            .min(self.g.node_count()) as i64
    }

    fn resolve(&mut self, i: usize) {
        if self.radius[i] != usize::MAX {
            self.grow(i, usize::MAX);
        }
    }
}

pub fn decode_mwpm(c: &CellComplex, s: &Syndrome) -> Result<BinaryChain> {
    Decoder::new(c)?.mwpm(s)
}

pub fn decode_greedy(c: &CellComplex, s: &Syndrome) -> Result<BinaryChain> {
    Decoder::new(c)?.greedy(s)
}

/// Result of the maximum-likelihood oracle for one sector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MlDecision {
    /// Logical coset as a bit mask: bit `i` set iff the coset's errors flip logical qubit `i`.
    pub coset: usize,
    pub correction: BinaryChain,
    /// Total probability of each coset given the syndrome, indexed by mask.
    pub coset_probabilities: Vec<f64>,
}

/// Largest `rank + k` the oracle will enumerate.
pub const ML_MAX_GENERATORS: usize = 24;

/// Logical coset of a chain: bit `i` set iff it pairs with the opposite-type logical `i`.
pub fn coset_label(code: &CssCode, chain: &BinaryChain, sector: Sector) -> usize {
    code.logical_pairs
        .iter()
        .enumerate()
        .filter(|(_, lp)| match sector {
            Sector::Primal => chain.pairing(&lp.x),
            Sector::Dual => chain.pairing(&lp.z),
        })
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

fn edge_mask(chain: &BinaryChain) -> u64 {
    chain.support().iter().fold(0, |m, &e| m | 1 << e)
}

/// Sums `p^w (1−p)^{E−w}` over every error in each logical coset consistent
/// with `s` (stabilizer group × logical class) and returns the heaviest coset.
pub fn decode_ml_bruteforce(
    c: &CellComplex,
    code: &CssCode,
    s: &Syndrome,
    p: f64,
) -> Result<MlDecision> {
    check_rate(p)?;
    let e_count = c.edge_count();
    if e_count > 64 {
        return Err(Error::OracleInfeasible(format!("{e_count} edges")));
    }
    let checks = match s.sector {
        Sector::Primal => &code.face_stabilizers,
        Sector::Dual => &code.vertex_stabilizers,
    };
    let mut ech = Echelon::new(e_count);
    let gens: Vec<u64> = checks
        .iter()
        .filter(|st| ech.insert(&st.to_bits(e_count)))
        .map(edge_mask)
        .collect();
    let k = code.k;
    if gens.len() + k > ML_MAX_GENERATORS {
        return Err(Error::OracleInfeasible(format!(
            "{} generators",
            gens.len() + k
        )));
    }
    let base = Decoder::new(c)?.greedy(s)?;
    let base_label = coset_label(code, &base, s.sector);
    let logicals: Vec<u64> = code
        .logical_pairs
        .iter()
        .map(|lp| {
            edge_mask(if s.sector == Sector::Primal {
                &lp.z
            } else {
                &lp.x
            })
        })
        .collect();
    let weight_hist = |start: u64| -> Vec<u64> {
        let mut hist = vec![0u64; e_count + 1];
        let mut cur = start;
        hist[cur.count_ones() as usize] += 1;
        for i in 1u64..(1 << gens.len()) {
            cur ^= gens[i.trailing_zeros() as usize];
            hist[cur.count_ones() as usize] += 1;
        }
        hist
    };
    let mut probs = vec![0.0; 1 << k];
    let mut reps = vec![0u64; 1 << k];
    for mask in 0..(1usize << k) {
        let start = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .fold(edge_mask(&base), |m, i| m ^ logicals[i]);
        let label = mask ^ base_label;
        probs[label] = coset_probability(&weight_hist(start), p);
        reps[label] = start;
    }
    let coset = (0..probs.len()).fold(0, |best, i| if probs[i] > probs[best] { i } else { best });
    let correction = BinaryChain::from_edges((0..e_count).filter(|&e| reps[coset] >> e & 1 == 1));
    Ok(MlDecision {
        coset,
        correction,
        coset_probabilities: probs,
    })
}

fn coset_probability(hist: &[u64], p: f64) -> f64 {
    let n = hist.len() - 1;
    hist.iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(w, &c)| c as f64 * p.powi(w as i32) * (1.0 - p).powi((n - w) as i32))
        .sum()
}

/// Exact one-sector failure probabilities of MWPM and of maximum-likelihood decoding.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactRates {
    pub p: f64,
    pub mwpm: f64,
    pub ml: f64,
}

/// Enumerates all `2^E` errors of one sector, bucketed by syndrome and
/// logical coset, and evaluates both decoders exactly at each rate in `ps`.
pub fn exact_failure_rates(
    c: &CellComplex,
    code: &CssCode,
    sector: Sector,
    ps: &[f64],
) -> Result<Vec<ExactRates>> {
    let e_count = c.edge_count();
    if e_count > 24 {
        return Err(Error::OracleInfeasible(format!(
            "{e_count} edges; exhaustive limit is 24"
        )));
    }
    for &p in ps {
        check_rate(p)?;
    }
    let g = match sector {
        Sector::Primal => Graph::primal(c),
        Sector::Dual => Graph::dual(c)?,
    };
    let checks = g.node_count();
    if checks > 64 {
        return Err(Error::OracleInfeasible(format!("{checks} checks")));
    }
    // Per edge: the checks it toggles and the logical labels it flips.
    let toggles: Vec<u64> = g
        .ends
        .iter()
        .map(|&[a, b]| (1u64 << a) ^ (1u64 << b))
        .collect();
    let flips: Vec<usize> = (0..e_count)
        .map(|e| coset_label(code, &BinaryChain::from_edges([e]), sector))
        .collect();
    let labels = 1usize << code.k;
    let mut buckets: HashMap<u64, Vec<Vec<u64>>> = HashMap::new();
    let (mut syn, mut lab) = (0u64, 0usize);
    let mut gray = 0u32;
    for i in 0u32..(1 << e_count) {
        if i > 0 {
            let e = i.trailing_zeros() as usize;
            gray ^= 1 << e;
            syn ^= toggles[e];
            lab ^= flips[e];
        }
        let entry = buckets
            .entry(syn)
            .or_insert_with(|| vec![vec![0; e_count + 1]; labels]);
        entry[lab][gray.count_ones() as usize] += 1;
    }
    let decoder = Decoder {
        primal: g.clone(),
        dual: g,
    };
    let mut mwpm_label = HashMap::with_capacity(buckets.len());
    for &s in buckets.keys() {
        let defects = (0..checks).filter(|&v| s >> v & 1 == 1).collect();
        let corr = decoder.mwpm(&Syndrome {
            sector: Sector::Primal,
            defects,
        })?;
        let label = corr.support().iter().fold(0, |acc, &e| acc ^ flips[e]);
        mwpm_label.insert(s, label);
    }
    Ok(ps
        .iter()
        .map(|&p| {
            let (mut mwpm, mut ml) = (0.0, 0.0);
            for (s, per_label) in &buckets {
                let probs: Vec<f64> = per_label.iter().map(|h| coset_probability(h, p)).collect();
                let total: f64 = probs.iter().sum();
                mwpm += total - probs[mwpm_label[s]];
                ml += total - probs.iter().cloned().fold(0.0, f64::max);
            }
            ExactRates { p, mwpm, ml }
        })
        .collect())
}

/// Correction for both sectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correction {
    pub x: BinaryChain,
    pub z: BinaryChain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Success,
    /// Logical qubits flipped by the residual bit-flip and phase-flip cycles.
    LogicalFailure {
        x_flipped: Vec<usize>,
        z_flipped: Vec<usize>,
    },
}

impl Outcome {
    pub fn is_success(&self) -> bool {
        matches!(self, Outcome::Success)
    }

    /// `X0;Z3`-style list of flipped logicals; empty on success.
    pub fn flipped_label(&self) -> String {
        match self {
            Outcome::Success => String::new(),
            Outcome::LogicalFailure {
                x_flipped,
                z_flipped,
            } => x_flipped
                .iter()
                .map(|i| format!("X{i}"))
                .chain(z_flipped.iter().map(|i| format!("Z{i}")))
                .collect::<Vec<_>>()
                .join(";"),
        }
    }
}

/// Classifies `e + correction` by homology in each sector.
pub fn residual_class(
    code: &CssCode,
    e: &ErrorPattern,
    correction: &Correction,
) -> Result<Outcome> {
    let rx = e.x_chain.add(&correction.x);
    let rz = e.z_chain.add(&correction.z);
    let classify = |r: &BinaryChain, sector| -> Result<Vec<usize>> {
        match code.is_trivial(r, sector) {
            Ok(true) => Ok(Vec::new()),
            Ok(false) => Ok(code.flipped_logicals(r, sector)),
            Err(Error::NotACycle) => Err(Error::InconsistentCorrection),
            Err(err) => Err(err),
        }
    };
    let x_flipped = classify(&rx, Sector::Primal)?;
    let z_flipped = classify(&rz, Sector::Dual)?;
    Ok(if x_flipped.is_empty() && z_flipped.is_empty() {
        Outcome::Success
    } else {
        Outcome::LogicalFailure {
            x_flipped,
            z_flipped,
        }
    })
}

/// Which part of the surface a logical qubit lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QubitRole {
    Handle,
    Base,
}

/// A logical qubit counts as a base-torus qubit when neither of its
/// representatives touches an edge of a handle tube.
pub fn qubit_roles(c: &CellComplex, code: &CssCode) -> Vec<QubitRole> {
    let mut tube_edge = vec![false; c.edge_count()];
    for (f, tag) in c.face_tags().iter().enumerate() {
        if matches!(tag, FaceTag::Tube(_)) {
            for &e in &c.face(f).edges {
                tube_edge[e] = true;
            }
        }
    }
    code.logical_pairs
        .iter()
        .map(|lp| {
            let touches = |ch: &BinaryChain| ch.support().iter().any(|&e| tube_edge[e]);
            if touches(&lp.z) || touches(&lp.x) {
                QubitRole::Handle
            } else {
                QubitRole::Base
            }
        })
        .collect()
}

/// One sampled round: sample, measure, decode, classify.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub trial: u64,
    pub p: f64,
    pub decoder: DecoderKind,
    pub defects: usize,
    pub correction_weight: usize,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub trials: u64,
    /// Trials with any logical failure.
    pub failures: u64,
    pub x_failures: u64,
    pub z_failures: u64,
    pub epsilon: f64,
    /// 95% Wilson interval for `epsilon`.
    pub interval: (f64, f64),
    pub p: f64,
    pub decoder: DecoderKind,
    pub seed: u64,
    /// Trials in which logical qubit `i` was flipped (either type).
    pub per_qubit_failures: Vec<u64>,
    pub roles: Vec<QubitRole>,
    /// Trials in which at least one handle qubit failed.
    pub handle_failures: u64,
    /// Trials in which at least one base-torus qubit failed.
    pub base_failures: u64,
}

impl TrialSummary {
    pub fn handle_qubits(&self) -> usize {
        self.roles
            .iter()
            .filter(|&&r| r == QubitRole::Handle)
            .count()
    }

    /// Handle-failure rate divided by the number of handle qubits, with
    /// the Wilson interval scaled the same way.
    pub fn per_handle_qubit(&self) -> Option<(f64, (f64, f64))> {
        let h = self.handle_qubits() as f64;
        if h == 0.0 {
            return None;
        }
        let (lo, hi) = wilson_interval(self.handle_failures, self.trials, Z95);
        Some((
            self.handle_failures as f64 / self.trials as f64 / h,
            (lo / h, hi / h),
        ))
    }
}

/// Precomputed state for repeated trials on one surface.
pub struct TrialRunner<'a> {
    c: &'a CellComplex,
    code: &'a CssCode,
    decoder: Decoder,
    roles: Vec<QubitRole>,
}

impl<'a> TrialRunner<'a> {
    pub fn new(c: &'a CellComplex, code: &'a CssCode) -> Result<Self> {
        Ok(TrialRunner {
            c,
            code,
            decoder: Decoder::new(c)?,
            roles: qubit_roles(c, code),
        })
    }

    pub fn decode(&self, kind: DecoderKind, s: &Syndrome, p: f64) -> Result<BinaryChain> {
        match kind {
            DecoderKind::Mwpm => self.decoder.mwpm(s),
            DecoderKind::Greedy => self.decoder.greedy(s),
            DecoderKind::Ml => Ok(decode_ml_bruteforce(self.c, self.code, s, p)?.correction),
        }
    }

    /// Replays trial `trial` of the run seeded by `seed`.
    pub fn trial(&self, p: f64, kind: DecoderKind, seed: u64, trial: u64) -> Result<TrialRecord> {
        let e = sample_with(self.c.edge_count(), p, &mut trial_rng(seed, trial));
        let (sx, sz) = syndrome_of(self.c, &e);
        let correction = Correction {
            x: self.decode(kind, &sx, p)?,
            z: self.decode(kind, &sz, p)?,
        };
        let outcome = residual_class(self.code, &e, &correction)?;
        Ok(TrialRecord {
            seed,
            trial,
            p,
            decoder: kind,
            defects: sx.defects.len() + sz.defects.len(),
            correction_weight: correction.x.weight() + correction.z.weight(),
            outcome,
        })
    }

    /// Runs trials `0..trials` in parallel; when `log` is set every record is kept, in trial order.
    pub fn run(
        &self,
        p: f64,
        trials: u64,
        kind: DecoderKind,
        seed: u64,
        log: bool,
    ) -> Result<(TrialSummary, Vec<TrialRecord>)> {
        check_rate(p)?;
        if trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        let k = self.code.k;
        let empty = || Tally::new(k);
        let tally = (0..trials)
            .into_par_iter()
            .map(|t| self.trial(p, kind, seed, t))
            .try_fold(empty, |mut acc, rec| {
                let rec = rec?;
                acc.record(&rec, &self.roles, log);
                Ok::<_, Error>(acc)
            })
            .try_reduce(empty, |a, b| Ok(a.merge(b)))?;
        let mut records = tally.records;
        records.sort_by_key(|r| r.trial);
        let summary = TrialSummary {
            trials,
            failures: tally.failures,
            x_failures: tally.x_failures,
            z_failures: tally.z_failures,
            epsilon: tally.failures as f64 / trials as f64,
            interval: wilson_interval(tally.failures, trials, Z95),
            p,
            decoder: kind,
            seed,
            per_qubit_failures: tally.per_qubit,
            roles: self.roles.clone(),
            handle_failures: tally.handle_failures,
            base_failures: tally.base_failures,
        };
        Ok((summary, records))
    }
}

struct Tally {
    failures: u64,
    x_failures: u64,
    z_failures: u64,
    handle_failures: u64,
    base_failures: u64,
    per_qubit: Vec<u64>,
    records: Vec<TrialRecord>,
}

impl Tally {
    fn new(k: usize) -> Self {
        Tally {
            failures: 0,
            x_failures: 0,
            z_failures: 0,
            handle_failures: 0,
            base_failures: 0,
            per_qubit: vec![0; k],
            records: Vec::new(),
        }
    }

    fn record(&mut self, rec: &TrialRecord, roles: &[QubitRole], log: bool) {
        if let Outcome::LogicalFailure {
            x_flipped,
            z_flipped,
        } = &rec.outcome
        {
            self.failures += 1;
            self.x_failures += u64::from(!x_flipped.is_empty());
            self.z_failures += u64::from(!z_flipped.is_empty());
            let mut hit = vec![false; self.per_qubit.len()];
            for &i in x_flipped.iter().chain(z_flipped) {
                hit[i] = true;
            }
            let mut by_role = [false; 2];
            for (i, &h) in hit.iter().enumerate() {
                if h {
                    self.per_qubit[i] += 1;
                    by_role[usize::from(roles[i] == QubitRole::Base)] = true;
                }
            }
            self.handle_failures += u64::from(by_role[0]);
            self.base_failures += u64::from(by_role[1]);
        }
        if log {
            self.records.push(rec.clone());
        }
    }

    fn merge(mut self, other: Tally) -> Self {
        self.failures += other.failures;
        self.x_failures += other.x_failures;
        self.z_failures += other.z_failures;
        self.handle_failures += other.handle_failures;
        self.base_failures += other.base_failures;
        for (a, b) in self.per_qubit.iter_mut().zip(other.per_qubit) {
            *a += b;
        }
        self.records.extend(other.records);
        self
    }
}

pub fn run_trials(
    c: &CellComplex,
    code: &CssCode,
    p: f64,
    trials: u64,
    decoder: DecoderKind,
    seed: u64,
) -> Result<TrialSummary> {
    Ok(TrialRunner::new(c, code)?
        .run(p, trials, decoder, seed, false)?
        .0)
}

/// One data point for the scaling fit: code distance, physical rate, failure rate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub d: f64,
    pub p: f64,
    pub epsilon: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub beta: f64,
    pub k: f64,
    pub p_c: f64,
    /// `ln ε̂ − K·d^β·ln(p/p_c)` per point used.
    pub residuals: Vec<f64>,
    pub rms_residual: f64,
    /// Points skipped because `ε̂ = 0`.
    pub dropped: usize,
    /// `ε̂` is nondecreasing in `p` at every distance.
    pub monotone: bool,
}

/// Least squares of `ln ε̂ = K·d^β·ln(p/p_c)`, linear in `(K, K·ln p_c)`.
pub fn fit_scaling(points: &[ScalingPoint], beta: f64) -> Result<ScalingFit> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "beta must lie in (0, 1], got {beta}"
        )));
    }
    let used: Vec<&ScalingPoint> = points.iter().filter(|q| q.epsilon > 0.0).collect();
    let distinct = |f: fn(&ScalingPoint) -> f64| {
        let mut v: Vec<f64> = used.iter().map(|q| f(q)).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v.len()
    };
    if distinct(|q| q.d) < 3 || distinct(|q| q.p) < 3 {
        return Err(Error::FitUnderdetermined(
            "need at least 3 distances and 3 rates with nonzero failures".into(),
        ));
    }
    let mut sorted: Vec<&ScalingPoint> = points.iter().collect();
    sorted.sort_by(|a, b| a.d.total_cmp(&b.d).then(a.p.total_cmp(&b.p)));
    let monotone = sorted
        .windows(2)
        .all(|w| w[0].d != w[1].d || w[0].epsilon <= w[1].epsilon);
    let x1: Vec<f64> = used.iter().map(|q| q.d.powf(beta) * q.p.ln()).collect();
    let x2: Vec<f64> = used.iter().map(|q| q.d.powf(beta)).collect();
    let y: Vec<f64> = used.iter().map(|q| q.epsilon.ln()).collect();
    let (a, b) = least_squares_2(&x1, &x2, &y)
        .ok_or_else(|| Error::FitUnderdetermined("singular design matrix".into()))?;
    let k = a;
    let p_c = (-b / a).exp();
    if !(k > 0.0) || !(p_c > 0.0 && p_c < 1.0) {
        return Err(Error::UndefinedScaling(format!(
            "fit gave K = {k}, p_c = {p_c}"
        )));
    }
    let residuals: Vec<f64> = (0..y.len())
        .map(|i| y[i] - (a * x1[i] + b * x2[i]))
        .collect();
    let rms_residual =
        (residuals.iter().map(|r| r * r).sum::<f64>() / residuals.len() as f64).sqrt();
    Ok(ScalingFit {
        beta,
        k,
        p_c,
        residuals,
        rms_residual,
        dropped: points.len() - used.len(),
        monotone,
    })
}

#[cfg(test)]
mod tests;
