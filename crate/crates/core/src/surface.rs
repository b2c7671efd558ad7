//! Many-handle surfaces: a flat base torus carrying `N` square tubes, each
//! tube joining two square holes. Handles are later cut through their width
//! and the loose ends randomly re-paired.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chain::BinaryChain;
use crate::complex::{
    build_torus, build_tube, CellComplex, Cut, Diagnostics, Handle, VertexId, Walk,
};
use crate::error::{Error, Result};
use crate::homology::handle_l_loop_avoiding;

/// Construction parameters. Optional fields resolve to defaults derived
/// from `l` and `n`; see [`SurfaceBlueprint::resolve`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceBlueprint {
    /// Handle scale: edges around each handle.
    pub l: usize,
    /// Number of handles.
    pub n: usize,
    pub hole_side: Option<usize>,
    pub tube_length: Option<usize>,
    pub base_side: Option<usize>,
    pub seed: u64,
    pub symmetrized: bool,
    /// Glue re-paired circles with a reflection (non-orientable result).
    #[serde(default)]
    pub reversed_glue: bool,
}

/// Blueprint with every default filled in.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolvedBlueprint {
    pub l: usize,
    pub n: usize,
    pub hole_side: usize,
    pub tube_length: usize,
    pub base_side: usize,
    pub seed: u64,
    pub symmetrized: bool,
    pub reversed_glue: bool,
}

impl SurfaceBlueprint {
    pub fn new(l: usize, n: usize, seed: u64) -> Self {
        SurfaceBlueprint {
            l,
            n,
            hole_side: None,
            tube_length: None,
            base_side: None,
            seed,
            symmetrized: false,
            reversed_glue: false,
        }
    }

    /// Checks the invariants and fills defaults: `hole_side = tube_length = l/4`,
    /// `base_side = ceil(l·sqrt(n/2))`.
    pub fn resolve(&self) -> Result<ResolvedBlueprint> {
        if self.l < 4 || self.l % 4 != 0 {
            return Err(Error::InvalidParameter(format!(
                "l must be a positive multiple of 4, got {}",
                self.l
            )));
        }
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let hole_side = self.hole_side.unwrap_or(self.l / 4);
        let tube_length = self.tube_length.unwrap_or(self.l / 4);
        if hole_side == 0 || tube_length == 0 {
            return Err(Error::InvalidParameter(
                "hole side and tube length must be positive".into(),
            ));
        }
        let base_side = self
            .base_side
            .unwrap_or_else(|| (self.l as f64 * (self.n as f64 / 2.0).sqrt()).ceil() as usize);
        Ok(ResolvedBlueprint {
            l: self.l,
            n: self.n,
            hole_side,
            tube_length,
            base_side,
            seed: self.seed,
            symmetrized: self.symmetrized,
            reversed_glue: self.reversed_glue,
        })
    }
}

/// Hole anchors `(a, b)` for each handle on the base torus.
///
/// Handles are grouped in 2×2 blocks of slots laid out row-major on a grid of
/// `nx × ny` slots; handle `2b` joins the block's diagonal slots and `2b + 1`
/// its anti-diagonal slots.
fn hole_layout(bp: &ResolvedBlueprint) -> Result<Vec<(VertexId, VertexId)>> {
    let blocks = bp.n.div_ceil(2);
    let nbx = (blocks as f64).sqrt().ceil() as usize;
    let nby = blocks.div_ceil(nbx);
    let (nx, ny) = (2 * nbx, 2 * nby);
    let b = bp.base_side;
    let s = bp.hole_side;
    if b / nx < s + 1 || b / ny < s + 1 {
        return Err(Error::BlueprintTooDense(format!(
            "{} holes of side {s} do not fit apart on a base torus of side {b}",
            2 * bp.n
        )));
    }
    let anchor = |cx: usize, cy: usize| (cy * b / ny) * b + cx * b / nx;
    let mut out = Vec::with_capacity(bp.n);
    for h in 0..bp.n {
        let block = h / 2;
        let (bx, by) = (block % nbx, block / nbx);
        let (x0, y0) = (2 * bx, 2 * by);
        out.push(if h % 2 == 0 {
            (anchor(x0, y0), anchor(x0 + 1, y0 + 1))
        } else {
            (anchor(x0 + 1, y0), anchor(x0, y0 + 1))
        });
    }
    Ok(out)
}

/// Base torus with `n` tubes. Each tube has circumference `4·hole_side`;
/// its handle is recorded by the ring halfway along it (ring 0 when the tube
/// is one layer long). Every hole corner becomes a valence-5 kink.
pub fn build_handled_surface(bp: &SurfaceBlueprint) -> Result<CellComplex> {
    let bp = bp.resolve()?;
    let layout = hole_layout(&bp)?;
    let base = build_torus(bp.base_side)?;
    let holes: Vec<(VertexId, usize)> = layout
        .iter()
        .flat_map(|&(a, b)| [(a, bp.hole_side), (b, bp.hole_side)])
        .collect();
    let (mut c, ids) = base.punch_square_holes(&holes)?;
    let m = 4 * bp.hole_side;
    let t = bp.tube_length;
    let ring = t / 2;
    for h in 0..bp.n {
        let mut tube = build_tube(m, t, h)?;
        tube.set_handles(vec![Handle {
            id: 0,
            seam: Walk {
                vertices: (0..m).map(|i| ring * m + i).collect(),
                edges: (0..m).map(|i| ring * m + i).collect(),
            },
        }]);
        let shift = c.next_boundary_id();
        let joined = c.disjoint_union(&tube);
        let (with_a, _) = joined.sew_tracked(ids[2 * h], shift, 0, false)?;
        let (with_b, _) = with_a.sew_tracked(ids[2 * h + 1], shift + 1, 0, false)?;
        c = with_b;
    }
    debug_assert!(c.handles().iter().enumerate().all(|(i, h)| h.id == i));
    Ok(c)
}

/// Two tori of side `L' = round(2L/√3)` (bumped to even) joined through
/// `(L'/2)`-square holes: a genus-2 surface with about as many edges as two
/// `L × L` tori.
pub fn join_two_tori(l: usize) -> Result<CellComplex> {
    if l < 4 {
        return Err(Error::InvalidParameter(format!(
            "l must be at least 4, got {l}"
        )));
    }
    let side = join_side(l);
    let (a, _) = build_torus(side)?.punch_square_hole(0, side / 2)?;
    let joined = a.disjoint_union(&a);
    let ids: Vec<usize> = joined.boundaries().iter().map(|b| b.id).collect();
    joined.sew_boundaries(ids[0], ids[1], 0, false)
}

/// Torus side used by [`join_two_tori`].
pub fn join_side(l: usize) -> usize {
    let r = (2.0 * l as f64 / 3f64.sqrt()).round() as usize;
    r + r % 2
}

/// Cuts every recorded handle along its seam. Returns the cuts in handle order.
pub fn cut_handles(c: &CellComplex) -> Result<(CellComplex, Vec<Cut>)> {
    let seams: Vec<BinaryChain> = c
        .handles()
        .iter()
        .map(|h| h.seam.edges.iter().copied().collect())
        .collect();
    let mut cur = c.clone();
    let mut cuts = Vec::with_capacity(seams.len());
    for seam in seams {
        let (next, cut) = cur.cut_along_cycle(&seam)?;
        cur = next;
        cuts.push(cut);
    }
    Ok((cur, cuts))
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

const REPAIR_STREAM: u64 = 1;
const SYMMETRIZE_STREAM: u64 = 2;

/// Uniform random perfect matching of the cut circles, each pair sewn with a
/// uniform random offset. The new seams become the handles `0, 1, …`.
pub fn random_repairing(c: &CellComplex, cuts: &[Cut], seed: u64) -> Result<CellComplex> {
    let mut rng = stream_rng(seed, REPAIR_STREAM);
    repair_with(c, cuts, false, &mut rng).map(|(c, _)| c)
}

/// Sewing record: the two circles joined and the offset used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pairing {
    pub circles: (usize, usize),
    pub offset: usize,
}

fn repair_with(
    c: &CellComplex,
    cuts: &[Cut],
    reversed: bool,
    rng: &mut ChaCha8Rng,
) -> Result<(CellComplex, Vec<Pairing>)> {
    let mut circles: Vec<usize> = cuts
        .iter()
        .flat_map(|cut| [cut.boundaries.0, cut.boundaries.1])
        .collect();
    if circles.len() % 2 != 0 {
        return Err(Error::RepairInfeasible(format!(
            "odd number of circles ({})",
            circles.len()
        )));
    }
    let mut lengths = HashSet::new();
    for &id in &circles {
        let b = c
            .boundary(id)
            .map_err(|e| Error::RepairInfeasible(e.to_string()))?;
        lengths.insert(b.walk.len());
    }
    if lengths.len() > 1 {
        return Err(Error::RepairInfeasible(format!(
            "circles have unequal lengths {lengths:?}"
        )));
    }
    let n = lengths.into_iter().next().unwrap_or(0);
    circles.shuffle(rng);
    let mut next_id = c.handles().iter().map(|h| h.id + 1).max().unwrap_or(0);
    let mut cur = c.clone();
    let mut pairings = Vec::with_capacity(circles.len() / 2);
    for pair in circles.chunks(2) {
        // Offsets in uniform random order; the first that does not collapse
        // an edge is used (all offsets are valid on generic inputs).
        let mut offsets: Vec<usize> = (0..n).collect();
        offsets.shuffle(rng);
        let mut sewn = None;
        let mut last_err = None;
        for offset in offsets {
            match cur.sew_tracked(pair[0], pair[1], offset, reversed) {
                Ok(x) => {
                    sewn = Some((x, offset));
                    break;
                }
                Err(e @ Error::SurgeryConflict(_)) => last_err = Some(e),
                Err(e) => {
                    return Err(Error::RepairInfeasible(format!(
                        "sewing {} to {}: {e}",
                        pair[0], pair[1]
                    )))
                }
            }
        }
        let ((next, seam), offset) = sewn.ok_or_else(|| {
            Error::RepairInfeasible(format!(
                "sewing {} to {}: {}",
                pair[0],
                pair[1],
                last_err.map_or_else(|| "empty circles".to_string(), |e| e.to_string())
            ))
        })?;
        let mut handles = next.handles().to_vec();
        handles.push(Handle { id: next_id, seam });
        next_id += 1;
        cur = next;
        cur.set_handles(handles);
        pairings.push(Pairing {
            circles: (pair[0], pair[1]),
            offset,
        });
    }
    Ok((cur, pairings))
}

/// Re-pairing within groups of equal-length circles; each group is matched
/// uniformly at random.
fn repair_grouped(
    c: &CellComplex,
    cuts: &[Cut],
    reversed: bool,
    rng: &mut ChaCha8Rng,
) -> Result<(CellComplex, Vec<Pairing>)> {
    let mut groups: std::collections::BTreeMap<usize, Vec<Cut>> = std::collections::BTreeMap::new();
    for cut in cuts {
        let len = c.boundary(cut.boundaries.0)?.walk.len();
        groups.entry(len).or_default().push(cut.clone());
    }
    let mut cur = c.clone();
    let mut pairings = Vec::new();
    for group in groups.values() {
        let (next, p) = repair_with(&cur, group, reversed, rng)?;
        cur = next;
        pairings.extend(p);
    }
    Ok((cur, pairings))
}

/// Result of [`symmetrize`].
#[derive(Clone, Debug)]
pub struct SymmetrizeOutcome {
    pub complex: CellComplex,
    /// Handles not cut: no disjoint l-loop found, or the loop would have
    /// separated the surface after earlier cuts.
    pub skipped: Vec<usize>,
    /// Common length most loops were brought to.
    pub loop_length: usize,
    /// Loops brought to the common length.
    pub loops_equalized: usize,
    pub loops_cut: usize,
}

/// Cuts each handle along a short l-loop and randomly re-pairs the ends.
///
/// Loops are found one handle at a time, vertex-disjoint from the earlier
/// ones. As many as possible are lengthened by face detours (+2 each) to a
/// common length; circles are then re-paired at random among circles of
/// equal length.
pub fn symmetrize(c: &CellComplex, seed: u64, reversed: bool) -> Result<SymmetrizeOutcome> {
    let mut rng = stream_rng(seed, SYMMETRIZE_STREAM);
    symmetrize_with(c, reversed, &mut rng)
}

fn symmetrize_with(
    c: &CellComplex,
    reversed: bool,
    rng: &mut ChaCha8Rng,
) -> Result<SymmetrizeOutcome> {
    let handle_ids: Vec<usize> = c.handles().iter().map(|h| h.id).collect();
    if handle_ids.is_empty() {
        return Err(Error::SymmetrizeFailed("surface has no handles".into()));
    }
    let mut blocked: HashSet<VertexId> = HashSet::new();
    let mut found: Vec<(usize, Walk)> = Vec::new();
    let mut skipped = Vec::new();
    for &h in &handle_ids {
        let walk = handle_l_loop_avoiding(c, h, &blocked)
            .and_then(|z| c.order_cycle(&z))
            .ok()
            .filter(|w| chord_free(c, w));
        match walk {
            Some(w) => {
                blocked.extend(w.vertices.iter().copied());
                found.push((h, w));
            }
            None => skipped.push(h),
        }
    }
    if 2 * skipped.len() >= handle_ids.len() {
        return Err(Error::SymmetrizeFailed(format!(
            "no disjoint l-loop for {} of {} handles (skipped {skipped:?})",
            skipped.len(),
            handle_ids.len()
        )));
    }
    // Common length: the candidate reached by the most loops (shortest on ties).
    let mut candidates: Vec<usize> = found.iter().map(|(_, w)| w.len()).collect();
    candidates.sort_unstable();
    candidates.dedup();
    let mut best: Option<(usize, usize, Vec<Walk>)> = None;
    for &t in &candidates {
        let walks = equalize(c, &found, t);
        let hits = walks.iter().filter(|w| w.len() == t).count();
        if best.as_ref().is_none_or(|(_, b, _)| hits > *b) {
            best = Some((t, hits, walks));
        }
    }
    let (target, equalized, walks) = best.expect("at least one loop was found");
    // Loops are individually non-separating but a later one may separate
    // once earlier ones are cut; such loops are skipped.
    let mut cur = c.clone();
    let mut cuts = Vec::with_capacity(walks.len());
    for ((h, _), w) in found.iter().zip(&walks) {
        let chain: BinaryChain = w.edges.iter().copied().collect();
        match cur.cut_along_cycle(&chain) {
            Ok((next, cut)) => {
                cur = next;
                cuts.push(cut);
            }
            Err(Error::SeparatingCut) => skipped.push(*h),
            Err(e) => return Err(e),
        }
    }
    skipped.sort_unstable();
    if cuts.is_empty() {
        return Err(Error::SymmetrizeFailed(
            "every l-loop cut would separate the surface".into(),
        ));
    }
    let (complex, _) = repair_grouped(&cur, &cuts, reversed, rng)?;
    Ok(SymmetrizeOutcome {
        complex,
        skipped,
        loop_length: target,
        loops_equalized: equalized,
        loops_cut: cuts.len(),
    })
}

/// Lengthens each loop of `target`'s parity and at most `target` long to
/// exactly `target`, keeping loops vertex-disjoint. Loops that cannot be
/// lengthened keep their original walk.
fn equalize(c: &CellComplex, found: &[(usize, Walk)], target: usize) -> Vec<Walk> {
    let mut walks: Vec<Walk> = found.iter().map(|(_, w)| w.clone()).collect();
    for i in 0..walks.len() {
        let len = walks[i].len();
        if len > target || (target - len) % 2 != 0 {
            continue;
        }
        let forbidden: HashSet<VertexId> = walks
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .flat_map(|(_, w)| w.vertices.iter().copied())
            .collect();
        if let Some(long) = lengthen(c, walks[i].clone(), target, &forbidden) {
            walks[i] = long;
        }
    }
    walks
}

/// No edge joins two loop vertices except the loop's own edges.
fn chord_free(c: &CellComplex, w: &Walk) -> bool {
    let on: HashSet<VertexId> = w.vertices.iter().copied().collect();
    let own: HashSet<usize> = w.edges.iter().copied().collect();
    c.edges()
        .iter()
        .enumerate()
        .all(|(e, [a, b])| own.contains(&e) || !(on.contains(a) && on.contains(b)))
}

/// Lengthens a loop by replacing single edges with the other three sides of
/// an adjacent quadrilateral until it reaches `target`.
fn lengthen(
    c: &CellComplex,
    mut w: Walk,
    target: usize,
    forbidden: &HashSet<VertexId>,
) -> Option<Walk> {
    let ef = c.edge_faces();
    while w.len() < target {
        let on: HashSet<VertexId> = w.vertices.iter().copied().collect();
        let mut next = None;
        'search: for i in 0..w.len() {
            let e = w.edges[i];
            let (u, v) = (w.vertices[i], w.vertices[(i + 1) % w.len()]);
            for &f in &ef[e] {
                let face = c.face(f);
                if face.len() != 4 {
                    continue;
                }
                let Some(q) = face.edges.iter().position(|&x| x == e) else {
                    continue;
                };
                let at = |k: usize| face.vertices[(q + k) % 4];
                let edge_at = |k: usize| face.edges[(q + k) % 4];
                let (path_v, path_e) = if at(0) == u && at(1) == v {
                    ([at(3), at(2)], [edge_at(3), edge_at(2), edge_at(1)])
                } else if at(1) == u && at(0) == v {
                    ([at(2), at(3)], [edge_at(1), edge_at(2), edge_at(3)])
                } else {
                    continue;
                };
                if path_v
                    .iter()
                    .any(|x| on.contains(x) || forbidden.contains(x))
                    || path_v[0] == path_v[1]
                {
                    continue;
                }
                let mut vertices = w.vertices[..=i].to_vec();
                vertices.extend(path_v);
                vertices.extend_from_slice(&w.vertices[i + 1..]);
                let mut edges = w.edges[..i].to_vec();
                edges.extend(path_e);
                edges.extend_from_slice(&w.edges[i + 1..]);
                let cand = Walk { vertices, edges };
                if chord_free(c, &cand) {
                    next = Some(cand);
                    break 'search;
                }
            }
        }
        w = next?;
    }
    Some(w)
}

/// Gross negative curvature per vertex: `Σ_{deg > 4} (deg − 4) / V`. Equals
/// the kink density when all defects are valence-5 kinks.
pub fn effective_kink_density(c: &CellComplex) -> f64 {
    let excess: usize = c
        .valences()
        .iter()
        .filter(|&&d| d > 4)
        .map(|&d| d - 4)
        .sum();
    excess as f64 / c.vertex_count() as f64
}

/// Full construction: handled surface, cut every handle, random re-pairing,
/// optional symmetrization, validation.
#[derive(Clone, Debug)]
pub struct Construction {
    pub blueprint: ResolvedBlueprint,
    pub complex: CellComplex,
    pub diagnostics: Diagnostics,
    pub pairings: Vec<Pairing>,
    /// Effective kink density before symmetrization.
    pub kink_density_repaired: f64,
    /// Effective kink density of the final surface.
    pub kink_density: f64,
    pub symmetrize_skipped: Vec<usize>,
    pub symmetrize_loop_length: Option<usize>,
}

/// Pipeline stage names reported with construction errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stage {
    Build,
    Cut,
    Repair,
    Symmetrize,
    Validate,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stage::Build => "build",
            Stage::Cut => "cut",
            Stage::Repair => "repair",
            Stage::Symmetrize => "symmetrize",
            Stage::Validate => "validate",
        };
        f.write_str(s)
    }
}

/// Error from [`construct`], tagged with the failing stage.
#[derive(Debug, thiserror::Error)]
#[error("{stage} stage: {source}")]
pub struct StageError {
    pub stage: Stage,
    #[source]
    pub source: Error,
}

pub fn construct(bp: &SurfaceBlueprint) -> std::result::Result<Construction, StageError> {
    let at = |stage: Stage| move |source: Error| StageError { stage, source };
    let resolved = bp.resolve().map_err(at(Stage::Build))?;
    let built = build_handled_surface(bp).map_err(at(Stage::Build))?;
    let (cut, cuts) = cut_handles(&built).map_err(at(Stage::Cut))?;
    let mut rng = stream_rng(bp.seed, REPAIR_STREAM);
    let (repaired, pairings) =
        repair_with(&cut, &cuts, bp.reversed_glue, &mut rng).map_err(at(Stage::Repair))?;
    let kink_density_repaired = effective_kink_density(&repaired);
    let (complex, skipped, loop_length) = if bp.symmetrized {
        let out =
            symmetrize(&repaired, bp.seed, bp.reversed_glue).map_err(at(Stage::Symmetrize))?;
        (out.complex, out.skipped, Some(out.loop_length))
    } else {
        (repaired, Vec::new(), None)
    };
    let diagnostics = complex.validate();
    if !diagnostics.passed {
        return Err(StageError {
            stage: Stage::Validate,
            source: Error::Internal(diagnostics.issues.join("; ")),
        });
    }
    Ok(Construction {
        blueprint: resolved,
        kink_density: effective_kink_density(&complex),
        complex,
        diagnostics,
        pairings,
        kink_density_repaired,
        symmetrize_skipped: skipped,
        symmetrize_loop_length: loop_length,
    })
}
