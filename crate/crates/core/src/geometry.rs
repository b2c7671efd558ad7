//! Circle growth on curved lattices and the scaling formulas for minimal
//! loops, threshold factors, fidelity exponents and walk counts.
//!
//! Logarithms are natural throughout.

use serde::{Deserialize, Serialize};

use crate::complex::{CellComplex, VertexId};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// `beta` of the quasi-local decoder the product formula is calibrated for.
pub fn default_beta() -> f64 {
    2f64.ln() / 3f64.ln()
}

/// Perimeter `c(r)` and cumulative area `a(r) = 1 + Σ_{r'=1..r} c(r')`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthProfile {
    pub perimeter: Vec<f64>,
    pub area: Vec<f64>,
}

impl GrowthProfile {
    fn from_perimeter(perimeter: Vec<f64>) -> Self {
        let mut area = Vec::with_capacity(perimeter.len());
        let mut acc = 1.0;
        for (r, &c) in perimeter.iter().enumerate() {
            if r > 0 {
                acc += c;
            }
            area.push(acc);
        }
        GrowthProfile { perimeter, area }
    }

    pub fn r_max(&self) -> usize {
        self.perimeter.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingParams {
    pub l: f64,
    pub n: f64,
    pub beta: f64,
    /// Kink density per vertex.
    pub rho: f64,
    /// Fraction of the total area the minimal-loop circle must cover.
    pub alpha: f64,
}

impl ScalingParams {
    /// Defaults: `beta = log₃2`, `rho = 8/L²`, `alpha = 1/2`.
    pub fn new(l: f64, n: f64) -> Self {
        ScalingParams {
            l,
            n,
            beta: default_beta(),
            rho: 8.0 / (l * l),
            alpha: 0.5,
        }
    }

    /// Doubled kink density of a symmetrized surface.
    pub fn symmetrized(mut self) -> Self {
        self.rho = 16.0 / (self.l * self.l);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "beta must lie in (0, 1], got {}",
                self.beta
            )));
        }
        if !(self.rho > 0.0) || !(self.l > 0.0) || !(self.alpha > 0.0) {
            return Err(Error::InvalidParameter(
                "l, rho and alpha must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Breadth-first layer sizes around `root`.
pub fn measure_circle_growth(
    c: &CellComplex,
    root: VertexId,
    r_max: usize,
) -> Result<GrowthProfile> {
    if r_max == 0 {
        return Err(Error::InvalidParameter("r_max must be at least 1".into()));
    }
    if root >= c.vertex_count() {
        return Err(Error::InvalidParameter(format!("no vertex {root}")));
    }
    let layers = Graph::primal(c).layer_sizes(root, r_max);
    Ok(GrowthProfile::from_perimeter(
        layers.into_iter().map(|x| x as f64).collect(),
    ))
}

/// `c(r) = 4r + ρ·Σ_{r_k < r} c(r_k)·(r − r_k)` with `c(0) = 0`: every kink
/// inside the circle adds one perimeter vertex per unit of radius beyond it.
pub fn solve_perimeter_recursion(rho: f64, r_max: usize) -> GrowthProfile {
    let mut c = vec![0.0; r_max + 1];
    // Running sums S0 = Σ c(k) and S1 = Σ k·c(k) over k < r give the kernel in O(1).
    let (mut s0, mut s1) = (0.0, 0.0);
    for r in 1..=r_max {
        s0 += c[r - 1];
        s1 += (r - 1) as f64 * c[r - 1];
        c[r] = 4.0 * r as f64 + rho * (r as f64 * s0 - s1);
    }
    GrowthProfile::from_perimeter(c)
}

/// `L·√2·sinh(√8·r/L)`.
pub fn closed_form_perimeter(l: f64, r: f64) -> f64 {
    l * 2f64.sqrt() * (8f64.sqrt() * r / l).sinh()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinLoopPrediction {
    /// Smallest radius whose predicted area reaches `alpha·L²·N`.
    pub radius: usize,
    /// Asymptotic reference `L·ln N/√8`.
    pub reference: f64,
}

pub fn predicted_min_loop(sp: &ScalingParams) -> Result<MinLoopPrediction> {
    sp.validate()?;
    if sp.n < 2.0 {
        return Err(Error::UndefinedScaling(format!("need N ≥ 2, got {}", sp.n)));
    }
    let goal = sp.alpha * sp.l * sp.l * sp.n;
    let mut r_max = sp.l.ceil() as usize + 1;
    loop {
        let g = solve_perimeter_recursion(sp.rho, r_max);
        if let Some(r) = g.area.iter().position(|&a| a >= goal) {
            return Ok(MinLoopPrediction {
                radius: r,
                reference: sp.l * sp.n.ln() / 8f64.sqrt(),
            });
        }
        r_max *= 2;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductFactor {
    pub k: usize,
    pub factor: f64,
    pub running_product: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdProduct {
    pub factors: Vec<ProductFactor>,
    pub product: f64,
    /// `L·ln N < 3`: no factors, product 1.
    pub empty: bool,
    /// `beta` differs from the value the formula is calibrated for.
    pub beta_warning: bool,
}

/// `∏_{k=1}^{⌊log₃(L ln N)⌋} [2·(3^k)² / a(3^k)]^{(1/3^k)^β}`.
pub fn threshold_factor_product(
    sp: &ScalingParams,
    area: impl Fn(usize) -> f64,
) -> Result<ThresholdProduct> {
    sp.validate()?;
    let beta_warning = (sp.beta - default_beta()).abs() > 1e-12;
    let scale = sp.l * sp.n.ln();
    if !(scale >= 3.0) {
        return Ok(ThresholdProduct {
            factors: Vec::new(),
            product: 1.0,
            empty: true,
            beta_warning,
        });
    }
    // Integer search avoids floating error at exact powers of 3.
    let mut upper = 0usize;
    while 3f64.powi(upper as i32 + 1) <= scale * (1.0 + 1e-12) {
        upper += 1;
    }
    let mut running = 1.0;
    let mut factors = Vec::with_capacity(upper);
    for k in 1..=upper {
        let r = 3usize.pow(k as u32);
        let base = 2.0 * (r * r) as f64 / area(r);
        let factor = base.powf(3f64.powi(-(k as i32)).powf(sp.beta));
        running *= factor;
        factors.push(ProductFactor {
            k,
            factor,
            running_product: running,
        });
    }
    Ok(ThresholdProduct {
        factors,
        product: running,
        empty: false,
        beta_warning,
    })
}

/// Area function from [`solve_perimeter_recursion`], solved once up to `r_max`.
pub fn recursion_area(rho: f64, r_max: usize) -> impl Fn(usize) -> f64 {
    let g = solve_perimeter_recursion(rho, r_max);
    move |r| g.area[r]
}

/// Area of a flat diamond, `2r² + 2r + 1`.
pub fn flat_area(r: usize) -> f64 {
    let r = r as f64;
    2.0 * r * r + 2.0 * r + 1.0
}

/// Largest radius [`threshold_factor_product`] evaluates for these parameters.
pub fn product_radius(sp: &ScalingParams) -> usize {
    let scale = sp.l * sp.n.max(1.0).ln();
    let mut r = 1usize;
    while ((r * 3) as f64) <= scale * (1.0 + 1e-12) {
        r *= 3;
    }
    r
}

/// `8·exp(−12·(ln N)^{1−β} / L^β)`.
pub fn threshold_factor_closed(l: f64, n: f64, beta: f64) -> f64 {
    8.0 * (-12.0 * n.ln().powf(1.0 - beta) / l.powf(beta)).exp()
}

/// `(L·ln N)^β`.
pub fn fidelity_exponent(l: f64, n: f64, beta: f64) -> Result<f64> {
    if n < 2.0 {
        return Err(Error::UndefinedScaling(format!("need N ≥ 2, got {n}")));
    }
    Ok((l * n.ln()).powf(beta))
}

/// Value of `ln N` on the schedule `ln N = L^{β/(1−β)}`; infinite for `β = 1`.
pub fn schedule_log_n(l: f64, beta: f64) -> f64 {
    if beta >= 1.0 {
        f64::INFINITY
    } else {
        l.powf(beta / (1.0 - beta))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkGrowth {
    /// `counts[r]`: walks of length `r` from the root.
    pub counts: Vec<u128>,
    /// `counts[r_max] / counts[r_max − 1]`.
    pub v: f64,
    /// `4 / v`.
    pub multiplier: f64,
}

/// Exact walk counts (revisits allowed) by dynamic programming over adjacency.
pub fn count_walks(c: &CellComplex, root: VertexId, r_max: usize) -> Result<WalkGrowth> {
    if r_max == 0 {
        return Err(Error::InvalidParameter("r_max must be at least 1".into()));
    }
    if root >= c.vertex_count() {
        return Err(Error::InvalidParameter(format!("no vertex {root}")));
    }
    let adj = c.adjacency();
    let mut ways = vec![0u128; c.vertex_count()];
    ways[root] = 1;
    let mut counts = vec![1u128];
    for _ in 0..r_max {
        let mut next = vec![0u128; ways.len()];
        for (u, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for &(x, _) in &adj[u] {
                next[x] = next[x].checked_add(w).ok_or_else(|| {
                    Error::InvalidParameter("walk count overflow; lower r_max".into())
                })?;
            }
        }
        ways = next;
        let total = ways
            .iter()
            .try_fold(0u128, |acc, &x| acc.checked_add(x))
            .ok_or_else(|| Error::InvalidParameter("walk count overflow; lower r_max".into()))?;
        counts.push(total);
    }
    let v = counts[r_max] as f64 / counts[r_max - 1] as f64;
    Ok(WalkGrowth {
        counts,
        v,
        multiplier: 4.0 / v,
    })
}
