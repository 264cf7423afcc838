//! Search over product initial states for one that the bath entangles.
//!
//! The objective for a frame is the smallest eigenvalue of the 2×2 probe form,
//! i.e. the most negative `∂_t E(0)` over admissible probes. Each rotation is
//! parametrized by Z-Y-Z Euler angles `(φ, θ, 0)`; the last angle only changes
//! the phase of `|a₁⟩` and is dropped. A coarse grid over both directions is
//! followed by Nelder-Mead refinement from the best grid point, within the
//! same evaluation budget.

use std::f64::consts::PI;

use crate::criteria::{probe_optimum_consistency, CreationTerms};
use crate::eigen::min_eigenvalue;
use crate::error::{Error, Result};
use crate::frame::InitialStateFrame;
use crate::generator::KossakowskiMatrix;
use crate::matrix::{ComplexMatrix, C64};
use crate::transposed::d_tilde_dissipative;
use crate::witness::{CreationTest, ProbeVector};
use crate::{CREATION_MARGIN, TOL_PSD};

/// A frame on which some probe has a negative initial slope.
#[derive(Clone, Debug)]
pub struct FrameSearchResult {
    pub frame: InitialStateFrame,
    pub angles_u: [f64; 3],
    pub angles_v: [f64; 3],
    /// Most negative `∂_t E(0)` over normalized probes at `frame`.
    pub min_derivative: f64,
    pub best_probe: ProbeVector,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub found: Option<FrameSearchResult>,
    /// Objective evaluations spent; zero when `D̃` is positive.
    pub evaluations: usize,
    /// Lowest objective value seen (`+∞` when nothing was evaluated).
    pub best_value: f64,
    /// `D̃` positive: no frame can exist, and the search was skipped.
    pub d_tilde_psd: bool,
}

/// Rotation directions for a grid level `L`: both poles, then `L` polar rings
/// of `2L` azimuths each.
fn grid_directions(level: usize) -> Vec<(f64, f64)> {
    let mut dirs = vec![(0.0, 0.0), (0.0, PI)];
    for ring in 1..=level {
        let theta = PI * ring as f64 / (level + 1) as f64;
        for k in 0..2 * level {
            dirs.push((PI * k as f64 / level as f64, theta));
        }
    }
    dirs
}

/// Largest level whose grid fits `limit` evaluations.
fn grid_level(limit: usize, pairs: impl Fn(usize) -> usize) -> usize {
    let mut level = 0;
    while pairs(level + 1) <= limit {
        level += 1;
    }
    level
}

fn frame_vectors(phi: f64, theta: f64) -> ([C64; 3], [C64; 3]) {
    let frame = InitialStateFrame::from_euler([phi, theta, 0.0], [phi, theta, 0.0]);
    let test = CreationTest::new(frame);
    (*test.u(), *test.v())
}

/// Objective data independent of the frame.
struct Blocks {
    a: ComplexMatrix,
    c_t: ComplexMatrix,
    re_b: ComplexMatrix,
}

impl Blocks {
    fn new(d: &KossakowskiMatrix) -> Self {
        Self {
            a: d.a().clone(),
            c_t: d.c().transpose(),
            re_b: d.b().re(),
        }
    }

    fn min_slope(&self, u: &[C64; 3], v: &[C64; 3]) -> f64 {
        CreationTerms {
            u_a_u: self.a.sandwich(u, u).re,
            v_ct_v: self.c_t.sandwich(v, v).re,
            u_reb_v: self.re_b.sandwich(u, v),
        }
        .min_slope()
    }
}

/// Budget-limited evaluation counter.
struct Counter {
    used: usize,
    budget: usize,
}

impl Counter {
    fn left(&self) -> usize {
        self.budget - self.used
    }
}

/// Nelder-Mead minimization. Returns the best point and its value.
fn nelder_mead(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    fx0: f64,
    step: f64,
    max_iter: usize,
    counter: &mut Counter,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(x0.to_vec(), fx0)];
    for i in 0..n {
        if counter.left() == 0 {
            break;
        }
        let mut x = x0.to_vec();
        x[i] += step;
        counter.used += 1;
        let fx = f(&x);
        simplex.push((x, fx));
    }
    if simplex.len() < n + 1 {
        return best_of(&simplex);
    }
    let mut eval = |x: Vec<f64>, counter: &mut Counter| -> Option<(Vec<f64>, f64)> {
        if counter.left() == 0 {
            return None;
        }
        counter.used += 1;
        let fx = f(&x);
        Some((x, fx))
    };
    for _ in 0..max_iter {
        simplex.sort_by(|p, q| p.1.total_cmp(&q.1));
        if simplex[n].1 - simplex[0].1 <= 1e-14 * (1.0 + simplex[0].1.abs()) {
            break;
        }
        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst = simplex[n].0.clone();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };
        let Some(reflected) = eval(along(1.0), counter) else { break };
        if reflected.1 < simplex[0].1 {
            let Some(expanded) = eval(along(2.0), counter) else {
                simplex[n] = reflected;
                break;
            };
            simplex[n] = if expanded.1 < reflected.1 { expanded } else { reflected };
        } else if reflected.1 < simplex[n - 1].1 {
            simplex[n] = reflected;
        } else {
            let t = if reflected.1 < simplex[n].1 { 0.5 } else { -0.5 };
            let Some(contracted) = eval(along(t), counter) else { break };
            if contracted.1 < simplex[n].1.min(reflected.1) {
                simplex[n] = contracted;
            } else {
                let best = simplex[0].0.clone();
                for k in 1..=n {
                    let x: Vec<f64> = best
                        .iter()
                        .zip(&simplex[k].0)
                        .map(|(b, xk)| b + 0.5 * (xk - b))
                        .collect();
                    match eval(x, counter) {
                        Some(p) => simplex[k] = p,
                        None => return best_of(&simplex),
                    }
                }
            }
        }
    }
    best_of(&simplex)
}

fn best_of(simplex: &[(Vec<f64>, f64)]) -> (Vec<f64>, f64) {
    let mut best = &simplex[0];
    for p in &simplex[1..] {
        if p.1 < best.1 {
            best = p;
        }
    }
    best.clone()
}

const MAX_REFINE_ITER: usize = 200;

fn finish(
    d: &KossakowskiMatrix,
    angles_u: [f64; 3],
    angles_v: [f64; 3],
    best_value: f64,
    evaluations: usize,
) -> SearchOutcome {
    let frame = InitialStateFrame::from_euler(angles_u, angles_v);
    // Confirmed through the probe-form route, which, unlike the inequality
    // form, stays valid when D is not positive.
    let opt = probe_optimum_consistency(d, &frame);
    let found = if best_value < -CREATION_MARGIN && opt.creates {
        Some(FrameSearchResult {
            frame,
            angles_u,
            angles_v,
            min_derivative: opt.minimum,
            best_probe: opt.best_probe,
        })
    } else {
        None
    };
    SearchOutcome {
        found,
        evaluations,
        best_value,
        d_tilde_psd: false,
    }
}

fn psd_outcome() -> SearchOutcome {
    SearchOutcome {
        found: None,
        evaluations: 0,
        best_value: f64::INFINITY,
        d_tilde_psd: true,
    }
}

fn check_budget(budget: usize) -> Result<()> {
    if budget == 0 {
        return Err(Error::Precondition("search budget must be at least 1".into()));
    }
    Ok(())
}

/// Looks for independent frames `(𝒰, 𝒱)` whose product state the bath entangles.
pub fn search_entangling_frame(d: &KossakowskiMatrix, budget: usize) -> Result<SearchOutcome> {
    check_budget(budget)?;
    if min_eigenvalue(&d_tilde_dissipative(d))? >= -TOL_PSD {
        return Ok(psd_outcome());
    }
    let blocks = Blocks::new(d);
    let level = grid_level(budget / 2, |l| (2 + 2 * l * l).pow(2));
    let dirs = grid_directions(level);
    let vecs: Vec<_> = dirs.iter().map(|&(p, t)| frame_vectors(p, t)).collect();

    let mut counter = Counter { used: 0, budget };
    let mut best = (0, 0, f64::INFINITY);
    'grid: for (i, (u, _)) in vecs.iter().enumerate() {
        for (j, (_, v)) in vecs.iter().enumerate() {
            if counter.left() == 0 {
                break 'grid;
            }
            counter.used += 1;
            let value = blocks.min_slope(u, v);
            if value < best.2 {
                best = (i, j, value);
            }
        }
    }
    let (du, dv) = (dirs[best.0], dirs[best.1]);
    let mut x = vec![du.0, du.1, dv.0, dv.1];
    let mut value = best.2;

    if counter.left() > 0 {
        let mut objective = |p: &[f64]| {
            let (u, _) = frame_vectors(p[0], p[1]);
            let (_, v) = frame_vectors(p[2], p[3]);
            blocks.min_slope(&u, &v)
        };
        let step = PI / (level + 1) as f64;
        let (xr, vr) = nelder_mead(&mut objective, &x, value, step, MAX_REFINE_ITER, &mut counter);
        if vr < value {
            x = xr;
            value = vr;
        }
    }
    Ok(finish(d, [x[0], x[1], 0.0], [x[2], x[3], 0.0], value, counter.used))
}

/// As [`search_entangling_frame`] restricted to `|a₁⟩ = |b₁⟩` (`𝒱 = 𝒰`).
pub fn search_symmetric_frame(d: &KossakowskiMatrix, budget: usize) -> Result<SearchOutcome> {
    check_budget(budget)?;
    if min_eigenvalue(&d_tilde_dissipative(d))? >= -TOL_PSD {
        return Ok(psd_outcome());
    }
    let blocks = Blocks::new(d);
    let level = grid_level(budget / 2, |l| 2 + 2 * l * l);
    let dirs = grid_directions(level);
    let mut counter = Counter { used: 0, budget };
    let mut best = (0, f64::INFINITY);
    for (i, &(p, t)) in dirs.iter().enumerate() {
        if counter.left() == 0 {
            break;
        }
        counter.used += 1;
        let (u, v) = frame_vectors(p, t);
        let value = blocks.min_slope(&u, &v);
        if value < best.1 {
            best = (i, value);
        }
    }
    let mut x = vec![dirs[best.0].0, dirs[best.0].1];
    let mut value = best.1;
    if counter.left() > 0 {
        let mut objective = |p: &[f64]| {
            let (u, v) = frame_vectors(p[0], p[1]);
            blocks.min_slope(&u, &v)
        };
        let step = PI / (level + 1) as f64;
        let (xr, vr) = nelder_mead(&mut objective, &x, value, step, MAX_REFINE_ITER, &mut counter);
        if vr < value {
            x = xr;
            value = vr;
        }
    }
    let angles = [x[0], x[1], 0.0];
    Ok(finish(d, angles, angles, value, counter.used))
}
