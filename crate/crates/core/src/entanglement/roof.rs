use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::qmath::{binary_entropy, eig_hermitian, random, shannon_entropy, DensityMatrix, StateVector};
use crate::tol;

use super::DecompositionEnsemble;

/// Search parameters for the convex-roof minimizer.
#[derive(Debug, Clone)]
pub struct RoofOptions {
    /// Number of ensemble members; defaults to (rank)^2 and is never taken
    /// below the rank.
    pub ensemble_size: Option<usize>,
    /// Random restarts beyond the deterministic eigendecomposition start.
    pub restarts: usize,
    /// Sweep cap per restart; hitting it flags the result as unconverged.
    pub max_sweeps: usize,
    pub seed: u64,
}

impl Default for RoofOptions {
    fn default() -> Self {
        Self {
            ensemble_size: None,
            restarts: 3,
            max_sweeps: 240,
            seed: 0,
        }
    }
}

/// Outcome of a convex-roof search.
#[derive(Debug, Clone)]
pub struct RoofResult {
    /// Best ensemble average found, in bits.
    pub value: f64,
    /// The decomposition that attains `value`.
    pub witness: DecompositionEnsemble,
    /// False when the winning restart stopped on the sweep cap instead of
    /// the improvement threshold.
    pub converged: bool,
    /// Sweeps used by the winning restart.
    pub sweeps: usize,
}

const DIM_LIMIT: usize = 81;

struct Bipartition {
    d_a: usize,
    d_b: usize,
}

/// Entropy of entanglement of an unnormalized member vector, weighted by
/// its squared norm. Zero vectors cost nothing.
fn member_cost(v: &DVector<Complex64>, cut: &Bipartition) -> f64 {
    let norm_sq = v.norm_squared();
    if norm_sq < 1e-18 {
        return 0.0;
    }
    let (small, reduce_a) = if cut.d_a <= cut.d_b {
        (cut.d_a, true)
    } else {
        (cut.d_b, false)
    };
    if small == 2 {
        // Closed-form spectrum of the 2x2 reduced state.
        let (mut r00, mut r11) = (0.0f64, 0.0f64);
        let mut r01 = Complex64::ZERO;
        if reduce_a {
            for j in 0..cut.d_b {
                let x = v[j];
                let y = v[cut.d_b + j];
                r00 += x.norm_sqr();
                r11 += y.norm_sqr();
                r01 += x * y.conj();
            }
        } else {
            for i in 0..cut.d_a {
                let x = v[i * cut.d_b];
                let y = v[i * cut.d_b + 1];
                r00 += x.norm_sqr();
                r11 += y.norm_sqr();
                r01 += x * y.conj();
            }
        }
        r00 /= norm_sq;
        r11 /= norm_sq;
        let det = r00 * r11 - r01.norm_sqr() / (norm_sq * norm_sq);
        let trace = r00 + r11;
        let disc = (trace * trace - 4.0 * det).max(0.0).sqrt();
        let p = (0.5 * (trace + disc)).clamp(0.0, 1.0);
        return norm_sq * binary_entropy(p);
    }

    let mut reduced = DMatrix::from_element(small, small, Complex64::ZERO);
    if reduce_a {
        for r in 0..small {
            for c in 0..=r {
                let mut acc = Complex64::ZERO;
                for j in 0..cut.d_b {
                    acc += v[r * cut.d_b + j] * v[c * cut.d_b + j].conj();
                }
                reduced[(r, c)] = acc;
                reduced[(c, r)] = acc.conj();
            }
        }
    } else {
        for r in 0..small {
            for c in 0..=r {
                let mut acc = Complex64::ZERO;
                for i in 0..cut.d_a {
                    acc += v[i * cut.d_b + r] * v[i * cut.d_b + c].conj();
                }
                reduced[(r, c)] = acc;
                reduced[(c, r)] = acc.conj();
            }
        }
    }
    reduced /= Complex64::new(norm_sq, 0.0);
    let eig = reduced.symmetric_eigen();
    let probs: Vec<f64> = eig.eigenvalues.iter().map(|&p| p.clamp(0.0, 1.0)).collect();
    let cap = (small as f64).log2();
    norm_sq * shannon_entropy(&probs).min(cap)
}

/// Rotated pair (cos t a + e^{i n} sin t b, -e^{-i n} sin t a + cos t b).
fn rotate_pair(
    a: &DVector<Complex64>,
    b: &DVector<Complex64>,
    theta: f64,
    nu: f64,
) -> (DVector<Complex64>, DVector<Complex64>) {
    let cos = Complex64::new(theta.cos(), 0.0);
    let sin_fwd = Complex64::from_polar(theta.sin(), nu);
    let sin_bwd = Complex64::from_polar(theta.sin(), -nu);
    let new_a = a * cos + b * sin_fwd;
    let new_b = b * cos - a * sin_bwd;
    (new_a, new_b)
}

/// Best two-member mixing angle found by a coarse grid plus compass
/// refinement. Returns the improved pair when it beats the incumbent.
fn optimize_pair(
    a: &DVector<Complex64>,
    b: &DVector<Complex64>,
    cut: &Bipartition,
    incumbent: f64,
) -> Option<(DVector<Complex64>, DVector<Complex64>, f64)> {
    let pair_cost = |theta: f64, nu: f64| -> f64 {
        let (na, nb) = rotate_pair(a, b, theta, nu);
        member_cost(&na, cut) + member_cost(&nb, cut)
    };

    let mut best = (0.0f64, 0.0f64, incumbent);
    let thetas = [
        -std::f64::consts::FRAC_PI_4,
        -std::f64::consts::FRAC_PI_6,
        -std::f64::consts::FRAC_PI_8 * 0.5,
        std::f64::consts::FRAC_PI_8 * 0.5,
        std::f64::consts::FRAC_PI_6,
        std::f64::consts::FRAC_PI_4,
    ];
    for &theta in &thetas {
        for k in 0..8 {
            let nu = k as f64 * std::f64::consts::FRAC_PI_4;
            let cost = pair_cost(theta, nu);
            if cost < best.2 {
                best = (theta, nu, cost);
            }
        }
    }

    let (mut theta, mut nu, mut value) = best;
    let mut step_t = std::f64::consts::FRAC_PI_8 * 0.5;
    let mut step_n = std::f64::consts::FRAC_PI_4 * 0.5;
    for _ in 0..200 {
        let mut moved = false;
        for (dt, dn) in [
            (step_t, 0.0),
            (-step_t, 0.0),
            (0.0, step_n),
            (0.0, -step_n),
        ] {
            let cost = pair_cost(theta + dt, nu + dn);
            if cost < value - 1e-15 {
                theta += dt;
                nu += dn;
                value = cost;
                moved = true;
            }
        }
        if !moved {
            step_t *= 0.5;
            step_n *= 0.5;
            if step_t < 1e-4 && step_n < 1e-4 {
                break;
            }
        }
    }

    if value < incumbent - 1e-15 {
        let (na, nb) = rotate_pair(a, b, theta, nu);
        Some((na, nb, value))
    } else {
        None
    }
}

struct RestartOutcome {
    members: Vec<DVector<Complex64>>,
    value: f64,
    converged: bool,
    sweeps: usize,
}

fn run_restart(
    mut members: Vec<DVector<Complex64>>,
    cut: &Bipartition,
    max_sweeps: usize,
) -> RestartOutcome {
    let m = members.len();
    let mut costs: Vec<f64> = members.iter().map(|v| member_cost(v, cut)).collect();
    let mut total: f64 = costs.iter().sum();
    let mut converged = false;
    let mut sweeps = 0;

    while sweeps < max_sweeps {
        sweeps += 1;
        let before = total;
        for k in 0..m {
            for l in (k + 1)..m {
                let incumbent = costs[k] + costs[l];
                if incumbent < 1e-15 {
                    continue;
                }
                if let Some((na, nb, improved)) = optimize_pair(&members[k], &members[l], cut, incumbent)
                {
                    total += improved - incumbent;
                    let cost_a = member_cost(&na, cut);
                    costs[k] = cost_a;
                    costs[l] = improved - cost_a;
                    members[k] = na;
                    members[l] = nb;
                }
            }
        }
        if before - total < tol::ROOF_SWEEP {
            converged = true;
            break;
        }
        if total < 1e-12 {
            converged = true;
            break;
        }
    }

    RestartOutcome {
        members,
        value: total,
        converged,
        sweeps,
    }
}

/// Convex-roof entanglement of formation by direct ensemble search.
///
/// Every pure-state decomposition of `rho` arises from an isometry applied
/// to the scaled eigenvectors, so the search walks that manifold: members
/// start at the eigendecomposition (plus seeded random isometry restarts)
/// and are refined pairwise by two-member mixing rotations until a full
/// sweep improves the average by less than 1e-7. The reported value is the
/// minimum over restarts; the witness ensemble reconstructs `rho`.
pub fn eof_minimize(
    rho: &DensityMatrix,
    cut: &[&str],
    opts: &RoofOptions,
) -> Result<RoofResult> {
    let dim = rho.dim();
    if dim > DIM_LIMIT {
        return Err(Error::TooLarge(dim, DIM_LIMIT));
    }
    if cut.is_empty() {
        return Err(Error::TrivialCut);
    }
    for label in cut {
        rho.layout().position(label)?;
    }
    let side_a: Vec<&str> = rho
        .layout()
        .labels()
        .iter()
        .filter(|l| cut.iter().any(|c| c == &l.as_str()))
        .map(|l| l.as_str())
        .collect();
    let side_b: Vec<&str> = rho
        .layout()
        .labels()
        .iter()
        .filter(|l| !cut.iter().any(|c| c == &l.as_str()))
        .map(|l| l.as_str())
        .collect();
    if side_b.is_empty() {
        return Err(Error::TrivialCut);
    }

    let order: Vec<&str> = side_a.iter().chain(side_b.iter()).copied().collect();
    let permuted = rho.permuted(&order)?;
    let d_a: usize = permuted.layout().dims()[..side_a.len()].iter().product();
    let d_b: usize = permuted.layout().dims()[side_a.len()..].iter().product();
    let cut_dims = Bipartition { d_a, d_b };

    // Index map back to the caller's subsystem order for witness states.
    let inverse_map: Vec<usize> = {
        let mut map = vec![0usize; dim];
        for new_idx in 0..dim {
            let digits = permuted.layout().digits_of(new_idx);
            let mut original = vec![0usize; order.len()];
            for (slot, label) in order.iter().enumerate() {
                original[rho.layout().position(label).unwrap()] = digits[slot];
            }
            map[new_idx] = rho.layout().index_of(&original);
        }
        map
    };

    let (values, vectors) = eig_hermitian(permuted.matrix())?;
    let scaled: Vec<DVector<Complex64>> = values
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > tol::RANK_CUTOFF)
        .map(|(i, &p)| {
            let mut col = DVector::from_iterator(dim, vectors.column(i).iter().copied());
            col *= Complex64::new(p.sqrt(), 0.0);
            col
        })
        .collect();
    let rank = scaled.len();
    if rank == 0 {
        return Err(Error::NotPositive {
            min_eigenvalue: values.last().copied().unwrap_or(0.0),
        });
    }
    let size = opts.ensemble_size.unwrap_or(rank * rank).max(rank);

    let mut best: Option<RestartOutcome> = None;
    for restart in 0..=opts.restarts {
        let members: Vec<DVector<Complex64>> = if restart == 0 {
            (0..size)
                .map(|k| {
                    if k < rank {
                        scaled[k].clone()
                    } else {
                        DVector::from_element(dim, Complex64::ZERO)
                    }
                })
                .collect()
        } else {
            let mut rng = ChaCha12Rng::seed_from_u64(opts.seed);
            rng.set_stream(restart as u64);
            let isometry = random::random_isometry(size, rank, &mut rng);
            (0..size)
                .map(|k| {
                    let mut v = DVector::from_element(dim, Complex64::ZERO);
                    for (i, s) in scaled.iter().enumerate() {
                        let coeff = isometry[(k, i)];
                        if coeff != Complex64::ZERO {
                            v += s * coeff;
                        }
                    }
                    v
                })
                .collect()
        };
        let outcome = run_restart(members, &cut_dims, opts.max_sweeps);
        let better = match &best {
            None => true,
            Some(b) => outcome.value < b.value - 1e-15,
        };
        if better {
            best = Some(outcome);
        }
    }
    let best = best.expect("at least the deterministic restart runs");

    let mut witness_members = Vec::new();
    for v in &best.members {
        let weight = v.norm_squared();
        if weight <= 1e-12 {
            continue;
        }
        let norm = weight.sqrt();
        let mut original = DVector::from_element(dim, Complex64::ZERO);
        for new_idx in 0..dim {
            original[inverse_map[new_idx]] = v[new_idx] / Complex64::new(norm, 0.0);
        }
        witness_members.push((
            weight,
            StateVector::from_parts_unchecked(rho.layout().clone(), original),
        ));
    }
    let witness = DecompositionEnsemble::new(witness_members)?;

    let cap = (d_a.min(d_b) as f64).log2();
    Ok(RoofResult {
        value: best.value.clamp(0.0, cap),
        witness,
        converged: best.converged,
        sweeps: best.sweeps,
    })
}
