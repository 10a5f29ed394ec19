//! Unconstrained minimisers: Nelder–Mead simplex search and BFGS polish.
//!
//! Objectives may return non-finite values to mark infeasible points; both methods treat
//! them as `+∞`.

/// Cube root of machine epsilon, the central-difference step scale.
pub const CBRT_EPS: f64 = 6.055_454_452_393_343e-6;

#[derive(Clone, Debug)]
pub struct NelderMeadOptions {
    pub max_iter: usize,
    /// Absolute spread of objective values across the simplex.
    pub f_tol: f64,
    /// Largest vertex distance from the best vertex (infinity norm).
    pub x_tol: f64,
    /// Initial edge length along each coordinate.
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self { max_iter: 2000, f_tol: 1e-10, x_tol: 1e-8, initial_step: 0.5 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

pub fn nelder_mead<G: FnMut(&[f64]) -> f64>(mut f: G, x0: &[f64], opts: &NelderMeadOptions) -> Minimum {
    let dim = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        sanitize(f(x))
    };
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v, &mut evals)).collect();

    let mut iterations = 0;
    while iterations < opts.max_iter {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let f_spread = (values[dim] - values[0]).abs();
        let x_spread = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if (f_spread <= opts.f_tol || (values[0].is_finite() && f_spread == 0.0)) && x_spread <= opts.x_tol {
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> =
            (0..dim).map(|j| simplex[..dim].iter().map(|v| v[j]).sum::<f64>() / dim as f64).collect();
        let worst = simplex[dim].clone();
        let along = |t: f64| -> Vec<f64> { centroid.iter().zip(&worst).map(|(c, w)| c + t * (c - w)).collect() };

        let reflected = along(1.0);
        let fr = eval(&reflected, &mut evals);
        if fr < values[0] {
            let expanded = along(2.0);
            let fe = eval(&expanded, &mut evals);
            if fe < fr {
                simplex[dim] = expanded;
                values[dim] = fe;
            } else {
                simplex[dim] = reflected;
                values[dim] = fr;
            }
            continue;
        }
        if fr < values[dim - 1] {
            simplex[dim] = reflected;
            values[dim] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[dim] {
            let c = along(0.5);
            let fc = eval(&c, &mut evals);
            (c, fc)
        } else {
            let c = along(-0.5);
            let fc = eval(&c, &mut evals);
            (c, fc)
        };
        if fc < values[dim].min(fr) {
            simplex[dim] = contracted;
            values[dim] = fc;
            continue;
        }
        let best = simplex[0].clone();
        for i in 1..=dim {
            let shrunk: Vec<f64> = simplex[i].iter().zip(&best).map(|(x, b)| b + 0.5 * (x - b)).collect();
            values[i] = eval(&shrunk, &mut evals);
            simplex[i] = shrunk;
        }
    }
    let best = (0..=dim).min_by(|&a, &b| values[a].total_cmp(&values[b])).expect("non-empty simplex");
    Minimum { x: simplex[best].clone(), fx: values[best], iterations, evaluations: evals }
}

/// Central-difference gradient with steps `CBRT_EPS * max(|x_i|, 1)`.
pub fn central_gradient<G: FnMut(&[f64]) -> f64>(f: &mut G, x: &[f64]) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            let h = CBRT_EPS * x[i].abs().max(1.0);
            probe[i] = x[i] + h;
            let up = f(&probe);
            probe[i] = x[i] - h;
            let down = f(&probe);
            probe[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct BfgsOptions {
    pub max_iter: usize,
    pub grad_tol: f64,
    /// Convergence requires the final relative objective improvement below this...
    pub rel_improvement_tol: f64,
    /// ...and the final step (infinity norm) below this.
    pub step_tol: f64,
}

impl Default for BfgsOptions {
    fn default() -> Self {
        Self { max_iter: 200, grad_tol: 1e-8, rel_improvement_tol: 1e-10, step_tol: 1e-8 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BfgsReport {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub grad_norm: f64,
    pub rel_improvement: f64,
    pub step_norm: f64,
    pub converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// BFGS with backtracking (Armijo) line search.
///
/// `converged` is set when the last accepted or attempted step changes the objective by
/// less than `rel_improvement_tol` relative and moves less than `step_tol`, or when the
/// gradient norm falls below `grad_tol`.
pub fn bfgs<G, D>(mut f: G, mut grad: D, x0: &[f64], opts: &BfgsOptions) -> BfgsReport
where
    G: FnMut(&[f64]) -> f64,
    D: FnMut(&[f64]) -> Vec<f64>,
{
    let dim = x0.len();
    let identity = |d: usize| -> Vec<Vec<f64>> {
        (0..d).map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
    };
    let mut h_inv = identity(dim);
    let mut x = x0.to_vec();
    let mut fx = sanitize(f(&x));
    let mut g = grad(&x);
    let mut rel_improvement = f64::INFINITY;
    let mut step_norm = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;

    if !fx.is_finite() || g.iter().any(|v| !v.is_finite()) {
        return BfgsReport { x, fx, iterations, grad_norm: f64::INFINITY, rel_improvement, step_norm, converged };
    }

    while iterations < opts.max_iter {
        if norm(&g) <= opts.grad_tol {
            converged = true;
            break;
        }
        iterations += 1;
        let mut dir: Vec<f64> = h_inv.iter().map(|row| -dot(row, &g)).collect();
        let mut slope = dot(&dir, &g);
        if !(slope < 0.0) {
            h_inv = identity(dim);
            dir = g.iter().map(|v| -v).collect();
            slope = dot(&dir, &g);
        }
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let cand: Vec<f64> = x.iter().zip(&dir).map(|(xi, di)| xi + t * di).collect();
            let fc = sanitize(f(&cand));
            if fc <= fx + 1e-4 * t * slope {
                accepted = Some((cand, fc));
                break;
            }
            t *= 0.5;
        }
        let Some((x_new, f_new)) = accepted else {
            // No descent along the search direction: numerically stationary.
            rel_improvement = 0.0;
            step_norm = 0.0;
            converged = true;
            break;
        };
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        rel_improvement = (fx - f_new).abs() / fx.abs().max(f64::MIN_POSITIVE);
        step_norm = s.iter().fold(0.0, |m, v| m.max(v.abs()));
        let g_new = grad(&x_new);
        if g_new.iter().any(|v| !v.is_finite()) {
            x = x_new;
            fx = f_new;
            break;
        }
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 * norm(&s) * norm(&y) {
            let rho = 1.0 / sy;
            let hy: Vec<f64> = h_inv.iter().map(|row| dot(row, &y)).collect();
            let yhy = dot(&y, &hy);
            for i in 0..dim {
                for j in 0..dim {
                    h_inv[i][j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
                }
            }
        }
        x = x_new;
        fx = f_new;
        g = g_new;
        if rel_improvement < opts.rel_improvement_tol && step_norm < opts.step_tol {
            converged = true;
            break;
        }
    }
    BfgsReport { grad_norm: norm(&g), x, fx, iterations, rel_improvement, step_norm, converged }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rosenbrock(x: &[f64]) -> f64 {
        (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)
    }

    #[test]
    fn nelder_mead_finds_rosenbrock_minimum() {
        let opts = NelderMeadOptions { max_iter: 5000, f_tol: 1e-14, x_tol: 1e-9, initial_step: 0.5 };
        let m = nelder_mead(rosenbrock, &[-1.2, 1.0], &opts);
        assert!((m.x[0] - 1.0).abs() < 1e-6 && (m.x[1] - 1.0).abs() < 1e-6, "{:?}", m);
    }

    #[test]
    fn nelder_mead_avoids_infeasible_region() {
        let f = |x: &[f64]| if x[0] < 0.0 { f64::NAN } else { (x[0] - 0.1).powi(2) + x[1].powi(2) };
        let m = nelder_mead(f, &[1.0, 1.0], &NelderMeadOptions::default());
        assert!((m.x[0] - 0.1).abs() < 1e-5);
    }

    #[test]
    fn bfgs_polishes_quadratic() {
        let f = |x: &[f64]| 3.0 * (x[0] - 2.0).powi(2) + (x[1] + 1.0).powi(2) + x[0] * x[1];
        let mut fg = f;
        let r = bfgs(f, |x| central_gradient(&mut fg, x), &[0.0, 0.0], &BfgsOptions::default());
        // Stationary point of the quadratic.
        let (x0, x1) = (26.0 / 11.0, -24.0 / 11.0);
        assert!((r.x[0] - x0).abs() < 1e-6 && (r.x[1] - x1).abs() < 1e-6, "{r:?}");
        assert!(r.converged);
    }

    #[test]
    fn central_gradient_is_accurate() {
        let mut f = |x: &[f64]| x[0].sin() * x[1].exp();
        let g = central_gradient(&mut f, &[0.3, -0.2]);
        assert!((g[0] - 0.3f64.cos() * (-0.2f64).exp()).abs() < 1e-9);
        assert!((g[1] - 0.3f64.sin() * (-0.2f64).exp()).abs() < 1e-9);
    }
}
