//! Quasi-Newton minimization (BFGS with a strong-Wolfe line search) and a
//! bracketed 1-D golden-section search.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizerConfig {
    /// Stop once `max |g_i|` falls below this.
    pub gtol: f64,
    /// Budget on objective evaluations, line-search trials included.
    pub max_evals: usize,
    pub max_iters: usize,
    /// Sufficient-decrease constant.
    pub c1: f64,
    /// Curvature constant.
    pub c2: f64,
}

impl OptimizerConfig {
    /// Checks `0 < c1 < c2 < 1` and positive budgets.
    pub fn validate(&self) -> Result<(), Error> {
        if !(0.0 < self.c1 && self.c1 < self.c2 && self.c2 < 1.0) {
            return Err(Error::InvalidArgument(alloc::format!(
                "line-search constants must satisfy 0 < c1 < c2 < 1, got {} and {}",
                self.c1, self.c2
            )));
        }
        if !(self.gtol > 0.0) || self.max_evals == 0 {
            return Err(Error::InvalidArgument(
                "gradient tolerance and evaluation budget must be positive".into(),
            ));
        }
        Ok(())
    }
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            gtol: 1e-5,
            max_evals: 10_000,
            max_iters: 2_000,
            c1: 1e-4,
            c2: 0.9,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizeResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub grad: Vec<f64>,
    pub n_evals: usize,
    pub n_iters: usize,
    /// `true` if the gradient criterion was met.
    pub converged: bool,
}

struct Counted<F> {
    f: F,
    evals: usize,
}

impl<F> Counted<F>
where
    F: FnMut(&[f64]) -> Result<(f64, Vec<f64>), Error>,
{
    fn eval(&mut self, x: &[f64]) -> Result<(f64, Vec<f64>), Error> {
        self.evals += 1;
        let (v, g) = (self.f)(x)?;
        if !v.is_finite() || g.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok((v, g))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn inf_norm(g: &[f64]) -> f64 {
    g.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Minimizes `f`, which returns the value and gradient at a point.
pub fn minimize_bfgs<F>(f: F, x0: &[f64], opts: &OptimizerConfig) -> Result<OptimizeResult, Error>
where
    F: FnMut(&[f64]) -> Result<(f64, Vec<f64>), Error>,
{
    opts.validate()?;
    let n = x0.len();
    let mut obj = Counted { f, evals: 0 };
    let mut x = x0.to_vec();
    let (mut fx, mut g) = obj.eval(&x)?;
    if n == 0 {
        return Ok(OptimizeResult {
            x,
            f: fx,
            grad: g,
            n_evals: obj.evals,
            n_iters: 0,
            converged: true,
        });
    }
    // inverse Hessian, row-major
    let mut hinv = identity(n);
    let mut first_step = true;
    let mut iters = 0;
    let mut converged = inf_norm(&g) < opts.gtol;
    while !converged && iters < opts.max_iters && obj.evals < opts.max_evals {
        iters += 1;
        let mut p: Vec<f64> = (0..n)
            .map(|i| -dot(&hinv[i * n..(i + 1) * n], &g))
            .collect();
        let mut slope = dot(&p, &g);
        if slope >= 0.0 {
            // lost positive definiteness; fall back to steepest descent
            hinv = identity(n);
            p = g.iter().map(|v| -v).collect();
            slope = dot(&p, &g);
        }
        let alpha0 = if first_step {
            (1.0 / inf_norm(&g)).min(1.0)
        } else {
            1.0
        };
        let Some((alpha, f_new, g_new)) =
            line_search(&mut obj, &x, fx, slope, &p, alpha0, opts)?
        else {
            // no acceptable step: give up at the current point
            break;
        };
        let s: Vec<f64> = p.iter().map(|v| alpha * v).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        for (xi, si) in x.iter_mut().zip(&s) {
            *xi += si;
        }
        let df = fx - f_new;
        fx = f_new;
        g = g_new;
        converged = inf_norm(&g) < opts.gtol;
        let sy = dot(&s, &y);
        if sy > 1e-14 {
            if first_step {
                let scale = sy / dot(&y, &y);
                hinv.iter_mut().for_each(|v| *v = 0.0);
                for i in 0..n {
                    hinv[i * n + i] = scale;
                }
            }
            bfgs_update(&mut hinv, &s, &y, sy);
            first_step = false;
        }
        if df.abs() <= f64::EPSILON * fx.abs().max(1.0) && inf_norm(&s) < 1e-14 {
            break;
        }
    }
    Ok(OptimizeResult {
        x,
        f: fx,
        grad: g,
        n_evals: obj.evals,
        n_iters: iters,
        converged,
    })
}

fn identity(n: usize) -> Vec<f64> {
    let mut m = alloc::vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

/// `H ← (I − ρ s yᵀ) H (I − ρ y sᵀ) + ρ s sᵀ`.
fn bfgs_update(h: &mut [f64], s: &[f64], y: &[f64], sy: f64) {
    let n = s.len();
    let rho = 1.0 / sy;
    let hy: Vec<f64> = (0..n).map(|i| dot(&h[i * n..(i + 1) * n], y)).collect();
    let yhy = dot(y, &hy);
    for i in 0..n {
        for j in 0..n {
            h[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j])
                + (rho * rho * yhy + rho) * s[i] * s[j];
        }
    }
}

type Step = (f64, f64, Vec<f64>);

/// Strong-Wolfe line search along `p`: bracketing followed by zoom with
/// cubic interpolation.
fn line_search<F>(
    obj: &mut Counted<F>,
    x: &[f64],
    f0: f64,
    d0: f64,
    p: &[f64],
    alpha0: f64,
    opts: &OptimizerConfig,
) -> Result<Option<Step>, Error>
where
    F: FnMut(&[f64]) -> Result<(f64, Vec<f64>), Error>,
{
    let mut trial = |obj: &mut Counted<F>, a: f64| -> Result<(f64, f64, Vec<f64>), Error> {
        let xa: Vec<f64> = x.iter().zip(p).map(|(xi, pi)| xi + a * pi).collect();
        let (fa, ga) = obj.eval(&xa)?;
        let da = dot(&ga, p);
        Ok((fa, da, ga))
    };
    let mut a_prev = 0.0;
    let (mut f_prev, mut d_prev) = (f0, d0);
    let mut a = alpha0;
    for i in 0..30 {
        if obj.evals >= opts.max_evals {
            return Ok(None);
        }
        let (fa, da, ga) = trial(obj, a)?;
        if fa > f0 + opts.c1 * a * d0 || (i > 0 && fa >= f_prev) {
            return zoom(obj, &mut trial, f0, d0, (a_prev, f_prev, d_prev), (a, fa, da), opts);
        }
        if da.abs() <= -opts.c2 * d0 {
            return Ok(Some((a, fa, ga)));
        }
        if da >= 0.0 {
            return zoom(obj, &mut trial, f0, d0, (a, fa, da), (a_prev, f_prev, d_prev), opts);
        }
        a_prev = a;
        f_prev = fa;
        d_prev = da;
        a *= 2.0;
    }
    Ok(None)
}

fn zoom<F, T>(
    obj: &mut Counted<F>,
    trial: &mut T,
    f0: f64,
    d0: f64,
    mut lo: (f64, f64, f64),
    mut hi: (f64, f64, f64),
    opts: &OptimizerConfig,
) -> Result<Option<Step>, Error>
where
    F: FnMut(&[f64]) -> Result<(f64, Vec<f64>), Error>,
    T: FnMut(&mut Counted<F>, f64) -> Result<(f64, f64, Vec<f64>), Error>,
{
    let mut best: Option<Step> = None;
    for _ in 0..40 {
        if obj.evals >= opts.max_evals {
            break;
        }
        let (a_lo, a_hi) = (lo.0, hi.0);
        let width = (a_hi - a_lo).abs();
        if width < 1e-16 * a_lo.abs().max(1.0) {
            break;
        }
        let mut a = cubic_min(lo, hi);
        let (left, right) = (a_lo.min(a_hi), a_lo.max(a_hi));
        let margin = 0.1 * width;
        if !a.is_finite() || a < left + margin || a > right - margin {
            a = 0.5 * (a_lo + a_hi);
        }
        let (fa, da, ga) = trial(obj, a)?;
        if fa > f0 + opts.c1 * a * d0 || fa >= lo.1 {
            hi = (a, fa, da);
        } else {
            if da.abs() <= -opts.c2 * d0 {
                return Ok(Some((a, fa, ga)));
            }
            if da * (a_hi - a_lo) >= 0.0 {
                hi = lo;
            }
            lo = (a, fa, da);
            best = Some((a, fa, ga));
        }
    }
    // accept the best sufficient-decrease point if curvature was never met
    Ok(best)
}

/// Minimizer of the cubic through two points with known slopes.
fn cubic_min(a: (f64, f64, f64), b: (f64, f64, f64)) -> f64 {
    let (x0, f0, d0) = a;
    let (x1, f1, d1) = b;
    let d1_ = d0 + d1 - 3.0 * (f0 - f1) / (x0 - x1);
    let disc = d1_ * d1_ - d0 * d1;
    if disc < 0.0 {
        return f64::NAN;
    }
    let d2 = (x1 - x0).signum() * disc.sqrt();
    x1 - (x1 - x0) * (d1 + d2 - d1_) / (d1 - d0 + 2.0 * d2)
}

/// Golden-section minimization of a unimodal `f` on `[a, b]`, returning
/// `(x, f(x))`.
pub fn golden_section<F>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64), Error>
where
    F: FnMut(f64) -> Result<f64, Error>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc < fd { (c, fc) } else { (d, fd) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rosenbrock(x: &[f64]) -> Result<(f64, Vec<f64>), Error> {
        let (a, b) = (x[0], x[1]);
        let f = (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2);
        let g = vec![
            -2.0 * (1.0 - a) - 400.0 * a * (b - a * a),
            200.0 * (b - a * a),
        ];
        Ok((f, g))
    }

    #[test]
    fn rosenbrock_converges() {
        let r = minimize_bfgs(rosenbrock, &[-1.2, 1.0], &OptimizerConfig::default()).unwrap();
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-5 && (r.x[1] - 1.0).abs() < 1e-5, "{:?}", r.x);
        assert!(r.n_evals < 200);
    }

    #[test]
    fn quadratic_in_few_steps() {
        let q = |x: &[f64]| -> Result<(f64, Vec<f64>), Error> {
            let w = [1.0, 10.0, 100.0];
            let f = x.iter().zip(&w).map(|(v, w)| 0.5 * w * (v - 1.0).powi(2)).sum();
            Ok((f, x.iter().zip(&w).map(|(v, w)| w * (v - 1.0)).collect()))
        };
        let r = minimize_bfgs(q, &[0.0; 3], &OptimizerConfig::default()).unwrap();
        assert!(r.converged);
        assert!(r.x.iter().all(|v| (v - 1.0).abs() < 1e-6));
    }

    #[test]
    fn non_finite_is_an_error() {
        let bad = |_: &[f64]| -> Result<(f64, Vec<f64>), Error> { Ok((f64::NAN, vec![0.0])) };
        assert!(matches!(
            minimize_bfgs(bad, &[0.0], &OptimizerConfig::default()),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn respects_evaluation_budget() {
        let opts = OptimizerConfig {
            max_evals: 5,
            ..Default::default()
        };
        let r = minimize_bfgs(rosenbrock, &[-1.2, 1.0], &opts).unwrap();
        assert!(!r.converged);
        assert!(r.n_evals <= 6);
    }

    #[test]
    fn golden_section_finds_cosine_minimum() {
        let (x, fx) = golden_section(|t| Ok(t.cos()), 2.0, 4.5, 1e-10).unwrap();
        assert!((x - core::f64::consts::PI).abs() < 1e-6);
        assert!((fx + 1.0).abs() < 1e-15);
    }
}
