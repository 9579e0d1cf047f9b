//! GLT symbols on `[0,1] × [-π,π]`: evaluation, sampling, monotone
//! rearrangement, extrema and weak-* integrals.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::curie_weiss::ModelParams;
use crate::{Error, Result};

/// Imaginary parts up to this size are treated as rounding noise.
pub const REAL_TOL: f64 = 1e-12;

type SpaceFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;
type FreqFn = Box<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// `κ(x, θ) = Σ_i a_i(x) f_i(θ)`.
pub struct SeparableSymbol {
    terms: Vec<(SpaceFn, FreqFn)>,
    description: String,
}

impl core::fmt::Debug for SeparableSymbol {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SeparableSymbol")
            .field("terms", &self.terms.len())
            .field("description", &self.description)
            .finish()
    }
}

impl SeparableSymbol {
    pub fn new(description: impl Into<String>) -> Self {
        Self {
            terms: Vec::new(),
            description: description.into(),
        }
    }

    pub fn with_term(
        mut self,
        space: impl Fn(f64) -> f64 + Send + Sync + 'static,
        freq: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.terms.push((Box::new(space), Box::new(freq)));
        self
    }

    /// Adds a term with a real frequency factor.
    pub fn with_real_term(
        self,
        space: impl Fn(f64) -> f64 + Send + Sync + 'static,
        freq: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.with_term(space, move |t| Complex64::new(freq(t), 0.0))
    }

    /// The constant symbol `c`.
    pub fn constant(c: f64) -> Self {
        Self::new(alloc::format!("constant {c}")).with_real_term(move |_| c, |_| 1.0)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, x: f64, theta: f64) -> Complex64 {
        self.terms.iter().map(|(a, f)| f(theta) * a(x)).sum()
    }

    /// Real value, or an error naming the point when the sample is complex or
    /// non-finite.
    pub fn eval_real(&self, x: f64, theta: f64) -> Result<f64> {
        let v = self.eval(x, theta);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::InvalidArgument {
                name: "symbol",
                reason: alloc::format!("non-finite value at (x, theta) = ({x}, {theta})"),
            });
        }
        if libm::fabs(v.im) > REAL_TOL {
            return Err(Error::NonReal {
                x,
                theta,
                imag: v.im,
            });
        }
        Ok(v.re)
    }
}

/// `κ(x,θ) = -(Γ/2)(2x-1)² - 2B cos θ √((1-x)x)`.
pub fn cw_symbol(params: ModelParams) -> SeparableSymbol {
    let gamma = params.gamma();
    let b = params.bfield();
    SeparableSymbol::new(alloc::format!("curie-weiss gamma={gamma} B={b}"))
        .with_real_term(
            move |x| -0.5 * gamma * (2.0 * x - 1.0) * (2.0 * x - 1.0),
            |_| 1.0,
        )
        .with_real_term(
            move |x| -2.0 * b * libm::sqrt(((1.0 - x) * x).max(0.0)),
            libm::cos,
        )
}

/// The classical energy `h₀(u·e(Ω)) = -(Γ/2)(u cos ϑ)² - B u sin ϑ cos φ`.
///
/// With `x = (1 + cos ϑ)/2` and `u = 1` this equals `κ(x, φ)` of
/// [`cw_symbol`] pointwise.
pub fn classical_h0(u: f64, theta_sph: f64, phi_sph: f64, params: ModelParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::InvalidArgument {
            name: "u",
            reason: alloc::format!("{u} not in [0, 1]"),
        });
    }
    if !(0.0..=PI).contains(&theta_sph) {
        return Err(Error::InvalidArgument {
            name: "theta",
            reason: alloc::format!("{theta_sph} not in [0, π]"),
        });
    }
    if !(0.0..2.0 * PI).contains(&phi_sph) {
        return Err(Error::InvalidArgument {
            name: "phi",
            reason: alloc::format!("{phi_sph} not in [0, 2π)"),
        });
    }
    let z = u * libm::cos(theta_sph);
    Ok(-0.5 * params.gamma() * z * z
        - params.bfield() * u * libm::sin(theta_sph) * libm::cos(phi_sph))
}

fn check_grid(n_x: usize, n_theta: usize, min: usize) -> Result<()> {
    if n_x < min || n_theta < min {
        return Err(Error::InvalidArgument {
            name: "grid",
            reason: alloc::format!("{n_x}x{n_theta} is below the minimum {min}x{min}"),
        });
    }
    Ok(())
}

/// Midpoint abscissae `x_i = (i - 1/2)/n_x`.
pub fn midpoint_x(n_x: usize) -> impl Iterator<Item = f64> {
    (0..n_x).map(move |i| (i as f64 + 0.5) / n_x as f64)
}

/// Midpoint angles `θ_j = -π + (j - 1/2)·2π/n_θ`.
pub fn midpoint_theta(n_theta: usize) -> impl Iterator<Item = f64> {
    (0..n_theta).map(move |j| -PI + (j as f64 + 0.5) * 2.0 * PI / n_theta as f64)
}

/// `κ` on the open midpoint grid, row-major in `x`.
pub fn sample_grid(sym: &SeparableSymbol, n_x: usize, n_theta: usize) -> Result<Vec<f64>> {
    check_grid(n_x, n_theta, 2)?;
    // Separable evaluation: every factor is sampled once per axis.
    let xs: Vec<f64> = midpoint_x(n_x).collect();
    let thetas: Vec<f64> = midpoint_theta(n_theta).collect();
    let space: Vec<Vec<f64>> = sym
        .terms
        .iter()
        .map(|(a, _)| xs.iter().map(|&x| a(x)).collect())
        .collect();
    let freq: Vec<Vec<Complex64>> = sym
        .terms
        .iter()
        .map(|(_, f)| thetas.iter().map(|&t| f(t)).collect())
        .collect();
    let mut out = Vec::with_capacity(n_x * n_theta);
    for (i, &x) in xs.iter().enumerate() {
        for (j, &theta) in thetas.iter().enumerate() {
            let v: Complex64 = space.iter().zip(&freq).map(|(a, f)| f[j] * a[i]).sum();
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::InvalidArgument {
                    name: "symbol",
                    reason: alloc::format!("non-finite value at (x, theta) = ({x}, {theta})"),
                });
            }
            if libm::fabs(v.im) > REAL_TOL {
                return Err(Error::NonReal {
                    x,
                    theta,
                    imag: v.im,
                });
            }
            out.push(v.re);
        }
    }
    Ok(out)
}

/// Sorted samples of a symbol, read as the quantile function `ψ` on `[0,1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneRearrangement {
    sorted_values: Vec<f64>,
    grid: (usize, usize),
}

impl MonotoneRearrangement {
    pub fn sorted_values(&self) -> &[f64] {
        &self.sorted_values
    }

    pub fn grid(&self) -> (usize, usize) {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.sorted_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted_values.is_empty()
    }

    /// `ψ(t)`: linear interpolation at fractional rank `t·(len - 1)`.
    pub fn quantile(&self, t: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidArgument {
                name: "t",
                reason: alloc::format!("{t} not in [0, 1]"),
            });
        }
        let v = &self.sorted_values;
        if v.len() == 1 {
            return Ok(v[0]);
        }
        let rank = t * (v.len() - 1) as f64;
        let lo = (libm::floor(rank) as usize).min(v.len() - 2);
        let frac = rank - lo as f64;
        Ok(v[lo] + frac * (v[lo + 1] - v[lo]))
    }
}

/// Ascending sort of the samples. `grid` records the `(n_x, n_θ)` they came
/// from; pass `(len, 1)` for a plain sample.
pub fn rearrangement(samples: &[f64], grid: (usize, usize)) -> Result<MonotoneRearrangement> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument {
            name: "samples",
            reason: "empty".into(),
        });
    }
    if let Some(index) = samples.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            context: "rearrangement samples",
            index,
        });
    }
    if grid.0 * grid.1 != samples.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.0 * grid.1,
            found: samples.len(),
        });
    }
    let mut sorted_values = samples.to_vec();
    sorted_values.sort_by(f64::total_cmp);
    Ok(MonotoneRearrangement {
        sorted_values,
        grid,
    })
}

/// Samples `sym` on the midpoint grid and rearranges.
pub fn rearrange_symbol(
    sym: &SeparableSymbol,
    n_x: usize,
    n_theta: usize,
) -> Result<MonotoneRearrangement> {
    rearrangement(&sample_grid(sym, n_x, n_theta)?, (n_x, n_theta))
}

/// Global extrema and where they are attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolExtrema {
    pub min: f64,
    pub max: f64,
    pub argmin: (f64, f64),
    pub argmax: (f64, f64),
}

/// Rectangle `[x_lo, x_hi] × [θ_lo, θ_hi]` searched by [`symbol_extrema`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub x: (f64, f64),
    pub theta: (f64, f64),
}

impl Domain {
    pub const FULL: Domain = Domain {
        x: (0.0, 1.0),
        theta: (-PI, PI),
    };
    pub const UPPER_HALF: Domain = Domain {
        x: (0.0, 1.0),
        theta: (0.0, PI),
    };
}

/// Extrema over the full domain `[0,1] × [-π,π]`.
pub fn symbol_extrema(
    sym: &SeparableSymbol,
    coarse_grid: (usize, usize),
    refine_iters: usize,
) -> Result<SymbolExtrema> {
    symbol_extrema_on(sym, Domain::FULL, coarse_grid, refine_iters)
}

/// Closed-grid scan of `domain` followed by a compass search around the best
/// coarse point: the step is kept while a neighbour improves and halved
/// otherwise, `refine_iters` halvings in total.
pub fn symbol_extrema_on(
    sym: &SeparableSymbol,
    domain: Domain,
    coarse_grid: (usize, usize),
    refine_iters: usize,
) -> Result<SymbolExtrema> {
    let (n_x, n_theta) = coarse_grid;
    check_grid(n_x, n_theta, 64)?;
    let hx = (domain.x.1 - domain.x.0) / (n_x - 1) as f64;
    let ht = (domain.theta.1 - domain.theta.0) / (n_theta - 1) as f64;

    let mut best_min = (f64::INFINITY, (0.0, 0.0));
    let mut best_max = (f64::NEG_INFINITY, (0.0, 0.0));
    for i in 0..n_x {
        let x = if i + 1 == n_x {
            domain.x.1
        } else {
            domain.x.0 + i as f64 * hx
        };
        for j in 0..n_theta {
            let t = if j + 1 == n_theta {
                domain.theta.1
            } else {
                domain.theta.0 + j as f64 * ht
            };
            let v = sym.eval_real(x, t)?;
            if v < best_min.0 {
                best_min = (v, (x, t));
            }
            if v > best_max.0 {
                best_max = (v, (x, t));
            }
        }
    }
    let (min, argmin) = compass_refine(sym, domain, best_min, (hx, ht), refine_iters, 1.0)?;
    let (max, argmax) = compass_refine(sym, domain, best_max, (hx, ht), refine_iters, -1.0)?;
    Ok(SymbolExtrema {
        min,
        max,
        argmin,
        argmax,
    })
}

fn compass_refine(
    sym: &SeparableSymbol,
    domain: Domain,
    start: (f64, (f64, f64)),
    step: (f64, f64),
    halvings: usize,
    sign: f64,
) -> Result<(f64, (f64, f64))> {
    const MAX_MOVES: usize = 100_000;
    let (mut value, (mut x, mut t)) = start;
    let (mut sx, mut st) = step;
    let mut done = 0;
    let mut moves = 0;
    while done < halvings && moves < MAX_MOVES {
        let mut improved = false;
        for dx in [-1.0, 0.0, 1.0] {
            for dt in [-1.0, 0.0, 1.0] {
                if dx == 0.0 && dt == 0.0 {
                    continue;
                }
                let cx = (x + dx * sx).clamp(domain.x.0, domain.x.1);
                let ct = (t + dt * st).clamp(domain.theta.0, domain.theta.1);
                let v = sym.eval_real(cx, ct)?;
                if sign * v < sign * value {
                    value = v;
                    x = cx;
                    t = ct;
                    improved = true;
                }
            }
        }
        if improved {
            moves += 1;
        } else {
            sx *= 0.5;
            st *= 0.5;
            done += 1;
        }
    }
    Ok((value, (x, t)))
}

/// `(1/2π) ∫₀¹ ∫_{-π}^{π} F(κ(x,θ)) dθ dx` by the midpoint rule, i.e. the mean
/// of `F` over [`sample_grid`].
pub fn weak_star_functional(
    sym: &SeparableSymbol,
    f: impl Fn(f64) -> f64,
    n_x: usize,
    n_theta: usize,
) -> Result<f64> {
    check_grid(n_x, n_theta, 2)?;
    let samples = sample_grid(sym, n_x, n_theta)?;
    let total = crate::neumaier_sum(samples.iter().map(|&v| f(v)));
    Ok(total / samples.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn unit() -> ModelParams {
        ModelParams::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn cw_symbol_values() {
        let k = cw_symbol(unit());
        assert!((k.eval_real(0.5, 0.0).unwrap() + 1.0).abs() < 1e-15);
        assert!((k.eval_real(0.5, PI).unwrap() - 1.0).abs() < 1e-15);
        let k0 = cw_symbol(ModelParams::new(2.0, 0.0).unwrap());
        for t in [-3.0, 0.1, 2.0] {
            assert_eq!(k0.eval_real(0.3, t).unwrap(), -(0.4f64 * 0.4));
        }
        for i in 0..20 {
            let (x, t) = (i as f64 / 19.0, -PI + i as f64 * 0.3);
            assert_eq!(k.eval_real(x, t).unwrap(), k.eval_real(x, -t).unwrap());
        }
    }

    #[test]
    fn classical_energy_values() {
        let p = ModelParams::new(1.3, 0.7).unwrap();
        for (th, ph) in [(0.0, 0.0), (1.0, 2.0), (PI, 6.0)] {
            assert_eq!(classical_h0(0.0, th, ph, p).unwrap(), 0.0);
        }
        assert!((classical_h0(1.0, PI / 2.0, 0.0, unit()).unwrap() + 1.0).abs() < 1e-15);
        assert!(classical_h0(1.1, 0.0, 0.0, p).is_err());
        assert!(classical_h0(0.5, -0.1, 0.0, p).is_err());
        assert!(classical_h0(0.5, 0.1, 2.0 * PI, p).is_err());
    }

    #[test]
    fn classical_energy_is_symbol_after_change_of_variables() {
        let p = ModelParams::new(1.0, 0.5).unwrap();
        let k = cw_symbol(p);
        for i in 0..=30 {
            let th = PI * i as f64 / 30.0;
            let x = 0.5 * (1.0 + libm::cos(th));
            for j in 0..40 {
                let ph = 2.0 * PI * j as f64 / 40.0;
                let h = classical_h0(1.0, th, ph, p).unwrap();
                let kv = k.eval_real(x, ph).unwrap();
                assert!((h - kv).abs() < 1e-13, "{h} vs {kv}");
            }
        }
    }

    #[test]
    fn constant_symbol_grid() {
        let s = sample_grid(&SeparableSymbol::constant(2.5), 3, 7).unwrap();
        assert_eq!(s, vec![2.5; 21]);
    }

    #[test]
    fn cosine_grid_mean_vanishes() {
        let s = SeparableSymbol::new("cos").with_real_term(|_| 1.0, libm::cos);
        let v = sample_grid(&s, 2, 1000).unwrap();
        let mean: f64 = v.iter().sum::<f64>() / v.len() as f64;
        assert!(mean.abs() < 1e-12);
    }

    #[test]
    fn complex_symbol_reports_location() {
        let s = SeparableSymbol::new("exp").with_term(|_| 1.0, |t| Complex64::from_polar(1.0, t));
        assert!(matches!(sample_grid(&s, 2, 4), Err(Error::NonReal { .. })));
    }

    #[test]
    fn cw_grid_lies_within_extrema() {
        let v = sample_grid(&cw_symbol(unit()), 1000, 1000).unwrap();
        assert!(v.iter().all(|&y| (-1.0..=1.0).contains(&y)));
    }

    #[test]
    fn rearrangement_examples() {
        let c = rearrangement(&[4.0; 6], (2, 3)).unwrap();
        for t in [0.0, 0.3, 1.0] {
            assert_eq!(c.quantile(t).unwrap(), 4.0);
        }
        let n_x = 500;
        let lin = rearrange_symbol(
            &SeparableSymbol::new("x").with_real_term(|x| x, |_| 1.0),
            n_x,
            4,
        )
        .unwrap();
        for k in 0..=20 {
            let t = k as f64 / 20.0;
            assert!((lin.quantile(t).unwrap() - t).abs() <= 1.0 / n_x as f64);
        }
        let n_t = 2000;
        let cos = rearrange_symbol(
            &SeparableSymbol::new("cos").with_real_term(|_| 1.0, libm::cos),
            2,
            n_t,
        )
        .unwrap();
        for k in 0..=20 {
            let t = k as f64 / 20.0;
            let want = -libm::cos(PI * t);
            assert!(
                (cos.quantile(t).unwrap() - want).abs() < 5.0 / n_t as f64,
                "t={t}"
            );
        }
        assert!(cos.quantile(0.5).unwrap().abs() < 1e-3);
    }

    #[test]
    fn quantile_endpoints_and_range() {
        let r = rearrangement(&[3.0, -1.0, 2.0], (3, 1)).unwrap();
        assert_eq!(r.quantile(0.0).unwrap(), -1.0);
        assert_eq!(r.quantile(1.0).unwrap(), 3.0);
        assert_eq!(r.quantile(0.75).unwrap(), 2.5);
        assert!(r.quantile(1.5).is_err());
        assert!(rearrangement(&[], (0, 0)).is_err());
        assert!(rearrangement(&[1.0, f64::NAN], (2, 1)).is_err());
    }

    #[test]
    fn extrema_unit_parameters() {
        let e = symbol_extrema(&cw_symbol(unit()), (64, 64), 60).unwrap();
        assert!((e.min + 1.0).abs() < 1e-8 && (e.max - 1.0).abs() < 1e-8);
        assert!((e.argmin.0 - 0.5).abs() < 1e-3 && e.argmin.1.abs() < 1e-6);
    }

    #[test]
    fn extrema_half_field() {
        // Minimum at θ = 0: -s²/2 - √(1-s²)/2 with s = 2x-1 is smallest at
        // s² = 3/4, value -5/8. Maximum at x = 1/2, θ = ±π, value 1/2.
        let sym = cw_symbol(ModelParams::new(1.0, 0.5).unwrap());
        let e = symbol_extrema(&sym, (64, 64), 60).unwrap();
        assert!((e.min + 0.625).abs() < 1e-8, "{}", e.min);
        let x_star = 0.5 * (1.0 + 0.75f64.sqrt());
        assert!((e.argmin.0 - x_star).abs() < 1e-3 || (e.argmin.0 - (1.0 - x_star)).abs() < 1e-3);
        assert!((e.max - 0.5).abs() < 1e-8);
        assert!((e.argmax.0 - 0.5).abs() < 1e-3 && (libm::fabs(e.argmax.1) - PI).abs() < 1e-6);
    }

    #[test]
    fn extrema_stable_under_grid_doubling() {
        let sym = cw_symbol(ModelParams::new(1.0, 0.5).unwrap());
        let a = symbol_extrema(&sym, (64, 64), 60).unwrap();
        let b = symbol_extrema(&sym, (128, 128), 60).unwrap();
        assert!((a.min - b.min).abs() < 1e-8 && (a.max - b.max).abs() < 1e-8);
        assert!(symbol_extrema(&sym, (32, 64), 10).is_err());
    }

    #[test]
    fn weak_star_examples() {
        let k = cw_symbol(unit());
        assert!((weak_star_functional(&k, |_| 1.0, 128, 128).unwrap() - 1.0).abs() < 1e-14);
        let cos = SeparableSymbol::new("cos").with_real_term(|_| 1.0, libm::cos);
        assert!(weak_star_functional(&cos, |y| y, 128, 128).unwrap().abs() < 1e-10);
    }

    #[test]
    fn weak_star_second_moment_of_cw_symbol() {
        // E[κ²] = (1/4)E[s⁴] + 4 E[cos²θ] E[x(1-x)] = 1/20 + 1/3 for Γ = B = 1.
        let k = cw_symbol(unit());
        let exact = 1.0 / 20.0 + 1.0 / 3.0;
        let coarse = weak_star_functional(&k, |y| y * y, 4000, 128).unwrap();
        let fine = weak_star_functional(&k, |y| y * y, 8000, 128).unwrap();
        assert!((coarse - fine).abs() < 1e-8);
        assert!((fine - exact).abs() < 1e-8);
    }
}
