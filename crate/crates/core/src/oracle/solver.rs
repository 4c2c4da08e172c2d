use super::quadrature::{gauss_laguerre, laguerre_log_values};
use crate::afm::QuantumNumbers;
use crate::error::{domain, Error, Result};
use crate::spectra::PotentialSpec;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use nalgebra::{DMatrix, SymmetricEigen};
#[allow(unused_imports)]
use num_traits::Float;

/// Kinetic operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kinetic {
    /// σ√(p² + m²)
    Semirelativistic { sigma: f64, mass: f64 },
    /// p²/ν
    NonrelativisticNu { nu: f64 },
    /// √(p² + m₁²) + √(p² + m₂²)
    TwoMass { m1: f64, m2: f64 },
}

impl Kinetic {
    pub fn eval(&self, p2: f64) -> f64 {
        let p2 = p2.max(0.0);
        match *self {
            Kinetic::Semirelativistic { sigma, mass } => sigma * (p2 + mass * mass).sqrt(),
            Kinetic::NonrelativisticNu { nu } => p2 / nu,
            Kinetic::TwoMass { m1, m2 } => (p2 + m1 * m1).sqrt() + (p2 + m2 * m2).sqrt(),
        }
    }

    /// Kinetic energy at rest.
    pub fn rest(&self) -> f64 {
        match *self {
            Kinetic::Semirelativistic { sigma, mass } => sigma * mass,
            Kinetic::NonrelativisticNu { .. } => 0.0,
            Kinetic::TwoMass { m1, m2 } => m1 + m2,
        }
    }

    /// −κ/r strength at which the Hamiltonian loses its lower bound.
    pub fn critical_coulomb(&self) -> f64 {
        match *self {
            Kinetic::Semirelativistic { sigma, .. } => 2.0 * sigma / PI,
            Kinetic::NonrelativisticNu { .. } => f64::INFINITY,
            Kinetic::TwoMass { .. } => 4.0 / PI,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = |what, v: f64, strict: bool| {
            if v.is_finite() && (v > 0.0 || (!strict && v == 0.0)) {
                Ok(())
            } else {
                Err(domain(what, v))
            }
        };
        match *self {
            Kinetic::Semirelativistic { sigma, mass } => {
                ok("sigma", sigma, true)?;
                ok("mass", mass, false)
            }
            Kinetic::NonrelativisticNu { nu } => ok("nu", nu, true),
            Kinetic::TwoMass { m1, m2 } => {
                ok("m1", m1, false)?;
                ok("m2", m2, false)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianSpec {
    pub kinetic: Kinetic,
    pub potential: PotentialSpec,
    pub l: u32,
}

impl HamiltonianSpec {
    pub fn new(kinetic: Kinetic, potential: PotentialSpec, l: u32) -> Self {
        HamiltonianSpec { kinetic, potential, l }
    }

    pub fn with_l(mut self, l: u32) -> Self {
        self.l = l;
        self
    }

    /// Continuum edge, if the potential vanishes at infinity.
    pub fn threshold(&self) -> Option<f64> {
        self.potential.threshold().map(|v| v + self.kinetic.rest())
    }

    // Matrix elements exact with K = M + 4 nodes.
    fn polynomial_potential(&self) -> bool {
        match self.potential {
            PotentialSpec::PowerLaw { lambda, .. } => lambda == 1.0 || lambda == 2.0 || lambda == -1.0,
            PotentialSpec::Funnel { .. } => true,
            PotentialSpec::SquareRoot { b, .. } => b == 0.0,
            PotentialSpec::Yukawa { .. } => false,
        }
    }
}

/// Expectation values in one eigenstate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expectation {
    pub p2: f64,
    /// ⟨kinetic operator⟩
    pub abs_kinetic: f64,
    /// kinetic at ⟨p²⟩ minus ⟨kinetic⟩, ≥ 0 for the concave square roots
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Bound levels, ascending in n.
    pub levels: Vec<f64>,
    pub basis_size: usize,
    pub scale: f64,
    /// |E(M) − E(M/2)| per level
    pub convergence_estimate: Vec<f64>,
    pub expectations: Option<Vec<Expectation>>,
    /// Aitken Δ² over the last three basis sizes, where monotone.
    pub extrapolated: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOptions {
    pub schedule: Vec<usize>,
    /// Basis size used for scale tuning.
    pub tune_size: usize,
    pub tune_points: usize,
    /// Half-width of the scale scan in decades.
    pub tune_decades: f64,
    /// Skip tuning and use this scale.
    pub scale: Option<f64>,
    pub expectations: bool,
    /// Also accept convergence of the Aitken estimates; for levels that converge
    /// only algebraically in M. The raw levels are still reported in `levels`.
    pub extrapolate: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            schedule: vec![50, 100, 200, 400, 800],
            tune_size: 40,
            tune_points: 25,
            tune_decades: 2.0,
            scale: None,
            expectations: true,
            extrapolate: false,
        }
    }
}

/// Basis of size M for one l, independent of the scale b.
#[derive(Debug, Clone)]
pub struct LaguerreBasis {
    pub size: usize,
    pub l: u32,
    nodes: Vec<f64>,
    /// √w_i x-independent-part values of the basis at nodes, M×K
    p: DMatrix<f64>,
    /// p² matrix at b = 1
    p2: DMatrix<f64>,
    p2_values: Vec<f64>,
    p2_vectors: DMatrix<f64>,
}

impl LaguerreBasis {
    pub fn new(size: usize, l: u32, quadrature: usize) -> Result<Self> {
        if size == 0 || quadrature < size + 1 {
            return Err(domain("basis size", size as f64));
        }
        let gamma = l as f64 + 1.0;
        let alpha = 2.0 * gamma;
        let (nodes, log_w) = gauss_laguerre(alpha - 2.0, quadrature)?;
        let k = nodes.len();
        let mut p = DMatrix::<f64>::zeros(size, k);
        for (i, (&x, &lw)) in nodes.iter().zip(&log_w).enumerate() {
            for (j, (lv, s)) in laguerre_log_values(alpha, size, x).into_iter().enumerate() {
                p[(j, i)] = s * (lv + 0.5 * lw).exp();
            }
        }
        // x d/dx of x^γ e^{-x/2} p_k, divided by x
        let q = DMatrix::<f64>::from_fn(size, k, |j, i| {
            let jf = j as f64;
            let back = if j == 0 { 0.0 } else { (jf * (jf + alpha)).sqrt() * p[(j - 1, i)] };
            (gamma + jf - 0.5 * nodes[i]) * p[(j, i)] - back
        });
        let ll = (l as f64) * (l as f64 + 1.0);
        let mut p2 = &q * q.transpose();
        if ll != 0.0 {
            p2 += (&p * p.transpose()) * ll;
        }
        symmetrize(&mut p2);
        let eig = SymmetricEigen::new(p2.clone());
        let (p2_values, p2_vectors) = sorted(eig);
        Ok(LaguerreBasis {
            size,
            l,
            nodes,
            p,
            p2,
            p2_values,
            p2_vectors,
        })
    }

    pub fn for_spec(size: usize, h: &HamiltonianSpec) -> Result<Self> {
        let k = if h.polynomial_potential() { size + 4 } else { 2 * size };
        Self::new(size, h.l, k)
    }

    /// Hamiltonian matrix at scale b.
    pub fn hamiltonian(&self, h: &HamiltonianSpec, b: f64) -> DMatrix<f64> {
        let inv_b2 = 1.0 / (b * b);
        let mut t = match h.kinetic {
            Kinetic::NonrelativisticNu { nu } => &self.p2 * (inv_b2 / nu),
            kin => {
                let mut us = self.p2_vectors.clone();
                for (j, &lam) in self.p2_values.iter().enumerate() {
                    let f = kin.eval(lam * inv_b2);
                    us.column_mut(j).scale_mut(f);
                }
                &us * self.p2_vectors.transpose()
            }
        };
        let mut pv = self.p.clone();
        for (i, &x) in self.nodes.iter().enumerate() {
            let v = x * x * h.potential.eval(b * x);
            pv.column_mut(i).scale_mut(v);
        }
        t += &pv * self.p.transpose();
        symmetrize(&mut t);
        t
    }

    /// Expectations in the state with coefficient vector `c` at scale b.
    pub fn expectation(&self, kin: Kinetic, b: f64, c: &[f64]) -> Expectation {
        let inv_b2 = 1.0 / (b * b);
        let cv = nalgebra::DVector::from_column_slice(c);
        let y = self.p2_vectors.transpose() * cv;
        let norm: f64 = y.iter().map(|v| v * v).sum();
        let weights: Vec<f64> = y.iter().map(|v| v * v / norm).collect();
        let lam: Vec<f64> = self.p2_values.iter().map(|v| v.max(0.0) * inv_b2).collect();
        let p2: f64 = weights.iter().zip(&lam).map(|(w, l)| w * l).sum();
        let abs_kinetic: f64 = weights.iter().zip(&lam).map(|(w, &l)| w * kin.eval(l)).sum();
        let delta = match kin {
            Kinetic::Semirelativistic { sigma, mass } => sigma * jensen_gap(&weights, &lam, mass),
            Kinetic::NonrelativisticNu { .. } => 0.0,
            Kinetic::TwoMass { m1, m2 } => jensen_gap(&weights, &lam, m1) + jensen_gap(&weights, &lam, m2),
        };
        Expectation {
            p2,
            abs_kinetic,
            delta,
        }
    }
}

/// √(⟨p²⟩ + m²) − ⟨√(p² + m²)⟩ for a discrete distribution of p², written as
/// Σ w (s − t)²/(2s) so that it is nonnegative term by term.
pub fn jensen_gap(weights: &[f64], p2: &[f64], m: f64) -> f64 {
    let total: f64 = weights.iter().sum();
    let mean: f64 = weights.iter().zip(p2).map(|(w, v)| w * v.max(0.0)).sum::<f64>() / total;
    let s = (mean + m * m).sqrt();
    if s == 0.0 {
        return 0.0;
    }
    weights
        .iter()
        .zip(p2)
        .map(|(w, v)| {
            let t = (v.max(0.0) + m * m).sqrt();
            w * (s - t) * (s - t)
        })
        .sum::<f64>()
        / (2.0 * s * total)
}

fn symmetrize(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    for i in 0..n {
        for j in 0..i {
            let v = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
}

fn sorted(eig: SymmetricEigen<f64, nalgebra::Dyn>) -> (Vec<f64>, DMatrix<f64>) {
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

struct Fixed {
    levels: Vec<f64>,
    vectors: DMatrix<f64>,
}

fn solve_fixed(basis: &LaguerreBasis, h: &HamiltonianSpec, b: f64, count: usize) -> Fixed {
    let eig = SymmetricEigen::new(basis.hamiltonian(h, b));
    let (values, vectors) = sorted(eig);
    let cut = h.threshold().unwrap_or(f64::INFINITY);
    let levels = values.into_iter().take(count).take_while(|&e| e < cut).collect();
    Fixed { levels, vectors }
}

// Length minimizing kinetic(1/L) + V(L); golden section in ln L.
fn characteristic_length(h: &HamiltonianSpec) -> f64 {
    let g = |ln_l: f64| {
        let l = ln_l.exp();
        h.kinetic.eval(1.0 / (l * l)) + h.potential.eval(l)
    };
    let (mut lo, mut hi) = (-20.0f64, 20.0f64);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (g(x1), g(x2));
    while hi - lo > 1e-10 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = g(x2);
        }
    }
    (0.5 * (lo + hi)).exp()
}

fn tune_scale(h: &HamiltonianSpec, count: usize, opts: &OracleOptions) -> Result<f64> {
    let l0 = characteristic_length(h);
    let basis = LaguerreBasis::for_spec(opts.tune_size.max(count + 1), h)?;
    let n = opts.tune_points.max(2);
    let mut best = (f64::INFINITY, l0);
    for j in 0..n {
        let t = -opts.tune_decades + 2.0 * opts.tune_decades * j as f64 / (n - 1) as f64;
        let b = l0 * 10f64.powf(t);
        let eig = basis.hamiltonian(h, b).symmetric_eigenvalues();
        let mut v: Vec<f64> = eig.iter().copied().collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let s: f64 = v.iter().take(count).sum();
        if s < best.0 {
            best = (s, b);
        }
    }
    Ok(best.1)
}

/// Lowest `n_max + 1` levels in the sector `h.l`, doubling the basis until
/// |E(M) − E(M/2)| ≤ tol·max(1, |E|) for every reported level.
pub fn solve_radial(h: &HamiltonianSpec, n_max: usize, tol: f64) -> Result<OracleResult> {
    solve_radial_with(h, n_max, tol, &OracleOptions::default())
}

pub fn solve_radial_with(h: &HamiltonianSpec, n_max: usize, tol: f64, opts: &OracleOptions) -> Result<OracleResult> {
    h.kinetic.validate()?;
    h.potential.validate().or_else(|e| match (e, h.kinetic) {
        (Error::Unphysical, Kinetic::NonrelativisticNu { .. }) => Ok(()),
        (e, _) => Err(e),
    })?;
    if !(tol > 0.0) {
        return Err(domain("tol", tol));
    }
    if h.potential.coulomb_strength() >= h.kinetic.critical_coulomb() {
        return Err(Error::Unbound);
    }
    let count = n_max + 1;
    let b = match opts.scale {
        Some(b) if b > 0.0 => b,
        Some(b) => return Err(domain("scale", b)),
        None => tune_scale(h, count, opts)?,
    };
    let mut history: Vec<Vec<f64>> = Vec::new();
    let mut last_est = f64::NAN;
    let mut last_m = 0;
    for &m in opts.schedule.iter().filter(|&&m| m > count) {
        let basis = LaguerreBasis::for_spec(m, h)?;
        let fixed = solve_fixed(&basis, h, b, count);
        last_m = m;
        if let Some(prev) = history.last() {
            let n = fixed.levels.len();
            if n > 0 && prev.len() == n {
                let est: Vec<f64> = fixed.levels.iter().zip(prev).map(|(a, b)| (a - b).abs()).collect();
                let ok = est.iter().zip(&fixed.levels).all(|(d, e)| *d <= tol * e.abs().max(1.0));
                last_est = est.iter().fold(0.0, |a: f64, &d| a.max(d));
                if ok {
                    history.push(fixed.levels.clone());
                    let expectations = opts.expectations.then(|| {
                        (0..n)
                            .map(|j| basis.expectation(h.kinetic, b, fixed.vectors.column(j).as_slice()))
                            .collect()
                    });
                    return Ok(OracleResult {
                        levels: fixed.levels,
                        basis_size: m,
                        scale: b,
                        convergence_estimate: est,
                        expectations,
                        extrapolated: aitken(&history),
                    });
                }
            }
        }
        history.push(fixed.levels);
        if opts.extrapolate {
            let k = history.len();
            if let (true, Some(prev), Some(now)) = (k >= 4, aitken(&history[..k.saturating_sub(1)]), aitken(&history)) {
                let n = now.len();
                if n > 0 && prev.len() == n {
                    let est: Vec<f64> = now.iter().zip(&prev).map(|(a, b)| (a - b).abs()).collect();
                    if est.iter().zip(&now).all(|(d, e)| *d <= tol * e.abs().max(1.0)) {
                        let levels = history.pop().unwrap_or_default();
                        let expectations = opts.expectations.then(|| {
                            (0..levels.len())
                                .map(|j| basis.expectation(h.kinetic, b, fixed.vectors.column(j).as_slice()))
                                .collect()
                        });
                        return Ok(OracleResult {
                            levels,
                            basis_size: m,
                            scale: b,
                            convergence_estimate: est,
                            expectations,
                            extrapolated: Some(now),
                        });
                    }
                }
            }
        }
    }
    if history.last().is_some_and(|v| v.is_empty()) {
        return Err(Error::NoBoundState);
    }
    Err(Error::ConvergenceFailure {
        basis_size: last_m,
        estimate: last_est,
    })
}

fn aitken(history: &[Vec<f64>]) -> Option<Vec<f64>> {
    let [a, b, c] = match history {
        [.., a, b, c] => [a, b, c],
        _ => return None,
    };
    if a.len() != c.len() || b.len() != c.len() {
        return None;
    }
    Some(
        a.iter()
            .zip(b)
            .zip(c)
            .map(|((&x0, &x1), &x2)| {
                let (d1, d2) = (x1 - x0, x2 - x1);
                let den = d2 - d1;
                if d1 * d2 > 0.0 && den != 0.0 && d2.abs() < d1.abs() {
                    x2 - d2 * d2 / den
                } else {
                    x2
                }
            })
            .collect(),
    )
}

/// ⟨p²⟩ in the state (n, l).
pub fn expectation_p2(h: &HamiltonianSpec, state: QuantumNumbers, tol: f64) -> Result<f64> {
    state_expectation(h, state, tol).map(|e| e.p2)
}

/// δ = kinetic at ⟨p²⟩ minus ⟨kinetic⟩ in the state (n, l).
pub fn delta_gap(h: &HamiltonianSpec, state: QuantumNumbers, tol: f64) -> Result<f64> {
    if let Kinetic::NonrelativisticNu { nu } = h.kinetic {
        return Err(domain("nu (delta needs a square-root kinetic term)", nu));
    }
    state_expectation(h, state, tol).map(|e| e.delta)
}

fn state_expectation(h: &HamiltonianSpec, state: QuantumNumbers, tol: f64) -> Result<Expectation> {
    let r = solve_radial(&h.with_l(state.l), state.n as usize, tol)?;
    r.expectations
        .and_then(|e| e.get(state.n as usize).copied())
        .ok_or(Error::NoBoundState)
}
