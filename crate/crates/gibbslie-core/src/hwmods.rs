//! Highest-weight-module characters and trace-class tests: Kostant
//! partition counts by brute-force enumeration, Verma character sums
//! against the product formula, finite-dimensional su(2) characters, and
//! the oscillator spectrum series.
//!
//! Weight functionals use the same frozen sigma-convention as the root
//! module, so e^{i dpi(x)} acts on a weight-mu vector with the real
//! eigenvalue e^{sigma_mu(x)} and "trace class" means exponential decay
//! along the positive roots.

use crate::error::{Error, Result};
use crate::linprog::strict_feasible;
use crate::rational::{rvec_dot, to_f64, RVec, Rat};
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// Default tail tolerance for trace convergence certificates.
pub const EPS_TRACE: f64 = 1e-10;
/// Default truncation depth for character sums.
pub const DEFAULT_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub enum TraceValue {
    Finite(Complex64),
    Divergent,
}

#[derive(Debug, Clone)]
pub struct RatioCertificate {
    /// Largest per-step decay factor max_alpha e^{-sigma_alpha(x)}.
    pub ratio: f64,
    /// |last partial - previous partial|.
    pub last_step: f64,
}

#[derive(Debug, Clone)]
pub struct TraceResult {
    pub value: TraceValue,
    pub partial_sums: Vec<Complex64>,
    pub closed_form: Option<Complex64>,
    pub converged: bool,
    pub certificate: Option<RatioCertificate>,
}

impl TraceResult {
    pub fn finite_value(&self) -> Option<Complex64> {
        match self.value {
            TraceValue::Finite(v) => Some(v),
            TraceValue::Divergent => None,
        }
    }
}

/// Number of ways to write `target` as a nonnegative integer combination
/// of `roots`, by exhaustive enumeration. A strictly positive functional
/// on the roots (found by exact LP) bounds each coefficient.
pub fn kostant_partition(target: &[Rat], roots: &[RVec]) -> Result<u128> {
    if roots.len() > 12 {
        return Err(Error::BoundExceeded(format!(
            "kostant_partition supports at most 12 roots, got {}",
            roots.len()
        )));
    }
    if roots.is_empty() {
        return Ok(if target.iter().all(|x| x.is_zero()) { 1 } else { 0 });
    }
    let dim = roots[0].len();
    if target.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: target.len() });
    }
    let grading = strict_feasible(dim, roots, &[]).ok_or_else(|| {
        Error::Invalid("roots admit no positive grading functional".into())
    })?;
    let height = rvec_dot(&grading, target);
    if height.is_negative() {
        return Ok(0);
    }
    let max_height: Rat = crate::rational::rat(30)
        * roots.iter().map(|r| rvec_dot(&grading, r)).fold(Rat::zero(), |a, b| if b > a { b } else { a });
    if height > max_height {
        return Err(Error::BoundExceeded(
            "kostant_partition target height exceeds the depth bound".into(),
        ));
    }
    fn count(target: RVec, roots: &[RVec], grading: &RVec) -> u128 {
        if roots.len() == 1 {
            // target = n * root for integer n >= 0?
            let root = &roots[0];
            let pivot = root.iter().position(|x| !x.is_zero());
            let Some(p) = pivot else {
                return if target.iter().all(|x| x.is_zero()) { 1 } else { 0 };
            };
            let n = &target[p] / &root[p];
            if n.is_negative() || !n.is_integer() {
                return 0;
            }
            let fits = target
                .iter()
                .zip(root)
                .all(|(t, r)| t == &(&n * r));
            return if fits { 1 } else { 0 };
        }
        let root = &roots[0];
        let gr = rvec_dot(grading, root);
        let gt = rvec_dot(grading, &target);
        if gt.is_negative() {
            return 0;
        }
        let bound = (&gt / &gr).floor().to_integer();
        let mut total = 0u128;
        let mut n = num_bigint::BigInt::ZERO;
        while n <= bound {
            let reduced: RVec = target
                .iter()
                .zip(root)
                .map(|(t, r)| t - r * Rat::from_integer(n.clone()))
                .collect();
            total += count(reduced, &roots[1..], grading);
            n += 1;
        }
        total
    }
    Ok(count(target.to_vec(), roots, &grading))
}

/// Formal expansion of prod_alpha (1 - q^alpha)^{-1} up to the given
/// height: weight -> coefficient. The oracle counterpart of
/// [`kostant_partition`]; used to confirm the product formula with
/// exact integer equality.
pub fn partition_series(roots: &[RVec], grading: &RVec, max_height: &Rat) -> BTreeMap<RVec, u128> {
    let dim = roots.first().map_or(0, |r| r.len());
    let mut series: BTreeMap<RVec, u128> = BTreeMap::new();
    series.insert(vec![Rat::zero(); dim], 1);
    for root in roots {
        let gr = rvec_dot(grading, root);
        let mut next: BTreeMap<RVec, u128> = BTreeMap::new();
        for (w, c) in &series {
            let mut k = 0u32;
            loop {
                let shift: RVec = w
                    .iter()
                    .zip(root)
                    .map(|(x, r)| x + r * crate::rational::rat(k as i64))
                    .collect();
                let h = rvec_dot(grading, &shift);
                if &h > max_height {
                    break;
                }
                *next.entry(shift).or_insert(0) += c;
                k += 1;
                if gr.is_zero() {
                    break;
                }
            }
        }
        series = next;
    }
    series
}

/// Verma character sum at x: partial sums of
/// sum_{beta in N Delta^+, |beta| <= depth} e^{sigma_lambda(x) - sigma_beta(x)},
/// compared against the closed form
/// e^{s_lambda} prod_alpha (1 - e^{-s_alpha})^{-1}.
pub fn verma_trace(
    lambda: &[Rat],
    positive_roots: &[RVec],
    x_t: &[Rat],
    depth: usize,
    eps_trace: f64,
) -> Result<TraceResult> {
    let k = positive_roots.len();
    if k > 0 && (depth + 1).saturating_pow(k as u32) > 50_000_000 {
        return Err(Error::BoundExceeded(
            "verma_trace tuple enumeration too large; reduce depth or rank".into(),
        ));
    }
    let s_lambda = to_f64(&rvec_dot(lambda, x_t));
    let s: Vec<f64> = positive_roots.iter().map(|a| to_f64(&rvec_dot(a, x_t))).collect();
    let all_positive = s.iter().all(|v| *v > 0.0);

    // Partial sums by height: enumerate coefficient tuples grouped by
    // total height sum(n_alpha).
    let mut by_height = vec![0.0f64; depth + 1];
    fn walk(s: &[f64], depth: usize, idx: usize, used: usize, exponent: f64, by_height: &mut [f64]) {
        if idx == s.len() {
            by_height[used] += exponent.exp();
            return;
        }
        let mut e = exponent;
        for n in 0..=(depth - used) {
            if n > 0 {
                e -= s[idx];
            }
            walk(s, depth, idx + 1, used + n, e, by_height);
        }
    }
    walk(&s, depth, 0, 0, s_lambda, &mut by_height);
    let mut partial_sums = Vec::with_capacity(depth + 1);
    let mut acc = 0.0;
    for h in &by_height {
        acc += h;
        partial_sums.push(Complex64::new(acc, 0.0));
    }

    let ratio = s.iter().map(|v| (-v).exp()).fold(0.0, f64::max);
    let last_step = if partial_sums.len() >= 2 {
        (partial_sums[partial_sums.len() - 1] - partial_sums[partial_sums.len() - 2]).norm()
    } else {
        0.0
    };

    if !all_positive {
        return Ok(TraceResult {
            value: TraceValue::Divergent,
            partial_sums,
            closed_form: None,
            converged: false,
            certificate: Some(RatioCertificate { ratio, last_step }),
        });
    }
    let closed: f64 = s_lambda.exp() * s.iter().map(|v| 1.0 / (1.0 - (-v).exp())).product::<f64>();
    let converged = ratio < 1.0 && last_step <= eps_trace;
    Ok(TraceResult {
        value: TraceValue::Finite(*partial_sums.last().unwrap()),
        partial_sums,
        closed_form: Some(Complex64::new(closed, 0.0)),
        converged,
        certificate: Some(RatioCertificate { ratio, last_step }),
    })
}

/// Character of the spin-j representation at rotation angle theta:
/// sum_{m=-j}^{j} e^{i m theta} = sin((2j+1) theta/2) / sin(theta/2).
/// `twice_j` is 2j, at most 50.
pub fn su2_character_trace(twice_j: u32, theta: f64) -> Result<TraceResult> {
    if twice_j > 50 {
        return Err(Error::BoundExceeded("su2 character supports 2j <= 50".into()));
    }
    let mut partial_sums = Vec::new();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut m = -(twice_j as f64) / 2.0;
    for _ in 0..=twice_j {
        acc += Complex64::new(0.0, m * theta).exp();
        partial_sums.push(acc);
        m += 1.0;
    }
    let dim = twice_j as f64 + 1.0;
    let half = theta / 2.0;
    let closed = if half.sin().abs() < 1e-12 {
        // Removable singularity at theta = 0 (mod 2 pi): value is +-dim.
        Complex64::new(dim * (dim * half).cos() / half.cos().signum().max(-1.0), 0.0)
    } else {
        Complex64::new((dim * half).sin() / half.sin(), 0.0)
    };
    Ok(TraceResult {
        value: TraceValue::Finite(acc),
        partial_sums,
        closed_form: Some(closed),
        converged: true,
        certificate: None,
    })
}

/// Oscillator spectrum series sum_{n >= 0} e^{-beta lambda (n + 1/2)} with
/// closed form e^{-beta lambda / 2} / (1 - e^{-beta lambda}).
pub fn oscillator_trace(lambda: f64, beta: f64, depth: usize, eps_trace: f64) -> TraceResult {
    let bl = beta * lambda;
    if bl <= 0.0 {
        return TraceResult {
            value: TraceValue::Divergent,
            partial_sums: vec![],
            closed_form: None,
            converged: false,
            certificate: Some(RatioCertificate { ratio: (-bl).exp(), last_step: f64::INFINITY }),
        };
    }
    let mut partial_sums = Vec::with_capacity(depth + 1);
    let mut acc = 0.0f64;
    for n in 0..=depth {
        acc += (-bl * (n as f64 + 0.5)).exp();
        partial_sums.push(Complex64::new(acc, 0.0));
    }
    let closed = (-bl / 2.0).exp() / (1.0 - (-bl).exp());
    let last_step = if partial_sums.len() >= 2 {
        (partial_sums[partial_sums.len() - 1] - partial_sums[partial_sums.len() - 2]).norm()
    } else {
        0.0
    };
    TraceResult {
        value: TraceValue::Finite(*partial_sums.last().unwrap()),
        partial_sums,
        closed_form: Some(Complex64::new(closed, 0.0)),
        converged: last_step <= eps_trace,
        certificate: Some(RatioCertificate { ratio: (-bl).exp(), last_step }),
    }
}

/// Weight-module families with closed-form multiplicity rules.
#[derive(Debug, Clone)]
pub enum ModuleFamily {
    /// Verma module over an abstract positive system: weights
    /// lambda - N Delta^+, multiplicities by Kostant partition.
    VermaGeneric { lambda: RVec, positive_roots: Vec<RVec> },
    /// Finite-dimensional spin-j module (2j stored).
    Su2Irrep { twice_j: u32 },
    /// Oscillator module over the two-dimensional Cartan (z, p^2+q^2) of
    /// the bundled symplectic example: weights lambda0 - n * alpha with
    /// alpha the positive Heisenberg root, multiplicity one.
    JacobiOscillator { lambda0: RVec, alpha: RVec },
}

#[derive(Debug, Clone)]
pub struct WeightModule {
    pub family: ModuleFamily,
    pub truncation_depth: usize,
}

impl WeightModule {
    pub fn sl2_verma(lambda_coeff: Rat, sigma_alpha: Rat, depth: usize) -> Self {
        WeightModule {
            family: ModuleFamily::VermaGeneric {
                lambda: vec![lambda_coeff],
                positive_roots: vec![vec![sigma_alpha]],
            },
            truncation_depth: depth,
        }
    }

    pub fn su2(twice_j: u32) -> Self {
        WeightModule { family: ModuleFamily::Su2Irrep { twice_j }, truncation_depth: 0 }
    }

    /// Oscillator family for the bundled symplectic algebra with central
    /// character lambda > 0: highest weight sigma = (-lambda, -1) over the
    /// t-basis (z, p2+q2), stepping down the positive Heisenberg root
    /// sigma = (0, 2).
    pub fn jacobi_oscillator(lambda: Rat, depth: usize) -> Self {
        WeightModule {
            family: ModuleFamily::JacobiOscillator {
                lambda0: vec![-lambda, crate::rational::rat(-1)],
                alpha: vec![Rat::zero(), crate::rational::rat(2)],
            },
            truncation_depth: depth,
        }
    }

    /// Exact convergence certificate for tr e^{i dpi(x)} at x given in
    /// t-coordinates: strict exponential decay along every stepping root.
    /// This is a certificate, not a truncation artifact: it does not
    /// depend on the depth.
    pub fn trace_class(&self, x_t: &[Rat]) -> bool {
        match &self.family {
            ModuleFamily::VermaGeneric { positive_roots, .. } => {
                positive_roots.iter().all(|a| rvec_dot(a, x_t).is_positive())
            }
            ModuleFamily::Su2Irrep { .. } => true,
            ModuleFamily::JacobiOscillator { alpha, .. } => rvec_dot(alpha, x_t).is_positive(),
        }
    }

    /// Numerical trace with partial sums and certificate.
    pub fn trace(&self, x_t: &[Rat], eps_trace: f64) -> Result<TraceResult> {
        match &self.family {
            ModuleFamily::VermaGeneric { lambda, positive_roots } => {
                verma_trace(lambda, positive_roots, x_t, self.truncation_depth, eps_trace)
            }
            ModuleFamily::Su2Irrep { twice_j } => {
                // theta is the sigma-value of x on the compact root line
                // normalized so the weights step by one.
                let theta = to_f64(&x_t[0]);
                su2_character_trace(*twice_j, theta)
            }
            ModuleFamily::JacobiOscillator { lambda0, alpha } => {
                let s0 = to_f64(&rvec_dot(lambda0, x_t));
                let step = to_f64(&rvec_dot(alpha, x_t));
                if step <= 0.0 {
                    return Ok(TraceResult {
                        value: TraceValue::Divergent,
                        partial_sums: vec![],
                        closed_form: None,
                        converged: false,
                        certificate: Some(RatioCertificate {
                            ratio: (-step).exp(),
                            last_step: f64::INFINITY,
                        }),
                    });
                }
                let mut partial_sums = Vec::with_capacity(self.truncation_depth + 1);
                let mut acc = 0.0;
                for n in 0..=self.truncation_depth {
                    acc += (s0 - step * n as f64).exp();
                    partial_sums.push(Complex64::new(acc, 0.0));
                }
                let closed = s0.exp() / (1.0 - (-step).exp());
                let last_step = if partial_sums.len() >= 2 {
                    (partial_sums[partial_sums.len() - 1] - partial_sums[partial_sums.len() - 2])
                        .norm()
                } else {
                    0.0
                };
                Ok(TraceResult {
                    value: TraceValue::Finite(*partial_sums.last().unwrap()),
                    partial_sums,
                    closed_form: Some(Complex64::new(closed, 0.0)),
                    converged: last_step <= eps_trace && step > 0.0,
                    certificate: Some(RatioCertificate { ratio: (-step).exp(), last_step }),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn kostant_sl2() {
        let alpha = vec![vec![rat(2)]];
        for k in 0..10i64 {
            let target = vec![rat(2 * k)];
            assert_eq!(kostant_partition(&target, &alpha).unwrap(), 1);
        }
        // Non-multiples have no decomposition.
        assert_eq!(kostant_partition(&[rat(3)], &alpha).unwrap(), 0);
        assert_eq!(kostant_partition(&[rat(-2)], &alpha).unwrap(), 0);
    }

    #[test]
    fn kostant_rank2_toy() {
        // Delta+ = {a, b, a+b} in the plane.
        let roots = vec![
            vec![rat(1), rat(0)],
            vec![rat(0), rat(1)],
            vec![rat(1), rat(1)],
        ];
        assert_eq!(kostant_partition(&[rat(0), rat(0)], &roots).unwrap(), 1);
        // a + b = (a) + (b) or (a+b).
        assert_eq!(kostant_partition(&[rat(1), rat(1)], &roots).unwrap(), 2);
        // 2a + b: (a,a,b) or (a, a+b).
        assert_eq!(kostant_partition(&[rat(2), rat(1)], &roots).unwrap(), 2);
        // 2a + 2b: {a,a,b,b}, {a,b,a+b}, {a+b,a+b}.
        assert_eq!(kostant_partition(&[rat(2), rat(2)], &roots).unwrap(), 3);
    }

    #[test]
    fn product_formula_matches_partition_counts() {
        let roots = vec![
            vec![rat(1), rat(0)],
            vec![rat(0), rat(1)],
            vec![rat(1), rat(1)],
        ];
        let grading = vec![rat(1), rat(1)];
        let series = partition_series(&roots, &grading, &rat(10));
        for (w, c) in &series {
            assert_eq!(kostant_partition(w, &roots).unwrap(), *c as u128, "weight {w:?}");
        }
        // Spot-check diagonal growth: P(k(a+b)) = k+1 via {a+b} x j + pairs.
        assert_eq!(series.get(&vec![rat(3), rat(3)]).copied(), Some(4));
    }

    #[test]
    fn verma_sl2_geometric() {
        // lambda = -m on u, positive root sigma = 2, x = theta * u.
        for (m, theta) in [(3i64, 0.7f64), (1, 0.3), (2, 1.5)] {
            let module = WeightModule::sl2_verma(rat(-m), rat(2), 200);
            let x = vec![crate::rational::approximate(theta, 1 << 20).unwrap()];
            let t = module.trace(&x, EPS_TRACE).unwrap();
            let theta_snapped = to_f64(&x[0]);
            let expected = (-(m as f64) * theta_snapped).exp() / (1.0 - (-2.0 * theta_snapped).exp());
            let got = t.finite_value().unwrap().re;
            assert!((got - expected).abs() < 1e-10, "m={m} theta={theta}: {got} vs {expected}");
            assert!(t.converged);
            let closed = t.closed_form.unwrap().re;
            assert!((closed - expected).abs() < 1e-12);
        }
        // Boundary theta = 0: divergent.
        let module = WeightModule::sl2_verma(rat(-3), rat(2), 50);
        let t = module.trace(&[rat(0)], EPS_TRACE).unwrap();
        assert_eq!(t.value, TraceValue::Divergent);
        assert!(!module.trace_class(&[rat(0)]));
        assert!(module.trace_class(&[ratio(1, 2)]));
        assert!(!module.trace_class(&[rat(-1)]));
    }

    #[test]
    fn su2_characters() {
        // j = 1/2, theta = pi: 2 cos(pi/2) = 0.
        let t = su2_character_trace(1, std::f64::consts::PI).unwrap();
        assert!(t.finite_value().unwrap().norm() < 1e-12);
        // theta = 0: dimension.
        let t = su2_character_trace(5, 0.0).unwrap();
        assert!((t.finite_value().unwrap().re - 6.0).abs() < 1e-12);
        // j = 1, theta = pi/2: 1 + 2 cos(pi/2) = 1.
        let t = su2_character_trace(2, std::f64::consts::FRAC_PI_2).unwrap();
        assert!((t.finite_value().unwrap().re - 1.0).abs() < 1e-12);
        // Closed form matches the sum away from the singularity.
        for theta in [0.3, 0.7, 2.1] {
            let t = su2_character_trace(7, theta).unwrap();
            assert!((t.finite_value().unwrap() - t.closed_form.unwrap()).norm() < 1e-10);
        }
        // Conjugate symmetry.
        let plus = su2_character_trace(3, 0.8).unwrap().finite_value().unwrap();
        let minus = su2_character_trace(3, -0.8).unwrap().finite_value().unwrap();
        assert!((plus - minus.conj()).norm() < 1e-12);
    }

    #[test]
    fn oscillator_series() {
        let t = oscillator_trace(1.0, 1.0, 200, EPS_TRACE);
        let expected = (-0.5f64).exp() / (1.0 - (-1.0f64).exp());
        assert!((t.finite_value().unwrap().re - expected).abs() < 1e-12);
        assert!((expected - 0.9595).abs() < 1e-4);
        // Ground-state dominance at beta lambda = 50.
        let t = oscillator_trace(5.0, 10.0, 50, EPS_TRACE);
        let v = t.finite_value().unwrap().re;
        assert!(((v - (-25.0f64).exp()) / (-25.0f64).exp()).abs() < 1e-12);
        // Divergent domain.
        let t = oscillator_trace(1.0, -1.0, 10, EPS_TRACE);
        assert_eq!(t.value, TraceValue::Divergent);
    }

    #[test]
    fn oscillator_module_weights() {
        // x = s z + c k in t-coords (z, k): trace = e^{-lambda s - c} / (1 - e^{-2c}).
        let module = WeightModule::jacobi_oscillator(rat(1), 400);
        let x = vec![rat(1), rat(1)];
        let t = module.trace(&x, EPS_TRACE).unwrap();
        let expected = (-2.0f64).exp() / (1.0 - (-2.0f64).exp());
        assert!((t.finite_value().unwrap().re - expected).abs() < 1e-12);
        assert!(module.trace_class(&x));
        // Wrong orientation: divergent.
        let y = vec![rat(1), rat(-1)];
        assert!(!module.trace_class(&y));
        assert_eq!(module.trace(&y, EPS_TRACE).unwrap().value, TraceValue::Divergent);
        // The s-direction does not affect convergence.
        assert!(module.trace_class(&[rat(-10), rat(1)]));
    }

    #[test]
    fn trace_class_is_depth_independent() {
        for depth in [5, 50, 500] {
            let module = WeightModule::sl2_verma(rat(-2), rat(2), depth);
            assert!(module.trace_class(&[ratio(7, 10)]));
            assert!(!module.trace_class(&[ratio(-7, 10)]));
        }
    }

    #[test]
    fn monotone_partial_sums() {
        let module = WeightModule::sl2_verma(rat(-1), rat(2), 100);
        let t = module.trace(&[ratio(1, 2)], EPS_TRACE).unwrap();
        let mut prev = 0.0;
        for p in &t.partial_sums {
            assert!(p.re >= prev - 1e-15);
            prev = p.re;
        }
        let closed = t.closed_form.unwrap().re;
        assert!(prev <= closed + 1e-12);
    }
}
