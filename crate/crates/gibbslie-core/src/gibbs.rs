//! Truncated matrix representations, Gibbs state functionals, two-point
//! functions on the analyticity strip, and numerical KMS verification.
//!
//! Representations are built in the weight (number) basis with a hard
//! cutoff; generator matrices are exactly skew-hermitian, so group words
//! are exact unitaries, and the Hamiltonian is the exact diagonal
//! restriction of the untruncated operator. Truncation error shows up
//! only as commutator leakage on the last basis vectors, which is
//! quantified and reported, never silently ignored.

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::rational::to_f64;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

/// Interior commutator-residual tolerance for truncated representations.
pub const EPS_REP: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum RepFamily {
    /// Spin-j irreducible representation (2j stored); exact at any size.
    Su2 { twice_j: u32 },
    /// Heisenberg + metaplectic action on the Fock basis with central
    /// character lambda; exposes all six quadratic-algebra generators.
    Oscillator { lambda: f64 },
    /// The same Fock construction exposing only {p, q, z}.
    Heisenberg { lambda: f64 },
    /// The metaplectic quadratics alone, in the compact basis
    /// {u, v, w} = {(p2+q2)/2, (p2-q2)/2, -pq}; lowest weight family.
    Sl2Lowest { lambda: f64 },
}

impl RepFamily {
    pub fn parse(name: &str, lambda: f64, twice_j: u32) -> Result<RepFamily> {
        match name {
            "su2" => Ok(RepFamily::Su2 { twice_j }),
            "oscillator" => Ok(RepFamily::Oscillator { lambda }),
            "heisenberg" => Ok(RepFamily::Heisenberg { lambda }),
            "sl2" | "sl2_lowest" => Ok(RepFamily::Sl2Lowest { lambda }),
            other => Err(Error::UnknownFamily(other.into())),
        }
    }
}

/// A truncated unitary representation: skew-hermitian generator matrices
/// over a named basis, a diagonal Hamiltonian implementing the dynamics,
/// and truncation-leakage diagnostics.
#[derive(Debug, Clone)]
pub struct TruncatedRep {
    pub family: RepFamily,
    pub dim: usize,
    pub names: Vec<String>,
    pub generators: Vec<CMat>,
    /// Diagonal of H in the weight basis; H = -i dpi(X_dyn) for inner
    /// dynamics, or the weight-basis restriction of the implementing
    /// operator otherwise.
    pub hamiltonian: Vec<f64>,
    /// Coefficients of the dynamics generator over `names`, when the
    /// dynamics is inner for the exposed generator set.
    pub x_dyn: Option<Vec<f64>>,
    /// Max commutator residual with the last two basis vectors projected
    /// out. Should be at floating roundoff.
    pub interior_residual: f64,
    /// Max commutator residual on the full truncated space (the edge
    /// leakage caused by the cutoff).
    pub edge_leakage: f64,
}

fn annihilation(n: usize) -> CMat {
    let mut a = CMat::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    a
}

fn hermitian_quadratics(n: usize) -> (CMat, CMat, CMat, CMat, CMat) {
    let a = annihilation(n);
    let ad = a.adjoint();
    let sqrt2 = 2f64.sqrt();
    let q = (&a + &ad) / Complex64::new(sqrt2, 0.0);
    let p = (&a - &ad) * Complex64::new(0.0, -1.0 / sqrt2);
    let p2 = &p * &p;
    let q2 = &q * &q;
    let pq = (&p * &q + &q * &p) * Complex64::new(0.5, 0.0);
    (p, q, p2, q2, pq)
}

/// Commutator residuals of the generator matrices against the structure
/// constants of `algebra`; returns (interior, full).
fn commutator_residuals(algebra: &LieAlgebra, gens: &[CMat], dim: usize) -> (f64, f64) {
    let mut interior = 0.0f64;
    let mut full = 0.0f64;
    let cut = dim.saturating_sub(2);
    for i in 0..algebra.dim {
        for j in (i + 1)..algebra.dim {
            let mut expected = CMat::zeros(dim, dim);
            for k in 0..algebra.dim {
                let c = to_f64(algebra.structure_constant(i, j, k));
                if c != 0.0 {
                    expected += &gens[k] * Complex64::new(c, 0.0);
                }
            }
            let r = &gens[i] * &gens[j] - &gens[j] * &gens[i] - expected;
            full = full.max(r.norm());
            let mut r_int = r.clone();
            for t in cut..dim {
                for s in 0..dim {
                    r_int[(t, s)] = Complex64::new(0.0, 0.0);
                    r_int[(s, t)] = Complex64::new(0.0, 0.0);
                }
            }
            interior = interior.max(r_int.norm());
        }
    }
    (interior, full)
}

/// su(2) structure constants for the residual check of the quadratic
/// compact basis {u, v, w}: [u,v] = 2w, [u,w] = -2v, [v,w] = -2u.
fn sl2_compact_basis_algebra() -> LieAlgebra {
    use crate::rational::rat;
    LieAlgebra::from_sparse(
        vec!["u".into(), "v".into(), "w".into()],
        &[
            (0, 1, vec![(2, rat(2))]),
            (0, 2, vec![(1, rat(-2))]),
            (1, 2, vec![(0, rat(-2))]),
        ],
    )
    .unwrap()
}

/// Build a truncated representation of the requested family at dimension
/// `n` (ignored for su2, whose dimension is 2j + 1).
pub fn build_truncated_rep(family: RepFamily, n: usize) -> Result<TruncatedRep> {
    match family {
        RepFamily::Su2 { twice_j } => {
            let dim = twice_j as usize + 1;
            let j = twice_j as f64 / 2.0;
            // Basis ordered by descending weight m = j, j-1, ..., -j.
            let mut jz = CMat::zeros(dim, dim);
            let mut jp = CMat::zeros(dim, dim);
            for (idx, _) in (0..dim).enumerate() {
                let m = j - idx as f64;
                jz[(idx, idx)] = Complex64::new(m, 0.0);
                if idx + 1 < dim {
                    // J+ |j, m-1> = sqrt((j - (m-1))(j + m)) |j, m>
                    let m1 = m - 1.0;
                    jp[(idx, idx + 1)] = Complex64::new(((j - m1) * (j + m1 + 1.0)).sqrt(), 0.0);
                }
            }
            let jm = jp.adjoint();
            let jx = (&jp + &jm) * Complex64::new(0.5, 0.0);
            let jy = (&jp - &jm) * Complex64::new(0.0, -0.5);
            let minus_i = Complex64::new(0.0, -1.0);
            let generators = vec![&jx * minus_i, &jy * minus_i, &jz * minus_i];
            let (interior, full) =
                commutator_residuals(&crate::algebra::su2(), &generators, dim);
            // Dynamics X_dyn = x3: H = -i dpi(x3) = -Jz, diagonal.
            let hamiltonian: Vec<f64> = (0..dim).map(|idx| -(j - idx as f64)).collect();
            Ok(TruncatedRep {
                family: RepFamily::Su2 { twice_j },
                dim,
                names: vec!["x1".into(), "x2".into(), "x3".into()],
                generators,
                hamiltonian,
                x_dyn: Some(vec![0.0, 0.0, 1.0]),
                interior_residual: interior,
                edge_leakage: full,
            })
        }
        RepFamily::Oscillator { lambda } | RepFamily::Heisenberg { lambda } => {
            if n < 2 {
                return Err(Error::Invalid("truncation dimension must be at least 2".into()));
            }
            if lambda <= 0.0 {
                return Err(Error::Invalid("central character lambda must be positive".into()));
            }
            let (p, q, p2, q2, pq) = hermitian_quadratics(n);
            let sl = lambda.sqrt();
            let i = Complex64::new(0.0, 1.0);
            let id = CMat::identity(n, n);
            // dpi(f) = i Op(f); Op(z) = lambda, Op(p) = sqrt(lambda) P, ...
            let full_gens = vec![
                &id * (i * lambda),
                &p * (i * sl),
                &q * (i * sl),
                &p2 * i,
                &q2 * i,
                &pq * i,
            ];
            let heis = matches!(family, RepFamily::Heisenberg { .. });
            let hamiltonian: Vec<f64> = (0..n).map(|k| lambda * (k as f64 + 0.5)).collect();
            if heis {
                let generators =
                    vec![full_gens[1].clone(), full_gens[2].clone(), full_gens[0].clone()];
                let (interior, full) =
                    commutator_residuals(&crate::algebra::heisenberg3(), &generators, n);
                Ok(TruncatedRep {
                    family,
                    dim: n,
                    names: vec!["p".into(), "q".into(), "z".into()],
                    generators,
                    hamiltonian,
                    // The oscillator dynamics is not inner for h3.
                    x_dyn: None,
                    interior_residual: interior,
                    edge_leakage: full,
                })
            } else {
                let (interior, full) =
                    commutator_residuals(&crate::algebra::jacobi_hsp2(), &full_gens, n);
                // X_dyn = (lambda/2)(p2 + q2): H = lambda (N + 1/2).
                Ok(TruncatedRep {
                    family,
                    dim: n,
                    names: vec![
                        "z".into(),
                        "p".into(),
                        "q".into(),
                        "p2".into(),
                        "q2".into(),
                        "pq".into(),
                    ],
                    generators: full_gens,
                    hamiltonian,
                    x_dyn: Some(vec![0.0, 0.0, 0.0, lambda / 2.0, lambda / 2.0, 0.0]),
                    interior_residual: interior,
                    edge_leakage: full,
                })
            }
        }
        RepFamily::Sl2Lowest { lambda } => {
            if n < 2 {
                return Err(Error::Invalid("truncation dimension must be at least 2".into()));
            }
            if lambda <= 0.0 {
                return Err(Error::Invalid("frequency lambda must be positive".into()));
            }
            let (_, _, p2, q2, pq) = hermitian_quadratics(n);
            let i = Complex64::new(0.0, 1.0);
            let u = (&p2 + &q2) * Complex64::new(0.5, 0.0);
            let v = (&p2 - &q2) * Complex64::new(0.5, 0.0);
            let w = &pq * Complex64::new(-1.0, 0.0);
            let generators = vec![&u * i, &v * i, &w * i];
            let (interior, full) =
                commutator_residuals(&sl2_compact_basis_algebra(), &generators, n);
            let hamiltonian: Vec<f64> = (0..n).map(|k| lambda * (k as f64 + 0.5)).collect();
            Ok(TruncatedRep {
                family: RepFamily::Sl2Lowest { lambda },
                dim: n,
                names: vec!["u".into(), "v".into(), "w".into()],
                generators,
                hamiltonian,
                x_dyn: Some(vec![lambda, 0.0, 0.0]),
                interior_residual: interior,
                edge_leakage: full,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Group words
// ---------------------------------------------------------------------------

/// One factor exp(t * dpi(Y)) with Y a named linear combination of the
/// representation's generators.
#[derive(Debug, Clone, PartialEq)]
pub struct WordStep {
    pub coeffs: Vec<(String, f64)>,
    pub time: f64,
}

/// A group element reached through the exponential: the product of the
/// step factors, left to right. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GroupWord {
    pub steps: Vec<WordStep>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord { steps: vec![] }
    }

    pub fn single(name: &str, time: f64) -> Self {
        GroupWord {
            steps: vec![WordStep { coeffs: vec![(name.into(), 1.0)], time }],
        }
    }

    pub fn then(mut self, name: &str, time: f64) -> Self {
        self.steps.push(WordStep { coeffs: vec![(name.into(), 1.0)], time });
        self
    }

    pub fn combination(coeffs: &[(&str, f64)], time: f64) -> Self {
        GroupWord {
            steps: vec![WordStep {
                coeffs: coeffs.iter().map(|(n, c)| ((*n).into(), *c)).collect(),
                time,
            }],
        }
    }

    /// The inverse word: reversed steps with negated times.
    pub fn inverse(&self) -> Self {
        GroupWord {
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| WordStep { coeffs: s.coeffs.clone(), time: -s.time })
                .collect(),
        }
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        GroupWord { steps }
    }

    /// Parse "p:0.5,q:0.3" into successive single-generator steps.
    pub fn parse(text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for part in text.split(',').filter(|s| !s.trim().is_empty()) {
            let (name, t) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("word step `{part}` is not name:time")))?;
            let time: f64 = t
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad time `{t}` in word")))?;
            steps.push(WordStep { coeffs: vec![(name.trim().into(), 1.0)], time });
        }
        Ok(GroupWord { steps })
    }
}

fn exp_skew_hermitian(a: &CMat) -> CMat {
    // a is skew-hermitian: a = i m with m hermitian; exp(a) = U e^{i d} U^H.
    let m = a * Complex64::new(0.0, -1.0);
    let eig = SymmetricEigen::new(m);
    let n = a.nrows();
    let mut diag = CMat::zeros(n, n);
    for k in 0..n {
        diag[(k, k)] = (Complex64::new(0.0, 1.0) * eig.eigenvalues[k]).exp();
    }
    &eig.eigenvectors * diag * eig.eigenvectors.adjoint()
}

// ---------------------------------------------------------------------------
// Gibbs states
// ---------------------------------------------------------------------------

/// The normalized thermal functional word -> tr(M(word) e^{-beta H}) / Z
/// over one truncated representation. The spectrum is shifted before
/// exponentiation so that beta * ||H|| up to ~700 stays in range.
#[derive(Debug, Clone)]
pub struct GibbsStateVal {
    pub rep: TruncatedRep,
    pub beta: f64,
    /// Shifted Hamiltonian diagonal h' = h - min h (all >= 0).
    shifted: Vec<f64>,
    /// Boltzmann weights e^{-beta h'}.
    weights: Vec<f64>,
    /// Partition value sum of weights (for the shifted Hamiltonian).
    pub z: f64,
    /// Extra diagonal used only in evaluation weights by the negative
    /// control; empty for honest states.
    perturbation: Vec<f64>,
}

impl GibbsStateVal {
    pub fn new(rep: TruncatedRep, beta: f64) -> Result<GibbsStateVal> {
        if beta <= 0.0 || !beta.is_finite() {
            return Err(Error::Invalid("beta must be positive and finite".into()));
        }
        let min = rep.hamiltonian.iter().cloned().fold(f64::INFINITY, f64::min);
        let shifted: Vec<f64> = rep.hamiltonian.iter().map(|h| h - min).collect();
        let weights: Vec<f64> = shifted.iter().map(|h| (-beta * h).exp()).collect();
        let z = weights.iter().sum();
        Ok(GibbsStateVal { rep, beta, shifted, weights, z, perturbation: vec![] })
    }

    /// Negative control: perturb the evaluation weights without touching
    /// the dynamics, destroying the KMS property.
    pub fn perturbed(mut self, noise: &[f64]) -> GibbsStateVal {
        let mut pert = vec![0.0; self.shifted.len()];
        for (p, n) in pert.iter_mut().zip(noise) {
            *p = *n;
        }
        self.weights = self
            .shifted
            .iter()
            .zip(&pert)
            .map(|(h, n)| (-self.beta * (h + n)).exp())
            .collect();
        self.z = self.weights.iter().sum();
        self.perturbation = pert;
        self
    }

    fn generator_combination(&self, step: &WordStep) -> Result<CMat> {
        let n = self.rep.dim;
        let mut acc = CMat::zeros(n, n);
        for (name, c) in &step.coeffs {
            let idx = self
                .rep
                .names
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
            acc += &self.rep.generators[idx] * Complex64::new(*c, 0.0);
        }
        Ok(acc)
    }

    /// Unitary matrix of a group word.
    pub fn word_matrix(&self, word: &GroupWord) -> Result<CMat> {
        let n = self.rep.dim;
        let mut m = CMat::identity(n, n);
        for step in &word.steps {
            let a = self.generator_combination(step)? * Complex64::new(step.time, 0.0);
            m *= exp_skew_hermitian(&a);
        }
        Ok(m)
    }

    /// State value on a word.
    pub fn evaluate(&self, word: &GroupWord) -> Result<Complex64> {
        let m = self.word_matrix(word)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..self.rep.dim {
            acc += m[(j, j)] * self.weights[j];
        }
        Ok(acc / self.z)
    }

    /// Value of the analytically continued two-point function
    /// F_{x,y}(z) = phi(x alpha_z(y)) for 0 <= Im z <= beta. The
    /// continuation is exact in finite dimension; every exponential in
    /// the double sum has modulus at most one after the spectral shift.
    pub fn two_point(&self, x: &GroupWord, y: &GroupWord, z: Complex64) -> Result<Complex64> {
        let mx = self.word_matrix(x)?;
        let my = self.word_matrix(y)?;
        self.two_point_matrices(&mx, &my, z)
    }

    /// The same with precomputed word matrices (grid sweeps reuse them).
    pub fn two_point_matrices(&self, mx: &CMat, my: &CMat, z: Complex64) -> Result<Complex64> {
        if z.im < -1e-12 || z.im > self.beta + 1e-12 {
            return Err(Error::OutsideStrip(z.im));
        }
        let n = self.rep.dim;
        let i = Complex64::new(0.0, 1.0);
        // tr(Mx e^{izH} My e^{-izH} e^{-beta H})
        // = sum_{j,k} (Mx)_{jk} e^{iz h_k} (My)_{kj} e^{-(iz + beta) h_j};
        // each exponential has modulus <= 1 inside the strip.
        let row_weight: Vec<Complex64> = (0..n)
            .map(|j| {
                let pert = if self.perturbation.is_empty() { 0.0 } else { self.perturbation[j] };
                ((-(i * z) - Complex64::new(self.beta, 0.0)) * self.shifted[j]
                    - Complex64::new(self.beta * pert, 0.0))
                .exp()
            })
            .collect();
        let col_weight: Vec<Complex64> =
            (0..n).map(|k| (i * z * self.shifted[k]).exp()).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let mut inner = Complex64::new(0.0, 0.0);
            for k in 0..n {
                inner += mx[(j, k)] * col_weight[k] * my[(k, j)];
            }
            acc += inner * row_weight[j];
        }
        Ok(acc / self.z)
    }

    /// phi(alpha_t(y) x), the reflection comparison value.
    pub fn reflected(&self, x: &GroupWord, y: &GroupWord, t: f64) -> Result<Complex64> {
        let mx = self.word_matrix(x)?;
        let my = self.word_matrix(y)?;
        Ok(self.reflected_matrices(&mx, &my, t))
    }

    /// The same with precomputed word matrices.
    pub fn reflected_matrices(&self, mx: &CMat, my: &CMat, t: f64) -> Complex64 {
        let n = self.rep.dim;
        let i = Complex64::new(0.0, 1.0);
        // tr(e^{itH} My e^{-itH} Mx e^{-beta H})
        // = sum_{j,k} e^{it h_j} (My)_{jk} e^{-it h_k} (Mx e^{-beta H})_{kj}
        let phase: Vec<Complex64> = (0..n).map(|j| (i * t * self.shifted[j]).exp()).collect();
        let boltz: Vec<f64> = (0..n)
            .map(|j| {
                let pert = if self.perturbation.is_empty() { 0.0 } else { self.perturbation[j] };
                (-self.beta * (self.shifted[j] + pert)).exp()
            })
            .collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let mut inner = Complex64::new(0.0, 0.0);
            for k in 0..n {
                inner += my[(j, k)] * phase[k].conj() * mx[(k, j)];
            }
            acc += inner * phase[j] * boltz[j];
        }
        acc / self.z
    }

    /// phi(alpha_t(g)): the evolved word has matrix e^{itH} Mg e^{-itH}.
    /// With H diagonal the conjugation fixes the diagonal entries, so the
    /// invariance residual of an honest Gibbs state is pure roundoff.
    pub fn evaluate_evolved(&self, g: &GroupWord, t: f64) -> Result<Complex64> {
        let mg = self.word_matrix(g)?;
        let n = self.rep.dim;
        let i = Complex64::new(0.0, 1.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let pert = if self.perturbation.is_empty() { 0.0 } else { self.perturbation[j] };
            let wj = (-self.beta * (self.shifted[j] + pert)).exp();
            let diag = (i * t * self.shifted[j]).exp() * mg[(j, j)]
                * (i * (-t) * self.shifted[j]).exp();
            acc += diag * wj;
        }
        Ok(acc / self.z)
    }
}

/// A convex combination of Gibbs states over a common dynamics. A single
/// component with weight one is an extremal (pure Gibbs) state.
#[derive(Debug, Clone)]
pub struct GibbsEnsemble {
    pub components: Vec<(f64, GibbsStateVal)>,
}

impl GibbsEnsemble {
    pub fn pure(state: GibbsStateVal) -> Self {
        GibbsEnsemble { components: vec![(1.0, state)] }
    }

    /// Convex mixture; weights must be nonnegative and sum to one, and
    /// the components must share beta, generator names, and dynamics.
    pub fn mixture(states: Vec<GibbsStateVal>, weights: &[f64]) -> Result<Self> {
        if states.is_empty() || weights.len() != states.len() {
            return Err(Error::BadWeights);
        }
        if weights.iter().any(|w| *w < -1e-12)
            || (weights.iter().sum::<f64>() - 1.0).abs() > 1e-9
        {
            return Err(Error::BadWeights);
        }
        let first = &states[0];
        for s in &states[1..] {
            if (s.beta - first.beta).abs() > 1e-12
                || s.rep.names != first.rep.names
                || s.rep.x_dyn != first.rep.x_dyn
            {
                return Err(Error::MismatchedDynamics);
            }
        }
        Ok(GibbsEnsemble {
            components: weights.iter().cloned().zip(states).collect(),
        })
    }

    pub fn beta(&self) -> f64 {
        self.components[0].1.beta
    }

    pub fn evaluate(&self, word: &GroupWord) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, s) in &self.components {
            acc += s.evaluate(word)? * *w;
        }
        Ok(acc)
    }

    pub fn two_point(&self, x: &GroupWord, y: &GroupWord, z: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, s) in &self.components {
            acc += s.two_point(x, y, z)? * *w;
        }
        Ok(acc)
    }

    fn reflected(&self, x: &GroupWord, y: &GroupWord, t: f64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, s) in &self.components {
            acc += s.reflected(x, y, t)? * *w;
        }
        Ok(acc)
    }

    fn evaluate_evolved(&self, g: &GroupWord, t: f64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, s) in &self.components {
            acc += s.evaluate_evolved(g, t)? * *w;
        }
        Ok(acc)
    }
}

/// The default verification grid on the real line: [-5, 5], 101 points.
pub fn default_t_grid() -> Vec<f64> {
    (0..101).map(|k| -5.0 + 0.1 * k as f64).collect()
}

/// Max over the grid of |F_{x,y}(t + i beta) - phi(alpha_t(y) x)|.
/// Word matrices are diagonalized once and reused across the grid.
pub fn kms_reflection_check(
    state: &GibbsEnsemble,
    x: &GroupWord,
    y: &GroupWord,
    t_grid: &[f64],
) -> Result<f64> {
    let beta = state.beta();
    let prepared: Vec<(f64, &GibbsStateVal, CMat, CMat)> = state
        .components
        .iter()
        .map(|(w, s)| Ok((*w, s, s.word_matrix(x)?, s.word_matrix(y)?)))
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for &t in t_grid {
        let mut upper = Complex64::new(0.0, 0.0);
        let mut reflected = Complex64::new(0.0, 0.0);
        for (w, s, mx, my) in &prepared {
            upper += s.two_point_matrices(mx, my, Complex64::new(t, beta))? * *w;
            reflected += s.reflected_matrices(mx, my, t) * *w;
        }
        worst = worst.max((upper - reflected).norm());
    }
    Ok(worst)
}

/// Max over the grid of |phi(alpha_t(g)) - phi(g)|.
pub fn invariance_check(state: &GibbsEnsemble, g: &GroupWord, t_grid: &[f64]) -> Result<f64> {
    let prepared: Vec<(f64, &GibbsStateVal, CMat)> = state
        .components
        .iter()
        .map(|(w, s)| Ok((*w, s, s.word_matrix(g)?)))
        .collect::<Result<_>>()?;
    let mut base = Complex64::new(0.0, 0.0);
    for (w, s, mg) in &prepared {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..s.rep.dim {
            acc += mg[(j, j)] * s.weights[j];
        }
        base += acc / s.z * *w;
    }
    let mut worst = 0.0f64;
    for &t in t_grid {
        let mut evolved = Complex64::new(0.0, 0.0);
        for (w, s, mg) in &prepared {
            let i = Complex64::new(0.0, 1.0);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..s.rep.dim {
                let phase = (i * t * s.shifted[j]).exp();
                acc += phase * mg[(j, j)] * phase.conj() * s.weights[j];
            }
            evolved += acc / s.z * *w;
        }
        worst = worst.max((evolved - base).norm());
    }
    Ok(worst)
}

/// Min eigenvalue of the Gram matrix G_ab = phi(w_a^{-1} w_b). Each word
/// matrix is built once; inverses are adjoints since the words are exact
/// unitaries, so G_ab = (1/Z) sum_{j,k} conj((M_a)_{kj}) (M_b)_{kj} w_j.
pub fn positive_definiteness_check(state: &GibbsEnsemble, words: &[GroupWord]) -> Result<f64> {
    let n = words.len();
    let mut gram = CMat::zeros(n, n);
    for (weight, s) in &state.components {
        let mats: Vec<CMat> =
            words.iter().map(|w| s.word_matrix(w)).collect::<Result<_>>()?;
        for a in 0..n {
            for b in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..s.rep.dim {
                    let mut inner = Complex64::new(0.0, 0.0);
                    for k in 0..s.rep.dim {
                        inner += mats[a][(k, j)].conj() * mats[b][(k, j)];
                    }
                    acc += inner * s.weights[j];
                }
                gram[(a, b)] += acc / s.z * *weight;
            }
        }
    }
    let herm = (&gram + gram.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);
    Ok(eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min))
}

// ---------------------------------------------------------------------------
// Displacement matrix elements (closed form)
// ---------------------------------------------------------------------------

/// Associated Laguerre polynomial L_n^{(k)}(x) by the three-term
/// recurrence.
pub fn laguerre(n: usize, k: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + k - x;
    for m in 1..n {
        let next = ((2.0 * m as f64 + 1.0 + k - x) * cur - (m as f64 + k) * prev) / (m as f64 + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Fock matrix element <m| exp(alpha a^dag - conj(alpha) a) |n> of the
/// displacement operator.
pub fn displacement_element(alpha: Complex64, m: usize, n: usize) -> Complex64 {
    let x = alpha.norm_sqr();
    let gauss = (-x / 2.0).exp();
    if m >= n {
        let d = m - n;
        // sqrt(n!/m!) = 1 / sqrt((n+1)(n+2)...(m))
        let mut ratio = 1.0;
        for t in (n + 1)..=m {
            ratio /= t as f64;
        }
        let ratio = ratio.sqrt();
        alpha.powu(d as u32) * ratio * gauss * laguerre(n, d as f64, x)
    } else {
        let d = n - m;
        let mut ratio = 1.0;
        for t in (m + 1)..=n {
            ratio /= t as f64;
        }
        let ratio = ratio.sqrt();
        (-alpha.conj()).powu(d as u32) * ratio * gauss * laguerre(m, d as f64, x)
    }
}

/// The displacement parameter reached by the word
/// exp(a dpi(p) + b dpi(q)) in the Fock construction with central
/// character lambda: alpha = sqrt(lambda) (-a + i b) / sqrt(2).
pub fn displacement_alpha(lambda: f64, a: f64, b: f64) -> Complex64 {
    Complex64::new(-a, b) * (lambda / 2.0).sqrt()
}
