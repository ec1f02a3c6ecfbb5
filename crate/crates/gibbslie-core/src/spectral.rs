//! Ellipticity and compact-embedding tests.
//!
//! Spectral data (eigenvalues, generalized eigenspaces) is computed in
//! floating point; every subspace that feeds back into exact structural
//! computations is re-snapped to rationals and re-verified exactly.

use crate::algebra::{Element, LieAlgebra, Subspace};
use crate::error::{Error, Result};
use crate::rational::{approximate, rat, rvec_is_zero, span_basis, RMat, RVec, Rat};
use nalgebra::{Complex, DMatrix};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C64 = Complex<f64>;

/// Tolerances for the spectral tests. Values are the library defaults and
/// can be overridden from the CLI.
#[derive(Debug, Clone)]
pub struct SpectralConfig {
    /// Relative imaginary-axis tolerance for eigenvalues.
    pub eps_spec: f64,
    /// Absolute floor for the axis tolerance.
    pub eps_spec_floor: f64,
    /// Reported residual bound for invariant metrics (the certificate is
    /// exact, so the achieved residual is zero).
    pub eps_metric: f64,
    /// Minimal eigenvalue scale for positive definiteness reporting.
    pub delta_pd: f64,
    /// Relative eigenvalue clustering radius.
    pub cluster_rel: f64,
    /// Random draws in the positive-definite point search.
    pub pd_search_budget: usize,
    /// Denominator bound when snapping float subspaces to rational ones.
    pub snap_denominator: u64,
    /// Seed for all randomized searches.
    pub seed: u64,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig {
            eps_spec: 1e-9,
            eps_spec_floor: 1e-12,
            eps_metric: 1e-10,
            delta_pd: 1e-8,
            cluster_rel: 1e-7,
            pd_search_budget: 1000,
            snap_denominator: 1_000_000,
            seed: 0,
        }
    }
}

/// One eigenvalue cluster with its diagonalizability evidence:
/// rank(A - center * I) must equal dim - multiplicity.
#[derive(Debug, Clone)]
pub struct EigCluster {
    pub center: C64,
    pub multiplicity: usize,
    pub shifted_rank: usize,
    pub semisimple: bool,
}

#[derive(Debug, Clone)]
pub struct EllipticityReport {
    pub eigenvalues: Vec<C64>,
    pub max_real_part: f64,
    pub diagonalizable: bool,
    pub clusters: Vec<EigCluster>,
    pub verdict: bool,
}

#[derive(Debug, Clone)]
pub struct CompactEmbeddingReport {
    pub subalgebra_dim: usize,
    /// Exact invariant positive-definite metric, when found.
    pub invariant_metric: Option<RMat>,
    /// Max norm of ad(x)^T S + S ad(x) over the basis; zero by construction
    /// when a metric is present.
    pub residual: f64,
    pub verdict: bool,
    /// Set when the search budget ran out without a definite answer.
    pub inconclusive: bool,
    /// Human-readable reason for a certain negative verdict.
    pub obstruction: Option<String>,
}

fn spectral_radius(eigs: &[C64]) -> f64 {
    eigs.iter().map(|e| e.norm()).fold(0.0, f64::max)
}

/// Complex eigenvalues of a real matrix.
///
/// nalgebra's unbounded Schur iteration can spin on matrices whose
/// subdiagonal is already zero (the zero matrix included), so triangular
/// inputs are read off directly and the bounded iteration is retried under
/// random orthogonal similarity before giving up.
pub fn eig_complex(m: &DMatrix<f64>) -> Result<Vec<C64>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(vec![]);
    }
    let scale = m.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(vec![C64::new(0.0, 0.0); n]);
    }
    let lower_zero = (0..n).all(|j| ((j + 1)..n).all(|i| m[(i, j)] == 0.0));
    let upper_zero = (0..n).all(|i| ((i + 1)..n).all(|j| m[(i, j)] == 0.0));
    if lower_zero || upper_zero {
        return Ok((0..n).map(|i| C64::new(m[(i, i)], 0.0)).collect());
    }
    if let Some(s) = m.clone().try_schur(f64::EPSILON, 100_000) {
        return Ok(s.complex_eigenvalues().iter().cloned().collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..5 {
        let r = DMatrix::<f64>::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        let q = r.qr().q();
        let conj = &q.transpose() * m * &q;
        if let Some(s) = conj.try_schur(f64::EPSILON, 100_000) {
            return Ok(s.complex_eigenvalues().iter().cloned().collect());
        }
    }
    Err(Error::Eigensolver("Schur iteration did not converge".into()))
}

/// Greedy clustering of eigenvalues by absolute radius.
fn cluster_eigenvalues(eigs: &[C64], radius: f64) -> Vec<(C64, usize)> {
    let mut clusters: Vec<(C64, Vec<C64>)> = Vec::new();
    for &e in eigs {
        let hit = clusters.iter().position(|(c, _)| (e - c).norm() <= radius);
        match hit {
            Some(idx) => {
                clusters[idx].1.push(e);
                let n = clusters[idx].1.len() as f64;
                let sum: C64 = clusters[idx].1.iter().sum();
                clusters[idx].0 = sum / n;
            }
            None => clusters.push((e, vec![e])),
        }
    }
    clusters.into_iter().map(|(c, m)| (c, m.len())).collect()
}

fn complex_rank(m: &DMatrix<C64>, rel_tol: f64) -> Result<usize> {
    if m.nrows() == 0 {
        return Ok(0);
    }
    let svd = m
        .clone()
        .try_svd(false, false, 1e-14, 10_000)
        .ok_or_else(|| Error::Eigensolver("SVD did not converge".into()))?;
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let tol = rel_tol * smax.max(1.0);
    Ok(svd.singular_values.iter().filter(|s| **s > tol).count())
}

/// Is ad(x) a semisimple endomorphism with purely imaginary spectrum?
pub fn is_elliptic(
    algebra: &LieAlgebra,
    x: &Element,
    cfg: &SpectralConfig,
) -> Result<EllipticityReport> {
    let ad = algebra.ad_matrix(x)?.to_f64();
    is_elliptic_matrix(&ad, cfg)
}

/// The same test on an explicit real matrix (used on quotients).
pub fn is_elliptic_matrix(m: &DMatrix<f64>, cfg: &SpectralConfig) -> Result<EllipticityReport> {
    let n = m.nrows();
    if n == 0 {
        return Ok(EllipticityReport {
            eigenvalues: vec![],
            max_real_part: 0.0,
            diagonalizable: true,
            clusters: vec![],
            verdict: true,
        });
    }
    let eigs: Vec<C64> = eig_complex(m)?;
    let rho = spectral_radius(&eigs);
    let axis_tol = (cfg.eps_spec * rho).max(cfg.eps_spec_floor);
    let max_real_part = eigs.iter().map(|e| e.re.abs()).fold(0.0, f64::max);

    let cluster_radius = (cfg.cluster_rel * rho).max(cfg.eps_spec_floor);
    let mc: DMatrix<C64> = m.map(|v| C64::new(v, 0.0));
    let mut clusters = Vec::new();
    let mut diagonalizable = true;
    for (center, mult) in cluster_eigenvalues(&eigs, cluster_radius) {
        let shifted = &mc - DMatrix::<C64>::identity(n, n) * center;
        let rank = complex_rank(&shifted, 1e-8)?;
        let semisimple = rank == n - mult;
        diagonalizable &= semisimple;
        clusters.push(EigCluster { center, multiplicity: mult, shifted_rank: rank, semisimple });
    }
    let verdict = max_real_part <= axis_tol && diagonalizable;
    Ok(EllipticityReport { eigenvalues: eigs, max_real_part, diagonalizable, clusters, verdict })
}

/// Index symmetric matrix entries (i <= j) into a flat parameter vector.
fn sym_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

fn sym_from_params(n: usize, params: &[Rat]) -> RMat {
    let mut s = RMat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = params[sym_index(n, i, j)].clone();
            s[(i, j)] = v.clone();
            s[(j, i)] = v;
        }
    }
    s
}

/// Invariant-metric certificate search for the compact embedding of a
/// verified subalgebra: find symmetric positive-definite S with
/// ad(x)^T S + S ad(x) = 0 for every basis x. The linear system is solved
/// exactly; positive definiteness is decided by exact LDL^T pivots.
pub fn is_compactly_embedded(
    algebra: &LieAlgebra,
    sub: &Subspace,
    cfg: &SpectralConfig,
) -> Result<CompactEmbeddingReport> {
    match sub.is_subalgebra {
        Some(true) => {}
        _ => {
            if !algebra.is_subalgebra(sub)? {
                return Err(Error::NotASubalgebra);
            }
        }
    }
    let n = algebra.dim;
    let nsym = n * (n + 1) / 2;
    if sub.dim() == 0 || n == 0 {
        return Ok(CompactEmbeddingReport {
            subalgebra_dim: sub.dim(),
            invariant_metric: Some(RMat::identity(n)),
            residual: 0.0,
            verdict: true,
            inconclusive: false,
            obstruction: None,
        });
    }

    // Rows of the exact linear system T(S) = 0 over the sym parameters.
    let mut rows: Vec<RVec> = Vec::new();
    for b in &sub.basis {
        let a = algebra.ad_matrix(&Element::new(b.clone()))?;
        for i in 0..n {
            for j in i..n {
                // (A^T S + S A)_{ij} = sum_k A_{ki} S_{kj} + S_{ik} A_{kj}
                let mut row = vec![Rat::zero(); nsym];
                for k in 0..n {
                    if !a[(k, i)].is_zero() {
                        row[sym_index(n, k, j)] += a[(k, i)].clone();
                    }
                    if !a[(k, j)].is_zero() {
                        row[sym_index(n, i, k)] += a[(k, j)].clone();
                    }
                }
                if !rvec_is_zero(&row) {
                    rows.push(row);
                }
            }
        }
    }

    let nullspace: Vec<RVec> = if rows.is_empty() {
        RMat::zeros(0, nsym).nullspace()
    } else {
        RMat::from_rows(rows).nullspace()
    };

    if nullspace.is_empty() {
        return Ok(CompactEmbeddingReport {
            subalgebra_dim: sub.dim(),
            invariant_metric: None,
            residual: 0.0,
            verdict: false,
            inconclusive: false,
            obstruction: Some("no nonzero invariant symmetric form exists".into()),
        });
    }

    // Certain negative: if some diagonal entry vanishes identically on the
    // solution space, no solution can be positive definite.
    for d in 0..n {
        let idx = sym_index(n, d, d);
        if nullspace.iter().all(|v| v[idx].is_zero()) {
            return Ok(CompactEmbeddingReport {
                subalgebra_dim: sub.dim(),
                invariant_metric: None,
                residual: 0.0,
                verdict: false,
                inconclusive: false,
                obstruction: Some(format!(
                    "every invariant form has vanishing diagonal entry ({d}, {d})"
                )),
            });
        }
    }

    let found = search_pd_point(n, &nullspace, cfg);
    match found {
        Some(metric) => Ok(CompactEmbeddingReport {
            subalgebra_dim: sub.dim(),
            invariant_metric: Some(metric),
            residual: 0.0,
            verdict: true,
            inconclusive: false,
            obstruction: None,
        }),
        None => Ok(CompactEmbeddingReport {
            subalgebra_dim: sub.dim(),
            invariant_metric: None,
            residual: 0.0,
            verdict: false,
            inconclusive: true,
            obstruction: None,
        }),
    }
}

fn search_pd_point(n: usize, nullspace: &[RVec], cfg: &SpectralConfig) -> Option<RMat> {
    let nsym = n * (n + 1) / 2;
    // Candidate 1: sum of the basis solutions.
    let mut sum = vec![Rat::zero(); nsym];
    for v in nullspace {
        for (s, x) in sum.iter_mut().zip(v) {
            *s += x;
        }
    }
    let cand = sym_from_params(n, &sum);
    if cand.is_positive_definite() {
        return Some(cand);
    }
    // Candidate 2: Frobenius projection of the identity onto the solution
    // space (Gram solve, exact). Diagonal entries count once, off-diagonal
    // parameters represent two matrix entries.
    let weight = |idx: usize, i: usize| -> Rat {
        let _ = idx;
        if i == 0 { rat(1) } else { rat(2) }
    };
    let m = nullspace.len();
    let mut gram = RMat::zeros(m, m);
    let mut rhs = vec![Rat::zero(); m];
    for a in 0..m {
        for b in 0..m {
            let mut acc = Rat::zero();
            for i in 0..n {
                for j in i..n {
                    let w = weight(0, if i == j { 0 } else { 1 });
                    acc += &nullspace[a][sym_index(n, i, j)]
                        * &nullspace[b][sym_index(n, i, j)]
                        * w;
                }
            }
            gram[(a, b)] = acc;
        }
        let mut acc = Rat::zero();
        for i in 0..n {
            acc += nullspace[a][sym_index(n, i, i)].clone();
        }
        rhs[a] = acc;
    }
    if let Some(coef) = gram.solve(&rhs) {
        let mut params = vec![Rat::zero(); nsym];
        for (c, v) in coef.iter().zip(nullspace) {
            for (p, x) in params.iter_mut().zip(v) {
                *p += c * x;
            }
        }
        let cand = sym_from_params(n, &params);
        if cand.is_positive_definite() {
            return Some(cand);
        }
    }
    // Candidate 3: seeded random rational combinations.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.pd_search_budget {
        let mut params = vec![Rat::zero(); nsym];
        let mut nonzero = false;
        for v in nullspace {
            let c = rat(rng.gen_range(-9i64..=9));
            if !c.is_zero() {
                nonzero = true;
            }
            for (p, x) in params.iter_mut().zip(v) {
                *p += &c * x;
            }
        }
        if !nonzero {
            continue;
        }
        let cand = sym_from_params(n, &params);
        if cand.is_positive_definite() {
            return Some(cand);
        }
    }
    None
}

/// comp(g)-interior membership: the centralizer of x must be compactly
/// embedded.
pub fn comp_interior_member(
    algebra: &LieAlgebra,
    x: &Element,
    cfg: &SpectralConfig,
) -> Result<CompactEmbeddingReport> {
    let cent = algebra.centralizer(x)?;
    is_compactly_embedded(algebra, &cent, cfg)
}

// ---------------------------------------------------------------------------
// Ellipticity ideal
// ---------------------------------------------------------------------------

/// Numerically reduce the rows to echelon form so that the canonical
/// (rational) representation of the row span emerges, then snap entries.
fn snap_subspace(vectors: &[Vec<f64>], dim: usize, cfg: &SpectralConfig) -> Result<Vec<RVec>> {
    let mut rows: Vec<Vec<f64>> = vectors
        .iter()
        .filter(|v| v.iter().any(|x| x.abs() > 1e-9))
        .cloned()
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        if r == rows.len() {
            break;
        }
        // Largest pivot in column c.
        let (mut best, mut best_abs) = (r, rows[r][c].abs());
        for i in (r + 1)..rows.len() {
            if rows[i][c].abs() > best_abs {
                best = i;
                best_abs = rows[i][c].abs();
            }
        }
        if best_abs < 1e-7 {
            continue;
        }
        rows.swap(r, best);
        let p = rows[r][c];
        for x in rows[r].iter_mut() {
            *x /= p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c].abs() > 0.0 {
                let f = rows[i][c];
                for j in 0..dim {
                    let t = rows[r][j] * f;
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::with_capacity(r);
    for row in rows.iter().take(r) {
        let mut v = Vec::with_capacity(dim);
        for &x in row.iter() {
            let snapped = approximate(x, cfg.snap_denominator)
                .ok_or_else(|| Error::Decomposition("non-finite entry while snapping".into()))?;
            let back = crate::rational::to_f64(&snapped);
            if (back - x).abs() > 1e-5 {
                return Err(Error::Decomposition(format!(
                    "subspace entry {x} does not snap to a rational with denominator <= {}",
                    cfg.snap_denominator
                )));
            }
            v.push(snapped);
        }
        out.push(v);
    }
    Ok(out)
}

fn float_kernel(m: &DMatrix<f64>, rel_tol: f64) -> Result<Vec<Vec<f64>>> {
    let n = m.ncols();
    let svd = m
        .clone()
        .try_svd(false, true, 1e-14, 10_000)
        .ok_or_else(|| Error::Eigensolver("SVD did not converge".into()))?;
    let vt = svd.v_t.unwrap();
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let tol = rel_tol * smax.max(1.0);
    let mut kernel = Vec::new();
    for i in 0..n {
        let s = if i < svd.singular_values.len() { svd.singular_values[i] } else { 0.0 };
        if s <= tol {
            kernel.push(vt.row(i).iter().cloned().collect());
        }
    }
    Ok(kernel)
}

/// Obstruction subspace to the ellipticity of a real matrix: the sum of
/// generalized eigenspaces for eigenvalues off the imaginary axis plus
/// the image of the nilpotent Jordan part on the imaginary-axis
/// generalized eigenspaces. Returns a float basis.
fn ellipticity_obstruction(m: &DMatrix<f64>, cfg: &SpectralConfig) -> Result<Vec<Vec<f64>>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(vec![]);
    }
    let eigs: Vec<C64> = eig_complex(m)?;
    let rho = spectral_radius(&eigs);
    let axis_tol = (cfg.eps_spec * rho).max(cfg.eps_spec_floor);
    let radius = (cfg.cluster_rel * rho).max(cfg.eps_spec_floor);
    // Keep one representative per conjugate pair (Im >= 0).
    let clusters = cluster_eigenvalues(&eigs, radius);
    let mut handled: Vec<C64> = Vec::new();
    let mut vectors: Vec<Vec<f64>> = Vec::new();
    let norm_scale = m.norm().max(1.0);

    for (center, mult) in &clusters {
        if center.im < -radius {
            continue; // conjugate partner handles it
        }
        if handled.iter().any(|h| (h - center).norm() <= radius) {
            continue;
        }
        handled.push(*center);
        let pair_mult = if center.im > radius { 2 * mult } else { *mult };
        // Real polynomial with the cluster (and its conjugate) as roots.
        let q: DMatrix<f64> = if center.im.abs() <= radius {
            m - DMatrix::identity(n, n) * center.re
        } else {
            m * m - m * (2.0 * center.re) + DMatrix::identity(n, n) * center.norm_sqr()
        };
        let mut power = q.clone() / norm_scale;
        for _ in 1..pair_mult {
            power = &power * &q / norm_scale;
        }
        if center.re.abs() > axis_tol {
            // Off-axis: the whole generalized eigenspace obstructs.
            let k = float_kernel(&power, 1e-8)?;
            vectors.extend(k);
        } else {
            // On-axis: only the nilpotent image obstructs.
            let k = float_kernel(&power, 1e-8)?;
            for v in &k {
                let dv = DMatrix::from_column_slice(n, 1, v);
                let w = &q * dv;
                if w.norm() > 1e-7 * norm_scale {
                    vectors.push(w.column(0).iter().cloned().collect());
                }
            }
        }
    }
    Ok(vectors)
}

/// The smallest ideal n such that ad(y) is elliptic on g/n, by fixed-point
/// iteration: obstruction subspace -> rational snap -> ideal closure ->
/// recompute on the quotient.
pub fn ellipticity_ideal(
    algebra: &LieAlgebra,
    y: &Element,
    cfg: &SpectralConfig,
) -> Result<Subspace> {
    let mut ideal = Subspace::zero(algebra.dim);
    for _round in 0..=algebra.dim {
        let (q_alg, proj) = algebra.quotient(&ideal)?;
        if q_alg.dim == 0 {
            return Ok(ideal);
        }
        let y_bar = Element::new(proj.mul_vec(&y.coords));
        let ad_q = q_alg.ad_matrix(&y_bar)?;
        let report = is_elliptic_matrix(&ad_q.to_f64(), cfg)?;
        if report.verdict {
            return Ok(ideal);
        }
        let obstruction_f = ellipticity_obstruction(&ad_q.to_f64(), cfg)?;
        if obstruction_f.is_empty() {
            return Err(Error::Decomposition(
                "non-elliptic quotient action with empty obstruction".into(),
            ));
        }
        let snapped = snap_subspace(&obstruction_f, q_alg.dim, cfg)?;
        // Exactness check: the snapped span must be ad(y)-invariant.
        let span = span_basis(&snapped);
        for v in &span {
            let image = ad_q.mul_vec(v);
            if !crate::rational::in_span(&span, &image) {
                return Err(Error::Decomposition(
                    "snapped obstruction subspace is not ad-invariant".into(),
                ));
            }
        }
        // Pull back to the ambient algebra and close up.
        let mut generators = ideal.basis.clone();
        for v in &span {
            let lift = proj
                .solve(v)
                .ok_or_else(|| Error::Decomposition("projection has no preimage".into()))?;
            generators.push(lift);
        }
        let next = algebra.ideal_closure(&Subspace::from_vectors(&generators))?;
        if next.dim() == ideal.dim() {
            return Err(Error::Decomposition(
                "ellipticity-ideal iteration stalled".into(),
            ));
        }
        ideal = next;
    }
    Err(Error::Decomposition("ellipticity-ideal iteration did not converge".into()))
}

// ---------------------------------------------------------------------------
// Real matrix exponential (scaling and squaring, Pade [6/6])
// ---------------------------------------------------------------------------

/// exp(M) for a real matrix, by scaling-and-squaring with the [13/13]
/// Pade approximant.
pub fn expm(m: &DMatrix<f64>) -> DMatrix<f64> {
    const THETA_13: f64 = 4.25;
    let n = m.nrows();
    let norm1 = (0..n)
        .map(|j| (0..n).map(|i| m[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let s = if norm1 > THETA_13 { (norm1 / THETA_13).log2().ceil() as i32 } else { 0 };
    let a = m / 2f64.powi(s);
    let b: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    let id = DMatrix::<f64>::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let u = &a
        * (&a6 * (&a6 * b[13] + &a4 * b[11] + &a2 * b[9])
            + &a6 * b[7]
            + &a4 * b[5]
            + &a2 * b[3]
            + &id * b[1]);
    let v = &a6 * (&a6 * b[12] + &a4 * b[10] + &a2 * b[8])
        + &a6 * b[6]
        + &a4 * b[4]
        + &a2 * b[2]
        + &id * b[0];
    let num = &v + &u;
    let den = &v - &u;
    let mut r = den.lu().solve(&num).expect("Pade denominator is invertible");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}
