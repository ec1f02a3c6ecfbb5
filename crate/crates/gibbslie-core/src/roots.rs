//! Root decomposition of g_C with respect to a compactly embedded Cartan
//! subalgebra t, root type classification, and positive systems.
//!
//! Convention: roots take values in i·t*, so each root is stored as the
//! real functional sigma(x) := alpha(i x) on t, i.e. ad(h) acts on the
//! root space with eigenvalue -i·sigma(h). Positivity of a root on a
//! regular x0 in t means sigma(x0) > 0, and the maximal cone downstream is
//! cut out by sigma >= 0 over noncompact positive roots. This orientation
//! reproduces cone({p_i^2 + q_i^2}) on the bundled symplectic example and
//! is frozen here.

use crate::algebra::{ComplexElement, Element, LieAlgebra, Subspace};
use crate::error::{Error, Result};
use crate::linprog::strict_feasible;
use crate::rational::{
    approximate, rat, rvec_neg, rvec_zero, span_basis, to_f64, RMat, RVec, Rat,
};
use crate::spectral::{eig_complex, is_compactly_embedded, SpectralConfig, C64};
use nalgebra::DMatrix;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Verification record for a candidate Cartan subalgebra.
#[derive(Debug, Clone)]
pub struct CartanCandidate {
    pub subspace: Subspace,
    pub abelian: bool,
    pub self_centralizing: bool,
    pub compactly_embedded: bool,
    pub compact_inconclusive: bool,
    pub accepted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum RootType {
    /// Non-compact simple: some alpha([Z, Z*]) < 0; g(Z) = sl(2, R).
    NS,
    /// Compact simple: some alpha([Z, Z*]) > 0; g(Z) = su(2).
    CS,
    /// Nilpotent: alpha([Z, Z*]) = 0 throughout but some [Z, Z*] != 0.
    N,
    /// Abelian: [Z, Z*] = 0 throughout.
    A,
}

#[derive(Debug, Clone)]
pub struct Root {
    /// sigma-values on the canonical basis of t.
    pub sigma: RVec,
    /// Exact basis of the root space, in ambient complexified coordinates.
    pub space_basis: Vec<ComplexElement>,
    pub root_type: RootType,
    pub compact: bool,
    pub semisimple: bool,
}

impl Root {
    pub fn dim(&self) -> usize {
        self.space_basis.len()
    }

    pub fn sigma_string(&self) -> String {
        let parts: Vec<String> = self.sigma.iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Root datum: verified Cartan plus the full root list.
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub cartan: Subspace,
    pub roots: Vec<Root>,
}

impl RootDatum {
    pub fn t_dim(&self) -> usize {
        self.cartan.dim()
    }

    /// Express an ambient element in t-coordinates; error if not in t.
    pub fn t_coords(&self, x: &Element) -> Result<RVec> {
        if self.cartan.dim() == 0 {
            return if x.is_zero() { Ok(vec![]) } else { Err(Error::NotInCartan) };
        }
        RMat::from_cols(self.cartan.basis.clone())
            .solve(&x.coords)
            .ok_or(Error::NotInCartan)
    }

    pub fn from_t_coords(&self, c: &[Rat]) -> Element {
        let dim = self.cartan.basis.first().map_or(0, |b| b.len());
        let mut out = rvec_zero(dim);
        for (ci, b) in c.iter().zip(&self.cartan.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += ci * x;
            }
        }
        Element::new(out)
    }

    /// sigma_alpha evaluated at t-coordinates.
    pub fn eval_sigma(&self, root: &Root, t_coords: &[Rat]) -> Rat {
        crate::rational::rvec_dot(&root.sigma, t_coords)
    }
}

/// A positive system with its partition indices into the datum's roots.
#[derive(Debug, Clone)]
pub struct PositiveSystem {
    /// t-coordinates of the defining regular element.
    pub regular_t_coords: RVec,
    /// Indices of the positive roots.
    pub positive: Vec<usize>,
    pub adapted: bool,
}

impl PositiveSystem {
    /// Positive compact roots.
    pub fn delta_k_plus<'a>(&'a self, datum: &'a RootDatum) -> impl Iterator<Item = usize> + 'a {
        self.positive.iter().cloned().filter(move |&i| datum.roots[i].compact)
    }

    /// Positive noncompact roots.
    pub fn delta_p_plus<'a>(&'a self, datum: &'a RootDatum) -> impl Iterator<Item = usize> + 'a {
        self.positive.iter().cloned().filter(move |&i| !datum.roots[i].compact)
    }

    /// Positive noncompact semisimple roots.
    pub fn delta_ps_plus<'a>(&'a self, datum: &'a RootDatum) -> impl Iterator<Item = usize> + 'a {
        self.positive
            .iter()
            .cloned()
            .filter(move |&i| !datum.roots[i].compact && datum.roots[i].semisimple)
    }

    /// Positive solvable roots, Delta \ Delta_s (types N and A).
    pub fn delta_r_plus<'a>(&'a self, datum: &'a RootDatum) -> impl Iterator<Item = usize> + 'a {
        self.positive.iter().cloned().filter(move |&i| !datum.roots[i].semisimple)
    }

    /// The paper also defines the complement of the compact roots; both
    /// sets are exposed since the source wording is ambiguous.
    pub fn delta_noncompact_plus<'a>(
        &'a self,
        datum: &'a RootDatum,
    ) -> impl Iterator<Item = usize> + 'a {
        self.delta_p_plus(datum)
    }
}

/// Verify the three Cartan predicates: abelian, self-centralizing (exact),
/// and compactly embedded (invariant-metric certificate).
pub fn verify_cartan(
    algebra: &LieAlgebra,
    t: &Subspace,
    cfg: &SpectralConfig,
) -> Result<CartanCandidate> {
    let mut abelian = true;
    'outer: for a in &t.basis {
        for b in &t.basis {
            if !algebra
                .bracket(&Element::new(a.clone()), &Element::new(b.clone()))?
                .is_zero()
            {
                abelian = false;
                break 'outer;
            }
        }
    }
    // Joint kernel of ad over the t-basis = centralizer of t.
    let mut rows = Vec::new();
    for b in &t.basis {
        let ad = algebra.ad_matrix(&Element::new(b.clone()))?;
        for r in 0..ad.rows {
            rows.push(ad.row(r).to_vec());
        }
    }
    let centralizer = if rows.is_empty() {
        algebra.full_subspace()
    } else {
        Subspace::from_vectors(&RMat::from_rows(rows).nullspace())
    };
    let self_centralizing = centralizer.same_as(t);

    let mut sub = t.clone();
    if abelian {
        sub.is_subalgebra = Some(true);
    }
    let emb = is_compactly_embedded(algebra, &sub, cfg)?;
    let accepted = abelian && self_centralizing && emb.verdict;
    Ok(CartanCandidate {
        subspace: Subspace { basis: span_basis(&t.basis), is_subalgebra: Some(abelian), is_ideal: None },
        abelian,
        self_centralizing,
        compactly_embedded: emb.verdict,
        compact_inconclusive: emb.inconclusive,
        accepted,
    })
}

/// Candidate sigma vectors from a floating simultaneous eigendecomposition,
/// one random generic combination of the t-basis at a time.
fn sigma_candidates(
    algebra: &LieAlgebra,
    t_basis: &[RVec],
    cfg: &SpectralConfig,
    attempt: u64,
) -> Result<Vec<RVec>> {
    let n = algebra.dim;
    let r = t_basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (0x0070_0B00_u64 ^ attempt));
    let coeffs: Vec<i64> = (0..r).map(|_| rng.gen_range(1..=13)).collect();
    let mut h_star = rvec_zero(n);
    for (c, b) in coeffs.iter().zip(t_basis) {
        for (h, x) in h_star.iter_mut().zip(b) {
            *h += &rat(*c) * x;
        }
    }
    let m = algebra.ad_matrix(&Element::new(h_star))?.to_f64();
    let eigs = eig_complex(&m)?;
    let rho = eigs.iter().map(|e| e.norm()).fold(0.0, f64::max);
    if rho == 0.0 {
        return Ok(vec![]); // abelian action: no roots
    }
    let radius = (cfg.cluster_rel * rho).max(cfg.eps_spec_floor);
    let mc: DMatrix<C64> = m.map(|v| C64::new(v, 0.0));
    let ad_t: Vec<DMatrix<C64>> = t_basis
        .iter()
        .map(|b| {
            algebra
                .ad_matrix(&Element::new(b.clone()))
                .map(|a| a.to_f64().map(|v| C64::new(v, 0.0)))
        })
        .collect::<Result<_>>()?;

    let mut centers: Vec<C64> = Vec::new();
    for e in &eigs {
        if e.norm() <= radius {
            continue; // the zero cluster is t_C itself
        }
        if !centers.iter().any(|c| (c - e).norm() <= radius) {
            centers.push(*e);
        }
    }

    let mut out: Vec<RVec> = Vec::new();
    for mu in centers {
        let shifted = &mc - DMatrix::<C64>::identity(n, n) * mu;
        let svd = shifted
            .svd(false, true)
            .v_t
            .ok_or_else(|| Error::Eigensolver("SVD of shifted matrix failed".into()))?;
        // Kernel vectors: rows of V^H with negligible singular values.
        let sv = {
            let s = (&mc - DMatrix::<C64>::identity(n, n) * mu).svd(false, false);
            s.singular_values
        };
        let smax = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
        for i in 0..n {
            let sigma_i = if i < sv.len() { sv[i] } else { 0.0 };
            if sigma_i > 1e-8 * smax {
                continue;
            }
            let v: Vec<C64> = svd.row(i).iter().map(|c| c.conj()).collect();
            let dv = DMatrix::<C64>::from_column_slice(n, 1, &v);
            // Rayleigh values of each ad(h_j) on this eigenvector.
            let mut sigma = Vec::with_capacity(r);
            let norm2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
            let mut clean = true;
            for a in &ad_t {
                let av = a * &dv;
                let num: C64 = v
                    .iter()
                    .zip(av.column(0).iter())
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let d = num / norm2;
                let residual = (&av - &dv * d).norm();
                if residual > 1e-6 * (1.0 + a.norm()) {
                    clean = false; // mixed eigenvector: h* was not generic
                    break;
                }
                // d = -i * sigma  =>  sigma = Re(i d)
                let s_f = (C64::i() * d).re;
                if (C64::i() * d).im.abs() > 1e-6 * (1.0 + s_f.abs()) {
                    clean = false;
                    break;
                }
                let snapped = approximate(s_f, 10_000)
                    .ok_or_else(|| Error::Decomposition("non-finite sigma value".into()))?;
                if (to_f64(&snapped) - s_f).abs() > 1e-7 * s_f.abs().max(1.0) {
                    return Err(Error::Decomposition(format!(
                        "root value {s_f} does not snap to denominator <= 10^4"
                    )));
                }
                sigma.push(snapped);
            }
            if !clean {
                return Err(Error::Eigensolver("generic combination was degenerate".into()));
            }
            if sigma.iter().all(|s| s.is_zero()) {
                continue;
            }
            if !out.contains(&sigma) {
                out.push(sigma);
            }
        }
    }
    Ok(out)
}

/// Exact root space for a candidate sigma: real-doubled rational nullspace
/// of the joint eigenvector equations over all t-basis directions.
fn exact_root_space(
    algebra: &LieAlgebra,
    t_basis: &[RVec],
    sigma: &[Rat],
) -> Result<Vec<ComplexElement>> {
    let n = algebra.dim;
    let mut rows: Vec<RVec> = Vec::new();
    for (b, s) in t_basis.iter().zip(sigma) {
        let ad = algebra.ad_matrix(&Element::new(b.clone()))?;
        // [h, A] - s B = 0  and  [h, B] + s A = 0, unknowns (A; B).
        for i in 0..n {
            let mut row = rvec_zero(2 * n);
            for j in 0..n {
                row[j] = ad[(i, j)].clone();
            }
            row[n + i] -= s;
            rows.push(row);
        }
        for i in 0..n {
            let mut row = rvec_zero(2 * n);
            for j in 0..n {
                row[n + j] = ad[(i, j)].clone();
            }
            row[i] += s;
            rows.push(row);
        }
    }
    let null = RMat::from_rows(rows).nullspace();
    // Select a C-linearly independent subset: complex span of Z = A + iB is
    // the real span of (A; B) and (-B; A).
    let mut chosen: Vec<RVec> = Vec::new();
    let mut real_span: Vec<RVec> = Vec::new();
    for v in null {
        let a = v[..n].to_vec();
        let b = v[n..].to_vec();
        let mut rotated = rvec_neg(&b);
        rotated.extend(a.iter().cloned());
        let mut candidate_span = real_span.clone();
        candidate_span.push(v.clone());
        candidate_span.push(rotated);
        let new_rank = span_basis(&candidate_span).len();
        if new_rank > span_basis(&real_span).len() {
            real_span = candidate_span;
            chosen.push(v);
        }
    }
    Ok(chosen
        .into_iter()
        .map(|v| ComplexElement::new(v[..n].to_vec(), v[n..].to_vec()))
        .collect())
}

/// Evaluate alpha on an element of t_C given by real/imag ambient parts.
/// alpha(u + iv) = sigma(v) - i sigma(u) in the frozen convention.
fn eval_alpha_on_tc(
    datum_t: &Subspace,
    sigma: &[Rat],
    u: &[Rat],
    v: &[Rat],
) -> Result<(Rat, Rat)> {
    let coords_u = if u.iter().all(|x| x.is_zero()) {
        rvec_zero(sigma.len())
    } else {
        RMat::from_cols(datum_t.basis.clone())
            .solve(u)
            .ok_or_else(|| Error::Decomposition("[Z, W*] does not lie in t_C".into()))?
    };
    let coords_v = if v.iter().all(|x| x.is_zero()) {
        rvec_zero(sigma.len())
    } else {
        RMat::from_cols(datum_t.basis.clone())
            .solve(v)
            .ok_or_else(|| Error::Decomposition("[Z, W*] does not lie in t_C".into()))?
    };
    let re = crate::rational::rvec_dot(sigma, &coords_v);
    let im = -crate::rational::rvec_dot(sigma, &coords_u);
    Ok((re, im))
}

/// Classify a root space by the signature of s(Z) = alpha([Z, Z*]).
fn classify(
    algebra: &LieAlgebra,
    t: &Subspace,
    sigma: &[Rat],
    basis: &[ComplexElement],
) -> Result<(RootType, bool, bool)> {
    let mut any_bracket_nonzero = false;
    let mut any_pos = false;
    let mut any_neg = false;
    for zi in basis {
        for zj in basis {
            let br = algebra.bracket_complex(zi, &zj.star())?;
            if !br.is_zero() {
                any_bracket_nonzero = true;
            }
            let (re, im) = eval_alpha_on_tc(t, sigma, &br.re, &br.im)?;
            if !im.is_zero() && zi == zj {
                return Err(Error::Decomposition(
                    "alpha([Z, Z*]) is not real on the diagonal".into(),
                ));
            }
            if zi == zj {
                if re.is_positive() {
                    any_pos = true;
                } else if re.is_negative() {
                    any_neg = true;
                }
            }
        }
    }
    // Polarized probes for multi-dimensional spaces: s on Z_i + Z_j and
    // Z_i + i Z_j covers the full Hermitian form.
    if basis.len() > 1 {
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                for probe in [
                    ComplexElement::new(
                        crate::rational::rvec_add(&basis[i].re, &basis[j].re),
                        crate::rational::rvec_add(&basis[i].im, &basis[j].im),
                    ),
                    {
                        let ij = basis[j].times_i();
                        ComplexElement::new(
                            crate::rational::rvec_add(&basis[i].re, &ij.re),
                            crate::rational::rvec_add(&basis[i].im, &ij.im),
                        )
                    },
                ] {
                    let br = algebra.bracket_complex(&probe, &probe.star())?;
                    if !br.is_zero() {
                        any_bracket_nonzero = true;
                    }
                    let (re, _) = eval_alpha_on_tc(t, sigma, &br.re, &br.im)?;
                    if re.is_positive() {
                        any_pos = true;
                    } else if re.is_negative() {
                        any_neg = true;
                    }
                }
            }
        }
    }

    if any_pos && any_neg {
        return Err(Error::MixedSignRoot {
            root: format!("[{}]", sigma.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")),
        });
    }
    let root_type = if any_neg {
        RootType::NS
    } else if any_pos {
        RootType::CS
    } else if any_bracket_nonzero {
        RootType::N
    } else {
        RootType::A
    };
    if basis.len() > 1 && matches!(root_type, RootType::NS | RootType::CS) {
        return Err(Error::MixedSignRoot {
            root: "simple-type root space must be one-dimensional".into(),
        });
    }
    let compact = root_type == RootType::CS;
    let semisimple = matches!(root_type, RootType::NS | RootType::CS);
    Ok((root_type, compact, semisimple))
}

/// Simultaneous eigenspace decomposition of g_C under the accepted Cartan.
/// Candidate root functionals come from one floating eigendecomposition
/// and are then confirmed by exact rational nullspaces; the dimension
/// identity dim t + sum dim g^alpha = dim g is verified exactly.
pub fn root_decomposition(
    algebra: &LieAlgebra,
    cartan: &CartanCandidate,
    cfg: &SpectralConfig,
) -> Result<RootDatum> {
    if !cartan.accepted {
        return Err(Error::CartanRejected(format!(
            "abelian={} self_centralizing={} compactly_embedded={}",
            cartan.abelian, cartan.self_centralizing, cartan.compactly_embedded
        )));
    }
    let t = &cartan.subspace;
    let r = t.dim();
    let mut last_err: Option<Error> = None;
    for attempt in 0..5 {
        let candidates = match sigma_candidates(algebra, &t.basis, cfg, attempt) {
            Ok(c) => c,
            Err(e @ Error::Eigensolver(_)) => {
                last_err = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut roots = Vec::new();
        let mut total = 0usize;
        let mut ok = true;
        for sigma in &candidates {
            let basis = exact_root_space(algebra, &t.basis, sigma)?;
            if basis.is_empty() {
                ok = false; // spurious candidate; retry with new randomness
                break;
            }
            total += basis.len();
            let (root_type, compact, semisimple) = classify(algebra, t, sigma, &basis)?;
            roots.push(Root { sigma: sigma.clone(), space_basis: basis, root_type, compact, semisimple });
        }
        if !ok {
            last_err = Some(Error::Decomposition("spurious root candidate".into()));
            continue;
        }
        if r + total != algebra.dim {
            last_err = Some(Error::Decomposition(format!(
                "dimension identity fails: dim t = {r}, root spaces = {total}, dim g = {}",
                algebra.dim
            )));
            continue;
        }
        // Root symmetry: sigma <-> -sigma with star-conjugate spaces.
        for root in &roots {
            let neg = rvec_neg(&root.sigma);
            let counterpart = roots
                .iter()
                .find(|r2| r2.sigma == neg)
                .ok_or_else(|| Error::Decomposition("missing opposite root".into()))?;
            if counterpart.dim() != root.dim() {
                return Err(Error::Decomposition("opposite root spaces differ in dimension".into()));
            }
            // Star maps the basis into the opposite space, exactly.
            let flat: Vec<RVec> = counterpart
                .space_basis
                .iter()
                .flat_map(|z| {
                    let mut v = z.re.clone();
                    v.extend(z.im.iter().cloned());
                    let mut w = rvec_neg(&z.im);
                    w.extend(z.re.iter().cloned());
                    [v, w]
                })
                .collect();
            for z in &root.space_basis {
                let star = z.star();
                let mut v = star.re.clone();
                v.extend(star.im.iter().cloned());
                if !crate::rational::in_span(&span_basis(&flat), &v) {
                    return Err(Error::Decomposition(
                        "star does not map the root space onto its opposite".into(),
                    ));
                }
            }
        }
        return Ok(RootDatum { cartan: t.clone(), roots });
    }
    Err(last_err.unwrap_or_else(|| Error::Decomposition("root decomposition failed".into())))
}

/// The positive system cut out by a regular element x0 of t.
pub fn positive_system(
    datum: &RootDatum,
    x0: &Element,
) -> Result<PositiveSystem> {
    let coords = datum.t_coords(x0)?;
    let mut positive = Vec::new();
    for (i, root) in datum.roots.iter().enumerate() {
        let v = datum.eval_sigma(root, &coords);
        if v.is_zero() {
            return Err(Error::NotRegular(root.sigma_string()));
        }
        if v.is_positive() {
            positive.push(i);
        }
    }
    let adapted = adapted_flag(datum, &coords, &positive)?;
    Ok(PositiveSystem { regular_t_coords: coords, positive, adapted })
}

/// Adaptedness is an existential condition over the chamber: some element
/// x defining the same system satisfies sigma_beta(x) > sigma_alpha(x) for
/// every compact root alpha and noncompact positive root beta. Decided by
/// exact LP over the chamber's strict sign constraints.
fn adapted_flag(datum: &RootDatum, coords: &[Rat], positive: &[usize]) -> Result<bool> {
    let r = datum.t_dim();
    let compact: Vec<usize> =
        (0..datum.roots.len()).filter(|&i| datum.roots[i].compact).collect();
    let noncompact_pos: Vec<usize> =
        positive.iter().cloned().filter(|&i| !datum.roots[i].compact).collect();
    if compact.is_empty() || noncompact_pos.is_empty() {
        return Ok(true); // vacuous
    }
    // Quick check at the supplied element.
    let witness_here = noncompact_pos.iter().all(|&b| {
        compact.iter().all(|&a| {
            datum.eval_sigma(&datum.roots[b], coords)
                > datum.eval_sigma(&datum.roots[a], coords)
        })
    });
    if witness_here {
        return Ok(true);
    }
    // Chamber constraints: sign(sigma_i(x)) matches the system.
    let mut strict: Vec<RVec> = Vec::new();
    for (i, root) in datum.roots.iter().enumerate() {
        if positive.contains(&i) {
            strict.push(root.sigma.clone());
        } else {
            strict.push(rvec_neg(&root.sigma));
        }
    }
    for &b in &noncompact_pos {
        for &a in &compact {
            let mut diff = rvec_zero(r);
            for k in 0..r {
                diff[k] = &datum.roots[b].sigma[k] - &datum.roots[a].sigma[k];
            }
            strict.push(diff);
        }
    }
    Ok(strict_feasible(r, &strict, &[]).is_some())
}

/// Enumerate all positive systems: one per LP-feasible sign vector over
/// the root pairs.
pub fn enumerate_positive_systems(
    datum: &RootDatum,
    max_roots: usize,
) -> Result<Vec<PositiveSystem>> {
    if datum.roots.len() > max_roots {
        return Err(Error::BoundExceeded(format!(
            "{} roots exceeds the enumeration bound {max_roots}",
            datum.roots.len()
        )));
    }
    let r = datum.t_dim();
    if datum.roots.is_empty() {
        return Ok(vec![PositiveSystem {
            regular_t_coords: rvec_zero(r),
            positive: vec![],
            adapted: true,
        }]);
    }
    // Canonical representative per +/- pair: first nonzero sigma entry positive.
    let mut reps: Vec<usize> = Vec::new();
    for (i, root) in datum.roots.iter().enumerate() {
        let first = root.sigma.iter().find(|x| !x.is_zero());
        if let Some(f) = first {
            if f.is_positive() {
                reps.push(i);
            }
        }
    }
    let k = reps.len();
    let mut systems = Vec::new();
    for mask in 0..(1u64 << k) {
        let mut strict: Vec<RVec> = Vec::new();
        for (bit, &i) in reps.iter().enumerate() {
            let s = datum.roots[i].sigma.clone();
            if mask & (1 << bit) != 0 {
                strict.push(s);
            } else {
                strict.push(rvec_neg(&s));
            }
        }
        if let Some(x) = strict_feasible(r, &strict, &[]) {
            let sys = positive_system(datum, &datum.from_t_coords(&x))?;
            systems.push(sys);
        }
    }
    Ok(systems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, heisenberg3, jacobi_hsp2, sl2, su2};

    fn cfg() -> SpectralConfig {
        SpectralConfig::default()
    }

    fn accepted_cartan(algebra: &LieAlgebra, names: &[&str]) -> CartanCandidate {
        let vs: Vec<RVec> = names
            .iter()
            .map(|n| algebra.parse_combination(n).unwrap().coords)
            .collect();
        let c = verify_cartan(algebra, &Subspace::from_vectors(&vs), &cfg()).unwrap();
        assert!(c.accepted, "expected accepted Cartan {names:?}");
        c
    }

    #[test]
    fn cartan_verification() {
        let g = sl2();
        let c = accepted_cartan(&g, &["e-f"]);
        assert!(c.abelian && c.self_centralizing && c.compactly_embedded);

        // span{h} is abelian and self-centralizing but not compactly embedded.
        let h = Subspace::from_vectors(&[g.parse_combination("h").unwrap().coords]);
        let c = verify_cartan(&g, &h, &cfg()).unwrap();
        assert!(c.abelian);
        assert!(c.self_centralizing);
        assert!(!c.compactly_embedded);
        assert!(!c.accepted);

        let hsp = jacobi_hsp2();
        accepted_cartan(&hsp, &["z", "p2+q2"]);
    }

    #[test]
    fn sl2_root_decomposition() {
        let g = sl2();
        let c = accepted_cartan(&g, &["e-f"]);
        let datum = root_decomposition(&g, &c, &cfg()).unwrap();
        assert_eq!(datum.roots.len(), 2);
        for root in &datum.roots {
            assert_eq!(root.dim(), 1);
            assert_eq!(root.root_type, RootType::NS);
            assert!(!root.compact);
            assert!(root.semisimple);
        }
        // sigma values +-2 on u = e - f (the canonical t basis may rescale;
        // check the evaluation at the actual element).
        let u = g.parse_combination("e-f").unwrap();
        let coords = datum.t_coords(&u).unwrap();
        let mut vals: Vec<Rat> = datum
            .roots
            .iter()
            .map(|r| datum.eval_sigma(r, &coords))
            .collect();
        vals.sort();
        assert_eq!(vals, vec![rat(-2), rat(2)]);
    }

    #[test]
    fn su2_root_decomposition() {
        let g = su2();
        let c = accepted_cartan(&g, &["x3"]);
        let datum = root_decomposition(&g, &c, &cfg()).unwrap();
        assert_eq!(datum.roots.len(), 2);
        for root in &datum.roots {
            assert_eq!(root.dim(), 1);
            assert_eq!(root.root_type, RootType::CS);
            assert!(root.compact);
            assert!(root.semisimple);
        }
    }

    #[test]
    fn abelian_has_no_roots() {
        let g = abelian(3);
        let c = verify_cartan(&g, &g.full_subspace(), &cfg()).unwrap();
        assert!(c.accepted);
        let datum = root_decomposition(&g, &c, &cfg()).unwrap();
        assert!(datum.roots.is_empty());
        let systems = enumerate_positive_systems(&datum, 40).unwrap();
        assert_eq!(systems.len(), 1);
        assert!(systems[0].positive.is_empty());
        assert!(systems[0].adapted);
    }

    #[test]
    fn jacobi_root_decomposition() {
        let g = jacobi_hsp2();
        let c = accepted_cartan(&g, &["z", "p2+q2"]);
        let datum = root_decomposition(&g, &c, &cfg()).unwrap();
        // Roots: +-alpha on the Heisenberg pair (type N) and +-2 alpha on
        // the symplectic pair (type NS); all vanish on z.
        assert_eq!(datum.roots.len(), 4);
        let k = g.parse_combination("p2+q2").unwrap();
        let z = g.parse_combination("z").unwrap();
        let kc = datum.t_coords(&k).unwrap();
        let zc = datum.t_coords(&z).unwrap();
        let mut seen = Vec::new();
        for root in &datum.roots {
            assert!(datum.eval_sigma(root, &zc).is_zero());
            let v = datum.eval_sigma(root, &kc);
            match root.root_type {
                RootType::N => assert!(v.clone().abs() == rat(2)),
                RootType::NS => assert!(v.clone().abs() == rat(4)),
                other => panic!("unexpected root type {other:?}"),
            }
            assert!(!root.compact);
            seen.push(v);
        }
        seen.sort();
        assert_eq!(seen, vec![rat(-4), rat(-2), rat(2), rat(4)]);
    }

    #[test]
    fn positive_systems_sl2() {
        let g = sl2();
        let c = accepted_cartan(&g, &["e-f"]);
        let datum = root_decomposition(&g, &c, &cfg()).unwrap();
        let systems = enumerate_positive_systems(&datum, 40).unwrap();
        assert_eq!(systems.len(), 2);
        for s in &systems {
            assert_eq!(s.positive.len(), 1);
            assert!(s.adapted);
        }
        // Explicit construction and its opposite.
        let u = g.parse_combination("e-f").unwrap();
        let sys = positive_system(&datum, &u).unwrap();
        let opp = positive_system(&datum, &u.neg()).unwrap();
        assert_ne!(sys.positive, opp.positive);
        // Zero is not regular.
        assert!(positive_system(&datum, &Element::zero(3)).is_err());
    }

    #[test]
    fn positive_systems_jacobi() {
        let g = jacobi_hsp2();
        let c = accepted_cartan(&g, &["z", "p2+q2"]);
        let datum = root_decomposition(&g, &c, &cfg()).unwrap();
        // Both root lines are proportional, so there are exactly two
        // chambers, and with no compact roots both are adapted.
        let systems = enumerate_positive_systems(&datum, 40).unwrap();
        assert_eq!(systems.len(), 2);
        for s in &systems {
            assert_eq!(s.positive.len(), 2);
            assert!(s.adapted);
        }
        // x0 = z + c(p2+q2) picks the same system for small and large c > 0.
        let a = positive_system(&datum, &g.parse_combination("z + 1/10*p2 + 1/10*q2").unwrap()).unwrap();
        let b = positive_system(&datum, &g.parse_combination("z + 10*p2 + 10*q2").unwrap()).unwrap();
        assert_eq!(a.positive, b.positive);
        // x0 with no k-component is not regular.
        assert!(positive_system(&datum, &g.parse_combination("z").unwrap()).is_err());
    }
}
