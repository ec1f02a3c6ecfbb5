//! Exact polyhedral cone arithmetic in the Cartan subalgebra, the minimal
//! and maximal root cones, admissibility, and the Gibbs-element decision.

use crate::algebra::{Element, LieAlgebra, Subspace};
use crate::error::{Error, Result};
use crate::linprog::feasible_point;
use crate::rational::{rat, rvec_dot, rvec_neg, rvec_zero, span_basis, RMat, RVec, Rat};
use crate::roots::{
    enumerate_positive_systems, root_decomposition, verify_cartan, PositiveSystem, RootDatum,
};
use crate::spectral::{comp_interior_member, is_compactly_embedded, SpectralConfig};
use num_traits::{Signed, Zero};

/// Double-description conversions are capped at this ambient dimension.
pub const DD_DIMENSION_CAP: usize = 8;

/// Polyhedral cone in a fixed coordinate system (the Cartan subalgebra),
/// described by generators, inequalities, or both.
#[derive(Debug, Clone)]
pub struct PolyhedralCone {
    pub ambient_dim: usize,
    pub generators: Option<Vec<RVec>>,
    pub inequalities: Option<Vec<RVec>>,
}

impl PolyhedralCone {
    pub fn from_generators(ambient_dim: usize, generators: Vec<RVec>) -> Self {
        PolyhedralCone { ambient_dim, generators: Some(generators), inequalities: None }
    }

    pub fn from_inequalities(ambient_dim: usize, inequalities: Vec<RVec>) -> Self {
        PolyhedralCone { ambient_dim, generators: None, inequalities: Some(inequalities) }
    }

    /// Generators, converting from the inequality description on demand.
    pub fn generator_form(&self) -> Result<Vec<RVec>> {
        if let Some(g) = &self.generators {
            return Ok(g.clone());
        }
        let ineqs = self
            .inequalities
            .as_ref()
            .ok_or(Error::MissingRepresentation("generator"))?;
        let (lineality, rays) = double_description(self.ambient_dim, ineqs)?;
        let mut gens = rays;
        for l in lineality {
            gens.push(l.clone());
            gens.push(rvec_neg(&l));
        }
        Ok(gens)
    }

    /// Inequalities, converting from the generator description on demand.
    pub fn inequality_form(&self) -> Result<Vec<RVec>> {
        if let Some(i) = &self.inequalities {
            return Ok(i.clone());
        }
        let gens = self
            .generators
            .as_ref()
            .ok_or(Error::MissingRepresentation("inequality"))?;
        // Inequalities of cone(G) are the generators of the dual cone
        // {y | <g, y> >= 0 for all g}.
        let (lineality, rays) = double_description(self.ambient_dim, gens)?;
        let mut ineqs = rays;
        for l in lineality {
            ineqs.push(l.clone());
            ineqs.push(rvec_neg(&l));
        }
        Ok(ineqs)
    }
}

/// Generators of {x | <a_i, x> >= 0 for all i}, returned as
/// (lineality basis, rays). Textbook incremental double description;
/// redundant rays are pruned by exact LP at the end.
pub fn double_description(dim: usize, ineqs: &[RVec]) -> Result<(Vec<RVec>, Vec<RVec>)> {
    if dim > DD_DIMENSION_CAP {
        return Err(Error::BoundExceeded(format!(
            "double description capped at dimension {DD_DIMENSION_CAP}, got {dim}"
        )));
    }
    let mut lineality: Vec<RVec> = (0..dim)
        .map(|i| {
            let mut v = rvec_zero(dim);
            v[i] = rat(1);
            v
        })
        .collect();
    let mut rays: Vec<RVec> = Vec::new();
    for a in ineqs {
        // A lineality direction with nonzero value absorbs the inequality.
        if let Some(pos) = lineality.iter().position(|l| !rvec_dot(a, l).is_zero()) {
            let pivot = lineality.remove(pos);
            let pv = rvec_dot(a, &pivot);
            let make_orth = |v: &RVec| -> RVec {
                let c = rvec_dot(a, v);
                let scale = &c / &pv;
                v.iter().zip(&pivot).map(|(x, p)| x - &scale * p).collect()
            };
            lineality = lineality.iter().map(make_orth).collect();
            rays = rays.iter().map(make_orth).collect();
            // The pivot itself becomes a ray on the positive side.
            let ray = if pv.is_positive() { pivot } else { rvec_neg(&pivot) };
            rays.push(normalize_ray(&ray));
            continue;
        }
        let mut plus: Vec<RVec> = Vec::new();
        let mut zero: Vec<RVec> = Vec::new();
        let mut minus: Vec<RVec> = Vec::new();
        for r in &rays {
            let v = rvec_dot(a, r);
            if v.is_positive() {
                plus.push(r.clone());
            } else if v.is_zero() {
                zero.push(r.clone());
            } else {
                minus.push(r.clone());
            }
        }
        let mut next = Vec::new();
        next.extend(plus.iter().cloned());
        next.extend(zero.iter().cloned());
        for rp in &plus {
            for rm in &minus {
                let cp = rvec_dot(a, rp);
                let cm = rvec_dot(a, rm);
                // cp * rm - cm * rp lies on the hyperplane, inside the cone.
                let combo: RVec = rm
                    .iter()
                    .zip(rp)
                    .map(|(m, p)| &cp * m - &cm * p)
                    .collect();
                if combo.iter().any(|x| !x.is_zero()) {
                    next.push(normalize_ray(&combo));
                }
            }
        }
        next.dedup();
        rays = next;
    }
    // Prune rays that are nonnegative combinations of the others (modulo
    // lineality).
    let rays = prune_redundant(dim, &lineality, rays);
    Ok((span_basis(&lineality), rays))
}

fn normalize_ray(v: &RVec) -> RVec {
    use num_bigint::BigInt;
    use num_traits::One;
    // Clear denominators and divide by the gcd of numerators.
    let mut lcm = BigInt::one();
    for x in v {
        let d = x.denom();
        let g = gcd_big(&lcm, d);
        lcm = &lcm / &g * d;
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut g = BigInt::ZERO;
    for i in &ints {
        g = gcd_big(&g, i);
    }
    if g.is_zero() {
        return v.clone();
    }
    ints.into_iter().map(|i| Rat::from_integer(i / &g)).collect()
}

fn gcd_big(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> num_bigint::BigInt {
    let mut a = a.clone().magnitude().clone();
    let mut b = b.clone().magnitude().clone();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    num_bigint::BigInt::from(a)
}

fn prune_redundant(dim: usize, lineality: &[RVec], rays: Vec<RVec>) -> Vec<RVec> {
    let mut kept: Vec<RVec> = Vec::new();
    let mut pool = rays;
    pool.sort();
    pool.dedup();
    for i in 0..pool.len() {
        let others: Vec<RVec> = pool
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| r.clone())
            .collect();
        // ray_i in cone(others) + span(lineality)?
        if !in_cone_with_lineality(dim, &pool[i], &others, lineality) {
            kept.push(pool[i].clone());
        }
    }
    kept
}

fn in_cone_with_lineality(dim: usize, x: &RVec, gens: &[RVec], lineality: &[RVec]) -> bool {
    // Feasibility of x = G lambda + L mu, lambda >= 0, mu free.
    let cols = gens.len() + 2 * lineality.len();
    if cols == 0 {
        return x.iter().all(|v| v.is_zero());
    }
    let mut a = RMat::zeros(dim, cols);
    for (j, g) in gens.iter().enumerate() {
        for i in 0..dim {
            a[(i, j)] = g[i].clone();
        }
    }
    for (j, l) in lineality.iter().enumerate() {
        for i in 0..dim {
            a[(i, gens.len() + 2 * j)] = l[i].clone();
            a[(i, gens.len() + 2 * j + 1)] = -l[i].clone();
        }
    }
    feasible_point(&a, x).is_some()
}

/// Membership x in cone(generators), exact LP.
pub fn cone_member(dim: usize, x: &RVec, generators: &[RVec]) -> bool {
    in_cone_with_lineality(dim, x, generators, &[])
}

// ---------------------------------------------------------------------------
// Root cones
// ---------------------------------------------------------------------------

/// Minimal cone: generated by i[Z, Z*] = -2[A, B] over root-space basis
/// vectors Z = A + iB of the noncompact positive roots. Exact, in
/// t-coordinates.
pub fn c_min(algebra: &LieAlgebra, datum: &RootDatum, sys: &PositiveSystem) -> Result<PolyhedralCone> {
    let mut generators = Vec::new();
    for i in sys.delta_p_plus(datum) {
        for z in &datum.roots[i].space_basis {
            let a = Element::new(z.re.clone());
            let b = Element::new(z.im.clone());
            let m = algebra.bracket(&a, &b)?.scale(&rat(-2));
            let coords = datum
                .t_coords(&m)
                .map_err(|_| Error::Decomposition("i[Z, Z*] does not lie in t".into()))?;
            if coords.iter().any(|c| !c.is_zero()) {
                generators.push(coords);
            } else {
                generators.push(coords); // keep zero generators out of pointedness? zero adds nothing
            }
        }
    }
    generators.retain(|g| g.iter().any(|c| !c.is_zero()));
    Ok(PolyhedralCone::from_generators(datum.t_dim(), generators))
}

/// Maximal cone: one inequality sigma_alpha >= 0 per noncompact positive
/// root, in t-coordinates.
pub fn c_max(datum: &RootDatum, sys: &PositiveSystem) -> PolyhedralCone {
    let ineqs: Vec<RVec> =
        sys.delta_p_plus(datum).map(|i| datum.roots[i].sigma.clone()).collect();
    PolyhedralCone::from_inequalities(datum.t_dim(), ineqs)
}

/// Pointedness of a cone in generator form: no nonzero nonnegative
/// combination of the generators vanishes.
pub fn is_pointed(cone: &PolyhedralCone) -> Result<bool> {
    let gens = cone.generator_form()?;
    if gens.is_empty() {
        return Ok(true);
    }
    let dim = cone.ambient_dim;
    // Feasibility of { lambda >= 0, sum lambda_i g_i = 0, sum lambda_i = 1 }.
    let mut a = RMat::zeros(dim + 1, gens.len());
    for (j, g) in gens.iter().enumerate() {
        for i in 0..dim {
            a[(i, j)] = g[i].clone();
        }
        a[(dim, j)] = rat(1);
    }
    let mut b = rvec_zero(dim + 1);
    b[dim] = rat(1);
    Ok(feasible_point(&a, &b).is_none())
}

/// Containment: every generator of `inner` satisfies every inequality of
/// `outer`, exactly. Representations are converted on demand.
pub fn contains(outer: &PolyhedralCone, inner: &PolyhedralCone) -> Result<bool> {
    let ineqs = outer.inequality_form()?;
    let gens = inner.generator_form()?;
    for g in &gens {
        for a in &ineqs {
            if rvec_dot(a, g).is_negative() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Interior membership relative to the ambient space: every inequality
/// strict. `x` is given in the cone's coordinates.
pub fn interior_member(x: &RVec, cone: &PolyhedralCone) -> Result<bool> {
    let ineqs = cone.inequality_form()?;
    Ok(ineqs.iter().all(|a| rvec_dot(a, x).is_positive()))
}

/// Admissibility of a positive system: adapted, C_min pointed, and
/// C_min contained in C_max.
pub fn is_admissible_system(
    algebra: &LieAlgebra,
    datum: &RootDatum,
    sys: &PositiveSystem,
) -> Result<bool> {
    if !sys.adapted {
        return Ok(false);
    }
    let cmin = c_min(algebra, datum, sys)?;
    if !is_pointed(&cmin)? {
        return Ok(false);
    }
    let cmax = c_max(datum, sys);
    contains(&cmax, &cmin)
}

/// Lineality space H(C) = C ∩ -C.
pub fn lineality_space(cone: &PolyhedralCone) -> Result<Vec<RVec>> {
    if let Some(ineqs) = &cone.inequalities {
        if cone.generators.is_none() {
            if ineqs.is_empty() {
                return Ok(span_basis(
                    &(0..cone.ambient_dim)
                        .map(|i| {
                            let mut v = rvec_zero(cone.ambient_dim);
                            v[i] = rat(1);
                            v
                        })
                        .collect::<Vec<_>>(),
                ));
            }
            return Ok(RMat::from_rows(ineqs.clone()).nullspace());
        }
    }
    let gens = cone.generator_form()?;
    let mut in_lineality = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let _ = i;
        let neg = rvec_neg(g);
        if cone_member(cone.ambient_dim, &neg, &gens) {
            in_lineality.push(g.clone());
        }
    }
    Ok(span_basis(&in_lineality))
}

// ---------------------------------------------------------------------------
// W_max and the Gibbs-element decision
// ---------------------------------------------------------------------------

/// Interior of the maximal invariant cone, decided on the Cartan: for
/// x in t this is interior membership in C_max. For x outside t a
/// conjugating linear map (an exact inner automorphism matrix sending x
/// into t) must be supplied.
pub fn w_max_interior_member(
    algebra: &LieAlgebra,
    datum: &RootDatum,
    sys: &PositiveSystem,
    x: &Element,
    conjugator: Option<&RMat>,
) -> Result<bool> {
    let _ = algebra;
    let y = match conjugator {
        Some(m) => Element::new(m.mul_vec(&x.coords)),
        None => x.clone(),
    };
    match datum.t_coords(&y) {
        Ok(coords) => interior_member(&coords, &c_max(datum, sys)),
        Err(_) => Err(Error::NeedsConjugation),
    }
}

/// Witness branch of a positive Gibbs decision.
#[derive(Debug, Clone)]
pub enum GibbsBranch {
    /// The algebra itself is compactly embedded: any invariant ball works.
    CompactAlgebra,
    /// An admissible quotient with q(x) interior to C_max.
    AdmissibleQuotient {
        ideal: Subspace,
        datum: RootDatum,
        system: PositiveSystem,
    },
}

#[derive(Debug, Clone)]
pub struct GibbsDecision {
    pub verdict: bool,
    pub witness: Option<GibbsBranch>,
    /// For a negative verdict: the pipeline stage that failed.
    pub failed_stage: Option<String>,
    /// Set when a compact-embedding search was inconclusive or the
    /// restricted quotient search was exhausted.
    pub inconclusive: bool,
}

/// Decision pipeline for Gibbs elements:
/// 1. compactly embedded algebras are all-positive;
/// 2. comp(g)-interior membership is necessary;
/// 3. a supplied Cartan must contain x;
/// 4. search quotients by central ideals for an admissible positive system
///    whose maximal cone contains the image of x in its interior.
pub fn is_gibbs_element(
    algebra: &LieAlgebra,
    x: &Element,
    cartan_hints: &[Subspace],
    cfg: &SpectralConfig,
) -> Result<GibbsDecision> {
    // Stage 1: compact algebra.
    let whole = is_compactly_embedded(algebra, &algebra.full_subspace(), cfg)?;
    if whole.verdict {
        return Ok(GibbsDecision {
            verdict: true,
            witness: Some(GibbsBranch::CompactAlgebra),
            failed_stage: None,
            inconclusive: false,
        });
    }

    // Stage 2: necessary ellipticity-interior condition.
    let comp = comp_interior_member(algebra, x, cfg)?;
    if !comp.verdict {
        return Ok(GibbsDecision {
            verdict: false,
            witness: None,
            failed_stage: Some("comp_interior_member".into()),
            inconclusive: comp.inconclusive,
        });
    }

    // Stage 3: a hinted Cartan containing x.
    let mut located: Option<crate::roots::CartanCandidate> = None;
    for hint in cartan_hints {
        if hint.contains(&x.coords) {
            let cand = verify_cartan(algebra, hint, cfg)?;
            if cand.accepted {
                located = Some(cand);
                break;
            }
        }
    }
    let Some(cartan) = located else {
        return Err(Error::NeedsConjugation);
    };

    // Stage 4: quotients along the lattice of central ideals.
    let center = algebra.center();
    let mut ideals: Vec<Subspace> = vec![Subspace::zero(algebra.dim)];
    let r = center.dim();
    for mask in 1u64..(1 << r) {
        let vecs: Vec<RVec> = center
            .basis
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, v)| v.clone())
            .collect();
        let mut s = Subspace::from_vectors(&vecs);
        s.is_ideal = Some(true);
        s.is_subalgebra = Some(true);
        ideals.push(s);
    }
    ideals.sort_by_key(|s| s.dim());
    ideals.dedup_by(|a, b| a.same_as(b));

    for ideal in &ideals {
        let (q_alg, proj) = algebra.quotient(ideal)?;
        if q_alg.dim == 0 {
            continue;
        }
        let qx = Element::new(proj.mul_vec(&x.coords));
        let qt_vectors: Vec<RVec> =
            cartan.subspace.basis.iter().map(|b| proj.mul_vec(b)).collect();
        let qt = Subspace::from_vectors(&qt_vectors);
        if qt.dim() == 0 {
            continue;
        }
        let qt_cand = verify_cartan(&q_alg, &qt, cfg)?;
        if !qt_cand.accepted {
            continue;
        }
        let datum = match root_decomposition(&q_alg, &qt_cand, cfg) {
            Ok(d) => d,
            Err(_) => continue,
        };
        let systems = enumerate_positive_systems(&datum, 40)?;
        for sys in systems {
            if !is_admissible_system(&q_alg, &datum, &sys)? {
                continue;
            }
            let Ok(coords) = datum.t_coords(&qx) else { continue };
            if interior_member(&coords, &c_max(&datum, &sys))? {
                return Ok(GibbsDecision {
                    verdict: true,
                    witness: Some(GibbsBranch::AdmissibleQuotient {
                        ideal: ideal.clone(),
                        datum,
                        system: sys,
                    }),
                    failed_stage: None,
                    inconclusive: false,
                });
            }
        }
    }

    Ok(GibbsDecision {
        verdict: false,
        witness: None,
        failed_stage: Some("quotient_search_exhausted".into()),
        inconclusive: true,
    })
}
