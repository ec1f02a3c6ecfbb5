//! Finite-dimensional real Lie algebras given by exact rational structure
//! constants, together with brackets, ideals, quotients, and the star
//! involution on the complexification.

use crate::error::{Error, Result};
use crate::rational::{
    in_span, rat, rvec_add, rvec_is_zero, rvec_neg, rvec_scale, rvec_sub, rvec_zero, same_span,
    span_basis, RMat, RVec, Rat,
};
use num_traits::Zero;
use serde::Deserialize;

/// Element of a Lie algebra, as coordinates over the algebra's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub coords: RVec,
}

impl Element {
    pub fn new(coords: RVec) -> Self {
        Element { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Element { coords: rvec_zero(dim) }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut coords = rvec_zero(dim);
        coords[i] = rat(1);
        Element { coords }
    }

    pub fn is_zero(&self) -> bool {
        rvec_is_zero(&self.coords)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element::new(rvec_add(&self.coords, &other.coords))
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element::new(rvec_sub(&self.coords, &other.coords))
    }

    pub fn scale(&self, c: &Rat) -> Element {
        Element::new(rvec_scale(&self.coords, c))
    }

    pub fn neg(&self) -> Element {
        Element::new(rvec_neg(&self.coords))
    }
}

/// Element of the complexification, Z = re + i·im.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexElement {
    pub re: RVec,
    pub im: RVec,
}

impl ComplexElement {
    pub fn new(re: RVec, im: RVec) -> Self {
        assert_eq!(re.len(), im.len());
        ComplexElement { re, im }
    }

    pub fn from_real(re: RVec) -> Self {
        let n = re.len();
        ComplexElement { re, im: rvec_zero(n) }
    }

    /// The involution (X + iY)* = -X + iY.
    pub fn star(&self) -> ComplexElement {
        ComplexElement { re: rvec_neg(&self.re), im: self.im.clone() }
    }

    /// Multiplication by i: i(X + iY) = -Y + iX.
    pub fn times_i(&self) -> ComplexElement {
        ComplexElement { re: rvec_neg(&self.im), im: self.re.clone() }
    }

    pub fn is_zero(&self) -> bool {
        rvec_is_zero(&self.re) && rvec_is_zero(&self.im)
    }
}

/// A linear subspace with optional verified structure flags.
#[derive(Debug, Clone)]
pub struct Subspace {
    /// Canonical (reduced echelon) basis.
    pub basis: Vec<RVec>,
    pub is_subalgebra: Option<bool>,
    pub is_ideal: Option<bool>,
}

impl Subspace {
    pub fn from_vectors(vectors: &[RVec]) -> Self {
        Subspace { basis: span_basis(vectors), is_subalgebra: None, is_ideal: None }
    }

    pub fn zero(_dim: usize) -> Self {
        Subspace { basis: Vec::new(), is_subalgebra: Some(true), is_ideal: Some(true) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        in_span(&self.basis, v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        same_span(&self.basis, &other.basis)
    }
}

/// Report from exact Jacobi verification.
#[derive(Debug, Clone)]
pub struct JacobiReport {
    pub ok: bool,
    pub first_violation: Option<(usize, usize, usize)>,
}

/// Finite-dimensional real Lie algebra over a named basis, with structure
/// constants c[i][j][k] meaning [e_i, e_j] = Σ_k c[i][j][k] e_k.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    pub dim: usize,
    pub basis_names: Vec<String>,
    structure: Vec<Vec<RVec>>,
}

impl LieAlgebra {
    /// Build from the full structure-constant tensor. Antisymmetry is
    /// required exactly; the Jacobi identity is checked separately via
    /// [`LieAlgebra::verify_jacobi`] so that callers can report violations.
    pub fn from_structure_constants(
        basis_names: Vec<String>,
        structure: Vec<Vec<RVec>>,
    ) -> Result<Self> {
        let dim = basis_names.len();
        if structure.len() != dim || structure.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: structure.len() });
        }
        for i in 0..dim {
            for j in 0..dim {
                if structure[i][j].len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: structure[i][j].len(),
                    });
                }
                for k in 0..dim {
                    if structure[i][j][k] != -structure[j][i][k].clone() {
                        return Err(Error::Antisymmetry(i, j, k));
                    }
                }
            }
        }
        Ok(LieAlgebra { dim, basis_names, structure })
    }

    /// Build from sparse brackets `[e_i, e_j] = Σ terms` given only for
    /// i < j; antisymmetric completion is implied.
    pub fn from_sparse(
        basis_names: Vec<String>,
        brackets: &[(usize, usize, Vec<(usize, Rat)>)],
    ) -> Result<Self> {
        let dim = basis_names.len();
        let mut structure = vec![vec![rvec_zero(dim); dim]; dim];
        for (i, j, terms) in brackets {
            if *i >= *j {
                return Err(Error::Invalid(format!(
                    "sparse bracket indices must satisfy i < j, got ({i}, {j})"
                )));
            }
            if *i >= dim || *j >= dim {
                return Err(Error::DimensionMismatch { expected: dim, got: (*j).max(*i) + 1 });
            }
            for (k, c) in terms {
                if *k >= dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: *k + 1 });
                }
                structure[*i][*j][*k] = c.clone();
                structure[*j][*i][*k] = -c.clone();
            }
        }
        LieAlgebra::from_structure_constants(basis_names, structure)
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.structure[i][j][k]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.dim, i)
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|n| n == name)
    }

    fn check_dim(&self, e: &Element) -> Result<()> {
        if e.coords.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: e.coords.len() });
        }
        Ok(())
    }

    /// The Lie bracket [x, y], exact.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let mut out = rvec_zero(self.dim);
        for i in 0..self.dim {
            if x.coords[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y.coords[j].is_zero() {
                    continue;
                }
                let f = &x.coords[i] * &y.coords[j];
                for k in 0..self.dim {
                    let c = &self.structure[i][j][k];
                    if !c.is_zero() {
                        out[k] += c * &f;
                    }
                }
            }
        }
        Ok(Element::new(out))
    }

    /// Bracket extended complex-bilinearly to the complexification.
    pub fn bracket_complex(
        &self,
        x: &ComplexElement,
        y: &ComplexElement,
    ) -> Result<ComplexElement> {
        let xr = Element::new(x.re.clone());
        let xi = Element::new(x.im.clone());
        let yr = Element::new(y.re.clone());
        let yi = Element::new(y.im.clone());
        let rr = self.bracket(&xr, &yr)?;
        let ii = self.bracket(&xi, &yi)?;
        let ri = self.bracket(&xr, &yi)?;
        let ir = self.bracket(&xi, &yr)?;
        Ok(ComplexElement::new(rvec_sub(&rr.coords, &ii.coords), rvec_add(&ri.coords, &ir.coords)))
    }

    /// Matrix of ad(x): column j holds the coordinates of [x, e_j].
    pub fn ad_matrix(&self, x: &Element) -> Result<RMat> {
        self.check_dim(x)?;
        let cols: Vec<RVec> = (0..self.dim)
            .map(|j| self.bracket(x, &self.basis_element(j)).map(|e| e.coords))
            .collect::<Result<_>>()?;
        Ok(RMat::from_cols(cols))
    }

    /// Exact check of the Jacobi identity over all basis triples.
    pub fn verify_jacobi(&self) -> JacobiReport {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let ei = self.basis_element(i);
                    let ej = self.basis_element(j);
                    let ek = self.basis_element(k);
                    let a = self.bracket(&ei, &self.bracket(&ej, &ek).unwrap()).unwrap();
                    let b = self.bracket(&ej, &self.bracket(&ek, &ei).unwrap()).unwrap();
                    let c = self.bracket(&ek, &self.bracket(&ei, &ej).unwrap()).unwrap();
                    let s = a.add(&b).add(&c);
                    if !s.is_zero() {
                        return JacobiReport { ok: false, first_violation: Some((i, j, k)) };
                    }
                }
            }
        }
        JacobiReport { ok: true, first_violation: None }
    }

    /// Centralizer ker(ad(x)), flagged as a verified subalgebra.
    pub fn centralizer(&self, x: &Element) -> Result<Subspace> {
        let ad = self.ad_matrix(x)?;
        let mut s = Subspace::from_vectors(&ad.nullspace());
        s.is_subalgebra = Some(self.is_subalgebra(&s)?);
        Ok(s)
    }

    /// Center: joint kernel of all ad(e_i).
    pub fn center(&self) -> Subspace {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            let ad = self.ad_matrix(&self.basis_element(i)).unwrap();
            for r in 0..ad.rows {
                rows.push(ad.row(r).to_vec());
            }
        }
        let mut s = if rows.is_empty() {
            Subspace::from_vectors(&(0..self.dim).map(|i| Element::basis(self.dim, i).coords).collect::<Vec<_>>())
        } else {
            Subspace::from_vectors(&RMat::from_rows(rows).nullspace())
        };
        s.is_subalgebra = Some(true);
        s.is_ideal = Some(true);
        s
    }

    /// Is the subspace closed under the bracket? Exact.
    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        for a in &s.basis {
            for b in &s.basis {
                let br = self.bracket(&Element::new(a.clone()), &Element::new(b.clone()))?;
                if !s.contains(&br.coords) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Is the subspace an ideal? Exact.
    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        for i in 0..self.dim {
            let ei = self.basis_element(i);
            for b in &s.basis {
                let br = self.bracket(&ei, &Element::new(b.clone()))?;
                if !s.contains(&br.coords) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Smallest ideal containing `s`: iterate brackets with the basis
    /// until the dimension stabilizes.
    pub fn ideal_closure(&self, s: &Subspace) -> Result<Subspace> {
        let mut current: Vec<RVec> = s.basis.clone();
        loop {
            let mut next = current.clone();
            for i in 0..self.dim {
                let ei = self.basis_element(i);
                for b in &current {
                    let br = self.bracket(&ei, &Element::new(b.clone()))?;
                    if !br.is_zero() {
                        next.push(br.coords);
                    }
                }
            }
            let next = span_basis(&next);
            if next.len() == span_basis(&current).len() {
                let mut out = Subspace::from_vectors(&next);
                out.is_subalgebra = Some(true);
                out.is_ideal = Some(true);
                return Ok(out);
            }
            current = next;
        }
    }

    /// Quotient by a verified ideal. Returns the quotient algebra together
    /// with the projection matrix (quotient coordinates = P · ambient
    /// coordinates). The projection is verified to be a Lie homomorphism.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieAlgebra, RMat)> {
        if !self.is_ideal(ideal)? {
            return Err(Error::NotAnIdeal(0, 0));
        }
        // Choose complement representatives: standard basis vectors whose
        // addition increases the span of the ideal basis.
        let mut span: Vec<RVec> = ideal.basis.clone();
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..self.dim {
            let e = Element::basis(self.dim, i).coords;
            if !in_span(&span, &e) {
                span.push(e);
                span = span_basis(&span);
                reps.push(i);
            }
        }
        let qdim = reps.len();
        // Change of basis: ambient coords -> (ideal part, complement part).
        // Columns: ideal basis then the chosen representatives.
        let mut cols: Vec<RVec> = ideal.basis.clone();
        for &r in &reps {
            cols.push(Element::basis(self.dim, r).coords);
        }
        let b = RMat::from_cols(cols);
        // Projection: solve B * y = x, keep the last qdim coordinates.
        let mut proj_rows: Vec<RVec> = Vec::with_capacity(qdim);
        // Invert B exactly by solving against each standard basis vector.
        let mut binv_cols: Vec<RVec> = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let e = Element::basis(self.dim, i).coords;
            let y = b
                .solve(&e)
                .ok_or_else(|| Error::Invalid("complement construction failed".into()))?;
            binv_cols.push(y);
        }
        let binv = RMat::from_cols(binv_cols);
        for r in 0..qdim {
            proj_rows.push(binv.row(ideal.dim() + r).to_vec());
        }
        let proj = if proj_rows.is_empty() {
            RMat::zeros(0, self.dim)
        } else {
            RMat::from_rows(proj_rows)
        };

        let names: Vec<String> =
            reps.iter().map(|&r| self.basis_names[r].clone()).collect();
        let mut structure = vec![vec![rvec_zero(qdim); qdim]; qdim];
        for (a, &ra) in reps.iter().enumerate() {
            for (c, &rc) in reps.iter().enumerate() {
                let br =
                    self.bracket(&self.basis_element(ra), &self.basis_element(rc))?;
                structure[a][c] = proj.mul_vec(&br.coords);
            }
        }
        let q = LieAlgebra::from_structure_constants(names, structure)?;
        // The projection must be a homomorphism: q([x, y]) = [q(x), q(y)].
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let br = self.bracket(&self.basis_element(i), &self.basis_element(j))?;
                let lhs = proj.mul_vec(&br.coords);
                let qi = Element::new(proj.mul_vec(&self.basis_element(i).coords));
                let qj = Element::new(proj.mul_vec(&self.basis_element(j).coords));
                let rhs = q.bracket(&qi, &qj)?.coords;
                if lhs != rhs {
                    return Err(Error::Invalid(
                        "quotient projection is not a Lie homomorphism".into(),
                    ));
                }
            }
        }
        Ok((q, proj))
    }

    /// The whole algebra as a subspace.
    pub fn full_subspace(&self) -> Subspace {
        let basis: Vec<RVec> = (0..self.dim).map(|i| Element::basis(self.dim, i).coords).collect();
        Subspace { basis, is_subalgebra: Some(true), is_ideal: Some(true) }
    }

    /// Parse a linear combination of basis names, e.g. `"p2+q2"`,
    /// `"z - 2*p"`, `"3/2*q"`.
    pub fn parse_combination(&self, expr: &str) -> Result<Element> {
        let mut coords = rvec_zero(self.dim);
        let cleaned: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty element expression".into()));
        }
        // Split into signed terms.
        let mut terms: Vec<(Rat, String)> = Vec::new();
        let mut sign = rat(1);
        let mut cur = String::new();
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                terms.push((sign.clone(), cur.clone()));
                cur.clear();
                sign = if ch == '-' { rat(-1) } else { rat(1) };
            } else if (ch == '+' || ch == '-') && cur.is_empty() {
                sign = if ch == '-' { -sign } else { sign };
            } else {
                cur.push(ch);
            }
        }
        if !cur.is_empty() {
            terms.push((sign, cur));
        }
        for (sgn, term) in terms {
            let (coef, name) = match term.split_once('*') {
                Some((c, n)) => (parse_rat(c)?, n.to_string()),
                None => (rat(1), term),
            };
            let idx = self
                .basis_index(&name)
                .ok_or_else(|| Error::Parse(format!("unknown basis name `{name}`")))?;
            coords[idx] += sgn.clone() * coef;
        }
        Ok(Element::new(coords))
    }
}

/// Parse a rational like `"3"`, `"-1/2"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
            let d: i64 = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
            if d == 0 {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(crate::rational::ratio(n, d))
        }
        None => {
            let n: i64 = s.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
            Ok(rat(n))
        }
    }
}

/// Parse a comma-separated coordinate vector of rationals.
pub fn parse_coords(s: &str, dim: usize) -> Result<Element> {
    let coords: Vec<Rat> =
        s.split(',').map(parse_rat).collect::<Result<_>>()?;
    if coords.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: coords.len() });
    }
    Ok(Element::new(coords))
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
struct AlgebraFile {
    dim: usize,
    basis: Vec<String>,
    /// Sparse triples [i, j, k, num, den] with i < j; antisymmetric
    /// completion implied.
    constants: Vec<[i64; 5]>,
}

/// Parse the TOML algebra format. The loader rejects inputs that fail the
/// exact Jacobi check.
pub fn algebra_from_toml(text: &str) -> Result<LieAlgebra> {
    let file: AlgebraFile =
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.basis.len() != file.dim {
        return Err(Error::Parse(format!(
            "dim = {} but {} basis names given",
            file.dim,
            file.basis.len()
        )));
    }
    let mut brackets: Vec<(usize, usize, Vec<(usize, Rat)>)> = Vec::new();
    for [i, j, k, num, den] in &file.constants {
        if *den == 0 {
            return Err(Error::Parse("zero denominator in structure constant".into()));
        }
        let (i, j, k) = (*i as usize, *j as usize, *k as usize);
        if i >= j {
            return Err(Error::Parse(format!(
                "constants entries require i < j, got ({i}, {j})"
            )));
        }
        match brackets.iter_mut().find(|(a, b, _)| *a == i && *b == j) {
            Some((_, _, terms)) => terms.push((k, crate::rational::ratio(*num, *den))),
            None => brackets.push((i, j, vec![(k, crate::rational::ratio(*num, *den))])),
        }
    }
    let alg = LieAlgebra::from_sparse(file.basis, &brackets)?;
    let report = alg.verify_jacobi();
    if let Some((i, j, k)) = report.first_violation {
        return Err(Error::JacobiViolation(i, j, k));
    }
    Ok(alg)
}

// ---------------------------------------------------------------------------
// Bundled algebra library
// ---------------------------------------------------------------------------

/// Three-dimensional Heisenberg algebra, basis {p, q, z}, [p, q] = z.
pub fn heisenberg3() -> LieAlgebra {
    LieAlgebra::from_sparse(
        vec!["p".into(), "q".into(), "z".into()],
        &[(0, 1, vec![(2, rat(1))])],
    )
    .unwrap()
}

/// Abelian algebra of the given dimension.
pub fn abelian(n: usize) -> LieAlgebra {
    let names = (0..n).map(|i| format!("a{i}")).collect();
    LieAlgebra::from_sparse(names, &[]).unwrap()
}

/// su(2), basis {x1, x2, x3} with [x1, x2] = x3 and cyclic.
pub fn su2() -> LieAlgebra {
    LieAlgebra::from_sparse(
        vec!["x1".into(), "x2".into(), "x3".into()],
        &[
            (0, 1, vec![(2, rat(1))]),
            (1, 2, vec![(0, rat(1))]),
            (0, 2, vec![(1, rat(-1))]),
        ],
    )
    .unwrap()
}

/// sl(2, R), basis {h, e, f}: [h,e] = 2e, [h,f] = -2f, [e,f] = h.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_sparse(
        vec!["h".into(), "e".into(), "f".into()],
        &[
            (0, 1, vec![(1, rat(2))]),
            (0, 2, vec![(2, rat(-2))]),
            (1, 2, vec![(0, rat(1))]),
        ],
    )
    .unwrap()
}

/// The 6-dimensional Jacobi algebra hsp(R^2): polynomials of degree <= 2
/// on the symplectic plane under the Poisson bracket
/// {f, g} = df/dp dg/dq - df/dq dg/dp, basis {z, p, q, p2, q2, pq}.
///
/// Nonzero brackets on the basis:
///   [p, q] = z            [p2, q] = 2p          [q2, p] = -2q
///   [p2, q2] = 4pq        [p2, pq] = 2p2        [q2, pq] = -2q2
///   [pq, p] = -p          [pq, q] = q
pub fn jacobi_hsp2() -> LieAlgebra {
    let names = vec!["z".into(), "p".into(), "q".into(), "p2".into(), "q2".into(), "pq".into()];
    // Indices: z=0, p=1, q=2, p2=3, q2=4, pq=5.
    LieAlgebra::from_sparse(
        names,
        &[
            (1, 2, vec![(0, rat(1))]),       // [p, q] = z
            (2, 3, vec![(1, rat(-2))]),      // [q, p2] = -2p
            (1, 4, vec![(2, rat(2))]),       // [p, q2] = 2q
            (3, 4, vec![(5, rat(4))]),       // [p2, q2] = 4pq
            (3, 5, vec![(3, rat(2))]),       // [p2, pq] = 2p2
            (4, 5, vec![(4, rat(-2))]),      // [q2, pq] = -2q2
            (1, 5, vec![(1, rat(1))]),       // [p, pq] = p
            (2, 5, vec![(2, rat(-1))]),      // [q, pq] = -q
        ],
    )
    .unwrap()
}

/// Direct sum: block-diagonal structure constants, names prefixed to stay
/// unique.
pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
    let dim = a.dim + b.dim;
    let mut names: Vec<String> = a.basis_names.iter().map(|n| format!("l.{n}")).collect();
    names.extend(b.basis_names.iter().map(|n| format!("r.{n}")));
    let mut structure = vec![vec![rvec_zero(dim); dim]; dim];
    for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                structure[i][j][k] = a.structure[i][j][k].clone();
            }
        }
    }
    for i in 0..b.dim {
        for j in 0..b.dim {
            for k in 0..b.dim {
                structure[a.dim + i][a.dim + j][a.dim + k] = b.structure[i][j][k].clone();
            }
        }
    }
    LieAlgebra::from_structure_constants(names, structure).unwrap()
}

/// Look up a bundled algebra by name.
pub fn bundled(name: &str) -> Option<LieAlgebra> {
    match name {
        "h3" | "heisenberg3" => Some(heisenberg3()),
        "su2" => Some(su2()),
        "sl2" => Some(sl2()),
        "hsp2" | "jacobi" => Some(jacobi_hsp2()),
        "abelian2" => Some(abelian(2)),
        "abelian3" => Some(abelian(3)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn heisenberg_brackets() {
        let h3 = heisenberg3();
        let p = h3.parse_combination("p").unwrap();
        let q = h3.parse_combination("q").unwrap();
        let z = h3.parse_combination("z").unwrap();
        assert_eq!(h3.bracket(&p, &q).unwrap(), z);
        assert!(h3.bracket(&p, &z).unwrap().is_zero());
        assert!(h3.bracket(&p, &p).unwrap().is_zero());
    }

    #[test]
    fn sl2_brackets() {
        let g = sl2();
        let h = g.parse_combination("h").unwrap();
        let e = g.parse_combination("e").unwrap();
        assert_eq!(g.bracket(&h, &e).unwrap(), e.scale(&rat(2)));
    }

    #[test]
    fn ad_matrix_examples() {
        let h3 = heisenberg3();
        assert!(h3.ad_matrix(&Element::zero(3)).unwrap().is_zero());
        let z = h3.parse_combination("z").unwrap();
        assert!(h3.ad_matrix(&z).unwrap().is_zero());
        let g = sl2();
        let h = g.parse_combination("h").unwrap();
        let ad = g.ad_matrix(&h).unwrap();
        // diag(0, 2, -2) in basis (h, e, f)
        let mut expect = RMat::zeros(3, 3);
        expect[(1, 1)] = rat(2);
        expect[(2, 2)] = rat(-2);
        assert_eq!(ad, expect);
    }

    #[test]
    fn jacobi_reports() {
        assert!(heisenberg3().verify_jacobi().ok);
        assert!(abelian(4).verify_jacobi().ok);
        assert!(su2().verify_jacobi().ok);
        assert!(jacobi_hsp2().verify_jacobi().ok);
        // Perturb one constant of sl(2, R): [e, f] = h + e breaks Jacobi.
        let bad = LieAlgebra::from_sparse(
            vec!["h".into(), "e".into(), "f".into()],
            &[
                (0, 1, vec![(1, rat(2))]),
                (0, 2, vec![(2, rat(-2))]),
                (1, 2, vec![(0, rat(1)), (1, rat(1))]),
            ],
        )
        .unwrap();
        let report = bad.verify_jacobi();
        assert!(!report.ok);
        assert_eq!(report.first_violation, Some((0, 1, 2)));
    }

    #[test]
    fn centralizer_examples() {
        let h3 = heisenberg3();
        let whole = h3.centralizer(&Element::zero(3)).unwrap();
        assert_eq!(whole.dim(), 3);
        let p = h3.parse_combination("p").unwrap();
        let c = h3.centralizer(&p).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&p.coords));
        assert!(c.contains(&h3.parse_combination("z").unwrap().coords));

        let g = sl2();
        let u = g.parse_combination("e-f").unwrap();
        let c = g.centralizer(&u).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&u.coords));
    }

    #[test]
    fn center_examples() {
        let h3 = heisenberg3();
        let z = h3.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&h3.parse_combination("z").unwrap().coords));
        assert_eq!(sl2().center().dim(), 0);
        assert_eq!(abelian(3).center().dim(), 3);
    }

    #[test]
    fn ideal_closure_examples() {
        let h3 = heisenberg3();
        let zero = h3.ideal_closure(&Subspace::zero(3)).unwrap();
        assert_eq!(zero.dim(), 0);
        let p = h3.parse_combination("p").unwrap();
        let s = Subspace::from_vectors(&[p.coords.clone()]);
        let closed = h3.ideal_closure(&s).unwrap();
        assert_eq!(closed.dim(), 2);
        assert!(closed.contains(&h3.parse_combination("z").unwrap().coords));
        let full = h3.ideal_closure(&h3.full_subspace()).unwrap();
        assert_eq!(full.dim(), 3);
    }

    #[test]
    fn quotient_examples() {
        let h3 = heisenberg3();
        let (q0, _) = h3.quotient(&Subspace::zero(3)).unwrap();
        assert_eq!(q0.dim, 3);
        let z = Subspace::from_vectors(&[h3.parse_combination("z").unwrap().coords]);
        let mut z = z;
        z.is_ideal = Some(true);
        let (q, proj) = h3.quotient(&z).unwrap();
        assert_eq!(q.dim, 2);
        // h3 / span{z} is abelian.
        for i in 0..2 {
            for j in 0..2 {
                assert!(q
                    .bracket(&q.basis_element(i), &q.basis_element(j))
                    .unwrap()
                    .is_zero());
            }
        }
        // Projection kills z.
        assert!(rvec_is_zero(
            &proj.mul_vec(&h3.parse_combination("z").unwrap().coords)
        ));
        let (qfull, _) = h3.quotient(&h3.full_subspace()).unwrap();
        assert_eq!(qfull.dim, 0);
        // Quotient by a non-ideal errors.
        let not_ideal = Subspace::from_vectors(&[h3.parse_combination("p").unwrap().coords]);
        assert!(h3.quotient(&not_ideal).is_err());
    }

    #[test]
    fn toml_roundtrip_and_rejection() {
        let text = r#"
dim = 3
basis = ["p", "q", "z"]
constants = [[0, 1, 2, 1, 1]]
"#;
        let alg = algebra_from_toml(text).unwrap();
        assert_eq!(alg.dim, 3);
        assert_eq!(alg.structure_constant(0, 1, 2), &rat(1));
        assert_eq!(alg.structure_constant(1, 0, 2), &rat(-1));

        // sl(2,R) with one corrupted constant fails the Jacobi check.
        let bad = r#"
dim = 3
basis = ["h", "e", "f"]
constants = [[0, 1, 1, 2, 1], [0, 2, 2, -2, 1], [1, 2, 0, 1, 1], [1, 2, 1, 1, 1]]
"#;
        match algebra_from_toml(bad) {
            Err(Error::JacobiViolation(..)) => {}
            other => panic!("expected Jacobi rejection, got {other:?}"),
        }

        assert!(algebra_from_toml("").is_err());
    }

    #[test]
    fn star_is_involution() {
        let z = ComplexElement::new(vec![rat(1), rat(2)], vec![ratio(1, 2), rat(0)]);
        assert_eq!(z.star().star(), z);
    }

    #[test]
    fn parse_combination_expressions() {
        let g = jacobi_hsp2();
        let x = g.parse_combination("z + p2 - 1/2*q2").unwrap();
        assert_eq!(x.coords[0], rat(1));
        assert_eq!(x.coords[3], rat(1));
        assert_eq!(x.coords[4], ratio(-1, 2));
        assert!(g.parse_combination("nope").is_err());
    }

    #[test]
    fn direct_sum_blocks() {
        let s = direct_sum(&su2(), &heisenberg3());
        assert_eq!(s.dim, 6);
        assert!(s.verify_jacobi().ok);
        // Cross-brackets vanish.
        let x = s.basis_element(0);
        let y = s.basis_element(4);
        assert!(s.bracket(&x, &y).unwrap().is_zero());
        assert_eq!(s.center().dim(), 1);
    }
}
