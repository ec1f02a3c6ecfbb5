//! Property tests for the structural invariants: exact algebra laws,
//! spectral scaling invariance, and cone/trace coherence on the bundled
//! algebras.

use gibbslie_core::algebra::{
    heisenberg3, jacobi_hsp2, sl2, su2, ComplexElement, Element, LieAlgebra, Subspace,
};
use gibbslie_core::hwmods::WeightModule;
use gibbslie_core::rational::{rat, ratio, Rat};
use gibbslie_core::spectral::{ellipticity_ideal, is_elliptic, SpectralConfig};
use num_traits::Zero;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn element(dim: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec(small_rat(), dim).prop_map(Element::new)
}

fn bundled() -> impl Strategy<Value = LieAlgebra> {
    prop_oneof![
        Just(heisenberg3()),
        Just(su2()),
        Just(sl2()),
        Just(jacobi_hsp2()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi_identity_on_random_triples(
        g in bundled(),
        seed in prop::collection::vec(small_rat(), 18),
    ) {
        let n = g.dim;
        let x = Element::new(seed[..n.min(6)].iter().cloned().chain(std::iter::repeat(Rat::zero())).take(n).collect());
        let y = Element::new(seed[6..6 + n.min(6)].iter().cloned().chain(std::iter::repeat(Rat::zero())).take(n).collect());
        let z = Element::new(seed[12..12 + n.min(6)].iter().cloned().chain(std::iter::repeat(Rat::zero())).take(n).collect());
        let a = g.bracket(&x, &g.bracket(&y, &z).unwrap()).unwrap();
        let b = g.bracket(&y, &g.bracket(&z, &x).unwrap()).unwrap();
        let c = g.bracket(&z, &g.bracket(&x, &y).unwrap()).unwrap();
        prop_assert!(a.add(&b).add(&c).is_zero());
        // Antisymmetry on the same data.
        let xy = g.bracket(&x, &y).unwrap();
        let yx = g.bracket(&y, &x).unwrap();
        prop_assert!(xy.add(&yx).is_zero());
    }

    #[test]
    fn ad_is_a_homomorphism(g in bundled(), x in element(6), y in element(6)) {
        let n = g.dim;
        let x = Element::new(x.coords[..n].to_vec());
        let y = Element::new(y.coords[..n].to_vec());
        let ad_bracket = g.ad_matrix(&g.bracket(&x, &y).unwrap()).unwrap();
        let ax = g.ad_matrix(&x).unwrap();
        let ay = g.ad_matrix(&y).unwrap();
        let commutator = ax.mul(&ay).sub(&ay.mul(&ax));
        prop_assert_eq!(ad_bracket, commutator);
    }

    #[test]
    fn star_antihomomorphism(g in bundled(), raw in prop::collection::vec(small_rat(), 24)) {
        let n = g.dim;
        let z = ComplexElement::new(raw[..n].to_vec(), raw[6..6 + n].to_vec());
        let w = ComplexElement::new(raw[12..12 + n].to_vec(), raw[18..18 + n].to_vec());
        // [Z*, W*] = -[Z, W]*
        let lhs = g.bracket_complex(&z.star(), &w.star()).unwrap();
        let rhs = {
            let zw = g.bracket_complex(&z, &w).unwrap();
            let s = zw.star();
            ComplexElement::new(
                s.re.iter().map(|x| -x).collect(),
                s.im.iter().map(|x| -x).collect(),
            )
        };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ideal_closure_idempotent_and_monotone(
        g in bundled(),
        a in element(6),
        b in element(6),
    ) {
        let n = g.dim;
        let a = Element::new(a.coords[..n].to_vec());
        let b = Element::new(b.coords[..n].to_vec());
        let small = Subspace::from_vectors(&[a.coords.clone()]);
        let large = Subspace::from_vectors(&[a.coords.clone(), b.coords.clone()]);
        let ca = g.ideal_closure(&small).unwrap();
        let cab = g.ideal_closure(&large).unwrap();
        // Idempotent.
        let caa = g.ideal_closure(&ca).unwrap();
        prop_assert!(caa.same_as(&ca));
        // Monotone.
        prop_assert!(cab.contains_subspace(&ca));
        // Output is an ideal, exactly.
        prop_assert!(g.is_ideal(&ca).unwrap());
    }

    #[test]
    fn ellipticity_scaling_invariance(
        g in bundled(),
        x in element(6),
        c in (1i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d)),
        flip in any::<bool>(),
    ) {
        let n = g.dim;
        let x = Element::new(x.coords[..n].to_vec());
        let c = if flip { -c } else { c };
        let cfg = SpectralConfig::default();
        let a = is_elliptic(&g, &x, &cfg).unwrap().verdict;
        let b = is_elliptic(&g, &x.scale(&c), &cfg).unwrap().verdict;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn trace_class_certificate_depth_invariant(
        lambda in -6i64..=-1,
        theta_num in -8i64..=8,
    ) {
        if theta_num == 0 {
            return Ok(());
        }
        let theta = ratio(theta_num, 4);
        let verdicts: Vec<bool> = [3usize, 30, 300]
            .iter()
            .map(|&d| WeightModule::sl2_verma(rat(lambda), rat(2), d).trace_class(&[theta.clone()]))
            .collect();
        prop_assert!(verdicts.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn ellipticity_ideal_trivial_iff_elliptic() {
    let cfg = SpectralConfig::default();
    for g in [heisenberg3(), su2(), sl2(), jacobi_hsp2()] {
        let mut probes: Vec<Element> = (0..g.dim).map(|i| g.basis_element(i)).collect();
        // A few combinations worth probing.
        probes.push(Element::new(
            (0..g.dim).map(|i| rat(if i % 2 == 0 { 1 } else { -1 })).collect(),
        ));
        if let (Some(a), Some(b)) = (g.basis_index("e"), g.basis_index("f")) {
            let mut v = vec![rat(0); g.dim];
            v[a] = rat(1);
            v[b] = rat(-1);
            probes.push(Element::new(v)); // e - f in sl2
        }
        for x in probes {
            let elliptic = is_elliptic(&g, &x, &cfg).unwrap().verdict;
            let ideal = ellipticity_ideal(&g, &x, &cfg).unwrap();
            assert_eq!(
                elliptic,
                ideal.dim() == 0,
                "algebra dim {} element {:?}",
                g.dim,
                x.coords
            );
            // The output is an ideal and the quotient action is elliptic.
            assert!(g.is_ideal(&ideal).unwrap());
            let (q, proj) = g.quotient(&ideal).unwrap();
            if q.dim > 0 {
                let xq = Element::new(proj.mul_vec(&x.coords));
                assert!(is_elliptic(&q, &xq, &cfg).unwrap().verdict);
            }
        }
    }
}

#[test]
fn comp_interior_implies_elliptic() {
    use gibbslie_core::spectral::comp_interior_member;
    let cfg = SpectralConfig::default();
    for g in [heisenberg3(), su2(), sl2(), jacobi_hsp2()] {
        for i in 0..g.dim {
            let x = g.basis_element(i);
            let comp = comp_interior_member(&g, &x, &cfg).unwrap();
            if comp.verdict {
                assert!(is_elliptic(&g, &x, &cfg).unwrap().verdict);
            }
        }
    }
}

#[test]
fn root_classification_invariant_under_basis_rescaling() {
    use gibbslie_core::roots::{root_decomposition, verify_cartan};
    let cfg = SpectralConfig::default();
    let g = jacobi_hsp2();
    let t = Subspace::from_vectors(&[
        g.parse_combination("z").unwrap().coords,
        g.parse_combination("p2+q2").unwrap().coords,
    ]);
    let cand = verify_cartan(&g, &t, &cfg).unwrap();
    let datum = root_decomposition(&g, &cand, &cfg).unwrap();
    for root in &datum.roots {
        for scale in [rat(3), ratio(-5, 2), ratio(1, 7)] {
            let rescaled: Vec<ComplexElement> = root
                .space_basis
                .iter()
                .map(|z| {
                    ComplexElement::new(
                        z.re.iter().map(|x| x * &scale).collect(),
                        z.im.iter().map(|x| x * &scale).collect(),
                    )
                })
                .collect();
            // Reclassify by recomputing s-values on the rescaled basis:
            // the sign of alpha([Z, Z*]) is scale-invariant (|c|^2 factor).
            for z in &rescaled {
                let a = Element::new(z.re.clone());
                let b = Element::new(z.im.clone());
                let m = g.bracket(&a, &b).unwrap().scale(&rat(-2));
                let coords = datum.t_coords(&m).unwrap();
                let s = -gibbslie_core::rational::rvec_dot(&root.sigma, &coords);
                use gibbslie_core::roots::RootType;
                match root.root_type {
                    RootType::NS => assert!(s < Rat::zero()),
                    RootType::CS => assert!(s > Rat::zero()),
                    RootType::N | RootType::A => assert!(s.is_zero()),
                }
            }
        }
    }
}

#[test]
fn gibbs_verdict_scaling_invariance() {
    use gibbslie_core::cones::is_gibbs_element;
    let cfg = SpectralConfig::default();
    let g = sl2();
    let t = Subspace::from_vectors(&[g.parse_combination("e-f").unwrap().coords]);
    for name in ["e-f", "h", "e"] {
        let x = g.parse_combination(name).unwrap();
        let base = is_gibbs_element(&g, &x, &[t.clone()], &cfg).unwrap().verdict;
        for c in [rat(2), ratio(1, 3), rat(7)] {
            let scaled = is_gibbs_element(&g, &x.scale(&c), &[t.clone()], &cfg)
                .unwrap()
                .verdict;
            assert_eq!(base, scaled, "{name} scaled by {c}");
        }
    }
}

#[test]
fn cmax_interior_implies_comp_interior_on_bundled() {
    use gibbslie_core::cones::{c_max, interior_member};
    use gibbslie_core::roots::{positive_system, root_decomposition, verify_cartan};
    use gibbslie_core::spectral::comp_interior_member;
    let cfg = SpectralConfig::default();

    // sl(2, R) and the symplectic example, over rational grids in t.
    let g = sl2();
    let t = Subspace::from_vectors(&[g.parse_combination("e-f").unwrap().coords]);
    let cand = verify_cartan(&g, &t, &cfg).unwrap();
    let datum = root_decomposition(&g, &cand, &cfg).unwrap();
    let sys = positive_system(&datum, &g.parse_combination("e-f").unwrap()).unwrap();
    let cmax = c_max(&datum, &sys);
    for k in [-3i64, -1, 1, 2, 5] {
        let x = g.parse_combination("e-f").unwrap().scale(&rat(k));
        let coords = datum.t_coords(&x).unwrap();
        if interior_member(&coords, &cmax).unwrap() {
            assert!(comp_interior_member(&g, &x, &cfg).unwrap().verdict);
        }
    }

    let g = jacobi_hsp2();
    let t = Subspace::from_vectors(&[
        g.parse_combination("z").unwrap().coords,
        g.parse_combination("p2+q2").unwrap().coords,
    ]);
    let cand = verify_cartan(&g, &t, &cfg).unwrap();
    let datum = root_decomposition(&g, &cand, &cfg).unwrap();
    let x0 = g.parse_combination("z + p2 + q2").unwrap();
    let sys = positive_system(&datum, &x0).unwrap();
    let cmax = c_max(&datum, &sys);
    for (s, c) in [(-2i64, 1i64), (0, 1), (3, 2), (1, -1), (2, 0)] {
        let x = g
            .parse_combination(&format!("{s}*z + {c}*p2 + {c}*q2"))
            .unwrap();
        let coords = datum.t_coords(&x).unwrap();
        if interior_member(&coords, &cmax).unwrap() {
            assert!(
                comp_interior_member(&g, &x, &cfg).unwrap().verdict,
                "s={s} c={c}"
            );
        }
    }
}
