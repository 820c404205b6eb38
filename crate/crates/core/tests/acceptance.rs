//! End-to-end acceptance suite.
//!
//! Each test checks one numbered criterion exactly (no tolerances: all
//! arithmetic is exact) and prints a `PASS` line; run with
//! `cargo test -p qh-core --test acceptance -- --nocapture` to see them.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qh_core::novikov::rational;
use qh_core::qring::{
    multiplication_table, parse_element, qmul, try_inverse, unit_order, QuantumElement, UnitOrder,
};
use qh_core::seidel::{
    check_homomorphism, diagonal_leading_term, diff_elements, lift_trivial_factor,
    mcduff_tolman_element, seidel_circle, verify_thm1, verify_thm2, CircleActionData,
    SeidelElement,
};
use qh_core::{catalog, product_manifold, Model, NovikovScalar, ProductModel};

fn pass(line: &str) {
    println!("PASS  {line}");
}

fn random_scalar(rng: &mut StdRng) -> NovikovScalar {
    let mut s = NovikovScalar::zero();
    for _ in 0..rng.gen_range(0..=3) {
        s = &s
            + &NovikovScalar::monomial(
                rng.gen_range(-9i64..=9),
                rng.gen_range(-3i64..=3),
                rational(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=3)),
            );
    }
    s
}

fn random_homogeneous(model: &Model, degree: i64, rng: &mut StdRng) -> QuantumElement {
    let mut terms = Vec::new();
    for (idx, g) in model.basis().iter().enumerate() {
        let gap = degree - g.degree as i64;
        if gap % 2 != 0 {
            continue;
        }
        for _ in 0..rng.gen_range(0..=1) {
            terms.push((
                idx,
                NovikovScalar::monomial(
                    rng.gen_range(-4i64..=4),
                    gap / 2,
                    rational(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=2)),
                ),
            ));
        }
    }
    QuantumElement::from_terms(model.clone(), terms)
}

#[test]
fn criterion_01_novikov_ring_axioms() {
    let mut rng = StdRng::seed_from_u64(0xA1);
    const TRIPLES: usize = 1000;
    let mut checked = [0usize; 8];
    for _ in 0..TRIPLES {
        let a = random_scalar(&mut rng);
        let b = random_scalar(&mut rng);
        let c = random_scalar(&mut rng);

        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c), "additive associativity");
        checked[0] += 1;
        assert_eq!(
            &(&a * &b) * &c,
            &a * &(&b * &c),
            "multiplicative associativity"
        );
        checked[1] += 1;
        assert_eq!(&a + &b, &b + &a, "additive commutativity");
        checked[2] += 1;
        assert_eq!(&a * &b, &b * &a, "multiplicative commutativity");
        checked[3] += 1;
        assert_eq!(
            &a * &(&b + &c),
            &(&a * &b) + &(&a * &c),
            "left distributivity"
        );
        checked[4] += 1;
        assert_eq!(
            &(&a + &b) * &c,
            &(&a * &c) + &(&b * &c),
            "right distributivity"
        );
        checked[5] += 1;
        assert_eq!(&a + &NovikovScalar::zero(), a, "additive identity");
        checked[6] += 1;
        assert_eq!(&a * &NovikovScalar::one(), a, "multiplicative identity");
        checked[7] += 1;
    }
    assert!(checked.iter().all(|&n| n == TRIPLES));
    pass("1. Novikov ring axioms: 8 axioms x 1000 random triples, exact equality");
}

#[test]
fn criterion_02_qh_s2_table_and_rotation_order() {
    let m = catalog::builtin("s2").unwrap();
    let pt = parse_element(&m, "[pt]").unwrap();
    let expected = parse_element(&m, "1*q^-2*t^-1 [S2]").unwrap();
    assert_eq!(qmul(&pt, &pt).unwrap(), expected);

    let rotation = parse_element(&m, "1*q^1*t^1/2 [pt]").unwrap();
    let inverse = try_inverse(&rotation).unwrap();
    assert!(qmul(&rotation, &inverse).unwrap().is_identity());
    assert_eq!(unit_order(&rotation, 8).unwrap(), UnitOrder::Finite(2));
    assert!(!rotation.is_identity(), "order is exactly 2, not 1");
    pass("2. QH(S2): pt * pt = [S2] q^-2 t^-1 and pt q t^1/2 has unit order exactly 2");
}

#[test]
fn criterion_03_qh_cp2_products_and_orders() {
    let m = catalog::builtin("cp2").unwrap();
    let line = parse_element(&m, "[L]").unwrap();
    let pt = parse_element(&m, "[pt]").unwrap();
    assert_eq!(qmul(&line, &line).unwrap(), pt);
    let expected = parse_element(&m, "1*q^-3*t^-1 [CP2]").unwrap();
    assert_eq!(qmul(&line, &pt).unwrap(), expected);

    let inverse = try_inverse(&line).unwrap();
    assert!(qmul(&line, &inverse).unwrap().is_identity());

    let cube = qmul(&qmul(&line, &line).unwrap(), &line).unwrap();
    let terms: Vec<_> = cube.terms().collect();
    assert_eq!(terms.len(), 1, "cube is a single term");
    let (idx, scalar) = terms[0];
    assert_eq!(
        idx,
        m.top_index(),
        "cube is carried by the fundamental class"
    );
    let (coef, q_exp, t_exp) = scalar.as_monomial().expect("cube scalar is one monomial");
    assert_eq!((coef, q_exp), (&BigInt::from(1), -3));
    assert_eq!(t_exp, &rational(-1, 1));

    assert_eq!(unit_order(&line, 64).unwrap(), UnitOrder::ExceedsBound(64));
    pass("3. QH(CP2): [L]*[L] = pt, [L]*pt = [CP2] q^-3 t^-1, [L]^3 monomial multiple of 1, order > 64");
}

/// Hand-frozen classical intersection product of a genus-g surface with
/// ordered basis (pt, a_1, b_1, ..., a_g, b_g, top).
fn classical_surface_product(genus: usize, i: usize, j: usize) -> Vec<(usize, i64)> {
    let top = 2 * genus + 1;
    if i == top {
        return vec![(j, 1)];
    }
    if j == top {
        return vec![(i, 1)];
    }
    // Remaining degrees are 0 and 1; only odd-odd pairs in the same handle
    // survive, meeting in a signed point.
    if i == 0 || j == 0 {
        return vec![];
    }
    let (handle_i, handle_j) = ((i - 1) / 2, (j - 1) / 2);
    if handle_i != handle_j {
        return vec![];
    }
    match (i % 2, j % 2) {
        (1, 0) => vec![(0, 1)],  // a_k . b_k = pt
        (0, 1) => vec![(0, -1)], // b_k . a_k = -pt
        _ => vec![],
    }
}

#[test]
fn criterion_04_aspherical_collapse() {
    for (name, genus) in [("sigma1", 1usize), ("sigma2", 2usize)] {
        let m = catalog::builtin(name).unwrap();
        let n = m.basis().len();
        assert_eq!(n, 2 * genus + 2);
        for i in 0..n {
            for j in 0..n {
                let product = qmul(
                    &QuantumElement::generator(m.clone(), i),
                    &QuantumElement::generator(m.clone(), j),
                )
                .unwrap();
                for (_, q, t, _) in product.monomials() {
                    assert_eq!(q, 0, "{name}: no q appears");
                    assert!(t.is_zero(), "{name}: no t appears");
                }
                let expected = QuantumElement::from_terms(
                    m.clone(),
                    classical_surface_product(genus, i, j)
                        .into_iter()
                        .map(|(k, c)| (k, NovikovScalar::integer(c))),
                );
                assert_eq!(product, expected, "{name}: e_{i} * e_{j}");
            }
        }
    }
    pass("4. Aspherical collapse: Sigma_1 and Sigma_2 quantum products equal the frozen classical tables");
}

#[test]
fn criterion_05_kunneth_factorization() {
    let mut compared = 0;
    for (a, b) in [("s2", "sigma1"), ("s2", "s2")] {
        let left = catalog::builtin(a).unwrap();
        let right = catalog::builtin(b).unwrap();
        let p = product_manifold(&left, &right).unwrap();
        for i in 0..left.basis().len() {
            for j in 0..right.basis().len() {
                for k in 0..left.basis().len() {
                    for l in 0..right.basis().len() {
                        let table_route = qmul(
                            &QuantumElement::generator(p.model().clone(), p.pair_index(i, j)),
                            &QuantumElement::generator(p.model().clone(), p.pair_index(k, l)),
                        )
                        .unwrap();

                        let factor_left = qmul(
                            &QuantumElement::generator(left.clone(), i),
                            &QuantumElement::generator(left.clone(), k),
                        )
                        .unwrap();
                        let factor_right = qmul(
                            &QuantumElement::generator(right.clone(), j),
                            &QuantumElement::generator(right.clone(), l),
                        )
                        .unwrap();
                        let mut tensor_route = p.tensor_embed(&factor_left, &factor_right).unwrap();
                        if right.basis()[j].degree % 2 == 1 && left.basis()[k].degree % 2 == 1 {
                            tensor_route = -&tensor_route;
                        }
                        assert_eq!(
                            table_route, tensor_route,
                            "{a} x {b}: ({i},{j}) * ({k},{l})"
                        );
                        compared += 1;
                    }
                }
            }
        }
    }
    assert_eq!(compared, 64 + 16);
    pass("5. Kunneth factorization: S2 x Sigma_1 and S2 x S2 tables match the tensor-of-rings tables entry for entry");
}

/// Sampler for units of QH(S2): single-generator elements with a +-1
/// monomial scalar are units, and products of units are units.
fn random_s2_unit(model: &Model, rng: &mut StdRng) -> QuantumElement {
    let idx = rng.gen_range(0..model.basis().len());
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    QuantumElement::from_terms(
        model.clone(),
        [(
            idx,
            NovikovScalar::monomial(
                sign,
                rng.gen_range(-2i64..=2),
                rational(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=2)),
            ),
        )],
    )
}

#[test]
fn criterion_06_homomorphism_properties() {
    let mut rng = StdRng::seed_from_u64(0xA6);
    let s2 = catalog::builtin("s2").unwrap();
    let sigma1 = catalog::builtin("sigma1").unwrap();

    // kappa over S2 x Sigma_1 on 200 random homogeneous pairs.
    let p_kappa = product_manifold(&s2, &sigma1).unwrap();
    for _ in 0..200 {
        let x = random_homogeneous(&s2, rng.gen_range(0..=2), &mut rng);
        let y = random_homogeneous(&s2, rng.gen_range(0..=2), &mut rng);
        let lhs = p_kappa.kappa(&qmul(&x, &y).unwrap()).unwrap();
        let rhs = qmul(&p_kappa.kappa(&x).unwrap(), &p_kappa.kappa(&y).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "kappa multiplicativity");
    }

    // kappa_0 over S2 x S2 on 200 random homogeneous pairs.
    let p_square = product_manifold(&s2, &s2).unwrap();
    for _ in 0..200 {
        let x = random_homogeneous(&s2, rng.gen_range(0..=2), &mut rng);
        let y = random_homogeneous(&s2, rng.gen_range(0..=2), &mut rng);
        let lhs = p_square.kappa_zero(&qmul(&x, &y).unwrap()).unwrap();
        let rhs = qmul(
            &p_square.kappa_zero(&x).unwrap(),
            &p_square.kappa_zero(&y).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs, "kappa_0 multiplicativity");
    }

    // kappa' is multiplicative on 200 random unit pairs.
    for _ in 0..200 {
        let u = random_s2_unit(&s2, &mut rng);
        let v = random_s2_unit(&s2, &mut rng);
        let lhs = p_square.kappa_prime(&qmul(&u, &v).unwrap()).unwrap();
        let rhs = qmul(
            &p_square.kappa_prime(&u).unwrap(),
            &p_square.kappa_prime(&v).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs, "kappa' multiplicativity");
    }

    // ... and fails additivity on the witness 1 + 1.
    let one = QuantumElement::identity(s2.clone());
    let two = &one + &one;
    assert_ne!(
        p_square.kappa_prime(&two).unwrap(),
        &p_square.kappa_prime(&one).unwrap() + &p_square.kappa_prime(&one).unwrap(),
        "kappa' additivity failure witness"
    );

    // kappa is injective on basis monomials.
    let mut images = Vec::new();
    for i in 0..s2.basis().len() {
        let img = p_kappa
            .kappa(&QuantumElement::generator(s2.clone(), i))
            .unwrap();
        assert!(!img.is_zero());
        assert!(!images.contains(&img), "kappa injectivity");
        images.push(img);
    }
    pass("6. Homomorphism properties: kappa/kappa_0 on 200 pairs, kappa' multiplicative on 200 unit pairs, additivity witness, injectivity");
}

fn catalog_actions() -> Vec<CircleActionData> {
    let mut actions: Vec<CircleActionData> = catalog::builtin_action_names()
        .iter()
        .map(|name| catalog::builtin_action(name).unwrap())
        .collect();
    for name in catalog::builtin_names() {
        let m = catalog::builtin(name).unwrap();
        actions.push(CircleActionData::constant_loop(&m).unwrap());
    }
    actions
}

#[test]
fn criterion_07_thm1_end_to_end() {
    let aspherical: Vec<Model> = ["point", "sigma1", "sigma2"]
        .iter()
        .map(|n| catalog::builtin(n).unwrap())
        .collect();

    // The rotation instances named by the criterion.
    let rotation = catalog::builtin_action("s2-rotation").unwrap();
    for n_name in ["sigma1", "sigma2"] {
        let n = catalog::builtin(n_name).unwrap();
        let report = verify_thm1(&rotation, &n).unwrap();
        assert!(report.equal, "rotation x {n_name}: {:?}", report.diffs);
    }

    // Every shipped action against every aspherical catalog factor.
    let mut pairs = 0;
    for action in catalog_actions() {
        for n in &aspherical {
            let report = verify_thm1(&action, n).unwrap();
            assert!(
                report.equal,
                "{} x {}: {:?}",
                action.model().name(),
                n.name(),
                report.diffs
            );
            pairs += 1;
        }
    }
    assert_eq!(pairs, 8 * 3);

    // Negative control: a perturbed K0 must fail and point at the t-exponent.
    let sigma1 = catalog::builtin("sigma1").unwrap();
    let (product, lifted) = lift_trivial_factor(&rotation, &sigma1).unwrap();
    let corrupted = lifted.with_k0(lifted.k0() + rational(1, 1)).unwrap();
    let lhs = mcduff_tolman_element(&corrupted).unwrap();
    let rhs = product
        .kappa(&mcduff_tolman_element(&rotation).unwrap())
        .unwrap();
    let diffs = diff_elements(&lhs, &rhs).unwrap();
    assert!(!diffs.is_empty(), "corrupted lift must differ");
    for diff in &diffs {
        assert_eq!(diff.generator, "pt⊗T2");
        assert_eq!(diff.q_exp, 1);
    }
    let t_exps: Vec<_> = diffs.iter().map(|d| d.t_exp.clone()).collect();
    assert!(t_exps.contains(&rational(-1, 2)) && t_exps.contains(&rational(1, 2)));
    pass("7. Lift theorem: rotation and all catalog actions verified against every aspherical factor; perturbed K0 caught");
}

#[test]
fn criterion_08_thm2_end_to_end() {
    let sigma1 = catalog::builtin("sigma1").unwrap();
    let constant = CircleActionData::constant_loop(&sigma1).unwrap();
    let report = verify_thm2(&constant).unwrap();
    assert!(report.equal && report.leading_term_matches);
    assert!(report.kappa_prime_side.is_identity());

    let synthetic = catalog::builtin_action("sigma2-synthetic").unwrap();
    let report = verify_thm2(&synthetic).unwrap();
    assert!(report.equal, "{:?}", report.diffs);
    assert!(report.leading_term_matches);
    // The leading term doubles both the q-exponent and K0 of the base
    // element pt q^1 t^-1.
    let expected = parse_element(report.kappa_prime_side.model(), "1*q^2*t^-2 [pt⊗pt]").unwrap();
    assert_eq!(report.kappa_prime_side, expected);
    assert_eq!(report.predicted_leading, expected);
    let (_, lead) = diagonal_leading_term(&synthetic).unwrap();
    assert_eq!(lead.to_string(), expected.to_string());

    // Every shipped aspherical-model action verifies.
    for name in ["point", "sigma1", "sigma2"] {
        let m = catalog::builtin(name).unwrap();
        let constant = CircleActionData::constant_loop(&m).unwrap();
        assert!(
            verify_thm2(&constant).unwrap().passed(),
            "constant loop on {name}"
        );
    }
    pass("8. Diagonal theorem: constant loop on Sigma_1 and synthetic Sigma_2 action verified; leading term has doubled exponents");
}

#[test]
fn criterion_09_unit_contract() {
    // Every Seidel element the suite constructs, including the lifted ones.
    let mut elements: Vec<(String, SeidelElement)> = Vec::new();
    for action in catalog_actions() {
        match seidel_circle(&action) {
            Ok(s) => elements.push((action.model().name().to_string(), s)),
            Err(e) => {
                // The synthetic aspherical action is pure verification data:
                // its maximum locus is a point, which is not a unit of the
                // classical ring.
                assert_eq!(action.model().name(), "sigma2");
                assert_eq!(e, qh_core::Error::NotAUnit);
            }
        }
    }
    let rotation = catalog::builtin_action("s2-rotation").unwrap();
    for n_name in ["point", "sigma1", "sigma2"] {
        let n = catalog::builtin(n_name).unwrap();
        let (_, lifted) = lift_trivial_factor(&rotation, &n).unwrap();
        let s = seidel_circle(&lifted).unwrap();
        elements.push((format!("s2 x {n_name}"), s));
    }

    assert!(elements.len() >= 10);
    for (name, s) in &elements {
        let model = s.element().model().clone();
        assert_eq!(
            s.element().degree().unwrap(),
            model.dim() as i64,
            "{name}: Seidel element has degree 2n"
        );
        let inverse = try_inverse(s.element()).unwrap();
        assert!(
            qmul(s.element(), &inverse).unwrap().is_identity(),
            "{name}: inverse round-trip"
        );
        assert_eq!(&inverse, s.inverse(), "{name}: stored inverse agrees");
    }

    // The lift preserves the rotation's order.
    let s = seidel_circle(&rotation).unwrap();
    assert_eq!(unit_order(s.element(), 8).unwrap(), UnitOrder::Finite(2));
    let sigma1 = catalog::builtin("sigma1").unwrap();
    let (product, lifted) = lift_trivial_factor(&rotation, &sigma1).unwrap();
    let lifted_s = seidel_circle(&lifted).unwrap();
    assert_eq!(
        unit_order(lifted_s.element(), 8).unwrap(),
        UnitOrder::Finite(2)
    );
    let one = QuantumElement::identity(product.model().clone());
    let hom = check_homomorphism(&[(lifted_s.element().clone(), lifted_s.element().clone(), one)])
        .unwrap();
    assert!(hom.passed());

    // A nontrivial element stays nontrivial through kappa, for every
    // rotation action and every aspherical factor.
    for action_name in ["s2-rotation", "cp2-rotation"] {
        let action = catalog::builtin_action(action_name).unwrap();
        let s = seidel_circle(&action).unwrap();
        assert!(qh_core::is_nontrivial(s.element()));
        for n_name in ["point", "sigma1", "sigma2"] {
            let n = catalog::builtin(n_name).unwrap();
            let p = qh_core::product_manifold(action.model(), &n).unwrap();
            let image = p.kappa(s.element()).unwrap();
            assert!(
                qh_core::is_nontrivial(&image),
                "{action_name} through kappa with {n_name}"
            );
        }
    }
    pass("9. Unit contract: every Seidel element is degree-2n homogeneous with a verified inverse; lift preserves order 2");
}

#[test]
fn criterion_10_degree_law() {
    let mut rng = StdRng::seed_from_u64(0xAA);
    let mut nonzero_products = 0;
    let names = catalog::builtin_names();
    let mut per_model = vec![0usize; names.len()];
    for (pos, name) in names.iter().enumerate() {
        let m = catalog::builtin(name).unwrap();
        let dim = m.dim() as i64;
        let mut attempts = 0;
        while per_model[pos] < 100 && attempts < 100_000 {
            attempts += 1;
            let dx = rng.gen_range(0..=dim);
            let dy = rng.gen_range(0..=dim);
            let x = random_homogeneous(&m, dx, &mut rng);
            let y = random_homogeneous(&m, dy, &mut rng);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let p = qmul(&x, &y).unwrap();
            if p.is_zero() {
                continue;
            }
            assert_eq!(p.degree().unwrap(), dx + dy - dim, "{name}: degree law");
            per_model[pos] += 1;
            nonzero_products += 1;
        }
    }
    assert_eq!(nonzero_products, 500, "100 nonzero products per model");
    pass(
        "10. Degree law: deg(x*y) = deg x + deg y - 2n on 500 random homogeneous nonzero products",
    );
}

/// Sanity cross-check kept with the acceptance suite: the multiplication
/// table dump and the lift verifier agree with the worked S2 instances.
#[test]
fn table_dump_and_rotation_cross_check() {
    let s2 = catalog::builtin("s2").unwrap();
    let table = multiplication_table(&s2).unwrap();
    assert!(table.contains("pt * pt = 1*q^-2*t^-1 [S2]"));

    let rotation = catalog::builtin_action("s2-rotation").unwrap();
    let s = seidel_circle(&rotation).unwrap();
    assert!(qh_core::is_nontrivial(s.element()));
    let sigma1 = catalog::builtin("sigma1").unwrap();
    let p: ProductModel = product_manifold(&s2, &sigma1).unwrap();
    let image = p.kappa(s.element()).unwrap();
    assert!(qh_core::is_nontrivial(&image));
}
