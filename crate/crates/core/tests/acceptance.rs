//! End-to-end acceptance suite: one test per acceptance criterion, each
//! printing a single pass line on success.

use nilforms::catalog::{self, diagonal_curve, display_form_omega, display_form_omega_star};
use nilforms::cohomology::{betti, class_is_zero, hodge_delbar, Theory};
use nilforms::deformation::{
    contract, deformed_delbar, extension, first_order_obstruction, GeneratorMap, VectorForm,
};
use nilforms::special::{metric_power, StructureKind};
use nilforms::transversality::{
    cone_matrix, cone_value, lemma_chain_check, lemma_family, pairing_value, split_rule,
    transverse_falsify, transverse_minimize,
};
use nilforms::{sigma, InvariantForm, Matrix, Scalar, StructureEquations, Witness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn etabeta5() -> StructureEquations {
    catalog::find("etabeta5").unwrap().structure
}

fn s_int(v: i64) -> Scalar {
    Scalar::from_int(v)
}

fn gaussian_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let re = Scalar::rational(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3));
    let im = Scalar::rational(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3));
    &re + &(&im * &Scalar::i())
}

/// The parameterized 2-step structure with one non-closed generator carrying
/// both (2,0) and (1,1) terms.
fn family11(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar, e: &Scalar) -> StructureEquations {
    let n = 5;
    let mono = |h: &[u8], an: &[u8], s: &Scalar| {
        InvariantForm::monomial(n, h, an, s.clone()).unwrap()
    };
    let d5 = mono(&[1, 3], &[], a)
        .add(&mono(&[1], &[2], b))
        .unwrap()
        .add(&mono(&[1], &[4], c))
        .unwrap()
        .add(&mono(&[2, 4], &[], a))
        .unwrap()
        .add(&mono(&[2], &[1], d))
        .unwrap()
        .add(&mono(&[2], &[3], c))
        .unwrap()
        .add(&mono(&[3], &[2], e))
        .unwrap()
        .add(&mono(&[3], &[4], &-d))
        .unwrap()
        .add(&mono(&[4], &[1], e))
        .unwrap()
        .add(&mono(&[4], &[3], &-b))
        .unwrap();
    let mut dd = vec![InvariantForm::zero(n); 5];
    dd[4] = d5;
    StructureEquations::new(n, "family11", dd).unwrap()
}

/// Structure with d phi5 = a phi^{12} + c phi^{34} + b sum phi^{j j-bar}.
fn family12(a: &Scalar, b: &Scalar, c: &Scalar) -> StructureEquations {
    let n = 5;
    let mut d5 = InvariantForm::monomial(n, &[1, 2], &[], a.clone())
        .unwrap()
        .add(&InvariantForm::monomial(n, &[3, 4], &[], c.clone()).unwrap())
        .unwrap();
    for j in 1..=4u8 {
        d5 = d5
            .add(&InvariantForm::monomial(n, &[j], &[j], b.clone()).unwrap())
            .unwrap();
    }
    let mut dd = vec![InvariantForm::zero(n); 5];
    dd[4] = d5;
    StructureEquations::new(n, "family12", dd).unwrap()
}

fn beta_forms(a: &Scalar, b: &Scalar, c: &Scalar) -> (InvariantForm, InvariantForm) {
    let n = 5;
    let l = &(&(&Scalar::rational(3, 8) * &Scalar::i()) * a) * &b.inv();
    let nn = &(&(&Scalar::rational(3, 8) * &Scalar::i()) * c) * &b.inv();
    let p = &(&-&(&s_int(2) * &b.conj()) * &l) * &c.conj().inv();
    let beta1 = InvariantForm::monomial(n, &[1, 2, 4, 5], &[4, 5], l.clone())
        .unwrap()
        .add(&InvariantForm::monomial(n, &[1, 2, 3, 5], &[3, 5], l).unwrap())
        .unwrap()
        .add(&InvariantForm::monomial(n, &[1, 3, 4, 5], &[1, 5], nn.clone()).unwrap())
        .unwrap()
        .add(&InvariantForm::monomial(n, &[2, 3, 4, 5], &[2, 5], nn).unwrap())
        .unwrap();
    let beta2 = InvariantForm::monomial(n, &[1, 2, 3, 4, 5], &[5], p).unwrap();
    (beta1, beta2)
}

#[test]
fn acceptance_01_displayed_forms_are_closed() {
    let start = Instant::now();
    let s = etabeta5();
    assert!(s.differential(&display_form_omega()).unwrap().is_zero());
    assert!(s.differential(&display_form_omega_star()).unwrap().is_zero());
    assert!(start.elapsed().as_secs_f64() < 1.0, "took {:?}", start.elapsed());
    println!("criterion 01 closedness of the two displayed (3,3)-forms: PASS");
}

#[test]
fn acceptance_02_transversality_of_the_modified_form() {
    let start = Instant::now();
    let omega_star = display_form_omega_star();

    // splitting off direction 5 certifies exactly
    let v = split_rule(&omega_star, 5, 11).unwrap();
    assert!(v.is_certified(), "{}", v.detail);

    // the split factor matches the two-parameter pattern with couplings
    // (1, -1), which the chain check certifies
    let f_expected = expected_split_factor();
    assert_eq!(
        cone_matrix(&f_expected).unwrap().matrix(),
        cone_matrix(&lemma_family(&s_int(1), &s_int(-1))).unwrap().matrix()
    );
    assert!(lemma_chain_check(&cone_matrix(&f_expected).unwrap()).is_certified());

    // numeric cross-check: strictly positive minimum
    let v = transverse_minimize(&omega_star, 2, 60, 1e-9, 7).unwrap();
    assert!(v.is_certified(), "{}", v.detail);
    let min = parse_minimum(&v.detail);
    assert!(min > 1e-6, "numeric minimum {min}");
    assert!(v.detail.contains("16 restarts"));
    assert!(start.elapsed().as_secs_f64() < 10.0, "took {:?}", start.elapsed());
    println!("criterion 02 transversality certification chain for the modified form: PASS");
}

fn expected_split_factor() -> InvariantForm {
    let terms: &[(&[u8], &[u8], i64)] = &[
        (&[1, 2], &[1, 2], 4),
        (&[1, 3], &[1, 3], 1),
        (&[1, 4], &[1, 4], 4),
        (&[2, 3], &[2, 3], 1),
        (&[2, 4], &[2, 4], 1),
        (&[3, 4], &[3, 4], 1),
        (&[1, 3], &[2, 4], -1),
        (&[2, 4], &[1, 3], -1),
        (&[2, 3], &[1, 4], -1),
        (&[1, 4], &[2, 3], -1),
    ];
    let mut f = InvariantForm::zero(4);
    for (h, a, c) in terms {
        f = f
            .add(&InvariantForm::monomial(4, h, a, s_int(*c)).unwrap())
            .unwrap();
    }
    f
}

fn parse_minimum(detail: &str) -> f64 {
    detail
        .strip_prefix("numeric minimum ")
        .and_then(|rest| rest.split_whitespace().next())
        .and_then(|tok| tok.parse().ok())
        .unwrap_or(f64::NAN)
}

#[test]
fn acceptance_03_coupling_grid_and_exact_refutation() {
    let grid = [
        Scalar::zero(),
        Scalar::rational(1, 2),
        Scalar::rational(-1, 2),
        s_int(1),
        s_int(-1),
    ];
    for a in &grid {
        for b in &grid {
            let cm = cone_matrix(&lemma_family(a, b)).unwrap();
            assert!(lemma_chain_check(&cm).is_certified(), "({a}, {b})");
        }
    }

    // far outside the certified region the sampler finds an exact witness
    let bad = lemma_family(&s_int(10), &Scalar::zero());
    let v = transverse_falsify(&bad, 2, 400, 7).unwrap();
    assert!(v.is_refuted());
    if let Some(Witness::Form(beta)) = &v.witness {
        let q = pairing_value(&bad, beta).unwrap();
        assert!(q.is_real() && q.sign() <= 0);
    } else {
        panic!("refutation must carry a form witness");
    }

    // the recorded negative value on the quadric cone
    let cm = cone_matrix(&bad).unwrap();
    let z = [s_int(1), s_int(1), s_int(0), s_int(0), s_int(-5), s_int(5)];
    let (val, on_cone) = cone_value(&cm, &z);
    assert!(on_cone);
    assert_eq!(val, s_int(-45));
    println!("criterion 03 coupling-grid certification and exact refutation: PASS");
}

#[test]
fn acceptance_04_parameterized_family_delbar_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let omega = display_form_omega();
    for _ in 0..5 {
        let (a, b, c, d, e) = (
            gaussian_rational(&mut rng),
            gaussian_rational(&mut rng),
            gaussian_rational(&mut rng),
            gaussian_rational(&mut rng),
            gaussian_rational(&mut rng),
        );
        let s = family11(&a, &b, &c, &d, &e);
        assert!(s.delbar_any(&omega).unwrap().is_zero());
        assert!(s.differential(&omega).unwrap().is_zero());

        let mono = |h: &[u8], an: &[u8], coef: Scalar| {
            InvariantForm::monomial(5, h, an, coef).unwrap()
        };
        let db = |h: &[u8], an: &[u8]| {
            s.delbar(&InvariantForm::phi(5, h, an)).unwrap()
        };
        // the displayed monomial identities
        for (i, j, k) in [(1u8, 2u8, 3u8), (1, 2, 4), (1, 3, 4), (2, 3, 4)] {
            assert!(db(&[i, j, k], &[i, j, k]).is_zero());
        }
        assert_eq!(
            db(&[1, 2, 5], &[1, 2, 5]),
            mono(&[1, 2, 3], &[1, 2, 4, 5], -&d).add(&mono(&[1, 2, 4], &[1, 2, 3, 5], -&b)).unwrap()
        );
        assert_eq!(
            db(&[1, 3, 5], &[1, 3, 5]),
            mono(&[1, 3, 5], &[1, 2, 3, 4], a.conj())
        );
        assert_eq!(
            db(&[2, 4, 5], &[2, 4, 5]),
            mono(&[2, 4, 5], &[1, 2, 3, 4], a.conj())
        );
        assert_eq!(
            db(&[1, 4, 5], &[1, 4, 5]),
            mono(&[1, 2, 4], &[1, 3, 4, 5], c.clone())
                .add(&mono(&[1, 3, 4], &[1, 2, 4, 5], e.clone()))
                .unwrap()
        );
        assert_eq!(
            db(&[2, 3, 5], &[2, 3, 5]),
            mono(&[1, 2, 3], &[2, 3, 4, 5], c.clone())
                .add(&mono(&[2, 3, 4], &[1, 2, 3, 5], e.clone()))
                .unwrap()
        );
        assert_eq!(
            db(&[3, 4, 5], &[3, 4, 5]),
            mono(&[1, 3, 4], &[2, 3, 4, 5], b.clone())
                .add(&mono(&[2, 3, 4], &[1, 3, 4, 5], d.clone()))
                .unwrap()
        );
        assert_eq!(
            db(&[1, 3, 5], &[2, 4, 5]),
            mono(&[1, 2, 3], &[1, 2, 4, 5], -&d)
                .add(&mono(&[1, 2, 3], &[2, 3, 4, 5], c.clone()))
                .unwrap()
                .add(&mono(&[1, 3, 4], &[1, 2, 4, 5], e.clone()))
                .unwrap()
                .add(&mono(&[1, 3, 4], &[2, 3, 4, 5], b.clone()))
                .unwrap()
                .add(&mono(&[1, 3, 5], &[1, 2, 3, 4], a.conj()))
                .unwrap()
        );
        assert_eq!(
            db(&[2, 4, 5], &[1, 3, 5]),
            mono(&[1, 2, 4], &[1, 2, 3, 5], -&b)
                .add(&mono(&[1, 2, 4], &[1, 3, 4, 5], c.clone()))
                .unwrap()
                .add(&mono(&[2, 3, 4], &[1, 2, 3, 5], e.clone()))
                .unwrap()
                .add(&mono(&[2, 3, 4], &[1, 3, 4, 5], d.clone()))
                .unwrap()
                .add(&mono(&[2, 4, 5], &[1, 2, 3, 4], a.conj()))
                .unwrap()
        );
    }
    println!("criterion 04 parameterized family delbar identities at random parameters: PASS");
}

#[test]
fn acceptance_05_inhomogeneous_closed_structure_with_radical_scalars() {
    let a = Scalar::sqrt(6);
    let b = Scalar::one();
    let c = Scalar::sqrt(6);
    let s = family12(&a, &b, &c);
    let omega = metric_power(5, &Matrix::identity(5), 1).unwrap();
    let omega3 = metric_power(5, &Matrix::identity(5), 3).unwrap();
    let (beta1, beta2) = beta_forms(&a, &b, &c);

    assert_eq!(s.del(&omega3).unwrap(), s.delbar_any(&beta1).unwrap());
    assert_eq!(s.del_any(&beta1).unwrap(), s.delbar_any(&beta2).unwrap());
    assert!(s.del_delbar(&omega3).unwrap().is_zero());
    assert!(!s.differential(&omega).unwrap().is_zero());

    // perturbing the linear coefficient breaks the first identity
    let beta1_bad = beta1
        .add(&InvariantForm::monomial(5, &[1, 2, 4, 5], &[4, 5], Scalar::one()).unwrap())
        .unwrap();
    assert_ne!(s.del(&omega3).unwrap(), s.delbar_any(&beta1_bad).unwrap());

    // violating the modulus constraint |a|^2 = 6 |b|^2 breaks it even with
    // the coefficient formulas intact
    let b_bad = s_int(2);
    let s_bad = family12(&a, &b_bad, &c);
    let (beta1_b, beta2_b) = beta_forms(&a, &b_bad, &c);
    assert_ne!(
        s_bad.del(&omega3).unwrap(),
        s_bad.delbar_any(&beta1_b).unwrap()
    );
    let _ = beta2_b;
    let _ = beta2;
    println!("criterion 05 radical-scalar family: displayed identities and perturbation failures: PASS");
}

#[test]
fn acceptance_06_first_order_obstruction_values() {
    let s = etabeta5();
    let omega = display_form_omega();
    let omega_star = display_form_omega_star();
    let zero = InvariantForm::zero(5);

    // the displayed leading term, for generic coefficients
    for (a1, a2) in [(1i64, 1i64), (2, 3), (1, 0)] {
        let v = diagonal_curve(a1, a2);
        let lead = s.del_any(&contract(v.derivative(), &omega).unwrap()).unwrap();
        let want = InvariantForm::monomial(5, &[2, 3, 4], &[1, 2, 4, 5], &sigma(3) * &s_int(a1))
            .unwrap()
            .add(
                &InvariantForm::monomial(5, &[1, 3, 4], &[1, 2, 3, 5], &sigma(3) * &s_int(a2))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(lead, want, "({a1},{a2})");
    }

    for (a1, a2) in [(1i64, 0i64), (0, 1), (1, 1), (3, -2)] {
        let v = diagonal_curve(a1, a2);
        let (_, class) = first_order_obstruction(&s, v.derivative(), &omega, &zero).unwrap();
        assert!(class.is_refuted(), "({a1},{a2})");
        let (_, class) = first_order_obstruction(&s, v.derivative(), &omega_star, &zero).unwrap();
        assert_eq!(class.is_certified(), a1 == a2, "({a1},{a2})");
    }
    println!("criterion 06 first-order obstruction classes on both displayed forms: PASS");
}

#[test]
fn acceptance_07_deformed_family_is_closed_and_delbar_t_flat() {
    let start = Instant::now();
    let s = etabeta5();
    let omega_star = display_form_omega_star();
    let curve = diagonal_curve(1, 1);
    for t in [Scalar::zero(), Scalar::rational(1, 10), Scalar::rational(1, 3)] {
        let phi = curve.at(&t);
        let tilde = extension(&phi, &omega_star).unwrap();
        // the extension agrees with the simultaneous substitution
        assert_eq!(tilde, GeneratorMap::one_plus(&phi).apply(&omega_star).unwrap());
        assert!(s.differential(&tilde).unwrap().is_zero(), "t = {t}");
        let (pre, post) = deformed_delbar(&s, &phi, &omega_star).unwrap();
        assert!(pre.is_zero(), "t = {t}");
        assert!(post.is_zero());
    }
    assert!(start.elapsed().as_secs_f64() < 30.0, "took {:?}", start.elapsed());
    println!("criterion 07 deformed family closedness and deformed-delbar flatness: PASS");
}

#[test]
fn acceptance_08_cohomology_regressions() {
    let s = etabeta5();
    assert_eq!(betti(&s, 1).unwrap(), 8);
    assert_eq!(hodge_delbar(&s, 0, 1).unwrap(), 4);

    fn choose(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (1..=k).fold(1, |acc, j| acc * (n - j + 1) / j)
    }
    for n in [2u8, 3u8] {
        let torus = StructureEquations::abelian(n, "torus");
        for p in 0..=n as usize {
            for q in 0..=n as usize {
                assert_eq!(
                    hodge_delbar(&torus, p, q).unwrap(),
                    choose(n as usize, p) * choose(n as usize, q),
                    "n={n} p={p} q={q}"
                );
            }
        }
    }
    println!("criterion 08 frozen cohomology dimensions: PASS");
}

#[test]
fn acceptance_09_nonzero_classes_behind_certified_structures() {
    let mut swept = 0;
    for entry in catalog::catalog() {
        let witness_ok = entry.form("beta_witness").map(|w| {
            entry.structure.differential(w).unwrap().is_zero()
                && w.is_simple().unwrap().is_simple()
        });
        if witness_ok != Some(true) {
            continue;
        }
        for (label, ok, detail) in entry.verify() {
            // the recorded expectations include the structure certifications
            // and the class checks; everything behind a witness must hold
            assert!(ok, "{label}: {detail}");
        }
        // explicit theory sweep for each certified structure form
        for e in &entry.expectations {
            if let catalog::Expectation::Structure { kind, form, .. } = e {
                let f = entry.form(form).unwrap();
                let theories: &[Theory] = match kind {
                    StructureKind::PKahler => &[
                        Theory::DeRham,
                        Theory::Dolbeault,
                        Theory::BottChern,
                        Theory::Aeppli,
                    ],
                    StructureKind::PSymplectic => &[Theory::DeRham],
                    StructureKind::PPluriclosed => &[Theory::Aeppli],
                    _ => &[],
                };
                for th in theories {
                    let v = class_is_zero(&entry.structure, *th, f).unwrap();
                    assert!(v.is_refuted(), "{}.{form} in {th:?}", entry.name);
                    swept += 1;
                }
            }
        }
    }
    assert!(swept >= 10, "sweep covered only {swept} class checks");
    println!("criterion 09 nonzero cohomology classes behind certified structures: PASS");
}

#[test]
fn acceptance_10_randomized_property_suites() {
    let pool: Vec<StructureEquations> = vec![
        etabeta5(),
        StructureEquations::abelian(3, "t3"),
        {
            let mut d = vec![InvariantForm::zero(3); 3];
            d[2] = InvariantForm::phi(3, &[1, 2], &[]);
            StructureEquations::new(3, "heis", d).unwrap()
        },
        family12(&Scalar::sqrt(6), &Scalar::one(), &Scalar::sqrt(6)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let random_form = |rng: &mut ChaCha8Rng, n: u8| {
        let mut f = InvariantForm::zero(n);
        for _ in 0..3 {
            let hol: Vec<u8> = (1..=n).filter(|_| rng.gen_bool(0.4)).collect();
            let anti: Vec<u8> = (1..=n).filter(|_| rng.gen_bool(0.4)).collect();
            let c = Scalar::rational(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=3));
            f = f.add(&InvariantForm::monomial(n, &hol, &anti, c).unwrap()).unwrap();
        }
        f
    };

    // d^2 = 0 and component-operator identities
    for i in 0..200 {
        let s = &pool[i % pool.len()];
        let f = random_form(&mut rng, s.dimension());
        assert!(s.differential(&s.differential(&f).unwrap()).unwrap().is_zero());
        assert!(s.del_any(&s.del_any(&f).unwrap()).unwrap().is_zero());
        assert!(s.delbar_any(&s.delbar_any(&f).unwrap()).unwrap().is_zero());
        let mixed = s
            .del_any(&s.delbar_any(&f).unwrap())
            .unwrap()
            .add(&s.delbar_any(&s.del_any(&f).unwrap()).unwrap())
            .unwrap();
        assert!(mixed.is_zero());
    }

    // graded commutativity on homogeneous factors
    for _ in 0..200 {
        let n = rng.gen_range(2u8..=5);
        let p1 = rng.gen_range(0usize..=n as usize);
        let q1 = rng.gen_range(0usize..=n as usize);
        let a = random_form(&mut rng, n).project_bidegree(p1, q1);
        let p2 = rng.gen_range(0usize..=n as usize);
        let q2 = rng.gen_range(0usize..=n as usize);
        let b = random_form(&mut rng, n).project_bidegree(p2, q2);
        let lhs = a.wedge(&b).unwrap();
        let mut rhs = b.wedge(&a).unwrap();
        if (p1 + q1) * (p2 + q2) % 2 == 1 {
            rhs = rhs.neg();
        }
        assert_eq!(lhs, rhs);
    }

    // conjugation is an involutive algebra map commuting with d
    for i in 0..200 {
        let s = &pool[i % pool.len()];
        let f = random_form(&mut rng, s.dimension());
        let g = random_form(&mut rng, s.dimension());
        assert_eq!(f.conjugate().conjugate(), f);
        assert_eq!(
            f.wedge(&g).unwrap().conjugate(),
            f.conjugate().wedge(&g.conjugate()).unwrap()
        );
        assert_eq!(
            s.differential(&f).unwrap().conjugate(),
            s.differential(&f.conjugate()).unwrap()
        );
    }

    // decomposability decision against the quadratic criterion
    for _ in 0..200 {
        let n = rng.gen_range(3u8..=5);
        if rng.gen_bool(0.5) {
            // products of (1,0)-forms must test simple
            let k = rng.gen_range(1usize..=3);
            let mut f = InvariantForm::constant(n, Scalar::one());
            for _ in 0..k {
                let mut line = InvariantForm::zero(n);
                for j in 1..=n {
                    let c = s_int(rng.gen_range(-2i64..=2));
                    line = line.add(&InvariantForm::monomial(n, &[j], &[], c).unwrap()).unwrap();
                }
                f = f.wedge(&line).unwrap();
            }
            if !f.is_zero() {
                assert!(f.is_simple().unwrap().is_simple());
            }
        } else {
            // for (2,0)-forms: simple iff f ^ f = 0
            let mut f = InvariantForm::zero(n);
            for _ in 0..3 {
                let mut idx: Vec<u8> = (1..=n).collect();
                let a = idx.remove(rng.gen_range(0..idx.len() as usize));
                let b = idx.remove(rng.gen_range(0..idx.len() as usize));
                let (h, sign) = if a < b { ([a, b], 1) } else { ([b, a], -1) };
                let c = s_int(rng.gen_range(-2i64..=2) * sign);
                f = f.add(&InvariantForm::monomial(n, &h, &[], c).unwrap()).unwrap();
            }
            if !f.is_zero() {
                let square_zero = f.wedge(&f).unwrap().is_zero();
                assert_eq!(f.is_simple().unwrap().is_simple(), square_zero);
            }
        }
    }

    // extension operators invert exactly for small parameters
    for _ in 0..200 {
        let n = rng.gen_range(2u8..=4);
        let mut phi = VectorForm::zero(n);
        for lam in 1..=n {
            for mu in 1..=n {
                phi.set(lam, mu, Scalar::rational(rng.gen_range(-2i64..=2), 9));
            }
        }
        let f = random_form(&mut rng, n);
        let map = GeneratorMap::one_plus(&phi);
        let inv = map.inverse().expect("invertible for small coefficients");
        assert_eq!(inv.apply(&map.apply(&f).unwrap()).unwrap(), f);
        assert_eq!(map.apply(&f).unwrap(), extension(&phi, &f).unwrap());
    }

    // every sampler refutation carries an exactly rechecked witness
    let mut refutations = 0;
    for trial in 0..200 {
        let n = rng.gen_range(2u8..=3);
        let k = 1usize;
        let mut f = InvariantForm::zero(n);
        for j in 1..=n {
            let c = &sigma(1) * &s_int(rng.gen_range(-3i64..=3));
            f = f.add(&InvariantForm::monomial(n, &[j], &[j], c).unwrap()).unwrap();
        }
        let p = n as usize - k;
        let f = f.project_bidegree(p, p);
        if f.bidegree() != Some((1, 1)) || n != 2 {
            // keep only (1,1) on n = 2 so k matches; other draws just wedge up
            continue;
        }
        let v = transverse_falsify(&f, k, 60, trial as u64).unwrap();
        if let Some(Witness::Form(beta)) = &v.witness {
            let q = pairing_value(&f, beta).unwrap();
            assert!(q.is_real() && q.sign() <= 0);
            refutations += 1;
        }
    }
    assert!(refutations >= 20, "only {refutations} refutations sampled");
    println!("criterion 10 randomized property suites: PASS");
}
