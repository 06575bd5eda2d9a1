use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

use toricdeg::degeneration::{embed_value_semigroup, family_ideal, fiber, DegenOptions};
use toricdeg::fixtures;
use toricdeg::groebner::{buchberger, initial_ideal, InitialSpec};
use toricdeg::intlat::{hermite_normal_form, kernel_lattice};
use toricdeg::momentmap::{moment, sample_moment_image, ComplexPoint};
use toricdeg::polycore::{initial_form, integer, parse_polynomial, Convention};
use toricdeg::toric::{delta_polytope, toric_ideal, torus_point, veronese};
use toricdeg::{Coeff, Exponent, Ideal, IntMatrix, Polynomial, Semigroup, TermOrder, VarList};

fn vars3() -> VarList {
    VarList::new(["a", "b", "c"])
}

fn exponent(n: usize) -> impl Strategy<Value = Exponent> {
    prop::collection::vec(0u32..4, n).prop_map(Exponent::new)
}

fn poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (-6i64..=6, prop::collection::vec(0u32..=max_exp, 3)),
        1..=max_terms,
    )
    .prop_map(|terms| {
        Polynomial::from_terms(
            &vars3(),
            terms.into_iter().map(|(c, e)| (integer(c), Exponent::new(e))),
        )
    })
}

fn orders() -> Vec<TermOrder> {
    vec![
        TermOrder::lex(3),
        TermOrder::degrevlex(3),
        TermOrder::weight(vec![1, 2, 0], Convention::Min),
        TermOrder::weight(vec![3, -1, 2], Convention::Max),
        TermOrder::matrix(vec![vec![1, 1, 1], vec![0, 0, 1]], Convention::Min, 3),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn orders_are_total_and_multiplicative(a in exponent(3), b in exponent(3), c in exponent(3)) {
        for o in orders() {
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            let (ac, bc) = (a.mul(&c).unwrap(), b.mul(&c).unwrap());
            prop_assert_eq!(o.cmp(&ac, &bc), ab);
            if ab == Ordering::Less && o.cmp(&b, &c) == Ordering::Less {
                prop_assert_eq!(o.cmp(&a, &c), Ordering::Less);
            }
        }
    }

    #[test]
    fn ring_laws(p in poly(4, 3), q in poly(4, 3), r in poly(4, 3)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
    }

    #[test]
    fn printing_round_trips(p in poly(5, 4)) {
        let again = parse_polynomial(&p.to_string(), &vars3()).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn initial_forms_multiply(p in poly(4, 3), q in poly(4, 3), w in prop::collection::vec(-4i64..=4, 3)) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        for conv in [Convention::Min, Convention::Max] {
            let lhs = initial_form(&(&p * &q), &w, conv).unwrap();
            let rhs = &initial_form(&p, &w, conv).unwrap() * &initial_form(&q, &w, conv).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn hermite_form_is_a_unimodular_transform(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 1..4)) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let (h, u) = hermite_normal_form(&a);
        prop_assert_eq!(u.mul(&a).unwrap(), h.clone());
        let det = u.determinant().unwrap();
        prop_assert!(det == BigInt::from(1) || det == BigInt::from(-1));
        // echelon shape with positive pivots and reduced entries above them
        let mut last: Option<usize> = None;
        for i in 0..h.rows() {
            match h.row(i).iter().position(|x| *x != BigInt::from(0)) {
                Some(p) => {
                    prop_assert!(last.is_none_or(|l| p > l));
                    let pivot = h.get(i, p).clone();
                    prop_assert!(pivot > BigInt::from(0));
                    for k in 0..i {
                        let x = h.get(k, p);
                        prop_assert!(*x >= BigInt::from(0) && *x < pivot);
                    }
                    last = Some(p);
                }
                None => last = Some(usize::MAX - 1),
            }
        }
    }

    #[test]
    fn kernel_lattice_is_the_kernel(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..3)) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let basis = kernel_lattice(&a);
        prop_assert_eq!(basis.len(), a.cols() - a.rank());
        for v in &basis {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(|x| *x == BigInt::from(0)));
        }
    }

    #[test]
    fn toric_ideals_vanish_on_the_torus(
        cols in prop::collection::vec(prop::collection::vec(0i64..=3, 2), 3..5),
        t in prop::collection::vec((1i64..=5, 1i64..=3), 3),
    ) {
        let mut rows = vec![vec![1i64; cols.len()]];
        rows.extend((0..2).map(|i| cols.iter().map(|c| c[i]).collect::<Vec<_>>()));
        let a = IntMatrix::from_rows(&rows).unwrap();
        let names = VarList::new((0..cols.len()).map(|j| format!("x{j}")));
        let ideal = toric_ideal(&a, &names).unwrap();
        let params: Vec<Coeff> = t.iter().map(|&(n, d)| Coeff::new(n.into(), d.into())).collect();
        let pt = torus_point(&a, &params).unwrap();
        for g in ideal.gens() {
            prop_assert_eq!(g.eval(&pt), integer(0));
        }
        prop_assert!(ideal.is_binomial());
    }

    #[test]
    fn veronese_scales_the_polytope(
        values in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..5),
        n in 1usize..4,
    ) {
        let s = Semigroup::from_values(&values, None).unwrap();
        let v = veronese(&s, n).unwrap();
        prop_assert_eq!(delta_polytope(&v), delta_polytope(&s).scaled(&integer(n as i64)));
    }

    #[test]
    fn reduced_bases_ignore_generator_order(
        (gens, shuffled) in prop::collection::vec(poly(3, 2), 1..4)
            .prop_flat_map(|g| (Just(g.clone()), Just(g).prop_shuffle())),
    ) {
        let ideal = Ideal::new(&vars3(), gens).unwrap();
        let order = TermOrder::degrevlex(3);
        let gb = buchberger(&ideal, &order).unwrap();
        let gb2 = buchberger(&Ideal::new(&vars3(), shuffled).unwrap(), &order).unwrap();
        prop_assert_eq!(gb.elements(), gb2.elements());
        for g in ideal.gens() {
            prop_assert!(gb.normal_form(g).unwrap().is_zero());
        }
    }

    #[test]
    fn moment_ignores_scaling_and_phases(
        z in prop::collection::vec((0.05f64..2.0, 0.0f64..std::f64::consts::TAU), 3),
        scale in 0.1f64..10.0,
        phases in prop::collection::vec(0.0f64..std::f64::consts::TAU, 3),
    ) {
        let a = IntMatrix::from_rows(&[vec![1, 0, 3], vec![0, 2, 1]]).unwrap();
        let base: Vec<Complex64> = z.iter().map(|&(r, th)| Complex64::from_polar(r, th)).collect();
        let m0 = moment(&a, &ComplexPoint::new(base.clone()).unwrap()).unwrap();
        let scaled = ComplexPoint::new(base.iter().map(|c| c * scale).collect()).unwrap();
        let turned = ComplexPoint::new(
            base.iter().zip(&phases).map(|(c, &p)| c * Complex64::from_polar(1.0, p)).collect(),
        ).unwrap();
        for other in [scaled, turned] {
            let m1 = moment(&a, &other).unwrap();
            for (x, y) in m0.iter().zip(&m1) {
                prop_assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn sampling_is_seeded(seed in any::<u64>(), n in 1usize..40) {
        let a = IntMatrix::from_rows(&[vec![1, 0, 3]]).unwrap();
        prop_assert_eq!(sample_moment_image(&a, n, seed).unwrap(), sample_moment_image(&a, n, seed).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn families_interpolate(w in prop::collection::vec(-3i64..=5, 4), pick in 0usize..2) {
        let ideal = match pick {
            0 => Ideal::parse(&["u3", "u2", "u1", "u0"], &["u2^2 - u3*u1", "u1^2 - u2*u0", "u2*u1 - u3*u0"]).unwrap(),
            _ => Ideal::parse(&["a", "b", "c", "d"], &["a*d - b*c + c^2", "b^2 - a*c"]).unwrap(),
        };
        for conv in [Convention::Min, Convention::Max] {
            let fam = family_ideal(&ideal, &w, conv).unwrap();
            prop_assert!(fiber(&fam, &integer(1)).unwrap().same_ideal(&ideal).unwrap());
            let init = initial_ideal(&ideal, &InitialSpec::Weight { w: w.clone(), convention: conv }).unwrap();
            prop_assert!(fiber(&fam, &integer(0)).unwrap().same_ideal(&init).unwrap());
        }
    }

    #[test]
    fn embedding_images_are_additive(a in prop::collection::vec(0u32..4, 3)) {
        let f = fixtures::load("elliptic").unwrap();
        let opts = DegenOptions { convention: f.convention, degree_bound: 2, cancel: None };
        let r = embed_value_semigroup(&f.ideal, f.matrix.as_ref().unwrap(), &opts).unwrap();
        let vars = f.ideal.vars();
        // substitute the images into x^a and compare with Σ a_j · image_j
        let mut product = Polynomial::one(vars);
        for (j, &k) in a.iter().enumerate() {
            let img = parse_polynomial(&r.images[j].monomial, vars).unwrap();
            product = &product * &img.checked_pow(k).unwrap();
        }
        let mut expected = vec![0u32; vars.len()];
        for (j, &k) in a.iter().enumerate() {
            for (v, e) in expected.iter_mut().enumerate() {
                *e += k * r.images[j].exponent.get(v);
            }
        }
        prop_assert_eq!(product.terms().len(), 1);
        prop_assert_eq!(product.terms()[0].exp.entries(), &expected[..]);
    }
}

#[test]
fn gb_of_each_fixture_survives_shuffles() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for f in fixtures::load_all().unwrap() {
        let order = TermOrder::degrevlex(f.ideal.nvars());
        let reference = buchberger(&f.ideal, &order).unwrap().elements();
        for _ in 0..20 {
            let mut gens = f.ideal.gens().to_vec();
            gens.shuffle(&mut rng);
            let gb = buchberger(&Ideal::new(f.ideal.vars(), gens).unwrap(), &order).unwrap();
            assert_eq!(gb.elements(), reference, "{}", f.name);
        }
    }
}
