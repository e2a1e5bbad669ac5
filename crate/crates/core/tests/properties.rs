use magweyl::modspace::{exponent_check, mixed_norm_raw};
use magweyl::repspace::io::{read_tensor, write_tensor, TensorKind};
use magweyl::{
    Complex, Context64, Decomposition, Exponent, ExponentMode, ExponentQuad, Grid64, LieAlgebraSpec,
    MagneticPotential, Operator64, RatPoly, Rational,
};
use num_bigint::BigInt;
use proptest::prelude::*;

type C64 = Complex<f64>;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n)
}

fn poly(nvars: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), rational()), 0..5)
        .prop_map(move |terms| RatPoly::from_terms(nvars, terms).unwrap())
}

fn exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        Just(Exponent::Infinite),
        (1i64..6, 1i64..4).prop_filter_map("p >= 1", |(p, q)| {
            Exponent::finite(Rational::new(BigInt::from(p + q - 1), BigInt::from(q))).ok()
        }),
    ]
}

fn complex_values(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, b)| C64::new(a, b)), n)
}

fn weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.1f64..2.0, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_laws(p in poly(2), q in poly(2), r in poly(2), x in vector(2)) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        let pq = (&p * &q).eval(&x).unwrap();
        prop_assert_eq!(pq, p.eval(&x).unwrap() * q.eval(&x).unwrap());
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn integral_over_last_variable_matches_simpson(p in poly(2)) {
        // degree <= 2 in the last variable, so Simpson's rule is exact
        let at = |t: Rational| p.substitute_var(1, &t).unwrap();
        let half = Rational::new(1.into(), 2.into());
        let simpson = &(&at(Rational::from_integer(0.into())) + &at(half).scale(&Rational::from_integer(4.into())))
            + &at(Rational::from_integer(1.into()));
        let simpson = simpson.scale(&Rational::new(1.into(), 6.into()));
        prop_assert_eq!(p.integrate_last().unwrap(), simpson);
    }

    #[test]
    fn polynomial_text_round_trip(p in poly(3)) {
        prop_assert_eq!(RatPoly::from_text(3, &p.to_text()).unwrap(), p);
    }

    #[test]
    fn bch_is_a_group_law(x in vector(4), y in vector(4), z in vector(4)) {
        for alg in [LieAlgebraSpec::engel(), LieAlgebraSpec::abelian(4)] {
            let xy_z = alg.bch_product(&alg.bch_product(&x, &y).unwrap(), &z).unwrap();
            let x_yz = alg.bch_product(&x, &alg.bch_product(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(xy_z, x_yz);
            let zero = alg.bch_product(&x, &alg.group_inverse(&x)).unwrap();
            prop_assert!(zero.iter().all(|c| *c == Rational::from_integer(0.into())));
        }
    }

    #[test]
    fn lambda_is_a_homomorphism(g in vector(3), h in vector(3), p in poly(3)) {
        let alg = LieAlgebraSpec::heisenberg();
        let lhs = alg.lambda_poly(&alg.bch_product(&g, &h).unwrap(), &p).unwrap();
        let rhs = alg.lambda_poly(&g, &alg.lambda_poly(&h, &p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exponent_text_round_trip_and_order(a in exponent(), b in exponent()) {
        prop_assert_eq!(a.to_string().parse::<Exponent>().unwrap(), a.clone());
        prop_assert_eq!(a.cmp(&b), b.reciprocal().cmp(&a.reciprocal()));
    }

    #[test]
    fn exponent_check_is_symmetric_in_the_two_factors(
        r in exponent(), s in exponent(), r1 in exponent(), s1 in exponent(), r2 in exponent(), s2 in exponent()
    ) {
        let q = ExponentQuad::new(r.clone(), s.clone(), r1.clone(), s1.clone(), r2.clone(), s2.clone());
        let swapped = ExponentQuad::new(r, s, r2, s2, r1, s1);
        let v = exponent_check(&q, ExponentMode::WignerThm).valid;
        prop_assert_eq!(v, exponent_check(&swapped, ExponentMode::WignerThm).valid);
    }

    #[test]
    fn mixed_norm_is_a_norm(
        u in complex_values(24), v in complex_values(24), w in weights(3),
        r in exponent(), s in exponent(), c in -4.0f64..4.0
    ) {
        let shape = [2, 3, 4];
        let dec = Decomposition::new(3, vec![0, 2], vec![1]).unwrap();
        let n = |x: &[C64]| mixed_norm_raw(x, &shape, &w, &r, &s, &dec).unwrap();
        let sum: Vec<C64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        prop_assert!(n(&sum) <= (n(&u) + n(&v)) * (1.0 + 1e-12));
        let scaled: Vec<C64> = u.iter().map(|a| a * c).collect();
        prop_assert!((n(&scaled) - c.abs() * n(&u)).abs() <= 1e-10 * (1.0 + n(&scaled)));
        let bigger: Vec<C64> = u.iter().zip(&v).map(|(a, b)| C64::new(a.norm() + b.norm(), 0.0)).collect();
        prop_assert!(n(&u) <= n(&bigger) * (1.0 + 1e-12));
    }

    #[test]
    fn equal_exponents_ignore_the_decomposition(u in complex_values(24), w in weights(3), p in exponent()) {
        let shape = [2, 3, 4];
        let a = Decomposition::new(3, vec![0], vec![1, 2]).unwrap();
        let b = Decomposition::new(3, vec![1, 2], vec![0]).unwrap();
        let na = mixed_norm_raw(&u, &shape, &w, &p, &p, &a).unwrap();
        let nb = mixed_norm_raw(&u, &shape, &w, &p, &p, &b).unwrap();
        prop_assert!((na - nb).abs() <= 1e-10 * (1.0 + na));
    }

    #[test]
    fn minkowski_integral_inequality(u in complex_values(12), w in weights(2), r in exponent(), s in exponent()) {
        let (r, s) = if r <= s { (r, s) } else { (s, r) };
        let shape = [3, 4];
        let inner_first = Decomposition::new(2, vec![0], vec![1]).unwrap();
        let inner_second = Decomposition::new(2, vec![1], vec![0]).unwrap();
        let lhs = mixed_norm_raw(&u, &shape, &w, &r, &s, &inner_first).unwrap();
        let rhs = mixed_norm_raw(&u, &shape, &w, &s, &r, &inner_second).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-10));
    }

    #[test]
    fn infinite_exponents_give_the_maximum(u in complex_values(12), w in weights(2)) {
        let dec = Decomposition::new(2, vec![0], vec![1]).unwrap();
        let n = mixed_norm_raw(&u, &[3, 4], &w, &Exponent::Infinite, &Exponent::Infinite, &dec).unwrap();
        prop_assert_eq!(n, u.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }

    #[test]
    fn tensor_round_trip(values in complex_values(12), kind in 0usize..5) {
        let kind = [TensorKind::State, TensorKind::Xi, TensorKind::XiStar, TensorKind::Operator, TensorKind::Other][kind];
        let mut buf = Vec::new();
        write_tensor(&mut buf, kind, &[3, 4], &values).unwrap();
        let t = read_tensor(&mut buf.as_slice()).unwrap();
        prop_assert_eq!(t.kind, kind);
        prop_assert_eq!(t.dims, vec![3, 4]);
        prop_assert_eq!(t.values, values);
    }
}

fn small_context() -> Context64 {
    Context64::new(Grid64::new(1, 16, 12.0, 1.0).unwrap(), MagneticPotential::zero(1)).unwrap()
}

fn gaussian() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (-1.0f64..1.0, 0.8f64..1.4, -1.0f64..1.0, -0.2f64..0.2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ambiguity_orthogonality(a in gaussian(), b in gaussian(), c in gaussian(), d in gaussian()) {
        let ctx = small_context();
        let spec = ctx.spec();
        let st = |(x, s, p, k): (f64, f64, f64, f64)| spec.gaussian(&[x], s, &[p], k);
        let (f1, f2, p1, p2) = (st(a), st(b), st(c), st(d));
        let lhs = ctx.ambiguity(&f1, &p1).unwrap().inner(&ctx.ambiguity(&f2, &p2).unwrap());
        let rhs = spec.inner(&f1, &f2).unwrap() * spec.inner(&p2, &p1).unwrap();
        let scale = [&f1, &f2, &p1, &p2].iter().map(|f| spec.norm(f).unwrap()).product::<f64>();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * scale);
    }

    #[test]
    fn wigner_quantizes_to_rank_one(a in gaussian(), b in gaussian(), g in gaussian()) {
        let ctx = small_context();
        let spec = ctx.spec();
        let st = |(x, s, p, k): (f64, f64, f64, f64)| spec.gaussian(&[x], s, &[p], k);
        let (f, phi, psi) = (st(a), st(b), st(g));
        let op = ctx.quantize(&ctx.wigner(&f, &phi).unwrap()).unwrap();
        let target = Operator64::rank_one(&f, &phi, spec.weight()).unwrap();
        prop_assert!(op.sub(&target).unwrap().hs_norm() <= 1e-9 * target.hs_norm());
        let applied = op.apply(&psi).unwrap();
        let ip = spec.inner(&psi, &phi).unwrap();
        let err: f64 = applied.iter().zip(&f).map(|(u, v)| (u - v * ip).norm()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-9 * (1.0 + ip.norm()));
    }

    #[test]
    fn dequantize_inverts_quantize(a in gaussian(), b in gaussian()) {
        let ctx = small_context();
        let spec = ctx.spec();
        let sym = ctx.wigner(&spec.gaussian(&[a.0], a.1, &[a.2], a.3), &spec.gaussian(&[b.0], b.1, &[b.2], b.3)).unwrap();
        let back = ctx.dequantize(&ctx.quantize(&sym).unwrap()).unwrap();
        prop_assert!(back.sub(&sym).norm() <= 1e-9 * sym.norm());
    }
}
