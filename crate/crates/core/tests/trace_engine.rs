use num_complex::Complex64;
use wordmap::poly::{ComplexTriple, TracePoly, Var};
use wordmap::sl2::{random_sl2, stream, trace_coords, Mat2};
use wordmap::trace::*;
use wordmap::word::FreeWord;

fn p(text: &str) -> TracePoly {
    text.parse().unwrap()
}

fn w(text: &str) -> FreeWord {
    FreeWord::parse(text).unwrap()
}

/// Values produced by `oracle/trace_oracle.py`.
const ORACLE: &[(&str, &str)] = &[
    ("[x^2,y]", "s^4 - s^3*t*u + s^2*t^2 + s^2*u^2 - 4*s^2 + 2"),
    ("[x,y^2]", "s^2*t^2 - s*t^3*u + t^4 + t^2*u^2 - 4*t^2 + 2"),
    ("[x^2,y^2]", "s^4*t^2 - s^3*t^3*u + s^2*t^4 + s^2*t^2*u^2 - 4*s^2*t^2 + 2"),
    ("x^2y^2", "-s^2 + s*t*u - t^2 + 2"),
    ("xy^-1", "s*t - u"),
    ("x^3y", "s^2*u - s*t - u"),
    ("xyx^-1y^2", "-s^2*t + s*t^2*u - t*u^2 + t"),
    ("x^2yx^-1y^-1", "s^3 - s^2*t*u + s*t^2 + s*u^2 - 3*s"),
];

#[test]
fn matches_independent_oracle() {
    for (word, poly) in ORACLE {
        assert_eq!(trace_polynomial(&w(word)), p(poly), "{word}");
    }
}

#[test]
fn trace_polynomial_examples() {
    assert_eq!(trace_polynomial(&w("[x,y]")), p("s^2 + t^2 + u^2 - s*t*u - 2"));
    assert_eq!(trace_polynomial(&w("x^2y")), p("s*u - t"));
    assert_eq!(trace_polynomial(&w("xy")), TracePoly::u());
    assert_eq!(trace_polynomial(&w("x")), TracePoly::s());
    assert_eq!(trace_polynomial(&FreeWord::identity()), TracePoly::constant(2));
}

#[test]
fn dickson_and_phi_examples() {
    assert_eq!(dickson_d(0), TracePoly::constant(2));
    assert_eq!(dickson_d(1), TracePoly::s());
    assert_eq!(dickson_e(0), TracePoly::one());
    assert_eq!(dickson_e(1), TracePoly::s());
    assert_eq!(dickson_d(2).substitute(Var::T, &TracePoly::one()), p("s^2 - 2"));
    assert_eq!(dickson_e(2).substitute(Var::T, &TracePoly::one()), p("s^2 - 1"));
    assert_eq!(phi(1), TracePoly::one());
    assert_eq!(phi(2), TracePoly::s());
    assert_eq!(phi(3), p("s^2 - 1"));
}

#[test]
fn symbolic_multiplication_matches_matrices() {
    use wordmap::trace::{Letter, SymbolicSL2};
    let i = SymbolicSL2::identity();
    let x = i.mul_letter(Letter::X);
    assert_eq!(x, SymbolicSL2::new(TracePoly::zero(), TracePoly::one(), TracePoly::zero(), TracePoly::zero()));
    let yx = i.mul_letter(Letter::Y).mul_letter(Letter::X);
    assert_eq!(yx, SymbolicSL2::new(p("u - s*t"), TracePoly::t(), TracePoly::s(), p("-1")));
    let xx = x.mul_letter(Letter::X);
    assert_eq!(xx, SymbolicSL2::new(p("-1"), TracePoly::s(), TracePoly::zero(), TracePoly::zero()));

    // y x = s y + t x + (u - st) I - xy, and x^2 = s x - I, on random pairs
    let mut rng = stream(5, 0);
    for _ in 0..100 {
        let (a, b) = (random_sl2(&mut rng), random_sl2(&mut rng));
        let pt = trace_coords(&a, &b);
        let lhs = b.mul(&a);
        let rhs = b.scale(pt.s) + a.scale(pt.t) + Mat2::identity().scale(pt.u - pt.s * pt.t) - a.mul(&b);
        assert!((lhs - rhs).op_norm() < 1e-9 * lhs.op_norm().max(1.0));
        let sq = a.mul(&a) - (a.scale(pt.s) - Mat2::identity());
        assert!(sq.op_norm() < 1e-9 * a.op_norm().powi(2).max(1.0));
        let ev = yx.eval_at(&pt, &a, &b);
        assert!((ev - lhs).op_norm() < 1e-9 * lhs.op_norm().max(1.0));
    }
}

#[test]
fn j_examples() {
    let j = j_poly();
    assert_eq!(&trace_polynomial(&w("[x,y]")) - &TracePoly::constant(2), j);
    assert_eq!(j.eval(&ComplexTriple::real(2.0, 2.0, 2.0)), Complex64::new(0.0, 0.0));
    let flipped = j.substitute(Var::U, &p("s*t - u"));
    assert_eq!(flipped, j);
}

#[test]
fn f_and_q_examples() {
    assert_eq!(f_nm(1, 1).unwrap(), (1, TracePoly::one()));
    for n in 1..=4 {
        let (sp, fp) = f_nm(n, 1).unwrap();
        let (sn, fn_) = f_nm(-n, 1).unwrap();
        assert_eq!(fp, fn_);
        assert_eq!(sp, -sn);
    }
    let (sign, f22) = f_nm(2, 2).unwrap();
    assert_eq!((sign, f22.clone()), (1, p("s*t")));
    assert_eq!(trace_polynomial(&w("x^2y^2")).coefficient_in(Var::U, 1), f22);

    assert_eq!(q_commutator(1, 1).unwrap(), TracePoly::one());
    assert_eq!(q_commutator(2, 1).unwrap(), p("s^2"));
    let manual = (&trace_polynomial(&w("[x^2,y]")) - &TracePoly::constant(2)).div_exact(&j_poly()).unwrap();
    assert_eq!(manual, p("s^2"));
    for (n, m) in [(2, 3), (3, 1), (1, 4)] {
        assert_eq!(q_commutator(n, m).unwrap(), q_commutator(-n, -m).unwrap());
    }
}

#[test]
fn commutator_identities_are_exact() {
    let j = j_poly();
    for n in 1..=6 {
        for m in 1..=6 {
            let pw = trace_polynomial(&FreeWord::power_commutator(n, m));
            let f = phi_product(n, m);
            assert_eq!(&pw - &TracePoly::constant(2), &(&f * &f) * &j, "[x^{n},y^{m}]");
        }
    }
    for n in 1..=4i64 {
        for m in 1..=4i64 {
            let base = trace_polynomial(&FreeWord::power_commutator(n, m));
            for (a, b) in [(-n, m), (n, -m), (-n, -m)] {
                assert_eq!(trace_polynomial(&FreeWord::power_commutator(a, b)), base);
            }
        }
    }
}

#[test]
fn power_words_are_linear_in_u() {
    for n in -6..=6i64 {
        for m in -6..=6i64 {
            if n == 0 || m == 0 {
                continue;
            }
            let pw = trace_polynomial(&FreeWord::power_pair(n, m));
            assert_eq!(pw.degree_in(Var::U), Some(1));
            let lead = pw.coefficient_in(Var::U, 1);
            let f = phi_product(n, m);
            assert!(lead == f || lead == -&f, "x^{n}y^{m}");
        }
    }
    for n in 1..=8u32 {
        let xn = FreeWord::generator(wordmap::word::Generator::X, n as i64);
        assert_eq!(trace_polynomial(&xn), dickson_d(n).substitute(Var::T, &TracePoly::one()));
    }
}

#[test]
fn singular_set_examples() {
    let d = singular_sets(1, 1).unwrap();
    assert_eq!(d.a_n.len(), 1);
    assert!(d.a_n[0].norm() < 1e-9);
    assert_eq!(d.b_nm.len(), 1);
    assert!((d.b_nm[0] + 2.0).norm() < 1e-9);
    let d = singular_sets(2, 1).unwrap();
    let mut a2: Vec<f64> = d.a_n.iter().map(|z| z.re).collect();
    a2.sort_by(f64::total_cmp);
    assert_eq!(a2.len(), 2);
    assert!((a2[0] + 2f64.sqrt()).abs() < 1e-9 && (a2[1] - 2f64.sqrt()).abs() < 1e-9);
    for n in 1..=5 {
        for m in 1..=5 {
            let d = singular_sets(n, m).unwrap();
            assert!(d.a_n.len() <= n as usize + 1);
            assert!(d.b_nm.len() <= ((n + 1) * (m + 1)) as usize);
        }
    }
}

#[test]
fn singular_values_are_critical_values() {
    // at a critical point of P_{[x^n,y^m]}, P equals one of the values in B
    let (n, m) = (2u32, 1u32);
    let d = singular_sets(n, m).unwrap();
    for &s0 in &d.a_n {
        // u-derivative vanishes at 2u = st; pick t on the critical curve
        let pw = trace_polynomial(&FreeWord::power_commutator(n as i64, m as i64));
        let t0 = Complex64::new(0.0, 0.0);
        let pt = ComplexTriple::new(s0, t0, s0 * t0 / 2.0);
        let g = surface_gradient(&pw, &pt);
        assert!(g[0].norm() < 1e-8 && g[2].norm() < 1e-8, "{g:?}");
        let val = pw.eval(&pt);
        assert!(d.b_nm.iter().any(|b| (b - val).norm() < 1e-8), "{val} not in {:?}", d.b_nm);
    }
}

#[test]
fn gradient_examples() {
    let pw = trace_polynomial(&w("[x,y]"));
    let pt = ComplexTriple::real(1.3, 0.4, 1.3 * 0.4 / 2.0);
    assert!(surface_gradient(&pw, &pt)[2].norm() < 1e-15);
    let zero = surface_gradient(&TracePoly::constant(3), &pt);
    assert!(zero.iter().all(|z| z.norm() == 0.0));
    let mut rng = stream(9, 0);
    for (n, m) in [(2, 3), (3, 2), (1, 4)] {
        let pw = trace_polynomial(&FreeWord::power_commutator(n, m));
        let f = phi_product(n, m);
        for _ in 0..20 {
            let pt = ComplexTriple::new(
                wordmap::sl2::complex_normal(&mut rng),
                wordmap::sl2::complex_normal(&mut rng),
                wordmap::sl2::complex_normal(&mut rng),
            );
            let du = surface_gradient(&pw, &pt)[2];
            let fv = f.eval(&pt);
            let want = fv * fv * (2.0 * pt.u - pt.s * pt.t);
            assert!((du - want).norm() < 1e-9 * want.norm().max(1.0));
        }
    }
}
