use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;

use superspherical::enveloping::{DualFunctional, Monomial, TensorElement, UElement};
use superspherical::expr::{parse, Expr};
use superspherical::gl12::*;
use superspherical::lie::{coordinates_in, gl_matrix_units, gl_superalgebra, root_decomposition, LieSuperalgebra, SuperVector};
use superspherical::linalg::{solve_membership, Matrix};
use superspherical::poly::UniPoly;
use superspherical::scalar::binomial;
use superspherical::sequences::{bernoulli_table, zigzag_table};
use superspherical::{Parity, Scalar};

fn gl12() -> &'static Gl12Pair {
    static PAIR: OnceLock<Gl12Pair> = OnceLock::new();
    PAIR.get_or_init(|| build_pair().unwrap())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Scalar::new(n, d))
}

fn word(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..9, 0..=max)
}

fn element(max_len: usize) -> impl Strategy<Value = UElement> {
    prop::collection::vec((word(max_len), scalar()), 1..=3).prop_map(|terms| {
        let env = &gl12().env;
        let mut u = UElement::zero();
        for (w, c) in terms {
            u.add_scaled(&c, &env.word(&w));
        }
        u
    })
}

/// Leftmost-first rewriting on words, with no memo and no shared code
/// with the engine beyond the bracket table.
fn naive_normal_form(alg: &LieSuperalgebra, w: &[usize]) -> UElement {
    let mut pending: Vec<(Vec<usize>, Scalar)> = vec![(w.to_vec(), Scalar::one())];
    let mut done = UElement::zero();
    while let Some((w, c)) = pending.pop() {
        let bad = (0..w.len().saturating_sub(1))
            .find(|&i| w[i] > w[i + 1] || (w[i] == w[i + 1] && alg.parity(w[i]).is_odd()));
        let Some(i) = bad else {
            let mut exps = vec![0u32; alg.dim()];
            for &g in &w {
                exps[g] += 1;
            }
            done.add_term(Monomial::from_exponents(exps), c);
            continue;
        };
        let (x, y) = (w[i], w[i + 1]);
        let splice = |mid: Vec<usize>| -> Vec<usize> {
            let mut out = w[..i].to_vec();
            out.extend(mid);
            out.extend_from_slice(&w[i + 2..]);
            out
        };
        let br = alg.bracket_basis(x, y).clone();
        if x == y {
            let half = Scalar::new(1, 2);
            for (g, b) in br.terms() {
                pending.push((splice(vec![g]), &(&c * &half) * b));
            }
        } else {
            let sign = Scalar::sign(alg.parity(x).is_odd() && alg.parity(y).is_odd());
            pending.push((splice(vec![y, x]), &c * &sign));
            for (g, b) in br.terms() {
                pending.push((splice(vec![g]), &c * b));
            }
        }
    }
    done
}

fn homogeneous_word(w: &[usize]) -> Parity {
    let alg = gl12().algebra();
    Parity::from_bool(w.iter().filter(|&&g| alg.parity(g).is_odd()).count() % 2 == 1)
}

fn ast() -> impl Strategy<Value = Expr> {
    let names = prop::sample::select(vec!["z", "k", "k1", "k2", "e'", "f'", "p", "e", "f"]);
    let leaf = prop_oneof![
        (0i64..20, 1i64..5).prop_map(|(n, d)| Expr::Num(Scalar::new(n, d))),
        names.prop_map(|n| Expr::Gen(n.to_string())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip(), Scalar::one());
        }
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn rank_is_transpose_invariant(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 3)) {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect()).unwrap();
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn membership_recombines(
        span in prop::collection::vec(prop::collection::vec(scalar(), 4), 1..4),
        coeffs in prop::collection::vec(scalar(), 4),
    ) {
        let mut target = vec![Scalar::zero(); 4];
        for (v, c) in span.iter().zip(&coeffs) {
            for (t, x) in target.iter_mut().zip(v) {
                *t += &(c * x);
            }
        }
        let found = solve_membership(&target, &span).unwrap().expect("in span");
        let mut back = vec![Scalar::zero(); 4];
        for (v, c) in span.iter().zip(&found) {
            for (t, x) in back.iter_mut().zip(v) {
                *t += &(c * x);
            }
        }
        prop_assert_eq!(back, target);
    }

    #[test]
    fn engine_matches_naive_rewriting(w in word(5)) {
        let g = gl12();
        prop_assert_eq!(g.env.word(&w), naive_normal_form(g.algebra(), &w));
    }

    #[test]
    fn multiplication_is_associative(a in element(2), b in element(2), c in element(2)) {
        let env = &gl12().env;
        prop_assert_eq!(env.multiply(&env.multiply(&a, &b), &c), env.multiply(&a, &env.multiply(&b, &c)));
    }

    #[test]
    fn normal_form_is_idempotent(a in element(4)) {
        let env = &gl12().env;
        prop_assert_eq!(env.multiply(&a, &env.one()), a.clone());
        let again = a.terms().fold(UElement::zero(), |mut acc, (m, c)| {
            acc.add_scaled(c, &env.word(&m.factors()));
            acc
        });
        prop_assert_eq!(again, a);
    }

    #[test]
    fn coproduct_is_multiplicative(x in word(3), y in word(3)) {
        let env = &gl12().env;
        let (a, b) = (env.word(&x), env.word(&y));
        let lhs = env.coproduct(&env.multiply(&a, &b));
        let rhs = env.tensor_multiply(&env.coproduct(&a), &env.coproduct(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_reverses_products(x in word(3), y in word(3)) {
        let env = &gl12().env;
        let (a, b) = (env.word(&x), env.word(&y));
        let sign = Scalar::sign(homogeneous_word(&x).swap_is_negative(homogeneous_word(&y)));
        let lhs = env.antipode(&env.multiply(&a, &b));
        let rhs = env.multiply(&env.antipode(&b), &env.antipode(&a)).scaled(&sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_is_linear_and_idempotent(a in element(4), b in element(4), c in scalar()) {
        let g = gl12();
        let mut ab = a.clone();
        ab.add_scaled(&c, &b);
        let mut sum = g.quotient_reduce(&a).as_uelement().clone();
        sum.add_scaled(&c, g.quotient_reduce(&b).as_uelement());
        let reduced = g.quotient_reduce(&ab);
        prop_assert_eq!(reduced.as_uelement(), &sum);
        let q = g.quotient_reduce(&a);
        prop_assert_eq!(g.quotient_reduce(q.as_uelement()), q);
    }

    #[test]
    fn structure_constants_match_matrices(
        x in prop::collection::vec(scalar(), 9),
        y in prop::collection::vec(scalar(), 9),
    ) {
        let g = gl12();
        let (x, y) = (SuperVector::from_dense(&x), SuperVector::from_dense(&y));
        // split into homogeneous parts so the supercommutator is defined
        let parts = |v: &SuperVector, odd: bool| SuperVector::from_terms(
            v.terms().filter(|(i, _)| g.algebra().parity(*i).is_odd() == odd).map(|(i, c)| (i, c.clone())),
        );
        for xo in [false, true] {
            for yo in [false, true] {
                let (a, b) = (parts(&x, xo), parts(&y, yo));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let br = g.algebra().bracket(&a, &b).unwrap();
                let mat = g.matrices.matrix_of(&a).supercommutator(&g.matrices.matrix_of(&b)).unwrap();
                prop_assert_eq!(g.matrices.matrix_of(&br), mat);
            }
        }
    }

    #[test]
    fn printed_expressions_reparse(e in ast()) {
        let printed = e.to_string();
        prop_assert_eq!(parse(&printed).unwrap(), e, "{}", printed);
    }

    #[test]
    fn printed_elements_reparse(a in element(3)) {
        let env = &gl12().env;
        let again = superspherical::expr::evaluate(&env.format(&a), env).unwrap();
        prop_assert_eq!(again, a);
    }

    #[test]
    fn alpha_beta_shape(n in 1usize..=12) {
        let (alpha, beta) = alpha_beta_recursive(n);
        prop_assert_eq!(alpha.degree(), Some(n));
        prop_assert_eq!(beta.degree(), Some(n - 1));
        prop_assert!(alpha.leading().unwrap().is_positive());
        prop_assert!(beta.leading().unwrap().is_positive());
        prop_assert!(alpha.terms().all(|(k, _)| (n - k) % 2 == 0));
        prop_assert!(beta.terms().all(|(k, _)| (n - 1 - k) % 2 == 0));
        prop_assert_eq!(beta_from_alpha(n), beta_closed(n));
        prop_assert_eq!(alpha_closed(n), alpha);
    }

    #[test]
    fn binomial_splitting_and_mirror(n in 0u32..=6, a in scalar(), b in scalar()) {
        let g = gl12();
        prop_assert!(g.verify_binomial_splitting(n, &a, &b));
        prop_assert!(g.verify_mirror(n, &a, &b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn dual_product_matches_expanded_coproduct(seed in prop::collection::vec(scalar(), 220)) {
        // Δ(x) rebuilt as the product of Δ over the factors of x
        let env = &gl12().env;
        let monomials = env.monomials_up_to(3);
        let functional = |offset: usize| {
            let values: BTreeMap<_, _> = monomials
                .iter()
                .enumerate()
                .filter(|(_, m)| m.parity(env.parities()) == Parity::Even)
                .map(|(i, m)| (m.clone(), seed[(i + offset) % seed.len()].clone()))
                .collect();
            DualFunctional::new(3, Parity::Even, values).unwrap()
        };
        let (lam, mu) = (functional(0), functional(7));
        for m in &monomials {
            let mut delta = TensorElement::zero();
            delta.add_term(Monomial::one(9), Monomial::one(9), Scalar::one());
            for g in m.factors() {
                delta = env.tensor_multiply(&delta, &env.coproduct(&env.generator(g)));
            }
            let mut expected = Scalar::zero();
            for (a, b, c) in delta.terms() {
                expected += &(c * &(&lam.value(a).unwrap() * &mu.value(b).unwrap()));
            }
            prop_assert_eq!(env.dual_product(&lam, &mu, m).unwrap(), expected);
        }
    }
}

#[test]
fn gl_brackets_match_matrix_units() {
    for (m, n) in [(1, 0), (1, 1), (2, 1), (1, 2), (2, 2), (1, 3), (3, 1)] {
        let alg = gl_superalgebra(m, n).unwrap();
        let units = gl_matrix_units(m, n);
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let mat = units.matrices()[i].supercommutator(&units.matrices()[j]).unwrap();
                assert_eq!(units.matrix_of(alg.bracket_basis(i, j)), mat, "gl({m}|{n}) {i} {j}");
            }
        }
    }
}

#[test]
fn pair_brackets_respect_grading() {
    for pair in [gl12().pair.clone(), queer_pair(2).unwrap()] {
        let alg = &pair.algebra;
        let dim = alg.dim();
        let inside = |v: &SuperVector, basis: &[SuperVector]| coordinates_in(dim, basis, v).unwrap().is_some();
        for x in &pair.k_basis {
            for y in &pair.k_basis {
                assert!(inside(&alg.bracket(x, y).unwrap(), &pair.k_basis));
            }
            for y in &pair.p_basis {
                assert!(inside(&alg.bracket(x, y).unwrap(), &pair.p_basis));
            }
        }
        for x in &pair.p_basis {
            for y in &pair.p_basis {
                assert!(inside(&alg.bracket(x, y).unwrap(), &pair.k_basis));
            }
        }
    }
}

#[test]
fn theta_squares_to_identity_and_permutes_roots() {
    let g = gl12();
    let theta = &g.pair.theta;
    for i in 0..9 {
        let v = SuperVector::basis(i);
        assert_eq!(theta.apply(&theta.apply(&v)), v);
    }
    let h = g.diagonal_cartan().unwrap();
    let roots = root_decomposition(g.algebra(), &h).unwrap();
    // θ(h_i) = Σ_j t_ij h_j, so (α∘θ)(h_i) = Σ_j t_ij α(h_j)
    let t: Vec<Vec<Scalar>> = h
        .iter()
        .map(|hi| coordinates_in(9, &h, &theta.apply(hi)).unwrap().expect("θ preserves h"))
        .collect();
    for (alpha, space) in &roots.roots {
        let image: Vec<Scalar> = t
            .iter()
            .map(|row| row.iter().zip(alpha).map(|(a, b)| a * b).sum())
            .collect();
        for x in space {
            let tx = theta.apply(x);
            assert!(roots.roots[&image].iter().any(|y| coordinates_in(9, std::slice::from_ref(y), &tx).unwrap().is_some()));
        }
    }
}

#[test]
fn sequence_recurrences() {
    let a = zigzag_table(20);
    for n in 1..20u64 {
        let rhs: BigInt = (0..=n)
            .map(|k| {
                let c = binomial(n, k);
                c.numer().clone() * &a[k as usize] * &a[(n - k) as usize]
            })
            .sum();
        assert_eq!(BigInt::from(2) * &a[n as usize + 1], rhs, "n = {n}");
    }
    let b = bernoulli_table(20);
    for m in 1..=20u64 {
        let s: Scalar = (0..=m).map(|k| &binomial(m + 1, k) * &b[k as usize]).sum();
        assert!(s.is_zero());
    }
    assert_eq!(UniPoly::from_ints(&[0, 1]), UniPoly::x());
}
