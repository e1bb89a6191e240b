use std::time::Instant;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superspherical::gl12::{
    alpha_beta_recursive, alpha_closed, beta_closed, beta_from_alpha, build_pair, queer_pair, small_rational,
    Gl12Pair,
};
use superspherical::poly::UniPoly;
use superspherical::sequences::{check_tangent_identity, zigzag, zigzag_bruteforce};
use superspherical::Scalar;

const SEED: u64 = 0x5eed_1202;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn c1(g: &Gl12Pair) -> Outcome {
    for n in 1..=12usize {
        let (alpha, beta) = alpha_beta_recursive(n);
        let closed = (alpha_closed(n), beta_closed(n));
        let pbw = match g.alpha_beta_from_pbw(n as u32) {
            Ok(v) => v,
            Err(e) => return outcome(false, format!("n = {n}: {e}")),
        };
        if closed != (alpha.clone(), beta.clone()) || pbw != (alpha.clone(), beta.clone()) {
            return outcome(false, format!("n = {n}: routes disagree"));
        }
        if beta_from_alpha(n) != beta {
            return outcome(false, format!("n = {n}: odd-binomial sum disagrees"));
        }
        let shape = alpha.degree() == Some(n)
            && beta.degree() == Some(n - 1)
            && alpha.leading().is_some_and(Scalar::is_positive)
            && beta.leading().is_some_and(Scalar::is_positive)
            && alpha.terms().all(|(k, _)| (n - k) % 2 == 0)
            && beta.terms().all(|(k, _)| (n - 1 - k) % 2 == 0);
        if !shape {
            return outcome(false, format!("n = {n}: degree, sign or parity pattern wrong"));
        }
    }
    outcome(true, "recursive = closed = PBW for 1 <= n <= 12")
}

fn c2(g: &Gl12Pair) -> Outcome {
    let routes = |n: usize| -> Vec<(UniPoly, UniPoly)> {
        vec![
            alpha_beta_recursive(n),
            (alpha_closed(n), beta_closed(n)),
            g.alpha_beta_from_pbw(n as u32).expect("pbw route"),
        ]
    };
    let base = routes(1).into_iter().all(|r| r == (UniPoly::x(), UniPoly::one()));
    let four = (UniPoly::from_ints(&[5, 0, -6, 0, 1]), UniPoly::from_ints(&[-2, 0, 3]));
    let spot = routes(4).into_iter().all(|r| r.0 == four.0)
        && routes(3).into_iter().all(|r| r.1 == four.1)
        && beta_from_alpha(3) == four.1;
    outcome(base && spot, "alpha_1 = x, beta_0 = 1, alpha_4 = x^4 - 6x^2 + 5, beta_2 = 3x^2 - 2")
}

fn c3() -> Outcome {
    let brute = (0..=10).all(|n| zigzag_bruteforce(n).ok() == Some(zigzag(n)));
    let tangent = (1..=6).all(check_tangent_identity);
    let spot = zigzag(10) == BigInt::from(50521);
    outcome(brute && tangent && spot, "zigzag = brute force for n <= 10, tangent identity for m <= 6")
}

fn c4(g: &Gl12Pair) -> Outcome {
    match g.verify_table() {
        Ok(r) => outcome(r.pass(), format!("{} brackets, {} mismatches", r.entries.len(), r.mismatches())),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c5(g: &Gl12Pair) -> Outcome {
    let r = g.env.check_hopf_axioms(5);
    let failures = r.coassociativity.failures.len()
        + r.counit.failures.len()
        + r.antipode.failures.len()
        + r.morphism.failures.len();
    outcome(
        r.pass(),
        format!(
            "{} monomials, {} morphism products, {failures} failures",
            r.monomials, r.morphism.checked
        ),
    )
}

fn c6(g: &Gl12Pair) -> Outcome {
    let ctx = g.context().expect("context");
    let inverts = ctx.check_reduce_inverts(5);
    let tri = ctx.check_unitriangular(5);
    outcome(
        inverts.pass() && tri.pass(),
        format!(
            "{} monomials of S(p), unitriangular rank {}/{}",
            inverts.checked, tri.rank, tri.monomials
        ),
    )
}

fn c7(g: &Gl12Pair) -> Outcome {
    let ctx = g.context().expect("context");
    let mut notes = Vec::new();
    let mut pass = true;
    for r in 0..=4 {
        match ctx.check_spa_decomposition(r) {
            Ok(rep) => pass &= rep.pass,
            Err(e) => {
                pass = false;
                notes.push(e.to_string());
            }
        }
    }
    pass &= g.pair.check_centralizer();
    for n in 1..=2 {
        pass &= queer_pair(n).map(|q| q.check_centralizer()).unwrap_or(false);
    }
    match g.diagonal_cartan().and_then(|h| ctx.check_root_lemma(&h, 4)) {
        Ok(rep) => {
            pass &= rep.pass();
            notes.push(format!("{} root identities", rep.checked));
        }
        Err(e) => {
            pass = false;
            notes.push(e.to_string());
        }
    }
    notes.insert(0, "S(p) decomposition r <= 4, centralizers of gl(1|2), q(1), q(2)".into());
    outcome(pass, notes.join(", "))
}

fn c8(g: &Gl12Pair) -> Outcome {
    match g.verify_ideal_basis(6) {
        Ok(r) => outcome(
            r.pass(),
            format!(
                "membership {}, rank {}/{}, total rank {}/{}",
                if r.membership() { "ok" } else { "failed" },
                r.rank,
                r.listed,
                r.total_rank,
                r.dimension
            ),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c9(g: &Gl12Pair) -> Outcome {
    let radial = match g.radial_restriction_check(6) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let closure = match g.check_product_closure(5, 5, &mut rng) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    outcome(
        radial.pass() && closure.pass(),
        format!(
            "rank {}/{} representatives, kernel dim {}, {} closure draws",
            radial.rank,
            radial.representatives,
            radial.kernel.len(),
            closure.draws
        ),
    )
}

fn c10(g: &Gl12Pair) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let k0s: Vec<_> = (0..50)
        .map(|_| (small_rational(&mut rng), small_rational(&mut rng), small_rational(&mut rng)))
        .collect();
    let vs: Vec<_> = (0..50)
        .map(|_| (small_rational(&mut rng), small_rational(&mut rng)))
        .collect();
    let r = g.verify_lemma_suites(8, &k0s, &vs);
    let checked: usize = r.identities.values().map(|i| i.checked).sum();
    outcome(r.pass(), format!("{} identities, {checked} instances, n <= 8", r.identities.len()))
}

fn main() {
    let g = build_pair().expect("gl(1|2) pair");
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("alpha/beta triple agreement", Box::new(|| c1(&g))),
        ("alpha/beta spot values", Box::new(|| c2(&g))),
        ("zigzag oracle", Box::new(c3)),
        ("commutator table", Box::new(|| c4(&g))),
        ("Hopf axioms", Box::new(|| c5(&g))),
        ("symmetrization isomorphism", Box::new(|| c6(&g))),
        ("decomposition suite", Box::new(|| c7(&g))),
        ("basis of I", Box::new(|| c8(&g))),
        ("radial restriction", Box::new(|| c9(&g))),
        ("lemma identity suites", Box::new(|| c10(&g))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status} {name}: {} ({:.1}s)",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
