//! The check suites behind `superspherical check`.
//!
//! Each suite returns a [`CheckReport`] whose items come in a fixed order,
//! so two runs with the same arguments serialize identically. Random
//! parameters come from a ChaCha generator with a fixed seed.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::enveloping::Enveloping;
use crate::error::{Error, Result};
use crate::gl12::{
    alpha_beta_recursive, alpha_closed, beta_closed, beta_from_alpha, build_pair, queer_pair, small_rational,
    Gl12Pair, PAIR_NAME,
};
use crate::lie::{gl_superalgebra, LieSuperalgebra, SymmetricPair};
use crate::report::{CheckReport, IdentityReport};
use crate::sequences::{check_tangent_identity, zigzag, zigzag_bruteforce, BRUTEFORCE_LIMIT};
use crate::symmetrization::PairContext;

/// Seed of every randomized check.
pub const SEED: u64 = 0x5eed_1202;

/// Random `k_0` and `v` draws per run of the lemma suites.
pub const LEMMA_DRAWS: usize = 10;

/// Pairs of random functionals multiplied in the closure check.
pub const CLOSURE_DRAWS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Jacobi,
    Hopf,
    Symmetrization,
    Alpha,
    Ideal,
    Radial,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["jacobi", "hopf", "symmetrization", "alpha", "ideal", "radial", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::Hopf => "hopf",
            Suite::Symmetrization => "symmetrization",
            Suite::Alpha => "alpha",
            Suite::Ideal => "ideal",
            Suite::Radial => "radial",
            Suite::All => "all",
        }
    }

    /// Degree used when none is given: `n ≤ 12` for the polynomial
    /// routes, degree 6 for everything inside `U(g)`.
    pub fn default_degree(self) -> u32 {
        match self {
            Suite::Alpha => 12,
            _ => 6,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "jacobi" => Suite::Jacobi,
            "hopf" => Suite::Hopf,
            "symmetrization" => Suite::Symmetrization,
            "alpha" => Suite::Alpha,
            "ideal" => Suite::Ideal,
            "radial" => Suite::Radial,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite `{s}`"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a suite runs against.
pub enum Target {
    Gl12(Box<Gl12Pair>),
    Pair(SymmetricPair),
    Algebra(Arc<LieSuperalgebra>),
}

impl Target {
    /// `gl12` (the default pair), `glMN` for `gl(M|N)`, `qN` for
    /// `(gl(N|N), q(N))`, or JSON text describing an algebra.
    pub fn resolve(spec: &str) -> Result<Target> {
        if spec == "gl12" || spec == PAIR_NAME {
            return Ok(Target::Gl12(Box::new(build_pair()?)));
        }
        let digits = |s: &str| s.chars().all(|c| c.is_ascii_digit()) && !s.is_empty();
        if let Some(rest) = spec.strip_prefix("gl") {
            if rest.len() == 2 && digits(rest) {
                let m = rest[..1].parse().expect("digit");
                let n = rest[1..].parse().expect("digit");
                return Ok(Target::Algebra(Arc::new(gl_superalgebra(m, n)?)));
            }
        }
        if let Some(rest) = spec.strip_prefix('q') {
            if digits(rest) {
                return Ok(Target::Pair(queer_pair(rest.parse().expect("digits"))?));
            }
        }
        if spec.trim_start().starts_with('{') {
            return Ok(Target::Algebra(Arc::new(LieSuperalgebra::from_json(spec)?)));
        }
        Err(Error::Parse(format!("unknown algebra `{spec}`")))
    }

    pub fn algebra(&self) -> &Arc<LieSuperalgebra> {
        match self {
            Target::Gl12(g) => g.algebra(),
            Target::Pair(p) => &p.algebra,
            Target::Algebra(a) => a,
        }
    }

    fn enveloping(&self) -> Arc<Enveloping> {
        match self {
            Target::Gl12(g) => Arc::clone(&g.env),
            _ => Arc::new(Enveloping::new(Arc::clone(self.algebra()))),
        }
    }

    fn context(&self) -> Result<PairContext> {
        match self {
            Target::Gl12(g) => g.context(),
            Target::Pair(p) => PairContext::new(p.clone()),
            Target::Algebra(_) => Err(Error::InvalidPair(format!(
                "{} is an algebra without an involution",
                self.algebra().name()
            ))),
        }
    }

    fn gl12(&self, suite: Suite) -> Result<&Gl12Pair> {
        match self {
            Target::Gl12(g) => Ok(g),
            _ => Err(Error::InvalidPair(format!("suite {suite} runs on gl12 only"))),
        }
    }
}

/// Runs `suite` at `degree`. Unsupported suite and target combinations
/// are errors; failing checks are not.
pub fn run(suite: Suite, target: &Target, degree: Option<u32>, timings: bool) -> Result<CheckReport> {
    let name = target.algebra().name().to_string();
    if suite == Suite::All {
        let mut report = CheckReport::new("all", &name, degree.unwrap_or(Suite::All.default_degree()));
        let parts = [Suite::Jacobi, Suite::Hopf, Suite::Symmetrization, Suite::Alpha, Suite::Ideal, Suite::Radial];
        for part in parts {
            if part_applies(part, target) {
                let sub = run(part, target, degree, timings)?;
                report.absorb(part.name(), sub);
            }
        }
        return Ok(report);
    }
    let d = degree.unwrap_or(suite.default_degree());
    let start = Instant::now();
    let mut report = CheckReport::new(suite.name(), &name, d);
    match suite {
        Suite::Jacobi => jacobi(target, d, &mut report),
        Suite::Hopf => hopf(target, d, &mut report),
        Suite::Symmetrization => symmetrization(target, d, &mut report)?,
        Suite::Alpha => alpha(target.gl12(suite)?, d, &mut report)?,
        Suite::Ideal => ideal(target.gl12(suite)?, d, &mut report)?,
        Suite::Radial => radial(target.gl12(suite)?, d, &mut report)?,
        Suite::All => unreachable!(),
    }
    if timings {
        report.stamp(0, start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn part_applies(suite: Suite, target: &Target) -> bool {
    match suite {
        Suite::Jacobi | Suite::Hopf => true,
        Suite::Symmetrization => !matches!(target, Target::Algebra(_)),
        _ => matches!(target, Target::Gl12(_)),
    }
}

fn jacobi(target: &Target, d: u32, report: &mut CheckReport) {
    let r = target.algebra().check_jacobi();
    let witness = r.failures.iter().map(|t| t.join(", ")).collect();
    report.flag("jacobi", d, r.passed(), r.triples_checked, witness);
}

fn hopf(target: &Target, d: u32, report: &mut CheckReport) {
    let r = target.enveloping().check_hopf_axioms(d);
    report.identity("coassociativity", d, &r.coassociativity);
    report.identity("counit", d, &r.counit);
    report.identity("antipode", d, &r.antipode);
    report.identity("morphism", d, &r.morphism);
}

fn symmetrization(target: &Target, d: u32, report: &mut CheckReport) -> Result<()> {
    let ctx = target.context()?;
    report.identity("reduce_inverts", d, &ctx.check_reduce_inverts(d));
    let tri = ctx.check_unitriangular(d);
    report.flag("unitriangular", d, tri.pass(), tri.monomials, tri.off_pattern.clone());
    report.identity("intertwining", d, &ctx.check_intertwining(d)?);
    report.identity("ad_in_ideal", d, &ctx.check_symmetrization_in_ideal(d)?);
    let mut spa = IdentityReport::default();
    for r in 0..=d {
        let rep = ctx.check_spa_decomposition(r)?;
        spa.record(rep.pass, || format!("r = {r}: rank {} of {}", rep.rank, rep.expected));
    }
    report.identity("spa_decomposition", d, &spa);
    let radial = ctx.check_radial_spanning(d);
    let witness = if radial.pass {
        Vec::new()
    } else {
        vec![format!("rank {} of {}", radial.rank, radial.expected)]
    };
    report.flag("radial_spanning", d, radial.pass, radial.expected, witness);
    report.flag("centralizer", d, ctx.pair().check_centralizer(), 1, Vec::new());
    if let Target::Gl12(g) = target {
        report.identity("root_lemma", d, &ctx.check_root_lemma(&g.diagonal_cartan()?, d)?);
    }
    Ok(())
}

fn alpha(g: &Gl12Pair, d: u32, report: &mut CheckReport) -> Result<()> {
    let mut routes = IdentityReport::default();
    let mut odd_sum = IdentityReport::default();
    let mut shape = IdentityReport::default();
    for n in 1..=d as usize {
        let rec = alpha_beta_recursive(n);
        let pbw = g.alpha_beta_from_pbw(n as u32)?;
        routes.record(rec == (alpha_closed(n), beta_closed(n)) && rec == pbw, || format!("n = {n}"));
        odd_sum.record(beta_from_alpha(n) == rec.1, || format!("n = {n}"));
        let (a, b) = &rec;
        let ok = a.degree() == Some(n)
            && b.degree() == Some(n - 1)
            && a.leading().is_some_and(|c| c.is_positive())
            && b.leading().is_some_and(|c| c.is_positive())
            && a.terms().all(|(k, _)| (n - k) % 2 == 0)
            && b.terms().all(|(k, _)| (n - 1 - k) % 2 == 0);
        shape.record(ok, || format!("n = {n}"));
    }
    report.identity("routes_agree", d, &routes);
    report.identity("beta_from_alpha", d, &odd_sum);
    report.identity("degree_sign_parity", d, &shape);

    let mut brute = IdentityReport::default();
    for n in 0..=(d as usize).min(BRUTEFORCE_LIMIT) {
        brute.record(zigzag_bruteforce(n)? == zigzag(n), || format!("n = {n}"));
    }
    report.identity("zigzag_bruteforce", d, &brute);
    let mut tangent = IdentityReport::default();
    for m in 1..=(d as usize).div_ceil(2).max(1) {
        tangent.record(check_tangent_identity(m), || format!("m = {m}"));
    }
    report.identity("tangent_identity", d, &tangent);

    let table = g.verify_table()?;
    let witness = table
        .entries
        .iter()
        .filter(|e| !e.pass)
        .map(|e| format!("{}: expected {}, got {} / {}", e.label, e.expected, e.from_structure, e.from_matrices))
        .collect();
    report.flag("bracket_table", d, table.pass(), table.entries.len(), witness);

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let vs: Vec<_> = (0..LEMMA_DRAWS)
        .map(|_| (small_rational(&mut rng), small_rational(&mut rng)))
        .collect();
    let k0s: Vec<_> = (0..LEMMA_DRAWS)
        .map(|_| (small_rational(&mut rng), small_rational(&mut rng), small_rational(&mut rng)))
        .collect();
    let mut split = IdentityReport::default();
    let mut mirror = IdentityReport::default();
    let mut in_ideal = IdentityReport::default();
    for (a, b) in &vs {
        for n in 0..=d {
            split.record(g.verify_binomial_splitting(n, a, b), || format!("n = {n}, v = ({a}, {b})"));
            mirror.record(g.verify_mirror(n, a, b), || format!("n = {n}, v = ({a}, {b})"));
        }
    }
    for (a, b) in vs.iter().take(2) {
        let r = g.verify_vp_powers_in_ideal(d, a, b)?;
        in_ideal.checked += r.checked;
        in_ideal
            .failures
            .extend(r.failures.into_iter().map(|w| format!("{w}, v = ({a}, {b})")));
    }
    report.identity("binomial_splitting", d, &split);
    report.identity("mirror", d, &mirror);
    report.identity("vp_powers_in_ideal", d, &in_ideal);

    let lemmas = g.verify_lemma_suites(d, &k0s, &vs);
    for (name, r) in &lemmas.identities {
        report.identity(&format!("lemma_{name}"), d, r);
    }
    Ok(())
}

fn ideal(g: &Gl12Pair, d: u32, report: &mut CheckReport) -> Result<()> {
    let r = g.verify_ideal_basis(d)?;
    report.flag("membership", d, r.membership(), r.listed, r.membership_failures.clone());
    let independence = if r.independent() {
        Vec::new()
    } else {
        vec![format!("rank {} of {}", r.rank, r.listed)]
    };
    report.flag("independence", d, r.independent(), r.listed, independence);
    let complement = if r.complement() {
        Vec::new()
    } else {
        vec![format!("rank {} of {}", r.total_rank, r.dimension)]
    };
    report.flag("complement", d, r.complement(), r.dimension, complement);

    let mut kills = IdentityReport::default();
    let mut idempotent = IdentityReport::default();
    for v in g.ideal_basis(d) {
        kills.record(g.quotient_reduce(&v).is_zero(), || g.env.format(&v));
    }
    for m in g.env.monomials_up_to(d) {
        let u = crate::enveloping::UElement::monomial(m);
        let q = g.quotient_reduce(&u);
        idempotent.record(g.quotient_reduce(q.as_uelement()) == q, || g.env.format(&u));
    }
    report.identity("quotient_kills_basis", d, &kills);
    report.identity("quotient_idempotent", d, &idempotent);
    Ok(())
}

fn radial(g: &Gl12Pair, d: u32, report: &mut CheckReport) -> Result<()> {
    let r = g.radial_restriction_check(d)?;
    let witness = if r.surjective {
        Vec::new()
    } else {
        vec![format!("rank {} of {}", r.rank, r.representatives)]
    };
    report.flag("surjective", d, r.surjective, r.representatives, witness);
    report.flag("kernel", d, r.kernel_as_predicted, r.kernel.len(), Vec::new());
    report.flag("symmetrization_identity", d, r.symmetrization_is_identity, r.images.len(), Vec::new());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let c = g.check_product_closure(d, CLOSURE_DRAWS, &mut rng)?;
    report.flag("factors_vanish", d, c.factors_vanish, c.draws, Vec::new());
    report.flag("product_closure", d, c.products_vanish, c.draws, Vec::new());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets_resolve() {
        assert!(matches!(Target::resolve("gl12"), Ok(Target::Gl12(_))));
        assert!(matches!(Target::resolve("gl11"), Ok(Target::Algebra(_))));
        assert!(matches!(Target::resolve("q2"), Ok(Target::Pair(_))));
        assert!(Target::resolve("sl2").is_err());
    }

    #[test]
    fn alpha_needs_gl12() {
        let t = Target::resolve("gl11").unwrap();
        assert!(run(Suite::Alpha, &t, Some(2), false).is_err());
        assert!(run(Suite::All, &t, Some(2), false).unwrap().pass);
    }

    #[test]
    fn small_suites_pass_and_repeat() {
        let t = Target::resolve("gl12").unwrap();
        for suite in [Suite::Jacobi, Suite::Alpha, Suite::Ideal, Suite::Radial, Suite::Symmetrization] {
            let r = run(suite, &t, Some(3), false).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!(r, run(suite, &t, Some(3), false).unwrap());
        }
        let q = Target::resolve("q1").unwrap();
        assert!(run(Suite::Symmetrization, &q, Some(3), false).unwrap().pass);
    }
}
