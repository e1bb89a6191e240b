//! The pair `(gl(1|2), osp(1|2))` worked out completely.
//!
//! The basis is `z < k < k1 < k2 < e' < f' < p < e < f`, with `k, k1, k2,
//! e', f'` spanning `k = osp(1|2)` and `z, p, e, f` spanning `p`. For
//! `v = (a, b)` put `v_k = a e' + b f'` and `v_p = a e + b f`. The
//! polynomials `α_n`, `β_{n-1}` are defined by
//!
//! ```text
//! p^n v_k = v_k α_n(p) + β_{n-1}(p) v_p
//! ```
//!
//! and are computed here three ways: by their recursion, in closed form
//! from Euler and Bernoulli numbers, and by reading them off the normal
//! form of `p^n v_k`. The module also lists the basis of the coideal
//! `I = kU(g) + U(g)k`, reduces elements of `U(g)` to the representatives
//! `{z^m, z^m p^k ef}` of `U(g)/I`, and checks radial restriction.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use serde::Serialize;

use crate::enveloping::{DualFunctional, Enveloping, Monomial, UElement};
use crate::error::{Error, Result};
use crate::lie::{
    gl_matrix_units, gl_superalgebra, split_pair, Involution, LieSuperalgebra, MatrixBasis, Role, SuperMatrix,
    SuperVector, SymmetricPair,
};
use crate::linalg::{Echelon, Matrix};
use crate::poly::UniPoly;
use crate::scalar::{binomial, Parity, Scalar};
use crate::sequences::{euler, tangent_coefficient};
use crate::symmetrization::{IdentityReport, PairContext, SymElement, SymSpace};

pub const Z: usize = 0;
pub const K: usize = 1;
pub const K1: usize = 2;
pub const K2: usize = 3;
pub const EP: usize = 4;
pub const FP: usize = 5;
pub const P: usize = 6;
pub const E: usize = 7;
pub const F: usize = 8;

pub const NAMES: [&str; 9] = ["z", "k", "k1", "k2", "e'", "f'", "p", "e", "f"];

/// Name of the built-in pair.
pub const PAIR_NAME: &str = "gl12-osp12";

const ROW_PARITIES: [Parity; 3] = [Parity::Even, Parity::Odd, Parity::Odd];

fn supermatrix(rows: [[i64; 3]; 3]) -> SuperMatrix {
    let rows: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    SuperMatrix::new(ROW_PARITIES.to_vec(), Matrix::from_int_rows(&rows)).expect("3x3")
}

/// The nine basis matrices in generator order.
pub fn basis_matrices() -> Vec<SuperMatrix> {
    vec![
        supermatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        supermatrix([[0, 0, 0], [0, 1, 0], [0, 0, -1]]),
        supermatrix([[0, 0, 0], [0, 0, 1], [0, 0, 0]]),
        supermatrix([[0, 0, 0], [0, 0, 0], [0, 1, 0]]),
        supermatrix([[0, 1, 0], [0, 0, 0], [1, 0, 0]]),
        supermatrix([[0, 0, 1], [-1, 0, 0], [0, 0, 0]]),
        supermatrix([[2, 0, 0], [0, 1, 0], [0, 0, 1]]),
        supermatrix([[0, 1, 0], [0, 0, 0], [-1, 0, 0]]),
        supermatrix([[0, 0, 1], [1, 0, 0], [0, 0, 0]]),
    ]
}

/// `θ(X) = -P X^st P^{-1}`.
pub fn theta_matrix(x: &SuperMatrix) -> SuperMatrix {
    let p = supermatrix([[1, 0, 0], [0, 0, 1], [0, -1, 0]]);
    let p_inv = supermatrix([[1, 0, 0], [0, 0, -1], [0, 1, 0]]);
    p.mul(&x.supertranspose())
        .and_then(|m| m.mul(&p_inv))
        .expect("3x3")
        .scale(&-Scalar::one())
}

/// `(v_k, v_p) = (a e' + b f', a e + b f)`.
pub fn v_vectors(a: &Scalar, b: &Scalar) -> (SuperVector, SuperVector) {
    let vk = SuperVector::from_terms([(EP, a.clone()), (FP, b.clone())]);
    let vp = SuperVector::from_terms([(E, a.clone()), (F, b.clone())]);
    (vk, vp)
}

/// The matrices `[[0,a,b],[-b,0,0],[a,0,0]]` and `[[0,a,b],[b,0,0],[-a,0,0]]`.
pub fn v_matrices(a: &Scalar, b: &Scalar) -> (SuperMatrix, SuperMatrix) {
    let z = Scalar::zero;
    let vk = Matrix::from_rows(vec![
        vec![z(), a.clone(), b.clone()],
        vec![-b, z(), z()],
        vec![a.clone(), z(), z()],
    ])
    .expect("3x3");
    let vp = Matrix::from_rows(vec![
        vec![z(), a.clone(), b.clone()],
        vec![b.clone(), z(), z()],
        vec![-a, z(), z()],
    ])
    .expect("3x3");
    (
        SuperMatrix::new(ROW_PARITIES.to_vec(), vk).expect("3x3"),
        SuperMatrix::new(ROW_PARITIES.to_vec(), vp).expect("3x3"),
    )
}

/// `(α_n, β_{n-1})` for `n = 0..=n_max`, with `α_0 = 1` and `β_{-1} = 0`,
/// by the recursion
/// `α_n = x α_{n-1} - Σ_{i=1}^{n-1} a_i β_{i-1}`,
/// `β_{n-1} = x β_{n-2} + Σ_{i=0}^{n-1} a_i α_i`
/// where `α_{n-1} = Σ a_i x^i`.
pub fn alpha_beta_table(n_max: usize) -> Vec<(UniPoly, UniPoly)> {
    let mut table = vec![(UniPoly::one(), UniPoly::zero())];
    if n_max >= 1 {
        table.push((UniPoly::x(), UniPoly::one()));
    }
    for n in 2..=n_max {
        let (prev_alpha, prev_beta) = table[n - 1].clone();
        let mut alpha = prev_alpha.shift();
        let mut beta = prev_beta.shift();
        for (i, a) in prev_alpha.terms() {
            if i >= 1 {
                alpha = &alpha - &table[i].1.scale(a);
            }
            beta = &beta + &table[i].0.scale(a);
        }
        table.push((alpha, beta));
    }
    table
}

/// `(α_n, β_{n-1})` by recursion.
pub fn alpha_beta_recursive(n: usize) -> (UniPoly, UniPoly) {
    alpha_beta_table(n).pop().expect("non-empty")
}

/// `α_n = Σ_k E_{2k} C(n, 2k) x^{n-2k}`.
pub fn alpha_closed(n: usize) -> UniPoly {
    let mut coeffs = vec![Scalar::zero(); n + 1];
    for k in 0..=n / 2 {
        coeffs[n - 2 * k] = &Scalar::from_bigint(euler(2 * k)) * &binomial(n as u64, 2 * k as u64);
    }
    UniPoly::from_coeffs(coeffs)
}

/// `β_{n-1} = Σ_k [2^{2k+2}(2^{2k+2}-1) B_{2k+2} / (2k+2)] C(n, n-1-2k) x^{n-1-2k}`.
pub fn beta_closed(n: usize) -> UniPoly {
    if n == 0 {
        return UniPoly::zero();
    }
    let mut coeffs = vec![Scalar::zero(); n];
    for k in 0..=(n - 1) / 2 {
        let power = n - 1 - 2 * k;
        coeffs[power] = &tangent_coefficient(k + 1) * &binomial(n as u64, power as u64);
    }
    UniPoly::from_coeffs(coeffs)
}

/// `β_{n-1} = Σ_{i odd} C(n, i) α_{n-i}` with the recursive `α`.
pub fn beta_from_alpha(n: usize) -> UniPoly {
    let table = alpha_beta_table(n);
    let mut out = UniPoly::zero();
    for i in (1..=n).step_by(2) {
        out = &out + &table[n - i].0.scale(&binomial(n as u64, i as u64));
    }
    out
}

/// Which family of the basis of `I` a vector belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// `z^m p^n e`, `z^m p^n f`
    PEF,
    /// `z^m β_{n-1}(p) ef - z^m p^{n+1}`
    Beta,
    /// PBW monomials with a positive `k` exponent
    KBearing,
}

/// A labelled entry of a bracket table check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub label: String,
    pub expected: String,
    pub from_structure: String,
    pub from_matrices: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub entries: Vec<TableEntry>,
}

impl TableReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn mismatches(&self) -> usize {
        self.entries.iter().filter(|e| !e.pass).count()
    }
}

/// Per-identity results of the two lemma suites.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub identities: BTreeMap<String, IdentityReport>,
}

impl LemmaReport {
    pub fn pass(&self) -> bool {
        self.identities.values().all(IdentityReport::pass)
    }

    fn entry(&mut self, name: &str) -> &mut IdentityReport {
        self.identities.entry(name.to_string()).or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealBasisReport {
    pub degree: u32,
    pub listed: usize,
    pub membership_failures: Vec<String>,
    pub rank: usize,
    pub representatives: usize,
    pub total_rank: usize,
    pub dimension: usize,
}

impl IdealBasisReport {
    pub fn membership(&self) -> bool {
        self.membership_failures.is_empty()
    }

    pub fn independent(&self) -> bool {
        self.rank == self.listed
    }

    pub fn complement(&self) -> bool {
        self.total_rank == self.dimension
    }

    pub fn pass(&self) -> bool {
        self.membership() && self.independent() && self.complement()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadialReport {
    pub degree: u32,
    /// Images of `z^a p^b`, keyed by `"a,b"`.
    pub images: BTreeMap<String, UElement>,
    pub representatives: usize,
    pub rank: usize,
    pub surjective: bool,
    /// Basis of the kernel on `S(a)_{≤d}`, in `(z, p)` coordinates.
    pub kernel: Vec<UElement>,
    pub kernel_as_predicted: bool,
    pub symmetrization_is_identity: bool,
    /// `z = h_1 + h_1bar`, `p = 2 h_1 + h_1bar`.
    pub coordinates: String,
}

impl RadialReport {
    pub fn pass(&self) -> bool {
        self.surjective && self.kernel_as_predicted && self.symmetrization_is_identity
    }
}

/// Result of multiplying random `I`-vanishing functionals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub degree: u32,
    pub draws: usize,
    pub factors_vanish: bool,
    pub products_vanish: bool,
}

impl ClosureReport {
    pub fn pass(&self) -> bool {
        self.factors_vanish && self.products_vanish
    }
}

/// An element of `U(g)/I` on the representatives `z^m` and `z^m p^k ef`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct QuotientElement {
    terms: UElement,
}

impl QuotientElement {
    pub fn as_uelement(&self) -> &UElement {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }
}

fn mono(exps: [u32; 9]) -> Monomial {
    Monomial::from_exponents(exps.to_vec())
}

/// `z^m`.
pub fn rep_z(m: u32) -> Monomial {
    mono([m, 0, 0, 0, 0, 0, 0, 0, 0])
}

/// `z^m p^k e f`.
pub fn rep_zpef(m: u32, k: u32) -> Monomial {
    mono([m, 0, 0, 0, 0, 0, k, 1, 1])
}

/// The canonical representatives of `U(g)/I` of degree at most `d`.
pub fn representatives(d: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0..=d).map(rep_z).collect();
    for m in 0..=d {
        for k in 0..=d {
            if m + k + 2 <= d {
                out.push(rep_zpef(m, k));
            }
        }
    }
    out.sort();
    out
}

/// The pair `(gl(1|2), osp(1|2))` with its enveloping algebra.
pub struct Gl12Pair {
    pub pair: SymmetricPair,
    pub matrices: MatrixBasis,
    pub env: Arc<Enveloping>,
}

impl std::fmt::Debug for Gl12Pair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Gl12Pair").finish_non_exhaustive()
    }
}

/// Builds the algebra from the nine matrices, the involution and the
/// splitting, checking that each generator lies in `k` or `p` as labelled.
pub fn build_pair() -> Result<Gl12Pair> {
    let matrices = MatrixBasis::new(basis_matrices())?;
    let algebra = Arc::new(LieSuperalgebra::from_matrix_basis(PAIR_NAME, &NAMES, &matrices)?);
    let theta = Involution::from_matrix_map(&algebra, &matrices, theta_matrix)?;
    let mut pair = split_pair(
        Arc::clone(&algebra),
        theta,
        vec![SuperVector::basis(Z), SuperVector::basis(P)],
    )?;
    if pair.k_basis.len() != 5 || pair.p_basis.len() != 4 {
        return Err(Error::InvalidPair("k and p do not have dimensions 5 and 4".into()));
    }
    let roles = pair
        .generator_roles()
        .ok_or_else(|| Error::InvalidPair("a generator is not a θ-eigenvector".into()))?;
    for (i, role) in roles.iter().enumerate() {
        let expected = if (K..=FP).contains(&i) { Role::K } else { Role::P };
        if *role != expected {
            return Err(Error::InvalidPair(format!("{} is not in the expected eigenspace", NAMES[i])));
        }
    }
    pair.k_basis = (K..=FP).map(SuperVector::basis).collect();
    pair.p_basis = [Z, P, E, F].into_iter().map(SuperVector::basis).collect();
    let env = Arc::new(Enveloping::new(Arc::clone(&algebra)));
    Ok(Gl12Pair { pair, matrices, env })
}

impl Gl12Pair {
    pub fn algebra(&self) -> &Arc<LieSuperalgebra> {
        &self.pair.algebra
    }

    pub fn context(&self) -> Result<PairContext> {
        PairContext::with_enveloping(self.pair.clone(), Arc::clone(&self.env))
    }

    pub fn generator(&self, i: usize) -> UElement {
        self.env.generator(i)
    }

    pub fn p_pow(&self, n: u32) -> UElement {
        UElement::monomial(mono([0, 0, 0, 0, 0, 0, n, 0, 0]))
    }

    /// `f(p)` for a polynomial `f`.
    pub fn poly_in_p(&self, f: &UniPoly) -> UElement {
        f.terms()
            .map(|(i, c)| (mono([0, 0, 0, 0, 0, 0, i as u32, 0, 0]), c.clone()))
            .collect()
    }

    fn vec_u(&self, v: &SuperVector) -> UElement {
        self.env.from_vector(v)
    }

    fn prod(&self, factors: &[&UElement]) -> UElement {
        self.env.product(factors)
    }

    /// The diagonal Cartan subalgebra `E11, E1b1b, E2b2b` in generator
    /// coordinates.
    pub fn diagonal_cartan(&self) -> Result<Vec<SuperVector>> {
        (0..3)
            .map(|i| {
                self.matrices
                    .coordinates(&SuperMatrix::unit(&ROW_PARITIES, i, i))?
                    .ok_or_else(|| Error::InvalidAlgebra("diagonal unit outside the span".into()))
            })
            .collect()
    }

    /// The brackets used in the lemma proofs, each recomputed from the
    /// structure constants and from supermatrices.
    pub fn verify_table(&self) -> Result<TableReport> {
        let g = self.algebra();
        let b = SuperVector::basis;
        let s = Scalar::from_int;
        let mut items: Vec<(String, SuperVector, SuperVector, SuperVector)> = vec![
            ("[e,e]".into(), b(E), b(E), b(K2).scaled(&s(-2))),
            ("[f,f]".into(), b(F), b(F), b(K1).scaled(&s(2))),
            ("[e,p]".into(), b(E), b(P), b(EP).scaled(&s(-1))),
            ("[e',p]".into(), b(EP), b(P), b(E).scaled(&s(-1))),
            ("[e',e']".into(), b(EP), b(EP), b(K2).scaled(&s(2))),
            ("[f',f']".into(), b(FP), b(FP), b(K1).scaled(&s(-2))),
            ("[p,k1]".into(), b(P), b(K1), SuperVector::zero()),
            ("[p,k2]".into(), b(P), b(K2), SuperVector::zero()),
            ("[p,k]".into(), b(P), b(K), SuperVector::zero()),
            ("[e,k1]".into(), b(E), b(K1), b(F)),
        ];
        for (a, bb) in [(1, 0), (0, 1), (2, -3)] {
            let (a, bb) = (s(a), s(bb));
            let (vk, vp) = v_vectors(&a, &bb);
            let tag = format!("v=({a},{bb})");
            items.push((format!("[e,v_k] {tag}"), b(E), vk.clone(), b(P).scaled(&-&bb)));
            items.push((format!("[f,v_k] {tag}"), b(F), vk.clone(), b(P).scaled(&a)));
            items.push((format!("[v_p,p] {tag}"), vp.clone(), b(P), -&vk));
            items.push((format!("[v_k,p] {tag}"), vk.clone(), b(P), -&vp));
        }
        let mut entries = Vec::new();
        for (label, x, y, expected) in items {
            let from_structure = g.bracket(&x, &y)?;
            let mx = self.matrices.matrix_of(&x);
            let my = self.matrices.matrix_of(&y);
            let from_matrices = self
                .matrices
                .coordinates(&mx.supercommutator(&my)?)?
                .ok_or_else(|| Error::InvalidAlgebra("bracket leaves the span".into()))?;
            entries.push(TableEntry {
                label,
                expected: g.format_vector(&expected),
                from_structure: g.format_vector(&from_structure),
                from_matrices: g.format_vector(&from_matrices),
                pass: from_structure == expected && from_matrices == expected,
            });
        }
        Ok(TableReport { entries })
    }

    /// Reads `α_n` and `β_{n-1}` off the normal forms of `p^n e'` and
    /// `p^n f'`; both must give the same pair.
    pub fn alpha_beta_from_pbw(&self, n: u32) -> Result<(UniPoly, UniPoly)> {
        let mut found = Vec::new();
        for (odd_k, odd_p) in [(EP, E), (FP, F)] {
            let u = self.env.multiply(&self.p_pow(n), &self.generator(odd_k));
            let mut alpha = vec![Scalar::zero(); n as usize + 1];
            let mut beta = vec![Scalar::zero(); n as usize + 1];
            for (m, c) in u.terms() {
                let e = m.exponents();
                let j = e[P] as usize;
                let others: u32 = e.iter().sum::<u32>() - e[P];
                if others == 1 && e[odd_k] == 1 {
                    alpha[j] = c.clone();
                } else if others == 1 && e[odd_p] == 1 {
                    beta[j] = c.clone();
                } else {
                    return Err(Error::UnexpectedTerms(format!(
                        "p^{n} {} contains {}",
                        NAMES[odd_k],
                        crate::enveloping::format_monomial(self.algebra(), m)
                    )));
                }
            }
            found.push((UniPoly::from_coeffs(alpha), UniPoly::from_coeffs(beta)));
        }
        if found[0] != found[1] {
            return Err(Error::UnexpectedTerms(format!("α_{n}, β_{} depend on v", n as i64 - 1)));
        }
        Ok(found.swap_remove(0))
    }

    /// `p^n v_k = v_k Σ_{i even} C(n,i) p^{n-i} + v_p Σ_{i odd} C(n,i) p^{n-i}`.
    pub fn verify_binomial_splitting(&self, n: u32, a: &Scalar, b: &Scalar) -> bool {
        let (vk, vp) = v_vectors(a, b);
        let (vk, vp) = (self.vec_u(&vk), self.vec_u(&vp));
        let lhs = self.env.multiply(&self.p_pow(n), &vk);
        let mut even = UniPoly::zero();
        let mut odd = UniPoly::zero();
        for i in 0..=n {
            let term = UniPoly::monomial(binomial(n as u64, i as u64), (n - i) as usize);
            if i % 2 == 0 {
                even = &even + &term;
            } else {
                odd = &odd + &term;
            }
        }
        let rhs = &self.env.multiply(&vk, &self.poly_in_p(&even)) + &self.env.multiply(&vp, &self.poly_in_p(&odd));
        lhs == rhs
    }

    /// `v_p p^n = α_n(p) v_p - v_k β_{n-1}(p)`.
    pub fn verify_mirror(&self, n: u32, a: &Scalar, b: &Scalar) -> bool {
        let (alpha, beta) = alpha_beta_recursive(n as usize);
        let (vk, vp) = v_vectors(a, b);
        let (vk, vp) = (self.vec_u(&vk), self.vec_u(&vp));
        let lhs = self.env.multiply(&vp, &self.p_pow(n));
        let rhs = &self.env.multiply(&self.poly_in_p(&alpha), &vp) - &self.env.multiply(&vk, &self.poly_in_p(&beta));
        lhs == rhs
    }

    /// `v_p p^m ∈ I` for `m ≤ m_max`, certified inside the bounded span.
    pub fn verify_vp_powers_in_ideal(&self, m_max: u32, a: &Scalar, b: &Scalar) -> Result<IdentityReport> {
        let ctx = self.context()?;
        let span = ctx.ideal_span(m_max + 1);
        let vp = self.vec_u(&v_vectors(a, b).1);
        let mut report = IdentityReport::default();
        for m in 0..=m_max {
            let u = self.env.multiply(&vp, &self.p_pow(m));
            report.record(span.contains(&ctx, &u), || format!("m = {m}"));
        }
        Ok(report)
    }

    /// Both lemma suites for `n ≤ n_max`, once per `k_0 = αk + βk1 + γk2`
    /// in `k0s` and once per `v = (a, b)` in `vs`.
    ///
    /// `second_iv` is checked in the form
    ///
    /// ```text
    /// p^n e f v_k = D - b k1 β e - b β f + p^{n+1} v_p - a e' α_n(p) - a β e,
    /// D = v_k α_n(p) e f - a k2 β f + b k β f,
    /// ```
    ///
    /// with `β = β_{n-1}(p)`. `second_iv_printed` takes the variant with
    /// `D = v_k α_n(p) e f - a k2 β + b k β f` and last term `-β e`, and
    /// passes when it differs from the left side by exactly
    /// `a k2 β (f - 1) + (a - 1) β e`.
    pub fn verify_lemma_suites(
        &self,
        n_max: u32,
        k0s: &[(Scalar, Scalar, Scalar)],
        vs: &[(Scalar, Scalar)],
    ) -> LemmaReport {
        let mut report = LemmaReport::default();
        let table = alpha_beta_table(n_max as usize);
        let g = |i| self.generator(i);
        let (e, f, k, k1, k2, ep) = (g(E), g(F), g(K), g(K1), g(K2), g(EP));
        let ef = self.env.multiply(&e, &f);
        for n in 0..=n_max {
            let pn = self.p_pow(n);
            let pn1 = self.p_pow(n + 1);
            for (al, be, ga) in k0s {
                let k0 = self.vec_u(&SuperVector::from_terms([(K, al.clone()), (K1, be.clone()), (K2, ga.clone())]));
                let tag = || format!("n = {n}, k0 = ({al}, {be}, {ga})");
                let lhs = self.prod(&[&pn, &k0]);
                let rhs = self.prod(&[&k0, &pn]);
                report.entry("first_i").record(lhs == rhs, tag);

                let lhs = self.prod(&[&pn, &e, &k0]);
                let ae_bf = &e.scaled(al) + &f.scaled(be);
                let rhs = &self.prod(&[&k0, &pn, &e]) + &self.prod(&[&pn, &ae_bf]);
                report.entry("first_ii").record(lhs == rhs, tag);

                let lhs = self.prod(&[&pn, &f, &k0]);
                let ge_af = &e.scaled(ga) - &f.scaled(al);
                let rhs = &self.prod(&[&k0, &pn, &f]) + &self.prod(&[&pn, &ge_af]);
                report.entry("first_iii").record(lhs == rhs, tag);

                let lhs = self.prod(&[&pn, &e, &f, &k0]);
                let rhs = &(&self.prod(&[&k0, &pn, &ef]) + &self.prod(&[&k1, &pn]).scaled(be))
                    - &self.prod(&[&k2, &pn]).scaled(ga);
                report.entry("first_iv").record(lhs == rhs, tag);
            }
            let (alpha, beta) = &table[n as usize];
            let al = self.poly_in_p(alpha);
            let bt = self.poly_in_p(beta);
            for (a, b) in vs {
                let (vk, vp) = v_vectors(a, b);
                let (vk, vp) = (self.vec_u(&vk), self.vec_u(&vp));
                let tag = || format!("n = {n}, v = ({a}, {b})");

                let lhs = self.prod(&[&pn, &vk]);
                let rhs = &self.prod(&[&vk, &al]) + &self.prod(&[&bt, &vp]);
                report.entry("second_i").record(lhs == rhs, tag);

                let lhs = self.prod(&[&pn, &e, &vk]);
                let mut rhs = self.prod(&[&vk, &al, &e]).scaled(&-Scalar::one());
                rhs.add_scaled(a, &self.prod(&[&k2, &bt]));
                rhs.add_scaled(&-b, &self.prod(&[&k, &bt]));
                rhs.add_scaled(b, &self.prod(&[&bt, &ef]));
                rhs.add_scaled(&-b, &pn1);
                report.entry("second_ii").record(lhs == rhs, tag);

                let lhs = self.prod(&[&pn, &f, &vk]);
                let mut rhs = self.prod(&[&vk, &al, &f]).scaled(&-Scalar::one());
                rhs.add_scaled(&-a, &self.prod(&[&bt, &ef]));
                rhs.add_scaled(&-b, &self.prod(&[&k1, &bt]));
                rhs.add_scaled(a, &pn1);
                report.entry("second_iii").record(lhs == rhs, tag);

                let lhs = self.prod(&[&pn, &e, &f, &vk]);
                let k2_bt = self.prod(&[&k2, &bt]);
                let k2_bt_f = self.prod(&[&k2, &bt, &f]);
                let bt_e = self.prod(&[&bt, &e]);
                let mut common = self.prod(&[&vk, &al, &ef]);
                common.add_scaled(b, &self.prod(&[&k, &bt, &f]));
                common.add_scaled(&-b, &self.prod(&[&k1, &bt, &e]));
                common.add_scaled(&-b, &self.prod(&[&bt, &f]));
                common = &common + &self.prod(&[&pn1, &vp]);
                common.add_scaled(&-a, &self.prod(&[&ep, &al]));

                let mut rhs = common.clone();
                rhs.add_scaled(&-a, &k2_bt_f);
                rhs.add_scaled(&-a, &bt_e);
                report.entry("second_iv").record(lhs == rhs, tag);

                let mut printed = common;
                printed.add_scaled(&-a, &k2_bt);
                printed.add_scaled(&-Scalar::one(), &bt_e);
                let mut discrepancy = (&k2_bt_f - &k2_bt).scaled(a);
                discrepancy.add_scaled(&(a - &Scalar::one()), &bt_e);
                report
                    .entry("second_iv_printed")
                    .record(&printed - &lhs == discrepancy, tag);
            }
        }
        report
    }

    /// The basis of `I` up to degree `d`, labelled by family.
    pub fn ideal_basis_labeled(&self, d: u32) -> Vec<(Family, UElement)> {
        let mut out = Vec::new();
        let table = alpha_beta_table(d as usize);
        for m in 0..d {
            for n in 0..d - m {
                out.push((Family::PEF, UElement::monomial(mono([m, 0, 0, 0, 0, 0, n, 1, 0]))));
                out.push((Family::PEF, UElement::monomial(mono([m, 0, 0, 0, 0, 0, n, 0, 1]))));
            }
        }
        for m in 0..d {
            for n in 0..d - m {
                let mut v = UElement::zero();
                for (j, c) in table[n as usize].1.terms() {
                    v.add_term(rep_zpef(m, j as u32), c.clone());
                }
                v.add_term(mono([m, 0, 0, 0, 0, 0, n + 1, 0, 0]), -Scalar::one());
                out.push((Family::Beta, v));
            }
        }
        for mm in self.env.monomials_up_to(d) {
            if (K..=FP).any(|i| mm.exponent(i) > 0) {
                out.push((Family::KBearing, UElement::monomial(mm)));
            }
        }
        out
    }

    pub fn ideal_basis(&self, d: u32) -> Vec<UElement> {
        self.ideal_basis_labeled(d).into_iter().map(|(_, v)| v).collect()
    }

    /// (a) every listed vector lies in `I` (certified inside the span of
    /// `x·m`, `m·x`); (b) the listed vectors are independent; (c) together
    /// with the representatives they span `U(g)_{≤d}`.
    pub fn verify_ideal_basis(&self, d: u32) -> Result<IdealBasisReport> {
        let ctx = self.context()?;
        let span = ctx.ideal_span(d);
        let listed = self.ideal_basis_labeled(d);
        let mut membership_failures = Vec::new();
        let mut echelon = Echelon::new();
        for (family, v) in &listed {
            if !span.contains(&ctx, v) {
                membership_failures.push(format!("{family:?}: {}", self.env.format(v)));
            }
            echelon.insert(v.as_sparse());
        }
        let rank = echelon.rank();
        let reps = representatives(d);
        for r in &reps {
            echelon.insert(UElement::monomial(r.clone()).as_sparse());
        }
        Ok(IdealBasisReport {
            degree: d,
            listed: listed.len(),
            membership_failures,
            rank,
            representatives: reps.len(),
            total_rank: echelon.rank(),
            dimension: self.env.dimension_up_to(d),
        })
    }

    /// Canonical representative in `span{z^m, z^m p^k ef}`: `k`-bearing
    /// monomials and `z^m p^n e`, `z^m p^n f` vanish, and
    /// `z^m p^{n+1} ↦ z^m β_{n-1}(p) ef`.
    pub fn quotient_reduce(&self, u: &UElement) -> QuotientElement {
        let max_p = u.terms().map(|(m, _)| m.exponent(P)).max().unwrap_or(0);
        let table = alpha_beta_table(max_p as usize);
        let mut out = UElement::zero();
        for (m, c) in u.terms() {
            if (K..=FP).any(|i| m.exponent(i) > 0) {
                continue;
            }
            let (z, p, e, f) = (m.exponent(Z), m.exponent(P), m.exponent(E), m.exponent(F));
            match (e, f) {
                (1, 1) => out.add_term(m.clone(), c.clone()),
                (0, 0) if p == 0 => out.add_term(m.clone(), c.clone()),
                (0, 0) => {
                    for (j, bc) in table[p as usize - 1].1.terms() {
                        out.add_term(rep_zpef(z, j as u32), c * bc);
                    }
                }
                _ => {}
            }
        }
        QuotientElement { terms: out }
    }

    /// Radial restriction at degree `d`: images of `z^a p^b` in `U(g)/I`
    /// span every representative, and the kernel is `span{z^a p}`.
    pub fn radial_restriction_check(&self, d: u32) -> Result<RadialReport> {
        let ctx = self.context()?;
        let reps = representatives(d);
        let rep_index: BTreeMap<&Monomial, usize> = reps.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut images = BTreeMap::new();
        let mut domain = Vec::new();
        let mut columns = Vec::new();
        let mut symmetrization_is_identity = true;
        for a in 0..=d {
            for b in 0..=d - a {
                let zp = UElement::monomial(mono([a, 0, 0, 0, 0, 0, b, 0, 0]));
                let s = ctx.supersymmetrize(&SymElement::monomial(
                    SymSpace::A,
                    Monomial::from_exponents(vec![a, b]),
                ));
                symmetrization_is_identity &= s == zp;
                let q = self.quotient_reduce(&zp);
                let mut col = vec![Scalar::zero(); reps.len()];
                for (m, c) in q.as_uelement().terms() {
                    col[rep_index[m]] = c.clone();
                }
                columns.push(col);
                images.insert(format!("{a},{b}"), q.terms);
                domain.push((a, b));
            }
        }
        let map = Matrix::from_columns(reps.len(), &columns)?;
        let rank = map.rank();
        let kernel: Vec<UElement> = map
            .kernel()
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .zip(&domain)
                    .map(|(c, &(a, b))| (mono([a, 0, 0, 0, 0, 0, b, 0, 0]), c))
                    .collect()
            })
            .collect();
        let predicted: Vec<SuperVector> = domain
            .iter()
            .enumerate()
            .filter(|(_, &(_, b))| b == 1)
            .map(|(i, _)| SuperVector::basis(i))
            .collect();
        let kernel_as_predicted = kernel.len() == predicted.len()
            && predicted
                .iter()
                .all(|v| map.apply(&v.to_dense(domain.len())).map(|w| w.iter().all(Scalar::is_zero)).unwrap_or(false));
        Ok(RadialReport {
            degree: d,
            images,
            representatives: reps.len(),
            rank,
            surjective: rank == reps.len(),
            kernel,
            kernel_as_predicted,
            symmetrization_is_identity,
            coordinates: "z = h1 + h1bar, p = 2*h1 + h1bar".into(),
        })
    }

    /// The even functional `λ(u) = Σ_r w_r [quotient_reduce(u)]_r` on
    /// `U(g)_{≤d}`; it vanishes on `I`.
    pub fn spherical_functional(&self, d: u32, weights: &BTreeMap<Monomial, Scalar>) -> Result<DualFunctional> {
        let mut values = BTreeMap::new();
        for m in self.env.monomials_up_to(d) {
            let q = self.quotient_reduce(&UElement::monomial(m.clone()));
            let v: Scalar = q
                .as_uelement()
                .terms()
                .map(|(r, c)| c * &weights.get(r).cloned().unwrap_or_else(Scalar::zero))
                .sum();
            values.insert(m, v);
        }
        DualFunctional::new(d, Parity::Even, values)
    }

    /// Random weights on the representatives of degree at most `d`.
    pub fn random_weights(&self, d: u32, rng: &mut impl Rng) -> BTreeMap<Monomial, Scalar> {
        representatives(d)
            .into_iter()
            .map(|r| (r, small_rational(rng)))
            .collect()
    }

    /// Products of `draws` pairs of random `I`-vanishing functionals still
    /// vanish on the basis of `I` at degree `d`.
    pub fn check_product_closure(&self, d: u32, draws: usize, rng: &mut impl Rng) -> Result<ClosureReport> {
        let basis = self.ideal_basis(d);
        let mut factors_vanish = true;
        let mut products_vanish = true;
        for _ in 0..draws {
            let lam = self.spherical_functional(d, &self.random_weights(d, rng))?;
            let mu = self.spherical_functional(d, &self.random_weights(d, rng))?;
            factors_vanish &= self.env.is_bi_invariant(&lam, &basis)? && self.env.is_bi_invariant(&mu, &basis)?;
            let prod = self.env.dual_product_functional(&lam, &mu)?;
            products_vanish &= self.env.is_bi_invariant(&prod, &basis)?;
        }
        Ok(ClosureReport {
            degree: d,
            draws,
            factors_vanish,
            products_vanish,
        })
    }
}

/// A rational `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 5`.
pub fn small_rational(rng: &mut impl Rng) -> Scalar {
    Scalar::new(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

/// `(gl(n|n), q(n))` with `θ([[A, B], [C, D]]) = [[D, C], [B, A]]` and
/// `a = {diag(a_1, ..., a_n, -a_1, ..., -a_n)}`.
pub fn queer_pair(n: usize) -> Result<SymmetricPair> {
    let algebra = Arc::new(gl_superalgebra(n, n)?);
    let units = gl_matrix_units(n, n);
    let swap = |i: usize| if i < n { i + n } else { i - n };
    let theta = Involution::from_matrix_map(&algebra, &units, |x| {
        let mut out = Matrix::zeros(2 * n, 2 * n);
        for i in 0..2 * n {
            for j in 0..2 * n {
                out[(i, j)] = x.entries()[(swap(i), swap(j))].clone();
            }
        }
        SuperMatrix::new(x.row_parities().to_vec(), out).expect("square")
    })?;
    let size = 2 * n;
    let a_basis = (0..n)
        .map(|i| {
            SuperVector::from_terms([(i * size + i, Scalar::one()), ((i + n) * size + i + n, -Scalar::one())])
        })
        .collect();
    split_pair(algebra, theta, a_basis)
}

/// `A_{2k}` as an integer, for callers printing tables.
pub fn euler_number(n: usize) -> BigInt {
    euler(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn displayed_k_and_p_families() {
        for (i, m) in basis_matrices().iter().enumerate() {
            let x = |r: usize, c: usize| m.entries()[(r, c)].clone();
            let in_k = x(0, 0).is_zero() && x(1, 0) == -x(0, 2) && x(2, 0) == x(0, 1) && x(2, 2) == -x(1, 1);
            let in_p = x(1, 0) == x(0, 2)
                && x(2, 0) == -x(0, 1)
                && x(1, 2).is_zero()
                && x(2, 1).is_zero()
                && x(1, 1) == x(2, 2);
            let in_k_by_theta = theta_matrix(m) == *m;
            assert_eq!(in_k, (K..=FP).contains(&i), "{}", NAMES[i]);
            assert_eq!(in_p, !(K..=FP).contains(&i), "{}", NAMES[i]);
            assert_eq!(in_k_by_theta, in_k);
        }
    }

    #[test]
    fn v_vectors_match_matrices() {
        let pair = build_pair().unwrap();
        for (a, b) in [(1, 0), (0, 1), (0, 0), (3, -2)] {
            let (a, b) = (s(a), s(b));
            let (vk, vp) = v_vectors(&a, &b);
            let (mk, mp) = v_matrices(&a, &b);
            assert_eq!(pair.matrices.matrix_of(&vk), mk);
            assert_eq!(pair.matrices.matrix_of(&vp), mp);
        }
        let (vk, vp) = v_vectors(&s(0), &s(0));
        assert!(vk.is_zero() && vp.is_zero());
    }

    #[test]
    fn z_is_central_and_theta_fixes_e_prime() {
        let pair = build_pair().unwrap();
        let g = pair.algebra();
        for i in 0..9 {
            assert!(g.bracket_basis(Z, i).is_zero());
        }
        assert_eq!(pair.pair.theta.apply(&SuperVector::basis(EP)), SuperVector::basis(EP));
        assert_eq!(pair.pair.theta.apply(&SuperVector::basis(E)), -&SuperVector::basis(E));
    }

    #[test]
    fn small_alpha_beta() {
        assert_eq!(alpha_beta_recursive(1), (UniPoly::x(), UniPoly::one()));
        assert_eq!(alpha_beta_recursive(2), (UniPoly::from_ints(&[-1, 0, 1]), UniPoly::from_ints(&[0, 2])));
        assert_eq!(alpha_beta_recursive(3), (UniPoly::from_ints(&[0, -3, 0, 1]), UniPoly::from_ints(&[-2, 0, 3])));
        assert_eq!(alpha_closed(4), UniPoly::from_ints(&[5, 0, -6, 0, 1]));
        assert_eq!(beta_closed(1), UniPoly::one());
        assert_eq!(beta_from_alpha(1), UniPoly::one());
        assert_eq!(beta_from_alpha(3), UniPoly::from_ints(&[-2, 0, 3]));
    }

    #[test]
    fn pbw_route_small() {
        let pair = build_pair().unwrap();
        assert_eq!(pair.alpha_beta_from_pbw(1).unwrap(), (UniPoly::x(), UniPoly::one()));
        assert_eq!(pair.alpha_beta_from_pbw(2).unwrap(), alpha_beta_recursive(2));
    }

    #[test]
    fn quotient_examples() {
        let pair = build_pair().unwrap();
        assert!(pair.quotient_reduce(&pair.p_pow(1)).is_zero());
        assert_eq!(pair.quotient_reduce(&pair.p_pow(2)).as_uelement(), &UElement::monomial(rep_zpef(0, 0)));
        let z3 = UElement::monomial(rep_z(3));
        assert_eq!(pair.quotient_reduce(&z3).as_uelement(), &z3);
    }

    #[test]
    fn ideal_basis_low_degree() {
        let pair = build_pair().unwrap();
        let d1 = pair.ideal_basis_labeled(1);
        let e = pair.generator(E);
        let f = pair.generator(F);
        assert!(d1.contains(&(Family::PEF, e)));
        assert!(d1.contains(&(Family::PEF, f)));
        assert!(d1.contains(&(Family::Beta, pair.p_pow(1).scaled(&-Scalar::one()))));
        let d2 = pair.ideal_basis(2);
        let ef_minus_p2 = &UElement::monomial(rep_zpef(0, 0)) - &pair.p_pow(2);
        assert!(d2.contains(&ef_minus_p2));
        assert!(pair.ideal_basis(0).is_empty());
        let r0 = pair.verify_ideal_basis(0).unwrap();
        assert!(r0.pass());
        assert_eq!(r0.representatives, 1);
        assert!(pair.verify_ideal_basis(2).unwrap().pass());
    }

    #[test]
    fn membership_rejects_representatives() {
        let pair = build_pair().unwrap();
        let ctx = pair.context().unwrap();
        let span = ctx.ideal_span(4);
        for r in representatives(4) {
            assert!(!span.contains(&ctx, &UElement::monomial(r)));
        }
        assert!(span.contains(&ctx, &pair.p_pow(1)));
        let r = pair.verify_vp_powers_in_ideal(4, &s(2), &s(-1)).unwrap();
        assert!(r.pass() && r.checked == 5);
    }

    #[test]
    fn lemma_suites_fixed_draws() {
        let pair = build_pair().unwrap();
        let r = pair.verify_lemma_suites(3, &[(s(1), s(2), s(-3))], &[(s(1), s(0)), (Scalar::new(-1, 2), s(5))]);
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.identities.len(), 9);
    }

    #[test]
    fn radial_small() {
        let pair = build_pair().unwrap();
        let r = pair.radial_restriction_check(3).unwrap();
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.representatives, (3 * 3 + 3 + 2) / 2);
        assert_eq!(r.kernel.len(), 3);
    }

    #[test]
    fn queer_centralizer() {
        let q2 = queer_pair(2).unwrap();
        assert!(q2.check_centralizer());
        let q1 = queer_pair(1).unwrap();
        assert!(q1.check_centralizer());
    }
}
