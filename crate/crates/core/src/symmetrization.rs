//! The symmetric superalgebras `S(p)` and `S(a)` of a supersymmetric pair,
//! the supersymmetrization map `s: S(p) → U(g)`, reduction modulo the left
//! ideal `U(g)k`, and bounded-degree checks of the decomposition
//! `U(g) = I + s(S(a))` with `I = kU(g) + U(g)k`.
//!
//! Everything runs inside a [`PairContext`], which fixes a generator basis
//! adapted to `g = k ⊕ p`. Two orderings of that basis are used: the
//! original one, where every non-central `p` generator comes after every
//! `k` generator, so that `kU(g)` is spanned by the PBW monomials with a
//! positive `k` exponent; and a `p`-first copy, where the same holds for
//! `U(g)k`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::enveloping::{monomials_up_to, Enveloping, Monomial, UElement};
use crate::error::{Error, Result};
use crate::lie::{coordinates_in, root_decomposition, Involution, LieSuperalgebra, Role, SuperVector, SymmetricPair};
use crate::linalg::{Echelon, Matrix};
use crate::scalar::{Parity, Scalar};

pub use crate::report::{IdentityReport, RankReport};

/// Which symmetric superalgebra an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymSpace {
    P,
    A,
}

impl fmt::Display for SymSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymSpace::P => "S(p)",
            SymSpace::A => "S(a)",
        })
    }
}

/// An element of `S(p)` or `S(a)`, on the monomials of the context's basis
/// of `p` (its `p` generators, in order) or of `a` (the pair's `a_basis`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymElement {
    pub space: SymSpace,
    terms: BTreeMap<Monomial, Scalar>,
}

impl SymElement {
    pub fn zero(space: SymSpace) -> Self {
        SymElement {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(space: SymSpace, m: Monomial) -> Self {
        let mut s = Self::zero(space);
        s.add_term(m, Scalar::one());
        s
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, coeff: &Scalar, other: &SymElement) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), coeff * c);
        }
    }

    pub fn scaled(&self, coeff: &Scalar) -> SymElement {
        let mut out = SymElement::zero(self.space);
        out.add_scaled(coeff, self);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn as_sparse(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }
}

#[derive(Serialize)]
struct SymRecord<'a> {
    basis: String,
    terms: &'a UElement,
}

impl Serialize for SymElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = UElement::from_sparse(self.terms.clone());
        SymRecord {
            basis: self.space.to_string(),
            terms: &terms,
        }
        .serialize(serializer)
    }
}

/// Sorts a word in a supercommutative algebra. Returns `None` if an odd
/// letter repeats (the word vanishes), else the sign and the monomial.
pub fn sym_word(parities: &[Parity], factors: &[usize]) -> Option<(bool, Monomial)> {
    let mut letters = factors.to_vec();
    let mut negative = false;
    // insertion sort, counting odd-odd transpositions
    for i in 1..letters.len() {
        let mut j = i;
        while j > 0 && letters[j - 1] > letters[j] {
            if parities[letters[j - 1]].swap_is_negative(parities[letters[j]]) {
                negative = !negative;
            }
            letters.swap(j - 1, j);
            j -= 1;
        }
    }
    let mut exps = vec![0u32; parities.len()];
    for &l in &letters {
        exps[l] += 1;
        if parities[l].is_odd() && exps[l] > 1 {
            return None;
        }
    }
    Some((negative, Monomial::from_exponents(exps)))
}

/// Re-expresses `algebra` in a new homogeneous basis.
pub fn rebase(
    algebra: &LieSuperalgebra,
    name: &str,
    names: &[String],
    basis: &[SuperVector],
) -> Result<LieSuperalgebra> {
    let dim = algebra.dim();
    if basis.len() != dim || names.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: basis.len(),
        });
    }
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| b.to_dense(dim)).collect();
    let inv = Matrix::from_columns(dim, &cols)?
        .inverse()
        .ok_or_else(|| Error::InvalidAlgebra("new basis is not a basis".into()))?;
    let mut generators = Vec::new();
    for (n, b) in names.iter().zip(basis) {
        generators.push((n.clone(), algebra.parity_of(b).ok_or(Error::NotHomogeneous)?));
    }
    let mut brackets = BTreeMap::new();
    for i in 0..dim {
        for j in i..dim {
            let w = algebra.bracket(&basis[i], &basis[j])?;
            brackets.insert((i, j), SuperVector::from_dense(&inv.apply(&w.to_dense(dim))?));
        }
    }
    LieSuperalgebra::new(name, generators, brackets)
}

fn is_central(algebra: &LieSuperalgebra, i: usize) -> bool {
    (0..algebra.dim()).all(|j| algebra.bracket_basis(i, j).is_zero())
}

/// True when every generator is a θ-eigenvector and every non-central `p`
/// generator comes after every `k` generator.
fn is_adapted(pair: &SymmetricPair) -> bool {
    let Some(roles) = pair.generator_roles() else {
        return false;
    };
    let last_k = roles.iter().rposition(|r| *r == Role::K);
    roles.iter().enumerate().all(|(i, r)| {
        *r == Role::K || last_k.is_none_or(|lk| i > lk) || is_central(&pair.algebra, i)
    })
}

/// The same pair on the basis `k_basis ++ p_basis`.
pub fn adapt(pair: &SymmetricPair) -> Result<SymmetricPair> {
    let algebra = &pair.algebra;
    let basis: Vec<SuperVector> = pair.k_basis.iter().chain(&pair.p_basis).cloned().collect();
    let nk = pair.k_basis.len();
    let names: Vec<String> = basis
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let single: Vec<_> = v.terms().collect();
            match single.as_slice() {
                [(g, c)] if c.is_one() => algebra.generators()[*g].name.clone(),
                _ if i < nk => format!("k{i}"),
                _ => format!("p{}", i - nk),
            }
        })
        .collect();
    let adapted = Arc::new(rebase(algebra, algebra.name(), &names, &basis)?);
    let dim = adapted.dim();
    let mut action = Matrix::identity(dim);
    for i in nk..dim {
        action[(i, i)] = -Scalar::one();
    }
    let theta = Involution::new(&adapted, action)?;
    let mut a_basis = Vec::new();
    for a in &pair.a_basis {
        let coords = coordinates_in(algebra.dim(), &basis, a)?
            .ok_or_else(|| Error::InvalidPair("a is not in the span of k and p".into()))?;
        a_basis.push(SuperVector::from_dense(&coords));
    }
    Ok(SymmetricPair {
        algebra: adapted,
        theta,
        k_basis: (0..nk).map(SuperVector::basis).collect(),
        p_basis: (nk..dim).map(SuperVector::basis).collect(),
        a_basis,
    })
}

/// Unitriangularity of the matrix taking symmetrized `p` monomials to PBW
/// `p` monomials modulo `U(g)k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangularityReport {
    pub degree: u32,
    pub monomials: usize,
    pub rank: usize,
    pub off_pattern: Vec<String>,
}

impl TriangularityReport {
    pub fn pass(&self) -> bool {
        self.off_pattern.is_empty() && self.rank == self.monomials
    }
}

/// A symmetric pair with the enveloping-algebra data needed by the checks.
pub struct PairContext {
    pair: SymmetricPair,
    env: Arc<Enveloping>,
    pfirst: Enveloping,
    to_pfirst: Vec<usize>,
    k_gens: Vec<usize>,
    p_gens: Vec<usize>,
    p_parities: Vec<Parity>,
    a_parities: Vec<Parity>,
    a_in_p: Vec<SymElement>,
    sbar_cache: Mutex<HashMap<Monomial, Arc<UElement>>>,
}

impl fmt::Debug for PairContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PairContext")
            .field("algebra", &self.pair.algebra.name())
            .field("k", &self.k_gens.len())
            .field("p", &self.p_gens.len())
            .finish()
    }
}

impl PairContext {
    /// Uses the pair's own generators when they are adapted, otherwise
    /// switches to the basis `k_basis ++ p_basis`.
    pub fn new(pair: SymmetricPair) -> Result<Self> {
        let env = Arc::new(Enveloping::new(Arc::clone(&pair.algebra)));
        Self::with_enveloping(pair, env)
    }

    /// As [`PairContext::new`], sharing an existing `U(g)` when the pair is
    /// already adapted.
    pub fn with_enveloping(pair: SymmetricPair, env: Arc<Enveloping>) -> Result<Self> {
        let (pair, env) = if is_adapted(&pair) {
            (pair, env)
        } else {
            let adapted = adapt(&pair)?;
            let env = Arc::new(Enveloping::new(Arc::clone(&adapted.algebra)));
            (adapted, env)
        };
        let roles = pair.generator_roles().expect("adapted");
        let k_gens: Vec<usize> = (0..roles.len()).filter(|&i| roles[i] == Role::K).collect();
        let p_gens: Vec<usize> = (0..roles.len()).filter(|&i| roles[i] == Role::P).collect();
        let algebra = &pair.algebra;
        let p_parities = p_gens.iter().map(|&i| algebra.parity(i)).collect();
        let order: Vec<usize> = p_gens.iter().chain(&k_gens).copied().collect();
        let mut to_pfirst = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            to_pfirst[old] = new;
        }
        let names: Vec<String> = order.iter().map(|&i| algebra.generators()[i].name.clone()).collect();
        let basis: Vec<SuperVector> = order.iter().map(|&i| SuperVector::basis(i)).collect();
        let pfirst = Enveloping::new(Arc::new(rebase(algebra, algebra.name(), &names, &basis)?));
        let mut a_in_p = Vec::new();
        let mut a_parities = Vec::new();
        for a in &pair.a_basis {
            let mut s = SymElement::zero(SymSpace::P);
            for (g, c) in a.terms() {
                let j = p_gens
                    .iter()
                    .position(|&pg| pg == g)
                    .ok_or_else(|| Error::InvalidPair("a is not contained in p".into()))?;
                s.add_term(Monomial::generator(p_gens.len(), j), c.clone());
            }
            a_in_p.push(s);
            a_parities.push(Parity::Even);
        }
        Ok(PairContext {
            pair,
            env,
            pfirst,
            to_pfirst,
            k_gens,
            p_gens,
            p_parities,
            a_parities,
            a_in_p,
            sbar_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn pair(&self) -> &SymmetricPair {
        &self.pair
    }

    pub fn enveloping(&self) -> &Arc<Enveloping> {
        &self.env
    }

    pub fn k_generators(&self) -> &[usize] {
        &self.k_gens
    }

    pub fn p_generators(&self) -> &[usize] {
        &self.p_gens
    }

    fn parities(&self, space: SymSpace) -> &[Parity] {
        match space {
            SymSpace::P => &self.p_parities,
            SymSpace::A => &self.a_parities,
        }
    }

    /// Basis vector `j` of `p` or `a` inside `g`.
    pub fn sym_vector(&self, space: SymSpace, j: usize) -> SuperVector {
        match space {
            SymSpace::P => SuperVector::basis(self.p_gens[j]),
            SymSpace::A => self.pair.a_basis[j].clone(),
        }
    }

    /// Monomials of `S(p)` or `S(a)` of degree exactly `r`.
    pub fn sym_monomials(&self, space: SymSpace, r: u32) -> Vec<Monomial> {
        monomials_up_to(self.parities(space), r)
            .into_iter()
            .filter(|m| m.degree() == r)
            .collect()
    }

    pub fn sym_monomials_up_to(&self, space: SymSpace, d: u32) -> Vec<Monomial> {
        monomials_up_to(self.parities(space), d)
    }

    /// Product in the supercommutative algebra.
    pub fn sym_multiply(&self, a: &SymElement, b: &SymElement) -> SymElement {
        let parities = self.parities(a.space);
        let mut out = SymElement::zero(a.space);
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut word = ma.factors();
                word.extend(mb.factors());
                if let Some((neg, m)) = sym_word(parities, &word) {
                    out.add_term(m, &Scalar::sign(neg) * &(ca * cb));
                }
            }
        }
        out
    }

    pub fn sym_pow(&self, a: &SymElement, k: u32) -> SymElement {
        let one = SymElement::monomial(a.space, Monomial::one(self.parities(a.space).len()));
        (0..k).fold(one, |acc, _| self.sym_multiply(&acc, a))
    }

    /// Image of `S(a) → S(p)` induced by `a ⊆ p`.
    pub fn a_to_p(&self, s: &SymElement) -> SymElement {
        let np = self.p_gens.len();
        let mut out = SymElement::zero(SymSpace::P);
        for (m, c) in s.terms() {
            let mut acc = SymElement::monomial(SymSpace::P, Monomial::one(np));
            for j in m.factors() {
                acc = self.sym_multiply(&acc, &self.a_in_p[j]);
            }
            out.add_scaled(c, &acc);
        }
        out
    }

    /// A vector of `p` as a degree-one element of `S(p)`.
    pub fn p_vector(&self, v: &SuperVector) -> Result<SymElement> {
        let np = self.p_gens.len();
        let mut s = SymElement::zero(SymSpace::P);
        for (g, c) in v.terms() {
            let j = self
                .p_gens
                .iter()
                .position(|&pg| pg == g)
                .ok_or_else(|| Error::InvalidPair(format!("{} is not in p", self.pair.algebra.format_vector(v))))?;
            s.add_term(Monomial::generator(np, j), c.clone());
        }
        Ok(s)
    }

    fn symmetrize_in(
        env: &Enveloping,
        vectors: &[SuperVector],
        parities: &[Parity],
        m: &Monomial,
        memo: &mut HashMap<Monomial, UElement>,
    ) -> UElement {
        if let Some(hit) = memo.get(m) {
            return hit.clone();
        }
        let r = m.degree();
        let out = if r == 0 {
            env.one()
        } else {
            // s(y_1...y_r) = (1/r) Σ_i ±y_i s(y_1..ŷ_i..y_r), the sign
            // coming from moving y_i to the front
            let mut acc = UElement::zero();
            let mut odd_before = 0u32;
            for j in 0..m.len() {
                let e = m.exponent(j);
                if e == 0 {
                    continue;
                }
                let rest = m.with_exponent(j, e - 1);
                let tail = Self::symmetrize_in(env, vectors, parities, &rest, memo);
                let negative = parities[j].is_odd() && odd_before % 2 == 1;
                let coeff = &Scalar::sign(negative) * &Scalar::new(e as i64, r as i64);
                acc.add_scaled(&coeff, &env.multiply(&env.from_vector(&vectors[j]), &tail));
                if parities[j].is_odd() {
                    odd_before += e;
                }
            }
            acc
        };
        memo.insert(m.clone(), out.clone());
        out
    }

    /// `s(x_1⋯x_r) = (1/r!) Σ_π sgn(π; x) x_{π(1)}⋯x_{π(r)}` extended
    /// linearly.
    pub fn supersymmetrize(&self, s: &SymElement) -> UElement {
        let n = self.parities(s.space).len();
        let vectors: Vec<SuperVector> = (0..n).map(|j| self.sym_vector(s.space, j)).collect();
        let mut memo = HashMap::new();
        let mut out = UElement::zero();
        for (m, c) in s.terms() {
            let u = Self::symmetrize_in(&self.env, &vectors, self.parities(s.space), m, &mut memo);
            out.add_scaled(c, &u);
        }
        out
    }

    /// The super-derivation extending `ad_x` from `p` to `S(p)`.
    pub fn ad_action(&self, x: &SuperVector, s: &SymElement) -> Result<SymElement> {
        if s.space != SymSpace::P {
            return Err(Error::InvalidPair("ad acts on S(p)".into()));
        }
        if self.pair.theta.apply(x) != *x {
            return Err(Error::InvalidPair(format!(
                "{} is not in k",
                self.pair.algebra.format_vector(x)
            )));
        }
        let x_parity = self.pair.algebra.parity_of(x).ok_or(Error::NotHomogeneous)?;
        let np = self.p_gens.len();
        let mut images = Vec::with_capacity(np);
        for j in 0..np {
            let w = self.pair.algebra.bracket(x, &SuperVector::basis(self.p_gens[j]))?;
            images.push(self.p_vector(&w).map_err(|_| Error::InvalidPair("[x, p] is not contained in p".into()))?);
        }
        let mut out = SymElement::zero(SymSpace::P);
        for (m, c) in s.terms() {
            let factors = m.factors();
            let mut odd_before = 0u32;
            for (pos, &f) in factors.iter().enumerate() {
                let negative = x_parity.is_odd() && odd_before % 2 == 1;
                for (img, ic) in images[f].terms() {
                    let l = img.factors()[0];
                    let mut word = factors.clone();
                    word[pos] = l;
                    if let Some((neg, mono)) = sym_word(&self.p_parities, &word) {
                        out.add_term(mono, &Scalar::sign(neg ^ negative) * &(c * ic));
                    }
                }
                if self.p_parities[f].is_odd() {
                    odd_before += 1;
                }
            }
        }
        Ok(out)
    }

    fn has_k(&self, m: &Monomial) -> bool {
        self.k_gens.iter().any(|&i| m.exponent(i) > 0)
    }

    /// Drops the PBW monomials lying in `kU(g)`.
    pub fn project_mod_ku(&self, u: &UElement) -> UElement {
        let mut out = u.clone();
        out.retain(|m| !self.has_k(m));
        out
    }

    /// Rewrites `u` in the `p`-first ordering and drops `U(g)k`.
    fn pfirst_mod_il(&self, u: &UElement) -> UElement {
        let np = self.p_gens.len();
        let mut out = UElement::zero();
        for (m, c) in u.terms() {
            let word: Vec<usize> = m.factors().into_iter().map(|g| self.to_pfirst[g]).collect();
            out.add_scaled(c, &self.pfirst.word(&word));
        }
        out.retain(|m| m.exponents()[np..].iter().all(|&e| e == 0));
        out
    }

    /// `s̄(P)`: the symmetrization of an `S(p)` monomial, in the `p`-first
    /// PBW basis modulo `U(g)k`.
    fn sbar(&self, m: &Monomial) -> Arc<UElement> {
        if let Some(hit) = self.sbar_cache.lock().expect("cache poisoned").get(m) {
            return Arc::clone(hit);
        }
        let np = self.p_gens.len();
        let vectors: Vec<SuperVector> = (0..np).map(SuperVector::basis).collect();
        let mut memo = HashMap::new();
        let mut sym = Self::symmetrize_in(&self.pfirst, &vectors, &self.p_parities, m, &mut memo);
        sym.retain(|mm| mm.exponents()[np..].iter().all(|&e| e == 0));
        let out = Arc::new(sym);
        self.sbar_cache
            .lock()
            .expect("cache poisoned")
            .insert(m.clone(), Arc::clone(&out));
        out
    }

    fn pad(&self, m: &Monomial) -> Monomial {
        let mut exps = m.exponents().to_vec();
        exps.resize(self.pfirst.dim(), 0);
        Monomial::from_exponents(exps)
    }

    /// The unique `v ∈ S(p)` with `s(v) ≡ u` modulo `U(g)k`, by triangular
    /// elimination against the symmetrized monomials.
    pub fn reduce_mod_il(&self, u: &UElement) -> Result<SymElement> {
        let np = self.p_gens.len();
        let mut rest = self.pfirst_mod_il(u);
        let mut out = SymElement::zero(SymSpace::P);
        while let Some((m, c)) = rest.leading() {
            let (m, c) = (m.clone(), c.clone());
            let sm = Monomial::from_exponents(m.exponents()[..np].to_vec());
            let image = self.sbar(&sm);
            if image.leading().map(|(lm, lc)| (lm.clone(), lc.clone())) != Some((m.clone(), Scalar::one())) {
                return Err(Error::UnexpectedTerms(format!(
                    "symmetrized monomial {:?} does not lead with itself",
                    sm
                )));
            }
            out.add_term(sm, c.clone());
            rest.add_scaled(&-c, &image);
        }
        Ok(out)
    }

    /// Checks that `s̄(P) = P + (terms of lower degree)` for every `S(p)`
    /// monomial of degree at most `d`, and that these images are
    /// independent.
    pub fn check_unitriangular(&self, d: u32) -> TriangularityReport {
        let monomials = self.sym_monomials_up_to(SymSpace::P, d);
        let mut echelon = Echelon::new();
        let mut off_pattern = Vec::new();
        for m in &monomials {
            let image = self.sbar(m);
            let lead = self.pad(m);
            for (mm, c) in image.terms() {
                let ok = if *mm == lead {
                    c.is_one()
                } else {
                    mm.degree() < m.degree()
                };
                if !ok {
                    off_pattern.push(format!("s({m:?}) has {c} at {mm:?}"));
                }
            }
            if image.coeff(&lead).is_zero() {
                off_pattern.push(format!("s({m:?}) misses its diagonal entry"));
            }
            echelon.insert(image.as_sparse());
        }
        TriangularityReport {
            degree: d,
            monomials: monomials.len(),
            rank: echelon.rank(),
            off_pattern,
        }
    }

    /// `reduce_mod_il ∘ supersymmetrize = id` on `S(p)_{≤d}`.
    pub fn check_reduce_inverts(&self, d: u32) -> IdentityReport {
        let mut report = IdentityReport::default();
        for m in self.sym_monomials_up_to(SymSpace::P, d) {
            let s = SymElement::monomial(SymSpace::P, m.clone());
            let back = self.reduce_mod_il(&self.supersymmetrize(&s));
            report.record(back.as_ref() == Ok(&s), || format!("{m:?} ↦ {back:?}"));
        }
        report
    }

    /// `s(ad_x y) = x s(y) - (-1)^{|x||y|} s(y) x` for `x` in the `k` basis
    /// and `S(p)` monomials `y` of degree at most `d`.
    pub fn check_intertwining(&self, d: u32) -> Result<IdentityReport> {
        let mut report = IdentityReport::default();
        for &k in &self.k_gens {
            let x = SuperVector::basis(k);
            let xu = self.env.generator(k);
            let xp = self.pair.algebra.parity(k);
            for m in self.sym_monomials_up_to(SymSpace::P, d) {
                let y = SymElement::monomial(SymSpace::P, m.clone());
                let lhs = self.supersymmetrize(&self.ad_action(&x, &y)?);
                let sy = self.supersymmetrize(&y);
                let sign = Scalar::sign(xp.swap_is_negative(m.parity(&self.p_parities)));
                let rhs = &self.env.multiply(&xu, &sy) - &self.env.multiply(&sy, &xu).scaled(&sign);
                report.record(lhs == rhs, || format!("x = {}, y = {m:?}", self.pair.algebra.generators()[k].name));
            }
        }
        Ok(report)
    }

    /// Exact checks of `ad_{x+θx}(a^k) = -k α(a) (x - θx) a^{k-1}` for root
    /// vectors `x` of `h` (which must contain `a`) and `k ≤ k_max`.
    pub fn check_root_lemma(&self, h_basis: &[SuperVector], k_max: u32) -> Result<IdentityReport> {
        let algebra = &self.pair.algebra;
        let dim = algebra.dim();
        let roots = root_decomposition(algebra, h_basis)?;
        let mut report = IdentityReport::default();
        let mut a_coords = Vec::new();
        for a in &self.pair.a_basis {
            a_coords.push(
                coordinates_in(dim, h_basis, a)?
                    .ok_or_else(|| Error::InvalidPair("a is not contained in h".into()))?,
            );
        }
        for (root, space) in &roots.roots {
            for x in space {
                let tx = self.pair.theta.apply(x);
                let plus = x + &tx;
                let minus = self.p_vector(&(x - &tx))?;
                for (j, coords) in a_coords.iter().enumerate() {
                    let alpha_a: Scalar = root.iter().zip(coords).map(|(r, c)| r * c).sum();
                    let a = &self.a_in_p[j];
                    for k in 1..=k_max {
                        let lhs = self.ad_action(&plus, &self.sym_pow(a, k))?;
                        let coeff = -(&Scalar::from_int(k as i64) * &alpha_a);
                        let rhs = self.sym_multiply(&minus, &self.sym_pow(a, k - 1)).scaled(&coeff);
                        report.record(lhs == rhs, || {
                            format!("root {root:?}, x = {}, a #{j}, k = {k}", algebra.format_vector(x))
                        });
                    }
                }
            }
        }
        Ok(report)
    }

    /// `S^r(p) = S^r(a) + ad_k(S^r(p))`, by exact rank.
    pub fn check_spa_decomposition(&self, r: u32) -> Result<RankReport> {
        let target = self.sym_monomials(SymSpace::P, r);
        let mut echelon = Echelon::new();
        for m in self.sym_monomials(SymSpace::A, r) {
            let s = self.a_to_p(&SymElement::monomial(SymSpace::A, m));
            echelon.insert(s.as_sparse());
        }
        for &k in &self.k_gens {
            for m in &target {
                let s = self.ad_action(&SuperVector::basis(k), &SymElement::monomial(SymSpace::P, m.clone()))?;
                echelon.insert(s.as_sparse());
            }
        }
        Ok(RankReport {
            degree: r,
            rank: echelon.rank(),
            expected: target.len(),
            pass: echelon.rank() == target.len(),
        })
    }

    /// The span of `x·m` and `m·x` (`x` in the `k` basis, `m` a PBW
    /// monomial of degree at most `d`) intersected with `U(g)_{≤d}`.
    pub fn ideal_span(&self, d: u32) -> IdealSpan {
        let mut echelon = Echelon::new();
        for m in self.env.monomials_up_to(d) {
            if self.has_k(&m) {
                continue;
            }
            let mu = UElement::monomial(m);
            for &k in &self.k_gens {
                let v = self.project_mod_ku(&self.env.times_generator(&mu, k));
                echelon.insert(v.as_sparse());
            }
        }
        IdealSpan {
            degree: d,
            echelon: echelon.restricted(|m| m.degree() <= d),
        }
    }

    /// `s(ad_x m)` lies in the bounded ideal span for every `k` basis
    /// vector `x` and `S(p)` monomial `m` of degree at most `d`.
    pub fn check_symmetrization_in_ideal(&self, d: u32) -> Result<IdentityReport> {
        let span = self.ideal_span(d);
        let mut report = IdentityReport::default();
        for &k in &self.k_gens {
            for m in self.sym_monomials_up_to(SymSpace::P, d) {
                let s = self.ad_action(&SuperVector::basis(k), &SymElement::monomial(SymSpace::P, m.clone()))?;
                let u = self.supersymmetrize(&s);
                report.record(span.contains(self, &u), || {
                    format!("x = {}, m = {m:?}", self.pair.algebra.generators()[k].name)
                });
            }
        }
        Ok(report)
    }

    /// Rank of `(I-span)_{≤d} ∪ s(S(a))_{≤d}` against `dim U(g)_{≤d}`.
    pub fn check_radial_spanning(&self, d: u32) -> RankReport {
        let span = self.ideal_span(d);
        let mut echelon = span.echelon.clone();
        for m in self.sym_monomials_up_to(SymSpace::A, d) {
            let u = self.supersymmetrize(&SymElement::monomial(SymSpace::A, m));
            echelon.insert(self.project_mod_ku(&u).as_sparse());
        }
        let all = self.env.monomials_up_to(d);
        let k_bearing = all.iter().filter(|m| self.has_k(m)).count();
        let rank = k_bearing + echelon.rank();
        RankReport {
            degree: d,
            rank,
            expected: all.len(),
            pass: rank == all.len(),
        }
    }
}

/// A subspace of `I ∩ U(g)_{≤d}`, stored as its projection away from the
/// monomials spanning `kU(g)`.
#[derive(Clone, Debug)]
pub struct IdealSpan {
    pub degree: u32,
    echelon: Echelon<Monomial>,
}

impl IdealSpan {
    pub fn contains(&self, ctx: &PairContext, u: &UElement) -> bool {
        u.degree().is_none_or(|deg| deg <= self.degree) && self.echelon.contains(ctx.project_mod_ku(u).as_sparse())
    }

    /// Dimension of the projected span.
    pub fn projected_rank(&self) -> usize {
        self.echelon.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{gl_superalgebra, split_pair};

    /// gl(1|1) with θ = the parity automorphism: k = g_0, p = g_1.
    fn odd_pair() -> PairContext {
        let g = Arc::new(gl_superalgebra(1, 1).unwrap());
        let mut action = Matrix::identity(4);
        action[(1, 1)] = -Scalar::one();
        action[(2, 2)] = -Scalar::one();
        let theta = Involution::new(&g, action).unwrap();
        PairContext::new(split_pair(g, theta, vec![]).unwrap()).unwrap()
    }

    #[test]
    fn sym_word_signs() {
        use Parity::*;
        let par = [Even, Odd, Odd];
        assert_eq!(sym_word(&par, &[2, 1]), Some((true, Monomial::from_exponents(vec![0, 1, 1]))));
        assert_eq!(sym_word(&par, &[1, 0, 2]), Some((false, Monomial::from_exponents(vec![1, 1, 1]))));
        assert_eq!(sym_word(&par, &[1, 0, 1]), None);
        assert_eq!(sym_word(&par, &[0, 0]), Some((false, Monomial::from_exponents(vec![2, 0, 0]))));
    }

    #[test]
    fn odd_pair_symmetrization() {
        let ctx = odd_pair();
        assert_eq!(ctx.p_generators().len(), 2);
        let np = 2;
        // s(xy) = ½(xy - yx) for odd x, y
        let m = Monomial::from_exponents(vec![1, 1]);
        let s = ctx.supersymmetrize(&SymElement::monomial(SymSpace::P, m.clone()));
        let env = ctx.enveloping();
        let x = ctx.p_generators()[0];
        let y = ctx.p_generators()[1];
        let expected = (&env.word(&[x, y]) - &env.word(&[y, x])).scaled(&Scalar::new(1, 2));
        assert_eq!(s, expected);
        assert_eq!(ctx.reduce_mod_il(&s).unwrap(), SymElement::monomial(SymSpace::P, m));
        assert!(ctx.check_unitriangular(2).pass());
        assert!(ctx.check_reduce_inverts(2).pass());
        assert!(ctx.check_intertwining(2).unwrap().pass());
        let _ = np;
    }

    #[test]
    fn ad_kills_constants_and_rejects_p() {
        let ctx = odd_pair();
        let one = SymElement::monomial(SymSpace::P, Monomial::one(2));
        let k = ctx.k_generators()[0];
        assert!(ctx.ad_action(&SuperVector::basis(k), &one).unwrap().is_zero());
        let p = ctx.p_generators()[0];
        assert!(ctx.ad_action(&SuperVector::basis(p), &one).is_err());
    }

    #[test]
    fn rebase_identity_is_noop() {
        let g = gl_superalgebra(1, 1).unwrap();
        let names: Vec<String> = g.generators().iter().map(|x| x.name.clone()).collect();
        let basis: Vec<SuperVector> = (0..4).map(SuperVector::basis).collect();
        let h = rebase(&g, g.name(), &names, &basis).unwrap();
        assert_eq!(h, g);
    }
}
