//! The universal enveloping algebra `U(g)` in its PBW basis, with the Hopf
//! structure (coproduct, counit, antipode) and degree-truncated dual
//! functionals.
//!
//! Elements are kept in normal form: finite combinations of ordered
//! monomials `x_0^{a_0} x_1^{a_1} ... x_{n-1}^{a_{n-1}}` in the generator
//! order of the underlying [`LieSuperalgebra`], with odd exponents at most
//! one. Products are brought back to normal form by moving each incoming
//! generator leftwards past larger ones:
//!
//! * `x_j x_i = (-1)^{|i||j|} x_i x_j + [x_j, x_i]` for `i < j`,
//! * `x_i x_i = ½ [x_i, x_i]` for odd `x_i`.
//!
//! The result of multiplying a monomial by a generator is memoized.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{LieSuperalgebra, SuperVector};
use crate::report::IdentityReport;
use crate::scalar::{binomial, Parity, Scalar};

/// Exponent vector of an ordered PBW monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn generator(dim: usize, index: usize) -> Self {
        let mut m = Monomial::one(dim);
        m.0[index] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Generator indices of the monomial read left to right.
    pub fn factors(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    fn last_index(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    fn with_delta(&self, index: usize, delta: i32) -> Monomial {
        let mut m = self.clone();
        m.0[index] = (m.0[index] as i32 + delta) as u32;
        m
    }

    pub fn with_exponent(&self, index: usize, value: u32) -> Monomial {
        let mut m = self.clone();
        m.0[index] = value;
        m
    }

    /// Parity given the generator parities.
    pub fn parity(&self, parities: &[Parity]) -> Parity {
        let odd: u32 = self
            .0
            .iter()
            .zip(parities)
            .filter(|(_, p)| p.is_odd())
            .map(|(e, _)| *e)
            .sum();
        Parity::from_bool(odd % 2 == 1)
    }
}

/// Degree first, then lexicographic on the exponent vector.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// An element of `U(g)` in PBW normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl UElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Scalar::one())
    }

    pub fn term(m: Monomial, coeff: Scalar) -> Self {
        let mut u = Self::zero();
        u.add_term(m, coeff);
        u
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, coeff: &Scalar, other: &UElement) {
        if coeff.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), coeff * c);
        }
    }

    pub fn scaled(&self, coeff: &Scalar) -> UElement {
        if coeff.is_zero() {
            return UElement::zero();
        }
        UElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * coeff)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms in ascending degree-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }

    pub fn as_sparse(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    /// Takes a map that may hold zero coefficients.
    pub fn from_sparse(terms: BTreeMap<Monomial, Scalar>) -> Self {
        terms.into_iter().collect()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&Monomial) -> bool) {
        self.terms.retain(|m, _| keep(m));
    }
}

impl std::ops::Add for &UElement {
    type Output = UElement;
    fn add(self, rhs: &UElement) -> UElement {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), rhs);
        out
    }
}

impl std::ops::Sub for &UElement {
    type Output = UElement;
    fn sub(self, rhs: &UElement) -> UElement {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), rhs);
        out
    }
}

impl std::ops::Neg for &UElement {
    type Output = UElement;
    fn neg(self) -> UElement {
        self.scaled(&-Scalar::one())
    }
}

impl FromIterator<(Monomial, Scalar)> for UElement {
    fn from_iter<T: IntoIterator<Item = (Monomial, Scalar)>>(iter: T) -> Self {
        let mut u = UElement::zero();
        for (m, c) in iter {
            u.add_term(m, c);
        }
        u
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    monomial: Vec<u32>,
    coeff: Scalar,
}

impl Serialize for UElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&TermRecord {
                monomial: m.0.clone(),
                coeff: c.clone(),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for UElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        Ok(records
            .into_iter()
            .map(|r| (Monomial(r.monomial), r.coeff))
            .collect())
    }
}

/// An element of `U(g) ⊗ U(g)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, left: Monomial, right: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((left.clone(), right.clone()))
            .or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(left, right));
        }
    }

    /// Adds `coeff * (a ⊗ b)` expanded bilinearly.
    pub fn add_product(&mut self, coeff: &Scalar, a: &UElement, b: &UElement) {
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                self.add_term(ma.clone(), mb.clone(), coeff * &(ca * cb));
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &Scalar)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A linear functional on `U(g)`, known on all PBW monomials up to a degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualFunctional {
    pub degree_bound: u32,
    pub parity: Parity,
    values: BTreeMap<Monomial, Scalar>,
}

impl DualFunctional {
    /// Values not listed are zero.
    pub fn new(degree_bound: u32, parity: Parity, values: BTreeMap<Monomial, Scalar>) -> Result<Self> {
        for m in values.keys() {
            if m.degree() > degree_bound {
                return Err(Error::DegreeBound {
                    degree: m.degree() as usize,
                    bound: degree_bound as usize,
                });
            }
        }
        let values = values.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(DualFunctional {
            degree_bound,
            parity,
            values,
        })
    }

    /// The counit, the unit of the dual algebra.
    pub fn counit(dim: usize, degree_bound: u32) -> Self {
        let mut values = BTreeMap::new();
        values.insert(Monomial::one(dim), Scalar::one());
        DualFunctional {
            degree_bound,
            parity: Parity::Even,
            values,
        }
    }

    pub fn value(&self, m: &Monomial) -> Result<Scalar> {
        if m.degree() > self.degree_bound {
            return Err(Error::DegreeBound {
                degree: m.degree() as usize,
                bound: self.degree_bound as usize,
            });
        }
        Ok(self.values.get(m).cloned().unwrap_or_else(Scalar::zero))
    }

    pub fn evaluate(&self, u: &UElement) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (m, c) in u.terms() {
            acc += &(c * &self.value(m)?);
        }
        Ok(acc)
    }

    pub fn values(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.values
    }
}

type Cache = HashMap<(Monomial, usize), Arc<UElement>>;

/// `U(g)` for a fixed algebra and generator order.
pub struct Enveloping {
    algebra: Arc<LieSuperalgebra>,
    parities: Vec<Parity>,
    cache: Mutex<Cache>,
}

impl fmt::Debug for Enveloping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Enveloping")
            .field("algebra", &self.algebra.name())
            .finish()
    }
}

impl Enveloping {
    pub fn new(algebra: Arc<LieSuperalgebra>) -> Self {
        let parities = algebra.generators().iter().map(|g| g.parity).collect();
        Enveloping {
            algebra,
            parities,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &Arc<LieSuperalgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn one(&self) -> UElement {
        UElement::monomial(Monomial::one(self.dim()))
    }

    pub fn scalar(&self, c: Scalar) -> UElement {
        UElement::term(Monomial::one(self.dim()), c)
    }

    pub fn generator(&self, index: usize) -> UElement {
        UElement::monomial(Monomial::generator(self.dim(), index))
    }

    pub fn named(&self, name: &str) -> Result<UElement> {
        let i = self
            .algebra
            .generator_index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(self.generator(i))
    }

    /// Embeds `g` into `U(g)`.
    pub fn from_vector(&self, v: &SuperVector) -> UElement {
        v.terms()
            .map(|(i, c)| (Monomial::generator(self.dim(), i), c.clone()))
            .collect()
    }

    /// Parity of a homogeneous element (zero is even); `None` if mixed.
    pub fn parity_of(&self, u: &UElement) -> Option<Parity> {
        let mut parity = None;
        for (m, _) in u.terms() {
            let p = m.parity(&self.parities);
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(parity.unwrap_or(Parity::Even))
    }

    /// `m · x_index` in normal form.
    pub fn monomial_times_generator(&self, m: &Monomial, index: usize) -> Arc<UElement> {
        let key = (m.clone(), index);
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Arc::clone(hit);
        }
        let result = Arc::new(self.compute_times_generator(m, index));
        self.cache
            .lock()
            .expect("cache poisoned")
            .insert(key, Arc::clone(&result));
        result
    }

    fn compute_times_generator(&self, m: &Monomial, i: usize) -> UElement {
        let last = m.last_index();
        match last {
            None => UElement::monomial(m.with_delta(i, 1)),
            Some(j) if i > j => UElement::monomial(m.with_delta(i, 1)),
            Some(j) if i == j => {
                if !self.parities[i].is_odd() {
                    return UElement::monomial(m.with_delta(i, 1));
                }
                // x_i x_i = ½ [x_i, x_i]
                let rest = m.with_delta(i, -1);
                let half = Scalar::new(1, 2);
                let mut out = UElement::zero();
                for (l, c) in self.algebra.bracket_basis(i, i).terms() {
                    out.add_scaled(&(&half * c), &self.monomial_times_generator(&rest, l));
                }
                out
            }
            Some(j) => {
                // m = rest · x_j with j > i
                let rest = m.with_delta(j, -1);
                let sign = Scalar::sign(self.parities[i].swap_is_negative(self.parities[j]));
                let mut out = UElement::zero();
                let moved = self.monomial_times_generator(&rest, i);
                for (t, c) in moved.terms() {
                    out.add_scaled(&(&sign * c), &self.monomial_times_generator(t, j));
                }
                for (l, c) in self.algebra.bracket_basis(j, i).terms() {
                    out.add_scaled(c, &self.monomial_times_generator(&rest, l));
                }
                out
            }
        }
    }

    pub fn times_generator(&self, u: &UElement, index: usize) -> UElement {
        let mut out = UElement::zero();
        for (m, c) in u.terms() {
            out.add_scaled(c, &self.monomial_times_generator(m, index));
        }
        out
    }

    pub fn times_vector(&self, u: &UElement, v: &SuperVector) -> UElement {
        let mut out = UElement::zero();
        for (i, c) in v.terms() {
            out.add_scaled(c, &self.times_generator(u, i));
        }
        out
    }

    /// Associative product of `U(g)`.
    pub fn multiply(&self, a: &UElement, b: &UElement) -> UElement {
        let mut out = UElement::zero();
        for (m, c) in b.terms() {
            let mut acc = a.clone();
            for g in m.factors() {
                acc = self.times_generator(&acc, g);
            }
            out.add_scaled(c, &acc);
        }
        out
    }

    pub fn product(&self, factors: &[&UElement]) -> UElement {
        factors
            .iter()
            .fold(self.one(), |acc, f| self.multiply(&acc, f))
    }

    pub fn pow(&self, u: &UElement, n: u32) -> UElement {
        (0..n).fold(self.one(), |acc, _| self.multiply(&acc, u))
    }

    /// Normal form of a word of scaled vectors `(c_1 v_1)(c_2 v_2)...`.
    pub fn normal_form(&self, word: &[(SuperVector, Scalar)]) -> Result<UElement> {
        let mut acc = self.one();
        for (v, c) in word {
            if let Some(m) = v.max_index() {
                if m >= self.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim(),
                        found: m + 1,
                    });
                }
            }
            acc = self.times_vector(&acc, v).scaled(c);
        }
        Ok(acc)
    }

    /// Product of generators given by index, in the given order.
    pub fn word(&self, indices: &[usize]) -> UElement {
        indices
            .iter()
            .fold(self.one(), |acc, &g| self.times_generator(&acc, g))
    }

    /// All PBW monomials of degree at most `degree`, ascending.
    pub fn monomials_up_to(&self, degree: u32) -> Vec<Monomial> {
        monomials_up_to(&self.parities, degree)
    }

    /// Number of PBW monomials of degree at most `degree`.
    pub fn dimension_up_to(&self, degree: u32) -> usize {
        self.monomials_up_to(degree).len()
    }

    pub fn counit(&self, u: &UElement) -> Scalar {
        u.coeff(&Monomial::one(self.dim()))
    }

    /// Coproduct of a PBW monomial. Splitting the ordered factors into a
    /// left and a right subword keeps both halves ordered; the Koszul sign
    /// counts odd factors sent right that precede odd factors sent left.
    pub fn coproduct_monomial(&self, m: &Monomial) -> TensorElement {
        let mut out = TensorElement::zero();
        let dim = self.dim();
        let mut left = vec![0u32; dim];
        self.split(m, 0, &mut left, Scalar::one(), &mut out);
        out
    }

    fn split(&self, m: &Monomial, pos: usize, left: &mut Vec<u32>, coeff: Scalar, out: &mut TensorElement) {
        if pos == self.dim() {
            let l = Monomial(left.clone());
            let r = Monomial(m.0.iter().zip(left.iter()).map(|(a, b)| a - b).collect());
            // odd factors sent right before odd factors sent left
            let mut right_odd_seen = 0u32;
            let mut crossings = 0u32;
            for i in 0..self.dim() {
                if !self.parities[i].is_odd() {
                    continue;
                }
                if l.0[i] == 1 {
                    crossings += right_odd_seen;
                }
                if r.0[i] == 1 {
                    right_odd_seen += 1;
                }
            }
            let sign = Scalar::sign(crossings % 2 == 1);
            out.add_term(l, r, &coeff * &sign);
            return;
        }
        let e = m.0[pos];
        for s in 0..=e {
            left[pos] = s;
            let c = &coeff * &binomial(e as u64, s as u64);
            self.split(m, pos + 1, left, c, out);
        }
        left[pos] = 0;
    }

    pub fn coproduct(&self, u: &UElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (m, c) in u.terms() {
            for (a, b, d) in self.coproduct_monomial(m).terms() {
                out.add_term(a.clone(), b.clone(), c * d);
            }
        }
        out
    }

    /// Product in `U ⊗ U` with `(a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} ac ⊗ bd`.
    pub fn tensor_multiply(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (a, b, c1) in x.terms() {
            for (c, d, c2) in y.terms() {
                let sign = Scalar::sign(b.parity(&self.parities).swap_is_negative(c.parity(&self.parities)));
                let ac = self.multiply(&UElement::monomial(a.clone()), &UElement::monomial(c.clone()));
                let bd = self.multiply(&UElement::monomial(b.clone()), &UElement::monomial(d.clone()));
                out.add_product(&(&sign * &(c1 * c2)), &ac, &bd);
            }
        }
        out
    }

    /// Multiplication map `a ⊗ b ↦ ab`.
    pub fn contract(&self, t: &TensorElement) -> UElement {
        let mut out = UElement::zero();
        for (a, b, c) in t.terms() {
            out.add_scaled(
                c,
                &self.multiply(&UElement::monomial(a.clone()), &UElement::monomial(b.clone())),
            );
        }
        out
    }

    /// `S(x_1 ⋯ x_r) = (-1)^r ε(rev) x_r ⋯ x_1`, where `ε(rev)` is the
    /// Koszul sign of reversing the odd factors.
    pub fn antipode_monomial(&self, m: &Monomial) -> UElement {
        let factors = m.factors();
        let r = factors.len();
        let odd = factors.iter().filter(|&&g| self.parities[g].is_odd()).count();
        let negative = (r + odd * odd.saturating_sub(1) / 2) % 2 == 1;
        let reversed: Vec<usize> = factors.into_iter().rev().collect();
        self.word(&reversed).scaled(&Scalar::sign(negative))
    }

    pub fn antipode(&self, u: &UElement) -> UElement {
        let mut out = UElement::zero();
        for (m, c) in u.terms() {
            out.add_scaled(c, &self.antipode_monomial(m));
        }
        out
    }

    /// `(λμ)(x) = Σ (-1)^{|x_1||μ|} λ(x_1) μ(x_2)` over `Δ(x) = Σ x_1 ⊗ x_2`.
    pub fn dual_product(&self, lam: &DualFunctional, mu: &DualFunctional, x: &Monomial) -> Result<Scalar> {
        let bound = lam.degree_bound.min(mu.degree_bound);
        if x.degree() > bound {
            return Err(Error::DegreeBound {
                degree: x.degree() as usize,
                bound: bound as usize,
            });
        }
        let mut acc = Scalar::zero();
        for (a, b, c) in self.coproduct_monomial(x).terms() {
            let sign = Scalar::sign(a.parity(&self.parities).swap_is_negative(mu.parity));
            acc += &(&(c * &sign) * &(&lam.value(a)? * &mu.value(b)?));
        }
        Ok(acc)
    }

    /// The product functional on every monomial up to the common bound.
    pub fn dual_product_functional(&self, lam: &DualFunctional, mu: &DualFunctional) -> Result<DualFunctional> {
        let bound = lam.degree_bound.min(mu.degree_bound);
        let mut values = BTreeMap::new();
        for m in self.monomials_up_to(bound) {
            let v = self.dual_product(lam, mu, &m)?;
            values.insert(m, v);
        }
        DualFunctional::new(bound, lam.parity + mu.parity, values)
    }

    /// True iff `lam` vanishes on every supplied vector of the coideal.
    pub fn is_bi_invariant(&self, lam: &DualFunctional, ideal_vectors: &[UElement]) -> Result<bool> {
        for v in ideal_vectors {
            if !lam.evaluate(v)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coassociativity, both counit laws and both antipode laws on every PBW
    /// monomial of degree at most `degree`, and `Δ(m x) = Δ(m) Δ(x)` for
    /// every such monomial `m` of degree below `degree` and generator `x`.
    pub fn check_hopf_axioms(&self, degree: u32) -> HopfReport {
        let mut report = HopfReport {
            degree,
            ..HopfReport::default()
        };
        let monomials = self.monomials_up_to(degree);
        report.monomials = monomials.len();
        for m in &monomials {
            let fmt = || format_monomial(&self.algebra, m);
            let delta = self.coproduct_monomial(m);

            let mut left = BTreeMap::new();
            let mut right = BTreeMap::new();
            for (a, b, c) in delta.terms() {
                for (a1, a2, c1) in self.coproduct_monomial(a).terms() {
                    add_triple(&mut left, (a1.clone(), a2.clone(), b.clone()), c * c1);
                }
                for (b1, b2, c2) in self.coproduct_monomial(b).terms() {
                    add_triple(&mut right, (a.clone(), b1.clone(), b2.clone()), c * c2);
                }
            }
            report.coassociativity.record(left == right, fmt);

            let mut eps_left = UElement::zero();
            let mut eps_right = UElement::zero();
            let mut s_left = UElement::zero();
            let mut s_right = UElement::zero();
            for (a, b, c) in delta.terms() {
                if a.is_one() {
                    eps_left.add_term(b.clone(), c.clone());
                }
                if b.is_one() {
                    eps_right.add_term(a.clone(), c.clone());
                }
                s_left.add_scaled(c, &self.multiply(&self.antipode_monomial(a), &UElement::monomial(b.clone())));
                s_right.add_scaled(c, &self.multiply(&UElement::monomial(a.clone()), &self.antipode_monomial(b)));
            }
            let target = UElement::monomial(m.clone());
            report.counit.record(eps_left == target && eps_right == target, fmt);
            let unit = if m.is_one() { self.one() } else { UElement::zero() };
            report.antipode.record(s_left == unit && s_right == unit, fmt);

            if m.degree() < degree {
                for x in 0..self.dim() {
                    let mx = self.times_generator(&UElement::monomial(m.clone()), x);
                    let lhs = self.coproduct(&mx);
                    let rhs = self.tensor_multiply(&delta, &self.coproduct_monomial(&Monomial::generator(self.dim(), x)));
                    report
                        .morphism
                        .record(lhs == rhs, || format!("{} * {}", fmt(), self.algebra.generators()[x].name));
                }
            }
        }
        report
    }

    /// Pretty form such as `2*z^2*p*e - e'`.
    pub fn format(&self, u: &UElement) -> String {
        format_element(&self.algebra, u)
    }
}

fn add_triple(map: &mut BTreeMap<(Monomial, Monomial, Monomial), Scalar>, key: (Monomial, Monomial, Monomial), c: Scalar) {
    let entry = map.entry(key.clone()).or_insert_with(Scalar::zero);
    *entry += c;
    if entry.is_zero() {
        map.remove(&key);
    }
}

/// Results of [`Enveloping::check_hopf_axioms`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub degree: u32,
    pub monomials: usize,
    pub coassociativity: IdentityReport,
    pub counit: IdentityReport,
    pub antipode: IdentityReport,
    pub morphism: IdentityReport,
}

impl HopfReport {
    pub fn pass(&self) -> bool {
        self.coassociativity.pass() && self.counit.pass() && self.antipode.pass() && self.morphism.pass()
    }
}

/// Exponent vectors of total degree at most `degree` with odd exponents at
/// most one, ascending.
pub fn monomials_up_to(parities: &[Parity], degree: u32) -> Vec<Monomial> {
    fn go(parities: &[Parity], pos: usize, budget: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == parities.len() {
            out.push(Monomial(current.clone()));
            return;
        }
        let cap = if parities[pos].is_odd() { budget.min(1) } else { budget };
        for e in 0..=cap {
            current[pos] = e;
            go(parities, pos + 1, budget - e, current, out);
        }
        current[pos] = 0;
    }
    let mut out = Vec::new();
    go(parities, 0, degree, &mut vec![0; parities.len()], &mut out);
    out.sort();
    out
}

pub fn format_monomial(algebra: &LieSuperalgebra, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let name = &algebra.generators()[i].name;
            if e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Terms printed from highest to lowest in the monomial order.
pub fn format_element(algebra: &LieSuperalgebra, u: &UElement) -> String {
    if u.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (m, c)) in u.terms().rev().enumerate() {
        let neg = c.is_negative();
        if n > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        let a = c.abs();
        let mono = format_monomial(algebra, m);
        if m.is_one() {
            out.push_str(&scalar_literal(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{mono}", scalar_literal(&a)));
        }
    }
    out
}

fn scalar_literal(c: &Scalar) -> String {
    if c.is_integer() {
        c.to_string()
    } else {
        format!("({c})")
    }
}
