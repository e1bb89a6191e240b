//! Finite-dimensional Lie superalgebras given by structure constants,
//! the general linear family `gl(m|n)`, involutions and the `k ⊕ p`
//! splitting of a supersymmetric pair.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{solve_membership, Matrix};
use crate::scalar::{Parity, Scalar};

/// A finite combination of basis vectors of a Lie superalgebra.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuperVector {
    coeffs: BTreeMap<usize, Scalar>,
}

impl SuperVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(index: usize) -> Self {
        Self::term(index, Scalar::one())
    }

    pub fn term(index: usize, coeff: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(index, coeff);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = Self::zero();
        for (i, c) in terms {
            v.add_term(i, c);
        }
        v
    }

    pub fn from_dense(coords: &[Scalar]) -> Self {
        Self::from_terms(coords.iter().cloned().enumerate())
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); dim];
        for (&i, c) in &self.coeffs {
            out[i] = c.clone();
        }
        out
    }

    pub fn add_term(&mut self, index: usize, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(index).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn add_scaled(&mut self, coeff: &Scalar, other: &SuperVector) {
        for (&i, c) in &other.coeffs {
            self.add_term(i, coeff * c);
        }
    }

    pub fn scaled(&self, coeff: &Scalar) -> SuperVector {
        if coeff.is_zero() {
            return SuperVector::zero();
        }
        SuperVector {
            coeffs: self.coeffs.iter().map(|(&i, c)| (i, c * coeff)).collect(),
        }
    }

    pub fn coeff(&self, index: usize) -> Scalar {
        self.coeffs.get(&index).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }
}

impl std::ops::Add for &SuperVector {
    type Output = SuperVector;
    fn add(self, rhs: &SuperVector) -> SuperVector {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), rhs);
        out
    }
}

impl std::ops::Sub for &SuperVector {
    type Output = SuperVector;
    fn sub(self, rhs: &SuperVector) -> SuperVector {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), rhs);
        out
    }
}

impl std::ops::Neg for &SuperVector {
    type Output = SuperVector;
    fn neg(self) -> SuperVector {
        self.scaled(&-Scalar::one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub index: usize,
    pub name: String,
    pub parity: Parity,
}

/// A Lie superalgebra presented by a homogeneous basis and the brackets of
/// all basis pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct LieSuperalgebra {
    name: String,
    generators: Vec<Generator>,
    table: Vec<SuperVector>,
}

impl fmt::Debug for LieSuperalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieSuperalgebra")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .finish()
    }
}

impl LieSuperalgebra {
    /// Builds an algebra from the brackets `[x_i, x_j]` for `i <= j`; the
    /// remaining entries follow from super skew-symmetry. Entries given for
    /// `i > j` are checked against it.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<(String, Parity)>,
        brackets: BTreeMap<(usize, usize), SuperVector>,
    ) -> Result<Self> {
        let dim = generators.len();
        let generators: Vec<Generator> = generators
            .into_iter()
            .enumerate()
            .map(|(index, (name, parity))| Generator {
                index,
                name,
                parity,
            })
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.name.clone()) {
                return Err(Error::InvalidAlgebra(format!("duplicate generator `{}`", g.name)));
            }
        }
        let mut table = vec![SuperVector::zero(); dim * dim];
        for (&(i, j), v) in &brackets {
            if i >= dim || j >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: i.max(j) + 1,
                });
            }
            if let Some(m) = v.max_index() {
                if m >= dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: m + 1,
                    });
                }
            }
            if i <= j {
                table[i * dim + j] = v.clone();
            }
        }
        for i in 0..dim {
            for j in 0..i {
                let sign = skew_sign(generators[i].parity, generators[j].parity);
                let derived = table[j * dim + i].scaled(&sign);
                if let Some(given) = brackets.get(&(i, j)) {
                    if *given != derived {
                        return Err(Error::InvalidAlgebra(format!(
                            "bracket [{}, {}] violates super skew-symmetry",
                            generators[i].name, generators[j].name
                        )));
                    }
                }
                table[i * dim + j] = derived;
            }
        }
        let algebra = LieSuperalgebra {
            name: name.into(),
            generators,
            table,
        };
        algebra.check_structure()?;
        Ok(algebra)
    }

    fn check_structure(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let v = &self.table[i * dim + j];
                let expected = self.generators[i].parity + self.generators[j].parity;
                if !v.is_zero() && self.parity_of(v) != Some(expected) {
                    return Err(Error::InvalidAlgebra(format!(
                        "bracket [{}, {}] is not homogeneous of parity {expected}",
                        self.generators[i].name, self.generators[j].name
                    )));
                }
                if i == j && !self.generators[i].parity.is_odd() && !v.is_zero() {
                    return Err(Error::InvalidAlgebra(format!(
                        "[{0}, {0}] must vanish for even {0}",
                        self.generators[i].name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn parity(&self, index: usize) -> Parity {
        self.generators[index].parity
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn generator(&self, name: &str) -> Result<SuperVector> {
        self.generator_index(name)
            .map(SuperVector::basis)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Parity of a homogeneous vector; `None` for mixed vectors. The zero
    /// vector is reported as even.
    pub fn parity_of(&self, v: &SuperVector) -> Option<Parity> {
        let mut parity = None;
        for (i, _) in v.terms() {
            let p = self.parity(i);
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(parity.unwrap_or(Parity::Even))
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SuperVector {
        &self.table[i * self.dim() + j]
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &SuperVector, y: &SuperVector) -> Result<SuperVector> {
        for v in [x, y] {
            if let Some(m) = v.max_index() {
                if m >= self.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim(),
                        found: m + 1,
                    });
                }
            }
        }
        let mut out = SuperVector::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                out.add_scaled(&(a * b), self.bracket_basis(i, j));
            }
        }
        Ok(out)
    }

    /// Exhaustive super Jacobi check over all basis triples:
    /// `[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]`.
    pub fn check_jacobi(&self) -> JacobiReport {
        let dim = self.dim();
        let mut failures = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let (x, y, z) = (
                        SuperVector::basis(i),
                        SuperVector::basis(j),
                        SuperVector::basis(k),
                    );
                    let lhs = self.bracket(&x, &self.bracket(&y, &z).unwrap()).unwrap();
                    let mut rhs = self.bracket(&self.bracket(&x, &y).unwrap(), &z).unwrap();
                    let sign = Scalar::sign(self.parity(i).swap_is_negative(self.parity(j)));
                    rhs.add_scaled(&sign, &self.bracket(&y, &self.bracket(&x, &z).unwrap()).unwrap());
                    if lhs != rhs {
                        failures.push([
                            self.generators[i].name.clone(),
                            self.generators[j].name.clone(),
                            self.generators[k].name.clone(),
                        ]);
                    }
                }
            }
        }
        JacobiReport {
            algebra: self.name.clone(),
            triples_checked: dim * dim * dim,
            failures,
        }
    }

    /// Copy of this algebra with one structure constant shifted; used to
    /// exercise the Jacobi checker.
    pub fn perturbed(&self, i: usize, j: usize, target: usize, delta: Scalar) -> Result<Self> {
        let mut brackets = BTreeMap::new();
        for a in 0..self.dim() {
            for b in a..self.dim() {
                brackets.insert((a, b), self.bracket_basis(a, b).clone());
            }
        }
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        brackets.entry((a, b)).or_default().add_term(target, delta);
        LieSuperalgebra::new(
            format!("{}~", self.name),
            self.generators.iter().map(|g| (g.name.clone(), g.parity)).collect(),
            brackets,
        )
    }

    /// Matrix of `ad_x` in the generator basis (column `j` is `[x, x_j]`).
    pub fn ad_matrix(&self, x: &SuperVector) -> Matrix {
        let dim = self.dim();
        let mut m = Matrix::zeros(dim, dim);
        for j in 0..dim {
            let col = self.bracket(x, &SuperVector::basis(j)).unwrap();
            for (i, c) in col.terms() {
                m[(i, j)] = c.clone();
            }
        }
        m
    }

    /// Builds the algebra spanned by a homogeneous basis of supermatrices,
    /// closed under the supercommutator.
    pub fn from_matrix_basis(
        name: impl Into<String>,
        names: &[&str],
        basis: &MatrixBasis,
    ) -> Result<Self> {
        if names.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: names.len(),
            });
        }
        let mut generators = Vec::new();
        for (name, m) in names.iter().zip(basis.matrices()) {
            let parity = m.parity().ok_or_else(|| {
                Error::InvalidAlgebra(format!("basis matrix `{name}` is not homogeneous"))
            })?;
            generators.push((name.to_string(), parity));
        }
        let mut brackets = BTreeMap::new();
        for i in 0..basis.len() {
            for j in i..basis.len() {
                let c = basis.matrices()[i].supercommutator(&basis.matrices()[j])?;
                let v = basis.coordinates(&c)?.ok_or_else(|| {
                    Error::InvalidAlgebra(format!(
                        "[{}, {}] leaves the span of the basis",
                        names[i], names[j]
                    ))
                })?;
                brackets.insert((i, j), v);
            }
        }
        LieSuperalgebra::new(name, generators, brackets)
    }

    pub fn to_definition(&self) -> AlgebraDefinition {
        let mut brackets = Vec::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let v = self.bracket_basis(i, j);
                if !v.is_zero() {
                    brackets.push(BracketEntry {
                        left: self.generators[i].name.clone(),
                        right: self.generators[j].name.clone(),
                        value: v
                            .terms()
                            .map(|(k, c)| (self.generators[k].name.clone(), c.clone()))
                            .collect(),
                    });
                }
            }
        }
        AlgebraDefinition {
            name: self.name.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorDefinition {
                    name: g.name.clone(),
                    parity: g.parity,
                })
                .collect(),
            brackets,
        }
    }

    pub fn from_definition(def: &AlgebraDefinition) -> Result<Self> {
        let index = |name: &str| {
            def.generators
                .iter()
                .position(|g| g.name == name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
        };
        let mut brackets: BTreeMap<(usize, usize), SuperVector> = BTreeMap::new();
        for entry in &def.brackets {
            let (i, j) = (index(&entry.left)?, index(&entry.right)?);
            let mut v = SuperVector::zero();
            for (name, c) in &entry.value {
                v.add_term(index(name)?, c.clone());
            }
            if brackets.insert((i, j), v).is_some() {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket [{}, {}] given twice",
                    entry.left, entry.right
                )));
            }
        }
        // a bracket given only as (j, i) with j > i is translated to (i, j)
        let mut normalized = BTreeMap::new();
        for (&(i, j), v) in &brackets {
            if i > j && !brackets.contains_key(&(j, i)) {
                let p = (&def.generators[i].parity, &def.generators[j].parity);
                normalized.insert((j, i), v.scaled(&skew_sign(*p.0, *p.1)));
            }
            normalized.insert((i, j), v.clone());
        }
        LieSuperalgebra::new(
            def.name.clone(),
            def.generators
                .iter()
                .map(|g| (g.name.clone(), g.parity))
                .collect(),
            normalized,
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let def: AlgebraDefinition =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_definition(&def)
    }

    pub fn format_vector(&self, v: &SuperVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (i, c)) in v.terms().enumerate() {
            let name = &self.generators[i].name;
            let neg = c.is_negative();
            if n > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let a = c.abs();
            if a.is_one() {
                out.push_str(name);
            } else {
                out.push_str(&format!("{a}*{name}"));
            }
        }
        out
    }
}

/// `(-1)^{|x||y|}` with the extra minus of skew symmetry: `[y,x] = sign * [x,y]`.
fn skew_sign(py: Parity, px: Parity) -> Scalar {
    Scalar::sign(!py.swap_is_negative(px))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiReport {
    pub algebra: String,
    pub triples_checked: usize,
    pub failures: Vec<[String; 3]>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDefinition {
    pub name: String,
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: BTreeMap<String, Scalar>,
}

/// JSON document describing an algebra: generators in order and the
/// non-zero brackets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDefinition {
    pub name: String,
    pub generators: Vec<GeneratorDefinition>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

/// A square matrix over a `Z/2`-graded index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMatrix {
    row_parities: Vec<Parity>,
    entries: Matrix,
}

impl SuperMatrix {
    pub fn new(row_parities: Vec<Parity>, entries: Matrix) -> Result<Self> {
        let n = row_parities.len();
        if entries.rows() != n || entries.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: entries.rows(),
            });
        }
        Ok(SuperMatrix {
            row_parities,
            entries,
        })
    }

    /// Square matrix with `m` even rows followed by `n` odd rows.
    pub fn standard(m: usize, n: usize, entries: Matrix) -> Result<Self> {
        let parities = std::iter::repeat_n(Parity::Even, m)
            .chain(std::iter::repeat_n(Parity::Odd, n))
            .collect();
        SuperMatrix::new(parities, entries)
    }

    pub fn unit(parities: &[Parity], i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(parities.len(), parities.len());
        m[(i, j)] = Scalar::one();
        SuperMatrix {
            row_parities: parities.to_vec(),
            entries: m,
        }
    }

    pub fn size(&self) -> usize {
        self.row_parities.len()
    }

    pub fn row_parities(&self) -> &[Parity] {
        &self.row_parities
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// Parity if the matrix is homogeneous (zero counts as even).
    pub fn parity(&self) -> Option<Parity> {
        let mut parity = None;
        for i in 0..self.size() {
            for j in 0..self.size() {
                if self.entries[(i, j)].is_zero() {
                    continue;
                }
                let p = self.row_parities[i] + self.row_parities[j];
                match parity {
                    None => parity = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        Some(parity.unwrap_or(Parity::Even))
    }

    fn with_entries(&self, entries: Matrix) -> SuperMatrix {
        SuperMatrix {
            row_parities: self.row_parities.clone(),
            entries,
        }
    }

    pub fn mul(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        Ok(self.with_entries(self.entries.mul(&other.entries)?))
    }

    pub fn scale(&self, c: &Scalar) -> SuperMatrix {
        self.with_entries(self.entries.scale(c))
    }

    pub fn add(&self, other: &SuperMatrix) -> SuperMatrix {
        self.with_entries(self.entries.add(&other.entries))
    }

    pub fn sub(&self, other: &SuperMatrix) -> SuperMatrix {
        self.with_entries(self.entries.sub(&other.entries))
    }

    /// `XY - (-1)^{|X||Y|} YX` for homogeneous `X`, `Y`.
    pub fn supercommutator(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        let (px, py) = match (self.parity(), other.parity()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::NotHomogeneous),
        };
        let xy = self.mul(other)?;
        let yx = other.mul(self)?;
        Ok(if px.swap_is_negative(py) {
            xy.add(&yx)
        } else {
            xy.sub(&yx)
        })
    }

    /// Supertranspose with `[[A, B], [C, D]]^st = [[A^t, -C^t], [B^t, D^t]]`
    /// on homogeneous index blocks: the entry `(i, j)` of the result is
    /// `X[j][i]`, negated when `i` is even and `j` is odd.
    pub fn supertranspose(&self) -> SuperMatrix {
        let n = self.size();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = self.entries[(j, i)].clone();
                let negate = !self.row_parities[i].is_odd() && self.row_parities[j].is_odd();
                out[(i, j)] = if negate { -x } else { x };
            }
        }
        self.with_entries(out)
    }

    fn flatten(&self) -> Vec<Scalar> {
        (0..self.size())
            .flat_map(|i| self.entries.row(i).to_vec())
            .collect()
    }
}

/// A basis of a space of supermatrices, with coordinate extraction.
#[derive(Clone, Debug)]
pub struct MatrixBasis {
    matrices: Vec<SuperMatrix>,
    flat: Vec<Vec<Scalar>>,
}

impl MatrixBasis {
    pub fn new(matrices: Vec<SuperMatrix>) -> Result<Self> {
        let flat: Vec<Vec<Scalar>> = matrices.iter().map(SuperMatrix::flatten).collect();
        if crate::linalg::rank_of(&flat) != matrices.len() {
            return Err(Error::InvalidAlgebra("basis matrices are linearly dependent".into()));
        }
        Ok(MatrixBasis { matrices, flat })
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[SuperMatrix] {
        &self.matrices
    }

    pub fn coordinates(&self, m: &SuperMatrix) -> Result<Option<SuperVector>> {
        Ok(solve_membership(&m.flatten(), &self.flat)?.map(|c| SuperVector::from_dense(&c)))
    }

    pub fn matrix_of(&self, v: &SuperVector) -> SuperMatrix {
        let first = &self.matrices[0];
        let mut acc = first.scale(&Scalar::zero());
        for (i, c) in v.terms() {
            acc = acc.add(&self.matrices[i].scale(c));
        }
        acc
    }
}

fn standard_parities(m: usize, n: usize) -> Vec<Parity> {
    std::iter::repeat_n(Parity::Even, m)
        .chain(std::iter::repeat_n(Parity::Odd, n))
        .collect()
}

/// Label of the `i`-th index of `gl(m|n)`: `1..m` for even, `1'..n'` for odd.
fn index_label(m: usize, i: usize) -> String {
    if i < m {
        format!("{}", i + 1)
    } else {
        format!("{}b", i - m + 1)
    }
}

/// Matrix units `E_{ij}` of `gl(m|n)` in row-major order.
pub fn gl_matrix_units(m: usize, n: usize) -> MatrixBasis {
    let parities = standard_parities(m, n);
    let size = m + n;
    let units = (0..size)
        .flat_map(|i| (0..size).map(move |j| (i, j)))
        .map(|(i, j)| SuperMatrix::unit(&parities, i, j))
        .collect();
    MatrixBasis::new(units).expect("matrix units are independent")
}

/// `gl(m|n)` on its matrix units `E_{ij}` (named `E1_2b` etc., `b` marking
/// odd indices), ordered row-major, with
/// `[E_ij, E_kl] = δ_jk E_il - (-1)^{(|i|+|j|)(|k|+|l|)} δ_li E_kj`.
pub fn gl_superalgebra(m: usize, n: usize) -> Result<LieSuperalgebra> {
    let size = m + n;
    if size == 0 {
        return Err(Error::InvalidAlgebra("gl(0|0) is empty".into()));
    }
    let parities = standard_parities(m, n);
    let idx = |i: usize, j: usize| i * size + j;
    let mut generators = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            generators.push((
                format!("E{}_{}", index_label(m, i), index_label(m, j)),
                parities[i] + parities[j],
            ));
        }
    }
    let mut brackets = BTreeMap::new();
    for i in 0..size {
        for j in 0..size {
            for k in 0..size {
                for l in 0..size {
                    let (a, b) = (idx(i, j), idx(k, l));
                    if a > b {
                        continue;
                    }
                    let mut v = SuperVector::zero();
                    if j == k {
                        v.add_term(idx(i, l), Scalar::one());
                    }
                    if l == i {
                        let neg = (parities[i] + parities[j]).swap_is_negative(parities[k] + parities[l]);
                        v.add_term(idx(k, j), -Scalar::sign(neg));
                    }
                    if !v.is_zero() {
                        brackets.insert((a, b), v);
                    }
                }
            }
        }
    }
    LieSuperalgebra::new(format!("gl({m}|{n})"), generators, brackets)
}

/// A linear involution of a Lie superalgebra, as a matrix acting on
/// generator coordinates (column `j` is the image of `x_j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    action: Matrix,
}

impl Involution {
    /// Validates that the matrix squares to the identity, preserves parity
    /// and respects brackets.
    pub fn new(algebra: &LieSuperalgebra, action: Matrix) -> Result<Self> {
        let dim = algebra.dim();
        if action.rows() != dim || action.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: action.rows(),
            });
        }
        let theta = Involution { action };
        if theta.action.mul(&theta.action)? != Matrix::identity(dim) {
            return Err(Error::NotAnAutomorphism("θ∘θ is not the identity".into()));
        }
        for i in 0..dim {
            let image = theta.apply(&SuperVector::basis(i));
            if !image.is_zero() && algebra.parity_of(&image) != Some(algebra.parity(i)) {
                return Err(Error::NotAnAutomorphism(format!(
                    "θ does not preserve the parity of {}",
                    algebra.generators()[i].name
                )));
            }
        }
        for i in 0..dim {
            for j in i..dim {
                let lhs = theta.apply(algebra.bracket_basis(i, j));
                let rhs = algebra.bracket(
                    &theta.apply(&SuperVector::basis(i)),
                    &theta.apply(&SuperVector::basis(j)),
                )?;
                if lhs != rhs {
                    return Err(Error::NotAnAutomorphism(format!(
                        "θ[{0}, {1}] != [θ{0}, θ{1}]",
                        algebra.generators()[i].name,
                        algebra.generators()[j].name
                    )));
                }
            }
        }
        Ok(theta)
    }

    /// Involution induced by a map on a matrix realization.
    pub fn from_matrix_map(
        algebra: &LieSuperalgebra,
        basis: &MatrixBasis,
        map: impl Fn(&SuperMatrix) -> SuperMatrix,
    ) -> Result<Self> {
        let dim = algebra.dim();
        let mut action = Matrix::zeros(dim, dim);
        for (j, m) in basis.matrices().iter().enumerate() {
            let image = basis.coordinates(&map(m))?.ok_or_else(|| {
                Error::NotAnAutomorphism("image leaves the matrix realization".into())
            })?;
            for (i, c) in image.terms() {
                action[(i, j)] = c.clone();
            }
        }
        Involution::new(algebra, action)
    }

    pub fn action(&self) -> &Matrix {
        &self.action
    }

    pub fn apply(&self, v: &SuperVector) -> SuperVector {
        let mut out = SuperVector::zero();
        for (j, c) in v.terms() {
            for i in 0..self.action.rows() {
                let a = &self.action[(i, j)];
                if !a.is_zero() {
                    out.add_term(i, a * c);
                }
            }
        }
        out
    }
}

/// Which eigenspace of θ a generator lies in, for bases adapted to `k ⊕ p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    K,
    P,
}

/// A supersymmetric pair `(g, k)` with `k = ker(θ - 1)`, `p = ker(θ + 1)`
/// and an even abelian subspace `a ⊆ p`.
#[derive(Clone, Debug)]
pub struct SymmetricPair {
    pub algebra: Arc<LieSuperalgebra>,
    pub theta: Involution,
    pub k_basis: Vec<SuperVector>,
    pub p_basis: Vec<SuperVector>,
    pub a_basis: Vec<SuperVector>,
}

fn eigenbasis(algebra: &LieSuperalgebra, theta: &Involution, eigen: i64) -> Vec<SuperVector> {
    let dim = algebra.dim();
    let shifted = theta
        .action()
        .sub(&Matrix::identity(dim).scale(&Scalar::from_int(eigen)));
    // split by parity so that every basis vector is homogeneous
    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let idx: Vec<usize> = (0..dim).filter(|&i| algebra.parity(i) == parity).collect();
        if idx.is_empty() {
            continue;
        }
        let mut block = Matrix::zeros(dim, idx.len());
        for (c, &j) in idx.iter().enumerate() {
            for i in 0..dim {
                block[(i, c)] = shifted[(i, j)].clone();
            }
        }
        for kv in block.kernel() {
            out.push(SuperVector::from_terms(
                idx.iter().zip(kv).map(|(&i, c)| (i, c)),
            ));
        }
    }
    out
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn coordinates_in(
    dim: usize,
    basis: &[SuperVector],
    v: &SuperVector,
) -> Result<Option<Vec<Scalar>>> {
    let span: Vec<Vec<Scalar>> = basis.iter().map(|b| b.to_dense(dim)).collect();
    solve_membership(&v.to_dense(dim), &span)
}

/// Splits `g` into the ±1 eigenspaces of θ and validates the pair axioms.
pub fn split_pair(
    algebra: Arc<LieSuperalgebra>,
    theta: Involution,
    a_basis: Vec<SuperVector>,
) -> Result<SymmetricPair> {
    let dim = algebra.dim();
    let k_basis = eigenbasis(&algebra, &theta, 1);
    let p_basis = eigenbasis(&algebra, &theta, -1);
    if k_basis.len() + p_basis.len() != dim {
        return Err(Error::InvalidPair("eigenspaces of θ do not sum to g".into()));
    }
    let in_k = |v: &SuperVector| theta.apply(v) == *v;
    let in_p = |v: &SuperVector| theta.apply(v) == -v;
    for x in &k_basis {
        for y in &k_basis {
            if !in_k(&algebra.bracket(x, y)?) {
                return Err(Error::InvalidPair("[k, k] not contained in k".into()));
            }
        }
        for y in &p_basis {
            if !in_p(&algebra.bracket(x, y)?) {
                return Err(Error::InvalidPair("[k, p] not contained in p".into()));
            }
        }
    }
    for x in &p_basis {
        for y in &p_basis {
            if !in_k(&algebra.bracket(x, y)?) {
                return Err(Error::InvalidPair("[p, p] not contained in k".into()));
            }
        }
    }
    for a in &a_basis {
        if !in_p(a) {
            return Err(Error::InvalidPair(format!(
                "{} is not in p",
                algebra.format_vector(a)
            )));
        }
        if algebra.parity_of(a) != Some(Parity::Even) {
            return Err(Error::InvalidPair("a must be even".into()));
        }
        for b in &a_basis {
            if !algebra.bracket(a, b)?.is_zero() {
                return Err(Error::InvalidPair("a is not abelian".into()));
            }
        }
    }
    Ok(SymmetricPair {
        algebra,
        theta,
        k_basis,
        p_basis,
        a_basis,
    })
}

impl SymmetricPair {
    /// Role of each generator when the generator basis is adapted to
    /// `k ⊕ p`, i.e. every generator is a θ-eigenvector.
    pub fn generator_roles(&self) -> Option<Vec<Role>> {
        (0..self.algebra.dim())
            .map(|i| {
                let x = SuperVector::basis(i);
                let t = self.theta.apply(&x);
                if t == x {
                    Some(Role::K)
                } else if t == -&x {
                    Some(Role::P)
                } else {
                    None
                }
            })
            .collect()
    }

    /// `C_p(a) = {x ∈ p : [x, a] = 0 for all a ∈ a}` by an exact kernel
    /// computation in the coordinates of `p_basis`.
    pub fn centralizer_of_a(&self) -> Vec<SuperVector> {
        let dim = self.algebra.dim();
        let np = self.p_basis.len();
        if np == 0 {
            return Vec::new();
        }
        let mut rows = Vec::new();
        for a in &self.a_basis {
            let images: Vec<Vec<Scalar>> = self
                .p_basis
                .iter()
                .map(|x| self.algebra.bracket(x, a).unwrap().to_dense(dim))
                .collect();
            for i in 0..dim {
                rows.push(images.iter().map(|col| col[i].clone()).collect::<Vec<_>>());
            }
        }
        if rows.is_empty() {
            return self.p_basis.clone();
        }
        let m = Matrix::from_rows(rows).expect("rectangular");
        m.kernel()
            .into_iter()
            .map(|c| {
                let mut v = SuperVector::zero();
                for (x, coeff) in self.p_basis.iter().zip(&c) {
                    v.add_scaled(coeff, x);
                }
                v
            })
            .collect()
    }

    /// True iff `C_p(a) = a`.
    pub fn check_centralizer(&self) -> bool {
        let centralizer = self.centralizer_of_a();
        let dim = self.algebra.dim();
        let a_rank = crate::linalg::rank_of(
            &self.a_basis.iter().map(|a| a.to_dense(dim)).collect::<Vec<_>>(),
        );
        if centralizer.len() != a_rank {
            return false;
        }
        // a ⊆ C_p(a) holds by abelianness; equal dimensions finish the check
        self.a_basis.iter().all(|a| {
            coordinates_in(dim, &centralizer, a)
                .map(|c| c.is_some())
                .unwrap_or(false)
        })
    }
}

/// Root space decomposition of `g` with respect to a commuting family `h`.
#[derive(Clone, Debug)]
pub struct RootDecomposition {
    pub h_basis: Vec<SuperVector>,
    /// Joint kernel of `ad_h`, i.e. the centralizer of `h`.
    pub zero_space: Vec<SuperVector>,
    /// Nonzero roots as coordinate vectors `(α(h_1), ..., α(h_r))`.
    pub roots: BTreeMap<Vec<Scalar>, Vec<SuperVector>>,
}

impl RootDecomposition {
    pub fn root_of(&self, x: &SuperVector) -> Option<&Vec<Scalar>> {
        self.roots.iter().find_map(|(root, space)| {
            let dim = space
                .iter()
                .chain(std::iter::once(x))
                .filter_map(SuperVector::max_index)
                .max()
                .map_or(0, |m| m + 1);
            match coordinates_in(dim, space, x) {
                Ok(Some(_)) => Some(root),
                _ => None,
            }
        })
    }
}

/// Simultaneous eigenspace decomposition of `{ad_h}` over the rationals.
pub fn root_decomposition(
    algebra: &LieSuperalgebra,
    h_basis: &[SuperVector],
) -> Result<RootDecomposition> {
    let dim = algebra.dim();
    for h in h_basis {
        if algebra.parity_of(h) != Some(Parity::Even) {
            return Err(Error::NotDiagonalizable("h must be even".into()));
        }
        for h2 in h_basis {
            if !algebra.bracket(h, h2)?.is_zero() {
                return Err(Error::NotDiagonalizable("h is not abelian".into()));
            }
        }
    }
    let mut spaces: Vec<(Vec<Scalar>, Vec<SuperVector>)> =
        vec![(Vec::new(), (0..dim).map(SuperVector::basis).collect())];
    for h in h_basis {
        let mut refined = Vec::new();
        for (weights, basis) in spaces {
            let n = basis.len();
            let mut restricted = Matrix::zeros(n, n);
            for (j, b) in basis.iter().enumerate() {
                let image = algebra.bracket(h, b)?;
                let coords = coordinates_in(dim, &basis, &image)?.ok_or_else(|| {
                    Error::NotDiagonalizable("ad_h does not preserve a joint eigenspace".into())
                })?;
                for (i, c) in coords.into_iter().enumerate() {
                    restricted[(i, j)] = c;
                }
            }
            let roots = rational_roots(&restricted.char_poly())?;
            let mut found = 0;
            for (lambda, _) in roots {
                let shifted = restricted.sub(&Matrix::identity(n).scale(&lambda));
                let kernel = shifted.kernel();
                found += kernel.len();
                let vectors = kernel
                    .into_iter()
                    .map(|c| {
                        let mut v = SuperVector::zero();
                        for (b, coeff) in basis.iter().zip(&c) {
                            v.add_scaled(coeff, b);
                        }
                        v
                    })
                    .collect();
                let mut w = weights.clone();
                w.push(lambda);
                refined.push((w, vectors));
            }
            if found != n {
                return Err(Error::NotDiagonalizable(format!(
                    "ad_{} is not diagonalizable",
                    algebra.format_vector(h)
                )));
            }
        }
        spaces = refined;
    }
    let mut zero_space = Vec::new();
    let mut roots = BTreeMap::new();
    for (weights, vectors) in spaces {
        if weights.iter().all(Scalar::is_zero) {
            zero_space.extend(vectors);
        } else {
            roots.insert(weights, vectors);
        }
    }
    Ok(RootDecomposition {
        h_basis: h_basis.to_vec(),
        zero_space,
        roots,
    })
}

/// Rational roots (with multiplicity) of a polynomial given by ascending
/// coefficients. Errors if some root is not rational.
fn rational_roots(poly: &[Scalar]) -> Result<Vec<(Scalar, usize)>> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, ToPrimitive};

    let mut p: Vec<Scalar> = poly.to_vec();
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    let degree = p.len().saturating_sub(1);
    let mut roots: Vec<(Scalar, usize)> = Vec::new();
    let push = |roots: &mut Vec<(Scalar, usize)>, r: Scalar| {
        if let Some(e) = roots.iter_mut().find(|(x, _)| *x == r) {
            e.1 += 1;
        } else {
            roots.push((r, 1));
        }
    };
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        push(&mut roots, Scalar::zero());
    }
    let divisors = |n: &BigInt| -> Result<Vec<u64>> {
        let n = n
            .abs()
            .to_u64()
            .ok_or_else(|| Error::NotDiagonalizable("eigenvalue search too large".into()))?;
        let mut out = Vec::new();
        let mut d = 1u64;
        while d * d <= n {
            if n % d == 0 {
                out.push(d);
                out.push(n / d);
            }
            d += 1;
        }
        Ok(out)
    };
    loop {
        if p.len() <= 1 {
            break;
        }
        let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let mut found = None;
        'search: for num in divisors(&ints[0])? {
            for den in divisors(ints.last().unwrap())? {
                for sign in [1i64, -1] {
                    let r = Scalar::from_ratio(BigInt::from(num) * sign, BigInt::from(den))?;
                    let value = p.iter().rev().fold(Scalar::zero(), |acc, c| &acc * &r + c);
                    if value.is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        let Some(r) = found else { break };
        // synthetic division by (x - r)
        let mut q = vec![Scalar::zero(); p.len() - 1];
        let mut carry = Scalar::zero();
        for i in (1..p.len()).rev() {
            carry = &p[i] + &(&carry * &r);
            q[i - 1] = carry.clone();
        }
        p = q;
        push(&mut roots, r);
    }
    let total: usize = roots.iter().map(|(_, m)| m).sum();
    if total != degree {
        return Err(Error::NotDiagonalizable("eigenvalues are not all rational".into()));
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn gl12_dimension_and_jacobi() {
        let g = gl_superalgebra(1, 2).unwrap();
        assert_eq!(g.dim(), 9);
        assert!(g.check_jacobi().passed());
        let g = gl_superalgebra(2, 2).unwrap();
        assert!(g.check_jacobi().passed());
    }

    #[test]
    fn odd_matrix_units_anticommute() {
        // [E_{1,1b}, E_{1b,1}] = E_{1,1} + E_{1b,1b}
        let g = gl_superalgebra(1, 2).unwrap();
        let x = g.generator("E1_1b").unwrap();
        let y = g.generator("E1b_1").unwrap();
        let expected = &g.generator("E1_1").unwrap() + &g.generator("E1b_1b").unwrap();
        assert_eq!(g.bracket(&x, &y).unwrap(), expected);
    }

    #[test]
    fn structure_constants_match_supercommutators() {
        for (m, n) in [(1, 0), (0, 2), (1, 1), (2, 1), (1, 2), (2, 2), (1, 3), (3, 1)] {
            let g = gl_superalgebra(m, n).unwrap();
            let units = gl_matrix_units(m, n);
            for i in 0..g.dim() {
                for j in 0..g.dim() {
                    let c = units.matrices()[i]
                        .supercommutator(&units.matrices()[j])
                        .unwrap();
                    let v = units.coordinates(&c).unwrap().unwrap();
                    assert_eq!(&v, g.bracket_basis(i, j), "gl({m}|{n}) {i} {j}");
                }
            }
        }
    }

    #[test]
    fn perturbed_algebra_fails_jacobi() {
        let g = gl_superalgebra(1, 1).unwrap();
        // shift [E1_1, E1_1b] by +1 * E1_1b keeps grading but breaks Jacobi
        let x = g.generator_index("E1_1").unwrap();
        let y = g.generator_index("E1_1b").unwrap();
        let bad = g.perturbed(x, y, y, s(1)).unwrap();
        let report = bad.check_jacobi();
        assert!(!report.passed());
        assert!(!report.failures.is_empty());
    }

    #[test]
    fn rejects_bad_definitions() {
        let gens = vec![("x".to_string(), Parity::Even), ("y".to_string(), Parity::Odd)];
        let mut b = BTreeMap::new();
        b.insert((0, 1), SuperVector::basis(0));
        assert!(LieSuperalgebra::new("bad", gens.clone(), b).is_err());
        let mut b = BTreeMap::new();
        b.insert((0, 0), SuperVector::basis(0));
        assert!(LieSuperalgebra::new("bad", gens, b).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = gl_superalgebra(1, 1).unwrap();
        let text = serde_json::to_string(&g.to_definition()).unwrap();
        let back = LieSuperalgebra::from_json(&text).unwrap();
        assert_eq!(back, g);
        assert!(LieSuperalgebra::from_json("{\"name\":1}").is_err());
    }

    #[test]
    fn odd_abelian_toy_pair() {
        let gens = vec![("u".to_string(), Parity::Odd), ("v".to_string(), Parity::Odd)];
        let g = Arc::new(LieSuperalgebra::new("toy", gens, BTreeMap::new()).unwrap());
        let theta = Involution::new(&g, Matrix::identity(2).scale(&s(-1))).unwrap();
        let pair = split_pair(g, theta, vec![]).unwrap();
        assert!(pair.k_basis.is_empty());
        assert_eq!(pair.p_basis.len(), 2);
    }

    #[test]
    fn identity_involution_pair() {
        let g = Arc::new(gl_superalgebra(1, 1).unwrap());
        let theta = Involution::new(&g, Matrix::identity(4)).unwrap();
        let pair = split_pair(g, theta, vec![]).unwrap();
        assert!(pair.p_basis.is_empty());
        // p = 0 so C_p(0) = 0 = a
        assert!(pair.check_centralizer());
    }

    #[test]
    fn involution_validation() {
        let g = gl_superalgebra(1, 1).unwrap();
        assert!(Involution::new(&g, Matrix::identity(4).scale(&s(2))).is_err());
        // x -> -x is not an automorphism of a nonabelian algebra
        assert!(Involution::new(&g, Matrix::identity(4).scale(&s(-1))).is_err());
    }

    #[test]
    fn roots_of_gl() {
        let g = gl_superalgebra(1, 2).unwrap();
        let h: Vec<SuperVector> = (0..3).map(|i| SuperVector::basis(i * 3 + i)).collect();
        let rd = root_decomposition(&g, &h).unwrap();
        assert_eq!(rd.roots.len(), 6);
        assert!(rd.roots.values().all(|v| v.len() == 1));
        assert_eq!(rd.zero_space.len(), 3);

        let g = gl_superalgebra(2, 2).unwrap();
        let h: Vec<SuperVector> = (0..4).map(|i| SuperVector::basis(i * 4 + i)).collect();
        let rd = root_decomposition(&g, &h).unwrap();
        assert_eq!(rd.roots.len(), 12);
    }

    #[test]
    fn abelian_has_no_roots() {
        let gens = vec![("x".to_string(), Parity::Even), ("y".to_string(), Parity::Even)];
        let g = LieSuperalgebra::new("ab", gens, BTreeMap::new()).unwrap();
        let h = vec![SuperVector::basis(0), SuperVector::basis(1)];
        let rd = root_decomposition(&g, &h).unwrap();
        assert!(rd.roots.is_empty());
        assert_eq!(rd.zero_space.len(), 2);
    }

    #[test]
    fn non_diagonalizable_is_rejected() {
        // ad_{E1_2} on gl(2|0) is nilpotent and nonzero
        let g = gl_superalgebra(2, 0).unwrap();
        let h = vec![g.generator("E1_2").unwrap()];
        assert!(matches!(
            root_decomposition(&g, &h),
            Err(Error::NotDiagonalizable(_))
        ));
    }

    #[test]
    fn rational_root_finder() {
        // (x - 1/2)^2 (x + 3) = x^3 + 2x^2 - 11/4 x + 3/4
        let p = vec![Scalar::new(3, 4), Scalar::new(-11, 4), s(2), s(1)];
        let mut r = rational_roots(&p).unwrap();
        r.sort();
        assert_eq!(r, vec![(s(-3), 1), (Scalar::new(1, 2), 2)]);
        // x^2 - 2 has no rational roots
        assert!(rational_roots(&[s(-2), s(0), s(1)]).is_err());
    }
}
