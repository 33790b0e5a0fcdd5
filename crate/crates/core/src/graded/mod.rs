//! Free graded-commutative algebras `Λ(V) = S(V^even) ⊗ ∧(V^odd)` over ℚ.
//!
//! Monomials store one exponent per generator in declaration order. Odd
//! generators have exponent at most one and are always kept sorted in
//! declaration order; products move odd factors past each other and pick up
//! the Koszul sign on the way.

mod parse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{Rational, SparseVec};

pub use parse::{parse_poly, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("generator `{0}` has degree 0; generators must have positive degree")]
    ZeroDegree(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("operands belong to different algebras")]
    MixedAlgebras,
    #[error("{what} must be homogeneous of degree {expected}, found {found}")]
    Inhomogeneous {
        what: String,
        expected: u32,
        found: String,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A free graded-commutative algebra on an ordered list of generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeGCA {
    gens: Vec<Generator>,
}

impl FreeGCA {
    pub fn new(gens: Vec<Generator>) -> Result<Arc<Self>, RingError> {
        let mut seen = std::collections::HashSet::new();
        for g in &gens {
            if !valid_name(&g.name) {
                return Err(RingError::InvalidName(g.name.clone()));
            }
            if g.degree == 0 {
                return Err(RingError::ZeroDegree(g.name.clone()));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(RingError::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Arc::new(FreeGCA { gens }))
    }

    /// Convenience constructor from `(name, degree)` pairs.
    pub fn from_pairs(pairs: &[(&str, u32)]) -> Result<Arc<Self>, RingError> {
        Self::new(pairs.iter().map(|(n, d)| Generator::new(*n, *d)).collect())
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// `true` when `self`'s generators are an initial segment of `other`'s.
    pub fn is_prefix_of(&self, other: &FreeGCA) -> bool {
        other.gens.len() >= self.gens.len() && other.gens[..self.gens.len()] == self.gens[..]
    }

    /// All monomials of total degree `n`, in graded-lex order: higher powers
    /// of earlier generators come first.
    pub fn monomial_basis(&self, n: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.gens.len()];
        self.enumerate(0, n, &mut exps, &mut out, n);
        out
    }

    fn enumerate(&self, i: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>, total: u32) {
        if i == self.gens.len() {
            if remaining == 0 {
                out.push(Monomial {
                    exps: exps.clone(),
                    degree: total,
                });
            }
            return;
        }
        let g = &self.gens[i];
        let max = if g.is_odd() {
            (remaining / g.degree).min(1)
        } else {
            remaining / g.degree
        };
        for e in (0..=max).rev() {
            exps[i] = e;
            self.enumerate(i + 1, remaining - e * g.degree, exps, out, total);
        }
        exps[i] = 0;
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial {
            exps: vec![0; self.gens.len()],
            degree: 0,
        }
    }

    pub fn generator_monomial(&self, i: usize) -> Monomial {
        let mut exps = vec![0; self.gens.len()];
        exps[i] = 1;
        Monomial {
            exps,
            degree: self.gens[i].degree,
        }
    }

    /// Builds a monomial from exponents, returning `None` if an odd
    /// generator is raised to a power above one.
    pub fn monomial(&self, exps: Vec<u32>) -> Option<Monomial> {
        assert_eq!(exps.len(), self.gens.len());
        if exps.iter().zip(&self.gens).any(|(e, g)| g.is_odd() && *e > 1) {
            return None;
        }
        let degree = exps.iter().zip(&self.gens).map(|(e, g)| e * g.degree).sum();
        Some(Monomial { exps, degree })
    }

    /// Product of two monomials with its Koszul sign, or `None` if an odd
    /// generator would appear twice.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let odd = |m: &Monomial, i: usize| self.gens[i].is_odd() && m.exps[i] == 1;
        let mut odd_a_remaining = (0..self.gens.len()).filter(|&i| odd(a, i)).count();
        let mut negative = false;
        for i in 0..self.gens.len() {
            if odd(a, i) {
                if odd(b, i) {
                    return None;
                }
                odd_a_remaining -= 1;
            }
            // b's factor moves left past the odd factors of a with larger index
            if odd(b, i) && odd_a_remaining % 2 == 1 {
                negative = !negative;
            }
        }
        let exps = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
        Some((
            negative,
            Monomial {
                exps,
                degree: a.degree + b.degree,
            },
        ))
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial {
            alg: Arc::clone(self),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        self.constant(Rational::one())
    }

    pub fn constant(self: &Arc<Self>, c: Rational) -> Polynomial {
        let mut p = self.zero();
        if !c.is_zero() {
            p.terms.insert(self.unit_monomial(), c);
        }
        p
    }

    pub fn gen(self: &Arc<Self>, i: usize) -> Polynomial {
        Polynomial::from_monomial(self, self.generator_monomial(i), Rational::one())
    }

    pub fn gen_by_name(self: &Arc<Self>, name: &str) -> Option<Polynomial> {
        self.index_of(name).map(|i| self.gen(i))
    }

    /// Basis of the degree-`n` component together with a lookup table.
    pub fn degree_index(&self, n: u32) -> DegreeIndex {
        DegreeIndex::new(self.monomial_basis(n))
    }
}

impl fmt::Display for FreeGCA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .gens
            .iter()
            .map(|g| format!("{}:{}", g.name, g.degree))
            .collect();
        write!(f, "Λ({})", parts.join(", "))
    }
}

/// A monomial of a [`FreeGCA`]; ordered by degree, then graded-lex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|e| *e == 0)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.exps.iter().sum()
    }

    fn padded(&self, len: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.resize(len, 0);
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    pub fn display(&self, alg: &FreeGCA) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .zip(alg.gens())
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| {
                if *e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomial basis of one degree with reverse lookup.
#[derive(Debug, Clone)]
pub struct DegreeIndex {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeIndex {
    pub fn new(basis: Vec<Monomial>) -> Self {
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        DegreeIndex { basis, index }
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `p`; every term of `p` must belong to this degree.
    pub fn coords(&self, p: &Polynomial) -> SparseVec {
        let mut v: SparseVec = p
            .terms
            .iter()
            .map(|(m, c)| {
                let i = self
                    .position(m)
                    .unwrap_or_else(|| panic!("monomial of degree {} outside basis", m.degree));
                (i, c.clone())
            })
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn poly(&self, alg: &Arc<FreeGCA>, v: &[(usize, Rational)]) -> Polynomial {
        let mut p = alg.zero();
        for (i, c) in v {
            if !c.is_zero() {
                p.terms.insert(self.basis[*i].clone(), c.clone());
            }
        }
        p
    }
}

/// An element of a [`FreeGCA`] with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    alg: Arc<FreeGCA>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn from_monomial(alg: &Arc<FreeGCA>, m: Monomial, c: Rational) -> Self {
        let mut p = alg.zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn algebra(&self) -> &Arc<FreeGCA> {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The common degree of all terms; `None` for the zero polynomial or a
    /// mixed-degree sum.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(Monomial::degree).collect();
        d.dedup();
        d
    }

    pub fn same_algebra(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return self.alg.zero();
        }
        Polynomial {
            alg: Arc::clone(&self.alg),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Graded-commutative product; fails if the operands live in different
    /// algebras.
    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        if !self.same_algebra(other) {
            return Err(RingError::MixedAlgebras);
        }
        let mut out = self.alg.zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = self.alg.mul_monomials(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        if !self.same_algebra(other) {
            return Err(RingError::MixedAlgebras);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = self.alg.one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Reinterprets `self` in a larger algebra whose generator list extends
    /// this one's.
    pub fn embed(&self, target: &Arc<FreeGCA>) -> Result<Polynomial, RingError> {
        if !self.alg.is_prefix_of(target) {
            return Err(RingError::MixedAlgebras);
        }
        Ok(Polynomial {
            alg: Arc::clone(target),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.padded(target.len()), c.clone()))
                .collect(),
        })
    }

    /// Applies the algebra morphism sending generator `i` to `images[i]`.
    /// Images must be homogeneous of the generator's degree parity for the
    /// result to be a morphism of graded-commutative algebras.
    pub fn map_hom(&self, images: &[Polynomial], target: &Arc<FreeGCA>) -> Polynomial {
        assert_eq!(images.len(), self.alg.len());
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let mut img = target.constant(c.clone());
            for (i, e) in m.exps.iter().enumerate() {
                for _ in 0..*e {
                    img = &img * &images[i];
                    if img.is_zero() {
                        break;
                    }
                }
                if img.is_zero() {
                    break;
                }
            }
            out = &out + &img;
        }
        out
    }

    /// `true` when every term only involves even generators.
    pub fn is_even_only(&self) -> bool {
        self.terms.keys().all(|m| {
            m.exps
                .iter()
                .zip(self.alg.gens())
                .all(|(e, g)| *e == 0 || !g.is_odd())
        })
    }

    /// `true` when every term has word length at least two.
    pub fn is_decomposable(&self) -> bool {
        self.terms.keys().all(|m| m.word_length() >= 2)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_unit() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(&self.alg))?;
            } else {
                write!(f, "{}*{}", abs, m.display(&self.alg))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("adding polynomials from different algebras")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            alg: Arc::clone(&self.alg),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.multiply(rhs)
            .expect("multiplying polynomials from different algebras")
    }
}

/// A graded derivation of degree +1, determined by its values on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    alg: Arc<FreeGCA>,
    images: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(alg: &Arc<FreeGCA>, images: Vec<Polynomial>) -> Result<Self, RingError> {
        if images.len() != alg.len() {
            return Err(RingError::MixedAlgebras);
        }
        for (g, img) in alg.gens().iter().zip(&images) {
            if !Arc::ptr_eq(img.algebra(), alg) && **img.algebra() != **alg {
                return Err(RingError::MixedAlgebras);
            }
            if !img.is_zero() && img.homogeneous_degree() != Some(g.degree + 1) {
                return Err(RingError::Inhomogeneous {
                    what: format!("d({})", g.name),
                    expected: g.degree + 1,
                    found: format!("{:?}", img.degrees()),
                });
            }
        }
        Ok(Derivation {
            alg: Arc::clone(alg),
            images,
        })
    }

    /// The zero derivation.
    pub fn zero(alg: &Arc<FreeGCA>) -> Self {
        Derivation {
            alg: Arc::clone(alg),
            images: vec![alg.zero(); alg.len()],
        }
    }

    pub fn algebra(&self) -> &Arc<FreeGCA> {
        &self.alg
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    /// Extends to all of `Λ(V)` by `d(ab) = d(a) b + (-1)^{|a|} a d(b)`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, RingError> {
        if !Arc::ptr_eq(p.algebra(), &self.alg) && **p.algebra() != *self.alg {
            return Err(RingError::MixedAlgebras);
        }
        let mut out = self.alg.zero();
        for (m, c) in p.terms() {
            let dm = self.apply_monomial(m);
            out = &out + &dm.scale(c);
        }
        Ok(out)
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Polynomial {
        let alg = &self.alg;
        let mut out = alg.zero();
        // prefix = g_0^{e_0} ... g_{i-1}^{e_{i-1}}
        let mut prefix_exps = vec![0u32; alg.len()];
        let mut prefix_deg = 0u32;
        for (i, &e) in m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !self.images[i].is_zero() {
                // d(g^e) = e g^{e-1} dg for even g; dg for odd g (e = 1)
                let mut factor = self.images[i].scale(&Rational::from_integer(e.into()));
                if e > 1 {
                    let mut rest = vec![0u32; alg.len()];
                    rest[i] = e - 1;
                    let rest = Polynomial::from_monomial(alg, alg.monomial(rest).unwrap(), Rational::one());
                    factor = &rest * &factor;
                }
                let mut suffix_exps = vec![0u32; alg.len()];
                suffix_exps[i + 1..].copy_from_slice(&m.exps[i + 1..]);
                let prefix = Polynomial::from_monomial(
                    alg,
                    alg.monomial(prefix_exps.clone()).unwrap(),
                    if prefix_deg % 2 == 1 {
                        -Rational::one()
                    } else {
                        Rational::one()
                    },
                );
                let suffix = Polynomial::from_monomial(alg, alg.monomial(suffix_exps).unwrap(), Rational::one());
                let term = &(&prefix * &factor) * &suffix;
                out = &out + &term;
            }
            prefix_exps[i] = e;
            prefix_deg += e * alg.gens()[i].degree;
        }
        out
    }

    /// `true` when `d(d(g)) = 0` for every generator `g`.
    pub fn squares_to_zero(&self) -> bool {
        self.images
            .iter()
            .all(|img| self.apply(img).map(|p| p.is_zero()).unwrap_or(false))
    }
}

/// Graded-commutative product of two polynomials.
pub fn multiply(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, RingError> {
    p.multiply(q)
}

/// Applies the derivation given by generator images to `p`.
pub fn apply_derivation(d: &Derivation, p: &Polynomial) -> Result<Polynomial, RingError> {
    d.apply(p)
}

#[cfg(test)]
mod tests;
