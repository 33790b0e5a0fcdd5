//! Finitely presented graded-commutative algebras `A = Λ(V)/I`.
//!
//! Everything is computed one degree at a time: `I_n` is spanned by the
//! products `g·r` of each relation `r` with every monomial `g` of the
//! complementary degree, and `A_n` is the cokernel of that span inside
//! `Λ(V)_n`. No Gröbner bases are involved.
//!
//! Representatives of `A_n` are the standard monomials that come earliest in
//! graded-lex order. To get that, the ideal is row-reduced with columns in
//! reverse graded-lex order, so pivots land on the latest monomials.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graded::{parse_poly, DegreeIndex, FreeGCA, Generator, Polynomial, RingError};
use crate::linalg::{self, Echelon, MatrixQ, Rational, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("relation {index} (`{relation}`) is not homogeneous")]
    InhomogeneousRelation { index: usize, relation: String },
    #[error("relation {index} (`{relation}`) has degree {degree}; relations must have degree at least 2")]
    RelationDegreeTooLow {
        index: usize,
        relation: String,
        degree: u32,
    },
    #[error("declared formal dimension {declared} is wrong: {reason}")]
    FormalDimensionMismatch { declared: u32, reason: String },
    #[error("element `{0}` is not homogeneous")]
    Inhomogeneous(String),
    #[error("not a Poincaré duality algebra: dim A_{degree} = {dim}, expected 1")]
    NotPoincare { degree: u32, dim: usize },
    #[error("inconclusive: A_k does not vanish near degree {max_degree}; retry with a larger window")]
    Inconclusive { max_degree: u32 },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("class `{0}` is not primitive")]
    NotPrimitive(String),
    #[error("hard Lefschetz fails for `{0}`")]
    NotLefschetz(String),
    #[error("the algebra is not simply connected (dim A_1 = {0})")]
    NotSimplyConnected(usize),
}

/// Basis of `A_n`: representative monomials plus the reduction data that
/// expresses any degree-`n` polynomial in them.
#[derive(Debug, Clone)]
pub struct DegreeBasis {
    alg: Arc<FreeGCA>,
    degree: u32,
    monomials: DegreeIndex,
    /// Row-reduced span of `I_n`, columns in reverse graded-lex order.
    ideal: Echelon,
    rep_index: Vec<usize>,
    rep_position: HashMap<usize, usize>,
    representatives: Vec<Polynomial>,
}

impl DegreeBasis {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Polynomial] {
        &self.representatives
    }

    /// Dimension of `I_n`.
    pub fn ideal_dim(&self) -> usize {
        self.ideal.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    fn reversed(&self, v: &SparseVec) -> SparseVec {
        let n = self.monomials.len();
        let mut out: SparseVec = v.iter().map(|(i, c)| (n - 1 - i, c.clone())).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// Coordinates of the class of `f` (which must lie in this degree).
    pub fn coords_sparse(&self, f: &Polynomial) -> SparseVec {
        if f.is_zero() {
            return Vec::new();
        }
        let n = self.monomials.len();
        let reduced = self.ideal.reduce(&self.reversed(&self.monomials.coords(f)));
        let mut out: SparseVec = reduced
            .into_iter()
            .map(|(j, c)| (self.rep_position[&(n - 1 - j)], c))
            .collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    pub fn coords(&self, f: &Polynomial) -> Vec<Rational> {
        linalg::sparse_to_dense(&self.coords_sparse(f), self.dim())
    }

    /// Polynomial representative of the class with the given coordinates.
    pub fn element(&self, coords: &[(usize, Rational)]) -> Polynomial {
        let mut out = self.alg.zero();
        for (i, c) in coords {
            out = &out + &self.representatives[*i].scale(c);
        }
        out
    }

    /// Ambient monomial indices (graded-lex) of the representatives.
    pub fn representative_monomials(&self) -> &[usize] {
        &self.rep_index
    }
}

/// `Λ(V)/I` with an optional (verified) formal dimension.
pub struct Presentation {
    ambient: Arc<FreeGCA>,
    relations: Vec<Polynomial>,
    formal_dimension: Option<u32>,
    memo: Mutex<HashMap<u32, Arc<DegreeBasis>>>,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            ambient: Arc::clone(&self.ambient),
            relations: self.relations.clone(),
            formal_dimension: self.formal_dimension,
            memo: Mutex::new(self.memo.lock().expect("memo poisoned").clone()),
        }
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relations.iter().map(ToString::to_string).collect();
        write!(f, "{} / ({})", self.ambient, rels.join(", "))
    }
}

impl Presentation {
    pub fn new(
        ambient: Arc<FreeGCA>,
        relations: Vec<Polynomial>,
        formal_dimension: Option<u32>,
    ) -> Result<Self, AlgebraError> {
        let mut rels = Vec::with_capacity(relations.len());
        for (index, r) in relations.into_iter().enumerate() {
            if !r.same_algebra(&ambient.zero()) {
                return Err(RingError::MixedAlgebras.into());
            }
            if r.is_zero() {
                continue;
            }
            let degree = r
                .homogeneous_degree()
                .ok_or_else(|| AlgebraError::InhomogeneousRelation {
                    index,
                    relation: r.to_string(),
                })?;
            if degree < 2 {
                return Err(AlgebraError::RelationDegreeTooLow {
                    index,
                    relation: r.to_string(),
                    degree,
                });
            }
            rels.push(r);
        }
        let p = Presentation {
            ambient,
            relations: rels,
            formal_dimension: None,
            memo: Mutex::new(HashMap::new()),
        };
        if let Some(m) = formal_dimension {
            p.verify_formal_dimension(m)?;
        }
        Ok(Presentation {
            formal_dimension,
            ..p
        })
    }

    /// Parses generators and relation strings in one go.
    pub fn parse(
        gens: &[(&str, u32)],
        relations: &[&str],
        formal_dimension: Option<u32>,
    ) -> Result<Self, AlgebraError> {
        let ambient = FreeGCA::new(gens.iter().map(|(n, d)| Generator::new(*n, *d)).collect())?;
        let rels = relations
            .iter()
            .map(|s| parse_poly(s, &ambient).map_err(RingError::from))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ambient, rels, formal_dimension)
    }

    pub fn ambient(&self) -> &Arc<FreeGCA> {
        &self.ambient
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn formal_dimension(&self) -> Option<u32> {
        self.formal_dimension
    }

    /// Length of a vanishing window that proves `A_k = 0` for all larger `k`.
    ///
    /// Every monomial of higher degree has a divisor whose degree falls in
    /// such a window, since dropping one generator lowers the degree by at
    /// most the largest generator degree.
    pub fn vanishing_window(&self) -> u32 {
        self.ambient.gens().iter().map(|g| g.degree).max().unwrap_or(1)
    }

    fn max_relation_degree(&self) -> u32 {
        self.relations
            .iter()
            .filter_map(Polynomial::homogeneous_degree)
            .max()
            .unwrap_or(0)
    }

    /// `true` when `A_k = 0` for every `k >= from`.
    pub fn vanishes_from(&self, from: u32) -> bool {
        if self.ambient.is_empty() {
            return from > 0;
        }
        (from..from + self.vanishing_window()).all(|k| self.dim(k) == 0)
    }

    fn verify_formal_dimension(&self, m: u32) -> Result<(), AlgebraError> {
        if self.dim(m) == 0 {
            return Err(AlgebraError::FormalDimensionMismatch {
                declared: m,
                reason: format!("A_{} = 0", m),
            });
        }
        let window = self.vanishing_window().max(self.max_relation_degree());
        if let Some(k) = (m + 1..=m + window).find(|&k| self.dim(k) != 0) {
            return Err(AlgebraError::FormalDimensionMismatch {
                declared: m,
                reason: format!("A_{} has dimension {}", k, self.dim(k)),
            });
        }
        Ok(())
    }

    /// Top nonzero degree, searched up to `limit`, if the algebra is finite
    /// dimensional there.
    pub fn infer_formal_dimension(&self, limit: u32) -> Option<u32> {
        if let Some(m) = self.formal_dimension {
            return Some(m);
        }
        let w = self.vanishing_window();
        let mut top = 0;
        let mut run = 0;
        for k in 1..=limit {
            if self.dim(k) == 0 {
                run += 1;
                if run >= w {
                    return Some(top);
                }
            } else {
                top = k;
                run = 0;
            }
        }
        None
    }

    /// Copy of this presentation with `m` verified and recorded as the formal
    /// dimension.
    pub fn with_formal_dimension(&self, m: u32) -> Result<Self, AlgebraError> {
        self.verify_formal_dimension(m)?;
        let mut p = self.clone();
        p.formal_dimension = Some(m);
        Ok(p)
    }

    pub fn is_simply_connected(&self) -> bool {
        self.dim(1) == 0
    }

    pub fn degree_basis(&self, n: u32) -> Arc<DegreeBasis> {
        if let Some(b) = self.memo.lock().expect("memo poisoned").get(&n) {
            return Arc::clone(b);
        }
        let basis = Arc::new(self.compute_degree_basis(n));
        self.memo
            .lock()
            .expect("memo poisoned")
            .entry(n)
            .or_insert(basis)
            .clone()
    }

    fn compute_degree_basis(&self, n: u32) -> DegreeBasis {
        let monomials = self.ambient.degree_index(n);
        let len = monomials.len();
        let mut ideal = Echelon::new(len);
        for r in &self.relations {
            let d = r.homogeneous_degree().expect("relations are homogeneous");
            if d > n {
                continue;
            }
            for g in self.ambient.monomial_basis(n - d) {
                let mut row: SparseVec = Vec::with_capacity(r.num_terms());
                for (m, c) in r.terms() {
                    if let Some((neg, prod)) = self.ambient.mul_monomials(&g, m) {
                        let j = monomials.position(&prod).expect("degree-n monomial");
                        row.push((len - 1 - j, if neg { -c } else { c.clone() }));
                    }
                }
                row.sort_by_key(|(j, _)| *j);
                ideal.insert(&row);
                if ideal.rank() == len {
                    break;
                }
            }
        }
        let rep_index: Vec<usize> = (0..len).filter(|&j| !ideal.is_pivot(len - 1 - j)).collect();
        let rep_position = rep_index.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let representatives = rep_index
            .iter()
            .map(|&j| Polynomial::from_monomial(&self.ambient, monomials.basis()[j].clone(), Rational::one()))
            .collect();
        DegreeBasis {
            alg: Arc::clone(&self.ambient),
            degree: n,
            monomials,
            ideal,
            rep_index,
            rep_position,
            representatives,
        }
    }

    pub fn dim(&self, n: u32) -> usize {
        self.degree_basis(n).dim()
    }

    /// `dim A_k` for `k = 0..=max_degree`.
    pub fn hilbert_series(&self, max_degree: u32) -> Vec<usize> {
        (0..=max_degree).map(|k| self.dim(k)).collect()
    }

    /// Coordinates of the class of a homogeneous `f`; zero iff `f ∈ I`.
    pub fn reduce(&self, f: &Polynomial) -> Result<Vec<Rational>, AlgebraError> {
        if !f.same_algebra(&self.ambient.zero()) {
            return Err(RingError::MixedAlgebras.into());
        }
        if f.is_zero() {
            return Ok(Vec::new());
        }
        let n = f
            .homogeneous_degree()
            .ok_or_else(|| AlgebraError::Inhomogeneous(f.to_string()))?;
        Ok(self.degree_basis(n).coords(f))
    }

    /// Coordinates of `f` in `A_n`; the zero polynomial is accepted in any
    /// degree.
    pub fn reduce_in_degree(&self, f: &Polynomial, n: u32) -> Result<Vec<Rational>, AlgebraError> {
        if !f.is_zero() && f.homogeneous_degree() != Some(n) {
            return Err(AlgebraError::DegreeMismatch(format!("`{}` is not of degree {}", f, n)));
        }
        if !f.same_algebra(&self.ambient.zero()) {
            return Err(RingError::MixedAlgebras.into());
        }
        Ok(self.degree_basis(n).coords(f))
    }

    /// `true` when the homogeneous `f` lies in the ideal.
    pub fn in_ideal(&self, f: &Polynomial) -> Result<bool, AlgebraError> {
        Ok(self.reduce(f)?.iter().all(Zero::is_zero))
    }

    /// Reduced representative of the class of a homogeneous `f`.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, AlgebraError> {
        if f.is_zero() {
            return Ok(self.ambient.zero());
        }
        let n = f
            .homogeneous_degree()
            .ok_or_else(|| AlgebraError::Inhomogeneous(f.to_string()))?;
        let b = self.degree_basis(n);
        Ok(b.element(&b.coords_sparse(f)))
    }

    fn class(&self, n: u32, coords: &[(usize, Rational)]) -> Polynomial {
        self.degree_basis(n).element(coords)
    }

    /// Matrix of `a ↦ f·a` from `A_source` to `A_{source + |f|}`; rows index
    /// the target basis.
    fn multiplication_matrix(&self, f: &Polynomial, f_degree: u32, source: u32) -> MatrixQ {
        let src = self.degree_basis(source);
        let tgt = self.degree_basis(source + f_degree);
        let cols: Vec<SparseVec> = src
            .representatives()
            .iter()
            .map(|r| tgt.coords_sparse(&(f * r)))
            .collect();
        let mut m = MatrixQ::zeros(tgt.dim(), src.dim());
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col {
                m.set(*i, j, c.clone()).expect("in bounds");
            }
        }
        m
    }

    /// Largest `q` with a nonzero product of `q` positive-degree classes.
    ///
    /// `A_k` must vanish on the top window below `max_degree` so that no
    /// products are missed.
    pub fn cup_length(&self, max_degree: u32) -> Result<usize, AlgebraError> {
        let w = self.vanishing_window();
        let from = max_degree.saturating_sub(w) + 1;
        if !(from..=max_degree).all(|k| self.dim(k) == 0) {
            return Err(AlgebraError::Inconclusive { max_degree });
        }
        // spans[k] = (A^+)^q in degree k, as coordinates
        let mut spans: Vec<Vec<SparseVec>> = (0..=max_degree)
            .map(|k| {
                if k == 0 {
                    Vec::new()
                } else {
                    (0..self.dim(k)).map(|i| vec![(i, Rational::one())]).collect()
                }
            })
            .collect();
        let mut q = 0;
        while spans.iter().any(|s| !s.is_empty()) {
            q += 1;
            let mut next: Vec<Echelon> = (0..=max_degree)
                .map(|k| Echelon::new(self.dim(k)))
                .collect();
            for i in 1..=max_degree {
                for v in &spans[i as usize] {
                    let a = self.class(i, v);
                    for j in 1..=max_degree - i {
                        for b in self.degree_basis(j).representatives() {
                            let prod = &a * b;
                            let c = self.degree_basis(i + j).coords_sparse(&prod);
                            next[(i + j) as usize].insert(&c);
                        }
                    }
                }
            }
            spans = next
                .into_iter()
                .map(|e| e.sorted_rows().into_iter().cloned().collect())
                .collect();
        }
        Ok(q)
    }

    /// Checks that `A_k ⊗ A_{m-k} → A_m ≅ ℚ` is nondegenerate for every `k`.
    pub fn check_poincare_duality(&self, m: u32) -> Result<PoincareReport, AlgebraError> {
        let top = self.degree_basis(m);
        if top.dim() != 1 {
            return Err(AlgebraError::NotPoincare {
                degree: m,
                dim: top.dim(),
            });
        }
        let mut degrees = Vec::new();
        for k in 0..=m {
            let left = self.degree_basis(k);
            let right = self.degree_basis(m - k);
            let mut entries = Vec::with_capacity(left.dim() * right.dim());
            for a in left.representatives() {
                for b in right.representatives() {
                    entries.push(top.coords(&(a * b))[0].clone());
                }
            }
            let matrix = MatrixQ::from_dense(left.dim(), right.dim(), &entries).expect("shape");
            let rank = linalg::rank(&matrix);
            degrees.push(PairingDegree {
                k,
                dim_k: left.dim(),
                dim_complement: right.dim(),
                rank,
                nondegenerate: left.dim() == right.dim() && rank == left.dim(),
            });
        }
        let failing_degrees = degrees
            .iter()
            .filter(|d| !d.nondegenerate)
            .map(|d| d.k)
            .collect::<Vec<_>>();
        Ok(PoincareReport {
            formal_dimension: m,
            pass: failing_degrees.is_empty(),
            failing_degrees,
            degrees,
        })
    }

    fn check_class(&self, omega: &Polynomial, degree: u32, what: &str) -> Result<(), AlgebraError> {
        if !omega.same_algebra(&self.ambient.zero()) {
            return Err(RingError::MixedAlgebras.into());
        }
        match omega.homogeneous_degree() {
            Some(d) if d == degree => Ok(()),
            _ => Err(AlgebraError::DegreeMismatch(format!(
                "{} `{}` must be homogeneous of degree {}",
                what, omega, degree
            ))),
        }
    }

    fn check_top_degree(&self, n: u32) -> Result<(), AlgebraError> {
        match self.formal_dimension {
            Some(m) if m != 2 * n => Err(AlgebraError::DegreeMismatch(format!(
                "formal dimension {} is not 2n = {}",
                m,
                2 * n
            ))),
            _ => Ok(()),
        }
    }

    /// Whether multiplication by `omega^{n-k}` maps `A_k` isomorphically
    /// onto `A_{2n-k}` for every `k < n`.
    pub fn check_hard_lefschetz(&self, omega: &Polynomial, n: u32) -> Result<LefschetzReport, AlgebraError> {
        self.check_class(omega, 2, "Kähler class")?;
        self.check_top_degree(n)?;
        let mut degrees = Vec::new();
        for k in 0..n {
            let power = omega.pow(n - k);
            let m = self.multiplication_matrix(&power, 2 * (n - k), k);
            let rank = linalg::rank(&m);
            let (source_dim, target_dim) = (m.cols(), m.rows());
            degrees.push(LefschetzDegree {
                k,
                source_dim,
                target_dim,
                rank,
                isomorphism: source_dim == target_dim && rank == source_dim,
            });
        }
        Ok(LefschetzReport {
            omega: omega.to_string(),
            n,
            pass: degrees.iter().all(|d| d.isomorphism),
            degrees,
        })
    }

    /// Basis of `ker(omega^{n-1}· : A_2 → A_{2n})`.
    pub fn primitive_basis(&self, omega: &Polynomial, n: u32) -> Result<Vec<Polynomial>, AlgebraError> {
        let report = self.check_hard_lefschetz(omega, n)?;
        if !report.pass {
            return Err(AlgebraError::NotLefschetz(omega.to_string()));
        }
        let m = self.multiplication_matrix(&omega.pow(n - 1), 2 * (n - 1), 2);
        Ok(linalg::kernel_basis_sparse(&m)
            .iter()
            .map(|v| self.class(2, v))
            .collect())
    }

    /// Sign of `∫ omega^{n-2} y²` measured against `∫ omega^n > 0` for a
    /// primitive degree-2 class `y`.
    pub fn hodge_riemann_sign(&self, omega: &Polynomial, y: &Polynomial, n: u32) -> Result<HodgeRiemann, AlgebraError> {
        self.check_class(omega, 2, "Kähler class")?;
        self.check_class(y, 2, "primitive class")?;
        let top = self.degree_basis(2 * n);
        if top.dim() != 1 {
            return Err(AlgebraError::NotPoincare {
                degree: 2 * n,
                dim: top.dim(),
            });
        }
        if !top.coords_sparse(&(&omega.pow(n - 1) * y)).is_empty() {
            return Err(AlgebraError::NotPrimitive(y.to_string()));
        }
        let volume = top.coords(&omega.pow(n))[0].clone();
        if volume.is_zero() {
            return Err(AlgebraError::NotLefschetz(omega.to_string()));
        }
        let q = top.coords(&(&omega.pow(n - 2) * &(y * y)))[0].clone() / volume;
        Ok(HodgeRiemann {
            sign: Sign::of(&q),
            ratio: q,
        })
    }

    /// Rescales a primitive class `y` so that `omega^{n-2} y² = -omega^n`,
    /// when the required factor is rational.
    pub fn normalize_primitive(&self, omega: &Polynomial, y: &Polynomial, n: u32) -> Result<Option<Polynomial>, AlgebraError> {
        let hr = self.hodge_riemann_sign(omega, y, n)?;
        if hr.sign != Sign::Negative {
            return Ok(None);
        }
        // need λ² = -1/ratio
        let target = -hr.ratio.recip();
        let (num, den) = (target.numer().clone(), target.denom().clone());
        let (rn, rd) = (num.sqrt(), den.sqrt());
        if &rn * &rn != num || &rd * &rd != den {
            return Ok(None);
        }
        Ok(Some(y.scale(&Rational::new(rn, rd))))
    }

    /// `dim ker(S² A_2 → A_4)`, the decomposable part of degree-3 homotopy.
    pub fn symmetric_square_kernel_dim(&self) -> usize {
        let a2 = self.degree_basis(2);
        let a4 = self.degree_basis(4);
        let reps = a2.representatives();
        let mut pairs = 0;
        let mut image = Echelon::new(a4.dim());
        for i in 0..reps.len() {
            for j in i..reps.len() {
                pairs += 1;
                image.insert(&a4.coords_sparse(&(&reps[i] * &reps[j])));
            }
        }
        pairs - image.rank()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingDegree {
    pub k: u32,
    pub dim_k: usize,
    pub dim_complement: usize,
    pub rank: usize,
    pub nondegenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoincareReport {
    pub formal_dimension: u32,
    pub pass: bool,
    pub failing_degrees: Vec<u32>,
    pub degrees: Vec<PairingDegree>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LefschetzDegree {
    pub k: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub isomorphism: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LefschetzReport {
    pub omega: String,
    pub n: u32,
    pub pass: bool,
    pub degrees: Vec<LefschetzDegree>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: &Rational) -> Self {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeRiemann {
    /// `∫ omega^{n-2} y² / ∫ omega^n`.
    pub ratio: Rational,
    pub sign: Sign,
}

impl HodgeRiemann {
    /// Kähler classes make the pairing negative definite on primitive
    /// degree-2 classes.
    pub fn kahler_compatible(&self) -> bool {
        self.sign == Sign::Negative
    }
}
