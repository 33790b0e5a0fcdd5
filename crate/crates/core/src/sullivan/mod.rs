//! Sullivan models of formal spaces.
//!
//! A formal space has the minimal model of its cohomology algebra `A` with
//! zero differential. [`ModelBuilder`] produces it one degree at a time:
//! stage `n` adds degree-`n` generators with `d = 0` that hit the cokernel
//! of `H^n(M) → A^n`, then degree-`n` generators whose differentials kill
//! the kernel of `H^{n+1}(M) → A^{n+1}`. The number of generators added at
//! stage `n` is `dim π_n ⊗ ℚ`.

mod dichotomy;
mod koszul;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graded::{DegreeIndex, Derivation, FreeGCA, Generator, Polynomial, RingError};
use crate::linalg::{self, Echelon, MatrixQ, Rational, SparseVec};
use crate::presentation::{AlgebraError, Presentation};

pub use dichotomy::{
    check_fh_bounds, classify_dichotomy, euler_characteristics, Certificate, DichotomyVerdict, EulerReport, FhAudit,
    FhItem, VerdictKind,
};
pub use koszul::{is_regular_sequence, koszul_homology, PureSullivanData, RegularityWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unsupported input: the algebra is not simply connected (dim A^1 = {0})")]
    NotSimplyConnected(usize),
    #[error("unsupported input: dim A^0 = {0}, expected 1")]
    NotConnected(usize),
    #[error("the model window must be at least 2, got {0}")]
    WindowTooSmall(u32),
    #[error("d(d({0})) != 0")]
    NotDifferential(String),
    #[error("the model is only computed through degree {computed_through}; degree {requested} needs more stages")]
    InsufficientStages { requested: u32, computed_through: u32 },
    #[error("the formal dimension is unknown; declare it or let it be inferred")]
    MissingFormalDimension,
    #[error("the homotopy table is only complete through degree {computed_through}; the audit needs {needed}")]
    IncompleteTable { computed_through: u32, needed: u32 },
    #[error("{0}")]
    Invalid(String),
}

/// Free graded-commutative algebra with a degree +1 differential.
#[derive(Debug, Clone)]
pub struct SullivanAlgebra {
    differential: Derivation,
    stage: Vec<u32>,
    computed_through: u32,
    complete: bool,
}

impl SullivanAlgebra {
    /// A fully specified Sullivan algebra; `d∘d = 0` is checked on
    /// generators.
    pub fn new(differential: Derivation) -> Result<Self, ModelError> {
        if let Some(i) = (0..differential.algebra().len()).find(|&i| {
            !differential
                .apply(differential.image(i))
                .map(|p| p.is_zero())
                .unwrap_or(false)
        }) {
            return Err(ModelError::NotDifferential(differential.algebra().gens()[i].name.clone()));
        }
        let stage = differential.algebra().gens().iter().map(|g| g.degree).collect();
        Ok(SullivanAlgebra {
            differential,
            stage,
            computed_through: u32::MAX,
            complete: true,
        })
    }

    pub fn algebra(&self) -> &Arc<FreeGCA> {
        self.differential.algebra()
    }

    pub fn differential(&self) -> &Derivation {
        &self.differential
    }

    pub fn generators(&self) -> &[Generator] {
        self.algebra().gens()
    }

    /// Stage (degree) at which each generator was introduced.
    pub fn generator_stage(&self) -> &[u32] {
        &self.stage
    }

    pub fn generator_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.generators().iter().map(|g| g.degree).collect();
        d.sort_unstable();
        d
    }

    /// Degree through which generators and cohomology are final.
    pub fn computed_through(&self) -> u32 {
        self.computed_through
    }

    /// `true` once no further generators can appear in any degree.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub(crate) fn mark_complete(&mut self) {
        self.complete = true;
    }

    /// Minimality: every `d(g)` lies in products of generators.
    pub fn is_minimal(&self) -> bool {
        self.differential.images().iter().all(Polynomial::is_decomposable)
    }

    /// `true` when `d∘d` vanishes on every generator.
    pub fn squares_to_zero(&self) -> bool {
        self.differential.squares_to_zero()
    }

    /// One line per generator, e.g. `x1 (7): d = y^4`.
    pub fn describe(&self) -> Vec<String> {
        self.generators()
            .iter()
            .zip(self.differential.images())
            .map(|(g, d)| format!("{} ({}): d = {}", g.name, g.degree, d))
            .collect()
    }
}

/// `dim π_n ⊗ ℚ` per degree, as far as it has been computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomotopyTable {
    dims: BTreeMap<u32, usize>,
    computed_through: u32,
    complete: bool,
}

impl HomotopyTable {
    /// Table with the given generator degrees, known through `through`.
    pub fn from_degrees(degrees: &[u32], through: u32, complete: bool) -> Self {
        let mut dims: BTreeMap<u32, usize> = (2..=through).map(|n| (n, 0)).collect();
        for &d in degrees {
            *dims.entry(d).or_insert(0) += 1;
        }
        HomotopyTable {
            dims,
            computed_through: through,
            complete,
        }
    }

    pub fn dim(&self, n: u32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<u32, usize> {
        &self.dims
    }

    pub fn computed_through(&self) -> u32 {
        self.computed_through
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Nonzero entries as `(degree, dim)`.
    pub fn nonzero(&self) -> Vec<(u32, usize)> {
        self.dims.iter().filter(|(_, &v)| v > 0).map(|(&k, &v)| (k, v)).collect()
    }

    /// Generator degrees with multiplicity, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        self.dims
            .iter()
            .flat_map(|(&k, &v)| std::iter::repeat(k).take(v))
            .collect()
    }

    pub fn odd_degrees(&self) -> Vec<u32> {
        self.degrees().into_iter().filter(|d| d % 2 == 1).collect()
    }

    pub fn even_degrees(&self) -> Vec<u32> {
        self.degrees().into_iter().filter(|d| d % 2 == 0).collect()
    }

    pub fn dim_odd(&self) -> usize {
        self.odd_degrees().len()
    }

    pub fn dim_even(&self) -> usize {
        self.even_degrees().len()
    }

    /// Running totals `Σ_{k ≤ n} dim π_k`.
    pub fn cumulative(&self) -> Vec<(u32, usize)> {
        let mut total = 0;
        self.dims
            .iter()
            .map(|(&k, &v)| {
                total += v;
                (k, total)
            })
            .collect()
    }
}

impl fmt::Display for HomotopyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nonzero().iter().map(|(k, v)| format!("pi_{} = {}", k, v)).collect();
        if parts.is_empty() {
            write!(f, "(trivial through degree {})", self.computed_through)
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

/// Matrix of `d: M_k → M_{k+1}`; columns index the degree-`k` monomials.
fn differential_matrix(d: &Derivation, source: &DegreeIndex, target: &DegreeIndex) -> MatrixQ {
    let mut m = MatrixQ::zeros(target.len(), source.len());
    for (j, mono) in source.basis().iter().enumerate() {
        for (i, c) in target.coords(&d.apply_monomial(mono)) {
            m.set(i, j, c).expect("in bounds");
        }
    }
    m
}

fn reversed(v: &[(usize, Rational)], len: usize) -> SparseVec {
    let mut out: SparseVec = v.iter().map(|(i, c)| (len - 1 - i, c.clone())).collect();
    out.sort_by_key(|(i, _)| *i);
    out
}

/// Degreewise cocycles and coboundaries of a Sullivan algebra.
struct Degree {
    index: DegreeIndex,
    cocycles: Vec<SparseVec>,
    /// Coboundaries, row-reduced in reverse graded-lex column order.
    boundaries: Echelon,
}

fn degree_data(d: &Derivation, k: u32) -> Degree {
    let alg = d.algebra();
    let index = alg.degree_index(k);
    let next = alg.degree_index(k + 1);
    let cocycles = linalg::kernel_basis_sparse(&differential_matrix(d, &index, &next));
    let mut boundaries = Echelon::new(index.len());
    if k > 0 {
        for mono in alg.monomial_basis(k - 1) {
            let image = index.coords(&d.apply_monomial(&mono));
            boundaries.insert(&reversed(&image, index.len()));
        }
    }
    Degree {
        index,
        cocycles,
        boundaries,
    }
}

/// Basis of `H^n(M, d)` represented by cocycles in graded-lex order.
#[derive(Debug, Clone)]
pub struct CohomologyDegree {
    pub degree: u32,
    pub dim: usize,
    pub basis: Vec<Polynomial>,
}

/// `H^n` of a Sullivan algebra, computed from its monomial bases.
pub fn cohomology_of_model(s: &SullivanAlgebra, n: u32) -> Result<CohomologyDegree, ModelError> {
    if !s.is_complete() && n > s.computed_through() {
        return Err(ModelError::InsufficientStages {
            requested: n,
            computed_through: s.computed_through(),
        });
    }
    let alg = s.algebra();
    let deg = degree_data(s.differential(), n);
    let len = deg.index.len();
    let mut span = deg.boundaries.clone();
    let mut basis = Vec::new();
    for z in &deg.cocycles {
        let r = span.reduce(&reversed(z, len));
        if !r.is_empty() {
            span.insert(&r);
            basis.push(deg.index.poly(alg, &reversed(&r, len)));
        }
    }
    Ok(CohomologyDegree {
        degree: n,
        dim: basis.len(),
        basis,
    })
}

/// What one stage of the construction added.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageReport {
    pub degree: u32,
    /// Closed generators hitting the cokernel of `H^n(M) → A^n`.
    pub cokernel: Vec<String>,
    /// Generators killing the kernel of `H^{n+1}(M) → A^{n+1}`.
    pub kernel: Vec<String>,
}

/// Stagewise minimal model of `(A, 0)` together with the quasi-isomorphism
/// `φ: M → A` on generators.
#[derive(Clone)]
pub struct ModelBuilder<'a> {
    h: &'a Presentation,
    gens: Vec<Generator>,
    d: Vec<Polynomial>,
    phi: Vec<Polynomial>,
    stage: Vec<u32>,
    through: u32,
    alg: Arc<FreeGCA>,
    used_names: HashSet<String>,
    next_kernel: usize,
    next_cokernel: usize,
}

impl<'a> ModelBuilder<'a> {
    pub fn new(h: &'a Presentation) -> Result<Self, ModelError> {
        let (a0, a1) = (h.dim(0), h.dim(1));
        if a0 != 1 {
            return Err(ModelError::NotConnected(a0));
        }
        if a1 != 0 {
            return Err(ModelError::NotSimplyConnected(a1));
        }
        Ok(ModelBuilder {
            h,
            gens: Vec::new(),
            d: Vec::new(),
            phi: Vec::new(),
            stage: Vec::new(),
            through: 1,
            alg: FreeGCA::new(Vec::new())?,
            used_names: h.ambient().gens().iter().map(|g| g.name.clone()).collect(),
            next_kernel: 1,
            next_cokernel: 1,
        })
    }

    pub fn computed_through(&self) -> u32 {
        self.through
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    /// Images `φ(g)` in the presentation's ambient algebra.
    pub fn phi(&self) -> &[Polynomial] {
        &self.phi
    }

    fn derivation(&self) -> Derivation {
        Derivation::new(&self.alg, self.d.clone()).expect("stage differentials have the right degrees")
    }

    fn push(&mut self, g: Generator, d: Option<Polynomial>, phi: Polynomial) {
        self.gens.push(g);
        self.stage.push(self.through + 1);
        self.phi.push(phi);
        let alg = FreeGCA::new(self.gens.clone()).expect("fresh generator names");
        self.d = self
            .d
            .iter()
            .map(|p| p.embed(&alg).expect("prefix"))
            .collect();
        let new_d = match d {
            Some(p) => p.embed(&alg).expect("prefix"),
            None => alg.zero(),
        };
        self.d.push(new_d);
        self.alg = alg;
    }

    fn fresh(&mut self, prefix: &str) -> String {
        loop {
            let counter = if prefix == "x" {
                &mut self.next_kernel
            } else {
                &mut self.next_cokernel
            };
            let name = format!("{}{}", prefix, counter);
            *counter += 1;
            if self.used_names.insert(name.clone()) {
                return name;
            }
        }
    }

    /// `φ(m)` for a monomial of the current model.
    fn phi_monomial(&self, exps: &[u32]) -> Polynomial {
        let amb = self.h.ambient();
        let mut out = amb.one();
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                out = &out * &self.phi[i];
                if out.is_zero() {
                    return out;
                }
            }
        }
        out
    }

    /// `φ` on degree `k` as a matrix from model monomials to `A_k`.
    fn phi_matrix(&self, index: &DegreeIndex, k: u32) -> MatrixQ {
        let a = self.h.degree_basis(k);
        let mut m = MatrixQ::zeros(a.dim(), index.len());
        for (j, mono) in index.basis().iter().enumerate() {
            for (i, c) in a.coords_sparse(&self.phi_monomial(mono.exps())) {
                m.set(i, j, c).expect("in bounds");
            }
        }
        m
    }

    /// Runs stage `computed_through() + 1`.
    pub fn step(&mut self) -> StageReport {
        let n = self.through + 1;
        let a_n = self.h.degree_basis(n);

        // cokernel of H^n(M) -> A^n
        let d = self.derivation();
        let deg = degree_data(&d, n);
        let phi_n = self.phi_matrix(&deg.index, n);
        let mut image = Echelon::new(a_n.dim());
        for z in &deg.cocycles {
            let col = phi_n.mul_vec(&linalg::sparse_to_dense(z, deg.index.len())).expect("shape");
            image.insert(&linalg::dense_to_sparse(&col));
        }
        let mut cokernel = Vec::new();
        for (i, rep) in a_n.representatives().iter().enumerate() {
            let unit = vec![(i, Rational::one())];
            if image.insert(&unit).is_none() {
                continue;
            }
            let name = self.cokernel_name(rep);
            cokernel.push(name.clone());
            self.push(Generator::new(name, n), None, rep.clone());
        }

        // kernel of H^{n+1}(M) -> A^{n+1}
        let d = self.derivation();
        let next = degree_data(&d, n + 1);
        let len = next.index.len();
        let phi_next = self.phi_matrix(&next.index, n + 1);
        let z_cols: Vec<Vec<Rational>> = next
            .cocycles
            .iter()
            .map(|z| phi_next.mul_vec(&linalg::sparse_to_dense(z, len)).expect("shape"))
            .collect();
        let mut on_cocycles = MatrixQ::zeros(phi_next.rows(), next.cocycles.len());
        for (j, col) in z_cols.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                if !c.is_zero() {
                    on_cocycles.set(i, j, c.clone()).expect("in bounds");
                }
            }
        }
        let mut span = next.boundaries.clone();
        let mut kernel = Vec::new();
        for combo in linalg::kernel_basis_sparse(&on_cocycles) {
            let mut w = vec![Rational::zero(); len];
            for (j, c) in &combo {
                for (i, v) in &next.cocycles[*j] {
                    w[*i] += c * v;
                }
            }
            let r = span.reduce(&reversed(&linalg::dense_to_sparse(&w), len));
            if r.is_empty() {
                continue;
            }
            span.insert(&r);
            let mut dx = next.index.poly(&self.alg, &reversed(&r, len));
            let lead = dx.terms().values().next().cloned().expect("nonzero");
            dx = dx.scale(&lead.recip());
            let name = self.fresh("x");
            kernel.push(name.clone());
            let zero = self.h.ambient().zero();
            self.push(Generator::new(name, n), Some(dx), zero);
        }

        self.through = n;
        StageReport {
            degree: n,
            cokernel,
            kernel,
        }
    }

    fn cokernel_name(&mut self, rep: &Polynomial) -> String {
        let amb = self.h.ambient();
        if rep.num_terms() == 1 {
            let (m, _) = rep.terms().iter().next().expect("one term");
            if m.word_length() == 1 {
                let i = m.exps().iter().position(|&e| e == 1).expect("generator");
                let name = amb.gens()[i].name.clone();
                if !self.gens.iter().any(|g| g.name == name) {
                    return name;
                }
            }
        }
        self.fresh("z")
    }

    /// Runs stages until `computed_through() >= n`.
    pub fn build_through(&mut self, n: u32) -> Vec<StageReport> {
        let mut reports = Vec::new();
        while self.through < n {
            reports.push(self.step());
        }
        reports
    }

    pub fn algebra(&self) -> SullivanAlgebra {
        SullivanAlgebra {
            differential: self.derivation(),
            stage: self.stage.clone(),
            computed_through: self.through,
            complete: false,
        }
    }

    pub fn table(&self) -> HomotopyTable {
        let degrees: Vec<u32> = self.gens.iter().map(|g| g.degree).collect();
        HomotopyTable::from_degrees(&degrees, self.through, false)
    }
}

/// Minimal model of `(h, 0)` through degree `max_degree`.
pub fn build_bigraded_model(h: &Presentation, max_degree: u32) -> Result<(SullivanAlgebra, HomotopyTable), ModelError> {
    if max_degree < 2 {
        return Err(ModelError::WindowTooSmall(max_degree));
    }
    let mut b = ModelBuilder::new(h)?;
    b.build_through(max_degree);
    Ok((b.algebra(), b.table()))
}

/// The pure decomposition `(Q, P, d|P)` when `d(Q) = 0` and `d(P) ⊂ S*Q`.
pub fn is_pure(s: &SullivanAlgebra) -> Option<PureSullivanData> {
    let alg = s.algebra();
    let d = s.differential();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (i, g) in alg.gens().iter().enumerate() {
        if g.is_odd() {
            if !d.image(i).is_even_only() {
                return None;
            }
            odd.push(i);
        } else {
            if !d.image(i).is_zero() {
                return None;
            }
            even.push(i);
        }
    }
    let ring = FreeGCA::new(even.iter().map(|&i| alg.gens()[i].clone()).collect()).expect("subset of valid generators");
    let boundaries = odd
        .iter()
        .map(|&i| {
            let mut out = ring.zero();
            for (m, c) in d.image(i).terms() {
                let exps = even.iter().map(|&j| m.exps()[j]).collect();
                let mono = ring.monomial(exps).expect("even exponents");
                out = &out + &Polynomial::from_monomial(&ring, mono, c.clone());
            }
            out
        })
        .collect();
    Some(PureSullivanData::from_parts(
        ring,
        odd.iter().map(|&i| alg.gens()[i].clone()).collect(),
        boundaries,
    ))
}
