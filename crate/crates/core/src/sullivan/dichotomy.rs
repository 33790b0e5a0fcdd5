//! The elliptic/hyperbolic decision with finite certificates.
//!
//! Elliptic is certified only for pure models whose boundaries form a
//! regular sequence; hyperbolic only by a violated Friedlander–Halperin
//! bound or a generator beyond degree `2m - 1`. Everything else is
//! undetermined.

use std::fmt;

use serde::Serialize;

use crate::presentation::Presentation;

use super::koszul::{is_regular_sequence, RegularityWitness};
use super::{cohomology_of_model, is_pure, HomotopyTable, ModelBuilder, ModelError, SullivanAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FhItem {
    pub name: String,
    pub statement: String,
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
}

/// The degree-sum bounds for an elliptic space of formal dimension `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FhAudit {
    pub formal_dimension: u32,
    pub odd_degree_sum: i64,
    pub even_degree_sum: i64,
    pub items: Vec<FhItem>,
    pub pass: bool,
}

impl FhAudit {
    pub fn item(&self, name: &str) -> Option<&FhItem> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn failures(&self) -> Vec<&FhItem> {
        self.items.iter().filter(|i| !i.pass).collect()
    }
}

fn sums(odd: &[u32], even: &[u32]) -> (i64, i64) {
    (
        odd.iter().map(|&d| i64::from(d)).sum(),
        even.iter().map(|&d| i64::from(d)).sum(),
    )
}

fn audit(odd: &[u32], even: &[u32], m: u32, cat0: Option<usize>) -> FhAudit {
    let (so, se) = sums(odd, even);
    let m64 = i64::from(m);
    let shifted = se - even.len() as i64;
    let mut items = vec![
        FhItem {
            name: "(i)".into(),
            statement: "sum |x_i| <= 2m - 1".into(),
            lhs: so,
            rhs: 2 * m64 - 1,
            pass: so < 2 * m64,
        },
        FhItem {
            name: "(ii)".into(),
            statement: "sum |y_j| <= m".into(),
            lhs: se,
            rhs: m64,
            pass: se <= m64,
        },
        FhItem {
            name: "(iii)".into(),
            statement: "sum |x_i| - sum (|y_j| - 1) = m".into(),
            lhs: so - shifted,
            rhs: m64,
            pass: so - shifted == m64,
        },
        FhItem {
            name: "(iv)".into(),
            statement: "sum |x_i| - sum |y_j| >= 0".into(),
            lhs: so - se,
            rhs: 0,
            pass: so >= se,
        },
    ];
    if let Some(c) = cat0 {
        items.push(FhItem {
            name: "cat0".into(),
            statement: "dim pi_odd <= cat0".into(),
            lhs: odd.len() as i64,
            rhs: c as i64,
            pass: odd.len() <= c,
        });
    }
    FhAudit {
        formal_dimension: m,
        odd_degree_sum: so,
        even_degree_sum: se,
        pass: items.iter().all(|i| i.pass),
        items,
    }
}

/// Evaluates the bounds on a table known through degree `2m - 1` or
/// complete.
pub fn check_fh_bounds(t: &HomotopyTable, m: u32, cat0: Option<usize>) -> Result<FhAudit, ModelError> {
    let needed = (2 * m).saturating_sub(1);
    if !t.is_complete() && t.computed_through() < needed {
        return Err(ModelError::IncompleteTable {
            computed_through: t.computed_through(),
            needed,
        });
    }
    Ok(audit(&t.odd_degrees(), &t.even_degrees(), m, cat0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    /// Alternating sum of Betti numbers.
    pub e: i64,
    /// `dim π_even - dim π_odd`.
    pub chi_pi: i64,
    pub odd_betti_vanish: bool,
    pub flags: Vec<String>,
}

/// Topological and homotopy Euler characteristics with the consistency
/// checks that apply to elliptic spaces.
pub fn euler_characteristics(t: &HomotopyTable, h: &Presentation) -> Result<EulerReport, ModelError> {
    let m = h
        .formal_dimension()
        .or_else(|| h.infer_formal_dimension(256))
        .ok_or(ModelError::MissingFormalDimension)?;
    let betti = h.hilbert_series(m);
    let e: i64 = betti
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    let chi_pi = t.dim_even() as i64 - t.dim_odd() as i64;
    let odd_betti_vanish = betti.iter().skip(1).step_by(2).all(|&b| b == 0);
    let mut flags = Vec::new();
    if chi_pi > 0 {
        flags.push(format!("chi_pi = {} > 0 is inconsistent with elliptic homotopy type", chi_pi));
    }
    if e > 0 && !odd_betti_vanish {
        flags.push("e > 0 but some odd Betti number is nonzero: an elliptic space with e > 0 has vanishing odd Betti numbers".into());
    }
    if e < 0 {
        flags.push(format!("e = {} < 0 is inconsistent with elliptic homotopy type", e));
    }
    Ok(EulerReport {
        e,
        chi_pi,
        odd_betti_vanish,
        flags,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    Elliptic,
    Hyperbolic,
    Undetermined,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Elliptic => "ELLIPTIC",
            VerdictKind::Hyperbolic => "HYPERBOLIC",
            VerdictKind::Undetermined => "UNDETERMINED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Certificate {
    Elliptic {
        generator_degrees: Vec<u32>,
        regularity: RegularityWitness,
        audit: FhAudit,
        /// `H^k(M) ≅ A^k` was verified for `k` up to this degree.
        quasi_isomorphism_through: u32,
    },
    Hyperbolic {
        violations: Vec<String>,
        stage: u32,
        /// `(n, Σ_{k ≤ n} dim π_k)`.
        growth: Vec<(u32, usize)>,
    },
    Undetermined {
        reason: String,
        growth: Vec<(u32, usize)>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct DichotomyVerdict {
    pub kind: VerdictKind,
    pub certificate: Certificate,
    pub table: HomotopyTable,
    pub formal_dimension: u32,
    #[serde(skip)]
    pub model: SullivanAlgebra,
}

impl DichotomyVerdict {
    /// One-line summary such as
    /// `ELLIPTIC (pure Sullivan, regular sequence; generators at degrees 2,3)`.
    pub fn summary(&self) -> String {
        let detail = match &self.certificate {
            Certificate::Elliptic { generator_degrees, .. } => {
                let d: Vec<String> = generator_degrees.iter().map(ToString::to_string).collect();
                format!("pure Sullivan, regular sequence; generators at degrees {}", d.join(","))
            }
            Certificate::Hyperbolic { violations, stage, .. } => {
                format!("{} (found by stage {})", violations.join("; "), stage)
            }
            Certificate::Undetermined { reason, .. } => reason.clone(),
        };
        format!("{} ({})", self.kind, detail)
    }
}

/// Bounds that generators found so far already violate. Every later
/// generator only increases the sums, so each violation is final.
fn violations(b: &ModelBuilder<'_>, m: u32) -> Vec<String> {
    let odd: Vec<u32> = b.generators().iter().filter(|g| g.is_odd()).map(|g| g.degree).collect();
    let even: Vec<u32> = b.generators().iter().filter(|g| !g.is_odd()).map(|g| g.degree).collect();
    let (so, se) = sums(&odd, &even);
    let mut out = Vec::new();
    if so > 2 * i64::from(m) - 1 {
        out.push(format!("FH (i) violated: sum of odd degrees {} > 2m - 1 = {}", so, 2 * m - 1));
    }
    if se > i64::from(m) {
        out.push(format!("FH (ii) violated: sum of even degrees {} > m = {}", se, m));
    }
    if let Some(g) = b.generators().iter().find(|g| g.degree > 2 * m - 1) {
        out.push(format!("generator {} in degree {} > 2m - 1 = {}", g.name, g.degree, 2 * m - 1));
    }
    out
}

/// Builds the model through `max(window, 2m - 1)` and decides.
///
/// The construction stops early once a bound is violated and at least the
/// degree-3 stage (or the requested window, if smaller) is done, so
/// hyperbolic inputs stay cheap.
pub fn classify_dichotomy(h: &Presentation, window: u32) -> Result<DichotomyVerdict, ModelError> {
    let m = h.formal_dimension().ok_or(ModelError::MissingFormalDimension)?;
    if m == 0 {
        return Err(ModelError::Invalid("formal dimension 0: the input is a point".into()));
    }
    let w = window.max(2 * m - 1).max(2);
    let mut b = ModelBuilder::new(h)?;
    while b.computed_through() < w {
        b.step();
        let n = b.computed_through();
        let v = violations(&b, m);
        if !v.is_empty() && (n >= 3 || n >= window) {
            let table = b.table();
            return Ok(DichotomyVerdict {
                kind: VerdictKind::Hyperbolic,
                certificate: Certificate::Hyperbolic {
                    violations: v,
                    stage: n,
                    growth: table.cumulative(),
                },
                table,
                formal_dimension: m,
                model: b.algebra(),
            });
        }
    }
    let mut model = b.algebra();
    let table = b.table();
    let undetermined = |reason: String, model: SullivanAlgebra| DichotomyVerdict {
        kind: VerdictKind::Undetermined,
        certificate: Certificate::Undetermined {
            reason,
            growth: table.cumulative(),
        },
        table: table.clone(),
        formal_dimension: m,
        model,
    };
    let Some(pure) = is_pure(&model) else {
        return Ok(undetermined(format!("model through degree {} is not pure", w), model));
    };
    if pure.odd_gens().len() != pure.even_gens().len() {
        return Ok(undetermined(
            format!(
                "pure model with |Q| = {} and |P| = {} through degree {}",
                pure.even_gens().len(),
                pure.odd_gens().len(),
                w
            ),
            model,
        ));
    }
    let regularity = is_regular_sequence(&pure);
    if !regularity.regular {
        return Ok(undetermined(regularity.reason, model));
    }
    if regularity.socle_degree > i64::from(w) {
        return Ok(undetermined(
            format!("socle degree {} lies beyond the window {}", regularity.socle_degree, w),
            model,
        ));
    }
    // H(M) = S*Q/(p) vanishes above the socle degree, A vanishes above m,
    // and φ is an isomorphism through w: no further generators can appear.
    model.mark_complete();
    for k in 0..=2 * m {
        let hk = cohomology_of_model(&model, k)?.dim;
        if hk != h.dim(k) {
            return Ok(undetermined(
                format!("quasi-isomorphism check failed in degree {}: H(M) = {}, A = {}", k, hk, h.dim(k)),
                model,
            ));
        }
    }
    let table = HomotopyTable::from_degrees(&table.degrees(), table.computed_through(), true);
    let audit = check_fh_bounds(&table, m, None)?;
    Ok(DichotomyVerdict {
        kind: VerdictKind::Elliptic,
        certificate: Certificate::Elliptic {
            generator_degrees: table.degrees(),
            regularity,
            audit,
            quasi_isomorphism_through: 2 * m,
        },
        table,
        formal_dimension: m,
        model,
    })
}
