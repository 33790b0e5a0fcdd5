//! One function per subcommand. Each returns both renderings; `main`
//! picks one.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::Result;
use serde_json::{json, Value};

use rht_core::fano::{self, FanoFamily};
use rht_core::kahler::{self, LsInput};
use rht_core::sullivan::{euler_characteristics, is_regular_sequence, koszul_homology, Certificate, PureSullivanData};
use rht_core::{build_bigraded_model, classify_dichotomy, Presentation};

use crate::files::{parse_algebra_file, parse_diamond_file, AlgebraInput};

pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: u8,
    pub diagnostics: Vec<String>,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            code: 0,
            diagnostics: Vec::new(),
        }
    }
}

fn default_degree(h: &Presentation, max_degree: Option<u32>) -> u32 {
    let m = h.formal_dimension().expect("set by the file parser");
    max_degree.unwrap_or((2 * m).saturating_sub(1)).max(2)
}

fn betti_line(h: &Presentation) -> (String, Value) {
    let m = h.formal_dimension().expect("set by the file parser");
    let betti = h.hilbert_series(m);
    let parts: Vec<String> = betti.iter().enumerate().map(|(k, b)| format!("b_{} = {}", k, b)).collect();
    (parts.join(", "), json!(betti))
}

fn algebra_header(input: &AlgebraInput) -> String {
    let h = &input.presentation;
    format!(
        "algebra: {}\nformal dimension: {}{}\n",
        h,
        h.formal_dimension().expect("set by the file parser"),
        if input.declared_formal_dimension { "" } else { " (inferred)" }
    )
}

pub fn model(path: &Path, max_degree: Option<u32>) -> Result<Report> {
    let input = parse_algebra_file(path)?;
    let h = &input.presentation;
    let n = default_degree(h, max_degree);
    let (model, table) = build_bigraded_model(h, n)?;
    let (betti_text, betti_json) = betti_line(h);

    let mut text = algebra_header(&input);
    writeln!(text, "cohomology: {}", betti_text)?;
    writeln!(text, "minimal model through degree {}:", n)?;
    for line in model.describe() {
        writeln!(text, "  {}", line)?;
    }
    writeln!(text, "homotopy through degree {}: {}", n, table)?;

    let gens: Vec<Value> = model
        .generators()
        .iter()
        .zip(model.differential().images())
        .map(|(g, d)| json!({"name": g.name, "degree": g.degree, "d": d.to_string()}))
        .collect();
    let json = json!({
        "command": "model",
        "algebra": h.to_string(),
        "formal_dimension": h.formal_dimension(),
        "max_degree": n,
        "betti": betti_json,
        "generators": gens,
        "homotopy": table_json(&table),
    });
    Ok(Report::ok(text, json))
}

fn table_json(t: &rht_core::HomotopyTable) -> Value {
    let dims: serde_json::Map<String, Value> = t.dims().iter().map(|(k, v)| (format!("pi_{}", k), json!(v))).collect();
    json!({
        "dims": dims,
        "nonzero": t.nonzero(),
        "computed_through": t.computed_through(),
        "complete": t.is_complete(),
    })
}

pub fn classify(path: &Path, max_degree: Option<u32>) -> Result<Report> {
    let input = parse_algebra_file(path)?;
    let h = &input.presentation;
    let m = h.formal_dimension().expect("set by the file parser");
    let window = default_degree(h, max_degree);
    let v = classify_dichotomy(h, window)?;

    let mut text = String::new();
    writeln!(text, "{}", v.summary())?;
    text.push_str(&algebra_header(&input));
    let through = if v.table.is_complete() {
        "all degrees".to_string()
    } else {
        format!("degree {}", v.table.computed_through())
    };
    writeln!(text, "homotopy ({}): {}", through, v.table)?;
    match &v.certificate {
        Certificate::Elliptic {
            regularity,
            audit,
            quasi_isomorphism_through,
            ..
        } => {
            writeln!(text, "regular sequence: {}", regularity.reason)?;
            if let Some(k) = regularity.radical_power {
                writeln!(text, "radical power: (Q)^{} lies in (p)", k)?;
            }
            writeln!(text, "quasi-isomorphism checked through degree {}", quasi_isomorphism_through)?;
            for i in &audit.items {
                writeln!(
                    text,
                    "FH {} {}: {} vs {} {}",
                    i.name,
                    i.statement,
                    i.lhs,
                    i.rhs,
                    if i.pass { "pass" } else { "FAIL" }
                )?;
            }
        }
        Certificate::Hyperbolic { violations, stage, growth } => {
            for x in violations {
                writeln!(text, "violation at stage {}: {}", stage, x)?;
            }
            writeln!(text, "growth (n, sum dim pi_k for k <= n): {:?}", growth)?;
        }
        Certificate::Undetermined { reason, growth } => {
            writeln!(text, "reason: {}", reason)?;
            writeln!(text, "growth (n, sum dim pi_k for k <= n): {:?}", growth)?;
        }
    }
    let euler = euler_characteristics(&v.table, h)?;
    writeln!(text, "euler characteristic e = {}, homotopy euler characteristic = {}", euler.e, euler.chi_pi)?;
    for f in &euler.flags {
        writeln!(text, "flag: {}", f)?;
    }

    let mut json = json!({
        "command": "classify",
        "algebra": h.to_string(),
        "formal_dimension": m,
        "window": window,
        "summary": v.summary(),
        "verdict": v.kind.to_string(),
        "certificate": serde_json::to_value(&v.certificate)?,
        "homotopy": table_json(&v.table),
        "euler": serde_json::to_value(&euler)?,
    });
    if let Some(omega) = &input.kahler_class {
        let pd = h.check_poincare_duality(m)?;
        writeln!(text, "Poincare duality in degree {}: {}", m, if pd.pass { "pass" } else { "FAIL" })?;
        json["poincare_duality"] = serde_json::to_value(&pd)?;
        if m % 2 == 0 {
            let hl = h.check_hard_lefschetz(omega, m / 2)?;
            writeln!(text, "hard Lefschetz for {}: {}", omega, if hl.pass { "pass" } else { "FAIL" })?;
            json["hard_lefschetz"] = serde_json::to_value(&hl)?;
        }
    }
    Ok(Report::ok(text, json))
}

pub fn koszul(path: &Path, max_degree: Option<u32>) -> Result<Report> {
    let input = parse_algebra_file(path)?;
    let h = &input.presentation;
    let n = default_degree(h, max_degree);
    let pure = PureSullivanData::from_presentation(h)?;
    let mut text = format!("Koszul complex of the relations of {}\n", h);
    let mut homology = Vec::new();
    for j in 0..=pure.odd_gens().len() {
        let dims = koszul_homology(&pure, j, n);
        let nonzero: Vec<String> = dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(k, d)| format!("[{}] {}", k, d))
            .collect();
        writeln!(
            text,
            "H_{} by internal degree 0..={}: {}",
            j,
            n,
            if nonzero.is_empty() { "0".to_string() } else { nonzero.join(", ") }
        )?;
        homology.push(json!({"j": j, "dims": dims}));
    }
    let w = is_regular_sequence(&pure);
    writeln!(text, "regular sequence: {} ({})", if w.regular { "yes" } else { "no" }, w.reason)?;
    writeln!(text, "socle degree: {}", w.socle_degree)?;
    let json = json!({
        "command": "koszul",
        "algebra": h.to_string(),
        "max_internal_degree": n,
        "homology": homology,
        "regularity": serde_json::to_value(&w)?,
    });
    Ok(Report::ok(text, json))
}

pub fn diamond(path: &Path) -> Result<Report> {
    let d = parse_diamond_file(path)?;
    let report = kahler::validate_diamond(&d);
    let mut text = format!("Hodge diamond (complex dimension {}):\n{}", d.n(), d);
    let betti = d.betti_numbers();
    let bs: Vec<String> = betti.iter().enumerate().map(|(k, b)| format!("b_{} = {}", k, b)).collect();
    writeln!(text, "betti: {}", bs.join(", "))?;
    let mut json = json!({
        "command": "diamond",
        "n": d.n(),
        "hodge": d.row_major(),
        "betti": betti,
        "validation": serde_json::to_value(&report)?,
    });
    if !report.valid {
        for v in &report.violations {
            writeln!(text, "violation: {}", v)?;
        }
        return Ok(Report {
            text,
            json,
            code: 1,
            diagnostics: vec!["error: invalid Hodge diamond".into()],
        });
    }
    let verdict = kahler::classify(&d)?;
    writeln!(text, "elliptic: {}", verdict.elliptic)?;
    for c in &verdict.cases {
        let cond = if c.conditions.is_empty() {
            String::new()
        } else {
            format!(" [{}]", c.conditions.join(", "))
        };
        writeln!(text, "case ({}): {}{}", c.status, c.space, cond)?;
    }
    if let Some(inv) = &verdict.surface_invariants {
        writeln!(
            text,
            "invariants: q = {}, p_g = {}, chi(O) = {}, c2 = {}, c1^2 = K^2 = {}",
            inv.q, inv.p_g, inv.chi_o, inv.c2, inv.c1sq
        )?;
    }
    for t in &verdict.trace {
        writeln!(text, "  - {}", t)?;
    }
    let ls = kahler::ls_bounds(LsInput::Diamond(&d), d.n() as u32)?;
    writeln!(text, "LS category: {}", ls.squeeze)?;
    json["classification"] = serde_json::to_value(&verdict)?;
    json["ls_category"] = serde_json::to_value(&ls)?;
    if verdict.diamond == Some('d') {
        json["exclusion"] = serde_json::to_value(kahler::exclude_diamond_d(&d)?)?;
    }
    Ok(Report::ok(text, json))
}

fn fano_row(f: &FanoFamily) -> String {
    format!(
        "{}\tb2 = {}\tb3 = {}\t{}\t{}",
        f.id,
        f.b2,
        f.b3,
        match f.diamond {
            Some(c) => format!("elliptic ({})", c),
            None => "not elliptic".into(),
        },
        f.description
    )
}

pub fn fano_list(b2: Option<u32>, elliptic: Option<bool>) -> Report {
    let rows = fano::list_families(b2, elliptic);
    let mut text = String::new();
    for f in &rows {
        text.push_str(&fano_row(f));
        text.push('\n');
    }
    let json = json!({
        "command": "fano list",
        "count": rows.len(),
        "families": serde_json::to_value(&rows).expect("serializable"),
    });
    Report::ok(text, json)
}

pub fn fano_show(id: &str) -> Result<Report> {
    let f = fano::lookup(id)?;
    let mut text = format!("{}\n", fano_row(f));
    if let Some(r) = f.index_r {
        writeln!(text, "index: {}", r)?;
    }
    if let Some(g) = f.genus_or_degree {
        let label = if f.index_r == Some(1) { "genus" } else { "degree" };
        writeln!(text, "{}: {}", label, g)?;
    }
    if f.homogeneous {
        writeln!(text, "homogeneous: yes")?;
    }
    if let Some(n) = &f.note {
        writeln!(text, "note: {}", n)?;
    }
    let json = json!({"command": "fano show", "family": serde_json::to_value(f)?});
    Ok(Report::ok(text, json))
}
