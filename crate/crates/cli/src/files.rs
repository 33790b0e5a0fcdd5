//! JSON input files.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use rht_core::kahler::HodgeDiamond;
use rht_core::{parse_poly, FreeGCA, Generator, Polynomial, Presentation};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecFile {
    pub generators: Vec<GeneratorSpec>,
    pub relations: Vec<String>,
    #[serde(default)]
    pub formal_dimension: Option<u32>,
    #[serde(default)]
    pub kahler_class: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiamondSpecFile {
    pub n: usize,
    pub hodge: Vec<u32>,
}

/// A parsed algebra file. The formal dimension is the declared one or,
/// failing that, the inferred top degree.
pub struct AlgebraInput {
    pub presentation: Presentation,
    pub kahler_class: Option<Polynomial>,
    pub declared_formal_dimension: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

const INFER_LIMIT: u32 = 256;

pub fn parse_algebra_file(path: &Path) -> Result<AlgebraInput> {
    let text = read(path)?;
    let spec: AlgebraSpecFile =
        serde_json::from_str(&text).with_context(|| format!("{}: schema violation", path.display()))?;
    parse_algebra_spec(&spec).with_context(|| format!("{}", path.display()))
}

pub fn parse_algebra_spec(spec: &AlgebraSpecFile) -> Result<AlgebraInput> {
    let gens = spec
        .generators
        .iter()
        .map(|g| Generator::new(g.name.clone(), g.degree))
        .collect();
    let alg = FreeGCA::new(gens).context("generators")?;
    let mut rels = Vec::with_capacity(spec.relations.len());
    for (i, r) in spec.relations.iter().enumerate() {
        rels.push(parse_poly(r, &alg).map_err(|e| anyhow!("relations[{}] `{}`: {}", i, r, e))?);
    }
    let h = Presentation::new(alg.clone(), rels, spec.formal_dimension)?;
    let declared = spec.formal_dimension.is_some();
    let h = if declared {
        h
    } else {
        let m = h.infer_formal_dimension(INFER_LIMIT).ok_or_else(|| {
            anyhow!(
                "formal_dimension: not declared, and the quotient does not vanish below degree {}",
                INFER_LIMIT
            )
        })?;
        h.with_formal_dimension(m)?
    };
    let kahler_class = match &spec.kahler_class {
        None => None,
        Some(name) => {
            let i = alg
                .index_of(name)
                .ok_or_else(|| anyhow!("kahler_class: `{}` is not a declared generator", name))?;
            if alg.gens()[i].degree != 2 {
                bail!("kahler_class: `{}` has degree {}, expected 2", name, alg.gens()[i].degree);
            }
            Some(alg.gen(i))
        }
    };
    Ok(AlgebraInput {
        presentation: h,
        kahler_class,
        declared_formal_dimension: declared,
    })
}

pub fn parse_diamond_file(path: &Path) -> Result<HodgeDiamond> {
    let text = read(path)?;
    let spec: DiamondSpecFile =
        serde_json::from_str(&text).with_context(|| format!("{}: schema violation", path.display()))?;
    let d = HodgeDiamond::from_row_major(spec.n, &spec.hodge).with_context(|| format!("{}: hodge", path.display()))?;
    Ok(d)
}
