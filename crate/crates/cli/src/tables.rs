//! Built-in reference tables and the logic that regenerates them.

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use multiplex_core::{periodic_gf, periodic_sequence, IntPolynomial, RationalGF, State};

const FIXTURES: &str = include_str!("../data/reference_tables.json");

#[derive(Debug, Deserialize)]
pub struct TableFixtures {
    pub periodic: Vec<TableRow>,
    pub primitive: Vec<TableRow>,
}

#[derive(Debug, Deserialize)]
pub struct TableRow {
    pub state: String,
    pub m: u32,
    pub terms: Vec<String>,
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

/// One regenerated-and-compared table row.
#[derive(Debug)]
pub struct RowCheck {
    pub table: &'static str,
    pub state: String,
    pub m: u32,
    pub mismatches: Vec<String>,
}

impl RowCheck {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn fixtures() -> Result<TableFixtures> {
    serde_json::from_str(FIXTURES).context("built-in table fixtures are malformed")
}

fn poly_strings(p: &IntPolynomial) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn check_row(table: &'static str, row: &TableRow, gf: &RationalGF, terms: Vec<String>) -> RowCheck {
    let mut mismatches = Vec::new();
    if terms != row.terms {
        mismatches.push(format!(
            "terms: computed {} expected {}",
            terms.join(","),
            row.terms.join(",")
        ));
    }
    let num = poly_strings(gf.numerator());
    if num != row.numerator {
        mismatches.push(format!(
            "numerator: computed [{}] expected [{}]",
            num.join(","),
            row.numerator.join(",")
        ));
    }
    let den = poly_strings(gf.denominator());
    if den != row.denominator {
        mismatches.push(format!(
            "denominator: computed [{}] expected [{}]",
            den.join(","),
            row.denominator.join(",")
        ));
    }
    RowCheck {
        table,
        state: row.state.clone(),
        m: row.m,
        mismatches,
    }
}

fn reproduce_periodic(row: &TableRow) -> Result<RowCheck> {
    let origin = State::parse(&row.state, row.m)?;
    let seq = periodic_sequence(&origin, row.terms.len())?;
    let terms: Vec<String> = seq.terms().iter().map(|t| t.to_string()).collect();
    let gf = periodic_gf(&origin)?;
    Ok(check_row("periodic", row, &gf, terms))
}

fn reproduce_primitive(row: &TableRow) -> Result<RowCheck> {
    let origin = State::parse(&row.state, row.m)?;
    let gf = periodic_gf(&origin)?.primitive_transform()?;
    let terms: Vec<String> = gf
        .expand(row.terms.len())
        .iter()
        .map(|t| t.to_string())
        .collect();
    Ok(check_row("primitive", row, &gf, terms))
}

/// Regenerates every fixture row (or just the `state:m` selected one) and
/// reports the comparisons.
pub fn reproduce(selector: Option<&str>) -> Result<Vec<RowCheck>> {
    let fixtures = fixtures()?;
    let filter = selector.map(parse_selector).transpose()?;
    let keep = |row: &TableRow| -> bool {
        filter
            .as_ref()
            .map(|(state, m)| row.state == *state && row.m == *m)
            .unwrap_or(true)
    };
    let mut checks = Vec::new();
    for row in fixtures.periodic.iter().filter(|r| keep(r)) {
        checks.push(reproduce_periodic(row)?);
    }
    for row in fixtures.primitive.iter().filter(|r| keep(r)) {
        checks.push(reproduce_primitive(row)?);
    }
    if checks.is_empty() {
        bail!("no table row matches the selector");
    }
    Ok(checks)
}

fn parse_selector(selector: &str) -> Result<(String, u32)> {
    let (state, m) = selector
        .rsplit_once(':')
        .context("row selector must look like STATE:M, e.g. 2,1:3")?;
    let m: u32 = m
        .trim()
        .parse()
        .context("row selector capacity is not a number")?;
    Ok((state.trim().to_string(), m))
}
