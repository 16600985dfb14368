//! Grids of cohomology groups and their markdown, CSV and JSON renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::amalgam::{sl2z_cohomology_row, CoefficientRing};
use crate::error::{Error, Result};
use crate::linalg::{BaseRing, FgAbelianGroup};
use crate::moduli::{dagger_group, half_inverted_group, m11_group, MAX_PROVEN_DEGREE};
use crate::modules::GroupModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Markdown,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" | "markdown" => Ok(Self::Markdown),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::Parse(format!("unknown format {s:?} (expected md, csv or json)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub cells: Vec<FgAbelianGroup>,
}

/// A labelled grid of groups; `inverted` records primes inverted in every cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub corner: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inverted: Vec<u64>,
}

impl Table {
    fn cell_text(&self, g: &FgAbelianGroup) -> String {
        g.render_localized(&self.inverted)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Markdown => self.to_markdown(),
            Format::Csv => self.to_csv(),
            Format::Json => serde_json::to_string_pretty(self).expect("tables serialize") + "\n",
        }
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("### {}\n\n", self.title);
        let header: Vec<&str> = std::iter::once(self.corner.as_str()).chain(self.columns.iter().map(String::as_str)).collect();
        let _ = writeln!(out, "| {} |", header.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
        for row in &self.rows {
            let cells: Vec<String> = row.cells.iter().map(|g| self.cell_text(g)).collect();
            let _ = writeln!(out, "| {} | {} |", row.label, cells.join(" | "));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let quote = |s: &str| {
            if s.contains([',', '"']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        let mut out = String::new();
        let header: Vec<String> = std::iter::once(&self.corner).chain(&self.columns).map(|s| quote(s)).collect();
        let _ = writeln!(out, "{}", header.join(","));
        for row in &self.rows {
            let cells: Vec<String> =
                std::iter::once(quote(&row.label)).chain(row.cells.iter().map(|g| quote(&self.cell_text(g)))).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// `H^p(SL_2(Z), Sym^k Z^2)` for `k <= max_k`, `p <= max_p`.
pub fn sl2z_table(max_k: usize, max_p: usize) -> Result<Table> {
    let rows = (0..=max_k)
        .map(|k| {
            let m = GroupModule::sym_power(k, BaseRing::Integers)?;
            let cells = sl2z_cohomology_row(&m, max_p)?;
            let label = if k == 0 { "H^p(G, Z)".to_string() } else { format!("H^p(G, M_{k})") };
            Ok(TableRow { label, cells })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        title: "Cohomology of SL2(Z) with coefficients in M_k = Sym^k(Z^2)".into(),
        corner: "p".into(),
        columns: (0..=max_p).map(|p| p.to_string()).collect(),
        rows,
        inverted: Vec::new(),
    })
}

/// `H^p(SL_2(Z), Sym^k R^2)` over an arbitrary coefficient ring.
pub fn sl2z_table_over(max_k: usize, max_p: usize, ring: &CoefficientRing) -> Result<Table> {
    if *ring == CoefficientRing::Integers {
        return sl2z_table(max_k, max_p);
    }
    let rows = (0..=max_k)
        .map(|k| {
            let cells = (0..=max_p)
                .map(|p| crate::amalgam::sl2z_cohomology(k, p, ring))
                .collect::<Result<Vec<_>>>()?;
            Ok(TableRow { label: format!("H^p(G, Sym^{k} {ring}^2)"), cells })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        title: format!("Cohomology of SL2(Z) with coefficients in Sym^k({ring}^2)"),
        corner: "p".into(),
        columns: (0..=max_p).map(|p| p.to_string()).collect(),
        rows,
        inverted: match ring {
            CoefficientRing::Localized(ps) => ps.clone(),
            _ => Vec::new(),
        },
    })
}

fn check_range(max_n: usize) -> Result<()> {
    if max_n > MAX_PROVEN_DEGREE {
        Err(Error::DegenerationUnproven(max_n))
    } else {
        Ok(())
    }
}

fn degree_columns(max_n: usize) -> Vec<String> {
    (0..=max_n).map(|n| n.to_string()).collect()
}

/// Two rows: `H^n(M_{1,1}, Z)` and the dagger part of `H^n(M_1, Z)`.
pub fn moduli_table(max_n: usize) -> Result<Table> {
    check_range(max_n)?;
    let m11 = (0..=max_n).map(m11_group).collect::<Result<Vec<_>>>()?;
    let dagger = (0..=max_n).map(dagger_group).collect::<Result<Vec<_>>>()?;
    Ok(Table {
        title: "Integral cohomology of M_{1,1} and the dagger part of M_1".into(),
        corner: "n".into(),
        columns: degree_columns(max_n),
        rows: vec![
            TableRow { label: "H^n(M_11, Z)".into(), cells: m11 },
            TableRow { label: "H^n(M_1, Z)^dagger".into(), cells: dagger },
        ],
        inverted: Vec::new(),
    })
}

/// `H^n(M_1, Z[1/2])`.
pub fn moduli_half_table(max_n: usize) -> Result<Table> {
    check_range(max_n)?;
    let cells = (0..=max_n).map(half_inverted_group).collect::<Result<Vec<_>>>()?;
    Ok(Table {
        title: "Cohomology of M_1 with 2 inverted".into(),
        corner: "n".into(),
        columns: degree_columns(max_n),
        rows: vec![TableRow { label: "H^n(M_1, Z[1/2])".into(), cells }],
        inverted: vec![2],
    })
}
