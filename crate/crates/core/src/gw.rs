//! Three-point Gromov–Witten invariant tables.
//!
//! Invariants enter as validated table data. Each stored entry must pass the
//! degree gate deg(a)+deg(b)+deg(c) = 4n − 2c₁(A); outside the gate the
//! invariant is zero by definition. Stored rows are completed over the full
//! permutation orbit with Koszul signs, so lookups never permute.
//!
//! A spherical class is *tabulated* once it carries at least one stored row
//! (zero-valued rows are accepted as explicit markers). For the zero class,
//! untabulated triples that contain the fundamental class reduce to the
//! intersection pairing of the remaining two arguments. Any other gate-passing
//! query against an untabulated class raises [`Error::IncompleteTable`]
//! rather than presenting a truncated sum as exact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::homology::{
    koszul_sign, Generator, ManifoldModel, Monotonicity, SphericalClass, ZERO_CLASS,
};

/// One descriptor row: the invariant GW_{class}(e_i, e_j, e_k) = value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GWRow {
    pub class: String,
    pub args: [usize; 3],
    pub value: i64,
}

/// A finding produced while checking table rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableFinding {
    DegreeGateViolation {
        class: String,
        args: [usize; 3],
        degree_sum: i64,
        required: i64,
    },
    KoszulInconsistency {
        class: String,
        args: [usize; 3],
        stored: i64,
        implied: i64,
    },
    AsphericalEntry {
        class: String,
    },
    UnknownClassRow {
        class: String,
    },
    ArgumentOutOfRange {
        class: String,
        args: [usize; 3],
    },
}

impl fmt::Display for TableFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableFinding::DegreeGateViolation { class, args, degree_sum, required } => write!(
                f,
                "degree gate violation: class `{class}` args {args:?} have degree sum {degree_sum}, gate requires {required}"
            ),
            TableFinding::KoszulInconsistency { class, args, stored, implied } => write!(
                f,
                "Koszul symmetry inconsistency: class `{class}` args {args:?} stored {stored} vs implied {implied}"
            ),
            TableFinding::AsphericalEntry { class } => {
                write!(f, "aspherical model carries an entry for nonzero class `{class}`")
            }
            TableFinding::UnknownClassRow { class } => {
                write!(f, "row references unknown spherical class `{class}`")
            }
            TableFinding::ArgumentOutOfRange { class, args } => {
                write!(f, "row for class `{class}` has argument triple {args:?} out of range")
            }
        }
    }
}

/// Report of a full table check; empty findings means the table validates.
#[derive(Debug, Clone, Default)]
pub struct TableReport {
    pub findings: Vec<TableFinding>,
}

impl TableReport {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }
}

/// Orbit-completed table of three-point invariants.
#[derive(Debug, Default)]
pub struct GWTable {
    rows: BTreeMap<(String, [usize; 3]), i64>,
    tabulated: BTreeSet<String>,
}

impl GWTable {
    /// Validates raw rows against a basis and spherical lattice; findings do
    /// not abort the scan, so the report is complete.
    pub fn check_rows(
        rows: &[GWRow],
        basis: &[Generator],
        dim: usize,
        spherical: &[SphericalClass],
        monotonicity: &Monotonicity,
    ) -> TableReport {
        let mut findings = Vec::new();
        let mut completed: BTreeMap<(String, [usize; 3]), i64> = BTreeMap::new();
        for row in rows {
            let class = match spherical.iter().find(|c| c.name == row.class) {
                Some(c) => c,
                None => {
                    if monotonicity.is_aspherical() {
                        findings.push(TableFinding::AsphericalEntry {
                            class: row.class.clone(),
                        });
                    } else {
                        findings.push(TableFinding::UnknownClassRow {
                            class: row.class.clone(),
                        });
                    }
                    continue;
                }
            };
            if row.args.iter().any(|&i| i >= basis.len()) {
                findings.push(TableFinding::ArgumentOutOfRange {
                    class: row.class.clone(),
                    args: row.args,
                });
                continue;
            }
            if row.value != 0 {
                let degree_sum: i64 = row.args.iter().map(|&i| basis[i].degree as i64).sum();
                let required = 2 * dim as i64 - 2 * class.c1;
                if degree_sum != required {
                    findings.push(TableFinding::DegreeGateViolation {
                        class: row.class.clone(),
                        args: row.args,
                        degree_sum,
                        required,
                    });
                    continue;
                }
            }
            let orbit = match signed_orbit(row.args, row.value, basis) {
                Some(orbit) => orbit,
                None => {
                    // The orbit maps the triple to itself with a sign flip,
                    // so any nonzero value contradicts Koszul symmetry.
                    findings.push(TableFinding::KoszulInconsistency {
                        class: row.class.clone(),
                        args: row.args,
                        stored: row.value,
                        implied: -row.value,
                    });
                    continue;
                }
            };
            for (args, value) in orbit {
                let key = (row.class.clone(), args);
                match completed.get(&key) {
                    Some(&existing) if existing != value => {
                        findings.push(TableFinding::KoszulInconsistency {
                            class: row.class.clone(),
                            args,
                            stored: existing,
                            implied: value,
                        });
                    }
                    _ => {
                        completed.insert(key, value);
                    }
                }
            }
        }
        TableReport { findings }
    }

    /// Builds the completed table, rejecting the first finding as an error.
    pub(crate) fn build(
        model_name: &str,
        rows: Vec<GWRow>,
        basis: &[Generator],
        dim: usize,
        spherical: &[SphericalClass],
        monotonicity: &Monotonicity,
    ) -> Result<GWTable> {
        let report = Self::check_rows(&rows, basis, dim, spherical, monotonicity);
        if let Some(first) = report.findings.first() {
            return Err(match first {
                TableFinding::DegreeGateViolation { .. } => Error::DegreeGateViolation {
                    model: model_name.to_string(),
                    detail: first.to_string(),
                },
                TableFinding::AsphericalEntry { .. } => {
                    Error::AsphericalViolation(model_name.to_string(), first.to_string())
                }
                TableFinding::UnknownClassRow { class } => Error::UnknownClass {
                    model: model_name.to_string(),
                    class: class.clone(),
                },
                _ => Error::Parse(format!("model `{model_name}`: {first}")),
            });
        }
        let mut table = GWTable::default();
        for row in rows {
            table.tabulated.insert(row.class.clone());
            // check_rows verified orbit consistency already.
            for (args, value) in signed_orbit(row.args, row.value, basis).expect("checked orbit") {
                if value != 0 {
                    table.rows.insert((row.class.clone(), args), value);
                }
            }
        }
        Ok(table)
    }

    pub(crate) fn lookup(&self, class: &str, args: [usize; 3]) -> Option<i64> {
        self.rows.get(&(class.to_string(), args)).copied()
    }

    pub(crate) fn is_tabulated(&self, class: &str) -> bool {
        self.tabulated.contains(class)
    }

    /// Stored nonzero rows, orbit-completed.
    pub fn rows(&self) -> impl Iterator<Item = (&str, [usize; 3], i64)> {
        self.rows.iter().map(|((c, a), v)| (c.as_str(), *a, *v))
    }

    /// Classes explicitly covered by the table.
    pub fn tabulated_classes(&self) -> impl Iterator<Item = &str> {
        self.tabulated.iter().map(|s| s.as_str())
    }
}

/// The S₃ orbit of an argument triple with Koszul signs: transposing
/// adjacent arguments of degrees d₁, d₂ multiplies the value by (−1)^{d₁d₂}.
/// None when the orbit maps a triple to itself with opposite sign, which
/// forbids a nonzero value.
fn signed_orbit(
    args: [usize; 3],
    value: i64,
    basis: &[Generator],
) -> Option<Vec<([usize; 3], i64)>> {
    let mut seen: BTreeMap<[usize; 3], i64> = BTreeMap::new();
    let mut queue = vec![(args, value)];
    while let Some((a, v)) = queue.pop() {
        match seen.get(&a) {
            Some(&old) if old != v => return None,
            Some(_) => continue,
            None => {
                seen.insert(a, v);
            }
        }
        for swap in 0..2 {
            let mut b = a;
            b.swap(swap, swap + 1);
            let sign = koszul_sign(basis[a[swap]].degree, basis[a[swap + 1]].degree);
            queue.push((b, sign * v));
        }
    }
    Some(seen.into_iter().collect())
}

impl ManifoldModel {
    /// The three-point invariant GW_{A}(e_a, e_b, e_c).
    ///
    /// Zero outside the degree gate. Inside the gate the completed table
    /// answers; for the zero class an untabulated triple containing the
    /// fundamental class reduces to the classical pairing of the other two
    /// arguments.
    pub fn gw3(&self, class: &str, a: usize, b: usize, c: usize) -> Result<i64> {
        let sph = self.spherical_class(class)?;
        let args = [a, b, c];
        let degree_sum: i64 = args.iter().map(|&i| self.basis[i].degree as i64).sum();
        if degree_sum != 2 * self.dim as i64 - 2 * sph.c1 {
            return Ok(0);
        }
        if let Some(v) = self.gw.lookup(class, args) {
            return Ok(v);
        }
        if self.gw.is_tabulated(class) {
            return Ok(0);
        }
        if class == ZERO_CLASS {
            // The fundamental class is the classical identity, so such a
            // triple is the pairing of the remaining two arguments. Moving
            // the (even) fundamental class out costs no sign.
            if let Some(pos) = args.iter().position(|&i| i == self.top) {
                let rest: Vec<usize> = args
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != pos)
                    .map(|(_, &i)| i)
                    .collect();
                return Ok(self.pairing[rest[0]][rest[1]]);
            }
            return Err(Error::IncompleteTable {
                model: self.name.clone(),
                detail: format!(
                    "classical triple {args:?} has no stored row and no fundamental-class argument"
                ),
            });
        }
        Err(Error::IncompleteTable {
            model: self.name.clone(),
            detail: format!("class `{class}` passes the degree gate but is not tabulated"),
        })
    }

    /// Re-checks every stored entry; clean for any model this crate built.
    pub fn validate_table(&self) -> TableReport {
        let rows: Vec<GWRow> = self
            .gw
            .rows()
            .map(|(class, args, value)| GWRow {
                class: class.to_string(),
                args,
                value,
            })
            .collect();
        GWTable::check_rows(
            &rows,
            &self.basis,
            self.dim,
            &self.spherical,
            &self.monotonicity,
        )
    }
}
