//! JSON descriptor documents.
//!
//! Manifolds and circle actions enter and leave the library as UTF-8 JSON
//! with bit-exact rationals as integer pairs; no floating point appears
//! anywhere in the formats. A model exported with [`ManifoldDescriptor::from_model`]
//! reloads to an equivalent model.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gw::GWRow;
use crate::homology::{Generator, ManifoldModel, Model, Monotonicity, SphericalClass};
use crate::novikov::rational;
use crate::seidel::{CircleActionData, Correction};

/// An exact rational as an integer pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioPair {
    pub num: i64,
    pub den: i64,
}

impl RatioPair {
    pub fn to_rational(self) -> Result<BigRational> {
        if self.den == 0 {
            return Err(Error::Parse("rational with zero denominator".into()));
        }
        Ok(rational(self.num, self.den))
    }

    pub fn from_rational(r: &BigRational) -> Result<Self> {
        let to_i64 = |v: &BigInt| -> Result<i64> {
            i64::try_from(v).map_err(|_| Error::Parse("rational exceeds descriptor range".into()))
        };
        Ok(RatioPair {
            num: to_i64(r.numer())?,
            den: to_i64(r.denom())?,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub degree: usize,
}

/// Either the marker string `"aspherical"` or a positive rational λ.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LambdaField {
    Marker(String),
    Ratio(RatioPair),
}

impl LambdaField {
    fn to_monotonicity(&self) -> Result<Monotonicity> {
        match self {
            LambdaField::Marker(s) if s == "aspherical" => Ok(Monotonicity::Aspherical),
            LambdaField::Marker(s) => {
                Err(Error::Parse(format!("unknown monotonicity marker `{s}`")))
            }
            LambdaField::Ratio(r) => Ok(Monotonicity::Monotone(r.to_rational()?)),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SphericalEntry {
    pub name: String,
    pub c1: i64,
    pub omega: RatioPair,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GWRowEntry {
    pub class: String,
    pub args: [usize; 3],
    pub value: i64,
}

/// The manifold descriptor document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifoldDescriptor {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<BasisEntry>,
    pub pairing: Vec<(usize, usize, i64)>,
    pub monotone_lambda: LambdaField,
    pub spherical_classes: Vec<SphericalEntry>,
    #[serde(default)]
    pub gw: Vec<GWRowEntry>,
}

impl ManifoldDescriptor {
    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    /// Builds and validates the model.
    pub fn to_model(&self) -> Result<Model> {
        let basis = self
            .basis
            .iter()
            .map(|b| Generator {
                name: b.name.clone(),
                degree: b.degree,
            })
            .collect();
        let spherical = self
            .spherical_classes
            .iter()
            .map(|s| {
                Ok(SphericalClass {
                    name: s.name.clone(),
                    c1: s.c1,
                    omega: s.omega.to_rational()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let gw_rows = self
            .gw
            .iter()
            .map(|r| GWRow {
                class: r.class.clone(),
                args: r.args,
                value: r.value,
            })
            .collect();
        ManifoldModel::build(
            self.name.clone(),
            self.dim,
            basis,
            self.pairing.clone(),
            self.monotone_lambda.to_monotonicity()?,
            spherical,
            gw_rows,
        )
    }

    /// Checks the document's Gromov–Witten rows without building the model,
    /// so violating tables still produce a full report. When the rows are
    /// clean, the remaining invariants are checked by a build attempt and
    /// any failure is appended as a finding.
    pub fn check_table(&self) -> Result<Vec<String>> {
        let basis: Vec<Generator> = self
            .basis
            .iter()
            .map(|b| Generator {
                name: b.name.clone(),
                degree: b.degree,
            })
            .collect();
        let spherical = self
            .spherical_classes
            .iter()
            .map(|s| {
                Ok(SphericalClass {
                    name: s.name.clone(),
                    c1: s.c1,
                    omega: s.omega.to_rational()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let rows: Vec<GWRow> = self
            .gw
            .iter()
            .map(|r| GWRow {
                class: r.class.clone(),
                args: r.args,
                value: r.value,
            })
            .collect();
        let report = crate::gw::GWTable::check_rows(
            &rows,
            &basis,
            self.dim,
            &spherical,
            &self.monotone_lambda.to_monotonicity()?,
        );
        let mut findings: Vec<String> = report.findings.iter().map(|f| f.to_string()).collect();
        if findings.is_empty() {
            if let Err(e) = self.to_model() {
                findings.push(e.to_string());
            }
        }
        Ok(findings)
    }

    /// Round-trippable export of a validated model.
    pub fn from_model(model: &ManifoldModel) -> Result<Self> {
        let basis = model
            .basis()
            .iter()
            .map(|g| BasisEntry {
                name: g.name.clone(),
                degree: g.degree,
            })
            .collect();
        let n = model.basis().len();
        let mut pairing = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = model.pairing_entry(i, j);
                if v != 0 {
                    pairing.push((i, j, v));
                }
            }
        }
        let monotone_lambda = match model.monotonicity() {
            Monotonicity::Aspherical => LambdaField::Marker("aspherical".into()),
            Monotonicity::Monotone(l) => LambdaField::Ratio(RatioPair::from_rational(l)?),
        };
        let spherical_classes = model
            .spherical_classes()
            .iter()
            .map(|s| {
                Ok(SphericalEntry {
                    name: s.name.clone(),
                    c1: s.c1,
                    omega: RatioPair::from_rational(&s.omega)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut gw: Vec<GWRowEntry> = model
            .gw_table()
            .rows()
            .map(|(class, args, value)| GWRowEntry {
                class: class.to_string(),
                args,
                value,
            })
            .collect();
        for class in model.gw_table().tabulated_classes() {
            if !gw.iter().any(|r| r.class == class) {
                gw.push(GWRowEntry {
                    class: class.to_string(),
                    args: [0, 0, 0],
                    value: 0,
                });
            }
        }
        Ok(ManifoldDescriptor {
            name: model.name().to_string(),
            dim: model.dim(),
            basis,
            pairing,
            monotone_lambda,
            spherical_classes,
            gw,
        })
    }
}

/// Loads and validates a manifold from descriptor JSON.
pub fn load_manifold_str(json: &str) -> Result<Model> {
    ManifoldDescriptor::from_json(json)?.to_model()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrectionEntry {
    pub alpha: Vec<i64>,
    pub c: i64,
    pub omega_tilde: RatioPair,
}

/// The circle-action descriptor document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionDescriptor {
    pub manifold: String,
    pub max_class: Vec<i64>,
    pub codim: usize,
    #[serde(rename = "K0")]
    pub k0: RatioPair,
    #[serde(default)]
    pub corrections: Vec<CorrectionEntry>,
}

impl ActionDescriptor {
    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    /// Builds the validated action over an already-resolved model.
    pub fn to_action(&self, model: Model) -> Result<CircleActionData> {
        if model.name() != self.manifold {
            return Err(Error::ModelMismatch {
                left: self.manifold.clone(),
                right: model.name().to_string(),
            });
        }
        let max_class = model.class_from_dense(&self.max_class)?;
        let corrections = self
            .corrections
            .iter()
            .map(|c| {
                Ok(Correction {
                    alpha: model.class_from_dense(&c.alpha)?,
                    c: c.c,
                    omega_tilde: c.omega_tilde.to_rational()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CircleActionData::new(
            model,
            max_class,
            self.codim,
            self.k0.to_rational()?,
            corrections,
        )
    }
}

impl ManifoldModel {
    /// The completed Gromov–Witten table.
    pub fn gw_table(&self) -> &crate::gw::GWTable {
        &self.gw
    }
}
