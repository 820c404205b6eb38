//! JSON payloads for machine-readable output.
//!
//! Every command emits one envelope object; the shape is pinned by
//! `schema/output.schema.json`, which the integration tests enforce.

use serde::Serialize;

use qh_core::descriptor::{ManifoldDescriptor, RatioPair};
use qh_core::qring::{QuantumElement, UnitOrder};
use qh_core::seidel::TermDiff;
use qh_core::Result;

#[derive(Serialize)]
pub struct ElementJson {
    pub model: String,
    pub terms: Vec<TermJson>,
    pub text: String,
}

#[derive(Serialize)]
pub struct TermJson {
    pub generator: String,
    pub coef: String,
    pub q: i64,
    pub t: RatioPair,
}

impl ElementJson {
    pub fn from_element(element: &QuantumElement) -> Result<Self> {
        let basis = element.model().basis();
        let terms = element
            .monomials()
            .into_iter()
            .map(|(idx, q, t, coef)| {
                Ok(TermJson {
                    generator: basis[idx].name.clone(),
                    coef: coef.to_string(),
                    q,
                    t: RatioPair::from_rational(&t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ElementJson {
            model: element.model().name().to_string(),
            terms,
            text: element.to_string(),
        })
    }
}

#[derive(Serialize)]
pub struct OrderJson {
    pub kind: &'static str,
    pub value: u32,
}

impl From<UnitOrder> for OrderJson {
    fn from(order: UnitOrder) -> Self {
        match order {
            UnitOrder::Finite(k) => OrderJson {
                kind: "finite",
                value: k,
            },
            UnitOrder::ExceedsBound(b) => OrderJson {
                kind: "exceeds-bound",
                value: b,
            },
        }
    }
}

#[derive(Serialize)]
pub struct DiffJson {
    pub generator: String,
    pub q: i64,
    pub t: RatioPair,
    pub left: String,
    pub right: String,
}

impl DiffJson {
    pub fn from_diff(diff: &TermDiff) -> Result<Self> {
        Ok(DiffJson {
            generator: diff.generator.clone(),
            q: diff.q_exp,
            t: RatioPair::from_rational(&diff.t_exp)?,
            left: diff.left.to_string(),
            right: diff.right.to_string(),
        })
    }
}

#[derive(Serialize)]
pub struct TableEntryJson {
    pub left: String,
    pub right: String,
    pub product: ElementJson,
}

#[derive(Serialize)]
#[serde(tag = "command")]
pub enum Output {
    #[serde(rename = "table")]
    Table {
        status: &'static str,
        manifold: String,
        entries: Vec<TableEntryJson>,
    },
    #[serde(rename = "qmul")]
    Qmul {
        status: &'static str,
        manifold: String,
        product: ElementJson,
    },
    #[serde(rename = "inverse")]
    Inverse {
        status: &'static str,
        manifold: String,
        inverse: ElementJson,
    },
    #[serde(rename = "order")]
    Order {
        status: &'static str,
        manifold: String,
        order: OrderJson,
    },
    #[serde(rename = "product")]
    Product {
        status: &'static str,
        descriptor: ManifoldDescriptor,
    },
    #[serde(rename = "kappa")]
    Kappa {
        status: &'static str,
        map: String,
        product_manifold: String,
        image: ElementJson,
    },
    #[serde(rename = "seidel")]
    Seidel {
        status: &'static str,
        manifold: String,
        element: ElementJson,
        inverse: ElementJson,
        nontrivial: bool,
    },
    #[serde(rename = "verify-thm1")]
    VerifyThm1 {
        status: &'static str,
        manifold: String,
        with: String,
        lhs: ElementJson,
        rhs: ElementJson,
        diffs: Vec<DiffJson>,
    },
    #[serde(rename = "verify-thm2")]
    VerifyThm2 {
        status: &'static str,
        manifold: String,
        kappa_prime: ElementJson,
        product: ElementJson,
        leading_term_matches: bool,
        predicted_leading: ElementJson,
        diffs: Vec<DiffJson>,
    },
    #[serde(rename = "validate")]
    Validate {
        status: &'static str,
        manifold: String,
        findings: Vec<String>,
    },
}

impl Output {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output serializes")
    }
}
