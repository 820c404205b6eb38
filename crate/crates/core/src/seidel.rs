//! Seidel elements of Hamiltonian circle actions and the product-lift
//! verifiers.
//!
//! For a circle action with maximum locus \[M_max\] of codimension `codim`,
//! normalized moment-map maximum K₀ and higher correction data
//! (α_A, c(A), ω̃(A)), the McDuff–Tolman formula gives
//!
//! S(ψ) = \[M_max\] ⊗ q^{codim/2} t^{−K₀} + Σ_{ω̃(A) > K₀} α_A ⊗ q^{−c(A)} t^{−ω̃(A)},
//!
//! a homogeneous element of degree 2n. The verifiers check, term for term,
//! the two product identities
//!
//! * lift:     S(ψ × id_N) = κ(S(ψ))         for aspherical N,
//! * diagonal: S(ψ × ψ)    = κ′(S(ψ))        for aspherical M,
//!
//! computing both sides through independent code paths.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::homology::{HomologyClass, Model};
use crate::kunneth::{product_manifold, ProductModel};
use crate::novikov::{render_rational, NovikovScalar};
use crate::qring::{qmul, try_inverse, QuantumElement};

/// A higher correction term (α_A, c(A), ω̃(A)) of the circle-action formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correction {
    pub alpha: HomologyClass,
    pub c: i64,
    pub omega_tilde: BigRational,
}

/// Validated input data of a Hamiltonian circle action.
#[derive(Debug, Clone)]
pub struct CircleActionData {
    model: Model,
    max_class: HomologyClass,
    codim: usize,
    k0: BigRational,
    corrections: Vec<Correction>,
}

impl CircleActionData {
    /// Checks every structural invariant of the data eagerly.
    pub fn new(
        model: Model,
        max_class: HomologyClass,
        codim: usize,
        k0: BigRational,
        corrections: Vec<Correction>,
    ) -> Result<Self> {
        model.check_owner(&max_class)?;
        if !codim.is_multiple_of(2) || codim > model.dim() {
            return Err(Error::DegreeContractViolation(format!(
                "codimension {codim} invalid on a {}-dimensional model",
                model.dim()
            )));
        }
        let max_degree = model.class_degree(&max_class).map_err(|_| {
            Error::DegreeContractViolation("max class must be nonzero and homogeneous".into())
        })?;
        if max_degree != model.dim() - codim {
            return Err(Error::DegreeContractViolation(format!(
                "max class has degree {max_degree}, expected dim - codim = {}",
                model.dim() - codim
            )));
        }
        if model.is_aspherical() && !corrections.is_empty() {
            return Err(Error::AsphericalViolation(
                model.name().to_string(),
                "an aspherical model has no spherical classes to correct by".into(),
            ));
        }
        let two_n = model.dim() as i64;
        for corr in &corrections {
            model.check_owner(&corr.alpha)?;
            if corr.omega_tilde <= k0 {
                return Err(Error::CorrectionBelowK0 {
                    omega_tilde: render_rational(&corr.omega_tilde),
                    k0: render_rational(&k0),
                });
            }
            let alpha_degree = model.class_degree(&corr.alpha).map_err(|_| {
                Error::DegreeContractViolation(
                    "correction class must be nonzero and homogeneous".into(),
                )
            })?;
            if alpha_degree as i64 - 2 * corr.c != two_n {
                return Err(Error::DegreeContractViolation(format!(
                    "correction term of degree {} with c = {} misses degree 2n = {two_n}",
                    alpha_degree, corr.c
                )));
            }
        }
        Ok(Self {
            model,
            max_class,
            codim,
            k0,
            corrections,
        })
    }

    /// The constant loop: maximum locus is all of M, K₀ = 0.
    pub fn constant_loop(model: &Model) -> Result<Self> {
        let top = model.generator_class(model.top_index());
        Self::new(model.clone(), top, 0, BigRational::zero(), vec![])
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn max_class(&self) -> &HomologyClass {
        &self.max_class
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn k0(&self) -> &BigRational {
        &self.k0
    }

    pub fn corrections(&self) -> &[Correction] {
        &self.corrections
    }

    /// Same action with K₀ shifted; the negative control for the verifiers.
    pub fn with_k0(&self, k0: BigRational) -> Result<Self> {
        Self::new(
            self.model.clone(),
            self.max_class.clone(),
            self.codim,
            k0,
            self.corrections.clone(),
        )
    }
}

/// The element the McDuff–Tolman formula assigns to the action, before any
/// unit requirement.
pub fn mcduff_tolman_element(action: &CircleActionData) -> Result<QuantumElement> {
    let mut terms = Vec::new();
    let lead = NovikovScalar::monomial(1, (action.codim / 2) as i64, -action.k0.clone());
    for (idx, coef) in action.max_class.iter() {
        terms.push((idx, lead.clone().scaled(coef)));
    }
    for corr in &action.corrections {
        let weight = NovikovScalar::monomial(1, -corr.c, -corr.omega_tilde.clone());
        for (idx, coef) in corr.alpha.iter() {
            terms.push((idx, weight.clone().scaled(coef)));
        }
    }
    let element = QuantumElement::from_terms(action.model.clone(), terms);
    let two_n = action.model.dim() as i64;
    match element.degree() {
        Ok(d) if d == two_n => Ok(element),
        Ok(d) => Err(Error::DegreeContractViolation(format!(
            "element has degree {d}, the contract requires 2n = {two_n}"
        ))),
        Err(_) => Err(Error::DegreeContractViolation(
            "element is zero or not homogeneous".into(),
        )),
    }
}

/// A Seidel element: homogeneous of degree 2n and a verified unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeidelElement {
    element: QuantumElement,
    inverse: QuantumElement,
}

impl SeidelElement {
    pub fn element(&self) -> &QuantumElement {
        &self.element
    }

    /// The inverse found (and verified by multiplication) at construction.
    pub fn inverse(&self) -> &QuantumElement {
        &self.inverse
    }

    pub fn is_nontrivial(&self) -> bool {
        is_nontrivial(&self.element)
    }
}

/// Builds the Seidel element of a circle action, enforcing the unit
/// contract eagerly.
pub fn seidel_circle(action: &CircleActionData) -> Result<SeidelElement> {
    let element = mcduff_tolman_element(action)?;
    let inverse = try_inverse(&element)?;
    Ok(SeidelElement { element, inverse })
}

/// Lifts the action along M → M × N for aspherical N: the maximum locus
/// and every correction class pick up ⊗\[N\], while codim, K₀ and the
/// (c, ω̃) weights are unchanged.
pub fn lift_trivial_factor(
    action: &CircleActionData,
    other: &Model,
) -> Result<(ProductModel, CircleActionData)> {
    if !other.is_aspherical() {
        return Err(Error::AsphericalRequired(format!(
            "`{}` has nonzero spherical classes",
            other.name()
        )));
    }
    let product = product_manifold(&action.model, other)?;
    let top_n = other.generator_class(other.top_index());
    let max_class = product.tensor_class(&action.max_class, &top_n)?;
    let corrections = action
        .corrections
        .iter()
        .map(|corr| {
            Ok(Correction {
                alpha: product.tensor_class(&corr.alpha, &top_n)?,
                c: corr.c,
                omega_tilde: corr.omega_tilde.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let lifted = CircleActionData::new(
        product.model().clone(),
        max_class,
        action.codim,
        action.k0.clone(),
        corrections,
    )?;
    Ok((product, lifted))
}

/// The predicted leading term of the diagonal action ψ × ψ on M × M:
/// (M_max ⊗ M_max) ⊗ q^{codim} t^{−2K₀}.
pub fn diagonal_leading_term(action: &CircleActionData) -> Result<(ProductModel, QuantumElement)> {
    let product = product_manifold(&action.model, &action.model)?;
    let element = diagonal_leading_term_in(&product, action)?;
    Ok((product, element))
}

fn diagonal_leading_term_in(
    product: &ProductModel,
    action: &CircleActionData,
) -> Result<QuantumElement> {
    let square = product.tensor_class(&action.max_class, &action.max_class)?;
    let scalar = NovikovScalar::monomial(
        1,
        action.codim as i64,
        -(BigRational::from_integer(2.into()) * &action.k0),
    );
    let terms: Vec<(usize, NovikovScalar)> = square
        .iter()
        .map(|(idx, coef)| (idx, scalar.clone().scaled(coef)))
        .collect();
    Ok(QuantumElement::from_terms(product.model().clone(), terms))
}

/// One differing monomial between two elements over the same model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDiff {
    pub generator: String,
    pub q_exp: i64,
    pub t_exp: BigRational,
    pub left: BigInt,
    pub right: BigInt,
}

impl fmt::Display for TermDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] q^{} t^{}: {} vs {}",
            self.generator,
            self.q_exp,
            render_rational(&self.t_exp),
            self.left,
            self.right
        )
    }
}

/// Monomial-by-monomial difference of two elements.
pub fn diff_elements(left: &QuantumElement, right: &QuantumElement) -> Result<Vec<TermDiff>> {
    if left.model().name() != right.model().name() {
        return Err(Error::ModelMismatch {
            left: left.model().name().to_string(),
            right: right.model().name().to_string(),
        });
    }
    let mut merged: std::collections::BTreeMap<(usize, i64, BigRational), (BigInt, BigInt)> =
        std::collections::BTreeMap::new();
    for (idx, q, t, c) in left.monomials() {
        merged.entry((idx, q, t)).or_default().0 = c;
    }
    for (idx, q, t, c) in right.monomials() {
        merged.entry((idx, q, t)).or_default().1 = c;
    }
    let basis = left.model().basis();
    Ok(merged
        .into_iter()
        .filter(|(_, (l, r))| l != r)
        .map(|((idx, q, t), (l, r))| TermDiff {
            generator: basis[idx].name.clone(),
            q_exp: q,
            t_exp: t,
            left: l,
            right: r,
        })
        .collect())
}

/// Outcome of comparing two independently computed elements.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub equal: bool,
    pub lhs: QuantumElement,
    pub rhs: QuantumElement,
    pub diffs: Vec<TermDiff>,
}

impl VerifyReport {
    fn from_sides(lhs: QuantumElement, rhs: QuantumElement) -> Result<Self> {
        let diffs = diff_elements(&lhs, &rhs)?;
        Ok(VerifyReport {
            equal: diffs.is_empty(),
            lhs,
            rhs,
            diffs,
        })
    }
}

/// Checks S(ψ × id_N) = κ(S(ψ)) by computing the left side through the
/// lifted action's own formula and the right side through the embedding.
pub fn verify_thm1(action: &CircleActionData, other: &Model) -> Result<VerifyReport> {
    let (product, lifted) = lift_trivial_factor(action, other)?;
    let lhs = mcduff_tolman_element(&lifted)?;
    let rhs = product.kappa(&mcduff_tolman_element(action)?)?;
    VerifyReport::from_sides(lhs, rhs)
}

/// Outcome of the diagonal verification.
#[derive(Debug, Clone)]
pub struct Thm2Report {
    /// κ′(S) agrees with κ(S) * κ₀(S).
    pub equal: bool,
    /// The highest-t part of κ′(S) is exactly the predicted leading term.
    pub leading_term_matches: bool,
    pub kappa_prime_side: QuantumElement,
    pub product_side: QuantumElement,
    pub predicted_leading: QuantumElement,
    pub diffs: Vec<TermDiff>,
}

impl Thm2Report {
    pub fn passed(&self) -> bool {
        self.equal && self.leading_term_matches
    }
}

/// Checks κ′(S) = κ(S) * κ₀(S) over M × M for an aspherical M, and that the
/// leading term of κ′(S) is the doubled-exponent term q^{codim} t^{−2K₀} on
/// M_max ⊗ M_max.
pub fn verify_thm2(action: &CircleActionData) -> Result<Thm2Report> {
    if !action.model.is_aspherical() {
        return Err(Error::AsphericalRequired(format!(
            "`{}` has nonzero spherical classes",
            action.model.name()
        )));
    }
    let product = product_manifold(&action.model, &action.model)?;
    let s = mcduff_tolman_element(action)?;
    let kappa_prime_side = product.kappa_prime(&s)?;
    let product_side = qmul(&product.kappa(&s)?, &product.kappa_zero(&s)?)?;
    let diffs = diff_elements(&kappa_prime_side, &product_side)?;

    let predicted_leading = diagonal_leading_term_in(&product, action)?;
    let leading_term_matches = leading_part(&kappa_prime_side) == predicted_leading;

    Ok(Thm2Report {
        equal: diffs.is_empty(),
        leading_term_matches,
        kappa_prime_side,
        product_side,
        predicted_leading,
        diffs,
    })
}

/// The sub-element carrying the maximal t-exponent.
pub fn leading_part(element: &QuantumElement) -> QuantumElement {
    let monomials = element.monomials();
    let Some(max_t) = monomials.iter().map(|(_, _, t, _)| t.clone()).max() else {
        return QuantumElement::zero(element.model().clone());
    };
    QuantumElement::from_terms(
        element.model().clone(),
        monomials
            .into_iter()
            .filter(|(_, _, t, _)| *t == max_t)
            .map(|(idx, q, t, c)| (idx, NovikovScalar::monomial(c, q, t))),
    )
}

/// True when the element differs from the ring identity; by injectivity of
/// κ this certifies the lifted loop as well.
pub fn is_nontrivial(element: &QuantumElement) -> bool {
    !element.is_identity()
}

/// Result of checking claimed products S(ψ₁)·S(ψ₂) = S(ψ₁ψ₂).
#[derive(Debug, Clone)]
pub struct HomReport {
    /// Indices of failing triples with their term diffs.
    pub failures: Vec<(usize, Vec<TermDiff>)>,
    pub checked: usize,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each (S₁, S₂, S₁₂) triple, checks qmul(S₁, S₂) = S₁₂.
pub fn check_homomorphism(
    triples: &[(QuantumElement, QuantumElement, QuantumElement)],
) -> Result<HomReport> {
    let mut failures = Vec::new();
    for (pos, (s1, s2, s12)) in triples.iter().enumerate() {
        let product = qmul(s1, s2)?;
        let diffs = diff_elements(&product, s12)?;
        if !diffs.is_empty() {
            failures.push((pos, diffs));
        }
    }
    Ok(HomReport {
        failures,
        checked: triples.len(),
    })
}
