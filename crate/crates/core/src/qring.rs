//! The small quantum homology ring QH_*(M; Λ).
//!
//! Elements are finite sums of basis generators with Novikov scalar
//! coefficients. The product of basis classes is
//!
//! a * b = Σ_ν Σ_A GW_A(a, b, e_ν) e*_ν ⊗ q^{−c₁(A)} t^{−ω(A)},
//!
//! summed over the spherical-class lattice and the homology basis, and
//! extended Λ-bilinearly. The fundamental class is the identity. On an
//! aspherical model only A = 0 contributes and the product collapses to the
//! classical intersection product.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::homology::Model;
use crate::novikov::{parse_monomial, NovikovScalar};

/// An element of QH_*(M; Λ): a finite sum of basis generators with nonzero
/// Novikov scalars.
#[derive(Debug, Clone)]
pub struct QuantumElement {
    model: Model,
    terms: BTreeMap<usize, NovikovScalar>,
}

impl PartialEq for QuantumElement {
    fn eq(&self, other: &Self) -> bool {
        self.model.name() == other.model.name() && self.terms == other.terms
    }
}

impl Eq for QuantumElement {}

impl QuantumElement {
    pub fn zero(model: Model) -> Self {
        Self {
            model,
            terms: BTreeMap::new(),
        }
    }

    /// The fundamental class with scalar 1: the ring identity.
    pub fn identity(model: Model) -> Self {
        let top = model.top_index();
        Self::from_terms(model, [(top, NovikovScalar::one())])
    }

    /// A single basis generator with scalar 1.
    pub fn generator(model: Model, idx: usize) -> Self {
        Self::from_terms(model, [(idx, NovikovScalar::one())])
    }

    /// Builds an element, dropping zero scalars and merging duplicates.
    pub fn from_terms(
        model: Model,
        entries: impl IntoIterator<Item = (usize, NovikovScalar)>,
    ) -> Self {
        let mut out = Self::zero(model);
        for (idx, scalar) in entries {
            out.add_term(idx, scalar);
        }
        out
    }

    pub(crate) fn add_term(&mut self, idx: usize, scalar: NovikovScalar) {
        if scalar.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(scalar);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &scalar;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&self.model.top_index())
                .is_some_and(|s| s.is_one())
    }

    /// Iterates (basis index, scalar) pairs in index order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &NovikovScalar)> {
        self.terms.iter().map(|(i, s)| (*i, s))
    }

    pub fn scalar_at(&self, idx: usize) -> NovikovScalar {
        self.terms
            .get(&idx)
            .cloned()
            .unwrap_or_else(NovikovScalar::zero)
    }

    /// Flattens into (basis index, q_exp, t_exp, coefficient) quadruples.
    pub fn monomials(&self) -> Vec<(usize, i64, BigRational, BigInt)> {
        let mut out = Vec::new();
        for (idx, scalar) in &self.terms {
            for (q, t, c) in scalar.terms() {
                out.push((*idx, q, t.clone(), c.clone()));
            }
        }
        out
    }

    pub fn scaled(&self, by: &NovikovScalar) -> Self {
        let mut out = Self::zero(self.model.clone());
        for (&idx, s) in &self.terms {
            out.add_term(idx, s * by);
        }
        out
    }

    /// Degree of a nonzero homogeneous element: generator degree plus scalar
    /// degree, equal across terms.
    pub fn degree(&self) -> Result<i64> {
        let mut degrees = self.terms.iter().map(|(&idx, s)| {
            s.degree()
                .map(|d| d + self.model.basis()[idx].degree as i64)
        });
        let first = degrees.next().ok_or(Error::ZeroElement)??;
        for d in degrees {
            if d? != first {
                return Err(Error::NonHomogeneous(format!(
                    "terms of mixed degree over `{}`",
                    self.model.name()
                )));
            }
        }
        Ok(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().is_ok()
    }

    fn check_same_model(&self, other: &Self) -> Result<()> {
        if self.model.name() == other.model.name() {
            Ok(())
        } else {
            Err(Error::ModelMismatch {
                left: self.model.name().to_string(),
                right: other.model.name().to_string(),
            })
        }
    }
}

impl Add for &QuantumElement {
    type Output = QuantumElement;
    /// Panics when the operands live over different models; use explicit
    /// embeddings to move between rings.
    fn add(self, rhs: &QuantumElement) -> QuantumElement {
        self.check_same_model(rhs)
            .expect("sum over mismatched models");
        let mut out = self.clone();
        for (&idx, s) in &rhs.terms {
            out.add_term(idx, s.clone());
        }
        out
    }
}

impl Sub for &QuantumElement {
    type Output = QuantumElement;
    fn sub(self, rhs: &QuantumElement) -> QuantumElement {
        self.check_same_model(rhs)
            .expect("difference over mismatched models");
        let mut out = self.clone();
        for (&idx, s) in &rhs.terms {
            out.add_term(idx, -s);
        }
        out
    }
}

impl Neg for &QuantumElement {
    type Output = QuantumElement;
    fn neg(self) -> QuantumElement {
        let mut out = QuantumElement::zero(self.model.clone());
        for (&idx, s) in &self.terms {
            out.add_term(idx, -s);
        }
        out
    }
}

/// Quantum product of two basis generators, before Λ-bilinear extension.
fn basis_pair_product(model: &Model, i: usize, j: usize) -> Result<QuantumElement> {
    let mut out = QuantumElement::zero(model.clone());
    for class in model.spherical_classes() {
        let shift_q = -class.c1;
        let shift_t = -&class.omega;
        for nu in 0..model.basis().len() {
            let count = model.gw3(&class.name, i, j, nu)?;
            if count == 0 {
                continue;
            }
            for (k, coef) in model.dual_basis()[nu].iter() {
                out.add_term(
                    k,
                    NovikovScalar::monomial(coef * BigInt::from(count), shift_q, shift_t.clone()),
                );
            }
        }
    }
    Ok(out)
}

/// The quantum product, extended Λ-bilinearly from basis pairs.
pub fn qmul(x: &QuantumElement, y: &QuantumElement) -> Result<QuantumElement> {
    x.check_same_model(y)?;
    let model = x.model().clone();
    let mut out = QuantumElement::zero(model.clone());
    for (i, li) in x.terms() {
        for (j, mj) in y.terms() {
            let base = basis_pair_product(&model, i, j)?;
            let scale = li * mj;
            for (k, s) in base.terms() {
                out.add_term(k, s * &scale);
            }
        }
    }
    Ok(out)
}

/// Order of a unit under quantum multiplication, up to a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitOrder {
    Finite(u32),
    ExceedsBound(u32),
}

impl fmt::Display for UnitOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitOrder::Finite(k) => write!(f, "{k}"),
            UnitOrder::ExceedsBound(b) => write!(f, "exceeds bound {b}"),
        }
    }
}

/// Inverse of a homogeneous unit, found by an exact linear solve over Λ and
/// then verified by multiplication; the verification is the contract.
#[allow(clippy::needless_range_loop)]
pub fn try_inverse(x: &QuantumElement) -> Result<QuantumElement> {
    if x.is_zero() {
        return Err(Error::NotAUnit);
    }
    match x.degree() {
        Ok(_) => {}
        Err(Error::MixedDegrees) | Err(Error::NonHomogeneous(_)) => {
            return Err(Error::NonHomogeneous(format!(
                "inverse requires a homogeneous element over `{}`",
                x.model().name()
            )))
        }
        Err(e) => return Err(e),
    }
    let model = x.model().clone();
    let n = model.basis().len();
    // Column ν holds the scalar coordinates of x * e_ν.
    let mut matrix = vec![vec![NovikovScalar::zero(); n]; n];
    for nu in 0..n {
        let col = qmul(x, &QuantumElement::generator(model.clone(), nu))?;
        for (mu, s) in col.terms() {
            matrix[mu][nu] = s.clone();
        }
    }
    let mut rhs = vec![NovikovScalar::zero(); n];
    rhs[model.top_index()] = NovikovScalar::one();
    let solution = solve_scalar_system(matrix, rhs).ok_or(Error::NotAUnit)?;
    let candidate = QuantumElement::from_terms(model, solution.into_iter().enumerate());
    if qmul(x, &candidate)?.is_identity() {
        Ok(candidate)
    } else {
        Err(Error::NotAUnit)
    }
}

/// Smallest k ≤ bound with x^k = 1, by repeated multiplication.
pub fn unit_order(x: &QuantumElement, bound: u32) -> Result<UnitOrder> {
    try_inverse(x)?;
    let mut power = x.clone();
    for k in 1..=bound {
        if power.is_identity() {
            return Ok(UnitOrder::Finite(k));
        }
        power = qmul(&power, x)?;
    }
    Ok(UnitOrder::ExceedsBound(bound))
}

/// A formal quotient of Novikov scalars, used only inside the solver.
#[derive(Debug, Clone)]
struct Frac {
    num: NovikovScalar,
    den: NovikovScalar,
}

impl Frac {
    fn from_scalar(s: NovikovScalar) -> Self {
        Frac {
            num: s,
            den: NovikovScalar::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Keeps fractions small where it is free: a unit-monomial denominator
    /// divides exactly into the numerator.
    fn normalize(mut self) -> Self {
        if self.num.is_zero() {
            self.den = NovikovScalar::one();
        } else if !self.den.is_one() {
            if let Some(q) = self.num.exact_div(&self.den) {
                self.num = q;
                self.den = NovikovScalar::one();
            }
        }
        self
    }

    fn mul(&self, other: &Frac) -> Frac {
        Frac {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
        .normalize()
    }

    fn sub(&self, other: &Frac) -> Frac {
        Frac {
            num: &(&self.num * &other.den) - &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
        .normalize()
    }

    fn div(&self, other: &Frac) -> Option<Frac> {
        if other.is_zero() {
            return None;
        }
        Some(
            Frac {
                num: &self.num * &other.den,
                den: &self.den * &other.num,
            }
            .normalize(),
        )
    }

    fn into_scalar(self) -> Option<NovikovScalar> {
        self.num.exact_div(&self.den)
    }

    /// Pivot preference: fewer terms first.
    fn complexity(&self) -> usize {
        self.num.term_count() + self.den.term_count()
    }
}

/// Gauss–Jordan elimination over the fraction field of Λ. Returns None when
/// the system is inconsistent or a coordinate fails to land back in Λ.
#[allow(clippy::needless_range_loop)]
fn solve_scalar_system(
    matrix: Vec<Vec<NovikovScalar>>,
    rhs: Vec<NovikovScalar>,
) -> Option<Vec<NovikovScalar>> {
    let n = rhs.len();
    let mut a: Vec<Vec<Frac>> = matrix
        .into_iter()
        .map(|row| row.into_iter().map(Frac::from_scalar).collect())
        .collect();
    let mut b: Vec<Frac> = rhs.into_iter().map(Frac::from_scalar).collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0;
    for col in 0..n {
        let pivot = (next_row..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].complexity());
        let Some(pivot) = pivot else { continue };
        a.swap(next_row, pivot);
        b.swap(next_row, pivot);
        for r in 0..n {
            if r == next_row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].div(&a[next_row][col])?;
            for c in col..n {
                let delta = factor.mul(&a[next_row][c]);
                a[r][c] = a[r][c].sub(&delta);
            }
            let delta = factor.mul(&b[next_row]);
            b[r] = b[r].sub(&delta);
        }
        pivots.push((next_row, col));
        next_row += 1;
        if next_row == n {
            break;
        }
    }
    for r in next_row..n {
        if !b[r].is_zero() {
            return None;
        }
    }
    let mut solution = vec![NovikovScalar::zero(); n];
    for (row, col) in pivots {
        let value = b[row].div(&a[row][col])?;
        solution[col] = value.into_scalar()?;
    }
    Some(solution)
}

impl fmt::Display for QuantumElement {
    /// Renders terms as `coef*q^a*t^p/q [generator]` joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, scalar) in &self.terms {
            let name = &self.model.basis()[*idx].name;
            for (q, t, c) in scalar.terms() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let piece = NovikovScalar::monomial(c.clone(), q, t.clone());
                write!(f, "{piece} [{name}]")?;
            }
        }
        Ok(())
    }
}

/// Parses the rendering grammar back into an element over the given model.
/// A bare `[generator]` term means coefficient 1.
pub fn parse_element(model: &Model, text: &str) -> Result<QuantumElement> {
    let text = text.trim();
    let mut out = QuantumElement::zero(model.clone());
    if text == "0" {
        return Ok(out);
    }
    for term in text.split(" + ") {
        let term = term.trim();
        let (scalar, name) = if let Some(name) = term.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated generator in `{term}`")))?;
            (NovikovScalar::one(), name)
        } else {
            let (mono, rest) = term
                .split_once(' ')
                .ok_or_else(|| Error::Parse(format!("missing generator in `{term}`")))?;
            let name = rest
                .trim()
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("malformed generator in `{term}`")))?;
            let (coef, q, t) = parse_monomial(mono)?;
            (NovikovScalar::monomial(coef, q, t), name)
        };
        let idx = model.generator_index(name)?;
        out.add_term(idx, scalar);
    }
    Ok(out)
}

/// One line per basis pair: `e_i * e_j = <element>`.
pub fn multiplication_table(model: &Model) -> Result<String> {
    let mut lines = Vec::new();
    for i in 0..model.basis().len() {
        for j in 0..model.basis().len() {
            let product = qmul(
                &QuantumElement::generator(model.clone(), i),
                &QuantumElement::generator(model.clone(), j),
            )?;
            lines.push(format!(
                "{} * {} = {}",
                model.basis()[i].name,
                model.basis()[j].name,
                product
            ));
        }
    }
    Ok(lines.join("\n"))
}
