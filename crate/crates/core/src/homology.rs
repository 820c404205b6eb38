//! Graded homology of a catalog manifold: basis, intersection pairing,
//! dual bases, and the spherical-class lattice carrying c₁ and ω.
//!
//! A [`ManifoldModel`] is the algebraic shadow of a closed manifold. It is
//! validated once, eagerly, when built; afterwards it is immutable and all
//! operations on it are pure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gw::{GWRow, GWTable};

/// Name reserved for the zero spherical class.
pub const ZERO_CLASS: &str = "0";

/// Sign picked up when two homogeneous classes of the given degrees are
/// transposed.
pub(crate) fn koszul_sign(d1: usize, d2: usize) -> i64 {
    if d1 % 2 == 1 && d2 % 2 == 1 {
        -1
    } else {
        1
    }
}

/// A homology basis generator with its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// Whether every spherical class satisfies ω(A) = λ·c₁(A), or no nonzero
/// spherical class exists at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Monotonicity {
    Aspherical,
    Monotone(BigRational),
}

impl Monotonicity {
    pub fn is_aspherical(&self) -> bool {
        matches!(self, Monotonicity::Aspherical)
    }
}

/// A spherical homology class with its Chern number and symplectic area.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalClass {
    pub name: String,
    pub c1: i64,
    pub omega: BigRational,
}

/// An integer combination of basis generators of one model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyClass {
    model: String,
    coeffs: BTreeMap<usize, BigInt>,
}

impl HomologyClass {
    pub(crate) fn new_raw(
        model: String,
        entries: impl IntoIterator<Item = (usize, BigInt)>,
    ) -> Self {
        let mut coeffs = BTreeMap::new();
        for (idx, c) in entries {
            if c.is_zero() {
                continue;
            }
            let slot = coeffs.entry(idx).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                coeffs.remove(&idx);
            }
        }
        Self { model, coeffs }
    }

    /// Name of the owning model.
    pub fn model(&self) -> &str {
        &self.model
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, idx: usize) -> BigInt {
        self.coeffs.get(&idx).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }
}

/// The validated algebraic model of a closed manifold.
#[derive(Debug)]
pub struct ManifoldModel {
    pub(crate) name: String,
    pub(crate) dim: usize,
    pub(crate) basis: Vec<Generator>,
    pub(crate) pairing: Vec<Vec<i64>>,
    pub(crate) monotonicity: Monotonicity,
    pub(crate) spherical: Vec<SphericalClass>,
    pub(crate) gw: GWTable,
    pub(crate) duals: Vec<HomologyClass>,
    pub(crate) top: usize,
}

/// Shared handle to an immutable model.
pub type Model = Arc<ManifoldModel>;

impl ManifoldModel {
    /// Builds and validates a model from raw parts. Every invariant is
    /// checked here; the returned model never changes.
    pub fn build(
        name: impl Into<String>,
        dim: usize,
        basis: Vec<Generator>,
        pairing_entries: Vec<(usize, usize, i64)>,
        monotonicity: Monotonicity,
        spherical: Vec<SphericalClass>,
        gw_rows: Vec<GWRow>,
    ) -> Result<Model> {
        let name = name.into();
        if !dim.is_multiple_of(2) {
            return Err(Error::Parse(format!("model `{name}`: dim {dim} is odd")));
        }
        if basis.is_empty() {
            return Err(Error::Parse(format!("model `{name}`: empty basis")));
        }
        let mut seen = BTreeSet::new();
        for g in &basis {
            if g.degree > dim {
                return Err(Error::Parse(format!(
                    "model `{name}`: generator `{}` has degree {} > dim {dim}",
                    g.name, g.degree
                )));
            }
            if !seen.insert(g.name.clone()) {
                return Err(Error::Parse(format!(
                    "model `{name}`: duplicate generator name `{}`",
                    g.name
                )));
            }
        }
        let tops: Vec<usize> = (0..basis.len())
            .filter(|&i| basis[i].degree == dim)
            .collect();
        let top = match tops.as_slice() {
            [t] => *t,
            _ => {
                return Err(Error::Parse(format!(
                    "model `{name}`: expected exactly one degree-{dim} generator, found {}",
                    tops.len()
                )))
            }
        };

        let n = basis.len();
        let mut pairing = vec![vec![0i64; n]; n];
        for (i, j, v) in pairing_entries {
            if i >= n || j >= n {
                return Err(Error::Parse(format!(
                    "model `{name}`: pairing entry ({i},{j}) out of range"
                )));
            }
            if v != 0 && basis[i].degree + basis[j].degree != dim {
                return Err(Error::Parse(format!(
                    "model `{name}`: pairing entry ({i},{j}) pairs degrees {} and {}",
                    basis[i].degree, basis[j].degree
                )));
            }
            pairing[i][j] = v;
        }
        for i in 0..n {
            for j in 0..n {
                let expected = koszul_sign(basis[i].degree, basis[j].degree) * pairing[j][i];
                if pairing[i][j] != expected {
                    return Err(Error::Parse(format!(
                        "model `{name}`: pairing is not graded-symmetric at ({i},{j})"
                    )));
                }
            }
        }

        let inverse = invert_integer_matrix(&pairing)
            .ok_or_else(|| Error::NonUnimodularPairing(name.clone()))?;
        let mut duals = Vec::with_capacity(n);
        for row in &inverse {
            let mut entries = Vec::new();
            for (j, v) in row.iter().enumerate() {
                if !v.denom().is_one() {
                    return Err(Error::NonUnimodularPairing(name.clone()));
                }
                entries.push((j, v.numer().clone()));
            }
            duals.push(HomologyClass::new_raw(name.clone(), entries));
        }

        let mut class_names = BTreeSet::new();
        for class in &spherical {
            if !class_names.insert(class.name.clone()) {
                return Err(Error::Parse(format!(
                    "model `{name}`: duplicate spherical class `{}`",
                    class.name
                )));
            }
        }
        let zero_ok = spherical
            .iter()
            .any(|c| c.name == ZERO_CLASS && c.c1 == 0 && c.omega.is_zero());
        if !zero_ok {
            return Err(Error::Parse(format!(
                "model `{name}`: spherical lattice must contain the zero class \
                 `{ZERO_CLASS}` with c1 = 0 and omega = 0"
            )));
        }
        match &monotonicity {
            Monotonicity::Aspherical => {
                if spherical.len() != 1 {
                    return Err(Error::AsphericalViolation(
                        name.clone(),
                        "nonzero spherical class listed on an aspherical model".into(),
                    ));
                }
            }
            Monotonicity::Monotone(lambda) => {
                if !lambda.is_positive() {
                    return Err(Error::Parse(format!(
                        "model `{name}`: monotonicity constant must be positive"
                    )));
                }
                for class in &spherical {
                    let expected = lambda * BigRational::from_integer(BigInt::from(class.c1));
                    if class.omega != expected {
                        return Err(Error::MonotonicityViolation {
                            model: name.clone(),
                            class: class.name.clone(),
                        });
                    }
                }
            }
        }

        let gw = GWTable::build(&name, gw_rows, &basis, dim, &spherical, &monotonicity)?;

        Ok(Arc::new(ManifoldModel {
            name,
            dim,
            basis,
            pairing,
            monotonicity,
            spherical,
            gw,
            duals,
            top,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Real dimension 2n.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Half the dimension.
    pub fn half_dim(&self) -> usize {
        self.dim / 2
    }

    pub fn basis(&self) -> &[Generator] {
        &self.basis
    }

    pub fn monotonicity(&self) -> &Monotonicity {
        &self.monotonicity
    }

    pub fn is_aspherical(&self) -> bool {
        self.monotonicity.is_aspherical()
    }

    pub fn spherical_classes(&self) -> &[SphericalClass] {
        &self.spherical
    }

    pub fn spherical_class(&self, class: &str) -> Result<&SphericalClass> {
        self.spherical
            .iter()
            .find(|c| c.name == class)
            .ok_or_else(|| Error::UnknownClass {
                model: self.name.clone(),
                class: class.to_string(),
            })
    }

    pub fn pairing_entry(&self, i: usize, j: usize) -> i64 {
        self.pairing[i][j]
    }

    /// Index of the fundamental class generator.
    pub fn top_index(&self) -> usize {
        self.top
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::Parse(format!("no generator `{name}` on `{}`", self.name)))
    }

    /// The class of a single basis generator.
    pub fn generator_class(&self, idx: usize) -> HomologyClass {
        HomologyClass::new_raw(self.name.clone(), [(idx, BigInt::one())])
    }

    pub fn zero_class(&self) -> HomologyClass {
        HomologyClass::new_raw(self.name.clone(), [])
    }

    /// Builds a class from one coefficient per basis generator.
    pub fn class_from_dense(&self, coeffs: &[i64]) -> Result<HomologyClass> {
        if coeffs.len() != self.basis.len() {
            return Err(Error::Parse(format!(
                "expected {} coefficients for `{}`, got {}",
                self.basis.len(),
                self.name,
                coeffs.len()
            )));
        }
        Ok(HomologyClass::new_raw(
            self.name.clone(),
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (i, BigInt::from(c))),
        ))
    }

    pub(crate) fn check_owner(&self, class: &HomologyClass) -> Result<()> {
        if class.model == self.name {
            Ok(())
        } else {
            Err(Error::ModelMismatch {
                left: self.name.clone(),
                right: class.model.clone(),
            })
        }
    }

    /// Degree of a nonzero homogeneous class.
    pub fn class_degree(&self, class: &HomologyClass) -> Result<usize> {
        self.check_owner(class)?;
        let mut degrees = class.coeffs.keys().map(|&i| self.basis[i].degree);
        let first = degrees.next().ok_or(Error::ZeroElement)?;
        if degrees.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::NonHomogeneous(format!(
                "class mixes degrees on `{}`",
                self.name
            )))
        }
    }

    /// Bilinear extension of the intersection pairing.
    pub fn intersect(&self, a: &HomologyClass, b: &HomologyClass) -> Result<BigInt> {
        self.check_owner(a)?;
        self.check_owner(b)?;
        let mut total = BigInt::zero();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                let p = self.pairing[i][j];
                if p != 0 {
                    total += ca * cb * BigInt::from(p);
                }
            }
        }
        Ok(total)
    }

    /// The dual basis {e*_ν} with e*_ν · e_μ = δ_{ν,μ}, precomputed from the
    /// inverse of the pairing matrix.
    pub fn dual_basis(&self) -> &[HomologyClass] {
        &self.duals
    }
}

impl fmt::Display for ManifoldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim)
    }
}

/// Inverts a square integer matrix over the rationals; None when singular.
fn invert_integer_matrix(m: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut work: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        inv.swap(col, pivot);
        let p = work[col][col].clone();
        for j in 0..n {
            work[col][j] = &work[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let factor = work[r][col].clone();
            for j in 0..n {
                let w = &work[col][j] * &factor;
                work[r][j] = &work[r][j] - &w;
                let v = &inv[col][j] * &factor;
                inv[r][j] = &inv[r][j] - &v;
            }
        }
    }
    Some(inv)
}
