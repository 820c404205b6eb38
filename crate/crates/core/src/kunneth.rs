//! Product manifolds and the quantum Künneth identification.
//!
//! A [`ProductModel`] is an ordinary [`ManifoldModel`] over the tensor basis
//! {e_ν ⊗ f_μ}, with the Koszul-signed product pairing, the direct-sum
//! spherical lattice, and a Gromov–Witten table generated from the factor
//! tables by the product rule
//!
//! GW^{M×N}_{(A₁,A₂)}(a, b, c) = ε · GW^M_{A₁}(a₁, b₁, c₁) · GW^N_{A₂}(a₂, b₂, c₂),
//!
//! where ε is the interleaving sign of the factor generators. Built on top
//! of it are the three embeddings of QH_*(M):
//!
//! * κ(x)  = x ⊗ \[N\],  a Λ-linear ring homomorphism into QH(M×N),
//! * κ₀(x) = \[M\] ⊗ x,  a Λ-linear ring homomorphism into QH(M×M),
//! * κ′(x) = x ⊗ x,    multiplicative but not additive, doubling degrees
//!   and exponents on monomials.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gw::GWRow;
use crate::homology::{
    koszul_sign, Generator, HomologyClass, ManifoldModel, Model, Monotonicity, SphericalClass,
    ZERO_CLASS,
};
use crate::novikov::render_rational;
use crate::qring::QuantumElement;

/// A product manifold model together with its two factors.
#[derive(Debug, Clone)]
pub struct ProductModel {
    model: Model,
    left: Model,
    right: Model,
}

/// Name given to the product of two spherical classes.
fn product_class_name(left: &str, right: &str) -> String {
    if left == ZERO_CLASS && right == ZERO_CLASS {
        ZERO_CLASS.to_string()
    } else {
        format!("{left}⊗{right}")
    }
}

/// Koszul sign of regrouping (e₁⊗f₁)(e₂⊗f₂)(e₃⊗f₃) into (e₁e₂e₃)⊗(f₁f₂f₃):
/// f₁ moves past e₂ and e₃, then f₂ past e₃.
fn interleave_sign(f1: usize, e2: usize, e3: usize, f2: usize) -> i64 {
    if (f1 * (e2 + e3) + f2 * e3).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Three-point invariant of a product model computed directly from the
/// factor tables, without consulting the generated product table.
pub fn product_gw(
    left: &Model,
    right: &Model,
    class: (&str, &str),
    a: (usize, usize),
    b: (usize, usize),
    c: (usize, usize),
) -> Result<i64> {
    // Every nonzero class on an aspherical factor has vanishing invariants,
    // so spell that out instead of requiring it in the lattice.
    let left_val = if left.is_aspherical() && class.0 != ZERO_CLASS {
        0
    } else {
        left.gw3(class.0, a.0, b.0, c.0)?
    };
    let right_val = if right.is_aspherical() && class.1 != ZERO_CLASS {
        0
    } else {
        right.gw3(class.1, a.1, b.1, c.1)?
    };
    let sign = interleave_sign(
        right.basis()[a.1].degree,
        left.basis()[b.0].degree,
        left.basis()[c.0].degree,
        right.basis()[b.1].degree,
    );
    Ok(sign * left_val * right_val)
}

/// Builds the validated model of M × N.
///
/// The factors must be monotone with the same constant, unless at least one
/// is aspherical and imposes no constraint.
pub fn product_manifold(left: &Model, right: &Model) -> Result<ProductModel> {
    let monotonicity = match (left.monotonicity(), right.monotonicity()) {
        (Monotonicity::Aspherical, Monotonicity::Aspherical) => Monotonicity::Aspherical,
        (Monotonicity::Monotone(l), Monotonicity::Aspherical) => Monotonicity::Monotone(l.clone()),
        (Monotonicity::Aspherical, Monotonicity::Monotone(r)) => Monotonicity::Monotone(r.clone()),
        (Monotonicity::Monotone(l), Monotonicity::Monotone(r)) => {
            if l == r {
                Monotonicity::Monotone(l.clone())
            } else {
                return Err(Error::MonotonicityMismatch {
                    left_model: left.name().to_string(),
                    left: render_rational(l),
                    right_model: right.name().to_string(),
                    right: render_rational(r),
                });
            }
        }
    };

    let nl = left.basis().len();
    let nr = right.basis().len();
    let pack = |i: usize, j: usize| i * nr + j;

    let mut basis = Vec::with_capacity(nl * nr);
    for ei in left.basis() {
        for fj in right.basis() {
            basis.push(Generator {
                name: format!("{}⊗{}", ei.name, fj.name),
                degree: ei.degree + fj.degree,
            });
        }
    }

    let mut pairing = Vec::new();
    for i in 0..nl {
        for j in 0..nr {
            for k in 0..nl {
                for l in 0..nr {
                    let base = left.pairing_entry(i, k) * right.pairing_entry(j, l);
                    if base == 0 {
                        continue;
                    }
                    let sign = koszul_sign(right.basis()[j].degree, left.basis()[k].degree);
                    pairing.push((pack(i, j), pack(k, l), sign * base));
                }
            }
        }
    }

    let mut spherical = Vec::new();
    for ca in left.spherical_classes() {
        for cb in right.spherical_classes() {
            spherical.push(SphericalClass {
                name: product_class_name(&ca.name, &cb.name),
                c1: ca.c1 + cb.c1,
                omega: &ca.omega + &cb.omega,
            });
        }
    }

    let dim = left.dim() + right.dim();
    let mut gw_rows = Vec::new();
    for ca in left.spherical_classes() {
        for cb in right.spherical_classes() {
            let name = product_class_name(&ca.name, &cb.name);
            let required = 2 * dim as i64 - 2 * (ca.c1 + cb.c1);
            let mut any = false;
            for a in 0..nl * nr {
                for b in 0..nl * nr {
                    for c in 0..nl * nr {
                        let degree_sum =
                            (basis[a].degree + basis[b].degree + basis[c].degree) as i64;
                        if degree_sum != required {
                            continue;
                        }
                        let value = product_gw(
                            left,
                            right,
                            (&ca.name, &cb.name),
                            (a / nr, a % nr),
                            (b / nr, b % nr),
                            (c / nr, c % nr),
                        )?;
                        if value != 0 {
                            gw_rows.push(GWRow {
                                class: name.clone(),
                                args: [a, b, c],
                                value,
                            });
                            any = true;
                        }
                    }
                }
            }
            if !any {
                // Zero-valued marker: the class is tabulated, its invariants
                // all vanish.
                gw_rows.push(GWRow {
                    class: name.clone(),
                    args: [0, 0, 0],
                    value: 0,
                });
            }
        }
    }

    let model = ManifoldModel::build(
        format!("{} x {}", left.name(), right.name()),
        dim,
        basis,
        pairing,
        monotonicity,
        spherical,
        gw_rows,
    )?;
    Ok(ProductModel {
        model,
        left: left.clone(),
        right: right.clone(),
    })
}

impl ProductModel {
    /// The product as an ordinary manifold model.
    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn left(&self) -> &Model {
        &self.left
    }

    pub fn right(&self) -> &Model {
        &self.right
    }

    /// Index of e_i ⊗ f_j in the product basis.
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        i * self.right.basis().len() + j
    }

    /// Factor indices of a product basis index.
    pub fn split_index(&self, idx: usize) -> (usize, usize) {
        let nr = self.right.basis().len();
        (idx / nr, idx % nr)
    }

    fn check_left(&self, x: &QuantumElement) -> Result<()> {
        if x.model().name() == self.left.name() {
            Ok(())
        } else {
            Err(Error::ModelMismatch {
                left: self.left.name().to_string(),
                right: x.model().name().to_string(),
            })
        }
    }

    fn check_square(&self) -> Result<()> {
        if self.left.name() == self.right.name() {
            Ok(())
        } else {
            Err(Error::ModelMismatch {
                left: self.left.name().to_string(),
                right: self.right.name().to_string(),
            })
        }
    }

    /// Tensor of homology classes, coefficient-wise on the product basis.
    pub fn tensor_class(&self, a: &HomologyClass, b: &HomologyClass) -> Result<HomologyClass> {
        self.left.check_owner(a)?;
        self.right.check_owner(b)?;
        let entries: Vec<(usize, BigInt)> = a
            .iter()
            .flat_map(|(i, ca)| {
                b.iter()
                    .map(move |(j, cb)| (self.pair_index(i, j), ca * cb))
            })
            .collect();
        Ok(self.model.class_from_entries(entries))
    }

    /// The Künneth embedding x ⊗ y of a pair of factor elements.
    pub fn tensor_embed(&self, x: &QuantumElement, y: &QuantumElement) -> Result<QuantumElement> {
        self.check_left(x)?;
        if y.model().name() != self.right.name() {
            return Err(Error::ModelMismatch {
                left: self.right.name().to_string(),
                right: y.model().name().to_string(),
            });
        }
        let mut out = QuantumElement::zero(self.model.clone());
        for (i, li) in x.terms() {
            for (j, mj) in y.terms() {
                out.add_term(self.pair_index(i, j), li * mj);
            }
        }
        Ok(out)
    }

    /// κ: x ↦ x ⊗ \[N\]. Λ-linear, injective, and a ring homomorphism.
    pub fn kappa(&self, x: &QuantumElement) -> Result<QuantumElement> {
        self.check_left(x)?;
        let top = self.right.top_index();
        let mut out = QuantumElement::zero(self.model.clone());
        for (i, s) in x.terms() {
            out.add_term(self.pair_index(i, top), s.clone());
        }
        Ok(out)
    }

    /// κ₀: x ↦ \[M\] ⊗ x on a square product. Λ-linear ring homomorphism into
    /// the factor complementary to κ's.
    pub fn kappa_zero(&self, x: &QuantumElement) -> Result<QuantumElement> {
        self.check_square()?;
        self.check_left(x)?;
        let top = self.left.top_index();
        let mut out = QuantumElement::zero(self.model.clone());
        for (i, s) in x.terms() {
            out.add_term(self.pair_index(top, i), s.clone());
        }
        Ok(out)
    }

    /// κ′: x ↦ x ⊗ x on a square product. On a homogeneous monomial
    /// α ⊗ q^s t^r this is (α ⊗ α) ⊗ q^{2s} t^{2r}; it is multiplicative but
    /// not additive.
    pub fn kappa_prime(&self, x: &QuantumElement) -> Result<QuantumElement> {
        self.check_square()?;
        self.tensor_embed(x, x)
    }
}

impl ManifoldModel {
    pub(crate) fn class_from_entries(
        &self,
        entries: impl IntoIterator<Item = (usize, BigInt)>,
    ) -> HomologyClass {
        HomologyClass::new_raw(self.name().to_string(), entries)
    }
}
