//! Seeded random generators shared by the unit tests.

use rand::rngs::StdRng;
use rand::Rng;

use crate::homology::Model;
use crate::novikov::{rational, NovikovScalar};
use crate::qring::QuantumElement;

pub fn random_scalar(rng: &mut StdRng) -> NovikovScalar {
    let mut s = NovikovScalar::zero();
    for _ in 0..rng.gen_range(0..=2) {
        s = &s
            + &NovikovScalar::monomial(
                rng.gen_range(-5i64..=5),
                rng.gen_range(-2i64..=2),
                rational(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3)),
            );
    }
    s
}

pub fn random_element(model: &Model, rng: &mut StdRng) -> QuantumElement {
    let n = model.basis().len();
    let mut out = QuantumElement::zero(model.clone());
    for _ in 0..rng.gen_range(1..=3) {
        out.add_term(rng.gen_range(0..n), random_scalar(rng));
    }
    out
}

/// Random element homogeneous of the given total degree (possibly zero).
pub fn random_homogeneous(model: &Model, degree: i64, rng: &mut StdRng) -> QuantumElement {
    let mut out = QuantumElement::zero(model.clone());
    for (idx, g) in model.basis().iter().enumerate() {
        let gap = degree - g.degree as i64;
        if gap % 2 != 0 {
            continue;
        }
        for _ in 0..rng.gen_range(0..=1) {
            let coef = rng.gen_range(-4i64..=4);
            out.add_term(
                idx,
                NovikovScalar::monomial(
                    coef,
                    gap / 2,
                    rational(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=2)),
                ),
            );
        }
    }
    out
}
