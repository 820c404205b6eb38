//! Built-in desk-scale catalog: the point, S², CP², and the surfaces Σ₁, Σ₂,
//! plus example circle actions; all shipped as descriptor JSON and loaded
//! through the ordinary validation path.
//!
//! Normalization: symplectic areas are fixed by ω(line) = 1 on S² and CP²,
//! which pins λ to 1/2 and 1/3 respectively.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::descriptor::{load_manifold_str, ActionDescriptor};
use crate::homology::Model;
use crate::seidel::CircleActionData;

const POINT: &str = include_str!("../catalog/point.json");
const S2: &str = include_str!("../catalog/s2.json");
const CP2: &str = include_str!("../catalog/cp2.json");
const SIGMA1: &str = include_str!("../catalog/sigma1.json");
const SIGMA2: &str = include_str!("../catalog/sigma2.json");

const S2_ROTATION: &str = include_str!("../catalog/actions/s2-rotation.json");
const CP2_ROTATION: &str = include_str!("../catalog/actions/cp2-rotation.json");
const SIGMA2_SYNTHETIC: &str = include_str!("../catalog/actions/sigma2-synthetic.json");

/// Names of the built-in manifold models.
pub fn builtin_names() -> &'static [&'static str] {
    &["point", "s2", "cp2", "sigma1", "sigma2"]
}

/// Raw descriptor JSON of a built-in model.
pub fn builtin_descriptor(name: &str) -> Option<&'static str> {
    match name {
        "point" => Some(POINT),
        "s2" => Some(S2),
        "cp2" => Some(CP2),
        "sigma1" => Some(SIGMA1),
        "sigma2" => Some(SIGMA2),
        _ => None,
    }
}

/// A built-in model by name; the shipped files validate, so loading them
/// cannot fail.
pub fn builtin(name: &str) -> Option<Model> {
    static CACHE: OnceLock<BTreeMap<&'static str, Model>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        builtin_names()
            .iter()
            .map(|&n| {
                let model = load_manifold_str(builtin_descriptor(n).unwrap())
                    .unwrap_or_else(|e| panic!("catalog model `{n}` failed to load: {e}"));
                (n, model)
            })
            .collect()
    });
    cache.get(name).cloned()
}

/// Names of the built-in circle actions.
pub fn builtin_action_names() -> &'static [&'static str] {
    &["s2-rotation", "cp2-rotation", "sigma2-synthetic"]
}

/// Raw descriptor JSON of a built-in action.
pub fn builtin_action_descriptor(name: &str) -> Option<&'static str> {
    match name {
        "s2-rotation" => Some(S2_ROTATION),
        "cp2-rotation" => Some(CP2_ROTATION),
        "sigma2-synthetic" => Some(SIGMA2_SYNTHETIC),
        _ => None,
    }
}

/// A built-in circle action by name, resolved against its catalog model.
pub fn builtin_action(name: &str) -> Option<CircleActionData> {
    let json = builtin_action_descriptor(name)?;
    let desc = ActionDescriptor::from_json(json).expect("shipped action parses");
    let model = builtin(&desc.manifold).expect("shipped action references a catalog model");
    Some(desc.to_action(model).expect("shipped action validates"))
}
