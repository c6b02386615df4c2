//! Modules over group algebras `kG` of finite groups over finite fields,
//! and the stable category operations on them.

mod decompose;
mod hom;
mod iso;
mod module;
mod projective;
mod radical;
mod recipe;
mod stable;

pub use decompose::{indecomposable_summands, MAX_DECOMPOSE_DIM};
pub use hom::{hom_space, hom_space_naive};
pub use iso::{module_iso, stable_iso, IsoResult};
pub use module::{
    character_module, characters, direct_sum, direct_sum_all, dual, hom_k, permutation_module,
    regular_module, restrict, tensor, trivial_module, GMap, GModule,
};
pub use projective::{
    cosyzygy, pims, projective_cover, stable_hom, strip_projectives, syzygy, syzygy_power, Pim,
    StableHomSpace,
};
pub use radical::{
    jacobson_radical, normal_sylow_generators, radical, radical_with, socle, RadicalMethod,
};
pub use recipe::ModuleRecipe;
pub use stable::{
    composition_matches_tensor, evaluation_is_stably_nonzero, evaluation_map, is_endotrivial,
    tate_h0, tate_h0_module, TateH0,
};

use thiserror::Error;

use crate::exactlin::LinAlgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModRepError {
    #[error("modules are over different groups")]
    GroupMismatch,
    #[error("modules are over different fields")]
    FieldMismatch,
    #[error("matrix shape does not match the modules")]
    DimensionMismatch,
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("matrix does not intertwine the actions")]
    NotIntertwining,
    #[error("module dimension {dim} exceeds the cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("isomorphism search exhausted its bound (hom dimension {hom_dim})")]
    SearchExhausted { hom_dim: usize },
    #[error("character index {index} out of range ({count} characters)")]
    CharacterIndex { index: usize, count: usize },
    #[error("bad module recipe: {0}")]
    BadRecipe(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}
