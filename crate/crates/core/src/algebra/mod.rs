//! The doubled algebra `L¹ ⊕ T¹`: pair arithmetic, Gelfand theory and ideals.

pub mod gelfand;
pub mod ideal;
pub mod pair;

pub use gelfand::{character_eval, gelfand_transform, inverse_gelfand, zero_set, DoubledFunction, DoubledPoint};
pub use ideal::{ideal_from_zero_set, saturate_with_operators, IdealBasis, PairSpan, ZeroSet};
pub use pair::{j_map, module_action, pair_involution, pair_modulate, pair_product, pair_shift, QhaPair};
