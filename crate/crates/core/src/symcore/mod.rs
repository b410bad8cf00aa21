//! Exact partition combinatorics and symmetric-function algebra.

pub mod jack;
pub mod partition;
pub mod schur;
pub mod sympoly;

pub use jack::{a_coefficient, hook_products, jack_in_powersums, jack_norm, JackBlock, JackTable};
pub use partition::{
    dominance, dominance_linear_extension, enumerate_partitions, partitions_up_to, Dominance, Partition, TieBreak,
};
pub use schur::{schur_in_powersums, CharacterTable};
pub use sympoly::{inner_product, power_sum_norm, Alpha, PowerSumValues, SymPoly};
