//! Hash functions, bit generators and set designs shared by the reductions.

mod design;
mod hash;
mod load;
mod small_bias;

pub use design::{
    build_design, build_design_with_cap, design_to_label, polynomial_parameters, DesignFamily, DesignStrategy, Label,
    DEFAULT_VERIFICATION_CAP,
};
pub use hash::{hash_apply, sample_hash, XorHashKeys};
pub use load::{bucket_load_stats, LoadStats};
pub use small_bias::{enumerate_seeds, small_bias_bits, Gf2Field, SmallBiasSpec, DEFAULT_SEED_CAP};
