//! Direct residue sums over the Farey classes 𝓐, 𝓑, 𝓒, 𝓓, 𝓔, the sum of the
//! first waves, and the identity tying them to `p_N(n)`.

mod classes;
mod identity;
mod sine;

pub use classes::{e_phi, in_named_class, sum_a1, sum_b, sum_c, sum_d1, sum_e1, ClassId, ClassSum};
pub use identity::{first_waves, key_identity_check, key_identity_report, IdentityReport, FIRST_WAVES};
pub use sine::{sine_product, sine_product_main_term};
