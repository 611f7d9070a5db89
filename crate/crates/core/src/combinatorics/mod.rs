//! Exact number theory: Bernoulli and Stirling numbers, Möbius and Ramanujan
//! sums, Farey fractions and partition counts.

mod arith;
mod bernoulli;
pub mod cache;
mod farey;
mod partitions;

pub use arith::{divisors, euler_phi, factorize, gcd, mobius, ramanujan_sum};
pub use bernoulli::{bernoulli, bernoulli_number, bernoulli_numbers, bernoulli_poly, stirling2};
pub use farey::{farey_enumerate, fractions_with_denominator, FareyFraction};
pub use partitions::{
    denumerant_count, divides_some, p_restricted, partition_hrr_terms, partition_p, partition_p_hrr,
    partition_table, power_sum_residue, selberg_a,
};
pub use rug::{Integer, Rational};
