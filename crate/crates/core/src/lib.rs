//! Finite presentations, Todd-Coxeter coset enumeration, regular-representation
//! group arithmetic, and the group `nu(G)` with its distinguished subgroups.

pub mod coset_enum;
pub mod kernel;
pub mod nu;
pub mod presentation;
pub mod tensor;
pub mod verify;

pub use coset_enum::{enumerate, enumerate_with, CosetTable, EnumError, EnumLimits, EnumStrategy};
pub use kernel::{
    direct_product_engine, hom_from_gen_images, to_regular_engine, CayleyEngine, Fingerprint, Homomorphism,
    KernelError, QuotientEngine, SubgroupSet,
};
pub use presentation::{cayley_presentation, parse_group, parse_presentation, Presentation, Word};
pub use nu::{build_nu, build_nu_presentation, Named, NuContext, NuError, NuOptions, NuStrategy};
