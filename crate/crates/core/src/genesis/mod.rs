//! Thick generators of `mod R` by recursion on dimension, and certificates
//! that a given module lies in the thick closure.

mod certify;
pub mod factor;
mod filtration;
mod generator;
mod primes;

pub use certify::{certify_module, find_section};
pub use filtration::{prime_filtration, FiltrationLevel, PrimeFiltration};
pub use generator::{
    build_generator, find_inverting_element, is_attested_domain, is_regular, GenKind, GenNode, GeneratorResult,
    PrimeTrace, TraceNode,
};
pub use primes::{minimal_primes, ring_minimal_primes, AttestationStatus, PrimeAttestation, PrimeHints};
