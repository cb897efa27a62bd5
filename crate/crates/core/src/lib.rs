pub mod backend;
pub mod cli;
pub mod decomposition;
pub mod equivalence;
pub mod filtration;
pub mod monomial;
pub mod numeric;
pub mod omega;
pub mod poset;
pub mod ring;
