//! Fixed-locus censuses for the Hilbert square of a K3 and for the Fano
//! variety of lines of a cubic fourfold.

pub mod cyclotomic;
mod fano;
mod hilbert;
pub mod mpoly;

pub use cyclotomic::Eisenstein;
pub use fano::{
    count_distinct, fano_census, fano_fixed_k3_equation, fermat_27_lines, fermat_cubic, involution_signs,
    residue_factor, residue_numerator, residue_sign, CubicData, FanoCensus, FermatLine, FormTerm, FromRational,
    K3Equation, K3SpotCheck, Symmetry,
};
pub use hilbert::{hilbert_census, hilbert_invariant_dims, HilbertCensusInput, InvariantDims, K3_H11};
pub use mpoly::MPoly;
