//! Graded polynomials over named generators and the structure maps of `(BP_*, BP_*BP)`.

mod monomial;
mod poly;
mod series;
mod structure;
mod tensor;

pub use monomial::{is_b, is_t, is_v, Generator, Monomial};
pub use poly::Poly;
pub use series::PowerSeries;
pub use structure::{b_series_coproduct, build_m_v_tables, mu_coproduct_b, BpAlgebra, GeneratorTable};
pub use tensor::Tensor;

/// Normal-form element of `Γ̄^{⊗s} ⊗ M`: `s` pure `t`-slots followed by a module slot.
pub type GammaTensor = Tensor;
