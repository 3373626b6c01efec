//! Table groups, finite abelian groups in invariant-factor form, and the
//! integer linear algebra behind kernels and cokernels.

pub mod abelian;
pub mod finite_group;
pub mod intmat;
pub(crate) mod modular;

pub use abelian::{AbCokernel, AbElement, AbHom, AbKernel, FinAbGroup};
pub use finite_group::{
    abelian_structure, group_isomorphisms, AbelianStructure, FiniteGroup, GroupHom,
};
pub use intmat::{smith_normal_form, IntMatrix, SNFResult};
