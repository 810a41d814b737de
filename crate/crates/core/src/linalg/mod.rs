pub mod complex;
pub mod real;

pub use complex::{hermitian_eigen, unitary_exp, ComplexMatrix, ComplexVector, HermitianEigen};
pub use real::{determinant, sym_eigen, Lu, RealMatrix, SymEigen};
