pub mod algebra;
pub mod form;
pub mod matrix;

pub use algebra::{random_operator, verify_associativity, verify_grading, verify_homomorphism, verify_operator_algebra, verify_slot_homomorphism};
pub use form::{eval_at_slot, op_add, op_mul, push_d_delta, push_delta, FormOperator, OperatorSlot, PushWitness};
pub use matrix::{homomorphism_check, matrix_oracle_check, Matrix, MatrixRep};
