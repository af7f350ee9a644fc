pub mod analysis;
pub mod certify;
pub mod error;
pub mod evaluator;
pub mod experiment;
pub mod function;
pub mod kernel;
pub mod moments;
pub mod quadrature;
pub mod report;
