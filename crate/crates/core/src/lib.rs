pub mod action;
pub mod algebra;
pub mod certify;
pub mod crossed;
pub mod groupoid;
pub mod linalg;
pub mod oracle;
pub mod projection;
pub mod report;
pub mod representation;
pub mod scalar;
pub mod semigroupoid;
