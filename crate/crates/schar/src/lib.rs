pub mod cli;
pub mod corpus;
pub mod driver;
pub mod format;
pub mod report;
