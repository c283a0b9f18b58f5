pub mod builder;
pub mod cipher;
pub mod circuit;
pub mod cli;
pub mod perm;
pub mod report;
pub mod sim;
pub mod synth;
