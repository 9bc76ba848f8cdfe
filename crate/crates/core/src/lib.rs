pub mod chabauty;
pub mod cli;
pub mod numfield;
pub mod padic;
pub mod polyint;
pub mod search;
