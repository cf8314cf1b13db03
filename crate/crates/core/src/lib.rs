pub mod classify;
pub mod exactnum;
pub mod extend;
pub mod liealg;
pub mod report;
pub mod varieties;
