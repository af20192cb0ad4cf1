pub mod bijections;
pub mod corpus;
pub mod cyclic;
pub mod demo;
pub mod hydra;
pub mod lkid;
pub mod model;
pub mod par;
pub mod qe;
pub mod syntax;
pub mod verdict;
