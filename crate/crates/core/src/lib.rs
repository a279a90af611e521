pub mod corpus;
pub mod doublepoint;
pub mod exactpoly;
pub mod germ;
pub mod germfile;
pub mod imagefit;
pub mod invariants;
pub mod localalg;
pub mod report;
pub mod slice;
