//! Picard groups of stable module categories.
//!
//! The crate computes the group `T_k(G)` of invertible modules in the stable
//! module category, directly by module arithmetic for finite groups `G` and
//! through the restriction exact sequence for fundamental groups of finite
//! graphs of finite groups. Coefficients are finite fields `F_{p^e}`.

pub mod abgrp;
pub mod cli;
pub mod components;
pub mod exactlin;
pub mod groups;
pub mod modrep;
pub mod picard;
pub mod treecalc;
