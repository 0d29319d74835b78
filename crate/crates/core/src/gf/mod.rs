//! Generating functions of blossom trees and of the map families they encode.

mod charge;
mod closed;
mod ising;
mod newton;
mod solve;

pub use charge::ChargeFamily;
pub use closed::{
    hard_tetravalent_closed, hard_trivalent_closed, ising_quasi_cubic_closed, ising_quasi_tetravalent_closed,
    ising_tetravalent_closed,
};
pub use ising::{hard_from_ising_limit, ising_regular, ising_regular_bounded, regular_mtilde};
pub use newton::{
    newton, residual_check, solve_linear, Alg, Constellation, Dual, ParamSolution, ResidualReport, System, Tree23,
    Tree23Solution, Tree24, Tree24Solution,
};
pub use solve::{
    bipartite_map_gf, check_polynomial, hard_particle_gf, hard_particle_weights, ising_gf_deg2root,
    ising_weights, leg_gfs, rooted_bracket, solve_wb, TreeGfs, WeightSystem,
};

#[cfg(test)]
mod tests;
