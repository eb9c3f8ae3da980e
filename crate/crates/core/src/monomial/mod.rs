//! Monomial ideals on smooth affine space: Newton polyhedra, log canonical
//! thresholds, colengths and Hilbert–Samuel multiplicities.

pub mod cone;
mod ideal;
mod lct;
pub mod lp;
mod multiplicity;
mod newton;
pub mod volume;

pub use ideal::{length_quotient, Exponent, MonomialIdeal};
pub use lct::{
    lct_monomial, lct_over_valuations, lct_power, lct_via_facets, lct_via_lp, MonomialValuation,
};
pub use multiplicity::{
    covolume, dfem_check, multiplicity, multiplicity_by_covolume, multiplicity_by_limit,
    DfemWitness,
};
pub use newton::{newton_polyhedron, Facet, NewtonPolyhedron};

use rand::Rng;

/// Random ideal in `num_vars` variables with 1..=`max_gens` generators and
/// exponents in `0..=max_exp`; the zero vector is never drawn. The result
/// is antichain-reduced and may have fewer generators.
pub fn random_ideal<R: Rng>(
    rng: &mut R,
    num_vars: usize,
    max_exp: u32,
    max_gens: usize,
) -> MonomialIdeal {
    let count = rng.gen_range(1..=max_gens.max(1));
    let gens = (0..count)
        .map(|_| loop {
            let g: Exponent = (0..num_vars).map(|_| rng.gen_range(0..=max_exp)).collect();
            if g.iter().any(|&e| e > 0) {
                break g;
            }
        })
        .collect();
    MonomialIdeal::new(num_vars, gens).expect("well-formed random generators")
}

/// Random m-primary ideal: a random ideal plus a pure power
/// `x_i^{a_i}`, `1 <= a_i <= max_exp`, on every axis.
pub fn random_m_primary_ideal<R: Rng>(
    rng: &mut R,
    num_vars: usize,
    max_exp: u32,
    max_gens: usize,
) -> MonomialIdeal {
    let base = random_ideal(rng, num_vars, max_exp, max_gens);
    let mut gens = base.generators().to_vec();
    for i in 0..num_vars {
        let mut g = vec![0; num_vars];
        g[i] = rng.gen_range(1..=max_exp.max(1));
        gens.push(g);
    }
    MonomialIdeal::new(num_vars, gens).expect("well-formed random generators")
}
