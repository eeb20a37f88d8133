//! The operators `χ_i` of the standard resolution against the Eisenbud
//! operators and against multiplication by `T_i` on the factorization side.

use crate::complexes::homotopies::HigherHomotopySystem;
use crate::complexes::{nullhomotopy, Homotopy};
use crate::error::{Error, Result};
use crate::mf::{build_mf, x_twists};

use super::{alternative_lift, cohomology_resolution, eisenbud_operators, standard_resolution};

#[derive(Clone, Debug)]
pub struct ChiReport {
    pub n_max: usize,
    /// Number of matrix comparisons made.
    pub comparisons: usize,
    /// `h_i` with `t'_i - t_i = d h_i + h_i d` for the alternative lift.
    pub homotopies: Vec<Homotopy>,
}

/// Checks, in homological degrees `≤ n_max`:
/// the canonical-lift `t̃_i` equal `1 ⊗ χ_i`; the reconstructed resolution
/// equals the standard one termwise and `T_i` acts as `1 ⊗ χ_i`; the
/// operators from a second, seeded lift differ from `t_i` by a nullhomotopic map.
pub fn verify_chi_equals_t(sys: &HigherHomotopySystem, n_max: usize, seed: u64) -> Result<ChiReport> {
    let st = standard_resolution(sys, n_max)?;
    let ops = eisenbud_operators(st.complex.clone(), &sys.f, None)?;
    let mut comparisons = 0;
    for i in 0..sys.c() {
        for (&k, m) in &ops.t_tilde[i] {
            comparisons += 1;
            if m != &st.ops[i].at(k) {
                return Err(Error::VerificationFailure(format!("t~_{} differs from chi_{} in degree {}", i + 1, i + 1, -k)));
            }
        }
    }
    let e = build_mf(sys)?;
    let cr = cohomology_resolution(&e, &x_twists(sys), n_max)?;
    comparisons += 1;
    if !cr.complex.same_as(&st.complex) {
        return Err(Error::VerificationFailure("reconstructed resolution differs from the standard one".into()));
    }
    for i in 0..sys.c() {
        for n in 2..=n_max {
            comparisons += 1;
            if cr.t_action(i, n) != st.ops[i].at(-(n as i64)) {
                return Err(Error::VerificationFailure(format!("T_{} differs from chi_{} in degree {n}", i + 1, i + 1)));
            }
        }
    }
    let alt = alternative_lift(&st.complex, &sys.f, seed);
    let ops2 = eisenbud_operators(st.complex.clone(), &sys.f, Some(&alt))?;
    let homotopies = (0..sys.c()).map(|i| nullhomotopy(&ops2.t[i].sub(&ops.t[i]))).collect::<Result<Vec<_>>>()?;
    Ok(ChiReport { n_max, comparisons, homotopies })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::tests::residue_system;

    #[test]
    fn ci2_and_h1() {
        for names in [&["x"][..], &["x", "y"]] {
            let rep = verify_chi_equals_t(&residue_system(names), 6, 1).unwrap();
            assert_eq!(rep.homotopies.len(), names.len());
        }
    }
}
