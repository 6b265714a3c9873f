use num_complex::Complex64;

use super::{extend_character, JoinIndex, JoinTable};
use crate::error::{Error, Result};
use crate::hypercore::{finite_dual, finite_elements, verify_multiplicative, Character, Hypergroup, TableCharacter};

/// Characters of a finite join, each verified multiplicative within `tol`.
///
/// The list is computed by joint diagonalization of the translation
/// operators and cross-checked against the decomposition
/// `K̂ = Ĥ ∪ Ĵ`: extensions of `Ĵ` by `1` on `H`, plus nontrivial
/// characters of `H` extended by `0` on `J ∖ {e}`.
pub fn join_dual_enumerate<J: Hypergroup>(
    k: &JoinTable<J>,
    tol: f64,
) -> Result<Vec<TableCharacter<JoinIndex<J::Index>>>> {
    let elems = finite_elements(k)?;
    let spectral = finite_dual(k, tol)?;
    let h_dual = finite_dual(k.h(), tol)?;
    let j_dual = finite_dual(k.j(), tol)?;
    let mut structural: Vec<TableCharacter<JoinIndex<J::Index>>> = Vec::new();
    for (c, chi) in j_dual.iter().enumerate() {
        let g = extend_character(chi);
        structural.push(TableCharacter::new(
            format!("J#{c}"),
            elems.iter().map(|&x| (x, g.value(x))),
        ));
    }
    for (c, chi) in h_dual.iter().enumerate() {
        let trivial = (0..k.h().len()).all(|i| (chi.value(i) - 1.0).norm() <= tol);
        if trivial {
            continue;
        }
        structural.push(TableCharacter::new(
            format!("H#{c}"),
            elems.iter().map(|&x| match x {
                JoinIndex::H(i) => (x, chi.value(i)),
                JoinIndex::J(_) => (x, Complex64::default()),
            }),
        ));
    }
    for chi in &structural {
        let dev = verify_multiplicative(k, &elems, chi)?;
        if dev > tol {
            return Err(Error::Verification(format!(
                "{} is not multiplicative ({dev:e})",
                chi.describe()
            )));
        }
    }
    if structural.len() != spectral.len() {
        return Err(Error::Verification(format!(
            "dual decomposition gives {} characters, spectral enumeration {}",
            structural.len(),
            spectral.len()
        )));
    }
    for chi in &spectral {
        let matched = structural
            .iter()
            .any(|s| elems.iter().all(|&x| (s.value(x) - chi.value(x)).norm() <= 1e3 * tol));
        if !matched {
            return Err(Error::Verification(format!(
                "{} has no counterpart in H^ ∪ J^",
                chi.describe()
            )));
        }
    }
    Ok(structural)
}
