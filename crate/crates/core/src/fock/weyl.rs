//! Weyl (symmetric-ordered) quantization of polynomial symbols.
//!
//! A monomial of degree `d` is mapped to the average of all distinct
//! orderings of its `d` operator factors. Degrees stay small in practice, so
//! the enumeration is done directly.

use num_complex::Complex64;

use super::basis::FockBasis;
use super::ladder::GeneratorMap;
use super::operator::OperatorMatrix;
use crate::error::{Error, Result};
use crate::phase::PhasePoly;
use crate::tol;

/// `W[f]` with the canonical generator map `x_k ↦ x̂_k, p_k ↦ p̂_k`.
pub fn weyl_quantize(f: &PhasePoly, basis: &FockBasis) -> Result<OperatorMatrix> {
    let gens = f.generators();
    if !gens.is_canonical() || gens.coords() != basis.mode_count() {
        return Err(Error::dims(
            format!("phase space over {} modes", basis.mode_count()),
            gens,
        ));
    }
    weyl_quantize_with(f, &GeneratorMap::canonical(basis)?)
}

/// `W[f]` with an explicit operator for each generator.
pub fn weyl_quantize_with(f: &PhasePoly, map: &GeneratorMap) -> Result<OperatorMatrix> {
    if f.generators() != map.generators() {
        return Err(Error::dims(map.generators(), f.generators()));
    }
    let basis = map.basis();
    let mut out = OperatorMatrix::zeros(basis);
    for (exps, c) in f.terms() {
        let word: Vec<usize> = exps
            .iter()
            .enumerate()
            .flat_map(|(g, &k)| std::iter::repeat_n(g, k as usize))
            .collect();
        let sym = symmetrized(&word, map);
        out = &out + &sym.scale(*c);
    }
    let hermitian_generators = map.operators().iter().all(|o| o.is_hermitian());
    if f.is_real() && hermitian_generators {
        out = out.certify_hermitian(tol::HERMITIAN)?;
    }
    Ok(out)
}

/// Average over distinct orderings of a multiset word of generator indices.
pub fn symmetrized(word: &[usize], map: &GeneratorMap) -> OperatorMatrix {
    let basis = map.basis();
    if word.is_empty() {
        return OperatorMatrix::identity(basis);
    }
    let mut perm = word.to_vec();
    perm.sort_unstable();
    let mut acc = OperatorMatrix::zeros(basis);
    let mut count = 0usize;
    loop {
        let mut prod = map.operator(perm[0]).clone();
        for &g in &perm[1..] {
            prod = &prod * map.operator(g);
        }
        acc = &acc + &prod;
        count += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    acc.scale(Complex64::new(1.0 / count as f64, 0.0))
}

/// Lexicographic successor; false once the last permutation is reached.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
