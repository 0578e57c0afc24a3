//! Moyal star product and the brackets it induces.
//!
//! For a constant bivector the product is the bidifferential series
//!
//! ```text
//! f ⋆ g = Σₖ (i/2)ᵏ/k! · Πᵃ¹ᵇ¹…Πᵃᵏᵇᵏ (∂ₐ₁…∂ₐₖ f)(∂ᵦ₁…∂ᵦₖ g)
//! ```
//!
//! which terminates on polynomials once either factor runs out of degree.
//! The sum is evaluated exactly, to every order.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::bivector::Bivector;
use super::poly::{add_exponents, Exponents, PhasePoly};
use crate::error::{Error, Result};

fn check(f: &PhasePoly, g: &PhasePoly, pi: &Bivector) -> Result<()> {
    if f.generators() != pi.generators() {
        return Err(Error::dims(pi.generators(), f.generators()));
    }
    if g.generators() != pi.generators() {
        return Err(Error::dims(pi.generators(), g.generators()));
    }
    Ok(())
}

/// Exact star product `f ⋆ g`.
pub fn star(f: &PhasePoly, g: &PhasePoly, pi: &Bivector) -> Result<PhasePoly> {
    check(f, g, pi)?;
    let gens = pi.generators();
    let pairs = pi.nonzero();

    // Tensor f⊗g as (left exponents, right exponents) -> coefficient.
    let mut layer: BTreeMap<(Exponents, Exponents), Complex64> = BTreeMap::new();
    for (ef, cf) in f.terms() {
        for (eg, cg) in g.terms() {
            *layer.entry((ef.clone(), eg.clone())).or_default() += cf * cg;
        }
    }

    let half_i = Complex64::new(0.0, 0.5);
    let mut weight = Complex64::new(1.0, 0.0);
    let mut out = PhasePoly::zero(gens);
    let mut order = 0u32;
    while !layer.is_empty() {
        for ((l, r), c) in &layer {
            out.add_term(add_exponents(l, r), c * weight);
        }
        if pairs.is_empty() {
            break;
        }
        let mut next: BTreeMap<(Exponents, Exponents), Complex64> = BTreeMap::new();
        for ((l, r), c) in &layer {
            for &(a, b, v) in &pairs {
                if l[a] == 0 || r[b] == 0 {
                    continue;
                }
                let mut l2 = l.clone();
                let mut r2 = r.clone();
                let factor = v * l2[a] as f64 * r2[b] as f64;
                l2[a] -= 1;
                r2[b] -= 1;
                *next.entry((l2, r2)).or_default() += c * factor;
            }
        }
        next.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        order += 1;
        weight = weight * half_i / order as f64;
        layer = next;
    }
    Ok(out)
}

/// `f ⋆ g − g ⋆ f`.
pub fn moyal_bracket(f: &PhasePoly, g: &PhasePoly, pi: &Bivector) -> Result<PhasePoly> {
    Ok(&star(f, g, pi)? - &star(g, f, pi)?)
}

/// Leading-order contraction `Πᵃᵇ ∂ₐf ∂ᵦg`.
pub fn poisson_bracket(f: &PhasePoly, g: &PhasePoly, pi: &Bivector) -> Result<PhasePoly> {
    check(f, g, pi)?;
    let mut out = PhasePoly::zero(pi.generators());
    for (a, b, v) in pi.nonzero() {
        let term = &f.derivative(a) * &g.derivative(b);
        out = &out + &term.scale(Complex64::new(v, 0.0));
    }
    Ok(out)
}
