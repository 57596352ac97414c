//! Factorization in ℚ(√d)[x]: Yun's squarefree decomposition, then Trager's
//! norm method on each squarefree part.

use num_traits::{One, Zero};

use super::{factor_rat_poly, to_rat, DensePoly, RatPoly};
use crate::error::{Error, Result};
use crate::exact::QuadExt;
use crate::{QuadPoly, Rational};

/// `(i, aᵢ)` with `f = lead · ∏ aᵢ^i`, each `aᵢ` monic and squarefree.
pub fn squarefree_decomposition(f: &QuadPoly) -> Vec<(usize, QuadPoly)> {
    let f = f.monic();
    let df = f.derivative();
    let a = f.gcd(&df);
    let mut b = f.exact_div(&a).unwrap();
    let mut c = df.exact_div(&a).unwrap();
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let ai = b.gcd(&d);
        b = b.exact_div(&ai).unwrap();
        c = d.exact_div(&ai).unwrap();
        d = &c - &b.derivative();
        if ai.degree().unwrap_or(0) > 0 {
            out.push((i, ai));
        }
        i += 1;
    }
    out
}

fn conj_poly(f: &QuadPoly) -> QuadPoly {
    DensePoly::new(f.coeffs().iter().map(|c| c.conj()).collect())
}

fn rational_part(f: &QuadPoly) -> Option<RatPoly> {
    f.coeffs().iter().all(|c| c.is_rational()).then(|| f.map(|c| c.a.clone()))
}

fn embed(f: &RatPoly, d: u64) -> QuadPoly {
    f.map(|c| QuadExt::new(c.clone(), Rational::zero(), d))
}

const SHIFTS: [i64; 9] = [0, 1, -1, 2, -2, 3, -3, 4, -4];

// Irreducible monic factors of a squarefree monic g.
fn factor_squarefree(g: &QuadPoly, d: u64, degree_cap: usize) -> Result<Vec<QuadPoly>> {
    let n = g.degree().unwrap();
    if n <= 1 {
        return Ok(vec![g.clone()]);
    }
    let alpha = QuadExt::surd(Rational::one(), d);
    for &s in &SHIFTS {
        let t = QuadExt::rational(Rational::from_integer(s.into())) * alpha.clone();
        let gs = g.compose_shift(&(-t.clone()));
        let norm = rational_part(&(&gs * &conj_poly(&gs))).expect("norms are rational");
        if norm.gcd(&norm.derivative()).degree() != Some(0) {
            continue;
        }
        let (_, factors) = factor_rat_poly(&norm, degree_cap)?;
        let mut out = Vec::new();
        for p in factors {
            let h = gs.gcd(&embed(&to_rat(&p), d));
            if h.degree().unwrap_or(0) > 0 {
                out.push(h.compose_shift(&t));
            }
        }
        return Ok(out);
    }
    Err(Error::LimitExceeded("no squarefree norm among the tried shifts".into()))
}

/// `(lead, factors)` with `f = lead · ∏ factors`, each factor monic irreducible
/// over ℚ(√d), listed with multiplicity. The norm of each squarefree part has
/// twice its degree and must respect `degree_cap` for the integer factorizer.
pub fn factor_quad_poly(f: &QuadPoly, d: u64, degree_cap: usize) -> Result<(QuadExt, Vec<QuadPoly>)> {
    let lead = f.lead().ok_or(Error::ZeroInput)?.clone();
    let mut out = Vec::new();
    for (mult, part) in squarefree_decomposition(f) {
        for irr in factor_squarefree(&part, d, degree_cap)? {
            for _ in 0..mult {
                out.push(irr.clone());
            }
        }
    }
    Ok((lead, out))
}
