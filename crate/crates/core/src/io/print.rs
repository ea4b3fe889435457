//! Canonical text form of polynomials; the parser reads it back exactly.

use num_traits::One;

use crate::coeff::FieldElement;
use crate::ring::{Monomial, Poly, RingSignature};

fn coefficient_factors(c: &FieldElement, sig: &RingSignature) -> (bool, Vec<String>) {
    match c.single_term() {
        Some((neg, abs, exps)) => {
            let mut factors = Vec::new();
            if !abs.is_one() {
                factors.push(crate::coeff::rational_string(&abs));
            }
            for (j, &a) in exps.iter().enumerate() {
                let name = &sig.parameters()[j];
                match a {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{a}")),
                }
            }
            (neg, factors)
        }
        None => (false, vec![c.fmt_with(sig.parameters())]),
    }
}

pub fn print_term(c: &FieldElement, m: &Monomial, sig: &RingSignature) -> String {
    let (neg, mut factors) = coefficient_factors(c, sig);
    if !m.is_one() {
        factors.push(m.fmt_with(sig));
    }
    let body = if factors.is_empty() { "1".to_string() } else { factors.join("*") };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Terms in descending order, e.g. `p(2,0,0)-2*H*u(1,0,0)+1/2`.
pub fn print_poly(sig: &RingSignature, f: &Poly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in f.terms().iter().enumerate() {
        let s = print_term(&t.coeff, &t.mono, sig);
        if i > 0 && !s.starts_with('-') {
            out.push('+');
        }
        out.push_str(&s);
    }
    out
}
