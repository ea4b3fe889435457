use crate::reduction::{Reducers, ShiftPolicy};
use crate::ring::{Monomial, Poly, Ring};

/// Whether `s·a | b` for some shift `s`.
pub fn sigma_divides(a: &Monomial, b: &Monomial) -> bool {
    let Some((v, _)) = a.factors().first() else {
        return true;
    };
    b.factors().iter().any(|(w, _)| {
        w.symbol == v.symbol
            && v.shift.divides(&w.shift)
            && a.shifted(&w.shift.div(&v.shift).expect("divides")).divides(b)
    })
}

/// Drop every element whose leading monomial is a multiple of a shifted
/// leading monomial of another element. Among equal leading monomials the
/// first one is kept.
pub fn minimalize(_ring: &Ring, basis: &[Poly]) -> Vec<Poly> {
    let lms: Vec<&Monomial> = basis.iter().map(|g| g.lm().expect("nonzero")).collect();
    basis
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            !lms.iter().enumerate().any(|(j, m)| {
                j != i && sigma_divides(m, lms[i]) && (*m != lms[i] || j < i)
            })
        })
        .map(|(_, g)| g.clone())
        .collect()
}

/// Minimalize, then replace each element by the monic normal form of its
/// tail modulo the shifts of the others.
pub fn interreduce(ring: &Ring, basis: &[Poly]) -> Vec<Poly> {
    let mut out = minimalize(ring, basis);
    for i in 0..out.len() {
        let mut rest = Reducers::new(ring, out.iter().cloned());
        rest.deactivate(i);
        let g = rest.reduce_full(ring, &out[i], ShiftPolicy::Unbounded, None);
        out[i] = g.monic().expect("leading monomial is irreducible");
    }
    out
}
