//! Noetherian quotients `P/J` where `J` is Σ-generated by monic linear
//! relations `f_ij = Σ_k c_ijk x_i(σ_j^k)`, one for each symbol and shift
//! generator. The quotient has finitely many normal variables and each
//! `σ_j` acts on their span through a Kronecker product of companion
//! matrices.

mod matrix;
mod symmetric;

use crate::coeff::FieldElement;
use crate::completion::{check_finite_membership, verify_sigma_gbasis};
use crate::error::{Error, Result};
use crate::reduction::{Reducers, ShiftPolicy};
use crate::ring::{Monomial, Poly, Ring, Var};
use crate::shift::Shift;

pub use matrix::Matrix;
pub use symmetric::{
    expand_classical_basis, groebner_gamma_basis, symmetric_setup, PermutationAction, SymmetricIdeal,
};

/// `Σ_k coeffs[k]·x_symbol(σ_shift^k)`; the last coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRelation {
    pub symbol: usize,
    pub shift_index: usize,
    pub coeffs: Vec<FieldElement>,
}

impl LinearRelation {
    pub fn new(symbol: usize, shift_index: usize, coeffs: Vec<FieldElement>) -> Result<Self> {
        match coeffs.last() {
            Some(c) if c.is_one() => Ok(LinearRelation {
                symbol,
                shift_index,
                coeffs,
            }),
            _ => Err(Error::InvalidRelations(format!(
                "relation for symbol {symbol}, shift {} is not monic",
                shift_index + 1
            ))),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_poly(&self, ring: &Ring) -> Poly {
        let r = ring.shift_rank();
        ring.poly(self.coeffs.iter().enumerate().map(|(k, c)| {
            let v = Var::new(self.symbol, Shift::generator(r, self.shift_index, k as u32));
            (c.clone(), Monomial::var(v))
        }))
    }

    /// Read a relation back from a monic polynomial whose terms are
    /// variables `x_i(σ_j^k)` of a single symbol and generator.
    pub fn from_poly(ring: &Ring, f: &Poly) -> Result<Self> {
        let bad = || Error::InvalidRelations(format!("`{}` is not a linear relation", ring.fmt_poly(f)));
        let f = f.monic().map_err(|_| bad())?;
        let mut found: Option<(usize, Option<usize>)> = None;
        let mut coeffs: Vec<(u32, FieldElement)> = Vec::new();
        for t in f.terms() {
            let [(v, 1)] = t.mono.factors() else {
                return Err(bad());
            };
            let support: Vec<usize> = (0..v.shift.rank()).filter(|&j| v.shift.exponents()[j] > 0).collect();
            let j = match support.as_slice() {
                [] => None,
                [j] => Some(*j),
                _ => return Err(bad()),
            };
            let sym = v.symbol as usize;
            found = match found {
                None => Some((sym, j)),
                Some((s, _)) if s != sym => return Err(bad()),
                Some((_, Some(a))) if j.is_some_and(|b| b != a) => return Err(bad()),
                Some((s, a)) => Some((s, a.or(j))),
            };
            coeffs.push((v.shift.deg() as u32, t.coeff.clone()));
        }
        let (symbol, j) = found.ok_or_else(bad)?;
        let top = coeffs.iter().map(|c| c.0).max().unwrap_or(0);
        let mut dense = vec![FieldElement::zero(); top as usize + 1];
        for (k, c) in coeffs {
            dense[k as usize] = c;
        }
        // a relation x_i(1) is shared by all generators; callers decide
        Self::new(symbol, j.unwrap_or(usize::MAX), dense)
    }
}

/// The full relation matrix of a Noetherian quotient.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    ring: Ring,
    relations: Vec<Vec<LinearRelation>>,
}

/// Outcome of [`normal_variables`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalVariables {
    Finite(Vec<Var>),
    /// Pairs `(symbol, generator)` without a pure-power leading variable.
    Infinite { missing: Vec<(usize, usize)> },
}

impl NormalVariables {
    pub fn is_finite(&self) -> bool {
        matches!(self, NormalVariables::Finite(_))
    }
}

/// Variables outside the monomial Σ-ideal generated by `lms`.
pub fn normal_variables(ring: &Ring, lms: &[Monomial]) -> NormalVariables {
    let n = ring.signature().symbols().len();
    let r = ring.shift_rank();
    let Some(table) = check_finite_membership(lms, n, r) else {
        // only a single variable can divide a pure power x_i(σ_j^d)
        let mut missing = Vec::new();
        for i in 0..n {
            for j in 0..r {
                let hit = lms.iter().any(|m| match m.factors() {
                    [(v, 1)] => {
                        v.symbol as usize == i && (0..r).all(|l| l == j || v.shift.exponents()[l] == 0)
                    }
                    _ => false,
                });
                if !hit {
                    missing.push((i, j));
                }
            }
        }
        return NormalVariables::Infinite { missing };
    };
    let mut out = Vec::new();
    for (i, row) in table.iter().enumerate() {
        for e in staircase(row) {
            let v = Var::new(i, e);
            let m = Monomial::var(v.clone());
            if !lms.iter().any(|g| crate::completion::sigma_divides(g, &m)) {
                out.push(v);
            }
        }
    }
    NormalVariables::Finite(out)
}

/// Shifts `(k_1..k_r)` with `k_j < bounds[j]`, `k_1` most significant.
fn staircase(bounds: &[u32]) -> Vec<Shift> {
    let mut out = Vec::new();
    if bounds.contains(&0) {
        return out;
    }
    let mut cur = vec![0u32; bounds.len()];
    loop {
        out.push(Shift::new(cur.iter().copied()));
        let mut j = bounds.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            cur[j] += 1;
            if cur[j] < bounds[j] {
                break;
            }
            cur[j] = 0;
        }
    }
}

pub fn is_noetherian_quotient(ring: &Ring, lms: &[Monomial]) -> bool {
    normal_variables(ring, lms).is_finite()
}

impl QuotientPresentation {
    /// `relations` must hold exactly one relation per symbol and generator.
    pub fn new(ring: Ring, relations: Vec<LinearRelation>) -> Result<Self> {
        let n = ring.signature().symbols().len();
        let r = ring.shift_rank();
        let mut table: Vec<Vec<Option<LinearRelation>>> = vec![vec![None; r]; n];
        for rel in relations {
            if rel.symbol >= n || rel.shift_index >= r {
                return Err(Error::InvalidRelations(format!(
                    "relation for symbol {}, shift {} is outside the signature",
                    rel.symbol, rel.shift_index
                )));
            }
            let slot = &mut table[rel.symbol][rel.shift_index];
            if slot.is_some() {
                return Err(Error::InvalidRelations(format!(
                    "two relations for `{}` and s{}",
                    ring.signature().symbols()[rel.symbol],
                    rel.shift_index + 1
                )));
            }
            *slot = Some(rel);
        }
        let relations = table
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, rel)| {
                        rel.ok_or_else(|| {
                            Error::InvalidRelations(format!(
                                "missing relation for `{}` and s{}",
                                ring.signature().symbols()[i],
                                j + 1
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientPresentation { ring, relations })
    }

    /// Build from polynomials, each of which must be a monic linear
    /// relation. A relation `x_i(1) - 0` may stand for any generator.
    pub fn from_polys(ring: Ring, polys: &[Poly]) -> Result<Self> {
        let r = ring.shift_rank();
        let mut rels = Vec::new();
        for f in polys {
            let mut rel = LinearRelation::from_poly(&ring, f)?;
            if rel.shift_index == usize::MAX {
                if rel.degree() != 0 {
                    return Err(Error::InvalidRelations(format!(
                        "`{}` mixes no shift generator",
                        ring.fmt_poly(f)
                    )));
                }
                for j in 0..r {
                    rel.shift_index = j;
                    rels.push(rel.clone());
                }
            } else {
                rels.push(rel);
            }
        }
        Self::new(ring, rels)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn relation(&self, symbol: usize, shift_index: usize) -> &LinearRelation {
        &self.relations[symbol][shift_index]
    }

    pub fn degrees(&self) -> Vec<Vec<usize>> {
        self.relations
            .iter()
            .map(|row| row.iter().map(LinearRelation::degree).collect())
            .collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().flatten().max().unwrap_or(0)
    }

    pub fn relation_polys(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for rel in self.relations.iter().flatten() {
            let p = rel.to_poly(&self.ring);
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }

    /// Normal variables `x_i(σ_1^{k_1}…σ_r^{k_r})`, `k_j < d_ij`, grouped by
    /// symbol with `k_1` most significant.
    pub fn normal_variables(&self) -> Vec<Var> {
        let mut out = Vec::new();
        for (i, row) in self.degrees().iter().enumerate() {
            let bounds: Vec<u32> = row.iter().map(|&d| d as u32).collect();
            out.extend(staircase(&bounds).into_iter().map(|s| Var::new(i, s)));
        }
        out
    }

    pub fn companion(&self, symbol: usize, shift_index: usize) -> Matrix {
        Matrix::companion(&self.relations[symbol][shift_index].coeffs)
    }

    /// The relations form a Gröbner Σ-basis; checked with the finite
    /// Σ-criterion.
    pub fn relations_are_groebner(&self) -> Result<bool> {
        Ok(verify_sigma_gbasis(&self.ring, &self.relation_polys())?.is_basis)
    }

    fn check_var(&self, v: &Var) -> Result<()> {
        if v.shift.rank() != self.ring.shift_rank() || v.symbol as usize >= self.relations.len() {
            return Err(Error::InvalidSignature(format!("variable {v:?} does not fit the ring")));
        }
        Ok(())
    }

    /// Coordinates of `NF(v)` over [`Self::normal_variables`], by reduction.
    pub fn normal_form_variable(&self, v: &Var) -> Result<Vec<FieldElement>> {
        self.check_var(v)?;
        let reducers = Reducers::new(&self.ring, self.relation_polys());
        let f = Poly::monomial(FieldElement::one(), Monomial::var(v.clone()));
        let nf = reducers.reduce_full(&self.ring, &f, ShiftPolicy::Unbounded, None);
        let basis = self.normal_variables();
        let mut out = vec![FieldElement::zero(); basis.len()];
        for t in nf.terms() {
            let pos = match t.mono.factors() {
                [(w, 1)] => basis.iter().position(|b| b == w),
                _ => None,
            };
            let pos = pos.ok_or_else(|| Error::OutsideStaircase(self.ring.fmt_monomial(&t.mono)))?;
            out[pos] = t.coeff.clone();
        }
        Ok(out)
    }

    /// Coordinates of `NF(v)` as `(A_i1^{k_1} ⊗ … ⊗ A_ir^{k_r})·e_0` placed
    /// in the block of symbol `i`.
    pub fn normal_form_kronecker(&self, v: &Var) -> Result<Vec<FieldElement>> {
        self.check_var(v)?;
        let i = v.symbol as usize;
        let degrees = self.degrees();
        let offset: usize = degrees[..i].iter().map(|row| row.iter().product::<usize>()).sum();
        let total: usize = degrees.iter().map(|row| row.iter().product::<usize>()).sum();
        let mut out = vec![FieldElement::zero(); total];
        let dim: usize = degrees[i].iter().product();
        if dim == 0 {
            return Ok(out);
        }
        let action = (0..self.ring.shift_rank())
            .map(|j| self.companion(i, j).pow(v.shift.exponents()[j]))
            .reduce(|acc, m| acc.kron(&m))
            .expect("rank >= 1");
        let mut e0 = vec![FieldElement::zero(); dim];
        e0[0] = FieldElement::one();
        for (k, c) in action.apply(&e0).into_iter().enumerate() {
            out[offset + k] = c;
        }
        Ok(out)
    }

    /// Render coordinates as a polynomial in the normal variables.
    pub fn coordinates_to_poly(&self, coords: &[FieldElement]) -> Poly {
        self.ring.poly(
            self.normal_variables()
                .into_iter()
                .zip(coords)
                .map(|(v, c)| (c.clone(), Monomial::var(v))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::tests::{ring, ring1};

    fn q(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn rel(sym: usize, j: usize, cs: &[i64]) -> LinearRelation {
        LinearRelation::new(sym, j, cs.iter().map(|&c| q(c)).collect()).unwrap()
    }

    fn var(e: &[u32]) -> Var {
        Var::new(0, Shift::new(e.iter().copied()))
    }

    #[test]
    fn staircase_of_pure_powers() {
        let r = ring(2, &["x"]);
        let lms = [Monomial::var(var(&[2, 0])), Monomial::var(var(&[0, 3]))];
        match normal_variables(&r, &lms) {
            NormalVariables::Finite(vs) => {
                assert_eq!(vs.len(), 6);
                assert!(vs.iter().all(|v| v.shift.exponents()[0] < 2 && v.shift.exponents()[1] < 3));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            normal_variables(&r, &[Monomial::var(var(&[1, 0]))]),
            NormalVariables::Infinite { missing: vec![(0, 1)] }
        );
        assert!(!is_noetherian_quotient(&r, &[]));
    }

    #[test]
    fn cyclic_normal_forms() {
        let r = ring1(&["x"]);
        let mut cs = vec![0i64; 9];
        cs[0] = -1;
        cs[8] = 1;
        let p = QuotientPresentation::new(r, vec![rel(0, 0, &cs)]).unwrap();
        assert_eq!(p.normal_variables().len(), 8);
        let nf = p.normal_form_variable(&var(&[9])).unwrap();
        assert_eq!(nf, p.normal_form_kronecker(&var(&[9])).unwrap());
        let mut expected = vec![q(0); 8];
        expected[1] = q(1);
        assert_eq!(nf, expected);
    }

    #[test]
    fn direct_rewrite() {
        let r = ring1(&["x"]);
        let p = QuotientPresentation::new(r, vec![rel(0, 0, &[1, 1, 1])]).unwrap();
        assert_eq!(p.normal_form_variable(&var(&[2])).unwrap(), vec![q(-1), q(-1)]);
        assert_eq!(p.normal_form_kronecker(&var(&[2])).unwrap(), vec![q(-1), q(-1)]);
    }

    #[test]
    fn two_generators() {
        let r = ring(2, &["x"]);
        let p = QuotientPresentation::new(r, vec![rel(0, 0, &[-1, 0, 1]), rel(0, 1, &[0, -1, 1])]).unwrap();
        let v = var(&[2, 2]);
        let nf = p.normal_form_variable(&v).unwrap();
        assert_eq!(nf, p.normal_form_kronecker(&v).unwrap());
        // only x(0,1) survives
        let basis = p.normal_variables();
        let pos = basis.iter().position(|b| *b == var(&[0, 1])).unwrap();
        for (k, c) in nf.iter().enumerate() {
            assert_eq!(c.is_one(), k == pos);
            assert_eq!(c.is_zero(), k != pos);
        }
        assert!(p.relations_are_groebner().unwrap());
    }

    #[test]
    fn zero_dimensional_symbol() {
        let r = ring(2, &["x", "y"]);
        let rels = vec![rel(0, 0, &[1]), rel(0, 1, &[1]), rel(1, 0, &[2, 1]), rel(1, 1, &[1, 1])];
        let p = QuotientPresentation::new(r, rels).unwrap();
        assert_eq!(p.normal_variables().len(), 1);
        assert_eq!(p.normal_form_variable(&var(&[3, 1])).unwrap(), vec![q(0)]);
        assert_eq!(p.normal_form_kronecker(&var(&[3, 1])).unwrap(), vec![q(0)]);
    }

    #[test]
    fn presentation_validation() {
        let r = ring(2, &["x"]);
        assert!(QuotientPresentation::new(r.clone(), vec![rel(0, 0, &[1, 1])]).is_err());
        assert!(QuotientPresentation::new(r.clone(), vec![rel(0, 0, &[1, 1]), rel(0, 0, &[1, 1])]).is_err());
        assert!(LinearRelation::new(0, 0, vec![q(1), q(2)]).is_err());
        let f = rel(0, 1, &[3, 0, 1]).to_poly(&r);
        assert_eq!(LinearRelation::from_poly(&r, &f).unwrap(), rel(0, 1, &[3, 0, 1]));
    }
}
