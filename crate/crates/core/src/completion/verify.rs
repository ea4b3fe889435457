use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::reduction::{Reducers, ShiftPolicy};
use crate::ring::{Monomial, Poly, Ring};

use super::pairs::{critical_pairs, CriticalPair};

#[derive(Clone, Debug)]
pub struct FailingPair {
    pub pair: CriticalPair,
    /// Monic normal form of the S-polynomial.
    pub remainder: Poly,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub is_basis: bool,
    pub pairs_checked: u64,
    /// Largest leading-monomial order; shifts up to twice this were used.
    pub max_order: Option<u64>,
    pub failures: Vec<FailingPair>,
}

/// Finite Σ-criterion: `G` is a Gröbner Σ-basis iff every Σ-criterion
/// S-polynomial reduces to zero using only shifts of degree at most
/// `2·max ord(lm G)`.
pub fn verify_sigma_gbasis(ring: &Ring, basis: &[Poly]) -> Result<VerifyReport> {
    if !ring.ordering().is_ord_compatible() {
        return Err(Error::NotOrdCompatible);
    }
    let basis: Vec<Poly> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
    let max_order = basis.iter().filter_map(|g| g.lm().and_then(|m| m.ord().finite())).max();
    let mut report = VerifyReport {
        is_basis: true,
        pairs_checked: 0,
        max_order,
        failures: Vec::new(),
    };
    if basis.iter().any(|g| g.lm().is_some_and(Monomial::is_one)) {
        return Ok(report);
    }
    let policy = ShiftPolicy::MaxDegree(2 * max_order.unwrap_or(0));
    let reducers = Reducers::new(ring, basis.iter().cloned());
    for j in 0..basis.len() {
        for i in 0..=j {
            for p in critical_pairs(i, &basis[i], j, &basis[j])? {
                if i == j && ring.ordering().compare_shift(&p.left_shift, &p.right_shift) == Ordering::Less {
                    continue;
                }
                report.pairs_checked += 1;
                let h = reducers.reduce(ring, &p.spoly(ring, &basis), policy, None);
                if !h.is_zero() {
                    let remainder = reducers.reduce_full(ring, &h, policy, None).monic()?;
                    report.is_basis = false;
                    report.failures.push(FailingPair { pair: p, remainder });
                }
            }
        }
    }
    Ok(report)
}

/// For every symbol `i` and generator `σ_j`, the least `d` with
/// `x_i(σ_j^d)` in the monomial Σ-ideal of `lms`, when all of them exist.
pub fn check_finite_membership(lms: &[Monomial], symbols: usize, rank: usize) -> Option<Vec<Vec<u32>>> {
    let mut table: Vec<Vec<Option<u32>>> = vec![vec![None; rank]; symbols];
    for m in lms {
        if m.is_one() {
            return Some(vec![vec![0; rank]; symbols]);
        }
        let [(v, 1)] = m.factors() else {
            continue;
        };
        let e = v.shift.exponents();
        let support: Vec<usize> = (0..rank).filter(|&j| e[j] > 0).collect();
        let row = &mut table[v.symbol as usize];
        match support.as_slice() {
            [] => row.iter_mut().for_each(|c| *c = Some(0)),
            [j] => {
                let d = e[*j];
                row[*j] = Some(row[*j].map_or(d, |c| c.min(d)));
            }
            _ => {}
        }
    }
    table
        .into_iter()
        .map(|row| row.into_iter().collect::<Option<Vec<u32>>>())
        .collect()
}
