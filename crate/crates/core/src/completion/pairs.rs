use crate::error::{Error, Result};
use crate::ring::{Monomial, OrdValue, Poly, Ring};
use crate::shift::Shift;

/// The pair `(σ·G[left], τ·G[right])` with `gcd(σ, τ) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub left: usize,
    pub right: usize,
    pub left_shift: Shift,
    pub right_shift: Shift,
    pub lcm: Monomial,
    pub ord_bound: OrdValue,
}

impl CriticalPair {
    pub fn spoly(&self, ring: &Ring, basis: &[Poly]) -> Poly {
        let a = basis[self.left].shifted(&self.left_shift);
        let b = basis[self.right].shifted(&self.right_shift);
        ring.spoly(&a, &b).expect("basis elements are nonzero")
    }

    /// Same pair with the roles of left and right exchanged.
    pub fn flipped(&self) -> Self {
        CriticalPair {
            left: self.right,
            right: self.left,
            left_shift: self.right_shift.clone(),
            right_shift: self.left_shift.clone(),
            lcm: self.lcm.clone(),
            ord_bound: self.ord_bound,
        }
    }
}

/// Raw counts from one call of [`critical_pairs_counted`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairCounts {
    /// Symbol-matched factor pairs.
    pub candidates: u64,
    /// Candidates that collapsed onto an earlier pair or gave the trivial
    /// self-pair.
    pub merged: u64,
}

/// Every Σ-criterion pair of `f = G[left]` and `g = G[right]`.
///
/// A factor `x_i(α)` of `lm f` and a factor `x_i(β)` of `lm g` meet after
/// shifting by `σ = β/δ` and `τ = α/δ`, `δ = gcd(α, β)`. Shifted leading
/// monomials without a common variable are never produced, so the product
/// criterion holds by construction.
pub fn critical_pairs(left: usize, f: &Poly, right: usize, g: &Poly) -> Result<Vec<CriticalPair>> {
    critical_pairs_counted(left, f, right, g).map(|(p, _)| p)
}

pub fn critical_pairs_counted(
    left: usize,
    f: &Poly,
    right: usize,
    g: &Poly,
) -> Result<(Vec<CriticalPair>, PairCounts)> {
    let lf = f.lm().ok_or(Error::ZeroPolynomial)?;
    let lg = g.lm().ok_or(Error::ZeroPolynomial)?;
    let mut out: Vec<CriticalPair> = Vec::new();
    let mut counts = PairCounts::default();
    for (va, _) in lf.factors() {
        for (vb, _) in lg.factors() {
            if va.symbol != vb.symbol {
                continue;
            }
            counts.candidates += 1;
            let delta = va.shift.gcd(&vb.shift)?;
            let sigma = vb.shift.div(&delta)?;
            let tau = va.shift.div(&delta)?;
            let trivial = left == right && sigma == tau;
            if trivial || out.iter().any(|p| p.left_shift == sigma && p.right_shift == tau) {
                counts.merged += 1;
                continue;
            }
            let lcm = lf.shifted(&sigma).lcm(&lg.shifted(&tau));
            let ord_bound = lcm.ord();
            out.push(CriticalPair {
                left,
                right,
                left_shift: sigma,
                right_shift: tau,
                lcm,
                ord_bound,
            });
        }
    }
    Ok((out, counts))
}
