//! Normal forms modulo `Σ·G`.
//!
//! A shift `s` with `s·lm(g) | m` must carry the anchor factor `x_i(β)` of
//! `lm(g)` onto some factor `x_i(α)` of `m`, so `s = α − β`. Only those
//! candidates are tested.

use std::collections::BTreeMap;

use crate::coeff::FieldElement;
use crate::ring::{Monomial, OrdValue, Poly, Ring, Term, Var};
use crate::shift::Shift;

/// `cofactor · (shift · lm(G[basis_index])) = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorHit {
    pub basis_index: usize,
    pub shift: Shift,
    pub cofactor: Monomial,
}

/// Which shifted copies of the basis may be used as divisors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ShiftPolicy {
    #[default]
    Unbounded,
    /// Only `s` with `deg(s) <= d`.
    MaxDegree(u64),
    /// Only `s` with `ord(s·lm(g)) <= d`.
    MaxOrd(u64),
    /// No shifts: ordinary polynomial reduction.
    IdentityOnly,
}

impl ShiftPolicy {
    fn admits(self, s: &Shift, lm_ord: OrdValue) -> bool {
        match self {
            ShiftPolicy::Unbounded => true,
            ShiftPolicy::MaxDegree(d) => s.deg() <= d,
            ShiftPolicy::MaxOrd(d) => lm_ord.plus(s.deg()) <= OrdValue::Fin(d),
            ShiftPolicy::IdentityOnly => s.is_identity(),
        }
    }
}

/// One step `h -= coeff · cofactor · (shift · G[basis_index])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub basis_index: usize,
    pub shift: Shift,
    pub cofactor: Monomial,
    pub coeff: FieldElement,
}

/// The representation `f = remainder + Σ coeff·cofactor·(shift·g)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub steps: Vec<Step>,
}

impl Certificate {
    /// Rebuild `f` from the remainder and the recorded steps.
    pub fn replay(&self, ring: &Ring, basis: &[Poly], remainder: &Poly) -> Poly {
        self.steps.iter().fold(remainder.clone(), |acc, st| {
            let g = basis[st.basis_index].shifted(&st.shift);
            ring.add(&acc, &g.mul_term(&st.coeff, &st.cofactor))
        })
    }
}

/// A finite basis prepared for divisor search.
#[derive(Clone, Debug, Default)]
pub struct Reducers {
    elems: Vec<Poly>,
    anchors: Vec<Option<(Var, u32)>>,
    lm_ords: Vec<OrdValue>,
    active: Vec<bool>,
}

impl Reducers {
    pub fn new(ring: &Ring, basis: impl IntoIterator<Item = Poly>) -> Self {
        let mut r = Reducers::default();
        for g in basis {
            r.push(ring, g);
        }
        r
    }

    /// Append a nonzero element and return its index.
    pub fn push(&mut self, ring: &Ring, g: Poly) -> usize {
        let lm = g.lm().expect("reducers must be nonzero");
        let anchor = lm
            .factors()
            .iter()
            .max_by(|a, b| {
                ring.cmp(
                    &Monomial::var(a.0.clone()),
                    &Monomial::var(b.0.clone()),
                )
            })
            .cloned();
        self.lm_ords.push(lm.ord());
        self.anchors.push(anchor);
        self.elems.push(g);
        self.active.push(true);
        self.elems.len() - 1
    }

    /// Exclude an element from divisor search without renumbering.
    pub fn deactivate(&mut self, index: usize) {
        self.active[index] = false;
    }

    pub fn is_active(&self, index: usize) -> bool {
        self.active[index]
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elems
    }

    pub fn get(&self, index: usize) -> &Poly {
        &self.elems[index]
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// All admissible shifts `s` with `s·lm(G[index]) | target`, largest
    /// first under the shift ordering.
    pub fn divisor_shifts(&self, ring: &Ring, index: usize, target: &Monomial, policy: ShiftPolicy) -> Vec<Shift> {
        let lm = self.elems[index].lm().expect("nonzero");
        let rank = ring.shift_rank();
        let Some((anchor, anchor_exp)) = &self.anchors[index] else {
            let id = Shift::identity(rank);
            return if policy.admits(&id, self.lm_ords[index]) { vec![id] } else { Vec::new() };
        };
        let mut out: Vec<Shift> = Vec::new();
        for (v, e) in target.factors() {
            if v.symbol != anchor.symbol || e < anchor_exp || !anchor.shift.divides(&v.shift) {
                continue;
            }
            let s = v.shift.div(&anchor.shift).expect("divides");
            if !policy.admits(&s, self.lm_ords[index]) || out.contains(&s) {
                continue;
            }
            if lm.shifted(&s).divides(target) {
                out.push(s);
            }
        }
        out.sort_by(|a, b| ring.ordering().compare_shift(b, a));
        out
    }

    /// First divisor by basis index, then by largest shift, so the anchor
    /// meets the most significant matching factor of the target.
    pub fn find_divisor(&self, ring: &Ring, target: &Monomial, policy: ShiftPolicy) -> Option<DivisorHit> {
        for i in 0..self.elems.len() {
            if !self.active[i] {
                continue;
            }
            if let Some(shift) = self.divisor_shifts(ring, i, target, policy).into_iter().next() {
                let lm = self.elems[i].lm().expect("nonzero").shifted(&shift);
                let cofactor = target.div(&lm).expect("verified divisor");
                return Some(DivisorHit {
                    basis_index: i,
                    shift,
                    cofactor,
                });
            }
        }
        None
    }

    fn step(&self, ring: &Ring, h: &mut Accumulator, hit: &DivisorHit, cert: &mut Option<&mut Certificate>) {
        let g = &self.elems[hit.basis_index];
        let lc = &h.lead().expect("nonzero").coeff;
        let c = lc.div(g.lc().expect("nonzero")).expect("nonzero lc");
        h.sub_multiple(ring, &c, &hit.cofactor, &g.shifted(&hit.shift));
        if let Some(cert) = cert.as_mut() {
            cert.steps.push(Step {
                basis_index: hit.basis_index,
                shift: hit.shift.clone(),
                cofactor: hit.cofactor.clone(),
                coeff: c,
            });
        }
    }

    /// Head reduction: the result is zero or has an irreducible leading
    /// monomial.
    pub fn reduce(&self, ring: &Ring, f: &Poly, policy: ShiftPolicy, mut cert: Option<&mut Certificate>) -> Poly {
        let mut h = Accumulator::new(ring, f);
        while let Some(t) = h.lead() {
            match self.find_divisor(ring, &t.mono, policy) {
                Some(hit) => self.step(ring, &mut h, &hit, &mut cert),
                None => break,
            }
        }
        h.into_poly(Vec::new())
    }

    /// Full reduction: no term of the result is divisible by an admissible
    /// shifted leading monomial. The result is not normalized.
    pub fn reduce_full(&self, ring: &Ring, f: &Poly, policy: ShiftPolicy, mut cert: Option<&mut Certificate>) -> Poly {
        let mut h = Accumulator::new(ring, f);
        let mut rem = Vec::new();
        while let Some(t) = h.lead() {
            match self.find_divisor(ring, &t.mono, policy) {
                Some(hit) => self.step(ring, &mut h, &hit, &mut cert),
                None => rem.extend(h.pop()),
            }
        }
        h.into_poly(rem)
    }

    /// Whether `m` is divisible by some admissible shifted leading monomial.
    pub fn is_reducible(&self, ring: &Ring, m: &Monomial, policy: ShiftPolicy) -> bool {
        self.find_divisor(ring, m, policy).is_some()
    }
}

/// Terms of a polynomial under reduction, keyed by the monomial ordering.
struct Accumulator {
    terms: BTreeMap<Vec<u64>, Term>,
}

impl Accumulator {
    fn new(ring: &Ring, f: &Poly) -> Self {
        let terms = f
            .terms()
            .iter()
            .map(|t| (ring.ordering().monomial_key(&t.mono), t.clone()))
            .collect();
        Accumulator { terms }
    }

    fn lead(&self) -> Option<&Term> {
        self.terms.last_key_value().map(|(_, t)| t)
    }

    fn pop(&mut self) -> Option<Term> {
        self.terms.pop_last().map(|(_, t)| t)
    }

    /// `self -= c·m·g`
    fn sub_multiple(&mut self, ring: &Ring, c: &FieldElement, m: &Monomial, g: &Poly) {
        for t in g.terms() {
            let mono = t.mono.mul(m);
            let coeff = &t.coeff * c;
            match self.terms.entry(ring.ordering().monomial_key(&mono)) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let d = &e.get().coeff - &coeff;
                    if d.is_zero() {
                        e.remove();
                    } else {
                        e.get_mut().coeff = d;
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(Term { coeff: -coeff, mono });
                }
            }
        }
    }

    /// `head` followed by the remaining terms, all in descending order.
    fn into_poly(self, mut head: Vec<Term>) -> Poly {
        head.extend(self.terms.into_values().rev());
        Poly::from_sorted(head)
    }
}

pub fn find_divisor(ring: &Ring, target: &Monomial, basis: &[Poly]) -> Option<DivisorHit> {
    Reducers::new(ring, basis.iter().cloned()).find_divisor(ring, target, ShiftPolicy::Unbounded)
}

pub fn reduce(ring: &Ring, f: &Poly, basis: &[Poly]) -> Poly {
    Reducers::new(ring, basis.iter().cloned()).reduce(ring, f, ShiftPolicy::Unbounded, None)
}

pub fn reduce_full(ring: &Ring, f: &Poly, basis: &[Poly]) -> Poly {
    Reducers::new(ring, basis.iter().cloned()).reduce_full(ring, f, ShiftPolicy::Unbounded, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::tests::{arb_poly, ring, ring1};
    use proptest::prelude::*;

    fn x(k: u32) -> Monomial {
        Monomial::var(Var::new(0, Shift::new([k])))
    }

    fn q(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn divisor_search() {
        let r = ring1(&["x"]);
        let g = r.poly([(q(1), x(1)), (q(-1), x(0))]);
        let hit = find_divisor(&r, &x(3).mul(&x(2)), std::slice::from_ref(&g)).unwrap();
        assert_eq!(hit.basis_index, 0);
        assert_eq!(hit.shift, Shift::new([2]));
        assert_eq!(hit.cofactor, x(2));
        assert!(find_divisor(&r, &Monomial::one(), std::slice::from_ref(&g)).is_none());

        let r2 = ring(2, &["x", "y"]);
        let y01 = Monomial::var(Var::new(1, Shift::new([0, 1])));
        let x20 = Monomial::var_pow(Var::new(0, Shift::new([2, 0])), 3);
        let g = r2.poly([(q(1), y01)]);
        assert!(find_divisor(&r2, &x20, &[g]).is_none());
    }

    #[test]
    fn constant_divides_everything() {
        let r = ring1(&["x"]);
        let one = Poly::constant(q(3));
        let hit = find_divisor(&r, &x(4), std::slice::from_ref(&one)).unwrap();
        assert!(hit.shift.is_identity());
        assert_eq!(hit.cofactor, x(4));
        let f = r.poly([(q(1), x(2)), (q(5), Monomial::one())]);
        assert!(reduce(&r, &f, &[one]).is_zero());
    }

    #[test]
    fn tie_break_prefers_largest_shift() {
        let r = ring1(&["x"]);
        let g = r.poly([(q(1), x(0))]);
        let hit = find_divisor(&r, &x(5).mul(&x(2)), &[g.clone(), g]).unwrap();
        assert_eq!(hit.basis_index, 0);
        assert_eq!(hit.shift, Shift::new([5]));
        assert_eq!(hit.cofactor, x(2));
    }

    #[test]
    fn head_reduction() {
        let r = ring1(&["x"]);
        let g = r.poly([(q(1), x(1)), (q(-1), x(0))]);
        let f = r.poly([(q(1), x(1).mul(&x(0)))]);
        assert_eq!(reduce(&r, &f, std::slice::from_ref(&g)), r.poly([(q(1), x(0).mul(&x(0)))]));
        assert!(reduce(&r, &g, std::slice::from_ref(&g)).is_zero());
        assert_eq!(reduce(&r, &f, &[]), f);
    }

    #[test]
    fn full_reduction() {
        let r = ring1(&["x"]);
        let g = r.poly([(q(1), x(1)), (q(-1), x(0))]);
        let f = r.poly([(q(1), x(2)), (q(1), x(1).mul(&x(0)))]);
        let nf = reduce_full(&r, &f, std::slice::from_ref(&g));
        assert_eq!(nf, r.poly([(q(1), x(0).mul(&x(0))), (q(1), x(0))]));
        assert!(reduce_full(&r, &Poly::zero(), &[g]).is_zero());
    }

    #[test]
    fn policies() {
        let r = ring1(&["x"]);
        let g = r.poly([(q(1), x(1)), (q(-1), x(0))]);
        let red = Reducers::new(&r, [g]);
        assert!(red.find_divisor(&r, &x(3), ShiftPolicy::MaxDegree(1)).is_none());
        assert!(red.find_divisor(&r, &x(3), ShiftPolicy::MaxDegree(2)).is_some());
        assert!(red.find_divisor(&r, &x(3), ShiftPolicy::MaxOrd(2)).is_none());
        assert!(red.find_divisor(&r, &x(3), ShiftPolicy::MaxOrd(3)).is_some());
        assert!(red.find_divisor(&r, &x(3), ShiftPolicy::IdentityOnly).is_none());
        assert!(red.find_divisor(&r, &x(1), ShiftPolicy::IdentityOnly).is_some());
    }

    fn arb_basis() -> impl Strategy<Value = Vec<Poly>> {
        prop::collection::vec(arb_poly(ring(2, &["x", "y"])), 1..4)
            .prop_map(|gs| gs.into_iter().filter(|g| !g.is_zero()).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn certificate_replays(f in arb_poly(ring(2, &["x", "y"])), gs in arb_basis()) {
            let r = ring(2, &["x", "y"]);
            let red = Reducers::new(&r, gs.clone());
            let mut cert = Certificate::default();
            let h = red.reduce_full(&r, &f, ShiftPolicy::Unbounded, Some(&mut cert));
            prop_assert_eq!(cert.replay(&r, &gs, &h), f);
            for t in h.terms() {
                prop_assert!(!red.is_reducible(&r, &t.mono, ShiftPolicy::Unbounded));
            }
            let again = red.reduce_full(&r, &h, ShiftPolicy::Unbounded, None);
            prop_assert_eq!(again, h);
        }

        #[test]
        fn head_reduction_sound(f in arb_poly(ring(2, &["x", "y"])), gs in arb_basis()) {
            let r = ring(2, &["x", "y"]);
            let red = Reducers::new(&r, gs.clone());
            let mut cert = Certificate::default();
            let h = red.reduce(&r, &f, ShiftPolicy::Unbounded, Some(&mut cert));
            prop_assert_eq!(cert.replay(&r, &gs, &h), f);
            if let Some(lm) = h.lm() {
                prop_assert!(!red.is_reducible(&r, lm, ShiftPolicy::Unbounded));
            }
        }
    }
}
