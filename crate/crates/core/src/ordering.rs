//! Monomial Σ-orderings built as block orderings: monomials are cut into
//! blocks of equal shift, blocks are visited by descending shift, and the
//! first differing block decides under the symbol ordering.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::{Monomial, RingSignature};
use crate::shift::Shift;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    DegLex,
    DegRevLex,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Lex => "lex",
            OrderKind::DegLex => "deglex",
            OrderKind::DegRevLex => "degrevlex",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "lex" => Some(OrderKind::Lex),
            "deglex" => Some(OrderKind::DegLex),
            "degrevlex" => Some(OrderKind::DegRevLex),
            _ => None,
        }
    }
}

/// A monomial ordering on exponent vectors. `priority[0]` is the index of
/// the most significant coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl VectorOrder {
    /// The ordering with coordinate 0 most significant.
    pub fn new(kind: OrderKind, len: usize) -> Self {
        VectorOrder {
            kind,
            priority: (0..len).collect(),
        }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &p in &priority {
            if p >= seen.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidOrdering(format!(
                    "priority {priority:?} is not a permutation"
                )));
            }
        }
        Ok(VectorOrder { kind, priority })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn len(&self) -> usize {
        self.priority.len()
    }

    pub fn is_empty(&self) -> bool {
        self.priority.is_empty()
    }

    fn is_structural(&self) -> bool {
        self.priority.iter().enumerate().all(|(i, &p)| i == p)
            && (self.kind == OrderKind::Lex || self.priority.len() <= 1)
    }

    pub fn is_degree_compatible(&self) -> bool {
        self.kind != OrderKind::Lex || self.priority.len() <= 1
    }

    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        let lex = || {
            for &i in &self.priority {
                match a[i].cmp(&b[i]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        };
        let degree = || {
            let da: u64 = a.iter().map(|&x| u64::from(x)).sum();
            let db: u64 = b.iter().map(|&x| u64::from(x)).sum();
            da.cmp(&db)
        };
        match self.kind {
            OrderKind::Lex => lex(),
            OrderKind::DegLex => degree().then_with(lex),
            OrderKind::DegRevLex => degree().then_with(|| {
                for &i in self.priority.iter().rev() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    /// Append a key whose lexicographic order is this order.
    fn push_key(&self, e: &[u32], out: &mut Vec<u64>) {
        if self.kind != OrderKind::Lex {
            out.push(e.iter().map(|&x| u64::from(x)).sum());
        }
        if self.kind == OrderKind::DegRevLex {
            out.extend(self.priority.iter().rev().map(|&i| u64::MAX - u64::from(e[i])));
        } else {
            out.extend(self.priority.iter().map(|&i| u64::from(e[i])));
        }
    }

    fn fmt_with(&self, names: &[String]) -> String {
        let chain: Vec<&str> = self.priority.iter().map(|&i| names[i].as_str()).collect();
        format!("{}[{}]", self.kind.name(), chain.join(">"))
    }
}

/// The block ordering determined by an ordering of `Σ` and an ordering of
/// the symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderingSpec {
    shifts: VectorOrder,
    symbols: VectorOrder,
    structural_shifts: bool,
}

type Block = (usize, usize);

impl OrderingSpec {
    pub fn block(shifts: VectorOrder, symbols: VectorOrder) -> Self {
        let structural_shifts = shifts.is_structural();
        OrderingSpec {
            shifts,
            symbols,
            structural_shifts,
        }
    }

    pub fn shift_order(&self) -> &VectorOrder {
        &self.shifts
    }

    pub fn symbol_order(&self) -> &VectorOrder {
        &self.symbols
    }

    pub(crate) fn check_against(&self, sig: &RingSignature) -> Result<()> {
        if self.shifts.len() != sig.shift_rank() {
            return Err(Error::InvalidOrdering(format!(
                "shift ordering covers {} generators, ring has {}",
                self.shifts.len(),
                sig.shift_rank()
            )));
        }
        if self.symbols.len() != sig.symbols().len() {
            return Err(Error::InvalidOrdering(format!(
                "symbol ordering covers {} symbols, ring has {}",
                self.symbols.len(),
                sig.symbols().len()
            )));
        }
        Ok(())
    }

    pub fn compare_shift(&self, s: &Shift, t: &Shift) -> Ordering {
        self.shifts.compare(s.exponents(), t.exponents())
    }

    /// Whether `ord(m) < ord(n)` forces `m ≺ n`.
    pub fn is_ord_compatible(&self) -> bool {
        self.shifts.is_degree_compatible()
    }

    /// Ranges of equal-shift factors of `m`, most significant shift first.
    fn blocks(&self, m: &Monomial) -> SmallVec<[Block; 8]> {
        let f = m.factors();
        let mut out: SmallVec<[Block; 8]> = SmallVec::new();
        let mut start = 0;
        for i in 1..=f.len() {
            if i == f.len() || f[i].0.shift != f[start].0.shift {
                out.push((start, i));
                start = i;
            }
        }
        if self.structural_shifts {
            out.reverse();
        } else {
            out.sort_by(|a, b| self.compare_shift(&f[b.0].0.shift, &f[a.0].0.shift));
        }
        out
    }

    fn compare_blocks(&self, m: &Monomial, a: Block, n: &Monomial, b: Block) -> Ordering {
        let (fa, fb) = (&m.factors()[a.0..a.1], &n.factors()[b.0..b.1]);
        if self.symbols.len() == 1 {
            return fa[0].1.cmp(&fb[0].1);
        }
        let mut ea: SmallVec<[u32; 8]> = SmallVec::from_elem(0, self.symbols.len());
        let mut eb = ea.clone();
        for (v, e) in fa {
            ea[v.symbol as usize] = *e;
        }
        for (v, e) in fb {
            eb[v.symbol as usize] = *e;
        }
        self.symbols.compare(&ea, &eb)
    }

    pub fn compare_monomials(&self, m: &Monomial, n: &Monomial) -> Ordering {
        let (bm, bn) = (self.blocks(m), self.blocks(n));
        let (mut i, mut j) = (0, 0);
        loop {
            match (bm.get(i), bn.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&a), Some(&b)) => {
                    let (sa, sb) = (&m.factors()[a.0].0.shift, &n.factors()[b.0].0.shift);
                    // a nonempty block beats the empty block at the same shift
                    match self.compare_shift(sa, sb) {
                        Ordering::Equal => match self.compare_blocks(m, a, n, b) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            o => return o,
                        },
                        o => return o,
                    }
                }
            }
        }
    }

    /// A key with `key(m) < key(n)` exactly when `m ≺ n`. Every block
    /// contributes the same number of entries.
    pub fn monomial_key(&self, m: &Monomial) -> Vec<u64> {
        let f = m.factors();
        let mut out = Vec::new();
        let mut e: SmallVec<[u32; 8]> = SmallVec::from_elem(0, self.symbols.len());
        for (a, b) in self.blocks(m) {
            self.shifts.push_key(f[a].0.shift.exponents(), &mut out);
            e.iter_mut().for_each(|x| *x = 0);
            for (v, k) in &f[a..b] {
                e[v.symbol as usize] = *k;
            }
            self.symbols.push_key(&e, &mut out);
        }
        out
    }

    /// Render in the configuration syntax,
    /// e.g. `block(shifts=degrevlex[s1>s2>s3], symbols=lex[u>v>p])`.
    pub fn fmt_with(&self, sig: &RingSignature) -> String {
        let shift_names: Vec<String> = (1..=sig.shift_rank()).map(|i| format!("s{i}")).collect();
        format!(
            "block(shifts={}, symbols={})",
            self.shifts.fmt_with(&shift_names),
            self.symbols.fmt_with(sig.symbols())
        )
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::tests::arb_monomial;
    use crate::ring::Var;
    use proptest::prelude::*;

    fn s(e: &[u32]) -> Shift {
        Shift::new(e.iter().copied())
    }

    fn spec(shifts: OrderKind, r: usize, n: usize) -> OrderingSpec {
        OrderingSpec::block(VectorOrder::new(shifts, r), VectorOrder::new(OrderKind::Lex, n))
    }

    #[test]
    fn degrevlex_shift_chain() {
        let o = spec(OrderKind::DegRevLex, 3, 1);
        let chain = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]];
        for w in chain.windows(2) {
            assert_eq!(o.compare_shift(&s(&w[0]), &s(&w[1])), Ordering::Greater);
        }
        assert_eq!(o.compare_shift(&s(&[0, 0, 0]), &s(&[0, 0, 0])), Ordering::Equal);
        assert_eq!(o.compare_shift(&s(&[1, 0, 0]), &s(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn variable_chain() {
        let o = spec(OrderKind::DegRevLex, 3, 2);
        let v = |sym: usize, e: [u32; 3]| Monomial::var(Var::new(sym, Shift::new(e)));
        let chain = [
            v(0, [1, 0, 0]),
            v(1, [1, 0, 0]),
            v(0, [0, 1, 0]),
            v(1, [0, 1, 0]),
            v(0, [0, 0, 1]),
            v(1, [0, 0, 1]),
            v(0, [0, 0, 0]),
            v(1, [0, 0, 0]),
            Monomial::one(),
        ];
        for w in chain.windows(2) {
            assert_eq!(o.compare_monomials(&w[0], &w[1]), Ordering::Greater, "{:?} {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn cyclic_example_leading_monomials() {
        let o = spec(OrderKind::Lex, 1, 1);
        let x = |k: u32| Monomial::var(Var::new(0, Shift::new([k])));
        let a = x(7).mul(&x(7));
        let b = x(6).mul(&x(7));
        let c = x(0).mul(&x(2));
        assert_eq!(o.compare_monomials(&a, &b), Ordering::Greater);
        assert_eq!(o.compare_monomials(&b, &c), Ordering::Greater);
        assert_eq!(o.compare_monomials(&c, &x(1).mul(&x(1))), Ordering::Greater);
    }

    #[test]
    fn compatibility() {
        assert!(spec(OrderKind::DegRevLex, 3, 3).is_ord_compatible());
        assert!(!spec(OrderKind::Lex, 2, 1).is_ord_compatible());
        assert!(spec(OrderKind::DegLex, 2, 1).is_ord_compatible());
        // on N every monomial ordering is the natural one
        assert!(spec(OrderKind::Lex, 1, 1).is_ord_compatible());
    }

    #[test]
    fn priorities() {
        assert!(VectorOrder::with_priority(OrderKind::Lex, vec![1, 0]).is_ok());
        assert!(VectorOrder::with_priority(OrderKind::Lex, vec![1, 1]).is_err());
        let o = VectorOrder::with_priority(OrderKind::Lex, vec![1, 0]).unwrap();
        assert_eq!(o.compare(&[1, 0], &[0, 1]), Ordering::Less);
    }

    #[test]
    fn config_rendering() {
        let sig = RingSignature::new(3, ["u", "v", "p"], ["H"]).unwrap();
        assert_eq!(
            spec(OrderKind::DegRevLex, 3, 3).fmt_with(&sig),
            "block(shifts=degrevlex[s1>s2>s3], symbols=lex[u>v>p])"
        );
    }

    fn arb_spec() -> impl Strategy<Value = OrderingSpec> {
        let kind = prop_oneof![Just(OrderKind::Lex), Just(OrderKind::DegLex), Just(OrderKind::DegRevLex)];
        (kind.clone(), kind, Just(vec![0usize, 1]).prop_shuffle(), Just(vec![0usize, 1]).prop_shuffle())
            .prop_map(|(a, b, pa, pb)| {
                OrderingSpec::block(
                    VectorOrder::with_priority(a, pa).unwrap(),
                    VectorOrder::with_priority(b, pb).unwrap(),
                )
            })
    }

    proptest! {
        #[test]
        fn total_order(o in arb_spec(), a in arb_monomial(2, 2, 2), b in arb_monomial(2, 2, 2), c in arb_monomial(2, 2, 2)) {
            prop_assert_eq!(o.compare_monomials(&a, &b), o.compare_monomials(&b, &a).reverse());
            prop_assert_eq!(o.compare_monomials(&a, &b) == Ordering::Equal, a == b);
            if o.compare_monomials(&a, &b) != Ordering::Greater && o.compare_monomials(&b, &c) != Ordering::Greater {
                prop_assert_ne!(o.compare_monomials(&a, &c), Ordering::Greater);
            }
        }

        #[test]
        fn multiplicative_and_sigma(o in arb_spec(), a in arb_monomial(2, 2, 2), b in arb_monomial(2, 2, 2),
                                    t in arb_monomial(2, 2, 2), sh in prop::collection::vec(0u32..3, 2)) {
            let sh = Shift::new(sh);
            let c = o.compare_monomials(&a, &b);
            prop_assert_eq!(o.compare_monomials(&a.mul(&t), &b.mul(&t)), c);
            prop_assert_eq!(o.compare_monomials(&a.shifted(&sh), &b.shifted(&sh)), c);
            prop_assert_ne!(o.compare_monomials(&a.shifted(&sh), &a), Ordering::Less);
            prop_assert_ne!(o.compare_monomials(&a, &Monomial::one()), Ordering::Less);
        }

        #[test]
        fn key_agrees(o in arb_spec(), a in arb_monomial(2, 2, 3), b in arb_monomial(2, 2, 3)) {
            prop_assert_eq!(o.monomial_key(&a).cmp(&o.monomial_key(&b)), o.compare_monomials(&a, &b));
        }

        #[test]
        fn ord_compatibility(o in arb_spec(), a in arb_monomial(2, 2, 3), b in arb_monomial(2, 2, 3)) {
            if o.is_ord_compatible() && a.ord() < b.ord() {
                prop_assert_eq!(o.compare_monomials(&a, &b), Ordering::Less);
            }
        }
    }
}
