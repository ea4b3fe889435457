//! Test oracles and random inputs shared by the integration tests and the
//! acceptance runner. The classical Buchberger here works on dense
//! exponent vectors over plain rationals and shares no code with the
//! library's reduction or completion.

#![allow(dead_code)]

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use dgb_core::quotient::LinearRelation;
use dgb_core::shift::enumerate_up_to_degree;
use dgb_core::{FieldElement, Monomial, OrderKind, OrderingSpec, Poly, Ring, RingSignature, Shift, VectorOrder, Var};

pub type Exp = Vec<u32>;
pub type DPoly = Vec<(Exp, BigRational)>;
pub type Order<'a> = dyn Fn(&[u32], &[u32]) -> Ordering + 'a;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn normalize(order: &Order, mut terms: DPoly) -> DPoly {
    terms.sort_by(|a, b| order(&b.0, &a.0));
    let mut out: DPoly = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        match out.last_mut() {
            Some((f, d)) if *f == e => *d += c,
            _ => out.push((e, c)),
        }
        if out.last().is_some_and(|t| t.1.is_zero()) {
            out.pop();
        }
    }
    out
}

fn monic(f: DPoly) -> DPoly {
    let Some(lc) = f.first().map(|t| t.1.clone()) else {
        return f;
    };
    f.into_iter().map(|(e, c)| (e, c / &lc)).collect()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// `f - c·x^e·g`, merging two lists already sorted by `order`.
fn sub_mul(order: &Order, f: &DPoly, c: &BigRational, e: &[u32], g: &DPoly) -> DPoly {
    let mut out: DPoly = Vec::with_capacity(f.len() + g.len());
    let mut a = f.iter().peekable();
    let mut b = g.iter().map(|(ge, gc)| (ge.iter().zip(e).map(|(x, y)| x + y).collect::<Exp>(), -(c * gc))).peekable();
    loop {
        let next = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => a.next().unwrap().clone(),
            (None, Some(_)) => b.next().unwrap(),
            (Some(x), Some(y)) => match order(&x.0, &y.0) {
                Ordering::Greater => a.next().unwrap().clone(),
                Ordering::Less => b.next().unwrap(),
                Ordering::Equal => {
                    let (e, c1) = a.next().unwrap().clone();
                    let (_, c2) = b.next().unwrap();
                    (e, c1 + c2)
                }
            },
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

pub fn reduce_full(order: &Order, f: &DPoly, basis: &[DPoly]) -> DPoly {
    let mut rest = f.clone();
    let mut out: DPoly = Vec::new();
    'outer: while let Some((e, c)) = rest.first().cloned() {
        for g in basis {
            let (ge, gc) = &g[0];
            if divides(ge, &e) {
                let quot: Exp = e.iter().zip(ge).map(|(x, y)| x - y).collect();
                rest = sub_mul(order, &rest, &(&c / gc), &quot, g);
                continue 'outer;
            }
        }
        out.push((e, c));
        rest.remove(0);
    }
    out
}

/// Reduced Gröbner basis, pairs taken with the smallest lcm first, with the
/// coprime and chain criteria.
pub fn buchberger(order: &Order, gens: &[DPoly]) -> Vec<DPoly> {
    let mut basis: Vec<DPoly> = Vec::new();
    for g in gens {
        let h = reduce_full(order, &normalize(order, g.clone()), &basis);
        if !h.is_empty() {
            basis.push(monic(h));
        }
    }
    let mut pairs: Vec<(Exp, usize, usize)> = Vec::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((lcm(&basis[i][0].0, &basis[j][0].0), i, j));
        }
    }
    while !pairs.is_empty() {
        let k = (0..pairs.len()).min_by(|&a, &b| order(&pairs[a].0, &pairs[b].0)).unwrap();
        let (l, i, j) = pairs.swap_remove(k);
        done.insert((i, j));
        let (a, b) = (&basis[i], &basis[j]);
        if l.iter().zip(&a[0].0).zip(&b[0].0).all(|((x, y), z)| *x == y + z) {
            continue;
        }
        let settled = |x: usize, y: usize| done.contains(&(x.min(y), x.max(y)));
        if (0..basis.len()).any(|k| k != i && k != j && divides(&basis[k][0].0, &l) && settled(i, k) && settled(j, k)) {
            continue;
        }
        let ea: Exp = l.iter().zip(&a[0].0).map(|(x, y)| x - y).collect();
        let eb: Exp = l.iter().zip(&b[0].0).map(|(x, y)| x - y).collect();
        let sa = sub_mul(order, &Vec::new(), &-q(1), &ea, a);
        let s = sub_mul(order, &sa, &q(1), &eb, b);
        let h = reduce_full(order, &s, &basis);
        if !h.is_empty() {
            let n = basis.len();
            basis.push(monic(h));
            for i in 0..n {
                pairs.push((lcm(&basis[i][0].0, &basis[n][0].0), i, n));
            }
        }
    }
    // reduce
    let mut keep: Vec<DPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && divides(&h[0].0, &g[0].0) && (h[0].0 != g[0].0 || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::new();
    for i in 0..keep.len() {
        let others: Vec<DPoly> = keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        out.push(monic(reduce_full(order, &keep[i], &others)));
    }
    out.sort_by(|a, b| order(&a[0].0, &b[0].0));
    out
}

/// Variable numbering used to move between library and dense polynomials.
pub struct VarIndex {
    pub vars: Vec<Var>,
    pos: HashMap<Var, usize>,
}

impl VarIndex {
    pub fn new(vars: Vec<Var>) -> Self {
        let pos = vars.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        VarIndex { vars, pos }
    }

    /// Every `x_i(s)` with `deg(s) <= d`.
    pub fn up_to_degree(symbols: usize, rank: usize, d: u64) -> Self {
        let mut vars = Vec::new();
        for s in enumerate_up_to_degree(rank, d) {
            for i in 0..symbols {
                vars.push(Var::new(i, s.clone()));
            }
        }
        Self::new(vars)
    }

    pub fn monomial_to_exp(&self, m: &Monomial) -> Option<Exp> {
        let mut e = vec![0; self.vars.len()];
        for (v, k) in m.factors() {
            e[*self.pos.get(v)?] = *k;
        }
        Some(e)
    }

    pub fn exp_to_monomial(&self, e: &[u32]) -> Monomial {
        Monomial::from_factors(
            e.iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| (self.vars[i].clone(), k)),
        )
    }

    pub fn to_dense(&self, f: &Poly) -> Option<DPoly> {
        f.terms()
            .iter()
            .map(|t| Some((self.monomial_to_exp(&t.mono)?, t.coeff.as_rational()?.clone())))
            .collect()
    }

    pub fn to_poly(&self, ring: &Ring, f: &DPoly) -> Poly {
        ring.poly(f.iter().map(|(e, c)| (FieldElement::from(c.clone()), self.exp_to_monomial(e))))
    }

    /// The ring's own ordering, read on exponent vectors.
    pub fn ring_order<'a>(&'a self, ring: &'a Ring) -> impl Fn(&[u32], &[u32]) -> Ordering + 'a {
        let keys: RefCell<HashMap<Exp, Vec<u64>>> = RefCell::new(HashMap::new());
        move |a, b| {
            let mut keys = keys.borrow_mut();
            let mut key = |e: &[u32]| {
                keys.entry(e.to_vec())
                    .or_insert_with(|| ring.ordering().monomial_key(&self.exp_to_monomial(e)))
                    .clone()
            };
            key(a).cmp(&key(b))
        }
    }
}

/// Plain lexicographic order on exponent vectors, coordinate 0 largest.
pub fn lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

// random inputs

pub fn random_rational(rng: &mut StdRng) -> BigRational {
    let n: i64 = rng.gen_range(-5..=5);
    let d: i64 = rng.gen_range(1..=4);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_vector_order(rng: &mut StdRng, len: usize, kinds: &[OrderKind]) -> VectorOrder {
    let kind = kinds[rng.gen_range(0..kinds.len())];
    let mut priority: Vec<usize> = (0..len).collect();
    for i in (1..len).rev() {
        priority.swap(i, rng.gen_range(0..=i));
    }
    VectorOrder::with_priority(kind, priority).unwrap()
}

/// A ring with an ord-compatible ordering.
pub fn random_ring(rng: &mut StdRng, symbols: usize, rank: usize) -> Ring {
    let names: Vec<String> = ["x", "y", "z"][..symbols].iter().map(|s| s.to_string()).collect();
    let sig = RingSignature::new(rank, names, Vec::<String>::new()).unwrap();
    let shifts = random_vector_order(rng, rank, &[OrderKind::DegLex, OrderKind::DegRevLex]);
    let syms = random_vector_order(rng, symbols, &[OrderKind::Lex, OrderKind::DegLex, OrderKind::DegRevLex]);
    Ring::new(sig, OrderingSpec::block(shifts, syms)).unwrap()
}

/// One monic relation per symbol and generator, degrees in `0..=max_d`.
pub fn random_relations(rng: &mut StdRng, ring: &Ring, max_d: usize) -> Vec<LinearRelation> {
    let n = ring.signature().symbols().len();
    let r = ring.shift_rank();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..r {
            let d = rng.gen_range(0..=max_d);
            let mut coeffs: Vec<FieldElement> = (0..d).map(|_| FieldElement::from(random_rational(rng))).collect();
            coeffs.push(FieldElement::one());
            out.push(LinearRelation::new(i, j, coeffs).unwrap());
        }
    }
    out
}

/// A nonzero polynomial whose monomials all have order exactly `ord`.
pub fn random_ord_homogeneous(rng: &mut StdRng, ring: &Ring, ord: u64, max_terms: usize) -> Poly {
    let n = ring.signature().symbols().len();
    let r = ring.shift_rank();
    let top: Vec<Shift> = enumerate_up_to_degree(r, ord).into_iter().filter(|s| s.deg() == ord).collect();
    let low = enumerate_up_to_degree(r, ord);
    loop {
        let terms = rng.gen_range(1..=max_terms);
        let f = ring.poly((0..terms).map(|_| {
            let mut factors = vec![(Var::new(rng.gen_range(0..n), top[rng.gen_range(0..top.len())].clone()), 1)];
            if rng.gen_bool(0.5) {
                factors.push((Var::new(rng.gen_range(0..n), low[rng.gen_range(0..low.len())].clone()), 1));
            }
            let mut c = random_rational(rng);
            if c.is_zero() {
                c = BigRational::one();
            }
            (FieldElement::from(c), Monomial::from_factors(factors))
        }));
        if !f.is_zero() {
            return f;
        }
    }
}
