//! Ideals of `K[x_1..x_d]` stable under a permutation `γ` of the variables.
//!
//! Each cycle of `γ` becomes one symbol of a difference ring with `r = 1`,
//! where `σ` acts as `γ`; the cycle of length `d_i` contributes the linear
//! relation `x_i(σ^{d_i}) - x_i(1)`.

use std::collections::BTreeSet;

use crate::coeff::FieldElement;
use crate::completion::{interreduce, sigma_gbasis, CompletionOptions, Mode, SigmaBasis};
use crate::error::{Error, Result};
use crate::ordering::{OrderKind, OrderingSpec, VectorOrder};
use crate::reduction::{Reducers, ShiftPolicy};
use crate::ring::{Monomial, Poly, Ring, RingSignature, Var};
use crate::shift::Shift;

/// A permutation of `{1..d}` in disjoint cycle notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationAction {
    points: usize,
    /// Each cycle starts at its smallest point; cycles are ordered by it.
    /// Fixed points appear as cycles of length 1.
    cycles: Vec<Vec<usize>>,
}

impl PermutationAction {
    /// Parse `(1 2 3)(4 5)`; entries may be separated by spaces or commas.
    /// `points` defaults to the largest point mentioned.
    pub fn parse(text: &str, points: Option<usize>) -> Result<Self> {
        let bad = |m: String| Error::InvalidPermutation(m);
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(bad(format!("expected `(` at `{rest}`")));
            };
            let end = body.find(')').ok_or_else(|| bad("unclosed cycle".into()))?;
            let cycle = body[..end]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad(format!("`{s}` is not a point"))))
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[end + 1..].trim_start();
        }
        let largest = cycles.iter().flatten().copied().max().unwrap_or(0);
        let points = points.unwrap_or(largest);
        Self::from_cycles(points, cycles)
    }

    pub fn from_cycles(points: usize, cycles: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |m: String| Error::InvalidPermutation(m);
        if points == 0 {
            return Err(bad("the permutation acts on no points".into()));
        }
        let mut seen = vec![false; points + 1];
        let mut out = Vec::new();
        for mut c in cycles {
            for &p in &c {
                if p == 0 || p > points {
                    return Err(bad(format!("point {p} is outside 1..{points}")));
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(bad(format!("point {p} occurs twice")));
                }
            }
            let lead = (0..c.len()).min_by_key(|&k| c[k]).unwrap_or(0);
            c.rotate_left(lead);
            out.push(c);
        }
        for (p, s) in seen.iter().enumerate().skip(1) {
            if !s {
                out.push(vec![p]);
            }
        }
        out.sort_by_key(|c| c[0]);
        Ok(PermutationAction { points, cycles: out })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Order of the permutation: the lcm of the cycle lengths.
    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles.iter().fold(1, |acc, c| acc / gcd(acc, c.len()) * c.len())
    }

    /// Image of point `p`.
    pub fn apply(&self, p: usize) -> usize {
        for c in &self.cycles {
            if let Some(k) = c.iter().position(|&q| q == p) {
                return c[(k + 1) % c.len()];
            }
        }
        p
    }

    /// The variable `x_i(σ^k)` standing for point `p`.
    pub fn variable_of_point(&self, p: usize) -> Option<Var> {
        self.cycles.iter().enumerate().find_map(|(i, c)| {
            c.iter()
                .position(|&q| q == p)
                .map(|k| Var::new(i, Shift::new([k as u32])))
        })
    }

    /// The point that `x_i(σ^k)` stands for, `k < d_i`.
    pub fn point_of_variable(&self, v: &Var) -> Option<usize> {
        let c = self.cycles.get(v.symbol as usize)?;
        c.get(v.shift.exponents()[0] as usize).copied()
    }

    pub fn symbol_names(&self) -> Vec<String> {
        if self.cycles.len() == 1 {
            vec!["x".to_string()]
        } else {
            (1..=self.cycles.len()).map(|i| format!("x{i}")).collect()
        }
    }

    /// `K[x_i(σ^k)]` with `r = 1` and lex orderings: larger shifts first,
    /// then `x1 > x2 > …`.
    pub fn ring(&self, parameters: &[String]) -> Result<Ring> {
        let sig = RingSignature::new(1, self.symbol_names(), parameters.iter().cloned())?;
        let order = OrderingSpec::block(
            VectorOrder::new(OrderKind::Lex, 1),
            VectorOrder::new(OrderKind::Lex, self.cycles.len()),
        );
        Ring::new(sig, order)
    }

    /// `x_i(σ^{d_i}) - x_i(1)` for every cycle.
    pub fn relations(&self, ring: &Ring) -> Vec<Poly> {
        let one = FieldElement::one();
        self.cycles
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let top = Monomial::var(Var::new(i, Shift::new([c.len() as u32])));
                let base = Monomial::var(Var::new(i, Shift::new([0])));
                ring.poly([(one.clone(), top), (-&one, base)])
            })
            .collect()
    }
}

/// A γ-stable ideal given by generators in the normal variables.
#[derive(Clone, Debug)]
pub struct SymmetricIdeal {
    pub action: PermutationAction,
    pub ring: Ring,
    pub generators: Vec<Poly>,
    pub relations: Vec<Poly>,
}

impl SymmetricIdeal {
    /// Generators together with the cycle relations.
    pub fn sigma_generators(&self) -> Vec<Poly> {
        self.generators.iter().chain(&self.relations).cloned().collect()
    }
}

/// Check that every generator uses only variables `x_i(σ^k)` with
/// `k < d_i` and attach the cycle relations.
pub fn symmetric_setup(action: &PermutationAction, ring: &Ring, generators: &[Poly]) -> Result<SymmetricIdeal> {
    for g in generators {
        ring.check_poly(g)?;
        for t in g.terms() {
            for (v, _) in t.mono.factors() {
                let len = action.cycles().get(v.symbol as usize).map_or(0, Vec::len);
                if v.shift.exponents()[0] as usize >= len {
                    return Err(Error::OutsideStaircase(ring.fmt_monomial(&Monomial::var(v.clone()))));
                }
            }
        }
    }
    Ok(SymmetricIdeal {
        action: action.clone(),
        ring: ring.clone(),
        generators: generators.to_vec(),
        relations: action.relations(ring),
    })
}

/// Complete generators plus relations, then minimalize and interreduce;
/// the cycle relations themselves are left out of `elements`.
pub fn groebner_gamma_basis(ideal: &SymmetricIdeal, opts: &CompletionOptions) -> Result<SigmaBasis> {
    let opts = CompletionOptions {
        mode: Mode::Plain,
        ..opts.clone()
    };
    let mut basis = sigma_gbasis(&ideal.ring, &ideal.sigma_generators(), &opts)?;
    let reduced = interreduce(&ideal.ring, &basis.elements);
    basis.elements = reduced.into_iter().filter(|g| !ideal.relations.contains(g)).collect();
    Ok(basis)
}

/// The classical basis of `L ∩ K[x_i(σ^k): k < d_i]`: every shift `γ^k·g`,
/// `k` below the order of `γ`, rewritten through the relations, then made
/// minimal and reduced without shifts.
pub fn expand_classical_basis(ideal: &SymmetricIdeal, gamma_basis: &[Poly]) -> Result<Vec<Poly>> {
    let ring = &ideal.ring;
    let rel = Reducers::new(ring, ideal.relations.iter().cloned());
    let mut seen = BTreeSet::new();
    let mut out: Vec<Poly> = Vec::new();
    for g in gamma_basis {
        for k in 0..ideal.action.order() as u32 {
            let h = rel.reduce_full(ring, &g.shifted(&Shift::new([k])), ShiftPolicy::Unbounded, None);
            if h.is_zero() {
                continue;
            }
            let h = h.monic()?;
            let key = ring.fmt_poly(&h);
            if seen.insert(key) {
                out.push(h);
            }
        }
    }
    Ok(classical_reduce(ring, out))
}

/// Minimal reduced basis from a Gröbner basis, using ordinary divisibility.
pub fn classical_reduce(ring: &Ring, basis: Vec<Poly>) -> Vec<Poly> {
    let lms: Vec<Monomial> = basis.iter().map(|g| g.lm().expect("nonzero").clone()).collect();
    let mut keep: Vec<Poly> = basis
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            !lms.iter()
                .enumerate()
                .any(|(j, m)| j != i && m.divides(&lms[i]) && (*m != lms[i] || j < i))
        })
        .map(|(_, g)| g.clone())
        .collect();
    for i in 0..keep.len() {
        let mut rest = Reducers::new(ring, keep.iter().cloned());
        rest.deactivate(i);
        let g = rest.reduce_full(ring, &keep[i], ShiftPolicy::IdentityOnly, None);
        keep[i] = g.monic().expect("leading monomial is irreducible");
    }
    keep.sort_by(|a, b| ring.cmp(a.lm().expect("nonzero"), b.lm().expect("nonzero")));
    keep
}
