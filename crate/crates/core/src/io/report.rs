//! Run reports and problem-file serialization.

use serde::Serialize;

use crate::completion::{check_finite_membership, CompletionOptions, Mode, SigmaBasis, Stats, Status};
use crate::ring::{Poly, Ring};

/// `ring { ... }` block that parses back to the same ring.
pub fn print_ring(ring: &Ring) -> String {
    let sig = ring.signature();
    let mut out = format!("ring {{ shifts: {}; symbols: {};", sig.shift_rank(), sig.symbols().join(","));
    if !sig.parameters().is_empty() {
        out.push_str(&format!(" parameters: {};", sig.parameters().join(",")));
    }
    out.push_str(&format!(" order: {}; }}", ring.ordering().fmt_with(sig)));
    out
}

/// A complete problem file holding `basis` as its ideal block.
pub fn serialize_basis(ring: &Ring, basis: &[Poly]) -> String {
    let mut out = print_ring(ring);
    out.push_str("\nideal {\n");
    for g in basis {
        out.push_str("  ");
        out.push_str(&ring.fmt_poly(g));
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub mode: String,
    pub chain_criterion: bool,
    pub pair_budget: u64,
    pub order_cap: u64,
    pub ring: String,
    pub minimal: bool,
    pub interreduce: bool,
}

impl ConfigEcho {
    pub fn new(ring: &Ring, opts: &CompletionOptions, minimal: bool, interreduce: bool) -> Self {
        let mode = match opts.mode {
            Mode::Plain => "plain".to_string(),
            Mode::Truncated(d) => format!("truncated({d})"),
            Mode::Adaptive => "adaptive".to_string(),
        };
        ConfigEcho {
            mode,
            chain_criterion: opts.chain_criterion,
            pair_budget: opts.max_pairs,
            order_cap: opts.max_order,
            ring: print_ring(ring),
            minimal,
            interreduce,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub status: Status,
    pub basis: Vec<String>,
    pub leading_monomials: Vec<String>,
    pub stats: Stats,
    /// Least `d` with `x_i(σ_j^d)` a leading monomial multiple, when finite.
    pub membership: Option<Vec<Vec<u32>>>,
    pub wall_clock_ms: f64,
    pub config: ConfigEcho,
}

impl RunReport {
    pub fn new(basis: &SigmaBasis, elements: &[Poly], wall_clock_ms: f64, config: ConfigEcho) -> Self {
        let ring = &basis.ring;
        let lms: Vec<_> = elements.iter().filter_map(|g| g.lm().cloned()).collect();
        RunReport {
            status: basis.status,
            basis: elements.iter().map(|g| ring.fmt_poly(g)).collect(),
            leading_monomials: lms.iter().map(|m| ring.fmt_monomial(m)).collect(),
            stats: basis.stats,
            membership: check_finite_membership(&lms, ring.signature().symbols().len(), ring.shift_rank()),
            wall_clock_ms,
            config,
        }
    }

    /// Plain-text rendering used by the CLI.
    pub fn render(&self, with_stats: bool) -> String {
        let mut out = format!("status: {}\n", self.status);
        out.push_str(&format!("elements: {}\n", self.basis.len()));
        for g in &self.basis {
            out.push_str(g);
            out.push('\n');
        }
        if with_stats {
            let s = &self.stats;
            out.push_str(&format!(
                "pairs: generated {} product {} sigma {} chain {} truncated {} reduced {} zero {} new {}\n",
                s.generated, s.product, s.sigma, s.chain, s.truncated, s.reduced, s.zero, s.new_elements
            ));
            match &self.membership {
                Some(t) => out.push_str(&format!("membership: {t:?}\n")),
                None => out.push_str("membership: none\n"),
            }
            out.push_str(&format!("time: {:.3} ms\n", self.wall_clock_ms));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::sigma_gbasis;
    use crate::io::{parse_poly, parse_problem};

    #[test]
    fn serialized_basis_parses_back() {
        let text = "ring { shifts: 2; symbols: u,v; parameters: a,b; order: block(shifts=deglex[s2>s1], symbols=lex[v>u]); }\n\
                    ideal { u(1,0)*v(0,0) - a/b*v(0,1); (a+1)*u(0,2) - 3/7; }";
        let p = parse_problem(text).unwrap();
        let out = serialize_basis(&p.ring, &p.ideal);
        let q = parse_problem(&out).unwrap();
        assert_eq!(q.ideal, p.ideal);
        assert_eq!(q.ring.ordering(), p.ring.ordering());
        assert_eq!(q.ring.signature(), p.ring.signature());
    }

    #[test]
    fn report_fields() {
        let p = parse_problem("ring { shifts: 1; symbols: x; } ideal { x(1)-x(0); }").unwrap();
        let b = sigma_gbasis(&p.ring, &p.ideal, &CompletionOptions::default()).unwrap();
        let cfg = ConfigEcho::new(&p.ring, &CompletionOptions::default(), false, false);
        let rep = RunReport::new(&b, &b.elements, 0.0, cfg);
        assert_eq!(rep.basis, vec!["x(1)-x(0)"]);
        assert_eq!(rep.membership, Some(vec![vec![1]]));
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["status"]["kind"], "complete");
        let g = parse_poly(&p.ring, &rep.basis[0]).unwrap();
        assert_eq!(g, b.elements[0]);
    }
}
