//! Parsed problem files and their canonical text form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::backend::{ModulePresentation, MonomialModule, PidModule};
use crate::monomial::MonomialIdeal;
use crate::numeric::{GfPolyRing, IntegerRing, Matrix, UniPoly};
use crate::omega::CofiniteZModule;
use crate::ring::{PidElem, PrimeIdealRef, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Summand {
    Element(PidElem),
    Ideal(MonomialIdeal),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleDecl {
    /// rows are generators, columns are relations
    Coker(Vec<Vec<PidElem>>),
    Cyclic(Summand),
    Dsum(Vec<Summand>),
    Cofinite(CofiniteZModule),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub ring: RingSpec,
    pub modules: Vec<(String, ModuleDecl)>,
    pub order: Option<Vec<PrimeIdealRef>>,
    pub params: BTreeMap<String, String>,
}

/// A resolved module: finitely generated, or the symbolic ℤ-class.
#[derive(Clone, Debug)]
pub enum Target {
    Finite(ModulePresentation),
    Cofinite(CofiniteZModule),
}

/// Block of a PID presentation: generator count and relation rows.
struct Block {
    rank: usize,
    rows: Vec<Vec<PidElem>>,
}

impl ProblemFile {
    pub fn module(&self, name: &str) -> Option<&ModuleDecl> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }

    /// The module named `name`, or the last declared one.
    pub fn resolve(&self, name: Option<&str>) -> Option<(String, Target)> {
        let (name, decl) = match name {
            Some(n) => self.modules.iter().find(|(m, _)| m == n)?,
            None => self.modules.last()?,
        };
        let target = match decl {
            ModuleDecl::Cofinite(c) => Target::Cofinite(c.clone()),
            _ => Target::Finite(self.presentation(decl)),
        };
        Some((name.clone(), target))
    }

    fn presentation(&self, decl: &ModuleDecl) -> ModulePresentation {
        match &self.ring {
            RingSpec::Monomial { field, vars } => {
                ModulePresentation::Monomial(MonomialModule::new(field.clone(), vars.clone(), self.ideals(decl)))
            }
            RingSpec::Integers => {
                let b = self.block(decl);
                let rows = b
                    .rows
                    .into_iter()
                    .map(|r| {
                        r.into_iter()
                            .map(|e| match e {
                                PidElem::Int(n) => n,
                                PidElem::Poly(_) => unreachable!("checked by the parser"),
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>();
                let cols = rows.first().map_or(0, Vec::len);
                ModulePresentation::Integer(PidModule::new(IntegerRing, b.rank, Matrix::from_rows(cols, rows)))
            }
            RingSpec::UnivariateGf { modulus, var } => {
                let b = self.block(decl);
                let rows = b
                    .rows
                    .into_iter()
                    .map(|r| {
                        r.into_iter()
                            .map(|e| match e {
                                PidElem::Poly(f) => f,
                                PidElem::Int(_) => unreachable!("checked by the parser"),
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>();
                let cols = rows.first().map_or(0, Vec::len);
                ModulePresentation::Polynomial(PidModule::new(
                    GfPolyRing::new(*modulus, var.clone()),
                    b.rank,
                    Matrix::from_rows(cols, rows),
                ))
            }
        }
    }

    fn zero_elem(&self) -> PidElem {
        match &self.ring {
            RingSpec::UnivariateGf { modulus, .. } => PidElem::Poly(UniPoly::zero(*modulus)),
            _ => PidElem::Int(BigInt::zero()),
        }
    }

    fn summand_block(&self, s: &Summand) -> Block {
        match s {
            Summand::Element(e) => Block {
                rank: 1,
                rows: vec![vec![e.clone()]],
            },
            Summand::Named(n) => self.block(self.module(n).expect("resolved by the parser")),
            Summand::Ideal(_) => unreachable!("checked by the parser"),
        }
    }

    fn block(&self, decl: &ModuleDecl) -> Block {
        match decl {
            ModuleDecl::Coker(rows) => Block {
                rank: rows.len(),
                rows: rows.clone(),
            },
            ModuleDecl::Cyclic(s) => self.summand_block(s),
            ModuleDecl::Dsum(items) => {
                let blocks: Vec<Block> = items.iter().map(|s| self.summand_block(s)).collect();
                let cols: Vec<usize> = blocks.iter().map(|b| b.rows.first().map_or(0, Vec::len)).collect();
                let total: usize = cols.iter().sum();
                let mut rows = Vec::new();
                let mut offset = 0;
                for (b, c) in blocks.iter().zip(&cols) {
                    for r in &b.rows {
                        let mut row = vec![self.zero_elem(); total];
                        row[offset..offset + c].clone_from_slice(r);
                        rows.push(row);
                    }
                    offset += c;
                }
                Block {
                    rank: blocks.iter().map(|b| b.rank).sum(),
                    rows,
                }
            }
            ModuleDecl::Cofinite(_) => unreachable!("checked by the parser"),
        }
    }

    fn summand_ideals(&self, s: &Summand) -> Vec<MonomialIdeal> {
        match s {
            Summand::Ideal(i) => vec![i.clone()],
            Summand::Named(n) => self.ideals(self.module(n).expect("resolved by the parser")),
            Summand::Element(_) => unreachable!("checked by the parser"),
        }
    }

    fn ideals(&self, decl: &ModuleDecl) -> Vec<MonomialIdeal> {
        match decl {
            ModuleDecl::Cyclic(s) => self.summand_ideals(s),
            ModuleDecl::Dsum(items) => items.iter().flat_map(|s| self.summand_ideals(s)).collect(),
            _ => unreachable!("checked by the parser"),
        }
    }

    fn render_summand(&self, s: &Summand) -> String {
        match s {
            Summand::Element(e) => format!("({})", self.ring.format_elem(e)),
            Summand::Ideal(i) => render_ideal_gens(i, &self.ring),
            Summand::Named(n) => n.clone(),
        }
    }

    pub fn render_decl(&self, decl: &ModuleDecl) -> String {
        match decl {
            ModuleDecl::Coker(rows) => {
                let rows: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        let es: Vec<String> = r.iter().map(|e| self.ring.format_elem(e)).collect();
                        format!("[{}]", es.join(","))
                    })
                    .collect();
                format!("coker [{}]", rows.join(","))
            }
            ModuleDecl::Cyclic(s) => format!("cyclic {}", self.render_summand(s)),
            ModuleDecl::Dsum(items) => {
                let parts: Vec<String> = items.iter().map(|s| self.render_summand(s)).collect();
                format!("dsum ({})", parts.join(";"))
            }
            ModuleDecl::Cofinite(c) => render_cofinite(c),
        }
    }

    pub fn render_order(&self, order: &[PrimeIdealRef]) -> String {
        let parts: Vec<String> = order
            .iter()
            .map(|p| format!("({})", self.ring.prime_generators(p).join(",")))
            .collect();
        parts.join(",")
    }

    /// Canonical text; parsing it gives back an equal problem.
    pub fn to_text(&self) -> String {
        let mut out = format!("ring {}\n", self.ring);
        for (name, decl) in &self.modules {
            out.push_str(&format!("module {name} = {}\n", self.render_decl(decl)));
        }
        if let Some(o) = &self.order {
            out.push_str(&format!("order = {}\n", self.render_order(o)));
        }
        for (k, v) in &self.params {
            out.push_str(&format!("param {k} = {v}\n"));
        }
        out
    }
}

fn render_ideal_gens(i: &MonomialIdeal, ring: &RingSpec) -> String {
    if i.is_zero() {
        "(0)".to_string()
    } else {
        format!("({})", i.generator_strings(ring.var_names()).join(","))
    }
}

fn render_cofinite(c: &CofiniteZModule) -> String {
    let scales: Vec<String> = c.free_scales.iter().map(|d| d.to_string()).collect();
    let mut out = format!("cofinite free [{}]", scales.join(","));
    let s = &c.support;
    if s.is_empty() {
        return out;
    }
    out.push_str(" primes");
    if !s.listed.is_empty() {
        let ps: Vec<String> = s.listed.iter().map(u64::to_string).collect();
        out.push_str(&format!(" ({})", ps.join(",")));
    }
    if let Some(t) = &s.tail {
        out.push_str(&format!(" >= {}", t.from));
        if !t.excluded.is_empty() {
            let ps: Vec<String> = t.excluded.iter().map(u64::to_string).collect();
            out.push_str(&format!(" except ({})", ps.join(",")));
        }
    }
    out
}
