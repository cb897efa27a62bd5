//! The specialization order on finite sets of primes: `q < p` iff `q ⊊ p`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ring::{PrimeIdealRef, RingSpec};

/// Default bound on poset size when enumerating extensions without a cap.
pub const UNCAPPED_LIMIT: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("prime {0} does not belong to ring {1}")]
    ForeignPrime(String, String),
    #[error("relation has a cycle through {0}")]
    Cyclic(String),
    #[error("more than {cap} linear extensions")]
    CapExceeded { cap: usize },
    #[error("{size} elements is too many to enumerate extensions without a cap (limit {limit})")]
    TooLarge { size: usize, limit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecPoset {
    ring: RingSpec,
    elements: Vec<PrimeIdealRef>,
    /// `less[i][j]` iff `elements[i] < elements[j]`
    less: Vec<Vec<bool>>,
}

pub type RankAssignment = BTreeMap<PrimeIdealRef, usize>;

/// Ascending list of primes, minimal first.
pub type LinearExtension = Vec<PrimeIdealRef>;

pub fn build_specialization_poset(ring: &RingSpec, primes: &[PrimeIdealRef]) -> Result<SpecPoset, PosetError> {
    let mut elements: Vec<PrimeIdealRef> = primes.to_vec();
    elements.sort();
    elements.dedup();
    for p in &elements {
        if !ring.owns(p) {
            return Err(PosetError::ForeignPrime(format!("{p:?}"), ring.to_string()));
        }
    }
    let less: Vec<Vec<bool>> = elements
        .iter()
        .map(|a| elements.iter().map(|b| a.strictly_below(b)).collect())
        .collect();
    let poset = SpecPoset {
        ring: ring.clone(),
        elements,
        less,
    };
    poset.check_acyclic()?;
    Ok(poset)
}

impl SpecPoset {
    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn elements(&self) -> &[PrimeIdealRef] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, p: &PrimeIdealRef) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn less(&self, a: &PrimeIdealRef, b: &PrimeIdealRef) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.less[i][j],
            _ => false,
        }
    }

    pub fn comparable(&self, a: &PrimeIdealRef, b: &PrimeIdealRef) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    /// Elements with nothing below them.
    pub fn minimal_elements(&self) -> Vec<PrimeIdealRef> {
        (0..self.len())
            .filter(|&j| (0..self.len()).all(|i| !self.less[i][j]))
            .map(|j| self.elements[j].clone())
            .collect()
    }

    pub fn is_linear_extension(&self, order: &[PrimeIdealRef]) -> bool {
        if order.len() != self.len() {
            return false;
        }
        let mut seen = vec![false; self.len()];
        let mut pos = vec![0; self.len()];
        for (k, p) in order.iter().enumerate() {
            let Some(i) = self.index_of(p) else {
                return false;
            };
            if seen[i] {
                return false;
            }
            seen[i] = true;
            pos[i] = k;
        }
        (0..self.len()).all(|i| (0..self.len()).all(|j| !self.less[i][j] || pos[i] < pos[j]))
    }

    // Containment of prime ideals is a partial order, so a cycle can only
    // come from a corrupted relation; checked anyway.
    fn check_acyclic(&self) -> Result<(), PosetError> {
        let n = self.len();
        let mut state = vec![0u8; n];
        fn visit(p: &SpecPoset, i: usize, state: &mut [u8]) -> Result<(), usize> {
            match state[i] {
                1 => return Err(i),
                2 => return Ok(()),
                _ => {}
            }
            state[i] = 1;
            for j in 0..p.len() {
                if p.less[i][j] {
                    visit(p, j, state)?;
                }
            }
            state[i] = 2;
            Ok(())
        }
        for i in 0..n {
            visit(self, i, &mut state).map_err(|k| PosetError::Cyclic(format!("{:?}", self.elements[k])))?;
        }
        Ok(())
    }
}

/// `rk(x) = max{rk(y) + 1 : y < x}`, zero on minimal elements.
pub fn rank_function(poset: &SpecPoset) -> RankAssignment {
    let n = poset.len();
    let mut rank: Vec<Option<usize>> = vec![None; n];
    fn rk(p: &SpecPoset, i: usize, memo: &mut [Option<usize>]) -> usize {
        if let Some(r) = memo[i] {
            return r;
        }
        let r = (0..p.len())
            .filter(|&j| p.less[j][i])
            .map(|j| rk(p, j, memo) + 1)
            .max()
            .unwrap_or(0);
        memo[i] = Some(r);
        r
    }
    (0..n)
        .map(|i| (poset.elements[i].clone(), rk(poset, i, &mut rank)))
        .collect()
}

/// All linear extensions in lexicographic order of element indices.
/// Without a cap the poset may have at most [`UNCAPPED_LIMIT`] elements;
/// with one, exceeding it is an error rather than a truncation.
pub fn linear_extensions(poset: &SpecPoset, cap: Option<usize>) -> Result<Vec<LinearExtension>, PosetError> {
    if cap.is_none() && poset.len() > UNCAPPED_LIMIT {
        return Err(PosetError::TooLarge {
            size: poset.len(),
            limit: UNCAPPED_LIMIT,
        });
    }
    let n = poset.len();
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut prefix = Vec::with_capacity(n);
    extend(poset, cap, &mut used, &mut prefix, &mut out)?;
    Ok(out)
}

fn extend(
    poset: &SpecPoset,
    cap: Option<usize>,
    used: &mut [bool],
    prefix: &mut Vec<usize>,
    out: &mut Vec<LinearExtension>,
) -> Result<(), PosetError> {
    let n = poset.len();
    if prefix.len() == n {
        if let Some(c) = cap {
            if out.len() == c {
                return Err(PosetError::CapExceeded { cap: c });
            }
        }
        out.push(prefix.iter().map(|&i| poset.elements[i].clone()).collect());
        return Ok(());
    }
    for i in 0..n {
        if used[i] || (0..n).any(|j| !used[j] && poset.less[j][i]) {
            continue;
        }
        used[i] = true;
        prefix.push(i);
        extend(poset, cap, used, prefix, out)?;
        prefix.pop();
        used[i] = false;
    }
    Ok(())
}

/// Sort by rank, then by the canonical generator order of the primes.
pub fn canonical_well_order(poset: &SpecPoset) -> LinearExtension {
    let ranks = rank_function(poset);
    let mut order = poset.elements.clone();
    order.sort_by(|a, b| ranks[a].cmp(&ranks[b]).then_with(|| a.cmp(b)));
    order
}
