//! Monomial orderings.
//!
//! An [`OrderingSpec`] is the user-facing description; [`MonomialOrder`] is the
//! compiled form bound to a fixed number of variables. Global orderings have
//! `1` as the smallest monomial, local ones have `1` as the largest, and block
//! orderings may mix the two.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderingSpec {
    Lex,
    DegRevLex,
    /// Degree reverse lexicographic with positive weights per variable.
    WeightedDegRevLex(Vec<u32>),
    /// Negative degree reverse lexicographic: lower total degree is larger.
    LocalDegRevLex,
    /// Weighted anti-degree order; lower weighted degree is larger.
    LocalWeightedDegRevLex(Vec<u32>),
    /// Sub-orderings on a partition of the variables, compared in sequence.
    Block(Vec<BlockSpec>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockSpec {
    pub vars: Vec<usize>,
    pub ordering: OrderingSpec,
}

impl OrderingSpec {
    /// Block ordering where every monomial containing a variable of `eliminate`
    /// exceeds every monomial without one. Both blocks use degrevlex.
    pub fn elimination(nvars: usize, eliminate: &[usize]) -> OrderingSpec {
        let rest: Vec<usize> = (0..nvars).filter(|i| !eliminate.contains(i)).collect();
        let mut first: Vec<usize> = eliminate.to_vec();
        first.sort_unstable();
        OrderingSpec::Block(vec![
            BlockSpec { vars: first, ordering: OrderingSpec::DegRevLex },
            BlockSpec { vars: rest, ordering: OrderingSpec::DegRevLex },
        ])
    }

    pub fn compile(&self, nvars: usize) -> Result<MonomialOrder, AlgebraError> {
        let mut blocks = Vec::new();
        self.compile_into((0..nvars).collect(), &mut blocks)?;
        let mut seen = vec![false; nvars];
        for b in &blocks {
            for &v in &b.vars {
                if v >= nvars || seen[v] {
                    return Err(AlgebraError::InvalidOrdering(format!("variable #{v} repeated or out of range")));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(AlgebraError::InvalidOrdering("blocks do not cover every variable".into()));
        }
        Ok(MonomialOrder { blocks, nvars })
    }

    fn compile_into(&self, vars: Vec<usize>, out: &mut Vec<CompiledBlock>) -> Result<(), AlgebraError> {
        let weights_for = |w: &Vec<u32>| -> Result<Vec<u32>, AlgebraError> {
            if w.len() != vars.len() || w.contains(&0) {
                return Err(AlgebraError::InvalidOrdering(format!("weight vector {w:?}")));
            }
            Ok(w.clone())
        };
        let block = match self {
            OrderingSpec::Lex => CompiledBlock { vars, kind: BlockKind::Lex, weights: None },
            OrderingSpec::DegRevLex => CompiledBlock { vars, kind: BlockKind::DegRevLex, weights: None },
            OrderingSpec::WeightedDegRevLex(w) => {
                let w = weights_for(w)?;
                CompiledBlock { vars, kind: BlockKind::DegRevLex, weights: Some(w) }
            }
            OrderingSpec::LocalDegRevLex => CompiledBlock { vars, kind: BlockKind::Local, weights: None },
            OrderingSpec::LocalWeightedDegRevLex(w) => {
                let w = weights_for(w)?;
                CompiledBlock { vars, kind: BlockKind::Local, weights: Some(w) }
            }
            OrderingSpec::Block(subs) => {
                for sub in subs {
                    let mapped = sub
                        .vars
                        .iter()
                        .map(|&i| vars.get(i).copied().ok_or(AlgebraError::InvalidOrdering(format!("block index #{i} out of range"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    sub.ordering.compile_into(mapped, out)?;
                }
                return Ok(());
            }
        };
        out.push(block);
        Ok(())
    }

    /// Anti-degree ordering matching the shape of `self` (used to move a
    /// computation into the local ring at the origin).
    pub fn localized(&self) -> OrderingSpec {
        match self {
            OrderingSpec::WeightedDegRevLex(w) | OrderingSpec::LocalWeightedDegRevLex(w) => {
                OrderingSpec::LocalWeightedDegRevLex(w.clone())
            }
            _ => OrderingSpec::LocalDegRevLex,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BlockKind {
    Lex,
    DegRevLex,
    Local,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct CompiledBlock {
    vars: Vec<usize>,
    kind: BlockKind,
    weights: Option<Vec<u32>>,
}

impl CompiledBlock {
    fn degree(&self, a: &[u32]) -> u64 {
        match &self.weights {
            Some(w) => self.vars.iter().zip(w).map(|(&i, &wi)| a[i] as u64 * wi as u64).sum(),
            None => self.vars.iter().map(|&i| a[i] as u64).sum(),
        }
    }

    fn revlex_tiebreak(&self, a: &[u32], b: &[u32]) -> Ordering {
        for &i in self.vars.iter().rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    }

    fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            BlockKind::Lex => {
                for &i in &self.vars {
                    if a[i] != b[i] {
                        return a[i].cmp(&b[i]);
                    }
                }
                Ordering::Equal
            }
            BlockKind::DegRevLex => self
                .degree(a)
                .cmp(&self.degree(b))
                .then_with(|| self.revlex_tiebreak(a, b)),
            BlockKind::Local => self
                .degree(b)
                .cmp(&self.degree(a))
                .then_with(|| self.revlex_tiebreak(a, b)),
        }
    }
}

/// A monomial ordering compiled for a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    blocks: Vec<CompiledBlock>,
    nvars: usize,
}

impl MonomialOrder {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        for block in &self.blocks {
            match block.cmp(a, b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// `1` is the smallest monomial: a well-order.
    pub fn is_global(&self) -> bool {
        self.blocks.iter().all(|b| b.kind != BlockKind::Local)
    }

    /// `1` is the largest monomial.
    pub fn is_local(&self) -> bool {
        self.blocks.iter().all(|b| b.kind == BlockKind::Local)
    }
}

/// How module terms `m·e_i` are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Position {
    /// Compare components first; lower component index is larger.
    OverTerm,
    /// Compare monomials first, components break ties.
    TermOverPosition,
    /// Component 0 above everything else; the remaining components are
    /// compared term over position. Eliminates `e_0` without the coefficient
    /// swell of a full position-over-term order.
    FirstOverTerm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub ring: MonomialOrder,
    pub position: Position,
}

impl ModuleOrder {
    pub fn ideal(ring: MonomialOrder) -> Self {
        ModuleOrder { ring, position: Position::OverTerm }
    }

    #[inline]
    pub fn cmp(&self, a: &[u32], ca: u32, b: &[u32], cb: u32) -> Ordering {
        match self.position {
            Position::OverTerm => cb.cmp(&ca).then_with(|| self.ring.cmp(a, b)),
            Position::TermOverPosition => self.ring.cmp(a, b).then_with(|| cb.cmp(&ca)),
            Position::FirstOverTerm => (cb == 0)
                .cmp(&(ca == 0))
                .reverse()
                .then_with(|| self.ring.cmp(a, b))
                .then_with(|| cb.cmp(&ca)),
        }
    }
}
