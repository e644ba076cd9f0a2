//! Buchberger's algorithm (global orderings) and Mora's tangent-cone variant
//! (local and mixed orderings) on module vectors.
//!
//! Pairs are handled with the Gebauer-Möller update: the chain criterion
//! always, the product criterion only for ideals. Pairs are selected by
//! sugar degree, ties broken by lcm and then by insertion index, so the
//! result is a deterministic function of the input.

use num_bigint::BigInt;
use num_traits::One;

use super::vector::{Term, Vector};
use super::Limits;
use crate::error::ComputeError;
use crate::poly::{ModuleOrder, Monomial, Rational};

struct Elem {
    v: Vector,
    ecart: u64,
    sugar: u64,
    len: usize,
    active: bool,
}

impl Elem {
    fn new(v: Vector, sugar: u64) -> Self {
        let ecart = v.ecart();
        let len = v.terms.len();
        Elem { v, ecart, sugar, len, active: false }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    sugar: u64,
    coprime: bool,
}

const CONTENT_INTERVAL: usize = 8;

/// Counts reduction steps against [`Limits::max_reductions`].
pub(crate) struct Budget {
    used: usize,
    max: usize,
}

impl Budget {
    pub fn new(limits: &Limits) -> Self {
        Budget { used: 0, max: limits.max_reductions }
    }

    pub fn tick(&mut self) -> Result<(), ComputeError> {
        self.used += 1;
        if self.used > self.max {
            return Err(ComputeError::ResourceLimit { what: "reduction steps", limit: self.max });
        }
        Ok(())
    }
}

/// Finds an element whose lead divides `t`, preferring the shortest (global)
/// or the lowest ecart (local).
fn find_reducer<'a>(elems: impl Iterator<Item = (usize, &'a Vector, u64, usize)>, t: &Term, by_ecart: bool) -> Option<(usize, u64)> {
    let tmask = t.exp.support_mask();
    let mut best: Option<(usize, u64, usize)> = None;
    for (idx, v, ecart, len) in elems {
        let l = v.lead();
        if l.comp != t.comp || (l.exp.support_mask() & !tmask) != 0 || !l.exp.divides(&t.exp) {
            continue;
        }
        let key = if by_ecart { ecart } else { len as u64 };
        match best {
            Some((_, k, _)) if k <= key => {}
            _ => best = Some((idx, key, len)),
        }
    }
    best.map(|(i, e, _)| (i, e))
}

pub(crate) struct Engine<'a> {
    ord: &'a ModuleOrder,
    limits: &'a Limits,
    global: bool,
    product_criterion: bool,
    elems: Vec<Elem>,
    pairs: Vec<Pair>,
    budget: Budget,
    truncate: Option<u64>,
}

impl<'a> Engine<'a> {
    pub fn new(ord: &'a ModuleOrder, limits: &'a Limits, rank_one: bool) -> Self {
        Engine {
            ord,
            limits,
            global: ord.ring.is_global(),
            product_criterion: rank_one,
            elems: Vec::new(),
            pairs: Vec::new(),
            budget: Budget::new(limits),
            truncate: None,
        }
    }

    /// Works modulo `m^n`: terms of degree `>= n` are dropped. Only valid for
    /// local degree orderings, where such terms are smaller than all others.
    pub fn truncated(mut self, n: u64) -> Self {
        self.truncate = Some(n);
        self
    }

    fn cut(&self, h: &mut Vector) {
        if let Some(n) = self.truncate {
            h.terms.retain(|t| t.exp.degree() < n);
        }
    }

    fn active(&self) -> impl Iterator<Item = (usize, &Vector, u64, usize)> {
        self.elems.iter().enumerate().filter(|(_, e)| e.active).map(|(i, e)| (i, &e.v, e.ecart, e.len))
    }

    /// Tails can be fully reduced when reduction terminates: global
    /// orderings, or local degree orderings modulo `m^n`.
    fn exact_tails(&self) -> bool {
        self.global || self.truncate.is_some()
    }

    /// Reduces every term after the lead, against the active set or against
    /// the single element `only`.
    fn tail_reduce(&mut self, mut h: Vector, only: Option<usize>) -> Result<Vector, ComputeError> {
        let mut pos = 1;
        let mut steps = 0;
        while pos < h.terms.len() {
            let found = match only {
                Some(i) => {
                    let e = &self.elems[i];
                    find_reducer(std::iter::once((i, &e.v, e.ecart, e.len)), &h.terms[pos], false)
                }
                None => find_reducer(self.active(), &h.terms[pos], false),
            };
            match found {
                Some((idx, _)) => {
                    self.budget.tick()?;
                    h.reduce_at(pos, &self.elems[idx].v, self.ord);
                    self.cut(&mut h);
                    steps += 1;
                    if steps % CONTENT_INTERVAL == 0 {
                        h.make_primitive();
                    }
                }
                None => pos += 1,
            }
        }
        h.make_primitive();
        Ok(h)
    }

    /// Top reduction against the active set (global orderings).
    fn top_reduce(&mut self, mut h: Vector) -> Result<Vector, ComputeError> {
        let mut steps = 0;
        while !h.is_zero() {
            let Some((idx, _)) = find_reducer(self.active(), h.lead(), false) else { break };
            self.budget.tick()?;
            let g = &self.elems[idx].v;
            h.reduce_at(0, g, self.ord);
            self.cut(&mut h);
            steps += 1;
            if steps % CONTENT_INTERVAL == 0 {
                h.make_primitive();
            }
        }
        if self.exact_tails() {
            // reduced tails keep coefficient growth in check
            h = self.tail_reduce(h, None)?;
        }
        h.make_primitive();
        Ok(h)
    }

    /// Mora's normal form against the active set (local or mixed orderings).
    fn mora_reduce(&mut self, h: Vector) -> Result<Vector, ComputeError> {
        let active: Vec<usize> = self.active().map(|(i, ..)| i).collect();
        let elems = &self.elems;
        let (h, _) = mora_nf(h, active.iter().map(|&i| (&elems[i].v, elems[i].ecart)), self.ord, &mut self.budget)?;
        Ok(h)
    }

    fn insert(&mut self, v: Vector, sugar: u64) -> Result<(), ComputeError> {
        let deg = v.max_degree();
        if deg > self.limits.max_degree {
            return Err(ComputeError::ResourceLimit { what: "basis element degree", limit: self.limits.max_degree as usize });
        }
        let h_idx = self.elems.len();
        self.elems.push(Elem::new(v, sugar.max(deg)));
        let (h_lead, h_comp, h_sugar) = {
            let h = &self.elems[h_idx];
            (h.v.lead().exp.clone(), h.v.lead().comp, h.sugar)
        };

        let mut cands: Vec<Pair> = Vec::new();
        for (g_idx, e) in self.elems.iter().enumerate() {
            if !e.active || e.v.lead().comp != h_comp {
                continue;
            }
            let g_lead = &e.v.lead().exp;
            let lcm = h_lead.lcm(g_lead);
            let sugar = (h_sugar + lcm.degree() - h_lead.degree()).max(e.sugar + lcm.degree() - g_lead.degree());
            let coprime = self.product_criterion && h_lead.is_coprime(g_lead);
            cands.push(Pair { i: g_idx, j: h_idx, lcm, comp: h_comp, sugar, coprime });
        }

        let mut kept: Vec<Pair> = Vec::new();
        let mut rest: std::collections::VecDeque<Pair> = cands.into();
        while let Some(p) = rest.pop_front() {
            let dominated = rest.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if p.coprime || !dominated {
                kept.push(p);
            }
        }
        kept.retain(|p| !p.coprime);

        let elems = &self.elems;
        self.pairs.retain(|p| {
            if p.comp != h_comp || !h_lead.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i].v.lead().exp.lcm(&h_lead);
            let lj = elems[p.j].v.lead().exp.lcm(&h_lead);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(kept);

        for e in self.elems.iter_mut().take(h_idx) {
            if e.active && e.v.lead().comp == h_comp && h_lead.divides(&e.v.lead().exp) {
                e.active = false;
            }
        }
        self.elems[h_idx].active = true;
        if self.exact_tails() {
            // keep tails reduced against the new lead; unreduced tails make
            // the integer coefficients of later reductions explode
            for k in 0..h_idx {
                let e = &self.elems[k];
                if !e.active || !e.v.terms[1..].iter().any(|t| t.comp == h_comp && h_lead.divides(&t.exp)) {
                    continue;
                }
                let r = self.tail_reduce(e.v.clone(), Some(h_idx))?;
                self.elems[k].len = r.terms.len();
                self.elems[k].v = r;
            }
        }
        Ok(())
    }

    fn select_pair(&mut self) -> Pair {
        let ord = &self.ord.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = a
                .sugar
                .cmp(&b.sugar)
                .then_with(|| ord.cmp(a.lcm.exponents(), b.lcm.exponents()))
                .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
                .is_lt();
            if better {
                best = k;
            }
        }
        self.pairs.swap_remove(best)
    }

    pub fn run(mut self, gens: Vec<Vector>) -> Result<Vec<Vector>, ComputeError> {
        for mut g in gens {
            self.cut(&mut g);
            if g.is_zero() {
                continue;
            }
            let sugar = g.max_degree();
            let h = if self.global || self.truncate.is_some() { self.top_reduce(g)? } else { self.mora_reduce(g)? };
            if !h.is_zero() {
                self.insert(h, sugar)?;
            }
        }
        let mut processed = 0usize;
        while !self.pairs.is_empty() {
            processed += 1;
            if processed > self.limits.max_pairs {
                return Err(ComputeError::ResourceLimit { what: "S-pairs", limit: self.limits.max_pairs });
            }
            let p = self.select_pair();
            let mut s = Vector::spoly(&self.elems[p.i].v, &self.elems[p.j].v, self.ord);
            self.cut(&mut s);
            let h = if self.global || self.truncate.is_some() { self.top_reduce(s)? } else { self.mora_reduce(s)? };
            if !h.is_zero() {
                self.insert(h, p.sugar)?;
            }
        }
        let mut basis: Vec<Vector> = self.elems.into_iter().filter(|e| e.active).map(|e| e.v).collect();
        if self.global {
            basis = interreduce(basis, self.ord);
        }
        let ord = self.ord;
        basis.sort_by(|a, b| {
            let (x, y) = (a.lead(), b.lead());
            ord.cmp(x.exp.exponents(), x.comp, y.exp.exponents(), y.comp)
        });
        Ok(basis)
    }
}

/// Full reduction of every element's tail against the others. Input must be
/// a minimal basis (no lead divides another).
fn interreduce(basis: Vec<Vector>, ord: &ModuleOrder) -> Vec<Vector> {
    let mut out = basis.clone();
    for k in 0..basis.len() {
        let others = basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(i, v)| (i, v, 0u64, v.terms.len()));
        let others: Vec<_> = others.collect();
        let mut unlimited = Budget { used: 0, max: usize::MAX };
        let (v, _) = full_reduce(basis[k].clone(), &others, 1, ord, &mut unlimited).expect("unlimited budget");
        out[k] = v;
    }
    out
}

/// Reduces every term of `h` starting at `from`. Returns the reduced vector
/// and `scale` with `reduced = scale * (h - combination)`.
pub(crate) fn full_reduce(
    mut h: Vector,
    basis: &[(usize, &Vector, u64, usize)],
    from: usize,
    ord: &ModuleOrder,
    budget: &mut Budget,
) -> Result<(Vector, Rational), ComputeError> {
    let mut scale = Rational::one();
    let mut pos = from;
    let mut steps = 0;
    while pos < h.terms.len() {
        match find_reducer(basis.iter().copied(), &h.terms[pos], false) {
            Some((idx, _)) => {
                budget.tick()?;
                let g = basis.iter().find(|b| b.0 == idx).unwrap().1;
                let a = h.reduce_at(pos, g, ord);
                scale *= Rational::from_integer(a);
                steps += 1;
                if steps % CONTENT_INTERVAL == 0 {
                    scale /= h.make_primitive();
                }
            }
            None => pos += 1,
        }
    }
    scale /= h.make_primitive();
    Ok((h, scale))
}

/// Mora's normal form: the reducer with minimal ecart is chosen, and `h`
/// joins the reducer set whenever its ecart is smaller than the reducer's.
pub(crate) fn mora_nf<'v>(
    mut h: Vector,
    basis: impl Iterator<Item = (&'v Vector, u64)>,
    ord: &ModuleOrder,
    budget: &mut Budget,
) -> Result<(Vector, Rational), ComputeError> {
    let fixed: Vec<(&Vector, u64)> = basis.collect();
    let n_fixed = fixed.len();
    let mut extra: Vec<(Vector, u64)> = Vec::new();
    let mut scale = Rational::one();
    let mut steps = 0;
    while !h.is_zero() {
        let cands = fixed
            .iter()
            .enumerate()
            .map(|(i, (v, e))| (i, *v, *e, v.terms.len()))
            .chain(extra.iter().enumerate().map(|(i, (v, e))| (n_fixed + i, v, *e, v.terms.len())));
        let Some((idx, g_ecart)) = find_reducer(cands, h.lead(), true) else { break };
        budget.tick()?;
        let h_ecart = h.ecart();
        let previous = (g_ecart > h_ecart).then(|| h.clone());
        let a: BigInt = if idx < n_fixed {
            h.reduce_at(0, fixed[idx].0, ord)
        } else {
            h.reduce_at(0, &extra[idx - n_fixed].0, ord)
        };
        if let Some(prev) = previous {
            extra.push((prev, h_ecart));
        }
        scale *= Rational::from_integer(a);
        steps += 1;
        if steps % CONTENT_INTERVAL == 0 {
            scale /= h.make_primitive();
        }
    }
    scale /= h.make_primitive();
    Ok((h, scale))
}

/// Basis of the module generated by `gens` under `ord`: reduced Gröbner basis
/// for global orderings, minimal standard basis otherwise.
pub(crate) fn compute_basis_truncated(gens: Vec<Vector>, ord: &ModuleOrder, limits: &Limits, n: u64) -> Result<Vec<Vector>, ComputeError> {
    Engine::new(ord, limits, true).truncated(n).run(gens)
}

pub(crate) fn compute_basis(gens: Vec<Vector>, ord: &ModuleOrder, limits: &Limits, rank_one: bool) -> Result<Vec<Vector>, ComputeError> {
    Engine::new(ord, limits, rank_one).run(gens)
}
