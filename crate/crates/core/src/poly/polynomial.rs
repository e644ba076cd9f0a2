use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, OrderingSpec, Rational, VariableContext};
use crate::error::AlgebraError;

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are stored in a map keyed by exponent vector, so equality does not
/// depend on any monomial ordering. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ctx: Arc<VariableContext>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ctx: &Arc<VariableContext>) -> Self {
        Polynomial { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<VariableContext>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Arc<VariableContext>, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), c);
        }
        p
    }

    pub fn from_int(ctx: &Arc<VariableContext>, c: i64) -> Self {
        Self::constant(ctx, Rational::from_integer(c.into()))
    }

    pub fn var(ctx: &Arc<VariableContext>, name: &str) -> Result<Self, AlgebraError> {
        Ok(Self::var_index(ctx, ctx.require(name)?))
    }

    pub fn var_index(ctx: &Arc<VariableContext>, i: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.len(), i, 1), Rational::one())
    }

    pub fn monomial(ctx: &Arc<VariableContext>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), ctx.len(), "monomial length does not match context");
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms, merging duplicates and dropping zeros.
    pub fn from_terms(ctx: &Arc<VariableContext>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.len(), ctx.len(), "monomial length does not match context");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (exponent-lexicographic) storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ctx.len()))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term; `None` for the zero polynomial.
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// Weighted degree if every term has the same weighted degree.
    pub fn weighted_homogeneous_degree(&self, weights: &[u32]) -> Option<u64> {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(weights));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Terms sorted descending by `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0.exponents(), a.0.exponents()));
        v
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0.exponents(), b.0.exponents()))
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ctx(other)?;
        // integer products over a common denominator: one normalisation per
        // output term instead of one per product
        let (na, da) = self.integer_form();
        let (nb, db) = other.integer_form();
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(na.len() * nb.len() / 2 + 1);
        for (ma, ca) in &na {
            for (mb, cb) in &nb {
                *acc.entry(ma.checked_mul(mb)?).or_default() += ca * cb;
            }
        }
        let den = da * db;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, Rational::new(c, den.clone())))
            .collect();
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    /// Integer coefficients and the common denominator `d` with
    /// `self = (Σ c_m m) / d`.
    fn integer_form(&self) -> (Vec<(&Monomial, BigInt)>, BigInt) {
        let d = self.terms.values().fold(BigInt::one(), |acc, c| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) });
        let ints = self
            .terms
            .iter()
            .map(|(m, c)| (m, if d.is_one() { c.numer().clone() } else { c.numer() * (&d / c.denom()) }))
            .collect();
        (ints, d)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to the variable at `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.set_exponent(var, e - 1);
            out.add_term(dm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn derivative_by_name(&self, name: &str) -> Result<Polynomial, AlgebraError> {
        Ok(self.derivative(self.ctx.require(name)?))
    }

    /// Composition: each variable of `self` is replaced by its binding, or by
    /// the same-named variable of `target` when unbound. All bindings must live
    /// over `target`.
    pub fn substitute(
        &self,
        bindings: &HashMap<String, Polynomial>,
        target: &Arc<VariableContext>,
    ) -> Result<Polynomial, AlgebraError> {
        for (name, b) in bindings {
            self.ctx.require(name)?;
            if b.ctx != *target {
                return Err(AlgebraError::ContextMismatch);
            }
        }
        let images: Vec<Option<Polynomial>> = (0..self.ctx.len())
            .map(|i| {
                let name = self.ctx.name(i);
                if let Some(b) = bindings.get(name) {
                    return Ok(Some(b.clone()));
                }
                if !self.involves(i) {
                    return Ok(None);
                }
                Ok(Some(Polynomial::var(target, name)?))
            })
            .collect::<Result<_, AlgebraError>>()?;

        let mut power_cache: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[i].as_ref().expect("involved variable has an image");
                let pw = power_cache.entry((i, e)).or_insert_with(|| img.pow(e));
                term = &term * pw;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Substitutes rational values for some variables, keeping the context.
    pub fn specialize(&self, values: &[(usize, Rational)]) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut m = m.clone();
            let mut c = c.clone();
            for (i, v) in values {
                let e = m.exponent(*i);
                if e > 0 {
                    c *= num_traits::pow(v.clone(), e as usize);
                    m.set_exponent(*i, 0);
                }
            }
            out.add_term(m, c);
        }
        out
    }

    /// Evaluates at a rational point (one value per context variable).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ctx.len());
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exponents()
                    .iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, v)| acc * num_traits::pow(v.clone(), e as usize))
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Moves the polynomial into another context, matching variables by name.
    pub fn in_context(&self, target: &Arc<VariableContext>) -> Result<Polynomial, AlgebraError> {
        let mut map = Vec::with_capacity(self.ctx.len());
        for i in 0..self.ctx.len() {
            match target.index_of(self.ctx.name(i)) {
                Some(j) => map.push(Some(j)),
                None if !self.involves(i) => map.push(None),
                None => return Err(AlgebraError::UnknownVariable(self.ctx.name(i).to_string())),
            }
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(target.len());
            for (i, &e) in m.exponents().iter().enumerate() {
                if let Some(j) = map[i] {
                    nm.set_exponent(j, e);
                }
            }
            out.add_term(nm, c.clone());
        }
        Ok(out)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() || self.check_ctx(d).is_err() {
            return None;
        }
        let ord = self.default_order();
        let (dl, dc) = d.leading_term(&ord).map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quo = Polynomial::zero(&self.ctx);
        while let Some((rl, rc)) = rem.leading_term(&ord).map(|(m, c)| (m.clone(), c.clone())) {
            if !dl.divides(&rl) {
                return None;
            }
            let m = dl.quotient_of(&rl);
            let c = rc / &dc;
            rem = &rem - &d.mul_monomial(&m).scale(&c);
            quo.add_term(m, c);
        }
        Some(quo)
    }

    /// Scales so that the leading coefficient under `ord` is one.
    pub fn monic(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Integer multiple with coprime integer coefficients and positive leading
    /// coefficient under `ord`.
    pub fn primitive(&self, ord: &MonomialOrder) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let denom_lcm = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numer_gcd = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&denom_lcm / c.denom()))));
        let mut factor = Rational::new(denom_lcm, numer_gcd);
        if self.leading_term(ord).unwrap().1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Display with terms sorted by `ord` (descending).
    pub fn display_with<'a>(&'a self, ord: &'a MonomialOrder) -> impl fmt::Display + 'a {
        DisplayWith { poly: self, ord }
    }

    /// Default display order: degree reverse lexicographic.
    pub fn default_order(&self) -> MonomialOrder {
        OrderingSpec::DegRevLex.compile(self.ctx.len()).expect("degrevlex always compiles")
    }
}

struct DisplayWith<'a> {
    poly: &'a Polynomial,
    ord: &'a MonomialOrder,
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms(self.ord);
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.poly.ctx.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.poly.ctx.name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ord = self.default_order();
        let shown = DisplayWith { poly: self, ord: &ord };
        write!(f, "{shown}")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

// Operator forms panic on context mismatch; use the `checked_*` methods when
// the contexts are not known to agree.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial context mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial context mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial context mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
