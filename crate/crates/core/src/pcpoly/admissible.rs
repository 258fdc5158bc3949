use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{word_power, word_power_marked, AltMonomial, PcPoly};
use crate::combinatorics::{c_set, compositions, multinomial_mu, MultiIndex, Perm};
use crate::linalg;
use crate::rational::{q_int, Q};
use crate::{Error, Result};

/// Type one: sums of `(X_sigma)^b`. Type two: sums of `(X_sigma)^{b, sigma(i)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    One,
    Two,
}

/// Index of one spanning polynomial: `(X_{sigma(0)} ... X_{sigma(n-1)})^b`,
/// with the factor at word position `marked` wrapped in `[U, .]` for type two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenIndex {
    pub sigma: Perm,
    pub b: MultiIndex,
    pub marked: Option<usize>,
}

impl GenIndex {
    pub fn one(sigma: Perm, b: MultiIndex) -> Self {
        GenIndex { sigma, b, marked: None }
    }

    pub fn two(sigma: Perm, b: MultiIndex, position: usize) -> Self {
        GenIndex { sigma, b, marked: Some(position) }
    }

    pub fn kind(&self) -> Kind {
        if self.marked.is_some() {
            Kind::Two
        } else {
            Kind::One
        }
    }

    /// Expansion in the alternating-monomial basis.
    pub fn expand(&self) -> PcPoly {
        let n = self.sigma.len();
        match self.marked {
            None => word_power(n, self.sigma.images(), &self.b),
            Some(i) => word_power_marked(n, self.sigma.images(), &self.b, self.sigma.apply(i))
                .expect("marked variable always occurs in a permutation word"),
        }
    }
}

/// Sparse coefficient map over the spanning family of a given kind and order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissiblePoly {
    n: usize,
    r: usize,
    kind: Kind,
    coeffs: BTreeMap<GenIndex, Q>,
}

impl AdmissiblePoly {
    pub fn new(n: usize, r: usize, kind: Kind) -> Self {
        assert!(n >= 1, "admissible polynomials need at least one variable");
        AdmissiblePoly { n, r, kind, coeffs: BTreeMap::new() }
    }

    /// Order-0 type-one polynomial `sum lambda_sigma X_sigma(1) ... X_sigma(n)`.
    pub fn multilinear<I: IntoIterator<Item = (Perm, Q)>>(n: usize, terms: I) -> Result<Self> {
        let mut f = Self::new(n, 0, Kind::One);
        for (sigma, c) in terms {
            f.add(GenIndex::one(sigma, MultiIndex::zero(n)), c)?;
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.r
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&GenIndex, &Q)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, key: &GenIndex) -> Q {
        self.coeffs.get(key).cloned().unwrap_or_else(Q::zero)
    }

    fn validate(&self, key: &GenIndex) -> Result<()> {
        if key.sigma.len() != self.n {
            return Err(Error::ArityMismatch { left: self.n, right: key.sigma.len() });
        }
        if key.b.len() != self.n || !key.b.is_composition_of(self.r) {
            return Err(Error::NotInCompositionSet(key.b.to_string()));
        }
        if key.kind() != self.kind {
            return Err(Error::KindMismatch);
        }
        if let Some(i) = key.marked {
            if i >= self.n {
                return Err(Error::IndexOutOfRange { index: i + 1, n: self.n });
            }
        }
        Ok(())
    }

    pub fn set(&mut self, key: GenIndex, c: Q) -> Result<()> {
        self.validate(&key)?;
        if c.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, c);
        }
        Ok(())
    }

    pub fn add(&mut self, key: GenIndex, c: Q) -> Result<()> {
        self.validate(&key)?;
        let sum = self.coeff(&key) + c;
        self.set(key, sum)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::new(self.n, self.r, self.kind);
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(k, x)| (k.clone(), x * c)).collect();
        }
        out
    }

    /// Every spanning index of the given kind and order, in a fixed order.
    pub fn generators(n: usize, r: usize, kind: Kind) -> Vec<GenIndex> {
        let mut out = Vec::new();
        for sigma in Perm::all(n) {
            for b in compositions(n, r) {
                match kind {
                    Kind::One => out.push(GenIndex::one(sigma.clone(), b)),
                    Kind::Two => {
                        for i in 0..n {
                            out.push(GenIndex::two(sigma.clone(), b.clone(), i));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn expand(&self) -> PcPoly {
        let mut out = PcPoly::zero(self.n);
        for (key, c) in &self.coeffs {
            let g = key.expand().scale(c);
            out = &out + &g;
        }
        out
    }
}

/// `P^sigma_{b,i,t} = sum over c in C^sigma_{t,i} of mu^sigma_{c,i} (X_sigma)^{b+c}`,
/// a type-one polynomial of order `|b| + t`.
pub fn p_poly(sigma: &Perm, b: &MultiIndex, i: usize, t: usize) -> Result<AdmissiblePoly> {
    let n = sigma.len();
    if b.len() != n || !b.is_nonnegative() {
        return Err(Error::NotInCompositionSet(b.to_string()));
    }
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i + 1, n });
    }
    if t == 0 {
        return Err(Error::Precondition("P polynomials need t >= 1".into()));
    }
    let r = b.total() as usize + t;
    let mut out = AdmissiblePoly::new(n, r, Kind::One);
    for c in c_set(sigma, t, i) {
        let mu = multinomial_mu(sigma, &c, i)?;
        out.add(GenIndex::one(sigma.clone(), b + &c), q_int(&mu))?;
    }
    Ok(out)
}

fn column_map<'a, I: IntoIterator<Item = &'a PcPoly>>(polys: I) -> BTreeMap<AltMonomial, usize> {
    let mut cols = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = cols.len();
            cols.entry(m.clone()).or_insert(next);
        }
    }
    cols
}

/// Rank over `Q` of the coefficient matrix of the given polynomials in the
/// alternating-monomial basis.
pub fn independence_rank(polys: &[PcPoly]) -> usize {
    let cols = column_map(polys);
    linalg::rank(polys.iter().map(|p| {
        let row: BTreeMap<usize, Q> = p.terms().map(|(m, c)| (cols[m], c.clone())).collect();
        linalg::integer_row(&row)
    }))
}

/// Recovers the coefficient map of `f` over the order-`r` spanning family of
/// the given kind, or `None` when `f` is not in that span.
pub fn as_admissible(f: &PcPoly, n: usize, r: usize, kind: Kind) -> Result<Option<AdmissiblePoly>> {
    if f.n() != n {
        return Err(Error::ArityMismatch { left: n, right: f.n() });
    }
    let gens = AdmissiblePoly::generators(n, r, kind);
    let expansions: Vec<PcPoly> = gens.iter().map(GenIndex::expand).collect();
    let cols = column_map(expansions.iter().chain(core::iter::once(f)));
    // one equation per monomial: sum_g coeff_g(m) x_g = f(m)
    let mut equations: Vec<(BTreeMap<usize, Q>, Q)> = (0..cols.len())
        .map(|_| (BTreeMap::new(), Q::zero()))
        .collect();
    for (g, p) in expansions.iter().enumerate() {
        for (m, c) in p.terms() {
            equations[cols[m]].0.insert(g, c.clone());
        }
    }
    for (m, c) in f.terms() {
        equations[cols[m]].1 = c.clone();
    }
    let solution = match linalg::solve(&equations, gens.len()) {
        Some(x) => x,
        None => return Ok(None),
    };
    let mut out = AdmissiblePoly::new(n, r, kind);
    for (key, c) in gens.into_iter().zip(solution) {
        out.set(key, c)?;
    }
    Ok(Some(out))
}
