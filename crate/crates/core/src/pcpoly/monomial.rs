use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Mul;

/// A maximal factor of an alternating monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Segment {
    /// A nonempty word in the free variables (0-based indices).
    Word(Vec<usize>),
    /// `U^u V^v` with `u + v > 0`.
    Block { u: u32, v: u32 },
}

impl Segment {
    fn is_trivial(&self) -> bool {
        match self {
            Segment::Word(w) => w.is_empty(),
            Segment::Block { u, v } => *u == 0 && *v == 0,
        }
    }

    fn degree(&self) -> usize {
        match self {
            Segment::Word(w) => w.len(),
            Segment::Block { u, v } => (*u + *v) as usize,
        }
    }
}

/// Alternating product of words and blocks; the empty product is `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AltMonomial(Vec<Segment>);

impl AltMonomial {
    pub fn one() -> Self {
        AltMonomial(Vec::new())
    }

    pub fn word(w: Vec<usize>) -> Self {
        Self::from_segments(vec![Segment::Word(w)])
    }

    pub fn block(u: u32, v: u32) -> Self {
        Self::from_segments(vec![Segment::Block { u, v }])
    }

    /// Builds the normal form of a product of segments: empty segments are
    /// dropped, adjacent words concatenate and adjacent blocks multiply.
    pub fn from_segments<I: IntoIterator<Item = Segment>>(segments: I) -> Self {
        let mut out = AltMonomial::one();
        for s in segments {
            out.push(s);
        }
        out
    }

    fn push(&mut self, s: Segment) {
        if s.is_trivial() {
            return;
        }
        match (self.0.last_mut(), s) {
            (Some(Segment::Word(w)), Segment::Word(w2)) => w.extend(w2),
            (Some(Segment::Block { u, v }), Segment::Block { u: u2, v: v2 }) => {
                *u += u2;
                *v += v2;
            }
            (_, s) => self.0.push(s),
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(Segment::degree).sum()
    }

    pub fn u_degree(&self) -> u32 {
        self.0
            .iter()
            .map(|s| match s {
                Segment::Block { u, .. } => *u,
                Segment::Word(_) => 0,
            })
            .sum()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0
            .iter()
            .filter_map(|s| match s {
                Segment::Word(w) => w.iter().copied().max(),
                Segment::Block { .. } => None,
            })
            .max()
    }

    /// Image under `U -> V^k`.
    pub fn substitute_u(&self, k: u32) -> Self {
        Self::from_segments(self.0.iter().map(|s| match s {
            Segment::Block { u, v } => Segment::Block { u: 0, v: u * k + v },
            w => w.clone(),
        }))
    }
}

impl Mul for &AltMonomial {
    type Output = AltMonomial;
    fn mul(self, rhs: &AltMonomial) -> AltMonomial {
        let mut out = self.clone();
        for s in &rhs.0 {
            out.push(s.clone());
        }
        out
    }
}

impl Ord for AltMonomial {
    /// Graded: total degree first, then segment sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for AltMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, base: &str, index: Option<usize>, e: u32) -> fmt::Result {
    match index {
        Some(j) => write!(f, "{base}{}", j + 1)?,
        None => f.write_str(base)?,
    }
    if e > 1 {
        write!(f, "^{e}")?;
    }
    Ok(())
}

impl fmt::Display for AltMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            Ok(())
        };
        for s in &self.0 {
            match s {
                Segment::Word(w) => {
                    let mut k = 0;
                    while k < w.len() {
                        let mut run = 1;
                        while k + run < w.len() && w[k + run] == w[k] {
                            run += 1;
                        }
                        sep(f)?;
                        write_power(f, "X", Some(w[k]), run as u32)?;
                        k += run;
                    }
                }
                Segment::Block { u, v } => {
                    if *u > 0 {
                        sep(f)?;
                        write_power(f, "U", None, *u)?;
                    }
                    if *v > 0 {
                        sep(f)?;
                        write_power(f, "V", None, *v)?;
                    }
                }
            }
        }
        Ok(())
    }
}
