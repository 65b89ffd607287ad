//! The I-norm `max(‖f‖_{I,r}, ‖f‖_{I,s})` of an algebra element.
//!
//! With canonical (disjoint) keys, the range fiber over a unit `x` meets
//! exactly the keys whose `mu` is a prefix of `x`. Those keys form a chain,
//! so the supremum is a maximum over keys of prefix-chain sums.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use crate::algebra::AlgebraElement;
use crate::coeff::Gq;
use crate::graph::Path;

pub const DEFAULT_PRECISION: u32 = 40;

#[derive(Clone, PartialEq, Eq)]
pub enum INorm {
    Exact(BigRational),
    /// `lo ≤ ‖f‖_I ≤ hi`.
    Enclosure { lo: BigRational, hi: BigRational },
}

impl INorm {
    pub fn lower(&self) -> &BigRational {
        match self {
            INorm::Exact(v) => v,
            INorm::Enclosure { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> &BigRational {
        match self {
            INorm::Exact(v) => v,
            INorm::Enclosure { hi, .. } => hi,
        }
    }

    pub fn width(&self) -> BigRational {
        self.upper() - self.lower()
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        self.lower() <= v && v <= self.upper()
    }
}

impl fmt::Debug for INorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for INorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            INorm::Exact(v) => write!(f, "{v}"),
            INorm::Enclosure { lo, hi } => write!(f, "[{lo},{hi}]"),
        }
    }
}

/// `|c|` as an exact value or a bracket of width at most `2^-bits`.
fn modulus(c: &Gq, bits: u32) -> (BigRational, BigRational) {
    let sq = c.norm_sqr();
    let (n, d) = (sq.numer().clone(), sq.denom().clone());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &rn * &rn == n && &rd * &rd == d {
        let v = BigRational::new(rn, rd);
        return (v.clone(), v);
    }
    let scale = BigInt::one() << bits;
    let m = (&n * &d * &scale * &scale).sqrt();
    let den = &d * &scale;
    (BigRational::new(m.clone(), den.clone()), BigRational::new(m + 1, den))
}

fn side(f: &AlgebraElement<Gq>, pick: impl Fn(&crate::bisection::BasicBisection) -> &Path, bits: u32) -> (BigRational, BigRational) {
    let terms: Vec<(&Path, (BigRational, BigRational))> = f.terms().map(|(k, c)| (pick(k), modulus(c, bits))).collect();
    let mut best = (BigRational::zero(), BigRational::zero());
    for (p, _) in &terms {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (q, (l, h)) in &terms {
            if q.is_prefix_of(p) {
                lo += l;
                hi += h;
            }
        }
        if lo > best.0 {
            best.0 = lo;
        }
        if hi > best.1 {
            best.1 = hi;
        }
    }
    best
}

pub fn i_norm(f: &AlgebraElement<Gq>) -> INorm {
    i_norm_with_precision(f, DEFAULT_PRECISION)
}

/// Enclosure width is at most `2^-bits`.
pub fn i_norm_with_precision(f: &AlgebraElement<Gq>, bits: u32) -> INorm {
    let k = f.len().max(1) as u64;
    let guard = 64 - (k - 1).leading_zeros();
    let bits = bits + guard + 1;
    let r = side(f, |b| b.mu(), bits);
    let s = side(f, |b| b.nu(), bits);
    let lo = r.0.clone().max(s.0.clone());
    let hi = r.1.max(s.1);
    if lo == hi {
        INorm::Exact(lo)
    } else {
        INorm::Enclosure { lo, hi }
    }
}
