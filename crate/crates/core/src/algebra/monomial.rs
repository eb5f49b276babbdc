use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of ring variables a monomial can carry.
pub const MAX_VARS: usize = 16;

/// A power product with its weighted total degree cached.
///
/// Exponents are stored as `u8`; callers that multiply go through
/// [`Monomial::checked_mul`] or guarantee the degree cap (at most 255) first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    degree: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], degree: 0 };

    pub fn from_exponents(exps: &[u32], weights: &[u32]) -> Result<Self> {
        if exps.len() != weights.len() {
            return Err(Error::DimensionMismatch { expected: weights.len(), found: exps.len() });
        }
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables { max: MAX_VARS, got: exps.len() });
        }
        let mut out = [0u8; MAX_VARS];
        let mut degree = 0u32;
        for (i, (&e, &w)) in exps.iter().zip(weights).enumerate() {
            out[i] = u8::try_from(e).map_err(|_| Error::ExponentOverflow)?;
            degree = degree.checked_add(e * w).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial { exps: out, degree })
    }

    /// The monomial `x_var` of weight `weight`.
    pub fn variable(var: usize, weight: u32) -> Self {
        let mut exps = [0u8; MAX_VARS];
        exps[var] = 1;
        Monomial { exps, degree: weight }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.exps.iter().all(|&e| e == 0)
    }

    /// Product, or `None` when an exponent would leave the `u8` range.
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].checked_add(other.exps[i])?;
        }
        Some(Monomial { exps, degree: self.degree + other.degree })
    }

    /// Product without the overflow check; the caller has bounded degrees.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].wrapping_add(other.exps[i]);
        }
        Monomial { exps, degree: self.degree + other.degree }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; requires `self.divides(other)`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = other.exps[i] - self.exps[i];
        }
        Monomial { exps, degree: other.degree - self.degree }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        let mut degree = 0;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].max(other.exps[i]);
            if i < weights.len() {
                degree += exps[i] as u32 * weights[i];
            }
        }
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        let mut degree = 0;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].min(other.exps[i]);
            if i < weights.len() {
                degree += exps[i] as u32 * weights[i];
            }
        }
        Monomial { exps, degree }
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Copy with the exponents moved to new variable slots (`map[i]` is the
    /// destination of variable `i`).
    pub fn relabel(&self, map: &[usize]) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        for (i, &dst) in map.iter().enumerate() {
            exps[dst] = self.exps[i];
        }
        Monomial { exps, degree: self.degree }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Monomial order used for polynomials; module orders extend it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        match self {
            MonomialOrder::Grevlex => match a.degree.cmp(&b.degree) {
                Ordering::Equal => {
                    for i in (0..nvars).rev() {
                        if a.exps[i] != b.exps[i] {
                            // smaller exponent in the last differing variable wins
                            return b.exps[i].cmp(&a.exps[i]);
                        }
                    }
                    Ordering::Equal
                }
                other => other,
            },
            MonomialOrder::Lex => {
                for i in 0..nvars {
                    if a.exps[i] != b.exps[i] {
                        return a.exps[i].cmp(&b.exps[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }
}
