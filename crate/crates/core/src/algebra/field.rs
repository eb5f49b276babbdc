use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients are stored as canonical residues in `[0, p)`.
pub type Coeff = u32;

/// A prime field `F_p` with `2 <= p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
}

impl FieldSpec {
    pub const DEFAULT_PRIME: u32 = 101;

    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= (1 << 31) {
            return Err(Error::InvalidField(format!("modulus {p} outside [2, 2^31)")));
        }
        if !is_prime(p as u32) {
            return Err(Error::InvalidField(format!("modulus {p} is not prime")));
        }
        Ok(FieldSpec { p: p as u32 })
    }

    pub fn default_field() -> Self {
        FieldSpec { p: Self::DEFAULT_PRIME }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into the field.
    pub fn from_i64(&self, v: i64) -> Coeff {
        v.rem_euclid(self.p as i64) as Coeff
    }

    #[inline]
    pub fn add(&self, a: Coeff, b: Coeff) -> Coeff {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as Coeff
    }

    #[inline]
    pub fn sub(&self, a: Coeff, b: Coeff) -> Coeff {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Coeff) -> Coeff {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Coeff, b: Coeff) -> Coeff {
        ((a as u64 * b as u64) % self.p as u64) as Coeff
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Coeff) -> Coeff {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        self.from_i64(t0)
    }

    /// Signed representative in `(-p/2, p/2]`, used for printing.
    pub fn to_signed(&self, a: Coeff) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// Deterministic Miller–Rabin; the bases 2, 7, 61 are exact below 2^32.
fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let n64 = n as u64;
    let mut d = n64 - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % n64;
            }
            b = b * b % n64;
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 7, 61] {
        if a % n64 == 0 {
            continue;
        }
        let mut x = pow(a, d);
        if x == 1 || x == n64 - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n64;
            if x == n64 - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
