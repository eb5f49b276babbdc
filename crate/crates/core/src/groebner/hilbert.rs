//! Hilbert series of graded modules, from monomial leading-term data.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::monomial::Monomial;

/// `t^shift * numer(t) / Π (1 - t^{w_i})`, with integer numerator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    shift: i64,
    numer: Vec<i64>,
    weights: Vec<u32>,
}

impl HilbertSeries {
    pub fn zero(weights: &[u32]) -> Self {
        HilbertSeries { shift: 0, numer: Vec::new(), weights: weights.to_vec() }
    }

    /// Series of `⊕_j S(-a_j) / J_j` for monomial submodules given by their
    /// generators per component.
    pub fn of_monomial_module(weights: &[u32], twists: &[i32], gens: &[Vec<Monomial>]) -> Self {
        let mut acc = HilbertSeries::zero(weights);
        for (j, g) in gens.iter().enumerate() {
            let n = monomial_numerator(weights, g.clone());
            acc = acc.add(&HilbertSeries::from_raw(twists[j] as i64, n, weights));
        }
        acc
    }

    /// Series of a finite-length module from `(degree, dim)` data.
    pub fn from_dims(weights: &[u32], dims: &[(i64, u64)]) -> Self {
        let Some(lo) = dims.iter().filter(|d| d.1 > 0).map(|d| d.0).min() else {
            return HilbertSeries::zero(weights);
        };
        let hi = dims.iter().map(|d| d.0).max().unwrap();
        let mut poly = vec![0i64; (hi - lo + 1) as usize];
        for &(d, v) in dims {
            if d >= lo {
                poly[(d - lo) as usize] += v as i64;
            }
        }
        for &w in weights {
            poly = mul_one_minus(&poly, w);
        }
        HilbertSeries::from_raw(lo, poly, weights)
    }

    fn from_raw(shift: i64, numer: Vec<i64>, weights: &[u32]) -> Self {
        let mut h = HilbertSeries { shift, numer, weights: weights.to_vec() };
        h.normalize();
        h
    }

    fn normalize(&mut self) {
        while self.numer.last() == Some(&0) {
            self.numer.pop();
        }
        let lead = self.numer.iter().take_while(|&&c| c == 0).count();
        if lead == self.numer.len() {
            self.numer.clear();
            self.shift = 0;
            return;
        }
        self.numer.drain(..lead);
        self.shift += lead as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_empty()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numer
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        self.combine(other, -1)
    }

    fn combine(&self, other: &HilbertSeries, sign: i64) -> HilbertSeries {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            let numer = other.numer.iter().map(|c| sign * c).collect();
            return HilbertSeries::from_raw(other.shift, numer, &other.weights);
        }
        let lo = self.shift.min(other.shift);
        let hi = (self.shift + self.numer.len() as i64).max(other.shift + other.numer.len() as i64);
        let mut out = vec![0i64; (hi - lo) as usize];
        for (k, c) in self.numer.iter().enumerate() {
            out[(self.shift - lo) as usize + k] += c;
        }
        for (k, c) in other.numer.iter().enumerate() {
            out[(other.shift - lo) as usize + k] += sign * c;
        }
        HilbertSeries::from_raw(lo, out, &self.weights)
    }

    /// Multiplies by `t^s` (a twist by `-s`).
    pub fn shifted(&self, s: i64) -> HilbertSeries {
        let mut h = self.clone();
        if !h.is_zero() {
            h.shift += s;
        }
        h
    }

    /// Krull dimension: the pole order at `t = 1`; `-1` for the zero module.
    pub fn dimension(&self) -> i64 {
        if self.is_zero() {
            return -1;
        }
        let mut p = self.numer.clone();
        let mut mult = 0i64;
        while p.iter().sum::<i64>() == 0 {
            p = div_one_minus_t(&p);
            mult += 1;
        }
        self.weights.len() as i64 - mult
    }

    /// Coefficients of the series in degrees `lo..=hi`.
    pub fn values(&self, lo: i64, hi: i64) -> Vec<i64> {
        if hi < lo {
            return Vec::new();
        }
        let top = hi - self.shift;
        if top < 0 {
            return vec![0; (hi - lo + 1) as usize];
        }
        let mut s: Vec<i64> = vec![0; top as usize + 1];
        for (k, c) in self.numer.iter().enumerate().take(s.len()) {
            s[k] = *c;
        }
        for &w in &self.weights {
            let w = w as usize;
            for k in w..s.len() {
                s[k] += s[k - w];
            }
        }
        (lo..=hi).map(|d| if d < self.shift { 0 } else { s[(d - self.shift) as usize] }).collect()
    }

    /// Graded dimensions `(degree, dim)` of a finite-length module.
    pub fn finite_dims(&self) -> Option<Vec<(i64, u64)>> {
        if self.dimension() > 0 {
            return None;
        }
        let mut p = self.numer.clone();
        for &w in &self.weights {
            p = div_one_minus(&p, w)?;
        }
        Some(
            p.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (self.shift + k as i64, c as u64))
                .collect(),
        )
    }

    /// Total dimension over the field, when finite.
    pub fn length(&self) -> Option<u64> {
        self.finite_dims().map(|d| d.iter().map(|x| x.1).sum())
    }
}

/// A polynomial in `t` such as `1 + 3t + t^2` or `1 - t^2`.
fn format_poly(terms: &[(i64, i64)]) -> String {
    let mut out = String::new();
    for (k, &(deg, c)) in terms.iter().enumerate() {
        let mag = c.unsigned_abs();
        if k == 0 {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        let power = match deg {
            0 => String::new(),
            1 => "t".into(),
            d => format!("t^{d}"),
        };
        if mag != 1 || power.is_empty() {
            out.push_str(&mag.to_string());
        }
        out.push_str(&power);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = self.finite_dims() {
            let terms: Vec<(i64, i64)> = d.iter().map(|&(deg, v)| (deg, v as i64)).collect();
            return f.write_str(&format_poly(&terms));
        }
        let terms: Vec<(i64, i64)> =
            self.numer.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (self.shift + k as i64, c)).collect();
        let denom: Vec<String> = {
            let mut w = self.weights.clone();
            w.sort_unstable();
            let mut parts = Vec::new();
            let mut i = 0;
            while i < w.len() {
                let j = w[i..].iter().take_while(|&&x| x == w[i]).count();
                let base = if w[i] == 1 { "(1-t)".to_string() } else { format!("(1-t^{})", w[i]) };
                parts.push(if j == 1 { base } else { format!("{base}^{j}") });
                i += j;
            }
            parts
        };
        let numer = format_poly(&terms);
        if terms.len() == 1 {
            write!(f, "{numer} / {}", denom.join(""))
        } else {
            write!(f, "({numer}) / {}", denom.join(""))
        }
    }
}

fn mul_one_minus(p: &[i64], w: u32) -> Vec<i64> {
    let w = w as usize;
    let mut out = vec![0i64; p.len() + w];
    for (k, &c) in p.iter().enumerate() {
        out[k] += c;
        out[k + w] -= c;
    }
    out
}

/// Exact division by `1 - t^w`, or `None` if it does not divide.
fn div_one_minus(p: &[i64], w: u32) -> Option<Vec<i64>> {
    let w = w as usize;
    if p.is_empty() {
        return Some(Vec::new());
    }
    if p.len() <= w {
        return p.iter().all(|&c| c == 0).then(Vec::new);
    }
    let n = p.len() - w;
    let mut q = vec![0i64; n];
    for k in 0..n {
        q[k] = p[k] + if k >= w { q[k - w] } else { 0 };
    }
    // remainder check: the top w coefficients must match -q shifted
    for k in n..p.len() {
        let expect = -q[k - w] + if k < n { q[k] } else { 0 };
        if p[k] != expect {
            return None;
        }
    }
    Some(q)
}

fn div_one_minus_t(p: &[i64]) -> Vec<i64> {
    div_one_minus(p, 1).expect("numerator vanishes at 1")
}

/// Numerator of the Hilbert series of `S/J` over `Π(1 - t^{w_i})`.
pub(crate) fn monomial_numerator(weights: &[u32], gens: Vec<Monomial>) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    let n = weights.len();
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut p = vec![1i64];
        for g in &gens {
            p = mul_one_minus(&p, g.degree());
        }
        return p;
    }
    // pivot on the variable shared by the most generators
    let var = (0..n)
        .max_by_key(|&v| (gens.iter().filter(|g| g.exponent(v) > 0).count(), std::cmp::Reverse(v)))
        .unwrap();
    let x = Monomial::variable(var, weights[var]);
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exponent(var) == 0).cloned().collect();
    plus.push(x);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| if g.exponent(var) > 0 { x.quotient_of(g) } else { *g })
        .collect();
    let a = monomial_numerator(weights, plus);
    let b = monomial_numerator(weights, colon);
    let w = weights[var] as usize;
    let mut out = vec![0i64; a.len().max(b.len() + w)];
    for (k, c) in a.iter().enumerate() {
        out[k] += c;
    }
    for (k, c) in b.iter().enumerate() {
        out[k + w] += c;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e, &vec![1; e.len()]).unwrap()
    }

    #[test]
    fn polynomial_ring() {
        let h = HilbertSeries::of_monomial_module(&[1, 1], &[0], &[vec![]]);
        assert_eq!(h.dimension(), 2);
        assert_eq!(h.values(0, 3), vec![1, 2, 3, 4]);
        assert_eq!(h.length(), None);
    }

    #[test]
    fn artinian_standard_monomials() {
        // (x^2, xy, y^2): standard monomials 1, x, y
        let h = HilbertSeries::of_monomial_module(
            &[1, 1],
            &[0],
            &[vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]],
        );
        assert_eq!(h.dimension(), 0);
        assert_eq!(h.finite_dims(), Some(vec![(0, 1), (1, 2)]));
        assert_eq!(h.length(), Some(3));
    }

    #[test]
    fn hypersurface_dimension() {
        let h = HilbertSeries::of_monomial_module(&[1; 4], &[0], &[vec![m(&[1, 1, 0, 0])]]);
        assert_eq!(h.dimension(), 3);
        assert_eq!(h.values(0, 2), vec![1, 4, 9]);
    }

    #[test]
    fn twists_and_arithmetic() {
        let k = HilbertSeries::from_dims(&[1, 1], &[(0, 1)]);
        let two = k.add(&k.shifted(3));
        assert_eq!(two.finite_dims(), Some(vec![(0, 1), (3, 1)]));
        assert!(two.sub(&k).sub(&k.shifted(3)).is_zero());
        assert_eq!(HilbertSeries::zero(&[1]).dimension(), -1);
    }

    #[test]
    fn brute_force_counts() {
        // compare with direct enumeration of standard monomials in 3 variables
        let gens = vec![m(&[2, 1, 0]), m(&[0, 2, 2]), m(&[1, 0, 3]), m(&[0, 0, 5])];
        let h = HilbertSeries::of_monomial_module(&[1, 1, 1], &[0], &[gens.clone()]);
        let got = h.values(0, 8);
        for (d, &v) in got.iter().enumerate() {
            let mut count = 0;
            for a in 0..=d as u32 {
                for b in 0..=(d as u32 - a) {
                    let mono = m(&[a, b, d as u32 - a - b]);
                    if !gens.iter().any(|g| g.divides(&mono)) {
                        count += 1;
                    }
                }
            }
            assert_eq!(v, count, "degree {d}");
        }
    }
}
