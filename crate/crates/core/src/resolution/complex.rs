use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::vector::{FreeModuleSpec, FreeVector, VTerm};
use crate::error::{Error, Result};
use crate::groebner::Ctx;
use crate::module::PresentedModule;

/// A bounded complex of graded free modules `C_lo ← … ← C_hi` with
/// homogeneous differentials `d_i : C_i → C_{i-1}`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ctx: Ctx,
    lo: i64,
    twists: Vec<Vec<i32>>,
    /// `maps[k]` is `d_{lo+k+1}`, as columns in `C_{lo+k}`.
    maps: Vec<Vec<FreeVector>>,
}

impl FreeComplex {
    /// The single module `C_lo`.
    pub fn new(ctx: &Ctx, lo: i64, twists: Vec<i32>) -> Self {
        FreeComplex { ctx: ctx.clone(), lo, twists: vec![twists], maps: Vec::new() }
    }

    /// Appends `C_{hi+1}` with differential `d_{hi+1}`.
    pub fn push(&mut self, twists: Vec<i32>, columns: Vec<FreeVector>) -> Result<()> {
        if twists.len() != columns.len() {
            return Err(Error::Incompatible(format!("{} twists for {} columns", twists.len(), columns.len())));
        }
        let tspace = FreeModuleSpec::new(self.twists.last().unwrap().clone());
        for (c, &t) in columns.iter().zip(&twists) {
            if c.max_component().is_some_and(|m| m as usize >= tspace.rank()) {
                return Err(Error::Incompatible("column outside the target module".into()));
            }
            if !c.is_homogeneous(&tspace) || c.degree(&tspace).is_some_and(|d| d != t as i64) {
                return Err(Error::Inhomogeneous(format!("differential column of twist {t}")));
            }
        }
        self.twists.push(twists);
        self.maps.push(columns);
        Ok(())
    }

    /// Prepends `C_{lo-1}` with differential `d_lo`, given as columns in `C_{lo-1}`.
    pub fn push_front(&mut self, twists: Vec<i32>, columns: Vec<FreeVector>) -> Result<()> {
        let mut c = FreeComplex::new(&self.ctx, self.lo - 1, twists);
        c.push(self.twists[0].clone(), columns)?;
        for k in 0..self.maps.len() {
            c.push(self.twists[k + 1].clone(), self.maps[k].clone())?;
        }
        *self = c;
        Ok(())
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.maps.len() as i64
    }

    fn slot(&self, i: i64) -> Option<usize> {
        (i >= self.lo && i <= self.hi()).then(|| (i - self.lo) as usize)
    }

    /// Twists of `C_i`; empty outside the range.
    pub fn twists(&self, i: i64) -> &[i32] {
        self.slot(i).map_or(&[], |k| &self.twists[k])
    }

    pub fn rank(&self, i: i64) -> usize {
        self.twists(i).len()
    }

    /// Columns of `d_i : C_i → C_{i-1}`; empty unless `lo < i ≤ hi`.
    pub fn differential(&self, i: i64) -> &[FreeVector] {
        match self.slot(i) {
            Some(k) if k > 0 => &self.maps[k - 1],
            _ => &[],
        }
    }

    /// Entry of `d_i` in row `p` (a basis element of `C_{i-1}`), column `q`.
    pub fn entry(&self, i: i64, p: usize, q: usize) -> crate::algebra::poly::Polynomial {
        self.differential(i)[q].entry(self.ctx.poly(), p)
    }

    /// Restriction to indices `[lo, hi]`.
    pub fn truncate(&self, lo: i64, hi: i64) -> FreeComplex {
        let lo = lo.max(self.lo);
        let hi = hi.min(self.hi());
        let mut c = FreeComplex::new(&self.ctx, lo, self.twists(lo).to_vec());
        for i in lo + 1..=hi {
            c.push(self.twists(i).to_vec(), self.differential(i).to_vec()).expect("sub-complex of a valid complex");
        }
        c
    }

    /// `d_{i-1} ∘ d_i = 0` for every consecutive pair.
    pub fn composition_is_zero(&self) -> bool {
        let ring = self.ctx.poly();
        for i in self.lo + 2..=self.hi() {
            let space = FreeModuleSpec::new(self.twists(i - 2).to_vec());
            let outer = self.differential(i - 1);
            for col in self.differential(i) {
                let mut acc = FreeVector::zero();
                for (q, c) in col.entries(ring) {
                    acc = acc.add_poly_mul(ring, &space, &outer[q], c.terms());
                }
                if !self.ctx.reduce_vector(&space, &acc).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// No differential has an entry with a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().flatten().all(|c| c.terms().iter().all(|t| !t.mon.is_one()))
    }

    /// `C*` with `(C*)_j = (C_{-j-1})*`, so that the dual of a complete
    /// resolution of `M` is a complete resolution of `M*`.
    pub fn dual(&self) -> FreeComplex {
        let ring = self.ctx.poly();
        let neg = |t: &[i32]| t.iter().map(|a| -a).collect::<Vec<i32>>();
        let (lo, hi) = (-self.hi() - 1, -self.lo - 1);
        let mut c = FreeComplex::new(&self.ctx, lo, neg(self.twists(-lo - 1)));
        for j in lo + 1..=hi {
            // (C*)_j → (C*)_{j-1} is the transpose of d_{-j}
            let src = -j - 1;
            let cols = transpose(ring, self.differential(-j), self.rank(src), &neg(self.twists(-j)));
            c.push(neg(self.twists(src)), cols).expect("transpose of a valid complex");
        }
        c
    }

    /// `coker(d_{i+1})`, the module presented at index `i`.
    pub fn cokernel_at(&self, i: i64) -> Result<PresentedModule> {
        let cols = self.differential(i + 1);
        let rel_twists = self.twists(i + 1).to_vec();
        PresentedModule::new(&self.ctx, self.twists(i).to_vec(), rel_twists, cols.to_vec())
    }

    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::default();
        for i in self.lo..=self.hi() {
            for &a in self.twists(i) {
                *t.entries.entry(i).or_default().entry(a as i64).or_default() += 1;
            }
            t.entries.entry(i).or_default();
        }
        t
    }
}

/// Columns of the transpose of the matrix with columns `cols` (each a vector
/// in a free module of rank `rows`), as vectors in the space with `twists`.
pub(crate) fn transpose(
    ring: &crate::algebra::poly::PolyRing,
    cols: &[FreeVector],
    rows: usize,
    twists: &[i32],
) -> Vec<FreeVector> {
    let space = FreeModuleSpec::new(twists.to_vec());
    let mut out: Vec<Vec<VTerm>> = vec![Vec::new(); rows];
    for (q, c) in cols.iter().enumerate() {
        for t in c.terms() {
            out[t.comp as usize].push(VTerm { mon: t.mon, comp: q as u32, coeff: t.coeff });
        }
    }
    out.into_iter().map(|terms| FreeVector::from_terms(ring, &space, terms)).collect()
}

/// Graded Betti numbers `b_{i,j}`: homological index `i`, internal degree `j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub entries: BTreeMap<i64, BTreeMap<i64, u64>>,
}

impl BettiTable {
    pub fn get(&self, i: i64, j: i64) -> u64 {
        self.entries.get(&i).and_then(|r| r.get(&j)).copied().unwrap_or(0)
    }

    /// Total rank `b_i`.
    pub fn total(&self, i: i64) -> u64 {
        self.entries.get(&i).map_or(0, |r| r.values().sum())
    }

    pub fn totals(&self) -> Vec<u64> {
        self.entries.keys().map(|&i| self.total(i)).collect()
    }

    pub fn indices(&self) -> Vec<i64> {
        self.entries.keys().copied().collect()
    }

    /// Same table with every internal degree negated and indices relabelled.
    pub fn map_indices(&self, f: impl Fn(i64) -> i64, negate_degrees: bool) -> BettiTable {
        let mut t = BettiTable::default();
        for (&i, row) in &self.entries {
            let r = t.entries.entry(f(i)).or_default();
            for (&j, &b) in row {
                r.insert(if negate_degrees { -j } else { j }, b);
            }
        }
        t
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(i, row)| {
                let degrees: BTreeMap<String, u64> = row.iter().map(|(j, b)| (j.to_string(), *b)).collect();
                serde_json::json!({ "index": i, "total": self.total(*i), "degrees": degrees })
            })
            .collect();
        serde_json::json!({ "rows": rows })
    }
}

/// Triangular layout: column `i`, row `j - i`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.indices();
        if cols.is_empty() {
            return writeln!(f, "(empty)");
        }
        let mut shifts: Vec<i64> = self.entries.iter().flat_map(|(i, r)| r.keys().map(move |j| j - i)).collect();
        shifts.sort_unstable();
        shifts.dedup();
        let cells = |v: &dyn Fn(i64) -> String| cols.iter().map(|&i| v(i)).collect::<Vec<String>>();
        let mut lines: Vec<(String, Vec<String>)> = vec![
            (String::new(), cells(&|i| i.to_string())),
            ("total:".into(), cells(&|i| self.total(i).to_string())),
        ];
        for &s in &shifts {
            let row = cells(&|i| match self.get(i, i + s) {
                0 => ".".into(),
                b => b.to_string(),
            });
            lines.push((format!("{s}:"), row));
        }
        let lw = lines.iter().map(|l| l.0.len()).max().unwrap_or(0);
        let cw = lines.iter().flat_map(|l| l.1.iter().map(|c| c.len())).max().unwrap_or(1);
        for (label, row) in lines {
            let body: Vec<String> = row.iter().map(|c| format!("{c:>cw$}")).collect();
            writeln!(f, "{label:>lw$} {}", body.join(" "))?;
        }
        Ok(())
    }
}
