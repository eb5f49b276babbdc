use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module::PresentedModule;
use crate::resolution::{ext_dims, tor_dims, Dimension, Family};

/// Dimensions of `Ext^i` or `Tor_i` for `1 ≤ i ≤ H`, with the derived
/// finite-window reading of "vanishes for all large `i`".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingPattern {
    pub family: Family,
    pub source: String,
    pub target: String,
    /// `H`: the pattern covers indices `1..=H`.
    pub window: usize,
    /// Krull dimension `d` of the ring.
    pub ring_dim: usize,
    pub dims: Vec<Dimension>,
    /// Every index in `(d, H]` is zero (`None` when an unknown entry leaves
    /// the question open).
    pub tail_vanishing: Option<bool>,
    /// Largest index in the window with a known nonzero entry; `0` if none.
    pub last_nonzero: usize,
}

impl VanishingPattern {
    pub fn new(family: Family, source: &str, target: &str, ring_dim: usize, dims: Vec<Dimension>) -> Result<Self> {
        let window = dims.len();
        if window < ring_dim + 3 {
            return Err(Error::WindowTooSmall(format!("window {window} needs at least dim + 3 = {}", ring_dim + 3)));
        }
        let tail = &dims[ring_dim..];
        let tail_vanishing = if tail.iter().any(|d| d.is_zero() == Some(false)) {
            Some(false)
        } else if tail.iter().all(|d| d.is_known()) {
            Some(true)
        } else {
            None
        };
        let last_nonzero = dims.iter().rposition(|d| d.is_zero() == Some(false)).map_or(0, |p| p + 1);
        Ok(VanishingPattern {
            family,
            source: source.into(),
            target: target.into(),
            window,
            ring_dim,
            dims,
            tail_vanishing,
            last_nonzero,
        })
    }

    /// Entry at index `i` (`Unknown` outside the window).
    pub fn dim(&self, i: usize) -> Dimension {
        if i == 0 || i > self.window {
            Dimension::Unknown
        } else {
            self.dims[i - 1]
        }
    }

    /// The derived fields agree with `dims`.
    pub fn is_consistent(&self) -> bool {
        VanishingPattern::new(self.family, &self.source, &self.target, self.ring_dim, self.dims.clone())
            .is_ok_and(|p| p == *self)
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::Ext => format!("Ext({}, {})", self.source, self.target),
            Family::Tor => format!("Tor({}, {})", self.source, self.target),
        }
    }
}

impl fmt::Display for VanishingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "{} i=1..{}: [{}]", self.label(), self.window, dims.join(" "))?;
        match self.tail_vanishing {
            Some(true) => write!(f, " tail-vanishing, last nonzero {}", self.last_nonzero),
            Some(false) => write!(f, " not tail-vanishing"),
            None => write!(f, " tail unknown"),
        }
    }
}

fn check_window(m: &PresentedModule, h: usize) -> Result<usize> {
    let d = m.ctx().dim();
    if h < d + 3 {
        return Err(Error::WindowTooSmall(format!("window {h} needs at least dim + 3 = {}", d + 3)));
    }
    Ok(d)
}

/// `dim Ext^i(M, N)` for `1 ≤ i ≤ H`.
pub fn scan_ext(m: &PresentedModule, n: &PresentedModule, h: usize) -> Result<VanishingPattern> {
    scan_ext_labeled(m, n, h, "M", "N")
}

/// `dim Tor_i(M, N)` for `1 ≤ i ≤ H`.
pub fn scan_tor(m: &PresentedModule, n: &PresentedModule, h: usize) -> Result<VanishingPattern> {
    scan_tor_labeled(m, n, h, "M", "N")
}

pub fn scan_ext_labeled(m: &PresentedModule, n: &PresentedModule, h: usize, a: &str, b: &str) -> Result<VanishingPattern> {
    let d = check_window(m, h)?;
    VanishingPattern::new(Family::Ext, a, b, d, ext_dims(m, n, 1..=h)?.dims())
}

pub fn scan_tor_labeled(m: &PresentedModule, n: &PresentedModule, h: usize, a: &str, b: &str) -> Result<VanishingPattern> {
    let d = check_window(m, h)?;
    VanishingPattern::new(Family::Tor, a, b, d, tor_dims(m, n, 1..=h)?.dims())
}

/// A run of `length` zeros at indices `start + 1 ..= start + length`,
/// flanked by nonzero entries at `start` and `start + length + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub start: usize,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub window: usize,
    pub gaps: Vec<Gap>,
}

impl GapReport {
    pub fn longest(&self) -> Option<usize> {
        self.gaps.iter().map(|g| g.length).max()
    }
}

/// Every maximal gap inside the window, in increasing order. Unknown
/// entries break runs and never flank a gap.
pub fn gap_analysis(p: &VanishingPattern) -> GapReport {
    let mut gaps = Vec::new();
    let mut open: Option<usize> = None;
    for i in 1..=p.window {
        match p.dim(i).is_zero() {
            Some(false) => {
                if let Some(n) = open {
                    if i > n + 1 {
                        gaps.push(Gap { start: n, length: i - n - 1 });
                    }
                }
                open = Some(i);
            }
            Some(true) => {}
            None => open = None,
        }
    }
    GapReport { window: p.window, gaps }
}

/// Window-bounded lower estimate of the Ext-index: the largest last
/// nonzero index over tail-vanishing patterns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEstimate {
    /// `None` when no tail-vanishing pair was observed.
    pub estimate: Option<usize>,
    pub window: usize,
    pub pairs: usize,
    pub tail_vanishing_pairs: usize,
    pub note: String,
}

impl IndexEstimate {
    pub fn from_patterns(patterns: &[VanishingPattern]) -> Self {
        let tail: Vec<&VanishingPattern> = patterns.iter().filter(|p| p.tail_vanishing == Some(true)).collect();
        IndexEstimate {
            estimate: tail.iter().map(|p| p.last_nonzero).max(),
            window: patterns.iter().map(|p| p.window).min().unwrap_or(0),
            pairs: patterns.len(),
            tail_vanishing_pairs: tail.len(),
            note: "estimate from a finite window and finitely many pairs; a lower bound at best".into(),
        }
    }
}

impl fmt::Display for IndexEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.estimate {
            Some(e) => write!(f, "Ext-index estimate {e} (window {}, {} of {} pairs tail-vanishing)", self.window, self.tail_vanishing_pairs, self.pairs),
            None => write!(f, "no tail-vanishing pair observed (window {}, {} pairs)", self.window, self.pairs),
        }
    }
}

/// Scans every pair with window `H` and estimates the Ext-index.
pub fn ext_index_estimate(pairs: &[(PresentedModule, PresentedModule)], h: usize) -> Result<IndexEstimate> {
    let patterns: Vec<VanishingPattern> = crate::par::map(pairs, |(m, n)| scan_ext(m, n, h))
        .into_iter()
        .collect::<Result<_>>()?;
    Ok(IndexEstimate::from_patterns(&patterns))
}
