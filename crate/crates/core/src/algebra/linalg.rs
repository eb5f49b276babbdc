//! Sparse row echelon forms over `F_p`.

use super::field::{Coeff, FieldSpec};

/// Sparse vector, entries sorted by index, no zeros.
pub type SparseVec = Vec<(u32, Coeff)>;

/// Incremental echelon basis of a row space, optionally remembering how each
/// pivot row was combined from the inserted rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    ncols: usize,
    pivot_of: Vec<u32>,
    rows: Vec<SparseVec>,
    track_len: usize,
    tracks: Vec<SparseVec>,
    buf: Vec<Coeff>,
    tbuf: Vec<Coeff>,
}

const NONE: u32 = u32::MAX;

/// Outcome of reducing a vector against the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduced {
    /// The vector was independent and became pivot row `row`.
    Independent(usize),
    /// The vector lies in the span; carries the final tracking vector.
    Dependent(SparseVec),
}

impl Echelon {
    pub fn new(field: FieldSpec, ncols: usize) -> Self {
        Self::with_tracking(field, ncols, 0)
    }

    /// `track_len` is the dimension of the space of inserted-row labels.
    pub fn with_tracking(field: FieldSpec, ncols: usize, track_len: usize) -> Self {
        Echelon {
            field,
            ncols,
            pivot_of: vec![NONE; ncols],
            rows: Vec::new(),
            track_len,
            tracks: Vec::new(),
            buf: vec![0; ncols],
            tbuf: vec![0; track_len],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces `v` in the scratch buffers; returns whether anything is left.
    fn reduce_in_place(&mut self, v: &[(u32, Coeff)], track: &[(u32, Coeff)]) -> bool {
        let f = self.field;
        let p = f.characteristic();
        for &(i, c) in v {
            self.buf[i as usize] = c;
        }
        for &(i, c) in track {
            self.tbuf[i as usize] = c;
        }
        let tracking = self.track_len > 0;
        let start = v.first().map_or(self.ncols, |e| e.0 as usize);
        let mut nonzero = false;
        for col in start..self.ncols {
            let c = self.buf[col];
            if c == 0 {
                continue;
            }
            let r = self.pivot_of[col];
            if r == NONE {
                nonzero = true;
                continue;
            }
            let neg = p - c;
            for &(j, a) in &self.rows[r as usize] {
                let b = &mut self.buf[j as usize];
                *b = ((*b as u64 + neg as u64 * a as u64) % p as u64) as Coeff;
            }
            if tracking {
                for &(j, a) in &self.tracks[r as usize] {
                    let b = &mut self.tbuf[j as usize];
                    *b = ((*b as u64 + neg as u64 * a as u64) % p as u64) as Coeff;
                }
            }
        }
        nonzero
    }

    fn drain(buf: &mut [Coeff], from: usize) -> SparseVec {
        let mut out = Vec::new();
        for (i, b) in buf.iter_mut().enumerate().skip(from) {
            if *b != 0 {
                out.push((i as u32, *b));
                *b = 0;
            }
        }
        out
    }

    /// Adds `v` (labelled by `track`) to the row space.
    pub fn insert(&mut self, v: &[(u32, Coeff)], track: &[(u32, Coeff)]) -> Reduced {
        let nonzero = self.reduce_in_place(v, track);
        let start = v.first().map_or(0, |e| e.0 as usize);
        let rest = Self::drain(&mut self.buf, start);
        let t = Self::drain(&mut self.tbuf, 0);
        if !nonzero {
            debug_assert!(rest.is_empty());
            return Reduced::Dependent(t);
        }
        let lead_inv = self.field.inv(rest[0].1);
        let row: SparseVec = rest.iter().map(|&(i, c)| (i, self.field.mul(c, lead_inv))).collect();
        let t: SparseVec = t.iter().map(|&(i, c)| (i, self.field.mul(c, lead_inv))).collect();
        self.pivot_of[row[0].0 as usize] = self.rows.len() as u32;
        self.rows.push(row);
        self.tracks.push(t);
        Reduced::Independent(self.rows.len() - 1)
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&mut self, v: &[(u32, Coeff)]) -> bool {
        let nonzero = self.reduce_in_place(v, &[]);
        Self::drain(&mut self.buf, 0);
        Self::drain(&mut self.tbuf, 0);
        !nonzero
    }

    /// Expresses `v` through the inserted rows: returns `c` with
    /// `v = Σ c_i row_i`, or `None` when `v` is not in the span.
    pub fn solve(&mut self, v: &[(u32, Coeff)]) -> Option<SparseVec> {
        let nonzero = self.reduce_in_place(v, &[]);
        Self::drain(&mut self.buf, 0);
        let t = Self::drain(&mut self.tbuf, 0);
        if nonzero {
            return None;
        }
        Some(t.into_iter().map(|(i, c)| (i, self.field.neg(c))).collect())
    }
}

/// Rank of a list of sparse rows.
pub fn rank(field: FieldSpec, ncols: usize, rows: &[SparseVec]) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r, &[]);
    }
    e.rank()
}

/// Basis of `{c : Σ c_i rows_i = 0}`.
pub fn left_kernel(field: FieldSpec, ncols: usize, rows: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::with_tracking(field, ncols, rows.len());
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if let Reduced::Dependent(t) = e.insert(r, &[(i as u32, 1)]) {
            out.push(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldSpec {
        FieldSpec::default_field()
    }

    fn apply(field: FieldSpec, ncols: usize, rows: &[SparseVec], c: &SparseVec) -> Vec<Coeff> {
        let mut out = vec![0; ncols];
        for &(i, a) in c {
            for &(j, b) in &rows[i as usize] {
                out[j as usize] = field.add(out[j as usize], field.mul(a, b));
            }
        }
        out
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![
            vec![(0, 1), (1, 2)],
            vec![(0, 2), (1, 4)],
            vec![(1, 1), (2, 1)],
            vec![(0, 1), (1, 3), (2, 1)],
        ];
        assert_eq!(rank(f(), 3, &rows), 2);
        let k = left_kernel(f(), 3, &rows);
        assert_eq!(k.len(), 2);
        for c in &k {
            assert!(apply(f(), 3, &rows, c).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_recovers_combination() {
        let rows = vec![vec![(0, 1), (2, 5)], vec![(1, 3)], vec![(0, 1), (1, 1), (2, 1)]];
        let mut e = Echelon::with_tracking(f(), 3, 3);
        for (i, r) in rows.iter().enumerate() {
            e.insert(r, &[(i as u32, 1)]);
        }
        let target = vec![(0, 7), (1, 9), (2, 11)];
        let c = e.solve(&target).unwrap();
        let got = apply(f(), 3, &rows, &c);
        assert_eq!(got, vec![7, 9, 11]);
        let mut small = Echelon::new(f(), 3);
        small.insert(&rows[1], &[]);
        assert!(!small.contains(&target));
        assert!(small.contains(&[(1, 4)]));
    }
}
