//! Row reduction over F_q.
//!
//! [`RowSpace`] is an incremental echelon basis used for rank, membership and
//! subspace tests. For q = 2 it packs vectors into 64-bit words; everything
//! else stores one byte per element.

use crate::field::{Elem, FieldSpec};

/// Packs a 0/1 vector into little-endian 64-bit words.
pub fn pack_bits(v: &[Elem]) -> Vec<u64> {
    let mut out = vec![0u64; v.len().div_ceil(64)];
    for (i, &x) in v.iter().enumerate() {
        if x != 0 {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

pub fn unpack_bits(w: &[u64], len: usize) -> Vec<Elem> {
    (0..len).map(|i| ((w[i / 64] >> (i % 64)) & 1) as Elem).collect()
}

#[inline]
pub fn popcount(w: &[u64]) -> u32 {
    w.iter().map(|x| x.count_ones()).sum()
}

#[derive(Clone, Debug)]
enum Backend {
    Bits { rows: Vec<Vec<u64>> },
    Bytes { rows: Vec<Vec<Elem>> },
}

/// Echelon basis of a subspace of F_q^n, grown one vector at a time.
///
/// Rows are kept fully reduced with a leading 1 at their pivot column, so a
/// vector reduces in one pass over the pivots.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: FieldSpec,
    len: usize,
    pivots: Vec<usize>,
    backend: Backend,
}

impl RowSpace {
    pub fn new(field: &FieldSpec, len: usize) -> Self {
        let backend = if field.q() == 2 {
            Backend::Bits { rows: Vec::new() }
        } else {
            Backend::Bytes { rows: Vec::new() }
        };
        RowSpace { field: field.clone(), len, pivots: Vec::new(), backend }
    }

    pub fn from_rows<'a, I>(field: &FieldSpec, len: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = &'a Vec<Elem>>,
    {
        let mut rs = RowSpace::new(field, len);
        for r in rows {
            rs.insert(r);
        }
        rs
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Adds `v` to the span; returns true when the rank grew.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        match &mut self.backend {
            Backend::Bits { rows } => {
                let mut w = pack_bits(v);
                reduce_bits(&self.pivots, rows, &mut w);
                let Some(p) = first_bit(&w) else { return false };
                for r in rows.iter_mut() {
                    if (r[p / 64] >> (p % 64)) & 1 == 1 {
                        xor_into(r, &w);
                    }
                }
                rows.push(w);
                self.pivots.push(p);
                true
            }
            Backend::Bytes { rows } => {
                let f = &self.field;
                let mut w = v.to_vec();
                reduce_bytes(f, &self.pivots, rows, &mut w);
                let Some(p) = w.iter().position(|&x| x != 0) else { return false };
                let inv = f.inv(w[p]).unwrap();
                f.scale(&mut w, inv);
                for r in rows.iter_mut() {
                    let c = r[p];
                    if c != 0 {
                        f.axpy(r, f.neg(c), &w);
                    }
                }
                rows.push(w);
                self.pivots.push(p);
                true
            }
        }
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        match &self.backend {
            Backend::Bits { rows } => {
                let mut w = pack_bits(v);
                reduce_bits(&self.pivots, rows, &mut w);
                w.iter().all(|&x| x == 0)
            }
            Backend::Bytes { rows } => {
                let mut w = v.to_vec();
                reduce_bytes(&self.field, &self.pivots, rows, &mut w);
                w.iter().all(|&x| x == 0)
            }
        }
    }

    /// Packed-word membership test, q = 2 only.
    pub fn contains_packed(&self, w: &[u64]) -> bool {
        match &self.backend {
            Backend::Bits { rows } => {
                let mut w = w.to_vec();
                reduce_bits(&self.pivots, rows, &mut w);
                w.iter().all(|&x| x == 0)
            }
            Backend::Bytes { .. } => panic!("packed membership requires q = 2"),
        }
    }

    /// Packed-word insertion, q = 2 only.
    pub fn insert_packed(&mut self, w: &[u64]) -> bool {
        match &mut self.backend {
            Backend::Bits { rows } => {
                let mut w = w.to_vec();
                reduce_bits(&self.pivots, rows, &mut w);
                let Some(p) = first_bit(&w) else { return false };
                for r in rows.iter_mut() {
                    if (r[p / 64] >> (p % 64)) & 1 == 1 {
                        xor_into(r, &w);
                    }
                }
                rows.push(w);
                self.pivots.push(p);
                true
            }
            Backend::Bytes { .. } => panic!("packed insertion requires q = 2"),
        }
    }

    /// Reduced basis rows, in insertion order.
    pub fn basis(&self) -> Vec<Vec<Elem>> {
        match &self.backend {
            Backend::Bits { rows } => rows.iter().map(|r| unpack_bits(r, self.len)).collect(),
            Backend::Bytes { rows } => rows.clone(),
        }
    }

    /// Whether every basis vector of `other` lies in `self`.
    pub fn contains_space(&self, other: &RowSpace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    /// Basis of the orthogonal complement `{x : <x, v> = 0 for all v in self}`.
    pub fn orthogonal_complement(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let basis = self.basis();
        let mut is_pivot = vec![usize::MAX; self.len];
        for (i, &p) in self.pivots.iter().enumerate() {
            is_pivot[p] = i;
        }
        // rows are fully reduced: x_pivot = -sum_free row[free] * x_free
        (0..self.len)
            .filter(|&c| is_pivot[c] == usize::MAX)
            .map(|free| {
                let mut x = vec![0; self.len];
                x[free] = 1;
                for (i, &p) in self.pivots.iter().enumerate() {
                    x[p] = f.neg(basis[i][free]);
                }
                x
            })
            .collect()
    }
}

fn first_bit(w: &[u64]) -> Option<usize> {
    w.iter()
        .enumerate()
        .find(|(_, &x)| x != 0)
        .map(|(i, &x)| i * 64 + x.trailing_zeros() as usize)
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn reduce_bits(pivots: &[usize], rows: &[Vec<u64>], w: &mut [u64]) {
    for (&p, r) in pivots.iter().zip(rows) {
        if (w[p / 64] >> (p % 64)) & 1 == 1 {
            xor_into(w, r);
        }
    }
}

fn reduce_bytes(f: &FieldSpec, pivots: &[usize], rows: &[Vec<Elem>], w: &mut [Elem]) {
    for (&p, r) in pivots.iter().zip(rows) {
        let c = w[p];
        if c != 0 {
            f.axpy(w, f.neg(c), r);
        }
    }
}

/// Rank of a list of vectors.
pub fn rank(field: &FieldSpec, len: usize, rows: &[Vec<Elem>]) -> usize {
    RowSpace::from_rows(field, len, rows).rank()
}

/// Determinant of a square matrix given row-major, by elimination.
pub fn determinant(field: &FieldSpec, n: usize, m: &[Elem]) -> Elem {
    let f = field;
    let mut a: Vec<Vec<Elem>> = m.chunks(n).map(|r| r.to_vec()).collect();
    let mut det = 1;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else { return 0 };
        if piv != col {
            a.swap(piv, col);
            det = f.neg(det);
        }
        let d = a[col][col];
        det = f.mul(det, d);
        let inv = f.inv(d).unwrap();
        for r in col + 1..n {
            let c = f.mul(a[r][col], inv);
            if c != 0 {
                let pivot_row = a[col].clone();
                f.axpy(&mut a[r], f.neg(c), &pivot_row);
            }
        }
    }
    det
}

/// Inverse of a square matrix (row-major), or `None` when singular.
pub fn invert(field: &FieldSpec, n: usize, m: &[Elem]) -> Option<Vec<Elem>> {
    let f = field;
    let mut a: Vec<Vec<Elem>> = m
        .chunks(n)
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.to_vec();
            row.extend((0..n).map(|j| (i == j) as Elem));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(piv, col);
        let inv = f.inv(a[col][col]).unwrap();
        f.scale(&mut a[col], inv);
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let c = f.neg(row[col]);
                f.axpy(row, c, &pivot_row);
            }
        }
    }
    Some(a.into_iter().flat_map(|r| r[n..].to_vec()).collect())
}

/// Row-major product of an `r x k` and a `k x c` matrix.
pub fn matmul(field: &FieldSpec, a: &[Elem], b: &[Elem], r: usize, k: usize, c: usize) -> Vec<Elem> {
    let mut out = vec![0; r * c];
    for i in 0..r {
        for t in 0..k {
            let x = a[i * k + t];
            if x != 0 {
                field.axpy(&mut out[i * c..(i + 1) * c], x, &b[t * c..(t + 1) * c]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_membership_over_f2_and_f3() {
        let f2 = FieldSpec::new(2).unwrap();
        let rows = vec![vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0]];
        let rs = RowSpace::from_rows(&f2, 4, &rows);
        assert_eq!(rs.rank(), 2);
        assert!(rs.contains(&[1, 0, 1, 0]));
        assert!(!rs.contains(&[0, 0, 0, 1]));

        let f3 = FieldSpec::new(3).unwrap();
        let rows = vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]];
        let rs = RowSpace::from_rows(&f3, 3, &rows);
        assert_eq!(rs.rank(), 2);
        assert!(rs.contains(&[1, 2, 2]));
        assert!(!rs.contains(&[1, 0, 0]));
    }

    #[test]
    fn complement_is_orthogonal_with_right_dimension() {
        for q in [2u32, 3, 4] {
            let f = FieldSpec::new(q).unwrap();
            let rows: Vec<Vec<Elem>> = (0..4)
                .map(|i| (0..9).map(|j| ((i * 5 + j * j + i * j) as u32 % q) as Elem).collect())
                .collect();
            let rs = RowSpace::from_rows(&f, 9, &rows);
            let comp = rs.orthogonal_complement();
            assert_eq!(comp.len(), 9 - rs.rank());
            assert_eq!(rank(&f, 9, &comp), comp.len());
            for a in &rows {
                for b in &comp {
                    assert_eq!(f.dot(a, b), 0);
                }
            }
        }
    }

    #[test]
    fn determinant_and_inverse() {
        let f = FieldSpec::new(3).unwrap();
        let m = [1, 2, 0, 1];
        assert_eq!(determinant(&f, 2, &m), 1);
        let inv = invert(&f, 2, &m).unwrap();
        assert_eq!(matmul(&f, &m, &inv, 2, 2, 2), vec![1, 0, 0, 1]);
        assert_eq!(invert(&f, 2, &[1, 2, 2, 1]), None);
        assert_eq!(determinant(&f, 2, &[1, 2, 2, 1]), 0);
    }

    #[test]
    fn packing_round_trip() {
        let v: Vec<Elem> = (0..130).map(|i| (i % 3 == 0) as Elem).collect();
        assert_eq!(unpack_bits(&pack_bits(&v), 130), v);
        assert_eq!(popcount(&pack_bits(&v)), 44);
    }
}
