//! Exact linear algebra over the prime fields F_2, F_3, F_5 and F_7.
//!
//! Vectors are dense residue arrays. Linear maps act on row vectors from the
//! right: a `rows x cols` matrix `M` sends `v` (length `rows`) to `v * M`
//! (length `cols`). Subspaces are stored in reduced row-echelon form, which
//! is canonical, so structural equality of two [`Subspace`] values is set
//! equality.

use thiserror::Error;

/// Primes accepted by this crate.
pub const SUPPORTED_PRIMES: [u8; 4] = [2, 3, 5, 7];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("unsupported prime {0}; expected one of 2, 3, 5, 7")]
    UnsupportedPrime(u64),
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspaces live in different ambient spaces (F_{p1}^{n1} vs F_{p2}^{n2})")]
    AmbientMismatch {
        p1: u8,
        n1: usize,
        p2: u8,
        n2: usize,
    },
    #[error("subspace is not contained in the enclosing space")]
    NotContained,
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

pub fn check_prime(p: u64) -> Result<u8> {
    if SUPPORTED_PRIMES.iter().any(|&q| q as u64 == p) {
        Ok(p as u8)
    } else {
        Err(LinalgError::UnsupportedPrime(p))
    }
}

/// Multiplicative inverse in F_p, `a != 0`.
#[inline]
pub fn inv_mod(a: u8, p: u8) -> u8 {
    debug_assert!(!a.is_multiple_of(p));
    (1..p)
        .find(|&b| (a as u16 * b as u16) % p as u16 == 1)
        .unwrap()
}

/// `v += c * w`, entries already reduced.
#[inline]
fn axpy(v: &mut [u8], c: u8, w: &[u8], p: u8, from: usize) {
    if c == 0 {
        return;
    }
    if p == 2 {
        for (a, b) in v[from..].iter_mut().zip(&w[from..]) {
            *a ^= *b;
        }
        return;
    }
    for (a, b) in v[from..].iter_mut().zip(&w[from..]) {
        if *b != 0 {
            *a = ((*a as u16 + c as u16 * *b as u16) % p as u16) as u8;
        }
    }
}

#[inline]
fn scale_in_place(v: &mut [u8], c: u8, p: u8) {
    if c == 1 {
        return;
    }
    for a in v.iter_mut() {
        *a = ((*a as u16 * c as u16) % p as u16) as u8;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpVector {
    p: u8,
    coords: Vec<u8>,
}

impl FpVector {
    /// Builds a vector, reducing every coordinate mod `p`.
    pub fn new(p: u8, coords: impl IntoIterator<Item = i64>) -> Self {
        let m = p as i64;
        FpVector {
            p,
            coords: coords.into_iter().map(|c| c.rem_euclid(m) as u8).collect(),
        }
    }

    /// Wraps already-reduced residues.
    pub fn from_residues(p: u8, coords: Vec<u8>) -> Self {
        debug_assert!(coords.iter().all(|&c| c < p));
        FpVector { p, coords }
    }

    pub fn zero(p: u8, n: usize) -> Self {
        FpVector {
            p,
            coords: vec![0; n],
        }
    }

    pub fn unit(p: u8, n: usize, i: usize) -> Self {
        let mut v = Self::zero(p, n);
        v.coords[i] = 1;
        v
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u8> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        let mut out = self.clone();
        axpy(&mut out.coords, 1, &other.coords, self.p, 0);
        out
    }

    pub fn sub(&self, other: &FpVector) -> FpVector {
        let mut out = self.clone();
        axpy(&mut out.coords, self.p - 1, &other.coords, self.p, 0);
        out
    }

    pub fn scale(&self, c: u8) -> FpVector {
        let mut out = self.clone();
        scale_in_place(&mut out.coords, c % self.p, self.p);
        out
    }

    /// `self * m` for a `len x cols` matrix.
    pub fn mul_matrix(&self, m: &FpMatrix) -> Result<FpVector> {
        if m.rows != self.len() {
            return Err(LinalgError::DimensionMismatch {
                expected: m.rows,
                found: self.len(),
            });
        }
        let mut out = vec![0u8; m.cols];
        for (i, &c) in self.coords.iter().enumerate() {
            axpy(&mut out, c, m.row(i), self.p, 0);
        }
        Ok(FpVector::from_residues(self.p, out))
    }
}

/// Dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FpMatrix {
    pub fn zeros(p: u8, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from residue rows of a common length `cols`.
    pub fn from_rows(p: u8, cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&c| c % p));
        }
        Ok(FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u8] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows || self.p != other.p {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u8; other.cols];
            for k in 0..self.cols {
                axpy(&mut acc, self.get(i, k), other.row(k), self.p, 0);
            }
            out.row_mut(i).copy_from_slice(&acc);
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.rows != other.rows {
            return Err(LinalgError::ShapeMismatch(
                "hconcat row counts differ".into(),
            ));
        }
        let cols = self.cols + other.cols;
        let mut out = FpMatrix::zeros(self.p, self.rows, cols);
        for i in 0..self.rows {
            out.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            out.row_mut(i)[self.cols..].copy_from_slice(other.row(i));
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        image(self).dim()
    }
}

/// Incremental semi-echelon basis; rows are normalised at their pivot and
/// zero before it. Used to span large, highly redundant generating sets.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    p: u8,
    n: usize,
    rows: Vec<Vec<u8>>,
    pivot_row: Vec<Option<usize>>,
}

impl EchelonBuilder {
    pub fn new(p: u8, n: usize) -> Self {
        EchelonBuilder {
            p,
            n,
            rows: Vec::new(),
            pivot_row: vec![None; n],
        }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        let mut b = Self::new(s.p, s.n);
        for (r, &c) in s.rows.iter().zip(&s.pivots) {
            b.pivot_row[c] = Some(b.rows.len());
            b.rows.push(r.clone());
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` in place against the current rows; returns the first
    /// nonzero column of the remainder, if any.
    fn reduce_in_place(&self, v: &mut [u8]) -> Option<usize> {
        let p = self.p;
        let mut c = 0;
        while c < self.n {
            if v[c] != 0 {
                match self.pivot_row[c] {
                    Some(r) => {
                        let k = p - v[c];
                        axpy(v, k, &self.rows[r], p, c);
                    }
                    None => return Some(c),
                }
            }
            c += 1;
        }
        None
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w).is_none() && w.iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns true when the span grew.
    pub fn insert(&mut self, mut v: Vec<u8>) -> bool {
        debug_assert_eq!(v.len(), self.n);
        let Some(c) = self.reduce_in_place(&mut v) else {
            return false;
        };
        let inv = inv_mod(v[c], self.p);
        scale_in_place(&mut v[c..], inv, self.p);
        self.pivot_row[c] = Some(self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn finish(self) -> Subspace {
        let p = self.p;
        let mut order: Vec<(usize, Vec<u8>)> = Vec::with_capacity(self.rows.len());
        for (c, r) in self.pivot_row.iter().enumerate() {
            if let Some(r) = r {
                order.push((c, self.rows[*r].clone()));
            }
        }
        let pivots: Vec<usize> = order.iter().map(|(c, _)| *c).collect();
        let mut rows: Vec<Vec<u8>> = order.into_iter().map(|(_, r)| r).collect();
        for i in 0..rows.len() {
            let c = pivots[i];
            let (before, rest) = rows.split_at_mut(i);
            let pivot_row = &rest[0];
            for r in before.iter_mut() {
                if r[c] != 0 {
                    let k = p - r[c];
                    axpy(r, k, pivot_row, p, c);
                }
            }
        }
        Subspace {
            p,
            n: self.n,
            rows,
            pivots,
        }
    }
}

/// A subspace of F_p^n held in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    p: u8,
    n: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

/// Canonical reduced row-echelon span of `rows`.
pub fn rref(p: u8, n: usize, rows: &[Vec<u8>]) -> Result<Subspace> {
    let mut b = EchelonBuilder::new(p, n);
    for r in rows {
        if r.len() != n {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        b.insert(r.iter().map(|&c| c % p).collect());
    }
    Ok(b.finish())
}

impl Subspace {
    pub fn zero(p: u8, n: usize) -> Self {
        Subspace {
            p,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u8, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| FpVector::unit(p, n, i).into_coords())
            .collect();
        Subspace {
            p,
            n,
            rows,
            pivots: (0..n).collect(),
        }
    }

    pub fn span<'a>(
        p: u8,
        n: usize,
        vectors: impl IntoIterator<Item = &'a FpVector>,
    ) -> Result<Self> {
        let mut b = EchelonBuilder::new(p, n);
        for v in vectors {
            if v.len() != n {
                return Err(LinalgError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            b.insert(v.coords().to_vec());
        }
        Ok(b.finish())
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn basis_vectors(&self) -> Vec<FpVector> {
        self.rows
            .iter()
            .map(|r| FpVector::from_residues(self.p, r.clone()))
            .collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.p != other.p || self.n != other.n {
            return Err(LinalgError::AmbientMismatch {
                p1: self.p,
                n1: self.n,
                p2: other.p,
                n2: other.n,
            });
        }
        Ok(())
    }

    /// Normal form of `v` modulo this subspace: zero in every pivot column.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let mut w = v.to_vec();
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            if w[c] != 0 {
                let k = self.p - w[c];
                axpy(&mut w, k, r, self.p, c);
            }
        }
        w
    }

    pub fn contains_slice(&self, v: &[u8]) -> bool {
        v.len() == self.n && self.reduce(v).iter().all(|&c| c == 0)
    }

    pub fn contains(&self, v: &FpVector) -> Result<bool> {
        if v.len() != self.n || v.p() != self.p {
            return Err(LinalgError::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(self.contains_slice(v.coords()))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_same_ambient(other)?;
        Ok(self.rows.iter().all(|r| other.contains_slice(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let (big, small) = if self.dim() >= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        let mut b = EchelonBuilder::from_subspace(big);
        for r in &small.rows {
            b.insert(r.clone());
        }
        Ok(b.finish())
    }

    /// `U ∩ V` from the kernel of the stacked basis matrix: pairs `(x, y)`
    /// with `x B_U + y B_V = 0` give the common vectors `x B_U`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.p, self.n));
        }
        let mut stacked = self.rows.clone();
        stacked.extend(other.rows.iter().cloned());
        let m = FpMatrix::from_rows(self.p, self.n, &stacked)?;
        let ker = kernel(&m);
        let du = self.dim();
        let mut b = EchelonBuilder::new(self.p, self.n);
        for k in &ker.rows {
            let mut v = vec![0u8; self.n];
            for (i, &c) in k[..du].iter().enumerate() {
                axpy(&mut v, c, &self.rows[i], self.p, 0);
            }
            b.insert(v);
        }
        Ok(b.finish())
    }

    /// `dim V - dim U` for `U = self ⊆ V`.
    pub fn quotient_dim(&self, larger: &Subspace) -> Result<usize> {
        self.check_same_ambient(larger)?;
        if !self.is_subspace_of(larger)? {
            return Err(LinalgError::NotContained);
        }
        Ok(larger.dim() - self.dim())
    }

    /// Image under a linear map with `ambient_dim` rows.
    pub fn image_under(&self, m: &FpMatrix) -> Result<Subspace> {
        if m.rows != self.n {
            return Err(LinalgError::ShapeMismatch(format!(
                "map has {} rows, subspace lives in dimension {}",
                m.rows, self.n
            )));
        }
        let mut b = EchelonBuilder::new(self.p, m.cols);
        for r in &self.rows {
            let mut v = vec![0u8; m.cols];
            for (i, &c) in r.iter().enumerate() {
                axpy(&mut v, c, m.row(i), self.p, 0);
            }
            b.insert(v);
        }
        Ok(b.finish())
    }

    /// Basis matrix (dim x ambient_dim).
    pub fn to_matrix(&self) -> FpMatrix {
        FpMatrix::from_rows(self.p, self.n, &self.rows).expect("rows have ambient length")
    }

    /// Coordinates of a member with respect to the echelon basis.
    pub fn coordinates(&self, v: &[u8]) -> Option<Vec<u8>> {
        if !self.contains_slice(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }
}

/// Kernel `{x : x M = 0}` of a `rows x cols` matrix, as a subspace of F_p^rows.
pub fn kernel(m: &FpMatrix) -> Subspace {
    let p = m.p;
    let aug = m
        .hconcat(&FpMatrix::identity(p, m.rows))
        .expect("same row count");
    let mut b = EchelonBuilder::new(p, m.cols + m.rows);
    for i in 0..aug.rows {
        b.insert(aug.row(i).to_vec());
    }
    let full = b.finish();
    let mut out = EchelonBuilder::new(p, m.rows);
    for (r, &c) in full.rows.iter().zip(&full.pivots) {
        if c >= m.cols {
            out.insert(r[m.cols..].to_vec());
        }
    }
    out.finish()
}

/// Row space of `m`, i.e. the image of the map `x -> x M`.
pub fn image(m: &FpMatrix) -> Subspace {
    let mut b = EchelonBuilder::new(m.p, m.cols);
    for i in 0..m.rows {
        b.insert(m.row(i).to_vec());
    }
    b.finish()
}

/// Full preimage `{x : x M ∈ W}`.
pub fn preimage(m: &FpMatrix, w: &Subspace) -> Result<Subspace> {
    if w.n != m.cols || w.p != m.p {
        return Err(LinalgError::ShapeMismatch(format!(
            "map has {} columns, target subspace lives in dimension {}",
            m.cols, w.n
        )));
    }
    let free: Vec<usize> = {
        let mut is_pivot = vec![false; m.cols];
        for &c in &w.pivots {
            is_pivot[c] = true;
        }
        (0..m.cols).filter(|&c| !is_pivot[c]).collect()
    };
    // x M ∈ W  iff  the reduction of x M modulo W vanishes; reduction is linear
    let mut reduced = FpMatrix::zeros(m.p, m.rows, free.len());
    for i in 0..m.rows {
        let r = w.reduce(m.row(i));
        for (j, &c) in free.iter().enumerate() {
            reduced.set(i, j, r[c]);
        }
    }
    Ok(kernel(&reduced))
}

/// The quotient `V / W` of two subspaces with `W ⊆ V`, with canonical
/// representatives: the reduced row-echelon basis of `V` reduced modulo `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    numerator: Subspace,
    denominator: Subspace,
    reps: Subspace,
}

impl QuotientSpace {
    pub fn new(numerator: Subspace, denominator: Subspace) -> Result<Self> {
        if !denominator.is_subspace_of(&numerator)? {
            return Err(LinalgError::NotContained);
        }
        let mut b = EchelonBuilder::new(numerator.p, numerator.n);
        for r in &numerator.rows {
            b.insert(denominator.reduce(r));
        }
        let reps = b.finish();
        Ok(QuotientSpace {
            numerator,
            denominator,
            reps,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    /// Canonical representatives of the quotient basis.
    pub fn basis(&self) -> &[Vec<u8>] {
        self.reps.basis()
    }

    /// Coordinates of `v + W`, or `None` if `v ∉ V`.
    pub fn coords(&self, v: &[u8]) -> Option<Vec<u8>> {
        if !self.numerator.contains_slice(v) {
            return None;
        }
        let r = self.denominator.reduce(v);
        self.reps.coordinates(&r)
    }

    /// Subspace of coordinate space spanned by the classes of `s` (which must lie in `V`).
    pub fn image_of(&self, s: &Subspace) -> Option<Subspace> {
        let mut b = EchelonBuilder::new(self.numerator.p, self.dim());
        for r in s.basis() {
            b.insert(self.coords(r)?);
        }
        Some(b.finish())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sub(p: u8, n: usize, rows: &[&[u8]]) -> Subspace {
        let rows: Vec<Vec<u8>> = rows.iter().map(|r| r.to_vec()).collect();
        rref(p, n, &rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let s = sub(2, 2, &[&[1, 1], &[0, 1]]);
        assert_eq!(s.basis(), &[vec![1, 0], vec![0, 1]]);
        let s = sub(3, 2, &[&[2, 1], &[1, 2]]);
        assert_eq!(s.basis(), &[vec![1, 2]]);
        let s = rref(3, 4, &[]).unwrap();
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn rref_rejects_ragged_rows() {
        let err = rref(2, 3, &[vec![1, 0, 1], vec![1, 0]]).unwrap_err();
        assert_eq!(
            err,
            LinalgError::DimensionMismatch {
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn sum_and_intersect_examples() {
        let e1 = sub(2, 3, &[&[1, 0, 0]]);
        let e2 = sub(2, 3, &[&[0, 1, 0]]);
        let z = Subspace::zero(2, 3);
        assert_eq!(e1.sum(&z).unwrap(), e1);
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        assert_eq!(e1.sum(&e2).unwrap().dim(), 2);
        assert_eq!(e1.intersect(&Subspace::full(2, 3)).unwrap(), e1);
        assert_eq!(e1.intersect(&e2).unwrap().dim(), 0);
        let other = Subspace::zero(3, 3);
        assert!(matches!(
            e1.sum(&other),
            Err(LinalgError::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn kernel_image_preimage_examples() {
        let id = FpMatrix::identity(5, 4);
        assert_eq!(kernel(&id).dim(), 0);
        let m = FpMatrix::from_rows(3, 3, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]).unwrap();
        let im = image(&m);
        assert_eq!(preimage(&m, &im).unwrap(), Subspace::full(3, 3));
        assert!(preimage(&m, &Subspace::zero(3, 2)).is_err());
    }

    #[test]
    fn kernel_of_translation_by_generator_minus_one_on_f2_c8() {
        // right multiplication by (a - 1) on F_2 C_8: e_i -> e_{i+1} - e_i
        let n = 8;
        let mut m = FpMatrix::zeros(2, n, n);
        for i in 0..n {
            m.set(i, (i + 1) % n, 1);
            m.set(i, i, 1);
        }
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], vec![1; 8]);
    }

    #[test]
    fn membership_and_quotient_dim() {
        let z = Subspace::zero(2, 2);
        assert!(z.contains(&FpVector::zero(2, 2)).unwrap());
        let s = sub(2, 2, &[&[1, 1]]);
        assert!(!s.contains(&FpVector::unit(2, 2, 0)).unwrap());
        assert_eq!(
            Subspace::zero(3, 4)
                .quotient_dim(&Subspace::full(3, 4))
                .unwrap(),
            4
        );
        assert_eq!(
            Subspace::full(3, 4).quotient_dim(&s_in_f3()).unwrap_err(),
            LinalgError::NotContained
        );
        assert!(matches!(
            Subspace::zero(3, 3).quotient_dim(&Subspace::full(3, 4)),
            Err(LinalgError::AmbientMismatch { .. })
        ));
    }

    fn s_in_f3() -> Subspace {
        sub(3, 4, &[&[1, 0, 0, 0]])
    }

    #[test]
    fn quotient_space_coordinates() {
        let v = Subspace::full(3, 3);
        let w = sub(3, 3, &[&[1, 1, 0]]);
        let q = QuotientSpace::new(v, w.clone()).unwrap();
        assert_eq!(q.dim(), 2);
        let a = q.coords(&[1, 0, 0]).unwrap();
        let b = q.coords(&[0, 2, 0]).unwrap();
        assert_eq!(a, b);
        assert_eq!(q.coords(&[1, 1, 0]).unwrap(), vec![0, 0]);
        assert!(QuotientSpace::new(w, Subspace::full(3, 3)).is_err());
    }

    #[test]
    fn unsupported_primes_rejected() {
        assert!(check_prime(11).is_err());
        assert_eq!(check_prime(7).unwrap(), 7);
    }

    fn rows_strategy(p: u8, n: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
        prop::collection::vec(prop::collection::vec(0..p, n), 0..7)
    }

    proptest! {
        #[test]
        fn canonical_form_independent_of_generators(
            (p, rows, mix) in prop_oneof![Just(2u8), Just(3u8)].prop_flat_map(|p| {
                (Just(p), rows_strategy(p, 6), prop::collection::vec(0..p, 36))
            })
        ) {
            let a = rref(p, 6, &rows).unwrap();
            // a second generating set of the same span: random combinations plus the originals
            let mut other: Vec<Vec<u8>> = Vec::new();
            for (k, r) in rows.iter().enumerate() {
                let mut v = r.clone();
                for (j, s) in rows.iter().enumerate() {
                    let c = mix[(k * 6 + j) % mix.len()];
                    axpy(&mut v, c, s, p, 0);
                }
                other.push(v);
            }
            other.extend(rows.iter().rev().cloned());
            let b = rref(p, 6, &other).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn dimension_formula(
            (p, r1, r2) in prop_oneof![Just(2u8), Just(3u8)].prop_flat_map(|p| {
                (Just(p), rows_strategy(p, 7), rows_strategy(p, 7))
            })
        ) {
            let u = rref(p, 7, &r1).unwrap();
            let v = rref(p, 7, &r2).unwrap();
            let s = u.sum(&v).unwrap();
            let i = u.intersect(&v).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
            prop_assert!(i.is_subspace_of(&u).unwrap() && i.is_subspace_of(&v).unwrap());
        }

        #[test]
        fn preimage_maps_into_target(
            (p, m_rows, w_rows) in prop_oneof![Just(2u8), Just(3u8)].prop_flat_map(|p| {
                (Just(p), prop::collection::vec(prop::collection::vec(0..p, 4), 5), rows_strategy(p, 4))
            })
        ) {
            let m = FpMatrix::from_rows(p, 4, &m_rows).unwrap();
            let w = rref(p, 4, &w_rows).unwrap();
            let pre = preimage(&m, &w).unwrap();
            prop_assert!(pre.image_under(&m).unwrap().is_subspace_of(&w).unwrap());
            // and nothing outside the preimage maps into W
            for i in 0..5 {
                let e = FpVector::unit(p, 5, i);
                let img = e.mul_matrix(&m).unwrap();
                prop_assert_eq!(w.contains(&img).unwrap(), pre.contains(&e).unwrap());
            }
        }
    }
}
