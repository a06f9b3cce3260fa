//! The group algebra F_pG as an explicit |G|-dimensional algebra.
//!
//! Elements are coefficient vectors indexed by group elements. Ideals are
//! subspaces; every two-sided ideal here is also tracked through a set of
//! left-ideal generators, which keeps products cheap: if `J` is the left
//! ideal generated by `c_1, ..., c_k` then `I J = span{b c_i : b ∈ I}` for any
//! left ideal `I`.

mod iso;
mod maps;

pub use iso::{
    iso_search, iso_search_all, AlgebraIso, IsoSearchOutcome, ISO_SEARCH_MAX_GENS,
    ISO_SEARCH_MAX_ORDER,
};
pub use maps::{lambda_group_map, CenterDecomposition, DiagramCheck, QuotientMap, SectionMap};

use std::sync::OnceLock;

use thiserror::Error;

use crate::fp_linalg::{self, EchelonBuilder, FpMatrix, FpVector, LinalgError, Subspace};
use crate::group::{FiniteGroup, GroupError, QuotientGroup, Subgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("elements belong to algebras of different dimension")]
    AlgebraMismatch,
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("Jennings series disagree at D_{n}: ideal membership gives order {by_ideal}, the product formula {by_formula}")]
    JenningsMismatch {
        n: usize,
        by_ideal: usize,
        by_formula: usize,
    },
    #[error("(1 + I(N)G + I^{n}) ∩ G has order {found}, expected |D_n(G) N| = {expected}")]
    RelativeJenningsMismatch {
        n: usize,
        found: usize,
        expected: usize,
    },
    #[error("map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error("isomorphism search limit exceeded: {0}")]
    SearchCap(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

/// F_pG for a fixed group.
#[derive(Clone, Copy, Debug)]
pub struct GroupAlgebra<'g> {
    g: &'g FiniteGroup,
}

/// A two-sided ideal.
#[derive(Clone, Debug)]
pub struct AlgIdeal {
    space: Subspace,
    left_gens: OnceLock<Vec<Vec<u8>>>,
}

impl PartialEq for AlgIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
    }
}

impl Eq for AlgIdeal {}

impl AlgIdeal {
    fn with_gens(space: Subspace, gens: Vec<Vec<u8>>) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(gens);
        AlgIdeal {
            space,
            left_gens: cell,
        }
    }

    fn lazy(space: Subspace) -> Self {
        AlgIdeal {
            space,
            left_gens: OnceLock::new(),
        }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn into_space(self) -> Subspace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.space.contains_slice(v)
    }

    /// `I + J`
    pub fn sum(&self, other: &AlgIdeal) -> Result<AlgIdeal> {
        let space = self.space.sum(&other.space)?;
        match (self.left_gens.get(), other.left_gens.get()) {
            (Some(a), Some(b)) => {
                let mut gens = a.clone();
                gens.extend(b.iter().cloned());
                Ok(AlgIdeal::with_gens(space, gens))
            }
            _ => Ok(AlgIdeal::lazy(space)),
        }
    }
}

impl<'g> GroupAlgebra<'g> {
    pub fn new(g: &'g FiniteGroup) -> Self {
        GroupAlgebra { g }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.g
    }

    pub fn p(&self) -> u8 {
        self.g.p()
    }

    pub fn dim(&self) -> usize {
        self.g.order()
    }

    pub fn basis_element(&self, x: usize) -> FpVector {
        FpVector::unit(self.p(), self.dim(), x)
    }

    pub fn one(&self) -> FpVector {
        self.basis_element(0)
    }

    fn check(&self, x: &FpVector) -> Result<()> {
        if x.len() != self.dim() || x.p() != self.p() {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn multiply(&self, x: &FpVector, y: &FpVector) -> Result<FpVector> {
        self.check(x)?;
        self.check(y)?;
        Ok(FpVector::from_residues(
            self.p(),
            self.mul_raw(x.coords(), y.coords()),
        ))
    }

    pub fn augmentation(&self, x: &FpVector) -> u8 {
        (x.coords().iter().map(|&c| c as u32).sum::<u32>() % self.p() as u32) as u8
    }

    pub fn pow(&self, x: &FpVector, k: u64) -> Result<FpVector> {
        self.check(x)?;
        Ok(FpVector::from_residues(
            self.p(),
            self.pow_raw(x.coords(), k),
        ))
    }

    pub(crate) fn mul_raw(&self, x: &[u8], y: &[u8]) -> Vec<u8> {
        let p = self.p() as u32;
        let n = self.dim();
        let mut acc = vec![0u32; n];
        let ys: Vec<(usize, u32)> = y
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(h, &c)| (h, c as u32))
            .collect();
        for (g, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(h, b) in &ys {
                acc[self.g.mul(g, h)] += a as u32 * b;
            }
        }
        acc.into_iter().map(|c| (c % p) as u8).collect()
    }

    pub(crate) fn pow_raw(&self, x: &[u8], mut k: u64) -> Vec<u8> {
        let mut result = self.one().into_coords();
        let mut base = x.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul_raw(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_raw(&base, &base);
            }
        }
        result
    }

    /// `x g`
    pub(crate) fn right_translate(&self, x: &[u8], g: usize) -> Vec<u8> {
        let mut out = vec![0u8; x.len()];
        for (h, &c) in x.iter().enumerate() {
            out[self.g.mul(h, g)] = c;
        }
        out
    }

    /// `g x`
    pub(crate) fn left_translate(&self, g: usize, x: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; x.len()];
        for (h, &c) in x.iter().enumerate() {
            out[self.g.mul(g, h)] = c;
        }
        out
    }

    /// `x (g - 1)`
    fn times_g_minus_one(&self, x: &[u8], g: usize) -> Vec<u8> {
        let p = self.p();
        let mut out = self.right_translate(x, g);
        for (o, &c) in out.iter_mut().zip(x) {
            *o = (*o + p - c) % p;
        }
        out
    }

    /// `g - h` as a coefficient vector.
    pub(crate) fn diff(&self, g: usize, h: usize) -> Vec<u8> {
        let mut v = vec![0u8; self.dim()];
        if g != h {
            v[g] = 1;
            v[h] = self.p() - 1;
        }
        v
    }

    pub fn zero_ideal(&self) -> AlgIdeal {
        AlgIdeal::with_gens(Subspace::zero(self.p(), self.dim()), Vec::new())
    }

    pub fn whole_algebra(&self) -> AlgIdeal {
        AlgIdeal::with_gens(
            Subspace::full(self.p(), self.dim()),
            vec![self.one().into_coords()],
        )
    }

    /// `I(G) = span{g - 1}`
    pub fn augmentation_ideal(&self) -> AlgIdeal {
        self.relative_augmentation_ideal(&self.g.whole())
            .expect("the whole group is normal")
    }

    /// `I(N)G = span{g - r(gN)}` with `r` the least coset element; this is the
    /// kernel of `kG -> k(G/N)`, of dimension `|G| - |G/N|`.
    pub fn relative_augmentation_ideal(&self, n: &Subgroup) -> Result<AlgIdeal> {
        self.g.require_normal(n)?;
        let mut rows = Vec::with_capacity(self.dim());
        let mut rep = vec![usize::MAX; self.dim()];
        for g in 0..self.dim() {
            if rep[g] != usize::MAX {
                continue;
            }
            for &x in n.elements() {
                let y = self.g.mul(g, x);
                rep[y] = g;
                if y != g {
                    rows.push(self.diff(y, g));
                }
            }
        }
        // each row has a distinct leading entry at the larger coset member,
        // so the span has exactly the expected dimension
        let space = fp_linalg::rref(self.p(), self.dim(), &rows)?;
        let gens = n.generators().iter().map(|&x| self.diff(x, 0)).collect();
        Ok(AlgIdeal::with_gens(space, gens))
    }

    /// Wraps a subspace after checking closure under multiplication by the
    /// group generators on both sides.
    pub fn ideal_from_space(&self, space: Subspace) -> Result<AlgIdeal> {
        if space.p() != self.p() || space.ambient_dim() != self.dim() {
            return Err(AlgebraError::AlgebraMismatch);
        }
        for b in space.basis() {
            for &x in self.g.generators() {
                if !space.contains_slice(&self.right_translate(b, x))
                    || !space.contains_slice(&self.left_translate(x, b))
                {
                    return Err(AlgebraError::NotAnIdeal);
                }
            }
        }
        Ok(AlgIdeal::lazy(space))
    }

    /// Greedy left-ideal generators of `i`, from its echelon basis.
    pub fn left_generators<'a>(&self, i: &'a AlgIdeal) -> &'a [Vec<u8>] {
        i.left_gens.get_or_init(|| {
            let mut span = EchelonBuilder::new(self.p(), self.dim());
            let mut gens = Vec::new();
            for b in i.space.basis() {
                if span.dim() == i.dim() {
                    break;
                }
                if span.contains(b) {
                    continue;
                }
                gens.push(b.clone());
                for g in 0..self.dim() {
                    span.insert(self.left_translate(g, b));
                }
            }
            gens
        })
    }

    /// `I J`
    pub fn ideal_product(&self, i: &AlgIdeal, j: &AlgIdeal) -> AlgIdeal {
        let gens = self.left_generators(j);
        let mut span = EchelonBuilder::new(self.p(), self.dim());
        for b in i.space.basis() {
            for c in gens {
                span.insert(self.mul_raw(b, c));
            }
        }
        AlgIdeal::lazy(span.finish())
    }

    /// `I^n`, with `I^0` the whole algebra.
    pub fn ideal_power(&self, i: &AlgIdeal, n: usize) -> AlgIdeal {
        let mut acc = self.whole_algebra();
        for _ in 0..n {
            acc = self.ideal_product(&acc, i);
        }
        acc
    }

    /// `I(G)^0, I(G)^1, ...` up to and including the first zero power.
    pub fn radical_powers(&self) -> RadicalPowers {
        let p = self.p();
        let n = self.dim();
        let mut powers = vec![Subspace::full(p, n)];
        let gens = self.g.generators();
        while powers.last().unwrap().dim() > 0 {
            let prev = powers.last().unwrap();
            let mut span = EchelonBuilder::new(p, n);
            for b in prev.basis() {
                for &x in gens {
                    span.insert(self.times_g_minus_one(b, x));
                }
            }
            powers.push(span.finish());
        }
        RadicalPowers { powers }
    }

    /// `D_n(G) = {g : g - 1 ∈ I^n}`, checked against the product formula.
    pub fn jennings_by_ideal(&self, rad: &RadicalPowers) -> Result<Vec<Subgroup>> {
        let formula = self.g.jennings_series();
        let mut out = Vec::new();
        for n in 1.. {
            let elems: Vec<usize> = (0..self.dim())
                .filter(|&g| rad.power(n).contains_slice(&self.diff(g, 0)))
                .collect();
            let d = self.g.subgroup_from_elements(elems);
            let expected = FiniteGroup::jennings_term(&formula, n);
            if d != *expected {
                return Err(AlgebraError::JenningsMismatch {
                    n,
                    by_ideal: d.order(),
                    by_formula: expected.order(),
                });
            }
            let done = d.is_trivial();
            out.push(d);
            if done {
                break;
            }
        }
        Ok(out)
    }

    /// `(1 + I(N)G + I^n) ∩ G`, checked against `D_n(G) N`.
    pub fn jennings_with_normal(
        &self,
        rad: &RadicalPowers,
        n_sub: &Subgroup,
        n: usize,
    ) -> Result<Subgroup> {
        let rel = self.relative_augmentation_ideal(n_sub)?;
        let sum = rel.space.sum(rad.power(n))?;
        let elems: Vec<usize> = (0..self.dim())
            .filter(|&g| sum.contains_slice(&self.diff(g, 0)))
            .collect();
        let found = self.g.subgroup_from_elements(elems);
        let series = self.g.jennings_series();
        let expected = self.g.join(FiniteGroup::jennings_term(&series, n), n_sub);
        if found != expected {
            return Err(AlgebraError::RelativeJenningsMismatch {
                n,
                found: found.order(),
                expected: expected.order(),
            });
        }
        Ok(found)
    }

    /// `[kG, kG] = span{x - s^-1 x s}` over elements `x` and generators `s`.
    pub fn commutator_subspace(&self) -> Subspace {
        let mut span = EchelonBuilder::new(self.p(), self.dim());
        for x in 0..self.dim() {
            for &s in self.g.generators() {
                let y = self.g.conj(x, s);
                if y != x {
                    span.insert(self.diff(x, y));
                }
            }
        }
        span.finish()
    }

    /// `Z(kG)`, the kernel of `v -> (v s - s v)_s` over the generators `s`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let gens = self.g.generators();
        let mut m = FpMatrix::zeros(self.p(), n, n * gens.len());
        let p = self.p();
        for g in 0..n {
            for (k, &s) in gens.iter().enumerate() {
                let a = self.g.mul(g, s);
                let b = self.g.mul(s, g);
                if a != b {
                    m.set(g, k * n + a, 1);
                    m.set(g, k * n + b, p - 1);
                }
            }
        }
        fp_linalg::kernel(&m)
    }

    /// `kS` for a subgroup `S`.
    pub fn subgroup_span(&self, s: &Subgroup) -> Subspace {
        let rows: Vec<Vec<u8>> = s
            .elements()
            .iter()
            .map(|&x| self.basis_element(x).into_coords())
            .collect();
        fp_linalg::rref(self.p(), self.dim(), &rows).expect("rows have ambient length")
    }

    /// `I(M)S` computed inside `kS ⊆ kG`, for `M` normal in `S`: spanned by
    /// `s - r(sM)`.
    pub fn subgroup_relative_ideal(&self, s: &Subgroup, m: &Subgroup) -> Result<Subspace> {
        if !s.contains_subgroup(m) {
            return Err(GroupError::NotContained.into());
        }
        if !self.g.normalizes(s, m) {
            return Err(GroupError::NotNormal.into());
        }
        let mut done = vec![false; self.dim()];
        let mut rows = Vec::new();
        for &x in s.elements() {
            if done[x] {
                continue;
            }
            for &y in m.elements() {
                let z = self.g.mul(x, y);
                done[z] = true;
                if z != x {
                    rows.push(self.diff(z, x));
                }
            }
        }
        Ok(fp_linalg::rref(self.p(), self.dim(), &rows)?)
    }

    /// `I(S)`, the augmentation ideal of `kS` inside `kG`.
    pub fn subgroup_augmentation(&self, s: &Subgroup) -> Subspace {
        self.subgroup_relative_ideal(s, s)
            .expect("S is normal in itself")
    }

    /// The projection `kG -> k(G/N)` as a `|G| x |G/N|` matrix.
    pub fn natural_projection(&self, n: &Subgroup) -> Result<(QuotientGroup, FpMatrix)> {
        let q = self.g.quotient(n)?;
        let mut m = FpMatrix::zeros(self.p(), self.dim(), q.group.order());
        for g in 0..self.dim() {
            m.set(g, q.projection.apply(g), 1);
        }
        Ok((q, m))
    }

    /// `x -> x^(p^t)` on a commutative group algebra, as the matrix `g -> g^(p^t)`.
    pub fn power_map_commutative(&self, t: u32) -> Result<FpMatrix> {
        if !self.g.is_abelian() {
            return Err(GroupError::NotAbelian.into());
        }
        let n = self.dim();
        let mut m = FpMatrix::zeros(self.p(), n, n);
        for g in 0..n {
            m.set(g, self.g.ppow(g, t), 1);
        }
        Ok(m)
    }
}

/// The powers of the augmentation ideal, `I^0 = kG` down to `I^L = 0`.
#[derive(Clone, Debug)]
pub struct RadicalPowers {
    powers: Vec<Subspace>,
}

impl RadicalPowers {
    /// `I^n`; zero beyond the Loewy length.
    pub fn power(&self, n: usize) -> &Subspace {
        &self.powers[n.min(self.powers.len() - 1)]
    }

    /// `dim I^n` for `n = 0..=L`.
    pub fn dims(&self) -> Vec<usize> {
        self.powers.iter().map(|s| s.dim()).collect()
    }

    /// Smallest `L` with `I^L = 0`.
    pub fn loewy_length(&self) -> usize {
        self.powers.len() - 1
    }
}

/// Coefficients of `∏_n (1 + x^n + ... + x^((p-1)n))^(rank D_n/D_(n+1))`.
pub fn jennings_poincare_coefficients(g: &FiniteGroup) -> Vec<usize> {
    let p = g.p() as usize;
    let d = g.jennings_series();
    let mut poly = vec![1usize];
    for n in 1..d.len() {
        let rank = crate::group::log_p(d[n - 1].order() / d[n].order(), g.p());
        for _ in 0..rank {
            let mut next = vec![0usize; poly.len() + (p - 1) * n];
            for (i, &c) in poly.iter().enumerate() {
                for k in 0..p {
                    next[i + k * n] += c;
                }
            }
            poly = next;
        }
    }
    poly
}
