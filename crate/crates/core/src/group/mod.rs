//! Finite p-groups held as explicit multiplication tables.
//!
//! Elements are indices `0..order` with `0` the identity. Subgroups are
//! sorted index sets together with a generating set. Nothing here is
//! clever: every operation is a closure computation or a scan over the
//! table, which is exact and fast enough up to a few hundred elements.

mod presentation;
mod quotient;
mod series;

pub use presentation::{PcPresentation, PcRelation, Word};
pub use quotient::{ElemAbSection, QuotientGroup};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("unsupported prime {0}; expected one of 2, 3, 5, 7")]
    UnsupportedPrime(u64),
    #[error("group order {order} exceeds the cap {cap} for p = {p}")]
    OrderCap { p: u8, order: u64, cap: usize },
    #[error("order {order} is not a power of {p}")]
    NotPrimePower { p: u8, order: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("element {element} has order {order}, which is not a power of {p}")]
    NotPGroup { p: u8, element: usize, order: usize },
    #[error("presentation syntax error on line {line}: {msg}")]
    PresentationSyntax { line: usize, msg: String },
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group or section is not abelian")]
    NotAbelian,
    #[error("section is not elementary abelian")]
    NotElementaryAbelian,
    #[error("subgroup is not contained in the enclosing subgroup")]
    NotContained,
    #[error("groups are defined over different primes ({0} and {1})")]
    PrimeMismatch(u8, u8),
}

pub type Result<T> = std::result::Result<T, GroupError>;

/// Largest group order handled for each supported prime.
pub fn order_cap(p: u8) -> usize {
    match p {
        2 => 128,
        3 => 243,
        5 => 125,
        7 => 49,
        _ => 0,
    }
}

pub(crate) fn check_prime(p: u64) -> Result<u8> {
    crate::fp_linalg::check_prime(p).map_err(|_| GroupError::UnsupportedPrime(p))
}

fn check_cap(p: u8, order: u64) -> Result<()> {
    let cap = order_cap(p);
    if order > cap as u64 {
        return Err(GroupError::OrderCap { p, order, cap });
    }
    Ok(())
}

/// Where a group table came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Presentation(PcPresentation),
    MultiplicationTable,
    DirectProduct,
    Quotient,
    Subgroup,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    p: u8,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    /// `ppow[g] = g^p`
    ppow: Vec<u16>,
    gens: Vec<usize>,
    provenance: Provenance,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates and wraps a multiplication table (`table[a][b] = a*b`).
    pub fn from_table(p: u64, table: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_table_with(p, table, Provenance::MultiplicationTable)
    }

    pub(crate) fn from_table_with(
        p: u64,
        table: Vec<Vec<usize>>,
        provenance: Provenance,
    ) -> Result<Self> {
        let p = check_prime(p)?;
        let n = table.len();
        check_cap(p, n as u64)?;
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if !is_power_of(n, p) {
            return Err(GroupError::NotPrimePower { p, order: n });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || seen[x] {
                    return Err(GroupError::InvalidTable(format!(
                        "row {a} is not a permutation of 0..{n}"
                    )));
                }
                seen[x] = true;
                mul.push(x as u16);
            }
        }
        for x in 0..n {
            if mul[x] as usize != x || mul[x * n] as usize != x {
                return Err(GroupError::InvalidTable(
                    "element 0 is not the identity".into(),
                ));
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for a in 0..n {
                let x = mul[a * n + b] as usize;
                if seen[x] {
                    return Err(GroupError::InvalidTable(format!(
                        "column {b} repeats an entry"
                    )));
                }
                seen[x] = true;
            }
        }
        let g = Self::assemble(p, n, mul, provenance);
        g.check_associative()?;
        g.check_p_group()?;
        Ok(g)
    }

    /// Builds from a table already known to be a latin square with identity 0.
    pub(crate) fn assemble(p: u8, n: usize, mul: Vec<u16>, provenance: Provenance) -> Self {
        let mut inv = vec![0u16; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u16;
                    break;
                }
            }
        }
        let mut ppow = vec![0u16; n];
        for (a, slot) in ppow.iter_mut().enumerate() {
            let mut x = 0usize;
            for _ in 0..p {
                x = mul[x * n + a] as usize;
            }
            *slot = x as u16;
        }
        let mut g = FiniteGroup {
            p,
            order: n,
            mul,
            inv,
            ppow,
            gens: Vec::new(),
            provenance,
        };
        g.gens = g.whole().gens.clone();
        g
    }

    /// Exhaustive over all triples; at the order caps this is at most 243^3 lookups.
    pub fn check_associative(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NonAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_p_group(&self) -> Result<()> {
        for g in 0..self.order {
            let o = self.element_order(g);
            if !is_power_of(o, self.p) {
                return Err(GroupError::NotPGroup {
                    p: self.p,
                    element: g,
                    order: o,
                });
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Deterministic generating set of the whole group.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut x = 0;
        for _ in 0..k.unsigned_abs() {
            x = self.mul(x, base);
        }
        x
    }

    /// `a^(p^t)`
    pub fn ppow(&self, a: usize, t: u32) -> usize {
        let mut x = a;
        for _ in 0..t {
            x = self.ppow[x] as usize;
        }
        x
    }

    /// `[a, b] = a^-1 b^-1 a b`
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// `b^-1 a b`
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order)
            .map(|g| self.element_order(g))
            .max()
            .unwrap_or(1)
    }

    /// `log_p` of the exponent.
    pub fn exponent_log(&self) -> u32 {
        log_p(self.exponent(), self.p)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(self.order, vec![0], Vec::new())
    }

    pub fn whole(&self) -> Subgroup {
        let elems: Vec<usize> = (0..self.order).collect();
        let mut s = Subgroup::from_sorted(self.order, elems, Vec::new());
        s.gens = self.greedy_generators(&s);
        s
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut b = SubgroupBuilder::new(self);
        for &g in gens {
            b.add(g);
        }
        b.finish()
    }

    /// Wraps an element set known to be a subgroup; generators are chosen greedily.
    pub fn subgroup_from_elements(&self, mut elems: Vec<usize>) -> Subgroup {
        elems.sort_unstable();
        elems.dedup();
        let mut s = Subgroup::from_sorted(self.order, elems, Vec::new());
        s.gens = self.greedy_generators(&s);
        s
    }

    /// Smallest-index-first generating set of `s`.
    fn greedy_generators(&self, s: &Subgroup) -> Vec<usize> {
        let mut b = SubgroupBuilder::new(self);
        for &x in &s.elems {
            if b.len() == s.order() {
                break;
            }
            b.add(x);
        }
        b.gens
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if a.contains_subgroup(b) {
            return a.clone();
        }
        if b.contains_subgroup(a) {
            return b.clone();
        }
        let mut bl = SubgroupBuilder::from_subgroup(self, a);
        for &g in &b.gens {
            bl.add(g);
        }
        bl.finish()
    }

    pub fn join_all<'a>(&self, parts: impl IntoIterator<Item = &'a Subgroup>) -> Subgroup {
        let mut bl = SubgroupBuilder::new(self);
        for s in parts {
            for &g in &s.gens {
                bl.add(g);
            }
        }
        bl.finish()
    }

    pub fn meet(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let elems: Vec<usize> = a.elems.iter().copied().filter(|&x| b.contains(x)).collect();
        self.subgroup_from_elements(elems)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.normalizes(&self.whole(), h)
    }

    /// Whether every element of `by` normalises `h`.
    pub fn normalizes(&self, by: &Subgroup, h: &Subgroup) -> bool {
        by.gens
            .iter()
            .all(|&g| h.gens.iter().all(|&x| h.contains(self.conj(x, g))))
    }

    pub fn require_normal(&self, h: &Subgroup) -> Result<()> {
        if self.is_normal(h) {
            Ok(())
        } else {
            Err(GroupError::NotNormal)
        }
    }

    pub fn normal_closure(&self, s: &Subgroup) -> Subgroup {
        let mut bl = SubgroupBuilder::from_subgroup(self, s);
        loop {
            let current = bl.gens.clone();
            let mut grew = false;
            for &x in &current {
                for &g in &self.gens {
                    grew |= bl.add(self.conj(x, g));
                }
            }
            if !grew {
                return bl.finish();
            }
        }
    }

    /// `[A, B]`, generated by all commutators `[a, b]`.
    pub fn commutator_of(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut bl = SubgroupBuilder::new(self);
        for &x in &a.elems {
            for &y in &b.elems {
                bl.add(self.comm(x, y));
            }
        }
        bl.finish()
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let w = self.whole();
        self.commutator_of(&w, &w)
    }

    /// `γ_1 = G ⊇ γ_2 = G' ⊇ ...`, ending with the trivial subgroup.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let w = self.whole();
        let mut out = vec![w.clone()];
        loop {
            let next = self.commutator_of(out.last().unwrap(), &w);
            if next == *out.last().unwrap() {
                break;
            }
            let done = next.order() == 1;
            out.push(next);
            if done {
                break;
            }
        }
        out
    }

    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        let elems: Vec<usize> = (0..self.order)
            .filter(|&x| s.gens.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
            .collect();
        self.subgroup_from_elements(elems)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    /// `Ω_t(H) = ⟨h ∈ H : h^(p^t) = 1⟩`
    pub fn omega_of(&self, h: &Subgroup, t: u32) -> Subgroup {
        let gens: Vec<usize> = h
            .elems
            .iter()
            .copied()
            .filter(|&x| self.ppow(x, t) == 0)
            .collect();
        self.generate(&gens)
    }

    /// `℧_t(H) = ⟨h^(p^t) : h ∈ H⟩`
    pub fn agemo_of(&self, h: &Subgroup, t: u32) -> Subgroup {
        let gens: Vec<usize> = h.elems.iter().map(|&x| self.ppow(x, t)).collect();
        self.generate(&gens)
    }

    pub fn omega(&self, t: u32) -> Subgroup {
        self.omega_of(&self.whole(), t)
    }

    pub fn agemo(&self, t: u32) -> Subgroup {
        self.agemo_of(&self.whole(), t)
    }

    /// `Ω_t(G:N) = ⟨g ∈ G : g^(p^t) ∈ N⟩` for normal `N`.
    pub fn omega_relative(&self, n: &Subgroup, t: u32) -> Result<Subgroup> {
        self.require_normal(n)?;
        let gens: Vec<usize> = (0..self.order)
            .filter(|&x| n.contains(self.ppow(x, t)))
            .collect();
        Ok(self.generate(&gens))
    }

    /// `Φ(G) = ℧_1(G) G'`
    pub fn frattini(&self) -> Subgroup {
        self.join(&self.agemo(1), &self.derived_subgroup())
    }

    /// Deterministic Burnside basis: smallest index outside `⟨Φ(G), chosen⟩` first.
    pub fn burnside_basis(&self) -> Vec<usize> {
        self.burnside_basis_extending(&[])
            .expect("the empty prefix is independent modulo the Frattini subgroup")
    }

    /// Extends `prefix` to a Burnside basis. Fails if `prefix` is dependent
    /// modulo `Φ(G)`.
    pub fn burnside_basis_extending(&self, prefix: &[usize]) -> Option<Vec<usize>> {
        let phi = self.frattini();
        let mut bl = SubgroupBuilder::from_subgroup(self, &phi);
        let mut basis = Vec::new();
        for &x in prefix {
            if !bl.add(x) {
                return None;
            }
            basis.push(x);
        }
        for x in 0..self.order {
            if bl.len() == self.order {
                break;
            }
            if bl.add(x) {
                basis.push(x);
            }
        }
        Some(basis)
    }

    pub fn min_generators(&self) -> usize {
        log_p(self.order / self.frattini().order(), self.p) as usize
    }

    /// Isomorphism type of an abelian subgroup.
    pub fn abelian_type_of(&self, h: &Subgroup) -> Result<AbelianType> {
        if !h
            .gens
            .iter()
            .all(|&a| h.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
        {
            return Err(GroupError::NotAbelian);
        }
        let triv = self.trivial();
        self.section_type(h, &triv)
    }

    pub fn abelian_type(&self) -> Result<AbelianType> {
        self.abelian_type_of(&self.whole())
    }

    /// Isomorphism type of the abelian section `X/Y`, from the sizes of
    /// `Ω_i(X/Y) = {x : x^(p^i) ∈ Y}/Y`.
    pub fn section_type(&self, x: &Subgroup, y: &Subgroup) -> Result<AbelianType> {
        if !x.contains_subgroup(y) {
            return Err(GroupError::NotContained);
        }
        if !self.normalizes(x, y) {
            return Err(GroupError::NotNormal);
        }
        for &a in &x.gens {
            for &b in &x.gens {
                if !y.contains(self.comm(a, b)) {
                    return Err(GroupError::NotAbelian);
                }
            }
        }
        let index = x.order() / y.order();
        let mut ranks = Vec::new();
        let mut prev = 1usize;
        let mut i = 1u32;
        while prev < index {
            let cnt = x
                .elems
                .iter()
                .filter(|&&e| y.contains(self.ppow(e, i)))
                .count()
                / y.order();
            ranks.push(log_p(cnt / prev, self.p) as usize);
            prev = cnt;
            i += 1;
        }
        Ok(AbelianType::from_omega_ranks(self.p, &ranks))
    }

    /// All normal subgroups: normal closures of cyclic subgroups, closed
    /// under joins. Sorted by order, then elements.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let mut found: Vec<Subgroup> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for x in 0..self.order {
            let c = self.normal_closure(&self.generate(&[x]));
            if seen.insert(c.elems.clone()) {
                found.push(c);
            }
        }
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let s = self.join(&found[i], &found[j]);
                if seen.insert(s.elems.clone()) {
                    found.push(s);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.elems.cmp(&b.elems))
        });
        found
    }

    /// Direct product with element `(a, b)` at index `a * |B| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<(FiniteGroup, GroupHom, GroupHom)> {
        if self.p != other.p {
            return Err(GroupError::PrimeMismatch(self.p, other.p));
        }
        let (na, nb) = (self.order, other.order);
        let n = na * nb;
        check_cap(self.p, n as u64)?;
        let mut mul = vec![0u16; n * n];
        for a1 in 0..na {
            for b1 in 0..nb {
                let x = a1 * nb + b1;
                for a2 in 0..na {
                    let ap = self.mul(a1, a2) * nb;
                    for b2 in 0..nb {
                        mul[x * n + a2 * nb + b2] = (ap + other.mul(b1, b2)) as u16;
                    }
                }
            }
        }
        let g = FiniteGroup::assemble(self.p, n, mul, Provenance::DirectProduct);
        let left = GroupHom::new((0..na).map(|a| a * nb).collect());
        let right = GroupHom::new((0..nb).collect());
        Ok((g, left, right))
    }

    /// Relabels a subgroup as a group in its own right. Element `i` of the
    /// result is the `i`-th smallest element of `h`; the returned hom is the
    /// inclusion.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, GroupHom) {
        let m = h.order();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &e) in h.elems.iter().enumerate() {
            pos[e] = i;
        }
        let mut mul = vec![0u16; m * m];
        for (i, &a) in h.elems.iter().enumerate() {
            for (j, &b) in h.elems.iter().enumerate() {
                mul[i * m + j] = pos[self.mul(a, b)] as u16;
            }
        }
        let g = FiniteGroup::assemble(self.p, m, mul, Provenance::Subgroup);
        (g, GroupHom::new(h.elems.clone()))
    }

    /// Maps a subgroup through an element map into `target`.
    pub fn image_subgroup(&self, hom: &GroupHom, target: &FiniteGroup, h: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = h.gens.iter().map(|&g| hom.apply(g)).collect();
        target.generate(&gens)
    }

    /// Preimage of a subgroup of `target` under `hom`.
    pub fn preimage_subgroup(&self, hom: &GroupHom, h: &Subgroup) -> Subgroup {
        let elems: Vec<usize> = (0..self.order)
            .filter(|&g| h.contains(hom.apply(g)))
            .collect();
        self.subgroup_from_elements(elems)
    }
}

pub(crate) fn is_power_of(mut n: usize, p: u8) -> bool {
    let p = p as usize;
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// `log_p(n)` for an exact power `n` of `p`.
pub fn log_p(mut n: usize, p: u8) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p as usize;
        k += 1;
    }
    k
}

/// Incremental subgroup closure.
pub(crate) struct SubgroupBuilder<'g> {
    g: &'g FiniteGroup,
    mask: Vec<bool>,
    elems: Vec<usize>,
    gens: Vec<usize>,
}

impl<'g> SubgroupBuilder<'g> {
    pub(crate) fn new(g: &'g FiniteGroup) -> Self {
        let mut mask = vec![false; g.order];
        mask[0] = true;
        SubgroupBuilder {
            g,
            mask,
            elems: vec![0],
            gens: Vec::new(),
        }
    }

    pub(crate) fn from_subgroup(g: &'g FiniteGroup, s: &Subgroup) -> Self {
        SubgroupBuilder {
            g,
            mask: s.mask.clone(),
            elems: s.elems.clone(),
            gens: s.gens.clone(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.elems.len()
    }

    /// Adds a generator; returns true if the subgroup grew.
    pub(crate) fn add(&mut self, x: usize) -> bool {
        if self.mask[x] {
            return false;
        }
        self.gens.push(x);
        let g = self.g;
        let old = self.elems.len();
        // old elements were closed under the old generators
        for i in 0..old {
            let y = g.mul(self.elems[i], x);
            if !self.mask[y] {
                self.mask[y] = true;
                self.elems.push(y);
            }
        }
        let mut i = old;
        while i < self.elems.len() {
            let e = self.elems[i];
            for k in 0..self.gens.len() {
                let y = g.mul(e, self.gens[k]);
                if !self.mask[y] {
                    self.mask[y] = true;
                    self.elems.push(y);
                }
            }
            i += 1;
        }
        true
    }

    pub(crate) fn finish(mut self) -> Subgroup {
        self.elems.sort_unstable();
        Subgroup {
            elems: self.elems,
            mask: self.mask,
            gens: self.gens,
        }
    }
}

/// A subgroup of some [`FiniteGroup`]; equality and hashing use the element set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elems: Vec<usize>,
    mask: Vec<bool>,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elems.hash(state)
    }
}

impl Subgroup {
    fn from_sorted(parent_order: usize, elems: Vec<usize>, gens: Vec<usize>) -> Self {
        let mut mask = vec![false; parent_order];
        for &e in &elems {
            mask[e] = true;
        }
        Subgroup { elems, mask, gens }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.order() <= self.order() && other.gens.iter().all(|&g| self.mask[g])
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }
}

/// Homomorphism given by its image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    images: Vec<usize>,
}

impl GroupHom {
    pub fn new(images: Vec<usize>) -> Self {
        GroupHom { images }
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Exhaustive homomorphism check.
    pub fn is_hom(&self, domain: &FiniteGroup, codomain: &FiniteGroup) -> bool {
        self.images.len() == domain.order()
            && self.images.iter().all(|&x| x < codomain.order())
            && (0..domain.order()).all(|a| {
                (0..domain.order()).all(|b| {
                    self.images[domain.mul(a, b)] == codomain.mul(self.images[a], self.images[b])
                })
            })
    }

    pub fn kernel(&self, domain: &FiniteGroup) -> Subgroup {
        let elems = (0..domain.order())
            .filter(|&g| self.images[g] == 0)
            .collect();
        domain.subgroup_from_elements(elems)
    }
}

/// Isomorphism type of a finite abelian p-group: cyclic factor orders,
/// nonincreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianType(Vec<usize>);

impl AbelianType {
    pub fn new(mut orders: Vec<usize>) -> Self {
        orders.retain(|&o| o > 1);
        orders.sort_unstable_by(|a, b| b.cmp(a));
        AbelianType(orders)
    }

    /// From `r_i = log_p |Ω_i / Ω_(i-1)|`, the number of factors of order at least `p^i`.
    pub fn from_omega_ranks(p: u8, ranks: &[usize]) -> Self {
        let mut orders = Vec::new();
        for (i, &r) in ranks.iter().enumerate() {
            let next = ranks.get(i + 1).copied().unwrap_or(0);
            for _ in next..r {
                orders.push((p as usize).pow(i as u32 + 1));
            }
        }
        AbelianType::new(orders)
    }

    pub fn orders(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Exponents `e_i` with factor orders `p^(e_i)`.
    pub fn exponents(&self, p: u8) -> Vec<u32> {
        self.0.iter().map(|&o| log_p(o, p)).collect()
    }
}

impl std::fmt::Display for AbelianType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|o| format!("C{o}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}
