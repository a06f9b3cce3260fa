//! Exhaustive search for an explicit algebra isomorphism `kG -> kH` for tiny groups.
//!
//! A unital algebra map out of `kG` is fixed by the images of the generators
//! of a power-commutator presentation of `G`, and any choice of units of
//! `kH` satisfying the presentation's relations extends to one. Candidates
//! are units `u ∈ 1 + I(H)` listed by their coefficient vectors read as
//! little-endian base-p integers; the first tuple in lexicographic order
//! giving a bijection is returned.

use rayon::prelude::*;
use serde::Serialize;

use super::{AlgebraError, GroupAlgebra, Result};
use crate::fp_linalg::{self, FpMatrix, Subspace};
use crate::group::{FiniteGroup, PcPresentation, PcRelation, Provenance, Word};

/// Largest algebra dimension searched.
pub const ISO_SEARCH_MAX_ORDER: usize = 16;
/// Largest number of presentation generators searched.
pub const ISO_SEARCH_MAX_GENS: usize = 2;

/// An algebra map given on the group basis: row `g` holds `φ(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraIso {
    matrix: FpMatrix,
}

impl AlgebraIso {
    pub fn from_matrix(matrix: FpMatrix) -> Self {
        AlgebraIso { matrix }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        AlgebraIso {
            matrix: FpMatrix::identity(p, n),
        }
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    /// `φ(S)` for a subspace of the source algebra.
    pub fn image(&self, s: &Subspace) -> Result<Subspace> {
        Ok(s.image_under(&self.matrix)?)
    }

    /// Checks unitality, multiplicativity on all basis pairs and bijectivity.
    pub fn verify(&self, a: &GroupAlgebra<'_>, b: &GroupAlgebra<'_>) -> bool {
        let n = a.dim();
        if self.matrix.nrows() != n || self.matrix.ncols() != b.dim() || n != b.dim() {
            return false;
        }
        if self.matrix.row(0) != b.one().coords() {
            return false;
        }
        let g = a.group();
        for x in 0..n {
            for y in 0..n {
                if b.mul_raw(self.matrix.row(x), self.matrix.row(y)) != self.matrix.row(g.mul(x, y))
                {
                    return false;
                }
            }
        }
        self.matrix.rank() == n
    }

    /// `φ ⊗ id` on `k(G × A) = kG ⊗ kA`, for the product indexing `g |A| + a`.
    pub fn tensor_identity(&self, m: usize) -> AlgebraIso {
        let n = self.matrix.nrows();
        let p = self.matrix.p();
        let mut out = FpMatrix::zeros(p, n * m, self.matrix.ncols() * m);
        for g in 0..n {
            for (h, &c) in self.matrix.row(g).iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for a in 0..m {
                    out.set(g * m + a, h * m + a, c);
                }
            }
        }
        AlgebraIso { matrix: out }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum IsoSearchOutcome {
    Found {
        /// images of the presentation generators, as coefficient vectors
        generator_images: Vec<Vec<u8>>,
        #[serde(skip)]
        iso: AlgebraIso,
    },
    Exhausted {
        /// number of generator-image tuples passing the per-generator filters
        candidate_tuples: u64,
    },
}

struct Setup<'a> {
    b: GroupAlgebra<'a>,
    pc: PcPresentation,
    /// smallest `p^k >= dim`, so that `u^(p^k) = 1` for every unit in `1 + I`
    unit_exp: u64,
    i2: Subspace,
    burnside: bool,
}

impl Setup<'_> {
    fn inverse(&self, u: &[u8]) -> Vec<u8> {
        self.b.pow_raw(u, self.unit_exp - 1)
    }

    fn eval(&self, w: &Word, images: &[Vec<u8>]) -> Vec<u8> {
        let mut acc = self.b.one().into_coords();
        for &(k, e) in &w.0 {
            let base = if e < 0 {
                self.inverse(&images[k])
            } else {
                images[k].clone()
            };
            acc = self
                .b
                .mul_raw(&acc, &self.b.pow_raw(&base, e.unsigned_abs()));
        }
        acc
    }

    fn independent(&self, units: &[&[u8]]) -> bool {
        let p = self.b.p();
        let mut span = fp_linalg::EchelonBuilder::from_subspace(&self.i2);
        units.iter().all(|u| {
            let mut v = u.to_vec();
            v[0] = (v[0] + p - 1) % p;
            span.insert(v)
        })
    }

    fn relations_hold(&self, images: &[Vec<u8>], only_for: usize) -> bool {
        let b = &self.b;
        for rel in self.pc.relations_full() {
            match rel {
                PcRelation::Power { i, word } if i == only_for => {
                    let m = self.pc.relative_orders()[i] as u64;
                    if b.pow_raw(&images[i], m) != self.eval(&word, images) {
                        return false;
                    }
                }
                PcRelation::Commutator { j, i, word } if i == only_for => {
                    let (x, y) = (&images[j], &images[i]);
                    let lhs = b.mul_raw(
                        &b.mul_raw(&self.inverse(x), &self.inverse(y)),
                        &b.mul_raw(x, y),
                    );
                    if lhs != self.eval(&word, images) {
                        return false;
                    }
                }
                _ => {}
            }
        }
        true
    }

    /// The algebra map `g_1^(a_1) ... g_d^(a_d) -> u_1^(a_1) ... u_d^(a_d)`.
    fn extend(&self, images: &[Vec<u8>]) -> AlgebraIso {
        let n = self.b.dim();
        let orders = self.pc.relative_orders();
        let mut rows = Vec::with_capacity(n);
        for idx in 0..n {
            let mut rest = idx;
            let mut acc = self.b.one().into_coords();
            for k in 0..orders.len() {
                let below = self.pc.generator_index(k);
                let a = rest / below;
                rest %= below;
                acc = self.b.mul_raw(&acc, &self.b.pow_raw(&images[k], a as u64));
            }
            rows.push(acc);
        }
        AlgebraIso::from_matrix(
            FpMatrix::from_rows(self.b.p(), n, &rows).expect("rows have length n"),
        )
    }
}

impl PcPresentation {
    /// All relations including trivial ones, so that omitted relations are checked too.
    fn relations_full(&self) -> Vec<PcRelation> {
        let d = self.num_gens();
        let given = self.relations();
        let mut out = Vec::new();
        for i in 0..d {
            let word = given
                .iter()
                .find_map(|r| match r {
                    PcRelation::Power { i: k, word } if *k == i => Some(word.clone()),
                    _ => None,
                })
                .unwrap_or_default();
            out.push(PcRelation::Power { i, word });
            for j in i + 1..d {
                let word = given
                    .iter()
                    .find_map(|r| match r {
                        PcRelation::Commutator { j: a, i: b, word } if *a == j && *b == i => {
                            Some(word.clone())
                        }
                        _ => None,
                    })
                    .unwrap_or_default();
                out.push(PcRelation::Commutator { j, i, word });
            }
        }
        out
    }
}

/// Searches for an augmentation-preserving isomorphism `kG -> kH`. `G` must
/// carry a power-commutator presentation with at most two generators.
pub fn iso_search(g: &FiniteGroup, h: &FiniteGroup) -> Result<IsoSearchOutcome> {
    let (mut found, candidate_tuples) = search(g, h, 1)?;
    Ok(match found.pop() {
        Some((generator_images, iso)) => IsoSearchOutcome::Found {
            generator_images,
            iso,
        },
        None => IsoSearchOutcome::Exhausted { candidate_tuples },
    })
}

/// The first `limit` isomorphisms in search order. With `G = H` these are
/// algebra automorphisms.
pub fn iso_search_all(g: &FiniteGroup, h: &FiniteGroup, limit: usize) -> Result<Vec<AlgebraIso>> {
    Ok(search(g, h, limit)?
        .0
        .into_iter()
        .map(|(_, iso)| iso)
        .collect())
}

type Witness = (Vec<Vec<u8>>, AlgebraIso);

fn search(g: &FiniteGroup, h: &FiniteGroup, limit: usize) -> Result<(Vec<Witness>, u64)> {
    let Provenance::Presentation(pc) = g.provenance() else {
        return Err(AlgebraError::SearchCap(
            "the source group needs a power-commutator presentation".into(),
        ));
    };
    if g.p() != h.p() {
        return Err(AlgebraError::SearchCap(
            "groups over different primes".into(),
        ));
    }
    if g.order() != h.order() || limit == 0 {
        return Ok((Vec::new(), 0));
    }
    if g.order() > ISO_SEARCH_MAX_ORDER {
        return Err(AlgebraError::SearchCap(format!(
            "order {} exceeds {ISO_SEARCH_MAX_ORDER}",
            g.order()
        )));
    }
    let d = pc.num_gens();
    if d > ISO_SEARCH_MAX_GENS {
        return Err(AlgebraError::SearchCap(format!(
            "{d} presentation generators exceed {ISO_SEARCH_MAX_GENS}"
        )));
    }
    let b = GroupAlgebra::new(h);
    let p = h.p() as u64;
    let n = h.order();
    let mut unit_exp = 1u64;
    while unit_exp < n as u64 {
        unit_exp *= p;
    }
    let rad = b.radical_powers();
    let setup = Setup {
        b,
        pc: pc.clone(),
        unit_exp,
        i2: rad.power(2).clone(),
        burnside: g.min_generators() == d,
    };
    let source = GroupAlgebra::new(g);

    let units: Vec<Vec<u8>> = (0..p.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let c = (k % p) as u8;
                    k /= p;
                    c
                })
                .collect::<Vec<u8>>()
        })
        .filter(|v| v.iter().map(|&c| c as u64).sum::<u64>() % p == 1)
        .collect();

    // the last generator's own relation g_d^(m_d) = 1 involves nothing else
    let last = d - 1;
    let last_order = pc.relative_orders()[last] as u64;
    let one = setup.b.one().into_coords();
    let tail: Vec<&Vec<u8>> = units
        .iter()
        .filter(|u| setup.b.pow_raw(u, last_order) == one)
        .filter(|u| !setup.burnside || setup.independent(&[u]))
        .collect();

    let found: Vec<Witness> = if d == 1 {
        tail.iter()
            .filter_map(|u| {
                let images = vec![(*u).clone()];
                let iso = setup.extend(&images);
                iso.verify(&source, &setup.b).then_some((images, iso))
            })
            .take(limit)
            .collect()
    } else {
        let m0 = pc.relative_orders()[0] as u64;
        let word0 = match setup.pc.relations_full().into_iter().next() {
            Some(PcRelation::Power { word, .. }) => word,
            _ => unreachable!("relations start with the first power relation"),
        };
        // value the first power relation demands, per candidate for the second generator
        let targets: Vec<Vec<u8>> = tail
            .iter()
            .map(|u1| setup.eval(&word0, &[one.clone(), (*u1).clone()]))
            .collect();
        let matches = |u0: &Vec<u8>| -> Vec<Witness> {
            let mut out = Vec::new();
            if setup.burnside && !setup.independent(&[u0]) {
                return out;
            }
            let pw = setup.b.pow_raw(u0, m0);
            for (k, u1) in tail.iter().enumerate() {
                if pw != targets[k] {
                    continue;
                }
                let images = vec![u0.clone(), (*u1).clone()];
                if setup.burnside && !setup.independent(&[u0, u1]) {
                    continue;
                }
                if !setup.relations_hold(&images, 0) {
                    continue;
                }
                let iso = setup.extend(&images);
                if iso.verify(&source, &setup.b) {
                    out.push((images, iso));
                    if out.len() == limit {
                        break;
                    }
                }
            }
            out
        };
        if limit == 1 {
            units
                .par_iter()
                .find_map_first(|u0| matches(u0).pop())
                .into_iter()
                .collect()
        } else {
            let per_u0: Vec<Vec<Witness>> = units.par_iter().map(matches).collect();
            per_u0.into_iter().flatten().take(limit).collect()
        }
    };
    let first = if d == 1 { 1 } else { units.len() as u64 };
    Ok((found, first * tail.len() as u64))
}
