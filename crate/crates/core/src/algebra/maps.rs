//! The power maps between elementary abelian sections of `G` and between
//! layers of the radical filtration, and the square relating them:
//!
//! ```text
//!   Ω_t(Z(G))Φ(G)/Φ(G) ──λ──> ℧_(t-1)(G)G'/℧_t(G)G'
//!          │ ψ_1                      │ ψ_q^N
//!          v                          v
//!        I/I²  ─────Λ────> (I^q + I(N)G)/(I^(q+1) + I(N)G)
//! ```
//!
//! with `q = p^(t-1)`, `N = ℧_t(G)G'`, `λ` and `Λ` raising to the `q`-th
//! power and each `ψ` sending `x` to `x - 1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AlgebraError, GroupAlgebra, RadicalPowers, Result};
use crate::fp_linalg::{self, FpMatrix, QuotientSpace, Subspace};
use crate::group::{ElemAbSection, FiniteGroup, Subgroup};

/// A linear map between elementary abelian sections, in the sections' bases.
#[derive(Clone, Debug)]
pub struct SectionMap {
    pub domain: ElemAbSection,
    pub codomain: ElemAbSection,
    /// `domain.rank() x codomain.rank()`
    pub matrix: FpMatrix,
}

impl SectionMap {
    pub fn kernel(&self) -> Subspace {
        fp_linalg::kernel(&self.matrix)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().dim() == 0
    }
}

/// A linear map into a quotient of subspaces of the algebra.
#[derive(Clone, Debug)]
pub struct QuotientMap<D> {
    pub domain: D,
    pub codomain: QuotientSpace,
    pub matrix: FpMatrix,
}

/// `λ_G^(t-1): Ω_t(Z(G))Φ(G)/Φ(G) -> ℧_(t-1)(G)G'/℧_t(G)G'`, `x -> x^(p^(t-1))`.
///
/// The domain basis is lifted to `Ω_t(Z(G))`. The map is evaluated on every
/// element of the domain and must agree with the matrix.
pub fn lambda_group_map(g: &FiniteGroup, t: u32) -> Result<SectionMap> {
    assert!(t >= 1, "λ is defined for t >= 1");
    let z = g.center();
    let om = g.omega_of(&z, t);
    let phi = g.frattini();
    let top = g.join(&om, &phi);
    let domain = ElemAbSection::with_candidates(g, &top, &phi, om.elements())?;
    let derived = g.derived_subgroup();
    let cod_top = g.join(&g.agemo(t - 1), &derived);
    let cod_bot = g.join(&g.agemo(t), &derived);
    let codomain = ElemAbSection::new(g, &cod_top, &cod_bot)?;
    let rows: Vec<Vec<u8>> = domain
        .basis()
        .iter()
        .map(|&b| {
            codomain
                .coords(g.ppow(b, t - 1))
                .map(<[u8]>::to_vec)
                .ok_or_else(|| {
                    AlgebraError::NotWellDefined(format!("λ image of {b} leaves ℧_(t-1)(G)G'"))
                })
        })
        .collect::<Result<_>>()?;
    let matrix = FpMatrix::from_rows(g.p(), codomain.rank(), &rows)?;
    for &x in top.elements() {
        let c = domain.coords(x).expect("x lies in the domain");
        let via_matrix =
            fp_linalg::FpVector::from_residues(g.p(), c.to_vec()).mul_matrix(&matrix)?;
        let direct = codomain.coords(g.ppow(x, t - 1));
        if direct != Some(via_matrix.coords()) {
            return Err(AlgebraError::NotWellDefined(format!(
                "λ at t = {t} disagrees with its matrix at element {x}"
            )));
        }
    }
    Ok(SectionMap {
        domain,
        codomain,
        matrix,
    })
}

/// Outcome of checking the square of power maps for one `t`.
#[derive(Clone, Debug)]
pub struct DiagramCheck {
    pub t: u32,
    pub lambda: SectionMap,
    pub commutes: bool,
    /// `ψ_1(ker λ) = ker Λ ∩ ψ_1(domain of λ)`
    pub kernels_correspond: bool,
    pub psi1_bijective: bool,
}

/// `Z(kG)` split along the class sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterDecomposition {
    pub center_dim: usize,
    pub class_count: usize,
    /// `dim [kG,kG] ∩ Z(kG)`
    pub commutator_center_dim: usize,
    /// `Z(kG) = kZ(G) ⊕ ([kG,kG] ∩ Z(kG))`
    pub with_group_algebra_of_center: bool,
    /// `Z(kG) ∩ I(G) = I(Z(G)) ⊕ ([kG,kG] ∩ Z(kG))`
    pub augmentation_part: bool,
    /// `dim Z(kG) - dim I(Z(G)) - dim([kG,kG] ∩ Z(kG))`
    pub augmentation_ideal_gap: usize,
}

fn is_direct_sum(total: &Subspace, a: &Subspace, b: &Subspace) -> Result<bool> {
    Ok(a.intersect(b)?.dim() == 0 && a.sum(b)? == *total)
}

impl<'g> GroupAlgebra<'g> {
    /// `ψ_n^N: X/Y -> (I^n + I(N)G)/(I^(n+1) + I(N)G)`, `x -> x - 1`, for a
    /// section with `X ⊆ D_n(G)N` and `Y = D_(n+1)(G)N`.
    pub fn psi_map(
        &self,
        rad: &RadicalPowers,
        section: &ElemAbSection,
        n: usize,
        n_sub: &Subgroup,
    ) -> Result<QuotientMap<ElemAbSection>> {
        let g = self.group();
        let series = g.jennings_series();
        let top = g.join(FiniteGroup::jennings_term(&series, n), n_sub);
        let bottom = g.join(FiniteGroup::jennings_term(&series, n + 1), n_sub);
        if !top.contains_subgroup(section.top()) || *section.bottom() != bottom {
            return Err(AlgebraError::IdentityFailed(format!(
                "section is not a subquotient of D_{n}(G)N / D_{}(G)N",
                n + 1
            )));
        }
        let rel = self.relative_augmentation_ideal(n_sub)?;
        let num = rad.power(n).sum(rel.space())?;
        let den = rad.power(n + 1).sum(rel.space())?;
        let codomain = QuotientSpace::new(num, den)?;
        let rows: Vec<Vec<u8>> = section
            .basis()
            .iter()
            .map(|&b| {
                codomain.coords(&self.diff(b, 0)).ok_or_else(|| {
                    AlgebraError::NotWellDefined(format!("{b} - 1 leaves I^{n} + I(N)G"))
                })
            })
            .collect::<Result<_>>()?;
        let matrix = FpMatrix::from_rows(self.p(), codomain.dim(), &rows)?;
        for &x in section.top().elements() {
            let c = section.coords(x).expect("x lies in the section");
            let via =
                fp_linalg::FpVector::from_residues(self.p(), c.to_vec()).mul_matrix(&matrix)?;
            if codomain.coords(&self.diff(x, 0)).as_deref() != Some(via.coords()) {
                return Err(AlgebraError::NotWellDefined(format!(
                    "ψ_{n} disagrees with its matrix at {x}"
                )));
            }
        }
        Ok(QuotientMap {
            domain: section.clone(),
            codomain,
            matrix,
        })
    }

    /// `Λ_G^(t-1): I/I² -> (I^q + I(N)G)/(I^(q+1) + I(N)G)`, `x -> x^q`.
    ///
    /// Representative independence and additivity are tested on perturbations
    /// of each basis vector by elements of `I²` and on pairwise sums.
    pub fn lambda_algebra_map(
        &self,
        rad: &RadicalPowers,
        t: u32,
    ) -> Result<QuotientMap<QuotientSpace>> {
        assert!(t >= 1, "Λ is defined for t >= 1");
        let g = self.group();
        let q = (g.p() as u64).pow(t - 1);
        let n_sub = g.join(&g.agemo(t), &g.derived_subgroup());
        let rel = self.relative_augmentation_ideal(&n_sub)?;
        let num = rad.power(q as usize).sum(rel.space())?;
        let den = rad.power(q as usize + 1).sum(rel.space())?;
        let codomain = QuotientSpace::new(num, den)?;
        let domain = QuotientSpace::new(rad.power(1).clone(), rad.power(2).clone())?;
        let image = |v: &[u8]| -> Result<Vec<u8>> {
            codomain
                .coords(&self.pow_raw(v, q))
                .ok_or_else(|| AlgebraError::NotWellDefined(format!("x^{q} leaves I^{q} + I(N)G")))
        };
        let basis: Vec<Vec<u8>> = domain.basis().to_vec();
        let rows: Vec<Vec<u8>> = basis.iter().map(|v| image(v)).collect::<Result<_>>()?;
        let matrix = FpMatrix::from_rows(self.p(), codomain.dim(), &rows)?;

        let p = self.p();
        let add =
            |a: &[u8], b: &[u8]| -> Vec<u8> { a.iter().zip(b).map(|(x, y)| (x + y) % p).collect() };
        let i2 = rad.power(2).basis();
        let mut rng = ChaCha8Rng::seed_from_u64(0x4c61_6d62);
        for (k, v) in basis.iter().enumerate() {
            let mut perturbations: Vec<Vec<u8>> = i2.iter().take(8).cloned().collect();
            for _ in 0..8 {
                if i2.is_empty() {
                    break;
                }
                let mut w = vec![0u8; self.dim()];
                for b in i2 {
                    let c = rng.gen_range(0..p);
                    for (wi, bi) in w.iter_mut().zip(b) {
                        *wi = (*wi + c * bi) % p;
                    }
                }
                perturbations.push(w);
            }
            for w in perturbations {
                if image(&add(v, &w))? != rows[k] {
                    return Err(AlgebraError::NotWellDefined(format!(
                        "Λ at t = {t} depends on the representative modulo I²"
                    )));
                }
            }
            for (l, u) in basis.iter().enumerate().skip(k + 1) {
                let expected: Vec<u8> = add(&rows[k], &rows[l]);
                if image(&add(v, u))? != expected {
                    return Err(AlgebraError::NotWellDefined(format!(
                        "Λ at t = {t} is not additive"
                    )));
                }
            }
        }
        Ok(QuotientMap {
            domain,
            codomain,
            matrix,
        })
    }

    /// Builds both routes around the square for one `t` and compares them.
    pub fn diagram_check(&self, rad: &RadicalPowers, t: u32) -> Result<DiagramCheck> {
        let g = self.group();
        let q = (g.p() as usize).pow(t - 1);
        let lambda = lambda_group_map(g, t)?;
        let n_sub = g.join(&g.agemo(t), &g.derived_subgroup());
        let big_lambda = self.lambda_algebra_map(rad, t)?;
        let psi_dom = self.psi_map(rad, &lambda.domain, 1, &g.trivial())?;
        let psi_cod = self.psi_map(rad, &lambda.codomain, q, &n_sub)?;
        if psi_dom.codomain.numerator() != big_lambda.domain.numerator()
            || psi_dom.codomain.denominator() != big_lambda.domain.denominator()
            || psi_cod.codomain != big_lambda.codomain
        {
            return Err(AlgebraError::IdentityFailed(
                "the square's corners do not match".into(),
            ));
        }
        // psi_dom's codomain is I/I² with the same canonical basis as Λ's domain
        let left = psi_dom.matrix.mul(&big_lambda.matrix)?;
        let right = lambda.matrix.mul(&psi_cod.matrix)?;
        let commutes = left == right;

        let full = ElemAbSection::new(g, &g.whole(), &g.frattini())?;
        let psi1 = self.psi_map(rad, &full, 1, &g.trivial())?;
        let psi1_bijective =
            psi1.matrix.nrows() == psi1.matrix.ncols() && psi1.matrix.rank() == psi1.matrix.nrows();

        let ker_lambda = lambda.kernel();
        let lhs = ker_lambda.image_under(&psi_dom.matrix)?;
        let ker_big = fp_linalg::kernel(&big_lambda.matrix);
        let dom_image = fp_linalg::image(&psi_dom.matrix);
        let rhs = ker_big.intersect(&dom_image)?;
        Ok(DiagramCheck {
            t,
            lambda,
            commutes,
            kernels_correspond: lhs == rhs,
            psi1_bijective,
        })
    }

    /// Checks the splitting of the center along the class sums.
    pub fn center_decomposition(&self) -> Result<CenterDecomposition> {
        let g = self.group();
        let center = self.center();
        let comm = self.commutator_subspace();
        let cc = comm.intersect(&center)?;
        let z = g.center();
        let kz = self.subgroup_span(&z);
        let iz = self.subgroup_augmentation(&z);
        let aug = self.augmentation_ideal();
        let class_count = {
            let mut seen = vec![false; g.order()];
            let mut k = 0;
            for x in 0..g.order() {
                if seen[x] {
                    continue;
                }
                k += 1;
                for y in 0..g.order() {
                    seen[g.conj(x, y)] = true;
                }
            }
            k
        };
        Ok(CenterDecomposition {
            center_dim: center.dim(),
            class_count,
            commutator_center_dim: cc.dim(),
            with_group_algebra_of_center: is_direct_sum(&center, &kz, &cc)?,
            augmentation_part: is_direct_sum(&center.intersect(aug.space())?, &iz, &cc)?,
            augmentation_ideal_gap: center.dim() - iz.dim() - cc.dim(),
        })
    }
}
