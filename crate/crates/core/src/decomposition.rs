//! Splitting a p-group as `G = NAb(G) ⊕ H_1 ⊕ H_2 ⊕ ...` with each `H_t`
//! homocyclic of exponent `p^t`.
//!
//! `H_t` is found through the power map
//! `λ: Ω_t(Z(G))Φ(G)/Φ(G) -> ℧_(t-1)(G)G'/℧_t(G)G'`: lifting a complement of
//! `ker λ` gives a homocyclic direct factor, and a complement to it is built
//! by twisting a Burnside basis. Components are peeled off for ascending `t`.
//! Every output is checked against the group table before it is returned.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{lambda_group_map, AlgebraError, SectionMap};
use crate::fp_linalg::{self, LinalgError};
use crate::group::{AbelianType, FiniteGroup, GroupError, Subgroup};

#[derive(Debug, Error)]
pub enum DecompositionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, DecompositionError>;

fn verify(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(DecompositionError::Verification(what()))
    }
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(DecompositionError::Precondition(what()))
    }
}

/// `℧_t(H)H'` for a subgroup `H`.
fn agemo_derived(g: &FiniteGroup, h: &Subgroup, t: u32) -> Subgroup {
    g.join(&g.agemo_of(h, t), &g.commutator_of(h, h))
}

/// `d(H)` for a subgroup `H`: `|H/Φ(H)| = p^d`.
fn rank_of(g: &FiniteGroup, h: &Subgroup) -> usize {
    let phi = agemo_derived(g, h, 1);
    crate::group::log_p(h.order() / phi.order(), g.p()) as usize
}

fn is_homocyclic(g: &FiniteGroup, h: &Subgroup, t: u32) -> bool {
    let q = (g.p() as usize).pow(t);
    g.abelian_type_of(h)
        .map(|a| a.orders().iter().all(|&o| o == q))
        .unwrap_or(false)
}

/// Rank of `H_t(G)`: `dim Ω_t(Z(G))Φ(G)/Φ(G) - dim ker λ_G^(t-1)`.
pub fn homocyclic_rank(g: &FiniteGroup, t: u32) -> Result<usize> {
    let map = lambda_group_map(g, t)?;
    Ok(map.domain.rank() - map.kernel().dim())
}

/// Splits off `H_t(G)`: returns `(T, S)` with `G = S ⊕ T` and `T` homocyclic
/// of exponent `p^t` and rank [`homocyclic_rank`].
pub fn extract_component(g: &FiniteGroup, t: u32) -> Result<(Subgroup, Subgroup)> {
    let map = lambda_group_map(g, t)?;
    let tt = lift_complement_of_kernel(g, &map, t);
    let s = complement_construction(g, &tt, t)?;
    Ok((tt, s))
}

/// Lifts the coordinate complement of `ker λ` (unit vectors at the non-pivot
/// columns) to the least elements of `Ω_t(Z(G))` in each coset.
fn lift_complement_of_kernel(g: &FiniteGroup, map: &SectionMap, t: u32) -> Subgroup {
    let kernel = map.kernel();
    let r = map.domain.rank();
    let om = g.omega_of(&g.center(), t);
    let mut lifts = Vec::new();
    for j in (0..r).filter(|j| !kernel.pivots().contains(j)) {
        let mut target = vec![0u8; r];
        target[j] = 1;
        let x = om
            .elements()
            .iter()
            .copied()
            .find(|&x| map.domain.coords(x) == Some(&target[..]))
            .expect("the section basis was chosen inside Ω_t(Z(G))");
        lifts.push(x);
    }
    g.generate(&lifts)
}

/// Twists the generators `xs` of `H` so that `H = ⟨xs'⟩ ⊕ ⟨y⟩`, keeping
/// `S_j N ∩ ⟨y⟩ = 1` for `N = ℧_t(H)H'` at every step.
fn split_off_cyclic(
    g: &FiniteGroup,
    h: &Subgroup,
    xs: &[usize],
    y: usize,
    t: u32,
) -> Result<Vec<usize>> {
    let p = g.p() as i64;
    let q = p.pow(t);
    let n = agemo_derived(g, h, t);
    let cyc = g.generate(&[y]);
    require(cyc.order() == q as usize, || {
        format!("y = {y} must have order p^{t}")
    })?;
    require(g.meet(&cyc, &n).is_trivial(), || {
        format!("⟨{y}⟩ meets ℧_t(H)H'")
    })?;

    let mut out: Vec<usize> = Vec::with_capacity(xs.len());
    for &x in xs {
        let s_n = g.join(&g.generate(&out), &n);
        let mut with_x = out.clone();
        with_x.push(x);
        let meet = g.meet(&g.join(&g.generate(&with_x), &n), &cyc);
        if meet.is_trivial() {
            out.push(x);
            continue;
        }
        // meet = ⟨y^(p^e)⟩ with e < t
        let e = t - crate::group::log_p(meet.order(), g.p());
        let y_pe = g.ppow(y, e);
        let hit = (0..=e).find_map(|s| {
            (1..q).filter(|w| w % p != 0).find_map(|w| {
                let lhs = g.mul(g.pow(x, w * p.pow(s)), g.inv(y_pe));
                s_n.contains(lhs).then_some((w, s))
            })
        });
        let Some((w, s)) = hit else {
            return Err(DecompositionError::Verification(format!(
                "no twist found for generator {x} against {y}"
            )));
        };
        let twisted = g.mul(g.pow(x, w), g.pow(y, -p.pow(e - s)));
        out.push(twisted);
        let grown = g.join(&g.generate(&out), &n);
        verify(g.meet(&grown, &cyc).is_trivial(), || {
            format!("twisted generator {twisted} still meets ⟨{y}⟩")
        })?;
    }
    Ok(out)
}

/// A complement `S` with `G = S ⊕ T`, for `T ⊆ Ω_t(Z(G))` homocyclic of
/// exponent `p^t` with `d(T) = d(TΦ(G)/Φ(G))` and `T ∩ ℧_t(G)G' = 1`.
pub fn complement_construction(g: &FiniteGroup, tt: &Subgroup, t: u32) -> Result<Subgroup> {
    if tt.is_trivial() {
        return Ok(g.whole());
    }
    let om = g.omega_of(&g.center(), t);
    require(om.contains_subgroup(tt), || {
        "T must lie in Ω_t(Z(G))".into()
    })?;
    require(is_homocyclic(g, tt, t), || {
        format!("T must be homocyclic of exponent p^{t}")
    })?;
    let phi = g.frattini();
    let d = rank_of(g, tt);
    let d_mod_phi = crate::group::log_p(g.join(tt, &phi).order() / phi.order(), g.p()) as usize;
    require(d == d_mod_phi, || "d(T) must equal d(TΦ(G)/Φ(G))".into())?;
    require(
        g.meet(tt, &agemo_derived(g, &g.whole(), t)).is_trivial(),
        || "T must meet ℧_t(G)G' trivially".into(),
    )?;

    // Burnside basis of T, smallest elements first, extended to one of G
    let t_phi = g.agemo_of(tt, 1);
    let mut ys = Vec::new();
    let mut span = t_phi.clone();
    for &x in tt.elements() {
        if !span.contains(x) {
            ys.push(x);
            span = g.join(&span, &g.generate(&[x]));
        }
    }
    let full = g
        .burnside_basis_extending(&ys)
        .ok_or_else(|| DecompositionError::Precondition("T is dependent modulo Φ(G)".into()))?;
    let n_x = full.len() - ys.len();

    // split off y_r, then y_(r-1) inside the complement, and so on
    let mut gens: Vec<usize> = full[ys.len()..].to_vec();
    gens.extend_from_slice(&ys);
    let mut h = g.whole();
    for k in (0..ys.len()).rev() {
        let y = gens[n_x + k];
        let twisted = split_off_cyclic(g, &h, &gens[..n_x + k], y, t)?;
        let smaller = g.generate(&twisted);
        verify(smaller.order() * t_power(g.p(), t) == h.order(), || {
            format!("split at y = {y} is not direct")
        })?;
        h = smaller;
        gens = twisted;
    }
    let s = h;
    verify(s.order() * tt.order() == g.order(), || {
        "|S||T| != |G|".into()
    })?;
    verify(g.meet(&s, tt).is_trivial(), || "S ∩ T != 1".into())?;
    verify(g.is_normal(&s), || "S is not normal".into())?;
    Ok(s)
}

fn t_power(p: u8, t: u32) -> usize {
    (p as usize).pow(t)
}

/// One homocyclic factor `H_t` of rank `rank`.
#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub t: u32,
    pub rank: usize,
    pub order: usize,
    /// generators of `H_t`, as element indices of `G`
    pub generators: Vec<usize>,
    /// generators of the complement produced when `H_t` was split off
    pub complement_generators: Vec<usize>,
    #[serde(skip)]
    pub subgroup: Subgroup,
}

/// The state before and after one peeling step.
#[derive(Clone, Debug, Serialize)]
pub struct PeelStep {
    pub t: u32,
    pub residual_order: usize,
    /// `dim Ω_t(Z)Φ/Φ` of the residual
    pub lambda_domain_dim: usize,
    pub lambda_kernel_dim: usize,
    pub rank: usize,
    /// rank of exponent `p^t` in `Ω_t(Z(G))℧_t(G)G'/℧_t(G)G'`, computed on `G`
    pub section_rank: usize,
    pub residual_order_after: usize,
}

/// Checks that `G` is the internal direct product of the factors.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub orders_multiply: bool,
    pub factors_commute: bool,
    pub trivial_intersections: bool,
    pub generate_g: bool,
    pub components_homocyclic: bool,
    /// the residual has no homocyclic factor of any exponent
    pub residual_has_no_abelian_factor: bool,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.orders_multiply
            && self.factors_commute
            && self.trivial_intersections
            && self.generate_g
            && self.components_homocyclic
            && self.residual_has_no_abelian_factor
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomocyclicDecomposition {
    pub p: u8,
    pub order: usize,
    pub components: Vec<Component>,
    pub nab_order: usize,
    pub nab_generators: Vec<usize>,
    pub nab_abelian: bool,
    pub ab_type: AbelianType,
    pub certificate: Certificate,
    pub peel_trace: Vec<PeelStep>,
    #[serde(skip)]
    pub nab: Subgroup,
}

/// `⊕_t H_t(Ω_t(Z(G))℧_t(G)G'/℧_t(G)G')`, read off from section types.
pub fn ab_type_by_formula(g: &FiniteGroup) -> Result<AbelianType> {
    let mut orders = Vec::new();
    for t in 1..=g.exponent_log() {
        let q = t_power(g.p(), t);
        let r = section_rank(g, t)?;
        orders.extend(std::iter::repeat_n(q, r));
    }
    Ok(AbelianType::new(orders))
}

fn section_rank(g: &FiniteGroup, t: u32) -> Result<usize> {
    let q = t_power(g.p(), t);
    let n = agemo_derived(g, &g.whole(), t);
    let x = g.join(&g.omega_of(&g.center(), t), &n);
    let ty = g.section_type(&x, &n)?;
    Ok(ty.orders().iter().filter(|&&o| o == q).count())
}

/// Peels `H_1, H_2, ...` off `G` in turn; what remains is `NAb(G)`.
pub fn ab_nab_split(g: &FiniteGroup) -> Result<HomocyclicDecomposition> {
    let mut residual = g.whole();
    let mut components = Vec::new();
    let mut trace = Vec::new();
    for t in 1..=g.exponent_log() {
        let (rg, inc) = g.subgroup_as_group(&residual);
        let map = lambda_group_map(&rg, t)?;
        let rank = map.domain.rank() - map.kernel().dim();
        let section_rank = section_rank(g, t)?;
        verify(rank == section_rank, || {
            format!("H_{t} has rank {rank} in the residual but {section_rank} in the section")
        })?;
        let tt = lift_complement_of_kernel(&rg, &map, t);
        let s = complement_construction(&rg, &tt, t)?;
        verify(
            rank_of(&rg, &tt) == rank && is_homocyclic(&rg, &tt, t),
            || format!("extracted H_{t} has the wrong type"),
        )?;
        let tt_g = rg.image_subgroup(&inc, g, &tt);
        let s_g = rg.image_subgroup(&inc, g, &s);
        trace.push(PeelStep {
            t,
            residual_order: residual.order(),
            lambda_domain_dim: map.domain.rank(),
            lambda_kernel_dim: map.kernel().dim(),
            rank,
            section_rank,
            residual_order_after: s_g.order(),
        });
        if rank > 0 {
            components.push(Component {
                t,
                rank,
                order: tt_g.order(),
                generators: tt_g.generators().to_vec(),
                complement_generators: s_g.generators().to_vec(),
                subgroup: tt_g,
            });
        }
        residual = s_g;
    }

    let certificate = certify(g, &residual, &components)?;
    let mut orders = Vec::new();
    for c in &components {
        orders.extend(std::iter::repeat_n(t_power(g.p(), c.t), c.rank));
    }
    let ab_type = AbelianType::new(orders);
    let dec = HomocyclicDecomposition {
        p: g.p(),
        order: g.order(),
        nab_order: residual.order(),
        nab_generators: residual.generators().to_vec(),
        nab_abelian: g.abelian_type_of(&residual).is_ok(),
        components,
        ab_type,
        certificate,
        peel_trace: trace,
        nab: residual,
    };
    verify(dec.certificate.holds(), || {
        format!("certificate {:?}", dec.certificate)
    })?;
    Ok(dec)
}

fn certify(g: &FiniteGroup, nab: &Subgroup, components: &[Component]) -> Result<Certificate> {
    let mut factors: Vec<&Subgroup> = vec![nab];
    factors.extend(components.iter().map(|c| &c.subgroup));
    let orders_multiply = factors.iter().map(|f| f.order()).product::<usize>() == g.order();
    let mut factors_commute = true;
    let mut trivial_intersections = true;
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i + 1..] {
            factors_commute &= a
                .generators()
                .iter()
                .all(|&x| b.generators().iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
        }
        let others = g.join_all(
            factors
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, f)| *f),
        );
        trivial_intersections &= g.meet(a, &others).is_trivial();
    }
    let generate_g = g.join_all(factors.iter().copied()).order() == g.order();
    let components_homocyclic = components
        .iter()
        .all(|c| is_homocyclic(g, &c.subgroup, c.t));
    let (ng, _) = g.subgroup_as_group(nab);
    let mut residual_has_no_abelian_factor = true;
    for t in 1..=ng.exponent_log() {
        residual_has_no_abelian_factor &= homocyclic_rank(&ng, t)? == 0;
    }
    Ok(Certificate {
        orders_multiply,
        factors_commute,
        trivial_intersections,
        generate_g,
        components_homocyclic,
        residual_has_no_abelian_factor,
    })
}

/// The five properties every `H_t` of a homocyclic decomposition has.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentChecks {
    pub t: u32,
    pub inside_omega_center: bool,
    pub rank_equals_rank_mod_frattini: bool,
    pub complement_keeps_agemo_derived: bool,
    pub meets_agemo_derived_trivially: bool,
    pub lambda_injective: bool,
}

impl ComponentChecks {
    pub fn all(&self) -> bool {
        self.inside_omega_center
            && self.rank_equals_rank_mod_frattini
            && self.complement_keeps_agemo_derived
            && self.meets_agemo_derived_trivially
            && self.lambda_injective
    }
}

/// Runs the checks for every `t` up to the exponent, with `H_t = 1` where
/// the decomposition has no component of that exponent.
pub fn lemma41_checks(
    g: &FiniteGroup,
    dec: &HomocyclicDecomposition,
) -> Result<Vec<ComponentChecks>> {
    let mut out = Vec::new();
    let phi = g.frattini();
    let whole = g.whole();
    for t in 1..=g.exponent_log() {
        let idx = dec.components.iter().position(|c| c.t == t);
        let h = idx.map_or_else(|| g.trivial(), |i| dec.components[i].subgroup.clone());
        let mut others: Vec<&Subgroup> = vec![&dec.nab];
        others.extend(
            dec.components
                .iter()
                .enumerate()
                .filter(|&(j, _)| Some(j) != idx)
                .map(|(_, c)| &c.subgroup),
        );
        let s = g.join_all(others);
        let n = agemo_derived(g, &whole, t);
        let d_mod_phi = crate::group::log_p(g.join(&h, &phi).order() / phi.order(), g.p()) as usize;

        let map = lambda_group_map(g, t)?;
        let coords: Option<Vec<Vec<u8>>> = h
            .elements()
            .iter()
            .map(|&x| map.domain.coords(x).map(<[u8]>::to_vec))
            .collect();
        let lambda_injective = match coords {
            Some(rows) => {
                let image = fp_linalg::rref(g.p(), map.domain.rank(), &rows)?;
                image.intersect(&map.kernel())?.dim() == 0
            }
            None => false,
        };

        out.push(ComponentChecks {
            t,
            inside_omega_center: g.omega_of(&g.center(), t).contains_subgroup(&h),
            rank_equals_rank_mod_frattini: rank_of(g, &h) == d_mod_phi,
            complement_keeps_agemo_derived: agemo_derived(g, &s, t) == n,
            meets_agemo_derived_trivially: g.meet(&h, &n).is_trivial(),
            lambda_injective,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
