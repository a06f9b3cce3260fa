//! Expressions for normal subgroups that every augmentation-preserving
//! isomorphism `kG -> kH` respects, and the fingerprint of invariants they
//! yield.
//!
//! An expression is built from `G`, `G'` and `1` with
//!
//! * `Om(t|N)`: `Ω_t(G:N)`, the preimage of `Ω_t(G/N)`;
//! * `Mho(t|L|N)`: `℧_t(L)N`;
//! * `ZOm(t|N)`: `Ω_t(Z(G))N`;
//! * `Join(A,B,...)`: the product of the arguments.
//!
//! Every `N` argument has to contain `G'`, which is checked on evaluation.
//! Two expressions that agree on `G` agree on every `H` with `kG ≅ kH`, so
//! the fingerprint records which expressions coincide together with the
//! invariants of each distinct subgroup.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::GroupAlgebra;
use crate::decomposition::{self, DecompositionError};
use crate::group::{AbelianType, FiniteGroup, GroupError, Subgroup};

#[derive(Debug, Error)]
pub enum CanonicalError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error("{expr}: the N argument does not contain the derived subgroup")]
    Containment { expr: String },
    #[error("{expr}: parameter t must be at least 1")]
    ZeroT { expr: String },
    #[error("{expr} evaluates to a subgroup that is not normal")]
    NotNormal { expr: String },
    #[error("Ab(G) by section types is {formula} but peeling gives {peeled}")]
    AbMismatch {
        formula: AbelianType,
        peeled: AbelianType,
    },
    #[error("cannot compare groups over different primes {0} and {1}")]
    PrimeMismatch(u8, u8),
}

pub type Result<T> = std::result::Result<T, CanonicalError>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalExpr {
    Whole,
    Derived,
    Trivial,
    OmegaRel {
        t: u32,
        n: Box<CanonicalExpr>,
    },
    MhoProd {
        t: u32,
        l: Box<CanonicalExpr>,
        n: Box<CanonicalExpr>,
    },
    OmegaCenterProd {
        t: u32,
        n: Box<CanonicalExpr>,
    },
    Join(Vec<CanonicalExpr>),
}

use CanonicalExpr::*;

impl CanonicalExpr {
    pub fn omega_rel(t: u32, n: CanonicalExpr) -> Self {
        OmegaRel { t, n: Box::new(n) }
    }

    pub fn mho_prod(t: u32, l: CanonicalExpr, n: CanonicalExpr) -> Self {
        MhoProd {
            t,
            l: Box::new(l),
            n: Box::new(n),
        }
    }

    pub fn omega_center_prod(t: u32, n: CanonicalExpr) -> Self {
        OmegaCenterProd { t, n: Box::new(n) }
    }

    pub fn join(parts: Vec<CanonicalExpr>) -> Self {
        Join(parts)
    }

    pub fn key(&self) -> String {
        self.to_string()
    }

    /// Nesting depth; the three base expressions have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Whole | Derived | Trivial => 0,
            OmegaRel { n, .. } | OmegaCenterProd { n, .. } => 1 + n.depth(),
            MhoProd { l, n, .. } => 1 + l.depth().max(n.depth()),
            Join(cs) => 1 + cs.iter().map(Self::depth).max().unwrap_or(0),
        }
    }

    /// Whether `G' ⊆ E(G)` holds for every group by construction.
    pub fn contains_derived(&self) -> bool {
        match self {
            Whole | Derived | OmegaRel { .. } | MhoProd { .. } | OmegaCenterProd { .. } => true,
            Trivial => false,
            Join(cs) => cs.iter().any(Self::contains_derived),
        }
    }

    /// Normal form. Without `stable` only rules valid for every group are
    /// used; with `stable = log_p(exp G)` parameters `t >= stable` are also
    /// rewritten, since then `℧_t = 1`, `Ω_t(G:N) = G` and `Ω_t(Z(G)) = Z(G)`.
    pub fn normalize(&self, stable: Option<u32>) -> Self {
        let saturated = |t: u32| stable.is_some_and(|s| t >= s);
        match self {
            Whole | Derived | Trivial => self.clone(),
            OmegaRel { t, n } => {
                let n = n.normalize(stable);
                if n == Whole || saturated(*t) {
                    Whole
                } else {
                    Self::omega_rel(*t, n)
                }
            }
            MhoProd { t, l, n } => {
                let (l, n) = (l.normalize(stable), n.normalize(stable));
                if n == Whole {
                    Whole
                } else if saturated(*t)
                    || l == Trivial
                    || l == n
                    || (l == Derived && n.contains_derived())
                {
                    n
                } else {
                    Self::mho_prod(*t, l, n)
                }
            }
            OmegaCenterProd { t, n } => {
                let n = n.normalize(stable);
                if n == Whole {
                    return Whole;
                }
                let t = match stable {
                    Some(s) if *t >= s => s.max(1),
                    _ => *t,
                };
                Self::omega_center_prod(t, n)
            }
            Join(cs) => {
                let mut flat = Vec::new();
                for c in cs {
                    match c.normalize(stable) {
                        Join(inner) => flat.extend(inner),
                        Trivial => {}
                        other => flat.push(other),
                    }
                }
                if flat.contains(&Whole) {
                    return Whole;
                }
                let mut keyed: Vec<(String, CanonicalExpr)> =
                    flat.into_iter().map(|c| (c.key(), c)).collect();
                keyed.sort_by(|a, b| a.0.cmp(&b.0));
                keyed.dedup_by(|a, b| a.0 == b.0);
                if keyed.len() > 1
                    && keyed
                        .iter()
                        .any(|(_, c)| *c != Derived && c.contains_derived())
                {
                    keyed.retain(|(_, c)| *c != Derived);
                }
                let mut parts: Vec<CanonicalExpr> = keyed.into_iter().map(|(_, c)| c).collect();
                match parts.len() {
                    0 => Trivial,
                    1 => parts.pop().expect("one part"),
                    _ => Join(parts),
                }
            }
        }
    }
}

impl fmt::Display for CanonicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Whole => write!(f, "G"),
            Derived => write!(f, "G'"),
            Trivial => write!(f, "1"),
            OmegaRel { t, n } => write!(f, "Om({t}|{n})"),
            MhoProd { t, l, n } => write!(f, "Mho({t}|{l}|{n})"),
            OmegaCenterProd { t, n } => write!(f, "ZOm({t}|{n})"),
            Join(cs) => {
                write!(f, "Join(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Evaluates expressions on one group, remembering every subexpression.
pub struct Evaluator<'g> {
    g: &'g FiniteGroup,
    derived: Subgroup,
    center: Subgroup,
    memo: HashMap<CanonicalExpr, Subgroup>,
}

impl<'g> Evaluator<'g> {
    pub fn new(g: &'g FiniteGroup) -> Self {
        Evaluator {
            g,
            derived: g.derived_subgroup(),
            center: g.center(),
            memo: HashMap::new(),
        }
    }

    fn normal_arg(&mut self, whole: &CanonicalExpr, n: &CanonicalExpr) -> Result<Subgroup> {
        let s = self.eval(n)?;
        if !s.contains_subgroup(&self.derived) {
            return Err(CanonicalError::Containment { expr: whole.key() });
        }
        Ok(s)
    }

    pub fn eval(&mut self, e: &CanonicalExpr) -> Result<Subgroup> {
        if let Some(s) = self.memo.get(e) {
            return Ok(s.clone());
        }
        let g = self.g;
        if let OmegaRel { t: 0, .. } | MhoProd { t: 0, .. } | OmegaCenterProd { t: 0, .. } = e {
            return Err(CanonicalError::ZeroT { expr: e.key() });
        }
        let s = match e {
            Whole => g.whole(),
            Derived => self.derived.clone(),
            Trivial => g.trivial(),
            OmegaRel { t, n } => {
                let n = self.normal_arg(e, n)?;
                g.omega_relative(&n, *t)?
            }
            MhoProd { t, l, n } => {
                let n = self.normal_arg(e, n)?;
                let l = self.eval(l)?;
                g.join(&g.agemo_of(&l, *t), &n)
            }
            OmegaCenterProd { t, n } => {
                let n = self.normal_arg(e, n)?;
                g.join(&g.omega_of(&self.center, *t), &n)
            }
            Join(cs) => {
                let parts = cs
                    .iter()
                    .map(|c| self.eval(c))
                    .collect::<Result<Vec<_>>>()?;
                g.join_all(parts.iter())
            }
        };
        if !g.is_normal(&s) {
            return Err(CanonicalError::NotNormal { expr: e.key() });
        }
        self.memo.insert(e.clone(), s.clone());
        Ok(s)
    }
}

/// Evaluates a single expression.
pub fn evaluate(e: &CanonicalExpr, g: &FiniteGroup) -> Result<Subgroup> {
    Evaluator::new(g).eval(e)
}

/// All expressions of depth at most `depth` with `t` in `1..=t_max`, in
/// normal form, deduplicated and sorted by key.
pub fn generate_catalog(depth: usize, t_max: u32) -> Vec<CanonicalExpr> {
    generate_normalized(depth, t_max, None)
}

fn generate_normalized(depth: usize, t_max: u32, stable: Option<u32>) -> Vec<CanonicalExpr> {
    let mut all: BTreeMap<String, CanonicalExpr> = [Whole, Derived, Trivial]
        .into_iter()
        .map(|e| (e.key(), e))
        .collect();
    for _ in 0..depth {
        let prev: Vec<CanonicalExpr> = all.values().cloned().collect();
        let ns: Vec<&CanonicalExpr> = prev.iter().filter(|e| e.contains_derived()).collect();
        let mut fresh = Vec::new();
        for t in 1..=t_max {
            for &n in &ns {
                fresh.push(CanonicalExpr::omega_rel(t, n.clone()));
                fresh.push(CanonicalExpr::omega_center_prod(t, n.clone()));
                for l in &prev {
                    fresh.push(CanonicalExpr::mho_prod(t, l.clone(), n.clone()));
                }
            }
        }
        for (i, a) in prev.iter().enumerate() {
            for b in &prev[i + 1..] {
                fresh.push(Join(vec![a.clone(), b.clone()]));
            }
        }
        for e in fresh {
            let e = e.normalize(stable);
            all.entry(e.key()).or_insert(e);
        }
    }
    all.into_values().collect()
}

/// `[p^a, p^b, ...]`, empty for the trivial group.
fn orders(t: &AbelianType) -> Vec<usize> {
    t.orders().to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairInvariants {
    /// type of `G/LN`
    pub quotient: Vec<usize>,
    /// type of `LN/N`
    pub section: Vec<usize>,
}

/// Invariants of one subgroup `L` reached by the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupInvariants {
    /// abelian type of `L`, when `L` is abelian
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abelian: Option<Vec<usize>>,
    /// type of `Z(G) ∩ L`
    pub center_meet: Vec<usize>,
    /// type of `Z(G)L/L`
    pub center_quotient: Vec<usize>,
    /// orders of the Jennings series of `L`
    pub jennings: Vec<usize>,
    pub order: usize,
    /// keyed by the index of `N`, for every catalog subgroup `N ⊇ G'`
    pub pairs: BTreeMap<usize, PairInvariants>,
}

/// Fields are declared in alphabetical order so that the compact JSON
/// serialization is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub ab_type: Vec<usize>,
    /// expression key to index into `subgroups`; indices are assigned in key order
    pub catalog: BTreeMap<String, usize>,
    pub d: usize,
    pub depth: usize,
    pub jennings: Vec<usize>,
    pub order: usize,
    pub p: u8,
    pub subgroups: Vec<SubgroupInvariants>,
    pub t_range: [u32; 2],
}

impl Fingerprint {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("fingerprints serialize")
    }
}

/// Largest `t` used: `t_max` capped at `log_p(exp G) + 1`, where every
/// series has stabilized.
pub fn effective_t_max(g: &FiniteGroup, t_max: Option<u32>) -> u32 {
    let top = g.exponent_log() + 1;
    t_max.map_or(top, |t| t.min(top)).max(1)
}

fn series_orders(g: &FiniteGroup) -> Vec<usize> {
    g.jennings_series().iter().map(Subgroup::order).collect()
}

pub fn fingerprint(g: &FiniteGroup, depth: usize, t_max: Option<u32>) -> Result<Fingerprint> {
    let t_top = effective_t_max(g, t_max);
    let exprs = generate_normalized(depth, t_top, Some(g.exponent_log()));
    let mut ev = Evaluator::new(g);
    let mut classes: Vec<Subgroup> = Vec::new();
    let mut index: HashMap<Subgroup, usize> = HashMap::new();
    let mut catalog = BTreeMap::new();
    for e in &exprs {
        let s = ev.eval(e)?;
        let next = classes.len();
        let i = *index.entry(s.clone()).or_insert_with(|| {
            classes.push(s);
            next
        });
        catalog.insert(e.key(), i);
    }

    let z = g.center();
    let derived = g.derived_subgroup();
    let whole = g.whole();
    let mut subgroups = Vec::with_capacity(classes.len());
    for l in &classes {
        let (lg, _) = g.subgroup_as_group(l);
        let mut pairs = BTreeMap::new();
        for (j, n) in classes.iter().enumerate() {
            if !n.contains_subgroup(&derived) {
                continue;
            }
            let ln = g.join(l, n);
            pairs.insert(
                j,
                PairInvariants {
                    quotient: orders(&g.section_type(&whole, &ln)?),
                    section: orders(&g.section_type(&ln, n)?),
                },
            );
        }
        subgroups.push(SubgroupInvariants {
            abelian: g.abelian_type_of(l).ok().as_ref().map(orders),
            center_meet: orders(&g.abelian_type_of(&g.meet(&z, l))?),
            center_quotient: orders(&g.section_type(&g.join(&z, l), l)?),
            jennings: series_orders(&lg),
            order: l.order(),
            pairs,
        });
    }

    let formula = decomposition::ab_type_by_formula(g)?;
    let peeled = decomposition::ab_nab_split(g)?.ab_type;
    if formula != peeled {
        return Err(CanonicalError::AbMismatch { formula, peeled });
    }

    Ok(Fingerprint {
        ab_type: orders(&formula),
        catalog,
        d: g.min_generators(),
        depth,
        jennings: series_orders(g),
        order: g.order(),
        p: g.p(),
        subgroups,
        t_range: [1, t_top],
    })
}

/// Top-level fingerprint fields, coarsest first.
const COMPARE_ORDER: [&str; 9] = [
    "p",
    "order",
    "jennings",
    "d",
    "ab_type",
    "t_range",
    "catalog",
    "subgroups",
    "depth",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    DistinguishedBy {
        key: String,
        left: Value,
        right: Value,
    },
    Indistinguishable {
        depth: usize,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    /// `dim I^n` for `n = 0, 1, ...` of each algebra
    pub radical_dims: [Vec<usize>; 2],
    #[serde(flatten)]
    pub verdict: Verdict,
}

fn first_difference(path: &str, a: &Value, b: &Value) -> Option<(String, Value, Value)> {
    let join = |k: &str| {
        if path.is_empty() {
            k.to_string()
        } else {
            format!("{path}.{k}")
        }
    };
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let mut keys: Vec<&String> = x.keys().chain(y.keys()).collect();
            keys.sort();
            keys.dedup();
            keys.into_iter().find_map(|k| {
                let (u, v) = (
                    x.get(k).unwrap_or(&Value::Null),
                    y.get(k).unwrap_or(&Value::Null),
                );
                first_difference(&join(k), u, v)
            })
        }
        (Value::Array(x), Value::Array(y))
            if x.len() == y.len() && x.iter().any(Value::is_object) =>
        {
            x.iter()
                .zip(y)
                .enumerate()
                .find_map(|(i, (u, v))| first_difference(&format!("{path}[{i}]"), u, v))
        }
        _ => (a != b).then(|| (path.to_string(), a.clone(), b.clone())),
    }
}

/// The first entry, in comparison order, where two fingerprints differ.
pub fn compare_fingerprints(fg: &Fingerprint, fh: &Fingerprint) -> Verdict {
    let (a, b) = (
        serde_json::to_value(fg).expect("json"),
        serde_json::to_value(fh).expect("json"),
    );
    COMPARE_ORDER
        .iter()
        .find_map(|k| first_difference(k, &a[*k], &b[*k]))
        .map_or(
            Verdict::Indistinguishable {
                depth: fg.depth.min(fh.depth),
            },
            |(key, left, right)| Verdict::DistinguishedBy { key, left, right },
        )
}

/// The first fingerprint entry telling `G` and `H` apart, if any.
pub fn compare(
    g: &FiniteGroup,
    h: &FiniteGroup,
    depth: usize,
    t_max: Option<u32>,
) -> Result<Comparison> {
    if g.p() != h.p() {
        return Err(CanonicalError::PrimeMismatch(g.p(), h.p()));
    }
    let (fg, fh) = rayon::join(
        || fingerprint(g, depth, t_max),
        || fingerprint(h, depth, t_max),
    );
    let verdict = compare_fingerprints(&fg?, &fh?);
    let radical_dims = [
        GroupAlgebra::new(g).radical_powers().dims(),
        GroupAlgebra::new(h).radical_powers().dims(),
    ];
    Ok(Comparison {
        radical_dims,
        verdict,
    })
}
