use super::{
    log_p, FiniteGroup, GroupError, GroupHom, Provenance, Result, Subgroup, SubgroupBuilder,
};

/// `G/N` with cosets labelled by their smallest element, in increasing order.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub group: FiniteGroup,
    pub projection: GroupHom,
    /// smallest element of each coset, indexed by quotient element
    pub reps: Vec<usize>,
}

impl FiniteGroup {
    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientGroup> {
        self.require_normal(n)?;
        let mut label = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if label[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &x in n.elements() {
                label[self.mul(g, x)] = c;
            }
        }
        let m = reps.len();
        let mut mul = vec![0u16; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * m + j] = label[self.mul(a, b)] as u16;
            }
        }
        let group = FiniteGroup::assemble(self.p(), m, mul, Provenance::Quotient);
        Ok(QuotientGroup {
            group,
            projection: GroupHom::new(label),
            reps,
        })
    }
}

/// An elementary abelian section `X/Y` with a fixed basis of coset
/// representatives and a coordinate for every element of `X`.
#[derive(Clone, Debug)]
pub struct ElemAbSection {
    p: u8,
    x: Subgroup,
    y: Subgroup,
    basis: Vec<usize>,
    coords: Vec<Option<Vec<u8>>>,
}

impl ElemAbSection {
    /// Basis chosen greedily from `X` in increasing index order.
    pub fn new(g: &FiniteGroup, x: &Subgroup, y: &Subgroup) -> Result<Self> {
        Self::with_candidates(g, x, y, x.elements())
    }

    /// Basis chosen greedily from `candidates`, which must generate `X` modulo `Y`.
    pub fn with_candidates(
        g: &FiniteGroup,
        x: &Subgroup,
        y: &Subgroup,
        candidates: &[usize],
    ) -> Result<Self> {
        if !x.contains_subgroup(y) {
            return Err(GroupError::NotContained);
        }
        if !g.normalizes(x, y) {
            return Err(GroupError::NotNormal);
        }
        for &a in x.generators() {
            if !y.contains(g.ppow(a, 1)) {
                return Err(GroupError::NotElementaryAbelian);
            }
            for &b in x.generators() {
                if !y.contains(g.comm(a, b)) {
                    return Err(GroupError::NotElementaryAbelian);
                }
            }
        }
        let mut bl = SubgroupBuilder::from_subgroup(g, y);
        let mut basis = Vec::new();
        for &c in candidates {
            if bl.len() == x.order() {
                break;
            }
            if !x.contains(c) {
                return Err(GroupError::NotContained);
            }
            if bl.add(c) {
                basis.push(c);
            }
        }
        if bl.len() != x.order() {
            return Err(GroupError::NotContained);
        }
        let p = g.p();
        let r = basis.len();
        debug_assert_eq!(r as u32, log_p(x.order() / y.order(), p));
        let mut coords = vec![None; g.order()];
        let mut digits = vec![0u8; r];
        loop {
            let mut e = 0;
            for (k, &b) in basis.iter().enumerate() {
                e = g.mul(e, g.pow(b, digits[k] as i64));
            }
            for &t in y.elements() {
                coords[g.mul(e, t)] = Some(digits.clone());
            }
            // next tuple, little-endian
            let mut k = 0;
            while k < r {
                digits[k] += 1;
                if digits[k] < p {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == r {
                break;
            }
        }
        Ok(ElemAbSection {
            p,
            x: x.clone(),
            y: y.clone(),
            basis,
            coords,
        })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn top(&self) -> &Subgroup {
        &self.x
    }

    pub fn bottom(&self) -> &Subgroup {
        &self.y
    }

    /// Coset representatives forming the basis.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Coordinates of `e Y`, or `None` if `e ∉ X`.
    pub fn coords(&self, e: usize) -> Option<&[u8]> {
        self.coords[e].as_deref()
    }

    /// The representative `b_1^(c_1) ... b_r^(c_r)`.
    pub fn element(&self, g: &FiniteGroup, c: &[u8]) -> usize {
        self.basis
            .iter()
            .zip(c)
            .fold(0, |acc, (&b, &k)| g.mul(acc, g.pow(b, k as i64)))
    }
}
