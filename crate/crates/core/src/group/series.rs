use std::collections::HashMap;

use super::{FiniteGroup, Subgroup};

impl FiniteGroup {
    /// `Ω_0 = 1 ⊆ Ω_1 ⊆ ...` up to the first term equal to `G`.
    pub fn omega_series(&self) -> Vec<Subgroup> {
        let mut out = vec![self.trivial()];
        let mut t = 1;
        while out.last().unwrap().order() < self.order() {
            out.push(self.omega(t));
            t += 1;
        }
        out
    }

    /// `℧_0 = G ⊇ ℧_1 ⊇ ...` down to the first trivial term.
    pub fn agemo_series(&self) -> Vec<Subgroup> {
        let mut out = vec![self.whole()];
        let mut t = 1;
        while out.last().unwrap().order() > 1 {
            out.push(self.agemo(t));
            t += 1;
        }
        out
    }

    /// Jennings series `D_1 = G ⊇ D_2 ⊇ ...` from
    /// `D_n = ∏_{i p^j ≥ n} ℧_j(γ_i)`, ending with the first trivial term.
    pub fn jennings_series(&self) -> Vec<Subgroup> {
        let lcs = self.lower_central_series();
        let p = self.p() as usize;
        let mut cache: HashMap<(usize, u32), Subgroup> = HashMap::new();
        let mut out = Vec::new();
        let mut n = 1usize;
        loop {
            let mut parts = Vec::new();
            for (k, gamma) in lcs.iter().enumerate() {
                let i = k + 1;
                if gamma.is_trivial() {
                    break;
                }
                // the smallest j with i p^j >= n gives the largest factor
                let mut j = 0u32;
                while i * p.pow(j) < n {
                    j += 1;
                }
                let part = cache
                    .entry((k, j))
                    .or_insert_with(|| self.agemo_of(gamma, j))
                    .clone();
                parts.push(part);
            }
            let d = self.join_all(parts.iter());
            let done = d.is_trivial();
            out.push(d);
            if done {
                return out;
            }
            n += 1;
        }
    }

    /// `D_n` for `n ≥ 1`; trivial beyond the end of the series.
    pub fn jennings_term(series: &[Subgroup], n: usize) -> &Subgroup {
        let last = series.len() - 1;
        &series[(n.max(1) - 1).min(last)]
    }
}
