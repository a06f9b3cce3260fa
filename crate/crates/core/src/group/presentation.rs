//! Power-commutator presentations.
//!
//! Text format, one statement per line (blank lines and `#` comments are
//! ignored):
//!
//! ```text
//! p 2
//! gens 2
//! order 1 2
//! order 2 4
//! comm 2 1 = g2^2
//! ```
//!
//! `pow i = w` sets `g_i^(m_i) = w` and `comm j i = w` (with `j > i`) sets
//! `[g_j, g_i] = g_j^-1 g_i^-1 g_j g_i = w`. Both words must only involve
//! generators after `g_i`. Omitted relations are trivial.
//!
//! Tables are built as a chain of cyclic extensions from `g_d` upwards: the
//! elements of `G_i = ⟨g_i, ..., g_d⟩` are `g_i^a x` with `x ∈ G_(i+1)`,
//! stored at index `a |G_(i+1)| + idx(x)`.

use std::collections::BTreeMap;
use std::fmt;

use super::{check_cap, check_prime, is_power_of, FiniteGroup, GroupError, Provenance, Result};

/// A word `g_(i1)^(k1) * g_(i2)^(k2) * ...` with 0-based generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<(usize, i64)>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&(_, k)| k == 0)
    }

    fn min_gen(&self) -> Option<usize> {
        self.0
            .iter()
            .filter(|&&(_, k)| k != 0)
            .map(|&(g, _)| g)
            .min()
    }

    fn shifted(&self, by: usize) -> Word {
        Word(self.0.iter().map(|&(g, k)| (g + by, k)).collect())
    }

    fn parse(s: &str, ngens: usize, line: usize) -> Result<Word> {
        let err = |msg: String| GroupError::PresentationSyntax { line, msg };
        let s = s.trim();
        if s == "1" {
            return Ok(Word::one());
        }
        let mut out = Vec::new();
        for factor in s.split('*') {
            let factor = factor.trim();
            let rest = factor
                .strip_prefix('g')
                .ok_or_else(|| err(format!("expected a factor g<i>^<k>, found {factor:?}")))?;
            let (idx, exp) = match rest.split_once('^') {
                Some((a, b)) => (a, b.trim()),
                None => (rest, "1"),
            };
            let i: usize = idx
                .trim()
                .parse()
                .map_err(|_| err(format!("bad generator index in {factor:?}")))?;
            if i == 0 || i > ngens {
                return Err(err(format!("generator g{i} out of range 1..={ngens}")));
            }
            let k: i64 = exp
                .parse()
                .map_err(|_| err(format!("bad exponent in {factor:?}")))?;
            out.push((i - 1, k));
        }
        Ok(Word(out))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .filter(|&&(_, k)| k != 0)
            .map(|&(g, k)| format!("g{}^{}", g + 1, k))
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A single defining relation, 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PcRelation {
    Power { i: usize, word: Word },
    Commutator { j: usize, i: usize, word: Word },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    p: u8,
    /// relative orders `m_i = p^(e_i)`
    orders: Vec<usize>,
    pows: Vec<Word>,
    /// keyed by `(j, i)` with `j > i`
    comms: BTreeMap<(usize, usize), Word>,
}

impl PcPresentation {
    pub fn new(p: u64, orders: Vec<usize>) -> Result<Self> {
        let p = check_prime(p)?;
        for &m in &orders {
            if m < p as usize || !is_power_of(m, p) {
                return Err(GroupError::InconsistentPresentation(format!(
                    "relative order {m} is not a positive power of {p}"
                )));
            }
        }
        let d = orders.len();
        Ok(PcPresentation {
            p,
            orders,
            pows: vec![Word::one(); d],
            comms: BTreeMap::new(),
        })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn num_gens(&self) -> usize {
        self.orders.len()
    }

    pub fn relative_orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn relations(&self) -> Vec<PcRelation> {
        let mut out = Vec::new();
        for (i, w) in self.pows.iter().enumerate() {
            if !w.is_one() {
                out.push(PcRelation::Power { i, word: w.clone() });
            }
        }
        for (&(j, i), w) in &self.comms {
            if !w.is_one() {
                out.push(PcRelation::Commutator {
                    j,
                    i,
                    word: w.clone(),
                });
            }
        }
        out
    }

    pub fn group_order(&self) -> u64 {
        self.orders.iter().map(|&m| m as u64).product()
    }

    /// Sets `g_i^(m_i) = word` (0-based `i`).
    pub fn set_power(&mut self, i: usize, word: Word) -> Result<()> {
        self.check_tail(i, &word)?;
        self.pows[i] = word;
        Ok(())
    }

    /// Sets `[g_j, g_i] = word` (0-based, `j > i`).
    pub fn set_commutator(&mut self, j: usize, i: usize, word: Word) -> Result<()> {
        if j <= i || j >= self.num_gens() {
            return Err(GroupError::InconsistentPresentation(format!(
                "commutator relation [g{}, g{}] needs the first index larger",
                j + 1,
                i + 1
            )));
        }
        self.check_tail(i, &word)?;
        self.comms.insert((j, i), word);
        Ok(())
    }

    fn check_tail(&self, i: usize, word: &Word) -> Result<()> {
        if i >= self.num_gens() {
            return Err(GroupError::InconsistentPresentation(format!(
                "no generator g{}",
                i + 1
            )));
        }
        if let Some(g) = word.min_gen() {
            if g <= i {
                return Err(GroupError::InconsistentPresentation(format!(
                    "relation for g{} uses g{}; only later generators are allowed",
                    i + 1,
                    g + 1
                )));
            }
        }
        if word.0.iter().any(|&(g, _)| g >= self.num_gens()) {
            return Err(GroupError::InconsistentPresentation(
                "word uses an unknown generator".into(),
            ));
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let syntax = |line: usize, msg: &str| GroupError::PresentationSyntax {
            line,
            msg: msg.to_string(),
        };

        let (ln, l) = lines
            .next()
            .ok_or_else(|| syntax(1, "empty presentation"))?;
        let p: u64 = l
            .strip_prefix("p ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| syntax(ln, "expected `p <prime>`"))?;
        let p8 = check_prime(p)?;
        let (ln, l) = lines
            .next()
            .ok_or_else(|| syntax(ln + 1, "expected `gens <d>`"))?;
        let d: usize = l
            .strip_prefix("gens ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| syntax(ln, "expected `gens <d>`"))?;

        let mut orders: Vec<Option<usize>> = vec![None; d];
        let mut pows = Vec::new();
        let mut comms = Vec::new();
        for (ln, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            let gen = |s: &str| -> Result<usize> {
                match s.parse::<usize>() {
                    Ok(i) if i >= 1 && i <= d => Ok(i - 1),
                    _ => Err(syntax(ln, &format!("bad generator index {s:?}"))),
                }
            };
            match toks.first().copied() {
                Some("order") if toks.len() == 3 => {
                    let i = gen(toks[1])?;
                    let m: usize = toks[2]
                        .parse()
                        .map_err(|_| syntax(ln, "bad relative order"))?;
                    if orders[i].replace(m).is_some() {
                        return Err(syntax(ln, "duplicate order line"));
                    }
                }
                Some("pow") => {
                    let (lhs, rhs) = l
                        .split_once('=')
                        .ok_or_else(|| syntax(ln, "expected `pow <i> = <word>`"))?;
                    let lt: Vec<&str> = lhs.split_whitespace().collect();
                    if lt.len() != 2 {
                        return Err(syntax(ln, "expected `pow <i> = <word>`"));
                    }
                    pows.push((ln, gen(lt[1])?, Word::parse(rhs, d, ln)?));
                }
                Some("comm") => {
                    let (lhs, rhs) = l
                        .split_once('=')
                        .ok_or_else(|| syntax(ln, "expected `comm <j> <i> = <word>`"))?;
                    let lt: Vec<&str> = lhs.split_whitespace().collect();
                    if lt.len() != 3 {
                        return Err(syntax(ln, "expected `comm <j> <i> = <word>`"));
                    }
                    comms.push((ln, gen(lt[1])?, gen(lt[2])?, Word::parse(rhs, d, ln)?));
                }
                _ => return Err(syntax(ln, &format!("unrecognised statement {l:?}"))),
            }
        }
        let orders: Vec<usize> = orders
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| syntax(0, &format!("missing `order {} ...` line", i + 1)))
            })
            .collect::<Result<_>>()?;
        let mut pc = PcPresentation::new(p8 as u64, orders)?;
        for (ln, i, w) in pows {
            pc.set_power(i, w).map_err(|e| syntax(ln, &e.to_string()))?;
        }
        for (ln, j, i, w) in comms {
            pc.set_commutator(j, i, w)
                .map_err(|e| syntax(ln, &e.to_string()))?;
        }
        Ok(pc)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("p {}\ngens {}\n", self.p, self.num_gens());
        for (i, m) in self.orders.iter().enumerate() {
            s += &format!("order {} {}\n", i + 1, m);
        }
        for rel in self.relations() {
            match rel {
                PcRelation::Power { i, word } => s += &format!("pow {} = {}\n", i + 1, word),
                PcRelation::Commutator { j, i, word } => {
                    s += &format!("comm {} {} = {}\n", j + 1, i + 1, word)
                }
            }
        }
        s
    }

    /// Presentation of the direct product: generators of `self` first.
    pub fn direct_product(&self, other: &PcPresentation) -> Result<PcPresentation> {
        if self.p != other.p {
            return Err(GroupError::PrimeMismatch(self.p, other.p));
        }
        let shift = self.num_gens();
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        let mut pc = PcPresentation::new(self.p as u64, orders)?;
        pc.pows = self.pows.clone();
        pc.pows.extend(other.pows.iter().map(|w| w.shifted(shift)));
        pc.comms = self.comms.clone();
        for (&(j, i), w) in &other.comms {
            pc.comms.insert((j + shift, i + shift), w.shifted(shift));
        }
        Ok(pc)
    }

    /// Builds the multiplication table; fails if the relations are inconsistent.
    pub fn to_group(&self) -> Result<FiniteGroup> {
        check_cap(self.p, self.group_order())?;
        let d = self.num_gens();
        let mut layer = CyclicLayer::trivial();
        for i in (0..d).rev() {
            layer = layer.extend(self, i)?;
        }
        let n = layer.order;
        let g = FiniteGroup::assemble(self.p, n, layer.mul, Provenance::Presentation(self.clone()));
        g.check_associative()
            .map_err(|e| GroupError::InconsistentPresentation(e.to_string()))?;
        for x in 0..n {
            let o = g.element_order(x);
            if !is_power_of(o, self.p) {
                return Err(GroupError::InconsistentPresentation(format!(
                    "element {x} has order {o}"
                )));
            }
        }
        Ok(g)
    }

    /// Index of generator `g_k` (0-based) in any layer containing it.
    pub fn generator_index(&self, k: usize) -> usize {
        self.orders[k + 1..].iter().product()
    }
}

/// The group `⟨g_i, ..., g_d⟩` under construction.
struct CyclicLayer {
    order: usize,
    mul: Vec<u16>,
}

impl CyclicLayer {
    fn trivial() -> Self {
        CyclicLayer {
            order: 1,
            mul: vec![0],
        }
    }

    fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    fn inv(&self, a: usize) -> usize {
        (0..self.order).find(|&b| self.m(a, b) == 0).unwrap()
    }

    fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut x = 0;
        for _ in 0..k.unsigned_abs() {
            x = self.m(x, base);
        }
        x
    }

    fn eval(&self, pc: &PcPresentation, w: &Word) -> usize {
        w.0.iter().fold(0, |acc, &(g, k)| {
            self.m(acc, self.pow(pc.generator_index(g), k))
        })
    }

    /// Adjoins `g_i` on top of this layer (which is `⟨g_(i+1), ..., g_d⟩`).
    fn extend(self, pc: &PcPresentation, i: usize) -> Result<CyclicLayer> {
        let bad = |msg: String| GroupError::InconsistentPresentation(msg);
        let k = self.order;
        let m = pc.orders[i];
        let d = pc.num_gens();
        let z = self.eval(pc, &pc.pows[i]);

        // σ(x) = g_i^-1 x g_i, fixed on generators by σ(g_j) = g_j [g_j, g_i]
        let gen_images: Vec<usize> = (i + 1..d)
            .map(|j| {
                let w = pc.comms.get(&(j, i)).cloned().unwrap_or_default();
                self.m(pc.generator_index(j), self.eval(pc, &w))
            })
            .collect();
        let mut sigma = vec![0usize; k];
        for (x, slot) in sigma.iter_mut().enumerate() {
            // normal-form digits of x, most significant generator first
            let mut rest = x;
            let mut img = 0;
            for (off, j) in (i + 1..d).enumerate() {
                let below = pc.generator_index(j);
                let a = rest / below;
                rest %= below;
                img = self.m(img, self.pow(gen_images[off], a as i64));
            }
            *slot = img;
        }
        let mut seen = vec![false; k];
        for &y in &sigma {
            if seen[y] {
                return Err(bad(format!("conjugation by g{} is not injective", i + 1)));
            }
            seen[y] = true;
        }
        for a in 0..k {
            for b in 0..k {
                if sigma[self.m(a, b)] != self.m(sigma[a], sigma[b]) {
                    return Err(bad(format!(
                        "conjugation by g{} does not respect the relations below it",
                        i + 1
                    )));
                }
            }
        }
        if sigma[z] != z {
            return Err(bad(format!(
                "g{} does not commute with its own power",
                i + 1
            )));
        }
        let mut powers = vec![(0..k).collect::<Vec<usize>>()];
        for b in 1..=m {
            let prev = &powers[b - 1];
            powers.push(prev.iter().map(|&x| sigma[x]).collect());
        }
        let zi = self.inv(z);
        for x in 0..k {
            if powers[m][x] != self.m(self.m(zi, x), z) {
                return Err(bad(format!(
                    "the power relation of g{} disagrees with its conjugation action",
                    i + 1
                )));
            }
        }

        let n = m * k;
        let mut mul = vec![0u16; n * n];
        for a in 0..m {
            for x in 0..k {
                let row = (a * k + x) * n;
                for b in 0..m {
                    let sx = powers[b][x];
                    let (c, carry) = if a + b >= m {
                        (a + b - m, true)
                    } else {
                        (a + b, false)
                    };
                    let lead = if carry { self.m(z, sx) } else { sx };
                    for y in 0..k {
                        mul[row + b * k + y] = (c * k + self.m(lead, y)) as u16;
                    }
                }
            }
        }
        Ok(CyclicLayer { order: n, mul })
    }
}

impl FiniteGroup {
    pub fn from_pc_presentation(pc: &PcPresentation) -> Result<FiniteGroup> {
        pc.to_group()
    }

    /// Evaluates a word in the generators of the group's own presentation.
    pub fn eval_word(&self, word: &Word) -> Option<usize> {
        match self.provenance() {
            Provenance::Presentation(pc) => Some(word.0.iter().fold(0, |acc, &(g, k)| {
                self.mul(acc, self.pow(pc.generator_index(g), k))
            })),
            _ => None,
        }
    }
}
