//! Built-in small p-groups given by power-commutator presentations.
//!
//! Names are products of base names joined by `x`, e.g. `D8xC4xC2`; the
//! presentation of a product lists the generators of each factor in order.

use serde::Serialize;

use crate::group::{FiniteGroup, GroupError, PcPresentation};

/// Base groups: name and presentation text.
const BASE: &[(&str, &str)] = &[
    ("D8", "p 2\ngens 2\norder 1 2\norder 2 4\ncomm 2 1 = g2^2\n"),
    (
        "Q8",
        "p 2\ngens 2\norder 1 2\norder 2 4\npow 1 = g2^2\ncomm 2 1 = g2^2\n",
    ),
    (
        "D16",
        "p 2\ngens 2\norder 1 2\norder 2 8\ncomm 2 1 = g2^6\n",
    ),
    (
        "Q16",
        "p 2\ngens 2\norder 1 2\norder 2 8\npow 1 = g2^4\ncomm 2 1 = g2^6\n",
    ),
    (
        "SD16",
        "p 2\ngens 2\norder 1 2\norder 2 8\ncomm 2 1 = g2^2\n",
    ),
    (
        "M16",
        "p 2\ngens 2\norder 1 2\norder 2 8\ncomm 2 1 = g2^4\n",
    ),
    (
        "Heis27",
        "p 3\ngens 3\norder 1 3\norder 2 3\norder 3 3\ncomm 2 1 = g3^1\n",
    ),
    (
        "M27",
        "p 3\ngens 3\norder 1 3\norder 2 3\norder 3 3\npow 2 = g3^1\ncomm 2 1 = g3^1\n",
    ),
];

/// Facts a catalog group must satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub order: usize,
    pub center_order: usize,
    pub derived_order: usize,
    pub exponent: usize,
    /// abelian type, present for abelian groups only
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abelian_type: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub presentation: PcPresentation,
    pub expected: Option<Expected>,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        self.presentation.to_group()
    }

    /// Checks every expected fact; returns the failed ones by name.
    pub fn check(&self) -> Result<Vec<String>, GroupError> {
        let g = self.build()?;
        let Some(exp) = &self.expected else {
            return Ok(Vec::new());
        };
        let mut failed = Vec::new();
        if g.order() != exp.order {
            failed.push(format!("order {} != {}", g.order(), exp.order));
        }
        let z = g.center().order();
        if z != exp.center_order {
            failed.push(format!("center order {z} != {}", exp.center_order));
        }
        let d = g.derived_subgroup().order();
        if d != exp.derived_order {
            failed.push(format!("derived order {d} != {}", exp.derived_order));
        }
        if g.exponent() != exp.exponent {
            failed.push(format!("exponent {} != {}", g.exponent(), exp.exponent));
        }
        if let Some(t) = &exp.abelian_type {
            match g.abelian_type() {
                Ok(a) if a.orders() == t.as_slice() => {}
                Ok(a) => failed.push(format!("abelian type {a} != {t:?}")),
                Err(_) => failed.push("expected abelian".into()),
            }
        }
        Ok(failed)
    }
}

fn cyclic(p: u8, n: usize) -> PcPresentation {
    PcPresentation::new(p as u64, vec![n]).expect("cyclic presentation")
}

fn base_presentation(name: &str) -> Option<PcPresentation> {
    if let Some((_, text)) = BASE.iter().find(|(n, _)| *n == name) {
        return Some(PcPresentation::parse(text).expect("built-in presentation parses"));
    }
    let n: usize = name.strip_prefix('C')?.parse().ok()?;
    let p = [2u8, 3, 5, 7]
        .into_iter()
        .find(|&p| n > 1 && crate::group::is_power_of(n, p))?;
    Some(cyclic(p, n))
}

/// Presentation for any product of base names, or `None` if a factor is unknown
/// or the factors are over different primes.
pub fn presentation_for(name: &str) -> Option<PcPresentation> {
    let mut parts = name.split('x');
    let mut pc = base_presentation(parts.next()?)?;
    for part in parts {
        pc = pc.direct_product(&base_presentation(part)?).ok()?;
    }
    Some(pc)
}

fn expected(order: usize, center: usize, derived: usize, exponent: usize) -> Option<Expected> {
    Some(Expected {
        order,
        center_order: center,
        derived_order: derived,
        exponent,
        abelian_type: None,
    })
}

fn abelian(orders: &[usize]) -> Option<Expected> {
    let order = orders.iter().product();
    Some(Expected {
        order,
        center_order: order,
        derived_order: 1,
        exponent: orders[0],
        abelian_type: Some(orders.to_vec()),
    })
}

/// The built-in catalog, in a fixed order.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    let entries: Vec<(&str, Option<Expected>)> = vec![
        ("C2", abelian(&[2])),
        ("C4", abelian(&[4])),
        ("C8", abelian(&[8])),
        ("C16", abelian(&[16])),
        ("C2xC2", abelian(&[2, 2])),
        ("C4xC2", abelian(&[4, 2])),
        ("C2xC2xC2", abelian(&[2, 2, 2])),
        ("C4xC4", abelian(&[4, 4])),
        ("C8xC2", abelian(&[8, 2])),
        ("C4xC2xC2", abelian(&[4, 2, 2])),
        ("C2xC2xC2xC2", abelian(&[2, 2, 2, 2])),
        ("D8", expected(8, 2, 2, 4)),
        ("Q8", expected(8, 2, 2, 4)),
        ("D16", expected(16, 2, 4, 8)),
        ("Q16", expected(16, 2, 4, 8)),
        ("SD16", expected(16, 2, 4, 8)),
        ("M16", expected(16, 4, 2, 8)),
        ("D8xC2", expected(16, 4, 2, 4)),
        ("Q8xC2", expected(16, 4, 2, 4)),
        ("D8xC4", expected(32, 8, 2, 4)),
        ("Q8xC4", expected(32, 8, 2, 4)),
        ("D8xC4xC2", expected(64, 16, 2, 4)),
        ("Q8xC4xC2", expected(64, 16, 2, 4)),
        ("C3", abelian(&[3])),
        ("C9", abelian(&[9])),
        ("C27", abelian(&[27])),
        ("C3xC3", abelian(&[3, 3])),
        ("C9xC3", abelian(&[9, 3])),
        ("C3xC3xC3", abelian(&[3, 3, 3])),
        ("Heis27", expected(27, 3, 3, 3)),
        ("M27", expected(27, 3, 3, 9)),
        ("Heis27xC3", expected(81, 9, 3, 3)),
        ("Heis27xC9", expected(243, 27, 3, 9)),
        ("M27xC3", expected(81, 9, 3, 9)),
        ("M27xC9", expected(243, 27, 3, 9)),
    ];
    entries
        .into_iter()
        .map(|(name, expected)| CatalogEntry {
            name: name.to_string(),
            presentation: presentation_for(name).expect("catalog names resolve"),
            expected,
        })
        .collect()
}

/// Catalog entry by name; products of base names outside the list resolve
/// without expected facts.
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    if let Some(e) = builtin_catalog().into_iter().find(|e| e.name == name) {
        return Some(e);
    }
    Some(CatalogEntry {
        name: name.to_string(),
        presentation: presentation_for(name)?,
        expected: None,
    })
}

/// Builds a catalog group by name; panics on unknown names.
pub fn group(name: &str) -> FiniteGroup {
    lookup(name)
        .unwrap_or_else(|| panic!("unknown catalog group {name}"))
        .build()
        .unwrap_or_else(|e| panic!("catalog group {name} fails to build: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_passes_its_self_test() {
        for e in builtin_catalog() {
            let failed = e.check().unwrap();
            assert!(failed.is_empty(), "{}: {failed:?}", e.name);
        }
    }

    #[test]
    fn product_names_resolve() {
        let g = group("D8xC2xC2");
        assert_eq!(g.order(), 32);
        assert!(lookup("D8xC3").is_none());
        assert!(lookup("Foo").is_none());
        assert_eq!(group("C25").order(), 25);
    }

    #[test]
    fn export_parses_back() {
        for e in builtin_catalog() {
            let text = e.presentation.to_text();
            assert_eq!(
                PcPresentation::parse(&text).unwrap(),
                e.presentation,
                "{}",
                e.name
            );
        }
    }
}
