//! Group arguments: a catalog name, `@file.pcp` or `@file.mul`.

use std::fs;
use std::path::Path;

use mipkit::catalog;
use mipkit::group::{order_cap, FiniteGroup, PcPresentation};
use serde::Serialize;

use crate::failure::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Catalog,
    Pcp,
    Mul,
}

pub struct Input {
    pub arg: String,
    pub source: Source,
    pub group: FiniteGroup,
    /// presentation text, or the normalized table for `.mul` input
    pub bytes: Vec<u8>,
    pub presentation: Option<PcPresentation>,
}

#[derive(Serialize)]
pub struct InputInfo<'a> {
    pub arg: &'a str,
    pub order: usize,
    pub p: u8,
    pub source: Source,
}

impl Input {
    pub fn info(&self) -> InputInfo<'_> {
        InputInfo {
            arg: &self.arg,
            order: self.group.order(),
            p: self.group.p(),
            source: self.source,
        }
    }
}

fn check_order(p: u8, order: u64) -> Result<(), Failure> {
    let cap = order_cap(p) as u64;
    if order > cap {
        return Err(Failure::cap(format!(
            "group order {order} exceeds the cap {cap} for p = {p}"
        )));
    }
    Ok(())
}

fn from_presentation(arg: &str, source: Source, pc: PcPresentation) -> Result<Input, Failure> {
    check_order(pc.p(), pc.group_order())?;
    let group = pc.to_group()?;
    Ok(Input {
        arg: arg.to_string(),
        source,
        group,
        bytes: pc.to_text().into_bytes(),
        presentation: Some(pc),
    })
}

/// The prime `p` with `n = p^k`, `k >= 1`, among the supported primes.
fn infer_prime(n: usize) -> Option<u8> {
    [2u8, 3, 5, 7].into_iter().find(|&p| {
        let mut m = n;
        while m > 1 && m.is_multiple_of(p as usize) {
            m /= p as usize;
        }
        n > 1 && m == 1
    })
}

pub fn parse_mul(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut table = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Failure::parse(format!("row {}: {e}", i + 1)))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .map(|c| {
                c.parse::<usize>()
                    .map_err(|_| Failure::parse(format!("row {}: bad entry {c:?}", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        table.push(row);
    }
    Ok(table)
}

fn from_table(arg: &str, text: &str) -> Result<Input, Failure> {
    let table = parse_mul(text)?;
    let n = table.len();
    let p = infer_prime(n).ok_or_else(|| {
        Failure::parse(format!(
            "table has {n} rows, which is not a power of 2, 3, 5 or 7 above 1"
        ))
    })?;
    check_order(p, n as u64)?;
    let mut bytes = format!("mul {p} {n}\n").into_bytes();
    for row in &table {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        bytes.extend_from_slice(line.join(",").as_bytes());
        bytes.push(b'\n');
    }
    let group = FiniteGroup::from_table(p as u64, table)?;
    Ok(Input {
        arg: arg.to_string(),
        source: Source::Mul,
        group,
        bytes,
        presentation: None,
    })
}

pub fn resolve(arg: &str) -> Result<Input, Failure> {
    let Some(path) = arg.strip_prefix('@') else {
        let entry = catalog::lookup(arg)
            .ok_or_else(|| Failure::parse(format!("unknown catalog group {arg:?}")))?;
        return from_presentation(arg, Source::Catalog, entry.presentation);
    };
    let text =
        fs::read_to_string(path).map_err(|e| Failure::parse(format!("cannot read {path}: {e}")))?;
    match Path::new(path).extension().and_then(|e| e.to_str()) {
        Some("pcp") => from_presentation(arg, Source::Pcp, PcPresentation::parse(&text)?),
        Some("mul") => from_table(arg, &text),
        _ => Err(Failure::parse(format!(
            "{path}: expected a .pcp or .mul file"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_inferred_from_the_order() {
        assert_eq!(infer_prime(8), Some(2));
        assert_eq!(infer_prime(243), Some(3));
        assert_eq!(infer_prime(49), Some(7));
        assert_eq!(infer_prime(1), None);
        assert_eq!(infer_prime(12), None);
        assert_eq!(infer_prime(11), None);
    }

    #[test]
    fn mul_tables_parse_with_blank_lines_and_spaces() {
        let t = parse_mul("0, 1\n\n1 ,0\n").unwrap();
        assert_eq!(t, vec![vec![0, 1], vec![1, 0]]);
        assert!(parse_mul("0,x\n").is_err());
    }

    #[test]
    fn catalog_and_table_inputs_agree() {
        let d8 = resolve("D8").unwrap();
        let text: String = d8
            .group
            .table()
            .iter()
            .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(",") + "\n")
            .collect();
        let t = from_table("@d8.mul", &text).unwrap();
        assert_eq!(t.group, d8.group);
        assert!(resolve("D8xQ9").is_err());
    }
}
