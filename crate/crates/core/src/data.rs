//! Bundled codes.

use crate::classify::first_neighbor;
use crate::error::{Error, Result};
use crate::f4::{b_map, AdditiveF4Code};
use crate::gf2::BitMatrix;
use crate::selfdual::{doubly_even_neighbors, SelfDualCode};
use crate::z4::Z4Code;

pub const C10_TEXT: &str = include_str!("../data/c10.f4");
pub const EXTREMAL10_TEXT: &str = include_str!("../data/extremal10.f4");
pub const D1_TEXT: &str = include_str!("../data/d1.z4");

/// The extremal even self-dual additive code of length 10 whose image
/// carries a T-decomposition with ten tetrads.
pub fn c10() -> AdditiveF4Code {
    AdditiveF4Code::parse_text(C10_TEXT).expect("bundled c10.f4 parses")
}

/// One representative per class of extremal even self-dual additive codes of
/// length 10, with the automorphism group order recorded in the file.
pub fn extremal10() -> Vec<(u64, AdditiveF4Code)> {
    parse_code_list(EXTREMAL10_TEXT).expect("bundled extremal10.f4 parses")
}

/// Split a file holding several `f4additive` blocks, each optionally preceded
/// by `# aut <order>`; missing orders are reported as 0.
pub fn parse_code_list(text: &str) -> Result<Vec<(u64, AdditiveF4Code)>> {
    let mut out = Vec::new();
    let mut aut = 0u64;
    let mut block: Option<String> = None;
    let flush = |block: &mut Option<String>, aut: u64, out: &mut Vec<(u64, AdditiveF4Code)>| -> Result<()> {
        if let Some(b) = block.take() {
            out.push((aut, AdditiveF4Code::parse_text(&b)?));
        }
        Ok(())
    };
    for line in text.lines() {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix("# aut") {
            flush(&mut block, aut, &mut out)?;
            aut = rest.trim().parse().map_err(|_| Error::parse(0, format!("bad order in {t:?}")))?;
        } else if t.starts_with("f4additive") {
            if block.is_some() {
                flush(&mut block, aut, &mut out)?;
                aut = 0;
            }
            block = Some(format!("{t}\n"));
        } else if let Some(b) = block.as_mut() {
            b.push_str(t);
            b.push('\n');
        }
    }
    flush(&mut block, aut, &mut out)?;
    Ok(out)
}

/// The Type I Z4-code of length 40 with `k1 = 10`, `k2 = 20`.
pub fn d1() -> Z4Code {
    Z4Code::parse_text(D1_TEXT).expect("bundled d1.z4 parses")
}

/// The [8,4,4] extended Hamming code.
pub fn hamming8() -> BitMatrix {
    BitMatrix::from_strs(&["11110000", "00111100", "00001111", "01010101"]).expect("valid rows")
}

/// The extremal singly even [40,20,8] code with shadow profile beta = 10,
/// built from the B-map image of [`c10`].
pub fn beta10_code() -> Result<SelfDualCode> {
    first_neighbor(&b_map(&c10())?, 10)
}

/// An extremal doubly even [40,20,8] code: the neighbor of [`beta10_code`]
/// without weight-4 words.
pub fn extremal_doubly_even_40() -> Result<SelfDualCode> {
    let (a, b) = doubly_even_neighbors(&beta10_code()?)?;
    for c in [a, b] {
        if c.minimum_weight()? == 8 {
            return Ok(c);
        }
    }
    Err(Error::ProfileMismatch("no extremal doubly even neighbor".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::z4::{z4_self_dual_check, Z4Type};

    #[test]
    fn bundled_files_parse() {
        assert_eq!(c10().n(), 10);
        let list = extremal10();
        assert_eq!(list.len(), 19);
        assert!(list.iter().all(|(a, c)| *a > 0 && c.is_even_self_dual()));
        let d = d1();
        assert_eq!((d.n(), d.k1(), d.k2()), (40, 10, 20));
        assert_eq!(z4_self_dual_check(&d), Z4Type::TypeI);
    }

    #[test]
    fn extremal_40() {
        let c = extremal_doubly_even_40().unwrap();
        assert!(c.is_doubly_even());
        let w = c.weight_distribution().unwrap();
        assert_eq!(w.min_weight(), Some(8));
        assert_eq!(w.count(8), 285);
    }
}
