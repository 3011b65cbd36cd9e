//! The embedded corpus: the five principal bigraph pairs with index strictly
//! between 4 and 5, and the seven pairs at index exactly 5. Each entry
//! carries its exact index and the printed decimal.

use crate::bigraph::BigraphPair;
use crate::obstructions::{run_suite, suite_passes, SuiteOptions, TestKind};
use crate::poly::IntPoly;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Constructed,
    Candidate,
}

#[derive(Debug, Clone)]
pub struct AtlasEntry {
    pub name: &'static str,
    pub pair: &'static str,
    pub exact_index: &'static str,
    pub index_decimal: &'static str,
    /// Minimal polynomial of the index, constant term first.
    pub index_minpoly: &'static [i64],
    pub status: Status,
}

pub const HAAGERUP: &str =
    "bwd1v1v1v1p1v1x0p0x1v1x0p0x1duals1v1v1x2v2x1,bwd1v1v1v1p1v1x0p1x0duals1v1v1x2";
pub const EXTENDED_HAAGERUP: &str =
    "bwd1v1v1v1v1v1v1v1p1v1x0p0x1v1x0p0x1duals1v1v1v1v1x2v2x1,bwd1v1v1v1v1v1v1v1p1v1x0p1x0duals1v1v1v1v1x2";
pub const ASAEDA_HAAGERUP: &str =
    "bwd1v1v1v1v1v1p1v1x0p0x1v1x0p0x1p0x1v1x0x0v1duals1v1v1v1x2v2x1x3v1,bwd1v1v1v1v1v1p1v0x1p0x1v0x1v1duals1v1v1v1x2v1";
pub const GHJ_3311: &str =
    "bwd1v1v1v1p1p1v1x0x0v1duals1v1v1x2x3v1,bwd1v1v1v1p1p1v1x0x0v1duals1v1v1x2x3v1";
pub const IZUMI_2221: &str =
    "bwd1v1v1p1p1v1x0x0p0x1x0duals1v1v2x1,bwd1v1v1p1p1v1x0x0p0x1x0duals1v1v2x1";

pub const INDEX5_Z5: &str = "bwd1v1p1p1p1duals1v2x1x4x3,bwd1v1p1p1p1duals1v2x1x4x3";
pub const INDEX5_Z2_D10: &str = "bwd1v1p1v1x1v1duals1v1x2v1,bwd1v1p1v1x1v1duals1v1x2v1";
pub const INDEX5_Z4_F20: &str =
    "bwd1v1v1p1p1v1x0x0p0x1x0p0x0x1duals1v1v2x1x3,bwd1v1v1p1p1v1x0x0p0x1x0p0x0x1duals1v1v2x1x3";
pub const INDEX5_A4_A5: &str =
    "bwd1v1v1v1p1p1v0x0x1p0x0x1duals1v1v1x2x3,bwd1v1v1v1p1p1v0x1x0p0x0x1v1x0p0x1duals1v1v1x2x3v2x1";
pub const INDEX5_A4_A5_DUAL: &str =
    "bwd1v1v1v1p1p1v0x1x0p0x0x1v1x0p0x1duals1v1v1x2x3v2x1,bwd1v1v1v1p1p1v0x0x1p0x0x1duals1v1v1x2x3";
pub const INDEX5_S4_S5: &str =
    "bwd1v1v1v1p1v1x0p0x1v1x0p1x1v1x0v1duals1v1v1x2v1x2v1,bwd1v1v1v1p1v0x1p0x1v1x0p1x0p0x1v0x1x0v1duals1v1v1x2v1x2x3v1";
pub const INDEX5_S4_S5_DUAL: &str =
    "bwd1v1v1v1p1v0x1p0x1v1x0p1x0p0x1v0x1x0v1duals1v1v1x2v1x2x3v1,bwd1v1v1v1p1v1x0p0x1v1x0p1x1v1x0v1duals1v1v1x2v1x2v1";

/// The ten-planar-algebra range: one entry per bigraph pair (complex
/// conjugates and duals with identical pairs are not listed twice).
pub fn main_entries() -> Vec<AtlasEntry> {
    vec![
        AtlasEntry {
            name: "haagerup",
            pair: HAAGERUP,
            exact_index: "(5+sqrt(13))/2",
            index_decimal: "4.30278",
            index_minpoly: &[3, -5, 1],
            status: Status::Constructed,
        },
        AtlasEntry {
            name: "extended-haagerup",
            pair: EXTENDED_HAAGERUP,
            exact_index: "largest root of x^3-8x^2+17x-5",
            index_decimal: "4.37720",
            index_minpoly: &[-5, 17, -8, 1],
            status: Status::Constructed,
        },
        AtlasEntry {
            name: "asaeda-haagerup",
            pair: ASAEDA_HAAGERUP,
            exact_index: "(5+sqrt(17))/2",
            index_decimal: "4.56155",
            index_minpoly: &[2, -5, 1],
            status: Status::Constructed,
        },
        AtlasEntry {
            name: "3311-goodman-de-la-harpe-jones",
            pair: GHJ_3311,
            exact_index: "3+sqrt(3)",
            index_decimal: "4.73205",
            index_minpoly: &[6, -6, 1],
            status: Status::Constructed,
        },
        AtlasEntry {
            name: "2221-izumi",
            pair: IZUMI_2221,
            exact_index: "(5+sqrt(21))/2",
            index_decimal: "4.79129",
            index_minpoly: &[1, -5, 1],
            status: Status::Constructed,
        },
    ]
}

pub fn index5_entries() -> Vec<AtlasEntry> {
    let mk = |name: &'static str, pair: &'static str| AtlasEntry {
        name,
        pair,
        exact_index: "5",
        index_decimal: "5.00000",
        index_minpoly: &[-5, 1],
        status: Status::Constructed,
    };
    vec![
        mk("index5-z5", INDEX5_Z5),
        mk("index5-z2-in-d10", INDEX5_Z2_D10),
        mk("index5-z4-in-f20", INDEX5_Z4_F20),
        mk("index5-a4-in-a5", INDEX5_A4_A5),
        mk("index5-a4-in-a5-dual", INDEX5_A4_A5_DUAL),
        mk("index5-s4-in-s5", INDEX5_S4_S5),
        mk("index5-s4-in-s5-dual", INDEX5_S4_S5_DUAL),
    ]
}

pub fn all_entries() -> Vec<AtlasEntry> {
    let mut v = main_entries();
    v.extend(index5_entries());
    v
}

impl AtlasEntry {
    pub fn parse_pair(&self) -> BigraphPair {
        BigraphPair::parse_pair(self.pair).expect("atlas entries parse")
    }

    pub fn minpoly(&self) -> IntPoly {
        IntPoly::from_i64(self.index_minpoly)
    }

    /// Parses the pair, confirms the certified index against the stored
    /// minimal polynomial and decimal, and runs the full obstruction suite.
    pub fn validate(&self) -> Result<(), String> {
        let p = BigraphPair::parse_pair(self.pair).map_err(|e| format!("{}: {}", self.name, e))?;
        // round trip
        if p.to_string_pair() != self.pair {
            return Err(format!("{}: serialization not stable", self.name));
        }
        // certified index against the minimal polynomial
        let theta = crate::poly::AlgebraicReal::new_norm_squared(&p.gamma);
        if theta.minpoly() != &self.minpoly() {
            return Err(format!(
                "{}: index minimal polynomial {} != {}",
                self.name,
                theta.minpoly(),
                self.minpoly()
            ));
        }
        let dec: f64 = self.index_decimal.parse().unwrap();
        if (theta.to_f64() - dec).abs() > 5e-6 {
            return Err(format!("{}: index {} vs decimal {}", self.name, theta.to_f64(), dec));
        }
        let verdicts = run_suite(&p, &TestKind::ALL, SuiteOptions::default());
        if !suite_passes(&verdicts) {
            return Err(format!("{}: obstruction suite failed: {:?}", self.name, verdicts));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_entries() {
        assert_eq!(main_entries().len(), 5);
        assert_eq!(index5_entries().len(), 7);
    }

    #[test]
    fn all_parse_and_round_trip() {
        for e in all_entries() {
            let p = e.parse_pair();
            assert_eq!(p.to_string_pair(), e.pair, "{}", e.name);
        }
    }

    #[test]
    fn supertransitivities() {
        let st: Vec<(usize, &str)> = main_entries()
            .iter()
            .map(|e| (e.parse_pair().supertransitivity(), e.name))
            .collect();
        assert_eq!(st[0], (3, "haagerup"));
        assert_eq!(st[1], (7, "extended-haagerup"));
        assert_eq!(st[2], (5, "asaeda-haagerup"));
        assert_eq!(st[3], (3, "3311-goodman-de-la-harpe-jones"));
        assert_eq!(st[4], (2, "2221-izumi"));
    }
}
