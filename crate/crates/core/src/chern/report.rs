use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde_json::{json, Value};

use super::class::CobordismClass;
use super::numbers::{lcm_bound, partition_refinements, rational_obstruction};
use crate::exactlin::Partition;

/// Which sections the class carries rationally, which are certified integrally, and the fallback multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionReport {
    pub d: u32,
    pub rational_max_r: u32,
    pub guaranteed_r: u32,
    pub certificate: &'static str,
    /// `None` when some needed `a_j` is not an integer; see `multiplier_error`.
    pub multiplier: Option<BigInt>,
    pub multiplier_error: Option<String>,
    /// Maximal product types used for the multiplier.
    pub leading: Vec<Partition>,
    /// Failing partitions for each `r` where the rational test fails.
    pub witnesses: Vec<(u32, Vec<Partition>)>,
}

/// Integral certificate for `r` sections on a class of dimension `d` with vanishing rational obstruction.
pub fn certify(d: u32, r: u32, rationally_zero: bool) -> Option<&'static str> {
    // odd torsion vanishes for r < p^2 - p, and p^2 - p >= 6 for odd p
    let odd_ok = r < 6;
    if r == 0 {
        Some("no sections requested")
    } else if r == d && rationally_zero {
        Some("class is zero")
    } else if r + 1 == d {
        Some("no differentials off the bottom row for MTU(1): d-1 sections")
    } else if odd_ok && r <= 3 && d >= 6 {
        Some("no torsion obstruction to 2 or 3 sections for d >= 6")
    } else if odd_ok && r == 4 && d % 2 == 1 && d > 6 {
        Some("no torsion obstruction to 4 sections for odd d > 6")
    } else {
        None
    }
}

pub fn section_report(c: &CobordismClass) -> SectionReport {
    let d = c.dim();
    let mut rational_max_r = 0;
    let mut witnesses = Vec::new();
    for r in 1..=d {
        let o = rational_obstruction(c, r).expect("r <= d");
        if o.vanishes {
            if witnesses.is_empty() {
                rational_max_r = r;
            }
        } else {
            witnesses.push((r, o.witnesses));
        }
    }
    let (guaranteed_r, certificate) = (0..=rational_max_r)
        .rev()
        .find_map(|r| certify(d, r, c.is_zero()).map(|why| (r, why)))
        .expect("r = 0 is always certified");

    let leading = leading_types(c);
    let (multiplier, multiplier_error) = if guaranteed_r == rational_max_r {
        (Some(BigInt::one()), None)
    } else {
        let mut m = BigInt::one();
        let mut err = None;
        for i in &leading {
            match lcm_bound(i, rational_max_r) {
                Ok(b) => m = m.lcm(&b.multiplier),
                Err(e) => {
                    err = Some(e.to_string());
                    break;
                }
            }
        }
        match err {
            None => (Some(m), None),
            Some(e) => (None, Some(e)),
        }
    };
    SectionReport {
        d,
        rational_max_r,
        guaranteed_r,
        certificate,
        multiplier,
        multiplier_error,
        leading,
        witnesses,
    }
}

/// Product types with nonzero coefficient that are not a proper refinement of another such type.
fn leading_types(c: &CobordismClass) -> Vec<Partition> {
    let present: Vec<&Partition> = c.terms().keys().collect();
    let mut out: Vec<Partition> = present
        .iter()
        .filter(|i| {
            !present
                .iter()
                .any(|j| j != *i && partition_refinements(j).contains(i))
        })
        .map(|i| (*i).clone())
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

impl SectionReport {
    pub fn to_json_value(&self) -> Value {
        let parts = |v: &[Partition]| v.iter().map(|p| json!(p.parts())).collect::<Vec<_>>();
        json!({
            "d": self.d,
            "rational_max_r": self.rational_max_r,
            "guaranteed_r": self.guaranteed_r,
            "certificate": self.certificate,
            "multiplier": self.multiplier.as_ref().map(|m| m.to_string()),
            "multiplier_error": self.multiplier_error,
            "a_convention": "(d+1)!/|B_2d|, divided by p when d+1 = p^i; B_1 = -1/2",
            "leading": parts(&self.leading),
            "witnesses": self.witnesses.iter().map(|(r, w)| json!({"r": r, "partitions": parts(w)})).collect::<Vec<_>>(),
        })
    }
}
