use super::coaction::{CoactionMode, Comodule};
use super::family::{ComoduleSpec, Family};
use crate::bpalgebra::{Monomial, Tensor};
use crate::error::Result;

fn mono(s: &str) -> Monomial {
    Monomial::parse(s).expect("static monomial")
}

/// Compares the derived coaction with the printed one on the terms both are committed to:
/// all of `ψ(B1)`, `ψ(B2)` away from `⊗1`, the `⊗B3` and `⊗B2` terms of `ψ(B3)`, and, when `d`
/// is given, `ψ` of `B1^{d+1}`, `B2 B1^d`, `B1^{d+2}`, `v1 B1^{d+1}` in `MTUbar(d)`.
///
/// Returns one line per disagreement; only `p = 2` has printed values.
pub fn printed_cross_check(d: Option<u32>) -> Result<Vec<String>> {
    let pair = |family, bound| -> Result<(Comodule, Comodule)> {
        let spec = ComoduleSpec::new(family, 2, bound)?;
        Ok((
            Comodule::new(spec, CoactionMode::Derived)?,
            Comodule::new(spec, CoactionMode::PaperTable)?,
        ))
    };
    let mut out = Vec::new();
    let (a, b) = pair(Family::MuFull, 6)?;
    let left = |c: &Comodule, i| -> Result<Tensor> { Ok(c.algebra().left_normalize(&c.coaction_b(i)?)) };
    let mut compare = |what: String, x: Tensor, y: Tensor| {
        if x != y {
            out.push(format!("{what}: derived {x} vs printed {y}"));
        }
    };
    compare("psi(B1)".into(), a.coaction_b(1)?, b.coaction_b(1)?);
    let away_from_unit = |t: Tensor| t.filter(|w| !w[1].is_one());
    compare("psi(B2)".into(), away_from_unit(left(&a, 2)?), away_from_unit(left(&b, 2)?));
    let top = |t: Tensor| t.filter(|w| w[1] == mono("B3") || w[1] == mono("B2"));
    compare("psi(B3)".into(), top(left(&a, 3)?), top(left(&b, 3)?));
    if let Some(d) = d {
        let (a, b) = pair(Family::MtuBar { d }, 2 * d + 6)?;
        for x in [
            format!("B1^{}", d + 1),
            format!("B2 B1^{d}"),
            format!("B1^{}", d + 2),
            format!("v1 B1^{}", d + 1),
        ] {
            let m = mono(&x);
            compare(format!("psi({x})"), a.coaction(&m)?, b.coaction(&m)?);
        }
    }
    Ok(out)
}
