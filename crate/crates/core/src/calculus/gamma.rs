//! Finite-scale witness that the rule with premises
//! `(αᵢ↔αⱼ)→α₀` for all `0<i<j` is not finitary.

use serde_json::{json, Value};

use super::CalculusError;
use crate::language::Formula;
use crate::matrix::{evaluate, godel, matrix_consequence, Valuation};

fn var(i: usize) -> Formula {
    Formula::var(&format!("p{i}"))
}

/// `(pᵢ↔pⱼ)→p₀`.
pub fn gamma_premise(i: usize, j: usize) -> Formula {
    Formula::imp(Formula::iff(var(i), var(j)), var(0))
}

/// Index pairs `(i, j)`, `0<i<j`, ordered by `j` then `i`.
pub fn gamma_pairs() -> impl Iterator<Item = (usize, usize)> {
    (2..).flat_map(|j| (1..j).map(move |i| (i, j)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaStarReport {
    pub m: usize,
    pub premises: Vec<Formula>,
    pub chain: usize,
    pub valuation: Valuation,
    /// Every premise designated and `p0` not.
    pub refutes: bool,
    /// Size of the smaller chain used for the contrast.
    pub contrast_chain: usize,
    /// Number of premises in the contrast set: every pair over one more
    /// variable than the contrast chain has elements.
    pub contrast_premises: usize,
    /// `p0` follows from the contrast set in the contrast chain.
    pub contrast_holds: bool,
}

impl GammaStarReport {
    pub fn to_json(&self) -> Value {
        let g = godel(self.chain).expect("chain built before");
        json!({
            "m": self.m,
            "premises": self.premises.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "matrix": format!("godel({})", self.chain),
            "valuation": self.valuation.to_json(g.algebra()),
            "refutes": self.refutes,
            "contrast": {
                "matrix": format!("godel({})", self.contrast_chain),
                "premises": self.contrast_premises,
                "p0_follows": self.contrast_holds,
            },
        })
    }
}

/// Takes the first `m` premises with `αᵢ ↦ pᵢ` and builds the valuation in
/// `godel(m+3)` sending `p0` to the element below the top and the other
/// variables to pairwise distinct elements; then checks that the whole set
/// of premises over `m+3` variables yields `p0` in `godel(m+2)`.
pub fn gamma_star_demo(m: usize) -> Result<GammaStarReport, CalculusError> {
    if m == 0 {
        return Err(CalculusError::BadParameter("at least one premise is needed".into()));
    }
    let pairs: Vec<(usize, usize)> = gamma_pairs().take(m).collect();
    let premises: Vec<Formula> = pairs.iter().map(|&(i, j)| gamma_premise(i, j)).collect();
    let chain = m + 3;
    let g = godel(chain)?;
    let vars = pairs.iter().map(|&(_, j)| j).max().unwrap_or(1);
    let mut valuation = Valuation::new().set("p0", chain - 2);
    for i in 1..=vars {
        valuation = valuation.set(&format!("p{i}"), i - 1);
    }
    let designated = |f: &Formula| -> Result<bool, CalculusError> { Ok(g.is_designated(evaluate(&g, &valuation, f)?)) };
    let mut refutes = !designated(&var(0))?;
    for p in &premises {
        refutes &= designated(p)?;
    }
    let contrast_chain = m + 2;
    let contrast: Vec<Formula> =
        gamma_pairs().take_while(|&(_, j)| j <= contrast_chain + 1).map(|(i, j)| gamma_premise(i, j)).collect();
    let contrast_holds = matrix_consequence(&godel(contrast_chain)?, &contrast, &var(0))?;
    Ok(GammaStarReport {
        m,
        premises,
        chain,
        valuation,
        refutes,
        contrast_chain,
        contrast_premises: contrast.len(),
        contrast_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::f;

    #[test]
    fn premises_in_order() {
        let firsts: Vec<(usize, usize)> = gamma_pairs().take(4).collect();
        assert_eq!(firsts, vec![(1, 2), (1, 3), (2, 3), (1, 4)]);
        assert_eq!(gamma_premise(1, 2), f("((p1↔p2)→p0)"));
    }

    #[test]
    fn refutations_for_small_m() {
        for m in 1..=4 {
            let r = gamma_star_demo(m).unwrap();
            assert!(r.refutes, "m = {m}");
            assert!(r.contrast_holds, "m = {m}");
            assert_eq!(r.chain, m + 3);
        }
        let r = gamma_star_demo(1).unwrap();
        assert_eq!(r.valuation.get("p0"), Some(2));
    }

    #[test]
    fn zero_premises_rejected() {
        assert!(matches!(gamma_star_demo(0), Err(CalculusError::BadParameter(_))));
    }
}
