use super::algebra::{FiniteAlgebra, Matrix, OpTable};
use super::MatrixError;
use crate::language::{AND, BOT, BOX, DIAMOND, IFF, IMP, NOT, OR, TOP};

pub const BUILTIN_NAMES: [&str; 6] = ["b2", "l3", "l3_modal", "l3_tau", "godel(n)", "g3_prime"];

/// Algebra on a chain `0 < … < n-1` given ∧, ∨, →, ¬ pointwise; adds ↔ as
/// `(x→y)∧(y→x)` and the constants ⊤ = top, ⊥ = bottom.
fn chain_algebra(
    names: Vec<String>,
    imp: impl Fn(usize, usize) -> usize,
    neg: impl Fn(usize) -> usize,
) -> FiniteAlgebra {
    let n = names.len();
    let iff = |x: usize, y: usize| imp(x, y).min(imp(y, x));
    let ops = vec![
        (AND.to_string(), OpTable::from_fn(n, 2, |a| a[0].min(a[1]))),
        (OR.to_string(), OpTable::from_fn(n, 2, |a| a[0].max(a[1]))),
        (IMP.to_string(), OpTable::from_fn(n, 2, |a| imp(a[0], a[1]))),
        (NOT.to_string(), OpTable::from_fn(n, 1, |a| neg(a[0]))),
        (IFF.to_string(), OpTable::from_fn(n, 2, |a| iff(a[0], a[1]))),
    ];
    let consts = vec![(TOP.to_string(), n - 1), (BOT.to_string(), 0)];
    FiniteAlgebra::new(names, ops, consts).expect("chain tables are total")
}

pub fn b2() -> Matrix {
    let alg = chain_algebra(vec!["0".into(), "1".into()], |x, y| if x <= y { 1 } else { 0 }, |x| 1 - x);
    Matrix::new("b2", alg, &[1]).expect("b2")
}

/// Łukasiewicz three-valued algebra on 0 < τ < 1 (indices 0, 1, 2).
fn l3_algebra() -> FiniteAlgebra {
    // x→y = min(1, 1−x+y) on the scaled chain {0,1,2}
    chain_algebra(vec!["0".into(), "τ".into(), "1".into()], |x, y| (2 - x + y).min(2), |x| 2 - x)
}

pub fn l3() -> Matrix {
    Matrix::new("l3", l3_algebra(), &[2]).expect("l3")
}

pub fn l3_tau() -> Matrix {
    Matrix::new("l3_tau", l3_algebra(), &[1, 2]).expect("l3_tau")
}

pub fn l3_modal() -> Matrix {
    let alg = l3_algebra()
        .with_op(BOX, 1, |a| if a[0] == 2 { 2 } else { 0 })
        .and_then(|a| a.with_op(DIAMOND, 1, |a| if a[0] == 0 { 0 } else { 2 }))
        .expect("modal tables");
    Matrix::new("l3_modal", alg, &[2]).expect("l3_modal")
}

/// Element names of the n-element Gödel chain.
pub fn godel_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == n - 1 => "1".to_string(),
            i => format!("t{i}"),
        })
        .collect()
}

pub fn godel_algebra(n: usize) -> Result<FiniteAlgebra, MatrixError> {
    if n < 2 {
        return Err(MatrixError::BadParameter(format!("godel({n}) needs n ≥ 2")));
    }
    let top = n - 1;
    Ok(chain_algebra(
        godel_names(n),
        |x, y| if x <= y { top } else { y },
        |x| if x == 0 { top } else { 0 },
    ))
}

pub fn godel(n: usize) -> Result<Matrix, MatrixError> {
    Matrix::new(&format!("godel({n})"), godel_algebra(n)?, &[n - 1])
}

pub fn g3_prime() -> Matrix {
    Matrix::new("g3_prime", godel_algebra(3).expect("g3"), &[1, 2]).expect("g3_prime")
}

/// Looks up a built-in matrix: `b2`, `l3`, `l3_modal`, `l3_tau`, `godel(n)`
/// (also `gN`), `g3_prime`.
pub fn builtin(name: &str) -> Result<Matrix, MatrixError> {
    match name {
        "b2" => Ok(b2()),
        "l3" => Ok(l3()),
        "l3_modal" => Ok(l3_modal()),
        "l3_tau" => Ok(l3_tau()),
        "g3_prime" => Ok(g3_prime()),
        _ => {
            let n = name
                .strip_prefix("godel(")
                .and_then(|r| r.strip_suffix(')'))
                .or_else(|| name.strip_prefix('g').or_else(|| name.strip_prefix('G')))
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| MatrixError::BadParameter(format!("unknown matrix `{name}`")))?;
            godel(n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::f;
    use crate::matrix::{evaluate, is_valid, Valuation};

    fn el(m: &Matrix, name: &str) -> usize {
        m.algebra().element(name).unwrap()
    }

    #[test]
    fn l3_tables() {
        let m = l3();
        let a = m.algebra();
        let name = |e: usize| a.element_name(e).to_string();
        let imp: Vec<Vec<String>> =
            (0..3).map(|x| (0..3).map(|y| name(a.apply(IMP, &[x, y]))).collect()).collect();
        assert_eq!(imp, vec![vec!["1", "1", "1"], vec!["τ", "1", "1"], vec!["0", "τ", "1"]]);
        let neg: Vec<String> = (0..3).map(|x| name(a.apply(NOT, &[x]))).collect();
        assert_eq!(neg, vec!["1", "τ", "0"]);
        let v = Valuation::new().set("p", el(&m, "τ")).set("q", el(&m, "0"));
        assert_eq!(name(evaluate(&m, &v, &f("¬p")).unwrap()), "τ");
        assert_eq!(name(evaluate(&m, &v, &f("(p→q)")).unwrap()), "τ");
    }

    #[test]
    fn modal_tables() {
        let m = l3_modal();
        let a = m.algebra();
        let bx: Vec<&str> = (0..3).map(|x| a.element_name(a.apply(BOX, &[x]))).collect();
        let dm: Vec<&str> = (0..3).map(|x| a.element_name(a.apply(DIAMOND, &[x]))).collect();
        assert_eq!(bx, vec!["0", "0", "1"]);
        assert_eq!(dm, vec!["0", "1", "1"]);
    }

    #[test]
    fn godel_three_row_one() {
        let m = godel(3).unwrap();
        let a = m.algebra();
        assert_eq!(a.elements(), &["0", "t1", "1"]);
        assert_eq!(a.apply(IMP, &[2, 1]), 1);
        assert_eq!(a.apply(IMP, &[1, 0]), 0);
        assert_eq!(a.apply(NOT, &[1]), 0);
    }

    #[test]
    fn godel_two_is_b2() {
        assert_eq!(godel(2).unwrap().algebra(), b2().algebra());
        assert!(matches!(godel(1), Err(MatrixError::BadParameter(_))));
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(builtin("godel(5)").unwrap().algebra().size(), 5);
        assert_eq!(builtin("G7").unwrap().algebra().size(), 7);
        assert!(builtin("nope").is_err());
    }

    #[test]
    fn b2_truth_tables() {
        let m = b2();
        assert!(is_valid(&m, &f("(p∨¬p)")).unwrap());
        assert!(!is_valid(&m, &f("(p→q)")).unwrap());
    }
}
