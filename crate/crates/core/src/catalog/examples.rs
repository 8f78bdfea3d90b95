//! The 7-dimensional Sp(1,2) example, its CR decorations, its embedded model,
//! Cartan's F4 system and the two unlabeled blocks.

use crate::cr::{CPoly, CrFlag, DefiningSystem};
use crate::eds::{parse_poly, ComplexForm, DiffForm};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::nilpotent::PfaffianSystem;
use num_traits::{One, Zero};

pub fn baby_system() -> PfaffianSystem {
    PfaffianSystem::from_text(
        &["x1", "x2", "x3", "x4", "x5", "x6", "x7"],
        &[1, 1, 1, 1, 2, 2, 2],
        &["d(x5) + x1*d(x4) + x2*d(x3)", "d(x6) + x3*d(x4) + x1*d(x2)", "d(x7) + x3*d(x1) + x2*d(x4)"],
    )
    .expect("printed system")
}

/// Complex 1-form `Σ c_j dx_j` from `(index, re, im)` triples on the 7-dimensional chart.
fn cform(sys: &PfaffianSystem, parts: &[(usize, Rational, Rational)]) -> ComplexForm {
    let c = sys.chart();
    let (mut re, mut im) = (DiffForm::zero(c, 1), DiffForm::zero(c, 1));
    for (j, a, b) in parts {
        re = re.add(&DiffForm::dx(c, j - 1).scale(a));
        im = im.add(&DiffForm::dx(c, j - 1).scale(b));
    }
    ComplexForm::new(re, im)
}

/// `μ¹ = dx1 + i dx4`, `μ² = dx2 − i dx3`.
pub fn baby_flag() -> CrFlag {
    abc_flag(&Rational::zero(), &Rational::one(), &Rational::zero()).expect("printed flag")
}

/// The deformation family with `a² + b² + c² = 1`.
pub fn abc_flag(a: &Rational, b: &Rational, c: &Rational) -> Result<CrFlag> {
    if a * a + b * b + c * c != Rational::one() {
        return Err(Error::InvalidParams("(a, b, c) must lie on the unit sphere".into()));
    }
    let sys = baby_system();
    let (z, o) = (Rational::zero(), Rational::one());
    let mu = if b.is_zero() && c.is_zero() {
        vec![cform(&sys, &[(1, o.clone(), z.clone()), (2, z.clone(), -a)]), cform(&sys, &[(3, o, z.clone()), (4, z, a.clone())])]
    } else {
        vec![
            cform(&sys, &[(1, o.clone(), z.clone()), (2, z.clone(), -a), (3, z.clone(), -c), (4, z.clone(), b.clone())]),
            cform(&sys, &[(1, z.clone(), a.clone()), (2, o, z.clone()), (3, z.clone(), -b), (4, z, -c)]),
        ]
    };
    CrFlag::new(sys, mu)
}

/// Five independent CR functions of the decorated example. The last one is
/// `x7 + i x1 (x2 − i x3)`; the printed `x7 + i (x2 − i x3) x2` is kept as
/// [`printed_z2`] and does not solve the CR equation.
pub fn baby_cr_functions() -> Vec<(String, CPoly)> {
    let c = baby_system().chart().clone();
    let p = |s: &str| parse_poly(s, &c).expect("printed polynomial");
    vec![
        ("w1".into(), CPoly { re: p("x1"), im: p("x4") }),
        ("w2".into(), CPoly { re: p("x2"), im: p("-x3") }),
        ("w3".into(), CPoly { re: p("x5"), im: p("1/2*(x1^2 - x2^2)") }),
        ("z1".into(), CPoly { re: p("x6"), im: p("x1*x3") }),
        ("z2".into(), CPoly { re: p("x7 + x1*x3"), im: p("x1*x2") }),
    ]
}

/// The printed `z2 = x7 + i (x2 − i x3) x2`.
pub fn printed_z2() -> CPoly {
    let c = baby_system().chart().clone();
    CPoly { re: parse_poly("x7 + x2*x3", &c).expect("polynomial"), im: parse_poly("x2^2", &c).expect("polynomial") }
}

pub fn embedded_example() -> DefiningSystem {
    DefiningSystem::from_text(2, &["1/2*(x1^2 - x2^2)", "-x1*y2", "x1*x2"]).expect("printed defining functions")
}

/// Cartan's system on ℝ¹⁵ with 7 forms.
pub fn f4_system() -> PfaffianSystem {
    let names = ["u12", "u13", "u14", "u23", "u24", "u34", "u7", "x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"];
    let mut weights = vec![2; 7];
    weights.extend(vec![1; 8]);
    let pairs = [((1, 2), (3, 4)), ((1, 3), (4, 2)), ((1, 4), (2, 3)), ((2, 3), (1, 4)), ((2, 4), (3, 1)), ((3, 4), (1, 2))];
    let mut forms: Vec<String> =
        pairs.iter().map(|((i, j), (k, l))| format!("d(u{i}{j}) + x{i}*d(x{j}) + y{k}*d(y{l})")).collect();
    forms.push("d(u7) + y1*d(x1) + y2*d(x2) + y3*d(x3) + y4*d(x4)".into());
    PfaffianSystem::from_text(&names.map(String::from), &weights, &forms).expect("printed system")
}

fn stray(forms: [&str; 3]) -> PfaffianSystem {
    let names: Vec<String> = (1..=8).map(|i| format!("x{i}")).collect();
    PfaffianSystem::from_text(&names, &[1, 1, 1, 1, 2, 2, 2, 1], &forms.map(String::from)).expect("printed block")
}

/// First unlabeled block; `x8` is given weight 1 so that `x5, x6, x7` carry the forms.
pub fn stray_1() -> PfaffianSystem {
    stray([
        "d(x8 - x7 - 1/4*(x1^2 + x2^2 + x3^2 + x4^2)) + 1/2*(x2*d(x1) - x1*d(x2) + x4*d(x3) - x3*d(x4))",
        "d(x8 - x5 - 1/4*(x1^2 + x2^2 + x3^2 + x4^2)) + 1/2*(x3*d(x1) - x1*d(x3) + x2*d(x4) - x4*d(x2))",
        "d(x8 - x6 - 1/4*(x1^2 + x2^2 + x3^2 + x4^2)) + 1/2*(x4*d(x1) - x1*d(x4) + x3*d(x2) - x2*d(x3))",
    ])
}

/// Second unlabeled block, weighted like the first.
pub fn stray_2() -> PfaffianSystem {
    stray([
        "d(x8 - x7 + x6 + x5) + x2*d(x1) - x1*d(x2) + x4*d(x3) - x3*d(x4)",
        "d(x8 + x7 + x6 - x5) + x3*d(x1) - x1*d(x3) + x2*d(x4) - x4*d(x2)",
        "d(x8 + x7 - x6 + x5) + x4*d(x1) - x1*d(x4) + x3*d(x2) - x2*d(x3)",
    ])
}

/// `Y10` and `Y12` of the 21-dimensional symmetry algebra.
pub fn baby_symmetries() -> (crate::eds::PolyVectorField, crate::eds::PolyVectorField) {
    let sys = baby_system();
    let c = sys.chart().clone();
    let p = |s: &str| parse_poly(s, &c).expect("printed polynomial");
    let y10 = crate::eds::PolyVectorField::from_named(
        &c,
        &[
            ("x1", p("x3")),
            ("x2", p("x4")),
            ("x3", p("-x1")),
            ("x4", p("-x2")),
            ("x5", p("x1*x2 - x3*x4")),
            ("x7", p("1/2*(x1^2 + x2^2 - x3^2 - x4^2)")),
        ],
    )
    .expect("chart coordinates");
    let y12 = crate::eds::PolyVectorField::coord(&c, 3);
    (y10, y12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cr::{integrability_check, is_cr_function};
    use crate::eds::parse_form;
    use crate::exact::{int, rat};

    #[test]
    fn printed_cr_functions_solve_the_equation() {
        let f = baby_flag();
        for (name, w) in baby_cr_functions() {
            assert!(is_cr_function(&w, &f), "{name}");
        }
        assert!(!is_cr_function(&printed_z2(), &f));
    }

    #[test]
    fn deformations_are_integrable() {
        for (a, b, c) in [(0, 1, 0), (1, 0, 0), (-1, 0, 0)] {
            assert!(integrability_check(&abc_flag(&int(a), &int(b), &int(c)).unwrap()));
        }
        assert!(integrability_check(&abc_flag(&int(0), &rat(3, 5), &rat(4, 5)).unwrap()));
        assert!(integrability_check(&abc_flag(&rat(2, 3), &rat(1, 3), &rat(2, 3)).unwrap()));
        assert!(abc_flag(&int(1), &int(1), &int(0)).is_err());
    }

    #[test]
    fn unrelated_mu_forms_fail() {
        let sys = baby_system();
        let c = sys.chart().clone();
        let mu = vec![
            ComplexForm::new(parse_form("d(x1)", &c).unwrap(), parse_form("d(x2)", &c).unwrap()),
            ComplexForm::new(parse_form("d(x3)", &c).unwrap(), parse_form("d(x4)", &c).unwrap()),
        ];
        assert!(!integrability_check(&CrFlag::new(sys, mu).unwrap()));
    }

    #[test]
    fn stray_blocks_are_adapted() {
        assert!(stray_1().adapted().is_ok());
        assert!(stray_2().adapted().is_ok());
    }
}
