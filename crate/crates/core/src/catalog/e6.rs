//! The two 24-dimensional E6 realizations: rank-16 distributions, their
//! structure equations, defining functions, embeddings and the 16-dimensional
//! representations of the degree-0 part.

use crate::cr::{CPoly, DefiningSystem};
use crate::eds::{Chart, DiffForm};
use crate::error::{Error, Result};
use crate::exact::{int, rat, RatMat, RatPoly};
use crate::nilpotent::{from_structure_equations, GradedNilpotent, PfaffianSystem};

pub(crate) fn chart_names() -> Vec<String> {
    let mut names: Vec<String> = (1..=8).map(|i| format!("u{i}")).collect();
    names.extend((1..=8).map(|i| format!("x{i}")));
    names.extend((1..=8).map(|i| format!("y{i}")));
    names
}

fn weights() -> Vec<u32> {
    let mut w = vec![2; 8];
    w.extend(vec![1; 16]);
    w
}

const E2_FORMS: [&str; 8] = [
    "d(u1) + 1/2*(x1*d(y4) + x2*d(y3) + x3*d(y2) + x4*d(y1) - y1*d(x4) - y2*d(x3) - y3*d(x2) - y4*d(x1))",
    "d(u2) + 1/2*(x1*d(y6) + x2*d(y5) + x5*d(y2) + x6*d(y1) - y1*d(x6) - y2*d(x5) - y5*d(x2) - y6*d(x1))",
    "d(u3) + 1/2*(x1*d(x7) - x3*d(x5) + x5*d(x3) - x7*d(x1) + y1*d(y7) - y3*d(y5) + y5*d(y3) - y7*d(y1))",
    "d(u4) + 1/2*(x1*d(x8) + x2*d(x7) + x3*d(x6) + x4*d(x5) - x5*d(x4) - x6*d(x3) - x7*d(x2) - x8*d(x1) \
     + y1*d(y8) + y2*d(y7) + y3*d(y6) + y4*d(y5) - y5*d(y4) - y6*d(y3) - y7*d(y2) - y8*d(y1))",
    "d(u5) + 1/2*(y1*d(x8) - y2*d(x7) - y3*d(x6) + y4*d(x5) + y5*d(x4) - y6*d(x3) - y7*d(x2) + y8*d(x1) \
     - x1*d(y8) + x2*d(y7) + x3*d(y6) - x4*d(y5) - x5*d(y4) + x6*d(y3) + x7*d(y2) - x8*d(y1))",
    "d(u6) + 1/2*(x2*d(x8) - x4*d(x6) + x6*d(x4) - x8*d(x2) + y2*d(y8) - y4*d(y6) + y6*d(y4) - y8*d(y2))",
    "d(u7) + 1/2*(x3*d(y8) + x4*d(y7) + x7*d(y4) + x8*d(y3) - y3*d(x8) - y4*d(x7) - y7*d(x4) - y8*d(x3))",
    "d(u8) + 1/2*(x5*d(y8) + x6*d(y7) + x7*d(y6) + x8*d(y5) - y5*d(x8) - y6*d(x7) - y7*d(x6) - y8*d(x5))",
];

const E3_FORMS: [&str; 8] = [
    "d(u1) + x1*d(y8) + x2*d(y4) + x3*d(y7) + x4*d(y2) + x5*d(y6) + x6*d(y5) + x7*d(y3) + x8*d(y1)",
    "d(u2) + x1*d(y4) + y8*d(x2) + y6*d(x3) + x4*d(y1) + x5*d(y7) + y3*d(x6) + x7*d(y5) + y2*d(x8)",
    "d(u3) + x1*d(y7) + x2*d(y6) + y8*d(x3) + y5*d(x4) + y4*d(x5) + x6*d(y2) + x7*d(y1) + y3*d(x8)",
    "d(u4) + x2*d(x1) + x5*d(x3) + x8*d(x4) + x7*d(x6) + y2*d(y1) + y5*d(y3) + y8*d(y4) + y7*d(y6)",
    "d(u5) + x1*d(y6) + y7*d(x2) + x3*d(y4) + x4*d(y3) + y8*d(x5) + x6*d(y1) + y2*d(x7) + y5*d(x8)",
    "d(u6) + x5*d(x1) + x3*d(x2) + x4*d(x7) + x8*d(x6) + y5*d(y1) + y3*d(y2) + y4*d(y7) + y8*d(y6)",
    "d(u7) + x3*d(x1) + x2*d(x5) + x6*d(x4) + x8*d(x7) + y3*d(y1) + y2*d(y5) + y6*d(y4) + y8*d(y7)",
    "d(u8) + x1*d(y1) + x2*d(y2) + x3*d(y3) + x4*d(y4) + x5*d(y5) + x6*d(y6) + x7*d(y7) + x8*d(y8)",
];

/// Structure equations in the coframe `λ^1..λ^24` (`λ^9..λ^16 = dx`, `λ^17..λ^24 = dy`).
const E2_EDS: [&str; 8] = [
    "9^20 + 10^19 + 11^18 + 12^17",
    "9^22 + 10^21 + 13^18 + 14^17",
    "9^15 - 11^13 + 17^23 - 19^21",
    "9^16 + 10^15 + 11^14 + 12^13 + 17^24 + 18^23 + 19^22 + 20^21",
    "-9^24 + 10^23 + 11^22 - 12^21 - 13^20 + 14^19 + 15^18 - 16^17",
    "10^16 - 12^14 + 18^24 - 20^22",
    "11^24 + 12^23 + 15^20 + 16^19",
    "13^24 + 14^23 + 15^22 + 16^21",
];

const E3_EDS: [&str; 8] = [
    "9^24 + 10^20 + 11^23 + 12^18 + 13^22 + 14^21 + 15^19 + 16^17",
    "9^20 + 24^10 + 22^11 + 12^17 + 13^23 + 19^14 + 15^21 + 18^16",
    "9^23 + 10^22 + 24^11 + 21^12 + 20^13 + 14^18 + 15^17 + 19^16",
    "10^9 + 13^11 + 16^12 + 15^14 + 18^17 + 21^19 + 24^20 + 23^22",
    "9^22 + 23^10 + 11^20 + 12^19 + 24^13 + 14^17 + 18^15 + 21^16",
    "13^9 + 11^10 + 12^15 + 16^14 + 21^17 + 19^18 + 20^23 + 24^22",
    "11^9 + 10^13 + 14^12 + 16^15 + 19^17 + 18^21 + 22^20 + 24^23",
    "9^17 + 10^18 + 11^19 + 12^20 + 13^21 + 14^22 + 15^23 + 16^24",
];

const E2_PHI: [&str; 8] = [
    "x2*x3 + x1*x4 + y2*y3 + y1*y4",
    "x2*x5 + x1*x6 + y2*y5 + y1*y6",
    "x7*y1 - x5*y3 + x3*y5 - x1*y7",
    "x8*y1 + x7*y2 + x6*y3 + x5*y4 - x4*y5 - x3*y6 - x2*y7 - x1*y8",
    "x2*x7 + x3*x6 - x1*x8 - x4*x5 + y2*y7 + y3*y6 - y1*y8 - y4*y5",
    "x8*y2 - x6*y4 + x4*y6 - x2*y8",
    "x4*x7 + x3*x8 + y4*y7 + y3*y8",
    "x6*x7 + x5*x8 + y6*y7 + y5*y8",
];

pub fn e2_system() -> PfaffianSystem {
    PfaffianSystem::from_text(&chart_names(), &weights(), &E2_FORMS.map(String::from)).expect("printed system")
}

pub fn e3_system() -> PfaffianSystem {
    PfaffianSystem::from_text(&chart_names(), &weights(), &E3_FORMS.map(String::from)).expect("printed system")
}

fn structure_equations(eds: &[&str; 8]) -> Result<GradedNilpotent> {
    let chart = Chart::numbered("l", 24);
    let mut dforms: Vec<DiffForm> = vec![DiffForm::zero(&chart, 2); 24];
    for (i, s) in eds.iter().enumerate() {
        let mut f = DiffForm::zero(&chart, 2);
        for t in s.split_whitespace().collect::<String>().replace('-', "+-").split('+').filter(|t| !t.is_empty()) {
            let (neg, body) = t.strip_prefix('-').map_or((false, t), |b| (true, b));
            let (a, b) = body.split_once('^').ok_or_else(|| Error::Parse { pos: 0, msg: format!("bad wedge {t}") })?;
            let (a, b): (usize, usize) = (
                a.parse().map_err(|_| Error::Parse { pos: 0, msg: format!("bad index {a}") })?,
                b.parse().map_err(|_| Error::Parse { pos: 0, msg: format!("bad index {b}") })?,
            );
            let w = DiffForm::dx(&chart, a - 1).wedge(&DiffForm::dx(&chart, b - 1));
            f = if neg { f.sub(&w) } else { f.add(&w) };
        }
        dforms[i] = f;
    }
    let mut grading = vec![-2; 8];
    grading.extend(vec![-1; 16]);
    let labels = chart_names();
    from_structure_equations(grading, labels, &dforms)
}

/// Symbol of the E_II system from its printed structure equations.
pub fn e2_structure_equations() -> GradedNilpotent {
    structure_equations(&E2_EDS).expect("printed structure equations")
}

/// Symbol of the E_III system from its printed structure equations.
pub fn e3_structure_equations() -> GradedNilpotent {
    structure_equations(&E3_EDS).expect("printed structure equations")
}

pub fn e2_defining() -> DefiningSystem {
    DefiningSystem::from_text(8, &E2_PHI).expect("printed defining functions")
}

/// `Σ sign · z_a z̄_b` on the chart `x1..xn, y1..yn`.
pub(crate) fn herm(n: usize, terms: &[(i64, usize, usize)]) -> CPoly {
    let z = |a: usize| CPoly { re: RatPoly::var(2 * n, a - 1), im: RatPoly::var(2 * n, n + a - 1) };
    terms.iter().fold(CPoly::zero(2 * n), |acc, &(s, a, b)| acc.add(&z(a).mul(&z(b).conj()).scale(&int(s))))
}

/// Defining functions of the E_III embedding (`Im w = Φ`).
pub fn e3_defining() -> DefiningSystem {
    let h = |t: &[(i64, usize, usize)]| herm(8, t);
    let phi = vec![
        h(&[(1, 1, 8), (1, 2, 4), (1, 3, 7), (1, 5, 6)]).re,
        h(&[(1, 1, 4), (-1, 2, 8), (-1, 3, 6), (1, 5, 7)]).re,
        h(&[(1, 1, 7), (1, 2, 6), (-1, 3, 8), (-1, 4, 5)]).re,
        h(&[(1, 1, 2), (1, 3, 5), (1, 4, 8), (1, 6, 7)]).times_i().re,
        h(&[(1, 1, 6), (-1, 2, 7), (1, 3, 4), (-1, 5, 8)]).re,
        h(&[(1, 1, 5), (1, 2, 3), (-1, 4, 7), (1, 6, 8)]).times_i().re,
        h(&[(1, 1, 3), (-1, 2, 5), (1, 4, 6), (1, 7, 8)]).times_i().re,
        h(&(1..=8).map(|i| (1, i, i)).collect::<Vec<_>>()).re,
    ];
    DefiningSystem::new(8, phi).expect("printed embedding")
}

/// Defining functions of the alternative E_III embedding; equations of the
/// form `Re w = Φ` are read as `Im(i w) = Φ`.
pub fn e3_alt_defining() -> DefiningSystem {
    let h = |t: &[(i64, usize, usize)]| herm(8, t);
    let a = h(&[(1, 1, 7), (1, 2, 8), (1, 5, 3), (1, 6, 4)]);
    let b = h(&[(1, 1, 6), (-1, 3, 8), (1, 5, 2), (-1, 7, 4)]);
    let c = h(&[(1, 2, 6), (1, 3, 7), (-1, 5, 1), (-1, 8, 4)]);
    let phi = vec![
        h(&(1..=4).map(|i| (1, i, i)).collect::<Vec<_>>()).re,
        h(&(5..=8).map(|i| (1, i, i)).collect::<Vec<_>>()).re,
        a.im.clone(),
        a.re,
        b.im.clone(),
        b.re,
        c.im.clone(),
        c.re,
    ];
    DefiningSystem::new(8, phi).expect("printed embedding")
}

/// Invariant symmetric form on the degree −2 part printed for E_II.
pub fn e2_metric() -> RatMat {
    let mut g = RatMat::zeros(8, 8);
    for (i, j, v) in [(0, 7, int(1)), (1, 6, int(-1)), (2, 5, int(1)), (3, 3, rat(-1, 2)), (4, 4, rat(-1, 2))] {
        g.set(i, j, v.clone());
        g.set(j, i, v);
    }
    g
}

/// Invariant symmetric form on the degree −2 part printed for E_III.
pub fn e3_metric() -> RatMat {
    let mut g = RatMat::identity(8).scale(&int(-1));
    g.set(7, 7, int(1));
    g
}

/// `[[0, −I8], [I8, 0]]` on `(x1..x8, y1..y8)`: the printed `J` of both algebras.
pub fn standard_j() -> RatMat {
    let mut j = RatMat::zeros(16, 16);
    for i in 0..8 {
        j.set(i, 8 + i, int(-1));
        j.set(8 + i, i, int(1));
    }
    j
}

/// Which appendix basis to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Appendix {
    /// `ℝ ⊕ cso(3,5)` for E_II.
    A,
    /// `ℝ ⊕ cso(1,7)` for E_III.
    B,
}

const APPENDIX_A: [&str; 30] = [
    "5_3 + 6_4 + 13_11 + 14_12",
    "-5_10 + 7_12 + 13_2 - 15_4",
    "5_9 + 6_10 + 7_11 + 8_12 - 13_1 - 14_2 - 15_3 - 16_4",
    "-5_1 + 6_2 + 7_3 - 8_4 - 13_9 + 14_10 + 15_11 - 16_12",
    "-6_9 + 8_11 + 14_1 - 16_3",
    "7_1 + 8_2 + 15_9 + 16_10",
    "3_5 + 4_6 + 11_13 + 12_14",
    "2_13 - 4_15 - 10_5 + 12_7",
    "-1_13 - 2_14 - 3_15 - 4_16 + 9_5 + 10_6 + 11_7 + 12_8",
    "-1_5 + 2_6 + 3_7 - 4_8 - 9_13 + 10_14 + 11_15 - 12_16",
    "1_14 - 3_16 - 9_6 + 11_8",
    "1_7 + 2_8 + 9_15 + 10_16",
    "3_10 + 7_14 - 11_2 - 15_6",
    "-3_9 - 4_10 + 7_13 + 8_14 + 11_1 + 12_2 - 15_5 - 16_6",
    "3_1 - 4_2 + 7_5 - 8_6 + 11_9 - 12_10 + 15_13 - 16_14",
    "4_9 + 8_13 - 12_1 - 16_5",
    "-2_11 - 6_15 + 10_3 + 14_7",
    "1_11 + 2_12 - 5_15 - 6_16 - 9_3 - 10_4 + 13_7 + 14_8",
    "1_3 - 2_4 + 5_7 - 6_8 + 9_11 - 10_12 + 13_15 - 14_16",
    "-1_12 - 5_16 + 9_4 + 13_8",
    "2_1 - 4_3 - 6_5 + 8_7 + 10_9 - 12_11 - 14_13 + 16_15",
    "2_9 + 4_11 + 6_13 + 8_15 - 10_1 - 12_3 - 14_5 - 16_7",
    "1_2 - 3_4 - 5_6 + 7_8 + 9_10 - 11_12 - 13_14 + 15_16",
    "-1_10 - 3_12 - 5_14 - 7_16 + 9_2 + 11_4 + 13_6 + 15_8",
    "-1_9 - 4_12 - 6_14 - 7_15 + 9_1 + 12_4 + 14_6 + 15_7",
    "2_10 + 3_11 + 5_13 + 8_16 - 10_2 - 11_3 - 13_5 - 16_8",
    "3_3 + 4_4 - 5_5 - 6_6 + 11_11 + 12_12 - 13_13 - 14_14",
    "2_2 + 4_4 - 5_5 - 7_7 + 10_10 + 12_12 - 13_13 - 15_15",
    "1_1 - 4_4 + 5_5 - 8_8 + 9_9 - 12_12 + 13_13 - 16_16",
    "1_1 + 2_2 + 3_3 + 4_4 + 9_9 + 10_10 + 11_11 + 12_12",
];

/// `S(a,b) = F^a_b + F^b_a`, `A(a,b) = F^a_b − F^b_a`; the last two are `J` and the identity.
const APPENDIX_B: [&str; 28] = [
    "-S(1,10) + S(2,9) - S(3,13) - S(4,16) + S(5,11) - S(6,15) + S(7,14) + S(8,12)",
    "-S(1,11) + S(2,13) + S(3,9) - S(4,14) - S(5,10) + S(6,12) - S(7,16) + S(8,15)",
    "S(1,4) - S(2,8) - S(3,6) + S(5,7) + S(9,12) - S(10,16) - S(11,14) + S(13,15)",
    "-S(1,13) - S(2,11) + S(3,10) + S(4,15) + S(5,9) - S(6,16) - S(7,12) + S(8,14)",
    "S(1,6) - S(2,7) + S(3,4) - S(5,8) + S(9,14) - S(10,15) + S(11,12) - S(13,16)",
    "S(1,7) + S(2,6) - S(3,8) - S(4,5) + S(9,15) + S(10,14) - S(11,16) - S(12,13)",
    "S(1,8) + S(2,4) + S(3,7) + S(5,6) + S(9,16) + S(10,12) + S(11,15) + S(13,14)",
    "-A(1,5) - A(2,3) - A(4,7) + A(6,8) - A(9,13) - A(10,11) - A(12,15) + A(14,16)",
    "A(1,16) + A(2,12) - A(3,15) + A(4,10) - A(5,14) - A(6,13) - A(7,11) + A(8,9)",
    "A(1,3) - A(2,5) - A(4,6) - A(7,8) + A(9,11) - A(10,13) - A(12,14) - A(15,16)",
    "A(1,15) + A(2,14) + A(3,16) + A(4,13) + A(5,12) + A(6,10) + A(7,9) + A(8,11)",
    "-A(1,14) + A(2,15) + A(3,12) + A(4,11) - A(5,16) - A(6,9) + A(7,10) - A(8,13)",
    "-A(1,12) + A(2,16) - A(3,14) - A(4,9) + A(5,15) - A(6,11) + A(7,13) + A(8,10)",
    "A(1,14) + A(2,15) + A(3,12) + A(4,11) + A(5,16) + A(6,9) + A(7,10) + A(8,13)",
    "-A(1,2) - A(3,5) + A(4,8) + A(6,7) - A(9,10) - A(11,13) + A(12,16) + A(14,15)",
    "-A(1,12) - A(2,16) + A(3,14) - A(4,9) + A(5,15) + A(6,11) + A(7,13) - A(8,10)",
    "A(1,16) - A(2,12) + A(3,15) - A(4,10) - A(5,14) - A(6,13) + A(7,11) + A(8,9)",
    "-A(1,15) + A(2,14) + A(3,16) - A(4,13) - A(5,12) + A(6,10) - A(7,9) + A(8,11)",
    "A(1,15) - A(2,14) + A(3,16) - A(4,13) - A(5,12) - A(6,10) + A(7,9) + A(8,11)",
    "-A(1,3) - A(2,5) - A(4,6) + A(7,8) - A(9,11) - A(10,13) - A(12,14) + A(15,16)",
    "A(1,5) - A(2,3) - A(4,7) - A(6,8) + A(9,13) - A(10,11) - A(12,15) - A(14,16)",
    "-A(1,2) + A(3,5) - A(4,8) + A(6,7) - A(9,10) + A(11,13) - A(12,16) + A(14,15)",
    "A(1,16) - A(2,12) - A(3,15) - A(4,10) + A(5,14) + A(6,13) - A(7,11) + A(8,9)",
    "A(1,12) + A(2,16) + A(3,14) + A(4,9) + A(5,15) + A(6,11) + A(7,13) + A(8,10)",
    "-A(1,14) - A(2,15) + A(3,12) + A(4,11) + A(5,16) - A(6,9) - A(7,10) + A(8,13)",
    "-A(1,2) + A(3,5) + A(4,8) - A(6,7) - A(9,10) + A(11,13) + A(12,16) - A(14,15)",
    "-A(1,5) + A(2,3) - A(4,7) - A(6,8) - A(9,13) + A(10,11) - A(12,15) - A(14,16)",
    "-A(1,3) - A(2,5) + A(4,6) - A(7,8) - A(9,11) - A(10,13) + A(12,14) - A(15,16)",
];

fn signed_terms(s: &str) -> Vec<(i64, &str)> {
    let mut out = Vec::new();
    let mut sign = 1;
    for tok in s.split_whitespace() {
        match tok {
            "+" => sign = 1,
            "-" => sign = -1,
            t => {
                let (s2, body) = t.strip_prefix('-').map_or((1, t), |b| (-1, b));
                out.push((sign * s2, body));
                sign = 1;
            }
        }
    }
    out
}

fn parse_appendix_a(s: &str) -> RatMat {
    let mut m = RatMat::zeros(16, 16);
    for (sign, body) in signed_terms(s) {
        let (mu, nu) = body.split_once('_').expect("μ_ν");
        let (mu, nu): (usize, usize) = (mu.parse().expect("index"), nu.parse().expect("index"));
        m.add_at(mu - 1, nu - 1, &int(sign));
    }
    m
}

fn parse_appendix_b(s: &str) -> RatMat {
    let mut m = RatMat::zeros(16, 16);
    for (sign, body) in signed_terms(s) {
        let sym = body.starts_with('S');
        let inner = body.trim_start_matches(['S', 'A']).trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner.split_once(',').expect("pair");
        let (a, b): (usize, usize) = (a.parse().expect("index"), b.parse().expect("index"));
        m.add_at(a - 1, b - 1, &int(sign));
        m.add_at(b - 1, a - 1, &int(if sym { sign } else { -sign }));
    }
    m
}

/// The 30 printed 16×16 matrices, entry `(μ, ν)` of `F^μ_ν` being 1.
pub fn appendix_matrices(which: Appendix) -> Vec<RatMat> {
    match which {
        Appendix::A => APPENDIX_A.iter().map(|s| parse_appendix_a(s)).collect(),
        Appendix::B => {
            let mut v: Vec<RatMat> = APPENDIX_B.iter().map(|s| parse_appendix_b(s)).collect();
            v.push(standard_j());
            v.push(RatMat::identity(16));
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::linalg::span_rank;
    use crate::nilpotent::{same_constants, symbol_algebra};

    #[test]
    fn printed_systems_match_structure_equations() {
        assert!(same_constants(&symbol_algebra(&e2_system()).unwrap(), &e2_structure_equations()));
        assert!(same_constants(&symbol_algebra(&e3_system()).unwrap(), &e3_structure_equations()));
    }

    #[test]
    fn appendix_bases_are_independent() {
        for which in [Appendix::A, Appendix::B] {
            let v: Vec<_> = appendix_matrices(which).iter().map(|m| m.to_vec()).collect();
            assert_eq!(span_rank(256, &v), 30);
        }
        let a = appendix_matrices(Appendix::A);
        let mut e30 = RatMat::zeros(16, 16);
        for i in [0, 1, 2, 3, 8, 9, 10, 11] {
            e30.set(i, i, int(1));
        }
        assert_eq!(a[29], e30);
        assert_eq!(a[24].sub(&a[25]), standard_j());
        assert!(appendix_matrices(Appendix::B)[29].is_identity());
    }

    #[test]
    fn appendix_bases_close_under_commutator() {
        for which in [Appendix::A, Appendix::B] {
            let m = appendix_matrices(which);
            let space = crate::tanaka::EndoSpace::new(16, m.clone());
            assert!(space.is_closed_under_commutator());
            let c = space.express(&m[24].commutator(&m[25])).expect("closure witness");
            assert_eq!(c.nnz() > 0, !m[24].commutator(&m[25]).is_zero());
        }
    }

    #[test]
    fn signed_term_parsing() {
        assert_eq!(signed_terms("-5_10 + 7_12 - 15_4"), vec![(-1, "5_10"), (1, "7_12"), (-1, "15_4")]);
        let m = parse_appendix_b("-A(1,2)");
        assert_eq!(m.get(0, 1), &int(-1));
        assert_eq!(m.get(1, 0), &int(1));
    }
}
