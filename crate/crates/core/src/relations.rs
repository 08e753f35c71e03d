//! Catalog of identities as named free-algebra elements expected to vanish.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::ncpoly::{Family, FreeElem, StarConvention, TensorElem, Word};
use crate::qrat::ScalarQ;

type E = FreeElem<ScalarQ>;

/// `ε_ij`: `+1` for `i<j`, `0` on the diagonal, `−1` for `i>j`.
pub fn eps(i: usize, j: usize) -> i64 {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => -1,
    }
}

pub fn delta(i: usize, j: usize) -> i64 {
    i64::from(i == j)
}

/// Sign of the permutation sorting `(i, j, k)`; zero on repeated indices.
pub fn levi_civita3(i: usize, j: usize, k: usize) -> i64 {
    eps(i, j) * eps(i, k) * eps(j, k)
}

/// `θ_{i,j;k} = ½ ε_ij ε_ijk (ε_jk − ε_ik)`.
pub fn theta(i: usize, j: usize, k: usize) -> i64 {
    let t = eps(i, j) * levi_civita3(i, j, k) * (eps(j, k) - eps(i, k));
    debug_assert!(t % 2 == 0);
    t / 2
}

/// Case table for θ: `+1` when `i<k<j`, `−1` when `i>k>j`.
pub fn theta_cases(i: usize, j: usize, k: usize) -> i64 {
    if i < k && k < j {
        1
    } else if i > k && k > j {
        -1
    } else {
        0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaSign {
    Plus,
    Minus,
}

impl SigmaSign {
    pub fn name(self) -> &'static str {
        match self {
            SigmaSign::Plus => "plus",
            SigmaSign::Minus => "minus",
        }
    }
}

/// `σ_ij = ε_ij ± δ_ij`.
pub fn sigma(i: usize, j: usize, sign: SigmaSign) -> i64 {
    match sign {
        SigmaSign::Plus => eps(i, j) + delta(i, j),
        SigmaSign::Minus => eps(i, j) - delta(i, j),
    }
}

/// A side of a relation: a free element or a tensor element.
#[derive(Clone, Debug, PartialEq)]
pub enum RelElement {
    Free(E),
    Tensor(TensorElem<ScalarQ>),
}

impl RelElement {
    pub fn is_zero(&self) -> bool {
        match self {
            RelElement::Free(e) => e.is_zero(),
            RelElement::Tensor(t) => t.is_zero(),
        }
    }
}

impl fmt::Display for RelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelElement::Free(e) => e.fmt(f),
            RelElement::Tensor(t) => t.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationInstance {
    pub name: String,
    pub family: Family,
    pub indices: Vec<i64>,
    pub element: RelElement,
    pub paper_ref: String,
    /// Per tensor factor (one factor for free elements), per mode,
    /// the largest number of raise letters in any word.
    pub margin: Vec<Vec<usize>>,
}

impl RelationInstance {
    pub fn free(name: &str, family: Family, indices: Vec<i64>, element: E, paper_ref: &str) -> Self {
        let n = element.max_mode().max(1);
        let margin = vec![element.max_raise_degree(n)];
        RelationInstance {
            name: name.to_string(),
            family,
            indices,
            element: RelElement::Free(element),
            paper_ref: paper_ref.to_string(),
            margin,
        }
    }

    pub fn tensor(
        name: &str,
        family: Family,
        indices: Vec<i64>,
        element: TensorElem<ScalarQ>,
        paper_ref: &str,
    ) -> Self {
        let n = element.max_mode().max(1);
        let margin = element.max_raise_degree(n);
        RelationInstance {
            name: name.to_string(),
            family,
            indices,
            element: RelElement::Tensor(element),
            paper_ref: paper_ref.to_string(),
            margin,
        }
    }

    pub fn as_free(&self) -> Option<&E> {
        match &self.element {
            RelElement::Free(e) => Some(e),
            RelElement::Tensor(_) => None,
        }
    }

    /// Negative control: the first unit coefficient is flipped to `−1`
    /// (or, failing that, the first coefficient is doubled).
    pub fn perturbed(&self) -> RelationInstance {
        let mut out = self.clone();
        match &self.element {
            RelElement::Free(e) => {
                let target = e
                    .terms()
                    .find(|(_, c)| c.is_one())
                    .or_else(|| e.terms().next())
                    .map(|(w, c)| (w.clone(), c.clone()));
                if let Some((w, c)) = target {
                    let fix = if c.is_one() { ScalarQ::from_int(-2) } else { c.clone() };
                    let bump = E::from_word(e.family(), w, fix);
                    out.element = RelElement::Free(e + &bump);
                }
            }
            RelElement::Tensor(t) => {
                let target = t
                    .terms()
                    .find(|(_, c)| c.is_one())
                    .or_else(|| t.terms().next())
                    .map(|(w, c)| (w.clone(), c.clone()));
                if let Some((ws, c)) = target {
                    let fix = if c.is_one() { ScalarQ::from_int(-2) } else { c.clone() };
                    let bump = TensorElem::from_term(t.family(), ws, fix);
                    out.element = RelElement::Tensor(t + &bump);
                }
            }
        }
        out
    }
}

/// `a^+_i` for `plus`, `a^-_i` otherwise.
pub fn ladder(family: Family, plus: bool, i: usize) -> E {
    if plus {
        E::raise(family, i)
    } else {
        E::lower(family, i)
    }
}

fn sq(x: i64) -> ScalarQ {
    ScalarQ::from_int(x)
}

fn bracket(a: &E, b: &E) -> E {
    a.supercomm(b).expect("homogeneous operands")
}

fn qbracket(a: &E, b: &E, lambda: &ScalarQ) -> E {
    a.graded_qcomm(b, lambda).expect("homogeneous operands")
}

/// `q^{k h_i}` for `k ∈ {−1, 0, 1}`.
fn cartan_pow(f: Family, i: usize, k: i64) -> E {
    match k {
        0 => E::one(f),
        1 => E::cartan(f, i, false),
        -1 => E::cartan(f, i, true),
        _ => {
            let base = E::cartan(f, i, k < 0);
            (1..k.abs()).fold(base.clone(), |acc, _| &acc * &base)
        }
    }
}

/// `[2h_i] = (q^{h_i} − q^{-h_i}) / ω`.
pub fn bracket_2h(f: Family, i: usize) -> E {
    let w_inv = ScalarQ::omega().inv().expect("ω ≠ 0");
    (E::cartan(f, i, false) - E::cartan(f, i, true)).scale(&w_inv)
}

/// Relations of the undeformed algebra: four families over all `(i,j,k)`.
pub fn classical_relations(n: usize, family: Family) -> Vec<RelationInstance> {
    let f = family;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let idx = vec![i as i64, j as i64, k as i64];
                let ap = |m| E::raise(f, m);
                let am = |m| E::lower(f, m);
                let inner = bracket(&ap(i), &am(j));
                let r1 = bracket(&inner, &ap(k)) - ap(i).scale(&sq(2 * delta(j, k)));
                out.push(RelationInstance::free(
                    "classical.I",
                    f,
                    idx.clone(),
                    r1,
                    "undeformed trilinear relation [[[[a+,a-]],a+]]",
                ));
                let r2 = bracket(&inner, &am(k)) + am(j).scale(&sq(2 * delta(i, k)));
                out.push(RelationInstance::free(
                    "classical.Istar",
                    f,
                    idx.clone(),
                    r2,
                    "undeformed trilinear relation [[[[a+,a-]],a-]]",
                ));
                let r3 = bracket(&bracket(&ap(i), &ap(j)), &ap(k));
                out.push(RelationInstance::free(
                    "classical.II",
                    f,
                    idx.clone(),
                    r3,
                    "undeformed trilinear relation [[[[a+,a+]],a+]]",
                ));
                let r4 = bracket(&bracket(&am(i), &am(j)), &am(k));
                out.push(RelationInstance::free(
                    "classical.IIstar",
                    f,
                    idx,
                    r4,
                    "undeformed trilinear relation [[[[a-,a-]],a-]]",
                ));
            }
        }
    }
    out
}

/// Cartan-sector relations of the deformed algebra.
pub fn cartan_relations(n: usize, family: Family) -> Vec<RelationInstance> {
    let f = family;
    let mut out = Vec::new();
    for i in 1..=n {
        for inv in [false, true] {
            let r = &E::cartan(f, i, inv) * &E::cartan(f, i, !inv) - E::one(f);
            out.push(RelationInstance::free(
                "rel.cartan.inverse",
                f,
                vec![i as i64, if inv { -1 } else { 1 }],
                r,
                "q^{h_i} q^{-h_i} = 1",
            ));
        }
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            for (ei, ej) in [(false, false), (false, true), (true, false), (true, true)] {
                let x = E::cartan(f, i, ei);
                let y = E::cartan(f, j, ej);
                let r = &x * &y - &y * &x;
                let s = |b: bool| if b { -1 } else { 1 };
                out.push(RelationInstance::free(
                    "rel.cartan.commute",
                    f,
                    vec![i as i64, j as i64, s(ei), s(ej)],
                    r,
                    "Cartan generators commute",
                ));
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            for plus in [true, false] {
                let a = ladder(f, plus, j);
                let k = if plus { delta(i, j) } else { -delta(i, j) };
                let lhs = &(&E::cartan(f, i, false) * &a) * &E::cartan(f, i, true);
                let r = lhs - a.scale(&ScalarQ::q_pow(k));
                out.push(RelationInstance::free(
                    "rel.cartan.conj",
                    f,
                    vec![i as i64, j as i64, if plus { 1 } else { -1 }],
                    r,
                    "q^{h_i} a^{±}_j q^{-h_i} = q^{±δ_ij} a^{±}_j",
                ));
            }
        }
    }
    out
}

pub fn fe_relations(n: usize, family: Family) -> Vec<RelationInstance> {
    (1..=n)
        .map(|i| {
            let r = bracket(&E::raise(family, i), &E::lower(family, i)) - bracket_2h(family, i);
            RelationInstance::free(
                "rel.fe",
                family,
                vec![i as i64],
                r,
                "[[a+_i, a-_i]] = [2h_i]",
            )
        })
        .collect()
}

/// `[[[[a+_i,a-_j]], a+_k]]_{q^{-δ_ik σ_jk}} − [2]δ_jk a+_i q^{σ_ij h_j}
///  − (q−q^{-1}) θ_{i,j;k} a+_i [[a+_k, a-_j]]`
pub fn relation_i(family: Family, i: usize, j: usize, k: usize, sign: SigmaSign) -> E {
    let f = family;
    let lam = ScalarQ::q_pow(-delta(i, k) * sigma(j, k, sign));
    let lhs = qbracket(&bracket(&E::raise(f, i), &E::lower(f, j)), &E::raise(f, k), &lam);
    let mut rhs = E::zero(f);
    if j == k {
        rhs = rhs + (&E::raise(f, i) * &cartan_pow(f, j, sigma(i, j, sign))).scale(&ScalarQ::qint(2));
    }
    let t = theta(i, j, k);
    if t != 0 {
        let x = &E::raise(f, i) * &bracket(&E::raise(f, k), &E::lower(f, j));
        rhs = rhs + x.scale(&(ScalarQ::q_minus_qinv() * sq(t)));
    }
    lhs - rhs
}

/// Which Cartan exponent to use on the right-hand side of the
/// `[[[[a+_i,a-_j]], a-_k]]` relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IstarReading {
    /// `q^{-σ_{i,j} h_i}` exactly as displayed.
    Printed,
    /// The star image of the `[[[[a+,a-]],a+]]` relation: exponent
    /// `q^{-σ_{j,i} h_i}` and `+(q−q^{-1})θ_{j,i;k}`. Differs from `Printed`
    /// when `i = k ≠ j` or when `i, j, k` are distinct.
    Conjugate,
}

/// `[[[[a+_i,a-_j]], a-_k]]_{q^{-δ_jk σ_ik}} + [2]δ_ik a-_j q^{-σ h_i}
///  ∓ (q−q^{-1}) θ_{j,i;k} [[a+_i, a-_k]] a-_j` (upper sign printed)
pub fn relation_istar_with(
    family: Family,
    i: usize,
    j: usize,
    k: usize,
    sign: SigmaSign,
    reading: IstarReading,
) -> E {
    let f = family;
    let lam = ScalarQ::q_pow(-delta(j, k) * sigma(i, k, sign));
    let lhs = qbracket(&bracket(&E::raise(f, i), &E::lower(f, j)), &E::lower(f, k), &lam);
    let mut rhs = E::zero(f);
    if i == k {
        let sg = match reading {
            IstarReading::Printed => sigma(i, j, sign),
            IstarReading::Conjugate => sigma(j, i, sign),
        };
        let x = &E::lower(f, j) * &cartan_pow(f, i, -sg);
        rhs = rhs - x.scale(&ScalarQ::qint(2));
    }
    let t = match reading {
        IstarReading::Printed => -theta(j, i, k),
        IstarReading::Conjugate => theta(j, i, k),
    };
    if t != 0 {
        let x = &bracket(&E::raise(f, i), &E::lower(f, k)) * &E::lower(f, j);
        rhs = rhs + x.scale(&(ScalarQ::q_minus_qinv() * sq(t)));
    }
    lhs - rhs
}

pub fn relation_istar(family: Family, i: usize, j: usize, k: usize, sign: SigmaSign) -> E {
    relation_istar_with(family, i, j, k, sign, IstarReading::Conjugate)
}

/// `[[[[x_{i1}, x_{i3}]], x_{i2}]]_{q²} + q [[[[x_{i1}, x_{i2}]], x_{i3}]]`.
pub fn serre_ii(family: Family, plus: bool, i1: usize, i2: usize, i3: usize) -> E {
    let x = |m| ladder(family, plus, m);
    qbracket(&bracket(&x(i1), &x(i3)), &x(i2), &ScalarQ::q_pow(2))
        + bracket(&bracket(&x(i1), &x(i2)), &x(i3)).scale(&ScalarQ::q())
}

/// `[[x_{i2}, [[x_{i1}, x_{i3}]]]]_{q²} + q [[x_{i1}, [[x_{i2}, x_{i3}]]]]`.
pub fn serre_iistar(family: Family, plus: bool, i1: usize, i2: usize, i3: usize) -> E {
    let x = |m| ladder(family, plus, m);
    qbracket(&x(i2), &bracket(&x(i1), &x(i3)), &ScalarQ::q_pow(2))
        + bracket(&x(i1), &bracket(&x(i2), &x(i3))).scale(&ScalarQ::q())
}

pub fn i_relations(n: usize, family: Family, sign: SigmaSign) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                out.push(RelationInstance::free(
                    "rel.I",
                    family,
                    vec![i as i64, j as i64, k as i64],
                    relation_i(family, i, j, k, sign),
                    "deformed trilinear relation [[[[a+_i,a-_j]],a+_k]]",
                ));
            }
        }
    }
    out
}

pub fn istar_relations(n: usize, family: Family, sign: SigmaSign) -> Vec<RelationInstance> {
    istar_relations_with(n, family, sign, IstarReading::Conjugate)
}

pub fn istar_relations_with(
    n: usize,
    family: Family,
    sign: SigmaSign,
    reading: IstarReading,
) -> Vec<RelationInstance> {
    let name = match reading {
        IstarReading::Conjugate => "rel.Istar",
        IstarReading::Printed => "rel.Istar.printed",
    };
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                out.push(RelationInstance::free(
                    name,
                    family,
                    vec![i as i64, j as i64, k as i64],
                    relation_istar_with(family, i, j, k, sign, reading),
                    "deformed trilinear relation [[[[a+_i,a-_j]],a-_k]]",
                ));
            }
        }
    }
    out
}

/// Index tuples `i1 < i2 ≤ i3`.
pub fn ii_tuples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i1 in 1..=n {
        for i2 in (i1 + 1)..=n {
            for i3 in i2..=n {
                out.push((i1, i2, i3));
            }
        }
    }
    out
}

/// Index tuples `i1 ≤ i2 < i3`.
pub fn iistar_tuples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i1 in 1..=n {
        for i2 in i1..=n {
            for i3 in (i2 + 1)..=n {
                out.push((i1, i2, i3));
            }
        }
    }
    out
}

pub fn serre_relations(n: usize, family: Family) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for plus in [true, false] {
        let s = if plus { 1 } else { -1 };
        for (i1, i2, i3) in ii_tuples(n) {
            out.push(RelationInstance::free(
                "rel.II",
                family,
                vec![s, i1 as i64, i2 as i64, i3 as i64],
                serre_ii(family, plus, i1, i2, i3),
                "Serre-type cubic relation, i1<i2<=i3",
            ));
        }
        for (i1, i2, i3) in iistar_tuples(n) {
            out.push(RelationInstance::free(
                "rel.IIstar",
                family,
                vec![s, i1 as i64, i2 as i64, i3 as i64],
                serre_iistar(family, plus, i1, i2, i3),
                "Serre-type cubic relation, i1<=i2<i3",
            ));
        }
    }
    out
}

/// Every defining relation of the deformed algebra for one σ choice.
/// When `sign_i` and `sign_istar` differ the two trilinear families use
/// their own choice.
pub fn deformed_relations_split(
    n: usize,
    family: Family,
    sign_i: SigmaSign,
    sign_istar: SigmaSign,
) -> Vec<RelationInstance> {
    let mut out = cartan_relations(n, family);
    out.extend(fe_relations(n, family));
    out.extend(i_relations(n, family, sign_i));
    out.extend(istar_relations(n, family, sign_istar));
    out.extend(serre_relations(n, family));
    out
}

pub fn deformed_relations(n: usize, family: Family, sign: SigmaSign) -> Vec<RelationInstance> {
    deformed_relations_split(n, family, sign, sign)
}

/// `(α_i, α_j)` with `α_i = ε_i − ε_{i+1}` for `i<n` and `α_n = ε_n`.
pub fn cartan_matrix(n: usize, i: usize, j: usize) -> i64 {
    let root = |k: usize| -> Vec<i64> {
        let mut v = vec![0; n + 1];
        v[k] = 1;
        if k < n {
            v[k + 1] = -1;
        }
        v
    };
    root(i).iter().zip(root(j)).map(|(a, b)| a * b).sum()
}

/// `q^{±H_i}` with `H_i = h_i − h_{i+1}` (`i<n`) and `H_n = h_n`.
pub fn q_h_simple(n: usize, family: Family, i: usize, inverse: bool) -> E {
    let base = E::cartan(family, i, inverse);
    if i < n {
        &base * &E::cartan(family, i + 1, !inverse)
    } else {
        base
    }
}

/// Chevalley generator `E_{i}` (`plus`) or `E_{-i}` in terms of `a^±`.
pub fn e_from_a(n: usize, family: Family, plus: bool, i: usize) -> E {
    let f = family;
    if i == n {
        return ladder(f, plus, n);
    }
    let half = ScalarQ::qint(2).inv().expect("[2] ≠ 0");
    let x = if plus {
        &E::cartan(f, i + 1, true) * &bracket(&E::raise(f, i), &E::lower(f, i + 1))
    } else {
        &bracket(&E::raise(f, i + 1), &E::lower(f, i)) * &E::cartan(f, i + 1, false)
    };
    x.scale(&half)
}

/// A Chevalley generator supplied by the caller, as a function of `(plus, i)`.
pub type ChevalleyMap<'a> = &'a dyn Fn(bool, usize) -> E;

/// `a^+_i = [E_i,[E_{i+1}, … [E_{n−1},E_n]_{q^{-1}} …]_{q^{-1}}]_{q^{-1}}` and
/// `a^-_i = [[…[E_{-n},E_{-n+1}]_q …, E_{-(i+1)}]_q, E_{-i}]_q`.
pub fn a_from_e(n: usize, plus: bool, i: usize, e: ChevalleyMap<'_>) -> E {
    let mut acc = e(plus, n);
    if plus {
        let lam = ScalarQ::q_pow(-1);
        for k in (i..n).rev() {
            acc = e(true, k).qcomm(&acc, &lam).expect("same family");
        }
    } else {
        let lam = ScalarQ::q();
        for k in (i..n).rev() {
            acc = acc.qcomm(&e(false, k), &lam).expect("same family");
        }
    }
    acc
}

/// Chevalley–Serre relations with `E_{±i}` expanded through `e_from_a`.
pub fn chevalley_relations(n: usize, family: Family) -> Vec<RelationInstance> {
    let f = family;
    let en = |plus: bool, i: usize| e_from_a(n, f, plus, i);
    let mut out = Vec::new();
    let name = "quea.serre";
    for i in 1..=n {
        for j in 1..=n {
            for (plus, s) in [(true, 1), (false, -1)] {
                let ej = en(plus, j);
                let lhs = &(&q_h_simple(n, f, i, false) * &ej) * &q_h_simple(n, f, i, true);
                let k = s * cartan_matrix(n, i, j);
                out.push(RelationInstance::free(
                    "quea.cartan",
                    f,
                    vec![i as i64, j as i64, s],
                    lhs - ej.scale(&ScalarQ::q_pow(k)),
                    "q^{H_i} E_{±j} q^{-H_i} = q^{±a_ij} E_{±j}",
                ));
            }
        }
    }
    let two = ScalarQ::qint(2);
    let w_inv = ScalarQ::omega().inv().expect("ω ≠ 0");
    let two_h = |i: usize| (q_h_simple(n, f, i, false) - q_h_simple(n, f, i, true)).scale(&w_inv);
    for i in 1..n {
        for j in 1..n {
            let mut r = en(true, i).qcomm(&en(false, j), &ScalarQ::one()).unwrap().scale(&two);
            if i == j {
                r = r - two_h(i);
            }
            out.push(RelationInstance::free(
                "quea.ladder",
                f,
                vec![i as i64, j as i64],
                r,
                "[2][E_i, E_{-j}] = δ_ij [2H_i]",
            ));
        }
    }
    let r = bracket(&en(true, n), &en(false, n)) - two_h(n);
    out.push(RelationInstance::free(
        "quea.ladder",
        f,
        vec![n as i64, n as i64],
        r,
        "[[E_n, E_{-n}]] = [2H_n]",
    ));
    for (plus, s) in [(true, 1i64), (false, -1i64)] {
        for i in 1..=n {
            for j in 1..=n {
                if i.abs_diff(j) >= 2 {
                    out.push(RelationInstance::free(
                        "quea.commute",
                        f,
                        vec![s, i as i64, j as i64],
                        bracket(&en(plus, i), &en(plus, j)),
                        "[E_{±i}, E_{±j}] = 0 for |i-j| >= 2",
                    ));
                }
            }
        }
        let q = ScalarQ::q();
        let qi = ScalarQ::q_pow(-1);
        for i in 1..n.saturating_sub(1) {
            let x = en(plus, i + 1);
            let r = x.qcomm(&x.qcomm(&en(plus, i), &q).unwrap(), &qi).unwrap();
            out.push(RelationInstance::free(
                name,
                f,
                vec![s, (i + 1) as i64, i as i64],
                r,
                "[E_{i+1}, [E_{i+1}, E_i]_q]_{q^{-1}} = 0",
            ));
        }
        for i in 1..n {
            let x = en(plus, i);
            let r = x.qcomm(&x.qcomm(&en(plus, i + 1), &q).unwrap(), &qi).unwrap();
            out.push(RelationInstance::free(
                name,
                f,
                vec![s, i as i64, (i + 1) as i64],
                r,
                "[E_i, [E_i, E_{i+1}]_q]_{q^{-1}} = 0",
            ));
        }
        if n >= 2 {
            let a = en(plus, n - 1);
            let b = en(plus, n);
            let r = bracket(&a.qcomm(&b, &qi).unwrap(), &b).qcomm(&b, &q).unwrap();
            out.push(RelationInstance::free(
                name,
                f,
                vec![s, (n - 1) as i64, n as i64, n as i64],
                r,
                "[[[ [E_{n-1},E_n]_{q^{-1}}, E_n ]], E_n]_q = 0",
            ));
        }
    }
    out
}

/// Upper-triangular `(n+1)×(n+1)` matrix `L^+` (0-based storage).
pub fn lmatrix_plus(n: usize, family: Family) -> Vec<Vec<E>> {
    let f = family;
    let mut m = vec![vec![E::zero(f); n + 1]; n + 1];
    for i in 1..=n {
        m[i - 1][i - 1] = E::cartan(f, i, false);
        for j in (i + 1)..=n {
            m[i - 1][j - 1] = bracket(&E::raise(f, i), &E::lower(f, j)).scale(&ScalarQ::omega());
        }
        m[i - 1][n] = E::raise(f, i).scale(&ScalarQ::c_coeff());
    }
    m[n][n] = E::one(f);
    m
}

/// `L^-_{ji} = (L^+_{ij})^*`.
pub fn lmatrix_minus(n: usize, family: Family, star: StarConvention) -> Vec<Vec<E>> {
    let plus = lmatrix_plus(n, family);
    let mut m = vec![vec![E::zero(family); n + 1]; n + 1];
    for (i, row) in plus.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            m[j][i] = x.star(star);
        }
    }
    m
}

/// Relations satisfied by the order-one oscillator representation.
///
/// `q^{±N_i}` is written through the Cartan letters:
/// `q^{N_i} = s^{±1} q^{h_i}` with the upper sign for parafermi.
pub fn oscillator_relations(n: usize, family: Family) -> Vec<RelationInstance> {
    let f = family;
    let up = f.sign();
    // Upper sign for parafermi: `±` → `up`, `∓` → `-up`.
    let qn = |i: usize, k: i64| -> E {
        // q^{k N_i}, k = ±1
        E::cartan(f, i, k < 0).scale(&ScalarQ::s_pow(k * up))
    };
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for plus in [true, false] {
                let x = |m| ladder(f, plus, m);
                let lam = ScalarQ::q_pow(-up * eps(i, j)) * sq(up);
                let r = &x(i) * &x(j) + (&x(j) * &x(i)).scale(&lam);
                out.push(RelationInstance::free(
                    if plus { "osc.raise" } else { "osc.lower" },
                    f,
                    vec![i as i64, j as i64],
                    r,
                    "oscillator exchange a a ± q^{∓ε_ij} a a = 0",
                ));
            }
        }
    }
    for i in 1..=n {
        let am = E::lower(f, i);
        let ap = E::raise(f, i);
        let r1 = &am * &ap + (&ap * &am).scale(&(ScalarQ::q() * sq(up))) - qn(i, up);
        out.push(RelationInstance::free(
            "osc.number",
            f,
            vec![i as i64, 1],
            r1,
            "a-_i a+_i ± q a+_i a-_i = q^{±N_i}",
        ));
        let r2 = &am * &ap + (&ap * &am).scale(&(ScalarQ::q_pow(-1) * sq(up))) - qn(i, -up);
        out.push(RelationInstance::free(
            "osc.number",
            f,
            vec![i as i64, -1],
            r2,
            "a-_i a+_i ± q^{-1} a+_i a-_i = q^{∓N_i}",
        ));
    }
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let lam = ScalarQ::q_pow(-up * eps(j, i)) * sq(up);
            let r = &E::raise(f, i) * &E::lower(f, j) + (&E::lower(f, j) * &E::raise(f, i)).scale(&lam);
            out.push(RelationInstance::free(
                "osc.mixed",
                f,
                vec![i as i64, j as i64, 1],
                r,
                "a+_i a-_j ± q^{∓ε_ji} a-_j a+_i = 0",
            ));
            let r = &E::lower(f, i) * &E::raise(f, j) + (&E::raise(f, j) * &E::lower(f, i)).scale(&lam);
            out.push(RelationInstance::free(
                "osc.mixed",
                f,
                vec![i as i64, j as i64, -1],
                r,
                "a-_i a+_j ± q^{∓ε_ji} a+_j a-_i = 0",
            ));
        }
    }
    out
}

/// Words of a free element, for catalog inspection.
pub fn words(e: &E) -> Vec<Word> {
    e.terms().map(|(w, _)| w.clone()).collect()
}

/// True when `x = u·y` for a nonzero scalar `u`.
pub fn proportional(x: &E, y: &E) -> Option<ScalarQ> {
    let (w, cy) = y.terms().next()?;
    let cx = x.coeff(w);
    if cx.is_zero() {
        return None;
    }
    let u = cx.checked_div(cy).ok()?;
    if x == &y.scale(&u) {
        Some(u)
    } else {
        None
    }
}
