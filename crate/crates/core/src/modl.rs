//! The `U_q(gl_n)` adjoint action on cubic raise-words and the module
//! spanned by the homogeneous cubic relations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::fock::{OscillatorRep, Outcome, SAME};
use crate::ncpoly::{Family, FreeElem, Generator, Word};
use crate::qrat::ScalarQ;
use crate::report::CheckRecord;

type E = FreeElem<ScalarQ>;

/// Labels of the cubic states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LambdaLabel {
    /// `Λ^{i1,i3}_{i2}`; `i2 == i3` is the two-index family `Λ^{i1,i2}_{i2}`.
    Plain { i1: usize, i3: usize, i2: usize },
    /// `Λ̃^{i1,i2}_{i3}`; `i1 == i2` is the family `Λ̃^{i2,i2}_{i3}`.
    Tilde { i1: usize, i2: usize, i3: usize },
}

impl LambdaLabel {
    pub fn plain(i1: usize, i3: usize, i2: usize) -> Self {
        LambdaLabel::Plain { i1, i3, i2 }
    }

    pub fn tilde(i1: usize, i2: usize, i3: usize) -> Self {
        LambdaLabel::Tilde { i1, i2, i3 }
    }

    fn indices(self) -> Vec<i64> {
        match self {
            LambdaLabel::Plain { i1, i3, i2 } => vec![0, i1 as i64, i3 as i64, i2 as i64],
            LambdaLabel::Tilde { i1, i2, i3 } => vec![1, i1 as i64, i2 as i64, i3 as i64],
        }
    }
}

impl fmt::Display for LambdaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LambdaLabel::Plain { i1, i3, i2 } => write!(f, "L^{{{i1},{i3}}}_{i2}"),
            LambdaLabel::Tilde { i1, i2, i3 } => write!(f, "Lt^{{{i1},{i2}}}_{i3}"),
        }
    }
}

fn br(x: &E, y: &E) -> E {
    x.supercomm(y).expect("homogeneous")
}

fn qbr(x: &E, y: &E, lambda: &ScalarQ) -> E {
    x.graded_qcomm(y, lambda).expect("homogeneous")
}

/// The cubic polynomial labeled by `label`.
pub fn lambda_vector(family: Family, label: LambdaLabel) -> E {
    let a = |i| E::raise(family, i);
    let q = ScalarQ::q();
    let q2 = ScalarQ::q_pow(2);
    match label {
        LambdaLabel::Plain { i1, i3, i2 } if i2 == i3 => qbr(&br(&a(i1), &a(i2)), &a(i2), &q),
        LambdaLabel::Plain { i1, i3, i2 } => {
            qbr(&br(&a(i1), &a(i3)), &a(i2), &q2) + br(&br(&a(i1), &a(i2)), &a(i3)).scale(&q)
        }
        LambdaLabel::Tilde { i1, i2, i3 } if i1 == i2 => qbr(&a(i2), &br(&a(i2), &a(i3)), &q),
        LambdaLabel::Tilde { i1, i2, i3 } => {
            qbr(&a(i2), &br(&a(i1), &a(i3)), &q2) + br(&a(i1), &br(&a(i2), &a(i3))).scale(&q)
        }
    }
}

/// All labels in the four families, in a fixed order.
pub fn lambda_labels(n: usize) -> Vec<LambdaLabel> {
    let mut out = Vec::new();
    for i1 in 1..=n {
        for i2 in (i1 + 1)..=n {
            for i3 in (i2 + 1)..=n {
                out.push(LambdaLabel::plain(i1, i3, i2));
                out.push(LambdaLabel::tilde(i1, i2, i3));
            }
            out.push(LambdaLabel::plain(i1, i2, i2));
            out.push(LambdaLabel::tilde(i1, i1, i2));
        }
    }
    out
}

pub fn lambda_states(family: Family, n: usize) -> Vec<(LambdaLabel, E)> {
    lambda_labels(n).into_iter().map(|l| (l, lambda_vector(family, l))).collect()
}

pub fn lowest_label(n: usize) -> LambdaLabel {
    LambdaLabel::plain(n - 1, n, n)
}

/// `(α_i, wt(letters))` with `(α_i, ε_j) = δ_ij − δ_{i+1,j}`.
fn pairing(i: usize, letters: &[Generator]) -> i64 {
    letters
        .iter()
        .map(|g| match *g {
            Generator::Raise(j) if j == i => 1,
            Generator::Raise(j) if j == i + 1 => -1,
            _ => 0,
        })
        .sum()
}

fn check_index(i: usize, n: usize) -> Result<(), AlgebraError> {
    if i == 0 || i >= n {
        return Err(AlgebraError::InvalidParameter(format!("ad index {i} outside 1..{}", n.saturating_sub(1))));
    }
    Ok(())
}

fn check_raise_only(v: &E) -> Result<(), AlgebraError> {
    let ok = v.terms().all(|(w, _)| w.letters().iter().all(|g| matches!(g, Generator::Raise(_))));
    if ok {
        Ok(())
    } else {
        Err(AlgebraError::InvalidParameter("adjoint action is defined on raise-words".into()))
    }
}

/// `ad_{E_i}(g_1…g_m) = Σ_k q^{(α_i, wt(g_1…g_{k−1}))} g_1…[ad_{E_i} g_k]…g_m`
/// with `ad_{E_i} a⁺_j = δ_{i+1,j} a⁺_i`.
pub fn ad_raise(n: usize, i: usize, v: &E) -> Result<E, AlgebraError> {
    check_index(i, n)?;
    check_raise_only(v)?;
    let mut terms = Vec::new();
    for (w, c) in v.terms() {
        let ls = w.letters();
        for k in 0..ls.len() {
            if ls[k] == Generator::Raise(i + 1) {
                let mut out = ls.to_vec();
                out[k] = Generator::Raise(i);
                terms.push((Word(out), c.clone() * &ScalarQ::q_pow(pairing(i, &ls[..k]))));
            }
        }
    }
    Ok(E::from_terms(v.family(), terms))
}

/// `ad_{E_{−i}}(g_1…g_m) = Σ_k q^{−(α_i, wt(g_{k+1}…g_m))} g_1…[ad_{E_{−i}} g_k]…g_m`
/// with `ad_{E_{−i}} a⁺_j = δ_ij a⁺_{i+1}`.
pub fn ad_lower(n: usize, i: usize, v: &E) -> Result<E, AlgebraError> {
    check_index(i, n)?;
    check_raise_only(v)?;
    let mut terms = Vec::new();
    for (w, c) in v.terms() {
        let ls = w.letters();
        for k in 0..ls.len() {
            if ls[k] == Generator::Raise(i) {
                let mut out = ls.to_vec();
                out[k] = Generator::Raise(i + 1);
                terms.push((Word(out), c.clone() * &ScalarQ::q_pow(-pairing(i, &ls[k + 1..]))));
            }
        }
    }
    Ok(E::from_terms(v.family(), terms))
}

/// Weight of a homogeneous vector as occupation counts, `None` if mixed.
pub fn weight(n: usize, v: &E) -> Option<Vec<i64>> {
    let mut out: Option<Vec<i64>> = None;
    for (w, _) in v.terms() {
        let mut wt = vec![0; n];
        for g in w.letters() {
            if let Generator::Raise(j) = g {
                wt[j - 1] += 1;
            }
        }
        match &out {
            None => out = Some(wt),
            Some(o) if *o != wt => return None,
            _ => {}
        }
    }
    out
}

/// Row-echelon basis over `ℚ(s)`, pivots normalized to 1.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(Word, BTreeMap<Word, ScalarQ>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &E) -> BTreeMap<Word, ScalarQ> {
        let mut x: BTreeMap<Word, ScalarQ> = v.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        for (pivot, row) in &self.rows {
            let Some(c) = x.get(pivot).cloned() else { continue };
            for (w, b) in row {
                let slot = x.entry(w.clone()).or_insert_with(ScalarQ::zero);
                *slot = slot.clone() - &(c.clone() * b);
                if slot.is_zero() {
                    x.remove(w);
                }
            }
        }
        x
    }

    pub fn contains(&self, v: &E) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &E) -> bool {
        let x = self.reduce(v);
        let Some((pivot, c)) = x.iter().next().map(|(w, c)| (w.clone(), c.clone())) else {
            return false;
        };
        let inv = c.inv().expect("nonzero pivot");
        let row: BTreeMap<Word, ScalarQ> = x.into_iter().map(|(w, b)| (w, b * &inv)).collect();
        // Keep earlier rows reduced against the new pivot.
        for (_, r) in &mut self.rows {
            if let Some(k) = r.get(&pivot).cloned() {
                for (w, b) in &row {
                    let slot = r.entry(w.clone()).or_insert_with(ScalarQ::zero);
                    *slot = slot.clone() - &(k.clone() * b);
                    if slot.is_zero() {
                        r.remove(w);
                    }
                }
            }
        }
        self.rows.push((pivot, row));
        true
    }
}

pub fn rank(vectors: &[E]) -> usize {
    let mut b = EchelonBasis::new();
    vectors.iter().filter(|v| b.insert(v)).count()
}

/// Closure of the lowest-weight state under all `ad_{E_{±i}}`.
pub struct ModuleL {
    pub basis: EchelonBasis,
    pub vectors: Vec<E>,
    pub dim: usize,
}

pub fn generate_module(family: Family, n: usize) -> Result<ModuleL, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::InvalidParameter("module L needs n ≥ 2".into()));
    }
    let start = lambda_vector(family, lowest_label(n));
    let mut basis = EchelonBasis::new();
    let mut vectors = Vec::new();
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        if !basis.insert(&v) {
            continue;
        }
        for i in 1..n {
            queue.push(ad_raise(n, i, &v)?);
            queue.push(ad_lower(n, i, &v)?);
        }
        vectors.push(v);
    }
    let dim = basis.dim();
    Ok(ModuleL { basis, vectors, dim })
}

pub fn dimension_formula(n: usize) -> usize {
    (n + 1) * n * n.saturating_sub(1) / 3
}

/// Semistandard tableaux of shape (2,1) with entries in `1..=n`:
/// first row `a ≤ b`, first column `a < c`.
pub fn tableaux_count(n: usize) -> usize {
    (1..=n).map(|a| (n + 1 - a) * (n - a)).sum()
}

/// A labeled `ad_{E_k}` arrow of the appendix diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub from: LambdaLabel,
    pub k: usize,
    pub to: LambdaLabel,
}

/// Entry of the diagram for `n` modes at row `a` (`n−1` at the top) and
/// column `c` (1-based).
fn diagram_entry(n: usize, a: usize, c: usize) -> LambdaLabel {
    if c <= n - a {
        LambdaLabel::plain(a, n, n - c + 1)
    } else {
        LambdaLabel::tilde(n + 1 - c, a, n)
    }
}

/// Arrows of the diagram for `n'` modes for every `2 ≤ n' ≤ n`, together
/// with the links `ad_{E_{n'−1}} Λ^{n'−2,n'}_{n'−1} = Λ^{n'−2,n'−1}_{n'−1}`.
pub fn diagram_arrows(n: usize) -> Vec<Arrow> {
    let mut out = Vec::new();
    for m in 2..=n {
        for a in 1..m {
            for c in 1..m {
                let k = if c < m - a { m - c } else if c == m - a { a } else { m - c };
                out.push(Arrow { from: diagram_entry(m, a, c), k, to: diagram_entry(m, a, c + 1) });
            }
            if a > 1 {
                for c in 1..=m {
                    if c == m - a + 1 {
                        continue;
                    }
                    out.push(Arrow { from: diagram_entry(m, a, c), k: a - 1, to: diagram_entry(m, a - 1, c) });
                }
            }
        }
        if m >= 3 {
            out.push(Arrow { from: LambdaLabel::plain(m - 2, m, m - 1), k: m - 1, to: LambdaLabel::plain(m - 2, m - 1, m - 1) });
        }
    }
    out
}

/// `x = c·y` for a nonzero scalar `c`.
fn proportional(x: &E, y: &E) -> bool {
    if x.is_zero() || y.is_zero() || x.len() != y.len() {
        return false;
    }
    let (w0, c0) = y.terms().next().expect("nonzero");
    let ratio = x.coeff(w0) * &c0.inv().expect("nonzero");
    !ratio.is_zero() && x == &y.scale(&ratio)
}

fn rec(suite: &str, name: &str, idx: Vec<i64>, ok: bool, residual: impl FnOnce() -> String, paper_ref: &str) -> CheckRecord {
    CheckRecord::new(suite, name, idx, Outcome::from_bool(ok, residual), paper_ref)
}

fn err(suite: &str, name: &str, idx: Vec<i64>, e: AlgebraError) -> CheckRecord {
    CheckRecord::error(suite, name, idx, e, "")
}

/// Everything except the representation checks.
pub fn check_module(family: Family, n: usize) -> Vec<CheckRecord> {
    let nn = n as i64;
    if n < 2 {
        let e = AlgebraError::InvalidParameter("module L needs n ≥ 2".into());
        return vec![err("modL.dimension", "dimension", vec![nn], e)];
    }
    let mut out = Vec::new();
    let low = lambda_vector(family, lowest_label(n));
    for i in 1..n {
        let r = ad_lower(n, i, &low);
        out.push(match r {
            Ok(v) => rec("modL.lowest", "lowering kills lowest", vec![nn, i as i64], v.is_zero(), || v.to_string(), "lowest weight vector"),
            Err(e) => err("modL.lowest", "lowering kills lowest", vec![nn, i as i64], e),
        });
    }
    let top = lambda_vector(family, LambdaLabel::tilde(1, 1, 2));
    for i in 1..n {
        let r = ad_raise(n, i, &top);
        out.push(match r {
            Ok(v) => rec("modL.lowest", "raising kills highest", vec![nn, i as i64], v.is_zero(), || v.to_string(), "highest weight vector"),
            Err(e) => err("modL.lowest", "raising kills highest", vec![nn, i as i64], e),
        });
    }

    let states = lambda_states(family, n);
    let mut span = EchelonBasis::new();
    for (_, v) in &states {
        span.insert(v);
    }
    match generate_module(family, n) {
        Ok(m) => {
            let inside = m.vectors.iter().all(|v| span.contains(v));
            let equal = inside && m.dim == span.dim();
            out.push(rec("modL.closure", "closure within states", vec![nn], inside, || "closure leaves span of states".into(), "module L closure"));
            out.push(rec("modL.closure", "closure spans states", vec![nn], equal, || format!("closure dim {} vs {}", m.dim, span.dim()), "module L closure"));
            let want = dimension_formula(n);
            out.push(rec("modL.dimension", "dimension", vec![nn, m.dim as i64], m.dim == want, || format!("dim {} vs formula {want}", m.dim), "dimension formula"));
            let t = tableaux_count(n);
            out.push(rec("modL.tableaux", "tableaux", vec![nn, t as i64], t == m.dim, || format!("{t} tableaux vs dim {}", m.dim), "semistandard tableaux"));
        }
        Err(e) => out.push(err("modL.closure", "closure", vec![nn], e)),
    }
    let states_ok = states.len() == dimension_formula(n) && span.dim() == states.len();
    out.push(rec("modL.dimension", "state count", vec![nn, states.len() as i64], states_ok, || format!("{} states, rank {}", states.len(), span.dim()), "labeled states"));

    // Weights shift by ±α_i.
    for (l, v) in &states {
        let wt = weight(n, v);
        for i in 1..n {
            for (name, x, sgn) in [("weight shift raise", ad_raise(n, i, v), 1), ("weight shift lower", ad_lower(n, i, v), -1)] {
                let Ok(x) = x else { continue };
                if x.is_zero() {
                    continue;
                }
                let mut want = wt.clone().expect("homogeneous state");
                want[i - 1] += sgn;
                want[i] -= sgn;
                let got = weight(n, &x);
                let mut idx = l.indices();
                idx.push(i as i64);
                out.push(rec("modL.closure", name, idx, got.as_ref() == Some(&want), || format!("{got:?} vs {want:?}"), "weight shift"));
            }
        }
    }

    if n <= 4 {
        for a in diagram_arrows(n) {
            let mut idx = a.from.indices();
            idx.push(a.k as i64);
            idx.extend(a.to.indices());
            let name = format!("{} -E{}-> {}", a.from, a.k, a.to);
            let image = ad_raise(n, a.k, &lambda_vector(family, a.from));
            out.push(match image {
                Ok(x) => {
                    let ok = proportional(&x, &lambda_vector(family, a.to));
                    rec("modL.diagram", &name, idx, ok, || format!("image {x}"), "appendix diagram")
                }
                Err(e) => err("modL.diagram", &name, idx, e),
            });
        }
    }
    out
}

/// Each state vanishes in `rep`. In a bose representation the non-relation
/// `a⁺_1 a⁺_1 a⁺_2` must not vanish; parafermi order one kills every cubic
/// word on two modes, so the control is skipped there.
pub fn check_serre_vanishing(rep: &OscillatorRep<ScalarQ>) -> Vec<CheckRecord> {
    let f = rep.family();
    let n = rep.modes();
    let mut out = Vec::new();
    for (l, v) in lambda_states(f, n) {
        let r = rep.check_zero(&v, &v.max_raise_degree(n), SAME);
        out.push(match r {
            Ok(o) => CheckRecord::new("modL.vanish", &l.to_string(), l.indices(), o, "homogeneous relations vanish"),
            Err(e) => err("modL.vanish", &l.to_string(), l.indices(), e),
        });
    }
    if f != Family::Parabose {
        return out;
    }
    let w = Word(vec![Generator::Raise(1), Generator::Raise(1), Generator::Raise(2)]);
    let control = E::from_word(f, w, ScalarQ::one());
    let r = rep.check_zero(&control, &control.max_raise_degree(n), SAME);
    out.push(match r {
        Ok(o) => rec("modL.vanish", "control a+1 a+1 a+2", vec![-1], !o.pass, || "non-relation vanished".into(), "negative control"),
        Err(e) => err("modL.vanish", "control a+1 a+1 a+2", vec![-1], e),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use crate::relations::{serre_ii, serre_iistar};

    #[test]
    fn state_counts() {
        assert_eq!(lambda_labels(2), vec![LambdaLabel::plain(1, 2, 2), LambdaLabel::tilde(1, 1, 2)]);
        assert_eq!(lambda_labels(3).len(), 8);
        for n in 2..=6 {
            let c3 = n * (n - 1) * (n - 2) / 6;
            let c2 = n * (n - 1) / 2;
            assert_eq!(lambda_labels(n).len(), 2 * c3 + 2 * c2);
            assert_eq!(lambda_labels(n).len(), dimension_formula(n));
        }
    }

    #[test]
    fn tableaux() {
        assert_eq!(tableaux_count(1), 0);
        assert_eq!(tableaux_count(2), 2);
        assert_eq!(tableaux_count(3), 8);
        for n in 2..=5 {
            assert_eq!(tableaux_count(n), dimension_formula(n));
        }
    }

    #[test]
    fn ad_on_generators() {
        let f = Family::Parafermi;
        let n = 3;
        for i in 1..n {
            for j in 1..=n {
                let a = E::raise(f, j);
                let want = if j == i + 1 { E::raise(f, i) } else { E::zero(f) };
                assert_eq!(ad_raise(n, i, &a).unwrap(), want);
                let want = if j == i { E::raise(f, i + 1) } else { E::zero(f) };
                assert_eq!(ad_lower(n, i, &a).unwrap(), want);
            }
        }
        assert!(ad_raise(3, 3, &E::raise(f, 1)).is_err());
        assert!(ad_raise(3, 1, &E::lower(f, 1)).is_err());
    }

    #[test]
    fn states_are_serre_elements() {
        for f in [Family::Parafermi, Family::Parabose] {
            for (i1, i2, i3) in [(1, 2, 3), (1, 3, 4), (2, 3, 4)] {
                assert_eq!(lambda_vector(f, LambdaLabel::plain(i1, i3, i2)), serre_ii(f, true, i1, i2, i3));
                assert_eq!(lambda_vector(f, LambdaLabel::tilde(i1, i2, i3)), serre_iistar(f, true, i1, i2, i3));
            }
        }
    }

    #[test]
    fn first_arrow() {
        for f in [Family::Parafermi, Family::Parabose] {
            for n in 2..=4 {
                let x = ad_raise(n, n - 1, &lambda_vector(f, lowest_label(n))).unwrap();
                assert!(proportional(&x, &lambda_vector(f, LambdaLabel::tilde(n - 1, n - 1, n))));
            }
        }
    }

    #[test]
    fn diagram_shape() {
        let a = diagram_arrows(2);
        assert_eq!(a, vec![Arrow { from: LambdaLabel::plain(1, 2, 2), k: 1, to: LambdaLabel::tilde(1, 1, 2) }]);
        // n = 3: the 2×3 diagram has 4 horizontal and 2 vertical arrows,
        // plus the link and the n' = 2 diagram.
        assert_eq!(diagram_arrows(3).len(), 4 + 2 + 1 + 1);
        assert!(diagram_arrows(3).contains(&Arrow { from: LambdaLabel::plain(1, 3, 3), k: 2, to: LambdaLabel::plain(1, 3, 2) }));
    }

    #[test]
    fn module_suites_pass() {
        for f in [Family::Parafermi, Family::Parabose] {
            for n in 2..=4 {
                let recs = check_module(f, n);
                let bad: Vec<_> = recs.iter().filter(|r| !r.passed()).collect();
                assert!(bad.is_empty(), "{f} n={n}: {bad:?}");
            }
        }
    }

    #[test]
    fn module_dimensions() {
        for (n, d) in [(2, 2), (3, 8), (4, 20)] {
            assert_eq!(generate_module(Family::Parabose, n).unwrap().dim, d);
        }
        for f in [Family::Parafermi, Family::Parabose] {
            let m = generate_module(f, 5).unwrap();
            assert_eq!(m.dim, 40);
            assert_eq!(m.dim, tableaux_count(5));
        }
    }

    proptest! {
        #[test]
        fn ad_shifts_weight(js in proptest::collection::vec(1usize..=4, 3), i in 1usize..4, c in -3i64..=3) {
            let n = 4;
            let w = Word(js.iter().map(|&j| Generator::Raise(j)).collect());
            let v = E::from_word(Family::Parabose, w, ScalarQ::q_pow(c));
            let wt = weight(n, &v).unwrap();
            for (x, sgn) in [(ad_raise(n, i, &v).unwrap(), 1), (ad_lower(n, i, &v).unwrap(), -1)] {
                if x.is_zero() {
                    continue;
                }
                let mut want = wt.clone();
                want[i - 1] += sgn;
                want[i] -= sgn;
                prop_assert_eq!(weight(n, &x), Some(want));
            }
        }
    }

    #[test]
    fn rank_of_dependent_set() {
        let f = Family::Parafermi;
        let x = lambda_vector(f, LambdaLabel::plain(1, 3, 2));
        let y = x.scale(&ScalarQ::q());
        assert_eq!(rank(&[x.clone(), y, x.clone() + lambda_vector(f, LambdaLabel::tilde(1, 2, 3))]), 2);
    }

    #[test]
    fn vanish_in_representations() {
        let rep = OscillatorRep::deformed(Family::Parafermi, 3, 1).unwrap();
        let recs = check_serre_vanishing(&rep);
        assert_eq!(recs.len(), 8);
        assert!(recs.iter().all(|r| r.passed()));
        let rep = OscillatorRep::deformed(Family::Parabose, 2, 4).unwrap();
        let recs = check_serre_vanishing(&rep);
        assert_eq!(recs.len(), 3);
        assert!(recs.iter().all(|r| r.passed()));
        // A non-relation in place of a state is caught.
        let w = Word(vec![Generator::Raise(1), Generator::Raise(1), Generator::Raise(2)]);
        let x = E::from_word(Family::Parabose, w, ScalarQ::one());
        assert!(!rep.check_zero(&x, &x.max_raise_degree(2), SAME).unwrap().pass);
    }
}
