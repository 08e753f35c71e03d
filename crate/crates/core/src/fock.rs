//! Order-one oscillator representations on truncated Fock spaces and their
//! graded tensor powers.
//!
//! Every generator acts monomially (at most one nonzero entry per column),
//! so a word applied to a basis state is a single state times a scalar.
//! Evaluation therefore works column by column.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{AlgebraError, ScalarError};
use crate::ncpoly::{Family, FreeElem, Generator, TensorElem, Word};
use crate::qrat::ScalarQ;
use crate::relations::{oscillator_relations, RelElement, RelationInstance};
use crate::scalar::{Coeff, Rational};

/// Occupation numbers `(n_1, …, n_N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccState(pub Vec<u32>);

impl fmt::Display for OccState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(">")
    }
}

fn accumulate<F: Coeff>(map: &mut BTreeMap<usize, F>, key: usize, c: F) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat<F> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), F>,
}

impl<F: Coeff> SparseMat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        let entries = (0..dim).map(|k| ((k, k), F::one())).collect();
        SparseMat { rows: dim, cols: dim, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(F::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &F)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: F) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            return;
        }
        let key = (r, c);
        let cur = self.entries.remove(&key);
        let new = match cur {
            Some(x) => x + &v,
            None => v,
        };
        if !new.is_zero() {
            self.entries.insert(key, new);
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::ArityMismatch(self.cols, other.rows));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &F)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for (j, b) in row {
                    out.add_entry(i, *j, a.clone() * *b);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(AlgebraError::ArityMismatch(self.rows, other.rows));
        }
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_entry(r, c, v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (&(r, k), v) in &self.entries {
            out.add_entry(r, k, v.clone() * c);
        }
        out
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&other.scale(&-F::one()))
    }

    /// Keeps only the listed columns.
    pub fn restrict_columns(&self, cols: &[usize]) -> Self {
        let keep: std::collections::BTreeSet<usize> = cols.iter().copied().collect();
        let entries = self
            .entries
            .iter()
            .filter(|((_, c), _)| keep.contains(c))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        SparseMat { rows: self.rows, cols: self.cols, entries }
    }

    /// Column `c` as a sparse vector.
    pub fn column(&self, c: usize) -> BTreeMap<usize, F> {
        self.entries
            .iter()
            .filter(|((_, k), _)| *k == c)
            .map(|((r, _), v)| (*r, v.clone()))
            .collect()
    }

    pub fn from_columns(rows: usize, cols: usize, data: &[(usize, BTreeMap<usize, F>)]) -> Self {
        let mut out = Self::zeros(rows, cols);
        for (c, col) in data {
            for (r, v) in col {
                out.add_entry(*r, *c, v.clone());
            }
        }
        out
    }
}

/// Result of checking that an element vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub pass: bool,
    pub residual: Option<String>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome { pass: true, residual: None }
    }

    pub fn fail(residual: String) -> Self {
        Outcome { pass: false, residual: Some(residual) }
    }

    pub fn from_bool(ok: bool, residual: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass()
        } else {
            Self::fail(residual())
        }
    }
}

/// Cross-mode phase exponents (powers of `q`) of the ladder operators:
/// `a^+_i` carries `q^{rb·Σ_{j<i} n_j + ra·Σ_{j>i} n_j}` and `a^-_i` the
/// analogous factor with `(lb, la)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PhaseExponents {
    pub raise_before: i64,
    pub raise_after: i64,
    pub lower_before: i64,
    pub lower_after: i64,
}

/// Parameters of an order-one representation beyond its phases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Flavor {
    /// Fully deformed.
    Deformed,
    /// Ladder amplitudes and phases at `s = 1`, Cartan entries kept symbolic.
    Hybrid,
}

fn gen_slot(g: Generator) -> usize {
    match g {
        Generator::Raise(i) => 4 * (i - 1),
        Generator::Lower(i) => 4 * (i - 1) + 1,
        Generator::Cartan { mode, inverse: false } => 4 * (mode - 1) + 2,
        Generator::Cartan { mode, inverse: true } => 4 * (mode - 1) + 3,
    }
}

type MonoCol<F> = Vec<Option<(usize, F)>>;

/// A representation of the free algebra on `a^±_i, q^{±h_i}` in which
/// every generator is a monomial matrix on a truncated occupation basis.
#[derive(Clone, Debug)]
pub struct OscillatorRep<F> {
    family: Family,
    n: usize,
    d: u32,
    dim: usize,
    gens: Vec<MonoCol<F>>,
    parity: Vec<u8>,
}

impl<F: Coeff> OscillatorRep<F> {
    /// Builds from a rule giving the image of each generator on each state.
    pub fn from_rule(
        family: Family,
        n: usize,
        d: u32,
        rule: impl Fn(Generator, &OccState) -> Option<(OccState, F)>,
    ) -> Self {
        let d = if family == Family::Parafermi { 1 } else { d };
        let dim = (d as usize + 1).pow(n as u32);
        let mut rep = OscillatorRep { family, n, d, dim, gens: Vec::new(), parity: Vec::new() };
        let states: Vec<OccState> = (0..dim).map(|c| rep.state(c)).collect();
        rep.parity = states
            .iter()
            .map(|s| match family {
                Family::Parafermi => 0,
                Family::Parabose => (s.0.iter().sum::<u32>() % 2) as u8,
            })
            .collect();
        let mut gens = vec![Vec::new(); 4 * n];
        for i in 1..=n {
            for g in [
                Generator::Raise(i),
                Generator::Lower(i),
                Generator::Cartan { mode: i, inverse: false },
                Generator::Cartan { mode: i, inverse: true },
            ] {
                gens[gen_slot(g)] = states
                    .iter()
                    .map(|s| {
                        rule(g, s).and_then(|(t, c)| {
                            if c.is_zero() {
                                None
                            } else {
                                rep.index(&t).map(|r| (r, c))
                            }
                        })
                    })
                    .collect();
            }
        }
        rep.gens = gens;
        rep
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn cutoff(&self) -> u32 {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Lexicographic basis: mode 1 is the most significant digit.
    pub fn state(&self, idx: usize) -> OccState {
        let base = self.d as usize + 1;
        let mut v = vec![0u32; self.n];
        let mut x = idx;
        for k in (0..self.n).rev() {
            v[k] = (x % base) as u32;
            x /= base;
        }
        OccState(v)
    }

    pub fn index(&self, s: &OccState) -> Option<usize> {
        if s.0.len() != self.n || s.0.iter().any(|&x| x > self.d) {
            return None;
        }
        let base = self.d as usize + 1;
        Some(s.0.iter().fold(0usize, |acc, &x| acc * base + x as usize))
    }

    pub fn vacuum(&self) -> usize {
        0
    }

    pub fn parity_bit(&self, idx: usize) -> u8 {
        self.parity[idx]
    }

    pub fn act(&self, g: Generator, col: usize) -> Option<(usize, &F)> {
        self.gens[gen_slot(g)][col].as_ref().map(|(r, c)| (*r, c))
    }

    /// Applies a word (rightmost letter first) to a basis state.
    pub fn act_word(&self, w: &Word, col: usize) -> Option<(usize, F)> {
        let mut cur = col;
        let mut coef = F::one();
        for g in w.letters().iter().rev() {
            let (r, c) = self.act(*g, cur)?;
            cur = r;
            coef = coef * c;
        }
        Some((cur, coef))
    }

    fn check_modes(&self, max_mode: usize, family: Family) -> Result<(), AlgebraError> {
        if family != self.family {
            return Err(AlgebraError::FamilyMismatch(family.name(), self.family.name()));
        }
        if max_mode > self.n {
            return Err(AlgebraError::ModeOutOfRange { mode: max_mode, n: self.n });
        }
        Ok(())
    }

    /// Image of `e` applied to the basis vector `col`.
    pub fn apply<G: Coeff>(
        &self,
        e: &FreeElem<G>,
        col: usize,
        conv: &dyn Fn(&G) -> Result<F, ScalarError>,
    ) -> Result<BTreeMap<usize, F>, AlgebraError> {
        self.check_modes(e.max_mode(), e.family())?;
        let mut out = BTreeMap::new();
        for (w, c) in e.terms() {
            if let Some((r, x)) = self.act_word(w, col) {
                accumulate(&mut out, r, conv(c)? * &x);
            }
        }
        Ok(out)
    }

    pub fn matrix(&self, g: Generator) -> SparseMat<F> {
        let mut m = SparseMat::zeros(self.dim, self.dim);
        for (c, e) in self.gens[gen_slot(g)].iter().enumerate() {
            if let Some((r, v)) = e {
                m.add_entry(*r, c, v.clone());
            }
        }
        m
    }

    /// Diagonal `(−1)^{Σ n_i}` for parabose, identity for parafermi.
    pub fn parity_matrix(&self) -> SparseMat<F> {
        let mut m = SparseMat::zeros(self.dim, self.dim);
        for c in 0..self.dim {
            let v = if self.parity[c] == 1 { -F::one() } else { F::one() };
            m.add_entry(c, c, v);
        }
        m
    }

    /// Full (truncated) matrix of an element over the representation's field.
    pub fn evaluate(&self, e: &FreeElem<F>) -> Result<SparseMat<F>, AlgebraError> {
        let conv = |c: &F| Ok(c.clone());
        let mut cols = Vec::with_capacity(self.dim);
        for c in 0..self.dim {
            cols.push((c, self.apply(e, c, &conv)?));
        }
        Ok(SparseMat::from_columns(self.dim, self.dim, &cols))
    }

    /// States `v` with `n_i(v) + margin_i ≤ d` for every bose mode.
    pub fn margin_safe_columns(&self, margin: &[usize]) -> Vec<usize> {
        if self.family == Family::Parafermi {
            return (0..self.dim).collect();
        }
        (0..self.dim)
            .filter(|&c| {
                let s = self.state(c);
                s.0.iter()
                    .enumerate()
                    .all(|(k, &x)| x as usize + margin.get(k).copied().unwrap_or(0) <= self.d as usize)
            })
            .collect()
    }

    /// Asserts `e` vanishes on the margin-safe columns.
    pub fn check_zero<G: Coeff>(
        &self,
        e: &FreeElem<G>,
        margin: &[usize],
        conv: &dyn Fn(&G) -> Result<F, ScalarError>,
    ) -> Result<Outcome, AlgebraError> {
        for c in self.margin_safe_columns(margin) {
            let col = self.apply(e, c, conv)?;
            if let Some((r, v)) = col.iter().next() {
                return Ok(Outcome::fail(format!("{} <- {}: {}", self.state(*r), self.state(c), v)));
            }
        }
        Ok(Outcome::pass())
    }
}

fn identity_conv(c: &ScalarQ) -> Result<ScalarQ, ScalarError> {
    Ok(c.clone())
}

/// Conversion used when evaluating `ScalarQ` relations over `ScalarQ`.
pub const SAME: &dyn Fn(&ScalarQ) -> Result<ScalarQ, ScalarError> = &identity_conv;

fn jw_sign(family: Family, s: &OccState, i: usize) -> i64 {
    match family {
        Family::Parafermi => {
            if s.0[..i - 1].iter().sum::<u32>() % 2 == 1 {
                -1
            } else {
                1
            }
        }
        Family::Parabose => 1,
    }
}

fn phase_exp(s: &OccState, i: usize, before: i64, after: i64) -> i64 {
    let b: i64 = s.0[..i - 1].iter().map(|&x| x as i64).sum();
    let a: i64 = s.0[i..].iter().map(|&x| x as i64).sum();
    before * b + after * a
}

fn deformed_rule(
    family: Family,
    d: u32,
    ph: PhaseExponents,
    flavor: Flavor,
) -> impl Fn(Generator, &OccState) -> Option<(OccState, ScalarQ)> {
    let d = if family == Family::Parafermi { 1 } else { d };
    move |g, s| {
        let mut t = s.clone();
        match g {
            Generator::Raise(i) => {
                if s.0[i - 1] >= d {
                    return None;
                }
                t.0[i - 1] += 1;
                let sign = ScalarQ::from_int(jw_sign(family, s, i));
                let ph = match flavor {
                    Flavor::Deformed => {
                        ScalarQ::q_pow(phase_exp(s, i, ph.raise_before, ph.raise_after))
                    }
                    Flavor::Hybrid => ScalarQ::one(),
                };
                Some((t, sign * &ph))
            }
            Generator::Lower(i) => {
                let m = s.0[i - 1];
                if m == 0 {
                    return None;
                }
                t.0[i - 1] -= 1;
                let sign = ScalarQ::from_int(jw_sign(family, s, i));
                let (ph, amp) = match flavor {
                    Flavor::Deformed => (
                        ScalarQ::q_pow(phase_exp(s, i, ph.lower_before, ph.lower_after)),
                        ScalarQ::qnum(m as i64),
                    ),
                    Flavor::Hybrid => (ScalarQ::one(), ScalarQ::from_int(m as i64)),
                };
                Some((t, sign * &ph * &amp))
            }
            Generator::Cartan { mode, inverse } => {
                let k = 2 * s.0[mode - 1] as i64 - family.sign();
                Some((t, ScalarQ::s_pow(if inverse { -k } else { k })))
            }
        }
    }
}

fn phase_candidates() -> Vec<PhaseExponents> {
    let r = -2i64..=2;
    let mut out = Vec::new();
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    out.push(PhaseExponents {
                        raise_before: a,
                        raise_after: b,
                        lower_before: c,
                        lower_after: d,
                    });
                }
            }
        }
    }
    // Prefer a raise operator whose phase depends only on later modes,
    // then the smallest exponents.
    out.sort_by_key(|p| {
        (
            p.raise_before != 0,
            p.raise_before.abs() + p.raise_after.abs() + p.lower_before.abs() + p.lower_after.abs(),
            (p.raise_before, p.raise_after, p.lower_before, p.lower_after),
        )
    });
    out
}

fn violations(rep: &OscillatorRep<ScalarQ>, rels: &[RelationInstance]) -> Vec<String> {
    let mut bad = Vec::new();
    for r in rels {
        let RelElement::Free(e) = &r.element else { continue };
        match rep.check_zero(e, &r.margin[0], SAME) {
            Ok(o) if o.pass => {}
            Ok(o) => bad.push(format!("{}{:?}: {}", r.name, r.indices, o.residual.unwrap_or_default())),
            Err(err) => bad.push(format!("{}{:?}: {err}", r.name, r.indices)),
        }
    }
    bad
}

/// Solves the cross-mode phase exponents on two modes by exhaustive search.
pub fn solve_phases(family: Family) -> Result<PhaseExponents, AlgebraError> {
    static CACHE: OnceLock<[Result<PhaseExponents, String>; 2]> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        let solve = |f: Family| -> Result<PhaseExponents, String> {
            let rels = oscillator_relations(2, f);
            for ph in phase_candidates() {
                let rep = OscillatorRep::from_rule(f, 2, 3, deformed_rule(f, 3, ph, Flavor::Deformed));
                if violations(&rep, &rels).is_empty() {
                    return Ok(ph);
                }
            }
            Err(format!("no phase assignment satisfies the {f} oscillator relations"))
        };
        [solve(Family::Parafermi), solve(Family::Parabose)]
    });
    let slot = match family {
        Family::Parafermi => &cache[0],
        Family::Parabose => &cache[1],
    };
    slot.clone().map_err(AlgebraError::Construction)
}

impl OscillatorRep<ScalarQ> {
    /// The deformed order-one representation, re-verified against every
    /// oscillator relation after construction.
    pub fn deformed(family: Family, n: usize, d: u32) -> Result<Self, AlgebraError> {
        if n == 0 || d == 0 {
            return Err(AlgebraError::InvalidParameter("modes and cutoff must be positive".into()));
        }
        let ph = solve_phases(family)?;
        let rep = Self::with_phases(family, n, d, ph);
        let bad = violations(&rep, &oscillator_relations(n, family));
        if bad.is_empty() {
            Ok(rep)
        } else {
            Err(AlgebraError::Construction(bad.join("; ")))
        }
    }

    pub fn with_phases(family: Family, n: usize, d: u32, ph: PhaseExponents) -> Self {
        Self::from_rule(family, n, d, deformed_rule(family, d, ph, Flavor::Deformed))
    }

    /// Classical ladder operators with the deformed Cartan entries
    /// `s^{2n_i ∓ 1}`. Relations evaluated here and then specialized at
    /// `s = 1` entrywise give their classical values even when a
    /// coefficient has a pole at `s = 1`.
    pub fn hybrid_classical(family: Family, n: usize, d: u32) -> Self {
        let ph = PhaseExponents { raise_before: 0, raise_after: 0, lower_before: 0, lower_after: 0 };
        Self::from_rule(family, n, d, deformed_rule(family, d, ph, Flavor::Hybrid))
    }

    /// Specialization `s ↦ s0`.
    pub fn specialize(&self, s0: &Rational) -> Result<OscillatorRep<Rational>, ScalarError> {
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut col = Vec::with_capacity(g.len());
            for e in g {
                col.push(match e {
                    Some((r, c)) => {
                        let v = c.eval_at(s0)?;
                        if v.is_zero() {
                            None
                        } else {
                            Some((*r, v))
                        }
                    }
                    None => None,
                });
            }
            gens.push(col);
        }
        Ok(OscillatorRep {
            family: self.family,
            n: self.n,
            d: self.d,
            dim: self.dim,
            gens,
            parity: self.parity.clone(),
        })
    }
}

impl OscillatorRep<Rational> {
    /// The undeformed oscillators (the deformed representation at `s = 1`).
    pub fn classical(family: Family, n: usize, d: u32) -> Result<Self, AlgebraError> {
        Ok(OscillatorRep::<ScalarQ>::deformed(family, n, d)?.specialize(&Rational::one())?)
    }
}

/// Graded `p`-fold tensor power of an oscillator representation.
#[derive(Clone, Debug)]
pub struct TensorRep<F> {
    base: OscillatorRep<F>,
    arity: usize,
}

impl<F: Coeff> TensorRep<F> {
    pub fn new(base: OscillatorRep<F>, arity: usize) -> Self {
        TensorRep { base, arity }
    }

    pub fn base(&self) -> &OscillatorRep<F> {
        &self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.base.dim.pow(self.arity as u32)
    }

    pub fn decode(&self, col: usize) -> Vec<usize> {
        let b = self.base.dim;
        let mut v = vec![0; self.arity];
        let mut x = col;
        for k in (0..self.arity).rev() {
            v[k] = x % b;
            x /= b;
        }
        v
    }

    pub fn encode(&self, parts: &[usize]) -> usize {
        parts.iter().fold(0, |acc, &x| acc * self.base.dim + x)
    }

    pub fn vacuum(&self) -> usize {
        0
    }

    pub fn render_state(&self, col: usize) -> String {
        self.decode(col).iter().map(|&c| self.base.state(c).to_string()).collect()
    }

    /// One tensor word on one product state. The factor `k` carries the
    /// parity operator to the power of the total degree of later words.
    pub fn act_term(&self, words: &[Word], col: &[usize]) -> Option<(Vec<usize>, F)> {
        let fam = self.base.family;
        let mut later = 0u8;
        let mut sign = 0u8;
        let mut out = vec![0; self.arity];
        let mut coef = F::one();
        for k in (0..self.arity).rev() {
            sign ^= later & self.base.parity[col[k]];
            let (r, c) = self.base.act_word(&words[k], col[k])?;
            out[k] = r;
            coef = coef * &c;
            later ^= words[k].parity(fam).bit();
        }
        if sign == 1 {
            coef = -coef;
        }
        Some((out, coef))
    }

    pub fn apply<G: Coeff>(
        &self,
        t: &TensorElem<G>,
        col: usize,
        conv: &dyn Fn(&G) -> Result<F, ScalarError>,
    ) -> Result<BTreeMap<usize, F>, AlgebraError> {
        if t.arity() != self.arity {
            return Err(AlgebraError::ArityMismatch(t.arity(), self.arity));
        }
        self.base.check_modes(t.max_mode(), t.family())?;
        let parts = self.decode(col);
        let mut out = BTreeMap::new();
        for (ws, c) in t.terms() {
            if let Some((r, x)) = self.act_term(ws, &parts) {
                accumulate(&mut out, self.encode(&r), conv(c)? * &x);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, t: &TensorElem<F>) -> Result<SparseMat<F>, AlgebraError> {
        let conv = |c: &F| Ok(c.clone());
        let dim = self.dim();
        let mut cols = Vec::with_capacity(dim);
        for c in 0..dim {
            cols.push((c, self.apply(t, c, &conv)?));
        }
        Ok(SparseMat::from_columns(dim, dim, &cols))
    }

    /// Product states whose every factor is margin-safe for its own margin.
    pub fn margin_safe_columns(&self, margins: &[Vec<usize>]) -> Vec<usize> {
        let per: Vec<Vec<usize>> = (0..self.arity)
            .map(|k| self.base.margin_safe_columns(margins.get(k).map_or(&[][..], |m| &m[..])))
            .collect();
        let mut out = vec![Vec::new()];
        for choices in &per {
            let mut next = Vec::with_capacity(out.len() * choices.len());
            for prefix in &out {
                for &c in choices {
                    let mut p: Vec<usize> = prefix.clone();
                    p.push(c);
                    next.push(p);
                }
            }
            out = next;
        }
        out.iter().map(|p| self.encode(p)).collect()
    }

    pub fn check_zero<G: Coeff>(
        &self,
        t: &TensorElem<G>,
        margins: &[Vec<usize>],
        conv: &dyn Fn(&G) -> Result<F, ScalarError>,
    ) -> Result<Outcome, AlgebraError> {
        for c in self.margin_safe_columns(margins) {
            let col = self.apply(t, c, conv)?;
            if let Some((r, v)) = col.iter().next() {
                return Ok(Outcome::fail(format!(
                    "{} <- {}: {}",
                    self.render_state(*r),
                    self.render_state(c),
                    v
                )));
            }
        }
        Ok(Outcome::pass())
    }
}

/// Checks a catalog instance in a representation over `ScalarQ`.
pub fn check_relation(rel: &RelationInstance, rep: &OscillatorRep<ScalarQ>) -> Result<Outcome, AlgebraError> {
    match &rel.element {
        RelElement::Free(e) => rep.check_zero(e, &rel.margin[0], SAME),
        RelElement::Tensor(t) => {
            TensorRep::new(rep.clone(), t.arity()).check_zero(t, &rel.margin, SAME)
        }
    }
}

/// Checks a catalog instance in a tensor representation over `ScalarQ`.
pub fn check_relation_tensor(
    rel: &RelationInstance,
    trep: &TensorRep<ScalarQ>,
) -> Result<Outcome, AlgebraError> {
    match &rel.element {
        RelElement::Free(e) => trep.base().check_zero(e, &rel.margin[0], SAME),
        RelElement::Tensor(t) => trep.check_zero(t, &rel.margin, SAME),
    }
}

/// Checks a catalog instance in the classical representation: coefficients
/// are specialized at `s = 1` first.
pub fn check_relation_classical(
    rel: &RelationInstance,
    rep: &OscillatorRep<Rational>,
) -> Result<Outcome, AlgebraError> {
    let conv = |c: &ScalarQ| c.at_one();
    match &rel.element {
        RelElement::Free(e) => rep.check_zero(e, &rel.margin[0], &conv),
        RelElement::Tensor(t) => {
            TensorRep::new(rep.clone(), t.arity()).check_zero(t, &rel.margin, &conv)
        }
    }
}

/// Evaluates `rel` in the hybrid representation and takes the `s → 1`
/// limit entrywise.
pub fn check_relation_limit(
    rel: &RelationInstance,
    hybrid: &OscillatorRep<ScalarQ>,
) -> Result<Outcome, AlgebraError> {
    let RelElement::Free(e) = &rel.element else {
        return Err(AlgebraError::InvalidParameter("limit check expects a free element".into()));
    };
    for c in hybrid.margin_safe_columns(&rel.margin[0]) {
        let col = hybrid.apply(e, c, SAME)?;
        for (r, v) in col {
            let lim = v.at_one()?;
            if !lim.is_zero() {
                return Ok(Outcome::fail(format!(
                    "{} <- {}: {} (limit {})",
                    hybrid.state(r),
                    hybrid.state(c),
                    v,
                    lim
                )));
            }
        }
    }
    Ok(Outcome::pass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type E = FreeElem<ScalarQ>;
    type T = TensorElem<ScalarQ>;

    const PF: Family = Family::Parafermi;
    const PB: Family = Family::Parabose;

    fn st(v: &[u32]) -> OccState {
        OccState(v.to_vec())
    }

    #[test]
    fn solved_phases() {
        let f = solve_phases(PF).unwrap();
        assert_eq!(
            f,
            PhaseExponents { raise_before: 0, raise_after: -1, lower_before: 0, lower_after: 1 }
        );
        let b = solve_phases(PB).unwrap();
        assert_eq!(
            b,
            PhaseExponents { raise_before: 0, raise_after: 1, lower_before: 0, lower_after: -1 }
        );
    }

    #[test]
    fn fermi_single_mode() {
        let rep = OscillatorRep::deformed(PF, 1, 1).unwrap();
        assert_eq!(rep.dim(), 2);
        let ap = rep.matrix(Generator::Raise(1));
        assert_eq!(ap.nnz(), 1);
        assert_eq!(ap.get(1, 0), ScalarQ::one());
        let h = rep.matrix(Generator::Cartan { mode: 1, inverse: false });
        assert_eq!(h.get(0, 0), ScalarQ::s_pow(-1));
        assert_eq!(h.get(1, 1), ScalarQ::s());
    }

    #[test]
    fn bose_number_factor() {
        let rep = OscillatorRep::deformed(PB, 1, 4).unwrap();
        let x = &E::lower(PB, 1) * &E::raise(PB, 1);
        for m in 0..4u32 {
            let c = rep.index(&st(&[m])).unwrap();
            let col = rep.apply(&x, c, SAME).unwrap();
            assert_eq!(col.get(&c).cloned().unwrap(), ScalarQ::qnum(m as i64 + 1));
        }
        assert_eq!(rep.apply(&x, 0, SAME).unwrap().get(&0).cloned().unwrap(), ScalarQ::one());
    }

    #[test]
    fn vacuum_is_annihilated() {
        for (f, n, d) in [(PF, 3, 1), (PB, 2, 4)] {
            let rep = OscillatorRep::deformed(f, n, d).unwrap();
            for i in 1..=n {
                assert!(rep.act(Generator::Lower(i), rep.vacuum()).is_none());
                for j in 1..=n {
                    let x = &E::lower(f, i) * &E::raise(f, j);
                    let col = rep.apply(&x, 0, SAME).unwrap();
                    if i == j {
                        assert_eq!(col.len(), 1);
                        assert_eq!(col[&0], ScalarQ::one());
                    } else {
                        assert!(col.is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn margin_examples() {
        let f = OscillatorRep::deformed(PF, 3, 1).unwrap();
        assert_eq!(f.margin_safe_columns(&[3, 3, 3]).len(), 8);
        let b = OscillatorRep::deformed(PB, 1, 6).unwrap();
        assert_eq!(b.margin_safe_columns(&[3]), vec![0, 1, 2, 3]);
        let b2 = OscillatorRep::deformed(PB, 2, 6).unwrap();
        let rel = crate::relations::serre_ii(PB, true, 1, 2, 2);
        let m = rel.max_raise_degree(2);
        assert_eq!(m, vec![1, 2]);
        let safe = b2.margin_safe_columns(&m);
        assert!(safe.iter().all(|&c| {
            let s = b2.state(c);
            s.0[0] <= 5 && s.0[1] <= 4
        }));
        assert_eq!(safe.len(), 6 * 5);
    }

    #[test]
    fn cartan_consistency() {
        for (f, n, d) in [(PF, 2, 1), (PB, 2, 3)] {
            let rep = OscillatorRep::deformed(f, n, d).unwrap();
            let pm = rep.parity_matrix();
            assert_eq!(pm.checked_mul(&pm).unwrap(), SparseMat::identity(rep.dim()));
            for i in 1..=n {
                let h = rep.matrix(Generator::Cartan { mode: i, inverse: false });
                let hi = rep.matrix(Generator::Cartan { mode: i, inverse: true });
                assert_eq!(h.checked_mul(&hi).unwrap(), SparseMat::identity(rep.dim()));
                assert_eq!(h.checked_mul(&pm).unwrap(), pm.checked_mul(&h).unwrap());
            }
            if f == PF {
                for i in 1..=n {
                    let a = rep.matrix(Generator::Raise(i));
                    assert!(a.checked_mul(&a).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn corrupted_relation_is_detected() {
        let rep = OscillatorRep::deformed(PF, 2, 1).unwrap();
        let rel = &crate::relations::fe_relations(2, PF)[0];
        assert!(check_relation(rel, &rep).unwrap().pass);
        let bad = check_relation(&rel.perturbed(), &rep).unwrap();
        assert!(!bad.pass);
        assert!(bad.residual.is_some());
    }

    #[test]
    fn tensor_sign_rule_in_representation() {
        let rep = OscillatorRep::deformed(PB, 1, 3).unwrap();
        let tr = TensorRep::new(rep, 2);
        let x = E::raise(PB, 1);
        let y = E::lower(PB, 1);
        let lhs = &T::embed(&y, 1, 2) * &T::embed(&x, 0, 2);
        let xy = T::pure(&[x, y]).unwrap();
        assert_eq!(
            tr.evaluate(&lhs).unwrap(),
            tr.evaluate(&xy).unwrap().scale(&-ScalarQ::one())
        );
    }

    #[test]
    fn specialization_at_one() {
        let rep = OscillatorRep::<Rational>::classical(PB, 2, 3).unwrap();
        let a = rep.matrix(Generator::Lower(1));
        let c = rep.index(&st(&[3, 1])).unwrap();
        let r = rep.index(&st(&[2, 1])).unwrap();
        assert_eq!(a.get(r, c), Rational::from_integer(3.into()));
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec(
            (0..4u8).prop_map(|k| match k {
                0 => Generator::Raise(1),
                1 => Generator::Lower(1),
                2 => Generator::Cartan { mode: 1, inverse: false },
                _ => Generator::Cartan { mode: 1, inverse: true },
            }),
            0..3,
        )
        .prop_map(Word)
    }

    fn tensor_strategy() -> impl Strategy<Value = T> {
        prop::collection::vec((word_strategy(), word_strategy(), -2i64..3), 1..3).prop_map(|ts| {
            T::from_terms(
                PB,
                2,
                ts.into_iter().map(|(u, v, c)| (vec![u, v], ScalarQ::monomial(c, 1))),
            )
        })
    }

    fn rep_b13() -> &'static (OscillatorRep<ScalarQ>, TensorRep<ScalarQ>) {
        static R: OnceLock<(OscillatorRep<ScalarQ>, TensorRep<ScalarQ>)> = OnceLock::new();
        R.get_or_init(|| {
            let rep = OscillatorRep::deformed(PB, 1, 3).unwrap();
            (rep.clone(), TensorRep::new(rep, 2))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn tensor_evaluation_is_multiplicative(a in tensor_strategy(), b in tensor_strategy()) {
            let (_, tr) = rep_b13();
            let prod = &a * &b;
            let ma = tr.evaluate(&a).unwrap();
            let mb = tr.evaluate(&b).unwrap();
            let mp = tr.evaluate(&prod).unwrap();
            let got = ma.checked_mul(&mb).unwrap();
            // truncation acts on each factor matrix, so the margin is additive
            let (da, db) = (a.max_raise_degree(1), b.max_raise_degree(1));
            let margins: Vec<Vec<usize>> = (0..2).map(|k| vec![da[k][0] + db[k][0]]).collect();
            let safe = tr.margin_safe_columns(&margins);
            prop_assert_eq!(got.restrict_columns(&safe), mp.restrict_columns(&safe));
        }

        #[test]
        fn free_evaluation_respects_brackets(u in word_strategy(), v in word_strategy()) {
            let (rep, _) = rep_b13();
            let x = E::from_word(PB, u, ScalarQ::s());
            let y = E::from_word(PB, v, ScalarQ::from_int(2));
            let br = x.supercomm(&y).unwrap();
            let sign = if x.parity().unwrap().bit() & y.parity().unwrap().bit() == 1 { -1 } else { 1 };
            let mx = rep.evaluate(&x).unwrap();
            let my = rep.evaluate(&y).unwrap();
            let want = mx.checked_mul(&my).unwrap()
                .checked_sub(&my.checked_mul(&mx).unwrap().scale(&ScalarQ::from_int(sign))).unwrap();
            let m = br.max_raise_degree(1);
            let safe = rep.margin_safe_columns(&m);
            prop_assert_eq!(rep.evaluate(&br).unwrap().restrict_columns(&safe), want.restrict_columns(&safe));
        }
    }
}
