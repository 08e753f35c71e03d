//! Free graded noncommutative polynomials over a coefficient field, and
//! p-fold tensor words with the graded sign rule.
//!
//! Nothing here reorders or simplifies words: `q^{h_i} q^{-h_i}` stays a
//! length-two word. Vanishing is decided by evaluating in a representation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::scalar::Coeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Parafermi,
    Parabose,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Parafermi => "parafermi",
            Family::Parabose => "parabose",
        }
    }

    /// `+1` for the upper-sign (parafermi) case, `-1` for parabose.
    pub fn sign(self) -> i64 {
        match self {
            Family::Parafermi => 1,
            Family::Parabose => -1,
        }
    }

    /// Grading of the ladder generators `a±_i`.
    pub fn ladder_parity(self) -> Parity {
        match self {
            Family::Parafermi => Parity::Even,
            Family::Parabose => Parity::Odd,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    fn from_bit(b: u8) -> Self {
        if b & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Sign convention for the star anti-involution on products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StarConvention {
    /// `(xy)* = y* x*`
    Plain,
    /// `(xy)* = (-1)^{deg x deg y} y* x*`
    Graded,
}

impl StarConvention {
    pub fn name(self) -> &'static str {
        match self {
            StarConvention::Plain => "plain",
            StarConvention::Graded => "graded",
        }
    }
}

/// A generator of the free algebra. Modes are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Raise(usize),
    Lower(usize),
    /// `q^{h_i}` (`inverse == false`) or `q^{-h_i}`.
    Cartan { mode: usize, inverse: bool },
}

impl Generator {
    pub fn mode(self) -> usize {
        match self {
            Generator::Raise(i) | Generator::Lower(i) => i,
            Generator::Cartan { mode, .. } => mode,
        }
    }

    pub fn is_ladder(self) -> bool {
        !matches!(self, Generator::Cartan { .. })
    }

    pub fn parity(self, family: Family) -> Parity {
        if self.is_ladder() {
            family.ladder_parity()
        } else {
            Parity::Even
        }
    }

    /// Image under the star map on generators.
    pub fn star(self) -> Generator {
        match self {
            Generator::Raise(i) => Generator::Lower(i),
            Generator::Lower(i) => Generator::Raise(i),
            Generator::Cartan { mode, inverse } => Generator::Cartan { mode, inverse: !inverse },
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Raise(i) => write!(f, "a+[{i}]"),
            Generator::Lower(i) => write!(f, "a-[{i}]"),
            Generator::Cartan { mode, inverse: false } => write!(f, "qh[{mode}]"),
            Generator::Cartan { mode, inverse: true } => write!(f, "qh^-1[{mode}]"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn ladder_count(&self) -> usize {
        self.0.iter().filter(|g| g.is_ladder()).count()
    }

    pub fn parity(&self, family: Family) -> Parity {
        match family {
            Family::Parafermi => Parity::Even,
            Family::Parabose => Parity::from_bit((self.ladder_count() % 2) as u8),
        }
    }

    /// Count of raise letters per mode (modes `1..=n`).
    pub fn raise_degree(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for g in &self.0 {
            if let Generator::Raise(i) = g {
                if (1..=n).contains(i) {
                    out[i - 1] += 1;
                }
            }
        }
        out
    }

    pub fn max_mode(&self) -> usize {
        self.0.iter().map(|g| g.mode()).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

fn check_family(a: Family, b: Family) -> Result<(), AlgebraError> {
    if a == b {
        Ok(())
    } else {
        Err(AlgebraError::FamilyMismatch(a.name(), b.name()))
    }
}

fn accumulate<K: Ord, F: Coeff>(map: &mut BTreeMap<K, F>, key: K, c: F) {
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

/// Element of the free algebra on `a±_i, q^{±h_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeElem<F> {
    family: Family,
    terms: BTreeMap<Word, F>,
}

impl<F: Coeff> FreeElem<F> {
    pub fn zero(family: Family) -> Self {
        FreeElem { family, terms: BTreeMap::new() }
    }

    pub fn one(family: Family) -> Self {
        Self::scalar(family, F::one())
    }

    pub fn scalar(family: Family, c: F) -> Self {
        Self::from_word(family, Word::empty(), c)
    }

    pub fn from_word(family: Family, w: Word, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreeElem { family, terms }
    }

    pub fn gen(family: Family, g: Generator) -> Self {
        Self::from_word(family, Word(vec![g]), F::one())
    }

    pub fn raise(family: Family, i: usize) -> Self {
        Self::gen(family, Generator::Raise(i))
    }

    pub fn lower(family: Family, i: usize) -> Self {
        Self::gen(family, Generator::Lower(i))
    }

    /// `q^{h_i}` or, with `inverse`, `q^{-h_i}`.
    pub fn cartan(family: Family, i: usize, inverse: bool) -> Self {
        Self::gen(family, Generator::Cartan { mode: i, inverse })
    }

    /// Builds from explicit `(word, coefficient)` pairs, merging duplicates.
    pub fn from_terms(family: Family, terms: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut map = BTreeMap::new();
        for (w, c) in terms {
            accumulate(&mut map, w, c);
        }
        FreeElem { family, terms: map }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        check_family(self.family, other.family)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            accumulate(&mut terms, w.clone(), c.clone());
        }
        Ok(FreeElem { family: self.family, terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        check_family(self.family, other.family)?;
        let mut terms = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                accumulate(&mut terms, u.concat(v), a.clone() * b);
            }
        }
        Ok(FreeElem { family: self.family, terms })
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.family);
        }
        let terms = self.terms.iter().map(|(w, a)| (w.clone(), a.clone() * c)).collect();
        FreeElem { family: self.family, terms }
    }

    fn neg_ref(&self) -> Self {
        let terms = self.terms.iter().map(|(w, a)| (w.clone(), -a.clone())).collect();
        FreeElem { family: self.family, terms }
    }

    /// Parity of a homogeneous element; zero counts as even.
    pub fn parity(&self) -> Result<Parity, AlgebraError> {
        let mut it = self.terms.keys().map(|w| w.parity(self.family));
        let Some(first) = it.next() else {
            return Ok(Parity::Even);
        };
        if it.all(|p| p == first) {
            Ok(first)
        } else {
            Err(AlgebraError::NotHomogeneous)
        }
    }

    /// `ab − (−1)^{deg a·deg b} λ·ba`.
    pub fn graded_qcomm(&self, other: &Self, lambda: &F) -> Result<Self, AlgebraError> {
        check_family(self.family, other.family)?;
        let sign = if self.parity()?.bit() & other.parity()?.bit() == 1 { -1 } else { 1 };
        let ab = self.checked_mul(other)?;
        let ba = other.checked_mul(self)?;
        ab.checked_sub(&ba.scale(&(lambda.clone() * &F::from_int(sign))))
    }

    /// Supercommutator `[[a, b]]`.
    pub fn supercomm(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.graded_qcomm(other, &F::one())
    }

    /// Ungraded q-commutator `ab − λ·ba`.
    pub fn qcomm(&self, other: &Self, lambda: &F) -> Result<Self, AlgebraError> {
        let ab = self.checked_mul(other)?;
        let ba = other.checked_mul(self)?;
        ab.checked_sub(&ba.scale(lambda))
    }

    /// The star anti-involution: reverses words, swaps `a+ ↔ a-`, inverts
    /// Cartan letters and conjugates coefficients.
    pub fn star(&self, convention: StarConvention) -> Self {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let letters: Vec<Generator> = w.0.iter().rev().map(|g| g.star()).collect();
            let mut coef = c.conj();
            if convention == StarConvention::Graded && self.family == Family::Parabose {
                let m = w.ladder_count();
                if (m * m.saturating_sub(1) / 2) % 2 == 1 {
                    coef = -coef;
                }
            }
            accumulate(&mut terms, Word(letters), coef);
        }
        FreeElem { family: self.family, terms }
    }

    /// Per-mode maximum raise degree over the words of the element.
    pub fn max_raise_degree(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for w in self.terms.keys() {
            for (o, d) in out.iter_mut().zip(w.raise_degree(n)) {
                *o = (*o).max(d);
            }
        }
        out
    }

    pub fn max_mode(&self) -> usize {
        self.terms.keys().map(Word::max_mode).max().unwrap_or(0)
    }

    /// Applies `f` to every coefficient.
    pub fn try_map_coeffs<G: Coeff, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<FreeElem<G>, E> {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            accumulate(&mut terms, w.clone(), f(c)?);
        }
        Ok(FreeElem { family: self.family, terms })
    }

    /// Same element with a different grading tag (words unchanged).
    pub fn with_family(&self, family: Family) -> Self {
        FreeElem { family, terms: self.terms.clone() }
    }
}

impl<F: Coeff> fmt::Display for FreeElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}

macro_rules! free_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<F: Coeff> $tr<&FreeElem<F>> for &FreeElem<F> {
            type Output = FreeElem<F>;
            fn $method(self, rhs: &FreeElem<F>) -> FreeElem<F> {
                self.$checked(rhs).expect("operands of different families")
            }
        }
        impl<F: Coeff> $tr<FreeElem<F>> for FreeElem<F> {
            type Output = FreeElem<F>;
            fn $method(self, rhs: FreeElem<F>) -> FreeElem<F> {
                self.$checked(&rhs).expect("operands of different families")
            }
        }
    };
}

free_binop!(Add, add, checked_add);
free_binop!(Sub, sub, checked_sub);
free_binop!(Mul, mul, checked_mul);

impl<F: Coeff> Neg for FreeElem<F> {
    type Output = FreeElem<F>;
    fn neg(self) -> FreeElem<F> {
        self.neg_ref()
    }
}

impl<F: Coeff> Neg for &FreeElem<F> {
    type Output = FreeElem<F>;
    fn neg(self) -> FreeElem<F> {
        self.neg_ref()
    }
}

/// A formal sum of p-fold tensor words. Arity zero is the ground field.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElem<F> {
    family: Family,
    arity: usize,
    terms: BTreeMap<Vec<Word>, F>,
}

impl<F: Coeff> TensorElem<F> {
    pub fn zero(family: Family, arity: usize) -> Self {
        TensorElem { family, arity, terms: BTreeMap::new() }
    }

    pub fn one(family: Family, arity: usize) -> Self {
        Self::from_term(family, vec![Word::empty(); arity], F::one())
    }

    pub fn scalar(family: Family, arity: usize, c: F) -> Self {
        Self::from_term(family, vec![Word::empty(); arity], c)
    }

    pub fn from_term(family: Family, words: Vec<Word>, c: F) -> Self {
        let arity = words.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(words, c);
        }
        TensorElem { family, arity, terms }
    }

    pub fn from_terms(
        family: Family,
        arity: usize,
        terms: impl IntoIterator<Item = (Vec<Word>, F)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (ws, c) in terms {
            assert_eq!(ws.len(), arity, "tensor term of wrong arity");
            accumulate(&mut map, ws, c);
        }
        TensorElem { family, arity, terms: map }
    }

    /// `x₁ ⊗ … ⊗ x_p`, expanded multilinearly.
    pub fn pure(factors: &[FreeElem<F>]) -> Result<Self, AlgebraError> {
        let family = factors.first().map_or(Family::Parafermi, |f| f.family);
        let mut acc = Self::one(family, 0);
        for x in factors {
            check_family(family, x.family)?;
            acc = acc.concat(&Self::from_free(x));
        }
        Ok(acc)
    }

    /// A free element as an arity-one tensor.
    pub fn from_free(x: &FreeElem<F>) -> Self {
        let terms = x.terms.iter().map(|(w, c)| (vec![w.clone()], c.clone())).collect();
        TensorElem { family: x.family, arity: 1, terms }
    }

    /// `1^{⊗(pos)} ⊗ x ⊗ 1^{⊗(arity-pos-1)}` with 0-based `pos`.
    pub fn embed(x: &FreeElem<F>, pos: usize, arity: usize) -> Self {
        assert!(pos < arity);
        let terms = x.terms.iter().map(|(w, c)| {
            let mut ws = vec![Word::empty(); arity];
            ws[pos] = w.clone();
            (ws, c.clone())
        });
        Self::from_terms(x.family, arity, terms)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar of an arity-zero element.
    pub fn scalar_part(&self) -> F {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(F::zero)
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        check_family(self.family, other.family)?;
        if self.arity != other.arity {
            return Err(AlgebraError::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (ws, c) in &other.terms {
            accumulate(&mut terms, ws.clone(), c.clone());
        }
        Ok(TensorElem { family: self.family, arity: self.arity, terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&other.scale(&-F::one()))
    }

    /// Graded product:
    /// `(u₁⊗…⊗u_p)(v₁⊗…⊗v_p) = (−1)^{Σ_{k>l} deg u_k deg v_l} u₁v₁ ⊗ … ⊗ u_pv_p`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let fam = self.family;
        let mut terms = BTreeMap::new();
        for (us, a) in &self.terms {
            let upar: Vec<u8> = us.iter().map(|w| w.parity(fam).bit()).collect();
            // suffix[l] = Σ_{k>l} deg u_k
            let mut suffix = vec![0u8; us.len()];
            let mut acc = 0u8;
            for l in (0..us.len()).rev() {
                suffix[l] = acc;
                acc ^= upar[l];
            }
            for (vs, b) in &other.terms {
                let mut sign = 0u8;
                for (l, v) in vs.iter().enumerate() {
                    sign ^= suffix[l] & v.parity(fam).bit();
                }
                let ws: Vec<Word> = us.iter().zip(vs).map(|(u, v)| u.concat(v)).collect();
                let mut c = a.clone() * b;
                if sign == 1 {
                    c = -c;
                }
                accumulate(&mut terms, ws, c);
            }
        }
        Ok(TensorElem { family: fam, arity: self.arity, terms })
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.family, self.arity);
        }
        let terms = self.terms.iter().map(|(w, a)| (w.clone(), a.clone() * c)).collect();
        TensorElem { family: self.family, arity: self.arity, terms }
    }

    /// Juxtaposition `x ⊗ y` of an arity-p and an arity-r element.
    pub fn concat(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (us, a) in &self.terms {
            for (vs, b) in &other.terms {
                let mut ws = us.clone();
                ws.extend(vs.iter().cloned());
                accumulate(&mut terms, ws, a.clone() * b);
            }
        }
        TensorElem { family: self.family, arity: self.arity + other.arity, terms }
    }

    /// Applies one linear map per tensor factor and concatenates the images.
    ///
    /// `maps[k]` sends a word of factor `k` to a tensor of some fixed arity.
    /// The maps used here are even, so no Koszul signs arise.
    pub fn map_factors(&self, maps: &[&dyn Fn(&Word) -> TensorElem<F>]) -> Self {
        assert_eq!(maps.len(), self.arity);
        let mut out: Option<Self> = None;
        for (ws, c) in &self.terms {
            let mut acc = Self::scalar(self.family, 0, c.clone());
            for (w, m) in ws.iter().zip(maps) {
                acc = acc.concat(&m(w));
            }
            out = Some(match out {
                None => acc,
                Some(o) => o.checked_add(&acc).expect("images of equal arity"),
            });
        }
        out.unwrap_or_else(|| {
            let arity = maps.iter().map(|m| m(&Word::empty()).arity).sum();
            Self::zero(self.family, arity)
        })
    }

    /// Multiplication map `m: A ⊗ … ⊗ A → A` (word concatenation).
    pub fn multiply_out(&self) -> FreeElem<F> {
        let terms = self.terms.iter().map(|(ws, c)| {
            let w = ws.iter().fold(Word::empty(), |acc, w| acc.concat(w));
            (w, c.clone())
        });
        FreeElem::from_terms(self.family, terms)
    }

    /// Per-factor, per-mode maximum raise degree.
    pub fn max_raise_degree(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![0; n]; self.arity];
        for ws in self.terms.keys() {
            for (k, w) in ws.iter().enumerate() {
                for (o, d) in out[k].iter_mut().zip(w.raise_degree(n)) {
                    *o = (*o).max(d);
                }
            }
        }
        out
    }

    pub fn max_mode(&self) -> usize {
        self.terms.keys().flat_map(|ws| ws.iter().map(Word::max_mode)).max().unwrap_or(0)
    }

    /// Star on tensors: factorwise star and reversal of the factor order,
    /// with the Koszul sign of the reversal for parabose when `graded`.
    pub fn star(&self, convention: StarConvention) -> Self {
        let mut terms = BTreeMap::new();
        for (ws, c) in &self.terms {
            let mut coef = c.conj();
            let mut out = Vec::with_capacity(ws.len());
            for w in ws.iter().rev() {
                let x = FreeElem::from_word(self.family, w.clone(), F::one()).star(convention);
                let (w2, c2) = x.terms.into_iter().next().expect("star of a word is a word");
                coef = coef * &c2;
                out.push(w2);
            }
            if convention == StarConvention::Graded && self.family == Family::Parabose {
                let par: Vec<u8> = ws.iter().map(|w| w.parity(self.family).bit()).collect();
                let mut sign = 0u8;
                for a in 0..par.len() {
                    for b in (a + 1)..par.len() {
                        sign ^= par[a] & par[b];
                    }
                }
                if sign == 1 {
                    coef = -coef;
                }
            }
            accumulate(&mut terms, out, coef);
        }
        TensorElem { family: self.family, arity: self.arity, terms }
    }

    pub fn try_map_coeffs<G: Coeff, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<TensorElem<G>, E> {
        let mut terms = BTreeMap::new();
        for (ws, c) in &self.terms {
            accumulate(&mut terms, ws.clone(), f(c)?);
        }
        Ok(TensorElem { family: self.family, arity: self.arity, terms })
    }
}

impl<F: Coeff> fmt::Display for TensorElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (ws, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "({c})*")?;
            }
            for (j, w) in ws.iter().enumerate() {
                if j > 0 {
                    f.write_str(" (x) ")?;
                }
                write!(f, "{w}")?;
            }
        }
        Ok(())
    }
}

macro_rules! tensor_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<F: Coeff> $tr<&TensorElem<F>> for &TensorElem<F> {
            type Output = TensorElem<F>;
            fn $method(self, rhs: &TensorElem<F>) -> TensorElem<F> {
                self.$checked(rhs).expect("tensor operands of different family or arity")
            }
        }
        impl<F: Coeff> $tr<TensorElem<F>> for TensorElem<F> {
            type Output = TensorElem<F>;
            fn $method(self, rhs: TensorElem<F>) -> TensorElem<F> {
                self.$checked(&rhs).expect("tensor operands of different family or arity")
            }
        }
    };
}

tensor_binop!(Add, add, checked_add);
tensor_binop!(Sub, sub, checked_sub);
tensor_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qrat::ScalarQ;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    type E = FreeElem<ScalarQ>;
    type T = TensorElem<ScalarQ>;

    const PF: Family = Family::Parafermi;
    const PB: Family = Family::Parabose;

    fn gen_strategy(n: usize) -> impl Strategy<Value = Generator> {
        (0..4u8, 1..=n).prop_map(|(k, i)| match k {
            0 => Generator::Raise(i),
            1 => Generator::Lower(i),
            2 => Generator::Cartan { mode: i, inverse: false },
            _ => Generator::Cartan { mode: i, inverse: true },
        })
    }

    fn coeff_strategy() -> impl Strategy<Value = ScalarQ> {
        prop::collection::vec((-2i64..3, -2i64..3), 1..3).prop_map(|t| ScalarQ::laurent(&t))
    }

    fn elem_strategy(family: Family) -> impl Strategy<Value = E> {
        prop::collection::vec(
            (prop::collection::vec(gen_strategy(2), 0..3), coeff_strategy()),
            0..4,
        )
        .prop_map(move |t| E::from_terms(family, t.into_iter().map(|(w, c)| (Word(w), c))))
    }

    /// Homogeneous parabose elements: words with a fixed number of ladder letters.
    fn homogeneous_strategy(family: Family, ladders: usize) -> impl Strategy<Value = E> {
        prop::collection::vec(
            (
                prop::collection::vec((any::<bool>(), 1..=2usize), ladders),
                prop::option::of(1..=2usize),
                coeff_strategy(),
            ),
            1..3,
        )
        .prop_map(move |t| {
            E::from_terms(
                family,
                t.into_iter().map(|(ls, cart, c)| {
                    let mut w: Vec<Generator> = ls
                        .into_iter()
                        .map(|(up, i)| if up { Generator::Raise(i) } else { Generator::Lower(i) })
                        .collect();
                    if let Some(m) = cart {
                        w.insert(0, Generator::Cartan { mode: m, inverse: false });
                    }
                    (Word(w), c)
                }),
            )
        })
    }

    #[test]
    fn unit_and_concatenation() {
        let x = E::raise(PF, 1) + E::lower(PF, 2).scale(&ScalarQ::q());
        assert_eq!(&E::one(PF) * &x, x);
        let p = &E::raise(PF, 1) * &E::lower(PF, 2);
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&Word(vec![Generator::Raise(1), Generator::Lower(2)])), ScalarQ::one());
    }

    #[test]
    fn family_mismatch_is_an_error() {
        let err = E::raise(PF, 1).checked_mul(&E::raise(PB, 1)).unwrap_err();
        assert!(matches!(err, AlgebraError::FamilyMismatch(..)));
    }

    #[test]
    fn supercommutator_of_self() {
        let x = E::raise(PB, 1);
        assert_eq!(x.supercomm(&x).unwrap(), (&x * &x).scale(&ScalarQ::from_int(2)));
        let y = E::raise(PF, 1);
        assert!(y.supercomm(&y).unwrap().is_zero());
    }

    #[test]
    fn graded_qcomm_unfolds() {
        let a = E::raise(PF, 1);
        let b = E::raise(PF, 2);
        let got = a.graded_qcomm(&b, &ScalarQ::q_pow(2)).unwrap();
        let want = &a * &b - (&b * &a).scale(&ScalarQ::q_pow(2));
        assert_eq!(got, want);
    }

    #[test]
    fn bracket_rejects_inhomogeneous() {
        let x = E::raise(PB, 1) + E::one(PB);
        assert_eq!(x.supercomm(&E::raise(PB, 2)).unwrap_err(), AlgebraError::NotHomogeneous);
    }

    #[test]
    fn star_examples() {
        assert_eq!(E::raise(PF, 3).star(StarConvention::Plain), E::lower(PF, 3));
        let x = &E::cartan(PF, 1, false) * &E::raise(PF, 2);
        let want = &E::lower(PF, 2) * &E::cartan(PF, 1, true);
        assert_eq!(x.star(StarConvention::Plain), want);
    }

    #[test]
    fn graded_star_sign_on_odd_pairs() {
        let x = &E::raise(PB, 1) * &E::raise(PB, 2);
        let plain = x.star(StarConvention::Plain);
        assert_eq!(x.star(StarConvention::Graded), -plain);
    }

    #[test]
    fn parity_and_degree() {
        let w = &E::raise(PB, 1) * &E::lower(PB, 2);
        assert_eq!(w.parity().unwrap(), Parity::Even);
        assert_eq!(E::raise(PB, 1).parity().unwrap(), Parity::Odd);
        assert_eq!(E::raise(PF, 1).parity().unwrap(), Parity::Even);
        let word = Word(vec![
            Generator::Raise(1),
            Generator::Raise(1),
            Generator::Lower(2),
            Generator::Raise(3),
        ]);
        assert_eq!(word.raise_degree(3), vec![2, 0, 1]);
    }

    #[test]
    fn tensor_sign_rule() {
        let x = E::raise(PB, 1);
        let y = E::lower(PB, 2);
        let x1 = T::embed(&x, 0, 2);
        let y2 = T::embed(&y, 1, 2);
        let xy = T::pure(&[x.clone(), y.clone()]).unwrap();
        assert_eq!(&x1 * &y2, xy);
        assert_eq!(&y2 * &x1, xy.scale(&-ScalarQ::one()));
        let xf = E::raise(PF, 1);
        let yf = E::lower(PF, 2);
        assert_eq!(
            &T::embed(&yf, 1, 2) * &T::embed(&xf, 0, 2),
            T::pure(&[xf, yf]).unwrap()
        );
    }

    #[test]
    fn tensor_arity_mismatch() {
        let a = T::one(PF, 2);
        let b = T::one(PF, 3);
        assert_eq!(a.checked_mul(&b).unwrap_err(), AlgebraError::ArityMismatch(2, 3));
    }

    #[test]
    fn rendering() {
        let x = (&E::raise(PF, 1) * &E::lower(PF, 2)).scale(&ScalarQ::q()) + E::cartan(PF, 1, true);
        assert_eq!(x.to_string(), "(q)*a+[1] a-[2] + qh^-1[1]");
        let t = T::pure(&[E::raise(PF, 1), E::one(PF)]).unwrap();
        assert_eq!(t.to_string(), "a+[1] (x) 1");
    }

    /// Brute-force oracle for the tensor product: expand each pure tensor
    /// term separately and multiply factor by factor with an explicit sign.
    fn brute_tensor_mul(a: &T, b: &T) -> T {
        let fam = a.family();
        let mut out = T::zero(fam, a.arity());
        for (us, ca) in a.terms() {
            for (vs, cb) in b.terms() {
                let mut crossings = 0usize;
                for k in 0..us.len() {
                    for l in 0..k {
                        crossings += (us[k].parity(fam).bit() * vs[l].parity(fam).bit()) as usize;
                    }
                }
                let sign = if crossings % 2 == 0 { ScalarQ::one() } else { -ScalarQ::one() };
                let ws = us.iter().zip(vs).map(|(u, v)| u.concat(v)).collect();
                out = out + T::from_term(fam, ws, ca.clone() * cb * &sign);
            }
        }
        out
    }

    fn tensor2(family: Family) -> impl Strategy<Value = T> {
        prop::collection::vec((elem_strategy(family), elem_strategy(family)), 1..3).prop_map(
            move |ps| {
                ps.into_iter()
                    .fold(T::zero(family, 2), |acc, (x, y)| acc + T::pure(&[x, y]).unwrap())
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn distributivity(x in elem_strategy(PB), y in elem_strategy(PB), z in elem_strategy(PB)) {
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        }

        #[test]
        fn star_is_involutive_anti_automorphism(x in elem_strategy(PF), y in elem_strategy(PF)) {
            prop_assert_eq!(x.star(StarConvention::Plain).star(StarConvention::Plain), x.clone());
            prop_assert_eq!(
                (&x * &y).star(StarConvention::Plain),
                &y.star(StarConvention::Plain) * &x.star(StarConvention::Plain)
            );
        }

        #[test]
        fn graded_star_on_homogeneous(x in homogeneous_strategy(PB, 1), y in homogeneous_strategy(PB, 3)) {
            // (xy)* = (-1)^{deg x deg y} y* x* with both odd
            let lhs = (&x * &y).star(StarConvention::Graded);
            let rhs = (&y.star(StarConvention::Graded) * &x.star(StarConvention::Graded)).scale(&-ScalarQ::one());
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(x.star(StarConvention::Graded).star(StarConvention::Graded), x);
        }

        #[test]
        fn jacobi_for_even_brackets(x in elem_strategy(PF), y in elem_strategy(PF), z in elem_strategy(PF)) {
            let j = x.supercomm(&y.supercomm(&z).unwrap()).unwrap()
                + y.supercomm(&z.supercomm(&x).unwrap()).unwrap()
                + z.supercomm(&x.supercomm(&y).unwrap()).unwrap();
            prop_assert!(j.is_zero());
        }

        #[test]
        fn graded_qcomm_antisymmetry(
            a in homogeneous_strategy(PB, 1),
            b in homogeneous_strategy(PB, 2),
            c in homogeneous_strategy(PB, 1),
            lam in coeff_strategy().prop_filter("invertible", |c| !c.is_zero()),
        ) {
            let inv = lam.inv().unwrap();
            for (x, y) in [(&a, &b), (&a, &c)] {
                let sign = if x.parity().unwrap().bit() & y.parity().unwrap().bit() == 1 { -1 } else { 1 };
                let lhs = x.graded_qcomm(y, &lam).unwrap();
                let rhs = y.graded_qcomm(x, &inv).unwrap().scale(&(lam.clone() * ScalarQ::from_int(-sign)));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn tensor_mul_matches_brute_force(a in tensor2(PB), b in tensor2(PB), c in tensor2(PB)) {
            prop_assert_eq!(&a * &b, brute_tensor_mul(&a, &b));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn even_tensors_multiply_componentwise(x1 in elem_strategy(PF), x2 in elem_strategy(PF), y1 in elem_strategy(PF), y2 in elem_strategy(PF)) {
            let lhs = &T::pure(&[x1.clone(), x2.clone()]).unwrap() * &T::pure(&[y1.clone(), y2.clone()]).unwrap();
            prop_assert_eq!(lhs, T::pure(&[&x1 * &y1, &x2 * &y2]).unwrap());
        }
    }
}
