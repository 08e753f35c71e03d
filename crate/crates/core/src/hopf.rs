//! The Hopf structure maps on the free algebra, with representation checks
//! of the Hopf axioms.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::AlgebraError;
use crate::fock::{OscillatorRep, Outcome, TensorRep, SAME};
use crate::ncpoly::{Family, FreeElem, Generator, TensorElem, Word};
use crate::qrat::ScalarQ;
use crate::relations::{lmatrix_plus, RelElement, RelationInstance};
use crate::report::CheckRecord;
use crate::scalar::Coeff;

/// Structure maps on the generators for `n` modes.
#[derive(Clone, Debug)]
pub struct HopfOps<F> {
    family: Family,
    n: usize,
    omega: F,
    delta: HashMap<Generator, TensorElem<F>>,
    counit: HashMap<Generator, F>,
    antipode: HashMap<Generator, FreeElem<F>>,
}

pub fn generators(n: usize) -> Vec<Generator> {
    let mut out = Vec::with_capacity(4 * n);
    for i in 1..=n {
        out.push(Generator::Raise(i));
        out.push(Generator::Lower(i));
        out.push(Generator::Cartan { mode: i, inverse: false });
        out.push(Generator::Cartan { mode: i, inverse: true });
    }
    out
}

impl HopfOps<ScalarQ> {
    pub fn new(family: Family, n: usize) -> Self {
        Self::with_omega(family, n, ScalarQ::omega())
    }
}

impl<F: Coeff> HopfOps<F> {
    /// Builds the generator images with `ω` taken as given; `ω = 0` is the
    /// undeformed structure.
    pub fn with_omega(family: Family, n: usize, omega: F) -> Self {
        let f = family;
        let one = || FreeElem::<F>::one(f);
        let a_p = |i| FreeElem::<F>::raise(f, i);
        let a_m = |i| FreeElem::<F>::lower(f, i);
        let qh = |i, inv| FreeElem::<F>::cartan(f, i, inv);
        let br = |i, j| a_p(i).supercomm(&a_m(j)).expect("ladder letters are homogeneous");
        let t2 = |x: &FreeElem<F>, y: &FreeElem<F>| TensorElem::pure(&[x.clone(), y.clone()]).expect("same family");
        // W^{+i}_j = q^{-h_i}[[a+_i, a-_j]],  W^{-j}_i = [[a+_j, a-_i]] q^{h_i}
        let w_plus = |i, j| &qh(i, true) * &br(i, j);
        let w_minus = |j, i| &br(j, i) * &qh(i, false);

        let mut delta = HashMap::new();
        let mut counit = HashMap::new();
        let mut antipode = HashMap::new();
        for i in 1..=n {
            let mut dp = t2(&a_p(i), &one()) + t2(&qh(i, false), &a_p(i));
            let mut dm = t2(&a_m(i), &qh(i, true)) + t2(&one(), &a_m(i));
            for j in (i + 1)..=n {
                dp = dp + t2(&br(i, j), &a_p(j)).scale(&omega);
                dm = dm - t2(&a_m(j), &br(j, i)).scale(&omega);
            }
            delta.insert(Generator::Raise(i), dp);
            delta.insert(Generator::Lower(i), dm);

            let mut sp = -(&qh(i, true) * &a_p(i));
            let mut sm = -(&a_m(i) * &qh(i, false));
            for chain in increasing_chains(i, n) {
                let s = chain.len() as i64;
                let j_s = *chain.last().expect("nonempty chain");
                // Σ (−ω)^s W^{+i}_{j1} … W^{+j_{s−1}}_{j_s} q^{-h_{j_s}} a+_{j_s}
                let mut term = one();
                let mut prev = i;
                for &j in &chain {
                    term = &term * &w_plus(prev, j);
                    prev = j;
                }
                term = &(&term * &qh(j_s, true)) * &a_p(j_s);
                let c = (-omega.clone()).powi(s).expect("nonnegative power");
                sp = sp - term.scale(&c);

                // Σ ω^s a-_{j_s} q^{h_{j_s}} W^{-j_s}_{j_{s−1}} … W^{-j_1}_i
                let mut term = &a_m(j_s) * &qh(j_s, false);
                for k in (0..chain.len()).rev() {
                    let lower = if k == 0 { i } else { chain[k - 1] };
                    term = &term * &w_minus(chain[k], lower);
                }
                let c = omega.powi(s).expect("nonnegative power");
                sm = sm - term.scale(&c);
            }
            antipode.insert(Generator::Raise(i), sp);
            antipode.insert(Generator::Lower(i), sm);

            for inv in [false, true] {
                let g = Generator::Cartan { mode: i, inverse: inv };
                delta.insert(g, t2(&qh(i, inv), &qh(i, inv)));
                counit.insert(g, F::one());
                antipode.insert(g, qh(i, !inv));
            }
            counit.insert(Generator::Raise(i), F::zero());
            counit.insert(Generator::Lower(i), F::zero());
        }
        HopfOps { family, n, omega, delta, counit, antipode }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &F {
        &self.omega
    }

    fn check_mode(&self, g: Generator) -> Result<(), AlgebraError> {
        if g.mode() == 0 || g.mode() > self.n {
            return Err(AlgebraError::ModeOutOfRange { mode: g.mode(), n: self.n });
        }
        Ok(())
    }

    pub fn coproduct(&self, g: Generator) -> Result<&TensorElem<F>, AlgebraError> {
        self.check_mode(g)?;
        Ok(&self.delta[&g])
    }

    pub fn counit(&self, g: Generator) -> Result<&F, AlgebraError> {
        self.check_mode(g)?;
        Ok(&self.counit[&g])
    }

    pub fn antipode(&self, g: Generator) -> Result<&FreeElem<F>, AlgebraError> {
        self.check_mode(g)?;
        Ok(&self.antipode[&g])
    }

    fn check_elem(&self, e_family: Family, max_mode: usize) -> Result<(), AlgebraError> {
        if e_family != self.family {
            return Err(AlgebraError::FamilyMismatch(e_family.name(), self.family.name()));
        }
        if max_mode > self.n {
            return Err(AlgebraError::ModeOutOfRange { mode: max_mode, n: self.n });
        }
        Ok(())
    }

    fn coproduct_word(&self, w: &Word) -> TensorElem<F> {
        let mut acc = TensorElem::one(self.family, 2);
        for g in w.letters() {
            acc = acc.checked_mul(&self.delta[g]).expect("arity 2");
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    fn counit_word(&self, w: &Word) -> F {
        if w.letters().iter().any(|g| g.is_ladder()) {
            F::zero()
        } else {
            F::one()
        }
    }

    fn antipode_word(&self, w: &Word) -> FreeElem<F> {
        let mut acc = FreeElem::one(self.family);
        for g in w.letters().iter().rev() {
            acc = &acc * &self.antipode[g];
        }
        if self.family == Family::Parabose {
            let m = w.ladder_count();
            if (m * m.saturating_sub(1) / 2) % 2 == 1 {
                acc = -acc;
            }
        }
        acc
    }

    /// Multiplicative extension of `Δ`.
    pub fn coproduct_ext(&self, e: &FreeElem<F>) -> Result<TensorElem<F>, AlgebraError> {
        self.check_elem(e.family(), e.max_mode())?;
        let mut out = TensorElem::zero(self.family, 2);
        for (w, c) in e.terms() {
            out = out.checked_add(&self.coproduct_word(w).scale(c))?;
        }
        Ok(out)
    }

    pub fn counit_ext(&self, e: &FreeElem<F>) -> Result<F, AlgebraError> {
        self.check_elem(e.family(), e.max_mode())?;
        let mut out = F::zero();
        for (w, c) in e.terms() {
            out += &(self.counit_word(w) * c);
        }
        Ok(out)
    }

    /// Graded anti-multiplicative extension of `S`.
    pub fn antipode_ext(&self, e: &FreeElem<F>) -> Result<FreeElem<F>, AlgebraError> {
        self.check_elem(e.family(), e.max_mode())?;
        let mut out = FreeElem::zero(self.family);
        for (w, c) in e.terms() {
            out = out.checked_add(&self.antipode_word(w).scale(c))?;
        }
        Ok(out)
    }

    fn id_map(&self) -> impl Fn(&Word) -> TensorElem<F> + '_ {
        move |w: &Word| TensorElem::from_term(self.family, vec![w.clone()], F::one())
    }

    fn delta_map(&self) -> impl Fn(&Word) -> TensorElem<F> + '_ {
        move |w: &Word| self.coproduct_word(w)
    }

    fn eps_map(&self) -> impl Fn(&Word) -> TensorElem<F> + '_ {
        move |w: &Word| TensorElem::scalar(self.family, 0, self.counit_word(w))
    }

    fn s_map(&self) -> impl Fn(&Word) -> TensorElem<F> + '_ {
        move |w: &Word| TensorElem::from_free(&self.antipode_word(w))
    }

    /// `Δ^(p) = (Δ ⊗ 1 ⊗ … ⊗ 1) ∘ Δ^(p−1)` with `Δ^(1) = id`, `Δ^(0) = ε`.
    pub fn iterate_coproduct(&self, e: &FreeElem<F>, p: usize) -> Result<TensorElem<F>, AlgebraError> {
        self.check_elem(e.family(), e.max_mode())?;
        if p == 0 {
            return Ok(TensorElem::scalar(self.family, 0, self.counit_ext(e)?));
        }
        let mut acc = TensorElem::from_free(e);
        let delta = self.delta_map();
        let id = self.id_map();
        for k in 2..=p {
            let mut maps: Vec<&dyn Fn(&Word) -> TensorElem<F>> = vec![&delta];
            maps.extend(std::iter::repeat_n(&id as &dyn Fn(&Word) -> TensorElem<F>, k - 2));
            acc = acc.map_factors(&maps);
        }
        Ok(acc)
    }

    /// `(Δ ⊗ 1)Δ(g) − (1 ⊗ Δ)Δ(g)`.
    pub fn coassociator(&self, g: Generator) -> Result<TensorElem<F>, AlgebraError> {
        let d = self.coproduct(g)?;
        let (delta, id) = (self.delta_map(), self.id_map());
        let left = d.map_factors(&[&delta, &id]);
        let right = d.map_factors(&[&id, &delta]);
        left.checked_sub(&right)
    }

    /// `(ε ⊗ id)Δ(g) − g` for `left`, `(id ⊗ ε)Δ(g) − g` otherwise.
    pub fn counit_defect(&self, g: Generator, left: bool) -> Result<FreeElem<F>, AlgebraError> {
        let d = self.coproduct(g)?;
        let (eps, id) = (self.eps_map(), self.id_map());
        let image = if left { d.map_factors(&[&eps, &id]) } else { d.map_factors(&[&id, &eps]) };
        image.multiply_out().checked_sub(&FreeElem::gen(self.family, g))
    }

    /// `Σ S(g₁)g₂ − ε(g)` for `left`, `Σ g₁S(g₂) − ε(g)` otherwise.
    pub fn antipode_defect(&self, g: Generator, left: bool) -> Result<FreeElem<F>, AlgebraError> {
        let d = self.coproduct(g)?;
        let (s, id) = (self.s_map(), self.id_map());
        let image = if left { d.map_factors(&[&s, &id]) } else { d.map_factors(&[&id, &s]) };
        image.multiply_out().checked_sub(&FreeElem::scalar(self.family, self.counit(g)?.clone()))
    }
}

/// Strictly increasing chains `i < j_1 < … < j_s ≤ n`, `s ≥ 1`.
fn increasing_chains(i: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = ((i + 1)..=n).map(|j| vec![j]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().expect("nonempty");
        for j in (last + 1)..=n {
            let mut next = c.clone();
            next.push(j);
            stack.push(next);
        }
        out.push(c);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn free_outcome(rep: &OscillatorRep<ScalarQ>, e: &FreeElem<ScalarQ>) -> Result<Outcome, AlgebraError> {
    rep.check_zero(e, &e.max_raise_degree(rep.modes()), SAME)
}

fn tensor_outcome(rep: &OscillatorRep<ScalarQ>, t: &TensorElem<ScalarQ>) -> Result<Outcome, AlgebraError> {
    TensorRep::new(rep.clone(), t.arity()).check_zero(t, &t.max_raise_degree(rep.modes()), SAME)
}

fn record(suite: &str, name: String, idx: Vec<i64>, r: Result<Outcome, AlgebraError>, paper_ref: &str) -> CheckRecord {
    match r {
        Ok(o) => CheckRecord::new(suite, &name, idx, o, paper_ref),
        Err(e) => CheckRecord::error(suite, &name, idx, e, paper_ref),
    }
}

fn gen_indices(g: Generator) -> Vec<i64> {
    let kind = match g {
        Generator::Raise(_) => 1,
        Generator::Lower(_) => -1,
        Generator::Cartan { inverse: false, .. } => 2,
        Generator::Cartan { inverse: true, .. } => -2,
    };
    vec![g.mode() as i64, kind]
}

/// Coassociativity in `π^{⊗3}` and the two-sided counit and antipode laws
/// in `π`, for every generator.
pub fn check_hopf_axioms(ops: &HopfOps<ScalarQ>, rep: &OscillatorRep<ScalarQ>) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for g in generators(ops.modes()) {
        let idx = gen_indices(g);
        out.push(record(
            "hopf.coassoc",
            g.to_string(),
            idx.clone(),
            ops.coassociator(g).and_then(|t| tensor_outcome(rep, &t)),
            "Hopf structure (coassociativity)",
        ));
        for (left, side) in [(true, "left"), (false, "right")] {
            out.push(record(
                "hopf.counit",
                format!("{g} {side}"),
                idx.clone(),
                ops.counit_defect(g, left).and_then(|e| free_outcome(rep, &e)),
                "Hopf structure (counit law)",
            ));
            out.push(record(
                "hopf.antipode",
                format!("{g} {side}"),
                idx.clone(),
                ops.antipode_defect(g, left).and_then(|e| free_outcome(rep, &e)),
                "Hopf structure (antipode law)",
            ));
        }
    }
    out
}

/// Each structure map applied to each relation, evaluated in `π^{⊗2}` or `π`.
pub fn check_hopf_ideal(
    ops: &HopfOps<ScalarQ>,
    relations: &[RelationInstance],
    rep: &OscillatorRep<ScalarQ>,
) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for rel in relations {
        let RelElement::Free(e) = &rel.element else {
            out.push(CheckRecord::error("hopf.ideal", &rel.name, rel.indices.clone(), "tensor relation", ""));
            continue;
        };
        let paper_ref = "Hopf structure (Hopf ideal)";
        let mut idx = rel.indices.clone();
        idx.insert(0, 0);
        let delta = ops.coproduct_ext(e).and_then(|t| tensor_outcome(rep, &t));
        out.push(record("hopf.ideal", format!("delta {}", rel.name), idx.clone(), delta, paper_ref));
        idx[0] = 1;
        let eps = ops.counit_ext(e).map(|c| Outcome::from_bool(c.is_zero(), || format!("counit = {c}")));
        out.push(record("hopf.ideal", format!("counit {}", rel.name), idx.clone(), eps, paper_ref));
        idx[0] = 2;
        let s = ops.antipode_ext(e).and_then(|x| free_outcome(rep, &x));
        out.push(record("hopf.ideal", format!("antipode {}", rel.name), idx, s, paper_ref));
    }
    out
}

/// `ΔL⁺_{ik} − Σ_j L⁺_{ij} ⊗ L⁺_{jk}` in `π^{⊗2}` for `1 ≤ i, k ≤ n+1`.
pub fn check_coproduct_l(ops: &HopfOps<ScalarQ>, rep: &OscillatorRep<ScalarQ>) -> Vec<CheckRecord> {
    let n = ops.modes();
    let f = ops.family();
    let l = lmatrix_plus(n, f);
    let mut out = Vec::new();
    for i in 0..=n {
        for k in 0..=n {
            let res = ops.coproduct_ext(&l[i][k]).and_then(|lhs| {
                let mut rhs = TensorElem::zero(f, 2);
                for j in 0..=n {
                    rhs = rhs.checked_add(&TensorElem::pure(&[l[i][j].clone(), l[j][k].clone()])?)?;
                }
                tensor_outcome(rep, &lhs.checked_sub(&rhs)?)
            });
            let idx = vec![i as i64 + 1, k as i64 + 1];
            out.push(record("hopf.Lmatrix", format!("L+[{},{}]", i + 1, k + 1), idx, res, "Hopf structure (L-matrix coproduct)"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::StarConvention;
    use crate::relations::deformed_relations;
    use crate::relations::SigmaSign;
    use crate::scalar::Rational;
    use num_traits::One;
    use proptest::prelude::*;

    type E = FreeElem<ScalarQ>;
    type T = TensorElem<ScalarQ>;

    fn t2(x: &E, y: &E) -> T {
        T::pure(&[x.clone(), y.clone()]).unwrap()
    }

    #[test]
    fn boundary_images() {
        let f = Family::Parafermi;
        let ops = HopfOps::new(f, 2);
        let one = E::one(f);
        let want = t2(&E::raise(f, 2), &one) + t2(&E::cartan(f, 2, false), &E::raise(f, 2));
        assert_eq!(ops.coproduct(Generator::Raise(2)).unwrap(), &want);
        let want = t2(&E::lower(f, 2), &E::cartan(f, 2, true)) + t2(&one, &E::lower(f, 2));
        assert_eq!(ops.coproduct(Generator::Lower(2)).unwrap(), &want);
        let qh = E::cartan(f, 1, false);
        assert_eq!(ops.coproduct(Generator::Cartan { mode: 1, inverse: false }).unwrap(), &t2(&qh, &qh));
        assert_eq!(ops.antipode(Generator::Raise(2)).unwrap(), &-(&E::cartan(f, 2, true) * &E::raise(f, 2)));
        assert_eq!(ops.antipode(Generator::Cartan { mode: 1, inverse: true }).unwrap(), &qh);
        assert!(ops.counit(Generator::Raise(1)).unwrap().is_zero());
        assert!(ops.coproduct(Generator::Raise(3)).is_err());
    }

    #[test]
    fn antipode_top_mode_first_correction() {
        // S(a+_1) for n = 2: −q^{-h_1}a+_1 + ω q^{-h_1}[[a+_1,a-_2]] q^{-h_2} a+_2.
        let f = Family::Parabose;
        let ops = HopfOps::new(f, 2);
        let br = E::raise(f, 1).supercomm(&E::lower(f, 2)).unwrap();
        let corr = &(&(&E::cartan(f, 1, true) * &br) * &E::cartan(f, 2, true)) * &E::raise(f, 2);
        let want = -(&E::cartan(f, 1, true) * &E::raise(f, 1)) + corr.scale(&ScalarQ::omega());
        assert_eq!(ops.antipode(Generator::Raise(1)).unwrap(), &want);
    }

    #[test]
    fn lower_images_are_star_images() {
        for f in [Family::Parafermi, Family::Parabose] {
            let ops = HopfOps::new(f, 3);
            for i in 1..=3 {
                let dp = ops.coproduct(Generator::Raise(i)).unwrap();
                assert_eq!(&dp.star(StarConvention::Plain), ops.coproduct(Generator::Lower(i)).unwrap());
                let sp = ops.antipode(Generator::Raise(i)).unwrap();
                assert_eq!(&sp.star(StarConvention::Plain), ops.antipode(Generator::Lower(i)).unwrap());
            }
        }
    }

    #[test]
    fn extensions_trivial_cases() {
        let f = Family::Parabose;
        let ops = HopfOps::new(f, 2);
        assert_eq!(ops.coproduct_ext(&E::one(f)).unwrap(), T::one(f, 2));
        let x = &E::raise(f, 1) * &E::lower(f, 2);
        assert!(ops.counit_ext(&x).unwrap().is_zero());
        let y = &E::cartan(f, 1, false) * &E::raise(f, 2);
        let want = &-(&E::cartan(f, 2, true) * &E::raise(f, 2)) * &E::cartan(f, 1, true);
        assert_eq!(ops.antipode_ext(&y).unwrap(), want);
        assert_eq!(ops.iterate_coproduct(&E::raise(f, 1), 1).unwrap(), T::from_free(&E::raise(f, 1)));
        assert_eq!(ops.iterate_coproduct(&x, 2).unwrap(), ops.coproduct_ext(&x).unwrap());
        let e0 = ops.iterate_coproduct(&E::cartan(f, 1, false), 0).unwrap();
        assert_eq!(e0.arity(), 0);
        assert_eq!(e0.scalar_part(), ScalarQ::one());
    }

    #[test]
    fn antipode_law_boundary() {
        let f = Family::Parafermi;
        let ops = HopfOps::new(f, 2);
        // a+_2 − q^{h_2}q^{-h_2}a+_2: zero only modulo the cartan relations.
        let d = ops.antipode_defect(Generator::Raise(2), false).unwrap();
        assert_eq!(d.len(), 2);
        let rep = OscillatorRep::deformed(f, 2, 1).unwrap();
        assert!(rep.evaluate(&d).unwrap().is_zero());
        let d = ops.antipode_defect(Generator::Cartan { mode: 1, inverse: false }, true).unwrap();
        assert!(rep.evaluate(&d).unwrap().is_zero());
        assert!(ops.counit_defect(Generator::Raise(1), true).unwrap().is_zero());
    }

    #[test]
    fn coassociativity_n2_matrix() {
        let f = Family::Parafermi;
        let ops = HopfOps::new(f, 2);
        let rep = OscillatorRep::deformed(f, 2, 1).unwrap();
        let d = ops.coassociator(Generator::Raise(1)).unwrap();
        assert!(!d.is_zero());
        let trep = TensorRep::new(rep, 3);
        assert!(trep.evaluate(&d).unwrap().is_zero());
    }

    #[test]
    fn axioms_parafermi() {
        for n in [2, 3] {
            let ops = HopfOps::new(Family::Parafermi, n);
            let rep = OscillatorRep::deformed(Family::Parafermi, n, 1).unwrap();
            let recs = check_hopf_axioms(&ops, &rep);
            assert_eq!(recs.len(), 4 * n * 5);
            assert!(recs.iter().all(|r| r.passed()), "{:?}", recs.iter().find(|r| !r.passed()));
        }
    }

    #[test]
    fn lmatrix_parafermi_n2() {
        let ops = HopfOps::new(Family::Parafermi, 2);
        let rep = OscillatorRep::deformed(Family::Parafermi, 2, 1).unwrap();
        let recs = check_coproduct_l(&ops, &rep);
        assert_eq!(recs.len(), 9);
        assert!(recs.iter().all(|r| r.passed()));
    }

    #[test]
    fn ideal_parafermi_n2() {
        let f = Family::Parafermi;
        let ops = HopfOps::new(f, 2);
        let rep = OscillatorRep::deformed(f, 2, 1).unwrap();
        let rels = deformed_relations(2, f, SigmaSign::Plus);
        let recs = check_hopf_ideal(&ops, &rels, &rep);
        assert_eq!(recs.len(), 3 * rels.len());
        assert!(recs.iter().all(|r| r.passed()), "{:?}", recs.iter().find(|r| !r.passed()));
    }

    #[test]
    fn broken_antipode_is_detected() {
        let f = Family::Parafermi;
        let mut ops = HopfOps::new(f, 2);
        let g = Generator::Raise(1);
        let s = ops.antipode[&g].clone();
        ops.antipode.insert(g, s.scale(&ScalarQ::q()));
        let rep = OscillatorRep::deformed(f, 2, 1).unwrap();
        let recs = check_hopf_axioms(&ops, &rep);
        assert!(recs.iter().any(|r| r.suite == "hopf.antipode" && !r.passed()));
    }

    #[test]
    fn classical_limit_drops_omega_terms() {
        let f = Family::Parafermi;
        let ops = HopfOps::new(f, 3);
        let zero = HopfOps::<Rational>::with_omega(f, 3, Rational::zero());
        for i in 1..=3 {
            let g = Generator::Raise(i);
            let lim = ops.coproduct(g).unwrap().try_map_coeffs(|c| c.at_one()).unwrap();
            assert_eq!(&lim, zero.coproduct(g).unwrap());
            assert_eq!(lim.len(), 2);
        }
    }

    fn word_strategy(n: usize) -> impl Strategy<Value = Word> {
        let g = (0..4usize, 1..=n).prop_map(|(k, i)| match k {
            0 => Generator::Raise(i),
            1 => Generator::Lower(i),
            2 => Generator::Cartan { mode: i, inverse: false },
            _ => Generator::Cartan { mode: i, inverse: true },
        });
        prop::collection::vec(g, 0..3).prop_map(Word)
    }

    fn family_strategy() -> impl Strategy<Value = Family> {
        prop_oneof![Just(Family::Parafermi), Just(Family::Parabose)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn coproduct_multiplicative(f in family_strategy(), u in word_strategy(2), v in word_strategy(2)) {
            let ops = HopfOps::new(f, 2);
            let (x, y) = (E::from_word(f, u, ScalarQ::one()), E::from_word(f, v, ScalarQ::one()));
            let lhs = ops.coproduct_ext(&(&x * &y)).unwrap();
            let rhs = ops.coproduct_ext(&x).unwrap().checked_mul(&ops.coproduct_ext(&y).unwrap()).unwrap();
            let diff = lhs.checked_sub(&rhs).unwrap();
            let d = if f == Family::Parafermi { 1 } else { 4 };
            let rep = OscillatorRep::deformed(f, 2, d).unwrap();
            prop_assert!(tensor_outcome(&rep, &diff).unwrap().pass);
        }

        #[test]
        fn antipode_graded_antimultiplicative(f in family_strategy(), u in word_strategy(2), v in word_strategy(2)) {
            let ops = HopfOps::new(f, 2);
            let (x, y) = (E::from_word(f, u.clone(), ScalarQ::one()), E::from_word(f, v.clone(), ScalarQ::one()));
            let mut rhs = &ops.antipode_ext(&y).unwrap() * &ops.antipode_ext(&x).unwrap();
            if u.parity(f).bit() & v.parity(f).bit() == 1 {
                rhs = -rhs;
            }
            let diff = ops.antipode_ext(&(&x * &y)).unwrap() - rhs;
            let d = if f == Family::Parafermi { 1 } else { 5 };
            let rep = OscillatorRep::deformed(f, 2, d).unwrap();
            prop_assert!(free_outcome(&rep, &diff).unwrap().pass);
        }

        #[test]
        fn counit_multiplicative(f in family_strategy(), u in word_strategy(3), v in word_strategy(3)) {
            let ops = HopfOps::new(f, 3);
            let (x, y) = (E::from_word(f, u, ScalarQ::one()), E::from_word(f, v, ScalarQ::one()));
            let lhs = ops.counit_ext(&(&x * &y)).unwrap();
            prop_assert_eq!(lhs, ops.counit_ext(&x).unwrap() * &ops.counit_ext(&y).unwrap());
        }
    }
}
