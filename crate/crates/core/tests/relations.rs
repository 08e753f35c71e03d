use paraq::fock::{check_relation, check_relation_classical, check_relation_limit, OscillatorRep, SAME};
use paraq::relations::*;
use paraq::{Family, Rational};

fn configs() -> [(Family, usize, u32); 3] {
    [(Family::Parafermi, 2, 1), (Family::Parafermi, 3, 1), (Family::Parabose, 2, 6)]
}

#[test]
fn printed_istar_failure_pattern() {
    // Fails exactly at i = k != j and at distinct i, j, k with theta(j,i;k) != 0.
    let frozen_n3 = vec![
        vec![1, 2, 1], vec![1, 3, 1], vec![1, 3, 2], vec![2, 1, 2],
        vec![2, 3, 2], vec![3, 1, 2], vec![3, 1, 3], vec![3, 2, 3],
    ];
    for (f, n, d) in configs() {
        let rep = OscillatorRep::deformed(f, n, d).unwrap();
        for s in [SigmaSign::Plus, SigmaSign::Minus] {
            let fails: Vec<Vec<i64>> = istar_relations_with(n, f, s, IstarReading::Printed)
                .into_iter()
                .filter(|r| !check_relation(r, &rep).unwrap().pass)
                .map(|r| r.indices)
                .collect();
            let want = if n == 2 { vec![vec![1, 2, 1], vec![2, 1, 2]] } else { frozen_n3.clone() };
            assert_eq!(fails, want, "{f} n={n} {s:?}");
            assert!(istar_relations(n, f, s).iter().all(|r| check_relation(r, &rep).unwrap().pass));
        }
    }
}

#[test]
fn ladder_from_chevalley_round_trip() {
    for (f, n, d) in configs() {
        let rep = OscillatorRep::deformed(f, n, d).unwrap();
        let e = |p: bool, i: usize| e_from_a(n, f, p, i);
        for i in 1..=n {
            for p in [true, false] {
                let x = a_from_e(n, p, i, &e) - ladder(f, p, i);
                let o = rep.check_zero(&x, &x.max_raise_degree(n), SAME).unwrap();
                assert!(o.pass, "{f} n={n} plus={p} i={i}: {:?}", o.residual);
            }
        }
    }
}

#[test]
fn classical_relations_vanish() {
    for (f, n, d) in configs() {
        let rep = OscillatorRep::<Rational>::classical(f, n, d).unwrap();
        for r in classical_relations(n, f) {
            assert!(check_relation_classical(&r, &rep).unwrap().pass, "{f} {} {:?}", r.name, r.indices);
        }
    }
}

#[test]
fn deformed_relations_reduce_at_one() {
    for (f, n, d) in configs() {
        let hybrid = OscillatorRep::hybrid_classical(f, n, d);
        for r in deformed_relations(n, f, SigmaSign::Plus) {
            assert!(check_relation_limit(&r, &hybrid).unwrap().pass, "{f} {} {:?}", r.name, r.indices);
        }
    }
}

#[test]
fn deformed_and_chevalley_relations_vanish() {
    for (f, n, d) in configs() {
        let rep = OscillatorRep::deformed(f, n, d).unwrap();
        for sign in [SigmaSign::Plus, SigmaSign::Minus] {
            for r in deformed_relations(n, f, sign) {
                assert!(check_relation(&r, &rep).unwrap().pass, "{f} {} {:?}", r.name, r.indices);
            }
        }
        for r in chevalley_relations(n, f) {
            assert!(check_relation(&r, &rep).unwrap().pass, "{f} {} {:?}", r.name, r.indices);
        }
    }
}

#[test]
fn perturbed_instances_are_detected() {
    let (f, n) = (Family::Parafermi, 2);
    let rep = OscillatorRep::deformed(f, n, 1).unwrap();
    let rels = deformed_relations(n, f, SigmaSign::Plus);
    let mut detected = 0;
    for r in &rels {
        let bad = r.perturbed();
        let bump = bad.as_free().unwrap() - r.as_free().unwrap();
        let bump = RelationInstance::free("bump", f, vec![], bump, "");
        // A perturbation on a word that is already zero in the representation is invisible.
        if check_relation(&bump, &rep).unwrap().pass {
            continue;
        }
        let o = check_relation(&bad, &rep).unwrap();
        assert!(!o.pass && o.residual.is_some(), "{} {:?}", r.name, r.indices);
        detected += 1;
    }
    assert!(detected * 2 > rels.len(), "{detected} of {}", rels.len());
    assert!(!check_relation(&rels[0].perturbed(), &rep).unwrap().pass);
}
