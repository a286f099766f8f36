use super::*;
use crate::check::Status;
use crate::qcore::qbinom;

fn pt<const K: usize>(pairs: [(&str, i64); K]) -> Params {
    Params::from(pairs)
}

#[test]
fn spec_examples() {
    assert!(verify_identity("lemma-nkk", &pt([("n", 3)])).unwrap().passed());
    assert!(verify_identity("qser-1", &pt([("n", 1), ("d", 1)])).unwrap().passed());
    let opts = RunOptions { tol: 1e-9 };
    assert!(verify_identity_with("greene-krammer", &pt([("n", 5), ("m", 1)]), &opts).unwrap().passed());
    assert!(verify_congruence("mod5", &pt([("n", 2)])).unwrap().passed());
    assert!(verify_congruence("2kbrack", &pt([("n", 3)])).unwrap().passed());
    assert!(verify_congruence("phi3", &pt([("a", 1), ("m", 2)])).unwrap().passed());
}

#[test]
fn both_sides_of_lemma_at_three_are_minus_q() {
    let e = lookup(identity_registry(), "lemma-nkk").unwrap();
    let p = pt([("n", 3)]);
    let minus_q = Value::Poly(LaurentPoly::monomial(-1, 1));
    assert_eq!((e.lhs)(&p).unwrap(), minus_q);
    assert_eq!((e.rhs)(&p).unwrap(), minus_q);
}

#[test]
fn mod5_at_two_sides() {
    let e = lookup(congruence_registry(), "mod5").unwrap();
    let p = pt([("n", 2)]);
    assert_eq!((e.lhs)(&p).unwrap(), Value::Poly(LaurentPoly::monomial(-1, -1)));
    assert_eq!((e.rhs)(&p).unwrap(), Value::Poly(LaurentPoly::monomial(-1, -3)));
}

#[test]
fn errors_and_skips() {
    assert_eq!(
        verify_identity("nope", &Params::new()),
        Err(CheckError::UnknownId("nope".into()))
    );
    assert!(matches!(
        verify_congruence("mod5", &Params::new()),
        Err(CheckError::MissingParam { .. })
    ));
    assert!(matches!(
        verify_congruence("mod5", &pt([("n", 3), ("zz", 1)])),
        Err(CheckError::UnexpectedParam { .. })
    ));
    // a congruence id is not an identity id
    assert!(verify_identity("mod5", &pt([("n", 3)])).is_err());
    let r = verify_congruence("cor36", &pt([("n", 3)])).unwrap();
    assert_eq!(r.status, Status::Skipped);
    assert!(r.witness.unwrap().contains("gcd"));
    assert_eq!(verify_congruence("2kbrack", &pt([("n", 4)])).unwrap().status, Status::Skipped);
    assert_eq!(
        verify_identity("greene-krammer", &pt([("n", 6), ("m", 3)])).unwrap().status,
        Status::Skipped
    );
}

#[test]
fn andrews_default_order() {
    let r = verify_identity("andrews", &pt([("s1", 1), ("alpha", 1), ("s2", -1), ("beta", 2)])).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.params.get("N"), Some(60));
}

#[test]
fn corrupted_rhs_fails_with_witness() {
    let e = lookup(congruence_registry(), "mod5").unwrap().clone();
    let bad = e.with_rhs(Arc::new(|_| Ok(LaurentPoly::one().into())));
    let r = bad.run(&pt([("n", 0)]), &RunOptions::default());
    assert_eq!(r.status, Status::Fail);
    let w = r.witness.unwrap();
    assert!(w.contains("n=0") && w.contains("-1"), "{w}");

    let r = bad.run(&pt([("n", 7)]), &RunOptions::default());
    assert_eq!(r.status, Status::Fail);
    assert!(r.witness.unwrap().contains("mod Phi_7"));
}

#[test]
fn numeric_failure_reports_values() {
    let e = lookup(identity_registry(), "dual-3n").unwrap().clone();
    let bad = e.with_rhs(Arc::new(|_| Ok(Complex64::new(5.0, 0.0).into())));
    let r = bad.run(&pt([("n", 4), ("m", 1)]), &RunOptions::default());
    assert_eq!(r.status, Status::Fail);
    assert!(r.witness.unwrap().contains("expected 5.0"));
}

#[test]
fn tolerance_only_affects_numeric_checks() {
    let loose = RunOptions { tol: 1e6 };
    let e = lookup(congruence_registry(), "mod5").unwrap().clone();
    let bad = e.with_rhs(Arc::new(|_| Ok(LaurentPoly::constant(3).into())));
    assert_eq!(bad.run(&pt([("n", 7)]), &loose).status, Status::Fail);
}

#[test]
fn every_entry_passes_on_a_small_grid() {
    let grids: Vec<(&str, Vec<Params>)> = vec![
        ("lemma-nkk", (0..25).map(|n| pt([("n", n)])).collect()),
        ("qfib-explicit", (0..15).map(|n| pt([("n", n)])).collect()),
        (
            "lem2.1-transform",
            (1..12).flat_map(|n| (0..n).map(move |k| pt([("n", n), ("k", k)]))).collect(),
        ),
        (
            "qlucas",
            (1..6)
                .flat_map(|d| (0..12).flat_map(move |m| (0..=m).map(move |k| pt([("m", m), ("k", k), ("d", d)]))))
                .collect(),
        ),
        ("mod5", (0..30).map(|n| pt([("n", n)])).collect()),
        ("mod5-inv", (0..30).map(|n| pt([("n", n)])).collect()),
        ("2kbrack", (1..30).map(|n| pt([("n", n)])).collect()),
        ("cor36", (1..30).map(|n| pt([("n", n)])).collect()),
        (
            "tauraso-kd",
            (1..14).flat_map(|n| (1 - n..n).map(move |d| pt([("n", n), ("d", d)]))).collect(),
        ),
        (
            "qfib-remark",
            (1..12).flat_map(|n| (0..n).map(move |d| pt([("n", n), ("d", d)]))).collect(),
        ),
        (
            "mn-to3",
            (1..7).flat_map(|n| (1..4).map(move |m| pt([("m", m), ("n", n)]))).collect(),
        ),
        (
            "mn-to5",
            (1..7).flat_map(|n| (1..4).map(move |m| pt([("m", m), ("n", n)]))).collect(),
        ),
        ("phi5", vec![pt([("a", 1), ("m", 1)]), pt([("a", 1), ("m", 3)])]),
        ("conj37-q", vec![pt([("a", 1), ("m", 1)]), pt([("a", 1), ("m", 2)])]),
        (
            "conj38-a",
            [(2, 1), (2, 2), (3, 1), (5, 1), (7, 1)].map(|(p, a)| pt([("p", p), ("a", a)])).to_vec(),
        ),
        (
            "conj38-b",
            [(2, 1), (2, 2), (5, 1), (7, 1)].map(|(p, a)| pt([("p", p), ("a", a)])).to_vec(),
        ),
    ];
    let nd: Vec<Params> = (1..12).flat_map(|n| (0..n).map(move |d| pt([("n", n), ("d", d)]))).collect();
    let qser: Vec<Params> = (1..9).flat_map(|n| (0..=n).map(move |d| pt([("n", n), ("d", d)]))).collect();
    let roots: Vec<Params> = (1..16)
        .flat_map(|n| (1..=n).filter(move |&m| crate::qcore::gcd(m as u64, n as u64) == 1).map(move |m| pt([("n", n), ("m", m)])))
        .collect();
    let mut all = grids;
    for id in ["2k-first", "2k-second", "2k-third", "2k-fourth", "2k-first-inv", "2k-third-inv"] {
        all.push((id, nd.clone()));
    }
    for id in ["qser-1", "qser-2", "qser-3", "qser-4"] {
        all.push((id, qser.clone()));
    }
    for id in ["greene-krammer", "dual-3n", "pimod5"] {
        all.push((id, roots.clone()));
    }
    for (id, points) in all {
        let reg = if identity_registry().iter().any(|e| e.id == id) {
            identity_registry()
        } else {
            congruence_registry()
        };
        let mut passes = 0;
        for p in points {
            let e = lookup(reg, id).unwrap();
            let r = run_checked(e, &p, &RunOptions::default()).unwrap();
            match r.status {
                Status::Pass => passes += 1,
                Status::Skipped => assert!(matches!(id, "2kbrack" | "cor36"), "{r}"),
                Status::Fail => panic!("{r}"),
            }
        }
        assert!(passes > 0, "{id}");
    }
}

#[test]
fn andrews_small_grid() {
    for id in ["andrews", "andrews-2"] {
        for s1 in [-1, 1] {
            for s2 in [-1, 1] {
                for alpha in 0..=1 {
                    for beta in 0..=1 {
                        let p = pt([("s1", s1), ("alpha", alpha), ("s2", s2), ("beta", beta), ("N", 25)]);
                        let r = verify_identity(id, &p).unwrap();
                        assert!(r.passed(), "{r}");
                    }
                }
            }
        }
    }
}

#[test]
fn ids_are_unique_and_tagged() {
    let mut ids: Vec<&str> = identity_registry()
        .iter()
        .chain(congruence_registry())
        .map(|e| e.id)
        .collect();
    let total = ids.len();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), total);
    for e in congruence_registry() {
        let conj = e.id.starts_with("conj");
        assert_eq!(e.tag == Tag::Conjecture, conj, "{}", e.id);
    }
}

#[test]
fn qser_zero_d_matches_brute_force() {
    // independent sum over k with direct products of q-binomials
    for n in 1..8u64 {
        let mut direct = LaurentPoly::zero();
        for k in 0..=n {
            let j = (n - k) as i64;
            let t = &(&*qbinom(n, k as i64) * &*qbinom(2 * k, k as i64))
                * &crate::qcore::qpoch(crate::qcore::Sign::Minus, k as i64 + 1, n - k);
            let t = t.shift(j * (j - 1) / 2);
            direct = if j % 2 == 1 { &direct - &t } else { &direct + &t };
        }
        let e = lookup(identity_registry(), "qser-1").unwrap();
        assert_eq!((e.lhs)(&pt([("n", n as i64), ("d", 0)])).unwrap(), Value::Poly(direct));
    }
}

#[test]
fn phi3_brute_force_division() {
    let mut s = LaurentPoly::zero();
    for k in 0..6u64 {
        s = &s + &qbinom(2 * k, k as i64).shift(k as i64);
    }
    let (_, r) = s.divrem(&LaurentPoly::from_i64s(0, &[1, 1, 1])).unwrap();
    assert!(r.is_zero());
}

#[test]
fn broken_case_exponent_is_reported() {
    assert!(congruences_quarter_rejects());
}

fn congruences_quarter_rejects() -> bool {
    let e = lookup(congruence_registry(), "2k-first").unwrap();
    // every legal point has integral exponents
    (1..30).all(|n| (0..n).all(|d| (e.rhs)(&pt([("n", n), ("d", d)])).is_ok()))
}
