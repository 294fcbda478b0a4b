use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinmcg::fp_core::*;
use spinmcg::gf2_spin::{act_form, arf, transvection_gf2, Gf2Vec, QuadForm};
use spinmcg::linalg::IntMatrix;

fn w(text: &str, names: &[&str]) -> Word {
    let index: HashMap<String, GenId> = names.iter().enumerate().map(|(k, n)| (n.to_string(), k)).collect();
    parse_word(text, &index).unwrap()
}

fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}

fn group(s: &str) -> SnfResult {
    SnfResult::parse(s).unwrap()
}

/// Order of the permutation group generated by `gens`, by closure.
fn perm_group_order(gens: &[Vec<usize>]) -> usize {
    let n = gens[0].len();
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

fn torsion_order(r: &SnfResult) -> BigInt {
    r.invariant_factors.iter().product()
}

#[test]
fn free_reduce_examples() {
    let ns = ["a", "b"];
    assert!(free_reduce(&w("a a^-1", &ns)).is_empty());
    assert_eq!(free_reduce(&w("a b b^-1 a", &ns)), w("a^2", &ns));
    assert_eq!(free_reduce(&w("a b a^-1 b", &ns)), w("a b a^-1 b", &ns));
}

#[test]
fn abelianization_matrix_examples() {
    let g1 = Presentation::from_words(
        "g1",
        &["A", "b"],
        &[("G1a", w("A b A b A^-1 b^-1 A^-1 b^-1", &["A", "b"])), ("G1b", w("A b A b A b A b", &["A", "b"]))],
    );
    assert_eq!(abelianization_matrix(&g1).unwrap(), mat(&[&[0, 0], &[4, 4]]));
    let c = Presentation::from_words("c", &["x", "y"], &[("c", w("x y x^-1 y^-1", &["x", "y"]))]);
    assert_eq!(abelianization_matrix(&c).unwrap(), mat(&[&[0, 0]]));
    let x3 = Presentation::from_words("x3", &["x"], &[("r", w("x^3", &["x"]))]);
    assert_eq!(abelianization_matrix(&x3).unwrap(), mat(&[&[3]]));
}

#[test]
fn smith_normal_form_examples() {
    let a = mat(&[&[0, 0], &[4, 4]]);
    let d = smith_normal_form(&a);
    assert_eq!(d.result, group("Z+Z/4"));
    assert!(d.verify(&a));
    assert_eq!(smith_normal_form(&mat(&[&[2, 0], &[0, 3]])).result, group("Z/6"));
    assert_eq!(smith_normal_form(&IntMatrix::zeros(2, 5)).result.free_rank, 5);
}

#[test]
fn smith_normal_form_handles_big_entries() {
    let big = BigInt::from(1u64 << 62) * BigInt::from(1u64 << 62);
    let a = IntMatrix::from_rows(vec![vec![big.clone(), BigInt::from(6)], vec![BigInt::from(4), big.clone()]]);
    let d = smith_normal_form(&a);
    assert!(d.verify(&a));
    assert_eq!(d.result.invariant_factors[0], BigInt::from(2));
}

proptest! {
    #[test]
    fn snf_certificate_and_divisibility(entries in proptest::collection::vec(-20i64..20, 12)) {
        let a = IntMatrix::from_rows(entries.chunks(4).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
        let d = smith_normal_form(&a);
        prop_assert!(d.verify(&a));
        let f = &d.result.invariant_factors;
        for k in 1..f.len() {
            prop_assert!((&f[k] % &f[k - 1]) == BigInt::from(0));
        }
    }

    #[test]
    fn abelianization_invariant_under_relator_edits(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let names = ["x", "y", "z"];
        let rels: Vec<Word> = (0..3)
            .map(|_| Word((0..rng.gen_range(1..8)).map(|_| {
                let g = rng.gen_range(0..3);
                if rng.gen() { Letter::pos(g) } else { Letter::neg(g) }
            }).collect()))
            .collect();
        let labelled: Vec<(&str, Word)> = rels.iter().map(|r| ("r", r.clone())).collect();
        let base = abelianize(&Presentation::from_words("p", &names, &labelled)).unwrap();
        let mut edited: Vec<(&str, Word)> = rels
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let r = match k % 3 {
                    0 => r.inverse(),
                    1 => Word(r.letters()[1..].iter().chain(&r.letters()[..1]).copied().collect()),
                    _ => r.concat(&Word(vec![Letter::pos(0), Letter::neg(0)])),
                };
                ("r", r)
            })
            .collect();
        edited.reverse();
        prop_assert_eq!(base, abelianize(&Presentation::from_words("q", &names, &edited)).unwrap());
    }
}

#[test]
fn tietze_examples() {
    let names = ["a", "b"];
    let p = Presentation::from_words("p", &names, &[("r1", w("a b a^-1 b^-1", &names)), ("r2", w("a^4", &names))]);
    let base = abelianize(&p).unwrap();
    let added = tietze_move(&p, &TietzeMove::AddGenerator { name: "x".into(), definition: w("a b", &names) }).unwrap();
    assert_eq!(added.gens.len(), 3);
    assert_eq!(added.relators.len(), 3);
    assert_eq!(abelianize(&added).unwrap(), base);
    let removed = tietze_move(&added, &TietzeMove::RemoveGenerator { gen: 2, relator: 2 }).unwrap();
    assert_eq!(removed.gen_names(), p.gen_names());
    assert_eq!(removed.relator_words(100).unwrap(), p.relator_words(100).unwrap());
    let cert = vec![CertFactor { conjugator: w("b", &names), relator: 1, inverse: false }];
    let with_consequence = tietze_move(
        &p,
        &TietzeMove::AddRelator { label: "r3".into(), word: w("b a^4 b^-1", &names), certificate: cert.clone() },
    )
    .unwrap();
    assert_eq!(abelianize(&with_consequence).unwrap(), base);
    let bogus = TietzeMove::AddRelator { label: "r4".into(), word: w("a^2", &names), certificate: cert };
    assert!(matches!(tietze_move(&p, &bogus), Err(FpError::InvalidCertificate(_))));
    let still_used = TietzeMove::RemoveGenerator { gen: 0, relator: 1 };
    assert!(tietze_move(&p, &still_used).is_err());
}

#[test]
fn tietze_sequences_preserve_abelianization() {
    let names = ["a", "b", "c"];
    let p = Presentation::from_words(
        "p",
        &names,
        &[("r1", w("a^2 b^-3", &names)), ("r2", w("a b c a^-1 c^-1", &names)), ("r3", w("c^6", &names))],
    );
    let base = abelianize(&p).unwrap();
    let moves = vec![
        TietzeMove::AddGenerator { name: "x".into(), definition: w("a c", &names) },
        TietzeMove::AddGenerator { name: "y".into(), definition: w("b^2 a", &names) },
        TietzeMove::AddRelator {
            label: "r4".into(),
            word: w("c^6 a^2 b^-3", &names),
            certificate: vec![
                CertFactor { conjugator: Word::empty(), relator: 2, inverse: false },
                CertFactor { conjugator: Word::empty(), relator: 0, inverse: false },
            ],
        },
        TietzeMove::RemoveRelator {
            index: 0,
            certificate: vec![
                CertFactor { conjugator: Word::empty(), relator: 2, inverse: true },
                CertFactor { conjugator: Word::empty(), relator: 5, inverse: false },
            ],
        },
    ];
    let q = apply_moves(&p, &moves).unwrap();
    assert_eq!(abelianize(&q).unwrap(), base);
}

#[test]
fn schreier_examples() {
    // <x^2> in Z
    let z = free_presentation(&["x".to_string()]);
    let act = CosetAction::new(2, vec!["x".into()], vec![vec![1, 0]]).unwrap();
    let t: Vec<Word> = act.bfs_transversal().into_iter().map(Option::unwrap).collect();
    assert_eq!(abelianize(&schreier_subgroup_presentation(&z, &act, &t).unwrap()).unwrap(), group("Z"));
    // index-2 subgroup of F2 is free of rank 3
    let f2 = free_presentation(&["x".to_string(), "y".to_string()]);
    let act = CosetAction::new(2, vec!["x".into(), "y".into()], vec![vec![1, 0], vec![1, 0]]).unwrap();
    let t: Vec<Word> = act.bfs_transversal().into_iter().map(Option::unwrap).collect();
    let h = schreier_subgroup_presentation(&f2, &act, &t).unwrap();
    assert_eq!(h.gens.len(), 3);
    assert_eq!(abelianize(&h).unwrap(), group("Z^3"));
    // kernel of Z/6 -> Z/2
    let z6 = Presentation::from_words("z6", &["x"], &[("r", w("x^6", &["x"]))]);
    let act = CosetAction::new(2, vec!["x".into()], vec![vec![1, 0]]).unwrap();
    let t: Vec<Word> = act.bfs_transversal().into_iter().map(Option::unwrap).collect();
    assert_eq!(abelianize(&schreier_subgroup_presentation(&z6, &act, &t).unwrap()).unwrap(), group("Z/3"));
}

#[test]
fn schreier_rejects_inconsistent_actions() {
    let z5 = Presentation::from_words("z5", &["x"], &[("r", w("x^5", &["x"]))]);
    let act = CosetAction::new(2, vec!["x".into()], vec![vec![1, 0]]).unwrap();
    let t = vec![Word::empty(), w("x", &["x"])];
    assert!(matches!(schreier_subgroup_presentation(&z5, &act, &t), Err(FpError::InconsistentAction(_))));
    assert!(CosetAction::new(2, vec!["x".into()], vec![vec![0, 0]]).is_err());
}

/// Cyclic subgroups of small finite groups: the Schreier presentation's
/// abelianization must be a finite group of order |G| / index.
#[test]
fn schreier_index_matches_brute_force() {
    // (presentation, permutation images on cosets of a cyclic subgroup, faithful permutation rep)
    struct Case {
        names: Vec<&'static str>,
        rels: Vec<&'static str>,
        coset_perms: Vec<Vec<usize>>,
        faithful: Vec<Vec<usize>>,
    }
    let cases = vec![
        // S3 = <a, b | a^2, b^3, (ab)^2>, H = <b>
        Case {
            names: vec!["a", "b"],
            rels: vec!["a^2", "b^3", "a b a b"],
            coset_perms: vec![vec![1, 0], vec![0, 1]],
            faithful: vec![vec![1, 0, 2], vec![1, 2, 0]],
        },
        // D4 = <r, f | r^4, f^2, (rf)^2>, H = <r>
        Case {
            names: vec!["r", "f"],
            rels: vec!["r^4", "f^2", "r f r f"],
            coset_perms: vec![vec![0, 1], vec![1, 0]],
            faithful: vec![vec![1, 2, 3, 0], vec![0, 3, 2, 1]],
        },
        // Z/12 = <x | x^12>, H = <x^3>
        Case {
            names: vec!["x"],
            rels: vec!["x^12"],
            coset_perms: vec![vec![1, 2, 0]],
            faithful: vec![(0..12).map(|i| (i + 1) % 12).collect()],
        },
    ];
    for c in cases {
        let rels: Vec<(&str, Word)> = c.rels.iter().map(|r| ("r", w(r, &c.names))).collect();
        let p = Presentation::from_words("g", &c.names, &rels);
        let n = c.coset_perms[0].len();
        let act = CosetAction::new(n, c.names.iter().map(|s| s.to_string()).collect(), c.coset_perms).unwrap();
        let t: Vec<Word> = act.bfs_transversal().into_iter().map(Option::unwrap).collect();
        let h = abelianize(&schreier_subgroup_presentation(&p, &act, &t).unwrap()).unwrap();
        assert_eq!(h.free_rank, 0);
        assert_eq!(torsion_order(&h), BigInt::from(perm_group_order(&c.faithful) / n));
    }
}

#[test]
fn nielsen_schreier_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let r = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=6);
        let names: Vec<String> = (0..r).map(|k| format!("x{k}")).collect();
        let perm: Vec<Vec<usize>> = loop {
            let cand: Vec<Vec<usize>> = (0..r)
                .map(|_| {
                    let mut p: Vec<usize> = (0..n).collect();
                    for i in (1..n).rev() {
                        p.swap(i, rng.gen_range(0..=i));
                    }
                    p
                })
                .collect();
            let act = CosetAction::new(n, names.clone(), cand.clone()).unwrap();
            if act.orbit_of_base() == n {
                break cand;
            }
        };
        let act = CosetAction::new(n, names.clone(), perm).unwrap();
        let t: Vec<Word> = act.bfs_transversal().into_iter().map(Option::unwrap).collect();
        let h = schreier_subgroup_presentation(&free_presentation(&names), &act, &t).unwrap();
        assert_eq!(h.gens.len(), 1 + n * (r - 1));
        assert_eq!(abelianize(&h).unwrap().free_rank, 1 + n * (r - 1));
    }
}

#[test]
fn spin_coset_action_examples() {
    let act = spin_coset_action(3);
    let idx = |n: &str| act.gen_names.iter().position(|x| x == n).unwrap();
    assert_eq!(act.perm[idx("a1")][0], 0b001);
    assert_eq!(act.perm[idx("t1")][0b001], 0b010);
    for c in 0..8 {
        assert_eq!(act.perm[idx("s")][c], c);
        assert_eq!(act.perm[idx("d[-2,3]")][c], c);
    }
}

#[test]
fn spin_coset_action_is_transitive_by_involutions() {
    for g in 1..=6 {
        let act = spin_coset_action(g);
        assert_eq!(act.orbit_of_base(), 1 << g);
        for (k, name) in act.gen_names.iter().enumerate() {
            if name.starts_with('a') || name.starts_with('t') {
                assert!(act.is_involution(k), "{name} at genus {g}");
            }
        }
        let t = spin_transversal(g);
        assert_eq!(t.len(), 1 << g);
        for (c, u) in t.iter().enumerate() {
            assert_eq!(act.apply_word(0, u), c);
        }
    }
}

/// The stabilizer of an even form in SL(2, Z) = <a, b | aba = bab, (ab)^6>,
/// rewritten from the action on the three even forms, abelianizes to Z + Z/4.
#[test]
fn torus_spin_stabilizer_by_rewriting() {
    let names = ["a", "b"];
    let p = Presentation::from_words("sl2", &names, &[("braid", w("a b a b^-1 a^-1 b^-1", &names)), ("order", w("a b a b a b a b a b a b", &names))]);
    let forms: Vec<QuadForm> = QuadForm::all(1).filter(|q| !arf(q)).collect();
    let start = QuadForm::standard_even(1);
    let mut order = vec![start];
    order.extend(forms.iter().filter(|q| **q != start));
    let twists = [transvection_gf2(&Gf2Vec::alpha(1, 1)).unwrap(), transvection_gf2(&Gf2Vec::beta(1, 1)).unwrap()];
    // right action on cosets: H x . y = H x y, realised as q -> y^-1 . q
    let perm: Vec<Vec<usize>> = twists
        .iter()
        .map(|m| {
            order
                .iter()
                .map(|q| {
                    let moved = act_form(&m.inverse(), q).unwrap();
                    order.iter().position(|x| *x == moved).unwrap()
                })
                .collect()
        })
        .collect();
    let act = CosetAction::new(3, names.iter().map(|s| s.to_string()).collect(), perm).unwrap();
    assert_eq!(act.orbit_of_base(), 3);
    let t: Vec<Word> = act.bfs_transversal().into_iter().map(Option::unwrap).collect();
    let h = schreier_subgroup_presentation(&p, &act, &t).unwrap();
    assert_eq!(abelianize(&h).unwrap(), group("Z+Z/4"));
}
