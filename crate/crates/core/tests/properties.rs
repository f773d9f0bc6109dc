use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use relpres_core::backend::{Backend, Element, FiniteTable, Order};
use relpres_core::free_word::{FreeWord, Letter};
use relpres_core::presentation::RelativePresentation;
use relpres_core::ratio::Q;
use relpres_core::small_cancellation::{units_of, SymmetrizedSet, Unit};
use relpres_core::up::{has_strong_up, unique_products, FiniteSubset};
use relpres_core::word::{FreeProduct, Syllable, Word};

fn ctx() -> FreeProduct {
    FreeProduct::new(
        vec![
            ("A".into(), Backend::FreeAbelian { rank: 2 }),
            ("C".into(), Backend::FiniteTable(FiniteTable::cyclic(4).unwrap())),
        ],
        vec!["x".into(), "y".into()],
    )
}

fn syllable() -> impl Strategy<Value = Syllable> {
    prop_oneof![
        (-2i64..=2, -2i64..=2).prop_map(|(a, b)| Syllable::factor("A", Element::Vector(vec![a, b]))),
        (0usize..4).prop_map(|i| Syllable::factor("C", Element::Index(i))),
        (prop_oneof![Just("x"), Just("y")], -3i64..=3).prop_map(|(g, e)| Syllable::gen(g, e)),
    ]
}

fn raw_word(max: usize) -> impl Strategy<Value = Vec<Syllable>> {
    prop::collection::vec(syllable(), 0..max)
}

proptest! {
    #[test]
    fn reduce_is_idempotent(raw in raw_word(12)) {
        let c = ctx();
        let w = c.reduce(&raw).unwrap();
        prop_assert_eq!(c.reduce(w.syllables()).unwrap(), w);
    }

    #[test]
    fn reduce_respects_concatenation(a in raw_word(8), b in raw_word(8)) {
        let c = ctx();
        let joined: Vec<Syllable> = a.iter().chain(&b).cloned().collect();
        let lhs = c.reduce(&joined).unwrap();
        let rhs = c.mul(&c.reduce(&a).unwrap(), &c.reduce(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_cancels(a in raw_word(10)) {
        let c = ctx();
        let w = c.reduce(&a).unwrap();
        prop_assert!(c.mul(&w, &c.inverse(&w)).unwrap().is_empty());
    }

    #[test]
    fn exponent_sum_is_additive(a in raw_word(10), b in raw_word(10)) {
        let c = ctx();
        let (wa, wb) = (c.reduce(&a).unwrap(), c.reduce(&b).unwrap());
        let ab = c.mul(&wa, &wb).unwrap();
        for g in ["x", "y"] {
            prop_assert_eq!(ab.exponent_sum(g), wa.exponent_sum(g) + wb.exponent_sum(g));
        }
    }

    #[test]
    fn cyclic_reduction_conjugates_back(a in raw_word(10)) {
        let c = ctx();
        let w = c.reduce(&a).unwrap();
        let f = c.cyclic_reduce(&w).unwrap();
        let back = c.mul(&c.mul(&f.conjugator, &f.cyclic).unwrap(), &c.inverse(&f.conjugator)).unwrap();
        prop_assert_eq!(back, w);
        let s = f.cyclic.syllables();
        if s.len() >= 2 {
            prop_assert!(!s[0].same_letter(&s[s.len() - 1]));
        }
    }
}

// Proper powers: compare against every reduced word of length ≤ 8 on two
// generators, marked by brute-force enumeration of roots and exponents.

fn to_free(w: &Word) -> FreeWord {
    FreeWord::from_letters(w.gen_letters().unwrap().into_iter().map(|(g, s)| Letter::new(g, s < 0)))
}

fn to_word(f: &FreeWord) -> Word {
    let letters: Vec<(String, i8)> = f
        .letters()
        .iter()
        .map(|l| (l.symbol.clone(), if l.inverse { -1 } else { 1 }))
        .collect();
    Word::from_gen_letters(&letters)
}

fn reduced_words(max_len: usize) -> Vec<FreeWord> {
    let alphabet = [
        Letter::new("x", false),
        Letter::new("x", true),
        Letter::new("y", false),
        Letter::new("y", true),
    ];
    let mut layer = vec![FreeWord::identity()];
    let mut all = layer.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in &alphabet {
                if w.letters().last().is_some_and(|last| last.cancels(l)) {
                    continue;
                }
                next.push(w.mul(&FreeWord::from_letters([l.clone()])));
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

#[test]
fn proper_power_matches_enumeration() {
    let words = reduced_words(8);
    let mut powers: BTreeSet<FreeWord> = BTreeSet::new();
    powers.insert(FreeWord::identity());
    for u in &words {
        if u.is_identity() {
            continue;
        }
        for k in 2..=8 {
            let p = u.pow(k);
            if p.len() <= 8 {
                powers.insert(p);
            }
        }
    }
    for f in &words {
        let w = to_word(f);
        let got = w.proper_power();
        assert_eq!(got.is_proper_power(), powers.contains(f), "word {f}");
        if let relpres_core::word::ProperPower::Power { root, k } = got {
            assert_eq!(to_free(&root).pow(k as i64), *f, "root of {f}");
        }
    }
}

// Coset form multiplies back out to the relator.

fn coset_ctx() -> FreeProduct {
    FreeProduct::new(
        vec![
            (
                "G".into(),
                Backend::Free {
                    basis: vec!["a".into(), "b".into()],
                },
            ),
            ("T".into(), Backend::FreeAbelian { rank: 2 }),
        ],
        vec![],
    )
}

fn coefficient() -> impl Strategy<Value = FreeWord> {
    prop::collection::vec(0usize..4, 1..4)
        .prop_map(|ls| FreeWord::from_letters(ls.into_iter().map(|i| Letter::new(["a", "b"][i / 2], i % 2 == 1))))
}

fn t_vector() -> impl Strategy<Value = Vec<i64>> {
    (-3i64..=3, -3i64..=3)
        .prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0)
        .prop_map(|(a, b)| vec![a, b])
}

proptest! {
    #[test]
    fn coset_form_round_trips(pairs in prop::collection::vec((coefficient(), t_vector()), 1..6)) {
        let c = coset_ctx();
        let raw: Vec<Syllable> = pairs
            .iter()
            .flat_map(|(g, t)| {
                [
                    Syllable::factor("G", Element::Word(g.clone())),
                    Syllable::factor("T", Element::Vector(t.clone())),
                ]
            })
            .collect();
        let w = c.reduce(&raw).unwrap();
        prop_assume!(c.cyclic_reduce(&w).unwrap().cyclic == w && !w.is_empty());
        let p = RelativePresentation::new(c, w.clone(), Some("T".into())).unwrap();
        let Ok(form) = p.rewrite_to_coset_form() else {
            return Ok(());
        };
        prop_assert_eq!(p.expand_coset_form(&form).unwrap(), w);
        prop_assert!(form.entries.iter().all(|e| !e.coefficient.is_empty()));
    }
}

// Finite tables: element orders divide the group order.

#[test]
fn element_orders_divide_group_order() {
    // Z2 × Z3 and S3 alongside cyclic groups
    let z2z3: Vec<Vec<usize>> = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| ((i % 2 + j % 2) % 2) + 2 * (((i / 2) + (j / 2)) % 3))
                .collect()
        })
        .collect();
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let index: BTreeMap<[usize; 3], usize> = perms.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let s3: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| perms.iter().map(|q| index[&[p[q[0]], p[q[1]], p[q[2]]]]).collect())
        .collect();
    let mut tables = vec![FiniteTable::new(z2z3).unwrap(), FiniteTable::new(s3).unwrap()];
    tables.extend((1..=12).map(|n| FiniteTable::cyclic(n).unwrap()));
    for t in tables {
        let n = t.size() as u64;
        let b = Backend::FiniteTable(t);
        for i in 0..n as usize {
            match b.order(&Element::Index(i)).unwrap() {
                Order::Finite(k) => assert_eq!(n % k, 0),
                Order::Infinite => panic!("finite group element of infinite order"),
            }
        }
    }
}

// Unique products.

fn zsubset(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::btree_set((-4i64..=4, -4i64..=4), 1..max)
        .prop_map(|s| s.into_iter().map(|(a, b)| vec![a, b]).collect())
}

fn subset(v: &[Vec<i64>]) -> FiniteSubset {
    FiniteSubset::new(
        Backend::FreeAbelian { rank: 2 },
        v.iter().cloned().map(Element::Vector).collect(),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn decomposition_counts_sum_to_product_size(x in zsubset(6), y in zsubset(6)) {
        let t = unique_products(&subset(&x), &subset(&y)).unwrap();
        let total: usize = t.decompositions.values().map(Vec::len).sum();
        prop_assert_eq!(total, x.len() * y.len());
    }

    #[test]
    fn unique_products_are_inversion_dual(x in zsubset(6), y in zsubset(6)) {
        let (xs, ys) = (subset(&x), subset(&y));
        let direct = unique_products(&xs, &ys).unwrap();
        let dual = unique_products(&ys.inverse().unwrap(), &xs.inverse().unwrap()).unwrap();
        let neg = |e: &Element| match e {
            Element::Vector(v) => Element::Vector(v.iter().map(|c| -c).collect()),
            _ => unreachable!(),
        };
        let a: BTreeSet<Element> = direct.unique.iter().map(|u| neg(&u.product)).collect();
        let b: BTreeSet<Element> = dual.unique.iter().map(|u| u.product.clone()).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn orderable_groups_have_strong_unique_products(x in zsubset(6), y in zsubset(6)) {
        prop_assume!(y.len() >= 2);
        let s = has_strong_up(&subset(&x), &subset(&y)).unwrap();
        prop_assert_eq!(s.holds(), Some(true));
    }
}

// C′(λ) against a brute-force piece computation.

fn sc_ctx() -> FreeProduct {
    FreeProduct::new(
        vec![("C".into(), Backend::FiniteTable(FiniteTable::cyclic(3).unwrap()))],
        vec!["x".into(), "y".into()],
    )
}

fn rotations(u: &[Unit]) -> Vec<Vec<Unit>> {
    (0..u.len())
        .map(|r| u[r..].iter().chain(&u[..r]).cloned().collect())
        .collect()
}

/// Longest piece starting each position of the symmetrized set, by comparing
/// every pair of positions directly.
fn brute_pieces(c: &FreeProduct, relators: &[Word]) -> Vec<(usize, usize)> {
    let mut classes: Vec<Vec<Vec<Unit>>> = Vec::new();
    let mut seen: BTreeSet<Vec<Unit>> = BTreeSet::new();
    for r in relators {
        let cyc = c.cyclic_reduce(r).unwrap().cyclic;
        let inv = c.cyclic_reduce(&c.inverse(&cyc)).unwrap().cyclic;
        for w in [cyc, inv] {
            let rots = rotations(&units_of(&w));
            let key = rots.iter().min().unwrap().clone();
            if seen.insert(key) {
                classes.push(rots);
            }
        }
    }
    let positions: Vec<(usize, usize)> = classes
        .iter()
        .enumerate()
        .flat_map(|(ci, rs)| (0..rs.len()).map(move |o| (ci, o)))
        .collect();
    let seq = |p: (usize, usize)| &classes[p.0][p.1];
    let same_factor = |a: &Unit, b: &Unit| matches!((a, b), (Unit::Factor { factor: f, .. }, Unit::Factor { factor: g, .. }) if f == g);
    positions
        .iter()
        .map(|&p| {
            let best = positions
                .iter()
                .filter(|&&q| q != p)
                .map(|&q| {
                    let (a, b) = (seq(p), seq(q));
                    if a == b {
                        return a.len() - 1;
                    }
                    let f = a.iter().zip(b).take_while(|(u, v)| u == v).count();
                    if f < a.len().min(b.len()) && same_factor(&a[f], &b[f]) {
                        f + 1
                    } else {
                        f
                    }
                })
                .max()
                .unwrap_or(0);
            (best, seq(p).len())
        })
        .collect()
}

fn sc_syllable() -> impl Strategy<Value = Syllable> {
    prop_oneof![
        (1usize..3).prop_map(|i| Syllable::factor("C", Element::Index(i))),
        (
            prop_oneof![Just("x"), Just("y")],
            prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)]
        )
            .prop_map(|(g, e)| Syllable::gen(g, e)),
    ]
}

fn relators() -> impl Strategy<Value = Vec<Vec<Syllable>>> {
    prop::collection::vec(prop::collection::vec(sc_syllable(), 1..7), 1..4)
}

fn lambdas() -> Vec<Q> {
    [(1, 8), (1, 6), (1, 4), (1, 3), (1, 2), (2, 3), (1, 1), (3, 2)]
        .iter()
        .map(|&(n, d)| Q::new(n, d))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pieces_match_brute_force(raw in relators()) {
        let c = sc_ctx();
        let words: Vec<Word> = raw.iter().map(|r| c.reduce(r).unwrap()).collect();
        prop_assume!(words.iter().all(|w| !c.cyclic_reduce(w).unwrap().cyclic.is_empty()));
        let set = SymmetrizedSet::new(&c, &words).unwrap();
        let brute = brute_pieces(&c, &words);
        let max = brute.iter().map(|b| b.0).max().unwrap_or(0);
        prop_assert_eq!(set.max_piece().unwrap().max_piece, max);
        for lambda in lambdas() {
            let expected = brute
                .iter()
                .all(|&(piece, len)| Q::from_integer(piece as i64) < lambda * Q::from_integer(len as i64));
            prop_assert_eq!(set.check_cprime(lambda).unwrap().holds, expected, "lambda {}", lambda);
        }
    }

    #[test]
    fn cprime_is_monotone_in_lambda(raw in relators()) {
        let c = sc_ctx();
        let words: Vec<Word> = raw.iter().map(|r| c.reduce(r).unwrap()).collect();
        prop_assume!(words.iter().all(|w| !c.cyclic_reduce(w).unwrap().cyclic.is_empty()));
        let set = SymmetrizedSet::new(&c, &words).unwrap();
        let verdicts: Vec<bool> = lambdas().into_iter().map(|l| set.check_cprime(l).unwrap().holds).collect();
        for w in verdicts.windows(2) {
            prop_assert!(!w[0] || w[1]);
        }
    }
}
