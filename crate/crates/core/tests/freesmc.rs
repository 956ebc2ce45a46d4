mod common;

use extlearn::equivalence::int_equiv;
use extlearn::finbase::FinSet;
use extlearn::freesmc::{
    atemp_check_formal, canonical, eval_learner, formal_compose, formal_dual, formal_identity,
    formal_iota, formal_snake, formal_tensor, hypergraph_canonical, parse_document, parse_term,
    random_interpretation, structural_eq, to_hypergraph, to_word, Document, FormalLearner,
    FormalVerdict, Interpretation, Signature, Term,
};
use extlearn::intensional::to_int;
use extlearn::learner::{compose, dual, snake_composite, tensor, Object};
use rand::seq::SliceRandom;
use rand::Rng;

const CORPUS: &str = include_str!("data/corpus.smc");

/// Expected verdicts, from the axioms of symmetric monoidal categories.
const EXPECTED: [bool; 30] = [
    true, true, true, true, true, true, true, true, true, true, //
    false, false, false, false, false, false, true, true, false, true, //
    false, false, true, true, false, false, true, true, true, true,
];

/// Cases whose terms only differ by scalars, which are trivial in `FinSet`.
const SCALAR_ONLY: [usize; 2] = [19, 21];

fn corpus() -> Document {
    parse_document(CORPUS).unwrap()
}

fn case(doc: &Document, k: usize) -> (Term, Term) {
    (
        doc.term(&format!("c{k:02}_l")).unwrap().clone(),
        doc.term(&format!("c{k:02}_r")).unwrap().clone(),
    )
}

fn interps(sig: &Signature, seed: u64, n: usize) -> Vec<Interpretation> {
    let mut rng = common::rng(seed);
    (0..n).map(|_| random_interpretation(sig, &mut rng, 3)).collect()
}

fn separated(t1: &Term, t2: &Term, sig: &Signature, interps: &[Interpretation]) -> bool {
    interps
        .iter()
        .any(|i| i.eval(t1, sig).unwrap() != i.eval(t2, sig).unwrap())
}

#[test]
fn golden_corpus_verdicts() {
    let doc = corpus();
    let sig = &doc.signature;
    let samples = interps(sig, 11, 200);
    for k in 1..=30 {
        let (l, r) = case(&doc, k);
        let eq = structural_eq(&l, &r, sig).unwrap();
        assert_eq!(eq, EXPECTED[k - 1], "case {k}: {l}  vs  {r}");
        // Independent check through evaluation: distinct morphisms are
        // separated by some interpretation unless they differ only in scalars.
        if !eq && !SCALAR_ONLY.contains(&k) {
            assert!(separated(&l, &r, sig, &samples), "case {k} not separated");
        }
    }
}

#[test]
fn structural_equality_implies_equal_evaluation() {
    let doc = corpus();
    let sig = &doc.signature;
    let samples = interps(sig, 12, 50);
    for k in 1..=30 {
        let (l, r) = case(&doc, k);
        if structural_eq(&l, &r, sig).unwrap() {
            assert!(!separated(&l, &r, sig, &samples), "case {k}");
        }
    }
}

#[test]
fn structural_equality_is_a_congruence_on_the_corpus() {
    let doc = corpus();
    let sig = &doc.signature;
    let f = Term::generator("f");
    for k in 1..=30 {
        let (l, r) = case(&doc, k);
        let (_, cod) = sig.typecheck(&l).unwrap();
        let contexts: [&dyn Fn(&Term) -> Term; 4] = [
            &|t| f.clone().par(t.clone()),
            &|t| t.clone().par(f.clone()),
            &|t| t.clone().seq(Term::Id(cod.clone())),
            &|t| Term::Id(vec![]).par(t.clone()).seq(Term::Sym(vec![], cod.clone())),
        ];
        for ctx in contexts {
            assert_eq!(
                structural_eq(&ctx(&l), &ctx(&r), sig).unwrap(),
                EXPECTED[k - 1],
                "case {k}"
            );
        }
    }
}

#[test]
fn canonical_form_is_idempotent_and_ignores_bracketing() {
    let doc = corpus();
    let sig = &doc.signature;
    for (_, t) in &doc.terms {
        let c = canonical(t, sig).unwrap();
        assert_eq!(hypergraph_canonical(&c.to_hypergraph()), c, "{t}");
        assert_eq!(hypergraph_canonical(&to_hypergraph(t, sig).unwrap()), c);
    }
    let left = parse_term("(f * g) * (e ; s) * h").unwrap();
    let right = parse_term("f * (g * ((e ; s) * h))").unwrap();
    assert_eq!(canonical(&left, sig).unwrap(), canonical(&right, sig).unwrap());
}

#[test]
fn print_parse_round_trip_on_the_corpus() {
    let doc = corpus();
    for (_, t) in &doc.terms {
        assert_eq!(&parse_term(&t.to_string()).unwrap(), t);
    }
}

#[test]
fn boundary_mismatch_is_an_error() {
    let doc = corpus();
    let sig = &doc.signature;
    let err = structural_eq(&Term::generator("f"), &Term::generator("g"), sig);
    assert!(matches!(err, Err(extlearn::Error::BoundaryMismatch { .. })));
}

/// A random well-typed term from `dom`: one to four layers, each a shuffle
/// followed by a parallel product of generators and identities.
fn random_term<R: Rng>(rng: &mut R, sig: &Signature, dom: &[String]) -> Term {
    let mut word = dom.to_vec();
    let mut term = Term::Id(word.clone());
    for _ in 0..rng.gen_range(1..=4) {
        if word.len() >= 2 {
            let k = rng.gen_range(1..word.len());
            let (x, y) = word.split_at(k);
            term = term.seq(Term::Sym(x.to_vec(), y.to_vec()));
            word = y.iter().chain(x).cloned().collect();
        }
        let mut layer = Term::Id(vec![]);
        let mut next = Vec::new();
        let mut i = 0;
        while i < word.len() {
            let fits: Vec<_> = sig
                .generators()
                .iter()
                .filter(|g| !g.dom.is_empty() && word[i..].starts_with(&g.dom))
                .collect();
            if !fits.is_empty() && rng.gen_bool(0.6) {
                let g = fits.choose(rng).unwrap();
                layer = layer.par(Term::generator(&g.name));
                next.extend(g.cod.iter().cloned());
                i += g.dom.len();
            } else {
                layer = layer.par(Term::Id(vec![word[i].clone()]));
                next.push(word[i].clone());
                i += 1;
            }
        }
        term = term.seq(layer);
        word = next;
    }
    term
}

#[test]
fn random_terms_soundness() {
    let doc = corpus();
    let sig = &doc.signature;
    let mut rng = common::rng(13);
    let samples = interps(sig, 14, 50);
    let objs = ["a", "b", "c"];
    for _ in 0..300 {
        let n = rng.gen_range(1..=3);
        let dom: Vec<String> = (0..n).map(|_| objs.choose(&mut rng).unwrap().to_string()).collect();
        let t = random_term(&mut rng, sig, &dom);
        // Padding with identities and empty tensors does not change the form.
        let (_, cod) = sig.typecheck(&t).unwrap();
        let padded = Term::Id(dom.clone())
            .seq(t.clone().par(Term::Id(vec![])))
            .seq(Term::Sym(vec![], cod.clone()));
        assert!(structural_eq(&t, &padded, sig).unwrap(), "{t}");
        // Two random terms of the same type: equal forms force equal values.
        let u = random_term(&mut rng, sig, &dom);
        if sig.typecheck(&u).unwrap().1 == cod && structural_eq(&t, &u, sig).unwrap() {
            assert!(!separated(&t, &u, sig, &samples), "{t}  vs  {u}");
        }
    }
}

fn formal_sig() -> Signature {
    let mut sig = Signature::new();
    for o in ["a", "b", "c"] {
        sig.add_object(o).unwrap();
    }
    sig.add_generator("f", to_word(&["a"]), to_word(&["b"])).unwrap();
    sig.add_generator("g", to_word(&["a"]), to_word(&["b"])).unwrap();
    sig
}

fn w(s: &[&str]) -> Vec<String> {
    to_word(s)
}

#[test]
fn formal_snake_evaluates_to_the_snake_composite() {
    let sig = formal_sig();
    for (k, interp) in interps(&sig, 15, 10).iter().enumerate() {
        let a = interp.word_set(&w(&["a"])).unwrap();
        let fl = formal_snake(&w(&["a"]), &[]);
        fl.typecheck(&sig).unwrap();
        let m = eval_learner(&fl, &sig, interp).unwrap();
        let reference = snake_composite(&Object::forward(&a));
        assert!(int_equiv(&to_int(&m), &to_int(&reference)).unwrap().is_some(), "{k}");

        let a_ = interp.word_set(&w(&["c"])).unwrap();
        let fl = formal_snake(&w(&["a"]), &w(&["c"]));
        let m = eval_learner(&fl, &sig, interp).unwrap();
        let reference = snake_composite(&Object::new(a, a_));
        assert!(int_equiv(&to_int(&m), &to_int(&reference)).unwrap().is_some(), "{k}");
    }
}

/// `(l, r) : (A, A') ⇸ (B, B')` with random residual words and generators on
/// both maps.
fn formal_sample(sig: &Signature) -> Vec<FormalLearner> {
    let f = Term::generator("f");
    vec![
        formal_iota(&f, sig).unwrap(),
        FormalLearner {
            a: w(&["a"]),
            a_prime: w(&["c"]),
            b: w(&["b"]),
            b_prime: w(&["c"]),
            p: w(&["a"]),
            q: w(&["b"]),
            l: Term::Id(w(&["a"])).par(f.clone()).seq(f.clone().par(Term::Id(w(&["b"])))),
            r: Term::sym(&["b"], &["c"]).seq(Term::Id(w(&["c"])).par(Term::Id(w(&["b"])))).seq(
                Term::sym(&["c"], &["b"]),
            )
            .seq(Term::generator("f2").par(Term::Id(w(&["c"])))),
        },
    ]
}

#[test]
fn formal_constructions_match_finset_constructions() {
    let mut sig = formal_sig();
    sig.add_generator("f2", w(&["b"]), w(&["a"])).unwrap();
    let sample = formal_sample(&sig);
    for fl in &sample {
        fl.typecheck(&sig).unwrap();
    }
    let (m1, m2) = (&sample[1], &formal_dual(&sample[1]));
    let fc_pairs = [
        (m1.clone(), formal_identity(&m1.b, &m1.b_prime)),
        (formal_identity(&m2.a, &m2.a_prime), m2.clone()),
        (m1.clone(), formal_tensor(&formal_identity(&m1.b, &[]), &formal_identity(&[], &m1.b_prime))),
    ];
    for interp in interps(&sig, 16, 10) {
        let ev = |fl: &FormalLearner| eval_learner(fl, &sig, &interp).unwrap();
        for x in &sample {
            for y in &sample {
                let ft = ev(&formal_tensor(x, y));
                let t = tensor(&ev(x), &ev(y));
                assert_eq!(ft.l().table(), t.l().table());
                assert_eq!(ft.r().table(), t.r().table());
            }
            let fd = ev(&formal_dual(x));
            let d = dual(&ev(x));
            assert_eq!(fd.l().table(), d.l().table());
            assert_eq!(fd.r().table(), d.r().table());
        }
        for (x, y) in &fc_pairs {
            let fc = ev(&formal_compose(x, y).unwrap());
            let c = compose(&ev(x), &ev(y)).unwrap();
            assert_eq!(fc.l().table(), c.l().table());
            assert_eq!(fc.r().table(), c.r().table());
        }
    }
}

#[test]
fn formal_atemp_checks() {
    let mut sig = formal_sig();
    sig.add_generator("f2", w(&["b"]), w(&["a"])).unwrap();
    let samples = interps(&sig, 17, 20);

    let snake = formal_snake(&w(&["a"]), &w(&["c"]));
    let id = formal_identity(&w(&["a"]), &w(&["c"]));
    assert_eq!(
        atemp_check_formal(&snake, &id, &sig, &samples).unwrap(),
        FormalVerdict::Consistent
    );

    for fl in formal_sample(&sig) {
        let dd = formal_dual(&formal_dual(&fl));
        assert_eq!(dd, fl);
        assert_eq!(
            atemp_check_formal(&fl, &dd, &sig, &samples).unwrap(),
            FormalVerdict::Consistent
        );
    }

    // ι(f) and ι(g) under an interpretation where f and g differ.
    let if_ = formal_iota(&Term::generator("f"), &sig).unwrap();
    let ig = formal_iota(&Term::generator("g"), &sig).unwrap();
    let mut separating = samples[0].clone();
    let a = separating.word_set(&w(&["a"])).unwrap();
    let b = FinSet::new(["b0", "b1"]).unwrap();
    separating.objects.insert("b".into(), b.clone());
    separating.generators.insert(
        "f".into(),
        extlearn::finbase::FinFun::constant(&a, &b, 0),
    );
    separating.generators.insert(
        "g".into(),
        extlearn::finbase::FinFun::constant(&a, &b, 1),
    );
    let f2 = extlearn::finbase::FinFun::constant(&b, &a, 0);
    separating.generators.insert("f2".into(), f2);
    separating.validate(&sig).unwrap();
    let mut agreeing = separating.clone();
    agreeing
        .generators
        .insert("g".into(), extlearn::finbase::FinFun::constant(&a, &b, 0));
    assert_eq!(
        atemp_check_formal(&if_, &ig, &sig, &[agreeing, separating]).unwrap(),
        FormalVerdict::Distinguished { interpretation: 1 }
    );
}
