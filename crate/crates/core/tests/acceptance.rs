//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p extlearn --test acceptance`. Tolerances are pinned
//! below; everything except the gradient check is exact.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use extlearn::equivalence::{
    coend_equiv, ext_equiv, ext_onestep, int_equiv, stable_behaviour_differs,
    Closure, ClosureOptions, Refutation, Witness,
};
use extlearn::finbase::{rel_compose, FinFun, FinRel, FinSet};
use extlearn::freesmc::{parse_document, random_interpretation, structural_eq, Term};
use extlearn::intensional::{delayed_identity, double_dual_int, to_coend, to_int, IntLearner};
use extlearn::learner::*;
use extlearn::sample::{all_int, boundary, count_int, random_int, random_learner};
use extlearn::semantics::fhat_rel;
use extlearn::smooth::{dual_smooth, run_stream, Activation, Neuron};
use rand::Rng;

/// Step of the central differences.
const FD_STEP: f64 = 1e-5;
/// Norm-wise relative error allowed between analytic and numeric gradients.
const FD_TOL: f64 = 1e-6;
/// Largest exhaustive enumeration per size combination in criterion 5.
const ENUM_LIMIT: usize = 20_000;
/// Seeded samples per size combination beyond the limit.
const SAMPLES: usize = 100;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_boundary<R: Rng>(rng: &mut R, max: usize) -> Boundary {
    boundary(
        rng.gen_range(1..=max),
        rng.gen_range(1..=max),
        rng.gen_range(1..=max),
        rng.gen_range(1..=max),
    )
}

fn random_on<R: Rng>(rng: &mut R, bd: &Boundary, max: usize) -> Learner {
    let (n, m) = (rng.gen_range(1..=max), rng.gen_range(1..=max));
    random_learner(rng, bd, n, m)
}

/// A boundary starting where `bd` ends.
fn next_boundary<R: Rng>(rng: &mut R, bd: &Boundary, max: usize) -> Boundary {
    Boundary::new(
        bd.target.clone(),
        Object::new(FinSet::named("c", rng.gen_range(1..=max)), FinSet::named("c'", rng.gen_range(1..=max))),
    )
}

fn int_witness(l1: &Learner, l2: &Learner) -> Result<(), String> {
    let (m1, m2) = (to_int(l1), to_int(l2));
    match int_equiv(&m1, &m2).map_err(|e| e.to_string())? {
        Some(w) => w.validate(&m1, &m2).map_err(|e| e.to_string()),
        None => Err("no bijection witness".into()),
    }
}

fn criterion_1() -> Outcome {
    let mut rng = common::rng(1);
    for k in 0..200 {
        let bd1 = random_boundary(&mut rng, 3);
        let bd2 = next_boundary(&mut rng, &bd1, 3);
        let bd3 = next_boundary(&mut rng, &bd2, 3);
        let (m1, m2, m3) = (random_on(&mut rng, &bd1, 3), random_on(&mut rng, &bd2, 3), random_on(&mut rng, &bd3, 3));
        let left = compose(&compose(&m1, &m2).unwrap(), &m3).unwrap();
        let right = compose(&m1, &compose(&m2, &m3).unwrap()).unwrap();
        int_witness(&left, &right).map_err(|e| format!("associativity, sample {k}: {e}"))?;
        let id_l = compose(&identity(m1.source()), &m1).unwrap();
        let id_r = compose(&m1, &identity(m1.target())).unwrap();
        int_witness(&id_l, &m1).map_err(|e| format!("left unit, sample {k}: {e}"))?;
        int_witness(&id_r, &m1).map_err(|e| format!("right unit, sample {k}: {e}"))?;
    }
    Ok("200 triples and 400 unit pairs, all bijection witnesses validated".into())
}

fn objects(max: usize, min: usize) -> Vec<Object> {
    let mut out = Vec::new();
    for a in min..=max {
        for a_ in min..=max {
            out.push(Object::new(FinSet::named("x", a), FinSet::named("x'", a_)));
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for x in objects(3, 0) {
        let xs = x.dual();
        ensure(dual(&cup(&x)) == cap(&xs), || format!("cup* != cap of dual at {x}"))?;
        ensure(dual(&cap(&x)) == cup(&xs), || format!("cap* != cup of dual at {x}"))?;
        for m in [identity(&x), cup(&x), cap(&x), snake_composite(&x)] {
            ensure(dual(&dual(&m)) == m, || format!("double dual differs at {x}"))?;
        }
        checked += 1;
    }
    let mut rng = common::rng(2);
    let mut learners = 0;
    for a in 1..=3 {
        for a_ in 1..=3 {
            for b in 1..=3 {
                for b_ in 1..=3 {
                    let bd = boundary(a, a_, b, b_);
                    for _ in 0..3 {
                        let m = random_on(&mut rng, &bd, 3);
                        ensure(dual(&dual(&m)) == m, || format!("double dual differs on {bd}"))?;
                        learners += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "all {checked} objects with sizes <= 3 (cup/cap duality, dual twice on structural learners); {learners} random learners on all 81 boundaries"
    ))
}

fn criterion_3() -> Outcome {
    let mut details = Vec::new();
    for n in [2, 3] {
        let a = FinSet::range(n);
        let obj = Object::forward(&a);
        let snake = to_int(&snake_composite(&obj));
        let id = to_int(&identity(&obj));
        let delayed = delayed_identity(&a);
        let w = int_equiv(&snake, &delayed)
            .unwrap()
            .ok_or_else(|| format!("|A|={n}: snake is not the delayed identity"))?;
        w.validate(&snake, &delayed).map_err(|e| e.to_string())?;
        ensure(ext_onestep(&snake, &id).unwrap().is_none(), || format!("|A|={n}: one-step snake -> id"))?;
        ensure(ext_onestep(&id, &snake).unwrap().is_none(), || format!("|A|={n}: one-step id -> snake"))?;
        ensure(stable_behaviour_differs(&snake, &id), || format!("|A|={n}: invariant does not separate"))?;
        let mut opts = ClosureOptions::with_bound(4);
        opts.use_invariant = false;
        opts.budget = usize::MAX;
        let t = Instant::now();
        match ext_equiv(&snake, &id, &opts).unwrap() {
            Closure::NoWithinBound {
                refutation: Refutation::Exhausted { explored },
            } => details.push(format!("|A|={n}: {explored} classes exhausted in {:.1}s", t.elapsed().as_secs_f64())),
            other => return Err(format!("|A|={n}: closure search returned {other:?}")),
        }
    }
    Ok(format!(
        "snake = delayed identity; stable behaviour separates it from the identity; no zig-zag to identity with |P| <= 4 ({})",
        details.join(", ")
    ))
}

fn pullback_moves<R: Rng>(rng: &mut R, m: &IntLearner) -> Vec<IntLearner> {
    (0..20)
        .filter_map(|_| {
            let n1 = rng.gen_range(1..=3);
            common::pullback(rng, m, n1)
        })
        .take(2)
        .collect()
}

fn criterion_4() -> Outcome {
    for n in 1..=3 {
        let obj = Object::forward(&FinSet::range(n));
        let idrel = FinRel::identity(&extlearn::semantics::fhat_object(&obj));
        ensure(fhat_rel(&identity(&obj)) == idrel, || format!("identity at {n}"))?;
        ensure(fhat_rel(&snake_composite(&obj)) == idrel, || format!("snake at {n}"))?;
    }
    let mut rng = common::rng(4);
    for k in 0..100 {
        let bd1 = random_boundary(&mut rng, 3);
        let bd2 = next_boundary(&mut rng, &bd1, 3);
        let (m1, m2) = (random_on(&mut rng, &bd1, 3), random_on(&mut rng, &bd2, 3));
        let whole = fhat_rel(&compose(&m1, &m2).unwrap());
        let parts = rel_compose(&fhat_rel(&m1), &fhat_rel(&m2)).unwrap();
        ensure(whole == parts, || format!("functoriality, pair {k}"))?;
    }
    let mut moves = 0;
    for k in 0..50 {
        let bd = random_boundary(&mut rng, 2);
        let m = random_on(&mut rng, &bd, 3);
        let im = to_int(&m);
        let reference = fhat_rel(&m);
        let mut variants = vec![
            to_coend(&im),
            decompose(&m),
            to_coend(&double_dual_int(&im)),
            compose(&m, &snake_composite(m.target())).unwrap(),
            compose(&snake_composite(m.source()), &m).unwrap(),
        ];
        let n = im.p().len();
        let sigma = FinFun::new(im.p().clone(), FinSet::named("s", n), (0..n).rev().collect()).unwrap();
        variants.push(to_coend(&im.relabel(&sigma).unwrap()));
        variants.extend(pullback_moves(&mut rng, &im).iter().map(to_coend));
        for v in &variants {
            ensure(fhat_rel(v) == reference, || format!("invariance, learner {k}"))?;
            moves += 1;
        }
    }
    Ok(format!(
        "identity and snake map to identities; 100 composites functorial; {moves} equivalence moves preserve the image"
    ))
}

fn double_dual_witness(m: &IntLearner, dd: &IntLearner) -> Witness {
    Witness::DiagonalFiller {
        f: FinFun::new(dd.p().clone(), m.p().clone(), m.update_fun().table().to_vec()).unwrap(),
        uhat: FinFun::new(m.update_fun().dom().clone(), dd.p().clone(), (0..dd.p().len()).collect()).unwrap(),
    }
}

fn criterion_5() -> Outcome {
    let mut rng = common::rng(5);
    let (mut exhaustive, mut sampled, mut combos_all, mut combos) = (0usize, 0usize, 0, 0);
    for n in 1..=3 {
        for a in 1..=3 {
            for b_ in 1..=3 {
                for b in 1..=3 {
                    for a_ in 1..=3 {
                        let bd = boundary(a, a_, b, b_);
                        combos += 1;
                        let check = |m: &IntLearner| -> Result<(), String> {
                            let dd = double_dual_int(m);
                            double_dual_witness(m, &dd)
                                .validate(&dd, m)
                                .map_err(|e| format!("{bd}, |P|={n}: {e}"))
                        };
                        match count_int(&bd, n) {
                            Some(total) if total <= ENUM_LIMIT => {
                                combos_all += 1;
                                for m in all_int(&bd, n) {
                                    check(&m)?;
                                    exhaustive += 1;
                                }
                            }
                            _ => {
                                for _ in 0..SAMPLES {
                                    check(&random_int(&mut rng, &bd, n))?;
                                    sampled += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "(f = U, Uhat = id) validated on {exhaustive} learners ({combos_all} of {combos} size combinations enumerated completely) and {sampled} seeded samples of the rest"
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = common::rng(6);
    for k in 0..50 {
        let bd = random_boundary(&mut rng, 3);
        let m = random_on(&mut rng, &bd, 3);
        let d = decompose(&m);
        let (md, mm) = (to_int(&d), to_int(&m));
        let w = ext_onestep(&md, &mm)
            .unwrap()
            .ok_or_else(|| format!("learner {k}: no one-step witness"))?;
        w.validate(&md, &mm).map_err(|e| e.to_string())?;
        ensure(fhat_rel(&d) == fhat_rel(&m), || format!("learner {k}: images differ"))?;
    }
    Ok("50 learners: decomposition related by a validated one-step witness and image-equal".into())
}

fn all_funs(dom: &FinSet, cod: &FinSet) -> Vec<FinFun> {
    common::all_tables(dom.len(), cod.len())
        .into_iter()
        .map(|t| FinFun::new(dom.clone(), cod.clone(), t).unwrap())
        .collect()
}

fn eta_monoidal(x: &Object, y: &Object) -> (Learner, Learner) {
    let (xs, ys) = (x.dual(), y.dual());
    let yys = y.tensor(&ys);
    let lhs = cup(&x.tensor(y));
    let rhs = compose_all(&[
        left_unitor_inv_learner(&Object::unit()),
        tensor(&cup(x), &cup(y)),
        associator_learner(x, &xs, &yys),
        tensor(&identity(x), &symmetry_learner(&xs, &yys)),
        tensor(&identity(x), &associator_learner(y, &ys, &xs)),
        associator_inv_learner(x, y, &ys.tensor(&xs)),
    ])
    .unwrap();
    (lhs, rhs)
}

fn eps_monoidal(x: &Object, y: &Object) -> (Learner, Learner) {
    let (xs, ys) = (x.dual(), y.dual());
    let xy = x.tensor(y);
    let lhs = cap(&xy);
    let rhs = compose_all(&[
        associator_learner(&ys, &xs, &xy),
        tensor(&identity(&ys), &associator_inv_learner(&xs, x, y)),
        tensor(&identity(&ys), &symmetry_learner(&xs.tensor(x), y)),
        associator_inv_learner(&ys, y, &xs.tensor(x)),
        tensor(&cap(y), &cap(x)),
        left_unitor_learner(&Object::unit()),
    ])
    .unwrap();
    (lhs, rhs)
}

fn criterion_7() -> Outcome {
    let objs = objects(2, 1);
    let mut monoidal = 0;
    for x in &objs {
        for y in &objs {
            for (which, (l, r)) in [("cup", eta_monoidal(x, y)), ("cap", eps_monoidal(x, y))] {
                int_witness(&l, &r).map_err(|e| format!("{which} monoidality at {x}, {y}: {e}"))?;
                monoidal += 1;
            }
        }
        let s = symmetry_learner(x, &x.dual());
        int_witness(&compose(&cup(x), &s).unwrap(), &cup(&x.dual()))
            .map_err(|e| format!("s . cup at {x}: {e}"))?;
        int_witness(&compose(&s, &cap(x)).unwrap(), &cap(&x.dual()))
            .map_err(|e| format!("cap . s at {x}: {e}"))?;
    }

    let opts = ClosureOptions::with_bound(4);
    let (mut extranatural, mut intensional) = (0, 0);
    for x in &objs {
        for y in &objs {
            for f in all_funs(&x.fwd, &y.fwd) {
                for h in all_funs(&y.bwd, &x.bwd) {
                    let g = iota_pair(&f, &h);
                    let (xs, ys) = (x.dual(), y.dual());
                    let pairs = [
                        (
                            "cup",
                            compose(&cup(x), &tensor(&g, &identity(&xs))).unwrap(),
                            compose(&cup(y), &tensor(&identity(y), &dual(&g))).unwrap(),
                        ),
                        (
                            "cap",
                            compose(&tensor(&identity(&ys), &g), &cap(y)).unwrap(),
                            compose(&tensor(&dual(&g), &identity(x)), &cap(x)).unwrap(),
                        ),
                    ];
                    for (which, l, r) in pairs {
                        let verdict = coend_equiv(&l, &r, &opts).map_err(|e| e.to_string())?;
                        if let extlearn::equivalence::CoendVerdict::Intensional {
                            closure: Closure::Yes { chain },
                        } = &verdict
                        {
                            chain.validate().map_err(|e| e.to_string())?;
                        }
                        ensure(verdict.is_yes(), || {
                            format!("{which} extranaturality at {x} -> {y}: {verdict:?}")
                        })?;
                        extranatural += 1;
                        if int_equiv(&to_int(&l), &to_int(&r)).unwrap().is_some() {
                            intensional += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{monoidal} monoidality and {} symmetry equations up to intensional equivalence; {extranatural} extranaturality squares against iota(f, h) equal in the coend ({intensional} of them also intensionally)",
        2 * objs.len()
    ))
}

const CORPUS: &str = include_str!("data/corpus.smc");
const EXPECTED: [bool; 30] = [
    true, true, true, true, true, true, true, true, true, true, //
    false, false, false, false, false, false, true, true, false, true, //
    false, false, true, true, false, false, true, true, true, true,
];

fn criterion_8() -> Outcome {
    let doc = parse_document(CORPUS).map_err(|e| e.to_string())?;
    let sig = &doc.signature;
    let mut rng = common::rng(8);
    let interps: Vec<_> = (0..50).map(|_| random_interpretation(sig, &mut rng, 3)).collect();
    let term = |name: String| -> Term { doc.term(&name).unwrap().clone() };
    for k in 1..=30 {
        let (l, r) = (term(format!("c{k:02}_l")), term(format!("c{k:02}_r")));
        let eq = structural_eq(&l, &r, sig).map_err(|e| e.to_string())?;
        ensure(eq == EXPECTED[k - 1], || format!("case {k}: got {eq}"))?;
        if eq {
            for (i, interp) in interps.iter().enumerate() {
                ensure(interp.eval(&l, sig).unwrap() == interp.eval(&r, sig).unwrap(), || {
                    format!("case {k}: evaluations differ under interpretation {i}")
                })?;
            }
        }
    }
    Ok("30 golden pairs decided as expected; equal pairs agree under 50 random interpretations".into())
}

fn criterion_9() -> Outcome {
    let mut worst: f64 = 0.0;
    for seed in 0..10 {
        let mut rng = common::rng(900 + seed);
        let mut v = |n: usize| -> Vec<f64> { (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect() };
        for activation in [Activation::Identity, Activation::Logistic] {
            let spec = Neuron {
                input_dim: 3,
                step: 0.1,
                activation,
            };
            let m = spec.learner();
            let data: Vec<(Vec<f64>, Vec<f64>)> = (0..101).map(|_| (v(3), v(1))).collect();
            let p0 = v(4);
            let original = run_stream(&m, &p0, &data).unwrap();
            let dd = dual_smooth(&dual_smooth(&m));
            let s0 = [p0.as_slice(), &data[0].0, &data[0].1].concat();
            let lagged = run_stream(&dd, &s0, &data[1..]).unwrap();
            for t in 0..100 {
                let probe = v(3);
                ensure(
                    dd.implement(&lagged.steps[t].state, &probe).unwrap()
                        == m.implement(&original.steps[t + 1].state, &probe).unwrap(),
                    || format!("seed {seed}: lag law fails at step {}", t + 1),
                )?;
                ensure(lagged.steps[t].output == original.steps[t + 1].output, || {
                    format!("seed {seed}: stream outputs differ at step {}", t + 1)
                })?;
            }
            for _ in 0..10 {
                let (p, a) = (v(4), v(3));
                let y = spec.predict(&p, &a) + 1.0;
                let (gp, ga) = spec.gradients(&p, &a, y);
                let fd = |x: &[f64], f: &dyn Fn(&[f64]) -> f64| -> Vec<f64> {
                    (0..x.len())
                        .map(|i| {
                            let (mut up, mut down) = (x.to_vec(), x.to_vec());
                            up[i] += FD_STEP;
                            down[i] -= FD_STEP;
                            (f(&up) - f(&down)) / (2.0 * FD_STEP)
                        })
                        .collect()
                };
                let norm = |u: &[f64]| u.iter().map(|x| x * x).sum::<f64>().sqrt();
                let rel = |g: &[f64], n: &[f64]| {
                    let d: Vec<f64> = g.iter().zip(n).map(|(x, y)| x - y).collect();
                    norm(&d) / norm(g).max(norm(n))
                };
                worst = worst
                    .max(rel(&gp, &fd(&p, &|q| spec.loss(q, &a, y))))
                    .max(rel(&ga, &fd(&a, &|b| spec.loss(&p, b, y))));
            }
        }
    }
    ensure(worst <= FD_TOL, || format!("gradient relative error {worst:e} > {FD_TOL:e}"))?;
    Ok(format!(
        "double dual one step behind, bitwise, over 10 seeds x 2 activations x 100 steps; worst gradient error {worst:.1e} (h = {FD_STEP:e}, tol = {FD_TOL:e})"
    ))
}

fn main() -> ExitCode {
    let criteria: [(usize, &str, fn() -> Outcome); 9] = [
        (1, "category laws", criterion_1),
        (2, "involution", criterion_2),
        (3, "snake failure", criterion_3),
        (4, "relational image", criterion_4),
        (5, "double dual", criterion_5),
        (6, "decomposition", criterion_6),
        (7, "teleological structure", criterion_7),
        (8, "free symmetric monoidal terms", criterion_8),
        (9, "smooth lag law", criterion_9),
    ];
    let mut failed = 0;
    for (n, name, run) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {n} ({name}): {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {n} ({name}): {detail} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
