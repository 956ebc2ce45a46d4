use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use extlearn::equivalence::{
    coend_equiv, ext_equiv, ext_onestep, int_equiv, surj_equiv, surj_onestep, two_morphism, Closure,
    ClosureOptions, CoendVerdict,
};
use extlearn::finbase::{FinRel, FinSet};
use extlearn::freesmc::{
    atemp_check_formal, parse_document, parse_term, random_interpretation, structural_eq, Document,
    FormalVerdict, Interpretation, InterpretationSpec, Term,
};
use extlearn::intensional::{delayed_identity, double_dual_int, dual_int, to_int};
use extlearn::learner::{compose_all, decompose, dual, identity, snake_composite, tensor, Object};
use extlearn::semantics::{atemp_compare, fhat, fhat_object, fhat_rel, CountingModel, Meaning, Model};
use extlearn::smooth::{dual_smooth, run_stream, Activation, Neuron};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::io::{self, closure_text, fun_table, relation_pairs, witness_tables, yes_no, Report};
use crate::{
    ActivationArg, AtempArgs, Cli, Command, EquivArgs, EquivKind, FhatArgs, FreesmcCmd, LearnerCmd, ModelArg,
    SmoothCmd,
};

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Learner(cmd) => learner(cmd),
        Command::Equiv(args) => equiv(args),
        Command::Fhat(args) => fhat_cmd(args),
        Command::AtempCompare(args) => atemp(args),
        Command::Freesmc(cmd) => freesmc(cmd, cli.seed),
        Command::Smooth(cmd) => smooth(cmd, cli.seed),
    }
}

fn learner(cmd: &LearnerCmd) -> Result<Report> {
    match cmd {
        LearnerCmd::Compose { files } => {
            let ms = files.iter().map(|f| io::coend(f)).collect::<Result<Vec<_>>>()?;
            let names: Vec<_> = files.iter().map(|f| f.display().to_string()).collect();
            Report::data(compose_all(&ms).with_context(|| format!("compose {}", names.join(" ")))?)
        }
        LearnerCmd::Tensor { left, right } => Report::data(tensor(&io::coend(left)?, &io::coend(right)?)),
        LearnerCmd::Dual { file } => Report::data(dual(&io::coend(file)?)),
        LearnerCmd::DualInt { file } => Report::data(dual_int(&io::int(file)?)),
        LearnerCmd::DoubleDual { file } => Report::data(double_dual_int(&io::int(file)?)),
        LearnerCmd::Decompose { file } => Report::data(decompose(&io::coend(file)?)),
        LearnerCmd::ToInt { file } => Report::data(io::int(file)?),
        LearnerCmd::ToCoend { file } => Report::data(io::coend(file)?),
        LearnerCmd::Snake { a, check, bound } => {
            let set = FinSet::range(*a);
            let obj = Object::forward(&set);
            let snake = snake_composite(&obj);
            if *check {
                snake_check(&set, &obj, *bound)
            } else {
                Report::data(snake)
            }
        }
    }
}

fn snake_check(set: &FinSet, obj: &Object, bound: usize) -> Result<Report> {
    let snake = snake_composite(obj);
    let int_snake = to_int(&snake);
    let delayed = int_equiv(&int_snake, &delayed_identity(set))?.is_some();
    let closure = ext_equiv(&int_snake, &to_int(&identity(obj)), &ClosureOptions::with_bound(bound))?;
    let image_is_identity = fhat_rel(&snake) == FinRel::identity(&fhat_object(obj));
    let text = format!(
        "snake composite on A = {set}\n  intensionally the delayed identity: {}\n  extensionally equivalent to the identity: {}\n  relational image is the identity: {}\n",
        yes_no(delayed),
        closure_text(&closure, bound),
        yes_no(image_is_identity),
    );
    let undecided = matches!(closure, Closure::Unknown { .. });
    Ok(Report::new(
        json!({
            "A": set,
            "bound": bound,
            "delayed_identity": delayed,
            "identity_closure": closure,
            "fhat_is_identity": image_is_identity,
        }),
        text,
    )?
    .undecided(undecided))
}

fn equiv(args: &EquivArgs) -> Result<Report> {
    let mut opts = ClosureOptions::with_bound(args.bound);
    if let Some(budget) = args.budget {
        opts.budget = budget;
    }
    opts.use_invariant = !args.no_invariant;
    let context = || format!("equiv {} {}", args.first.display(), args.second.display());
    let one_step = |f: fn(&_, &_) -> extlearn::Result<_>, name: &str| -> Result<Report> {
        let (m1, m2) = (io::int(&args.first)?, io::int(&args.second)?);
        let w = f(&m1, &m2).with_context(context)?;
        let text = match &w {
            Some(w) => format!("{name}: yes\n{}", witness_tables(w)),
            None => format!("{name}: no\n"),
        };
        Report::new(json!({ "kind": name, "related": w.is_some(), "witness": w }), text)
    };
    let closure = |f: fn(&_, &_, &ClosureOptions) -> extlearn::Result<Closure>, name: &str| -> Result<Report> {
        let (m1, m2) = (io::int(&args.first)?, io::int(&args.second)?);
        let c = f(&m1, &m2, &opts).with_context(context)?;
        let mut text = format!("{name}: {}\n", closure_text(&c, opts.bound));
        if let Some(chain) = c.chain() {
            for (i, link) in chain.links.iter().enumerate() {
                let arrow = if link.forward { "->" } else { "<-" };
                let _ = writeln!(text, "step {} ({} {arrow} {}), {}", i + 1, i, i + 1, link.witness.kind());
                text += &witness_tables(&link.witness);
            }
        }
        let undecided = matches!(c, Closure::Unknown { .. });
        Ok(Report::new(json!({ "kind": name, "related": c.is_yes(), "closure": c }), text)?.undecided(undecided))
    };
    match args.kind {
        EquivKind::Int => one_step(int_equiv, "int"),
        EquivKind::Ext => one_step(ext_onestep, "ext"),
        EquivKind::TwoMor => one_step(two_morphism, "2mor"),
        EquivKind::Surj => one_step(surj_onestep, "surj"),
        EquivKind::ExtClosure => closure(ext_equiv, "ext-closure"),
        EquivKind::SurjClosure => closure(surj_equiv, "surj-closure"),
        EquivKind::Coend => {
            let (l1, l2) = (io::coend(&args.first)?, io::coend(&args.second)?);
            let v = coend_equiv(&l1, &l2, &opts).with_context(context)?;
            let (text, undecided) = match &v {
                CoendVerdict::Slide { witness, forward } => (
                    format!(
                        "coend: yes, one slide {}\n{}",
                        if *forward { "from the first" } else { "from the second" },
                        witness_tables(witness)
                    ),
                    false,
                ),
                CoendVerdict::Intensional { closure } => (
                    format!("coend: {}\n", closure_text(closure, opts.bound)),
                    matches!(closure, Closure::Unknown { .. }),
                ),
            };
            Ok(Report::new(json!({ "kind": "coend", "related": v.is_yes(), "verdict": v }), text)?
                .undecided(undecided))
        }
    }
}

fn fhat_cmd(args: &FhatArgs) -> Result<Report> {
    let path = match (&args.file, &args.learner) {
        (Some(p), _) | (None, Some(p)) => p,
        (None, None) => bail!("no learner file given"),
    };
    let m = io::coend(path)?;
    match args.model {
        ModelArg::Rel => {
            let r = fhat_rel(&m);
            let text = relation_pairs(&r);
            Report::new(r, text)
        }
        ModelArg::Count => {
            let h = fhat(&CountingModel, &m)?;
            let mut text = format!("{} -> {}\n", h.dom(), h.cod());
            for i in 0..h.dom().len() {
                for j in 0..h.cod().len() {
                    let n = h.get(i, j);
                    if n != 0 {
                        let _ = writeln!(text, "  {} ~ {} : {n}", h.dom().label(i), h.cod().label(j));
                    }
                }
            }
            Report::new(h, text)
        }
    }
}

fn model(m: ModelArg) -> Model {
    match m {
        ModelArg::Rel => Model::Rel,
        ModelArg::Count => Model::Count,
    }
}

fn atemp(args: &AtempArgs) -> Result<Report> {
    let (m1, m2) = (io::coend(&args.first)?, io::coend(&args.second)?);
    let extra: Vec<Model> = args.model.iter().copied().map(model).collect();
    let v = atemp_compare(&m1, &m2, &extra)
        .with_context(|| format!("atemp-compare {} {}", args.first.display(), args.second.display()))?;
    let text = match (v.meaning, v.separated_by) {
        (Meaning::Distinguished, Some(by)) => format!("distinguished by the {} model\n", by.name()),
        _ => "consistent with equality: no model separates them\n".to_string(),
    };
    Report::new(&v, text)
}

fn load_document(path: &Path) -> Result<Document> {
    parse_document(&io::read(path)?).with_context(|| path.display().to_string())
}

fn named_or_inline(doc: &Document, s: &str) -> Result<Term> {
    match doc.term(s) {
        Ok(t) => Ok(t.clone()),
        Err(_) => parse_term(s).with_context(|| format!("`{s}` is neither a term name nor a term")),
    }
}

fn interpretation(doc: &Document, path: Option<&Path>, seed: u64, max_size: usize) -> Result<Interpretation> {
    match path {
        Some(p) => {
            let spec: InterpretationSpec = io::load(p)?;
            Interpretation::from_spec(&doc.signature, &spec).with_context(|| p.display().to_string())
        }
        None => {
            if max_size == 0 {
                bail!("--max-size must be positive");
            }
            Ok(random_interpretation(&doc.signature, &mut ChaCha8Rng::seed_from_u64(seed), max_size))
        }
    }
}

fn word(w: &[String]) -> String {
    format!("[{}]", w.join(" "))
}

fn freesmc(cmd: &FreesmcCmd, seed: u64) -> Result<Report> {
    match cmd {
        FreesmcCmd::Check { file } => {
            let doc = load_document(file)?;
            let sig = &doc.signature;
            let mut text = format!(
                "{} objects, {} generators\n",
                sig.objects().len(),
                sig.generators().len()
            );
            let mut terms = Vec::new();
            for (name, t) in &doc.terms {
                let (d, c) = sig.typecheck(t).with_context(|| format!("term {name}"))?;
                let _ = writeln!(text, "term {name} : {} -> {}", word(&d), word(&c));
                terms.push(json!({ "name": name, "dom": d, "cod": c }));
            }
            let mut learners = Vec::new();
            for (name, fl) in &doc.learners {
                fl.typecheck(sig).with_context(|| format!("learner {name}"))?;
                let _ = writeln!(
                    text,
                    "learner {name} : ({}, {}) -> ({}, {})",
                    word(&fl.a),
                    word(&fl.a_prime),
                    word(&fl.b),
                    word(&fl.b_prime)
                );
                learners.push(name);
            }
            Report::new(json!({ "ok": true, "terms": terms, "learners": learners }), text)
        }
        FreesmcCmd::Eval {
            file,
            term,
            interp,
            max_size,
        } => {
            let doc = load_document(file)?;
            let t = named_or_inline(&doc, term)?;
            let i = interpretation(&doc, interp.as_deref(), seed, *max_size)?;
            let f = i.eval(&t, &doc.signature)?;
            let text = fun_table(term, &f);
            Report::new(json!({ "interpretation": i.to_spec(), "function": f }), text)
        }
        FreesmcCmd::Eq { file, first, second } => {
            let doc = load_document(file)?;
            let (t1, t2) = (named_or_inline(&doc, first)?, named_or_inline(&doc, second)?);
            let eq = structural_eq(&t1, &t2, &doc.signature)?;
            let text = format!("{t1}\n{t2}\nequal: {}\n", yes_no(eq));
            Report::new(json!({ "equal": eq }), text)
        }
        FreesmcCmd::Atemp {
            file,
            first,
            second,
            samples,
            max_size,
        } => {
            let doc = load_document(file)?;
            let (fl1, fl2) = (doc.learner(first)?, doc.learner(second)?);
            fl1.typecheck(&doc.signature).with_context(|| format!("learner {first}"))?;
            fl2.typecheck(&doc.signature).with_context(|| format!("learner {second}"))?;
            if *max_size == 0 {
                bail!("--max-size must be positive");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let interps: Vec<_> = (0..*samples)
                .map(|_| random_interpretation(&doc.signature, &mut rng, *max_size))
                .collect();
            let v = atemp_check_formal(fl1, fl2, &doc.signature, &interps)?;
            let text = match v {
                FormalVerdict::Distinguished { interpretation } => {
                    format!("distinguished under interpretation {interpretation} of {samples}\n")
                }
                FormalVerdict::Consistent => format!("consistent with equality under {samples} interpretations\n"),
            };
            let witness = match v {
                FormalVerdict::Distinguished { interpretation } => Some(interps[interpretation].to_spec()),
                FormalVerdict::Consistent => None,
            };
            Report::new(json!({ "result": v, "interpretation": witness }), text)
        }
    }
}

fn smooth(cmd: &SmoothCmd, seed: u64) -> Result<Report> {
    let SmoothCmd::NeuronDual {
        dim,
        steps,
        step,
        activation,
        csv,
    } = cmd;
    let (n, steps) = (*dim, *steps);
    if n == 0 || steps == 0 {
        bail!("--dim and --steps must be positive");
    }
    if !(*step >= 0.0 && step.is_finite()) {
        bail!("--step must be non-negative");
    }
    let spec = Neuron {
        input_dim: n,
        step: *step,
        activation: match activation {
            ActivationArg::Identity => Activation::Identity,
            ActivationArg::Logistic => Activation::Logistic,
        },
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |k: usize| -> Vec<f64> { (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect() };
    let teacher = draw(n + 1);
    let p0 = draw(n + 1);
    let data: Vec<(Vec<f64>, Vec<f64>)> = (0..steps)
        .map(|_| {
            let a = draw(n);
            let y = spec.predict(&teacher, &a);
            (a, vec![y])
        })
        .collect();

    let m = spec.learner();
    let d = dual_smooth(&m);
    let dd = dual_smooth(&d);
    let original = run_stream(&m, &p0, &data)?;
    let flipped: Vec<_> = data.iter().map(|(a, y)| (y.clone(), a.clone())).collect();
    let dual_run = run_stream(&d, &[p0.as_slice(), &data[0].0].concat(), &flipped)?;
    let s0 = [p0.as_slice(), &data[0].0, &data[0].1].concat();
    let lagged = run_stream(&dd, &s0, &data[1..])?;

    let mut rows = Vec::with_capacity(steps);
    let mut lag_holds = true;
    for t in 0..steps {
        let double_dual = (t > 0).then(|| lagged.steps[t - 1].output[0]);
        let agrees = double_dual.map(|v| v == original.steps[t].output[0]);
        lag_holds &= agrees.unwrap_or(true);
        rows.push(json!({
            "t": t,
            "target": data[t].1[0],
            "original": original.steps[t].output[0],
            "dual": dual_run.steps[t].output,
            "double_dual": double_dual,
            "agrees": agrees,
        }));
    }

    if let Some(path) = csv {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
        let mut header = vec!["t".to_string(), "target".into(), "original".into(), "double_dual".into()];
        header.extend((1..=n).map(|i| format!("dual_{i}")));
        w.write_record(&header)?;
        for t in 0..steps {
            let mut record = vec![
                t.to_string(),
                data[t].1[0].to_string(),
                original.steps[t].output[0].to_string(),
                if t > 0 { lagged.steps[t - 1].output[0].to_string() } else { String::new() },
            ];
            record.extend(dual_run.steps[t].output.iter().map(f64::to_string));
            w.write_record(&record)?;
        }
        w.flush()?;
    }

    let mut text = format!("{:>5} {:>12} {:>12} {:>12}\n", "t", "target", "original", "double dual");
    for t in 0..steps {
        let dd = if t > 0 { format!("{:.9}", lagged.steps[t - 1].output[0]) } else { "-".into() };
        let _ = writeln!(
            text,
            "{t:>5} {:>12.9} {:>12.9} {dd:>12}",
            data[t].1[0], original.steps[t].output[0]
        );
    }
    let _ = writeln!(
        text,
        "double dual one datum behind the original, bitwise: {}",
        yes_no(lag_holds)
    );
    Report::new(
        json!({
            "dim": n,
            "steps": steps,
            "seed": seed,
            "step": step,
            "rows": rows,
            "lag_law_holds": lag_holds,
        }),
        text,
    )
}
