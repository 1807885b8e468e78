use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use coverlink::clasp::{eval, hermitian_data_from_json, matrix_to_json, realize};
use coverlink::qm::{elimination_images, inclusion_images, qm_intermediate_presentation};
use coverlink::{
    abelianization, check_homomorphism, enumerate_cosets, eta_words, qm_presentation, qm_surgery_presentation,
    reidemeister_schreier, subgroup_generates, word_is_trivial, AbelianGroupInvariants, Category, ClaspProgram,
    FiniteGroup, IntMatrix, IntegerSymmetricForm, TwistedLinkingMatrix, Word,
};
use serde_json::{json, Value};

use crate::report::{Failure, Report};
use crate::source;
use crate::{ClaspCmd, Cli, Command, FormSource, FormsCmd, GroupCmd};

/// Runs the command; the flag says whether the reports form an array.
pub fn dispatch(cli: &Cli, command: Vec<String>) -> (Vec<Report>, bool) {
    let max_cosets = match cli.max_cosets() {
        Ok(n) => n,
        Err(msg) => return (vec![failed(command, Failure::input(msg))], false),
    };
    if let Command::Qm(args) = &cli.command {
        return match source::p_values(&args.p) {
            Ok(ps) => (qm_sweep(&command, &ps, max_cosets), true),
            Err(f) => (vec![failed(command, f)], false),
        };
    }
    let start = Instant::now();
    let mut report = Report::new(command);
    let outcome = match &cli.command {
        Command::Group(g) => group(g, max_cosets, &mut report),
        Command::Clasp(c) => clasp(c, max_cosets, &mut report),
        Command::Forms(f) => forms(f, &mut report),
        Command::Qm(_) => unreachable!("handled above"),
    };
    if let Err(f) = outcome {
        report.fail_with(&f);
    }
    report.timing = start.elapsed();
    (vec![report], false)
}

fn failed(command: Vec<String>, f: Failure) -> Report {
    let mut r = Report::new(command);
    r.fail_with(&f);
    r
}

fn words(ws: &[String]) -> Result<Vec<Word>, Failure> {
    ws.iter().map(|w| Word::parse(w).map_err(Failure::from)).collect()
}

fn invariants_json(a: &AbelianGroupInvariants) -> Value {
    json!({
        "invariant_factors": a.invariant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "free_rank": a.free_rank,
        "text": a.to_string(),
    })
}

fn group(cmd: &GroupCmd, max_cosets: usize, r: &mut Report) -> Result<(), Failure> {
    match cmd {
        GroupCmd::Order { group, expect } => {
            let pres = source::presentation(group)?;
            let n = enumerate_cosets(&pres, &[], max_cosets)?.len();
            r.set("order", n);
            r.line(format!("order: {n}"));
            if let Some(e) = expect {
                r.check(&format!("order is {e}"), n == *e);
            }
        }
        GroupCmd::Abelianization { group } => {
            let ab = abelianization(&source::presentation(group)?);
            r.set("abelianization", invariants_json(&ab));
            r.line(format!("abelianization: {ab}"));
        }
        GroupCmd::WordTrivial { group, word } => {
            let pres = source::presentation(group)?;
            let w = Word::parse(word)?;
            let table = enumerate_cosets(&pres, &[], max_cosets)?;
            let trivial = word_is_trivial(&table, &w)?;
            r.set("word", w.to_string());
            r.set("trivial", trivial);
            r.check(&format!("{w} is trivial"), trivial);
        }
        GroupCmd::Subgroup { group, words: ws, expect_index } => {
            let pres = source::presentation(group)?;
            let table = enumerate_cosets(&pres, &words(ws)?, max_cosets)?;
            r.set("index", table.len());
            r.set("generates", subgroup_generates(&table));
            r.line(format!("index: {}", table.len()));
            if let Some(e) = expect_index {
                r.check(&format!("index is {e}"), table.len() == *e);
            }
        }
        GroupCmd::KernelHomology { group, words: ws } => {
            let pres = source::presentation(group)?;
            let table = enumerate_cosets(&pres, &words(ws)?, max_cosets)?;
            let ab = abelianization(&reidemeister_schreier(&pres, &table)?);
            r.set("index", table.len());
            r.set("abelianization", invariants_json(&ab));
            r.line(format!("index: {}", table.len()));
            r.line(format!("subgroup abelianization: {ab}"));
        }
    }
    Ok(())
}

/// Runs the certification chain for every `p` on its own thread; reports
/// come back in input order.
fn qm_sweep(command: &[String], ps: &[i64], max_cosets: usize) -> Vec<Report> {
    std::thread::scope(|s| {
        let handles: Vec<_> = ps
            .iter()
            .map(|&p| {
                s.spawn(move || {
                    let start = Instant::now();
                    let mut r = Report::new(command.to_vec());
                    r.set("p", p);
                    if let Err(f) = certify(p, max_cosets, &mut r) {
                        r.fail_with(&f);
                    }
                    r.timing = start.elapsed();
                    r
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("certification thread panicked")).collect()
    })
}

fn certify(p: i64, max_cosets: usize, r: &mut Report) -> Result<(), Failure> {
    let inst = source::instance(p)?;
    let m = inst.m();
    r.set("m", m);
    r.line(format!("p = {p}, m = {m}"));
    let (big, mid, small) = (qm_surgery_presentation(inst), qm_intermediate_presentation(inst), qm_presentation(inst));
    let ts = enumerate_cosets(&small, &[], max_cosets)?;
    r.set("order", ts.len());
    r.line(format!("order: {}", ts.len()));
    r.check("order is 4|m|", ts.len() as u64 == inst.group_order());

    let z4 = AbelianGroupInvariants::from_factors(&[4], 0);
    let abs: Vec<_> = [&big, &mid, &small].into_iter().map(abelianization).collect();
    r.set("abelianization", invariants_json(&abs[2]));
    r.check("abelianization is Z/4 for all three presentations", abs.iter().all(|a| *a == z4));

    let tb = enumerate_cosets(&big, &[], max_cosets)?;
    let tm = enumerate_cosets(&mid, &[], max_cosets)?;
    let identity = inclusion_images();
    let chain = check_homomorphism(&big, &ts, &elimination_images())?
        && check_homomorphism(&big, &tm, &elimination_images())?
        && check_homomorphism(&small, &tb, &inclusion_images())?
        && check_homomorphism(&mid, &ts, &identity)?
        && check_homomorphism(&small, &tm, &identity)?
        && tb.len() == ts.len()
        && tm.len() == ts.len();
    r.check("presentation chain is an isomorphism", chain);

    let (eta0, _) = eta_words(inst);
    r.check("y^-2 eta0 is trivial", word_is_trivial(&ts, &Word::power_of("y", -2).concat(&eta0))?);
    let sub = enumerate_cosets(&small, &[eta0, Word::gen("z")], max_cosets)?;
    r.check("eta0 and z generate", subgroup_generates(&sub));

    let table = enumerate_cosets(&small, &[Word::power_of("y", 2)], max_cosets)?;
    let kernel = abelianization(&reidemeister_schreier(&small, &table)?);
    r.set("kernel", invariants_json(&kernel));
    r.line(format!("kernel of the extension: {kernel}"));
    let expected = match m.abs() {
        1 => AbelianGroupInvariants::trivial(),
        k => AbelianGroupInvariants::from_factors(&[k], 0),
    };
    r.check("y^2 has index 4 with kernel Z/|m|", table.len() == 4 && kernel == expected);
    Ok(())
}

fn load_program(path: &Path, max_cosets: usize) -> Result<(ClaspProgram, String, Arc<FiniteGroup>), Failure> {
    let (prog, name) = ClaspProgram::from_json(&source::read_json(path)?)?;
    let group = source::finite_group(&name, max_cosets)?;
    Ok((prog, name, group))
}

fn matrix_rows(m: &IntMatrix) -> Value {
    m.to_json()
}

fn describe_matrix(r: &mut Report, title: &str, m: &IntMatrix) {
    r.line(format!("{title}:"));
    for i in 0..m.rows() {
        r.line(format!("  {:?}", m.row(i)));
    }
}

fn describe_tlm(r: &mut Report, t: &TwistedLinkingMatrix) {
    r.set("twisted_linking_matrix", t.to_json());
    r.set("augmented", matrix_rows(&t.augmented()));
    r.line("lambda:");
    for row in t.lambda() {
        r.line(format!("  {}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" | ")));
    }
    describe_matrix(r, "augmented", &t.augmented());
}

fn write_program(r: &mut Report, prog: &ClaspProgram, group: &str, out: Option<&Path>) -> Result<(), Failure> {
    let doc = prog.to_json(group);
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&doc).expect("program serializes");
        std::fs::write(path, text + "\n").map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        r.line(format!("program written to {}", path.display()));
    } else {
        r.line(format!("program: {doc}"));
    }
    r.set("program", doc);
    Ok(())
}

fn clasp(cmd: &ClaspCmd, max_cosets: usize, r: &mut Report) -> Result<(), Failure> {
    match cmd {
        ClaspCmd::Eval { program } => {
            let (prog, _, group) = load_program(program, max_cosets)?;
            let t = eval(&prog, &group)?;
            describe_tlm(r, &t);
        }
        ClaspCmd::Homology { program } => {
            let (prog, _, group) = load_program(program, max_cosets)?;
            let h = eval(&prog, &group)?.cover_surgery_homology();
            r.set("homology", invariants_json(&h));
            r.line(format!("cover homology: {h}"));
        }
        ClaspCmd::Trivialize { program, out } => {
            let (prog, name, group) = load_program(program, max_cosets)?;
            let t = eval(&prog, &group)?;
            let extended = prog.then(&t.trivialize_first_row());
            let after = eval(&extended, &group)?;
            let first: Vec<_> = (0..after.size()).map(|j| after.entry(0, j).clone()).collect();
            let shaped = first.iter().enumerate().all(|(j, e)| {
                if j == 0 {
                    e.terms().all(|(g, _)| g == group.identity())
                } else {
                    e.is_zero()
                }
            });
            write_program(r, &extended, &name, out.as_deref())?;
            r.set("first_row", Value::Array(first.iter().map(|e| e.to_json()).collect()));
            r.check("first row is (n', 0, ..., 0)", shaped);
            r.check("framings unchanged", after.framings() == prog.framings.as_slice());
        }
        ClaspCmd::Realize { matrix, group, out } => {
            let doc = source::read_json(matrix)?;
            let name = match (group, doc.get("group").and_then(Value::as_str)) {
                (Some(g), _) => g.clone(),
                (None, Some(g)) => g.to_string(),
                (None, None) => "trivial".to_string(),
            };
            let grp = source::finite_group(&name, max_cosets)?;
            let (lambda, framings, mu) = hermitian_data_from_json(&grp, &doc)?;
            let prog = realize(&grp, &lambda, &framings, mu.as_deref())?;
            write_program(r, &prog, &name, out.as_deref())?;
            let back = eval(&prog, &grp)?;
            r.set("lambda", matrix_to_json(back.lambda()));
            r.check("evaluation reproduces the matrix", back.lambda() == lambda.as_slice());
        }
    }
    Ok(())
}

fn load_form(src: &FormSource) -> Result<IntegerSymmetricForm, Failure> {
    if let Some(name) = &src.builtin {
        return IntegerSymmetricForm::builtin(name).ok_or_else(|| Failure::input(format!("unknown form `{name}`")));
    }
    let path = src.matrix.as_ref().ok_or_else(|| Failure::input("no matrix given"))?;
    let v = source::read_json(path)?;
    Ok(IntegerSymmetricForm::new(IntMatrix::from_json(&v)?)?)
}

fn forms(cmd: &FormsCmd, r: &mut Report) -> Result<(), Failure> {
    match cmd {
        FormsCmd::Even(src) => {
            let f = load_form(src)?;
            r.check("form is even", f.is_even());
        }
        FormsCmd::Unimodular(src) => {
            let f = load_form(src)?;
            r.set("determinant", f.determinant().to_string());
            r.line(format!("determinant: {}", f.determinant()));
            r.check("form is unimodular", f.is_unimodular());
        }
        FormsCmd::Signature(src) => {
            let f = load_form(src)?;
            let s = f.signature()?;
            r.set("rank", f.rank());
            r.set("signature", s);
            r.line(format!("rank: {}", f.rank()));
            r.line(format!("signature: {s}"));
        }
        FormsCmd::Hyperbolize { source: src, search_bound } => {
            let f = load_form(src)?;
            let d = f.hyperbolic_basis(*search_bound)?;
            r.set("blocks", d.blocks);
            r.set("basis_change", d.basis_change.to_json());
            r.line(format!("hyperbolic blocks: {}", d.blocks));
            describe_matrix(r, "basis change U", &d.basis_change);
        }
        FormsCmd::Stabilize { source: src, category } => {
            let f = load_form(src)?;
            let cat: Category = category.parse()?;
            let k = f.e8_stabilization(cat)?;
            r.set("category", cat.name());
            r.set("e8_summands", k);
            r.line(format!("{} category: adjoin {k} copies of E8 (negative means -E8)", cat.name()));
        }
    }
    Ok(())
}
