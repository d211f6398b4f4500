//! Acceptance criteria, one line per criterion. Each check runs against a
//! fixed seed and must finish inside its time bound.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use epiflow::dsl::{parse_term, print_canonical};
use epiflow::entropy::{
    analyze_references, analyze_references_literal, degrees_of_loss, freed_through, LossDegree,
    State,
};
use epiflow::logic::{eqpl, eval_connective, ConnectiveKind};
use epiflow::numerics::{colift_int, colift_rat, int_add, int_neg, int_sub, lift_int, lift_rat};
use epiflow::random::{self, Shape};
use epiflow::typing::{
    canonical_invariant, morphism_structure, partial_morphism_structure, precedes, same_type,
};
use epiflow::{
    episodic_inverse, hat_element, inspect, structural_eq, Action, EpisodeElement, Episodic, Grid,
    Integer, ProcessLattice, Rational, Template, Term,
};
use epiflow_cli::run_cli;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

struct Criterion {
    name: &'static str,
    bound: Duration,
    check: fn() -> Check,
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn epf(args: &[&str]) -> (i32, String) {
    let out = run_cli(std::iter::once("epf").chain(args.iter().copied()));
    (out.code, out.stdout)
}

/// Non-empty lattices up to 4×4 with at most two nested levels; nested flows
/// are non-empty as well.
fn suite_shape() -> Shape {
    Shape {
        max_rows: 4,
        max_cols: 4,
        max_depth: 2,
        flow_prob: 0.3,
        allow_empty: false,
    }
}

fn displayed_lifts() -> Check {
    for (n, want) in [("2", "[w* w*]\n"), ("-5", "[w ; w ; w ; w ; w ; w*]\n")] {
        let (code, out) = epf(&["int", "lift", n]);
        ensure!(
            code == 0 && out == want,
            "int lift {n}: exit {code}, got {out:?}"
        );
    }
    Ok(())
}

fn integer_round_trip() -> Check {
    for n in -200i64..=200 {
        let got = colift_int::<Integer>(&lift_int(n));
        ensure!(got == Ok(n), "n={n}: {got:?}");
    }
    Ok(())
}

fn homomorphism() -> Check {
    for a in 0i64..=40 {
        for b in 0i64..=40 {
            let (la, lb) = (lift_int(a), lift_int(b));
            let sum = int_add::<Integer>(&la, &lb).and_then(|l| colift_int::<Integer>(&l));
            ensure!(sum == Ok(a + b), "{a}+{b}: {sum:?}");
            let diff = int_sub::<Integer>(&la, &lb).and_then(|l| colift_int::<Integer>(&l));
            ensure!(diff == Ok(a - b), "{a}-{b}: {diff:?}");
        }
    }
    for a in -40i64..=40 {
        let neg = int_neg::<Integer>(&lift_int(a)).and_then(|l| colift_int::<Integer>(&l));
        ensure!(neg == Ok(-a), "-({a}): {neg:?}");
    }
    Ok(())
}

fn rational_round_trip() -> Check {
    for p in 0i64..=12 {
        for q in (-12i64..=-1).chain(1..=12) {
            let r = Rational::new(p, q);
            let got = colift_rat::<Integer>(&lift_rat(&r));
            ensure!(got == Ok(r), "{p}/{q}: {got:?}");
        }
    }
    // worked example, evaluated through (S - 1) / colift(payload) by hand
    let l: ProcessLattice = Grid::row(vec![
        Action::SUCCEED,
        Action::SUCCEED,
        Action::SUCCEED,
        Action::Flow(Grid::row(vec![Action::SUCCEED, Action::SUCCEED])),
    ]);
    let out = inspect(&Action::Flow(l.clone()));
    let payload = hat_element(&out.element).map_err(|e| e.to_string())?;
    let denom = match payload {
        Action::Flow(d) => colift_int::<Integer>(&d).map_err(|e| e.to_string())?,
        other => return Err(format!("payload {other:?} is not a flow")),
    };
    let by_hand = Rational::new(out.successes as i64 - 1, denom);
    ensure!(by_hand == Rational::new(3, 2), "formula gave {by_hand}");
    let got = colift_rat::<Integer>(&l);
    ensure!(got == Ok(by_hand), "colift gave {got:?}");
    Ok(())
}

fn classical(k: ConnectiveKind, a: bool, b: bool) -> bool {
    match k {
        ConnectiveKind::Or => a || b,
        ConnectiveKind::And => a && b,
        ConnectiveKind::Not => !a,
        ConnectiveKind::Implies | ConnectiveKind::ImpliesAlt => !a || b,
        ConnectiveKind::Iff => a == b,
    }
}

fn logic_tables() -> Check {
    let atom = |b: bool| Action::Episodic(Episodic::from_bool(b));
    for a in [false, true] {
        let not =
            eval_connective(ConnectiveKind::Not, &atom(a), None).map_err(|e| e.to_string())?;
        ensure!(not.is_success() == !a, "not {a}");
        for b in [false, true] {
            for k in ConnectiveKind::ALL.into_iter().filter(|k| k.arity() == 2) {
                let got =
                    eval_connective(k, &atom(a), Some(&atom(b))).map_err(|e| e.to_string())?;
                ensure!(got.is_success() == classical(k, a, b), "{k} {a} {b}");
            }
            let i1 = eval_connective(ConnectiveKind::Implies, &atom(a), Some(&atom(b)));
            let i2 = eval_connective(ConnectiveKind::ImpliesAlt, &atom(a), Some(&atom(b)));
            ensure!(i1 == i2, "implication encodings disagree on {a} {b}");
        }
    }
    let mut r = rng(5);
    let shape = suite_shape();
    for i in 0..200 {
        let a = Action::Flow(random::lattice(&mut r, &shape));
        let b = Action::Flow(random::lattice(&mut r, &shape));
        let ra = Action::Episodic(inspect(&a).reduced());
        let rb = Action::Episodic(inspect(&b).reduced());
        for k in ConnectiveKind::ALL {
            let (rhs, rhs_reduced) = if k.arity() == 2 {
                (Some(&b), Some(&rb))
            } else {
                (None, None)
            };
            let on_flows = eval_connective(k, &a, rhs).map_err(|e| e.to_string())?;
            let on_reductions = eval_connective(k, &ra, rhs_reduced).map_err(|e| e.to_string())?;
            ensure!(on_flows == on_reductions, "sample {i}: {k} on {a} {b}");
        }
    }
    Ok(())
}

fn duality() -> Check {
    let mut r = rng(6);
    let shape = suite_shape();
    for i in 0..1000 {
        let l = random::lattice(&mut r, &shape);
        let a = Action::Flow(l);
        let inv = episodic_inverse(&a);
        let (out, out_inv) = (inspect(&a), inspect(&inv));
        ensure!(
            out_inv.reduced() == out.reduced().star(),
            "sample {i}: reduction of {a}"
        );
        ensure!(out.successes == out_inv.failures, "sample {i}: S/F of {a}");
        ensure!(episodic_inverse(&inv) == a, "sample {i}: involution of {a}");
    }
    Ok(())
}

fn empty_iff() -> Check {
    let unit = EpisodeElement::Succeed(Action::FAIL);
    let empty = Action::Flow(Grid::empty());
    ensure!(inspect(&empty).element == unit, "empty lattice");
    let mut r = rng(6);
    let shape = suite_shape();
    for i in 0..1000 {
        let a = Action::Flow(random::lattice(&mut r, &shape));
        ensure!(inspect(&a).element != unit, "sample {i}: {a}");
    }
    Ok(())
}

fn eqpl_oracle() -> Check {
    let mut r = rng(8);
    let shape = Shape {
        max_rows: 3,
        max_cols: 3,
        max_depth: 2,
        flow_prob: 0.3,
        allow_empty: true,
    };
    let mut forced = 0;
    for i in 0..500 {
        let a = random::lattice(&mut r, &shape);
        let b = match i % 4 {
            0 | 1 => {
                forced += 1;
                a.clone()
            }
            2 => random::lattice_with_dims(&mut r, &shape, a.rows(), a.cols()),
            _ => random::lattice(&mut r, &shape),
        };
        let got = eqpl(&a, &b);
        let (aa, ab) = (Action::Flow(a.clone()), Action::Flow(b.clone()));
        ensure!(got.is_success() == (aa == ab), "pair {i}: {a} vs {b}");
        ensure!(
            got.is_success() == structural_eq(&aa, &ab),
            "pair {i}: structural_eq"
        );
        if a.dims() != b.dims() {
            ensure!(
                got == Episodic::Fail,
                "pair {i}: dimension mismatch gave {got}"
            );
        }
    }
    ensure!(forced == 250, "forced {forced} equal pairs");
    Ok(())
}

fn typing() -> Check {
    let mut r = rng(9);
    let small = Shape {
        max_rows: 2,
        max_cols: 2,
        max_depth: 1,
        flow_prob: 0.3,
        allow_empty: true,
    };
    let sample: Vec<Action> = (0..200).map(|_| random::action(&mut r, &small)).collect();
    let n = sample.len();
    let rel: Vec<Vec<bool>> = sample
        .iter()
        .map(|a| sample.iter().map(|b| same_type(a, b)).collect())
        .collect();
    for i in 0..n {
        ensure!(rel[i][i], "not reflexive on {}", sample[i]);
        for j in 0..n {
            ensure!(
                rel[i][j] == rel[j][i],
                "not symmetric on {} {}",
                sample[i],
                sample[j]
            );
            if !rel[i][j] {
                continue;
            }
            for (jk, ik) in rel[j].iter().zip(&rel[i]) {
                ensure!(!jk || *ik, "not transitive via {}", sample[j]);
            }
        }
    }

    let mut r = rng(10);
    let shape = suite_shape();
    for i in 0..200 {
        let l = random::lattice(&mut r, &shape);
        let a = Action::Flow(l.clone());
        ensure!(precedes(&a, &a), "flow {i} does not precede itself");
        let (m, cols) = l.dims();
        let mu = morphism_structure(&l).map_err(|e| e.to_string())?;
        let pi = partial_morphism_structure(&l).map_err(|e| e.to_string())?;
        ensure!(
            mu.dims() == (2 * m, cols),
            "flow {i}: mu is {:?}",
            mu.dims()
        );
        let want = if cols == 1 {
            (0, 0)
        } else {
            (2 * m - 1, cols - 1)
        };
        ensure!(pi.dims() == want, "flow {i}: pi is {:?}", pi.dims());
        for row in 0..pi.rows() {
            for col in 0..pi.cols() {
                ensure!(
                    pi.get(row, col) == mu.get(row, col),
                    "flow {i}: pi[{row}][{col}]"
                );
            }
        }
    }
    Ok(())
}

/// First matching clause, written out from the definition.
fn classify(a: &Action, b: &Action) -> LossDegree {
    let chi_eq = canonical_invariant(a) == canonical_invariant(b);
    if a == b {
        LossDegree::Identity
    } else if same_type(a, b) && chi_eq {
        LossDegree::GammaDot
    } else if chi_eq {
        LossDegree::GammaDdot
    } else if precedes(a, b) || precedes(b, a) {
        LossDegree::GammaDddot
    } else {
        LossDegree::Gamma
    }
}

fn entropy() -> Check {
    let action = |s: &str| {
        parse_term(s)
            .ok()
            .and_then(|t| t.to_action())
            .ok_or_else(|| format!("bad literal {s}"))
    };
    let canonical = [
        ("[w* w*]", "[w* w*]", "identity", 0),
        ("[w* w]", "[w w*]", "gamma-dot", 1),
        ("[w* w]", "[w* ; w]", "gamma-ddot", 2),
        ("[w* w*]", "[w* w* ; w w]", "gamma-dddot", 2),
        ("[w* [w]]", "w*", "gamma", 3),
    ];
    for (a, b, label, degree) in canonical {
        let d = degrees_of_loss(&action(a)?, &action(b)?);
        ensure!(
            d.label() == label && d.degree() == degree,
            "({a}, {b}) gave {d}"
        );
    }
    let mut r = rng(11);
    let shape = Shape {
        max_rows: 2,
        max_cols: 3,
        max_depth: 1,
        flow_prob: 0.3,
        allow_empty: true,
    };
    let mut seen = [false; 5];
    for i in 0..500 {
        let a = random::action(&mut r, &shape);
        let b = if r.gen_ratio(1, 5) {
            a.clone()
        } else {
            random::action(&mut r, &shape)
        };
        let d = degrees_of_loss(&a, &b);
        ensure!(d == degrees_of_loss(&b, &a), "pair {i}: not symmetric");
        ensure!(d == classify(&a, &b), "pair {i}: {d} for {a} {b}");
        ensure!(
            degrees_of_loss(&a, &a) == LossDegree::Identity,
            "pair {i}: self loss"
        );
        seen[LossDegree::ALL
            .iter()
            .position(|x| *x == d)
            .expect("listed")] = true;
    }
    ensure!(
        seen.iter().filter(|s| **s).count() >= 3,
        "random pairs hit only {seen:?}"
    );
    Ok(())
}

fn freed_references() -> Check {
    let occupant = |cells: usize| Action::Flow(Grid::row(vec![Action::SUCCEED; cells]));
    let eta = State::from_slots([Some(occupant(1)), Some(occupant(2)), Some(occupant(1))]);
    let freed = Term::Lattice(Grid::row(vec![Term::Atom(Episodic::Succeed); 3]));
    let program = Template::new(Grid::row(vec![Term::Hole, freed]));
    ensure!(
        freed_through(&eta, &program, None) == Ok(true),
        "state is not freed"
    );
    let per_index = analyze_references(&eta, &program, &[1, 2, 3]).map_err(|e| e.to_string())?;
    ensure!(
        per_index == vec![LossDegree::Gamma; 3],
        "per-index: {per_index:?}"
    );
    let literal = analyze_references_literal(&eta, &program).map_err(|e| e.to_string())?;
    ensure!(literal == per_index, "literal form: {literal:?}");
    Ok(())
}

fn dsl_round_trip() -> Check {
    let mut r = rng(12);
    let shape = Shape::default();
    for i in 0..1000 {
        let a = random::action(&mut r, &shape);
        let t = Term::from(&a);
        let text = print_canonical(&t);
        ensure!(parse_term(&text).as_ref() == Ok(&t), "action {i}: {text}");
        let p = random::template(&mut r, &shape);
        let pt = Term::from(p);
        let text = print_canonical(&pt);
        ensure!(
            parse_term(&text).as_ref() == Ok(&pt),
            "template {i}: {text}"
        );
    }
    Ok(())
}

fn cli_golden() -> Check {
    let golden = include_str!("golden/inspect_trace.txt");
    let (code, out) = epf(&["inspect", "[w* w ; w w*]", "--trace"]);
    ensure!(code == 0, "exit {code}");
    ensure!(out == golden, "output differs:\n{out}");
    Ok(())
}

fn main() -> ExitCode {
    let c = |name, bound, check| Criterion { name, bound, check };
    let ms = Duration::from_millis;
    let secs = Duration::from_secs;
    let criteria = [
        c("displayed integer lifts", ms(100), displayed_lifts),
        c("integer round trip", secs(1), integer_round_trip),
        c("arithmetic homomorphism", secs(5), homomorphism),
        c("rational round trip", secs(1), rational_round_trip),
        c("logic truth tables", secs(2), logic_tables),
        c("duality laws", secs(5), duality),
        c("empty iff unit success", secs(1), empty_iff),
        c("eqpl oracle", secs(2), eqpl_oracle),
        c("typing relations", secs(2), typing),
        c("entropy coverage", secs(2), entropy),
        c("freed references", ms(500), freed_references),
        c("dsl round trip", secs(2), dsl_round_trip),
        c("cli golden trace", ms(500), cli_golden),
    ];
    let mut failed = 0;
    for (i, Criterion { name, bound, check }) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let verdict = match result {
            Ok(()) if took <= *bound => "PASS".to_string(),
            Ok(()) => format!("FAIL took {took:.2?}, bound {bound:?}"),
            Err(e) => format!("FAIL {e}"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("[{:>2}] {verdict} {name} ({took:.2?})", i + 1);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
