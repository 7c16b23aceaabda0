//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::time::Instant;

use common::{check_axioms, directional_fd, gaussian, half_disk_by_search, l1_by_bisection, set_kinds, SAMPLES};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use viforge_core::linalg::{dist, norm};
use viforge_core::problems::{DEFAULT_TRUNC_DIM, EXM3_SIZES};
use viforge_core::projections::{project_half_disk, project_l1_ball};
use viforge_core::signal::{generate_instance, lasso_vi, run_recovery, MAX_RECOVERY_ITERS, MSE_TARGET};
use viforge_core::solvers::{momentum_anchor, momentum_step, simple_projection_point, MomentumState};
use viforge_core::{make_case, run_solver, Algorithm, ProblemCase, ProblemId, RunResult, SolverConfig};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: Vec<String>, summary: String) -> Self {
        if failures.is_empty() {
            Outcome {
                pass: true,
                detail: summary,
            }
        } else {
            Outcome {
                pass: false,
                detail: format!("{summary}; failures: {}", failures.join("; ")),
            }
        }
    }
}

fn run_case(case: &ProblemCase, alg: Algorithm) -> (RunResult, f64) {
    let t = Instant::now();
    let r = run_solver(
        &case.problem,
        &SolverConfig::defaults_for(alg),
        (case.v0.clone(), case.v1.clone()),
        0,
    )
    .expect("run completes");
    (r, t.elapsed().as_secs_f64())
}

fn within_factor(got: usize, reference: usize, factor: f64) -> bool {
    let (g, r) = (got as f64, reference as f64);
    g <= factor * r && g >= r / factor
}

/// Shared check for the deterministic tables: convergence, distance to the
/// known solutions, iteration factor, optional runtime bound.
fn table_criterion(id: ProblemId, reference: [usize; 4], time_limit: Option<f64>, compare_simple: bool) -> Outcome {
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for (i, &want) in reference.iter().enumerate() {
        let c = i as u32 + 1;
        let case = make_case(id, c, 0).expect("case");
        let (r, secs) = run_case(&case, Algorithm::Momentum);
        counts.push(r.iterations.to_string());
        if !r.converged {
            failures.push(format!("case {c} did not converge"));
        }
        if let Some(d) = case.problem.dist_to_solutions(r.final_point.view()) {
            if d > 1e-3 {
                failures.push(format!("case {c} ends {d:.2e} from the solution set"));
            }
        }
        if !within_factor(r.iterations, want, 3.0) {
            failures.push(format!("case {c}: {} iterations vs reference {want}", r.iterations));
        }
        if let Some(limit) = time_limit {
            if secs >= limit {
                failures.push(format!("case {c} took {secs:.3}s"));
            }
        }
        if compare_simple {
            let (s, _) = run_case(&case, Algorithm::SimpleProjection);
            if r.iterations >= s.iterations {
                failures.push(format!(
                    "case {c}: momentum {} >= simple projection {}",
                    r.iterations, s.iterations
                ));
            }
        }
    }
    Outcome::new(
        failures,
        format!("momentum iterations [{}] vs reference {reference:?}", counts.join(", ")),
    )
}

fn criterion_1() -> Outcome {
    table_criterion(ProblemId::Exm1, [5, 19, 5, 5], Some(1.0), false)
}

fn criterion_2() -> Outcome {
    table_criterion(ProblemId::Exm2, [3, 7, 3, 5], None, true)
}

fn criterion_3() -> Outcome {
    table_criterion(
        ProblemId::Exm4 { n: DEFAULT_TRUNC_DIM },
        [8, 8, 8, 10],
        Some(2.0),
        false,
    )
}

fn criterion_4() -> Outcome {
    let (mut slow, mut not_faster) = (Vec::new(), Vec::new());
    let mut worst = 0;
    for m in EXM3_SIZES {
        for seed in 0..5 {
            let case = make_case(ProblemId::Exm3 { m }, 1, seed).expect("case");
            let (r, _) = run_case(&case, Algorithm::Momentum);
            let (s, _) = run_case(&case, Algorithm::SimpleProjection);
            worst = worst.max(r.iterations);
            if !r.converged || r.iterations > 50 {
                slow.push(format!("m={m}/s{seed}:{}", r.iterations));
            }
            if r.iterations >= s.iterations {
                not_faster.push(format!("m={m}/s{seed}:{}>={}", r.iterations, s.iterations));
            }
        }
    }
    let mut failures = Vec::new();
    if !slow.is_empty() {
        failures.push(format!("over 50 iterations or not converged [{}]", slow.join(" ")));
    }
    if !not_faster.is_empty() {
        failures.push(format!("not faster than simple projection [{}]", not_faster.join(" ")));
    }
    Outcome::new(failures, format!("max momentum iterations {worst} (limit 50)"))
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let inst = generate_instance(1024, 512, 60, 60.0, 1e-3, 7).expect("instance");
    let t = Instant::now();
    let r = run_recovery(&inst, &SolverConfig::defaults_for(Algorithm::Momentum)).expect("recovery runs");
    let secs = t.elapsed().as_secs_f64();
    let mse = r.final_mse();
    if mse.is_nan() || mse >= MSE_TARGET || r.run.iterations > MAX_RECOVERY_ITERS {
        failures.push(format!("MSE {mse:.3e} after {} iterations", r.run.iterations));
    }
    let l1: f64 = r.run.final_point.iter().map(|v| v.abs()).sum();
    if l1 > inst.l + 1e-9 {
        failures.push(format!("final l1 norm {l1} exceeds {}", inst.l));
    }
    if secs >= 30.0 {
        failures.push(format!("took {secs:.2}s"));
    }
    Outcome::new(
        failures,
        format!("MSE {mse:.3e} after {} iterations in {secs:.2}s", r.run.iterations),
    )
}

fn projection_checks(failures: &mut Vec<String>) {
    for (name, set) in set_kinds() {
        if let Err(e) = check_axioms(&set, SAMPLES, 17) {
            failures.push(format!("projection axioms on {name}: {e}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for i in 0..100 {
        let x = gaussian(&mut rng, 10, 2.0);
        if dist(
            project_l1_ball(x.view(), 1.5).view(),
            l1_by_bisection(x.view(), 1.5).view(),
        ) > 1e-6
        {
            failures.push(format!("l1 oracle mismatch on instance {i}"));
        }
        let y = gaussian(&mut rng, 2, 1.5);
        if dist(project_half_disk(y.view()).view(), half_disk_by_search(y.view()).view()) > 1e-6 {
            failures.push(format!("half-disk oracle mismatch on instance {i}"));
        }
    }
}

fn step_size_checks(failures: &mut Vec<String>) {
    let cfg = SolverConfig::defaults_for(Algorithm::Momentum);
    let mut cases = Vec::new();
    for id in [
        ProblemId::Exm1,
        ProblemId::Exm2,
        ProblemId::Exm4 { n: DEFAULT_TRUNC_DIM },
    ] {
        for c in 1..=4 {
            cases.push(make_case(id, c, 0).expect("case"));
        }
    }
    for m in EXM3_SIZES {
        cases.push(make_case(ProblemId::Exm3 { m }, 1, 0).expect("case"));
    }
    let mut late = Vec::new();
    for case in &cases {
        let (r, _) = run_case(case, Algorithm::Momentum);
        let l = case.problem.lipschitz().expect("known L");
        let floor = cfg.lambda1.min(cfg.sigma / l);
        if let Some(rec) = r.trace.iter().find(|rec| rec.lambda < floor - 1e-12) {
            failures.push(format!(
                "{} case {}: step {} below floor {floor}",
                case.problem.name(),
                case.case_id,
                rec.k
            ));
        }
        if r.converged && r.iterations >= 40 {
            let n = r.trace[r.iterations / 2..].iter().filter(|rec| rec.step_shrunk).count();
            if n > 0 {
                late.push(format!("{}#{}:{n}", case.id, case.case_id));
            }
        }
    }
    if !late.is_empty() {
        failures.push(format!("shrinking branch active in final half [{}]", late.join(" ")));
    }
}

fn reduction_checks(failures: &mut Vec<String>) {
    let cfg = SolverConfig::defaults_for(Algorithm::Momentum);
    let cases = [
        make_case(ProblemId::Exm1, 3, 0).expect("case"),
        make_case(ProblemId::Exm2, 1, 0).expect("case"),
        make_case(ProblemId::Exm3 { m: 80 }, 1, 2).expect("case"),
    ];
    for case in &cases {
        let p = &case.problem;
        let mut s = MomentumState::new(
            p,
            case.v0.clone(),
            case.v1.clone(),
            case.v1.clone(),
            cfg.lambda0,
            cfg.lambda1,
        )
        .expect("state");
        for step in 0..50 {
            if momentum_anchor(s.v_k.view(), s.u_k.view(), 0.0) != s.v_k {
                failures.push(format!("{}: w_k != v_k at step {step}", p.name()));
                break;
            }
            let want = simple_projection_point(
                p,
                s.v_k.view(),
                s.av_k.view(),
                s.av_km1.view(),
                s.lambda_k,
                s.lambda_km1,
            );
            s = momentum_step(p, &s, 0.0, cfg.sigma, cfg.gamma_seq.term(s.k)).expect("step");
            if dist(s.v_k.view(), want.view()) > 1e-14 {
                failures.push(format!("{}: theta=0 differs at step {step}", p.name()));
                break;
            }
        }
    }
}

fn lyapunov_checks(failures: &mut Vec<String>) {
    let mut cfg = SolverConfig::defaults_for(Algorithm::Momentum);
    cfg.eps = 1e-300;
    cfg.max_iter = 200;
    for c in 1..=4 {
        let case = make_case(ProblemId::Exm1, c, 0).expect("case");
        let r = run_solver(&case.problem, &cfg, (case.v0.clone(), case.v1.clone()), 0).expect("run");
        let a: Vec<f64> = r.trace.iter().filter_map(|rec| rec.lyapunov).collect();
        if a.len() != r.trace.len() {
            failures.push(format!("exm1 case {c}: Lyapunov values missing"));
            continue;
        }
        let last = (1..a.len()).filter(|&k| a[k] > a[k - 1] + 1e-10).max().unwrap_or(0);
        if last > 50 {
            failures.push(format!("exm1 case {c}: a_k increases at {last}"));
        }
    }
}

fn lasso_checks(failures: &mut Vec<String>) {
    let inst = generate_instance(1024, 512, 60, 60.0, 1e-3, 7).expect("instance");
    let vi = lasso_vi(&inst).expect("problem");
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for point in 0..20 {
        let p = gaussian(&mut rng, inst.n, 0.1);
        let d = gaussian(&mut rng, inst.n, 1.0);
        let g = vi.apply(p.view());
        let rel = (g.dot(&d) - directional_fd(&inst, &p, &d, 1e-4)).abs() / (norm(g.view()) * norm(d.view()));
        if rel > 1e-6 {
            failures.push(format!("lasso gradient point {point}: relative error {rel:.2e}"));
        }
    }
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let mut failures = Vec::new();
    projection_checks(&mut failures);
    step_size_checks(&mut failures);
    reduction_checks(&mut failures);
    lyapunov_checks(&mut failures);
    lasso_checks(&mut failures);
    let secs = t.elapsed().as_secs_f64();
    if secs >= 60.0 {
        failures.push(format!("took {secs:.1}s"));
    }
    Outcome::new(failures, format!("property suite in {secs:.2}s"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 6] = [
        ("1 exm1 table", criterion_1),
        ("2 exm2 table", criterion_2),
        ("3 exm4 table", criterion_3),
        ("4 exm3 sweep", criterion_4),
        ("5 signal recovery", criterion_5),
        ("6 property suite", criterion_6),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {name}: {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
