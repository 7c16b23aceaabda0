use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use viforge_bench::case;
use viforge_core::problems::DEFAULT_TRUNC_DIM;
use viforge_core::solvers::{momentum_step, MomentumState};
use viforge_core::{run_solver, Algorithm, ProblemId, SolverConfig};

fn single_step(c: &mut Criterion) {
    let cfg = SolverConfig::defaults_for(Algorithm::Momentum);
    let mut g = c.benchmark_group("momentum_step");
    for (label, id) in [("exm2", ProblemId::Exm2), ("exm3_m500", ProblemId::Exm3 { m: 500 })] {
        let pc = case(id, 1);
        let s0 = MomentumState::new(
            &pc.problem,
            pc.v0.clone(),
            pc.v1.clone(),
            pc.v1.clone(),
            cfg.lambda0,
            cfg.lambda1,
        )
        .unwrap();
        g.bench_function(label, |b| {
            b.iter(|| momentum_step(&pc.problem, black_box(&s0), cfg.theta, cfg.sigma, cfg.gamma_seq.term(1)).unwrap())
        });
    }
    g.finish();
}

fn full_runs(c: &mut Criterion) {
    let mut g = c.benchmark_group("full_run");
    let problems = [
        ("exm1", ProblemId::Exm1),
        ("exm2", ProblemId::Exm2),
        ("exm4", ProblemId::Exm4 { n: DEFAULT_TRUNC_DIM }),
    ];
    for (label, id) in problems {
        let pc = case(id, 1);
        for alg in [Algorithm::Momentum, Algorithm::SimpleProjection] {
            let cfg = SolverConfig::defaults_for(alg);
            g.bench_with_input(BenchmarkId::new(label, alg), &pc, |b, pc| {
                b.iter(|| run_solver(&pc.problem, &cfg, (pc.v0.clone(), pc.v1.clone()), 0).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, single_step, full_runs);
criterion_main!(benches);
