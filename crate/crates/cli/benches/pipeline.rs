//! One-thread pool against the full pool on the same verification run.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use matbiorth_cli::{verification_records, Overrides, RunConfig};

const CONFIGS: &[(&str, &str)] = &[
    ("laguerre", r#"{"model": {"kind": "laguerre", "alpha": 0.5}, "n_max": 3, "checks": ["det_y", "transfer"]}"#),
    (
        "freud_noncommuting",
        r#"{"model": {"kind": "freud_ray", "a": [[1, 1], [0, 0.5]], "b": [[0, 0], [0, 0]], "c": [[-1, -0.5], [0, -1]]},
            "n_max": 2, "precision": "ext:30", "checks": ["det_y", "ode_first_order"]}"#,
    ),
];

fn pools(c: &mut Criterion) {
    let full = rayon::current_num_threads();
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    for (name, text) in CONFIGS {
        let cfg = RunConfig::parse(text, &Overrides::default()).unwrap();
        for (label, threads) in [("single", 1), ("full", full)] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            g.bench_with_input(BenchmarkId::new(*name, format!("{label} ({threads})")), &cfg, |b, cfg| {
                b.iter(|| pool.install(|| verification_records(cfg).unwrap()))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, pools);
criterion_main!(benches);
