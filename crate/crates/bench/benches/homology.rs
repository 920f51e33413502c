use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use loctwist::app::ModuleFixture;
use loctwist::dgalg::Bar;
use loctwist::dgmod::{colimit_complex, BarModule, HomComplex, Window};
use loctwist::lambda::Lambda;
use loctwist::simplicial::delta;
use loctwist::Field;
use loctwist_bench::{module, with_cobar};

fn cobar_homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("cobar_homology");
    for field in [Field::Rational, Field::prime(5).unwrap()] {
        let (_, om) = with_cobar("sphere_min2", field);
        group.bench_with_input(BenchmarkId::new("sphere_min2", field), &om, |b, om| {
            b.iter(|| om.complex(6, 8).unwrap().homology_ranks(0, 6).unwrap())
        });
    }
    group.finish();
}

fn bar_homology(c: &mut Criterion) {
    let (_, om) = with_cobar("sphere_min2", Field::Rational);
    let bar = Bar::new(om);
    c.bench_function("bar_homology/sphere_min2", |b| {
        b.iter(|| bar.complex(4, 12).unwrap().homology_ranks(0, 4).unwrap())
    });
}

fn colimits(c: &mut Criterion) {
    let w = Window {
        max_degree: 6,
        max_weight: 8,
    };
    let mut group = c.benchmark_group("colimit");
    for (set, m) in [("sphere_min2", ModuleFixture::Hopf), ("circle", ModuleFixture::Monodromy(2))] {
        let (k, module) = module(set, m.clone(), Field::Rational);
        group.bench_function(format!("{set}/{}", m.name()), |b| {
            b.iter(|| colimit_complex(&k, &module, w).unwrap())
        });
    }
    group.finish();
}

fn hom_complex(c: &mut Criterion) {
    let w = Window {
        max_degree: 4,
        max_weight: 8,
    };
    let (_, triv) = module("pinched", ModuleFixture::Trivial, Field::Rational);
    c.bench_function("hom_infty/pinched/trivial", |b| {
        b.iter(|| {
            HomComplex::new(BarModule::new(triv.clone(), w), triv.clone())
                .unwrap()
                .complex()
                .unwrap()
        })
    });
}

fn necklaces(c: &mut Criterion) {
    let mut group = c.benchmark_group("necklace_hom");
    for n in 2..=4usize {
        let lam = Lambda::new(Arc::new(delta(n).unwrap()), Field::Rational);
        group.bench_with_input(BenchmarkId::from_parameter(n), &lam, |b, lam| {
            b.iter(|| lam.hom(0, n, n, 8).unwrap().complex.homology_ranks(0, n as i64 - 1).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, cobar_homology, bar_homology, colimits, hom_complex, necklaces);
criterion_main!(benches);
