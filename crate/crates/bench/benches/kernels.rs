use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use lcslab_bench::{algebra, one_form, skew};
use lcslab_core::cohomology::cohomology;
use lcslab_core::exactmath::{det, pfaffian, PiScalar};
use lcslab_core::lattice::{check_family_lattices, LatticeFamily};
use lcslab_core::lcs::{contact_search, lcs_search, SearchBudget};

fn linear_algebra(c: &mut Criterion) {
    for n in [4, 6, 8] {
        let m = skew(n);
        c.bench_function(&format!("pfaffian {n}x{n}"), |b| {
            b.iter(|| pfaffian(black_box(&m)).unwrap())
        });
        c.bench_function(&format!("det {n}x{n}"), |b| {
            b.iter(|| det(black_box(&m)).unwrap())
        });
    }
}

fn cohomology_kernels(c: &mut Criterion) {
    for (name, theta) in [("r3p0xR", "e4"), ("ex6", "e5"), ("kf6", "0")] {
        let g = algebra(name);
        let t = one_form(&g, theta);
        c.bench_function(&format!("cohomology {name} theta={theta}"), |b| {
            b.iter(|| cohomology(black_box(&g), black_box(&t)).unwrap())
        });
    }
}

fn searches(c: &mut Criterion) {
    let budget = SearchBudget::default();
    for (name, theta) in [("d4p_0", "e4"), ("ex6", "e5"), ("g1", "e0")] {
        let g = algebra(name);
        let t = one_form(&g, theta);
        c.bench_function(&format!("lcs_search {name}"), |b| {
            b.iter(|| lcs_search(black_box(&g), black_box(&t), 0, &budget).unwrap())
        });
    }
    for name in ["h5", "n1", "n2", "h"] {
        let g = algebra(name);
        c.bench_function(&format!("contact_search {name}"), |b| {
            b.iter(|| contact_search(black_box(&g), 0, &budget).unwrap())
        });
    }
}

fn lattices(c: &mut Criterion) {
    let t0 = PiScalar::parse("pi/2").unwrap();
    c.bench_function("lattice g1 k=2", |b| {
        b.iter(|| check_family_lattices(LatticeFamily::G1, 2, Some(&t0), 0).unwrap())
    });
    c.bench_function("lattice g2 k=2", |b| {
        b.iter(|| check_family_lattices(LatticeFamily::G2, 2, None, 0).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = linear_algebra, cohomology_kernels, searches, lattices
}
criterion_main!(benches);
