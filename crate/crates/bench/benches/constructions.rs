use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use ultrahom::centralizer::centralizer_elements;
use ultrahom::config::Config;
use ultrahom::finite_group::FiniteGroup;
use ultrahom::homomorphism::GroupHomomorphism;
use ultrahom::perm::Permutation;
use ultrahom::perm_group::PermGroup;
use ultrahom::theoremlab;
use ultrahom::tower::Tower;
use ultrahom::witness::hall_witness;

fn bench_stabilizer_chain(c: &mut Criterion) {
    c.bench_function("stabilizer_chain/S8", |b| {
        let gens = PermGroup::symmetric(8).generators().to_vec();
        b.iter(|| PermGroup::from_generators(8, gens.clone()).unwrap())
    });
    c.bench_function("stabilizer_chain/regular_S4", |b| {
        let s4 = FiniteGroup::symmetric(4);
        let gens: Vec<Permutation> = vec![s4.regular_image(1), s4.regular_image(2)];
        b.iter(|| PermGroup::from_generators(24, gens.clone()).unwrap())
    });
}

fn bench_hall_witness(c: &mut Criterion) {
    let (s4, p) = ultrahom_bench::s4_swap();
    c.bench_function("hall_witness/S4_transposition_swap", |b| {
        b.iter(|| hall_witness(&s4, &p).unwrap())
    });
}

fn bench_amalgam(c: &mut Criterion) {
    let z2 = FiniteGroup::cyclic(2);
    let s3 = FiniteGroup::symmetric(3);
    let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
    let i = GroupHomomorphism::new(&z2, &s3, vec![0, t]).unwrap();
    c.bench_function("permutational_product/S3_S3_over_Z2", |b| {
        b.iter(|| {
            ultrahom::amalgam::permutational_product(&z2, &s3, &s3, &i, &i, 10_000, 100_000)
                .unwrap()
        })
    });
}

fn bench_centralizer(c: &mut Criterion) {
    let s6 = PermGroup::symmetric(6);
    let target = Permutation::from_cycles(6, &[vec![0, 1, 2], vec![3, 4]]).unwrap();
    c.bench_function("centralizer_backtrack/S6", |b| {
        b.iter(|| centralizer_elements(&s6, &[target.clone()], 10_000).unwrap())
    });
}

fn bench_tower_witness(c: &mut Criterion) {
    let tower = Tower::build(2, &Config::default()).unwrap();
    let a = Permutation::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap();
    let b_el = Permutation::from_cycles(6, &[vec![0, 1, 2], vec![3, 4]]).unwrap();
    c.bench_function("conjugacy_witness_same_order/level1", |bch| {
        bch.iter(|| tower.conjugacy_witness_same_order(1, &a, &b_el).unwrap())
    });
    c.bench_function("nth_root/level0_k4", |bch| {
        let g = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        bch.iter(|| tower.nth_root(0, &g, 4).unwrap())
    });
}

fn bench_pattern_realizer(c: &mut Criterion) {
    c.bench_function("commuting_pattern/3x3", |b| {
        let matrix = vec![
            vec![true, false, true],
            vec![false, true, false],
            vec![true, true, false],
        ];
        b.iter_batched(
            || matrix.clone(),
            |m| theoremlab::commuting_pattern_realizer(&m).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_stabilizer_chain,
    bench_hall_witness,
    bench_amalgam,
    bench_centralizer,
    bench_tower_witness,
    bench_pattern_realizer
);
criterion_main!(benches);
