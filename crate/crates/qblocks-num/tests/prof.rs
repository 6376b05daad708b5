use std::time::Instant;
use qblocks_core::blocks::{block_at, Regime};
use qblocks_core::KnotId;

#[test]
fn prof_blocks() {
    for n in [10i64, 20, 30] {
        let t0 = Instant::now();
        let deg_h0 = qblocks_core::blocks::block_degree(KnotId::FourOne, 0, n, Regime::Q);
        let h0 = block_at(KnotId::FourOne, 0, n, Regime::Q, 60 + deg_h0.abs() + 2).unwrap();
        let t1 = t0.elapsed();
        let t0b = Instant::now();
        let deg_h1 = qblocks_core::blocks::block_degree(KnotId::FourOne, 1, n, Regime::Q);
        let h1 = block_at(KnotId::FourOne, 1, n, Regime::QInverse, 60 - deg_h0 + 2).unwrap();
        println!("n={n}: h0 {:?} ({} terms, deg {deg_h0}), h1 {:?} ({} terms, deg {deg_h1})", t1, h0.num_terms(), t0b.elapsed(), h1.num_terms());
    }
}
