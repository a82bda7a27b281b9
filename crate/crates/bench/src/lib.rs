//! Shared fixtures for the criterion benchmarks.

use tightknot::{make_tight_hopf, make_torus_link, Link, Point};

pub fn hopf() -> Link {
    make_tight_hopf(1.0, tightknot::curves::DEFAULT_VERTICES).expect("valid hopf")
}

pub fn trefoil() -> Link {
    make_torus_link(2, 3, 2.0, 1.0, 0.1, 1024).expect("valid trefoil")
}

/// Deterministic query points scattered over the box `[-4, 4]^3`.
pub fn query_points(n: usize) -> Vec<Point> {
    let mut state = 0x9e37_79b9_7f4a_7c15_u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 * 8.0 - 4.0
    };
    (0..n).map(|_| Point::new(next(), next(), next())).collect()
}
