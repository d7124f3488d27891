//! Doubling the fingerprint horizon from 512 to 1024 must not change which
//! kernel elements of depth at most 8 are identified.

use std::collections::HashMap;

use autseq::catalog::{prefix_i64, SequenceName};

const DEPTH: u32 = 8;

/// For every `(i, r)` with `i <= DEPTH`, the index of the first `(i', r')` in
/// breadth-first order with the same fingerprint of length `h`.
fn merge_partition(values: &[i64], h: usize) -> Vec<usize> {
    let mut first: HashMap<&[i64], usize> = HashMap::new();
    let mut prints: Vec<Vec<i64>> = Vec::new();
    for i in 0..=DEPTH {
        let step = 1usize << i;
        for r in 0..step {
            prints.push((0..h).map(|n| values[step * n + r]).collect());
        }
    }
    prints
        .iter()
        .enumerate()
        .map(|(idx, p)| *first.entry(p.as_slice()).or_insert(idx))
        .collect()
}

fn assert_stable(name: SequenceName) {
    let values = prefix_i64(name, (1 << DEPTH) * 1024).unwrap();
    let (small, large) = (
        merge_partition(&values, 512),
        merge_partition(&values, 1024),
    );
    if let Some(idx) = small.iter().zip(&large).position(|(a, b)| a != b) {
        // breadth-first position idx holds (i, r) with idx + 1 = 2^i + r
        let scale = (idx + 1).ilog2();
        let residue = idx + 1 - (1 << scale);
        panic!("{name}: merge of (i={scale}, r={residue}) differs between H=512 and H=1024");
    }
}

macro_rules! stability_tests {
    ($($test:ident => $name:expr),* $(,)?) => {
        $(
            #[test]
            fn $test() {
                assert_stable($name);
            }
        )*
    };
}

stability_tests! {
    stable_d => SequenceName::D,
    stable_t => SequenceName::T,
    stable_tp3 => SequenceName::Tp(3),
    stable_p => SequenceName::P,
    stable_u => SequenceName::U,
    stable_o => SequenceName::O,
    stable_z => SequenceName::Z,
    stable_a => SequenceName::A,
    stable_b => SequenceName::B,
    stable_delta => SequenceName::Delta,
    stable_x => SequenceName::X,
}
