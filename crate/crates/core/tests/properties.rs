use proptest::prelude::*;

use heffter::{assemble_p, verify_full, Block, BlockSequence, Contract, Mode, Parameters, Shift};

/// A fully filled `2 x 2w` block whose column pairs sum to `(sigma_i, -sigma_i)`.
fn paired_block(sigma: &[i64], top: &[i64]) -> Option<Block> {
    let mut r1 = Vec::new();
    let mut r2 = Vec::new();
    for (i, &s) in sigma.iter().enumerate() {
        let (a, b) = (top[2 * i], top[2 * i + 1]);
        r1.extend([a, b]);
        r2.extend([s - a, -s - b]);
    }
    if r1.iter().chain(&r2).any(|v| *v == 0) {
        return None;
    }
    Block::dense("p", &[&r1, &r2]).ok()
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![1i64..500, -500i64..0]
}

proptest! {
    #[test]
    fn p_arrangement_zeroes_columns(
        w in 1usize..4,
        extra in 0usize..4,
        seed in prop::collection::vec(nonzero(), 64),
        tops in prop::collection::vec(prop::collection::vec(-500i64..500, 8), 8),
    ) {
        let d = w * 2 + extra;
        let sigma = &seed[..w];
        let blocks: Option<Vec<Block>> = tops.iter().cycle().take(d).enumerate()
            .map(|(i, t)| {
                let top: Vec<i64> = t.iter().map(|v| v + 1000 * i as i64).collect();
                paired_block(sigma, &top)
            })
            .collect();
        prop_assume!(blocks.is_some());
        let blocks = blocks.unwrap();
        let seq = BlockSequence::new(blocks.clone(), Contract::PairedColumns, vec![]).unwrap();
        let p = assemble_p(&seq).unwrap();
        prop_assert!(p.col_sums().iter().all(|c| *c == 0));
        let rs = p.row_sums();
        for (i, b) in blocks.iter().enumerate() {
            prop_assert_eq!(rs[i], b.row_sums()[0]);
            prop_assert_eq!(rs[d + i], b.row_sums()[1]);
        }
    }

    #[test]
    fn shifting_a_shiftable_block_keeps_sums(
        mags in prop::collection::vec((1i64..300, 1i64..300, 1i64..300, 1i64..300), 1..6),
        x in 0u64..1000,
    ) {
        // 2 x 2 tiles [[a, -b], [-c, d]] have one sign of each kind per line
        let r1: Vec<i64> = mags.iter().flat_map(|(a, b, _, _)| [*a, -*b]).collect();
        let r2: Vec<i64> = mags.iter().flat_map(|(_, _, c, d)| [-*c, *d]).collect();
        let b = Block::dense("s", &[&r1, &r2]).unwrap();
        prop_assert!(b.is_shiftable());
        let moved = b.shifted(x);
        prop_assert_eq!(moved.row_sums(), b.row_sums());
        prop_assert_eq!(moved.col_sums(), b.col_sums());
    }

    #[test]
    fn integer_pass_implies_simple_pass(
        idx in 0usize..6,
        flips in prop::collection::vec((0usize..64, any::<bool>()), 0..3),
    ) {
        let tuples = [(4, 4, 4, 4, 8), (4, 4, 4, 4, 1), (6, 12, 8, 4, 24), (5, 10, 8, 4, 5), (8, 8, 6, 6, 4), (12, 6, 4, 8, 6)];
        let (m, n, s, k, t) = tuples[idx];
        let p = Parameters::derive(m, n, s, k, t).unwrap();
        let mut a = heffter::construct(&p).unwrap().array;
        let cells: Vec<_> = a.entries().collect();
        for (i, neg) in flips {
            let (r, c, v) = cells[i % cells.len()];
            a.set(r, c, Some(if neg { -v } else { v + 1 }));
        }
        if verify_full(&a, &p, Mode::Integer).overall {
            prop_assert!(verify_full(&a, &p, Mode::Simple).overall);
        }
    }
}
