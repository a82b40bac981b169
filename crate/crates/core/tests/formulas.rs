use ringgroom::formulas::*;

fn b2(n: u32) -> i64 {
    (n as i64) * (n as i64 - 1) / 2
}

/// `L(v,w)` as an exact fraction `(num, den)`, recomputed from its defining
/// three branches.
fn l_frac(v: u32, w: u32) -> (i64, i64) {
    let (v, w) = (v as i64, w as i64);
    if v % 2 == 0 {
        (v * (v + 3) - 6 * v * w, 6)
    } else if v % 6 == 5 {
        (v * (v - 1) - 6 * v * w + 16, 6)
    } else {
        (v * (v - 1) - 6 * v * w, 6)
    }
}

/// Smallest nonnegative integer at least `L` and congruent to `3·C(n,2)` mod 4,
/// found by counting upward.
fn delta_min_scan(v: u32, w: u32) -> u64 {
    let (num, den) = l_frac(v, w);
    let target = (3 * b2(v + w)).rem_euclid(4);
    (0i64..).find(|&x| x * den >= num && x % 4 == target).unwrap() as u64
}

#[test]
fn ratio_four_baseline() {
    assert_eq!(cost_on_n4(4).unwrap(), 7);
    assert_eq!(cost_on_n4(5).unwrap(), 10);
    assert_eq!(cost_on_n4(9).unwrap(), 36);
    assert_eq!(cost_on_n4(2).unwrap(), 2);
    assert_eq!(cost_on_n4(3).unwrap(), 3);
    assert!(cost_on_n4(1).is_err());
}

#[test]
fn mon_profile_examples() {
    assert_eq!(mon_n4_profile(8).unwrap(), MonProfile { wavecost: 7, triangles: 0 });
    assert_eq!(mon_n4_profile(7).unwrap(), MonProfile { wavecost: 6, triangles: 3 });
    assert_eq!(mon_n4_profile(6).unwrap(), MonProfile { wavecost: 4, triangles: 1 });
    assert_eq!(mon_n4_profile(4).unwrap().wavecost, 2);
    assert!(mon_n4_profile(3).is_err());
}

#[test]
fn mon_triangles_match_edge_count_residue() {
    for n in 5..200u32 {
        let t = mon_n4_triangles(n) as i64;
        assert_eq!(t, (3 * b2(n)).rem_euclid(4), "n = {n}");
        let p = mon_n4_profile(n).unwrap();
        // t triangles plus blocks of four edges use exactly the wavecost.
        assert_eq!((b2(n) + t) % 4, 0);
        assert_eq!(p.wavecost as i64, (b2(n) + t) / 4);
    }
}

#[test]
fn two_period_examples() {
    assert_eq!(cost_two_period(7, 4, 1).unwrap(), 21);
    assert_eq!(cost_two_period(7, 4, 2).unwrap(), 21);
    assert_eq!(cost_two_period(7, 5, 2).unwrap(), 22);
    assert_eq!(cost_two_period(7, 5, 1).unwrap(), 26);
    // v even, v > 2w, w = 4: 91 + ⌈45/2⌉ - 20 + 1.
    assert_eq!(cost_two_period(14, 10, 2).unwrap(), 95);
    assert!(cost_two_period(4, 2, 1).is_err());
    assert!(cost_two_period(7, 7, 3).is_err());
}

#[test]
fn degenerate_full_subset() {
    for n in 5..30u32 {
        let b = b2(n) as u64;
        assert_eq!(cost_two_period(n, n, 1).unwrap(), 2 * b);
        assert_eq!(cost_two_period(n, n, 2).unwrap(), b + b.div_ceil(2));
        assert_eq!(wavecost_mon(n, n, 1).unwrap(), b);
        assert_eq!(wavecost_mon(n, n, 2).unwrap(), b.div_ceil(2));
    }
}

#[test]
fn delta_predicates() {
    assert_eq!(delta_even(12, 4), 1);
    assert_eq!(delta_even(10, 4), 1);
    assert_eq!(delta_even(12, 2), 1);
    assert_eq!(delta_even(10, 2), 0);
    assert_eq!(delta_even(12, 6), 0);
    assert_eq!(delta_even_transposed(10, 2), 1);
    assert_eq!(delta_even_transposed(10, 4), 0);
    assert_eq!(delta_odd(11, 3), 1);
    assert_eq!(delta_odd(9, 3), 0);
    assert_eq!(delta_odd(11, 5), 0);
}

#[test]
fn cost_chain_is_monotone() {
    for n in 5..=60u32 {
        let base = cost_on_n4(n).unwrap();
        for v in 0..n {
            let c1 = cost_two_period(n, v, 1).unwrap();
            let c2 = cost_two_period(n, v, 2).unwrap();
            let c3 = cost_two_period(n, v, 3).unwrap();
            assert!(c1 >= c2 && c2 >= c3 && c3 >= base, "n={n} v={v}: {c1} {c2} {c3}");
            assert_eq!(c3, base);
            if v <= n - v + 1 {
                assert_eq!(c1, base);
            }
            if v <= 2 * (n - v) {
                assert_eq!(c2, base);
            }
        }
    }
}

#[test]
fn positive_edge_counting_matches_ratio_one_cost() {
    // Every block holds at most one edge on V, so the excess is the number of
    // edges on V beyond the neutral bound.
    for n in 5..=40u32 {
        for v in 0..n {
            let w = n - v;
            let positive = (b2(v) - neutral_edge_bound(v, w, 1).unwrap() as i64).max(0);
            assert_eq!(cost_two_period(n, v, 1).unwrap() as i64, b2(n) + positive);
        }
    }
}

#[test]
fn neutral_bounds() {
    assert_eq!(neutral_edge_bound(5, 2, 1).unwrap(), 5);
    assert_eq!(neutral_edge_bound(5, 2, 2).unwrap(), 9);
    assert_eq!(neutral_edge_bound(0, 3, 1).unwrap(), 0);
    assert_eq!(neutral_edge_bound(6, 3, 2).unwrap(), 18);
    assert_eq!(neutral_edge_bound(7, 3, 2).unwrap(), 19);
    assert!(neutral_edge_bound(5, 2, 3).is_err());
}

#[test]
fn triangle_bound_examples() {
    assert_eq!(triangle_lower_bound(11, 2).delta_min, 2);
    assert_eq!(triangle_lower_bound(7, 2).delta_min, 0);
    assert_eq!(triangle_lower_bound(13, 1).delta_min, 13);
    assert_eq!(triangle_lower_bound(5, 1).delta_min, 1);
    assert_eq!(triangle_lower_bound(4, 1).delta_min, 2);
    assert_eq!(triangle_lower_bound(5, 2).delta_min, 3);
    assert_eq!(triangle_lower_bound(6, 1).delta_min, 3);
    let b = triangle_lower_bound(7, 2);
    assert_eq!(b.l_num, -42);
    assert_eq!(b.residue, 0);
}

#[test]
fn triangle_bound_agrees_with_scan() {
    for v in 0..=60u32 {
        for w in 1..=40u32 {
            if v + w < 5 {
                continue;
            }
            let b = triangle_lower_bound(v, w);
            assert_eq!(b.delta_min, delta_min_scan(v, w), "v={v} w={w}");
            assert_eq!(b.delta_min % 4, b.residue);
            let (num, den) = l_frac(v, w);
            assert_eq!(b.l_num * den, num * 6);
            let lc = num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0);
            assert_eq!(b.slack_ceiling as i64, (lc + 3).max(3));
            assert!(b.delta_min as i64 >= lc.max(0));
            assert!(b.delta_min <= b.slack_ceiling);
        }
    }
}

#[test]
fn small_triangle_bound_when_w_is_large() {
    for v in 1..=60u32 {
        for w in 1..=40u32 {
            if v + w < 5 {
                continue;
            }
            // L(v,w) <= 0 once w >= (v-1)/6 for odd v and w >= (v+3)/6 for even v.
            let big = if v % 2 == 1 { 6 * w + 1 >= v } else { 6 * w >= v + 3 };
            if big {
                assert!(triangle_lower_bound(v, w).delta_min <= 3, "v={v} w={w}");
            }
        }
    }
}

#[test]
fn even_threshold_cannot_be_lowered_to_v_minus_four() {
    // w = ⌈(v-4)/6⌉ = 1 at v = 8 still leaves L(8,1) = 20/3.
    let b = triangle_lower_bound(8, 1);
    assert_eq!(b.l_num, 40);
    assert_eq!(b.delta_min, 8);
}

#[test]
fn wavecost_examples() {
    assert_eq!(wavecost_mon(7, 5, 1).unwrap(), 10);
    assert_eq!(wavecost_mon(9, 7, 3).unwrap(), 9);
    assert_eq!(wavecost_mon(7, 5, 2).unwrap(), 6);
    for n in 5..=30u32 {
        for v in 0..=n / 2 {
            assert_eq!(wavecost_mon(n, v, 1).unwrap(), mon_n4_profile(n).unwrap().wavecost);
        }
    }
}

#[test]
fn wavecost_ratio_two_large_v() {
    // Half-integral term (w-1)(w+1)/2 handled exactly.
    for v in (5..=41u32).step_by(2) {
        for w in 1..=(v - 1) / 2 {
            let num = 2 * b2(v) * 2 + (w as i64 - 1) * (w as i64 + 1);
            let expect = (num + 7) / 8;
            assert_eq!(wavecost_mon(v + w, v, 2).unwrap() as i64, expect, "v={v} w={w}");
        }
    }
}

#[test]
fn mu3_table() {
    assert_eq!(mu3(9).unwrap(), 1);
    assert_eq!(mu3(10).unwrap(), 2);
    assert_eq!(mu3(16).unwrap(), 4);
    assert_eq!(mu3(4).unwrap(), 1);
    assert_eq!(mu3(6).unwrap(), 1);
    assert_eq!(mu3(12).unwrap(), 3);
    assert_eq!(mu3(13).unwrap(), 2);
    assert_eq!(mu3(14).unwrap(), 3);
    assert_eq!(mu3(15).unwrap(), 3);
    assert_eq!(mu3(17).unwrap(), 3);
    assert!(mu3(3).is_err());
}

#[test]
fn mu3_threshold_matches_wavecost() {
    for v in 4..=60u32 {
        let mu = mu3(v).unwrap() as u32;
        for w in 1..=v {
            let n = v + w;
            let meets = wavecost_mon(n, v, 3).unwrap() == mon_n4_profile(n).unwrap().wavecost;
            assert_eq!(meets, w >= mu, "v={v} w={w} mu={mu}");
        }
    }
}
