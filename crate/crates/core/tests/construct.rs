use ringgroom::construct::{build, BuildRequest};
use ringgroom::formulas::{cost_two_period, triangle_lower_bound, wavecost_mon};
use ringgroom::verify;

fn sweep(cprime: u32, mon: bool) {
    let mut bad = Vec::new();
    for n in 5..=40u32 {
        for v in 0..=n {
            if cprime == 3 && v == n {
                continue;
            }
            let req = BuildRequest::new(n, v, cprime).unwrap().mon(mon);
            let d = match build(&req) {
                Ok(d) => d,
                Err(e) => {
                    bad.push(format!("({n},{v}) error {e}"));
                    continue;
                }
            };
            let rep = verify(&d);
            if !rep.violations.is_empty() {
                bad.push(format!("({n},{v}) invalid: {:?}", &rep.violations[..rep.violations.len().min(3)]));
                continue;
            }
            let want = cost_two_period(n, v, cprime).unwrap() as usize;
            if d.drop_cost() != want {
                bad.push(format!("({n},{v}) cost {} want {want}", d.drop_cost()));
            }
            if mon {
                let want = wavecost_mon(n, v, cprime).unwrap() as usize;
                if d.wavecost() != want {
                    bad.push(format!("({n},{v}) wavecost {} want {want}", d.wavecost()));
                }
                if cprime == 3 {
                    let tb = triangle_lower_bound(v, n - v);
                    let t = d.count_triangles() as u64;
                    if t % 4 != tb.residue || t > tb.slack_ceiling {
                        bad.push(format!("({n},{v}) {t} triangles, bound {} residue {}", tb.slack_ceiling, tb.residue));
                    }
                }
            }
        }
    }
    assert!(bad.is_empty(), "C'={cprime} mon={mon}: {} failures\n{}", bad.len(), bad.join("\n"));
}

#[test]
fn c1_cost_sweep() {
    sweep(1, false);
}

#[test]
fn c1_wavelength_sweep() {
    sweep(1, true);
}

#[test]
fn c2_cost_sweep() {
    sweep(2, false);
}

#[test]
fn c2_wavelength_sweep() {
    sweep(2, true);
}

#[test]
fn c3_cost_sweep() {
    sweep(3, false);
}

#[test]
fn c3_wavelength_sweep() {
    sweep(3, true);
}

mod props {
    use super::*;
    use proptest::prelude::*;
    use ringgroom::Decomposition;

    fn instance() -> impl Strategy<Value = (u32, u32, u32)> {
        (5u32..=64, 1u32..=3).prop_flat_map(|(n, c)| (Just(n), 0..=if c == 3 { n - 1 } else { n }, Just(c)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn any_seed_gives_an_optimal_valid_build((n, v, c) in instance(), seed in any::<u64>(), mon in any::<bool>()) {
            let d = build(&BuildRequest::new(n, v, c).unwrap().mon(mon).seed(seed)).unwrap();
            let rep = verify(&d);
            prop_assert!(rep.valid, "{:?}", &rep.violations[..rep.violations.len().min(3)]);
            prop_assert_eq!(d.drop_cost() as u64, cost_two_period(n, v, c).unwrap());
            if mon {
                prop_assert_eq!(d.wavecost() as u64, wavecost_mon(n, v, c).unwrap());
            }
            let back = Decomposition::from_json(&d.to_json()).unwrap();
            prop_assert_eq!(back.canonical(), d.canonical());
        }
    }
}
