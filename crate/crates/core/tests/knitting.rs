//! Additive knitting against the exact hammock on every Dynkin diagram of
//! rank at most eight.

use std::collections::HashMap;

use mcmkit::arquiver::{diagrams_up_to, hammock, DynkinDiagram};

fn knit(d: &DynkinDiagram, x: (i64, usize), last: i64) -> HashMap<(i64, usize), i64> {
    let mut f: HashMap<(i64, usize), i64> = HashMap::new();
    f.insert(x, 1);
    for c in x.0 + 1..=last {
        for v in 0..d.rank {
            if (c - d.parity(v)).rem_euclid(2) != 0 {
                continue;
            }
            let s: i64 = d.neighbors(v).iter().map(|&w| f.get(&(c - 1, w)).copied().unwrap_or(0)).sum();
            let t = f.get(&(c - 2, v)).copied().unwrap_or(0);
            f.insert((c, v), s - t);
        }
    }
    f
}

#[test]
fn knitting_matches_hammock_before_serre_column() {
    for d in diagrams_up_to(8) {
        let h = d.coxeter();
        let nu = d.nakayama_permutation();
        for v in 0..d.rank {
            let x = (d.parity(v), v);
            let last = x.0 + h - 2;
            let f = knit(&d, x, last);
            let ham = hammock(&d, x, 2 * h).unwrap();
            for (&z, &val) in &f {
                assert!(val >= 0, "{d} {x:?} {z:?}");
                assert_eq!(ham.get(z) as i64, val, "{d} {x:?} {z:?}");
            }
            assert_eq!(ham.get((last, nu[v])), 1, "{d} {x:?}");
            assert_eq!(ham.last_column(), last, "{d} {x:?}");
        }
    }
}
