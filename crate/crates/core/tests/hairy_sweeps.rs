use std::sync::Arc;

use divlabel::graph::{build_hairy_cycle, CaterpillarSpec};
use divlabel::hairy::{corona_d_divisible, odd_alpha_hairy, odd_alpha_hairy_by_transforms};
use divlabel::labeling::verify_d_divisible;

// all pendant sequences of length len with sum at most budget
fn sequences(len: usize, budget: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=budget {
        for mut rest in sequences(len - 1, budget - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn odd_labelings_of_small_hairy_cycles() {
    let mut failures = Vec::new();
    let mut count = 0;
    for t in 2..=4 {
        for p in sequences(2 * t, 8) {
            if p.iter().all(|&x| x == 0) {
                continue;
            }
            let g = Arc::new(build_hairy_cycle(&CaterpillarSpec::new(p.clone()).unwrap()).unwrap());
            let e = g.size();
            count += 1;
            let closed = odd_alpha_hairy(&g);
            let built = odd_alpha_hairy_by_transforms(&g);
            match (&closed, &built) {
                (Ok(a), Ok(b)) => {
                    assert!(verify_d_divisible(&a.labeling, e, true).unwrap().holds);
                    assert!(verify_d_divisible(&b.labeling, e, true).unwrap().holds);
                    let mut da = a.labeling.edge_differences();
                    let mut db = b.labeling.edge_differences();
                    da.sort();
                    db.sort();
                    assert_eq!(da, db);
                    if a.labeling.values() != b.labeling.values() {
                        failures.push(format!("{p:?}: paths differ ({})", a.provenance));
                    }
                }
                _ => failures.push(format!(
                    "{p:?}: closed {:?} transforms {:?}",
                    closed.as_ref().err(),
                    built.as_ref().err()
                )),
            }
        }
    }
    assert!(count > 1000);
    assert!(failures.is_empty(), "{} failures, e.g. {:#?}", failures.len(), &failures[..failures.len().min(10)]);
}

#[test]
fn corona_sweep() {
    let mut failures = Vec::new();
    for t in 2..=7 {
        for lambda in 1..=4 {
            let e = 2 * t * (lambda + 1);
            for d in (1..=e).filter(|d| e % d == 0) {
                match corona_d_divisible(t, lambda, d) {
                    Ok(c) => assert!(verify_d_divisible(&c.labeling, d, true).unwrap().holds),
                    Err(err) => failures.push(format!("t={t} lambda={lambda} d={d}: {err}")),
                }
            }
        }
    }
    assert!(failures.is_empty(), "{} failures: {:#?}", failures.len(), failures);
}
