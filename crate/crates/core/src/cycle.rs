//! d-divisible alpha-labelings of `C_4k` for every divisor `d` of `4k`.
//!
//! The cycle minus `[x_1, y_2k]` is a path; its standard alpha_S-labeling
//! with `S = (Delta \ Delta') \ {c}` closes up exactly when
//! `c = 2k + d_y`, `d_y` being the number of missing labels among the `y`s.

use std::sync::Arc;

use crate::construction::{Construction, TraceStep};
use crate::error::{Error, Result};
use crate::graph::build_cycle;
use crate::labeling::{
    closing_difference, divisible_label_set, extend_with_closing_edge, standard_alpha_s,
    DivisibilityParams,
};

/// The closing values that work for `C_4k`: one value when `m = 4k/d` is
/// even, two (both odd) when `m` is odd. Ascending.
pub fn cycle_closing_values(k: usize, d: usize) -> Result<Vec<i64>> {
    if k == 0 {
        return Err(Error::OutOfDomain("k must be positive".into()));
    }
    let p = DivisibilityParams::new(4 * k, d)?;
    let two_k = 2 * k as i64;
    let d = d as i64;
    let values = if p.m % 2 == 0 {
        let d_y = if d % 2 == 0 { (d - 2) / 2 } else { (d - 1) / 2 };
        vec![two_k + d_y]
    } else {
        vec![two_k + (d - 2) / 2, two_k + (d + 2) / 2]
    };
    if let Some(&bad) = values.iter().find(|&&c| p.in_delta_prime(c) || c > p.top()) {
        return Err(Error::InternalContradiction(format!(
            "closing value {bad} is not an admissible difference"
        )));
    }
    Ok(values)
}

/// A d-divisible alpha-labeling of `C_4k`. `c` defaults to the smallest
/// valid closing value.
pub fn cycle_d_divisible(k: usize, d: usize, c: Option<i64>) -> Result<Construction> {
    let choices = cycle_closing_values(k, d)?;
    let c = match c {
        Some(c) if !choices.contains(&c) => {
            return Err(Error::OutOfDomain(format!(
                "c = {c} is not a valid closing value for C_{} with d = {d}; choose from {choices:?}",
                4 * k
            )))
        }
        Some(c) => c,
        None => choices[0],
    };
    let path = Arc::new(build_cycle(4 * k)?.open());
    let s = divisible_label_set(4 * k, d)?.without(c)?;
    let f = standard_alpha_s(&path, &s)?;
    let closing = closing_difference(&f);
    if closing != c {
        return Err(Error::InternalContradiction(format!(
            "C_{}: f(y_2k) - f(x_1) = {closing}, expected {c}",
            4 * k
        )));
    }
    Ok(Construction {
        labeling: extend_with_closing_edge(&f, c)?,
        d,
        provenance: format!("cycle/C{}/m={}", 4 * k, 4 * k / d),
        removed: Some(c),
        trace: vec![TraceStep { op: None, closing }],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Side;
    use crate::labeling::verify_d_divisible;

    #[test]
    fn closing_values_examples() {
        assert_eq!(cycle_closing_values(6, 3).unwrap(), [13]);
        assert_eq!(cycle_closing_values(6, 8).unwrap(), [15, 17]);
        assert_eq!(cycle_closing_values(2, 2).unwrap(), [4]);
        assert!(matches!(cycle_closing_values(6, 5), Err(Error::NotAdmissible { .. })));
    }

    #[test]
    fn c8_two_divisible() {
        let c = cycle_d_divisible(2, 2, None).unwrap();
        let l = &c.labeling;
        assert_eq!(l.side_values(Side::A).collect::<Vec<_>>(), [5, 4, 1, 0]);
        assert_eq!(l.side_values(Side::B).collect::<Vec<_>>(), [6, 7, 8, 9]);
        assert_eq!(c.removed, Some(4));
        assert!(verify_d_divisible(l, 2, true).unwrap().holds);
    }

    #[test]
    fn c24_examples() {
        let c = cycle_d_divisible(6, 3, None).unwrap();
        assert_eq!(c.removed, Some(13));
        assert_eq!(c.labeling.max_label(), 26);
        assert!(verify_d_divisible(&c.labeling, 3, true).unwrap().holds);
        for choice in [15, 17] {
            let c = cycle_d_divisible(6, 8, Some(choice)).unwrap();
            assert!(verify_d_divisible(&c.labeling, 8, true).unwrap().holds);
        }
        assert!(matches!(cycle_d_divisible(6, 8, Some(16)), Err(Error::OutOfDomain(_))));
    }
}
