use std::sync::{Mutex, OnceLock};

use crate::error::Result;
use crate::numerics::{factorial_q, int, rat, Rational, Scalar};

use super::check_even;

fn cache() -> &'static Mutex<Vec<Scalar>> {
    static CACHE: OnceLock<Mutex<Vec<Scalar>>> = OnceLock::new();
    // entry i holds the value at index 2(i+1)
    CACHE.get_or_init(|| Mutex::new(vec![Scalar::term(-1, rat(-4, 3))]))
}

/// `Xi_2 = -(4/3) pi^{-1/2}`, `Xi_l = 2/(l+1) Xi_{l-2}`.
pub fn xi(ell: usize) -> Result<Scalar> {
    check_even(ell, 2)?;
    let idx = ell / 2 - 1;
    let mut table = cache().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= idx {
        let l = 2 * (table.len() + 1);
        let next = table[table.len() - 1].scale(&rat(2, l as i64 + 1));
        table.push(next);
    }
    Ok(table[idx].clone())
}

/// `-2 pi^{-1/2} 2^l (l/2)! / (l+1)!`.
pub fn xi_closed_form(ell: usize) -> Result<Scalar> {
    check_even(ell, 2)?;
    let q: Rational = int(-2) * num_traits::pow(int(2), ell) * factorial_q(ell as u64 / 2)
        / factorial_q(ell as u64 + 1);
    Ok(Scalar::term(-1, q))
}

pub fn xi_table(max: usize) -> Result<Vec<(usize, Scalar)>> {
    (1..=max / 2).map(|k| Ok((2 * k, xi(2 * k)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        assert_eq!(xi(2).unwrap(), Scalar::term(-1, rat(-4, 3)));
        assert_eq!(xi(4).unwrap(), Scalar::term(-1, rat(-8, 15)));
        assert_eq!(xi(6).unwrap(), Scalar::term(-1, rat(-16, 105)));
        assert!(xi(3).is_err() && xi(0).is_err());
    }

    #[test]
    fn closed_form_agrees() {
        for l in (2..=40).step_by(2) {
            assert_eq!(xi(l).unwrap(), xi_closed_form(l).unwrap());
            assert!(!xi(l).unwrap().is_zero());
        }
    }
}
