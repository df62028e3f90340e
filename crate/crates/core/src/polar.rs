//! Polarization of homogeneous polynomial maps over multisets of arguments.
//!
//! For a symmetric `k`-linear form `F` with diagonal `f(x) = F(x, ..., x)`,
//! `F(x_1, ..., x_k) = (1/k!) sum_{∅≠I} (-1)^{k-|I|} f(sum_{i∈I} x_i)`.
//! Identical arguments are grouped, so a subset is described by how many
//! copies of each distinct argument it takes.

use crate::linalg::{binomial, factorial};

/// One term of the polarization sum: `coeff * f(sum_g mult[g] * x_g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub mult: Vec<usize>,
    pub coeff: f64,
}

/// Groups identical items; returns representatives and multiplicities.
pub fn group<T>(items: &[T], same: impl Fn(&T, &T) -> bool) -> (Vec<usize>, Vec<usize>) {
    let mut reps: Vec<usize> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for (i, it) in items.iter().enumerate() {
        match reps.iter().position(|&r| same(&items[r], it)) {
            Some(g) => counts[g] += 1,
            None => {
                reps.push(i);
                counts.push(1);
            }
        }
    }
    (reps, counts)
}

/// Terms of the grouped polarization sum, already divided by `k!`.
pub fn terms(counts: &[usize]) -> Vec<Term> {
    let k: usize = counts.iter().sum();
    let norm = factorial(k);
    let mut out = Vec::new();
    let mut mult = vec![0usize; counts.len()];
    loop {
        // odometer increment
        let mut g = 0;
        while g < counts.len() {
            if mult[g] < counts[g] {
                mult[g] += 1;
                break;
            }
            mult[g] = 0;
            g += 1;
        }
        if g == counts.len() {
            break;
        }
        let size: usize = mult.iter().sum();
        let sign = if (k - size) % 2 == 0 { 1.0 } else { -1.0 };
        let c: f64 = mult.iter().zip(counts).map(|(&a, &c)| binomial(c, a)).product();
        out.push(Term {
            mult: mult.clone(),
            coeff: sign * c / norm,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_product_of_linear_forms() {
        // f(x) = x^3 on reals polarizes to x1 x2 x3
        let xs = [2.0, 3.0, 5.0];
        let (_, counts) = group(&xs, |a, b| a == b);
        let val: f64 = terms(&counts)
            .iter()
            .map(|t| {
                let s: f64 = t.mult.iter().zip(&xs).map(|(&m, x)| m as f64 * x).sum();
                t.coeff * s.powi(3)
            })
            .sum();
        assert!((val - 30.0).abs() < 1e-12);
    }

    #[test]
    fn grouped_diagonal() {
        let xs = [1.5, 1.5, 1.5];
        let (reps, counts) = group(&xs, |a, b| a == b);
        assert_eq!(reps, vec![0]);
        assert_eq!(counts, vec![3]);
        let val: f64 = terms(&counts)
            .iter()
            .map(|t| t.coeff * (t.mult[0] as f64 * 1.5).powi(3))
            .sum();
        assert!((val - 1.5f64.powi(3)).abs() < 1e-12);
    }
}
