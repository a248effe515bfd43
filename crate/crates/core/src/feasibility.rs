//! Exact feasibility of systems of strict and non-strict linear inequalities
//! over the rationals, by Fourier–Motzkin elimination with back-substitution.

use std::collections::HashMap;

use num::{BigInt, BigRational, One, Signed, Zero};

/// `Σ coeffs[j]·x_j < rhs` (strict) or `≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
    pub strict: bool,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Inequality {
    /// Inequality from small integer coefficients.
    pub fn new(coeffs: &[i64], rhs: i64, strict: bool) -> Self {
        Inequality {
            coeffs: coeffs.iter().map(|&c| q(c)).collect(),
            rhs: q(rhs),
            strict,
        }
    }

    /// Sparse form over `dims` variables: `terms` are `(variable, coefficient)`.
    pub fn sparse(dims: usize, terms: &[(usize, i64)], rhs: i64, strict: bool) -> Self {
        let mut coeffs = vec![BigRational::zero(); dims];
        for &(j, c) in terms {
            coeffs[j] += q(c);
        }
        Inequality {
            coeffs,
            rhs: q(rhs),
            strict,
        }
    }

    pub fn holds(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        if self.strict {
            lhs < self.rhs
        } else {
            lhs <= self.rhs
        }
    }

    /// Scales so the first nonzero coefficient is ±1.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coeffs {
                *c /= &lead;
            }
            self.rhs /= lead;
        }
        self
    }
}

/// Keeps only the tightest bound for each left-hand side.
fn dedupe(system: Vec<Inequality>) -> Vec<Inequality> {
    let mut best: HashMap<Vec<BigRational>, (BigRational, bool)> = HashMap::new();
    let mut order = Vec::new();
    for ineq in system.into_iter().map(Inequality::normalized) {
        match best.get_mut(&ineq.coeffs) {
            None => {
                order.push(ineq.coeffs.clone());
                best.insert(ineq.coeffs, (ineq.rhs, ineq.strict));
            }
            Some(slot) => {
                if ineq.rhs < slot.0 || (ineq.rhs == slot.0 && ineq.strict) {
                    *slot = (ineq.rhs, ineq.strict);
                }
            }
        }
    }
    order
        .into_iter()
        .map(|coeffs| {
            let (rhs, strict) = best.remove(&coeffs).expect("every key recorded once");
            Inequality { coeffs, rhs, strict }
        })
        .collect()
}

fn eliminate(system: &[Inequality], var: usize) -> Vec<Inequality> {
    let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for ineq in system {
        let c = &ineq.coeffs[var];
        if c.is_positive() {
            pos.push(ineq);
        } else if c.is_negative() {
            neg.push(ineq);
        } else {
            rest.push(ineq.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            let a = p.coeffs[var].clone();
            let b = -n.coeffs[var].clone();
            let coeffs = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(x, y)| x * &b + y * &a)
                .collect();
            rest.push(Inequality {
                coeffs,
                rhs: &p.rhs * &b + &n.rhs * &a,
                strict: p.strict || n.strict,
            });
        }
    }
    dedupe(rest)
}

/// A point satisfying every inequality, or `None` when the system is infeasible.
pub fn solve(system: &[Inequality], dims: usize) -> Option<Vec<BigRational>> {
    let mut stages = vec![dedupe(system.to_vec())];
    for var in 0..dims {
        let next = eliminate(stages.last().expect("nonempty stages"), var);
        stages.push(next);
    }
    let constant_ok = stages[dims].iter().all(|ineq| {
        if ineq.strict {
            ineq.rhs.is_positive()
        } else {
            !ineq.rhs.is_negative()
        }
    });
    if !constant_ok {
        return None;
    }

    let mut x = vec![BigRational::zero(); dims];
    for var in (0..dims).rev() {
        let mut lower: Option<(BigRational, bool)> = None;
        let mut upper: Option<(BigRational, bool)> = None;
        for ineq in &stages[var] {
            let c = &ineq.coeffs[var];
            if c.is_zero() {
                continue;
            }
            let others: BigRational = ineq
                .coeffs
                .iter()
                .zip(&x)
                .enumerate()
                .filter(|&(j, _)| j > var)
                .map(|(_, (a, v))| a * v)
                .sum();
            let bound = (&ineq.rhs - others) / c;
            if c.is_positive() {
                if upper.as_ref().is_none_or(|(u, s)| bound < *u || (bound == *u && !s)) {
                    upper = Some((bound, ineq.strict));
                }
            } else if lower.as_ref().is_none_or(|(l, s)| bound > *l || (bound == *l && !s)) {
                lower = Some((bound, ineq.strict));
            }
        }
        x[var] = match (lower, upper) {
            (Some((l, _)), Some((u, _))) => (l + u) / q(2),
            (Some((l, _)), None) => l + BigRational::one(),
            (None, Some((u, _))) => u - BigRational::one(),
            (None, None) => BigRational::zero(),
        };
    }
    debug_assert!(system.iter().all(|i| i.holds(&x)));
    Some(x)
}
