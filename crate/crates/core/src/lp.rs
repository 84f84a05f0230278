//! Exact rational simplex for `max c.x` subject to `A x <= b`, `x >= 0`,
//! with `b >= 0` so the slack basis is a feasible start. Bland's rule picks
//! both pivots, which rules out cycling and fixes the returned vertex.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    rows: Vec<(Vec<(usize, Rational)>, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(variables: usize) -> Self {
        LinearProgram {
            objective: vec![Rational::zero(); variables],
            rows: Vec::new(),
        }
    }

    pub fn variable_count(&self) -> usize {
        self.objective.len()
    }

    pub fn constraint_count(&self) -> usize {
        self.rows.len()
    }

    pub fn set_objective(&mut self, var: usize, coef: Rational) {
        self.objective[var] = coef;
    }

    /// Adds `sum coef * x_var <= rhs`; `rhs` must be non-negative.
    pub fn add_le(&mut self, terms: Vec<(usize, Rational)>, rhs: Rational) -> Result<()> {
        if rhs.is_negative() {
            return Err(Error::Precondition("right-hand sides must be non-negative".into()));
        }
        if terms.iter().any(|(v, _)| *v >= self.objective.len()) {
            return Err(Error::Precondition("constraint names an unknown variable".into()));
        }
        self.rows.push((terms, rhs));
        Ok(())
    }

    pub fn solve(&self) -> Result<LpSolution> {
        let n = self.objective.len();
        let m = self.rows.len();
        let width = n + m;
        // tableau rows: coefficients over x and slacks, then rhs
        let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
        for (r, (terms, rhs)) in self.rows.iter().enumerate() {
            let mut row = vec![Rational::zero(); width + 1];
            for (v, c) in terms {
                row[*v] += c;
            }
            row[n + r] = Rational::one();
            row[width] = rhs.clone();
            t.push(row);
        }
        // reduced costs (c_j - z_j) and current objective value
        let mut reduced: Vec<Rational> = self.objective.iter().cloned().chain((0..m).map(|_| Rational::zero())).collect();
        let mut value = Rational::zero();
        let mut basis: Vec<usize> = (n..width).collect();
        while let Some(enter) = (0..width).find(|&j| reduced[j].is_positive()) {
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in t.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((p, _)) = leave else {
                return Err(Error::Unbounded);
            };
            let piv = t[p][enter].clone();
            for v in t[p].iter_mut() {
                if !v.is_zero() {
                    *v /= &piv;
                }
            }
            let prow = t[p].clone();
            let nz: Vec<usize> = (0..=width).filter(|&j| !prow[j].is_zero()).collect();
            for (i, row) in t.iter_mut().enumerate() {
                if i == p || row[enter].is_zero() {
                    continue;
                }
                let f = row[enter].clone();
                for &j in &nz {
                    let d = &f * &prow[j];
                    row[j] -= d;
                }
            }
            let f = reduced[enter].clone();
            for &j in &nz {
                if j < width {
                    let d = &f * &prow[j];
                    reduced[j] -= d;
                }
            }
            value += &f * &prow[width];
            basis[p] = enter;
        }
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in basis.iter().enumerate() {
            if b < n {
                x[b] = t[i][width].clone();
            }
        }
        Ok(LpSolution { value, x })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preemptive::{rat, ratio};

    #[test]
    fn single_bound() {
        let mut lp = LinearProgram::new(1);
        lp.set_objective(0, rat(1));
        lp.add_le(vec![(0, rat(1))], rat(1)).unwrap();
        assert_eq!(lp.solve().unwrap().value, rat(1));
    }

    #[test]
    fn shared_bound() {
        let mut lp = LinearProgram::new(2);
        lp.set_objective(0, rat(1));
        lp.set_objective(1, rat(1));
        lp.add_le(vec![(0, rat(1)), (1, rat(1))], rat(1)).unwrap();
        assert_eq!(lp.solve().unwrap().value, rat(1));
    }

    #[test]
    fn fractional_vertex() {
        // max x + y, 2x + y <= 2, x + 2y <= 2 -> x = y = 2/3
        let mut lp = LinearProgram::new(2);
        lp.set_objective(0, rat(1));
        lp.set_objective(1, rat(1));
        lp.add_le(vec![(0, rat(2)), (1, rat(1))], rat(2)).unwrap();
        lp.add_le(vec![(0, rat(1)), (1, rat(2))], rat(2)).unwrap();
        let s = lp.solve().unwrap();
        assert_eq!(s.value, ratio(4, 3));
        assert_eq!(s.x, vec![ratio(2, 3), ratio(2, 3)]);
    }

    #[test]
    fn unbounded() {
        let mut lp = LinearProgram::new(2);
        lp.set_objective(0, rat(1));
        lp.add_le(vec![(1, rat(1))], rat(1)).unwrap();
        assert_eq!(lp.solve(), Err(Error::Unbounded));
    }
}
