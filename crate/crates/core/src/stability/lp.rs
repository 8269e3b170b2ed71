//! Exact two-phase simplex method over the rationals with Bland's rule.

use crate::error::{Error, Result};
use crate::rational::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Eq,
    Ge,
}

/// minimize <objective, x> subject to rows; x_j >= 0 unless free[j].
#[derive(Clone, Debug)]
pub struct Lp {
    pub objective: Vec<Rat>,
    pub free: Vec<bool>,
    pub rows: Vec<(Vec<Rat>, Cmp, Rat)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rat,
    pub x: Vec<Rat>,
}

impl Lp {
    pub fn new(objective: Vec<Rat>, free: Vec<bool>) -> Lp {
        Lp { objective, free, rows: vec![] }
    }

    pub fn row(&mut self, a: Vec<Rat>, cmp: Cmp, b: Rat) {
        self.rows.push((a, cmp, b));
    }

    pub fn maximize(&self) -> Result<LpSolution> {
        let neg = Lp { objective: self.objective.iter().map(|c| -c).collect(), free: self.free.clone(), rows: self.rows.clone() };
        let s = neg.minimize()?;
        Ok(LpSolution { value: -s.value, x: s.x })
    }

    pub fn minimize(&self) -> Result<LpSolution> {
        let nv = self.objective.len();
        // column layout: x+ (nv), x- for free vars, slacks, artificials
        let mut neg_col = vec![None; nv];
        let mut ncols = nv;
        for j in 0..nv {
            if self.free[j] {
                neg_col[j] = Some(ncols);
                ncols += 1;
            }
        }
        let m = self.rows.len();
        let mut rows: Vec<(Vec<Rat>, Cmp, Rat)> = self.rows.clone();
        for r in rows.iter_mut() {
            if r.2.is_negative() {
                r.0.iter_mut().for_each(|a| *a = -a.clone());
                r.2 = -r.2.clone();
                r.1 = match r.1 {
                    Cmp::Le => Cmp::Ge,
                    Cmp::Ge => Cmp::Le,
                    Cmp::Eq => Cmp::Eq,
                };
            }
        }
        let slack_start = ncols;
        let n_slack = rows.iter().filter(|r| r.1 != Cmp::Eq).count();
        let art_start = slack_start + n_slack;
        let n_art = rows.iter().filter(|r| r.1 != Cmp::Le).count();
        let total = art_start + n_art;
        let mut t = vec![vec![Rat::zero(); total + 1]; m];
        let mut basis = vec![0usize; m];
        let (mut s, mut a) = (slack_start, art_start);
        for (i, (coef, cmp, b)) in rows.iter().enumerate() {
            for j in 0..nv {
                t[i][j] = coef[j].clone();
                if let Some(c) = neg_col[j] {
                    t[i][c] = -coef[j].clone();
                }
            }
            t[i][total] = b.clone();
            match cmp {
                Cmp::Le => {
                    t[i][s] = Rat::one();
                    basis[i] = s;
                    s += 1;
                }
                Cmp::Ge => {
                    t[i][s] = -Rat::one();
                    s += 1;
                    t[i][a] = Rat::one();
                    basis[i] = a;
                    a += 1;
                }
                Cmp::Eq => {
                    t[i][a] = Rat::one();
                    basis[i] = a;
                    a += 1;
                }
            }
        }
        let mut tab = Tableau { t, basis, width: total };
        if n_art > 0 {
            let mut cost = vec![Rat::zero(); total];
            cost[art_start..].iter_mut().for_each(|c| *c = Rat::one());
            let allowed = vec![true; total];
            tab.optimize(&cost, &allowed)?;
            if !tab.value(&cost).is_zero() {
                return Err(Error::Infeasible);
            }
            tab.drive_out(art_start);
        }
        let mut cost = vec![Rat::zero(); total];
        for j in 0..nv {
            cost[j] = self.objective[j].clone();
            if let Some(c) = neg_col[j] {
                cost[c] = -self.objective[j].clone();
            }
        }
        let allowed: Vec<bool> = (0..total).map(|j| j < art_start).collect();
        tab.optimize(&cost, &allowed)?;
        let mut full = vec![Rat::zero(); total];
        for (i, &b) in tab.basis.iter().enumerate() {
            full[b] = tab.t[i][total].clone();
        }
        let x: Vec<Rat> = (0..nv).map(|j| &full[j] - neg_col[j].map(|c| full[c].clone()).unwrap_or_else(Rat::zero)).collect();
        let value = x.iter().zip(&self.objective).fold(Rat::zero(), |s, (a, b)| s + a * b);
        Ok(LpSolution { value, x })
    }
}

struct Tableau {
    t: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn value(&self, cost: &[Rat]) -> Rat {
        self.basis.iter().enumerate().fold(Rat::zero(), |s, (i, &b)| s + &cost[b] * &self.t[i][self.width])
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        self.t[r].iter_mut().for_each(|x| *x /= &p);
        let pr = self.t[r].clone();
        for i in 0..self.t.len() {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            for (x, y) in self.t[i].iter_mut().zip(&pr) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    fn optimize(&mut self, cost: &[Rat], allowed: &[bool]) -> Result<()> {
        loop {
            let mut entering = None;
            for j in 0..self.width {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let d = self.basis.iter().enumerate().fold(cost[j].clone(), |s, (i, &b)| s - &cost[b] * &self.t[i][j]);
                if d.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return Ok(()) };
            let mut best: Option<(Rat, usize, usize)> = None;
            for i in 0..self.t.len() {
                if self.t[i][c].is_positive() {
                    let ratio = &self.t[i][self.width] / &self.t[i][c];
                    let better = match &best {
                        None => true,
                        Some((r, b, _)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, self.basis[i], i));
                    }
                }
            }
            let Some((_, _, r)) = best else { return Err(Error::LpUnbounded) };
            self.pivot(r, c);
        }
    }

    /// Pivots zero-level artificial variables out of the basis; rows that
    /// cannot be pivoted are redundant and dropped.
    fn drive_out(&mut self, art_start: usize) {
        let mut i = 0;
        while i < self.t.len() {
            if self.basis[i] >= art_start {
                match (0..art_start).find(|&j| !self.t[i][j].is_zero() && !self.basis.contains(&j)) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.t.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ri};

    #[test]
    fn small_programs() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6
        let mut lp = Lp::new(vec![ri(1), ri(1)], vec![false, false]);
        lp.row(vec![ri(1), ri(2)], Cmp::Le, ri(4));
        lp.row(vec![ri(3), ri(1)], Cmp::Le, ri(6));
        let s = lp.maximize().unwrap();
        assert_eq!(s.value, rat(14, 5));
        assert_eq!(s.x, vec![rat(8, 5), rat(6, 5)]);

        // free variable, equality and >= rows
        let mut lp = Lp::new(vec![ri(1), ri(0)], vec![true, false]);
        lp.row(vec![ri(1), ri(1)], Cmp::Eq, ri(-2));
        lp.row(vec![ri(0), ri(1)], Cmp::Ge, ri(1));
        let s = lp.minimize();
        assert_eq!(s, Err(Error::LpUnbounded));
        lp.row(vec![ri(0), ri(1)], Cmp::Le, ri(5));
        assert_eq!(lp.minimize().unwrap().value, ri(-7));

        let mut lp = Lp::new(vec![ri(1)], vec![false]);
        lp.row(vec![ri(1)], Cmp::Le, ri(-1));
        assert_eq!(lp.minimize(), Err(Error::Infeasible));
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = Lp::new(vec![ri(1), ri(1)], vec![false, false]);
        lp.row(vec![ri(1), ri(1)], Cmp::Eq, ri(1));
        lp.row(vec![ri(2), ri(2)], Cmp::Eq, ri(2));
        lp.row(vec![ri(1), ri(0)], Cmp::Ge, rat(1, 3));
        assert_eq!(lp.minimize().unwrap().value, ri(1));
    }
}
