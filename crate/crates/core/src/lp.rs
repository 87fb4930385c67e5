//! Exact linear programming: a two-phase dictionary simplex with Bland's
//! anti-cycling rule.
//!
//! The dictionary has one column per structural variable, so the cost of a
//! pivot is `rows × vars`. The transversal problems solved here have few
//! variables and many constraints, which is the shape this favors.
//!
//! When a problem is infeasible the solver returns the support of a Farkas
//! certificate read off the final phase-one objective row: a subset of the
//! constraints that is already infeasible on its own.

use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Scalar>,
    pub relation: Relation,
    pub rhs: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { point: Vec<Scalar>, value: Scalar },
    /// Indices of constraints forming an infeasible subsystem.
    Infeasible { conflict: Vec<usize> },
    Unbounded,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible { .. })
    }

    pub fn point(&self) -> Option<&[Scalar]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

/// `maximize objective · x` subject to the constraints. Variables are free
/// unless marked nonnegative.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    nonnegative: Vec<bool>,
    constraints: Vec<Constraint>,
    objective: Vec<Scalar>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            nonnegative: vec![false; num_vars],
            constraints: Vec::new(),
            objective: vec![Scalar::zero(); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_nonnegative(&mut self, var: usize) -> &mut Self {
        self.nonnegative[var] = true;
        self
    }

    pub fn all_nonnegative(&mut self) -> &mut Self {
        self.nonnegative.iter_mut().for_each(|b| *b = true);
        self
    }

    /// Adds a constraint and returns its index.
    pub fn add(&mut self, coeffs: Vec<Scalar>, relation: Relation, rhs: Scalar) -> usize {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self.constraints.len() - 1
    }

    pub fn maximize(&mut self, objective: Vec<Scalar>) -> &mut Self {
        assert_eq!(objective.len(), self.num_vars, "objective width");
        self.objective = objective;
        self
    }

    pub fn minimize(&mut self, objective: Vec<Scalar>) -> &mut Self {
        self.maximize(objective.into_iter().map(|c| -c).collect())
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn solve(&self) -> LpOutcome {
        // Column layout: one column per nonnegative variable, two per free one.
        let mut columns: Vec<(usize, bool)> = Vec::new();
        for v in 0..self.num_vars {
            columns.push((v, false));
            if !self.nonnegative[v] {
                columns.push((v, true));
            }
        }
        let n = columns.len();

        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();
        let mut origin: Vec<usize> = Vec::new();
        let expand = |coeffs: &[Scalar], sign: bool| -> Vec<Scalar> {
            columns
                .iter()
                .map(|&(v, neg)| {
                    let c = if neg { -&coeffs[v] } else { coeffs[v].clone() };
                    if sign {
                        -c
                    } else {
                        c
                    }
                })
                .collect()
        };
        for (ci, c) in self.constraints.iter().enumerate() {
            if matches!(c.relation, Relation::Le | Relation::Eq) {
                rows.push(expand(&c.coeffs, false));
                rhs.push(c.rhs.clone());
                origin.push(ci);
            }
            if matches!(c.relation, Relation::Ge | Relation::Eq) {
                rows.push(expand(&c.coeffs, true));
                rhs.push(-c.rhs.clone());
                origin.push(ci);
            }
        }
        let objective = expand(&self.objective, false);

        let mut dict = Dictionary::new(n, &rows, &rhs);
        if let Err(slack_support) = dict.phase_one() {
            let mut conflict: Vec<usize> = slack_support.into_iter().map(|r| origin[r]).collect();
            conflict.sort_unstable();
            conflict.dedup();
            return LpOutcome::Infeasible { conflict };
        }
        dict.set_objective(&objective);
        if !dict.optimize() {
            return LpOutcome::Unbounded;
        }
        let col_values = dict.primal(n);
        let mut point = vec![Scalar::zero(); self.num_vars];
        for (&(v, neg), x) in columns.iter().zip(col_values) {
            if neg {
                point[v] -= x;
            } else {
                point[v] += x;
            }
        }
        let value = self
            .objective
            .iter()
            .zip(&point)
            .map(|(c, x)| c * x)
            .sum();
        LpOutcome::Optimal { point, value }
    }
}

/// `x_B[i] = consts[i] + Σ_j table[i][j] · x_N[j]`, objective
/// `z = obj_const + Σ_j obj[j] · x_N[j]`.
///
/// Variable ids: `0..n` structural, `n..n+m` slacks, `n+m` the phase-one
/// auxiliary.
struct Dictionary {
    n: usize,
    basis: Vec<usize>,
    nonbasic: Vec<usize>,
    table: Vec<Vec<Scalar>>,
    consts: Vec<Scalar>,
    obj: Vec<Scalar>,
    obj_const: Scalar,
}

impl Dictionary {
    fn new(n: usize, rows: &[Vec<Scalar>], rhs: &[Scalar]) -> Self {
        let m = rows.len();
        Self {
            n,
            basis: (n..n + m).collect(),
            nonbasic: (0..n).collect(),
            table: rows
                .iter()
                .map(|r| r.iter().map(|a| -a).collect())
                .collect(),
            consts: rhs.to_vec(),
            obj: vec![Scalar::zero(); n],
            obj_const: Scalar::zero(),
        }
    }

    fn aux_id(&self) -> usize {
        self.n + self.basis.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let a_rc = self.table[r][c].clone();
        let inv = Scalar::one() / &a_rc;
        // Solve row r for the entering variable.
        let mut new_row: Vec<Scalar> = self.table[r].iter().map(|a| -(a * &inv)).collect();
        new_row[c] = inv.clone();
        let new_const = -(&self.consts[r] * &inv);

        for i in 0..self.table.len() {
            if i == r {
                continue;
            }
            let f = self.table[i][c].clone();
            if f.is_zero() {
                continue;
            }
            for (j, a) in new_row.iter().enumerate() {
                if j == c {
                    self.table[i][j] = &f * a;
                } else if !a.is_zero() {
                    let t = &f * a;
                    self.table[i][j] += t;
                }
            }
            let t = &f * &new_const;
            self.consts[i] += t;
        }
        let f = self.obj[c].clone();
        if !f.is_zero() {
            for (j, a) in new_row.iter().enumerate() {
                if j == c {
                    self.obj[j] = &f * a;
                } else if !a.is_zero() {
                    let t = &f * a;
                    self.obj[j] += t;
                }
            }
            self.obj_const += &f * &new_const;
        }
        self.table[r] = new_row;
        self.consts[r] = new_const;
        std::mem::swap(&mut self.basis[r], &mut self.nonbasic[c]);
    }

    /// Runs Bland's rule to optimality. Returns `false` if unbounded.
    fn optimize(&mut self) -> bool {
        loop {
            let entering = (0..self.nonbasic.len())
                .filter(|&j| self.obj[j].is_positive())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Scalar)> = None;
            for i in 0..self.table.len() {
                let a = &self.table[i][c];
                if !a.is_negative() {
                    continue;
                }
                let ratio = &self.consts[i] / -a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    /// Finds a feasible basis. On failure returns the rows of a Farkas
    /// certificate's support.
    fn phase_one(&mut self) -> Result<(), Vec<usize>> {
        let Some(worst) = (0..self.consts.len())
            .filter(|&i| self.consts[i].is_negative())
            .min_by(|&a, &b| self.consts[a].cmp(&self.consts[b]).then(a.cmp(&b)))
        else {
            return Ok(());
        };
        let aux = self.aux_id();
        for row in self.table.iter_mut() {
            row.push(Scalar::one());
        }
        self.nonbasic.push(aux);
        self.obj = vec![Scalar::zero(); self.nonbasic.len()];
        *self.obj.last_mut().unwrap() = -Scalar::one();
        self.obj_const = Scalar::zero();

        let aux_col = self.nonbasic.len() - 1;
        self.pivot(worst, aux_col);
        let bounded = self.optimize();
        debug_assert!(bounded, "phase one is bounded by construction");

        if self.obj_const.is_negative() {
            let m = self.basis.len();
            let support = self
                .nonbasic
                .iter()
                .zip(&self.obj)
                .filter(|(&v, g)| v >= self.n && v < self.n + m && !g.is_zero())
                .map(|(&v, _)| v - self.n)
                .collect();
            return Err(support);
        }

        if let Some(r) = self.basis.iter().position(|&v| v == aux) {
            // Degenerate: the auxiliary sits in the basis at level zero.
            match (0..self.nonbasic.len()).find(|&j| !self.table[r][j].is_zero()) {
                Some(c) => self.pivot(r, c),
                None => {
                    self.table.remove(r);
                    self.consts.remove(r);
                    self.basis.remove(r);
                    return Ok(());
                }
            }
        }
        let col = self
            .nonbasic
            .iter()
            .position(|&v| v == aux)
            .expect("auxiliary is nonbasic");
        self.nonbasic.remove(col);
        for row in self.table.iter_mut() {
            row.remove(col);
        }
        self.obj.remove(col);
        Ok(())
    }

    fn set_objective(&mut self, objective: &[Scalar]) {
        self.obj = vec![Scalar::zero(); self.nonbasic.len()];
        self.obj_const = Scalar::zero();
        for (v, c) in objective.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(j) = self.nonbasic.iter().position(|&x| x == v) {
                self.obj[j] += c;
            } else if let Some(i) = self.basis.iter().position(|&x| x == v) {
                self.obj_const += c * &self.consts[i];
                for j in 0..self.obj.len() {
                    let t = c * &self.table[i][j];
                    self.obj[j] += t;
                }
            }
        }
    }

    fn primal(&self, n: usize) -> Vec<Scalar> {
        let mut x = vec![Scalar::zero(); n];
        for (i, &v) in self.basis.iter().enumerate() {
            if v < n {
                x[v] = self.consts[i].clone();
            }
        }
        x
    }
}

/// Is `target` a convex combination of `points`?
pub fn in_convex_hull(points: &[Vec<Scalar>], target: &[Scalar]) -> bool {
    convex_weights(points, target).is_some()
}

/// Convex weights expressing `target` over `points`, if any.
pub fn convex_weights(points: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    if points.is_empty() {
        return None;
    }
    let k = points.len();
    let mut lp = LinearProgram::new(k);
    lp.all_nonnegative();
    for (axis, t) in target.iter().enumerate() {
        lp.add(
            points.iter().map(|p| p[axis].clone()).collect(),
            Relation::Eq,
            t.clone(),
        );
    }
    lp.add(vec![Scalar::one(); k], Relation::Eq, Scalar::one());
    lp.solve().point().map(<[Scalar]>::to_vec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn textbook_maximum() {
        // max 5x + 4y + 3z, 2x+3y+z<=5, 4x+y+2z<=11, 3x+4y+2z<=8  → 13 at (2,0,1)
        let mut lp = LinearProgram::new(3);
        lp.all_nonnegative();
        lp.add(v(&[2, 3, 1]), Relation::Le, int(5));
        lp.add(v(&[4, 1, 2]), Relation::Le, int(11));
        lp.add(v(&[3, 4, 2]), Relation::Le, int(8));
        lp.maximize(v(&[5, 4, 3]));
        match lp.solve() {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(value, int(13));
                assert_eq!(point, v(&[2, 0, 1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_variables_and_phase_one() {
        // min x + y with x >= 1/2, y >= -3, x + y >= 0, variables free.
        let mut lp = LinearProgram::new(2);
        lp.add(v(&[1, 0]), Relation::Ge, ratio(1, 2));
        lp.add(v(&[0, 1]), Relation::Ge, int(-3));
        lp.add(v(&[1, 1]), Relation::Ge, int(0));
        lp.minimize(v(&[1, 1]));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(0)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_detected() {
        let mut lp = LinearProgram::new(1);
        lp.add(v(&[1]), Relation::Ge, int(0));
        lp.maximize(v(&[1]));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn infeasible_conflict_is_itself_infeasible() {
        let mut lp = LinearProgram::new(2);
        lp.add(v(&[1, 1]), Relation::Le, int(10)); // irrelevant
        lp.add(v(&[1, 0]), Relation::Ge, int(2));
        lp.add(v(&[0, 1]), Relation::Le, int(7)); // irrelevant
        lp.add(v(&[1, 0]), Relation::Le, int(1));
        let LpOutcome::Infeasible { conflict } = lp.solve() else {
            panic!("expected infeasible");
        };
        assert_eq!(conflict, vec![1, 3]);
    }

    #[test]
    fn hull_membership() {
        let pts = vec![v(&[0, 0]), v(&[2, 0]), v(&[0, 2])];
        assert!(in_convex_hull(&pts, &v(&[1, 1])));
        assert!(!in_convex_hull(&pts, &v(&[2, 1])));
        let w = convex_weights(&pts, &v(&[1, 1])).unwrap();
        assert_eq!(w.iter().cloned().sum::<Scalar>(), int(1));
    }
}
