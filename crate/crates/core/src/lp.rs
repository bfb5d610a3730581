//! Exact linear programming over the rationals.
//!
//! Dense two-phase simplex with Bland's rule, so termination is guaranteed
//! and every pivot is exact. Problems are stated over named variables that
//! are either free or nonnegative, with `<=`, `=`, `>=` constraints and an
//! optional linear objective; a problem without an objective is a pure
//! feasibility question (reported as `Optimal` with value `0`).
//!
//! Each outcome carries evidence that re-validates by substitution:
//!
//! - `Optimal`: the point satisfies every constraint and attains the value.
//! - `Unbounded`: the ray keeps any feasible point feasible for every
//!   nonnegative step and strictly improves the objective.
//! - `Infeasible`: Farkas multipliers, one per constraint, combining the
//!   constraints into an exact contradiction. Multiplier signs follow the
//!   constraint sense (`>= 0` for `>=` rows, `<= 0` for `<=` rows, free for
//!   equalities); the combined left side must be nonpositive on nonnegative
//!   variables, zero on free variables, while the combined right side is
//!   positive.

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SignRestriction {
    NonNegative,
    Free,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    LessEq,
    Equal,
    GreaterEq,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug)]
pub struct Variable {
    pub name: String,
    pub restriction: SignRestriction,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug)]
pub struct Objective {
    pub coefficients: Vec<Rational>,
    pub direction: Direction,
}

#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    variables: Vec<Variable>,
    constraints: Vec<Constraint>,
    objective: Option<Objective>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Unbounded { ray: Vec<Rational> },
    Infeasible { certificate: Vec<Rational> },
}

impl LinearProgram {
    pub fn new() -> Self {
        LinearProgram::default()
    }

    pub fn add_var(&mut self, name: impl Into<String>, restriction: SignRestriction) -> usize {
        self.variables.push(Variable { name: name.into(), restriction });
        self.variables.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn constrain(
        &mut self,
        coefficients: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<()> {
        if coefficients.len() != self.variables.len() {
            return Err(Error::DimensionMismatch {
                expected: self.variables.len(),
                got: coefficients.len(),
            });
        }
        self.constraints.push(Constraint { coefficients, relation, rhs });
        Ok(())
    }

    pub fn set_objective(&mut self, coefficients: Vec<Rational>, direction: Direction) -> Result<()> {
        if coefficients.len() != self.variables.len() {
            return Err(Error::DimensionMismatch {
                expected: self.variables.len(),
                got: coefficients.len(),
            });
        }
        self.objective = Some(Objective { coefficients, direction });
        Ok(())
    }

    pub fn objective_value(&self, point: &[Rational]) -> Rational {
        match &self.objective {
            None => Rational::zero(),
            Some(obj) => dot(&obj.coefficients, point),
        }
    }

    /// Exact feasibility check by substitution.
    pub fn point_is_feasible(&self, point: &[Rational]) -> bool {
        if point.len() != self.variables.len() {
            return false;
        }
        for (var, value) in self.variables.iter().zip(point) {
            if var.restriction == SignRestriction::NonNegative && value.is_negative() {
                return false;
            }
        }
        self.constraints.iter().all(|c| {
            let lhs = dot(&c.coefficients, point);
            match c.relation {
                Relation::LessEq => lhs <= c.rhs,
                Relation::Equal => lhs == c.rhs,
                Relation::GreaterEq => lhs >= c.rhs,
            }
        })
    }

    /// A valid ray preserves feasibility for every nonnegative step from any
    /// feasible point and strictly improves the objective.
    pub fn ray_is_valid(&self, ray: &[Rational]) -> bool {
        if ray.len() != self.variables.len() {
            return false;
        }
        for (var, value) in self.variables.iter().zip(ray) {
            if var.restriction == SignRestriction::NonNegative && value.is_negative() {
                return false;
            }
        }
        let direction_ok = self.constraints.iter().all(|c| {
            let rate = dot(&c.coefficients, ray);
            match c.relation {
                Relation::LessEq => !rate.is_positive(),
                Relation::Equal => rate.is_zero(),
                Relation::GreaterEq => !rate.is_negative(),
            }
        });
        if !direction_ok {
            return false;
        }
        match &self.objective {
            None => false,
            Some(obj) => {
                let rate = dot(&obj.coefficients, ray);
                match obj.direction {
                    Direction::Maximize => rate.is_positive(),
                    Direction::Minimize => rate.is_negative(),
                }
            }
        }
    }

    /// Checks Farkas multipliers: sign-compatible per constraint, combined
    /// row nonpositive on nonnegative variables and zero on free ones, and
    /// combined right side positive. Any feasible point would then satisfy
    /// `0 >= combined row * x >= combined rhs > 0`.
    pub fn certificate_is_valid(&self, certificate: &[Rational]) -> bool {
        if certificate.len() != self.constraints.len() {
            return false;
        }
        for (c, lambda) in self.constraints.iter().zip(certificate) {
            let sign_ok = match c.relation {
                Relation::LessEq => !lambda.is_positive(),
                Relation::GreaterEq => !lambda.is_negative(),
                Relation::Equal => true,
            };
            if !sign_ok {
                return false;
            }
        }
        let mut combined = vec![Rational::zero(); self.variables.len()];
        let mut combined_rhs = Rational::zero();
        for (c, lambda) in self.constraints.iter().zip(certificate) {
            for (acc, coef) in combined.iter_mut().zip(&c.coefficients) {
                *acc += &(coef * lambda);
            }
            combined_rhs += &(&c.rhs * lambda);
        }
        for (var, g) in self.variables.iter().zip(&combined) {
            match var.restriction {
                SignRestriction::NonNegative => {
                    if g.is_positive() {
                        return false;
                    }
                }
                SignRestriction::Free => {
                    if !g.is_zero() {
                        return false;
                    }
                }
            }
        }
        combined_rhs.is_positive()
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        Simplex::build(self)?.run(self)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// Standard-form tableau. Free variables are split into differences of two
/// nonnegative columns; every row gets `sigma` in {+1, -1} chosen to make the
/// right side nonnegative, a slack or surplus column where the relation needs
/// one, and an artificial column for the phase-one basis.
struct Simplex {
    tableau: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    // For column j < art_start: the original variable index and the sign
    // with which the column contributes to it. Slack columns map to None.
    col_origin: Vec<Option<(usize, i8)>>,
    art_start: usize,
    num_cols: usize,
    sigma: Vec<i8>,
}

impl Simplex {
    fn build(lp: &LinearProgram) -> Result<Simplex> {
        let m = lp.constraints.len();
        let mut col_origin: Vec<Option<(usize, i8)>> = Vec::new();
        // var_cols[v] lists the standard-form columns of original variable v.
        let mut var_cols: Vec<Vec<usize>> = vec![Vec::new(); lp.variables.len()];
        for (v, var) in lp.variables.iter().enumerate() {
            var_cols[v].push(col_origin.len());
            col_origin.push(Some((v, 1)));
            if var.restriction == SignRestriction::Free {
                var_cols[v].push(col_origin.len());
                col_origin.push(Some((v, -1)));
            }
        }
        let structural = col_origin.len();
        let slack_count =
            lp.constraints.iter().filter(|c| c.relation != Relation::Equal).count();
        let art_start = structural + slack_count;
        let num_cols = art_start + m;
        col_origin.resize(art_start, None);

        let mut tableau = vec![vec![Rational::zero(); num_cols]; m];
        let mut rhs = Vec::with_capacity(m);
        let mut sigma = Vec::with_capacity(m);
        let mut next_slack = structural;
        for (i, c) in lp.constraints.iter().enumerate() {
            let flip = c.rhs.is_negative();
            let s: i8 = if flip { -1 } else { 1 };
            sigma.push(s);
            let apply = |v: &Rational| if flip { -v } else { v.clone() };
            for (col, origin) in col_origin.iter().enumerate().take(structural) {
                let (v, sign) = origin.expect("structural column");
                let coef = &c.coefficients[v];
                if coef.is_zero() {
                    continue;
                }
                let signed = if sign > 0 { coef.clone() } else { -coef };
                tableau[i][col] = apply(&signed);
            }
            match c.relation {
                Relation::LessEq => {
                    tableau[i][next_slack] = apply(&Rational::one());
                    next_slack += 1;
                }
                Relation::GreaterEq => {
                    tableau[i][next_slack] = apply(&-Rational::one());
                    next_slack += 1;
                }
                Relation::Equal => {}
            }
            tableau[i][art_start + i] = Rational::one();
            rhs.push(apply(&c.rhs));
        }
        let basis: Vec<usize> = (0..m).map(|i| art_start + i).collect();
        Ok(Simplex { tableau, rhs, basis, col_origin, art_start, num_cols, sigma })
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.tableau[row][col].clone();
        for v in self.tableau[row].iter_mut() {
            *v = &*v / &pivot;
        }
        self.rhs[row] = &self.rhs[row] / &pivot;
        for r in 0..self.tableau.len() {
            if r == row {
                continue;
            }
            let factor = self.tableau[r][col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..self.num_cols {
                if self.tableau[row][j].is_zero() {
                    continue;
                }
                let delta = &self.tableau[row][j] * &factor;
                self.tableau[r][j] -= &delta;
            }
            let delta = &self.rhs[row] * &factor;
            self.rhs[r] -= &delta;
        }
        self.basis[row] = col;
    }

    fn reduced_cost(&self, costs: &[Rational], col: usize) -> Rational {
        let mut rc = costs[col].clone();
        for (i, &b) in self.basis.iter().enumerate() {
            if !costs[b].is_zero() && !self.tableau[i][col].is_zero() {
                rc -= &(&costs[b] * &self.tableau[i][col]);
            }
        }
        rc
    }

    /// Bland's rule: lowest eligible entering column, ties on the leaving
    /// row broken by lowest basic column. Returns the unbounded entering
    /// column if no ratio bounds the step.
    fn iterate(&mut self, costs: &[Rational], live_cols: usize) -> Option<usize> {
        loop {
            let mut entering = None;
            for j in 0..live_cols {
                if self.basis.contains(&j) {
                    continue;
                }
                if self.reduced_cost(costs, j).is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else { return None };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.tableau.len() {
                if !self.tableau[i][j].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.tableau[i][j];
                let better = match &leave {
                    None => true,
                    Some((best_i, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*best_i])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Some(j),
                Some((i, _)) => self.pivot(i, j),
            }
        }
    }

    fn run(mut self, lp: &LinearProgram) -> Result<LpOutcome> {
        // Phase one: minimize the sum of artificials.
        let mut costs1 = vec![Rational::zero(); self.num_cols];
        for c in costs1.iter_mut().skip(self.art_start) {
            *c = Rational::one();
        }
        let unbounded = self.iterate(&costs1, self.num_cols);
        debug_assert!(unbounded.is_none(), "phase one is bounded below by zero");
        let infeasibility: Rational = self
            .basis
            .iter()
            .zip(&self.rhs)
            .filter(|(b, _)| **b >= self.art_start)
            .map(|(_, v)| v.clone())
            .fold(Rational::zero(), |acc, v| acc + v);
        if infeasibility.is_positive() {
            // Farkas multipliers from the phase-one duals: y = c_B B^-1 read
            // off the artificial columns, mapped back through the row signs.
            let mut certificate = Vec::with_capacity(self.tableau.len());
            for k in 0..self.tableau.len() {
                let mut y_k = Rational::zero();
                for (i, &b) in self.basis.iter().enumerate() {
                    if b >= self.art_start {
                        y_k += &self.tableau[i][self.art_start + k];
                    }
                }
                if self.sigma[k] < 0 {
                    y_k = -y_k;
                }
                certificate.push(y_k);
            }
            debug_assert!(lp.certificate_is_valid(&certificate));
            return Ok(LpOutcome::Infeasible { certificate });
        }

        // Drive leftover artificials out of the basis; rows that cannot
        // pivot are redundant and get dropped.
        let mut row = 0;
        while row < self.tableau.len() {
            if self.basis[row] >= self.art_start {
                debug_assert!(self.rhs[row].is_zero());
                let col = (0..self.art_start).find(|&j| !self.tableau[row][j].is_zero());
                match col {
                    Some(j) => self.pivot(row, j),
                    None => {
                        self.tableau.remove(row);
                        self.rhs.remove(row);
                        self.basis.remove(row);
                        continue;
                    }
                }
            }
            row += 1;
        }

        // Phase two over the real objective in minimization form.
        let mut costs2 = vec![Rational::zero(); self.num_cols];
        if let Some(obj) = &lp.objective {
            for (col, origin) in self.col_origin.iter().enumerate().take(self.art_start) {
                if let Some((v, sign)) = origin {
                    let c = &obj.coefficients[*v];
                    if c.is_zero() {
                        continue;
                    }
                    let signed = if *sign > 0 { c.clone() } else { -c };
                    costs2[col] = match obj.direction {
                        Direction::Maximize => -signed,
                        Direction::Minimize => signed,
                    };
                }
            }
        }
        if let Some(entering) = self.iterate(&costs2, self.art_start) {
            let mut ray = vec![Rational::zero(); lp.variables.len()];
            self.accumulate(&mut ray, entering, &Rational::one());
            for (i, &b) in self.basis.iter().enumerate() {
                if !self.tableau[i][entering].is_zero() {
                    self.accumulate(&mut ray, b, &-&self.tableau[i][entering]);
                }
            }
            debug_assert!(lp.ray_is_valid(&ray));
            return Ok(LpOutcome::Unbounded { ray });
        }
        let mut point = vec![Rational::zero(); lp.variables.len()];
        for (i, &b) in self.basis.iter().enumerate() {
            let v = self.rhs[i].clone();
            self.accumulate(&mut point, b, &v);
        }
        debug_assert!(lp.point_is_feasible(&point));
        let value = lp.objective_value(&point);
        Ok(LpOutcome::Optimal { value, point })
    }

    /// Adds `weight` times standard-form column `col` into the original
    /// variable space.
    fn accumulate(&self, out: &mut [Rational], col: usize, weight: &Rational) {
        if col >= self.art_start || weight.is_zero() {
            return;
        }
        if let Some((v, sign)) = self.col_origin[col] {
            if sign > 0 {
                out[v] += weight;
            } else {
                out[v] -= weight;
            }
        }
    }
}
