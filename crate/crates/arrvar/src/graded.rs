//! Dimensions of graded components of the Cox ring: lattice-point counting
//! on degree fibers with inclusion–exclusion over the relations.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::VarietyModel;
use crate::lattice::{dot, FgAbGroup, GroupElement, RatMatrix};
use crate::polyhedral::Cone;
use crate::varspec::{relation_degrees, Relation};

/// A pointed grading of a polynomial ring by a finitely generated abelian
/// group together with the relations of the quotient ring.
#[derive(Clone, Debug)]
pub struct Grading {
    group: FgAbGroup,
    weights: Vec<GroupElement>,
    relations: Vec<Relation>,
    relation_degrees: Vec<GroupElement>,
    functional: Vec<BigInt>,
}

impl Grading {
    pub fn new(group: FgAbGroup, weights: Vec<GroupElement>, relations: Vec<Relation>) -> Result<Grading> {
        let k = group.free_rank();
        let relation_degrees = relation_degrees(&group, &relations)?;
        let functional = if weights.is_empty() {
            vec![BigInt::zero(); k]
        } else {
            let eff = Cone::new(k, weights.iter().map(|w| w.free.clone()).collect())?;
            if !eff.is_pointed() {
                return Err(Error::NotPointed);
            }
            let mut f = vec![BigInt::zero(); k];
            for ray in eff.dual().generators() {
                for (a, b) in f.iter_mut().zip(&ray) {
                    *a += b;
                }
            }
            f
        };
        if weights.iter().any(|w| !dot(&functional, &w.free).is_positive()) {
            return Err(Error::NotPointed);
        }
        Ok(Grading { group, weights, relations, relation_degrees, functional })
    }

    pub fn from_model(model: &VarietyModel) -> Result<Grading> {
        Grading::new(model.group().clone(), model.weights().to_vec(), model.spec().relations())
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn relation_degrees(&self) -> &[GroupElement] {
        &self.relation_degrees
    }

    /// Number of monomials of degree `w`.
    pub fn count_monomials(&self, w: &GroupElement) -> Result<u128> {
        self.group.check(w)?;
        let mut memo = HashMap::new();
        Ok(self.count_from(0, w.clone(), &mut memo))
    }

    fn count_from(&self, q: usize, rest: GroupElement, memo: &mut HashMap<(usize, GroupElement), u128>) -> u128 {
        if q == self.weights.len() {
            return u128::from(rest == self.group.zero());
        }
        let budget = dot(&self.functional, &rest.free);
        if budget.is_negative() {
            return 0;
        }
        if let Some(&v) = memo.get(&(q, rest.clone())) {
            return v;
        }
        let step = dot(&self.functional, &self.weights[q].free);
        let mut total = 0u128;
        let mut cur = rest.clone();
        let mut used = BigInt::zero();
        while used <= budget {
            total += self.count_from(q + 1, cur.clone(), memo);
            cur = self.group.sub(&cur, &self.weights[q]);
            used += &step;
        }
        memo.insert((q, rest), total);
        total
    }

    /// Exponent vectors of all monomials of degree `w`; fails when there
    /// are more than `limit` of them.
    pub fn monomials(&self, w: &GroupElement, limit: usize) -> Result<Vec<Vec<u32>>> {
        let count = self.count_monomials(w)?;
        if count > limit as u128 {
            return Err(Error::BudgetExceeded(format!("{count} monomials exceed the limit {limit}")));
        }
        let mut out = Vec::new();
        let mut current = vec![0u32; self.weights.len()];
        let mut memo = HashMap::new();
        self.collect_from(0, w.clone(), &mut current, &mut out, &mut memo);
        Ok(out)
    }

    fn collect_from(
        &self,
        q: usize,
        rest: GroupElement,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        memo: &mut HashMap<(usize, GroupElement), u128>,
    ) {
        if self.count_from(q, rest.clone(), memo) == 0 {
            return;
        }
        if q == self.weights.len() {
            out.push(current.clone());
            return;
        }
        let mut cur = rest;
        let mut e = 0u32;
        while !dot(&self.functional, &cur.free).is_negative() {
            current[q] = e;
            self.collect_from(q + 1, cur.clone(), current, out, memo);
            cur = self.group.sub(&cur, &self.weights[q]);
            e += 1;
        }
        current[q] = 0;
    }

    /// `dim R_w` by inclusion–exclusion over the relations, which form a
    /// regular sequence.
    pub fn graded_dim(&self, w: &GroupElement) -> Result<u128> {
        let t = self.relation_degrees.len();
        let mut total: i128 = 0;
        for mask in 0u64..(1u64 << t) {
            let mut target = w.clone();
            for (i, d) in self.relation_degrees.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    target = self.group.sub(&target, d);
                }
            }
            let c = self.count_monomials(&target)? as i128;
            if mask.count_ones() % 2 == 0 {
                total += c;
            } else {
                total -= c;
            }
        }
        u128::try_from(total).map_err(|_| Error::Invalid("negative graded dimension; relations not regular".into()))
    }

    /// `dim R_w` as the number of degree-`w` monomials minus the rank of the
    /// degree-`w` part of the ideal spanned by monomial multiples of the
    /// relations.
    pub fn graded_dim_by_rank(&self, w: &GroupElement, limit: usize) -> Result<u128> {
        let basis = self.monomials(w, limit)?;
        let index: HashMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for (rel, deg) in self.relations.iter().zip(&self.relation_degrees) {
            let shift = self.group.sub(w, deg);
            for mono in self.monomials(&shift, limit)? {
                let mut row = vec![BigRational::zero(); basis.len()];
                for term in &rel.terms {
                    let e: Vec<u32> = mono.iter().zip(&term.exponents).map(|(a, b)| a + b).collect();
                    let i = *index.get(&e).ok_or_else(|| Error::InconsistentDegrees("relation term outside degree".into()))?;
                    row[i] += &term.coeff;
                }
                rows.push(row);
            }
        }
        let rank = if rows.is_empty() { 0 } else { RatMatrix::from_rows(basis.len(), rows)?.rank() };
        Ok((basis.len() - rank) as u128)
    }
}

pub fn count_monomials(model: &VarietyModel, w: &GroupElement) -> Result<u128> {
    Grading::from_model(model)?.count_monomials(w)
}

pub fn graded_dim(model: &VarietyModel, w: &GroupElement) -> Result<u128> {
    Grading::from_model(model)?.graded_dim(w)
}

pub fn graded_dim_by_rank(model: &VarietyModel, w: &GroupElement, limit: usize) -> Result<u128> {
    Grading::from_model(model)?.graded_dim_by_rank(w, limit)
}
