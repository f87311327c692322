//! Gaussian elimination over an abstract field.
//!
//! The same routines run over exact rationals (and any other
//! `num_traits::Num` type) and over prime fields given by ring tables.

use std::marker::PhantomData;
use std::ops::Neg;

use num_traits::Num;

use crate::ring::FiniteCommRing;

/// Field operations on values of type `Elem`, possibly using context held
/// by `self` (the tables of a finite field).
pub trait Field {
    type Elem: Clone + PartialEq;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

/// Any `num_traits` scalar with division, e.g. `BigRational` or `f64`.
pub struct NumField<T>(PhantomData<T>);

impl<T> Default for NumField<T> {
    fn default() -> Self {
        NumField(PhantomData)
    }
}

impl<T: Num + Clone + Neg<Output = T>> Field for NumField<T> {
    type Elem = T;
    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }
    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn inv(&self, a: &T) -> T {
        T::one() / a.clone()
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
}

/// Finite fields given by tables. Callers must ensure the ring is a field.
impl Field for FiniteCommRing {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        FiniteCommRing::add(self, *a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        FiniteCommRing::sub(self, *a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        FiniteCommRing::mul(self, *a, *b)
    }
    fn inv(&self, a: &u32) -> u32 {
        FiniteCommRing::inv(self, *a).expect("nonzero field element is invertible")
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
}

/// Reduces `m` (rows of equal length) to reduced row echelon form in
/// place and returns the pivot columns.
pub fn row_reduce<F: Field>(f: &F, m: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else { continue };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]);
        for v in m[r].iter_mut() {
            *v = f.mul(v, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = f.sub(v, &f.mul(&factor, pv));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> usize {
    let mut work = m.to_vec();
    row_reduce(f, &mut work).len()
}

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution<E> {
    /// A basic solution: free variables set to zero.
    Solved { x: Vec<E>, unique: bool },
    /// No solution; `row` is an index of a reduced equation `0 = nonzero`.
    Inconsistent { row: usize },
}

/// Solves `A x = b` where `a` has one row per equation.
pub fn solve<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[F::Elem]) -> Solution<F::Elem> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<F::Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(f, &mut aug);
    if let Some(i) = pivots.iter().position(|&c| c == cols) {
        return Solution::Inconsistent { row: i };
    }
    let mut x = vec![f.zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Solution::Solved { unique: pivots.len() == cols, x }
}
