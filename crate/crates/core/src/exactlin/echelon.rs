use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Scalar;
use crate::par;

/// Reduced row echelon form: nonzero rows only, each with leading entry 1
/// at `pivots[i]`, and zeros above and below every pivot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub cols: usize,
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the null space `{v : R v = 0}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[free] = Scalar::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[free].is_zero() {
                        v[p] = -row[free].clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Clears denominators and divides out the content so the row is a primitive
/// integer vector. Returns `None` for a zero row.
fn primitive_row(row: &[Scalar]) -> Option<Vec<BigInt>> {
    let mut lcm = BigInt::one();
    let mut any = false;
    for x in row {
        if !x.is_zero() {
            any = true;
            lcm = lcm.lcm(x.denom());
        }
    }
    if !any {
        return None;
    }
    let mut ints: Vec<BigInt> = row
        .iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&lcm / x.denom())
            }
        })
        .collect();
    make_primitive(&mut ints);
    Some(ints)
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x /= &g;
        }
    }
}

/// `row <- (p/g) row - (a/g) pivot_row`, where `a = row[col]`, `p = pivot_row[col]`.
fn eliminate(row: &mut [BigInt], pivot_row: &[BigInt], col: usize) {
    let a = row[col].clone();
    if a.is_zero() {
        return;
    }
    let p = &pivot_row[col];
    let g = a.gcd(p);
    let row_mul = p / &g;
    let piv_mul = &a / &g;
    for (x, y) in row.iter_mut().zip(pivot_row) {
        if y.is_zero() {
            if !x.is_zero() && !row_mul.is_one() {
                *x *= &row_mul;
            }
        } else {
            *x = &*x * &row_mul - y * &piv_mul;
        }
    }
    make_primitive(row);
}

/// Fraction-free Gauss-Jordan elimination.
///
/// Rows are scaled to primitive integer vectors, eliminated with
/// cross-multiplication (no division until the end), and kept primitive after
/// every update, which bounds coefficient growth. A final pass divides each
/// pivot row by its pivot to give the unique reduced echelon form.
pub fn rref(rows: &[Vec<Scalar>], cols: usize) -> Rref {
    let mut pending: Vec<Vec<BigInt>> = rows
        .iter()
        .inspect(|r| debug_assert_eq!(r.len(), cols))
        .filter_map(|r| primitive_row(r))
        .map(|mut r| {
            if let Some(lead) = r.iter().find(|x| !x.is_zero()) {
                if lead.is_negative() {
                    r.iter_mut().for_each(|x| *x = -&*x);
                }
            }
            r
        })
        .collect();
    pending.sort();
    pending.dedup();

    let mut reduced: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();

    for col in 0..cols {
        if pending.is_empty() {
            break;
        }
        let best = pending
            .iter()
            .enumerate()
            .filter(|(_, r)| !r[col].is_zero())
            .min_by_key(|(_, r)| (r[col].bits(), r.iter().filter(|x| !x.is_zero()).count()))
            .map(|(i, _)| i);
        let Some(best) = best else { continue };
        let pivot_row = pending.swap_remove(best);

        par::for_each_mut(&mut pending, |row| eliminate(row, &pivot_row, col));
        par::for_each_mut(&mut reduced, |row| eliminate(row, &pivot_row, col));
        pending.retain(|r| r.iter().any(|x| !x.is_zero()));

        reduced.push(pivot_row);
        pivots.push(col);
    }

    let rows = par::map_slice(&reduced, |row| {
        let p = row.iter().find(|x| !x.is_zero()).expect("pivot row is nonzero");
        row.iter()
            .map(|x| BigRational::new(x.clone(), p.clone()))
            .collect::<Vec<_>>()
    });
    let pivots = rows
        .iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero"))
        .collect::<Vec<_>>();
    debug_assert!(pivots.windows(2).all(|w| w[0] < w[1]));

    Rref { cols, rows, pivots }
}
