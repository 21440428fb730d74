use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Finitely generated abelian group `Z^free_rank + Z/f_1 + ... + Z/f_k` with `f_1 | f_2 | ... | f_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianGroupPresentation {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianGroupPresentation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupPresentation {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// Normalizes an arbitrary list of cyclic orders into invariant-factor form.
    pub fn new(free_rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut orders: Vec<BigInt> = orders.into_iter().map(|o| o.abs()).collect();
        if orders.iter().any(Zero::is_zero) {
            panic!("cyclic order 0 is not torsion; count it in free_rank");
        }
        // Regroup through prime-power-free gcd/lcm passes until the chain divides.
        orders.retain(|o| !o.is_one());
        orders.sort();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..orders.len() {
                for j in i + 1..orders.len() {
                    if !(&orders[j] % &orders[i]).is_zero() {
                        let g = orders[i].gcd(&orders[j]);
                        let l = orders[i].lcm(&orders[j]);
                        orders[i] = g;
                        orders[j] = l;
                        changed = true;
                    }
                }
            }
            orders.retain(|o| !o.is_one());
            orders.sort();
        }
        AbelianGroupPresentation {
            free_rank,
            invariant_factors: orders,
        }
    }

    pub fn from_u64(free_rank: usize, orders: &[u64]) -> Self {
        Self::new(free_rank, orders.iter().map(|&o| BigInt::from(o)))
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.invariant_factors
            .iter()
            .map(|f| u64::try_from(f).expect("invariant factor exceeds u64"))
            .collect()
    }

    /// Keeps the p-primary part of every invariant factor.
    pub fn localize(&self, p: u64) -> Self {
        Self::new(
            self.free_rank,
            self.invariant_factors.iter().map(|f| p_part(f, p)),
        )
    }
}

impl fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        for t in &self.invariant_factors {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Largest power of `p` dividing `n` (n != 0).
pub fn p_part(n: &BigInt, p: u64) -> BigInt {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut out = BigInt::one();
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        out *= &p;
    }
    out
}

/// Result of a Smith normal form computation: `u * m * v = d`.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).take_while(|&i| !self.d.get(i, i).is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    reduce(&mut d, Some(&mut u), Some(&mut v));
    SmithNormalForm { d, u, v }
}

/// Nonzero diagonal of the Smith form (the divisibility chain), without transforms.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let mut d = m.clone();
    reduce(&mut d, None, None)
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for r in t..a.rows() {
        for c in t..a.cols() {
            let x = a.get(r, c);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            let better = match &best {
                None => true,
                Some((_, _, b)) => ax < *b,
            };
            if better {
                let done = ax.is_one();
                best = Some((r, c, ax));
                if done {
                    break;
                }
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// In-place diagonalization with smallest-absolute-value pivoting.
/// Returns the nonzero diagonal entries, which form a divisibility chain.
fn reduce(a: &mut IntMatrix, mut u: Option<&mut IntMatrix>, mut v: Option<&mut IntMatrix>) -> Vec<BigInt> {
    let rows = a.rows();
    let cols = a.cols();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = smallest_nonzero(a, t) else {
            break;
        };
        a.swap_rows(t, pr);
        if let Some(u) = u.as_deref_mut() {
            u.swap_rows(t, pr);
        }
        a.swap_cols(t, pc);
        if let Some(v) = v.as_deref_mut() {
            v.swap_cols(t, pc);
        }
        loop {
            let mut dirty = false;
            let pivot = a.get(t, t).clone();
            for r in t + 1..rows {
                if a.get(r, t).is_zero() {
                    continue;
                }
                let q = -(a.get(r, t) / &pivot);
                a.add_row_multiple(r, t, &q, t);
                if let Some(u) = u.as_deref_mut() {
                    u.add_row_multiple(r, t, &q, 0);
                }
                dirty |= !a.get(r, t).is_zero();
            }
            for c in t + 1..cols {
                if a.get(t, c).is_zero() {
                    continue;
                }
                let q = -(a.get(t, c) / &pivot);
                a.add_col_multiple(c, t, &q, t);
                if let Some(v) = v.as_deref_mut() {
                    v.add_col_multiple(c, t, &q, 0);
                }
                dirty |= !a.get(t, c).is_zero();
            }
            if dirty {
                // A remainder smaller than the pivot survived; bring it to the pivot slot.
                let mut best = (t, t, a.get(t, t).abs());
                for r in t + 1..rows {
                    let x = a.get(r, t).abs();
                    if !x.is_zero() && x < best.2 {
                        best = (r, t, x);
                    }
                }
                for c in t + 1..cols {
                    let x = a.get(t, c).abs();
                    if !x.is_zero() && x < best.2 {
                        best = (t, c, x);
                    }
                }
                if best.0 != t {
                    a.swap_rows(t, best.0);
                    if let Some(u) = u.as_deref_mut() {
                        u.swap_rows(t, best.0);
                    }
                }
                if best.1 != t {
                    a.swap_cols(t, best.1);
                    if let Some(v) = v.as_deref_mut() {
                        v.swap_cols(t, best.1);
                    }
                }
                continue;
            }
            // Row and column are clear; enforce divisibility of the remaining block.
            let pivot = a.get(t, t).clone();
            let offender = (t + 1..rows).find(|&r| {
                (t + 1..cols).any(|c| !(a.get(r, c) % &pivot).is_zero())
            });
            match offender {
                Some(r) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, r, &one, t);
                    if let Some(u) = u.as_deref_mut() {
                        u.add_row_multiple(t, r, &one, 0);
                    }
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(t);
            }
        }
        t += 1;
    }
    (0..t).map(|i| a.get(i, i).clone()).collect()
}

pub fn rank(m: &IntMatrix) -> usize {
    elementary_divisors(m).len()
}

/// `Z^rows / column span of m`, optionally localized at `p`.
pub fn cokernel(m: &IntMatrix, p: Option<u64>) -> AbelianGroupPresentation {
    let divisors = elementary_divisors(m);
    let g = AbelianGroupPresentation::new(m.rows() - divisors.len(), divisors);
    match p {
        Some(p) => g.localize(p),
        None => g,
    }
}

/// Integral basis of the kernel of `m`, as columns of the returned matrix.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let n = m.cols();
    let mut k = IntMatrix::zeros(n, n - r);
    for (j, col) in (r..n).enumerate() {
        for i in 0..n {
            k.set(i, j, snf.v.get(i, col).clone());
        }
    }
    k
}

/// `ker(outgoing) / im(incoming)` localized at `p`.
///
/// The torsion of the homology equals the torsion of `coker(incoming)`, since the quotient of the
/// ambient lattice by `ker(outgoing)` embeds in a free module.
pub fn homology_at(incoming: &IntMatrix, outgoing: &IntMatrix, p: u64) -> Result<AbelianGroupPresentation> {
    let n = incoming.rows();
    if outgoing.cols() != n {
        return Err(Error::Dimension(format!(
            "incoming has {} rows but outgoing has {} columns",
            n,
            outgoing.cols()
        )));
    }
    let product = outgoing.mul(incoming);
    if !product.is_zero() {
        return Err(Error::CompositionNonzero {
            rows: product.rows(),
            cols: product.cols(),
        });
    }
    let rank_out = rank(outgoing);
    let inc = elementary_divisors(incoming);
    let free = n - rank_out - inc.len();
    Ok(AbelianGroupPresentation::new(free, inc).localize(p))
}
