//! Arithmetic and linear algebra over prime fields `Z/pZ` with `p < 2^32`.
//!
//! Products of two residues fit in a `u64`, so every routine here works on
//! plain `u64` values without widening.

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest primes below `2^31`, in decreasing order.
pub fn large_primes() -> impl Iterator<Item = u64> {
    (1..(1u64 << 31)).rev().step_by(2).filter(|&n| is_prime(n))
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
pub fn rref(rows: &mut Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(found) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = inv_mod(rows[rank][col], p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = (*v + (p - factor) * pv) % p;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// Basis of the right nullspace `{v : M v = 0}`, one vector per free column,
/// ordered by free column index.
pub fn nullspace(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let pivots = rref(&mut rows, ncols, p);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u64; ncols];
            v[free] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (p - row[free]) % p;
            }
            v
        })
        .collect()
}

/// Row echelon basis that grows one row at a time.
#[derive(Clone, Debug)]
pub struct IncrementalEchelon {
    p: u64,
    basis: Vec<(usize, Vec<u64>)>,
}

impl IncrementalEchelon {
    pub fn new(p: u64) -> Self {
        Self {
            p,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `row` (already reduced mod p) against the basis and keeps it
    /// if it is independent. Returns whether the rank grew.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        let p = self.p;
        for (pc, b) in &self.basis {
            let f = row[*pc];
            if f != 0 {
                let m = p - f;
                for (v, &bv) in row.iter_mut().zip(b) {
                    if bv != 0 {
                        *v = (*v + m * bv) % p;
                    }
                }
            }
        }
        match row.iter().position(|&v| v != 0) {
            Some(pc) => {
                let inv = inv_mod(row[pc], p);
                for v in row.iter_mut() {
                    *v = *v * inv % p;
                }
                self.basis.push((pc, row));
                true
            }
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
        let first: Vec<u64> = large_primes().take(2).collect();
        assert_eq!(first, vec![2_147_483_647, 2_147_483_629]);
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        // x + y + z = 0 over F_3
        let basis = nullspace(vec![vec![1, 1, 1], vec![2, 2, 2]], 3, 3);
        assert_eq!(basis, vec![vec![2, 1, 0], vec![2, 0, 1]]);
    }

    #[test]
    fn incremental_rank() {
        let mut e = IncrementalEchelon::new(7);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(!e.insert(vec![2, 4, 6]));
        assert!(e.insert(vec![0, 1, 0]));
        assert!(!e.insert(vec![1, 3, 3]));
        assert_eq!(e.rank(), 2);
    }
}
