//! Exact decision procedures: Hermite and Smith normal forms over the
//! integers, Gaussian elimination over prime fields, and linear solving over
//! group rings by passing to the regular representation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{inv_mod, BaseRing, Elem, Ring};

/// Row Hermite form `U·A = H`.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: Matrix,
    pub u: Matrix,
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows of `h`.
    pub pivots: Vec<usize>,
}

/// Smith form `U·A·V = D`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: Matrix,
    pub u: Matrix,
    pub v: Matrix,
    pub rank: usize,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank)
            .map(|i| self.d.get(i, i).as_int().expect("integer").clone())
            .collect()
    }
}

/// Invariants of a finitely generated module over the integers or a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleInvariants {
    Abelian { free_rank: usize, torsion: Vec<BigInt> },
    VectorSpace { dimension: usize },
}

impl ModuleInvariants {
    pub fn is_trivial(&self) -> bool {
        match self {
            ModuleInvariants::Abelian { free_rank, torsion } => *free_rank == 0 && torsion.is_empty(),
            ModuleInvariants::VectorSpace { dimension } => *dimension == 0,
        }
    }
}

impl fmt::Display for ModuleInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleInvariants::VectorSpace { dimension } => write!(f, "dim {dimension}"),
            ModuleInvariants::Abelian { free_rank, torsion } => {
                write!(f, "Z^{free_rank}")?;
                for t in torsion {
                    write!(f, " + Z/{t}")?;
                }
                Ok(())
            }
        }
    }
}

type IntRows = Vec<Vec<BigInt>>;

fn to_int_rows(a: &Matrix) -> IntRows {
    (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .map(|e| e.as_int().expect("integer entry").clone())
                .collect()
        })
        .collect()
}

fn from_int_rows(rows: IntRows, cols: usize) -> Matrix {
    let z = Ring::integers();
    let elems = rows
        .into_iter()
        .map(|r| r.into_iter().map(Elem::Int).collect())
        .collect();
    Matrix::from_rows(&z, cols, elems).expect("rectangular")
}

fn int_identity(n: usize) -> IntRows {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// `rows[i] -= q * rows[r]`
fn row_sub(rows: &mut IntRows, i: usize, r: usize, q: &BigInt) {
    if q.is_zero() || i == r {
        return;
    }
    let (src, dst) = if i < r {
        let (lo, hi) = rows.split_at_mut(r);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = rows.split_at_mut(i);
        (&lo[r], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

/// `column j -= q * column t`
fn col_sub(rows: &mut IntRows, j: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in rows.iter_mut() {
        if !row[t].is_zero() {
            let delta = q * &row[t];
            row[j] -= delta;
        }
    }
}

fn swap_cols(rows: &mut IntRows, a: usize, b: usize) {
    if a != b {
        for row in rows.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn negate_row(rows: &mut IntRows, r: usize) {
    for x in rows[r].iter_mut() {
        *x = -std::mem::take(x);
    }
}

fn require_integers(a: &Matrix, op: &'static str) -> Result<()> {
    if a.ring().is_integers() {
        Ok(())
    } else {
        Err(Error::Unsupported {
            op,
            ring: a.ring().descriptor(),
        })
    }
}

fn row_hnf_raw(mut a: IntRows, m: usize, n: usize) -> (IntRows, IntRows, Vec<usize>) {
    let mut u = int_identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&x, &y| a[x][c].magnitude().cmp(a[y][c].magnitude()));
            let Some(best) = best else { break };
            a.swap(r, best);
            u.swap(r, best);
            let mut clean = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                row_sub(&mut a, i, r, &q);
                row_sub(&mut u, i, r, &q);
                if !a[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            negate_row(&mut a, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            row_sub(&mut a, i, r, &q);
            row_sub(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    (a, u, pivots)
}

/// Row Hermite normal form of an integer matrix: `U·A = H`, `U` unimodular,
/// pivots positive with the entries above them reduced into `[0, pivot)`.
pub fn hnf(a: &Matrix) -> Result<HermiteForm> {
    require_integers(a, "hnf")?;
    let (m, n) = a.shape();
    let (h, u, pivots) = row_hnf_raw(to_int_rows(a), m, n);
    Ok(HermiteForm {
        h: from_int_rows(h, n),
        u: from_int_rows(u, m),
        rank: pivots.len(),
        pivots,
    })
}

/// Smith normal form of an integer matrix. Pivoting picks the smallest
/// nonzero magnitude, preferring the current diagonal slot on ties.
pub fn snf(a: &Matrix) -> Result<SmithForm> {
    require_integers(a, "snf")?;
    let (m, n) = a.shape();
    let mut d = to_int_rows(a);
    let mut u = int_identity(m);
    let mut v = int_identity(n);
    let mut rank = 0;
    'outer: for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            if !d[t][t].is_zero() {
                best = Some((t, t));
            }
            for i in t..m {
                for j in t..n {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if d[bi][bj].magnitude() <= d[i][j].magnitude() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);
            let mut clean = true;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                row_sub(&mut d, i, t, &q);
                row_sub(&mut u, i, t, &q);
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_sub(&mut d, j, t, &q);
                col_sub(&mut v, j, t, &q);
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d[i][j].is_multiple_of(&d[t][t]))
            });
            match bad_row {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_sub(&mut d, t, i, &minus_one);
                    row_sub(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
        rank += 1;
    }
    Ok(SmithForm {
        d: from_int_rows(d, n),
        u: from_int_rows(u, m),
        v: from_int_rows(v, n),
        rank,
    })
}

fn modulus(ring: &Ring) -> u64 {
    match ring.base() {
        BaseRing::PrimeField(p) => p,
        BaseRing::Integers => unreachable!("field expected"),
    }
}

fn to_mod_rows(a: &Matrix) -> Vec<Vec<u64>> {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(|e| e.as_mod().expect("field entry")).collect())
        .collect()
}

/// Reduced row echelon form in place, pivoting only in columns `< limit`.
fn rref_mod(rows: &mut [Vec<u64>], p: u64, limit: usize) -> Vec<usize> {
    let m = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit {
        if r == m {
            break;
        }
        let Some(pr) = (r..m).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let f = rows[i][c];
            let (src, dst) = if i < r {
                let (lo, hi) = rows.split_at_mut(r);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = rows.split_at_mut(i);
                (&lo[r], &mut hi[0])
            };
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                *d = (*d + (p - f) * s) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Finds one `X` with `A·X = B`.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch {
            left: a.ring().to_string(),
            right: b.ring().to_string(),
        });
    }
    if a.rows() != b.rows() {
        return Err(Error::shape("solve", a.shape(), b.shape()));
    }
    let ring = a.ring();
    if ring.is_group_ring() {
        let coords = solve(&a.restrict_scalars()?, &b.coefficient_columns()?)?;
        return Matrix::from_coefficient_columns(ring, &coords);
    }
    let x = if ring.is_field() {
        solve_field(a, b)?
    } else {
        solve_integers(a, b)?
    };
    debug_assert_eq!(a.mul(&x).as_ref(), Ok(b));
    Ok(x)
}

fn solve_field(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let p = modulus(a.ring());
    let (m, n) = a.shape();
    let k = b.cols();
    let mut aug: Vec<Vec<u64>> = (0..m)
        .map(|i| {
            a.row(i)
                .iter()
                .chain(b.row(i))
                .map(|e| e.as_mod().expect("field entry"))
                .collect()
        })
        .collect();
    let pivots = rref_mod(&mut aug, p, n);
    for row in aug.iter().skip(pivots.len()) {
        if row[n..].iter().any(|&x| x != 0) {
            return Err(Error::NoSolution);
        }
    }
    let mut x = Matrix::zeros(a.ring(), n, k);
    for (r, &c) in pivots.iter().enumerate() {
        for j in 0..k {
            x.set(c, j, Elem::Mod(aug[r][n + j]));
        }
    }
    Ok(x)
}

fn solve_integers(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let (m, n) = a.shape();
    // Column Hermite form A·V = H via the row form of the transpose.
    let (ht, u, pivots) = row_hnf_raw(to_int_rows(&a.transpose()), n, m);
    let rank = pivots.len();
    let mut x = vec![vec![BigInt::zero(); b.cols()]; n];
    for j in 0..b.cols() {
        let rhs: Vec<BigInt> = (0..m)
            .map(|i| b.get(i, j).as_int().expect("integer").clone())
            .collect();
        let mut y: Vec<BigInt> = Vec::with_capacity(rank);
        for (r, &c) in pivots.iter().enumerate() {
            let mut acc = rhs[c].clone();
            for (l, yl) in y.iter().enumerate() {
                acc -= &ht[l][c] * yl;
            }
            let (q, rem) = acc.div_rem(&ht[r][c]);
            if !rem.is_zero() {
                return Err(Error::NoSolution);
            }
            y.push(q);
        }
        for (i, want) in rhs.iter().enumerate() {
            let mut got = BigInt::zero();
            for (l, yl) in y.iter().enumerate() {
                got += &ht[l][i] * yl;
            }
            if &got != want {
                return Err(Error::NoSolution);
            }
        }
        for (i, row) in x.iter_mut().enumerate() {
            let mut acc = BigInt::zero();
            for (l, yl) in y.iter().enumerate() {
                acc += &u[l][i] * yl;
            }
            row[j] = acc;
        }
    }
    Ok(from_int_rows(x, b.cols()))
}

fn require_plain(a: &Matrix, op: &'static str) -> Result<()> {
    if a.ring().is_group_ring() {
        Err(Error::Unsupported {
            op,
            ring: a.ring().descriptor(),
        })
    } else {
        Ok(())
    }
}

/// Columns form a basis of `{x : A·x = 0}` (a lattice basis over the integers).
pub fn kernel_basis(a: &Matrix) -> Result<Matrix> {
    require_plain(a, "kernel_basis")?;
    let (m, n) = a.shape();
    if a.ring().is_field() {
        let p = modulus(a.ring());
        let mut rows = to_mod_rows(a);
        let pivots = rref_mod(&mut rows, p, n);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(a.ring(), n, free.len());
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, Elem::Mod(1));
            for (r, &c) in pivots.iter().enumerate() {
                k.set(c, col, Elem::Mod((p - rows[r][f]) % p));
            }
        }
        return Ok(k);
    }
    let (_, u, pivots) = row_hnf_raw(to_int_rows(&a.transpose()), n, m);
    let rank = pivots.len();
    let cols: IntRows = u.into_iter().skip(rank).collect();
    Ok(from_int_rows(cols, n).transpose())
}

/// Columns form a basis of the column span of `A`.
pub fn image_basis(a: &Matrix) -> Result<Matrix> {
    require_plain(a, "image_basis")?;
    let (m, n) = a.shape();
    if a.ring().is_field() {
        let mut rows = to_mod_rows(a);
        let pivots = rref_mod(&mut rows, modulus(a.ring()), n);
        return Ok(Matrix::from_fn(a.ring(), m, pivots.len(), |i, j| {
            a.get(i, pivots[j]).clone()
        }));
    }
    let (ht, _, pivots) = row_hnf_raw(to_int_rows(&a.transpose()), n, m);
    let basis: IntRows = ht.into_iter().take(pivots.len()).collect();
    Ok(from_int_rows(basis, m).transpose())
}

pub fn rank(a: &Matrix) -> Result<usize> {
    require_plain(a, "rank")?;
    if a.ring().is_field() {
        let mut rows = to_mod_rows(a);
        return Ok(rref_mod(&mut rows, modulus(a.ring()), a.cols()).len());
    }
    Ok(hnf(a)?.rank)
}

/// Invariants of `coker(A)` for `A: R^n -> R^m`.
pub fn cokernel_invariants(a: &Matrix) -> Result<ModuleInvariants> {
    require_plain(a, "cokernel_invariants")?;
    if a.ring().is_field() {
        return Ok(ModuleInvariants::VectorSpace {
            dimension: a.rows() - rank(a)?,
        });
    }
    let s = snf(a)?;
    let torsion = s
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect();
    Ok(ModuleInvariants::Abelian {
        free_rank: a.rows() - s.rank,
        torsion,
    })
}
