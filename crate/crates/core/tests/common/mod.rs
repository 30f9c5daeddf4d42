#![allow(dead_code)]

use schanuel::linalg;
use schanuel::resolution::{generate_resolution, random_presentation};
use schanuel::{ChainComplex, Error, GroupTable, Matrix, ModulePresentation, Result, Ring, TruncatedResolution};
use schanuel::BaseRing;

/// Generators over the group ring of the kernel of `d`, picked greedily
/// from a base-ring kernel basis of its restriction.
pub fn kernel_generators(d: &Matrix) -> Result<Matrix> {
    let ring = d.ring().clone();
    let width = d.cols();
    let basis = linalg::kernel_basis(&d.restrict_scalars()?)?;
    let columns: Vec<Matrix> = (0..basis.cols())
        .map(|j| Matrix::from_coefficient_columns(&ring, &basis.submatrix(0..basis.rows(), j..j + 1)))
        .collect::<Result<_>>()?;
    let mut chosen: Vec<Matrix> = Vec::new();
    for c in columns {
        let covered = !chosen.is_empty() && {
            let span = Matrix::hcat(&chosen.iter().collect::<Vec<_>>())?;
            linalg::solve(&span, &c).is_ok()
        };
        if !covered {
            chosen.push(c);
        }
    }
    if chosen.is_empty() {
        return Ok(Matrix::zeros(&ring, width, 0));
    }
    Matrix::hcat(&chosen.iter().collect::<Vec<_>>())
}

/// Extends a resolution ending in `d_1` to length `n` by kernel generators.
pub fn resolve(
    presentation: ModulePresentation,
    augmentation: Matrix,
    d1: Matrix,
    n: usize,
) -> Result<TruncatedResolution> {
    let ring = d1.ring().clone();
    let mut ranks = vec![d1.rows(), d1.cols()];
    let mut boundaries = vec![d1];
    while boundaries.len() < n {
        let next = kernel_generators(boundaries.last().expect("nonempty"))?;
        ranks.push(next.cols());
        boundaries.push(next);
    }
    let complex = ChainComplex::new(&ring, ranks, boundaries)?;
    TruncatedResolution::new(presentation, complex, augmentation)
}

pub fn s3_ring() -> Ring {
    Ring::group_ring(BaseRing::Integers, GroupTable::symmetric3())
}

/// The trivial module over the integral group ring of S3, presented by the
/// augmentation ideal `(g1 - 1, g3 - 1)`.
pub fn s3_trivial_presentation() -> ModulePresentation {
    let ring = s3_ring();
    let rel = |s: &str| ring.parse(s).unwrap();
    ModulePresentation::new(Matrix::from_rows(&ring, 2, vec![vec![rel("g1-1"), rel("g3-1")]]).unwrap())
}

/// A length-2 resolution of the trivial S3-module whose first boundary has
/// the given entries (which must generate the augmentation ideal).
pub fn s3_resolution(first_boundary: &[&str], n: usize) -> Result<TruncatedResolution> {
    let ring = s3_ring();
    let row = first_boundary
        .iter()
        .map(|s| ring.parse(s))
        .collect::<Result<Vec<_>>>()?;
    let d1 = Matrix::from_rows(&ring, row.len(), vec![row])?;
    resolve(s3_trivial_presentation(), Matrix::identity(&ring, 1), d1, n)
}

pub fn ring_for(index: usize) -> Ring {
    match index % 3 {
        0 => Ring::prime_field(2).unwrap(),
        1 => Ring::prime_field(5).unwrap(),
        _ => Ring::integers(),
    }
}

/// Two independent random resolutions of one random module.
pub fn random_pair(ring: &Ring, n: usize, max_rank: usize, seed: u64) -> Result<(TruncatedResolution, TruncatedResolution)> {
    let pres = random_presentation(ring, seed);
    let p = generate_resolution(&pres, n, max_rank, seed.wrapping_mul(2).wrapping_add(1))?;
    let q = generate_resolution(&pres, n, max_rank, seed.wrapping_mul(2).wrapping_add(2))?;
    Ok((p, q))
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn bareiss_determinant(m: &Matrix) -> num_bigint::BigInt {
    use num_traits::{One, Zero};
    let n = m.rows();
    let mut a: Vec<Vec<num_bigint::BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).as_int().unwrap().clone()).collect())
        .collect();
    let mut sign = num_bigint::BigInt::one();
    let mut prev = num_bigint::BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return num_bigint::BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return num_bigint::BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

pub fn expect_lift_failure(e: Error) -> Option<usize> {
    match e {
        Error::LiftFailed { degree, .. } => Some(degree),
        _ => None,
    }
}

type Big = num_bigint::BigInt;
type Dense = Vec<Vec<Big>>;

fn dense(m: &serde_json::Value) -> Dense {
    let rows = m["rows"].as_u64().unwrap() as usize;
    let cols = m["cols"].as_u64().unwrap() as usize;
    (0..rows)
        .map(|i| (0..cols).map(|j| m["entries"][i][j].as_str().unwrap().parse().unwrap()).collect())
        .collect()
}

struct Arith {
    modulus: Option<Big>,
}

impl Arith {
    fn reduce(&self, v: Big) -> Big {
        use num_integer::Integer;
        match &self.modulus {
            Some(p) => v.mod_floor(p),
            None => v,
        }
    }

    fn mul(&self, a: &Dense, b: &Dense, inner: usize, cols: usize) -> Dense {
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| self.reduce((0..inner).map(|k| &row[k] * &b[k][j]).sum()))
                    .collect()
            })
            .collect()
    }

    fn sub(&self, a: &Dense, b: &Dense) -> Dense {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.iter().zip(y).map(|(u, v)| self.reduce(u - v)).collect())
            .collect()
    }

    fn add(&self, a: &Dense, b: &Dense) -> Dense {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.iter().zip(y).map(|(u, v)| self.reduce(u + v)).collect())
            .collect()
    }
}

fn zero(rows: usize, cols: usize) -> Dense {
    vec![vec![Big::from(0); cols]; rows]
}

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| Big::from((i == j) as i32)).collect())
        .collect()
}

struct Cx {
    ranks: Vec<usize>,
    d: Vec<Dense>,
}

fn complex(c: &serde_json::Value) -> Cx {
    let ranks: Vec<usize> = c["ranks"].as_array().unwrap().iter().map(|r| r.as_u64().unwrap() as usize).collect();
    let mut d = vec![Vec::new(); ranks.len() - 1];
    for b in c["boundaries"].as_array().unwrap() {
        d[b["degree"].as_u64().unwrap() as usize - 1] = dense(&b["matrix"]);
    }
    Cx { ranks, d }
}

/// Independent check of a base-ring certificate file: recomputes every
/// identity with naive dense arithmetic straight from the JSON.
pub fn json_certificate_identities_hold(text: &str) -> bool {
    let doc: serde_json::Value = serde_json::from_str(text).unwrap();
    let modulus = doc["ring"].as_str().unwrap().strip_prefix("Fp:").map(|p| p.parse::<Big>().unwrap());
    let ar = Arith { modulus };
    let pl = &doc["payload"];
    let c = complex(&pl["first"]);
    let d = complex(&pl["second"]);
    let maps = |key: &str| -> Vec<Dense> { pl[key].as_array().unwrap().iter().map(dense).collect() };
    let (f, g, s, t) = (maps("forward"), maps("backward"), maps("source_homotopy"), maps("target_homotopy"));
    let n = c.ranks.len() - 1;
    for x in [&c, &d] {
        for i in 1..n {
            if ar.mul(&x.d[i - 1], &x.d[i], x.ranks[i], x.ranks[i + 1]) != zero(x.ranks[i - 1], x.ranks[i + 1]) {
                return false;
            }
        }
    }
    let chain_map = |m: &[Dense], a: &Cx, b: &Cx| {
        (1..=n).all(|i| {
            ar.mul(&b.d[i - 1], &m[i], b.ranks[i], a.ranks[i]) == ar.mul(&m[i - 1], &a.d[i - 1], a.ranks[i - 1], a.ranks[i])
        })
    };
    if !chain_map(&f, &c, &d) || !chain_map(&g, &d, &c) {
        return false;
    }
    let homotopy = |h: &[Dense], first: &[Dense], second: &[Dense], x: &Cx, y: &Cx| {
        (0..=n).all(|i| {
            let composite = ar.mul(&second[i], &first[i], y.ranks[i], x.ranks[i]);
            let lhs = ar.sub(&composite, &identity(x.ranks[i]));
            let mut rhs = zero(x.ranks[i], x.ranks[i]);
            if i < n {
                rhs = ar.add(&rhs, &ar.mul(&x.d[i], &h[i], x.ranks[i + 1], x.ranks[i]));
            }
            if i > 0 {
                rhs = ar.add(&rhs, &ar.mul(&h[i - 1], &x.d[i - 1], x.ranks[i - 1], x.ranks[i]));
            }
            lhs == rhs
        })
    };
    homotopy(&s, &f, &g, &c, &d) && homotopy(&t, &g, &f, &d, &c)
}
