//! Presented modules and truncated free resolutions of them.
//!
//! A module is always `coker(ρ)` for a relation matrix `ρ`; a resolution
//! `P_n -> ... -> P_0 -> M -> 0` carries the augmentation as a matrix into
//! the ambient free module of the presentation. No exactness is demanded at
//! the top term `P_n`.

use std::fmt;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{ChainComplex, Failure, Validation};
use crate::error::{Error, Result};
use crate::linalg::{self, ModuleInvariants};
use crate::matrix::Matrix;
use crate::ring::{BaseRing, Elem, GroupTable, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    relations: Matrix,
}

impl ModulePresentation {
    pub fn new(relations: Matrix) -> Self {
        ModulePresentation { relations }
    }

    /// The free module of rank `m` (no relations).
    pub fn free(ring: &Ring, m: usize) -> Self {
        ModulePresentation::new(Matrix::zeros(ring, m, 0))
    }

    pub fn ring(&self) -> &Ring {
        self.relations.ring()
    }

    pub fn ambient_rank(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    /// Invariants of `coker(ρ)` over the base ring.
    pub fn invariants(&self) -> Result<ModuleInvariants> {
        if self.ring().is_group_ring() {
            linalg::cokernel_invariants(&self.relations.restrict_scalars()?)
        } else {
            linalg::cokernel_invariants(&self.relations)
        }
    }
}

/// Whether a resolution is stored as a chain complex augmented onto
/// `coker(ρ)`, or as the dual cochain complex coaugmented from `ker(ρ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Chain,
    Cochain,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Chain => Orientation::Cochain,
            Orientation::Cochain => Orientation::Chain,
        }
    }
}

/// A truncated resolution.
///
/// For [`Orientation::Cochain`] the complex is regraded: degree `j` holds
/// `I_{n-j}`, so `I_0` sits in degree `n`, the coaugmentation maps into
/// degree `n`, and the final module `I_n` is degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedResolution {
    presentation: ModulePresentation,
    complex: ChainComplex,
    augmentation: Matrix,
    orientation: Orientation,
}

impl TruncatedResolution {
    pub fn new(
        presentation: ModulePresentation,
        complex: ChainComplex,
        augmentation: Matrix,
    ) -> Result<Self> {
        TruncatedResolution::with_orientation(presentation, complex, augmentation, Orientation::Chain)
    }

    pub fn with_orientation(
        presentation: ModulePresentation,
        complex: ChainComplex,
        augmentation: Matrix,
        orientation: Orientation,
    ) -> Result<Self> {
        let ring = presentation.ring();
        for other in [complex.ring(), augmentation.ring()] {
            if other != ring {
                return Err(Error::RingMismatch {
                    left: ring.to_string(),
                    right: other.to_string(),
                });
            }
        }
        let want = match orientation {
            Orientation::Chain => (presentation.ambient_rank(), complex.rank(0)),
            Orientation::Cochain => (
                complex.rank(complex.length()),
                presentation.relations().cols(),
            ),
        };
        if augmentation.shape() != want {
            return Err(Error::shape("augmentation", want, augmentation.shape()));
        }
        Ok(TruncatedResolution {
            presentation,
            complex,
            augmentation,
            orientation,
        })
    }

    pub fn ring(&self) -> &Ring {
        self.complex.ring()
    }

    pub fn length(&self) -> usize {
        self.complex.length()
    }

    pub fn presentation(&self) -> &ModulePresentation {
        &self.presentation
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn augmentation(&self) -> &Matrix {
        &self.augmentation
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn ranks(&self) -> &[usize] {
        self.complex.ranks()
    }

    /// Adjoins `extra` free generators to the top term, mapped by zero.
    pub fn pad_top(&self, extra: usize) -> Result<Self> {
        if self.orientation != Orientation::Chain {
            return Err(Error::Orientation { expected: "chain" });
        }
        let n = self.length();
        let ring = self.ring();
        let mut ranks = self.ranks().to_vec();
        ranks[n] += extra;
        if n == 0 {
            let aug = Matrix::hcat(&[
                &self.augmentation,
                &Matrix::zeros(ring, self.augmentation.rows(), extra),
            ])?;
            let complex = ChainComplex::new(ring, ranks, vec![])?;
            return TruncatedResolution::new(self.presentation.clone(), complex, aug);
        }
        let mut boundaries = self.complex.boundaries().to_vec();
        let top = &boundaries[n - 1];
        boundaries[n - 1] = Matrix::hcat(&[top, &Matrix::zeros(ring, top.rows(), extra)])?;
        let complex = ChainComplex::new(ring, ranks, boundaries)?;
        TruncatedResolution::new(self.presentation.clone(), complex, self.augmentation.clone())
    }
}

/// Outcome of every defining condition of a resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionReport {
    pub checks: Vec<(String, Validation)>,
}

impl ResolutionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, v)| v.is_ok())
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.checks.iter().find_map(|(_, v)| v.as_ref().err())
    }
}

impl fmt::Display for ResolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, v) in &self.checks {
            match v {
                Ok(()) => writeln!(f, "  pass  {name}")?,
                Err(e) => writeln!(f, "  FAIL  {name}: {e}")?,
            }
        }
        Ok(())
    }
}

fn failure(check: &str, degree: usize) -> Validation {
    Err(Failure {
        check: check.into(),
        degree,
        residual: None,
    })
}

fn base_view(m: &Matrix) -> Result<Matrix> {
    if m.ring().is_group_ring() {
        m.restrict_scalars()
    } else {
        Ok(m.clone())
    }
}

pub fn validate_resolution(res: &TruncatedResolution) -> ResolutionReport {
    let mut checks = vec![("d∘d = 0".to_string(), res.complex.validate())];
    match res.orientation {
        Orientation::Chain => chain_checks(res, &mut checks),
        Orientation::Cochain => cochain_checks(res, &mut checks),
    }
    ResolutionReport { checks }
}

fn run_check(checks: &mut Vec<(String, Validation)>, name: String, r: Result<Validation>, degree: usize) {
    let v = r.unwrap_or_else(|e| {
        Err(Failure {
            check: e.to_string(),
            degree,
            residual: None,
        })
    });
    checks.push((name, v));
}

fn chain_checks(res: &TruncatedResolution, checks: &mut Vec<(String, Validation)>) {
    let n = res.length();
    let rho = res.presentation.relations();
    let aug = &res.augmentation;
    if n >= 1 {
        let d1 = res.complex.boundary(1);
        run_check(
            checks,
            "augmentation kills im d_1".into(),
            (|| {
                let composite = aug.mul(d1)?;
                Ok(match linalg::solve(rho, &composite) {
                    Ok(_) => Ok(()),
                    Err(Error::NoSolution) => failure("ε∘d_1 ∉ im ρ", 0),
                    Err(e) => return Err(e),
                })
            })(),
            0,
        );
    }
    for i in 1..n {
        run_check(
            checks,
            format!("exact at degree {i}"),
            res.complex.homology_invariants(i).map(|h| {
                if h.is_trivial() {
                    Ok(())
                } else {
                    failure(&format!("nonzero homology {h}"), i)
                }
            }),
            i,
        );
    }
    let combined = Matrix::hcat(&[aug, rho]);
    run_check(
        checks,
        "augmentation surjective".into(),
        (|| {
            let inv = linalg::cokernel_invariants(&base_view(&combined?)?)?;
            Ok(if inv.is_trivial() {
                Ok(())
            } else {
                failure(&format!("cokernel {inv} of [ε | ρ]"), 0)
            })
        })(),
        0,
    );
    if n >= 1 {
        run_check(
            checks,
            "exact at degree 0".into(),
            (|| {
                let combined = base_view(&Matrix::hcat(&[aug, rho])?)?;
                let kernel = linalg::kernel_basis(&combined)?;
                let p0 = aug.cols() * res.ring().base_multiplicity();
                let ker_eps = kernel.submatrix(0..p0, 0..kernel.cols());
                let d1 = base_view(res.complex.boundary(1))?;
                Ok(match linalg::solve(&d1, &ker_eps) {
                    Ok(_) => Ok(()),
                    Err(Error::NoSolution) => failure("ker ε ⊄ im d_1", 0),
                    Err(e) => return Err(e),
                })
            })(),
            0,
        );
    }
}

fn cochain_checks(res: &TruncatedResolution, checks: &mut Vec<(String, Validation)>) {
    let n = res.length();
    if !res.ring().is_field() {
        checks.push((
            "cochain resolutions need a field".into(),
            failure("unsupported ring", n),
        ));
        return;
    }
    let rho = res.presentation.relations();
    let coaug = &res.augmentation;
    let module = linalg::kernel_basis(rho);
    let embedded = module.and_then(|k| coaug.mul(&k).map(|e| (k, e)));
    let (module, embedded) = match embedded {
        Ok(pair) => pair,
        Err(e) => {
            checks.push(("coaugmentation".into(), failure(&e.to_string(), n)));
            return;
        }
    };
    if n >= 1 {
        let first = res.complex.boundary(n);
        run_check(
            checks,
            "coaugmentation lands in ker ∂_0".into(),
            first.mul(&embedded).map(|c| {
                if c.is_zero() {
                    Ok(())
                } else {
                    failure("∂_0∘ε ≠ 0", n)
                }
            }),
            n,
        );
    }
    for j in 1..n {
        run_check(
            checks,
            format!("exact at cochain degree {}", n - j),
            res.complex.homology_invariants(j).map(|h| {
                if h.is_trivial() {
                    Ok(())
                } else {
                    failure(&format!("nonzero cohomology {h}"), j)
                }
            }),
            j,
        );
    }
    run_check(
        checks,
        "coaugmentation injective".into(),
        linalg::rank(&embedded).map(|r| {
            if r == module.cols() {
                Ok(())
            } else {
                failure("ε not injective on ker ρ", n)
            }
        }),
        n,
    );
    if n >= 1 {
        run_check(
            checks,
            "ker ∂_0 = im ε".into(),
            (|| {
                let kernel = linalg::kernel_basis(res.complex.boundary(n))?;
                Ok(match linalg::solve(&embedded, &kernel) {
                    Ok(_) => Ok(()),
                    Err(Error::NoSolution) => failure("ker ∂_0 ⊄ im ε", n),
                    Err(e) => return Err(e),
                })
            })(),
            n,
        );
    }
}

fn random_scalar(ring: &Ring, rng: &mut ChaCha8Rng) -> Elem {
    match ring.base() {
        BaseRing::Integers => Elem::int(rng.gen_range(-2..=2)),
        BaseRing::PrimeField(p) => Elem::Mod(rng.gen_range(0..p)),
    }
}

fn random_matrix(ring: &Ring, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_fn(ring, rows, cols, |_, _| random_scalar(ring, rng))
}

/// `basis` plus redundant random combinations of its columns, up to
/// `max_rank` columns in total, in shuffled order.
fn pad_generators(basis: Matrix, max_rank: usize, rng: &mut ChaCha8Rng) -> Result<Matrix> {
    let b = basis.cols();
    let extra = if max_rank > b { rng.gen_range(0..=max_rank - b) } else { 0 };
    if extra == 0 {
        return Ok(basis);
    }
    let combos = basis.mul(&random_matrix(basis.ring(), b, extra, rng))?;
    let all = Matrix::hcat(&[&basis, &combos])?;
    let mut order: Vec<usize> = (0..all.cols()).collect();
    order.shuffle(rng);
    Ok(Matrix::from_fn(all.ring(), all.rows(), all.cols(), |i, j| {
        all.get(i, order[j]).clone()
    }))
}

/// A random truncated free resolution of `coker(ρ)` over the integers or a
/// prime field. Every term has rank at most `max_rank` unless the
/// presentation itself needs more; the output is a deterministic function
/// of the seed.
pub fn generate_resolution(
    presentation: &ModulePresentation,
    n: usize,
    max_rank: usize,
    seed: u64,
) -> Result<TruncatedResolution> {
    let ring = presentation.ring().clone();
    if ring.is_group_ring() {
        return Err(Error::Unsupported {
            op: "generate_resolution",
            ring: ring.descriptor(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho = presentation.relations();
    let m = presentation.ambient_rank();
    let pad0 = if max_rank > m { rng.gen_range(0..=max_rank - m) } else { 0 };
    let into_image = rho.mul(&random_matrix(&ring, rho.cols(), pad0, &mut rng))?;
    let aug = Matrix::hcat(&[&Matrix::identity(&ring, m), &into_image])?;
    let p0 = aug.cols();

    let mut ranks = vec![p0];
    let mut boundaries: Vec<Matrix> = Vec::with_capacity(n);
    for i in 1..=n {
        let basis = if i == 1 {
            let kernel = linalg::kernel_basis(&Matrix::hcat(&[&aug, rho])?)?;
            linalg::image_basis(&kernel.submatrix(0..p0, 0..kernel.cols()))?
        } else {
            linalg::kernel_basis(&boundaries[i - 2])?
        };
        let d = pad_generators(basis, max_rank, &mut rng)?;
        ranks.push(d.cols());
        boundaries.push(d);
    }
    let complex = ChainComplex::new(&ring, ranks, boundaries)?;
    TruncatedResolution::new(presentation.clone(), complex, aug)
}

/// Built-in resolutions: `"Z_over_Z"` and `"Z_over_Z[C_m]"` for `1 <= m <= 12`.
pub fn canonical_resolution(name: &str, n: usize) -> Result<TruncatedResolution> {
    if name == "Z_over_Z" {
        let z = Ring::integers();
        let mut ranks = vec![0; n + 1];
        ranks[0] = 1;
        let complex = ChainComplex::zero(&z, ranks);
        return TruncatedResolution::new(
            ModulePresentation::free(&z, 1),
            complex,
            Matrix::identity(&z, 1),
        );
    }
    let order = name
        .strip_prefix("Z_over_Z[C_")
        .and_then(|rest| rest.strip_suffix(']'))
        .and_then(|m| m.parse::<usize>().ok())
        .filter(|m| (1..=12).contains(m))
        .ok_or_else(|| Error::UnknownResolution(name.to_string()))?;
    let ring = Ring::group_ring(BaseRing::Integers, GroupTable::cyclic(order));
    let t = ring.group_element(1 % order)?;
    let difference = ring.sub(&t, &ring.one());
    let norm = (0..order).fold(ring.zero(), |acc, i| {
        ring.add(&acc, &ring.group_element(i).expect("in range"))
    });
    let one_by_one = |e: &Elem| Matrix::from_rows(&ring, 1, vec![vec![e.clone()]]);
    let boundaries = (1..=n)
        .map(|i| one_by_one(if i % 2 == 1 { &difference } else { &norm }))
        .collect::<Result<Vec<_>>>()?;
    let complex = ChainComplex::new(&ring, vec![1; n + 1], boundaries)?;
    TruncatedResolution::new(
        ModulePresentation::new(one_by_one(&difference)?),
        complex,
        Matrix::identity(&ring, 1),
    )
}

/// Transposes every matrix and reverses the grading, exchanging projective
/// and injective resolutions over a field. An involution.
pub fn dualize(res: &TruncatedResolution) -> Result<TruncatedResolution> {
    if !res.ring().is_field() {
        return Err(Error::Unsupported {
            op: "dualize",
            ring: res.ring().descriptor(),
        });
    }
    TruncatedResolution::with_orientation(
        ModulePresentation::new(res.presentation.relations().transpose()),
        res.complex.dual()?,
        res.augmentation.transpose(),
        res.orientation.flip(),
    )
}

/// Small PRNG-driven presentation over the integers or a field, for
/// property tests and the generator command.
pub fn random_presentation(ring: &Ring, seed: u64) -> ModulePresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(1..=2);
    let k = rng.gen_range(0..=2);
    let relations = Matrix::from_fn(ring, m, k, |_, _| match ring.base() {
        BaseRing::Integers => ring.from_int(&BigInt::from(rng.gen_range(-4..=4))),
        BaseRing::PrimeField(p) => Elem::Mod(rng.gen_range(0..p)),
    });
    ModulePresentation::new(relations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::integers()
    }

    fn z_mod_2() -> ModulePresentation {
        ModulePresentation::new(Matrix::from_i64(&z(), &[vec![2]]))
    }

    fn one_step(d1: i64) -> TruncatedResolution {
        let complex = ChainComplex::new(&z(), vec![1, 1], vec![Matrix::from_i64(&z(), &[vec![d1]])]).unwrap();
        TruncatedResolution::new(z_mod_2(), complex, Matrix::identity(&z(), 1)).unwrap()
    }

    #[test]
    fn z_mod_2_by_two_is_valid_and_by_four_is_not() {
        assert!(validate_resolution(&one_step(2)).passed());
        let report = validate_resolution(&one_step(4));
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.degree, 0);
        assert!(fail.check.contains("ker ε"));
    }

    #[test]
    fn canonical_c2_and_c3() {
        let r = canonical_resolution("Z_over_Z[C_2]", 2).unwrap();
        assert_eq!(r.ranks(), &[1, 1, 1]);
        let ring = r.ring().clone();
        assert_eq!(*r.complex().boundary(1).get(0, 0), ring.parse("g1-1").unwrap());
        assert_eq!(*r.complex().boundary(2).get(0, 0), ring.parse("1+g1").unwrap());
        assert!(validate_resolution(&r).passed(), "{}", validate_resolution(&r));

        let r3 = canonical_resolution("Z_over_Z[C_3]", 3).unwrap();
        let ring = r3.ring().clone();
        assert_eq!(*r3.complex().boundary(2).get(0, 0), ring.parse("1+g1+g2").unwrap());
        assert_eq!(*r3.complex().boundary(3).get(0, 0), ring.parse("g1-1").unwrap());
        assert!(validate_resolution(&r3).passed());
    }

    #[test]
    fn canonical_trivial() {
        let r = canonical_resolution("Z_over_Z", 1).unwrap();
        assert_eq!(r.ranks(), &[1, 0]);
        assert!(r.augmentation().is_identity());
        assert!(validate_resolution(&r).passed());
        assert!(canonical_resolution("Z_over_Z[C_13]", 1).is_err());
        assert!(canonical_resolution("nope", 1).is_err());
    }

    #[test]
    fn truncation_leaves_top_kernel() {
        for m in 2..=5 {
            for n in 1..=3 {
                let r = canonical_resolution(&format!("Z_over_Z[C_{m}]"), n).unwrap();
                assert!(!r.complex().homology_invariants(n).unwrap().is_trivial());
            }
        }
    }

    #[test]
    fn unpadded_z_mod_2() {
        let r = generate_resolution(&z_mod_2(), 1, 1, 0).unwrap();
        assert_eq!(r.ranks(), &[1, 1]);
        assert_eq!(*r.complex().boundary(1), Matrix::from_i64(&z(), &[vec![2]]));
    }

    #[test]
    fn zero_module_resolution() {
        let pres = ModulePresentation::new(Matrix::identity(&z(), 1));
        let r = generate_resolution(&pres, 2, 1, 3).unwrap();
        assert!(validate_resolution(&r).passed());
        assert!(r.complex().homology_invariants(0).unwrap().is_trivial());
    }

    #[test]
    fn generated_f2_passes() {
        let f2 = Ring::prime_field(2).unwrap();
        let pres = ModulePresentation::new(Matrix::from_i64(&f2, &[vec![0]]));
        let r = generate_resolution(&pres, 3, 5, 42).unwrap();
        assert!(validate_resolution(&r).passed(), "{}", validate_resolution(&r));
        assert!(r.ranks().iter().all(|&x| x <= 5));
        assert_eq!(r, generate_resolution(&pres, 3, 5, 42).unwrap());
    }

    #[test]
    fn group_ring_generation_is_refused() {
        let r = canonical_resolution("Z_over_Z[C_2]", 1).unwrap();
        assert!(generate_resolution(r.presentation(), 1, 3, 0).is_err());
    }

    #[test]
    fn dualize_examples() {
        let f2 = Ring::prime_field(2).unwrap();
        let pres = ModulePresentation::new(Matrix::from_i64(&f2, &[vec![0]]));
        let complex = ChainComplex::new(&f2, vec![2, 1], vec![Matrix::from_i64(&f2, &[vec![0], vec![1]])]).unwrap();
        let aug = Matrix::from_i64(&f2, &[vec![1, 0]]);
        let res = TruncatedResolution::new(pres, complex, aug).unwrap();
        assert!(validate_resolution(&res).passed());
        let dual = dualize(&res).unwrap();
        assert_eq!(dual.orientation(), Orientation::Cochain);
        assert_eq!(*dual.complex().boundary(1), Matrix::from_i64(&f2, &[vec![0, 1]]));
        assert!(validate_resolution(&dual).passed(), "{}", validate_resolution(&dual));
        assert_eq!(dualize(&dual).unwrap(), res);
        assert!(dualize(&one_step(2)).is_err());
    }

    #[test]
    fn dual_of_non_exact_fails_validation() {
        let f3 = Ring::prime_field(3).unwrap();
        let pres = ModulePresentation::free(&f3, 1);
        let complex = ChainComplex::new(&f3, vec![1, 1], vec![Matrix::from_i64(&f3, &[vec![1]])]).unwrap();
        let res = TruncatedResolution::new(pres, complex, Matrix::identity(&f3, 1)).unwrap();
        assert!(!validate_resolution(&res).passed());
        assert!(!validate_resolution(&dualize(&res).unwrap()).passed());
    }

    #[test]
    fn padding_the_top_keeps_validity() {
        let r = canonical_resolution("Z_over_Z[C_2]", 2).unwrap().pad_top(1).unwrap();
        assert_eq!(r.ranks(), &[1, 1, 2]);
        assert!(validate_resolution(&r).passed());
    }
}
