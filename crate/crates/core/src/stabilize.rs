//! The stabilizer ladder and the explicit homotopy equivalence between the
//! two stabilized resolutions.
//!
//! For resolutions `P` and `Q` of the same module the ladder is
//! `T_0 = P_0`, `S_0 = Q_0`, `T_i = P_i ⊕ S_{i-1}`, `S_i = Q_i ⊕ T_{i-1}`,
//! always stored own term first. The equivalence runs
//!
//! ```text
//! (1) = C_0 ≃ C_1 ≃ ... ≃ C_n ≅ D_n ≃ ... ≃ D_1 ≃ D_0 = (2)
//! ```
//!
//! where each `C_r ≃ C_{r+1}` adjoins the elementary complex `S_r -> S_r`
//! and the middle isomorphism is built from lifts `f_i: T_i -> S_i`,
//! `g_i: S_i -> T_i`.

use std::fmt;
use std::sync::Arc;

use crate::chain::{ChainComplex, ChainHomotopy, ChainMap, Failure, HomotopyEquivalence, Validation};
use crate::error::{Error, Result};
use crate::linalg::{self, ModuleInvariants};
use crate::matrix::{assemble_2x2, Matrix};
use crate::resolution::{ModulePresentation, Orientation, TruncatedResolution};
use crate::ring::Ring;

/// Which resolution of the pair an object belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `P`, stabilized by `S`.
    First,
    /// `Q`, stabilized by `T`.
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerLadder {
    ring: Ring,
    p_ranks: Vec<usize>,
    q_ranks: Vec<usize>,
    t_ranks: Vec<usize>,
    s_ranks: Vec<usize>,
    iota: Vec<Matrix>,
    iota_prime: Vec<Matrix>,
    delta: Vec<Matrix>,
    delta_prime: Vec<Matrix>,
}

/// The ranks `(t_i)` and `(s_i)` of the ladder over rank vectors `p`, `q`.
pub fn ladder_ranks(p: &[usize], q: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    if p.len() != q.len() || p.is_empty() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let mut t = vec![p[0]];
    let mut s = vec![q[0]];
    for i in 1..p.len() {
        t.push(p[i] + s[i - 1]);
        s.push(q[i] + t[i - 1]);
    }
    Ok((t, s))
}

/// `[I; 0]`: the inclusion of the first `own` coordinates into `own + rest`.
fn inclusion(ring: &Ring, own: usize, rest: usize) -> Matrix {
    Matrix::from_fn(ring, own + rest, own, |i, j| {
        if i == j {
            ring.one()
        } else {
            ring.zero()
        }
    })
}

fn ladder_side(
    ring: &Ring,
    res: &TruncatedResolution,
    own_stab: &[usize],
    other_stab: &[usize],
) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
    let n = res.length();
    let own = res.ranks();
    let iota: Vec<Matrix> = (0..=n)
        .map(|i| inclusion(ring, own[i], if i == 0 { 0 } else { other_stab[i - 1] }))
        .collect();
    let mut delta = Vec::with_capacity(n);
    for i in 1..=n {
        let spliced = iota[i - 1].mul(res.complex().boundary(i))?;
        let stab = other_stab[i - 1];
        delta.push(assemble_2x2(
            &spliced,
            &Matrix::zeros(ring, own_stab[i - 1], stab),
            &Matrix::zeros(ring, stab, own[i]),
            &Matrix::identity(ring, stab),
        )?);
    }
    Ok((iota, delta))
}

pub fn build_ladder(first: &TruncatedResolution, second: &TruncatedResolution) -> Result<StabilizerLadder> {
    check_pair(first, second)?;
    let ring = first.ring().clone();
    let (t_ranks, s_ranks) = ladder_ranks(first.ranks(), second.ranks())?;
    let (iota, delta) = ladder_side(&ring, first, &t_ranks, &s_ranks)?;
    let (iota_prime, delta_prime) = ladder_side(&ring, second, &s_ranks, &t_ranks)?;
    Ok(StabilizerLadder {
        ring,
        p_ranks: first.ranks().to_vec(),
        q_ranks: second.ranks().to_vec(),
        t_ranks,
        s_ranks,
        iota,
        iota_prime,
        delta,
        delta_prime,
    })
}

fn check_pair(first: &TruncatedResolution, second: &TruncatedResolution) -> Result<()> {
    for r in [first, second] {
        if r.orientation() != Orientation::Chain {
            return Err(Error::Orientation { expected: "chain" });
        }
    }
    if first.ring() != second.ring() {
        return Err(Error::RingMismatch {
            left: first.ring().to_string(),
            right: second.ring().to_string(),
        });
    }
    if first.length() != second.length() {
        return Err(Error::LengthMismatch {
            left: first.length(),
            right: second.length(),
        });
    }
    if first.presentation() != second.presentation() {
        return Err(Error::PresentationMismatch);
    }
    Ok(())
}

struct View<'a> {
    own: &'a [usize],
    own_stab: &'a [usize],
    other_stab: &'a [usize],
    iota: &'a [Matrix],
    delta: &'a [Matrix],
}

impl StabilizerLadder {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.t_ranks.len() - 1
    }

    pub fn t_ranks(&self) -> &[usize] {
        &self.t_ranks
    }

    pub fn s_ranks(&self) -> &[usize] {
        &self.s_ranks
    }

    /// `ι_i: P_i -> T_i`.
    pub fn iota(&self, i: usize) -> &Matrix {
        &self.iota[i]
    }

    /// `ι'_i: Q_i -> S_i`.
    pub fn iota_prime(&self, i: usize) -> &Matrix {
        &self.iota_prime[i]
    }

    /// `δ_i: T_i -> T_{i-1} ⊕ S_{i-1}` for `1 <= i <= n`.
    pub fn delta(&self, i: usize) -> &Matrix {
        &self.delta[i - 1]
    }

    /// `δ'_i: S_i -> S_{i-1} ⊕ T_{i-1}` for `1 <= i <= n`.
    pub fn delta_prime(&self, i: usize) -> &Matrix {
        &self.delta_prime[i - 1]
    }

    fn view(&self, side: Side) -> View<'_> {
        match side {
            Side::First => View {
                own: &self.p_ranks,
                own_stab: &self.t_ranks,
                other_stab: &self.s_ranks,
                iota: &self.iota,
                delta: &self.delta,
            },
            Side::Second => View {
                own: &self.q_ranks,
                own_stab: &self.s_ranks,
                other_stab: &self.t_ranks,
                iota: &self.iota_prime,
                delta: &self.delta_prime,
            },
        }
    }

    fn check_side(&self, res: &TruncatedResolution, side: Side) -> Result<View<'_>> {
        let view = self.view(side);
        if res.ring() != &self.ring || res.ranks() != view.own || res.orientation() != Orientation::Chain {
            return Err(Error::ComplexMismatch(format!(
                "resolution does not match the {side:?} side of the ladder"
            )));
        }
        Ok(view)
    }
}

/// The resolution with its top term enlarged by the other side's stabilizer
/// (`S_n` for the first side, `T_n` for the second), mapped by zero.
pub fn stabilized_complex(res: &TruncatedResolution, ladder: &StabilizerLadder, side: Side) -> Result<ChainComplex> {
    let view = ladder.check_side(res, side)?;
    let n = res.length();
    let ring = res.ring();
    let extra = view.other_stab[n];
    let mut ranks = res.ranks().to_vec();
    ranks[n] += extra;
    let mut boundaries = res.complex().boundaries().to_vec();
    if n > 0 {
        let top = &boundaries[n - 1];
        boundaries[n - 1] = Matrix::hcat(&[top, &Matrix::zeros(ring, top.rows(), extra)])?;
    }
    ChainComplex::new(ring, ranks, boundaries)
}

/// `C_r` (first side) or `D_r` (second side), `0 <= r <= n`.
///
/// Degrees below `r` hold `T_i ⊕ S_i`, degree `r` holds `T_r`, degrees
/// above hold the resolution's own terms, and the top degree keeps its
/// stabilizer summand. `C_0` is the stabilized complex and `C_n` has
/// `T_i ⊕ S_i` everywhere.
pub fn intermediate_complex(
    ladder: &StabilizerLadder,
    res: &TruncatedResolution,
    side: Side,
    r: usize,
) -> Result<ChainComplex> {
    let view = ladder.check_side(res, side)?;
    let n = res.length();
    if r > n {
        return Err(Error::DegreeOutOfRange { degree: r, max: n });
    }
    if n == 0 {
        return stabilized_complex(res, ladder, side);
    }
    let ring = res.ring();
    let both = |j: usize| view.own_stab[j] + view.other_stab[j];
    let ranks: Vec<usize> = (0..=n)
        .map(|j| {
            if r == n || j < r {
                both(j)
            } else if j == r {
                view.own_stab[r]
            } else if j < n {
                view.own[j]
            } else {
                view.own[n] + view.other_stab[n]
            }
        })
        .collect();
    let mut boundaries = Vec::with_capacity(n);
    #[allow(clippy::needless_range_loop)]
    for j in 1..=n {
        let core = if j <= r {
            view.delta[j - 1].clone()
        } else if j == r + 1 {
            view.iota[r].mul(res.complex().boundary(j))?
        } else {
            res.complex().boundary(j).clone()
        };
        let pad = ranks[j] - core.cols();
        boundaries.push(Matrix::hcat(&[&core, &Matrix::zeros(ring, core.rows(), pad)])?);
    }
    ChainComplex::new(ring, ranks, boundaries)
}

/// The simple homotopy equivalence `C_r ≃ C_{r+1}`, `r < n`.
///
/// The forward map includes `C_r` by zero on the new `S_r` summands, the
/// backward map projects them away, the backward-forward composite is the
/// identity, and the homotopy on `C_{r+1}` sends `(w, s)` in degree `r` to
/// `(0, -s)`.
pub fn expansion_equivalence(
    ladder: &StabilizerLadder,
    res: &TruncatedResolution,
    side: Side,
    r: usize,
) -> Result<HomotopyEquivalence> {
    let n = res.length();
    if r >= n {
        return Err(Error::DegreeOutOfRange {
            degree: r,
            max: n.saturating_sub(1),
        });
    }
    let view = ladder.check_side(res, side)?;
    let ring = res.ring().clone();
    let c = Arc::new(intermediate_complex(ladder, res, side, r)?);
    let d = Arc::new(intermediate_complex(ladder, res, side, r + 1)?);
    let stab = view.other_stab[r];
    let mut forward = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let part = if j == r {
            inclusion(&ring, view.own_stab[r], stab)
        } else if j == r + 1 && j < n {
            inclusion(&ring, view.own[j], stab)
        } else if j == r + 1 {
            // P_n ⊕ S_n into P_n ⊕ S_{n-1} ⊕ S_n
            let own = view.own[n];
            let top = view.other_stab[n];
            Matrix::from_fn(&ring, own + stab + top, own + top, |i, k| {
                let hit = if k < own { i == k } else { i == k + stab };
                if hit {
                    ring.one()
                } else {
                    ring.zero()
                }
            })
        } else {
            Matrix::identity(&ring, c.rank(j))
        };
        forward.push(part);
    }
    let backward = forward.iter().map(Matrix::transpose).collect();
    let forward = ChainMap::new(c.clone(), d.clone(), forward)?;
    let backward = ChainMap::new(d.clone(), c.clone(), backward)?;

    let mut t: Vec<Matrix> = (0..n).map(|i| Matrix::zeros(&ring, d.rank(i + 1), d.rank(i))).collect();
    let row0 = view.own[r + 1];
    let col0 = view.own_stab[r];
    let minus_one = ring.neg(&ring.one());
    for k in 0..stab {
        t[r].set(row0 + k, col0 + k, minus_one.clone());
    }
    let t = ChainHomotopy::new(d.clone(), d, t)?;
    let s = ChainHomotopy::zero(c.clone(), c);
    HomotopyEquivalence::new(forward, backward, s, t)
}

/// `h = [[f, 1 - fg], [1, -g]]` and `k = [[g, 1 - gf], [1, -f]]` for
/// `f: A -> B`, `g: B -> A`; mutually inverse whatever `f` and `g` are.
pub fn ladder_block(f: &Matrix, g: &Matrix) -> Result<(Matrix, Matrix)> {
    let (b, a) = f.shape();
    if g.shape() != (a, b) {
        return Err(Error::shape("ladder block", (a, b), g.shape()));
    }
    let ring = f.ring();
    let fg = f.mul(g)?;
    let gf = g.mul(f)?;
    let h = assemble_2x2(
        f,
        &Matrix::identity(ring, b).sub(&fg)?,
        &Matrix::identity(ring, a),
        &g.neg(),
    )?;
    let k = assemble_2x2(
        g,
        &Matrix::identity(ring, a).sub(&gf)?,
        &Matrix::identity(ring, b),
        &f.neg(),
    )?;
    Ok((h, k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderMaps {
    pub f: Vec<Matrix>,
    pub g: Vec<Matrix>,
    pub h: ChainMap,
    pub k: ChainMap,
}

fn lift(map: &'static str, degree: usize, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    linalg::solve(a, b).map_err(|e| match e {
        Error::NoSolution => Error::LiftFailed { map, degree },
        e => e,
    })
}

/// First-block lift of `target` through `[aug | ρ]`: a map into the free
/// module that agrees with `target` modulo the relations.
fn lift_augmentation(map: &'static str, aug: &Matrix, rho: &Matrix, target: &Matrix) -> Result<Matrix> {
    let x = lift(map, 0, &Matrix::hcat(&[aug, rho])?, target)?;
    Ok(x.submatrix(0..aug.cols(), 0..x.cols()))
}

pub fn build_ladder_maps(
    ladder: &StabilizerLadder,
    first: &TruncatedResolution,
    second: &TruncatedResolution,
) -> Result<LadderMaps> {
    check_pair(first, second)?;
    let n = ladder.length();
    let rho = first.presentation().relations();
    let mut f = vec![lift_augmentation("f", second.augmentation(), rho, first.augmentation())?];
    let mut g = vec![lift_augmentation("g", first.augmentation(), rho, second.augmentation())?];
    let (h0, k0) = ladder_block(&f[0], &g[0])?;
    let mut h = vec![h0];
    let mut k = vec![k0];
    for i in 1..=n {
        let fi = lift("f", i, ladder.delta_prime(i), &h[i - 1].mul(ladder.delta(i))?)?;
        let gi = lift("g", i, ladder.delta(i), &k[i - 1].mul(ladder.delta_prime(i))?)?;
        let (hi, ki) = ladder_block(&fi, &gi)?;
        f.push(fi);
        g.push(gi);
        h.push(hi);
        k.push(ki);
    }
    for i in 0..=n {
        if !h[i].mul(&k[i])?.is_identity() || !k[i].mul(&h[i])?.is_identity() {
            return Err(Error::VerificationFailed(format!("h_{i} and k_{i} are not inverse")));
        }
    }
    let c = Arc::new(intermediate_complex(ladder, first, Side::First, n)?);
    let d = Arc::new(intermediate_complex(ladder, second, Side::Second, n)?);
    let h = ChainMap::new(c.clone(), d.clone(), h)?;
    let k = ChainMap::new(d, c, k)?;
    for (name, map) in [("h", &h), ("k", &k)] {
        map.validate()
            .map_err(|e| Error::VerificationFailed(format!("{name} is not a chain map: {e}")))?;
    }
    Ok(LadderMaps { f, g, h, k })
}

/// The isomorphism `C_n ≅ D_n` given by `h` and `k`, with zero homotopies.
pub fn chain_isomorphism(maps: &LadderMaps) -> Result<HomotopyEquivalence> {
    HomotopyEquivalence::isomorphism(maps.h.clone(), maps.k.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageReport {
    pub stage: String,
    pub passed: bool,
}

/// Everything needed to re-verify the equivalence between the two
/// stabilized complexes without the original resolutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCertificate {
    pub presentation: ModulePresentation,
    pub orientation: Orientation,
    pub t_ranks: Vec<usize>,
    pub s_ranks: Vec<usize>,
    /// From the first stabilized complex to the second.
    pub equivalence: HomotopyEquivalence,
    /// `C_n ≅ D_n` (forward `h`, backward `k`).
    pub isomorphism: HomotopyEquivalence,
    pub stages: Vec<StageReport>,
    pub seed: Option<u64>,
}

impl EquivalenceCertificate {
    pub fn ring(&self) -> &Ring {
        self.presentation.ring()
    }

    pub fn length(&self) -> usize {
        self.t_ranks.len() - 1
    }

    /// The first stabilized complex, `P` with `S_n` adjoined.
    pub fn first(&self) -> &ChainComplex {
        self.equivalence.source()
    }

    /// The second stabilized complex, `Q` with `T_n` adjoined.
    pub fn second(&self) -> &ChainComplex {
        self.equivalence.target()
    }
}

fn record(stages: &mut Vec<StageReport>, stage: String, e: &HomotopyEquivalence) -> Result<()> {
    let outcome = e.validate();
    stages.push(StageReport {
        stage: stage.clone(),
        passed: outcome.is_ok(),
    });
    outcome.map_err(|f| Error::VerificationFailed(format!("{stage}: {f}")))
}

fn compose(acc: Option<HomotopyEquivalence>, next: HomotopyEquivalence) -> Result<HomotopyEquivalence> {
    match acc {
        None => Ok(next),
        Some(acc) => acc.then(&next),
    }
}

/// The composite equivalence from the first stabilized complex to the
/// second, every stage and the composite verified exactly.
pub fn total_equivalence(first: &TruncatedResolution, second: &TruncatedResolution) -> Result<EquivalenceCertificate> {
    let ladder = build_ladder(first, second)?;
    let n = ladder.length();
    let mut stages = Vec::new();
    let mut acc = None;
    for r in 0..n {
        let e = expansion_equivalence(&ladder, first, Side::First, r)?;
        record(&mut stages, format!("expand first side at degree {r}"), &e)?;
        acc = Some(compose(acc, e)?);
    }
    let maps = build_ladder_maps(&ladder, first, second)?;
    let iso = chain_isomorphism(&maps)?;
    record(&mut stages, "ladder isomorphism".into(), &iso)?;
    acc = Some(compose(acc, iso.clone())?);
    for r in (0..n).rev() {
        let e = expansion_equivalence(&ladder, second, Side::Second, r)?.reverse();
        record(&mut stages, format!("collapse second side at degree {r}"), &e)?;
        acc = Some(compose(acc, e)?);
    }
    let equivalence = acc.expect("at least the isomorphism stage");
    record(&mut stages, "composite".into(), &equivalence)?;
    let expected = (
        stabilized_complex(first, &ladder, Side::First)?,
        stabilized_complex(second, &ladder, Side::Second)?,
    );
    if (**equivalence.source()).clone() != expected.0 || (**equivalence.target()).clone() != expected.1 {
        return Err(Error::VerificationFailed(
            "composite does not connect the stabilized complexes".into(),
        ));
    }
    Ok(EquivalenceCertificate {
        presentation: first.presentation().clone(),
        orientation: Orientation::Chain,
        t_ranks: ladder.t_ranks.clone(),
        s_ranks: ladder.s_ranks.clone(),
        equivalence,
        isomorphism: iso,
        stages,
        seed: None,
    })
}

/// Outcome of re-verifying a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub checks: Vec<(String, Validation)>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, v)| v.is_ok())
    }

    pub fn first_failure(&self) -> Option<(&str, &Failure)> {
        self.checks
            .iter()
            .find_map(|(name, v)| v.as_ref().err().map(|f| (name.as_str(), f)))
    }
}

impl fmt::Display for CertificateReport {
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

fn flag(ok: bool, check: &str, degree: usize) -> Validation {
    if ok {
        Ok(())
    } else {
        Err(Failure {
            check: check.into(),
            degree,
            residual: None,
        })
    }
}

/// Re-runs every identity a certificate claims.
pub fn check_certificate(cert: &EquivalenceCertificate) -> CertificateReport {
    let mut checks: Vec<(String, Validation)> = Vec::new();
    for (name, v) in cert.equivalence.validation_report() {
        checks.push((name.to_string(), v));
    }
    for (name, v) in cert.isomorphism.validation_report() {
        checks.push((format!("isomorphism: {name}"), v));
    }
    let n = cert.length();
    let iso = &cert.isomorphism;
    let inverse = (0..=n).find(|&i| {
        let h = iso.forward.component(i);
        let k = iso.backward.component(i);
        !matches!((h.mul(k), k.mul(h)), (Ok(a), Ok(b)) if a.is_identity() && b.is_identity())
    });
    checks.push((
        "isomorphism components are exact inverses".into(),
        flag(inverse.is_none(), "h·k = k·h = 1", inverse.unwrap_or(0)),
    ));

    let ladder_degree = |j: usize| match cert.orientation {
        Orientation::Chain => j,
        Orientation::Cochain => n - j,
    };
    let well_formed = cert.s_ranks.len() == n + 1 && iso.source().length() == n && cert.first().length() == n;
    let bad_rank = if well_formed {
        (0..=n).find(|&j| {
            let i = ladder_degree(j);
            let want = cert.t_ranks[i] + cert.s_ranks[i];
            iso.source().rank(j) != want || iso.target().rank(j) != want
        })
    } else {
        Some(0)
    };
    checks.push((
        "ladder ranks match the isomorphism".into(),
        flag(bad_rank.is_none(), "rank of T_i ⊕ S_i", bad_rank.unwrap_or(0)),
    ));

    if well_formed && n > 0 {
        let ok = |c: &ChainComplex, extra: usize| match cert.orientation {
            Orientation::Chain => {
                let d = c.boundary(n);
                extra <= d.cols() && d.submatrix(0..d.rows(), d.cols() - extra..d.cols()).is_zero()
            }
            Orientation::Cochain => {
                let d = c.boundary(1);
                extra <= d.rows() && d.submatrix(d.rows() - extra..d.rows(), 0..d.cols()).is_zero()
            }
        };
        let first_ok = ok(cert.first(), cert.s_ranks[n]);
        let second_ok = ok(cert.second(), cert.t_ranks[n]);
        checks.push((
            "stabilizer summands map by zero".into(),
            flag(first_ok && second_ok, "stabilized top boundary", ladder_degree(n)),
        ));
    }
    let rings_ok = cert.first().ring() == cert.ring() && iso.source().ring() == cert.ring();
    checks.push(("rings agree".into(), flag(rings_ok, "ring of every matrix", 0)));
    CertificateReport { checks }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchanuelRow {
    pub degree: usize,
    pub first: ModuleInvariants,
    pub second: ModuleInvariants,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchanuelReport {
    pub rows: Vec<SchanuelRow>,
    /// Invariants of the presented module, where the complexes must
    /// reproduce it.
    pub module: Option<(usize, ModuleInvariants)>,
    pub passed: bool,
}

impl fmt::Display for SchanuelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let mark = if row.first == row.second { "=" } else { "≠" };
            writeln!(f, "  H_{}: {} {mark} {}", row.degree, row.first, row.second)?;
        }
        if let Some((degree, m)) = &self.module {
            writeln!(f, "  module at degree {degree}: {m}")?;
        }
        Ok(())
    }
}

/// Compares the homology of the two stabilized complexes degree by degree,
/// checks that it vanishes strictly between the ends and that the bottom
/// degree recovers the module.
pub fn schanuel_check(cert: &EquivalenceCertificate) -> Result<SchanuelReport> {
    let n = cert.length();
    let first = cert.first().all_homology()?;
    let second = cert.second().all_homology()?;
    let rows: Vec<SchanuelRow> = first
        .into_iter()
        .zip(second)
        .enumerate()
        .map(|(degree, (first, second))| SchanuelRow { degree, first, second })
        .collect();
    let mut passed = rows.iter().all(|r| r.first == r.second);
    let (low, high) = match cert.orientation {
        Orientation::Chain => (0, n),
        Orientation::Cochain => (n, 0),
    };
    for row in &rows {
        if row.degree != low && row.degree != high && !row.first.is_trivial() {
            passed = false;
        }
    }
    let module = if n == 0 {
        None
    } else {
        let m = match cert.orientation {
            Orientation::Chain => cert.presentation.invariants()?,
            Orientation::Cochain => {
                let rho = cert.presentation.relations();
                ModuleInvariants::VectorSpace {
                    dimension: rho.cols() - linalg::rank(rho)?,
                }
            }
        };
        if rows[low].first != m {
            passed = false;
        }
        Some((low, m))
    };
    Ok(SchanuelReport { rows, module, passed })
}

/// Transposes a field certificate into one for the dual (cochain)
/// complexes. An involution.
pub fn dualize_certificate(cert: &EquivalenceCertificate) -> Result<EquivalenceCertificate> {
    if !cert.ring().is_field() {
        return Err(Error::Unsupported {
            op: "dualize",
            ring: cert.ring().descriptor(),
        });
    }
    Ok(EquivalenceCertificate {
        presentation: ModulePresentation::new(cert.presentation.relations().transpose()),
        orientation: cert.orientation.flip(),
        t_ranks: cert.t_ranks.clone(),
        s_ranks: cert.s_ranks.clone(),
        equivalence: cert.equivalence.dual()?,
        isomorphism: cert.isomorphism.dual()?,
        stages: cert.stages.clone(),
        seed: cert.seed,
    })
}
