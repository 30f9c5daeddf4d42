//! Bounded chain complexes of free modules, chain maps, homotopies and
//! homotopy equivalences, each with an exact validator.
//!
//! Degrees run `0..=n`. A homotopy `s` between maps `F` and `G` has
//! components `s_i: C_i -> D_{i+1}` for `i < n` and satisfies
//! `F_i - G_i = d_{i+1}·s_i + s_{i-1}·d_i` with no signs.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, ModuleInvariants};
use crate::matrix::Matrix;
use crate::ring::Ring;

/// The first identity that failed, with the offending degree and the
/// nonzero residual where one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub degree: usize,
    pub residual: Option<Matrix>,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at degree {}", self.check, self.degree)?;
        if let Some(r) = &self.residual {
            write!(f, ", residual {r}")?;
        }
        Ok(())
    }
}

pub type Validation = std::result::Result<(), Failure>;

fn fail(check: impl Into<String>, degree: usize, residual: Option<Matrix>) -> Validation {
    Err(Failure {
        check: check.into(),
        degree,
        residual,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    ranks: Vec<usize>,
    /// `boundaries[i - 1]` is `d_i: C_i -> C_{i-1}`.
    boundaries: Vec<Matrix>,
}

impl ChainComplex {
    pub fn new(ring: &Ring, ranks: Vec<usize>, boundaries: Vec<Matrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::ComplexMismatch("a complex needs at least degree 0".into()));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(Error::LengthMismatch {
                left: ranks.len() - 1,
                right: boundaries.len(),
            });
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::RingMismatch {
                    left: ring.to_string(),
                    right: d.ring().to_string(),
                });
            }
            let want = (ranks[k], ranks[k + 1]);
            if d.shape() != want {
                return Err(Error::shape("boundary", want, d.shape()));
            }
        }
        Ok(ChainComplex {
            ring: ring.clone(),
            ranks,
            boundaries,
        })
    }

    /// All boundaries zero.
    pub fn zero(ring: &Ring, ranks: Vec<usize>) -> Self {
        let boundaries = ranks
            .windows(2)
            .map(|w| Matrix::zeros(ring, w[0], w[1]))
            .collect();
        ChainComplex {
            ring: ring.clone(),
            ranks,
            boundaries,
        }
    }

    /// `S` in degrees `degree + 1` and `degree` joined by the identity.
    pub fn elementary(ring: &Ring, rank: usize, degree: usize, length: usize) -> Result<Self> {
        if degree + 1 > length {
            return Err(Error::DegreeOutOfRange {
                degree: degree + 1,
                max: length,
            });
        }
        let mut ranks = vec![0; length + 1];
        ranks[degree] = rank;
        ranks[degree + 1] = rank;
        let mut c = ChainComplex::zero(ring, ranks);
        c.boundaries[degree] = Matrix::identity(ring, rank);
        Ok(c)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// `d_i` for `1 <= i <= n`.
    pub fn boundary(&self, i: usize) -> &Matrix {
        assert!(i >= 1 && i <= self.length(), "boundary d_{i} out of range");
        &self.boundaries[i - 1]
    }

    pub fn boundaries(&self) -> &[Matrix] {
        &self.boundaries
    }

    /// `d_i` extended by zero maps at `i = 0` and `i = n + 1`.
    pub fn boundary_or_zero(&self, i: usize) -> Matrix {
        if i == 0 {
            Matrix::zeros(&self.ring, 0, self.ranks[0])
        } else if i > self.length() {
            Matrix::zeros(&self.ring, self.ranks[self.length()], 0)
        } else {
            self.boundaries[i - 1].clone()
        }
    }

    /// Checks `d_i·d_{i+1} = 0`.
    pub fn validate(&self) -> Validation {
        for i in 1..self.length() {
            let dd = self.boundaries[i - 1]
                .mul(&self.boundaries[i])
                .expect("shapes checked at construction");
            if !dd.is_zero() {
                return fail("d∘d = 0", i, Some(dd));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        if self.length() != other.length() {
            return Err(Error::LengthMismatch {
                left: self.length(),
                right: other.length(),
            });
        }
        let ranks = self
            .ranks
            .iter()
            .zip(&other.ranks)
            .map(|(a, b)| a + b)
            .collect();
        let boundaries = self
            .boundaries
            .iter()
            .zip(&other.boundaries)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::new(&self.ring, ranks, boundaries)
    }

    /// The same complex viewed over the base ring of a group ring.
    pub fn restrict_scalars(&self) -> Result<ChainComplex> {
        let order = self
            .ring
            .group()
            .ok_or_else(|| Error::Unsupported {
                op: "restrict_scalars",
                ring: self.ring.descriptor(),
            })?
            .order();
        let boundaries = self
            .boundaries
            .iter()
            .map(Matrix::restrict_scalars)
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::new(
            &self.ring.base_ring(),
            self.ranks.iter().map(|r| r * order).collect(),
            boundaries,
        )
    }

    /// Transposed complex, regraded so that degree `j` holds the dual of
    /// degree `n - j`. Only meaningful over commutative coefficient rings.
    pub fn dual(&self) -> Result<ChainComplex> {
        if self.ring.is_group_ring() {
            return Err(Error::Unsupported {
                op: "dual",
                ring: self.ring.descriptor(),
            });
        }
        let n = self.length();
        let ranks = self.ranks.iter().rev().copied().collect();
        let boundaries = (1..=n)
            .map(|j| self.boundary(n - j + 1).transpose())
            .collect();
        ChainComplex::new(&self.ring, ranks, boundaries)
    }

    /// Invariants of `ker d_i / im d_{i+1}`; group-ring complexes are first
    /// restricted to their base ring.
    pub fn homology_invariants(&self, i: usize) -> Result<ModuleInvariants> {
        if i > self.length() {
            return Err(Error::DegreeOutOfRange {
                degree: i,
                max: self.length(),
            });
        }
        if self.ring.is_group_ring() {
            return self.restrict_scalars()?.homology_invariants(i);
        }
        let kernel = linalg::kernel_basis(&self.boundary_or_zero(i))?;
        let image = linalg::solve(&kernel, &self.boundary_or_zero(i + 1)).map_err(|_| {
            Error::ComplexMismatch(format!("image of d_{} not inside ker d_{i}", i + 1))
        })?;
        linalg::cokernel_invariants(&image)
    }

    pub fn all_homology(&self) -> Result<Vec<ModuleInvariants>> {
        (0..=self.length()).map(|i| self.homology_invariants(i)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    components: Vec<Matrix>,
}

impl ChainMap {
    pub fn new(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        components: Vec<Matrix>,
    ) -> Result<Self> {
        check_pair(&source, &target)?;
        if components.len() != source.ranks.len() {
            return Err(Error::LengthMismatch {
                left: source.ranks.len(),
                right: components.len(),
            });
        }
        for (i, f) in components.iter().enumerate() {
            let want = (target.rank(i), source.rank(i));
            if f.shape() != want || f.ring() != source.ring() {
                return Err(Error::shape("chain map component", want, f.shape()));
            }
        }
        Ok(ChainMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(c: Arc<ChainComplex>) -> Self {
        let components = c.ranks.iter().map(|&r| Matrix::identity(c.ring(), r)).collect();
        ChainMap {
            source: c.clone(),
            target: c,
            components,
        }
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        &self.target
    }

    pub fn component(&self, i: usize) -> &Matrix {
        &self.components[i]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ChainMap) -> Result<ChainMap> {
        if *self.target != *next.source {
            return Err(Error::ComplexMismatch("composable maps need a shared complex".into()));
        }
        let components = next
            .components
            .iter()
            .zip(&self.components)
            .map(|(g, f)| g.mul(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainMap {
            source: self.source.clone(),
            target: next.target.clone(),
            components,
        })
    }

    /// Checks `d_i·F_i = F_{i-1}·d_i`.
    pub fn validate(&self) -> Validation {
        for i in 1..=self.source.length() {
            let lhs = self.target.boundary(i).mul(&self.components[i]).expect("shapes");
            let rhs = self.components[i - 1].mul(self.source.boundary(i)).expect("shapes");
            if lhs != rhs {
                return fail("chain map square", i, Some(lhs.sub(&rhs).expect("shapes")));
            }
        }
        Ok(())
    }
}

fn check_pair(source: &ChainComplex, target: &ChainComplex) -> Result<()> {
    if source.ring() != target.ring() {
        return Err(Error::RingMismatch {
            left: source.ring().to_string(),
            right: target.ring().to_string(),
        });
    }
    if source.length() != target.length() {
        return Err(Error::LengthMismatch {
            left: source.length(),
            right: target.length(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainHomotopy {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    /// `components[i]: C_i -> D_{i+1}` for `i < n`.
    components: Vec<Matrix>,
}

impl ChainHomotopy {
    pub fn new(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        components: Vec<Matrix>,
    ) -> Result<Self> {
        check_pair(&source, &target)?;
        let n = source.length();
        if components.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: components.len(),
            });
        }
        for (i, s) in components.iter().enumerate() {
            let want = (target.rank(i + 1), source.rank(i));
            if s.shape() != want || s.ring() != source.ring() {
                return Err(Error::shape("homotopy component", want, s.shape()));
            }
        }
        Ok(ChainHomotopy {
            source,
            target,
            components,
        })
    }

    pub fn zero(source: Arc<ChainComplex>, target: Arc<ChainComplex>) -> Self {
        let ring = source.ring().clone();
        let components = (0..source.length())
            .map(|i| Matrix::zeros(&ring, target.rank(i + 1), source.rank(i)))
            .collect();
        ChainHomotopy {
            source,
            target,
            components,
        }
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        &self.target
    }

    /// Checks `F_i - G_i = d_{i+1}·s_i + s_{i-1}·d_i` in every degree.
    pub fn validate(&self, f: &ChainMap, g: &ChainMap) -> Validation {
        let ring = self.source.ring();
        for i in 0..=self.source.length() {
            let lhs = f.component(i).sub(g.component(i)).expect("shapes");
            let mut rhs = Matrix::zeros(ring, self.target.rank(i), self.source.rank(i));
            if i < self.source.length() {
                let up = self.target.boundary(i + 1).mul(&self.components[i]).expect("shapes");
                rhs = rhs.add(&up).expect("shapes");
            }
            if i > 0 {
                let down = self.components[i - 1].mul(self.source.boundary(i)).expect("shapes");
                rhs = rhs.add(&down).expect("shapes");
            }
            if lhs != rhs {
                return fail("homotopy identity", i, Some(lhs.sub(&rhs).expect("shapes")));
            }
        }
        Ok(())
    }
}

/// Maps `forward: C -> D` and `backward: D -> C` with homotopies
/// `backward ∘ forward ≃ 1_C` and `forward ∘ backward ≃ 1_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyEquivalence {
    pub forward: ChainMap,
    pub backward: ChainMap,
    pub source_homotopy: ChainHomotopy,
    pub target_homotopy: ChainHomotopy,
}

impl HomotopyEquivalence {
    pub fn new(
        forward: ChainMap,
        backward: ChainMap,
        source_homotopy: ChainHomotopy,
        target_homotopy: ChainHomotopy,
    ) -> Result<Self> {
        let c = forward.source();
        let d = forward.target();
        let consistent = **backward.source() == **d
            && **backward.target() == **c
            && **source_homotopy.source() == **c
            && **source_homotopy.target() == **c
            && **target_homotopy.source() == **d
            && **target_homotopy.target() == **d;
        if !consistent {
            return Err(Error::ComplexMismatch(
                "equivalence data refer to different complexes".into(),
            ));
        }
        Ok(HomotopyEquivalence {
            forward,
            backward,
            source_homotopy,
            target_homotopy,
        })
    }

    /// An isomorphism: zero homotopies on both sides.
    pub fn isomorphism(forward: ChainMap, backward: ChainMap) -> Result<Self> {
        let s = ChainHomotopy::zero(forward.source().clone(), forward.source().clone());
        let t = ChainHomotopy::zero(forward.target().clone(), forward.target().clone());
        HomotopyEquivalence::new(forward, backward, s, t)
    }

    pub fn identity(c: Arc<ChainComplex>) -> Self {
        let id = ChainMap::identity(c);
        HomotopyEquivalence::isomorphism(id.clone(), id).expect("consistent")
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        self.forward.source()
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        self.forward.target()
    }

    /// The same data read from `D` to `C`.
    pub fn reverse(&self) -> Self {
        HomotopyEquivalence {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
            source_homotopy: self.target_homotopy.clone(),
            target_homotopy: self.source_homotopy.clone(),
        }
    }

    /// `self: C -> D` followed by `next: D -> E`.
    pub fn then(&self, next: &HomotopyEquivalence) -> Result<Self> {
        if **self.target() != **next.source() {
            return Err(Error::ComplexMismatch(
                "target of the first equivalence is not the source of the second".into(),
            ));
        }
        let forward = self.forward.then(&next.forward)?;
        let backward = next.backward.then(&self.backward)?;
        let c = self.source().clone();
        let e = next.target().clone();
        let n = c.length();
        let mut s = Vec::with_capacity(n);
        let mut t = Vec::with_capacity(n);
        for i in 0..n {
            // s = s1 + G1·s2·F1
            let inner = self.backward.component(i + 1)
                .mul(&next.source_homotopy.components[i])?
                .mul(self.forward.component(i))?;
            s.push(self.source_homotopy.components[i].add(&inner)?);
            // t = t2 + F2·t1·G2
            let inner = next.forward.component(i + 1)
                .mul(&self.target_homotopy.components[i])?
                .mul(next.backward.component(i))?;
            t.push(next.target_homotopy.components[i].add(&inner)?);
        }
        HomotopyEquivalence::new(
            forward,
            backward,
            ChainHomotopy::new(c.clone(), c, s)?,
            ChainHomotopy::new(e.clone(), e, t)?,
        )
    }

    /// Every identity, with a label per check.
    pub fn validation_report(&self) -> Vec<(&'static str, Validation)> {
        let c = self.source().clone();
        let d = self.target().clone();
        let gf = self.forward.then(&self.backward).expect("consistent");
        let fg = self.backward.then(&self.forward).expect("consistent");
        vec![
            ("source complex d∘d = 0", c.validate()),
            ("target complex d∘d = 0", d.validate()),
            ("forward map is a chain map", self.forward.validate()),
            ("backward map is a chain map", self.backward.validate()),
            (
                "backward∘forward ≃ 1 on source",
                self.source_homotopy.validate(&gf, &ChainMap::identity(c)),
            ),
            (
                "forward∘backward ≃ 1 on target",
                self.target_homotopy.validate(&fg, &ChainMap::identity(d)),
            ),
        ]
    }

    pub fn validate(&self) -> Validation {
        for (what, v) in self.validation_report() {
            v.map_err(|mut f| {
                f.check = format!("{what}: {}", f.check);
                f
            })?;
        }
        Ok(())
    }

    /// Dual equivalence between the transposed complexes
    /// (see [`ChainComplex::dual`]).
    pub fn dual(&self) -> Result<Self> {
        let c = Arc::new(self.source().dual()?);
        let d = Arc::new(self.target().dual()?);
        let n = c.length();
        let regrade = |ms: &[Matrix]| -> Vec<Matrix> {
            (0..=n).map(|j| ms[n - j].transpose()).collect()
        };
        let regrade_homotopy = |ms: &[Matrix]| -> Vec<Matrix> {
            (0..n).map(|j| ms[n - j - 1].transpose()).collect()
        };
        let forward = ChainMap::new(c.clone(), d.clone(), regrade(self.backward.components()))?;
        let backward = ChainMap::new(d.clone(), c.clone(), regrade(self.forward.components()))?;
        let s = ChainHomotopy::new(c.clone(), c, regrade_homotopy(self.source_homotopy.components()))?;
        let t = ChainHomotopy::new(d.clone(), d, regrade_homotopy(self.target_homotopy.components()))?;
        HomotopyEquivalence::new(forward, backward, s, t)
    }
}
