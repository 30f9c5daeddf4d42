//! Exact coefficient rings: the integers, prime fields, and group rings over
//! either of them for a finite group given by its Cayley table.
//!
//! Elements are plain values ([`Elem`]); the [`Ring`] descriptor carries all
//! arithmetic. Group-ring elements are dense coefficient vectors indexed by
//! the table order of the group, which fixes every coordinate layout.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// A finite group as a multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupTable {
    order: usize,
    mult: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Checks closure, identity, inverses and associativity.
    pub fn new(mult: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let order = mult.len();
        if order == 0 {
            return Err(Error::InvalidGroupTable("empty table".into()));
        }
        if identity >= order {
            return Err(Error::InvalidGroupTable(format!(
                "identity index {identity} out of range"
            )));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in mult.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroupTable(format!(
                    "row {i} has length {}, expected {order}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= order {
                    return Err(Error::InvalidGroupTable(format!(
                        "entry {x} in row {i} out of range"
                    )));
                }
                flat.push(x);
            }
        }
        let at = |a: usize, b: usize| flat[a * order + b];
        for a in 0..order {
            if at(identity, a) != a || at(a, identity) != a {
                return Err(Error::InvalidGroupTable(format!(
                    "{identity} is not a two-sided identity for {a}"
                )));
            }
        }
        let mut inverse = vec![0; order];
        for (a, slot) in inverse.iter_mut().enumerate() {
            match (0..order).find(|&b| at(a, b) == identity && at(b, a) == identity) {
                Some(b) => *slot = b,
                None => {
                    return Err(Error::InvalidGroupTable(format!("{a} has no inverse")));
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroupTable(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(GroupTable {
            order,
            mult: flat,
            identity,
            inverse,
        })
    }

    /// The cyclic group of order `m`, element `i` standing for `t^i`.
    pub fn cyclic(m: usize) -> Self {
        assert!(m > 0, "cyclic group of order 0");
        let mult = (0..m)
            .map(|i| (0..m).map(|j| (i + j) % m).collect())
            .collect();
        GroupTable::new(mult, 0).expect("cyclic table is a group")
    }

    /// Builds the table of a group of permutations closed under composition.
    /// The product `a * b` is the composite "apply `b`, then `a`".
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let index = |p: &[usize]| perms.iter().position(|q| q.as_slice() == p);
        let degree = perms.first().map_or(0, |p| p.len());
        let id: Vec<usize> = (0..degree).collect();
        let identity = index(&id)
            .ok_or_else(|| Error::InvalidGroupTable("identity permutation missing".into()))?;
        let mut mult = Vec::with_capacity(perms.len());
        for a in perms {
            let mut row = Vec::with_capacity(perms.len());
            for b in perms {
                let ab: Vec<usize> = b.iter().map(|&x| a[x]).collect();
                row.push(index(&ab).ok_or_else(|| {
                    Error::InvalidGroupTable("permutations not closed under composition".into())
                })?);
            }
            mult.push(row);
        }
        GroupTable::new(mult, identity)
    }

    /// The symmetric group on three letters, elements in lexicographic order
    /// of their permutation images.
    pub fn symmetric3() -> Self {
        let perms = vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ];
        GroupTable::from_permutations(&perms).expect("S3 is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mult(a, b) == self.mult(b, a)))
    }
}

/// Coefficient ring of a group ring, or a ring in its own right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Integers,
    PrimeField(u64),
}

/// Descriptor of a supported ring. Group rings nest one level only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    base: BaseRing,
    group: Option<Arc<GroupTable>>,
}

/// A ring element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    /// Residue in `[0, p)`.
    Mod(u64),
    /// Coefficients indexed by group-table order; each is `Int` or `Mod`.
    Group(Vec<Elem>),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let mut exp = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl BaseRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(BaseRing::PrimeField(p))
    }

    pub fn zero(&self) -> Elem {
        match self {
            BaseRing::Integers => Elem::Int(BigInt::zero()),
            BaseRing::PrimeField(_) => Elem::Mod(0),
        }
    }

    pub fn from_int(&self, v: &BigInt) -> Elem {
        match *self {
            BaseRing::Integers => Elem::Int(v.clone()),
            BaseRing::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Elem::Mod(r.to_u64().expect("residue fits"))
            }
        }
    }

    fn contains(&self, e: &Elem) -> bool {
        match (self, e) {
            (BaseRing::Integers, Elem::Int(_)) => true,
            (BaseRing::PrimeField(p), Elem::Mod(r)) => r < p,
            _ => false,
        }
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (BaseRing::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (BaseRing::PrimeField(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod((x + y) % p),
            _ => panic!("element outside {self:?}"),
        }
    }

    fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (BaseRing::Integers, Elem::Int(x)) => Elem::Int(-x),
            (BaseRing::PrimeField(p), Elem::Mod(x)) => Elem::Mod((p - x) % p),
            _ => panic!("element outside {self:?}"),
        }
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (BaseRing::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (BaseRing::PrimeField(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(x * y % p),
            _ => panic!("element outside {self:?}"),
        }
    }

    fn render(&self, e: &Elem) -> String {
        match e {
            Elem::Int(x) => x.to_string(),
            Elem::Mod(x) => x.to_string(),
            Elem::Group(_) => panic!("group element in base ring"),
        }
    }

    fn parse(&self, s: &str) -> Result<Elem> {
        let v: BigInt = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer literal {s:?}")))?;
        Ok(self.from_int(&v))
    }

    fn name(&self) -> String {
        match self {
            BaseRing::Integers => "Z".into(),
            BaseRing::PrimeField(p) => format!("Fp:{p}"),
        }
    }
}

impl Elem {
    pub fn int(v: i64) -> Elem {
        Elem::Int(BigInt::from(v))
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Elem::Int(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_mod(&self) -> Option<u64> {
        match self {
            Elem::Mod(x) => Some(*x),
            _ => None,
        }
    }

    pub fn coefficients(&self) -> Option<&[Elem]> {
        match self {
            Elem::Group(c) => Some(c),
            _ => None,
        }
    }
}

impl Ring {
    pub fn integers() -> Self {
        Ring {
            base: BaseRing::Integers,
            group: None,
        }
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        Ok(Ring {
            base: BaseRing::prime_field(p)?,
            group: None,
        })
    }

    pub fn group_ring(base: BaseRing, group: GroupTable) -> Self {
        Ring {
            base,
            group: Some(Arc::new(group)),
        }
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    /// The coefficient ring as a ring in its own right.
    pub fn base_ring(&self) -> Ring {
        Ring {
            base: self.base,
            group: None,
        }
    }

    pub fn group(&self) -> Option<&GroupTable> {
        self.group.as_deref()
    }

    pub fn is_group_ring(&self) -> bool {
        self.group.is_some()
    }

    pub fn is_field(&self) -> bool {
        self.group.is_none() && matches!(self.base, BaseRing::PrimeField(_))
    }

    pub fn is_integers(&self) -> bool {
        self.group.is_none() && self.base == BaseRing::Integers
    }

    /// Rank of the ring as a module over its base ring.
    pub fn base_multiplicity(&self) -> usize {
        self.group.as_ref().map_or(1, |g| g.order())
    }

    /// Short descriptor: `Z`, `Fp:<p>`, `ZG` or `FpG:<p>`.
    pub fn descriptor(&self) -> String {
        match (&self.base, &self.group) {
            (BaseRing::Integers, None) => "Z".into(),
            (BaseRing::PrimeField(p), None) => format!("Fp:{p}"),
            (BaseRing::Integers, Some(_)) => "ZG".into(),
            (BaseRing::PrimeField(p), Some(_)) => format!("FpG:{p}"),
        }
    }

    pub fn zero(&self) -> Elem {
        match &self.group {
            None => self.base.zero(),
            Some(g) => Elem::Group(vec![self.base.zero(); g.order()]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        self.from_int(&BigInt::from(v))
    }

    /// Image of an integer under the unique ring map from the integers.
    pub fn from_int(&self, v: &BigInt) -> Elem {
        let c = self.base.from_int(v);
        match &self.group {
            None => c,
            Some(g) => {
                let mut coeffs = vec![self.base.zero(); g.order()];
                coeffs[g.identity()] = c;
                Elem::Group(coeffs)
            }
        }
    }

    /// The basis element of the group ring for group element `index`.
    pub fn group_element(&self, index: usize) -> Result<Elem> {
        let g = self.group.as_ref().ok_or_else(|| Error::Unsupported {
            op: "group_element",
            ring: self.descriptor(),
        })?;
        if index >= g.order() {
            return Err(Error::Parse(format!("group element g{index} out of range")));
        }
        let mut coeffs = vec![self.base.zero(); g.order()];
        coeffs[index] = self.base.from_int(&BigInt::one());
        Ok(Elem::Group(coeffs))
    }

    /// Builds a group-ring element from integer coefficients in table order.
    pub fn group_ring_element(&self, coeffs: &[i64]) -> Result<Elem> {
        let g = self.group.as_ref().ok_or_else(|| Error::Unsupported {
            op: "group_ring_element",
            ring: self.descriptor(),
        })?;
        if coeffs.len() != g.order() {
            return Err(Error::Parse(format!(
                "expected {} coefficients, got {}",
                g.order(),
                coeffs.len()
            )));
        }
        Ok(Elem::Group(
            coeffs
                .iter()
                .map(|&c| self.base.from_int(&BigInt::from(c)))
                .collect(),
        ))
    }

    /// Builds an element from base-ring coefficients in table order.
    pub fn from_coefficients(&self, coeffs: Vec<Elem>) -> Result<Elem> {
        let e = Elem::Group(coeffs);
        if self.contains(&e) {
            Ok(e)
        } else {
            Err(Error::NotInRing {
                ring: self.descriptor(),
            })
        }
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match (&self.group, e) {
            (None, e) => self.base.contains(e),
            (Some(g), Elem::Group(c)) => {
                c.len() == g.order() && c.iter().all(|x| self.base.contains(x))
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        match e {
            Elem::Int(x) => x.is_zero(),
            Elem::Mod(x) => *x == 0,
            Elem::Group(c) => c.iter().all(|x| self.base_is_zero(x)),
        }
    }

    fn base_is_zero(&self, e: &Elem) -> bool {
        match e {
            Elem::Int(x) => x.is_zero(),
            Elem::Mod(x) => *x == 0,
            Elem::Group(_) => false,
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Group(x), Elem::Group(y)) => Elem::Group(
                x.iter()
                    .zip(y)
                    .map(|(u, v)| self.base.add(u, v))
                    .collect(),
            ),
            _ => self.base.add(a, b),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Group(x) => Elem::Group(x.iter().map(|u| self.base.neg(u)).collect()),
            _ => self.base.neg(a),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    /// Ring product; for group rings this is convolution over the Cayley
    /// table and is not commutative in general.
    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b, &self.group) {
            (Elem::Group(x), Elem::Group(y), Some(g)) => {
                let mut out = vec![self.base.zero(); g.order()];
                for (i, u) in x.iter().enumerate() {
                    if self.base_is_zero(u) {
                        continue;
                    }
                    for (j, v) in y.iter().enumerate() {
                        if self.base_is_zero(v) {
                            continue;
                        }
                        let k = g.mult(i, j);
                        out[k] = self.base.add(&out[k], &self.base.mul(u, v));
                    }
                }
                Elem::Group(out)
            }
            _ => self.base.mul(a, b),
        }
    }

    fn check(&self, e: &Elem) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::NotInRing {
                ring: self.descriptor(),
            })
        }
    }

    pub fn try_add(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn try_mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn try_neg(&self, a: &Elem) -> Result<Elem> {
        self.check(a)?;
        Ok(self.neg(a))
    }

    /// Matrix of left multiplication by `a` on the free base-ring module with
    /// basis the group elements in table order.
    pub fn regular_representation(&self, a: &Elem) -> Result<Matrix> {
        let g = self.group.as_ref().ok_or_else(|| Error::Unsupported {
            op: "regular_representation",
            ring: self.descriptor(),
        })?;
        self.check(a)?;
        let base = self.base_ring();
        let n = g.order();
        let mut m = Matrix::zeros(&base, n, n);
        let coeffs = a.coefficients().expect("checked");
        for (i, c) in coeffs.iter().enumerate() {
            if self.base_is_zero(c) {
                continue;
            }
            for j in 0..n {
                let k = g.mult(i, j);
                let v = base.add(m.get(k, j), c);
                m.set(k, j, v);
            }
        }
        Ok(m)
    }

    /// Textual form: integers and residues in decimal; group-ring elements
    /// as `c0+c1*g1-g2` with the identity term written as a bare constant.
    pub fn render(&self, e: &Elem) -> String {
        let Some(g) = &self.group else {
            return self.base.render(e);
        };
        let coeffs = e.coefficients().expect("group-ring element");
        let mut order: Vec<usize> = vec![g.identity()];
        order.extend((0..g.order()).filter(|&i| i != g.identity()));
        let mut out = String::new();
        for i in order {
            let c = &coeffs[i];
            if self.base_is_zero(c) {
                continue;
            }
            let (negative, mag) = match c {
                Elem::Int(x) => (x.is_negative(), x.abs().to_string()),
                Elem::Mod(x) => (false, x.to_string()),
                Elem::Group(_) => unreachable!(),
            };
            if negative {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if i == g.identity() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&format!("g{i}"));
            } else {
                out.push_str(&format!("{mag}*g{i}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn parse(&self, s: &str) -> Result<Elem> {
        let Some(g) = &self.group else {
            return self.base.parse(s);
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut coeffs = vec![BigInt::zero(); g.order()];
        let bytes = compact.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(Error::Parse(format!("expected sign in {s:?}")));
            }
            let end = compact[pos..]
                .find(['+', '-'])
                .map_or(compact.len(), |e| pos + e);
            let term = &compact[pos..end];
            let (coef, index) = parse_term(term, g.identity())
                .ok_or_else(|| Error::Parse(format!("bad term {term:?} in {s:?}")))?;
            if index >= g.order() {
                return Err(Error::Parse(format!("group element g{index} out of range")));
            }
            coeffs[index] += sign * coef;
            pos = end;
        }
        Ok(Elem::Group(
            coeffs.iter().map(|c| self.base.from_int(c)).collect(),
        ))
    }

    /// Base-ring literals of a group-ring element in table order.
    pub fn render_coefficients(&self, e: &Elem) -> Vec<String> {
        e.coefficients()
            .expect("group-ring element")
            .iter()
            .map(|c| self.base.render(c))
            .collect()
    }

    pub fn parse_coefficients(&self, lits: &[String]) -> Result<Elem> {
        let coeffs = lits
            .iter()
            .map(|l| self.base.parse(l))
            .collect::<Result<Vec<_>>>()?;
        self.from_coefficients(coeffs)
    }

    pub fn base_name(&self) -> String {
        self.base.name()
    }
}

fn parse_term(term: &str, identity: usize) -> Option<(BigInt, usize)> {
    if let Some((c, gpart)) = term.split_once('*') {
        let coef: BigInt = c.parse().ok()?;
        let index: usize = gpart.strip_prefix('g')?.parse().ok()?;
        Some((coef, index))
    } else if let Some(idx) = term.strip_prefix('g') {
        Some((BigInt::one(), idx.parse().ok()?))
    } else {
        Some((term.parse().ok()?, identity))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.group {
            None => write!(f, "{}", self.descriptor()),
            Some(g) => write!(f, "{}[G of order {}]", self.descriptor(), g.order()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Ring {
        Ring::group_ring(BaseRing::Integers, GroupTable::cyclic(2))
    }

    #[test]
    fn integer_and_field_arithmetic() {
        let z = Ring::integers();
        assert_eq!(z.add(&Elem::int(2), &Elem::int(3)), Elem::int(5));
        let f5 = Ring::prime_field(5).unwrap();
        assert_eq!(f5.mul(&Elem::Mod(3), &Elem::Mod(4)), Elem::Mod(2));
        assert_eq!(f5.neg(&Elem::Mod(0)), Elem::Mod(0));
        assert_eq!(f5.from_i64(-1), Elem::Mod(4));
    }

    #[test]
    fn c2_norm_times_difference_vanishes() {
        let r = c2();
        let plus = r.parse("1+g1").unwrap();
        let minus = r.parse("1-g1").unwrap();
        assert!(r.is_zero(&r.mul(&plus, &minus)));
        assert!(r.is_zero(&r.mul(&minus, &plus)));
    }

    #[test]
    fn regular_representation_examples() {
        let r = c2();
        let z = Ring::integers();
        assert!(r.regular_representation(&r.one()).unwrap().is_identity());
        let t = r.group_element(1).unwrap();
        assert_eq!(
            r.regular_representation(&t).unwrap(),
            Matrix::from_i64(&z, &[vec![0, 1], vec![1, 0]])
        );
        let n = r.parse("1+g1").unwrap();
        let rep_n = r.regular_representation(&n).unwrap();
        assert_eq!(rep_n, Matrix::from_i64(&z, &[vec![1, 1], vec![1, 1]]));
        let nt = r.mul(&n, &t);
        assert_eq!(
            r.regular_representation(&nt).unwrap(),
            rep_n.mul(&r.regular_representation(&t).unwrap()).unwrap()
        );
    }

    #[test]
    fn regular_representation_rejects_plain_rings() {
        let z = Ring::integers();
        assert!(matches!(
            z.regular_representation(&Elem::int(1)),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn s3_is_nonabelian() {
        let g = GroupTable::symmetric3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let r = Ring::group_ring(BaseRing::Integers, g);
        let a = r.group_element(1).unwrap();
        let b = r.group_element(3).unwrap();
        assert_ne!(r.mul(&a, &b), r.mul(&b, &a));
    }

    #[test]
    fn bad_tables_are_rejected() {
        assert!(GroupTable::new(vec![vec![0, 0], vec![0, 1]], 1).is_err());
        assert!(GroupTable::new(vec![vec![0, 1], vec![1, 1]], 0).is_err());
        assert!(GroupTable::new(vec![], 0).is_err());
        assert!(Ring::prime_field(4).is_err());
        assert!(Ring::prime_field(1).is_err());
    }

    #[test]
    fn mismatched_elements_error() {
        let z = Ring::integers();
        assert!(z.try_add(&Elem::int(1), &Elem::Mod(1)).is_err());
        let f3 = Ring::prime_field(3).unwrap();
        assert!(f3.try_mul(&Elem::Mod(5), &Elem::Mod(1)).is_err());
        assert!(c2().try_neg(&Elem::int(1)).is_err());
    }

    #[test]
    fn render_parse_examples() {
        let r = c2();
        assert_eq!(r.render(&r.parse("g1 - 1").unwrap()), "-1+g1");
        assert_eq!(r.render(&r.zero()), "0");
        assert_eq!(r.render(&r.parse("3*g1+2").unwrap()), "2+3*g1");
        assert!(r.parse("2*h1").is_err());
        assert!(r.parse("g7").is_err());
    }
}
