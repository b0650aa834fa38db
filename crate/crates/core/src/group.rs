//! Catalog finite groups with counting Haar measure, and signals on them.
//!
//! Elements are dense indices into flat multiplication and inverse tables.
//! Element orderings are part of the file contract:
//!
//! * cyclic `Z_n`: `0, 1, …, n−1`
//! * dihedral `D_n`: `r^0, …, r^{n−1}, s·r^0, …, s·r^{n−1}`
//! * Heisenberg `H(Z_q)`: `(x, y, z)` lexicographic, index `x·q² + y·q + z`
//! * quaternion `Q_8`: `1, −1, i, −i, j, −j, k, −k`

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{C64, ZERO};

/// Which catalog family a group came from; the dual construction keys on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    Dihedral(usize),
    HeisenbergMod(usize),
    Quaternion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    kind: GroupKind,
    labels: Vec<String>,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    fn from_law(
        name: String,
        kind: GroupKind,
        labels: Vec<String>,
        law: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let n = labels.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push(law(a, b));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e * n + g] == g && mul[g * n + e] == g))
            .expect("catalog law has an identity");
        let inv = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| mul[g * n + h] == identity)
                    .expect("catalog law has inverses")
            })
            .collect();
        Self {
            name,
            kind,
            labels,
            mul,
            inv,
            identity,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exhaustive scan of the group axioms. Returns the first violated law
    /// as an error.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order();
        if self.mul.len() != n * n || self.inv.len() != n || self.identity >= n {
            return Err(Error::Malformed(format!("{}: table sizes", self.name)));
        }
        if self.mul.iter().chain(&self.inv).any(|&g| g >= n) {
            return Err(Error::Malformed(format!("{}: entry out of range", self.name)));
        }
        let e = self.identity;
        for a in 0..n {
            if self.mul(e, a) != a || self.mul(a, e) != a {
                return Err(Error::Malformed(format!("{}: identity law at {a}", self.name)));
            }
            let ai = self.inv(a);
            if self.mul(a, ai) != e || self.mul(ai, a) != e {
                return Err(Error::Malformed(format!("{}: inverse law at {a}", self.name)));
            }
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Malformed(format!(
                            "{}: associativity at ({a},{b},{c})",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_cache(&self) -> GroupCache {
        let n = self.order();
        GroupCache {
            name: self.name.clone(),
            order: n,
            mul: self.mul.chunks(n).map(<[usize]>::to_vec).collect(),
            inv: self.inv.clone(),
            identity: self.identity,
            labels: self.labels.clone(),
        }
    }

    /// Rebuilds a group from its cache file. The name must be a catalog name
    /// and the tables must match the builder exactly.
    pub fn from_cache(cache: &GroupCache) -> Result<Self> {
        let built = by_name(&cache.name)?;
        let n = cache.order;
        let flat: Vec<usize> = cache.mul.iter().flatten().copied().collect();
        if n != built.order()
            || cache.mul.iter().any(|row| row.len() != n)
            || flat != built.mul
            || cache.inv != built.inv
            || cache.identity != built.identity
            || cache.labels != built.labels
        {
            return Err(Error::Malformed(format!(
                "group cache for {} disagrees with the catalog builder",
                cache.name
            )));
        }
        Ok(built)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

/// On-disk layout of a group.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupCache {
    pub name: String,
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
    pub labels: Vec<String>,
}

pub fn build_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic order must be >= 1".into()));
    }
    let labels = (0..n).map(|k| k.to_string()).collect();
    Ok(FiniteGroup::from_law(
        format!("Z{n}"),
        GroupKind::Cyclic(n),
        labels,
        |a, b| (a + b) % n,
    ))
}

pub fn build_dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(Error::InvalidParameter("dihedral n must be >= 3".into()));
    }
    let labels = (0..n)
        .map(|k| format!("r^{k}"))
        .chain((0..n).map(|k| format!("sr^{k}")))
        .collect();
    // r^a s = s r^{-a}
    let law = move |a: usize, b: usize| {
        let (fa, ka) = (a >= n, a % n);
        let (fb, kb) = (b >= n, b % n);
        match (fa, fb) {
            (false, false) => (ka + kb) % n,
            (false, true) => n + (kb + n - ka) % n,
            (true, false) => n + (ka + kb) % n,
            (true, true) => (kb + n - ka) % n,
        }
    };
    Ok(FiniteGroup::from_law(
        format!("D{n}"),
        GroupKind::Dihedral(n),
        labels,
        law,
    ))
}

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// `H(Z_q)`: `(x₁,y₁,z₁)(x₂,y₂,z₂) = (x₁+x₂, y₁+y₂, z₁+z₂+x₁y₂) mod q`.
pub fn build_heisenberg_mod(q: usize) -> Result<FiniteGroup> {
    if !is_prime(q as u64) {
        return Err(Error::NotPrime(q as u64));
    }
    let n = q * q * q;
    let labels = (0..n)
        .map(|g| format!("({},{},{})", g / (q * q), (g / q) % q, g % q))
        .collect();
    let law = move |a: usize, b: usize| {
        let (x1, y1, z1) = (a / (q * q), (a / q) % q, a % q);
        let (x2, y2, z2) = (b / (q * q), (b / q) % q, b % q);
        let x = (x1 + x2) % q;
        let y = (y1 + y2) % q;
        let z = (z1 + z2 + x1 * y2) % q;
        x * q * q + y * q + z
    };
    Ok(FiniteGroup::from_law(
        format!("H{q}"),
        GroupKind::HeisenbergMod(q),
        labels,
        law,
    ))
}

/// Index of `(x, y, z)` in `H(Z_q)`.
pub fn heisenberg_index(q: usize, x: usize, y: usize, z: usize) -> usize {
    (x % q) * q * q + (y % q) * q + z % q
}

pub fn build_quaternion() -> FiniteGroup {
    const LABELS: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    // unit table over {1,i,j,k} as (sign, unit)
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let law = |a: usize, b: usize| {
        let (sa, ua) = (a % 2 == 1, a / 2);
        let (sb, ub) = (b % 2 == 1, b / 2);
        let (s, u) = UNIT[ua][ub];
        2 * u + usize::from(s ^ sa ^ sb)
    };
    FiniteGroup::from_law(
        "Q8".into(),
        GroupKind::Quaternion,
        LABELS.iter().map(|s| s.to_string()).collect(),
        law,
    )
}

/// Builds a catalog group from its name: `Z<n>`, `D<n>`, `H<q>` or `Q8`.
pub fn by_name(name: &str) -> Result<FiniteGroup> {
    let unknown = || Error::UnknownGroup(name.to_string());
    if name == "Q8" {
        return Ok(build_quaternion());
    }
    let (head, tail) = name.split_at(name.len().min(1));
    let n: usize = tail.parse().map_err(|_| unknown())?;
    match head {
        "Z" => build_cyclic(n),
        "D" => build_dihedral(n),
        "H" => build_heisenberg_mod(n),
        _ => Err(unknown()),
    }
}

/// The groups exercised by the acceptance suite.
pub const CATALOG: [&str; 10] = ["Z2", "Z4", "Z6", "Z12", "D3", "D4", "D6", "H2", "H3", "Q8"];

pub fn catalog() -> Vec<FiniteGroup> {
    CATALOG
        .iter()
        .map(|n| by_name(n).expect("catalog names are valid"))
        .collect()
}

/// A complex-valued function on a finite group.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    group: Arc<FiniteGroup>,
    values: Vec<C64>,
}

impl Signal {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<C64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: values.len(),
            });
        }
        Ok(Self { group, values })
    }

    pub fn from_fn(group: &Arc<FiniteGroup>, f: impl Fn(usize) -> C64) -> Self {
        let values = group.elements().map(f).collect();
        Self {
            group: Arc::clone(group),
            values,
        }
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        Self::from_fn(group, |_| ZERO)
    }

    pub fn delta(group: &Arc<FiniteGroup>, x: usize) -> Self {
        Self::from_fn(group, |y| if y == x { C64::new(1.0, 0.0) } else { ZERO })
    }

    pub fn constant(group: &Arc<FiniteGroup>, c: C64) -> Self {
        Self::from_fn(group, |_| c)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    #[inline]
    pub fn at(&self, x: usize) -> C64 {
        self.values[x]
    }

    pub fn same_group(&self, other: &FiniteGroup) -> Result<()> {
        if self.group.name() != other.name() || self.group.order() != other.order() {
            return Err(Error::GroupMismatch {
                expected: other.name().to_string(),
                found: self.group.name().to_string(),
            });
        }
        Ok(())
    }

    /// `‖f‖² = Σ_x |f(x)|²`.
    pub fn norm2(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm2().sqrt()
    }

    /// `<f, g> = Σ_x f(x) conj(g(x))` under counting measure.
    pub fn inner(&self, other: &Signal) -> Result<C64> {
        other.same_group(&self.group)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    pub fn map(&self, f: impl Fn(usize, C64) -> C64) -> Self {
        Self {
            group: Arc::clone(&self.group),
            values: self.values.iter().enumerate().map(|(i, &z)| f(i, z)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.map(|_, z| z.conj())
    }

    pub fn scale(&self, c: C64) -> Self {
        self.map(|_, z| c * z)
    }

    pub fn add(&self, other: &Signal) -> Result<Self> {
        other.same_group(&self.group)?;
        Ok(self.map(|i, z| z + other.values[i]))
    }

    /// Pointwise product.
    pub fn pointwise(&self, other: &Signal) -> Result<Self> {
        other.same_group(&self.group)?;
        Ok(self.map(|i, z| z * other.values[i]))
    }

    pub fn max_abs_diff(&self, other: &Signal) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `L_x f(y) = f(x⁻¹ y)`.
pub fn left_translate(f: &Signal, x: usize) -> Signal {
    let g = f.group();
    let xi = g.inv(x);
    Signal::from_fn(g, |y| f.at(g.mul(xi, y)))
}

/// `R_x f(y) = f(y x)`.
pub fn right_translate(f: &Signal, x: usize) -> Signal {
    let g = f.group();
    Signal::from_fn(g, |y| f.at(g.mul(y, x)))
}

/// `f̃(y) = conj(f(y⁻¹))`.
pub fn involution(f: &Signal) -> Signal {
    let g = f.group();
    Signal::from_fn(g, |y| f.at(g.inv(y)).conj())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cyclic_group() {
        let g = build_cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
        g.check_axioms().unwrap();
        assert!(build_cyclic(0).is_err());
    }

    #[test]
    fn cyclic_arithmetic() {
        let g = build_cyclic(4).unwrap();
        assert_eq!(g.mul(1, 3), 0);
        assert_eq!(g.inv(1), 3);
        build_cyclic(6).unwrap().check_axioms().unwrap();
    }

    #[test]
    fn dihedral_relations() {
        let d3 = build_dihedral(3).unwrap();
        assert_eq!(d3.order(), 6);
        let r = d3.index_of("r^1").unwrap();
        let s = d3.index_of("sr^0").unwrap();
        assert_ne!(d3.mul(s, r), d3.mul(r, s));
        // s r s = r^{-1}
        assert_eq!(d3.mul(d3.mul(s, r), s), d3.inv(r));
        let d4 = build_dihedral(4).unwrap();
        for k in 0..4 {
            let sr = 4 + k;
            assert_eq!(d4.inv(sr), sr);
        }
        d4.check_axioms().unwrap();
        assert!(build_dihedral(2).is_err());
    }

    #[test]
    fn heisenberg_mod_law() {
        assert_eq!(build_heisenberg_mod(2).unwrap().order(), 8);
        let h = build_heisenberg_mod(3).unwrap();
        let a = heisenberg_index(3, 1, 0, 0);
        let b = heisenberg_index(3, 0, 1, 0);
        assert_eq!(h.label(h.mul(a, b)), "(1,1,1)");
        assert_eq!(h.label(h.mul(b, a)), "(1,1,0)");
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    let g = heisenberg_index(3, x, y, z);
                    let expect = heisenberg_index(3, 3 - x, 3 - y, (3 + 9 - z + x * y) % 3);
                    assert_eq!(h.inv(g), expect);
                }
            }
        }
        assert!(matches!(build_heisenberg_mod(4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn quaternion_relations() {
        let g = build_quaternion();
        let idx = |s: &str| g.index_of(s).unwrap();
        assert_eq!(g.mul(idx("i"), idx("j")), idx("k"));
        assert_eq!(g.mul(idx("j"), idx("i")), idx("-k"));
        assert_eq!(g.inv(idx("i")), idx("-i"));
        assert_eq!(g.mul(idx("i"), idx("i")), idx("-1"));
        g.check_axioms().unwrap();
        assert!(!g.is_abelian());
    }

    #[test]
    fn every_catalog_group_satisfies_the_axioms() {
        for g in catalog() {
            g.check_axioms().unwrap();
        }
    }

    #[test]
    fn by_name_round_trips() {
        for name in CATALOG {
            assert_eq!(by_name(name).unwrap().name(), name);
        }
        assert!(matches!(by_name("X3"), Err(Error::UnknownGroup(_))));
        assert!(by_name("").is_err());
    }

    #[test]
    fn cache_round_trip_and_tamper_detection() {
        let g = build_dihedral(4).unwrap();
        let cache = g.to_cache();
        let json = serde_json::to_string(&cache).unwrap();
        let back: GroupCache = serde_json::from_str(&json).unwrap();
        assert_eq!(FiniteGroup::from_cache(&back).unwrap(), g);
        let mut bad = cache.clone();
        bad.mul[1][1] = 0;
        assert!(FiniteGroup::from_cache(&bad).is_err());
    }

    #[test]
    fn translations_compose() {
        let g = Arc::new(build_dihedral(3).unwrap());
        let f = Signal::from_fn(&g, |i| C64::new(i as f64, (i * i) as f64 * 0.5));
        assert_eq!(left_translate(&f, g.identity()), f);
        for x in g.elements() {
            for y in g.elements() {
                let xy = g.mul(x, y);
                assert_eq!(
                    left_translate(&left_translate(&f, y), x),
                    left_translate(&f, xy)
                );
                assert_eq!(
                    right_translate(&right_translate(&f, y), x),
                    right_translate(&f, xy)
                );
            }
        }
        assert_eq!(involution(&involution(&f)), f);
    }

    #[test]
    fn signal_length_is_checked() {
        let g = Arc::new(build_cyclic(3).unwrap());
        assert!(Signal::new(g, vec![ZERO; 2]).is_err());
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let a = Arc::new(build_cyclic(4).unwrap());
        let b = Arc::new(build_dihedral(4).unwrap());
        let f = Signal::zero(&a);
        let g = Signal::zero(&b);
        assert!(matches!(f.inner(&g), Err(Error::GroupMismatch { .. })));
    }
}
