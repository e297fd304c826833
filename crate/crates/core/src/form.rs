//! Graded exterior algebra of complex `(p,q)`-forms.
//!
//! Every stored term is `coeff * dz^I ^ dzb^J` with all `dz` factors ahead
//! of all `dzb` factors and both blocks strictly increasing. All signs in the
//! engine come from sorting into this order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Variable, WirtingerPolynomial};
use crate::scalar::GaussianRational;

/// Strictly increasing tuple of indices in `1..=n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Accepts any order; returns `None` on a repeated index.
    pub fn new(mut indices: Vec<usize>) -> Option<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Self(indices))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    /// Increasing complement in `1..=n`.
    pub fn complement(&self, n: usize) -> Self {
        Self((1..=n).filter(|j| !self.contains(*j)).collect())
    }

    pub fn largest(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// All strictly increasing `k`-subsets of `1..=n`, in lexicographic order.
    pub fn all_of_size(n: usize, k: usize) -> Vec<Self> {
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if cur.len() == k {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for j in start..=n {
                cur.push(j);
                rec(j + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k <= n {
            rec(1, n, k, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl From<&[usize]> for MultiIndex {
    /// Panics on repeated indices.
    fn from(v: &[usize]) -> Self {
        Self::new(v.to_vec()).expect("distinct indices")
    }
}

/// Parity of concatenating two increasing blocks, `None` if they overlap.
pub(crate) fn merge_sign(a: &[usize], b: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut inversions = 0usize;
    let mut merged = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                merged.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                inversions += a.len() - i;
                merged.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    merged.extend_from_slice(&a[i..]);
    merged.extend_from_slice(&b[j..]);
    Some((inversions % 2 == 1, merged))
}

/// Parity of the permutation that sorts `seq`, `None` on a repeat.
pub(crate) fn sort_sign(seq: &[usize]) -> Option<bool> {
    let mut odd = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return None;
            }
            if seq[i] > seq[j] {
                odd = !odd;
            }
        }
    }
    Some(odd)
}

/// `(dz^I1 ^ dzb^J1) ^ (dz^I2 ^ dzb^J2) = ± dz^I ^ dzb^J`.
fn wedge_basis(
    i1: &MultiIndex,
    j1: &MultiIndex,
    i2: &MultiIndex,
    j2: &MultiIndex,
) -> Option<(bool, MultiIndex, MultiIndex)> {
    let (si, i) = merge_sign(&i1.0, &i2.0)?;
    let (sj, j) = merge_sign(&j1.0, &j2.0)?;
    // dzb^J1 travels past dz^I2
    let cross = (j1.len() * i2.len()) % 2 == 1;
    Some((si ^ sj ^ cross, MultiIndex(i), MultiIndex(j)))
}

/// A single `dz_k` or `dzb_k` factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Differential {
    Dz(usize),
    Dzbar(usize),
}

impl Differential {
    pub fn index(self) -> usize {
        match self {
            Differential::Dz(k) | Differential::Dzbar(k) => k,
        }
    }
}

pub type Basis = (MultiIndex, MultiIndex);

/// Sum of terms `coeff * dz^I ^ dzb^J`, graded sums allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    n: usize,
    terms: BTreeMap<Basis, WirtingerPolynomial>,
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The 0-form `p`.
    pub fn from_poly(p: WirtingerPolynomial) -> Self {
        let mut out = Self::zero(p.ambient_n());
        out.add_term((MultiIndex::empty(), MultiIndex::empty()), p);
        out
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly(WirtingerPolynomial::one(n))
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        Self::from_poly(WirtingerPolynomial::constant(n, c))
    }

    /// `coeff * dz^I ^ dzb^J` for already-increasing blocks.
    pub fn monomial(n: usize, dz: &[usize], dzbar: &[usize], coeff: WirtingerPolynomial) -> Result<Self> {
        let mut factors: Vec<Differential> = dz.iter().map(|&k| Differential::Dz(k)).collect();
        factors.extend(dzbar.iter().map(|&k| Differential::Dzbar(k)));
        Self::canonicalize_term(n, &factors, coeff)
    }

    pub fn dz(n: usize, k: usize) -> Self {
        Self::canonicalize_term(n, &[Differential::Dz(k)], WirtingerPolynomial::one(n))
            .expect("dz index in range")
    }

    pub fn dzbar(n: usize, k: usize) -> Self {
        Self::canonicalize_term(n, &[Differential::Dzbar(k)], WirtingerPolynomial::one(n))
            .expect("dzb index in range")
    }

    /// Sorts an arbitrary product of differentials into canonical order,
    /// carrying the permutation sign. Repeated factors give the zero form.
    pub fn canonicalize_term(n: usize, factors: &[Differential], coeff: WirtingerPolynomial) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if coeff.ambient_n() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: coeff.ambient_n(),
            });
        }
        // generator order: dz1 < .. < dzn < dzb1 < .. < dzbn
        let mut keys = Vec::with_capacity(factors.len());
        for f in factors {
            let k = f.index();
            if k == 0 || k > n {
                return Err(Error::IndexOutOfRange { index: k, n });
            }
            keys.push(match f {
                Differential::Dz(k) => k - 1,
                Differential::Dzbar(k) => n + k - 1,
            });
        }
        let Some(odd) = sort_sign(&keys) else {
            return Ok(Self::zero(n));
        };
        keys.sort_unstable();
        let i = MultiIndex(keys.iter().filter(|&&k| k < n).map(|k| k + 1).collect());
        let j = MultiIndex(keys.iter().filter(|&&k| k >= n).map(|k| k - n + 1).collect());
        let coeff = if odd { -&coeff } else { coeff };
        let mut out = Self::zero(n);
        out.add_term((i, j), coeff);
        Ok(out)
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &WirtingerPolynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, dz: &[usize], dzbar: &[usize]) -> WirtingerPolynomial {
        self.terms
            .get(&(MultiIndex::from(dz), MultiIndex::from(dzbar)))
            .cloned()
            .unwrap_or_else(|| WirtingerPolynomial::zero(self.n))
    }

    /// Adds a term whose basis is already canonical.
    pub(crate) fn add_term(&mut self, basis: Basis, coeff: WirtingerPolynomial) {
        debug_assert!(basis.0.largest().is_none_or(|m| m <= self.n));
        debug_assert!(basis.1.largest().is_none_or(|m| m <= self.n));
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(basis) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.neg())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("form dimensions agree")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("form dimensions agree")
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GaussianRational::one())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.n);
        for (b, p) in &self.terms {
            out.add_term(b.clone(), p.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, p: &WirtingerPolynomial) -> Result<Self> {
        if p.ambient_n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: p.ambient_n(),
            });
        }
        let mut out = Self::zero(self.n);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), c * p);
        }
        Ok(out)
    }

    pub fn map_coefficients(&self, f: impl Fn(&WirtingerPolynomial) -> WirtingerPolynomial) -> Self {
        let mut out = Self::zero(self.n);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), f(c));
        }
        out
    }

    /// Exterior product: bilinear, associative, graded-anticommutative.
    pub fn wedge(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut out = Self::zero(self.n);
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &rhs.terms {
                if let Some((odd, i, j)) = wedge_basis(i1, j1, i2, j2) {
                    let c = c1 * c2;
                    out.add_term((i, j), if odd { -&c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Complex conjugate: `conj(c dz^I ^ dzb^J) = (-1)^{|I||J|} conj(c) dz^J ^ dzb^I`.
    ///
    /// Conjugating gives `conj(c) dzb^I ^ dz^J`; moving the `|J|` holomorphic
    /// factors past the `|I|` antiholomorphic ones produces the sign. For
    /// example `conj(i dz1 ^ dzb2) = -i dzb1 ^ dz2 = i dz2 ^ dzb1`.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(self.n);
        for ((i, j), c) in &self.terms {
            let c = c.conj();
            let c = if (i.len() * j.len()) % 2 == 1 { -&c } else { c };
            out.add_term((j.clone(), i.clone()), c);
        }
        out
    }

    /// Sum of the terms of bidegree exactly `(p, q)`.
    pub fn bidegree_component(&self, p: usize, q: usize) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| i.len() == p && j.len() == q)
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.terms.keys().map(|(i, j)| (i.len(), j.len())).collect()
    }

    /// Components keyed by bidegree.
    pub fn components(&self) -> BTreeMap<(usize, usize), Form> {
        self.bidegrees()
            .into_iter()
            .map(|(p, q)| ((p, q), self.bidegree_component(p, q)))
            .collect()
    }

    /// `Some((p,q))` when all terms share one bidegree; `None` for the zero
    /// form or mixed bidegrees.
    pub fn homogeneous_bidegree(&self) -> Option<(usize, usize)> {
        let b = self.bidegrees();
        (b.len() == 1).then(|| *b.iter().next().unwrap())
    }

    /// Common total degree; `Err` if terms of different total degree mix.
    /// The zero form reports `Ok(None)`.
    pub fn total_degree(&self) -> Result<Option<usize>> {
        let degs: BTreeSet<usize> = self.terms.keys().map(|(i, j)| i.len() + j.len()).collect();
        match degs.len() {
            0 => Ok(None),
            1 => Ok(degs.into_iter().next()),
            _ => Err(Error::NotHomogeneous(format!("total degrees {degs:?}"))),
        }
    }

    pub fn require_bidegree(&self) -> Result<Option<(usize, usize)>> {
        match self.bidegrees().len() {
            0 => Ok(None),
            1 => Ok(self.homogeneous_bidegree()),
            _ => Err(Error::NotHomogeneous(format!("bidegrees {:?}", self.bidegrees()))),
        }
    }

    /// Whether some coefficient depends on `v`.
    pub fn depends_on(&self, v: Variable) -> Result<bool> {
        for c in self.terms.values() {
            if c.depends_on(v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn basis_string(i: &MultiIndex, j: &MultiIndex) -> String {
    i.0.iter()
        .map(|k| format!("dz{k}"))
        .chain(j.0.iter().map(|k| format!("dzb{k}")))
        .collect::<Vec<_>>()
        .join("^")
}

/// Canonical DSL rendering; terms ordered by `(|I|+|J|, I, J)`.
impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Basis> = self.terms.keys().collect();
        keys.sort_by(|a, b| (a.0.len() + a.1.len(), a).cmp(&(b.0.len() + b.1.len(), b)));
        let mut out = String::new();
        for key in keys {
            let c = &self.terms[key];
            let (i, j) = key;
            let term = if i.is_empty() && j.is_empty() {
                c.to_string()
            } else {
                let basis = basis_string(i, j);
                match c.constant_value() {
                    Some(v) if v.is_one() => basis,
                    Some(v) if (-&v).is_one() => format!("-{basis}"),
                    _ => {
                        let s = c.to_string();
                        if s[1..].contains(['+', '-']) {
                            format!("({s})*{basis}")
                        } else {
                            format!("{s}*{basis}")
                        }
                    }
                }
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Differential::{Dz, Dzbar};

    fn one(n: usize) -> WirtingerPolynomial {
        WirtingerPolynomial::one(n)
    }

    fn mono(n: usize, i: &[usize], j: &[usize], c: i64) -> Form {
        Form::monomial(n, i, j, WirtingerPolynomial::constant(n, c.into())).unwrap()
    }

    // brute force: count inversions over the generator order by bubble sort
    fn bubble_parity(keys: &[usize]) -> bool {
        let mut v = keys.to_vec();
        let mut swaps = 0;
        for a in 0..v.len() {
            for b in 0..v.len() - 1 - a {
                if v[b] > v[b + 1] {
                    v.swap(b, b + 1);
                    swaps += 1;
                }
            }
        }
        swaps % 2 == 1
    }

    #[test]
    fn canonicalize_examples() {
        assert!(Form::canonicalize_term(2, &[Dz(1), Dz(1)], one(2))
            .unwrap()
            .is_zero());
        assert_eq!(
            Form::canonicalize_term(1, &[Dzbar(1), Dz(1)], one(1)).unwrap(),
            mono(1, &[1], &[1], -1)
        );
        // [dz1, dzb3, dz2] in generator keys (n=3): [0, 5, 1]
        assert!(bubble_parity(&[0, 5, 1]));
        assert_eq!(
            Form::canonicalize_term(3, &[Dz(1), Dzbar(3), Dz(2)], one(3)).unwrap(),
            mono(3, &[1, 2], &[3], -1)
        );
        assert_eq!(
            Form::canonicalize_term(2, &[Dz(3)], one(2)),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        );
    }

    #[test]
    fn wedge_examples() {
        let n = 4;
        let dz1 = Form::dz(n, 1);
        assert!(dz1.wedge(&dz1).unwrap().is_zero());

        let f1 = WirtingerPolynomial::z(n, 1);
        let f2 = WirtingerPolynomial::zbar(n, 3);
        let a = Form::monomial(n, &[1, 2], &[], f1.clone()).unwrap();
        let b = Form::monomial(n, &[], &[3, 4], f2.clone()).unwrap();
        assert_eq!(
            a.wedge(&b).unwrap(),
            Form::monomial(n, &[1, 2], &[3, 4], &f1 * &f2).unwrap()
        );

        let p = mono(2, &[1], &[1], 1);
        let q = mono(2, &[2], &[2], 1);
        assert_eq!(p.wedge(&q).unwrap(), mono(2, &[1, 2], &[1, 2], -1));
        assert!(Form::dz(2, 1).wedge(&Form::dz(3, 1)).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let n = 4;
        // f(z3,z4) = z3 + 2*z4**2
        let f = &WirtingerPolynomial::z(n, 3) + &WirtingerPolynomial::z(n, 4).pow(2).scale(&2.into());
        let fbar =
            &WirtingerPolynomial::zbar(n, 3) + &WirtingerPolynomial::zbar(n, 4).pow(2).scale(&2.into());
        let a = Form::monomial(n, &[3, 4], &[], f).unwrap();
        assert_eq!(a.conjugate(), Form::monomial(n, &[], &[3, 4], fbar).unwrap());

        let b = Form::monomial(
            2,
            &[1],
            &[2],
            WirtingerPolynomial::constant(2, GaussianRational::i()),
        )
        .unwrap();
        let expected = Form::monomial(
            2,
            &[2],
            &[1],
            WirtingerPolynomial::constant(2, GaussianRational::i()),
        )
        .unwrap();
        assert_eq!(b.conjugate(), expected);
        assert_eq!(b.conjugate().conjugate(), b);
    }

    #[test]
    fn bidegree_extraction() {
        let a = Form::dz(1, 1).add(&mono(1, &[1], &[1], 1));
        assert_eq!(a.bidegree_component(1, 0), Form::dz(1, 1));
        assert!(Form::zero(3).bidegree_component(1, 1).is_zero());
        let psi = mono(4, &[1, 2], &[3, 4], 1);
        assert_eq!(psi.bidegree_component(2, 2), psi);
        assert!(a
            .require_bidegree()
            .unwrap_err()
            .to_string()
            .contains("bidegrees"));
    }

    #[test]
    fn multi_index_helpers() {
        assert_eq!(MultiIndex::all_of_size(4, 2).len(), 6);
        assert_eq!(
            MultiIndex::from(&[2, 4][..]).complement(4),
            MultiIndex::from(&[1, 3][..])
        );
        assert!(MultiIndex::new(vec![1, 1]).is_none());
        assert_eq!(merge_sign(&[2], &[1]), Some((true, vec![1, 2])));
    }

    #[test]
    fn display_examples() {
        assert_eq!(Form::zero(2).to_string(), "0");
        let b = Form::monomial(
            2,
            &[1],
            &[2],
            WirtingerPolynomial::constant(2, GaussianRational::i()),
        )
        .unwrap();
        assert_eq!(b.conjugate().to_string(), "i*dz2^dzb1");
        let f = &WirtingerPolynomial::z(2, 1) + &WirtingerPolynomial::one(2);
        let a = Form::monomial(2, &[1], &[], f)
            .unwrap()
            .add(&Form::constant(2, 3.into()));
        assert_eq!(a.to_string(), "3+(z1+1)*dz1");
        assert_eq!(mono(2, &[1, 2], &[], -1).to_string(), "-dz1^dz2");
    }
}
