//! Invariant exterior forms with exact coefficients.
//!
//! A form is a sparse map from monomials `phi^{I} ^ phibar^{J}` (holomorphic
//! block strictly before the antiholomorphic block, both strictly increasing)
//! to scalars. Forms may be inhomogeneous; zero coefficients are never stored.

use crate::multiindex::MultiIndex;
use crate::scalar::{sigma, Scalar};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u8, u8),
    #[error("index {0} out of range for dimension {1}")]
    IndexOutOfRange(u8, u8),
    #[error("repeated index in monomial")]
    RepeatedIndex,
    #[error("expected a homogeneous form")]
    NotHomogeneous,
    #[error("expected bidegree ({0},{1})")]
    WrongBidegree(usize, usize),
    #[error("expected a real form")]
    NotReal,
    #[error("generator {0} is not closed")]
    NotClosedGenerator(u8),
    #[error("operator is singular at this deformation parameter")]
    SingularOperator,
}

#[derive(Clone, PartialEq, Eq)]
pub struct InvariantForm {
    n: u8,
    terms: BTreeMap<(MultiIndex, MultiIndex), Scalar>,
}

impl InvariantForm {
    pub fn zero(n: u8) -> Self {
        InvariantForm {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn dimension(&self) -> u8 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Builds `c * phi^{hol} ^ phibar^{anti}`; index lists need not be sorted.
    pub fn monomial(n: u8, hol: &[u8], anti: &[u8], coef: Scalar) -> Result<Self, FormError> {
        for &i in hol.iter().chain(anti.iter()) {
            if i == 0 || i > n {
                return Err(FormError::IndexOutOfRange(i, n));
            }
        }
        let (ih, sh) = MultiIndex::sort_with_sign(hol).ok_or(FormError::RepeatedIndex)?;
        let (ia, sa) = MultiIndex::sort_with_sign(anti).ok_or(FormError::RepeatedIndex)?;
        let mut f = InvariantForm::zero(n);
        let sign = Scalar::from_int((sh * sa) as i64);
        f.add_term(ih, ia, &coef * &sign);
        Ok(f)
    }

    /// Unit monomial shorthand.
    pub fn phi(n: u8, hol: &[u8], anti: &[u8]) -> Self {
        InvariantForm::monomial(n, hol, anti, Scalar::one()).expect("bad monomial")
    }

    /// Scalar constant as a (0,0)-form.
    pub fn constant(n: u8, c: Scalar) -> Self {
        let mut f = InvariantForm::zero(n);
        f.add_term(MultiIndex::empty(), MultiIndex::empty(), c);
        f
    }

    pub fn add_term(&mut self, hol: MultiIndex, anti: MultiIndex, coef: Scalar) {
        if coef.is_zero() {
            return;
        }
        let key = (hol, anti);
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &coef;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, &Scalar)> {
        self.terms.iter().map(|((i, j), c)| (i, j, c))
    }

    pub fn coefficient(&self, hol: &MultiIndex, anti: &MultiIndex) -> Scalar {
        self.terms
            .get(&(hol.clone(), anti.clone()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &InvariantForm) -> Result<InvariantForm, FormError> {
        if self.n != other.n {
            return Err(FormError::DimensionMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_term(i.clone(), j.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &InvariantForm) -> Result<InvariantForm, FormError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> InvariantForm {
        self.scale(&-&Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> InvariantForm {
        let mut out = InvariantForm::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for ((i, j), a) in &self.terms {
            out.terms.insert((i.clone(), j.clone()), a * c);
        }
        out
    }

    /// Exterior product. Signs: the antiholomorphic block of the left factor
    /// moves past the holomorphic block of the right factor, then each block
    /// pair is merged with its shuffle sign.
    pub fn wedge(&self, other: &InvariantForm) -> Result<InvariantForm, FormError> {
        if self.n != other.n {
            return Err(FormError::DimensionMismatch(self.n, other.n));
        }
        let mut out = InvariantForm::zero(self.n);
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &other.terms {
                let Some((ih, sh)) = i1.merge(i2) else { continue };
                let Some((ia, sa)) = j1.merge(j2) else { continue };
                let cross = if (j1.len() * i2.len()) % 2 == 0 { 1 } else { -1 };
                let sign = Scalar::from_int((sh * sa * cross) as i64);
                out.add_term(ih, ia, &(c1 * c2) * &sign);
            }
        }
        Ok(out)
    }

    /// Complex conjugation: swaps the blocks with the block-swap permutation
    /// sign `(-1)^{pq}` and conjugates coefficients. Antilinear involution.
    pub fn conjugate(&self) -> InvariantForm {
        let mut out = InvariantForm::zero(self.n);
        for ((i, j), c) in &self.terms {
            let sign = if (i.len() * j.len()) % 2 == 0 { 1 } else { -1 };
            let coef = &c.conj() * &Scalar::from_int(sign as i64);
            out.add_term(j.clone(), i.clone(), coef);
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// Bidegree of a homogeneous form; `None` when inhomogeneous or zero.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let (i0, j0) = it.next()?;
        let bd = (i0.len(), j0.len());
        if it.all(|(i, j)| (i.len(), j.len()) == bd) {
            Some(bd)
        } else {
            None
        }
    }

    /// Splits into homogeneous pieces, keyed by bidegree.
    pub fn bidegree_components(&self) -> BTreeMap<(usize, usize), InvariantForm> {
        let mut out: BTreeMap<(usize, usize), InvariantForm> = BTreeMap::new();
        for ((i, j), c) in &self.terms {
            out.entry((i.len(), j.len()))
                .or_insert_with(|| InvariantForm::zero(self.n))
                .add_term(i.clone(), j.clone(), c.clone());
        }
        out
    }

    pub fn project_bidegree(&self, p: usize, q: usize) -> InvariantForm {
        let mut out = InvariantForm::zero(self.n);
        for ((i, j), c) in &self.terms {
            if i.len() == p && j.len() == q {
                out.add_term(i.clone(), j.clone(), c.clone());
            }
        }
        out
    }

    /// Interior product with the frame vector `theta_idx` (holomorphic) or
    /// `thetabar_idx` (antiholomorphic).
    pub fn contract_vector(&self, idx: u8, holomorphic: bool) -> InvariantForm {
        let mut out = InvariantForm::zero(self.n);
        for ((i, j), c) in &self.terms {
            if holomorphic {
                if let Some((rest, s)) = i.remove(idx) {
                    out.add_term(rest, j.clone(), c * &Scalar::from_int(s as i64));
                }
            } else if let Some((rest, s)) = j.remove(idx) {
                // the vector passes the whole holomorphic block first
                let block = if i.len() % 2 == 0 { 1 } else { -1 };
                out.add_term(
                    i.clone(),
                    rest,
                    c * &Scalar::from_int((s * block) as i64),
                );
            }
        }
        out
    }

    /// The coefficient `c` with `(n,n)-component = c * Vol`,
    /// `Vol = sigma_n phi^{1..n} ^ phibar^{1..n}`.
    pub fn volume_coefficient(&self) -> Scalar {
        let full = MultiIndex::full(self.n);
        let raw = self.coefficient(&full, &full);
        &raw / &sigma(self.n as u32)
    }

    /// The volume form of dimension `n`.
    pub fn volume_form(n: u8) -> InvariantForm {
        let full: Vec<u8> = (1..=n).collect();
        InvariantForm::monomial(n, &full, &full, sigma(n as u32)).unwrap()
    }

    /// Replaces every generator factor by a given 1-form image and expands
    /// the products: `hol_images[i-1]` substitutes `phi^i`, `anti_images[j-1]`
    /// substitutes `phibar^j`. Images live in dimension `n_out` and may mix
    /// (1,0)- and (0,1)-parts.
    pub fn substitute(
        &self,
        hol_images: &[InvariantForm],
        anti_images: &[InvariantForm],
        n_out: u8,
    ) -> Result<InvariantForm, FormError> {
        assert_eq!(hol_images.len(), self.n as usize);
        assert_eq!(anti_images.len(), self.n as usize);
        let mut out = InvariantForm::zero(n_out);
        for ((i, j), c) in &self.terms {
            let mut prod = InvariantForm::constant(n_out, c.clone());
            for &idx in i.indices() {
                prod = prod.wedge(&hol_images[idx as usize - 1])?;
                if prod.is_zero() {
                    break;
                }
            }
            if !prod.is_zero() {
                for &idx in j.indices() {
                    prod = prod.wedge(&anti_images[idx as usize - 1])?;
                    if prod.is_zero() {
                        break;
                    }
                }
            }
            out = out.add(&prod)?;
        }
        Ok(out)
    }

    /// Exact decomposability decision for a homogeneous (k,0)-form via the
    /// classical contraction criterion: simple iff every (k-1)-fold frame
    /// contraction wedged back gives zero.
    pub fn is_simple(&self) -> Result<Simplicity, FormError> {
        let (k, q) = self.bidegree().ok_or(FormError::NotHomogeneous)?;
        if q != 0 {
            return Err(FormError::WrongBidegree(k, 0));
        }
        if k <= 1 {
            return Ok(Simplicity::Simple {
                factors: vec![self.clone()],
            });
        }
        for sub in MultiIndex::all(self.n, k - 1) {
            let mut contracted = self.clone();
            for &i in sub.indices() {
                contracted = contracted.contract_vector(i, true);
            }
            let prod = contracted.wedge(self)?;
            if !prod.is_zero() {
                return Ok(Simplicity::NotSimple {
                    violated_contraction: sub,
                });
            }
        }
        // Recover factors by iterated contraction along a supporting monomial.
        let (i0, _, c0) = self.terms().next().expect("nonzero by k>=2");
        let support = i0.clone();
        let c0 = c0.clone();
        let mut factors: Vec<InvariantForm> = Vec::with_capacity(k);
        for (pos, &drop) in support.indices().iter().enumerate() {
            let _ = pos;
            let mut f = self.clone();
            for &i in support.indices().iter().filter(|&&i| i != drop) {
                f = f.contract_vector(i, true);
            }
            factors.push(f);
        }
        // Normalize the first factor so the product reproduces the form.
        let mut prod = InvariantForm::constant(self.n, Scalar::one());
        for f in &factors {
            prod = prod.wedge(f)?;
        }
        let cp = prod.coefficient(&support, &MultiIndex::empty());
        debug_assert!(!cp.is_zero());
        factors[0] = factors[0].scale(&(&c0 / &cp));
        Ok(Simplicity::Simple { factors })
    }
}

/// Outcome of the decomposability decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple { factors: Vec<InvariantForm> },
    NotSimple { violated_contraction: MultiIndex },
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple { .. })
    }
}

impl fmt::Display for InvariantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((i, j), c)| format!("({c})*phi[{i};{j}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for InvariantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
