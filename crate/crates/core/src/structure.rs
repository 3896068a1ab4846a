//! Structure-equation presentations of invariant complex nilmanifolds and
//! the differentials d, del, delbar extended by the Leibniz rule.

use crate::form::{FormError, InvariantForm};
use crate::scalar::Scalar;
use crate::verdict::{Verdict, Witness};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct StructureEquations {
    n: u8,
    name: String,
    /// `d_phi[j-1]` is the 2-form `d phi^j`.
    d_phi: Vec<InvariantForm>,
    /// Named scalar bindings used when the entry was parsed from text.
    params: BTreeMap<String, Scalar>,
    radicand: u64,
}

impl StructureEquations {
    pub fn new(n: u8, name: &str, d_phi: Vec<InvariantForm>) -> Result<Self, FormError> {
        assert_eq!(d_phi.len(), n as usize);
        for f in &d_phi {
            if f.dimension() != n {
                return Err(FormError::DimensionMismatch(f.dimension(), n));
            }
        }
        Ok(StructureEquations {
            n,
            name: name.to_string(),
            d_phi,
            params: BTreeMap::new(),
            radicand: 0,
        })
    }

    /// The complex torus: all differentials vanish.
    pub fn abelian(n: u8, name: &str) -> Self {
        StructureEquations::new(n, name, vec![InvariantForm::zero(n); n as usize]).unwrap()
    }

    pub fn with_params(mut self, params: BTreeMap<String, Scalar>, radicand: u64) -> Self {
        self.params = params;
        self.radicand = radicand;
        self
    }

    pub fn dimension(&self) -> u8 {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, Scalar> {
        &self.params
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn d_generator(&self, j: u8) -> &InvariantForm {
        &self.d_phi[j as usize - 1]
    }

    pub fn d_generator_bar(&self, j: u8) -> InvariantForm {
        self.d_phi[j as usize - 1].conjugate()
    }

    /// Leibniz extension of the generator differentials to arbitrary forms.
    pub fn differential(&self, a: &InvariantForm) -> Result<InvariantForm, FormError> {
        if a.dimension() != self.n {
            return Err(FormError::DimensionMismatch(a.dimension(), self.n));
        }
        let mut out = InvariantForm::zero(self.n);
        for (i, j, c) in a.terms() {
            // d(x_1 ^ ... ^ x_m) = sum_t (-1)^{t-1} dx_t ^ x_1 ^ ... x̂_t ... ^ x_m
            // (dx_t is even, so it commutes to the front).
            for &idx in i.indices() {
                let (rest, s) = i.remove(idx).unwrap();
                let coef = c * &Scalar::from_int(s as i64);
                let mut rest_form = InvariantForm::zero(self.n);
                rest_form.add_term(rest, j.clone(), coef);
                out = out.add(&self.d_generator(idx).wedge(&rest_form)?)?;
            }
            for &idx in j.indices() {
                let (rest, s) = j.remove(idx).unwrap();
                let block = if i.len() % 2 == 0 { 1 } else { -1 };
                let coef = c * &Scalar::from_int((s * block) as i64);
                let mut rest_form = InvariantForm::zero(self.n);
                rest_form.add_term(i.clone(), rest, coef);
                out = out.add(&self.d_generator_bar(idx).wedge(&rest_form)?)?;
            }
        }
        Ok(out)
    }

    /// Bidegree-(p+1,q) projection of `d` on a homogeneous (p,q)-form.
    pub fn del(&self, a: &InvariantForm) -> Result<InvariantForm, FormError> {
        if a.is_zero() {
            return Ok(InvariantForm::zero(self.n));
        }
        let (p, q) = a.bidegree().ok_or(FormError::NotHomogeneous)?;
        Ok(self.differential(a)?.project_bidegree(p + 1, q))
    }

    /// Bidegree-(p,q+1) projection of `d` on a homogeneous (p,q)-form.
    pub fn delbar(&self, a: &InvariantForm) -> Result<InvariantForm, FormError> {
        if a.is_zero() {
            return Ok(InvariantForm::zero(self.n));
        }
        let (p, q) = a.bidegree().ok_or(FormError::NotHomogeneous)?;
        Ok(self.differential(a)?.project_bidegree(p, q + 1))
    }

    /// `del` applied componentwise to a possibly inhomogeneous form.
    pub fn del_any(&self, a: &InvariantForm) -> Result<InvariantForm, FormError> {
        let mut out = InvariantForm::zero(self.n);
        for (_, comp) in a.bidegree_components() {
            out = out.add(&self.del(&comp)?)?;
        }
        Ok(out)
    }

    pub fn delbar_any(&self, a: &InvariantForm) -> Result<InvariantForm, FormError> {
        let mut out = InvariantForm::zero(self.n);
        for (_, comp) in a.bidegree_components() {
            out = out.add(&self.delbar(&comp)?)?;
        }
        Ok(out)
    }

    pub fn del_delbar(&self, a: &InvariantForm) -> Result<InvariantForm, FormError> {
        self.del_any(&self.delbar_any(a)?)
    }

    /// Certified iff every `d phi^j` has no (0,2)-part and `d^2 phi^j = 0`.
    pub fn check_integrable(&self) -> Verdict {
        for j in 1..=self.n {
            let dj = self.d_generator(j);
            let bad = dj.project_bidegree(0, 2);
            if !bad.is_zero() {
                return Verdict::refuted("integrable", Witness::Form(bad))
                    .with_detail(format!("d phi{j} has a (0,2)-component"));
            }
            let dd = self.differential(dj).expect("same dimension");
            if !dd.is_zero() {
                return Verdict::refuted("integrable", Witness::Form(dd))
                    .with_detail(format!("d^2 phi{j} != 0"));
            }
        }
        Verdict::certified("integrable")
    }

    /// Every term of `d phi^j` uses only indices `< j` in both blocks.
    pub fn check_nilpotent_coframe(&self) -> Verdict {
        for j in 1..=self.n {
            for (i, jj, _) in self.d_generator(j).terms() {
                let all_below = i
                    .indices()
                    .iter()
                    .chain(jj.indices().iter())
                    .all(|&k| k < j);
                if !all_below {
                    return Verdict::refuted("nilpotent_coframe", Witness::Generator(j))
                        .with_detail(format!("d phi{j} uses an index >= {j}"));
                }
            }
        }
        Verdict::certified("nilpotent_coframe")
    }

    /// Nilpotent coframe pattern with no (1,1)- or (0,2)-terms.
    pub fn check_parallelizable(&self) -> Verdict {
        let nil = self.check_nilpotent_coframe();
        if !nil.is_certified() {
            return Verdict {
                method: "parallelizable".to_string(),
                ..nil
            };
        }
        for j in 1..=self.n {
            let dj = self.d_generator(j);
            if dj != &dj.project_bidegree(2, 0) {
                return Verdict::refuted("parallelizable", Witness::Generator(j))
                    .with_detail(format!("d phi{j} has a non-(2,0) component"));
            }
        }
        Verdict::certified("parallelizable")
    }

    /// Every term of `d phi^j` contains a holomorphic factor `phi^i`, i < j.
    pub fn check_salamon(&self) -> Verdict {
        for j in 1..=self.n {
            for (i, _, _) in self.d_generator(j).terms() {
                if !i.indices().iter().any(|&k| k < j) {
                    return Verdict::refuted("salamon", Witness::Generator(j))
                        .with_detail(format!("a term of d phi{j} avoids phi^i with i < {j}"));
                }
            }
        }
        Verdict::certified("salamon")
    }

    /// Rewrites the structure equations in the coframe `psi^j = sum_k P_{jk} phi^k`
    /// for an invertible scalar matrix `P` (rows indexed by the new generators).
    pub fn change_coframe(&self, p: &crate::linalg::Matrix) -> Result<StructureEquations, FormError> {
        let n = self.n as usize;
        assert_eq!(p.nrows(), n);
        assert_eq!(p.ncols(), n);
        let q = p.inverse().expect("coframe matrix must be invertible");
        // phi^k = sum_m Q_{km} psi^m
        let hol_images: Vec<InvariantForm> = (0..n)
            .map(|k| {
                let mut f = InvariantForm::zero(self.n);
                for m in 0..n {
                    f = f
                        .add(
                            &InvariantForm::monomial(
                                self.n,
                                &[(m + 1) as u8],
                                &[],
                                q.get(k, m).clone(),
                            )
                            .unwrap(),
                        )
                        .unwrap();
                }
                f
            })
            .collect();
        let anti_images: Vec<InvariantForm> = hol_images.iter().map(|f| f.conjugate()).collect();
        let mut new_d = Vec::with_capacity(n);
        for j in 0..n {
            // d psi^j = sum_k P_{jk} d phi^k, then rewrite in the psi coframe.
            let mut dpsi = InvariantForm::zero(self.n);
            for k in 0..n {
                dpsi = dpsi.add(&self.d_phi[k].scale(p.get(j, k)))?;
            }
            new_d.push(dpsi.substitute(&hol_images, &anti_images, self.n)?);
        }
        StructureEquations::new(self.n, &format!("{}'", self.name), new_d)
    }
}
