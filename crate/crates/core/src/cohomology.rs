//! Invariant cohomology: de Rham, Dolbeault, Bott-Chern and Aeppli
//! dimensions, plus exact class-triviality certificates.

use crate::form::{FormError, InvariantForm};
use crate::linalg::Matrix;
use crate::multiindex::MultiIndex;
use crate::scalar::Scalar;
use crate::structure::StructureEquations;
use crate::verdict::{Verdict, Witness};

/// Ordered monomial basis of the invariant (p,q)-forms.
pub fn slice_basis(n: u8, p: usize, q: usize) -> Vec<(MultiIndex, MultiIndex)> {
    let mut out = Vec::new();
    for i in MultiIndex::all(n, p) {
        for j in MultiIndex::all(n, q) {
            out.push((i.clone(), j));
        }
    }
    out
}

/// Ordered monomial basis of the complexified invariant k-forms.
pub fn degree_basis(n: u8, k: usize) -> Vec<(MultiIndex, MultiIndex)> {
    let mut out = Vec::new();
    for p in 0..=k {
        let q = k - p;
        if p <= n as usize && q <= n as usize {
            out.extend(slice_basis(n, p, q));
        }
    }
    out
}

pub fn form_to_vec(f: &InvariantForm, basis: &[(MultiIndex, MultiIndex)]) -> Vec<Scalar> {
    basis.iter().map(|(i, j)| f.coefficient(i, j)).collect()
}

pub fn vec_to_form(n: u8, v: &[Scalar], basis: &[(MultiIndex, MultiIndex)]) -> InvariantForm {
    let mut f = InvariantForm::zero(n);
    for (c, (i, j)) in v.iter().zip(basis.iter()) {
        f.add_term(i.clone(), j.clone(), c.clone());
    }
    f
}

/// Matrix of a linear operator between two monomial bases; columns are the
/// images of the domain basis.
pub fn operator_matrix<F>(
    n: u8,
    domain: &[(MultiIndex, MultiIndex)],
    codomain: &[(MultiIndex, MultiIndex)],
    op: F,
) -> Result<Matrix, FormError>
where
    F: Fn(&InvariantForm) -> Result<InvariantForm, FormError>,
{
    let mut m = Matrix::zeros(codomain.len(), domain.len());
    for (c, (i, j)) in domain.iter().enumerate() {
        let mut mono = InvariantForm::zero(n);
        mono.add_term(i.clone(), j.clone(), Scalar::one());
        let img = op(&mono)?;
        for (r, v) in form_to_vec(&img, codomain).into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    Ok(m)
}

fn dim0(len: usize) -> usize {
    len
}

/// Invariant de Rham Betti number `b_k` of the complexified complex.
pub fn betti(s: &StructureEquations, k: usize) -> Result<usize, FormError> {
    let n = s.dimension();
    let here = degree_basis(n, k);
    let above = degree_basis(n, k + 1);
    let d_here = operator_matrix(n, &here, &above, |f| s.differential(f))?;
    let kernel = dim0(here.len()) - d_here.rank();
    let image = if k == 0 {
        0
    } else {
        let below = degree_basis(n, k - 1);
        operator_matrix(n, &below, &here, |f| s.differential(f))?.rank()
    };
    Ok(kernel - image)
}

/// Invariant Dolbeault number `h^{p,q}` of the delbar complex.
pub fn hodge_delbar(s: &StructureEquations, p: usize, q: usize) -> Result<usize, FormError> {
    let n = s.dimension();
    let here = slice_basis(n, p, q);
    let above = slice_basis(n, p, q + 1);
    let kernel =
        dim0(here.len()) - operator_matrix(n, &here, &above, |f| s.delbar(f))?.rank();
    let image = if q == 0 {
        0
    } else {
        let below = slice_basis(n, p, q - 1);
        operator_matrix(n, &below, &here, |f| s.delbar(f))?.rank()
    };
    Ok(kernel - image)
}

/// Invariant Bott-Chern number: d-closed (p,q)-forms modulo `del delbar`
/// images.
pub fn hodge_bott_chern(s: &StructureEquations, p: usize, q: usize) -> Result<usize, FormError> {
    let n = s.dimension();
    let here = slice_basis(n, p, q);
    // ker del  intersect  ker delbar == ker d restricted to the slice
    let del_up = slice_basis(n, p + 1, q);
    let delbar_up = slice_basis(n, p, q + 1);
    let a = operator_matrix(n, &here, &del_up, |f| s.del(f))?;
    let b = operator_matrix(n, &here, &delbar_up, |f| s.delbar(f))?;
    let mut stacked = Matrix::zeros(del_up.len() + delbar_up.len(), here.len());
    for c in 0..here.len() {
        for r in 0..del_up.len() {
            stacked.set(r, c, a.get(r, c).clone());
        }
        for r in 0..delbar_up.len() {
            stacked.set(del_up.len() + r, c, b.get(r, c).clone());
        }
    }
    let kernel = here.len() - stacked.rank();
    let image = if p == 0 || q == 0 {
        0
    } else {
        let below = slice_basis(n, p - 1, q - 1);
        operator_matrix(n, &below, &here, |f| s.del_delbar(f))?.rank()
    };
    Ok(kernel - image)
}

/// Invariant Aeppli number: `del delbar`-closed (p,q)-forms modulo
/// `im del + im delbar`.
pub fn hodge_aeppli(s: &StructureEquations, p: usize, q: usize) -> Result<usize, FormError> {
    let n = s.dimension();
    let here = slice_basis(n, p, q);
    let up = slice_basis(n, p + 1, q + 1);
    let kernel =
        here.len() - operator_matrix(n, &here, &up, |f| s.del_delbar(f))?.rank();
    let image = joint_image_matrix(s, p, q)?.map(|m| m.rank()).unwrap_or(0);
    Ok(kernel - image)
}

/// Columns span `im(del) + im(delbar)` inside the (p,q)-slice; `None` when
/// both source slices are empty.
fn joint_image_matrix(
    s: &StructureEquations,
    p: usize,
    q: usize,
) -> Result<Option<Matrix>, FormError> {
    let n = s.dimension();
    let here = slice_basis(n, p, q);
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    if p > 0 {
        let below = slice_basis(n, p - 1, q);
        let m = operator_matrix(n, &below, &here, |f| s.del(f))?;
        for c in 0..below.len() {
            cols.push(m.column(c));
        }
    }
    if q > 0 {
        let below = slice_basis(n, p, q - 1);
        let m = operator_matrix(n, &below, &here, |f| s.delbar(f))?;
        for c in 0..below.len() {
            cols.push(m.column(c));
        }
    }
    if cols.is_empty() {
        return Ok(None);
    }
    let mut m = Matrix::zeros(here.len(), cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            m.set(r, c, v.clone());
        }
    }
    Ok(Some(m))
}

/// Cohomology theory selecting the closedness condition and the space of
/// admissible primitives for [`class_is_zero`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    DeRham,
    Dolbeault,
    BottChern,
    Aeppli,
}

impl std::str::FromStr for Theory {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "derham" | "dr" => Ok(Theory::DeRham),
            "dolbeault" | "delbar" => Ok(Theory::Dolbeault),
            "bottchern" | "bc" => Ok(Theory::BottChern),
            "aeppli" | "a" => Ok(Theory::Aeppli),
            other => Err(format!("unknown cohomology theory '{other}'")),
        }
    }
}

/// Decides whether a closed form represents the zero class, with an exact
/// primitive (certified) or a dual functional annihilating the image but not
/// the class (refuted).
pub fn class_is_zero(
    s: &StructureEquations,
    theory: Theory,
    f: &InvariantForm,
) -> Result<Verdict, FormError> {
    let n = s.dimension();
    if f.is_zero() {
        return Ok(Verdict::certified("trivial"));
    }
    let closed = match theory {
        Theory::DeRham => s.differential(f)?,
        Theory::Dolbeault => s.delbar_any(f)?,
        Theory::BottChern => {
            let a = s.del_any(f)?;
            let b = s.delbar_any(f)?;
            if !a.is_zero() {
                a
            } else {
                b
            }
        }
        Theory::Aeppli => s.del_delbar(f)?,
    };
    if !closed.is_zero() {
        return Ok(
            Verdict::unknown("not_closed", "form is not closed for this theory")
                .with_detail(format!("obstruction {closed}")),
        );
    }

    let (here, image): (Vec<(MultiIndex, MultiIndex)>, Option<Matrix>) = match theory {
        Theory::DeRham => {
            let k = f
                .bidegree_components()
                .keys()
                .next()
                .map(|(p, q)| p + q)
                .unwrap();
            let here = degree_basis(n, k);
            let img = if k == 0 {
                None
            } else {
                let below = degree_basis(n, k - 1);
                Some(operator_matrix(n, &below, &here, |g| s.differential(g))?)
            };
            (here, img)
        }
        Theory::Dolbeault => {
            let (p, q) = f.bidegree().ok_or(FormError::NotHomogeneous)?;
            let here = slice_basis(n, p, q);
            let img = if q == 0 {
                None
            } else {
                let below = slice_basis(n, p, q - 1);
                Some(operator_matrix(n, &below, &here, |g| s.delbar(g))?)
            };
            (here, img)
        }
        Theory::BottChern => {
            let (p, q) = f.bidegree().ok_or(FormError::NotHomogeneous)?;
            let here = slice_basis(n, p, q);
            let img = if p == 0 || q == 0 {
                None
            } else {
                let below = slice_basis(n, p - 1, q - 1);
                Some(operator_matrix(n, &below, &here, |g| s.del_delbar(g))?)
            };
            (here, img)
        }
        Theory::Aeppli => {
            let (p, q) = f.bidegree().ok_or(FormError::NotHomogeneous)?;
            let here = slice_basis(n, p, q);
            (here.clone(), joint_image_matrix(s, p, q)?)
        }
    };

    let b = form_to_vec(f, &here);
    let Some(m) = image else {
        // no primitives exist at all; any functional hitting f certifies
        let cert = b
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_zero())
            .map(|(i, _)| {
                let mut e = vec![Scalar::zero(); here.len()];
                e[i] = Scalar::one();
                e
            })
            .unwrap();
        return Ok(Verdict::refuted("no_primitive_space", Witness::Vector(cert)));
    };
    match m.solve(&b) {
        Some(x) => {
            // report the primitive itself (in the source slice) as witness
            let witness = primitive_form(s, theory, f, &x)?;
            Ok(Verdict::certified("primitive").with_detail(format!("primitive {witness}")))
        }
        None => {
            let cert = m
                .outside_certificate(&b)
                .expect("unsolvable system has a separating functional");
            Ok(Verdict::refuted("dual_functional", Witness::Vector(cert)))
        }
    }
}

fn primitive_form(
    s: &StructureEquations,
    theory: Theory,
    f: &InvariantForm,
    x: &[Scalar],
) -> Result<InvariantForm, FormError> {
    let n = s.dimension();
    let basis = match theory {
        Theory::DeRham => {
            let k = f
                .bidegree_components()
                .keys()
                .next()
                .map(|(p, q)| p + q)
                .unwrap();
            degree_basis(n, k - 1)
        }
        Theory::Dolbeault => {
            let (p, q) = f.bidegree().unwrap();
            slice_basis(n, p, q - 1)
        }
        Theory::BottChern => {
            let (p, q) = f.bidegree().unwrap();
            slice_basis(n, p - 1, q - 1)
        }
        Theory::Aeppli => {
            // primitive splits across the two source slices; rebuild from the
            // stacked coordinate vector
            let (p, q) = f.bidegree().unwrap();
            let mut basis = Vec::new();
            if p > 0 {
                basis.extend(slice_basis(n, p - 1, q));
            }
            if q > 0 {
                basis.extend(slice_basis(n, p, q - 1));
            }
            basis
        }
    };
    Ok(vec_to_form(n, x, &basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::InvariantForm;
    use crate::scalar::Scalar;

    fn etabeta5() -> StructureEquations {
        let n = 5;
        let d5 = InvariantForm::phi(n, &[1, 3], &[])
            .add(&InvariantForm::phi(n, &[2, 4], &[]))
            .unwrap()
            .neg();
        let mut d = vec![InvariantForm::zero(n); 5];
        d[4] = d5;
        StructureEquations::new(n, "etabeta5", d).unwrap()
    }

    #[test]
    fn torus_numbers() {
        let t = StructureEquations::abelian(2, "torus2");
        // complexified invariant complex of the 4-torus
        assert_eq!(betti(&t, 0).unwrap(), 1);
        assert_eq!(betti(&t, 1).unwrap(), 4);
        assert_eq!(betti(&t, 2).unwrap(), 6);
        assert_eq!(betti(&t, 4).unwrap(), 1);
        for p in 0..=2 {
            for q in 0..=2 {
                let expect = binom(2, p) * binom(2, q);
                assert_eq!(hodge_delbar(&t, p, q).unwrap(), expect);
                assert_eq!(hodge_bott_chern(&t, p, q).unwrap(), expect);
                assert_eq!(hodge_aeppli(&t, p, q).unwrap(), expect);
            }
        }
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (1..=k).fold(1, |acc, i| acc * (n - i + 1) / i)
    }

    #[test]
    fn etabeta5_first_betti() {
        let s = etabeta5();
        assert_eq!(betti(&s, 0).unwrap(), 1);
        assert_eq!(betti(&s, 1).unwrap(), 8);
        assert_eq!(hodge_delbar(&s, 1, 0).unwrap(), 5);
        assert_eq!(hodge_delbar(&s, 0, 1).unwrap(), 4);
    }

    #[test]
    fn euler_characteristic_vanishes() {
        let s = etabeta5();
        let mut chi: i64 = 0;
        for k in 0..=10 {
            let b = betti(&s, k).unwrap() as i64;
            chi += if k % 2 == 0 { b } else { -b };
        }
        assert_eq!(chi, 0);
    }

    #[test]
    fn exact_class_with_primitive() {
        let s = etabeta5();
        let dphi5 = s.d_generator(5).clone();
        let v = class_is_zero(&s, Theory::DeRham, &dphi5).unwrap();
        assert!(v.is_certified());
        // del-exact: del phi5 = d phi5, so the Dolbeault statement also
        // certifies in the del-conjugated picture via conjugation
        let v = class_is_zero(&s, Theory::Dolbeault, &dphi5.conjugate()).unwrap();
        assert!(v.is_certified());
    }

    #[test]
    fn nonzero_class_with_functional() {
        let s = etabeta5();
        // phi^{1 2bar} is d-closed but not exact on the torus-like directions
        let f = InvariantForm::phi(5, &[1], &[2]);
        let v = class_is_zero(&s, Theory::DeRham, &f).unwrap();
        assert!(v.is_refuted());
        // the certificate annihilates every exact form and pairs nontrivially
        if let Some(Witness::Vector(cert)) = &v.witness {
            let here = degree_basis(5, 2);
            let b = form_to_vec(&f, &here);
            let mut acc = Scalar::zero();
            for (fi, bi) in cert.iter().zip(b.iter()) {
                acc = &acc + &(fi * bi);
            }
            assert!(!acc.is_zero());
        } else {
            panic!("expected a vector certificate");
        }
    }

    #[test]
    fn not_closed_is_unknown() {
        let s = etabeta5();
        let f = InvariantForm::phi(5, &[5], &[]);
        let v = class_is_zero(&s, Theory::DeRham, &f).unwrap();
        assert!(v.is_unknown());
    }

    #[test]
    fn double_computation_consistency() {
        // Frolicher-type inequality on each slice: BC and Aeppli are dual in
        // complementary bidegrees for invariant complexes
        let s = etabeta5();
        let n = 5usize;
        for (p, q) in [(1, 1), (2, 1), (1, 2)] {
            let bc = hodge_bott_chern(&s, p, q).unwrap();
            let ae = hodge_aeppli(&s, n - p, n - q).unwrap();
            assert_eq!(bc, ae);
        }
    }
}
