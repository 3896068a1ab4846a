//! Verifiers for p-Kahler / p-pluriclosed / p-symplectic structures, metric
//! specializations (balanced, SKT, astheno-Kahler, Gauduchon), and the
//! obstruction certificates that rule p-Kahler structures out.

use crate::cohomology::{form_to_vec, operator_matrix, slice_basis};
use crate::form::{FormError, InvariantForm};
use crate::linalg::Matrix;
use crate::scalar::{sigma, Scalar};
use crate::structure::StructureEquations;
use crate::transversality::{pairing_value, transverse_auto};
use crate::verdict::{Outcome, Verdict, Witness};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    PKahler,
    PPluriclosed,
    PSymplectic,
    Kahler,
    Balanced,
    Skt,
    AsthenoKahler,
    Gauduchon,
    StronglyGauduchon,
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StructureKind::PKahler => "pkahler",
            StructureKind::PPluriclosed => "ppluriclosed",
            StructureKind::PSymplectic => "psymplectic",
            StructureKind::Kahler => "kahler",
            StructureKind::Balanced => "balanced",
            StructureKind::Skt => "skt",
            StructureKind::AsthenoKahler => "astheno",
            StructureKind::Gauduchon => "gauduchon",
            StructureKind::StronglyGauduchon => "strongly_gauduchon",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for StructureKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pkahler" => Ok(StructureKind::PKahler),
            "ppluriclosed" => Ok(StructureKind::PPluriclosed),
            "psymplectic" => Ok(StructureKind::PSymplectic),
            "kahler" => Ok(StructureKind::Kahler),
            "balanced" => Ok(StructureKind::Balanced),
            "skt" => Ok(StructureKind::Skt),
            "astheno" => Ok(StructureKind::AsthenoKahler),
            "gauduchon" => Ok(StructureKind::Gauduchon),
            "strongly_gauduchon" | "sg" => Ok(StructureKind::StronglyGauduchon),
            other => Err(format!("unknown structure kind '{other}'")),
        }
    }
}

/// Outcome of one structure verification: an exact closedness residual plus
/// a delegated transversality (or positivity) verdict.
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub kind: StructureKind,
    pub p: usize,
    pub residual: InvariantForm,
    pub transversality: Verdict,
}

impl StructureReport {
    pub fn closed(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn certified(&self) -> bool {
        self.closed() && self.transversality.is_certified()
    }

    pub fn outcome(&self) -> Outcome {
        if !self.closed() || self.transversality.is_refuted() {
            Outcome::Refuted
        } else if self.transversality.is_certified() {
            Outcome::Certified
        } else {
            Outcome::Unknown
        }
    }

    pub fn report_line(&self) -> String {
        format!(
            "kind={} p={} closed={} transverse={} verdict={}",
            self.kind,
            self.p,
            self.closed(),
            self.transversality.outcome,
            self.outcome()
        )
    }
}

fn require_real_pp(omega: &InvariantForm, p: usize) -> Result<(), FormError> {
    if !omega.is_zero() {
        match omega.bidegree() {
            Some((a, b)) if a == p && b == p => {}
            _ => return Err(FormError::WrongBidegree(p, p)),
        }
        if !omega.is_real() {
            return Err(FormError::NotReal);
        }
    }
    Ok(())
}

/// d-closed transverse (p,p)-form check.
pub fn check_pkahler(
    s: &StructureEquations,
    omega: &InvariantForm,
    p: usize,
    seed: u64,
) -> Result<StructureReport, FormError> {
    require_real_pp(omega, p)?;
    let residual = s.differential(omega)?;
    let k = s.dimension() as usize - p;
    let transversality = transverse_auto(omega, k, seed)?;
    Ok(StructureReport {
        kind: StructureKind::PKahler,
        p,
        residual,
        transversality,
    })
}

/// del-delbar-closed transverse (p,p)-form check.
pub fn check_ppluriclosed(
    s: &StructureEquations,
    omega: &InvariantForm,
    p: usize,
    seed: u64,
) -> Result<StructureReport, FormError> {
    require_real_pp(omega, p)?;
    let residual = s.del_delbar(omega)?;
    let k = s.dimension() as usize - p;
    let transversality = transverse_auto(omega, k, seed)?;
    Ok(StructureReport {
        kind: StructureKind::PPluriclosed,
        p,
        residual,
        transversality,
    })
}

/// Real d-closed 2p-form (inhomogeneous allowed) whose (p,p)-component is
/// transverse.
pub fn check_psymplectic(
    s: &StructureEquations,
    psi: &InvariantForm,
    p: usize,
    seed: u64,
) -> Result<StructureReport, FormError> {
    if !psi.is_real() {
        return Err(FormError::NotReal);
    }
    for ((a, b), _) in psi.bidegree_components() {
        if a + b != 2 * p {
            return Err(FormError::WrongBidegree(p, p));
        }
    }
    let residual = s.differential(psi)?;
    let middle = psi.project_bidegree(p, p);
    let k = s.dimension() as usize - p;
    let transversality = transverse_auto(&middle, k, seed)?;
    Ok(StructureReport {
        kind: StructureKind::PSymplectic,
        p,
        residual,
        transversality,
    })
}

/// The closedness cascade of a real 2p-form by output slice: entry j holds
/// `del Psi^{(p+j, p-j)} + delbar Psi^{(p+j+1, p-j-1)}`, whose joint
/// vanishing is equivalent to d Psi = 0.
pub fn symplectic_cascade(
    s: &StructureEquations,
    psi: &InvariantForm,
    p: usize,
) -> Result<Vec<((usize, usize), InvariantForm)>, FormError> {
    let mut out = Vec::new();
    let d = s.differential(psi)?;
    for ((a, b), comp) in d.bidegree_components() {
        out.push(((a, b), comp));
    }
    let _ = p;
    Ok(out)
}

/// Fundamental form of the Hermitian metric H and its p-th wedge power:
/// `omega = (i/2) sum H_jk phi^{j k-bar}`.
pub fn metric_power(n: u8, h: &Matrix, p: usize) -> Result<InvariantForm, FormError> {
    assert_eq!(h.nrows(), n as usize);
    assert_eq!(h.ncols(), n as usize);
    if !h.is_positive_definite() {
        return Err(FormError::NotReal);
    }
    let mut omega = InvariantForm::zero(n);
    for j in 0..n as usize {
        for k in 0..n as usize {
            let c = &sigma(1) * h.get(j, k);
            omega = omega.add(&InvariantForm::monomial(
                n,
                &[(j + 1) as u8],
                &[(k + 1) as u8],
                c,
            )?)?;
        }
    }
    let mut out = InvariantForm::constant(n, Scalar::one());
    for _ in 0..p {
        out = out.wedge(&omega)?;
    }
    Ok(out)
}

/// Metric specialization checks: the defining residual is evaluated exactly;
/// positivity comes from positive-definiteness of H.
pub fn check_metric(
    s: &StructureEquations,
    h: &Matrix,
    kind: StructureKind,
) -> Result<StructureReport, FormError> {
    let n = s.dimension() as usize;
    let omega = metric_power(s.dimension(), h, 1)?;
    let (p, residual) = match kind {
        StructureKind::Kahler => (1, s.differential(&omega)?),
        StructureKind::Balanced => (n - 1, s.differential(&metric_power(s.dimension(), h, n - 1)?)?),
        StructureKind::Skt => (1, s.del_delbar(&omega)?),
        StructureKind::AsthenoKahler => {
            (n - 2, s.del_delbar(&metric_power(s.dimension(), h, n - 2)?)?)
        }
        StructureKind::Gauduchon => {
            (n - 1, s.del_delbar(&metric_power(s.dimension(), h, n - 1)?)?)
        }
        StructureKind::StronglyGauduchon => {
            return strongly_gauduchon(s, h);
        }
        _ => panic!("check_metric expects a metric kind"),
    };
    Ok(StructureReport {
        kind,
        p,
        residual,
        transversality: Verdict::certified("positive_definite"),
    })
}

/// `del omega^{n-1}` lies in the image of `delbar`: decided by an exact
/// linear solve on the (n, n-2) slice.
fn strongly_gauduchon(s: &StructureEquations, h: &Matrix) -> Result<StructureReport, FormError> {
    let n = s.dimension() as usize;
    let target = s.del(&metric_power(s.dimension(), h, n - 1)?)?;
    let here = slice_basis(s.dimension(), n, n - 2);
    let below = slice_basis(s.dimension(), n, n - 3);
    let m = operator_matrix(s.dimension(), &below, &here, |f| s.delbar(f))?;
    let b = form_to_vec(&target, &here);
    let residual = match m.solve(&b) {
        Some(_) => InvariantForm::zero(s.dimension()),
        None => target,
    };
    Ok(StructureReport {
        kind: StructureKind::StronglyGauduchon,
        p: n - 1,
        residual,
        transversality: Verdict::certified("positive_definite"),
    })
}

/// Non-existence certificate for p-Kahler structures: a nonzero simple
/// delbar-closed (k,0)-form that is del-exact.
#[derive(Clone, Debug)]
pub struct AbWitness {
    pub zeta: InvariantForm,
    pub alpha: InvariantForm,
}

pub fn ab_witness_verify(
    s: &StructureEquations,
    cert: &AbWitness,
    p: usize,
) -> Result<Verdict, FormError> {
    let n = s.dimension() as usize;
    let k = n - p;
    if cert.zeta.is_zero() {
        return Ok(Verdict::refuted("ab_witness", Witness::Form(cert.zeta.clone()))
            .with_detail("zeta vanishes".to_string()));
    }
    if cert.zeta.bidegree() != Some((k, 0)) {
        return Ok(Verdict::refuted("ab_witness", Witness::Form(cert.zeta.clone()))
            .with_detail(format!("zeta is not of bidegree ({k},0)")));
    }
    if !cert.zeta.is_simple()?.is_simple() {
        return Ok(Verdict::refuted("ab_witness", Witness::Form(cert.zeta.clone()))
            .with_detail("zeta is not simple".to_string()));
    }
    let db = s.delbar(&cert.zeta)?;
    if !db.is_zero() {
        return Ok(Verdict::refuted("ab_witness", Witness::Form(db))
            .with_detail("delbar zeta != 0".to_string()));
    }
    let da = s.del_any(&cert.alpha)?;
    if da != cert.zeta {
        return Ok(Verdict::refuted("ab_witness", Witness::Form(da))
            .with_detail("del alpha != zeta".to_string()));
    }
    Ok(Verdict::certified("ab_witness"))
}

/// Degree promotion of an AB witness by a closed generator:
/// `zeta' = -phi^j ^ zeta`, `alpha' = phi^j ^ alpha`.
pub fn promote_witness(
    s: &StructureEquations,
    cert: &AbWitness,
    j: u8,
) -> Result<AbWitness, FormError> {
    if !s.d_generator(j).is_zero() {
        return Err(FormError::NotClosedGenerator(j));
    }
    let gen = InvariantForm::phi(s.dimension(), &[j], &[]);
    Ok(AbWitness {
        zeta: gen.wedge(&cert.zeta)?.neg(),
        alpha: gen.wedge(&cert.alpha)?,
    })
}

/// Stokes-type certificate: `d gamma = c sigma_k beta ^ conj(beta)` with
/// c > 0 real and beta simple rules out p-Kahler structures with k = n-p.
#[derive(Clone, Debug)]
pub struct StokesWitness {
    pub gamma: InvariantForm,
    pub beta: InvariantForm,
    pub c: Scalar,
}

pub fn stokes_witness_verify(
    s: &StructureEquations,
    cert: &StokesWitness,
    p: usize,
) -> Result<Verdict, FormError> {
    let n = s.dimension() as usize;
    let k = n - p;
    if !cert.c.is_real() || cert.c.sign() <= 0 {
        return Ok(Verdict::refuted("stokes_witness", Witness::Form(cert.gamma.clone()))
            .with_detail("scale factor is not a positive real".to_string()));
    }
    if cert.beta.bidegree() != Some((k, 0)) || !cert.beta.is_simple()?.is_simple() {
        return Ok(Verdict::refuted("stokes_witness", Witness::Form(cert.beta.clone()))
            .with_detail(format!("beta is not a simple ({k},0)-form")));
    }
    let rhs = cert
        .beta
        .wedge(&cert.beta.conjugate())?
        .scale(&(&sigma(k as u32) * &cert.c));
    let lhs = s.differential(&cert.gamma)?;
    if lhs != rhs {
        return Ok(Verdict::refuted("stokes_witness", Witness::Form(lhs.sub(&rhs)?))
            .with_detail("d gamma does not match the required shape".to_string()));
    }
    Ok(Verdict::certified("stokes_witness"))
}

/// Promotes a closed transverse (p,p)-form one degree via two closed
/// directions: `Omega_1 = sigma_1 (Omega ^ phi^{a a-bar} + Omega ^ phi^{b b-bar})`.
pub fn balanced_promotion(
    s: &StructureEquations,
    omega: &InvariantForm,
    a: u8,
    b: u8,
    seed: u64,
) -> Result<StructureReport, FormError> {
    for j in [a, b] {
        if !s.d_generator(j).is_zero() {
            return Err(FormError::NotClosedGenerator(j));
        }
    }
    let n = s.dimension();
    let p = omega.bidegree().map(|(p, _)| p).unwrap_or(0);
    let block = |j: u8| -> Result<InvariantForm, FormError> {
        omega.wedge(&InvariantForm::monomial(n, &[j], &[j], sigma(1))?)
    };
    let omega1 = block(a)?.add(&block(b)?)?;
    let residual = s.differential(&omega1)?;
    let k = n as usize - (p + 1);
    let transversality = transverse_auto(&omega1, k, seed)?;
    Ok(StructureReport {
        kind: StructureKind::PKahler,
        p: p + 1,
        residual,
        transversality,
    })
}

/// Consistency probe: evaluates the transversality pairing of a certified
/// form against freshly sampled simple forms (used by the test suites).
pub fn pairing_spot_check(
    omega: &InvariantForm,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<bool, FormError> {
    use rand::{Rng, SeedableRng};
    let n = omega.dimension();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < trials {
        let mut beta = InvariantForm::constant(n, Scalar::one());
        for _ in 0..k {
            let mut psi = InvariantForm::zero(n);
            for m in 1..=n {
                let re = rng.gen_range(-2i64..=2);
                let im = rng.gen_range(-2i64..=2);
                let c = &Scalar::from_int(re) + &(&Scalar::from_int(im) * &Scalar::i());
                psi = psi.add(&InvariantForm::monomial(n, &[m], &[], c)?)?;
            }
            beta = beta.wedge(&psi)?;
        }
        if beta.is_zero() {
            continue;
        }
        let q = pairing_value(omega, &beta)?;
        if !q.is_real() || q.sign() <= 0 {
            return Ok(false);
        }
        done += 1;
    }
    Ok(true)
}
