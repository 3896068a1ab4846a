//! Built-in catalog of structure equations, distinguished forms, deformation
//! curves, and their expected verdicts. Loading an entry re-verifies
//! integrability (d^2 = 0) and `selftest` re-runs every expectation.

use crate::cohomology::{class_is_zero, Theory};
use crate::deformation::{extension, first_order_obstruction, maurer_cartan_check, DeformationCurve, VectorForm};
use crate::form::{FormError, InvariantForm};
use crate::linalg::Matrix;
use crate::parse::parse_structure_file;
use crate::scalar::{sigma, Scalar};
use crate::special::{check_metric, check_pkahler, check_ppluriclosed, check_psymplectic, metric_power, StructureKind};
use crate::structure::StructureEquations;
use std::collections::BTreeMap;

/// Deterministic seed for every randomized sub-procedure the catalog touches.
pub const CATALOG_SEED: u64 = 0x5eed_cafe;

#[derive(Clone, Debug)]
pub enum Expectation {
    /// d form = 0.
    Closed(&'static str),
    /// d form != 0.
    NotClosed(&'static str),
    /// delbar form = 0.
    DelbarClosed(&'static str),
    /// del delbar form = 0.
    DelDelbarClosed(&'static str),
    /// del lhs = delbar rhs.
    DelMatchesDelbar(&'static str, &'static str),
    /// The named structure check certifies on the form.
    Structure {
        kind: StructureKind,
        p: usize,
        form: &'static str,
    },
    /// Metric check for the identity metric certifies.
    Metric(StructureKind),
    /// The form represents a nonzero class in the theory.
    ClassNonzero(&'static str, Theory),
    /// The form is exact / primitive exists.
    ClassZero(&'static str, Theory),
    /// The form is a d-closed simple (k,0)-form.
    SimpleClosedWitness(&'static str),
    /// The curve generator satisfies the Maurer-Cartan equation.
    MaurerCartan(&'static str),
    /// First-order obstruction class of (curve, omega) vanishes or not.
    ObstructionClass {
        curve: &'static str,
        omega: &'static str,
        zero: bool,
    },
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub source: String,
    pub structure: StructureEquations,
    pub forms: BTreeMap<String, InvariantForm>,
    pub curves: BTreeMap<String, DeformationCurve>,
    pub expectations: Vec<Expectation>,
}

impl CatalogEntry {
    pub fn form(&self, name: &str) -> Option<&InvariantForm> {
        self.forms.get(name)
    }

    /// Runs every expectation plus the integrability invariant. Returns
    /// (label, ok, detail) triples in deterministic order.
    pub fn verify(&self) -> Vec<(String, bool, String)> {
        let mut out = Vec::new();
        let s = &self.structure;
        let integrable = s.check_integrable();
        out.push((
            format!("{}.integrable", self.name),
            integrable.is_certified(),
            integrable.detail.clone(),
        ));
        for e in &self.expectations {
            let (label, res) = self.run_expectation(e);
            match res {
                Ok((ok, detail)) => out.push((format!("{}.{label}", self.name), ok, detail)),
                Err(err) => out.push((format!("{}.{label}", self.name), false, err.to_string())),
            }
        }
        out
    }

    fn run_expectation(&self, e: &Expectation) -> (String, Result<(bool, String), FormError>) {
        let s = &self.structure;
        let need = |n: &str| -> Result<&InvariantForm, FormError> {
            self.forms.get(n).ok_or(FormError::NotHomogeneous)
        };
        match e {
            Expectation::Closed(f) => (format!("closed.{f}"), (|| {
                let r = s.differential(need(f)?)?;
                Ok((r.is_zero(), residual_detail(&r)))
            })()),
            Expectation::NotClosed(f) => (format!("not_closed.{f}"), (|| {
                let r = s.differential(need(f)?)?;
                Ok((!r.is_zero(), String::new()))
            })()),
            Expectation::DelbarClosed(f) => (format!("delbar_closed.{f}"), (|| {
                let r = s.delbar_any(need(f)?)?;
                Ok((r.is_zero(), residual_detail(&r)))
            })()),
            Expectation::DelDelbarClosed(f) => (format!("deldelbar_closed.{f}"), (|| {
                let r = s.del_delbar(need(f)?)?;
                Ok((r.is_zero(), residual_detail(&r)))
            })()),
            Expectation::DelMatchesDelbar(a, b) => (format!("del_{a}_eq_delbar_{b}"), (|| {
                let lhs = s.del_any(need(a)?)?;
                let rhs = s.delbar_any(need(b)?)?;
                let ok = lhs == rhs;
                Ok((ok, if ok { String::new() } else { format!("difference {}", lhs.sub(&rhs)?) }))
            })()),
            Expectation::Structure { kind, p, form } => (format!("{kind}.{form}"), (|| {
                let rep = match kind {
                    StructureKind::PKahler => check_pkahler(s, need(form)?, *p, CATALOG_SEED)?,
                    StructureKind::PPluriclosed => {
                        check_ppluriclosed(s, need(form)?, *p, CATALOG_SEED)?
                    }
                    StructureKind::PSymplectic => {
                        check_psymplectic(s, need(form)?, *p, CATALOG_SEED)?
                    }
                    _ => return Err(FormError::NotHomogeneous),
                };
                Ok((rep.certified(), rep.report_line()))
            })()),
            Expectation::Metric(kind) => (format!("metric.{kind}"), (|| {
                let h = Matrix::identity(s.dimension() as usize);
                let rep = check_metric(s, &h, *kind)?;
                Ok((rep.certified(), rep.report_line()))
            })()),
            Expectation::ClassNonzero(f, th) => (format!("class_nonzero.{f}.{th:?}"), (|| {
                let v = class_is_zero(s, *th, need(f)?)?;
                Ok((v.is_refuted(), format!("{}", v.outcome)))
            })()),
            Expectation::ClassZero(f, th) => (format!("class_zero.{f}.{th:?}"), (|| {
                let v = class_is_zero(s, *th, need(f)?)?;
                Ok((v.is_certified(), format!("{}", v.outcome)))
            })()),
            Expectation::SimpleClosedWitness(f) => (format!("simple_closed.{f}"), (|| {
                let w = need(f)?;
                let closed = s.differential(w)?.is_zero();
                let simple = w.is_simple()?.is_simple();
                Ok((closed && simple, format!("closed={closed} simple={simple}")))
            })()),
            Expectation::MaurerCartan(c) => (format!("maurer_cartan.{c}"), (|| {
                let curve = self.curves.get(*c).ok_or(FormError::NotHomogeneous)?;
                let v = maurer_cartan_check(s, curve.derivative())?;
                Ok((v.is_certified(), v.detail.clone()))
            })()),
            Expectation::ObstructionClass { curve, omega, zero } => {
                (format!("obstruction.{curve}.{omega}"), (|| {
                    let c = self.curves.get(*curve).ok_or(FormError::NotHomogeneous)?;
                    let (_, class) = first_order_obstruction(
                        s,
                        c.derivative(),
                        need(omega)?,
                        &InvariantForm::zero(s.dimension()),
                    )?;
                    let ok = if *zero {
                        class.is_certified()
                    } else {
                        class.is_refuted()
                    };
                    Ok((ok, format!("class {}", class.outcome)))
                })())
            }
        }
    }
}

fn residual_detail(r: &InvariantForm) -> String {
    if r.is_zero() {
        String::new()
    } else {
        format!("residual {r}")
    }
}

/// sigma_3 (sum_{i<j<k} s^{ijk, ijk-bar} - s^{135, 245-bar} - s^{245, 135-bar}),
/// on any 5-dimensional structure.
pub fn display_form_omega() -> InvariantForm {
    let n = 5;
    let mut f = InvariantForm::zero(n);
    for i in 1..=3u8 {
        for j in (i + 1)..=4 {
            for k in (j + 1)..=5 {
                f = f
                    .add(&InvariantForm::monomial(n, &[i, j, k], &[i, j, k], sigma(3)).unwrap())
                    .unwrap();
            }
        }
    }
    f.sub(&InvariantForm::monomial(n, &[1, 3, 5], &[2, 4, 5], sigma(3)).unwrap())
        .unwrap()
        .sub(&InvariantForm::monomial(n, &[2, 4, 5], &[1, 3, 5], sigma(3)).unwrap())
        .unwrap()
}

/// The modified closed transverse (3,3)-form on etabeta5 whose coefficient
/// pattern matches the positivity lemma after splitting off direction 5.
pub fn display_form_omega_star() -> InvariantForm {
    let n = 5;
    let mut f = InvariantForm::zero(n);
    for i in 1..=2u8 {
        for j in (i + 1)..=3 {
            for k in (j + 1)..=4 {
                f = f
                    .add(&InvariantForm::monomial(n, &[i, j, k], &[i, j, k], sigma(3)).unwrap())
                    .unwrap();
            }
        }
    }
    let tail: &[(&[u8], &[u8], i64)] = &[
        (&[1, 2, 5], &[1, 2, 5], 4),
        (&[1, 3, 5], &[1, 3, 5], 1),
        (&[1, 4, 5], &[1, 4, 5], 4),
        (&[2, 3, 5], &[2, 3, 5], 1),
        (&[2, 4, 5], &[2, 4, 5], 1),
        (&[3, 4, 5], &[3, 4, 5], 1),
        (&[1, 3, 5], &[2, 4, 5], -1),
        (&[2, 4, 5], &[1, 3, 5], -1),
        (&[2, 3, 5], &[1, 4, 5], -1),
        (&[1, 4, 5], &[2, 3, 5], -1),
    ];
    for (h, a, c) in tail {
        f = f
            .add(&InvariantForm::monomial(5, h, a, &sigma(3) * &Scalar::from_int(*c)).unwrap())
            .unwrap();
    }
    f
}

/// Curve generator a1 phibar^1 (x) theta_1 + a2 phibar^2 (x) theta_2.
pub fn diagonal_curve(a1: i64, a2: i64) -> DeformationCurve {
    DeformationCurve::linear(VectorForm::from_entries(
        5,
        &[
            (1, 1, Scalar::from_int(a1)),
            (2, 2, Scalar::from_int(a2)),
        ],
    ))
}

const ETABETA5_SRC: &str = "\
name etabeta5
dimension 5
d phi5 = -phi[1,3] - phi[2,4]
";

const FAMILY11_SRC: &str = "\
name family11
dimension 5
param a = 1
param b = 1
param c = 1
param d = 1
param e = 1
d phi5 = a*phi[1,3] + b*phi[1;2] + c*phi[1;4] + a*phi[2,4] + d*phi[2;1] + c*phi[2;3] + e*phi[3;2] - d*phi[3;4] + e*phi[4;1] - b*phi[4;3]
";

const FAMILY12_SRC: &str = "\
name family12
dimension 5
scalars sqrt 6
param a = sqrt(6)
param b = 1
param c = sqrt(6)
param L = 3*i*a/(8*b)
param N = 3*i*c/(8*b)
param P = -2*conj(b)*L/conj(c)
d phi5 = a*phi[1,2] + c*phi[3,4] + b*(phi[1;1] + phi[2;2] + phi[3;3] + phi[4;4])
form beta1 (4,2) = L*(phi[1,2,4,5;4,5] + phi[1,2,3,5;3,5]) + N*(phi[1,3,4,5;1,5] + phi[2,3,4,5;2,5])
form beta2 (5,1) = P*phi[1,2,3,4,5;5]
form w12 (2,0) = phi[1,2]
";

fn entry_etabeta5() -> CatalogEntry {
    let file = parse_structure_file(ETABETA5_SRC).expect("builtin source parses");
    let s = file.structure;
    let mut forms = BTreeMap::new();
    forms.insert("Omega".to_string(), display_form_omega());
    forms.insert("Omega_star".to_string(), display_form_omega_star());
    forms.insert(
        "omega".to_string(),
        metric_power(5, &Matrix::identity(5), 1).unwrap(),
    );
    forms.insert(
        "beta_witness".to_string(),
        InvariantForm::phi(5, &[1, 2], &[]),
    );
    let tilde = extension(
        &diagonal_curve(1, 1).at(&Scalar::rational(1, 3)),
        &display_form_omega_star(),
    )
    .unwrap();
    forms.insert("Omega_tilde".to_string(), tilde);
    let mut curves = BTreeMap::new();
    curves.insert("psi11".to_string(), diagonal_curve(1, 1));
    curves.insert("psi10".to_string(), diagonal_curve(1, 0));
    curves.insert("psi01".to_string(), diagonal_curve(0, 1));
    let expectations = vec![
        Expectation::Closed("Omega"),
        Expectation::Closed("Omega_star"),
        Expectation::Closed("Omega_tilde"),
        Expectation::Structure {
            kind: StructureKind::PKahler,
            p: 3,
            form: "Omega_star",
        },
        Expectation::Structure {
            kind: StructureKind::PKahler,
            p: 3,
            form: "Omega",
        },
        Expectation::Metric(StructureKind::Balanced),
        Expectation::Metric(StructureKind::Gauduchon),
        Expectation::SimpleClosedWitness("beta_witness"),
        Expectation::ClassNonzero("Omega_star", Theory::DeRham),
        Expectation::ClassNonzero("Omega_star", Theory::Dolbeault),
        Expectation::ClassNonzero("Omega_star", Theory::BottChern),
        Expectation::ClassNonzero("Omega_star", Theory::Aeppli),
        Expectation::ClassNonzero("Omega", Theory::DeRham),
        Expectation::ClassNonzero("Omega", Theory::Dolbeault),
        Expectation::ClassNonzero("Omega", Theory::BottChern),
        Expectation::ClassNonzero("Omega", Theory::Aeppli),
        Expectation::MaurerCartan("psi11"),
        Expectation::MaurerCartan("psi10"),
        Expectation::MaurerCartan("psi01"),
        Expectation::ObstructionClass {
            curve: "psi10",
            omega: "Omega",
            zero: false,
        },
        Expectation::ObstructionClass {
            curve: "psi01",
            omega: "Omega",
            zero: false,
        },
        Expectation::ObstructionClass {
            curve: "psi11",
            omega: "Omega",
            zero: false,
        },
        Expectation::ObstructionClass {
            curve: "psi11",
            omega: "Omega_star",
            zero: true,
        },
        Expectation::ObstructionClass {
            curve: "psi10",
            omega: "Omega_star",
            zero: false,
        },
    ];
    CatalogEntry {
        name: "etabeta5".to_string(),
        source: ETABETA5_SRC.to_string(),
        structure: s,
        forms,
        curves,
        expectations,
    }
}

fn entry_family11() -> CatalogEntry {
    let file = parse_structure_file(FAMILY11_SRC).expect("builtin source parses");
    let s = file.structure;
    let mut forms = BTreeMap::new();
    forms.insert("Omega".to_string(), display_form_omega());
    forms.insert(
        "beta_witness".to_string(),
        InvariantForm::phi(5, &[1, 2], &[]),
    );
    let expectations = vec![
        Expectation::DelbarClosed("Omega"),
        Expectation::Closed("Omega"),
        Expectation::Structure {
            kind: StructureKind::PKahler,
            p: 3,
            form: "Omega",
        },
        Expectation::SimpleClosedWitness("beta_witness"),
        Expectation::ClassNonzero("Omega", Theory::DeRham),
        Expectation::ClassNonzero("Omega", Theory::Dolbeault),
        Expectation::ClassNonzero("Omega", Theory::BottChern),
        Expectation::ClassNonzero("Omega", Theory::Aeppli),
    ];
    CatalogEntry {
        name: "family11".to_string(),
        source: FAMILY11_SRC.to_string(),
        structure: s,
        forms,
        curves: BTreeMap::new(),
        expectations,
    }
}

fn entry_family12() -> CatalogEntry {
    let file = parse_structure_file(FAMILY12_SRC).expect("builtin source parses");
    let s = file.structure;
    let mut forms = BTreeMap::new();
    let omega = metric_power(5, &Matrix::identity(5), 1).unwrap();
    let omega3 = metric_power(5, &Matrix::identity(5), 3).unwrap();
    let beta1 = file.forms["beta1"].clone();
    let beta2 = file.forms["beta2"].clone();
    // with del omega3 = delbar beta1 and del beta1 = delbar beta2, the
    // d-closed real combination takes beta1 with a minus sign:
    // (4,3)-slice del omega3 - delbar beta1 = 0,
    // (5,2)-slice -del beta1 + delbar beta2 = 0
    let big = omega3
        .sub(&beta1)
        .unwrap()
        .sub(&beta1.conjugate())
        .unwrap()
        .add(&beta2)
        .unwrap()
        .add(&beta2.conjugate())
        .unwrap();
    forms.insert("omega".to_string(), omega);
    forms.insert("omega3".to_string(), omega3);
    forms.insert("beta1".to_string(), beta1);
    forms.insert("beta2".to_string(), beta2);
    forms.insert("Omega".to_string(), big);
    forms.insert("beta_witness".to_string(), file.forms["w12"].clone());
    let expectations = vec![
        Expectation::NotClosed("omega"),
        Expectation::DelMatchesDelbar("omega3", "beta1"),
        Expectation::DelMatchesDelbar("beta1", "beta2"),
        Expectation::DelDelbarClosed("omega3"),
        Expectation::Closed("Omega"),
        Expectation::Structure {
            kind: StructureKind::PSymplectic,
            p: 3,
            form: "Omega",
        },
        Expectation::Structure {
            kind: StructureKind::PPluriclosed,
            p: 3,
            form: "omega3",
        },
        Expectation::Metric(StructureKind::AsthenoKahler),
        Expectation::SimpleClosedWitness("beta_witness"),
        Expectation::ClassNonzero("Omega", Theory::DeRham),
        Expectation::ClassNonzero("omega3", Theory::Aeppli),
    ];
    CatalogEntry {
        name: "family12".to_string(),
        source: FAMILY12_SRC.to_string(),
        structure: s,
        forms,
        curves: BTreeMap::new(),
        expectations,
    }
}

fn entry_torus(n: u8) -> CatalogEntry {
    let source = format!("name torus{n}\ndimension {n}\n");
    let s = StructureEquations::abelian(n, &format!("torus{n}"));
    let mut forms = BTreeMap::new();
    forms.insert(
        "omega".to_string(),
        metric_power(n, &Matrix::identity(n as usize), 1).unwrap(),
    );
    let witness: Vec<u8> = (1..n).collect();
    forms.insert(
        "beta_witness".to_string(),
        InvariantForm::phi(n, &witness, &[]),
    );
    let expectations = vec![
        Expectation::Closed("omega"),
        Expectation::Structure {
            kind: StructureKind::PKahler,
            p: 1,
            form: "omega",
        },
        Expectation::Metric(StructureKind::Kahler),
        Expectation::SimpleClosedWitness("beta_witness"),
        Expectation::ClassNonzero("omega", Theory::DeRham),
        Expectation::ClassNonzero("omega", Theory::Dolbeault),
        Expectation::ClassNonzero("omega", Theory::BottChern),
        Expectation::ClassNonzero("omega", Theory::Aeppli),
    ];
    CatalogEntry {
        name: format!("torus{n}"),
        source,
        structure: s,
        forms,
        curves: BTreeMap::new(),
        expectations,
    }
}

const IWASAWA_SRC: &str = "\
name iwasawa
dimension 3
d phi3 = phi[1,2]
";

fn entry_iwasawa() -> CatalogEntry {
    let file = parse_structure_file(IWASAWA_SRC).expect("builtin source parses");
    let s = file.structure;
    let mut forms = BTreeMap::new();
    forms.insert("zeta".to_string(), InvariantForm::phi(3, &[1, 2], &[]));
    forms.insert("alpha".to_string(), InvariantForm::phi(3, &[3], &[]));
    let expectations = vec![
        Expectation::Closed("zeta"),
        Expectation::ClassNonzero("zeta", Theory::Dolbeault),
    ];
    CatalogEntry {
        name: "iwasawa".to_string(),
        source: IWASAWA_SRC.to_string(),
        structure: s,
        forms,
        curves: BTreeMap::new(),
        expectations,
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        entry_etabeta5(),
        entry_family11(),
        entry_family12(),
        entry_torus(2),
        entry_torus(3),
        entry_iwasawa(),
    ]
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

/// Runs every expectation of every entry. The boolean is true when all pass.
pub fn selftest() -> (Vec<(String, bool, String)>, bool) {
    let mut lines = Vec::new();
    for e in catalog() {
        lines.extend(e.verify());
    }
    let ok = lines.iter().all(|(_, ok, _)| *ok);
    (lines, ok)
}
