use alloc::vec::Vec;
use core::fmt;

use crate::mpnum::Real;

/// Which identity a report certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityId {
    Legendre,
    LandenI,
    LandenII,
    LandenIII,
    LandenIV,
    Ramanujan,
    HypergeometricK,
    HypergeometricE,
    DerivativeK,
    DerivativeE,
    OdeK,
    OdeKprime,
    OdeE,
    OdeEprimeMinusKprime,
    GaussP2,
    GaussP3,
    GaussP4,
    Homogeneity,
    Invariance,
    Contraction,
    LemmaIJ,
    PropEK,
}

impl IdentityId {
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Legendre => "legendre",
            IdentityId::LandenI => "landen-i",
            IdentityId::LandenII => "landen-ii",
            IdentityId::LandenIII => "landen-iii",
            IdentityId::LandenIV => "landen-iv",
            IdentityId::Ramanujan => "ramanujan",
            IdentityId::HypergeometricK => "hypergeometric-k",
            IdentityId::HypergeometricE => "hypergeometric-e",
            IdentityId::DerivativeK => "derivative-k",
            IdentityId::DerivativeE => "derivative-e",
            IdentityId::OdeK => "ode-k",
            IdentityId::OdeKprime => "ode-kprime",
            IdentityId::OdeE => "ode-e",
            IdentityId::OdeEprimeMinusKprime => "ode-eprime-minus-kprime",
            IdentityId::GaussP2 => "gauss-p2",
            IdentityId::GaussP3 => "k3-formula",
            IdentityId::GaussP4 => "k4-formula",
            IdentityId::Homogeneity => "homogeneity",
            IdentityId::Invariance => "invariance",
            IdentityId::Contraction => "contraction",
            IdentityId::LemmaIJ => "lemma-ij",
            IdentityId::PropEK => "prop-ek",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Both sides of a checked identity and the verdict.
///
/// `abs_defect = |lhs - rhs|`, `rel_defect = abs_defect / |rhs|` (or
/// `abs_defect` when `rhs = 0`), and `pass` iff `abs_defect <= tol`.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub inputs: Vec<(&'static str, Real)>,
    pub lhs: Real,
    pub rhs: Real,
    pub abs_defect: Real,
    pub rel_defect: Real,
    pub tol: Real,
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(
        identity: IdentityId,
        inputs: Vec<(&'static str, Real)>,
        lhs: Real,
        rhs: Real,
        tol: Real,
    ) -> Self {
        let prec = lhs.prec().max(rhs.prec());
        let abs_defect = lhs.sub_prec(&rhs, prec).abs();
        let rel_defect = if rhs.is_zero() {
            abs_defect.clone()
        } else {
            abs_defect.div_prec(&rhs.abs(), 64)
        };
        let pass = abs_defect.is_finite() && abs_defect <= tol;
        IdentityReport { identity, inputs, lhs, rhs, abs_defect, rel_defect, tol, pass }
    }
}
