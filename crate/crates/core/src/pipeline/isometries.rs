//! The involutions ψ₁, ψ₂ of the K3 lattice.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::periods::{PeriodTriple, E8_NAMES, H_NAMES};
use crate::exact::{linalg, IntMatrix, RatMatrix, Rational};
use crate::lattice::IntegerLattice;
use crate::su2_groups::{tau, AntiUnitaryMap};
use crate::torus_actions::TorusPart;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Kind {
    First,
    Second,
}

impl TryFrom<u8> for Kind {
    type Error = String;

    fn try_from(k: u8) -> Result<Self, Self::Error> {
        match k {
            1 => Ok(Kind::First),
            2 => Ok(Kind::Second),
            other => Err(format!("kind must be 1 or 2, got {other}")),
        }
    }
}

impl From<Kind> for u8 {
    fn from(k: Kind) -> u8 {
        match k {
            Kind::First => 1,
            Kind::Second => 2,
        }
    }
}

impl Kind {
    pub const ALL: [Kind; 2] = [Kind::First, Kind::Second];

    /// Signs of `ψ₁, ψ₂` on `(x₁, x₂, x₃)`.
    pub fn sign_tables(self) -> [[i8; 3]; 2] {
        match self {
            Kind::First => [[-1, -1, 1], [-1, 1, -1]],
            Kind::Second => [[-1, -1, 1], [1, -1, -1]],
        }
    }

    /// Torus maps paired with `ψ₁, ψ₂`.
    pub fn torus_parts(self) -> [TorusPart; 2] {
        match self {
            Kind::First => [TorusPart::Beta, TorusPart::Gamma],
            Kind::Second => [TorusPart::BetaPrime, TorusPart::Eta],
        }
    }

    /// Maps of ℂ² paired with `ψ₁, ψ₂`.
    pub fn tau_indices(self) -> [u8; 2] {
        match self {
            Kind::First => [1, 2],
            Kind::Second => [1, 3],
        }
    }

    pub fn taus(self) -> [AntiUnitaryMap; 2] {
        self.tau_indices().map(tau)
    }
}

/// A lattice isometry acting by a sign on each block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIsometry {
    pub name: String,
    pub h_signs: [i8; 3],
    pub e8_signs: [i8; 2],
    pub matrix: IntMatrix,
}

impl LatticeIsometry {
    pub fn from_signs(lattice: &IntegerLattice, name: &str, h_signs: [i8; 3], e8_signs: [i8; 2]) -> Self {
        let mut diag = vec![BigInt::zero(); lattice.rank()];
        let blocks = H_NAMES.iter().zip(h_signs).chain(E8_NAMES.iter().zip(e8_signs));
        for (block, s) in blocks {
            let b = lattice.block(block).expect("K3 blocks");
            for slot in &mut diag[b.offset..b.offset + b.size] {
                *slot = BigInt::from(s);
            }
        }
        Self {
            name: name.to_string(),
            h_signs,
            e8_signs,
            matrix: IntMatrix::diagonal(&diag),
        }
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix.to_rational().mul_vec(v)
    }

    pub fn compose(&self, other: &Self) -> IntMatrix {
        self.matrix.mul(&other.matrix)
    }

    pub fn preserves_gram(&self, lattice: &IntegerLattice) -> bool {
        self.matrix.transpose().mul(lattice.gram()).mul(&self.matrix) == *lattice.gram()
    }

    pub fn is_involution(&self) -> bool {
        self.matrix.mul(&self.matrix).is_identity()
    }

    /// Matrix of `ψ` on `span(x₁, x₂, x₃)` (column `j` is `ψ(xⱼ)`), if the
    /// span is preserved.
    pub fn restricted_to_periods(&self, lattice: &IntegerLattice, p: &PeriodTriple) -> Option<RatMatrix> {
        let ip = |a: &[Rational], b: &[Rational]| lattice.inner_product(a, b).expect("rank 22");
        let mut out = RatMatrix::zeros(3, 3);
        for j in 0..3 {
            let image = self.apply(&p.x[j]);
            let mut recon = vec![Rational::zero(); lattice.rank()];
            for i in 0..3 {
                let c = ip(&p.x[i], &image) / ip(&p.x[i], &p.x[i]);
                for (slot, v) in recon.iter_mut().zip(&p.x[i]) {
                    *slot += &c * v;
                }
                out[(i, j)] = c;
            }
            if recon != image {
                return None;
            }
        }
        Some(out)
    }

    /// `det(ψ|span(x₁, x₂, x₃)) = +1`.
    pub fn positive_cone_criterion(&self, lattice: &IntegerLattice, p: &PeriodTriple) -> bool {
        self.restricted_to_periods(lattice, p)
            .is_some_and(|m| linalg::determinant(&m).is_one())
    }

    pub fn minus_count(&self) -> usize {
        self.h_signs.iter().filter(|&&s| s < 0).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryVerification {
    pub gram_preserved: bool,
    pub involutive: bool,
    pub commute: bool,
    pub sign_tables: bool,
    pub positive_cone: bool,
    /// Restrictions to the periods equal the paired torus rotations.
    pub matches_torus_rotation: bool,
    pub failures: Vec<String>,
}

impl IsometryVerification {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `ψ₁, ψ₂` for the given kind: signs per the kind's table on the `H` blocks;
/// on a perturbed (−E8) block `−Id` when the table asks for `−x₁`, else `+Id`.
pub fn construct_isometries(
    lattice: &IntegerLattice,
    kind: Kind,
    p: &PeriodTriple,
) -> ([LatticeIsometry; 2], IsometryVerification) {
    let tables = kind.sign_tables();
    let psi = [0, 1].map(|k| {
        let e8 = [0, 1].map(|b| if p.perturbation[b].is_some() { tables[k][0] } else { 1 });
        LatticeIsometry::from_signs(lattice, &format!("psi{}", k + 1), tables[k], e8)
    });
    let verification = verify_isometries(lattice, kind, p, &psi);
    (psi, verification)
}

pub fn verify_isometries(
    lattice: &IntegerLattice,
    kind: Kind,
    p: &PeriodTriple,
    psi: &[LatticeIsometry; 2],
) -> IsometryVerification {
    let tables = kind.sign_tables();
    let rotations = kind.torus_parts().map(|t| crate::torus_actions::torus_part(t).rotation_matrix());
    let restricted: Vec<Option<RatMatrix>> = psi.iter().map(|s| s.restricted_to_periods(lattice, p)).collect();
    let mut v = IsometryVerification {
        gram_preserved: psi.iter().all(|s| s.preserves_gram(lattice)),
        involutive: psi.iter().all(LatticeIsometry::is_involution),
        commute: psi[0].compose(&psi[1]) == psi[1].compose(&psi[0]),
        sign_tables: psi.iter().zip(&tables).all(|(s, t)| {
            (0..3).all(|i| {
                let expected: Vec<Rational> = p.x[i].iter().map(|c| c * Rational::from_integer(t[i].into())).collect();
                s.apply(&p.x[i]) == expected
            })
        }),
        positive_cone: psi.iter().all(|s| s.positive_cone_criterion(lattice, p)),
        matches_torus_rotation: restricted.iter().zip(&rotations).all(|(r, rot)| r.as_ref() == Some(rot)),
        failures: Vec::new(),
    };
    let named = [
        ("gram_preserved", v.gram_preserved),
        ("involutive", v.involutive),
        ("commute", v.commute),
        ("sign_tables", v.sign_tables),
        ("positive_cone", v.positive_cone),
        ("matches_torus_rotation", v.matches_torus_rotation),
    ];
    v.failures = named.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.to_string()).collect();
    v
}

/// A sign map with an odd number of minus signs on the `H` blocks.
pub fn odd_sign_example(lattice: &IntegerLattice) -> LatticeIsometry {
    LatticeIsometry::from_signs(lattice, "odd", [-1, 1, 1], [1, 1])
}
