//! Hilbert spaces of the anyon chain and the braid generators acting on them.
//!
//! Three spaces are used:
//!
//! * the 4-dim edge basis `|j,k>` of three tracked anyons (`Space::Physical`),
//! * its 2-dim logical subspace (`Space::Logical`),
//! * the 16-dim extended edge basis `|i1,i2,j,k>` obtained by adding a
//!   created pair of anyons to the left of the tracked three
//!   (`Space::Extended`).
//!
//! Generators are built from F and R data on the left-to-right fusion chain
//! `c0 = 1, c1 = tau, c2, ..., cn` (labels after fusing in each anyon in
//! turn). Exchanging anyons `p` and `p+1` only touches `c_p`:
//!
//! ```text
//! B[c', c] = sum_y conj(F(c', y)) R_y F(c, y),   F(c, y) = F^{c_{p-1} tau tau}_{c_{p+1}; c, y}
//! ```
//!
//! Chain states that violate a fusion rule carry no anyon configuration and
//! are left untouched. The edge basis is reached from the chain basis
//! through the tree transform `[F]`: chain amplitudes are `[F]` applied to
//! edge amplitudes, so an operator `B` on the chain corresponds to
//! `[F]^T B [F]` on edges.

use serde::{Deserialize, Serialize};

use crate::anyon::{AnyonLabel, FusionCategory};
use crate::error::{Error, Result};
use crate::linalg::{ensure_square, identity, kron, op_norm, unitary_power, CMatrix, ONE, ZERO};

/// One of the two braid generators of the tracked three-anyon subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    /// Exchange of the first and second tracked anyon.
    S12,
    /// Exchange of the second and third tracked anyon.
    S23,
}

impl Generator {
    pub const ALL: [Generator; 2] = [Generator::S12, Generator::S23];

    pub fn index(self) -> u32 {
        match self {
            Generator::S12 => 12,
            Generator::S23 => 23,
        }
    }

    pub fn other(self) -> Generator {
        match self {
            Generator::S12 => Generator::S23,
            Generator::S23 => Generator::S12,
        }
    }
}

impl TryFrom<u32> for Generator {
    type Error = Error;

    fn try_from(index: u32) -> Result<Self> {
        match index {
            12 => Ok(Generator::S12),
            23 => Ok(Generator::S23),
            other => Err(Error::InvalidGenerator(other)),
        }
    }
}

/// Target space for braid evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Logical,
    Physical,
    Extended,
}

impl Space {
    pub fn dim(self) -> usize {
        match self {
            Space::Logical => 2,
            Space::Physical => 4,
            Space::Extended => 16,
        }
    }
}

/// Chain labels `c0..=cn` of a chain-basis index.
///
/// For three anyons the index is `2 c2 + c3`. For five anyons it is
/// `8 c3 + 4 c2 + 2 c4 + c5`, which lines the chain basis up with the
/// extended edge basis `|i1,i2,j,k>` (`i1 = c3`, `i2 = c2`).
fn chain_labels(n_anyons: usize, index: usize) -> Vec<AnyonLabel> {
    let bit = |k: usize| AnyonLabel::from_bit((index >> k) & 1);
    let mut labels = vec![AnyonLabel::Vacuum, AnyonLabel::Tau];
    match n_anyons {
        3 => labels.extend([bit(1), bit(0)]),
        5 => labels.extend([bit(2), bit(3), bit(1), bit(0)]),
        _ => unreachable!("chain layout only defined for 3 and 5 anyons"),
    }
    labels
}

fn chain_index(n_anyons: usize, labels: &[AnyonLabel]) -> usize {
    let b = |k: usize| labels[k].bit();
    match n_anyons {
        3 => 2 * b(2) + b(3),
        5 => 8 * b(3) + 4 * b(2) + 2 * b(4) + b(5),
        _ => unreachable!("chain layout only defined for 3 and 5 anyons"),
    }
}

fn chain_admissible(cat: &FusionCategory, labels: &[AnyonLabel]) -> bool {
    labels.windows(2).all(|w| cat.fuse(w[0], AnyonLabel::Tau).contains(&w[1]))
}

fn check_configuration(n_anyons: usize, position: usize) -> Result<()> {
    if !matches!(n_anyons, 3 | 5) || position == 0 || position >= n_anyons {
        return Err(Error::UnsupportedConfiguration { n_anyons, position });
    }
    Ok(())
}

/// Generator exchanging anyons `position` and `position + 1` in the chain
/// basis.
pub fn chain_generator(cat: &FusionCategory, n_anyons: usize, position: usize) -> Result<CMatrix> {
    use AnyonLabel::Tau;

    check_configuration(n_anyons, position)?;
    let dim = 1 << (n_anyons - 1);
    let mut out = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let labels = chain_labels(n_anyons, col);
        if !chain_admissible(cat, &labels) {
            out[(col, col)] = ONE;
            continue;
        }
        let (left, right) = (labels[position - 1], labels[position + 1]);
        let from = labels[position];
        for to in AnyonLabel::ALL {
            let mut target = labels.clone();
            target[position] = to;
            if !chain_admissible(cat, &target) {
                continue;
            }
            let amp = cat
                .fuse(Tau, Tau)
                .into_iter()
                .map(|y| {
                    cat.f_symbol(left, Tau, Tau, right, to, y).conj()
                        * cat.r_symbol(Tau, Tau, y)
                        * cat.f_symbol(left, Tau, Tau, right, from, y)
                })
                .sum();
            out[(chain_index(n_anyons, &target), col)] = amp;
        }
    }
    Ok(out)
}

/// Edge-to-chain transform for an `n_anyons` system: `[F]` on the tracked
/// pair, identity on the created-pair labels.
pub fn edge_transform(cat: &FusionCategory, n_anyons: usize) -> Result<CMatrix> {
    let f = cat.tree_transform();
    match n_anyons {
        3 => Ok(f),
        5 => Ok(kron(&identity(4), &f)),
        _ => Err(Error::UnsupportedConfiguration { n_anyons, position: 0 }),
    }
}

/// Generator exchanging anyons `position` and `position + 1` in the edge
/// basis.
pub fn build_generator(cat: &FusionCategory, n_anyons: usize, position: usize) -> Result<CMatrix> {
    let chain = chain_generator(cat, n_anyons, position)?;
    let t = edge_transform(cat, n_anyons)?;
    Ok(t.adjoint() * chain * t)
}

/// `sigma_12` or `sigma_23` on the edge basis, optionally inverted.
pub fn sigma(generator: Generator, inverse: bool) -> CMatrix {
    let position = match generator {
        Generator::S12 => 1,
        Generator::S23 => 2,
    };
    let m = build_generator(&FusionCategory::fibonacci(), 3, position).expect("three-anyon generator");
    if inverse {
        m.adjoint()
    } else {
        m
    }
}

/// Tree-basis form `[F] u [F]^T` of an edge-basis operator.
pub fn tree_conjugate(u: &CMatrix) -> Result<CMatrix> {
    ensure_square(u, 4)?;
    let f = FusionCategory::fibonacci().tree_transform();
    Ok(&f * u * f.adjoint())
}

/// The logical qubit inside the edge basis.
#[derive(Debug, Clone)]
pub struct LogicalEncoding {
    iso: CMatrix,
}

impl LogicalEncoding {
    /// Logical states are the chain states `|m,n> = |0,1>` and `|1,1>`
    /// (total charge tau) pulled back to the edge basis.
    pub fn from_category(cat: &FusionCategory) -> Self {
        let f = cat.tree_transform();
        let iso = CMatrix::from_fn(4, 2, |i, j| f[(if j == 0 { 1 } else { 3 }, i)].conj());
        LogicalEncoding { iso }
    }

    pub fn fibonacci() -> Self {
        Self::from_category(&FusionCategory::fibonacci())
    }

    /// 4x2 isometry with columns `|0_L>`, `|1_L>`.
    pub fn iso(&self) -> &CMatrix {
        &self.iso
    }

    pub fn projector(&self) -> CMatrix {
        &self.iso * self.iso.adjoint()
    }

    /// The same encoding on the extended space, in the `i1 = 1, i2 = 0`
    /// sector.
    pub fn extended_iso(&self) -> CMatrix {
        let mut out = CMatrix::zeros(16, 2);
        out.view_mut((8, 0), (4, 2)).copy_from(&self.iso);
        out
    }

    /// Restriction of a 4x4 operator to the logical subspace.
    pub fn restrict(&self, u: &CMatrix) -> Result<LogicalBlock> {
        ensure_square(u, 4)?;
        let image = u * &self.iso;
        let matrix = self.iso.adjoint() * &image;
        let leakage = op_norm(&(&image - &self.iso * &matrix));
        Ok(LogicalBlock { matrix, leakage })
    }

    /// Lift a 2x2 logical operator to the edge basis, acting as identity on
    /// the complement.
    pub fn lift(&self, logical: &CMatrix) -> Result<CMatrix> {
        ensure_square(logical, 2)?;
        Ok(&self.iso * logical * self.iso.adjoint() + identity(4) - self.projector())
    }
}

/// Logical block of an operator and the norm of what leaves the subspace.
#[derive(Debug, Clone)]
pub struct LogicalBlock {
    pub matrix: CMatrix,
    pub leakage: f64,
}

pub fn logical_restrict(u: &CMatrix) -> Result<LogicalBlock> {
    LogicalEncoding::fibonacci().restrict(u)
}

/// Generator matrices for every space with cached powers `-4..=4`.
#[derive(Debug, Clone)]
pub struct BraidSpace {
    encoding: LogicalEncoding,
    // [space][generator][power + 4]
    powers: Vec<Vec<Vec<CMatrix>>>,
}

const MAX_CACHED_POWER: i32 = 4;

fn space_slot(space: Space) -> usize {
    match space {
        Space::Logical => 0,
        Space::Physical => 1,
        Space::Extended => 2,
    }
}

fn generator_slot(generator: Generator) -> usize {
    match generator {
        Generator::S12 => 0,
        Generator::S23 => 1,
    }
}

impl BraidSpace {
    pub fn new(cat: &FusionCategory) -> Result<Self> {
        let encoding = LogicalEncoding::from_category(cat);
        let physical = [build_generator(cat, 3, 1)?, build_generator(cat, 3, 2)?];
        let logical = [
            encoding.restrict(&physical[0])?.matrix,
            encoding.restrict(&physical[1])?.matrix,
        ];
        let extended = [build_generator(cat, 5, 3)?, build_generator(cat, 5, 4)?];
        let tabulate = |gens: &[CMatrix; 2]| -> Vec<Vec<CMatrix>> {
            gens.iter()
                .map(|g| (-MAX_CACHED_POWER..=MAX_CACHED_POWER).map(|p| unitary_power(g, p)).collect())
                .collect()
        };
        let powers = vec![tabulate(&logical), tabulate(&physical), tabulate(&extended)];
        Ok(BraidSpace { encoding, powers })
    }

    pub fn fibonacci() -> Self {
        Self::new(&FusionCategory::fibonacci()).expect("fibonacci braid space")
    }

    pub fn encoding(&self) -> &LogicalEncoding {
        &self.encoding
    }

    pub fn generator(&self, space: Space, generator: Generator) -> &CMatrix {
        self.cached(space, generator, 1).expect("power 1 is cached")
    }

    fn cached(&self, space: Space, generator: Generator, power: i32) -> Option<&CMatrix> {
        (power.abs() <= MAX_CACHED_POWER)
            .then(|| &self.powers[space_slot(space)][generator_slot(generator)][(power + MAX_CACHED_POWER) as usize])
    }

    /// `generator^power` in `space`.
    pub fn power(&self, space: Space, generator: Generator, power: i32) -> CMatrix {
        match self.cached(space, generator, power) {
            Some(m) => m.clone(),
            None => unitary_power(self.generator(space, generator), power),
        }
    }

    /// Multiply `acc` on the left by `generator^power`.
    pub fn apply_left(&self, space: Space, generator: Generator, power: i32, acc: &CMatrix) -> CMatrix {
        match self.cached(space, generator, power) {
            Some(m) => m * acc,
            None => unitary_power(self.generator(space, generator), power) * acc,
        }
    }
}

/// Extended-space basis index of `|i1,i2,j,k>`.
pub fn extended_index(i1: usize, i2: usize, j: usize, k: usize) -> usize {
    8 * i1 + 4 * i2 + 2 * j + k
}

/// Whether the chain state behind an extended-basis index obeys the fusion
/// rules.
pub fn extended_chain_admissible(cat: &FusionCategory, index: usize) -> bool {
    chain_admissible(cat, &chain_labels(5, index))
}

/// Total charge `c5` of an extended chain-basis index.
pub fn extended_total_charge(index: usize) -> AnyonLabel {
    chain_labels(5, index)[5]
}

/// Every matrix of the three-anyon subsystem, keyed by name, in the order
/// they are exported.
pub fn named_matrices() -> Vec<(&'static str, CMatrix)> {
    let cat = FusionCategory::fibonacci();
    let enc = LogicalEncoding::from_category(&cat);
    let s12 = sigma(Generator::S12, false);
    let s23 = sigma(Generator::S23, false);
    let tree = cat.tree_transform();
    let b1 = &tree * &s12 * tree.adjoint();
    let b2 = &tree * &s23 * tree.adjoint();
    let l12 = enc.restrict(&s12).map(|b| b.matrix).unwrap_or_else(|_| CMatrix::from_element(2, 2, ZERO));
    let l23 = enc.restrict(&s23).map(|b| b.matrix).unwrap_or_else(|_| CMatrix::from_element(2, 2, ZERO));
    vec![
        ("sigma12", s12),
        ("sigma23", s23),
        ("B1", b1),
        ("B2", b2),
        ("F", tree),
        ("sigma12_L", l12),
        ("sigma23_L", l23),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, unitarity_defect};
    use crate::reference;

    #[test]
    fn three_anyon_generators_match_closed_forms() {
        assert!(max_abs_diff(&sigma(Generator::S12, false), &reference::sigma_12()) < 1e-12);
        assert!(max_abs_diff(&sigma(Generator::S23, false), &reference::sigma_23()) < 1e-12);
    }

    #[test]
    fn chain_generators_match_tree_forms() {
        let cat = FusionCategory::fibonacci();
        assert!(max_abs_diff(&chain_generator(&cat, 3, 1).unwrap(), &reference::b1()) < 1e-12);
        assert!(max_abs_diff(&chain_generator(&cat, 3, 2).unwrap(), &reference::b2()) < 1e-12);
    }

    #[test]
    fn invalid_configurations_rejected() {
        let cat = FusionCategory::fibonacci();
        for (n, p) in [(4, 1), (3, 0), (3, 3), (5, 5), (7, 2)] {
            assert!(matches!(build_generator(&cat, n, p), Err(Error::UnsupportedConfiguration { .. })));
        }
        assert!(matches!(Generator::try_from(13), Err(Error::InvalidGenerator(13))));
        assert!(tree_conjugate(&identity(2)).is_err());
    }

    #[test]
    fn encoding_matches_closed_form() {
        let enc = LogicalEncoding::fibonacci();
        assert!(max_abs_diff(enc.iso(), &reference::logical_isometry()) < 1e-12);
        assert!(max_abs_diff(&(enc.iso().adjoint() * enc.iso()), &identity(2)) < 1e-12);
    }

    #[test]
    fn five_anyon_generators_are_unitary() {
        let cat = FusionCategory::fibonacci();
        for p in 1..5 {
            assert!(unitarity_defect(&build_generator(&cat, 5, p).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn extended_admissible_states() {
        let cat = FusionCategory::fibonacci();
        let admissible: Vec<usize> = (0..16).filter(|&i| extended_chain_admissible(&cat, i)).collect();
        assert_eq!(admissible.len(), 8);
        let vacuum_total = admissible.iter().filter(|&&i| extended_total_charge(i) == AnyonLabel::Vacuum).count();
        assert_eq!(vacuum_total, 3);
    }

    #[test]
    fn cached_and_uncached_powers_agree() {
        let bs = BraidSpace::fibonacci();
        let p5 = bs.power(Space::Physical, Generator::S23, 5);
        let p4 = bs.power(Space::Physical, Generator::S23, 4);
        let p1 = bs.power(Space::Physical, Generator::S23, 1);
        assert!(max_abs_diff(&p5, &(p4 * p1)) < 1e-12);
    }
}
