//! Braid words, their evaluation, and search for braid approximations of
//! single-qubit gates.

mod kdtree;
mod search;
mod word;

pub use search::{canonical_word_count, search_word, SearchBudget, SearchResult};
pub use word::{BraidWord, Letter};

use std::f64::consts::PI;

use crate::braid_space::{BraidSpace, Generator, Space};
use crate::error::{Error, Result};
use crate::linalg::{eigenphases, identity, CMatrix, C64};

/// Distance up to global phase between the Hadamard gate and the logical
/// evaluation of [`hadamard_word`], computed in 50-digit arithmetic.
pub const DELTA_H: f64 = 6.566_788_542_304_700_8e-3;

/// Braid word realizing the logical Hadamard gate: 15 braid operations of
/// two elementary exchanges each (30 ms of braiding at 1 ms per exchange).
///
/// The two fourth powers appear as two consecutive squares, so the word is
/// not canonical; [`BraidWord::canonicalize`] folds it to 13 letters.
pub fn hadamard_word() -> BraidWord {
    use Generator::{S12, S23};
    BraidWord::from_operator_product(&[
        (S12, 2),
        (S12, 2),
        (S23, -2),
        (S12, 2),
        (S23, -2),
        (S12, 2),
        (S23, 2),
        (S12, -2),
        (S23, 2),
        (S23, 2),
        (S12, 2),
        (S23, -2),
        (S12, -2),
        (S23, 2),
        (S12, 2),
    ])
    .expect("static word")
}

/// Matrix of `word` in `space`.
pub fn evaluate(word: &BraidWord, space: Space, braids: &BraidSpace) -> CMatrix {
    word.letters()
        .iter()
        .fold(identity(space.dim()), |acc, l| braids.apply_left(space, l.generator, l.power, &acc))
}

/// `min_theta ||u - e^{i theta} v||` in operator norm.
///
/// Equals `2 sin(w/4)` where `w` is the shortest arc of the unit circle
/// holding every eigenphase of `v^dag u`.
pub fn distance_up_to_phase(u: &CMatrix, v: &CMatrix) -> Result<f64> {
    if u.shape() != v.shape() || !u.is_square() {
        return Err(Error::DimensionMismatch { expected: v.nrows(), got: u.nrows() });
    }
    let w = v.adjoint() * u;
    if w.nrows() == 2 {
        return Ok(distance_2x2(&w));
    }
    let mut phases = eigenphases(&w);
    phases.sort_by(f64::total_cmp);
    let n = phases.len();
    let largest_gap = (0..n)
        .map(|k| if k + 1 < n { phases[k + 1] - phases[k] } else { phases[0] + 2.0 * PI - phases[n - 1] })
        .fold(0.0, f64::max);
    let arc = (2.0 * PI - largest_gap).max(0.0);
    Ok(2.0 * (arc / 4.0).sin())
}

/// Distance of a 2x2 unitary `w` from the identity, up to phase.
///
/// After removing the determinant phase `w = [[a, -b*], [b, a*]]` with
/// eigenphases `+-theta`, `cos theta = Re a`. The angle is taken through
/// `atan2` so that near-identity inputs keep full relative precision.
fn distance_2x2(w: &CMatrix) -> f64 {
    let det = w[(0, 0)] * w[(1, 1)] - w[(0, 1)] * w[(1, 0)];
    let scale = det.sqrt().inv();
    let a = w[(0, 0)] * scale;
    let b = w[(1, 0)] * scale;
    let sin_theta = (a.im * a.im + b.norm_sqr()).sqrt();
    let theta = sin_theta.atan2(a.re.abs());
    2.0 * (theta / 2.0).sin()
}

/// Unit quaternion `(a, b)` of the SU(2) matrix `[[a, -b*], [b, a*]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Su2 {
    pub a: C64,
    pub b: C64,
}

impl Su2 {
    pub const IDENTITY: Su2 = Su2 { a: C64::new(1.0, 0.0), b: C64::new(0.0, 0.0) };

    /// Project a 2x2 unitary onto SU(2), choosing one of the two roots.
    pub fn from_unitary(u: &CMatrix) -> Su2 {
        let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
        let scale = det.sqrt().inv();
        Su2 { a: u[(0, 0)] * scale, b: u[(1, 0)] * scale }
    }

    pub fn mul(self, rhs: Su2) -> Su2 {
        Su2 { a: self.a * rhs.a - self.b.conj() * rhs.b, b: self.b * rhs.a + self.a.conj() * rhs.b }
    }

    pub fn adjoint(self) -> Su2 {
        Su2 { a: self.a.conj(), b: -self.b }
    }

    pub fn coords(self) -> [f64; 4] {
        [self.a.re, self.a.im, self.b.re, self.b.im]
    }

    pub fn neg(self) -> Su2 {
        Su2 { a: -self.a, b: -self.b }
    }
}
