//! Closed-form reference matrices for the three-anyon subsystem.
//!
//! These are written out entry by entry from golden-ratio expressions and
//! serve as oracles for the matrices that [`crate::braid_space`] constructs
//! from F and R data. With `g = 2/(1+sqrt5) = 1/phi`:
//!
//! * `tree_transform` is the 4x4 edge-to-tree change of basis,
//! * `b1`, `b2` are the generators in the tree basis,
//! * `sigma_12`, `sigma_23` are the generators in the edge basis `|j,k>`,
//! * `logical_sigma_12`, `logical_sigma_23` are their logical blocks.
//!
//! The widely circulated tables for `sigma_12`, `sigma_23`, `B2` and the
//! logical `sigma_23` print the g-weighted diagonal entry with phase
//! `e^{i3pi/5}`. With that phase the matrices are not unitary; the
//! `*_as_printed` functions reproduce them verbatim so the discrepancy stays
//! testable. The plain functions carry the consistent phase `e^{i4pi/5}`.

use std::f64::consts::PI;

use crate::linalg::{c, cis, from_rows, CMatrix, C64, ONE, ZERO};

/// `2/(1+sqrt5)`.
pub fn g() -> f64 {
    2.0 / (1.0 + 5f64.sqrt())
}

fn r(x: f64) -> C64 {
    c(x, 0.0)
}

/// Phase on the g-weighted diagonal entry of the exchange block.
fn exchange_diagonal_phase(as_printed: bool) -> C64 {
    if as_printed {
        cis(3.0 * PI / 5.0)
    } else {
        cis(4.0 * PI / 5.0)
    }
}

pub fn tree_transform() -> CMatrix {
    let g = g();
    let s = g.sqrt();
    let t = 2.0 * 2f64.sqrt() / (1.0 + 5f64.sqrt()).powf(1.5);
    from_rows(&[
        &[ONE, ZERO, ZERO, ZERO],
        &[ZERO, r(g), ZERO, r(s)],
        &[ZERO, r(g), r(g), r(-t)],
        &[ZERO, r(-t), r(s), r(g * g)],
    ])
}

pub fn b1() -> CMatrix {
    let d = [ONE, cis(-4.0 * PI / 5.0), cis(3.0 * PI / 5.0), cis(3.0 * PI / 5.0)];
    CMatrix::from_fn(4, 4, |i, j| if i == j { d[i] } else { ZERO })
}

fn b2_impl(as_printed: bool) -> CMatrix {
    let g = g();
    let off = -crate::linalg::I * cis(-PI / 10.0) * g.sqrt();
    from_rows(&[
        &[ONE, ZERO, ZERO, ZERO],
        &[ZERO, exchange_diagonal_phase(as_printed) * g, ZERO, off],
        &[ZERO, ZERO, cis(3.0 * PI / 5.0), ZERO],
        &[ZERO, off, ZERO, r(-g)],
    ])
}

pub fn b2() -> CMatrix {
    b2_impl(false)
}

pub fn b2_as_printed() -> CMatrix {
    b2_impl(true)
}

fn sigma_12_impl(as_printed: bool) -> CMatrix {
    let g = g();
    let off = cis(7.0 * PI / 5.0) * g.sqrt();
    from_rows(&[
        &[ONE, ZERO, ZERO, ZERO],
        &[ZERO, exchange_diagonal_phase(as_printed) * g, ZERO, off],
        &[ZERO, ZERO, cis(3.0 * PI / 5.0), ZERO],
        &[ZERO, off, ZERO, r(-g)],
    ])
}

fn sigma_23_impl(as_printed: bool) -> CMatrix {
    let g = g();
    let off = cis(7.0 * PI / 5.0) * g.sqrt();
    from_rows(&[
        &[ONE, ZERO, ZERO, ZERO],
        &[ZERO, cis(3.0 * PI / 5.0), ZERO, ZERO],
        &[ZERO, ZERO, exchange_diagonal_phase(as_printed) * g, off],
        &[ZERO, ZERO, off, r(-g)],
    ])
}

pub fn sigma_12() -> CMatrix {
    sigma_12_impl(false)
}

pub fn sigma_23() -> CMatrix {
    sigma_23_impl(false)
}

pub fn sigma_12_as_printed() -> CMatrix {
    sigma_12_impl(true)
}

pub fn sigma_23_as_printed() -> CMatrix {
    sigma_23_impl(true)
}

pub fn logical_sigma_12() -> CMatrix {
    from_rows(&[&[cis(-4.0 * PI / 5.0), ZERO], &[ZERO, cis(3.0 * PI / 5.0)]])
}

fn logical_sigma_23_impl(as_printed: bool) -> CMatrix {
    let g = g();
    let off = cis(7.0 * PI / 5.0) * g.sqrt();
    from_rows(&[&[exchange_diagonal_phase(as_printed) * g, off], &[off, r(-g)]])
}

pub fn logical_sigma_23() -> CMatrix {
    logical_sigma_23_impl(false)
}

pub fn logical_sigma_23_as_printed() -> CMatrix {
    logical_sigma_23_impl(true)
}

/// Columns `|0_L>`, `|1_L>` in the `|j,k>` basis.
pub fn logical_isometry() -> CMatrix {
    let phi = 1.0 / g();
    let zero_l = [0.0, 1.0 / phi, 0.0, (1.0 / phi).sqrt()];
    let one_l = [0.0, -1.0 / phi.powf(1.5), (1.0 / phi).sqrt(), 1.0 / (phi * phi)];
    CMatrix::from_fn(4, 2, |i, j| r(if j == 0 { zero_l[i] } else { one_l[i] }))
}

/// The ideal Hadamard gate.
pub fn hadamard() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    from_rows(&[&[r(s), r(s)], &[r(s), r(-s)]])
}
