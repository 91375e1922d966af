//! The invariant suite behind `fibtqc verify`.

use fibtqc::anyon::FusionCategory;
use fibtqc::braid_space::{build_generator, BraidSpace, Generator, LogicalEncoding, Space};
use fibtqc::compiler::{distance_up_to_phase, evaluate, hadamard_word, BraidWord, Letter, DELTA_H};
use fibtqc::linalg::{identity, max_abs_diff, unitarity_defect, unitary_power, CMatrix};
use fibtqc::reference;
use fibtqc::robustness::{extract_m, Crossings};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

type CheckFn = fn(&FusionCategory) -> anyhow::Result<f64>;

/// Name, default tolerance, and evaluator of every check.
pub const CHECKS: &[(&str, f64, CheckFn)] = &[
    ("f-unitarity", 1e-12, |cat| Ok(cat.verify_f_unitarity().max_residual)),
    ("pentagon", 1e-12, |cat| Ok(cat.verify_pentagon().max_residual)),
    ("hexagon", 1e-12, |cat| Ok(cat.verify_hexagon().max_residual)),
    ("tree-transform-oracle", 1e-12, |cat| {
        let f = cat.tree_transform();
        Ok(max_abs_diff(&f, &reference::tree_transform()).max(unitarity_defect(&f)))
    }),
    ("sigma-oracles", 1e-12, |cat| {
        Ok(max_abs_diff(&build_generator(cat, 3, 1)?, &reference::sigma_12())
            .max(max_abs_diff(&build_generator(cat, 3, 2)?, &reference::sigma_23())))
    }),
    ("tree-basis-braids", 1e-10, |cat| {
        let f = cat.tree_transform();
        let b1 = &f * build_generator(cat, 3, 1)? * f.adjoint();
        let b2 = &f * build_generator(cat, 3, 2)? * f.adjoint();
        Ok(max_abs_diff(&b1, &reference::b1()).max(max_abs_diff(&b2, &reference::b2())))
    }),
    ("yang-baxter", 1e-12, |cat| {
        let (a, b) = (build_generator(cat, 3, 1)?, build_generator(cat, 3, 2)?);
        Ok(max_abs_diff(&(&a * &b * &a), &(&b * &a * &b)))
    }),
    ("generator-order", 1e-12, |cat| {
        let a = build_generator(cat, 3, 1)?;
        Ok(max_abs_diff(&unitary_power(&a, 10), &identity(4)))
    }),
    ("extended-braid-relations", 1e-10, |cat| {
        let g: Vec<CMatrix> = (1..5).map(|p| build_generator(cat, 5, p)).collect::<Result<_, _>>()?;
        let mut worst = g.iter().map(unitarity_defect).fold(0.0, f64::max);
        for p in 0..3 {
            let (a, b) = (&g[p], &g[p + 1]);
            worst = worst.max(max_abs_diff(&(a * b * a), &(b * a * b)));
        }
        for (p, q) in [(0, 2), (0, 3), (1, 3)] {
            worst = worst.max(max_abs_diff(&(&g[p] * &g[q]), &(&g[q] * &g[p])));
        }
        Ok(worst)
    }),
    ("logical-restrictions", 1e-12, |cat| {
        let enc = LogicalEncoding::from_category(cat);
        let l12 = enc.restrict(&build_generator(cat, 3, 1)?)?;
        let l23 = enc.restrict(&build_generator(cat, 3, 2)?)?;
        Ok(max_abs_diff(&l12.matrix, &reference::logical_sigma_12())
            .max(max_abs_diff(&l23.matrix, &reference::logical_sigma_23()))
            .max(l12.leakage)
            .max(l23.leakage))
    }),
    ("word-leakage", 1e-10, |cat| {
        // A fixed sweep of words mixing both generators and all powers.
        let braids = BraidSpace::new(cat)?;
        let mut worst: f64 = 0.0;
        for seed in 0..64u32 {
            let letters = (0..24u32)
                .map(|i| {
                    let x = seed.wrapping_mul(2_654_435_761).wrapping_add(i.wrapping_mul(40_503)) >> 7;
                    let generator = Generator::ALL[(i as usize + seed as usize) % 2];
                    let power = [-4, -3, -2, -1, 1, 2, 3, 4][(x % 8) as usize];
                    Letter::new(generator, power)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let u = evaluate(&BraidWord::from_letters(letters)?, Space::Physical, &braids);
            worst = worst.max(braids.encoding().restrict(&u)?.leakage);
        }
        Ok(worst)
    }),
    ("hadamard-distance", 1e-12, |cat| {
        let braids = BraidSpace::new(cat)?;
        let d = distance_up_to_phase(&evaluate(&hadamard_word(), Space::Logical, &braids), &reference::hadamard())?;
        Ok((d - DELTA_H).abs() / DELTA_H)
    }),
    ("robustness-proportionality", 1e-10, |cat| {
        Ok(Crossings::ALL.iter().map(|&q| extract_m(cat, q).map(|r| r.deviation)).collect::<Result<Vec<_>, _>>()?.into_iter().fold(0.0, f64::max))
    }),
];

/// Run every check; an evaluation error counts as a failure with an
/// infinite residual.
pub fn run(cat: &FusionCategory, tolerance: Option<f64>) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|&(name, default_tol, check)| {
            let tolerance = tolerance.unwrap_or(default_tol);
            let residual = check(cat).unwrap_or(f64::INFINITY);
            CheckOutcome { name, residual, tolerance, passed: residual < tolerance }
        })
        .collect()
}
