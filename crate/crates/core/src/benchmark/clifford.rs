use crate::compiler::distance_up_to_phase;
use crate::error::{Error, Result};
use crate::linalg::{c, from_rows, identity, CMatrix, I, ONE, ZERO};

const SAME_GATE_TOL: f64 = 1e-9;

/// The 24-element single-qubit Clifford group modulo phase, with each
/// element also lifted to a larger register through an isometry.
#[derive(Debug, Clone)]
pub struct CliffordGroup {
    elements: Vec<CMatrix>,
    lifted: Vec<CMatrix>,
    // product[a][b] = index of elements[a] * elements[b]
    product: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

fn find(elements: &[CMatrix], u: &CMatrix) -> Option<usize> {
    elements.iter().position(|e| distance_up_to_phase(e, u).map_or(false, |d| d < SAME_GATE_TOL))
}

impl CliffordGroup {
    /// Generate the group from `H` and `S`. `iso` (d x 2) lifts each element
    /// to `iso C iso^dag + (I - iso iso^dag)`.
    pub fn new(iso: &CMatrix) -> Result<Self> {
        if iso.ncols() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: iso.ncols() });
        }
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = from_rows(&[&[c(s, 0.0), c(s, 0.0)], &[c(s, 0.0), c(-s, 0.0)]]);
        let phase = from_rows(&[&[ONE, ZERO], &[ZERO, I]]);
        let generators = [h, phase];

        let mut elements = vec![identity(2)];
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            for g in &generators {
                let next = g * &current;
                if find(&elements, &next).is_none() {
                    elements.push(next);
                }
            }
            frontier += 1;
        }
        if elements.len() != 24 {
            return Err(Error::InvalidSetup(format!("generated {} Cliffords instead of 24", elements.len())));
        }

        let lookup = |u: &CMatrix| find(&elements, u).ok_or_else(|| Error::InvalidSetup("Clifford group not closed".into()));
        let product = elements
            .iter()
            .map(|a| elements.iter().map(|b| lookup(&(a * b))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let inverse = elements.iter().map(|a| lookup(&a.adjoint())).collect::<Result<Vec<_>>>()?;
        let complement = identity(iso.nrows()) - iso * iso.adjoint();
        let lifted = elements.iter().map(|e| iso * e * iso.adjoint() + &complement).collect();
        Ok(CliffordGroup { elements, lifted, product, inverse })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, index: usize) -> &CMatrix {
        &self.elements[index]
    }

    pub fn lifted(&self, index: usize) -> &CMatrix {
        &self.lifted[index]
    }

    /// Index of `elements[a] * elements[b]`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.product[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Index of the element equal to `u` up to phase within `tol`.
    pub fn index_of(&self, u: &CMatrix, tol: f64) -> Option<usize> {
        self.elements.iter().position(|e| distance_up_to_phase(e, u).map_or(false, |d| d < tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, unitarity_defect};

    #[test]
    fn group_structure() {
        let group = CliffordGroup::new(&identity(2)).unwrap();
        assert_eq!(group.len(), 24);
        let id = group.index_of(&identity(2), 1e-12).unwrap();
        for a in 0..24 {
            assert_eq!(group.product(a, group.inverse(a)), id);
            assert!(unitarity_defect(group.element(a)) < 1e-12);
            for b in 0..24 {
                assert!(group.product(a, b) < 24);
            }
        }
    }

    #[test]
    fn lifted_elements_act_trivially_off_subspace() {
        let enc = crate::braid_space::LogicalEncoding::fibonacci();
        let group = CliffordGroup::new(enc.iso()).unwrap();
        let complement = identity(4) - enc.projector();
        for a in 0..24 {
            let u = group.lifted(a);
            assert!(max_abs_diff(&(u * &complement), &complement) < 1e-12);
            assert!(unitarity_defect(u) < 1e-12);
        }
    }
}
