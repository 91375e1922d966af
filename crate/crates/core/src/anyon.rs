//! Fibonacci fusion-category data and its consistency checks.
//!
//! F-symbols are stored in the tetrahedral (Levin-Wen) form `F^{ijm}_{kln}`,
//! nonzero only when the four triangles `(i,j,m)`, `(k,l,m)`, `(j,k,n)` and
//! `(i,l,n)` are fusion-admissible. The usual anyon-model matrix element
//! `[F^{abc}_d]_{ef}` is `F^{abe}_{cdf}` in this layout.
//!
//! Gauge: the tetrahedral normalization with `v_tau = sqrt(phi)`. In this
//! gauge the composed two-move transform `F^{11j}_{1km} F^{11k}_{m1n}`
//! reproduces the published 4x4 edge-to-tree matrix entry for entry.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{c, cis, unitarity_defect, CMatrix, C64, ONE, ZERO};

/// Golden ratio.
pub const PHI: f64 = 1.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnyonLabel {
    Vacuum = 0,
    Tau = 1,
}

impl AnyonLabel {
    pub const ALL: [AnyonLabel; 2] = [AnyonLabel::Vacuum, AnyonLabel::Tau];

    pub fn from_bit(bit: usize) -> Self {
        if bit == 0 {
            AnyonLabel::Vacuum
        } else {
            AnyonLabel::Tau
        }
    }

    pub fn bit(self) -> usize {
        self as usize
    }

    /// Both labels are self-dual.
    pub fn dual(self) -> Self {
        self
    }
}

use AnyonLabel::{Tau, Vacuum};

/// Fusion rules and quantum dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionData {
    pub labels: Vec<AnyonLabel>,
    pub fusion_table: BTreeMap<(AnyonLabel, AnyonLabel), BTreeSet<AnyonLabel>>,
    pub qdim: BTreeMap<AnyonLabel, f64>,
}

impl FusionData {
    pub fn fibonacci() -> Self {
        let mut fusion_table = BTreeMap::new();
        fusion_table.insert((Vacuum, Vacuum), BTreeSet::from([Vacuum]));
        fusion_table.insert((Vacuum, Tau), BTreeSet::from([Tau]));
        fusion_table.insert((Tau, Vacuum), BTreeSet::from([Tau]));
        fusion_table.insert((Tau, Tau), BTreeSet::from([Vacuum, Tau]));
        FusionData {
            labels: AnyonLabel::ALL.to_vec(),
            fusion_table,
            qdim: BTreeMap::from([(Vacuum, 1.0), (Tau, PHI)]),
        }
    }

    /// The category with the vacuum as its only label.
    pub fn trivial() -> Self {
        FusionData {
            labels: vec![Vacuum],
            fusion_table: BTreeMap::from([((Vacuum, Vacuum), BTreeSet::from([Vacuum]))]),
            qdim: BTreeMap::from([(Vacuum, 1.0)]),
        }
    }

    pub fn fuse(&self, a: AnyonLabel, b: AnyonLabel) -> BTreeSet<AnyonLabel> {
        self.fusion_table.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// `c` appears in `a x b`.
    pub fn admissible(&self, a: AnyonLabel, b: AnyonLabel, c: AnyonLabel) -> bool {
        self.fusion_table.get(&(a, b)).is_some_and(|s| s.contains(&c))
    }

    pub fn qdim(&self, a: AnyonLabel) -> f64 {
        self.qdim.get(&a).copied().unwrap_or(0.0)
    }
}

/// `F^{ijm}_{kln}` keyed as `[i, j, m, k, l, n]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FSymbolTable {
    pub entries: BTreeMap<[AnyonLabel; 6], C64>,
}

impl FSymbolTable {
    pub fn get(&self, key: [AnyonLabel; 6]) -> C64 {
        self.entries.get(&key).copied().unwrap_or(ZERO)
    }
}

/// `R^{ab}_c` keyed as `[a, b, c]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RSymbolTable {
    pub entries: BTreeMap<[AnyonLabel; 3], C64>,
}

impl RSymbolTable {
    pub fn get(&self, key: [AnyonLabel; 3]) -> C64 {
        self.entries.get(&key).copied().unwrap_or(ZERO)
    }
}

/// Residual of an exhaustive consistency check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub max_residual: f64,
    pub tuples_checked: usize,
}

/// Fusion rules together with F and R data. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionCategory {
    pub fusion: FusionData,
    pub f: FSymbolTable,
    pub r: RSymbolTable,
}

impl FusionCategory {
    pub fn fibonacci() -> Self {
        let fusion = FusionData::fibonacci();
        let v = |a: AnyonLabel| fusion.qdim(a).sqrt();
        let mut f = FSymbolTable::default();
        for key in sextuples(&fusion.labels) {
            let [i, j, m, k, _, n] = key;
            if !tetrahedron_admissible(&fusion, key) {
                continue;
            }
            let value = if key.iter().all(|&x| x == Tau) {
                -1.0 / PHI
            } else if m == Vacuum {
                v(n) / (v(i) * v(k))
            } else if n == Vacuum {
                v(m) / (v(i) * v(j))
            } else {
                1.0
            };
            f.entries.insert(key, c(value, 0.0));
        }

        let mut r = RSymbolTable::default();
        for a in AnyonLabel::ALL {
            for b in AnyonLabel::ALL {
                for cc in fusion.fuse(a, b) {
                    let value = match (a, b, cc) {
                        (Tau, Tau, Vacuum) => cis(-4.0 * std::f64::consts::PI / 5.0),
                        (Tau, Tau, Tau) => cis(3.0 * std::f64::consts::PI / 5.0),
                        _ => ONE,
                    };
                    r.entries.insert([a, b, cc], value);
                }
            }
        }
        FusionCategory { fusion, f, r }
    }

    pub fn trivial() -> Self {
        let fusion = FusionData::trivial();
        let f = FSymbolTable { entries: BTreeMap::from([([Vacuum; 6], ONE)]) };
        let r = RSymbolTable { entries: BTreeMap::from([([Vacuum; 3], ONE)]) };
        FusionCategory { fusion, f, r }
    }

    pub fn labels(&self) -> &[AnyonLabel] {
        &self.fusion.labels
    }

    pub fn fuse(&self, a: AnyonLabel, b: AnyonLabel) -> BTreeSet<AnyonLabel> {
        self.fusion.fuse(a, b)
    }

    /// Tetrahedral symbol `F^{ijm}_{kln}`; zero when not admissible.
    pub fn six_j(&self, i: AnyonLabel, j: AnyonLabel, m: AnyonLabel, k: AnyonLabel, l: AnyonLabel, n: AnyonLabel) -> C64 {
        if !tetrahedron_admissible(&self.fusion, [i, j, m, k, l, n]) {
            return ZERO;
        }
        self.f.get([i, j, m, k, l, n])
    }

    /// Anyon-model element `[F^{abc}_d]_{ef}` with `e` in `a x b` and `f`
    /// in `b x c`.
    pub fn f_symbol(&self, a: AnyonLabel, b: AnyonLabel, cc: AnyonLabel, d: AnyonLabel, e: AnyonLabel, f: AnyonLabel) -> C64 {
        self.six_j(a, b, e, cc, d, f)
    }

    /// `R^{ab}_c`; zero when `c` is not in `a x b`.
    pub fn r_symbol(&self, a: AnyonLabel, b: AnyonLabel, cc: AnyonLabel) -> C64 {
        if !self.fusion.admissible(a, b, cc) {
            return ZERO;
        }
        self.r.get([a, b, cc])
    }

    /// The block `[F^{abc}_d]` over its admissible `(e, f)` channels.
    /// Returns the row labels, column labels and the matrix; a block with no
    /// admissible channel is 0x0.
    pub fn f_matrix(&self, a: AnyonLabel, b: AnyonLabel, cc: AnyonLabel, d: AnyonLabel) -> (Vec<AnyonLabel>, Vec<AnyonLabel>, CMatrix) {
        let rows: Vec<AnyonLabel> = self
            .labels()
            .iter()
            .copied()
            .filter(|&e| self.fusion.admissible(a, b, e) && self.fusion.admissible(e, cc, d))
            .collect();
        let cols: Vec<AnyonLabel> = self
            .labels()
            .iter()
            .copied()
            .filter(|&f| self.fusion.admissible(b, cc, f) && self.fusion.admissible(a, f, d))
            .collect();
        let m = CMatrix::from_fn(rows.len(), cols.len(), |r, s| self.f_symbol(a, b, cc, d, rows[r], cols[s]));
        (rows, cols, m)
    }

    /// Largest unitarity defect over every F block.
    pub fn verify_f_unitarity(&self) -> ConsistencyReport {
        let mut max_residual: f64 = 0.0;
        let mut tuples_checked = 0;
        let labels = self.labels();
        for &a in labels {
            for &b in labels {
                for &cc in labels {
                    for &d in labels {
                        let (rows, cols, m) = self.f_matrix(a, b, cc, d);
                        tuples_checked += 1;
                        if rows.is_empty() && cols.is_empty() {
                            continue;
                        }
                        if rows.len() != cols.len() {
                            max_residual = f64::INFINITY;
                            continue;
                        }
                        max_residual = max_residual.max(unitarity_defect(&m));
                    }
                }
            }
        }
        ConsistencyReport { max_residual, tuples_checked }
    }

    /// Pentagon identity
    /// `[F^{fcd}_e]_{gl} [F^{abl}_e]_{fk} = sum_h [F^{abc}_g]_{fh} [F^{ahd}_e]_{gk} [F^{bcd}_k]_{hl}`
    /// over every label assignment.
    pub fn verify_pentagon(&self) -> ConsistencyReport {
        let labels = self.labels();
        let mut max_residual: f64 = 0.0;
        let mut tuples_checked = 0;
        for [a, b, cc, d, e, f, g, k, l] in assignments::<9>(labels) {
            let lhs = self.f_symbol(f, cc, d, e, g, l) * self.f_symbol(a, b, l, e, f, k);
            let rhs: C64 = labels
                .iter()
                .map(|&h| self.f_symbol(a, b, cc, g, f, h) * self.f_symbol(a, h, d, e, g, k) * self.f_symbol(b, cc, d, k, h, l))
                .sum();
            max_residual = max_residual.max((lhs - rhs).norm());
            tuples_checked += 1;
        }
        ConsistencyReport { max_residual, tuples_checked }
    }

    /// Both hexagon identities (with `R` and with `R^{-1}`) at one label
    /// assignment `(a, b, c, d, e, g)`.
    pub fn hexagon_residual_at(&self, a: AnyonLabel, b: AnyonLabel, cc: AnyonLabel, d: AnyonLabel, e: AnyonLabel, g: AnyonLabel) -> f64 {
        let labels = self.labels();
        let lhs = self.r_symbol(cc, a, e) * self.f_symbol(a, cc, b, d, e, g) * self.r_symbol(cc, b, g);
        let rhs: C64 = labels
            .iter()
            .map(|&f| self.f_symbol(cc, a, b, d, e, f) * self.r_symbol(cc, f, d) * self.f_symbol(a, b, cc, d, f, g))
            .sum();
        let lhs_inv = self.r_symbol(a, cc, e).conj() * self.f_symbol(a, cc, b, d, e, g) * self.r_symbol(b, cc, g).conj();
        let rhs_inv: C64 = labels
            .iter()
            .map(|&f| self.f_symbol(cc, a, b, d, e, f) * self.r_symbol(f, cc, d).conj() * self.f_symbol(a, b, cc, d, f, g))
            .sum();
        (lhs - rhs).norm().max((lhs_inv - rhs_inv).norm())
    }

    pub fn verify_hexagon(&self) -> ConsistencyReport {
        let mut max_residual: f64 = 0.0;
        let mut tuples_checked = 0;
        for [a, b, cc, d, e, g] in assignments::<6>(self.labels()) {
            max_residual = max_residual.max(self.hexagon_residual_at(a, b, cc, d, e, g));
            tuples_checked += 1;
        }
        ConsistencyReport { max_residual, tuples_checked }
    }

    /// Edge-to-tree transform `[F]_{(m,n),(j,k)} = F^{11j}_{1km} F^{11k}_{m1n}`,
    /// rows and columns ordered 00, 01, 10, 11. The `(0,0)` sector carries
    /// no anyon and is mapped to itself.
    pub fn tree_transform(&self) -> CMatrix {
        let mut out = CMatrix::zeros(4, 4);
        for m in AnyonLabel::ALL {
            for n in AnyonLabel::ALL {
                for j in AnyonLabel::ALL {
                    for k in AnyonLabel::ALL {
                        let row = 2 * m.bit() + n.bit();
                        let col = 2 * j.bit() + k.bit();
                        out[(row, col)] = self.six_j(Tau, Tau, j, Tau, k, m) * self.six_j(Tau, Tau, k, m, Tau, n);
                    }
                }
            }
        }
        out[(0, 0)] = ONE;
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&CategoryJson::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CategoryJson = serde_json::from_str(text)?;
        Ok(doc.into())
    }
}

fn tetrahedron_admissible(fusion: &FusionData, [i, j, m, k, l, n]: [AnyonLabel; 6]) -> bool {
    fusion.admissible(i, j, m) && fusion.admissible(k, l, m) && fusion.admissible(j, k, n) && fusion.admissible(i, l, n)
}

fn sextuples(labels: &[AnyonLabel]) -> Vec<[AnyonLabel; 6]> {
    assignments::<6>(labels)
}

/// Every `N`-tuple over `labels`, in lexicographic order.
fn assignments<const N: usize>(labels: &[AnyonLabel]) -> Vec<[AnyonLabel; N]> {
    let base = labels.len();
    if base == 0 {
        return Vec::new();
    }
    let total = base.pow(N as u32);
    (0..total)
        .map(|mut idx| {
            let mut out = [Vacuum; N];
            for slot in out.iter_mut().rev() {
                *slot = labels[idx % base];
                idx /= base;
            }
            out
        })
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct FusionRuleJson {
    a: AnyonLabel,
    b: AnyonLabel,
    outcomes: Vec<AnyonLabel>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SymbolJson<const N: usize> {
    #[serde(with = "label_array")]
    labels: [AnyonLabel; N],
    value: [f64; 2],
}

#[derive(Debug, Serialize, Deserialize)]
struct CategoryJson {
    labels: Vec<AnyonLabel>,
    quantum_dimensions: BTreeMap<AnyonLabel, f64>,
    fusion: Vec<FusionRuleJson>,
    f_symbols: Vec<SymbolJson<6>>,
    r_symbols: Vec<SymbolJson<3>>,
}

impl From<&FusionCategory> for CategoryJson {
    fn from(cat: &FusionCategory) -> Self {
        CategoryJson {
            labels: cat.fusion.labels.clone(),
            quantum_dimensions: cat.fusion.qdim.clone(),
            fusion: cat
                .fusion
                .fusion_table
                .iter()
                .map(|(&(a, b), out)| FusionRuleJson { a, b, outcomes: out.iter().copied().collect() })
                .collect(),
            f_symbols: cat.f.entries.iter().map(|(&labels, v)| SymbolJson { labels, value: [v.re, v.im] }).collect(),
            r_symbols: cat.r.entries.iter().map(|(&labels, v)| SymbolJson { labels, value: [v.re, v.im] }).collect(),
        }
    }
}

impl From<CategoryJson> for FusionCategory {
    fn from(doc: CategoryJson) -> Self {
        let fusion = FusionData {
            labels: doc.labels,
            fusion_table: doc.fusion.into_iter().map(|r| ((r.a, r.b), r.outcomes.into_iter().collect())).collect(),
            qdim: doc.quantum_dimensions,
        };
        FusionCategory {
            fusion,
            f: FSymbolTable { entries: doc.f_symbols.into_iter().map(|s| (s.labels, c(s.value[0], s.value[1]))).collect() },
            r: RSymbolTable { entries: doc.r_symbols.into_iter().map(|s| (s.labels, c(s.value[0], s.value[1]))).collect() },
        }
    }
}

mod label_array {
    use super::AnyonLabel;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer, const N: usize>(labels: &[AnyonLabel; N], s: S) -> Result<S::Ok, S::Error> {
        labels.as_slice().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(d: D) -> Result<[AnyonLabel; N], D::Error> {
        let v = Vec::<AnyonLabel>::deserialize(d)?;
        let len = v.len();
        v.try_into().map_err(|_| D::Error::custom(format!("expected {N} labels, got {len}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    #[test]
    fn fusion_rules() {
        let fib = FusionData::fibonacci();
        assert_eq!(fib.fuse(Vacuum, Tau), BTreeSet::from([Tau]));
        assert_eq!(fib.fuse(Tau, Tau), BTreeSet::from([Vacuum, Tau]));
        assert_eq!(fib.fuse(Vacuum, Vacuum), BTreeSet::from([Vacuum]));
    }

    #[test]
    fn golden_ratio_identities() {
        assert!((PHI * PHI - PHI - 1.0).abs() < 1e-15);
        assert!((PHI - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-15);
        // d_tau^2 = d_vacuum + d_tau
        let fib = FusionData::fibonacci();
        assert!((fib.qdim(Tau).powi(2) - fib.qdim(Vacuum) - fib.qdim(Tau)).abs() < 1e-15);
    }

    #[test]
    fn vacuum_strand_f_matrix_is_trivial() {
        let cat = FusionCategory::fibonacci();
        let (rows, cols, m) = cat.f_matrix(Vacuum, Tau, Tau, Tau);
        assert_eq!(rows, vec![Tau]);
        assert_eq!(cols, vec![Tau]);
        assert!((m[(0, 0)] - ONE).norm() < 1e-15);
    }

    #[test]
    fn all_tau_block_is_the_golden_rotation() {
        let cat = FusionCategory::fibonacci();
        let (_, _, m) = cat.f_matrix(Tau, Tau, Tau, Tau);
        let g = 1.0 / PHI;
        let expected = crate::linalg::from_real(2, 2, &[g, g.sqrt(), g.sqrt(), -g]);
        assert!(max_abs_diff(&m, &expected) < 1e-15);
        // real orthogonal
        assert!(m.iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn inadmissible_lookup_is_zero() {
        let cat = FusionCategory::fibonacci();
        assert_eq!(cat.six_j(Tau, Vacuum, Vacuum, Tau, Tau, Tau), ZERO);
        assert_eq!(cat.r_symbol(Vacuum, Tau, Vacuum), ZERO);
        let (rows, cols, m) = cat.f_matrix(Vacuum, Vacuum, Vacuum, Tau);
        assert!(rows.is_empty() && cols.is_empty() && m.is_empty());
    }

    #[test]
    fn r_symbols_have_unit_modulus() {
        let cat = FusionCategory::fibonacci();
        assert!(cat.r.entries.values().all(|z| (z.norm() - 1.0).abs() < 1e-15));
        assert_eq!(cat.r_symbol(Vacuum, Tau, Tau), ONE);
    }

    #[test]
    fn fibonacci_pentagon_and_hexagon() {
        let cat = FusionCategory::fibonacci();
        let p = cat.verify_pentagon();
        assert_eq!(p.tuples_checked, 512);
        assert!(p.max_residual < 1e-12, "pentagon {}", p.max_residual);
        let h = cat.verify_hexagon();
        assert!(h.max_residual < 1e-12, "hexagon {}", h.max_residual);
        assert!(cat.verify_f_unitarity().max_residual < 1e-12);
    }

    #[test]
    fn negated_entry_breaks_pentagon() {
        let mut cat = FusionCategory::fibonacci();
        let key = [Tau; 6];
        let v = cat.f.get(key);
        cat.f.entries.insert(key, -v);
        assert!(cat.verify_pentagon().max_residual > 0.1);
    }

    #[test]
    fn trivial_r_breaks_hexagon() {
        let mut cat = FusionCategory::fibonacci();
        cat.r.entries.insert([Tau, Tau, Tau], ONE);
        assert!(cat.verify_hexagon().max_residual > 0.1);
    }

    #[test]
    fn trivial_category_is_consistent() {
        let cat = FusionCategory::trivial();
        assert_eq!(cat.verify_pentagon().max_residual, 0.0);
        assert_eq!(cat.verify_hexagon().max_residual, 0.0);
        let fib = FusionCategory::fibonacci();
        assert_eq!(fib.hexagon_residual_at(Vacuum, Vacuum, Vacuum, Vacuum, Vacuum, Vacuum), 0.0);
    }

    #[test]
    fn json_round_trip_preserves_tables() {
        let cat = FusionCategory::fibonacci();
        let back = FusionCategory::from_json(&cat.to_json().unwrap()).unwrap();
        assert_eq!(cat, back);
    }
}
