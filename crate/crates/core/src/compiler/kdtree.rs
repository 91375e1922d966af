//! Static 4-d KD-tree for nearest-neighbour queries on unit quaternions.

pub(crate) struct KdTree {
    // Implicit balanced layout: the median of every slice is its node.
    points: Vec<([f64; 4], u32)>,
}

fn dist2(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn build(points: &mut [([f64; 4], u32)], depth: usize) {
    if points.len() <= 1 {
        return;
    }
    let axis = depth % 4;
    let mid = points.len() / 2;
    points.select_nth_unstable_by(mid, |a, b| a.0[axis].total_cmp(&b.0[axis]).then(a.1.cmp(&b.1)));
    let (left, right) = points.split_at_mut(mid);
    build(left, depth + 1);
    build(&mut right[1..], depth + 1);
}

impl KdTree {
    pub fn new(mut points: Vec<([f64; 4], u32)>) -> Self {
        build(&mut points, 0);
        KdTree { points }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Nearest point strictly closer than `bound2` (squared distance), as
    /// `(squared distance, payload)`. Ties go to the smaller payload.
    pub fn nearest(&self, query: &[f64; 4], bound2: f64) -> Option<(f64, u32)> {
        let mut best = None;
        let mut best2 = bound2;
        search(&self.points, 0, query, &mut best2, &mut best);
        best.map(|p| (best2, p))
    }
}

fn search(points: &[([f64; 4], u32)], depth: usize, query: &[f64; 4], best2: &mut f64, best: &mut Option<u32>) {
    if points.is_empty() {
        return;
    }
    let mid = points.len() / 2;
    let (coords, payload) = &points[mid];
    let d2 = dist2(coords, query);
    if d2 < *best2 || (d2 == *best2 && best.is_some_and(|b| *payload < b)) {
        *best2 = d2;
        *best = Some(*payload);
    }
    let axis = depth % 4;
    let delta = query[axis] - coords[axis];
    let (near, far) = if delta < 0.0 { (&points[..mid], &points[mid + 1..]) } else { (&points[mid + 1..], &points[..mid]) };
    search(near, depth + 1, query, best2, best);
    if delta * delta <= *best2 {
        search(far, depth + 1, query, best2, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<([f64; 4], u32)> =
            (0..500).map(|i| ([rng.random(), rng.random(), rng.random(), rng.random()], i)).collect();
        let tree = KdTree::new(pts.clone());
        assert_eq!(tree.len(), 500);
        for _ in 0..100 {
            let q = [rng.random(), rng.random(), rng.random(), rng.random()];
            let brute = pts.iter().map(|(p, i)| (dist2(p, &q), *i)).min_by(|a, b| a.0.total_cmp(&b.0)).unwrap();
            let (d2, idx) = tree.nearest(&q, f64::INFINITY).unwrap();
            assert_eq!(idx, brute.1);
            assert!((d2 - brute.0).abs() < 1e-15);
        }
        assert!(tree.nearest(&[5.0; 4], 1e-6).is_none());
    }
}
