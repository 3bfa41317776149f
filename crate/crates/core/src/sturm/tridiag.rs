//! Eigenvalues of symmetric tridiagonal matrices by Sturm-sequence bisection.

/// Symmetric tridiagonal matrix with diagonal `diag` and off-diagonal `off`
/// (`off.len() == diag.len() - 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(
            off.len() + 1 == diag.len() || (diag.is_empty() && off.is_empty()),
            "off-diagonal length must be one less than the diagonal"
        );
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of `T - xI = LDL^T`).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in self.diag.iter().enumerate() {
            let coupling = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] };
            let prev = if q == 0.0 { f64::EPSILON * (d.abs() + 1.0) } else { q };
            q = d - x - if i == 0 { 0.0 } else { coupling / prev };
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based), bisected to near machine precision.
    pub fn eigenvalue(&self, k: usize) -> Option<f64> {
        if k >= self.len() {
            return None;
        }
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
        lo -= pad;
        hi += pad;
        Some(self.bisect(k, lo, hi))
    }

    /// The `count` smallest eigenvalues in ascending order.
    pub fn lowest(&self, count: usize) -> Vec<f64> {
        let count = count.min(self.len());
        if count == 0 {
            return Vec::new();
        }
        let (g_lo, g_hi) = self.gershgorin();
        let pad = f64::EPSILON * g_lo.abs().max(g_hi.abs()).max(1.0);
        let mut out = Vec::with_capacity(count);
        let mut lo = g_lo - pad;
        for k in 0..count {
            let value = self.bisect(k, lo, g_hi + pad);
            out.push(value);
            // eigenvalues are ascending, so later searches can start here
            lo = lo.max(value - 4.0 * f64::EPSILON * value.abs().max(1.0));
        }
        out
    }

    fn bisect(&self, k: usize, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..256 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn discrete_laplacian_spectrum() {
        // tridiag(-1, 2, -1) of size n has eigenvalues 2 - 2 cos(jπ/(n+1))
        let n = 50;
        let t = SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]);
        let eig = t.lowest(n);
        for (j, &v) in eig.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((j + 1) as f64 * PI / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13, "{j}: {v} vs {exact}");
        }
        assert!((t.eigenvalue(7).unwrap() - eig[7]).abs() < 1e-14);
        assert!(t.eigenvalue(n).is_none());
    }

    #[test]
    fn counts_are_monotone() {
        let t = SymTridiagonal::new(vec![1.0, 5.0, -2.0, 0.5], vec![0.3, 0.0, 2.0]);
        let mut last = 0;
        for i in -100..100 {
            let c = t.count_below(i as f64 * 0.1);
            assert!(c >= last);
            last = c;
        }
        assert_eq!(last, 4);
    }

    #[test]
    fn one_by_one() {
        let t = SymTridiagonal::new(vec![3.5], vec![]);
        let eig = t.lowest(3);
        assert_eq!(eig.len(), 1);
        assert!((eig[0] - 3.5).abs() <= 4.0 * f64::EPSILON * 3.5);
    }
}
