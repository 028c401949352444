//! Small-loop circulation of a form and decay-order fits.

use crate::error::Result;
use crate::numeric::Vec3;
use crate::scalar::Real;

use super::oneform::VectorOneForm;

/// Circulation of `form` around the counterclockwise square of side `h`
/// centred at `p`, each edge sampled once at its midpoint.
///
/// For a closed form the midpoint errors of opposite edges cancel to
/// leading order and the defect is `O(h^4)`; a non-closed form leaves its
/// curl, `O(h^2)`.
pub fn closedness_defect<T: Real>(form: &VectorOneForm<T>, p: [T; 2], h: T) -> Result<Vec3<T>> {
    let r = h / T::lit(2.0);
    let z = T::zero();
    // (midpoint offset, edge direction scaled by the edge length)
    let edges = [([z, -r], [h, z]), ([r, z], [z, h]), ([z, r], [-h, z]), ([-r, z], [z, -h])];
    let mut total = Vec3::zero();
    for (m, d) in edges {
        total += form.value(p[0] + m[0], p[1] + m[1], d.into())?;
    }
    Ok(total)
}

/// Least-squares fit of `defect = c h^order` in log-log space. Returns
/// `(order, c)`.
pub fn fit_decay_order(hs: &[f64], defects: &[f64]) -> (f64, f64) {
    let n = hs.len().min(defects.len()) as f64;
    let xs: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = defects.iter().map(|d| d.max(f64::MIN_POSITIVE).ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let order = sxy / sxx;
    (order, (my - order * mx).exp())
}
