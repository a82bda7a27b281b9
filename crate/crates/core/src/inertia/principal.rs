use nalgebra::Matrix3;

use crate::error::{invalid, Result};

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a symmetric 3x3 matrix by cyclic Jacobi rotations.
///
/// Returns the eigenvalues in ascending order and the matching unit
/// eigenvectors as the columns of a proper rotation (determinant +1). The
/// first two columns are signed so that their largest-magnitude entry is
/// positive; the third is their cross product.
pub fn principal_axes(tensor: &Matrix3<f64>) -> Result<([f64; 3], Matrix3<f64>)> {
    if tensor.iter().any(|x| !x.is_finite()) {
        return Err(invalid("tensor has non-finite entries"));
    }
    let norm = tensor.norm();
    let asym = (tensor - tensor.transpose()).amax();
    if asym > 1e-9 * norm {
        return Err(invalid(format!(
            "tensor is not symmetric (max |T_ij - T_ji| = {asym:e}, norm {norm:e})"
        )));
    }
    let mut a = (tensor + tensor.transpose()) * 0.5;
    let mut v = Matrix3::<f64>::identity();

    for _ in 0..MAX_SWEEPS {
        let off = (2.0 * (a[(0, 1)].powi(2) + a[(0, 2)].powi(2) + a[(1, 2)].powi(2))).sqrt();
        if off <= 1e-15 * norm || off == 0.0 {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            rotate(&mut a, &mut v, p, q);
        }
    }

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let moments = order.map(|i| a[(i, i)]);
    let mut axes = Matrix3::from_columns(&order.map(|i| v.column(i).into_owned()));

    for c in 0..2 {
        let col = axes.column(c);
        let imax = col.iamax();
        if col[imax] < 0.0 {
            axes.column_mut(c).neg_mut();
        }
    }
    let third = axes.column(0).cross(&axes.column(1));
    axes.set_column(2, &third);
    Ok((moments, axes))
}

fn rotate(a: &mut Matrix3<f64>, v: &mut Matrix3<f64>, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let app = a[(p, p)];
    let aqq = a[(q, q)];
    a[(p, p)] = app - t * apq;
    a[(q, q)] = aqq + t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    let r = 3 - p - q;
    let arp = a[(r, p)];
    let arq = a[(r, q)];
    a[(r, p)] = c * arp - s * arq;
    a[(p, r)] = a[(r, p)];
    a[(r, q)] = s * arp + c * arq;
    a[(q, r)] = a[(r, q)];

    for k in 0..3 {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}
