//! Exact integer distance structure of superimposed Gray-coded constellations.
//!
//! All distances between constellation points are integer multiples of the
//! minimum gap `2 d`, so the error events feeding the union bound can be
//! described by small integer matrices and assembled into full composite
//! distance vectors with Kronecker products of ones vectors. For one target
//! user the tested symbols live in the negative half line (PAM) or the
//! lower-left quadrant (QAM), the erroneous symbols of that user live in the
//! opposite half plane, and every combination of the other users' symbols
//! contributes an interference column.
//!
//! Entries are Gaussian integers: the real part is the in-phase index gap and
//! the imaginary part the quadrature gap (always zero for PAM).

use crate::constellation::{build_pam, build_qam, ModulationKind};
use crate::{Error, Result};

/// Nonnegative Gaussian integer (index gaps along the two axes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianInt {
    pub re: u32,
    pub im: u32,
}

impl GaussianInt {
    pub fn new(re: u32, im: u32) -> Self {
        GaussianInt { re, im }
    }

    /// Squared magnitude `re^2 + im^2`.
    pub fn norm_sq(self) -> u64 {
        u64::from(self.re) * u64::from(self.re) + u64::from(self.im) * u64::from(self.im)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }
}

impl std::fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im == 0 {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}+{}j", self.re, self.im)
        }
    }
}

/// Dense row-major matrix of distance entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Copy> Matrix<T> {
    fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.cols + col]
    }

    /// One column as a vector.
    pub fn column(&self, col: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }
}

/// Distance matrices of one PAM user: cross-half-plane (`half`) and all-symbol (`all`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrixPam {
    pub order: usize,
    /// (I/2 x I/2): rows are erroneous right-half symbols, columns tested left-half symbols.
    pub half: Matrix<u32>,
    /// (I x I/2): rows run over all symbols.
    pub all: Matrix<u32>,
}

/// Distance matrices of one square QAM user, assembled from the PAM axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrixQam {
    pub order: usize,
    /// (M/2 x M/4): right half plane against the tested quadrant.
    pub half: Matrix<GaussianInt>,
    /// (M x M/4): all symbols against the tested quadrant.
    pub all: Matrix<GaussianInt>,
}

fn check_pam_order(order: usize) -> Result<()> {
    if order < 2 || order & (order - 1) != 0 {
        return Err(Error::config(format!(
            "PAM order {order} invalid: must be a power of two and at least 2"
        )));
    }
    Ok(())
}

fn check_axis_order(axis_order: usize) -> Result<()> {
    check_pam_order(axis_order).map_err(|_| {
        Error::config(format!(
            "QAM axis order {axis_order} invalid: must be a power of two and at least 2"
        ))
    })
}

/// Index gaps from tested left-half symbols to erroneous right-half symbols:
/// entry (j, i) = |i - (j + I/2)| with 1-based i, j in 1..I/2.
pub fn pam_half_distances(order: usize) -> Result<Matrix<u32>> {
    check_pam_order(order)?;
    let half = order / 2;
    Ok(Matrix::from_fn(half, half, |j, i| {
        let tested = (i + 1) as i64;
        let erroneous = (j + 1 + half) as i64;
        (tested - erroneous).unsigned_abs() as u32
    }))
}

/// Index gaps from tested left-half symbols to every symbol:
/// entry (j, i) = |i - j| with i in 1..I/2, j in 1..I.
pub fn pam_all_distances(order: usize) -> Result<Matrix<u32>> {
    check_pam_order(order)?;
    let half = order / 2;
    Ok(Matrix::from_fn(order, half, |j, i| {
        ((i + 1) as i64 - (j + 1) as i64).unsigned_abs() as u32
    }))
}

/// Builds both PAM matrices for one user.
pub fn pam_distance_matrices(order: usize) -> Result<DistanceMatrixPam> {
    Ok(DistanceMatrixPam {
        order,
        half: pam_half_distances(order)?,
        all: pam_all_distances(order)?,
    })
}

/// Kronecker combination placing the in-phase gap in the real part and the
/// quadrature gap in the imaginary part.
///
/// `real ⊗ ones(inner_rows, inner_cols) + j (ones(outer_rows, outer_cols) ⊗ imag)`
fn kron_axes(
    real: &Matrix<u32>,
    inner: (usize, usize),
    outer: (usize, usize),
    imag: &Matrix<u32>,
) -> Matrix<GaussianInt> {
    debug_assert_eq!(real.rows * inner.0, outer.0 * imag.rows);
    debug_assert_eq!(real.cols * inner.1, outer.1 * imag.cols);
    Matrix::from_fn(real.rows * inner.0, real.cols * inner.1, |r, c| {
        let re = real.get(r / inner.0, c / inner.1);
        let im = imag.get(r % imag.rows, c % imag.cols);
        GaussianInt::new(re, im)
    })
}

/// Right-half-plane distance matrix of a square QAM constellation with
/// `axis_order^2` points, shape (M/2 x M/4).
pub fn qam_half_distances(axis_order: usize) -> Result<Matrix<GaussianInt>> {
    check_axis_order(axis_order)?;
    let e_pam = pam_half_distances(axis_order)?;
    let d_pam = pam_all_distances(axis_order)?;
    // E_pam ⊗ 1_(I, I/2) + j (1_(I/2, I/2) ⊗ d_pam)
    Ok(kron_axes(
        &e_pam,
        (axis_order, axis_order / 2),
        (axis_order / 2, axis_order / 2),
        &d_pam,
    ))
}

/// All-symbol distance matrix of a square QAM constellation, shape (M x M/4).
pub fn qam_all_distances(axis_order: usize) -> Result<Matrix<GaussianInt>> {
    check_axis_order(axis_order)?;
    let d_pam = pam_all_distances(axis_order)?;
    // d_pam ⊗ 1_(I, I/2) + j (1_(I, I/2) ⊗ d_pam)
    Ok(kron_axes(
        &d_pam,
        (axis_order, axis_order / 2),
        (axis_order, axis_order / 2),
        &d_pam,
    ))
}

/// Builds both QAM matrices for one user with `order` points.
pub fn qam_distance_matrices(order: usize) -> Result<DistanceMatrixQam> {
    if order < 4 || order & (order - 1) != 0 || !order.trailing_zeros().is_multiple_of(2) {
        return Err(Error::config(format!(
            "QAM order {order} invalid: only square constellations are supported"
        )));
    }
    let axis_order = 1usize << (order.trailing_zeros() / 2);
    Ok(DistanceMatrixQam {
        order,
        half: qam_half_distances(axis_order)?,
        all: qam_all_distances(axis_order)?,
    })
}

/// Number of tested symbols per user: I/2 for PAM, M/4 for QAM.
pub fn tested_range(kind: ModulationKind, order: usize) -> usize {
    match kind {
        ModulationKind::Pam => order / 2,
        ModulationKind::Qam => order / 4,
    }
}

/// Per-user distance column for a tested index, ready for Kronecker assembly.
///
/// For the target user this is a column of the cross-half matrix (length
/// order/2 for PAM and QAM alike); for any other user a column of the
/// all-symbol matrix (length order).
pub fn distance_column(
    kind: ModulationKind,
    order: usize,
    is_target: bool,
    tested_index: usize,
) -> Result<Vec<GaussianInt>> {
    let range = tested_range(kind, order);
    if tested_index >= range {
        return Err(Error::usage(format!(
            "tested index {tested_index} out of range {range} for order {order}"
        )));
    }
    match kind {
        ModulationKind::Pam => {
            let m = if is_target {
                pam_half_distances(order)?
            } else {
                pam_all_distances(order)?
            };
            Ok(m
                .column(tested_index)
                .into_iter()
                .map(|d| GaussianInt::new(d, 0))
                .collect())
        }
        ModulationKind::Qam => {
            let axis = 1usize << (order.trailing_zeros() / 2);
            let m = if is_target {
                qam_half_distances(axis)?
            } else {
                qam_all_distances(axis)?
            };
            Ok(m.column(tested_index))
        }
    }
}

/// `ones(before) ⊗ column ⊗ ones(after)` flattened to a vector.
fn kron_ones(before: usize, column: &[GaussianInt], after: usize) -> Vec<GaussianInt> {
    let mut out = Vec::with_capacity(before * column.len() * after);
    for _ in 0..before {
        for &v in column {
            for _ in 0..after {
                out.push(v);
            }
        }
    }
    out
}

fn validate_tuple(kind: ModulationKind, orders: &[usize], target: usize, tuple: &[usize]) -> Result<()> {
    if orders.is_empty() {
        return Err(Error::usage("at least one user is required"));
    }
    if target >= orders.len() {
        return Err(Error::usage(format!(
            "target user {target} out of range for {} users",
            orders.len()
        )));
    }
    if tuple.len() != orders.len() {
        return Err(Error::usage(format!(
            "tuple length {} does not match {} users",
            tuple.len(),
            orders.len()
        )));
    }
    for (k, (&i, &order)) in tuple.iter().zip(orders).enumerate() {
        let range = tested_range(kind, order);
        if i >= range {
            return Err(Error::usage(format!(
                "user {k}: tested index {i} out of range {range}"
            )));
        }
    }
    Ok(())
}

/// Composite distance vectors for one tested tuple, by Kronecker assembly.
///
/// Returns one vector per user, each of length `(1/2) prod(orders)`, whose
/// m-th entries give the per-user index gaps between the tested composite
/// symbol and the m-th erroneous composite symbol (target user decided in the
/// wrong half plane). Zero-based `target` and `tuple` indices.
pub fn composite_distance_vectors(
    target: usize,
    tuple: &[usize],
    orders: &[usize],
    kind: ModulationKind,
) -> Result<Vec<Vec<GaussianInt>>> {
    validate_tuple(kind, orders, target, tuple)?;
    let n_users = orders.len();
    let product = |range: std::ops::Range<usize>| -> usize {
        range.map(|i| orders[i]).product()
    };
    let mut vectors = Vec::with_capacity(n_users);
    for k in 0..n_users {
        let column = distance_column(kind, orders[k], k == target, tuple[k])?;
        let vector = if k == target {
            kron_ones(product(0..k), &column, product(k + 1..n_users))
        } else if k < target {
            kron_ones(product(0..k), &column, product(k + 1..n_users) / 2)
        } else {
            kron_ones(product(0..k) / 2, &column, product(k + 1..n_users))
        };
        vectors.push(vector);
    }
    Ok(vectors)
}

/// Maximum tuple-space size accepted by [`brute_force_distances`].
pub const BRUTE_FORCE_LIMIT: usize = 1 << 20;

/// Independent oracle for [`composite_distance_vectors`].
///
/// Enumerates every erroneous composite hypothesis directly and measures the
/// per-user index gaps from actual constellation coordinates (in units of
/// `2 d_k`), without touching the distance-matrix construction. Intended for
/// verification; refuses tuple spaces above [`BRUTE_FORCE_LIMIT`].
pub fn brute_force_distances(
    target: usize,
    tuple: &[usize],
    orders: &[usize],
    kind: ModulationKind,
) -> Result<Vec<Vec<GaussianInt>>> {
    validate_tuple(kind, orders, target, tuple)?;
    let space: usize = orders.iter().product();
    if space > BRUTE_FORCE_LIMIT {
        return Err(Error::resource(format!(
            "brute-force enumeration over {space} composites exceeds the {BRUTE_FORCE_LIMIT} guard"
        )));
    }
    let n_users = orders.len();

    // integer axis coordinates of every constellation point, from geometry
    let coords: Vec<Vec<(i64, i64)>> = orders
        .iter()
        .map(|&order| -> Result<Vec<(i64, i64)>> {
            match kind {
                ModulationKind::Pam => {
                    let c = build_pam(order, 1.0)?;
                    Ok(c.points
                        .iter()
                        .map(|&p| ((p / c.scale).round() as i64, 0))
                        .collect())
                }
                ModulationKind::Qam => {
                    let c = build_qam(order, 1.0)?;
                    Ok(c.points
                        .iter()
                        .map(|p| {
                            (
                                (p.re / c.scale).round() as i64,
                                (p.im / c.scale).round() as i64,
                            )
                        })
                        .collect())
                }
            }
        })
        .collect::<Result<_>>()?;

    // tested symbol of each user: index into the constellation point list
    let tested_point = |k: usize| -> usize {
        match kind {
            ModulationKind::Pam => tuple[k],
            ModulationKind::Qam => {
                let axis = 1usize << (orders[k].trailing_zeros() / 2);
                let i_in = tuple[k] / (axis / 2);
                let i_quad = tuple[k] % (axis / 2);
                i_in * axis + i_quad
            }
        }
    };

    // decided symbols: target user restricted to the positive half plane,
    // every other user unrestricted
    let decided_sets: Vec<Vec<usize>> = (0..n_users)
        .map(|k| {
            let order = orders[k];
            if k != target {
                return (0..order).collect();
            }
            match kind {
                ModulationKind::Pam => (order / 2..order).collect(),
                ModulationKind::Qam => {
                    let axis = 1usize << (order.trailing_zeros() / 2);
                    (axis / 2..axis)
                        .flat_map(|i_in| (0..axis).map(move |i_quad| i_in * axis + i_quad))
                        .collect()
                }
            }
        })
        .collect();

    let total: usize = decided_sets.iter().map(Vec::len).product();
    let mut vectors = vec![Vec::with_capacity(total); n_users];
    let mut decided = vec![0usize; n_users];
    for _ in 0..total {
        for k in 0..n_users {
            let (a_re, a_im) = coords[k][tested_point(k)];
            let (b_re, b_im) = coords[k][decided_sets[k][decided[k]]];
            // coordinates are odd integers in units of d, so gaps are even
            let gap_re = (b_re - a_re).unsigned_abs() / 2;
            let gap_im = (b_im - a_im).unsigned_abs() / 2;
            vectors[k].push(GaussianInt::new(gap_re as u32, gap_im as u32));
        }
        for k in (0..n_users).rev() {
            decided[k] += 1;
            if decided[k] < decided_sets[k].len() {
                break;
            }
            decided[k] = 0;
        }
    }
    Ok(vectors)
}

/// The multiset of per-user gap tuples described by parallel distance vectors.
///
/// Two assemblies are equivalent exactly when these sorted tuple lists match.
pub fn to_tuple_multiset(vectors: &[Vec<GaussianInt>]) -> Vec<Vec<GaussianInt>> {
    let len = vectors.first().map_or(0, Vec::len);
    let mut tuples: Vec<Vec<GaussianInt>> = (0..len)
        .map(|m| vectors.iter().map(|v| v[m]).collect())
        .collect();
    tuples.sort();
    tuples
}
