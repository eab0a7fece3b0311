//! Twisting systems of `M_2(E)` and `E x E`, the twisted algebras they define,
//! semi-trivial extensions and Zhang twists.
//!
//! Map tables are stored as [`MatrixHom`] values but are not assumed to be
//! multiplicative entry by entry. Indices `j`, `s`, `t`, ... are 0-based here.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{check_iso, t_invert_hom, verify_algebra, Coordinates, Degree, GradedAlgebra, GradedLinMap, MatrixHom};
use crate::error::{Error, Result};
use crate::exactlin::matrix::{axpy, is_zero_vec, unit_vec, zero_vec};
use crate::exactlin::{Matrix, Scalar, Vector};

fn flat(m: &Matrix) -> Vector {
    m.entries().to_vec()
}

fn pair_matrix(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> Matrix {
    let mut m = Matrix::zero(2, 2);
    m[(0, 0)] = a.clone();
    m[(0, 1)] = b.clone();
    m[(1, 0)] = c.clone();
    m[(1, 1)] = d.clone();
    m
}

/// An invertible `Z2`-graded basis of `M_2(K)`: `elements[i][j]` has degree `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasisM2 {
    pub elements: [[Matrix; 2]; 2],
}

impl GradedBasisM2 {
    /// Degree 0 must be diagonal, degree 1 anti-diagonal, every member invertible,
    /// and each pair a basis of its component.
    pub fn new(elements: [[Matrix; 2]; 2]) -> Result<Self> {
        for (i, pair) in elements.iter().enumerate() {
            for m in pair {
                if m.rows != 2 || m.cols != 2 || m.inverse().is_none() {
                    return Err(Error::SingularBasis);
                }
                let off = if i == 0 { [(0, 1), (1, 0)] } else { [(0, 0), (1, 1)] };
                if off.iter().any(|&rc| !m[rc].is_zero()) {
                    return Err(Error::SingularBasis);
                }
            }
            if Matrix::from_rows(&[flat(&pair[0]), flat(&pair[1])], 4)?.rank() != 2 {
                return Err(Error::SingularBasis);
            }
        }
        Ok(GradedBasisM2 { elements })
    }

    /// `I`, `diag(-i, i)`, `antidiag(1, 1)` and `[[0, i], [-i, 0]]`.
    pub fn canonical() -> Self {
        let (o, z, i) = (Scalar::one(), Scalar::zero(), Scalar::i());
        GradedBasisM2::new([
            [pair_matrix(&o, &z, &z, &o), pair_matrix(&-&i, &z, &z, &i)],
            [pair_matrix(&z, &o, &o, &z), pair_matrix(&z, &i, &-&i, &z)],
        ])
        .expect("canonical basis is valid")
    }

    /// `I`, `diag(1, -1)`, `antidiag(1, 1)` and `antidiag(1, -1)`.
    pub fn real() -> Self {
        let (o, z, m) = (Scalar::one(), Scalar::zero(), Scalar::int(-1));
        GradedBasisM2::new([
            [pair_matrix(&o, &z, &z, &o), pair_matrix(&o, &z, &z, &m)],
            [pair_matrix(&z, &o, &o, &z), pair_matrix(&z, &o, &m, &z)],
        ])
        .expect("real basis is valid")
    }

    pub fn get(&self, i: usize, j: usize) -> &Matrix {
        &self.elements[i][j]
    }

    /// Coordinates of a homogeneous matrix of degree `i` in the pair `elements[i]`.
    pub fn coordinates(&self, i: usize, m: &Matrix) -> Option<[Scalar; 2]> {
        let c = Coordinates::new(&[flat(&self.elements[i][0]), flat(&self.elements[i][1])], 4).ok()?.of(&flat(m))?;
        Some([c[0].clone(), c[1].clone()])
    }

    /// `U` with `(I_1, I_2) = (J_1, J_2) U` in degree `i`, where `self` is `I`.
    pub fn change_matrix(&self, target: &GradedBasisM2, i: usize) -> Result<Matrix> {
        let mut u = Matrix::zero(2, 2);
        for j in 0..2 {
            let c = target.coordinates(i, &self.elements[i][j]).ok_or(Error::SingularBasis)?;
            u[(0, j)] = c[0].clone();
            u[(1, j)] = c[1].clone();
        }
        Ok(u)
    }
}

/// `gamma` with `gamma_0 I^(0)_0 + gamma_1 I^(0)_1 = I_2`, and the product tensor
/// `I^(i)_j I^(i')_j' = sum_s I^(i+i')_s l[i][i'][s][j][j']`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTensors {
    pub gamma: [Scalar; 2],
    l: Vec<Scalar>,
}

fn l_index(i: usize, i2: usize, s: usize, j: usize, j2: usize) -> usize {
    (((i * 2 + i2) * 2 + s) * 2 + j) * 2 + j2
}

impl StructureTensors {
    pub fn l(&self, i: usize, i2: usize, s: usize, j: usize, j2: usize) -> &Scalar {
        &self.l[l_index(i, i2, s, j, j2)]
    }

    /// `L^(ii')_j` with entry `(s, j')` equal to `l^(ii')_{s j j'}`.
    pub fn l_matrix(&self, i: usize, i2: usize, j: usize) -> Matrix {
        pair_matrix(self.l(i, i2, 0, j, 0), self.l(i, i2, 0, j, 1), self.l(i, i2, 1, j, 0), self.l(i, i2, 1, j, 1))
    }
}

/// Solves for `gamma` and the `l`-tensor, then checks that every `L^(ii')_j` is
/// invertible and that the associativity and unit identities of the tensor hold.
pub fn structure_tensors(basis: &GradedBasisM2) -> Result<StructureTensors> {
    let g = basis.coordinates(0, &Matrix::identity(2)).ok_or(Error::SingularBasis)?;
    let mut l = alloc::vec![Scalar::zero(); 32];
    for i in 0..2 {
        for i2 in 0..2 {
            for j in 0..2 {
                for j2 in 0..2 {
                    let p = basis.get(i, j).mul(basis.get(i2, j2));
                    let c = basis.coordinates(i ^ i2, &p).ok_or(Error::SingularBasis)?;
                    for (s, v) in c.into_iter().enumerate() {
                        l[l_index(i, i2, s, j, j2)] = v;
                    }
                }
            }
        }
    }
    let t = StructureTensors { gamma: g, l };
    for i in 0..2 {
        for i2 in 0..2 {
            for j in 0..2 {
                if t.l_matrix(i, i2, j).inverse().is_none() {
                    return Err(Error::SingularBasis);
                }
            }
        }
    }
    if let Some(f) = tensor_identity_failure(&t) {
        return Err(Error::CheckFailed(f));
    }
    Ok(t)
}

/// First failure of the associativity identity for `l` or of the two `gamma` identities.
pub fn tensor_identity_failure(t: &StructureTensors) -> Option<String> {
    for i in 0..2 {
        for i2 in 0..2 {
            for i3 in 0..2 {
                for tt in 0..2 {
                    for j in 0..2 {
                        for j2 in 0..2 {
                            for j3 in 0..2 {
                                let mut lhs = Scalar::zero();
                                let mut rhs = Scalar::zero();
                                for s in 0..2 {
                                    lhs += &(t.l(i, i2 ^ i3, tt, j, s) * t.l(i2, i3, s, j2, j3));
                                    rhs += &(t.l(i ^ i2, i3, tt, s, j3) * t.l(i, i2, s, j, j2));
                                }
                                if lhs != rhs {
                                    return Some(format!("associativity at i={i} i'={i2} i''={i3} t={tt} j={j} j'={j2} j''={j3}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    for i in 0..2 {
        for s in 0..2 {
            for j in 0..2 {
                let delta = if s == j { Scalar::one() } else { Scalar::zero() };
                let mut right = Scalar::zero();
                let mut left = Scalar::zero();
                for u in 0..2 {
                    right += &(t.l(i, 0, s, j, u) * &t.gamma[u]);
                    left += &(t.l(0, i, s, u, j) * &t.gamma[u]);
                }
                if right != delta {
                    return Some(format!("right unit identity at i={i} s={s} j={j}"));
                }
                if left != delta {
                    return Some(format!("left unit identity at i={i} s={s} t={j}"));
                }
            }
        }
    }
    None
}

/// A graded basis of `M_2(K)` with two map tables `theta[0]`, `theta[1]` on `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingSystemM2 {
    pub basis: GradedBasisM2,
    pub tensors: StructureTensors,
    pub theta: [MatrixHom; 2],
}

impl TwistingSystemM2 {
    pub fn new(basis: GradedBasisM2, theta: [MatrixHom; 2]) -> Result<Self> {
        if theta[0].dim() != theta[1].dim() {
            return Err(Error::DimensionMismatch { expected: theta[0].dim(), found: theta[1].dim() });
        }
        let tensors = structure_tensors(&basis)?;
        Ok(TwistingSystemM2 { basis, tensors, theta })
    }

    /// Both tables equal to the diagonal identity.
    pub fn trivial(basis: GradedBasisM2, n: usize) -> Result<Self> {
        TwistingSystemM2::new(basis, [MatrixHom::identity(n), MatrixHom::identity(n)])
    }

    pub fn dim(&self) -> usize {
        self.theta[0].dim()
    }

    /// The t-inverses of both tables, when they exist.
    pub fn t_inverses(&self) -> Result<[MatrixHom; 2]> {
        Ok([t_invert_hom(&self.theta[0])?, t_invert_hom(&self.theta[1])?])
    }
}

/// Whether every entry of every table maps each homogeneous basis vector into its own degree.
fn tables_graded(e: &GradedAlgebra, tables: &[&MatrixHom]) -> bool {
    tables.iter().all(|t| {
        t.entries.iter().flatten().all(|m| (0..e.dim()).all(|c| (0..e.dim()).all(|r| m[(r, c)].is_zero() || e.degree(r) == e.degree(c))))
    })
}

/// Images `cols[a][b][x] = table_ab(e_x)`.
fn table_columns(t: &MatrixHom) -> [[Vec<Vector>; 2]; 2] {
    core::array::from_fn(|a| core::array::from_fn(|b| (0..t.dim()).map(|x| t.entries[a][b].column(x)).collect()))
}

fn apply_entry(t: &MatrixHom, a: usize, b: usize, v: &[Scalar]) -> Vector {
    t.entries[a][b].apply(v)
}

/// Outcome of checking a twisting system of `M_2(E)`; `None` fields passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistReport {
    pub graded: bool,
    pub t_invertible: bool,
    pub compatibility: Option<String>,
    pub unit_invertible: bool,
}

impl TwistReport {
    pub fn passed(&self) -> bool {
        self.graded && self.t_invertible && self.compatibility.is_none() && self.unit_invertible
    }

    pub fn lines(&self) -> Vec<(String, bool)> {
        alloc::vec![
            (String::from("tables preserve degree"), self.graded),
            (String::from("tables t-invertible"), self.t_invertible),
            (String::from("compatibility identity"), self.compatibility.is_none()),
            (String::from("theta1(1) invertible scalar matrix"), self.unit_invertible),
        ]
    }

    pub fn first_failure(&self) -> Option<String> {
        if let Some(c) = &self.compatibility {
            return Some(format!("compatibility identity fails at {c}"));
        }
        self.lines().into_iter().find(|(_, ok)| !ok).map(|(name, _)| format!("{name} fails"))
    }
}

fn is_invertible_scalar_table(e: &GradedAlgebra, t: &MatrixHom) -> bool {
    t.at_unit(e).and_then(|m| m.inverse()).is_some()
}

/// First failing tuple of the compatibility identity
/// `sum_{s,u} l^(i'i'')_{psu} th^(i'')_{uj''}(th^(i')_{sj'}(x) x')
///  = sum_{t,u} l^(i'i'')_{tj'u} th^(i'+i'')_{pt}(x) th^(i'')_{uj''}(x')`.
pub fn compatibility_failure(e: &GradedAlgebra, t: &TwistingSystemM2) -> Option<String> {
    let n = e.dim();
    let cols = [table_columns(&t.theta[0]), table_columns(&t.theta[1])];
    let l = &t.tensors;
    for i1 in 0..2 {
        for i2 in 0..2 {
            for p in 0..2 {
                for j1 in 0..2 {
                    for j2 in 0..2 {
                        for x in 0..n {
                            for y in 0..n {
                                let mut lhs = zero_vec(n);
                                for s in 0..2 {
                                    let inner = e.mul_by_basis(&cols[i1][s][j1][x], y);
                                    for u in 0..2 {
                                        let c = l.l(i1, i2, p, s, u);
                                        if !c.is_zero() {
                                            axpy(&mut lhs, c, &apply_entry(&t.theta[i2], u, j2, &inner));
                                        }
                                    }
                                }
                                let mut rhs = zero_vec(n);
                                for tt in 0..2 {
                                    for u in 0..2 {
                                        let c = l.l(i1, i2, tt, j1, u);
                                        if !c.is_zero() {
                                            axpy(&mut rhs, c, &e.mul(&cols[i1 ^ i2][p][tt][x], &cols[i2][u][j2][y]));
                                        }
                                    }
                                }
                                if lhs != rhs {
                                    return Some(format!("i'={i1} i''={i2} p={} j'={} j''={} x={} x'={}", p + 1, j1 + 1, j2 + 1, e.labels()[x], e.labels()[y]));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Degree preservation, t-invertibility, the compatibility identity and invertibility of `theta1(1)`.
pub fn verify_twisting_m2(e: &GradedAlgebra, t: &TwistingSystemM2) -> TwistReport {
    let dims_ok = t.dim() == e.dim();
    TwistReport {
        graded: dims_ok && tables_graded(e, &[&t.theta[0], &t.theta[1]]),
        t_invertible: dims_ok && t.t_inverses().is_ok(),
        compatibility: if dims_ok { compatibility_failure(e, t) } else { Some(String::from("table size differs from dim E")) },
        unit_invertible: dims_ok && is_invertible_scalar_table(e, &t.theta[1]),
    }
}

fn m2_index(n: usize, i: usize, j: usize, b: usize) -> usize {
    (i * 2 + j) * n + b
}

fn m2_labels(e: &GradedAlgebra) -> Vec<String> {
    let mut labels = Vec::with_capacity(4 * e.dim());
    for i in 0..2 {
        for j in 0..2 {
            for b in e.labels() {
                labels.push(format!("I{i}{}[{b}]", j + 1));
            }
        }
    }
    labels
}

/// Bit 0 is the matrix degree `i`, bit 1 the degree of the `E` factor.
fn m2_degrees(e: &GradedAlgebra) -> Vec<Degree> {
    let mut d = Vec::with_capacity(4 * e.dim());
    for i in 0..2u8 {
        for _ in 0..2 {
            for b in 0..e.dim() {
                d.push(i | ((e.degree(b) & 1) << 1));
            }
        }
    }
    d
}

/// The unit `sum_{j,s} gamma_s phi^(0)_{sj}(1) I^(0)_j`, in the basis `I^(i)_j (x) e_b`.
pub fn twisted_unit(e: &GradedAlgebra, t: &TwistingSystemM2) -> Result<Vector> {
    let n = e.dim();
    let phi = t.t_inverses()?;
    let mut u = zero_vec(4 * n);
    for j in 0..2 {
        for s in 0..2 {
            let v = apply_entry(&phi[0], s, j, e.unit());
            for (b, c) in v.iter().enumerate() {
                u[m2_index(n, 0, j, b)] += &(&t.tensors.gamma[s] * c);
            }
        }
    }
    Ok(u)
}

/// `^Theta M_2(E)` on the basis `I^(i)_j (x) e_b`, graded by `Z2 x Z2`
/// with bit 0 the matrix degree and bit 1 the degree in `E`.
pub fn build_twisted_m2(e: &GradedAlgebra, t: &TwistingSystemM2) -> Result<GradedAlgebra> {
    let rep = verify_twisting_m2(e, t);
    if !rep.passed() {
        return Err(Error::NotTwistingSystem(rep.first_failure().unwrap_or_default()));
    }
    let n = e.dim();
    let cols = [table_columns(&t.theta[0]), table_columns(&t.theta[1])];
    let unit = twisted_unit(e, t)?;
    GradedAlgebra::from_fn(
        m2_labels(e),
        |a, b| {
            let (i, j, x) = (a / (2 * n), (a / n) % 2, a % n);
            let (i2, j2, y) = (b / (2 * n), (b / n) % 2, b % n);
            let mut out = zero_vec(4 * n);
            for s in 0..2 {
                let w = e.mul_by_basis(&cols[i2][s][j2][x], y);
                if is_zero_vec(&w) {
                    continue;
                }
                for tt in 0..2 {
                    let c = t.tensors.l(i, i2, tt, j, s);
                    if c.is_zero() {
                        continue;
                    }
                    for (k, v) in w.iter().enumerate() {
                        if !v.is_zero() {
                            out[m2_index(n, i ^ i2, tt, k)] += &(c * v);
                        }
                    }
                }
            }
            out
        },
        unit,
        2,
        m2_degrees(e),
    )
}

/// Ordinary `M_2(E)` computed by multiplying matrices with entries in `E`,
/// written in the basis `I^(i)_j (x) e_b`.
pub fn plain_m2(e: &GradedAlgebra, basis: &GradedBasisM2) -> Result<GradedAlgebra> {
    let n = e.dim();
    // q[(r, c)][(i, j)] = entry (r, c) of I^(i)_j
    let mut q = Matrix::zero(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            for (rc, v) in basis.get(i, j).entries().iter().enumerate() {
                q[(rc, i * 2 + j)] = v.clone();
            }
        }
    }
    let qinv = q.inverse().ok_or(Error::SingularBasis)?;
    let to_basis = |entries: &[Vector; 4]| {
        let mut out = zero_vec(4 * n);
        for b in 0..n {
            let col: Vector = entries.iter().map(|v| v[b].clone()).collect();
            let c = qinv.apply(&col);
            for (ij, v) in c.into_iter().enumerate() {
                out[ij * n + b] = v;
            }
        }
        out
    };
    let as_matrix = |k: usize| -> [Vector; 4] {
        let (ij, b) = (k / n, k % n);
        let m = basis.get(ij / 2, ij % 2);
        core::array::from_fn(|rc| {
            let mut v = zero_vec(n);
            v[b] = m.entries()[rc].clone();
            v
        })
    };
    let mut unit_entries: [Vector; 4] = core::array::from_fn(|_| zero_vec(n));
    unit_entries[0] = e.unit().clone();
    unit_entries[3] = e.unit().clone();
    let unit = to_basis(&unit_entries);
    GradedAlgebra::from_fn(
        m2_labels(e),
        |a, b| {
            let (x, y) = (as_matrix(a), as_matrix(b));
            let prod: [Vector; 4] = core::array::from_fn(|rc| {
                let (r, c) = (rc / 2, rc % 2);
                let mut v = e.mul(&x[r * 2], &y[c]);
                axpy(&mut v, &Scalar::one(), &e.mul(&x[r * 2 + 1], &y[2 + c]));
                v
            });
            to_basis(&prod)
        },
        unit,
        2,
        m2_degrees(e),
    )
}

/// A twisting system together with an isomorphism from the old twisted algebra to the new one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transported {
    pub system: TwistingSystemM2,
    pub iso: GradedLinMap,
}

fn unit_matrices(e: &GradedAlgebra, tables: &[MatrixHom; 2]) -> Result<[Matrix; 2]> {
    let a = tables[0].at_unit(e).ok_or_else(|| Error::NotTwistingSystem(String::from("theta0(1) is not a scalar matrix")))?;
    let b = tables[1].at_unit(e).ok_or_else(|| Error::NotTwistingSystem(String::from("theta1(1) is not a scalar matrix")))?;
    Ok([a, b])
}

/// `entries_ab = sum_{c,d} left_ac table_cd right_db` for scalar matrices `left`, `right`.
fn sandwich(left: &Matrix, t: &MatrixHom, right: &Matrix) -> MatrixHom {
    let n = t.dim();
    let entries = core::array::from_fn(|a| {
        core::array::from_fn(|b| {
            let mut m = Matrix::zero(n, n);
            for c in 0..2 {
                for d in 0..2 {
                    let k = &left[(a, c)] * &right[(d, b)];
                    if !k.is_zero() {
                        m = m.add(&t.entries[c][d].scale(&k));
                    }
                }
            }
            m
        })
    });
    MatrixHom { entries }
}

/// The normalized system `upsilon^(i)(x) = theta^(i)(x) (phi^(i)(1))^T` with the
/// isomorphism `I^(i)_j x -> sum_s I^(i)_s x theta^(i)_{sj}(1)`, both verified.
pub fn normalize_upsilon(e: &GradedAlgebra, t: &TwistingSystemM2) -> Result<Transported> {
    let n = e.dim();
    let phi = t.t_inverses()?;
    let th1 = unit_matrices(e, &t.theta)?;
    let ph1 = unit_matrices(e, &phi)?;
    let theta = core::array::from_fn(|i| sandwich(&Matrix::identity(2), &t.theta[i], &ph1[i].transpose()));
    let system = TwistingSystemM2 { basis: t.basis.clone(), tensors: t.tensors.clone(), theta };
    if unit_matrices(e, &system.theta)?.iter().any(|m| m != &Matrix::identity(2)) {
        return Err(Error::CheckFailed(String::from("normalized tables do not send 1 to I2")));
    }
    let mut f = Matrix::zero(4 * n, 4 * n);
    for i in 0..2 {
        for j in 0..2 {
            for b in 0..n {
                for s in 0..2 {
                    f[(m2_index(n, i, s, b), m2_index(n, i, j, b))] = th1[i][(s, j)].clone();
                }
            }
        }
    }
    let iso = GradedLinMap::new(f, 0);
    check_iso(&build_twisted_m2(e, t)?, &build_twisted_m2(e, &system)?, &iso)?;
    Ok(Transported { system, iso })
}

/// The system `omega^(i)(x) = U^(i) theta^(i)(x) (U^(i))^-1` over `target`, where
/// `(I_1, I_2) = (J_1, J_2) U^(i)`, with the induced isomorphism verified.
pub fn rebase_omega(e: &GradedAlgebra, t: &TwistingSystemM2, target: &GradedBasisM2) -> Result<Transported> {
    let n = e.dim();
    let u = [t.basis.change_matrix(target, 0)?, t.basis.change_matrix(target, 1)?];
    let uinv = [u[0].inverse().ok_or(Error::SingularBasis)?, u[1].inverse().ok_or(Error::SingularBasis)?];
    let theta = core::array::from_fn(|i| sandwich(&u[i], &t.theta[i], &uinv[i]));
    let system = TwistingSystemM2::new(target.clone(), theta)?;
    let mut g = Matrix::zero(4 * n, 4 * n);
    for i in 0..2 {
        for j in 0..2 {
            for b in 0..n {
                for s in 0..2 {
                    g[(m2_index(n, i, s, b), m2_index(n, i, j, b))] = u[i][(s, j)].clone();
                }
            }
        }
    }
    let iso = GradedLinMap::new(g, 0);
    check_iso(&build_twisted_m2(e, t)?, &build_twisted_m2(e, &system)?, &iso)?;
    Ok(Transported { system, iso })
}

/// First failure of the exchange law
/// `sum_{u,j} l^(ii')_{pqu} th^(i')_{uj}(x ph^(i')_{rj}(x'))
///  = sum_{t,j} l^(ii')_{tjr} th^(i+i')_{pt}(ph^(i)_{qj}(x)) x'`.
pub fn exchange_law_failure(e: &GradedAlgebra, t: &TwistingSystemM2) -> Result<Option<String>> {
    let n = e.dim();
    let phi = t.t_inverses()?;
    let l = &t.tensors;
    for i in 0..2 {
        for i2 in 0..2 {
            for p in 0..2 {
                for q in 0..2 {
                    for r in 0..2 {
                        for x in 0..n {
                            for y in 0..n {
                                let mut lhs = zero_vec(n);
                                let mut rhs = zero_vec(n);
                                for j in 0..2 {
                                    let inner = e.basis_mul(x, &phi[i2].entries[r][j].column(y));
                                    for u in 0..2 {
                                        let c = l.l(i, i2, p, q, u);
                                        if !c.is_zero() {
                                            axpy(&mut lhs, c, &apply_entry(&t.theta[i2], u, j, &inner));
                                        }
                                    }
                                    let ph = phi[i].entries[q][j].column(x);
                                    for tt in 0..2 {
                                        let c = l.l(i, i2, tt, j, r);
                                        if !c.is_zero() {
                                            axpy(&mut rhs, c, &e.mul_by_basis(&apply_entry(&t.theta[i ^ i2], p, tt, &ph), y));
                                        }
                                    }
                                }
                                if lhs != rhs {
                                    return Ok(Some(format!("i={i} i'={i2} p={} q={} r={} x={} x'={}", p + 1, q + 1, r + 1, e.labels()[x], e.labels()[y])));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `theta0(1)` invertible exactly when `theta1(1)` is, and then both `phi(1)` are invertible.
pub fn unit_invertibility_consistent(e: &GradedAlgebra, t: &TwistingSystemM2) -> Result<bool> {
    let phi = t.t_inverses()?;
    let a = is_invertible_scalar_table(e, &t.theta[0]);
    let b = is_invertible_scalar_table(e, &t.theta[1]);
    Ok(a == b && (!a || (is_invertible_scalar_table(e, &phi[0]) && is_invertible_scalar_table(e, &phi[1]))))
}

/// First failure among the three identities linking `gamma`, `theta(1)` and `phi(1)`.
pub fn unit_identity_failure(e: &GradedAlgebra, t: &TwistingSystemM2) -> Result<Option<String>> {
    let n = e.dim();
    let phi = t.t_inverses()?;
    let l = &t.tensors;
    let one = e.unit();
    let ph1: [[[Vector; 2]; 2]; 2] = core::array::from_fn(|i| phi[i].apply(one));
    let th1: [[[Vector; 2]; 2]; 2] = core::array::from_fn(|i| t.theta[i].apply(one));
    for i in 0..2 {
        for i2 in 0..2 {
            for q in 0..2 {
                for r in 0..2 {
                    for s in 0..2 {
                        let mut lhs = zero_vec(n);
                        let mut rhs = zero_vec(n);
                        for p in 0..2 {
                            axpy(&mut lhs, l.l(i, i2, p, q, r), &ph1[i ^ i2][p][s]);
                            axpy(&mut rhs, l.l(i, i2, s, p, r), &ph1[i][q][p]);
                        }
                        if lhs != rhs {
                            return Ok(Some(format!("phi(1) identity at i={i} i'={i2} q={} r={} s={}", q + 1, r + 1, s + 1)));
                        }
                    }
                }
            }
        }
    }
    for v in 0..2 {
        for x in 0..n {
            let mut lhs = zero_vec(n);
            for r in 0..2 {
                for j in 0..2 {
                    let inner = e.basis_mul(x, &ph1[0][r][j]);
                    axpy(&mut lhs, &t.tensors.gamma[r], &apply_entry(&t.theta[0], v, j, &inner));
                }
            }
            let rhs: Vector = unit_vec(n, x).iter().map(|c| c * &t.tensors.gamma[v]).collect();
            if lhs != rhs {
                return Ok(Some(format!("right unit identity at v={} x={}", v + 1, e.labels()[x])));
            }
        }
    }
    for i in 0..2 {
        for s in 0..2 {
            for q in 0..2 {
                let mut lhs = zero_vec(n);
                for tt in 0..2 {
                    for j in 0..2 {
                        for u in 0..2 {
                            let c = &t.tensors.gamma[u] * l.l(0, i, s, j, tt);
                            if !c.is_zero() {
                                axpy(&mut lhs, &c, &e.mul(&ph1[0][u][j], &th1[i][tt][q]));
                            }
                        }
                    }
                }
                let rhs = if s == q { one.clone() } else { zero_vec(n) };
                if lhs != rhs {
                    return Ok(Some(format!("left unit identity at i={i} s={} q={}", s + 1, q + 1)));
                }
            }
        }
    }
    Ok(None)
}

/// Every check of the twisting-system property suite, each with a pass flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertySuite {
    pub checks: Vec<(String, bool)>,
}

impl PropertySuite {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }
}

/// Runs the structural identities, the construction, normalization, rebasing onto
/// [`GradedBasisM2::real`] and the trivial-system comparison for one system.
pub fn property_suite(e: &GradedAlgebra, t: &TwistingSystemM2) -> PropertySuite {
    let mut checks = Vec::new();
    let mut push = |name: &str, ok: bool| checks.push((String::from(name), ok));
    push("tensor identities", tensor_identity_failure(&t.tensors).is_none());
    let rep = verify_twisting_m2(e, t);
    push("twisting system verified", rep.passed());
    push("exchange law", matches!(exchange_law_failure(e, t), Ok(None)));
    push("unit invertibility", matches!(unit_invertibility_consistent(e, t), Ok(true)));
    push("unit identities", matches!(unit_identity_failure(e, t), Ok(None)));
    let built = build_twisted_m2(e, t);
    let unit_ok = match (&built, twisted_unit(e, t)) {
        (Ok(a), Ok(u)) => verify_algebra(a).passed() && a.unit() == &u,
        _ => false,
    };
    push("twisted algebra valid with the unit formula", unit_ok);
    let norm_ok = match normalize_upsilon(e, t) {
        Ok(tr) => {
            let one = e.unit();
            let ups_one = tr.system.theta.iter().all(|h| h.at_unit(e) == Some(Matrix::identity(2)));
            let unit_is_identity = build_twisted_m2(e, &tr.system).map(|a| {
                let n = e.dim();
                let mut id = zero_vec(4 * n);
                let c = tr.system.basis.coordinates(0, &Matrix::identity(2));
                if let Some(c) = c {
                    for j in 0..2 {
                        for (b, v) in one.iter().enumerate() {
                            id[m2_index(n, 0, j, b)] = &c[j] * v;
                        }
                    }
                }
                a.unit() == &id
            });
            ups_one && unit_is_identity == Ok(true)
        }
        Err(_) => false,
    };
    push("normalization to the identity matrix", norm_ok);
    push("rebase isomorphism", rebase_omega(e, t, &GradedBasisM2::real()).is_ok());
    let trivial_ok = TwistingSystemM2::trivial(t.basis.clone(), e.dim())
        .and_then(|tr| Ok(build_twisted_m2(e, &tr)? == plain_m2(e, &t.basis)?))
        .unwrap_or(false);
    push("trivial system gives plain M2(E)", trivial_ok);
    PropertySuite { checks }
}

/// An invertible basis `eps` of `K x K` (`eps[j] = (eps[j][0], eps[j][1])`) with one map table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingSystemProd {
    pub theta: MatrixHom,
    pub eps: [[Scalar; 2]; 2],
    /// `l[p][j][j']` with `eps_j eps_j' = sum_p eps_p l[p][j][j']`.
    pub l: [[[Scalar; 2]; 2]; 2],
    /// `gamma_0 eps_0 + gamma_1 eps_1 = (1, 1)`.
    pub gamma: [Scalar; 2],
}

impl TwistingSystemProd {
    pub fn new(theta: MatrixHom, eps: [[Scalar; 2]; 2]) -> Result<Self> {
        if eps.iter().flatten().any(|c| c.is_zero()) {
            return Err(Error::SingularBasis);
        }
        let m = pair_matrix(&eps[0][0], &eps[1][0], &eps[0][1], &eps[1][1]);
        let minv = m.inverse().ok_or(Error::SingularBasis)?;
        let coords = |v: [Scalar; 2]| -> [Scalar; 2] {
            let c = minv.apply(&v);
            [c[0].clone(), c[1].clone()]
        };
        let gamma = coords([Scalar::one(), Scalar::one()]);
        let mut l: [[[Scalar; 2]; 2]; 2] = Default::default();
        for j in 0..2 {
            for j2 in 0..2 {
                let c = coords([&eps[j][0] * &eps[j2][0], &eps[j][1] * &eps[j2][1]]);
                for p in 0..2 {
                    l[p][j][j2] = c[p].clone();
                }
            }
        }
        Ok(TwistingSystemProd { theta, eps, l, gamma })
    }

    /// `eps = {(1, 1), (1, -1)}`.
    pub fn with_default_basis(theta: MatrixHom) -> Result<Self> {
        let (o, m) = (Scalar::one(), Scalar::int(-1));
        TwistingSystemProd::new(theta, [[o.clone(), o.clone()], [o, m]])
    }

    pub fn dim(&self) -> usize {
        self.theta.dim()
    }
}

/// Outcome of checking a twisting system of `E x E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProdReport {
    pub graded: bool,
    pub t_invertible: bool,
    pub unit_invertible: bool,
    pub compatibility: Option<String>,
}

impl ProdReport {
    pub fn passed(&self) -> bool {
        self.graded && self.t_invertible && self.unit_invertible && self.compatibility.is_none()
    }

    pub fn lines(&self) -> Vec<(String, bool)> {
        alloc::vec![
            (String::from("table preserves degree"), self.graded),
            (String::from("table t-invertible"), self.t_invertible),
            (String::from("theta(1) invertible scalar matrix"), self.unit_invertible),
            (String::from("compatibility identity"), self.compatibility.is_none()),
        ]
    }

    pub fn first_failure(&self) -> Option<String> {
        if let Some(c) = &self.compatibility {
            return Some(format!("compatibility identity fails at {c}"));
        }
        self.lines().into_iter().find(|(_, ok)| !ok).map(|(name, _)| format!("{name} fails"))
    }
}

/// Checks `sum_{s,u} l_{p;su} th_{uj'}(th_{sj}(x) x') = sum_{t,u} l_{t;ju} th_{pt}(x) th_{uj'}(x')`
/// on basis pairs, together with degree preservation and the unit conditions.
pub fn verify_twisting_prod(e: &GradedAlgebra, t: &TwistingSystemProd) -> ProdReport {
    let n = e.dim();
    if t.dim() != n {
        return ProdReport { graded: false, t_invertible: false, unit_invertible: false, compatibility: Some(String::from("table size differs from dim E")) };
    }
    let cols = table_columns(&t.theta);
    let mut compatibility = None;
    'outer: for p in 0..2 {
        for j in 0..2 {
            for j2 in 0..2 {
                for x in 0..n {
                    for y in 0..n {
                        let mut lhs = zero_vec(n);
                        let mut rhs = zero_vec(n);
                        for s in 0..2 {
                            let inner = e.mul_by_basis(&cols[s][j][x], y);
                            for u in 0..2 {
                                let c = &t.l[p][s][u];
                                if !c.is_zero() {
                                    axpy(&mut lhs, c, &apply_entry(&t.theta, u, j2, &inner));
                                }
                                let c = &t.l[s][j][u];
                                if !c.is_zero() {
                                    axpy(&mut rhs, c, &e.mul(&cols[p][s][x], &cols[u][j2][y]));
                                }
                            }
                        }
                        if lhs != rhs {
                            compatibility = Some(format!("p={} j={} j'={} x={} x'={}", p + 1, j + 1, j2 + 1, e.labels()[x], e.labels()[y]));
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    ProdReport {
        graded: tables_graded(e, &[&t.theta]),
        t_invertible: t_invert_hom(&t.theta).is_ok(),
        unit_invertible: is_invertible_scalar_table(e, &t.theta),
        compatibility,
    }
}

/// `^theta(E x E)` on the basis `eps_j (x) e_b` (index `j * n + b`), graded by the degree in `E`,
/// with product `eps_j x * eps_j' x' = sum_{s,t} eps_t l_{t;js} theta_{sj'}(x) x'`.
pub fn build_twisted_prod(e: &GradedAlgebra, t: &TwistingSystemProd) -> Result<GradedAlgebra> {
    let rep = verify_twisting_prod(e, t);
    if !rep.passed() {
        return Err(Error::NotTwistingSystem(rep.first_failure().unwrap_or_default()));
    }
    let n = e.dim();
    let cols = table_columns(&t.theta);
    let phi = t_invert_hom(&t.theta)?;
    let mut unit = zero_vec(2 * n);
    for j in 0..2 {
        for s in 0..2 {
            let v = apply_entry(&phi, s, j, e.unit());
            for (b, c) in v.iter().enumerate() {
                unit[j * n + b] += &(&t.gamma[s] * c);
            }
        }
    }
    let labels = (0..2).flat_map(|j| e.labels().iter().map(move |b| format!("e{}[{b}]", j + 1))).collect();
    let degrees = (0..2).flat_map(|_| e.degrees().iter().cloned()).collect();
    let a = GradedAlgebra::from_fn(
        labels,
        |a, b| {
            let (j, x, j2, y) = (a / n, a % n, b / n, b % n);
            let mut out = zero_vec(2 * n);
            for s in 0..2 {
                let w = e.mul_by_basis(&cols[s][j2][x], y);
                for tt in 0..2 {
                    let c = &t.l[tt][j][s];
                    if c.is_zero() {
                        continue;
                    }
                    for (k, v) in w.iter().enumerate() {
                        if !v.is_zero() {
                            out[tt * n + k] += &(c * v);
                        }
                    }
                }
            }
            out
        },
        unit,
        e.rank(),
        degrees,
    )?;
    if verify_algebra(&a).unit.is_some() {
        return Err(Error::CheckFailed(String::from("unit formula of the twisted direct product fails")));
    }
    Ok(a)
}

/// A ring `S`, an `S`-bimodule `M` given by action matrices, and `psi: M x M -> S`.
/// `module_degrees` are the degrees of the shifted module that enters the extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiTrivialData {
    pub ring: GradedAlgebra,
    pub module_labels: Vec<String>,
    pub module_degrees: Vec<Degree>,
    /// `left[i]` is the matrix of `m -> s_i m` (columns are images).
    pub left: Vec<Matrix>,
    /// `right[i]` is the matrix of `m -> m s_i`.
    pub right: Vec<Matrix>,
    /// `psi[a * dim M + b]` is `psi(m_a (x) m_b)` in the coordinates of `S`.
    pub psi: Vec<Vector>,
}

impl SemiTrivialData {
    pub fn module_dim(&self) -> usize {
        self.module_labels.len()
    }

    fn psi_of(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let m = self.module_dim();
        let mut out = zero_vec(self.ring.dim());
        for (a, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in v.iter().enumerate() {
                if !y.is_zero() {
                    axpy(&mut out, &(x * y), &self.psi[a * m + b]);
                }
            }
        }
        out
    }

    fn act(mats: &[Matrix], s: &[Scalar], m: &[Scalar]) -> Vector {
        let mut out = zero_vec(m.len());
        for (i, c) in s.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &mats[i].apply(m));
            }
        }
        out
    }

    /// Bimodule axioms, then balance of `psi`, then `psi` as a bimodule map with
    /// `m psi(m' m'') = psi(m m') m''`.
    pub fn check(&self) -> Result<()> {
        let (s, m) = (&self.ring, self.module_dim());
        let ns = s.dim();
        if self.left.len() != ns || self.right.len() != ns || self.psi.len() != m * m || self.module_degrees.len() != m {
            return Err(Error::DimensionMismatch { expected: ns, found: self.left.len() });
        }
        let bad = |what: &str| Err(Error::CheckFailed(format!("module: {what}")));
        if self.left.iter().chain(&self.right).any(|a| a.rows != m || a.cols != m) {
            return bad("action size");
        }
        for b in 0..m {
            let e = unit_vec(m, b);
            if Self::act(&self.left, s.unit(), &e) != e || Self::act(&self.right, s.unit(), &e) != e {
                return bad("unit does not act as the identity");
            }
        }
        for i in 0..ns {
            for j in 0..ns {
                let ij = s.product_basis_dense(i, j);
                for b in 0..m {
                    let e = unit_vec(m, b);
                    if self.left[i].apply(&self.left[j].apply(&e)) != Self::act(&self.left, &ij, &e) {
                        return bad("left action is not associative");
                    }
                    if self.right[j].apply(&self.right[i].apply(&e)) != Self::act(&self.right, &ij, &e) {
                        return bad("right action is not associative");
                    }
                    if self.left[i].apply(&self.right[j].apply(&e)) != self.right[j].apply(&self.left[i].apply(&e)) {
                        return bad("actions do not commute");
                    }
                }
            }
        }
        for i in 0..ns {
            for b in 0..m {
                let d = s.degree(i) ^ self.module_degrees[b];
                let img = [self.left[i].column(b), self.right[i].column(b)];
                if img.iter().any(|v| v.iter().enumerate().any(|(k, c)| !c.is_zero() && self.module_degrees[k] != d)) {
                    return bad("actions are not graded");
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                let d = self.module_degrees[a] ^ self.module_degrees[b];
                if self.psi[a * m + b].iter().enumerate().any(|(k, c)| !c.is_zero() && s.degree(k) != d) {
                    return Err(Error::PsiNotBimodule);
                }
            }
        }
        for a in 0..m {
            let ea = unit_vec(m, a);
            for b in 0..m {
                let eb = unit_vec(m, b);
                for i in 0..ns {
                    let bal_l = self.psi_of(&self.right[i].apply(&ea), &eb);
                    let bal_r = self.psi_of(&ea, &self.left[i].apply(&eb));
                    if bal_l != bal_r {
                        return Err(Error::PsiNotBalanced);
                    }
                    let p = &self.psi[a * m + b];
                    if self.psi_of(&self.left[i].apply(&ea), &eb) != s.basis_mul(i, p) || self.psi_of(&ea, &self.right[i].apply(&eb)) != s.mul_by_basis(p, i) {
                        return Err(Error::PsiNotBimodule);
                    }
                }
                for c in 0..m {
                    let ec = unit_vec(m, c);
                    let lhs = Self::act(&self.right, &self.psi[b * m + c], &ea);
                    let rhs = Self::act(&self.left, &self.psi[a * m + b], &ec);
                    if lhs != rhs {
                        return Err(Error::PsiNotBimodule);
                    }
                }
            }
        }
        Ok(())
    }
}

/// `S (+) M` with `(x, m)(x', m') = (x x' + psi(m, m'), x m' + m x')`, graded by
/// `Z2 x Z2`: bit 0 separates `S` from `M`, bit 1 is the degree in `S` or in `M`.
pub fn build_semitrivial(d: &SemiTrivialData) -> Result<GradedAlgebra> {
    d.check()?;
    let s = &d.ring;
    let (ns, m) = (s.dim(), d.module_dim());
    let labels = s.labels().iter().map(|l| format!("({l},0)")).chain(d.module_labels.iter().map(|l| format!("(0,{l})"))).collect();
    let degrees = s.degrees().iter().map(|&g| (g & 1) << 1).chain(d.module_degrees.iter().map(|&g| 1 | ((g & 1) << 1))).collect();
    let mut unit = s.unit().clone();
    unit.extend(zero_vec(m));
    GradedAlgebra::from_fn(
        labels,
        |a, b| {
            let mut out = zero_vec(ns + m);
            match (a < ns, b < ns) {
                (true, true) => out[..ns].clone_from_slice(&s.product_basis_dense(a, b)),
                (true, false) => out[ns..].clone_from_slice(&d.left[a].column(b - ns)),
                (false, true) => out[ns..].clone_from_slice(&d.right[b].column(a - ns)),
                (false, false) => out[..ns].clone_from_slice(&d.psi[(a - ns) * m + (b - ns)]),
            }
            out
        },
        unit,
        2,
        degrees,
    )
}

/// Whether `mu` is a graded unital algebra automorphism of `e` with `mu^2 = id`.
pub fn is_graded_involution(e: &GradedAlgebra, mu: &GradedLinMap) -> bool {
    mu.source_dim() == e.dim()
        && mu.target_dim() == e.dim()
        && mu.shift == 0
        && mu.respects_grading(e, e)
        && &mu.apply(e.unit()) == e.unit()
        && mu.multiplicativity_failure(e, e).is_none()
        && mu.compose(mu).is_identity()
}

/// The data `E, _mu E(1), psi(a, b) = mu(a) b`: left action through `mu`, right action plain,
/// module degrees shifted by one.
pub fn semitrivial_mu(e: &GradedAlgebra, mu: &GradedLinMap) -> Result<SemiTrivialData> {
    if !is_graded_involution(e, mu) {
        return Err(Error::MuNotInvolution);
    }
    let n = e.dim();
    let images: Vec<Vector> = (0..n).map(|i| mu.image(i)).collect();
    let left = images.iter().map(|v| e.left_mul_matrix(v)).collect();
    let right = (0..n).map(|i| e.right_mul_matrix(&e.basis_vec(i))).collect();
    let psi = (0..n).flat_map(|a| (0..n).map(|b| e.mul_by_basis(&images[a], b)).collect::<Vec<_>>()).collect();
    let d = SemiTrivialData {
        ring: e.clone(),
        module_labels: e.labels().to_vec(),
        module_degrees: e.degrees().iter().map(|g| g ^ 1).collect(),
        left,
        right,
        psi,
    };
    d.check()?;
    Ok(d)
}

/// `^nu E` for a `Z2`-graded `E`: same basis, `x * y = nu_h(x) y` for `y` of degree `h`.
/// Checks `nu_l(nu_h(x) y) = nu_{h+l}(x) nu_l(y)` on basis pairs first.
pub fn zhang_twist(e: &GradedAlgebra, nu: &[GradedLinMap; 2]) -> Result<GradedAlgebra> {
    let n = e.dim();
    if e.rank() != 1 {
        return Err(Error::NotTwistingSystem(String::from("Zhang twists need a Z2-graded algebra")));
    }
    for (g, v) in nu.iter().enumerate() {
        if v.source_dim() != n || v.target_dim() != n || v.shift != 0 || !v.respects_grading(e, e) || v.inverse().is_none() {
            return Err(Error::NotTwistingSystem(format!("nu_{g} is not a graded linear automorphism")));
        }
    }
    for x in 0..n {
        for y in 0..n {
            let h = (e.degree(y) & 1) as usize;
            for l in 0..2 {
                let lhs = nu[l].apply(&e.mul_by_basis(&nu[h].image(x), y));
                let rhs = e.mul(&nu[h ^ l].image(x), &nu[l].image(y));
                if lhs != rhs {
                    return Err(Error::NotTwistingSystem(format!("identity fails at x={} y={} l={l}", e.labels()[x], e.labels()[y])));
                }
            }
        }
    }
    let unit = nu[0].inverse().expect("checked invertible").apply(e.unit());
    let a = GradedAlgebra::from_fn(e.labels().to_vec(), |x, y| e.mul_by_basis(&nu[(e.degree(y) & 1) as usize].image(x), y), unit, 1, e.degrees().to_vec())?;
    if verify_algebra(&a).unit.is_some() {
        return Err(Error::NotTwistingSystem(String::from("twisted product has no unit")));
    }
    Ok(a)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::direct_product;
    use crate::algebra::tests::{labels, quadratic_ext};
    use crate::algebra::{is_nilpotent_element, verify_iso, xi_automorphism};

    fn k() -> GradedAlgebra {
        GradedAlgebra::new(labels(&["1"]), alloc::vec![unit_vec(1, 0)], unit_vec(1, 0), 1, alloc::vec![0]).unwrap()
    }

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn canonical_basis_tensors() {
        let t = structure_tensors(&GradedBasisM2::canonical()).unwrap();
        assert_eq!(t.gamma, [Scalar::one(), Scalar::zero()]);
        let rot = pair_matrix(&s(0), &s(-1), &s(1), &s(0));
        let rot_t = pair_matrix(&s(0), &s(1), &s(-1), &s(0));
        assert_eq!(t.l_matrix(0, 0, 1), rot);
        assert_eq!(t.l_matrix(1, 0, 1), rot);
        assert_eq!(t.l_matrix(0, 1, 1), rot_t);
        assert_eq!(t.l_matrix(1, 1, 1), rot_t);
        for i in 0..2 {
            for i2 in 0..2 {
                assert_eq!(t.l_matrix(i, i2, 0), Matrix::identity(2));
            }
        }
    }

    #[test]
    fn singular_bases_rejected() {
        let (o, z) = (Scalar::one(), Scalar::zero());
        let id = pair_matrix(&o, &z, &z, &o);
        let sw = pair_matrix(&z, &o, &o, &z);
        let bad = pair_matrix(&o, &z, &z, &z);
        assert_eq!(GradedBasisM2::new([[id.clone(), bad], [sw.clone(), pair_matrix(&z, &o, &s(-1), &z)]]), Err(Error::SingularBasis));
        assert_eq!(GradedBasisM2::new([[id.clone(), id.scale(&s(2))], [sw.clone(), pair_matrix(&z, &o, &s(-1), &z)]]), Err(Error::SingularBasis));
        assert_eq!(GradedBasisM2::new([[id.clone(), pair_matrix(&o, &z, &z, &s(-1))], [id.clone(), sw]]), Err(Error::SingularBasis));
    }

    #[test]
    fn trivial_system_is_plain_matrix_algebra() {
        let kk = direct_product(&k(), &k()).unwrap();
        let e = quadratic_ext(s(3));
        for alg in [&kk, &e] {
            for basis in [GradedBasisM2::canonical(), GradedBasisM2::real()] {
                let t = TwistingSystemM2::trivial(basis.clone(), alg.dim()).unwrap();
                assert!(verify_twisting_m2(alg, &t).passed());
                let a = build_twisted_m2(alg, &t).unwrap();
                assert_eq!(a, plain_m2(alg, &basis).unwrap());
                assert!(verify_algebra(&a).passed());
                assert!(property_suite(alg, &t).passed(), "{:?}", property_suite(alg, &t).failures());
            }
        }
    }

    #[test]
    fn non_t_invertible_table_fails() {
        let e = quadratic_ext(s(1));
        let mut t = TwistingSystemM2::trivial(GradedBasisM2::canonical(), 2).unwrap();
        t.theta[1] = MatrixHom::diagonal(Matrix::identity(2), Matrix::zero(2, 2)).unwrap();
        let rep = verify_twisting_m2(&e, &t);
        assert!(!rep.t_invertible);
        assert!(!rep.passed());
        assert!(matches!(build_twisted_m2(&e, &t), Err(Error::NotTwistingSystem(_))));
    }

    #[test]
    fn broken_compatibility_reports_a_tuple() {
        let e = quadratic_ext(s(1));
        let mut t = TwistingSystemM2::trivial(GradedBasisM2::canonical(), 2).unwrap();
        let mut m = Matrix::identity(2);
        m[(0, 1)] = s(1);
        t.theta[0] = MatrixHom::diagonal(m.clone(), m).unwrap();
        let rep = verify_twisting_m2(&e, &t);
        assert!(rep.compatibility.is_some());
        assert!(!rep.graded);
    }

    /// `theta^(i) = diag(xi, xi)` twists by the parity automorphism in both matrix degrees.
    #[test]
    fn scaling_normalization_and_rebase() {
        let e = quadratic_ext(s(2));
        let t = TwistingSystemM2::trivial(GradedBasisM2::canonical(), 2).unwrap();
        let c = s(3);
        let scaled = TwistingSystemM2::new(t.basis.clone(), [t.theta[0].before(&Matrix::scalar_identity(2, &c)), t.theta[1].before(&Matrix::scalar_identity(2, &c))]).unwrap();
        assert!(verify_twisting_m2(&e, &scaled).passed());
        let n = normalize_upsilon(&e, &scaled).unwrap();
        assert_eq!(n.system, t);
        assert!(!n.iso.is_identity());
        let a = build_twisted_m2(&e, &scaled).unwrap();
        assert!(verify_algebra(&a).passed());
        assert_eq!(a.unit(), &twisted_unit(&e, &scaled).unwrap());
        let same = normalize_upsilon(&e, &t).unwrap();
        assert!(same.iso.is_identity());
        assert_eq!(same.system, t);
        let r = rebase_omega(&e, &t, &t.basis).unwrap();
        assert!(r.iso.is_identity());
        assert_eq!(r.system, t);
        let r2 = rebase_omega(&e, &scaled, &GradedBasisM2::real()).unwrap();
        assert!(verify_twisting_m2(&e, &r2.system).passed());
        assert!(property_suite(&e, &scaled).passed(), "{:?}", property_suite(&e, &scaled).failures());
    }

    #[test]
    fn parity_twist_system() {
        let e = quadratic_ext(s(5));
        let xi = xi_automorphism(&e, &s(-1)).unwrap().matrix;
        let z = Matrix::zero(2, 2);
        let th1 = MatrixHom::new([[xi.clone(), z.clone()], [z, xi]]).unwrap();
        let t = TwistingSystemM2::new(GradedBasisM2::real(), [MatrixHom::identity(2), th1]).unwrap();
        let rep = verify_twisting_m2(&e, &t);
        assert!(rep.passed(), "{rep:?}");
        assert!(property_suite(&e, &t).passed(), "{:?}", property_suite(&e, &t).failures());
    }

    #[test]
    fn direct_product_diagonal_theta_is_usual_product() {
        let e = quadratic_ext(s(-1));
        let t = TwistingSystemProd::with_default_basis(MatrixHom::identity(2)).unwrap();
        // eps1 = (1,1), eps2 = (1,-1): eps2 eps2 = eps1, eps1 eps2 = eps2
        assert_eq!(t.l[0][0][0], s(1));
        assert_eq!(t.l[1][0][0], s(0));
        assert_eq!(t.l[1][1][0], s(1));
        assert_eq!(t.l[0][1][1], s(1));
        assert_eq!(t.l[1][1][1], s(0));
        assert_eq!(t.gamma, [s(1), s(0)]);
        let g = build_twisted_prod(&e, &t).unwrap();
        assert!(verify_algebra(&g).passed());
        // (a, b) coordinates: eps1 x = (x, x), eps2 x = (x, -x)
        let p = direct_product(&e, &e).unwrap();
        let mut m = Matrix::zero(4, 4);
        for b in 0..2 {
            m[(b, b)] = s(1);
            m[(2 + b, b)] = s(1);
            m[(b, 2 + b)] = s(1);
            m[(2 + b, 2 + b)] = s(-1);
        }
        assert!(verify_iso(&g, &p, &GradedLinMap::new(m, 0)));
        assert_eq!(TwistingSystemProd::new(MatrixHom::identity(2), [[s(1), s(0)], [s(0), s(1)]]), Err(Error::SingularBasis));
    }

    #[test]
    fn semitrivial_examples() {
        // multiplication of K as psi: (0,1)(0,1) = (1,0), i.e. K[x]/(x^2 - 1)
        let d = semitrivial_mu(&k(), &GradedLinMap::identity(1)).unwrap();
        let a = build_semitrivial(&d).unwrap();
        assert!(verify_algebra(&a).passed());
        assert_eq!(a.product_basis_dense(1, 1), alloc::vec![s(1), s(0)]);
        let target = quadratic_ext(s(1)).regrade(2, |g| if g == 1 { 3 } else { 0 });
        assert!(verify_iso(&a, &target, &GradedLinMap::identity(2)));
        // psi = 0 is the trivial extension
        let mut z = d.clone();
        z.psi = alloc::vec![zero_vec(1)];
        let t = build_semitrivial(&z).unwrap();
        assert!(is_nilpotent_element(&t, &unit_vec(2, 1)));
        assert_eq!(t.product_basis(1, 1), &[]);
        // a non-balanced psi
        let kk = direct_product(&k(), &k()).unwrap();
        let mut d2 = semitrivial_mu(&kk, &GradedLinMap::identity(2)).unwrap();
        d2.psi[1] = unit_vec(2, 0);
        assert!(matches!(build_semitrivial(&d2), Err(Error::PsiNotBalanced | Error::PsiNotBimodule)));
    }

    #[test]
    fn mu_must_be_an_involution() {
        let kk = direct_product(&k(), &k()).unwrap();
        assert!(semitrivial_mu(&kk, &GradedLinMap::identity(2)).is_ok());
        let swap = GradedLinMap::new(pair_matrix(&s(0), &s(1), &s(1), &s(0)), 0);
        assert!(semitrivial_mu(&kk, &swap).is_ok());
        let e = quadratic_ext(s(1));
        let i_scale = GradedLinMap::new(pair_matrix(&s(1), &s(0), &s(0), &Scalar::i()), 0);
        assert_eq!(semitrivial_mu(&e, &i_scale).map(|_| ()), Err(Error::MuNotInvolution));
    }

    #[test]
    fn zhang_twists() {
        let e = quadratic_ext(s(1));
        let id = [GradedLinMap::identity(2), GradedLinMap::identity(2)];
        assert_eq!(zhang_twist(&e, &id).unwrap(), e);
        let xi = xi_automorphism(&e, &s(-1)).unwrap();
        let tw = zhang_twist(&e, &[GradedLinMap::identity(2), xi]).unwrap();
        assert!(verify_algebra(&tw).passed());
        // x * x = xi(x) x = -1
        assert_eq!(tw.product_basis_dense(1, 1), alloc::vec![s(-1), s(0)]);
        assert_eq!(tw.degrees(), e.degrees());
        let bad = GradedLinMap::new(pair_matrix(&s(2), &s(0), &s(0), &s(1)), 0);
        assert!(matches!(zhang_twist(&e, &[GradedLinMap::identity(2), bad]), Err(Error::NotTwistingSystem(_))));
    }
}
