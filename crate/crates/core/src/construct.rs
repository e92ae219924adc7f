//! Derivation spaces, extension by a derivation, and the symplectic double
//! extension, together with the maps back from an LCS algebra.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{char_poly, kernel_basis, pfaffian, solve, Mat, Poly, Rat, Vector};
use crate::exterior::{cediff, twisted_diff, KForm};
use crate::lcs::{verify_contact, verify_lcs, Kind, LcsStructure};
use crate::liealg::{kernel_subalgebra, KernelSubalgebra, LieAlgebra};

/// Basis of `Der(g)`, echelon-reduced over the row-major matrix entries.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub basis: Vec<Mat<Rat>>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, d: &Mat<Rat>) -> bool {
        let flat = |m: &Mat<Rat>| -> Vector { m.entries().cloned().collect() };
        if self.basis.is_empty() {
            return d.is_zero();
        }
        let cols: Vec<Vector> = self.basis.iter().map(flat).collect();
        solve(&Mat::from_cols(cols[0].len(), &cols), &flat(d)).is_some()
    }
}

/// Rows of the linear map `D -> (D[e_i,e_j] - [De_i,e_j] - [e_i,De_j])`,
/// unknown `D[r][c]` at column `r*n + c`.
fn derivation_equations(g: &LieAlgebra) -> Vec<Vector> {
    let n = g.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let cij = g.bracket_basis(i, j);
            for k in 0..n {
                let mut row = vec![Rat::zero(); n * n];
                for m in 0..n {
                    row[k * n + m] += &cij[m];
                    row[m * n + i] -= g.structure_constant(m, j, k);
                    row[m * n + j] -= g.structure_constant(i, m, k);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn unflatten(n: usize, v: &[Rat]) -> Mat<Rat> {
    Mat::from_fn(n, n, |r, c| v[r * n + c].clone())
}

fn space_from_equations(n: usize, rows: Vec<Vector>) -> DerivationSpace {
    let basis = if rows.is_empty() {
        (0..n * n)
            .map(|i| unflatten(n, &crate::exactmath::unit_vector(n * n, i)))
            .collect()
    } else {
        kernel_basis(&Mat::from_rows(rows))
            .iter()
            .map(|v| unflatten(n, v))
            .collect()
    };
    DerivationSpace { basis }
}

pub fn derivation_space(g: &LieAlgebra) -> DerivationSpace {
    space_from_equations(g.dim(), derivation_equations(g))
}

/// Pairs `(i, j)` (display indices) where `D` fails the Leibniz rule.
pub fn derivation_defects(g: &LieAlgebra, d: &Mat<Rat>) -> Vec<(usize, usize)> {
    let n = g.dim();
    let off = g.basis_offset();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.mul_vec(&g.bracket_basis(i, j));
            let a = g.bracket(&d.col(i), &crate::exactmath::unit_vector(n, j));
            let b = g.bracket(&crate::exactmath::unit_vector(n, i), &d.col(j));
            if (0..n).any(|k| lhs[k] != &a[k] + &b[k]) {
                out.push((i + off, j + off));
            }
        }
    }
    out
}

pub fn is_derivation(g: &LieAlgebra, d: &Mat<Rat>) -> bool {
    d.rows() == g.dim() && d.cols() == g.dim() && derivation_defects(g, d).is_empty()
}

fn check_derivation(g: &LieAlgebra, d: &Mat<Rat>) -> Result<()> {
    if d.rows() != g.dim() || d.cols() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: d.rows(),
        });
    }
    let pairs = derivation_defects(g, d);
    if pairs.is_empty() {
        Ok(())
    } else {
        Err(Error::NotADerivation { pairs })
    }
}

/// `R e0 + h` with `[e0, x] = D x`. The new generator comes first; display
/// indices of `h` are kept when its offset is at least 1.
pub fn semidirect(h: &LieAlgebra, d: &Mat<Rat>) -> Result<LieAlgebra> {
    check_derivation(h, d)?;
    let m = h.dim();
    let lift = |v: &[Rat]| -> Vector {
        std::iter::once(Rat::zero())
            .chain(v.iter().cloned())
            .collect()
    };
    let mut brackets = Vec::new();
    for (i, j) in h.nonzero_pairs() {
        brackets.push((i + 1, j + 1, lift(&h.bracket_basis(i, j))));
    }
    for j in 0..m {
        let col = d.col(j);
        if col.iter().any(|x| !x.is_zero()) {
            brackets.push((0, j + 1, lift(&col)));
        }
    }
    let g = LieAlgebra::new(m + 1, brackets)?.with_offset(h.basis_offset().saturating_sub(1));
    Ok(match h.name() {
        Some(name) => g.named(&format!("R x_D {name}")),
        None => g,
    })
}

/// Pulls a form on `h` back along the projection `R e0 + h -> h`.
fn extend_form(f: &KForm) -> KForm {
    let n = f.dim() + 1;
    KForm::from_terms(
        n,
        f.degree(),
        f.terms()
            .map(|(idx, c)| (idx.iter().map(|i| i + 1).collect(), c.clone())),
    )
}

/// LCS algebra `R x_D h` with `theta = e^0` and `omega = d_theta eta`.
#[derive(Clone, Debug)]
pub struct ContactExtension {
    pub algebra: LieAlgebra,
    pub lcs: LcsStructure,
}

pub fn lcs_from_contact(h: &LieAlgebra, eta: &KForm, d: &Mat<Rat>) -> Result<ContactExtension> {
    verify_contact(h, eta)?;
    check_derivation(h, d)?;
    let eta_d: Vector = (0..h.dim()).map(|j| eta.eval1(&d.col(j))).collect();
    if eta_d.iter().any(|x| !x.is_zero()) {
        return Err(Error::EtaDNotZero);
    }
    let g = semidirect(h, d)?;
    let n = g.dim();
    let theta = KForm::e(n, 0);
    let eta_g = extend_form(eta);
    let omega = twisted_diff(&g, &theta, &eta_g)?;
    let lcs = verify_lcs(&g, &omega, &theta)?;
    Ok(ContactExtension { algebra: g, lcs })
}

/// `(ker theta, eta|, ad_U|)` recovered from a first-kind LCS algebra.
#[derive(Clone, Debug)]
pub struct ContactReduction {
    pub kernel: KernelSubalgebra,
    /// `eta` restricted to `ker theta`, in the kernel's basis.
    pub eta: KForm,
    /// `ad_U` restricted to `ker theta`.
    pub derivation: Mat<Rat>,
    pub anti_lee_vector: Vector,
}

/// Uses `eta` when given (after checking `d_theta eta = omega`), else the
/// witness found by `verify_lcs`.
pub fn contact_from_lcs(
    g: &LieAlgebra,
    omega: &KForm,
    theta: &KForm,
    eta: Option<&KForm>,
) -> Result<ContactReduction> {
    let s = verify_lcs(g, omega, theta)?;
    if s.kind != Some(Kind::FirstKind) {
        return Err(Error::NotFirstKind);
    }
    let eta = match eta {
        Some(e) => {
            if twisted_diff(g, theta, e)? != *omega {
                return Err(Error::NotClosed {
                    defect: g.render_form(&twisted_diff(g, theta, e)?.sub(omega)?),
                });
            }
            e.clone()
        }
        None => s.eta.clone().ok_or(Error::NotFirstKind)?,
    };
    let (_, u) = crate::lcs::lee_vectors(g, omega, theta, Some(&eta))?;
    let u = u.expect("eta given");
    let kernel = kernel_subalgebra(g, theta)?;
    let h = &kernel.algebra;
    let m = h.dim();
    let eta_h = KForm::one_form(
        &(0..m)
            .map(|j| eta.eval1(&kernel.embedding.col(j)))
            .collect::<Vector>(),
    );
    let cols: Vec<Vector> = (0..m)
        .map(|j| kernel.coords(&g.bracket(&u, &kernel.embedding.col(j))))
        .collect();
    let derivation = Mat::from_cols(m, &cols);
    verify_contact(h, &eta_h)?;
    debug_assert!(is_derivation(h, &derivation));
    if (0..m).any(|j| !eta_h.eval1(&derivation.col(j)).is_zero()) {
        return Err(Error::EtaDNotZero);
    }
    Ok(ContactReduction {
        kernel,
        eta: eta_h,
        derivation,
        anti_lee_vector: u,
    })
}

fn check_symplectic(s: &LieAlgebra, beta: &KForm) -> Result<()> {
    let n = s.dim();
    if n % 2 == 1 {
        return Err(Error::NotSymplectic {
            reason: format!("odd dimension {n}"),
        });
    }
    if beta.degree() != 2 || beta.dim() != n {
        return Err(Error::NotSymplectic {
            reason: "not a 2-form on the algebra".into(),
        });
    }
    let d = cediff(s, beta)?;
    if !d.is_zero() {
        return Err(Error::NotSymplectic {
            reason: format!("d beta = {}", s.render_form(&d)),
        });
    }
    if pfaffian(&beta.skew_matrix())?.is_zero() {
        return Err(Error::NotSymplectic {
            reason: "degenerate".into(),
        });
    }
    Ok(())
}

/// Rows of `E -> upper triangle of E^T B + B E`.
fn symplectic_equations(beta: &KForm) -> Vec<Vector> {
    let b = beta.skew_matrix();
    let n = b.rows();
    let mut rows = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            // beta(E e_x, e_y) + beta(e_x, E e_y) = sum_m E[m][x] B[m][y] + B[x][m] E[m][y]
            let mut row = vec![Rat::zero(); n * n];
            for m in 0..n {
                row[m * n + x] += &b[(m, y)];
                row[m * n + y] += &b[(x, m)];
            }
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    rows
}

/// `{ E in Der(s) : beta(E., .) + beta(., E.) = 0 }`.
pub fn symplectic_derivations(s: &LieAlgebra, beta: &KForm) -> Result<DerivationSpace> {
    check_symplectic(s, beta)?;
    let mut rows = derivation_equations(s);
    rows.extend(symplectic_equations(beta));
    Ok(space_from_equations(s.dim(), rows))
}

fn is_symplectic_derivation(s: &LieAlgebra, beta: &KForm, e: &Mat<Rat>) -> bool {
    let b = beta.skew_matrix();
    is_derivation(s, e) && e.transpose().mul(&b).add(&b.mul(e)).is_zero()
}

/// `R U + R V + s` with `[X,Y] = beta(X,Y) V + [X,Y]_s`, `[U,X] = E X`,
/// basis `(U, V, s)`, `theta = U*`, `eta = V*` and
/// `omega = d eta - theta ^ eta`.
#[derive(Clone, Debug)]
pub struct DoubleExtension {
    pub algebra: LieAlgebra,
    pub eta: KForm,
    pub lcs: LcsStructure,
}

pub fn double_extension(s: &LieAlgebra, beta: &KForm, e: &Mat<Rat>) -> Result<DoubleExtension> {
    check_symplectic(s, beta)?;
    if e.rows() != s.dim() || e.cols() != s.dim() || !is_symplectic_derivation(s, beta, e) {
        return Err(Error::NotSymplecticDerivation);
    }
    let m = s.dim();
    let n = m + 2;
    let lift = |v: &[Rat]| -> Vector {
        [Rat::zero(), Rat::zero()]
            .into_iter()
            .chain(v.iter().cloned())
            .collect()
    };
    let mut brackets = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut v = lift(&s.bracket_basis(i, j));
            v[1] = beta.coeff(&[i, j]);
            brackets.push((i + 2, j + 2, v));
        }
        brackets.push((0, i + 2, lift(&e.col(i))));
    }
    let g = LieAlgebra::new(n, brackets)?.with_offset(0);
    let g = match s.name() {
        Some(name) => g.named(&format!("double extension of {name}")),
        None => g,
    };
    let theta = KForm::e(n, 0);
    let eta = KForm::e(n, 1);
    let omega = twisted_diff(&g, &theta, &eta)?;
    let lcs = verify_lcs(&g, &omega, &theta)?;
    Ok(DoubleExtension {
        algebra: g,
        eta,
        lcs,
    })
}

/// `char(ad_X on g) = x^2 char(ad_X on s)` for each basis `X` of `s`, and
/// `char(ad_U) = x^2 char(E)`. In particular
/// `Spec(ad_X^s) + {0} = Spec(ad_X^g)`.
pub fn block_spectrum_identity(
    s: &LieAlgebra,
    e: &Mat<Rat>,
    ext: &DoubleExtension,
) -> Result<bool> {
    let g = &ext.algebra;
    let x2 = Poly::monomial(Rat::from_integer(1.into()), 2);
    for i in 0..s.dim() {
        let lhs = char_poly(&g.ad_basis(i + 2))?;
        let rhs = &x2 * &char_poly(&s.ad_basis(i))?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(char_poly(&g.ad_basis(0))? == &x2 * &char_poly(e)?)
}
