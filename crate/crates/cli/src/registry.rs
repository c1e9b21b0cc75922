//! Names of every check record the driver can emit, the family that
//! selects it, and the identity it tests.

use matbiorth_rhp::Family;

#[derive(Clone, Copy, Debug)]
pub struct CheckInfo {
    /// Value of `check` in verify.json.
    pub name: &'static str,
    /// Name accepted in the config `checks` list.
    pub family: &'static str,
    pub identity: &'static str,
    pub tolerance: &'static str,
}

const fn info(name: &'static str, family: &'static str, identity: &'static str, tolerance: &'static str) -> CheckInfo {
    CheckInfo { name, family, identity, tolerance }
}

pub const MOMENT_CROSS_ORACLE: &str = "moment_cross_oracle";
pub const BIORTHOGONALITY: &str = "biorthogonality";

pub const CHECKS: &[CheckInfo] = &[
    info(
        MOMENT_CROSS_ORACLE,
        MOMENT_CROSS_ORACLE,
        "quadrature moments W_n equal the moments generated by the Pearson recurrence",
        "max(10 err_est, 1e-9 max|W_n|) absolute",
    ),
    info(
        BIORTHOGONALITY,
        BIORTHOGONALITY,
        "<P_n^L, P_m^R> = delta_nm C_n^-1 for m <= n_max",
        "1e-9 relative to |C_n^-1|",
    ),
    info("det_y_left", "det_y", "det Y_n^L(z) = 1", "1e-7"),
    info("det_y_right", "det_y", "det Y_n^R(z) = 1", "1e-7"),
    info("corollary_1", "corollary", "Q_n P_{n-1}^R - P_n Q_{n-1}^R = C_{n-1}^-1", "1e-7 relative"),
    info("corollary_2", "corollary", "P_{n-1} Q_n^R - Q_{n-1} P_n^R = C_{n-1}^-1", "1e-7 relative"),
    info("corollary_3", "corollary", "Q_n P_n^R - P_n Q_n^R = 0", "1e-7 relative"),
    info("y_left_right", "y_left_right", "Y_n^R = J (Y_n^L)^-1 J^-1", "1e-7 relative"),
    info("transfer_left", "transfer", "Y_{n+1}^L = T_n^L Y_n^L", "1e-7 relative"),
    info("transfer_right", "transfer", "Y_{n+1}^R = Y_n^R T_n^R", "1e-7 relative"),
    info(
        "y_derivative_left",
        "y_derivative",
        "kernel derivative of Y_n^L equals its Richardson difference quotient",
        "1e-6 relative",
    ),
    info(
        "y_derivative_right",
        "y_derivative",
        "kernel derivative of Y_n^R equals its Richardson difference quotient",
        "1e-6 relative",
    ),
    info(
        "structure_numeric_left",
        "structure_numeric",
        "explicit M~_n^L(z) = z Z_n^L'(z) Z_n^L(z)^-1",
        "max(1e-6, 10 h^2) relative",
    ),
    info(
        "structure_numeric_right",
        "structure_numeric",
        "explicit M~_n^R(z) = z Z_n^R(z)^-1 Z_n^R'(z)",
        "max(1e-6, 10 h^2) relative",
    ),
    info("structure_residue_left", "structure_residue", "residue of M_n^L at 0 equals M~_n^L(0)", "1e-5 relative"),
    info("structure_residue_right", "structure_residue", "residue of M_n^R at 0 equals M~_n^R(0)", "1e-5 relative"),
    info(
        "zero_curvature_left",
        "zero_curvature",
        "M~_{n+1}^L T_n^L - T_n^L M~_n^L = z diag(I, 0) as polynomials",
        "1e-8 coefficientwise relative",
    ),
    info(
        "zero_curvature_right",
        "zero_curvature",
        "T_n^R M~_{n+1}^R - M~_n^R T_n^R = z diag(I, 0) as polynomials",
        "1e-8 coefficientwise relative",
    ),
    info("ode_first_order_left", "ode_first_order", "z Y_n^L' + Y_n^L diag(h^L, -h^R) = M~_n^L Y_n^L", "1e-6 relative"),
    info(
        "ode_first_order_right",
        "ode_first_order",
        "z Y_n^R' + diag(h^R, -h^L) Y_n^R = Y_n^R M~_n^R",
        "1e-6 relative",
    ),
    info(
        "ode_second_order_left",
        "ode_second_order",
        "z Y'' + Y' diag(2h^L + I, -2h^R + I) + Y diag(N(h^L), N(-h^R)) = N(M~_n^L) Y",
        "1e-5 relative",
    ),
    info("ode_second_order_right", "ode_second_order", "mirror of ode_second_order_left for Y_n^R", "1e-5 relative"),
    info("eigen_left", "eigenvalue", "L^L(P_n^L) = lambda_n^L P_n^L", "1e-8 relative"),
    info("eigen_right", "eigenvalue", "L^R(P_n^R) = P_n^R lambda_n^R", "1e-8 relative"),
    info("eigen_intertwining", "eigenvalue", "lambda_n^L C_n^-1 = C_n^-1 lambda_n^R", "1e-8 relative"),
    info(
        "second_kind_eigen_left",
        "eigenvalue",
        "z Q_n'' + Q_n'(-2h^R + I) + Q_n(alpha^R - 2A^R) = lambda_n^L Q_n",
        "1e-6 relative",
    ),
    info("second_kind_eigen_right", "eigenvalue", "mirror of second_kind_eigen_left for Q_n^R", "1e-6 relative"),
    info("adjointness", "adjointness", "<l^L P, Q> = <P, l^R Q> for monomial pairs up to degree 3", "1e-7 relative"),
];

pub fn lookup(family: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.family == family)
}

pub fn by_name(name: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.name == name)
}

/// Family names in registry order, without repeats.
pub fn names() -> Vec<&'static str> {
    let mut out: Vec<&'static str> = Vec::new();
    for c in CHECKS {
        if !out.contains(&c.family) {
            out.push(c.family);
        }
    }
    out
}

/// Families handed to the verification suite; all when `checks` is empty.
pub fn suite_families(checks: &[String]) -> Vec<Family> {
    if checks.is_empty() {
        return Family::ALL.to_vec();
    }
    checks.iter().filter_map(|c| Family::from_name(c)).collect()
}

pub fn selected(checks: &[String], family: &str) -> bool {
    checks.is_empty() || checks.iter().any(|c| c == family)
}
