#pragma once

#include <array>
#include <optional>
#include <vector>

#include "crflat/manifold.hpp"

namespace crflat {

/// Coefficients of the tangent fields L_j = A d/dz_j - B_(j) d/dz_n + C_(j) d/dw:
///   A = G_n - iE_n,  B_(j) = G_j - iE_j,  C_(j) = 2i (G_n E_j - G_j E_n),
/// all valid to order - 1.
struct FieldCoeffs {
    Jet A;
    std::vector<Jet> B;  // B[j-1] = B_(j), 1 <= j <= n-1
    std::vector<Jet> C;  // C[j-1] = C_(j)
};

FieldCoeffs field_coeffs(const ManifoldJet& m);

/// The six coefficients lambda_(1jk)..lambda_(6jk) of the bracket [L_j, conj(L_k)].
struct BracketCoeffs {
    std::array<Jet, 6> lam;  // lam[i-1] = lambda_(i j k)
};

BracketCoeffs bracket_coeffs(const ManifoldJet& m, int j, int k);

/// The six coefficients Gamma_(1)..Gamma_(6) of [L_1, T], T = [L_1, conj(L_1)].
struct GammaCoeffs {
    std::array<Jet, 6> G;
};

GammaCoeffs gamma_coeffs(const ManifoldJet& m);

/// LHS - RHS of the three identities that characterize formal non-minimality
/// after eliminating the span coefficients. Each jet reports its own
/// guaranteed validity order.
Jet residual_I(const ManifoldJet& m, int j, int k);   // 2 <= j,k <= n-1
Jet residual_II(const ManifoldJet& m, int k);         // 2 <= k <= n-1
Jet residual_III(const ManifoldJet& m);

struct NonminimalReport {
    bool nonminimal = true;
    int checked_order = 0;
    // witness when not non-minimal: which residual and which monomial
    std::string residual_name;
    std::optional<MultiIndex> witness;
};

/// True iff every applicable residual vanishes through total degree `upto`.
NonminimalReport is_formally_nonminimal(const ManifoldJet& m, int upto);

/// Largest order is_formally_nonminimal can check for this manifold.
int max_nonminimality_order(const ManifoldJet& m);

/// n = 2 only: with psi = p - iE, the jet
///   psi_2 (zb_1 + 2 lambda_1 z_1) - psi_1 (zb_2 + 2 lambda_2 z_2),
/// which vanishes exactly when the manifold is non-minimal at its CR points.
Jet slice_residual_n2(const ManifoldJet& m);

}  // namespace crflat
