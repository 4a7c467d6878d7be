#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "crflat/jet.hpp"
#include "crflat/rational.hpp"

namespace crflat {

/// Phi_(j) = w_n H_{zbar_j} - w_j H_{zbar_n} for a real homogeneous H of
/// degree m; result is homogeneous of degree m.
Jet phi_of(const Jet& H, int j, const std::vector<Rat>& lambda);

/// Psi_(jk) = w_n wbar_n (Phi_(j))_k - w_n wbar_k (Phi_(j))_n + wbar_k Phi_(j),
/// homogeneous of degree m+1.
Jet psi_of(const Jet& H, int j, int k, const std::vector<Rat>& lambda);

/// Residuals of the reduced non-minimality system on the leading part H:
/// first the k-family (1 < k < n), then the (j,k)-family (1 < j,k < n), then
///   (|w_n|^2+|w_1|^2)(wbar_n Psi_1 - wbar_1 Psi_n)
///     + (2 lambda_n w_n wbar_1 - 2 lambda_1 w_1 wbar_n) Psi
/// with Psi = Psi_(11). The first two families are empty when n = 2.
std::vector<Jet> addnew_residuals(const Jet& H, const std::vector<Rat>& lambda);

/// Coefficients of H, Phi and Psi restricted to the (z_1, z_n) slice:
/// X_[t s r h] = coefficient of z_n^t z_1^s zbar_n^r zbar_1^h. Totals are
/// m for H and Phi tables and m+1 for Psi tables. Reads with any negative
/// index return zero.
class CoeffTable {
  public:
    enum class Kind { H, Phi, Psi };

    /// Builds the H table of a degree-m jet (entries off the (z_1,z_n) slice
    /// are ignored); xi = 2 lambda_n, eta = 2 lambda_1.
    CoeffTable(const Jet& H, const Rat& xi, const Rat& eta);

    Kind kind() const { return kind_; }
    int m() const { return m_; }
    /// Index total of stored entries (m for H/Phi, m+1 for Psi).
    int total() const { return total_; }
    const Rat& xi() const { return xi_; }
    const Rat& eta() const { return eta_; }
    const Rat& theta() const { return theta_; }

    CNum at(int t, int s, int r, int h) const;

    /// Derived tables by the slice recursions.
    CoeffTable phi_table() const;   // from an H table
    CoeffTable psi_table() const;   // from a Phi table

  private:
    CoeffTable(Kind k, int m, int total, Rat xi, Rat eta);
    void set(int t, int s, int r, int h, const CNum& c);

    Kind kind_;
    int m_, total_;
    Rat xi_, eta_, theta_;
    std::map<std::array<int, 4>, CNum> v_;
};

/// Single slice coefficients straight from the recursions (negative-index
/// terms read as zero). Index totals must be m for phi and m+1 for psi.
CNum phi_coeff(const CoeffTable& htable, int t, int s, int r, int h);
CNum psi_coeff(const CoeffTable& htable, int t, int s, int r, int h);

/// The combination of Psi slice coefficients that equals the coefficient of
/// z_n^t z_1^{s-1} zbar_n^{r+3} zbar_1^h in the third reduced residual.
/// Requires t >= 0, s >= 1, r >= -3, t+s+r+h = m+1.
CNum master_coeff_residual(const CoeffTable& htable, int t, int s, int r, int h);

/// Binomially weighted column sum
///   X^(k)_[s h] = sum_t (-xi)^{T-t-s-h} C(t,k) X_[t s (T-t-s-h) h],
/// T the table total. Zero for k < 0 or s < 0 or h < 0.
CNum k_weighted(const CoeffTable& table, int k, int s, int h);

struct LemkResult {
    bool premise_ok = true;
    std::array<int, 4> violating_index{0, 0, 0, 0};
    std::array<CNum, 3> residuals;  // the three weighted-identity residuals
};

/// Residuals of the three k-weighted identities relating Phi^(k), Psi^(k)
/// and H^(k) under the vanishing premise indexed by h0:
///   Psi_[tsrh] = Phi_[tsrh] = 0 for h <= h0,  H_[tsrh] = 0 for max(s,h) <= h0.
/// The first two check the weighted transforms of the Phi and Psi recursions;
/// the third checks the weighted Psi-column combination against the
/// binomially weighted reduced-system coefficients (the combination alone
/// vanishes only when the reduced system does). Requires xi != 0.
LemkResult lemk_residuals(const Jet& H, const std::vector<Rat>& lambda, int h0, int k, int s);

}  // namespace crflat
