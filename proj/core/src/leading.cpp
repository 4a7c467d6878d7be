#include "crflat/leading.hpp"

#include <stdexcept>

namespace crflat {

namespace {

// Exact-polynomial headroom: degree-m inputs are rebuilt at this validity
// margin so products and derivatives of the reduced system stay exact.
constexpr int kMargin = 6;

Jet as_exact_poly(const Jet& h, int order) {
    Jet out(h.n(), order);
    for (const auto& [idx, c] : h.terms()) out.set_coeff(idx, c);
    return out;
}

int poly_degree(const Jet& h) {
    auto o = ord(h);
    if (!o) return 0;
    int deg = 0;
    for (const auto& [idx, c] : h.terms()) deg = std::max(deg, idx.degree());
    if (deg != *o) throw std::invalid_argument("expected a homogeneous polynomial");
    return deg;
}

Jet w_poly(int n, int order, int i, const std::vector<Rat>& lambda) {
    Jet w = Jet::variable(n, order, i, false);
    w += Jet::variable(n, order, i, true).scaled(CNum(lambda[i - 1] * Rat(2)));
    return w;
}

void check_lambda(const Jet& h, const std::vector<Rat>& lambda) {
    if (static_cast<int>(lambda.size()) != h.n())
        throw std::invalid_argument("lambda length must match the variable count");
}

}  // namespace

Jet phi_of(const Jet& H, int j, const std::vector<Rat>& lambda) {
    check_lambda(H, lambda);
    const int n = H.n();
    if (j < 1 || j > n - 1) throw std::invalid_argument("phi_of: j out of range [1, n-1]");
    const int m = poly_degree(H);
    Jet h = as_exact_poly(H, m + kMargin);
    Jet wn = w_poly(n, m + kMargin, n, lambda);
    Jet wj = w_poly(n, m + kMargin, j, lambda);
    return mul(wn, diff(h, j, true)) - mul(wj, diff(h, n, true));
}

Jet psi_of(const Jet& H, int j, int k, const std::vector<Rat>& lambda) {
    check_lambda(H, lambda);
    const int n = H.n();
    if (k < 1 || k > n - 1) throw std::invalid_argument("psi_of: k out of range [1, n-1]");
    const int m = poly_degree(H);
    const int order = m + kMargin;
    Jet phi = phi_of(H, j, lambda);
    Jet wn = w_poly(n, order, n, lambda);
    Jet wnb = conj_series(wn);
    Jet wkb = conj_series(w_poly(n, order, k, lambda));
    return mul(mul(wn, wnb), diff(phi, k, false)) - mul(mul(wn, wkb), diff(phi, n, false)) +
           mul(wkb, phi);
}

std::vector<Jet> addnew_residuals(const Jet& H, const std::vector<Rat>& lambda) {
    check_lambda(H, lambda);
    const int n = H.n();
    const int m = poly_degree(H);
    const int order = m + kMargin;
    Jet psi11 = psi_of(H, 1, 1, lambda);
    Jet wn = w_poly(n, order, n, lambda);
    Jet w1 = w_poly(n, order, 1, lambda);
    Jet wnb = conj_series(wn), w1b = conj_series(w1);
    Jet wn2 = mul(wn, wnb);             // |w_n|^2
    Jet sum2 = wn2 + mul(w1, w1b);      // |w_n|^2 + |w_1|^2

    std::vector<Jet> out;
    // k family: (|w_n|^2 d_{1k} + wbar_1 w_k) conj(Psi_11) = sum2 conj(Psi_1k)
    for (int k = 2; k <= n - 1; ++k) {
        Jet wk = w_poly(n, order, k, lambda);
        Jet lhs = mul(mul(w1b, wk), conj_series(psi11));
        Jet rhs = mul(sum2, conj_series(psi_of(H, 1, k, lambda)));
        out.push_back(lhs - rhs);
    }
    // (j,k) family
    for (int j = 2; j <= n - 1; ++j)
        for (int k = 2; k <= n - 1; ++k) {
            Jet wk = w_poly(n, order, k, lambda);
            Jet wjb = conj_series(w_poly(n, order, j, lambda));
            Jet factor = mul(wjb, wk);
            if (j == k) factor += wn2;
            Jet lhs = mul(factor, conj_series(psi11));
            Jet rhs = mul(sum2, conj_series(psi_of(H, j, k, lambda)));
            out.push_back(lhs - rhs);
        }
    // sum2 (wbar_n Psi_1 - wbar_1 Psi_n) + (2 l_n w_n wbar_1 - 2 l_1 w_1 wbar_n) Psi
    Jet third = mul(sum2, mul(wnb, diff(psi11, 1, false)) - mul(w1b, diff(psi11, n, false)));
    Jet sw = mul(wn, w1b).scaled(CNum(lambda[n - 1] * Rat(2))) -
             mul(w1, wnb).scaled(CNum(lambda[0] * Rat(2)));
    third += mul(sw, psi11);
    out.push_back(third);
    return out;
}

CoeffTable::CoeffTable(Kind k, int m, int total, Rat xi, Rat eta)
    : kind_(k), m_(m), total_(total), xi_(std::move(xi)), eta_(std::move(eta)) {
    theta_ = Rat(1) - xi_ * xi_;
}

CoeffTable::CoeffTable(const Jet& H, const Rat& xi, const Rat& eta)
    : CoeffTable(Kind::H, 0, 0, xi, eta) {
    const int n = H.n();
    int m = -1;
    for (const auto& [idx, c] : H.terms()) {
        // keep only the (z_1, z_n) slice
        bool on_slice = true;
        for (int i = 1; i < n - 1; ++i)
            if (idx.alpha[i] != 0 || idx.beta[i] != 0) on_slice = false;
        if (!on_slice) continue;
        const int deg = idx.degree();
        if (m < 0) m = deg;
        if (deg != m) throw std::invalid_argument("CoeffTable: slice part not homogeneous");
        v_[{idx.alpha[n - 1], idx.alpha[0], idx.beta[n - 1], idx.beta[0]}] = c;
    }
    if (m < 0) m = 0;
    m_ = m;
    total_ = m;
}

CNum CoeffTable::at(int t, int s, int r, int h) const {
    if (t < 0 || s < 0 || r < 0 || h < 0) return CNum();
    if (t + s + r + h != total_)
        throw std::invalid_argument("CoeffTable::at: index total mismatch");
    auto it = v_.find({t, s, r, h});
    return it == v_.end() ? CNum() : it->second;
}

void CoeffTable::set(int t, int s, int r, int h, const CNum& c) {
    if (!c.is_zero()) v_[{t, s, r, h}] = c;
}

CoeffTable CoeffTable::phi_table() const {
    if (kind_ != Kind::H) throw std::invalid_argument("phi_table: needs an H table");
    CoeffTable out(Kind::Phi, m_, m_, xi_, eta_);
    for (int t = 0; t <= m_; ++t)
        for (int s = 0; s + t <= m_; ++s)
            for (int r = 0; r + s + t <= m_; ++r)
                out.set(t, s, r, m_ - t - s - r, phi_coeff(*this, t, s, r, m_ - t - s - r));
    return out;
}

CoeffTable CoeffTable::psi_table() const {
    if (kind_ != Kind::H) throw std::invalid_argument("psi_table: needs an H table");
    CoeffTable out(Kind::Psi, m_, m_ + 1, xi_, eta_);
    const int T = m_ + 1;
    for (int t = 0; t <= T; ++t)
        for (int s = 0; s + t <= T; ++s)
            for (int r = 0; r + s + t <= T; ++r)
                out.set(t, s, r, T - t - s - r, psi_coeff(*this, t, s, r, T - t - s - r));
    return out;
}

namespace {

CNum h_at(const CoeffTable& ht, int t, int s, int r, int h) {
    if (t < 0 || s < 0 || r < 0 || h < 0) return CNum();
    return ht.at(t, s, r, h);
}

CNum phi_at(const CoeffTable& ht, int t, int s, int r, int h) {
    if (t < 0 || s < 0 || r < 0 || h < 0) return CNum();
    return phi_coeff(ht, t, s, r, h);
}

CNum psi_at(const CoeffTable& ht, int t, int s, int r, int h) {
    if (t < 0 || s < 0 || r < 0 || h < 0) return CNum();
    return psi_coeff(ht, t, s, r, h);
}

CNum cr(const Rat& r) { return CNum(r); }

}  // namespace

CNum phi_coeff(const CoeffTable& ht, int t, int s, int r, int h) {
    if (ht.kind() != CoeffTable::Kind::H)
        throw std::invalid_argument("phi_coeff: needs an H table");
    if (t + s + r + h != ht.m())
        throw std::invalid_argument("phi_coeff: index total must be m");
    const Rat &xi = ht.xi(), &eta = ht.eta();
    CNum v = h_at(ht, t, s, r - 1, h + 1) * cr(xi * Rat(h + 1));
    v += h_at(ht, t - 1, s, r, h + 1) * cr(Rat(h + 1));
    v -= h_at(ht, t, s - 1, r + 1, h) * cr(Rat(r + 1));
    v -= h_at(ht, t, s, r + 1, h - 1) * cr(eta * Rat(r + 1));
    return v;
}

CNum psi_coeff(const CoeffTable& ht, int t, int s, int r, int h) {
    if (ht.kind() != CoeffTable::Kind::H)
        throw std::invalid_argument("psi_coeff: needs an H table");
    if (t + s + r + h != ht.m() + 1)
        throw std::invalid_argument("psi_coeff: index total must be m+1");
    const Rat &xi = ht.xi(), &eta = ht.eta();
    const Rat xi2 = xi * xi;
    CNum v = (phi_at(ht, t, s + 1, r - 2, h) * cr(xi) +
              phi_at(ht, t - 1, s + 1, r - 1, h) * cr(Rat(1) + xi2) +
              phi_at(ht, t - 2, s + 1, r, h) * cr(xi)) *
             cr(Rat(s + 1));
    v -= phi_at(ht, t + 1, s, r - 1, h - 1) * cr(xi * Rat(t + 1));
    v -= phi_at(ht, t, s, r, h - 1) * cr(Rat(t));
    v -= phi_at(ht, t + 1, s - 1, r - 1, h) * cr(xi * eta * Rat(t + 1));
    v -= phi_at(ht, t, s - 1, r, h) * cr(eta * Rat(t));
    v += phi_at(ht, t, s, r, h - 1);
    v += phi_at(ht, t, s - 1, r, h) * cr(eta);
    return v;
}

CNum master_coeff_residual(const CoeffTable& ht, int t, int s, int r, int h) {
    if (ht.kind() != CoeffTable::Kind::H)
        throw std::invalid_argument("master_coeff_residual: needs an H table");
    if (t < 0 || s < 1 || r < -3 || h < 0)
        throw std::invalid_argument("master_coeff_residual: index out of range");
    if (t + s + r + h != ht.m() + 1)
        throw std::invalid_argument("master_coeff_residual: index total must be m+1");
    const Rat &xi = ht.xi(), &eta = ht.eta();
    const Rat xi2 = xi * xi, eta2 = eta * eta;
    auto P = [&](int a, int b, int c, int d) { return psi_at(ht, a, b, c, d); };

    CNum v = (P(t, s, r, h) * cr(xi) + P(t - 1, s, r + 1, h) * cr(xi2 * 2 + 1) +
              P(t - 2, s, r + 2, h) * cr(xi2 * xi + xi * 2) + P(t - 3, s, r + 3, h) * cr(xi2)) *
             cr(Rat(s));
    v += (P(t, s, r + 2, h - 2) + P(t - 1, s, r + 3, h - 2) * cr(xi)) * cr(eta * Rat(s));
    v += (P(t, s - 1, r + 2, h - 1) + P(t - 1, s - 1, r + 3, h - 1) * cr(xi)) *
         cr((Rat(1) + eta2) * Rat(s - 1));
    v += (P(t, s - 2, r + 2, h) + P(t - 1, s - 2, r + 3, h) * cr(xi)) * cr(eta * Rat(s - 2));
    v -= P(t + 1, s - 1, r + 1, h - 1) * cr(xi * Rat(t + 1)) +
         P(t, s - 1, r + 2, h - 1) * cr((Rat(1) + xi2) * Rat(t)) +
         P(t - 1, s - 1, r + 3, h - 1) * cr(xi * Rat(t - 1));
    v -= (P(t + 1, s - 2, r + 1, h) * cr(xi * Rat(t + 1)) +
          P(t, s - 2, r + 2, h) * cr((Rat(1) + xi2) * Rat(t)) +
          P(t - 1, s - 2, r + 3, h) * cr(xi * Rat(t - 1))) *
         cr(eta);
    v -= (P(t + 1, s - 1, r + 3, h - 3) * cr(eta) +
          P(t + 1, s - 2, r + 3, h - 2) * cr(eta2 * 2 + 1) +
          P(t + 1, s - 3, r + 3, h - 1) * cr(eta2 * eta + eta * 2) +
          P(t + 1, s - 4, r + 3, h) * cr(eta2)) *
         cr(Rat(t + 1));
    v += (P(t, s - 1, r + 2, h - 1) * cr(xi) + P(t - 1, s - 1, r + 3, h - 1)) * cr(xi);
    v += (P(t, s - 2, r + 2, h) * cr(xi) + P(t - 1, s - 2, r + 3, h)) * cr(xi * eta);
    v -= (P(t, s - 1, r + 2, h - 1) * cr(eta) + P(t - 1, s - 1, r + 3, h - 1) * cr(xi * eta) +
          P(t, s - 2, r + 2, h) + P(t - 1, s - 2, r + 3, h) * cr(xi)) *
         cr(eta);
    return v;
}

CNum k_weighted(const CoeffTable& table, int k, int s, int h) {
    if (k < 0 || s < 0 || h < 0) return CNum();
    const int T = table.total();
    CNum v;
    for (int t = k; t <= T - s - h; ++t) {
        const Rat w = (-table.xi()).pow(T - t - s - h) * Rat(binomial(t, k));
        v += table.at(t, s, T - t - s - h, h) * CNum(w);
    }
    return v;
}

LemkResult lemk_residuals(const Jet& H, const std::vector<Rat>& lambda, int h0, int k, int s) {
    check_lambda(H, lambda);
    if (h0 < -1) throw std::invalid_argument("lemk_residuals: h0 must be >= -1");
    if (k < 0 || s < 0) throw std::invalid_argument("lemk_residuals: k, s must be >= 0");
    const int n = H.n();
    const Rat xi = lambda[n - 1] * Rat(2);
    const Rat eta = lambda[0] * Rat(2);
    if (xi.is_zero()) throw std::domain_error("lemk_residuals: xi = 2*lambda_n must be nonzero");

    CoeffTable ht(H, xi, eta);
    const int m = ht.m();
    CoeffTable pt = ht.phi_table();
    CoeffTable qt = ht.psi_table();

    LemkResult res;
    // premise: Psi,Phi vanish for h <= h0; H vanishes for max(s,h) <= h0
    auto scan = [&](const CoeffTable& tab, bool h_only) {
        const int T = tab.total();
        for (int t = 0; t <= T; ++t)
            for (int ss = 0; ss + t <= T; ++ss)
                for (int r = 0; r + ss + t <= T; ++r) {
                    const int hh = T - t - ss - r;
                    const bool in_premise = h_only ? (hh <= h0) : (std::max(ss, hh) <= h0);
                    if (in_premise && !tab.at(t, ss, r, hh).is_zero()) {
                        res.premise_ok = false;
                        res.violating_index = {t, ss, r, hh};
                        return false;
                    }
                }
        return true;
    };
    if (!scan(qt, true) || !scan(pt, true) || !scan(ht, false)) return res;

    const Rat theta = ht.theta();
    auto Hk = [&](int kk, int ss, int hh) { return k_weighted(ht, kk, ss, hh); };
    auto Fk = [&](int kk, int ss, int hh) { return k_weighted(pt, kk, ss, hh); };
    auto Pk = [&](int kk, int ss, int hh) { return k_weighted(qt, kk, ss, hh); };

    // weighted transform of the Phi recursion
    CNum rhs1 = (Hk(k, s, h0 + 2) * cr(theta) + Hk(k - 1, s, h0 + 2)) * cr(Rat(h0 + 2));
    rhs1 += (Hk(k, s - 1, h0 + 1) * cr(Rat(m - s - h0 - k)) - Hk(k + 1, s - 1, h0 + 1) * cr(Rat(k + 1))) *
            cr(Rat(1) / xi);
    res.residuals[0] = Fk(k, s, h0 + 1) - rhs1;

    // weighted transform of the Psi recursion
    CNum rhs2 = (Fk(k - 1, s + 1, h0 + 1) * cr(xi * theta) + Fk(k - 2, s + 1, h0 + 1) * cr(xi)) *
                cr(Rat(s + 1));
    rhs2 -= Fk(k + 1, s - 1, h0 + 1) * cr(eta * theta * Rat(k + 1));
    rhs2 -= Fk(k, s - 1, h0 + 1) * cr(eta * Rat(k - 1));
    res.residuals[1] = Pk(k, s, h0 + 1) - rhs2;

    // weighted transform of the third reduced equation. The combination
    //   s xi^2 theta Psi^(k-2) + s xi^2 Psi^(k-3)
    //     - xi eta ((k-1) theta Psi^(k) + (k+1-s) Psi^(k-1)) - (k+1) eta^2 Psi^(k+1)
    // equals the binomially weighted column sum of the reduced-system
    // coefficients; the residual is their difference. When the reduced
    // system itself vanishes this is the classical relation between the
    // weighted Psi columns.
    CNum lhs3 = Pk(k - 2, s, h0 + 1) * cr(Rat(s) * xi * xi * theta) +
                Pk(k - 3, s, h0 + 1) * cr(Rat(s) * xi * xi);
    CNum rhs3 = (Pk(k, s - 2, h0 + 1) * cr(theta * Rat(k - 1)) +
                 Pk(k - 1, s - 2, h0 + 1) * cr(Rat(k + 1 - s))) *
                cr(xi * eta);
    rhs3 += Pk(k + 1, s - 4, h0 + 1) * cr(eta * eta * Rat(k + 1));
    CNum weighted_master;
    if (s >= 1) {
        for (int t = 0; t <= m - s - h0 + 3; ++t) {
            const int r = m - t - s - h0;  // index total m+1 with h = h0+1
            if (r < -3) continue;
            const Rat w = (-xi).pow(r + 3) * Rat(binomial(t, k));
            weighted_master += master_coeff_residual(ht, t, s, r, h0 + 1) * cr(w);
        }
    }
    res.residuals[2] = lhs3 - rhs3 - weighted_master;
    return res;
}

}  // namespace crflat
