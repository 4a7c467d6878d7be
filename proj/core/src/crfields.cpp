#include "crflat/crfields.hpp"

#include <stdexcept>

namespace crflat {

namespace {

const CNum kI = CNum::i();
const CNum kTwoI = CNum(Rat(0), Rat(2));

void check_jk(const ManifoldJet& m, int j, int k) {
    if (j < 1 || j > m.n - 1 || k < 1 || k > m.n - 1)
        throw std::invalid_argument("bracket index out of range [1, n-1]");
}

}  // namespace

FieldCoeffs field_coeffs(const ManifoldJet& m) {
    const Jet G = m.G_jet();
    const Jet& E = m.E;
    FieldCoeffs fc;
    const Jet Gn = diff(G, m.n, false), En = diff(E, m.n, false);
    fc.A = Gn - En.scaled(kI);
    fc.B.reserve(m.n - 1);
    fc.C.reserve(m.n - 1);
    for (int j = 1; j <= m.n - 1; ++j) {
        const Jet Gj = diff(G, j, false), Ej = diff(E, j, false);
        fc.B.push_back(Gj - Ej.scaled(kI));
        fc.C.push_back((mul(Gn, Ej) - mul(Gj, En)).scaled(kTwoI));
    }
    return fc;
}

BracketCoeffs bracket_coeffs(const ManifoldJet& m, int j, int k) {
    check_jk(m, j, k);
    const FieldCoeffs fc = field_coeffs(m);
    const Jet& A = fc.A;
    const Jet& Bj = fc.B[j - 1];
    const Jet& Cj = fc.C[j - 1];
    const Jet Ab = conj_series(A);
    const Jet Bkb = conj_series(fc.B[k - 1]);
    const Jet Ckb = conj_series(fc.C[k - 1]);

    BracketCoeffs out;
    // lambda_(1jk) = A (Ab)_j - B_(j) (Ab)_n
    out.lam[0] = mul(A, diff(Ab, j, false)) - mul(Bj, diff(Ab, m.n, false));
    // lambda_(2jk) = -A (Bkb)_j + B_(j) (Bkb)_n
    out.lam[1] = mul(Bj, diff(Bkb, m.n, false)) - mul(A, diff(Bkb, j, false));
    // lambda_(3jk) = A (Ckb)_j - B_(j) (Ckb)_n
    out.lam[2] = mul(A, diff(Ckb, j, false)) - mul(Bj, diff(Ckb, m.n, false));
    // lambda_(4jk) = -Ab A_{kbar} + Bkb A_{nbar}
    out.lam[3] = mul(Bkb, diff(A, m.n, true)) - mul(Ab, diff(A, k, true));
    // lambda_(5jk) = Ab (B_(j))_{kbar} - Bkb (B_(j))_{nbar}
    out.lam[4] = mul(Ab, diff(Bj, k, true)) - mul(Bkb, diff(Bj, m.n, true));
    // lambda_(6jk) = -Ab (C_(j))_{kbar} + Bkb (C_(j))_{nbar}
    out.lam[5] = mul(Bkb, diff(Cj, m.n, true)) - mul(Ab, diff(Cj, k, true));
    return out;
}

GammaCoeffs gamma_coeffs(const ManifoldJet& m) {
    const FieldCoeffs fc = field_coeffs(m);
    const Jet& A = fc.A;
    const Jet& B1 = fc.B[0];
    const Jet& C1 = fc.C[0];
    const BracketCoeffs br = bracket_coeffs(m, 1, 1);
    const int n = m.n;

    auto d1 = [&](const Jet& x) { return diff(x, 1, false); };
    auto dn = [&](const Jet& x) { return diff(x, n, false); };

    GammaCoeffs g;
    for (int i = 0; i < 3; ++i)
        g.G[i] = mul(A, d1(br.lam[i])) - mul(B1, dn(br.lam[i]));
    g.G[3] = mul(A, d1(br.lam[3])) - mul(B1, dn(br.lam[3]))
             - mul(br.lam[0], diff(A, 1, true)) - mul(br.lam[1], diff(A, n, true))
             - mul(br.lam[3], diff(A, 1, false)) - mul(br.lam[4], diff(A, n, false));
    g.G[4] = mul(A, d1(br.lam[4])) - mul(B1, dn(br.lam[4]))
             + mul(br.lam[0], diff(B1, 1, true)) + mul(br.lam[1], diff(B1, n, true))
             + mul(br.lam[3], diff(B1, 1, false)) + mul(br.lam[4], diff(B1, n, false));
    g.G[5] = mul(A, d1(br.lam[5])) - mul(B1, dn(br.lam[5]))
             - mul(br.lam[0], diff(C1, 1, true)) - mul(br.lam[1], diff(C1, n, true))
             - mul(br.lam[3], diff(C1, 1, false)) - mul(br.lam[4], diff(C1, n, false));
    return g;
}

Jet residual_I(const ManifoldJet& m, int j, int k) {
    if (m.n == 2) throw std::invalid_argument("residual_I: not applicable for n = 2");
    if (j < 2 || j > m.n - 1 || k < 2 || k > m.n - 1)
        throw std::invalid_argument("residual_I: indices must lie in [2, n-1]");
    const FieldCoeffs fc = field_coeffs(m);
    const Jet A = fc.A, Ab = conj_series(A);
    const BracketCoeffs bjk = bracket_coeffs(m, j, k);
    const BracketCoeffs b11 = bracket_coeffs(m, 1, 1);
    const Jet Bkb = conj_series(fc.B[k - 1]);
    const Jet B1b = conj_series(fc.B[0]);
    Jet lhs = mul(mul(Ab, bjk.lam[1]) + mul(Bkb, bjk.lam[0]),
                  mul(A, b11.lam[5]) - mul(fc.C[0], b11.lam[3]));
    Jet rhs = mul(mul(Ab, b11.lam[1]) + mul(B1b, b11.lam[0]),
                  mul(A, bjk.lam[5]) - mul(fc.C[j - 1], bjk.lam[3]));
    return lhs - rhs;
}

Jet residual_II(const ManifoldJet& m, int k) {
    if (m.n == 2) throw std::invalid_argument("residual_II: not applicable for n = 2");
    if (k < 2 || k > m.n - 1)
        throw std::invalid_argument("residual_II: index must lie in [2, n-1]");
    const FieldCoeffs fc = field_coeffs(m);
    const Jet A = fc.A, Ab = conj_series(A);
    const BracketCoeffs b1k = bracket_coeffs(m, 1, k);
    const BracketCoeffs b11 = bracket_coeffs(m, 1, 1);
    const Jet Bkb = conj_series(fc.B[k - 1]);
    const Jet B1b = conj_series(fc.B[0]);
    Jet lhs = mul(mul(Ab, b1k.lam[1]) + mul(Bkb, b1k.lam[0]),
                  mul(A, b11.lam[5]) - mul(fc.C[0], b11.lam[3]));
    Jet rhs = mul(mul(Ab, b11.lam[1]) + mul(B1b, b11.lam[0]),
                  mul(A, b1k.lam[5]) - mul(fc.C[0], b1k.lam[3]));
    return lhs - rhs;
}

Jet residual_III(const ManifoldJet& m) {
    const FieldCoeffs fc = field_coeffs(m);
    const Jet Ab = conj_series(fc.A);
    const Jet B1b = conj_series(fc.B[0]);
    const Jet C1b = conj_series(fc.C[0]);
    const BracketCoeffs b11 = bracket_coeffs(m, 1, 1);
    const GammaCoeffs g = gamma_coeffs(m);
    Jet lhs = mul(mul(Ab, g.G[1]) + mul(g.G[0], B1b),
                  mul(Ab, b11.lam[2]) - mul(b11.lam[0], C1b));
    Jet rhs = mul(mul(Ab, g.G[2]) - mul(g.G[0], C1b),
                  mul(Ab, b11.lam[1]) + mul(b11.lam[0], B1b));
    return lhs - rhs;
}

int max_nonminimality_order(const ManifoldJet& m) {
    return m.order - 3;  // residual_III consumes three derivative levels
}

NonminimalReport is_formally_nonminimal(const ManifoldJet& m, int upto) {
    if (upto > max_nonminimality_order(m))
        throw std::invalid_argument("is_formally_nonminimal: order exceeds residual validity");
    NonminimalReport rep;
    rep.checked_order = upto;
    auto check = [&](const Jet& r, const std::string& name) {
        for (const auto& [idx, c] : r.terms()) {
            if (idx.degree() > upto) continue;
            rep.nonminimal = false;
            rep.residual_name = name;
            rep.witness = idx;
            return false;
        }
        return true;
    };
    if (!check(residual_III(m), "III")) return rep;
    for (int k = 2; k <= m.n - 1; ++k)
        if (!check(residual_II(m, k), "II(" + std::to_string(k) + ")")) return rep;
    for (int j = 2; j <= m.n - 1; ++j)
        for (int k = 2; k <= m.n - 1; ++k)
            if (!check(residual_I(m, j, k), "I(" + std::to_string(j) + "," + std::to_string(k) + ")"))
                return rep;
    return rep;
}

Jet slice_residual_n2(const ManifoldJet& m) {
    if (m.n != 2) throw std::invalid_argument("slice_residual_n2: only defined for n = 2");
    Jet psi = m.p - m.E.scaled(kI);
    Jet w1b = conj_series(m.w_jet(1));
    Jet w2b = conj_series(m.w_jet(2));
    return mul(diff(psi, 2, false), w1b) - mul(diff(psi, 1, false), w2b);
}

}  // namespace crflat
