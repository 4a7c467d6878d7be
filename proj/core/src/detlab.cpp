#include "crflat/detlab.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

namespace crflat {

using nlohmann::ordered_json;

MatKind mat_kind_from_string(const std::string& s) {
    if (s == "D") return MatKind::D;
    if (s == "S") return MatKind::S;
    if (s == "Rplus") return MatKind::Rplus;
    if (s == "Rminus") return MatKind::Rminus;
    if (s == "N") return MatKind::N;
    if (s == "T") return MatKind::T;
    throw std::invalid_argument("unknown matrix kind '" + s + "'");
}

std::string to_string(MatKind k) {
    switch (k) {
        case MatKind::D: return "D";
        case MatKind::S: return "S";
        case MatKind::Rplus: return "Rplus";
        case MatKind::Rminus: return "Rminus";
        case MatKind::N: return "N";
        case MatKind::T: return "T";
    }
    return "?";
}

namespace {

UniPoly c(long a, long b) { return UniPoly(Rat(binomial(a, b))); }

UniPoly xi_pow(int e) { return UniPoly::monomial(e, Rat(1)); }

// (-xi)^e
UniPoly neg_xi_pow(int e) { return UniPoly::monomial(e, e % 2 == 0 ? Rat(1) : Rat(-1)); }

UniPoly r_entry(bool plus, int mh, int i, int j) {
    const UniPoly xi2 = xi_pow(2);
    UniPoly v;
    if (j <= mh - 1) {
        v = c(4 * mh - 2 - j, 2 * i - 1) - xi2 * c(4 * mh - 3 - j, 2 * i - 1);
        UniPoly tail =
            c(2 * mh - 1 + j, 2 * i - 1) - xi2 * c(2 * mh - 2 + j, 2 * i - 1);
        UniPoly w = neg_xi_pow(2 * mh - 1 - 2 * j) * tail;
        v += plus ? w : -w;
    } else {
        v = c(5 * mh - 2 - j, 2 * i - 1).scaled(Rat(mh - 1 + j));
        UniPoly w = neg_xi_pow(4 * mh - 1 - 2 * j) * c(mh - 1 + j, 2 * i - 1).scaled(Rat(5 * mh - 2 - j));
        v += plus ? w : -w;
    }
    return v;
}

UniPoly n_entry(int mh, int i, int j) {
    const UniPoly xi2 = xi_pow(2);
    if (j <= mh - 2)
        return c(4 * mh - 2 - j, 2 * i - 1) - xi2 * c(4 * mh - 3 - j, 2 * i - 1) +
               xi_pow(2 * mh - 2 - 2 * j) *
                   (c(2 * mh + j, 2 * i - 1) - xi2 * c(2 * mh - 1 + j, 2 * i - 1));
    if (j == mh - 1) return c(3 * mh - 1, 2 * i - 1) - xi2 * c(3 * mh - 2, 2 * i - 1);
    if (j <= 2 * mh - 2)
        return c(5 * mh - 2 - j, 2 * i - 1).scaled(Rat(mh + j)) +
               xi_pow(4 * mh - 2 - 2 * j) * c(mh + j, 2 * i - 1).scaled(Rat(5 * mh - 2 - j));
    return c(3 * mh - 1, 2 * i - 1).scaled(Rat(3 * mh - 1));  // j == 2 mh - 1
}

UniPoly t_entry(int mh, int i, int j) {
    const UniPoly xi2 = xi_pow(2);
    if (j <= mh - 1)
        return c(4 * mh - 1 - j, 2 * i + 1) - xi2 * c(4 * mh - 2 - j, 2 * i + 1) -
               xi_pow(2 * mh - 2 * j) *
                   (c(2 * mh - 1 + j, 2 * i + 1) - xi2 * c(2 * mh - 2 + j, 2 * i + 1));
    return c(5 * mh - 2 - j, 2 * i + 1).scaled(Rat(mh + j)) -
           xi_pow(4 * mh - 2 - 2 * j) * c(mh + j, 2 * i + 1).scaled(Rat(5 * mh - 2 - j));
}

}  // namespace

StructuredMatrix build_matrix(MatKind kind, int mhat) {
    const int min_mh = (kind == MatKind::D || kind == MatKind::S) ? 1 : 2;
    if (mhat < min_mh) throw std::invalid_argument("build_matrix: mhat too small for this family");
    StructuredMatrix sm{kind, mhat, Mat<UniPoly>()};
    switch (kind) {
        case MatKind::D: {
            sm.entries = Mat<UniPoly>(mhat, mhat);
            for (int i = 1; i <= mhat; ++i)
                for (int j = 1; j <= mhat; ++j) sm.entries(i - 1, j - 1) = c(2 * mhat - j, 2 * i - 2);
            break;
        }
        case MatKind::S: {
            sm.entries = Mat<UniPoly>(mhat, mhat);
            for (int i = 1; i <= mhat; ++i)
                for (int j = 1; j <= mhat; ++j)
                    sm.entries(i - 1, j - 1) = c(2 * mhat + 1 - j, 2 * i - 1);
            break;
        }
        case MatKind::Rplus:
        case MatKind::Rminus: {
            const int sz = 2 * mhat - 1;
            sm.entries = Mat<UniPoly>(sz, sz);
            for (int i = 1; i <= sz; ++i)
                for (int j = 1; j <= sz; ++j)
                    sm.entries(i - 1, j - 1) = r_entry(kind == MatKind::Rplus, mhat, i, j);
            break;
        }
        case MatKind::N: {
            const int sz = 2 * mhat - 1;
            sm.entries = Mat<UniPoly>(sz, sz);
            for (int i = 1; i <= sz; ++i)
                for (int j = 1; j <= sz; ++j) sm.entries(i - 1, j - 1) = n_entry(mhat, i, j);
            break;
        }
        case MatKind::T: {
            const int sz = 2 * mhat - 2;
            sm.entries = Mat<UniPoly>(sz, sz);
            for (int i = 1; i <= sz; ++i)
                for (int j = 1; j <= sz; ++j) sm.entries(i - 1, j - 1) = t_entry(mhat, i, j);
            break;
        }
    }
    return sm;
}

UniPoly det_structured(MatKind kind, int mhat) {
    return det_poly(build_matrix(kind, mhat).entries);
}

ClosedFormReport verify_closed_form_R(MatKind kind, int mhat) {
    if (kind != MatKind::Rplus && kind != MatKind::Rminus)
        throw std::invalid_argument("verify_closed_form_R: expects Rplus or Rminus");
    if (mhat < 2) throw std::invalid_argument("verify_closed_form_R: mhat must be >= 2");
    ClosedFormReport rep;
    rep.xi_exponent = (mhat - 1) * (mhat - 1);
    rep.unit_exponent = 3 * mhat - 2;
    UniPoly det = det_structured(kind, mhat);
    // (1 - xi) for Rplus, (1 + xi) for Rminus
    const Rat sign = (kind == MatKind::Rplus) ? Rat(-1) : Rat(1);
    UniPoly unit(std::vector<Rat>{Rat(1), sign});
    UniPoly divisor = xi_pow(rep.xi_exponent) * unit.pow(rep.unit_exponent);
    auto q = det.div_exact(divisor);
    if (!q || q->degree() != 0) return rep;
    rep.c1 = q->coeff(0);
    rep.ok = !rep.c1.is_zero();
    return rep;
}

bool verify_nonsingular(MatKind kind, int mhat, const Rat& xi0) {
    if (kind != MatKind::N && kind != MatKind::T)
        throw std::invalid_argument("verify_nonsingular: expects N or T");
    if (xi0.is_zero()) throw std::domain_error("verify_nonsingular: xi0 must be nonzero");
    return !det_structured(kind, mhat).eval(xi0).is_zero();
}

UniPoly alpha_identity(int mhat, int k0) {
    if (mhat < 1) throw std::invalid_argument("alpha_identity: mhat must be >= 1");
    if (k0 < 0 || 2 * k0 > 3 * mhat)
        throw std::invalid_argument("alpha_identity: k0 out of [0, floor(3 mhat / 2)]");
    const UniPoly a = UniPoly::x();
    const UniPoly am1 = a - UniPoly(Rat(1));
    UniPoly lhs = a.pow(3 * mhat - 2) - a;
    for (int k = 1; k <= k0; ++k) {
        UniPoly weight = c(3 * mhat - 3 - k, k - 1) + a * c(3 * mhat - 3 - k, k);
        lhs -= am1.pow(k) * a.pow(k) * weight;
    }
    UniPoly tail;
    for (int t = k0; t <= 3 * mhat - 4 - k0; ++t)
        tail += UniPoly::monomial(3 * mhat - 4 - k0 - t, Rat(binomial(t, k0)));
    UniPoly rhs = am1.pow(k0 + 1) * a.pow(k0 + 1) * tail;
    return lhs - rhs;
}

std::string det_report_json(MatKind kind, int mhat) {
    ordered_json doc;
    doc["kind"] = to_string(kind);
    doc["mhat"] = mhat;
    UniPoly det = det_structured(kind, mhat);
    doc["det"] = det.str();
    if (kind == MatKind::Rplus || kind == MatKind::Rminus) {
        ClosedFormReport rep = verify_closed_form_R(kind, mhat);
        ordered_json f;
        f["c"] = rep.c1.str();
        f["xi_exp"] = rep.xi_exponent;
        f["one_minus_xi_exp"] = rep.unit_exponent;
        f["ok"] = rep.ok;
        doc["factored"] = std::move(f);
    }
    return doc.dump(2);
}

}  // namespace crflat
