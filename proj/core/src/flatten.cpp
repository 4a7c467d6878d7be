#include "crflat/flatten.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "crflat/leading.hpp"

namespace crflat {

using nlohmann::ordered_json;

namespace {

// All z exponent vectors of total degree d in n variables, lex order.
void enum_exponents(int n, int d, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n - 1) {
        cur.push_back(d);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = d; e >= 0; --e) {
        cur.push_back(e);
        enum_exponents(n, d - e, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> exponents(int n, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    enum_exponents(n, d, cur, out);
    return out;
}

MultiIndex make_index(int n, const std::vector<int>& alpha, const std::vector<int>& beta) {
    MultiIndex idx = MultiIndex::zero(n);
    idx.alpha = alpha;
    idx.beta = beta;
    return idx;
}

std::vector<int> pure_en(int n, int e) {
    std::vector<int> v(n, 0);
    v[n - 1] = e;
    return v;
}

bool is_pure_en(const std::vector<int>& v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] != 0) return false;
    return true;
}

}  // namespace

NormalFormSpec normal_target(int n, int m0, const Rat& lambda_n) {
    if (n < 2 || m0 < 3) throw std::invalid_argument("normal_target: need n >= 2 and m0 >= 3");
    NormalFormSpec spec;
    spec.n = n;
    spec.m0 = m0;
    spec.lambda_n_zero = lambda_n.is_zero();

    auto full = [&](const std::vector<int>& a, const std::vector<int>& b) {
        spec.constraints.push_back({make_index(n, a, b), NormalConstraint::Kind::Full});
    };
    auto realpart = [&](const std::vector<int>& a, const std::vector<int>& b) {
        spec.constraints.push_back({make_index(n, a, b), NormalConstraint::Kind::RealPart});
    };

    // holomorphic part: E_(I,0) = 0 for every |I| = m0
    for (const auto& I : exponents(n, m0)) full(I, std::vector<int>(n, 0));
    // mixed rows with a pure zbar_n part: E_(alpha, s e_n) = 0 for
    // alpha_n >= s >= 1 and alpha not a multiple of e_n
    for (int s = 1; s <= m0; ++s)
        for (const auto& a : exponents(n, m0 - s)) {
            if (a[n - 1] < s || is_pure_en(a)) continue;
            full(a, pure_en(n, s));
        }

    if (spec.lambda_n_zero) {
        // pure z_n zbar_n coefficients with t >= s (t = s only when m0 even)
        for (int s = 1; 2 * s <= m0; ++s) full(pure_en(n, m0 - s), pure_en(n, s));
        return spec;
    }

    // lambda_n != 0: dispatch on m0 mod 6
    spec.delta = ((m0 % 6) + 3) % 6 - 3;
    spec.mhat = (m0 - spec.delta) / 6;
    const int mh = spec.mhat;
    int pure_lo = 0, mixed_lo = 0, mixed_hi = 0;
    std::optional<std::pair<int, int>> re_pure;   // (t, s) of a pure Re condition
    std::optional<std::pair<int, int>> re_mixed;  // (t, s) of a mixed Re condition
    switch (spec.delta) {
        case -3:
            pure_lo = 4 * mh - 1;
            mixed_lo = 2 * mh - 2;
            mixed_hi = 3 * mh - 3;
            break;
        case -2:
            pure_lo = 4 * mh - 1;
            mixed_lo = 2 * mh - 1;
            mixed_hi = 3 * mh - 3;
            re_mixed = {{4 * mh - 3, 2 * mh - 1}};
            break;
        case -1:
            pure_lo = 4 * mh;
            mixed_lo = 2 * mh - 1;
            mixed_hi = 3 * mh - 2;
            break;
        case 0:
            pure_lo = 4 * mh + 1;
            mixed_lo = 2 * mh - 1;
            mixed_hi = 3 * mh - 2;
            re_pure = {{4 * mh, 2 * mh}};
            break;
        case 1:
            pure_lo = 4 * mh + 1;
            mixed_lo = 2 * mh;
            mixed_hi = 3 * mh - 1;
            break;
        case 2:
            pure_lo = 4 * mh + 2;
            mixed_lo = 2 * mh;
            mixed_hi = 3 * mh - 1;
            re_pure = {{4 * mh + 1, 2 * mh + 1}};
            break;
    }
    for (int t = pure_lo; t <= m0 - 1; ++t) full(pure_en(n, t), pure_en(n, m0 - t));
    for (int t = mixed_lo; t <= mixed_hi; ++t) {
        std::vector<int> a = pure_en(n, 2 * t + 1), b = pure_en(n, m0 - 2 * t - 3);
        a[0] += 1;
        b[0] += 1;
        full(a, b);
    }
    if (re_pure) realpart(pure_en(n, re_pure->first), pure_en(n, re_pure->second));
    if (re_mixed) {
        std::vector<int> a = pure_en(n, re_mixed->first), b = pure_en(n, re_mixed->second);
        a[0] += 1;
        b[0] += 1;
        realpart(a, b);
    }
    return spec;
}

int correction_space_dim(int n, int m0) {
    int cnt = 0;
    for (int j = 0; 2 * j <= m0; ++j) cnt += static_cast<int>(exponents(n, m0 - 2 * j).size());
    return 2 * cnt - (m0 % 2 == 0 ? 1 : 0);
}

std::vector<CorrectionBasisElem> correction_basis(int n, int m0) {
    std::vector<CorrectionBasisElem> basis;
    for (int j = 0; 2 * j <= m0; ++j)
        for (const auto& I : exponents(n, m0 - 2 * j)) {
            const bool pure_w = (2 * j == m0);
            if (!pure_w) basis.push_back({I, j, false});
            basis.push_back({I, j, true});
        }
    return basis;
}

namespace {

// Rows of the constraint functional applied to a degree-m0 real jet.
std::vector<Rat> constraint_rows(const NormalFormSpec& spec, const Jet& e) {
    std::vector<Rat> out;
    out.reserve(spec.real_constraint_count());
    for (const auto& k : spec.constraints) {
        CNum c = e.coeff(k.index);
        if (k.kind == NormalConstraint::Kind::RealPart) {
            out.push_back(c.re);
        } else if (k.index.alpha == k.index.beta) {
            out.push_back(c.re);
        } else {
            out.push_back(c.re);
            out.push_back(c.im);
        }
    }
    return out;
}

Jet correction_unit_im_bq(const ManifoldJet& m, int m0, const CorrectionBasisElem& b) {
    HoloCorrection hc(m.n, m0);
    hc.set(b.I, b.j, b.imaginary_part ? CNum::i() : CNum(1));
    Jet q = m.q_jet();
    // q is exactly quadratic, so B(z, q) is exactly homogeneous of degree m0;
    // give it room at the manifold's order
    Jet bq = substitute_w(hc, q);
    return im_part(bq);
}

}  // namespace

NormalizationSystem normalization_map(const ManifoldJet& m, int m0) {
    if (m0 < 3 || m0 > m.order)
        throw std::invalid_argument("normalization_map: need 3 <= m0 <= order");
    NormalizationSystem sys;
    sys.spec = normal_target(m.n, m0, m.lambda[m.n - 1]);
    sys.basis = correction_basis(m.n, m0);
    const int rows = sys.spec.real_constraint_count();
    const int cols = static_cast<int>(sys.basis.size());
    sys.map = Mat<Rat>(rows, cols);
    for (int c = 0; c < cols; ++c) {
        Jet im_bq = correction_unit_im_bq(m, m0, sys.basis[c]);
        std::vector<Rat> col = constraint_rows(sys.spec, im_bq);
        for (int r = 0; r < rows; ++r) sys.map(r, c) = col[r];
    }
    return sys;
}

ManifoldJet apply_correction(const ManifoldJet& m, const HoloCorrection& b) {
    if (b.m0 < 3) throw std::invalid_argument("apply_correction: weighted order must be >= 3");
    b.validate_shape();
    Jet d = defining_series(m);
    Jet dprime = d + substitute_w(b, d);
    Jet q = m.q_jet();
    Jet pprime = re_part(dprime) - q;
    Jet eprime = im_part(dprime);
    return ManifoldJet(m.n, m.order, m.lambda, std::move(pprime), std::move(eprime));
}

std::pair<ManifoldJet, HoloCorrection> normalize_order(const ManifoldJet& m, int m0) {
    NormalizationSystem sys = normalization_map(m, m0);
    Jet em0 = homog(m.E, m0);
    std::vector<Rat> rhs = constraint_rows(sys.spec, em0);
    for (Rat& r : rhs) r = -r;
    auto x = solve_linear(sys.map, rhs);
    if (!x) throw std::logic_error("normalize_order: normalization system unexpectedly singular");
    HoloCorrection b(m.n, m0);
    for (std::size_t c = 0; c < sys.basis.size(); ++c) {
        if ((*x)[c].is_zero()) continue;
        const auto& be = sys.basis[c];
        CNum cur = b.get(be.I, be.j);
        b.set(be.I, be.j, cur + (be.imaginary_part ? CNum(Rat(0), (*x)[c]) : CNum((*x)[c])));
    }
    return {apply_correction(m, b), b};
}

FlattenReport flatten_to_order(const ManifoldJet& m, int N) {
    if (N > m.order)
        throw std::invalid_argument("flatten_to_order: target exceeds the truncation order");
    FlattenReport rep;
    const Rat half(1, 2);
    bool any_nonparabolic = false;
    for (const Rat& l : m.lambda) any_nonparabolic |= (l != half);
    if (!any_nonparabolic) {
        rep.outcome = FlattenReport::Outcome::NotApplicable;
        return rep;
    }
    ManifoldJet cur = m;
    for (int m0 = 3; m0 <= N; ++m0) {
        auto [next, b] = normalize_order(cur, m0);
        cur = std::move(next);
        rep.corrections.push_back(b);
        Jet h = homog(cur.E, m0);
        if (!h.is_zero()) {
            rep.outcome = FlattenReport::Outcome::Obstructed;
            rep.reached_order = m0;
            rep.obstruction = h;
            return rep;
        }
    }
    rep.outcome = FlattenReport::Outcome::Flattened;
    rep.reached_order = N;
    return rep;
}

RigidityResult rigidity_kernel(int n, const std::vector<Rat>& lambda, int m) {
    if (n < 2 || static_cast<int>(lambda.size()) != n)
        throw std::invalid_argument("rigidity_kernel: bad lambda length");
    if (m < 3) throw std::invalid_argument("rigidity_kernel: degree must be >= 3");
    const Rat half(1, 2);
    RigidityResult out;
    bool any_nonparabolic = false;
    for (const Rat& l : lambda) any_nonparabolic |= (l != half);
    if (!any_nonparabolic) {
        out.applicable = false;
        return out;
    }
    if (lambda[n - 1] == half)
        throw std::invalid_argument(
            "rigidity_kernel: lambda_n is parabolic; reindex a non-parabolic invariant to position n");

    // real coordinates of degree-m real H: one per diagonal index, two per
    // conjugate pair (canonical representative first in graded-lex order)
    struct Coord {
        MultiIndex idx;
        bool imaginary_part;
    };
    std::vector<Coord> coords;
    std::vector<Jet> coord_jets;
    const int horder = m + 6;
    for (const auto& a : exponents(2 * n, m)) {
        // split a combined exponent vector into (alpha, beta)
        std::vector<int> alpha(a.begin(), a.begin() + n), beta(a.begin() + n, a.end());
        MultiIndex idx = make_index(n, alpha, beta);
        MultiIndex cj = idx.conj();
        if (cj < idx) continue;
        if (idx == cj) {
            Jet u(n, horder);
            u.set_coeff(idx, CNum(1));
            coords.push_back({idx, false});
            coord_jets.push_back(std::move(u));
        } else {
            Jet u(n, horder);
            u.set_coeff(idx, CNum(1));
            u.set_coeff(cj, CNum(1));
            coords.push_back({idx, false});
            coord_jets.push_back(std::move(u));
            Jet v(n, horder);
            v.set_coeff(idx, CNum::i());
            v.set_coeff(cj, -CNum::i());
            coords.push_back({idx, true});
            coord_jets.push_back(std::move(v));
        }
    }
    const int cols = static_cast<int>(coords.size());

    NormalFormSpec spec = normal_target(n, m, lambda[n - 1]);

    // column c -> all real constraint rows evaluated on that basis element
    std::vector<std::vector<Rat>> columns(cols);
    for (int c = 0; c < cols; ++c) {
        std::vector<Rat> col = constraint_rows(spec, coord_jets[c]);
        std::vector<Jet> res = addnew_residuals(coord_jets[c], lambda);
        for (const Jet& rj : res) {
            // every coefficient of total degree m+3 (the residuals are
            // homogeneous of that degree)
            for (const auto& a : exponents(2 * n, m + 3)) {
                std::vector<int> alpha(a.begin(), a.begin() + n), beta(a.begin() + n, a.end());
                CNum v = rj.coeff(make_index(n, alpha, beta));
                col.push_back(v.re);
                col.push_back(v.im);
            }
        }
        columns[c] = std::move(col);
    }
    const int rows = cols ? static_cast<int>(columns[0].size()) : 0;
    RowAccumulator<Rat> acc(cols);
    for (int r = 0; r < rows && !acc.full_column_rank(); ++r) {
        std::vector<Rat> row(cols);
        for (int c = 0; c < cols; ++c) row[c] = columns[c][r];
        acc.add(std::move(row));
    }
    auto kernel = acc.kernel();
    out.dimension = static_cast<int>(kernel.size());
    for (const auto& vec : kernel) {
        Jet h(n, horder);
        for (int c = 0; c < cols; ++c) {
            if (vec[c].is_zero()) continue;
            for (const auto& [idx, cf] : coord_jets[c].terms()) h.add_coeff(idx, cf * CNum(vec[c]));
        }
        out.basis.push_back(h.truncated(m));
    }
    return out;
}

namespace {

ordered_json jet_terms_json(const Jet& j) {
    ordered_json arr = ordered_json::array();
    for (const auto& [idx, c] : j.terms()) {
        ordered_json t;
        t["alpha"] = idx.alpha;
        t["beta"] = idx.beta;
        t["re"] = c.re.str();
        t["im"] = c.im.str();
        arr.push_back(std::move(t));
    }
    return arr;
}

ordered_json correction_json(const HoloCorrection& b) {
    ordered_json terms = ordered_json::array();
    for (const auto& [key, c] : b.terms) {
        ordered_json t;
        t["I"] = key.first;
        t["j"] = key.second;
        t["re"] = c.re.str();
        t["im"] = c.im.str();
        terms.push_back(std::move(t));
    }
    ordered_json out;
    out["m0"] = b.m0;
    out["terms"] = std::move(terms);
    return out;
}

}  // namespace

std::string flatten_report_json(const FlattenReport& rep, const std::vector<int>& perm) {
    ordered_json doc;
    switch (rep.outcome) {
        case FlattenReport::Outcome::Flattened: doc["outcome"] = "flattened"; break;
        case FlattenReport::Outcome::Obstructed: doc["outcome"] = "obstructed"; break;
        case FlattenReport::Outcome::NotApplicable: doc["outcome"] = "not_applicable"; break;
    }
    doc["order"] = rep.reached_order;
    if (!perm.empty()) doc["permutation"] = perm;
    ordered_json corr = ordered_json::array();
    for (const auto& b : rep.corrections) corr.push_back(correction_json(b));
    doc["corrections"] = std::move(corr);
    if (rep.obstruction) doc["obstruction"] = jet_terms_json(*rep.obstruction);
    return doc.dump(2);
}

std::string rigidity_report_json(int n, const std::vector<Rat>& lambda, int m,
                                 const RigidityResult& r, const std::vector<int>& perm) {
    ordered_json doc;
    doc["n"] = n;
    ordered_json lam = ordered_json::array();
    for (const Rat& l : lambda) lam.push_back(l.str());
    doc["lambda"] = std::move(lam);
    if (!perm.empty()) doc["permutation"] = perm;
    doc["degree"] = m;
    doc["applicable"] = r.applicable;
    doc["dimension"] = r.dimension;
    ordered_json basis = ordered_json::array();
    for (const Jet& b : r.basis) basis.push_back(jet_terms_json(b));
    doc["basis"] = std::move(basis);
    return doc.dump(2);
}

}  // namespace crflat
