#include "crflat/manifold.hpp"

#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace crflat {

using nlohmann::ordered_json;

std::string to_string(BishopClass c) {
    switch (c) {
        case BishopClass::Elliptic: return "elliptic";
        case BishopClass::Parabolic: return "parabolic";
        case BishopClass::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

ManifoldJet::ManifoldJet(int n_, int order_, std::vector<Rat> lambda_, Jet p_, Jet E_)
    : n(n_), order(order_), lambda(std::move(lambda_)), p(std::move(p_)), E(std::move(E_)) {}

Jet ManifoldJet::q_jet() const {
    Jet q(n, order);
    for (int i = 0; i < n; ++i) {
        MultiIndex mixed = MultiIndex::zero(n), zz = MultiIndex::zero(n), bb = MultiIndex::zero(n);
        mixed.alpha[i] = 1;
        mixed.beta[i] = 1;
        zz.alpha[i] = 2;
        bb.beta[i] = 2;
        q.add_coeff(mixed, CNum(1));
        q.add_coeff(zz, CNum(lambda[i]));
        q.add_coeff(bb, CNum(lambda[i]));
    }
    return q;
}

Jet ManifoldJet::G_jet() const { return q_jet() + p; }

Jet ManifoldJet::w_jet(int i) const {
    Jet w = Jet::variable(n, order, i, false);
    w += Jet::variable(n, order, i, true).scaled(CNum(lambda[i - 1] * Rat(2)));
    return w;
}

BishopClass classify_lambda(const Rat& lambda) {
    const Rat half(1, 2);
    if (lambda < half) return BishopClass::Elliptic;
    if (lambda == half) return BishopClass::Parabolic;
    return BishopClass::Hyperbolic;
}

std::vector<std::pair<Rat, BishopClass>> classify(const ManifoldJet& m) {
    std::vector<std::pair<Rat, BishopClass>> out;
    out.reserve(m.lambda.size());
    for (const Rat& l : m.lambda) out.emplace_back(l, classify_lambda(l));
    return out;
}

ValidationReport validate(const ManifoldJet& m) {
    ValidationReport rep;
    auto fail = [&](std::string msg, std::optional<MultiIndex> w = std::nullopt) {
        rep.ok = false;
        rep.message = std::move(msg);
        rep.witness = std::move(w);
        return rep;
    };
    if (m.n < 2) return fail("need n >= 2 variables");
    if (static_cast<int>(m.lambda.size()) != m.n) return fail("lambda length != n");
    for (const Rat& l : m.lambda)
        if (l.sign() < 0) return fail("Bishop invariants must be nonnegative");
    if (m.p.n() != m.n || m.E.n() != m.n) return fail("p/E variable count != n");
    if (m.p.order() != m.order || m.E.order() != m.order) return fail("p/E validity order != order");
    for (const Jet* j : {&m.p, &m.E}) {
        const char* which = (j == &m.p) ? "p" : "E";
        for (const auto& [idx, c] : j->terms()) {
            if (j->coeff(idx.conj()) != c.conj())
                return fail(std::string(which) + " not real", idx);
            if (idx.degree() < 3)
                return fail(std::string("Ord(") + which + ") < 3", idx);
        }
    }
    return rep;
}

ManifoldJet apply_permutation(const ManifoldJet& m, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != m.n)
        throw std::invalid_argument("apply_permutation: bad permutation length");
    auto permute_jet = [&](const Jet& j) {
        Jet out(m.n, j.order());
        for (const auto& [idx, c] : j.terms()) {
            MultiIndex t = MultiIndex::zero(m.n);
            for (int i = 0; i < m.n; ++i) {
                t.alpha[i] = idx.alpha[perm[i] - 1];
                t.beta[i] = idx.beta[perm[i] - 1];
            }
            out.set_coeff(t, c);
        }
        return out;
    };
    std::vector<Rat> lam;
    lam.reserve(m.n);
    for (int i = 0; i < m.n; ++i) lam.push_back(m.lambda[perm[i] - 1]);
    return ManifoldJet(m.n, m.order, std::move(lam), permute_jet(m.p), permute_jet(m.E));
}

std::optional<std::pair<ManifoldJet, std::vector<int>>>
reindex_smallest_nonparabolic(const ManifoldJet& m) {
    const Rat half(1, 2);
    int best = -1;
    for (int i = 0; i < m.n; ++i) {
        if (m.lambda[i] == half) continue;
        if (best < 0 || m.lambda[i] < m.lambda[best]) best = i;
    }
    if (best < 0) return std::nullopt;
    std::vector<int> perm(m.n);
    for (int i = 0; i < m.n; ++i) perm[i] = i + 1;
    std::swap(perm[best], perm[m.n - 1]);
    return std::make_pair(apply_permutation(m, perm), perm);
}

Jet defining_series(const ManifoldJet& m) {
    return m.G_jet() + m.E.scaled(CNum::i());
}

std::variant<FlatAlready, LeadingPart> order_of_E(const ManifoldJet& m) {
    auto o = ord(m.E);
    if (!o) return FlatAlready{};
    return LeadingPart{*o, homog(m.E, *o)};
}

CNum parse_cnum(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return CNum(Rat::parse(s));
    return CNum(Rat::parse(s.substr(0, comma)), Rat::parse(s.substr(comma + 1)));
}

namespace {

Rat param_rat(const std::map<std::string, std::string>& p, const std::string& key, const Rat& dflt) {
    auto it = p.find(key);
    return it == p.end() ? dflt : Rat::parse(it->second);
}

CNum param_cnum(const std::map<std::string, std::string>& p, const std::string& key, const CNum& dflt) {
    auto it = p.find(key);
    return it == p.end() ? dflt : parse_cnum(it->second);
}

long param_long(const std::map<std::string, std::string>& p, const std::string& key, long dflt) {
    auto it = p.find(key);
    return it == p.end() ? dflt : std::stol(it->second);
}

// w = q + p + iE with p - iE = mu1(|z1|^2 zb1 + l1 |z1|^2 z1)
//                            + mu2(|z2|^2 zb2 + l2 |z2|^2 z2)
//                            + mu1 zb1 (|z2|^2 + l2 z2^2)
//                            + mu2 zb2 (|z1|^2 + l1 z1^2).
// Non-minimal at its CR points for every parameter choice.
ManifoldJet fixture_cubic_nonminimal(const std::map<std::string, std::string>& p) {
    const int order = static_cast<int>(param_long(p, "order", 10));
    const Rat l1 = param_rat(p, "lambda1", Rat(0));
    const Rat l2 = param_rat(p, "lambda2", Rat(1, 4));
    const CNum mu1 = param_cnum(p, "mu1", CNum(1));
    const CNum mu2 = param_cnum(p, "mu2", CNum(2));
    const int n = 2;
    auto mono = [&](int a1, int a2, int b1, int b2) {
        MultiIndex idx({a1, a2}, {b1, b2});
        return Jet::monomial(n, order, idx, CNum(1));
    };
    Jet psi(n, order);
    psi += (mono(1, 0, 2, 0) + mono(2, 0, 1, 0).scaled(CNum(l1))).scaled(mu1);
    psi += (mono(0, 1, 0, 2) + mono(0, 2, 0, 1).scaled(CNum(l2))).scaled(mu2);
    psi += (mono(0, 1, 1, 1) + mono(0, 2, 1, 0).scaled(CNum(l2))).scaled(mu1);
    psi += (mono(1, 0, 1, 1) + mono(2, 0, 0, 1).scaled(CNum(l1))).scaled(mu2);
    // psi = p - iE with p, E real
    Jet preal = (psi + conj_series(psi)).scaled(CNum(Rat(1, 2)));
    Jet E = (conj_series(psi) - psi).scaled(CNum(Rat(0), Rat(-1, 2)));
    return ManifoldJet(n, order, {l1, l2}, preal, E);
}

// w = |z1|^2 + |z2|^2 + i sum_{j,l>=2} (b_{jl} z1^j zb2^l + conj(b_{jl}) zb1^j z2^l).
// Parameters b<j><l>; all Bishop invariants zero.
ManifoldJet fixture_hy2_obstruction(const std::map<std::string, std::string>& p) {
    // the residual obstruction for a degree-d entry first shows at degree
    // d + 3, so leave derivative headroom in the default truncation
    const int order = static_cast<int>(param_long(p, "order", 12));
    const int n = 2;
    Jet E(n, order);
    bool any = false;
    for (const auto& [key, value] : p) {
        if (key.size() < 3 || key[0] != 'b') continue;
        const int j = key[1] - '0';
        const int l = key[2] - '0';
        if (j < 2 || l < 2) throw std::invalid_argument("hy2_obstruction: need j,l >= 2 in " + key);
        if (j + l > order) throw std::invalid_argument("hy2_obstruction: term above order in " + key);
        const CNum b = parse_cnum(value);
        E.add_coeff(MultiIndex({j, 0}, {0, l}), b);
        E.add_coeff(MultiIndex({0, l}, {j, 0}), b.conj());
        any = true;
    }
    if (!any) {
        E.add_coeff(MultiIndex({2, 0}, {0, 2}), CNum(1));
        E.add_coeff(MultiIndex({0, 2}, {2, 0}), CNum(1));
    }
    return ManifoldJet(n, order, {Rat(0), Rat(0)}, Jet(n, order), E);
}

// Seeded random real homogeneous E of degree m, n = 2, p = 0.
ManifoldJet fixture_appendix_random(const std::map<std::string, std::string>& p) {
    const long seed = param_long(p, "seed", 1);
    const int m = static_cast<int>(param_long(p, "m", 3));
    const int order = static_cast<int>(param_long(p, "order", std::max(8L, m + 4L)));
    const Rat l1 = param_rat(p, "lambda1", Rat(0));
    const Rat ln = param_rat(p, "lambdan", Rat(1, 4));
    if (m < 3 || m > order) throw std::invalid_argument("appendix_random: need 3 <= m <= order");
    const int n = 2;
    SplitMix64 rng(static_cast<std::uint64_t>(seed) * 0x9e3779b97f4a7c15ULL + 0x12345);
    Jet E(n, order);
    for (int a1 = 0; a1 <= m; ++a1)
        for (int a2 = 0; a2 + a1 <= m; ++a2)
            for (int b1 = 0; b1 + a1 + a2 <= m; ++b1) {
                const int b2 = m - a1 - a2 - b1;
                MultiIndex idx({a1, a2}, {b1, b2});
                MultiIndex cj = idx.conj();
                if (cj < idx) continue;  // one representative per conjugate pair
                if (idx == cj) {
                    E.add_coeff(idx, CNum(rng.small_rat(3, 3)));
                } else {
                    CNum c(rng.small_rat(3, 3), rng.small_rat(3, 3));
                    E.add_coeff(idx, c);
                    E.add_coeff(cj, c.conj());
                }
            }
    return ManifoldJet(n, order, {l1, ln}, Jet(n, order), E);
}

}  // namespace

ManifoldJet fixture(const std::string& name, const std::map<std::string, std::string>& params) {
    if (name == "cubic_nonminimal") return fixture_cubic_nonminimal(params);
    if (name == "hy2_obstruction") return fixture_hy2_obstruction(params);
    if (name == "appendix_random") return fixture_appendix_random(params);
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

namespace {

ordered_json jet_to_json(const Jet& j) {
    ordered_json terms = ordered_json::array();
    for (const auto& [idx, c] : j.terms()) {
        ordered_json t;
        t["alpha"] = idx.alpha;
        t["beta"] = idx.beta;
        t["re"] = c.re.str();
        t["im"] = c.im.str();
        terms.push_back(std::move(t));
    }
    return terms;
}

Jet jet_from_json(const ordered_json& terms, int n, int order) {
    Jet j(n, order);
    for (const auto& t : terms) {
        std::vector<int> alpha = t.at("alpha").get<std::vector<int>>();
        std::vector<int> beta = t.at("beta").get<std::vector<int>>();
        if (static_cast<int>(alpha.size()) != n || static_cast<int>(beta.size()) != n)
            throw std::invalid_argument("manifest: exponent length != n");
        MultiIndex idx(std::move(alpha), std::move(beta));
        CNum c(Rat::parse(t.at("re").get<std::string>()), Rat::parse(t.at("im").get<std::string>()));
        if (!j.coeff(idx).is_zero())
            throw std::invalid_argument("manifest: duplicate term " + idx.str());
        j.set_coeff(idx, c);
    }
    return j;
}

}  // namespace

ManifoldJet manifest_load(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("manifest: JSON parse error: ") + e.what());
    }
    const int n = doc.at("n").get<int>();
    const int order = doc.at("order").get<int>();
    if (n < 2 || order < 3) throw std::invalid_argument("manifest: need n >= 2 and order >= 3");
    std::vector<Rat> lambda;
    for (const auto& s : doc.at("lambda")) lambda.push_back(Rat::parse(s.get<std::string>()));
    Jet p = doc.contains("p") ? jet_from_json(doc["p"], n, order) : Jet(n, order);
    Jet E = doc.contains("E") ? jet_from_json(doc["E"], n, order) : Jet(n, order);
    ManifoldJet m(n, order, std::move(lambda), std::move(p), std::move(E));
    ValidationReport rep = validate(m);
    if (!rep.ok) {
        std::string msg = "manifest: invalid manifold: " + rep.message;
        if (rep.witness) msg += " at " + rep.witness->str();
        throw std::invalid_argument(msg);
    }
    return m;
}

std::string manifest_save(const ManifoldJet& m) {
    ordered_json doc;
    doc["n"] = m.n;
    doc["order"] = m.order;
    ordered_json lam = ordered_json::array();
    for (const Rat& l : m.lambda) lam.push_back(l.str());
    doc["lambda"] = std::move(lam);
    doc["p"] = jet_to_json(m.p);
    doc["E"] = jet_to_json(m.E);
    return doc.dump(2);
}

}  // namespace crflat
