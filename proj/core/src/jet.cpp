#include "crflat/jet.hpp"

#include <sstream>
#include <stdexcept>

namespace crflat {

Jet::Jet(int n, int order) : n_(n), order_(order) {
    if (n < 1) throw std::invalid_argument("Jet: need at least one variable");
    if (order < 0) throw std::invalid_argument("Jet: negative order");
}

Jet Jet::constant(int n, int order, const CNum& c) {
    Jet j(n, order);
    j.set_coeff(MultiIndex::zero(n), c);
    return j;
}

Jet Jet::monomial(int n, int order, const MultiIndex& idx, const CNum& c) {
    Jet j(n, order);
    j.set_coeff(idx, c);
    return j;
}

Jet Jet::variable(int n, int order, int i, bool barred) {
    if (i < 1 || i > n) throw std::invalid_argument("Jet::variable: index out of range");
    MultiIndex idx = MultiIndex::zero(n);
    (barred ? idx.beta : idx.alpha)[i - 1] = 1;
    return monomial(n, order, idx, CNum(1));
}

CNum Jet::coeff(const MultiIndex& idx) const {
    if (idx.n() != n_) throw std::invalid_argument("Jet::coeff: wrong variable count");
    if (idx.degree() > order_)
        throw std::out_of_range("Jet::coeff: degree exceeds validity order");
    auto it = c_.find(idx);
    return it == c_.end() ? CNum() : it->second;
}

void Jet::set_coeff(const MultiIndex& idx, const CNum& c) {
    if (idx.n() != n_) throw std::invalid_argument("Jet::set_coeff: wrong variable count");
    if (idx.degree() > order_)
        throw std::out_of_range("Jet::set_coeff: degree exceeds validity order");
    if (c.is_zero())
        c_.erase(idx);
    else
        c_[idx] = c;
}

void Jet::add_coeff(const MultiIndex& idx, const CNum& c) {
    if (c.is_zero()) return;
    set_coeff(idx, coeff(idx) + c);
}

Jet Jet::truncated(int order) const {
    if (order > order_)
        throw std::out_of_range("Jet::truncated: cannot raise validity order");
    Jet r(n_, order);
    for (const auto& [idx, c] : c_)
        if (idx.degree() <= order) r.c_[idx] = c;
    return r;
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& [idx, c] : r.c_) c = -c;
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    if (o.n_ != n_) throw std::invalid_argument("Jet: variable count mismatch");
    if (o.order_ < order_) *this = truncated(o.order_);
    for (const auto& [idx, c] : o.c_) {
        if (idx.degree() > order_) continue;
        add_coeff(idx, c);
    }
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    if (o.n_ != n_) throw std::invalid_argument("Jet: variable count mismatch");
    if (o.order_ < order_) *this = truncated(o.order_);
    for (const auto& [idx, c] : o.c_) {
        if (idx.degree() > order_) continue;
        add_coeff(idx, -c);
    }
    return *this;
}

Jet Jet::scaled(const CNum& c) const {
    Jet r(n_, order_);
    if (c.is_zero()) return r;
    for (const auto& [idx, v] : c_) r.c_[idx] = v * c;
    return r;
}

std::string Jet::str() const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [idx, c] : c_) {
        if (!first) out << " + ";
        first = false;
        out << c.str() << "*" << idx.str();
    }
    return out.str();
}

std::string MultiIndex::str() const {
    std::ostringstream out;
    bool any = false;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] != 0) {
            out << (any ? "*" : "") << "z" << i + 1;
            if (alpha[i] != 1) out << "^" << alpha[i];
            any = true;
        }
    }
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (beta[i] != 0) {
            out << (any ? "*" : "") << "zb" << i + 1;
            if (beta[i] != 1) out << "^" << beta[i];
            any = true;
        }
    }
    if (!any) out << "1";
    return out.str();
}

Jet mul_trunc(const Jet& a, const Jet& b) {
    if (a.n() != b.n()) throw std::invalid_argument("mul_trunc: variable count mismatch");
    const int order = std::min(a.order(), b.order());
    Jet r(a.n(), order);
    for (const auto& [ia, ca] : a.terms()) {
        if (ia.degree() > order) continue;
        for (const auto& [ib, cb] : b.terms()) {
            if (ia.degree() + ib.degree() > order) continue;
            r.add_coeff(ia + ib, ca * cb);
        }
    }
    return r;
}

Jet mul(const Jet& a, const Jet& b) { return mul_trunc(a, b); }

Jet conj_series(const Jet& a) {
    Jet r(a.n(), a.order());
    for (const auto& [idx, c] : a.terms()) r.set_coeff(idx.conj(), c.conj());
    return r;
}

Jet diff(const Jet& a, int i, bool barred) {
    if (i < 1 || i > a.n()) throw std::invalid_argument("diff: index out of range");
    if (a.order() == 0) throw std::invalid_argument("diff: jet has no differentiable order left");
    Jet r(a.n(), a.order() - 1);
    for (const auto& [idx, c] : a.terms()) {
        const int e = barred ? idx.beta[i - 1] : idx.alpha[i - 1];
        if (e == 0) continue;
        MultiIndex d = idx;
        (barred ? d.beta : d.alpha)[i - 1] = e - 1;
        r.add_coeff(d, c * CNum(Rat(e)));
    }
    return r;
}

Jet homog(const Jet& a, int m) {
    if (m < 0) throw std::invalid_argument("homog: negative degree");
    if (m > a.order()) throw std::out_of_range("homog: degree exceeds validity order");
    Jet r(a.n(), a.order());
    for (const auto& [idx, c] : a.terms())
        if (idx.degree() == m) r.set_coeff(idx, c);
    return r;
}

Jet re_part(const Jet& a) {
    const CNum half(Rat(1, 2));
    return (a + conj_series(a)).scaled(half);
}

Jet im_part(const Jet& a) {
    // (a - conj a) / (2i) = -i/2 * (a - conj a)
    const CNum mihalf(Rat(0), Rat(-1, 2));
    return (a - conj_series(a)).scaled(mihalf);
}

std::optional<int> ord(const Jet& a) {
    std::optional<int> best;
    for (const auto& [idx, c] : a.terms()) {
        const int d = idx.degree();
        if (!best || d < *best) best = d;
    }
    return best;
}

bool is_real(const Jet& a) {
    for (const auto& [idx, c] : a.terms())
        if (a.coeff(idx.conj()) != c.conj()) return false;
    return true;
}

}  // namespace crflat
