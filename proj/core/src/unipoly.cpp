#include "crflat/unipoly.hpp"

#include <sstream>

namespace crflat {

UniPoly UniPoly::monomial(int deg, Rat c) {
    if (deg < 0) throw std::invalid_argument("UniPoly::monomial: negative degree");
    UniPoly p;
    p.c_.assign(deg + 1, Rat(0));
    p.c_[deg] = std::move(c);
    p.trim();
    return p;
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rat UniPoly::eval(const Rat& x) const {
    Rat r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

int UniPoly::vanishing_order_at(const Rat& x0) const {
    if (is_zero()) return -1;
    UniPoly p = *this;
    UniPoly lin(std::vector<Rat>{-x0, Rat(1)});
    int k = 0;
    while (p.eval(x0).is_zero()) {
        p = *p.div_exact(lin);
        ++k;
    }
    return k;
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    UniPoly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
}

UniPoly UniPoly::scaled(const Rat& c) const {
    UniPoly r = *this;
    for (auto& x : r.c_) x *= c;
    r.trim();
    return r;
}

UniPoly UniPoly::pow(long e) const {
    if (e < 0) throw std::invalid_argument("UniPoly::pow: negative exponent");
    UniPoly r(Rat(1)), b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::optional<UniPoly> UniPoly::div_exact(const UniPoly& d) const {
    if (d.is_zero()) throw std::domain_error("UniPoly::div_exact: division by zero polynomial");
    if (is_zero()) return UniPoly();
    if (degree() < d.degree()) return std::nullopt;
    std::vector<Rat> rem = c_;
    std::vector<Rat> quot(degree() - d.degree() + 1, Rat(0));
    const Rat lead = d.c_.back();
    for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
        Rat q = rem[k + d.degree()] / lead;
        quot[k] = q;
        if (q.is_zero()) continue;
        for (int i = 0; i <= d.degree(); ++i) rem[k + i] -= q * d.c_[i];
    }
    for (const auto& c : rem)
        if (!c.is_zero()) return std::nullopt;
    return UniPoly(std::move(quot));
}

std::string UniPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int d = degree(); d >= 0; --d) {
        const Rat& c = c_[d];
        if (c.is_zero()) continue;
        Rat a = c;
        if (first) {
            if (a.sign() < 0) { out << "-"; a = -a; }
        } else {
            out << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        first = false;
        if (d == 0) {
            out << a.str();
        } else {
            if (!a.is_one()) out << a.str() << "*";
            out << var;
            if (d > 1) out << "^" << d;
        }
    }
    return out.str();
}

}  // namespace crflat
