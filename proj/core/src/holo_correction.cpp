#include "crflat/holo_correction.hpp"

#include <numeric>
#include <stdexcept>

namespace crflat {

void HoloCorrection::set(const std::vector<int>& I, int j, const CNum& c) {
    if (static_cast<int>(I.size()) != n) throw std::invalid_argument("HoloCorrection: bad exponent length");
    if (j < 0) throw std::invalid_argument("HoloCorrection: negative w power");
    const int wt = std::accumulate(I.begin(), I.end(), 0) + 2 * j;
    if (wt != m0) throw std::invalid_argument("HoloCorrection: term has wrong weighted degree");
    if (c.is_zero())
        terms.erase({I, j});
    else
        terms[{I, j}] = c;
}

CNum HoloCorrection::get(const std::vector<int>& I, int j) const {
    auto it = terms.find({I, j});
    return it == terms.end() ? CNum() : it->second;
}

void HoloCorrection::validate_shape() const {
    for (const auto& [key, c] : terms) {
        const auto& [I, j] = key;
        if (static_cast<int>(I.size()) != n || j < 0 ||
            std::accumulate(I.begin(), I.end(), 0) + 2 * j != m0)
            throw std::invalid_argument("HoloCorrection: malformed term");
    }
}

void HoloCorrection::validate() const {
    validate_shape();
    if (m0 % 2 == 0) {
        CNum diag = get(std::vector<int>(n, 0), m0 / 2);
        if (!diag.re.is_zero())
            throw std::invalid_argument("HoloCorrection: pure w-power coefficient must be imaginary");
    }
}

Jet substitute_w(const HoloCorrection& b, const Jet& w) {
    if (w.n() != b.n) throw std::invalid_argument("substitute_w: variable count mismatch");
    if (!w.coeff(MultiIndex::zero(w.n())).is_zero())
        throw std::invalid_argument("substitute_w: series for w must have zero constant term");
    Jet out(w.n(), w.order());
    int jmax = 0;
    for (const auto& [key, c] : b.terms) jmax = std::max(jmax, key.second);
    std::vector<Jet> wpow;
    wpow.push_back(Jet::constant(w.n(), w.order(), CNum(1)));
    for (int j = 1; j <= jmax; ++j) wpow.push_back(mul_trunc(wpow.back(), w));
    for (const auto& [key, c] : b.terms) {
        const auto& [I, j] = key;
        if (std::accumulate(I.begin(), I.end(), 0) > w.order()) continue;
        MultiIndex zi(I, std::vector<int>(b.n, 0));
        Jet term = mul_trunc(Jet::monomial(w.n(), w.order(), zi, c), wpow[j]);
        out += term;
    }
    return out;
}

}  // namespace crflat
