#pragma once

#include <map>
#include <utility>
#include <vector>

#include "crflat/jet.hpp"
#include "crflat/rational.hpp"

namespace crflat {

/// Weighted-homogeneous holomorphic polynomial B(z,w) = sum b_(I,j) z^I w^j
/// with wt(z) = 1, wt(w) = 2 and |I| + 2j = m0 for every term.
/// When m0 is even, the coefficient b_(0, m0/2) is normalized to have zero
/// real part.
struct HoloCorrection {
    int n = 0;
    int m0 = 0;
    // key: (z exponents I, w power j)
    std::map<std::pair<std::vector<int>, int>, CNum> terms;

    HoloCorrection() = default;
    HoloCorrection(int n_, int m0_) : n(n_), m0(m0_) {}

    bool is_zero() const { return terms.empty(); }

    void set(const std::vector<int>& I, int j, const CNum& c);
    CNum get(const std::vector<int>& I, int j) const;

    /// Checks weighted homogeneity of every term.
    void validate_shape() const;
    /// validate_shape plus the even-m0 reality normalization.
    void validate() const;
};

/// B with w replaced by the series W, expanded and truncated at W.order.
/// W must have zero constant term.
Jet substitute_w(const HoloCorrection& b, const Jet& w);

}  // namespace crflat
