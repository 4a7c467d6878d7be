#pragma once

#include <numeric>
#include <string>
#include <vector>

namespace crflat {

/// Exponents of a monomial z^alpha zbar^beta in n complex variables.
struct MultiIndex {
    std::vector<int> alpha, beta;

    MultiIndex() = default;
    MultiIndex(std::vector<int> a, std::vector<int> b) : alpha(std::move(a)), beta(std::move(b)) {}

    static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0), std::vector<int>(n, 0)); }

    int n() const { return static_cast<int>(alpha.size()); }
    int degree() const {
        return std::accumulate(alpha.begin(), alpha.end(), 0) +
               std::accumulate(beta.begin(), beta.end(), 0);
    }
    int alpha_degree() const { return std::accumulate(alpha.begin(), alpha.end(), 0); }
    int beta_degree() const { return std::accumulate(beta.begin(), beta.end(), 0); }

    /// The index of the conjugate monomial (alpha and beta swapped).
    MultiIndex conj() const { return MultiIndex(beta, alpha); }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex r = a;
        for (std::size_t i = 0; i < r.alpha.size(); ++i) {
            r.alpha[i] += b.alpha[i];
            r.beta[i] += b.beta[i];
        }
        return r;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
        return a.alpha == b.alpha && a.beta == b.beta;
    }

    /// Graded lexicographic: total degree first, then (alpha, beta) lexicographically.
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        if (a.alpha != b.alpha) return a.alpha < b.alpha;
        return a.beta < b.beta;
    }

    std::string str() const;
};

}  // namespace crflat
