#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crflat/rational.hpp"

namespace crflat {

/// Univariate polynomial over the rationals, coefficients stored by
/// ascending degree with trailing zeros trimmed. The zero polynomial
/// has an empty coefficient vector.
class UniPoly {
  public:
    UniPoly() = default;
    UniPoly(Rat c) { c_.push_back(std::move(c)); trim(); }
    UniPoly(long c) : UniPoly(Rat(c)) {}
    explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly x() { return monomial(1, Rat(1)); }
    static UniPoly monomial(int deg, Rat c);

    bool is_zero() const { return c_.empty(); }
    /// Degree, -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rat coeff(int deg) const {
        if (deg < 0 || deg >= static_cast<int>(c_.size())) return Rat(0);
        return c_[deg];
    }
    const std::vector<Rat>& coeffs() const { return c_; }

    Rat eval(const Rat& x) const;
    /// Multiplicity of the root x0 (0 when p(x0) != 0); -1 for the zero polynomial.
    int vanishing_order_at(const Rat& x0) const;

    UniPoly operator-() const;
    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    UniPoly scaled(const Rat& c) const;
    UniPoly pow(long e) const;

    /// Quotient when the division is exact, nullopt otherwise.
    std::optional<UniPoly> div_exact(const UniPoly& d) const;

    std::string str(const std::string& var = "xi") const;

  private:
    void trim();
    std::vector<Rat> c_;
};

}  // namespace crflat
