#pragma once

#include <map>
#include <optional>
#include <string>

#include "crflat/multiindex.hpp"
#include "crflat/rational.hpp"

namespace crflat {

/// Truncated formal power series in (z_1..z_n, zbar_1..zbar_n) with exact
/// complex rational coefficients. `order` is the validity order: coefficients
/// of total degree above it are meaningless and never stored. Reading one is
/// a contract violation, not a silent zero.
class Jet {
  public:
    Jet() : n_(0), order_(0) {}
    Jet(int n, int order);

    static Jet zero(int n, int order) { return Jet(n, order); }
    static Jet constant(int n, int order, const CNum& c);
    static Jet monomial(int n, int order, const MultiIndex& idx, const CNum& c);
    /// z_i (barred = false) or zbar_i (barred = true); i is 1-based.
    static Jet variable(int n, int order, int i, bool barred);

    int n() const { return n_; }
    int order() const { return order_; }
    bool is_zero() const { return c_.empty(); }
    const std::map<MultiIndex, CNum>& terms() const { return c_; }

    CNum coeff(const MultiIndex& idx) const;
    void set_coeff(const MultiIndex& idx, const CNum& c);
    void add_coeff(const MultiIndex& idx, const CNum& c);

    /// Restricts validity to a smaller order, discarding higher terms.
    Jet truncated(int order) const;

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend bool operator==(const Jet& a, const Jet& b) {
        return a.n_ == b.n_ && a.order_ == b.order_ && a.c_ == b.c_;
    }

    Jet scaled(const CNum& c) const;

    std::string str() const;

  private:
    int n_, order_;
    std::map<MultiIndex, CNum> c_;  // zero entries absent; graded-lex key order
};

/// Truncated product; result order = min(a.order, b.order).
Jet mul_trunc(const Jet& a, const Jet& b);
Jet mul(const Jet& a, const Jet& b);  // alias of mul_trunc

/// Coefficient-wise conjugate: coeff'(alpha,beta) = conj(coeff(beta,alpha)).
Jet conj_series(const Jet& a);

/// Formal partial derivative with respect to z_i or zbar_i (1-based);
/// result order = a.order - 1.
Jet diff(const Jet& a, int i, bool barred);

/// Exactly the total-degree-m part; requires m <= a.order.
Jet homog(const Jet& a, int m);

Jet re_part(const Jet& a);
Jet im_part(const Jet& a);

/// Least total degree with a nonzero coefficient; nullopt when the jet is
/// zero through its validity order.
std::optional<int> ord(const Jet& a);

bool is_real(const Jet& a);

}  // namespace crflat
