#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace crflat {

/// Arbitrary precision rational, always in canonical form:
/// gcd(|num|, den) = 1 and den >= 1.
class Rat {
  public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }
    explicit Rat(const mpz_class& v) : v_(v) {}

    /// Parses "p", "-p", "p/q".
    static Rat parse(const std::string& s);

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return Rat(mpq_class(-v_), already_canonical{}); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat pow(long e) const;

    /// "p/q", or just "p" when the denominator is 1.
    std::string str() const;

  private:
    struct already_canonical {};
    Rat(mpq_class v, already_canonical) : v_(std::move(v)) {}
    mpq_class v_;
};

/// Complex number with exact rational real and imaginary parts.
struct CNum {
    Rat re, im;

    CNum() = default;
    CNum(Rat r) : re(std::move(r)) {}
    CNum(long r) : re(r) {}
    CNum(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static CNum i() { return CNum(Rat(0), Rat(1)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    CNum conj() const { return CNum(re, -im); }

    CNum operator-() const { return CNum(-re, -im); }
    CNum& operator+=(const CNum& o) { re += o.re; im += o.im; return *this; }
    CNum& operator-=(const CNum& o) { re -= o.re; im -= o.im; return *this; }
    CNum& operator*=(const CNum& o) {
        Rat r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    CNum& operator/=(const CNum& o) {
        Rat n = o.re * o.re + o.im * o.im;
        if (n.is_zero()) throw std::domain_error("CNum: division by zero");
        Rat r = (re * o.re + im * o.im) / n;
        im = (im * o.re - re * o.im) / n;
        re = r;
        return *this;
    }

    friend CNum operator+(CNum a, const CNum& b) { return a += b; }
    friend CNum operator-(CNum a, const CNum& b) { return a -= b; }
    friend CNum operator*(CNum a, const CNum& b) { return a *= b; }
    friend CNum operator/(CNum a, const CNum& b) { return a /= b; }
    friend bool operator==(const CNum& a, const CNum& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const CNum& a, const CNum& b) { return !(a == b); }

    std::string str() const;
};

/// Binomial coefficient with the extended convention C(a,b) = 0 for b < 0 or b > a.
mpz_class binomial(long a, long b);
Rat binomial_rat(long a, long b);

/// Deterministic 64-bit PRNG (splitmix64), platform independent.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform value in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    /// Small rational with numerator in [-max_num, max_num] and denominator in [1, max_den].
    Rat small_rat(long max_num, long max_den);

  private:
    std::uint64_t state_;
};

}  // namespace crflat
