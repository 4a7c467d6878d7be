#include "crflat/rational.hpp"

namespace crflat {

Rat Rat::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rat::parse: empty string");
    for (char c : s) {
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            throw std::invalid_argument("Rat::parse: bad character in '" + s + "'");
    }
    mpq_class v;
    if (v.set_str(s, 10) != 0)
        throw std::invalid_argument("Rat::parse: cannot parse '" + s + "'");
    if (v.get_den() == 0) throw std::invalid_argument("Rat::parse: zero denominator in '" + s + "'");
    v.canonicalize();
    return Rat(v);
}

Rat Rat::pow(long e) const {
    if (e < 0) {
        if (is_zero()) throw std::domain_error("Rat::pow: zero to negative power");
        return (Rat(1) / *this).pow(-e);
    }
    Rat r(1), b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::string Rat::str() const {
    return v_.get_str();
}

std::string CNum::str() const {
    return "(" + re.str() + ", " + im.str() + ")";
}

mpz_class binomial(long a, long b) {
    if (b < 0 || b > a) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return r;
}

Rat binomial_rat(long a, long b) {
    return Rat(binomial(a, b));
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    return bound == 0 ? 0 : next() % bound;
}

Rat SplitMix64::small_rat(long max_num, long max_den) {
    long num = static_cast<long>(below(static_cast<std::uint64_t>(2 * max_num + 1))) - max_num;
    long den = 1 + static_cast<long>(below(static_cast<std::uint64_t>(max_den)));
    return Rat(num, den);
}

}  // namespace crflat
