#include <doctest.h>

#include "crflat/holo_correction.hpp"
#include "crflat/jet.hpp"

using namespace crflat;

namespace {

Jet random_jet(SplitMix64& rng, int n, int order, int max_deg) {
    Jet j(n, order);
    for (int trial = 0; trial < 12; ++trial) {
        MultiIndex idx = MultiIndex::zero(n);
        int budget = static_cast<int>(rng.below(max_deg + 1));
        for (int d = 0; d < budget; ++d) {
            int slot = static_cast<int>(rng.below(2 * n));
            if (slot < n)
                idx.alpha[slot]++;
            else
                idx.beta[slot - n]++;
        }
        j.add_coeff(idx, CNum(rng.small_rat(3, 2), rng.small_rat(3, 2)));
    }
    return j;
}

Jet random_real_jet(SplitMix64& rng, int n, int order, int max_deg) {
    Jet j = random_jet(rng, n, order, max_deg);
    return (j + conj_series(j)).scaled(CNum(Rat(1, 2)));
}

// Exhaustive convolution, no truncation cleverness.
Jet mul_oracle(const Jet& a, const Jet& b) {
    const int order = std::min(a.order(), b.order());
    Jet r(a.n(), order);
    for (const auto& [ia, ca] : a.terms())
        for (const auto& [ib, cb] : b.terms()) {
            if (ia.degree() + ib.degree() > order) continue;
            r.add_coeff(ia + ib, ca * cb);
        }
    return r;
}

}  // namespace

TEST_CASE("mul_trunc spec examples") {
    const int n = 2;
    Jet z1 = Jet::variable(n, 5, 1, false);
    Jet z1b = Jet::variable(n, 5, 1, true);
    Jet prod = mul_trunc(z1, z1b);
    CHECK(prod.coeff(MultiIndex({1, 0}, {1, 0})) == CNum(1));
    CHECK(prod.terms().size() == 1);

    Jet z1sq = mul_trunc(z1, z1);
    Jet trunc = mul_trunc(z1sq.truncated(3), z1sq.truncated(3));
    CHECK(trunc.is_zero());  // degree 4 beyond order 3
    CHECK(trunc.order() == 3);
}

TEST_CASE("mul_trunc matches brute-force convolution") {
    SplitMix64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        Jet a = random_jet(rng, 2, 6, 3), b = random_jet(rng, 2, 6, 3);
        CHECK(mul_trunc(a, b) == mul_oracle(a, b));
    }
}

TEST_CASE("mul commutative and associative, conj multiplicative") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 8; ++trial) {
        Jet a = random_jet(rng, 2, 5, 3), b = random_jet(rng, 2, 5, 3), c = random_jet(rng, 2, 5, 2);
        CHECK(mul_trunc(a, b) == mul_trunc(b, a));
        CHECK(mul_trunc(mul_trunc(a, b), c) == mul_trunc(a, mul_trunc(b, c)));
        CHECK(conj_series(mul_trunc(a, b)) == mul_trunc(conj_series(a), conj_series(b)));
    }
}

TEST_CASE("conj_series spec examples") {
    const int n = 2;
    // i * z1 zb2 -> -i * z2 zb1
    Jet a = Jet::monomial(n, 4, MultiIndex({1, 0}, {0, 1}), CNum::i());
    Jet ac = conj_series(a);
    CHECK(ac.coeff(MultiIndex({0, 1}, {1, 0})) == -CNum::i());

    SplitMix64 rng(3);
    Jet r = random_real_jet(rng, 2, 5, 3);
    CHECK(conj_series(r) == r);
    Jet g = random_jet(rng, 2, 5, 3);
    CHECK(conj_series(conj_series(g)) == g);
}

TEST_CASE("diff spec examples and power rule oracle") {
    const int n = 2;
    Jet z1 = Jet::variable(n, 5, 1, false);
    Jet d = diff(mul_trunc(z1, z1), 1, false);
    CHECK(d.coeff(MultiIndex({1, 0}, {0, 0})) == CNum(2));

    Jet absz1 = mul_trunc(z1, Jet::variable(n, 5, 1, true));
    Jet db = diff(absz1, 1, true);
    CHECK(db.coeff(MultiIndex({1, 0}, {0, 0})) == CNum(1));

    SplitMix64 rng(17);
    for (int trial = 0; trial < 6; ++trial) {
        Jet a = random_jet(rng, 2, 6, 4);
        for (int i = 1; i <= n; ++i)
            for (bool barred : {false, true}) {
                Jet got = diff(a, i, barred);
                Jet want(n, a.order() - 1);
                for (const auto& [idx, c] : a.terms()) {
                    int e = barred ? idx.beta[i - 1] : idx.alpha[i - 1];
                    if (e == 0) continue;
                    MultiIndex m2 = idx;
                    (barred ? m2.beta : m2.alpha)[i - 1] -= 1;
                    want.add_coeff(m2, c * CNum(Rat(e)));
                }
                CHECK(got == want);
            }
    }
}

TEST_CASE("mixed partials commute") {
    SplitMix64 rng(23);
    Jet a = random_jet(rng, 3, 6, 4);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            CHECK(diff(diff(a, i, false), j, true) == diff(diff(a, j, true), i, false));
}

TEST_CASE("homog, re/im, ord, is_real") {
    const int n = 2;
    SplitMix64 rng(11);
    Jet a = random_jet(rng, n, 6, 4);
    Jet h2 = homog(a, 2);
    for (const auto& [idx, c] : h2.terms()) CHECK(idx.degree() == 2);
    CHECK_THROWS(homog(a, 7));

    Jet r = random_real_jet(rng, n, 6, 4);
    CHECK(is_real(r));
    CHECK(im_part(r).is_zero());
    CHECK(re_part(r) == r);

    Jet z(n, 5);
    CHECK(!ord(z).has_value());
    Jet c3 = Jet::monomial(n, 5, MultiIndex({2, 1}, {0, 0}), CNum(1));
    CHECK(ord(c3) == 3);

    // re and im parts of products of real jets stay real
    Jet s = random_real_jet(rng, n, 6, 3), t = random_real_jet(rng, n, 6, 3);
    Jet prod = mul_trunc(s, t);
    CHECK(is_real(re_part(prod)));
    CHECK(is_real(im_part(prod)));
    CHECK(is_real(prod));

    // a = re + i*im for a general jet
    Jet g = random_jet(rng, n, 6, 3);
    CHECK(re_part(g) + im_part(g).scaled(CNum::i()) == g);
}

TEST_CASE("coefficient reads above validity order are rejected") {
    Jet a(2, 3);
    CHECK_THROWS(a.coeff(MultiIndex({2, 2}, {0, 0})));
    CHECK(a.coeff(MultiIndex({2, 1}, {0, 0})).is_zero());
}

TEST_CASE("substitute_w spec examples") {
    const int n = 2;
    const int order = 6;
    // q for lambda = (0, 1/4)
    Jet q(n, order);
    q.add_coeff(MultiIndex({1, 0}, {1, 0}), CNum(1));
    q.add_coeff(MultiIndex({0, 1}, {0, 1}), CNum(1));
    q.add_coeff(MultiIndex({0, 2}, {0, 0}), CNum(Rat(1, 4)));
    q.add_coeff(MultiIndex({0, 0}, {0, 2}), CNum(Rat(1, 4)));

    HoloCorrection bw(n, 2);
    bw.set({0, 0}, 1, CNum(1));  // B = w
    CHECK(substitute_w(bw, q) == q);

    HoloCorrection bzw(n, 3);
    bzw.set({1, 0}, 1, CNum(1));  // B = z1 w
    Jet abs1 = mul_trunc(Jet::variable(n, order, 1, false), Jet::variable(n, order, 1, true));
    Jet got = substitute_w(bzw, abs1);
    CHECK(got == mul_trunc(Jet::variable(n, order, 1, false), abs1));

    HoloCorrection bw2(n, 4);
    bw2.set({0, 0}, 2, CNum(Rat(0), Rat(1)));  // B = i w^2
    CHECK(substitute_w(bw2, q) == mul_trunc(q, q).scaled(CNum::i()));

    Jet with_const = Jet::constant(n, order, CNum(1));
    CHECK_THROWS(substitute_w(bw, with_const));
}
