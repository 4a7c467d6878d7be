#include <doctest.h>

#include <algorithm>
#include <set>

#include "crflat/flatten.hpp"

using namespace crflat;

namespace {

MultiIndex mi(std::vector<int> a, std::vector<int> b) { return MultiIndex(std::move(a), std::move(b)); }

std::set<std::pair<std::vector<int>, std::vector<int>>> full_index_set(const NormalFormSpec& s) {
    std::set<std::pair<std::vector<int>, std::vector<int>>> out;
    for (const auto& c : s.constraints)
        if (c.kind == NormalConstraint::Kind::Full) out.insert({c.index.alpha, c.index.beta});
    return out;
}

}  // namespace

TEST_CASE("normal target for n=2, m0=3 matches the two appendix lists") {
    // lambda_n != 0
    NormalFormSpec s = normal_target(2, 3, Rat(1, 4));
    CHECK(s.delta == -3);
    CHECK(s.mhat == 1);
    CHECK(s.constraints.size() == 6);
    auto idx = full_index_set(s);
    std::set<std::pair<std::vector<int>, std::vector<int>>> want{
        {{0, 3}, {0, 0}}, {{1, 2}, {0, 0}}, {{2, 1}, {0, 0}}, {{3, 0}, {0, 0}},
        {{1, 1}, {0, 1}},  // E_(e_n+e_1, e_n)
        {{1, 1}, {1, 0}},  // E_(e_n+e_1, e_1)
    };
    CHECK(idx == want);

    // lambda_n = 0
    NormalFormSpec s0 = normal_target(2, 3, Rat(0));
    CHECK(s0.lambda_n_zero);
    CHECK(s0.constraints.size() == 6);
    auto idx0 = full_index_set(s0);
    std::set<std::pair<std::vector<int>, std::vector<int>>> want0{
        {{0, 3}, {0, 0}}, {{1, 2}, {0, 0}}, {{2, 1}, {0, 0}}, {{3, 0}, {0, 0}},
        {{0, 2}, {0, 1}},  // E_(2e_n, e_n)
        {{1, 1}, {0, 1}},  // E_(e_n+e_1, e_n)
    };
    CHECK(idx0 == want0);
}

TEST_CASE("constraint count equals the correction-space dimension") {
    for (int n : {2, 3})
        for (int m0 = 3; m0 <= 9; ++m0)
            for (const Rat& ln : {Rat(0), Rat(1, 4), Rat(1, 3), Rat(2, 5)}) {
                NormalFormSpec s = normal_target(n, m0, ln);
                CHECK(s.real_constraint_count() == correction_space_dim(n, m0));
            }
}

TEST_CASE("normalization map is square with empty kernel (small cases)") {
    // includes the parabolic value: the normalization itself never needs
    // lambda_n away from 1/2
    for (const Rat& ln : {Rat(0), Rat(1, 4), Rat(1, 2)}) {
        ManifoldJet m(2, 8, {Rat(1, 3), ln}, Jet(2, 8), Jet(2, 8));
        for (int m0 = 3; m0 <= 5; ++m0) {
            NormalizationSystem sys = normalization_map(m, m0);
            CHECK(sys.map.rows() == sys.map.cols());
            CHECK(kernel_basis(sys.map).empty());
        }
    }
}

TEST_CASE("apply_correction spec examples") {
    ManifoldJet m(2, 8, {Rat(0), Rat(1, 4)}, Jet(2, 8), Jet(2, 8));

    // zero correction is the identity
    HoloCorrection z(2, 4);
    ManifoldJet same = apply_correction(m, z);
    CHECK(same.p == m.p);
    CHECK(same.E == m.E);

    // B = w^2 on w = q: E gains im(q^2) = 0, p gains q^2
    HoloCorrection bw2(2, 4);
    bw2.set({0, 0}, 2, CNum(1));
    ManifoldJet shifted = apply_correction(m, bw2);
    Jet q = m.q_jet();
    CHECK(shifted.E.is_zero());
    CHECK(shifted.p == mul(q, q));
    CHECK_THROWS(bw2.validate());  // not in normalized form, though still applicable

    HoloCorrection bzw(2, 4);
    bzw.set({2, 0}, 1, CNum(1));
    ManifoldJet moved = apply_correction(m, bzw);
    Jet z1sq = Jet::monomial(2, 8, MultiIndex({2, 0}, {0, 0}), CNum(1));
    Jet prod = mul(z1sq, q);
    CHECK(moved.p == re_part(prod));
    CHECK(moved.E == im_part(prod));
}

TEST_CASE("composition of corrections equals the combined substitution") {
    ManifoldJet m = fixture("cubic_nonminimal");
    HoloCorrection b1(2, 3);
    b1.set({1, 0}, 1, CNum(Rat(1, 2), Rat(1)));
    b1.set({0, 3}, 0, CNum(Rat(-1), Rat(0)));
    HoloCorrection b2(2, 4);
    b2.set({2, 0}, 1, CNum(Rat(1, 3)));
    b2.set({0, 0}, 2, CNum(Rat(0), Rat(2)));

    ManifoldJet twice = apply_correction(apply_correction(m, b1), b2);

    Jet d = defining_series(m);
    Jet d1 = d + substitute_w(b1, d);
    Jet d2 = d1 + substitute_w(b2, d1);
    CHECK(defining_series(twice) == d2);
}

TEST_CASE("normalize_order drives the appendix coefficients to zero") {
    const std::vector<MultiIndex> norm3 = {
        mi({0, 3}, {0, 0}), mi({1, 2}, {0, 0}), mi({2, 1}, {0, 0}),
        mi({3, 0}, {0, 0}), mi({1, 1}, {1, 0}), mi({1, 1}, {0, 1})};
    const std::vector<MultiIndex> norm30 = {
        mi({0, 3}, {0, 0}), mi({1, 2}, {0, 0}), mi({2, 1}, {0, 0}),
        mi({3, 0}, {0, 0}), mi({0, 2}, {0, 1}), mi({1, 1}, {0, 1})};

    for (long seed : {3L, 4L}) {
        for (bool zero_branch : {false, true}) {
            std::map<std::string, std::string> params{{"seed", std::to_string(seed)},
                                                      {"m", "3"},
                                                      {"lambda1", "1/5"},
                                                      {"lambdan", zero_branch ? "0" : "1/4"}};
            ManifoldJet m = fixture("appendix_random", params);
            auto [mp, b] = normalize_order(m, 3);
            CHECK(validate(mp).ok);
            for (const auto& idx : (zero_branch ? norm30 : norm3))
                CHECK(mp.E.coeff(idx).is_zero());
            // degrees below 3 are untouched (and remain zero)
            for (const auto& [idx, c] : mp.E.terms()) CHECK(idx.degree() >= 3);
            for (const auto& [idx, c] : mp.p.terms()) CHECK(idx.degree() >= 3);

            // a second pass at the same order does nothing
            auto [mp2, b2] = normalize_order(mp, 3);
            CHECK(b2.is_zero());
            CHECK(mp2.E == mp.E);
            CHECK(mp2.p == mp.p);
        }
    }
}

TEST_CASE("normalize_order leaves lower orders bit-identical") {
    ManifoldJet m = fixture("cubic_nonminimal", {{"mu1", "1"}, {"mu2", "2"}});
    auto [m3, b3] = normalize_order(m, 3);
    auto [m4, b4] = normalize_order(m3, 4);
    for (int d = 0; d <= 3; ++d) {
        CHECK(homog(m4.E, d) == homog(m3.E, d));
        CHECK(homog(m4.p, d) == homog(m3.p, d));
    }
    CHECK(m4.lambda == m.lambda);
}

TEST_CASE("flatten_to_order on the flat quadric") {
    ManifoldJet m(2, 8, {Rat(0), Rat(1, 4)}, Jet(2, 8), Jet(2, 8));
    FlattenReport rep = flatten_to_order(m, 6);
    CHECK(rep.outcome == FlattenReport::Outcome::Flattened);
    CHECK(rep.reached_order == 6);
    for (const auto& b : rep.corrections) CHECK(b.is_zero());
}

TEST_CASE("flatten_to_order flattens the non-minimal cubic example") {
    ManifoldJet m = fixture("cubic_nonminimal",
                            {{"lambda1", "0"}, {"lambda2", "1/4"}, {"mu1", "1"}, {"mu2", "2"}});
    auto r = reindex_smallest_nonparabolic(m);
    REQUIRE(r.has_value());
    FlattenReport rep = flatten_to_order(r->first, 6);
    CHECK(rep.outcome == FlattenReport::Outcome::Flattened);
    CHECK(rep.reached_order == 6);
}

TEST_CASE("flatten_to_order reports the obstruction of the hy2 example") {
    ManifoldJet m = fixture("hy2_obstruction", {{"b22", "1"}});
    FlattenReport rep = flatten_to_order(m, 4);
    CHECK(rep.outcome == FlattenReport::Outcome::Obstructed);
    CHECK(rep.reached_order == 4);
    REQUIRE(rep.obstruction.has_value());
    CHECK(!rep.obstruction->coeff(MultiIndex({2, 0}, {0, 2})).is_zero());
}

TEST_CASE("flatten_to_order is NotApplicable only when all invariants are parabolic") {
    ManifoldJet par(2, 8, {Rat(1, 2), Rat(1, 2)}, Jet(2, 8), Jet(2, 8));
    CHECK(flatten_to_order(par, 4).outcome == FlattenReport::Outcome::NotApplicable);
}

TEST_CASE("rigidity kernel small cases") {
    RigidityResult r = rigidity_kernel(2, {Rat(0), Rat(0)}, 3);
    CHECK(r.applicable);
    CHECK(r.dimension == 0);

    RigidityResult r2 = rigidity_kernel(2, {Rat(1, 8), Rat(1, 4)}, 3);
    CHECK(r2.dimension == 0);

    RigidityResult par = rigidity_kernel(2, {Rat(1, 2), Rat(1, 2)}, 3);
    CHECK(!par.applicable);

    // refuse un-reindexed input: lambda_n parabolic but another invariant is not
    CHECK_THROWS(rigidity_kernel(2, {Rat(0), Rat(1, 2)}, 3));
}

TEST_CASE("flatten report serialization is deterministic") {
    ManifoldJet m = fixture("hy2_obstruction", {{"b22", "1"}});
    FlattenReport rep = flatten_to_order(m, 4);
    std::string a = flatten_report_json(rep, {1, 2});
    FlattenReport rep2 = flatten_to_order(m, 4);
    std::string b = flatten_report_json(rep2, {1, 2});
    CHECK(a == b);
    CHECK(a.find("\"outcome\": \"obstructed\"") != std::string::npos);
}

TEST_CASE("pure-row coefficients match the binomial closed forms") {
    // For a correction term b z_n^h w^j (h + 2j = m0) substituted with the
    // quadric, the coefficients of z_n^t zb_n^s and |z_1|^2 z_n^(t-1) zb_n^(s-1)
    // (t >= s, t + s = m0) are
    //   sum_{k+2l=s} I_kl - sum_{k+2l=t, k+l<=m0/2} J_kl   and
    //   sum_{k+2l=s} k I_kl - sum_{k+2l=t, k+l<=m0/2} k J_kl,
    // where I_kl = (1/2i) b C(j, j-k-l) lambda_n^(j-k) C(k+l, l) over the
    // terms with j >= k+l, and J_kl = -conj(I_kl).
    const int n = 2;
    for (int m0 : {4, 5}) {
        for (const Rat& ln : {Rat(1, 4), Rat(1, 3)}) {
            ManifoldJet m(n, m0 + 1, {Rat(1, 5), ln}, Jet(n, m0 + 1), Jet(n, m0 + 1));
            Jet q = m.q_jet();
            for (int j = 0; 2 * j <= m0; ++j) {
                const int h = m0 - 2 * j;
                for (const CNum& b : {CNum(Rat(2, 3)), CNum(Rat(0), Rat(1)), CNum(Rat(1), Rat(-2))}) {
                    HoloCorrection hc(n, m0);
                    if (h == 0 && !b.re.is_zero()) continue;  // reality normalization
                    hc.set({0, h}, j, b);
                    Jet im_bq = im_part(substitute_w(hc, q));

                    auto I_kl = [&](int k, int l) {
                        if (j < k + l) return CNum();
                        CNum v = b / CNum(Rat(0), Rat(2));  // b / 2i
                        Rat w = Rat(binomial(j, j - k - l)) * ln.pow(j - k) *
                                Rat(binomial(k + l, l));
                        return v * CNum(w);
                    };
                    auto J_kl = [&](int k, int l) { return -I_kl(k, l).conj(); };

                    for (int t = (m0 + 1) / 2; t <= m0; ++t) {
                        const int s = m0 - t;
                        CNum pure, mixed;
                        for (int l = 0; 2 * l <= s; ++l) {
                            pure += I_kl(s - 2 * l, l);
                            mixed += I_kl(s - 2 * l, l) * CNum(Rat(s - 2 * l));
                        }
                        for (int l = 0; 2 * l <= t; ++l) {
                            const int k = t - 2 * l;
                            if (2 * (k + l) > m0) continue;
                            pure -= J_kl(k, l);
                            mixed -= J_kl(k, l) * CNum(Rat(k));
                        }
                        CHECK(im_bq.coeff(MultiIndex({0, t}, {0, s})) == pure);
                        if (t >= 1 && s >= 1)
                            CHECK(im_bq.coeff(MultiIndex({1, t - 1}, {1, s - 1})) == mixed);
                    }
                }
            }
            // units carrying a z_1 power contribute nothing to those rows
            HoloCorrection hc(n, m0);
            hc.set({1, m0 - 3}, 1, CNum(Rat(1), Rat(1)));
            Jet im_bq = im_part(substitute_w(hc, q));
            for (int t = (m0 + 1) / 2; t <= m0; ++t) {
                const int s = m0 - t;
                CHECK(im_bq.coeff(MultiIndex({0, t}, {0, s})).is_zero());
                if (t >= 1 && s >= 1)
                    CHECK(im_bq.coeff(MultiIndex({1, t - 1}, {1, s - 1})).is_zero());
            }
        }
    }
}

TEST_CASE("non-minimal fixtures flatten to truncation minus four") {
    for (auto params : {std::map<std::string, std::string>{
                            {"lambda1", "0"}, {"lambda2", "1/4"}, {"mu1", "1"}, {"mu2", "2"}},
                        std::map<std::string, std::string>{
                            {"lambda1", "1/3"}, {"lambda2", "1/5"}, {"mu1", "0,1"}, {"mu2", "2,1"}}}) {
        ManifoldJet m = fixture("cubic_nonminimal", params);
        auto re = reindex_smallest_nonparabolic(m);
        REQUIRE(re.has_value());
        FlattenReport rep = flatten_to_order(re->first, m.order - 4);
        CHECK(rep.outcome == FlattenReport::Outcome::Flattened);
        CHECK(rep.reached_order == m.order - 4);
    }
}

TEST_CASE("rigidity kernel stays trivial for zero invariants through degree 8") {
    for (int m : {7, 8}) {
        RigidityResult r = rigidity_kernel(2, {Rat(0), Rat(0)}, m);
        CHECK(r.applicable);
        CHECK(r.dimension == 0);
    }
}
