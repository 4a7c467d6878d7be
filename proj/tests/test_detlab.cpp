#include <doctest.h>

#include "crflat/detlab.hpp"
#include "oracles.hpp"

using namespace crflat;
using crflat::testing::det_laplace;

namespace {

UniPoly up(std::vector<Rat> ascending) { return UniPoly(std::move(ascending)); }

}  // namespace

TEST_CASE("smallest structured determinants") {
    CHECK(det_structured(MatKind::S, 1) == UniPoly(2));
    CHECK(det_structured(MatKind::D, 1) == UniPoly(1));
    CHECK_THROWS(build_matrix(MatKind::Rplus, 1));
    CHECK_THROWS(build_matrix(MatKind::D, 0));
}

TEST_CASE("Rplus entries for mhat = 2 match the hand-expanded grid") {
    StructuredMatrix sm = build_matrix(MatKind::Rplus, 2);
    REQUIRE(sm.entries.rows() == 3);
    // rows indexed by 2i-1 in {1,3,5}
    Mat<UniPoly> want(3, 3);
    want(0, 0) = up({Rat(5), Rat(-4), Rat(-4), Rat(3)});
    want(0, 1) = up({Rat(18), Rat(0), Rat(0), Rat(-18)});
    want(0, 2) = up({Rat(20), Rat(-20)});
    want(1, 0) = up({Rat(10), Rat(-4), Rat(-4), Rat(1)});
    want(1, 1) = up({Rat(60), Rat(0), Rat(0), Rat(-6)});
    want(1, 2) = up({Rat(40), Rat(-20)});
    want(2, 0) = up({Rat(1)});
    want(2, 1) = up({Rat(18)});
    want(2, 2) = up({Rat(4)});
    CHECK(sm.entries == want);

    // determinant agrees with the cofactor-expansion oracle
    CHECK(det_structured(MatKind::Rplus, 2) == det_laplace(sm.entries));
}

TEST_CASE("Rminus is Rplus with xi negated") {
    for (int mh : {2, 3}) {
        StructuredMatrix plus = build_matrix(MatKind::Rplus, mh);
        StructuredMatrix minus = build_matrix(MatKind::Rminus, mh);
        const int sz = plus.entries.rows();
        for (int i = 0; i < sz; ++i)
            for (int j = 0; j < sz; ++j) {
                UniPoly flipped;
                const UniPoly& p = plus.entries(i, j);
                for (int d = 0; d <= p.degree(); ++d)
                    flipped += UniPoly::monomial(d, d % 2 == 0 ? p.coeff(d) : -p.coeff(d));
                CHECK(minus.entries(i, j) == flipped);
            }
    }
}

TEST_CASE("closed form of det Rpm") {
    for (int mh : {2, 3}) {
        for (MatKind k : {MatKind::Rplus, MatKind::Rminus}) {
            ClosedFormReport rep = verify_closed_form_R(k, mh);
            CHECK(rep.ok);
            CHECK(rep.xi_exponent == (mh - 1) * (mh - 1));
            CHECK(rep.unit_exponent == 3 * mh - 2);
            CHECK(!rep.c1.is_zero());
        }
    }
    // vanishing orders are exact, not just lower bounds
    for (int mh : {2, 3, 4}) {
        UniPoly d = det_structured(MatKind::Rplus, mh);
        CHECK(d.vanishing_order_at(Rat(0)) == (mh - 1) * (mh - 1));
        CHECK(d.vanishing_order_at(Rat(1)) == 3 * mh - 2);
    }
}

TEST_CASE("N and T are nonsingular away from xi = 0") {
    for (int mh : {2, 3}) {
        for (const Rat& xi0 : {Rat(1), Rat(-1), Rat(1, 2), Rat(-1, 2), Rat(1, 3), Rat(2), Rat(3)}) {
            CHECK(verify_nonsingular(MatKind::N, mh, xi0));
            CHECK(verify_nonsingular(MatKind::T, mh, xi0));
        }
    }
    CHECK_THROWS(verify_nonsingular(MatKind::N, 2, Rat(0)));
    CHECK_THROWS(verify_nonsingular(MatKind::Rplus, 2, Rat(1)));
}

TEST_CASE("D and S stay nonsingular") {
    for (int mh = 1; mh <= 15; ++mh) {
        CHECK(!det_structured(MatKind::D, mh).is_zero());
        CHECK(!det_structured(MatKind::S, mh).is_zero());
    }
}

TEST_CASE("S satisfies the column-reduction recursion") {
    // Stilde_ij = (2i-1)/(2 mh - j + 1) S_ij, Scheck subtracts adjacent
    // columns; det Scheck = (-1)^(mh+1) det S^(2 mh - 2)
    for (int mh = 2; mh <= 10; ++mh) {
        Mat<Rat> stilde(mh, mh);
        for (int i = 1; i <= mh; ++i)
            for (int j = 1; j <= mh; ++j)
                stilde(i - 1, j - 1) =
                    Rat(2 * i - 1, 2 * mh - j + 1) * Rat(binomial(2 * mh + 1 - j, 2 * i - 1));
        Mat<Rat> scheck(mh, mh);
        for (int i = 0; i < mh; ++i) {
            for (int j = 0; j + 1 < mh; ++j) scheck(i, j) = stilde(i, j) - stilde(i, j + 1);
            scheck(i, mh - 1) = stilde(i, mh - 1);
        }
        Rat lhs = det_exact(scheck);
        Rat rhs = det_structured(MatKind::S, mh - 1).coeff(0);
        if (mh % 2 == 0) rhs = -rhs;  // sign (-1)^(mh+1)
        CHECK(lhs == rhs);
    }
}

TEST_CASE("alpha identity residuals vanish") {
    for (int mh = 1; mh <= 3; ++mh)
        for (int k0 = 0; 2 * k0 <= 3 * mh; ++k0) {
            CHECK(alpha_identity(mh, k0).is_zero());
        }
    CHECK_THROWS(alpha_identity(2, 4));
    CHECK_THROWS(alpha_identity(2, -1));
}

TEST_CASE("det report JSON is deterministic and carries the factorization") {
    std::string a = det_report_json(MatKind::Rplus, 2);
    std::string b = det_report_json(MatKind::Rplus, 2);
    CHECK(a == b);
    CHECK(a.find("\"xi_exp\": 1") != std::string::npos);
    CHECK(a.find("\"one_minus_xi_exp\": 4") != std::string::npos);
    std::string s = det_report_json(MatKind::S, 1);
    CHECK(s.find("\"det\": \"2\"") != std::string::npos);
}
