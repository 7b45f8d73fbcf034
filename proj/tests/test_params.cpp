#include <doctest.h>

#include "rigidity/errors.hpp"
#include "rigidity/params.hpp"

using namespace rigidity;

namespace {

RigidityParams vp(int k, int M, std::vector<int> d, std::vector<int> xi) {
    return validate_shape(k, M, DegreeVector{std::move(d)},
                          MultiplicityVector{std::move(xi)});
}

}  // namespace

TEST_CASE("binomial small and degenerate values") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(5, 5) == 1);
    CHECK(binomial(6, 2) == 15);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(5, 7) == 0);
    CHECK(binomial(-1, 0) == 0);
    CHECK(binomial(3, -2) == 0);
    CHECK(binomial(Int(60), Int(30)) == Int("118264581564861424"));
}

TEST_CASE("binomial matches Pascal recurrence") {
    for (int n = 1; n <= 40; ++n)
        for (int r = 1; r < n; ++r)
            CHECK(binomial(n, r) == binomial(n - 1, r - 1) + binomial(n - 1, r));
}

TEST_CASE("derived invariants of the double-quartic tuple") {
    const auto p = vp(2, 6, {4, 4}, {2, 1});
    CHECK(p.c_star == 0);
    CHECK(p.mu == 2);
    CHECK(p.deg_v == 16);
    CHECK(p.sing_type == std::vector<int>{2});
    CHECK(p.l() == 1);
    CHECK(mu_over_d(p) == Rat(1, 8));
    CHECK(to_string(mu_over_d(p)) == "1/8");

    const auto eq1 = check_main_inequality(p);
    CHECK(eq1.lhs == 52);
    CHECK(eq1.rhs == 28);
    CHECK(eq1.holds);

    const auto eq2 = check_dimension_inequality(p);
    CHECK(eq2.lhs == 6);
    CHECK(eq2.rhs == 6);
    CHECK(eq2.holds);
}

TEST_CASE("a k=3 tuple with one double point") {
    const auto p = vp(3, 7, {2, 4, 4}, {1, 2, 1});
    CHECK(p.c_star == 0);
    CHECK(p.mu == 2);
    CHECK(p.deg_v == 32);
    CHECK(p.sing_type == std::vector<int>{2});

    const auto eq1 = check_main_inequality(p);
    CHECK(eq1.lhs == 62);
    CHECK(eq1.rhs == 30);
    CHECK(eq1.holds);
    CHECK(check_dimension_inequality(p).holds);
}

TEST_CASE("main inequality can hold with equality") {
    const auto p = vp(2, 5, {3, 4}, {3, 3});
    CHECK(p.c_star == 1);
    const auto eq1 = check_main_inequality(p);
    CHECK(eq1.lhs == 26);
    CHECK(eq1.rhs == 26);
    CHECK(eq1.holds);
    // too singular for the dimension bound: 5 < 3 + 4 + 4
    const auto eq2 = check_dimension_inequality(p);
    CHECK(eq2.rhs == 11);
    CHECK_FALSE(eq2.holds);
}

TEST_CASE("main inequality fails when every multiplicity is maximal") {
    const auto p = vp(2, 5, {3, 4}, {3, 4});
    CHECK(p.c_star == 2);
    const auto eq1 = check_main_inequality(p);
    CHECK(eq1.lhs == 18);
    CHECK(eq1.rhs == 28);
    CHECK_FALSE(eq1.holds);
}

TEST_CASE("validate_shape names the first violated constraint") {
    CHECK_THROWS_WITH_AS(vp(1, 5, {6}, {1}), "k below 2", ShapeError);
    CHECK_THROWS_WITH_AS(vp(2, 4, {3, 3}, {1, 1}), "M below 2k+1", ShapeError);
    CHECK_THROWS_WITH_AS(vp(2, 5, {3, 2, 2}, {1, 1}),
                         "degree vector length mismatch", ShapeError);
    CHECK_THROWS_WITH_AS(vp(2, 5, {3, 4}, {1}), "xi vector length mismatch",
                         ShapeError);
    CHECK_THROWS_WITH_AS(vp(2, 5, {1, 6}, {1, 1}), "degree below 2", ShapeError);
    CHECK_THROWS_WITH_AS(vp(2, 5, {4, 3}, {1, 1}), "degrees not sorted",
                         ShapeError);
    CHECK_THROWS_WITH_AS(vp(2, 5, {3, 3}, {1, 1}), "degree sum mismatch",
                         ShapeError);
    CHECK_THROWS_WITH_AS(vp(2, 5, {3, 4}, {0, 1}), "xi below 1", ShapeError);
    CHECK_THROWS_WITH_AS(vp(2, 5, {3, 4}, {1, 5}), "xi exceeds degree",
                         ShapeError);
}

TEST_CASE("derive_params skips shape checks but still derives invariants") {
    // M far below 2k+1; useful for exercising the pure ops on toy shapes
    const auto p = derive_params(2, 2, DegreeVector{{2, 2}},
                                 MultiplicityVector{{1, 1}});
    CHECK(p.mu == 1);
    CHECK(p.deg_v == 4);
    CHECK(p.c_star == 0);
    CHECK(p.sing_type.empty());
    CHECK_THROWS_AS(derive_params(2, 2, DegreeVector{{2}},
                                  MultiplicityVector{{1, 1}}),
                    ShapeError);
}

TEST_CASE("derived fields are consistent across every small valid tuple") {
    int seen = 0;
    for (int M = 5; M <= 9; ++M) {
        for (int d1 = 2; 2 * d1 <= M + 2; ++d1) {
            const int d2 = M + 2 - d1;
            for (int x1 = 1; x1 <= d1; ++x1)
                for (int x2 = 1; x2 <= d2; ++x2) {
                    const auto p = vp(2, M, {d1, d2}, {x1, x2});
                    ++seen;
                    CHECK(p.mu == Int(x1) * x2);
                    CHECK(p.deg_v == Int(d1) * d2);
                    CHECK(p.c_star == (x1 == d1) + (x2 == d2));
                    CHECK(mu_over_d(p) > 0);
                    CHECK(mu_over_d(p) <= 1);
                    int l = (x1 >= 2) + (x2 >= 2);
                    CHECK(p.l() == l);
                }
        }
    }
    CHECK(seen > 100);
}
