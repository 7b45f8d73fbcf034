#include <doctest.h>

#include <functional>
#include <random>
#include <stdexcept>

#include "rigidity/errors.hpp"
#include "rigidity/finitefield.hpp"

using namespace rigidity;

namespace {

RigidityParams vp(int k, int M, std::vector<int> d, std::vector<int> xi) {
    return validate_shape(k, M, DegreeVector{std::move(d)},
                          MultiplicityVector{std::move(xi)});
}

MultiPoly monomial(int nvars, std::uint32_t p, const std::vector<int>& exps,
                   std::uint32_t c = 1) {
    MultiPoly q(nvars, p);
    q.add_term(exps, c);
    return q;
}

MultiPoly random_homogeneous(int nvars, std::uint32_t p, int deg,
                             std::mt19937_64& eng) {
    MultiPoly q(nvars, p);
    std::vector<int> exps(nvars, 0);
    // stack over compositions of deg
    const std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == nvars - 1) {
            exps[pos] = left;
            q.add_term(exps, static_cast<std::uint32_t>(eng() % p));
            return;
        }
        for (int e = 0; e <= left; ++e) {
            exps[pos] = e;
            rec(pos + 1, left - e);
        }
    };
    rec(0, deg);
    return q;
}

}  // namespace

TEST_CASE("primality screen") {
    CHECK(is_prime(2));
    CHECK(is_prime(5));
    CHECK(is_prime(101));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));   // 7 * 13
    CHECK_FALSE(is_prime(390625));
}

TEST_CASE("field axioms hold exactly on random triples") {
    std::mt19937_64 eng(42);
    for (std::uint32_t p : {2u, 5u, 101u, 997u}) {
        for (int trial = 0; trial < 200; ++trial) {
            const auto a = fp(eng(), p);
            const auto b = fp(eng(), p);
            const auto c = fp(eng(), p);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a - a == fp(0, p));
            if (b.value != 0) {
                CHECK(b * inverse(b) == fp(1, p));
                CHECK((a / b) * b == a);
            }
            CHECK(pow_fp(a, p) == a);   // Fermat
        }
    }
}

TEST_CASE("field error paths") {
    CHECK_THROWS_AS(fp(3, 6), ShapeError);
    CHECK_THROWS_AS(inverse(fp(0, 5)), std::domain_error);
    CHECK_THROWS_AS(fp(1, 5) + fp(1, 7), InternalError);
}

TEST_CASE("sparse polynomial bookkeeping") {
    MultiPoly q(3, 5);
    CHECK(q.is_zero());
    CHECK(q.degree() == -1);
    CHECK(q.is_homogeneous());

    q.add_term({1, 0, 0}, 2);
    q.add_term({0, 2, 0}, 3);
    CHECK_FALSE(q.is_zero());
    CHECK(q.degree() == 2);
    CHECK_FALSE(q.is_homogeneous());
    CHECK(q.coefficient({1, 0, 0}) == fp(2, 5));
    CHECK(q.coefficient({0, 0, 1}) == fp(0, 5));

    // accumulation cancels and erases
    q.add_term({1, 0, 0}, 3);
    CHECK(q.coefficient({1, 0, 0}) == fp(0, 5));
    CHECK(q.terms().size() == 1);
    CHECK(q.is_homogeneous());

    // 3*z2^2 at z2=3 is 27 = 2 mod 5
    CHECK(q.evaluate({0, 3, 0}) == 2);

    const auto r = q.times_var(0);
    CHECK(r.coefficient({1, 2, 0}) == fp(3, 5));
    CHECK(r.degree() == 3);
    CHECK(q.scaled(0).is_zero());
    CHECK(q.scaled(2).coefficient({0, 2, 0}) == fp(1, 5));

    CHECK_THROWS_AS(q.add_term({1, 0}, 1), ShapeError);
    CHECK_THROWS_AS(q.add_term({-1, 0, 0}, 1), ShapeError);
    CHECK_THROWS_AS(q.times_var(7), IndexError);
    CHECK_THROWS_AS(MultiPoly(3, 4), ShapeError);
    CHECK_THROWS_AS(q + MultiPoly(3, 7), InternalError);
    CHECK(q + MultiPoly(3, 5) == q);
}

TEST_CASE("random tuples are deterministic and exactly graded") {
    const auto p = vp(2, 6, {4, 4}, {2, 1});
    const auto a = random_tuple(p, 5, 7);
    const auto b = random_tuple(p, 5, 7);
    const auto c = random_tuple(p, 5, 8);

    REQUIRE(a.polys.size() == 2);
    REQUIRE(a.polys[0].size() == 3);   // degrees 2, 3, 4
    REQUIRE(a.polys[1].size() == 4);   // degrees 1, 2, 3, 4
    for (std::size_t i = 0; i < a.polys.size(); ++i)
        for (std::size_t t = 0; t < a.polys[i].size(); ++t) {
            const auto& q = a.polys[i][t];
            CHECK_FALSE(q.is_zero());
            CHECK(q.is_homogeneous());
            CHECK(q.degree() ==
                  p.multiplicities.entries[i] + static_cast<int>(t));
            CHECK(q == b.polys[i][t]);
        }
    CHECK(a.forms_in_order().size() == 7);
    CHECK(a.dump() == b.dump());
    CHECK(a.dump() != c.dump());
    CHECK(a.dump().rfind("prime 5\nvars 8\nseed 7\n", 0) == 0);

    // 11^8 blows the default point cap
    CHECK_THROWS_AS(random_tuple(p, 11, 1), BudgetError);
    CHECK_THROWS_AS(random_tuple(p, 6, 1), ShapeError);
}

TEST_CASE("shift of z1^2 is the textbook binomial square") {
    const auto f = monomial(2, 101, {2, 0});
    const auto phi = shift_expand({f}, 2);
    REQUIRE(phi.size() == 3);
    CHECK(phi[0].coefficient({0, 0}) == fp(1, 101));
    CHECK(phi[1].coefficient({1, 0}) == fp(2, 101));
    CHECK(phi[2].coefficient({2, 0}) == fp(1, 101));
    CHECK(phi[0].terms().size() == 1);
    CHECK(phi[1].terms().size() == 1);
    CHECK(phi[2].terms().size() == 1);
}

TEST_CASE("shift leaves z1-free polynomials in the top slot") {
    const auto f = monomial(2, 101, {0, 3});
    const auto phi = shift_expand({f}, 3);
    REQUIRE(phi.size() == 4);
    CHECK(phi[0].is_zero());
    CHECK(phi[1].is_zero());
    CHECK(phi[2].is_zero());
    CHECK(phi[3].coefficient({0, 3}) == fp(1, 101));
}

TEST_CASE("both shift routes agree and reproduce the shifted values") {
    std::mt19937_64 eng(11);
    std::mt19937_64 pts(12);
    const std::uint32_t p = 101;
    for (int trial = 0; trial < 30; ++trial) {
        const int nvars = 2 + static_cast<int>(eng() % 4);   // 2 .. 5
        const int xi = 1 + static_cast<int>(eng() % 2);
        const int d = xi + 1 + static_cast<int>(eng() % 3);
        std::vector<MultiPoly> graded;
        for (int j = xi; j <= d; ++j)
            graded.push_back(random_homogeneous(nvars, p, j, eng));

        const auto phi = shift_expand(graded, xi);
        const auto phi2 = shift_expand_substitution(graded, xi);
        REQUIRE(phi.size() == phi2.size());
        for (std::size_t e = 0; e < phi.size(); ++e) {
            CHECK(phi[e] == phi2[e]);
            CHECK(phi[e].is_homogeneous());
            CHECK((phi[e].is_zero() || phi[e].degree() == static_cast<int>(e)));
        }

        for (int probe = 0; probe < 100; ++probe) {
            std::vector<std::uint32_t> u(nvars);
            for (auto& v : u) v = static_cast<std::uint32_t>(pts() % p);
            std::vector<std::uint32_t> z = u;
            z[0] = (u[0] + 1) % p;   // z1 = 1 + u1
            std::uint64_t lhs = 0, rhs = 0;
            for (const auto& q : graded) lhs = (lhs + q.evaluate(z)) % p;
            for (const auto& g : phi) rhs = (rhs + g.evaluate(u)) % p;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("shift rejects ungraded input") {
    MultiPoly bad(2, 5);
    bad.add_term({1, 0}, 1);
    bad.add_term({0, 2}, 1);
    CHECK_THROWS_AS(shift_expand({bad}, 2), GradingError);

    const auto wrong_degree = monomial(2, 5, {1, 0});   // degree 1, declared 2
    CHECK_THROWS_AS(shift_expand({wrong_degree}, 2), GradingError);
    CHECK_THROWS_AS(shift_expand({}, 1), ShapeError);
}

TEST_CASE("affine zero counts of textbook systems") {
    const std::uint32_t p = 5;
    MultiPoly lin(3, p);
    lin.add_term({1, 0, 0}, 1);
    lin.add_term({0, 1, 0}, 2);
    lin.add_term({0, 0, 1}, 3);
    CHECK(count_affine_zeros({lin}, p, 3) == 25);
    CHECK(count_affine_zeros({}, p, 3) == 125);
    CHECK(count_affine_zeros({monomial(3, p, {1, 0, 0}),
                              monomial(3, p, {0, 1, 0})},
                             p, 3) == 5);
    // three independent linear forms cut the space to the origin
    CHECK(count_affine_zeros({lin, monomial(3, p, {0, 1, 0}),
                              monomial(3, p, {0, 0, 1})},
                             p, 3) == 1);

    FfOptions tiny;
    tiny.point_cap = 100;
    CHECK_THROWS_AS(count_affine_zeros({lin}, p, 3, tiny), BudgetError);
}

TEST_CASE("transverse coordinate forms decay exactly") {
    // q_i = z_i; hand-built sample, counts must be p^(N - s') on the nose
    TupleSample sample;
    sample.params = derive_params(1, 3, DegreeVector{{3}},
                                  MultiplicityVector{{1}});
    sample.prime = 5;
    sample.seed = 0;
    sample.polys.push_back({monomial(4, 5, {1, 0, 0, 0}),
                            monomial(4, 5, {0, 1, 0, 0}),
                            monomial(4, 5, {0, 0, 1, 0})});
    const auto v = check_R02(sample);
    CHECK(v.pass);
    REQUIRE(v.prefix_counts.size() == 3);
    CHECK(v.prefix_counts[0] == 125);
    CHECK(v.prefix_counts[1] == 25);
    CHECK(v.prefix_counts[2] == 5);
    CHECK(v.thresholds[0] == 500);
    CHECK(v.prefix_ok == std::vector<bool>{true, true, true});
}

TEST_CASE("regular-sequence oracle on the double-quartic witness") {
    const auto p = vp(2, 6, {4, 4}, {2, 1});
    const auto sample = random_tuple(p, 5, 0);
    const auto v = check_R02(sample);
    CHECK(v.pass);
    REQUIRE(v.prefix_counts.size() == 7);
    // frozen run: pins the documented draw order and the sweep end to end
    CHECK(v.prefix_counts == std::vector<unsigned long long>{
                                 78625, 15465, 2941, 561, 97, 37, 5});
    for (std::size_t i = 1; i < v.prefix_counts.size(); ++i)
        CHECK(v.prefix_counts[i] <= v.prefix_counts[i - 1]);

    // worker count must not change a single count
    FfOptions par;
    par.workers = 4;
    const auto vp4 = check_R02(sample, Rat(4), par);
    CHECK(vp4.prefix_counts == v.prefix_counts);
}

TEST_CASE("repeating a form stalls the decay and fails the check") {
    const auto p = vp(2, 6, {4, 4}, {2, 1});
    for (std::uint64_t seed : {0ull, 1ull, 2ull}) {
        auto sample = random_tuple(p, 5, seed);
        // q_{1,3} := z1 * q_{1,2} vanishes wherever q_{1,2} does
        sample.polys[0][1] = sample.polys[0][0].times_var(0);
        const auto v = check_R02(sample);
        CHECK_FALSE(v.pass);
        CHECK(v.prefix_counts[1] == v.prefix_counts[0]);
        CHECK_FALSE(v.prefix_ok[1]);
    }
}

TEST_CASE("a cone over one coordinate never passes") {
    TupleSample sample;
    sample.params = derive_params(2, 3, DegreeVector{{2, 3}},
                                  MultiplicityVector{{1, 1}});
    sample.prime = 5;
    sample.seed = 0;
    sample.polys.push_back({monomial(5, 5, {1, 0, 0, 0, 0}),
                            monomial(5, 5, {2, 0, 0, 0, 0})});
    sample.polys.push_back({monomial(5, 5, {1, 0, 0, 0, 0}, 2),
                            monomial(5, 5, {2, 0, 0, 0, 0}, 3),
                            monomial(5, 5, {3, 0, 0, 0, 0}, 4)});
    const auto v = check_R02(sample);
    CHECK_FALSE(v.pass);
    for (auto c : v.prefix_counts) CHECK(c == 625);   // the z1 = 0 hyperplane
}

TEST_CASE("batch statistics are reproducible") {
    const auto p = vp(2, 6, {4, 4}, {2, 1});
    const std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
    const auto a = check_R02_batch(p, 5, seeds);
    const auto b = check_R02_batch(p, 5, seeds);
    CHECK(a.n_seeds() == 5);
    CHECK(a.n_pass == b.n_pass);
    REQUIRE(a.verdicts.size() == b.verdicts.size());
    for (std::size_t i = 0; i < a.verdicts.size(); ++i)
        CHECK(a.verdicts[i].prefix_counts == b.verdicts[i].prefix_counts);
    CHECK(a.pass_rate() == Rat(Int(a.n_pass), Int(5)));
    CHECK(BatchStats{}.pass_rate() == 0);
}
