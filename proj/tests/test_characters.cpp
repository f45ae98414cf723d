#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "zerostrip/characters.hpp"
#include "zerostrip/errors.hpp"
#include "zerostrip/primes.hpp"

using namespace zerostrip;

namespace {
const cplx I{0.0, 1.0};

double dist(cplx a, cplx b) { return std::abs(a - b); }
}  // namespace

TEST_CASE("group mod 5: four characters, unique chi with chi(2)=i") {
    auto chars = build_character_group(5);
    REQUIRE(chars.size() == 4);
    int with_i = 0;
    for (const auto& c : chars)
        if (dist(c.value(2), I) < 1e-12) ++with_i;
    CHECK(with_i == 1);

    auto chi1 = find_character(5, {{2, I}});
    CHECK(dist(chi1.value(2), I) < 1e-12);
    CHECK(dist(chi1.value(1), {1.0, 0.0}) < 1e-12);
    CHECK(dist(chi1.value(10), {0.0, 0.0}) == 0.0);
    // 3 = 2^3 mod 5, so chi1(3) = i^3 = -i
    CHECK(dist(chi1.value(3), -I) < 1e-12);
    CHECK(chi1.order() == 4);
    // periodicity
    CHECK(dist(chi1.value(2 + 5 * 7), chi1.value(2)) < 1e-15);
    CHECK(dist(chi1.value(-3), chi1.value(2)) < 1e-15);
}

TEST_CASE("trivial modulus q=1") {
    auto chars = build_character_group(1);
    REQUIRE(chars.size() == 1);
    for (int n = -3; n <= 12; ++n) CHECK(dist(chars[0].value(n), {1.0, 0.0}) < 1e-15);
    CHECK(chars[0].conductor() == 1);
}

TEST_CASE("primitive count matches phi*(q) for squarefree q") {
    // phi*(q) = prod_{p|q} (p-2)
    auto count_primitive = [](uint64_t q) {
        std::size_t c = 0;
        for (const auto& chi : build_character_group(q))
            if (chi.is_primitive()) ++c;
        return c;
    };
    CHECK(count_primitive(35) == 15);  // (5-2)(7-2)
    CHECK(count_primitive(5) == 3);
    CHECK(count_primitive(15) == 3);  // (3-2)(5-2)
    CHECK(count_primitive(7) == 5);
}

TEST_CASE("group law and exact orthogonality") {
    for (uint64_t q : {uint64_t{5}, uint64_t{12}, uint64_t{35}}) {
        auto chars = build_character_group(q);
        CHECK(chars.size() == euler_phi(q));
        for (std::size_t i = 0; i < chars.size(); ++i) {
            for (std::size_t j = 0; j < chars.size(); ++j) {
                auto prod = chars[i].product(chars[j]);
                bool found = false;
                for (const auto& c : chars) found = found || c.same_character(prod);
                CHECK(found);
            }
        }
        for (std::size_t i = 0; i < chars.size(); ++i) {
            for (std::size_t j = 0; j < chars.size(); ++j) {
                uint64_t exact = DirichletCharacter::orthogonality_sum_exact(chars[i], chars[j]);
                cplx numeric{0.0, 0.0};
                for (uint64_t n = 1; n <= q; ++n)
                    numeric += chars[i].value(static_cast<int64_t>(n)) *
                               std::conj(chars[j].value(static_cast<int64_t>(n)));
                CHECK(dist(numeric, {static_cast<double>(exact), 0.0}) < 1e-9);
                CHECK(exact == (i == j ? euler_phi(q) : 0));
            }
        }
    }
}

TEST_CASE("conductor divides q; primitivity is conductor == q") {
    auto chars = build_character_group(12);
    for (const auto& c : chars) {
        CHECK(12 % c.conductor() == 0);
        CHECK(c.is_primitive() == (c.conductor() == 12));
    }
    CHECK(chars[0].is_principal());
    CHECK(chars[0].conductor() == 1);
}

TEST_CASE("gauss sums") {
    // nonprincipal chi mod 4: tau = e^{2 pi i/4} - e^{2 pi i 3/4} = 2i
    auto chi4 = find_character(4, {{3, {-1.0, 0.0}}});
    CHECK(!chi4.is_principal());
    cplx tau = gauss_sum(chi4);
    cplx oracle{0.0, 0.0};
    for (int n = 1; n <= 4; ++n) {
        double ang = 2.0 * std::numbers::pi * n / 4.0;
        oracle += chi4.value(n) * cplx{std::cos(ang), std::sin(ang)};
    }
    CHECK(dist(tau, oracle) < 1e-12);
    CHECK(dist(tau, {0.0, 2.0}) < 1e-12);

    auto chars1 = build_character_group(1);
    CHECK(dist(gauss_sum(chars1[0]), {1.0, 0.0}) < 1e-12);

    auto chi1 = find_character(5, {{2, I}});
    CHECK(std::abs(std::abs(gauss_sum(chi1)) - std::sqrt(5.0)) < 1e-12);
}

TEST_CASE("|tau|^2 = q for all primitive characters mod 35") {
    for (const auto& chi : build_character_group(35)) {
        if (!chi.is_primitive()) continue;
        CHECK(std::abs(std::norm(gauss_sum(chi)) - 35.0) < 1e-9);
    }
}

TEST_CASE("root numbers") {
    auto chi4 = find_character(4, {{3, {-1.0, 0.0}}});
    RootNumber rn = root_number(chi4);
    // omega = 2i / (i * 2) = 1
    CHECK(dist(rn.omega, {1.0, 0.0}) < 1e-12);
    CHECK(rn.a == 1);
    CHECK(std::abs(std::abs(rn.omega) - 1.0) < 1e-12);

    auto chi1 = find_character(5, {{2, I}});
    CHECK(std::abs(std::abs(root_number(chi1).omega) - 1.0) < 1e-12);

    auto chars4 = build_character_group(4);
    CHECK(chars4[0].is_principal());
    CHECK_THROWS_AS(root_number(chars4[0]), NonPrimitiveError);
}

TEST_CASE("same-parity primitive root numbers mod 35 are pairwise distinct") {
    auto w = same_parity_primitive_set(35);
    REQUIRE(w.size() >= 3);
    CHECK(w.size() == 8);  // 15 primitives split 8 even / 7 odd
    std::vector<cplx> omegas;
    for (const auto& chi : w) {
        CHECK(chi.parity() == w[0].parity());
        omegas.push_back(root_number(chi).omega);
    }
    double min_gap = 1e9;
    for (std::size_t i = 0; i < omegas.size(); ++i)
        for (std::size_t j = i + 1; j < omegas.size(); ++j)
            min_gap = std::min(min_gap, dist(omegas[i], omegas[j]));
    // oracle-pinned: the tightest pair differs by ~0.2528
    CHECK(min_gap > 0.25);
}

TEST_CASE("character lookup failure modes") {
    CHECK_THROWS_AS(find_character(5, {{2, {0.5, 0.5}}}), CharacterLookupError);
    CHECK_THROWS_AS(find_character(5, {}), CharacterLookupError);  // 4 matches
    CHECK_NOTHROW(find_character(5, {}, std::size_t{2}));
}
