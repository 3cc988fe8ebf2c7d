#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "arcsrg/sieve.hpp"

using namespace arcsrg;
using sieve::CubicField;
using nt::u64;

TEST_CASE("table-free cubic field arithmetic") {
    for (u64 p : {5ull, 7ull, 101ull, 10007ull}) {
        CubicField F(p);
        // the modulus really is irreducible: no roots in F_p (scan small p)
        if (p < 200) {
            auto m = F.modulus_coeffs();
            for (u64 t = 0; t < p; ++t) {
                u64 v = ((t * t % p) * t + m[2] * t % p * t + m[1] * t + m[0]) % p;
                CHECK(v != 0);
            }
        }
        std::mt19937 rng(static_cast<unsigned>(p));
        std::uniform_int_distribution<u64> pick(0, p - 1);
        auto rand_el = [&] { return CubicField::El{pick(rng), pick(rng), pick(rng)}; };
        for (int round = 0; round < 40; ++round) {
            auto a = rand_el(), b = rand_el(), c = rand_el();
            CHECK(F.mul(a, b) == F.mul(b, a));
            CHECK(F.mul(F.add(a, b), c) == F.add(F.mul(a, c), F.mul(b, c)));
        }
        // Fermat: x^(p^3) = x
        for (int round = 0; round < 10; ++round) {
            auto a = rand_el();
            CHECK(F.mul(F.pow(a, F.order()), a) == a);
        }
    }
}

TEST_CASE("eta is the quadratic character") {
    CubicField F(7);
    std::mt19937 rng(31);
    std::uniform_int_distribution<u64> pick(0, 6);
    auto rand_nonzero = [&] {
        while (true) {
            CubicField::El x{pick(rng), pick(rng), pick(rng)};
            if (!F.is_zero(x)) return x;
        }
    };
    for (int round = 0; round < 60; ++round) {
        auto a = rand_nonzero(), b = rand_nonzero();
        CHECK(F.eta(F.mul(a, b)) == F.eta(a) * F.eta(b));
        CHECK(F.eta(F.mul(a, a)) == 1);
    }
    // η(-1) = -1 iff p ≡ 3 (mod 4), since p^3 ≡ p (mod 4)
    CHECK(CubicField(7).eta(CubicField(7).minus_one()) == -1);
    CHECK(CubicField(13).eta(CubicField(13).minus_one()) == 1);
}

TEST_CASE("order-M elements") {
    CubicField F(11);
    auto e7 = sieve::find_element_of_order(F, 7);
    CHECK(F.pow(e7, 7) == F.one());
    for (u64 d : {1ull, 2ull, 3ull, 4ull, 5ull, 6ull}) CHECK_FALSE(F.pow(e7, d) == F.one());
    CHECK_THROWS_AS(sieve::find_element_of_order(CubicField(7), 5), NoOrderMElement);
}

TEST_CASE("solve_h tables") {
    CHECK(sieve::solve_h(3) == std::vector<u64>{1});
    CHECK(sieve::solve_h(7) == std::vector<u64>{2, 4});
    CHECK(sieve::solve_h(13) == std::vector<u64>{3, 9});
    CHECK(sieve::solve_h(21) == std::vector<u64>{4, 16});
    CHECK(sieve::solve_h(31) == std::vector<u64>{5, 25});
    CHECK(sieve::solve_h(49) == std::vector<u64>{18, 30});
    CHECK(sieve::solve_h(5).empty());
    CHECK(sieve::solve_h(9).empty());
    CHECK(sieve::solve_h(17).empty());
}

TEST_CASE("order of two") {
    auto t7 = sieve::order_of_two(7);
    CHECK(t7.d == 3);
    CHECK(t7.odd);
    CHECK_FALSE(t7.minus_one_in_two);

    auto t5 = sieve::order_of_two(5);
    CHECK(t5.d == 4);
    CHECK_FALSE(t5.odd);
    CHECK(t5.minus_one_in_two);

    // every M < 200 with odd ord_M(2) and a valid h
    std::vector<u64> odd_list;
    for (u64 M = 3; M < 200; M += 2)
        if (sieve::order_of_two(M).odd && !sieve::solve_h(M).empty()) odd_list.push_back(M);
    CHECK(odd_list == std::vector<u64>{7, 31, 49, 73, 79, 103, 127, 151, 199});
}

TEST_CASE("psi classification of reference primes") {
    SECTION("p=7, M=3") {
        auto r = sieve::psi_classify(7, 3);
        CHECK(r.h == 1);
        // 1 + ε_3 = -ε_3², so η(1+ε_3) = η(-1) = -1
        CHECK(r.eta_values == std::vector<int>{-1, -1});
        CHECK(r.eta2 == 1);
        CHECK(r.eta_minus1 == -1);
        CHECK(r.member);
        CHECK(r.alpha == -1);
        CHECK(r.beta == -1);
    }
    SECTION("p=11, M=7") {
        auto r = sieve::psi_classify(11, 7);
        CHECK(r.h == 4);
        CHECK(r.eta_values == std::vector<int>(6, 1));
        CHECK(r.eta2 == -1);
        CHECK(r.eta_minus1 == -1);
        CHECK(r.member);
        CHECK(r.alpha == 1);
        CHECK(r.beta == -1);
    }
    SECTION("p=13, M=3: the β = +1 side") {
        auto r = sieve::psi_classify(13, 3);
        CHECK(r.eta_minus1 == 1);
        CHECK(r.member);
        CHECK(r.alpha == 1);
        CHECK(r.beta == 1);
    }
    SECTION("M must divide p^3 - 1") {
        CHECK_THROWS_AS(sieve::psi_classify(7, 5), NoOrderMElement);
    }
    SECTION("η(-1) tracks p mod 4 (p^3 ≡ p mod 4)") {
        for (u64 p : {7ull, 13ull, 19ull, 31ull, 37ull, 43ull, 61ull, 67ull}) {
            auto r = sieve::psi_classify(p, 3);
            CHECK(r.eta_minus1 == (p % 4 == 3 ? -1 : 1));
        }
    }
}

TEST_CASE("the verdict does not depend on the order-M element chosen") {
    for (auto [p, M] : std::vector<std::pair<u64, u64>>{{7, 3}, {11, 7}, {29, 7}, {37, 21}}) {
        CubicField F(p);
        std::set<std::multiset<int>> patterns;
        for (unsigned skip = 0; skip < 3; ++skip) {
            auto eps = sieve::find_element_of_order(F, M, skip);
            std::multiset<int> pat;
            auto power = F.one();
            for (u64 i = 1; i < M; ++i) {
                power = F.mul(power, eps);
                pat.insert(F.eta(F.add(F.one(), power)));
            }
            patterns.insert(pat);
        }
        INFO("p=" << p << " M=" << M);
        CHECK(patterns.size() == 1);
    }
}

TEST_CASE("sieve ranges reproduce the reference prime lists") {
    SECTION("Ψ_{3,1,-1,-1} below 100") {
        auto res = sieve::sieve_range(3, 1, -1, -1, 100);
        CHECK(res.members == std::vector<u64>{7, 31, 79});
        for (u64 p : res.members) CHECK(p % 24 == 7);
    }
    SECTION("Ψ_{7,4,1,-1} below 200") {
        auto res = sieve::sieve_range(7, 4, 1, -1, 200);
        CHECK(res.members == std::vector<u64>{11, 67, 179});
        for (u64 p : res.members) CHECK(p % 56 == 11);
    }
    SECTION("invalid h is rejected") {
        CHECK_THROWS_AS(sieve::sieve_range(7, 3, 1, -1, 100), BadParameters);
        CHECK_THROWS_AS(sieve::sieve_range(5, 1, 1, -1, 100), BadParameters);
    }
}

TEST_CASE("relation suite on reference instances") {
    SECTION("p=7, M=3") {
        auto rep = sieve::relations_check(7, 3);
        CHECK(rep.conjugate.applicable);
        CHECK(rep.orbit_product.applicable);
        CHECK(rep.half_orbit.applicable); // 2 ≡ -1 (mod 3)
        CHECK(rep.all_hold);
    }
    SECTION("p=11, M=7: Π η(1+ε^{2^i}) over the orbit is 1") {
        auto rep = sieve::relations_check(11, 7);
        CHECK(rep.orbit_product.applicable);
        CHECK(rep.orbit_product.holds);
        CHECK_FALSE(rep.half_orbit.applicable); // -1 ∉ ⟨2⟩ (mod 7)
        CHECK(rep.all_hold);
        // direct form of the instance
        CubicField F(11);
        auto eps = sieve::find_element_of_order(F, 7);
        int prod = 1;
        for (u64 e : {1ull, 2ull, 4ull}) prod *= F.eta(F.add(F.one(), F.pow(eps, e)));
        CHECK(prod == 1);
    }
    SECTION("M=21: the quarter-coset identity with X = {1,4,16}") {
        // canonical greedy set is exactly {1,4,16}; Π_{x∈X} η(1+ε^{2x}) = η(-1)
        for (u64 p : {37ull, 109ull, 13ull}) {
            if ((p * p * p - 1) % 21 != 0) continue;
            auto rep = sieve::relations_check(p, 21);
            INFO("p=" << p);
            CHECK(rep.quarter_coset.applicable);
            CHECK(rep.quarter_coset.holds);
            CHECK(rep.norm_product.applicable);
            CHECK(rep.norm_product.holds);
            CHECK(rep.all_hold);
            CubicField F(p);
            auto eps = sieve::find_element_of_order(F, 21);
            int prod = 1;
            for (u64 x : {1ull, 4ull, 16ull}) prod *= F.eta(F.add(F.one(), F.pow(eps, 2 * x % 21)));
            CHECK(prod == F.eta(F.minus_one()));
        }
    }
    SECTION("M=9 prime power: norm product relates ε_3 and ε_9") {
        auto rep = sieve::relations_check(19, 9); // 19 ≡ 1 (mod 9)
        CHECK(rep.norm_product.applicable);
        CHECK(rep.norm_product.holds);
        CHECK(rep.all_hold);
    }
}

TEST_CASE("congruence characterizations") {
    SECTION("M=3 agrees with {7,13} mod 24 up to 500") {
        auto rep = sieve::congruence_characterization(3, 500);
        CHECK(rep.established.all_agree);
        CHECK(rep.primes_checked > 20);
        CHECK_FALSE(rep.rejected.has_value());
    }
    SECTION("M=7: mod 56 agrees, the mod-54 variant is refuted") {
        auto rep = sieve::congruence_characterization(7, 500);
        CHECK(rep.established.all_agree);
        REQUIRE(rep.rejected.has_value());
        CHECK_FALSE(rep.rejected->all_agree);
        REQUIRE_FALSE(rep.rejected->counterexamples.empty());
        CHECK(rep.rejected->counterexamples.front() == 67);
    }
    SECTION("unsupported M") {
        CHECK_THROWS_AS(sieve::congruence_characterization(11, 100), BadParameters);
    }
}

TEST_CASE("emptiness predictions") {
    SECTION("M=5: cells (1,-1) and (-1,-1), vacuously confirmed") {
        auto rep = sieve::emptiness_check(5, 10000);
        CHECK(rep.predicted_empty ==
              std::vector<std::pair<int, int>>{{-1, -1}, {1, -1}});
        CHECK(rep.candidates_scanned == 0);
        CHECK(rep.confirmed);
    }
    SECTION("M=7: odd order kills α = -1 entirely") {
        auto rep = sieve::emptiness_check(7, 2000);
        CHECK(rep.predicted_empty ==
              std::vector<std::pair<int, int>>{{-1, -1}, {-1, 1}});
        CHECK(rep.candidates_scanned > 0);
        CHECK(rep.confirmed);
    }
    SECTION("M=9: cells (1,-1) and (-1,1)") {
        auto rep = sieve::emptiness_check(9, 10000);
        CHECK(rep.predicted_empty ==
              std::vector<std::pair<int, int>>{{-1, 1}, {1, -1}});
        CHECK(rep.confirmed);
    }
    SECTION("M=17: cells (1,-1) and (-1,-1)") {
        auto rep = sieve::emptiness_check(17, 10000);
        CHECK(rep.predicted_empty ==
              std::vector<std::pair<int, int>>{{-1, -1}, {1, -1}});
        CHECK(rep.confirmed);
    }
}
