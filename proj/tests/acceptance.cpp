// Acceptance suite: one pass/fail line per criterion, all checks exact
// (integer equality, zero tolerance). Exit status is the failure count.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arcsrg/serialize.hpp"

using namespace arcsrg;
using nt::u32;
using nt::u64;

namespace {

int g_failures = 0;
std::ostringstream g_detail;

#define EXPECT(cond, msg)                                   \
    do {                                                    \
        if (!(cond)) {                                      \
            ok = false;                                     \
            g_detail << "      " << msg << "\n";            \
        }                                                   \
    } while (0)

void criterion(int num, const std::string& what, const std::function<bool()>& fn) {
    g_detail.str("");
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = fn();
    } catch (const std::exception& e) {
        error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", num, what.c_str(), secs);
    if (!ok) {
        ++g_failures;
        if (!error.empty()) std::printf("      exception: %s\n", error.c_str());
        std::fputs(g_detail.str().c_str(), stdout);
    }
}

using SpectrumList = std::vector<std::pair<long long, u64>>;

bool certified_construction(u64 q, u64 M, const SpectrumList& expect_spec, u64 v, u64 k,
                            long long lambda, long long mu, bool exhaustive_adjacency) {
    bool ok = true;
    gf::FieldTower T(q, 1);
    auto cert = srg::verify_srg(T, M);
    EXPECT(cert.verdict, "verdict false, stage " << cert.failure_stage);
    EXPECT(cert.params.v == v && cert.params.k == k && cert.params.lambda == lambda &&
               cert.params.mu == mu,
           "parameter tuple mismatch");
    EXPECT(cert.spectrum == expect_spec, "spectrum mismatch");
    if (exhaustive_adjacency) {
        auto P = conic::build_partition(T.cubic(), M);
        auto spec = srg::build_YX(q, M, P.N, P.X2, P.spectrum.I1);
        auto obs = srg::direct_adjacency_oracle(T, spec.YX, P.N, 1);
        EXPECT(obs.ran && obs.exhaustive, "direct adjacency did not run exhaustively");
        EXPECT(obs.inverse_closed, "connection set not inverse-closed");
        EXPECT(obs.lambda_constant && obs.lambda_obs == lambda,
               "lambda inconstant or wrong: " << obs.lambda_obs);
        EXPECT(obs.mu_constant && obs.mu_obs == mu, "mu inconstant or wrong: " << obs.mu_obs);
        EXPECT(obs.pairs_checked == v * (v - 1) / 2, "not all vertex pairs were counted");
    }
    return ok;
}

std::vector<std::pair<u64, unsigned>> criterion5_range() {
    // all prime powers q ≤ 31 with q ≡ 3 (mod 4)
    return {{3, 1}, {7, 1}, {11, 1}, {19, 1}, {23, 1}, {3, 3}, {31, 1}};
}

bool spectrum_matches(const cyclo::PeriodSpectrum& S, std::map<long long, u64> expect) {
    std::map<long long, u64> got;
    for (auto& [v, idx] : S.groups) got[v] = idx.size();
    return got == expect;
}

} // namespace

int main() {
    criterion(1, "srg(729,112,1,20) by characters and exhaustive adjacency", [] {
        return certified_construction(
            3, 1, SpectrumList{{112, 1}, {4, 616}, {-23, 112}}, 729, 112, 1, 20, true);
    });

    criterion(2, "srg(117649,24768,5057,5256) spectrum {24768,72,-271}", [] {
        return certified_construction(
            7, 3, SpectrumList{{24768, 1}, {72, 92880}, {-271, 24768}}, 117649, 24768, 5057,
            5256, false);
    });

    criterion(3, "srg(1771561,559440,176329,176820) spectrum {559440,420,-911}", [] {
        return certified_construction(
            11, 7, SpectrumList{{559440, 1}, {420, 1212120}, {-911, 559440}}, 1771561, 559440,
            176329, 176820, false);
    });

    criterion(4, "three-valued period spectra at (7,19,3) and (11,19,7)", [] {
        bool ok = true;
        gf::CubicTower C7(7, 1);
        auto S7 = cyclo::period_spectrum(C7.view(), 19, 3);
        EXPECT(S7.three_valued, "(7,19,3) not three-valued");
        EXPECT(spectrum_matches(S7, {{11, 1}, {4, 6}, {-3, 12}}), "(7,19,3) value multiset");
        EXPECT(S7.I1.size() == 1 && S7.I2.size() == 6 && S7.I3.size() == 12,
               "(7,19,3) index-set sizes");
        gf::CubicTower C11(11, 1);
        auto S11 = cyclo::period_spectrum(C11.view(), 19, 7);
        EXPECT(S11.three_valued, "(11,19,7) not three-valued");
        EXPECT(spectrum_matches(S11, {{15, 3}, {4, 6}, {-7, 10}}), "(11,19,7) value multiset");
        EXPECT(S11.I1.size() == 3 && S11.I2.size() == 6 && S11.I3.size() == 10,
               "(11,19,7) index-set sizes");
        for (auto* S : {&S7, &S11}) {
            long long sum = 0;
            for (auto v : S->values) sum += v;
            EXPECT(sum == -1, "period sum is not -1");
        }
        return ok;
    });

    criterion(5, "arc-criterion equivalence over all (q,M), q <= 31, q = 3 mod 4", [] {
        bool ok = true;
        for (auto [p, f] : criterion5_range()) {
            gf::CubicTower C(p, f);
            auto K = C.view();
            for (u64 M : nt::divisors(K.n1())) {
                auto rep = arcs::arc_report(K, M);
                EXPECT(rep.criteria_agree, "criteria disagree at q=" << K.q() << " M=" << M);
            }
        }
        return ok;
    });

    criterion(6, "Gauss-sum identity classification at (3,1), (7,3), (11,7)", [] {
        bool ok = true;
        for (auto [q, M] : std::vector<std::pair<u64, u64>>{{3, 1}, {7, 3}, {11, 7}}) {
            gf::CubicTower C(q, 1);
            auto K = C.view();
            auto P = conic::build_partition(K, M);
            const u64 inv2 = nt::inverse_mod(2, P.N);
            std::vector<u64> Z;
            for (u64 i : P.spectrum.I2) Z.push_back(nt::mulmod(i, inv2, P.N));
            std::sort(Z.begin(), Z.end());
            auto sweep = conic::sweep_propAB(K, P.N, P.X2, Z);
            EXPECT(sweep.violations.empty(),
                   "L(c) escaped {0, ±G} at q=" << q << " c=" << sweep.violations.front());
            EXPECT(sweep.membership_matches, "±G does not match 2^-1 I_2 at q=" << q);
        }
        return ok;
    });

    criterion(7, "purity_check == purity_via_characters on the criterion-5 range", [] {
        bool ok = true;
        bool saw_negative = false;
        for (auto [p, f] : criterion5_range()) {
            gf::CubicTower C(p, f);
            auto K = C.view();
            for (u64 M : nt::divisors(K.n1())) {
                auto spec = cyclo::period_spectrum(K, K.n1() / M, M);
                if (!spec.arc_values) continue;
                auto P = conic::build_partition(K, M);
                bool via = conic::purity_via_characters(K, M);
                EXPECT(P.pure == via, "purity routes disagree at q=" << K.q() << " M=" << M);
                if (!P.pure) saw_negative = true;
            }
        }
        EXPECT(saw_negative, "range contained no impure instance (expected (19,3))");
        return ok;
    });

    criterion(8, "congruence characterizations for M = 3, 7, 21 to 2000", [] {
        bool ok = true;
        auto r3 = sieve::congruence_characterization(3, 2000);
        EXPECT(r3.established.all_agree, "M=3 classes {7,13} mod 24 disagree");
        auto r21 = sieve::congruence_characterization(21, 2000);
        EXPECT(r21.established.all_agree, "M=21 classes {37,109} mod 168 disagree");
        auto r7 = sieve::congruence_characterization(7, 2000);
        EXPECT(r7.established.all_agree, "M=7 classes {11,37,51,53} mod 56 disagree");
        EXPECT(r7.rejected && !r7.rejected->all_agree && !r7.rejected->counterexamples.empty(),
               "the mod-54 variant was not refuted");
        return ok;
    });

    criterion(9, "predicted-empty psi cells contain no prime <= 10^4 (M in {5,7,9,17})", [] {
        bool ok = true;
        for (u64 M : {5ull, 7ull, 9ull, 17ull}) {
            auto rep = sieve::emptiness_check(M, 10000);
            EXPECT(rep.confirmed, "violation at M=" << M << ": p=" << rep.violations.front());
            EXPECT(!rep.predicted_empty.empty(), "no predictions at M=" << M);
        }
        return ok;
    });

    criterion(10, "psi cells nonempty below 10^5 for M in {7,31,49}; found primes construct", [] {
        bool ok = true;
        auto primes = nt::primes_up_to(100000);
        std::vector<u64> found;
        for (u64 M : {7ull, 31ull, 49ull}) {
            for (u64 h : sieve::solve_h(M)) {
                for (int beta : {-1, +1}) {
                    u64 first = 0;
                    for (u32 p : primes) {
                        if (p % M != h || p == 2) continue;
                        auto r = sieve::psi_classify(p, M);
                        if (r.member && r.alpha == 1 && r.beta == beta) {
                            first = p;
                            break;
                        }
                    }
                    if (first == 0) {
                        // report the true first member so the failure is a fact,
                        // not a shrug
                        u64 actual = 0;
                        for (u32 p : nt::primes_up_to(250000)) {
                            if (p % M != h || p == 2) continue;
                            auto r = sieve::psi_classify(p, M);
                            if (r.member && r.alpha == 1 && r.beta == beta) {
                                actual = p;
                                break;
                            }
                        }
                        EXPECT(false, "cell (M=" << M << ", h=" << h << ", alpha=1, beta=" << beta
                                                 << ") empty below 1e5; first member is "
                                                 << actual);
                    } else {
                        found.push_back(first);
                    }
                }
            }
        }
        for (u64 p : found) {
            if (p > 35) continue; // p^6 beyond any table
            const u64 p3 = p * p * p;
            if (p3 * p3 > 2000000) continue;
            gf::FieldTower T(p, 1);
            u64 n1 = p * p + p + 1;
            for (u64 M : {7ull, 31ull, 49ull}) {
                if (n1 % M != 0) continue;
                auto cert = srg::verify_srg(T, M);
                EXPECT(cert.verdict, "construct failed for found prime p=" << p << " M=" << M);
            }
        }
        return ok;
    });

    criterion(11, "relation suite: 50 randomized instances per relation", [] {
        bool ok = true;
        const std::vector<u64> Ms{3, 5, 7, 9, 13, 21, 31};
        std::vector<std::pair<u64, u64>> pool; // (M, p)
        for (u64 M : Ms)
            for (u32 p : nt::primes_up_to(2500)) {
                if (p == 2 || M % p == 0) continue;
                u64 p3 = static_cast<u64>(p) * p * p;
                if ((p3 - 1) % M == 0) pool.emplace_back(M, p);
            }
        std::mt19937 rng(2024);
        std::shuffle(pool.begin(), pool.end(), rng);
        std::map<std::string, u64> instances;
        for (auto [M, p] : pool) {
            bool need = instances["conjugate"] < 50 || instances["norm_product"] < 50 ||
                        instances["orbit_product"] < 50 || instances["half_orbit"] < 50 ||
                        instances["quarter_coset"] < 50;
            if (!need) break;
            auto rep = sieve::relations_check(p, M);
            auto absorb = [&](const char* name, const sieve::RelationOutcome& o) {
                if (!o.applicable) return;
                EXPECT(o.holds, name << " failed at p=" << p << " M=" << M);
                instances[name] += o.instances;
            };
            absorb("conjugate", rep.conjugate);
            absorb("norm_product", rep.norm_product);
            absorb("orbit_product", rep.orbit_product);
            absorb("half_orbit", rep.half_orbit);
            absorb("quarter_coset", rep.quarter_coset);
        }
        for (const char* name :
             {"conjugate", "norm_product", "orbit_product", "half_orbit", "quarter_coset"})
            EXPECT(instances[name] >= 50,
                   name << " reached only " << instances[name] << " instances");
        return ok;
    });

    std::printf("%d of 11 criteria passed\n", 11 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
