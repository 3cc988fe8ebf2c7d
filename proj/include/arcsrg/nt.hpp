#pragma once

// Elementary number theory helpers shared by the field towers and the sieve.
// Everything here is exact 64-bit integer arithmetic; field sizes in this
// library stay below 2^31 and sieve moduli below 2^63, so trial division
// and 128-bit mulmod cover all callers.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "arcsrg/errors.hpp"

namespace arcsrg::nt {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i + 1 < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

/// Prime factorization by trial division; (prime, exponent) pairs in
/// ascending order. Adequate for n up to ~10^13 given this library's sizes.
inline std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

inline std::vector<u64> divisors(u64 n) {
    std::vector<u64> out{1};
    for (auto& [p, e] : factorize(n)) {
        const std::size_t sz = out.size();
        u64 pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pe);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline u64 euler_phi(u64 n) {
    u64 r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

/// Multiplicative order of a modulo m (gcd(a, m) = 1 required).
inline u64 mult_order(u64 a, u64 m) {
    if (m == 1) return 1;
    a %= m;
    if (std::gcd(a, m) != 1) throw BadParameters("mult_order: arguments not coprime");
    u64 x = a % m, k = 1;
    while (x != 1) {
        x = mulmod(x, a, m);
        ++k;
    }
    return k;
}

/// Inverse of a modulo m, canonical representative in [0, m).
inline u64 inverse_mod(u64 a, u64 m) {
    i64 t = 0, new_t = 1;
    i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
    while (new_r != 0) {
        i64 q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw BadParameters("inverse_mod: element not invertible");
    return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

/// Sieve of Eratosthenes.
inline std::vector<u32> primes_up_to(u32 n) {
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    std::vector<u32> out;
    for (u32 i = 2; i <= n; ++i) {
        if (!composite[i]) {
            out.push_back(i);
            for (u64 j = static_cast<u64>(i) * i; j <= n; j += i) composite[j] = true;
        }
    }
    return out;
}

/// n = p^f with p prime? Returns (p, f) or (0, 0).
inline std::pair<u64, unsigned> prime_power_split(u64 n) {
    if (n < 2) return {0, 0};
    auto fac = factorize(n);
    if (fac.size() != 1) return {0, 0};
    return {fac[0].first, static_cast<unsigned>(fac[0].second)};
}

inline u64 ipow(u64 b, unsigned e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace arcsrg::nt
