#pragma once

// Exact cyclotomic-integer arithmetic and character sums over F_{q^3}:
// cyclotomic classes, Gauss periods, period spectra, cyclotomic numbers
// and the quadratic Gauss sum. Everything is integer-exact; there is no
// floating point anywhere in this layer.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <mutex>
#include <vector>

#include "arcsrg/errors.hpp"
#include "arcsrg/gf.hpp"
#include "arcsrg/nt.hpp"

namespace arcsrg::cyclo {

using nt::u32;
using nt::u64;
using Int = boost::multiprecision::cpp_int;

namespace detail {

/// Exact division of a by the monic divisor b; throws if not exact.
inline std::vector<Int> exact_div(std::vector<Int> a, const std::vector<Int>& b) {
    std::vector<Int> quo(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Int(0));
    for (std::size_t d = a.size(); d-- > 0 && d + 1 >= b.size();) {
        Int c = a[d];
        if (c == 0) continue;
        std::size_t shift = d + 1 - b.size();
        quo[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    }
    for (const Int& r : a)
        if (r != 0) throw Error("exact_div: division not exact");
    return quo;
}

} // namespace detail

/// Coefficients of the m-th cyclotomic polynomial, low-to-high (monic).
/// Computed by exact division of x^m - 1 by the lower-order factors; cached.
inline const std::vector<Int>& cyclotomic_poly(unsigned m) {
    static std::map<unsigned, std::vector<Int>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // compute dependencies first without recursing under the lock
    std::vector<unsigned> stack{m};
    while (!stack.empty()) {
        unsigned n = stack.back();
        if (cache.count(n)) {
            stack.pop_back();
            continue;
        }
        bool ready = true;
        for (u64 d : nt::divisors(n))
            if (d < n && !cache.count(static_cast<unsigned>(d))) {
                stack.push_back(static_cast<unsigned>(d));
                ready = false;
            }
        if (!ready) continue;
        std::vector<Int> num(n + 1, Int(0));
        num[0] = -1;
        num[n] = 1;
        for (u64 d : nt::divisors(n))
            if (d < n) num = detail::exact_div(std::move(num), cache[static_cast<unsigned>(d)]);
        cache.emplace(n, std::move(num));
        stack.pop_back();
    }
    return cache[m];
}

/// Element of Z[ζ_m] in canonical reduced form: coefficients on the power
/// basis 1, ζ, ..., ζ^(deg Φ_m - 1) after reduction modulo Φ_m. Equality is
/// coefficient equality.
class CycInt {
public:
    explicit CycInt(unsigned m) : m_(m), c_(degree(m), Int(0)) {}

    static std::size_t degree(unsigned m) { return cyclotomic_poly(m).size() - 1; }

    /// Σ poly[i]·ζ^i for an arbitrary-degree integer polynomial.
    static CycInt from_poly(unsigned m, std::vector<Int> poly) {
        const auto& phi = cyclotomic_poly(m);
        const std::size_t deg = phi.size() - 1;
        for (std::size_t d = poly.size(); d-- > deg;) {
            Int c = poly[d];
            if (c != 0) {
                std::size_t shift = d - deg;
                for (std::size_t i = 0; i < deg; ++i) poly[shift + i] -= c * phi[i];
                poly[d] = 0;
            }
        }
        CycInt out(m);
        for (std::size_t i = 0; i < deg && i < poly.size(); ++i) out.c_[i] = poly[i];
        return out;
    }

    /// Σ freq[t]·ζ^t with exponents taken mod m.
    static CycInt from_zeta_powers(unsigned m, const std::vector<Int>& freq) {
        std::vector<Int> poly(m, Int(0));
        for (std::size_t t = 0; t < freq.size(); ++t) poly[t % m] += freq[t];
        return from_poly(m, std::move(poly));
    }

    static CycInt integer(unsigned m, Int v) {
        CycInt out(m);
        out.c_[0] = std::move(v);
        return out;
    }

    static CycInt zeta_pow(unsigned m, u64 e) {
        std::vector<Int> poly(m, Int(0));
        poly[e % m] = 1;
        return from_poly(m, std::move(poly));
    }

    unsigned root_order() const { return m_; }
    const std::vector<Int>& coeffs() const { return c_; }

    CycInt& operator+=(const CycInt& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    CycInt& operator-=(const CycInt& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    CycInt operator-() const {
        CycInt out(*this);
        for (auto& x : out.c_) x = -x;
        return out;
    }
    CycInt& scale(const Int& k) {
        for (auto& x : c_) x *= k;
        return *this;
    }
    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        a.check_same(b);
        std::vector<Int> prod(2 * a.c_.size(), Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += a.c_[i] * b.c_[j];
        }
        return from_poly(a.m_, std::move(prod));
    }

    bool operator==(const CycInt& o) const { return m_ == o.m_ && c_ == o.c_; }
    bool operator!=(const CycInt& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const Int& x : c_)
            if (x != 0) return false;
        return true;
    }
    /// True iff the element lies in Z (all non-constant coefficients vanish).
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    const Int& rational_value() const {
        if (!is_rational()) throw Error("CycInt is not rational");
        return c_[0];
    }

private:
    void check_same(const CycInt& o) const {
        if (m_ != o.m_) throw BadParameters("CycInt root orders differ");
    }
    unsigned m_;
    std::vector<Int> c_;
};

// ---------------------------------------------------------------------------
// Cyclotomic classes and Gauss periods of F_{q^3}
// ---------------------------------------------------------------------------

/// Index of the N-th cyclotomic class containing x (log mod N).
inline u64 class_index(const gf::CubicView& K, u32 x, u64 N) {
    if (N == 0 || K.order() % N != 0) throw BadModulus("N does not divide q^3 - 1");
    if (x == 0) throw ZeroElement("class_index of zero");
    return K.log(x) % N;
}

/// Frequencies of Tr_{q^3/p} values over each N-th cyclotomic class,
/// gathered in a single pass over F_{q^3}^*.
inline std::vector<std::vector<long long>> trace_counts_by_class(const gf::CubicView& K, u64 N) {
    if (N == 0 || K.order() % N != 0) throw BadModulus("N does not divide q^3 - 1");
    const auto& F = K.field();
    const unsigned p = static_cast<unsigned>(K.p());
    std::vector<std::vector<long long>> cnt(N, std::vector<long long>(p, 0));
    const u64 stride = K.stride(), bigorder = F.order();
    u64 big = 0;
    for (u64 j = 0; j < K.order(); ++j) {
        cnt[j % N][K.trace_to_p(F.exp_table()[big])]++;
        big += stride;
        if (big >= bigorder) big -= bigorder;
    }
    return cnt;
}

struct Period {
    CycInt value;
    bool rational;
    long long int_value; // meaningful iff rational
};

inline Period period_from_counts(const std::vector<long long>& freq, unsigned p) {
    std::vector<Int> f(freq.size());
    for (std::size_t t = 0; t < freq.size(); ++t) f[t] = freq[t];
    CycInt v = CycInt::from_zeta_powers(p, f);
    bool rat = true;
    for (unsigned t = 2; t < p; ++t)
        if (freq[t] != freq[1]) {
            rat = false;
            break;
        }
    long long iv = rat ? freq[0] - freq[1] : 0;
    return Period{std::move(v), rat, iv};
}

/// The i-th N-th Gauss period of F_{q^3}: Σ_{x∈C_i} ζ_p^{Tr(x)}.
inline Period gauss_period(const gf::CubicView& K, u64 i, u64 N) {
    if (N == 0 || K.order() % N != 0) throw BadModulus("N does not divide q^3 - 1");
    const unsigned p = static_cast<unsigned>(K.p());
    std::vector<long long> freq(p, 0);
    for (u64 j = i % N; j < K.order(); j += N) freq[K.trace_to_p(K.exp(j))]++;
    return period_from_counts(freq, p);
}

/// All N periods in one pass.
inline std::vector<Period> gauss_periods(const gf::CubicView& K, u64 N) {
    auto cnt = trace_counts_by_class(K, N);
    const unsigned p = static_cast<unsigned>(K.p());
    std::vector<Period> out;
    out.reserve(N);
    for (u64 i = 0; i < N; ++i) out.push_back(period_from_counts(cnt[i], p));
    return out;
}

/// Values and index sets of the N-th Gauss periods, N·M = q^2+q+1.
///
/// arc_values: all period values lie in {-M+2q, -M+q, -M}; equivalent to
/// C_0/F_q^* being an M-arc. For M >= 3 this forces exactly three distinct
/// values; at M = 1 the top value cannot occur (I_1 is empty) and the
/// spectrum is two-valued.
struct PeriodSpectrum {
    u64 N = 0, M = 0, q = 0;
    std::vector<long long> values;                // per class index
    std::map<long long, std::vector<u64>> groups; // value -> sorted class indices
    bool three_valued = false;
    bool arc_values = false;
    std::vector<u64> I1, I2, I3; // labeled when arc_values holds
};

inline PeriodSpectrum period_spectrum(const gf::CubicView& K, u64 N, u64 M) {
    if (N * M != K.n1()) throw BadParameters("period_spectrum requires N*M = q^2+q+1");
    PeriodSpectrum S;
    S.N = N;
    S.M = M;
    S.q = K.q();
    auto periods = gauss_periods(K, N);
    S.values.reserve(N);
    for (u64 i = 0; i < N; ++i) {
        if (!periods[i].rational)
            throw Error("irrational Gauss period at N | q^2+q+1 (corruption)");
        S.values.push_back(periods[i].int_value);
        S.groups[periods[i].int_value].push_back(i);
    }
    const long long q = static_cast<long long>(K.q()), mm = static_cast<long long>(M);
    const long long top = -mm + 2 * q, mid = -mm + q, low = -mm;
    S.arc_values = true;
    for (auto& [v, idx] : S.groups)
        if (v != top && v != mid && v != low) S.arc_values = false;
    if (S.arc_values) {
        auto grab = [&](long long v) {
            auto it = S.groups.find(v);
            return it == S.groups.end() ? std::vector<u64>{} : it->second;
        };
        S.I1 = grab(top);
        S.I2 = grab(mid);
        S.I3 = grab(low);
        S.three_valued = !S.I1.empty() && !S.I2.empty() && !S.I3.empty();
        // cardinalities are forced once every line meets the arc in <= 2 points
        if (S.I1.size() != (M - 1) / 2 || S.I2.size() != K.q() - M + 2 ||
            S.I3.size() != N - K.q() + (M - 3 + 2 * M) / 2 - M)
            throw Error("period spectrum cardinalities violate the arc counts");
    }
    return S;
}

/// Cyclotomic number (i,j)_N = |(C_i + 1) ∩ C_j| by direct enumeration.
inline u64 cyclotomic_number(const gf::CubicView& K, u64 i, u64 j, u64 N) {
    if (N == 0 || K.order() % N != 0) throw BadModulus("N does not divide q^3 - 1");
    u64 count = 0;
    const u32 one = K.one();
    for (u64 l = i % N; l < K.order(); l += N) {
        u32 y = K.add(K.exp(l), one);
        if (y == 0) continue;
        if (K.log(y) % N == j % N) ++count;
    }
    return count;
}

/// G_{q^3}(η) = Σ_{x≠0} η(x) ζ_p^{Tr(x)} as an exact cyclotomic integer.
inline CycInt gauss_sum_eta(const gf::CubicView& K) {
    const unsigned p = static_cast<unsigned>(K.p());
    std::vector<long long> freq[2] = {std::vector<long long>(p, 0), std::vector<long long>(p, 0)};
    const auto& F = K.field();
    const u64 stride = K.stride(), bigorder = F.order();
    u64 big = 0;
    for (u64 j = 0; j < K.order(); ++j) {
        freq[j & 1][K.trace_to_p(F.exp_table()[big])]++;
        big += stride;
        if (big >= bigorder) big -= bigorder;
    }
    std::vector<Int> f(p);
    for (unsigned t = 0; t < p; ++t) f[t] = freq[0][t] - freq[1][t];
    return CycInt::from_zeta_powers(p, f);
}

/// η(-1) = (-1)^((q^3-1)/2).
inline int eta_minus_one(const gf::CubicView& K) { return (K.order() / 2) % 2 == 0 ? +1 : -1; }

} // namespace arcsrg::cyclo
