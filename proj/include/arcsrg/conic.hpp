#pragma once

// The conic Q(x) = Tr_{q^3/q}(x^2) in PG(2,q), its exponent support W_Q,
// the lift X_Q ⊂ Z_{2(q^2+q+1)}, the even/odd partition E_1/E_2, the
// reductions X_1/X_2 mod 2N, the purity test (two independent routes), and
// the exact Gauss-sum identity sweeps.

#include <algorithm>
#include <optional>
#include <vector>

#include "arcsrg/cyclo.hpp"
#include "arcsrg/errors.hpp"
#include "arcsrg/gf.hpp"
#include "arcsrg/nt.hpp"

namespace arcsrg::conic {

using cyclo::Int;
using nt::u32;
using nt::u64;

/// S = {i : Tr_{q^3/q}(ω^i) = 0} ⊂ Z_{q^2+q+1}, the Singer difference set.
inline std::vector<u64> trace_zero_set(const gf::CubicView& K) {
    std::vector<u64> S;
    for (u64 i = 0; i < K.n1(); ++i)
        if (K.trace_to_q(K.exp(i)) == 0) S.push_back(i);
    return S;
}

/// W_Q = {i : Q(ω^i) = 0} ⊂ Z_{q^2+q+1}; |W_Q| = q+1.
inline std::vector<u64> conic_support(const gf::CubicView& K) {
    std::vector<u64> W;
    for (u64 i = 0; i < K.n1(); ++i)
        if (K.trace_to_q(K.exp(2 * i)) == 0) W.push_back(i);
    if (W.size() != K.q() + 1) throw Error("conic support size is not q+1 (corruption)");
    return W;
}

/// X_Q: base-ω logs mod 2(q^2+q+1) of {ω^{d_i}·Tr(ω^{d_0+d_i}) : i ≠ 0} ∪ {2ω^{d_0}}.
inline std::vector<u64> build_XQ(const gf::CubicView& K, const std::vector<u64>& W, u64 d0) {
    if (std::find(W.begin(), W.end(), d0) == W.end())
        throw BadBasePoint("d0 is not in the conic support");
    const u64 two_n1 = 2 * K.n1();
    std::vector<u64> X;
    for (u64 di : W) {
        if (di == d0) continue;
        u32 t = K.trace_to_q(K.exp(d0 + di));
        if (t == 0) throw Error("vanishing trace between conic points (corruption)");
        X.push_back((di + K.log(t)) % two_n1);
    }
    u32 two = K.scalar(2);
    X.push_back((d0 + K.log(two)) % two_n1);
    std::sort(X.begin(), X.end());
    if (std::adjacent_find(X.begin(), X.end()) != X.end())
        throw Error("X_Q has a repeated exponent (corruption)");
    return X;
}

/// Even/odd split: X_Q = 2E_1 ∪ (2E_2 + (q^2+q+1)) mod 2(q^2+q+1).
struct EvenOddParts {
    std::vector<u64> E1, E2;
};

inline EvenOddParts even_odd_parts(const std::vector<u64>& XQ, u64 n1) {
    EvenOddParts parts;
    for (u64 x : XQ) {
        if (x % 2 == 0)
            parts.E1.push_back(x / 2);
        else
            parts.E2.push_back(((x + 2 * n1 - n1) % (2 * n1)) / 2);
    }
    return parts;
}

/// X_i = [x mod 2N : x ∈ X_Q, x mod N ∈ 2^{-1}I_i]. X_2 is always purely a
/// subset; X_1 is a multiset that may repeat.
struct ReducedPartition {
    std::vector<u64> X1; // sorted multiset over Z_{2N}
    std::vector<u64> X2; // sorted subset of Z_{2N}
};

inline ReducedPartition reduce_partition(const std::vector<u64>& XQ, u64 N,
                                         const cyclo::PeriodSpectrum& S) {
    if (!S.arc_values)
        throw NotThreeValued("reduce_partition requires the three-valued (arc) spectrum");
    const u64 inv2 = nt::inverse_mod(2, N);
    std::vector<char> in_half_I1(N, 0), in_half_I2(N, 0);
    for (u64 i : S.I1) in_half_I1[nt::mulmod(i, inv2, N)] = 1;
    for (u64 i : S.I2) in_half_I2[nt::mulmod(i, inv2, N)] = 1;
    ReducedPartition R;
    for (u64 x : XQ) {
        u64 r = x % N;
        if (in_half_I1[r])
            R.X1.push_back(x % (2 * N));
        else if (in_half_I2[r])
            R.X2.push_back(x % (2 * N));
        else
            throw Error("X_Q residue escapes 2^{-1}(I_1 ∪ I_2) (corruption)");
    }
    std::sort(R.X1.begin(), R.X1.end());
    std::sort(R.X2.begin(), R.X2.end());
    if (std::adjacent_find(R.X2.begin(), R.X2.end()) != R.X2.end())
        throw Error("X_2 is not purely a subset (corruption)");
    return R;
}

/// True iff no element of Z_{2N} occurs twice (input sorted).
inline bool purity_check(const std::vector<u64>& X1) {
    return std::adjacent_find(X1.begin(), X1.end()) == X1.end();
}

/// Character route: X_1 is pure iff η(2) ≠ η(1 + ω^{ℓ(q^3-1)/M}) for all
/// ℓ = 1..M-1. Independent of the X_Q construction.
inline bool purity_via_characters(const gf::CubicView& K, u64 M) {
    if (M == 0 || K.order() % M != 0) throw BadModulus("M must divide q^3-1");
    const int eta2 = K.eta(K.scalar(2));
    const u64 estep = K.order() / M;
    for (u64 l = 1; l < M; ++l) {
        u32 v = K.add(K.one(), K.exp(estep * l));
        if (v == 0) throw Error("1 + ε^l vanished for odd M (corruption)");
        if (K.eta(v) == eta2) return false;
    }
    return true;
}

/// For u ∈ W_Q with u mod N ∈ 2^{-1}I_1: the unique partner exponent ℓ_u with
/// u + ℓ_u·N ∈ W_Q, the value g_M(ω^u) = Tr(ω^{2u+ℓ_u N})·ω^{ℓ_u N}, and the
/// two character identities it satisfies.
struct GMCheck {
    u64 u, ell;
    int eta_g;
    bool lemma_identity;      // η(g) = η(-1)η(1-ω^{ℓ(q+1)(q^3-1)/M})η(1-ω^{2ℓq(q^3-1)/M})
    bool simplified_identity; // η(g) = η(1+ω^{ℓ(q^3-1)/M})
};

inline GMCheck g_M_identity_check(const gf::CubicView& K, const std::vector<u64>& W, u64 N, u64 M,
                                  u64 u) {
    const u64 n1 = K.n1();
    std::vector<char> inW(n1, 0);
    for (u64 w : W) inW[w] = 1;
    std::optional<u64> ell;
    for (u64 l = 1; l < M; ++l) {
        if (inW[(u + l * N) % n1]) {
            if (ell) throw Error("partner exponent not unique (Singer property violated)");
            ell = l;
        }
    }
    if (!ell) throw NoPartner("no partner ℓ_u with u + ℓ_u·N in W_Q");
    GMCheck c;
    c.u = u;
    c.ell = *ell;
    u32 tr = K.trace_to_q(K.exp((2 * u + *ell * N) % K.order()));
    if (tr == 0) throw Error("g_M trace factor vanished (corruption)");
    u32 g = K.mul(tr, K.exp(*ell * N));
    c.eta_g = K.eta(g);
    const u64 estep = K.order() / M;
    const u64 q = K.q();
    u32 t1 = K.sub(K.one(), K.exp(estep * ((*ell * (q + 1)) % M)));
    u32 t2 = K.sub(K.one(), K.exp(estep * ((2 * *ell * q) % M)));
    c.lemma_identity = (c.eta_g == cyclo::eta_minus_one(K) * K.eta(t1) * K.eta(t2));
    u32 s = K.add(K.one(), K.exp(estep * (*ell % M)));
    c.simplified_identity = (c.eta_g == K.eta(s));
    return c;
}

// ---------------------------------------------------------------------------
// The Gauss-sum identity: for X ⊂ Z_{2N} and the membership set Z ⊂ Z_N,
//   L(c) = 2ψ(ω^c ⋃_{ℓ∈X} C_ℓ^(2N)) − ψ(ω^c ⋃_{z∈Z} C_z^(N))
// equals ±G_{q^3}(η) when c mod N ∈ Z and 0 otherwise. ±G is recognized by
// L² = η(−1)·q³, exactly in Z[ζ_p].
// ---------------------------------------------------------------------------

enum class ABClass { Zero, PlusMinusG, Other };

struct ABSweep {
    u64 N = 0;
    std::vector<ABClass> classes;  // per c ∈ Z_{2N}
    std::vector<u64> violations;   // c with classes[c] == Other
    bool membership_matches = true; // ±G exactly on c mod N ∈ Z
};

/// Observational sweep: classifies every c without asserting the theorem.
inline ABSweep sweep_propAB(const gf::CubicView& K, u64 N, const std::vector<u64>& X,
                            const std::vector<u64>& Z) {
    if (K.order() % (2 * N) != 0) throw BadModulus("2N must divide q^3-1");
    auto P2 = cyclo::gauss_periods(K, 2 * N);
    const unsigned p = static_cast<unsigned>(K.p());
    std::vector<cyclo::CycInt> PN;
    PN.reserve(N);
    for (u64 i = 0; i < N; ++i) PN.push_back(P2[i].value + P2[i + N].value);
    std::vector<char> inZ(N, 0);
    for (u64 z : Z) inZ[z % N] = 1;
    const Int gsq = Int(cyclo::eta_minus_one(K)) * Int(K.order() + 1);
    ABSweep sweep;
    sweep.N = N;
    sweep.classes.resize(2 * N);
    for (u64 c = 0; c < 2 * N; ++c) {
        cyclo::CycInt L(p);
        for (u64 l : X) {
            cyclo::CycInt t = P2[(c + l) % (2 * N)].value;
            t.scale(2);
            L += t;
        }
        for (u64 z : Z) L -= PN[(c + z) % N];
        ABClass cls;
        if (L.is_zero())
            cls = ABClass::Zero;
        else {
            cyclo::CycInt sq = L * L;
            cls = (sq.is_rational() && sq.rational_value() == gsq) ? ABClass::PlusMinusG
                                                                   : ABClass::Other;
        }
        sweep.classes[c] = cls;
        if (cls == ABClass::Other) sweep.violations.push_back(c);
        const bool member = inZ[c % N];
        if (member != (cls == ABClass::PlusMinusG)) sweep.membership_matches = false;
    }
    return sweep;
}

/// Asserting form: throws IdentityViolated on any off-classification.
inline ABSweep verify_identity_propAB(const gf::CubicView& K, u64 N, const std::vector<u64>& X,
                                      const std::vector<u64>& Z) {
    ABSweep sweep = sweep_propAB(K, N, X, Z);
    if (!sweep.violations.empty())
        throw IdentityViolated("L(c) is neither 0 nor ±G at c = " +
                               std::to_string(sweep.violations.front()));
    if (!sweep.membership_matches)
        throw IdentityViolated("±G classification does not match the membership set");
    return sweep;
}

/// The assembled conic data for (q, M): support, lift, parts, reductions,
/// purity. d0 is fixed to min W_Q; any other choice shifts X_Q by q^2+q+1.
struct ConicPartition {
    u64 q = 0, M = 0, N = 0, n1 = 0;
    u64 d0 = 0;
    std::vector<u64> W;
    std::vector<u64> XQ;
    std::vector<u64> E1, E2;
    std::vector<u64> X1, X2;
    bool pure = false;
    cyclo::PeriodSpectrum spectrum;
};

inline ConicPartition build_partition(const gf::CubicView& K, u64 M) {
    if (M == 0 || K.n1() % M != 0) throw BadModulus("M must divide q^2+q+1");
    ConicPartition P;
    P.q = K.q();
    P.M = M;
    P.n1 = K.n1();
    P.N = P.n1 / M;
    P.spectrum = cyclo::period_spectrum(K, P.N, M);
    P.W = conic_support(K);
    P.d0 = P.W.front();
    P.XQ = build_XQ(K, P.W, P.d0);
    auto parts = even_odd_parts(P.XQ, P.n1);
    P.E1 = std::move(parts.E1);
    P.E2 = std::move(parts.E2);
    auto red = reduce_partition(P.XQ, P.N, P.spectrum);
    P.X1 = std::move(red.X1);
    P.X2 = std::move(red.X2);
    P.pure = purity_check(P.X1);
    return P;
}

} // namespace arcsrg::conic
