#pragma once

// Exact arithmetic in the tower F_p ⊆ F_q ⊆ F_{q^3} ⊆ F_{q^6} with dense
// discrete-log tables.
//
// Elements are packed indices: digit i (base p) of the index is the
// coefficient of x^i in the residue-class representative modulo the
// defining polynomial. The defining polynomial and the generator are both
// chosen deterministically (least in lexicographic coordinate order, the
// constant coefficient compared first), so every table, certificate and
// report is reproducible bit for bit.
//
// Two entry points:
//   FieldTower — the full chain, dense tables of size q^6 (graph building).
//   CubicTower — F_p ⊆ F_q ⊆ F_{q^3} only, tables of size q^3 (arc checks,
//                period spectra, conic partitions at q too large for q^6).
// Both expose a CubicView: a non-owning handle for F_{q^3} arithmetic that
// the cyclo/arcs/conic layers are written against.

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "arcsrg/errors.hpp"
#include "arcsrg/nt.hpp"

namespace arcsrg::gf {

using nt::u32;
using nt::u64;

inline constexpr u64 kDefaultTableLimit = u64(1) << 31;

namespace detail {

// Dense polynomial arithmetic over F_p, coefficients low-to-high. Only used
// while a field is being constructed (irreducibility tests, generator
// search); steady-state arithmetic goes through the tables.
using Poly = std::vector<u32>;

inline void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

/// a*b reduced by the monic modulus; result has mod.size()-1 coefficients.
inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, u64 p) {
    const std::size_t m = mod.size() - 1;
    std::vector<u64> prod(2 * m, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += static_cast<u64>(a[i]) * b[j];
    }
    for (auto& c : prod) c %= p;
    for (std::size_t d = prod.size() - 1; d >= m; --d) {
        u64 c = prod[d];
        if (c != 0) {
            for (std::size_t i = 0; i < m; ++i)
                prod[d - m + i] = (prod[d - m + i] + c * (p - mod[i])) % p;
            prod[d] = 0;
        }
        if (d == m) break;
    }
    Poly out(m, 0);
    for (std::size_t i = 0; i < m; ++i) out[i] = static_cast<u32>(prod[i]);
    return out;
}

inline Poly poly_powmod(Poly base, u64 e, const Poly& mod, u64 p) {
    Poly r(mod.size() - 1, 0);
    r[0] = 1;
    base.resize(mod.size() - 1, 0);
    while (e > 0) {
        if (e & 1) r = poly_mulmod(r, base, mod, p);
        base = poly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

/// a mod b (b nonzero, not necessarily monic).
inline Poly poly_mod(Poly a, const Poly& b, u64 p) {
    poly_trim(a);
    const u64 lead_inv = nt::inverse_mod(b.back(), p);
    while (a.size() >= b.size()) {
        u64 c = nt::mulmod(a.back(), lead_inv, p);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = static_cast<u32>((a[shift + i] + c * (p - b[i])) % p);
        poly_trim(a);
    }
    return a;
}

inline Poly poly_gcd(Poly a, Poly b, u64 p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Rabin irreducibility test for a monic degree-m polynomial over F_p.
inline bool poly_irreducible(const Poly& h, u64 p) {
    const std::size_t m = h.size() - 1;
    if (m == 1) return true;
    Poly x(m, 0);
    x[1] = 1;
    // x^(p^m) == x (mod h)
    Poly t = x;
    for (std::size_t i = 0; i < m; ++i) t = poly_powmod(t, p, h, p);
    Poly lhs = t, rhs = x;
    poly_trim(lhs);
    poly_trim(rhs);
    if (lhs != rhs) return false;
    for (u64 ell : nt::prime_divisors(static_cast<u64>(m))) {
        Poly s = x;
        for (u64 i = 0; i < static_cast<u64>(m) / ell; ++i) s = poly_powmod(s, p, h, p);
        // gcd(x^(p^(m/ell)) - x, h) must be trivial
        Poly diff = s;
        diff[1] = static_cast<u32>((diff[1] + p - 1) % p);
        poly_trim(diff);
        if (diff.empty()) return false;
        Poly g = poly_gcd(h, diff, p);
        if (g.size() > 1) return false;
    }
    return true;
}

} // namespace detail

/// A finite field F_{p^m} with complete exp/log tables, deterministic
/// defining polynomial and deterministic generator.
class DenseField {
public:
    static constexpr u32 kNoLog = 0xFFFFFFFFu;

    DenseField(u64 p, unsigned m, u64 size_limit = kDefaultTableLimit,
               const std::string& cache_dir = {})
        : p_(p), m_(m) {
        if (!nt::is_prime(p)) throw CompositeModulus("p = " + std::to_string(p) + " is not prime");
        if (p == 2) throw OddPrimeRequired("characteristic 2 is out of scope");
        if (m == 0) throw BadParameters("extension degree must be positive");
        size_ = 1;
        for (unsigned i = 0; i < m; ++i) {
            if (size_ > size_limit / p) throw TooLarge("p^m exceeds the table limit");
            size_ *= p;
        }
        order_ = size_ - 1;
        find_defining_poly();
        if (!load_cache(cache_dir)) {
            find_generator();
            build_tables();
            write_cache(cache_dir);
        }
        build_trace_table();
    }

    u64 p() const { return p_; }
    unsigned degree() const { return m_; }
    u64 size() const { return size_; }
    u64 order() const { return order_; }
    u32 generator() const { return exp_[1 % order_]; }
    /// Monic defining polynomial, coefficients a0..am low-to-high (am = 1).
    const std::vector<u32>& defining_poly() const { return poly_; }

    u32 exp(u64 k) const { return exp_[k % order_]; }
    u64 log(u32 x) const {
        if (x == 0) throw ZeroElement("dlog of zero");
        return log_[x];
    }

    u32 add(u32 a, u32 b) const {
        u32 out = 0, pw = 1;
        const u32 p = static_cast<u32>(p_);
        for (unsigned i = 0; i < m_; ++i) {
            u32 s = (a / pw) % p + (b / pw) % p;
            if (s >= p) s -= p;
            out += s * pw;
            pw *= p;
        }
        return out;
    }
    u32 neg(u32 a) const {
        u32 out = 0, pw = 1;
        const u32 p = static_cast<u32>(p_);
        for (unsigned i = 0; i < m_; ++i) {
            u32 da = (a / pw) % p;
            out += (da ? p - da : 0) * pw;
            pw *= p;
        }
        return out;
    }
    u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }
    u32 mul(u32 a, u32 b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(static_cast<u64>(log_[a]) + log_[b]) % order_];
    }
    u32 inv(u32 a) const {
        if (a == 0) throw ZeroElement("inverse of zero");
        return exp_[(order_ - log_[a]) % order_];
    }
    u32 pow(u32 a, u64 e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        return exp_[nt::mulmod(log_[a], e % order_, order_)];
    }
    /// Embedding of an F_p scalar.
    u32 scalar(u64 c) const { return static_cast<u32>(c % p_); }

    /// Absolute trace Tr_{p^m/p}, as an integer in [0, p).
    unsigned trace_to_prime(u32 x) const { return trace_[x]; }

    std::vector<u32> coords(u32 x) const {
        std::vector<u32> c(m_);
        for (unsigned i = 0; i < m_; ++i) {
            c[i] = static_cast<u32>(x % p_);
            x = static_cast<u32>(x / p_);
        }
        return c;
    }

    const std::vector<u32>& exp_table() const { return exp_; }
    const std::vector<std::uint8_t>& trace_table() const { return trace_; }

private:
    u64 p_;
    unsigned m_;
    u64 size_ = 0, order_ = 0;
    std::vector<u32> poly_; // a0..am
    std::vector<u32> exp_;
    std::vector<u32> log_;
    std::vector<std::uint8_t> trace_;
    u32 generator_packed_ = 0;

    // lexicographic key -> packed element; coordinate c0 is compared first,
    // so c0 is the slowest-varying digit of the key
    u32 lex_to_packed(u64 key) const {
        u32 out = 0, pw = 1;
        u64 div = 1;
        for (unsigned i = 1; i < m_; ++i) div *= p_;
        for (unsigned i = 0; i < m_; ++i) {
            out += static_cast<u32>((key / div) % p_) * pw;
            pw *= static_cast<u32>(p_);
            div = div ? div / p_ : 0;
        }
        return out;
    }

    detail::Poly packed_to_poly(u32 x) const {
        detail::Poly c(m_, 0);
        for (unsigned i = 0; i < m_; ++i) {
            c[i] = static_cast<u32>(x % p_);
            x = static_cast<u32>(x / p_);
        }
        return c;
    }
    u32 poly_to_packed(const detail::Poly& c) const {
        u32 out = 0, pw = 1;
        for (unsigned i = 0; i < m_; ++i) {
            out += (i < c.size() ? c[i] : 0) * pw;
            pw *= static_cast<u32>(p_);
        }
        return out;
    }

    void find_defining_poly() {
        for (u64 key = 0; key < size_; ++key) {
            u32 packed = lex_to_packed(key);
            detail::Poly h = packed_to_poly(packed);
            h.push_back(1); // monic
            if (h[0] == 0) continue;
            if (detail::poly_irreducible(h, p_)) {
                poly_ = std::move(h);
                return;
            }
        }
        throw Error("no irreducible polynomial found (unreachable)");
    }

    void find_generator() {
        auto primes = nt::prime_divisors(order_);
        for (u64 key = 1; key < size_; ++key) {
            u32 cand = lex_to_packed(key);
            if (cand == 0 || cand == 1) continue;
            detail::Poly c = packed_to_poly(cand);
            bool primitive = true;
            for (u64 ell : primes) {
                detail::Poly e = detail::poly_powmod(c, order_ / ell, poly_, p_);
                detail::poly_trim(e);
                if (e.size() == 1 && e[0] == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                generator_packed_ = cand;
                return;
            }
        }
        throw Error("no primitive element found (unreachable)");
    }

    void build_tables() {
        exp_.assign(order_, 0);
        log_.assign(size_, kNoLog);
        // multiplication by the generator as a linear map on the monomial basis
        std::vector<detail::Poly> gmap(m_);
        detail::Poly g = packed_to_poly(generator_packed_);
        for (unsigned i = 0; i < m_; ++i) {
            detail::Poly xi(m_, 0);
            xi[i] = 1;
            gmap[i] = detail::poly_mulmod(xi, g, poly_, p_);
        }
        std::vector<u64> cur(m_, 0), next(m_, 0);
        cur[0] = 1;
        for (u64 k = 0; k < order_; ++k) {
            u32 packed = 0, pw = 1;
            for (unsigned i = 0; i < m_; ++i) {
                packed += static_cast<u32>(cur[i]) * pw;
                pw *= static_cast<u32>(p_);
            }
            exp_[k] = packed;
            log_[packed] = static_cast<u32>(k);
            std::fill(next.begin(), next.end(), 0);
            for (unsigned i = 0; i < m_; ++i) {
                if (cur[i] == 0) continue;
                for (unsigned j = 0; j < m_; ++j) next[j] += cur[i] * gmap[i][j];
            }
            for (unsigned j = 0; j < m_; ++j) cur[j] = next[j] % p_;
        }
        if (cur[0] != 1 || std::any_of(cur.begin() + 1, cur.end(), [](u64 v) { return v != 0; }))
            throw Error("generator walk did not close (table corruption)");
        for (u64 x = 1; x < size_; ++x)
            if (log_[x] == kNoLog) throw Error("log table incomplete (generator not primitive)");
    }

    void build_trace_table() {
        std::vector<u32> tr_basis(m_, 0);
        for (unsigned i = 0; i < m_; ++i) {
            detail::Poly xi(m_, 0);
            xi[i] = 1;
            detail::Poly sum(m_, 0), conj = xi;
            for (unsigned j = 0; j < m_; ++j) {
                for (std::size_t d = 0; d < conj.size(); ++d)
                    sum[d] = static_cast<u32>((sum[d] + conj[d]) % p_);
                conj = detail::poly_powmod(conj, p_, poly_, p_);
            }
            for (std::size_t d = 1; d < sum.size(); ++d)
                if (sum[d] != 0) throw Error("trace of basis monomial not scalar (corruption)");
            tr_basis[i] = sum[0];
        }
        trace_.assign(size_, 0);
        for (u64 x = 0; x < size_; ++x) {
            u64 t = 0, v = x;
            for (unsigned i = 0; i < m_; ++i) {
                t += (v % p_) * tr_basis[i];
                v /= p_;
            }
            trace_[x] = static_cast<std::uint8_t>(t % p_);
        }
    }

    // ---- on-disk log-table cache (little-endian u32 per element) ----

    std::string cache_path(const std::string& dir) const {
        std::string name = "logtable_p" + std::to_string(p_) + "_m" + std::to_string(m_) + "_h";
        for (u32 c : poly_) name += std::to_string(c) + "-";
        name += ".bin";
        return dir + "/" + name;
    }

    static void put_u32(std::ostream& os, u32 v) {
        unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 24)};
        os.write(reinterpret_cast<const char*>(b), 4);
    }
    static bool get_u32(std::istream& is, u32& v) {
        unsigned char b[4];
        if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
        v = static_cast<u32>(b[0]) | static_cast<u32>(b[1]) << 8 | static_cast<u32>(b[2]) << 16 |
            static_cast<u32>(b[3]) << 24;
        return true;
    }

    bool load_cache(const std::string& dir) {
        if (dir.empty()) return false;
        std::ifstream is(cache_path(dir), std::ios::binary);
        if (!is) return false;
        char magic[8];
        if (!is.read(magic, 8) || std::memcmp(magic, "ARCSRGL1", 8) != 0) return false;
        u32 fp, fm, npoly;
        if (!get_u32(is, fp) || !get_u32(is, fm) || !get_u32(is, npoly)) return false;
        if (fp != p_ || fm != m_ || npoly != poly_.size()) return false;
        for (u32 c : poly_) {
            u32 fc;
            if (!get_u32(is, fc) || fc != c) return false;
        }
        log_.assign(size_, kNoLog);
        for (u64 x = 0; x < size_; ++x)
            if (!get_u32(is, log_[x])) return false;
        if (log_[0] != kNoLog || log_[1] != 0) return false;
        exp_.assign(order_, 0);
        for (u64 x = 1; x < size_; ++x) {
            if (log_[x] >= order_) return false;
            exp_[log_[x]] = static_cast<u32>(x);
        }
        // the table must be a bijection F* <-> [0, order)
        for (u64 x = 1; x < size_; ++x)
            if (exp_[log_[x]] != x) return false;
        generator_packed_ = exp_[1];
        // verify the generator walk at the start and on a strided sample
        detail::Poly g = packed_to_poly(generator_packed_);
        detail::Poly t = packed_to_poly(exp_[0]);
        for (u64 k = 1; k <= std::min<u64>(order_ - 1, 8); ++k) {
            t = detail::poly_mulmod(t, g, poly_, p_);
            if (poly_to_packed(t) != exp_[k]) return false;
        }
        for (u64 k = 0; k < order_; k += 1 + order_ / 64) {
            detail::Poly step = detail::poly_mulmod(packed_to_poly(exp_[k]), g, poly_, p_);
            if (poly_to_packed(step) != exp_[(k + 1) % order_]) return false;
        }
        return true;
    }

    void write_cache(const std::string& dir) const {
        if (dir.empty()) return;
        std::ofstream os(cache_path(dir), std::ios::binary | std::ios::trunc);
        if (!os) return; // cache is best-effort
        os.write("ARCSRGL1", 8);
        put_u32(os, static_cast<u32>(p_));
        put_u32(os, m_);
        put_u32(os, static_cast<u32>(poly_.size()));
        for (u32 c : poly_) put_u32(os, c);
        for (u64 x = 0; x < size_; ++x) put_u32(os, log_[x]);
    }
};

/// Non-owning handle for F_{q^3} arithmetic, backed either by the full q^6
/// tower (subfield walk with stride q^3+1) or by a standalone cubic field.
/// Downstream verdicts depend only on the abstract structure, not on which
/// backing is in use.
class CubicView {
public:
    CubicView(const DenseField* field, u64 q, unsigned f, u64 stride, bool embedded)
        : field_(field), q_(q), f_(f), stride_(stride), embedded_(embedded) {
        order_ = field->order() / stride;
        n1_ = order_ / (q - 1);
        inv2_ = (field->p() + 1) / 2;
        qmod_ = q_ % order_;
        q2mod_ = nt::mulmod(qmod_, qmod_, order_);
    }

    u64 p() const { return field_->p(); }
    u64 q() const { return q_; }
    unsigned f() const { return f_; }
    u64 order() const { return order_; } // q^3 - 1
    u64 n1() const { return n1_; }       // q^2 + q + 1
    const DenseField& field() const { return *field_; }
    u64 stride() const { return stride_; }

    u32 omega() const { return field_->exp(stride_); }
    u32 exp(u64 j) const { return field_->exp((j % order_) * stride_); }
    u64 log(u32 x) const {
        u64 big = field_->log(x);
        if (big % stride_ != 0) throw Error("element does not lie in F_{q^3}");
        return big / stride_;
    }
    bool contains(u32 x) const { return x == 0 || field_->log(x) % stride_ == 0; }

    u32 add(u32 a, u32 b) const { return field_->add(a, b); }
    u32 sub(u32 a, u32 b) const { return field_->sub(a, b); }
    u32 neg(u32 a) const { return field_->neg(a); }
    u32 mul(u32 a, u32 b) const { return field_->mul(a, b); }
    u32 scalar(u64 c) const { return field_->scalar(c); }
    u32 one() const { return 1; }

    /// Tr_{q^3/p}.
    unsigned trace_to_p(u32 x) const {
        unsigned t = field_->trace_to_prime(x);
        return embedded_ ? static_cast<unsigned>((t * inv2_) % field_->p()) : t;
    }

    /// Tr_{q^3/q}, returned as a field element (lies in F_q).
    u32 trace_to_q(u32 x) const {
        if (x == 0) return 0;
        u64 j = log(x);
        u32 t = add(x, exp(nt::mulmod(j, qmod_, order_)));
        return add(t, exp(nt::mulmod(j, q2mod_, order_)));
    }

    bool in_base_q(u32 x) const { return x == 0 || log(x) % n1_ == 0; }

    /// Quadratic character of F_{q^3}: 0 on 0, else ±1 by log parity.
    int eta(u32 x) const {
        if (x == 0) return 0;
        return (log(x) & 1) ? -1 : +1;
    }

private:
    const DenseField* field_;
    u64 q_;
    unsigned f_;
    u64 stride_;
    bool embedded_;
    u64 order_, n1_, inv2_, qmod_, q2mod_;
};

enum class Sub { P, Q, Q3 };

/// The full chain F_p ⊆ F_q ⊆ F_{q^3} ⊆ F_{q^6}. γ is the deterministic
/// primitive element of F_{q^6} (log-index 1) and ω = γ^{q^3+1}.
class FieldTower {
public:
    FieldTower(u64 p, unsigned f, u64 size_limit = kDefaultTableLimit,
               const std::string& cache_dir = {})
        : p_(p), f_(f), field_(p, 6 * f, size_limit, cache_dir) {
        q_ = nt::ipow(p, f);
        q3_ = q_ * q_ * q_;
        q6_ = field_.size();
    }

    u64 p() const { return p_; }
    unsigned f() const { return f_; }
    u64 q() const { return q_; }
    u64 q3() const { return q3_; }
    u64 q6() const { return q6_; }
    const DenseField& field() const { return field_; }

    u32 gamma() const { return field_.exp(1); }
    u32 omega() const { return field_.exp(q3_ + 1); }
    u64 dlog(u32 x) const { return field_.log(x); }

    CubicView cubic() const { return CubicView(&field_, q_, f_, q3_ + 1, true); }

    /// Trace of an F_{q^6} element into the named subfield (as an element).
    u32 trace(u32 x, Sub target) const {
        if (x == 0) return 0;
        unsigned conj_count = 0;
        u64 step = 0;
        switch (target) {
            case Sub::Q3: conj_count = 2; step = q3_; break;
            case Sub::Q: conj_count = 6; step = q_; break;
            case Sub::P: conj_count = 6 * f_; step = p_; break;
        }
        u64 j = field_.log(x), e = 1;
        u32 acc = 0;
        for (unsigned i = 0; i < conj_count; ++i) {
            acc = field_.add(acc, field_.exp(nt::mulmod(j, e, field_.order())));
            e = nt::mulmod(e, step, field_.order());
        }
        return acc;
    }

private:
    u64 p_;
    unsigned f_;
    DenseField field_;
    u64 q_, q3_, q6_;
};

inline FieldTower build_tower(u64 p, unsigned f, u64 size_limit = kDefaultTableLimit,
                              const std::string& cache_dir = {}) {
    return FieldTower(p, f, size_limit, cache_dir);
}

/// Standalone F_p ⊆ F_q ⊆ F_{q^3} with dense tables of size q^3. Used where
/// only cubic-level arithmetic is needed and q^6 tables would not fit.
class CubicTower {
public:
    CubicTower(u64 p, unsigned f, u64 size_limit = kDefaultTableLimit,
               const std::string& cache_dir = {})
        : p_(p), f_(f), field_(p, 3 * f, size_limit, cache_dir) {
        q_ = nt::ipow(p, f);
    }
    u64 p() const { return p_; }
    unsigned f() const { return f_; }
    u64 q() const { return q_; }
    const DenseField& field() const { return field_; }
    CubicView view() const { return CubicView(&field_, q_, f_, 1, false); }

private:
    u64 p_;
    unsigned f_;
    DenseField field_;
    u64 q_;
};

} // namespace arcsrg::gf
