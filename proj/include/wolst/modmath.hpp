#pragma once

// Exact arithmetic mod p^k, k <= 6, p prime, p^k < 2^126.
//
// External contract is plain least-nonnegative residues. Internally each
// modulus carries a Montgomery context sized to the modulus: one 64-bit
// limb for odd moduli below 2^63, two limbs up to 2^126. The Montgomery
// domain is exposed (mont_* methods) because the O(p) kernels upstream
// want one reduction per multiply instead of two.

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "wolst/errors.hpp"

namespace wolst {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline std::string to_string(u128 x) {
    if (x == 0) return "0";
    std::string s;
    while (x) {
        s += char('0' + (unsigned)(x % 10));
        x /= 10;
    }
    return {s.rbegin(), s.rend()};
}

// v_p(x) truncated at the working exponent k: saturated means x was 0 mod p^k,
// so the true valuation is only known to be >= k.
struct Valuation {
    int v = 0;
    bool saturated = false;
    friend bool operator==(const Valuation&, const Valuation&) = default;
};

namespace detail {

inline u64 mulmod_u64(u64 a, u64 b, u64 n) { return (u64)((u128)a * b % n); }

inline u64 powmod_u64(u64 a, u64 e, u64 n) {
    u64 r = 1 % n;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, n);
        a = mulmod_u64(a, a, n);
        e >>= 1;
    }
    return r;
}

} // namespace detail

// Deterministic Miller-Rabin, valid for every n < 2^64 with this witness set.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

class ModulusPower {
public:
    static constexpr u128 width_limit = (u128)1 << 126;

    u64 p() const { return p_; }
    int k() const { return k_; }
    u128 modulus() const { return m_; }
    // p^j for 1 <= j <= k (the spec'd ladder for valuation queries).
    u128 ladder(int j) const {
        assert(j >= 1 && j <= k_);
        return lad_[j - 1];
    }

    u128 reduce(u128 x) const { return x % m_; }

    u128 add(u128 a, u128 b) const {
        u128 s = a + b; // a, b < m < 2^126, no wrap
        return s >= m_ ? s - m_ : s;
    }
    u128 sub(u128 a, u128 b) const { return a >= b ? a - b : m_ - b + a; }
    u128 neg(u128 a) const { return a ? m_ - a : 0; }

    u128 mul(u128 a, u128 b) const {
        switch (backend_) {
        case Backend::plain64:
            return (u128)detail::mulmod_u64((u64)a, (u64)b, (u64)m_);
        case Backend::mont64:
            // two reductions keep the plain-residue contract
            return redc64((u128)redc64((u128)(u64)a * (u64)b) * r2_64_);
        default:
            return redc128(mul_wide(redc128(mul_wide(a, b)), r2_128_));
        }
    }

    u128 pow(u128 a, u128 e) const {
        if (backend_ == Backend::plain64) {
            u64 r = 1 % (u64)m_, b = (u64)(a % m_);
            while (e) {
                if (e & 1) r = (u64)((u128)r * b % m_);
                b = (u64)((u128)b * b % m_);
                e >>= 1;
            }
            return r;
        }
        u128 x = to_mont(reduce(a));
        u128 acc = mont_one();
        while (e) {
            if (e & 1) acc = mont_mul(acc, x);
            x = mont_mul(x, x);
            e >>= 1;
        }
        return from_mont(acc);
    }

    // Extended Euclid; Hensel lifting would do equally well.
    u128 inv(u128 a) const {
        a %= m_;
        i128 r0 = (i128)m_, r1 = (i128)a;
        i128 t0 = 0, t1 = 1;
        while (r1) {
            i128 q = r0 / r1;
            i128 tmp = r0 - q * r1;
            r0 = r1;
            r1 = tmp;
            tmp = t0 - q * t1;
            t0 = t1;
            t1 = tmp;
        }
        if (r0 != 1) throw NotAUnitError(0);
        return t0 < 0 ? (u128)(t0 + (i128)m_) : (u128)t0;
    }

    Valuation valuation(u128 x) const {
        x %= m_;
        if (x == 0) return {k_, true};
        int v = 0;
        while (x % p_ == 0) {
            x /= p_;
            ++v;
        }
        return {v, false};
    }

    // --- Montgomery domain (hot paths; plain64 backend maps these to plain ops) ---
    bool mont_native() const { return backend_ != Backend::plain64; }
    u128 mont_one() const { return r1_; }
    u128 to_mont(u128 a) const {
        switch (backend_) {
        case Backend::plain64: return a % m_;
        case Backend::mont64: return redc64((u128)(u64)a * r2_64_);
        default: return redc128(mul_wide(a, r2_128_));
        }
    }
    u128 from_mont(u128 a) const {
        switch (backend_) {
        case Backend::plain64: return a;
        case Backend::mont64: return redc64((u128)(u64)a);
        default: return redc128(Wide{(u64)a, (u64)(a >> 64), 0, 0});
        }
    }
    u128 mont_mul(u128 a, u128 b) const {
        switch (backend_) {
        case Backend::plain64:
            return (u128)detail::mulmod_u64((u64)a, (u64)b, (u64)m_);
        case Backend::mont64:
            return redc64((u128)(u64)a * (u64)b);
        default:
            return redc128(mul_wide(a, b));
        }
    }

private:
    enum class Backend { plain64, mont64, mont128 };

    friend ModulusPower make_modulus(u64 p, int k);
    friend ModulusPower make_modulus_trusted(u64 p, int k);

    struct Wide { // 256-bit little-endian limbs
        u64 w0, w1, w2, w3;
    };

    static Wide mul_wide(u128 a, u128 b) {
        u64 a0 = (u64)a, a1 = (u64)(a >> 64);
        u64 b0 = (u64)b, b1 = (u64)(b >> 64);
        u128 p00 = (u128)a0 * b0;
        u128 p01 = (u128)a0 * b1;
        u128 p10 = (u128)a1 * b0;
        u128 p11 = (u128)a1 * b1; // operands < 2^62 here, no overflow below
        u128 mid = (p00 >> 64) + (u64)p01 + (u64)p10;
        u128 hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
        return {(u64)p00, (u64)mid, (u64)hi, (u64)(hi >> 64)};
    }

    u64 redc64(u128 t) const { // t < m * 2^64, m odd < 2^63
        u64 q = (u64)t * ninv64_;
        u64 r = (u64)((t + (u128)q * (u64)m_) >> 64);
        return r >= (u64)m_ ? r - (u64)m_ : r;
    }

    u128 redc128(Wide t) const { // t < m * 2^128, m odd < 2^126
        u64 n0 = (u64)m_, n1 = (u64)(m_ >> 64);
        for (int round = 0; round < 2; ++round) {
            u64 q = t.w0 * ninv64_;
            u128 c = (u128)q * n0 + t.w0; // low 64 bits cancel
            u128 mid = (u128)q * n1 + t.w1 + (u64)(c >> 64);
            u128 s2 = (u128)t.w2 + (u64)(mid >> 64);
            t.w0 = (u64)mid;
            t.w1 = (u64)s2;
            t.w2 = t.w3 + (u64)(s2 >> 64);
            t.w3 = 0;
        }
        u128 r = ((u128)t.w1 << 64) | t.w0;
        assert(t.w2 == 0);
        return r >= m_ ? r - m_ : r;
    }

    void init_backend() {
        if ((m_ & 1) == 0) { // p = 2, modulus <= 64
            backend_ = Backend::plain64;
            r1_ = 1 % m_;
            return;
        }
        // -m^{-1} mod 2^64 by Newton iteration
        u64 n0 = (u64)m_;
        u64 inv = n0;
        for (int i = 0; i < 5; ++i) inv *= 2 - n0 * inv;
        ninv64_ = ~inv + 1;
        if (m_ < ((u128)1 << 63)) {
            backend_ = Backend::mont64;
            u64 n = (u64)m_;
            r1_ = (u128)((((u128)1) << 64) % n);
            r2_64_ = (u64)(((u128)0 - n) % n); // 2^128 mod n
        } else {
            backend_ = Backend::mont128;
            u128 x = ((u128)1 << 127) % m_;
            x = add(x, x); // 2^128 mod m
            r1_ = x;
            u128 r2 = x;
            for (int i = 0; i < 128; ++i) r2 = add(r2, r2);
            r2_128_ = r2; // 2^256 mod m
        }
    }

    u64 p_ = 0;
    int k_ = 0;
    u128 m_ = 0;
    u128 lad_[6] = {};
    Backend backend_ = Backend::plain64;
    u64 ninv64_ = 0;
    u64 r2_64_ = 0;    // 2^128 mod m (mont64)
    u128 r2_128_ = 0;  // 2^256 mod m (mont128)
    u128 r1_ = 0;      // R mod m = mont form of 1
};

// Internal: construction without the primality check, for callers that already
// hold p fresh out of a sieve. Everything else is still validated.
inline ModulusPower make_modulus_trusted(u64 p, int k) {
    if (k < 1 || k > 6) throw ExponentOutOfRangeError(k);
    if (p < 2) throw NotPrimeError(p);
    ModulusPower m;
    m.p_ = p;
    m.k_ = k;
    u128 acc = 1;
    for (int j = 0; j < k; ++j) {
        if (acc > (ModulusPower::width_limit - 1) / p)
            throw OverflowError("p^k >= 2^126 for p = " + std::to_string(p) +
                                ", k = " + std::to_string(k));
        acc *= p;
        m.lad_[j] = acc;
    }
    m.m_ = acc;
    m.init_backend();
    return m;
}

inline ModulusPower make_modulus(u64 p, int k) {
    if (k < 1 || k > 6) throw ExponentOutOfRangeError(k);
    if (!is_prime(p)) throw NotPrimeError(p);
    return make_modulus_trusted(p, k);
}

// Largest k (capped at 6) with p^k inside the width limit. 6 for every
// p < 2^21; drops to 5 a little above that (2124679 is the relevant case).
inline int max_exponent(u64 p) {
    u128 acc = 1;
    int k = 0;
    while (k < 6 && acc <= (ModulusPower::width_limit - 1) / p) {
        acc *= p;
        ++k;
    }
    return k;
}

// A value in Z/p^k with its modulus. Least nonnegative representative;
// binary ops on residues of different moduli are a programming error
// (asserted, not thrown).
struct Residue {
    u128 value = 0;
    const ModulusPower* mod = nullptr;

    friend bool operator==(const Residue& a, const Residue& b) {
        return a.value == b.value;
    }
};

inline Residue residue(u128 x, const ModulusPower& m) { return {m.reduce(x), &m}; }

inline Residue add(Residue a, Residue b) {
    assert(a.mod && a.mod == b.mod);
    return {a.mod->add(a.value, b.value), a.mod};
}
inline Residue sub(Residue a, Residue b) {
    assert(a.mod && a.mod == b.mod);
    return {a.mod->sub(a.value, b.value), a.mod};
}
inline Residue mul(Residue a, Residue b) {
    assert(a.mod && a.mod == b.mod);
    return {a.mod->mul(a.value, b.value), a.mod};
}
inline Residue inv(Residue a) {
    assert(a.mod);
    return {a.mod->inv(a.value), a.mod};
}
inline Residue pow(Residue a, u128 e) {
    assert(a.mod);
    return {a.mod->pow(a.value, e), a.mod};
}
inline Valuation valuation(Residue a) {
    assert(a.mod);
    return a.mod->valuation(a.value);
}
inline Valuation valuation(u128 x, const ModulusPower& m) { return m.valuation(x); }

// Prefix-product batch inversion: one extended-Euclid call plus 3(n-1)
// multiplications. On a non-unit input, reports the first offending index.
inline std::vector<Residue> batch_inv(const std::vector<Residue>& xs) {
    if (xs.empty()) return {};
    const ModulusPower& m = *xs.front().mod;
    std::vector<Residue> out(xs.size(), Residue{0, &m});
    std::vector<u128> prefix(xs.size());
    u128 acc = 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        assert(xs[i].mod == &m);
        prefix[i] = acc;
        acc = m.mul(acc, xs[i].value);
    }
    u128 inv_acc;
    try {
        inv_acc = m.inv(acc);
    } catch (const NotAUnitError&) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (xs[i].value % m.p() == 0) throw NotAUnitError(i);
        throw; // unreachable: a non-unit product forces a non-unit element
    }
    for (std::size_t i = xs.size(); i-- > 0;) {
        out[i] = {m.mul(inv_acc, prefix[i]), &m};
        inv_acc = m.mul(inv_acc, xs[i].value);
    }
    return out;
}

} // namespace wolst
