#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>

#include <gmp.h>

namespace kga {

// Fixed-width prime-field element in Montgomery form. Parameter structs
// supply the modulus, R^2 mod m, R mod m and -m^-1 mod 2^64; hot-path
// multiplication is CIOS with 128-bit accumulators, cold paths (inversion,
// byte conversion) go through GMP.
template <class P>
class Fe {
  public:
    static constexpr std::size_t N = P::N;

    Fe() { d_.fill(0); }

    static Fe zero() { return Fe(); }
    static Fe one() { return from_limbs(P::one); }

    static Fe from_u64(std::uint64_t v) {
        Fe r;
        r.d_[0] = v;
        return mont_mul(r, from_limbs(P::r2));
    }

    // Canonical big-endian bytes, must be < modulus.
    static Fe from_bytes(std::span<const std::uint8_t> in) {
        if (in.size() != N * 8) throw std::invalid_argument("field: bad encoding length");
        Fe r;
        for (std::size_t i = 0; i < N; ++i) {
            std::uint64_t limb = 0;
            for (std::size_t j = 0; j < 8; ++j)
                limb = (limb << 8) | in[(N - 1 - i) * 8 + j];
            r.d_[i] = limb;
        }
        if (!less_than(r.d_.data(), P::modulus.data())) throw std::invalid_argument("field: not canonical");
        return mont_mul(r, from_limbs(P::r2));
    }

    // Reduce an arbitrary-width big-endian integer mod m (used by wide
    // hash-to-scalar and rng sampling).
    static Fe from_wide_bytes(std::span<const std::uint8_t> in) {
        mpz_t v, m;
        mpz_init(v);
        mpz_init(m);
        mpz_import(v, in.size(), 1, 1, 1, 0, in.data());
        modulus_mpz(m);
        mpz_mod(v, v, m);
        Fe r = from_mpz(v);
        mpz_clear(v);
        mpz_clear(m);
        return r;
    }

    void to_bytes(std::span<std::uint8_t> out) const {
        if (out.size() != N * 8) throw std::invalid_argument("field: bad output length");
        Fe c = mont_mul(*this, unit());
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < 8; ++j)
                out[(N - 1 - i) * 8 + j] = static_cast<std::uint8_t>(c.d_[i] >> (8 * (7 - j)));
    }

    std::array<std::uint8_t, N * 8> to_bytes() const {
        std::array<std::uint8_t, N * 8> out;
        to_bytes(std::span<std::uint8_t>(out));
        return out;
    }

    friend Fe operator+(const Fe& a, const Fe& b) {
        Fe r;
        unsigned __int128 c = 0;
        for (std::size_t i = 0; i < N; ++i) {
            c += static_cast<unsigned __int128>(a.d_[i]) + b.d_[i];
            r.d_[i] = static_cast<std::uint64_t>(c);
            c >>= 64;
        }
        r.reduce_once();
        return r;
    }

    friend Fe operator-(const Fe& a, const Fe& b) {
        Fe r;
        __int128 c = 0;
        for (std::size_t i = 0; i < N; ++i) {
            c += static_cast<__int128>(a.d_[i]) - b.d_[i];
            r.d_[i] = static_cast<std::uint64_t>(c);
            c >>= 64;
        }
        if (c < 0) {
            unsigned __int128 cc = 0;
            for (std::size_t i = 0; i < N; ++i) {
                cc += static_cast<unsigned __int128>(r.d_[i]) + P::modulus[i];
                r.d_[i] = static_cast<std::uint64_t>(cc);
                cc >>= 64;
            }
        }
        return r;
    }

    friend Fe operator*(const Fe& a, const Fe& b) { return mont_mul(a, b); }

    Fe& operator+=(const Fe& o) { return *this = *this + o; }
    Fe& operator-=(const Fe& o) { return *this = *this - o; }
    Fe& operator*=(const Fe& o) { return *this = *this * o; }

    Fe neg() const { return zero() - *this; }
    Fe dbl() const { return *this + *this; }
    Fe square() const { return mont_mul(*this, *this); }

    bool is_zero() const {
        std::uint64_t acc = 0;
        for (auto l : d_) acc |= l;
        return acc == 0;
    }

    friend bool operator==(const Fe& a, const Fe& b) { return a.d_ == b.d_; }
    friend bool operator!=(const Fe& a, const Fe& b) { return !(a == b); }

    Fe inverse() const {
        if (is_zero()) throw std::domain_error("field: inverse of zero");
        mpz_t v, m;
        mpz_init(v);
        mpz_init(m);
        to_mpz(v);
        modulus_mpz(m);
        if (mpz_invert(v, v, m) == 0) {
            mpz_clear(v);
            mpz_clear(m);
            throw std::domain_error("field: not invertible");
        }
        Fe r = from_mpz(v);
        mpz_clear(v);
        mpz_clear(m);
        return r;
    }

    // Exponent given as canonical big-endian bytes.
    Fe pow(std::span<const std::uint8_t> exp) const {
        Fe acc = one();
        bool started = false;
        for (std::uint8_t byte : exp) {
            for (int bit = 7; bit >= 0; --bit) {
                if (started) acc = acc.square();
                if ((byte >> bit) & 1) {
                    acc = acc * *this;
                    started = true;
                }
            }
        }
        return acc;
    }

    Fe pow(std::uint64_t e) const {
        std::array<std::uint8_t, 8> be;
        for (int i = 0; i < 8; ++i) be[i] = static_cast<std::uint8_t>(e >> (8 * (7 - i)));
        return pow(std::span<const std::uint8_t>(be));
    }

    // Canonical value strictly above (m-1)/2; used for compressed-point sign bits.
    bool is_lexicographically_largest() const {
        Fe c = mont_mul(*this, unit());
        // compare 2*c against modulus
        std::uint64_t t[N + 1] = {0};
        for (std::size_t i = 0; i < N; ++i) {
            t[i] |= c.d_[i] << 1;
            t[i + 1] = c.d_[i] >> 63;
        }
        if (t[N]) return true;
        return !less_than_eq(t, P::modulus.data());
    }

    void to_mpz(mpz_t out) const {
        Fe c = mont_mul(*this, unit());
        mpz_import(out, N, -1, 8, 0, 0, c.d_.data());
    }

    static Fe from_mpz(const mpz_t v) {
        Fe r;
        std::size_t count = 0;
        mpz_export(r.d_.data(), &count, -1, 8, 0, 0, v);
        for (std::size_t i = count; i < N; ++i) r.d_[i] = 0;
        return mont_mul(r, from_limbs(P::r2));
    }

    static void modulus_mpz(mpz_t out) { mpz_import(out, N, -1, 8, 0, 0, P::modulus.data()); }

    const std::array<std::uint64_t, N>& limbs() const { return d_; }

  private:
    std::array<std::uint64_t, N> d_;

    static Fe from_limbs(const std::array<std::uint64_t, N>& l) {
        Fe r;
        r.d_ = l;
        return r;
    }

    static Fe unit() {
        Fe r;
        r.d_[0] = 1;
        return r;
    }

    static bool less_than(const std::uint64_t* a, const std::uint64_t* b) {
        for (std::size_t i = N; i-- > 0;) {
            if (a[i] < b[i]) return true;
            if (a[i] > b[i]) return false;
        }
        return false;
    }

    static bool less_than_eq(const std::uint64_t* a, const std::uint64_t* b) {
        for (std::size_t i = N; i-- > 0;) {
            if (a[i] < b[i]) return true;
            if (a[i] > b[i]) return false;
        }
        return true;
    }

    void reduce_once() {
        if (!less_than(d_.data(), P::modulus.data())) {
            __int128 c = 0;
            for (std::size_t i = 0; i < N; ++i) {
                c += static_cast<__int128>(d_[i]) - P::modulus[i];
                d_[i] = static_cast<std::uint64_t>(c);
                c >>= 64;
            }
        }
    }

    static Fe mont_mul(const Fe& a, const Fe& b) {
        std::uint64_t t[N + 2] = {0};
        for (std::size_t i = 0; i < N; ++i) {
            unsigned __int128 c = 0;
            for (std::size_t j = 0; j < N; ++j) {
                c += static_cast<unsigned __int128>(a.d_[j]) * b.d_[i] + t[j];
                t[j] = static_cast<std::uint64_t>(c);
                c >>= 64;
            }
            c += t[N];
            t[N] = static_cast<std::uint64_t>(c);
            t[N + 1] = static_cast<std::uint64_t>(c >> 64);

            const std::uint64_t m = t[0] * P::inv;
            c = static_cast<unsigned __int128>(m) * P::modulus[0] + t[0];
            c >>= 64;
            for (std::size_t j = 1; j < N; ++j) {
                c += static_cast<unsigned __int128>(m) * P::modulus[j] + t[j];
                t[j - 1] = static_cast<std::uint64_t>(c);
                c >>= 64;
            }
            c += t[N];
            t[N - 1] = static_cast<std::uint64_t>(c);
            t[N] = t[N + 1] + static_cast<std::uint64_t>(c >> 64);
            t[N + 1] = 0;
        }
        Fe r;
        std::memcpy(r.d_.data(), t, N * 8);
        if (t[N] || !less_than(r.d_.data(), P::modulus.data())) {
            __int128 c = 0;
            for (std::size_t i = 0; i < N; ++i) {
                c += static_cast<__int128>(r.d_[i]) - P::modulus[i];
                r.d_[i] = static_cast<std::uint64_t>(c);
                c >>= 64;
            }
        }
        return r;
    }
};

// BLS12-381 base field, p = 0x1a0111ea...ffffaaab (381 bits).
struct FpParams {
    static constexpr std::size_t N = 6;
    static constexpr std::array<std::uint64_t, 6> modulus = {
        0xb9feffffffffaaabULL, 0x1eabfffeb153ffffULL, 0x6730d2a0f6b0f624ULL,
        0x64774b84f38512bfULL, 0x4b1ba7b6434bacd7ULL, 0x1a0111ea397fe69aULL};
    static constexpr std::array<std::uint64_t, 6> r2 = {
        0xf4df1f341c341746ULL, 0x0a76e6a609d104f1ULL, 0x8de5476c4c95b6d5ULL,
        0x67eb88a9939d83c0ULL, 0x9a793e85b519952dULL, 0x11988fe592cae3aaULL};
    static constexpr std::array<std::uint64_t, 6> one = {
        0x760900000002fffdULL, 0xebf4000bc40c0002ULL, 0x5f48985753c758baULL,
        0x77ce585370525745ULL, 0x5c071a97a256ec6dULL, 0x15f65ec3fa80e493ULL};
    static constexpr std::uint64_t inv = 0x89f3fffcfffcfffdULL;
};

// BLS12-381 scalar field, r = 0x73eda753...00000001 (255 bits). This is the
// group order every exponent lives in.
struct FrParams {
    static constexpr std::size_t N = 4;
    static constexpr std::array<std::uint64_t, 4> modulus = {
        0xffffffff00000001ULL, 0x53bda402fffe5bfeULL, 0x3339d80809a1d805ULL, 0x73eda753299d7d48ULL};
    static constexpr std::array<std::uint64_t, 4> r2 = {
        0xc999e990f3f29c6dULL, 0x2b6cedcb87925c23ULL, 0x05d314967254398fULL, 0x0748d9d99f59ff11ULL};
    static constexpr std::array<std::uint64_t, 4> one = {
        0x00000001fffffffeULL, 0x5884b7fa00034802ULL, 0x998c4fefecbc4ff5ULL, 0x1824b159acc5056fULL};
    static constexpr std::uint64_t inv = 0xfffffffeffffffffULL;
};

using Fp = Fe<FpParams>;
using Fr = Fe<FrParams>;

}  // namespace kga
