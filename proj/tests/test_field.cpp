#include <random>

#include "doctest.h"
#include "kgalab/field.hpp"

using namespace kga;

namespace {

// GMP mirror of every field op; the tests below never trust the Montgomery
// path to check itself.
struct MpzMod {
    mpz_t m;
    explicit MpzMod(bool fp) {
        mpz_init(m);
        if (fp)
            Fp::modulus_mpz(m);
        else
            Fr::modulus_mpz(m);
    }
    ~MpzMod() { mpz_clear(m); }
};

template <class F>
void check_against_gmp(bool is_fp, std::mt19937_64& rng) {
    MpzMod mod(is_fp);
    mpz_t a, b, want, got;
    mpz_init(a);
    mpz_init(b);
    mpz_init(want);
    mpz_init(got);

    auto random_fe = [&](mpz_t out) {
        std::array<std::uint8_t, F::N * 8 + 16> wide;
        for (auto& byte : wide) byte = static_cast<std::uint8_t>(rng());
        mpz_import(out, wide.size(), 1, 1, 1, 0, wide.data());
        mpz_mod(out, out, mod.m);
        return F::from_mpz(out);
    };

    for (int iter = 0; iter < 200; ++iter) {
        F fa = random_fe(a);
        F fb = random_fe(b);

        mpz_add(want, a, b);
        mpz_mod(want, want, mod.m);
        (fa + fb).to_mpz(got);
        CHECK(mpz_cmp(want, got) == 0);

        mpz_sub(want, a, b);
        mpz_mod(want, want, mod.m);
        (fa - fb).to_mpz(got);
        CHECK(mpz_cmp(want, got) == 0);

        mpz_mul(want, a, b);
        mpz_mod(want, want, mod.m);
        (fa * fb).to_mpz(got);
        CHECK(mpz_cmp(want, got) == 0);

        mpz_mul(want, a, a);
        mpz_mod(want, want, mod.m);
        fa.square().to_mpz(got);
        CHECK(mpz_cmp(want, got) == 0);

        if (!fa.is_zero()) {
            CHECK(fa * fa.inverse() == F::one());
        }

        // byte round-trip
        auto bytes = fa.to_bytes();
        CHECK(F::from_bytes(bytes) == fa);
    }
    mpz_clear(a);
    mpz_clear(b);
    mpz_clear(want);
    mpz_clear(got);
}

}  // namespace

TEST_CASE("Fp arithmetic matches GMP") {
    std::mt19937_64 rng(0xf1e1d);
    check_against_gmp<Fp>(true, rng);
}

TEST_CASE("Fr arithmetic matches GMP") {
    std::mt19937_64 rng(0xf2e2d);
    check_against_gmp<Fr>(false, rng);
}

TEST_CASE("field edge values") {
    CHECK(Fp::zero().is_zero());
    CHECK(Fp::one() * Fp::one() == Fp::one());
    CHECK(Fp::from_u64(7) + Fp::from_u64(5) == Fp::from_u64(12));
    CHECK((Fp::zero() - Fp::one()) + Fp::one() == Fp::zero());
    CHECK_THROWS_AS(Fp::zero().inverse(), std::domain_error);

    // p itself is not a canonical encoding
    std::array<std::uint8_t, 48> pbytes{};
    mpz_t p;
    mpz_init(p);
    Fp::modulus_mpz(p);
    std::size_t count = 0;
    std::array<std::uint8_t, 48> tmp{};
    mpz_export(tmp.data(), &count, 1, 1, 1, 0, p);
    std::copy(tmp.begin(), tmp.begin() + count, pbytes.begin() + (48 - count));
    CHECK_THROWS_AS(Fp::from_bytes(pbytes), std::invalid_argument);
    mpz_clear(p);
}

TEST_CASE("wide reduction and pow") {
    std::mt19937_64 rng(0xabc);
    MpzMod mod(false);
    mpz_t v, got;
    mpz_init(v);
    mpz_init(got);
    for (int iter = 0; iter < 100; ++iter) {
        std::array<std::uint8_t, 64> wide;
        for (auto& b : wide) b = static_cast<std::uint8_t>(rng());
        Fr fe = Fr::from_wide_bytes(wide);
        mpz_import(v, wide.size(), 1, 1, 1, 0, wide.data());
        mpz_mod(v, v, mod.m);
        fe.to_mpz(got);
        CHECK(mpz_cmp(v, got) == 0);
    }
    // Fermat: a^(r-1) = 1
    Fr a = Fr::from_u64(123456789);
    mpz_t e;
    mpz_init(e);
    Fr::modulus_mpz(e);
    mpz_sub_ui(e, e, 1);
    std::array<std::uint8_t, 32> eb{};
    std::size_t count = 0;
    std::array<std::uint8_t, 32> tmp{};
    mpz_export(tmp.data(), &count, 1, 1, 1, 0, e);
    std::copy(tmp.begin(), tmp.begin() + count, eb.begin() + (32 - count));
    CHECK(a.pow(eb) == Fr::one());
    mpz_clear(e);
    mpz_clear(v);
    mpz_clear(got);
}
