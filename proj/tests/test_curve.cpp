#include <random>

#include "doctest.h"
#include "kgalab/curve.hpp"

using namespace kga;

namespace {

Fr random_fr(std::mt19937_64& rng) {
    std::array<std::uint8_t, 64> wide;
    for (auto& b : wide) b = static_cast<std::uint8_t>(rng());
    return Fr::from_wide_bytes(wide);
}

}  // namespace

TEST_CASE("generators are valid") {
    CHECK(curve::g1_generator().is_on_curve());
    CHECK(curve::g2_generator().is_on_curve());
    CHECK(curve::g1_in_subgroup(curve::g1_generator()));
    CHECK(curve::g2_in_subgroup(curve::g2_generator()));
}

TEST_CASE("group laws hold on random points") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 20; ++iter) {
        Fr a = random_fr(rng), b = random_fr(rng);
        G1Jac pa = curve::g1_mul_gen(a);
        G1Jac pb = curve::g1_mul_gen(b);
        // commutativity and doubling consistency
        CHECK(pa.add(pb).to_affine() == pb.add(pa).to_affine());
        CHECK(pa.add(pa).to_affine() == pa.dbl().to_affine());
        // a*G + (-a)*G = O
        CHECK(pa.add(pa.neg()).is_infinity());
        // mixed vs full addition
        CHECK(pa.add_affine(pb.to_affine()) .to_affine() == pa.add(pb).to_affine());
    }
}

TEST_CASE("comb multiplication agrees with windowed multiplication") {
    std::mt19937_64 rng(43);
    for (int iter = 0; iter < 20; ++iter) {
        Fr k = random_fr(rng);
        CHECK(curve::g1_mul_gen(k).to_affine() == scalar_mul(curve::g1_generator(), k).to_affine());
        CHECK(curve::g2_mul_gen(k).to_affine() == scalar_mul(curve::g2_generator(), k).to_affine());
    }
    CHECK(curve::g1_mul_gen(Fr::zero()).is_infinity());
    CHECK(curve::g1_mul_gen(Fr::one()).to_affine() == curve::g1_generator());
    CHECK(curve::g2_mul_gen(Fr::one()).to_affine() == curve::g2_generator());
}

TEST_CASE("scalar multiplication is a homomorphism") {
    std::mt19937_64 rng(44);
    for (int iter = 0; iter < 10; ++iter) {
        Fr a = random_fr(rng), b = random_fr(rng);
        G1Affine lhs = scalar_mul(curve::g1_mul_gen(a).to_affine(), b).to_affine();
        G1Affine rhs = curve::g1_mul_gen(a * b).to_affine();
        CHECK(lhs == rhs);
        G2Affine lhs2 = scalar_mul(curve::g2_mul_gen(a).to_affine(), b).to_affine();
        G2Affine rhs2 = curve::g2_mul_gen(a * b).to_affine();
        CHECK(lhs2 == rhs2);
    }
}

TEST_CASE("serialization round-trips bit-exactly") {
    std::mt19937_64 rng(45);
    for (int iter = 0; iter < 20; ++iter) {
        Fr k = random_fr(rng);
        G1Affine p1 = curve::g1_mul_gen(k).to_affine();
        auto enc1 = curve::g1_serialize(p1);
        CHECK(curve::g1_deserialize(enc1) == p1);
        CHECK(curve::g1_serialize(curve::g1_deserialize(enc1)) == enc1);

        G2Affine p2 = curve::g2_mul_gen(k).to_affine();
        auto enc2 = curve::g2_serialize(p2);
        CHECK(curve::g2_deserialize(enc2) == p2);
        CHECK(curve::g2_serialize(curve::g2_deserialize(enc2)) == enc2);
    }
    // infinity
    auto inf1 = curve::g1_serialize(G1Affine::infinity());
    CHECK(curve::g1_deserialize(inf1).inf);
    auto inf2 = curve::g2_serialize(G2Affine::infinity());
    CHECK(curve::g2_deserialize(inf2).inf);
}

TEST_CASE("deserialization rejects malformed input") {
    auto enc = curve::g1_serialize(curve::g1_generator());
    auto bad = enc;
    bad[0] &= 0x7f;  // clear compression flag
    CHECK_THROWS(curve::g1_deserialize(bad));
    bad = enc;
    bad[47] ^= 1;  // almost surely lands off-curve or out of subgroup
    bool rejected = false;
    try {
        auto p = curve::g1_deserialize(bad);
        rejected = !(p == curve::g1_generator());
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    CHECK(rejected);
    std::array<std::uint8_t, 7> short_buf{};
    CHECK_THROWS(curve::g1_deserialize(short_buf));
}
