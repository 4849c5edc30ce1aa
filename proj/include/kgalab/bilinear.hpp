#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgalab/pairing.hpp"

namespace kga {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scalar in Z_r, r the prime order of the pairing groups.
class Scalar {
  public:
    Scalar() : fe_(Fr::zero()) {}
    explicit Scalar(const Fr& fe) : fe_(fe) {}

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(Fr::one()); }
    static Scalar from_u64(std::uint64_t v) { return Scalar(Fr::from_u64(v)); }
    static Scalar from_wide_bytes(std::span<const std::uint8_t> b) { return Scalar(Fr::from_wide_bytes(b)); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return Scalar(a.fe_ + b.fe_); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return Scalar(a.fe_ - b.fe_); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) { return Scalar(a.fe_ * b.fe_); }
    Scalar inverse() const { return Scalar(fe_.inverse()); }
    Scalar neg() const { return Scalar(fe_.neg()); }

    bool is_zero() const { return fe_.is_zero(); }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.fe_ == b.fe_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string to_hex() const;
    static Scalar from_hex(const std::string& h);

    const Fr& fe() const { return fe_; }

  private:
    Fr fe_;
};

// Injected randomness source. DeterministicRandom drives every seeded
// fixture; SystemRandom is the default entropy path.
struct RandomSource {
    virtual ~RandomSource() = default;
    virtual void fill(std::span<std::uint8_t> out) = 0;

    Scalar scalar();           // uniform in [0, r)
    Scalar nonzero_scalar();   // uniform in [1, r)
};

struct SystemRandom final : RandomSource {
    void fill(std::span<std::uint8_t> out) override;
};

class DeterministicRandom final : public RandomSource {
  public:
    explicit DeterministicRandom(std::uint64_t seed);
    void fill(std::span<std::uint8_t> out) override;

  private:
    std::array<std::uint8_t, 32> key_;
    std::uint64_t counter_ = 0;
};

// Hash-to-scalar specification: a 256-bit hash expanded to 512 bits via two
// tagged invocations, reduced mod r, re-hashed with a counter byte on the
// (never observed) zero output.
struct HashSpec {
    std::string algorithm = "sha-256";
    std::string tag = "kga-lab/hash-to-scalar/v1";
};

Scalar hash_to_scalar(const HashSpec& spec, std::span<const std::uint8_t> input);
Scalar hash_to_scalar(const HashSpec& spec, const std::string& input);

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> input);

// Logical element of a symmetric source group G. The symmetric
// pairing interface is realized over an asymmetric curve by carrying both
// source-group representations of the same discrete log, so pair(a, b) is
// defined for any two elements.
struct GroupElement {
    G1Affine p1;
    G2Affine p2;
    std::optional<Scalar> transcript;  // exponent w.r.t. the generator, test-only

    static GroupElement generator(bool with_transcript = false);
    static GroupElement identity(bool with_transcript = false);

    bool is_identity() const { return p1.inf; }

    std::string to_hex() const;  // compressed G1 || compressed G2, 288 hex chars
    static GroupElement from_hex(const std::string& h);

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.p1 == b.p1 && a.p2 == b.p2;
    }
    friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
};

struct TargetElement {
    Fp12 v;
    std::optional<Scalar> transcript;  // exponent w.r.t. pair(g, g)

    static TargetElement identity(bool with_transcript = false);

    bool is_identity() const { return v.is_one(); }

    friend TargetElement operator*(const TargetElement& a, const TargetElement& b);
    TargetElement inverse() const;

    std::string to_hex() const;

    friend bool operator==(const TargetElement& a, const TargetElement& b) { return a.v == b.v; }
    friend bool operator!=(const TargetElement& a, const TargetElement& b) { return !(a == b); }
};

GroupElement exp(const GroupElement& base, const Scalar& k);
TargetElement pair(const GroupElement& a, const GroupElement& b);
TargetElement target_exp(const TargetElement& base, const Scalar& k);
bool target_equal(const TargetElement& x, const TargetElement& y);

// Independent oracle backend: cross-checks a claimed pairing equality against
// the scalar transcripts. Throws if either transcript is missing.
bool oracle_check(bool claimed, const TargetElement& x, const TargetElement& y);

// Recompute the element from its transcript and compare bit-exactly.
bool verify_transcript(const GroupElement& e);
bool verify_transcript(const TargetElement& e);

// Every target_equal call with both transcripts present is also evaluated in
// the scalar field; disagreements are tallied here and must stay at zero.
struct OracleAudit {
    std::uint64_t equalities = 0;
    std::uint64_t transcript_checked = 0;
    std::uint64_t disagreements = 0;
};

const OracleAudit& oracle_audit();
void reset_oracle_audit();

std::uint64_t pairing_count();  // global count of pair() evaluations

}  // namespace kga
