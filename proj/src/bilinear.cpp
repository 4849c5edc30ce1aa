#include "kgalab/bilinear.hpp"

#include <atomic>
#include <cstring>

#include <sodium.h>

#include "kgalab/hexutil.hpp"

namespace kga {

namespace {

void ensure_sodium() {
    static const int rc = sodium_init();
    if (rc < 0) throw Error("libsodium initialization failed");
}

std::atomic<std::uint64_t> g_pairings{0};
OracleAudit g_audit;

const Fp12& gt_generator_value() {
    static Fp12 v = pairing(curve::g1_generator(), curve::g2_generator());
    return v;
}

}  // namespace

std::string Scalar::to_hex() const {
    auto bytes = fe_.to_bytes();
    return hex_encode(bytes);
}

Scalar Scalar::from_hex(const std::string& h) {
    auto bytes = hex_decode(h);
    return Scalar(Fr::from_bytes(bytes));
}

Scalar RandomSource::scalar() {
    std::array<std::uint8_t, 64> wide;
    fill(wide);
    return Scalar::from_wide_bytes(wide);
}

Scalar RandomSource::nonzero_scalar() {
    for (;;) {
        Scalar s = scalar();
        if (!s.is_zero()) return s;
    }
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
    ensure_sodium();
    randombytes_buf(out.data(), out.size());
}

DeterministicRandom::DeterministicRandom(std::uint64_t seed) {
    ensure_sodium();
    std::array<std::uint8_t, 20> material{'k', 'g', 'a', '-', 'l', 'a', 'b', '/', 'd', 'r', 'b', 'g'};
    for (int i = 0; i < 8; ++i) material[12 + i] = static_cast<std::uint8_t>(seed >> (8 * i));
    key_ = sha256(material);
}

void DeterministicRandom::fill(std::span<std::uint8_t> out) {
    std::array<std::uint8_t, 8> nonce{};
    std::uint64_t c = counter_++;
    for (int i = 0; i < 8; ++i) nonce[i] = static_cast<std::uint8_t>(c >> (8 * i));
    crypto_stream_chacha20(out.data(), out.size(), nonce.data(), key_.data());
}

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> input) {
    ensure_sodium();
    std::array<std::uint8_t, 32> out;
    crypto_hash_sha256(out.data(), input.data(), input.size());
    return out;
}

Scalar hash_to_scalar(const HashSpec& spec, std::span<const std::uint8_t> input) {
    if (spec.algorithm != "sha-256") throw Error("hash_to_scalar: unsupported algorithm " + spec.algorithm);
    std::vector<std::uint8_t> msg(input.begin(), input.end());
    for (std::uint8_t counter = 0;; ++counter) {
        std::array<std::uint8_t, 64> wide;
        for (std::uint8_t branch : {std::uint8_t{1}, std::uint8_t{2}}) {
            std::vector<std::uint8_t> buf;
            buf.reserve(spec.tag.size() + 1 + msg.size());
            buf.insert(buf.end(), spec.tag.begin(), spec.tag.end());
            buf.push_back(branch);
            buf.insert(buf.end(), msg.begin(), msg.end());
            auto digest = sha256(buf);
            std::memcpy(wide.data() + (branch - 1) * 32, digest.data(), 32);
        }
        Scalar s = Scalar::from_wide_bytes(wide);
        if (!s.is_zero()) return s;
        msg.push_back(counter);  // out-of-range odds; retried deterministically
    }
}

Scalar hash_to_scalar(const HashSpec& spec, const std::string& input) {
    return hash_to_scalar(spec, std::span<const std::uint8_t>(
                                    reinterpret_cast<const std::uint8_t*>(input.data()), input.size()));
}

GroupElement GroupElement::generator(bool with_transcript) {
    GroupElement g;
    g.p1 = curve::g1_generator();
    g.p2 = curve::g2_generator();
    if (with_transcript) g.transcript = Scalar::one();
    return g;
}

GroupElement GroupElement::identity(bool with_transcript) {
    GroupElement g;
    g.p1 = G1Affine::infinity();
    g.p2 = G2Affine::infinity();
    if (with_transcript) g.transcript = Scalar::zero();
    return g;
}

std::string GroupElement::to_hex() const {
    auto b1 = curve::g1_serialize(p1);
    auto b2 = curve::g2_serialize(p2);
    std::vector<std::uint8_t> all(b1.begin(), b1.end());
    all.insert(all.end(), b2.begin(), b2.end());
    return hex_encode(all);
}

GroupElement GroupElement::from_hex(const std::string& h) {
    auto bytes = hex_decode(h);
    if (bytes.size() != 144) throw Error("group element: bad encoding length");
    GroupElement g;
    g.p1 = curve::g1_deserialize(std::span<const std::uint8_t>(bytes).subspan(0, 48));
    g.p2 = curve::g2_deserialize(std::span<const std::uint8_t>(bytes).subspan(48, 96));
    if (g.p1.inf != g.p2.inf) throw Error("group element: inconsistent representations");
    return g;
}

TargetElement TargetElement::identity(bool with_transcript) {
    TargetElement t;
    t.v = Fp12::one();
    if (with_transcript) t.transcript = Scalar::zero();
    return t;
}

TargetElement operator*(const TargetElement& a, const TargetElement& b) {
    TargetElement r;
    r.v = a.v * b.v;
    if (a.transcript && b.transcript) r.transcript = *a.transcript + *b.transcript;
    return r;
}

TargetElement TargetElement::inverse() const {
    TargetElement r;
    r.v = v.inverse();
    if (transcript) r.transcript = transcript->neg();
    return r;
}

std::string TargetElement::to_hex() const {
    std::vector<std::uint8_t> all;
    all.reserve(576);
    auto push = [&](const Fp& f) {
        auto b = f.to_bytes();
        all.insert(all.end(), b.begin(), b.end());
    };
    for (const Fp6* c6 : {&v.c0, &v.c1})
        for (const Fp2* c2 : {&c6->c0, &c6->c1, &c6->c2}) {
            push(c2->c0);
            push(c2->c1);
        }
    return hex_encode(all);
}

GroupElement exp(const GroupElement& base, const Scalar& k) {
    GroupElement r;
    if (base.p1 == curve::g1_generator() && base.p2 == curve::g2_generator()) {
        r.p1 = curve::g1_mul_gen(k.fe()).to_affine();
        r.p2 = curve::g2_mul_gen(k.fe()).to_affine();
    } else {
        r.p1 = scalar_mul(base.p1, k.fe()).to_affine();
        r.p2 = scalar_mul(base.p2, k.fe()).to_affine();
    }
    if (base.transcript) r.transcript = *base.transcript * k;
    return r;
}

TargetElement pair(const GroupElement& a, const GroupElement& b) {
    g_pairings.fetch_add(1, std::memory_order_relaxed);
    TargetElement r;
    r.v = pairing(a.p1, b.p2);
    if (a.transcript && b.transcript) r.transcript = *a.transcript * *b.transcript;
    return r;
}

TargetElement target_exp(const TargetElement& base, const Scalar& k) {
    TargetElement r;
    r.v = base.v.pow(k.fe().to_bytes());
    if (base.transcript) r.transcript = *base.transcript * k;
    return r;
}

bool target_equal(const TargetElement& x, const TargetElement& y) {
    bool eq = x.v == y.v;
    g_audit.equalities++;
    if (x.transcript && y.transcript) {
        g_audit.transcript_checked++;
        bool tr_eq = *x.transcript == *y.transcript;
        if (tr_eq != eq) g_audit.disagreements++;
    }
    return eq;
}

bool oracle_check(bool claimed, const TargetElement& x, const TargetElement& y) {
    if (!x.transcript || !y.transcript)
        throw Error("oracle_check: transcripts not enabled on both elements");
    return claimed == (*x.transcript == *y.transcript);
}

bool verify_transcript(const GroupElement& e) {
    if (!e.transcript) throw Error("verify_transcript: transcript missing");
    GroupElement expect = exp(GroupElement::generator(), *e.transcript);
    return expect.to_hex() == e.to_hex();
}

bool verify_transcript(const TargetElement& e) {
    if (!e.transcript) throw Error("verify_transcript: transcript missing");
    return gt_generator_value().pow(e.transcript->fe().to_bytes()) == e.v;
}

const OracleAudit& oracle_audit() { return g_audit; }

void reset_oracle_audit() { g_audit = OracleAudit{}; }

std::uint64_t pairing_count() { return g_pairings.load(std::memory_order_relaxed); }

}  // namespace kga
