#include "kgalab/curve.hpp"

#include <mutex>
#include <vector>

#include "kgalab/hexutil.hpp"

namespace kga {
namespace curve {

namespace {

Fp fp_from_hex(const char* h) {
    auto bytes = hex_decode(h);
    return Fp::from_bytes(bytes);
}

// Standard BLS12-381 generators.
G1Affine make_g1_gen() {
    G1Affine g;
    g.x = fp_from_hex("17f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac586c55e83ff97a1aeffb3af00adb22c6bb");
    g.y = fp_from_hex("08b3f481e3aaa0f1a09e30ed741d8ae4fcf5e095d5d00af600db18cb2c04b3edd03cc744a2888ae40caa232946c5e7e1");
    g.inf = false;
    return g;
}

G2Affine make_g2_gen() {
    G2Affine g;
    g.x.c0 = fp_from_hex("024aa2b2f08f0a91260805272dc51051c6e47ad4fa403b02b4510b647ae3d1770bac0326a805bbefd48056c8c121bdb8");
    g.x.c1 = fp_from_hex("13e02b6052719f607dacd3a088274f65596bd0d09920b61ab5da61bbdc7f5049334cf11213945d57e5ac7d055d042b7e");
    g.y.c0 = fp_from_hex("0ce5d527727d6e118cc9cdc6da2e351aadfd9baa8cbdd3a76d429a695160d12c923ac9cc3baca289e193548608b82801");
    g.y.c1 = fp_from_hex("0606c4a02ea734cc32acd2b02bc28b99cb3e287e85a763af267492ab572e99ab3f370d275cec1da1aaa9075ff05f79be");
    g.inf = false;
    return g;
}

// Multiply by an arbitrary big-endian integer (used for order checks only).
template <class F>
Jacobian<F> mul_bigint(const Affine<F>& p, std::span<const std::uint8_t> e) {
    Jacobian<F> acc = Jacobian<F>::infinity();
    bool started = false;
    for (std::uint8_t byte : e) {
        for (int bit = 7; bit >= 0; --bit) {
            if (started) acc = acc.dbl();
            if ((byte >> bit) & 1) {
                acc = acc.add_affine(p);
                started = true;
            }
        }
    }
    return acc;
}

std::array<std::uint8_t, 32> order_bytes() {
    std::array<std::uint8_t, 32> out{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            out[(3 - i) * 8 + j] = static_cast<std::uint8_t>(FrParams::modulus[i] >> (8 * (7 - j)));
    return out;
}

// Fixed-base comb for the generator: table[w][b] = b * 2^(8w) * G.
template <class F>
struct Comb {
    static constexpr int WINDOWS = 32;
    std::vector<std::array<Affine<F>, 256>> table;

    explicit Comb(const Affine<F>& gen) {
        table.resize(WINDOWS);
        Jacobian<F> base = Jacobian<F>::from_affine(gen);
        for (int w = 0; w < WINDOWS; ++w) {
            Affine<F> base_aff = base.to_affine();
            Jacobian<F> acc = Jacobian<F>::infinity();
            table[w][0] = Affine<F>::infinity();
            for (int b = 1; b < 256; ++b) {
                acc = acc.add_affine(base_aff);
                table[w][b] = acc.to_affine();
            }
            base = acc.add_affine(base_aff);  // 256 * 2^(8w) * G
        }
    }

    Jacobian<F> mul(const Fr& k) const {
        auto be = k.to_bytes();  // 32 bytes big-endian
        Jacobian<F> acc = Jacobian<F>::infinity();
        for (int w = 0; w < WINDOWS; ++w) {
            std::uint8_t byte = be[31 - w];
            if (byte) acc = acc.add_affine(table[w][byte]);
        }
        return acc;
    }
};

const Comb<Fp>& g1_comb() {
    static Comb<Fp> comb(g1_generator());
    return comb;
}

const Comb<Fp2>& g2_comb() {
    static Comb<Fp2> comb(g2_generator());
    return comb;
}

std::span<const std::uint8_t> sqrt_exponent() {
    // (p+1)/4, p = 3 mod 4
    static std::vector<std::uint8_t> exp = [] {
        mpz_t p;
        mpz_init(p);
        Fp::modulus_mpz(p);
        mpz_add_ui(p, p, 1);
        mpz_divexact_ui(p, p, 4);
        std::vector<std::uint8_t> bytes((mpz_sizeinbase(p, 2) + 7) / 8);
        std::size_t count = 0;
        mpz_export(bytes.data(), &count, 1, 1, 1, 0, p);
        bytes.resize(count);
        mpz_clear(p);
        return bytes;
    }();
    return exp;
}

bool fp2_sign(const Fp2& y) {
    if (y.c1.is_zero()) return y.c0.is_lexicographically_largest();
    return y.c1.is_lexicographically_largest();
}

constexpr std::uint8_t FLAG_COMPRESSED = 0x80;
constexpr std::uint8_t FLAG_INFINITY = 0x40;
constexpr std::uint8_t FLAG_SIGN = 0x20;

}  // namespace

const G1Affine& g1_generator() {
    static G1Affine g = make_g1_gen();
    return g;
}

const G2Affine& g2_generator() {
    static G2Affine g = make_g2_gen();
    return g;
}

G1Jac g1_mul_gen(const Fr& k) { return g1_comb().mul(k); }
G2Jac g2_mul_gen(const Fr& k) { return g2_comb().mul(k); }

bool g1_in_subgroup(const G1Affine& p) {
    if (p.inf) return true;
    if (!p.is_on_curve()) return false;
    return mul_bigint(p, order_bytes()).is_infinity();
}

bool g2_in_subgroup(const G2Affine& p) {
    if (p.inf) return true;
    if (!p.is_on_curve()) return false;
    return mul_bigint(p, order_bytes()).is_infinity();
}

std::optional<Fp> sqrt_fp(const Fp& a) {
    Fp r = a.pow(sqrt_exponent());
    if (r.square() != a) return std::nullopt;
    return r;
}

std::optional<Fp2> sqrt_fp2(const Fp2& a) {
    if (a.is_zero()) return Fp2::zero();
    if (a.c1.is_zero()) {
        if (auto r = sqrt_fp(a.c0)) return Fp2{*r, Fp::zero()};
        // a = c0 with -c0 square: sqrt is sqrt(-c0) * u
        if (auto r = sqrt_fp(a.c0.neg())) return Fp2{Fp::zero(), *r};
        return std::nullopt;
    }
    // complex method: norm = c0^2 + c1^2 must be square in Fp
    auto s = sqrt_fp(a.c0.square() + a.c1.square());
    if (!s) return std::nullopt;
    Fp inv2 = Fp::from_u64(2).inverse();
    auto attempt = [&](const Fp& sign_s) -> std::optional<Fp2> {
        Fp d = (a.c0 + sign_s) * inv2;
        auto t = sqrt_fp(d);
        if (!t || t->is_zero()) return std::nullopt;
        Fp2 y{*t, a.c1 * (t->dbl()).inverse()};
        if (y.square() == a) return y;
        return std::nullopt;
    };
    if (auto y = attempt(*s)) return y;
    if (auto y = attempt(s->neg())) return y;
    return std::nullopt;
}

std::array<std::uint8_t, 48> g1_serialize(const G1Affine& p) {
    std::array<std::uint8_t, 48> out{};
    if (p.inf) {
        out[0] = FLAG_COMPRESSED | FLAG_INFINITY;
        return out;
    }
    p.x.to_bytes(out);
    out[0] |= FLAG_COMPRESSED;
    if (p.y.is_lexicographically_largest()) out[0] |= FLAG_SIGN;
    return out;
}

std::array<std::uint8_t, 96> g2_serialize(const G2Affine& p) {
    std::array<std::uint8_t, 96> out{};
    if (p.inf) {
        out[0] = FLAG_COMPRESSED | FLAG_INFINITY;
        return out;
    }
    p.x.c1.to_bytes(std::span<std::uint8_t>(out).subspan(0, 48));
    p.x.c0.to_bytes(std::span<std::uint8_t>(out).subspan(48, 48));
    out[0] |= FLAG_COMPRESSED;
    if (fp2_sign(p.y)) out[0] |= FLAG_SIGN;
    return out;
}

G1Affine g1_deserialize(std::span<const std::uint8_t> in) {
    if (in.size() != 48) throw std::invalid_argument("g1: bad length");
    std::uint8_t flags = in[0];
    if (!(flags & FLAG_COMPRESSED)) throw std::invalid_argument("g1: uncompressed encoding");
    std::array<std::uint8_t, 48> buf{};
    std::copy(in.begin(), in.end(), buf.begin());
    buf[0] &= 0x1f;
    if (flags & FLAG_INFINITY) {
        for (auto b : buf)
            if (b) throw std::invalid_argument("g1: malformed infinity");
        return G1Affine::infinity();
    }
    G1Affine p;
    p.x = Fp::from_bytes(buf);
    auto y = sqrt_fp(p.x.square() * p.x + CurveB<Fp>::b());
    if (!y) throw std::invalid_argument("g1: x not on curve");
    p.y = *y;
    if (p.y.is_lexicographically_largest() != static_cast<bool>(flags & FLAG_SIGN)) p.y = p.y.neg();
    p.inf = false;
    if (!g1_in_subgroup(p)) throw std::invalid_argument("g1: not in prime-order subgroup");
    return p;
}

G2Affine g2_deserialize(std::span<const std::uint8_t> in) {
    if (in.size() != 96) throw std::invalid_argument("g2: bad length");
    std::uint8_t flags = in[0];
    if (!(flags & FLAG_COMPRESSED)) throw std::invalid_argument("g2: uncompressed encoding");
    std::array<std::uint8_t, 96> buf{};
    std::copy(in.begin(), in.end(), buf.begin());
    buf[0] &= 0x1f;
    if (flags & FLAG_INFINITY) {
        for (auto b : buf)
            if (b) throw std::invalid_argument("g2: malformed infinity");
        return G2Affine::infinity();
    }
    G2Affine p;
    p.x.c1 = Fp::from_bytes(std::span<const std::uint8_t>(buf).subspan(0, 48));
    p.x.c0 = Fp::from_bytes(std::span<const std::uint8_t>(buf).subspan(48, 48));
    auto y = sqrt_fp2(p.x.square() * p.x + CurveB<Fp2>::b());
    if (!y) throw std::invalid_argument("g2: x not on curve");
    p.y = *y;
    if (fp2_sign(p.y) != static_cast<bool>(flags & FLAG_SIGN)) p.y = p.y.neg();
    p.inf = false;
    if (!g2_in_subgroup(p)) throw std::invalid_argument("g2: not in prime-order subgroup");
    return p;
}

}  // namespace curve
}  // namespace kga
