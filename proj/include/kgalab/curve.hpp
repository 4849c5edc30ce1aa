#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "kgalab/fp_tower.hpp"

namespace kga {

// Short Weierstrass y^2 = x^3 + b with a = 0 over F, Jacobian coordinates.
// G1 lives over Fp (b = 4), G2 over Fp2 on the sextic twist (b = 4(1+u)).

template <class F>
struct CurveB;

template <>
struct CurveB<Fp> {
    static Fp b() { return Fp::from_u64(4); }
};

template <>
struct CurveB<Fp2> {
    static Fp2 b() { return {Fp::from_u64(4), Fp::from_u64(4)}; }
};

template <class F>
struct Affine {
    F x{}, y{};
    bool inf = true;

    static Affine infinity() { return Affine{}; }

    bool is_on_curve() const {
        if (inf) return true;
        return y.square() == x.square() * x + CurveB<F>::b();
    }

    Affine neg() const { return inf ? *this : Affine{x, y.neg(), false}; }

    friend bool operator==(const Affine& a, const Affine& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.x == b.x && a.y == b.y;
    }
};

template <class F>
struct Jacobian {
    F x{}, y{}, z{};  // z == 0 encodes infinity

    static Jacobian infinity() { return {F{}, F{}, F{}}; }
    static Jacobian from_affine(const Affine<F>& a) {
        if (a.inf) return infinity();
        return {a.x, a.y, one_f()};
    }

    bool is_infinity() const { return z.is_zero(); }

    Jacobian dbl() const {
        if (is_infinity()) return *this;
        F xx = x.square();
        F yy = y.square();
        F yyyy = yy.square();
        F s = ((x + yy).square() - xx - yyyy).dbl();
        F m = xx + xx + xx;
        F x3 = m.square() - s.dbl();
        F y3 = m * (s - x3) - yyyy.dbl().dbl().dbl();
        F z3 = (y * z).dbl();
        return {x3, y3, z3};
    }

    Jacobian add(const Jacobian& o) const {
        if (is_infinity()) return o;
        if (o.is_infinity()) return *this;
        F z1z1 = z.square();
        F z2z2 = o.z.square();
        F u1 = x * z2z2;
        F u2 = o.x * z1z1;
        F s1 = y * o.z * z2z2;
        F s2 = o.y * z * z1z1;
        if (u1 == u2) {
            if (s1 == s2) return dbl();
            return infinity();
        }
        F h = u2 - u1;
        F i = h.dbl().square();
        F j = h * i;
        F rr = (s2 - s1).dbl();
        F v = u1 * i;
        F x3 = rr.square() - j - v.dbl();
        F y3 = rr * (v - x3) - (s1 * j).dbl();
        F z3 = ((z + o.z).square() - z1z1 - z2z2) * h;
        return {x3, y3, z3};
    }

    Jacobian add_affine(const Affine<F>& o) const {
        if (o.inf) return *this;
        if (is_infinity()) return from_affine(o);
        F z1z1 = z.square();
        F u2 = o.x * z1z1;
        F s2 = o.y * z * z1z1;
        if (x == u2) {
            if (y == s2) return dbl();
            return infinity();
        }
        F h = u2 - x;
        F i = h.dbl().square();
        F j = h * i;
        F rr = (s2 - y).dbl();
        F v = x * i;
        F x3 = rr.square() - j - v.dbl();
        F y3 = rr * (v - x3) - (y * j).dbl();
        F z3 = (z * h).dbl();
        return {x3, y3, z3};
    }

    Jacobian neg() const { return {x, y.neg(), z}; }

    Affine<F> to_affine() const {
        if (is_infinity()) return Affine<F>::infinity();
        F zi = z.inverse();
        F zi2 = zi.square();
        return {x * zi2, y * zi2 * zi, false};
    }

  private:
    static F one_f() {
        if constexpr (std::is_same_v<F, Fp>)
            return Fp::one();
        else
            return Fp2::one();
    }
};

using G1Affine = Affine<Fp>;
using G2Affine = Affine<Fp2>;
using G1Jac = Jacobian<Fp>;
using G2Jac = Jacobian<Fp2>;

// 4-bit windowed scalar multiplication; exponent is a canonical Fr value.
template <class F>
Jacobian<F> scalar_mul(const Affine<F>& p, const Fr& k) {
    if (p.inf || k.is_zero()) return Jacobian<F>::infinity();
    std::array<Jacobian<F>, 16> table;
    table[0] = Jacobian<F>::infinity();
    table[1] = Jacobian<F>::from_affine(p);
    for (int i = 2; i < 16; ++i) table[i] = table[i - 1].add_affine(p);
    auto bytes = k.to_bytes();
    Jacobian<F> acc = Jacobian<F>::infinity();
    bool started = false;
    for (std::uint8_t byte : bytes) {
        for (int half = 0; half < 2; ++half) {
            int win = half == 0 ? (byte >> 4) : (byte & 0xf);
            if (started) {
                acc = acc.dbl().dbl().dbl().dbl();
            }
            if (win != 0) {
                acc = acc.add(table[win]);
                started = true;
            }
        }
    }
    return acc;
}

// Curve-wide context: standard generators, subgroup checks, fixed-base comb
// tables for the generators, compressed serialization.
namespace curve {

const G1Affine& g1_generator();
const G2Affine& g2_generator();

G1Jac g1_mul_gen(const Fr& k);  // comb-accelerated k*G1
G2Jac g2_mul_gen(const Fr& k);

bool g1_in_subgroup(const G1Affine& p);
bool g2_in_subgroup(const G2Affine& p);

// Compressed encodings: 48 bytes (G1) / 96 bytes (G2), flag bits in the top
// three bits of the first byte (compressed, infinity, y-sign).
std::array<std::uint8_t, 48> g1_serialize(const G1Affine& p);
std::array<std::uint8_t, 96> g2_serialize(const G2Affine& p);
G1Affine g1_deserialize(std::span<const std::uint8_t> in);  // throws on invalid / off-curve / out-of-subgroup
G2Affine g2_deserialize(std::span<const std::uint8_t> in);

std::optional<Fp> sqrt_fp(const Fp& a);
std::optional<Fp2> sqrt_fp2(const Fp2& a);

}  // namespace curve

}  // namespace kga
