#pragma once

#include "kgalab/field.hpp"

namespace kga {

// Tower for BLS12-381:
//   Fp2  = Fp[u]  / (u^2 + 1)
//   Fp6  = Fp2[v] / (v^3 - xi),  xi = 1 + u
//   Fp12 = Fp6[w] / (w^2 - v)

struct Fp2 {
    Fp c0, c1;

    static Fp2 zero() { return {Fp::zero(), Fp::zero()}; }
    static Fp2 one() { return {Fp::one(), Fp::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }

    friend Fp2 operator+(const Fp2& a, const Fp2& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
    friend Fp2 operator-(const Fp2& a, const Fp2& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }

    friend Fp2 operator*(const Fp2& a, const Fp2& b) {
        // Karatsuba over u^2 = -1
        Fp t0 = a.c0 * b.c0;
        Fp t1 = a.c1 * b.c1;
        Fp t2 = (a.c0 + a.c1) * (b.c0 + b.c1);
        return {t0 - t1, t2 - t0 - t1};
    }

    Fp2 square() const {
        Fp t0 = (c0 + c1) * (c0 - c1);
        Fp t1 = (c0 * c1).dbl();
        return {t0, t1};
    }

    Fp2 neg() const { return {c0.neg(), c1.neg()}; }
    Fp2 dbl() const { return {c0.dbl(), c1.dbl()}; }
    Fp2 conj() const { return {c0, c1.neg()}; }

    Fp2 mul_fp(const Fp& s) const { return {c0 * s, c1 * s}; }

    // multiply by xi = 1 + u
    Fp2 mul_xi() const { return {c0 - c1, c0 + c1}; }

    Fp2 inverse() const {
        Fp n = (c0.square() + c1.square()).inverse();
        return {c0 * n, c1.neg() * n};
    }

    friend bool operator==(const Fp2& a, const Fp2& b) { return a.c0 == b.c0 && a.c1 == b.c1; }
    friend bool operator!=(const Fp2& a, const Fp2& b) { return !(a == b); }
};

struct Fp6 {
    Fp2 c0, c1, c2;  // c0 + c1 v + c2 v^2

    static Fp6 zero() { return {Fp2::zero(), Fp2::zero(), Fp2::zero()}; }
    static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }

    friend Fp6 operator+(const Fp6& a, const Fp6& b) { return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2}; }
    friend Fp6 operator-(const Fp6& a, const Fp6& b) { return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2}; }

    friend Fp6 operator*(const Fp6& a, const Fp6& b) {
        Fp2 m0 = a.c0 * b.c0;
        Fp2 m1 = a.c1 * b.c1;
        Fp2 m2 = a.c2 * b.c2;
        Fp2 t0 = ((a.c1 + a.c2) * (b.c1 + b.c2) - m1 - m2).mul_xi() + m0;
        Fp2 t1 = (a.c0 + a.c1) * (b.c0 + b.c1) - m0 - m1 + m2.mul_xi();
        Fp2 t2 = (a.c0 + a.c2) * (b.c0 + b.c2) - m0 - m2 + m1;
        return {t0, t1, t2};
    }

    Fp6 square() const { return *this * *this; }
    Fp6 neg() const { return {c0.neg(), c1.neg(), c2.neg()}; }
    Fp6 dbl() const { return {c0.dbl(), c1.dbl(), c2.dbl()}; }

    // multiply by v
    Fp6 mul_v() const { return {c2.mul_xi(), c0, c1}; }

    Fp6 mul_fp2(const Fp2& s) const { return {c0 * s, c1 * s, c2 * s}; }

    Fp6 inverse() const {
        Fp2 a = c0.square() - (c1 * c2).mul_xi();
        Fp2 b = c2.square().mul_xi() - c0 * c1;
        Fp2 c = c1.square() - c0 * c2;
        Fp2 t = ((c2 * b + c1 * c).mul_xi() + c0 * a).inverse();
        return {a * t, b * t, c * t};
    }

    friend bool operator==(const Fp6& a, const Fp6& b) { return a.c0 == b.c0 && a.c1 == b.c1 && a.c2 == b.c2; }
    friend bool operator!=(const Fp6& a, const Fp6& b) { return !(a == b); }
};

struct Fp12 {
    Fp6 c0, c1;  // c0 + c1 w

    static Fp12 zero() { return {Fp6::zero(), Fp6::zero()}; }
    static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

    bool is_one() const { return *this == one(); }

    friend Fp12 operator+(const Fp12& a, const Fp12& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
    friend Fp12 operator-(const Fp12& a, const Fp12& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }

    friend Fp12 operator*(const Fp12& a, const Fp12& b) {
        Fp6 m0 = a.c0 * b.c0;
        Fp6 m1 = a.c1 * b.c1;
        Fp6 t1 = (a.c0 + a.c1) * (b.c0 + b.c1) - m0 - m1;
        return {m0 + m1.mul_v(), t1};
    }

    Fp12 square() const {
        Fp6 t = c0 * c1;
        Fp6 s = (c0 + c1) * (c0 + c1.mul_v());
        return {s - t - t.mul_v(), t.dbl()};
    }

    // f^(p^6): conjugation over the w line. Also the inverse for unitary
    // (cyclotomic-subgroup) elements, which all pairing outputs are.
    Fp12 conj() const { return {c0, c1.neg()}; }

    Fp12 inverse() const {
        Fp6 t = (c0.square() - c1.square().mul_v()).inverse();
        return {c0 * t, (c1 * t).neg()};
    }

    // Frobenius endomorphism f -> f^p. Coefficient of w^m picks up
    // xi^(m(p-1)/6); constants are computed once at startup.
    Fp12 frobenius() const;

    // Granger-Scott squaring; valid only for elements of the cyclotomic
    // subgroup (all post-final-exponentiation values).
    Fp12 cyclotomic_square() const;

    Fp12 cyclotomic_pow_u64(std::uint64_t e) const {
        Fp12 acc = one();
        bool started = false;
        for (int bit = 63; bit >= 0; --bit) {
            if (started) acc = acc.cyclotomic_square();
            if ((e >> bit) & 1) {
                acc = acc * *this;
                started = true;
            }
        }
        return acc;
    }

    Fp12 pow_u64(std::uint64_t e) const {
        Fp12 acc = one();
        bool started = false;
        for (int bit = 63; bit >= 0; --bit) {
            if (started) acc = acc.square();
            if ((e >> bit) & 1) {
                acc = acc * *this;
                started = true;
            }
        }
        return acc;
    }

    Fp12 pow(std::span<const std::uint8_t> exp) const {
        Fp12 acc = one();
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

    friend bool operator==(const Fp12& a, const Fp12& b) { return a.c0 == b.c0 && a.c1 == b.c1; }
    friend bool operator!=(const Fp12& a, const Fp12& b) { return !(a == b); }
};

}  // namespace kga
