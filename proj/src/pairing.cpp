#include "kgalab/pairing.hpp"

#include <mutex>

namespace kga {

namespace {

// |x| for the BLS parameter x = -0xd201000000010000.
constexpr std::uint64_t BLS_U = 0xd201000000010000ULL;

template <class F>
F pow_bytes(const F& base, std::span<const std::uint8_t> exp) {
    F acc = F::one();
    bool started = false;
    for (std::uint8_t byte : exp) {
        for (int bit = 7; bit >= 0; --bit) {
            if (started) acc = acc.square();
            if ((byte >> bit) & 1) {
                acc = acc * base;
                started = true;
            }
        }
    }
    return acc;
}

// Frobenius multipliers gamma_m = xi^(m(p-1)/6) for the w^m coefficient.
struct FrobCtx {
    Fp2 gamma[6];  // gamma[0] = 1

    FrobCtx() {
        mpz_t p, e;
        mpz_init(p);
        mpz_init(e);
        Fp::modulus_mpz(p);
        mpz_sub_ui(e, p, 1);
        mpz_divexact_ui(e, e, 6);
        std::vector<std::uint8_t> bytes((mpz_sizeinbase(e, 2) + 7) / 8);
        std::size_t count = 0;
        mpz_export(bytes.data(), &count, 1, 1, 1, 0, e);
        bytes.resize(count ? count : 1);
        Fp2 xi{Fp::one(), Fp::one()};
        gamma[0] = Fp2::one();
        gamma[1] = pow_bytes(xi, std::span<const std::uint8_t>(bytes));
        for (int m = 2; m < 6; ++m) gamma[m] = gamma[m - 1] * gamma[1];
        mpz_clear(p);
        mpz_clear(e);
    }
};

const FrobCtx& frob_ctx() {
    static FrobCtx ctx;
    return ctx;
}

struct LineCoeffs {
    Fp2 cv2, cvw, cw;  // coefficients of v^2, v*w, w
};

Fp12 sparse_line(const LineCoeffs& l) {
    Fp12 f = Fp12::zero();
    f.c0.c2 = l.cv2;
    f.c1.c1 = l.cvw;
    f.c1.c0 = l.cw;
    return f;
}

// Tangent line at T (twist, Jacobian), evaluated at P and scaled by 2YZ^3.
// Derived from the untwist (x,y) -> (x/v, y*w/v^2); scaling by Fp2
// constants is harmless since they die in the final exponentiation.
LineCoeffs dbl_step(G2Jac& t, const G1Affine& p) {
    Fp2 xx = t.x.square();
    Fp2 yy = t.y.square();
    Fp2 yyyy = yy.square();
    Fp2 zz = t.z.square();
    Fp2 s = ((t.x + yy).square() - xx - yyyy).dbl();
    Fp2 m3 = xx + xx + xx;
    Fp2 x3 = m3.square() - s.dbl();
    Fp2 y3 = m3 * (s - x3) - yyyy.dbl().dbl().dbl();
    Fp2 z3 = (t.y * t.z).dbl();

    LineCoeffs l;
    l.cv2 = (z3 * zz).mul_fp(p.y);
    l.cvw = (m3 * zz).mul_fp(p.x).neg();
    l.cw = m3 * t.x - yy.dbl();
    t = {x3, y3, z3};
    return l;
}

// Chord line through T and affine Q, evaluated at P and scaled by Z3.
LineCoeffs add_step(G2Jac& t, const G2Affine& q, const G1Affine& p) {
    Fp2 z1z1 = t.z.square();
    Fp2 u2 = q.x * z1z1;
    Fp2 s2 = q.y * t.z * z1z1;
    Fp2 h = u2 - t.x;
    Fp2 r = s2 - t.y;
    Fp2 h2 = h.square();
    Fp2 h3 = h * h2;
    Fp2 v = t.x * h2;
    Fp2 x3 = r.square() - h3 - v.dbl();
    Fp2 y3 = r * (v - x3) - t.y * h3;
    Fp2 z3 = t.z * h;

    LineCoeffs l;
    l.cv2 = z3.mul_fp(p.y);
    l.cvw = r.mul_fp(p.x).neg();
    l.cw = r * q.x - q.y * z3;
    t = {x3, y3, z3};
    return l;
}

}  // namespace

Fp12 Fp12::frobenius() const {
    const FrobCtx& ctx = frob_ctx();
    Fp12 r;
    r.c0.c0 = c0.c0.conj();                   // w^0
    r.c1.c0 = c1.c0.conj() * ctx.gamma[1];    // w^1
    r.c0.c1 = c0.c1.conj() * ctx.gamma[2];    // v   = w^2
    r.c1.c1 = c1.c1.conj() * ctx.gamma[3];    // v*w = w^3
    r.c0.c2 = c0.c2.conj() * ctx.gamma[4];    // v^2 = w^4
    r.c1.c2 = c1.c2.conj() * ctx.gamma[5];    // v^2*w = w^5
    return r;
}

namespace {

// (a + b s)^2 in Fp4 = Fp2[s]/(s^2 - xi)
inline void fp4_square(const Fp2& a, const Fp2& b, Fp2& c0, Fp2& c1) {
    Fp2 t0 = a.square();
    Fp2 t1 = b.square();
    c0 = t1.mul_xi() + t0;
    c1 = (a + b).square() - t0 - t1;
}

}  // namespace

Fp12 Fp12::cyclotomic_square() const {
    Fp2 z0 = c0.c0, z4 = c0.c1, z3 = c0.c2;
    Fp2 z2 = c1.c0, z1 = c1.c1, z5 = c1.c2;
    Fp2 t0, t1, t2, t3;

    fp4_square(z0, z1, t0, t1);
    z0 = (t0 - z0).dbl() + t0;
    z1 = (t1 + z1).dbl() + t1;

    fp4_square(z2, z3, t0, t1);
    fp4_square(z4, z5, t2, t3);

    z4 = (t0 - z4).dbl() + t0;
    z5 = (t1 + z5).dbl() + t1;

    t0 = t3.mul_xi();
    z2 = (t0 + z2).dbl() + t0;
    z3 = (t2 - z3).dbl() + t2;

    return {{z0, z4, z3}, {z2, z1, z5}};
}

Fp12 miller_loop(const G1Affine& p, const G2Affine& q) {
    if (p.inf || q.inf) return Fp12::one();
    Fp12 f = Fp12::one();
    G2Jac t = G2Jac::from_affine(q);
    for (int i = 62; i >= 0; --i) {
        f = f.square();
        f = f * sparse_line(dbl_step(t, p));
        if ((BLS_U >> i) & 1) f = f * sparse_line(add_step(t, q, p));
    }
    // x is negative: invert, which is conjugation up to the final exponentiation
    return f.conj();
}

Fp12 final_exponentiation(const Fp12& f) {
    // easy part: f^((p^6-1)(p^2+1))
    Fp12 t = f.conj() * f.inverse();
    t = t.frobenius().frobenius() * t;

    // hard part, exponent 3(p^4-p^2+1)/r = (x-1)^2 (x+p)(x^2+p^2-1) + 3.
    // All intermediates are unitary, so inversion is conjugation.
    auto exp_u = [](const Fp12& g) { return g.cyclotomic_pow_u64(BLS_U); };
    Fp12 a = (exp_u(t) * t).conj();    // t^(x-1)
    a = (exp_u(a) * a).conj();         // t^((x-1)^2)
    Fp12 b = exp_u(a).conj() * a.frobenius();           // a^(x+p)
    Fp12 c = exp_u(exp_u(b));                           // b^(x^2)
    c = c * b.frobenius().frobenius() * b.conj();       // b^(x^2+p^2-1)
    return c * t.square() * t;
}

Fp12 pairing(const G1Affine& p, const G2Affine& q) {
    if (p.inf || q.inf) return Fp12::one();
    return final_exponentiation(miller_loop(p, q));
}

}  // namespace kga
