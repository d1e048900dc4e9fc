#pragma once

#include "qthermo/bloch.hpp"

#include <array>
#include <cmath>
#include <complex>

namespace qthermo {

using cplx = std::complex<double>;

/// Dense complex 2x2 matrix, row-major {m00, m01, m10, m11}.
struct Mat2 {
    std::array<cplx, 4> m{};

    cplx& operator()(int r, int c) { return m[2 * r + c]; }
    const cplx& operator()(int r, int c) const { return m[2 * r + c]; }

    static Mat2 identity() { return Mat2{{cplx(1), cplx(0), cplx(0), cplx(1)}}; }
    static Mat2 zero() { return Mat2{}; }

    Mat2 adjoint() const {
        return Mat2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }

    cplx trace() const { return m[0] + m[3]; }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return Mat2{{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
                     a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
    }
    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        return Mat2{{a.m[0] + b.m[0], a.m[1] + b.m[1], a.m[2] + b.m[2], a.m[3] + b.m[3]}};
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        return Mat2{{a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2], a.m[3] - b.m[3]}};
    }
    friend Mat2 operator*(cplx s, const Mat2& a) {
        return Mat2{{s * a.m[0], s * a.m[1], s * a.m[2], s * a.m[3]}};
    }

    double max_abs() const {
        double v = 0.0;
        for (const auto& e : m)
            v = std::max(v, std::abs(e));
        return v;
    }
};

inline Mat2 bloch_to_density(const BlochState& s) {
    return Mat2{{cplx(0.5 * (1.0 + s.z)), cplx(0.5 * s.x, -0.5 * s.y),
                 cplx(0.5 * s.x, 0.5 * s.y), cplx(0.5 * (1.0 - s.z))}};
}

inline BlochState density_to_bloch(const Mat2& rho) {
    return BlochState(2.0 * rho.m[1].real(), 2.0 * rho.m[2].imag(),
                      (rho.m[0] - rho.m[3]).real());
}

} // namespace qthermo
