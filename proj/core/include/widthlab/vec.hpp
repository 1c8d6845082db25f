#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>

namespace widthlab {

/// Fixed-dimension Euclidean vector. The simplex side length is the unit,
/// so all coordinates are dimensionless.
template <int N>
struct Vec {
    static_assert(N >= 2 && N <= 4, "only dimensions 2..4 are used");
    std::array<double, N> c{};

    constexpr Vec() = default;

    template <typename... Ts,
              typename = std::enable_if_t<sizeof...(Ts) == static_cast<std::size_t>(N)>>
    constexpr Vec(Ts... vals) : c{static_cast<double>(vals)...} {}

    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    static constexpr int dim() { return N; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < N; ++i) c[i] += o.c[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < N; ++i) c[i] -= o.c[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (int i = 0; i < N; ++i) c[i] *= s;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(Vec a, double s) { return a *= s; }
    friend Vec operator*(double s, Vec a) { return a *= s; }
    friend Vec operator/(Vec a, double s) { return a *= (1.0 / s); }
    friend Vec operator-(Vec a) { return a *= -1.0; }
};

template <int N>
inline double dot(const Vec<N>& a, const Vec<N>& b) {
    double s = 0.0;
    for (int i = 0; i < N; ++i) s += a[i] * b[i];
    return s;
}

template <int N>
inline double norm2(const Vec<N>& a) {
    return dot(a, a);
}

template <int N>
inline double norm(const Vec<N>& a) {
    return std::sqrt(norm2(a));
}

template <int N>
inline double dist(const Vec<N>& a, const Vec<N>& b) {
    return norm(a - b);
}

template <int N>
inline double dist2(const Vec<N>& a, const Vec<N>& b) {
    return norm2(a - b);
}

template <int N>
inline Vec<N> normalized(const Vec<N>& a) {
    double n = norm(a);
    if (!(n > 0.0)) throw std::invalid_argument("normalized: zero vector");
    return a / n;
}

template <int N>
inline bool is_finite(const Vec<N>& a) {
    for (int i = 0; i < N; ++i)
        if (!std::isfinite(a[i])) return false;
    return true;
}

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;
using Vec4 = Vec<4>;

/// Solve M x = rhs for a small dense system with partial pivoting.
/// Returns false if the matrix is numerically singular.
template <int N>
inline bool solve_linear(std::array<std::array<double, N>, N> m, Vec<N> rhs, Vec<N>& out,
                         double pivot_tol = 1e-13) {
    std::array<int, N> perm{};
    for (int i = 0; i < N; ++i) perm[i] = i;
    for (int col = 0; col < N; ++col) {
        int best = col;
        for (int r = col + 1; r < N; ++r)
            if (std::abs(m[r][col]) > std::abs(m[best][col])) best = r;
        if (std::abs(m[best][col]) < pivot_tol) return false;
        std::swap(m[col], m[best]);
        std::swap(rhs[col], rhs[best]);
        for (int r = col + 1; r < N; ++r) {
            double f = m[r][col] / m[col][col];
            if (f == 0.0) continue;
            for (int k = col; k < N; ++k) m[r][k] -= f * m[col][k];
            rhs[r] -= f * rhs[col];
        }
    }
    for (int r = N - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int k = r + 1; k < N; ++k) s -= m[r][k] * out[k];
        out[r] = s / m[r][r];
    }
    return true;
}

}  // namespace widthlab
