#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "widthlab/pieces.hpp"
#include "widthlab/vec.hpp"

namespace widthlab {

/// A k-sphere (k = 1 or 2) in R^N carried by a (k+1)-dimensional affine
/// subspace, with an optional clipping predicate on the sphere points.
/// The predicate must describe a relatively open subset.
template <int N>
struct SubSphere {
    Vec<N> center{};
    double radius = 0.0;
    std::vector<Vec<N>> basis;  // orthonormal, spans the carrier directions
    std::function<bool(const Vec<N>&)> subset;  // empty = full sphere

    int k() const { return static_cast<int>(basis.size()) - 1; }

    Vec<N> project_carrier(const Vec<N>& x) const {
        Vec<N> p = center;
        for (const auto& b : basis) p += dot(x - center, b) * b;
        return p;
    }
    bool on_subset(const Vec<N>& q, double tol = 1e-9) const {
        if (std::abs(dist(q, center) - radius) > tol) return false;
        return !subset || subset(q);
    }
};

/// Intersection of all balls of the given radius centered at the subset of
/// the carrier sphere.
template <int N>
struct Spindle {
    SubSphere<N> generator;
    double radius = 0.0;
};

template <int N>
struct SubSphereFarthest {
    Vec<N> point{};
    double dist = 0.0;
    bool degenerate = false;  // projection hits the center: all equidistant
};

/// Farthest point of the (possibly clipped) sphere from p. For clipped
/// subsets whose unconstrained maximizer violates the predicate, a dense
/// parameter scan decides.
template <int N>
SubSphereFarthest<N> farthest_on_subsphere(const SubSphere<N>& s, const Vec<N>& p,
                                           int scan = 4096) {
    SubSphereFarthest<N> out;
    Vec<N> p_h = s.project_carrier(p);
    Vec<N> dir = p_h - s.center;
    double dn = norm(dir);
    if (dn <= 1e-12) {
        out.degenerate = true;
        Vec<N> cand = s.center + s.radius * s.basis[0];
        if (!s.subset || s.subset(cand)) {
            out.point = cand;
            out.dist = dist(p, cand);
            return out;
        }
    } else {
        Vec<N> q = s.center - (s.radius / dn) * dir;
        if (!s.subset || s.subset(q)) {
            out.point = q;
            out.dist = dist(p, q);
            return out;
        }
    }

    double best = -1.0;
    if (s.k() == 1) {
        for (int i = 0; i <= scan; ++i) {
            double t = kTwoPi * i / scan;
            Vec<N> q =
                s.center + s.radius * (std::cos(t) * s.basis[0] + std::sin(t) * s.basis[1]);
            if (s.subset && !s.subset(q)) continue;
            double d = dist(p, q);
            if (d > best) {
                best = d;
                out.point = q;
            }
        }
    } else {
        int m = static_cast<int>(std::sqrt(static_cast<double>(scan))) + 1;
        for (int i = 0; i <= m; ++i) {
            double ph = 3.14159265358979323846 * i / m;
            for (int j = 0; j <= 2 * m; ++j) {
                double th = kTwoPi * j / (2 * m);
                Vec<N> q = s.center +
                           s.radius * (std::cos(ph) * s.basis[0] +
                                       std::sin(ph) * (std::cos(th) * s.basis[1] +
                                                       std::sin(th) * s.basis[2]));
                if (s.subset && !s.subset(q)) continue;
                double d = dist(p, q);
                if (d > best) {
                    best = d;
                    out.point = q;
                }
            }
        }
    }
    out.dist = best;
    return out;
}

template <int N>
inline bool spindle_membership(const Spindle<N>& sp, const Vec<N>& x, double tol = 1e-9) {
    return farthest_on_subsphere(sp.generator, x).dist <= sp.radius + tol;
}

/// The boundary cap: for x on the generating subset, the points of the
/// spindle at distance exactly r from x form the half-slice of S(x, r) cut
/// by the affine span of the axis subspace and x, on the far side from x.
template <int N>
struct SpindleCap {
    Vec<N> x;         // base point on the generator
    Vec<N> axis_dir;  // unit direction from the sphere center toward x_H
    SubSphere<N> gen;
    double radius;

    bool contains(const Vec<N>& y, double tol = 1e-9) const {
        if (std::abs(dist(y, x) - radius) > tol) return false;
        Vec<N> rel = y - gen.center;
        Vec<N> in_carrier{};
        for (const auto& b : gen.basis) in_carrier += dot(rel, b) * b;
        double t = dot(in_carrier, axis_dir);
        double off = norm(in_carrier - t * axis_dir);
        if (off > tol) return false;  // outside the affine span J_x
        return t <= tol;              // closed half away from x
    }
};

template <int N>
inline SpindleCap<N> spindle_cap(const Spindle<N>& sp, const Vec<N>& x) {
    if (!sp.generator.on_subset(x, 1e-9))
        throw std::invalid_argument("spindle_cap: x must lie on the generating subset");
    SpindleCap<N> cap;
    cap.x = x;
    cap.gen = sp.generator;
    cap.radius = sp.radius;
    cap.axis_dir = normalized(sp.generator.project_carrier(x) - sp.generator.center);
    return cap;
}

}  // namespace widthlab
