#pragma once

#include <array>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "widthlab/vec.hpp"

namespace widthlab {

/// Role of a generator piece inside a generating set. Used for reporting
/// and for classifying extremal pairs.
enum class PieceKind { Vertex, ApexArc, BaseArc, PatchInterior, EdgeArc, ShadowEdge, Other };

template <int N>
struct ExtremeResult {
    Vec<N> point{};
    double value = 0.0;      // distance or linear functional value
    bool degenerate = false; // every point of the piece attains the value
};

// ---------------------------------------------------------------------------
// Piece types
// ---------------------------------------------------------------------------

template <int N>
struct PointPiece {
    Vec<N> p;
    std::string label;
    PieceKind kind = PieceKind::Vertex;
};

/// Circular arc: point(t) = center + radius * (cos t * u + sin t * v),
/// t in [t0, t1], with u, v orthonormal.
template <int N>
struct ArcPiece {
    Vec<N> center;
    double radius = 0.0;
    Vec<N> u, v;
    double t0 = 0.0, t1 = 0.0;
    std::string label;
    PieceKind kind = PieceKind::Other;

    Vec<N> point(double t) const {
        return center + radius * (std::cos(t) * u + std::sin(t) * v);
    }
};

/// Elliptical arc centered at the origin: point(t) = cos t * u + sin t * v,
/// t in [t0, t1]. u, v need not be orthogonal.
template <int N>
struct EllipseArcPiece {
    Vec<N> u, v;
    double t0 = 0.0, t1 = 0.0;
    std::string label;
    PieceKind kind = PieceKind::ShadowEdge;

    Vec<N> point(double t) const { return std::cos(t) * u + std::sin(t) * v; }
};

/// Cone-clipped piece of a 2-sphere living in a 3-dimensional linear
/// subspace of R^N. The sphere center and all cone generators must lie in
/// the carrier subspace spanned by the orthonormal basis b0, b1, b2.
template <int N>
struct SpherePatchPiece {
    Vec<N> center;
    double radius = 0.0;
    Vec<N> b0, b1, b2;                   // orthonormal carrier basis
    std::array<Vec<N>, 3> cone;          // cone generators
    std::array<std::array<double, 3>, 3> cone_inv{};  // carrier coords -> cone coords
    std::array<ArcPiece<N>, 3> boundary; // arcs where one cone coordinate vanishes
    std::array<Vec<N>, 3> corners;       // patch corner points
    std::string label;
    PieceKind kind = PieceKind::PatchInterior;

    Vec<3> carrier_coords(const Vec<N>& q) const {
        return Vec<3>{dot(q, b0), dot(q, b1), dot(q, b2)};
    }
    Vec<N> from_carrier(const Vec<3>& w) const { return w[0] * b0 + w[1] * b1 + w[2] * b2; }
    Vec<N> project_carrier(const Vec<N>& q) const { return from_carrier(carrier_coords(q)); }

    /// Cone coordinates of a carrier point.
    Vec<3> cone_coords(const Vec<N>& q) const {
        Vec<3> w = carrier_coords(q);
        Vec<3> lam{};
        for (int i = 0; i < 3; ++i) {
            double s = 0.0;
            for (int j = 0; j < 3; ++j) s += cone_inv[i][j] * w[j];
            lam[i] = s;
        }
        return lam;
    }
    bool cone_contains_carrier(const Vec<N>& q, double tol = 1e-12) const {
        Vec<3> lam = cone_coords(q);
        return lam[0] >= -tol && lam[1] >= -tol && lam[2] >= -tol;
    }
};

template <int N>
using GenPiece = std::variant<PointPiece<N>, ArcPiece<N>, EllipseArcPiece<N>, SpherePatchPiece<N>>;

// ---------------------------------------------------------------------------
// Angle helpers
// ---------------------------------------------------------------------------

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Map an angle into [t0, t0 + 2*pi); returns true if the representative
/// falls inside [t0, t1].
inline bool angle_in_range(double t, double t0, double t1, double& rep) {
    double shifted = std::fmod(t - t0, kTwoPi);
    if (shifted < 0.0) shifted += kTwoPi;
    rep = t0 + shifted;
    return rep <= t1 + 1e-15;
}

// ---------------------------------------------------------------------------
// Point piece queries
// ---------------------------------------------------------------------------

template <int N>
inline ExtremeResult<N> farthest_from(const PointPiece<N>& g, const Vec<N>& x) {
    return {g.p, dist(x, g.p), false};
}
template <int N>
inline ExtremeResult<N> nearest_to(const PointPiece<N>& g, const Vec<N>& x) {
    return {g.p, dist(x, g.p), false};
}
template <int N>
inline ExtremeResult<N> linear_max(const PointPiece<N>& g, const Vec<N>& u) {
    return {g.p, dot(u, g.p), false};
}

// ---------------------------------------------------------------------------
// Circular arc queries
// ---------------------------------------------------------------------------

namespace detail {

template <int N>
inline ExtremeResult<N> arc_angle_extreme(const ArcPiece<N>& g, const Vec<N>& x,
                                          double w1, double w2, bool want_max) {
    // Distance^2(t) = |x - center|^2 + r^2 - 2 r (w1 cos t + w2 sin t).
    ExtremeResult<N> out;
    double mag = std::hypot(w1, w2);
    if (mag < 1e-15) {
        out.point = g.point(g.t0);
        out.value = dist(x, out.point);
        out.degenerate = true;
        return out;
    }
    double t_star = want_max ? std::atan2(-w2, -w1) : std::atan2(w2, w1);
    double cands[3];
    int nc = 0;
    double rep;
    if (angle_in_range(t_star, g.t0, g.t1, rep)) cands[nc++] = rep;
    cands[nc++] = g.t0;
    cands[nc++] = g.t1;
    double best_d2 = want_max ? -1.0 : 1e300;
    for (int i = 0; i < nc; ++i) {
        Vec<N> p = g.point(cands[i]);
        double d2 = dist2(x, p);
        if (want_max ? (d2 > best_d2) : (d2 < best_d2)) {
            best_d2 = d2;
            out.point = p;
        }
    }
    out.value = std::sqrt(best_d2);
    return out;
}

}  // namespace detail

template <int N>
inline ExtremeResult<N> farthest_from(const ArcPiece<N>& g, const Vec<N>& x) {
    Vec<N> rel = x - g.center;
    return detail::arc_angle_extreme(g, x, dot(rel, g.u), dot(rel, g.v), true);
}
template <int N>
inline ExtremeResult<N> nearest_to(const ArcPiece<N>& g, const Vec<N>& x) {
    Vec<N> rel = x - g.center;
    return detail::arc_angle_extreme(g, x, dot(rel, g.u), dot(rel, g.v), false);
}
template <int N>
inline ExtremeResult<N> linear_max(const ArcPiece<N>& g, const Vec<N>& u) {
    double s1 = dot(u, g.u), s2 = dot(u, g.v);
    ExtremeResult<N> out;
    double mag = std::hypot(s1, s2);
    if (mag < 1e-15) {
        out.point = g.point(g.t0);
        out.value = dot(u, out.point);
        out.degenerate = true;
        return out;
    }
    double t_star = std::atan2(s2, s1);
    double rep;
    double best = -1e300;
    double cands[3];
    int nc = 0;
    if (angle_in_range(t_star, g.t0, g.t1, rep)) cands[nc++] = rep;
    cands[nc++] = g.t0;
    cands[nc++] = g.t1;
    for (int i = 0; i < nc; ++i) {
        Vec<N> p = g.point(cands[i]);
        double v = dot(u, p);
        if (v > best) {
            best = v;
            out.point = p;
        }
    }
    out.value = best;
    return out;
}

// ---------------------------------------------------------------------------
// Elliptical arc queries (1D trig optimization, 64 seeds + safeguarded refine)
// ---------------------------------------------------------------------------

namespace detail {

/// Maximize (sign) * f(t) where f(t) = |x - (cos t u + sin t v)|^2 on [t0,t1].
template <int N>
inline ExtremeResult<N> ellipse_extreme(const EllipseArcPiece<N>& g, const Vec<N>& x,
                                        bool want_max) {
    const double a = dot(x, g.u), b = dot(x, g.v);
    const double uu = norm2(g.u), vv = norm2(g.v), uv = dot(g.u, g.v);
    const double xx = norm2(x);
    // f(t) = xx + cos^2 uu + sin^2 vv + sin(2t) uv - 2a cos t - 2b sin t
    auto f = [&](double t) {
        double ct = std::cos(t), st = std::sin(t);
        return xx + ct * ct * uu + st * st * vv + 2.0 * st * ct * uv - 2.0 * a * ct -
               2.0 * b * st;
    };
    // f'(t) = sin(2t)(vv - uu) + 2 cos(2t) uv + 2 a sin t - 2 b cos t
    auto fp = [&](double t) {
        return std::sin(2.0 * t) * (vv - uu) + 2.0 * std::cos(2.0 * t) * uv +
               2.0 * a * std::sin(t) - 2.0 * b * std::cos(t);
    };

    constexpr int kSeeds = 64;
    const double span = g.t1 - g.t0;
    double best_t = g.t0;
    double best_f = f(g.t0);
    auto consider = [&](double t) {
        double ft = f(t);
        if (want_max ? (ft > best_f) : (ft < best_f)) {
            best_f = ft;
            best_t = t;
        }
    };
    consider(g.t1);

    double prev_t = g.t0;
    double prev_fp = fp(prev_t);
    for (int i = 1; i <= kSeeds; ++i) {
        double t = g.t0 + span * static_cast<double>(i) / kSeeds;
        double d = fp(t);
        consider(t);
        if ((prev_fp <= 0.0 && d >= 0.0) || (prev_fp >= 0.0 && d <= 0.0)) {
            // Bracketed root of f': bisect, then evaluate.
            double lo = prev_t, hi = t, flo = prev_fp;
            for (int k = 0; k < 60; ++k) {
                double mid = 0.5 * (lo + hi);
                double fm = fp(mid);
                if ((flo <= 0.0 && fm <= 0.0) || (flo >= 0.0 && fm >= 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
                if (hi - lo < 1e-13) break;
            }
            consider(0.5 * (lo + hi));
        }
        prev_t = t;
        prev_fp = d;
    }

    ExtremeResult<N> out;
    out.point = g.point(best_t);
    out.value = std::sqrt(std::max(0.0, best_f));
    return out;
}

}  // namespace detail

template <int N>
inline ExtremeResult<N> farthest_from(const EllipseArcPiece<N>& g, const Vec<N>& x) {
    return detail::ellipse_extreme(g, x, true);
}
template <int N>
inline ExtremeResult<N> nearest_to(const EllipseArcPiece<N>& g, const Vec<N>& x) {
    return detail::ellipse_extreme(g, x, false);
}
template <int N>
inline ExtremeResult<N> linear_max(const EllipseArcPiece<N>& g, const Vec<N>& u) {
    // u . gamma(t) = s1 cos t + s2 sin t: single interior critical angle.
    double s1 = dot(u, g.u), s2 = dot(u, g.v);
    ExtremeResult<N> out;
    double t_star = std::atan2(s2, s1);
    double rep;
    double best = -1e300;
    double cands[3];
    int nc = 0;
    if (angle_in_range(t_star, g.t0, g.t1, rep)) cands[nc++] = rep;
    cands[nc++] = g.t0;
    cands[nc++] = g.t1;
    for (int i = 0; i < nc; ++i) {
        Vec<N> p = g.point(cands[i]);
        double v = dot(u, p);
        if (v > best) {
            best = v;
            out.point = p;
        }
    }
    out.value = best;
    if (std::hypot(s1, s2) < 1e-15) out.degenerate = true;
    return out;
}

// ---------------------------------------------------------------------------
// Spherical patch queries
// ---------------------------------------------------------------------------

template <int N>
inline ExtremeResult<N> farthest_from(const SpherePatchPiece<N>& g, const Vec<N>& x) {
    Vec<N> x_h = g.project_carrier(x);
    Vec<N> dir = x_h - g.center;
    double dn = norm(dir);
    if (dn > 1e-12) {
        Vec<N> q = g.center - (g.radius / dn) * dir;
        if (g.cone_contains_carrier(q, 1e-12)) return {q, dist(x, q), false};
    }
    // Constrained maximum lies on the boundary (or everything is equidistant).
    ExtremeResult<N> best;
    best.value = -1.0;
    for (const auto& arc : g.boundary) {
        ExtremeResult<N> r = farthest_from(arc, x);
        if (r.value > best.value) best = r;
    }
    for (const auto& c : g.corners) {
        double d = dist(x, c);
        if (d > best.value) best = {c, d, false};
    }
    best.degenerate = dn <= 1e-12;
    return best;
}

template <int N>
inline ExtremeResult<N> nearest_to(const SpherePatchPiece<N>& g, const Vec<N>& x) {
    Vec<N> x_h = g.project_carrier(x);
    Vec<N> dir = x_h - g.center;
    double dn = norm(dir);
    if (dn > 1e-12) {
        Vec<N> q = g.center + (g.radius / dn) * dir;
        if (g.cone_contains_carrier(q, 1e-12)) return {q, dist(x, q), false};
    }
    ExtremeResult<N> best;
    best.value = 1e300;
    for (const auto& arc : g.boundary) {
        ExtremeResult<N> r = nearest_to(arc, x);
        if (r.value < best.value) best = r;
    }
    for (const auto& c : g.corners) {
        double d = dist(x, c);
        if (d < best.value) best = {c, d, false};
    }
    best.degenerate = dn <= 1e-12;
    return best;
}

template <int N>
inline ExtremeResult<N> linear_max(const SpherePatchPiece<N>& g, const Vec<N>& u) {
    Vec<N> u_h = g.project_carrier(u);
    double un = norm(u_h);
    if (un > 1e-14) {
        Vec<N> q = g.center + (g.radius / un) * u_h;
        if (g.cone_contains_carrier(q, 1e-12)) return {q, dot(u, q), false};
    }
    ExtremeResult<N> best;
    best.value = -1e300;
    for (const auto& arc : g.boundary) {
        ExtremeResult<N> r = linear_max(arc, u);
        if (r.value > best.value) best = r;
    }
    for (const auto& c : g.corners) {
        double v = dot(u, c);
        if (v > best.value) best = {c, v, false};
    }
    best.degenerate = un <= 1e-14;
    return best;
}

// ---------------------------------------------------------------------------
// Variant dispatch
// ---------------------------------------------------------------------------

template <int N>
inline ExtremeResult<N> farthest_from(const GenPiece<N>& g, const Vec<N>& x) {
    return std::visit([&](const auto& p) { return farthest_from(p, x); }, g);
}
template <int N>
inline ExtremeResult<N> nearest_to(const GenPiece<N>& g, const Vec<N>& x) {
    return std::visit([&](const auto& p) { return nearest_to(p, x); }, g);
}
template <int N>
inline ExtremeResult<N> linear_max(const GenPiece<N>& g, const Vec<N>& u) {
    return std::visit([&](const auto& p) { return linear_max(p, u); }, g);
}
template <int N>
inline ExtremeResult<N> linear_min(const GenPiece<N>& g, const Vec<N>& u) {
    ExtremeResult<N> r = linear_max(g, -u);
    r.value = -r.value;
    return r;
}

template <int N>
inline const std::string& piece_label(const GenPiece<N>& g) {
    return std::visit([](const auto& p) -> const std::string& { return p.label; }, g);
}
template <int N>
inline PieceKind piece_kind(const GenPiece<N>& g) {
    return std::visit([](const auto& p) { return p.kind; }, g);
}

/// Candidate extremal points of a piece relative to a query point: the
/// farthest point plus the piece's corner/endpoint skeleton. Used to gather
/// active generator sets.
template <int N>
inline std::vector<Vec<N>> extreme_candidates(const GenPiece<N>& g, const Vec<N>& x) {
    std::vector<Vec<N>> out;
    out.push_back(farthest_from(g, x).point);
    if (const auto* p = std::get_if<PointPiece<N>>(&g)) {
        out.push_back(p->p);
    } else if (const auto* a = std::get_if<ArcPiece<N>>(&g)) {
        out.push_back(a->point(a->t0));
        out.push_back(a->point(a->t1));
    } else if (const auto* e = std::get_if<EllipseArcPiece<N>>(&g)) {
        out.push_back(e->point(e->t0));
        out.push_back(e->point(e->t1));
    } else if (const auto* s = std::get_if<SpherePatchPiece<N>>(&g)) {
        for (const auto& arc : s->boundary) out.push_back(farthest_from(arc, x).point);
        for (const auto& c : s->corners) out.push_back(c);
    }
    return out;
}

}  // namespace widthlab
