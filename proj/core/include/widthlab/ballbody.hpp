#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "widthlab/mathutil.hpp"
#include "widthlab/pieces.hpp"
#include "widthlab/rng.hpp"

namespace widthlab {

/// A body defined as the intersection of balls of one radius centered on a
/// list of generator pieces. Membership is exact: the farthest-point query
/// of every piece is closed form (or a certified 1D solve), so no generator
/// discretization enters the oracle.
template <int N>
struct BallBody {
    std::vector<GenPiece<N>> gens;
    double radius = 1.0;
    Vec<N> witness{};
    std::string name;
};

template <int N>
struct FarthestGenerator {
    int piece = -1;
    ExtremeResult<N> ext{};
};

template <int N>
inline FarthestGenerator<N> farthest_generator(const BallBody<N>& body, const Vec<N>& x) {
    FarthestGenerator<N> best;
    best.ext.value = -1.0;
    for (std::size_t i = 0; i < body.gens.size(); ++i) {
        ExtremeResult<N> r = farthest_from(body.gens[i], x);
        if (r.value > best.ext.value) {
            best.piece = static_cast<int>(i);
            best.ext = r;
        }
    }
    return best;
}

/// Signed margin: positive inside, zero on the boundary.
template <int N>
inline double margin(const BallBody<N>& body, const Vec<N>& x) {
    return body.radius - farthest_generator(body, x).ext.value;
}

template <int N>
inline bool membership(const BallBody<N>& body, const Vec<N>& x, double tol = 1e-9) {
    return margin(body, x) >= -tol;
}

/// Generator points at distance >= radius - band from x, clustered.
template <int N>
inline std::vector<Vec<N>> active_generator_points(const BallBody<N>& body, const Vec<N>& x,
                                                   double band = 1e-9,
                                                   double cluster_radius = 1e-6) {
    std::vector<Vec<N>> pts;
    for (const auto& g : body.gens) {
        for (const auto& c : extreme_candidates(g, x))
            if (dist(x, c) >= body.radius - band) pts.push_back(c);
    }
    return cluster_points(pts, cluster_radius);
}

// ---------------------------------------------------------------------------
// Projection onto the body (Dykstra with on-demand ball constraints)
// ---------------------------------------------------------------------------

template <int N>
struct ProjectionResult {
    Vec<N> point{};
    double infeasibility = 0.0;  // max constraint violation at the result
    bool converged = false;
};

template <int N>
inline ProjectionResult<N> project_onto(const BallBody<N>& body, const Vec<N>& z,
                                        double tol = 1e-9, int max_cycles = 4000) {
    ProjectionResult<N> out;
    FarthestGenerator<N> fg = farthest_generator(body, z);
    if (fg.ext.value <= body.radius + tol) {
        out.point = z;
        out.infeasibility = std::max(0.0, fg.ext.value - body.radius);
        out.converged = true;
        return out;
    }

    std::vector<Vec<N>> centers{fg.ext.point};
    std::vector<Vec<N>> increments(1, Vec<N>{});
    Vec<N> x = z;
    int cycles = 0;
    const double r = body.radius;

    while (cycles < max_cycles) {
        double max_step = 0.0;
        for (std::size_t i = 0; i < centers.size(); ++i) {
            Vec<N> y = x + increments[i];
            Vec<N> rel = y - centers[i];
            double d = norm(rel);
            Vec<N> xp = (d <= r) ? y : centers[i] + (r / d) * rel;
            increments[i] = y - xp;
            max_step = std::max(max_step, dist(x, xp));
            x = xp;
        }
        ++cycles;
        if (max_step < tol * 0.1 || cycles % 8 == 0) {
            FarthestGenerator<N> f = farthest_generator(body, x);
            double viol = f.ext.value - r;
            if (viol <= tol) {
                if (max_step < tol) {
                    out.point = x;
                    out.infeasibility = std::max(0.0, viol);
                    out.converged = true;
                    return out;
                }
            } else {
                // A constraint outside the working set is violated: add its
                // ball and restart the correction terms.
                bool known = false;
                for (const auto& c : centers)
                    if (dist(c, f.ext.point) < 1e-12) known = true;
                if (!known && centers.size() < 32) {
                    centers.push_back(f.ext.point);
                    increments.assign(centers.size(), Vec<N>{});
                    x = z;
                }
            }
        }
    }
    out.point = x;
    out.infeasibility = std::max(0.0, farthest_generator(body, x).ext.value - r);
    out.converged = false;
    return out;
}

// ---------------------------------------------------------------------------
// Support function
// ---------------------------------------------------------------------------

template <int N>
struct SupportResult {
    Vec<N> direction{};
    double value = 0.0;
    Vec<N> argmax{};
    double precision = 0.0;  // certified bound on |value - h(u)|
    bool converged = false;
    std::string method;
};

struct SupportOptions {
    double tol = 1e-6;
    int iter_cap = 10000;
    double membership_band = 1e-9;
};

template <int N>
inline Vec<N> ray_boundary(const BallBody<N>& body, const Vec<N>& origin, const Vec<N>& dir,
                           double tol = 1e-10);

/// h(u) = max { u.x : x in body }.
///
/// Exact certificate paths first: if the minimizing generator point q of
/// u.g admits q + r u inside the body, that point is the support point and
/// h = u.q + r (it meets the ray-shooting upper bound min_g u.g + r).
/// Otherwise the support point is a non-smooth boundary point lying on the
/// generating set itself; the linear maximum over the generators is then
/// certified through its active cone. A Dykstra-projected ascent remains as
/// the fallback for bodies whose non-smooth boundary is not generated
/// (e.g. plain Reuleaux bodies built from vertices only).
template <int N>
inline SupportResult<N> support(const BallBody<N>& body, const Vec<N>& u,
                                const SupportOptions& opt = {}) {
    if (std::abs(norm(u) - 1.0) > 1e-9)
        throw std::invalid_argument("support: direction must be unit length");

    SupportResult<N> out;
    out.direction = u;

    // Ray-shooting upper bound h(u) <= min_g u.g + r.
    double min_lin = 1e300, max_lin = -1e300;
    Vec<N> q_min{}, p_max{};
    for (const auto& g : body.gens) {
        ExtremeResult<N> lo = linear_min(g, u);
        ExtremeResult<N> hi = linear_max(g, u);
        if (lo.value < min_lin) {
            min_lin = lo.value;
            q_min = lo.point;
        }
        if (hi.value > max_lin) {
            max_lin = hi.value;
            p_max = hi.point;
        }
    }
    const double upper = min_lin + body.radius;

    // Certificate 1: smooth support point q_min + r u.
    Vec<N> cand = q_min + body.radius * u;
    double mg = margin(body, cand);
    if (mg >= -opt.membership_band) {
        out.value = dot(u, cand);
        out.argmax = cand;
        out.precision = std::max(std::abs(mg), 1e-12);
        out.converged = true;
        out.method = "certificate";
        return out;
    }

    // Certificate 2: support point on the generating set, certified by the
    // active normal cone.
    {
        std::vector<Vec<N>> active = active_generator_points(body, p_max, 1e-9);
        std::vector<Vec<N>> dirs;
        for (const auto& a : active)
            if (dist(a, p_max) > 1e-9) dirs.push_back((p_max - a) / body.radius);
        if (!dirs.empty()) {
            double resid = nnls_residual(dirs, u);
            if (resid <= 1e-9) {
                out.value = max_lin;
                out.argmax = p_max;
                out.precision = std::max(resid, 1e-12);
                out.converged = true;
                out.method = "generator-extreme";
                return out;
            }
        }
    }

    // Fallback: projected ascent with Dykstra projections.
    Vec<N> x = p_max;
    if (margin(body, x) < -1e-9) x = body.witness;
    {
        Vec<N> rb = ray_boundary(body, body.witness, u, 1e-9);
        if (dot(u, rb) > dot(u, x)) x = rb;
    }
    double best = dot(u, x);
    Vec<N> best_x = x;
    double step = 0.25 * body.radius;
    int iters = 0;
    while (iters < opt.iter_cap && step > 1e-12) {
        ProjectionResult<N> pr = project_onto(body, x + step * u, opt.membership_band);
        ++iters;
        double v = dot(u, pr.point);
        if (v > best + 1e-15) {
            best = v;
            best_x = pr.point;
            x = pr.point;
        } else {
            step *= 0.5;
        }
    }
    out.value = std::max(best, max_lin);
    out.argmax = best >= max_lin ? best_x : p_max;
    out.precision = std::max(upper - out.value, 1e-12);
    out.converged = out.precision <= opt.tol;
    out.method = "projected-ascent";
    return out;
}

template <int N>
inline double width(const BallBody<N>& body, const Vec<N>& u, const SupportOptions& opt = {}) {
    return support(body, u, opt).value + support(body, -u, opt).value;
}

// ---------------------------------------------------------------------------
// Boundary ray casting
// ---------------------------------------------------------------------------

template <int N>
inline Vec<N> ray_boundary(const BallBody<N>& body, const Vec<N>& origin, const Vec<N>& dir,
                           double tol) {
    if (margin(body, origin) <= 0.0)
        throw std::invalid_argument("ray_boundary: origin must be strictly interior");
    Vec<N> d = normalized(dir);
    double lo = 0.0, hi = body.radius;
    while (margin(body, origin + hi * d) > 0.0) {
        lo = hi;
        hi *= 1.5;
        if (hi > 16.0 * body.radius)
            throw std::runtime_error("ray_boundary: no boundary crossing found");
    }
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double m = margin(body, origin + mid * d);
        if (std::abs(m) <= tol * 0.5) return origin + mid * d;
        (m > 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-15) break;
    }
    return origin + 0.5 * (lo + hi) * d;
}

// ---------------------------------------------------------------------------
// Diameter of the generating set
// ---------------------------------------------------------------------------

template <int N>
struct DiameterResult {
    double dist = 0.0;
    Vec<N> p{}, q{};
    std::vector<std::string> families;   // all maximizer families matched
    std::string classification;          // family of the best pair
    double max_seen = 0.0;               // largest distance over all iterates
};

namespace detail {

template <int N>
inline Vec<N> random_piece_point(const GenPiece<N>& g, std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t counter) {
    if (const auto* p = std::get_if<PointPiece<N>>(&g)) return p->p;
    if (const auto* a = std::get_if<ArcPiece<N>>(&g)) {
        double t = a->t0 + (a->t1 - a->t0) * rng::u01(seed, stream, counter);
        return a->point(t);
    }
    if (const auto* e = std::get_if<EllipseArcPiece<N>>(&g)) {
        double t = e->t0 + (e->t1 - e->t0) * rng::u01(seed, stream, counter);
        return e->point(t);
    }
    const auto* s = std::get_if<SpherePatchPiece<N>>(&g);
    for (std::uint64_t k = 0; k < 64; ++k) {
        double l0 = rng::u01(seed, stream, counter * 256 + 3 * k + 0);
        double l1 = rng::u01(seed, stream, counter * 256 + 3 * k + 1);
        double l2 = rng::u01(seed, stream, counter * 256 + 3 * k + 2);
        Vec<N> q = l0 * s->cone[0] + l1 * s->cone[1] + l2 * s->cone[2];
        Vec<N> rel = q - s->center;
        double n = norm(rel);
        if (n < 1e-9) continue;
        Vec<N> pt = s->center + (s->radius / n) * rel;
        if (s->cone_contains_carrier(pt, 1e-12)) return pt;
    }
    return s->corners[0];
}

}  // namespace detail

/// Classify an extremal pair against the known maximizer families. The
/// classifier reports every family matched within the given band.
template <int N>
inline std::string classify_endpoint(const std::vector<GenPiece<N>>& pieces, const Vec<N>& p,
                                     double band = 1e-6) {
    // Priority: vertex, then arcs, then patch interior.
    for (const auto& g : pieces)
        if (piece_kind(g) == PieceKind::Vertex && nearest_to(g, p).value <= band)
            return "vertex";
    for (const auto& g : pieces) {
        PieceKind k = piece_kind(g);
        if ((k == PieceKind::ApexArc || k == PieceKind::EdgeArc) &&
            nearest_to(g, p).value <= band)
            return "apex-arc";
    }
    for (const auto& g : pieces)
        if (piece_kind(g) == PieceKind::BaseArc && nearest_to(g, p).value <= band)
            return "base-arc";
    for (const auto& g : pieces)
        if (piece_kind(g) == PieceKind::PatchInterior && nearest_to(g, p).value <= band)
            return "patch-interior";
    return "other";
}

template <int N>
inline std::string pair_family(const std::string& a, const std::string& b) {
    bool va = a == "vertex", vb = b == "vertex";
    bool arc_a = a == "apex-arc" || a == "base-arc";
    bool arc_b = b == "apex-arc" || b == "base-arc";
    if (va && vb) return "vertex-arc";  // vertices are arc endpoints
    if ((va && arc_b) || (vb && arc_a)) return "vertex-arc";
    if (a == "base-arc" && b == "base-arc") return "orthogonal-arcs";
    if ((va && b == "patch-interior") || (vb && a == "patch-interior"))
        return "vertex-interior";
    return "other";
}

struct DiameterOptions {
    int starts = 1000;
    std::uint64_t seed = 12345;
    int max_alternations = 80;
    double family_band = 1e-6;
};

/// Multistart alternating farthest-point maximization of |P - Q| over the
/// product of the generator pieces, with restarts seeded at the known
/// maximizer families plus uniform random starts.
template <int N>
inline DiameterResult<N> diameter_of_generators(const std::vector<GenPiece<N>>& pieces,
                                                const DiameterOptions& opt = {}) {
    DiameterResult<N> out;
    if (pieces.empty()) return out;
    const int np = static_cast<int>(pieces.size());

    std::vector<std::pair<Vec<N>, Vec<N>>> best_pairs;

    auto run_start = [&](Vec<N> p, int pi, int qi, std::uint64_t) {
        Vec<N> q = farthest_from(pieces[qi], p).point;
        double d = dist(p, q);
        for (int it = 0; it < opt.max_alternations; ++it) {
            Vec<N> p2 = farthest_from(pieces[pi], q).point;
            Vec<N> q2 = farthest_from(pieces[qi], p2).point;
            double d2 = dist(p2, q2);
            p = p2;
            q = q2;
            if (d2 <= d + 1e-14) {
                d = std::max(d, d2);
                break;
            }
            d = d2;
        }
        out.max_seen = std::max(out.max_seen, d);
        if (d > out.dist + 1e-12) {
            out.dist = d;
            out.p = p;
            out.q = q;
            best_pairs.clear();
        }
        if (d >= out.dist - opt.family_band) best_pairs.emplace_back(p, q);
    };

    // Seeds at the corner/endpoint skeleton of every piece pair.
    for (int i = 0; i < np; ++i)
        for (int j = i; j < np; ++j) {
            for (const auto& c : extreme_candidates(pieces[i], Vec<N>{}))
                run_start(c, i, j, 0);
        }

    // Uniform random starts.
    for (int s = 0; s < opt.starts; ++s) {
        std::uint64_t c = static_cast<std::uint64_t>(s);
        int i = static_cast<int>(rng::bits(opt.seed, 101, c) % static_cast<std::uint64_t>(np));
        int j = static_cast<int>(rng::bits(opt.seed, 102, c) % static_cast<std::uint64_t>(np));
        Vec<N> p = detail::random_piece_point(pieces[i], opt.seed, 103, c);
        run_start(p, i, j, c);
    }

    // Families matched within the band (deduplicated).
    for (const auto& [p, q] : best_pairs) {
        std::string fam = pair_family<N>(classify_endpoint(pieces, p, opt.family_band),
                                         classify_endpoint(pieces, q, opt.family_band));
        if (std::find(out.families.begin(), out.families.end(), fam) == out.families.end())
            out.families.push_back(fam);
    }
    out.classification = pair_family<N>(classify_endpoint(pieces, out.p, opt.family_band),
                                        classify_endpoint(pieces, out.q, opt.family_band));
    return out;
}

}  // namespace widthlab
