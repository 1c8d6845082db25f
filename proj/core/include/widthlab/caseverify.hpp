#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "widthlab/ballbody.hpp"
#include "widthlab/frame.hpp"
#include "widthlab/patches.hpp"

namespace widthlab {

/// Convex region cut out by closed half-spaces.
struct PolyRegion {
    std::vector<Hyperplane> half_spaces;
    std::string provenance;

    bool contains(const Vec4& x, double tol = 1e-10) const {
        for (const auto& h : half_spaces)
            if (h.signed_excess(x) < -tol) return false;
        return true;
    }
    /// Largest constraint violation (0 when inside).
    double max_violation(const Vec4& x) const {
        double v = 0.0;
        for (const auto& h : half_spaces) v = std::max(v, -h.signed_excess(x));
        return v;
    }
};

enum class GenClassKind { VertexBase, ArcApex, ArcBase, PatchInterior };

struct GenClass {
    GenClassKind kind;
    VertexId a = VertexId::A;
    VertexId b = VertexId::B;  // ignored for VertexBase / ArcApex
};

/// The polyhedral region that must contain any boundary point at unit
/// distance from a generator of the given class.
PolyRegion region_for_generator(const SimplexFrame& f, const GenClass& cls);

/// Representative two-generator configurations, by id "1a".."4b".
const std::vector<std::string>& configuration_ids();
PolyRegion config_region(const SimplexFrame& f, const std::string& id);

struct CaseReport {
    std::string configuration;
    bool lp_feasible = false;          // outer linear relaxation nonempty
    bool empty_certified = false;      // region intersect body proven empty
    std::string empty_reason;
    long budget = 0;
    long samples_examined = 0;
    long hits = 0;
    double max_m0_distance = 0.0;      // over hits
    double max_margin_found = -1e300;  // concave ascent optimum over region
    std::uint64_t seed = 0;
    std::string verdict;               // PASS | FAIL | INCONCLUSIVE
};

struct CaseOptions {
    double m0_tol = 1e-6;
    double boundary_band = 1e-8;
    int ascent_starts = 48;
    int ascent_iters = 600;
};

/// Two-phase verification of one configuration: linear feasibility of the
/// region against an exact outer polyhedral bound of the body (support
/// cuts), then rejection sampling plus concave maximization of the
/// membership margin over the region. The margin is concave, so a negative
/// multistart optimum certifies an empty intersection.
CaseReport verify_configuration(const GeneratorSet& gs, const BallBody<4>& body,
                                const PolyRegion& region, const std::string& id, long budget,
                                std::uint64_t seed, const CaseOptions& opt = {});

enum class BisectorPair { AE, AB };

struct BisectorReport {
    std::string pair;
    int starts = 0;
    int solutions = 0;
    double max_deviation = 0.0;  // to the expected solution set
    bool pass = false;
};

/// Solves for body points equidistant (at distance 1) from the two named
/// vertices and checks the solution set against the expected one:
/// {B, C, D} for the pair (A, E); the opposite face patch for (A, B).
BisectorReport bisector_case_check(const GeneratorSet& gs, const BallBody<4>& body,
                                   BisectorPair pair, int starts = 256,
                                   std::uint64_t seed = 12345);

struct UniquenessReport {
    int requested = 0;
    int scanned = 0;
    int skipped = 0;  // samples within the exclusion band around the generators
    int failures = 0; // samples with cluster count != 1
    int max_clusters = 0;
    double max_dist_error = 0.0;      // max ||P - Q| - 1| over scanned samples
    double max_endpoint_m0_dist = 0.0;
    double max_normal_deviation = 0.0;
    bool pass = false;
};

/// Scans boundary points away from the generating set and verifies each has
/// exactly one unit-distance generator cluster; the induced diametral
/// endpoint is that generator point.
UniquenessReport uniqueness_scan(const BallBody<4>& body, const GeneratorSet& gs, int n,
                                 std::uint64_t seed, double exclusion = 0.01,
                                 double cluster_radius = 1e-6);

// --- shared helpers (also used by the report module) ----------------------

/// Outer support cuts of the body: u.x <= h(u) for a symmetric direction
/// family, as oriented half-spaces.
std::vector<Hyperplane> support_cuts(const BallBody<4>& body);

/// Axis-aligned bounding box from exact support values.
void support_box(const BallBody<4>& body, Vec4& lo, Vec4& hi, double pad = 1e-6);

/// All vertices of the polytope {half-spaces} (which must be bounded);
/// empty result certifies infeasibility.
std::vector<Vec4> polytope_vertices(const std::vector<Hyperplane>& hs, double feas_tol = 1e-8);

}  // namespace widthlab
