#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "widthlab/ballbody.hpp"

namespace widthlab {

template <int N>
struct VolumeEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n = 0;
    long hits = 0;
    std::uint64_t seed = 0;
    Vec<N> box_lo{}, box_hi{};
};

/// Chunked index-parallel loop; the work function receives [begin, end).
void parallel_chunks(long n, int threads, const std::function<void(int, long, long)>& work);

/// Hit-fraction Monte Carlo volume with a counter-based stream: the result
/// depends only on (seed, n, box), never on the thread count.
template <int N, class Inside>
VolumeEstimate<N> mc_volume(Inside&& inside, const Vec<N>& lo, const Vec<N>& hi, long n,
                            std::uint64_t seed, int threads = 0) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
    threads = static_cast<int>(std::min<long>(threads, std::max<long>(1, n / 1024 + 1)));

    std::vector<long> counts(static_cast<std::size_t>(threads), 0);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            long begin = n * t / threads, end = n * (t + 1) / threads;
            long c = 0;
            for (long i = begin; i < end; ++i) {
                Vec<N> x = rng::box_point<N>(seed, 1, static_cast<std::uint64_t>(i), lo, hi);
                if (inside(x)) ++c;
            }
            counts[static_cast<std::size_t>(t)] = c;
        });
    }
    for (auto& th : pool) th.join();

    long hits = 0;
    for (long c : counts) hits += c;

    double box_vol = 1.0;
    for (int i = 0; i < N; ++i) box_vol *= (hi[i] - lo[i]);
    double p = n > 0 ? static_cast<double>(hits) / static_cast<double>(n) : 0.0;

    VolumeEstimate<N> est;
    est.mean = box_vol * p;
    est.std_error = box_vol * std::sqrt(std::max(0.0, p * (1.0 - p) / std::max<long>(1, n)));
    est.n = n;
    est.hits = hits;
    est.seed = seed;
    est.box_lo = lo;
    est.box_hi = hi;
    return est;
}

/// Asserts the box contains the body via exact support probes on the axes,
/// then runs the Monte Carlo estimate on the membership oracle.
template <int N>
VolumeEstimate<N> mc_volume_body(const BallBody<N>& body, const Vec<N>& lo, const Vec<N>& hi,
                                 long n, std::uint64_t seed, int threads = 0) {
    for (int i = 0; i < N; ++i) {
        Vec<N> u{};
        u[i] = 1.0;
        if (support(body, u).value > hi[i] + 1e-9)
            throw std::invalid_argument("mc_volume: box does not contain the body");
        u[i] = -1.0;
        if (-support(body, u).value < lo[i] - 1e-9)
            throw std::invalid_argument("mc_volume: box does not contain the body");
    }
    return mc_volume<N>([&](const Vec<N>& x) { return margin(body, x) >= 0.0; }, lo, hi, n,
                        seed, threads);
}

struct WidthStats {
    double min_width = 0.0, max_width = 0.0, mean_width = 0.0;
    double worst_deviation = 0.0;  // max |width - 1|
    Vec4 worst_direction4{};
    Vec3 worst_direction3{};
    int failures = 0;  // non-converged support evaluations
    int directions = 0;
    double max_precision = 0.0;  // worst certified support precision
};

template <int N>
WidthStats width_stats(const BallBody<N>& body, int n, std::uint64_t seed,
                       const SupportOptions& opt = {}, int threads = 0) {
    WidthStats st;
    st.directions = n;
    std::vector<double> widths(static_cast<std::size_t>(n));
    std::vector<double> precisions(static_cast<std::size_t>(n));
    std::vector<int> fails(static_cast<std::size_t>(n), 0);
    std::vector<Vec<N>> dirs(static_cast<std::size_t>(n));

    parallel_chunks(n, threads, [&](int, long begin, long end) {
        for (long i = begin; i < end; ++i) {
            Vec<N> u = rng::unit_dir<N>(seed, 2, static_cast<std::uint64_t>(i));
            dirs[static_cast<std::size_t>(i)] = u;
            SupportResult<N> a = support(body, u, opt);
            SupportResult<N> b = support(body, -u, opt);
            widths[static_cast<std::size_t>(i)] = a.value + b.value;
            precisions[static_cast<std::size_t>(i)] = a.precision + b.precision;
            fails[static_cast<std::size_t>(i)] = (!a.converged || !b.converged) ? 1 : 0;
        }
    });

    st.min_width = 1e300;
    st.max_width = -1e300;
    double sum = 0.0;
    for (long i = 0; i < n; ++i) {
        double w = widths[static_cast<std::size_t>(i)];
        sum += w;
        st.min_width = std::min(st.min_width, w);
        st.max_width = std::max(st.max_width, w);
        st.max_precision = std::max(st.max_precision, precisions[static_cast<std::size_t>(i)]);
        st.failures += fails[static_cast<std::size_t>(i)];
        double dev = std::abs(w - 1.0);
        if (dev >= st.worst_deviation) {
            st.worst_deviation = dev;
            if constexpr (N == 4) st.worst_direction4 = dirs[static_cast<std::size_t>(i)];
            if constexpr (N == 3) st.worst_direction3 = dirs[static_cast<std::size_t>(i)];
        }
    }
    st.mean_width = n > 0 ? sum / n : 0.0;
    return st;
}

struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<double> margins;       // membership residual per vertex
    std::vector<std::uint8_t> flags;   // near-generator tags
};

/// Boundary mesh by casting icosphere rays from the interior witness.
Mesh extract_mesh(const BallBody<3>& body, int subdiv);

/// Flags mesh vertices within tol of any generator piece of the body.
void flag_near_generators(Mesh& mesh, const BallBody<3>& body, double tol = 1e-3);

void write_obj(const Mesh& mesh, const std::string& path);
void write_ply(const Mesh& mesh, const std::string& path);  // binary little-endian

}  // namespace widthlab
