#pragma once

// Seeded Monte Carlo estimate of the slice density, a sanity check on the
// exact oracle.
//
// Generator: 64-bit LCG, state <- state * 6364136223846793005 + 1442695040888963407
// (mod 2^64); a uniform double in [0,1) is (state >> 11) * 2^-53 taken after
// each step. Worker w of W draws from its own stream seeded with
// splitmix64(seed ^ splitmix64(w)) and handles samples / W draws (the first
// samples % W workers take one extra).

#include "dhlab/polytope.hpp"

#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

namespace dhlab {

struct DensityEstimate {
    double mean = 0;
    double standard_error = 0; // sample stddev / sqrt(samples)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

class Lcg {
public:
    static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
    static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

    explicit Lcg(std::uint64_t seed) : state_(seed) {}

    double uniform() {
        state_ = state_ * kMultiplier + kIncrement;
        return static_cast<double>(state_ >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

namespace detail {

struct Halfspace {
    std::vector<double> a;
    double b; // a . x <= b
};

/// Facet inequalities of every simplex of the triangulation; a point lies in
/// the polytope iff it lies in some simplex.
inline std::vector<std::vector<Halfspace>> simplex_halfspaces(const std::vector<Simplex>& simplices) {
    std::vector<std::vector<Halfspace>> out;
    for (const auto& s : simplices) {
        const std::size_t l = s.dimension();
        std::vector<Halfspace> hs;
        for (std::size_t skip = 0; skip <= l; ++skip) {
            std::vector<const Point*> facet;
            for (std::size_t k = 0; k <= l; ++k)
                if (k != skip) facet.push_back(&s.vertices[k]);
            // normal via cofactors: a_j = orientation-determinant coefficient of x_j
            Vector a(l);
            for (std::size_t j = 0; j < l; ++j) {
                Point e(l);
                e[j] = 1;
                Point plus = *facet.front();
                for (std::size_t k = 0; k < l; ++k) plus[k] += e[k];
                Matrix m;
                for (std::size_t i = 1; i < facet.size(); ++i) {
                    Vector row(l);
                    for (std::size_t k = 0; k < l; ++k) row[k] = (*facet[i])[k] - (*facet.front())[k];
                    m.push_back(std::move(row));
                }
                m.push_back(e);
                a[j] = determinant(std::move(m));
            }
            Rational b{0};
            for (std::size_t k = 0; k < l; ++k) b += a[k] * (*facet.front())[k];
            Rational at_opposite{0};
            for (std::size_t k = 0; k < l; ++k) at_opposite += a[k] * s.vertices[skip][k];
            if (at_opposite > b) {
                for (auto& x : a) x = -x;
                b = -b;
            }
            Halfspace h;
            for (const auto& x : a) h.a.push_back(to_double(x));
            h.b = to_double(b);
            hs.push_back(std::move(h));
        }
        out.push_back(std::move(hs));
    }
    return out;
}

} // namespace detail

/// Estimates (V(t + d) - V(t - d)) / (2d), d = (max height - min height) / 1000,
/// by uniform rejection sampling in the bounding box of the vertices.
inline DensityEstimate mc_density(const PolytopeSpec& p, const RationalVector& xi, const Rational& t, std::uint64_t samples,
                                  std::uint64_t seed, unsigned workers = 1) {
    detail::check_direction(p, xi);
    if (samples < 1000) throw InputError("mc_density: need at least 1000 samples");
    if (workers == 0) workers = 1;
    if (workers > samples) workers = static_cast<unsigned>(samples);
    const auto simplices = triangulate(p);
    const std::size_t l = dimension(p);

    std::vector<double> lo(l, 0);
    std::vector<double> hi(l, 0);
    Rational hmin;
    Rational hmax;
    bool first = true;
    for (const auto& s : simplices)
        for (const auto& v : s.vertices) {
            const Rational h = detail::height(v, xi);
            for (std::size_t k = 0; k < l; ++k) {
                const double x = to_double(v[k]);
                lo[k] = first ? x : std::min(lo[k], x);
                hi[k] = first ? x : std::max(hi[k], x);
            }
            hmin = first ? h : std::min(hmin, h);
            hmax = first ? h : std::max(hmax, h);
            first = false;
        }
    const Rational delta = (hmax - hmin) / 1000;
    const double band_lo = to_double(t - delta);
    const double band_hi = to_double(t + delta);
    double box_volume = 1;
    for (std::size_t k = 0; k < l; ++k) box_volume *= hi[k] - lo[k];
    std::vector<double> dir;
    for (const auto& x : xi) dir.push_back(to_double(x));
    const auto cells = detail::simplex_halfspaces(simplices);

    auto inside = [&](const std::vector<double>& x) {
        for (const auto& cell : cells) {
            bool ok = true;
            for (const auto& h : cell) {
                double s = 0;
                for (std::size_t k = 0; k < l; ++k) s += h.a[k] * x[k];
                if (s > h.b) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
        return false;
    };

    std::vector<std::uint64_t> hits(workers, 0);
    auto work = [&](unsigned w) {
        const std::uint64_t count = samples / workers + (w < samples % workers ? 1 : 0);
        Lcg rng(splitmix64(seed ^ splitmix64(w)));
        std::vector<double> x(l);
        std::uint64_t h = 0;
        for (std::uint64_t i = 0; i < count; ++i) {
            double height = 0;
            for (std::size_t k = 0; k < l; ++k) {
                x[k] = lo[k] + (hi[k] - lo[k]) * rng.uniform();
                height += dir[k] * x[k];
            }
            if (height >= band_lo && height < band_hi && inside(x)) ++h;
        }
        hits[w] = h;
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    const double n = static_cast<double>(samples);
    const double frac = static_cast<double>(total) / n;
    const double scale = box_volume / (2 * to_double(delta));
    DensityEstimate est;
    est.mean = scale * frac;
    // indicator sample variance with the n-1 denominator
    const double var = n > 1 ? frac * (1 - frac) * n / (n - 1) : 0;
    est.standard_error = scale * std::sqrt(var / n);
    est.samples = samples;
    est.seed = seed;
    est.workers = workers;
    return est;
}

} // namespace dhlab
