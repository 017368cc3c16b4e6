#pragma once

#include <cstdint>
#include <random>

#include "quartic/sector.hpp"

namespace quartic::testing {

inline const Parameters kFixA{1.0, 0.8, 0.2};
inline const Parameters kFixB{1.0, 1.0, 0.25};
inline const Parameters kFixC{1.0, 1.0, 0.5};
inline const Parameters kFixD{1.0, 1.0, -0.5};

struct NamedFixture {
    const char* name;
    Parameters params;
};

inline const NamedFixture kFixtures[] = {{"A", kFixA}, {"B", kFixB}, {"C", kFixC}, {"D", kFixD}};

/// Seeded draws for property tests.
class Generator {
public:
    explicit Generator(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

    JetState jet(double scale = 1.0)
    {
        return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
    }

    /// Parameters in the requested regime, kept away from the degenerate boundary.
    Parameters params(Regime regime)
    {
        const double m = uniform(0.2, 5.0);
        const double w = uniform(0.1, 10.0);
        const double edge = 1.0 / (4.0 * w);
        switch (regime) {
        case Regime::OscillatoryDistinct: return {m, w, uniform(0.05, 0.95) * edge};
        case Regime::Harmonic: return {m, w, 0.0};
        case Regime::Hyperbolic: return {m, w, -uniform(0.05, 5.0) * edge};
        case Regime::Degenerate: return {m, w, edge};
        case Regime::ComplexPair: return {m, w, uniform(1.05, 20.0) * edge};
        }
        return {m, w, 0.0};
    }

    Parameters any_params()
    {
        static constexpr Regime regimes[] = {Regime::OscillatoryDistinct, Regime::Harmonic, Regime::Hyperbolic,
                                             Regime::Degenerate, Regime::ComplexPair};
        return params(regimes[std::uniform_int_distribution<int>(0, 4)(engine_)]);
    }

    /// A point strictly inside the sector, at least `margin` (as a fraction of its width) from both ends.
    double beta_in(const Sector& sector, double margin = 0.02)
    {
        const double width = sector.hi - sector.lo;
        return sector.lo + width * uniform(margin, 1.0 - margin);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace quartic::testing
