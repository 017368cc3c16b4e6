#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "quartic/regime.hpp"

namespace quartic {

/// Angle parametrizing the family of Hamiltonian structures, held in [-pi, pi).
class BetaAngle {
public:
    /// Throws InvalidArgument when beta is not finite or outside [-pi, pi).
    explicit BetaAngle(double beta);

    /// Reduces any finite angle into [-pi, pi).
    static BetaAngle wrap(double beta);

    double value() const { return beta_; }
    double cos() const;
    double sin() const;

private:
    double beta_;
};

/// sin/cos zeros closer than this are treated as excluded points.
inline constexpr double kBetaExclusionTolerance = 1e-12;

enum class SectorKind {
    FirstQuadrant,  // (0, pi/2)
    SecondQuadrant, // (pi/2, pi)
    ThirdQuadrant,  // (-pi, -pi/2)
    FourthQuadrant, // (-pi/2, 0)
    UpperHalf,      // (0, pi)
    LowerHalf,      // (-pi, 0)
    FullCircle,     // [-pi, pi)
};

struct Sector {
    SectorKind kind = SectorKind::FullCircle;
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double beta) const;
    std::string label() const;
};

std::string_view to_string(SectorKind kind);

/// Throws SingularBeta on excluded points and UnsupportedRegime for Harmonic.
Sector sector_of(BetaAngle beta, Regime regime);

/// True when beta is not an excluded point of the regime's family.
bool beta_admissible(BetaAngle beta, Regime regime);

/// All sectors of a regime, in increasing order of lower bound.
std::vector<Sector> sectors_of(Regime regime);

/// n points strictly inside the sector, evenly spaced away from both ends.
std::vector<double> interior_grid(const Sector& sector, int n);

} // namespace quartic
