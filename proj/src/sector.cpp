#include "quartic/sector.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace quartic {

namespace {

constexpr double kPi = std::numbers::pi;

Sector make(SectorKind kind)
{
    switch (kind) {
    case SectorKind::FirstQuadrant: return {kind, 0.0, kPi / 2};
    case SectorKind::SecondQuadrant: return {kind, kPi / 2, kPi};
    case SectorKind::ThirdQuadrant: return {kind, -kPi, -kPi / 2};
    case SectorKind::FourthQuadrant: return {kind, -kPi / 2, 0.0};
    case SectorKind::UpperHalf: return {kind, 0.0, kPi};
    case SectorKind::LowerHalf: return {kind, -kPi, 0.0};
    case SectorKind::FullCircle: return {kind, -kPi, kPi};
    }
    return {};
}

} // namespace

BetaAngle::BetaAngle(double beta)
    : beta_(beta)
{
    if (!std::isfinite(beta) || beta < -kPi || beta >= kPi) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "beta = " << beta << " is outside [-pi, pi)";
        throw InvalidArgument(msg.str());
    }
}

BetaAngle BetaAngle::wrap(double beta)
{
    if (!std::isfinite(beta)) {
        throw InvalidArgument("beta must be finite");
    }
    double out = std::remainder(beta, 2.0 * kPi);
    if (out >= kPi) {
        out -= 2.0 * kPi;
    }
    return BetaAngle(out);
}

double BetaAngle::cos() const { return std::cos(beta_); }
double BetaAngle::sin() const { return std::sin(beta_); }

bool Sector::contains(double beta) const
{
    if (kind == SectorKind::FullCircle) {
        return beta >= lo && beta < hi;
    }
    return beta > lo && beta < hi;
}

std::string Sector::label() const
{
    switch (kind) {
    case SectorKind::FirstQuadrant: return "(0,pi/2)";
    case SectorKind::SecondQuadrant: return "(pi/2,pi)";
    case SectorKind::ThirdQuadrant: return "(-pi,-pi/2)";
    case SectorKind::FourthQuadrant: return "(-pi/2,0)";
    case SectorKind::UpperHalf: return "(0,pi)";
    case SectorKind::LowerHalf: return "(-pi,0)";
    case SectorKind::FullCircle: return "[-pi,pi)";
    }
    return "?";
}

std::string_view to_string(SectorKind kind)
{
    switch (kind) {
    case SectorKind::FirstQuadrant: return "first-quadrant";
    case SectorKind::SecondQuadrant: return "second-quadrant";
    case SectorKind::ThirdQuadrant: return "third-quadrant";
    case SectorKind::FourthQuadrant: return "fourth-quadrant";
    case SectorKind::UpperHalf: return "upper-half";
    case SectorKind::LowerHalf: return "lower-half";
    case SectorKind::FullCircle: return "full-circle";
    }
    return "unknown";
}

bool beta_admissible(BetaAngle beta, Regime regime)
{
    const bool sin_zero = std::abs(beta.sin()) < kBetaExclusionTolerance;
    const bool cos_zero = std::abs(beta.cos()) < kBetaExclusionTolerance;
    switch (regime) {
    case Regime::OscillatoryDistinct:
    case Regime::Hyperbolic: return !sin_zero && !cos_zero;
    case Regime::Degenerate: return !sin_zero;
    case Regime::ComplexPair: return true;
    case Regime::Harmonic: break;
    }
    throw UnsupportedRegime("the harmonic regime carries no beta family");
}

Sector sector_of(BetaAngle beta, Regime regime)
{
    if (!beta_admissible(beta, regime)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "beta = " << beta.value() << " is an excluded point for regime (" << roman_label(regime) << ")";
        throw SingularBeta(msg.str());
    }
    const double b = beta.value();
    switch (regime) {
    case Regime::OscillatoryDistinct:
    case Regime::Hyperbolic:
        if (b > 0.0) {
            return make(b < kPi / 2 ? SectorKind::FirstQuadrant : SectorKind::SecondQuadrant);
        }
        return make(b > -kPi / 2 ? SectorKind::FourthQuadrant : SectorKind::ThirdQuadrant);
    case Regime::Degenerate: return make(b > 0.0 ? SectorKind::UpperHalf : SectorKind::LowerHalf);
    default: return make(SectorKind::FullCircle);
    }
}

std::vector<Sector> sectors_of(Regime regime)
{
    switch (regime) {
    case Regime::OscillatoryDistinct:
    case Regime::Hyperbolic:
        return {make(SectorKind::ThirdQuadrant), make(SectorKind::FourthQuadrant), make(SectorKind::FirstQuadrant),
                make(SectorKind::SecondQuadrant)};
    case Regime::Degenerate: return {make(SectorKind::LowerHalf), make(SectorKind::UpperHalf)};
    case Regime::ComplexPair: return {make(SectorKind::FullCircle)};
    case Regime::Harmonic: break;
    }
    throw UnsupportedRegime("the harmonic regime carries no beta family");
}

std::vector<double> interior_grid(const Sector& sector, int n)
{
    std::vector<double> grid;
    if (n <= 0) {
        return grid;
    }
    grid.reserve(static_cast<std::size_t>(n));
    const double width = sector.hi - sector.lo;
    for (int k = 0; k < n; ++k) {
        grid.push_back(sector.lo + width * (k + 0.5) / n);
    }
    return grid;
}

} // namespace quartic
