#include "quartic/audit.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include <Eigen/LU>

namespace quartic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTermTolerance = 1e-10;
constexpr double kTildeCanonicity = 1e-13;
constexpr double kEmbeddingTolerance = 1e-8;

void require_regime(const Parameters& params, Regime wanted, const char* what)
{
    const Regime regime = classify_regime(params);
    if (regime != wanted) {
        throw UnsupportedRegime(std::string(what) + " requires regime (" + std::string(roman_label(wanted))
                                + "), got (" + std::string(roman_label(regime)) + ")");
    }
}

void require_fourth_quadrant(BetaAngle beta, const char* what)
{
    if (!(beta.value() > -kPi / 2 && beta.value() < 0.0)) {
        throw WrongSector(std::string(what) + " is defined on the (-pi/2,0) sector only");
    }
}

std::string format_number(double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

AuditEntry entry_from_fit(std::string id, std::string description, const MonomialFit& fit)
{
    AuditEntry entry;
    entry.id = std::move(id);
    entry.description = std::move(description);
    entry.status = status_from_fit(fit);
    entry.residual = fit.residual;
    entry.terms = fit.terms;
    entry.printed_form = render_form(fit.terms, true);
    if (entry.status == AuditStatus::CorrectedCoefficients) {
        entry.corrected_form = render_form(fit.terms, false);
    }
    return entry;
}

AuditEntry threshold_entry(std::string id, std::string description, double residual, double tolerance)
{
    AuditEntry entry;
    entry.id = std::move(id);
    entry.description = std::move(description);
    entry.residual = residual;
    entry.status = residual < tolerance ? AuditStatus::Verified : AuditStatus::Failed;
    entry.diagnostics.push_back({"tolerance", tolerance});
    return entry;
}

double distinct_gap(const ModeData& modes) { return modes.omega1_sq - modes.omega2_sq; }

std::vector<double> audit_betas(Regime regime)
{
    std::vector<double> betas;
    for (const Sector& sector : sectors_of(regime)) {
        for (double b : interior_grid(sector, 10)) {
            betas.push_back(b);
        }
    }
    return betas;
}

AuditEntry audit_flow_field(const Parameters& params)
{
    const Eigen::Matrix4d generator = jet_generator(params);
    double worst = 0.0;
    for (double b : audit_betas(classify_regime(params))) {
        const BetaAngle beta(b);
        const Eigen::Matrix4d flow = bracket_matrix(params, beta).pi * 2.0 * hamiltonian_form(params, beta);
        worst = std::max(worst, max_abs(flow - generator) / max_abs(generator));
    }
    AuditEntry entry = threshold_entry("hamiltonian-flow",
                                       "Pi grad H(beta) reproduces the equation of motion for every beta", worst,
                                       kCertificateTolerance);
    entry.notes.push_back("residual is max |Pi 2H - G| / max |G| over 10 betas per sector");
    return entry;
}

AuditEntry audit_determinant(const Parameters& params)
{
    const Regime regime = classify_regime(params);
    const double b = regime == Regime::ComplexPair ? kPi / 3 : kPi / 4;
    const DeterminantReport det = bracket_determinant(bracket_matrix(params, BetaAngle(b)));

    AuditEntry entry;
    entry.id = "bracket-determinant";
    entry.description = "determinant of the bracket matrix, compared with its closed forms";
    entry.diagnostics = {{"beta", b}, {"numeric", det.numeric}, {"pfaffian_square", det.pfaffian_square}};
    entry.residual = std::abs(det.numeric - det.pfaffian_square) / std::abs(det.numeric);
    if (det.printed_closed_form) {
        entry.diagnostics.push_back({"printed_closed_form", *det.printed_closed_form});
        entry.diagnostics.push_back({"derived_closed_form", *det.derived_closed_form});
        entry.printed_form = "((omega1^2 - omega2^2) / (cos(beta) sin(beta)))^2";
        entry.residual = std::max(entry.residual,
                                  std::abs(det.numeric - *det.derived_closed_form) / std::abs(det.numeric));
        if (det.printed_discrepancy) {
            entry.corrected_form = "(1 / (2 m^2 lambda^2 cos(beta) sin(beta)))^2";
            entry.notes.push_back("printed value differs by the constant factor (2 m^2 lambda^2 (omega1^2 - omega2^2))^2");
        }
    }
    const bool nonzero = std::abs(det.numeric) > 0.0;
    if (!nonzero || entry.residual > kCertificateTolerance) {
        entry.status = AuditStatus::Failed;
    } else {
        entry.status = det.printed_discrepancy ? AuditStatus::CorrectedCoefficients : AuditStatus::Verified;
    }
    return entry;
}

AuditEntry audit_mode_brackets(const Parameters& params)
{
    double worst = 0.0;
    double worst_absolute = 0.0;
    for (double b : audit_betas(classify_regime(params))) {
        const BetaAngle beta(b);
        const auto values = mode_combination_brackets(params, beta);
        const auto scales = mode_combination_scales(params, beta);
        for (std::size_t k = 0; k < values.size(); ++k) {
            worst_absolute = std::max(worst_absolute, std::abs(values[k]));
            if (scales[k] > 0.0) {
                worst = std::max(worst, std::abs(values[k]) / scales[k]);
            }
        }
    }
    AuditEntry entry = threshold_entry("mode-brackets",
                                       "brackets of d2q + r q and d3q + r dq across the two roots vanish", worst,
                                       kCertificateTolerance);
    entry.diagnostics.push_back({"max_absolute", worst_absolute});
    entry.notes.push_back("residual is relative to the size of the terms that cancel");
    return entry;
}

AuditEntry audit_darboux(const Parameters& params)
{
    double canonicity = 0.0;
    double energy = 0.0;
    for (double b : audit_betas(classify_regime(params))) {
        const BetaAngle beta(b);
        const DarbouxMap map = darboux_map(params, beta);
        canonicity = std::max(canonicity, verify_canonicity(params, beta).residual);
        const Eigen::Matrix4d pulled = map.inverse.transpose() * hamiltonian_form(params, beta) * map.inverse;
        energy = std::max(energy, max_abs(pulled - map.hamiltonian_form) / max_abs(map.hamiltonian_form));
    }
    AuditEntry entry = threshold_entry("darboux-charts",
                                       "sector charts are canonical and carry H(beta) to the printed chart form",
                                       std::max(canonicity, energy), kCertificateTolerance);
    entry.diagnostics.push_back({"canonicity_residual", canonicity});
    entry.diagnostics.push_back({"hamiltonian_residual", energy});
    return entry;
}

} // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(AuditStatus status)
{
    switch (status) {
    case AuditStatus::Verified: return "verified";
    case AuditStatus::CorrectedCoefficients: return "corrected-coefficients";
    case AuditStatus::Failed: return "failed";
    }
    return "unknown";
}

bool AuditReport::any_failed() const
{
    for (const auto& entry : entries) {
        if (entry.status == AuditStatus::Failed) {
            return true;
        }
    }
    return false;
}

const AuditEntry& AuditReport::find(std::string_view id) const
{
    for (const auto& entry : entries) {
        if (entry.id == id) {
            return entry;
        }
    }
    throw InvalidArgument("no audit entry '" + std::string(id) + "'");
}

MonomialFit fit_monomials(const Eigen::Matrix4d& form, const std::vector<Monomial>& basis)
{
    const Eigen::Matrix4d sym = (form + form.transpose()) / 2.0;
    MonomialFit out;
    for (const Monomial& mono : basis) {
        TermVerdict verdict;
        verdict.term = mono.label;
        verdict.printed = mono.printed;
        if (mono.i == mono.j) {
            verdict.measured = sym(mono.i, mono.i);
            out.fitted(mono.i, mono.i) += verdict.measured;
        } else {
            verdict.measured = 2.0 * sym(mono.i, mono.j);
            out.fitted(mono.i, mono.j) += verdict.measured / 2.0;
            out.fitted(mono.j, mono.i) += verdict.measured / 2.0;
        }
        verdict.matches =
            std::abs(verdict.measured - verdict.printed) <= kTermTolerance * std::max(1.0, std::abs(verdict.printed));
        out.terms.push_back(verdict);
    }
    out.residual = max_abs(sym - out.fitted);
    return out;
}

AuditStatus status_from_fit(const MonomialFit& fit)
{
    if (fit.residual > kCertificateTolerance) {
        return AuditStatus::Failed;
    }
    for (const auto& term : fit.terms) {
        if (!term.matches) {
            return AuditStatus::CorrectedCoefficients;
        }
    }
    return AuditStatus::Verified;
}

std::string render_form(const std::vector<TermVerdict>& terms, bool printed)
{
    std::string out;
    for (const auto& term : terms) {
        const double c = printed ? term.printed : term.measured;
        if (!out.empty()) {
            out += c < 0.0 ? " - " : " + ";
        } else if (c < 0.0) {
            out += "-";
        }
        out += format_number(std::abs(c)) + "*" + term.term;
    }
    return out;
}

double commutator_residual(const Eigen::Matrix4d& a, const Eigen::Matrix4d& b)
{
    const Eigen::Matrix4d j = standard_symplectic();
    return max_abs(a * j * b - b * j * a);
}

// ---------------------------------------------------------------------------

CanonicalState TildeState::canonical_order() const { return {tq1, tp1, tq2, tp2}; }

TildeState TildeState::from_canonical_order(const CanonicalState& x) { return {x(0), x(2), x(1), x(3)}; }

Eigen::Matrix4d ostrogradski_matrix(const Parameters& params)
{
    params.validate();
    if (params.lambda == 0.0) {
        throw InvalidParameters("the Ostrogradski map needs lambda != 0");
    }
    const double m = params.m;
    const double ml = m * params.lambda;
    Eigen::Matrix4d o;
    o << 1, 0, 0, 0,   //
        0, m, 0, ml,   //
        0, 1, 0, 0,    //
        0, 0, -ml, 0;
    return o;
}

TildeState ostrogradski_from_jet(const Parameters& params, const JetState& jet)
{
    return TildeState::from_canonical_order(ostrogradski_matrix(params) * jet);
}

Eigen::Matrix4d ostrogradski_hamiltonian_form(const Parameters& params)
{
    ostrogradski_matrix(params);
    Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
    h(0, 0) = params.m * params.omega_sq / 2.0;
    h(1, 2) = h(2, 1) = 0.5;
    h(2, 2) = -params.m / 2.0;
    h(3, 3) = -1.0 / (2.0 * params.m * params.lambda);
    return h;
}

Eigen::Matrix4d tilde_transform_matrix(const Parameters& params)
{
    require_regime(params, Regime::OscillatoryDistinct, "the tilde transform");
    const ModeData modes = mode_frequencies(params);
    const double m = params.m;
    const double w1 = modes.omega1_sq;
    const double w2 = modes.omega2_sq;
    const double gap = distinct_gap(modes);
    const double r = 1.0 / std::sqrt(params.lambda * gap);
    const double s = std::sqrt(params.lambda / gap);
    Eigen::Matrix4d t;
    t << r, 0, -r, 0,              //
        0, s * w1, 0, s * w2,      //
        0, r / m, 0, r / m,        //
        m * s * w2, 0, -m * s * w1, 0;
    return t;
}

TildeState tilde_transform(const Parameters& params, BetaAngle beta, const CanonicalState& canon)
{
    const Eigen::Matrix4d t = tilde_transform_matrix(params);
    require_fourth_quadrant(beta, "the tilde transform");
    return TildeState::from_canonical_order(t * canon);
}

AuditEntry audit_tilde_canonicity(const Parameters& params, BetaAngle beta)
{
    require_fourth_quadrant(beta, "the tilde transform");
    const Eigen::Matrix4d t = tilde_transform_matrix(params);
    const Eigen::Matrix4d j = standard_symplectic();
    AuditEntry entry = threshold_entry("tilde-canonicity", "chart to Ostrogradski-form coordinates is canonical",
                                       max_abs(t * j * t.transpose() - j), kTildeCanonicity);
    return entry;
}

AuditEntry audit_ostrogradski_hamiltonian(const Parameters& params, BetaAngle beta)
{
    require_fourth_quadrant(beta, "the Ostrogradski Hamiltonian audit");
    const Eigen::Matrix4d t = tilde_transform_matrix(params);
    const Eigen::Matrix4d k = darboux_map(params, beta).hamiltonian_form;
    const Eigen::Matrix4d t_inv = t.partialPivLu().inverse();
    const Eigen::Matrix4d pulled = t_inv.transpose() * k * t_inv;

    const double m = params.m;
    const double lambda = params.lambda;
    // Coordinates ordered (tq1, tp1, tq2, tp2).
    const std::vector<Monomial> basis = {
        {1, 2, "tp1*tq2", 1.0},
        {3, 3, "tp2^2", -1.0 / (m * lambda)},
        {2, 2, "tq2^2", -m / 2.0},
        {0, 0, "tq1^2", m * params.omega_sq / 2.0},
    };
    AuditEntry entry = entry_from_fit("ostrogradski-hamiltonian",
                                      "H(beta) of the (-pi/2,0) chart pulled back to Ostrogradski-form coordinates",
                                      fit_monomials(pulled, basis));
    entry.diagnostics.push_back({"beta", beta.value()});
    entry.diagnostics.push_back(
        {"standard_construction_residual", max_abs(pulled - ostrogradski_hamiltonian_form(params))});
    return entry;
}

AuditEntry audit_ostrogradski_identification(const Parameters& params)
{
    const Eigen::Matrix4d t = tilde_transform_matrix(params);
    const Eigen::Matrix4d o = ostrogradski_matrix(params);
    const Eigen::Matrix4d at_quarter = t * darboux_map(params, BetaAngle(-kPi / 4)).forward;
    const Eigen::Matrix4d near_half = t * darboux_map(params, BetaAngle(-kPi / 2 + 1e-3)).forward;

    AuditEntry entry;
    entry.id = "ostrogradski-identification";
    entry.description = "beta at which jet -> chart -> tilde equals the Ostrogradski map";
    entry.residual = max_abs(at_quarter - o);
    entry.printed_form = "tq1 = q at beta = -pi/2";
    entry.corrected_form = "tq1 = q (and the whole map is Ostrogradski) at beta = -pi/4";
    entry.diagnostics = {{"residual_at_minus_quarter_pi", entry.residual},
                         {"tq1_deviation_near_minus_half_pi", max_abs(near_half.row(0) - o.row(0))}};
    entry.notes.push_back("-pi/2 is an excluded sector boundary; the map is singular there");
    entry.status =
        entry.residual < kCertificateTolerance ? AuditStatus::CorrectedCoefficients : AuditStatus::Failed;
    return entry;
}

// ---------------------------------------------------------------------------

QuarticLagrangianCoeffs beta_lagrangian(const Parameters& params, BetaAngle beta)
{
    require_regime(params, Regime::OscillatoryDistinct, "beta_lagrangian");
    require_fourth_quadrant(beta, "beta_lagrangian");
    const ModeData modes = mode_frequencies(params);
    const double w1 = modes.omega1_sq;
    const double w2 = modes.omega2_sq;
    const double c = beta.cos();
    const double s = beta.sin();
    const double md2 = params.m * std::sqrt(2.0) * params.lambda / distinct_gap(modes);

    QuarticLagrangianCoeffs out;
    out.d3q_sq = md2 / 2.0 * (c + s);
    out.d2q_sq = -md2 * (w1 * (c + s / 2.0) + w2 * (s + c / 2.0));
    out.dq_sq = md2 / 2.0 * ((w1 + 2.0 * w2) * w1 * c + (w2 + 2.0 * w1) * w2 * s);
    out.q_sq = -md2 / 2.0 * w1 * w2 * (w1 * c + w2 * s);
    return out;
}

Eigen::VectorXd reduce_modulo_total_derivatives(const Eigen::MatrixXd& form)
{
    // q^(i) q^(j) equals -q^(i+1) q^(j-1) up to a total derivative; odd i + j
    // reduces to d/dt of a square.
    const Eigen::Index n = form.rows();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            if ((i + j) % 2 != 0) {
                continue;
            }
            const double weight = i == j ? form(i, i) : form(i, j) + form(j, i);
            const double sign = ((j - i) / 2) % 2 == 0 ? 1.0 : -1.0;
            out((i + j) / 2) += sign * weight;
        }
    }
    return out;
}

QuarticLagrangianCoeffs reduced_beta_lagrangian(const Parameters& params, BetaAngle beta)
{
    require_regime(params, Regime::OscillatoryDistinct, "reduced_beta_lagrangian");
    require_fourth_quadrant(beta, "reduced_beta_lagrangian");
    const DarbouxMap map = darboux_map(params, beta);
    const Eigen::Matrix4d& k = map.hamiltonian_form;
    const Eigen::Matrix4d shift = jet_generator(params);

    // Legendre transform of the diagonal chart Hamiltonian:
    //   L = sum dq_i^2 / (4 K_pp) - K_qq q_i^2,  dq_i read off by shifting the q_i row.
    Eigen::Matrix4d lagrangian = Eigen::Matrix4d::Zero();
    for (int i : {0, 2}) {
        const Eigen::RowVector4d position = map.forward.row(i);
        const Eigen::RowVector4d velocity = position * shift;
        lagrangian += velocity.transpose() * velocity / (4.0 * k(i + 1, i + 1));
        lagrangian -= k(i, i) * position.transpose() * position;
    }
    const Eigen::VectorXd reduced = reduce_modulo_total_derivatives(lagrangian);
    return {reduced(3), reduced(2), reduced(1), reduced(0)};
}

ExtraModeReport extra_mode_frequency(const Parameters& params, BetaAngle beta)
{
    const QuarticLagrangianCoeffs coeffs = beta_lagrangian(params, beta);
    const ModeData modes = mode_frequencies(params);
    const double w1 = modes.omega1_sq;
    const double w2 = modes.omega2_sq;
    const double c = beta.cos();
    const double s = beta.sin();

    ExtraModeReport out;
    const Eigen::Vector4d b = coeffs.as_vector();
    for (int k = 0; k < 4; ++k) {
        out.characteristic(k) = 2.0 * (k % 2 == 0 ? 1.0 : -1.0) * b(k);
    }

    // Divide by x^2 + s1 x + s0.
    const Eigen::Vector4d& p = out.characteristic;
    const double s1 = w1 + w2;
    const double s0 = w1 * w2;
    const double q1 = p(3);
    const double q0 = p(2) - q1 * s1;
    const double r1 = p(1) - q1 * s0 - q0 * s1;
    const double r0 = p(0) - q0 * s0;
    out.factor_remainder = std::max(std::abs(r1), std::abs(r0));

    const double md2 = params.m * std::sqrt(2.0) * params.lambda / distinct_gap(modes);
    const double lead = c + s;
    const double tail = w1 * c + w2 * s;
    const Eigen::Vector4d expected = -md2 * Eigen::Vector4d(tail * s0, tail * s1 + lead * s0, tail + lead * s1, lead);
    out.factorization_residual = (p - expected).cwiseAbs().maxCoeff();
    out.leading_coefficient = lead;
    if (std::abs(lead) >= kExtraModeTolerance) {
        out.omega_sq = tail / lead;
    }
    return out;
}

AuditEntry audit_beta_lagrangian(const Parameters& params, BetaAngle beta)
{
    const QuarticLagrangianCoeffs printed = beta_lagrangian(params, beta);
    const QuarticLagrangianCoeffs derived = reduced_beta_lagrangian(params, beta);
    const std::array<std::pair<const char*, std::pair<double, double>>, 4> terms = {{
        {"d3q^2", {printed.d3q_sq, derived.d3q_sq}},
        {"d2q^2", {printed.d2q_sq, derived.d2q_sq}},
        {"dq^2", {printed.dq_sq, derived.dq_sq}},
        {"q^2", {printed.q_sq, derived.q_sq}},
    }};
    AuditEntry entry;
    entry.id = "beta-lagrangian";
    entry.description = "two-oscillator Lagrangian of the (-pi/2,0) chart written in q alone";
    bool all_match = true;
    for (const auto& [label, values] : terms) {
        TermVerdict verdict{label, values.first, values.second, false};
        verdict.matches =
            std::abs(values.first - values.second) <= kTermTolerance * std::max(1.0, std::abs(values.first));
        all_match = all_match && verdict.matches;
        entry.residual = std::max(entry.residual, std::abs(values.first - values.second));
        entry.terms.push_back(verdict);
    }
    entry.printed_form = render_form(entry.terms, true);
    entry.status = all_match ? AuditStatus::Verified : AuditStatus::CorrectedCoefficients;
    if (!all_match) {
        entry.corrected_form = render_form(entry.terms, false);
        entry.residual = 0.0;
    }
    entry.diagnostics.push_back({"beta", beta.value()});
    return entry;
}

AuditEntry audit_extra_mode(const Parameters& params, BetaAngle beta)
{
    const ExtraModeReport report = extra_mode_frequency(params, beta);
    AuditEntry entry = threshold_entry(
        "extra-mode", "characteristic polynomial factors through the equation of motion and one extra mode",
        std::max(report.factor_remainder, report.factorization_residual), kCertificateTolerance);
    entry.diagnostics.push_back({"beta", beta.value()});
    entry.diagnostics.push_back({"factor_remainder", report.factor_remainder});
    entry.diagnostics.push_back({"factorization_residual", report.factorization_residual});
    entry.diagnostics.push_back({"leading_coefficient", report.leading_coefficient});
    if (report.omega_sq) {
        entry.diagnostics.push_back({"extra_omega_sq", *report.omega_sq});
    }
    const ExtraModeReport quarter = extra_mode_frequency(params, BetaAngle(-kPi / 4));
    entry.diagnostics.push_back({"leading_coefficient_at_minus_quarter_pi", quarter.leading_coefficient});
    if (quarter.omega_sq) {
        entry.status = AuditStatus::Failed;
        entry.notes.push_back("extra mode present at beta = -pi/4");
    }
    return entry;
}

// ---------------------------------------------------------------------------

TestPath::TestPath(std::vector<double> frequencies, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : nu_(std::move(frequencies))
    , a_(std::move(cos_coeffs))
    , b_(std::move(sin_coeffs))
{
    if (nu_.size() != a_.size() || nu_.size() != b_.size()) {
        throw InvalidArgument("test path coefficient lists differ in length");
    }
}

TestPath TestPath::random(std::uint64_t seed, int degree)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> freq(0.1, 2.0);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<double> nu, a, b;
    for (int k = 0; k < degree; ++k) {
        nu.push_back(freq(rng));
        a.push_back(coeff(rng));
        b.push_back(coeff(rng));
    }
    return {std::move(nu), std::move(a), std::move(b)};
}

Eigen::VectorXd TestPath::derivatives(double t, int orders) const
{
    Eigen::VectorXd out = Eigen::VectorXd::Zero(orders);
    for (std::size_t k = 0; k < nu_.size(); ++k) {
        double scale = 1.0;
        for (int n = 0; n < orders; ++n) {
            const double phase = nu_[k] * t + n * kPi / 2;
            out(n) += scale * (a_[k] * std::cos(phase) + b_[k] * std::sin(phase));
            scale *= nu_[k];
        }
    }
    return out;
}

EmbeddingReport embedding_identity_residual(const Parameters& params, double alpha1, double alpha2,
                                            const PathDerivatives& path, const std::vector<double>& times)
{
    const ModeData modes = mode_frequencies(params);
    if (modes.regime != Regime::OscillatoryDistinct && modes.regime != Regime::Hyperbolic) {
        throw UnsupportedRegime("the embedding identity needs two real squared frequencies");
    }
    if (alpha1 * alpha2 == 0.0) {
        throw InvalidArgument("the embedding needs alpha1 * alpha2 != 0");
    }
    const double m = params.m;
    const double w1 = modes.omega1_sq;
    const double w2 = modes.omega2_sq;

    // L on (q, dq, d2q, d3q) with q1 = d2q + w2 q and q2 = d2q + w1 q.
    const Eigen::Vector4d u1(w2, 0, 1, 0), v1(0, w2, 0, 1);
    const Eigen::Vector4d u2(w1, 0, 1, 0), v2(0, w1, 0, 1);
    const Eigen::Matrix4d form = alpha1 * m / 2.0 * (v1 * v1.transpose() - w1 * u1 * u1.transpose())
                                 + alpha2 * m / 2.0 * (v2 * v2.transpose() - w2 * u2 * u2.transpose());

    EmbeddingReport out;
    out.sixth_order_coefficient = -2.0 * form(3, 3);
    for (double t : times) {
        const Eigen::VectorXd d = path(t, 7);
        // E = sum_k (-1)^k d^k/dt^k (dL/dq^(k)) = sum_{k,j} 2 (-1)^k A_kj q^(k+j)
        double e = 0.0;
        for (int k = 0; k < 4; ++k) {
            for (int j = 0; j < 4; ++j) {
                e += 2.0 * (k % 2 == 0 ? 1.0 : -1.0) * form(k, j) * d(k + j);
            }
        }
        const double g = d(4) + (w1 + w2) * d(2) + w1 * w2 * d(0);
        const double g2 = d(6) + (w1 + w2) * d(4) + w1 * w2 * d(2);
        const double rhs = -m * ((alpha1 + alpha2) * g2 + (alpha1 * w2 + alpha2 * w1) * g);
        out.identity_residual = std::max(out.identity_residual, std::abs(e - rhs));
        out.euler_lagrange_max = std::max(out.euler_lagrange_max, std::abs(e));
    }
    return out;
}

EmbeddingReport embedding_identity_residual(const Parameters& params, double alpha1, double alpha2,
                                            const TestPath& path)
{
    std::vector<double> times;
    for (int k = 0; k <= 24; ++k) {
        times.push_back(-6.0 + 0.5 * k);
    }
    return embedding_identity_residual(
        params, alpha1, alpha2, [&path](double t, int orders) { return path.derivatives(t, orders); }, times);
}

AuditEntry audit_embedding_identity(const Parameters& params)
{
    double identity = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const TestPath path = TestPath::random(seed);
        for (auto [a1, a2] : {std::pair{1.0, -1.0}, std::pair{1.0, 1.0}, std::pair{0.7, 2.3}}) {
            identity = std::max(identity, embedding_identity_residual(params, a1, a2, path).identity_residual);
        }
    }
    const ModeData modes = mode_frequencies(params);
    const Eigen::Vector4d weights(0.9, -0.4, 0.3, 0.6);
    const PathDerivatives on_shell = [&modes, &weights](double t, int orders) {
        return Eigen::VectorXd(mode_basis(modes, t, orders) * weights);
    };
    std::vector<double> times;
    for (int k = 0; k <= 16; ++k) {
        times.push_back(-2.0 + 0.25 * k);
    }
    const double on_shell_el = embedding_identity_residual(params, 0.7, 2.3, on_shell, times).euler_lagrange_max;
    const double sixth = embedding_identity_residual(params, 1.0, -1.0, TestPath::random(1)).sixth_order_coefficient;

    AuditEntry entry = threshold_entry("embedding-identity",
                                       "Euler-Lagrange expression of the two-oscillator embedding factors through "
                                       "the equation of motion",
                                       std::max(identity, on_shell_el), kEmbeddingTolerance);
    entry.diagnostics.push_back({"identity_residual", identity});
    entry.diagnostics.push_back({"on_shell_euler_lagrange", on_shell_el});
    entry.diagnostics.push_back({"sixth_order_coefficient_opposite_alphas", sixth});
    if (std::abs(sixth) > kExtraModeTolerance) {
        entry.status = AuditStatus::Failed;
    }
    return entry;
}

// ---------------------------------------------------------------------------

AuditReport run_audit(const Parameters& params)
{
    AuditReport report;
    report.params = params;
    report.regime = classify_regime(params);
    if (report.regime == Regime::Harmonic) {
        throw UnsupportedRegime("the harmonic regime carries no beta family to audit");
    }
    report.entries.push_back(audit_flow_field(params));
    report.entries.push_back(audit_determinant(params));
    report.entries.push_back(audit_mode_brackets(params));
    report.entries.push_back(audit_darboux(params));

    switch (report.regime) {
    case Regime::OscillatoryDistinct: {
        const BetaAngle quarter(-kPi / 4);
        const BetaAngle third(-kPi / 3);
        report.entries.push_back(audit_tilde_canonicity(params, quarter));
        report.entries.push_back(audit_ostrogradski_hamiltonian(params, third));
        report.entries.push_back(audit_ostrogradski_identification(params));
        report.entries.push_back(audit_beta_lagrangian(params, third));
        report.entries.push_back(audit_extra_mode(params, third));
        report.entries.push_back(audit_embedding_identity(params));
        break;
    }
    case Regime::Hyperbolic: report.entries.push_back(audit_embedding_identity(params)); break;
    case Regime::Degenerate:
    case Regime::ComplexPair:
        for (auto& entry : audit_separation(params)) {
            report.entries.push_back(std::move(entry));
        }
        break;
    case Regime::Harmonic: break;
    }
    return report;
}

} // namespace quartic
