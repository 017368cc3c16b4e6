#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quartic/darboux.hpp"

namespace quartic {

// ---------------------------------------------------------------------------
// Report types

enum class AuditStatus { Verified, CorrectedCoefficients, Failed };

std::string_view to_string(AuditStatus status);

/// One monomial coefficient of a quadratic form, as printed and as measured.
struct TermVerdict {
    std::string term;
    double printed = 0.0;
    double measured = 0.0;
    bool matches = false;
};

struct Diagnostic {
    std::string name;
    double value = 0.0;
};

struct AuditEntry {
    std::string id;
    std::string description;
    AuditStatus status = AuditStatus::Failed;
    /// Distance of the measured object from the form reported as correct
    /// (the printed one when Verified, the corrected one otherwise).
    double residual = 0.0;
    std::string printed_form;
    std::string corrected_form;
    std::vector<TermVerdict> terms;
    std::vector<Diagnostic> diagnostics;
    std::vector<std::string> notes;
};

struct AuditReport {
    Parameters params;
    Regime regime = Regime::Harmonic;
    std::vector<AuditEntry> entries;

    bool any_failed() const;
    /// Throws InvalidArgument when no entry has the id.
    const AuditEntry& find(std::string_view id) const;
};

/// Residual above which a certificate is rejected.
inline constexpr double kCertificateTolerance = 1e-10;

// ---------------------------------------------------------------------------
// Quadratic-form coefficient fitting

/// x_i x_j with its printed coefficient. Coordinates are indexed in the
/// (q1, p1, q2, p2) order of the chart the form lives on.
struct Monomial {
    int i = 0;
    int j = 0;
    std::string label;
    double printed = 0.0;
};

struct MonomialFit {
    std::vector<TermVerdict> terms;
    /// max entry of |form - sum of fitted monomials|
    double residual = 0.0;
    Eigen::Matrix4d fitted = Eigen::Matrix4d::Zero();
};

/// Reads the coefficients of the symmetric form on the given monomials; the
/// residual measures everything the basis cannot represent.
MonomialFit fit_monomials(const Eigen::Matrix4d& form, const std::vector<Monomial>& basis);

/// Verified when the fit is exact and every term matches its printed value,
/// CorrectedCoefficients when exact with mismatching terms, Failed otherwise.
AuditStatus status_from_fit(const MonomialFit& fit);

/// Renders sum of coefficient * label, for report forms.
std::string render_form(const std::vector<TermVerdict>& terms, bool printed);

/// max |A J B - B J A|: zero iff x^T A x and x^T B x Poisson-commute.
double commutator_residual(const Eigen::Matrix4d& a, const Eigen::Matrix4d& b);

// ---------------------------------------------------------------------------
// Ostrogradski form

/// Ostrogradski-form coordinates.
struct TildeState {
    double tq1 = 0.0;
    double tq2 = 0.0;
    double tp1 = 0.0;
    double tp2 = 0.0;

    /// (tq1, tp1, tq2, tp2)
    CanonicalState canonical_order() const;
    static TildeState from_canonical_order(const CanonicalState& x);
};

/// tq1 = q, tq2 = dq, tp1 = m dq + m lambda d3q, tp2 = -m lambda d2q.
/// Throws InvalidParameters for lambda = 0.
TildeState ostrogradski_from_jet(const Parameters& params, const JetState& jet);
/// The same map as a matrix onto (tq1, tp1, tq2, tp2).
Eigen::Matrix4d ostrogradski_matrix(const Parameters& params);

/// Hamiltonian tp1 tq2 - tp2^2 / (2 m lambda) - m/2 tq2^2 + m omega^2/2 tq1^2 of
/// the Ostrogradski construction, on (tq1, tp1, tq2, tp2).
Eigen::Matrix4d ostrogradski_hamiltonian_form(const Parameters& params);

/// Linear map from the (-pi/2, 0) regime-(i) chart to (tq1, tp1, tq2, tp2).
Eigen::Matrix4d tilde_transform_matrix(const Parameters& params);

/// Throws WrongSector unless beta lies in (-pi/2, 0) and UnsupportedRegime outside regime (i).
TildeState tilde_transform(const Parameters& params, BetaAngle beta, const CanonicalState& canon);

AuditEntry audit_tilde_canonicity(const Parameters& params, BetaAngle beta);
AuditEntry audit_ostrogradski_hamiltonian(const Parameters& params, BetaAngle beta);
/// Compares jet -> chart -> tilde with the Ostrogradski map at beta = -pi/4.
AuditEntry audit_ostrogradski_identification(const Parameters& params);

// ---------------------------------------------------------------------------
// Lagrangian in q alone and the extra mode

/// Coefficients of d3q^2, d2q^2, dq^2 and q^2.
struct QuarticLagrangianCoeffs {
    double d3q_sq = 0.0;
    double d2q_sq = 0.0;
    double dq_sq = 0.0;
    double q_sq = 0.0;

    Eigen::Vector4d as_vector() const { return {q_sq, dq_sq, d2q_sq, d3q_sq}; }
};

/// The closed-form coefficients of the two-oscillator Lagrangian written in
/// q alone. Regime (i), beta in (-pi/2, 0).
QuarticLagrangianCoeffs beta_lagrangian(const Parameters& params, BetaAngle beta);

/// The same coefficients obtained independently: substitute the chart into the
/// two-oscillator Lagrangian and integrate by parts.
QuarticLagrangianCoeffs reduced_beta_lagrangian(const Parameters& params, BetaAngle beta);

/// Reduces x^T A x on (q, ..., q^(n-1)) to sum c_k (q^(k))^2 modulo total derivatives.
Eigen::VectorXd reduce_modulo_total_derivatives(const Eigen::MatrixXd& form);

inline constexpr double kExtraModeTolerance = 1e-12;

struct ExtraModeReport {
    /// Absent when cos(beta) + sin(beta) vanishes.
    std::optional<double> omega_sq;
    double leading_coefficient = 0.0;
    /// Characteristic polynomial in x = (d/dt)^2, coefficients of x^0..x^3.
    Eigen::Vector4d characteristic = Eigen::Vector4d::Zero();
    /// Remainder of the division by (x + omega1^2)(x + omega2^2), max |coeff|.
    double factor_remainder = 0.0;
    /// max |characteristic - (-m delta^2)((c+s) x + w1 c + w2 s)(x + w1)(x + w2)|.
    double factorization_residual = 0.0;
};

ExtraModeReport extra_mode_frequency(const Parameters& params, BetaAngle beta);

AuditEntry audit_beta_lagrangian(const Parameters& params, BetaAngle beta);
AuditEntry audit_extra_mode(const Parameters& params, BetaAngle beta);

// ---------------------------------------------------------------------------
// Two-oscillator embedding identity

/// q(t) = sum a_k cos(nu_k t) + b_k sin(nu_k t), differentiated analytically.
class TestPath {
public:
    TestPath(std::vector<double> frequencies, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

    /// Frequencies in [0.1, 2], coefficients in [-1, 1].
    static TestPath random(std::uint64_t seed, int degree = 12);

    Eigen::VectorXd derivatives(double t, int orders) const;

private:
    std::vector<double> nu_;
    std::vector<double> a_;
    std::vector<double> b_;
};

using PathDerivatives = std::function<Eigen::VectorXd(double t, int orders)>;

struct EmbeddingReport {
    /// max |E - RHS| over the sample times
    double identity_residual = 0.0;
    /// max |E| over the sample times
    double euler_lagrange_max = 0.0;
    /// Coefficient of q^(6) in E, -m (alpha1 + alpha2).
    double sixth_order_coefficient = 0.0;
};

/// E is the fourth-order Euler-Lagrange expression of
///   alpha1 (m/2 dq1^2 - m w1^2/2 q1^2) + alpha2 (m/2 dq2^2 - m w2^2/2 q2^2)
/// with q1 = d2q + w2^2 q and q2 = d2q + w1^2 q; RHS is
///   -m [(alpha1 + alpha2) G'' + (alpha1 w2^2 + alpha2 w1^2) G],
///   G = q'''' + (w1^2 + w2^2) q'' + w1^2 w2^2 q.
/// Regimes (i) and (iii); throws InvalidArgument when alpha1 alpha2 = 0.
EmbeddingReport embedding_identity_residual(const Parameters& params, double alpha1, double alpha2,
                                            const PathDerivatives& path, const std::vector<double>& times);
EmbeddingReport embedding_identity_residual(const Parameters& params, double alpha1, double alpha2,
                                            const TestPath& path);

AuditEntry audit_embedding_identity(const Parameters& params);

// ---------------------------------------------------------------------------
// Separation transforms

/// Primed (q1', p1', q2', p2') to the degenerate chart (q1, p1, q2, p2):
/// q1 = q1', q2 = q1' - p2'/(m w), p1 = p1' - m w q2', p2 = m w q2'.
Eigen::Matrix4d degenerate_separation_transform(const Parameters& params);

/// Canonical T with T^T K T = -R (Q1 P2 - Q2 P1) - V (Q1^2 + Q2^2) for the
/// degenerate chart Hamiltonian K.
struct SeparatedForm {
    Eigen::Matrix4d transform = Eigen::Matrix4d::Identity();
    Eigen::Matrix4d form = Eigen::Matrix4d::Zero();
    double rotation = 0.0;
    double potential = 0.0;
    double symplectic_residual = 0.0;
    double form_residual = 0.0;
};

/// Certified through the semisimple/nilpotent split of the Hamiltonian
/// matrix, then rescaled so that V = m omega^2.
SeparatedForm degenerate_separated_form(const Parameters& params);

/// Tilde (tq1, tp1, tq2, tp2) to the complex chart (q1, p1, q2, p2), with
/// omega0 = branch * sqrt(omega0^2) and the canonical rescaling q -> q/sqrt(m),
/// p -> sqrt(m) p folded in.
Mat4<std::complex<double>> complex_separation_transform(const Parameters& params, int branch);

/// Complex chart Hamiltonian diag(m conj(w0^2)/2, 1/2m, m w0^2/2, 1/2m).
Mat4<std::complex<double>> complex_chart_hamiltonian(const Parameters& params);

/// Degenerate regime: canonicity, pull-back and certified separated form.
/// Complex regime: canonicity, pull-back for both branches, commutation.
std::vector<AuditEntry> audit_separation(const Parameters& params);

// ---------------------------------------------------------------------------

/// Every audit that applies to the regime of params.
AuditReport run_audit(const Parameters& params);

} // namespace quartic
