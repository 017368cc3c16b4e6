#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "quartic/audit.hpp"

namespace quartic {

namespace {

using Complex = std::complex<double>;
using Matrix4c = Mat4<Complex>;

constexpr double kSeparationCanonicity = 1e-13;

double max_abs(const Eigen::Matrix4d& m) { return m.cwiseAbs().maxCoeff(); }

AuditEntry fitted_entry(std::string id, std::string description, const MonomialFit& fit)
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

// H = -R (Q1 P2 - Q2 P1) - V (Q1^2 + Q2^2) on (Q1, P1, Q2, P2).
Eigen::Matrix4d rotation_potential_form(double rotation, double potential)
{
    Eigen::Matrix4d k = Eigen::Matrix4d::Zero();
    k(0, 3) = k(3, 0) = -rotation / 2.0;
    k(1, 2) = k(2, 1) = rotation / 2.0;
    k(0, 0) = k(2, 2) = -potential;
    return k;
}

struct FamilyFit {
    double rotation = 0.0;
    double potential = 0.0;
    double residual = 0.0;
};

// Closest member of the rotation-plus-isotropic-potential family.
FamilyFit fit_family(const Eigen::Matrix4d& form)
{
    const Eigen::Matrix4d sym = (form + form.transpose()) / 2.0;
    FamilyFit out;
    out.rotation = sym(1, 2) - sym(0, 3);
    out.potential = -(sym(0, 0) + sym(2, 2)) / 2.0;
    out.residual = max_abs(sym - rotation_potential_form(out.rotation, out.potential));
    return out;
}

Eigen::Matrix4d degenerate_chart_form(const Parameters& params)
{
    return darboux_map(params, BetaAngle(std::numbers::pi / 2)).hamiltonian_form;
}

std::vector<Monomial> printed_degenerate_basis(const Parameters& params)
{
    const double w = std::sqrt(params.omega_sq);
    const double mw2 = params.m * params.omega_sq;
    return {
        {0, 3, "q1'*p2'", -w},
        {2, 1, "q2'*p1'", w},
        {0, 0, "q1'^2", -mw2},
        {2, 2, "q2'^2", -mw2},
    };
}

// Splits a form into its q-p cross part and its remaining part.
std::pair<Eigen::Matrix4d, Eigen::Matrix4d> cross_and_square_parts(const Eigen::Matrix4d& form)
{
    Eigen::Matrix4d cross = Eigen::Matrix4d::Zero();
    for (int i : {0, 2}) {
        for (int j : {1, 3}) {
            cross(i, j) = form(i, j);
            cross(j, i) = form(j, i);
        }
    }
    return {cross, form - cross};
}

AuditEntry degenerate_canonicity_entry(const Parameters& params)
{
    const Eigen::Matrix4d t = degenerate_separation_transform(params);
    const Eigen::Matrix4d j = standard_symplectic();
    AuditEntry entry;
    entry.id = "degenerate-separation-canonicity";
    entry.description = "primed coordinates of the degenerate chart are canonical";
    entry.residual = max_abs(t * j * t.transpose() - j);
    entry.status = entry.residual < kSeparationCanonicity ? AuditStatus::Verified : AuditStatus::Failed;
    entry.diagnostics.push_back({"tolerance", kSeparationCanonicity});
    return entry;
}

AuditEntry degenerate_pullback_entry(const Parameters& params)
{
    const Eigen::Matrix4d t = degenerate_separation_transform(params);
    const Eigen::Matrix4d pulled = t.transpose() * degenerate_chart_form(params) * t;
    AuditEntry entry = fitted_entry("degenerate-separation-pullback",
                                             "degenerate chart Hamiltonian pulled back to primed coordinates",
                                             fit_monomials(pulled, printed_degenerate_basis(params)));

    const auto [cross, squares] = cross_and_square_parts(pulled);
    entry.diagnostics.push_back({"summand_commutator", commutator_residual(cross, squares)});

    // Canonical diagonal rescalings (a, 1/a, b, 1/b) composed with the primed map.
    double best = std::numeric_limits<double>::infinity();
    for (int i = -20; i <= 20; ++i) {
        for (int k = -20; k <= 20; ++k) {
            const double a = std::pow(10.0, i / 10.0);
            const double b = std::pow(10.0, k / 10.0);
            const Eigen::Matrix4d d = Eigen::Vector4d(a, 1.0 / a, b, 1.0 / b).asDiagonal();
            const Eigen::Matrix4d form = d * pulled * d;
            best = std::min(best, fit_family(form).residual / max_abs(form));
        }
    }
    entry.diagnostics.push_back({"rescaling_ansatz_min_relative_residual", best});
    entry.notes.push_back("the pull-back lies in the printed monomial basis but is not rotation plus isotropic "
                          "potential: the two square terms have opposite signs");
    entry.notes.push_back("no diagonal rescaling reaches the separated family; see degenerate-separated-form");
    return entry;
}

AuditEntry degenerate_separated_entry(const Parameters& params)
{
    const SeparatedForm sep = degenerate_separated_form(params);
    MonomialFit fit = fit_monomials(sep.form, printed_degenerate_basis(params));
    AuditEntry entry = fitted_entry(
        "degenerate-separated-form", "rotation plus isotropic potential form certified by a canonical transformation",
        fit);
    entry.residual = std::max({fit.residual, sep.form_residual, sep.symplectic_residual});
    if (entry.residual > kCertificateTolerance) {
        entry.status = AuditStatus::Failed;
    }
    const auto [cross, squares] = cross_and_square_parts(sep.form);
    entry.diagnostics = {{"rotation_rate", sep.rotation},
                         {"potential", sep.potential},
                         {"symplectic_residual", sep.symplectic_residual},
                         {"form_residual", sep.form_residual},
                         {"summand_commutator", commutator_residual(cross, squares)}};
    entry.notes.push_back("rotation rate is the degenerate mode frequency sqrt(2) omega");
    entry.notes.push_back("the certifying transformation is not the printed primed map");
    return entry;
}

Complex branch_root(const Parameters& params, int branch)
{
    return static_cast<double>(branch) * std::sqrt(mode_frequencies(params).omega0_sq);
}

AuditEntry complex_canonicity_entry(const Parameters& params)
{
    double residual = 0.0;
    const Matrix4c j = standard_symplectic<Complex>();
    for (int branch : {1, -1}) {
        const Matrix4c t = complex_separation_transform(params, branch);
        residual = std::max(residual, (t * j * t.transpose() - j).cwiseAbs().maxCoeff());
    }
    AuditEntry entry;
    entry.id = "complex-separation-canonicity";
    entry.description = "tilde coordinates of the complex chart are canonical (complex bilinear bracket)";
    entry.residual = residual;
    entry.status = residual < kSeparationCanonicity ? AuditStatus::Verified : AuditStatus::Failed;
    entry.diagnostics.push_back({"tolerance", kSeparationCanonicity});
    if (params.m != 1.0) {
        entry.notes.push_back("composed with the canonical rescaling q -> q/sqrt(m), p -> sqrt(m) p");
    }
    return entry;
}

AuditEntry complex_form_entry(const Parameters& params, int branch)
{
    const Matrix4c t = complex_separation_transform(params, branch);
    const Matrix4c pulled = t.transpose() * complex_chart_hamiltonian(params) * t;
    const Complex w0 = branch_root(params, branch);
    // Coordinates ordered (tq1, tp1, tq2, tp2).
    const std::vector<Monomial> basis = {
        {0, 3, "tq1*tp2", -w0.real()},
        {2, 1, "tq2*tp1", w0.real()},
        {0, 1, "tq1*tp1", -w0.imag()},
        {2, 3, "tq2*tp2", -w0.imag()},
    };
    const MonomialFit fit = fit_monomials(pulled.real(), basis);
    AuditEntry entry = fitted_entry(
        branch > 0 ? "complex-separation-form" : "complex-separation-form-other-branch",
        "complex chart Hamiltonian pulled back to rotation plus dilatation", fit);
    const double imaginary = pulled.imag().cwiseAbs().maxCoeff();
    entry.residual = std::max(fit.residual, imaginary);
    if (entry.residual > kCertificateTolerance) {
        entry.status = AuditStatus::Failed;
    }
    entry.diagnostics = {{"branch", static_cast<double>(branch)},
                         {"omega0_re", w0.real()},
                         {"omega0_im", w0.imag()},
                         {"imaginary_part", imaginary}};
    return entry;
}

AuditEntry complex_commutation_entry(const Parameters& params)
{
    Eigen::Matrix4d rotation = Eigen::Matrix4d::Zero();
    rotation(0, 3) = rotation(3, 0) = 0.5;
    rotation(2, 1) = rotation(1, 2) = -0.5;
    Eigen::Matrix4d dilatation = Eigen::Matrix4d::Zero();
    dilatation(0, 1) = dilatation(1, 0) = 0.5;
    dilatation(2, 3) = dilatation(3, 2) = 0.5;

    const Complex w0 = branch_root(params, 1);
    const Matrix4c t = complex_separation_transform(params, 1);
    const Eigen::Matrix4d pulled = (t.transpose() * complex_chart_hamiltonian(params) * t).real();
    const Eigen::Matrix4d split = -w0.real() * rotation - w0.imag() * dilatation;

    AuditEntry entry;
    entry.id = "complex-separation-commutation";
    entry.description = "rotation and dilatation summands Poisson-commute and add up to H";
    entry.residual = std::max(commutator_residual(rotation, dilatation), max_abs(pulled - split));
    entry.status = entry.residual < kCanonicityTolerance ? AuditStatus::Verified : AuditStatus::Failed;
    entry.diagnostics = {{"commutator", commutator_residual(rotation, dilatation)},
                         {"split_residual", max_abs(pulled - split)}};
    return entry;
}

} // namespace

Eigen::Matrix4d degenerate_separation_transform(const Parameters& params)
{
    params.validate();
    const double mw = params.m * std::sqrt(params.omega_sq);
    Eigen::Matrix4d t;
    t << 1, 0, 0, 0,          //
        0, 1, -mw, 0,         //
        1, 0, 0, -1.0 / mw,   //
        0, 0, mw, 0;
    return t;
}

SeparatedForm degenerate_separated_form(const Parameters& params)
{
    if (classify_regime(params) != Regime::Degenerate) {
        throw UnsupportedRegime("the separated degenerate form needs regime (iv)");
    }
    const Eigen::Matrix4d k = degenerate_chart_form(params);
    const Eigen::Matrix4d j = standard_symplectic();
    const Eigen::Matrix4d identity = Eigen::Matrix4d::Identity();
    const Eigen::Matrix4d a = j * 2.0 * k;
    const double omega_sq = 2.0 * params.omega_sq;
    const double omega = std::sqrt(omega_sq);

    // A = S + N with S^2 = -Omega^2, N^2 = 0 and [S, N] = 0.
    const Eigen::Matrix4d s = a + a * (a * a + omega_sq * identity) / (2.0 * omega_sq);
    const Eigen::Matrix4d n = a - s;
    const Eigen::Matrix4d k_s = -j * s / 2.0;
    const Eigen::Matrix4d j_inv = -j;

    int pick = 0;
    for (int i = 1; i < 4; ++i) {
        if ((n * identity.col(i)).norm() > (n * identity.col(pick)).norm()) {
            pick = i;
        }
    }
    Eigen::Vector4d u1 = identity.col(pick);
    const Eigen::Vector4d w = n * s * u1;
    u1 -= u1.dot(k_s * u1) / (2.0 * u1.dot(k_s * w)) * w;
    const Eigen::Vector4d u2 = -s * u1 / omega;
    const double scale = u1.dot(j_inv * (n * u1)) / (2.0 * j_inv(0, 1));

    Eigen::Matrix4d t;
    t.col(0) = u1;
    t.col(1) = n * u1 / (2.0 * scale);
    t.col(2) = u2;
    t.col(3) = n * u2 / (2.0 * scale);

    FamilyFit family = fit_family(t.transpose() * k * t);
    // (Q, P) -> (c Q, P / c) keeps the rotation and moves the potential to m omega^2.
    const double target = params.m * params.omega_sq;
    if (family.potential > 0.0) {
        const double c = std::sqrt(target / family.potential);
        t = t * Eigen::Vector4d(c, 1.0 / c, c, 1.0 / c).asDiagonal();
    }

    SeparatedForm out;
    out.transform = t;
    out.form = t.transpose() * k * t;
    family = fit_family(out.form);
    out.rotation = family.rotation;
    out.potential = family.potential;
    out.form_residual = family.residual;
    out.symplectic_residual = max_abs(t * j * t.transpose() - j);
    return out;
}

Matrix4c complex_separation_transform(const Parameters& params, int branch)
{
    if (classify_regime(params) != Regime::ComplexPair) {
        throw UnsupportedRegime("the complex separation transform needs regime (v)");
    }
    if (branch != 1 && branch != -1) {
        throw InvalidArgument("branch must be +1 or -1");
    }
    const Complex w0 = branch_root(params, branch);
    const Complex root = std::sqrt(w0);
    const Complex root_bar = std::sqrt(std::conj(w0));
    const Complex i(0.0, 1.0);

    Matrix4c t;
    t.row(0) = Vec4<Complex>(1.0, -i, i, -1.0).transpose() / (2.0 * root_bar);
    t.row(1) = root_bar / 2.0 * Vec4<Complex>(-i, 1.0, 1.0, -i).transpose();
    t.row(2) = Vec4<Complex>(1.0, i, -i, -1.0).transpose() / (2.0 * root);
    t.row(3) = root / 2.0 * Vec4<Complex>(i, 1.0, 1.0, i).transpose();

    const double sm = std::sqrt(params.m);
    const Vec4<Complex> rescale(1.0 / sm, sm, 1.0 / sm, sm);
    return rescale.asDiagonal() * t;
}

Matrix4c complex_chart_hamiltonian(const Parameters& params)
{
    const Complex w0_sq = mode_frequencies(params).omega0_sq;
    const double m = params.m;
    return Vec4<Complex>(m * std::conj(w0_sq) / 2.0, 1.0 / (2.0 * m), m * w0_sq / 2.0, 1.0 / (2.0 * m)).asDiagonal();
}

std::vector<AuditEntry> audit_separation(const Parameters& params)
{
    switch (classify_regime(params)) {
    case Regime::Degenerate:
        return {degenerate_canonicity_entry(params), degenerate_pullback_entry(params),
                degenerate_separated_entry(params)};
    case Regime::ComplexPair:
        return {complex_canonicity_entry(params), complex_form_entry(params, 1), complex_form_entry(params, -1),
                complex_commutation_entry(params)};
    default: break;
    }
    throw UnsupportedRegime("separation transforms apply to regimes (iv) and (v)");
}

} // namespace quartic
