#include "cgw/frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "cgw/combinatorics.hpp"
#include "cgw/meander.hpp"
#include "cgw/weights.hpp"

namespace cgw {

const char* to_string(SleType t)
{
    switch (t) {
    case SleType::contractible: return "contractible";
    case SleType::propagating: return "propagating";
    case SleType::mixed: return "mixed";
    case SleType::indeterminate: return "indeterminate";
    }
    return "?";
}

const char* to_string(CftType t)
{
    switch (t) {
    case CftType::two_leg: return "two_leg";
    case CftType::identity: return "identity";
    case CftType::neither: return "neither";
    case CftType::undefined_identity: return "undefined_identity";
    case CftType::indeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

bool odd_eight_over_kappa(double kappa)
{
    const double r = 8.0 / kappa;
    const long k = std::lround(r);
    return std::abs(r - k) < 1e-9 && k % 2 == 1;
}

LadderConfig frobenius_ladder(double kappa, LadderConfig ladder)
{
    if (odd_eight_over_kappa(kappa)) ladder.series_terms = std::max(ladder.series_terms, 4);
    const auto terms = collapse_dictionary(kappa, ladder).size();
    ladder.points = std::max(ladder.points, static_cast<int>(terms) + 3);
    return ladder;
}

}  // namespace

FrobeniusFit component_fit(const SeriesFit& fit, int j, double kappa)
{
    FrobeniusFit f;
    f.A0 = fit.coefficient('A', 0, j);
    f.A1 = fit.coefficient('A', 1, j);
    f.B0 = fit.coefficient('B', 0, j);
    f.B1 = fit.coefficient('B', 1, j);
    f.C0 = fit.coefficient('C', 0, j);
    for (const auto& t : fit.terms) f.has_log = f.has_log || t.log;
    f.exponent_A = 1.0 - 6.0 / kappa;
    f.exponent_B = 2.0 / kappa;
    f.raw.terms = fit.terms;
    f.raw.deltas = fit.deltas;
    f.raw.values = fit.values.col(j);
    f.raw.coef = fit.coef.col(j);
    f.scale = f.raw.values.cwiseAbs().maxCoeff();
    // per-component residual
    f.raw.residual = fit_series(fit.deltas, f.raw.values, fit.terms).residual;
    f.residual = f.raw.residual;
    return f;
}

std::vector<FrobeniusFit> fit_expansion_vec(const VecEvaluator& F, const std::vector<double>& x, int i, double kappa,
                                            const LadderConfig& ladder)
{
    auto lim = collapse_limit_vec(F, x, i, kappa, frobenius_ladder(kappa, ladder));
    std::vector<FrobeniusFit> out;
    for (Eigen::Index j = 0; j < lim.fit.values.cols(); ++j) out.push_back(component_fit(lim.fit, static_cast<int>(j), kappa));
    return out;
}

FrobeniusFit fit_expansion(const Evaluator& F, const std::vector<double>& x, int i, double kappa,
                           const LadderConfig& ladder)
{
    VecEvaluator G = [&](const std::vector<double>& y) {
        Eigen::VectorXd v(1);
        v(0) = F(y);
        return v;
    };
    return fit_expansion_vec(G, x, i, kappa, ladder).front();
}

FrobeniusFit combine_fits(const std::vector<FrobeniusFit>& fits, const Eigen::VectorXd& c)
{
    if (fits.empty() || static_cast<Eigen::Index>(fits.size()) != c.size())
        throw std::invalid_argument("combine_fits: size mismatch");
    Eigen::MatrixXd vals = Eigen::MatrixXd::Zero(fits[0].raw.values.rows(), 1);
    for (size_t j = 0; j < fits.size(); ++j) vals += c(static_cast<Eigen::Index>(j)) * fits[j].raw.values;
    const double kappa = 2.0 / fits[0].exponent_B;
    return component_fit(fit_series(fits[0].raw.deltas, vals, fits[0].raw.terms), 0, kappa);
}

ExponentFit fit_leading_exponent(const Evaluator& F, const std::vector<double>& x, int i, double kappa, double p_lo,
                                 double p_hi, int points)
{
    const auto deltas = ladder(0.1 * local_gap(x, i), points);
    std::vector<double> vals(deltas.size());
    for (size_t k = 0; k < deltas.size(); ++k) vals[k] = F(collapse_points(x, i, deltas[k]));
    const double e = 8.0 / kappa - 1.0;
    std::vector<SeriesTerm> terms;
    for (int m = 0; m < 3; ++m) terms.push_back({double(m), false, 'A', m});
    for (int m = 0; m < 3; ++m)
        if (std::abs(e + m - std::round(e + m)) > 1e-3 || e + m > 2.5) terms.push_back({e + m, false, 'B', m});
    auto objective = [&](double p) {
        Eigen::MatrixXd g(static_cast<Eigen::Index>(deltas.size()), 1);
        for (size_t k = 0; k < deltas.size(); ++k) g(static_cast<Eigen::Index>(k), 0) = vals[k] * std::pow(deltas[k], -p);
        return std::log(fit_series(deltas, g, terms).residual + 1e-300);
    };
    // the residual is multimodal in p: scan, then polish inside the best cell
    const int cells = 60;
    const double h = (p_hi - p_lo) / cells;
    int best = 0;
    double best_val = objective(p_lo);
    for (int c = 1; c <= cells; ++c) {
        const double v = objective(p_lo + c * h);
        if (v < best_val) best_val = v, best = c;
    }
    const double lo = std::max(p_lo, p_lo + (best - 1) * h), hi = std::min(p_hi, p_lo + (best + 1) * h);
    auto r = boost::math::tools::brent_find_minima(objective, lo, hi, 40);
    return {r.first, std::exp(r.second)};
}

int zero_test(double value, double scale, const Thresholds& th)
{
    const double v = std::abs(value), s = std::abs(scale);
    if (v <= th.zero_rel * s) return 0;
    if (v > th.indeterminate_band * th.zero_rel * s) return 1;
    return -1;
}

SleType sle_type_from_coefficients(int n_arcs, int i, const Eigen::VectorXd& a, const Thresholds& th)
{
    const auto ds = enumerate_connectivities(n_arcs);
    const double scale = a.cwiseAbs().maxCoeff();
    bool on_zero = true, off_zero = true, unsure = false;
    for (size_t s = 0; s < ds.size(); ++s) {
        const int z = zero_test(a(static_cast<Eigen::Index>(s)), scale, th);
        if (z < 0) unsure = true;
        if (z != 0) (contains_interval(ds[s], i) ? on_zero : off_zero) = false;
    }
    if (unsure) return SleType::indeterminate;
    if (off_zero && !on_zero) return SleType::contractible;
    if (on_zero && !off_zero) return SleType::propagating;
    if (!on_zero && !off_zero) return SleType::mixed;
    return SleType::indeterminate;
}

CftType cft_type_from_fit(const FrobeniusFit& fit, double kappa, const Thresholds& th)
{
    const double d0 = fit.raw.deltas.empty() ? 1.0 : fit.raw.deltas.front();
    const double e = 8.0 / kappa - 1.0;
    // compare each series at the widest ladder separation
    const int a = zero_test(fit.A0, fit.scale, th);
    const int b = zero_test(fit.B0 * std::pow(d0, e), fit.scale, th);
    const bool odd = odd_eight_over_kappa(kappa);
    int c = 0;
    if (odd) {
        const double ref = std::max({std::abs(fit.A0), std::abs(fit.B0), std::abs(fit.C0)});
        Thresholds lt = th;
        lt.zero_rel = th.log_zero_rel;
        c = zero_test(fit.C0, ref, lt);
    }
    if (a < 0 || b < 0 || c < 0) return CftType::indeterminate;
    if (a == 0 && c == 0) return CftType::two_leg;
    if (odd) return CftType::undefined_identity;
    if (b == 0) return CftType::identity;
    return CftType::neither;
}

IntervalClassification classify_interval(int n_arcs, const Evaluator& F, const std::vector<double>& x, int i,
                                         double kappa, const LadderConfig& ladder, const Thresholds& th)
{
    IntervalClassification out;
    out.coefficients = decompose(n_arcs, F, x, kappa, ladder);
    out.sle_type = sle_type_from_coefficients(n_arcs, i, out.coefficients, th);
    out.fit = fit_expansion(F, x, i, kappa, ladder);
    out.cft_type = cft_type_from_fit(out.fit, kappa, th);
    return out;
}

ConditionedLimits conditioned_probability_limits(int n_arcs, const Eigen::VectorXd& a, const std::vector<double>& x,
                                                 int i, double kappa, const QuadConfig& cfg,
                                                 const LadderConfig& ladder)
{
    if (n_arcs < 2) throw std::invalid_argument("conditioned limits need N >= 2");
    const auto ds = enumerate_connectivities(n_arcs);
    const auto C = static_cast<Eigen::Index>(ds.size());
    if (a.size() != C) throw std::invalid_argument("coefficient vector has the wrong length");
    ConditionedLimits out;
    for (const auto& d : ds) out.contractible.push_back(contains_interval(d, i));

    // Pi on the ladder, then P = a Pi / sum a Pi componentwise
    const LadderConfig lc = frobenius_ladder(kappa, ladder);
    const auto deltas = cgw::ladder(lc.delta0_frac * local_gap(x, i), lc.points + 2);
    Eigen::MatrixXd Pi(static_cast<Eigen::Index>(deltas.size()), C), P(static_cast<Eigen::Index>(deltas.size()), C);
    const double pw = 6.0 / kappa - 1.0;
    for (size_t k = 0; k < deltas.size(); ++k) {
        Eigen::VectorXd w = solve_weights(n_arcs, kappa, collapse_points(x, i, deltas[k]), cfg).values;
        Eigen::VectorXd t = a.cwiseProduct(w);
        P.row(static_cast<Eigen::Index>(k)) = (t / t.sum()).transpose();
        Pi.row(static_cast<Eigen::Index>(k)) = (w * std::pow(deltas[k], pw)).transpose();
    }
    auto terms = collapse_dictionary(kappa, lc);
    const double e = 8.0 / kappa - 1.0;
    if (!odd_eight_over_kappa(kappa) && std::abs(2 * e - std::round(2 * e)) > 1e-3) terms.push_back({2 * e, false, 'D', 0});
    auto pfit = fit_series(deltas, P, terms);
    out.residual = pfit.residual;
    out.limits = pfit.coef.row(0).transpose();

    auto wfit = fit_series(deltas, Pi, collapse_dictionary(kappa, lc));
    out.lambda_ratios = Eigen::VectorXd::Zero(C);
    double lsum = 0;
    for (Eigen::Index s = 0; s < C; ++s)
        if (!out.contractible[static_cast<size_t>(s)]) lsum += a(s) * wfit.coefficient('B', 0, static_cast<int>(s));
    for (Eigen::Index s = 0; s < C; ++s)
        if (!out.contractible[static_cast<size_t>(s)] && lsum != 0)
            out.lambda_ratios(s) = a(s) * wfit.coefficient('B', 0, static_cast<int>(s)) / lsum;

    // oracle: Q_sigma = a_sigma Xi_sigma / sum over contractible sigma, Xi from the reduced system
    std::vector<double> reduced;
    for (size_t k = 0; k < x.size(); ++k)
        if (static_cast<int>(k) != i - 1 && static_cast<int>(k) != i) reduced.push_back(x[k]);
    const auto anchored = enumerate_connectivities(n_arcs, i);
    const Eigen::VectorXd xi = reduced_weights(n_arcs, i, kappa, reduced, cfg);
    out.reduced_q = Eigen::VectorXd::Zero(C);
    double qsum = 0;
    for (Eigen::Index t = 0; t < xi.size(); ++t) {
        const int s = index_of(ds, anchored[static_cast<size_t>(t)]) - 1;
        out.reduced_q(s) = a(s) * xi(t);
        qsum += out.reduced_q(s);
    }
    if (qsum == 0) throw NumericalError("reduced partition function vanishes");
    out.reduced_q /= qsum;
    return out;
}

}  // namespace cgw
