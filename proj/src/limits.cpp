#include "cgw/limits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cgw/meander.hpp"

namespace cgw {

namespace {

bool near_integer(double v, int& r)
{
    r = static_cast<int>(std::lround(v));
    return std::abs(v - r) < 1e-9;
}

}  // namespace

std::vector<SeriesTerm> collapse_dictionary(double kappa, const LadderConfig& cfg)
{
    const double r_real = 8.0 / kappa;
    int r = 0;
    const bool integral = near_integer(r_real, r) && r >= 1;
    const int m = std::max(1, cfg.series_terms);
    std::vector<SeriesTerm> terms;
    int a_count = m;
    double e = r_real - 1.0;
    if (integral) {
        // the A-series stops just below the B-series start
        a_count = std::min(m, std::max(1, r - 1));
        e = r - 1;
    }
    for (int k = 0; k < a_count; ++k) terms.push_back({double(k), false, 'A', k});
    for (int k = 0; k < m; ++k) terms.push_back({e + k, false, 'B', k});
    const bool logs = cfg.log_terms || (integral && r % 2 == 1);
    if (logs)
        for (int k = 0; k < std::max(1, m - 1); ++k) terms.push_back({e + k, true, 'C', k});
    if (!integral) {
        // an A and a B power may coincide numerically when 8/kappa is close to an integer
        std::sort(terms.begin(), terms.end(), [](const SeriesTerm& a, const SeriesTerm& b) {
            return a.power < b.power || (a.power == b.power && a.log < b.log);
        });
        for (size_t k = 1; k < terms.size(); ++k)
            if (!terms[k].log && !terms[k - 1].log && std::abs(terms[k].power - terms[k - 1].power) < 1e-3)
                throw std::domain_error("collapse dictionary is degenerate at this kappa");
    }
    return terms;
}

double SeriesFit::coefficient(char family, int order, int component) const
{
    for (size_t k = 0; k < terms.size(); ++k)
        if (terms[k].family == family && terms[k].order == order) return coef(static_cast<Eigen::Index>(k), component);
    return 0.0;
}

SeriesFit fit_series(const std::vector<double>& deltas, const Eigen::MatrixXd& values,
                     const std::vector<SeriesTerm>& terms)
{
    const auto rows = static_cast<Eigen::Index>(deltas.size());
    const auto cols = static_cast<Eigen::Index>(terms.size());
    if (rows < cols) throw std::invalid_argument("ladder shorter than the fit dictionary");
    if (values.rows() != rows) throw std::invalid_argument("ladder and values disagree in length");
    const double scale = *std::max_element(deltas.begin(), deltas.end());
    Eigen::MatrixXd A(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double t = deltas[static_cast<size_t>(i)] / scale;
        for (Eigen::Index k = 0; k < cols; ++k) {
            const auto& term = terms[static_cast<size_t>(k)];
            double v = std::pow(t, term.power);
            if (term.log) v *= std::log(t);
            A(i, k) = v;
        }
    }
    SeriesFit fit;
    fit.terms = terms;
    fit.deltas = deltas;
    fit.values = values;
    Eigen::MatrixXd c = A.colPivHouseholderQr().solve(values);
    Eigen::MatrixXd res = A * c - values;
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
        const double mag = values.col(j).cwiseAbs().maxCoeff();
        fit.residual = std::max(fit.residual, mag > 0 ? res.col(j).cwiseAbs().maxCoeff() / mag : 0.0);
    }
    // undo the rescaling t = delta/scale, including the log shift
    for (Eigen::Index k = 0; k < cols; ++k) {
        const auto& term = terms[static_cast<size_t>(k)];
        c.row(k) /= std::pow(scale, term.power);
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
        const auto& term = terms[static_cast<size_t>(k)];
        if (!term.log) continue;
        // C t^e log t = C s^-e delta^e (log delta - log s)
        for (Eigen::Index q = 0; q < cols; ++q) {
            const auto& other = terms[static_cast<size_t>(q)];
            if (!other.log && std::abs(other.power - term.power) < 1e-12)
                c.row(q) -= std::log(scale) * c.row(k);
        }
    }
    fit.coef = std::move(c);
    return fit;
}

std::vector<double> ladder(double delta0, int points)
{
    std::vector<double> d(static_cast<size_t>(points));
    for (int k = 0; k < points; ++k) d[static_cast<size_t>(k)] = std::ldexp(delta0, -k);
    return d;
}

std::vector<double> collapse_points(const std::vector<double>& x, int i, double delta)
{
    if (i < 1 || i >= static_cast<int>(x.size())) throw std::invalid_argument("collapse interval out of range");
    std::vector<double> y = x;
    y[static_cast<size_t>(i)] = y[static_cast<size_t>(i - 1)] + delta;
    return y;
}

double local_gap(const std::vector<double>& x, int i)
{
    const auto a = static_cast<size_t>(i - 1);
    double g = x[a + 1] - x[a];
    if (a > 0) g = std::min(g, x[a] - x[a - 1]);
    if (a + 2 < x.size()) g = std::min(g, x[a + 2] - x[a]);
    return g;
}

LimitResult collapse_limit_vec(const VecEvaluator& F, const std::vector<double>& x, int i, double kappa,
                               const LadderConfig& cfg)
{
    const auto deltas = ladder(cfg.delta0_frac * local_gap(x, i), cfg.points);
    const double pw = 6.0 / kappa - 1.0;
    Eigen::MatrixXd vals;
    for (size_t k = 0; k < deltas.size(); ++k) {
        Eigen::VectorXd v = F(collapse_points(x, i, deltas[k])) * std::pow(deltas[k], pw);
        if (k == 0) vals.resize(static_cast<Eigen::Index>(deltas.size()), v.size());
        vals.row(static_cast<Eigen::Index>(k)) = v.transpose();
    }
    LimitResult out;
    out.fit = fit_series(deltas, vals, collapse_dictionary(kappa, cfg));
    out.value = out.fit.coef.row(0).transpose();
    return out;
}

double collapse_limit(const Evaluator& F, const std::vector<double>& x, int i, double kappa,
                      const LadderConfig& cfg)
{
    VecEvaluator G = [&](const std::vector<double>& y) {
        Eigen::VectorXd v(1);
        v(0) = F(y);
        return v;
    };
    return collapse_limit_vec(G, x, i, kappa, cfg).value(0);
}

double collapse_at_infinity(const Evaluator& F, const std::vector<double>& inner, double kappa,
                            const LadderConfig& cfg)
{
    if (inner.empty()) throw std::invalid_argument("need interior points");
    double span = std::max(std::abs(inner.front()), std::abs(inner.back()));
    span = std::max(span, inner.back() - inner.front());
    // R ladder R_k = R0 2^k, fitted in the variable 1/R
    const double R0 = 10.0 * std::max(span, 1.0);
    const auto s = ladder(1.0 / R0, cfg.points);
    const double pw = 6.0 / kappa - 1.0;
    Eigen::MatrixXd vals(static_cast<Eigen::Index>(s.size()), 1);
    for (size_t k = 0; k < s.size(); ++k) {
        const double R = 1.0 / s[k];
        std::vector<double> y;
        y.reserve(inner.size() + 2);
        y.push_back(-R);
        y.insert(y.end(), inner.begin(), inner.end());
        y.push_back(R);
        vals(static_cast<Eigen::Index>(k), 0) = std::pow(2.0 * R, pw) * F(y);
    }
    return fit_series(s, vals, collapse_dictionary(kappa, cfg)).coef(0, 0);
}

namespace {

Eigen::VectorXd apply_rec(const ArcDiagram& d, const VecEvaluator& F, const std::vector<double>& x, double kappa,
                          const LadderConfig& cfg, const std::vector<int>& order, size_t step)
{
    const double pw = 6.0 / kappa - 1.0;
    if (d.n_arcs == 1) return F(x) * std::pow(x[1] - x[0], pw);

    int a = -1;
    if (step < order.size()) {
        a = order[step];
        if (a < 0 || a + 1 >= static_cast<int>(x.size()) || d.pairing[static_cast<size_t>(a)] != a + 1)
            throw std::invalid_argument("collapse order does not name a nearest-neighbour arc");
    } else {
        for (int k = 0; k + 1 < static_cast<int>(x.size()); ++k)
            if (d.pairing[static_cast<size_t>(k)] == k + 1) {
                a = k;
                break;
            }
    }
    const auto ua = static_cast<size_t>(a);
    std::vector<double> reduced;
    reduced.reserve(x.size() - 2);
    for (size_t k = 0; k < x.size(); ++k)
        if (k != ua && k != ua + 1) reduced.push_back(x[k]);
    // width used when the pair sits at an end of the point list
    const double edge = ua == 0 ? x[2] - x[0] : x[ua + 1] - x[ua - 1];

    // G(y) = lim delta^{6/kappa-1} F(y with p, p + delta inserted at slot a).
    // The limit does not depend on p, so the pair follows its current neighbours.
    VecEvaluator G = [&, a, edge](const std::vector<double>& y) -> Eigen::VectorXd {
        const auto sa = static_cast<size_t>(a);
        double p = 0, gap = 0;
        if (sa > 0 && sa < y.size()) {
            p = y[sa - 1] + 0.5 * (y[sa] - y[sa - 1]);
            gap = 0.5 * (y[sa] - y[sa - 1]);
        } else if (sa == 0) {
            p = y[0] - edge;
            gap = edge;
        } else {
            p = y.back() + edge;
            gap = edge;
        }
        if (!(gap > 0)) throw std::domain_error("collapse neighbours are not ordered");
        std::vector<double> full;
        full.reserve(y.size() + 2);
        for (size_t k = 0; k < sa; ++k) full.push_back(y[k]);
        full.push_back(p);
        full.push_back(p);
        for (size_t k = sa; k < y.size(); ++k) full.push_back(y[k]);
        const auto deltas = ladder(cfg.delta0_frac * gap, cfg.points);
        Eigen::MatrixXd vals;
        for (size_t k = 0; k < deltas.size(); ++k) {
            full[sa + 1] = p + deltas[k];
            Eigen::VectorXd v = F(full) * std::pow(deltas[k], pw);
            if (k == 0) vals.resize(static_cast<Eigen::Index>(deltas.size()), v.size());
            vals.row(static_cast<Eigen::Index>(k)) = v.transpose();
        }
        return fit_series(deltas, vals, collapse_dictionary(kappa, cfg)).coef.row(0).transpose();
    };
    return apply_rec(remove_arc(d, a, a + 1), G, reduced, kappa, cfg, order, step + 1);
}

}  // namespace

Eigen::VectorXd apply_L_vec(const ArcDiagram& sigma, const VecEvaluator& F, const std::vector<double>& x,
                            double kappa, const LadderConfig& cfg, const std::vector<int>& order)
{
    if (static_cast<int>(x.size()) != 2 * sigma.n_arcs) throw std::invalid_argument("point count mismatch");
    return apply_rec(sigma, F, x, kappa, cfg, order, 0);
}

double apply_L(const ArcDiagram& sigma, const Evaluator& F, const std::vector<double>& x, double kappa,
               const LadderConfig& cfg, const std::vector<int>& order)
{
    VecEvaluator G = [&](const std::vector<double>& y) {
        Eigen::VectorXd v(1);
        v(0) = F(y);
        return v;
    };
    return apply_L_vec(sigma, G, x, kappa, cfg, order)(0);
}

}  // namespace cgw
