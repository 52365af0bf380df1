#include "cgw/weights.hpp"

#include <cmath>
#include <sstream>

#include "cgw/combinatorics.hpp"
#include "cgw/config.hpp"
#include "cgw/meander.hpp"

namespace cgw {

namespace {

void check_arcs(int n_arcs)
{
    if (n_arcs < 1 || n_arcs > kMaxMeanderArcs) throw std::invalid_argument("n_arcs out of range");
}

void check_points(int n_arcs, const std::vector<double>& x)
{
    if (static_cast<int>(x.size()) != 2 * n_arcs) throw std::invalid_argument("expected 2N points");
}

Eigen::VectorXd scalar(double v)
{
    Eigen::VectorXd out(1);
    out(0) = v;
    return out;
}

double condition_number(const Eigen::MatrixXd& m)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    return s(s.size() - 1) > 0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
}

// |det M| relative to the product of row norms (Hadamard bound).
double relative_det(const Eigen::MatrixXd& m)
{
    double bound = 1;
    for (Eigen::Index r = 0; r < m.rows(); ++r) bound *= m.row(r).norm();
    return bound > 0 ? std::abs(m.determinant()) / bound : 0.0;
}

Eigen::VectorXd solve_checked(int n_arcs, double kappa, const Eigen::VectorXd& F, double* cond)
{
    const auto M = build_meander_matrix(n_arcs, fugacity(kappa));
    if (relative_det(M.entries) < kSingularDetRel) {
        std::ostringstream os;
        os << "meander matrix M_" << n_arcs << " is singular at kappa = " << kappa;
        throw SingularMeander(os.str());
    }
    if (cond) *cond = condition_number(M.entries);
    return M.entries.partialPivLu().solve(F);
}

}  // namespace

Eigen::VectorXd basis_values(int n_arcs, double kappa, const std::vector<double>& x, const QuadConfig& cfg)
{
    check_arcs(n_arcs);
    check_points(n_arcs, x);
    const auto ds = enumerate_connectivities(n_arcs);
    Eigen::VectorXd v(static_cast<Eigen::Index>(ds.size()));
    parallel_for(static_cast<int>(ds.size()), [&](int t) { v(t) = basis_value(ds[static_cast<size_t>(t)], kappa, x, cfg); });
    return v;
}

VecEvaluator basis_evaluator(int n_arcs, double kappa, const QuadConfig& cfg)
{
    return [=](const std::vector<double>& x) { return basis_values(n_arcs, kappa, x, cfg); };
}

WeightVector solve_weights(int n_arcs, double kappa, const std::vector<double>& x, const QuadConfig& cfg)
{
    check_arcs(n_arcs);
    if (auto ex = is_exceptional(kappa, n_arcs)) {
        std::ostringstream os;
        os << "kappa = " << kappa << " is the exceptional speed kappa_{" << ex->q << "," << ex->q_prime
           << "}; use the regularized path";
        throw SingularMeander(os.str());
    }
    WeightVector w;
    w.values = solve_checked(n_arcs, kappa, basis_values(n_arcs, kappa, x, cfg), &w.condition);
    return w;
}

VecEvaluator weights_evaluator(int n_arcs, double kappa, const QuadConfig& cfg)
{
    return [=](const std::vector<double>& x) { return solve_weights(n_arcs, kappa, x, cfg).values; };
}

WeightVector regularized_weights(int n_arcs, double kappa, const std::vector<double>& x, double dk,
                                 const QuadConfig& cfg)
{
    check_arcs(n_arcs);
    const auto C = static_cast<Eigen::Index>(catalan_small(n_arcs));
    const double ks[4] = {kappa + dk, kappa - dk, kappa + 0.5 * dk, kappa - 0.5 * dk};
    Eigen::VectorXd g[4];
    for (int k = 0; k < 4; ++k) g[k] = solve_checked(n_arcs, ks[k], basis_values(n_arcs, ks[k], x, cfg), nullptr);
    WeightVector w;
    w.values.resize(C);
    // symmetric Richardson step as in kappa_limit, componentwise
    w.values = (4.0 * 0.5 * (g[2] + g[3]) - 0.5 * (g[0] + g[1])) / 3.0;
    w.provenance = WeightProvenance::limit_regularized;
    w.condition = std::numeric_limits<double>::infinity();
    return w;
}

Eigen::MatrixXd decompose_vec(int n_arcs, const VecEvaluator& F, const std::vector<double>& x, double kappa,
                              const LadderConfig& ladder)
{
    check_arcs(n_arcs);
    check_points(n_arcs, x);
    const auto ds = enumerate_connectivities(n_arcs);
    std::vector<Eigen::VectorXd> rows(ds.size());
    parallel_for(static_cast<int>(ds.size()),
                 [&](int s) { rows[static_cast<size_t>(s)] = apply_L_vec(ds[static_cast<size_t>(s)], F, x, kappa, ladder); });
    Eigen::MatrixXd out(static_cast<Eigen::Index>(ds.size()), rows.front().size());
    for (size_t s = 0; s < ds.size(); ++s) out.row(static_cast<Eigen::Index>(s)) = rows[s].transpose();
    return out;
}

Eigen::VectorXd decompose(int n_arcs, const Evaluator& F, const std::vector<double>& x, double kappa,
                          const LadderConfig& ladder)
{
    VecEvaluator G = [&](const std::vector<double>& y) { return scalar(F(y)); };
    return decompose_vec(n_arcs, G, x, kappa, ladder).col(0);
}

Eigen::MatrixXd limit_vectors(int n_arcs, const VecEvaluator& F, const std::vector<double>& x, double kappa,
                              const LadderConfig& ladder)
{
    return decompose_vec(n_arcs, F, x, kappa, ladder);
}

CrossingDistribution crossing_from_coefficients(int n_arcs, const Eigen::VectorXd& a, double kappa,
                                                const std::vector<double>& x, const QuadConfig& cfg)
{
    CrossingDistribution out;
    out.coefficients = a;
    out.weights = solve_weights(n_arcs, kappa, x, cfg).values;
    if (a.size() != out.weights.size()) throw std::invalid_argument("coefficient vector has the wrong length");
    Eigen::VectorXd terms = a.cwiseProduct(out.weights);
    out.partition_value = terms.sum();
    if (out.partition_value == 0 || !std::isfinite(out.partition_value))
        throw NumericalError("partition function vanishes at x; crossing probabilities undefined");
    out.probs = terms / out.partition_value;
    for (Eigen::Index s = 0; s < out.probs.size(); ++s)
        if (out.probs(s) < 0) {
            std::ostringstream os;
            os << "P_" << (s + 1) << " = " << out.probs(s) << " is negative";
            out.warnings.push_back(os.str());
        }
    return out;
}

CrossingDistribution crossing_probabilities(int n_arcs, const Evaluator& F, const std::vector<double>& x,
                                            double kappa, const QuadConfig& cfg, const LadderConfig& ladder)
{
    Eigen::VectorXd a = n_arcs == 1 ? scalar(apply_L(enumerate_connectivities(1)[0], F, x, kappa, ladder))
                                    : decompose(n_arcs, F, x, kappa, ladder);
    auto out = crossing_from_coefficients(n_arcs, a, kappa, x, cfg);
    out.direct_value = F(x);
    return out;
}

ThetaConstruction build_theta(int n_arcs, int sigma, int interval, double kappa, const QuadConfig& cfg)
{
    if (n_arcs < 2) throw std::invalid_argument("Theta needs at least two arcs");
    check_arcs(n_arcs);
    const int C1 = static_cast<int>(catalan_small(n_arcs - 1));
    if (sigma < 1 || sigma > C1) throw std::invalid_argument("sigma must lie in 1..C_{N-1}");
    if (interval < 1 || interval > 2 * n_arcs) throw std::invalid_argument("interval out of range");
    if (is_exceptional(kappa, n_arcs - 1)) throw SingularMeander("M_{N-1} is singular at this kappa");

    const auto ds = enumerate_connectivities(n_arcs, interval);
    const double n = fugacity(kappa);
    Eigen::MatrixXd M(C1, C1);
    for (int a = 0; a < C1; ++a)
        for (int b = 0; b < C1; ++b)
            M(a, b) = std::pow(n, loop_count(ds[static_cast<size_t>(a)], ds[static_cast<size_t>(b)]) - 1);
    if (relative_det(M) < kSingularDetRel) throw SingularMeander("M_{N-1} is numerically singular");

    ThetaConstruction th;
    th.n_arcs = n_arcs;
    th.interval = interval;
    th.sigma = sigma;
    th.b = M.inverse().row(sigma - 1).transpose();
    th.expected_image = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ds.size()));
    th.expected_image(sigma - 1) = n;
    for (size_t r = static_cast<size_t>(C1); r < ds.size(); ++r)
        if (index_of(ds, cut_map_chi(ds[r], interval)) == sigma) th.expected_image(static_cast<Eigen::Index>(r)) = 1;

    std::vector<ArcDiagram> head(ds.begin(), ds.begin() + C1);
    Eigen::VectorXd b = th.b;
    th.evaluate = [head, b, kappa, cfg](const std::vector<double>& x) {
        double s = 0;
        for (size_t t = 0; t < head.size(); ++t)
            if (b(static_cast<Eigen::Index>(t)) != 0) s += b(static_cast<Eigen::Index>(t)) * basis_value(head[t], kappa, x, cfg);
        return s;
    };
    return th;
}

Eigen::VectorXd reduced_weights(int n_arcs, int interval, double kappa, const std::vector<double>& reduced_x,
                                const QuadConfig& cfg)
{
    if (n_arcs < 2) throw std::invalid_argument("reduced system needs N >= 2");
    if (interval < 1 || interval >= 2 * n_arcs) throw std::invalid_argument("interval must not wrap");
    const auto ds = enumerate_connectivities(n_arcs, interval);
    const auto small = enumerate_connectivities(n_arcs - 1);
    const auto C1 = static_cast<Eigen::Index>(small.size());
    const Eigen::VectorXd xi = solve_weights(n_arcs - 1, kappa, reduced_x, cfg).values;
    Eigen::VectorXd out(C1);
    for (Eigen::Index t = 0; t < C1; ++t) {
        auto r = remove_arc(ds[static_cast<size_t>(t)], interval - 1, interval);
        out(t) = xi(index_of(small, r) - 1);
    }
    return out;
}

double regularized_basis_element(int n_arcs, int theta, double kappa, const std::vector<double>& x, double dk,
                                 const QuadConfig& cfg)
{
    check_arcs(n_arcs);
    check_points(n_arcs, x);
    const auto ds = enumerate_connectivities(n_arcs);
    if (theta < 1 || theta > static_cast<int>(ds.size())) throw std::invalid_argument("theta out of range");
    return regularized_basis_value(ds[static_cast<size_t>(theta - 1)], kappa, x, cfg, 1, dk);
}

namespace {

struct FusionStep {
    double kappa;
    int step;  // j: fusing psi_j at y[0] with the psi_1 at y[1]
    LadderConfig ladder;
    double* worst;
};

double fuse(const Evaluator& H, const std::vector<double>& y, const FusionStep& st)
{
    const double k = st.kappa;
    const int j = st.step;
    const double pB = 2.0 * j / k;
    const double pA = 1.0 - (2.0 * j + 4.0) / k - pB;  // psi_{j-1} channel, relative
    std::vector<SeriesTerm> terms;
    const int m = std::max(1, st.ladder.series_terms);
    for (int q = 0; q < m; ++q) terms.push_back({double(q), false, 'B', q});
    for (int q = 0; q < m; ++q) terms.push_back({pA + q, false, 'A', q});
    for (size_t a = 0; a < terms.size(); ++a)
        for (size_t b = a + 1; b < terms.size(); ++b)
            if (std::abs(terms[a].power - terms[b].power) < 1e-3)
                throw std::domain_error("fusion dictionary is degenerate at this kappa");

    const double gap = y[2] - y[0];
    const auto deltas = ladder(st.ladder.delta0_frac * gap, std::max(st.ladder.points, static_cast<int>(terms.size()) + 1));
    Eigen::MatrixXd vals(static_cast<Eigen::Index>(deltas.size()), 1);
    std::vector<double> z = y;
    for (size_t q = 0; q < deltas.size(); ++q) {
        z[1] = z[0] + deltas[q];
        vals(static_cast<Eigen::Index>(q), 0) = std::pow(deltas[q], -pB) * H(z);
    }
    auto fit = fit_series(deltas, vals, terms);
    const double A = std::abs(fit.coefficient('A', 0)) * std::pow(deltas.back(), pA);
    const double B = std::abs(fit.coefficient('B', 0));
    if (A + B > 0) *st.worst = std::max(*st.worst, A / (A + B));
    return fit.coefficient('B', 0);
}

}  // namespace

MultiCollapse multi_collapse_limit(int n_arcs, const Evaluator& F, const std::vector<double>& x, double kappa,
                                   const LadderConfig& ladder)
{
    check_points(n_arcs, x);
    MultiCollapse out;
    if (n_arcs == 1) {
        out.value = F(x);
        return out;
    }
    // H_1 = F; H_{j+1}(y0, y2, ...) = fused limit of H_j(y0, y0 + delta, y2, ...)
    std::vector<Evaluator> H(static_cast<size_t>(n_arcs));
    std::vector<FusionStep> steps;
    H[0] = F;
    for (int j = 1; j < n_arcs; ++j) steps.push_back({kappa, j, ladder, &out.leading_ratio});
    for (int j = 1; j < n_arcs; ++j) {
        const Evaluator& prev = H[static_cast<size_t>(j - 1)];
        const FusionStep& st = steps[static_cast<size_t>(j - 1)];
        H[static_cast<size_t>(j)] = [&prev, &st](const std::vector<double>& y) {
            std::vector<double> z;
            z.reserve(y.size() + 1);
            z.push_back(y[0]);
            z.push_back(y[0]);
            z.insert(z.end(), y.begin() + 1, y.end());
            return fuse(prev, z, st);
        };
    }
    std::vector<double> y;
    y.push_back(x[0]);
    y.insert(y.end(), x.begin() + n_arcs, x.end());
    out.value = H[static_cast<size_t>(n_arcs - 1)](y);
    return out;
}

RainbowReport rainbow_extended_basis_check(int n_arcs, double kappa, const std::vector<double>& x,
                                           const QuadConfig& cfg, const LadderConfig& ladder)
{
    check_arcs(n_arcs);
    const auto C = static_cast<Eigen::Index>(catalan_small(n_arcs));
    VecEvaluator G = [&](const std::vector<double>& y) {
        Eigen::VectorXd v(C + 1);
        v.head(C) = basis_values(n_arcs, kappa, y, cfg);
        v(C) = (is_exceptional(kappa, n_arcs) ? regularized_weights(n_arcs, kappa, y, 1e-3 * kappa, cfg)
                                              : solve_weights(n_arcs, kappa, y, cfg))
                   .values(C - 1);
        return v;
    };
    RainbowReport rep;
    rep.vectors = limit_vectors(n_arcs, G, x, kappa, ladder);
    rep.basis_rank = numeric_rank(Eigen::MatrixXd(rep.vectors.leftCols(C)), 1e-5);
    rep.extended_rank = numeric_rank(rep.vectors, 1e-5);
    rep.expected_basis_rank = numeric_rank(build_meander_matrix(n_arcs, fugacity(kappa)), 1e-9);
    return rep;
}

}  // namespace cgw
