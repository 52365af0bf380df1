#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cgw/combinatorics.hpp"
#include "cgw/coulomb_gas.hpp"

namespace cgw {

struct LadderConfig {
    double delta0_frac = 0.1;  // first separation as a fraction of the local gap
    int points = 7;            // delta_k = delta0 2^-k, k = 0..points-1
    int series_terms = 3;      // terms kept in each series (m <= series_terms-1)
    bool log_terms = false;    // add delta^e log(delta) terms even when 8/kappa is not odd
};

// One function delta^power (times log delta when `log` is set) of the fit.
struct SeriesTerm {
    double power = 0;
    bool log = false;
    char family = 'A';  // 'A', 'B' or 'C'
    int order = 0;
};

// Dictionary for delta^{6/kappa-1} F as delta -> 0, shifted so the leading
// power of the first series is 0: A-series at 0,1,2,..., B-series starting at
// 8/kappa - 1, C (log) series at the B powers when 8/kappa is odd.
std::vector<SeriesTerm> collapse_dictionary(double kappa, const LadderConfig& cfg);

struct SeriesFit {
    std::vector<SeriesTerm> terms;
    std::vector<double> deltas;
    Eigen::MatrixXd values;  // ladder values, one column per component
    Eigen::MatrixXd coef;    // terms x components
    double residual = 0;     // max relative least-squares residual over components
    double coefficient(char family, int order, int component = 0) const;
};

// Least-squares fit of each column of `values` in the given dictionary;
// deltas are rescaled by their maximum internally.
SeriesFit fit_series(const std::vector<double>& deltas, const Eigen::MatrixXd& values,
                     const std::vector<SeriesTerm>& terms);

std::vector<double> ladder(double delta0, int points);

using VecEvaluator = std::function<Eigen::VectorXd(const std::vector<double>&)>;

// Points with x_{i+1} = x_i + delta; interval i is 1-based and must not wrap.
std::vector<double> collapse_points(const std::vector<double>& x, int i, double delta);
double local_gap(const std::vector<double>& x, int i);

struct LimitResult {
    Eigen::VectorXd value;  // A0 per component
    SeriesFit fit;
};

LimitResult collapse_limit_vec(const VecEvaluator& F, const std::vector<double>& x, int i, double kappa,
                               const LadderConfig& cfg = {});
double collapse_limit(const Evaluator& F, const std::vector<double>& x, int i, double kappa,
                      const LadderConfig& cfg = {});

// R -> infinity limit of (2R)^{6/kappa-1} F(-R, inner..., R).
double collapse_at_infinity(const Evaluator& F, const std::vector<double>& inner, double kappa,
                            const LadderConfig& cfg = {});

// [L_sigma] applied by numerical collapses along the diagram. `order`
// optionally lists, for each step, the 0-based left endpoint (in the current
// point list) of the nearest-neighbour arc to collapse next.
Eigen::VectorXd apply_L_vec(const ArcDiagram& sigma, const VecEvaluator& F, const std::vector<double>& x,
                            double kappa, const LadderConfig& cfg = {},
                            const std::vector<int>& order = {});
double apply_L(const ArcDiagram& sigma, const Evaluator& F, const std::vector<double>& x, double kappa,
               const LadderConfig& cfg = {}, const std::vector<int>& order = {});

}  // namespace cgw
