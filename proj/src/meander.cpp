#include "cgw/meander.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>

namespace cgw {

namespace {
constexpr double pi = boost::math::constants::pi<double>();

void check_kappa(double kappa)
{
    if (!(kappa > 0 && kappa < 8)) throw std::domain_error("kappa must lie in (0,8)");
}

EightOverKappa classify_ratio(std::optional<Rational> r)
{
    if (!r) return EightOverKappa::irrational;
    if (r->denominator() != 1) return EightOverKappa::rational_non_integer;
    return r->numerator() % 2 == 0 ? EightOverKappa::even_integer : EightOverKappa::odd_integer;
}
}  // namespace

const char* to_string(EightOverKappa k)
{
    switch (k) {
    case EightOverKappa::even_integer: return "even_integer";
    case EightOverKappa::odd_integer: return "odd_integer";
    case EightOverKappa::rational_non_integer: return "rational_non_integer";
    case EightOverKappa::irrational: return "irrational";
    }
    return "?";
}

std::optional<Rational> recognize_rational(double x, long max_den, double tol)
{
    if (!std::isfinite(x)) return std::nullopt;
    // convergents h/k of the continued fraction of x
    long h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    double r = x;
    for (int iter = 0; iter < 64; ++iter) {
        double a = std::floor(r);
        if (std::abs(a) > 1e15) break;
        long ai = static_cast<long>(a);
        long h2 = ai * h0 + h1, k2 = ai * k0 + k1;
        if (k2 > max_den) break;
        h1 = h0;
        h0 = h2;
        k1 = k0;
        k0 = k2;
        if (std::abs(static_cast<double>(h0) / k0 - x) <= tol * std::max(1.0, std::abs(x)))
            return Rational(h0, k0);
        double frac = r - a;
        if (frac == 0) break;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

double fugacity(double kappa)
{
    check_kappa(kappa);
    return -2.0 * std::cos(4.0 * pi / kappa);
}

double central_charge(double kappa)
{
    check_kappa(kappa);
    return (6.0 - kappa) * (3.0 * kappa - 8.0) / (2.0 * kappa);
}

SpeedContext SpeedContext::from_kappa(double kappa)
{
    SpeedContext s;
    s.kappa = kappa;
    s.n = fugacity(kappa);
    s.c = central_charge(kappa);
    s.exact = recognize_rational(kappa);
    s.eight_over_kappa = classify_ratio(s.exact ? std::optional<Rational>(Rational(8) / *s.exact)
                                                : std::nullopt);
    return s;
}

SpeedContext SpeedContext::from_rational(Rational kappa)
{
    SpeedContext s = from_kappa(boost::rational_cast<double>(kappa));
    s.exact = kappa;
    s.eight_over_kappa = classify_ratio(Rational(8) / kappa);
    return s;
}

Eigen::MatrixXi loop_exponents(const std::vector<ArcDiagram>& d)
{
    const long m = static_cast<long>(d.size());
    Eigen::MatrixXi e(m, m);
    for (long a = 0; a < m; ++a)
        for (long b = a; b < m; ++b) e(a, b) = e(b, a) = loop_count(d[a], d[b]);
    return e;
}

MeanderMatrix build_meander_matrix(int n_arcs, double n, std::optional<int> anchor, int max_arcs)
{
    if (n_arcs < 1 || n_arcs > max_arcs) throw std::invalid_argument("meander matrix size limit exceeded");
    MeanderMatrix mm;
    mm.n_arcs = n_arcs;
    mm.fugacity = n;
    mm.exponents = loop_exponents(enumerate_connectivities(n_arcs, anchor));
    mm.entries = mm.exponents.unaryExpr([n](int l) { return std::pow(n, l); }).cast<double>();
    return mm;
}

double meander_zero(int q, int qpp)
{
    if (!(0 < qpp && qpp < q) || std::gcd(q, qpp) != 1)
        throw std::invalid_argument("meander_zero requires coprime 0 < q'' < q");
    return -2.0 * std::cos(pi * qpp / q);
}

std::optional<ExceptionalSpeed> is_exceptional(Rational kappa, int n_arcs)
{
    if (kappa <= 0 || kappa >= 8) throw std::domain_error("kappa must lie in (0,8)");
    Rational r = kappa / 4;  // q / q'
    long q = r.numerator(), qp = r.denominator();
    if (q > 1 && q <= n_arcs + 1) return ExceptionalSpeed{q, qp};
    return std::nullopt;
}

std::optional<ExceptionalSpeed> is_exceptional(double kappa, int n_arcs)
{
    check_kappa(kappa);
    auto r = recognize_rational(kappa / 4.0);
    if (!r) return std::nullopt;
    return is_exceptional(*r * 4, n_arcs);
}

int rank_at_zero(int n_arcs, int q, int qpp)
{
    meander_zero(q, qpp);
    if (q > n_arcs + 1) throw std::invalid_argument("rank_at_zero: q exceeds N+1");
    double sum = 0;
    for (int p = 1; p < q; ++p) {
        double s = 2 * std::sin(pi * p / q), c = 2 * std::cos(pi * p / q);
        sum += s * s * std::pow(c, 2 * n_arcs);
    }
    double d = sum / (2.0 * q);
    double r = std::round(d);
    if (std::abs(d - r) > 1e-9 * std::max(1.0, std::abs(d)))
        throw std::logic_error("rank formula did not evaluate to an integer");
    return static_cast<int>(r);
}

int numeric_rank(const Eigen::MatrixXd& m, double tol, double floor)
{
    if (!(tol > 0)) throw std::invalid_argument("numeric_rank: tol must be positive");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0) return 0;
    const double ref = std::max(s(0), floor);
    int r = 0;
    for (long k = 0; k < s.size(); ++k)
        if (s(k) > tol * ref) ++r;
    return r;
}

std::vector<MeanderZero> meander_zeros(int n_arcs)
{
    std::vector<MeanderZero> z;
    for (int q = 2; q <= n_arcs + 1; ++q)
        for (int qpp = 1; qpp < q; ++qpp)
            if (std::gcd(q, qpp) == 1) z.push_back({q, qpp, meander_zero(q, qpp)});
    std::sort(z.begin(), z.end(), [](auto& a, auto& b) { return a.n < b.n; });
    return z;
}

bool sign_relation_check(int n_arcs, std::optional<int> anchor)
{
    Eigen::MatrixXi l = loop_exponents(enumerate_connectivities(n_arcs, anchor));
    const long m = l.rows();
    for (long t = 0; t < m; ++t)
        for (long r = 0; r < m; ++r) {
            int parity = ((l(0, t) - l(0, r)) % 2 + 2) % 2;
            for (long s = 1; s < m; ++s)
                if (((l(s, t) - l(s, r)) % 2 + 2) % 2 != parity) return false;
        }
    return true;
}

}  // namespace cgw
