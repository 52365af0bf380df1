#include "cgw/coulomb_gas.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/constants/constants.hpp>

namespace cgw {

namespace {

constexpr double pi = boost::math::constants::pi<double>();
const cplx I(0.0, 1.0);

// (u - x_l)^a on the branch that is principal in the upper half-plane and
// stays continuous on the small loops below the axis.
inline cplx side_power(cplx d, double a)
{
    if (d.real() > 0) return std::pow(d, a);
    return std::polar(1.0, pi * a) * std::pow(-d, a);
}

enum class Relation { left_of, right_of, encloses, inside };

struct Node {
    cplx u;
    cplx val;  // weight * du/dt * piece coefficient * point factors
};

struct Piece {
    enum Kind { full_arc, mid_arc, loop } kind;
    double th_a = 0, th_b = pi;  // arc parameter range
    int center = -1;             // loop center point index
    double rho = 0, phi0 = 0;
    cplx coef = 1.0;
    double s_max = 3.5;
    std::vector<std::vector<Node>> levels;
};

struct Variable {
    int i, j;  // endpoints
    double R, H, mid;
    std::vector<Piece> pieces;
};

class Integrator {
public:
    Integrator(const CoulombGasSpec& spec, const std::vector<double>& x, const QuadConfig& cfg)
        : x_(x), cfg_(cfg), kappa_(spec.speed.kappa)
    {
        const int np = static_cast<int>(x.size());
        const int c0 = spec.c - 1;
        a_.assign(np, -4.0 / kappa_);
        a_[c0] = 12.0 / kappa_ - 2.0;
        b_ = 8.0 / kappa_;
        const bool loops = kappa_ < cfg.loop_kappa;
        for (const ContourSpec& cs : spec.contours) {
            Variable v;
            v.i = cs.i;
            v.j = cs.j;
            v.R = 0.5 * (x[cs.j] - x[cs.i]);
            v.H = 2.0 * v.R * cfg.arc_height;
            v.mid = 0.5 * (x[cs.i] + x[cs.j]);
            const double beta = a_[cs.i];
            if (!loops) {
                Piece p;
                p.kind = Piece::full_arc;
                p.s_max = cfg.s_max > 0 ? cfg.s_max : tanh_sinh_smax(beta);
                v.pieces.push_back(p);
            } else {
                double ri = cfg.loop_radius * local_gap(cs.i), rj = cfg.loop_radius * local_gap(cs.j);
                double ta = junction(v, ri), tb = pi - junction(v, rj);
                Piece arc;
                arc.kind = Piece::mid_arc;
                arc.th_a = ta;
                arc.th_b = tb;
                cplx e2 = std::polar(1.0, 2 * pi * beta);
                Piece start;
                start.kind = Piece::loop;
                start.center = cs.i;
                start.rho = ri;
                start.phi0 = std::arg(offset_i(v, ta));
                start.coef = 1.0 / (e2 - 1.0);
                Piece end;
                end.kind = Piece::loop;
                end.center = cs.j;
                end.rho = rj;
                end.phi0 = std::arg(offset_j(v, tb));
                end.coef = 1.0 / (1.0 - e2);
                v.pieces = {start, arc, end};
            }
            vars_.push_back(std::move(v));
        }
        const int m = static_cast<int>(vars_.size());
        rel_.assign(m, std::vector<Relation>(m, Relation::left_of));
        for (int p = 0; p < m; ++p)
            for (int q = 0; q < m; ++q) {
                if (p == q) continue;
                const Variable &A = vars_[p], &B = vars_[q];
                if (A.j < B.i) rel_[p][q] = Relation::left_of;
                else if (B.j < A.i) rel_[p][q] = Relation::right_of;
                else if (A.i < B.i) rel_[p][q] = Relation::encloses;
                else rel_[p][q] = Relation::inside;
            }
        pair_rot_ = std::polar(1.0, -0.5 * pi * b_);
    }

    // Phase of the integrand with every u_m just right of its left endpoint.
    cplx reference_phase() const
    {
        double s = 0;
        for (const Variable& v : vars_)
            for (int l = 0; l < static_cast<int>(x_.size()); ++l)
                if (l > v.i) s += a_[l];
        return std::polar(1.0, pi * s);
    }

    cplx run()
    {
        us_.assign(vars_.size(), 0.0);
        if (vars_.empty()) return 1.0;
        return integrate(0);
    }

    long evals = 0;
    double err = 0;

private:
    double local_gap(int l) const
    {
        double g = INFINITY;
        if (l > 0) g = std::min(g, x_[l] - x_[l - 1]);
        if (l + 1 < static_cast<int>(x_.size())) g = std::min(g, x_[l + 1] - x_[l]);
        return g;
    }

    static cplx offset_i(const Variable& v, double th)
    {
        double s = std::sin(0.5 * th);
        return cplx(2 * v.R * s * s, v.H * std::sin(th));
    }
    static cplx offset_j(const Variable& v, double th)
    {
        double s = std::sin(0.5 * (pi - th));
        return cplx(-2 * v.R * s * s, v.H * std::sin(th));
    }

    static double junction(const Variable& v, double rho)
    {
        double lo = 0, hi = 0.5 * pi;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
            double mid = 0.5 * (lo + hi);
            (std::abs(offset_i(v, mid)) < rho ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    // product of the point factors for variable v at u, given offsets from
    // both endpoints and the already evaluated endpoint powers
    cplx point_factors(const Variable& v, cplx u, cplx di, cplx dj, cplx own_i, cplx own_j) const
    {
        cplx g = own_i * own_j;
        const bool near_i = std::abs(di) <= std::abs(dj);
        for (int l = 0; l < static_cast<int>(x_.size()); ++l) {
            if (l == v.i || l == v.j || a_[l] == 0.0) continue;
            cplx d = near_i ? di + (x_[v.i] - x_[l]) : dj + (x_[v.j] - x_[l]);
            g *= side_power(d, a_[l]);
        }
        (void)u;
        return g;
    }

    Node make_node(const Variable& v, const Piece& p, const TSNode& nd) const
    {
        const double beta_i = a_[v.i], beta_j = a_[v.j];
        cplx u, di, dj, dudx, own_i, own_j;
        if (p.kind == Piece::loop) {
            double phi = p.phi0 + pi * (1.0 + nd.x);
            cplx e = std::polar(1.0, phi);
            cplx own = std::pow(p.rho, p.center == v.i ? beta_i : beta_j) *
                       std::polar(1.0, (p.center == v.i ? beta_i : beta_j) * phi);
            cplx off = p.rho * e;
            dudx = I * off * pi;
            if (p.center == v.i) {
                di = off;
                dj = off + (x_[v.i] - x_[v.j]);
                own_i = own;
                own_j = side_power(dj, beta_j);
            } else {
                dj = off;
                di = off + (x_[v.j] - x_[v.i]);
                own_j = own;
                own_i = side_power(di, beta_i);
            }
            u = x_[p.center] + off;
        } else {
            const double half = 0.5 * (p.th_b - p.th_a);
            double th = p.th_a + half * nd.dl;
            double th_from_end = (pi - p.th_b) + half * nd.dr;  // pi - th
            if (th <= 0.5 * pi) {
                double s = std::sin(0.5 * th);
                di = cplx(2 * v.R * s * s, v.H * std::sin(th));
                dj = di + (x_[v.i] - x_[v.j]);
            } else {
                double s = std::sin(0.5 * th_from_end);
                dj = cplx(-2 * v.R * s * s, v.H * std::sin(th_from_end));
                di = dj + (x_[v.j] - x_[v.i]);
            }
            double sin_th = th <= 0.5 * pi ? std::sin(th) : std::sin(th_from_end);
            double cos_th = th <= 0.5 * pi ? std::cos(th) : -std::cos(th_from_end);
            dudx = cplx(v.R * sin_th, v.H * cos_th) * half;
            own_i = std::pow(di, beta_i);
            own_j = std::pow(dj, beta_j);
            u = th <= 0.5 * pi ? x_[v.i] + di : x_[v.j] + dj;
        }
        Node out;
        out.u = u;
        out.val = nd.w * dudx * p.coef * point_factors(v, u, di, dj, own_i, own_j);
        return out;
    }

    const std::vector<Node>& nodes(int m, Piece& p, int level)
    {
        while (static_cast<int>(p.levels.size()) <= level) {
            int L = static_cast<int>(p.levels.size());
            std::vector<Node> lv;
            for (const TSNode& nd : tanh_sinh_level(L, p.s_max)) lv.push_back(make_node(vars_[m], p, nd));
            p.levels.push_back(std::move(lv));
        }
        return p.levels[level];
    }

    cplx pair_factor(int p, int q, cplx up, cplx uq) const
    {
        switch (rel_[p][q]) {
        case Relation::left_of: return std::pow(uq - up, b_);
        case Relation::right_of: return std::pow(up - uq, b_);
        case Relation::encloses: return pair_rot_ * std::pow(I * (uq - up), b_);
        case Relation::inside: return pair_rot_ * std::pow(I * (up - uq), b_);
        }
        return 0.0;
    }

    cplx integrate(int m)
    {
        const int M = static_cast<int>(vars_.size());
        const int lo = cfg_.fixed_level >= 0 ? cfg_.fixed_level : cfg_.min_level;
        const int hi = cfg_.fixed_level >= 0 ? cfg_.fixed_level : cfg_.max_level;
        cplx total = 0;
        for (Piece& pc : vars_[m].pieces) {
            cplx sum = 0, prev = 0;
            double diff = 0;
            for (int L = 0; L <= hi; ++L) {
                cplx part = 0;
                for (const Node& nd : nodes(m, pc, L)) {
                    cplx term = nd.val;
                    for (int p = 0; p < m; ++p) term *= pair_factor(p, m, us_[p], nd.u);
                    if (m + 1 < M) {
                        us_[m] = nd.u;
                        term *= integrate(m + 1);
                    } else {
                        ++evals;
                    }
                    part += term;
                }
                sum = L == 0 ? part : 0.5 * sum + part;
                if (L >= lo) {
                    diff = std::abs(sum - prev);
                    if (cfg_.fixed_level >= 0 || diff <= std::max(cfg_.rel_tol * std::abs(sum), cfg_.abs_tol))
                        break;
                }
                prev = sum;
            }
            if (m == 0) err += diff;
            total += sum;
        }
        return total;
    }

    const std::vector<double>& x_;
    QuadConfig cfg_;
    double kappa_;
    std::vector<double> a_;
    double b_;
    std::vector<Variable> vars_;
    std::vector<std::vector<Relation>> rel_;
    cplx pair_rot_;
    std::vector<cplx> us_;
};

double log_products(int c0, double kappa, const std::vector<double>& x)
{
    const int np = static_cast<int>(x.size());
    double s = 0;
    for (int j = 0; j < np; ++j)
        for (int k = j + 1; k < np; ++k) {
            double lg = std::log(x[k] - x[j]);
            if (j == c0 || k == c0) s += (1.0 - 6.0 / kappa) * lg;
            else s += (2.0 / kappa) * lg;
        }
    return s;
}

EvalResult evaluate_impl(const CoulombGasSpec& spec, const std::vector<double>& x, const QuadConfig& cfg,
                         bool drop_n)
{
    const double kappa = spec.speed.kappa;
    if (prefactor_singular(kappa)) throw NumericalError("prefactor singular at this kappa; take the kappa limit");
    EvalResult J = coulomb_integral(spec, x, cfg);
    double K = basis_constant(spec.n_arcs, kappa);
    if (drop_n) K /= fugacity(kappa);
    double P = std::exp(log_products(spec.c - 1, kappa, x));
    EvalResult r;
    r.value = K * P * J.value;
    r.abs_error_est = std::abs(K * P) * J.abs_error_est;
    r.imag_leak = std::abs(K * P) * J.imag_leak;
    r.n_evals = J.n_evals;
    return r;
}

}  // namespace

PointConfig PointConfig::make(std::vector<double> x, double eps_geom)
{
    if (x.empty() || x.size() % 2) throw std::invalid_argument("need an even, positive number of points");
    for (size_t k = 0; k < x.size(); ++k) {
        if (!std::isfinite(x[k])) throw std::invalid_argument("points must be finite");
        if (k && !(x[k] - x[k - 1] > eps_geom)) throw std::invalid_argument("points must be strictly increasing");
    }
    return PointConfig{std::move(x)};
}

double PointConfig::min_gap() const
{
    double g = INFINITY;
    for (size_t k = 1; k < coords.size(); ++k) g = std::min(g, coords[k] - coords[k - 1]);
    return g;
}

CoulombGasSpec build_spec(const ArcDiagram& d, int c, double kappa)
{
    if (c < 1 || c > d.points()) throw std::invalid_argument("conjugate point index out of range");
    CoulombGasSpec s;
    s.n_arcs = d.n_arcs;
    s.diagram = d;
    s.c = c;
    s.speed = SpeedContext::from_kappa(kappa);
    const int c0 = c - 1, cp = d.pairing[c0];
    const ContourKind kind = kappa > 4 ? ContourKind::simple_upper_arc : ContourKind::pochhammer;
    for (int a = 0; a < d.points(); ++a) {
        int b = d.pairing[a];
        if (b < a || a == c0 || a == cp) continue;
        s.contours.push_back({kind, a, b, 0});
    }
    auto encloses = [](int i, int j, int a, int b) { return i < a && b < j; };
    for (auto& ct : s.contours)
        for (auto& o : s.contours)
            if (encloses(o.i, o.j, ct.i, ct.j)) ++ct.nesting_level;
    int ci = std::min(c0, cp), cj = std::max(c0, cp);
    for (auto& o : s.contours)
        if (encloses(o.i, o.j, ci, cj)) ++s.c_depth;
    return s;
}

bool prefactor_singular(double kappa)
{
    double r = 8.0 / kappa;
    double k = std::round(r);
    return k >= 2 && std::abs(r - k) < 1e-12 * r;
}

double basis_constant(int n_arcs, double kappa)
{
    double n = fugacity(kappa);
    double g = n * std::tgamma(2.0 - 8.0 / kappa) / std::pow(std::tgamma(1.0 - 4.0 / kappa), 2);
    return n * std::pow(g, n_arcs - 1);
}

EvalResult coulomb_integral(const CoulombGasSpec& spec, const std::vector<double>& x, const QuadConfig& cfg)
{
    if (static_cast<int>(x.size()) != 2 * spec.n_arcs) throw std::invalid_argument("point count does not match N");
    Integrator in(spec, x, cfg);
    cplx J = in.run() * std::conj(in.reference_phase());
    // Each contour arc enclosing the x_c arc contributes the phase picked up
    // by carrying x_c's charge across it.
    if (spec.c_depth) J *= std::pow(-std::polar(1.0, 4.0 * pi / spec.speed.kappa), spec.c_depth);
    EvalResult r;
    r.value = J.real();
    r.imag_leak = std::abs(J.imag());
    r.abs_error_est = in.err;
    r.n_evals = in.evals;
    return r;
}

EvalResult evaluate_basis(const CoulombGasSpec& spec, const std::vector<double>& x, const QuadConfig& cfg)
{
    EvalResult r = evaluate_impl(spec, x, cfg, false);
    if (r.imag_leak > 1e-8 * std::abs(r.value) + 1e-12)
        throw NumericalError("Coulomb-gas integral failed the reality check");
    return r;
}

double kappa_limit(const std::function<double(double)>& g, double kappa, double dk)
{
    double g1 = 0.5 * (g(kappa + dk) + g(kappa - dk));
    double g2 = 0.5 * (g(kappa + 0.5 * dk) + g(kappa - 0.5 * dk));
    return (4.0 * g2 - g1) / 3.0;
}

double basis_value(const ArcDiagram& d, double kappa, const std::vector<double>& x, const QuadConfig& cfg, int c)
{
    if (prefactor_singular(kappa))
        return kappa_limit([&](double k) { return evaluate_basis(build_spec(d, c, k), x, cfg).value; }, kappa,
                           1e-3 * kappa);
    return evaluate_basis(build_spec(d, c, kappa), x, cfg).value;
}

double regularized_basis_value(const ArcDiagram& d, double kappa, const std::vector<double>& x,
                               const QuadConfig& cfg, int c, double dk)
{
    auto g = [&](double k) { return evaluate_impl(build_spec(d, c, k), x, cfg, true).value; };
    if (prefactor_singular(kappa) || std::abs(fugacity(kappa)) < 1e-12) return kappa_limit(g, kappa, dk);
    return g(kappa);
}

EvalResult evaluate_dotsenko_fateev_kernel(const std::vector<double>& x, int c,
                                           const std::vector<std::pair<int, int>>& arcs, double kappa,
                                           const QuadConfig& cfg)
{
    const int np = static_cast<int>(x.size());
    std::vector<int> p(np, -1);
    for (auto [a, b] : arcs) {
        if (a < 0 || b < 0 || a >= np || b >= np || p[a] >= 0 || p[b] >= 0 || a == c - 1 || b == c - 1)
            throw std::invalid_argument("contour endpoints must be distinct points other than x_c");
        p[a] = b;
        p[b] = a;
    }
    std::vector<int> rest;
    for (int k = 0; k < np; ++k)
        if (p[k] < 0) rest.push_back(k);
    if (rest.size() != 2) throw std::invalid_argument("need exactly N-1 contours");
    p[rest[0]] = rest[1];
    p[rest[1]] = rest[0];
    return coulomb_integral(build_spec(make_diagram(p), c, kappa), x, cfg);
}

double dotsenko_fateev_rhs(const std::vector<double>& x, int c)
{
    const int np = static_cast<int>(x.size());
    const int n = np / 2;
    double s = (2.0 * n - 2) * std::lgamma(1.0 / 3) - (n - 1.0) * std::lgamma(2.0 / 3);
    for (int i = 0; i < np; ++i)
        for (int j = i + 1; j < np; ++j)
            if (i != c - 1 && j != c - 1) s -= std::log(x[j] - x[i]) / 3.0;
    return std::exp(s);
}

}  // namespace cgw
