#include "cgw/cft.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cgw {

Rational minimal_model_central_charge(long p, long pp)
{
    if (!(1 < pp && pp < p) || std::gcd(p, pp) != 1)
        throw std::invalid_argument("minimal model needs coprime 1 < p' < p");
    return Rational(1) - Rational(6 * (p - pp) * (p - pp), p * pp);
}

Rational central_charge_exact(Rational k)
{
    if (k <= 0 || k >= 8) throw std::domain_error("kappa must lie in (0,8)");
    return (Rational(6) - k) * (Rational(3) * k - Rational(8)) / (Rational(2) * k);
}

KacWeight kac_weight(int r, int s, double kappa)
{
    if (r < 1 || s < 1) throw std::invalid_argument("Kac labels must be positive");
    if (!(kappa > 0 && kappa < 8)) throw std::domain_error("kappa must lie in (0,8)");
    KacWeight w{r, s, 0, kappa > 4 ? KacPhase::dense : KacPhase::dilute};
    double a = w.phase == KacPhase::dense ? kappa * r - 4.0 * s : kappa * s - 4.0 * r;
    w.value = (a * a - (kappa - 4) * (kappa - 4)) / (16 * kappa);
    return w;
}

Rational kac_weight_exact(int r, int s, Rational k)
{
    Rational a = k > 4 ? k * r - Rational(4 * s) : k * s - Rational(4 * r);
    return (a * a - (k - 4) * (k - 4)) / (Rational(16) * k);
}

double s_leg_weight(int s, double kappa)
{
    if (!(kappa > 0 && kappa < 8)) throw std::domain_error("kappa must lie in (0,8)");
    switch (s) {
    case 0: return 0.0;
    case 1: return (6.0 - kappa) / (2.0 * kappa);
    case 2: return 8.0 / kappa - 1.0;
    default: throw std::invalid_argument("s-leg weight available for s in {0,1,2}");
    }
}

std::pair<int, int> one_leg_operator_label(double kappa)
{
    return kappa > 4 ? std::pair{1, 2} : std::pair{2, 1};
}

const char* to_string(CorrespondenceFact f)
{
    return f == CorrespondenceFact::fact2_two_to_one ? "fact2_two_to_one" : "fact3_one_to_one";
}

std::optional<MinimalModelMatch> minimal_model_map(Rational kappa)
{
    if (kappa <= 0 || kappa >= 8) throw std::domain_error("kappa must lie in (0,8)");
    Rational r = kappa / 4;
    long q = r.numerator(), qp = r.denominator();
    if (q < 2 || qp < 2) return std::nullopt;
    MinimalModelMatch m;
    m.q = q;
    m.q_prime = qp;
    if (kappa > 2) {
        m.fact = CorrespondenceFact::fact2_two_to_one;
        m.model.p = std::max(q, qp);
        m.model.p_prime = std::min(q, qp);
    } else {
        m.fact = CorrespondenceFact::fact3_one_to_one;
        m.model.p = qp;
        m.model.p_prime = q;
    }
    m.model.central_charge = minimal_model_central_charge(m.model.p, m.model.p_prime);
    return m;
}

std::optional<MinimalModelMatch> minimal_model_map(double kappa)
{
    auto r = recognize_rational(kappa / 4.0);
    if (!r) return std::nullopt;
    return minimal_model_map(*r * 4);
}

NullLevels null_vector_levels(int r, int s, long p, long pp, int count)
{
    if (r < 1 || s < 1 || p < 2 || pp < 2) throw std::invalid_argument("bad Kac data");
    if (count < 0) throw std::invalid_argument("count must be nonnegative");
    // Embedding chain of V_{r,s}: levels (x^2 - lambda^2)/(4 p p') with x
    // running over d p p' +- mu (d even offset) and d p p' +- lambda.
    const long P = p * pp;
    const long lambda = p * r - pp * s, mu = p * r + pp * s;
    auto level = [&](long x) { return (x * x - lambda * lambda) / (4 * P); };
    NullLevels out;
    out.displayed = std::min(count, 4);
    for (long d = 1; static_cast<int>(out.levels.size()) < count; ++d) {
        long a, b;
        if (d % 2) {
            a = (d - 1) * P + mu;
            b = (d + 1) * P - mu;
        } else {
            a = d * P - lambda;
            b = d * P + lambda;
        }
        for (long x : {a, b})
            if (static_cast<int>(out.levels.size()) < count) out.levels.push_back(level(x));
    }
    return out;
}

}  // namespace cgw
