#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cgw/meander.hpp"

namespace cgw {

// Minimal model M(p, p') with coprime 1 < p' < p.
struct MinimalModelLabel {
    long p = 0, p_prime = 0;
    Rational central_charge;
};

Rational minimal_model_central_charge(long p, long pp);
Rational central_charge_exact(Rational kappa);

enum class KacPhase { dense, dilute };

struct KacWeight {
    int r = 0, s = 0;
    double value = 0;
    KacPhase phase = KacPhase::dense;
};

KacWeight kac_weight(int r, int s, double kappa);
Rational kac_weight_exact(int r, int s, Rational kappa);

double s_leg_weight(int s, double kappa);  // s in {0, 1, 2}
std::pair<int, int> one_leg_operator_label(double kappa);

enum class CorrespondenceFact { fact2_two_to_one, fact3_one_to_one };
const char* to_string(CorrespondenceFact f);

struct MinimalModelMatch {
    MinimalModelLabel model;
    CorrespondenceFact fact;
    long q = 0, q_prime = 0;
};

// kappa = 4q/q' with q, q' > 1 coprime and kappa < 8; nullopt otherwise
std::optional<MinimalModelMatch> minimal_model_map(Rational kappa);
std::optional<MinimalModelMatch> minimal_model_map(double kappa);

// Levels of the embedded singular vectors of V_{r,s} in M(p, p'), in order.
// The first four are the displayed head; `displayed` marks where the
// extrapolated tail starts.
struct NullLevels {
    std::vector<long> levels;
    int displayed = 0;  // how many entries come from the displayed head
};
NullLevels null_vector_levels(int r, int s, long p, long pp, int count);

}  // namespace cgw
