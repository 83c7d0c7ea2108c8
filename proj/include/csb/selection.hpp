#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "csb/qos.hpp"

namespace csb {

// Acceptance is inclusive: U >= threshold - kAcceptEpsilon.
inline constexpr double kAcceptEpsilon = 1e-9;

struct UtilityScore {
    std::string subject_id;
    double utility = 0.0;
    std::vector<double> contributions; // w_i * x_i^beta_i per attribute
};

struct RankedEntry {
    std::string provider_id;
    UtilityScore score;
    bool accepted = false;
};

struct RankingResult {
    std::vector<RankedEntry> entries; // utility descending, id ascending on ties
    double threshold = 0.0;
};

// One uniform beta applied to all attributes per grid point; the consumer
// minima participate as subject "consumer-minimum".
struct SweepTable {
    std::vector<double> betas;
    std::vector<std::string> subjects;            // ascending id
    std::vector<std::vector<double>> utilities;   // [beta index][subject index]
};

inline constexpr const char* kConsumerSubjectId = "consumer-minimum";

using OfferingEntry = std::pair<std::string, QoSVector>;

// x^beta with 0^0 defined as 1. x must be in [0,1], beta >= 0.
double attribute_utility(double x, double beta);

// U = sum w_i * x_i^beta_i over the shared catalog.
UtilityScore aggregate_utility(const QoSVector& qos, const RequirementProfile& profile,
                               std::string subject_id = {});

// Utility of the profile's own minima vector.
double acceptance_threshold(const RequirementProfile& profile);

RankingResult rank_offerings(std::span<const OfferingEntry> offerings,
                             const RequirementProfile& profile);

SweepTable sensitivity_sweep(std::span<const OfferingEntry> offerings,
                             const RequirementProfile& profile,
                             std::span<const double> beta_grid);

// CSV with header "beta,subject,utility", 6-decimal utilities, rows ordered
// by beta then subject id.
std::string sweep_to_csv(const SweepTable& table);

// Half-up rounding to 2 decimals, display only.
double display_round2(double value);

} // namespace csb
