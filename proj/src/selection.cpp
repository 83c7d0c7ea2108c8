#include "csb/selection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace csb {

double attribute_utility(double x, double beta) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
        throw ValidationError("attribute utility: x must be in [0,1]");
    }
    if (!std::isfinite(beta) || beta < 0.0) {
        throw ValidationError("attribute utility: beta must be >= 0");
    }
    if (beta == 0.0) {
        return 1.0; // 0^0 == 1: indifferent consumer
    }
    return std::pow(x, beta);
}

UtilityScore aggregate_utility(const QoSVector& qos, const RequirementProfile& profile,
                               std::string subject_id) {
    if (!same_catalog(qos.catalog, profile.catalog)) {
        throw ValidationError("qos vector and profile reference different catalogs");
    }
    UtilityScore score;
    score.subject_id = std::move(subject_id);
    score.contributions.resize(qos.values.size());
    for (std::size_t i = 0; i < qos.values.size(); ++i) {
        score.contributions[i] =
            profile.weights[i] * attribute_utility(qos.values[i], profile.sensitivities[i]);
        score.utility += score.contributions[i];
    }
    return score;
}

double acceptance_threshold(const RequirementProfile& profile) {
    QoSVector minima{profile.catalog, profile.minima};
    return aggregate_utility(minima, profile, kConsumerSubjectId).utility;
}

RankingResult rank_offerings(std::span<const OfferingEntry> offerings,
                             const RequirementProfile& profile) {
    if (offerings.empty()) {
        throw ValidationError("rank_offerings: offering list is empty");
    }
    RankingResult result;
    result.threshold = acceptance_threshold(profile);
    result.entries.reserve(offerings.size());
    for (const auto& [provider_id, qos] : offerings) {
        UtilityScore score = aggregate_utility(qos, profile, provider_id);
        bool accepted = score.utility >= result.threshold - kAcceptEpsilon;
        result.entries.push_back({provider_id, std::move(score), accepted});
    }
    std::stable_sort(result.entries.begin(), result.entries.end(),
                     [](const RankedEntry& a, const RankedEntry& b) {
                         if (a.score.utility != b.score.utility) {
                             return a.score.utility > b.score.utility;
                         }
                         return a.provider_id < b.provider_id;
                     });
    return result;
}

SweepTable sensitivity_sweep(std::span<const OfferingEntry> offerings,
                             const RequirementProfile& profile,
                             std::span<const double> beta_grid) {
    if (beta_grid.empty()) {
        throw ValidationError("sensitivity_sweep: empty beta grid");
    }
    for (double beta : beta_grid) {
        if (!std::isfinite(beta) || beta < 0.0) {
            throw ValidationError("sensitivity_sweep: beta must be >= 0");
        }
    }
    SweepTable table;
    table.betas.assign(beta_grid.begin(), beta_grid.end());

    std::vector<std::pair<std::string, QoSVector>> subjects;
    subjects.reserve(offerings.size() + 1);
    for (const auto& entry : offerings) {
        subjects.emplace_back(entry.first, entry.second);
    }
    subjects.emplace_back(kConsumerSubjectId, QoSVector{profile.catalog, profile.minima});
    std::sort(subjects.begin(), subjects.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    for (const auto& [id, qos] : subjects) {
        table.subjects.push_back(id);
    }
    RequirementProfile swept = profile;
    for (double beta : table.betas) {
        std::fill(swept.sensitivities.begin(), swept.sensitivities.end(), beta);
        std::vector<double> row;
        row.reserve(subjects.size());
        for (const auto& [id, qos] : subjects) {
            row.push_back(aggregate_utility(qos, swept, id).utility);
        }
        table.utilities.push_back(std::move(row));
    }
    return table;
}

std::string sweep_to_csv(const SweepTable& table) {
    std::string out = "beta,subject,utility\n";
    char line[128];
    for (std::size_t b = 0; b < table.betas.size(); ++b) {
        for (std::size_t s = 0; s < table.subjects.size(); ++s) {
            std::snprintf(line, sizeof(line), "%g,%s,%.6f\n", table.betas[b],
                          table.subjects[s].c_str(), table.utilities[b][s]);
            out += line;
        }
    }
    return out;
}

double display_round2(double value) {
    return std::floor(value * 100.0 + 0.5) / 100.0;
}

} // namespace csb
