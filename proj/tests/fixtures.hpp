#pragma once

#include <random>

#include "csb/broker.hpp"
#include "csb/qos.hpp"
#include "csb/selection.hpp"

namespace fixtures {

inline csb::CatalogPtr catalog() {
    static csb::CatalogPtr instance = csb::default_catalog();
    return instance;
}

// the worked-example consumer profile
inline csb::RequirementProfile consumer_profile(std::optional<double> budget = std::nullopt) {
    return csb::validate_profile({catalog(),
                                  {0.98, 0.65, 0.95, 0.90},
                                  {0.35, 0.15, 0.35, 0.15},
                                  {1.0, 1.0, 1.0, 1.0},
                                  budget});
}

// the four competing offerings
inline std::vector<csb::OfferingEntry> offerings() {
    auto cat = catalog();
    return {
        {"SP1", csb::make_qos_vector(cat, {0.94, 0.70, 0.98, 0.70})},
        {"SP2", csb::make_qos_vector(cat, {0.98, 0.60, 0.97, 0.65})},
        {"SP3", csb::make_qos_vector(cat, {0.97, 0.80, 0.96, 0.75})},
        {"SP4", csb::make_qos_vector(cat, {0.98, 0.85, 0.98, 0.70})},
    };
}

// random valid profile + offerings on a 0.01 quality grid
struct RandomInstance {
    csb::CatalogPtr catalog;
    csb::RequirementProfile profile;
    std::vector<csb::OfferingEntry> offerings;
};

inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_attributes = 8,
                                      std::size_t max_providers = 50) {
    std::uniform_int_distribution<std::size_t> n_dist(1, max_attributes);
    std::uniform_int_distribution<std::size_t> k_dist(1, max_providers);
    std::uniform_int_distribution<int> grid(0, 100);
    std::uniform_real_distribution<double> beta_dist(0.0, 3.0);
    std::uniform_real_distribution<double> weight_dist(0.01, 1.0);

    const std::size_t n = n_dist(rng);
    std::vector<csb::AttributeSpec> specs;
    for (std::size_t i = 0; i < n; ++i) {
        specs.push_back({"a" + std::to_string(i), "a" + std::to_string(i),
                         csb::Direction::HigherIsBetter, 0.0, 1.0,
                         csb::MetricKind::Continuous});
    }
    RandomInstance instance;
    instance.catalog = std::make_shared<csb::AttributeCatalog>(std::move(specs));

    std::vector<double> weights(n);
    double sum = 0.0;
    for (auto& w : weights) {
        w = weight_dist(rng);
        sum += w;
    }
    for (auto& w : weights) {
        w /= sum;
    }
    std::vector<double> minima(n), betas(n);
    for (std::size_t i = 0; i < n; ++i) {
        minima[i] = grid(rng) / 100.0;
        betas[i] = beta_dist(rng);
    }
    instance.profile = csb::validate_profile(
        {instance.catalog, std::move(minima), std::move(weights), std::move(betas), {}});

    const std::size_t k = k_dist(rng);
    for (std::size_t p = 0; p < k; ++p) {
        std::vector<double> values(n);
        for (auto& v : values) {
            v = grid(rng) / 100.0;
        }
        instance.offerings.emplace_back(
            "P" + std::to_string(p), csb::make_qos_vector(instance.catalog, std::move(values)));
    }
    return instance;
}

} // namespace fixtures
