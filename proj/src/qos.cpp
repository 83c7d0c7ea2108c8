#include "csb/qos.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace csb {

namespace {
constexpr double kWeightSumTolerance = 1e-9;
}

AttributeCatalog::AttributeCatalog(std::vector<AttributeSpec> attributes)
    : attributes_(std::move(attributes)) {
    if (attributes_.empty()) {
        throw ValidationError("catalog must not be empty");
    }
    std::unordered_set<std::string> seen;
    for (const auto& spec : attributes_) {
        if (spec.id.empty()) {
            throw ValidationError("attribute id must not be empty");
        }
        if (!seen.insert(spec.id).second) {
            throw ValidationError("duplicate attribute id: " + spec.id);
        }
        if (!(spec.raw_min < spec.raw_max)) {
            throw ValidationError("attribute " + spec.id + ": raw_min must be < raw_max");
        }
    }
}

std::optional<std::size_t> AttributeCatalog::index_of(std::string_view id) const {
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
        if (attributes_[i].id == id) {
            return i;
        }
    }
    return std::nullopt;
}

bool AttributeCatalog::same_layout(const AttributeCatalog& other) const {
    if (attributes_.size() != other.attributes_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
        if (attributes_[i].id != other.attributes_[i].id) {
            return false;
        }
    }
    return true;
}

bool same_catalog(const CatalogPtr& a, const CatalogPtr& b) {
    if (!a || !b) {
        return false;
    }
    return a == b || a->same_layout(*b);
}

QoSVector make_qos_vector(CatalogPtr catalog, std::vector<double> values) {
    if (!catalog) {
        throw ValidationError("qos vector requires a catalog");
    }
    if (values.size() != catalog->size()) {
        throw ValidationError("qos vector length does not match catalog");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0 || values[i] > 1.0) {
            throw ValidationError("attribute " + catalog->at(i).id +
                                  ": quality value must be in [0,1]");
        }
    }
    return QoSVector{std::move(catalog), std::move(values)};
}

double normalize_metric(double raw, const AttributeSpec& spec) {
    if (!std::isfinite(raw)) {
        throw ValidationError("attribute " + spec.id + ": non-finite raw value");
    }
    const double span = spec.raw_max - spec.raw_min;
    double q = spec.direction == Direction::HigherIsBetter
                   ? (raw - spec.raw_min) / span
                   : (spec.raw_max - raw) / span;
    return std::clamp(q, 0.0, 1.0);
}

TierTable::TierTable(CatalogPtr catalog, std::vector<ServiceTier> tiers)
    : catalog_(std::move(catalog)), tiers_(std::move(tiers)) {
    if (!catalog_) {
        throw ValidationError("tier table requires a catalog");
    }
    if (tiers_.empty()) {
        throw ValidationError("tier table must not be empty");
    }
    for (const auto& tier : tiers_) {
        if (tier.minima.size() != catalog_->size()) {
            throw ValidationError("tier " + tier.name + ": minima length mismatch");
        }
        for (std::size_t i = 0; i < tier.minima.size(); ++i) {
            if (tier.minima[i] < 0.0 || tier.minima[i] > 1.0) {
                throw ValidationError("tier " + tier.name + ": minima out of [0,1]");
            }
        }
    }
    // higher tiers dominate lower ones attribute-wise
    for (std::size_t t = 1; t < tiers_.size(); ++t) {
        for (std::size_t i = 0; i < catalog_->size(); ++i) {
            if (tiers_[t - 1].minima[i] < tiers_[t].minima[i]) {
                throw ValidationError("tier " + tiers_[t - 1].name +
                                      " must dominate tier " + tiers_[t].name +
                                      " on attribute " + catalog_->at(i).id);
            }
        }
    }
}

const ServiceTier& TierTable::find(std::string_view name) const {
    for (const auto& tier : tiers_) {
        if (tier.name == name) {
            return tier;
        }
    }
    throw NotFoundError("unknown tier: " + std::string(name));
}

TierTable TierTable::default_table(CatalogPtr catalog) {
    const std::vector<double> platinum{0.98, 0.65, 0.95, 0.90};
    if (catalog->size() != platinum.size()) {
        throw ValidationError("default tier table expects a 4-attribute catalog");
    }
    auto stepped = [&](double step) {
        std::vector<double> v(platinum.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = std::max(0.0, platinum[i] - step);
        }
        return v;
    };
    return TierTable(std::move(catalog), {ServiceTier{"platinum", platinum},
                                          ServiceTier{"gold", stepped(0.05)},
                                          ServiceTier{"silver", stepped(0.10)}});
}

RequirementProfile tier_to_profile(const TierTable& table, std::string_view tier_name,
                                   std::vector<double> weights,
                                   std::vector<double> sensitivities,
                                   std::optional<double> budget) {
    const ServiceTier& tier = table.find(tier_name);
    RequirementProfile profile{table.catalog(), tier.minima, std::move(weights),
                               std::move(sensitivities), budget};
    return validate_profile(std::move(profile));
}

RequirementProfile validate_profile(RequirementProfile profile) {
    if (!profile.catalog) {
        throw ValidationError("profile requires a catalog");
    }
    const std::size_t n = profile.catalog->size();
    if (profile.minima.size() != n || profile.weights.size() != n ||
        profile.sensitivities.size() != n) {
        throw ValidationError("profile vector lengths do not match catalog");
    }
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& id = profile.catalog->at(i).id;
        if (!std::isfinite(profile.minima[i]) || profile.minima[i] < 0.0 ||
            profile.minima[i] > 1.0) {
            throw ValidationError("attribute " + id + ": minimum must be in [0,1]");
        }
        if (!std::isfinite(profile.weights[i]) || profile.weights[i] < 0.0 ||
            profile.weights[i] > 1.0) {
            throw ValidationError("attribute " + id + ": weight must be in [0,1]");
        }
        if (!std::isfinite(profile.sensitivities[i]) || profile.sensitivities[i] < 0.0) {
            throw ValidationError("attribute " + id + ": sensitivity must be >= 0");
        }
        weight_sum += profile.weights[i];
    }
    if (std::abs(weight_sum - 1.0) > kWeightSumTolerance) {
        throw ValidationError("weights must sum to 1, got " + std::to_string(weight_sum));
    }
    if (profile.budget && (!std::isfinite(*profile.budget) || *profile.budget < 0.0)) {
        throw ValidationError("budget must be a non-negative finite value");
    }
    return profile;
}

CatalogPtr default_catalog() {
    return std::make_shared<AttributeCatalog>(std::vector<AttributeSpec>{
        {"availability", "Availability", Direction::HigherIsBetter, 0.0, 1.0,
         MetricKind::Boolean},
        {"inv_response_time", "1/RT", Direction::LowerIsBetter, 100.0, 1100.0,
         MetricKind::Continuous},
        {"reliability", "Reliability", Direction::HigherIsBetter, 0.0, 1.0,
         MetricKind::Continuous},
        {"throughput", "Throughput", Direction::HigherIsBetter, 0.0, 1000.0,
         MetricKind::Continuous},
    });
}

} // namespace csb
