#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csb/errors.hpp"

namespace csb {

enum class Direction { HigherIsBetter, LowerIsBetter };

// How raw samples of this attribute aggregate into a windowed indicator:
// Continuous metrics average their raw values and then normalize,
// Boolean metrics (up/down probes) report the fraction of up samples.
enum class MetricKind { Continuous, Boolean };

struct AttributeSpec {
    std::string id;
    std::string display_name;
    Direction direction = Direction::HigherIsBetter;
    double raw_min = 0.0; // raw-metric lower reference, native units
    double raw_max = 1.0;
    MetricKind kind = MetricKind::Continuous;
};

// Fixed, ordered attribute list shared by every vector and profile that
// references it. Attribute order is positional.
class AttributeCatalog {
public:
    explicit AttributeCatalog(std::vector<AttributeSpec> attributes);

    std::size_t size() const { return attributes_.size(); }
    const AttributeSpec& at(std::size_t i) const { return attributes_.at(i); }
    const std::vector<AttributeSpec>& attributes() const { return attributes_; }
    std::optional<std::size_t> index_of(std::string_view id) const;

    // Same ids in the same order.
    bool same_layout(const AttributeCatalog& other) const;

private:
    std::vector<AttributeSpec> attributes_;
};

using CatalogPtr = std::shared_ptr<const AttributeCatalog>;

bool same_catalog(const CatalogPtr& a, const CatalogPtr& b);

// Normalized quality values, one per catalog attribute, each in [0,1]
// (1 = highest quality).
struct QoSVector {
    CatalogPtr catalog;
    std::vector<double> values;
};

// Validates length and [0,1] range.
QoSVector make_qos_vector(CatalogPtr catalog, std::vector<double> values);

struct RequirementProfile {
    CatalogPtr catalog;
    std::vector<double> minima;        // the vector M, each in [0,1]
    std::vector<double> weights;       // w_i, sum to 1
    std::vector<double> sensitivities; // beta_i >= 0
    std::optional<double> budget;      // cost ceiling; absent = unlimited
};

struct ServiceTier {
    std::string name; // platinum | gold | silver
    std::vector<double> minima;
};

// Ordered tier list; minima must be attribute-wise non-increasing from the
// first (highest) tier down.
class TierTable {
public:
    TierTable(CatalogPtr catalog, std::vector<ServiceTier> tiers);

    const ServiceTier& find(std::string_view name) const; // throws NotFoundError
    const std::vector<ServiceTier>& tiers() const { return tiers_; }
    const CatalogPtr& catalog() const { return catalog_; }

    // platinum anchored to the default consumer-minimum row, gold/silver
    // stepped down 0.05 / 0.10 per attribute with a floor at 0.
    static TierTable default_table(CatalogPtr catalog);

private:
    CatalogPtr catalog_;
    std::vector<ServiceTier> tiers_;
};

// Clamped min-max with direction inversion. Rejects non-finite raw values.
double normalize_metric(double raw, const AttributeSpec& spec);

RequirementProfile tier_to_profile(const TierTable& table, std::string_view tier_name,
                                   std::vector<double> weights,
                                   std::vector<double> sensitivities,
                                   std::optional<double> budget);

// Returns the profile iff every RequirementProfile invariant holds, else
// throws ValidationError naming the offending attribute.
RequirementProfile validate_profile(RequirementProfile profile);

// The four-attribute catalog used by the bundled scenarios: availability,
// inverse response time, reliability, throughput.
CatalogPtr default_catalog();

} // namespace csb
