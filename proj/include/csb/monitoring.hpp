#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csb/qos.hpp"
#include "csb/sla.hpp"

namespace csb {

// Compliance shortfall tolerance: measured == guarantee is compliant.
inline constexpr double kComplianceEpsilon = 1e-9;

struct MeasurementSample {
    std::string provider_id;
    std::string service_type;
    std::string attribute_id;
    std::int64_t timestamp = 0;
    double raw = 0.0;      // native units
    std::string source_id; // measurement plugin that produced the sample
};

struct TimeWindow {
    std::int64_t start = 0; // inclusive
    std::int64_t end = 0;   // exclusive
};

struct IndicatorWindow {
    std::string provider_id;
    std::string attribute_id;
    TimeWindow window;
    double value = 0.0; // normalized, in [0,1]
    std::size_t sample_count = 0;
};

struct ViolationEvent {
    std::string contract_id;
    std::string attribute_id;
    TimeWindow window;
    double measured = 0.0;
    double guaranteed = 0.0;
    std::int64_t timestamp = 0;
};

struct ComplianceOutcome {
    std::vector<ViolationEvent> violations;   // window then attribute order
    std::vector<std::string> no_data;         // attributes without samples
    bool compliant() const { return violations.empty(); }
};

struct AttributeComplianceStats {
    std::size_t windows_observed = 0;
    std::size_t violations = 0;
    std::optional<double> worst_indicator;
};

struct ComplianceReport {
    std::string contract_id;
    TimeWindow period;
    std::map<std::string, AttributeComplianceStats> per_attribute;
    double total_credit = 0.0;
};

void validate_sample(const MeasurementSample& sample, const AttributeCatalog& catalog);

// Boolean attributes report the up fraction; continuous attributes average
// raw values and normalize. nullopt on an empty window (no-data, not a zero).
std::optional<IndicatorWindow> aggregate_window(std::span<const MeasurementSample> samples,
                                                const std::string& provider_id,
                                                const std::string& attribute_id,
                                                TimeWindow window,
                                                const AttributeCatalog& catalog);

// One ViolationEvent per guaranteed attribute whose indicator falls strictly
// below its guarantee; no-data attributes are flagged, never violated.
ComplianceOutcome check_compliance(const Contract& contract, TimeWindow window,
                                   std::span<const MeasurementSample> samples);

} // namespace csb
