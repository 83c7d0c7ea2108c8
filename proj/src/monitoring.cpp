#include "csb/monitoring.hpp"

#include <cmath>

namespace csb {

void validate_sample(const MeasurementSample& sample, const AttributeCatalog& catalog) {
    if (!catalog.index_of(sample.attribute_id)) {
        throw ValidationError("unknown attribute: " + sample.attribute_id);
    }
    if (!std::isfinite(sample.raw)) {
        throw ValidationError("attribute " + sample.attribute_id +
                              ": non-finite raw value");
    }
    if (!std::isfinite(static_cast<double>(sample.timestamp))) {
        throw ValidationError("sample timestamp must be finite");
    }
}

std::optional<IndicatorWindow> aggregate_window(std::span<const MeasurementSample> samples,
                                                const std::string& provider_id,
                                                const std::string& attribute_id,
                                                TimeWindow window,
                                                const AttributeCatalog& catalog) {
    auto idx = catalog.index_of(attribute_id);
    if (!idx) {
        throw ValidationError("unknown attribute: " + attribute_id);
    }
    const AttributeSpec& spec = catalog.at(*idx);

    double sum = 0.0;
    std::size_t count = 0;
    std::size_t up = 0;
    for (const auto& s : samples) {
        if (s.provider_id != provider_id || s.attribute_id != attribute_id) {
            continue;
        }
        if (s.timestamp < window.start || s.timestamp >= window.end) {
            continue;
        }
        ++count;
        sum += s.raw;
        if (s.raw > 0.5) {
            ++up;
        }
    }
    if (count == 0) {
        return std::nullopt;
    }
    double value = spec.kind == MetricKind::Boolean
                       ? static_cast<double>(up) / static_cast<double>(count)
                       : normalize_metric(sum / static_cast<double>(count), spec);
    return IndicatorWindow{provider_id, attribute_id, window, value, count};
}

ComplianceOutcome check_compliance(const Contract& contract, TimeWindow window,
                                   std::span<const MeasurementSample> samples) {
    if (contract.status != ContractStatus::Active) {
        throw StateError("cannot check compliance of a terminated contract");
    }
    const auto& guarantees = contract.document.guarantees;
    const AttributeCatalog& catalog = *guarantees.catalog;

    ComplianceOutcome outcome;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        const std::string& attr = catalog.at(i).id;
        auto indicator = aggregate_window(samples, contract.document.provider_id, attr,
                                          window, catalog);
        if (!indicator) {
            outcome.no_data.push_back(attr);
            continue;
        }
        double guaranteed = guarantees.values[i];
        if (indicator->value < guaranteed - kComplianceEpsilon) {
            outcome.violations.push_back({contract.contract_id, attr, window,
                                          indicator->value, guaranteed, window.end});
        }
    }
    return outcome;
}

} // namespace csb
