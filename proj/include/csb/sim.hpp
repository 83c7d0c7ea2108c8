#pragma once

#include <memory>
#include <nlohmann/json.hpp>
#include <random>
#include <string>
#include <vector>

#include "csb/broker.hpp"

namespace csb::sim {

struct Distribution {
    enum class Type { Constant, Uniform, Drift } type = Type::Constant;
    double a = 0.0; // constant value | uniform lower | drift start
    double b = 0.0; // uniform upper | drift slope per second
};

enum class NegotiationPolicy { AcceptAlways, RejectAlways, CounterOnce, AcceptIfCostAtLeast };

struct SimProviderConfig {
    std::string provider_id;
    std::string display_name;
    std::vector<Offering> offerings;
    // true QoS generator per attribute id; raw values in native units
    std::map<std::string, Distribution> generators;
    NegotiationPolicy policy = NegotiationPolicy::AcceptAlways;
    std::vector<double> counter_delta; // per attribute, for CounterOnce
    double cost_floor = 0.0;           // for AcceptIfCostAtLeast
    std::int64_t sample_period = 10;   // seconds between emitted samples
};

// Figure-2 stand-in: advertises offerings, answers negotiation per its
// configured policy, and emits measurement samples from its generators.
class SimProvider : public NegotiationResponder {
public:
    SimProvider(SimProviderConfig config, CatalogPtr catalog, std::uint64_t seed);

    NegotiationReply respond(const SLADocument& proposal, int round) override;

    // Samples covering [from, to), one per attribute every sample_period.
    std::vector<MeasurementSample> emit_samples(std::int64_t from, std::int64_t to);

    ProviderRecord record() const;
    const SimProviderConfig& config() const { return config_; }
    std::string endpoint() const { return "sim://" + config_.provider_id; }

private:
    double generate_raw(const AttributeSpec& spec, const Distribution& dist,
                        std::int64_t t);

    SimProviderConfig config_;
    CatalogPtr catalog_;
    std::mt19937_64 rng_;
    int counters_made_ = 0;
};

// Derives a per-provider seed from the scenario seed so adding a provider
// does not perturb the other streams.
std::uint64_t split_seed(std::uint64_t scenario_seed, const std::string& provider_id);

struct AssertionResult {
    std::string description;
    bool passed = false;
    std::string detail;
};

struct ScenarioOutcome {
    std::string transcript; // deterministic text log of the run
    nlohmann::json summary;
    std::vector<AssertionResult> assertions;
    bool all_assertions_passed() const;
};

struct Scenario {
    std::uint64_t seed = 0;
    CatalogPtr catalog;
    std::optional<nlohmann::json> tiers;
    std::vector<SimProviderConfig> providers;
    std::vector<ConsumerRecord> consumers;
    nlohmann::json timeline = nlohmann::json::array();
    nlohmann::json assertions = nlohmann::json::array();
    BrokerConfig broker_overrides; // penalty/window/max_rounds picked up from file
};

Scenario load_scenario(const nlohmann::json& j);
Scenario load_scenario_file(const std::string& path);

// Executes the timeline against an embedded broker. Identical seed and
// scenario produce byte-identical transcripts. data_dir may be empty for an
// in-memory run.
ScenarioOutcome run_scenario(const Scenario& scenario, const std::string& data_dir = {});

} // namespace csb::sim
