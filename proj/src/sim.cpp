#include "csb/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "csb/json_io.hpp"

namespace csb::sim {

using nlohmann::json;

std::uint64_t split_seed(std::uint64_t scenario_seed, const std::string& provider_id) {
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    for (unsigned char c : provider_id) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h ^ scenario_seed;
}

SimProvider::SimProvider(SimProviderConfig config, CatalogPtr catalog, std::uint64_t seed)
    : config_(std::move(config)), catalog_(std::move(catalog)), rng_(seed) {
    for (const auto& [attr, dist] : config_.generators) {
        auto idx = catalog_->index_of(attr);
        if (!idx) {
            throw ValidationError("generator for unknown attribute: " + attr);
        }
        const AttributeSpec& spec = catalog_->at(*idx);
        auto in_bounds = [&](double v) {
            return v >= spec.raw_min && v <= spec.raw_max;
        };
        switch (dist.type) {
        case Distribution::Type::Constant:
            if (!in_bounds(dist.a)) {
                throw ValidationError("constant generator for " + attr +
                                      " outside reference bounds");
            }
            break;
        case Distribution::Type::Uniform:
            if (dist.a > dist.b || !in_bounds(dist.a) || !in_bounds(dist.b)) {
                throw ValidationError("uniform generator for " + attr +
                                      " outside reference bounds");
            }
            break;
        case Distribution::Type::Drift:
            if (!in_bounds(dist.a)) {
                throw ValidationError("drift generator for " + attr +
                                      " starts outside reference bounds");
            }
            break;
        }
    }
    if (!config_.counter_delta.empty() &&
        config_.counter_delta.size() != catalog_->size()) {
        throw ValidationError("counter delta length does not match catalog");
    }
}

NegotiationReply SimProvider::respond(const SLADocument& proposal, int /*round*/) {
    switch (config_.policy) {
    case NegotiationPolicy::AcceptAlways:
        return {NegotiationAction::Accept, std::nullopt};
    case NegotiationPolicy::RejectAlways:
        return {NegotiationAction::Reject, std::nullopt};
    case NegotiationPolicy::AcceptIfCostAtLeast:
        if (proposal.cost >= config_.cost_floor) {
            return {NegotiationAction::Accept, std::nullopt};
        }
        return {NegotiationAction::Reject, std::nullopt};
    case NegotiationPolicy::CounterOnce: {
        if (counters_made_ > 0) {
            return {NegotiationAction::Accept, std::nullopt};
        }
        ++counters_made_;
        SLADocument counter = proposal;
        std::vector<double> values = counter.guarantees.values;
        for (std::size_t i = 0; i < values.size() && i < config_.counter_delta.size(); ++i) {
            values[i] = std::clamp(values[i] + config_.counter_delta[i], 0.0, 1.0);
        }
        counter.guarantees = make_qos_vector(counter.guarantees.catalog, std::move(values));
        return {NegotiationAction::Counter, counter};
    }
    }
    return {NegotiationAction::Reject, std::nullopt};
}

double SimProvider::generate_raw(const AttributeSpec& spec, const Distribution& dist,
                                 std::int64_t t) {
    double value = 0.0;
    switch (dist.type) {
    case Distribution::Type::Constant:
        value = dist.a;
        break;
    case Distribution::Type::Uniform: {
        std::uniform_real_distribution<double> u(dist.a, dist.b);
        value = u(rng_);
        break;
    }
    case Distribution::Type::Drift:
        value = dist.a + dist.b * static_cast<double>(t);
        break;
    }
    return std::clamp(value, spec.raw_min, spec.raw_max);
}

std::vector<MeasurementSample> SimProvider::emit_samples(std::int64_t from,
                                                         std::int64_t to) {
    std::vector<MeasurementSample> samples;
    const std::string service_type =
        config_.offerings.empty() ? "" : config_.offerings.front().service_type;
    for (std::int64_t t = from; t < to; t += config_.sample_period) {
        for (const auto& [attr, dist] : config_.generators) {
            const AttributeSpec& spec = catalog_->at(*catalog_->index_of(attr));
            double raw = generate_raw(spec, dist, t);
            if (spec.kind == MetricKind::Boolean) {
                // raw is the instantaneous up probability
                std::bernoulli_distribution up(std::clamp(raw, 0.0, 1.0));
                raw = up(rng_) ? 1.0 : 0.0;
            }
            samples.push_back({config_.provider_id, service_type, attr, t, raw,
                               "sim:" + config_.provider_id});
        }
    }
    return samples;
}

ProviderRecord SimProvider::record() const {
    return ProviderRecord{config_.provider_id,
                          config_.display_name.empty() ? config_.provider_id
                                                       : config_.display_name,
                          config_.offerings, endpoint()};
}

namespace {

Distribution distribution_from_json(const json& j) {
    Distribution dist;
    std::string type = j.at("type").get<std::string>();
    if (type == "constant") {
        dist.type = Distribution::Type::Constant;
        dist.a = j.at("value").get<double>();
    } else if (type == "uniform") {
        dist.type = Distribution::Type::Uniform;
        dist.a = j.at("min").get<double>();
        dist.b = j.at("max").get<double>();
    } else if (type == "drift") {
        dist.type = Distribution::Type::Drift;
        dist.a = j.at("start").get<double>();
        dist.b = j.at("slope").get<double>();
    } else {
        throw ValidationError("unknown distribution type: " + type);
    }
    return dist;
}

NegotiationPolicy policy_from_json(const std::string& s) {
    if (s == "accept-always") return NegotiationPolicy::AcceptAlways;
    if (s == "reject-always") return NegotiationPolicy::RejectAlways;
    if (s == "counter-once") return NegotiationPolicy::CounterOnce;
    if (s == "accept-if-cost-at-least") return NegotiationPolicy::AcceptIfCostAtLeast;
    throw ValidationError("unknown negotiation policy: " + s);
}

SimProviderConfig sim_provider_from_json(const json& j, const CatalogPtr& catalog) {
    SimProviderConfig config;
    config.provider_id = j.at("provider_id").get<std::string>();
    config.display_name = j.value("display_name", config.provider_id);
    for (const auto& o : j.at("offerings")) {
        Offering offering;
        offering.service_type = o.at("service_type").get<std::string>();
        offering.qos = make_qos_vector(catalog, o.at("qos").get<std::vector<double>>());
        offering.list_price = o.at("list_price").get<double>();
        if (o.contains("supported_terms")) {
            offering.supported_terms = o.at("supported_terms").get<std::set<std::string>>();
        }
        config.offerings.push_back(std::move(offering));
    }
    if (j.contains("generators")) {
        for (const auto& [attr, d] : j.at("generators").items()) {
            config.generators.emplace(attr, distribution_from_json(d));
        }
    }
    config.policy = policy_from_json(j.value("policy", "accept-always"));
    if (j.contains("counter_delta")) {
        config.counter_delta = j.at("counter_delta").get<std::vector<double>>();
    }
    config.cost_floor = j.value("cost_floor", 0.0);
    config.sample_period = j.value("sample_period", std::int64_t{10});
    return config;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

} // namespace

Scenario load_scenario(const json& j) {
    Scenario scenario;
    scenario.seed = j.at("seed").get<std::uint64_t>();
    scenario.catalog = j.contains("catalog") ? catalog_from_json(j.at("catalog"))
                                             : default_catalog();
    if (j.contains("tiers")) {
        scenario.tiers = j.at("tiers");
    }
    for (const auto& p : j.at("providers")) {
        scenario.providers.push_back(sim_provider_from_json(p, scenario.catalog));
    }
    for (const auto& c : j.at("consumers")) {
        scenario.consumers.push_back(consumer_from_json(c, scenario.catalog));
    }
    scenario.timeline = j.at("timeline");
    if (j.contains("assertions")) {
        scenario.assertions = j.at("assertions");
    }
    scenario.broker_overrides.catalog = scenario.catalog;
    if (j.contains("broker")) {
        const auto& b = j.at("broker");
        scenario.broker_overrides.max_rounds = b.value("max_rounds", 3);
        if (b.contains("penalty")) {
            scenario.broker_overrides.penalty_defaults.violation_threshold =
                b.at("penalty").value("violation_threshold", 3L);
            scenario.broker_overrides.penalty_defaults.credit_per_violation =
                b.at("penalty").value("credit_per_violation", 5.0);
        }
        scenario.broker_overrides.window_length = b.value("window_length", std::int64_t{60});
        scenario.broker_overrides.credential_ttl =
            b.value("credential_ttl", std::int64_t{24 * 3600});
        scenario.broker_overrides.contract_duration =
            b.value("contract_duration", std::int64_t{30 * 24 * 3600});
    }
    return scenario;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw NotFoundError("cannot read scenario file: " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("malformed scenario file " + path + ": " + e.what());
    }
    try {
        return load_scenario(j);
    } catch (const json::exception& e) {
        throw ValidationError("malformed scenario file " + path + ": " + e.what());
    }
}

bool ScenarioOutcome::all_assertions_passed() const {
    return std::all_of(assertions.begin(), assertions.end(),
                       [](const AssertionResult& a) { return a.passed; });
}

ScenarioOutcome run_scenario(const Scenario& scenario, const std::string& data_dir) {
    ScenarioOutcome outcome;
    auto now = std::make_shared<std::int64_t>(0);

    BrokerConfig config = scenario.broker_overrides;
    config.catalog = scenario.catalog;
    config.data_dir = data_dir;
    config.token_seed = scenario.seed * 2862933555777941757ULL + 3037000493ULL;
    if (config.token_seed == 0) {
        config.token_seed = 1;
    }

    auto responders = std::make_shared<ResponderRegistry>();
    Broker broker(config, responders, [now] { return *now; });

    std::map<std::string, std::shared_ptr<SimProvider>> spawned;
    std::map<std::string, std::int64_t> emit_cursor;
    std::vector<ProvisioningResult> requests;

    std::string transcript;
    auto log = [&](const std::string& line) {
        transcript += "t=" + std::to_string(*now) + " " + line + "\n";
    };

    auto process_time = [&](std::int64_t target) {
        for (auto& [id, provider] : spawned) {
            auto samples = provider->emit_samples(emit_cursor[id], target);
            broker.ingest_measurements(samples);
            emit_cursor[id] = target;
            if (!samples.empty()) {
                log("emit provider=" + id + " samples=" + std::to_string(samples.size()));
            }
        }
        *now = target;
        std::size_t events = broker.process_compliance_until(target);
        if (events > 0) {
            log("violations new=" + std::to_string(events));
        }
    };

    for (const auto& action : scenario.timeline) {
        std::string kind = action.at("action").get<std::string>();
        if (kind == "register") {
            std::string id = action.at("provider_id").get<std::string>();
            auto it = std::find_if(scenario.providers.begin(), scenario.providers.end(),
                                   [&](const auto& p) { return p.provider_id == id; });
            if (it == scenario.providers.end()) {
                throw ValidationError("timeline registers unknown provider: " + id);
            }
            auto provider = std::make_shared<SimProvider>(*it, scenario.catalog,
                                                          split_seed(scenario.seed, id));
            responders->bind(provider->endpoint(), provider);
            broker.register_provider(provider->record());
            spawned.emplace(id, provider);
            emit_cursor[id] = *now;
            log("register provider=" + id);
        } else if (kind == "subscribe") {
            std::string id = action.at("consumer_id").get<std::string>();
            auto it = std::find_if(scenario.consumers.begin(), scenario.consumers.end(),
                                   [&](const auto& c) { return c.consumer_id == id; });
            if (it == scenario.consumers.end()) {
                throw ValidationError("timeline subscribes unknown consumer: " + id);
            }
            broker.subscribe_consumer(*it);
            log("subscribe consumer=" + id);
        } else if (kind == "request") {
            std::string consumer_id = action.at("consumer_id").get<std::string>();
            std::string service_type = action.at("service_type").get<std::string>();
            ProvisioningResult result =
                broker.handle_service_request(consumer_id, service_type);
            std::string ranking_line = "ranking " + result.request_id + ":";
            for (const auto& entry : result.ranking.entries) {
                ranking_line += " " + entry.provider_id + "=" +
                                format_double(entry.score.utility) +
                                (entry.accepted ? "(accepted)" : "(rejected)");
            }
            ranking_line += " threshold=" + format_double(result.ranking.threshold);
            log(ranking_line);
            std::string attempted;
            for (const auto& id : result.attempted) {
                attempted += (attempted.empty() ? "" : ",") + id;
            }
            if (result.success) {
                Contract contract = broker.get_contract(result.contract_id);
                log("request " + result.request_id + " agreed contract=" +
                    result.contract_id + " provider=" + contract.document.provider_id +
                    " attempted=" + attempted);
            } else {
                log("request " + result.request_id + " failed reason=" + result.failure +
                    " attempted=" + attempted);
            }
            requests.push_back(std::move(result));
        } else if (kind == "advance-time") {
            std::int64_t target = *now + action.at("seconds").get<std::int64_t>();
            log("advance-time to=" + std::to_string(target));
            process_time(target);
        } else if (kind == "emit-measurements") {
            std::vector<MeasurementSample> samples;
            for (const auto& s : action.at("samples")) {
                samples.push_back(sample_from_json(s));
            }
            broker.ingest_measurements(samples);
            log("ingest samples=" + std::to_string(samples.size()));
            broker.process_compliance_until(*now);
        } else if (kind == "resolve-credentials") {
            CredentialMapping mapping = broker.resolve_credentials(
                action.at("principal_id").get<std::string>(),
                action.at("provider_id").get<std::string>());
            log("credential principal=" + mapping.principal_id + " provider=" +
                mapping.provider_id + " token=" + mapping.token);
        } else {
            throw ValidationError("unknown timeline action: " + kind);
        }
    }

    // summary
    json contracts = json::array();
    for (const auto& contract : broker.contracts()) {
        contracts.push_back({{"contract_id", contract.contract_id},
                             {"provider_id", contract.document.provider_id},
                             {"consumer_id", contract.document.consumer_id},
                             {"violations", contract.violations},
                             {"credited", contract.credited}});
    }
    json request_summaries = json::array();
    for (const auto& result : requests) {
        request_summaries.push_back(provisioning_to_json(result));
    }
    outcome.summary = json{{"contracts", contracts},
                           {"requests", request_summaries},
                           {"violations", broker.violations().size()},
                           {"samples", broker.samples().size()}};

    // assertions
    auto contract_of_request = [&](std::size_t index) -> std::optional<Contract> {
        if (index >= requests.size() || !requests[index].success) {
            return std::nullopt;
        }
        return broker.get_contract(requests[index].contract_id);
    };
    for (const auto& a : scenario.assertions) {
        AssertionResult result;
        std::string type = a.at("type").get<std::string>();
        std::size_t idx = a.value("request", 0);
        result.description = type + " request=" + std::to_string(idx);
        if (idx >= requests.size()) {
            result.detail = "request index out of range";
            outcome.assertions.push_back(std::move(result));
            continue;
        }
        const ProvisioningResult& req = requests[idx];
        if (type == "outcome") {
            std::string expected = a.at("equals").get<std::string>();
            std::string actual = req.success ? "agreed" : "failed";
            result.passed = expected == actual;
            result.detail = "actual=" + actual;
        } else if (type == "contract_provider") {
            auto contract = contract_of_request(idx);
            std::string actual = contract ? contract->document.provider_id : "<none>";
            result.passed = contract && actual == a.at("equals").get<std::string>();
            result.detail = "actual=" + actual;
        } else if (type == "attempted") {
            auto expected = a.at("equals").get<std::vector<std::string>>();
            result.passed = req.attempted == expected;
            result.detail = "actual size=" + std::to_string(req.attempted.size());
        } else if (type == "never_attempted") {
            result.passed = true;
            for (const auto& id : a.at("providers")) {
                if (std::find(req.attempted.begin(), req.attempted.end(),
                              id.get<std::string>()) != req.attempted.end()) {
                    result.passed = false;
                    result.detail = "attempted " + id.get<std::string>();
                }
            }
        } else if (type == "ranking_order") {
            auto expected = a.at("equals").get<std::vector<std::string>>();
            std::vector<std::string> actual;
            for (const auto& entry : req.ranking.entries) {
                actual.push_back(entry.provider_id);
            }
            result.passed = actual == expected;
        } else if (type == "utilities_display") {
            auto expected = a.at("equals").get<std::vector<double>>();
            result.passed = expected.size() == req.ranking.entries.size();
            for (std::size_t i = 0; result.passed && i < expected.size(); ++i) {
                result.passed =
                    display_round2(req.ranking.entries[i].score.utility) == expected[i];
            }
        } else if (type == "threshold_display") {
            result.passed =
                display_round2(req.ranking.threshold) == a.at("equals").get<double>();
        } else if (type == "min_violations") {
            auto contract = contract_of_request(idx);
            long atleast = a.at("at_least").get<long>();
            result.passed = contract && contract->violations >= atleast;
            result.detail = contract ? "violations=" + std::to_string(contract->violations)
                                     : "no contract";
        } else if (type == "min_credit") {
            auto contract = contract_of_request(idx);
            double floor = a.at("greater_than").get<double>();
            result.passed = contract && contract->credited > floor;
            result.detail = contract ? "credited=" + format_double(contract->credited)
                                     : "no contract";
        } else {
            result.detail = "unknown assertion type";
        }
        outcome.assertions.push_back(std::move(result));
    }

    outcome.transcript = std::move(transcript);
    return outcome;
}

} // namespace csb::sim
