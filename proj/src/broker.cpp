#include "csb/broker.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "csb/json_io.hpp"

namespace fs = std::filesystem;

namespace csb {

void ResponderRegistry::bind(const std::string& endpoint,
                             std::shared_ptr<NegotiationResponder> responder) {
    std::lock_guard lock(mutex_);
    responders_[endpoint] = std::move(responder);
}

void ResponderRegistry::unbind(const std::string& endpoint) {
    std::lock_guard lock(mutex_);
    responders_.erase(endpoint);
}

std::shared_ptr<NegotiationResponder>
ResponderRegistry::resolve(const std::string& endpoint) const {
    std::lock_guard lock(mutex_);
    auto it = responders_.find(endpoint);
    return it == responders_.end() ? nullptr : it->second;
}

namespace {

std::int64_t wall_clock_seconds() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::uint64_t parse_id_suffix(const std::string& id) {
    auto pos = id.rfind('-');
    if (pos == std::string::npos) {
        return 0;
    }
    try {
        return std::stoull(id.substr(pos + 1));
    } catch (...) {
        return 0;
    }
}

} // namespace

Broker::Broker(BrokerConfig config, std::shared_ptr<ResponderRegistry> responders,
               Clock clock)
    : config_(std::move(config)), responders_(std::move(responders)),
      clock_(std::move(clock)) {
    if (!config_.catalog) {
        throw ValidationError("broker requires a catalog");
    }
    if (!clock_) {
        clock_ = wall_clock_seconds;
    }
    std::uint64_t seed = config_.token_seed != 0 ? config_.token_seed
                                                 : std::random_device{}();
    token_rng_.seed(seed);
    if (!config_.data_dir.empty()) {
        fs::create_directories(config_.data_dir);
        fs::create_directories(fs::path(config_.data_dir) / "contracts");
    }
}

void Broker::append_log(const std::string& name, const std::string& line) {
    if (config_.data_dir.empty() || recovering_) {
        return;
    }
    std::ofstream out(fs::path(config_.data_dir) / (name + ".jsonl"), std::ios::app);
    out << line << '\n';
}

void Broker::persist_contract(const Contract& contract) {
    if (config_.data_dir.empty() || recovering_) {
        return;
    }
    fs::path path = fs::path(config_.data_dir) / "contracts" / (contract.contract_id + ".json");
    std::ofstream out(path);
    out << contract_to_json(contract).dump(2) << '\n';
}

void Broker::save_snapshot() {
    std::lock_guard lock(mutex_);
    if (config_.data_dir.empty()) {
        return;
    }
    json snap;
    json providers = json::array();
    for (const auto& [id, p] : providers_) providers.push_back(provider_to_json(p));
    json consumers = json::array();
    for (const auto& [id, c] : consumers_) consumers.push_back(consumer_to_json(c));
    json policies = json::array();
    for (const auto& [id, p] : policies_) policies.push_back(policy_to_json(p));
    json requests = json::array();
    for (const auto& [id, r] : requests_) requests.push_back(provisioning_to_json(r));
    json credentials = json::array();
    for (const auto& c : credentials_) credentials.push_back(credential_to_json(c));
    json usage = json::array();
    for (const auto& u : usage_) usage.push_back(usage_event_to_json(u));
    json samples = json::array();
    for (const auto& s : samples_) samples.push_back(sample_to_json(s));
    json violations = json::array();
    for (const auto& v : violations_) violations.push_back(violation_to_json(v));
    json indicators = json::array();
    for (const auto& w : indicators_) indicators.push_back(indicator_to_json(w));
    snap["providers"] = std::move(providers);
    snap["consumers"] = std::move(consumers);
    snap["policies"] = std::move(policies);
    snap["requests"] = std::move(requests);
    snap["credentials"] = std::move(credentials);
    snap["usage"] = std::move(usage);
    snap["samples"] = std::move(samples);
    snap["violations"] = std::move(violations);
    snap["indicators"] = std::move(indicators);
    snap["watermarks"] = compliance_watermark_;
    snap["next_request_id"] = next_request_id_;
    snap["next_contract_id"] = next_contract_id_;

    // record how far each log had grown; recovery replays only later lines
    json offsets = json::object();
    for (const char* name : {"providers", "consumers", "policies", "requests",
                             "credentials", "usage", "samples", "violations",
                             "indicators"}) {
        std::size_t lines = 0;
        std::ifstream in(fs::path(config_.data_dir) / (std::string(name) + ".jsonl"));
        std::string line;
        while (std::getline(in, line)) {
            ++lines;
        }
        offsets[name] = lines;
    }
    snap["log_offsets"] = std::move(offsets);

    std::ofstream out(fs::path(config_.data_dir) / "snapshot.json");
    out << snap.dump(2) << '\n';
}

void Broker::recover() {
    std::lock_guard lock(mutex_);
    if (config_.data_dir.empty()) {
        return;
    }
    recovering_ = true;
    providers_.clear();
    consumers_.clear();
    policies_.clear();
    contracts_.clear();
    requests_.clear();
    credentials_.clear();
    usage_.clear();
    samples_.clear();
    violations_.clear();
    indicators_.clear();
    compliance_watermark_.clear();
    log_lines_replayed_.clear();

    fs::path base(config_.data_dir);
    fs::path snap_path = base / "snapshot.json";
    if (fs::exists(snap_path)) {
        std::ifstream in(snap_path);
        json snap = json::parse(in);
        for (const auto& p : snap.at("providers")) {
            ProviderRecord r = provider_from_json(p, config_.catalog);
            providers_.emplace(r.provider_id, std::move(r));
        }
        for (const auto& c : snap.at("consumers")) {
            ConsumerRecord r = consumer_from_json(c, config_.catalog);
            consumers_.emplace(r.consumer_id, std::move(r));
        }
        for (const auto& p : snap.at("policies")) {
            Policy r = policy_from_json(p);
            policies_.emplace(r.policy_id, std::move(r));
        }
        for (const auto& r : snap.at("requests")) {
            ProvisioningResult res = provisioning_from_json(r);
            requests_.emplace(res.request_id, std::move(res));
        }
        for (const auto& c : snap.at("credentials")) {
            credentials_.push_back(credential_from_json(c));
        }
        for (const auto& u : snap.at("usage")) {
            usage_.push_back(usage_event_from_json(u));
        }
        for (const auto& s : snap.at("samples")) {
            samples_.push_back(sample_from_json(s));
        }
        for (const auto& v : snap.at("violations")) {
            violations_.push_back(violation_from_json(v));
        }
        for (const auto& w : snap.at("indicators")) {
            indicators_.push_back(indicator_from_json(w));
        }
        compliance_watermark_ =
            snap.at("watermarks").get<std::map<std::string, std::int64_t>>();
        next_request_id_ = snap.at("next_request_id").get<std::uint64_t>();
        next_contract_id_ = snap.at("next_contract_id").get<std::uint64_t>();
        for (const auto& [name, lines] : snap.at("log_offsets").items()) {
            log_lines_replayed_[name] = lines.get<std::size_t>();
        }
    }

    auto replay = [&](const std::string& name, auto&& apply) {
        std::ifstream in(base / (name + ".jsonl"));
        std::string line;
        std::size_t skip = log_lines_replayed_[name];
        std::size_t index = 0;
        while (std::getline(in, line)) {
            if (index++ < skip) {
                continue;
            }
            if (line.empty()) {
                continue;
            }
            apply(json::parse(line));
        }
    };

    replay("providers", [&](const json& j) {
        ProviderRecord r = provider_from_json(j, config_.catalog);
        providers_[r.provider_id] = std::move(r);
    });
    replay("consumers", [&](const json& j) {
        ConsumerRecord r = consumer_from_json(j, config_.catalog);
        consumers_[r.consumer_id] = std::move(r);
    });
    replay("policies", [&](const json& j) {
        Policy p = policy_from_json(j);
        policies_[p.policy_id] = std::move(p);
    });
    replay("requests", [&](const json& j) {
        ProvisioningResult r = provisioning_from_json(j);
        next_request_id_ = std::max(next_request_id_, parse_id_suffix(r.request_id) + 1);
        requests_[r.request_id] = std::move(r);
    });
    replay("credentials", [&](const json& j) { credentials_.push_back(credential_from_json(j)); });
    replay("usage", [&](const json& j) { usage_.push_back(usage_event_from_json(j)); });
    replay("samples", [&](const json& j) { samples_.push_back(sample_from_json(j)); });
    replay("violations", [&](const json& j) { violations_.push_back(violation_from_json(j)); });
    replay("indicators", [&](const json& j) { indicators_.push_back(indicator_from_json(j)); });

    // contract files are authoritative
    fs::path cdir = base / "contracts";
    if (fs::exists(cdir)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(cdir)) {
            if (entry.path().extension() == ".json") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto& path : files) {
            std::ifstream in(path);
            Contract c = contract_from_json(json::parse(in), config_.catalog);
            next_contract_id_ = std::max(next_contract_id_, parse_id_suffix(c.contract_id) + 1);
            contracts_.emplace(c.contract_id, std::move(c));
        }
    }

    // watermarks live in meta.json so recovery never double-counts windows
    fs::path meta_path = base / "meta.json";
    if (fs::exists(meta_path)) {
        std::ifstream in(meta_path);
        json meta = json::parse(in);
        compliance_watermark_ =
            meta.at("watermarks").get<std::map<std::string, std::int64_t>>();
    }
    recovering_ = false;
}

std::string Broker::register_provider(const ProviderRecord& record) {
    std::lock_guard lock(mutex_);
    if (record.provider_id.empty()) {
        throw ValidationError("provider id must not be empty");
    }
    if (providers_.count(record.provider_id)) {
        throw ValidationError("duplicate provider id: " + record.provider_id);
    }
    for (const auto& offering : record.offerings) {
        make_qos_vector(offering.qos.catalog, offering.qos.values);
        if (!same_catalog(offering.qos.catalog, config_.catalog)) {
            throw ValidationError("offering catalog does not match broker catalog");
        }
        if (offering.list_price < 0.0) {
            throw ValidationError("offering list price must be >= 0");
        }
    }
    providers_.emplace(record.provider_id, record);
    append_log("providers", provider_to_json(record).dump());
    return record.provider_id;
}

std::string Broker::subscribe_consumer(const ConsumerRecord& record) {
    std::lock_guard lock(mutex_);
    if (record.consumer_id.empty()) {
        throw ValidationError("consumer id must not be empty");
    }
    if (consumers_.count(record.consumer_id)) {
        throw ValidationError("duplicate consumer id: " + record.consumer_id);
    }
    for (const auto& [service_type, profile] : record.profiles) {
        validate_profile(profile);
        if (!same_catalog(profile.catalog, config_.catalog)) {
            throw ValidationError("profile catalog does not match broker catalog");
        }
    }
    consumers_.emplace(record.consumer_id, record);
    append_log("consumers", consumer_to_json(record).dump());
    return record.consumer_id;
}

void Broker::add_policy(const Policy& policy) {
    std::lock_guard lock(mutex_);
    if (policy.policy_id.empty()) {
        throw ValidationError("policy id must not be empty");
    }
    if (policies_.count(policy.policy_id)) {
        throw ValidationError("duplicate policy id: " + policy.policy_id);
    }
    bool has_auth = policy.authorization.has_value();
    bool has_sel = policy.selection.has_value();
    if (has_auth == has_sel) {
        throw ValidationError("policy must populate exactly one rule kind");
    }
    if ((policy.kind == PolicyKind::Authorization) != has_auth) {
        throw ValidationError("policy kind does not match populated rule");
    }
    policies_.emplace(policy.policy_id, policy);
    append_log("policies", policy_to_json(policy).dump());
}

AuthzDecision Broker::authorize(const std::string& principal_id,
                                const std::string& action) const {
    std::lock_guard lock(mutex_);
    // first match in policy-id order, default deny
    for (const auto& [id, policy] : policies_) {
        if (policy.kind != PolicyKind::Authorization) {
            continue;
        }
        const auto& rule = *policy.authorization;
        bool principal_ok =
            rule.principal_pattern == "*" || rule.principal_pattern == principal_id;
        bool action_ok = rule.action == "*" || rule.action == action;
        if (principal_ok && action_ok) {
            return {rule.allow, id};
        }
    }
    return {false, "default"};
}

std::string Broker::mint_token() {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << token_rng_()
        << std::setw(16) << std::setfill('0') << token_rng_();
    return out.str();
}

CredentialMapping Broker::resolve_credentials(const std::string& principal_id,
                                              const std::string& provider_id) {
    std::lock_guard lock(mutex_);
    const ConsumerRecord* consumer = nullptr;
    for (const auto& [id, record] : consumers_) {
        if (std::find(record.principals.begin(), record.principals.end(), principal_id) !=
            record.principals.end()) {
            consumer = &record;
            break;
        }
    }
    if (consumer == nullptr) {
        throw NotFoundError("unknown principal: " + principal_id);
    }
    const Contract* contract = nullptr;
    for (const auto& [id, c] : contracts_) {
        if (c.status == ContractStatus::Active &&
            c.document.consumer_id == consumer->consumer_id &&
            c.document.provider_id == provider_id) {
            contract = &c;
            break;
        }
    }
    if (contract == nullptr) {
        throw StateError("no active contract between " + consumer->consumer_id + " and " +
                         provider_id);
    }
    const std::int64_t now = clock_();
    UsageEvent event{now,
                     consumer->group,
                     consumer->consumer_id,
                     principal_id,
                     provider_id,
                     contract->document.service_type,
                     UsageKind::CredentialAccess};
    usage_.push_back(event);
    append_log("usage", usage_event_to_json(event).dump());

    for (const auto& mapping : credentials_) {
        if (mapping.principal_id == principal_id && mapping.provider_id == provider_id &&
            mapping.expires_at > now) {
            return mapping;
        }
    }
    CredentialMapping mapping{principal_id, provider_id, mint_token(), now,
                              now + config_.credential_ttl};
    credentials_.push_back(mapping);
    append_log("credentials", credential_to_json(mapping).dump());
    return mapping;
}

ProvisioningResult Broker::handle_service_request(const std::string& consumer_id,
                                                  const std::string& service_type) {
    std::lock_guard lock(mutex_);
    ProvisioningResult result = coordinate(consumer_id, service_type);
    requests_.emplace(result.request_id, result);
    append_log("requests", provisioning_to_json(result).dump());
    return result;
}

ProvisioningResult Broker::coordinate(const std::string& consumer_id,
                                      const std::string& service_type) {
    auto cit = consumers_.find(consumer_id);
    if (cit == consumers_.end()) {
        throw NotFoundError("unknown consumer: " + consumer_id);
    }
    const ConsumerRecord& consumer = cit->second;
    auto pit = consumer.profiles.find(service_type);
    if (pit == consumer.profiles.end()) {
        throw NotFoundError("consumer " + consumer_id + " has no profile for " + service_type);
    }
    const RequirementProfile& profile = pit->second;

    ProvisioningResult result;
    result.request_id = "REQ-" + std::to_string(next_request_id_++);
    result.consumer_id = consumer_id;
    result.service_type = service_type;
    result.started_at = clock_();

    // selection policies pre-filter the candidate set before ranking
    auto provider_allowed = [&](const std::string& provider_id) {
        for (const auto& [id, policy] : policies_) {
            if (policy.kind != PolicyKind::Selection) {
                continue;
            }
            const auto& rule = *policy.selection;
            if (std::find(rule.provider_deny.begin(), rule.provider_deny.end(),
                          provider_id) != rule.provider_deny.end()) {
                return false;
            }
            if (!rule.provider_allow.empty() &&
                std::find(rule.provider_allow.begin(), rule.provider_allow.end(),
                          provider_id) == rule.provider_allow.end()) {
                return false;
            }
        }
        return true;
    };

    std::vector<OfferingEntry> entries;
    std::map<std::string, const Offering*> offer_by_provider;
    std::map<std::string, const ProviderRecord*> record_by_provider;
    for (const auto& [id, record] : providers_) {
        if (!provider_allowed(id)) {
            continue;
        }
        for (const auto& offering : record.offerings) {
            if (offering.service_type == service_type) {
                entries.emplace_back(id, offering.qos);
                offer_by_provider[id] = &offering;
                record_by_provider[id] = &record;
                break;
            }
        }
    }
    if (entries.empty()) {
        result.failure = "no-providers";
        result.finished_at = clock_();
        return result;
    }

    result.ranking = rank_offerings(entries, profile);

    SLARequest request;
    request.consumer_id = consumer_id;
    request.service_type = service_type;
    request.profile = profile;
    for (const auto& term : consumer.demanded_terms) {
        request.demanded_terms[term] = true;
    }

    bool any_accepted = false;
    for (const auto& entry : result.ranking.entries) {
        if (!entry.accepted) {
            continue; // rejected offers are never negotiated with
        }
        any_accepted = true;
        const Offering& offering = *offer_by_provider.at(entry.provider_id);
        const ProviderRecord& record = *record_by_provider.at(entry.provider_id);
        result.attempted.push_back(entry.provider_id);

        const std::int64_t now = clock_();
        OfferingTerms terms{entry.provider_id, service_type, offering.qos,
                            offering.list_price};
        NegotiationSession session;
        session.session_id = result.request_id + ":" + entry.provider_id;
        session.max_rounds = config_.max_rounds;
        session.document = draft_sla(request, terms, config_.penalty_defaults,
                                     {now, now + config_.contract_duration});

        auto responder = responders_ ? responders_->resolve(record.endpoint) : nullptr;
        NegotiationOutcome outcome = run_negotiation(session, responder.get(), profile);
        if (!outcome.agreed) {
            continue; // fall back to the next accepted provider
        }

        Contract contract;
        contract.contract_id = "C-" + std::to_string(next_contract_id_++);
        contract.document = *outcome.agreed_document;
        contract.agreed_at = clock_();
        contracts_.emplace(contract.contract_id, contract);
        persist_contract(contract);

        UsageEvent event{contract.agreed_at, consumer.group, consumer_id,
                         "",  entry.provider_id, service_type, UsageKind::Request};
        usage_.push_back(event);
        append_log("usage", usage_event_to_json(event).dump());

        result.success = true;
        result.contract_id = contract.contract_id;
        break;
    }
    if (!result.success) {
        result.failure = any_accepted ? "no-agreement" : "no-accepted-providers";
    }
    result.finished_at = clock_();
    return result;
}

void Broker::ingest_measurement(const MeasurementSample& sample) {
    std::lock_guard lock(mutex_);
    validate_sample(sample, *config_.catalog);
    samples_.push_back(sample);
    append_log("samples", sample_to_json(sample).dump());
}

void Broker::ingest_measurements(const std::vector<MeasurementSample>& samples) {
    for (const auto& sample : samples) {
        ingest_measurement(sample);
    }
}

std::size_t Broker::process_compliance_until(std::int64_t until) {
    std::lock_guard lock(mutex_);
    std::size_t new_events = 0;
    const std::int64_t len = config_.window_length;
    for (auto& [contract_id, contract] : contracts_) {
        if (contract.status != ContractStatus::Active) {
            continue;
        }
        std::int64_t origin = contract.document.validity.start;
        auto it = compliance_watermark_.find(contract_id);
        std::int64_t cursor = it == compliance_watermark_.end() ? origin : it->second;
        std::int64_t limit = std::min(until, contract.document.validity.end);
        bool touched = false;
        while (cursor + len <= limit) {
            TimeWindow window{cursor, cursor + len};
            ComplianceOutcome outcome = check_compliance(contract, window, samples_);
            const auto& catalog = *contract.document.guarantees.catalog;
            for (std::size_t i = 0; i < catalog.size(); ++i) {
                const std::string& attr = catalog.at(i).id;
                auto indicator = aggregate_window(samples_, contract.document.provider_id,
                                                  attr, window, catalog);
                if (indicator) {
                    indicators_.push_back(*indicator);
                    append_log("indicators", indicator_to_json(*indicator).dump());
                }
            }
            for (const auto& violation : outcome.violations) {
                violations_.push_back(violation);
                append_log("violations", violation_to_json(violation).dump());
            }
            if (!outcome.violations.empty()) {
                apply_penalty(contract, static_cast<long>(outcome.violations.size()));
                new_events += outcome.violations.size();
            }
            cursor += len;
            touched = true;
        }
        if (touched) {
            compliance_watermark_[contract_id] = cursor;
            persist_contract(contract);
        }
    }
    if (!config_.data_dir.empty() && !recovering_) {
        std::ofstream out(fs::path(config_.data_dir) / "meta.json");
        out << json{{"watermarks", compliance_watermark_}}.dump(2) << '\n';
    }
    return new_events;
}

ComplianceReport Broker::compliance_report(const std::string& contract_id,
                                           TimeWindow period) const {
    std::lock_guard lock(mutex_);
    auto it = contracts_.find(contract_id);
    if (it == contracts_.end()) {
        throw NotFoundError("unknown contract: " + contract_id);
    }
    const Contract& contract = it->second;
    ComplianceReport report;
    report.contract_id = contract_id;
    report.period = period;
    std::size_t violation_count = 0;
    for (const auto& window : indicators_) {
        if (window.provider_id != contract.document.provider_id) {
            continue;
        }
        if (window.window.start < period.start || window.window.end > period.end) {
            continue;
        }
        auto& stats = report.per_attribute[window.attribute_id];
        ++stats.windows_observed;
        if (!stats.worst_indicator || window.value < *stats.worst_indicator) {
            stats.worst_indicator = window.value;
        }
    }
    for (const auto& violation : violations_) {
        if (violation.contract_id != contract_id) {
            continue;
        }
        if (violation.window.start < period.start || violation.window.end > period.end) {
            continue;
        }
        ++report.per_attribute[violation.attribute_id].violations;
        ++violation_count;
    }
    const auto& penalty = contract.document.penalty;
    report.total_credit =
        penalty.credit_per_violation *
        static_cast<double>(std::max<long>(
            0, static_cast<long>(violation_count) - penalty.violation_threshold));
    return report;
}

std::vector<ViolationEvent> Broker::recompute_violations(const std::string& contract_id,
                                                         TimeWindow period) const {
    std::lock_guard lock(mutex_);
    auto it = contracts_.find(contract_id);
    if (it == contracts_.end()) {
        throw NotFoundError("unknown contract: " + contract_id);
    }
    const Contract& contract = it->second;
    std::vector<ViolationEvent> events;
    const std::int64_t len = config_.window_length;
    std::int64_t cursor = contract.document.validity.start;
    while (cursor < period.start) {
        cursor += len;
    }
    while (cursor + len <= period.end) {
        TimeWindow window{cursor, cursor + len};
        ComplianceOutcome outcome = check_compliance(contract, window, samples_);
        events.insert(events.end(), outcome.violations.begin(), outcome.violations.end());
        cursor += len;
    }
    return events;
}

UsageReport Broker::usage_report(const std::string& group, TimeWindow period) const {
    std::lock_guard lock(mutex_);
    if (period.start > period.end) {
        throw ValidationError("usage report: malformed period");
    }
    UsageReport report;
    report.group = group;
    report.period = period;
    std::map<std::pair<std::string, std::string>, UsageReportRow> rows;
    for (const auto& event : usage_) {
        if (event.group != group) {
            continue;
        }
        if (event.timestamp < period.start || event.timestamp >= period.end) {
            continue; // inclusive start, exclusive end
        }
        auto& row = rows[{event.service_type, event.provider_id}];
        row.service_type = event.service_type;
        row.provider_id = event.provider_id;
        if (event.kind == UsageKind::Request) {
            ++row.request_count;
        } else {
            ++row.credential_access_count;
        }
    }
    for (auto& [key, row] : rows) {
        report.rows.push_back(std::move(row));
    }
    return report;
}

Contract Broker::get_contract(const std::string& contract_id) const {
    std::lock_guard lock(mutex_);
    auto it = contracts_.find(contract_id);
    if (it == contracts_.end()) {
        throw NotFoundError("unknown contract: " + contract_id);
    }
    return it->second;
}

ProvisioningResult Broker::get_request(const std::string& request_id) const {
    std::lock_guard lock(mutex_);
    auto it = requests_.find(request_id);
    if (it == requests_.end()) {
        throw NotFoundError("unknown request: " + request_id);
    }
    return it->second;
}

std::vector<ProviderRecord> Broker::providers() const {
    std::lock_guard lock(mutex_);
    std::vector<ProviderRecord> out;
    for (const auto& [id, p] : providers_) out.push_back(p);
    return out;
}

std::vector<ConsumerRecord> Broker::consumers() const {
    std::lock_guard lock(mutex_);
    std::vector<ConsumerRecord> out;
    for (const auto& [id, c] : consumers_) out.push_back(c);
    return out;
}

std::vector<Policy> Broker::policies() const {
    std::lock_guard lock(mutex_);
    std::vector<Policy> out;
    for (const auto& [id, p] : policies_) out.push_back(p);
    return out;
}

std::vector<Contract> Broker::contracts() const {
    std::lock_guard lock(mutex_);
    std::vector<Contract> out;
    for (const auto& [id, c] : contracts_) out.push_back(c);
    return out;
}

std::vector<MeasurementSample> Broker::samples() const {
    std::lock_guard lock(mutex_);
    return samples_;
}

std::vector<ViolationEvent> Broker::violations() const {
    std::lock_guard lock(mutex_);
    return violations_;
}

std::vector<IndicatorWindow> Broker::indicators() const {
    std::lock_guard lock(mutex_);
    return indicators_;
}

std::vector<UsageEvent> Broker::usage_events() const {
    std::lock_guard lock(mutex_);
    return usage_;
}

} // namespace csb
