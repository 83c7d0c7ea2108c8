#include "csb/json_io.hpp"

namespace csb {

namespace {

const char* direction_name(Direction d) {
    return d == Direction::HigherIsBetter ? "higher-is-better" : "lower-is-better";
}

Direction direction_from(const std::string& s) {
    if (s == "higher-is-better") return Direction::HigherIsBetter;
    if (s == "lower-is-better") return Direction::LowerIsBetter;
    throw ValidationError("unknown direction: " + s);
}

const char* kind_name(MetricKind k) {
    return k == MetricKind::Boolean ? "boolean" : "continuous";
}

MetricKind kind_from(const std::string& s) {
    if (s == "boolean") return MetricKind::Boolean;
    if (s == "continuous") return MetricKind::Continuous;
    throw ValidationError("unknown metric kind: " + s);
}

json qos_values(const QoSVector& v) { return json(v.values); }

QoSVector qos_from_values(const json& j, CatalogPtr catalog) {
    return make_qos_vector(std::move(catalog), j.get<std::vector<double>>());
}

json window_to_json(const TimeWindow& w) {
    return json{{"start", w.start}, {"end", w.end}};
}

TimeWindow window_from_json(const json& j) {
    return {j.at("start").get<std::int64_t>(), j.at("end").get<std::int64_t>()};
}

} // namespace

json catalog_to_json(const AttributeCatalog& catalog) {
    json attrs = json::array();
    for (const auto& spec : catalog.attributes()) {
        attrs.push_back({{"id", spec.id},
                         {"display_name", spec.display_name},
                         {"direction", direction_name(spec.direction)},
                         {"raw_min", spec.raw_min},
                         {"raw_max", spec.raw_max},
                         {"kind", kind_name(spec.kind)}});
    }
    return json{{"attributes", attrs}};
}

CatalogPtr catalog_from_json(const json& j) {
    std::vector<AttributeSpec> specs;
    for (const auto& a : j.at("attributes")) {
        AttributeSpec spec;
        spec.id = a.at("id").get<std::string>();
        spec.display_name = a.value("display_name", spec.id);
        spec.direction = direction_from(a.at("direction").get<std::string>());
        spec.raw_min = a.at("raw_min").get<double>();
        spec.raw_max = a.at("raw_max").get<double>();
        spec.kind = kind_from(a.value("kind", "continuous"));
        specs.push_back(std::move(spec));
    }
    return std::make_shared<AttributeCatalog>(std::move(specs));
}

json profile_to_json(const RequirementProfile& profile) {
    json j{{"minima", profile.minima},
           {"weights", profile.weights},
           {"sensitivities", profile.sensitivities}};
    if (profile.budget) {
        j["budget"] = *profile.budget;
    }
    return j;
}

RequirementProfile profile_from_json(const json& j, CatalogPtr catalog) {
    RequirementProfile profile;
    profile.catalog = std::move(catalog);
    profile.minima = j.at("minima").get<std::vector<double>>();
    profile.weights = j.at("weights").get<std::vector<double>>();
    profile.sensitivities = j.at("sensitivities").get<std::vector<double>>();
    if (j.contains("budget") && !j.at("budget").is_null()) {
        profile.budget = j.at("budget").get<double>();
    }
    return validate_profile(std::move(profile));
}

json tier_table_to_json(const TierTable& table) {
    json tiers = json::array();
    for (const auto& tier : table.tiers()) {
        tiers.push_back({{"name", tier.name}, {"minima", tier.minima}});
    }
    return json{{"tiers", tiers}};
}

TierTable tier_table_from_json(const json& j, CatalogPtr catalog) {
    std::vector<ServiceTier> tiers;
    for (const auto& t : j.at("tiers")) {
        tiers.push_back({t.at("name").get<std::string>(),
                         t.at("minima").get<std::vector<double>>()});
    }
    return TierTable(std::move(catalog), std::move(tiers));
}

json sla_document_to_json(const SLADocument& doc) {
    return json{{"consumer_id", doc.consumer_id},
                {"provider_id", doc.provider_id},
                {"service_type", doc.service_type},
                {"guarantees", qos_values(doc.guarantees)},
                {"cost", doc.cost},
                {"penalty",
                 {{"violation_threshold", doc.penalty.violation_threshold},
                  {"credit_per_violation", doc.penalty.credit_per_violation}}},
                {"validity", {{"start", doc.validity.start}, {"end", doc.validity.end}}},
                {"terms", doc.terms}};
}

SLADocument sla_document_from_json(const json& j, CatalogPtr catalog) {
    SLADocument doc;
    doc.consumer_id = j.at("consumer_id").get<std::string>();
    doc.provider_id = j.at("provider_id").get<std::string>();
    doc.service_type = j.at("service_type").get<std::string>();
    doc.guarantees = qos_from_values(j.at("guarantees"), std::move(catalog));
    doc.cost = j.at("cost").get<double>();
    doc.penalty.violation_threshold = j.at("penalty").at("violation_threshold").get<long>();
    doc.penalty.credit_per_violation =
        j.at("penalty").at("credit_per_violation").get<double>();
    doc.validity.start = j.at("validity").at("start").get<std::int64_t>();
    doc.validity.end = j.at("validity").at("end").get<std::int64_t>();
    doc.terms = j.at("terms").get<std::map<std::string, bool>>();
    return doc;
}

json contract_to_json(const Contract& contract) {
    return json{{"contract_id", contract.contract_id},
                {"document", sla_document_to_json(contract.document)},
                {"agreed_at", contract.agreed_at},
                {"status", contract.status == ContractStatus::Active ? "active" : "terminated"},
                {"violations", contract.violations},
                {"credited", contract.credited}};
}

Contract contract_from_json(const json& j, CatalogPtr catalog) {
    Contract c;
    c.contract_id = j.at("contract_id").get<std::string>();
    c.document = sla_document_from_json(j.at("document"), std::move(catalog));
    c.agreed_at = j.at("agreed_at").get<std::int64_t>();
    c.status = j.at("status").get<std::string>() == "active" ? ContractStatus::Active
                                                             : ContractStatus::Terminated;
    c.violations = j.at("violations").get<long>();
    c.credited = j.at("credited").get<double>();
    return c;
}

json provider_to_json(const ProviderRecord& record) {
    json offerings = json::array();
    for (const auto& o : record.offerings) {
        offerings.push_back({{"service_type", o.service_type},
                             {"qos", qos_values(o.qos)},
                             {"list_price", o.list_price},
                             {"supported_terms", o.supported_terms}});
    }
    return json{{"provider_id", record.provider_id},
                {"display_name", record.display_name},
                {"offerings", offerings},
                {"endpoint", record.endpoint}};
}

ProviderRecord provider_from_json(const json& j, CatalogPtr catalog) {
    ProviderRecord record;
    record.provider_id = j.at("provider_id").get<std::string>();
    record.display_name = j.value("display_name", record.provider_id);
    record.endpoint = j.value("endpoint", "sim://" + record.provider_id);
    for (const auto& o : j.at("offerings")) {
        Offering offering;
        offering.service_type = o.at("service_type").get<std::string>();
        offering.qos = qos_from_values(o.at("qos"), catalog);
        offering.list_price = o.at("list_price").get<double>();
        if (o.contains("supported_terms")) {
            offering.supported_terms = o.at("supported_terms").get<std::set<std::string>>();
        }
        record.offerings.push_back(std::move(offering));
    }
    return record;
}

json consumer_to_json(const ConsumerRecord& record) {
    json profiles = json::object();
    for (const auto& [service_type, profile] : record.profiles) {
        profiles[service_type] = profile_to_json(profile);
    }
    return json{{"consumer_id", record.consumer_id},
                {"profiles", profiles},
                {"demanded_terms", record.demanded_terms},
                {"group", record.group},
                {"principals", record.principals}};
}

ConsumerRecord consumer_from_json(const json& j, CatalogPtr catalog) {
    ConsumerRecord record;
    record.consumer_id = j.at("consumer_id").get<std::string>();
    for (const auto& [service_type, p] : j.at("profiles").items()) {
        record.profiles.emplace(service_type, profile_from_json(p, catalog));
    }
    if (j.contains("demanded_terms")) {
        record.demanded_terms = j.at("demanded_terms").get<std::set<std::string>>();
    }
    record.group = j.value("group", "");
    if (j.contains("principals")) {
        record.principals = j.at("principals").get<std::vector<std::string>>();
    }
    return record;
}

json policy_to_json(const Policy& policy) {
    json j{{"policy_id", policy.policy_id},
           {"kind", policy.kind == PolicyKind::Authorization ? "authorization" : "selection"}};
    if (policy.authorization) {
        j["authorization"] = {{"principal_pattern", policy.authorization->principal_pattern},
                              {"action", policy.authorization->action},
                              {"allow", policy.authorization->allow}};
    }
    if (policy.selection) {
        j["selection"] = {{"provider_allow", policy.selection->provider_allow},
                          {"provider_deny", policy.selection->provider_deny}};
    }
    return j;
}

Policy policy_from_json(const json& j) {
    Policy policy;
    policy.policy_id = j.at("policy_id").get<std::string>();
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "authorization") {
        policy.kind = PolicyKind::Authorization;
        const auto& a = j.at("authorization");
        policy.authorization = AuthorizationRule{a.at("principal_pattern").get<std::string>(),
                                                 a.at("action").get<std::string>(),
                                                 a.at("allow").get<bool>()};
    } else if (kind == "selection") {
        policy.kind = PolicyKind::Selection;
        const auto& s = j.at("selection");
        policy.selection =
            SelectionRule{s.value("provider_allow", std::vector<std::string>{}),
                          s.value("provider_deny", std::vector<std::string>{})};
    } else {
        throw ValidationError("unknown policy kind: " + kind);
    }
    return policy;
}

json credential_to_json(const CredentialMapping& mapping) {
    return json{{"principal_id", mapping.principal_id},
                {"provider_id", mapping.provider_id},
                {"token", mapping.token},
                {"issued_at", mapping.issued_at},
                {"expires_at", mapping.expires_at}};
}

CredentialMapping credential_from_json(const json& j) {
    return CredentialMapping{j.at("principal_id").get<std::string>(),
                             j.at("provider_id").get<std::string>(),
                             j.at("token").get<std::string>(),
                             j.at("issued_at").get<std::int64_t>(),
                             j.at("expires_at").get<std::int64_t>()};
}

json usage_event_to_json(const UsageEvent& event) {
    return json{{"timestamp", event.timestamp},
                {"group", event.group},
                {"consumer_id", event.consumer_id},
                {"principal_id", event.principal_id},
                {"provider_id", event.provider_id},
                {"service_type", event.service_type},
                {"kind", event.kind == UsageKind::Request ? "request" : "credential-access"}};
}

UsageEvent usage_event_from_json(const json& j) {
    UsageEvent event;
    event.timestamp = j.at("timestamp").get<std::int64_t>();
    event.group = j.at("group").get<std::string>();
    event.consumer_id = j.at("consumer_id").get<std::string>();
    event.principal_id = j.value("principal_id", "");
    event.provider_id = j.at("provider_id").get<std::string>();
    event.service_type = j.at("service_type").get<std::string>();
    event.kind = j.at("kind").get<std::string>() == "request" ? UsageKind::Request
                                                              : UsageKind::CredentialAccess;
    return event;
}

json sample_to_json(const MeasurementSample& sample) {
    return json{{"provider_id", sample.provider_id},
                {"service_type", sample.service_type},
                {"attribute_id", sample.attribute_id},
                {"timestamp", sample.timestamp},
                {"raw", sample.raw},
                {"source_id", sample.source_id}};
}

MeasurementSample sample_from_json(const json& j) {
    return MeasurementSample{j.at("provider_id").get<std::string>(),
                             j.value("service_type", ""),
                             j.at("attribute_id").get<std::string>(),
                             j.at("timestamp").get<std::int64_t>(),
                             j.at("raw").get<double>(),
                             j.value("source_id", "unknown")};
}

json violation_to_json(const ViolationEvent& event) {
    return json{{"contract_id", event.contract_id},
                {"attribute_id", event.attribute_id},
                {"window", window_to_json(event.window)},
                {"measured", event.measured},
                {"guaranteed", event.guaranteed},
                {"timestamp", event.timestamp}};
}

ViolationEvent violation_from_json(const json& j) {
    return ViolationEvent{j.at("contract_id").get<std::string>(),
                          j.at("attribute_id").get<std::string>(),
                          window_from_json(j.at("window")),
                          j.at("measured").get<double>(),
                          j.at("guaranteed").get<double>(),
                          j.at("timestamp").get<std::int64_t>()};
}

json indicator_to_json(const IndicatorWindow& window) {
    return json{{"provider_id", window.provider_id},
                {"attribute_id", window.attribute_id},
                {"window", window_to_json(window.window)},
                {"value", window.value},
                {"sample_count", window.sample_count}};
}

IndicatorWindow indicator_from_json(const json& j) {
    return IndicatorWindow{j.at("provider_id").get<std::string>(),
                           j.at("attribute_id").get<std::string>(),
                           window_from_json(j.at("window")),
                           j.at("value").get<double>(),
                           j.at("sample_count").get<std::size_t>()};
}

json ranking_to_json(const RankingResult& ranking) {
    json entries = json::array();
    for (const auto& e : ranking.entries) {
        entries.push_back({{"provider_id", e.provider_id},
                           {"utility", e.score.utility},
                           {"utility_display", display_round2(e.score.utility)},
                           {"contributions", e.score.contributions},
                           {"accepted", e.accepted}});
    }
    return json{{"entries", entries},
                {"threshold", ranking.threshold},
                {"threshold_display", display_round2(ranking.threshold)}};
}

RankingResult ranking_from_json(const json& j) {
    RankingResult ranking;
    ranking.threshold = j.at("threshold").get<double>();
    for (const auto& e : j.at("entries")) {
        RankedEntry entry;
        entry.provider_id = e.at("provider_id").get<std::string>();
        entry.score.subject_id = entry.provider_id;
        entry.score.utility = e.at("utility").get<double>();
        entry.score.contributions = e.at("contributions").get<std::vector<double>>();
        entry.accepted = e.at("accepted").get<bool>();
        ranking.entries.push_back(std::move(entry));
    }
    return ranking;
}

json provisioning_to_json(const ProvisioningResult& result) {
    return json{{"request_id", result.request_id},
                {"consumer_id", result.consumer_id},
                {"service_type", result.service_type},
                {"ranking", ranking_to_json(result.ranking)},
                {"attempted", result.attempted},
                {"success", result.success},
                {"contract_id", result.contract_id},
                {"failure", result.failure},
                {"started_at", result.started_at},
                {"finished_at", result.finished_at}};
}

ProvisioningResult provisioning_from_json(const json& j) {
    ProvisioningResult result;
    result.request_id = j.at("request_id").get<std::string>();
    result.consumer_id = j.at("consumer_id").get<std::string>();
    result.service_type = j.at("service_type").get<std::string>();
    result.ranking = ranking_from_json(j.at("ranking"));
    result.attempted = j.at("attempted").get<std::vector<std::string>>();
    result.success = j.at("success").get<bool>();
    result.contract_id = j.value("contract_id", "");
    result.failure = j.value("failure", "");
    result.started_at = j.at("started_at").get<std::int64_t>();
    result.finished_at = j.at("finished_at").get<std::int64_t>();
    return result;
}

json usage_report_to_json(const UsageReport& report) {
    json rows = json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"service_type", row.service_type},
                        {"provider_id", row.provider_id},
                        {"request_count", row.request_count},
                        {"credential_access_count", row.credential_access_count}});
    }
    return json{{"group", report.group},
                {"period", window_to_json(report.period)},
                {"rows", rows}};
}

json compliance_report_to_json(const ComplianceReport& report) {
    json per_attr = json::object();
    for (const auto& [attr, stats] : report.per_attribute) {
        json s{{"windows_observed", stats.windows_observed},
               {"violations", stats.violations}};
        if (stats.worst_indicator) {
            s["worst_indicator"] = *stats.worst_indicator;
        }
        per_attr[attr] = std::move(s);
    }
    return json{{"contract_id", report.contract_id},
                {"period", window_to_json(report.period)},
                {"per_attribute", per_attr},
                {"total_credit", report.total_credit}};
}

json negotiation_message(const std::string& session_id, int round,
                         NegotiationAction action, const SLADocument& doc) {
    return json{{"session_id", session_id},
                {"round", round},
                {"action", to_string(action)},
                {"document", sla_document_to_json(doc)}};
}

NegotiationMessage parse_negotiation_message(const json& j, CatalogPtr catalog) {
    NegotiationMessage message;
    message.session_id = j.at("session_id").get<std::string>();
    message.round = j.at("round").get<int>();
    message.action = action_from_string(j.at("action").get<std::string>());
    message.document = sla_document_from_json(j.at("document"), std::move(catalog));
    return message;
}

json transcript_entry_to_json(const TranscriptEntry& entry) {
    return json{{"round", entry.round},
                {"actor", to_string(entry.actor)},
                {"action", to_string(entry.action)},
                {"document", sla_document_to_json(entry.document)}};
}

TranscriptEntry transcript_entry_from_json(const json& j, CatalogPtr catalog) {
    TranscriptEntry entry;
    entry.round = j.at("round").get<int>();
    entry.actor = j.at("actor").get<std::string>() == "broker" ? NegotiationActor::Broker
                                                               : NegotiationActor::Provider;
    entry.action = action_from_string(j.at("action").get<std::string>());
    entry.document = sla_document_from_json(j.at("document"), std::move(catalog));
    return entry;
}

} // namespace csb
