#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "csb/monitoring.hpp"
#include "csb/qos.hpp"
#include "csb/selection.hpp"
#include "csb/sla.hpp"

namespace csb {

struct Offering {
    std::string service_type;
    QoSVector qos; // advertised, normalized
    double list_price = 0.0;
    std::set<std::string> supported_terms;
};

struct ProviderRecord {
    std::string provider_id;
    std::string display_name;
    std::vector<Offering> offerings;
    std::string endpoint; // negotiation endpoint address
};

struct ConsumerRecord {
    std::string consumer_id;
    std::map<std::string, RequirementProfile> profiles; // keyed by service type
    std::set<std::string> demanded_terms;
    std::string group; // organization tag, e.g. a college
    std::vector<std::string> principals;
};

enum class PolicyKind { Authorization, Selection };

struct AuthorizationRule {
    std::string principal_pattern; // exact id or "*"
    std::string action;            // exact action or "*"
    bool allow = false;
};

struct SelectionRule {
    std::vector<std::string> provider_allow; // empty = allow all
    std::vector<std::string> provider_deny;
};

struct Policy {
    std::string policy_id;
    PolicyKind kind = PolicyKind::Authorization;
    std::optional<AuthorizationRule> authorization;
    std::optional<SelectionRule> selection;
};

struct AuthzDecision {
    bool allow = false;
    std::string reason; // "default" when no rule matched
};

struct CredentialMapping {
    std::string principal_id;
    std::string provider_id;
    std::string token; // opaque 128-bit random identifier, hex
    std::int64_t issued_at = 0;
    std::int64_t expires_at = 0;
};

enum class UsageKind { Request, CredentialAccess };

struct UsageEvent {
    std::int64_t timestamp = 0;
    std::string group;
    std::string consumer_id;
    std::string principal_id; // empty for service requests
    std::string provider_id;
    std::string service_type;
    UsageKind kind = UsageKind::Request;
};

struct ProvisioningResult {
    std::string request_id;
    std::string consumer_id;
    std::string service_type;
    RankingResult ranking;
    std::vector<std::string> attempted; // prefix of the accepted ranking
    bool success = false;
    std::string contract_id; // set on success
    std::string failure;     // no-providers | no-accepted-providers | no-agreement
    std::int64_t started_at = 0;
    std::int64_t finished_at = 0;
};

struct UsageReportRow {
    std::string service_type;
    std::string provider_id;
    std::size_t request_count = 0;
    std::size_t credential_access_count = 0;
};

struct UsageReport {
    std::string group;
    TimeWindow period;
    std::vector<UsageReportRow> rows; // service type then provider order
};

// Resolves negotiation endpoint addresses to in-process responders.
// Simulated providers register themselves here; an unknown address behaves
// as unreachable.
class ResponderRegistry {
public:
    void bind(const std::string& endpoint, std::shared_ptr<NegotiationResponder> responder);
    void unbind(const std::string& endpoint);
    std::shared_ptr<NegotiationResponder> resolve(const std::string& endpoint) const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<NegotiationResponder>> responders_;
};

struct BrokerConfig {
    std::string data_dir; // empty = in-memory only
    CatalogPtr catalog;
    std::shared_ptr<const TierTable> tiers; // optional, for tier-named profiles
    int max_rounds = 3;
    PenaltyClause penalty_defaults{3, 5.0};
    std::int64_t credential_ttl = 24 * 3600;
    std::int64_t contract_duration = 30 * 24 * 3600;
    std::int64_t window_length = 60; // compliance window, seconds
    std::uint64_t token_seed = 0;    // 0 = seed from entropy
};

// The Cloud Service Broker. All public operations are safe to call
// concurrently; mutations are serialized internally.
class Broker {
public:
    using Clock = std::function<std::int64_t()>;

    Broker(BrokerConfig config, std::shared_ptr<ResponderRegistry> responders,
           Clock clock);

    // Reloads persisted state from the data directory (snapshot + logs).
    void recover();

    // Writes a full snapshot; subsequent recovery replays only later log lines.
    void save_snapshot();

    // -- registry / IAM ------------------------------------------------------
    std::string register_provider(const ProviderRecord& record);
    std::string subscribe_consumer(const ConsumerRecord& record);
    void add_policy(const Policy& policy);
    AuthzDecision authorize(const std::string& principal_id, const std::string& action) const;
    CredentialMapping resolve_credentials(const std::string& principal_id,
                                          const std::string& provider_id);

    // -- coordinator ---------------------------------------------------------
    ProvisioningResult handle_service_request(const std::string& consumer_id,
                                              const std::string& service_type);

    // -- monitoring ----------------------------------------------------------
    void ingest_measurement(const MeasurementSample& sample);
    void ingest_measurements(const std::vector<MeasurementSample>& samples);
    // Evaluates every completed tumbling window up to `until` for all active
    // contracts, recording violations and penalty credits. Idempotent per
    // window. Returns the number of new violation events.
    std::size_t process_compliance_until(std::int64_t until);
    ComplianceReport compliance_report(const std::string& contract_id,
                                       TimeWindow period) const;
    // Re-derives the violation set for a contract from the raw sample log.
    std::vector<ViolationEvent> recompute_violations(const std::string& contract_id,
                                                     TimeWindow period) const;

    // -- reporting / lookups -------------------------------------------------
    UsageReport usage_report(const std::string& group, TimeWindow period) const;
    Contract get_contract(const std::string& contract_id) const;
    ProvisioningResult get_request(const std::string& request_id) const;
    std::vector<ProviderRecord> providers() const;
    std::vector<ConsumerRecord> consumers() const;
    std::vector<Policy> policies() const;
    std::vector<Contract> contracts() const;
    std::vector<MeasurementSample> samples() const;
    std::vector<ViolationEvent> violations() const;
    std::vector<IndicatorWindow> indicators() const;
    std::vector<UsageEvent> usage_events() const;

    const BrokerConfig& config() const { return config_; }

private:
    std::string mint_token();
    void append_log(const std::string& name, const std::string& line);
    void persist_contract(const Contract& contract);
    ProvisioningResult coordinate(const std::string& consumer_id,
                                  const std::string& service_type);

    BrokerConfig config_;
    std::shared_ptr<ResponderRegistry> responders_;
    Clock clock_;

    mutable std::recursive_mutex mutex_;
    std::map<std::string, ProviderRecord> providers_;
    std::map<std::string, ConsumerRecord> consumers_;
    std::map<std::string, Policy> policies_;
    std::map<std::string, Contract> contracts_;
    std::map<std::string, ProvisioningResult> requests_;
    std::vector<CredentialMapping> credentials_;
    std::vector<UsageEvent> usage_;
    std::vector<MeasurementSample> samples_;
    std::vector<ViolationEvent> violations_;
    std::vector<IndicatorWindow> indicators_;
    std::map<std::string, std::int64_t> compliance_watermark_; // per contract
    std::mt19937_64 token_rng_;
    std::uint64_t next_request_id_ = 1;
    std::uint64_t next_contract_id_ = 1;
    std::map<std::string, std::size_t> log_lines_replayed_;
    bool recovering_ = false;
};

} // namespace csb
