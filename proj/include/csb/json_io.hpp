#pragma once

#include <nlohmann/json.hpp>

#include "csb/broker.hpp"

namespace csb {

using nlohmann::json;

json catalog_to_json(const AttributeCatalog& catalog);
CatalogPtr catalog_from_json(const json& j);

json profile_to_json(const RequirementProfile& profile);
RequirementProfile profile_from_json(const json& j, CatalogPtr catalog);

json tier_table_to_json(const TierTable& table);
TierTable tier_table_from_json(const json& j, CatalogPtr catalog);

json sla_document_to_json(const SLADocument& doc);
SLADocument sla_document_from_json(const json& j, CatalogPtr catalog);

json contract_to_json(const Contract& contract);
Contract contract_from_json(const json& j, CatalogPtr catalog);

json provider_to_json(const ProviderRecord& record);
ProviderRecord provider_from_json(const json& j, CatalogPtr catalog);

json consumer_to_json(const ConsumerRecord& record);
ConsumerRecord consumer_from_json(const json& j, CatalogPtr catalog);

json policy_to_json(const Policy& policy);
Policy policy_from_json(const json& j);

json credential_to_json(const CredentialMapping& mapping);
CredentialMapping credential_from_json(const json& j);

json usage_event_to_json(const UsageEvent& event);
UsageEvent usage_event_from_json(const json& j);

json sample_to_json(const MeasurementSample& sample);
MeasurementSample sample_from_json(const json& j);

json violation_to_json(const ViolationEvent& event);
ViolationEvent violation_from_json(const json& j);

json indicator_to_json(const IndicatorWindow& window);
IndicatorWindow indicator_from_json(const json& j);

json ranking_to_json(const RankingResult& ranking);
RankingResult ranking_from_json(const json& j);

json provisioning_to_json(const ProvisioningResult& result);
ProvisioningResult provisioning_from_json(const json& j);

json usage_report_to_json(const UsageReport& report);
json compliance_report_to_json(const ComplianceReport& report);

// Negotiation wire format: {session_id, round, action, document}.
json negotiation_message(const std::string& session_id, int round,
                         NegotiationAction action, const SLADocument& doc);
struct NegotiationMessage {
    std::string session_id;
    int round = 0;
    NegotiationAction action = NegotiationAction::Propose;
    SLADocument document;
};
NegotiationMessage parse_negotiation_message(const json& j, CatalogPtr catalog);

json transcript_entry_to_json(const TranscriptEntry& entry);
TranscriptEntry transcript_entry_from_json(const json& j, CatalogPtr catalog);

} // namespace csb
