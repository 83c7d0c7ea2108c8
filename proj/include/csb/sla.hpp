#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csb/qos.hpp"
#include "csb/selection.hpp"

namespace csb {

struct PenaltyClause {
    long violation_threshold = 3;      // "several violations" before credits start
    double credit_per_violation = 0.0; // currency per violation past the threshold
};

struct ValidityWindow {
    std::int64_t start = 0;
    std::int64_t end = 0;
};

struct SLADocument {
    std::string consumer_id;
    std::string provider_id;
    std::string service_type;
    QoSVector guarantees; // minimum qualities the provider must sustain
    double cost = 0.0;    // price per billing period
    PenaltyClause penalty;
    ValidityWindow validity;
    std::map<std::string, bool> terms; // qualitative checklist, take-it-or-leave-it
};

void validate_sla_document(const SLADocument& doc);

enum class SessionState { Drafted, Proposed, Countered, Agreed, Failed };
enum class NegotiationActor { Broker, Provider };
enum class NegotiationAction { Propose, Accept, Reject, Counter };

const char* to_string(SessionState s);
const char* to_string(NegotiationActor a);
const char* to_string(NegotiationAction a);
NegotiationAction action_from_string(std::string_view s);

struct TranscriptEntry {
    int round = 0;
    NegotiationActor actor = NegotiationActor::Broker;
    NegotiationAction action = NegotiationAction::Propose;
    SLADocument document;
};

struct NegotiationSession {
    std::string session_id;
    SessionState state = SessionState::Drafted;
    int round = 0;
    int max_rounds = 3;
    SLADocument document; // the broker's standing proposal
    std::vector<TranscriptEntry> transcript;
};

// One provider-side reply to a broker proposal.
struct NegotiationReply {
    NegotiationAction action = NegotiationAction::Reject; // Accept | Reject | Counter
    std::optional<SLADocument> document;                  // present for Counter
};

// Provider-side negotiation endpoint. Implementations answer each broker
// proposal; the broker resolves one by the provider's endpoint address.
class NegotiationResponder {
public:
    virtual ~NegotiationResponder() = default;
    virtual NegotiationReply respond(const SLADocument& proposal, int round) = 0;
};

enum class ContractStatus { Active, Terminated };

struct Contract {
    std::string contract_id;
    SLADocument document;
    std::int64_t agreed_at = 0;
    ContractStatus status = ContractStatus::Active;
    long violations = 0;   // monotone non-decreasing
    double credited = 0.0; // penalty credits granted so far
};

enum class CounterRejectReason { BelowThreshold, OverBudget };

struct CounterDecision {
    bool accepted = false;
    std::optional<CounterRejectReason> reason;
};

const char* to_string(CounterRejectReason r);

struct NegotiationOutcome {
    bool agreed = false;
    std::string failure; // "provider-rejected" | "exhausted" | "unreachable"
    std::optional<SLADocument> agreed_document;
};

struct SLARequest {
    std::string consumer_id;
    std::string service_type;
    RequirementProfile profile;
    std::map<std::string, bool> demanded_terms;
};

struct OfferingTerms {
    std::string provider_id;
    std::string service_type;
    QoSVector advertised;
    double list_price = 0.0;
};

// Opening proposal: guarantees are the consumer minima (the floor the SLA
// protects), cost is the provider's list price, penalty from broker defaults.
SLADocument draft_sla(const SLARequest& request, const OfferingTerms& offering,
                      const PenaltyClause& penalty_defaults, ValidityWindow validity);

// Accept iff the counter's guarantees clear the profile threshold and its
// cost fits the budget (when one is set).
CounterDecision evaluate_counter(const SLADocument& counter,
                                 const RequirementProfile& profile);

// Alternating offers. Each offer (propose or counter) consumes a round;
// accept/reject responses close at the current round. Session must be in
// Drafted state. A null responder fails as unreachable.
NegotiationOutcome run_negotiation(NegotiationSession& session,
                                   NegotiationResponder* responder,
                                   const RequirementProfile& profile);

// Walks a transcript through the state machine, validating every transition,
// and returns the terminal state. Throws StateError on an illegal sequence.
SessionState replay_transcript(const std::vector<TranscriptEntry>& transcript,
                               int max_rounds);

// Records new violation events and returns the incremental penalty credit
// under the threshold-then-linear model. Contract must be Active.
double apply_penalty(Contract& contract, long new_violations);

} // namespace csb
