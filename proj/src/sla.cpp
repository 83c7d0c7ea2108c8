#include "csb/sla.hpp"

#include <algorithm>
#include <cmath>

namespace csb {

void validate_sla_document(const SLADocument& doc) {
    make_qos_vector(doc.guarantees.catalog, doc.guarantees.values);
    if (!std::isfinite(doc.cost) || doc.cost < 0.0) {
        throw ValidationError("sla document: cost must be >= 0");
    }
    if (doc.penalty.violation_threshold < 1) {
        throw ValidationError("sla document: violation threshold must be >= 1");
    }
    if (doc.penalty.credit_per_violation < 0.0) {
        throw ValidationError("sla document: credit per violation must be >= 0");
    }
    if (!(doc.validity.start < doc.validity.end)) {
        throw ValidationError("sla document: validity start must precede end");
    }
}

const char* to_string(SessionState s) {
    switch (s) {
    case SessionState::Drafted: return "drafted";
    case SessionState::Proposed: return "proposed";
    case SessionState::Countered: return "countered";
    case SessionState::Agreed: return "agreed";
    case SessionState::Failed: return "failed";
    }
    return "?";
}

const char* to_string(NegotiationActor a) {
    return a == NegotiationActor::Broker ? "broker" : "provider";
}

const char* to_string(NegotiationAction a) {
    switch (a) {
    case NegotiationAction::Propose: return "propose";
    case NegotiationAction::Accept: return "accept";
    case NegotiationAction::Reject: return "reject";
    case NegotiationAction::Counter: return "counter";
    }
    return "?";
}

NegotiationAction action_from_string(std::string_view s) {
    if (s == "propose") return NegotiationAction::Propose;
    if (s == "accept") return NegotiationAction::Accept;
    if (s == "reject") return NegotiationAction::Reject;
    if (s == "counter") return NegotiationAction::Counter;
    throw ValidationError("unknown negotiation action: " + std::string(s));
}

const char* to_string(CounterRejectReason r) {
    return r == CounterRejectReason::BelowThreshold ? "below-threshold" : "over-budget";
}

SLADocument draft_sla(const SLARequest& request, const OfferingTerms& offering,
                      const PenaltyClause& penalty_defaults, ValidityWindow validity) {
    if (request.service_type != offering.service_type) {
        throw ValidationError("draft_sla: service type mismatch (" + request.service_type +
                              " vs " + offering.service_type + ")");
    }
    if (!same_catalog(request.profile.catalog, offering.advertised.catalog)) {
        throw ValidationError("draft_sla: profile and offering catalogs differ");
    }
    SLADocument doc;
    doc.consumer_id = request.consumer_id;
    doc.provider_id = offering.provider_id;
    doc.service_type = request.service_type;
    doc.guarantees = QoSVector{request.profile.catalog, request.profile.minima};
    doc.cost = offering.list_price;
    doc.penalty = penalty_defaults;
    doc.validity = validity;
    doc.terms = request.demanded_terms;
    validate_sla_document(doc);
    return doc;
}

CounterDecision evaluate_counter(const SLADocument& counter,
                                 const RequirementProfile& profile) {
    double utility = aggregate_utility(counter.guarantees, profile).utility;
    if (utility < acceptance_threshold(profile) - kAcceptEpsilon) {
        return {false, CounterRejectReason::BelowThreshold};
    }
    if (profile.budget && counter.cost > *profile.budget) {
        return {false, CounterRejectReason::OverBudget};
    }
    return {true, std::nullopt};
}

namespace {

bool terms_satisfied(const SLADocument& proposal, const SLADocument& counter) {
    for (const auto& [term, demanded] : proposal.terms) {
        if (!demanded) {
            continue;
        }
        auto it = counter.terms.find(term);
        if (it == counter.terms.end() || !it->second) {
            return false;
        }
    }
    return true;
}

void log_step(NegotiationSession& session, NegotiationActor actor,
              NegotiationAction action, const SLADocument& doc) {
    session.transcript.push_back({session.round, actor, action, doc});
}

} // namespace

NegotiationOutcome run_negotiation(NegotiationSession& session,
                                   NegotiationResponder* responder,
                                   const RequirementProfile& profile) {
    if (session.state != SessionState::Drafted) {
        throw StateError("negotiation session already started");
    }
    while (true) {
        if (session.round >= session.max_rounds) {
            session.state = SessionState::Failed;
            return {false, "exhausted", std::nullopt};
        }
        ++session.round;
        session.state = SessionState::Proposed;
        log_step(session, NegotiationActor::Broker, NegotiationAction::Propose,
                 session.document);
        if (responder == nullptr) {
            session.state = SessionState::Failed;
            return {false, "unreachable", std::nullopt};
        }
        NegotiationReply reply = responder->respond(session.document, session.round);
        switch (reply.action) {
        case NegotiationAction::Accept:
            log_step(session, NegotiationActor::Provider, NegotiationAction::Accept,
                     session.document);
            session.state = SessionState::Agreed;
            return {true, "", session.document};
        case NegotiationAction::Reject:
            log_step(session, NegotiationActor::Provider, NegotiationAction::Reject,
                     session.document);
            session.state = SessionState::Failed;
            return {false, "provider-rejected", std::nullopt};
        case NegotiationAction::Counter: {
            if (!reply.document) {
                throw ValidationError("counter reply without a document");
            }
            validate_sla_document(*reply.document);
            // the counter is itself an offer and consumes a round
            session.round = std::min(session.round + 1, session.max_rounds);
            session.state = SessionState::Countered;
            log_step(session, NegotiationActor::Provider, NegotiationAction::Counter,
                     *reply.document);
            bool ok = terms_satisfied(session.document, *reply.document) &&
                      evaluate_counter(*reply.document, profile).accepted;
            if (ok) {
                log_step(session, NegotiationActor::Broker, NegotiationAction::Accept,
                         *reply.document);
                session.state = SessionState::Agreed;
                return {true, "", *reply.document};
            }
            log_step(session, NegotiationActor::Broker, NegotiationAction::Reject,
                     *reply.document);
            if (session.round >= session.max_rounds) {
                session.state = SessionState::Failed;
                return {false, "exhausted", std::nullopt};
            }
            // loop re-proposes the broker's standing document
            break;
        }
        case NegotiationAction::Propose:
            throw StateError("provider may not issue a propose action");
        }
    }
}

SessionState replay_transcript(const std::vector<TranscriptEntry>& transcript,
                               int max_rounds) {
    SessionState state = SessionState::Drafted;
    int round = 0;
    for (const auto& entry : transcript) {
        switch (state) {
        case SessionState::Drafted:
        case SessionState::Proposed:
            if (state == SessionState::Drafted) {
                if (entry.actor != NegotiationActor::Broker ||
                    entry.action != NegotiationAction::Propose) {
                    throw StateError("transcript must open with a broker proposal");
                }
            }
            if (entry.actor == NegotiationActor::Broker) {
                if (entry.action != NegotiationAction::Propose || state == SessionState::Proposed) {
                    throw StateError("unexpected broker action while proposing");
                }
                if (entry.round != round + 1 || entry.round > max_rounds) {
                    throw StateError("proposal round out of sequence");
                }
                round = entry.round;
                state = SessionState::Proposed;
            } else {
                switch (entry.action) {
                case NegotiationAction::Accept:
                    if (entry.round != round) throw StateError("accept round mismatch");
                    state = SessionState::Agreed;
                    break;
                case NegotiationAction::Reject:
                    if (entry.round != round) throw StateError("reject round mismatch");
                    state = SessionState::Failed;
                    break;
                case NegotiationAction::Counter:
                    if (entry.round != std::min(round + 1, max_rounds)) {
                        throw StateError("counter round out of sequence");
                    }
                    round = entry.round;
                    state = SessionState::Countered;
                    break;
                default:
                    throw StateError("unexpected provider action");
                }
            }
            break;
        case SessionState::Countered:
            if (entry.actor != NegotiationActor::Broker || entry.round != round) {
                throw StateError("broker must answer the counter at its round");
            }
            if (entry.action == NegotiationAction::Accept) {
                state = SessionState::Agreed;
            } else if (entry.action == NegotiationAction::Reject) {
                state = round >= max_rounds ? SessionState::Failed : SessionState::Drafted;
                // Drafted here stands for "about to re-propose"
            } else {
                throw StateError("broker must accept or reject a counter");
            }
            break;
        case SessionState::Agreed:
        case SessionState::Failed:
            throw StateError("transcript continues past a terminal state");
        }
    }
    if (state != SessionState::Agreed && state != SessionState::Failed) {
        throw StateError("transcript ends mid-negotiation");
    }
    return state;
}

double apply_penalty(Contract& contract, long new_violations) {
    if (contract.status != ContractStatus::Active) {
        throw StateError("cannot apply penalties to a terminated contract");
    }
    if (new_violations < 0) {
        throw ValidationError("violation count delta must be >= 0");
    }
    contract.violations += new_violations;
    const double total_due =
        contract.document.penalty.credit_per_violation *
        static_cast<double>(std::max<long>(
            0, contract.violations - contract.document.penalty.violation_threshold));
    const double incremental = std::max(0.0, total_due - contract.credited);
    contract.credited += incremental;
    return incremental;
}

} // namespace csb
