#include <doctest.h>

#include <random>

#include "csb/sla.hpp"
#include "fixtures.hpp"

using namespace csb;

namespace {

SLARequest request_fixture(std::optional<double> budget = std::nullopt) {
    SLARequest request;
    request.consumer_id = "university";
    request.service_type = "grammar-checker";
    request.profile = fixtures::consumer_profile(budget);
    return request;
}

OfferingTerms sp4_offering(double price = 110.0) {
    return {"SP4", "grammar-checker",
            make_qos_vector(fixtures::catalog(), {0.98, 0.85, 0.98, 0.70}), price};
}

const PenaltyClause kPenalty{3, 5.0};
const ValidityWindow kValidity{0, 1000};

// scripted responder for driving the state machine
class ScriptedResponder : public NegotiationResponder {
public:
    explicit ScriptedResponder(std::vector<NegotiationReply> script)
        : script_(std::move(script)) {}

    NegotiationReply respond(const SLADocument&, int) override {
        if (calls_ >= script_.size()) {
            return {NegotiationAction::Reject, std::nullopt};
        }
        return script_[calls_++];
    }

    std::size_t calls() const { return calls_; }

private:
    std::vector<NegotiationReply> script_;
    std::size_t calls_ = 0;
};

SLADocument with_guarantees(const SLADocument& base, std::vector<double> values,
                            double cost) {
    SLADocument doc = base;
    doc.guarantees = make_qos_vector(base.guarantees.catalog, std::move(values));
    doc.cost = cost;
    return doc;
}

NegotiationSession drafted_session(const SLADocument& doc, int max_rounds = 3) {
    NegotiationSession session;
    session.session_id = "S-1";
    session.max_rounds = max_rounds;
    session.document = doc;
    return session;
}

} // namespace

TEST_CASE("draft_sla sets guarantees to the consumer minima") {
    auto doc = draft_sla(request_fixture(), sp4_offering(), kPenalty, kValidity);
    CHECK(doc.guarantees.values == std::vector<double>{0.98, 0.65, 0.95, 0.90});
    CHECK(doc.cost == 110.0);
    CHECK(doc.provider_id == "SP4");
    CHECK(doc.penalty.violation_threshold == 3);
}

TEST_CASE("draft_sla drafts even when the price exceeds the budget") {
    auto doc = draft_sla(request_fixture(100.0), sp4_offering(120.0), kPenalty, kValidity);
    CHECK(doc.cost == 120.0); // budget enforced at evaluation time
}

TEST_CASE("draft_sla rejects a service-type mismatch") {
    auto offering = sp4_offering();
    offering.service_type = "reference-manager";
    CHECK_THROWS_AS(draft_sla(request_fixture(), offering, kPenalty, kValidity),
                    ValidationError);
}

TEST_CASE("evaluate_counter follows the threshold rule") {
    auto profile = fixtures::consumer_profile();
    auto base = draft_sla(request_fixture(), sp4_offering(), kPenalty, kValidity);

    // SP3's row sits exactly on the threshold: accepted under the inclusive rule
    auto sp3 = with_guarantees(base, {0.97, 0.80, 0.96, 0.75}, 100.0);
    CHECK(evaluate_counter(sp3, profile).accepted);

    auto sp2 = with_guarantees(base, {0.98, 0.60, 0.97, 0.65}, 85.0);
    auto rejected = evaluate_counter(sp2, profile);
    CHECK_FALSE(rejected.accepted);
    CHECK(*rejected.reason == CounterRejectReason::BelowThreshold);
}

TEST_CASE("evaluate_counter enforces the budget") {
    auto profile = fixtures::consumer_profile(100.0);
    auto base = draft_sla(request_fixture(100.0), sp4_offering(), kPenalty, kValidity);
    auto counter = with_guarantees(base, {0.98, 0.85, 0.98, 0.90}, 150.0);
    auto decision = evaluate_counter(counter, profile);
    CHECK_FALSE(decision.accepted);
    CHECK(*decision.reason == CounterRejectReason::OverBudget);
}

TEST_CASE("negotiation: accept-anything agrees in round 1") {
    auto doc = draft_sla(request_fixture(), sp4_offering(), kPenalty, kValidity);
    auto session = drafted_session(doc);
    ScriptedResponder responder({{NegotiationAction::Accept, std::nullopt}});
    auto outcome = run_negotiation(session, &responder, fixtures::consumer_profile());
    CHECK(outcome.agreed);
    CHECK(session.state == SessionState::Agreed);
    CHECK(session.round == 1);
    REQUIRE(session.transcript.size() == 2);
    CHECK(session.transcript[0].action == NegotiationAction::Propose);
    CHECK(session.transcript[1].action == NegotiationAction::Accept);
}

TEST_CASE("negotiation: persistent low counters exhaust at max_rounds") {
    auto profile = fixtures::consumer_profile();
    auto doc = draft_sla(request_fixture(), sp4_offering(), kPenalty, kValidity);
    auto low = with_guarantees(doc, {0.5, 0.5, 0.5, 0.5}, 10.0);
    auto session = drafted_session(doc, 3);
    ScriptedResponder responder({{NegotiationAction::Counter, low},
                                 {NegotiationAction::Counter, low},
                                 {NegotiationAction::Counter, low}});
    auto outcome = run_negotiation(session, &responder, profile);
    CHECK_FALSE(outcome.agreed);
    CHECK(outcome.failure == "exhausted");
    CHECK(session.state == SessionState::Failed);
    CHECK(session.round == 3);
}

TEST_CASE("negotiation: acceptable counter agrees in round 2") {
    auto profile = fixtures::consumer_profile();
    auto doc = draft_sla(request_fixture(), sp4_offering(), kPenalty, kValidity);
    auto better = with_guarantees(doc, {0.98, 0.85, 0.98, 0.90}, 105.0);
    auto session = drafted_session(doc);
    ScriptedResponder responder({{NegotiationAction::Counter, better}});
    auto outcome = run_negotiation(session, &responder, profile);
    CHECK(outcome.agreed);
    CHECK(session.round == 2);
    REQUIRE(session.transcript.size() == 3); // propose, counter, accept
    CHECK(session.transcript[0].action == NegotiationAction::Propose);
    CHECK(session.transcript[1].action == NegotiationAction::Counter);
    CHECK(session.transcript[2].action == NegotiationAction::Accept);
    CHECK(outcome.agreed_document->cost == 105.0);
}

TEST_CASE("negotiation: provider rejection fails the session") {
    auto doc = draft_sla(request_fixture(), sp4_offering(), kPenalty, kValidity);
    auto session = drafted_session(doc);
    ScriptedResponder responder({{NegotiationAction::Reject, std::nullopt}});
    auto outcome = run_negotiation(session, &responder, fixtures::consumer_profile());
    CHECK_FALSE(outcome.agreed);
    CHECK(outcome.failure == "provider-rejected");
}

TEST_CASE("negotiation: unreachable responder") {
    auto doc = draft_sla(request_fixture(), sp4_offering(), kPenalty, kValidity);
    auto session = drafted_session(doc);
    auto outcome = run_negotiation(session, nullptr, fixtures::consumer_profile());
    CHECK_FALSE(outcome.agreed);
    CHECK(outcome.failure == "unreachable");
    CHECK(session.state == SessionState::Failed);
}

TEST_CASE("negotiation: counter missing demanded terms is refused") {
    auto request = request_fixture();
    request.demanded_terms["tenant-isolation"] = true;
    auto doc = draft_sla(request, sp4_offering(), kPenalty, kValidity);
    auto counter = with_guarantees(doc, {0.98, 0.85, 0.98, 0.90}, 105.0);
    counter.terms.clear();
    auto session = drafted_session(doc, 2);
    ScriptedResponder responder({{NegotiationAction::Counter, counter},
                                 {NegotiationAction::Counter, counter}});
    auto outcome = run_negotiation(session, &responder, fixtures::consumer_profile());
    CHECK_FALSE(outcome.agreed);
    CHECK(outcome.failure == "exhausted");
}

TEST_CASE("negotiation cannot be restarted") {
    auto doc = draft_sla(request_fixture(), sp4_offering(), kPenalty, kValidity);
    auto session = drafted_session(doc);
    ScriptedResponder responder({{NegotiationAction::Accept, std::nullopt}});
    run_negotiation(session, &responder, fixtures::consumer_profile());
    CHECK_THROWS_AS(run_negotiation(session, &responder, fixtures::consumer_profile()),
                    StateError);
}

TEST_CASE("random responder behaviour stays inside the state machine") {
    std::mt19937_64 rng(77);
    auto profile = fixtures::consumer_profile();
    auto doc = draft_sla(request_fixture(), sp4_offering(), kPenalty, kValidity);
    std::uniform_int_distribution<int> action(0, 2);
    std::uniform_int_distribution<int> rounds(1, 5);
    std::uniform_int_distribution<int> grid(0, 100);

    for (int iter = 0; iter < 500; ++iter) {
        int max_rounds = rounds(rng);
        std::vector<NegotiationReply> script;
        for (int s = 0; s < 8; ++s) {
            switch (action(rng)) {
            case 0:
                script.push_back({NegotiationAction::Accept, std::nullopt});
                break;
            case 1:
                script.push_back({NegotiationAction::Reject, std::nullopt});
                break;
            default: {
                std::vector<double> values(4);
                for (auto& v : values) v = grid(rng) / 100.0;
                script.push_back(
                    {NegotiationAction::Counter, with_guarantees(doc, values, 50.0)});
            }
            }
        }
        auto session = drafted_session(doc, max_rounds);
        ScriptedResponder responder(script);
        auto outcome = run_negotiation(session, &responder, profile);

        // terminates, bounded, and the transcript replays to the same state
        CHECK(session.round <= max_rounds);
        CHECK((session.state == SessionState::Agreed ||
               session.state == SessionState::Failed));
        CHECK(outcome.agreed == (session.state == SessionState::Agreed));
        CHECK(responder.calls() <= static_cast<std::size_t>(max_rounds));
        CHECK(replay_transcript(session.transcript, max_rounds) == session.state);
    }
}

TEST_CASE("replay rejects corrupted transcripts") {
    auto doc = draft_sla(request_fixture(), sp4_offering(), kPenalty, kValidity);
    auto session = drafted_session(doc);
    ScriptedResponder responder({{NegotiationAction::Accept, std::nullopt}});
    run_negotiation(session, &responder, fixtures::consumer_profile());

    auto swapped = session.transcript;
    std::swap(swapped[0], swapped[1]);
    CHECK_THROWS_AS(replay_transcript(swapped, session.max_rounds), StateError);

    auto truncated = session.transcript;
    truncated.pop_back();
    CHECK_THROWS_AS(replay_transcript(truncated, session.max_rounds), StateError);
}

TEST_CASE("apply_penalty: threshold then linear credits") {
    Contract contract;
    contract.contract_id = "C-1";
    contract.document = draft_sla(request_fixture(), sp4_offering(), kPenalty, kValidity);

    SUBCASE("five violations at once") {
        CHECK(apply_penalty(contract, 5) == doctest::Approx(10.0)); // (5-3)*5
        CHECK(contract.violations == 5);
    }
    SUBCASE("below the threshold no credit accrues") {
        CHECK(apply_penalty(contract, 2) == 0.0);
        CHECK(contract.credited == 0.0);
    }
    SUBCASE("credits are incremental") {
        apply_penalty(contract, 5); // credited 10
        CHECK(apply_penalty(contract, 2) == doctest::Approx(10.0)); // (7-3)*5 - 10
        CHECK(contract.credited == doctest::Approx(20.0));
    }
    SUBCASE("monotone over random event streams") {
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<long> events(0, 4);
        double last = 0.0;
        for (int i = 0; i < 50; ++i) {
            apply_penalty(contract, events(rng));
            CHECK(contract.credited >= last);
            if (contract.violations <= contract.document.penalty.violation_threshold) {
                CHECK(contract.credited == 0.0);
            }
            last = contract.credited;
        }
    }
    SUBCASE("terminated contracts reject penalties") {
        contract.status = ContractStatus::Terminated;
        CHECK_THROWS_AS(apply_penalty(contract, 1), StateError);
    }
}
