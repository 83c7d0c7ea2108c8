#include <CLI11.hpp>
#include <httplib.h>

#include <fstream>
#include <iostream>

#include "csb/broker.hpp"
#include "csb/http_api.hpp"
#include "csb/json_io.hpp"
#include "csb/sim.hpp"

namespace {

using csb::json;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw csb::NotFoundError("cannot read file: " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw csb::ValidationError("malformed JSON in " + path + ": " + e.what());
    }
}

struct OfferingsFile {
    csb::CatalogPtr catalog;
    std::vector<csb::OfferingEntry> entries;
};

OfferingsFile load_offerings(const std::string& path) {
    json j = load_json_file(path);
    OfferingsFile file;
    file.catalog = csb::catalog_from_json(j.at("catalog"));
    for (const auto& o : j.at("offerings")) {
        file.entries.emplace_back(
            o.at("provider_id").get<std::string>(),
            csb::make_qos_vector(file.catalog, o.at("qos").get<std::vector<double>>()));
    }
    if (file.entries.empty()) {
        throw csb::ValidationError("offerings file contains no offerings: " + path);
    }
    return file;
}

csb::RequirementProfile load_profile(const std::string& path, csb::CatalogPtr catalog) {
    json j = load_json_file(path);
    if (j.contains("catalog")) {
        auto own = csb::catalog_from_json(j.at("catalog"));
        if (!csb::same_catalog(own, catalog)) {
            throw csb::ValidationError("profile catalog does not match offerings catalog");
        }
    }
    return csb::profile_from_json(j, std::move(catalog));
}

int cmd_rank(const std::string& offerings_path, const std::string& profile_path) {
    OfferingsFile offerings = load_offerings(offerings_path);
    csb::RequirementProfile profile = load_profile(profile_path, offerings.catalog);
    csb::RankingResult ranking = csb::rank_offerings(offerings.entries, profile);
    std::printf("threshold %.4f (%.2f)\n", ranking.threshold,
                csb::display_round2(ranking.threshold));
    for (const auto& entry : ranking.entries) {
        std::printf("%s %.4f (%.2f) %s\n", entry.provider_id.c_str(), entry.score.utility,
                    csb::display_round2(entry.score.utility),
                    entry.accepted ? "accepted" : "rejected");
    }
    return 0;
}

int cmd_sweep(const std::string& offerings_path, const std::string& profile_path,
              double beta_min, double beta_max, double beta_step) {
    if (beta_step <= 0.0 || beta_max < beta_min || beta_min < 0.0) {
        throw csb::ValidationError("invalid beta grid");
    }
    OfferingsFile offerings = load_offerings(offerings_path);
    csb::RequirementProfile profile = load_profile(profile_path, offerings.catalog);
    std::vector<double> grid;
    const auto steps = static_cast<std::size_t>(
        std::llround((beta_max - beta_min) / beta_step));
    for (std::size_t i = 0; i <= steps; ++i) {
        grid.push_back(beta_min + static_cast<double>(i) * beta_step);
    }
    csb::SweepTable table = csb::sensitivity_sweep(offerings.entries, profile, grid);
    std::fputs(csb::sweep_to_csv(table).c_str(), stdout);
    return 0;
}

int cmd_scenario_run(const std::string& path, const std::string& data_dir, bool quiet) {
    csb::sim::Scenario scenario = csb::sim::load_scenario_file(path);
    csb::sim::ScenarioOutcome outcome = csb::sim::run_scenario(scenario, data_dir);
    if (!quiet) {
        std::fputs(outcome.transcript.c_str(), stdout);
    }
    std::printf("%s\n", outcome.summary.dump(2).c_str());
    bool ok = true;
    for (const auto& assertion : outcome.assertions) {
        std::printf("assert %s: %s%s%s\n", assertion.description.c_str(),
                    assertion.passed ? "pass" : "FAIL",
                    assertion.detail.empty() ? "" : " ", assertion.detail.c_str());
        ok = ok && assertion.passed;
    }
    return ok ? 0 : 1;
}

std::unique_ptr<csb::Broker> open_broker(const std::string& data_dir,
                                         const std::string& tiers_path, int max_rounds,
                                         long penalty_threshold, double penalty_credit) {
    csb::BrokerConfig config;
    config.data_dir = data_dir;
    config.catalog = csb::default_catalog();
    config.max_rounds = max_rounds;
    config.penalty_defaults = {penalty_threshold, penalty_credit};
    if (!tiers_path.empty()) {
        config.tiers = std::make_shared<csb::TierTable>(
            csb::tier_table_from_json(load_json_file(tiers_path), config.catalog));
    }
    auto broker = std::make_unique<csb::Broker>(
        config, std::make_shared<csb::ResponderRegistry>(), nullptr);
    broker->recover();
    return broker;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"QoS-driven cloud service broker"};
    app.require_subcommand(1);

    std::string data_dir = "csb-data";
    std::string tiers_path;
    std::string listen = "127.0.0.1:8080";
    int max_rounds = 3;
    long penalty_threshold = 3;
    double penalty_credit = 5.0;

    auto* serve = app.add_subcommand("serve", "start the broker service");
    serve->add_option("--data-dir", data_dir, "persistence directory");
    serve->add_option("--tiers", tiers_path, "tier table JSON file");
    serve->add_option("--listen", listen, "host:port to listen on");
    serve->add_option("--max-rounds", max_rounds, "negotiation round limit");
    serve->add_option("--penalty-threshold", penalty_threshold, "violations before credits");
    serve->add_option("--penalty-credit", penalty_credit, "credit per violation");

    auto* scenario = app.add_subcommand("scenario", "scenario tools");
    auto* scenario_run = scenario->add_subcommand("run", "run a scenario file");
    std::string scenario_path;
    std::string scenario_data_dir;
    bool scenario_quiet = false;
    scenario_run->add_option("file", scenario_path, "scenario JSON file")->required();
    scenario_run->add_option("--data-dir", scenario_data_dir, "persistence directory");
    scenario_run->add_flag("--quiet", scenario_quiet, "suppress the transcript");

    auto* rank = app.add_subcommand("rank", "rank offerings against a profile");
    std::string offerings_path, profile_path;
    rank->add_option("offerings", offerings_path, "offerings JSON file")->required();
    rank->add_option("profile", profile_path, "requirement profile JSON file")->required();

    auto* sweep = app.add_subcommand("sweep", "uniform-sensitivity utility sweep (CSV)");
    double beta_min = 0.0, beta_max = 3.0, beta_step = 0.1;
    sweep->add_option("offerings", offerings_path, "offerings JSON file")->required();
    sweep->add_option("profile", profile_path, "requirement profile JSON file")->required();
    sweep->add_option("--beta-min", beta_min);
    sweep->add_option("--beta-max", beta_max);
    sweep->add_option("--beta-step", beta_step);

    auto* report = app.add_subcommand("report", "reports from a broker data directory");
    auto* usage = report->add_subcommand("usage", "usage report per group");
    std::string group;
    std::int64_t from = 0, to = std::numeric_limits<std::int64_t>::max();
    usage->add_option("--data-dir", data_dir, "persistence directory");
    usage->add_option("--group", group, "organization tag")->required();
    usage->add_option("--from", from, "period start (inclusive)");
    usage->add_option("--to", to, "period end (exclusive)");
    auto* compliance = report->add_subcommand("compliance", "compliance report per contract");
    std::string contract_id;
    compliance->add_option("--data-dir", data_dir, "persistence directory");
    compliance->add_option("--contract", contract_id, "contract id")->required();
    compliance->add_option("--from", from, "period start (inclusive)");
    compliance->add_option("--to", to, "period end (exclusive)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (serve->parsed()) {
            auto broker = open_broker(data_dir, tiers_path, max_rounds, penalty_threshold,
                                      penalty_credit);
            auto colon = listen.rfind(':');
            if (colon == std::string::npos) {
                throw csb::ValidationError("listen address must be host:port");
            }
            std::string host = listen.substr(0, colon);
            int port = std::stoi(listen.substr(colon + 1));
            httplib::Server server;
            csb::mount_broker_api(server, *broker);
            std::fprintf(stderr, "listening on %s\n", listen.c_str());
            if (!server.listen(host, port)) {
                std::fprintf(stderr, "error: cannot listen on %s\n", listen.c_str());
                return 1;
            }
            return 0;
        }
        if (scenario_run->parsed()) {
            return cmd_scenario_run(scenario_path, scenario_data_dir, scenario_quiet);
        }
        if (rank->parsed()) {
            return cmd_rank(offerings_path, profile_path);
        }
        if (sweep->parsed()) {
            return cmd_sweep(offerings_path, profile_path, beta_min, beta_max, beta_step);
        }
        if (usage->parsed()) {
            auto broker = open_broker(data_dir, tiers_path, max_rounds, penalty_threshold,
                                      penalty_credit);
            auto result = broker->usage_report(group, {from, to});
            std::printf("%s\n", csb::usage_report_to_json(result).dump(2).c_str());
            return 0;
        }
        if (compliance->parsed()) {
            auto broker = open_broker(data_dir, tiers_path, max_rounds, penalty_threshold,
                                      penalty_credit);
            auto result = broker->compliance_report(contract_id, {from, to});
            std::printf("%s\n", csb::compliance_report_to_json(result).dump(2).c_str());
            return 0;
        }
        std::fprintf(stderr, "error: no subcommand given\n");
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
