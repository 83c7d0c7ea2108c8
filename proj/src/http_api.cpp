#include "csb/http_api.hpp"

#include <limits>

#include <httplib.h>

#include "csb/broker.hpp"
#include "csb/json_io.hpp"

namespace csb {

namespace {

void reply_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
    try {
        fn();
    } catch (const NotFoundError& e) {
        reply_json(res, 404, json{{"error", e.what()}});
    } catch (const StateError& e) {
        reply_json(res, 409, json{{"error", e.what()}});
    } catch (const ValidationError& e) {
        reply_json(res, 400, json{{"error", e.what()}});
    } catch (const json::exception& e) {
        reply_json(res, 400, json{{"error", e.what()}});
    }
}

std::int64_t query_int(const httplib::Request& req, const std::string& key,
                       std::int64_t fallback) {
    if (!req.has_param(key)) {
        return fallback;
    }
    return std::stoll(req.get_param_value(key));
}

} // namespace

void mount_broker_api(httplib::Server& server, Broker& broker) {
    server.Post("/providers", [&broker](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            ProviderRecord record =
                provider_from_json(json::parse(req.body), broker.config().catalog);
            std::string id = broker.register_provider(record);
            reply_json(res, 201, json{{"provider_id", id}});
        });
    });

    server.Post("/consumers", [&broker](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body = json::parse(req.body);
            // profiles may name a tier instead of spelling out minima
            if (body.contains("profiles")) {
                for (auto& [service_type, profile] : body.at("profiles").items()) {
                    if (profile.contains("tier") && !profile.contains("minima")) {
                        if (!broker.config().tiers) {
                            throw ValidationError("no tier table configured");
                        }
                        profile["minima"] =
                            broker.config().tiers->find(profile.at("tier").get<std::string>())
                                .minima;
                        profile.erase("tier");
                    }
                }
            }
            ConsumerRecord record = consumer_from_json(body, broker.config().catalog);
            std::string id = broker.subscribe_consumer(record);
            reply_json(res, 201, json{{"consumer_id", id}});
        });
    });

    server.Post("/requests", [&broker](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body = json::parse(req.body);
            ProvisioningResult result = broker.handle_service_request(
                body.at("consumer_id").get<std::string>(),
                body.at("service_type").get<std::string>());
            reply_json(res, 200, provisioning_to_json(result));
        });
    });

    server.Get(R"(/rankings/([^/]+))",
               [&broker](const httplib::Request& req, httplib::Response& res) {
                   guarded(res, [&] {
                       ProvisioningResult result = broker.get_request(req.matches[1]);
                       reply_json(res, 200, ranking_to_json(result.ranking));
                   });
               });

    server.Post("/credentials", [&broker](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body = json::parse(req.body);
            CredentialMapping mapping = broker.resolve_credentials(
                body.at("principal_id").get<std::string>(),
                body.at("provider_id").get<std::string>());
            reply_json(res, 200, credential_to_json(mapping));
        });
    });

    server.Get("/reports/usage", [&broker](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            if (!req.has_param("group")) {
                throw ValidationError("missing query parameter: group");
            }
            TimeWindow period{query_int(req, "from", 0),
                              query_int(req, "to", std::numeric_limits<std::int64_t>::max())};
            UsageReport report = broker.usage_report(req.get_param_value("group"), period);
            reply_json(res, 200, usage_report_to_json(report));
        });
    });

    server.Get(R"(/contracts/([^/]+))",
               [&broker](const httplib::Request& req, httplib::Response& res) {
                   guarded(res, [&] {
                       Contract contract = broker.get_contract(req.matches[1]);
                       reply_json(res, 200, contract_to_json(contract));
                   });
               });

    server.Post("/measurements", [&broker](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body = json::parse(req.body);
            if (!body.is_array()) {
                throw ValidationError("measurements body must be a JSON array");
            }
            std::vector<MeasurementSample> samples;
            samples.reserve(body.size());
            for (const auto& s : body) {
                samples.push_back(sample_from_json(s));
            }
            broker.ingest_measurements(samples);
            reply_json(res, 202, json{{"ingested", samples.size()}});
        });
    });

    server.Get(R"(/compliance/([^/]+))",
               [&broker](const httplib::Request& req, httplib::Response& res) {
                   guarded(res, [&] {
                       TimeWindow period{
                           query_int(req, "from", 0),
                           query_int(req, "to", std::numeric_limits<std::int64_t>::max())};
                       ComplianceReport report =
                           broker.compliance_report(req.matches[1], period);
                       reply_json(res, 200, compliance_report_to_json(report));
                   });
               });
}

} // namespace csb
