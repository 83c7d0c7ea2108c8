#pragma once

#include <memory>
#include <string>

namespace httplib {
class Server;
}

namespace csb {

class Broker;

// Mounts the broker's REST endpoints onto an httplib server:
//   POST /providers, POST /consumers, POST /requests, GET /rankings/{id},
//   POST /credentials, GET /reports/usage, GET /contracts/{id},
//   POST /measurements, GET /compliance/{id}
// Errors map to 400 (validation), 404 (unknown entity), 409 (state).
void mount_broker_api(httplib::Server& server, Broker& broker);

} // namespace csb
