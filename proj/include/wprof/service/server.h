#pragma once

#include <memory>
#include <string>

#include "wprof/service/api.h"

namespace httplib {
class Server;
}

namespace wprof::service {

// HTTP front end over Api. Requests are served concurrently; the Api only
// reads the immutable database and store snapshots.
class HttpServer {
 public:
  explicit HttpServer(std::shared_ptr<Api> api);
  ~HttpServer();

  // Binds and returns the bound port (port 0 picks a free one).
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  void listen();
  void stop();

 private:
  std::shared_ptr<Api> api_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace wprof::service
