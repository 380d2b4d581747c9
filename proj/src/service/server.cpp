#include "wprof/service/server.h"

#include <algorithm>
#include <cctype>

#include "httplib.h"
#include "wprof/common/error.h"

namespace wprof::service {

namespace {

void dispatch(const Api& api, const httplib::Request& req, httplib::Response& res) {
  ApiRequest r;
  r.method = req.method;
  r.path = req.path;
  r.body = req.body;
  for (const auto& [k, v] : req.headers) {
    std::string key = k;
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    r.headers[key] = v;
  }
  auto out = api.handle(r);
  res.status = out.status;
  for (const auto& [k, v] : out.headers) {
    if (k != "Content-Type") res.set_header(k, v);
  }
  if (!out.body.empty()) res.set_content(out.body, "application/json");
}

}  // namespace

HttpServer::HttpServer(std::shared_ptr<Api> api)
    : api_(std::move(api)), server_(std::make_unique<httplib::Server>()) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) { dispatch(*api_, req, res); };
  const std::string any = R"(/.*)";
  server_->Get(any, handler);
  server_->Post(any, handler);
  server_->Delete(any, handler);
  server_->Options(any, handler);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorKind::io, "cannot listen on " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_) server_->stop();
}

}  // namespace wprof::service
