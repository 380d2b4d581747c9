#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "json.hpp"
#include "wprof/common/error.h"
#include "wprof/gapengine/gap.h"
#include "wprof/profiledb/database.h"
#include "wprof/service/store.h"

namespace wprof::service {

inline constexpr std::string_view kOwnerTokenHeader = "X-Owner-Token";

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> headers;  // lowercase names
  std::string body;

  std::string header(std::string_view name) const;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;
};

struct ServiceOptions {
  gapengine::Weights weights;
  std::string cors_origin = "*";
  // Timestamp source for new assessments; wall clock when empty.
  std::function<std::string()> clock;
};

// Canonical offline result of an assessment: {assessment_id, report} dumped
// the same way the CLI prints it. The service returns exactly these bytes.
nlohmann::json assessment_result(const std::string& assessment_id, const gapengine::GapReport& report);

// Id used when the submitter did not pick one: digest of the canonical
// assessment content.
std::string derived_assessment_id(const gapengine::Assessment& a);

// Transport-independent handler; the HTTP server is a thin adapter over it.
class Api {
 public:
  Api(std::shared_ptr<const profiledb::ProfileDatabase> db, std::shared_ptr<AssessmentStore> store,
      ServiceOptions options = {});

  ApiResponse handle(const ApiRequest& req) const;

  // Recomputes stored reports made against another database version.
  std::size_t refresh_stale_reports();

  const ServiceOptions& options() const { return options_; }

 private:
  ApiResponse health() const;
  ApiResponse list_archetypes() const;
  ApiResponse checklist(const std::string& archetype_id) const;
  ApiResponse create_assessment(const ApiRequest& req) const;
  ApiResponse get_assessment(const std::string& id, const ApiRequest& req) const;
  ApiResponse delete_assessment(const std::string& id, const ApiRequest& req) const;

  std::shared_ptr<const StoredAssessment> owned(const std::string& id, const ApiRequest& req) const;

  std::shared_ptr<const profiledb::ProfileDatabase> db_;
  std::shared_ptr<AssessmentStore> store_;
  ServiceOptions options_;
};

ApiResponse error_response(int status, std::string_view kind, const std::string& message);
int http_status(ErrorKind kind);

}  // namespace wprof::service
