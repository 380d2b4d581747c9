#include "wprof/service/api.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <regex>

#include "wprof/common/digest.h"
#include "wprof/common/error.h"
#include "wprof/common/io.h"
#include "wprof/common/version.h"

namespace wprof::service {

using nlohmann::json;
using skillmap::SkillCategory;

namespace {

const std::regex kAssessmentId("[A-Za-z0-9_-]{1,64}");

ApiResponse json_response(int status, const json& body) { return {status, dump_canonical(body), {}}; }

ApiResponse not_found_assessment() {
  // Same bytes for an unknown id, a missing token and a wrong token.
  return error_response(404, "not_found", "assessment not found");
}

ApiResponse from_error(const Error& e) {
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    json fields = json::array();
    for (const auto& i : v->issues()) fields.push_back({{"path", i.path}, {"message", i.message}});
    return json_response(422, {{"error", {{"kind", "validation"}, {"message", e.what()}, {"fields", fields}}}});
  }
  return error_response(http_status(e.kind()), to_string(e.kind()), e.what());
}

json scale_descriptor() {
  return {{"min", 0},
          {"max", profiledb::kMaxLevel},
          {"labels", {"none", "basic", "intermediate", "advanced", "expert"}}};
}

std::string hash_token(const std::string& token) { return sha256_hex(token); }

std::string utc_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string ApiRequest::header(std::string_view name) const {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  auto it = headers.find(key);
  return it == headers.end() ? std::string() : it->second;
}

int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return 400;
    case ErrorKind::validation: return 422;
    case ErrorKind::not_found: return 404;
    case ErrorKind::duplicate:
    case ErrorKind::conflict: return 409;
    case ErrorKind::precondition: return 422;
    case ErrorKind::unavailable: return 503;
    case ErrorKind::io: return 500;
  }
  return 500;
}

ApiResponse error_response(int status, std::string_view kind, const std::string& message) {
  return json_response(status, {{"error", {{"kind", kind}, {"message", message}}}});
}

json assessment_result(const std::string& assessment_id, const gapengine::GapReport& report) {
  return {{"assessment_id", assessment_id}, {"report", gapengine::to_json(report)}};
}

std::string derived_assessment_id(const gapengine::Assessment& a) {
  auto content = gapengine::to_json(a);
  content.erase("assessment_id");
  content.erase("created_at");
  return "as-" + sha256_hex(content.dump()).substr(0, 16);
}

Api::Api(std::shared_ptr<const profiledb::ProfileDatabase> db, std::shared_ptr<AssessmentStore> store,
         ServiceOptions options)
    : db_(std::move(db)), store_(std::move(store)), options_(std::move(options)) {
  gapengine::validate_weights(options_.weights);
}

ApiResponse Api::handle(const ApiRequest& req) const {
  static const std::regex kChecklist("^/api/archetypes/([^/]+)/checklist$");
  static const std::regex kAssessment("^/api/assessments/([^/]+)$");
  ApiResponse res;
  try {
    std::smatch m;
    if (req.method == "OPTIONS") {
      res = {204, "", {}};
    } else if (req.path == "/api/health" && req.method == "GET") {
      res = health();
    } else if (req.path == "/api/archetypes" && req.method == "GET") {
      res = list_archetypes();
    } else if (std::regex_match(req.path, m, kChecklist) && req.method == "GET") {
      res = checklist(m[1]);
    } else if (req.path == "/api/assessments" && req.method == "POST") {
      res = create_assessment(req);
    } else if (std::regex_match(req.path, m, kAssessment) && req.method == "GET") {
      res = get_assessment(m[1], req);
    } else if (std::regex_match(req.path, m, kAssessment) && req.method == "DELETE") {
      res = delete_assessment(m[1], req);
    } else {
      res = error_response(404, "not_found", "no route for " + req.method + " " + req.path);
    }
  } catch (const Error& e) {
    res = from_error(e);
  } catch (const std::exception& e) {
    res = error_response(500, "internal", e.what());
  }
  res.headers["Access-Control-Allow-Origin"] = options_.cors_origin;
  res.headers["Access-Control-Allow-Methods"] = "GET, POST, DELETE, OPTIONS";
  res.headers["Access-Control-Allow-Headers"] = "Content-Type, X-Owner-Token";
  res.headers["Access-Control-Expose-Headers"] = "X-Owner-Token";
  if (options_.cors_origin != "*") res.headers["Vary"] = "Origin";
  if (!res.body.empty()) res.headers["Content-Type"] = "application/json";
  return res;
}

ApiResponse Api::health() const {
  json body = {{"status", "ok"}, {"tool_version", tool_version()}, {"database_loaded", db_ != nullptr}};
  body["database_version"] = db_ ? json(db_->version()) : json(nullptr);
  return json_response(200, body);
}

ApiResponse Api::list_archetypes() const {
  if (!db_) throw Error(ErrorKind::unavailable, "profile database not loaded");
  std::vector<const profiledb::JobArchetype*> items;
  for (const auto& a : db_->archetypes()) items.push_back(&a);
  std::sort(items.begin(), items.end(), [](const auto* x, const auto* y) {
    if (x->title != y->title) return x->title < y->title;
    return x->archetype_id < y->archetype_id;
  });
  json out = json::array();
  for (const auto* a : items) {
    out.push_back({{"archetype_id", a->archetype_id},
                   {"title", a->title},
                   {"description", a->description},
                   {"macro_class", profiledb::to_string(a->macro_class_topdown)}});
  }
  return json_response(200, out);
}

ApiResponse Api::checklist(const std::string& archetype_id) const {
  if (!db_) throw Error(ErrorKind::unavailable, "profile database not loaded");
  const auto* a = db_->find(archetype_id);
  if (!a) throw Error(ErrorKind::not_found, "unknown archetype " + archetype_id);
  std::vector<const skillmap::SkillRecord*> skills;
  for (const auto& s : db_->skills().skills()) skills.push_back(&s);
  std::sort(skills.begin(), skills.end(), [](const auto* x, const auto* y) {
    if (x->label != y->label) return x->label < y->label;
    return x->skill_id < y->skill_id;
  });
  json hard = json::array(), digital = json::array(), soft = json::array();
  for (const auto* s : skills) {
    json item = {{"skill_id", s->skill_id}, {"label", s->label}, {"description", s->description},
                 {"green", s->green}};
    if (s->category == SkillCategory::soft) {
      auto it = a->soft_targets.find(s->skill_id);
      item["target"] = it == a->soft_targets.end() ? json(nullptr) : json(it->second);
      item["scale"] = scale_descriptor();
      soft.push_back(std::move(item));
    } else {
      item["ideal"] = a->binary_skills.contains(s->skill_id);
      (s->category == SkillCategory::digital ? digital : hard).push_back(std::move(item));
    }
  }
  return json_response(200, {{"archetype_id", a->archetype_id},
                             {"hard", hard},
                             {"digital", digital},
                             {"soft", soft},
                             {"scale", scale_descriptor()}});
}

ApiResponse Api::create_assessment(const ApiRequest& req) const {
  if (!db_) throw Error(ErrorKind::unavailable, "profile database not loaded");
  json body;
  try {
    body = json::parse(req.body);
  } catch (const json::exception&) {
    throw Error(ErrorKind::parse, "request body is not valid JSON");
  }
  auto a = gapengine::assessment_from_json(body);
  if (body.contains("assessment_id") &&
      (!body["assessment_id"].is_string() || !std::regex_match(a.assessment_id, kAssessmentId))) {
    throw ValidationError(std::vector<FieldIssue>{{"/assessment_id", "must match [A-Za-z0-9_-]{1,64}"}});
  }
  auto report = gapengine::compute_gap(a, *db_, options_.weights);

  std::string token = req.header(kOwnerTokenHeader);
  const bool issued = token.empty();
  if (issued) token = random_hex(24);
  if (token.size() < 16) {
    throw ValidationError(std::vector<FieldIssue>{{"/headers/X-Owner-Token", "must be at least 16 characters"}});
  }
  const bool client_id = !a.assessment_id.empty();
  if (!client_id) a.assessment_id = "as-" + random_hex(8);
  if (a.created_at.empty()) a.created_at = options_.clock ? options_.clock() : utc_now();

  auto content = gapengine::to_json(a);
  content.erase("created_at");
  const std::string digest = sha256_hex(content.dump());
  const auto result = assessment_result(a.assessment_id, report);

  if (auto existing = store_->get(a.assessment_id)) {
    // A retry from the same owner with the same body replays the answer.
    if (client_id && constant_time_equal(existing->token_hash, hash_token(token)) &&
        existing->request_digest == digest) {
      ApiResponse replay = json_response(200, assessment_result(a.assessment_id, report));
      replay.headers[std::string(kOwnerTokenHeader)] = token;
      return replay;
    }
    throw Error(ErrorKind::conflict, "assessment id already in use");
  }

  StoredAssessment rec;
  rec.assessment = a;
  rec.token_hash = hash_token(token);
  rec.request_digest = digest;
  rec.db_version = db_->version();
  rec.report = result["report"];
  store_->put(std::move(rec));
  ApiResponse res = json_response(201, result);
  res.headers[std::string(kOwnerTokenHeader)] = token;
  return res;
}

std::shared_ptr<const StoredAssessment> Api::owned(const std::string& id, const ApiRequest& req) const {
  const std::string token = req.header(kOwnerTokenHeader);
  auto rec = store_->get(id);
  // Hash before looking at the record so both paths do the same work.
  const std::string presented = hash_token(token);
  if (!rec || token.empty() || !constant_time_equal(rec->token_hash, presented)) return nullptr;
  return rec;
}

ApiResponse Api::get_assessment(const std::string& id, const ApiRequest& req) const {
  auto rec = owned(id, req);
  if (!rec) return not_found_assessment();
  return json_response(200, {{"assessment_id", rec->assessment.assessment_id},
                             {"assessment", gapengine::to_json(rec->assessment)},
                             {"database_version", rec->db_version},
                             {"report", rec->report}});
}

ApiResponse Api::delete_assessment(const std::string& id, const ApiRequest& req) const {
  auto rec = owned(id, req);
  if (!rec || !store_->erase(id)) return not_found_assessment();
  return json_response(200, {{"assessment_id", id}, {"deleted", true}});
}

std::size_t Api::refresh_stale_reports() {
  if (!db_) return 0;
  std::size_t refreshed = 0;
  for (const auto& [id, rec] : *store_->snapshot()) {
    if (rec->db_version == db_->version()) continue;
    StoredAssessment next = *rec;
    try {
      next.report = gapengine::to_json(gapengine::compute_gap(rec->assessment, *db_, options_.weights));
    } catch (const Error&) {
      // The archetype or a skill left the database; keep the old report.
      continue;
    }
    next.db_version = db_->version();
    store_->put(std::move(next));
    ++refreshed;
  }
  return refreshed;
}

}  // namespace wprof::service
