#include "wprof/service/store.h"

#include <atomic>
#include <fstream>

#include "wprof/common/error.h"
#include "wprof/common/io.h"

namespace wprof::service {

using nlohmann::json;

json to_json(const StoredAssessment& s) {
  return {{"assessment", gapengine::to_json(s.assessment)},
          {"token_hash", s.token_hash},
          {"request_digest", s.request_digest},
          {"db_version", s.db_version},
          {"report", s.report}};
}

StoredAssessment stored_from_json(const json& j) {
  StoredAssessment s;
  s.assessment = gapengine::assessment_from_json(j.at("assessment"));
  s.token_hash = j.at("token_hash").get<std::string>();
  s.request_digest = j.value("request_digest", "");
  s.db_version = j.at("db_version").get<std::string>();
  s.report = j.at("report");
  return s;
}

std::shared_ptr<const StoredAssessment> AssessmentStore::get(std::string_view assessment_id) const {
  auto snap = snapshot();
  auto it = snap->find(assessment_id);
  return it == snap->end() ? nullptr : it->second;
}

MemoryStore::MemoryStore() : current_(std::make_shared<const Map>()) {}

std::shared_ptr<const AssessmentStore::Map> MemoryStore::snapshot() const {
  return std::atomic_load(&current_);
}

void MemoryStore::publish(std::shared_ptr<const Map> next) { std::atomic_store(&current_, std::move(next)); }

void MemoryStore::put(StoredAssessment record) {
  std::lock_guard lock(writer_);
  auto next = std::make_shared<Map>(*current_);
  auto id = record.assessment.assessment_id;
  (*next)[id] = std::make_shared<const StoredAssessment>(std::move(record));
  publish(std::move(next));
}

bool MemoryStore::erase(std::string_view assessment_id) {
  std::lock_guard lock(writer_);
  if (!current_->contains(assessment_id)) return false;
  auto next = std::make_shared<Map>(*current_);
  next->erase(next->find(assessment_id));
  publish(std::move(next));
  return true;
}

AppendLogStore::AppendLogStore(std::filesystem::path path) : path_(std::move(path)) {
  auto map = std::make_shared<Map>();
  if (std::filesystem::exists(path_)) {
    auto lines = split_lines(read_file(path_));
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (trim(lines[i]).empty()) continue;
      json entry;
      try {
        entry = json::parse(lines[i]);
      } catch (const json::exception&) {
        if (i + 1 == lines.size()) break;  // torn tail
        throw Error(ErrorKind::io, "corrupt assessment log " + path_.string() + " at line " + std::to_string(i + 1));
      }
      ++lines_;
      const auto op = entry.value("op", "");
      if (op == "put") {
        auto rec = stored_from_json(entry.at("record"));
        auto id = rec.assessment.assessment_id;
        (*map)[id] = std::make_shared<const StoredAssessment>(std::move(rec));
      } else if (op == "delete") {
        map->erase(entry.at("assessment_id").get<std::string>());
      } else {
        throw Error(ErrorKind::io, "unknown log op at line " + std::to_string(i + 1));
      }
    }
  }
  std::lock_guard lock(writer_);
  publish(map);
  if (lines_ > map->size()) compact_locked(*map);
}

void AppendLogStore::append_line(const std::string& line) {
  if (!path_.parent_path().empty()) std::filesystem::create_directories(path_.parent_path());
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  out << line << '\n';
  out.flush();
  if (!out) throw Error(ErrorKind::io, "cannot append to " + path_.string());
  ++lines_;
}

void AppendLogStore::compact_locked(const Map& live) {
  std::string text;
  for (const auto& [id, rec] : live) {
    text += json({{"op", "put"}, {"record", to_json(*rec)}}).dump();
    text += '\n';
  }
  write_file_atomic(path_, text);
  lines_ = live.size();
}

void AppendLogStore::put(StoredAssessment record) {
  std::lock_guard lock(writer_);
  auto rec = std::make_shared<const StoredAssessment>(std::move(record));
  append_line(json({{"op", "put"}, {"record", to_json(*rec)}}).dump());
  auto next = std::make_shared<Map>(*current_locked());
  (*next)[rec->assessment.assessment_id] = rec;
  if (lines_ > 2 * next->size() + 16) compact_locked(*next);
  publish(std::move(next));
}

bool AppendLogStore::erase(std::string_view assessment_id) {
  std::lock_guard lock(writer_);
  if (!current_locked()->contains(assessment_id)) return false;
  auto next = std::make_shared<Map>(*current_locked());
  next->erase(next->find(assessment_id));
  // Rewrite instead of appending a tombstone so the record leaves the disk.
  compact_locked(*next);
  publish(std::move(next));
  return true;
}

std::size_t AppendLogStore::log_lines() const {
  std::lock_guard lock(writer_);
  return lines_;
}

void AppendLogStore::compact() {
  std::lock_guard lock(writer_);
  compact_locked(*current_locked());
}

}  // namespace wprof::service
