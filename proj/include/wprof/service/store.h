#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wprof/gapengine/gap.h"

namespace wprof::service {

struct StoredAssessment {
  gapengine::Assessment assessment;
  // sha256 of the owner token; the token itself is never stored.
  std::string token_hash;
  // Digest of the submitted body, used to recognise retries.
  std::string request_digest;
  std::string db_version;
  nlohmann::json report;
};

nlohmann::json to_json(const StoredAssessment& s);
StoredAssessment stored_from_json(const nlohmann::json& j);

// Storage contract for the service. Implementations publish immutable
// snapshots: snapshot() never blocks on writers and later writes do not
// change a snapshot already handed out.
class AssessmentStore {
 public:
  using Map = std::map<std::string, std::shared_ptr<const StoredAssessment>, std::less<>>;

  virtual ~AssessmentStore() = default;
  virtual std::shared_ptr<const Map> snapshot() const = 0;
  virtual void put(StoredAssessment record) = 0;
  // False when the id was not present.
  virtual bool erase(std::string_view assessment_id) = 0;

  std::shared_ptr<const StoredAssessment> get(std::string_view assessment_id) const;
};

class MemoryStore : public AssessmentStore {
 public:
  MemoryStore();
  std::shared_ptr<const Map> snapshot() const override;
  void put(StoredAssessment record) override;
  bool erase(std::string_view assessment_id) override;

 protected:
  // Both run under the writer lock.
  void publish(std::shared_ptr<const Map> next);
  std::shared_ptr<const Map> current_locked() const { return current_; }
  mutable std::mutex writer_;

 private:
  std::shared_ptr<const Map> current_;
};

// One JSON line per mutation: {"op":"put","record":{...}} or
// {"op":"delete","assessment_id":"..."}. The log is rewritten with only the
// live records once it holds more than twice as many lines as live records,
// and after every delete so removed data does not linger on disk. A torn
// final line left by a crash is dropped on load.
class AppendLogStore final : public MemoryStore {
 public:
  explicit AppendLogStore(std::filesystem::path path);

  void put(StoredAssessment record) override;
  bool erase(std::string_view assessment_id) override;

  std::size_t log_lines() const;
  void compact();

 private:
  void append_line(const std::string& line);
  void compact_locked(const Map& live);

  std::filesystem::path path_;
  std::size_t lines_ = 0;
};

}  // namespace wprof::service
