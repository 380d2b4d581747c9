// One line per acceptance criterion: "PASS <name>: detail" or
// "FAIL <name>: detail". Exit status is non-zero if any line fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "wprof/common/error.h"
#include "wprof/common/io.h"
#include "wprof/corpus/tokenizer.h"
#include "wprof/gapengine/gap.h"
#include "wprof/patentset/patent_set.h"
#include "wprof/patentset/query.h"
#include "wprof/pipeline/pipeline.h"
#include "wprof/profiledb/clustering.h"
#include "wprof/profiledb/database.h"
#include "wprof/service/api.h"
#include "wprof/service/server.h"
#include "wprof/service/store.h"
#include "wprof/skillmap/matcher.h"
#include "wprof/techner/clusters.h"
#include "wprof/techner/hearst.h"
#include "wprof/techner/key_terms.h"
#include "wprof/trends/trends.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wprof;

namespace {

const fs::path kFixtures = WPROF_FIXTURE_DIR;
const fs::path kTestData = WPROF_TEST_DATA_DIR;
const fs::path kWork = WPROF_ACCEPTANCE_WORK_DIR;
const std::string kCli = WPROF_CLI_PATH;
const std::string kToken(service::kOwnerTokenHeader);

// Failure with a message; the runner prints it on the FAIL line.
struct Failed {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failed{what};
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::vector<std::string>& args) {
  std::string cmd = shell_quote(kCli);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Failed{"cannot start " + kCli};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::map<std::string, std::string> tree_bytes(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).generic_string()] = read_file(e.path());
  }
  return files;
}

fs::path fresh_dir(const std::string& name) {
  auto p = kWork / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

json golden(const std::string& name) { return read_json_file(kFixtures / "golden" / name); }

fs::path pipeline_dir() { return kWork / "e2e-1"; }

// Runs the fixture pipeline once (or reuses the first E2E run).
fs::path ensure_pipeline() {
  if (!fs::exists(pipeline_dir() / "profile_db.json")) {
    auto dir = fresh_dir("e2e-1");
    auto r = run_cli({"--config", (kFixtures / "config.json").string(), "--output-dir", dir.string(), "run"});
    expect(r.status == 0, "pipeline failed: " + r.out);
  }
  return pipeline_dir();
}

std::vector<json> fixture_assessments() {
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(kFixtures / "assessments")) paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  std::vector<json> out;
  for (const auto& p : paths) out.push_back(read_json_file(p));
  return out;
}

// 1. End-to-end determinism and runtime.
std::string e2e() {
  const std::vector<std::string> artifacts = {"corpus.json", "patent_set.json", "technologies.json",
                                              "trends.json", "trends.csv", "shares.csv",
                                              "skill_matches.jsonl", "skills.json", "profile_db.json"};
  auto start = std::chrono::steady_clock::now();
  std::vector<std::map<std::string, std::string>> trees;
  for (const char* name : {"e2e-1", "e2e-2"}) {
    auto dir = fresh_dir(name);
    auto r = run_cli({"--config", (kFixtures / "config.json").string(), "--output-dir", dir.string(), "run"});
    expect(r.status == 0, std::string(name) + " failed: " + r.out);
    trees.push_back(tree_bytes(dir));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& a : artifacts) expect(trees[0].count(a) == 1, "missing artifact " + a);
  expect(trees[0] == trees[1], "artifacts differ between runs");
  expect(secs < 60.0, "two runs took " + std::to_string(secs) + " s");

  auto corpus = read_json_file(pipeline_dir() / "corpus.json");
  auto counts = golden("corpus_query.json");
  expect(corpus["documents"].size() == counts["documents"].get<std::size_t>(), "document count");
  expect(corpus["families"] == counts["families"], "family count");

  // A rerun with unchanged inputs reports every stage up to date.
  auto again = run_cli({"--config", (kFixtures / "config.json").string(), "--output-dir",
                        pipeline_dir().string(), "run"});
  expect(again.status == 0 && again.out.find("\"written\"") == std::string::npos, "rerun was not a no-op");
  std::ostringstream msg;
  msg << trees[0].size() << " artifacts byte-identical across 2 runs in " << std::fixed;
  msg.precision(2);
  msg << secs << " s";
  return msg.str();
}

// 2. Query engine precision and Wilson interval.
std::string query_precision() {
  auto result = corpus::ingest_corpus(kFixtures / "corpus.jsonl");
  auto ontology = patentset::compile_query_file(kFixtures / "energy_mgmt.json");
  auto set = patentset::execute_query(result.corpus, ontology);
  auto g = golden("corpus_query.json");
  std::vector<std::string> ids(set.doc_ids.begin(), set.doc_ids.end());
  expect(ids == g["query_members"].get<std::vector<std::string>>(), "query members differ from the scan oracle");

  auto labels = patentset::parse_labels_csv(read_file(kFixtures / "labels.csv"));
  auto exhaustive = patentset::estimate_precision(set, set.doc_ids.size(), labels, 1);
  expect(exhaustive.point == g["exhaustive_precision"].get<double>(), "exhaustive precision");

  auto sampled = patentset::estimate_precision(set, 20, labels, 42);
  auto w = golden("wilson.json");
  expect(sampled.sample_size == 20 && sampled.relevant_count == 18, "sample counts");
  expect(sampled.point == 0.9, "point estimate");
  expect(std::abs(sampled.ci95.low - w["low"].get<double>()) <= 1e-9 &&
             std::abs(sampled.ci95.high - w["high"].get<double>()) <= 1e-9,
         "Wilson interval differs from the script");
  std::ostringstream msg;
  msg.precision(16);
  msg << ids.size() << " members, precision " << exhaustive.point << ", CI [" << sampled.ci95.low << ", "
      << sampled.ci95.high << "]";
  return msg.str();
}

// 3. Hearst golden suite.
std::string hearst_golden() {
  auto items = read_json_file(kTestData / "hearst_golden.json");
  auto terms =
      techner::expand_key_terms(techner::KeyTermSet::defaults(), read_file(kTestData / "golden_synonyms.tsv")).terms;
  std::set<std::string> patterns;
  std::size_t negatives = 0, positives = 0;
  for (const auto& item : items) {
    corpus::Sentence s;
    s.doc_id = "G";
    s.section = corpus::Section::abstract;
    s.text = item["text"].get<std::string>();
    s.tokens = corpus::tokenize_and_tag(s.text);
    auto got = techner::extract_mentions(s, terms);
    json flat = json::array();
    for (const auto& m : got) {
      flat.push_back({m.lemma, m.hypernym_lemma, std::string(techner::to_string(m.pattern)), m.surface});
      patterns.insert(std::string(techner::to_string(m.pattern)));
    }
    expect(flat == item["mentions"], "mismatch on: " + s.text);
    (item["mentions"].empty() ? negatives : positives)++;
  }
  expect(items.size() >= 25, "fewer than 25 sentences");
  expect(patterns.size() == 5, "not all five patterns covered");
  expect(negatives >= 5, "fewer than 5 negative cases");
  return std::to_string(items.size()) + " sentences (" + std::to_string(positives) + " positive, " +
         std::to_string(negatives) + " negative), 5 patterns";
}

// 4. Threshold and retention over random score matrices.
std::string threshold_property() {
  std::mt19937_64 rng(20231);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), scale(0.01, 100.0);
  std::size_t sentences = 0, kept = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + rng() % 6, n_skills = 1 + rng() % 8, n_sent = 1 + rng() % 12;
    skillmap::SkillIndex index, scaled;
    for (std::size_t i = 0; i < n_skills; ++i) {
      skillmap::Embedding v(dim);
      do {
        for (auto& x : v) x = unit(rng);
      } while (skillmap::is_zero(v));
      // Draw ids in random order so ties are not always resolved by position.
      std::string id = "S" + std::to_string(rng() % 1000) + "-" + std::to_string(i);
      index.skill_ids.push_back(id);
      index.vectors.push_back(v);
      const double f = scale(rng);
      for (auto& x : v) x *= f;
      scaled.skill_ids.push_back(id);
      scaled.vectors.push_back(v);
    }
    for (std::size_t s = 0; s < n_sent; ++s) {
      skillmap::Embedding q(dim);
      for (auto& x : q) x = unit(rng);
      if (trial % 7 == 0 && s == 0) std::copy(index.vectors[0].begin(), index.vectors[0].end(), q.begin());
      auto m = skillmap::match_vector(q, index, skillmap::kDefaultThreshold);
      if (!m) continue;
      ++sentences;
      // Brute-force argmax and score.
      double best = -2.0;
      std::string best_id;
      for (std::size_t i = 0; i < n_skills; ++i) {
        double c = skillmap::cosine(q, index.vectors[i]);
        if (c > best || (c == best && index.skill_ids[i] < best_id)) best = c, best_id = index.skill_ids[i];
      }
      expect(std::abs(m->score - best) < 1e-12, "score is not the maximum");
      expect(m->kept == (m->score > skillmap::kDefaultThreshold), "kept flag disagrees with score > 0.7");
      kept += m->kept ? 1 : 0;
      auto ms = skillmap::match_vector(q, scaled, skillmap::kDefaultThreshold);
      expect(ms && ms->skill_id == m->skill_id, "argmax moved under positive scaling");
    }
  }
  // Pipeline output: at most one match per sentence, kept implies > 0.7.
  auto matches = skillmap::parse_matches_jsonl(read_file(ensure_pipeline() / "skill_matches.jsonl"));
  std::set<corpus::SentenceRef> refs;
  for (const auto& m : matches) {
    expect(refs.insert(m.sentence).second, "two matches for one sentence");
    expect(!m.kept || m.score > 0.7, "kept match at or below 0.7");
  }
  return std::to_string(sentences) + " random sentences (" + std::to_string(kept) + " kept), " +
         std::to_string(matches.size()) + " pipeline matches";
}

trends::TrendSeries series(const std::map<int, std::size_t>& counts) {
  trends::TrendSeries s;
  s.cluster_id = s.label = "x";
  s.counts = counts;
  return s;
}

// 5. Trend shapes and the fixture share table.
std::string trend_classification() {
  std::map<int, std::size_t> rising, peak, flat, sparse{{2016, 1}, {2017, 1}, {2018, 1}, {2019, 1}, {2020, 1}};
  const std::size_t r[] = {1, 2, 3, 4, 5, 7, 8, 10};
  for (int y = 2015; y <= 2022; ++y) rising[y] = r[y - 2015];
  const std::size_t p[] = {3, 5, 8, 12, 15, 13, 11, 10, 9, 9, 8, 8, 8};
  for (int y = 2008; y <= 2020; ++y) peak[y] = p[y - 2008];
  for (int y = 2012; y <= 2020; ++y) flat[y] = 6;
  using M = trends::Maturity;
  expect(trends::classify_maturity(series(rising), 2022) == M::growing, "rising is not growing");
  expect(trends::classify_maturity(series(peak), 2020) == M::mature, "peak-2012 is not mature");
  expect(trends::classify_maturity(series(flat), 2020) == M::mature, "flat is not mature");
  expect(trends::classify_maturity(series(sparse), 2020) == M::low_support, "sparse is not low_support");

  auto dir = ensure_pipeline();
  auto tj = read_json_file(dir / "trends.json");
  auto tech = read_json_file(dir / "technologies.json");
  auto g = golden("trend_shares.json");
  expect(tj["total_families"] == g["set_families"], "set family count");

  // Brute force over the mentions artifact: families per active cluster.
  std::map<std::string, std::string> doc_family;
  const auto corpus_json = read_json_file(dir / "corpus.json");
  for (const auto& d : corpus_json["documents"]) {
    doc_family[d["doc_id"].get<std::string>()] = d["family_id"].get<std::string>();
  }
  std::map<std::string, std::string> owner;  // lemma -> active cluster label
  for (const auto& c : tech["clusters"]) {
    if (c["curation"] == "rejected" || c["curation"] == "merged-into") continue;
    for (const auto& l : c["member_lemmas"]) owner[l.get<std::string>()] = c["label"].get<std::string>();
  }
  std::map<std::string, std::set<std::string>> fams;
  for (const auto& m : tech["mentions"]) {
    auto it = owner.find(m["lemma"].get<std::string>());
    if (it != owner.end()) fams[it->second].insert(doc_family.at(m["location"]["doc_id"].get<std::string>()));
  }
  std::map<std::string, std::size_t> brute;
  for (const auto& [label, f] : fams) brute[label] = f.size();
  std::map<std::string, std::size_t> table, oracle = g["family_counts"];
  for (const auto& row : tj["shares"]) {
    table[row["label"].get<std::string>()] = row["families"].get<std::size_t>();
    double want = static_cast<double>(row["families"].get<std::size_t>()) / g["set_families"].get<double>();
    expect(row["share"].get<double>() == want, "share of " + row["label"].get<std::string>());
  }
  expect(table == brute, "share table differs from the mention scan");
  expect(table == oracle, "share table differs from the text-scan oracle");

  std::map<std::string, std::size_t> heat;
  for (const auto& s : tj["series"]) {
    if (s["cluster_id"] != "heat_pump") continue;
    for (const auto& [y, n] : s["counts"].items()) {
      if (n.get<std::size_t>() > 0) heat[y] = n;
    }
  }
  expect(heat == g["heat_pump_series"].get<std::map<std::string, std::size_t>>(), "heat pump series");
  return "growing/mature/mature/low_support; " + std::to_string(table.size()) + " share rows match";
}

// 6. Clustering recovery and permutation invariance.
std::string clustering() {
  auto archetypes = profiledb::parse_archetypes(read_json_file(kFixtures / "archetypes.json"));
  expect(archetypes.size() == 12, "fixture size");
  auto base = profiledb::cluster_archetypes(archetypes, 3);
  auto report = profiledb::validate_macroclasses(archetypes, base);
  expect(report.purity == 1.0, "purity " + std::to_string(report.purity));
  // Block structure itself: every within-block pair beats every between-block pair.
  double min_within = 2.0, max_between = -1.0;
  for (const auto& a : archetypes) {
    for (const auto& b : archetypes) {
      if (a.archetype_id >= b.archetype_id) continue;
      double j = profiledb::jaccard(a.binary_skills, b.binary_skills);
      if (a.macro_class_topdown == b.macro_class_topdown) min_within = std::min(min_within, j);
      else max_between = std::max(max_between, j);
    }
  }
  expect(min_within > max_between, "fixture is not block-structured");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto shuffled = archetypes;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    expect(profiledb::cluster_archetypes(shuffled, 3) == base, "partition changed under shuffle");
  }
  return "purity 1.0 at k=3, stable over 50 shuffles";
}

// 7. Gap engine identity, set property and golden top-3.
std::string gap_engine() {
  auto db = profiledb::load_database(ensure_pipeline() / "profile_db.json");
  const auto& own = db.at("A01");
  gapengine::Assessment identity;
  identity.assessment_id = "id";
  identity.archetype_id = own.archetype_id;
  identity.selected_binary = own.binary_skills;
  for (const auto& [k, v] : own.soft_targets) identity.soft_levels[k] = v;
  auto r = gapengine::compute_gap(identity, db);
  expect(r.missing_hard.empty() && r.missing_digital.empty(), "identity has missing skills");
  expect(r.coverage == 1.0 && r.distance_to_own == 0.0, "identity coverage/distance");

  std::mt19937_64 rng(99);
  std::vector<std::string> pool;
  for (const auto& s : db.skills().skills()) {
    if (s.category != skillmap::SkillCategory::soft) pool.push_back(s.skill_id);
  }
  for (int t = 0; t < 300; ++t) {
    const auto& arch = db.archetypes()[rng() % db.archetypes().size()];
    gapengine::Assessment a;
    a.assessment_id = "p";
    a.archetype_id = arch.archetype_id;
    for (const auto& s : pool) {
      if (rng() % 3 == 0) a.selected_binary.insert(s);
    }
    auto rep = gapengine::compute_gap(a, db);
    std::set<std::string> missing, overlap;
    for (const auto& m : rep.missing_hard) missing.insert(m.skill_id);
    for (const auto& m : rep.missing_digital) missing.insert(m.skill_id);
    for (const auto& s : arch.binary_skills) {
      if (a.selected_binary.count(s)) overlap.insert(s);
    }
    std::set<std::string> uni = missing;
    uni.insert(overlap.begin(), overlap.end());
    bool disjoint = std::none_of(missing.begin(), missing.end(), [&](const auto& s) { return overlap.count(s); });
    expect(disjoint && uni == arch.binary_skills, "missing and overlap do not partition the ideal set");
    expect(std::abs(rep.coverage - double(overlap.size()) / arch.binary_skills.size()) < 1e-12, "coverage");
  }

  auto top = golden("top3.json");
  for (const auto& aj : fixture_assessments()) {
    auto a = gapengine::assessment_from_json(aj);
    auto got = gapengine::nearest_archetypes(a, db, {});
    const auto& want = top[a.assessment_id];
    expect(got.size() == want.size(), "top-3 size for " + a.assessment_id);
    for (std::size_t i = 0; i < got.size(); ++i) {
      expect(got[i].archetype_id == want[i]["archetype_id"] &&
                 std::abs(got[i].distance - want[i]["distance"].get<double>()) < 1e-12,
             "top-3 mismatch for " + a.assessment_id);
    }
  }
  return "identity exact, 300 random sets, 10 golden top-3 lists";
}

// 8. Service responses equal CLI output; delete and token handling.
std::string service_equivalence() {
  auto dir = ensure_pipeline();
  auto db_path = dir / "profile_db.json";
  auto db = std::make_shared<const profiledb::ProfileDatabase>(profiledb::load_database(db_path));
  auto store_dir = fresh_dir("service");
  auto store = std::make_shared<service::AppendLogStore>(store_dir / "assessments.log");
  auto api = std::make_shared<service::Api>(db, store);
  service::HttpServer server(api);
  int port = server.bind("127.0.0.1", 0);
  std::thread t([&] { server.listen(); });
  struct Stop {
    service::HttpServer& s;
    std::thread& t;
    ~Stop() {
      s.stop();
      t.join();
    }
  } stop{server, t};
  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(10, 0);

  std::size_t n = 0;
  std::string first_id, first_token;
  for (const auto& aj : fixture_assessments()) {
    auto path = kFixtures / "assessments" / (aj["assessment_id"].get<std::string>() + ".json");
    auto cli = run_cli({"assess", "--input", path.string(), "--db", db_path.string()});
    expect(cli.status == 0, "assess failed: " + cli.out);
    auto res = client.Post("/api/assessments", read_file(path), "application/json");
    expect(res && res->status == 201, "POST status for " + path.filename().string());
    expect(res->body == cli.out, "POST body differs from CLI for " + path.filename().string());
    auto token = res->get_header_value(kToken);
    expect(!token.empty(), "no owner token issued");
    auto get = client.Get("/api/assessments/" + aj["assessment_id"].get<std::string>(),
                          {{kToken, token}});
    expect(get && get->status == 200, "GET by owner");
    expect(json::parse(get->body)["report"] == json::parse(cli.out)["report"], "GET report differs from CLI");
    if (n++ == 0) first_id = aj["assessment_id"], first_token = token;
  }

  httplib::Headers wrong{{kToken, std::string(48, 'f')}};
  auto wrong_token = client.Get("/api/assessments/" + first_id, wrong);
  auto unknown = client.Get("/api/assessments/no-such-id", wrong);
  auto no_token = client.Get("/api/assessments/" + first_id);
  expect(wrong_token && unknown && no_token, "request failed");
  expect(wrong_token->status == 404 && unknown->status == 404 && no_token->status == 404, "expected 404s");
  expect(wrong_token->body == unknown->body && no_token->body == unknown->body,
         "wrong token distinguishable from unknown id");
  auto wrong_delete = client.Delete("/api/assessments/" + first_id, wrong);
  expect(wrong_delete && wrong_delete->status == 404 && wrong_delete->body == unknown->body, "DELETE with wrong token");

  httplib::Headers owner{{kToken, first_token}};
  auto del = client.Delete("/api/assessments/" + first_id, owner);
  expect(del && (del->status == 204 || del->status == 200), "DELETE by owner");
  auto gone = client.Get("/api/assessments/" + first_id, owner);
  expect(gone && gone->status == 404 && gone->body == unknown->body, "deleted assessment still readable");
  expect(read_file(store_dir / "assessments.log").find("\"" + first_id + "\"") == std::string::npos,
         "deleted assessment still in the log");
  return std::to_string(n) + " POST bodies byte-identical to CLI; delete and token checks hold";
}

}  // namespace

int main() {
  fs::create_directories(kWork);
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"e2e-determinism", e2e},
      {"query-precision", query_precision},
      {"hearst-golden", hearst_golden},
      {"threshold-retention", threshold_property},
      {"trend-classification", trend_classification},
      {"archetype-clustering", clustering},
      {"gap-engine", gap_engine},
      {"service-offline-equivalence", service_equivalence},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    try {
      auto detail = check();
      std::cout << "PASS " << name << ": " << detail << std::endl;
    } catch (const Failed& f) {
      ++failures;
      std::cout << "FAIL " << name << ": " << f.what << std::endl;
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "FAIL " << name << ": exception: " << e.what() << std::endl;
    }
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
