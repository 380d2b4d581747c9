#include "cli.h"

#include <csignal>
#include <iostream>
#include <optional>
#include <thread>

#include <pthread.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "wprof/common/error.h"
#include "wprof/common/io.h"
#include "wprof/common/version.h"
#include "wprof/pipeline/pipeline.h"
#include "wprof/service/server.h"
#include "wprof/service/store.h"

namespace wprof::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Flag values as given; unset ones leave the config file value in place.
struct Flags {
  std::string config;
  std::optional<std::string> output_dir, corpus, ontology, labels, seeds, key_terms, synonyms, curation, taxonomy,
      embeddings, skill_overrides, archetypes, weights, cluster_metric;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sample_size, min_support, clusters;
  std::optional<double> threshold, decline_ratio;
  std::optional<int> trend_window;
  bool count_applications = false;
  bool force = false;

  // assess / serve / export
  std::string input, db, out_file, host = "127.0.0.1", store, cors_origin = "*";
  int port = 8080;
};

pipeline::PipelineConfig resolve_config(const Flags& f) {
  pipeline::PipelineConfig c = f.config.empty() ? pipeline::PipelineConfig{} : pipeline::load_config(f.config);
  auto set_path = [](fs::path& dst, const std::optional<std::string>& v) {
    if (v) dst = *v;
  };
  set_path(c.output_dir, f.output_dir);
  set_path(c.corpus, f.corpus);
  set_path(c.ontology, f.ontology);
  set_path(c.labels, f.labels);
  set_path(c.seeds, f.seeds);
  set_path(c.key_terms, f.key_terms);
  set_path(c.synonyms, f.synonyms);
  set_path(c.curation, f.curation);
  set_path(c.taxonomy, f.taxonomy);
  set_path(c.embeddings, f.embeddings);
  set_path(c.skill_overrides, f.skill_overrides);
  set_path(c.archetypes, f.archetypes);
  if (f.seed) c.seed = *f.seed;
  if (f.sample_size) c.sample_size = *f.sample_size;
  if (f.threshold) c.threshold = *f.threshold;
  if (f.trend_window) c.maturity.window = *f.trend_window;
  if (f.min_support) c.maturity.min_support = *f.min_support;
  if (f.decline_ratio) c.maturity.decline_ratio = *f.decline_ratio;
  if (f.count_applications) c.count_applications = true;
  if (f.weights) c.weights = gapengine::parse_weights(*f.weights);
  if (f.clusters) c.clusters = *f.clusters;
  if (f.cluster_metric) {
    if (*f.cluster_metric == "jaccard") c.cluster_metric = profiledb::ClusterMetric::jaccard;
    else if (*f.cluster_metric == "embedding") c.cluster_metric = profiledb::ClusterMetric::embedding;
    else throw Error(ErrorKind::validation, "--cluster-metric must be jaccard or embedding");
  }
  c.force = f.force;
  pipeline::validate_config(c);
  return c;
}

fs::path db_path(const Flags& f, const pipeline::PipelineConfig& c) {
  return f.db.empty() ? c.output_dir / pipeline::artifact::kProfileDb : fs::path(f.db);
}

json error_json(std::string_view kind, const std::string& message, const std::vector<FieldIssue>& issues = {}) {
  json e = {{"kind", kind}, {"message", message}};
  if (!issues.empty()) {
    e["fields"] = json::array();
    for (const auto& i : issues) e["fields"].push_back({{"path", i.path}, {"message", i.message}});
  }
  return {{"error", e}};
}

// Blocks SIGINT/SIGTERM in every thread and stops the server from a
// dedicated sigwait thread.
int serve(const Flags& f, const pipeline::PipelineConfig& c, std::ostream& out) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto db = std::make_shared<const profiledb::ProfileDatabase>(profiledb::load_database(db_path(f, c)));
  fs::path store_path = f.store.empty() ? c.output_dir / "assessments.log" : fs::path(f.store);
  auto store = std::make_shared<service::AppendLogStore>(store_path);
  service::ServiceOptions options;
  options.weights = c.weights;
  options.cors_origin = f.cors_origin;
  auto api = std::make_shared<service::Api>(db, store, options);
  api->refresh_stale_reports();
  service::HttpServer server(api);
  int port = server.bind(f.host, f.port);
  out << json{{"listening", f.host + ":" + std::to_string(port)}, {"database_version", db->version()}}.dump()
      << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen();
  // listen() can also return on a socket error; wake the waiter either way.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Patent-driven technology trends and worker profile gap analysis", "wprof"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--config", f.config, "JSON pipeline config")->check(CLI::ExistingFile);
  app.add_option("--output-dir", f.output_dir, "artifact directory");
  app.add_option("--corpus", f.corpus, "corpus file (JSON Lines)");
  app.add_option("--ontology", f.ontology, "query ontology JSON");
  app.add_option("--labels", f.labels, "relevance labels CSV");
  app.add_option("--seeds", f.seeds, "known-relevant document ids");
  app.add_option("--key-terms", f.key_terms, "base key term list");
  app.add_option("--synonyms", f.synonyms, "synonym lexicon TSV");
  app.add_option("--curation", f.curation, "technology curation JSON");
  app.add_option("--taxonomy", f.taxonomy, "skill taxonomy CSV");
  app.add_option("--embeddings", f.embeddings, "precomputed embedding table");
  app.add_option("--skill-overrides", f.skill_overrides, "expert skill review JSON");
  app.add_option("--archetypes", f.archetypes, "job archetype JSON");
  app.add_option("--seed", f.seed, "sampling seed");
  app.add_option("--sample-size", f.sample_size, "precision sample size");
  app.add_option("--threshold", f.threshold, "skill match threshold");
  app.add_option("--weights", f.weights, "distance weights w_b,w_s");
  app.add_option("--trend-window", f.trend_window, "maturity window in years");
  app.add_option("--min-support", f.min_support, "minimum families for classification");
  app.add_option("--decline-ratio", f.decline_ratio, "obsolete decline ratio");
  app.add_flag("--count-applications", f.count_applications, "count documents instead of families");
  app.add_option("--clusters", f.clusters, "number of archetype clusters");
  app.add_option("--cluster-metric", f.cluster_metric, "jaccard or embedding");
  app.add_flag("--force", f.force, "rerun even when inputs are unchanged");

  const std::vector<std::pair<const char*, const char*>> stages = {
      {"ingest", "load and normalize the patent corpus"},
      {"query", "select the patent set and estimate precision/recall"},
      {"extract", "extract and cluster technology mentions"},
      {"trends", "per-technology filing trends and shares"},
      {"map-skills", "match patent sentences to taxonomy skills"},
      {"build-db", "assemble the job profile database"},
      {"run", "ingest through build-db in order"},
  };
  for (const auto& [name, help] : stages) app.add_subcommand(name, help);
  auto* assess = app.add_subcommand("assess", "offline gap report for one assessment");
  assess->add_option("--input", f.input, "assessment JSON")->required()->check(CLI::ExistingFile);
  assess->add_option("--db", f.db, "profile database (default: <output-dir>/profile_db.json)");
  assess->add_option("--out", f.out_file, "write the result here instead of stdout");
  auto* serve_cmd = app.add_subcommand("serve", "start the HTTP service");
  serve_cmd->add_option("--db", f.db, "profile database");
  serve_cmd->add_option("--host", f.host, "bind address");
  serve_cmd->add_option("--port", f.port, "bind port (0 picks one)");
  serve_cmd->add_option("--store", f.store, "assessment log (default: <output-dir>/assessments.log)");
  serve_cmd->add_option("--cors-origin", f.cors_origin, "Access-Control-Allow-Origin value");
  auto* export_cmd = app.add_subcommand("export", "bundle the profile database for the UI");
  export_cmd->add_option("--db", f.db, "profile database");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << "\n";
    return 0;
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << error_json("usage", e.what()).dump() << "\n";
    return 2;
  }

  try {
    auto c = resolve_config(f);
    const std::string cmd = app.get_subcommands().front()->get_name();
    auto report = [&](const pipeline::StageOutcome& o) { out << pipeline::to_json(o).dump() << "\n"; };
    if (cmd == "ingest") report(pipeline::run_ingest(c));
    else if (cmd == "query") report(pipeline::run_query(c));
    else if (cmd == "extract") report(pipeline::run_extract(c));
    else if (cmd == "trends") report(pipeline::run_trends(c));
    else if (cmd == "map-skills") report(pipeline::run_map_skills(c));
    else if (cmd == "build-db") report(pipeline::run_build_db(c));
    else if (cmd == "run") {
      for (const auto& o : pipeline::run_all(c)) report(o);
    } else if (cmd == "assess") {
      auto db = profiledb::load_database(db_path(f, c));
      auto body = dump_canonical(pipeline::assess(read_json_file(f.input), db, c.weights));
      if (f.out_file.empty()) out << body;
      else write_file_atomic(f.out_file, body);
    } else if (cmd == "export") {
      report(pipeline::run_export(c, f.db));
    } else if (cmd == "serve") {
      return serve(f, c, out);
    }
    return 0;
  } catch (const ValidationError& e) {
    err << error_json(to_string(e.kind()), e.what(), e.issues()).dump() << "\n";
  } catch (const Error& e) {
    err << error_json(to_string(e.kind()), e.what()).dump() << "\n";
  } catch (const json::exception& e) {
    err << error_json("parse", e.what()).dump() << "\n";
  } catch (const std::exception& e) {
    err << error_json("internal", e.what()).dump() << "\n";
  }
  return 1;
}

}  // namespace wprof::cli
