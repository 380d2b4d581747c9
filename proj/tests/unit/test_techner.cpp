#include "doctest.h"

#include <filesystem>
#include <random>

#include "wprof/common/error.h"
#include "wprof/common/io.h"
#include "wprof/corpus/tokenizer.h"
#include "wprof/techner/clusters.h"
#include "wprof/techner/hearst.h"
#include "wprof/techner/key_terms.h"

using namespace wprof;
using namespace wprof::techner;
using nlohmann::json;

namespace {

corpus::Sentence make_sentence(const std::string& text, const std::string& doc = "D1",
                               std::size_t index = 0) {
  corpus::Sentence s;
  s.doc_id = doc;
  s.section = corpus::Section::abstract;
  s.index = index;
  s.text = text;
  s.tokens = corpus::tokenize_and_tag(text);
  return s;
}

KeyTermSet golden_terms() {
  auto lexicon = read_file(std::filesystem::path(WPROF_TEST_DATA_DIR) / "golden_synonyms.tsv");
  return expand_key_terms(KeyTermSet::defaults(), lexicon).terms;
}

TechnologyMention mention(std::string lemma, std::string hyper, std::string doc = "D1") {
  TechnologyMention m;
  m.lemma = m.surface = std::move(lemma);
  m.hypernym_lemma = std::move(hyper);
  m.location.doc_id = std::move(doc);
  return m;
}

std::vector<TechnologyMention> repeat(const std::string& lemma, const std::string& hyper, int n,
                                      int doc_offset = 0) {
  std::vector<TechnologyMention> out;
  for (int i = 0; i < n; ++i) out.push_back(mention(lemma, hyper, "D" + std::to_string(doc_offset + i)));
  return out;
}

}  // namespace

TEST_CASE("default key terms") {
  auto k = KeyTermSet::defaults();
  for (const char* t : {"technology", "machine", "device", "apparatus", "mechanism", "sensor",
                        "network", "system", "unit"}) {
    CHECK(k.base_terms.contains(t));
  }
  CHECK(k.base_terms.size() == 9);
  CHECK_THROWS_AS(KeyTermSet::from_base_text("device\nsystem\n"), Error);
  CHECK(KeyTermSet::from_base_text(read_file(std::filesystem::path(WPROF_TEST_DATA_DIR) /
                                             "../../data/key_terms.txt") + "plant\n")
            .contains("plant"));
}

TEST_CASE("synonym expansion") {
  auto base = KeyTermSet::defaults();
  auto r = expand_key_terms(base, "appliance\tdevice\n");
  CHECK(r.terms.synonym_expansions.at("appliance") == "device");
  CHECK(r.terms.contains("appliance"));
  CHECK(r.warnings.empty());

  auto skipped = expand_key_terms(base, "gizmo\tcontraption\n");
  CHECK(skipped.terms.synonym_expansions.empty());
  REQUIRE(skipped.warnings.size() == 1);
  CHECK(skipped.warnings[0].find("contraption") != std::string::npos);

  auto empty = expand_key_terms(base, "");
  CHECK(empty.terms.base_terms == base.base_terms);
  CHECK(empty.terms.synonym_expansions.empty());

  CHECK_THROWS_AS(expand_key_terms(base, "no tab here\n"), Error);
  // Expansions never shadow base terms.
  auto dup = expand_key_terms(base, "sensor\tdevice\n");
  CHECK(dup.terms.synonym_expansions.empty());
}

TEST_CASE("Hearst golden suite") {
  auto golden = read_json_file(std::filesystem::path(WPROF_TEST_DATA_DIR) / "hearst_golden.json");
  REQUIRE(golden.size() >= 25);
  auto terms = golden_terms();
  std::set<std::string> patterns_seen;
  std::size_t negatives = 0;
  for (const auto& item : golden) {
    auto text = item["text"].get<std::string>();
    CAPTURE(text);
    auto got = extract_mentions(make_sentence(text), terms);
    const auto& want = item["mentions"];
    if (want.empty()) ++negatives;
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].lemma == want[i][0].get<std::string>());
      CHECK(got[i].hypernym_lemma == want[i][1].get<std::string>());
      CHECK(to_string(got[i].pattern) == want[i][2].get<std::string>());
      CHECK(got[i].surface == want[i][3].get<std::string>());
      patterns_seen.insert(std::string(to_string(got[i].pattern)));
    }
  }
  CHECK(patterns_seen.size() == 5);
  CHECK(negatives >= 5);
}

TEST_CASE("mention locations") {
  auto s = make_sentence("Devices such as valves, and other control systems such as PLCs", "EP9", 4);
  auto got = extract_mentions(s, KeyTermSet::defaults());
  REQUIRE(got.size() == 3);
  CHECK(got[0].location.doc_id == "EP9");
  CHECK(got[0].location.sentence_index == 4);
  CHECK(got[0].location.token_begin == 3);
  CHECK(got[0].location.token_end == 4);
  CHECK(got[2].location.token_begin == 11);
  for (const auto& m : got) CHECK(m.location.token_end <= s.tokens.size());
  CHECK(mention_from_json(to_json(got[1])) == got[1]);
}

TEST_CASE("property: the hypernym gate is total and extraction is local") {
  std::mt19937 rng(11);
  const std::vector<std::string> words = {"devices", "fruits", "such", "as", "pumps", "and",
                                          "other", ",", "systems", "including", "especially",
                                          "heat", "valves", "or", "the", "cats", "sensors"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1), len(1, 14);
  auto terms = KeyTermSet::defaults();
  for (int trial = 0; trial < 3000; ++trial) {
    std::string a, b;
    for (std::size_t i = 0, n = len(rng); i < n; ++i) a += words[pick(rng)] + " ";
    for (std::size_t i = 0, n = len(rng); i < n; ++i) b += words[pick(rng)] + " ";
    auto ma = extract_mentions(make_sentence(a, "A"), terms);
    auto mb = extract_mentions(make_sentence(b, "B"), terms);
    for (const auto& m : ma) {
      CHECK(terms.contains(m.hypernym_lemma));
      CHECK_FALSE(m.lemma.empty());
    }
    auto all = extract_all({make_sentence(a, "A"), make_sentence(b, "B")}, terms);
    auto expected = ma;
    expected.insert(expected.end(), mb.begin(), mb.end());
    CHECK(all == expected);
  }
}

TEST_CASE("clustering merges token suffixes under a shared hypernym") {
  auto ms = repeat("heat exchanger", "device", 3);
  ms.push_back(mention("plate heat exchanger", "device", "D9"));
  auto clusters = cluster_technologies(ms);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].label == "heat exchanger");
  CHECK(clusters[0].mention_count == 4);
  CHECK(clusters[0].family_count == 4);
  CHECK(clusters[0].cluster_id == "heat_exchanger");
  CHECK(clusters[0].member_lemmas == std::set<std::string>{"heat exchanger", "plate heat exchanger"});
}

TEST_CASE("different modifiers with the same head stay separate") {
  std::vector<TechnologyMention> ms{mention("light sensor", "device"), mention("pressure sensor", "device")};
  CHECK(cluster_technologies(ms).size() == 2);
  // A bare head noun never absorbs modifier-bearing lemmas.
  ms.push_back(mention("sensor", "device"));
  CHECK(cluster_technologies(ms).size() == 3);
  // Different hypernyms block a suffix merge.
  std::vector<TechnologyMention> split{mention("heat exchanger", "device"),
                                       mention("plate heat exchanger", "system")};
  CHECK(cluster_technologies(split).size() == 2);
  CHECK(cluster_technologies({}).empty());
}

TEST_CASE("cluster label prefers frequency, then shorter, then lexicographic") {
  auto ms = repeat("heat exchanger", "device", 1);
  auto more = repeat("plate heat exchanger", "device", 2, 10);
  ms.insert(ms.end(), more.begin(), more.end());
  auto c = cluster_technologies(ms);
  REQUIRE(c.size() == 1);
  CHECK(c[0].label == "plate heat exchanger");
  CHECK(c[0].cluster_id == "heat_exchanger");

  std::vector<TechnologyMention> tie{mention("tube heat exchanger", "device"),
                                     mention("plate heat exchanger", "device"),
                                     mention("heat exchanger", "device")};
  CHECK(cluster_technologies(tie)[0].label == "heat exchanger");
}

TEST_CASE("family lookup deduplicates family counts") {
  auto ms = repeat("heat pump", "machine", 4);
  auto c = cluster_technologies(ms, [](std::string_view doc) {
    return doc == "D0" || doc == "D1" ? std::string("F-a") : std::string(doc);
  });
  CHECK(c[0].mention_count == 4);
  CHECK(c[0].family_count == 3);
}

TEST_CASE("property: clustering is idempotent and order independent") {
  std::mt19937 rng(5);
  const std::vector<std::string> heads = {"exchanger", "pump", "sensor", "converter"};
  const std::vector<std::string> mods = {"heat", "plate", "light", "power", "smart"};
  const std::vector<std::string> hypers = {"device", "system"};
  std::uniform_int_distribution<std::size_t> h(0, heads.size() - 1), m(0, mods.size() - 1),
      y(0, hypers.size() - 1), depth(0, 3), count(1, 40);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TechnologyMention> ms;
    for (std::size_t i = 0, n = count(rng); i < n; ++i) {
      std::string lemma = heads[h(rng)];
      for (std::size_t d = 0, k = depth(rng); d < k; ++d) lemma = mods[m(rng)] + " " + lemma;
      ms.push_back(mention(lemma, hypers[y(rng)], "D" + std::to_string(i)));
    }
    auto clusters = cluster_technologies(ms);
    std::size_t total = 0;
    for (const auto& c : clusters) total += c.mention_count;
    CHECK(total == ms.size());

    std::vector<TechnologyMention> reps;
    for (const auto& c : clusters) reps.push_back(mention(c.label, c.hypernym_lemma));
    auto again = cluster_technologies(reps);
    CHECK(again.size() == clusters.size());

    auto shuffled = ms;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto c2 = cluster_technologies(shuffled);
    REQUIRE(c2.size() == clusters.size());
    for (std::size_t i = 0; i < c2.size(); ++i) {
      CHECK(to_json(c2[i]) == to_json(clusters[i]));
    }
  }
}

TEST_CASE("curation directives") {
  std::vector<TechnologyMention> ms = repeat("air conditioning", "system", 2);
  auto hp = repeat("heat pump", "machine", 3, 10);
  auto hx = repeat("heat exchanger", "device", 1, 20);
  ms.insert(ms.end(), hp.begin(), hp.end());
  ms.insert(ms.end(), hx.begin(), hx.end());
  auto clusters = cluster_technologies(ms);
  REQUIRE(clusters.size() == 3);

  SUBCASE("reject flags the cluster and removes it from active lookups") {
    auto out = apply_curation(clusters, parse_curation(json::parse(
                                            R"([{"action":"reject","target":"air_conditioning"}])")));
    CHECK(out[0].curation == CurationState::rejected);
    CHECK_FALSE(out[0].active());
    CHECK(find_active_cluster(out, "air conditioning") == nullptr);
    std::size_t active_total = 0;
    for (const auto& c : out) if (c.active()) active_total += c.mention_count;
    CHECK(active_total == ms.size() - 2);
  }
  SUBCASE("merge moves members and counts") {
    auto out = apply_curation(clusters, parse_curation(json::parse(
        R"([{"action":"merge","target":"heat_exchanger","into":"heat_pump"},{"action":"approve","target":"heat_pump"}])")));
    const auto& a = out[1];
    const auto& b = out[2];
    CHECK(a.cluster_id == "heat_exchanger");
    CHECK(a.curation == CurationState::merged);
    CHECK(a.merged_into == std::optional<std::string>("heat_pump"));
    CHECK(a.member_lemmas.empty());
    CHECK(b.member_lemmas.contains("heat exchanger"));
    CHECK(b.mention_count == 4);
    CHECK(b.family_count == 4);
    CHECK(b.curation == CurationState::approved);
    CHECK(find_active_cluster(out, "heat exchanger") == &out[2]);
    CHECK(cluster_from_json(to_json(a)).merged_into == a.merged_into);
  }
  SUBCASE("merge cycle is an error") {
    try {
      apply_curation(clusters, parse_curation(json::parse(
          R"([{"action":"merge","target":"heat_exchanger","into":"heat_pump"},{"action":"merge","target":"heat_pump","into":"heat_exchanger"}])")));
      FAIL("expected cycle error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()) == "merge cycle");
    }
    CHECK_THROWS_AS(apply_curation(clusters, parse_curation(json::parse(
                                                 R"([{"action":"merge","target":"heat_pump","into":"heat_pump"}])"))),
                    Error);
  }
  SUBCASE("unknown ids and malformed directives") {
    CHECK_THROWS_AS(apply_curation(clusters, parse_curation(json::parse(R"([{"action":"reject","target":"nope"}])"))),
                    Error);
    CHECK_THROWS_AS(parse_curation(json::parse(R"([{"action":"merge","target":"a"}])")), Error);
    CHECK_THROWS_AS(parse_curation(json::parse(R"([{"action":"delete","target":"a"}])")), Error);
  }
}
