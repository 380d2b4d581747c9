#include "doctest.h"

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "wprof/common/error.h"
#include "wprof/corpus/tokenizer.h"
#include "wprof/skillmap/embedding.h"
#include "wprof/skillmap/matcher.h"
#include "wprof/skillmap/taxonomy.h"

using namespace wprof;
using namespace wprof::skillmap;
using nlohmann::json;

namespace {

// Fixed text -> vector table for exact-score cases.
class TableProvider final : public EmbeddingProvider {
 public:
  explicit TableProvider(std::map<std::string, Embedding> t) : table_(std::move(t)) {}
  Embedding embed(std::string_view text) const override { return table_.at(std::string(text)); }
  std::size_t dimension() const override { return table_.begin()->second.size(); }
  std::string name() const override { return "table"; }

 private:
  std::map<std::string, Embedding> table_;
};

SkillRecord skill(std::string id, std::string description, SkillCategory c = SkillCategory::hard) {
  return {id, "label " + id, std::move(description), c, false};
}

corpus::Sentence sentence(std::string doc, std::size_t index, std::string text) {
  corpus::Sentence s;
  s.doc_id = std::move(doc);
  s.section = corpus::Section::abstract;
  s.index = index;
  s.text = std::move(text);
  return s;
}

SkillMatch kept_match(std::string doc, std::size_t i, std::string skill) {
  SkillMatch m;
  m.sentence = {std::move(doc), corpus::Section::claims, i};
  m.skill_id = std::move(skill);
  m.score = 0.9;
  m.kept = true;
  return m;
}

}  // namespace

TEST_CASE("taxonomy csv") {
  auto t = parse_taxonomy_csv(
      "skill_id,label,description,category,green\n"
      "S1,design wind turbines,\"Design turbines, blades and towers.\",hard,true\n"
      "S2,teamwork,Work with others.,soft,no\n");
  REQUIRE(t.size() == 2);
  CHECK(t.at("S1").description == "Design turbines, blades and towers.");
  CHECK(t.at("S1").green);
  CHECK(t.at("S2").category == SkillCategory::soft);
  CHECK(parse_taxonomy_csv(taxonomy_csv(t)).skills() == t.skills());
  CHECK_THROWS_AS(parse_taxonomy_csv("id,label\n"), Error);
  CHECK_THROWS_AS(parse_taxonomy_csv("skill_id,label,description,category,green\nS1,a,b,weird,true\n"), Error);
  CHECK_THROWS_AS(parse_taxonomy_csv("skill_id,label,description,category,green\nS1,a,b,hard,maybe\n"), Error);
  CHECK_THROWS_AS(parse_taxonomy_csv("skill_id,label,description,category,green\nS1,a,b,hard,1\nS1,c,d,hard,0\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_taxonomy_csv("skill_id,label,description,category,green\nS1,,b,hard,1\n"),
                  ValidationError);
}

TEST_CASE("cosine") {
  CHECK(cosine({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0));
  CHECK(cosine({1, 0}, {0, 5}) == 0.0);
  CHECK(cosine({1, -2}, {-1, 2}) == doctest::Approx(-1.0));
  CHECK(cosine({3, 4}, {1, 0}) == doctest::Approx(0.6));
  CHECK_THROWS_AS(cosine({1, 0}, {1, 0, 0}), Error);
  CHECK_THROWS_AS(cosine({0, 0}, {1, 0}), Error);
}

TEST_CASE("hashed bag provider") {
  HashedBagProvider p;
  auto a = p.embed("analyze energy consumption");
  CHECK(a.size() == 256);
  CHECK(a == p.embed("analyze energy consumption"));
  CHECK(l2_norm(a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cosine(a, p.embed("analyze energy consumption")) == doctest::Approx(1.0));
  // Plural forms share lemmas, function words do not count.
  CHECK(cosine(a, p.embed("The analysis of the energy consumptions")) > 0.0);
  CHECK(cosine(p.embed("design wind turbines"), p.embed("inspect battery storage")) == 0.0);
  CHECK(is_zero(p.embed("")));
  CHECK(is_zero(p.embed("the of and")));
  // Frozen buckets keep golden score files stable.
  CHECK(p.bucket_of("design") == 128);
  CHECK(p.bucket_of("turbine") == 165);
  CHECK(p.bucket_of("energy") != HashedBagProvider(256, 1).bucket_of("energy"));
}

TEST_CASE("file provider") {
  std::string table = embedding_table_line("heat pump", {3, 4}) + embedding_table_line("boiler", {0, 2});
  auto p = FileEmbeddingProvider::parse(table);
  CHECK(p.size() == 2);
  CHECK(p.dimension() == 2);
  auto v = p.embed("heat pump");
  CHECK(v[0] == doctest::Approx(0.6));
  CHECK(v[1] == doctest::Approx(0.8));
  try {
    p.embed("heat pumps");
    FAIL("expected miss");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_found);
  }
  CHECK_THROWS_AS(FileEmbeddingProvider::parse("abc\t1 2\ndef\t1\n"), Error);
  CHECK_THROWS_AS(FileEmbeddingProvider::parse("abc 1 2\n"), Error);
  CHECK_THROWS_AS(FileEmbeddingProvider::parse("abc\t1 x\n"), Error);
}

TEST_CASE("threshold is strict and the best skill wins") {
  const double s51 = std::sqrt(0.51);
  TableProvider p({{"exact", {1, 0, 0}},
                   {"above", {1, 0, 0}},
                   {"two", {0, 1, 0}},
                   {"skill-seventy", {0.7, s51, 0}},
                   {"skill-a", {0.8, 0, 0.6}},
                   {"skill-b", {0, 0.9, std::sqrt(1 - 0.81)}}});
  REQUIRE(cosine({1, 0, 0}, {0.7, s51, 0}) == 0.7);

  Taxonomy only70({skill("S70", "skill-seventy")});
  auto at = match_sentences_to_skills({sentence("D", 0, "exact")}, only70, p);
  REQUIRE(at.size() == 1);
  CHECK(at[0].score == 0.7);
  CHECK_FALSE(at[0].kept);
  auto lower = match_sentences_to_skills({sentence("D", 0, "exact")}, only70, p, 0.69);
  CHECK(lower[0].kept);

  Taxonomy two({skill("A", "skill-a"), skill("B", "skill-b", SkillCategory::digital)});
  auto ab = match_sentences_to_skills({sentence("D", 0, "above"), sentence("D", 1, "two")}, two, p);
  REQUIRE(ab.size() == 2);
  CHECK(ab[0].skill_id == "A");
  CHECK(ab[0].score == doctest::Approx(0.8));
  CHECK(ab[0].kept);
  CHECK(ab[1].skill_id == "B");
  CHECK(ab[1].score == doctest::Approx(0.9));
}

TEST_CASE("argmax over two skills and tie break by id") {
  CHECK(best_index({0.8, 0.9}, {"skillA", "skillB"}) == 1);
  CHECK(best_index({0.9, 0.9}, {"skillB", "skillA"}) == 1);
  CHECK(best_index({0.9, 0.9, 0.9}, {"s2", "s1", "s3"}) == 1);
  CHECK_THROWS_AS(best_index({}, {}), Error);
}

TEST_CASE("soft skills and incomparable texts are skipped") {
  HashedBagProvider p;
  Taxonomy t({skill("H1", "analyze energy consumption"),
              skill("S1", "analyze energy consumption", SkillCategory::soft)});
  auto m = match_sentences_to_skills(
      {sentence("D", 1, "The system is used to analyze energy consumption."), sentence("D", 0, "Of the.")},
      t, p);
  REQUIRE(m.size() == 1);
  CHECK(m[0].skill_id == "H1");
  CHECK(m[0].sentence.index == 1);
  Taxonomy soft_only({skill("S1", "teamwork", SkillCategory::soft)});
  CHECK_THROWS_AS(match_sentences_to_skills({}, soft_only, p), Error);
}

TEST_CASE("property: retention rule over random score matrices") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> nskills(1, 12), nsent(1, 40);
  std::uniform_real_distribution<double> scale(0.01, 100.0), mix(0.0, 1.0);
  const std::size_t dim = 6;
  auto random_vec = [&] {
    Embedding v(dim);
    for (auto& x : v) x = g(rng);
    return v;
  };
  for (int trial = 0; trial < 300; ++trial) {
    SkillIndex skills;
    int k = nskills(rng);
    for (int j = 0; j < k; ++j) {
      skills.skill_ids.push_back("S" + std::to_string((j * 7) % 13));
      skills.vectors.push_back(random_vec());
    }
    SkillIndex scaled = skills;
    const double c = scale(rng);
    for (auto& v : scaled.vectors) {
      for (auto& x : v) x *= c;
    }
    int n = nsent(rng);
    for (int i = 0; i < n; ++i) {
      // Pull some sentences close to a skill so kept matches occur.
      Embedding s = random_vec();
      if (mix(rng) < 0.5) {
        const auto& target = skills.vectors[i % k];
        for (std::size_t d = 0; d < dim; ++d) s[d] = target[d] + 0.2 * s[d];
      }
      auto m = match_vector(s, skills, 0.7);
      REQUIRE(m.has_value());
      if (m->kept) CHECK(m->score > 0.7);
      CHECK(m->kept == (m->score > 0.7));

      // The chosen skill is a true maximum.
      for (const auto& v : skills.vectors) CHECK(cosine(s, v) <= m->score);

      auto ms = match_vector(s, scaled, 0.7);
      CHECK(ms->skill_id == m->skill_id);

      auto lower = match_vector(s, skills, 0.5);
      if (m->kept) CHECK(lower->kept);
      CHECK(lower->skill_id == m->skill_id);
    }

    // Ties at the maximum resolve to the smallest id.
    std::vector<double> row(k, 0.5);
    std::string smallest = *std::min_element(skills.skill_ids.begin(), skills.skill_ids.end());
    CHECK(skills.skill_ids[best_index(row, skills.skill_ids)] == smallest);
  }
}

TEST_CASE("at most one kept match per sentence, independent of threads") {
  HashedBagProvider p;
  Taxonomy t({skill("H1", "analyze energy consumption"), skill("H2", "design wind turbines"),
              skill("D1", "program logic controllers", SkillCategory::digital)});
  std::vector<corpus::Sentence> sents;
  const char* texts[] = {"Analyze energy consumption.", "Design wind turbines.",
                         "Program the logic controllers daily.", "Nothing relevant here at all."};
  for (std::size_t i = 0; i < 200; ++i) sents.push_back(sentence("D" + std::to_string(i % 7), i, texts[i % 4]));
  auto m = match_sentences_to_skills(sents, t, p);
  std::set<corpus::SentenceRef> seen;
  for (const auto& x : m) CHECK(seen.insert(x.sentence).second);
  CHECK(std::is_sorted(m.begin(), m.end(), [](const auto& a, const auto& b) { return a.sentence < b.sentence; }));
  CHECK(parse_matches_jsonl(matches_jsonl(m)) == m);
}

TEST_CASE("derive skill set") {
  Taxonomy t({skill("analyze", "analyze energy consumption"), skill("design", "design wind turbines"),
              skill("other", "x")});
  std::vector<SkillMatch> ms{kept_match("A", 0, "analyze"), kept_match("A", 1, "design"),
                             kept_match("B", 0, "analyze"), kept_match("C", 0, "analyze")};
  auto notkept = kept_match("D", 0, "other");
  notkept.kept = false;
  ms.push_back(notkept);
  auto d = derive_skill_set(ms, {}, t);
  REQUIRE(d.size() == 2);
  CHECK(d[0].skill_id == "analyze");
  CHECK(d[0].evidence_count == 3);
  CHECK(d[1].skill_id == "design");

  auto overrides = parse_skill_overrides(json::parse(R"([{"skill_id":"analyze","review":"rejected"},
                                                         {"skill_id":"design","review":"approved"}])"));
  auto cur = derive_skill_set(ms, overrides, t);
  REQUIRE(cur.size() == 1);
  CHECK(cur[0].skill_id == "design");
  CHECK(cur[0].review == Review::approved);

  CHECK(derive_skill_set({notkept}, {}, t).empty());
  CHECK(derive_skill_set({}, {}, t).empty());
  CHECK_THROWS_AS(derive_skill_set(ms, {{"ghost", Review::rejected}}, t), Error);
  CHECK_THROWS_AS(parse_skill_overrides(json::parse(R"([{"skill_id":"a","review":"meh"}])")), Error);

  // Equal evidence ties by id.
  auto tie = derive_skill_set({kept_match("A", 0, "design"), kept_match("B", 0, "analyze")}, {}, t);
  CHECK(tie[0].skill_id == "analyze");
}
