#include "doctest.h"

#include <algorithm>
#include <random>

#include "wprof/common/error.h"
#include "wprof/profiledb/archetype.h"
#include "wprof/profiledb/clustering.h"
#include "wprof/profiledb/database.h"

using namespace wprof;
using namespace wprof::profiledb;
using nlohmann::json;
using skillmap::SkillCategory;

namespace {

JobArchetype arch(std::string id, std::set<std::string> skills,
                  MacroClass c = MacroClass::TechniciansOperators) {
  JobArchetype a;
  a.archetype_id = id;
  a.title = "Title " + id;
  a.macro_class_topdown = c;
  a.binary_skills = std::move(skills);
  return a;
}

std::set<std::string> range_set(const std::string& prefix, int from, int to) {
  std::set<std::string> s;
  for (int i = from; i < to; ++i) s.insert(prefix + std::to_string(i));
  return s;
}

// Three blocks of four; each member keeps most of its block's pool.
std::vector<JobArchetype> block_fixture(std::mt19937& rng) {
  std::vector<JobArchetype> out;
  std::bernoulli_distribution keep(0.8);
  for (int b = 0; b < 3; ++b) {
    for (int m = 0; m < 4; ++m) {
      std::set<std::string> s;
      for (const auto& x : range_set("B" + std::to_string(b) + "-", 0, 10)) {
        if (keep(rng)) s.insert(x);
      }
      s.insert("B" + std::to_string(b) + "-0");
      out.push_back(arch("A" + std::to_string(b) + std::to_string(m), s, kAllMacroClasses[b]));
    }
  }
  return out;
}

skillmap::Taxonomy small_taxonomy() {
  return skillmap::Taxonomy({{"H1", "heat", "d", SkillCategory::hard, true},
                             {"H2", "cool", "d", SkillCategory::hard, false},
                             {"D1", "code", "d", SkillCategory::digital, false},
                             {"S1", "talk", "d", SkillCategory::soft, false},
                             {"H3", "unused", "d", SkillCategory::hard, false}});
}

// Average linkage by the Lance-Williams update, as an independent check.
Partition lance_williams(const std::vector<std::string>& ids, SimilarityMatrix sim, std::size_t k) {
  std::vector<std::vector<std::string>> members;
  std::vector<std::size_t> sizes;
  for (const auto& id : ids) members.push_back({id}), sizes.push_back(1);
  std::vector<bool> alive(ids.size(), true);
  std::size_t live = ids.size();
  while (live > k) {
    double best = -1e300;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        if (alive[i] && alive[j] && sim[i][j] > best) best = sim[i][j], bi = i, bj = j;
      }
    }
    for (std::size_t x = 0; x < ids.size(); ++x) {
      if (!alive[x] || x == bi || x == bj) continue;
      double v = (sizes[bi] * sim[x][bi] + sizes[bj] * sim[x][bj]) / double(sizes[bi] + sizes[bj]);
      sim[x][bi] = sim[bi][x] = v;
    }
    sizes[bi] += sizes[bj];
    members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
    alive[bj] = false;
    --live;
  }
  Partition out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!alive[i]) continue;
    std::sort(members[i].begin(), members[i].end());
    out.push_back(members[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("archetype file parsing") {
  auto j = json::parse(R"([{"archetype_id":"A1","title":"Energy engineer","description":"x",
    "macro_class_topdown":"EngineeringProfessionals","binary_skills":["H1","D1"],"soft_targets":{"S1":3}}])");
  auto as = parse_archetypes(j);
  REQUIRE(as.size() == 1);
  CHECK(as[0].binary_skills.size() == 2);
  CHECK(as[0].soft_targets.at("S1") == 3);
  CHECK(archetype_from_json(to_json(as[0])).binary_skills == as[0].binary_skills);

  auto bad = json::parse(R"([{"archetype_id":"A1","title":"","macro_class_topdown":"Pilots",
    "binary_skills":["H1",4],"soft_targets":{"S1":7}}])");
  try {
    parse_archetypes(bad);
    FAIL("expected validation error");
  } catch (const ValidationError& e) {
    std::set<std::string> paths;
    for (const auto& i : e.issues()) paths.insert(i.path);
    CHECK(paths.contains("/0/title"));
    CHECK(paths.contains("/0/macro_class_topdown"));
    CHECK(paths.contains("/0/binary_skills/1"));
    CHECK(paths.contains("/0/soft_targets/S1"));
  }
  auto overlap = json::parse(R"([{"archetype_id":"A1","title":"t","macro_class_topdown":"ManagersConsultants",
    "binary_skills":["S1"],"soft_targets":{"S1":2}}])");
  CHECK_THROWS_AS(parse_archetypes(overlap), ValidationError);
  CHECK_THROWS_AS(parse_archetypes(json::object()), Error);
}

TEST_CASE("jaccard") {
  CHECK(jaccard({}, {}) == 1.0);
  CHECK(jaccard({"a"}, {}) == 0.0);
  CHECK(jaccard({"a", "b"}, {"b", "c"}) == doctest::Approx(1.0 / 3));
  std::mt19937 rng(1);
  std::bernoulli_distribution coin(0.4);
  for (int t = 0; t < 500; ++t) {
    std::set<std::string> a, b;
    for (int i = 0; i < 8; ++i) {
      if (coin(rng)) a.insert(std::to_string(i));
      if (coin(rng)) b.insert(std::to_string(i));
    }
    CHECK(jaccard(a, a) == 1.0);
    CHECK(jaccard(a, b) == jaccard(b, a));
    CHECK(jaccard(a, b) >= 0.0);
    CHECK(jaccard(a, b) <= 1.0);
  }
}

TEST_CASE("clustering small cases") {
  std::vector<JobArchetype> disjoint{arch("A", {"a"}), arch("B", {"b"}), arch("C", {"c"})};
  auto p = cluster_archetypes(disjoint, 3);
  CHECK(p == Partition{{"A"}, {"B"}, {"C"}});

  std::vector<JobArchetype> twins{arch("A", {"a"}), arch("B", {"x", "y"}), arch("C", {"c"}),
                                  arch("D", {"x", "y"})};
  CHECK(cluster_archetypes(twins, 3) == Partition{{"A"}, {"B", "D"}, {"C"}});

  // All-zero similarity: merges follow the (min id, min id) order.
  std::vector<JobArchetype> four{arch("D", {"d"}), arch("C", {"c"}), arch("B", {"b"}), arch("A", {"a"})};
  CHECK(cluster_archetypes(four, 3) == Partition{{"A", "B"}, {"C"}, {"D"}});
  CHECK(cluster_archetypes(four, 1) == Partition{{"A", "B", "C", "D"}});

  CHECK_THROWS_AS(cluster_archetypes(disjoint, 4), Error);
  CHECK_THROWS_AS(cluster_archetypes(disjoint, 0), Error);
}

TEST_CASE("block fixture is recovered with purity 1 and shuffles do not matter") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    auto as = block_fixture(rng);
    auto p = cluster_archetypes(as, 3);
    REQUIRE(p.size() == 3);
    auto report = validate_macroclasses(as, p);
    CHECK(report.purity == 1.0);
    CHECK(report.majority == std::vector<MacroClass>(std::begin(kAllMacroClasses), std::end(kAllMacroClasses)));
    for (int s = 0; s < 5; ++s) {
      auto shuffled = as;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      CHECK(cluster_archetypes(shuffled, 3) == p);
    }
  }
}

TEST_CASE("property: permutation invariance with heavy ties") {
  std::mt19937 rng(7);
  std::bernoulli_distribution coin(0.3);
  std::uniform_int_distribution<int> n_dist(3, 14);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<JobArchetype> as;
    int n = n_dist(rng);
    for (int i = 0; i < n; ++i) {
      std::set<std::string> s;
      for (int k = 0; k < 4; ++k) {
        if (coin(rng)) s.insert("s" + std::to_string(k));
      }
      as.push_back(arch("X" + std::to_string(i), s));
    }
    auto p = cluster_archetypes(as, 3);
    std::size_t total = 0;
    for (const auto& c : p) total += c.size();
    CHECK(total == as.size());
    auto shuffled = as;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(cluster_archetypes(shuffled, 3) == p);
  }
}

TEST_CASE("average linkage agrees with the Lance-Williams recurrence") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 3 + trial % 10;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("N" + std::to_string(100 + i));
    SimilarityMatrix sim(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) sim[i][j] = sim[j][i] = u(rng);
    }
    for (std::size_t k = 1; k <= 3; ++k) {
      auto got = agglomerate(ids, sim, k);
      std::sort(got.begin(), got.end());
      CHECK(got == lance_williams(ids, sim, k));
    }
  }
}

TEST_CASE("purity") {
  std::vector<JobArchetype> as;
  for (int i = 0; i < 12; ++i) as.push_back(arch("A" + std::to_string(10 + i), {}, kAllMacroClasses[i / 4]));
  Partition exact{{"A10", "A11", "A12", "A13"}, {"A14", "A15", "A16", "A17"}, {"A18", "A19", "A20", "A21"}};
  CHECK(validate_macroclasses(as, exact).purity == 1.0);
  Partition one_off{{"A10", "A11", "A12", "A14"}, {"A13", "A15", "A16", "A17"}, {"A18", "A19", "A20", "A21"}};
  // Cluster 1 majority: 3 engineers; cluster 0: 3 technicians; one stray each way.
  CHECK(validate_macroclasses(as, one_off).purity == doctest::Approx(10.0 / 12));
  Partition moved{{"A10", "A11", "A12"}, {"A13", "A14", "A15", "A16", "A17"}, {"A18", "A19", "A20", "A21"}};
  CHECK(validate_macroclasses(as, moved).purity == doctest::Approx(11.0 / 12));

  std::mt19937 rng(8);
  std::uniform_int_distribution<int> cls(0, 2), clu(0, 2);
  for (int t = 0; t < 300; ++t) {
    std::vector<JobArchetype> xs;
    Partition p(3);
    for (int i = 0; i < 12; ++i) {
      auto id = "R" + std::to_string(10 + i);
      xs.push_back(arch(id, {}, kAllMacroClasses[cls(rng)]));
      p[clu(rng)].push_back(id);
    }
    auto r = validate_macroclasses(xs, p);
    std::set<MacroClass> present;
    for (const auto& x : xs) present.insert(x.macro_class_topdown);
    CHECK(r.purity >= 1.0 / present.size() - 1e-12);
    CHECK(r.purity <= 1.0);
    CHECK(r.archetypes == 12);
  }
}

TEST_CASE("database build") {
  auto tax = small_taxonomy();
  std::vector<JobArchetype> as{arch("A1", {"H1", "D1"}, MacroClass::EngineeringProfessionals),
                               arch("A2", {"H2"}), arch("A3", {"H1"})};
  as[0].soft_targets["S1"] = 3;
  std::vector<skillmap::DerivedSkill> evidence{{"H1", 4, skillmap::Review::automatic}};
  auto db = build_profile_db(as, tax, evidence);
  CHECK(db.archetypes().size() == 3);
  CHECK(db.report().orphan_skills == std::vector<std::string>{"H3"});
  CHECK(db.report().digital_share_of_skills == doctest::Approx(0.25));
  CHECK(db.report().digital_share_of_links == doctest::Approx(0.25));
  CHECK(db.at("A1").evidenced_skills == 1);
  CHECK(db.at("A2").evidenced_skills == 0);
  CHECK(db.at("A1").macro_class_bottomup.has_value());
  CHECK(db.report().clustering.has_value());
  CHECK_THROWS_AS(db.at("nope"), Error);

  auto j = to_json(db);
  auto back = database_from_json(j);
  CHECK(back.version() == db.version());
  CHECK(to_json(back) == j);
  CHECK(build_profile_db(as, tax, evidence).version() == db.version());
  auto tampered = j;
  tampered["archetypes"][0]["title"] = "changed";
  CHECK_THROWS_AS(database_from_json(tampered), Error);

  // Fewer archetypes than k: built without bottom-up labels.
  auto two = build_profile_db({as[0], as[1]}, tax, {});
  CHECK_FALSE(two.at("A1").macro_class_bottomup.has_value());
}

TEST_CASE("database build errors") {
  auto tax = small_taxonomy();
  try {
    build_profile_db({arch("A7", {"H1", "Z9"})}, tax, {});
    FAIL("expected error");
  } catch (const Error& e) {
    std::string msg = e.what();
    CHECK(msg.find("A7") != std::string::npos);
    CHECK(msg.find("Z9") != std::string::npos);
  }
  try {
    build_profile_db({}, tax, {});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "no archetypes");
  }
  CHECK_THROWS_AS(build_profile_db({arch("A1", {"H1"}), arch("A1", {"H2"})}, tax, {}), Error);
  CHECK_THROWS_AS(build_profile_db({arch("A1", {"S1"})}, tax, {}), Error);
  auto soft_wrong = arch("A1", {"H1"});
  soft_wrong.soft_targets["H2"] = 1;
  CHECK_THROWS_AS(build_profile_db({soft_wrong}, tax, {}), Error);
  CHECK_THROWS_AS(build_profile_db({arch("A1", {"H1"})}, tax, {{"Q", 1, skillmap::Review::automatic}}), Error);
}

TEST_CASE("embedding metric") {
  skillmap::HashedBagProvider p;
  std::vector<JobArchetype> as{arch("A", {}), arch("B", {}), arch("C", {}), arch("D", {})};
  as[0].description = "installs heat pumps";
  as[1].description = "installs heat pumps and boilers";
  as[2].description = "audits energy budgets";
  as[3].description = "manages energy budgets";
  auto part = cluster_archetypes(as, 2, ClusterMetric::embedding, &p);
  CHECK(part == Partition{{"A", "B"}, {"C", "D"}});
  CHECK_THROWS_AS(cluster_archetypes(as, 2, ClusterMetric::embedding, nullptr), Error);
}
