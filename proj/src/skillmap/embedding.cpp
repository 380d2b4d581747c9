#include "wprof/skillmap/embedding.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "wprof/common/digest.h"
#include "wprof/common/error.h"
#include "wprof/common/io.h"
#include "wprof/corpus/tokenizer.h"

namespace wprof::skillmap {

double l2_norm(const Embedding& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

bool is_zero(const Embedding& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

double cosine(const Embedding& u, const Embedding& v) {
  if (u.size() != v.size()) {
    throw Error(ErrorKind::precondition, "embedding dimension mismatch: " + std::to_string(u.size()) +
                                             " vs " + std::to_string(v.size()));
  }
  const double nu = l2_norm(u), nv = l2_norm(v);
  if (nu == 0.0 || nv == 0.0) throw Error(ErrorKind::precondition, "cosine of a zero vector");
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

std::vector<std::string> content_lemmas(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : corpus::tokenize_and_tag(text)) {
    if (t.role == corpus::Role::noun || t.role == corpus::Role::adjective ||
        t.role == corpus::Role::verb) {
      out.push_back(t.lemma);
    }
  }
  return out;
}

HashedBagProvider::HashedBagProvider(std::size_t dimension, std::uint64_t seed)
    : dimension_(dimension), seed_(seed) {
  if (dimension_ == 0) throw Error(ErrorKind::validation, "embedding dimension must be positive");
}

std::string HashedBagProvider::name() const {
  return "hashed-bag-" + std::to_string(dimension_);
}

std::size_t HashedBagProvider::bucket_of(std::string_view lemma) const {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed_;
  for (unsigned char c : lemma) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h % dimension_);
}

Embedding HashedBagProvider::embed(std::string_view text) const {
  Embedding v(dimension_, 0.0);
  for (const auto& lemma : content_lemmas(text)) v[bucket_of(lemma)] += 1.0;
  const double n = l2_norm(v);
  if (n > 0.0) {
    for (double& x : v) x /= n;
  }
  return v;
}

FileEmbeddingProvider FileEmbeddingProvider::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

FileEmbeddingProvider FileEmbeddingProvider::parse(std::string_view text) {
  FileEmbeddingProvider p;
  std::size_t line_no = 0;
  for (const auto& line : split_lines(text)) {
    ++line_no;
    auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const std::string where = "embedding table line " + std::to_string(line_no);
    auto tab = body.find('\t');
    if (tab == std::string_view::npos) throw Error(ErrorKind::parse, where + ": missing tab");
    std::string digest(trim(body.substr(0, tab)));
    Embedding v;
    std::string_view rest = body.substr(tab + 1);
    while (true) {
      auto start = rest.find_first_not_of(" \t");
      if (start == std::string_view::npos) break;
      rest.remove_prefix(start);
      auto end = rest.find_first_of(" \t");
      auto field = rest.substr(0, end);
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
      if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(x)) {
        throw Error(ErrorKind::parse, where + ": bad value '" + std::string(field) + "'");
      }
      v.push_back(x);
      if (end == std::string_view::npos) break;
      rest.remove_prefix(end);
    }
    if (v.empty()) throw Error(ErrorKind::parse, where + ": no values");
    if (p.dimension_ == 0) p.dimension_ = v.size();
    if (v.size() != p.dimension_) {
      throw Error(ErrorKind::parse, where + ": expected " + std::to_string(p.dimension_) + " values");
    }
    const double n = l2_norm(v);
    if (n > 0.0) {
      for (double& x : v) x /= n;
    }
    p.table_[digest] = std::move(v);
  }
  return p;
}

Embedding FileEmbeddingProvider::embed(std::string_view text) const {
  auto digest = sha256_hex(text);
  auto it = table_.find(digest);
  if (it == table_.end()) {
    throw Error(ErrorKind::not_found, "no precomputed embedding for text digest " + digest);
  }
  return it->second;
}

std::string embedding_table_line(std::string_view text, const Embedding& v) {
  std::string out = sha256_hex(text);
  char buf[40];
  for (double x : v) {
    std::snprintf(buf, sizeof buf, "\t%.17g", x);
    out += buf;
  }
  out += '\n';
  return out;
}

}  // namespace wprof::skillmap
