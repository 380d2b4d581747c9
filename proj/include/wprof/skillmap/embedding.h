#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wprof::skillmap {

using Embedding = std::vector<double>;

double l2_norm(const Embedding& v);
bool is_zero(const Embedding& v);

// Throws on dimension mismatch or a zero vector. Result is clamped to [-1, 1].
double cosine(const Embedding& u, const Embedding& v);

// Implementations must be safe for concurrent embed() calls.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual Embedding embed(std::string_view text) const = 0;
  virtual std::size_t dimension() const = 0;
  // Short identifier recorded in artifacts.
  virtual std::string name() const = 0;
};

// Reference provider: term-frequency bag of content lemmas, hashed into a
// fixed number of buckets with seeded FNV-1a and L2-normalized. Text without
// content lemmas maps to the zero vector.
class HashedBagProvider final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDefaultDimension = 256;
  static constexpr std::uint64_t kDefaultSeed = 0x5eed'2023'9a1bULL;

  explicit HashedBagProvider(std::size_t dimension = kDefaultDimension,
                             std::uint64_t seed = kDefaultSeed);

  Embedding embed(std::string_view text) const override;
  std::size_t dimension() const override { return dimension_; }
  std::string name() const override;

  std::size_t bucket_of(std::string_view lemma) const;

 private:
  std::size_t dimension_;
  std::uint64_t seed_;
};

// Content lemmas (nouns, adjectives, verbs) in text order.
std::vector<std::string> content_lemmas(std::string_view text);

// Precomputed vectors keyed by sha256 of the exact text. Lines are
// `<hex digest>\t<v1>\t<v2>...`; whitespace between values is accepted too.
class FileEmbeddingProvider final : public EmbeddingProvider {
 public:
  static FileEmbeddingProvider load(const std::filesystem::path& path);
  static FileEmbeddingProvider parse(std::string_view text);

  Embedding embed(std::string_view text) const override;
  std::size_t dimension() const override { return dimension_; }
  std::string name() const override { return "file"; }
  std::size_t size() const { return table_.size(); }

 private:
  std::size_t dimension_ = 0;
  std::map<std::string, Embedding, std::less<>> table_;
};

std::string embedding_table_line(std::string_view text, const Embedding& v);

}  // namespace wprof::skillmap
