#pragma once

#include <optional>
#include <string>

#include "averma/liealg.hpp"

namespace averma {

// Versioned on-disk JSON cache for structure constants and irrep action
// matrices, keyed by (type, nu). Files are written to a temporary name and
// renamed into place; entries with a stale schema version are ignored.
class DiskCache {
 public:
  static constexpr int kSchemaVersion = 1;

  explicit DiskCache(std::string dir) : dir_(std::move(dir)) {}
  // AVERMA_CACHE_DIR, or empty when unset (cache disabled)
  static std::string envDir();

  bool enabled() const { return !dir_.empty(); }

  std::optional<std::map<std::pair<int, int>, Rat>> loadBrackets(const std::string& type) const;
  void storeBrackets(const std::string& type, const ChevalleyAlgebra& alg) const;

  bool loadIrrep(const ChevalleyAlgebra& alg, const Weight& nu, WeightModule* out) const;
  void storeIrrep(const std::string& type, const Weight& nu, const WeightModule& V) const;

 private:
  std::string pathFor(const std::string& kind, const std::string& key) const;
  std::string dir_;
};

ChevalleyAlgebra buildChevalleyCached(const std::string& type, const DiskCache& cache);
WeightModule buildIrrepCached(const ChevalleyAlgebra& alg, const Weight& nu,
                              const DiskCache& cache);

}  // namespace averma
