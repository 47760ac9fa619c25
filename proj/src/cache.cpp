#include "averma/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace averma {

using nlohmann::ordered_json;

std::string DiskCache::envDir() {
  const char* d = std::getenv("AVERMA_CACHE_DIR");
  return d ? d : "";
}

std::string DiskCache::pathFor(const std::string& kind, const std::string& key) const {
  return dir_ + "/" + kind + "-" + key + ".json";
}

namespace {

void atomicWrite(const std::string& path, const std::string& payload) {
  std::filesystem::create_directories(std::filesystem::path(path).parent_path());
  std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    os << payload;
  }
  std::filesystem::rename(tmp, path);
}

std::optional<ordered_json> readJson(const std::string& path, int expectVersion) {
  std::ifstream is(path);
  if (!is) return std::nullopt;
  ordered_json j;
  try {
    is >> j;
  } catch (...) {
    return std::nullopt;
  }
  if (!j.contains("schema_version") || j["schema_version"].get<int>() != expectVersion)
    return std::nullopt;
  return j;
}

std::string weightKey(const Weight& w) {
  std::string s;
  for (int i = 0; i < w.rank(); ++i) s += (i ? "_" : "") + std::to_string(w[i]);
  return s;
}

}  // namespace

std::optional<std::map<std::pair<int, int>, Rat>> DiskCache::loadBrackets(
    const std::string& type) const {
  if (!enabled()) return std::nullopt;
  auto j = readJson(pathFor("brackets", type), kSchemaVersion);
  if (!j || (*j)["type"] != type) return std::nullopt;
  std::map<std::pair<int, int>, Rat> table;
  for (auto& entry : (*j)["bracket_table"]) {
    table[{entry[0].get<int>(), entry[1].get<int>()}] = Rat(entry[2].get<std::string>());
  }
  return table;
}

void DiskCache::storeBrackets(const std::string& type, const ChevalleyAlgebra& alg) const {
  if (!enabled()) return;
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = type;
  ordered_json table = ordered_json::array();
  for (auto& [key, val] : alg.structureConstants())
    table.push_back({key.first, key.second, val.get_str()});
  j["bracket_table"] = std::move(table);
  atomicWrite(pathFor("brackets", type), j.dump(1));
}

bool DiskCache::loadIrrep(const ChevalleyAlgebra& alg, const Weight& nu, WeightModule* out) const {
  if (!enabled()) return false;
  const std::string type = alg.rootDatum().name();
  auto j = readJson(pathFor("irrep", type + "-" + weightKey(nu)), kSchemaVersion);
  if (!j || (*j)["type"] != type) return false;
  WeightModule V;
  V.alg = &alg;
  V.highest = nu;
  V.label = type + ":" + nu.str();
  V.dim = (*j)["dim"].get<int>();
  for (auto& w : (*j)["weights"]) {
    std::vector<long> v;
    for (auto& x : w) v.push_back(x.get<long>());
    V.wt.push_back(Weight(v));
  }
  auto readMats = [&](const char* key, std::vector<QMatrix>* mats) {
    for (auto& mj : (*j)[key]) {
      QMatrix m(V.dim, V.dim);
      for (auto& entry : mj)
        m.at(entry[0].get<int>(), entry[1].get<int>()) = Rat(entry[2].get<std::string>());
      mats->push_back(std::move(m));
    }
  };
  readMats("action_matrices_e", &V.eMat);
  readMats("action_matrices_f", &V.fMat);
  if (static_cast<int>(V.eMat.size()) != alg.numPos()) return false;
  *out = std::move(V);
  return true;
}

void DiskCache::storeIrrep(const std::string& type, const Weight& nu, const WeightModule& V) const {
  if (!enabled()) return;
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = type;
  j["nu"] = [&] {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < nu.rank(); ++i) a.push_back(nu[i]);
    return a;
  }();
  j["dim"] = V.dim;
  ordered_json ws = ordered_json::array();
  for (auto& w : V.wt) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < w.rank(); ++i) a.push_back(w[i]);
    ws.push_back(std::move(a));
  }
  j["weights"] = std::move(ws);
  auto writeMats = [&](const std::vector<QMatrix>& mats) {
    ordered_json out = ordered_json::array();
    for (auto& m : mats) {
      ordered_json mj = ordered_json::array();
      for (int r = 0; r < m.rows(); ++r)
        for (int cidx = 0; cidx < m.cols(); ++cidx)
          if (m.at(r, cidx) != 0) mj.push_back({r, cidx, m.at(r, cidx).get_str()});
      out.push_back(std::move(mj));
    }
    return out;
  };
  j["action_matrices_e"] = writeMats(V.eMat);
  j["action_matrices_f"] = writeMats(V.fMat);
  atomicWrite(pathFor("irrep", type + "-" + weightKey(nu)), j.dump(1));
}

ChevalleyAlgebra buildChevalleyCached(const std::string& type, const DiskCache& cache) {
  if (auto table = cache.loadBrackets(type))
    return ChevalleyAlgebra(RootDatum::fromType(type), std::move(*table));
  ChevalleyAlgebra alg(RootDatum::fromType(type));
  cache.storeBrackets(type, alg);
  return alg;
}

WeightModule buildIrrepCached(const ChevalleyAlgebra& alg, const Weight& nu,
                              const DiskCache& cache) {
  WeightModule V;
  if (cache.loadIrrep(alg, nu, &V)) return V;
  V = buildIrrep(alg, nu);
  cache.storeIrrep(alg.rootDatum().name(), nu, V);
  return V;
}

}  // namespace averma
