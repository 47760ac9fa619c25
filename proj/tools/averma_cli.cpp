// Command-line front end: exact invariant computations with JSON
// certificates. Exit codes: 0 success/PASS, 1 verification FAIL, 2 usage.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "averma/bk.hpp"
#include "averma/cache.hpp"
#include "averma/dynweyl.hpp"
#include "averma/fourier.hpp"
#include "averma/satake.hpp"
#include "json.hpp"

using namespace averma;
using nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

Weight parseWeight(const std::string& s, int rank) {
  std::vector<long> v;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (cur.empty()) throw CLI::ValidationError("weight", "empty component in '" + s + "'");
      try {
        size_t used = 0;
        v.push_back(std::stol(cur, &used));
        if (used != cur.size()) throw std::invalid_argument(cur);
      } catch (const std::exception&) {
        throw CLI::ValidationError("weight", "malformed integer '" + cur + "' in '" + s + "'");
      }
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (static_cast<int>(v.size()) != rank)
    throw CLI::ValidationError("weight", "expected " + std::to_string(rank) + " components in '" + s + "'");
  return Weight(v);
}

WeylWord parseWord(const std::string& s, int rank) {
  WeylWord w;
  if (s.empty()) return w;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (cur.empty()) continue;
      int letter = std::stoi(cur);
      if (letter < 1 || letter > rank)
        throw CLI::ValidationError("word", "letter out of range in '" + s + "'");
      w.w.push_back(letter - 1);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return w;
}

ordered_json weightJson(const Weight& w) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < w.rank(); ++i) a.push_back(w[i]);
  return a;
}

ordered_json tensorJson(const TensorVec& x) {
  ordered_json a = ordered_json::array();
  for (auto& [key, p] : x.c) {
    ordered_json t;
    t["v"] = key.first;
    ordered_json pbw = ordered_json::array();
    for (int e : key.second) pbw.push_back(e);
    t["pbw"] = std::move(pbw);
    t["coeff"] = p.str();
    a.push_back(std::move(t));
  }
  return a;
}

struct Output {
  std::string path;    // empty: stdout
  std::string format;  // json | table
  void emit(const ordered_json& j, const std::string& table) const {
    std::string payload = format == "table" ? table : j.dump(1) + "\n";
    if (path.empty()) {
      std::cout << payload;
    } else {
      std::ofstream os(path, std::ios::trunc);
      os << payload;
    }
  }
};

struct Session {
  std::string type;
  DiskCache cache{DiskCache::envDir()};
  std::unique_ptr<ChevalleyAlgebra> alg;
  std::unique_ptr<LeviDatum> levi;
  std::unique_ptr<ThetaContext> theta;

  void open(const std::string& t, const std::string& cacheDir) {
    type = t;
    if (!cacheDir.empty()) cache = DiskCache(cacheDir);
    alg = std::make_unique<ChevalleyAlgebra>(buildChevalleyCached(type, cache));
    levi = std::make_unique<LeviDatum>(LeviDatum::full(*alg));
    theta = std::make_unique<ThetaContext>(*alg, *levi);
  }
  WeightModule irrep(const Weight& nu) { return buildIrrepCached(*alg, nu, cache); }
};

int runInvariants(Session& s, const Weight& nu, const Weight& lambda, const Output& out,
                  bool kappaOnly) {
  WeightModule V = s.irrep(nu);
  const InvariantBasis& basis = s.theta->invariants(V, lambda);
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = s.type;
  j["nu"] = weightJson(nu);
  j["lambda"] = weightJson(lambda);
  j["claimed_free_rank"] = basis.rank;
  j["lambda_is_weight"] = basis.lambdaIsWeight;
  j["freeness_certified"] = basis.freenessCertified;
  ordered_json degrees = ordered_json::array();
  for (int d : basis.degrees) degrees.push_back(d);
  j["degrees"] = std::move(degrees);
  if (!kappaOnly) {
    ordered_json gens = ordered_json::array();
    for (auto& g : basis.gens) gens.push_back(tensorJson(g));
    j["generators"] = std::move(gens);
  }
  ordered_json kimg = ordered_json::array();
  for (auto& g : basis.gens) {
    ordered_json row = ordered_json::array();
    for (auto& p : kappaAlg(g)) row.push_back(p.str());
    kimg.push_back(std::move(row));
  }
  j["kappa_images"] = std::move(kimg);
  std::string table = "rank " + std::to_string(basis.rank) + "\n";
  for (size_t i = 0; i < basis.gens.size(); ++i)
    table += "gen[" + std::to_string(i) + "] deg " + std::to_string(basis.degrees[i]) + ": " +
             basis.gens[i].str() + "\n";
  if (!basis.lambdaIsWeight) table += "note: lambda is not a weight of V\n";
  out.emit(j, table);
  return 0;
}

int runTheta(Session& s, const Weight& nu, const Weight& lambda, const WeylWord& w,
             const Output& out) {
  WeightModule V = s.irrep(nu);
  auto m = thetaMatrix(*s.theta, V, lambda, w);
  auto [s0, s1] = s.theta->shiftPair(lambda, w);
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = s.type;
  j["nu"] = weightJson(nu);
  j["lambda"] = weightJson(lambda);
  j["word"] = w.str();
  j["shift_in"] = s0;
  j["shift_out"] = s1;
  ordered_json mat = ordered_json::array();
  std::string table;
  for (auto& row : m) {
    ordered_json r = ordered_json::array();
    for (auto& p : row) {
      r.push_back(p.str());
      table += p.str() + "\t";
    }
    table += "\n";
    mat.push_back(std::move(r));
  }
  j["theta_matrix"] = std::move(mat);
  out.emit(j, table);
  return 0;
}

int runDw(Session& s, const Weight& nu, const Weight& lambda, const WeylWord& w, int verifyMu,
          const Output& out) {
  WeightModule V = s.irrep(nu);
  DWMatrix dw = dwAlg(*s.theta, V, lambda, w);
  IntertwinerOracle oracle(*s.alg);
  const auto& rd = s.alg->rootDatum();
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = s.type;
  j["nu"] = weightJson(nu);
  j["lambda"] = weightJson(lambda);
  j["word"] = w.str();
  ordered_json mat = ordered_json::array();
  std::string table;
  for (auto& row : dw.m) {
    ordered_json r = ordered_json::array();
    for (auto& e : row) {
      r.push_back(e.str());
      table += e.str() + "\t";
    }
    table += "\n";
    mat.push_back(std::move(r));
  }
  j["dw_matrix"] = std::move(mat);
  bool allPass = true;
  ordered_json certs = ordered_json::array();
  for (int i = 0; i < verifyMu; ++i) {
    Weight mu = sufficientlyLarge(V, lambda, 2 * i);
    QMatrix om = oracle.dwMatrix(V, lambda, w, mu);
    bool match = dwMatchesOracle(rd, dw, om, rd.act(w, mu));
    allPass = allPass && match;
    ordered_json cert;
    cert["mu"] = weightJson(mu);
    ordered_json entries = ordered_json::array();
    for (int r = 0; r < om.rows(); ++r) {
      ordered_json rr = ordered_json::array();
      for (int cdx = 0; cdx < om.cols(); ++cdx) rr.push_back(om.at(r, cdx).get_str());
      entries.push_back(std::move(rr));
    }
    cert["oracle"] = std::move(entries);
    cert["match"] = match;
    certs.push_back(std::move(cert));
    table += "mu " + mu.str() + (match ? " MATCH" : " MISMATCH") + "\n";
  }
  j["oracle_certificates"] = std::move(certs);
  j["pass"] = allPass;
  out.emit(j, table);
  return allPass ? 0 : 1;
}

int runSatakeCheck(Session& s, const Weight& nu, const Output& out) {
  const auto& rd = s.alg->rootDatum();
  WeightModule V = s.irrep(nu);
  std::vector<Weight> lambdas;
  if (rd.rank() == 1) {
    for (long k = 0; k <= nu[0]; ++k) lambdas.push_back(Weight({nu[0] - 2 * k}));
  } else {
    lambdas.push_back(nu);
    lambdas.push_back(rd.act(rd.longestElement(), nu));
  }
  ordered_json verdicts = ordered_json::array();
  std::string table;
  bool allPass = true;
  for (auto& lam : lambdas) {
    Verdict v = checkImageEquality(*s.theta, V, nu, lam);
    allPass = allPass && (v.pass || !v.checked);
    ordered_json jv;
    jv["nu"] = weightJson(nu);
    jv["lambda"] = weightJson(lam);
    jv["kind"] = v.kind;
    jv["computed"] = v.computed.str();
    jv["predicted"] = v.predicted.str();
    jv["unit"] = v.unit.get_str();
    jv["pass"] = v.pass;
    if (!v.note.empty()) jv["note"] = v.note;
    verdicts.push_back(std::move(jv));
    table += "lambda " + lam.str() + " [" + v.kind + "] " + (v.pass ? "PASS" : "FAIL");
    if (!v.pass && v.checked)
      table += "\n  computed:  " + v.computed.str() + "\n  predicted: " + v.predicted.str();
    table += "\n";
  }
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = s.type;
  j["nu"] = weightJson(nu);
  j["verdicts"] = std::move(verdicts);
  j["pass"] = allPass;
  out.emit(j, table);
  return allPass ? 0 : 1;
}

int runFourierCheck(long nu, long lambda, const Output& out) {
  A21Result r = checkLemmaA21(nu, lambda);
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["nu"] = nu;
  j["lambda"] = lambda;
  j["pass"] = r.pass;
  if (!r.note.empty()) j["note"] = r.note;
  ordered_json y = ordered_json::array();
  for (auto& e : r.y) y.push_back(e.str());
  j["generator"] = std::move(y);
  std::string table = std::string(r.pass ? "PASS" : "FAIL") + " nu=" + std::to_string(nu) +
                      " lambda=" + std::to_string(lambda) + "\n";
  out.emit(j, table);
  return r.pass ? 0 : 1;
}

int runBkCheck(Session& s, const Weight& nu, const Output& out) {
  WeightModule V = s.irrep(nu);
  auto phi = admissiblePhi(*s.alg);
  std::set<Weight> weights(V.wt.begin(), V.wt.end());
  ordered_json entries = ordered_json::array();
  std::string table;
  bool allPass = true;
  for (auto& lam : weights) {
    Filtration bk = bkFiltration(V, lam);
    Filtration sl = sliceFiltration(*s.theta, V, lam, phi);
    bool match = bk.dims == sl.dims;
    allPass = allPass && match;
    ordered_json e;
    e["lambda"] = weightJson(lam);
    ordered_json bkd = ordered_json::array(), sld = ordered_json::array();
    for (int d : bk.dims) bkd.push_back(d);
    for (int d : sl.dims) sld.push_back(d);
    e["bk_dims"] = std::move(bkd);
    e["slice_dims"] = std::move(sld);
    e["match"] = match;
    entries.push_back(std::move(e));
    table += "lambda " + lam.str() + (match ? " MATCH" : " MISMATCH") + "\n";
  }
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = s.type;
  j["nu"] = weightJson(nu);
  ordered_json phiJ = ordered_json::array();
  for (auto& x : phi) phiJ.push_back(x.get_str());
  j["phi"] = std::move(phiJ);
  j["entries"] = std::move(entries);
  j["pass"] = allPass;
  out.emit(j, table);
  return allPass ? 0 : 1;
}

int runStrata(long nu, long k, const Output& out) {
  Rank1Prediction p = rank1Predictions(nu, k);
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["nu"] = nu;
  j["k"] = k;
  j["lambda"] = p.lambdaPair;
  j["generator"] = p.generator.str();
  ordered_json cells = ordered_json::array();
  for (auto& [ca, ch] : p.strata) cells.push_back({ca, ch});
  j["strata_weights"] = std::move(cells);
  j["euler_product"] = p.eulerProduct.str();
  j["slice_factor"] = p.sliceFactor.str();
  j["n_lambda"] = p.nLambda;
  std::string table = "generator: " + p.generator.str() + "\neuler: " + p.eulerProduct.str() +
                      "\nslice: " + p.sliceFactor.str() + "\n";
  out.emit(j, table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact asymptotic Verma computations with verification certificates"};
  app.require_subcommand(1);

  std::string type = "A1", repStr, lambdaStr, wordStr, outPath, format = "json", cacheDir;
  long nuInt = 0, lambdaInt = 0, kInt = 0;
  int verifyMu = 3;

  auto addCommon = [&](CLI::App* cmd, bool needsType) {
    if (needsType) cmd->add_option("--type", type, "root datum: A1 | A2 | B2 | A1xA1");
    cmd->add_option("--out", outPath, "certificate path (default stdout)");
    cmd->add_option("--format", format, "json | table")->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--cache-dir", cacheDir, "cache directory (or AVERMA_CACHE_DIR)");
  };

  auto* inv = app.add_subcommand("invariants", "basis of the B-invariants with certificates");
  inv->add_option("--rep", repStr, "highest weight, comma separated")->required();
  inv->add_option("--lambda", lambdaStr, "weight lambda")->required();
  addCommon(inv, true);

  auto* kap = app.add_subcommand("kappa", "kappa images of the invariant basis");
  kap->add_option("--rep", repStr)->required();
  kap->add_option("--lambda", lambdaStr)->required();
  addCommon(kap, true);

  auto* th = app.add_subcommand("theta", "Weyl operator matrix between invariant bases");
  th->add_option("--rep", repStr)->required();
  th->add_option("--lambda", lambdaStr)->required();
  th->add_option("--word", wordStr, "reflection word, e.g. 1,2,1")->required();
  addCommon(th, true);

  auto* dw = app.add_subcommand("dw", "dynamical Weyl group matrix with oracle certificates");
  dw->add_option("--rep", repStr)->required();
  dw->add_option("--lambda", lambdaStr)->required();
  dw->add_option("--word", wordStr)->required();
  dw->add_option("--verify-mu", verifyMu, "number of specializations checked");
  addCommon(dw, true);

  auto* sat = app.add_subcommand("satake-check", "image equality against the closed-form oracles");
  sat->add_option("--nu", repStr, "highest weight")->required();
  addCommon(sat, true);

  auto* fc = app.add_subcommand("fourier-check", "rank-one Fourier reflection check");
  fc->add_option("--nu", nuInt)->required();
  fc->add_option("--lambda", lambdaInt)->required();
  addCommon(fc, false);

  auto* bk = app.add_subcommand("bk-check", "Brylinski-Kostant vs slice-degree filtration");
  bk->add_option("--rep", repStr)->required();
  addCommon(bk, true);

  auto* st = app.add_subcommand("strata", "rank-one stratum cells and Euler data");
  st->add_option("--nu", nuInt)->required();
  st->add_option("--k", kInt)->required();
  addCommon(st, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Output out{outPath, format};
  try {
    if (fc->parsed()) return runFourierCheck(nuInt, lambdaInt, out);
    if (st->parsed()) return runStrata(nuInt, kInt, out);
    Session s;
    s.open(type, cacheDir);
    int rank = s.alg->rank();
    if (inv->parsed())
      return runInvariants(s, parseWeight(repStr, rank), parseWeight(lambdaStr, rank), out, false);
    if (kap->parsed())
      return runInvariants(s, parseWeight(repStr, rank), parseWeight(lambdaStr, rank), out, true);
    if (th->parsed())
      return runTheta(s, parseWeight(repStr, rank), parseWeight(lambdaStr, rank),
                      parseWord(wordStr, rank), out);
    if (dw->parsed())
      return runDw(s, parseWeight(repStr, rank), parseWeight(lambdaStr, rank),
                   parseWord(wordStr, rank), verifyMu, out);
    if (sat->parsed()) return runSatakeCheck(s, parseWeight(repStr, rank), out);
    if (bk->parsed()) return runBkCheck(s, parseWeight(repStr, rank), out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
