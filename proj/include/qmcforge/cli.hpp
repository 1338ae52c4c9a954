#pragma once

// Command-line front end. Without a subcommand it runs a search and writes
// summary.txt and parameters.txt into the run directory; the subcommands
// quantiles, variance, tvalues and points run the studies and utilities.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qmcforge/error.hpp"
#include "qmcforge/experiments.hpp"
#include "qmcforge/io.hpp"
#include "qmcforge/randomize.hpp"
#include "qmcforge/search.hpp"

namespace qmcforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFlagError = 2;
inline constexpr int kExitUnsupported = 3;
inline constexpr int kExitSearchFailure = 4;
inline constexpr const char* kOutputRootEnv = "QMCFORGE_OUTPUT_ROOT";

// Inconsistent or malformed flags.
class FlagError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void writeFileAtomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + tmp.string());
    f << content;
    if (!f.flush()) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string readFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FlagError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

inline std::string formatReal(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

// "6..12" or "6,7,9".
inline std::vector<int> parseKGrid(const std::string& text) {
  std::vector<int> ks;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto lo = parseUnsigned(text.substr(0, dots), 0);
    const auto hi = parseUnsigned(text.substr(dots + 2), 0);
    if (hi < lo) throw FlagError("empty k range " + text);
    for (auto k = lo; k <= hi; ++k) ks.push_back(static_cast<int>(k));
    return ks;
  }
  for (const auto& t : splitOn(text, ',')) ks.push_back(static_cast<int>(parseUnsigned(trim(t), 0)));
  return ks;
}

inline Randomization::Tag parseRandomization(const std::string& text) {
  if (text == "none") return Randomization::Tag::None;
  if (text == "shift") return Randomization::Tag::ShiftMod1;
  if (text == "digital-shift") return Randomization::Tag::DigitalShift;
  if (text == "LMS") return Randomization::Tag::LmsPlusShift;
  if (text == "NUS") return Randomization::Tag::Nus;
  throw FlagError("unknown randomization '" + text + "' (none, shift, digital-shift, LMS, NUS)");
}

inline TestIntegrand parseIntegrand(const std::string& text) {
  if (text == "anovaPsi") return TestIntegrand::anovaPsi();
  if (text.rfind("prodLinear:", 0) == 0) return TestIntegrand::prodLinear(realList(text.substr(11)));
  if (text.rfind("constant:", 0) == 0) return TestIntegrand::constant(parseReal(text.substr(9)));
  throw FlagError("unknown integrand '" + text + "' (prodLinear:c1,c2,..., anovaPsi, constant:v)");
}

inline Construction parseConstruction(const std::string& c) {
  if (c == "ordinary") return Construction::OrdinaryLattice;
  if (c == "polynomial") return Construction::Polynomial;
  if (c == "sobol") return Construction::Sobol;
  if (c == "explicit") return Construction::Explicit;
  throw FlagError("unknown construction '" + c + "'");
}

inline double defaultNorm(FomFamily f) {
  switch (f) {
    case FomFamily::IAlphaDa:
    case FomFamily::IAlphaDb:
    case FomFamily::R2prime:
    case FomFamily::TValueBound:
    case FomFamily::TValueRaw:
      return 1.0;
    default:
      return 2.0;
  }
}

inline std::string nowUtc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

struct SearchFlags {
  std::string setType;
  std::string construction;
  std::string size;
  int dimension = 0;
  std::string exploration = "fast-CBC";
  std::string figure = "CU:P2";
  std::string norm;
  std::string weights = "product:1:";
  std::string outputFormat;
  int interlacing = 1;
  int higherOrder = 1;
  int digits = 0;
  std::uint64_t modulus = 0;
  int multilevelMin = -1;
  std::string multilevelWeights;
  std::string multilevelCombiner = "sum";
  std::uint64_t seed = 0;
  int threads = 1;
  std::uint64_t guard = std::uint64_t{1} << 24;
  std::string outputDir;
};

struct ResolvedSearch {
  SearchSpec spec;
  std::string outputFormat;
  std::string sizeText;
};

inline ResolvedSearch resolveSearch(const SearchFlags& f) {
  ResolvedSearch r;
  auto& s = r.spec;
  if (f.setType != "lattice" && f.setType != "net") throw FlagError("-t must be lattice or net");
  s.construction = parseConstruction(f.construction);
  const bool latticeType = f.setType == "lattice";
  if (s.construction == Construction::OrdinaryLattice && !latticeType) throw FlagError("ordinary lattices need -t lattice");
  if ((s.construction == Construction::Sobol || s.construction == Construction::Explicit) && latticeType) {
    throw FlagError("-c " + f.construction + " needs -t net");
  }
  if (f.higherOrder < 1) throw FlagError("--higher-order must be >= 1");
  if (f.higherOrder > 1) {
    if (s.construction != Construction::Polynomial) throw FlagError("--higher-order applies to -c polynomial");
    s.construction = Construction::HigherOrderPolynomial;
    s.hoplrOrder = f.higherOrder;
  }
  const SizeSpec size = parseSize(f.size);
  r.sizeText = f.size;
  if (s.construction == Construction::OrdinaryLattice) {
    s.n = size.n;
  } else {
    if (!size.k) throw FlagError("digital nets need a size of the form 2^k");
    s.k = *size.k;
  }
  if (f.dimension < 1) throw FlagError("-d must be >= 1");
  s.s = f.dimension;
  s.method = parseExploration(f.exploration);
  const bool kernelLattice = s.construction == Construction::OrdinaryLattice;
  s.fom = parseFom(f.figure, kernelLattice);
  s.fom.q = f.norm.empty() ? defaultNorm(s.fom.family) : parseNormExponent(f.norm);
  s.fom.weights = parseWeights(f.weights);
  s.interlacing = f.interlacing;
  if (s.interlacing < 1) throw FlagError("-i must be >= 1");
  if (s.fom.isInterlacedFamily() && s.fom.d != s.interlacing) {
    throw FlagError("interlacing factor -i " + std::to_string(s.interlacing) + " differs from the criterion's d = " + std::to_string(s.fom.d));
  }
  if (s.interlacing > 1 && !s.fom.isInterlacedFamily()) throw FlagError("-i > 1 needs an IA, IB or IC criterion");
  try {
    s.fom.validate();
  } catch (const Error& e) {
    throw FlagError(e.what());
  }
  if (!latticeType && s.method.tag == ExplorationMethod::Tag::FastCbc) {
    throw UnsupportedError("fast-CBC is not available with -t net; use -t lattice or random-CBC / full-CBC");
  }
  if ((s.method.tag == ExplorationMethod::Tag::Korobov || s.method.tag == ExplorationMethod::Tag::RandomKorobov) &&
      s.construction != Construction::OrdinaryLattice) {
    throw FlagError("Korobov search needs -c ordinary");
  }
  s.w = f.digits;
  if (f.modulus != 0) s.modulus = BinaryPolynomial(f.modulus);
  if (f.multilevelMin >= 0) {
    if (s.construction == Construction::OrdinaryLattice && s.n != (std::uint64_t{1} << std::countr_zero(s.n))) {
      throw FlagError("multilevel criteria need a power-of-two size");
    }
    MultiLevelSpec ml;
    ml.kMin = f.multilevelMin;
    ml.kMax = s.construction == Construction::OrdinaryLattice ? std::countr_zero(s.n) : s.k;
    if (!f.multilevelWeights.empty()) ml.weights = realList(f.multilevelWeights);
    if (f.multilevelCombiner == "sum") ml.combiner = MultiLevelSpec::Combiner::Sum;
    else if (f.multilevelCombiner == "max") ml.combiner = MultiLevelSpec::Combiner::Max;
    else throw FlagError("--multilevel-combiner must be sum or max");
    try {
      ml.validate();
    } catch (const Error& e) {
      throw FlagError(e.what());
    }
    s.multiLevel = ml;
  }
  s.seed = f.seed;
  s.threads = f.threads;
  s.guard = f.guard;

  r.outputFormat = f.outputFormat;
  if (r.outputFormat.empty()) {
    r.outputFormat = s.construction == Construction::Sobol ? "sobol" : latticeType ? "lattice" : "net";
  }
  if (r.outputFormat == "lattice") {
    if (s.construction == Construction::Sobol || s.construction == Construction::Explicit) {
      throw FlagError("-O lattice needs a lattice construction");
    }
  } else if (r.outputFormat == "sobol") {
    if (s.construction != Construction::Sobol) throw FlagError("-O sobol needs -c sobol");
  } else if (r.outputFormat == "net") {
    if (s.construction == Construction::OrdinaryLattice) throw FlagError("-O net needs a digital net construction");
  } else {
    throw FlagError("-O must be lattice, net or sobol");
  }
  return r;
}

inline std::string parameterText(const ResolvedSearch& r, const SearchResult& res) {
  if (r.outputFormat == "net") return emitNetFile(toDigitalNet(res.best));
  if (r.outputFormat == "sobol") {
    if (const auto* il = std::get_if<InterlacedNet>(&res.best)) {
      const auto& sn = std::get<SobolNet>(il->inner);
      return emitSobolFile(SobolFile{sn.spec, r.spec.s, il->d});
    }
    const auto& sn = std::get<SobolNet>(res.best);
    return emitSobolFile(SobolFile{sn.spec, r.spec.s, 1});
  }
  return emitLatticeFile(res.best);
}

inline std::string summaryText(const SearchFlags& f, const ResolvedSearch& r, const SearchResult& res) {
  const auto& s = r.spec;
  std::ostringstream o;
  o << "# qmcforge search summary; threads " << f.threads << "; generated " << nowUtc() << "\n";
  o << "set-type: " << f.setType << "\n";
  o << "construction: " << f.construction << "\n";
  o << "higher-order: " << f.higherOrder << "\n";
  o << "size: " << r.sizeText << "\n";
  o << "dimension: " << s.s << "\n";
  o << "exploration: " << explorationName(s.method) << "\n";
  o << "figure: " << fomName(s.fom) << "\n";
  o << "norm-exponent: " << (s.fom.isInfinite() ? std::string("inf") : formatReal(s.fom.q)) << "\n";
  o << "weights: " << f.weights << "\n";
  o << "interlacing: " << s.interlacing << "\n";
  o << "output-format: " << r.outputFormat << "\n";
  if (s.construction != Construction::OrdinaryLattice) {
    const CandidateSpace space(s);
    o << "output-digits: " << space.w() << "\n";
    if (s.construction == Construction::Polynomial || s.construction == Construction::HigherOrderPolynomial) {
      o << "modulus: " << space.modulus().bits() << "\n";
    }
  }
  if (s.multiLevel) {
    o << "multilevel: kmin " << s.multiLevel->kMin << ", kmax " << s.multiLevel->kMax << ", combiner "
      << (s.multiLevel->combiner == MultiLevelSpec::Combiner::Sum ? "sum" : "max") << ", weights "
      << (f.multilevelWeights.empty() ? "1" : f.multilevelWeights) << "\n";
  } else {
    o << "multilevel: none\n";
  }
  o << "seed: " << s.seed << "\n";
  o << "guard: " << s.guard << "\n";
  o << "merit: " << formatReal(res.merit.total) << "\n";
  o << "evaluations: " << res.evaluations << "\n";
  return o.str();
}

inline std::filesystem::path runDirectory(const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* root = std::getenv(kOutputRootEnv);
  return std::filesystem::path(root && *root ? root : ".") / "qmcforge-run";
}

inline PointSetDef loadPointSet(const std::string& path, int k) {
  return parseParameterFile(readFile(path), k > 0 ? std::optional<int>(k) : std::nullopt);
}

}  // namespace detail

inline int runCli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Construct, search, evaluate and randomize quasi-Monte Carlo point sets"};
  app.set_version_flag("--version", "qmcforge 1.0");

  detail::SearchFlags f;
  app.add_option("-t,--set-type", f.setType, "lattice | net");
  app.add_option("-c,--construction", f.construction, "ordinary | polynomial | sobol | explicit");
  app.add_option("-s,--size", f.size, "number of points: n or 2^k");
  app.add_option("-d,--dimension", f.dimension, "number of dimensions s");
  app.add_option("-e,--exploration", f.exploration,
                 "exhaustive | random:r | full-CBC | fast-CBC | random-CBC:r | Korobov | random-Korobov:r | mixed-CBC:r:pivot")
      ->capture_default_str();
  app.add_option("-f,--figure", f.figure,
                 "P<alpha> | P<alpha>tilde | CU:P<alpha> | sobolev1 | IA:alpha:d | IB:alpha:d | IC:alpha:d | R2prime | t-bound | projdep:t-value")
      ->capture_default_str();
  app.add_option("-q,--norm", f.norm, "norm exponent q >= 1 or inf (default: the criterion's own)");
  app.add_option("-w,--weights", f.weights,
                 "product:[default:]g1,... | order-dependent:default,G1,... | POD:[default:]G1,...:g1,... | explicit:{1,2}=0.5;...")
      ->capture_default_str();
  app.add_option("-O,--output-format", f.outputFormat, "lattice | net | sobol");
  app.add_option("-i,--interlacing", f.interlacing, "interlacing factor d")->capture_default_str();
  app.add_option("--higher-order", f.higherOrder, "alpha of a higher-order polynomial lattice rule (modulus degree alpha*k)")
      ->capture_default_str();
  app.add_option("--digits", f.digits, "binary output digits w (default 31 for polynomial rules, k otherwise)");
  app.add_option("--modulus", f.modulus, "polynomial modulus as an integer (default: smallest irreducible)");
  app.add_option("--multilevel", f.multilevelMin, "embedded levels 2^kmin..2^k");
  app.add_option("--multilevel-weights", f.multilevelWeights, "one weight per level, comma separated");
  app.add_option("--multilevel-combiner", f.multilevelCombiner, "sum | max")->capture_default_str();
  app.add_option("--seed", f.seed, "random seed")->capture_default_str();
  app.add_option("--threads", f.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--guard", f.guard, "largest candidate space searched exhaustively")->capture_default_str();
  app.add_option("-o,--output-dir", f.outputDir, std::string("run directory (default: $") + kOutputRootEnv + "/qmcforge-run)");

  // quantiles
  auto* quant = app.add_subcommand("quantiles", "merit quantiles over random constructions (TSV: k, quantiles, cbc)");
  std::string qConstruction = "polynomial", qFigure = "P2tilde", qNorm, qWeights = "product:0.7:", qKGrid = "6..12",
              qLevels = "0.1,0.5,0.9", qOut;
  int qDim = 6, qThreads = 1;
  std::uint64_t qSamples = 100, qSeed = 0;
  bool qNoReference = false;
  quant->add_option("-c,--construction", qConstruction, "polynomial | sobol | explicit")->capture_default_str();
  quant->add_option("-d,--dimension", qDim)->capture_default_str();
  quant->add_option("-f,--figure", qFigure)->capture_default_str();
  quant->add_option("-q,--norm", qNorm);
  quant->add_option("-w,--weights", qWeights)->capture_default_str();
  quant->add_option("-k,--k-grid", qKGrid, "e.g. 6..12 or 6,8,10")->capture_default_str();
  quant->add_option("-n,--samples", qSamples)->capture_default_str();
  quant->add_option("--levels", qLevels)->capture_default_str();
  quant->add_option("--seed", qSeed)->capture_default_str();
  quant->add_option("--threads", qThreads)->capture_default_str();
  quant->add_flag("--no-reference", qNoReference, "skip the CBC reference column");
  quant->add_option("--output", qOut, "TSV file (default: standard output)");

  // variance
  auto* var = app.add_subcommand("variance", "RQMC variance over m replicates per n (TSV: n, log2n, mean, variance, log2variance, seconds)");
  std::string vConstruction = "polynomial", vFigure, vWeights, vExploration = "fast-CBC", vRandomization = "LMS",
              vIntegrand = "prodLinear:0.7,0.2,0.5", vKGrid = "6..13", vOut;
  int vReplicates = 200, vInterlacing = 1, vThreads = 1;
  std::uint64_t vSeed = 0;
  var->add_option("-c,--construction", vConstruction, "polynomial | sobol | ordinary | iid")->capture_default_str();
  var->add_option("-e,--exploration", vExploration, "search used per n")->capture_default_str();
  var->add_option("-f,--figure", vFigure, "search criterion (default CU:P2, or IC:2:d when interlaced)");
  var->add_option("-w,--weights", vWeights, "search weights (default: product weights c_j of prodLinear, else 0.7)");
  var->add_option("-i,--interlacing", vInterlacing)->capture_default_str();
  var->add_option("-r,--randomization", vRandomization, "none | shift | digital-shift | LMS | NUS")->capture_default_str();
  var->add_option("--integrand", vIntegrand, "prodLinear:c1,... | anovaPsi | constant:v")->capture_default_str();
  var->add_option("-m,--replicates", vReplicates)->capture_default_str();
  var->add_option("-k,--k-grid", vKGrid)->capture_default_str();
  var->add_option("--seed", vSeed)->capture_default_str();
  var->add_option("--threads", vThreads)->capture_default_str();
  var->add_option("--output", vOut, "TSV file (default: standard output)");

  // tvalues
  auto* tv = app.add_subcommand("tvalues", "t-value histogram of a net parameter file (TSV: order, t, count)");
  std::string tInput, tOrders = "2,3";
  int tK = 0;
  tv->add_option("input", tInput, "parameter file")->required();
  tv->add_option("--orders", tOrders)->capture_default_str();
  tv->add_option("-k", tK, "size exponent for Sobol' files");

  // points
  auto* pts = app.add_subcommand("points", "print (randomized) points of a parameter file, one per line");
  std::string pInput, pRandomization = "none";
  std::uint64_t pSeed = 0, pReplicate = 0, pBegin = 0;
  std::optional<std::uint64_t> pEnd;
  int pK = 0;
  pts->add_option("input", pInput, "parameter file")->required();
  pts->add_option("-r,--randomization", pRandomization)->capture_default_str();
  pts->add_option("--seed", pSeed)->capture_default_str();
  pts->add_option("--replicate", pReplicate)->capture_default_str();
  pts->add_option("--begin", pBegin)->capture_default_str();
  pts->add_option("--end", pEnd);
  pts->add_option("-k", pK, "size exponent for Sobol' files");

  app.require_subcommand(0, 1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFlagError;
  }

  auto emitTable = [&](const std::string& path, const std::string& text) {
    if (path.empty()) out << text;
    else detail::writeFileAtomic(path, text);
  };

  try {
    if (quant->parsed()) {
      QuantileStudySpec q;
      q.construction = detail::parseConstruction(qConstruction);
      q.fom = parseFom(qFigure, false);
      q.fom.q = qNorm.empty() ? detail::defaultNorm(q.fom.family) : parseNormExponent(qNorm);
      q.fom.weights = parseWeights(qWeights);
      q.s = qDim;
      q.kGrid = detail::parseKGrid(qKGrid);
      q.sampleSize = qSamples;
      q.levels = detail::realList(qLevels);
      q.seed = qSeed;
      q.reference = !qNoReference;
      q.threads = qThreads;
      emitTable(qOut, fomQuantileStudy(q).toTsv());
      return kExitOk;
    }
    if (var->parsed()) {
      const TestIntegrand integrand = detail::parseIntegrand(vIntegrand);
      const int s = integrand.dimension();
      if (s < 1) throw FlagError("the variance study needs an integrand with a dimension");
      const auto kGrid = detail::parseKGrid(vKGrid);
      ReplicateGenerator gen;
      if (vConstruction == "iid") {
        gen = iidGenerator(s, vSeed);
      } else {
        SearchSpec base;
        base.construction = detail::parseConstruction(vConstruction);
        base.s = s;
        base.interlacing = vInterlacing;
        base.method = parseExploration(vExploration);
        const bool lattice = base.construction == Construction::OrdinaryLattice;
        const std::string figure =
            !vFigure.empty() ? vFigure : vInterlacing > 1 ? "IC:2:" + std::to_string(vInterlacing) : "CU:P2";
        base.fom = parseFom(figure, lattice);
        std::string weights = vWeights;
        if (weights.empty()) {
          std::ostringstream w;
          w << "product:0.7:";
          if (integrand.kind == TestIntegrand::Kind::ProdLinear) {
            w.str("");
            w << "product:";
            for (std::size_t j = 0; j < integrand.c.size(); ++j) w << (j ? "," : "") << detail::formatReal(integrand.c[j]);
          }
          weights = w.str();
        }
        base.fom.weights = parseWeights(weights);
        base.seed = vSeed;
        base.threads = 1;
        gen = rqmcGenerator(
            [base](int k) {
              SearchSpec sp = base;
              if (sp.construction == Construction::OrdinaryLattice) sp.n = std::uint64_t{1} << k;
              else sp.k = k;
              return runSearch(sp).best;
            },
            Randomization{detail::parseRandomization(vRandomization), vSeed});
      }
      emitTable(vOut, varianceStudy(gen, integrand, vReplicates, kGrid, vThreads).toTsv());
      return kExitOk;
    }
    if (tv->parsed()) {
      const auto def = detail::loadPointSet(tInput, tK);
      std::vector<int> orders;
      for (const auto& o : detail::splitOn(tOrders, ',')) orders.push_back(static_cast<int>(detail::parseUnsigned(detail::trim(o), 0)));
      out << tValueHistogramTsv(tValueHistogram(toDigitalNet(def), orders));
      return kExitOk;
    }
    if (pts->parsed()) {
      const auto def = detail::loadPointSet(pInput, pK);
      const RandomizedPointSet rps{def, {detail::parseRandomization(pRandomization), pSeed}, pReplicate};
      const std::uint64_t end = pEnd ? *pEnd : pointCount(def);
      out << std::setprecision(17);
      for (const auto& p : generateStream(rps, pBegin, end)) {
        for (std::size_t j = 0; j < p.size(); ++j) out << (j ? "\t" : "") << p[j];
        out << "\n";
      }
      return kExitOk;
    }

    // search
    if (f.setType.empty() || f.construction.empty() || f.size.empty() || f.dimension == 0) {
      throw FlagError("a search needs -t, -c, -s and -d (see --help)");
    }
    detail::ResolvedSearch resolved;
    try {
      resolved = detail::resolveSearch(f);
    } catch (const UnsupportedError&) {
      throw;
    } catch (const Error& e) {
      throw FlagError(e.what());
    }
    std::optional<SearchResult> found;
    try {
      found = runSearch(resolved.spec);
    } catch (const UnsupportedError&) {
      throw;
    } catch (const Error& e) {
      err << "search failed: " << e.what() << "\n";
      return kExitSearchFailure;
    }
    const SearchResult& res = *found;
    const std::string params = detail::parameterText(resolved, res);
    const auto dir = detail::runDirectory(f.outputDir);
    std::filesystem::create_directories(dir);
    detail::writeFileAtomic(dir / "parameters.txt", params);
    detail::writeFileAtomic(dir / "summary.txt", detail::summaryText(f, resolved, res));
    out << "merit: " << detail::formatReal(res.merit.total) << "\n" << params;
    out << "# written to " << dir.string() << "\n";
    return kExitOk;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const FlagError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFlagError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFlagError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSearchFailure;
  }
}

}  // namespace qmcforge
